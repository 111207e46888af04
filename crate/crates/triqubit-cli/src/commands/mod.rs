pub mod bound_state;
pub mod check_basis;
pub mod lu_orbit;
pub mod tangles;
pub mod verify_paper;
