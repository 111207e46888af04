//! The bound-entangled uniform mixture over the exact-entanglement basis.
//!
//! The mixture rho = (1/4) sum_j |phi_j><phi_j| is the normalized projector
//! onto the complement of the Shifts UPB, so it can be built two independent
//! ways; the printed reference matrix has every entry an integer over 16.
//! Bound entanglement is certified by two facts checked numerically: the
//! partial transpose on each single party stays positive (so nothing can be
//! distilled across any cut), and the range of rho, being span(T), contains
//! no product state (so rho is not separable).

use num_complex::Complex64;

use crate::bases::{cbupb, BasisSet};
use crate::cmat::{CMat, C_ZERO};
use crate::productsearch::{ees_product_free, SeesawConfig, Verdict};
use crate::qstate::{DensityMatrix3Q, Party};
use crate::{Result, EXACT_TOL, HERM_TOL};

/// Partial-transpose spectra across the three single-party cuts.
#[derive(Clone, Debug)]
pub struct PptReport {
    /// Descending eigenvalue lists for the cuts A|BC, B|AC, C|AB.
    pub spectra: [Vec<f64>; 3],
    pub min_eigenvalue: f64,
    pub ppt_all: bool,
}

/// Everything needed to assert bound entanglement of the mixture.
#[derive(Clone, Debug)]
pub struct BoundEntanglementCertificate {
    pub ppt: PptReport,
    pub range_product_free: Verdict,
    pub matrix_matches_paper: bool,
}

impl BoundEntanglementCertificate {
    /// PPT across every cut and a product-free range together certify
    /// bound entanglement.
    pub fn is_bound_entangled(&self) -> bool {
        self.ppt.ppt_all && self.range_product_free.certified
    }
}

/// The uniform mixture over a four-state entangled basis.
pub fn rho_from_eeb(t: &BasisSet) -> Result<DensityMatrix3Q> {
    DensityMatrix3Q::mix(t.states(), &[0.25; 4])
}

/// The same mixture from the product half: (I - P_S) / 4.
pub fn rho_from_upb_complement(s: &BasisSet) -> Result<DensityMatrix3Q> {
    let mut m = CMat::identity(8);
    for state in s.states() {
        m.add_outer(state.amps(), -1.0);
    }
    DensityMatrix3Q::from_entries(m.scale(0.25).a)
}

/// Integer numerators of the reference matrix, times 1/16.
const PAPER_NUMERATORS: [[i64; 8]; 8] = [
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 3, 0, -1, 0, 1, 0, 1],
    [0, 0, 3, 1, 0, 0, -1, 1],
    [0, -1, 1, 2, 0, 1, 1, 0],
    [0, 0, 0, 0, 3, -1, 1, 1],
    [0, 1, 0, 1, -1, 2, 1, 0],
    [0, 0, -1, 1, 1, 1, 2, 0],
    [0, 1, 1, 0, 1, 0, 0, 1],
];

/// The printed reference matrix, exact in sixteenths.
pub fn paper_matrix() -> DensityMatrix3Q {
    let mut entries = vec![C_ZERO; 64];
    for (r, row) in PAPER_NUMERATORS.iter().enumerate() {
        for (c, &num) in row.iter().enumerate() {
            entries[r * 8 + c] = Complex64::new(num as f64 / 16.0, 0.0);
        }
    }
    DensityMatrix3Q::from_entries(entries).expect("the reference matrix is a density matrix")
}

/// Eigenvalues of the three partial transposes, plus the PPT verdict at
/// the -1e-10 positivity tolerance.
pub fn ppt_report(rho: &DensityMatrix3Q) -> PptReport {
    let spectra = Party::ALL.map(|p| rho.partial_transpose(p).eigenvalues());
    let min_eigenvalue = spectra
        .iter()
        .flatten()
        .copied()
        .fold(f64::INFINITY, f64::min);
    PptReport {
        ppt_all: min_eigenvalue >= -HERM_TOL,
        spectra,
        min_eigenvalue,
    }
}

/// Builds the mixture from the entangled half of a validated complete basis
/// and certifies its bound entanglement.
///
/// `matrix_matches_paper` records whether the mixture reproduces the printed
/// reference matrix entrywise; it is false (not an error) for any pair other
/// than the canonical one.
pub fn certify_bound_entanglement(
    s: &BasisSet,
    t: &BasisSet,
    cfg: &SeesawConfig,
) -> Result<BoundEntanglementCertificate> {
    cbupb(s.clone(), t.clone())?;
    let rho = rho_from_eeb(t)?;
    let matrix_matches_paper = rho.max_abs_diff(&paper_matrix()) <= EXACT_TOL;
    Ok(BoundEntanglementCertificate {
        ppt: ppt_report(&rho),
        range_product_free: ees_product_free(t, cfg),
        matrix_matches_paper,
    })
}
