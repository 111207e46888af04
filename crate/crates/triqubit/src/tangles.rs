//! Entanglement measures for pure three-qubit states.
//!
//! The one-tangle of a party P is the linear entropy 2(1 - tr rho_P^2) of its
//! marginal. It equals four times the sum of the squared 2x2 minors of the
//! party's 2x4 amplitude matrix, and both routes are implemented so they can
//! check each other. The three-tangle is |4 Hdet| with Hdet the Cayley
//! hyperdeterminant of the amplitude tensor, and the pairwise tangles are the
//! linear combinations
//!
//!   tau_AB = (tau_A + tau_B - tau_C - tau_ABC) / 2    (and cyclic),
//!
//! which for pure states equal the squared Wootters concurrence of the
//! corresponding two-party marginal. The concurrence itself is provided as an
//! independent cross-check oracle.

use num_complex::Complex64;

use crate::cmat::{self, CMat, C_ZERO};
use crate::qstate::{DensityMatrix3Q, HermitianMatrix, Party, PartyPair, PureState3Q};
use crate::{Error, Result};

/// The seven tangles of a pure three-qubit state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangleProfile {
    pub tau_a: f64,
    pub tau_b: f64,
    pub tau_c: f64,
    pub tau_abc: f64,
    pub tau_ab: f64,
    pub tau_bc: f64,
    pub tau_ac: f64,
}

impl TangleProfile {
    pub fn one_tangle(&self, p: Party) -> f64 {
        match p {
            Party::A => self.tau_a,
            Party::B => self.tau_b,
            Party::C => self.tau_c,
        }
    }

    pub fn pairwise(&self, pp: PartyPair) -> f64 {
        match pp {
            PartyPair::AB => self.tau_ab,
            PartyPair::BC => self.tau_bc,
            PartyPair::AC => self.tau_ac,
        }
    }

    /// The seven values in the order (A, B, C, ABC, AB, BC, AC).
    pub fn as_array(&self) -> [f64; 7] {
        [
            self.tau_a, self.tau_b, self.tau_c, self.tau_abc, self.tau_ab, self.tau_bc,
            self.tau_ac,
        ]
    }
}

/// The party's amplitudes arranged as a 2x4 matrix: rows indexed by the
/// party's bit, columns by the lexicographic bits of the other two parties.
fn party_matrix(psi: &PureState3Q, p: Party) -> [[Complex64; 4]; 2] {
    let bit = p.bit();
    let mut m = [[C_ZERO; 4]; 2];
    for r in 0..8usize {
        let x = r >> bit & 1;
        let low_mask = (1 << bit) - 1;
        let rest = ((r & !(1 << bit)) >> (bit + 1)) << bit | (r & low_mask);
        m[x][rest] = psi.amp(r);
    }
    m
}

/// One-tangle via the six-minor expansion of the party's 2x4 matrix.
pub fn one_tangle_minors(psi: &PureState3Q, p: Party) -> f64 {
    let m = party_matrix(psi, p);
    let mut sum = 0.0;
    for c1 in 0..4 {
        for c2 in (c1 + 1)..4 {
            sum += (m[0][c1] * m[1][c2] - m[0][c2] * m[1][c1]).norm_sqr();
        }
    }
    4.0 * sum
}

/// One-tangle via the marginal: 2(1 - tr rho_p^2).
pub fn one_tangle_entropy(psi: &PureState3Q, p: Party) -> f64 {
    let rho_p = DensityMatrix3Q::pure(psi).reduce_single(p);
    let mut purity = 0.0;
    for r in 0..2 {
        for c in 0..2 {
            purity += rho_p.entry(r, c).norm_sqr();
        }
    }
    2.0 * (1.0 - purity)
}

/// The Cayley hyperdeterminant of the amplitude tensor, as the quartic
/// expansion in the flat amplitudes. Real for real amplitudes, complex in
/// general.
pub fn hyperdeterminant(psi: &PureState3Q) -> Complex64 {
    let a = psi.amps();
    let sq = |x: Complex64| x * x;
    sq(a[0] * a[7]) + sq(a[3] * a[4]) + sq(a[1] * a[6]) + sq(a[2] * a[5])
        + 4.0 * (a[1] * a[2] * a[4] * a[7] + a[0] * a[3] * a[5] * a[6])
        - 2.0
            * (a[0] * a[7] * a[1] * a[6]
                + a[0] * a[7] * a[2] * a[5]
                + a[0] * a[7] * a[3] * a[4]
                + a[1] * a[6] * a[2] * a[5]
                + a[1] * a[6] * a[3] * a[4]
                + a[2] * a[5] * a[3] * a[4])
}

/// Three-tangle: |4 Hdet|.
pub fn three_tangle(psi: &PureState3Q) -> f64 {
    4.0 * hyperdeterminant(psi).norm()
}

fn pairwise_from_parts(one: [f64; 3], tau_abc: f64, pp: PartyPair) -> f64 {
    let [ta, tb, tc] = one;
    let v = match pp {
        PartyPair::AB => 0.5 * (ta + tb - tc - tau_abc),
        PartyPair::BC => 0.5 * (tb + tc - ta - tau_abc),
        PartyPair::AC => 0.5 * (ta + tc - tb - tau_abc),
    };
    // clamp pure floating-point noise only; a materially negative value
    // indicates a caller bug and should surface
    if v < 0.0 && v > -1e-12 {
        0.0
    } else {
        v
    }
}

/// Pairwise tangle from the one-tangles and the three-tangle.
pub fn pairwise_tangle(psi: &PureState3Q, pp: PartyPair) -> f64 {
    let one = [
        one_tangle_minors(psi, Party::A),
        one_tangle_minors(psi, Party::B),
        one_tangle_minors(psi, Party::C),
    ];
    pairwise_from_parts(one, three_tangle(psi), pp)
}

/// All seven tangles, one-tangles computed by the minors route.
pub fn tangle_profile(psi: &PureState3Q) -> TangleProfile {
    let one = [
        one_tangle_minors(psi, Party::A),
        one_tangle_minors(psi, Party::B),
        one_tangle_minors(psi, Party::C),
    ];
    let tau_abc = three_tangle(psi);
    TangleProfile {
        tau_a: one[0],
        tau_b: one[1],
        tau_c: one[2],
        tau_abc,
        tau_ab: pairwise_from_parts(one, tau_abc, PartyPair::AB),
        tau_bc: pairwise_from_parts(one, tau_abc, PartyPair::BC),
        tau_ac: pairwise_from_parts(one, tau_abc, PartyPair::AC),
    }
}

/// A pure state is fully separable iff every one-tangle vanishes.
pub fn is_fully_product(psi: &PureState3Q, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    Party::ALL
        .iter()
        .all(|&p| one_tangle_minors(psi, p) <= tol)
}

/// Wootters concurrence of a two-qubit density matrix.
///
/// C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) with l_i the
/// descending eigenvalues of rho (Y(x)Y) conj(rho) (Y(x)Y). The spectrum is
/// computed through the Hermitian product sqrt(rho) M sqrt(rho), which shares
/// its nonzero eigenvalues with rho M.
pub fn wootters_concurrence(rho: &HermitianMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::NotDensityMatrix {
            reason: format!("expected a 4x4 matrix, got {0}x{0}", rho.dim()),
        });
    }
    let tr = rho.trace();
    if !((tr - 1.0).abs() <= 1e-9) {
        return Err(Error::NotDensityMatrix {
            reason: format!("trace {tr} is not 1"),
        });
    }
    let decomp = cmat::eigh(rho.cmat());
    if let Some(bad) = decomp.values.iter().find(|v| !(**v >= -1e-9)) {
        return Err(Error::NotDensityMatrix {
            reason: format!("negative eigenvalue {bad:.3e}"),
        });
    }

    // sqrt(rho) = V sqrt(Lambda) V^dagger. Eigenvalues below the relative
    // noise floor are exact zeros of a rank-deficient input; clamping them
    // keeps sqrt from amplifying roundoff into 1e-8-scale errors.
    let floor = 1e-14 * decomp.values[0].max(0.0);
    let mut sqrt_lam = CMat::zeros(4);
    for (i, &v) in decomp.values.iter().enumerate() {
        let clamped = if v > floor { v } else { 0.0 };
        sqrt_lam.set(i, i, Complex64::new(clamped.sqrt(), 0.0));
    }
    let sqrt_rho = decomp
        .vectors
        .mul(&sqrt_lam)
        .mul(&decomp.vectors.adjoint());

    // spin flip (Y(x)Y) rho* (Y(x)Y); Y(x)Y is the real antidiagonal (-1,1,1,-1)
    let mut flip = CMat::zeros(4);
    flip.set(0, 3, Complex64::new(-1.0, 0.0));
    flip.set(1, 2, Complex64::new(1.0, 0.0));
    flip.set(2, 1, Complex64::new(1.0, 0.0));
    flip.set(3, 0, Complex64::new(-1.0, 0.0));
    let flipped = flip.mul(&rho.cmat().conj()).mul(&flip);

    let product = sqrt_rho.mul(&flipped).mul(&sqrt_rho);
    let lams = cmat::eigenvalues(&product);
    let floor = 1e-14 * lams[0].max(0.0);
    let roots: Vec<f64> = lams
        .iter()
        .map(|&l| if l > floor { l.sqrt() } else { 0.0 })
        .collect();
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}
