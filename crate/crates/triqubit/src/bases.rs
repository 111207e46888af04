//! The Shifts UPB, the exact-entanglement basis, and their orbit.
//!
//! The four Shifts states are fully product and mutually orthogonal, yet no
//! fifth product state is orthogonal to all of them. The four entangled
//! states completing them to a basis of the eight-dimensional space form an
//! exact-entanglement basis: every nonzero combination of them stays
//! entangled. Local unitaries u1 (x) u2 (x) u3 move the whole family around
//! without changing any of its entanglement properties; the dual basis is
//! the image under the bit-flip X (x) X (x) X.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::cmat::{CMat, C_ZERO};
use crate::qstate::{ProductState3Q, PureState3Q, Qubit2Vec};
use crate::tangles::is_fully_product;
use crate::{Error, Result, HERM_TOL};

/// Classification carried by a [`BasisSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// Every member is fully product.
    Product,
    /// No member is fully product.
    Entangled,
    /// No per-member constraint.
    Mixed,
}

/// An ordered, mutually orthonormal list of states with a kind tag.
#[derive(Clone, Debug)]
pub struct BasisSet {
    states: Vec<PureState3Q>,
    kind: BasisKind,
}

impl BasisSet {
    /// Validates pairwise orthogonality at 1e-10 and the kind classification
    /// at the same tolerance.
    pub fn new(states: Vec<PureState3Q>, kind: BasisKind) -> Result<Self> {
        let residual = gram_residual(&states);
        if !(residual <= HERM_TOL) {
            return Err(Error::NotOrthogonal {
                residual,
                tol: HERM_TOL,
            });
        }
        match kind {
            BasisKind::Product => {
                if let Some(i) = states.iter().position(|s| !is_fully_product(s, 1e-10)) {
                    return Err(Error::WrongKind {
                        reason: format!("state {i} of a product basis is entangled"),
                    });
                }
            }
            BasisKind::Entangled => {
                if let Some(i) = states.iter().position(|s| is_fully_product(s, 1e-10)) {
                    return Err(Error::WrongKind {
                        reason: format!("state {i} of an entangled basis is fully product"),
                    });
                }
            }
            BasisKind::Mixed => {}
        }
        Ok(BasisSet { states, kind })
    }

    pub fn states(&self) -> &[PureState3Q] {
        &self.states
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// A complete basis split into its product half and its entangled half.
#[derive(Clone, Debug)]
pub struct Cbupb {
    s: BasisSet,
    t: BasisSet,
}

impl Cbupb {
    pub fn product_half(&self) -> &BasisSet {
        &self.s
    }

    pub fn entangled_half(&self) -> &BasisSet {
        &self.t
    }

    /// All eight states, product half first.
    pub fn all_states(&self) -> Vec<PureState3Q> {
        let mut v = self.s.states().to_vec();
        v.extend_from_slice(self.t.states());
        v
    }
}

/// Minimum size of an unextendible product basis: sum_i (d_i - 1) + 1.
pub fn min_upb_cardinality(dims: &[usize]) -> Result<usize> {
    for &d in dims {
        if d < 2 {
            return Err(Error::BadDimension { dim: d });
        }
    }
    Ok(dims.iter().map(|d| d - 1).sum::<usize>() + 1)
}

fn state(pairs: &[(usize, f64)]) -> PureState3Q {
    let mut amps = [C_ZERO; 8];
    for &(r, x) in pairs {
        amps[r] = Complex64::new(x, 0.0);
    }
    PureState3Q::new(amps).expect("tabulated amplitudes are normalized")
}

/// The four Shifts product states in computational-basis form.
pub fn shifts_upb() -> BasisSet {
    let states = vec![
        state(&[(0, 1.0)]),
        state(&[(4, 0.5), (5, 0.5), (6, -0.5), (7, -0.5)]),
        state(&[(2, 0.5), (3, -0.5), (6, 0.5), (7, -0.5)]),
        state(&[(1, 0.5), (3, 0.5), (5, -0.5), (7, -0.5)]),
    ];
    BasisSet::new(states, BasisKind::Product).expect("the Shifts set is a product basis")
}

/// The same four states as explicit single-qubit factors:
/// |000>, |1,-,+>, |+,1,->, |-,+,1>.
pub fn shifts_upb_factors() -> [ProductState3Q; 4] {
    let zero = Qubit2Vec::basis(0);
    let one = Qubit2Vec::basis(1);
    let plus = Qubit2Vec::plus_minus(true);
    let minus = Qubit2Vec::plus_minus(false);
    [
        ProductState3Q::new(zero.clone(), zero.clone(), zero),
        ProductState3Q::new(one.clone(), minus.clone(), plus.clone()),
        ProductState3Q::new(plus.clone(), one.clone(), minus.clone()),
        ProductState3Q::new(minus, plus, one),
    ]
}

/// The four entangled states completing the Shifts UPB to a basis.
pub fn eeb() -> BasisSet {
    let states = vec![
        state(&[(1, 0.5), (2, 0.5), (4, 0.5), (7, 0.5)]),
        state(&[(1, 0.5), (2, -0.5), (5, 0.5), (6, 0.5)]),
        state(&[(1, -0.5), (3, 0.5), (4, 0.5), (6, 0.5)]),
        state(&[(2, 0.5), (3, 0.5), (4, -0.5), (5, 0.5)]),
    ];
    BasisSet::new(states, BasisKind::Entangled).expect("the EEB is an entangled basis")
}

/// The dual family: the image of the canonical basis under the three-fold
/// bit flip, tabulated in the order it is usually written.
pub fn dual_cbupb() -> Cbupb {
    let s = BasisSet::new(
        vec![
            state(&[(7, 1.0)]),
            state(&[(3, 0.5), (2, 0.5), (1, -0.5), (0, -0.5)]),
            state(&[(5, 0.5), (4, -0.5), (1, 0.5), (0, -0.5)]),
            state(&[(6, 0.5), (4, 0.5), (2, -0.5), (0, -0.5)]),
        ],
        BasisKind::Product,
    )
    .expect("dual product half is a product basis");
    let t = BasisSet::new(
        vec![
            state(&[(6, 0.5), (5, 0.5), (3, 0.5), (0, 0.5)]),
            state(&[(6, 0.5), (5, -0.5), (2, 0.5), (1, 0.5)]),
            state(&[(6, -0.5), (4, 0.5), (3, 0.5), (1, 0.5)]),
            state(&[(5, 0.5), (4, 0.5), (3, -0.5), (2, 0.5)]),
        ],
        BasisKind::Entangled,
    )
    .expect("dual entangled half is an entangled basis");
    cbupb(s, t).expect("the dual family is a valid complete basis")
}

/// Validates and assembles a complete basis from four product states and
/// four entangled states.
pub fn cbupb(s: BasisSet, t: BasisSet) -> Result<Cbupb> {
    if s.len() != 4 || t.len() != 4 {
        return Err(Error::WrongKind {
            reason: format!("need 4 + 4 states, got {} + {}", s.len(), t.len()),
        });
    }
    if s.kind() != BasisKind::Product {
        return Err(Error::WrongKind {
            reason: "first half must be a product basis".into(),
        });
    }
    if t.kind() != BasisKind::Entangled {
        return Err(Error::WrongKind {
            reason: "second half must be an entangled basis".into(),
        });
    }
    let mut cross = 0.0f64;
    for x in s.states() {
        for y in t.states() {
            cross = cross.max(x.inner(y).norm());
        }
    }
    if !(cross <= HERM_TOL) {
        return Err(Error::NotOrthogonal {
            residual: cross,
            tol: HERM_TOL,
        });
    }
    // completeness: the eight outer products must resolve the identity
    let mut sum = CMat::zeros(8);
    for x in s.states().iter().chain(t.states()) {
        sum.add_outer(x.amps(), 1.0);
    }
    let residual = sum.max_abs_diff(&CMat::identity(8));
    if !(residual <= HERM_TOL) {
        return Err(Error::NotComplete {
            residual,
            tol: HERM_TOL,
        });
    }
    Ok(Cbupb { s, t })
}

fn gram_residual(states: &[PureState3Q]) -> f64 {
    let mut worst = 0.0f64;
    for (i, x) in states.iter().enumerate() {
        for (j, y) in states.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((x.inner(y) - target).norm());
        }
    }
    worst
}

/// True iff the Gram matrix of the list equals the identity within `tol`.
pub fn is_orthonormal(states: &[PureState3Q], tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    gram_residual(states) <= tol
}

/// A local unitary u1 (x) u2 (x) u3, each factor 2x2.
#[derive(Clone, Debug)]
pub struct LocalUnitary {
    factors: [[[Complex64; 2]; 2]; 3],
}

impl LocalUnitary {
    /// Validates u^dagger u = I within 1e-10 for each factor.
    pub fn new(
        u1: [[Complex64; 2]; 2],
        u2: [[Complex64; 2]; 2],
        u3: [[Complex64; 2]; 2],
    ) -> Result<Self> {
        for u in [&u1, &u2, &u3] {
            let residual = unitarity_residual(u);
            if !(residual <= HERM_TOL) {
                return Err(Error::NotUnitary {
                    residual,
                    tol: HERM_TOL,
                });
            }
        }
        Ok(LocalUnitary {
            factors: [u1, u2, u3],
        })
    }

    pub fn identity() -> Self {
        let id = [
            [Complex64::new(1.0, 0.0), C_ZERO],
            [C_ZERO, Complex64::new(1.0, 0.0)],
        ];
        LocalUnitary {
            factors: [id, id, id],
        }
    }

    /// X (x) X (x) X, the bit flip on every qubit.
    pub fn bit_flip() -> Self {
        let x = [
            [C_ZERO, Complex64::new(1.0, 0.0)],
            [Complex64::new(1.0, 0.0), C_ZERO],
        ];
        LocalUnitary {
            factors: [x, x, x],
        }
    }

    pub fn factor(&self, idx: usize) -> &[[Complex64; 2]; 2] {
        &self.factors[idx]
    }

    /// Applies u1 (x) u2 (x) u3 to a single state.
    pub fn apply(&self, psi: &PureState3Q) -> PureState3Q {
        let [u1, u2, u3] = &self.factors;
        let mut amps = [C_ZERO; 8];
        for rp in 0..8usize {
            let (ip, jp, kp) = (rp >> 2 & 1, rp >> 1 & 1, rp & 1);
            let mut acc = C_ZERO;
            for r in 0..8usize {
                let (i, j, k) = (r >> 2 & 1, r >> 1 & 1, r & 1);
                acc += u1[ip][i] * u2[jp][j] * u3[kp][k] * psi.amp(r);
            }
            amps[rp] = acc;
        }
        PureState3Q::renormalized_unchecked(amps)
    }
}

fn unitarity_residual(u: &[[Complex64; 2]; 2]) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..2 {
        for c in 0..2 {
            let mut acc = C_ZERO;
            for k in 0..2 {
                acc += u[k][r].conj() * u[k][c];
            }
            let target = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((acc - target).norm());
        }
    }
    worst
}

/// Maps every state by the same local unitary. Orthonormality is preserved.
pub fn lu_transform(states: &[PureState3Q], u: &LocalUnitary) -> Vec<PureState3Q> {
    states.iter().map(|s| u.apply(s)).collect()
}

/// Three independent Haar-distributed 2x2 unitaries, deterministic per seed.
///
/// Each factor is drawn by Gram-Schmidt on a matrix of standard complex
/// Gaussians, which keeps the factorization diagonal real positive and hence
/// samples the Haar measure. The stream is ChaCha8 seeded from the given
/// integer, so a fixed seed reproduces the same unitary bit for bit.
pub fn random_local_unitary(seed: u64) -> LocalUnitary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u1 = haar_2x2(&mut rng);
    let u2 = haar_2x2(&mut rng);
    let u3 = haar_2x2(&mut rng);
    LocalUnitary::new(u1, u2, u3).expect("Gram-Schmidt output is unitary")
}

pub(crate) fn haar_2x2<R: rand::Rng>(rng: &mut R) -> [[Complex64; 2]; 2] {
    loop {
        let mut g = [[C_ZERO; 2]; 2];
        for row in g.iter_mut() {
            for z in row.iter_mut() {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                *z = Complex64::new(re, im);
            }
        }
        // columns of g, orthonormalized
        let n0 = (g[0][0].norm_sqr() + g[1][0].norm_sqr()).sqrt();
        if n0 < 1e-6 {
            continue;
        }
        let q0 = [g[0][0] / n0, g[1][0] / n0];
        let proj = q0[0].conj() * g[0][1] + q0[1].conj() * g[1][1];
        let w = [g[0][1] - proj * q0[0], g[1][1] - proj * q0[1]];
        let n1 = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
        if n1 < 1e-6 {
            continue;
        }
        return [[q0[0], w[0] / n1], [q0[1], w[1] / n1]];
    }
}

/// Draws a Haar-random single-qubit state from an existing stream.
pub(crate) fn random_qubit<R: rand::Rng>(rng: &mut R) -> Qubit2Vec {
    loop {
        let re0: f64 = StandardNormal.sample(rng);
        let im0: f64 = StandardNormal.sample(rng);
        let re1: f64 = StandardNormal.sample(rng);
        let im1: f64 = StandardNormal.sample(rng);
        if let Ok(q) = Qubit2Vec::normalized([Complex64::new(re0, im0), Complex64::new(re1, im1)])
        {
            return q;
        }
    }
}

/// The normalized combination sum_i lambda_i phi_i of the four basis states.
pub fn combine(t: &BasisSet, coeffs: [Complex64; 4]) -> Result<PureState3Q> {
    assert_eq!(t.len(), 4, "combine expects a four-state basis");
    let total: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    if !(total > 1e-12) {
        return Err(Error::ZeroVector { norm: total.sqrt() });
    }
    let mut amps = [C_ZERO; 8];
    for (phi, lambda) in t.states().iter().zip(coeffs) {
        for (r, amp) in amps.iter_mut().enumerate() {
            *amp += lambda * phi.amp(r);
        }
    }
    PureState3Q::normalized(amps)
}

/// State equality up to a global phase: |<x|y>| within `tol` of 1.
pub fn phase_equal(x: &PureState3Q, y: &PureState3Q, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    x.inner(y).norm() >= 1.0 - tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::Party;
    use crate::tangles::{one_tangle_minors, tangle_profile};
    use crate::EXACT_TOL;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn ghz() -> PureState3Q {
        let mut amps = [C_ZERO; 8];
        amps[0] = re(1.0);
        amps[7] = re(1.0);
        PureState3Q::normalized(amps).unwrap()
    }

    #[test]
    fn upb_bound_examples() {
        assert_eq!(min_upb_cardinality(&[2, 2, 2]).unwrap(), 4);
        assert_eq!(min_upb_cardinality(&[3, 3]).unwrap(), 5);
        assert_eq!(min_upb_cardinality(&[2, 2]).unwrap(), 3);
        assert!(matches!(
            min_upb_cardinality(&[2, 1, 2]),
            Err(Error::BadDimension { dim: 1 })
        ));
    }

    #[test]
    fn shifts_members_match_their_product_factors() {
        let s = shifts_upb();
        let factors = shifts_upb_factors();
        assert_eq!(s.states()[0], PureState3Q::basis_ket(0));
        for (member, factor) in s.states().iter().zip(&factors) {
            let expanded = factor.expand();
            let diff: f64 = (0..8)
                .map(|r| (member.amp(r) - expanded.amp(r)).norm())
                .fold(0.0, f64::max);
            assert!(diff < EXACT_TOL);
        }
    }

    #[test]
    fn eeb_members_match_the_tabulated_amplitudes() {
        let t = eeb();
        let phi1 = t.states()[0].clone();
        for r in [1, 2, 4, 7] {
            assert_eq!(phi1.amp(r), re(0.5));
        }
        let phi4 = t.states()[3].clone();
        assert_eq!(phi4.amp(2), re(0.5));
        assert_eq!(phi4.amp(3), re(0.5));
        assert_eq!(phi4.amp(4), re(-0.5));
        assert_eq!(phi4.amp(5), re(0.5));
    }

    #[test]
    fn eeb_outer_product_has_quarter_entries() {
        let t = eeb();
        let rho = crate::qstate::DensityMatrix3Q::pure(&t.states()[0]);
        for r in [1usize, 2, 4, 7] {
            for c in [1usize, 2, 4, 7] {
                assert_eq!(rho.entry(r, c), re(0.25));
            }
        }
        assert_eq!(rho.entry(0, 0), C_ZERO);
        assert_eq!(rho.entry(3, 5), C_ZERO);
    }

    #[test]
    fn dual_members_match_the_tabulated_amplitudes() {
        let dual = dual_cbupb();
        assert_eq!(dual.product_half().states()[0], PureState3Q::basis_ket(7));
        let phi1 = &dual.entangled_half().states()[0];
        for r in [0, 3, 5, 6] {
            assert_eq!(phi1.amp(r), re(0.5));
        }
    }

    #[test]
    fn canonical_pair_is_a_valid_cbupb() {
        let b = cbupb(shifts_upb(), eeb()).unwrap();
        assert!(is_orthonormal(&b.all_states(), EXACT_TOL));
    }

    #[test]
    fn cross_orthogonality_is_exact() {
        let s = shifts_upb();
        let t = eeb();
        for x in t.states() {
            for y in s.states() {
                assert!(x.inner(y).norm() < EXACT_TOL);
            }
        }
    }

    #[test]
    fn duplicate_states_fail_orthogonality() {
        let twice = vec![PureState3Q::basis_ket(0), PureState3Q::basis_ket(0)];
        assert!(matches!(
            BasisSet::new(twice, BasisKind::Mixed),
            Err(Error::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn cbupb_rejects_wrong_inputs() {
        // two copies of the product half cannot form a complete basis
        let s = shifts_upb();
        let copy = BasisSet::new(s.states().to_vec(), BasisKind::Mixed).unwrap();
        let err = cbupb(s.clone(), copy).unwrap_err();
        assert!(matches!(err, Error::WrongKind { .. }));

        // replacing one entangled member with GHZ breaks cross-orthogonality
        let mut states = eeb().states().to_vec();
        states[0] = ghz();
        match BasisSet::new(states, BasisKind::Entangled) {
            Ok(t) => {
                assert!(matches!(
                    cbupb(s, t),
                    Err(Error::NotOrthogonal { .. } | Error::NotComplete { .. })
                ));
            }
            // GHZ is not orthogonal to the remaining EEB members either
            Err(e) => assert!(matches!(e, Error::NotOrthogonal { .. })),
        }
    }

    #[test]
    fn is_orthonormal_examples() {
        assert!(is_orthonormal(shifts_upb().states(), 1e-10));
        let twice = vec![PureState3Q::basis_ket(0), PureState3Q::basis_ket(0)];
        assert!(!is_orthonormal(&twice, 1e-10));
        let b = cbupb(shifts_upb(), eeb()).unwrap();
        assert!(is_orthonormal(&b.all_states(), 1e-10));
    }

    #[test]
    fn dual_is_the_bit_flip_image() {
        let canonical = cbupb(shifts_upb(), eeb()).unwrap();
        let dual = dual_cbupb();
        let flip = LocalUnitary::bit_flip();
        for (orig, dual_state) in canonical
            .all_states()
            .iter()
            .zip(dual.all_states().iter())
        {
            assert!(phase_equal(&flip.apply(orig), dual_state, EXACT_TOL));
        }
    }

    #[test]
    fn identity_transform_is_identity() {
        let t = eeb();
        let moved = lu_transform(t.states(), &LocalUnitary::identity());
        for (x, y) in t.states().iter().zip(&moved) {
            assert!(phase_equal(x, y, EXACT_TOL));
        }
    }

    #[test]
    fn lu_preserves_tangles_and_gram() {
        let t = eeb();
        let u = random_local_unitary(42);
        let moved = lu_transform(t.states(), &u);
        assert!(is_orthonormal(&moved, 1e-10));
        for (x, y) in t.states().iter().zip(&moved) {
            let px = tangle_profile(x).as_array();
            let py = tangle_profile(y).as_array();
            for (a, b) in px.iter().zip(py) {
                assert!((a - b).abs() < 1e-9);
            }
            for p in Party::ALL {
                assert!((one_tangle_minors(y, p) - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn random_unitary_is_seeded_and_unitary() {
        let u = random_local_unitary(7);
        let v = random_local_unitary(7);
        for idx in 0..3 {
            assert!(unitarity_residual(u.factor(idx)) < 1e-12);
            assert_eq!(u.factor(idx), v.factor(idx), "same seed, same unitary");
        }
        let w = random_local_unitary(8);
        assert_ne!(u.factor(0), w.factor(0), "different seeds differ");
    }

    #[test]
    fn non_unitary_factors_are_rejected() {
        let bad = [[re(1.0), re(1.0)], [C_ZERO, re(1.0)]];
        let id = [[re(1.0), C_ZERO], [C_ZERO, re(1.0)]];
        assert!(matches!(
            LocalUnitary::new(bad, id, id),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn combine_examples() {
        let t = eeb();
        let single = combine(&t, [re(1.0), C_ZERO, C_ZERO, C_ZERO]).unwrap();
        assert!(phase_equal(&single, &t.states()[0], EXACT_TOL));

        let two = combine(&t, [re(1.0), re(1.0), C_ZERO, C_ZERO]).unwrap();
        let mu = 1.0 / 8.0f64.sqrt();
        assert!((two.amp(1).re - 2.0 * mu).abs() < EXACT_TOL);
        for r in 4..8 {
            assert!((two.amp(r).re - mu).abs() < EXACT_TOL);
        }

        assert!(matches!(
            combine(&t, [C_ZERO; 4]),
            Err(Error::ZeroVector { .. })
        ));
    }
}
