//! Maximum product overlap with a subspace, by see-saw and by grid.
//!
//! For a projector P the objective is f(a, b, c) = <abc| P |abc> over unit
//! single-qubit vectors a, b, c. With two parties fixed the objective is a
//! 2x2 Hermitian quadratic form in the third, so each see-saw step solves a
//! closed-form top-eigenvector problem and the objective never decreases.
//! The grid search evaluates f exhaustively over a product grid of Bloch
//! angles and is kept free of the see-saw machinery so the two can serve as
//! independent checks on each other.
//!
//! These searches certify the two structural claims about the Shifts family:
//! no product state is orthogonal to all four UPB members, and the span of
//! the entangled half contains no fully product state.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bases::{random_qubit, BasisSet};
use crate::cmat::{self, CMat, C_ZERO};
use crate::qstate::{HermitianMatrix, ProductState3Q, PureState3Q, Qubit2Vec};
use crate::{Error, Result, HERM_TOL};

/// Verdict threshold: a best overlap below 1 - EPS certifies that the
/// subspace contains no product state.
const CERTIFY_EPS: f64 = 1e-6;

/// An orthogonal projector onto a subspace of the eight-dimensional space.
#[derive(Clone, Debug)]
pub struct Projector {
    matrix: HermitianMatrix,
    rank: usize,
}

impl Projector {
    /// Orthogonal projector onto the span of the given states.
    ///
    /// The states must be linearly independent: the Gram matrix must be
    /// positive with condition number below 1e8.
    pub fn span(states: &[PureState3Q]) -> Result<Self> {
        assert!(
            !states.is_empty() && states.len() <= 8,
            "span needs between 1 and 8 states"
        );
        let k = states.len();
        let mut gram = CMat::zeros(k);
        for (i, x) in states.iter().enumerate() {
            for (j, y) in states.iter().enumerate() {
                gram.set(i, j, x.inner(y));
            }
        }
        let vals = cmat::eigenvalues(&gram);
        let (max, min) = (vals[0], vals[k - 1]);
        if !(min > 0.0 && max / min < 1e8) {
            return Err(Error::DegenerateSpan {
                reason: format!("Gram eigenvalue range [{min:.3e}, {max:.3e}]"),
            });
        }

        // modified Gram-Schmidt, two passes for orthogonality at machine level
        let mut basis: Vec<[Complex64; 8]> = Vec::with_capacity(k);
        for state in states {
            let mut v = *state.amps();
            for _ in 0..2 {
                for e in &basis {
                    let proj: Complex64 = e.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                    for (ve, ee) in v.iter_mut().zip(e) {
                        *ve -= proj * ee;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if !(norm > 1e-8) {
                return Err(Error::DegenerateSpan {
                    reason: format!("residual norm {norm:.3e} during orthonormalization"),
                });
            }
            for z in v.iter_mut() {
                *z /= norm;
            }
            basis.push(v);
        }

        let mut p = CMat::zeros(8);
        for e in &basis {
            p.add_outer(e, 1.0);
        }
        Self::from_cmat(p, k)
    }

    fn from_cmat(p: CMat, rank: usize) -> Result<Self> {
        let idem = p.mul(&p).max_abs_diff(&p);
        if !(idem <= HERM_TOL) {
            return Err(Error::DegenerateSpan {
                reason: format!("projector is not idempotent: residual {idem:.3e}"),
            });
        }
        let matrix = HermitianMatrix::from_cmat(p)?;
        let tr = matrix.trace();
        if !((tr - rank as f64).abs() <= 1e-9) {
            return Err(Error::DegenerateSpan {
                reason: format!("trace {tr} does not match rank {rank}"),
            });
        }
        for v in matrix.eigenvalues() {
            if !(v.abs() <= 1e-9 || (v - 1.0).abs() <= 1e-9) {
                return Err(Error::DegenerateSpan {
                    reason: format!("eigenvalue {v} is neither 0 nor 1"),
                });
            }
        }
        Ok(Projector { matrix, rank })
    }

    /// I - P, the projector onto the orthogonal complement.
    pub fn complement(&self) -> Projector {
        let p = CMat::identity(8).sub(self.matrix.cmat());
        Self::from_cmat(p, 8 - self.rank).expect("complement of a projector is a projector")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    /// <abc| P |abc>, always real.
    pub fn product_overlap(&self, p: &ProductState3Q) -> f64 {
        let v = p.expand();
        let mut acc = C_ZERO;
        for r in 0..8 {
            for s in 0..8 {
                acc += v.amp(r).conj() * self.matrix.entry(r, s) * v.amp(s);
            }
        }
        acc.re
    }
}

/// Search parameters for the see-saw maximization.
#[derive(Clone, Copy, Debug)]
pub struct SeesawConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for SeesawConfig {
    fn default() -> Self {
        SeesawConfig {
            restarts: 64,
            max_iters: 500,
            tol: 1e-12,
            seed: 0,
        }
    }
}

/// Outcome of a see-saw run.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub best_value: f64,
    pub best_product: ProductState3Q,
    /// Sweeps used by the restart that produced the best value.
    pub iterations: usize,
    pub restarts_used: usize,
    pub converged: bool,
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Seesaw,
    Grid,
    Both,
}

/// Outcome of a certification: `certified` means the searched subspace is
/// free of product states, with `margin` = 1 - best overlap found.
#[derive(Clone, Copy, Debug)]
pub struct Verdict {
    pub certified: bool,
    pub margin: f64,
    pub method: Method,
}

impl Verdict {
    /// Applies the 1 - 1e-6 certification threshold to a best overlap.
    pub fn from_best_value(best_value: f64, method: Method) -> Self {
        Verdict {
            certified: best_value < 1.0 - CERTIFY_EPS,
            margin: 1.0 - best_value,
            method,
        }
    }
}

/// Maximizes <abc| P |abc> by cyclic single-party updates.
///
/// Each update keeps two parties fixed and replaces the third with the top
/// eigenvector of the induced 2x2 Hermitian form, so the objective is
/// non-decreasing sweep over sweep. Restarts draw independent Haar-random
/// product states from per-restart ChaCha8 streams, so results are
/// deterministic per seed; the best restart wins, ties going to the lower
/// restart index.
pub fn seesaw_max_overlap(p: &Projector, cfg: &SeesawConfig) -> SearchResult {
    assert!(cfg.restarts >= 1, "need at least one restart");
    assert!(cfg.tol > 0.0, "tolerance must be positive");

    let mut best: Option<(f64, ProductState3Q, usize, bool)> = None;
    for restart in 0..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(restart as u64);
        let mut qs = [
            gauge(random_qubit(&mut rng)),
            gauge(random_qubit(&mut rng)),
            gauge(random_qubit(&mut rng)),
        ];

        let mut objective = overlap(p, &qs);
        let mut converged = false;
        let mut sweeps = 0;
        for sweep in 1..=cfg.max_iters {
            for party in 0..3 {
                let m = induced_form(p, &qs, party);
                qs[party] = top_eigenvector(&m, &qs[party]);
            }
            let next = overlap(p, &qs);
            let improvement = next - objective;
            assert!(
                improvement >= -1e-12,
                "see-saw objective decreased by {improvement:e}"
            );
            objective = next;
            sweeps = sweep;
            if improvement < cfg.tol {
                converged = true;
                break;
            }
        }

        let product = ProductState3Q::new(qs[0].clone(), qs[1].clone(), qs[2].clone());
        let value = p.product_overlap(&product);
        let better = match &best {
            None => true,
            Some((b, ..)) => value > *b,
        };
        if better {
            best = Some((value, product, sweeps, converged));
        }
    }

    let (best_value, best_product, iterations, converged) = best.expect("at least one restart");
    SearchResult {
        best_value,
        best_product,
        iterations,
        restarts_used: cfg.restarts,
        converged,
    }
}

fn overlap(p: &Projector, qs: &[Qubit2Vec; 3]) -> f64 {
    p.product_overlap(&ProductState3Q::new(
        qs[0].clone(),
        qs[1].clone(),
        qs[2].clone(),
    ))
}

/// The 2x2 Hermitian form seen by one party with the other two fixed.
fn induced_form(p: &Projector, qs: &[Qubit2Vec; 3], party: usize) -> [[Complex64; 2]; 2] {
    let bit = 2 - party; // party 0 = A occupies the highest bit
    let mut m = [[C_ZERO; 2]; 2];
    for r in 0..8usize {
        for s in 0..8usize {
            let entry = p.matrix().entry(r, s);
            if entry == C_ZERO {
                continue;
            }
            let mut weight = entry;
            let mut skip = false;
            for (other, q) in qs.iter().enumerate() {
                if other == party {
                    continue;
                }
                let ob = 2 - other;
                weight = weight * q.amp(r >> ob & 1).conj() * q.amp(s >> ob & 1);
                if weight == C_ZERO {
                    skip = true;
                    break;
                }
            }
            if skip {
                continue;
            }
            m[r >> bit & 1][s >> bit & 1] += weight;
        }
    }
    m
}

/// Top eigenvector of a 2x2 Hermitian matrix, phase-gauged. Near-degenerate
/// spectra (gap below 1e-14) keep the previous iterate to avoid oscillation.
fn top_eigenvector(m: &[[Complex64; 2]; 2], previous: &Qubit2Vec) -> Qubit2Vec {
    let m00 = m[0][0].re;
    let m11 = m[1][1].re;
    let off = m[0][1];
    let mid = 0.5 * (m00 + m11);
    let rad = (0.25 * (m00 - m11) * (m00 - m11) + off.norm_sqr()).sqrt();
    if 2.0 * rad < 1e-14 {
        return previous.clone();
    }
    // two equivalent closed forms; the one anchored on the smaller diagonal
    // entry has norm at least rad, so it never degenerates
    let top = mid + rad;
    let mut v = if m00 >= m11 {
        [Complex64::new(top - m11, 0.0), off.conj()]
    } else {
        [off, Complex64::new(top - m00, 0.0)]
    };
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    v[0] /= norm;
    v[1] /= norm;
    gauge(Qubit2Vec::new(v).expect("explicitly normalized"))
}

/// Makes the first nonzero component real nonnegative.
fn gauge(q: Qubit2Vec) -> Qubit2Vec {
    let pivot = if q.amp(0).norm() > 1e-12 {
        q.amp(0)
    } else {
        q.amp(1)
    };
    let phase = pivot.conj() / pivot.norm();
    Qubit2Vec::new([q.amp(0) * phase, q.amp(1) * phase]).expect("gauging preserves the norm")
}

/// Exhaustive product-grid maximum of <abc| P |abc>.
///
/// Each qubit is parameterized as (cos theta, e^{i phi} sin theta) with
/// `resolution` samples of theta in [0, pi/2] and of phi in [0, 2 pi). The
/// returned value is exactly the maximum over the full six-angle grid: the
/// two outer parties are enumerated directly, and for each such pair the
/// objective is affine in cos^2 theta and sinusoidal in phi for the third
/// party, so its grid maximum is taken by scanning the two marginal tables.
pub fn grid_oracle_max_overlap(p: &Projector, resolution: usize) -> f64 {
    assert!(resolution >= 8, "resolution must be at least 8");
    let res = resolution;

    let mut cos_t = Vec::with_capacity(res);
    let mut sin_t = Vec::with_capacity(res);
    let mut sin_2t = Vec::with_capacity(res);
    for m in 0..res {
        let theta = std::f64::consts::FRAC_PI_2 * m as f64 / (res - 1) as f64;
        cos_t.push(theta.cos());
        sin_t.push(theta.sin());
        sin_2t.push((2.0 * theta).sin());
    }
    let mut cos_p = Vec::with_capacity(res);
    let mut sin_p = Vec::with_capacity(res);
    for m in 0..res {
        let phi = 2.0 * std::f64::consts::PI * m as f64 / res as f64;
        cos_p.push(phi.cos());
        sin_p.push(phi.sin());
    }

    // all grid points for one qubit
    let mut grid = Vec::with_capacity(res * res);
    for t in 0..res {
        for f in 0..res {
            grid.push([
                Complex64::new(cos_t[t], 0.0),
                Complex64::new(sin_t[t] * cos_p[f], sin_t[t] * sin_p[f]),
            ]);
        }
    }

    let pm = p.matrix();
    let mut best = f64::NEG_INFINITY;
    for c in &grid {
        // K[(i,j),(i',j')] = sum_{k,k'} conj(c_k) P c_k'
        let mut kmat = [[C_ZERO; 4]; 4];
        for (row, kslot) in kmat.iter_mut().enumerate() {
            for (col, kentry) in kslot.iter_mut().enumerate() {
                let mut acc = C_ZERO;
                for k in 0..2usize {
                    for kp in 0..2usize {
                        acc += c[k].conj() * pm.entry(row << 1 | k, col << 1 | kp) * c[kp];
                    }
                }
                *kentry = acc;
            }
        }
        for b in &grid {
            // L[i][i'] = sum_{j,j'} conj(b_j) K b_j'
            let mut l00 = C_ZERO;
            let mut l01 = C_ZERO;
            let mut l11 = C_ZERO;
            for j in 0..2usize {
                for jp in 0..2usize {
                    let w = b[j].conj() * b[jp];
                    l00 += w * kmat[j][jp];
                    l01 += w * kmat[j][2 | jp];
                    l11 += w * kmat[2 | j][2 | jp];
                }
            }
            let (u, v) = (l01.re, -l01.im);
            // grid maximum over the third party's phase angle
            let mut g = f64::NEG_INFINITY;
            for m in 0..res {
                g = g.max(u * cos_p[m] + v * sin_p[m]);
            }
            // then over its polar angle; sin 2 theta >= 0 on [0, pi/2]
            for t in 0..res {
                let f = l00.re * cos_t[t] * cos_t[t] + l11.re * sin_t[t] * sin_t[t] + sin_2t[t] * g;
                best = best.max(f);
            }
        }
    }
    best
}

/// Certifies that no product state is orthogonal to every member of `s`,
/// by maximizing product overlap with the orthogonal complement of span(s).
pub fn upb_extendibility(s: &BasisSet, cfg: &SeesawConfig) -> Verdict {
    let complement = Projector::span(s.states())
        .expect("orthonormal basis sets span non-degenerately")
        .complement();
    let result = seesaw_max_overlap(&complement, cfg);
    Verdict::from_best_value(result.best_value, Method::Seesaw)
}

/// Certifies that the span of `t` contains no fully product state.
pub fn ees_product_free(t: &BasisSet, cfg: &SeesawConfig) -> Verdict {
    let span = Projector::span(t.states()).expect("orthonormal basis sets span non-degenerately");
    let result = seesaw_max_overlap(&span, cfg);
    Verdict::from_best_value(result.best_value, Method::Seesaw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{dual_cbupb, eeb, shifts_upb, BasisKind};
    use crate::qstate::PureState3Q;
    use crate::EXACT_TOL;

    /// Best product overlap with span(T) for the canonical EEB, frozen from
    /// converged multi-start runs; see-saw and the grid oracle agree on it.
    const EES_MAX_OVERLAP: f64 = 0.918_558_653_543_7;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn ghz() -> PureState3Q {
        let mut amps = [C_ZERO; 8];
        amps[0] = re(1.0);
        amps[7] = re(1.0);
        PureState3Q::normalized(amps).unwrap()
    }

    fn quick_cfg() -> SeesawConfig {
        SeesawConfig {
            restarts: 16,
            seed: 1,
            ..SeesawConfig::default()
        }
    }

    #[test]
    fn span_of_single_ket_is_rank_one() {
        let p = Projector::span(&[PureState3Q::basis_ket(0)]).unwrap();
        assert_eq!(p.rank(), 1);
        assert_eq!(p.matrix().entry(0, 0), re(1.0));
        assert_eq!(p.matrix().entry(1, 1), C_ZERO);
    }

    #[test]
    fn span_rejects_duplicates() {
        let twice = vec![PureState3Q::basis_ket(0), PureState3Q::basis_ket(0)];
        assert!(matches!(
            Projector::span(&twice),
            Err(Error::DegenerateSpan { .. })
        ));
    }

    #[test]
    fn eeb_span_is_the_upb_complement() {
        let pt = Projector::span(eeb().states()).unwrap();
        let ps = Projector::span(shifts_upb().states()).unwrap();
        let diff = pt.matrix().max_abs_diff(&ps.complement().matrix());
        assert!(diff < EXACT_TOL);
    }

    #[test]
    fn ghz_product_overlap_is_half() {
        let p = Projector::span(&[ghz()]).unwrap();
        let result = seesaw_max_overlap(&p, &quick_cfg());
        assert!(
            (result.best_value - 0.5).abs() < 1e-6,
            "got {}",
            result.best_value
        );
        assert!(result.converged);
        // self-consistency of the reported product state
        let direct = p.product_overlap(&result.best_product);
        assert!((direct - result.best_value).abs() < 1e-9);
    }

    #[test]
    fn shifts_span_contains_product_states() {
        let p = Projector::span(shifts_upb().states()).unwrap();
        let result = seesaw_max_overlap(&p, &quick_cfg());
        assert!((result.best_value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn ees_overlap_matches_frozen_value() {
        let p = Projector::span(eeb().states()).unwrap();
        let result = seesaw_max_overlap(&p, &SeesawConfig::default());
        assert!(
            (result.best_value - EES_MAX_OVERLAP).abs() < 1e-6,
            "got {}",
            result.best_value
        );
        assert!(result.converged);
    }

    #[test]
    fn identity_grid_maximum_is_one() {
        let full = Projector::span(shifts_upb().states()).unwrap();
        let identity = Projector::from_cmat(CMat::identity(8), 8).unwrap();
        assert_eq!(identity.rank(), 8);
        let g = grid_oracle_max_overlap(&identity, 8);
        assert!((g - 1.0).abs() < EXACT_TOL);
        drop(full);
    }

    #[test]
    fn ghz_grid_oracle_brackets_the_maximum() {
        let p = Projector::span(&[ghz()]).unwrap();
        let g = grid_oracle_max_overlap(&p, 64);
        assert!(g >= 0.49, "got {g}");
        assert!(g <= 0.5 + 1e-9, "got {g}");
    }

    #[test]
    fn grid_never_exceeds_seesaw() {
        for states in [shifts_upb().states().to_vec(), vec![ghz()]] {
            let p = Projector::span(&states).unwrap();
            let s = seesaw_max_overlap(&p, &quick_cfg());
            let g = grid_oracle_max_overlap(&p, 16);
            assert!(g <= s.best_value + 1e-9, "{g} > {}", s.best_value);
        }
    }

    #[test]
    fn upb_is_unextendible() {
        let verdict = upb_extendibility(&shifts_upb(), &quick_cfg());
        assert!(verdict.certified);
        assert!((verdict.margin - (1.0 - EES_MAX_OVERLAP)).abs() < 1e-6);
        assert_eq!(verdict.method, Method::Seesaw);
    }

    #[test]
    fn extendible_sets_are_detected() {
        let pair = BasisSet::new(
            vec![PureState3Q::basis_ket(0), PureState3Q::basis_ket(3)],
            BasisKind::Product,
        )
        .unwrap();
        let verdict = upb_extendibility(&pair, &quick_cfg());
        assert!(!verdict.certified);
        assert!(verdict.margin < 1e-9, "margin {}", verdict.margin);

        // the search exhibits a concrete product witness, e.g. |111>
        let complement = Projector::span(pair.states()).unwrap().complement();
        let result = seesaw_max_overlap(&complement, &quick_cfg());
        assert!(result.best_value > 1.0 - 1e-9);
        assert!(crate::tangles::is_fully_product(
            &result.best_product.expand(),
            1e-9
        ));
    }

    #[test]
    fn ees_is_product_free_for_both_families() {
        let canonical = ees_product_free(&eeb(), &quick_cfg());
        assert!(canonical.certified);

        let dual = ees_product_free(dual_cbupb().entangled_half(), &quick_cfg());
        assert!(dual.certified);
        assert!((canonical.margin - dual.margin).abs() < 1e-6);
    }

    #[test]
    fn dual_product_half_is_also_unextendible() {
        let verdict = upb_extendibility(dual_cbupb().product_half(), &quick_cfg());
        assert!(verdict.certified);
        assert!((verdict.margin - (1.0 - EES_MAX_OVERLAP)).abs() < 1e-6);
    }

    #[test]
    fn spans_containing_a_product_state_are_not_product_free() {
        let set = BasisSet::new(
            vec![ghz(), PureState3Q::basis_ket(1)],
            BasisKind::Mixed,
        )
        .unwrap();
        let verdict = ees_product_free(&set, &quick_cfg());
        assert!(!verdict.certified);
        assert!(verdict.margin < 1e-9);
    }

    #[test]
    fn seesaw_is_deterministic_per_seed() {
        let p = Projector::span(eeb().states()).unwrap();
        let a = seesaw_max_overlap(&p, &quick_cfg());
        let b = seesaw_max_overlap(&p, &quick_cfg());
        assert_eq!(a.best_value.to_bits(), b.best_value.to_bits());
        assert_eq!(a.iterations, b.iterations);
    }
}
