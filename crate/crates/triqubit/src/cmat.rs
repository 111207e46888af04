//! Small dense complex matrices and a cyclic Jacobi eigensolver.
//!
//! Everything in this crate lives in dimension at most 8, so a plain
//! row-major `Vec` and an O(n^3)-per-sweep Jacobi iteration are both simple
//! and far more accurate than required: the rotations drive the off-diagonal
//! norm to machine precision, well inside the 1e-10 eigenvalue contract.

use num_complex::Complex64;

pub(crate) const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major complex matrix of side `n`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct CMat {
    pub n: usize,
    pub a: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat {
            n,
            a: vec![C_ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n);
        for r in 0..n {
            m.set(r, r, C_ONE);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.a[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.a[r * self.n + c] = v;
    }

    /// v v^dagger, accumulated into self with real weight w.
    pub fn add_outer(&mut self, v: &[Complex64], w: f64) {
        debug_assert_eq!(v.len(), self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                self.a[r * self.n + c] += w * v[r] * v[c].conj();
            }
        }
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = CMat::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let x = self.get(r, k);
                if x == C_ZERO {
                    continue;
                }
                for c in 0..n {
                    out.a[r * n + c] += x * other.get(k, c);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMat {
        let n = self.n;
        let mut out = CMat::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, self.get(c, r).conj());
            }
        }
        out
    }

    pub fn conj(&self) -> CMat {
        CMat {
            n: self.n,
            a: self.a.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, f: f64) -> CMat {
        CMat {
            n: self.n,
            a: self.a.iter().map(|z| z * f).collect(),
        }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        debug_assert_eq!(self.n, other.n);
        CMat {
            n: self.n,
            a: self
                .a
                .iter()
                .zip(&other.a)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|r| self.get(r, r)).sum()
    }

    /// max_{r,c} |a[r][c] - conj(a[c][r])|
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.n {
            for c in 0..self.n {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        debug_assert_eq!(self.n, other.n);
        self.a
            .iter()
            .zip(&other.a)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in descending
/// order and a unitary whose columns are the matching eigenvectors.
pub(crate) struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

/// Cyclic Jacobi for Hermitian matrices.
///
/// Each rotation dephases the pivot entry and applies the classic symmetric
/// Schur rotation, so the iteration is exactly the real algorithm acting on
/// the dephased 2x2 blocks. Convergence is quadratic; eight or so sweeps
/// reach machine precision at these sizes.
pub(crate) fn eigh(m: &CMat) -> Eigh {
    let n = m.n;
    let mut a = m.clone();
    let mut v = CMat::identity(n);
    let scale = a.frobenius().max(f64::MIN_POSITIVE);
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a.get(p, q).norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        a.get(y, y)
            .re
            .partial_cmp(&a.get(x, x).re)
            .expect("eigenvalues are finite")
    });
    let values = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vectors = CMat::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, dst, v.get(r, src));
        }
    }
    Eigh { values, vectors }
}

/// Eigenvalues only, descending.
pub(crate) fn eigenvalues(m: &CMat) -> Vec<f64> {
    eigh(m).values
}

fn rotate(a: &mut CMat, v: &mut CMat, p: usize, q: usize) {
    let apq = a.get(p, q);
    let habs = apq.norm();
    if habs == 0.0 {
        return;
    }
    let w = apq / habs; // unit phase of the pivot
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (app - aqq) / (2.0 * habs);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let wc = w.conj();

    let n = a.n;
    // A <- A G with G[p][p] = c, G[p][q] = -s, G[q][p] = s conj(w), G[q][q] = c conj(w)
    for r in 0..n {
        let xp = a.get(r, p);
        let xq = a.get(r, q);
        a.set(r, p, c * xp + s * wc * xq);
        a.set(r, q, -s * xp + c * wc * xq);
    }
    // A <- G^dagger A
    for r in 0..n {
        let xp = a.get(p, r);
        let xq = a.get(q, r);
        a.set(p, r, c * xp + s * w * xq);
        a.set(q, r, -s * xp + c * w * xq);
    }
    // V <- V G
    for r in 0..n {
        let xp = v.get(r, p);
        let xq = v.get(r, q);
        v.set(r, p, c * xp + s * wc * xq);
        v.set(r, q, -s * xp + c * wc * xq);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(rows: &[&[Complex64]]) -> CMat {
        let n = rows.len();
        let mut m = CMat::zeros(n);
        for (r, row) in rows.iter().enumerate() {
            for (c, &z) in row.iter().enumerate() {
                m.set(r, c, z);
            }
        }
        m
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn diagonal_matrix_is_its_own_spectrum() {
        let m = from_rows(&[&[re(3.0), re(0.0)], &[re(0.0), re(1.0)]]);
        assert_eq!(eigenvalues(&m), vec![3.0, 1.0]);
    }

    #[test]
    fn all_ones_2x2() {
        let m = from_rows(&[&[re(1.0), re(1.0)], &[re(1.0), re(1.0)]]);
        let vals = eigenvalues(&m);
        assert!((vals[0] - 2.0).abs() < 1e-14);
        assert!(vals[1].abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian_2x2() {
        // [[2, i], [-i, 2]] has eigenvalues 3 and 1
        let m = from_rows(&[
            &[re(2.0), Complex64::new(0.0, 1.0)],
            &[Complex64::new(0.0, -1.0), re(2.0)],
        ]);
        let vals = eigenvalues(&m);
        assert!((vals[0] - 3.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn decomposition_reconstructs_matrix() {
        // pseudo-random Hermitian 8x8 from a fixed integer pattern
        let n = 8;
        let mut m = CMat::zeros(n);
        let mut x = 1u64;
        for r in 0..n {
            for c in r..n {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let u = ((x >> 33) as f64) / (1u64 << 31) as f64 - 1.0;
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let w = ((x >> 33) as f64) / (1u64 << 31) as f64 - 1.0;
                if r == c {
                    m.set(r, c, re(u));
                } else {
                    m.set(r, c, Complex64::new(u, w));
                    m.set(c, r, Complex64::new(u, -w));
                }
            }
        }
        let d = eigh(&m);
        // unitarity of the eigenvector matrix
        let vtv = d.vectors.adjoint().mul(&d.vectors);
        assert!(vtv.max_abs_diff(&CMat::identity(n)) < 1e-13);
        // reconstruction V Lambda V^dagger
        let mut lam = CMat::zeros(n);
        for i in 0..n {
            lam.set(i, i, re(d.values[i]));
        }
        let rec = d.vectors.mul(&lam).mul(&d.vectors.adjoint());
        assert!(rec.max_abs_diff(&m) < 1e-12);
        // trace identity
        let tr: f64 = d.values.iter().sum();
        assert!((tr - m.trace().re).abs() < 1e-12);
        // descending order
        for i in 1..n {
            assert!(d.values[i - 1] >= d.values[i]);
        }
    }

    #[test]
    fn scaled_identity_has_flat_spectrum() {
        let m = CMat::identity(8).scale(1.0 / 8.0);
        for v in eigenvalues(&m) {
            assert!((v - 0.125).abs() < 1e-15);
        }
    }
}
