//! Core state representations for three qubits.
//!
//! Amplitudes are stored flat in `r`-order, where the basis ket |ijk> sits at
//! index `r = 4i + 2j + k`. Pure states are unit vectors of eight amplitudes;
//! density matrices are 8x8 Hermitian, PSD, trace-one grids. Partial traces
//! and partial transposes act on one party at a time, with parties named
//! `A`, `B`, `C` from the most significant bit down.

use num_complex::Complex64;

use crate::cmat::{self, CMat, C_ZERO};
use crate::{Error, Result, HERM_TOL, NORM_TOL};

/// A single complex amplitude.
pub type Amplitude = Complex64;

/// One party of the tripartite system, ordered by bit significance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::C];

    /// Bit position of this party inside the index r = 4i + 2j + k.
    #[inline]
    pub(crate) fn bit(self) -> usize {
        match self {
            Party::A => 2,
            Party::B => 1,
            Party::C => 0,
        }
    }
}

impl std::fmt::Display for Party {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Party::A => write!(f, "A"),
            Party::B => write!(f, "B"),
            Party::C => write!(f, "C"),
        }
    }
}

/// An unordered pair of parties, used by two-party marginals and tangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartyPair {
    AB,
    BC,
    AC,
}

impl PartyPair {
    pub const ALL: [PartyPair; 3] = [PartyPair::AB, PartyPair::BC, PartyPair::AC];

    /// The party not contained in the pair.
    pub fn complement(self) -> Party {
        match self {
            PartyPair::AB => Party::C,
            PartyPair::BC => Party::A,
            PartyPair::AC => Party::B,
        }
    }
}

impl std::fmt::Display for PartyPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PartyPair::AB => write!(f, "AB"),
            PartyPair::BC => write!(f, "BC"),
            PartyPair::AC => write!(f, "AC"),
        }
    }
}

/// Flat amplitude index of the basis ket |ijk>: r = 4i + 2j + k.
#[inline]
pub fn amp_index(i: bool, j: bool, k: bool) -> usize {
    ((i as usize) << 2) | ((j as usize) << 1) | (k as usize)
}

fn norm_sqr(amps: &[Complex64]) -> f64 {
    amps.iter().map(|z| z.norm_sqr()).sum()
}

/// A normalized pure state of three qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState3Q {
    amps: [Complex64; 8],
}

impl PureState3Q {
    /// Builds a state from amplitudes already normalized to unit norm.
    ///
    /// Inputs whose squared norm deviates from 1 by more than [`NORM_TOL`]
    /// are rejected rather than silently rescaled; use [`PureState3Q::normalized`]
    /// to normalize explicitly. Accepted inputs are renormalized exactly, so
    /// the stored amplitudes always satisfy the unit-norm invariant.
    pub fn new(amps: [Complex64; 8]) -> Result<Self> {
        let n2 = norm_sqr(&amps);
        let residual = (n2 - 1.0).abs();
        if !(residual <= NORM_TOL) {
            return Err(Error::NotNormalized {
                residual,
                tol: NORM_TOL,
            });
        }
        Ok(Self::rescaled(amps, n2.sqrt()))
    }

    /// Normalizes an arbitrary nonzero amplitude vector.
    pub fn normalized(amps: [Complex64; 8]) -> Result<Self> {
        let norm = norm_sqr(&amps).sqrt();
        if !(norm > 1e-12) {
            return Err(Error::ZeroVector { norm });
        }
        Ok(Self::rescaled(amps, norm))
    }

    fn rescaled(mut amps: [Complex64; 8], norm: f64) -> Self {
        for z in amps.iter_mut() {
            *z /= norm;
        }
        PureState3Q { amps }
    }

    pub(crate) fn renormalized_unchecked(amps: [Complex64; 8]) -> Self {
        let n2 = norm_sqr(&amps);
        debug_assert!((n2 - 1.0).abs() < 1e-6, "internal state far from unit norm");
        Self::rescaled(amps, n2.sqrt())
    }

    #[inline]
    pub fn amp(&self, r: usize) -> Complex64 {
        self.amps[r]
    }

    pub fn amps(&self) -> &[Complex64; 8] {
        &self.amps
    }

    /// <self|other>, conjugate-linear in `self`.
    pub fn inner(&self, other: &PureState3Q) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| x.conj() * y)
            .sum()
    }

    /// Basis ket |r> = |ijk>.
    pub fn basis_ket(r: usize) -> Self {
        let mut amps = [C_ZERO; 8];
        amps[r] = Complex64::new(1.0, 0.0);
        PureState3Q { amps }
    }
}

/// A normalized single-qubit state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Qubit2Vec {
    amps: [Complex64; 2],
}

impl Qubit2Vec {
    pub fn new(amps: [Complex64; 2]) -> Result<Self> {
        let n2 = norm_sqr(&amps);
        let residual = (n2 - 1.0).abs();
        if !(residual <= NORM_TOL) {
            return Err(Error::NotNormalized {
                residual,
                tol: NORM_TOL,
            });
        }
        Ok(Self::rescaled(amps, n2.sqrt()))
    }

    pub fn normalized(amps: [Complex64; 2]) -> Result<Self> {
        let norm = norm_sqr(&amps).sqrt();
        if !(norm > 1e-12) {
            return Err(Error::ZeroVector { norm });
        }
        Ok(Self::rescaled(amps, norm))
    }

    fn rescaled(mut amps: [Complex64; 2], norm: f64) -> Self {
        for z in amps.iter_mut() {
            *z /= norm;
        }
        Qubit2Vec { amps }
    }

    #[inline]
    pub fn amp(&self, b: usize) -> Complex64 {
        self.amps[b]
    }

    pub fn amps(&self) -> &[Complex64; 2] {
        &self.amps
    }

    /// |0> or |1>.
    pub fn basis(b: usize) -> Self {
        let mut amps = [C_ZERO; 2];
        amps[b] = Complex64::new(1.0, 0.0);
        Qubit2Vec { amps }
    }

    /// (|0> + |1>)/sqrt(2) for `plus`, (|0> - |1>)/sqrt(2) otherwise.
    pub fn plus_minus(plus: bool) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Qubit2Vec {
            amps: [
                Complex64::new(h, 0.0),
                Complex64::new(if plus { h } else { -h }, 0.0),
            ],
        }
    }
}

/// A fully product state |a> (x) |b> (x) |c>.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductState3Q {
    pub a: Qubit2Vec,
    pub b: Qubit2Vec,
    pub c: Qubit2Vec,
}

impl ProductState3Q {
    pub fn new(a: Qubit2Vec, b: Qubit2Vec, c: Qubit2Vec) -> Self {
        ProductState3Q { a, b, c }
    }

    /// Expands the tensor product into flat r-order amplitudes.
    pub fn expand(&self) -> PureState3Q {
        let mut amps = [C_ZERO; 8];
        for r in 0..8 {
            let (i, j, k) = (r >> 2 & 1, r >> 1 & 1, r & 1);
            amps[r] = self.a.amp(i) * self.b.amp(j) * self.c.amp(k);
        }
        PureState3Q::renormalized_unchecked(amps)
    }
}

/// An n x n Hermitian matrix, n in {2, 4, 8}.
///
/// This type only guarantees Hermiticity; it carries partial-transpose
/// results and projectors, which need not be positive.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    m: CMat,
}

impl HermitianMatrix {
    /// Validates Hermiticity at [`HERM_TOL`] and symmetrizes exactly.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        assert!(
            matches!(dim, 2 | 4 | 8) && entries.len() == dim * dim,
            "HermitianMatrix dimension must be 2, 4 or 8 with dim*dim entries"
        );
        Self::from_cmat(CMat { n: dim, a: entries })
    }

    pub(crate) fn from_cmat(m: CMat) -> Result<Self> {
        let residual = m.hermiticity_residual();
        if !(residual <= HERM_TOL) {
            return Err(Error::NotHermitian {
                residual,
                tol: HERM_TOL,
            });
        }
        Ok(HermitianMatrix { m })
    }

    pub fn dim(&self) -> usize {
        self.m.n
    }

    #[inline]
    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.m.get(r, c)
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    /// Real eigenvalues in descending order.
    ///
    /// Accuracy is far inside 1e-10 relative to the spectral norm at these
    /// sizes, and the values sum to the trace to machine precision.
    pub fn eigenvalues(&self) -> Vec<f64> {
        cmat::eigenvalues(&self.m)
    }

    /// Partial transpose of an 8x8 Hermitian grid. Together with
    /// [`DensityMatrix3Q::partial_transpose`] this makes the map an
    /// involution on its own output.
    pub fn partial_transpose(&self, p: Party) -> HermitianMatrix {
        assert_eq!(self.m.n, 8, "partial transpose acts on 8x8 matrices");
        HermitianMatrix::from_cmat(transpose_party(&self.m, p))
            .expect("partial transpose preserves Hermiticity")
    }

    pub fn max_abs_diff(&self, other: &HermitianMatrix) -> f64 {
        self.m.max_abs_diff(&other.m)
    }

    pub(crate) fn cmat(&self) -> &CMat {
        &self.m
    }
}

/// An 8x8 density matrix: Hermitian, PSD, and trace one.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix3Q {
    m: CMat,
}

impl DensityMatrix3Q {
    /// |psi><psi|.
    pub fn pure(psi: &PureState3Q) -> Self {
        let mut m = CMat::zeros(8);
        m.add_outer(psi.amps(), 1.0);
        DensityMatrix3Q { m }
    }

    /// The weighted mixture sum_j w_j |psi_j><psi_j|.
    ///
    /// Weights must be nonnegative and sum to one within 1e-12, with one
    /// weight per state.
    pub fn mix(states: &[PureState3Q], weights: &[f64]) -> Result<Self> {
        if states.is_empty() || states.len() != weights.len() {
            return Err(Error::BadWeights {
                reason: format!(
                    "{} states but {} weights; need equal, nonzero counts",
                    states.len(),
                    weights.len()
                ),
            });
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0)) {
            return Err(Error::BadWeights {
                reason: format!("negative or non-finite weight {w}"),
            });
        }
        let total: f64 = weights.iter().sum();
        if !((total - 1.0).abs() <= 1e-12) {
            return Err(Error::BadWeights {
                reason: format!("weights sum to {total}, not 1"),
            });
        }
        let mut m = CMat::zeros(8);
        for (psi, &w) in states.iter().zip(weights) {
            m.add_outer(psi.amps(), w);
        }
        Ok(DensityMatrix3Q { m })
    }

    /// Validates an explicit 8x8 grid: Hermitian within 1e-10, trace one
    /// within 1e-10, and minimum eigenvalue at least -1e-10.
    pub fn from_entries(entries: Vec<Complex64>) -> Result<Self> {
        assert_eq!(entries.len(), 64, "density matrix needs 64 entries");
        let m = CMat { n: 8, a: entries };
        let herm = m.hermiticity_residual();
        if !(herm <= HERM_TOL) {
            return Err(Error::NotDensityMatrix {
                reason: format!("Hermiticity residual {herm:.3e}"),
            });
        }
        let tr = m.trace();
        if !((tr.re - 1.0).abs() <= HERM_TOL && tr.im.abs() <= HERM_TOL) {
            return Err(Error::NotDensityMatrix {
                reason: format!("trace {tr} is not 1"),
            });
        }
        let min = cmat::eigenvalues(&m)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if !(min >= -HERM_TOL) {
            return Err(Error::NotDensityMatrix {
                reason: format!("minimum eigenvalue {min:.3e}"),
            });
        }
        Ok(DensityMatrix3Q { m })
    }

    #[inline]
    pub fn entry(&self, r: usize, c: usize) -> Complex64 {
        self.m.get(r, c)
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    /// Real eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        cmat::eigenvalues(&self.m)
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix3Q) -> f64 {
        self.m.max_abs_diff(&other.m)
    }

    /// Single-party marginal: the partial trace over the other two parties.
    pub fn reduce_single(&self, p: Party) -> HermitianMatrix {
        let bit = p.bit();
        let mut out = CMat::zeros(2);
        for x in 0..2usize {
            for y in 0..2usize {
                let mut acc = C_ZERO;
                // sum over the two traced-out bits
                for m in 0..4usize {
                    let r = insert_bit(m, bit, x);
                    let s = insert_bit(m, bit, y);
                    acc += self.m.get(r, s);
                }
                out.set(x, y, acc);
            }
        }
        HermitianMatrix::from_cmat(out).expect("partial trace preserves Hermiticity")
    }

    /// Two-party marginal. Rows and columns follow the lexicographic bit
    /// order of the retained pair (for AC that is (i, k)).
    pub fn reduce_pair(&self, pp: PartyPair) -> HermitianMatrix {
        let traced = pp.complement().bit();
        let (hi, lo) = match pp {
            PartyPair::AB => (Party::A.bit(), Party::B.bit()),
            PartyPair::BC => (Party::B.bit(), Party::C.bit()),
            PartyPair::AC => (Party::A.bit(), Party::C.bit()),
        };
        let mut out = CMat::zeros(4);
        for x in 0..4usize {
            for y in 0..4usize {
                let mut acc = C_ZERO;
                for t in 0..2usize {
                    let r = (x >> 1 & 1) << hi | (x & 1) << lo | t << traced;
                    let s = (y >> 1 & 1) << hi | (y & 1) << lo | t << traced;
                    acc += self.m.get(r, s);
                }
                out.set(x, y, acc);
            }
        }
        HermitianMatrix::from_cmat(out).expect("partial trace preserves Hermiticity")
    }

    /// Partial transpose on one party: an index swap on that party's bit
    /// only. The result is Hermitian and trace-preserving but may fail to
    /// be positive, so it comes back as a plain [`HermitianMatrix`].
    pub fn partial_transpose(&self, p: Party) -> HermitianMatrix {
        HermitianMatrix::from_cmat(transpose_party(&self.m, p))
            .expect("partial transpose preserves Hermiticity")
    }

}

#[inline]
fn insert_bit(rest: usize, pos: usize, value: usize) -> usize {
    // rest holds the two untouched bits packed densely; spread them around pos
    let low_mask = (1 << pos) - 1;
    let low = rest & low_mask;
    let high = (rest & !low_mask) << 1;
    high | value << pos | low
}

fn transpose_party(m: &CMat, p: Party) -> CMat {
    let bit = p.bit();
    let mut out = CMat::zeros(8);
    for r in 0..8usize {
        for s in 0..8usize {
            let rb = r >> bit & 1;
            let sb = s >> bit & 1;
            let rr = (r & !(1 << bit)) | sb << bit;
            let ss = (s & !(1 << bit)) | rb << bit;
            out.set(r, s, m.get(rr, ss));
        }
    }
    out
}
