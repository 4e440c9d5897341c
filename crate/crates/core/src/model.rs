//! Coupling bookkeeping and lattice construction.
//!
//! Each bond pair `(p_k, p_k')` enters the spectrum only through the reduced
//! combination `(1 - p_k)(1 + p_k') = 1 + value_k`, so spectra live on the
//! `J`-dimensional reduced space. The canonical embedding gauge puts all
//! primed parameters to zero, which picks one representative per
//! equivalence class.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::rational::{rational_to_f64, BigRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("expected {expected} values for J={j}, got {got}")]
    WrongLength { j: usize, expected: usize, got: usize },
    #[error("J must be at least 1")]
    ZeroJ,
    #[error("singular raw pair {index}: p = 1 or p' = -1 collapses the reduction gauge")]
    SingularRawPair { index: usize },
    #[error("truncation half-width N={n} must exceed J={j}")]
    TruncationTooSmall { n: usize, j: usize },
}

/// Raw coupling pairs `(p_k, p_k')`, innermost bond first:
/// `(a, a'), (b, b'), …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawParams {
    pairs: Vec<(BigRational, BigRational)>,
}

impl RawParams {
    pub fn new(pairs: Vec<(BigRational, BigRational)>) -> Result<RawParams, ModelError> {
        if pairs.is_empty() {
            return Err(ModelError::ZeroJ);
        }
        Ok(RawParams { pairs })
    }

    pub fn j(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(BigRational, BigRational)] {
        &self.pairs
    }

    /// Indices of pairs sitting on the singular lines `p = 1` or `p' = -1`,
    /// where the reduced coupling degenerates to `-1` and the embedding
    /// gauge cannot be inverted.
    pub fn singular_pairs(&self) -> Vec<usize> {
        self.pairs
            .iter()
            .enumerate()
            .filter(|(_, (p, pp))| (BigRational::one() - p).is_zero() || (BigRational::one() + pp).is_zero())
            .map(|(k, _)| k)
            .collect()
    }

    /// Fails with a distinct error when any pair is singular; used by
    /// reduction-based pipelines. Direct truncated-matrix work accepts
    /// singular pairs.
    pub fn check_nonsingular(&self) -> Result<(), ModelError> {
        match self.singular_pairs().first() {
            Some(&index) => Err(ModelError::SingularRawPair { index }),
            None => Ok(()),
        }
    }

    /// Coupling pair `(p, p')` carried by bond `(n, n+1)` of the doubly
    /// infinite operator; `(0, 0)` outside the interaction region.
    pub fn bond_values(&self, n: i64) -> (BigRational, BigRational) {
        match bond_pair(self.j(), n) {
            Some(k) => self.pairs[k].clone(),
            None => (BigRational::zero(), BigRational::zero()),
        }
    }
}

/// Reduced couplings `(u, v, w, y, z, m, n)` truncated to length `J`,
/// innermost bond first; `u` is the distinguished innermost coupling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedParams {
    values: Vec<BigRational>,
}

impl ReducedParams {
    pub fn new(values: Vec<BigRational>) -> Result<ReducedParams, ModelError> {
        if values.is_empty() {
            return Err(ModelError::ZeroJ);
        }
        Ok(ReducedParams { values })
    }

    pub fn from_ints(values: &[i64]) -> ReducedParams {
        ReducedParams {
            values: values
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        }
    }

    pub fn j(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, k: usize) -> &BigRational {
        &self.values[k]
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(rational_to_f64).collect()
    }
}

/// `value_k = (1 - p_k)(1 + p_k') - 1`. Total: no raw pair is rejected.
pub fn reduce(raw: &RawParams) -> ReducedParams {
    ReducedParams {
        values: raw
            .pairs
            .iter()
            .map(|(p, pp)| (BigRational::one() - p) * (BigRational::one() + pp) - BigRational::one())
            .collect(),
    }
}

/// Canonical embedding gauge: all primed parameters zero, `p_k = -value_k`.
/// Exact section of [`reduce`]: `reduce(embed(r)) == r`.
pub fn embed(reduced: &ReducedParams) -> RawParams {
    RawParams {
        pairs: reduced
            .values
            .iter()
            .map(|v| (-v.clone(), BigRational::zero()))
            .collect(),
    }
}

/// Hard-wall truncation of the doubly infinite operator to sites
/// `n = -N .. N-1` (dimension `2N`). The diagonal is the constant `2`;
/// bond `(n, n+1)` carries `-1 + p_k` above and `-1 - p_k'` below, with the
/// pair index `k = -n` for `n ≤ -1` and `k = n + 2` for `n ≥ 0`, symmetric
/// about the central bond `(-1, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedHamiltonian {
    half_width: usize,
    j: usize,
    super_diag: Vec<BigRational>,
    sub_diag: Vec<BigRational>,
}

impl TruncatedHamiltonian {
    pub fn dim(&self) -> usize {
        2 * self.half_width
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn super_diag(&self) -> &[BigRational] {
        &self.super_diag
    }

    pub fn sub_diag(&self) -> &[BigRational] {
        &self.sub_diag
    }

    pub fn diag_value(&self) -> BigRational {
        BigRational::from_integer(2.into())
    }

    /// Test hook: perturb one entry to break the antidiagonal symmetry.
    pub fn with_perturbed_super(mut self, index: usize, delta: BigRational) -> Self {
        self.super_diag[index] += delta;
        self
    }
}

/// Pair index for bond `(n, n+1)` in the doubly infinite operator, or
/// `None` for a free bond (index beyond `J`).
fn bond_pair(j: usize, n: i64) -> Option<usize> {
    let k = if n <= -1 { (-n) as usize } else { n as usize + 2 };
    if k <= j {
        Some(k - 1)
    } else {
        None
    }
}

pub fn build_truncated(raw: &RawParams, half_width: usize) -> Result<TruncatedHamiltonian, ModelError> {
    let j = raw.j();
    if half_width <= j {
        return Err(ModelError::TruncationTooSmall { n: half_width, j });
    }
    let n = half_width as i64;
    let mut super_diag = Vec::with_capacity(2 * half_width - 1);
    let mut sub_diag = Vec::with_capacity(2 * half_width - 1);
    for site in -n..(n - 1) {
        match bond_pair(j, site) {
            Some(k) => {
                let (p, pp) = &raw.pairs[k];
                super_diag.push(-BigRational::one() + p);
                sub_diag.push(-BigRational::one() - pp);
            }
            None => {
                super_diag.push(-BigRational::one());
                sub_diag.push(-BigRational::one());
            }
        }
    }
    Ok(TruncatedHamiltonian {
        half_width,
        j,
        super_diag,
        sub_diag,
    })
}

/// PT symmetry as a structural property of the real matrix: symmetry under
/// reflection about the antidiagonal, `H[i][j] = H[σ(j)][σ(i)]` with
/// `σ(i) = dim - 1 - i`.
pub fn pt_check(h: &TruncatedHamiltonian) -> bool {
    let m = h.super_diag.len();
    (0..m).all(|i| {
        h.super_diag[i] == h.super_diag[m - 1 - i] && h.sub_diag[i] == h.sub_diag[m - 1 - i]
    })
}

/// `E = 2 - (√t + 1/√t)`; strictly decreasing on `t ∈ (1, ∞)`, negative
/// there, so the ground state is the largest root.
pub fn energy_of_t(t: f64) -> f64 {
    let x = t.sqrt();
    2.0 - (x + 1.0 / x)
}

/// `φ = ½ ln t`, the tail decay rate.
pub fn phi_of_t(t: f64) -> f64 {
    0.5 * t.ln()
}

/// Inverse of [`energy_of_t`] on the bound-state branch `t > 1` (`E < 0`).
pub fn t_of_energy(energy: f64) -> f64 {
    let c = 2.0 - energy; // x + 1/x
    let x = 0.5 * (c + (c * c - 4.0).sqrt());
    x * x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::parse_rational;
    use num_traits::Signed;

    fn rat(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        // free chain
        let raw = RawParams::new(vec![(rat("0"), rat("0"))]).unwrap();
        assert_eq!(reduce(&raw).values(), &[rat("0")]);
        // (a, a') = (-3, 0) -> u = 3
        let raw = RawParams::new(vec![(rat("-3"), rat("0"))]).unwrap();
        assert_eq!(reduce(&raw).values(), &[rat("3")]);
        // a = a' gives u = -a² ≤ 0: no J=1 bound state on that line
        for a in ["-2", "1/2", "3"] {
            let raw = RawParams::new(vec![(rat(a), rat(a))]).unwrap();
            let u = reduce(&raw).values()[0].clone();
            assert_eq!(u, -(rat(a) * rat(a)));
            assert!(!u.is_positive());
        }
    }

    #[test]
    fn embed_is_a_section_of_reduce() {
        let reduced = ReducedParams::new(vec![rat("17"), rat("6"), rat("5")]).unwrap();
        let raw = embed(&reduced);
        assert_eq!(
            raw.pairs(),
            &[
                (rat("-17"), rat("0")),
                (rat("-6"), rat("0")),
                (rat("-5"), rat("0"))
            ]
        );
        assert_eq!(reduce(&raw), reduced);
        // u = 3 -> (-3, 0)
        let one = ReducedParams::new(vec![rat("3")]).unwrap();
        assert_eq!(embed(&one).pairs(), &[(rat("-3"), rat("0"))]);
        // all zeros -> free chain
        let zero = ReducedParams::new(vec![rat("0"), rat("0")]).unwrap();
        assert!(embed(&zero).pairs().iter().all(|(p, pp)| p.is_zero() && pp.is_zero()));
    }

    #[test]
    fn reduce_embed_roundtrip_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let j = rng.gen_range(1..=7);
            let values: Vec<BigRational> = (0..j)
                .map(|_| BigRational::new(rng.gen_range(-50i64..=50).into(), rng.gen_range(1i64..=9).into()))
                .collect();
            let reduced = ReducedParams::new(values).unwrap();
            assert_eq!(reduce(&embed(&reduced)), reduced);
        }
    }

    #[test]
    fn truncated_layout_j1() {
        // J=1, N=2: central bond carries (a, a'), outer bonds are free
        let raw = RawParams::new(vec![(rat("1/2"), rat("1/3"))]).unwrap();
        let h = build_truncated(&raw, 2).unwrap();
        assert_eq!(h.dim(), 4);
        assert_eq!(
            h.super_diag(),
            &[rat("-1"), rat("-1") + rat("1/2"), rat("-1")]
        );
        assert_eq!(
            h.sub_diag(),
            &[rat("-1"), rat("-1") - rat("1/3"), rat("-1")]
        );
        assert!(pt_check(&h));
    }

    #[test]
    fn truncated_layout_j2() {
        // J=2, N=3: bonds (-2,-1) and (0,1) both carry the outer pair
        let raw = RawParams::new(vec![(rat("1/7"), rat("0")), (rat("2"), rat("3"))]).unwrap();
        let h = build_truncated(&raw, 3).unwrap();
        // bonds: (-3,-2) free, (-2,-1)=b, (-1,0)=a, (0,1)=b, (1,2) free
        assert_eq!(h.super_diag()[1], rat("-1") + rat("2"));
        assert_eq!(h.super_diag()[2], rat("-1") + rat("1/7"));
        assert_eq!(h.super_diag()[3], rat("-1") + rat("2"));
        assert_eq!(h.sub_diag()[1], rat("-1") - rat("3"));
        assert!(pt_check(&h));
        // too small a truncation is rejected
        assert!(matches!(
            build_truncated(&raw, 2),
            Err(ModelError::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn pt_check_detects_asymmetry() {
        let raw = RawParams::new(vec![(rat("1/2"), rat("1/3"))]).unwrap();
        let h = build_truncated(&raw, 3).unwrap();
        assert!(pt_check(&h));
        let broken = h.with_perturbed_super(0, rat("1/5"));
        assert!(!pt_check(&broken));
        // free Laplacean is PT-symmetric
        let free = RawParams::new(vec![(rat("0"), rat("0"))]).unwrap();
        assert!(pt_check(&build_truncated(&free, 4).unwrap()));
    }

    #[test]
    fn singular_lines_are_flagged() {
        let raw = RawParams::new(vec![(rat("1"), rat("0"))]).unwrap();
        assert_eq!(raw.singular_pairs(), vec![0]);
        assert!(matches!(
            raw.check_nonsingular(),
            Err(ModelError::SingularRawPair { index: 0 })
        ));
        let raw = RawParams::new(vec![(rat("0"), rat("0")), (rat("0"), rat("-1"))]).unwrap();
        assert_eq!(raw.singular_pairs(), vec![1]);
        // reduction stays total there
        assert_eq!(reduce(&raw).values()[1], rat("-1"));
    }

    #[test]
    fn energy_map_roundtrip_and_monotonicity() {
        let mut prev = f64::INFINITY;
        for k in 1..200 {
            let t = 1.0 + k as f64 * 0.25;
            let e = energy_of_t(t);
            assert!(e < 0.0);
            assert!(e < prev, "energy must decrease with t");
            prev = e;
            let back = t_of_energy(e);
            assert!((back - t).abs() <= 1e-14 * t, "roundtrip failed at t={t}");
        }
        // u = 3: t = 4 -> E = -1/2
        assert!((energy_of_t(4.0) + 0.5).abs() < 1e-15);
    }
}
