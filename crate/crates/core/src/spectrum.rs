//! Bound-state solving, wavefunction reconstruction, parameter-domain
//! scans, and the continuum-edge probe.
//!
//! A bound state is a root `t > 1` of the secular polynomial; roots in
//! `(0, 1]` correspond to non-normalizable solutions and are counted only
//! as diagnostics, never returned as states. Root counting and isolation
//! are exact; floating point enters at refinement.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::poly::{squarefree_decomposition, Poly};
use crate::algebra::rational::{rational_to_f64, BigRational};
use crate::algebra::roots::{refine_root, sturm_isolate};
use crate::algebra::AlgebraError;
use crate::model::{embed, energy_of_t, phi_of_t, reduce, ModelError, RawParams, ReducedParams};
use crate::secular::{matching_matrix, secular_poly, SecularError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("matching matrix nullspace has dimension > 1 (degenerate root)")]
    RankDeficiencyAmbiguous,
    #[error("no root above t = 1")]
    NoRootAboveOne,
    #[error("unknown parameter name {0:?} for this plane")]
    UnknownParameter(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Secular(#[from] SecularError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A bound state below the continuum: `t > 1`, `φ = ½ ln t > 0`,
/// `E = 2 - (√t + 1/√t) < 0`. Level 0 is the ground state (largest `t`).
/// `multiplicity > 1` marks a degenerate secular root (a domain boundary
/// point); the energy is still real there.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundState {
    pub t: f64,
    pub phi: f64,
    pub energy: f64,
    pub level: usize,
    pub multiplicity: usize,
}

/// Exact root bookkeeping for one parameter point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecularRootCounts {
    /// Distinct real roots with `t > 1`.
    pub physical: usize,
    /// Distinct real roots in `(0, 1]` (spurious, non-normalizable).
    pub spurious_unit: usize,
    /// Distinct real roots with `t ≤ 0`.
    pub nonpositive: usize,
    /// Conjugate pairs of complex roots (counted with multiplicity).
    pub complex_pairs: usize,
}

fn numeric_secular(reduced: &ReducedParams) -> Result<Poly, SpectrumError> {
    Ok(secular_poly(reduced, false)?.into_poly())
}

/// Exact per-cell census of the secular roots.
pub fn secular_root_counts(reduced: &ReducedParams) -> Result<SecularRootCounts, SpectrumError> {
    let p = numeric_secular(reduced)?;
    let one = BigRational::one();
    let zero = BigRational::zero();
    let mut counts = SecularRootCounts {
        physical: 0,
        spurious_unit: 0,
        nonpositive: 0,
        complex_pairs: 0,
    };
    let deg = p.degree().unwrap_or(0);
    let mut real_with_multiplicity = 0;
    for (factor, mult) in squarefree_decomposition(&p) {
        let above = sturm_isolate(&factor, Some(&one), None)?.len();
        let all = sturm_isolate(&factor, None, None)?.len();
        let nonpos = sturm_isolate(&factor, None, Some(&zero))?.len()
            + usize::from(factor.eval_rational(&zero)?.is_zero());
        counts.physical += above;
        counts.nonpositive += nonpos;
        counts.spurious_unit += all - above - nonpos;
        real_with_multiplicity += all * mult;
    }
    counts.complex_pairs = (deg - real_with_multiplicity) / 2;
    Ok(counts)
}

/// All bound states, refined to `rel_tol` and sorted by decreasing `t`
/// (increasing energy). An empty list means no bound state exists.
pub fn bound_states(
    reduced: &ReducedParams,
    rel_tol: f64,
) -> Result<Vec<BoundState>, SpectrumError> {
    let p = numeric_secular(reduced)?;
    let one = BigRational::one();
    let mut roots: Vec<(f64, usize)> = Vec::new();
    for (factor, mult) in squarefree_decomposition(&p) {
        for bracket in sturm_isolate(&factor, Some(&one), None)? {
            let t = refine_root(&factor, &bracket, rel_tol)?;
            roots.push((t, mult));
        }
    }
    roots.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite roots"));
    Ok(roots
        .into_iter()
        .enumerate()
        .map(|(level, (t, multiplicity))| BoundState {
            t,
            phi: phi_of_t(t),
            energy: energy_of_t(t),
            level,
            multiplicity,
        })
        .collect())
}

/// Wavefunction of one bound state: the nullvector of the matching matrix
/// at `x = √t`, with exponential tails attached outside the interaction
/// region. Normalized to max-abs component 1 with a positive maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct Wavefunction {
    pub lambda: f64,
    pub rho: f64,
    /// Sites `-J+1 … J-2`.
    pub interior: Vec<f64>,
    pub phi: f64,
    j: usize,
}

impl Wavefunction {
    pub fn j(&self) -> usize {
        self.j
    }

    /// Amplitude at any site: interior values inside, exact exponential
    /// tails outside (`λ e^{(n+J)φ}` to the left, `ρ e^{(J-1-n)φ}` to the
    /// right).
    pub fn value(&self, n: i64) -> f64 {
        let j = self.j as i64;
        if n <= -j {
            self.lambda * ((n + j) as f64 * self.phi).exp()
        } else if n >= j - 1 {
            self.rho * ((j - 1 - n) as f64 * self.phi).exp()
        } else {
            self.interior[(n + j - 1) as usize]
        }
    }
}

pub fn wavefunction(
    reduced: &ReducedParams,
    state: &BoundState,
) -> Result<Wavefunction, SpectrumError> {
    let j = reduced.j();
    let dim = 2 * j;
    let x = state.t.sqrt();
    let m = matching_matrix(reduced).to_dense_f64(x);
    let null = nullvector(m)?;
    // deterministic normalization: the largest-magnitude component is +1
    let (max_idx, max_abs) = null
        .iter()
        .enumerate()
        .map(|(i, v)| (i, v.abs()))
        .max_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
        .expect("nonempty vector");
    if max_abs == 0.0 {
        return Err(SpectrumError::RankDeficiencyAmbiguous);
    }
    let scale = 1.0 / null[max_idx];
    let v: Vec<f64> = null.iter().map(|c| c * scale).collect();
    Ok(Wavefunction {
        lambda: v[0],
        rho: v[dim - 1],
        interior: v[1..dim - 1].to_vec(),
        phi: state.phi,
        j,
    })
}

/// Nullvector of a (numerically) rank-deficient square matrix by Gaussian
/// elimination with full pivoting. A second near-zero pivot signals an
/// ambiguous nullspace.
fn nullvector(mut m: Vec<Vec<f64>>) -> Result<Vec<f64>, SpectrumError> {
    let n = m.len();
    let mut col_perm: Vec<usize> = (0..n).collect();
    let mut scale_ref: f64 = 0.0;
    for step in 0..n - 1 {
        // full pivot search in the trailing block
        let (mut pr, mut pc, mut best) = (step, step, -1.0);
        for r in step..n {
            for c in step..n {
                let a = m[r][c].abs();
                if a > best {
                    best = a;
                    pr = r;
                    pc = c;
                }
            }
        }
        if step == 0 {
            scale_ref = best.max(f64::MIN_POSITIVE);
        }
        if best <= scale_ref * 1e-12 {
            // nullspace dimension at least 2 at working precision
            return Err(SpectrumError::RankDeficiencyAmbiguous);
        }
        m.swap(step, pr);
        for row in m.iter_mut() {
            row.swap(step, pc);
        }
        col_perm.swap(step, pc);
        let pivot = m[step][step];
        for r in step + 1..n {
            let factor = m[r][step] / pivot;
            if factor == 0.0 {
                continue;
            }
            for c in step..n {
                m[r][c] -= factor * m[step][c];
            }
        }
    }
    // last variable is free: set 1, back-substitute
    let mut x = vec![0.0; n];
    x[n - 1] = 1.0;
    for r in (0..n - 1).rev() {
        let mut acc = 0.0;
        for c in r + 1..n {
            acc += m[r][c] * x[c];
        }
        x[r] = -acc / m[r][r];
    }
    let mut out = vec![0.0; n];
    for (pos, &orig) in col_perm.iter().enumerate() {
        out[orig] = x[pos];
    }
    Ok(out)
}

/// Largest residual of the infinite three-term recurrence over sites
/// `|n| ≤ window`, with the wavefunction extended by its exact tails.
pub fn recurrence_residual(
    reduced: &ReducedParams,
    state: &BoundState,
    psi: &Wavefunction,
    window: i64,
) -> f64 {
    let raw = embed(reduced);
    let bond = |n: i64| -> (f64, f64) {
        // (super, sub) entries of bond (n, n+1)
        let (p, pp) = raw.bond_values(n);
        (-1.0 + rational_to_f64(&p), -1.0 - rational_to_f64(&pp))
    };
    let mut max_res: f64 = 0.0;
    for n in -window..=window {
        let (sup, _) = bond(n);
        let (_, sub) = bond(n - 1);
        let h_psi = sub * psi.value(n - 1) + 2.0 * psi.value(n) + sup * psi.value(n + 1);
        let res = (h_psi - state.energy * psi.value(n)).abs();
        max_res = max_res.max(res);
    }
    max_res
}

/// Scan axis: `count` nodes at `start + i * step`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axis {
    pub start: BigRational,
    pub step: BigRational,
    pub count: usize,
}

impl Axis {
    pub fn new(start: BigRational, step: BigRational, count: usize) -> Axis {
        Axis { start, step, count }
    }

    pub fn value(&self, i: usize) -> BigRational {
        &self.start + &self.step * BigRational::from_integer(i.into())
    }

    pub fn value_f64(&self, i: usize) -> f64 {
        rational_to_f64(&self.value(i))
    }
}

/// Which parameter space the plane lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneSpace {
    /// Reduced couplings, names `u v w y z m n`.
    Reduced,
    /// Raw couplings, names `a ap b bp c cp d dp e ep f fp g gp`.
    Raw,
}

pub const REDUCED_NAMES: [&str; 7] = ["u", "v", "w", "y", "z", "m", "n"];
pub const RAW_NAMES: [&str; 14] = [
    "a", "ap", "b", "bp", "c", "cp", "d", "dp", "e", "ep", "f", "fp", "g", "gp",
];

fn param_slot(space: PlaneSpace, j: usize, name: &str) -> Result<usize, SpectrumError> {
    let names: &[&str] = match space {
        PlaneSpace::Reduced => &REDUCED_NAMES[..j],
        PlaneSpace::Raw => &RAW_NAMES[..2 * j],
    };
    names
        .iter()
        .position(|&n| n == name)
        .ok_or_else(|| SpectrumError::UnknownParameter(name.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellRecord {
    /// Distinct secular roots with `t > 1`.
    pub count: u32,
    /// Whether any secular roots form complex pairs at this cell.
    pub complex: bool,
}

/// Rectangular scan of a two-parameter plane. Cells are stored row-major
/// with the first axis fastest: `cells[i2 * axis1.count + i1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainGrid {
    pub plane: (String, String),
    pub space: PlaneSpace,
    pub axis1: Axis,
    pub axis2: Axis,
    pub cells: Vec<CellRecord>,
}

impl DomainGrid {
    pub fn cell(&self, i1: usize, i2: usize) -> CellRecord {
        self.cells[i2 * self.axis1.count + i1]
    }

    pub fn max_count(&self) -> u32 {
        self.cells.iter().map(|c| c.count).max().unwrap_or(0)
    }
}

/// Per-cell bound-state census over a plane, all other parameters held at
/// `base`. Raw planes reduce cell-by-cell (reduction is total, so singular
/// raw lines simply score zero states); cells evaluate in a worker pool
/// with deterministic, index-ordered output.
pub fn domain_scan(
    j: usize,
    space: PlaneSpace,
    plane: (&str, &str),
    axis1: Axis,
    axis2: Axis,
    base: &[BigRational],
) -> Result<DomainGrid, SpectrumError> {
    let slot1 = param_slot(space, j, plane.0)?;
    let slot2 = param_slot(space, j, plane.1)?;
    let expected = match space {
        PlaneSpace::Reduced => j,
        PlaneSpace::Raw => 2 * j,
    };
    if base.len() != expected {
        return Err(SpectrumError::Model(ModelError::WrongLength {
            j,
            expected,
            got: base.len(),
        }));
    }

    let total = axis1.count * axis2.count;
    let cells: Result<Vec<CellRecord>, SpectrumError> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let i1 = idx % axis1.count;
            let i2 = idx / axis1.count;
            let mut values = base.to_vec();
            values[slot1] = axis1.value(i1);
            values[slot2] = axis2.value(i2);
            let reduced = match space {
                PlaneSpace::Reduced => ReducedParams::new(values).map_err(SpectrumError::Model)?,
                PlaneSpace::Raw => {
                    let pairs = values
                        .chunks(2)
                        .map(|c| (c[0].clone(), c[1].clone()))
                        .collect();
                    reduce(&RawParams::new(pairs).map_err(SpectrumError::Model)?)
                }
            };
            let counts = secular_root_counts(&reduced)?;
            Ok(CellRecord {
                count: counts.physical as u32,
                complex: counts.complex_pairs > 0,
            })
        })
        .collect();
    Ok(DomainGrid {
        plane: (plane.0.to_string(), plane.1.to_string()),
        space,
        axis1,
        axis2,
        cells: cells?,
    })
}

/// Boundary polylines for one count level (the `count ≥ level` region).
#[derive(Debug, Clone, PartialEq)]
pub struct LevelBoundary {
    pub level: u32,
    pub polylines: Vec<Vec<(f64, f64)>>,
}

/// Marching squares over the grid nodes, one level set per observed count.
/// Segment endpoints sit on edge midpoints, so the traced boundary is
/// within one cell of the true transition.
pub fn boundary_extract(grid: &DomainGrid) -> Vec<LevelBoundary> {
    let mut out = Vec::new();
    for level in 1..=grid.max_count() {
        let polylines = extract_level(grid, level);
        if !polylines.is_empty() {
            out.push(LevelBoundary { level, polylines });
        }
    }
    out
}

fn extract_level(grid: &DomainGrid, level: u32) -> Vec<Vec<(f64, f64)>> {
    let n1 = grid.axis1.count;
    let n2 = grid.axis2.count;
    if n1 < 2 || n2 < 2 {
        return vec![];
    }
    let inside = |i1: usize, i2: usize| grid.cell(i1, i2).count >= level;

    // Edge id: horizontal edges (between (i1,i2) and (i1+1,i2)) get
    // 2*(i2*(n1-1)+i1), vertical edges 2*(i2*n1+i1)+1.
    let h_edge = |i1: usize, i2: usize| 2 * (i2 * (n1 - 1) + i1);
    let v_edge = |i1: usize, i2: usize| 2 * (i2 * n1 + i1) + 1;

    let mut segments: Vec<(usize, usize)> = Vec::new();
    for i2 in 0..n2 - 1 {
        for i1 in 0..n1 - 1 {
            let c00 = inside(i1, i2);
            let c10 = inside(i1 + 1, i2);
            let c01 = inside(i1, i2 + 1);
            let c11 = inside(i1 + 1, i2 + 1);
            let code = (c00 as u8) | (c10 as u8) << 1 | (c01 as u8) << 2 | (c11 as u8) << 3;
            let bottom = h_edge(i1, i2);
            let top = h_edge(i1, i2 + 1);
            let left = v_edge(i1, i2);
            let right = v_edge(i1 + 1, i2);
            match code {
                0 | 15 => {}
                1 | 14 => segments.push((left, bottom)),
                2 | 13 => segments.push((bottom, right)),
                3 | 12 => segments.push((left, right)),
                4 | 11 => segments.push((left, top)),
                5 | 10 => segments.push((bottom, top)),
                7 | 8 => segments.push((top, right)),
                6 | 9 => {
                    // saddle: resolve by the average count at the corners
                    let avg = (grid.cell(i1, i2).count
                        + grid.cell(i1 + 1, i2).count
                        + grid.cell(i1, i2 + 1).count
                        + grid.cell(i1 + 1, i2 + 1).count) as f64
                        / 4.0;
                    let center_inside = avg >= level as f64;
                    if (code == 6) == center_inside {
                        segments.push((bottom, right));
                        segments.push((left, top));
                    } else {
                        segments.push((left, bottom));
                        segments.push((top, right));
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    // chain segments into polylines
    use std::collections::BTreeMap;
    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &(a, b)) in segments.iter().enumerate() {
        adjacency.entry(a).or_default().push(i);
        adjacency.entry(b).or_default().push(i);
    }
    let edge_point = |edge: usize| -> (f64, f64) {
        if edge % 2 == 0 {
            let k = edge / 2;
            let i1 = k % (n1 - 1);
            let i2 = k / (n1 - 1);
            (
                0.5 * (grid.axis1.value_f64(i1) + grid.axis1.value_f64(i1 + 1)),
                grid.axis2.value_f64(i2),
            )
        } else {
            let k = (edge - 1) / 2;
            let i1 = k % n1;
            let i2 = k / n1;
            (
                grid.axis1.value_f64(i1),
                0.5 * (grid.axis2.value_f64(i2) + grid.axis2.value_f64(i2 + 1)),
            )
        }
    };

    let mut used = vec![false; segments.len()];
    let mut polylines = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        // walk forward from the segment's second endpoint, then backward
        let mut chain = vec![segments[start].0, segments[start].1];
        used[start] = true;
        loop {
            let tail = *chain.last().expect("nonempty");
            let next = adjacency[&tail]
                .iter()
                .copied()
                .find(|&s| !used[s]);
            match next {
                Some(s) => {
                    used[s] = true;
                    let (a, b) = segments[s];
                    chain.push(if a == tail { b } else { a });
                }
                None => break,
            }
        }
        loop {
            let head = chain[0];
            let next = adjacency[&head]
                .iter()
                .copied()
                .find(|&s| !used[s]);
            match next {
                Some(s) => {
                    used[s] = true;
                    let (a, b) = segments[s];
                    chain.insert(0, if a == head { b } else { a });
                }
                None => break,
            }
        }
        polylines.push(chain.into_iter().map(edge_point).collect());
    }
    polylines
}

/// One sample of the continuum-edge probe.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbePoint {
    pub lambda: f64,
    /// Largest root `t > 1`, when one exists.
    pub t0: Option<f64>,
    /// `t0 - (1 + s·λ)` where `s` is the linear-response sum.
    pub residual: Option<f64>,
}

/// Scaled-direction probe of the bound state emerging from the continuum.
///
/// Along `params = λ · direction`, the largest root behaves as
/// `t0 = 1 + s λ + O(λ²)` with `s = d_u + 2 Σ d_outer`; the report carries
/// the per-λ residuals against that linear law, the fitted log-log order,
/// and the measured leading coefficients of `φ0` and `E0` (which the
/// quadratic energy relation ties to `s/2` and `-(s/2)²`).
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub direction: Vec<f64>,
    pub linear_sum: f64,
    pub points: Vec<ProbePoint>,
    /// Least-squares slope of `ln |residual|` against `ln λ`.
    pub fitted_order: Option<f64>,
    /// `φ0 / (s λ)` at the smallest λ with a root.
    pub phi0_coefficient: Option<f64>,
    /// `E0 / (s λ)²` at the smallest λ with a root.
    pub e0_coefficient: Option<f64>,
}

pub fn perturbative_probe(
    direction: &[BigRational],
    lambdas: &[BigRational],
) -> Result<ProbeReport, SpectrumError> {
    let j = direction.len();
    if j == 0 {
        return Err(SpectrumError::Model(ModelError::ZeroJ));
    }
    let s: BigRational = direction
        .iter()
        .enumerate()
        .map(|(k, d)| {
            if k == 0 {
                d.clone()
            } else {
                d * BigRational::from_integer(2.into())
            }
        })
        .sum();
    let s_f = rational_to_f64(&s);

    let mut points = Vec::with_capacity(lambdas.len());
    for lambda in lambdas {
        let values: Vec<BigRational> = direction.iter().map(|d| d * lambda).collect();
        let reduced = ReducedParams::new(values)?;
        let states = bound_states(&reduced, 1e-14)?;
        let t0 = states.first().map(|st| st.t);
        let lambda_f = rational_to_f64(lambda);
        let residual = t0.map(|t| t - (1.0 + s_f * lambda_f));
        points.push(ProbePoint {
            lambda: lambda_f,
            t0,
            residual,
        });
    }

    let samples: Vec<(f64, f64)> = points
        .iter()
        .filter_map(|p| {
            p.residual
                .filter(|r| r.abs() > 1e-14)
                .map(|r| (p.lambda.ln(), r.abs().ln()))
        })
        .collect();
    let fitted_order = if samples.len() >= 2 {
        Some(least_squares_slope(&samples))
    } else {
        None
    };

    let smallest_with_root = points
        .iter()
        .filter(|p| p.t0.is_some())
        .min_by(|a, b| a.lambda.partial_cmp(&b.lambda).expect("finite"));
    let (phi0_coefficient, e0_coefficient) = match smallest_with_root {
        Some(p) => {
            let t0 = p.t0.expect("checked");
            let denom = s_f * p.lambda;
            (
                Some(phi_of_t(t0) / denom),
                Some(energy_of_t(t0) / (denom * denom)),
            )
        }
        None => (None, None),
    };

    Ok(ProbeReport {
        direction: direction.iter().map(rational_to_f64).collect(),
        linear_sum: s_f,
        points,
        fitted_order,
        phi0_coefficient,
        e0_coefficient,
    })
}

fn least_squares_slope(samples: &[(f64, f64)]) -> f64 {
    let n = samples.len() as f64;
    let sx: f64 = samples.iter().map(|(x, _)| x).sum();
    let sy: f64 = samples.iter().map(|(_, y)| y).sum();
    let sxx: f64 = samples.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = samples.iter().map(|(x, y)| x * y).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
