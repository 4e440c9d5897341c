//! Independent brute-force validation: eigenvalues of large hard-wall
//! truncations of the lattice operator, located by determinant sign
//! changes, certify the exact secular pipeline.
//!
//! Truncation to `2N` sites shifts a bound-state eigenvalue by an amount
//! that decays exponentially with the tail rate `2φ`, so states with `t`
//! well away from 1 converge fast; states with `t ≈ 1` are flagged. Sign
//! sweeps can only see isolated real eigenvalues of odd multiplicity,
//! which is exactly the regime below the continuum.

use num_traits::One;
use rayon::prelude::*;

use crate::algebra::rational::{rational_to_f64, BigRational};
use crate::model::{build_truncated, embed, ReducedParams, TruncatedHamiltonian};
use crate::spectrum::{bound_states, SpectrumError};

/// Sign and natural-log magnitude of `det(H - E)`, by the three-term minor
/// recursion with per-step rescaling; overflow-free for dimensions in the
/// thousands.
pub fn char_eval(h: &TruncatedHamiltonian, energy: f64) -> (i8, f64) {
    let d = 2.0 - energy;
    let products: Vec<f64> = h
        .super_diag()
        .iter()
        .zip(h.sub_diag())
        .map(|(s, sb)| rational_to_f64(s) * rational_to_f64(sb))
        .collect();
    let mut log_scale = 0.0f64;
    let mut prev = 1.0f64; // D_0
    let mut curr = d; // D_1
    for g in &products {
        let next = d * curr - g * prev;
        prev = curr;
        curr = next;
        let mag = prev.abs().max(curr.abs());
        if mag > 1e100 || (mag > 0.0 && mag < 1e-100) {
            prev /= mag;
            curr /= mag;
            log_scale += mag.ln();
        }
    }
    if curr == 0.0 {
        (0, f64::NEG_INFINITY)
    } else {
        (if curr > 0.0 { 1 } else { -1 }, log_scale + curr.abs().ln())
    }
}

/// Exact rational determinant of `H - E`, for small truncations.
pub fn char_eval_exact(h: &TruncatedHamiltonian, energy: &BigRational) -> BigRational {
    let d = BigRational::from_integer(2.into()) - energy;
    let mut prev = BigRational::one();
    let mut curr = d.clone();
    for (s, sb) in h.super_diag().iter().zip(h.sub_diag()) {
        let next = &d * &curr - s * sb * &prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// Lower bound on the real spectrum from row sums.
pub fn gershgorin_floor(h: &TruncatedHamiltonian) -> f64 {
    let dim = h.dim();
    let mut floor = f64::INFINITY;
    for i in 0..dim {
        let left = if i > 0 {
            rational_to_f64(&h.sub_diag()[i - 1]).abs()
        } else {
            0.0
        };
        let right = if i < dim - 1 {
            rational_to_f64(&h.super_diag()[i]).abs()
        } else {
            0.0
        };
        floor = floor.min(2.0 - left - right);
    }
    floor
}

/// All determinant sign-change roots of `E ↦ det(H - E)` inside the window,
/// bisected to `tol`. Detects isolated real eigenvalues of odd multiplicity
/// only.
pub fn eigen_below_continuum(
    h: &TruncatedHamiltonian,
    window: (f64, f64),
    samples: usize,
    tol: f64,
) -> Vec<f64> {
    let (lo, hi) = window;
    assert!(hi <= 0.0, "window must stay below the continuum");
    assert!(samples >= 2);
    let step = (hi - lo) / (samples - 1) as f64;
    let signs: Vec<i8> = (0..samples)
        .into_par_iter()
        .map(|k| char_eval(h, lo + k as f64 * step).0)
        .collect();
    let mut roots = Vec::new();
    for k in 0..samples - 1 {
        let (sa, sb) = (signs[k], signs[k + 1]);
        if sa == 0 {
            roots.push(lo + k as f64 * step);
            continue;
        }
        if sb != 0 && sa != sb {
            let mut a = lo + k as f64 * step;
            let mut b = a + step;
            let fa = sa;
            while b - a > tol {
                let mid = 0.5 * (a + b);
                let fm = char_eval(h, mid).0;
                if fm == 0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if fm == fa {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
    }
    if signs[samples - 1] == 0 {
        roots.push(hi);
    }
    roots
}

/// Convergence record across a list of truncation half-widths.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub truncation_sizes: Vec<usize>,
    /// Bound-state energies from the exact secular pipeline, ascending
    /// level index (deepest first).
    pub secular_energies: Vec<f64>,
    /// Per truncation size: all detected eigenvalues below the continuum.
    pub eigenvalues: Vec<Vec<f64>>,
    /// Per truncation size, per secular state: `|E_trunc - E_secular|` for
    /// the nearest detected eigenvalue (`None` when nothing was detected).
    pub energy_diffs: Vec<Vec<Option<f64>>>,
    /// Per state: fitted exponential decay rate of the differences, i.e.
    /// `-d ln(diff)/dN`.
    pub decay_rates: Vec<Option<f64>>,
    /// Per state: the tail-decay rate `2φ` the fit is compared against.
    pub expected_rates: Vec<f64>,
    /// State indices with `t` so close to 1 that the largest requested
    /// truncation cannot reach 1e-8 accuracy.
    pub slow_convergence_warnings: Vec<usize>,
}

/// Compare secular bound states against truncated-lattice eigenvalues over
/// a list of half-widths and fit the exponential convergence rate.
pub fn convergence_study(
    reduced: &ReducedParams,
    truncation_sizes: &[usize],
    tol: f64,
) -> Result<OracleReport, SpectrumError> {
    assert!(
        truncation_sizes.len() >= 2,
        "need at least two truncation sizes"
    );
    let states = bound_states(reduced, 1e-14)?;
    let secular_energies: Vec<f64> = states.iter().map(|s| s.energy).collect();
    let raw = embed(reduced);

    let mut eigenvalues = Vec::new();
    let mut energy_diffs = Vec::new();
    for &n in truncation_sizes {
        let h = build_truncated(&raw, n)?;
        let floor = gershgorin_floor(&h).min(-1.0) - 1.0;
        let eigs = eigen_below_continuum(&h, (floor, -tol), 2000, 1e-13);
        let diffs: Vec<Option<f64>> = secular_energies
            .iter()
            .map(|e| {
                eigs.iter()
                    .map(|x| (x - e).abs())
                    .min_by(|a, b| a.partial_cmp(b).expect("finite"))
            })
            .collect();
        eigenvalues.push(eigs);
        energy_diffs.push(diffs);
    }

    let mut decay_rates = Vec::new();
    let mut slow_convergence_warnings = Vec::new();
    let n_max = *truncation_sizes.iter().max().expect("nonempty");
    for (idx, state) in states.iter().enumerate() {
        let samples: Vec<(f64, f64)> = truncation_sizes
            .iter()
            .enumerate()
            .filter_map(|(row, &n)| {
                energy_diffs[row][idx]
                    .filter(|d| *d > 1e-15)
                    .map(|d| (n as f64, d.ln()))
            })
            .collect();
        decay_rates.push(if samples.len() >= 2 {
            Some(-slope(&samples))
        } else {
            None
        });
        let two_phi = 2.0 * state.phi;
        let reach = two_phi * (n_max.saturating_sub(reduced.j())) as f64;
        if reach < (1e8f64).ln() {
            slow_convergence_warnings.push(idx);
        }
    }
    let expected_rates = states.iter().map(|s| 2.0 * s.phi).collect();

    Ok(OracleReport {
        truncation_sizes: truncation_sizes.to_vec(),
        secular_energies,
        eigenvalues,
        energy_diffs,
        decay_rates,
        expected_rates,
        slow_convergence_warnings,
    })
}

fn slope(samples: &[(f64, f64)]) -> f64 {
    let n = samples.len() as f64;
    let sx: f64 = samples.iter().map(|(x, _)| x).sum();
    let sy: f64 = samples.iter().map(|(_, y)| y).sum();
    let sxx: f64 = samples.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = samples.iter().map(|(x, y)| x * y).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::parse_rational;
    use crate::model::RawParams;

    fn rat(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn reduced(vals: &[&str]) -> ReducedParams {
        ReducedParams::new(vals.iter().map(|v| rat(v)).collect()).unwrap()
    }

    #[test]
    fn free_chain_has_positive_determinant_below_zero() {
        let raw = RawParams::new(vec![(rat("0"), rat("0"))]).unwrap();
        let h = build_truncated(&raw, 20).unwrap();
        let (sign, _) = char_eval(&h, -1.0);
        assert_eq!(sign, 1);
        assert!(eigen_below_continuum(&h, (-3.0, -1e-9), 500, 1e-12).is_empty());
    }

    #[test]
    fn deep_below_spectrum_sign_is_positive() {
        let raw = embed(&reduced(&["3", "1"]));
        let h = build_truncated(&raw, 15).unwrap();
        // E = -100: H - E is diagonally dominant with positive diagonal
        let (sign, log_mag) = char_eval(&h, -100.0);
        assert_eq!(sign, 1);
        assert!(log_mag > 0.0);
    }

    #[test]
    fn j1_eigenvalue_brackets_half() {
        // u = 3: E = -1/2; 60-site truncation pins it far below 1e-12
        let raw = embed(&reduced(&["3"]));
        let h = build_truncated(&raw, 30).unwrap();
        let eigs = eigen_below_continuum(&h, (-2.0, -1e-9), 2000, 1e-13);
        assert_eq!(eigs.len(), 1);
        assert!((eigs[0] + 0.5).abs() < 1e-12, "eig {}", eigs[0]);
    }

    #[test]
    fn j2_eigenvalue_matches_secular() {
        let raw = embed(&reduced(&["3", "1"]));
        let h = build_truncated(&raw, 50).unwrap();
        let eigs = eigen_below_continuum(&h, (-2.0, -1e-9), 2000, 1e-13);
        assert_eq!(eigs.len(), 1);
        let expected = 2.0 - 2.0 * 2f64.sqrt();
        assert!((eigs[0] - expected).abs() < 1e-9);
    }

    #[test]
    fn out_of_domain_is_empty() {
        // J=1, u = -1/2: no bound state, no eigenvalue below the continuum
        let raw = embed(&reduced(&["-0.5"]));
        let h = build_truncated(&raw, 40).unwrap();
        assert!(eigen_below_continuum(&h, (-2.0, -1e-9), 1000, 1e-12).is_empty());
    }

    #[test]
    fn truncated_determinant_factorizes_exactly() {
        // det(H_trunc - E) = Δ_L² · det(M_L) where Δ_m is the free-chain
        // minor and M_L is the matching matrix with its corner x replaced
        // by Δ_{L+1}/Δ_L. Checked in exact rational arithmetic.
        let x = rat("5/3");
        let d = &x + x.recip(); // 2 - E
        let energy = BigRational::from_integer(2.into()) - &d;
        for (values, half_width) in [
            (vec![rat("3")], 3usize),
            (vec![rat("3"), rat("1")], 4),
            (vec![rat("2"), rat("-1/2"), rat("1/3")], 5),
        ] {
            let r = ReducedParams::new(values).unwrap();
            let j = r.j();
            let raw = embed(&r);
            let h = build_truncated(&raw, half_width).unwrap();
            let lhs = char_eval_exact(&h, &energy);

            let tail = half_width - j; // free sites on each side
            // Δ_0 .. Δ_{tail+1}
            let mut delta = vec![BigRational::one(), d.clone()];
            for m in 2..=tail + 1 {
                let next = &d * &delta[m - 1] - &delta[m - 2];
                delta.push(next);
            }
            let corner = &delta[tail + 1] / &delta[tail];
            // matching determinant with modified corners
            let mut prev = BigRational::one();
            let mut curr = corner.clone();
            let dim = 2 * j;
            for i in 1..dim {
                let diag = if i == dim - 1 { corner.clone() } else { d.clone() };
                let g = BigRational::one() + &r.values()[if i - 1 < j { j - i } else { i - j }];
                let next = diag * &curr - g * &prev;
                prev = curr;
                curr = next;
            }
            let rhs = &delta[tail] * &delta[tail] * curr;
            assert_eq!(lhs, rhs, "tail-factor identity at J={j}, N={half_width}");
        }
    }

    #[test]
    fn convergence_study_j1() {
        let r = reduced(&["3"]);
        let report = convergence_study(&r, &[8, 10, 12, 14], 1e-9).unwrap();
        assert_eq!(report.secular_energies.len(), 1);
        let rate = report.decay_rates[0].expect("diffs measurable");
        // tail decay: differences shrink by t = e^{2φ} per added site
        let expected = report.expected_rates[0];
        assert!(
            (rate - expected).abs() < 0.2 * expected,
            "rate {rate} vs expected {expected}"
        );
        // identical sizes give identical eigenvalues
        let again = convergence_study(&r, &[10, 10], 1e-9).unwrap();
        assert_eq!(again.eigenvalues[0], again.eigenvalues[1]);
    }

    #[test]
    fn slow_state_is_flagged() {
        // t ≈ 1.02: far too slow for N ≤ 20
        let r = reduced(&["0.02"]);
        let report = convergence_study(&r, &[10, 20], 1e-9).unwrap();
        assert_eq!(report.slow_convergence_warnings, vec![0]);
    }
}
