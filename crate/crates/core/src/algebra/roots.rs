//! Real-root isolation by Sturm chains over exact rationals, plus a
//! safeguarded Newton refiner. Isolation is exact: each returned bracket
//! `(lo, hi]` contains exactly one real root of the (squarefree) input.

use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::rational::{rational_to_f64, BigRational};
use super::AlgebraError;

/// Half-open isolation interval: the root lies in `(lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

/// Sturm chain of a squarefree polynomial, coefficient lists ascending.
struct SturmChain {
    chain: Vec<Vec<BigRational>>,
}

fn eval(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl SturmChain {
    fn new(coeffs: Vec<BigRational>) -> SturmChain {
        let mut chain = Vec::new();
        let p0 = trim(coeffs);
        if p0.is_empty() {
            return SturmChain { chain };
        }
        let p1: Vec<BigRational> = p0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(k.into()))
            .collect();
        chain.push(p0);
        if trim(p1.clone()).is_empty() {
            return SturmChain { chain };
        }
        chain.push(normalize_scale(p1));
        loop {
            let n = chain.len();
            let rem = poly_rem(&chain[n - 2], &chain[n - 1]);
            if rem.is_empty() {
                break;
            }
            let negated: Vec<BigRational> = rem.iter().map(|c| -c).collect();
            chain.push(normalize_scale(negated));
        }
        SturmChain { chain }
    }

    /// Sign variations at a finite point (zero values skipped).
    fn variations_at(&self, x: &BigRational) -> usize {
        let signs = self.chain.iter().map(|p| sign(&eval(p, x)));
        count_variations(signs)
    }

}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last: i8 = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn trim(mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
    while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
        coeffs.pop();
    }
    coeffs
}

/// Scale by a positive rational so the largest coefficient has magnitude
/// one; keeps chain coefficients from snowballing while preserving signs.
fn normalize_scale(coeffs: Vec<BigRational>) -> Vec<BigRational> {
    let coeffs = trim(coeffs);
    let max = coeffs
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigRational::one);
    if max.is_zero() {
        return coeffs;
    }
    let inv = max.recip();
    coeffs.iter().map(|c| c * &inv).collect()
}

fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = b.len() - 1;
    let lead_inv = b.last().expect("nonzero divisor").recip();
    let mut rem: Vec<BigRational> = a.to_vec();
    while trim(rem.clone()).len() > db {
        let rem_t = trim(rem);
        let dr = rem_t.len() - 1;
        let factor = rem_t.last().expect("nonzero") * &lead_inv;
        rem = rem_t;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] = &rem[shift + i] - &(&factor * bc);
        }
    }
    trim(rem)
}

/// Cauchy bound: all real roots lie in `(-B, B)`.
fn root_bound(coeffs: &[BigRational]) -> BigRational {
    let lead = coeffs.last().expect("nonzero polynomial").abs();
    let max = coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigRational::zero);
    BigRational::one() + max / lead
}

/// Isolate the real roots of a squarefree numeric polynomial inside the open
/// interval `(lo, hi)` (`None` meaning unbounded). Each returned bracket
/// `(lo, hi]` contains exactly one root, and every root of the interval is
/// covered.
pub fn sturm_isolate(
    p: &Poly,
    lo: Option<&BigRational>,
    hi: Option<&BigRational>,
) -> Result<Vec<Bracket>, AlgebraError> {
    let coeffs = trim(p.as_rationals()?);
    if coeffs.len() <= 1 {
        return Ok(vec![]);
    }
    let chain = SturmChain::new(coeffs.clone());
    let bound = root_bound(&coeffs);

    // Clamp to the root bound so both endpoints are finite rationals.
    let a = match lo {
        Some(l) => l.clone().max(-&bound),
        None => -&bound,
    };
    let mut b = match hi {
        Some(h) => h.clone().min(bound.clone()),
        None => bound,
    };
    if a >= b {
        return Ok(vec![]);
    }
    // An exact root at the upper端 is not inside the open interval: shrink
    // the right endpoint until it is the only root of (b', b].
    if !eval(&coeffs, &b).is_zero() {
        // nothing to exclude
    } else {
        let mut delta = (&b - &a) / BigRational::from_integer(2.into());
        loop {
            let candidate = &b - &delta;
            let count = chain.variations_at(&candidate) - chain.variations_at(&b);
            if count == 1 && candidate > a {
                b = candidate;
                break;
            }
            delta /= BigRational::from_integer(2.into());
        }
    }

    let total = chain.variations_at(&a) - chain.variations_at(&b);
    let mut stack = vec![(a.clone(), b.clone(), total)];
    let mut out = Vec::new();
    while let Some((a, b, count)) = stack.pop() {
        match count {
            0 => {}
            1 => out.push(Bracket { lo: a, hi: b }),
            _ => {
                let mid = (&a + &b) / BigRational::from_integer(2.into());
                let vm = chain.variations_at(&mid);
                let left = chain.variations_at(&a) - vm;
                let right = vm - chain.variations_at(&b);
                stack.push((mid.clone(), b, right));
                stack.push((a, mid, left));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Count real roots of a squarefree numeric polynomial in `(lo, hi)`.
pub fn real_root_count(
    p: &Poly,
    lo: Option<&BigRational>,
    hi: Option<&BigRational>,
) -> Result<usize, AlgebraError> {
    Ok(sturm_isolate(p, lo, hi)?.len())
}

/// Refine an isolated root to floating point with Newton iterations inside a
/// bisection safeguard. The bracket must come from [`sturm_isolate`] (one
/// sign change across it, or an exact root at the right endpoint).
pub fn refine_root(p: &Poly, bracket: &Bracket, rel_tol: f64) -> Result<f64, AlgebraError> {
    let coeffs = trim(p.as_rationals()?);
    assert!(coeffs.len() > 1, "cannot refine a constant polynomial");

    if eval(&coeffs, &bracket.hi).is_zero() {
        return Ok(rational_to_f64(&bracket.hi));
    }
    // Walk the left endpoint inward until it carries a definite sign; the
    // root is interior, so this terminates.
    let two = BigRational::from_integer(2.into());
    let mut lo_exact = bracket.lo.clone();
    let mut step = (&bracket.hi - &bracket.lo) / &two;
    while eval(&coeffs, &lo_exact).is_zero() {
        lo_exact = &bracket.lo + &step;
        step /= &two;
        if eval(&coeffs, &lo_exact).is_positive() == eval(&coeffs, &bracket.hi).is_positive() {
            // stepped past the root; come back closer to the endpoint
            lo_exact = bracket.lo.clone();
        }
    }

    let deriv: Vec<BigRational> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(k.into()))
        .collect();
    let f = |x: f64| -> f64 {
        let mut acc = 0.0;
        for c in coeffs.iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    };
    let df = |x: f64| -> f64 {
        let mut acc = 0.0;
        for c in deriv.iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    };

    let mut lo = rational_to_f64(&lo_exact);
    let mut hi = rational_to_f64(&bracket.hi);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    debug_assert!(flo.signum() != fhi.signum(), "bracket must straddle a sign change");

    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let width = hi - lo;
        if width <= rel_tol * x.abs().max(1.0) {
            break;
        }
        let d = df(x);
        let newton = if d != 0.0 { x - fx / d } else { x };
        x = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    // Polish: Newton converges quadratically once inside the basin.
    for _ in 0..6 {
        let d = df(x);
        if d == 0.0 {
            break;
        }
        let next = x - f(x) / d;
        if !next.is_finite() || (next - x).abs() > (hi - lo).abs().max(1e-300) {
            break;
        }
        if next == x {
            break;
        }
        x = next;
    }
    Ok(x)
}

/// A few exact Newton steps from a floating-point seed. Each step roughly
/// squares the accuracy at a simple root, so two steps take a 1e-15 seed
/// far below any tolerance the pipeline uses downstream.
pub fn polish_root_rational(
    p: &Poly,
    seed: f64,
    steps: usize,
) -> Result<BigRational, AlgebraError> {
    let coeffs = trim(p.as_rationals()?);
    let deriv: Vec<BigRational> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(k.into()))
        .collect();
    let mut t = BigRational::from_float(seed).unwrap_or_else(BigRational::zero);
    for _ in 0..steps {
        let d = eval(&deriv, &t);
        if d.is_zero() {
            break;
        }
        t = &t - eval(&coeffs, &t) / d;
    }
    Ok(t)
}
