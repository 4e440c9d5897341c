//! Sturmian reinterpretation of the secular problem.
//!
//! With every coupling except the innermost one held fixed, the secular
//! polynomial is affine in `u` and splits as `P = N² - t(1+u)D²` with `N`
//! monic of degree `J-1` and `D` monic of degree `J-2`. The bound-state
//! condition becomes `√((1+u)t) = ±f(t)` for the rational function
//! `f = N/D`, so the innermost coupling can be solved for in closed form:
//! `u(t) = N(t)²/(t D(t)²) - 1`. Repeated monic division of `N` by `D`
//! unwinds `f` into a finite J-fraction
//! `t - A_0 - B_1/(t - A_1 - B_2/(…))`, and the distribution of the zeros
//! of `N` among the pole intervals of `f` classifies the possible
//! intersection patterns with the parabola.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::coef::Coef;
use crate::algebra::multipoly::Var;
use crate::algebra::poly::{poly_gcd, squarefree_part, Poly};
use crate::algebra::rational::BigRational;
use crate::algebra::roots::{refine_root, sturm_isolate};
use crate::algebra::AlgebraError;
use crate::model::ReducedParams;
use crate::secular::{secular_poly, secular_poly_symbolic, SecularError, SecularPoly};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SturmianError {
    #[error("factorization failed: {0}")]
    FactorizationFailed(String),
    #[error("evaluation point is a pole of f (D vanishes)")]
    PoleHit,
    #[error("degenerate continued-fraction step at level {level}: remainder degree dropped by more than one")]
    DegenerateStep { level: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Secular(#[from] SecularError),
}

/// The factorization pair `f = N/D`: both monic, coprime, with
/// `deg N = deg D + 1`, so `f(t) = t + O(1)` at large `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// Reduce to lowest terms. A cheap numeric specialization certifies
    /// coprimality in the generic case; the symbolic remainder sequence only
    /// runs when a common factor is actually present.
    pub fn reduced(num: Poly, den: Poly) -> RatFunc {
        if den.degree().unwrap_or(0) == 0 {
            return RatFunc {
                num: num.monic(),
                den: Poly::one(num.var()),
            };
        }
        if !Self::certified_coprime(&num, &den) {
            let g = poly_gcd(&num, &den);
            if g.degree().unwrap_or(0) > 0 {
                let num = num.div_exact(&g).expect("gcd divides").monic();
                let den = den.div_exact(&g).expect("gcd divides").monic();
                return RatFunc { num, den };
            }
        }
        RatFunc {
            num: num.monic(),
            den: den.monic(),
        }
    }

    /// `true` means provably coprime (a specialization has trivial gcd);
    /// `false` is inconclusive.
    fn certified_coprime(num: &Poly, den: &Poly) -> bool {
        use crate::algebra::multipoly::NUM_VARS;
        for salt in 0..3u64 {
            let assignment: [BigRational; NUM_VARS] = std::array::from_fn(|i| {
                BigRational::new(
                    (2 + 3 * i as i64 + 7 * salt as i64).into(),
                    (3 + 2 * i as i64 + salt as i64).into(),
                )
            });
            let (n, d) = match (num.eval_params(&assignment), den.eval_params(&assignment)) {
                (Some(n), Some(d)) => (n, d),
                _ => continue,
            };
            if n.degree() != num.degree() || d.degree() != den.degree() {
                continue; // leading coefficient vanished; try another point
            }
            if poly_gcd(&n, &d).degree().unwrap_or(0) == 0 {
                return true;
            }
        }
        false
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.num.eval_f64(t) / self.den.eval_f64(t)
    }

    /// Substitute a coupling to zero in both parts and re-reduce.
    pub fn subst_zero(&self, v: Var) -> Option<RatFunc> {
        let num = self.num.subst_zero(v)?;
        let den = self.den.subst_zero(v)?;
        if den.is_zero() {
            return None;
        }
        Some(RatFunc::reduced(num, den))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree().unwrap_or(0) == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Split the secular polynomial (affine in the symbolic `u`) into the
/// monic square-root pair: `D² = -P₁/t` and `N² = P|_{u=-1}`, so that
/// `N² - t(1+u)D² = P` holds identically.
///
/// At degenerate numeric couplings (an outer coupling exactly zero) the
/// recorded prefactor drops below its generic value `J - 2` and the
/// normalized polynomial loses the factors of `t` the square-root ansatz
/// needs; those factors are restored here, so the identity then holds
/// against `t^k · P` with `k` the prefactor deficit.
pub fn factorize(secular: &SecularPoly) -> Result<(Poly, Poly), SturmianError> {
    let generic_prefactor = secular.j().saturating_sub(2) as u32;
    let deficit = generic_prefactor.saturating_sub(secular.prefactor_power());
    let restored;
    let p = if deficit > 0 {
        restored = secular.poly().shift_up(deficit as usize);
        &restored
    } else {
        secular.poly()
    };
    let (p0, p1) = p.split_affine(Var::U).ok_or_else(|| {
        SturmianError::FactorizationFailed(
            "secular polynomial is not affine in the innermost coupling".to_string(),
        )
    })?;
    if p1.is_zero() {
        return Err(SturmianError::FactorizationFailed(
            "secular polynomial does not depend on the innermost coupling".to_string(),
        ));
    }
    let minus_p1 = -&p1;
    let d_squared = minus_p1
        .div_exact(&Poly::identity(p.var()))
        .ok_or_else(|| {
            SturmianError::FactorizationFailed("u-coefficient is not divisible by t".to_string())
        })?;
    let d = d_squared
        .sqrt()
        .map_err(|e| SturmianError::FactorizationFailed(format!("D² not a square: {e}")))?;
    let n_squared = &p0 - &p1; // P at u = -1
    let n = n_squared
        .sqrt()
        .map_err(|e| SturmianError::FactorizationFailed(format!("N² not a square: {e}")))?;
    Ok((n, d))
}

/// `f_1 = t`: at `J = 1` the secular polynomial is `t - (1+u)`, which is
/// `N² - t(1+u)D²` only after multiplying by `t`, so the pair is written
/// down directly instead of going through [`factorize`].
fn f_one() -> RatFunc {
    RatFunc {
        num: Poly::identity('t'),
        den: Poly::one('t'),
    }
}

/// `f_J = N/D` for numeric outer couplings `(v, w, …)`, `J - 1` values.
pub fn f_rational(others: &[BigRational]) -> Result<RatFunc, SturmianError> {
    if others.is_empty() {
        return Ok(f_one());
    }
    let mut values = vec![BigRational::zero()]; // placeholder for the symbolic u
    values.extend(others.iter().cloned());
    let reduced = ReducedParams::new(values)
        .map_err(|_| SturmianError::FactorizationFailed("J must be at least 1".to_string()))?;
    let secular = secular_poly(&reduced, true)?;
    let (n, d) = factorize(&secular)?;
    Ok(RatFunc::reduced(n, d))
}

/// `f_J` with every coupling kept symbolic.
pub fn f_rational_symbolic(j: usize) -> Result<RatFunc, SturmianError> {
    if j == 1 {
        return Ok(f_one());
    }
    let secular = secular_poly_symbolic(j)?;
    let (n, d) = factorize(&secular)?;
    Ok(RatFunc::reduced(n, d))
}

/// The Sturmian coupling: the innermost coupling that places a bound state
/// exactly at `t`, namely `u = N(t)²/(t D(t)²) - 1`.
pub fn sturmian_coupling(f: &RatFunc, t_value: &BigRational) -> Result<BigRational, SturmianError> {
    let d = f.den.eval_rational(t_value)?;
    if d.is_zero() {
        return Err(SturmianError::PoleHit);
    }
    let n = f.num.eval_rational(t_value)?;
    Ok(&n * &n / (t_value * &d * &d) - BigRational::from_integer(1.into()))
}

/// One simple-pole term of a partial-fraction expansion.
#[derive(Debug, Clone, PartialEq)]
pub enum Pole {
    Symbolic { location: Coef, residue: Coef },
    Numeric { location: f64, residue: f64 },
}

/// `f = t - A₀ - R(t)/D(t)` with `deg R < deg D`, plus simple-pole residues
/// where the roots of `D` are available (symbolically for a linear `D`,
/// numerically otherwise).
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFractions {
    pub a0: Coef,
    pub remainder: Poly,
    pub denominator: Poly,
    pub poles: Vec<Pole>,
    pub complex_pole_pairs: usize,
}

pub fn partial_fractions(f: &RatFunc) -> Result<PartialFractions, SturmianError> {
    let (q, rem) = f.num.divrem(&f.den)?;
    debug_assert_eq!(q.degree(), Some(1));
    let a0 = -&q.coeff(0);
    let remainder = -&rem;
    let denominator = f.den.clone();
    let mut poles = Vec::new();
    let mut complex_pole_pairs = 0;

    let deg_d = denominator.degree().unwrap_or(0);
    if deg_d == 1 {
        // single symbolic pole at t = -d₀; the residue is R evaluated there
        let location = -&denominator.coeff(0);
        let residue = remainder.eval(&location);
        poles.push(Pole::Symbolic { location, residue });
    } else if deg_d >= 2 && denominator.as_rationals().is_ok() {
        let sf = squarefree_part(&denominator);
        if sf.degree() == denominator.degree() {
            let brackets = sturm_isolate(&sf, None, None)?;
            let dprime = denominator.derivative();
            for b in &brackets {
                let location = refine_root(&denominator, b, 1e-14)?;
                let residue = remainder.eval_f64(location) / dprime.eval_f64(location);
                poles.push(Pole::Numeric { location, residue });
            }
            complex_pole_pairs = (deg_d - brackets.len()) / 2;
        }
    }
    Ok(PartialFractions {
        a0,
        remainder,
        denominator,
        poles,
        complex_pole_pairs,
    })
}

/// Finite continued fraction `t - A₀ - B₁/(t - A₁ - B₂/(…))`.
///
/// Produced by repeated monic division. A coefficient is "tilded"
/// (truncation-dependent) when the chain is too short to pin its general
/// form: `B_k` stabilizes at `J = 2k+1` and `A_k` at `J = 2k+2`.
#[derive(Debug, Clone, PartialEq)]
pub struct JFraction {
    j: usize,
    a: Vec<Coef>,
    b: Vec<Coef>,
}

impl JFraction {
    pub fn j(&self) -> usize {
        self.j
    }

    /// `A_0 … A_{J-2}`.
    pub fn a(&self) -> &[Coef] {
        &self.a
    }

    /// `B_1 … B_{J-2}`; `b()[k]` holds `B_{k+1}`.
    pub fn b(&self) -> &[Coef] {
        &self.b
    }

    /// First index at which any coefficient is truncation-dependent.
    pub fn tilde_from(&self) -> usize {
        self.j / 2
    }

    pub fn is_a_tilded(&self, k: usize) -> bool {
        2 * k + 2 > self.j
    }

    pub fn is_b_tilded(&self, k: usize) -> bool {
        2 * k + 1 > self.j
    }

    /// Expand the fraction back into a rational function.
    pub fn to_ratfunc(&self) -> RatFunc {
        let var = 't';
        let t = Poly::identity(var);
        let last = self.a.len() - 1;
        let mut num = &t - &Poly::constant(var, self.a[last].clone());
        let mut den = Poly::one(var);
        for k in (0..last).rev() {
            // (t - A_k) - B_{k+1}/(num/den) = ((t - A_k) num - B_{k+1} den)/num
            let head = &t - &Poly::constant(var, self.a[k].clone());
            let new_num = &(&head * &num) - &den.scale(&self.b[k]);
            den = num;
            num = new_num;
        }
        RatFunc::reduced(num, den)
    }
}

/// Unwind `f = N/D` into its J-fraction: at each level the monic division
/// `num = (t - A_k) den + rem` yields `A_k`, then `B_{k+1} = -lc(rem)` and
/// the next level continues with `(den, rem/(-B_{k+1}))` until the remainder
/// vanishes. A remainder degree drop of more than one is surfaced as
/// [`SturmianError::DegenerateStep`], not silently renormalized.
pub fn jfraction(f: &RatFunc) -> Result<JFraction, SturmianError> {
    let j = f.num.degree().map(|d| d + 1).unwrap_or(0);
    let mut num = f.num.clone();
    let mut den = f.den.clone();
    let mut a = Vec::new();
    let mut b = Vec::new();
    loop {
        let (q, rem) = num.divrem(&den)?;
        debug_assert_eq!(q.degree(), Some(1), "quotient must be t - A_k");
        a.push(-&q.coeff(0));
        if rem.is_zero() {
            break;
        }
        let expected = den.degree().expect("nonzero denominator");
        if expected == 0 || rem.degree() != Some(expected - 1) {
            return Err(SturmianError::DegenerateStep { level: a.len() - 1 });
        }
        let b_next = -&rem.leading();
        b.push(b_next);
        num = den;
        den = rem.monic();
    }
    Ok(JFraction { j, a, b })
}

/// Parity tag of one pole interval of `f`.
///
/// An even number of zeros of `N` leaves `f` on one side (a cap or cup
/// branch); an odd count forces `f` across the whole real axis, which
/// guarantees two intersections with the parabola on intervals reaching
/// into `t > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalParity {
    CapOrCup,
    FullRange,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalShape {
    pub zero_count: usize,
    pub parity: IntervalParity,
}

/// Hyperbola classification for the single-pole (`J = 3`) family, decided
/// by the sign of the residue `(1+v)w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SinglePoleShape {
    /// `(1+v)w < 0`: cap branch left of the pole, cup branch right.
    CapCup,
    /// `(1+v)w > 0`: two growing branches, four guaranteed intersections.
    SlashSlash,
    /// `(1+v)w = 0`: the spike disappears.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeClassification {
    /// Real poles, ascending.
    pub poles: Vec<f64>,
    pub complex_pole_pairs: usize,
    /// One entry per interval between consecutive real poles, including the
    /// two unbounded end intervals.
    pub intervals: Vec<IntervalShape>,
    /// Set when `D` has degree one.
    pub single_pole_shape: Option<SinglePoleShape>,
    /// Two per full-range interval that reaches into `t > 0`.
    pub guaranteed_intersections: usize,
}

pub fn shape_classify(f: &RatFunc) -> Result<ShapeClassification, SturmianError> {
    let num_sf = squarefree_part(&f.num);
    let zeros: Vec<f64> = sturm_isolate(&num_sf, None, None)?
        .iter()
        .map(|b| refine_root(&num_sf, b, 1e-12))
        .collect::<Result<_, _>>()?;

    let deg_d = f.den.degree().unwrap_or(0);
    let mut poles: Vec<f64> = Vec::new();
    if deg_d > 0 {
        let den_sf = squarefree_part(&f.den);
        poles = sturm_isolate(&den_sf, None, None)?
            .iter()
            .map(|b| refine_root(&den_sf, b, 1e-12))
            .collect::<Result<_, _>>()?;
    }
    let complex_pole_pairs = (deg_d - poles.len()) / 2;

    let mut intervals = Vec::with_capacity(poles.len() + 1);
    for i in 0..=poles.len() {
        let lo = if i == 0 { f64::NEG_INFINITY } else { poles[i - 1] };
        let hi = if i == poles.len() {
            f64::INFINITY
        } else {
            poles[i]
        };
        let zero_count = zeros.iter().filter(|&&z| z > lo && z < hi).count();
        let parity = if zero_count % 2 == 0 {
            IntervalParity::CapOrCup
        } else {
            IntervalParity::FullRange
        };
        intervals.push(IntervalShape { zero_count, parity });
    }

    let single_pole_shape = if deg_d == 1 {
        let pf = partial_fractions(f)?;
        let residue = pf.remainder.eval_f64(0.0); // deg R = 0: the constant
        Some(if residue > 0.0 {
            SinglePoleShape::SlashSlash
        } else if residue < 0.0 {
            SinglePoleShape::CapCup
        } else {
            SinglePoleShape::Degenerate
        })
    } else {
        None
    };

    let guaranteed_intersections = intervals
        .iter()
        .enumerate()
        .filter(|(i, shape)| {
            shape.parity == IntervalParity::FullRange && {
                let hi = if *i == poles.len() {
                    f64::INFINITY
                } else {
                    poles[*i]
                };
                hi > 0.0
            }
        })
        .count()
        * 2;

    Ok(ShapeClassification {
        poles,
        complex_pole_pairs,
        intervals,
        single_pole_shape,
        guaranteed_intersections,
    })
}
