//! Polynomial coefficients: either an exact rational or a rational function
//! of the reduced couplings. The J-fraction coefficients force the symbolic
//! variant to be a fraction of polynomials (`w + y + y/w` is not a
//! polynomial), kept reduced by multivariate GCD with a content-normalized
//! denominator so that equality is structural.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::multipoly::{multipoly_gcd, MultiPoly, Var, NUM_VARS};
use super::rational::{rational_sqrt, rational_to_string, BigRational};

/// Reduced symbolic fraction. Invariants: `den` is nonzero with coprime
/// integer coefficients and positive leading rational; `num`/`den` share no
/// factor; at least one of the two actually involves a coupling (otherwise
/// the value collapses to [`Coef::Numeric`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymFrac {
    num: MultiPoly,
    den: MultiPoly,
}

impl SymFrac {
    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coef {
    Numeric(BigRational),
    Symbolic(SymFrac),
}

impl Coef {
    pub fn zero() -> Coef {
        Coef::Numeric(BigRational::zero())
    }

    pub fn one() -> Coef {
        Coef::Numeric(BigRational::one())
    }

    pub fn from_int(n: i64) -> Coef {
        Coef::Numeric(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(r: BigRational) -> Coef {
        Coef::Numeric(r)
    }

    pub fn var(v: Var) -> Coef {
        Coef::make(MultiPoly::var(v), MultiPoly::one())
    }

    pub fn from_poly(p: MultiPoly) -> Coef {
        Coef::make(p, MultiPoly::one())
    }

    /// Build a reduced, canonical coefficient from a raw fraction.
    /// Panics on a zero denominator (internal misuse, never data-driven).
    pub fn make(num: MultiPoly, den: MultiPoly) -> Coef {
        assert!(!den.is_zero(), "zero denominator in symbolic coefficient");
        if num.is_zero() {
            return Coef::zero();
        }
        let g = multipoly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        // Fold the denominator's content into the numerator and collapse
        // coupling-free values to the numeric variant.
        let (den_content, den) = den.primitive();
        let num = num.scale(&den_content.recip());
        if den.is_one() {
            if let Some(c) = num.as_constant() {
                return Coef::Numeric(c);
            }
        }
        Coef::Symbolic(SymFrac { num, den })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Numeric(r) => r.is_zero(),
            Coef::Symbolic(_) => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coef::Numeric(r) => r.is_one(),
            Coef::Symbolic(_) => false,
        }
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, Coef::Numeric(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coef::Numeric(r) => Some(r),
            Coef::Symbolic(_) => None,
        }
    }

    fn as_frac(&self) -> (MultiPoly, MultiPoly) {
        match self {
            Coef::Numeric(r) => (MultiPoly::constant(r.clone()), MultiPoly::one()),
            Coef::Symbolic(f) => (f.num.clone(), f.den.clone()),
        }
    }

    pub fn recip(&self) -> Coef {
        assert!(!self.is_zero(), "reciprocal of zero coefficient");
        match self {
            Coef::Numeric(r) => Coef::Numeric(r.recip()),
            Coef::Symbolic(f) => Coef::make(f.den.clone(), f.num.clone()),
        }
    }

    pub fn pow(&self, n: u32) -> Coef {
        let mut acc = Coef::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute rational values for every coupling.
    /// `None` if the denominator vanishes at the assignment.
    pub fn eval(&self, values: &[BigRational; NUM_VARS]) -> Option<BigRational> {
        match self {
            Coef::Numeric(r) => Some(r.clone()),
            Coef::Symbolic(f) => {
                let d = f.den.eval(values);
                if d.is_zero() {
                    return None;
                }
                Some(f.num.eval(values) / d)
            }
        }
    }

    /// Set one coupling to zero. `None` if the denominator collapses to zero.
    pub fn subst_zero(&self, v: Var) -> Option<Coef> {
        match self {
            Coef::Numeric(_) => Some(self.clone()),
            Coef::Symbolic(f) => {
                let den = f.den.subst_zero(v);
                if den.is_zero() {
                    return None;
                }
                Some(Coef::make(f.num.subst_zero(v), den))
            }
        }
    }

    /// Exact square root in the coefficient field, if one exists; the result
    /// is normalized to a positive leading sign.
    pub fn sqrt(&self) -> Option<Coef> {
        match self {
            Coef::Numeric(r) => rational_sqrt(r).map(Coef::Numeric),
            Coef::Symbolic(f) => {
                // A reduced fraction is a square iff both parts are squares
                // up to a shared rational square factor.
                let (cn, pn) = f.num.primitive();
                let num_root = pn.sqrt()?;
                let den_root = f.den.sqrt()?;
                let scale = rational_sqrt(&cn)?;
                Some(Coef::make(num_root.scale(&scale), den_root))
            }
        }
    }

    /// Degree in one coupling, counting the denominator negatively as zero;
    /// used to check that secular coefficients stay affine in `u`.
    pub fn degree_in(&self, v: Var) -> u16 {
        match self {
            Coef::Numeric(_) => 0,
            Coef::Symbolic(f) => f.num.degree_in(v),
        }
    }

    pub fn den_contains(&self, v: Var) -> bool {
        match self {
            Coef::Numeric(_) => false,
            Coef::Symbolic(f) => f.den.contains_var(v),
        }
    }

    /// Split into coefficients of `v^0` and `v^1` in the numerator.
    /// `None` unless the value is affine in `v` with a `v`-free denominator.
    pub fn split_affine(&self, v: Var) -> Option<(Coef, Coef)> {
        match self {
            Coef::Numeric(_) => Some((self.clone(), Coef::zero())),
            Coef::Symbolic(f) => {
                if f.den.contains_var(v) || f.num.degree_in(v) > 1 {
                    return None;
                }
                let parts = f.num.as_univariate(v);
                let c0 = parts.first().cloned().unwrap_or_else(MultiPoly::zero);
                let c1 = parts.get(1).cloned().unwrap_or_else(MultiPoly::zero);
                Some((
                    Coef::make(c0, f.den.clone()),
                    Coef::make(c1, f.den.clone()),
                ))
            }
        }
    }

    /// Sign used by the canonical text form: the sign of the first term in
    /// ascending graded-lex order (for fractions, of the numerator).
    pub fn display_sign_negative(&self) -> bool {
        match self {
            Coef::Numeric(r) => r.is_negative(),
            Coef::Symbolic(f) => f
                .num
                .terms()
                .next()
                .map(|(_, c)| c.is_negative())
                .unwrap_or(false),
        }
    }

    /// Magnitude part of the canonical text form (the value with the display
    /// sign factored out), parenthesized whenever it is composite.
    pub fn display_magnitude(&self) -> String {
        let neg = self.display_sign_negative();
        match self {
            Coef::Numeric(r) => rational_to_string(&r.abs()),
            Coef::Symbolic(f) => {
                let num = if neg { -&f.num } else { f.num.clone() };
                let num_str = if num.num_terms() > 1 {
                    format!("({num})")
                } else {
                    num.to_string()
                };
                if f.den.is_one() {
                    num_str
                } else {
                    let den_str = if f.den.num_terms() > 1 {
                        format!("({})", f.den)
                    } else {
                        f.den.to_string()
                    };
                    format!("{num_str}/{den_str}")
                }
            }
        }
    }
}

impl Add for &Coef {
    type Output = Coef;
    fn add(self, rhs: &Coef) -> Coef {
        match (self, rhs) {
            (Coef::Numeric(a), Coef::Numeric(b)) => Coef::Numeric(a + b),
            _ => {
                let (an, ad) = self.as_frac();
                let (bn, bd) = rhs.as_frac();
                Coef::make(&(&an * &bd) + &(&bn * &ad), &ad * &bd)
            }
        }
    }
}

impl Sub for &Coef {
    type Output = Coef;
    fn sub(self, rhs: &Coef) -> Coef {
        self + &(-rhs)
    }
}

impl Neg for &Coef {
    type Output = Coef;
    fn neg(self) -> Coef {
        match self {
            Coef::Numeric(r) => Coef::Numeric(-r),
            Coef::Symbolic(f) => Coef::Symbolic(SymFrac {
                num: -&f.num,
                den: f.den.clone(),
            }),
        }
    }
}

impl Mul for &Coef {
    type Output = Coef;
    fn mul(self, rhs: &Coef) -> Coef {
        match (self, rhs) {
            (Coef::Numeric(a), Coef::Numeric(b)) => Coef::Numeric(a * b),
            _ => {
                if self.is_zero() || rhs.is_zero() {
                    return Coef::zero();
                }
                let (an, ad) = self.as_frac();
                let (bn, bd) = rhs.as_frac();
                Coef::make(&an * &bn, &ad * &bd)
            }
        }
    }
}

impl Div for &Coef {
    type Output = Coef;
    fn div(self, rhs: &Coef) -> Coef {
        self * &rhs.recip()
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coef::Numeric(r) => write!(f, "{}", rational_to_string(r)),
            Coef::Symbolic(frac) if frac.den.is_one() => {
                // Standalone polynomials need no parentheses; a negated
                // composite keeps the factored sign for readability.
                if self.display_sign_negative() && frac.num.num_terms() > 1 {
                    write!(f, "-({})", -&frac.num)
                } else {
                    write!(f, "{}", frac.num)
                }
            }
            _ => {
                if self.display_sign_negative() {
                    write!(f, "-{}", self.display_magnitude())
                } else {
                    write!(f, "{}", self.display_magnitude())
                }
            }
        }
    }
}
