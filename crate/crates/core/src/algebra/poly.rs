//! Dense univariate polynomials over [`Coef`]. The secular pipeline only
//! ever needs degrees up to `2J - 2 ≤ 12`, so a dense coefficient vector is
//! the right shape.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::coef::Coef;
use super::multipoly::{self, multipoly_gcd, MultiPoly, Var, NUM_VARS};
use super::rational::{rational_to_f64, BigRational};
use super::AlgebraError;

/// Polynomial in a single named variable, coefficients ascending by degree.
/// The leading stored coefficient is nonzero unless the polynomial is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    var: char,
    coeffs: Vec<Coef>,
}

impl Poly {
    pub fn new(var: char, mut coeffs: Vec<Coef>) -> Poly {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        Poly { var, coeffs }
    }

    pub fn zero(var: char) -> Poly {
        Poly { var, coeffs: vec![] }
    }

    pub fn constant(var: char, c: Coef) -> Poly {
        Poly::new(var, vec![c])
    }

    pub fn one(var: char) -> Poly {
        Poly::constant(var, Coef::one())
    }

    /// The monomial `var^k`.
    pub fn identity(var: char) -> Poly {
        Poly::monomial(var, Coef::one(), 1)
    }

    pub fn monomial(var: char, c: Coef, k: usize) -> Poly {
        let mut coeffs = vec![Coef::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(var, coeffs)
    }

    pub fn from_rationals(var: char, coeffs: &[BigRational]) -> Poly {
        Poly::new(
            var,
            coeffs.iter().cloned().map(Coef::from_rational).collect(),
        )
    }

    pub fn from_ints(var: char, coeffs: &[i64]) -> Poly {
        Poly::new(var, coeffs.iter().map(|&c| Coef::from_int(c)).collect())
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Coef] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Coef {
        self.coeffs.get(k).cloned().unwrap_or_else(Coef::zero)
    }

    pub fn leading(&self) -> Coef {
        self.coeffs.last().cloned().unwrap_or_else(Coef::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.leading().recip();
        self.map_coefs(|c| c * &inv)
    }

    pub fn map_coefs(&self, f: impl Fn(&Coef) -> Coef) -> Poly {
        Poly::new(self.var, self.coeffs.iter().map(|c| f(c)).collect())
    }

    pub fn scale(&self, c: &Coef) -> Poly {
        self.map_coefs(|x| x * c)
    }

    /// Multiply by `var^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Coef::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(self.var, coeffs)
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Coef::from_int(k as i64))
            .collect();
        Poly::new(self.var, coeffs)
    }

    pub fn eval(&self, x: &Coef) -> Coef {
        let mut acc = Coef::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational, AlgebraError> {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            let c = c.as_rational().ok_or(AlgebraError::SymbolicCoefficient)?;
            acc = acc * x + c;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            let c = c
                .as_rational()
                .map(rational_to_f64)
                .unwrap_or(f64::NAN);
            acc = acc * x + c;
        }
        acc
    }

    pub fn as_rationals(&self) -> Result<Vec<BigRational>, AlgebraError> {
        self.coeffs
            .iter()
            .map(|c| {
                c.as_rational()
                    .cloned()
                    .ok_or(AlgebraError::SymbolicCoefficient)
            })
            .collect()
    }

    /// Substitute rational values for every coupling inside the coefficients.
    /// `None` if a symbolic denominator vanishes at the assignment.
    pub fn eval_params(&self, values: &[BigRational; NUM_VARS]) -> Option<Poly> {
        let coeffs: Option<Vec<Coef>> = self
            .coeffs
            .iter()
            .map(|c| c.eval(values).map(Coef::from_rational))
            .collect();
        Some(Poly::new(self.var, coeffs?))
    }

    /// Set one coupling to zero in every coefficient.
    pub fn subst_zero(&self, v: Var) -> Option<Poly> {
        let coeffs: Option<Vec<Coef>> = self.coeffs.iter().map(|c| c.subst_zero(v)).collect();
        Some(Poly::new(self.var, coeffs?))
    }

    /// Largest degree of a coupling across all coefficients (numerators).
    pub fn degree_in_param(&self, v: Var) -> u16 {
        self.coeffs
            .iter()
            .map(|c| c.degree_in(v))
            .max()
            .unwrap_or(0)
    }

    /// Split `self = p0 + v * p1`, failing unless every coefficient is
    /// affine in the coupling `v` with `v`-free denominators.
    pub fn split_affine(&self, v: Var) -> Option<(Poly, Poly)> {
        let mut c0 = Vec::with_capacity(self.coeffs.len());
        let mut c1 = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (a, b) = c.split_affine(v)?;
            c0.push(a);
            c1.push(b);
        }
        Some((Poly::new(self.var, c0), Poly::new(self.var, c1)))
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn assert_same_var(&self, other: &Poly) {
        assert_eq!(
            self.var, other.var,
            "polynomial variable mismatch: {} vs {}",
            self.var, other.var
        );
    }

    /// Exact Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        self.assert_same_var(d);
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZeroPoly);
        }
        let dd = d.degree().expect("nonzero divisor");
        let lead_inv = d.leading().recip();
        let mut rem = self.clone();
        let mut quot = vec![Coef::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let factor = &rem.leading() * &lead_inv;
            let shift = dr - dd;
            quot[shift] = factor.clone();
            let sub = d.scale(&factor).shift_up(shift);
            rem = &rem - &sub;
        }
        Ok((Poly::new(self.var, quot), rem))
    }

    /// Exact quotient, `None` when the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d).ok()?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Exact square root with the positive-leading-sign convention: the
    /// returned `q` satisfies `q² = self`, is monic whenever `self` is, and
    /// otherwise carries the positive square root of the leading
    /// coefficient.
    pub fn sqrt(&self) -> Result<Poly, AlgebraError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let deg = self.degree().expect("nonzero");
        if deg % 2 != 0 {
            return Err(AlgebraError::NotAPerfectSquare(format!(
                "odd degree {deg}"
            )));
        }
        let lead = self.leading();
        let lead_root = lead.sqrt().ok_or_else(|| {
            AlgebraError::NotAPerfectSquare(format!("leading coefficient {lead} is not a square"))
        })?;
        let half = deg / 2;
        let normalized = self.monic();
        let mut root = vec![Coef::zero(); half + 1];
        root[half] = Coef::one();
        let two = Coef::from_int(2);
        for k in 1..=half {
            let target = deg - k;
            let mut acc = normalized.coeff(target);
            for i in (half - k + 1)..=half {
                let j = target as isize - i as isize;
                if j < 0 || j as usize > i {
                    continue;
                }
                let j = j as usize;
                let prod = &root[i] * &root[j];
                let prod = if i != j { &prod * &two } else { prod };
                acc = &acc - &prod;
            }
            root[half - k] = &acc / &two;
        }
        let candidate = Poly::new(self.var, root);
        let square = &candidate * &candidate;
        if square != normalized {
            let residue = &normalized - &square;
            return Err(AlgebraError::NotAPerfectSquare(format!(
                "coefficient matching leaves residue {residue}"
            )));
        }
        Ok(candidate.scale(&lead_root))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same_var(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        Poly::new(self.var, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.map_coefs(|c| -c)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_var(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.var);
        }
        let mut coeffs = vec![Coef::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::new(self.var, coeffs)
    }
}

/// Monic GCD in the coefficient field. Numeric inputs use plain Euclid;
/// symbolic inputs go through a primitive remainder sequence over cleared
/// denominators to keep intermediate fractions from exploding.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let numeric = a.coeffs.iter().chain(&b.coeffs).all(|c| c.is_numeric());
    if numeric {
        let mut r0 = a.monic();
        let mut r1 = b.monic();
        while !r1.is_zero() {
            let (_, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = r1;
            r1 = r.monic();
        }
        r0
    } else {
        let ac = clear_denominators(a);
        let bc = clear_denominators(b);
        let mut r0 = primitive_in_main(&ac);
        let mut r1 = primitive_in_main(&bc);
        if r0.len() < r1.len() {
            std::mem::swap(&mut r0, &mut r1);
        }
        loop {
            if r1.len() == 1 && r1[0].is_zero() {
                break;
            }
            if r1.len() == 1 {
                r0 = vec![MultiPoly::one()];
                break;
            }
            let r = multipoly::pseudo_rem(&r0, &r1);
            r0 = r1;
            r1 = if r.iter().all(|c| c.is_zero()) {
                vec![MultiPoly::zero()]
            } else {
                primitive_in_main(&r)
            };
        }
        Poly::new(
            a.var,
            r0.into_iter().map(Coef::from_poly).collect(),
        )
        .monic()
    }
}

/// Multiply out the symbolic denominators, returning the numerator
/// coefficient list of `D * poly` for the common denominator `D`.
fn clear_denominators(p: &Poly) -> Vec<MultiPoly> {
    let fracs: Vec<(MultiPoly, MultiPoly)> = p
        .coeffs
        .iter()
        .map(|c| match c {
            Coef::Numeric(r) => (MultiPoly::constant(r.clone()), MultiPoly::one()),
            Coef::Symbolic(f) => (f.num().clone(), f.den().clone()),
        })
        .collect();
    let mut common = MultiPoly::one();
    for (_, d) in &fracs {
        let g = multipoly_gcd(&common, d);
        common = &common * &d.div_exact(&g).expect("gcd divides");
    }
    fracs
        .into_iter()
        .map(|(n, d)| {
            let cofactor = common.div_exact(&d).expect("denominator divides lcm");
            &n * &cofactor
        })
        .collect()
}

fn primitive_in_main(coeffs: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && c.last().map(|x| x.is_zero()).unwrap_or(false) {
        c.pop();
    }
    let cont = multipoly::univariate_content(&c);
    if cont.is_zero() {
        return vec![MultiPoly::zero()];
    }
    c.iter()
        .map(|x| x.div_exact(&cont).expect("content divides"))
        .collect()
}

/// Squarefree decomposition (Yun): returns the pairwise-coprime monic
/// factors with their multiplicities, `p = lc * prod f_i^i`.
pub fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    if p.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df);
    let mut b = f.div_exact(&a0).expect("gcd divides").monic();
    let mut c = df.div_exact(&a0).expect("gcd divides");
    let mut out = Vec::new();
    let mut i = 1;
    loop {
        let d = &c - &b.derivative();
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        let a = poly_gcd(&b, &d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("gcd divides").monic();
        c = d.div_exact(&a).expect("gcd divides");
        i += 1;
    }
    out
}

/// The squarefree part `p / gcd(p, p')`, monic.
pub fn squarefree_part(p: &Poly) -> Poly {
    if p.degree().unwrap_or(0) == 0 {
        return p.monic();
    }
    let g = poly_gcd(p, &p.derivative());
    p.div_exact(&g).expect("gcd divides").monic()
}

impl fmt::Display for Poly {
    /// Canonical text form: terms in descending degree, exact coefficients,
    /// composite coefficients parenthesized, e.g.
    /// `t^2 - (1+u+2*v)*t + v^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // a lone constant needs no term syntax (and no parentheses)
        if self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1 && !self.coeffs[0].is_zero() {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.display_sign_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.display_magnitude();
            let power = match k {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, k),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{power}")?;
            } else {
                write!(f, "{mag}*{power}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Poly {
        Poly::identity('t')
    }

    fn sym(v: Var) -> Poly {
        Poly::constant('t', Coef::var(v))
    }

    #[test]
    fn square_expansion() {
        // (t - v)^2 = t^2 - 2vt + v^2
        let p = &t() - &sym(Var::V);
        let sq = &p * &p;
        assert_eq!(sq.to_string(), "t^2 - 2*v*t + v^2");
    }

    #[test]
    fn divrem_matches_partial_fraction_identity() {
        // (t^2 - (v+w) t - w) / (t - w): the quotient and remainder are
        // pinned by the expansion t - v - (1+v)w / (t-w).
        let v = Coef::var(Var::V);
        let w = Coef::var(Var::W);
        let num = Poly::new(
            't',
            vec![-&w, -&(&v + &w), Coef::one()],
        );
        let den = Poly::new('t', vec![-&w, Coef::one()]);
        let (q, r) = num.divrem(&den).unwrap();
        assert_eq!(q, &t() - &sym(Var::V));
        let expected_rem = -&(&(&Coef::one() + &v) * &w);
        assert_eq!(r, Poly::constant('t', expected_rem));
        // exact reconstruction
        assert_eq!(&(&q * &den) + &r, num);
    }

    #[test]
    fn evaluation() {
        let p = Poly::from_ints('t', &[1, -6, 1]); // t^2 - 6t + 1
        assert_eq!(
            p.eval_rational(&BigRational::from_integer(3.into())).unwrap(),
            BigRational::from_integer((-8).into())
        );
    }

    #[test]
    fn sqrt_examples() {
        let p = &t() - &sym(Var::V);
        let sq = &p * &p;
        assert_eq!(sq.sqrt().unwrap(), p);
        // t^2 + 1 is not a square
        let q = Poly::from_ints('t', &[1, 0, 1]);
        assert!(matches!(q.sqrt(), Err(AlgebraError::NotAPerfectSquare(_))));
        // scaled square keeps the positive root of the leading coefficient
        let scaled = sq.scale(&Coef::from_int(4));
        assert_eq!(scaled.sqrt().unwrap(), p.scale(&Coef::from_int(2)));
        // negative leading coefficient cannot be a square
        assert!((-&sq).sqrt().is_err());
    }

    #[test]
    fn sqrt_roundtrip_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let deg = rng.gen_range(1..5);
            let coeffs: Vec<Coef> = (0..deg)
                .map(|_| Coef::from_int(rng.gen_range(-6..6)))
                .chain([Coef::one()])
                .collect();
            let p = Poly::new('t', coeffs);
            let sq = &p * &p;
            assert_eq!(sq.sqrt().unwrap(), p.monic().scale(&p.leading()));
        }
    }

    #[test]
    fn symbolic_gcd_via_prs() {
        // gcd((t - w)(t + 1), (t - w)(t - v)) = t - w
        let w = sym(Var::W);
        let v = sym(Var::V);
        let a = &(&t() - &w) * &(&t() + &Poly::one('t'));
        let b = &(&t() - &w) * &(&t() - &v);
        assert_eq!(poly_gcd(&a, &b), &t() - &w);
        // coprime symbolic pair
        let g = poly_gcd(&(&t() - &w), &(&t() - &v));
        assert_eq!(g, Poly::one('t'));
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        // (t-1)^2 (t-4)
        let p = &(&(&t() - &Poly::one('t')) * &(&t() - &Poly::one('t')))
            * &(&t() - &Poly::from_ints('t', &[4]));
        let parts = squarefree_decomposition(&p);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (&t() - &Poly::from_ints('t', &[4]), 1));
        assert_eq!(parts[1], (&t() - &Poly::one('t'), 2));
        let sf = squarefree_part(&p);
        assert_eq!(sf.degree(), Some(2));
    }
}
