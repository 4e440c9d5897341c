//! Sparse multivariate polynomials over the rationals in the reduced
//! couplings `u, v, w, y, z, m, n` (innermost bond first).
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vector under graded
//! lexicographic order, with no zero coefficients, so equality is
//! structural. The variable universe is fixed: an exponent vector always
//! has seven slots and unused couplings simply never appear.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{rational_sqrt, rational_to_string, BigRational};

pub const NUM_VARS: usize = 7;

/// A reduced coupling, ordered innermost bond first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U,
    V,
    W,
    Y,
    Z,
    M,
    N,
}

impl Var {
    pub const ALL: [Var; NUM_VARS] = [Var::U, Var::V, Var::W, Var::Y, Var::Z, Var::M, Var::N];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn symbol(self) -> char {
        match self {
            Var::U => 'u',
            Var::V => 'v',
            Var::W => 'w',
            Var::Y => 'y',
            Var::Z => 'z',
            Var::M => 'm',
            Var::N => 'n',
        }
    }

    pub fn from_symbol(c: char) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.symbol() == c)
    }
}

/// Exponent vector over the full seven-coupling universe, ordered graded
/// lexicographically (total degree first, then `u` before `v` before …).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u16; NUM_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NUM_VARS]);

    pub fn var(v: Var) -> Monomial {
        let mut e = [0; NUM_VARS];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_of(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = [0; NUM_VARS];
        for i in 0..NUM_VARS {
            e[i] = self.0[i] + other.0[i];
        }
        Monomial(e)
    }

    /// Exact monomial quotient, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = [0; NUM_VARS];
        for i in 0..NUM_VARS {
            e[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(e))
    }

    fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Graded order with a reversed-lex tie break so that ascending
        // iteration yields the canonical term order: 1, u, v, …, u², uv, v².
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::ONE, c);
        }
        MultiPoly { terms }
    }

    pub fn from_int(n: i64) -> MultiPoly {
        MultiPoly::constant(BigRational::from_integer(n.into()))
    }

    pub fn var(v: Var) -> MultiPoly {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), BigRational::one());
        MultiPoly { terms }
    }

    /// Single term `c * prod(vars^exps)`.
    pub fn term(c: BigRational, powers: &[(Var, u16)]) -> MultiPoly {
        let mut e = [0u16; NUM_VARS];
        for &(v, p) in powers {
            e[v.index()] += p;
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(e), c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> MultiPoly {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get() + c;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        MultiPoly { terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::ONE)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::ONE))
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.get(&Monomial::ONE).cloned();
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms
            .keys()
            .map(|m| m.degree_of(v))
            .max()
            .unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.degree_of(v) > 0)
    }

    pub fn vars_present(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.contains_var(v))
            .collect()
    }

    /// Leading term under graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coef(&self) -> BigRational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn map_coefs(&self, f: impl Fn(&BigRational) -> BigRational) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        self.map_coefs(|x| x * c)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute rational values for all couplings.
    pub fn eval(&self, values: &[BigRational; NUM_VARS]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..NUM_VARS {
                for _ in 0..m.0[i] {
                    t *= &values[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute zero for one coupling, dropping every term containing it.
    pub fn subst_zero(&self, v: Var) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_of(v) == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Content: the positive rational `c` such that `self = c * pp` with `pp`
    /// having coprime integer coefficients; the sign convention leaves `pp`
    /// with a positive leading coefficient, so `c` carries the sign.
    pub fn content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading_coef().is_negative() {
            content = -content;
        }
        content
    }

    /// Primitive part: integer, coprime coefficients, positive leading
    /// coefficient. Returns `(content, primitive)` with
    /// `self = content * primitive`.
    pub fn primitive(&self) -> (BigRational, MultiPoly) {
        if self.is_zero() {
            return (BigRational::zero(), MultiPoly::zero());
        }
        let content = self.content();
        let inv = content.recip();
        (content, self.map_coefs(|c| c * &inv))
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            let inv = c.recip();
            return Some(self.map_coefs(|x| x * &inv));
        }
        let (dm, dc) = d.leading_term().expect("nonzero divisor");
        let dm = *dm;
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, BigRational)> = Vec::new();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading_term().expect("nonzero remainder");
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quot.push((qm, qc));
        }
        Some(MultiPoly::from_terms(quot))
    }

    /// View as a dense univariate polynomial in `v`; coefficient `i` is free
    /// of `v`.
    pub fn as_univariate(&self, v: Var) -> Vec<MultiPoly> {
        let deg = self.degree_in(v) as usize;
        let mut coeffs = vec![MultiPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.degree_of(v) as usize;
            let mut stripped = *m;
            stripped.0[v.index()] = 0;
            coeffs[e] = &coeffs[e] + &MultiPoly::from_terms([(stripped, c.clone())]);
        }
        coeffs
    }

    pub fn from_univariate(v: Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let mut mono = Monomial::ONE;
            mono.0[v.index()] = e as u16;
            acc = &acc + &c.mul_monomial(&mono, &BigRational::one());
        }
        acc
    }

    /// Exact polynomial square root, if one exists. The result has positive
    /// leading coefficient.
    pub fn sqrt(&self) -> Option<MultiPoly> {
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        if let Some(c) = self.as_constant() {
            return rational_sqrt(&c).map(MultiPoly::constant);
        }
        let v = *self.vars_present().last().expect("non-constant");
        let coeffs = self.as_univariate(v);
        let deg = coeffs.len() - 1;
        if deg % 2 != 0 {
            return None;
        }
        let half = deg / 2;
        let lead = coeffs[deg].sqrt()?;
        let two_lead = lead.scale(&BigRational::from_integer(2.into()));
        let mut root = vec![MultiPoly::zero(); half + 1];
        root[half] = lead;
        // Match coefficients downward from the top; each new one is fixed by
        // the cross term with the leading coefficient.
        for k in 1..=half {
            let target_deg = deg - k;
            let mut acc = coeffs[target_deg].clone();
            for i in (half - k + 1)..=half {
                let j = target_deg as isize - i as isize;
                if j < 0 || j as usize > i {
                    continue;
                }
                let j = j as usize;
                let prod = &root[i] * &root[j];
                let prod = if i != j {
                    prod.scale(&BigRational::from_integer(2.into()))
                } else {
                    prod
                };
                acc = &acc - &prod;
            }
            root[half - k] = acc.div_exact(&two_lead)?;
        }
        let candidate = MultiPoly::from_univariate(v, &root);
        if &(&candidate * &candidate) == self {
            Some(candidate)
        } else {
            None
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.entry(*m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get() + c;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        MultiPoly { terms }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.map_coefs(|c| -c)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        // Accumulate into a map; term counts stay small enough (a few
        // thousand at the largest couplings) that this is not a bottleneck.
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get() + c;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        MultiPoly { terms: acc }
    }
}

/// Pseudo-remainder of dense univariate polynomials with `MultiPoly`
/// coefficients: `lc(b)^k * a = q*b + r` with `deg r < deg b`.
pub(crate) fn pseudo_rem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let db = b.len() - 1;
    let lc_b = b[db].clone();
    let mut rem: Vec<MultiPoly> = a.to_vec();
    while rem.len() > db && rem.len() > 1 {
        let dr = rem.len() - 1;
        let lead = rem[dr].clone();
        // rem := lc_b * rem - lead * x^(dr-db) * b
        for c in rem.iter_mut() {
            *c = &*c * &lc_b;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] = &rem[shift + i] - &(&lead * bc);
        }
        while rem.len() > 1 && rem.last().map(|c| c.is_zero()).unwrap_or(false) {
            rem.pop();
        }
        if rem.len() == 1 && rem[0].is_zero() {
            rem.clear();
            rem.push(MultiPoly::zero());
        }
    }
    rem
}

pub(crate) fn univariate_content(coeffs: &[MultiPoly]) -> MultiPoly {
    let mut g = MultiPoly::zero();
    for c in coeffs {
        if !c.is_zero() {
            g = multipoly_gcd(&g, c);
        }
    }
    g
}

/// GCD of multivariate polynomials over the rationals, via primitive
/// polynomial remainder sequences. The result is content-normalized:
/// coprime integer coefficients with a positive leading rational (so the
/// GCD of anything with a nonzero constant is `1`).
pub fn multipoly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.primitive().1;
    }
    if b.is_zero() {
        return a.primitive().1;
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    // Main variable: the highest coupling appearing in either operand.
    let v = a
        .vars_present()
        .into_iter()
        .chain(b.vars_present())
        .max()
        .expect("non-constant operands");

    let ac = a.as_univariate(v);
    let bc = b.as_univariate(v);
    let cont_a = univariate_content(&ac);
    let cont_b = univariate_content(&bc);
    let cont_gcd = multipoly_gcd(&cont_a, &cont_b);

    let pp = |coeffs: &[MultiPoly], cont: &MultiPoly| -> Vec<MultiPoly> {
        coeffs
            .iter()
            .map(|c| c.div_exact(cont).expect("content divides"))
            .collect()
    };
    let mut r0 = pp(&ac, &cont_a);
    let mut r1 = pp(&bc, &cont_b);
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        if r1.len() == 1 && r1[0].is_zero() {
            break;
        }
        if r1.len() == 1 {
            // Nonzero, degree zero in v: primitive parts are coprime in v.
            r0 = vec![MultiPoly::one()];
            break;
        }
        let r = pseudo_rem(&r0, &r1);
        r0 = r1;
        r1 = if r.iter().all(|c| c.is_zero()) {
            vec![MultiPoly::zero()]
        } else {
            let cont = univariate_content(&r);
            pp(&r, &cont)
        };
    }
    let pp_gcd = {
        let poly = MultiPoly::from_univariate(v, &r0);
        poly.primitive().1
    };
    (&cont_gcd * &pp_gcd).primitive().1
}

impl fmt::Display for MultiPoly {
    /// Canonical rendering: terms in ascending graded-lex order
    /// (constant first), `*` between factors, exact fractions.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            write!(f, "{}", term_body(m, c))?;
        }
        Ok(())
    }
}

/// `|c| * monomial` rendered without sign.
fn term_body(m: &Monomial, c: &BigRational) -> String {
    let abs = c.abs();
    let mut factors: Vec<String> = Vec::new();
    if !abs.is_one() || m.is_one() {
        factors.push(rational_to_string(&abs));
    }
    for v in Var::ALL {
        let e = m.degree_of(v);
        if e == 1 {
            factors.push(v.symbol().to_string());
        } else if e > 1 {
            factors.push(format!("{}^{}", v.symbol(), e));
        }
    }
    factors.join("*")
}
