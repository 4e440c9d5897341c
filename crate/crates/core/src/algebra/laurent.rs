//! Laurent polynomials (finite, both-signed exponents). The matching
//! determinant lives here: its diagonal carries `x + 1/x`, and the
//! determinant itself picks up inverse powers that are later cleared by a
//! `t^s` prefactor.

use std::ops::{Add, Mul, Neg, Sub};

use super::coef::Coef;
use super::poly::Poly;

/// Finite Laurent polynomial in a named variable. The first and last stored
/// coefficients are nonzero unless the value is zero (empty coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    var: char,
    min_exp: i64,
    coeffs: Vec<Coef>,
}

impl LaurentPoly {
    pub fn new(var: char, min_exp: i64, coeffs: Vec<Coef>) -> LaurentPoly {
        let mut p = LaurentPoly {
            var,
            min_exp,
            coeffs,
        };
        p.normalize();
        p
    }

    pub fn zero(var: char) -> LaurentPoly {
        LaurentPoly {
            var,
            min_exp: 0,
            coeffs: vec![],
        }
    }

    pub fn one(var: char) -> LaurentPoly {
        LaurentPoly::term(var, Coef::one(), 0)
    }

    /// The single term `c * var^k` (negative `k` allowed).
    pub fn term(var: char, c: Coef, k: i64) -> LaurentPoly {
        LaurentPoly::new(var, k, vec![c])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        let leading_zeros = self
            .coeffs
            .iter()
            .take_while(|c| c.is_zero())
            .count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.min_exp += leading_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn max_exp(&self) -> i64 {
        self.min_exp + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, k: i64) -> Coef {
        if k < self.min_exp {
            return Coef::zero();
        }
        self.coeffs
            .get((k - self.min_exp) as usize)
            .cloned()
            .unwrap_or_else(Coef::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Coef)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    pub fn scale(&self, c: &Coef) -> LaurentPoly {
        LaurentPoly::new(
            self.var,
            self.min_exp,
            self.coeffs.iter().map(|x| x * c).collect(),
        )
    }

    /// True when only even exponents carry nonzero coefficients.
    pub fn even_exponents_only(&self) -> bool {
        self.terms().all(|(k, _)| k % 2 == 0)
    }

    /// Reinterpret even exponents of `x` as powers of `t = x²`, returning a
    /// Laurent polynomial in the new variable. `None` if an odd exponent is
    /// present.
    pub fn halve_exponents(&self, new_var: char) -> Option<LaurentPoly> {
        if !self.even_exponents_only() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero(new_var));
        }
        let min_t = self.min_exp.div_euclid(2);
        let max_t = self.max_exp().div_euclid(2);
        let coeffs = (min_t..=max_t).map(|k| self.coeff(2 * k)).collect();
        Some(LaurentPoly::new(new_var, min_t, coeffs))
    }

    /// Clear negative exponents: returns `(s, p)` with `p = self * var^s`
    /// an ordinary polynomial and `s = max(0, -min_exp)`.
    pub fn clear_poles(&self) -> (u32, Poly) {
        if self.is_zero() {
            return (0, Poly::zero(self.var));
        }
        let s = (-self.min_exp).max(0) as u32;
        let offset = self.min_exp + s as i64;
        debug_assert!(offset >= 0);
        let mut coeffs = vec![Coef::zero(); offset as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        (s, Poly::new(self.var, coeffs))
    }

    pub fn eval(&self, x: &Coef) -> Coef {
        let mut acc = Coef::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        let mut power = Coef::one();
        if self.min_exp >= 0 {
            for _ in 0..self.min_exp {
                power = &power * x;
            }
            &acc * &power
        } else {
            let inv = x.recip();
            for _ in 0..(-self.min_exp) {
                power = &power * &inv;
            }
            &acc * &power
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.var, rhs.var, "laurent variable mismatch");
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let min = self.min_exp.min(rhs.min_exp);
        let max = self.max_exp().max(rhs.max_exp());
        let coeffs = (min..=max)
            .map(|k| &self.coeff(k) + &rhs.coeff(k))
            .collect();
        LaurentPoly::new(self.var, min, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            var: self.var,
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.var, rhs.var, "laurent variable mismatch");
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero(self.var);
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
        LaurentPoly::new(self.var, self.min_exp + rhs.min_exp, coeffs)
    }
}
