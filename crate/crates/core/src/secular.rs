//! The `2J`-dimensional matching problem and its normalized determinant.
//!
//! Inserting decaying exponential tails into the infinite three-term
//! recurrence closes it into a `2J × 2J` tridiagonal system: corners carry
//! `x = exp φ`, the interior diagonal carries `x + 1/x = 2 - E`, and each
//! bond contributes the pair `(-1 + p_k, -1 - p_k')` whose product reduces
//! to `1 + value_k`. The determinant is a Laurent polynomial in `x`, even in
//! `x`; written in `t = x²` and cleared of its finite pole at `t = 0` it
//! becomes the monic secular polynomial of degree `2J - 2` (degree one at
//! `J = 1`).

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::coef::Coef;
use crate::algebra::laurent::LaurentPoly;
use crate::algebra::multipoly::Var;
use crate::algebra::poly::Poly;
use crate::algebra::rational::BigRational;
use crate::model::ReducedParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SecularError {
    #[error("matching determinant contains an odd power of x (structural bug)")]
    OddExponentFound,
    #[error("J must be at least 1")]
    ZeroJ,
    #[error("only seven named couplings exist (u..n); J={0} has no symbolic form")]
    SymbolsExhausted(usize),
    #[error("direct evaluation requires x != 0")]
    ZeroEvaluationPoint,
}

/// Tridiagonal matching matrix. Only the off-diagonal entries are stored;
/// the diagonal is `x` at both corners and `x + 1/x` inside. Built in the
/// canonical gauge (primed parameters zero), which leaves every bond product
/// equal to `1 + value_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingMatrix {
    j: usize,
    super_diag: Vec<Coef>,
    sub_diag: Vec<Coef>,
}

/// Pair index (0-based) carried by off-diagonal slot `i` of the matching
/// matrix: outermost at the edges, innermost in the middle, palindromic.
fn pair_index(j: usize, i: usize) -> usize {
    if i < j {
        j - 1 - i
    } else {
        i - j + 1
    }
}

fn matrix_from_params(params: &[Coef]) -> MatchingMatrix {
    let j = params.len();
    let dim_off = 2 * j - 1;
    let mut super_diag = Vec::with_capacity(dim_off);
    let mut sub_diag = Vec::with_capacity(dim_off);
    for i in 0..dim_off {
        let value = &params[pair_index(j, i)];
        // canonical gauge: p = -value, p' = 0
        super_diag.push(&(-&Coef::one()) - value);
        sub_diag.push(-&Coef::one());
    }
    MatchingMatrix {
        j,
        super_diag,
        sub_diag,
    }
}

impl MatchingMatrix {
    pub fn j(&self) -> usize {
        self.j
    }

    pub fn dim(&self) -> usize {
        2 * self.j
    }

    pub fn super_diag(&self) -> &[Coef] {
        &self.super_diag
    }

    pub fn sub_diag(&self) -> &[Coef] {
        &self.sub_diag
    }

    /// Bond product `super * sub` at off-diagonal slot `i`; equals
    /// `1 + value_k` for the pair carried by that slot.
    pub fn bond_product(&self, i: usize) -> Coef {
        &self.super_diag[i] * &self.sub_diag[i]
    }

    /// Determinant by the three-term recursion on leading principal minors,
    /// linear in the dimension.
    pub fn determinant(&self) -> LaurentPoly {
        let x = LaurentPoly::term('x', Coef::one(), 1);
        let interior = &x + &LaurentPoly::term('x', Coef::one(), -1);
        let dim = self.dim();
        let mut prev2 = LaurentPoly::one('x'); // D_0
        let mut prev1 = x.clone(); // D_1: first corner
        for i in 1..dim {
            let diag = if i == dim - 1 { &x } else { &interior };
            let product = self.bond_product(i - 1);
            let next = &(diag * &prev1) - &prev2.scale(&product);
            prev2 = prev1;
            prev1 = next;
        }
        prev1
    }

    /// Dense floating-point realization at a numeric evaluation point,
    /// row-major; used for nullvector extraction.
    pub fn to_dense_f64(&self, x: f64) -> Vec<Vec<f64>> {
        use crate::algebra::rational::rational_to_f64;
        let dim = self.dim();
        let mut m = vec![vec![0.0; dim]; dim];
        for i in 0..dim {
            m[i][i] = if i == 0 || i == dim - 1 { x } else { x + 1.0 / x };
            if i + 1 < dim {
                m[i][i + 1] = self.super_diag[i]
                    .as_rational()
                    .map(rational_to_f64)
                    .unwrap_or(f64::NAN);
                m[i + 1][i] = self.sub_diag[i]
                    .as_rational()
                    .map(rational_to_f64)
                    .unwrap_or(f64::NAN);
            }
        }
        m
    }
}

/// Matching matrix with numeric reduced couplings (canonical gauge).
pub fn matching_matrix(reduced: &ReducedParams) -> MatchingMatrix {
    let params: Vec<Coef> = reduced
        .values()
        .iter()
        .cloned()
        .map(Coef::from_rational)
        .collect();
    matrix_from_params(&params)
}

/// Matching matrix with all `J` couplings kept symbolic.
pub fn matching_matrix_symbolic(j: usize) -> Result<MatchingMatrix, SecularError> {
    Ok(matrix_from_params(&symbolic_params(j)?))
}

fn symbolic_params(j: usize) -> Result<Vec<Coef>, SecularError> {
    if j == 0 {
        return Err(SecularError::ZeroJ);
    }
    if j > crate::algebra::multipoly::NUM_VARS {
        return Err(SecularError::SymbolsExhausted(j));
    }
    Ok((0..j).map(|k| Coef::var(Var::from_index(k))).collect())
}

fn mixed_params(reduced: &ReducedParams, keep_u_symbolic: bool) -> Vec<Coef> {
    reduced
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            if k == 0 && keep_u_symbolic {
                Coef::var(Var::U)
            } else {
                Coef::from_rational(v.clone())
            }
        })
        .collect()
}

/// Raw matching determinant as a Laurent polynomial in `x`; all exponents
/// are even (checked).
pub fn secular_laurent(
    reduced: &ReducedParams,
    keep_u_symbolic: bool,
) -> Result<LaurentPoly, SecularError> {
    laurent_from_params(&mixed_params(reduced, keep_u_symbolic))
}

pub fn secular_laurent_symbolic(j: usize) -> Result<LaurentPoly, SecularError> {
    laurent_from_params(&symbolic_params(j)?)
}

fn laurent_from_params(params: &[Coef]) -> Result<LaurentPoly, SecularError> {
    let det = matrix_from_params(params).determinant();
    if !det.even_exponents_only() {
        return Err(SecularError::OddExponentFound);
    }
    Ok(det)
}

/// Normalized secular polynomial: `prefactor_power` records the power of
/// `t` that clears the determinant's finite pole at `t = 0`, and the result
/// is monic in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecularPoly {
    j: usize,
    prefactor_power: u32,
    poly: Poly,
}

impl SecularPoly {
    pub fn j(&self) -> usize {
        self.j
    }

    pub fn prefactor_power(&self) -> u32 {
        self.prefactor_power
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }
}

impl fmt::Display for SecularPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

pub fn secular_poly(
    reduced: &ReducedParams,
    keep_u_symbolic: bool,
) -> Result<SecularPoly, SecularError> {
    poly_from_params(&mixed_params(reduced, keep_u_symbolic))
}

pub fn secular_poly_symbolic(j: usize) -> Result<SecularPoly, SecularError> {
    poly_from_params(&symbolic_params(j)?)
}

fn poly_from_params(params: &[Coef]) -> Result<SecularPoly, SecularError> {
    let j = params.len();
    let laurent = laurent_from_params(params)?;
    let in_t = laurent
        .halve_exponents('t')
        .ok_or(SecularError::OddExponentFound)?;
    let (prefactor_power, poly) = in_t.clear_poles();
    Ok(SecularPoly {
        j,
        prefactor_power,
        poly: poly.monic(),
    })
}

/// Independent dense-determinant evaluation at a rational point, by exact
/// Gaussian elimination with row pivoting. Cross-validates the three-term
/// recursion.
pub fn secular_eval_direct(
    reduced: &ReducedParams,
    x: &BigRational,
) -> Result<BigRational, SecularError> {
    if x.is_zero() {
        return Err(SecularError::ZeroEvaluationPoint);
    }
    let j = reduced.j();
    let dim = 2 * j;
    let interior = x + x.recip();
    let mut m = vec![vec![BigRational::zero(); dim]; dim];
    for i in 0..dim {
        m[i][i] = if i == 0 || i == dim - 1 {
            x.clone()
        } else {
            interior.clone()
        };
    }
    for i in 0..dim - 1 {
        let value = &reduced.values()[pair_index(j, i)];
        m[i][i + 1] = -BigRational::one() - value; // canonical gauge: -1 + p = -1 - value
        m[i + 1][i] = -BigRational::one();
    }

    let mut det = BigRational::one();
    for col in 0..dim {
        let pivot_row = match (col..dim).find(|&r| !m[r][col].is_zero()) {
            Some(r) => r,
            None => return Ok(BigRational::zero()),
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..dim {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..dim {
                let sub = &factor * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    Ok(det)
}
