//! Hand-transcribed reference polynomials for the golden tests: the printed
//! secular polynomials, factorization pairs, partial fractions and
//! continued-fraction coefficients, built term by term with explicit
//! constructors (never through the pipeline under test).

#![allow(dead_code)]

use ptsturm::algebra::coef::Coef;
use ptsturm::algebra::multipoly::{MultiPoly, Var};
use ptsturm::algebra::poly::Poly;
use ptsturm::BigRational;

pub use Var::{M, N, U, V, W, Y, Z};

/// Sum of integer-coefficient monomials.
pub fn mp(terms: &[(i64, &[(Var, u16)])]) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for &(k, powers) in terms {
        acc = &acc + &MultiPoly::term(BigRational::from_integer(k.into()), powers);
    }
    acc
}

pub fn coef(terms: &[(i64, &[(Var, u16)])]) -> Coef {
    Coef::from_poly(mp(terms))
}

/// Polynomial in `t` from ascending coefficient term lists.
pub fn poly(coeffs: &[&[(i64, &[(Var, u16)])]]) -> Poly {
    Poly::new('t', coeffs.iter().map(|c| coef(c)).collect())
}

/// `t² - (1+u+2v) t + v²`.
pub fn secular_j2() -> Poly {
    poly(&[
        &[(1, &[(V, 2)])],
        &[(-1, &[]), (-1, &[(U, 1)]), (-2, &[(V, 1)])],
        &[(1, &[])],
    ])
}

/// `t⁴ - (1+u+2v+2w) t³ + (2uw+(v+w)²) t² + (w²(1-u)+2vw) t + w²`.
pub fn secular_j3() -> Poly {
    poly(&[
        &[(1, &[(W, 2)])],
        &[(1, &[(W, 2)]), (-1, &[(U, 1), (W, 2)]), (2, &[(V, 1), (W, 1)])],
        &[
            (2, &[(U, 1), (W, 1)]),
            (1, &[(V, 2)]),
            (2, &[(V, 1), (W, 1)]),
            (1, &[(W, 2)]),
        ],
        &[
            (-1, &[]),
            (-1, &[(U, 1)]),
            (-2, &[(V, 1)]),
            (-2, &[(W, 1)]),
        ],
        &[(1, &[])],
    ])
}

/// The degree-six form printed for the eight-coupling chain.
pub fn secular_j4() -> Poly {
    poly(&[
        // t^0: y²
        &[(1, &[(Y, 2)])],
        // t^1: -2y²v + 2wy - y²u + y²
        &[
            (-2, &[(Y, 2), (V, 1)]),
            (2, &[(W, 1), (Y, 1)]),
            (-1, &[(Y, 2), (U, 1)]),
            (1, &[(Y, 2)]),
        ],
        // t^2: 2wy + y² + y²v² - 2wvy - 2wuy - 2y²u + w² + 2vy - 2y²v
        &[
            (2, &[(W, 1), (Y, 1)]),
            (1, &[(Y, 2)]),
            (1, &[(Y, 2), (V, 2)]),
            (-2, &[(W, 1), (V, 1), (Y, 1)]),
            (-2, &[(W, 1), (U, 1), (Y, 1)]),
            (-2, &[(Y, 2), (U, 1)]),
            (1, &[(W, 2)]),
            (2, &[(V, 1), (Y, 1)]),
            (-2, &[(Y, 2), (V, 1)]),
        ],
        // t^3: -y²u + y² - 2wvy - w²u - 2wuy + 2uy + 2wy - 2y²v - 2v²y
        //      + 2vy + 2vw + w²
        &[
            (-1, &[(Y, 2), (U, 1)]),
            (1, &[(Y, 2)]),
            (-2, &[(W, 1), (V, 1), (Y, 1)]),
            (-1, &[(W, 2), (U, 1)]),
            (-2, &[(W, 1), (U, 1), (Y, 1)]),
            (2, &[(U, 1), (Y, 1)]),
            (2, &[(W, 1), (Y, 1)]),
            (-2, &[(Y, 2), (V, 1)]),
            (-2, &[(V, 2), (Y, 1)]),
            (2, &[(V, 1), (Y, 1)]),
            (2, &[(V, 1), (W, 1)]),
            (1, &[(W, 2)]),
        ],
        // t^4: 2wy + 4vy + 2uw + v² + 2uy + w² + 2vw + y²
        &[
            (2, &[(W, 1), (Y, 1)]),
            (4, &[(V, 1), (Y, 1)]),
            (2, &[(U, 1), (W, 1)]),
            (1, &[(V, 2)]),
            (2, &[(U, 1), (Y, 1)]),
            (1, &[(W, 2)]),
            (2, &[(V, 1), (W, 1)]),
            (1, &[(Y, 2)]),
        ],
        // t^5: -1 - 2w - 2y - u - 2v
        &[
            (-1, &[]),
            (-2, &[(W, 1)]),
            (-2, &[(Y, 1)]),
            (-1, &[(U, 1)]),
            (-2, &[(V, 1)]),
        ],
        // t^6
        &[(1, &[])],
    ])
}

/// `N₃ = t² - (v+w)t - w`.
pub fn n_j3() -> Poly {
    poly(&[
        &[(-1, &[(W, 1)])],
        &[(-1, &[(V, 1)]), (-1, &[(W, 1)])],
        &[(1, &[])],
    ])
}

/// `D₃ = t - w`.
pub fn d_j3() -> Poly {
    poly(&[&[(-1, &[(W, 1)])], &[(1, &[])]])
}

/// `N₄`: the parenthesized cubic `-y - ty + tyv - t²y - t²v + t³ - tw - t²w`
/// collected by powers of `t`.
pub fn n_j4() -> Poly {
    poly(&[
        &[(-1, &[(Y, 1)])],
        &[(-1, &[(Y, 1)]), (1, &[(Y, 1), (V, 1)]), (-1, &[(W, 1)])],
        &[(-1, &[(Y, 1)]), (-1, &[(V, 1)]), (-1, &[(W, 1)])],
        &[(1, &[])],
    ])
}

/// `D₄ = t² - (w+y)t - y`.
pub fn d_j4() -> Poly {
    poly(&[
        &[(-1, &[(Y, 1)])],
        &[(-1, &[(W, 1)]), (-1, &[(Y, 1)])],
        &[(1, &[])],
    ])
}

/// The printed degree-six numerator of `f₇` (leading coefficient `-1`;
/// the pipeline's monic `N₇` is its negative).
pub fn n_j7_printed() -> Poly {
    poly(&[
        // t^0: n
        &[(1, &[(N, 1)])],
        // t^1: n - nv - nw - ny + m - nz
        &[
            (1, &[(N, 1)]),
            (-1, &[(N, 1), (V, 1)]),
            (-1, &[(N, 1), (W, 1)]),
            (-1, &[(N, 1), (Y, 1)]),
            (1, &[(M, 1)]),
            (-1, &[(N, 1), (Z, 1)]),
        ],
        // t^2: vnz - my + wnz + n - 2nw + m + vny + z - 2ny - nv - nz - mv - mw
        &[
            (1, &[(V, 1), (N, 1), (Z, 1)]),
            (-1, &[(M, 1), (Y, 1)]),
            (1, &[(W, 1), (N, 1), (Z, 1)]),
            (1, &[(N, 1)]),
            (-2, &[(N, 1), (W, 1)]),
            (1, &[(M, 1)]),
            (1, &[(V, 1), (N, 1), (Y, 1)]),
            (1, &[(Z, 1)]),
            (-2, &[(N, 1), (Y, 1)]),
            (-1, &[(N, 1), (V, 1)]),
            (-1, &[(N, 1), (Z, 1)]),
            (-1, &[(M, 1), (V, 1)]),
            (-1, &[(M, 1), (W, 1)]),
        ],
        // t^3: -wz - 2nw - vz + vnz + n - my + vny + y + z - 2ny
        //      + wnz - nz - 2mw - mv + m + mvy - nv
        &[
            (-1, &[(W, 1), (Z, 1)]),
            (-2, &[(N, 1), (W, 1)]),
            (-1, &[(V, 1), (Z, 1)]),
            (1, &[(V, 1), (N, 1), (Z, 1)]),
            (1, &[(N, 1)]),
            (-1, &[(M, 1), (Y, 1)]),
            (1, &[(V, 1), (N, 1), (Y, 1)]),
            (1, &[(Y, 1)]),
            (1, &[(Z, 1)]),
            (-2, &[(N, 1), (Y, 1)]),
            (1, &[(W, 1), (N, 1), (Z, 1)]),
            (-1, &[(N, 1), (Z, 1)]),
            (-2, &[(M, 1), (W, 1)]),
            (-1, &[(M, 1), (V, 1)]),
            (1, &[(M, 1)]),
            (1, &[(M, 1), (V, 1), (Y, 1)]),
            (-1, &[(N, 1), (V, 1)]),
        ],
        // t^4: -my - nw - nv - yv - ny + m - vz + y - mv - mw - wz + w - nz + n + z
        &[
            (-1, &[(M, 1), (Y, 1)]),
            (-1, &[(N, 1), (W, 1)]),
            (-1, &[(N, 1), (V, 1)]),
            (-1, &[(Y, 1), (V, 1)]),
            (-1, &[(N, 1), (Y, 1)]),
            (1, &[(M, 1)]),
            (-1, &[(V, 1), (Z, 1)]),
            (1, &[(Y, 1)]),
            (-1, &[(M, 1), (V, 1)]),
            (-1, &[(M, 1), (W, 1)]),
            (-1, &[(W, 1), (Z, 1)]),
            (1, &[(W, 1)]),
            (-1, &[(N, 1), (Z, 1)]),
            (1, &[(N, 1)]),
            (1, &[(Z, 1)]),
        ],
        // t^5: w + m + y + n + z + v
        &[
            (1, &[(W, 1)]),
            (1, &[(M, 1)]),
            (1, &[(Y, 1)]),
            (1, &[(N, 1)]),
            (1, &[(Z, 1)]),
            (1, &[(V, 1)]),
        ],
        // t^6: -1
        &[(-1, &[])],
    ])
}

/// The printed degree-five denominator of `f₇`.
pub fn d_j7_printed() -> Poly {
    poly(&[
        // t^0: -n
        &[(-1, &[(N, 1)])],
        // t^1: -m - n + nw + nz + ny
        &[
            (-1, &[(M, 1)]),
            (-1, &[(N, 1)]),
            (1, &[(N, 1), (W, 1)]),
            (1, &[(N, 1), (Z, 1)]),
            (1, &[(N, 1), (Y, 1)]),
        ],
        // t^2: -m + my + mw - wnz - n + 2ny + nw - z + nz
        &[
            (-1, &[(M, 1)]),
            (1, &[(M, 1), (Y, 1)]),
            (1, &[(M, 1), (W, 1)]),
            (-1, &[(W, 1), (N, 1), (Z, 1)]),
            (-1, &[(N, 1)]),
            (2, &[(N, 1), (Y, 1)]),
            (1, &[(N, 1), (W, 1)]),
            (-1, &[(Z, 1)]),
            (1, &[(N, 1), (Z, 1)]),
        ],
        // t^3: my + wz + ny - z + mw - y - m - n + nw + nz
        &[
            (1, &[(M, 1), (Y, 1)]),
            (1, &[(W, 1), (Z, 1)]),
            (1, &[(N, 1), (Y, 1)]),
            (-1, &[(Z, 1)]),
            (1, &[(M, 1), (W, 1)]),
            (-1, &[(Y, 1)]),
            (-1, &[(M, 1)]),
            (-1, &[(N, 1)]),
            (1, &[(N, 1), (W, 1)]),
            (1, &[(N, 1), (Z, 1)]),
        ],
        // t^4: -y - z - w - m - n
        &[
            (-1, &[(Y, 1)]),
            (-1, &[(Z, 1)]),
            (-1, &[(W, 1)]),
            (-1, &[(M, 1)]),
            (-1, &[(N, 1)]),
        ],
        // t^5
        &[(1, &[])],
    ])
}

/// `A₀ = v`.
pub fn jfrac_a0() -> Coef {
    coef(&[(1, &[(V, 1)])])
}

/// `B₁ = (1+v)w`.
pub fn jfrac_b1() -> Coef {
    coef(&[(1, &[(W, 1)]), (1, &[(V, 1), (W, 1)])])
}

/// `A₁ = w + y + y/w`.
pub fn jfrac_a1() -> Coef {
    let num = mp(&[(1, &[(W, 2)]), (1, &[(W, 1), (Y, 1)]), (1, &[(Y, 1)])]);
    Coef::make(num, mp(&[(1, &[(W, 1)])]))
}

/// `B̃₂ = -(1+w)y²/w²`.
pub fn jfrac_b2_tilded() -> Coef {
    let num = mp(&[(-1, &[(Y, 2)]), (-1, &[(W, 1), (Y, 2)])]);
    Coef::make(num, mp(&[(1, &[(W, 2)])]))
}

/// `Ã₂ = -y/w`.
pub fn jfrac_a2_tilded() -> Coef {
    Coef::make(mp(&[(-1, &[(Y, 1)])]), mp(&[(1, &[(W, 1)])]))
}

/// `B₂ = -(1+w)(y²-(1+y)wz)/w²`, the complete five-coupling form. The
/// printed display carries the opposite overall sign, which contradicts
/// both the printed tilded value and the stated `z → 0` compatibility;
/// this is the self-consistent sign.
pub fn jfrac_b2_full() -> Coef {
    let one_plus_w = mp(&[(1, &[]), (1, &[(W, 1)])]);
    let inner = mp(&[
        (1, &[(Y, 2)]),
        (-1, &[(W, 1), (Z, 1)]),
        (-1, &[(Y, 1), (W, 1), (Z, 1)]),
    ]);
    let num = -&(&one_plus_w * &inner);
    Coef::make(num, mp(&[(1, &[(W, 2)])]))
}

/// `A₂ = -y/w + z + (yz-(1+y)(1+z)wm)/(y²-wz(1+y))`, the complete
/// six-coupling form.
pub fn jfrac_a2_full() -> Coef {
    let y_over_w = Coef::make(mp(&[(-1, &[(Y, 1)])]), mp(&[(1, &[(W, 1)])]));
    let z = coef(&[(1, &[(Z, 1)])]);
    let frac_num = mp(&[
        (1, &[(Y, 1), (Z, 1)]),
        (-1, &[(W, 1), (M, 1)]),
        (-1, &[(Y, 1), (W, 1), (M, 1)]),
        (-1, &[(Z, 1), (W, 1), (M, 1)]),
        (-1, &[(Y, 1), (Z, 1), (W, 1), (M, 1)]),
    ]);
    let frac_den = mp(&[
        (1, &[(Y, 2)]),
        (-1, &[(W, 1), (Z, 1)]),
        (-1, &[(W, 1), (Z, 1), (Y, 1)]),
    ]);
    &(&y_over_w + &z) + &Coef::make(frac_num, frac_den)
}

/// Partial fraction of `f₃`: `t - v - (1+v)w/(t-w)`.
pub fn pf_j3() -> (Coef, Poly, Poly) {
    (jfrac_a0(), Poly::constant('t', jfrac_b1()), d_j3())
}

/// Partial fraction of `f₄`: `t - v - (y + tw + yv + tvw)/(t² - (w+y)t - y)`.
pub fn pf_j4() -> (Coef, Poly, Poly) {
    let remainder = poly(&[
        &[(1, &[(Y, 1)]), (1, &[(Y, 1), (V, 1)])],
        &[(1, &[(W, 1)]), (1, &[(V, 1), (W, 1)])],
    ]);
    (jfrac_a0(), remainder, d_j4())
}
