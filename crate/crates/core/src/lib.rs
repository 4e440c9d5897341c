//! Exact spectral machinery for a PT-symmetric discrete Schrödinger operator
//! with a `2J`-parameter nearest-neighbor coupling.
//!
//! The operator acts on two-sided sequences and differs from the free
//! discrete Laplacean only on the `2J` bonds nearest the center; the bond
//! asymmetry makes it non-Hermitian but symmetric about its antidiagonal
//! (PT-symmetric). Bound states below the continuum are obtained by matching
//! exponential tails to the interior recurrence, which reduces the problem
//! to a `2J`-dimensional determinant — the secular polynomial in the
//! variable `t = exp(2φ)` where `E = 2 - 2 cosh φ`.
//!
//! The crate is organized around that pipeline:
//!
//! - [`algebra`]: arbitrary-precision rationals, sparse multivariate
//!   polynomials over the reduced couplings, univariate and Laurent
//!   polynomials with numeric or rational-function coefficients, Sturm-chain
//!   root isolation.
//! - [`model`]: raw/reduced coupling bookkeeping, truncated lattice
//!   Hamiltonians, the PT structural check, the energy map.
//! - [`secular`]: the matching matrix and its normalized determinant.
//! - [`sturmian`]: the square-root factorization `N² - t(1+u)D² = P`, the
//!   rational function `f = N/D`, partial fractions, finite J-fraction
//!   coefficients, and the intersection-shape classification.
//! - [`spectrum`]: bound-state roots, wavefunction reconstruction, parameter
//!   domain scans, boundary extraction, and the continuum-edge probe.
//! - [`oracle`]: independent brute-force validation against eigenvalues of
//!   large truncated lattices.
//!
//! Everything upstream of root refinement is exact rational arithmetic;
//! floating point enters only where a numerical root or eigenvalue is the
//! deliverable.

pub mod algebra;
pub mod model;
pub mod oracle;
pub mod secular;
pub mod spectrum;
pub mod sturmian;

pub use algebra::{
    coef::Coef,
    laurent::LaurentPoly,
    multipoly::{multipoly_gcd, Monomial, MultiPoly, Var},
    poly::Poly,
    rational::{parse_rational, rational_to_f64, BigRational},
    roots::{refine_root, sturm_isolate, Bracket},
    AlgebraError,
};
pub use model::{
    build_truncated, embed, energy_of_t, phi_of_t, pt_check, reduce, t_of_energy, ModelError,
    RawParams, ReducedParams, TruncatedHamiltonian,
};
pub use oracle::{char_eval, convergence_study, eigen_below_continuum, OracleReport};
pub use secular::{
    matching_matrix, matching_matrix_symbolic, secular_eval_direct, secular_laurent,
    secular_laurent_symbolic, secular_poly, secular_poly_symbolic, MatchingMatrix, SecularError,
    SecularPoly,
};
pub use spectrum::{
    bound_states, boundary_extract, domain_scan, perturbative_probe, wavefunction, Axis,
    BoundState, DomainGrid, PlaneSpace, ProbeReport, SpectrumError, Wavefunction,
};
pub use sturmian::{
    f_rational, f_rational_symbolic, factorize, jfraction, partial_fractions, shape_classify,
    sturmian_coupling, JFraction, PartialFractions, RatFunc, ShapeClassification, SturmianError,
};
