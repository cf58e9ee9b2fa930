//! Executable versions of the classical density theorems for polynomials
//! and Müntz systems on `[0, 1]`.
//!
//! * [`weierstrass`]: the `√t` iteration, `|t|` approximants and the lattice
//!   trick for `max`/`min`, each with a checked error bound.
//! * [`gram`]: `L²` distances from `x^q` to monomial spans, by the Cauchy
//!   closed form and by exact Gram determinants.
//! * [`muntz`]: density diagnostics for exponent sequences.
//! * [`constructive`]: the explicit approximants `Q_n` with their sup-norm
//!   bound.
//! * [`primes`]: the Euler inequality and density of prime exponents.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod constructive;
pub mod error;
pub mod gram;
pub mod muntz;
pub mod poly;
pub mod primes;
pub mod quadrature;
pub mod report;
pub mod sequence;
pub mod weierstrass;

pub use constructive::{
    qn_coefficients, qn_convergence_report, qn_oracle, MuntzApproximant, QnOracle,
};
pub use error::{Error, Result};
pub use gram::{
    cauchy_determinant, distance_to_span, distance_via_gram_ratio, gram_determinant_bruteforce,
    project_l2, DistanceMethod, DistanceReport, GramMatrix, Projection,
};
pub use muntz::{density_check, distance_profile, product_sum_table, Density, DensityVerdict};
pub use poly::{pow, sup_norm_estimate, GeneralizedPolynomial, Grid, Interval, Term};
pub use primes::{
    euler_report, moment_vanishing_residual, prime_exponent_distance, primes_up_to, EulerReport,
    MomentProvider,
};
pub use quadrature::{integrate, Grading, QuadratureConfig};
pub use sequence::ExponentSequence;
pub use weierstrass::{
    abs_approximant, lattice_max_min, sqrt_error_certificate, sqrt_iterate, AbsApproximant,
    ErrorCertificate, LatticeMaxMin, SqrtIterate,
};
