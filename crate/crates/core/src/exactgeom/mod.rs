//! Exact rational linear algebra and polyhedral geometry.

pub mod cone;
pub mod linalg;
pub mod lp;
pub mod vector;

pub use cone::{
    conic_combination, conic_member, convex_combination, dual_cone, extreme_filter, hull_member,
    polar_ball, BallRep, ConeRep, HullMode,
};
pub use linalg::{
    image_kernel_basis, in_span, kernel_basis, left_kernel, rank, rank_of, rref, solve_in_span,
};
pub use lp::{feasible, LinearSystem};
pub use vector::{
    fmt_rational, parse_rational, parse_vector, rat, ratio, rational_json, Rational,
    RationalMatrix, RationalVector,
};
