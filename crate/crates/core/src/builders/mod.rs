//! Constructions of networks approximating squares, products, monomials,
//! polynomials and analytic functions, each with an error certificate.

mod analytic;
mod certificate;
mod construct;
mod poly;
mod presets;

pub use analytic::{build_analytic, theorem_depth, truncation_degree, AnalyticBuild};
pub use certificate::{
    analytic_bound, monomial_bound, multiply_bound, polynomial_bound, square_bound, BoundCertificate, CertParams, Lemma,
};
pub use construct::{build_monomial, build_multiply, build_polynomial, build_square, chain_width, Built};
pub use poly::{monomial_count, multi_indices, MultiIndex, PolySpec, SeriesSpec, TailBound};
pub use presets::Preset;
