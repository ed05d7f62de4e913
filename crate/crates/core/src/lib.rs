//! Explicit ReLU network constructions with certified approximation errors.
//!
//! Nets are built in a skip-connected form ([`net::SkipNet`]) where every hidden
//! layer sees the input and the output reads every hidden unit. The
//! [`calculus`] module adds, composes, pads and converts such nets, the
//! [`builders`] produce nets for squares, products, monomials, polynomials and
//! analytic functions, and the [`verifier`] measures their errors.

pub mod builders;
pub mod calculus;
pub mod document;
pub mod error;
pub mod interval;
pub mod net;
pub mod verifier;

pub use error::{Error, Result};
pub use interval::{Hyperbox, Interval};
pub use net::{Network, SkipNet, StandardNet};
