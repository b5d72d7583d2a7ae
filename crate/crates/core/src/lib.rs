//! Exact combinatorial invariants of Newton polyhedra.
//!
//! Given the support of a polynomial germ with generic coefficients, this
//! crate computes singularity invariants purely from the Newton polyhedron
//! `Γ₊(f)`: the Γ-spectrum and its defect part, the full spectrum of
//! isolated three-variable singularities by two independent routes, the
//! Hodge spectrum of certain non-isolated surface singularities, monodromy
//! zeta data, spectral pairs and Jordan-block counts.
//!
//! All arithmetic is exact: integer coefficients are arbitrary precision and
//! exponents are exact rationals, so every identity here either holds on the
//! nose or fails loudly. Where the underlying combinatorics offers two ways
//! to compute the same quantity, both are computed and compared at runtime.
//!
//! ```
//! use nspec_core::newton::NewtonPolyhedron;
//! use nspec_core::polyparse::parse_polynomial;
//! use nspec_core::spectrum::spectrum_isolated;
//!
//! let support = parse_polynomial("x^4 + y^4 + z^4 + x*y*z").unwrap();
//! let poly = NewtonPolyhedron::build(&support);
//! let report = spectrum_isolated(&poly).unwrap();
//! assert_eq!(report.mu, 11.into());
//! assert_eq!(
//!     report.sp.to_string(),
//!     "t + 3*t^(5/4) + 3*t^(3/2) + 3*t^(7/4) + t^2",
//! );
//! ```

pub mod corpus;
pub mod error;
pub mod facepoly;
pub mod fracpoly;
pub mod hodge;
mod linalg;
pub mod newton;
pub mod pairs;
pub mod polyparse;
pub mod spectrum;
pub mod zeta;

pub use error::{Error, ErrorKind, Result};

#[cfg(doctest)]
mod book;
