//! Exact truncated power series, ordinary and exponential Riordan arrays,
//! and constructive tools for pseudo-involutions and their B-functions.
//!
//! ```
//! use riordan::families::make_family_with;
//! use riordan::fps::rat;
//!
//! let cat = make_family_with("catalan", &[], 12).unwrap();
//! let b = riordan::riordan::b_function_from_f(&cat.f).unwrap();
//! assert_eq!(b.b.coeffs()[..3], [rat(3), rat(1), rat(0)]);
//! ```

pub mod exponential;
pub mod expr;
pub mod families;
pub mod fps;
pub mod laurent;
pub mod matrix;
pub mod oeis;
pub mod poly;
pub mod riordan;
pub mod theorems;

pub use exponential::ExpRiordanArray;
pub use fps::{Rat, Series, SeriesError};
pub use laurent::{LaurentPoly, LaurentRational};
pub use matrix::TriMatrix;
pub use poly::Poly;
pub use riordan::{BReport, RiordanArray};
