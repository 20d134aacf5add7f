//! Exact arithmetic for `k`-th power Paley digraphs `G_k(q)`: finite fields
//! by Zech logarithms, multiplicative characters with values in
//! `Z[ζ_n]`, Jacobi sums and finite-field hypergeometric functions, and the
//! resulting counts of transitive subtournaments of orders 3 and 4.
//!
//! All character-sum quantities are computed exactly. Floating point only
//! appears in Gauss sums, which are checked against exact Jacobi sums.
//!
//! ```
//! use paley::ff::build_field_of_order;
//! use paley::formulas::{count, Method, ResidualMode};
//!
//! let f = build_field_of_order(11).unwrap();
//! let brute = count(&f, 2, 4, Method::Brute, ResidualMode::Full).unwrap();
//! let formula = count(&f, 2, 4, Method::Reduced, ResidualMode::Both).unwrap();
//! assert_eq!((brute, formula), (55, 55));
//! ```

pub mod chars;
pub mod cli;
pub mod cyclo;
pub mod digraph;
pub mod error;
pub mod ff;
pub mod formulas;
pub mod hyp;
pub mod orbits;
pub mod ramsey;
pub mod report;

pub use error::{Error, Result};
