//! Exact computation of the generalized r-Lah polynomials `G_{a,b}(n,k;r)`,
//! exhaustive verification of their identities, and executable versions of
//! the sign-reversing involutions and bijection that prove the classical
//! r-Lah convolution formulas.
//!
//! Module map:
//! - [`poly`]: sparse integer polynomials in `a, b, x, t`
//! - [`lah`]: the recurrence triangle and its specializations
//! - [`distributions`]: r-Lah distributions, record-low statistics, brute-force oracle
//! - [`identities`]: identity checks and parameter sweeps
//! - [`bijections`]: the involutions and the bijection on nested configurations
//! - [`exec`]: rayon-backed map with a sequential fallback

pub mod bijections;
pub mod combinat;
pub mod distributions;
pub mod error;
pub mod exec;
pub mod identities;
pub mod lah;
pub mod poly;

pub use error::{Error, Result};
pub use lah::{LahTriangle, TriangleCache, Weights};
pub use poly::{Monomial, Polynomial, Var};
