//! Exact combinatorics for type-A highest-weight crystals.
//!
//! Crystal elements are semistandard Young tableaux. On top of the crystal
//! structure the crate computes BZL paths along the long word
//! `(1; 2,1; 3,2,1; ...)`, decorates them by two independent rules (one that
//! walks Kashiwara operators, one that reads statistics off the tableau),
//! and uses the resulting coefficients to check
//!
//! ```text
//! z^rho * s_lambda(z) * prod_{a>0} (1 - t z^{-a})  ==  sum_{b in B(lambda+rho)} C(b) z^{wt(b)}
//! ```
//!
//! exactly, with `t = 1/q`. The [`hpoly`] module groups the coefficients by
//! weight into deformed weight multiplicities and checks their
//! specializations at `t = 0, -1, 1` against independent oracles.

pub mod bzl;
pub mod cli;
pub mod crystal;
pub mod error;
pub mod format;
pub mod hpoly;
pub mod laurent;
pub mod par;
pub mod rootsys;
pub mod tableaux;
pub mod tpoly;

pub use error::{Error, Result};
