//! Linearization of the central limit operator `T μ = (μ ⋆ μ) ∘ S_{1/√2}` in
//! classical (`⋆ = ∗`) and free (`⋆ = ⊞`) probability.
//!
//! The crate has two layers:
//!
//! * an exact layer ([`algebra`], [`partitions`], [`cumulants`], [`clt`],
//!   [`special`]) working over Q[√2], where every identity is checked without
//!   tolerance;
//! * a floating-point layer ([`analytic`]) for Cauchy transforms, functional
//!   inversion, R-transforms and Stieltjes inversion.
//!
//! [`wire`] holds the text and JSON formats shared with the command line tool.

// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod analytic;
pub mod clt;
pub mod cumulants;
pub mod error;
pub mod partitions;
pub mod special;
pub mod wire;

pub use algebra::{PowerSeries, QSqrt2, Rational};
pub use cumulants::{Kind, Sequence};
pub use error::{Error, Result};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Which convolution the central limit operator uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Ordinary convolution; cumulants over all set partitions.
    Classical,
    /// Free additive convolution; cumulants over noncrossing partitions.
    Free,
}

impl Flavor {
    pub const ALL: [Flavor; 2] = [Flavor::Classical, Flavor::Free];

    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Classical => "classical",
            Flavor::Free => "free",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(Flavor::Classical),
            "free" => Ok(Flavor::Free),
            other => Err(Error::InvalidArgument(format!(
                "unknown flavor `{other}` (expected classical or free)"
            ))),
        }
    }
}
