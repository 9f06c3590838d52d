//! Report generation behind the `scarfrel` binary. Every command renders to a
//! `String` so output can be tested byte for byte.

pub mod commands;
pub mod specfile;

use thiserror::Error;

pub use commands::{BoundsRow, Options};
pub use specfile::{PointSource, SystemSpec};

#[derive(Debug, Error)]
pub enum CliError {
    /// The input description is malformed or inconsistent.
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    /// Bad command-line arguments.
    #[error("{0}")]
    Usage(String),
    /// The analysis itself could not be carried out.
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidSpec(_) | CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

/// Probability rendered with 12 significant digits.
pub fn fmt_prob(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000000".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // rounding can carry into a new leading digit, e.g. 0.99999999999996
        if s.trim_start_matches('-').replace('.', "").trim_start_matches('0').len() > 12 {
            format!("{x:.prec$}", prec = decimals.saturating_sub(1))
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}
