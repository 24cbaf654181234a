//! Parallel drivers, output formats and the acceptance runner built on
//! [`hdirichlet_core`].

pub mod acceptance;
pub mod cache;
pub mod output;
pub mod parallel;
pub mod range;

pub use hdirichlet_core as core;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] hdirichlet_core::Error),
    #[error("invalid {what} `{input}`: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Environment variable overriding the default radial quadrature order.
pub const QUAD_ORDER_ENV: &str = "HDIRICHLET_QUAD_ORDER";

/// Radial quadrature order from [`QUAD_ORDER_ENV`], or the library default.
pub fn quadrature_order() -> Result<usize> {
    match std::env::var(QUAD_ORDER_ENV) {
        Ok(v) => {
            let order: usize = v.trim().parse().map_err(|e: std::num::ParseIntError| Error::Parse {
                what: QUAD_ORDER_ENV,
                input: v.clone(),
                reason: e.to_string(),
            })?;
            if order == 0 || order > hdirichlet_core::quadrature::MAX_ORDER {
                return Err(Error::Parse {
                    what: QUAD_ORDER_ENV,
                    input: v,
                    reason: format!("order must lie in 1..={}", hdirichlet_core::quadrature::MAX_ORDER),
                });
            }
            Ok(order)
        }
        Err(_) => Ok(hdirichlet_core::quadrature::DEFAULT_RADIAL_ORDER),
    }
}
