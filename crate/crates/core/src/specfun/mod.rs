//! Special functions: the gamma family, rising factorials, hypergeometric
//! series and Gegenbauer polynomials, plus the summation drivers behind them.

pub mod gamma;
mod gegenbauer;
mod hyper;
mod pochhammer;
pub mod series;

pub use gamma::{
    beta, d_recip_gamma, digamma, gamma, gamma_family, gamma_ratio, ln_gamma, ln_gamma_ratio, ln_gamma_signed,
    recip_gamma, GammaBundle, EULER_GAMMA,
};
pub use gegenbauer::gegenbauer;
pub use hyper::{hyp2f1, hyp3f2_unit, hyp_pfq, HypergeometricTerm};
pub use pochhammer::{ln_pochhammer, pochhammer};
