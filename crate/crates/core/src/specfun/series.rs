//! Summation drivers for the series that show up everywhere in this crate.
//!
//! Two regimes occur. Geometric convergence (hypergeometric series at
//! `|t| < 1`) is summed directly until the terms are negligible. Algebraic
//! convergence (series at unit argument, the `[e]`-derivative series of the
//! continued coefficients) is summed with Richardson extrapolation of the
//! partial sums at `K_0, 2K_0, 4K_0, ...`, which removes the tail terms
//! `K^-p, K^-(p+1), ...` one at a time.

use crate::math::{powf, KahanSum};
use crate::{Error, Result};

/// Relative size below which a term counts as negligible.
pub const TERM_TOLERANCE: f64 = 1e-16;
/// Consecutive negligible terms required before a sum is declared converged.
pub const RUN_LENGTH: usize = 10;

/// Sums terms produced by `next` until `RUN_LENGTH` consecutive terms fall
/// below `TERM_TOLERANCE` relative to the partial sum.
///
/// `next` returns `None` once the series has terminated.
pub fn sum_geometric<F>(mut next: F, max_terms: usize) -> Result<f64>
where
    F: FnMut() -> Option<f64>,
{
    let mut acc = KahanSum::new();
    let mut quiet = 0;
    for _ in 0..max_terms {
        let Some(term) = next() else {
            return Ok(acc.value());
        };
        if !term.is_finite() {
            return Err(Error::NoConvergence("non-finite term"));
        }
        acc.add(term);
        let scale = acc.value().abs();
        if term.abs() <= TERM_TOLERANCE * scale || (term == 0.0 && scale == 0.0) {
            quiet += 1;
            if quiet >= RUN_LENGTH {
                return Ok(acc.value());
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NoConvergence("term budget exhausted"))
}

/// Outcome of an extrapolated sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: f64,
    /// Difference between the two best neighbouring tableau entries.
    pub error: f64,
    pub terms: usize,
}

/// Richardson-extrapolated sum of an algebraically convergent series.
///
/// The tail after `K` terms must behave like `K^-p (d_0 + d_1/K + ...)` with
/// `p = first_exponent > 0`. Partial sums are recorded at `start * 2^i`,
/// `i = 0..=levels`, and the exponents `p, p+1, ...` are eliminated in turn.
/// A terminating series (`next` returns `None`) is summed exactly, and the
/// summation stops early once two successive tableaux agree to rounding.
pub fn sum_algebraic<F>(next: F, first_exponent: f64, start: usize, levels: usize) -> Result<Extrapolated>
where
    F: FnMut() -> Option<f64>,
{
    sum_algebraic_to(next, first_exponent, start, levels, 4.0 * f64::EPSILON)
}

/// As [`sum_algebraic`], stopping once the extrapolation error estimate
/// falls below `tolerance` relative to the value at two successive levels.
pub fn sum_algebraic_to<F>(
    mut next: F,
    first_exponent: f64,
    start: usize,
    levels: usize,
    tolerance: f64,
) -> Result<Extrapolated>
where
    F: FnMut() -> Option<f64>,
{
    debug_assert!(first_exponent > 0.0 && start > 0 && levels > 0);
    let mut acc = KahanSum::new();
    let mut partial = alloc::vec::Vec::with_capacity(levels + 1);
    let mut count = 0usize;
    let mut checkpoint = start;
    // all-zero tails (e.g. finite sums that never report termination)
    let mut zero_run = 0usize;
    let mut settled = 0;
    while partial.len() <= levels {
        match next() {
            None => {
                return Ok(Extrapolated {
                    value: acc.value(),
                    error: 0.0,
                    terms: count,
                })
            }
            Some(t) => {
                if !t.is_finite() {
                    return Err(Error::NoConvergence("non-finite term"));
                }
                zero_run = if t == 0.0 { zero_run + 1 } else { 0 };
                acc.add(t);
                count += 1;
            }
        }
        if count == checkpoint {
            partial.push(acc.value());
            checkpoint *= 2;
            if partial.len() >= 5 {
                let r = richardson(&partial, first_exponent, count);
                settled = if r.error <= tolerance * r.value.abs() {
                    settled + 1
                } else {
                    0
                };
                if settled >= 2 {
                    return Ok(r);
                }
            }
        }
        if zero_run > 4 * start && partial.len() > 1 {
            // the remaining terms all vanish; the partial sum is exact
            return Ok(Extrapolated {
                value: acc.value(),
                error: 0.0,
                terms: count,
            });
        }
    }
    Ok(richardson(&partial, first_exponent, count))
}

fn richardson(partial: &[f64], first_exponent: f64, terms: usize) -> Extrapolated {
    let n = partial.len();
    let mut row = partial.to_vec();
    let mut best = Extrapolated {
        value: row[n - 1],
        error: (row[n - 1] - row[n - 2]).abs(),
        terms,
    };
    for j in 0..n - 1 {
        let factor = powf(2.0, first_exponent + j as f64) - 1.0;
        let mut next = alloc::vec::Vec::with_capacity(row.len() - 1);
        for i in 1..row.len() {
            next.push(row[i] + (row[i] - row[i - 1]) / factor);
        }
        row = next;
        if row.len() >= 2 {
            let err = (row[row.len() - 1] - row[row.len() - 2]).abs();
            if err < best.error {
                best = Extrapolated {
                    value: row[row.len() - 1],
                    error: err,
                    terms,
                };
            }
        }
    }
    best
}
