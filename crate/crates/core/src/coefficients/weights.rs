//! Expansion weights `c_{j,k}(m)` of `(2x)^k` in the rising factorials
//! `(x + m/2)_j`.

use crate::specfun::pochhammer;
use alloc::vec::Vec;

/// `c_{j,k}(m) = (m)_j / j! * nabla^j (2y - m)^k |_{y=0}` for `j = 0..=k`,
/// with `nabla p(y) = p(y) - p(y-1)`.
///
/// They satisfy `(2x)^k = sum_j c_{j,k}(m) / (m)_j * (x + m/2)_j`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DiffWeights {
    pub m: usize,
    pub k: usize,
    pub weights: Vec<f64>,
    /// `nabla^j (2y - m)^k |_{y=0}`, exact.
    pub differences: Vec<i128>,
}

pub fn diff_weights(m: usize, k: usize) -> DiffWeights {
    // p(-i) = (-(2i + m))^k
    let samples: Vec<i128> = (0..=k)
        .map(|i| {
            let base = -((2 * i + m) as i128);
            base.pow(k as u32)
        })
        .collect();
    let mut differences = Vec::with_capacity(k + 1);
    let mut fact = 1.0f64;
    let mut weights = Vec::with_capacity(k + 1);
    for j in 0..=k {
        // nabla^j p(0) = sum_i (-1)^i C(j,i) p(-i)
        let mut d = 0i128;
        let mut binom = 1i128;
        for (i, &p) in samples.iter().enumerate().take(j + 1) {
            let term = binom * p;
            d += if i % 2 == 0 { term } else { -term };
            binom = binom * (j - i) as i128 / (i + 1) as i128;
        }
        if j > 0 {
            fact *= j as f64;
        }
        differences.push(d);
        weights.push(pochhammer(m as f64, j) * (d as f64) / fact);
    }
    DiffWeights {
        m,
        k,
        weights,
        differences,
    }
}

impl DiffWeights {
    /// `sum_j c_{j,k}(m)/(m)_j (x + m/2)_j`; should equal `(2x)^k`.
    pub fn reconstruct(&self, x: f64) -> f64 {
        let mf = self.m as f64;
        let mut fact = 1.0;
        let mut acc = 0.0;
        for (j, &d) in self.differences.iter().enumerate() {
            if j > 0 {
                fact *= j as f64;
            }
            acc += d as f64 / fact * pochhammer(x + mf / 2.0, j);
        }
        acc
    }
}
