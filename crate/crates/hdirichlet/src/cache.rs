//! Process-wide memo of the Bergman coefficients `I_m(s)`, shared across threads.

use crate::Result;
use hdirichlet_core::ballgeom::BallPoint;
use hdirichlet_core::kernels::{bergman_kernel_series, BergmanCoefficients, KernelEvaluation};
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

type Key = (usize, u64, usize);

/// Memo keyed by `(n, s, quadrature order)`; readers share, the first writer
/// for a key fills it.
#[derive(Debug, Default)]
pub struct CoefficientCache {
    table: RwLock<HashMap<Key, Arc<BergmanCoefficients>>>,
}

impl CoefficientCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Coefficients for `(n, s)` covering modes `0..=max_mode`.
    pub fn coefficients(&self, n: usize, s: f64, order: usize, max_mode: usize) -> Result<Arc<BergmanCoefficients>> {
        let key = (n, s.to_bits(), order);
        if let Some(c) = self.table.read().expect("cache lock").get(&key) {
            if c.values().len() > max_mode {
                return Ok(Arc::clone(c));
            }
        }
        let mut table = self.table.write().expect("cache lock");
        let mut entry = match table.get(&key) {
            Some(c) => (**c).clone(),
            None => BergmanCoefficients::with_order(n, s, order)?,
        };
        entry.ensure(max_mode)?;
        let entry = Arc::new(entry);
        table.insert(key, Arc::clone(&entry));
        Ok(entry)
    }

    /// The truncated Bergman kernel through the memo.
    pub fn bergman_kernel(
        &self,
        s: f64,
        order: usize,
        x: &BallPoint,
        y: &BallPoint,
        truncation: usize,
    ) -> Result<KernelEvaluation> {
        let n = x.dim();
        let shared = self.coefficients(n, s, order, truncation)?;
        let mut local = (*shared).clone();
        let k = bergman_kernel_series(&mut local, x, y, truncation)?;
        if local.values().len() > shared.values().len() {
            self.table
                .write()
                .expect("cache lock")
                .insert((n, s.to_bits(), order), Arc::new(local));
        }
        Ok(k)
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hdirichlet_core::coefficients::coeff_quadrature;

    #[test]
    fn shared_values_match_direct_quadrature() {
        let cache = CoefficientCache::new();
        let c = cache.coefficients(4, 0.5, 128, 6).unwrap();
        assert_eq!(cache.len(), 1);
        let direct = coeff_quadrature(4, 6, 0.5).unwrap().value().unwrap();
        assert_eq!(c.get(6).unwrap(), direct);
        let again = cache.coefficients(4, 0.5, 128, 3).unwrap();
        assert!(Arc::ptr_eq(&c, &again));
    }

    #[test]
    fn concurrent_kernel_evaluations_agree() {
        let cache = CoefficientCache::new();
        let x = BallPoint::new(vec![0.2, 0.1, 0.0]).unwrap();
        let y = BallPoint::new(vec![0.0, 0.4, 0.3]).unwrap();
        let values: Vec<f64> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..4)
                .map(|_| scope.spawn(|| cache.bergman_kernel(0.0, 64, &x, &y, 25).unwrap().value))
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert!(values.windows(2).all(|w| w[0] == w[1]));
    }
}
