//! Shared context: parameters plus read-shared caches of representations and
//! Clebsch–Gordan decompositions.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::clebsch::{decompose_with, Decomposition};
use crate::error::Result;
use crate::params::{Params, RepIndex};
use crate::reps::{build_rep, Rep, Sign};

#[derive(Debug)]
pub struct QuantumGroup {
    params: Params,
    reps: RwLock<HashMap<RepIndex, Arc<Rep>>>,
    decompositions: RwLock<HashMap<(u32, u32), Arc<Decomposition>>>,
}

impl QuantumGroup {
    pub fn new(params: Params) -> Self {
        Self { params, reps: RwLock::default(), decompositions: RwLock::default() }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// `pi_n`, built once and shared.
    pub fn rep(&self, n: RepIndex) -> Result<Arc<Rep>> {
        if let Some(r) = self.reps.read().expect("rep cache poisoned").get(&n) {
            return Ok(r.clone());
        }
        let built = Arc::new(build_rep(&self.params, n, Sign::Plus)?);
        let mut cache = self.reps.write().expect("rep cache poisoned");
        Ok(cache.entry(n).or_insert(built).clone())
    }

    /// Memoized decomposition of `(pi_n (x) pi_m) Delta`.
    pub fn decompose(&self, n: RepIndex, m: RepIndex) -> Result<Arc<Decomposition>> {
        let key = (n.twice(), m.twice());
        if let Some(d) = self.decompositions.read().expect("cg cache poisoned").get(&key) {
            return Ok(d.clone());
        }
        let (left, right) = (self.rep(n)?, self.rep(m)?);
        let built = decompose_with(&self.params, &left, &right, |k| Ok((*self.rep(k)?).clone()))?;
        let mut cache = self.decompositions.write().expect("cg cache poisoned");
        // First writer wins so every reader sees the same isometries.
        Ok(cache.entry(key).or_insert_with(|| Arc::new(built)).clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_is_shared_across_threads() {
        let qg = Arc::new(QuantumGroup::new(Params::new(0.3).unwrap()));
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let qg = qg.clone();
                std::thread::spawn(move || qg.decompose(RepIndex::HALF, RepIndex::from_twice(2)).unwrap())
            })
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        let first = qg.decompose(RepIndex::HALF, RepIndex::from_twice(2)).unwrap();
        for r in results {
            assert!(Arc::ptr_eq(&r, &first));
        }
    }
}
