use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::lattice::LineBundleLattice;
use crate::ratcurve::{section_space, SectionSpace};

/// `R = ⊕_{L ∈ Λ} H⁰(X, O(L))`, with a memo table of components.
///
/// The cache is the only mutable state. Concurrent fills are harmless: two
/// threads computing the same component insert identical values.
#[derive(Debug)]
pub struct GradedSectionAlgebra {
    lattice: Arc<LineBundleLattice>,
    cache: RwLock<HashMap<Vec<i64>, Arc<SectionSpace>>>,
}

impl GradedSectionAlgebra {
    pub fn new(lattice: Arc<LineBundleLattice>) -> Self {
        GradedSectionAlgebra { lattice, cache: RwLock::new(HashMap::new()) }
    }

    pub fn lattice(&self) -> &Arc<LineBundleLattice> {
        &self.lattice
    }

    pub fn component(&self, l: &[i64]) -> Arc<SectionSpace> {
        assert_eq!(l.len(), self.lattice.rank(), "lattice element of the wrong rank");
        if let Some(s) = self.cache.read().expect("cache lock").get(l) {
            return Arc::clone(s);
        }
        let space = Arc::new(section_space(self.lattice.curve(), &self.lattice.divisor(l)));
        self.cache.write().expect("cache lock").entry(l.to_vec()).or_insert(space).clone()
    }

    pub fn cached_components(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }
}
