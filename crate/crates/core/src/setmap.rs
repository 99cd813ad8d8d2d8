//! Maps of finite sets `{0,..,m-1} -> {0,..,n-1}` with their kind
//! (injection, surjection, bijection) validated at construction.

use crate::error::{Error, Result};
use crate::partition::SetPartition;
use crate::perm::Perm;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Injection,
    Surjection,
    Bijection,
}

/// A total map `{0,..,source_size-1} -> {0,..,target_size-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetMap {
    values: Vec<usize>,
    target_size: usize,
}

impl SetMap {
    pub fn new(values: Vec<usize>, target_size: usize) -> Result<SetMap> {
        if values.iter().any(|&v| v >= target_size) {
            return Err(Error::invalid("map value out of range"));
        }
        Ok(SetMap {
            values,
            target_size,
        })
    }

    pub fn injection(values: Vec<usize>, target_size: usize) -> Result<SetMap> {
        let map = SetMap::new(values, target_size)?;
        if !map.is_injective() {
            return Err(Error::invalid("map is not injective"));
        }
        Ok(map)
    }

    pub fn surjection(values: Vec<usize>, target_size: usize) -> Result<SetMap> {
        let map = SetMap::new(values, target_size)?;
        if !map.is_surjective() {
            return Err(Error::invalid("map is not surjective"));
        }
        Ok(map)
    }

    /// The standard inclusion `{0,..,m-1} -> {0,..,n-1}`.
    pub fn inclusion(m: usize, n: usize) -> Result<SetMap> {
        if m > n {
            return Err(Error::invalid("inclusion needs m <= n"));
        }
        SetMap::new((0..m).collect(), n)
    }

    pub fn from_perm(p: &Perm) -> SetMap {
        SetMap {
            values: p.as_slice().to_vec(),
            target_size: p.degree(),
        }
    }

    pub fn source_size(&self) -> usize {
        self.values.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        self.values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        for &v in &self.values {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.values.len() == self.target_size && self.is_injective()
    }

    pub fn kind(&self) -> Option<MapKind> {
        match (self.is_injective(), self.is_surjective()) {
            (true, true) => Some(MapKind::Bijection),
            (true, false) => Some(MapKind::Injection),
            (false, true) => Some(MapKind::Surjection),
            (false, false) => None,
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &SetMap) -> Result<SetMap> {
        if other.target_size != self.values.len() {
            return Err(Error::invalid("composition sizes do not match"));
        }
        Ok(SetMap {
            values: other.values.iter().map(|&x| self.values[x]).collect(),
            target_size: self.target_size,
        })
    }

    /// Fibers `f^{-1}(j)` for `j` in the target, in target order.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.target_size];
        for (x, &v) in self.values.iter().enumerate() {
            fibers[v].push(x);
        }
        fibers
    }

    /// The fibers of a surjection as a set partition of the source.
    pub fn fiber_partition(&self) -> Result<SetPartition> {
        if !self.is_surjective() {
            return Err(Error::invalid("fiber partition needs a surjection"));
        }
        SetPartition::new(self.source_size(), self.fibers())
    }

    /// All sections of a surjection `f`: injections `g` with `f . g = id`.
    /// There are `prod_j |f^{-1}(j)|` of them.
    pub fn sections(&self) -> Result<Vec<SetMap>> {
        if !self.is_surjective() {
            return Err(Error::invalid("sections exist only for surjections"));
        }
        let fibers = self.fibers();
        let mut sections = vec![Vec::new()];
        for fiber in &fibers {
            let mut next = Vec::with_capacity(sections.len() * fiber.len());
            for partial in &sections {
                for &choice in fiber {
                    let mut p = partial.clone();
                    p.push(choice);
                    next.push(p);
                }
            }
            sections = next;
        }
        sections
            .into_iter()
            .map(|values| SetMap::injection(values, self.source_size()))
            .collect()
    }

    /// Number of sections without enumerating them.
    pub fn section_count(&self) -> Result<usize> {
        if !self.is_surjective() {
            return Err(Error::invalid("sections exist only for surjections"));
        }
        Ok(self.fibers().iter().map(|f| f.len()).product())
    }
}

/// The canonical surjection whose fibers are the given set partition,
/// blocks labeled by least element order.
pub fn surjection_of_partition(partition: &SetPartition) -> SetMap {
    let n = partition.ground_size();
    let mut values = vec![0usize; n];
    for (label, block) in partition.blocks().iter().enumerate() {
        for &x in block {
            values[x] = label;
        }
    }
    SetMap {
        values,
        target_size: partition.num_blocks(),
    }
}

/// The surjection `{0,..,n-1} -> {0,..,n-2}` merging `i` and `j` and keeping
/// all other elements in order.
pub fn merge_pair(n: usize, i: usize, j: usize) -> SetMap {
    assert!(i < n && j < n && i != j);
    let (i, j) = (i.min(j), i.max(j));
    let mut values = Vec::with_capacity(n);
    let mut next = 0usize;
    let mut label_of = vec![0usize; n];
    for x in 0..n {
        if x == j {
            continue;
        }
        label_of[x] = next;
        next += 1;
    }
    for x in 0..n {
        values.push(if x == j { label_of[i] } else { label_of[x] });
    }
    SetMap {
        values,
        target_size: n - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::set_partitions_with_blocks;

    #[test]
    fn kinds_are_validated() {
        assert!(SetMap::injection(vec![0, 0], 3).is_err());
        assert!(SetMap::surjection(vec![0, 2], 3).is_err());
        assert!(SetMap::injection(vec![2, 0], 3).is_ok());
        let f = SetMap::surjection(vec![0, 1, 0], 2).unwrap();
        assert_eq!(f.kind(), Some(MapKind::Surjection));
    }

    #[test]
    fn sections_compose_to_identity() {
        let f = SetMap::surjection(vec![0, 0, 1, 2, 1], 3).unwrap();
        let sections = f.sections().unwrap();
        assert_eq!(sections.len(), f.section_count().unwrap());
        assert_eq!(sections.len(), 2 * 2 * 1);
        for g in &sections {
            let fg = f.compose(g).unwrap();
            assert_eq!(fg.values(), &[0, 1, 2]);
        }
    }

    #[test]
    fn merge_pair_fibers() {
        let f = merge_pair(5, 1, 3);
        assert!(f.is_surjective());
        let fibers = f.fibers();
        assert!(fibers.contains(&vec![1, 3]));
        assert_eq!(fibers.iter().filter(|b| b.len() == 1).count(), 3);
    }

    #[test]
    fn surjections_of_partitions_are_canonical() {
        for sp in set_partitions_with_blocks(5, 3) {
            let f = surjection_of_partition(&sp);
            assert!(f.is_surjective());
            assert_eq!(f.fiber_partition().unwrap(), sp);
        }
    }
}
