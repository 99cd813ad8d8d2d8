//! Lattices of flats on the level of atoms, and a rank-preserving
//! isomorphism test for small fully enumerated lattices.

use crate::arrangement::Geometry;
use crate::error::{Error, Result};
use std::collections::{HashMap, HashSet};

/// A flat expressed by the atoms (parallel classes of hyperplanes) below it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeFlat {
    pub atoms: Vec<usize>,
    pub rank: usize,
}

/// A fully enumerated lattice of flats over `num_atoms` atoms.
#[derive(Debug, Clone)]
pub struct FlatLattice {
    num_atoms: usize,
    flats: Vec<LatticeFlat>,
    complete: bool,
}

impl FlatLattice {
    pub(crate) fn from_geometry(geometry: &Geometry) -> FlatLattice {
        let (class_of, num_atoms) = geometry.parallel_classes();
        let mut flats: Vec<LatticeFlat> = geometry
            .all_closed_sets()
            .into_iter()
            .map(|(key, rank)| {
                let mut atoms: Vec<usize> = key.iter().map(|&i| class_of[i]).collect();
                atoms.sort_unstable();
                atoms.dedup();
                LatticeFlat { atoms, rank }
            })
            .collect();
        flats.sort_by(|x, y| (x.rank, &x.atoms).cmp(&(y.rank, &y.atoms)));
        FlatLattice {
            num_atoms,
            flats,
            complete: true,
        }
    }

    /// Assemble a lattice from parts; used to mark partial enumerations.
    pub fn from_parts(num_atoms: usize, flats: Vec<LatticeFlat>, complete: bool) -> FlatLattice {
        FlatLattice {
            num_atoms,
            flats,
            complete,
        }
    }

    pub fn num_atoms(&self) -> usize {
        self.num_atoms
    }

    pub fn num_flats(&self) -> usize {
        self.flats.len()
    }

    pub fn flats(&self) -> &[LatticeFlat] {
        &self.flats
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Count of flats per matroid rank.
    pub fn rank_profile(&self) -> Vec<(usize, usize)> {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for f in &self.flats {
            *counts.entry(f.rank).or_default() += 1;
        }
        let mut out: Vec<(usize, usize)> = counts.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Relabel atoms through a bijection (used in tests).
    pub fn relabeled(&self, image: &[usize]) -> FlatLattice {
        assert_eq!(image.len(), self.num_atoms);
        let flats = self
            .flats
            .iter()
            .map(|f| {
                let mut atoms: Vec<usize> = f.atoms.iter().map(|&a| image[a]).collect();
                atoms.sort_unstable();
                LatticeFlat {
                    atoms,
                    rank: f.rank,
                }
            })
            .collect();
        FlatLattice {
            num_atoms: self.num_atoms,
            flats,
            complete: self.complete,
        }
    }

    /// `(rank, atom count)` of the join of each atom pair.
    fn pair_join_table(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.num_atoms;
        let mut table = vec![vec![(usize::MAX, usize::MAX); n]; n];
        for x in 0..n {
            for y in 0..n {
                let mut best: Option<&LatticeFlat> = None;
                for f in &self.flats {
                    if f.atoms.contains(&x) && f.atoms.contains(&y) {
                        if best.is_none_or(|b| f.rank < b.rank) {
                            best = Some(f);
                        }
                    }
                }
                if let Some(f) = best {
                    table[x][y] = (f.rank, f.atoms.len());
                }
            }
        }
        table
    }

    /// Multiset signature of each atom: (rank, size) over flats containing it.
    fn atom_signatures(&self) -> Vec<Vec<(usize, usize)>> {
        let mut sigs = vec![Vec::new(); self.num_atoms];
        for f in &self.flats {
            for &a in &f.atoms {
                sigs[a].push((f.rank, f.atoms.len()));
            }
        }
        for s in sigs.iter_mut() {
            s.sort_unstable();
        }
        sigs
    }
}

/// Rank-preserving order isomorphism test: a bijection of atoms carrying the
/// closed-set family of `a` onto that of `b`. Backtracking with signature
/// and pairwise-join pruning; rejects lattices not fully enumerated.
pub fn lattice_isomorphic(a: &FlatLattice, b: &FlatLattice) -> Result<bool> {
    if !a.is_complete() || !b.is_complete() {
        return Err(Error::invalid(
            "lattice isomorphism needs fully enumerated lattices",
        ));
    }
    if a.num_atoms != b.num_atoms || a.flats.len() != b.flats.len() {
        return Ok(false);
    }
    if a.rank_profile() != b.rank_profile() {
        return Ok(false);
    }
    let mut size_profile_a: Vec<(usize, usize)> =
        a.flats.iter().map(|f| (f.rank, f.atoms.len())).collect();
    let mut size_profile_b: Vec<(usize, usize)> =
        b.flats.iter().map(|f| (f.rank, f.atoms.len())).collect();
    size_profile_a.sort_unstable();
    size_profile_b.sort_unstable();
    if size_profile_a != size_profile_b {
        return Ok(false);
    }
    let sigs_a = a.atom_signatures();
    let sigs_b = b.atom_signatures();
    let pairs_a = a.pair_join_table();
    let pairs_b = b.pair_join_table();
    let target: HashSet<(Vec<usize>, usize)> = b
        .flats
        .iter()
        .map(|f| (f.atoms.clone(), f.rank))
        .collect();

    let n = a.num_atoms;
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn backtrack(
        k: usize,
        n: usize,
        image: &mut [usize],
        used: &mut [bool],
        sigs_a: &[Vec<(usize, usize)>],
        sigs_b: &[Vec<(usize, usize)>],
        pairs_a: &[Vec<(usize, usize)>],
        pairs_b: &[Vec<(usize, usize)>],
        a: &FlatLattice,
        target: &HashSet<(Vec<usize>, usize)>,
    ) -> bool {
        if k == n {
            return a.flats.iter().all(|f| {
                let mut atoms: Vec<usize> = f.atoms.iter().map(|&x| image[x]).collect();
                atoms.sort_unstable();
                target.contains(&(atoms, f.rank))
            });
        }
        for c in 0..n {
            if used[c] || sigs_a[k] != sigs_b[c] {
                continue;
            }
            if (0..k).any(|x| pairs_a[x][k] != pairs_b[image[x]][c]) {
                continue;
            }
            image[k] = c;
            used[c] = true;
            if backtrack(k + 1, n, image, used, sigs_a, sigs_b, pairs_a, pairs_b, a, target) {
                return true;
            }
            used[c] = false;
            image[k] = usize::MAX;
        }
        false
    }

    Ok(backtrack(
        0, n, &mut image, &mut used, &sigs_a, &sigs_b, &pairs_a, &pairs_b, a, &target,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::build_arrangement;

    #[test]
    fn lattice_of_n4_is_self_isomorphic_after_relabeling() {
        let arr = build_arrangement(4, 2).unwrap();
        let lat = arr.lattice();
        // 1 bottom + 4 hyperplanes + 6 lines + 1 zero flat
        assert_eq!(lat.num_flats(), 12);
        assert_eq!(lat.num_atoms(), 4);
        let relabeled = lat.relabeled(&[2, 0, 3, 1]);
        assert!(lattice_isomorphic(&lat, &relabeled).unwrap());
    }

    #[test]
    fn different_hyperplane_counts_are_not_isomorphic() {
        let hook = build_arrangement(4, 2).unwrap().lattice();
        let braid = build_arrangement(4, 1).unwrap().lattice();
        assert_eq!(braid.num_atoms(), 6);
        assert!(!lattice_isomorphic(&hook, &braid).unwrap());
    }

    #[test]
    fn partial_lattices_are_rejected() {
        let arr = build_arrangement(4, 2).unwrap();
        let lat = arr.lattice();
        let partial = FlatLattice::from_parts(lat.num_atoms(), lat.flats().to_vec(), false);
        assert!(lattice_isomorphic(&lat, &partial).is_err());
    }
}
