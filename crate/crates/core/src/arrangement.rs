//! The matroid engine for the intrinsic arrangement of a hook module:
//! rank/closure over exact integers, flats, special flats, stability,
//! contraction and restriction, and exact enumeration of lines at small `n`.

use crate::combinat::{binomial, next_combination, SubsetIndexer};
use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::linalg::{primitive_integer, Eliminator, Int, RatMat};
use crate::partition::SetPartition;
use crate::perm::Perm;
use crate::setmap::SetMap;
use crate::specht::{build_hook_module, hyperplane_normal, Normal, SpechtModule};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use std::collections::{HashMap, HashSet};

/// Default cap on the number of subsets an exact enumeration may scan.
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;

/// A hyperplane `H_alpha` with its canonical normal vector.
#[derive(Debug, Clone)]
pub struct Hyperplane {
    pub alpha: Vec<usize>,
    pub normal: Normal,
}

/// A flat, identified by its closure key: the maximal set of hyperplane
/// indices whose intersection is the subspace. `dimension` is the
/// vector-space dimension (the matroidal corank), `size` the key length.
#[derive(Debug, Clone)]
pub struct Flat {
    key: Vec<usize>,
    dimension: usize,
    size: usize,
    stable: Option<bool>,
}

impl Flat {
    pub fn key(&self) -> &[usize] {
        &self.key
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// The paper's matroidal corank convention: the dimension of the flat.
    pub fn matroidal_corank(&self) -> usize {
        self.dimension
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn stable(&self) -> Option<bool> {
        self.stable
    }

    pub fn set_stable(&mut self, stable: bool) {
        self.stable = Some(stable);
    }

    /// The zero subspace.
    pub fn is_zero_subspace(&self) -> bool {
        self.dimension == 0
    }

    /// The whole module (closure of the empty set).
    pub fn is_full_space(&self) -> bool {
        self.size == 0
    }
}

impl PartialEq for Flat {
    fn eq(&self, other: &Flat) -> bool {
        self.key == other.key
    }
}
impl Eq for Flat {}
impl std::hash::Hash for Flat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}
impl PartialOrd for Flat {
    fn partial_cmp(&self, other: &Flat) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Flat {
    fn cmp(&self, other: &Flat) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

/// Exact rank/closure oracle over a list of integer rows.
#[derive(Debug, Clone)]
pub(crate) struct Geometry {
    width: usize,
    rows: Vec<Vec<Int>>,
}

impl Geometry {
    pub(crate) fn new(width: usize, rows: Vec<Vec<Int>>) -> Geometry {
        Geometry { width, rows }
    }

    pub(crate) fn len(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn row(&self, i: usize) -> &[Int] {
        &self.rows[i]
    }

    pub(crate) fn rank_of(&self, set: &[usize]) -> usize {
        let mut elim = Eliminator::new(self.width);
        for &i in set {
            elim.push(&self.rows[i]);
        }
        elim.rank()
    }

    /// Closure key and rank; the key is the set of rows in the span of `set`.
    pub(crate) fn closure_of(&self, set: &[usize]) -> (Vec<usize>, usize) {
        let mut elim = Eliminator::new(self.width);
        for &i in set {
            elim.push(&self.rows[i]);
        }
        let rank = elim.rank();
        let key = self.span_members(&mut elim);
        (key, rank)
    }

    fn span_members(&self, elim: &mut Eliminator) -> Vec<usize> {
        (0..self.rows.len())
            .filter(|&j| elim.in_span(&self.rows[j]))
            .collect()
    }

    /// All closed sets with their ranks, breadth-first from the closure of
    /// the empty set. Exponential in general; small inputs only.
    pub(crate) fn all_closed_sets(&self) -> Vec<(Vec<usize>, usize)> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        let (bottom, rank0) = self.closure_of(&[]);
        seen.insert(bottom.clone());
        let mut frontier = vec![(bottom.clone(), rank0)];
        out.push((bottom, rank0));
        while let Some((key, _rank)) = frontier.pop() {
            let members: HashSet<usize> = key.iter().copied().collect();
            for j in 0..self.rows.len() {
                if members.contains(&j) {
                    continue;
                }
                let mut gen = key.clone();
                gen.push(j);
                let (ck, cr) = self.closure_of(&gen);
                if seen.insert(ck.clone()) {
                    out.push((ck.clone(), cr));
                    frontier.push((ck, cr));
                }
            }
        }
        out.sort(); // deterministic order
        out
    }

    /// Atoms: parallel classes of rows. Returns (class of each row, #classes).
    pub(crate) fn parallel_classes(&self) -> (Vec<usize>, usize) {
        let mut class_of = vec![usize::MAX; self.rows.len()];
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..self.rows.len() {
            let mut found = None;
            for (c, &r) in reps.iter().enumerate() {
                let mut elim = Eliminator::new(self.width);
                elim.push(&self.rows[r]);
                if elim.in_span(&self.rows[i]) {
                    found = Some(c);
                    break;
                }
            }
            class_of[i] = match found {
                Some(c) => c,
                None => {
                    reps.push(i);
                    reps.len() - 1
                }
            };
        }
        (class_of, reps.len())
    }
}

/// The intrinsic arrangement of `S^{(n-l,1^l)}`: `C(n, l+1)` hyperplanes
/// indexed lexicographically by their (l+1)-subsets.
#[derive(Debug)]
pub struct Arrangement {
    module: SpechtModule,
    n: usize,
    l: usize,
    alpha_indexer: SubsetIndexer,
    hyperplanes: Vec<Hyperplane>,
    geometry: Geometry,
    pair_indexer: SubsetIndexer,
    pair_supersets: Vec<Vec<usize>>,
}

/// Build the arrangement for `n >= l + 2`, `l >= 1`.
pub fn build_arrangement(n: usize, l: usize) -> Result<Arrangement> {
    if l == 0 {
        return Err(Error::invalid("the arrangement needs l >= 1"));
    }
    let module = build_hook_module(n, l)?; // zero-module signal below threshold
    if n < l + 2 {
        return Err(Error::invalid(format!(
            "the arrangement needs n >= l + 2 (got n={n}, l={l})"
        )));
    }
    let alpha_indexer = SubsetIndexer::new(n, l + 1);
    let mut hyperplanes = Vec::with_capacity(alpha_indexer.count());
    let mut rows = Vec::with_capacity(alpha_indexer.count());
    for alpha in alpha_indexer.all() {
        let normal = hyperplane_normal(&module, &alpha)?;
        rows.push(normal.module.clone());
        hyperplanes.push(Hyperplane { alpha, normal });
    }
    let geometry = Geometry::new(module.dimension(), rows);
    // the arrangement is essential: the normals span the module
    let all: Vec<usize> = (0..geometry.len()).collect();
    assert_eq!(
        geometry.rank_of(&all),
        module.dimension(),
        "intrinsic arrangement must be essential"
    );
    let pair_indexer = SubsetIndexer::new(n, 2);
    let mut pair_supersets = vec![Vec::new(); pair_indexer.count()];
    for (idx, h) in hyperplanes.iter().enumerate() {
        for a in 0..h.alpha.len() {
            for b in (a + 1)..h.alpha.len() {
                let p = pair_indexer.rank(&[h.alpha[a], h.alpha[b]]);
                pair_supersets[p].push(idx);
            }
        }
    }
    Ok(Arrangement {
        module,
        n,
        l,
        alpha_indexer,
        hyperplanes,
        geometry,
        pair_indexer,
        pair_supersets,
    })
}

impl Arrangement {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> usize {
        self.l
    }

    pub fn module(&self) -> &SpechtModule {
        &self.module
    }

    /// Vector-space dimension of the ambient module.
    pub fn dimension(&self) -> usize {
        self.module.dimension()
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane_index(&self, alpha: &[usize]) -> Result<usize> {
        let mut a = alpha.to_vec();
        a.sort_unstable();
        a.dedup();
        if a.len() != self.l + 1 || a.iter().any(|&x| x >= self.n) {
            return Err(Error::invalid("not a valid hyperplane label"));
        }
        Ok(self.alpha_indexer.rank(&a))
    }

    fn check_indices(&self, set: &[usize]) -> Result<()> {
        if let Some(&bad) = set.iter().find(|&&i| i >= self.hyperplanes.len()) {
            return Err(Error::invalid(format!("hyperplane index {bad} out of range")));
        }
        Ok(())
    }

    /// Matroid rank of a set of hyperplanes (rank of their normals).
    pub fn rank(&self, set: &[usize]) -> Result<usize> {
        self.check_indices(set)?;
        Ok(self.geometry.rank_of(set))
    }

    /// The flat spanned by a set of hyperplanes: its maximal hyperplane set
    /// and dimension. The empty set closes to the full-space flat.
    pub fn closure(&self, set: &[usize]) -> Result<Flat> {
        self.check_indices(set)?;
        let (key, rank) = self.geometry.closure_of(set);
        Ok(self.flat_from_key_rank(key, rank))
    }

    fn flat_from_key_rank(&self, key: Vec<usize>, rank: usize) -> Flat {
        let size = key.len();
        Flat {
            key,
            dimension: self.dimension() - rank,
            size,
            stable: None,
        }
    }

    /// Hyperplane indices whose sets meet some fiber of `f` in two or more
    /// elements, i.e. `|f(alpha)| < l + 1`.
    pub fn merged_hyperplanes(&self, f: &SetMap) -> Result<Vec<usize>> {
        if f.source_size() != self.n {
            return Err(Error::invalid("surjection source must match n"));
        }
        Ok((0..self.hyperplanes.len())
            .filter(|&i| {
                let alpha = &self.hyperplanes[i].alpha;
                let mut img: Vec<usize> = alpha.iter().map(|&x| f.apply(x)).collect();
                img.sort_unstable();
                img.dedup();
                img.len() < self.l + 1
            })
            .collect())
    }

    /// The special flat `F_f` of a surjection `f`: the intersection of all
    /// hyperplanes `H_alpha` with `|f(alpha)| < l + 1`, equal to the subspace
    /// fixed by every permutation within a fiber of `f`. For `m < l + 1`
    /// this degenerates to the zero subspace (dimension 0).
    pub fn special_flat(&self, f: &SetMap) -> Result<Flat> {
        if !f.is_surjective() {
            return Err(Error::invalid("special flats come from surjections"));
        }
        let generators = self.merged_hyperplanes(f)?;
        self.closure(&generators)
    }

    pub fn special_flat_of_partition(&self, part: &SetPartition) -> Result<Flat> {
        self.special_flat(&crate::setmap::surjection_of_partition(part))
    }

    /// Combinatorial stability test: a flat is stable iff some pair `{i,j}`
    /// has every hyperplane containing it inside the closure key, which is
    /// exactly containment in the special flat merging `i` and `j`.
    pub fn is_stable(&self, flat: &Flat) -> bool {
        let mut member = vec![false; self.hyperplanes.len()];
        for &i in &flat.key {
            member[i] = true;
        }
        (0..self.pair_indexer.count()).any(|p| {
            let sup = &self.pair_supersets[p];
            !sup.is_empty() && sup.iter().all(|&i| member[i])
        })
    }

    /// The permutation induced on hyperplane indices by `sigma`.
    pub fn index_permutation(&self, sigma: &Perm) -> Vec<usize> {
        self.hyperplanes
            .iter()
            .map(|h| {
                let mut image: Vec<usize> = h.alpha.iter().map(|&x| sigma.apply(x)).collect();
                image.sort_unstable();
                self.alpha_indexer.rank(&image)
            })
            .collect()
    }

    /// Exhaustively enumerate the dimension-1 flats. Every line is the
    /// closure of an independent `(dim - 1)`-subset, so all such subsets are
    /// scanned (in parallel) and their closures deduplicated; stability tags
    /// are filled in. Errors out when the scan would exceed `budget`.
    pub fn enumerate_lines(&self, budget: u64) -> Result<Vec<Flat>> {
        let dim = self.dimension();
        if dim < 2 {
            return Err(Error::invalid("no lines: module dimension below 2"));
        }
        let draw = dim - 1;
        let h = self.hyperplanes.len();
        let total = binomial(h, draw);
        if total > budget as u128 {
            return Err(Error::BudgetExceeded {
                needed: total,
                budget,
                hint: "exact line enumeration is infeasible here; use the line sampler instead"
                    .into(),
            });
        }
        let total = total as usize;
        let indexer = SubsetIndexer::new(h, draw);
        let chunk = 4096usize;
        let nchunks = total.div_ceil(chunk);
        let merged: HashMap<Vec<usize>, Flat> = (0..nchunks)
            .into_par_iter()
            .map(|ci| {
                let start = ci * chunk;
                let end = total.min(start + chunk);
                let mut subset = indexer.unrank(start);
                let mut local: HashMap<Vec<usize>, Flat> = HashMap::new();
                for r in start..end {
                    if r > start {
                        next_combination(&mut subset, h);
                    }
                    let mut elim = Eliminator::new(self.geometry.width);
                    for &i in &subset {
                        elim.push(self.geometry.row(i));
                    }
                    if elim.rank() != draw {
                        continue;
                    }
                    let key = self.geometry.span_members(&mut elim);
                    if !local.contains_key(&key) {
                        let mut flat = self.flat_from_key_rank(key.clone(), draw);
                        flat.set_stable(self.is_stable(&flat));
                        local.insert(key, flat);
                    }
                }
                local
            })
            .reduce(HashMap::new, |mut a, b| {
                a.extend(b);
                a
            });
        let mut lines: Vec<Flat> = merged.into_values().collect();
        lines.sort();
        Ok(lines)
    }

    /// Closures of single hyperplanes, deduplicated.
    pub fn enumerate_rank1_flats(&self) -> Vec<Flat> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        for i in 0..self.hyperplanes.len() {
            let (key, rank) = self.geometry.closure_of(&[i]);
            if seen.insert(key.clone()) {
                out.push(self.flat_from_key_rank(key, rank));
            }
        }
        out.sort();
        out
    }

    /// Full flat enumeration (small instances).
    pub fn all_flats(&self) -> Vec<Flat> {
        self.geometry
            .all_closed_sets()
            .into_iter()
            .map(|(key, rank)| self.flat_from_key_rank(key, rank))
            .collect()
    }

    /// The lattice of flats, fully enumerated.
    pub fn lattice(&self) -> FlatLattice {
        FlatLattice::from_geometry(&self.geometry)
    }

    /// Basis (columns, module coordinates) of the subspace of a flat.
    pub fn flat_basis(&self, flat: &Flat) -> RatMat {
        self.subspace_basis(&flat.key)
    }

    fn subspace_basis(&self, key: &[usize]) -> RatMat {
        let dim = self.dimension();
        if key.is_empty() {
            return RatMat::identity(dim);
        }
        // constraints <n_i, x> = n_i^T G x = 0
        let gram = RatMat::from_int_rows(self.module.gram());
        let normals = RatMat::from_int_rows(
            &key.iter()
                .map(|&i| self.hyperplanes[i].normal.module.clone())
                .collect::<Vec<_>>(),
        );
        let system = normals.mul(&gram);
        let kernel = system.kernel_basis();
        let mut basis = RatMat::zero(dim, kernel.len());
        for (j, k) in kernel.iter().enumerate() {
            for (i, x) in k.iter().enumerate() {
                basis[(i, j)] = x.clone();
            }
        }
        basis
    }

    /// Contract onto a flat: the arrangement induced on the subspace, whose
    /// lattice is the order ideal of flats contained in it. Hyperplanes that
    /// restrict to the same functional on the subspace are merged.
    pub fn contraction(&self, flat: &Flat) -> Result<Contraction> {
        let basis = self.flat_basis(flat);
        let ambient_dim = basis.ncols();
        let gram = RatMat::from_int_rows(self.module.gram());
        let in_key: HashSet<usize> = flat.key.iter().copied().collect();
        let mut classes: Vec<ContractionHyperplane> = Vec::new();
        let mut lookup: HashMap<Vec<Int>, usize> = HashMap::new();
        let mut class_of_original: HashMap<usize, usize> = HashMap::new();
        for (i, h) in self.hyperplanes.iter().enumerate() {
            if in_key.contains(&i) {
                continue;
            }
            let normal = RatMat::from_int_rows(&[h.normal.module.clone()]);
            let functional_mat = normal.mul(&gram).mul(&basis); // 1 x ambient_dim
            let functional: Vec<_> = (0..ambient_dim)
                .map(|j| functional_mat[(0, j)].clone())
                .collect();
            let primitive = primitive_integer(&functional).ok_or_else(|| {
                Error::invalid("hyperplane unexpectedly vanishes on the flat")
            })?;
            let as_int: Vec<Int> = primitive
                .iter()
                .map(|b| {
                    b.to_i128()
                        .ok_or_else(|| Error::invalid("contraction functional overflow"))
                })
                .collect::<Result<_>>()?;
            let class = match lookup.get(&as_int) {
                Some(&c) => c,
                None => {
                    let c = classes.len();
                    lookup.insert(as_int.clone(), c);
                    classes.push(ContractionHyperplane {
                        functional: as_int,
                        members: Vec::new(),
                    });
                    c
                }
            };
            classes[class].members.push(i);
            class_of_original.insert(i, class);
        }
        // deterministic order: by least original member
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by_key(|&c| classes[c].members[0]);
        let mut renumber = vec![0usize; classes.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let mut sorted_classes: Vec<ContractionHyperplane> =
            order.iter().map(|&c| classes[c].clone()).collect();
        for c in sorted_classes.iter_mut() {
            c.members.sort_unstable();
        }
        for v in class_of_original.values_mut() {
            *v = renumber[*v];
        }
        let rows: Vec<Vec<Int>> = sorted_classes.iter().map(|c| c.functional.clone()).collect();
        Ok(Contraction {
            ambient_dim,
            classes: sorted_classes,
            class_of_original,
            geometry: Geometry::new(ambient_dim, rows),
        })
    }

    /// Restrict to a flat: the arrangement on the quotient, whose flats are
    /// the flats of this arrangement containing the given one, i.e. the
    /// closed subsets of its key.
    pub fn restriction(&self, flat: &Flat) -> Restriction<'_> {
        Restriction {
            arrangement: self,
            ground: flat.key.clone(),
        }
    }
}

/// A merged hyperplane of a contraction: its functional on the flat basis
/// and the original hyperplane indices that restrict to it.
#[derive(Debug, Clone)]
pub struct ContractionHyperplane {
    pub functional: Vec<Int>,
    pub members: Vec<usize>,
}

/// An arrangement induced on a flat.
pub struct Contraction {
    ambient_dim: usize,
    classes: Vec<ContractionHyperplane>,
    class_of_original: HashMap<usize, usize>,
    geometry: Geometry,
}

impl Contraction {
    pub fn ambient_dimension(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.classes.len()
    }

    pub fn hyperplanes(&self) -> &[ContractionHyperplane] {
        &self.classes
    }

    /// Which contracted hyperplane an original hyperplane restricts to
    /// (none when the original contains the flat).
    pub fn class_of_original(&self, original: usize) -> Option<usize> {
        self.class_of_original.get(&original).copied()
    }

    pub fn rank(&self, set: &[usize]) -> usize {
        self.geometry.rank_of(set)
    }

    pub fn all_flats(&self) -> Vec<(Vec<usize>, usize)> {
        self.geometry.all_closed_sets()
    }

    pub fn lattice(&self) -> FlatLattice {
        FlatLattice::from_geometry(&self.geometry)
    }
}

/// An arrangement restricted to a flat (keys stay in original indices).
pub struct Restriction<'a> {
    arrangement: &'a Arrangement,
    ground: Vec<usize>,
}

impl Restriction<'_> {
    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.ground.len()
    }

    /// Rank of the quotient ambient space.
    pub fn ambient_rank(&self) -> usize {
        self.arrangement.geometry.rank_of(&self.ground)
    }

    /// All flats of the restriction: the closed sets contained in the ground
    /// key, i.e. the flats of the parent containing the flat restricted to.
    pub fn all_flats(&self) -> Vec<Flat> {
        let rows: Vec<Vec<Int>> = self
            .ground
            .iter()
            .map(|&i| self.arrangement.geometry.row(i).to_vec())
            .collect();
        let sub = Geometry::new(self.arrangement.geometry.width, rows);
        sub.all_closed_sets()
            .into_iter()
            .map(|(local_key, rank)| {
                let key: Vec<usize> = local_key.iter().map(|&i| self.ground[i]).collect();
                self.arrangement.flat_from_key_rank(key, rank)
            })
            .collect()
    }

    pub fn lattice(&self) -> FlatLattice {
        let rows: Vec<Vec<Int>> = self
            .ground
            .iter()
            .map(|&i| self.arrangement.geometry.row(i).to_vec())
            .collect();
        FlatLattice::from_geometry(&Geometry::new(self.arrangement.geometry.width, rows))
    }
}
