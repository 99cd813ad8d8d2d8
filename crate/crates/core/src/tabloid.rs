//! The tabloid presentation of Specht modules: the general-shape route used
//! as a correctness oracle at small `n`.
//!
//! `M^lambda` is the free module on tabloids (row-equivalence classes of
//! bijective fillings); the Specht module is the span of the polytabloids
//! `v_T = sum over sigma in C(T) of sgn(sigma) {sigma T}`, with the standard
//! polytabloids as a basis. Everything here is dense exact arithmetic, so
//! construction is guarded to small `n`.

use crate::combinat::sort_with_sign;
use crate::error::{Error, Result};
use crate::linalg::{rat, Int, RatMat};
use crate::partition::{pad, Partition, SetPartition};
use crate::perm::{all_perms, Perm};
use crate::specht::SpechtModule;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::HashMap;

/// A bijective filling of the Young diagram of a partition of `n` with
/// `{0,..,n-1}`; `rows[i]` lists the entries of row `i` left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filling {
    rows: Vec<Vec<usize>>,
}

impl Filling {
    pub fn new(shape: &Partition, rows: Vec<Vec<usize>>) -> Result<Filling> {
        let n = shape.size();
        if rows.len() != shape.num_rows()
            || rows
                .iter()
                .zip(shape.parts())
                .any(|(r, &len)| r.len() != len)
        {
            return Err(Error::invalid("filling does not match the diagram"));
        }
        let mut seen = vec![false; n];
        for &x in rows.iter().flatten() {
            if x >= n || seen[x] {
                return Err(Error::invalid("filling must assign {0,..,n-1} bijectively"));
            }
            seen[x] = true;
        }
        Ok(Filling { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Entries of column `c`, top to bottom.
    pub fn column(&self, c: usize) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.len() > c)
            .map(|r| r[c])
            .collect()
    }
}

/// A tabloid: rows as sets, in row order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tabloid {
    rows: Vec<Vec<usize>>,
}

impl Tabloid {
    pub fn of_filling(f: &Filling) -> Tabloid {
        let mut rows = f.rows.clone();
        for r in rows.iter_mut() {
            r.sort_unstable();
        }
        Tabloid { rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    fn permuted(&self, sigma: &Perm) -> Tabloid {
        let mut rows: Vec<Vec<usize>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| sigma.apply(x)).collect())
            .collect();
        for r in rows.iter_mut() {
            r.sort_unstable();
        }
        Tabloid { rows }
    }
}

/// The tabloid module `M^lambda` for a full shape (a partition of `n`),
/// together with the Specht subspace spanned by standard polytabloids.
pub struct TabloidModel {
    shape: Partition,
    n: usize,
    tabloids: Vec<Tabloid>,
    index: HashMap<Tabloid, usize>,
    standard_fillings: Vec<Filling>,
    specht_basis: RatMat, // tabloid_dim x specht_dim, columns are polytabloids
}

impl TabloidModel {
    pub fn new(shape: &Partition) -> Result<TabloidModel> {
        let n = shape.size();
        if n == 0 {
            return Err(Error::invalid("empty shape"));
        }
        let tabloids = enumerate_tabloids(shape);
        let index: HashMap<Tabloid, usize> = tabloids
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let standard_fillings = standard_young_fillings(shape);
        let mut model = TabloidModel {
            shape: shape.clone(),
            n,
            tabloids,
            index,
            standard_fillings,
            specht_basis: RatMat::zero(0, 0),
        };
        let mut basis = RatMat::zero(model.tabloids.len(), model.standard_fillings.len());
        for (j, f) in model.standard_fillings.iter().enumerate() {
            let v = model.polytabloid_dense(f)?;
            for (i, &c) in v.iter().enumerate() {
                if c != 0 {
                    basis[(i, j)] = rat(c as i64);
                }
            }
        }
        // the standard polytabloids are independent; check it anyway since
        // everything downstream trusts this matrix as a basis
        if basis.rank() != basis.ncols() {
            return Err(Error::invalid("standard polytabloids failed to be independent"));
        }
        model.specht_basis = basis;
        Ok(model)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tabloid_dimension(&self) -> usize {
        self.tabloids.len()
    }

    pub fn specht_dimension(&self) -> usize {
        self.specht_basis.ncols()
    }

    pub fn tabloids(&self) -> &[Tabloid] {
        &self.tabloids
    }

    pub fn tabloid_index(&self, t: &Tabloid) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn specht_basis(&self) -> &RatMat {
        &self.specht_basis
    }

    /// The polytabloid `v_T` in tabloid coordinates.
    pub fn polytabloid(&self, filling: &Filling) -> Result<Vec<(Tabloid, Int)>> {
        let dense = self.polytabloid_dense(filling)?;
        Ok(dense
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .map(|(i, c)| (self.tabloids[i].clone(), c))
            .collect())
    }

    fn polytabloid_dense(&self, filling: &Filling) -> Result<Vec<Int>> {
        // validate against our shape
        let filling = Filling::new(&self.shape, filling.rows.clone())?;
        let mut out = vec![0 as Int; self.tabloids.len()];
        for sigma in column_group(&filling) {
            let moved = Tabloid::of_filling(&filling).permuted(&sigma);
            let idx = self.index[&moved];
            out[idx] += sigma.sign() as Int;
        }
        Ok(out)
    }

    /// Permutation action on `M^lambda` (a permutation matrix).
    pub fn action_matrix(&self, sigma: &Perm) -> RatMat {
        assert_eq!(sigma.degree(), self.n);
        let mut m = RatMat::zero(self.tabloids.len(), self.tabloids.len());
        for (j, t) in self.tabloids.iter().enumerate() {
            let i = self.index[&t.permuted(sigma)];
            m[(i, j)] = rat(1);
        }
        m
    }

    /// Basis (columns, tabloid coordinates) of the fixed space of `sigma`
    /// inside the Specht subspace.
    pub fn fixed_space(&self, sigma: &Perm) -> RatMat {
        let p = self.action_matrix(sigma);
        let pb = p.mul(&self.specht_basis);
        // solve (P - I) B c = 0
        let mut diff = pb.clone();
        for i in 0..diff.nrows() {
            for j in 0..diff.ncols() {
                let t = self.specht_basis[(i, j)].clone();
                diff[(i, j)] -= t;
            }
        }
        let kernel = diff.kernel_basis();
        let mut coeffs = RatMat::zero(self.specht_basis.ncols(), kernel.len());
        for (j, k) in kernel.iter().enumerate() {
            for (i, x) in k.iter().enumerate() {
                coeffs[(i, j)] = x.clone();
            }
        }
        self.specht_basis.mul(&coeffs)
    }

    /// Basis of the sum of fixed spaces of the given permutations, inside the
    /// Specht subspace (tabloid coordinates).
    pub fn fixed_space_sum(&self, perms: &[Perm]) -> RatMat {
        let parts: Vec<RatMat> = perms.iter().map(|p| self.fixed_space(p)).collect();
        let refs: Vec<&RatMat> = parts.iter().collect();
        RatMat::hstack(&refs).column_space_basis()
    }

    /// The intertwiner into the ambient wedge space of a hook module: a
    /// tabloid of shape `(n-l, 1^l)` maps to the wedge of the singleton rows
    /// in row order. Restricted to the Specht subspace this is an
    /// equivariant isomorphism onto the wedge model.
    pub fn to_wedge_ambient(&self, wedge: &SpechtModule) -> Result<RatMat> {
        if !self.shape.parts().iter().skip(1).all(|&p| p == 1) {
            return Err(Error::invalid("intertwiner needs a hook shape"));
        }
        let l = self.shape.num_rows() - 1;
        if wedge.n() != self.n || wedge.level() != l {
            return Err(Error::invalid("wedge model does not match the hook shape"));
        }
        let mut m = RatMat::zero(wedge.ambient_dimension(), self.tabloids.len());
        for (j, t) in self.tabloids.iter().enumerate() {
            let singles: Vec<usize> = t.rows[1..].iter().map(|r| r[0]).collect();
            let (sorted, sign) = sort_with_sign(&singles).expect("tabloid rows are disjoint");
            let i = wedge.ambient_indexer().rank(&sorted);
            m[(i, j)] = rat(sign as i64);
        }
        Ok(m)
    }
}

/// All distinct tabloids of a shape, in a deterministic order.
fn enumerate_tabloids(shape: &Partition) -> Vec<Tabloid> {
    let n = shape.size();
    let parts = shape.parts().to_vec();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); parts.len()];
    fn recurse(
        x: usize,
        n: usize,
        parts: &[usize],
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<Tabloid>,
    ) {
        if x == n {
            out.push(Tabloid { rows: rows.clone() });
            return;
        }
        for r in 0..parts.len() {
            if rows[r].len() < parts[r] {
                rows[r].push(x);
                recurse(x + 1, n, parts, rows, out);
                rows[r].pop();
            }
        }
    }
    recurse(0, n, &parts, &mut rows, &mut out);
    out
}

/// Standard fillings: rows and columns strictly increasing.
fn standard_young_fillings(shape: &Partition) -> Vec<Filling> {
    let n = shape.size();
    let parts = shape.parts().to_vec();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); parts.len()];
    fn recurse(x: usize, n: usize, parts: &[usize], rows: &mut Vec<Vec<usize>>, out: &mut Vec<Filling>) {
        if x == n {
            out.push(Filling { rows: rows.clone() });
            return;
        }
        for r in 0..parts.len() {
            let c = rows[r].len();
            if c >= parts[r] {
                continue;
            }
            // row-strictness is automatic (entries placed in increasing
            // order); enforce column strictness: the cell above must be
            // filled already
            if r > 0 && rows[r - 1].len() <= c {
                continue;
            }
            rows[r].push(x);
            recurse(x + 1, n, parts, rows, out);
            rows[r].pop();
        }
    }
    recurse(0, n, &parts, &mut rows, &mut out);
    out
}

/// Elements of the column group `C(T)` (all permutations preserving each
/// column setwise).
fn column_group(filling: &Filling) -> Vec<Perm> {
    let n: usize = filling.rows.iter().map(|r| r.len()).sum();
    let width = filling.rows.first().map_or(0, |r| r.len());
    let mut group = vec![Perm::identity(n)];
    for c in 0..width {
        let col = filling.column(c);
        if col.len() <= 1 {
            continue;
        }
        let mut next = Vec::with_capacity(group.len() * factorial(col.len()));
        for p in all_perms(col.len()) {
            // permutation of [n] moving col[i] to col[p(i)]
            let mut images: Vec<usize> = (0..n).collect();
            for (i, &entry) in col.iter().enumerate() {
                images[entry] = col[p.apply(i)];
            }
            let sigma = Perm::new(images).unwrap();
            for g in &group {
                next.push(sigma.compose(g));
            }
        }
        group = next;
    }
    group
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

/// A hyperplane of the intrinsic arrangement constructed by the general
/// route: the sum of fixed spaces of generating transpositions, computed in
/// the tabloid model.
pub struct GeneralHyperplane {
    pub model: TabloidModel,
    /// Columns span `H_alpha` in tabloid coordinates.
    pub basis: RatMat,
}

impl GeneralHyperplane {
    pub fn codimension(&self) -> usize {
        self.model.specht_dimension() - self.basis.ncols()
    }
}

/// Generating transpositions for the Young subgroup of a set partition:
/// consecutive transpositions within each block.
pub fn consecutive_generators(alpha: &SetPartition, n: usize) -> Vec<Perm> {
    let mut gens = Vec::new();
    for block in alpha.blocks() {
        for w in block.windows(2) {
            gens.push(Perm::transposition(n, w[0], w[1]));
        }
    }
    gens
}

/// Star generators: transpositions of the least block element with the rest.
pub fn star_generators(alpha: &SetPartition, n: usize) -> Vec<Perm> {
    let mut gens = Vec::new();
    for block in alpha.blocks() {
        for &x in &block[1..] {
            gens.push(Perm::transposition(n, block[0], x));
        }
    }
    gens
}

/// Build `H_alpha` inside `S^lambda_n` by summing fixed spaces of generating
/// transpositions of the Young subgroup of `alpha`. `alpha` must have shape
/// conjugate to `lambda[n]`; `guard` caps `n` since this path is dense.
pub fn build_hyperplane_general(
    lambda: &Partition,
    n: usize,
    alpha: &SetPartition,
    guard: usize,
) -> Result<GeneralHyperplane> {
    if n > guard {
        return Err(Error::BudgetExceeded {
            needed: n as u128,
            budget: guard as u64,
            hint: "the general hyperplane route is dense; raise the guard only for small n".into(),
        });
    }
    let padded = pad(lambda, n)?;
    let shape = padded.derived();
    if alpha.ground_size() != n {
        return Err(Error::invalid("set partition ground set does not match n"));
    }
    if alpha.shape() != shape.conjugate() {
        return Err(Error::invalid(format!(
            "set partition shape {} is not conjugate to {}",
            alpha.shape(),
            shape
        )));
    }
    let model = TabloidModel::new(&shape)?;
    let gens = consecutive_generators(alpha, n);
    let basis = model.fixed_space_sum(&gens);
    Ok(GeneralHyperplane { model, basis })
}

/// True when two column spans (same dimensions) are equal.
pub fn same_column_space(a: &RatMat, b: &RatMat) -> bool {
    if a.nrows() != b.nrows() {
        return false;
    }
    let ra = a.rank();
    let rb = b.rank();
    if ra != rb {
        return false;
    }
    RatMat::hstack(&[a, b]).rank() == ra
}

/// Pair every column of a tabloid-coordinate matrix against an ambient-sparse
/// normal through the wedge intertwiner; returns the pairings.
pub fn pair_against_normal(
    model: &TabloidModel,
    wedge: &SpechtModule,
    columns: &RatMat,
    normal: &crate::specht::Normal,
) -> Result<Vec<BigRational>> {
    let inter = model.to_wedge_ambient(wedge)?;
    let lifted = inter.mul(columns); // ambient coords of each column
    let mut out = Vec::with_capacity(lifted.ncols());
    for j in 0..lifted.ncols() {
        let mut acc = BigRational::zero();
        for &(i, c) in &normal.ambient {
            acc += &lifted[(i, j)] * rat(c as i64);
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::set_partitions_with_blocks;
    use crate::specht::{build_hook_module, hyperplane_normal};

    fn shape(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn polytabloid_column_of_two() {
        // shape (1,1), n=2, column filling (0,1): v_T = {T} - {swapped}
        let model = TabloidModel::new(&shape(&[1, 1])).unwrap();
        let f = Filling::new(&shape(&[1, 1]), vec![vec![0], vec![1]]).unwrap();
        let v = model.polytabloid(&f).unwrap();
        assert_eq!(v.len(), 2);
        let coeffs: Vec<Int> = v.iter().map(|&(_, c)| c).collect();
        let mut sorted = coeffs.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![-1, 1]);
    }

    #[test]
    fn polytabloid_single_row() {
        // shape (2), n=2: trivial column group, single tabloid coefficient +1
        let model = TabloidModel::new(&shape(&[2])).unwrap();
        let f = Filling::new(&shape(&[2]), vec![vec![1, 0]]).unwrap();
        let v = model.polytabloid(&f).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].1, 1);
    }

    #[test]
    fn polytabloid_hook_six_terms() {
        // shape (2,1,1), first column (0,1,2), box (0,1) = 3: six signed terms
        let sh = shape(&[2, 1, 1]);
        let model = TabloidModel::new(&sh).unwrap();
        let f = Filling::new(&sh, vec![vec![0, 3], vec![1], vec![2]]).unwrap();
        let v = model.polytabloid(&f).unwrap();
        assert_eq!(v.len(), 6);
        // brute-force expected terms: sigma ranges over Sym{0,1,2}; the
        // tabloid has rows ({sigma(0),3}, {sigma(1)}, {sigma(2)})
        let mut expected: Vec<(Tabloid, Int)> = Vec::new();
        for sigma in all_perms(3) {
            let rows = vec![
                {
                    let mut r = vec![sigma.apply(0), 3];
                    r.sort_unstable();
                    r
                },
                vec![sigma.apply(1)],
                vec![sigma.apply(2)],
            ];
            expected.push((Tabloid { rows }, sigma.sign() as Int));
        }
        for (t, c) in expected {
            let found = v.iter().find(|(vt, _)| *vt == t).expect("term present");
            assert_eq!(found.1, c);
        }
    }

    #[test]
    fn rejects_non_bijective_filling() {
        let sh = shape(&[2, 1]);
        assert!(Filling::new(&sh, vec![vec![0, 0], vec![1]]).is_err());
        assert!(Filling::new(&sh, vec![vec![0, 3], vec![1]]).is_err());
    }

    #[test]
    fn specht_dimension_matches_wedge_model() {
        for (n, l) in [(3usize, 1usize), (4, 1), (4, 2), (5, 2)] {
            let mut parts = vec![n - l];
            parts.extend(std::iter::repeat(1).take(l));
            let model = TabloidModel::new(&shape(&parts)).unwrap();
            let wedge = build_hook_module(n, l).unwrap();
            assert_eq!(model.specht_dimension(), wedge.dimension());
        }
        // a non-hook shape: S^{(2,2)} has dimension 2
        assert_eq!(TabloidModel::new(&shape(&[2, 2])).unwrap().specht_dimension(), 2);
    }

    #[test]
    fn general_hyperplane_standard_rep() {
        // lambda=(1), n=3, alpha={{0,1},{2}}: fixed line of (01), codim 1
        let lambda = Partition::column(1);
        let alpha = SetPartition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let h = build_hyperplane_general(&lambda, 3, &alpha, 8).unwrap();
        assert_eq!(h.codimension(), 1);
        assert_eq!(h.basis.ncols(), 1);
        // the fixed vector is (up to scale) the polytabloid difference fixed
        // by (01); check the action fixes it
        let fixed = h.model.action_matrix(&Perm::transposition(3, 0, 1)).mul(&h.basis);
        assert!(same_column_space(&fixed, &h.basis));
        assert_eq!(fixed, h.basis);
    }

    #[test]
    fn general_hyperplane_matches_wedge_normal() {
        // lambda=(1,1), n=4, alpha={{0,1,2},{3}}: orthogonal to the wedge
        // normal of {0,1,2}, codim 1
        let lambda = Partition::column(2);
        let alpha = SetPartition::new(4, vec![vec![0, 1, 2], vec![3]]).unwrap();
        let h = build_hyperplane_general(&lambda, 4, &alpha, 8).unwrap();
        assert_eq!(h.codimension(), 1);
        let wedge = build_hook_module(4, 2).unwrap();
        let normal = hyperplane_normal(&wedge, &[0, 1, 2]).unwrap();
        let pairings = pair_against_normal(&h.model, &wedge, &h.basis, &normal).unwrap();
        assert!(pairings.iter().all(|p| p.is_zero()));
        // the normal itself does not pair to zero with itself
        let wedge_dim = wedge.dimension();
        let self_pair = wedge.pairing_int(&normal.module, &normal.module);
        assert!(self_pair > 0);
        assert_eq!(h.basis.ncols(), wedge_dim - 1);
    }

    #[test]
    fn generator_choice_does_not_matter() {
        // two generating sets for the same alpha give identical subspaces,
        // lambda=(1,1), n=5, all alpha
        let lambda = Partition::column(2);
        for alpha in set_partitions_with_blocks(5, 3) {
            if alpha.shape() != shape(&[3, 1, 1]) {
                continue;
            }
            let model = TabloidModel::new(&shape(&[3, 1, 1])).unwrap();
            let a = model.fixed_space_sum(&consecutive_generators(&alpha, 5));
            let b = model.fixed_space_sum(&star_generators(&alpha, 5));
            assert!(same_column_space(&a, &b), "alpha = {alpha:?}");
            let h = build_hyperplane_general(&lambda, 5, &alpha, 8).unwrap();
            assert_eq!(h.codimension(), 1);
        }
    }

    #[test]
    fn non_hook_shape_is_still_a_hyperplane() {
        // lambda=(2), n=4: lambda[4]=(2,2), conjugate (2,2)
        let lambda = shape(&[2]);
        let alpha = SetPartition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let h = build_hyperplane_general(&lambda, 4, &alpha, 8).unwrap();
        assert_eq!(h.codimension(), 1);
    }

    #[test]
    fn wrong_shape_and_guard_rejected() {
        let lambda = Partition::column(2);
        let alpha = SetPartition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(build_hyperplane_general(&lambda, 4, &alpha, 8).is_err());
        let good = SetPartition::new(4, vec![vec![0, 1, 2], vec![3]]).unwrap();
        assert!(matches!(
            build_hyperplane_general(&lambda, 4, &good, 3),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn polytabloid_with_first_column_alpha_is_the_normal() {
        // the tabloid-route normal: v_T with alpha in the first column maps
        // through the intertwiner to a multiple of the wedge-route normal
        let sh = shape(&[3, 1, 1]);
        let model = TabloidModel::new(&sh).unwrap();
        let wedge = build_hook_module(5, 2).unwrap();
        let inter = model.to_wedge_ambient(&wedge).unwrap();
        let alpha = vec![1usize, 2, 4];
        // filling with first column (1,2,4), rest of row one (0,3)
        let f = Filling::new(&sh, vec![vec![1, 0, 3], vec![2], vec![4]]).unwrap();
        let mut dense = vec![rat(0); model.tabloid_dimension()];
        for (t, c) in model.polytabloid(&f).unwrap() {
            dense[model.tabloid_index(&t).unwrap()] = rat(c as i64);
        }
        let image = inter.mul_vec(&dense);
        let normal = hyperplane_normal(&wedge, &alpha).unwrap();
        let mut normal_dense = vec![rat(0); wedge.ambient_dimension()];
        for &(i, c) in &normal.ambient {
            normal_dense[i] = rat(c as i64);
        }
        // image = s * normal for a single nonzero scalar s
        let scale_at = normal.ambient[0].0;
        let s = &image[scale_at] / &normal_dense[scale_at];
        assert!(!s.is_zero());
        for (a, b) in image.iter().zip(&normal_dense) {
            assert_eq!(a, &(&s * b));
        }
    }
}
