//! Hook Specht modules `S^{(n-l,1^l)}` realized as the l-th exterior power of
//! the standard representation.
//!
//! Coordinates: inside the ambient wedge space `Wedge^l C^n` (basis `e_A`
//! over l-subsets `A` of `{0,..,n-1}`), the module is spanned by the wedge
//! monomials of differences against the anchor index 0,
//!
//! ```text
//!     w_A = (e_{a_1} - e_0) ^ ... ^ (e_{a_l} - e_0),    A subset of {1,..,n-1}.
//! ```
//!
//! Since `w_A = e_A + (monomials containing 0)`, a vector of the module is
//! recovered from its ambient coordinates by reading off the 0-free
//! monomials; all symmetric-group action and transition maps reduce to the
//! expansion of a wedge of differences, which has at most `l+1` terms with
//! coefficients in `{-1, 0, 1}`.
//!
//! The invariant pairing is the one induced by declaring the ambient `e_A`
//! orthonormal; the symmetric group acts by signed permutations on that
//! basis, so the pairing is invariant.

use crate::combinat::{binomial, sort_with_sign, SubsetIndexer};
use crate::error::{Error, Result};
use crate::linalg::{Int, RatMat};
use crate::partition::{pad, PaddedPartition, Partition};
use crate::perm::Perm;
use crate::setmap::SetMap;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Sparse vector in ambient wedge coordinates: `(rank of subset, coeff)`.
pub type SparseAmbient = Vec<(usize, Int)>;

/// Expand `(e_{b_1} - e_t) ^ ... ^ (e_{b_k} - e_t)` in the ambient basis of
/// `indexer` (monomials with repeated indices vanish).
fn expand_diff_wedge(b: &[usize], t: usize, indexer: &SubsetIndexer) -> SparseAmbient {
    let mut terms: Vec<(Vec<usize>, Int)> = Vec::with_capacity(b.len() + 1);
    if let Some((sorted, sign)) = sort_with_sign(b) {
        terms.push((sorted, sign as Int));
    }
    for k in 0..b.len() {
        let mut replaced = b.to_vec();
        replaced[k] = t;
        if let Some((sorted, sign)) = sort_with_sign(&replaced) {
            terms.push((sorted, -(sign as Int)));
        }
    }
    let mut sparse: Vec<(usize, Int)> = terms
        .into_iter()
        .map(|(subset, coeff)| (indexer.rank(&subset), coeff))
        .collect();
    sparse.sort_unstable_by_key(|&(i, _)| i);
    // merge duplicates (possible when the index map is not injective)
    let mut merged: SparseAmbient = Vec::with_capacity(sparse.len());
    for (i, c) in sparse {
        match merged.last_mut() {
            Some(last) if last.0 == i => last.1 += c,
            _ => merged.push((i, c)),
        }
    }
    merged.retain(|&(_, c)| c != 0);
    merged
}

/// An explicit hook Specht module with exact integer structure constants.
#[derive(Debug, Clone)]
pub struct SpechtModule {
    lambda_n: PaddedPartition,
    n: usize,
    l: usize,
    dim: usize,
    basis: Vec<Vec<usize>>,
    basis_indexer: SubsetIndexer,
    ambient: SubsetIndexer,
    embed: Vec<SparseAmbient>,
    gram: Vec<Vec<Int>>,
}

/// Build `S^{(n-l,1^l)}` explicitly. `l = 0` gives the trivial module
/// (dimension 1); `n < l + 1` signals the zero module.
pub fn build_hook_module(n: usize, l: usize) -> Result<SpechtModule> {
    let lambda = Partition::column(l);
    let lambda_n = pad(&lambda, n)?; // zero-module signal when n < l + 1
    let ambient = SubsetIndexer::new(n, l);
    // module basis: l-subsets of {1,..,n-1}, lex order
    let shifted = SubsetIndexer::new(n - 1, l);
    let basis: Vec<Vec<usize>> = shifted
        .all()
        .into_iter()
        .map(|a| a.into_iter().map(|x| x + 1).collect())
        .collect();
    let dim = basis.len();
    debug_assert_eq!(dim as u128, binomial(n - 1, l));
    let embed: Vec<SparseAmbient> = basis
        .iter()
        .map(|a| expand_diff_wedge(a, 0, &ambient))
        .collect();
    let mut gram = vec![vec![0 as Int; dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let dot = sparse_dot(&embed[i], &embed[j]);
            gram[i][j] = dot;
            gram[j][i] = dot;
        }
    }
    Ok(SpechtModule {
        lambda_n,
        n,
        l,
        dim,
        basis,
        basis_indexer: shifted,
        ambient,
        embed,
        gram,
    })
}

fn sparse_dot(a: &SparseAmbient, b: &SparseAmbient) -> Int {
    let (mut i, mut j, mut acc) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += a[i].1 * b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

impl SpechtModule {
    pub fn lambda_n(&self) -> &PaddedPartition {
        &self.lambda_n
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The hook level `l`, i.e. the number of boxes below the first row.
    pub fn hook_level(&self) -> Option<usize> {
        Some(self.l)
    }

    pub fn level(&self) -> usize {
        self.l
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ambient.count()
    }

    /// Basis labels: the l-subsets of `{1,..,n-1}` indexing wedge monomials.
    pub fn basis_labels(&self) -> &[Vec<usize>] {
        &self.basis
    }

    pub fn ambient_indexer(&self) -> &SubsetIndexer {
        &self.ambient
    }

    /// Module coordinates of the image of basis monomial `A` under the index
    /// map `phi` (a permutation of `{0,..,n-1}` or any map into a possibly
    /// different ground set handled by `target`): the expansion of
    /// `(e_{phi(a_1)} - e_{phi(0)}) ^ ...` with 0-containing monomials
    /// dropped.
    fn mapped_basis_column(
        a: &[usize],
        phi: &dyn Fn(usize) -> usize,
        target: &SpechtModule,
    ) -> Vec<Int> {
        let b: Vec<usize> = a.iter().map(|&x| phi(x)).collect();
        let t = phi(0);
        let expanded = expand_diff_wedge(&b, t, &target.ambient);
        target.zero_free_part(&expanded)
    }

    /// Read off module coordinates from ambient coordinates of a vector that
    /// lies in the module (the 0-free monomials).
    fn zero_free_part(&self, v: &SparseAmbient) -> Vec<Int> {
        let mut out = vec![0 as Int; self.dim];
        for &(amb, coeff) in v {
            let subset = self.ambient.unrank(amb);
            if subset.first().is_some_and(|&x| x == 0) {
                continue;
            }
            let shifted: Vec<usize> = subset.iter().map(|&x| x - 1).collect();
            out[self.basis_indexer.rank(&shifted)] = coeff;
        }
        out
    }

    /// Ambient coordinates of a module vector given in basis coordinates.
    pub fn lift(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![BigRational::from_integer(BigInt::from(0)); self.ambient.count()];
        for (col, coeff) in v.iter().enumerate() {
            if coeff == &BigRational::from_integer(BigInt::from(0)) {
                continue;
            }
            for &(amb, c) in &self.embed[col] {
                out[amb] += coeff * BigRational::from_integer(BigInt::from(c));
            }
        }
        out
    }

    /// Action of a permutation in the module basis; integer entries, and
    /// `action(s.compose(t)) = action(s) * action(t)`.
    pub fn action_matrix(&self, sigma: &Perm) -> RatMat {
        assert_eq!(sigma.degree(), self.n);
        let mut m = RatMat::zero(self.dim, self.dim);
        for (j, a) in self.basis.iter().enumerate() {
            let col = Self::mapped_basis_column(a, &|x| sigma.apply(x), self);
            for (i, &c) in col.iter().enumerate() {
                if c != 0 {
                    m[(i, j)] = crate::linalg::rat(c as i64);
                }
            }
        }
        m
    }

    /// Invariant pairing of two module vectors (ambient dot product of the
    /// lifts).
    pub fn pairing(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut acc = BigRational::from_integer(BigInt::from(0));
        for i in 0..self.dim {
            if x[i] == BigRational::from_integer(BigInt::from(0)) {
                continue;
            }
            for j in 0..self.dim {
                if self.gram[i][j] == 0 {
                    continue;
                }
                acc += &x[i] * &y[j] * BigRational::from_integer(BigInt::from(self.gram[i][j]));
            }
        }
        acc
    }

    /// Integer-only pairing.
    pub fn pairing_int(&self, x: &[Int], y: &[Int]) -> Int {
        let mut acc = 0;
        for i in 0..self.dim {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.dim {
                acc += x[i] * self.gram[i][j] * y[j];
            }
        }
        acc
    }

    pub fn gram(&self) -> &[Vec<Int>] {
        &self.gram
    }
}

/// The transition map `f_*: S_m -> S_n` induced by an injection
/// `f: {0,..,m-1} -> {0,..,n-1}`; functorial and injective.
pub fn induced_map(f: &SetMap, domain: &SpechtModule, codomain: &SpechtModule) -> Result<RatMat> {
    if !f.is_injective() {
        return Err(Error::invalid("induced_map needs an injection"));
    }
    if f.source_size() != domain.n() || f.target_size() != codomain.n() {
        return Err(Error::invalid("induced_map sizes do not match the modules"));
    }
    if domain.level() != codomain.level() {
        return Err(Error::invalid("induced_map needs equal hook levels"));
    }
    let mut m = RatMat::zero(codomain.dimension(), domain.dimension());
    for (j, a) in domain.basis_labels().iter().enumerate() {
        let col = SpechtModule::mapped_basis_column(a, &|x| f.apply(x), codomain);
        for (i, &c) in col.iter().enumerate() {
            if c != 0 {
                m[(i, j)] = crate::linalg::rat(c as i64);
            }
        }
    }
    Ok(m)
}

/// The map `f_*: S_n -> S_m` obtained by applying a surjection
/// `f: {0,..,n-1} -> {0,..,m-1}` to the indices of wedge coordinates.
pub fn pushforward_surjection(
    f: &SetMap,
    domain: &SpechtModule,
    codomain: &SpechtModule,
) -> Result<RatMat> {
    if !f.is_surjective() {
        return Err(Error::invalid("pushforward needs a surjection"));
    }
    if f.source_size() != domain.n() || f.target_size() != codomain.n() {
        return Err(Error::invalid("pushforward sizes do not match the modules"));
    }
    let mut m = RatMat::zero(codomain.dimension(), domain.dimension());
    for (j, a) in domain.basis_labels().iter().enumerate() {
        let col = SpechtModule::mapped_basis_column(a, &|x| f.apply(x), codomain);
        for (i, &c) in col.iter().enumerate() {
            if c != 0 {
                m[(i, j)] = crate::linalg::rat(c as i64);
            }
        }
    }
    Ok(m)
}

/// The section-averaging map of a surjection `f: {0,..,n-1} -> {0,..,m-1}`,
///
/// ```text
///     phi_f = (1 / n_f) * sum over sections g of f of g_*
/// ```
///
/// an injective map `S_m -> S_n` whose image is fixed by every permutation
/// within a single fiber of `f`.
pub fn section_average(
    f: &SetMap,
    domain: &SpechtModule,
    codomain: &SpechtModule,
) -> Result<RatMat> {
    if !f.is_surjective() {
        return Err(Error::invalid("section_average needs a surjection"));
    }
    if f.source_size() != codomain.n() || f.target_size() != domain.n() {
        return Err(Error::invalid("section_average sizes do not match the modules"));
    }
    let sections = f.sections()?;
    let n_f = sections.len() as i64;
    let mut acc = RatMat::zero(codomain.dimension(), domain.dimension());
    for g in &sections {
        acc = acc.add(&induced_map(g, domain, codomain)?);
    }
    let inv = BigRational::new(BigInt::from(1), BigInt::from(n_f));
    Ok(acc.scale(&inv))
}

/// A hyperplane normal in both ambient (sparse) and module coordinates,
/// stored content-1 with the first nonzero module coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normal {
    pub alpha: Vec<usize>,
    pub ambient: SparseAmbient,
    pub module: Vec<Int>,
}

/// The normal vector of the hyperplane `H_alpha` for an (l+1)-subset `alpha`:
/// the wedge of consecutive differences along `alpha`, expanded as the signed
/// sum of the l-faces of `alpha`. Its orthogonal complement in the module is
/// the sum of the fixed spaces of the transpositions within `alpha`.
pub fn hyperplane_normal(module: &SpechtModule, alpha: &[usize]) -> Result<Normal> {
    let l = module.level();
    let n = module.n();
    let mut alpha = alpha.to_vec();
    alpha.sort_unstable();
    alpha.dedup();
    if alpha.len() != l + 1 {
        return Err(Error::invalid(format!(
            "hyperplane label must be a subset of size {}, got {:?}",
            l + 1,
            alpha
        )));
    }
    if alpha.iter().any(|&x| x >= n) {
        return Err(Error::invalid("hyperplane label out of range"));
    }
    let mut ambient: SparseAmbient = Vec::with_capacity(l + 1);
    for m in 0..=l {
        let face: Vec<usize> = alpha
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != m)
            .map(|(_, &x)| x)
            .collect();
        let sign: Int = if m % 2 == 0 { 1 } else { -1 };
        ambient.push((module.ambient_indexer().rank(&face), sign));
    }
    ambient.sort_unstable_by_key(|&(i, _)| i);
    let mut module_coords = module.zero_free_part(&ambient);
    // canonical sign: first nonzero module coordinate positive
    if let Some(&first) = module_coords.iter().find(|&&c| c != 0) {
        if first < 0 {
            for c in module_coords.iter_mut() {
                *c = -*c;
            }
            for t in ambient.iter_mut() {
                t.1 = -t.1;
            }
        }
    }
    Ok(Normal {
        alpha,
        ambient,
        module: module_coords,
    })
}

/// Apply a permutation to a sparse ambient vector (signed permutation of
/// wedge monomials).
pub fn permute_ambient(
    module: &SpechtModule,
    sigma: &Perm,
    v: &SparseAmbient,
) -> SparseAmbient {
    let idx = module.ambient_indexer();
    let mut out: SparseAmbient = v
        .iter()
        .map(|&(amb, coeff)| {
            let subset = idx.unrank(amb);
            let mapped: Vec<usize> = subset.iter().map(|&x| sigma.apply(x)).collect();
            let (sorted, sign) = sort_with_sign(&mapped).expect("permutation keeps indices distinct");
            (idx.rank(&sorted), coeff * sign as Int)
        })
        .collect();
    out.sort_unstable_by_key(|&(i, _)| i);
    out
}

/// Equality of sparse ambient vectors up to overall sign.
pub fn equal_up_to_sign(a: &SparseAmbient, b: &SparseAmbient) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let (fa, fb) = (a[0], b[0]);
    if fa.0 != fb.0 {
        return false;
    }
    let flip = fa.1 != fb.1;
    a.iter().zip(b.iter()).all(|(&(ia, ca), &(ib, cb))| {
        ia == ib && (if flip { ca == -cb } else { ca == cb })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::perm::all_perms;

    #[test]
    fn hook_dimensions_match_binomial() {
        for n in 2..=10usize {
            for l in 1..n {
                let module = build_hook_module(n, l).unwrap();
                assert_eq!(module.dimension() as u128, binomial(n - 1, l));
            }
        }
        assert_eq!(build_hook_module(4, 2).unwrap().dimension(), 3);
        assert_eq!(build_hook_module(7, 2).unwrap().dimension(), 15);
        // trivial module
        assert_eq!(build_hook_module(5, 0).unwrap().dimension(), 1);
        // zero module signal
        assert!(build_hook_module(2, 2).unwrap_err().is_zero_module());
    }

    #[test]
    fn standard_rep_transposition_trace() {
        // n=3, l=1: trace of a transposition equals fix(sigma) - 1 = 0
        let module = build_hook_module(3, 1).unwrap();
        let m = module.action_matrix(&Perm::transposition(3, 0, 1));
        assert_eq!(&m[(0, 0)] + &m[(1, 1)], rat(0));
    }

    #[test]
    fn action_is_a_homomorphism() {
        let module = build_hook_module(5, 2).unwrap();
        let perms = all_perms(5);
        // a pseudo-random but deterministic selection of pairs
        for step in 0..25usize {
            let s = &perms[(step * 37 + 11) % perms.len()];
            let t = &perms[(step * 53 + 29) % perms.len()];
            let st = s.compose(t);
            let lhs = module.action_matrix(&st);
            let rhs = module.action_matrix(s).mul(&module.action_matrix(t));
            assert_eq!(lhs, rhs);
        }
        // invertibility: M(s) * M(s^-1) = I
        let s = &perms[17];
        let prod = module
            .action_matrix(s)
            .mul(&module.action_matrix(&s.inverse()));
        assert!(prod.is_identity());
    }

    #[test]
    fn induced_map_of_identity_and_rank() {
        let m3 = build_hook_module(3, 1).unwrap();
        let m4 = build_hook_module(4, 1).unwrap();
        let id = SetMap::inclusion(3, 3).unwrap();
        assert!(induced_map(&id, &m3, &m3).unwrap().is_identity());
        let inc = SetMap::inclusion(3, 4).unwrap();
        let map = induced_map(&inc, &m3, &m4).unwrap();
        assert_eq!(map.rank(), 2);
        assert_eq!(map.rank(), m3.dimension());
    }

    #[test]
    fn induced_map_is_functorial() {
        // 50 random composable pairs at l=2, sizes <= 7
        let mut state = 0xDEADBEEFu64;
        let mut next = move |m: usize| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % m as u64) as usize
        };
        for _ in 0..50 {
            let a = 3 + next(3); // 3..=5
            let b = a + next(2); // a..=a+1
            let c = b + next(7 - b + 1).min(7 - b);
            let (ma, mb, mc) = (
                build_hook_module(a, 2),
                build_hook_module(b, 2),
                build_hook_module(c, 2),
            );
            let (Ok(ma), Ok(mb), Ok(mc)) = (ma, mb, mc) else {
                continue; // zero module at a = 2 never happens here (a >= 3)
            };
            // random injections f: a -> b, g: b -> c via partial shuffles
            let f_vals = random_injection(a, b, &mut next);
            let g_vals = random_injection(b, c, &mut next);
            let f = SetMap::injection(f_vals, b).unwrap();
            let g = SetMap::injection(g_vals, c).unwrap();
            let gf = g.compose(&f).unwrap();
            let lhs = induced_map(&gf, &ma, &mc).unwrap();
            let rhs = induced_map(&g, &mb, &mc)
                .unwrap()
                .mul(&induced_map(&f, &ma, &mb).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    fn random_injection(m: usize, n: usize, next: &mut impl FnMut(usize) -> usize) -> Vec<usize> {
        let mut pool: Vec<usize> = (0..n).collect();
        let mut vals = Vec::with_capacity(m);
        for i in 0..m {
            let j = i + next(n - i);
            pool.swap(i, j);
            vals.push(pool[i]);
        }
        vals
    }

    #[test]
    fn normal_examples() {
        // n=3, l=1, alpha={0,1}: the braid hyperplane x_0 = x_1.
        let module = build_hook_module(3, 1).unwrap();
        let norm = hyperplane_normal(&module, &[0, 1]).unwrap();
        // basis is w_{1}=e_1-e_0, w_{2}=e_2-e_0; e_0 - e_1 = -w_1, canonical
        // sign makes it (1, 0).
        assert_eq!(norm.module, vec![1, 0]);
        // wrong subset size rejected
        assert!(hyperplane_normal(&module, &[0, 1, 2]).is_err());
    }

    #[test]
    fn normals_at_n4_l2_are_in_general_position() {
        let module = build_hook_module(4, 2).unwrap();
        let idx = SubsetIndexer::new(4, 3);
        let normals: Vec<Vec<Int>> = idx
            .all()
            .iter()
            .map(|alpha| hyperplane_normal(&module, alpha).unwrap().module)
            .collect();
        assert_eq!(normals.len(), 4);
        for i in 0..4 {
            for j in (i + 1)..4 {
                assert_eq!(crate::linalg::int_rank(&[normals[i].clone(), normals[j].clone()], 3), 2);
            }
        }
        for skip in 0..4 {
            let three: Vec<Vec<Int>> = (0..4)
                .filter(|&k| k != skip)
                .map(|k| normals[k].clone())
                .collect();
            assert_eq!(crate::linalg::int_rank(&three, 3), 3);
        }
    }

    #[test]
    fn normals_are_equivariant() {
        // sigma . normal(alpha) = +- normal(sigma(alpha)), 100 draws at n=6, l=2
        let module = build_hook_module(6, 2).unwrap();
        let idx = SubsetIndexer::new(6, 3);
        let mut state = 0x1234_5678_9ABC_DEFu64;
        let mut next = move |m: usize| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % m as u64) as usize
        };
        for _ in 0..100 {
            let sigma = Perm::random(6, &mut next);
            let alpha = idx.unrank(next(idx.count()));
            let norm = hyperplane_normal(&module, &alpha).unwrap();
            let moved = permute_ambient(&module, &sigma, &norm.ambient);
            let mut target: Vec<usize> = alpha.iter().map(|&x| sigma.apply(x)).collect();
            target.sort_unstable();
            let expected = hyperplane_normal(&module, &target).unwrap();
            assert!(equal_up_to_sign(&moved, &expected.ambient));
        }
    }

    #[test]
    fn normals_live_in_the_module() {
        // the ambient expansion of a normal equals the lift of its module part
        for (n, l) in [(4, 2), (5, 2), (6, 2), (5, 1), (6, 3)] {
            let module = build_hook_module(n, l).unwrap();
            let idx = SubsetIndexer::new(n, l + 1);
            for alpha in idx.all() {
                let norm = hyperplane_normal(&module, &alpha).unwrap();
                let module_rat: Vec<BigRational> =
                    norm.module.iter().map(|&c| rat(c as i64)).collect();
                let lifted = module.lift(&module_rat);
                let mut dense = vec![rat(0); module.ambient_dimension()];
                for &(i, c) in &norm.ambient {
                    dense[i] = rat(c as i64);
                }
                assert_eq!(lifted, dense, "alpha={alpha:?} n={n} l={l}");
            }
        }
    }

    #[test]
    fn section_average_of_bijection_is_induced_inverse() {
        let m4 = build_hook_module(4, 2).unwrap();
        let sigma = Perm::new(vec![2, 0, 3, 1]).unwrap();
        let f = SetMap::from_perm(&sigma);
        let phi = section_average(&f, &m4, &m4).unwrap();
        let inv = SetMap::from_perm(&sigma.inverse());
        let expected = induced_map(&inv, &m4, &m4).unwrap();
        assert_eq!(phi, expected);
    }

    #[test]
    fn section_average_lands_in_fixed_space() {
        // f: 4 -> 3 merging {0,1}; image of phi_f inside fixed space of (01), l=2
        let m4 = build_hook_module(4, 2).unwrap();
        let m3 = build_hook_module(3, 2).unwrap();
        let f = crate::setmap::merge_pair(4, 0, 1);
        let phi = section_average(&f, &m3, &m4).unwrap();
        let action = m4.action_matrix(&Perm::transposition(4, 0, 1));
        assert_eq!(action.mul(&phi), phi);
        // and f_* . phi_f = identity
        let push = pushforward_surjection(&f, &m4, &m3).unwrap();
        assert!(push.mul(&phi).is_identity());
    }

    #[test]
    fn section_average_fixed_by_fiber_transpositions() {
        // all fiber-internal transpositions fix phi_f, n <= 6, l = 2
        for n in 4..=6usize {
            let mn = build_hook_module(n, 2).unwrap();
            for m in 3..n {
                let mm = build_hook_module(m, 2).unwrap();
                for part in crate::partition::set_partitions_with_blocks(n, m) {
                    let f = crate::setmap::surjection_of_partition(&part);
                    let phi = section_average(&f, &mm, &mn).unwrap();
                    for block in part.blocks() {
                        for i in 0..block.len() {
                            for j in (i + 1)..block.len() {
                                let t = Perm::transposition(n, block[i], block[j]);
                                assert_eq!(mn.action_matrix(&t).mul(&phi), phi);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn non_injective_and_non_surjective_rejected() {
        let m4 = build_hook_module(4, 2).unwrap();
        let m3 = build_hook_module(3, 2).unwrap();
        let not_inj = SetMap::new(vec![0, 0, 1], 4).unwrap();
        assert!(induced_map(&not_inj, &m3, &m4).is_err());
        let not_surj = SetMap::new(vec![0, 0, 0, 1], 3).unwrap();
        assert!(section_average(&not_surj, &m3, &m4).is_err());
        assert!(pushforward_surjection(&not_surj, &m4, &m3).is_err());
    }
}
