//! Permutations of `{0, .., n-1}` in one-line notation.

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}`; `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::invalid("not a permutation in one-line notation"));
            }
            seen[v] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// The transposition swapping `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Perm {
        assert!(i < n && j < n && i != j);
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// `self` after `other`: `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Perm { images }
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.images.len()];
        let mut sign = 1i64;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &v)| *i == v)
            .count()
    }

    /// Uniform random permutation via Fisher-Yates driven by `next_below`.
    pub fn random(n: usize, mut next_below: impl FnMut(usize) -> usize) -> Perm {
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = next_below(i + 1);
            images.swap(i, j);
        }
        Perm { images }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.images
    }
}

/// Enumerate all permutations of `{0,..,n-1}` (Heap's algorithm). Small n only.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_recurse(n, &mut items, &mut out);
    out
}

fn heap_recurse(k: usize, items: &mut Vec<usize>, out: &mut Vec<Perm>) {
    if k <= 1 {
        out.push(Perm {
            images: items.clone(),
        });
        return;
    }
    for i in 0..k {
        heap_recurse(k - 1, items, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let s = Perm::transposition(4, 0, 1);
        let t = Perm::transposition(4, 1, 2);
        let st = s.compose(&t);
        // (01)(12) maps 1 -> 2 ... check (st)(x) = s(t(x))
        for x in 0..4 {
            assert_eq!(st.apply(x), s.apply(t.apply(x)));
        }
        let inv = st.inverse();
        assert_eq!(st.compose(&inv), Perm::identity(4));
        assert_eq!(inv.compose(&st), Perm::identity(4));
    }

    #[test]
    fn sign_of_cycles() {
        assert_eq!(Perm::transposition(5, 1, 3).sign(), -1);
        assert_eq!(Perm::identity(5).sign(), 1);
        let three_cycle = Perm::new(vec![1, 2, 0]).unwrap();
        assert_eq!(three_cycle.sign(), 1);
    }

    #[test]
    fn all_perms_count() {
        assert_eq!(all_perms(4).len(), 24);
        let distinct: std::collections::HashSet<_> =
            all_perms(4).into_iter().map(|p| p.as_slice().to_vec()).collect();
        assert_eq!(distinct.len(), 24);
    }

    #[test]
    fn rejects_non_permutation() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3]).is_err());
    }
}
