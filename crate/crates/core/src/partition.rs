//! Integer partitions, padded partitions and set partitions of `{0,..,n-1}`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A partition: weakly decreasing positive parts. The empty partition is the
/// unique partition of 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Partition> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::invalid("partition parts must be weakly decreasing"));
            }
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        Ok(Partition { parts })
    }

    /// The column partition `(1^l)`.
    pub fn column(l: usize) -> Partition {
        Partition { parts: vec![1; l] }
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn first_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.first_part();
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }

    /// True when `self = (1^l)` for some `l >= 0`.
    pub fn is_column(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `lambda[n] = (n - |lambda|, lambda_1, ..., lambda_h)`, valid once
/// `n >= |lambda| + lambda_1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PaddedPartition {
    base: Partition,
    n: usize,
}

impl PaddedPartition {
    pub fn base(&self) -> &Partition {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The parts of `lambda[n]` as a genuine partition of `n`.
    pub fn derived(&self) -> Partition {
        let mut parts = vec![self.n - self.base.size()];
        parts.extend_from_slice(self.base.parts());
        Partition { parts }
    }
}

/// Pad `lambda` to a partition of `n`. Signals `ZeroModule` when
/// `n < |lambda| + lambda_1`, the paper convention `S^lambda_n = 0`.
pub fn pad(lambda: &Partition, n: usize) -> Result<PaddedPartition> {
    let threshold = lambda.size() + lambda.first_part();
    if n < threshold {
        return Err(Error::ZeroModule {
            lambda: lambda.parts().to_vec(),
            n,
            threshold,
        });
    }
    Ok(PaddedPartition {
        base: lambda.clone(),
        n,
    })
}

/// A set partition of `{0,..,n-1}`: blocks sorted internally and ordered by
/// least element, so equal partitions have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<SetPartition> {
        let mut seen = vec![false; n];
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(Error::invalid("set partition blocks must be non-empty"));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x >= n || seen[x] {
                    return Err(Error::invalid("set partition blocks must tile {0,..,n-1}"));
                }
                seen[x] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::invalid("set partition blocks must cover {0,..,n-1}"));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block sizes arranged as a partition.
    pub fn shape(&self) -> Partition {
        let mut sizes: Vec<usize> = self.blocks.iter().map(|b| b.len()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: sizes }
    }

    /// Image under a permutation of the ground set.
    pub fn permuted(&self, sigma: &crate::perm::Perm) -> SetPartition {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| sigma.apply(x)).collect())
            .collect();
        SetPartition::new(self.n, blocks).expect("permuting a set partition stays valid")
    }
}

/// All set partitions of `{0,..,n-1}` into exactly `m` blocks, in a
/// deterministic order (restricted-growth strings).
pub fn set_partitions_with_blocks(n: usize, m: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    if m == 0 || m > n {
        return out;
    }
    // rgs[i] = block index of element i; rgs[i] <= 1 + max(rgs[..i])
    let mut rgs = vec![0usize; n];
    fn recurse(i: usize, maxv: usize, n: usize, m: usize, rgs: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
        if i == n {
            if maxv + 1 == m {
                let mut blocks = vec![Vec::new(); m];
                for (elt, &b) in rgs.iter().enumerate() {
                    blocks[b].push(elt);
                }
                out.push(SetPartition::new(n, blocks).unwrap());
            }
            return;
        }
        // prune: remaining elements must be able to open the missing blocks
        let remaining = n - i;
        let missing = m.saturating_sub(maxv + 1);
        if missing > remaining {
            return;
        }
        for v in 0..=(maxv + 1).min(m - 1) {
            rgs[i] = v;
            recurse(i + 1, maxv.max(v), n, m, rgs, out);
        }
    }
    if n == 0 {
        return out;
    }
    // element 0 always opens block 0
    recurse(1, 0, n, m, &mut rgs, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[2, 1, 1]).conjugate(), p(&[3, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        // self-conjugate hook (3,1,1)
        assert_eq!(p(&[3, 1, 1]).conjugate(), p(&[3, 1, 1]));
    }

    #[test]
    fn conjugate_is_involution() {
        let shapes = [
            vec![5usize],
            vec![4, 2],
            vec![3, 3, 1],
            vec![2, 1, 1, 1],
            vec![1],
            vec![],
        ];
        for s in shapes {
            let lam = Partition::new(s).unwrap();
            assert_eq!(lam.conjugate().conjugate(), lam);
        }
    }

    #[test]
    fn pad_examples() {
        let lam = p(&[1, 1]);
        assert_eq!(pad(&lam, 5).unwrap().derived(), p(&[3, 1, 1]));
        let one = p(&[1]);
        assert_eq!(pad(&one, 4).unwrap().derived(), p(&[3, 1]));
        // n = |lambda| + lambda_1 exactly: still a module
        assert_eq!(pad(&lam, 3).unwrap().derived(), p(&[1, 1, 1]));
        // below threshold: zero-module signal
        let err = pad(&lam, 2).unwrap_err();
        assert!(err.is_zero_module());
    }

    #[test]
    fn invalid_partitions_rejected() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn set_partition_counts_match_stirling() {
        // S(4,2)=7, S(5,3)=25, S(6,3)=90
        assert_eq!(set_partitions_with_blocks(4, 2).len(), 7);
        assert_eq!(set_partitions_with_blocks(5, 3).len(), 25);
        assert_eq!(set_partitions_with_blocks(6, 3).len(), 90);
        // all distinct
        let all = set_partitions_with_blocks(6, 3);
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn set_partition_shape() {
        let sp = SetPartition::new(5, vec![vec![0, 2], vec![1], vec![3, 4]]).unwrap();
        assert_eq!(sp.shape(), p(&[2, 2, 1]));
    }
}
