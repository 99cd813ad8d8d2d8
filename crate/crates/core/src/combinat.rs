//! Binomial tables and lexicographic ranking of k-subsets.

/// Binomial coefficient as u128; exact for everything this crate touches.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Lexicographic rank/unrank of sorted k-subsets of `{0,..,ground-1}`,
/// backed by a Pascal table so ranking is table lookups only.
#[derive(Debug, Clone)]
pub struct SubsetIndexer {
    ground: usize,
    k: usize,
    count: usize,
    choose: Vec<Vec<u128>>, // choose[g][j] = C(g, j) for j <= k
}

impl SubsetIndexer {
    pub fn new(ground: usize, k: usize) -> SubsetIndexer {
        let mut choose = vec![vec![0u128; k + 1]; ground + 1];
        for g in 0..=ground {
            choose[g][0] = 1;
            for j in 1..=k.min(g) {
                choose[g][j] = if g == j {
                    1
                } else {
                    choose[g - 1][j - 1] + choose[g - 1][j]
                };
            }
        }
        let count = choose[ground][k.min(ground)] as usize;
        let count = if k > ground { 0 } else { count };
        SubsetIndexer {
            ground,
            k,
            count,
            choose,
        }
    }

    #[inline]
    fn c(&self, g: usize, j: usize) -> u128 {
        if j > self.k || j > g {
            if j > g {
                return 0;
            }
            return binomial(g, j);
        }
        self.choose[g][j]
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    /// Lex rank of a sorted subset.
    pub fn rank(&self, subset: &[usize]) -> usize {
        debug_assert_eq!(subset.len(), self.k);
        debug_assert!(subset.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(subset.iter().all(|&x| x < self.ground));
        let mut rank: u128 = 0;
        let mut prev: isize = -1;
        for (i, &a) in subset.iter().enumerate() {
            for c in (prev + 1) as usize..a {
                rank += self.c(self.ground - 1 - c, self.k - 1 - i);
            }
            prev = a as isize;
        }
        rank as usize
    }

    /// Inverse of `rank`.
    pub fn unrank(&self, mut rank: usize) -> Vec<usize> {
        debug_assert!(rank < self.count);
        let mut subset = Vec::with_capacity(self.k);
        let mut c = 0usize;
        for i in 0..self.k {
            loop {
                let block = self.c(self.ground - 1 - c, self.k - 1 - i) as usize;
                if rank < block {
                    subset.push(c);
                    c += 1;
                    break;
                }
                rank -= block;
                c += 1;
            }
        }
        subset
    }

    /// All subsets in lex order.
    pub fn all(&self) -> Vec<Vec<usize>> {
        (0..self.count).map(|r| self.unrank(r)).collect()
    }
}

/// Advance a sorted k-subset of `{0,..,ground-1}` to its lex successor;
/// false when it was the last one.
pub fn next_combination(subset: &mut [usize], ground: usize) -> bool {
    let k = subset.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < ground - (k - i) {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Sort wedge indices; `None` on a repeated index, else `(sorted, sign)`.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i8)> {
    let mut v = indices.to_vec();
    let mut sign = 1i8;
    // insertion sort, counting inversions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}
