//! Exact line censuses, corank-1/rank-1 counts, and the first
//! Kazhdan-Lusztig coefficient with its Stirling lower bound.

use crate::arrangement::{build_arrangement, Arrangement, Flat};
use crate::error::Result;
use crate::partition::set_partitions_with_blocks;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Per-size stable/unstable line counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeCount {
    pub size: usize,
    pub stable: usize,
    pub unstable: usize,
}

/// One row of the exact line census.
#[derive(Debug, Clone)]
pub struct CensusRow {
    pub n: usize,
    pub l: usize,
    pub total_lines: usize,
    pub sizes: Vec<SizeCount>,
}

impl CensusRow {
    pub fn unstable_total(&self) -> usize {
        self.sizes.iter().map(|s| s.unstable).sum()
    }

    pub fn stable_total(&self) -> usize {
        self.sizes.iter().map(|s| s.stable).sum()
    }

    /// Unstable percentage, one decimal, round half up.
    pub fn percent_unstable(&self) -> String {
        render_percent(self.unstable_total(), self.total_lines)
    }

    pub fn percent_stable(&self) -> String {
        render_percent(self.stable_total(), self.total_lines)
    }

    /// Counts for one size class, if present.
    pub fn size_class(&self, size: usize) -> Option<&SizeCount> {
        self.sizes.iter().find(|s| s.size == size)
    }
}

/// `numer/denom` as a percentage with one decimal, round half up.
pub fn render_percent(numer: usize, denom: usize) -> String {
    if denom == 0 {
        return "0.0".into();
    }
    // tenths of a percent, rounded half up: floor(1000*n/d + 1/2)
    let tenths = (2000 * numer as u128 + denom as u128) / (2 * denom as u128);
    format!("{}.{}", tenths / 10, tenths % 10)
}

/// Build the exact line census for `(n, l)` within the subset budget.
pub fn line_census(n: usize, l: usize, budget: u64) -> Result<CensusRow> {
    let arr = build_arrangement(n, l)?;
    line_census_of(&arr, budget)
}

/// Census over an already built arrangement.
pub fn line_census_of(arr: &Arrangement, budget: u64) -> Result<CensusRow> {
    let lines = arr.enumerate_lines(budget)?;
    Ok(census_of_lines(arr.n(), arr.level(), &lines))
}

/// Histogram a list of classified lines into a census row.
pub fn census_of_lines(n: usize, l: usize, lines: &[Flat]) -> CensusRow {
    let mut hist: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for f in lines {
        let e = hist.entry(f.size()).or_default();
        match f.stable() {
            Some(true) => e.0 += 1,
            _ => e.1 += 1,
        }
    }
    CensusRow {
        n,
        l,
        total_lines: lines.len(),
        sizes: hist
            .into_iter()
            .map(|(size, (stable, unstable))| SizeCount {
                size,
                stable,
                unstable,
            })
            .collect(),
    }
}

/// Stirling number of the second kind, `S(n, k)`, by the standard recurrence
/// `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
pub fn stirling(n: usize, k: usize) -> BigUint {
    if n == 0 && k == 0 {
        return BigUint::one();
    }
    if k == 0 || k > n {
        return BigUint::zero();
    }
    let mut row: Vec<BigUint> = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one(); // S(0,0)
    for _m in 1..=n {
        for j in (1..=k).rev() {
            let carry = std::mem::take(&mut row[j]);
            row[j] = carry * BigUint::from(j) + row[j - 1].clone();
        }
        row[0] = BigUint::zero();
    }
    row[k].clone()
}

pub fn binomial_big(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn factorial_big(k: usize) -> BigUint {
    (1..=k).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

/// Exact corank-1 and rank-1 counts with the first Kazhdan-Lusztig
/// coefficient identity `c1 = #corank-1 flats - #rank-1 flats`.
#[derive(Debug, Clone)]
pub struct KlExactCounts {
    pub corank1: usize,
    pub rank1: usize,
    pub c1: i128,
}

pub fn kl_first_coefficient_exact(n: usize, l: usize, budget: u64) -> Result<KlExactCounts> {
    let arr = build_arrangement(n, l)?;
    kl_first_coefficient_of(&arr, budget)
}

pub fn kl_first_coefficient_of(arr: &Arrangement, budget: u64) -> Result<KlExactCounts> {
    let corank1 = arr.enumerate_lines(budget)?.len();
    let rank1 = arr.enumerate_rank1_flats().len();
    Ok(KlExactCounts {
        corank1,
        rank1,
        c1: corank1 as i128 - rank1 as i128,
    })
}

/// The lower-bound report for the first Kazhdan-Lusztig coefficient:
/// corank-1 flats number at least `S(n, l+1)` (one special flat per fiber
/// partition into `l+1` blocks), rank-1 flats are subtracted through the
/// bound function `f_l(n) = S(n, l+1) - C(n, l)`, whose normalized ratio
/// `f_l(n) (l+1)! / (l+1)^n` tends to 1.
#[derive(Debug, Clone)]
pub struct KlBoundReport {
    pub n: usize,
    pub l: usize,
    pub stirling_lower: BigUint,
    pub f_l: BigInt,
    pub ratio: BigRational,
    /// How `f_l` is defined, printed alongside the numbers.
    pub f_def: &'static str,
    pub exact: Option<KlExactCounts>,
}

pub const F_DEF: &str = "f_l(n) = S(n,l+1) - C(n,l)";

pub fn kl_bound_report(n: usize, l: usize, exact: Option<KlExactCounts>) -> KlBoundReport {
    let stirling_lower = stirling(n, l + 1);
    let f_l = BigInt::from(stirling_lower.clone()) - BigInt::from(binomial_big(n, l));
    let ratio = kl_ratio(n, l);
    KlBoundReport {
        n,
        l,
        stirling_lower,
        f_l,
        ratio,
        f_def: F_DEF,
        exact,
    }
}

/// `f_l(n) * (l+1)! / (l+1)^n` in exact rationals.
pub fn kl_ratio(n: usize, l: usize) -> BigRational {
    let f_l = BigInt::from(stirling(n, l + 1)) - BigInt::from(binomial_big(n, l));
    let numer = f_l * BigInt::from(factorial_big(l + 1));
    let denom = BigInt::from(l as u64 + 1).pow(n as u32);
    BigRational::new(numer, denom)
}

/// Fixed-point decimal rendering of a rational, round half up.
pub fn render_rational(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * BigRational::from_integer(scale.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rounded = if scaled.is_negative() {
        -((-scaled + half).floor())
    } else {
        (scaled + half).floor()
    };
    let v = rounded.to_integer();
    let sign = if v.is_negative() { "-" } else { "" };
    let v = v.abs();
    let int_part = &v / &scale;
    let frac_part = &v % &scale;
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{frac:0>width$}",
        frac = frac_part.to_string(),
        width = digits as usize
    )
}

/// Census of special flats from surjections onto `m` parts: one flat per
/// fiber partition, `S(n, m)` of them when all distinct.
#[derive(Debug, Clone)]
pub struct SpecialFlatCensus {
    pub n: usize,
    pub l: usize,
    pub m: usize,
    pub count: usize,
    pub expected: BigUint,
    pub all_distinct: bool,
    /// Distinct dimensions observed (a single value in every tested case).
    pub dimensions: Vec<usize>,
    pub flats: Vec<Flat>,
}

pub fn special_flat_census(arr: &Arrangement, m: usize) -> Result<SpecialFlatCensus> {
    let n = arr.n();
    let parts = set_partitions_with_blocks(n, m);
    let mut flats = Vec::with_capacity(parts.len());
    let mut keys = std::collections::HashSet::new();
    let mut dims = std::collections::BTreeSet::new();
    for part in &parts {
        let flat = arr.special_flat_of_partition(part)?;
        dims.insert(flat.dimension());
        keys.insert(flat.key().to_vec());
        flats.push(flat);
    }
    Ok(SpecialFlatCensus {
        n,
        l: arr.level(),
        m,
        count: keys.len(),
        expected: stirling(n, m),
        all_distinct: keys.len() == parts.len(),
        dimensions: dims.into_iter().collect(),
        flats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::DEFAULT_SUBSET_BUDGET;

    #[test]
    fn stirling_values() {
        assert_eq!(stirling(4, 3), BigUint::from(6u32));
        // cross-check S(7,3) by inclusion-exclusion: (3^7 - 3*2^7 + 3)/6
        let incl_excl = (3u64.pow(7) - 3 * 2u64.pow(7) + 3) / 6;
        assert_eq!(stirling(7, 3), BigUint::from(incl_excl));
        assert_eq!(incl_excl, 301);
        for n in 1..=9usize {
            assert_eq!(stirling(n, 1), BigUint::one());
            assert_eq!(stirling(n, n), BigUint::one());
        }
        assert_eq!(stirling(0, 0), BigUint::one());
        assert_eq!(stirling(5, 0), BigUint::zero());
        // recurrence against inclusion-exclusion on a grid
        for n in 1..=10usize {
            for k in 1..=n {
                let mut acc = BigInt::zero();
                for j in 0..=k {
                    let term = BigInt::from(binomial_big(k, j))
                        * BigInt::from(j as u64).pow(n as u32);
                    if (k - j) % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                let expected = acc / BigInt::from(factorial_big(k));
                assert_eq!(BigInt::from(stirling(n, k)), expected, "S({n},{k})");
            }
        }
    }

    #[test]
    fn percent_rendering() {
        assert_eq!(render_percent(12, 37), "32.4");
        assert_eq!(render_percent(300, 570), "52.6");
        assert_eq!(render_percent(0, 6), "0.0");
        assert_eq!(render_percent(6, 6), "100.0");
        // half cases round up
        assert_eq!(render_percent(1, 2000), "0.1");
        assert_eq!(render_percent(25, 40), "62.5");
    }

    #[test]
    fn census_n4_and_n5() {
        let row4 = line_census(4, 2, DEFAULT_SUBSET_BUDGET).unwrap();
        assert_eq!(row4.total_lines, 6);
        assert_eq!(row4.sizes, vec![SizeCount { size: 2, stable: 6, unstable: 0 }]);
        assert_eq!(row4.percent_unstable(), "0.0");
        assert_eq!(row4.percent_stable(), "100.0");

        let row5 = line_census(5, 2, DEFAULT_SUBSET_BUDGET).unwrap();
        assert_eq!(row5.total_lines, 37);
        assert_eq!(row5.percent_unstable(), "32.4");
        let sizes: Vec<usize> = row5.sizes.iter().map(|s| s.size).collect();
        assert_eq!(sizes, vec![5, 6, 7]);
        // the 12 unstable lines all have the generic size 5; the 25 special
        // flats split 15 (fiber shape (2,2,1), size 6) + 10 ((3,1,1), size 7)
        assert_eq!(row5.size_class(5).unwrap().unstable, 12);
        assert_eq!(row5.size_class(5).unwrap().stable, 0);
        assert_eq!(row5.size_class(6).unwrap().stable, 15);
        assert_eq!(row5.size_class(6).unwrap().unstable, 0);
        assert_eq!(row5.size_class(7).unwrap().stable, 10);
        assert_eq!(row5.size_class(7).unwrap().unstable, 0);
    }

    #[test]
    fn braid_c1_matches_closed_form() {
        for n in 4..=6usize {
            let counts = kl_first_coefficient_exact(n, 1, DEFAULT_SUBSET_BUDGET).unwrap();
            let closed = 2i128.pow(n as u32 - 1) - 1 - (n * (n - 1) / 2) as i128;
            assert_eq!(counts.corank1 as i128, 2i128.pow(n as u32 - 1) - 1);
            assert_eq!(counts.rank1, n * (n - 1) / 2);
            assert_eq!(counts.c1, closed);
        }
    }

    #[test]
    fn kl_bound_examples() {
        // l=1, n=10: f = S(10,2) - C(10,1) = 511 - 10 = 501
        let report = kl_bound_report(10, 1, None);
        assert_eq!(report.stirling_lower, BigUint::from(511u32));
        assert_eq!(report.f_l, BigInt::from(501));
        // ratio = 501 * 2 / 2^10 = 1002/1024
        assert_eq!(
            report.ratio,
            BigRational::new(BigInt::from(1002), BigInt::from(1024))
        );
        assert_eq!(render_rational(&report.ratio, 4), "0.9785");
        // l=2, n=6: stirling lower bound is S(6,3) = 90
        let r6 = kl_bound_report(6, 2, None);
        assert_eq!(r6.stirling_lower, BigUint::from(90u32));
    }

    #[test]
    fn kl_ratio_asymptotics() {
        let one = BigRational::one();
        let tol3 = BigRational::new(BigInt::one(), BigInt::from(1000));
        let r30 = kl_ratio(30, 2);
        assert!((one.clone() - &r30).abs() < tol3);
        // nondecreasing on 10..=30 for l=2
        let mut prev = kl_ratio(10, 2);
        for n in 11..=30 {
            let next = kl_ratio(n, 2);
            assert!(next >= prev, "ratio dipped at n={n}");
            prev = next;
        }
        let tol2 = BigRational::new(BigInt::one(), BigInt::from(100));
        let r40 = kl_ratio(40, 3);
        assert!((one - &r40).abs() < tol2);
    }

    #[test]
    fn render_rational_rounding() {
        let r = BigRational::new(BigInt::from(1), BigInt::from(8));
        assert_eq!(render_rational(&r, 2), "0.13"); // 0.125 rounds half up
        assert_eq!(render_rational(&r, 3), "0.125");
        let neg = BigRational::new(BigInt::from(-1), BigInt::from(8));
        assert_eq!(render_rational(&neg, 2), "-0.13");
        let whole = BigRational::from_integer(BigInt::from(3));
        assert_eq!(render_rational(&whole, 0), "3");
    }

    #[test]
    fn special_flat_census_examples() {
        let arr5 = build_arrangement(5, 2).unwrap();
        let c = special_flat_census(&arr5, 4).unwrap();
        assert_eq!(c.count, 10); // S(5,4)
        assert!(c.all_distinct);
        assert_eq!(c.dimensions, vec![3]);

        let c3 = special_flat_census(&arr5, 3).unwrap();
        assert_eq!(c3.count, 25);
        assert_eq!(c3.dimensions, vec![1]);

        // n=4, m=3: the six special flats are exactly the line set
        let arr4 = build_arrangement(4, 2).unwrap();
        let c4 = special_flat_census(&arr4, 3).unwrap();
        assert_eq!(c4.count, 6);
        let lines = arr4.enumerate_lines(DEFAULT_SUBSET_BUDGET).unwrap();
        let line_keys: std::collections::HashSet<_> =
            lines.iter().map(|f| f.key().to_vec()).collect();
        let special_keys: std::collections::HashSet<_> =
            c4.flats.iter().map(|f| f.key().to_vec()).collect();
        assert_eq!(line_keys, special_keys);
    }
}
