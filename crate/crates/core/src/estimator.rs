//! Two-round capture-recapture estimates of line counts per size class:
//! `estimate = |F_m| * |F'_m| / |F_m intersect F'_m|`, valid because the
//! sampler is uniform within a size class.

use crate::census::CensusRow;
use crate::error::{Error, Result};
use crate::sampler::SampleStore;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::collections::{BTreeMap, HashSet};

/// One size class of the two-round comparison.
#[derive(Debug, Clone)]
pub struct EstimateRow {
    pub size: usize,
    pub count_a: usize,
    pub count_b: usize,
    pub overlap: usize,
    /// Present iff all three counts are nonzero.
    pub estimate: Option<BigRational>,
    /// Both rounds found exactly the same set; possibly exhaustive, but not
    /// provably so.
    pub saturated: bool,
    /// True count when an exact census was supplied.
    pub exact: Option<usize>,
}

impl EstimateRow {
    /// The estimate rounded to the nearest integer, ties up.
    pub fn estimate_rounded(&self) -> Option<BigInt> {
        self.estimate.as_ref().map(|e| {
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            (e + half).floor().to_integer()
        })
    }

    pub fn ratio_to_exact(&self) -> Option<BigRational> {
        match (&self.estimate, self.exact) {
            (Some(e), Some(t)) if t > 0 => {
                Some(e / BigRational::from_integer(BigInt::from(t)))
            }
            _ => None,
        }
    }
}

/// The full report: rows sorted by size, with the seeds on record and a
/// degeneracy flag when the rounds were not independent.
#[derive(Debug, Clone)]
pub struct EstimateReport {
    pub n: usize,
    pub l: usize,
    pub seed_a: u64,
    pub seed_b: u64,
    pub same_seed: bool,
    pub rows: Vec<EstimateRow>,
}

/// Lincoln-Petersen per size class over two stores.
pub fn capture_recapture(a: &SampleStore, b: &SampleStore) -> Result<EstimateReport> {
    if (a.header.n, a.header.l) != (b.header.n, b.header.l) {
        return Err(Error::HeaderMismatch(format!(
            "stores are for (n={}, l={}) and (n={}, l={})",
            a.header.n, a.header.l, b.header.n, b.header.l
        )));
    }
    let mut by_size_a: BTreeMap<usize, HashSet<&[usize]>> = BTreeMap::new();
    for rec in &a.records {
        by_size_a.entry(rec.size).or_default().insert(&rec.key);
    }
    let mut by_size_b: BTreeMap<usize, HashSet<&[usize]>> = BTreeMap::new();
    for rec in &b.records {
        by_size_b.entry(rec.size).or_default().insert(&rec.key);
    }
    let sizes: std::collections::BTreeSet<usize> = by_size_a
        .keys()
        .chain(by_size_b.keys())
        .copied()
        .collect();
    let empty = HashSet::new();
    let rows = sizes
        .into_iter()
        .map(|size| {
            let fa = by_size_a.get(&size).unwrap_or(&empty);
            let fb = by_size_b.get(&size).unwrap_or(&empty);
            let overlap = fa.intersection(fb).count();
            let (count_a, count_b) = (fa.len(), fb.len());
            let estimate = (count_a > 0 && count_b > 0 && overlap > 0).then(|| {
                BigRational::new(
                    BigInt::from(count_a) * BigInt::from(count_b),
                    BigInt::from(overlap),
                )
            });
            EstimateRow {
                size,
                count_a,
                count_b,
                overlap,
                estimate,
                saturated: count_a > 0 && count_a == count_b && count_b == overlap,
                exact: None,
            }
        })
        .collect();
    Ok(EstimateReport {
        n: a.header.n,
        l: a.header.l,
        seed_a: a.header.seed,
        seed_b: b.header.seed,
        same_seed: a.header.seed == b.header.seed,
        rows,
    })
}

/// Capture-recapture with true counts appended when an exact census is
/// available.
pub fn estimate_report(
    a: &SampleStore,
    b: &SampleStore,
    exact: Option<&CensusRow>,
) -> Result<EstimateReport> {
    let mut report = capture_recapture(a, b)?;
    if let Some(census) = exact {
        if (census.n, census.l) != (report.n, report.l) {
            return Err(Error::HeaderMismatch(
                "exact census does not match the stores".into(),
            ));
        }
        for row in report.rows.iter_mut() {
            row.exact = census
                .size_class(row.size)
                .map(|s| s.stable + s.unstable)
                .or(Some(0));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampler::{StoreHeader, StoreRecord, SampleStore, SCHEMA_VERSION, PRNG_ID, ENGINE_VERSION};

    fn header(seed: u64) -> StoreHeader {
        StoreHeader {
            schema_version: SCHEMA_VERSION,
            n: 7,
            l: 2,
            seed,
            trials: 100,
            prng_id: PRNG_ID.into(),
            engine_version: ENGINE_VERSION.into(),
        }
    }

    fn record(size: usize, tag: usize) -> StoreRecord {
        // fabricated but unique key per (size, tag)
        StoreRecord {
            key: vec![size, tag, tag + 1],
            size,
            dim: 1,
            stable: tag % 2 == 0,
            trial: tag as u64,
            sample: vec![size, tag],
        }
    }

    fn synthetic(seed: u64, classes: &[(usize, std::ops::Range<usize>)]) -> SampleStore {
        let records = classes
            .iter()
            .flat_map(|(size, tags)| tags.clone().map(|t| record(*size, t)))
            .collect();
        SampleStore {
            header: header(seed),
            records,
        }
    }

    #[test]
    fn reported_arithmetic_rows() {
        // (162, 173, 1) -> 28,026 ; (1620,1620,1620) -> 1,620 ; (6,11,0) -> N/A
        let a = synthetic(1, &[(15, 0..162), (21, 0..1620), (14, 0..6)]);
        let b = synthetic(2, &[(15, 161..334), (21, 0..1620), (14, 6..17)]);
        let report = capture_recapture(&a, &b).unwrap();
        assert!(!report.same_seed);
        let row15 = report.rows.iter().find(|r| r.size == 15).unwrap();
        assert_eq!((row15.count_a, row15.count_b, row15.overlap), (162, 173, 1));
        assert_eq!(row15.estimate_rounded().unwrap(), BigInt::from(28_026));
        let row21 = report.rows.iter().find(|r| r.size == 21).unwrap();
        assert_eq!(row21.estimate_rounded().unwrap(), BigInt::from(1_620));
        assert!(row21.saturated);
        let row14 = report.rows.iter().find(|r| r.size == 14).unwrap();
        assert_eq!((row14.count_a, row14.count_b, row14.overlap), (6, 11, 0));
        assert!(row14.estimate.is_none());
        assert!(!row14.saturated);
    }

    #[test]
    fn self_capture_reproduces_counts_with_warning() {
        let a = synthetic(5, &[(15, 0..40), (16, 0..7)]);
        let report = capture_recapture(&a, &a).unwrap();
        assert!(report.same_seed);
        for row in &report.rows {
            assert_eq!(row.count_a, row.count_b);
            assert_eq!(row.count_a, row.overlap);
            assert_eq!(
                row.estimate_rounded().unwrap(),
                BigInt::from(row.count_a)
            );
            assert!(row.saturated);
        }
    }

    #[test]
    fn symmetry_row_by_row() {
        let a = synthetic(1, &[(15, 0..30), (17, 0..4)]);
        let b = synthetic(2, &[(15, 20..45), (18, 0..3)]);
        let ab = capture_recapture(&a, &b).unwrap();
        let ba = capture_recapture(&b, &a).unwrap();
        assert_eq!(ab.rows.len(), ba.rows.len());
        for (x, y) in ab.rows.iter().zip(&ba.rows) {
            assert_eq!(x.size, y.size);
            assert_eq!(x.count_a, y.count_b);
            assert_eq!(x.count_b, y.count_a);
            assert_eq!(x.overlap, y.overlap);
            assert_eq!(x.estimate, y.estimate);
        }
    }

    #[test]
    fn empty_store_gives_na_rows() {
        let a = synthetic(1, &[(15, 0..30)]);
        let b = SampleStore {
            header: header(2),
            records: vec![],
        };
        let report = capture_recapture(&a, &b).unwrap();
        assert!(report.rows.iter().all(|r| r.estimate.is_none()));
    }

    #[test]
    fn header_mismatch_rejected() {
        let a = synthetic(1, &[(15, 0..3)]);
        let mut b = synthetic(2, &[(15, 0..3)]);
        b.header.n = 6;
        assert!(matches!(
            capture_recapture(&a, &b),
            Err(Error::HeaderMismatch(_))
        ));
    }

    #[test]
    fn rounding_ties_up() {
        // estimate 7*5/2 = 17.5 rounds to 18
        let a = synthetic(1, &[(15, 0..7)]);
        let b = synthetic(2, &[(15, 5..10)]);
        let report = capture_recapture(&a, &b).unwrap();
        let row = &report.rows[0];
        assert_eq!((row.count_a, row.count_b, row.overlap), (7, 5, 2));
        assert_eq!(row.estimate_rounded().unwrap(), BigInt::from(18));
    }
}
