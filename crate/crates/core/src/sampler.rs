//! Seeded randomized line sampling: uniform draws of `(dim-1)`-subsets of
//! hyperplanes, line detection by exact rank, extension to the maximal
//! intersection, deduplication by closure key, stability classification,
//! and a JSON-lines store format.
//!
//! Reproducibility contract: trial `t` consumes its own SplitMix64 stream
//! keyed by `(seed, t)`, so the trial -> draw map is a pure function
//! independent of worker count and chunking. Identical `(seed, trials)`
//! produce byte-identical stores.

use crate::arrangement::Arrangement;
use crate::census::{census_of_lines, CensusRow};
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::io::{BufRead, BufWriter, Write};
use std::path::Path;

/// Identifier of the draw stream written into store headers.
pub const PRNG_ID: &str = "splitmix64-fy-v1";
pub const SCHEMA_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64 stream for one trial: the initial state is
/// `mix64(seed) ^ mix64((trial + 1) * GOLDEN)`, then the standard
/// `state += GOLDEN; output = mix64(state)` generator.
pub struct TrialRng {
    state: u64,
}

impl TrialRng {
    pub fn new(seed: u64, trial: u64) -> TrialRng {
        TrialRng {
            state: mix64(seed) ^ mix64(trial.wrapping_add(1).wrapping_mul(GOLDEN)),
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Unbiased uniform draw from `0..bound` by masked rejection.
    #[inline]
    pub fn below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        let bound = bound as u64;
        let mask = u64::MAX >> (bound - 1).leading_zeros().min(63);
        loop {
            let v = self.next_u64() & mask;
            if v < bound {
                return v as usize;
            }
        }
    }
}

/// Uniform k-subset of `{0,..,ground-1}` by partial Fisher-Yates; sorted.
pub fn draw_subset(rng: &mut TrialRng, ground: usize, k: usize, scratch: &mut Vec<usize>) -> Vec<usize> {
    scratch.clear();
    scratch.extend(0..ground);
    for i in 0..k {
        let j = i + rng.below(ground - i);
        scratch.swap(i, j);
    }
    let mut subset = scratch[..k].to_vec();
    subset.sort_unstable();
    subset
}

/// Sampling run configuration.
#[derive(Debug, Clone)]
pub struct SampleConfig {
    pub n: usize,
    pub l: usize,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
    pub store_path: Option<std::path::PathBuf>,
}

/// Store header: everything needed to reproduce and to merge safely.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoreHeader {
    pub schema_version: u32,
    pub n: usize,
    pub l: usize,
    pub seed: u64,
    pub trials: u64,
    pub prng_id: String,
    pub engine_version: String,
}

/// One distinct line: its closure key, size, dimension (always 1), stability
/// tag, the first trial that found it and the subset drawn in that trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoreRecord {
    pub key: Vec<usize>,
    pub size: usize,
    pub dim: usize,
    pub stable: bool,
    pub trial: u64,
    pub sample: Vec<usize>,
}

/// A deduplicated store of sampled lines, canonically sorted by key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleStore {
    pub header: StoreHeader,
    pub records: Vec<StoreRecord>,
}

impl SampleStore {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    fn canonical_sort(&mut self) {
        self.records.sort_by(|a, b| a.key.cmp(&b.key));
    }

    /// Write as JSON lines: a header line, then one record per line.
    pub fn write<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{}", serde_json::to_string(&self.header).expect("header serializes"))?;
        for r in &self.records {
            writeln!(w, "{}", serde_json::to_string(r).expect("record serializes"))?;
        }
        Ok(())
    }

    pub fn write_to_path(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut buf = BufWriter::new(file);
        self.write(&mut buf)?;
        buf.flush()?;
        Ok(())
    }

    pub fn read<R: BufRead>(r: R) -> Result<SampleStore> {
        let mut lines = r.lines();
        let header_line = lines
            .next()
            .ok_or_else(|| Error::StoreFormat("empty store file".into()))??;
        let header: StoreHeader = serde_json::from_str(&header_line)
            .map_err(|e| Error::StoreFormat(format!("bad header: {e}")))?;
        if header.schema_version != SCHEMA_VERSION {
            return Err(Error::StoreFormat(format!(
                "unsupported schema version {}",
                header.schema_version
            )));
        }
        let mut records = Vec::new();
        for (i, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: StoreRecord = serde_json::from_str(&line)
                .map_err(|e| Error::StoreFormat(format!("bad record on line {}: {e}", i + 2)))?;
            records.push(rec);
        }
        Ok(SampleStore { header, records })
    }

    pub fn read_from_path(path: &Path) -> Result<SampleStore> {
        let file = std::fs::File::open(path)?;
        SampleStore::read(std::io::BufReader::new(file))
    }
}

/// Run the four-step sampling loop: (1) draw a uniform `(dim-1)`-subset per
/// trial, (2) keep it when the intersection is a line, (3) extend to the
/// maximal intersection (the closure key) and deduplicate on it, (4) tag
/// stability. Returns the canonical store.
pub fn sample_lines(cfg: &SampleConfig, arr: &Arrangement) -> Result<SampleStore> {
    if cfg.trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    if cfg.n != arr.n() || cfg.l != arr.level() {
        return Err(Error::invalid("configuration does not match the arrangement"));
    }
    let dim = arr.dimension();
    if dim < 2 {
        return Err(Error::invalid("sampling needs module dimension at least 2"));
    }
    let draw = dim - 1;
    let h = arr.num_hyperplanes();
    if draw > h {
        return Err(Error::invalid(format!(
            "draw size {draw} exceeds the number of hyperplanes {h}"
        )));
    }
    let chunk: u64 = 4096;
    let nchunks = cfg.trials.div_ceil(chunk);
    let merged: HashMap<Vec<usize>, StoreRecord> = (0..nchunks)
        .into_par_iter()
        .map(|ci| {
            let start = ci * chunk;
            let end = cfg.trials.min(start + chunk);
            let mut local: HashMap<Vec<usize>, StoreRecord> = HashMap::new();
            let mut scratch = Vec::with_capacity(h);
            for trial in start..end {
                let mut rng = TrialRng::new(cfg.seed, trial);
                let sample = draw_subset(&mut rng, h, draw, &mut scratch);
                let Some(record) = try_line(arr, &sample, trial, draw) else {
                    continue;
                };
                match local.get_mut(&record.key) {
                    Some(existing) => {
                        if record.trial < existing.trial {
                            *existing = record;
                        }
                    }
                    None => {
                        local.insert(record.key.clone(), record);
                    }
                }
            }
            local
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                match a.get_mut(&k) {
                    Some(existing) => {
                        if v.trial < existing.trial {
                            *existing = v;
                        }
                    }
                    None => {
                        a.insert(k, v);
                    }
                }
            }
            a
        });
    let mut store = SampleStore {
        header: StoreHeader {
            schema_version: SCHEMA_VERSION,
            n: cfg.n,
            l: cfg.l,
            seed: cfg.seed,
            trials: cfg.trials,
            prng_id: PRNG_ID.into(),
            engine_version: ENGINE_VERSION.into(),
        },
        records: merged.into_values().collect(),
    };
    store.canonical_sort();
    Ok(store)
}

fn try_line(arr: &Arrangement, sample: &[usize], trial: u64, draw: usize) -> Option<StoreRecord> {
    if arr.rank(sample).ok()? != draw {
        return None;
    }
    let flat = arr.closure(sample).ok()?;
    debug_assert_eq!(flat.dimension(), 1);
    let stable = arr.is_stable(&flat);
    Some(StoreRecord {
        size: flat.size(),
        dim: flat.dimension(),
        stable,
        trial,
        sample: sample.to_vec(),
        key: flat.key().to_vec(),
    })
}

/// Closure-key hit counts over accepted trials (no deduplication); feeds the
/// conditional-uniformity diagnostics.
pub fn sample_hit_counts(cfg: &SampleConfig, arr: &Arrangement) -> Result<HashMap<Vec<usize>, u64>> {
    let dim = arr.dimension();
    let draw = dim - 1;
    let h = arr.num_hyperplanes();
    let chunk: u64 = 4096;
    let nchunks = cfg.trials.div_ceil(chunk);
    Ok((0..nchunks)
        .into_par_iter()
        .map(|ci| {
            let start = ci * chunk;
            let end = cfg.trials.min(start + chunk);
            let mut local: HashMap<Vec<usize>, u64> = HashMap::new();
            let mut scratch = Vec::with_capacity(h);
            for trial in start..end {
                let mut rng = TrialRng::new(cfg.seed, trial);
                let sample = draw_subset(&mut rng, h, draw, &mut scratch);
                if let Some(rec) = try_line(arr, &sample, trial, draw) {
                    *local.entry(rec.key).or_default() += 1;
                }
            }
            local
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        }))
}

/// Re-verify every record: sorted in-range keys, closure maximality,
/// dimension exactly 1, stability recomputed, sample generates the key,
/// unique keys. Lists the offending record indices (0-based, in store order).
pub fn validate_store(store: &SampleStore, arr: &Arrangement) -> Result<()> {
    if store.header.n != arr.n() || store.header.l != arr.level() {
        return Err(Error::HeaderMismatch(format!(
            "store is for (n={}, l={}), arrangement is (n={}, l={})",
            store.header.n,
            store.header.l,
            arr.n(),
            arr.level()
        )));
    }
    let mut bad: Vec<(usize, String)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, rec) in store.records.iter().enumerate() {
        if !seen.insert(rec.key.clone()) {
            bad.push((i, "duplicate closure key".into()));
            continue;
        }
        if rec.key.windows(2).any(|w| w[0] >= w[1])
            || rec.key.iter().any(|&j| j >= arr.num_hyperplanes())
        {
            bad.push((i, "closure key not a sorted in-range set".into()));
            continue;
        }
        if rec.dim != 1 {
            bad.push((i, format!("dimension {} is not 1", rec.dim)));
            continue;
        }
        let Ok(flat) = arr.closure(&rec.sample) else {
            bad.push((i, "sample out of range".into()));
            continue;
        };
        if flat.dimension() != 1 {
            bad.push((i, "sample does not cut a line".into()));
            continue;
        }
        if flat.key() != rec.key {
            bad.push((i, "closure key is not maximal for the sample".into()));
            continue;
        }
        if rec.size != rec.key.len() {
            bad.push((i, "size does not match the key length".into()));
            continue;
        }
        if arr.is_stable(&flat) != rec.stable {
            bad.push((i, "stability tag does not recompute".into()));
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        let listing: Vec<String> = bad
            .iter()
            .take(10)
            .map(|(i, why)| format!("record {i}: {why}"))
            .collect();
        Err(Error::StoreFormat(format!(
            "{} invalid records: {}",
            bad.len(),
            listing.join("; ")
        )))
    }
}

/// Per-size statistics of a validated store.
pub fn classify_store(store: &SampleStore, arr: &Arrangement) -> Result<CensusRow> {
    validate_store(store, arr)?;
    let flats: Vec<crate::arrangement::Flat> = store
        .records
        .iter()
        .map(|rec| {
            let mut f = arr.closure(&rec.key).expect("validated key");
            f.set_stable(rec.stable);
            f
        })
        .collect();
    Ok(census_of_lines(store.header.n, store.header.l, &flats))
}

/// Union of two stores by closure key, keeping the earliest finding trial.
/// Headers must agree on `(schema, n, l, prng, engine)`. When the seeds
/// agree the merge is idempotent (`trials = max`); different seeds
/// accumulate (`trials = a + b`, seed recorded as 0 = mixed).
pub fn merge_stores(a: &SampleStore, b: &SampleStore) -> Result<SampleStore> {
    let (ha, hb) = (&a.header, &b.header);
    if (ha.schema_version, ha.n, ha.l, &ha.prng_id, &ha.engine_version)
        != (hb.schema_version, hb.n, hb.l, &hb.prng_id, &hb.engine_version)
    {
        return Err(Error::HeaderMismatch(format!(
            "cannot merge stores with headers {ha:?} and {hb:?}"
        )));
    }
    let mut merged: HashMap<Vec<usize>, StoreRecord> = HashMap::new();
    for rec in a.records.iter().chain(b.records.iter()) {
        match merged.get_mut(&rec.key) {
            Some(existing) => {
                if rec.trial < existing.trial {
                    *existing = rec.clone();
                }
            }
            None => {
                merged.insert(rec.key.clone(), rec.clone());
            }
        }
    }
    let (seed, trials) = if ha.seed == hb.seed {
        (ha.seed, ha.trials.max(hb.trials))
    } else {
        (0, ha.trials + hb.trials)
    };
    let mut store = SampleStore {
        header: StoreHeader {
            schema_version: ha.schema_version,
            n: ha.n,
            l: ha.l,
            seed,
            trials,
            prng_id: ha.prng_id.clone(),
            engine_version: ha.engine_version.clone(),
        },
        records: merged.into_values().collect(),
    };
    store.canonical_sort();
    Ok(store)
}
