use specht_flats::arrangement::{build_arrangement, DEFAULT_SUBSET_BUDGET};
use std::collections::BTreeMap;

fn main() {
    for n in [4usize, 5, 6] {
        let t = std::time::Instant::now();
        let arr = build_arrangement(n, 2).unwrap();
        let lines = arr.enumerate_lines(DEFAULT_SUBSET_BUDGET).unwrap();
        let mut hist: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for f in &lines {
            let e = hist.entry(f.size()).or_default();
            if f.stable() == Some(true) { e.0 += 1 } else { e.1 += 1 }
        }
        let unstable: usize = hist.values().map(|v| v.1).sum();
        println!(
            "n={n}: {} lines, sizes {:?}, unstable {} ({:.4}), elapsed {:?}",
            lines.len(), hist, unstable, unstable as f64 / lines.len() as f64, t.elapsed()
        );
    }
    // rank-1 flats at l=2, n=5 and n=6; and braid corank-1 counts
    for (n, l) in [(5usize, 2usize), (6, 2)] {
        let arr = build_arrangement(n, l).unwrap();
        println!("rank1 count n={n} l={l}: {}", arr.enumerate_rank1_flats().len());
    }
    for n in [4usize, 5, 6, 7] {
        let arr = build_arrangement(n, 1).unwrap();
        let lines = arr.enumerate_lines(DEFAULT_SUBSET_BUDGET).unwrap();
        println!("braid n={n}: corank1={} rank1={}", lines.len(), arr.enumerate_rank1_flats().len());
    }
}
