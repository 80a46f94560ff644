//! Desk-scale counting experiments: exact canonical counts, the speed
//! lower bound, the great-partition ratio, and common-neighbor statistics.
//!
//! The experiments target the constructive content of the counting claims.
//! The "almost all string graphs" statements themselves are out of reach
//! at any desk scale: there is no way to enumerate string graphs (their
//! recognition is NP-complete), so no sampler for the uniform measure on
//! them exists here. Reports say so instead of pretending.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use crate::error::ParamError;
use crate::graph::graph_from_edge_mask;
use crate::partition::{
    common_neighbor_threshold, count_great_partitions_restricted, is_great, pstar_check,
};
use crate::sample::{balanced_sizes, random_great_graph};

/// Everything an experiment reports. The JSON form is byte-identical for a
/// fixed seed and version, so the wall-clock runtime is deliberately kept
/// out of it; callers print it separately.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub statistics: BTreeMap<String, Value>,
    pub expectation: String,
    /// What the experiment can and cannot establish.
    pub scope: String,
    pub pass: bool,
    #[serde(skip)]
    pub runtime: Duration,
}

/// The honest caveat attached to every sampled experiment standing in for
/// an "almost all string graphs" claim.
pub const ASYMPTOTIC_SCOPE: &str = "asymptotic 'almost all string graphs' claims are not \
     desk-testable: string graphs cannot be enumerated (recognition is NP-complete), so no \
     uniform sampler exists; this experiment checks the constructive content on planted \
     great graphs instead";

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }

    pub fn human(&self) -> String {
        let mut out = format!(
            "experiment: {}\nn = {}, samples = {}, seed = {}\n",
            self.experiment, self.n, self.samples, self.seed
        );
        for (k, v) in &self.statistics {
            out.push_str(&format!("  {} = {}\n", k, v));
        }
        out.push_str(&format!(
            "expectation: {}\nresult: {}\nruntime: {:.3}s\n",
            self.expectation,
            if self.pass { "pass" } else { "FAIL" },
            self.runtime.as_secs_f64()
        ));
        out
    }
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Exhaustive count of labeled great graphs on n vertices, parallel over
/// edge-mask ranges.
pub fn count_canonical_exact(n: usize) -> Result<u64, ParamError> {
    if n > 6 {
        return Err(ParamError::new("exhaustive canonical count is limited to n <= 6"));
    }
    let masks = 1u64 << pair_count(n);
    let count = (0..masks)
        .into_par_iter()
        .filter(|&mask| is_great(&graph_from_edge_mask(n, mask)))
        .count() as u64;
    Ok(count)
}

/// Cross-pair count of the balanced 4-partition: every graph that is
/// complete inside the parts is great regardless of the cross edges, so
/// the canonical count is at least 2^(m*).
pub fn speed_lower_bound_check(n: usize) -> Result<ExperimentReport, ParamError> {
    let start = Instant::now();
    let sizes = balanced_sizes(n);
    let internal: usize = sizes.iter().map(|&s| pair_count(s)).sum();
    let m_star = pair_count(n) - internal;
    let mut statistics = BTreeMap::new();
    statistics.insert("part_sizes".into(), json!(sizes.to_vec()));
    statistics.insert("m_star".into(), json!(m_star));
    let (pass, expectation) = if n <= 6 {
        let count = count_canonical_exact(n)?;
        let bound = 1u64 << m_star;
        statistics.insert("exact_count".into(), json!(count));
        statistics.insert("lower_bound".into(), json!(bound));
        (count >= bound, format!("exact canonical count >= 2^{}", m_star))
    } else {
        let threshold = (3 * pair_count(n)).div_ceil(4);
        statistics.insert("three_quarter_threshold".into(), json!(threshold));
        (
            m_star >= threshold,
            format!("m* >= ceil(3 C(n,2) / 4) = {}", threshold),
        )
    };
    Ok(ExperimentReport {
        experiment: "speed_lower_bound".into(),
        n,
        samples: 1,
        seed: 0,
        statistics,
        expectation,
        scope: "counts only graphs complete inside a fixed balanced partition; a lower \
                bound on the canonical count, not an estimate of it"
            .into(),
        pass,
        runtime: start.elapsed(),
    })
}

/// Samples balanced great graphs and counts their great partitions in
/// candidate-restricted mode. Permuting the three clique parts of the
/// planted partition always yields 6 ordered tuples, so counts below 6
/// cannot occur; the interesting question is how often exactly 6 appear.
pub fn great_partition_ratio_experiment(
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<ExperimentReport, ParamError> {
    if n < 32 {
        return Err(ParamError::new("ratio experiment needs n >= 32"));
    }
    if samples == 0 {
        return Err(ParamError::new("at least one sample required"));
    }
    let start = Instant::now();
    let sizes = balanced_sizes(n);
    let counts: Vec<u64> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let (g, _) = random_great_graph(&sizes, seed.wrapping_add(i as u64));
            count_great_partitions_restricted(&g)
        })
        .collect();
    let mut histogram: BTreeMap<String, usize> = BTreeMap::new();
    for &c in &counts {
        *histogram.entry(c.to_string()).or_insert(0) += 1;
    }
    let exactly_six = counts.iter().filter(|&&c| c == 6).count();
    let below_six = counts.iter().filter(|&&c| c < 6).count();
    let fraction = exactly_six as f64 / samples as f64;
    let mut statistics = BTreeMap::new();
    statistics.insert("histogram".into(), json!(histogram));
    statistics.insert("fraction_exactly_six".into(), json!(fraction));
    statistics.insert("below_six".into(), json!(below_six));
    Ok(ExperimentReport {
        experiment: "great_partition_ratio".into(),
        n,
        samples,
        seed,
        statistics,
        expectation: "mode at 6; fraction with exactly 6 >= 0.90; none below 6".into(),
        scope: ASYMPTOTIC_SCOPE.into(),
        pass: fraction >= 0.90 && below_six == 0,
        runtime: start.elapsed(),
    })
}

#[derive(Default, Clone, Copy)]
struct NeighborSums {
    holds: usize,
    same: (u64, u64),
    cross: (u64, u64),
    x4_same_half: (u64, u64),
    x4_other: (u64, u64),
}

impl NeighborSums {
    fn merge(mut self, o: NeighborSums) -> NeighborSums {
        self.holds += o.holds;
        for (a, b) in [
            (&mut self.same, o.same),
            (&mut self.cross, o.cross),
            (&mut self.x4_same_half, o.x4_same_half),
            (&mut self.x4_other, o.x4_other),
        ] {
            a.0 += b.0;
            a.1 += b.1;
        }
        self
    }
}

fn mean(sum_pairs: (u64, u64)) -> f64 {
    if sum_pairs.1 == 0 {
        return 0.0;
    }
    sum_pairs.0 as f64 / sum_pairs.1 as f64
}

/// Common-neighbor statistics over sampled balanced great graphs.
///
/// The headline means cover pairs inside one clique part (expected close to
/// 7n/16) and pairs across two clique parts (close to 3n/8). Pairs touching
/// X4 follow different laws (a same-half pair sees about 5n/16 common
/// neighbors, since its own half is only about n/8 of the graph), so they
/// are reported separately rather than folded into the headline means.
pub fn pstar_statistics(n: usize, samples: usize, seed: u64) -> Result<ExperimentReport, ParamError> {
    if n < 64 {
        return Err(ParamError::new("common-neighbor statistics need n >= 64"));
    }
    if samples == 0 {
        return Err(ParamError::new("at least one sample required"));
    }
    let start = Instant::now();
    let sizes = balanced_sizes(n);
    let totals = (0..samples)
        .into_par_iter()
        .map(|i| {
            let (g, p) = random_great_graph(&sizes, seed.wrapping_add(i as u64));
            let mut acc = NeighborSums::default();
            if pstar_check(&g, &p).expect("sampled partition is valid").holds {
                acc.holds = 1;
            }
            let cliques: Vec<Vec<usize>> =
                [&p.x1, &p.x2, &p.x3].iter().map(|s| s.to_vec()).collect();
            for part in &cliques {
                for (a, &u) in part.iter().enumerate() {
                    for &v in &part[a + 1..] {
                        acc.same.0 += g.common_neighbors(u, v).len() as u64;
                        acc.same.1 += 1;
                    }
                }
            }
            for (ci, part) in cliques.iter().enumerate() {
                for other in &cliques[ci + 1..] {
                    for &u in part {
                        for &v in other {
                            acc.cross.0 += g.common_neighbors(u, v).len() as u64;
                            acc.cross.1 += 1;
                        }
                    }
                }
            }
            for half in [&p.x4a, &p.x4b] {
                let m = half.to_vec();
                for (a, &u) in m.iter().enumerate() {
                    for &v in &m[a + 1..] {
                        acc.x4_same_half.0 += g.common_neighbors(u, v).len() as u64;
                        acc.x4_same_half.1 += 1;
                    }
                }
            }
            let x4 = p.x4().to_vec();
            for &u in &p.x4a.to_vec() {
                for &v in &p.x4b.to_vec() {
                    acc.x4_other.0 += g.common_neighbors(u, v).len() as u64;
                    acc.x4_other.1 += 1;
                }
            }
            for &u in &x4 {
                for part in &cliques {
                    for &v in part {
                        acc.x4_other.0 += g.common_neighbors(u, v).len() as u64;
                        acc.x4_other.1 += 1;
                    }
                }
            }
            acc
        })
        .reduce(NeighborSums::default, NeighborSums::merge);

    let nf = n as f64;
    let band = 3.0 * nf.sqrt();
    let same_center = 7.0 * nf / 16.0;
    let cross_center = 3.0 * nf / 8.0;
    let mean_same = mean(totals.same);
    let mean_cross = mean(totals.cross);
    let fraction = totals.holds as f64 / samples as f64;
    let same_ok = (mean_same - same_center).abs() <= band;
    let cross_ok = (mean_cross - cross_center).abs() <= band;

    let mut statistics = BTreeMap::new();
    statistics.insert("pstar_fraction".into(), json!(fraction));
    statistics.insert("threshold_13n_32".into(), json!(common_neighbor_threshold(n)));
    statistics.insert("mean_same_clique_part".into(), json!(mean_same));
    statistics.insert(
        "band_same_clique_part".into(),
        json!([same_center - band, same_center + band]),
    );
    statistics.insert("mean_cross_clique_part".into(), json!(mean_cross));
    statistics.insert(
        "band_cross_clique_part".into(),
        json!([cross_center - band, cross_center + band]),
    );
    statistics.insert("mean_x4_same_half".into(), json!(mean(totals.x4_same_half)));
    statistics.insert("mean_x4_other".into(), json!(mean(totals.x4_other)));
    Ok(ExperimentReport {
        experiment: "pstar_statistics".into(),
        n,
        samples,
        seed,
        statistics,
        expectation:
            "pstar fraction >= 0.95; same-clique-part mean within 7n/16 +- 3 sqrt(n); \
             cross-clique-part mean within 3n/8 +- 3 sqrt(n)"
                .into(),
        scope: ASYMPTOTIC_SCOPE.into(),
        pass: fraction >= 0.95 && same_ok && cross_ok,
        runtime: start.elapsed(),
    })
}
