//! Synthetic two-year citation networks with known structural events, for
//! exercising the change indicators end to end.
//!
//! The generator draws a block-structured sparse count matrix: journals sit
//! in contiguous clusters, cells get Poisson counts at the within- or
//! between-cluster rate, modulated by a per-journal activity weight so that
//! journals differ in size the way real journals do (and so that cluster
//! members share a citedness profile the factor analysis can pick up).
//!
//! Every cell owns its own counter-seeded random stream derived from
//! `(rng_seed, cited, citing)`. The posterior redraws each cell from the
//! same stream at its (possibly event-modified) rate, which makes the null
//! scenario reproduce the prior exactly and couples growth monotonically.
//!
//! [`oracle_information`] is an independent re-implementation of the
//! expected-information measure (plain normalized summation, compensated,
//! no decomposition), kept free of any code from the entropy module so that
//! tests can use it as a genuine second opinion.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::entropy::FrequencyVector;
use crate::ingest::{CitationSnapshot, JournalId};
use crate::math;
use crate::rankings::VectorChange;

/// Spread of the deterministic per-journal activity weights (largest over
/// smallest). Kept moderate so within-cluster cells stay well above the
/// single-citation filter.
const ACTIVITY_SPREAD: f64 = 4.0;

#[derive(Debug, Clone, PartialEq)]
pub enum SynthEvent {
    /// The first `size` journals of cluster 0 tighten into a cluster of
    /// their own: their mutual citation rates scale by `strength`, their
    /// citedness by the rest of the old cluster scales by 1/strength. Their
    /// own citing behaviour is untouched. Strength 1 changes nothing; large
    /// values carve the group out of its old context.
    EmergentCluster { size: usize, strength: f64 },
    /// Clusters `a` and `b` fuse: cross-cluster cells move to the
    /// within-cluster rate.
    Merge { a: usize, b: usize },
    /// Every journal's citedness rates scale by (T_j / T̄)^exponent, where
    /// T_j is its realized prior cited total. Already-leading journals
    /// profit disproportionately.
    PreferentialGrowth { exponent: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub n_journals: usize,
    pub n_clusters: usize,
    pub within_cluster_rate: f64,
    pub between_cluster_rate: f64,
    /// Uniform posterior rate multiplier applied before events.
    pub growth_factor: f64,
    pub events: Vec<SynthEvent>,
    pub rng_seed: u64,
}

impl SynthConfig {
    /// Two stable years, no events: prior and posterior are identical.
    pub fn null_scenario() -> Self {
        SynthConfig {
            n_journals: 200,
            n_clusters: 20,
            within_cluster_rate: 10.0,
            between_cluster_rate: 0.1,
            growth_factor: 1.0,
            events: Vec::new(),
            rng_seed: 42,
        }
    }

    /// Default emergent-cluster scenario: 200 journals in 20 clusters with a
    /// 5-journal cluster branching off.
    pub fn emergent_scenario() -> Self {
        SynthConfig {
            n_journals: 200,
            n_clusters: 20,
            within_cluster_rate: 40.0,
            between_cluster_rate: 0.1,
            growth_factor: 1.05,
            events: alloc::vec![SynthEvent::EmergentCluster {
                size: 5,
                strength: 6.0,
            }],
            rng_seed: 42,
        }
    }

    /// Default preferential-growth scenario for the Matthew effect.
    pub fn preferential_scenario() -> Self {
        SynthConfig {
            n_journals: 200,
            n_clusters: 20,
            within_cluster_rate: 12.0,
            between_cluster_rate: 0.5,
            growth_factor: 1.2,
            events: alloc::vec![SynthEvent::PreferentialGrowth { exponent: 2.0 }],
            rng_seed: 42,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SynthError {
    #[error("config needs at least 1 journal")]
    NoJournals,
    #[error("n_clusters must be between 1 and n_journals")]
    BadClusterCount,
    #[error("rates and growth must be finite and non-negative")]
    BadRate,
    #[error("emergent cluster size {size} exceeds cluster 0 ({available} journals)")]
    EmergentTooLarge { size: usize, available: usize },
    #[error("emergent cluster needs at least 2 journals")]
    EmergentTooSmall,
    #[error("merge event references cluster {cluster}, but there are {clusters}")]
    BadMergeCluster { cluster: usize, clusters: usize },
    #[error("merge event needs two distinct clusters")]
    MergeSelf,
    #[error("preferential growth exponent must be finite")]
    BadExponent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    EmergentCluster,
    Merge,
    PreferentialGrowth,
}

impl EventKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventKind::EmergentCluster => "emergent_cluster",
            EventKind::Merge => "merge",
            EventKind::PreferentialGrowth => "preferential_growth",
        }
    }
}

/// What the generator did, journal by journal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    /// Journals whose citation pattern an event rewired, with the event
    /// kind. Global rescalings (preferential growth) mark no journals.
    pub affected: BTreeMap<JournalId, EventKind>,
    pub prior_clusters: BTreeMap<JournalId, usize>,
    pub posterior_clusters: BTreeMap<JournalId, usize>,
}

impl GroundTruth {
    pub fn affected_set(&self) -> BTreeSet<&JournalId> {
        self.affected.keys().collect()
    }
}

pub fn generate_pair(
    config: &SynthConfig,
) -> Result<(CitationSnapshot, CitationSnapshot, GroundTruth), SynthError> {
    validate(config)?;
    let n = config.n_journals;
    let per_cluster = n.div_ceil(config.n_clusters);
    let cluster_of = |j: usize| (j / per_cluster).min(config.n_clusters - 1);

    let journals: Vec<JournalId> = (0..n).map(|j| journal_name(j, n)).collect();
    let activity = activity_weights(n, config.rng_seed);
    let mean_activity = activity.iter().sum::<f64>() / n as f64;
    let activity_norm = mean_activity * mean_activity;

    let base_rate = |cited: usize, citing: usize| -> f64 {
        let block = if cluster_of(cited) == cluster_of(citing) {
            config.within_cluster_rate
        } else {
            config.between_cluster_rate
        };
        block * activity[cited] * activity[citing] / activity_norm
    };

    // prior year
    let mut prior_relations = Vec::new();
    for cited in 0..n {
        for citing in 0..n {
            let count = poisson(cell_stream(config.rng_seed, cited, citing), base_rate(cited, citing));
            if count > 0 {
                prior_relations.push((journals[cited].clone(), journals[citing].clone(), count));
            }
        }
    }
    let prior = CitationSnapshot::from_relations(1998, prior_relations);

    // posterior rates: uniform growth, then events
    let mut affected: BTreeMap<JournalId, EventKind> = BTreeMap::new();
    let mut posterior_clusters: BTreeMap<JournalId, usize> = journals
        .iter()
        .enumerate()
        .map(|(j, id)| (id.clone(), cluster_of(j)))
        .collect();

    let prior_cited_totals: Vec<u64> = {
        let totals = crate::ingest::marginals(&prior, crate::ingest::Axis::Cited);
        journals
            .iter()
            .map(|j| totals.get(j).copied().unwrap_or(0))
            .collect()
    };
    let mean_cited_total =
        prior_cited_totals.iter().sum::<u64>() as f64 / n as f64;

    let mut emergent: Option<(usize, f64)> = None;
    let mut merges: Vec<(usize, usize)> = Vec::new();
    let mut preferential: Option<f64> = None;
    for event in &config.events {
        match *event {
            SynthEvent::EmergentCluster { size, strength } => {
                emergent = Some((size, strength));
                for journal in journals.iter().take(size) {
                    affected.insert(journal.clone(), EventKind::EmergentCluster);
                    posterior_clusters.insert(journal.clone(), config.n_clusters);
                }
            }
            SynthEvent::Merge { a, b } => {
                merges.push((a, b));
                let merged_label = a.min(b);
                for (j, journal) in journals.iter().enumerate() {
                    let c = cluster_of(j);
                    if c == a || c == b {
                        affected.insert(journal.clone(), EventKind::Merge);
                        posterior_clusters.insert(journal.clone(), merged_label);
                    }
                }
            }
            SynthEvent::PreferentialGrowth { exponent } => preferential = Some(exponent),
        }
    }

    let posterior_rate = |cited: usize, citing: usize| -> f64 {
        let mut rate = base_rate(cited, citing) * config.growth_factor;
        for &(a, b) in &merges {
            let cc = cluster_of(cited);
            let kc = cluster_of(citing);
            if (cc == a && kc == b) || (cc == b && kc == a) {
                rate = config.within_cluster_rate * activity[cited] * activity[citing]
                    / activity_norm
                    * config.growth_factor;
            }
        }
        if let Some((size, strength)) = emergent {
            let cited_affected = cited < size;
            let citing_affected = citing < size;
            if cited_affected && citing_affected {
                // the new cluster's mutual citation intensifies
                rate *= strength;
            } else if cited_affected && cluster_of(citing) == 0 {
                // ... while the rest of the old cluster moves away
                rate /= strength.max(1.0);
            }
        }
        if let Some(exponent) = preferential {
            if mean_cited_total > 0.0 {
                let relative = prior_cited_totals[cited] as f64 / mean_cited_total;
                rate *= math::powf(relative, exponent);
            }
        }
        rate
    };

    let mut posterior_relations = Vec::new();
    for cited in 0..n {
        for citing in 0..n {
            let count = poisson(
                cell_stream(config.rng_seed, cited, citing),
                posterior_rate(cited, citing),
            );
            if count > 0 {
                posterior_relations.push((journals[cited].clone(), journals[citing].clone(), count));
            }
        }
    }
    let posterior = CitationSnapshot::from_relations(1999, posterior_relations);

    let prior_clusters = journals
        .iter()
        .enumerate()
        .map(|(j, id)| (id.clone(), cluster_of(j)))
        .collect();
    // events only rewire journals that exist in both years
    affected.retain(|journal, _| {
        prior.registry().contains(journal) && posterior.registry().contains(journal)
    });
    Ok((
        prior,
        posterior,
        GroundTruth {
            affected,
            prior_clusters,
            posterior_clusters,
        },
    ))
}

fn validate(config: &SynthConfig) -> Result<(), SynthError> {
    if config.n_journals == 0 {
        return Err(SynthError::NoJournals);
    }
    if config.n_clusters == 0 || config.n_clusters > config.n_journals {
        return Err(SynthError::BadClusterCount);
    }
    let rates = [
        config.within_cluster_rate,
        config.between_cluster_rate,
        config.growth_factor,
    ];
    if rates.iter().any(|r| !r.is_finite() || *r < 0.0) {
        return Err(SynthError::BadRate);
    }
    let per_cluster = config.n_journals.div_ceil(config.n_clusters);
    for event in &config.events {
        match *event {
            SynthEvent::EmergentCluster { size, strength } => {
                if size < 2 {
                    return Err(SynthError::EmergentTooSmall);
                }
                if size > per_cluster.min(config.n_journals) {
                    return Err(SynthError::EmergentTooLarge {
                        size,
                        available: per_cluster.min(config.n_journals),
                    });
                }
                if !strength.is_finite() || strength < 0.0 {
                    return Err(SynthError::BadRate);
                }
            }
            SynthEvent::Merge { a, b } => {
                if a == b {
                    return Err(SynthError::MergeSelf);
                }
                let clusters = config.n_clusters;
                if a >= clusters || b >= clusters {
                    return Err(SynthError::BadMergeCluster {
                        cluster: a.max(b),
                        clusters,
                    });
                }
            }
            SynthEvent::PreferentialGrowth { exponent } => {
                if !exponent.is_finite() {
                    return Err(SynthError::BadExponent);
                }
            }
        }
    }
    Ok(())
}

pub fn journal_name(index: usize, n_journals: usize) -> JournalId {
    let width = digits(n_journals.saturating_sub(1).max(1));
    JournalId::new(&format!("J{index:0width$}")).expect("generated id is non-empty")
}

fn digits(mut v: usize) -> usize {
    let mut d = 1;
    while v >= 10 {
        v /= 10;
        d += 1;
    }
    d
}

/// Log-spaced activity weights assigned through a seed-keyed shuffle, so
/// every cluster receives a spread of journal sizes.
fn activity_weights(n: usize, seed: u64) -> Vec<f64> {
    if n == 1 {
        return alloc::vec![1.0];
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| (mix(seed ^ 0xac71_71e5, j as u64, 0), j));
    let mut weights = alloc::vec![0.0; n];
    let low = 1.0 / math::sqrt(ACTIVITY_SPREAD);
    for (rank, &journal) in order.iter().enumerate() {
        let fraction = rank as f64 / (n - 1) as f64;
        weights[journal] = low * math::powf(ACTIVITY_SPREAD, fraction);
    }
    weights
}

/// SplitMix64 stream keyed by (seed, cited, citing).
#[derive(Debug, Clone)]
struct CellStream {
    state: u64,
}

fn cell_stream(seed: u64, cited: usize, citing: usize) -> CellStream {
    CellStream {
        state: mix(seed, cited as u64, citing as u64),
    }
}

fn mix(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed
        .wrapping_add(a.wrapping_mul(0x9e37_79b9_7f4a_7c15))
        .wrapping_add(b.wrapping_mul(0xbf58_476d_1ce4_e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl CellStream {
    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in (0, 1].
    fn next_unit(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 1.0) / 9_007_199_254_740_992.0
    }
}

/// Poisson draw by summing unit-exponential arrivals until they pass the
/// rate. Monotone in the rate for a fixed stream, which is what couples the
/// prior and posterior draws of one cell.
fn poisson(mut stream: CellStream, rate: f64) -> u64 {
    if rate <= 0.0 {
        return 0;
    }
    let mut elapsed = 0.0;
    let mut count = 0u64;
    loop {
        elapsed += -math::ln(stream.next_unit());
        if elapsed > rate {
            return count;
        }
        count += 1;
    }
}

/// Precision/recall of the ground-truth journals within the top k of a
/// vector ranking.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detection {
    pub precision: f64,
    pub recall: f64,
    pub k_used: usize,
    /// True when k exceeded the ranking and was clamped.
    pub clamped: bool,
}

pub fn score_detection(ranking: &[VectorChange], truth: &GroundTruth, k: usize) -> Detection {
    let k_used = k.min(ranking.len());
    let clamped = k_used < k;
    let affected = truth.affected_set();
    let hits = ranking[..k_used]
        .iter()
        .filter(|change| affected.contains(&change.journal))
        .count();
    let precision = if k_used == 0 {
        0.0
    } else {
        hits as f64 / k_used as f64
    };
    let recall = if affected.is_empty() {
        1.0
    } else {
        hits as f64 / affected.len() as f64
    };
    Detection {
        precision,
        recall,
        k_used,
        clamped,
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle: no prior support")]
    NoPriorSupport,
    #[error("oracle: no comparable support")]
    NoComparableSupport,
}

/// Brute-force expected information in bits: normalizes both vectors over
/// the prior's support and sums q·log2(q/p) term by term with Neumaier
/// compensation. Deliberately shares no code with the entropy module.
pub fn oracle_information<C: Ord + Clone>(
    f_p: &FrequencyVector<C>,
    f_q: &FrequencyVector<C>,
) -> Result<f64, OracleError> {
    let mut n_p = 0.0_f64;
    let mut n_q = 0.0_f64;
    let mut cells: Vec<(f64, f64)> = Vec::new();
    for (category, p_count) in f_p.iter() {
        if p_count == 0 {
            continue;
        }
        let q_count = f_q.get(category);
        n_p += p_count as f64;
        n_q += q_count as f64;
        cells.push((p_count as f64, q_count as f64));
    }
    if cells.is_empty() {
        return Err(OracleError::NoPriorSupport);
    }
    if n_q == 0.0 {
        return Err(OracleError::NoComparableSupport);
    }
    let mut sum = 0.0_f64;
    let mut compensation = 0.0_f64;
    for (p_count, q_count) in cells {
        if q_count == 0.0 {
            continue;
        }
        let p = p_count / n_p;
        let q = q_count / n_q;
        let term = q * libm::log2(q / p);
        let tentative = sum + term;
        if libm::fabs(sum) >= libm::fabs(term) {
            compensation += (sum - tentative) + term;
        } else {
            compensation += (term - tentative) + sum;
        }
        sum = tentative;
    }
    Ok(sum + compensation)
}
