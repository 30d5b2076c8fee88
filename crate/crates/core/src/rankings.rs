//! The four indicator families over an aligned pair of snapshots:
//!
//! 1. file-level change of the marginal distribution with per-journal ΔI
//!    contributions (signed; the aggregate is non-negative);
//! 2. per-journal vector change: each journal's citation vector compared
//!    across the two years, with the citation window N;
//! 3. the vector change normalized by log2(N) and by N;
//! 4. the raw matrix-level term Σ f_q·log2(f_q/f_p) per journal, which ranks
//!    entropy production at the level of the full matrix.
//!
//! Journals dropped or added between the years are excluded throughout; all
//! orderings are total (value descending, then journal id ascending).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::entropy::{
    align_support, information_from_frequencies, EntropyError, FrequencyVector,
    NON_NEGATIVITY_TOLERANCE,
};
use crate::ingest::{marginals, AlignedPair, CitationSnapshot, JournalId};
use crate::math;

pub use crate::ingest::Axis;

/// File-level change: expected information of the posterior marginal
/// distribution against the prior one, over matched journals.
#[derive(Debug, Clone)]
pub struct FileLevelChange {
    pub axis: Axis,
    pub file_i_bits: f64,
    /// Signed contribution q_j·log2(q_j/p_j) per journal in the support.
    /// Journals that vanished from the marginal contribute exactly 0.
    pub deltas: BTreeMap<JournalId, f64>,
    /// Matched journals with no prior marginal; excluded as new.
    pub excluded_new: Vec<JournalId>,
}

impl FileLevelChange {
    pub fn file_i_millibits(&self) -> f64 {
        self.file_i_bits * 1000.0
    }
}

pub fn file_level_change(pair: &AlignedPair, axis: Axis) -> Result<FileLevelChange, EntropyError> {
    let prior_marg = restrict_to_matched(marginals(&pair.prior, axis), pair);
    let post_marg = restrict_to_matched(marginals(&pair.posterior, axis), pair);
    let f_p = FrequencyVector::from_map(prior_marg);
    let f_q = FrequencyVector::from_map(post_marg);
    let aligned = align_support(&f_p, &f_q)?;

    let n_p = aligned.n_p as f64;
    let n_q = aligned.n_q as f64;
    let mut deltas = BTreeMap::new();
    let mut file_i = 0.0;
    for ((journal, &fp), &fq) in aligned.support.iter().zip(&aligned.f_p).zip(&aligned.f_q) {
        let delta = if fq > 0 {
            let p = fp as f64 / n_p;
            let q = fq as f64 / n_q;
            q * math::log2(q / p)
        } else {
            0.0
        };
        file_i += delta;
        deltas.insert(journal.clone(), delta);
    }
    if file_i < -NON_NEGATIVITY_TOLERANCE {
        return Err(EntropyError::NegativeInformation {
            value: file_i,
            tolerance: NON_NEGATIVITY_TOLERANCE,
        });
    }
    Ok(FileLevelChange {
        axis,
        file_i_bits: file_i.max(0.0),
        deltas,
        excluded_new: aligned.excluded_new,
    })
}

fn restrict_to_matched(
    mut totals: BTreeMap<JournalId, u64>,
    pair: &AlignedPair,
) -> BTreeMap<JournalId, u64> {
    totals.retain(|journal, _| pair.matched.contains(journal));
    totals
}

pub fn count_positive_contributors(change: &FileLevelChange) -> usize {
    change.deltas.values().filter(|&&d| d > 0.0).count()
}

/// One journal's vector-level change.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorChange {
    pub journal: JournalId,
    pub i_bits: f64,
    pub n_comparable: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmitReason {
    /// No citation vector in the prior year on this axis.
    NoPriorSupport,
    /// Prior vector exists but the posterior is zero over all of it.
    NoComparableSupport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Omission {
    pub journal: JournalId,
    pub reason: OmitReason,
}

#[derive(Debug, Clone)]
pub struct VectorRanking {
    /// Sorted by i_bits descending, journal ascending.
    pub entries: Vec<VectorChange>,
    pub omitted: Vec<Omission>,
}

/// Compares each matched journal's axis vector (its row of citers for
/// `Cited`, its column of cited journals for `Citing`) across the two years.
/// Journals without comparable support are omitted with a reason rather than
/// failing the ranking.
pub fn vector_change_ranking(pair: &AlignedPair, axis: Axis) -> VectorRanking {
    let prior_vectors = VectorSource::new(&pair.prior, axis);
    let post_vectors = VectorSource::new(&pair.posterior, axis);
    let mut entries = Vec::new();
    let mut omitted = Vec::new();
    for journal in &pair.matched {
        let f_p = match prior_vectors.get(journal) {
            Some(row) if !row.is_empty() => FrequencyVector::from_map(row.clone()),
            _ => {
                omitted.push(Omission {
                    journal: journal.clone(),
                    reason: OmitReason::NoPriorSupport,
                });
                continue;
            }
        };
        let f_q = match post_vectors.get(journal) {
            Some(row) => FrequencyVector::from_map(row.clone()),
            None => FrequencyVector::from_counts(core::iter::empty()),
        };
        match information_from_frequencies(&f_p, &f_q) {
            Ok(result) => entries.push(VectorChange {
                journal: journal.clone(),
                i_bits: result.i_bits,
                n_comparable: result.n_comparable,
            }),
            Err(EntropyError::NoComparableSupport) => omitted.push(Omission {
                journal: journal.clone(),
                reason: OmitReason::NoComparableSupport,
            }),
            Err(EntropyError::NoPriorSupport) => omitted.push(Omission {
                journal: journal.clone(),
                reason: OmitReason::NoPriorSupport,
            }),
            // remaining variants concern probability-vector and shape
            // arguments, which this path never constructs
            Err(_) => unreachable!("frequency route cannot produce argument errors"),
        }
    }
    entries.sort_by(|a, b| {
        b.i_bits
            .total_cmp(&a.i_bits)
            .then_with(|| a.journal.cmp(&b.journal))
    });
    VectorRanking { entries, omitted }
}

enum VectorSource<'a> {
    Rows(&'a CitationSnapshot),
    Columns(BTreeMap<JournalId, BTreeMap<JournalId, u64>>),
}

impl<'a> VectorSource<'a> {
    fn new(snapshot: &'a CitationSnapshot, axis: Axis) -> Self {
        match axis {
            Axis::Cited => VectorSource::Rows(snapshot),
            Axis::Citing => VectorSource::Columns(snapshot.column_map()),
        }
    }

    fn get(&self, journal: &JournalId) -> Option<&BTreeMap<JournalId, u64>> {
        match self {
            VectorSource::Rows(snapshot) => snapshot.row(journal),
            VectorSource::Columns(map) => map.get(journal),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedEntry {
    pub journal: JournalId,
    pub i_bits: f64,
    pub n_comparable: usize,
    pub i_per_log2n: f64,
    pub i_per_n: f64,
}

#[derive(Debug, Clone)]
pub struct NormalizedRanking {
    /// Sorted on I / log2(N).
    pub by_log2n: Vec<NormalizedEntry>,
    /// The same entries sorted on I / N.
    pub by_n: Vec<NormalizedEntry>,
    /// Journals left out because their window N < 2.
    pub omitted_narrow: Vec<JournalId>,
}

pub fn normalized_ranking(results: &[VectorChange]) -> NormalizedRanking {
    let mut entries = Vec::new();
    let mut omitted_narrow = Vec::new();
    for change in results {
        match crate::entropy::normalize_change(change.i_bits, change.n_comparable) {
            Ok((i_per_log2n, i_per_n)) => entries.push(NormalizedEntry {
                journal: change.journal.clone(),
                i_bits: change.i_bits,
                n_comparable: change.n_comparable,
                i_per_log2n,
                i_per_n,
            }),
            Err(_) => omitted_narrow.push(change.journal.clone()),
        }
    }
    let mut by_log2n = entries.clone();
    by_log2n.sort_by(|a, b| {
        b.i_per_log2n
            .total_cmp(&a.i_per_log2n)
            .then_with(|| a.journal.cmp(&b.journal))
    });
    let mut by_n = entries;
    by_n.sort_by(|a, b| {
        b.i_per_n
            .total_cmp(&a.i_per_n)
            .then_with(|| a.journal.cmp(&b.journal))
    });
    NormalizedRanking {
        by_log2n,
        by_n,
        omitted_narrow,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixTerm {
    pub journal: JournalId,
    /// Σ f_q·log2(f_q/f_p) over this journal's axis cells positive in both
    /// years. Raw-count scale; new cells excluded, vanished cells zero.
    pub term: f64,
}

pub fn matrix_term_ranking(pair: &AlignedPair, axis: Axis) -> Vec<MatrixTerm> {
    let prior_vectors = VectorSource::new(&pair.prior, axis);
    let post_vectors = VectorSource::new(&pair.posterior, axis);
    let mut terms = Vec::new();
    for journal in &pair.matched {
        let mut term = 0.0;
        if let (Some(prior_row), Some(post_row)) =
            (prior_vectors.get(journal), post_vectors.get(journal))
        {
            for (partner, &fp) in prior_row {
                let fq = post_row.get(partner).copied().unwrap_or(0);
                if fp > 0 && fq > 0 {
                    term += fq as f64 * math::log2(fq as f64 / fp as f64);
                }
            }
        }
        terms.push(MatrixTerm {
            journal: journal.clone(),
            term,
        });
    }
    terms.sort_by(|a, b| {
        b.term
            .total_cmp(&a.term)
            .then_with(|| a.journal.cmp(&b.journal))
    });
    terms
}

/// Everything the `diff` report carries for one axis, with one entry per
/// matched journal in id order. Optional fields are absent where the
/// corresponding statistic is undefined for that journal.
#[derive(Debug, Clone)]
pub struct ChangeReport {
    pub axis: Axis,
    pub file_i_bits: f64,
    pub positive_contributors: usize,
    pub matched: usize,
    pub dropped: usize,
    pub added: usize,
    pub entries: Vec<ChangeEntry>,
    pub omitted_no_support: usize,
}

#[derive(Debug, Clone)]
pub struct ChangeEntry {
    pub journal: JournalId,
    pub delta_i_bits: Option<f64>,
    pub vector_i_bits: Option<f64>,
    pub n_comparable: Option<usize>,
    pub i_per_log2n: Option<f64>,
    pub i_per_n: Option<f64>,
    pub matrix_term: f64,
}

impl ChangeReport {
    pub fn file_i_millibits(&self) -> f64 {
        self.file_i_bits * 1000.0
    }
}

pub fn build_change_report(pair: &AlignedPair, axis: Axis) -> Result<ChangeReport, EntropyError> {
    let file = file_level_change(pair, axis)?;
    let vectors = vector_change_ranking(pair, axis);
    let matrix = matrix_term_ranking(pair, axis);

    let mut vector_by_journal: BTreeMap<&JournalId, &VectorChange> = BTreeMap::new();
    for change in &vectors.entries {
        vector_by_journal.insert(&change.journal, change);
    }
    let mut term_by_journal: BTreeMap<&JournalId, f64> = BTreeMap::new();
    for entry in &matrix {
        term_by_journal.insert(&entry.journal, entry.term);
    }

    let mut entries = Vec::with_capacity(pair.matched.len());
    for journal in &pair.matched {
        let vector = vector_by_journal.get(journal);
        let normalized = vector.and_then(|v| {
            crate::entropy::normalize_change(v.i_bits, v.n_comparable).ok()
        });
        entries.push(ChangeEntry {
            journal: journal.clone(),
            delta_i_bits: file.deltas.get(journal).copied(),
            vector_i_bits: vector.map(|v| v.i_bits),
            n_comparable: vector.map(|v| v.n_comparable),
            i_per_log2n: normalized.map(|(per_log, _)| per_log),
            i_per_n: normalized.map(|(_, per_n)| per_n),
            matrix_term: term_by_journal.get(journal).copied().unwrap_or(0.0),
        });
    }
    Ok(ChangeReport {
        axis,
        file_i_bits: file.file_i_bits,
        positive_contributors: count_positive_contributors(&file),
        matched: pair.matched.len(),
        dropped: pair.dropped.len(),
        added: pair.added.len(),
        entries,
        omitted_no_support: vectors.omitted.len(),
    })
}
