//! Macro-journals: aggregation of per-journal change over a many-to-many
//! category scheme, plus Spearman rank correlation for relating aggregate
//! change to category size. The Σ-form of the information measure makes the
//! per-journal values additive, so a category's change is simply the sum
//! over its scored members.

use alloc::borrow::ToOwned;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::ingest::{split_csv_line, IngestError, JournalId};
use crate::math;
use crate::rankings::VectorChange;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CategoriesError {
    #[error("input lengths differ ({x} vs {y})")]
    LengthMismatch { x: usize, y: usize },
    #[error("need at least 2 observations, got {n}")]
    TooFewObservations { n: usize },
    #[error("non-finite value at position {index}")]
    NonFiniteValue { index: usize },
    #[error("rank variance is zero; correlation undefined")]
    ZeroRankVariance,
}

/// Journal → categories and category → journals, kept as mutual inverses.
/// A journal may belong to several categories.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CategoryScheme {
    journal_to_categories: BTreeMap<JournalId, BTreeSet<String>>,
    category_to_journals: BTreeMap<String, BTreeSet<JournalId>>,
}

impl CategoryScheme {
    pub fn from_assignments<I>(assignments: I) -> Self
    where
        I: IntoIterator<Item = (JournalId, String)>,
    {
        let mut scheme = CategoryScheme::default();
        for (journal, category) in assignments {
            let category = category.trim().to_owned();
            if category.is_empty() {
                continue;
            }
            scheme
                .journal_to_categories
                .entry(journal.clone())
                .or_default()
                .insert(category.clone());
            scheme
                .category_to_journals
                .entry(category)
                .or_default()
                .insert(journal);
        }
        scheme
    }

    /// Parses the category CSV `journal,category` (header optional).
    pub fn parse(text: &str) -> Result<Self, IngestError> {
        let mut assignments = Vec::new();
        let mut seen_data = false;
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields = split_csv_line(line, line_no)?;
            if !seen_data
                && fields.len() == 2
                && fields[0].trim().eq_ignore_ascii_case("journal")
                && fields[1].trim().eq_ignore_ascii_case("category")
            {
                seen_data = true;
                continue;
            }
            seen_data = true;
            if fields.len() != 2 {
                return Err(IngestError::MalformedLine {
                    line: line_no,
                    fields: fields.len(),
                });
            }
            let journal = JournalId::new(&fields[0]).map_err(|e| IngestError::BadJournalId {
                line: line_no,
                source: alloc::boxed::Box::new(e),
            })?;
            assignments.push((journal, fields[1].clone()));
        }
        Ok(Self::from_assignments(assignments))
    }

    pub fn categories(&self) -> impl Iterator<Item = (&String, &BTreeSet<JournalId>)> {
        self.category_to_journals.iter()
    }

    pub fn categories_of(&self, journal: &JournalId) -> Option<&BTreeSet<String>> {
        self.journal_to_categories.get(journal)
    }

    pub fn journal_count(&self) -> usize {
        self.journal_to_categories.len()
    }

    pub fn category_count(&self) -> usize {
        self.category_to_journals.len()
    }

    /// Mean number of categories per journal.
    pub fn mean_membership(&self) -> f64 {
        if self.journal_to_categories.is_empty() {
            return 0.0;
        }
        let assignments: usize = self
            .journal_to_categories
            .values()
            .map(|cats| cats.len())
            .sum();
        assignments as f64 / self.journal_to_categories.len() as f64
    }
}

/// Aggregate change of one macro-journal.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryChange {
    pub category: String,
    pub i_sum_bits: f64,
    /// Members that had a defined vector change; members without one are
    /// excluded from both the sum and the average.
    pub n_journals: usize,
    pub i_avg_bits: f64,
}

#[derive(Debug, Clone)]
pub struct CategoryReport {
    /// Sorted by i_avg descending, category label ascending.
    pub changes: Vec<CategoryChange>,
    /// Distinct scheme journals that had no vector result and were skipped.
    pub unscored_members: usize,
}

/// Sums members' vector-level I per category. A journal in k categories
/// contributes fully to all k; categories with no scored member are omitted.
pub fn macro_journal_change(results: &[VectorChange], scheme: &CategoryScheme) -> CategoryReport {
    let mut by_journal: BTreeMap<&JournalId, f64> = BTreeMap::new();
    for change in results {
        by_journal.insert(&change.journal, change.i_bits);
    }
    let mut changes = Vec::new();
    let mut unscored: BTreeSet<&JournalId> = BTreeSet::new();
    for (category, members) in scheme.categories() {
        let mut i_sum = 0.0;
        let mut n = 0usize;
        for member in members {
            match by_journal.get(member) {
                Some(&i_bits) => {
                    i_sum += i_bits;
                    n += 1;
                }
                None => {
                    unscored.insert(member);
                }
            }
        }
        if n >= 1 {
            changes.push(CategoryChange {
                category: category.clone(),
                i_sum_bits: i_sum,
                n_journals: n,
                i_avg_bits: i_sum / n as f64,
            });
        }
    }
    changes.sort_by(|a, b| {
        b.i_avg_bits
            .total_cmp(&a.i_avg_bits)
            .then_with(|| a.category.cmp(&b.category))
    });
    CategoryReport {
        changes,
        unscored_members: unscored.len(),
    }
}

/// Spearman rank correlation with average ranks for ties. Uses the d²
/// shortcut when there are no ties, Pearson on the ranks otherwise.
pub fn spearman_rho(x: &[f64], y: &[f64]) -> Result<f64, CategoriesError> {
    if x.len() != y.len() {
        return Err(CategoriesError::LengthMismatch { x: x.len(), y: y.len() });
    }
    let n = x.len();
    if n < 2 {
        return Err(CategoriesError::TooFewObservations { n });
    }
    for (index, value) in x.iter().chain(y.iter()).enumerate() {
        if !value.is_finite() {
            return Err(CategoriesError::NonFiniteValue { index: index % n });
        }
    }
    let (rank_x, ties_x) = average_ranks(x);
    let (rank_y, ties_y) = average_ranks(y);

    if !ties_x && !ties_y {
        let d_squared: f64 = rank_x
            .iter()
            .zip(&rank_y)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        let n = n as f64;
        return Ok(1.0 - 6.0 * d_squared / (n * (n * n - 1.0)));
    }
    pearson(&rank_x, &rank_y)
}

/// Ranks 1..n with tied values sharing the average of their rank positions.
fn average_ranks(values: &[f64]) -> (Vec<f64>, bool) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = alloc::vec![0.0; values.len()];
    let mut ties = false;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        if end - start > 1 {
            ties = true;
        }
        // positions start..end (0-based) share the mean 1-based rank
        let mean_rank = (start + end + 1) as f64 / 2.0;
        for &index in &order[start..end] {
            ranks[index] = mean_rank;
        }
        start = end;
    }
    (ranks, ties)
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64, CategoriesError> {
    let n = x.len() as f64;
    let mean_x: f64 = x.iter().sum::<f64>() / n;
    let mean_y: f64 = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        cov += (a - mean_x) * (b - mean_y);
        var_x += (a - mean_x) * (a - mean_x);
        var_y += (b - mean_y) * (b - mean_y);
    }
    if var_x == 0.0 || var_y == 0.0 {
        return Err(CategoriesError::ZeroRankVariance);
    }
    let rho = cov / math::sqrt(var_x * var_y);
    Ok(rho.clamp(-1.0, 1.0))
}
