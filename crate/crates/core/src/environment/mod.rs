//! Citation environments: the set of journals exceeding a percentage
//! threshold of a seed journal's total cited/citing relations, and the
//! structural analysis of that set (correlation, factor solution, 2-D map).
//!
//! A journal enters the environment when it cites the seed for at least the
//! threshold share of the seed's total received citations, or is cited by
//! the seed for at least the threshold share of the seed's total given
//! citations. Raising the threshold can only shrink the environment.

mod factor;
mod linalg;
mod mds;

pub use factor::{
    central_tendency, factor_solution, factor_solution_with, interfactorial_complexity,
    is_interfactorially_complex, FactorSolution,
};
pub use mds::{mds_embed, MdsMap};

use alloc::vec;
use alloc::vec::Vec;

use crate::ingest::{marginals, Axis, CitationSnapshot, JournalId};
use crate::math;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum EnvironmentError {
    #[error("seed journal `{journal}` is not in the snapshot registry")]
    UnknownSeed { journal: JournalId },
    #[error("threshold must be in (0, 100], got {value}")]
    InvalidThreshold { value: f64 },
    #[error("seed journal `{journal}` has no citations on either axis")]
    InactiveSeed { journal: JournalId },
    #[error("environment needs at least 2 journals, got {size}")]
    TooSmallForCorrelation { size: usize },
    #[error("matrix must be square, symmetric, with unit diagonal")]
    MalformedCorrelation,
    #[error("no factors retained (no eigenvalue above 1)")]
    NoRetainedFactors,
    #[error("factor index {index} out of range for {retained} retained factors")]
    FactorOutOfRange { index: usize, retained: usize },
    #[error("loading threshold must be in (0, 1), got {value}")]
    InvalidLoadingThreshold { value: f64 },
    #[error("journal `{journal}` is not part of this solution")]
    UnknownJournal { journal: JournalId },
    #[error("embedding needs at least 3 journals, got {size}")]
    TooSmallForMds { size: usize },
}

/// A seed journal's delineated citation environment with its dense
/// cited × citing count submatrix.
#[derive(Debug, Clone)]
pub struct Environment {
    pub seed: JournalId,
    pub threshold_pct: f64,
    /// Included journals in id order; always contains the seed.
    pub journals: Vec<JournalId>,
    /// `submatrix[i][j]` = citations of `journals[i]` by `journals[j]`.
    pub submatrix: Vec<Vec<u64>>,
}

impl Environment {
    pub fn len(&self) -> usize {
        self.journals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.journals.is_empty()
    }

    pub fn contains(&self, journal: &JournalId) -> bool {
        self.journals.binary_search(journal).is_ok()
    }
}

/// Delineates the environment of `seed` at `threshold_pct` percent of the
/// seed's own cited and citing totals (inclusive, either direction).
pub fn delineate(
    snapshot: &CitationSnapshot,
    seed: &JournalId,
    threshold_pct: f64,
) -> Result<Environment, EnvironmentError> {
    if !(threshold_pct > 0.0 && threshold_pct <= 100.0) {
        return Err(EnvironmentError::InvalidThreshold {
            value: threshold_pct,
        });
    }
    if !snapshot.registry().contains(seed) {
        return Err(EnvironmentError::UnknownSeed {
            journal: seed.clone(),
        });
    }
    let cited_totals = marginals(snapshot, Axis::Cited);
    let citing_totals = marginals(snapshot, Axis::Citing);
    let seed_cited_total = cited_totals.get(seed).copied().unwrap_or(0);
    let seed_citing_total = citing_totals.get(seed).copied().unwrap_or(0);
    if seed_cited_total == 0 && seed_citing_total == 0 {
        return Err(EnvironmentError::InactiveSeed {
            journal: seed.clone(),
        });
    }

    let passes = |count: u64, total: u64| -> bool {
        count > 0 && (count as f64) * 100.0 >= threshold_pct * total as f64
    };
    let mut journals: Vec<JournalId> = Vec::new();
    for journal in snapshot.registry() {
        if journal == seed {
            continue;
        }
        let cites_seed = snapshot.count(seed, journal);
        let cited_by_seed = snapshot.count(journal, seed);
        if passes(cites_seed, seed_cited_total) || passes(cited_by_seed, seed_citing_total) {
            journals.push(journal.clone());
        }
    }
    journals.push(seed.clone());
    journals.sort();

    let n = journals.len();
    let mut submatrix = vec![vec![0u64; n]; n];
    for (i, cited) in journals.iter().enumerate() {
        for (j, citing) in journals.iter().enumerate() {
            submatrix[i][j] = snapshot.count(cited, citing);
        }
    }
    Ok(Environment {
        seed: seed.clone(),
        threshold_pct,
        journals,
        submatrix,
    })
}

/// Pearson correlations between the environment journals' citation profiles,
/// observed across the environment itself.
#[derive(Debug, Clone)]
pub struct CorrelationMatrix {
    pub journals: Vec<JournalId>,
    pub values: Vec<Vec<f64>>,
    /// Journals whose profile had no variance; their correlations are 0 by
    /// convention and flagged here for the analyst.
    pub zero_variance: Vec<bool>,
}

impl CorrelationMatrix {
    /// Wraps a precomputed matrix, validating shape, symmetry, unit diagonal
    /// and the [−1, 1] range.
    pub fn from_values(
        journals: Vec<JournalId>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self, EnvironmentError> {
        let n = journals.len();
        if values.len() != n || values.iter().any(|row| row.len() != n) {
            return Err(EnvironmentError::MalformedCorrelation);
        }
        for i in 0..n {
            if math::abs(values[i][i] - 1.0) > 1e-9 {
                return Err(EnvironmentError::MalformedCorrelation);
            }
            for j in 0..n {
                if math::abs(values[i][j] - values[j][i]) > 1e-9
                    || math::abs(values[i][j]) > 1.0 + 1e-9
                {
                    return Err(EnvironmentError::MalformedCorrelation);
                }
            }
        }
        let zero_variance = vec![false; n];
        Ok(CorrelationMatrix {
            journals,
            values,
            zero_variance,
        })
    }

    pub fn len(&self) -> usize {
        self.journals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.journals.is_empty()
    }
}

/// Correlates each pair of environment journals along one axis of the
/// submatrix: received-citation profiles for `Cited`, given-citation
/// profiles for `Citing`.
pub fn correlation_matrix(
    env: &Environment,
    axis: Axis,
) -> Result<CorrelationMatrix, EnvironmentError> {
    let n = env.journals.len();
    if n < 2 {
        return Err(EnvironmentError::TooSmallForCorrelation { size: n });
    }
    let profile = |index: usize| -> Vec<f64> {
        (0..n)
            .map(|k| match axis {
                Axis::Cited => env.submatrix[index][k] as f64,
                Axis::Citing => env.submatrix[k][index] as f64,
            })
            .collect()
    };
    let profiles: Vec<Vec<f64>> = (0..n).map(profile).collect();
    let stats: Vec<(f64, f64)> = profiles
        .iter()
        .map(|p| {
            let mean = p.iter().sum::<f64>() / n as f64;
            let var = p.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
            (mean, var)
        })
        .collect();
    let zero_variance: Vec<bool> = stats.iter().map(|&(_, var)| var == 0.0).collect();

    let mut values = vec![vec![0.0; n]; n];
    for i in 0..n {
        values[i][i] = 1.0;
        for j in i + 1..n {
            let r = if zero_variance[i] || zero_variance[j] {
                0.0
            } else {
                let mut cov = 0.0;
                for k in 0..n {
                    cov += (profiles[i][k] - stats[i].0) * (profiles[j][k] - stats[j].0);
                }
                (cov / math::sqrt(stats[i].1 * stats[j].1)).clamp(-1.0, 1.0)
            };
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(CorrelationMatrix {
        journals: env.journals.clone(),
        values,
        zero_variance,
    })
}
