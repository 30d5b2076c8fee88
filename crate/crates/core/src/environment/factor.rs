//! Factor analysis of a journal-journal correlation matrix: principal
//! components, retention of eigenvalues strictly above one (a factor must
//! explain more than an average variable), loadings as eigenvector·√λ, and
//! normalized varimax rotation once two or more factors are retained.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::linalg::{eigen_symmetric, normalize_column_signs};
use super::{CorrelationMatrix, EnvironmentError};
use crate::ingest::JournalId;
use crate::math;

const VARIMAX_TOLERANCE: f64 = 1e-6;
const VARIMAX_MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct FactorSolution {
    pub journals: Vec<JournalId>,
    /// All eigenvalues of the correlation matrix, descending.
    pub eigenvalues: Vec<f64>,
    /// Number of factors with eigenvalue strictly greater than 1.
    pub retained: usize,
    /// journals × retained loadings, varimax-rotated when `retained ≥ 2`
    /// and rotation was requested.
    pub loadings: Vec<Vec<f64>>,
    /// Orthonormal rotation applied to the initial loadings (identity when
    /// no rotation ran).
    pub rotation: Vec<Vec<f64>>,
    /// Eigenvalue-based explained variance per retained factor, percent.
    pub explained_variance_pct: Vec<f64>,
}

/// Principal-component factor solution with varimax rotation.
pub fn factor_solution(correlation: &CorrelationMatrix) -> FactorSolution {
    factor_solution_with(correlation, true)
}

/// Same, with the rotation switchable off.
pub fn factor_solution_with(correlation: &CorrelationMatrix, rotate: bool) -> FactorSolution {
    let n = correlation.journals.len();
    let (eigenvalues, vectors) = eigen_symmetric(&correlation.values);
    let retained = eigenvalues.iter().filter(|&&v| v > 1.0).count();

    let mut loadings = vec![vec![0.0; retained]; n];
    for factor in 0..retained {
        let root = math::sqrt(eigenvalues[factor]);
        for (row, loading_row) in loadings.iter_mut().enumerate() {
            loading_row[factor] = vectors[row][factor] * root;
        }
    }
    let mut rotation = identity(retained);
    if rotate && retained >= 2 {
        varimax(&mut loadings, &mut rotation);
    }
    normalize_column_signs(&mut loadings);
    let explained_variance_pct = eigenvalues[..retained]
        .iter()
        .map(|v| v / n as f64 * 100.0)
        .collect();
    FactorSolution {
        journals: correlation.journals.clone(),
        eigenvalues,
        retained,
        loadings,
        rotation,
        explained_variance_pct,
    }
}

fn identity(n: usize) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

/// Normalized (Kaiser) varimax: rows are scaled to unit communality, factor
/// pairs are rotated planar until the criterion stalls, rows are scaled
/// back. The accumulated rotation is applied to `rotation` as well.
fn varimax(loadings: &mut [Vec<f64>], rotation: &mut [Vec<f64>]) {
    let n = loadings.len();
    if n == 0 {
        return;
    }
    let k = loadings[0].len();
    let mut communality = vec![0.0; n];
    for (i, row) in loadings.iter().enumerate() {
        communality[i] = math::sqrt(row.iter().map(|v| v * v).sum::<f64>());
    }
    for (row, &h) in loadings.iter_mut().zip(&communality) {
        if h > 0.0 {
            for value in row.iter_mut() {
                *value /= h;
            }
        }
    }

    for _ in 0..VARIMAX_MAX_SWEEPS {
        let mut largest_angle = 0.0f64;
        for a in 0..k - 1 {
            for b in a + 1..k {
                let (mut sum_u, mut sum_v, mut sum_c, mut sum_d) = (0.0, 0.0, 0.0, 0.0);
                for row in loadings.iter() {
                    let x = row[a];
                    let y = row[b];
                    let u = x * x - y * y;
                    let v = 2.0 * x * y;
                    sum_u += u;
                    sum_v += v;
                    sum_c += u * u - v * v;
                    sum_d += 2.0 * u * v;
                }
                let num = sum_d - 2.0 * sum_u * sum_v / n as f64;
                let den = sum_c - (sum_u * sum_u - sum_v * sum_v) / n as f64;
                let angle = 0.25 * math::atan2(num, den);
                if math::abs(angle) <= VARIMAX_TOLERANCE {
                    continue;
                }
                if math::abs(angle) > largest_angle {
                    largest_angle = math::abs(angle);
                }
                let c = math::cos(angle);
                let s = math::sin(angle);
                for row in loadings.iter_mut() {
                    let x = row[a];
                    let y = row[b];
                    row[a] = c * x + s * y;
                    row[b] = -s * x + c * y;
                }
                for row in rotation.iter_mut() {
                    let x = row[a];
                    let y = row[b];
                    row[a] = c * x + s * y;
                    row[b] = -s * x + c * y;
                }
            }
        }
        if largest_angle <= VARIMAX_TOLERANCE {
            break;
        }
    }

    for (row, &h) in loadings.iter_mut().zip(&communality) {
        for value in row.iter_mut() {
            *value *= h;
        }
    }
}

/// The journal with the highest absolute loading on a factor; the cluster's
/// central tendency journal. Ties resolve to the smaller id.
pub fn central_tendency(
    solution: &FactorSolution,
    factor_index: usize,
) -> Result<JournalId, EnvironmentError> {
    if solution.retained == 0 {
        return Err(EnvironmentError::NoRetainedFactors);
    }
    if factor_index >= solution.retained {
        return Err(EnvironmentError::FactorOutOfRange {
            index: factor_index,
            retained: solution.retained,
        });
    }
    let mut best_journal = None;
    let mut best = -1.0;
    for (journal, row) in solution.journals.iter().zip(&solution.loadings) {
        let value = math::abs(row[factor_index]);
        if value > best {
            best = value;
            best_journal = Some(journal.clone());
        }
    }
    best_journal.ok_or(EnvironmentError::NoRetainedFactors)
}

/// Indices of factors where the journal's |loading| reaches the threshold
/// (inclusive). Loading on two or more marks the journal as
/// interfactorially complex, the interdisciplinarity signal.
pub fn interfactorial_complexity(
    solution: &FactorSolution,
    journal: &JournalId,
    loading_threshold: f64,
) -> Result<BTreeSet<usize>, EnvironmentError> {
    if !(loading_threshold > 0.0 && loading_threshold < 1.0) {
        return Err(EnvironmentError::InvalidLoadingThreshold {
            value: loading_threshold,
        });
    }
    let position = solution
        .journals
        .iter()
        .position(|j| j == journal)
        .ok_or_else(|| EnvironmentError::UnknownJournal {
            journal: journal.clone(),
        })?;
    Ok(solution.loadings[position]
        .iter()
        .enumerate()
        .filter(|(_, &loading)| math::abs(loading) >= loading_threshold)
        .map(|(index, _)| index)
        .collect())
}

pub fn is_interfactorially_complex(factors: &BTreeSet<usize>) -> bool {
    factors.len() >= 2
}
