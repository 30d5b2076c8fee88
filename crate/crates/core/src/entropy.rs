//! Expected information (probabilistic entropy) between an a priori and an
//! a posteriori distribution, in bits:
//!
//! ```text
//! I = Σ_i q_i · log2(q_i / p_i)
//! ```
//!
//! For integer frequency data the same value is computed through the
//! decomposition
//!
//! ```text
//! I = (log2 n_p − log2 n_q) + (1/n_q) · Σ f_q · log2(f_q / f_p)
//! ```
//!
//! which operates directly on comparable cell values and defers the
//! normalization into relative frequencies to the end of the pass.
//!
//! Support rules: categories new in the posterior (f_p = 0 < f_q) are
//! excluded: their citation is unpredictable from the prior and would
//! divide by zero; a category only becomes comparable on its second
//! occurrence. Categories that vanished (f_p > 0, f_q = 0) stay in the
//! support with a term of zero (0·log 0 ≡ 0) and still contribute through
//! n_p. I is non-negative as an aggregate even though individual terms may
//! be negative.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::math;

/// Tolerance below which a negative aggregate I is treated as floating-point
/// noise and clamped to zero. Anything more negative is a bug.
pub const NON_NEGATIVITY_TOLERANCE: f64 = 1e-12;

const PROBABILITY_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum EntropyError {
    #[error("no prior support: a priori distribution has no positive entry")]
    NoPriorSupport,
    #[error("no comparable support: posterior is zero everywhere the prior is positive")]
    NoComparableSupport,
    #[error("probability vectors must have equal length ({p} vs {q})")]
    LengthMismatch { p: usize, q: usize },
    #[error("probability vector does not sum to 1 within tolerance")]
    NotNormalized,
    #[error("negative probability encountered")]
    NegativeProbability,
    #[error("posterior mass on a category with zero prior probability")]
    ZeroPriorMass,
    #[error("array shapes differ")]
    ShapeMismatch,
    #[error("channel too narrow: normalization needs at least 2 categories")]
    ChannelTooNarrow,
    #[error("internal consistency: aggregate information {value} below -{tolerance}")]
    NegativeInformation { value: f64, tolerance: f64 },
}

/// Counts per category. Duplicated categories are summed on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyVector<C: Ord> {
    entries: BTreeMap<C, u64>,
}

impl<C: Ord + Clone> FrequencyVector<C> {
    pub fn from_counts<I>(counts: I) -> Self
    where
        I: IntoIterator<Item = (C, u64)>,
    {
        let mut entries: BTreeMap<C, u64> = BTreeMap::new();
        for (category, count) in counts {
            *entries.entry(category).or_insert(0) += count;
        }
        FrequencyVector { entries }
    }

    pub fn from_map(entries: BTreeMap<C, u64>) -> Self {
        FrequencyVector { entries }
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, category: &C) -> u64 {
        self.entries.get(category).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&C, u64)> {
        self.entries.iter().map(|(c, n)| (c, *n))
    }
}

/// Two frequency vectors restricted to the comparable support (categories
/// with f_p > 0), in sorted category order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedDistributions<C: Ord> {
    pub support: Vec<C>,
    pub f_p: Vec<u64>,
    pub f_q: Vec<u64>,
    /// Categories with f_p = 0 and f_q > 0, excluded from the support.
    pub excluded_new: Vec<C>,
    pub n_p: u64,
    pub n_q: u64,
}

impl<C: Ord> AlignedDistributions<C> {
    /// N: categories positive in both years.
    pub fn comparable_count(&self) -> usize {
        self.f_p
            .iter()
            .zip(&self.f_q)
            .filter(|&(&p, &q)| p > 0 && q > 0)
            .count()
    }
}

/// Restricts a pair of frequency vectors to the prior's support.
///
/// Errors when the prior has no positive entry, or when the posterior is
/// zero over the whole support (I undefined: n_q = 0).
pub fn align_support<C: Ord + Clone>(
    f_p: &FrequencyVector<C>,
    f_q: &FrequencyVector<C>,
) -> Result<AlignedDistributions<C>, EntropyError> {
    let mut support = Vec::new();
    let mut p_counts = Vec::new();
    let mut q_counts = Vec::new();
    let mut n_p = 0u64;
    let mut n_q = 0u64;
    for (category, count) in f_p.iter() {
        if count == 0 {
            continue;
        }
        let q = f_q.get(category);
        support.push(category.clone());
        p_counts.push(count);
        q_counts.push(q);
        n_p += count;
        n_q += q;
    }
    if support.is_empty() {
        return Err(EntropyError::NoPriorSupport);
    }
    if n_q == 0 {
        return Err(EntropyError::NoComparableSupport);
    }
    let excluded_new = f_q
        .iter()
        .filter(|(category, count)| *count > 0 && f_p.get(category) == 0)
        .map(|(category, _)| category.clone())
        .collect();
    Ok(AlignedDistributions {
        support,
        f_p: p_counts,
        f_q: q_counts,
        excluded_new,
        n_p,
        n_q,
    })
}

/// Direct form on probability vectors over a shared support.
/// `q[i] > 0` requires `p[i] > 0`; terms with `q[i] = 0` are zero.
pub fn expected_information(p: &[f64], q: &[f64]) -> Result<f64, EntropyError> {
    if p.len() != q.len() {
        return Err(EntropyError::LengthMismatch { p: p.len(), q: q.len() });
    }
    let mut sum_p = 0.0;
    let mut sum_q = 0.0;
    for (&pi, &qi) in p.iter().zip(q) {
        if pi < 0.0 || qi < 0.0 {
            return Err(EntropyError::NegativeProbability);
        }
        if qi > 0.0 && pi == 0.0 {
            return Err(EntropyError::ZeroPriorMass);
        }
        sum_p += pi;
        sum_q += qi;
    }
    if math::abs(sum_p - 1.0) > PROBABILITY_SUM_TOLERANCE
        || math::abs(sum_q - 1.0) > PROBABILITY_SUM_TOLERANCE
    {
        return Err(EntropyError::NotNormalized);
    }
    let mut bits = 0.0;
    for (&pi, &qi) in p.iter().zip(q) {
        if qi > 0.0 {
            bits += qi * math::log2(qi / pi);
        }
    }
    clamp_non_negative(bits)
}

/// I computed from frequencies via the decomposition; the aggregate and its
/// raw matrix-level term come out of a single pass over the support.
#[derive(Debug, Clone, PartialEq)]
pub struct InformationResult {
    /// Aggregate expected information in bits (≥ 0 up to clamping).
    pub i_bits: f64,
    /// Σ f_q · log2(f_q / f_p) over the support, raw-count scale, any sign.
    pub raw_term: f64,
    pub n_p: u64,
    pub n_q: u64,
    /// N: categories positive in both years (the citation window).
    pub n_comparable: usize,
}

impl InformationResult {
    pub fn i_millibits(&self) -> f64 {
        self.i_bits * 1000.0
    }
}

pub fn information_from_frequencies<C: Ord + Clone>(
    f_p: &FrequencyVector<C>,
    f_q: &FrequencyVector<C>,
) -> Result<InformationResult, EntropyError> {
    let aligned = align_support(f_p, f_q)?;
    information_from_aligned(&aligned)
}

/// Decomposition applied to already-aligned distributions. Summation runs in
/// sorted category order for run-to-run reproducibility.
pub fn information_from_aligned<C: Ord>(
    aligned: &AlignedDistributions<C>,
) -> Result<InformationResult, EntropyError> {
    if aligned.n_p == 0 {
        return Err(EntropyError::NoPriorSupport);
    }
    if aligned.n_q == 0 {
        return Err(EntropyError::NoComparableSupport);
    }
    let mut raw_term = 0.0;
    for (&fp, &fq) in aligned.f_p.iter().zip(&aligned.f_q) {
        if fq > 0 {
            raw_term += fq as f64 * math::log2(fq as f64 / fp as f64);
        }
    }
    let i_bits = (math::log2(aligned.n_p as f64) - math::log2(aligned.n_q as f64))
        + raw_term / aligned.n_q as f64;
    Ok(InformationResult {
        i_bits: clamp_non_negative(i_bits)?,
        raw_term,
        n_p: aligned.n_p,
        n_q: aligned.n_q,
        n_comparable: aligned.comparable_count(),
    })
}

/// A multi-index probability array in row-major order. The multivariate
/// measure only needs the flattened values; the shape is kept to reject
/// mismatched operands.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbArray {
    shape: Vec<usize>,
    values: Vec<f64>,
}

impl ProbArray {
    pub fn new(shape: Vec<usize>, values: Vec<f64>) -> Result<Self, EntropyError> {
        let cells: usize = shape.iter().product();
        if cells != values.len() || shape.is_empty() {
            return Err(EntropyError::ShapeMismatch);
        }
        Ok(ProbArray { shape, values })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Multivariate extension I = Σ q_ijk.. log2(q_ijk.. / p_ijk..): identical to
/// the univariate measure on the flattened arrays.
pub fn joint_information(p: &ProbArray, q: &ProbArray) -> Result<f64, EntropyError> {
    if p.shape != q.shape {
        return Err(EntropyError::ShapeMismatch);
    }
    expected_information(&p.values, &q.values)
}

/// Channel normalizations (I / log2 N, I / N). N is the citation window; a
/// window below 2 has no entropy capacity (log2 1 = 0) and is rejected.
pub fn normalize_change(i_bits: f64, n: usize) -> Result<(f64, f64), EntropyError> {
    if n < 2 {
        return Err(EntropyError::ChannelTooNarrow);
    }
    Ok((i_bits / math::log2(n as f64), i_bits / n as f64))
}

fn clamp_non_negative(bits: f64) -> Result<f64, EntropyError> {
    if bits >= 0.0 {
        Ok(bits)
    } else if bits >= -NON_NEGATIVITY_TOLERANCE {
        Ok(0.0)
    } else {
        Err(EntropyError::NegativeInformation {
            value: bits,
            tolerance: NON_NEGATIVITY_TOLERANCE,
        })
    }
}
