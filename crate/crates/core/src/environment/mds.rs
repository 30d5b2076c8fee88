//! Two-dimensional multidimensional scaling of a correlation matrix.
//! Dissimilarity is 1 − r; the initial configuration comes from classical
//! (Torgerson) scaling and is then refined by SMACOF stress majorization.
//! Fully deterministic: no random starts.

use alloc::vec;
use alloc::vec::Vec;

use super::linalg::eigen_symmetric;
use super::{CorrelationMatrix, EnvironmentError};
use crate::math;

const MAX_ITERATIONS: usize = 500;
const RELATIVE_STRESS_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct MdsMap {
    /// One (x, y) per journal, in the correlation matrix's journal order.
    pub coordinates: Vec<[f64; 2]>,
    /// Final normalized stress Σ(δ−d)² / Σδ².
    pub stress: f64,
    pub iterations: usize,
    /// Normalized stress after initialization and after each majorization
    /// step; non-increasing throughout.
    pub stress_trace: Vec<f64>,
}

/// Embeds the journals of a correlation matrix in the plane.
pub fn mds_embed(correlation: &CorrelationMatrix) -> Result<MdsMap, EnvironmentError> {
    let n = correlation.journals.len();
    if n < 3 {
        return Err(EnvironmentError::TooSmallForMds { size: n });
    }
    let mut delta = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                delta[i][j] = (1.0 - correlation.values[i][j]).max(0.0);
            }
        }
    }
    let delta_norm: f64 = upper_triangle(&delta).map(|d| d * d).sum();

    let mut coordinates = torgerson_init(&delta);
    let mut raw = raw_stress(&coordinates, &delta);
    let mut trace = vec![normalized(raw, delta_norm)];
    let mut iterations = 0;

    for _ in 0..MAX_ITERATIONS {
        let candidate = guttman_transform(&coordinates, &delta);
        let candidate_raw = raw_stress(&candidate, &delta);
        if candidate_raw > raw {
            // majorization guarantees non-increase analytically; an uptick
            // here is rounding noise, so keep the previous configuration
            break;
        }
        coordinates = candidate;
        iterations += 1;
        trace.push(normalized(candidate_raw, delta_norm));
        let drop = raw - candidate_raw;
        let done = raw == 0.0 || drop < RELATIVE_STRESS_TOLERANCE * raw;
        raw = candidate_raw;
        if done {
            break;
        }
    }

    Ok(MdsMap {
        coordinates,
        stress: normalized(raw, delta_norm),
        iterations,
        stress_trace: trace,
    })
}

fn normalized(raw: f64, delta_norm: f64) -> f64 {
    if delta_norm > 0.0 {
        raw / delta_norm
    } else {
        0.0
    }
}

fn upper_triangle(matrix: &[Vec<f64>]) -> impl Iterator<Item = f64> + '_ {
    matrix
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().skip(i + 1).copied())
}

/// Classical scaling: double-center the squared dissimilarities and take the
/// top two eigenpairs. Exact for distances that are Euclidean and planar.
fn torgerson_init(delta: &[Vec<f64>]) -> Vec<[f64; 2]> {
    let n = delta.len();
    let mut squared = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            squared[i][j] = delta[i][j] * delta[i][j];
        }
    }
    let row_mean: Vec<f64> = squared
        .iter()
        .map(|row| row.iter().sum::<f64>() / n as f64)
        .collect();
    let grand_mean: f64 = row_mean.iter().sum::<f64>() / n as f64;
    let mut b = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            b[i][j] = -0.5 * (squared[i][j] - row_mean[i] - row_mean[j] + grand_mean);
        }
    }
    let (values, vectors) = eigen_symmetric(&b);
    let mut coordinates = vec![[0.0; 2]; n];
    for axis in 0..2usize.min(values.len()) {
        let scale = math::sqrt(values[axis].max(0.0));
        for (i, point) in coordinates.iter_mut().enumerate() {
            point[axis] = vectors[i][axis] * scale;
        }
    }
    coordinates
}

fn distance(a: &[f64; 2], b: &[f64; 2]) -> f64 {
    math::hypot(a[0] - b[0], a[1] - b[1])
}

fn raw_stress(coordinates: &[[f64; 2]], delta: &[Vec<f64>]) -> f64 {
    let n = coordinates.len();
    let mut stress = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let diff = delta[i][j] - distance(&coordinates[i], &coordinates[j]);
            stress += diff * diff;
        }
    }
    stress
}

/// One SMACOF majorization step: X ← (1/n)·B(X)·X.
fn guttman_transform(coordinates: &[[f64; 2]], delta: &[Vec<f64>]) -> Vec<[f64; 2]> {
    let n = coordinates.len();
    let mut b = vec![vec![0.0; n]; n];
    for i in 0..n {
        let mut diagonal = 0.0;
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = distance(&coordinates[i], &coordinates[j]);
            let value = if d > 0.0 { -delta[i][j] / d } else { 0.0 };
            b[i][j] = value;
            diagonal -= value;
        }
        b[i][i] = diagonal;
    }
    let mut next = vec![[0.0; 2]; n];
    for i in 0..n {
        for axis in 0..2 {
            let mut sum = 0.0;
            for j in 0..n {
                sum += b[i][j] * coordinates[j][axis];
            }
            next[i][axis] = sum / n as f64;
        }
    }
    next
}
