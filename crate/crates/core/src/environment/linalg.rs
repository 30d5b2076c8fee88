//! Dense symmetric eigendecomposition via the cyclic Jacobi method.
//! Deterministic: no randomized pivoting, fixed sweep order, stable ordering
//! of equal eigenvalues. Matrices here are small (citation environments run
//! to a few hundred journals at most), so O(n³) sweeps are fine.

use alloc::vec;
use alloc::vec::Vec;

use crate::math;

/// Eigenvalues (descending) and matching eigenvectors (columns) of a
/// symmetric matrix. The caller guarantees symmetry.
pub(crate) fn eigen_symmetric(matrix: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut v = identity(n);
    if n <= 1 {
        let values = if n == 1 { vec![a[0][0]] } else { Vec::new() };
        return (values, v);
    }

    let scale: f64 = a
        .iter()
        .flat_map(|row| row.iter())
        .map(|x| x * x)
        .sum::<f64>();
    let tolerance = 1e-28 * scale.max(1e-300);

    const MAX_SWEEPS: usize = 64;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = off_diagonal_norm_squared(&a);
        if off <= tolerance {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p][p];
                let aqq = a[q][q];
                // classic two-sided Jacobi rotation annihilating a[p][q]
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + math::sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + math::sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = t * c;

                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]).then(i.cmp(&j)));
    let values: Vec<f64> = order.iter().map(|&i| a[i][i]).collect();
    let mut vectors = vec![vec![0.0; n]; n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            vectors[row][new_col] = v[row][old_col];
        }
    }
    normalize_column_signs(&mut vectors);
    (values, vectors)
}

fn identity(n: usize) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

fn off_diagonal_norm_squared(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i][j] * a[i][j];
            }
        }
    }
    sum
}

/// Flips column signs so the largest-magnitude component of each column is
/// positive. Keeps otherwise equivalent solutions reproducible.
pub(crate) fn normalize_column_signs(columns: &mut [Vec<f64>]) {
    if columns.is_empty() {
        return;
    }
    let n_cols = columns[0].len();
    for col in 0..n_cols {
        let mut best = 0.0;
        let mut best_value = 0.0;
        for row in columns.iter() {
            if math::abs(row[col]) > best {
                best = math::abs(row[col]);
                best_value = row[col];
            }
        }
        if best_value < 0.0 {
            for row in columns.iter_mut() {
                row[col] = -row[col];
            }
        }
    }
}
