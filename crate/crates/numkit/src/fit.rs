use crate::NumError;

/// Result of fitting samples to amplitude * exp(rate * t).
#[derive(Debug, Clone, Copy)]
pub struct ExpFit {
    pub rate: f64,
    pub amplitude: f64,
    /// RMS residual of the underlying log-linear fit.
    pub residual: f64,
}

/// Least squares for a small dense system A x = b (A is rows x cols,
/// row-major, rows >= cols) via normal equations and Gaussian elimination
/// with partial pivoting. Fine for the handful-of-columns systems used here.
pub fn lstsq(a: &[f64], rows: usize, cols: usize, b: &[f64]) -> Result<Vec<f64>, NumError> {
    assert_eq!(a.len(), rows * cols);
    assert_eq!(b.len(), rows);
    if rows < cols {
        return Err(NumError::TooFewSamples {
            need: cols,
            got: rows,
        });
    }
    // Normal equations: (A^T A) x = A^T b
    let mut ata = vec![0.0; cols * cols];
    let mut atb = vec![0.0; cols];
    for i in 0..rows {
        let row = &a[i * cols..(i + 1) * cols];
        for p in 0..cols {
            atb[p] += row[p] * b[i];
            for q in 0..cols {
                ata[p * cols + q] += row[p] * row[q];
            }
        }
    }
    solve_dense(&mut ata, &mut atb, cols)?;
    Ok(atb)
}

/// In-place Gaussian elimination with partial pivoting on an n x n system.
fn solve_dense(m: &mut [f64], rhs: &mut [f64], n: usize) -> Result<(), NumError> {
    for k in 0..n {
        let mut piv = k;
        for i in (k + 1)..n {
            if m[i * n + k].abs() > m[piv * n + k].abs() {
                piv = i;
            }
        }
        if m[piv * n + k].abs() < 1e-300 {
            return Err(NumError::SingularSystem);
        }
        if piv != k {
            for j in 0..n {
                m.swap(k * n + j, piv * n + j);
            }
            rhs.swap(k, piv);
        }
        let d = m[k * n + k];
        for i in (k + 1)..n {
            let f = m[i * n + k] / d;
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                m[i * n + j] -= f * m[k * n + j];
            }
            rhs[i] -= f * rhs[k];
        }
    }
    for k in (0..n).rev() {
        let mut s = rhs[k];
        for j in (k + 1)..n {
            s -= m[k * n + j] * rhs[j];
        }
        rhs[k] = s / m[k * n + k];
    }
    Ok(())
}

/// Ordinary least squares line y = slope * x + intercept.
/// Returns (slope, intercept, rms_residual).
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64), NumError> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(NumError::TooFewSamples {
            need: 2,
            got: xs.len().min(ys.len()),
        });
    }
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let det = n * sxx - sx * sx;
    if det.abs() < 1e-300 {
        return Err(NumError::SingularSystem);
    }
    let slope = (n * sxy - sx * sy) / det;
    let intercept = (sy - slope * sx) / n;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    Ok((slope, intercept, (rss / n).sqrt()))
}

/// Fit |y| = amplitude * exp(rate * x) by a linear fit in log space.
/// All |y| must be strictly positive.
pub fn log_linear_fit(xs: &[f64], ys: &[f64]) -> Result<ExpFit, NumError> {
    if ys.iter().any(|&y| y.abs() <= 0.0 || !y.is_finite()) {
        return Err(NumError::NonpositiveValues);
    }
    let logs: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    let (slope, intercept, residual) = linear_fit(xs, &logs)?;
    Ok(ExpFit {
        rate: slope,
        amplitude: intercept.exp(),
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_recovery() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 * x - 1.0).collect();
        let (m, b, r) = linear_fit(&xs, &ys).unwrap();
        assert!((m - 2.5).abs() < 1e-12);
        assert!((b + 1.0).abs() < 1e-12);
        assert!(r < 1e-12);
    }

    #[test]
    fn exponent_recovery() {
        let xs: Vec<f64> = (0..20).map(|i| 0.1 * i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 0.7 * (3.0 * x).exp()).collect();
        let fit = log_linear_fit(&xs, &ys).unwrap();
        assert!((fit.rate - 3.0).abs() < 1e-10);
        assert!((fit.amplitude - 0.7).abs() < 1e-10);
    }

    #[test]
    fn exponent_fit_rejects_zero_samples() {
        let xs = [0.0, 1.0, 2.0];
        let ys = [1.0, 0.0, 4.0];
        assert!(matches!(
            log_linear_fit(&xs, &ys),
            Err(NumError::NonpositiveValues)
        ));
    }

    #[test]
    fn least_squares_two_columns() {
        // y = 3 a + 2 b with design matrix [a, b]
        let rows = 5;
        let a: Vec<f64> = vec![
            1.0, 0.0, //
            0.0, 1.0, //
            1.0, 1.0, //
            2.0, 1.0, //
            1.0, 3.0,
        ];
        let b: Vec<f64> = vec![3.0, 2.0, 5.0, 8.0, 9.0];
        let x = lstsq(&a, rows, 2, &b).unwrap();
        assert!((x[0] - 3.0).abs() < 1e-12);
        assert!((x[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn least_squares_overdetermined_noise() {
        // Minimizer of a known inconsistent system, computed by hand:
        // A = [[1],[1]], b = [0, 2] -> x = 1.
        let x = lstsq(&[1.0, 1.0], 2, 1, &[0.0, 2.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14);
    }
}
