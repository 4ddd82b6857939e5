use crate::NumError;

/// Bisection on a sign-changing bracket. Returns the midpoint once the
/// bracket is below `tol` wide or an exact zero is hit.
pub fn bisect<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<f64, NumError> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(NumError::NotBracketed { a, b });
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if b - a < tol || m == a || m == b {
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Secant iteration from two starting points. Converges fast near simple
/// roots; falls over on pathological functions, so callers vet the result.
pub fn secant<F: FnMut(f64) -> f64>(
    mut f: F,
    mut x0: f64,
    mut x1: f64,
    tol: f64,
    max_iter: usize,
) -> Result<f64, NumError> {
    let mut f0 = f(x0);
    let mut f1 = f(x1);
    for _ in 0..max_iter {
        if f1.abs() <= tol {
            return Ok(x1);
        }
        let denom = f1 - f0;
        if denom == 0.0 {
            return Err(NumError::NoConvergence(max_iter));
        }
        let x2 = x1 - f1 * (x1 - x0) / denom;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x1);
        if !f1.is_finite() {
            return Err(NumError::NoConvergence(max_iter));
        }
    }
    if f1.abs() <= tol.max(1e-9) {
        Ok(x1)
    } else {
        Err(NumError::NoConvergence(max_iter))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_cosine() {
        let r = bisect(f64::cos, 1.0, 2.0, 1e-13).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn bisect_rejects_bad_bracket() {
        assert!(matches!(
            bisect(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-10),
            Err(NumError::NotBracketed { .. })
        ));
    }

    #[test]
    fn secant_square_root() {
        let r = secant(|x| x * x - 2.0, 1.0, 2.0, 1e-14, 50).unwrap();
        assert!((r - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn secant_reports_stall() {
        // flat function away from any root
        assert!(secant(|_| 1.0, 0.0, 1.0, 1e-12, 10).is_err());
    }
}
