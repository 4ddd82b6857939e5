use crate::NumError;

/// Gauss-Legendre rule on [-1, 1] with `n` nodes, exact for polynomials of
/// degree 2n-1. Nodes are found by Newton iteration on the Legendre
/// polynomial from Chebyshev initial guesses.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for k in 0..n {
            // Tricomi-style initial guess.
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            nodes[n - 1 - k] = x;
            weights[n - 1 - k] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Adaptive quadrature by interval bisection: a fixed Gauss rule on the whole
/// interval is compared against the two halves; subdivide until the local
/// discrepancy is below the tolerance share.
pub fn adaptive_quad<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, NumError> {
    let rule = GaussLegendre::new(15);
    let whole = rule.integrate(a, b, f);
    let mut total = 0.0;
    let mut stack = vec![(a, b, whole, tol, 0u32)];
    while let Some((a, b, whole, tol, depth)) = stack.pop() {
        let m = 0.5 * (a + b);
        let left = rule.integrate(a, m, f);
        let right = rule.integrate(m, b, f);
        let err = (left + right - whole).abs();
        if err <= tol || b - a < 1e-14 {
            total += left + right;
            continue;
        }
        if depth > 60 {
            return Err(NumError::QuadTolerance { tol, estimate: err });
        }
        stack.push((a, m, left, 0.5 * tol, depth + 1));
        stack.push((m, b, right, 0.5 * tol, depth + 1));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_rule_is_exact_on_polynomials() {
        let rule = GaussLegendre::new(2);
        // degree 3 is exact for n = 2
        let val = rule.integrate(0.0, 1.0, |x| x * x * x);
        assert!((val - 0.25).abs() < 1e-15);
    }

    #[test]
    fn sine_integral() {
        let rule = GaussLegendre::new(20);
        let val = rule.integrate(0.0, std::f64::consts::PI, f64::sin);
        assert!((val - 2.0).abs() < 1e-13);
    }

    #[test]
    fn adaptive_handles_endpoint_steepness() {
        // int_0^1 1/sqrt(x) dx = 2, integrable singularity at 0
        let val = adaptive_quad(&|x: f64| x.sqrt().recip(), 1e-12, 1.0, 1e-10).unwrap();
        assert!((val - (2.0 - 2e-6)).abs() < 1e-5);
    }

    #[test]
    fn adaptive_matches_exact_on_smooth_integrand() {
        let val = adaptive_quad(&|x: f64| (4.0 * x).cos(), 0.0, 2.0, 1e-12).unwrap();
        assert!((val - 0.25 * (8.0f64).sin()).abs() < 1e-12);
    }
}
