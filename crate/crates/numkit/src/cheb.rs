/// Chebyshev-Gauss-Lobatto collocation grid on an interval [a, b].
///
/// Points are stored ascending from a to b. The differentiation matrix is the
/// standard dense collocation matrix with the negative-sum trick on the
/// diagonal for stability.
#[derive(Debug, Clone)]
pub struct ChebGrid {
    pub a: f64,
    pub b: f64,
    /// n+1 points, ascending, points[0] = a, points[n] = b.
    pub points: Vec<f64>,
    /// (n+1) x (n+1) first-derivative matrix, row-major.
    pub d1: Vec<f64>,
    n: usize,
}

impl ChebGrid {
    /// Grid with n+1 points (polynomial degree n).
    pub fn new(n: usize, a: f64, b: f64) -> Self {
        assert!(n >= 1);
        assert!(b > a);
        let np = n + 1;
        // Standard nodes cos(pi j / n) descend from 1 to -1; flip to ascend.
        let xs: Vec<f64> = (0..np)
            .map(|j| -(std::f64::consts::PI * j as f64 / n as f64).cos())
            .collect();
        let c = |j: usize| -> f64 {
            if j == 0 || j == n {
                2.0
            } else {
                1.0
            }
        };
        let sign = |j: usize| -> f64 {
            if j % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        };
        let mut d = vec![0.0; np * np];
        for i in 0..np {
            for j in 0..np {
                if i != j {
                    d[i * np + j] = c(i) / c(j) * sign(i + j) / (xs[i] - xs[j]);
                }
            }
        }
        // Diagonal: rows of a differentiation matrix kill constants.
        for i in 0..np {
            let mut s = 0.0;
            for j in 0..np {
                if i != j {
                    s += d[i * np + j];
                }
            }
            d[i * np + i] = -s;
        }
        // Map [-1,1] -> [a,b]: x = a + (b-a)(t+1)/2, so d/dx = 2/(b-a) d/dt.
        let scale = 2.0 / (b - a);
        for v in d.iter_mut() {
            *v *= scale;
        }
        let points: Vec<f64> = xs.iter().map(|&t| a + (b - a) * (t + 1.0) / 2.0).collect();
        Self {
            a,
            b,
            points,
            d1: d,
            n,
        }
    }

    pub fn len(&self) -> usize {
        self.n + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Apply the first-derivative matrix to nodal values.
    pub fn diff(&self, values: &[f64]) -> Vec<f64> {
        self.mat_vec(&self.d1, values)
    }

    /// Second derivative as D*(D*values). For the resolutions used here this
    /// is accurate enough and avoids storing D^2.
    pub fn diff2(&self, values: &[f64]) -> Vec<f64> {
        self.diff(&self.diff(values))
    }

    fn mat_vec(&self, m: &[f64], v: &[f64]) -> Vec<f64> {
        let np = self.len();
        assert_eq!(v.len(), np);
        let mut out = vec![0.0; np];
        for i in 0..np {
            let row = &m[i * np..(i + 1) * np];
            let mut s = 0.0;
            for (a, b) in row.iter().zip(v) {
                s += a * b;
            }
            out[i] = s;
        }
        out
    }

    /// Barycentric interpolation of nodal values at an arbitrary point.
    pub fn interpolate(&self, values: &[f64], x: f64) -> f64 {
        assert_eq!(values.len(), self.len());
        let n = self.n;
        let mut num = 0.0;
        let mut den = 0.0;
        for j in 0..=n {
            let diff = x - self.points[j];
            if diff == 0.0 {
                return values[j];
            }
            // Chebyshev-Lobatto barycentric weights: (-1)^j, halved at ends.
            let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == n {
                w *= 0.5;
            }
            let t = w / diff;
            num += t * values[j];
            den += t;
        }
        num / den
    }
}
