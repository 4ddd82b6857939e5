use exact_core::{q, q_from_f64, q_to_f64, Q};
use num::Zero;

use crate::ProfileError;

/// Rational hyperbolic data for a boost. The symbolic residual machinery
/// always runs over these rationals; `exactly_normalized` records whether
/// cosh^2 - sinh^2 = 1 holds exactly (half-tangent construction) or only up
/// to float rounding (rationalized float rapidities).
#[derive(Debug, Clone)]
pub struct ExactBoost {
    pub half_tangents: Option<Vec<Q>>,
    pub a0: Q,
    pub avec: Vec<Q>,
    /// da0[j] = d_{a_j} A_0
    pub da0: Vec<Q>,
    /// davec[j][i] = d_{a_j} A_i
    pub davec: Vec<Vec<Q>>,
}

/// Composite Lorentz boost along the coordinate axes with rapidities
/// a = (a^1, ..., a^d), precomputed in the factored form
///   A_0 = prod_i cosh a^i,   A_j = sinh a^j prod_{i>j} cosh a^i,
/// so that gamma(xi, a) = A_0 - A_j xi^j. Satisfies A_0^2 - sum A_j^2 = 1.
#[derive(Debug, Clone)]
pub struct BoostKernel {
    pub rapidity: Vec<f64>,
    pub a0: f64,
    pub avec: Vec<f64>,
    /// B^j = prod_{i>j} (cosh a^i)^{-1}
    pub bfac: Vec<f64>,
    pub da0: Vec<f64>,
    pub davec: Vec<Vec<f64>>,
    pub exact: ExactBoost,
    pub exactly_normalized: bool,
}

fn assemble<T>(
    cosh: &[T],
    sinh: &[T],
    one: T,
    mul: impl Fn(&T, &T) -> T,
    zero: T,
) -> (T, Vec<T>, Vec<T>, Vec<Vec<T>>)
where
    T: Clone,
{
    let d = cosh.len();
    // suffix[j] = prod_{i >= j} cosh a^i, suffix[d] = 1
    let mut suffix = vec![one.clone(); d + 1];
    for j in (0..d).rev() {
        suffix[j] = mul(&cosh[j], &suffix[j + 1]);
    }
    let a0 = suffix[0].clone();
    let avec: Vec<T> = (0..d).map(|j| mul(&sinh[j], &suffix[j + 1])).collect();
    // derivatives with respect to the rapidity a^j
    let mut da0 = Vec::with_capacity(d);
    let mut davec = Vec::with_capacity(d);
    for j in 0..d {
        // d_{a_j} A_0: replace cosh a^j by sinh a^j
        let mut prefix = one.clone();
        for c in cosh.iter().take(j) {
            prefix = mul(&prefix, c);
        }
        da0.push(mul(&mul(&prefix, &sinh[j]), &suffix[j + 1]));
        let mut row = Vec::with_capacity(d);
        for i in 0..d {
            if i > j {
                row.push(zero.clone());
            } else if i == j {
                // d sinh = cosh
                row.push(mul(&cosh[j], &suffix[j + 1]));
            } else {
                // i < j: A_i contains cosh a^j as a factor
                let mut v = sinh[i].clone();
                for (k, c) in cosh.iter().enumerate().skip(i + 1) {
                    v = mul(&v, if k == j { &sinh[j] } else { c });
                }
                row.push(v);
            }
        }
        davec.push(row);
    }
    (a0, avec, da0, davec)
}

impl BoostKernel {
    pub fn zero(d: usize) -> Self {
        Self::from_half_tangents(&vec![Q::zero(); d])
    }

    /// Boost from float rapidities. The rational layer is built from the
    /// exact dyadic values of the rounded cosh/sinh, so hyperbolic identities
    /// hold only up to input rounding (about 1e-16 relative).
    pub fn from_rapidities(a: &[f64]) -> Self {
        let cosh: Vec<f64> = a.iter().map(|x| x.cosh()).collect();
        let sinh: Vec<f64> = a.iter().map(|x| x.sinh()).collect();
        let (a0, avec, da0, davec) = assemble(&cosh, &sinh, 1.0, |x, y| x * y, 0.0);
        let coshq: Vec<Q> = cosh.iter().map(|&x| q_from_f64(x)).collect();
        let sinhq: Vec<Q> = sinh.iter().map(|&x| q_from_f64(x)).collect();
        let (a0q, avecq, da0q, davecq) =
            assemble(&coshq, &sinhq, q(1), |x, y| x * y, Q::zero());
        let bfac = bfactors(&cosh);
        Self {
            rapidity: a.to_vec(),
            a0,
            avec,
            bfac,
            da0,
            davec,
            exact: ExactBoost {
                half_tangents: None,
                a0: a0q,
                avec: avecq,
                da0: da0q,
                davec: davecq,
            },
            exactly_normalized: false,
        }
    }

    /// Boost from rational half-angle parameters t_j = tanh(a_j/2), |t_j| < 1.
    /// Carries both the exact rational layer and its float image.
    pub fn from_half_tangents(t: &[Q]) -> Self {
        let one = q(1);
        let coshq: Vec<Q> = t
            .iter()
            .map(|tj| (&one + tj * tj) / (&one - tj * tj))
            .collect();
        let sinhq: Vec<Q> = t
            .iter()
            .map(|tj| (q(2) * tj) / (&one - tj * tj))
            .collect();
        let (a0q, avecq, da0q, davecq) =
            assemble(&coshq, &sinhq, q(1), |x, y| x * y, Q::zero());
        let rapidity: Vec<f64> = t
            .iter()
            .map(|tj| {
                let tf = q_to_f64(tj);
                ((1.0 + tf) / (1.0 - tf)).ln()
            })
            .collect();
        let coshf: Vec<f64> = coshq.iter().map(q_to_f64).collect();
        let bfac = bfactors(&coshf);
        Self {
            rapidity,
            a0: q_to_f64(&a0q),
            avec: avecq.iter().map(q_to_f64).collect(),
            bfac,
            da0: da0q.iter().map(q_to_f64).collect(),
            davec: davecq
                .iter()
                .map(|row| row.iter().map(q_to_f64).collect())
                .collect(),
            exact: ExactBoost {
                half_tangents: Some(t.to_vec()),
                a0: a0q,
                avec: avecq,
                da0: da0q,
                davec: davecq,
            },
            exactly_normalized: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.avec.len()
    }

    pub fn is_exact(&self) -> bool {
        self.exactly_normalized
    }

    /// gamma(xi, a) = A_0 - A_j xi^j
    pub fn gamma(&self, xi: &[f64]) -> f64 {
        self.a0 - dot(&self.avec, xi)
    }

    /// d_{a_j} gamma(xi, a) at the kernel's own a.
    pub fn d_gamma(&self, j: usize, xi: &[f64]) -> f64 {
        self.da0[j] - dot(&self.davec[j], xi)
    }

    /// Defect of the normalization A_0^2 - sum_j A_j^2 = 1.
    pub fn normalization_defect(&self) -> f64 {
        self.a0 * self.a0 - self.avec.iter().map(|x| x * x).sum::<f64>() - 1.0
    }

    /// Full similarity map (t, x) -> (t', x'): translate by (T, x0), apply
    /// the axis boosts in order 1..d, then reflect time.
    pub fn lorentz_map(
        &self,
        t_blowup: f64,
        x0: &[f64],
        t: f64,
        x: &[f64],
    ) -> Result<(f64, Vec<f64>), ProfileError> {
        let d = self.dim();
        if x.len() != d || x0.len() != d {
            return Err(ProfileError::PointLengthMismatch {
                expected: d,
                got: x.len(),
            });
        }
        let mut w0 = t - t_blowup;
        let mut w: Vec<f64> = x.iter().zip(x0).map(|(xi, x0i)| xi - x0i).collect();
        for j in 0..d {
            let (c, s) = (self.rapidity[j].cosh(), self.rapidity[j].sinh());
            let (nw0, nwj) = (w0 * c + w[j] * s, w0 * s + w[j] * c);
            w0 = nw0;
            w[j] = nwj;
        }
        Ok((-w0, w))
    }
}

fn bfactors(cosh: &[f64]) -> Vec<f64> {
    let d = cosh.len();
    let mut suffix = vec![1.0; d + 1];
    for j in (0..d).rev() {
        suffix[j] = cosh[j] * suffix[j + 1];
    }
    (0..d).map(|j| 1.0 / suffix[j + 1]).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
