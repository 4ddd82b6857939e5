use exact_core::{q, qr, MPoly, Q};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

use crate::chart::{ChartConsts, PowFrac, VAR_G, VAR_P};
use crate::family::{family_powfrac, FamilyKind};
use crate::{profile_constants, BoostKernel, ProfileError};

/// Explicit eigenfields of the flow linearized around the boosted rational
/// profile in d = 9: one growing mode (h, eigenvalue 3), the ten
/// symmetry modes of eigenvalue 1 (g0 from time translation, g1..g9 from
/// space translations) and the nine boost modes of eigenvalue 0 (q1..q9).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModeLabel {
    H,
    G(u8),
    Q(u8),
}

impl ModeLabel {
    pub fn lambda(&self) -> i64 {
        match self {
            ModeLabel::H => 3,
            ModeLabel::G(_) => 1,
            ModeLabel::Q(_) => 0,
        }
    }

    pub fn all() -> Vec<ModeLabel> {
        let mut v = vec![ModeLabel::H];
        for k in 0..=9 {
            v.push(ModeLabel::G(k));
        }
        for j in 1..=9 {
            v.push(ModeLabel::Q(j));
        }
        v
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeLabel::H => write!(f, "h"),
            ModeLabel::G(k) => write!(f, "g{k}"),
            ModeLabel::Q(j) => write!(f, "q{j}"),
        }
    }
}

impl FromStr for ModeLabel {
    type Err = ProfileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ProfileError::UnknownMode(s.to_string());
        match s.split_at(1) {
            ("h", "") => Ok(ModeLabel::H),
            ("g", rest) => {
                let k: u8 = rest.parse().map_err(|_| bad())?;
                if k <= 9 {
                    Ok(ModeLabel::G(k))
                } else {
                    Err(bad())
                }
            }
            ("q", rest) => {
                let j: u8 = rest.parse().map_err(|_| bad())?;
                if (1..=9).contains(&j) {
                    Ok(ModeLabel::Q(j))
                } else {
                    Err(bad())
                }
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EigenField {
    pub label: ModeLabel,
    pub lambda: i64,
    pub boost: BoostKernel,
    /// Chart direction for the p variable (irrelevant for h and g0).
    direction: usize,
    u1: PowFrac<Q>,
    u2: PowFrac<Q>,
    potential: PowFrac<Q>,
    consts: ChartConsts<Q>,
}

impl EigenField {
    /// Build the eigenfield for a boost in d = 9.
    pub fn new(label: ModeLabel, boost: BoostKernel) -> Result<Self, ProfileError> {
        if boost.dim() != 9 {
            return Err(ProfileError::BoostLengthMismatch {
                expected: 9,
                got: boost.dim(),
            });
        }
        let direction = match label {
            ModeLabel::H | ModeLabel::G(0) => 0,
            ModeLabel::G(k) => (k - 1) as usize,
            ModeLabel::Q(j) => (j - 1) as usize,
        };
        let e = profile_constants(9)?.exact.unwrap();
        let u_a = family_powfrac(FamilyKind::UStar, e.c1, e.c2, e.c3);
        let base = u_a.base.clone();
        let consts = ChartConsts::from_boost_exact(&boost, direction);
        // all closed forms below are written over (5 base)^3, hence the 1/125
        let inv125 = qr(1, 125);
        let u1 = match label {
            ModeLabel::H => {
                PowFrac::new(MPoly::var(3, VAR_G).scale(&inv125), base.clone(), 3)
            }
            ModeLabel::G(0) => {
                // (1 - s) g / (5 base)^3
                let mut n = MPoly::zero(3);
                n.add_term(vec![0, 1, 0], inv125.clone());
                n.add_term(vec![1, 1, 0], -inv125);
                PowFrac::new(n, base.clone(), 3)
            }
            ModeLabel::G(_) => {
                // (5s - 5 - 72 g^2) p / (5 base)^3
                let mut n = MPoly::zero(3);
                n.add_term(vec![1, 0, 1], qr(1, 25));
                n.add_term(vec![0, 0, 1], qr(-1, 25));
                n.add_term(vec![0, 2, 1], qr(-72, 125));
                PowFrac::new(n, base.clone(), 3)
            }
            ModeLabel::Q(_) => u_a.partial(VAR_G).mul_poly(&MPoly::var(3, VAR_P)),
        };
        let lambda = label.lambda();
        let u2 = consts.xi_grad(&u1).add(&u1.scale(&q(lambda + 2)));
        let potential = u_a.scale(&q(2));
        Ok(Self {
            label,
            lambda,
            boost,
            direction,
            u1,
            u2,
            potential,
            consts,
        })
    }

    /// Evaluate both components at a point.
    pub fn eval(&self, xi: &[f64]) -> Result<(f64, f64), ProfileError> {
        if xi.len() != 9 {
            return Err(ProfileError::PointLengthMismatch {
                expected: 9,
                got: xi.len(),
            });
        }
        let (s, g, p) = ChartConsts::<f64>::point_f64(&self.boost, self.direction, xi);
        Ok((self.u1.eval_f64(s, g, p), self.u2.eval_f64(s, g, p)))
    }

    pub fn first_component(&self) -> &PowFrac<Q> {
        &self.u1
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenResidualReport {
    pub mode: String,
    pub lambda: i64,
    /// The residual is the zero rational function (possible only when the
    /// boost carries exactly normalized hyperbolic data).
    pub exact_zero: bool,
    /// Sup of both residual components over the evaluation grid.
    pub grid_sup: f64,
}

/// Residual of the eigenvalue equation (lambda - L) u = 0 for the mode,
/// where L is the linearization of the similarity flow around the boosted
/// profile. The residual is assembled symbolically; for exactly normalized
/// boosts a zero residual is a polynomial identity.
pub fn eigen_residual(mode: &EigenField) -> EigenResidualReport {
    let (l1, l2) = mode
        .consts
        .linearized_apply(&mode.potential, &mode.u1, &mode.u2);
    let lam = q(mode.lambda);
    let r1 = l1.sub(&mode.u1.scale(&lam));
    let r2 = l2.sub(&mode.u2.scale(&lam));
    let exact_zero = r1.is_zero_fn() && r2.is_zero_fn();
    let grid_sup = if exact_zero {
        0.0
    } else {
        let mut sup: f64 = 0.0;
        for xi in eval_grid(&mode.boost) {
            let (s, g, p) =
                ChartConsts::<f64>::point_f64(&mode.boost, mode.direction, &xi);
            sup = sup.max(r1.eval_f64(s, g, p).abs());
            sup = sup.max(r2.eval_f64(s, g, p).abs());
        }
        sup
    };
    EigenResidualReport {
        mode: mode.label.to_string(),
        lambda: mode.lambda,
        exact_zero,
        grid_sup,
    }
}

/// Deterministic evaluation points inside the unit ball.
fn eval_grid(boost: &BoostKernel) -> Vec<Vec<f64>> {
    let d = 9;
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for i in 0..d {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        dirs.push(e.clone());
        e[i] = -1.0;
        dirs.push(e);
    }
    dirs.push(vec![1.0 / (d as f64).sqrt(); d]);
    let an: f64 = boost.avec.iter().map(|x| x * x).sum::<f64>().sqrt();
    if an > 1e-14 {
        dirs.push(boost.avec.iter().map(|x| x / an).collect());
    }
    let mut pts = vec![vec![0.0; d]];
    for r in [0.15, 0.4, 0.65, 0.9] {
        for dir in &dirs {
            pts.push(dir.iter().map(|x| x * r).collect());
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_labels_parse_and_print() {
        for m in ModeLabel::all() {
            let s = m.to_string();
            assert_eq!(s.parse::<ModeLabel>().unwrap(), m);
        }
        assert!("g10".parse::<ModeLabel>().is_err());
        assert!("q0".parse::<ModeLabel>().is_err());
        assert!("x1".parse::<ModeLabel>().is_err());
    }

    #[test]
    fn unboosted_h_matches_closed_form() {
        let m = EigenField::new(ModeLabel::H, BoostKernel::zero(9)).unwrap();
        let mut xi = vec![0.0; 9];
        xi[2] = 0.5;
        let (h1, h2) = m.eval(&xi).unwrap();
        let s: f64 = 0.25;
        assert!((h1 - 1.0 / (7.0 + 5.0 * s).powi(3)).abs() < 1e-15);
        assert!((h2 - (35.0 - 5.0 * s) / (7.0 + 5.0 * s).powi(4)).abs() < 1e-15);
    }

    #[test]
    fn translation_mode_is_profile_derivative() {
        // q1 at a = 0 equals 8640 xi^1 (7 - 3s)/(7+5s)^3 in the first slot
        let m = EigenField::new(ModeLabel::Q(1), BoostKernel::zero(9)).unwrap();
        let mut xi = vec![0.0; 9];
        xi[0] = 0.3;
        xi[4] = -0.2;
        let s = 0.09 + 0.04;
        let (q1, _) = m.eval(&xi).unwrap();
        let expect = 8640.0 * 0.3 * (7.0 - 3.0 * s) / (7.0f64 + 5.0 * s).powi(3);
        assert!((q1 - expect).abs() < 1e-12 * expect.abs());
    }
}
