use exact_core::{MPoly, Q};
use num::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::chart::{ChartConsts, ChartScalar, PowFrac, VAR_G};
use crate::{BoostKernel, ProfileConstants, ProfileError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    UStar,
    OdeKappa,
}

/// A blowup solution u(t, x) = (T-t)^{-2} F((x-x0)/(T-t)) where F is either
/// the boosted rational profile U_a or the boosted constant kappa_a = 6/g^2.
#[derive(Debug, Clone)]
pub struct BlowupFamily {
    pub kind: FamilyKind,
    pub constants: ProfileConstants,
    pub t_blowup: f64,
    pub x0: Vec<f64>,
    pub boost: BoostKernel,
}

impl BlowupFamily {
    pub fn new(
        kind: FamilyKind,
        constants: ProfileConstants,
        t_blowup: f64,
        x0: Vec<f64>,
        boost: BoostKernel,
    ) -> Result<Self, ProfileError> {
        let d = constants.d as usize;
        if boost.dim() != d {
            return Err(ProfileError::BoostLengthMismatch {
                expected: d,
                got: boost.dim(),
            });
        }
        if x0.len() != d {
            return Err(ProfileError::PointLengthMismatch {
                expected: d,
                got: x0.len(),
            });
        }
        Ok(Self {
            kind,
            constants,
            t_blowup,
            x0,
            boost,
        })
    }

    pub fn u_star(
        d: u32,
        t_blowup: f64,
        x0: Vec<f64>,
        boost: BoostKernel,
    ) -> Result<Self, ProfileError> {
        Self::new(
            FamilyKind::UStar,
            crate::profile_constants(d)?,
            t_blowup,
            x0,
            boost,
        )
    }

    pub fn ode_kappa(
        d: u32,
        t_blowup: f64,
        x0: Vec<f64>,
        boost: BoostKernel,
    ) -> Result<Self, ProfileError> {
        Self::new(
            FamilyKind::OdeKappa,
            crate::profile_constants(d)?,
            t_blowup,
            x0,
            boost,
        )
    }

    /// Both the constants and the boost admit exact rational layers.
    pub fn is_exact(&self) -> bool {
        let consts_ok = match self.kind {
            FamilyKind::UStar => self.constants.is_exact(),
            FamilyKind::OdeKappa => true,
        };
        consts_ok && self.boost.is_exact()
    }
}

/// The profile F as a chart function, together with its base polynomial.
pub fn family_powfrac<C: ChartScalar>(kind: FamilyKind, c1: C, c2: C, c3: C) -> PowFrac<C> {
    let arity = 3;
    match kind {
        FamilyKind::UStar => {
            let mut base = MPoly::zero(arity);
            base.add_term(vec![0, 2, 0], C::one() + c3);
            base.add_term(vec![1, 0, 0], C::one());
            base.add_term(vec![0, 0, 0], -C::one());
            let mut num = MPoly::zero(arity);
            num.add_term(vec![0, 2, 0], c1 - c2.clone());
            num.add_term(vec![0, 0, 0], c2.clone());
            num.add_term(vec![1, 0, 0], -c2);
            PowFrac::new(num, base, 2)
        }
        FamilyKind::OdeKappa => {
            let base = MPoly::var(arity, VAR_G);
            PowFrac::new(MPoly::constant(arity, C::from_i64(6)), base, 2)
        }
    }
}

/// The profile as an exact chart function. Inexact constants (irrational d0)
/// enter through their dyadic rational values.
pub fn profile_powfrac_exact(family: &BlowupFamily) -> PowFrac<Q> {
    match family.kind {
        FamilyKind::UStar => {
            let e = family.constants.rationalized();
            family_powfrac(family.kind, e.c1, e.c2, e.c3)
        }
        FamilyKind::OdeKappa => {
            family_powfrac(family.kind, Q::zero(), Q::zero(), Q::zero())
        }
    }
}

/// Value of the similarity profile at a point of the unit ball (or beyond,
/// wherever the denominator stays away from zero).
pub fn eval_profile(family: &BlowupFamily, xi: &[f64]) -> Result<f64, ProfileError> {
    let d = family.constants.d as usize;
    if xi.len() != d {
        return Err(ProfileError::PointLengthMismatch {
            expected: d,
            got: xi.len(),
        });
    }
    let s: f64 = xi.iter().map(|x| x * x).sum();
    let g = family.boost.gamma(xi);
    let c = &family.constants;
    match family.kind {
        FamilyKind::UStar => {
            let den = (1.0 + c.c3) * g * g + s - 1.0;
            let scale = (1.0 + c.c3) * g * g + s + 1.0;
            if den.abs() <= 1e-14 * scale {
                return Err(ProfileError::PoleEncountered { denominator: den });
            }
            Ok(((c.c1 - c.c2) * g * g + c.c2 * (1.0 - s)) / (den * den))
        }
        FamilyKind::OdeKappa => {
            if g.abs() <= 1e-14 {
                return Err(ProfileError::PoleEncountered { denominator: g });
            }
            Ok(6.0 / (g * g))
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PdeResidual {
    /// (d_tt - lap - square) u at the requested point, scaled back from
    /// similarity variables.
    pub value: f64,
    /// The full symbolic residual is the zero rational function.
    pub exactly_zero: bool,
}

/// Residual of the wave equation d_tt u - lap u - u^2 = 0 for the family
/// member, at a point strictly inside the backward light cone of (T, x0).
/// The residual is formed symbolically in the chart; when the family carries
/// exact data the zero test is a polynomial identity check.
pub fn pde_residual(family: &BlowupFamily, t: f64, x: &[f64]) -> Result<PdeResidual, ProfileError> {
    let d = family.constants.d as usize;
    if x.len() != d {
        return Err(ProfileError::PointLengthMismatch {
            expected: d,
            got: x.len(),
        });
    }
    let lam = family.t_blowup - t;
    let r2: f64 = x
        .iter()
        .zip(&family.x0)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    if lam <= 0.0 || r2 >= lam * lam {
        return Err(ProfileError::OutsideLightCone);
    }
    let xi: Vec<f64> = x
        .iter()
        .zip(&family.x0)
        .map(|(a, b)| (a - b) / lam)
        .collect();
    let (s, g, p) = ChartConsts::<f64>::point_f64(&family.boost, 0, &xi);

    let consts = ChartConsts::from_boost_exact(&family.boost, 0);
    let f = profile_powfrac_exact(family);
    let res = consts.stationary_residual(&f);
    if res.is_zero_fn() {
        return Ok(PdeResidual {
            value: 0.0,
            exactly_zero: true,
        });
    }
    let value = -res.eval_f64(s, g, p) / lam.powi(4);
    Ok(PdeResidual {
        value,
        exactly_zero: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PositivityVerdict {
    CertifiedPositive,
    Inconclusive,
    NegativeFound,
}

#[derive(Debug, Clone, Serialize)]
pub struct PositivityReport {
    pub verdict: PositivityVerdict,
    /// Empirical minimum over sampled interior points.
    pub min_value: f64,
    pub argmin: Vec<f64>,
    /// Smallest certified cell lower bound (the certification margin).
    pub lower_bound: f64,
    pub cells: usize,
}

/// Interval lower bound for the profile on a cell
/// [s0, s1] x [g0, g1] of the (s, gamma) chart, using that both the
/// numerator and the denominator are affine in (gamma^2, s) with known signs.
fn cell_lower_bound(kind: FamilyKind, c: &ProfileConstants, cell: [f64; 4]) -> Option<f64> {
    let [s0, s1, g0, g1] = cell;
    match kind {
        FamilyKind::UStar => {
            // numerator increases in gamma^2 (c1 > c2) and decreases in s
            let n_min = (c.c1 - c.c2) * g0 * g0 + c.c2 * (1.0 - s1);
            let den_min = (1.0 + c.c3) * g0 * g0 + s0 - 1.0;
            let den_max = (1.0 + c.c3) * g1 * g1 + s1 - 1.0;
            if den_min <= 0.0 {
                return None;
            }
            Some(if n_min >= 0.0 {
                n_min / (den_max * den_max)
            } else {
                n_min / (den_min * den_min)
            })
        }
        FamilyKind::OdeKappa => {
            if g0 <= 0.0 {
                return None;
            }
            Some(6.0 / (g1 * g1))
        }
    }
}

/// Scan the profile over the closed unit ball. The profile depends on xi
/// only through s = |xi|^2 and gamma, so the d-dimensional ball reduces to
/// the region {0 <= s <= 1, |gamma - A0| <= |A| sqrt(s)} and the scan is
/// two-dimensional regardless of d.
pub fn positivity_on_ball(
    family: &BlowupFamily,
    resolution: usize,
) -> Result<PositivityReport, ProfileError> {
    let res = resolution.max(2);
    let b = &family.boost;
    let anorm = (b.a0 * b.a0 - 1.0).max(0.0).sqrt();
    let c = &family.constants;
    let kind = family.kind;

    struct RowResult {
        lb: Option<f64>,
        min_center: f64,
        arg: (f64, f64),
    }

    let rows: Vec<RowResult> = (0..res)
        .into_par_iter()
        .map(|i| {
            let s0 = i as f64 / res as f64;
            let s1 = (i + 1) as f64 / res as f64;
            let g_lo = b.a0 - anorm * s1.sqrt();
            let g_hi = b.a0 + anorm * s1.sqrt();
            let n_g = if anorm == 0.0 { 1 } else { res };
            let mut lb: Option<f64> = Some(f64::INFINITY);
            let mut min_center = f64::INFINITY;
            let mut arg = (0.0, b.a0);
            for k in 0..n_g {
                let g0 = g_lo + (g_hi - g_lo) * k as f64 / n_g as f64;
                let g1 = g_lo + (g_hi - g_lo) * (k + 1) as f64 / n_g as f64;
                match (lb, cell_lower_bound(kind, c, [s0, s1, g0, g1])) {
                    (Some(a), Some(v)) => lb = Some(a.min(v)),
                    _ => lb = None,
                }
                // center sample, clamped into the admissible region
                let sc = 0.5 * (s0 + s1);
                let half_width = anorm * sc.sqrt();
                let gc = (0.5 * (g0 + g1))
                    .clamp(b.a0 - half_width, b.a0 + half_width);
                let val = match kind {
                    FamilyKind::UStar => {
                        let den = (1.0 + c.c3) * gc * gc + sc - 1.0;
                        ((c.c1 - c.c2) * gc * gc + c.c2 * (1.0 - sc)) / (den * den)
                    }
                    FamilyKind::OdeKappa => 6.0 / (gc * gc),
                };
                if val < min_center {
                    min_center = val;
                    arg = (sc, gc);
                }
            }
            RowResult {
                lb,
                min_center,
                arg,
            }
        })
        .collect();

    // include the boundary sample s = 1 exactly (the radial minimum sits there)
    let mut min_center = f64::INFINITY;
    let mut arg = (0.0, b.a0);
    let mut lower = Some(f64::INFINITY);
    for r in &rows {
        if r.min_center < min_center {
            min_center = r.min_center;
            arg = r.arg;
        }
        lower = match (lower, r.lb) {
            (Some(a), Some(v)) => Some(a.min(v)),
            _ => None,
        };
    }
    for &(sc, gc) in &[(1.0, b.a0 - anorm), (1.0, b.a0 + anorm), (1.0, b.a0)] {
        let val = match kind {
            FamilyKind::UStar => {
                let den = (1.0 + c.c3) * gc * gc + sc - 1.0;
                ((c.c1 - c.c2) * gc * gc + c.c2 * (1.0 - sc)) / (den * den)
            }
            FamilyKind::OdeKappa => 6.0 / (gc * gc),
        };
        if val < min_center {
            min_center = val;
            arg = (sc, gc);
        }
    }

    let verdict = if min_center <= 0.0 {
        PositivityVerdict::NegativeFound
    } else {
        match lower {
            Some(lb) if lb > 0.0 => PositivityVerdict::CertifiedPositive,
            _ => PositivityVerdict::Inconclusive,
        }
    };
    Ok(PositivityReport {
        verdict,
        min_value: min_center,
        argmin: chart_point_to_xi(b, arg.0, arg.1),
        lower_bound: lower.unwrap_or(f64::NEG_INFINITY),
        cells: res * res,
    })
}

/// A representative xi with |xi|^2 = s and gamma(xi, a) = g.
fn chart_point_to_xi(b: &BoostKernel, s: f64, g: f64) -> Vec<f64> {
    let d = b.dim();
    let anorm2: f64 = b.avec.iter().map(|x| x * x).sum();
    let anorm = anorm2.sqrt();
    if anorm < 1e-15 {
        let mut xi = vec![0.0; d];
        xi[0] = s.max(0.0).sqrt();
        return xi;
    }
    let along = (b.a0 - g) / anorm;
    let across = (s - along * along).max(0.0).sqrt();
    // unit vector along A and one orthogonal direction
    let ahat: Vec<f64> = b.avec.iter().map(|x| x / anorm).collect();
    let mut e: Vec<f64> = vec![0.0; d];
    // pick the axis least aligned with ahat and orthogonalize
    let (k, _) = ahat
        .iter()
        .enumerate()
        .min_by(|a, bb| a.1.abs().partial_cmp(&bb.1.abs()).unwrap())
        .unwrap();
    e[k] = 1.0;
    let proj: f64 = e.iter().zip(&ahat).map(|(x, y)| x * y).sum();
    let mut perp: Vec<f64> = e
        .iter()
        .zip(&ahat)
        .map(|(x, y)| x - proj * y)
        .collect();
    let pn: f64 = perp.iter().map(|x| x * x).sum::<f64>().sqrt();
    for v in perp.iter_mut() {
        *v /= pn;
    }
    (0..d)
        .map(|i| along * ahat[i] + across * perp[i])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn radial_family(d: u32) -> BlowupFamily {
        BlowupFamily::u_star(d, 1.0, vec![0.0; d as usize], BoostKernel::zero(d as usize))
            .unwrap()
    }

    #[test]
    fn central_value_nine() {
        let f = radial_family(9);
        let v = eval_profile(&f, &vec![0.0; 9]).unwrap();
        assert!((v - 240.0 / 7.0).abs() < 1e-13);
    }

    #[test]
    fn kappa_is_constant_six() {
        let f =
            BlowupFamily::ode_kappa(9, 1.0, vec![0.0; 9], BoostKernel::zero(9)).unwrap();
        let mut xi = vec![0.0; 9];
        xi[3] = 0.77;
        assert_eq!(eval_profile(&f, &xi).unwrap(), 6.0);
    }

    #[test]
    fn profile_vanishes_at_rho_star() {
        let f = radial_family(9);
        let mut xi = vec![0.0; 9];
        xi[0] = 7.0f64.sqrt();
        assert!(eval_profile(&f, &xi).unwrap().abs() < 1e-13);
    }

    #[test]
    fn exact_pde_residual_vanishes() {
        let f = radial_family(9);
        let mut x = vec![0.0; 9];
        x[0] = 0.25;
        let r = pde_residual(&f, 0.5, &x).unwrap();
        assert!(r.exactly_zero);
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn light_cone_enforced() {
        let f = radial_family(9);
        let mut x = vec![0.0; 9];
        x[0] = 0.6;
        assert_eq!(
            pde_residual(&f, 0.5, &x).unwrap_err(),
            ProfileError::OutsideLightCone
        );
    }

    #[test]
    fn positivity_radial_min_is_boundary_value() {
        let f = radial_family(9);
        let rep = positivity_on_ball(&f, 200).unwrap();
        assert_eq!(rep.verdict, PositivityVerdict::CertifiedPositive);
        assert!((rep.min_value - 10.0).abs() < 1e-9);
        let d7 = radial_family(7);
        let rep7 = positivity_on_ball(&d7, 200).unwrap();
        assert!((rep7.min_value - 6.0).abs() < 1e-9);
    }
}
