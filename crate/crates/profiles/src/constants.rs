use crate::ProfileError;
use exact_core::{q, q_from_f64, qr, q_to_f64, Q};
use serde::Serialize;

/// Exact rational values of the profile constants, available whenever
/// 6(d-1)(d-6) is a perfect square (d = 7, 9, ...).
#[derive(Debug, Clone, PartialEq)]
pub struct ExactProfileConstants {
    pub d0: Q,
    pub c1: Q,
    pub c2: Q,
    pub c3: Q,
}

/// Constants of the explicit blowup profile
/// U(rho) = (c1 - c2 rho^2) / (c3 + rho^2)^2 in dimension d.
#[derive(Debug, Clone, Serialize)]
pub struct ProfileConstants {
    pub d: u32,
    pub d0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    #[serde(skip)]
    pub exact: Option<ExactProfileConstants>,
}

impl ProfileConstants {
    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Squared radius of the unique zero of U.
    pub fn rho_star_sq(&self) -> f64 {
        self.c1 / self.c2
    }

    /// Constants with c1 overridden, for negative-control experiments.
    /// The exactness flag is preserved so the symbolic residual machinery
    /// still runs (and reports a nonzero residual).
    pub fn with_c1(&self, c1: Q) -> Self {
        let mut out = self.clone();
        out.c1 = q_to_f64(&c1);
        if let Some(e) = &mut out.exact {
            e.c1 = c1;
        }
        out
    }

    /// Rational values for the symbolic machinery: the exact layer when it
    /// exists, otherwise the dyadic values of the rounded floats.
    pub fn rationalized(&self) -> ExactProfileConstants {
        self.exact.clone().unwrap_or_else(|| ExactProfileConstants {
            d0: q_from_f64(self.d0),
            c1: q_from_f64(self.c1),
            c2: q_from_f64(self.c2),
            c3: q_from_f64(self.c3),
        })
    }
}

fn isqrt_exact(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    for c in r.saturating_sub(1)..=r + 1 {
        if c * c == n {
            return Some(c);
        }
    }
    None
}

/// Constants (d0, c1, c2, c3) of the blowup profile in dimension d >= 7:
///   d0 = sqrt(6(d-1)(d-6)),
///   c1 = (4/25)((3d-8) d0 + 8d^2 - 56d + 48),
///   c2 = (4/5) d0,
///   c3 = (1/15)(3d - 18 + d0).
/// Exact rationals are carried along when d0 is an integer.
pub fn profile_constants(d: u32) -> Result<ProfileConstants, ProfileError> {
    if d < 7 {
        return Err(ProfileError::DimensionTooSmall(d));
    }
    let disc = 6 * (d as u64 - 1) * (d as u64 - 6);
    let exact = isqrt_exact(disc).map(|r| {
        let d0 = q(r as i64);
        let dq = q(d as i64);
        let c1 = qr(4, 25)
            * ((q(3) * &dq - q(8)) * &d0 + q(8) * &dq * &dq - q(56) * &dq + q(48));
        let c2 = qr(4, 5) * &d0;
        let c3 = qr(1, 15) * (q(3) * &dq - q(18) + &d0);
        ExactProfileConstants { d0, c1, c2, c3 }
    });
    let (d0, c1, c2, c3) = match &exact {
        Some(e) => (
            q_to_f64(&e.d0),
            q_to_f64(&e.c1),
            q_to_f64(&e.c2),
            q_to_f64(&e.c3),
        ),
        None => {
            let d0 = (disc as f64).sqrt();
            let df = d as f64;
            let c1 = (4.0 / 25.0) * ((3.0 * df - 8.0) * d0 + 8.0 * df * df - 56.0 * df + 48.0);
            (d0, c1, 0.8 * d0, (3.0 * df - 18.0 + d0) / 15.0)
        }
    };
    let out = ProfileConstants {
        d,
        d0,
        c1,
        c2,
        c3,
        exact,
    };
    debug_assert!(out.c3 > 0.0 && out.c1 > out.c2);
    debug_assert!((out.d0 * out.d0 - disc as f64).abs() < 1e-6 * disc as f64);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_dimensional_values() {
        let c = profile_constants(9).unwrap();
        let e = c.exact.as_ref().unwrap();
        assert_eq!(e.d0, q(12));
        assert_eq!(e.c1, qr(336, 5));
        assert_eq!(e.c2, qr(48, 5));
        assert_eq!(e.c3, qr(7, 5));
        // central value c1/c3^2 = 240/7
        assert_eq!(&e.c1 / (&e.c3 * &e.c3), qr(240, 7));
        assert!((c.rho_star_sq() - 7.0).abs() < 1e-14);
    }

    #[test]
    fn seven_dimensional_values() {
        let c = profile_constants(7).unwrap();
        let e = c.exact.as_ref().unwrap();
        assert_eq!(e.d0, q(6));
        assert_eq!(e.c1, qr(504, 25));
        assert_eq!(e.c2, qr(24, 5));
        assert_eq!(e.c3, qr(3, 5));
    }

    #[test]
    fn low_dimension_rejected() {
        assert_eq!(
            profile_constants(6).unwrap_err(),
            ProfileError::DimensionTooSmall(6)
        );
    }

    #[test]
    fn irrational_dimension_is_float_only() {
        let c = profile_constants(8).unwrap();
        assert!(!c.is_exact());
        // d0^2 = 6 * 7 * 2 = 84
        assert!((c.d0 * c.d0 - 84.0).abs() < 1e-10);
        assert!(c.c3 > 0.0 && c.c1 > c.c2);
    }
}
