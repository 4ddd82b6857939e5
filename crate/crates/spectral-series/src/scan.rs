//! Floating-point reconnaissance for the series ratio limits.
//!
//! The exact certificates pin the ratio a_{n+1}/a_n near its quasi-solution;
//! this module provides the cheap numeric counterpart: iterate the recurrence
//! at one complex spectral value and classify which characteristic root the
//! ratio approaches. Degenerate termination (a vanishing coefficient, the
//! polynomial eigensolutions) is detected and reported rather than treated
//! as a limit.

use exact_core::q_to_f64;
use num_complex::Complex64;
use numkit::aitken_accelerate;
use serde::Serialize;

use crate::error::SeriesError;
use crate::recurrence::{characteristic_roots, recurrence_coeffs_f64, FrobeniusForm};

/// Minimum number of recurrence steps for a classification to be attempted.
pub const MIN_SCAN_TERMS: usize = 200;

/// Relative size below which a coefficient counts as a termination of the
/// series rather than a small value on the way to a ratio limit.
const DEGENERACY_THRESHOLD: f64 = 1e-13;

/// Number of trailing ratios fed to the acceleration pass.
const ACCELERATION_TAIL: usize = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioClass {
    /// The ratio approaches 1: the series sees the interior singularity and
    /// the solution is not recessive there.
    TendsToOne,
    /// The ratio approaches the second characteristic root.
    TendsToOtherRoot,
    /// A coefficient vanished (relative to its predecessor), terminating the
    /// ratio sequence; happens exactly at polynomial eigensolutions.
    DegenerateTermination,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub ell: u32,
    pub form: FrobeniusForm,
    /// Spectral value as (re, im).
    pub lambda: (f64, f64),
    /// Number of ratio values computed.
    pub steps: usize,
    #[serde(rename = "terminal-ratio")]
    pub terminal_ratio: (f64, f64),
    /// Terminal value after one difference-squared acceleration pass on the
    /// tail.
    #[serde(rename = "accelerated-ratio")]
    pub accelerated_ratio: (f64, f64),
    #[serde(rename = "other-root")]
    pub other_root: f64,
    #[serde(rename = "dist-to-one")]
    pub dist_to_one: f64,
    #[serde(rename = "dist-to-other")]
    pub dist_to_other: f64,
    pub classification: RatioClass,
    /// Index of the first vanishing coefficient when the scan terminated
    /// degenerately.
    #[serde(rename = "terminated-at", skip_serializing_if = "Option::is_none")]
    pub terminated_at: Option<usize>,
}

/// Scan in the chart native to the angular index.
pub fn numeric_ratio_scan(
    ell: u32,
    lambda: Complex64,
    n_terms: usize,
) -> Result<ScanReport, SeriesError> {
    numeric_ratio_scan_in_form(FrobeniusForm::native(ell), ell, lambda, n_terms)
}

pub fn numeric_ratio_scan_in_form(
    form: FrobeniusForm,
    ell: u32,
    lambda: Complex64,
    n_terms: usize,
) -> Result<ScanReport, SeriesError> {
    if n_terms < MIN_SCAN_TERMS {
        return Err(SeriesError::ScanTooShort { need: MIN_SCAN_TERMS, got: n_terms });
    }

    // Renormalized iteration: after each step the current coefficient is
    // rescaled to unit modulus, so the vanishing test |a_{n+1}| < threshold
    // is automatically relative and no overflow can occur.
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = recurrence_coeffs_f64(form, ell, -1, lambda).expect("index >= -1").0;
    let mut ratios: Vec<Complex64> = Vec::with_capacity(n_terms);
    let mut terminated_at = None;

    for n in 0..n_terms {
        if cur.norm() < DEGENERACY_THRESHOLD {
            terminated_at = Some(n + 1);
            break;
        }
        ratios.push(cur / prev);
        let (a, b) = recurrence_coeffs_f64(form, ell, n as i64, lambda).expect("index >= -1");
        let next = a * cur + b * prev;
        let scale = cur.norm();
        prev = cur / scale;
        cur = next / scale;
    }

    let steps = ratios.len();
    let terminal = ratios.last().copied().unwrap_or(Complex64::new(0.0, 0.0));
    let accelerated = if terminated_at.is_none() && steps >= 3 {
        let tail = &ratios[steps.saturating_sub(ACCELERATION_TAIL)..];
        let re: Vec<f64> = tail.iter().map(|z| z.re).collect();
        let im: Vec<f64> = tail.iter().map(|z| z.im).collect();
        let (are, aim) = (aitken_accelerate(&re), aitken_accelerate(&im));
        match (are.last(), aim.last()) {
            (Some(&re), Some(&im)) => Complex64::new(re, im),
            _ => terminal,
        }
    } else {
        terminal
    };

    let other_root = q_to_f64(&characteristic_roots(form).1);
    let dist_to_one = (accelerated - Complex64::new(1.0, 0.0)).norm();
    let dist_to_other = (accelerated - Complex64::new(other_root, 0.0)).norm();

    let classification = if terminated_at.is_some() {
        RatioClass::DegenerateTermination
    } else {
        let (winner, win, lose) = if dist_to_one <= dist_to_other {
            (RatioClass::TendsToOne, dist_to_one, dist_to_other)
        } else {
            (RatioClass::TendsToOtherRoot, dist_to_other, dist_to_one)
        };
        // Require the winner to be both close in absolute terms and clearly
        // separated from the loser.
        if win < 0.1 && 3.0 * win < lose {
            winner
        } else {
            return Err(SeriesError::AmbiguousScan {
                other: other_root,
                dist_one: dist_to_one,
                dist_other: dist_to_other,
            });
        }
    };

    Ok(ScanReport {
        ell,
        form,
        lambda: (lambda.re, lambda.im),
        steps,
        terminal_ratio: (terminal.re, terminal.im),
        accelerated_ratio: (accelerated.re, accelerated.im),
        other_root,
        dist_to_one,
        dist_to_other,
        classification,
        terminated_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_low_chart_value_tends_to_one() {
        let report = numeric_ratio_scan(0, Complex64::new(2.0, 0.0), 500).unwrap();
        assert_eq!(report.classification, RatioClass::TendsToOne);
        assert!(report.dist_to_one < 1e-2, "dist {}", report.dist_to_one);
    }

    #[test]
    fn eigenvalues_terminate_the_scan() {
        let report = numeric_ratio_scan(0, Complex64::new(3.0, 0.0), 300).unwrap();
        assert_eq!(report.classification, RatioClass::DegenerateTermination);
        assert_eq!(report.terminated_at, Some(1));

        let report = numeric_ratio_scan(1, Complex64::new(0.0, 0.0), 300).unwrap();
        assert_eq!(report.classification, RatioClass::DegenerateTermination);
        assert_eq!(report.terminated_at, Some(2));
    }

    #[test]
    fn generic_high_chart_value_tends_to_one() {
        let report = numeric_ratio_scan(2, Complex64::new(0.5, 0.0), 500).unwrap();
        assert_eq!(report.classification, RatioClass::TendsToOne);
    }

    #[test]
    fn short_scans_are_rejected() {
        assert!(matches!(
            numeric_ratio_scan(0, Complex64::new(2.0, 0.0), 50),
            Err(SeriesError::ScanTooShort { need: MIN_SCAN_TERMS, got: 50 })
        ));
    }
}
