use std::ops::{Add, Div, Mul, Sub};

use exact_core::{Q, UniPoly};
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::SeriesError;
use crate::quasi::{quasi_ratlam, quasi_solution, quasi_solution_f64, QuasiKind};
use crate::ratfunc::RatLam;
use crate::recurrence::{
    recurrence_coeffs, recurrence_coeffs_at, recurrence_coeffs_f64, FrobeniusForm,
};

/// Symbolic coefficients gain two lambda-degrees per index; this cap keeps
/// the closed-form and certificate work cheap.
pub const SYMBOLIC_TERM_CAP: usize = 12;
/// Exact rational iteration is capped to bound coefficient bit growth.
pub const EXACT_TERM_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LedgerMode {
    ExactSymbolicInLambda,
    ExactAtRationalLambda,
    FloatAtComplexLambda,
}

/// Mode-independent view of the derived sequences.
///
/// Index ranges: `a` holds a_0..=a_N; `r`, `delta`, `epsilon`, `c` hold
/// indices 0..N; `quasi` holds 0..=N. Entries are `None` where a division is
/// undefined (a vanishing coefficient below a ratio, or a quasi-solution zero
/// at the evaluated spectral value).
#[derive(Debug, Clone)]
pub struct ScalarEntries<T> {
    pub a: Vec<T>,
    pub r: Vec<Option<T>>,
    pub quasi: Vec<T>,
    pub delta: Vec<Option<T>>,
    pub epsilon: Vec<Option<T>>,
    pub c: Vec<Option<T>>,
}

/// Entries with lambda kept as a polynomial variable. Ratios are reduced
/// rational functions, so the eigenvalue factor common to numerator and
/// denominator is already cancelled in `r` and `delta`.
#[derive(Debug, Clone)]
pub struct SymbolicEntries {
    pub a: Vec<UniPoly>,
    /// a_n divided by the removed factor for n >= 2 (equal to a_n when there
    /// is nothing to remove).
    pub reduced: Vec<UniPoly>,
    pub r: Vec<Option<RatLam>>,
    pub quasi: Vec<RatLam>,
    pub delta: Vec<Option<RatLam>>,
    pub epsilon: Vec<RatLam>,
    pub c: Vec<RatLam>,
}

#[derive(Debug, Clone)]
pub enum LedgerEntries {
    Symbolic(SymbolicEntries),
    Exact(ScalarEntries<Q>),
    Float(ScalarEntries<Complex64>),
}

#[derive(Debug, Clone)]
pub struct CoefficientLedger {
    pub ell: u32,
    pub form: FrobeniusForm,
    /// True when the chart is not the native one for this ell; the quasi
    /// sequences are left empty in that case.
    pub exploratory: bool,
    pub mode: LedgerMode,
    /// Polynomial factor dividing every a_n with n >= 2 in the native low
    /// chart, an artifact of the two polynomial eigensolutions. None in the
    /// high chart.
    pub removed_factor: Option<UniPoly>,
    pub entries: LedgerEntries,
}

impl CoefficientLedger {
    /// Number of series terms beyond a_0.
    pub fn order(&self) -> usize {
        match &self.entries {
            LedgerEntries::Symbolic(e) => e.a.len() - 1,
            LedgerEntries::Exact(e) => e.a.len() - 1,
            LedgerEntries::Float(e) => e.a.len() - 1,
        }
    }

    pub fn symbolic(&self) -> Option<&SymbolicEntries> {
        match &self.entries {
            LedgerEntries::Symbolic(e) => Some(e),
            _ => None,
        }
    }

    pub fn exact(&self) -> Option<&ScalarEntries<Q>> {
        match &self.entries {
            LedgerEntries::Exact(e) => Some(e),
            _ => None,
        }
    }

    pub fn float(&self) -> Option<&ScalarEntries<Complex64>> {
        match &self.entries {
            LedgerEntries::Float(e) => Some(e),
            _ => None,
        }
    }
}

/// The eigenvalue factor cancelled from the low-chart coefficients:
/// (lambda - 3)(lambda - 1) for ell = 0 and lambda (lambda - 1) for ell = 1.
pub fn removed_factor(form: FrobeniusForm, ell: u32) -> Option<UniPoly> {
    match (form, ell) {
        (FrobeniusForm::LowEll, 0) => Some(UniPoly::from_i64(&[3, -4, 1])),
        (FrobeniusForm::LowEll, 1) => Some(UniPoly::from_i64(&[0, -1, 1])),
        _ => None,
    }
}

fn build_scalar_entries<T>(
    n_max: usize,
    coeff: &dyn Fn(i64) -> (T, T),
    quasi: Option<&dyn Fn(i64) -> T>,
) -> ScalarEntries<T>
where
    T: Clone + Zero + One + PartialEq,
    for<'a> &'a T: Add<&'a T, Output = T>
        + Sub<&'a T, Output = T>
        + Mul<&'a T, Output = T>
        + Div<&'a T, Output = T>,
{
    let mut a: Vec<T> = Vec::with_capacity(n_max + 1);
    a.push(T::one());
    // a_1 = A_{-1} a_0 + B_{-1} a_{-1} = A_{-1}.
    a.push(coeff(-1).0);
    for n in 0..=(n_max as i64 - 2) {
        let (an, bn) = coeff(n);
        let next = &(&an * &a[(n + 1) as usize]) + &(&bn * &a[n as usize]);
        a.push(next);
    }

    let r: Vec<Option<T>> = (0..n_max)
        .map(|n| {
            if a[n].is_zero() {
                None
            } else {
                Some(&a[n + 1] / &a[n])
            }
        })
        .collect();

    let (quasi_vals, delta, epsilon, c) = match quasi {
        None => (Vec::new(), Vec::new(), Vec::new(), Vec::new()),
        Some(qf) => {
            let quasi_vals: Vec<T> = (0..=n_max as i64).map(qf).collect();
            let delta: Vec<Option<T>> = (0..n_max)
                .map(|n| match (&r[n], quasi_vals[n].is_zero()) {
                    (Some(rn), false) => Some(&(rn / &quasi_vals[n]) - &T::one()),
                    _ => None,
                })
                .collect();
            let mut epsilon = Vec::with_capacity(n_max);
            let mut c = Vec::with_capacity(n_max);
            for n in 0..n_max {
                let prod = &quasi_vals[n] * &quasi_vals[n + 1];
                if prod.is_zero() {
                    epsilon.push(None);
                    c.push(None);
                } else {
                    let (an, bn) = coeff(n as i64);
                    epsilon.push(Some(&(&(&(&an * &quasi_vals[n]) + &bn) / &prod) - &T::one()));
                    c.push(Some(&bn / &prod));
                }
            }
            (quasi_vals, delta, epsilon, c)
        }
    };

    ScalarEntries { a, r, quasi: quasi_vals, delta, epsilon, c }
}

fn check_len(n_max: usize) -> Result<(), SeriesError> {
    if n_max < 3 {
        Err(SeriesError::LedgerTooShort(n_max))
    } else {
        Ok(())
    }
}

fn assemble(
    form: FrobeniusForm,
    ell: u32,
    mode: LedgerMode,
    entries: LedgerEntries,
) -> CoefficientLedger {
    CoefficientLedger {
        ell,
        form,
        exploratory: !form.is_native(ell),
        mode,
        removed_factor: removed_factor(form, ell),
        entries,
    }
}

/// Exact ledger at a rational spectral value, in the chart native to ell.
pub fn frobenius_coeffs(ell: u32, lambda: &Q, n_max: usize) -> Result<CoefficientLedger, SeriesError> {
    frobenius_coeffs_in_form(FrobeniusForm::native(ell), ell, lambda, n_max)
}

pub fn frobenius_coeffs_in_form(
    form: FrobeniusForm,
    ell: u32,
    lambda: &Q,
    n_max: usize,
) -> Result<CoefficientLedger, SeriesError> {
    check_len(n_max)?;
    let capped = n_max.min(EXACT_TERM_CAP);
    let coeff = |n: i64| recurrence_coeffs_at(form, ell, n, lambda).expect("index >= -1");
    let kind = QuasiKind::of(form, ell);
    let quasi_fn =
        |n: i64| quasi_solution(ell, n, lambda).expect("index >= 0");
    let entries = build_scalar_entries::<Q>(
        capped,
        &coeff,
        kind.map(|_| &quasi_fn as &dyn Fn(i64) -> Q),
    );
    let ledger = assemble(form, ell, LedgerMode::ExactAtRationalLambda, LedgerEntries::Exact(entries));
    if n_max > EXACT_TERM_CAP {
        return Err(SeriesError::ExactBudget { limit: EXACT_TERM_CAP, partial: Box::new(ledger) });
    }
    Ok(ledger)
}

/// Floating-point ledger at a complex spectral value, in the chart native to
/// ell.
pub fn frobenius_coeffs_f64(
    ell: u32,
    lambda: Complex64,
    n_max: usize,
) -> Result<CoefficientLedger, SeriesError> {
    frobenius_coeffs_f64_in_form(FrobeniusForm::native(ell), ell, lambda, n_max)
}

pub fn frobenius_coeffs_f64_in_form(
    form: FrobeniusForm,
    ell: u32,
    lambda: Complex64,
    n_max: usize,
) -> Result<CoefficientLedger, SeriesError> {
    check_len(n_max)?;
    let coeff = |n: i64| recurrence_coeffs_f64(form, ell, n, lambda).expect("index >= -1");
    let kind = QuasiKind::of(form, ell);
    let quasi_fn = |n: i64| quasi_solution_f64(ell, n, lambda).expect("index >= 0");
    let entries = build_scalar_entries::<Complex64>(
        n_max,
        &coeff,
        kind.map(|_| &quasi_fn as &dyn Fn(i64) -> Complex64),
    );
    Ok(assemble(form, ell, LedgerMode::FloatAtComplexLambda, LedgerEntries::Float(entries)))
}

/// Ledger with lambda kept symbolic, in the chart native to ell.
pub fn frobenius_coeffs_symbolic(ell: u32, n_max: usize) -> Result<CoefficientLedger, SeriesError> {
    frobenius_coeffs_symbolic_in_form(FrobeniusForm::native(ell), ell, n_max)
}

pub fn frobenius_coeffs_symbolic_in_form(
    form: FrobeniusForm,
    ell: u32,
    n_max: usize,
) -> Result<CoefficientLedger, SeriesError> {
    check_len(n_max)?;
    let capped = n_max.min(SYMBOLIC_TERM_CAP);
    let coeff = |n: i64| recurrence_coeffs(form, ell, n).expect("index >= -1");
    let kind = QuasiKind::of(form, ell);
    let quasi_fn = |n: i64| quasi_ratlam(kind.expect("native pairing"), n, ell);
    let core = build_scalar_entries::<RatLam>(
        capped,
        &coeff,
        kind.map(|_| &quasi_fn as &dyn Fn(i64) -> RatLam),
    );

    let a: Vec<UniPoly> = core
        .a
        .iter()
        .map(|f| {
            debug_assert!(f.is_polynomial(), "series coefficients are polynomials in lambda");
            f.num().clone()
        })
        .collect();
    let factor = removed_factor(form, ell);
    let reduced: Vec<UniPoly> = a
        .iter()
        .enumerate()
        .map(|(n, an)| match (&factor, n >= 2) {
            (Some(fac), true) => {
                let (quot, rem) = an.divrem(fac).expect("factor is nonzero");
                assert!(rem.is_zero(), "the eigenvalue factor divides a_{n}");
                quot
            }
            _ => an.clone(),
        })
        .collect();
    let epsilon: Vec<RatLam> = core
        .epsilon
        .into_iter()
        .map(|e| e.expect("quasi denominators never vanish identically"))
        .collect();
    let c: Vec<RatLam> = core
        .c
        .into_iter()
        .map(|e| e.expect("quasi denominators never vanish identically"))
        .collect();

    let entries = SymbolicEntries {
        a,
        reduced,
        r: core.r,
        quasi: core.quasi,
        delta: core.delta,
        epsilon,
        c,
    };
    let ledger = assemble(
        form,
        ell,
        LedgerMode::ExactSymbolicInLambda,
        LedgerEntries::Symbolic(entries),
    );
    if n_max > SYMBOLIC_TERM_CAP {
        return Err(SeriesError::SymbolicBudget {
            limit: SYMBOLIC_TERM_CAP,
            partial: Box::new(ledger),
        });
    }
    Ok(ledger)
}
