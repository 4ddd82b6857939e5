//! Rectangle scans of the connection indicator: grid evaluation, cell
//! winding detection, Newton refinement, and argument-principle bookkeeping.
//!
//! Interior edges cancel when cell windings are summed, so the total equals
//! the winding along the rectangle boundary, i.e. the number of indicator
//! zeros inside (with multiplicity). Every located root must reproduce that
//! count, otherwise the scan asks for a finer grid instead of guessing.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::ModeScanError;
use crate::indicator::{indicator_from, initial_order, IndicatorSample, WINDOW_RE_MIN};
use crate::types::{PotentialTag, SpectralPoint};

/// Rectangle in the spectral plane.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Region {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Region {
    pub fn new(re: (f64, f64), im: (f64, f64)) -> Self {
        Region { re_min: re.0, re_max: re.1, im_min: im.0, im_max: im.1 }
    }

    /// Scans stay right of re = -0.4 and inside |lambda| <= 30, the window
    /// on which the unstable spectrum is confined and the resonance clearing
    /// is complete.
    pub fn validate(&self) -> Result<(), ModeScanError> {
        let corners_ok = [self.re_min, self.re_max]
            .iter()
            .all(|&re| {
                [self.im_min, self.im_max]
                    .iter()
                    .all(|&im| (re * re + im * im).sqrt() <= 30.0 + 1e-12)
            });
        if !(self.re_min >= -0.4 - 1e-12
            && self.re_min < self.re_max
            && self.im_min < self.im_max
            && corners_ok)
        {
            return Err(ModeScanError::InvalidRegion {
                re_min: self.re_min,
                re_max: self.re_max,
                im_min: self.im_min,
                im_max: self.im_max,
            });
        }
        Ok(())
    }

    fn contains_with_margin(&self, z: Complex64, margin: f64) -> bool {
        z.re >= self.re_min - margin
            && z.re <= self.re_max + margin
            && z.im >= self.im_min - margin
            && z.im <= self.im_max + margin
    }
}

/// Grid nodes per axis.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(nx: usize, ny: usize) -> Self {
        GridSpec { nx, ny }
    }
}

/// A refined indicator zero.
#[derive(Debug, Clone, Serialize)]
pub struct LocatedRoot {
    pub re: f64,
    pub im: f64,
    /// Winding of the raw indicator on a small circle around the root: the
    /// order of the indicator zero (not an operator multiplicity).
    pub multiplicity: u32,
    /// |scaled indicator| at the refined position.
    pub indicator: f64,
    pub newton_steps: u32,
}

impl LocatedRoot {
    pub fn lambda(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub d: u32,
    pub ell: u32,
    pub potential: PotentialTag,
    pub region: Region,
    pub grid: GridSpec,
    /// Expansion order used for the grid sweep.
    pub order: usize,
    /// |scaled indicator| at the grid nodes, row-major: index j * nx + i for
    /// node (re_i, im_j).
    pub magnitudes: Vec<f64>,
    pub roots: Vec<LocatedRoot>,
    /// Boundary winding of the region: total zero count with multiplicity.
    pub boundary_winding: i64,
    /// Set when the configuration has no independent verification (the
    /// d != 9 profile potential).
    pub exploratory: bool,
}

impl ScanResult {
    /// Smallest grid magnitude further than `radius` from every located
    /// root: empirical evidence for the spectral gap around the found set.
    pub fn indicator_floor(&self, radius: f64) -> f64 {
        let mut floor = f64::INFINITY;
        for j in 0..self.grid.ny {
            for i in 0..self.grid.nx {
                let z = self.node(i, j);
                if self
                    .roots
                    .iter()
                    .all(|r| (z - r.lambda()).norm() > radius)
                {
                    floor = floor.min(self.magnitudes[j * self.grid.nx + i]);
                }
            }
        }
        floor
    }

    pub fn node(&self, i: usize, j: usize) -> Complex64 {
        let dx = (self.region.re_max - self.region.re_min) / (self.grid.nx - 1) as f64;
        let dy = (self.region.im_max - self.region.im_min) / (self.grid.ny - 1) as f64;
        Complex64::new(
            self.region.re_min + i as f64 * dx,
            self.region.im_min + j as f64 * dy,
        )
    }
}

/// Sum of wrapped phase increments along the closed path of `values`,
/// divided by 2 pi; None when a value sits on (numerical) zero.
fn loop_winding(values: &[Complex64]) -> Option<i64> {
    let mut total = 0.0f64;
    for k in 0..values.len() {
        let a = values[k];
        let b = values[(k + 1) % values.len()];
        if a.norm() < 1e-280 || b.norm() < 1e-280 {
            return None;
        }
        let mut d = b.arg() - a.arg();
        while d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        while d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        total += d;
    }
    Some((total / (2.0 * std::f64::consts::PI)).round() as i64)
}

struct GridEval {
    values: Vec<Complex64>,
    order: usize,
}

fn eval_grid(
    d: u32,
    ell: u32,
    potential: PotentialTag,
    region: &Region,
    grid: &GridSpec,
    order_floor: usize,
) -> Result<GridEval, ModeScanError> {
    let nx = grid.nx;
    let ny = grid.ny;
    let dx = (region.re_max - region.re_min) / (nx - 1) as f64;
    let dy = (region.im_max - region.im_min) / (ny - 1) as f64;

    // One order for the whole sweep, from the worst corner.
    let corner_order = [region.re_min, region.re_max]
        .iter()
        .flat_map(|&re| {
            [region.im_min, region.im_max].map(|im| {
                initial_order(&SpectralPoint::new(d, ell, Complex64::new(re, im), potential))
            })
        })
        .max()
        .unwrap_or(0)
        .max(order_floor);

    let values = (0..nx * ny)
        .into_par_iter()
        .map(|idx| {
            let (j, i) = (idx / nx, idx % nx);
            let lambda =
                Complex64::new(region.re_min + i as f64 * dx, region.im_min + j as f64 * dy);
            let point = SpectralPoint::new(d, ell, lambda, potential);
            indicator_from(&point, corner_order).map(|s| s.scaled)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GridEval { values, order: corner_order })
}

fn newton_refine(
    d: u32,
    ell: u32,
    potential: PotentialTag,
    seed: Complex64,
    region: &Region,
) -> Result<(Complex64, u32, IndicatorSample), ModeScanError> {
    let stalled = || ModeScanError::NewtonStalled { re: seed.re, im: seed.im };
    let sample = |z: Complex64| -> Result<IndicatorSample, ModeScanError> {
        let point = SpectralPoint::new(d, ell, z, potential);
        indicator_from(&point, initial_order(&point))
    };
    let mut z = seed;
    for step in 1..=60u32 {
        let f = sample(z)?.raw;
        let h = 1e-6 * (1.0 + z.norm());
        let fp = (sample(z + h)?.raw - sample(z - h)?.raw) / (2.0 * h);
        if fp.norm() == 0.0 {
            return Err(stalled());
        }
        let delta = f / fp;
        z -= delta;
        // Clamp wandering onto/past the window edge: the indicator is only
        // defined right of it, and roots of interest lie inside the region.
        if z.re < WINDOW_RE_MIN + 1e-3 {
            z = Complex64::new(WINDOW_RE_MIN + 1e-3, z.im);
        }
        if !z.re.is_finite() || !z.im.is_finite() || !region.contains_with_margin(z, 0.75) {
            return Err(stalled());
        }
        if delta.norm() <= 1e-12 * (1.0 + z.norm()) {
            return Ok((z, step, sample(z)?));
        }
    }
    Err(stalled())
}

/// Winding of the raw indicator around `center` on a radius-`r` circle.
fn circle_winding(
    d: u32,
    ell: u32,
    potential: PotentialTag,
    center: Complex64,
    r: f64,
) -> Result<Option<i64>, ModeScanError> {
    const SAMPLES: usize = 48;
    let mut vals = Vec::with_capacity(SAMPLES);
    for k in 0..SAMPLES {
        let th = 2.0 * std::f64::consts::PI * k as f64 / SAMPLES as f64;
        let z = center + r * Complex64::new(th.cos(), th.sin());
        let z = if z.re < WINDOW_RE_MIN { Complex64::new(WINDOW_RE_MIN, z.im) } else { z };
        let point = SpectralPoint::new(d, ell, z, potential);
        vals.push(indicator_from(&point, initial_order(&point))?.raw);
    }
    Ok(loop_winding(&vals))
}

/// Scan the u-star potential linearization (the primary configuration).
pub fn eigenvalue_scan(
    d: u32,
    ell: u32,
    region: Region,
    grid: GridSpec,
) -> Result<ScanResult, ModeScanError> {
    scan_potential(d, ell, PotentialTag::UStar, region, grid, None)
}

/// Full scan driver; `order_floor` forces a minimum expansion order (used by
/// stability checks that rerun with doubled order).
pub fn scan_potential(
    d: u32,
    ell: u32,
    potential: PotentialTag,
    region: Region,
    grid: GridSpec,
    order_floor: Option<usize>,
) -> Result<ScanResult, ModeScanError> {
    region.validate()?;
    if grid.nx < 9 || grid.ny < 9 {
        return Err(ModeScanError::GridTooSmall { nx: grid.nx, ny: grid.ny, need: 9 });
    }

    let eval = eval_grid(d, ell, potential, &region, &grid, order_floor.unwrap_or(0))?;
    let (nx, ny) = (grid.nx, grid.ny);
    let node = |i: usize, j: usize| -> Complex64 {
        let dx = (region.re_max - region.re_min) / (nx - 1) as f64;
        let dy = (region.im_max - region.im_min) / (ny - 1) as f64;
        Complex64::new(region.re_min + i as f64 * dx, region.im_min + j as f64 * dy)
    };

    // Cell windings; their sum telescopes to the boundary winding.
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    let mut boundary_winding = 0i64;
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let quad = [
                eval.values[j * nx + i],
                eval.values[j * nx + i + 1],
                eval.values[(j + 1) * nx + i + 1],
                eval.values[(j + 1) * nx + i],
            ];
            match loop_winding(&quad) {
                Some(0) => {}
                Some(w) if w.abs() >= 2 => {
                    return Err(ModeScanError::CellWindingTooLarge { i, j, winding: w });
                }
                Some(w) => {
                    boundary_winding += w;
                    candidates.push((i, j));
                }
                // A node sits numerically on a zero: seed Newton here.
                None => {
                    boundary_winding += 1;
                    candidates.push((i, j));
                }
            }
        }
    }

    // Refine every candidate, then cluster.
    let mut refined: Vec<(Complex64, u32)> = Vec::new();
    for &(i, j) in &candidates {
        let seed = 0.25
            * (node(i, j) + node(i + 1, j) + node(i, j + 1) + node(i + 1, j + 1));
        let (z, steps, _) = newton_refine(d, ell, potential, seed, &region)?;
        refined.push((z, steps));
    }
    refined.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .expect("finite root positions")
    });

    let mut roots: Vec<LocatedRoot> = Vec::new();
    let mut located_count = 0i64;
    for (z, steps) in refined {
        if roots
            .iter()
            .any(|r| (z - r.lambda()).norm() < 1e-6 * (1.0 + z.norm()))
        {
            continue;
        }
        let r = 1e-4 * (1.0 + z.norm());
        let mult = circle_winding(d, ell, potential, z, r)?.unwrap_or(0);
        if mult <= 0 {
            // Spurious candidate; the count check below still guards it.
            continue;
        }
        let point = SpectralPoint::new(d, ell, z, potential);
        let sample = indicator_from(&point, initial_order(&point))?;
        let indicator = sample.scaled.norm();
        if indicator >= 1e-8 {
            continue;
        }
        located_count += mult;
        roots.push(LocatedRoot {
            re: z.re,
            im: z.im,
            multiplicity: mult as u32,
            indicator,
            newton_steps: steps,
        });
    }

    if located_count != boundary_winding {
        return Err(ModeScanError::WindingMismatch {
            expected: boundary_winding,
            found: located_count,
        });
    }

    Ok(ScanResult {
        d,
        ell,
        potential,
        region,
        grid,
        order: eval.order,
        magnitudes: eval.values.iter().map(|v| v.norm()).collect(),
        roots,
        boundary_winding,
        exploratory: potential == PotentialTag::UStar && d != 9,
    })
}

/// Canonical search windows for the unstable spectrum of the profile
/// linearization, per angular degree.
pub fn unstable_search_window(ell: u32) -> (Region, GridSpec) {
    match ell {
        0 => (Region::new((0.0, 4.0), (-2.0, 2.0)), GridSpec::new(96, 96)),
        1 => (Region::new((-0.25, 2.0), (-2.0, 2.0)), GridSpec::new(96, 96)),
        _ => (Region::new((0.0, 5.0), (-3.0, 3.0)), GridSpec::new(64, 64)),
    }
}
