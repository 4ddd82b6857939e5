use thiserror::Error;

/// Which expansion point a series diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesSide {
    AtZero,
    AtOne,
}

impl std::fmt::Display for SeriesSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeriesSide::AtZero => write!(f, "x = 0"),
            SeriesSide::AtOne => write!(f, "x = 1"),
        }
    }
}

#[derive(Debug, Error)]
pub enum ModeScanError {
    #[error("dimension d = {d} is not supported here (need {need})")]
    UnsupportedDimension { d: u32, need: &'static str },

    #[error("profile constants unavailable: {0}")]
    Profile(#[from] profiles::ProfileError),

    #[error(
        "scan region [{re_min}, {re_max}] x [{im_min}, {im_max}] leaves the certified window \
         (need re >= -0.4, |corner| <= 30, nonempty extent)"
    )]
    InvalidRegion { re_min: f64, re_max: f64, im_min: f64, im_max: f64 },

    #[error("spectral point re = {re} lies left of the indicator window (re >= {min})")]
    PointOutsideWindow { re: f64, min: f64 },

    #[error("half-plane edge sigma = {sigma} below -1/2; the spectrum is only located there")]
    SigmaBelowHalf { sigma: f64 },

    #[error("grid needs at least {need} nodes per axis, got {nx} x {ny}")]
    GridTooSmall { nx: usize, ny: usize, need: usize },

    #[error(
        "series at {side} not converged at the matching point: tail ratio {tail:.3e} at \
         order {order} (cap {cap})"
    )]
    TruncationTail { side: SeriesSide, order: usize, tail: f64, cap: usize },

    #[error(
        "grid too coarse: cell ({i}, {j}) carries winding {winding}; halve the grid spacing"
    )]
    CellWindingTooLarge { i: usize, j: usize, winding: i64 },

    #[error(
        "grid too coarse: boundary winding {expected} but {found} root multiplicities located; \
         halve the grid spacing"
    )]
    WindingMismatch { expected: i64, found: i64 },

    #[error("Newton refinement from seed ({re}, {im}) did not settle; halve the grid spacing")]
    NewtonStalled { re: f64, im: f64 },

    #[error("uncleared indicial resonance at series order {order}; point outside the cleared window")]
    UnclearedResonance { order: usize },
}

impl ModeScanError {
    /// True for failures a caller can cure by refining the grid (the
    /// argument-principle bookkeeping found more structure than one cell can
    /// hold).
    pub fn is_refinement_request(&self) -> bool {
        matches!(
            self,
            ModeScanError::CellWindingTooLarge { .. }
                | ModeScanError::WindingMismatch { .. }
                | ModeScanError::NewtonStalled { .. }
        )
    }
}
