use num_complex::Complex64;
use serde::Serialize;

/// Potential entering the radial mode equation
///
///   (1 - rho^2) f'' + ((d-1)/rho - 2(lambda+3) rho) f'
///     - [ (lambda+2)(lambda+3) + l(l+d-2)/rho^2 - V(rho) ] f = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PotentialTag {
    /// V = 2 U(rho), twice the stationary blowup profile.
    UStar,
    /// V = 12, the linearization around the constant-in-space blowup value 6.
    ConstantTwelve,
    /// V = 0, the free equation.
    Free,
}

impl std::fmt::Display for PotentialTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PotentialTag::UStar => write!(f, "u-star"),
            PotentialTag::ConstantTwelve => write!(f, "constant-12"),
            PotentialTag::Free => write!(f, "free"),
        }
    }
}

/// One spectral sample of the mode family: dimension, angular degree,
/// spectral value, and potential.
///
/// Scans keep re(lambda) >= -1/2; below that line the construction changes
/// character and nothing is claimed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub d: u32,
    pub ell: u32,
    pub lambda: Complex64,
    pub potential: PotentialTag,
}

impl SpectralPoint {
    pub fn new(d: u32, ell: u32, lambda: Complex64, potential: PotentialTag) -> Self {
        SpectralPoint { d, ell, lambda, potential }
    }

    /// Shorthand for the primary case: the u-star potential.
    pub fn u_star(d: u32, ell: u32, lambda: Complex64) -> Self {
        Self::new(d, ell, lambda, PotentialTag::UStar)
    }

    pub fn conj(&self) -> Self {
        SpectralPoint { lambda: self.lambda.conj(), ..*self }
    }
}
