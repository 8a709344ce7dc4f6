//! The five symmetry types, their one-level densities `W_G` and the weighted
//! `L²(W_G)` inner product.

use crate::error::{Error, Result};
use crate::numerics::{sinc_pi_real, QuadratureConfig};
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetryGroup {
    U,
    Sp,
    O,
    SoEven,
    SoOdd,
}

impl SymmetryGroup {
    pub const ALL: [SymmetryGroup; 5] = [Self::U, Self::Sp, Self::O, Self::SoEven, Self::SoOdd];

    /// Lowercase command-line name.
    pub fn cli_name(self) -> &'static str {
        match self {
            Self::U => "u",
            Self::Sp => "sp",
            Self::O => "o",
            Self::SoEven => "so-even",
            Self::SoOdd => "so-odd",
        }
    }

    /// The ♯-map: O goes to U and SO(odd) to Sp, the rest are fixed.
    pub fn sharp(self) -> Self {
        match self {
            Self::O => Self::U,
            Self::SoOdd => Self::Sp,
            g => g,
        }
    }

    /// Coefficient of the Dirac mass at 0 in `W_G`.
    pub fn atom_mass(self) -> f64 {
        match self {
            Self::O => 0.5,
            Self::SoOdd => 1.0,
            _ => 0.0,
        }
    }

    /// Absolutely continuous part of `W_G` at `x`.
    pub fn density_ac(self, x: f64) -> f64 {
        match self {
            Self::U | Self::O => 1.0,
            Self::Sp | Self::SoOdd => 1.0 - sinc_pi_real(2.0 * x),
            Self::SoEven => 1.0 + sinc_pi_real(2.0 * x),
        }
    }

    /// Absolutely continuous part of the Fourier transform of `W_G` at `y`.
    /// The transform always carries an additional unit mass at 0.
    pub fn fourier_ac(self, y: f64) -> f64 {
        let window = if y.abs() <= 1.0 { 0.5 } else { 0.0 };
        match self {
            Self::U => 0.0,
            Self::Sp => -window,
            Self::O => 0.5,
            Self::SoEven => window,
            Self::SoOdd => 1.0 - window,
        }
    }

    pub fn density(self) -> Density {
        Density { group: self }
    }

    pub fn fourier_density(self) -> FourierDensity {
        FourierDensity { group: self }
    }
}

impl fmt::Display for SymmetryGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::U => "U",
            Self::Sp => "Sp",
            Self::O => "O",
            Self::SoEven => "SO(even)",
            Self::SoOdd => "SO(odd)",
        };
        f.write_str(name)
    }
}

impl FromStr for SymmetryGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|g| g.cli_name() == lower || g.to_string().to_ascii_lowercase() == lower)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown symmetry group '{s}' (expected one of u, sp, o, so-even, so-odd)"
                ))
            })
    }
}

pub fn density_ac(group: SymmetryGroup, x: f64) -> f64 {
    group.density_ac(x)
}

pub fn sharp_group(group: SymmetryGroup) -> SymmetryGroup {
    group.sharp()
}

/// `W_G` as an absolutely continuous part plus an atom at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Density {
    pub group: SymmetryGroup,
}

impl Density {
    pub fn ac_part(&self, x: f64) -> f64 {
        self.group.density_ac(x)
    }

    pub fn atom_mass(&self) -> f64 {
        self.group.atom_mass()
    }
}

/// Fourier transform of `W_G`: a unit atom at 0 plus a piecewise constant part
/// with jumps only at ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourierDensity {
    pub group: SymmetryGroup,
}

impl FourierDensity {
    pub fn ac_part(&self, y: f64) -> f64 {
        self.group.fourier_ac(y)
    }

    pub fn atom_mass(&self) -> f64 {
        1.0
    }
}

/// A symmetry type together with the bandwidth `Δ`, fixing the space `ℋ_{G,πΔ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpace {
    pub group: SymmetryGroup,
    pub delta: f64,
}

impl KernelSpace {
    pub fn new(group: SymmetryGroup, delta: f64) -> Result<Self> {
        if !delta.is_finite() {
            return Err(Error::NonFinite(format!("delta = {delta}")));
        }
        if delta <= 0.0 {
            return Err(Error::InvalidArgument(format!("delta must be positive, got {delta}")));
        }
        Ok(Self { group, delta })
    }

    /// Closed forms exist for U and O at every bandwidth, and for the other
    /// three types when `Δ ≤ 2`.
    pub fn closed_form_available(&self) -> bool {
        matches!(self.group, SymmetryGroup::U | SymmetryGroup::O) || self.delta <= 2.0
    }

    pub fn sharp(&self) -> Self {
        Self { group: self.group.sharp(), delta: self.delta }
    }
}

/// Default truncation for improper integrals over the real line.
pub const DEFAULT_TRUNCATION: f64 = 200.0;

/// `∫_{-X}^{X} F conj(H) W_G dx`, with the atom of `W_G` added exactly.
pub fn weighted_inner<F, H>(
    f: F,
    h: H,
    group: SymmetryGroup,
    truncation: f64,
    config: &QuadratureConfig,
) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
    H: Fn(f64) -> Complex64,
{
    if !(truncation > 0.0) {
        return Err(Error::InvalidArgument(format!("truncation must be positive, got {truncation}")));
    }
    let mut bad = None;
    let integral: Complex64 = config.integrate(-truncation, truncation, &[0.0], |x| {
        let v = f(x) * h(x).conj() * group.density_ac(x);
        if !v.is_finite() && bad.is_none() {
            bad = Some(x);
        }
        v
    })?;
    if let Some(x) = bad {
        return Err(Error::NonFinite(format!("integrand at x = {x}")));
    }
    let atom = group.atom_mass();
    let atom_term = if atom != 0.0 { f(0.0) * h(0.0).conj() * atom } else { Complex64::new(0.0, 0.0) };
    if !atom_term.is_finite() {
        return Err(Error::NonFinite("integrand at x = 0".into()));
    }
    Ok(integral + atom_term)
}
