//! Disk automorphisms, the pseudo-hyperbolic bracket and Apollonius disks.
//!
//! Everything here is a pure function of its arguments. The guarded
//! operations reject points outside the closed unit disk; the `*_raw`
//! variants evaluate the same algebraic formulas anywhere in the plane and
//! are what the chain reflection checks use at `1/conj(z)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `|1 - conj(w) z|` below this is treated as `z conj(w) = 1`.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Default width of the band `1 - eps <= |w| <= 1 + eps` treated as the unit circle.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;

/// Default minimum pseudo-hyperbolic separation between interpolation nodes.
pub const DEFAULT_SEPARATION_TOL: f64 = 1e-8;

/// Classification tolerances shared by the table builder and the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub boundary: f64,
    pub separation: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            boundary: DEFAULT_BOUNDARY_TOL,
            separation: DEFAULT_SEPARATION_TOL,
        }
    }
}

impl Tolerances {
    pub fn is_boundary(&self, w: Complex64) -> bool {
        (w.norm() - 1.0).abs() <= self.boundary
    }

    pub fn is_interior(&self, w: Complex64) -> bool {
        w.norm() < 1.0 - self.boundary
    }
}

/// A complex number or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtendedComplex {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedComplex::Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match *self {
            ExtendedComplex::Finite(v) => Some(v),
            ExtendedComplex::Infinity => None,
        }
    }

    /// Modulus, `+inf` for the point at infinity.
    pub fn norm(&self) -> f64 {
        match self {
            ExtendedComplex::Finite(v) => v.norm(),
            ExtendedComplex::Infinity => f64::INFINITY,
        }
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(v: Complex64) -> Self {
        ExtendedComplex::Finite(v)
    }
}

/// Closed disk `{ w : |w - center| <= radius }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedDisk {
    pub center: Complex64,
    pub radius: f64,
}

impl ClosedDisk {
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::Domain(format!("disk radius must be finite and >= 0, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    /// Signed distance from `w` to the circle; positive outside.
    pub fn overhang(&self, w: Complex64) -> f64 {
        (w - self.center).norm() - self.radius
    }

    pub fn contains(&self, w: Complex64, tol: f64) -> bool {
        self.overhang(w) <= tol
    }
}

fn check_closed_disk(name: &str, z: Complex64) -> Result<()> {
    if z.norm() > 1.0 + DEFAULT_BOUNDARY_TOL || !z.is_finite() {
        return Err(Error::Domain(format!("{name} = {z} lies outside the closed unit disk")));
    }
    Ok(())
}

fn check_open_disk(name: &str, z: Complex64) -> Result<()> {
    if !(z.norm() < 1.0) {
        return Err(Error::Domain(format!("{name} = {z} lies outside the open unit disk")));
    }
    Ok(())
}

/// `T_a(z) = (z + a) / (1 + conj(a) z)` without domain checks.
#[inline]
pub fn mobius_raw(a: Complex64, z: Complex64) -> Complex64 {
    (z + a) / (Complex64::new(1.0, 0.0) + a.conj() * z)
}

/// Derivative of `z -> T_a(z)`.
#[inline]
pub fn mobius_derivative(a: Complex64, z: Complex64) -> Complex64 {
    let d = Complex64::new(1.0, 0.0) + a.conj() * z;
    Complex64::new(1.0 - a.norm_sqr(), 0.0) / (d * d)
}

/// The disk automorphism `T_a`, for `|a| < 1` and `|z| <= 1`.
pub fn mobius_transfer(a: Complex64, z: Complex64) -> Result<Complex64> {
    check_open_disk("a", a)?;
    check_closed_disk("z", z)?;
    Ok(mobius_raw(a, z))
}

/// `[z, w]` evaluated anywhere in the plane; infinity when `z conj(w) = 1`.
pub fn bracket_raw(z: Complex64, w: Complex64) -> ExtendedComplex {
    let den = Complex64::new(1.0, 0.0) - w.conj() * z;
    if den.norm() < DEGENERACY_TOL {
        ExtendedComplex::Infinity
    } else {
        ExtendedComplex::Finite((z - w) / den)
    }
}

/// Pseudo-hyperbolic difference `[z, w] = (z - w) / (1 - conj(w) z)` on the
/// closed bidisk.
///
/// The bare bracket of two equal unimodular points is infinite; the
/// difference table overrides that case to zero.
pub fn bracket(z: Complex64, w: Complex64) -> Result<ExtendedComplex> {
    check_closed_disk("z", z)?;
    check_closed_disk("w", w)?;
    Ok(bracket_raw(z, w))
}

/// `|[z, w]|` for points of the open disk.
pub fn pseudo_hyperbolic_distance(z: Complex64, w: Complex64) -> Result<f64> {
    check_open_disk("z", z)?;
    check_open_disk("w", w)?;
    // 1 - conj(w) z cannot vanish inside the open disk.
    Ok(bracket_raw(z, w).norm())
}

/// The disk `{ λ : |λ - p| <= k |λ - q| }` for `0 <= k < 1`.
///
/// For `k > 1` the same formulas give the closure of the complementary
/// region's boundary circle; callers in this crate only use `k < 1`.
pub fn apollonius_disk(p: Complex64, q: Complex64, k: f64) -> Result<ClosedDisk> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(Error::Domain(format!("ratio k must be finite and >= 0, got {k}")));
    }
    let k2 = k * k;
    let gap = 1.0 - k2;
    if gap.abs() < DEGENERACY_TOL {
        return Err(Error::Degenerate(format!("k = {k} is too close to 1")));
    }
    let center = (p - q * k2) / gap;
    let radius = k * (p - q).norm() / gap.abs();
    ClosedDisk::new(center, radius)
}
