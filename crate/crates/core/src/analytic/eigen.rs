use super::{branch_sqrt, Complex64 as C};
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Exponent `a = x + iy` and phase `φ` of the eigenfunction family
/// `e^{iφ}·G^a/√(z²-4)` of the linearized free central limit map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenParameter {
    pub x: f64,
    pub y: f64,
    pub phi: f64,
}

impl EigenParameter {
    pub fn new(x: f64, y: f64, phi: f64) -> Result<Self> {
        for (name, v) in [("x", x), ("y", y), ("phi", phi)] {
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!("{name} = {v} is not finite")));
            }
        }
        Ok(EigenParameter { x, y, phi })
    }

    /// `a = n`, `φ = 0`: the Chebyshev case.
    pub fn integer(n: u32) -> Self {
        EigenParameter {
            x: n as f64,
            y: 0.0,
            phi: 0.0,
        }
    }

    pub fn exponent(&self) -> C {
        C::new(self.x, self.y)
    }

    /// `x ≥ 1`, or `x ≥ -1` with `y = 0`.
    pub fn is_admissible(&self) -> bool {
        self.x >= 1.0 || (self.x >= -1.0 && self.y == 0.0)
    }

    /// Eigenvalue `2^{1-(a+1)/2}` of `ψ = e^{iφ}·G'·G^a`; the transform in
    /// [`eigen_cauchy_transform`] is `-e^{iφ}·G'·G^{a-1}`, so its eigenvalue
    /// is `2^{1-a/2}`.
    pub fn eigenvalue(&self) -> C {
        (C::new(2f64.ln(), 0.0) * (1.0 - self.exponent() / 2.0)).exp()
    }
}

/// `H(z) = e^{iφ}·w^a/√(z²-4)` with `w = G_χ(z) = (z - √(z²-4))/2` and the
/// principal power. For `a = n` this is the Cauchy transform of the signed
/// measure `(1/π)·T_n(t/2)/√(4-t²)·dt`, whose moments are `C(n+2k, k)`.
pub fn eigen_cauchy_transform(p: &EigenParameter, z: C) -> Result<C> {
    if !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("eigen Cauchy transform needs Im z > 0, got {z}")));
    }
    let s = branch_sqrt(z, 2.0, -2.0);
    let w = 2.0 / (z + s);
    let phase = C::from_polar(1.0, p.phi);
    Ok(phase * (p.exponent() * w.ln()).exp() / s)
}

/// Boundary values `-Im H(t + i0)`. On `(-2, 2)`, with `θ = arccos(t/2)`,
/// this is `e^{yθ}·cos(xθ - φ)/√(4-t²)`. For `t > 2`, with
/// `w = (t - √(t²-4))/2`, it is `-w^x·sin(y·ln w + φ)/√(t²-4)`; for `t < -2`
/// it is `|w|^x·e^{πy}·sin(y·ln|w| + φ - πx)/√(t²-4)`. Both tails vanish
/// for integer `a` with `φ = 0`.
pub fn eigen_density(p: &EigenParameter, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("t = {t} is not finite")));
    }
    if t.abs() == 2.0 {
        return Err(Error::Singularity(format!("eigen density is singular at t = {t}")));
    }
    let EigenParameter { x, y, phi } = *p;
    if t.abs() < 2.0 {
        let theta = (t / 2.0).acos();
        return Ok((y * theta).exp() * (x * theta - phi).cos() / (4.0 - t * t).sqrt());
    }
    let r = (t * t - 4.0).sqrt();
    let w = (t.abs() - r) / 2.0;
    let lw = w.ln();
    Ok(if t > 2.0 {
        -w.powf(x) * (y * lw + phi).sin() / r
    } else {
        w.powf(x) * (PI * y).exp() * (y * lw + phi - PI * x).sin() / r
    })
}

/// `|z·ψ(z)|` for `ψ(z) = e^{iφ}·z^a` at `z = r·e^{iθ}` for each radius,
/// `0 < θ < π`. Along a ray the values must tend to 0 as `r → 0` for `ψ` to be
/// an admissible perturbation.
pub fn necessary_condition_probe(p: &EigenParameter, theta: f64, radii: &[f64]) -> Result<Vec<f64>> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::InvalidArgument(format!("ray angle {theta} must lie in (0, π)")));
    }
    let phase = C::from_polar(1.0, p.phi);
    radii
        .iter()
        .map(|&r| {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::InvalidArgument(format!("radius {r} must be positive")));
            }
            let z = C::from_polar(r, theta);
            Ok((z * phase * (p.exponent() * z.ln()).exp()).norm())
        })
        .collect()
}
