use super::{branch_sqrt, Complex64 as C};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// A measure on the real line described well enough to evaluate its Cauchy
/// transform anywhere off the real axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum AnalyticMeasure {
    /// Density `2/(πr²)·√(r² - (t-c)²)` on `[c - r, c + r]`; variance `r²/4`.
    Semicircle { center: f64, radius: f64 },
    /// Density `s / (π((t-x₀)² + s²))`.
    #[serde(alias = "cauchy")]
    CauchyLaw { location: f64, scale: f64 },
    /// The signed density `(1/π)·T_n(t/2)/√(4-t²)` on `(-2, 2)`; total mass 0.
    ChebyshevEigen { n: u32 },
    /// Piecewise-linear density through `(grid[i], values[i])`, zero outside.
    DensityTable { grid: Vec<f64>, values: Vec<f64> },
    /// `Σ weights[i]·δ_{points[i]}`
    #[serde(alias = "atoms")]
    AtomMixture { points: Vec<f64>, weights: Vec<f64> },
    /// `Σ weight·measure`
    Mixture { components: Vec<MixtureComponent> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureComponent {
    pub weight: f64,
    pub measure: AnalyticMeasure,
}

fn finite(field: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::schema(field, "must be a finite number"))
    }
}

/// `∫_{t0}^{t1} p(t)/(z-t) dt` and its `z`-derivative for the linear `p` with
/// `p(t0) = v0`, `p(t1) = v1`. Far from the segment the closed form
/// `p(z)·log((z-t0)/(z-t1)) - slope·Δ` cancels badly, so the expansion in
/// `w = 1/(z-t1)` is used there.
fn segment_transform(z: C, t0: f64, t1: f64, v0: f64, v1: f64) -> (C, C) {
    let delta = t1 - t0;
    let slope = (v1 - v0) / delta;
    let w = 1.0 / (z - t1);
    if (delta * w).norm() < 0.25 {
        // With s = t - t1 ∈ [-Δ, 0]: ∫ (v1 + slope·s)·s^j ds =
        // -v1·(-Δ)^{j+1}/(j+1) - slope·(-Δ)^{j+2}/(j+2).
        let mut value = C::new(0.0, 0.0);
        let mut deriv = C::new(0.0, 0.0);
        let mut neg_delta_pow = -delta;
        let mut w_pow = w;
        for j in 0..60 {
            let jf = j as f64;
            let moment = -v1 * neg_delta_pow / (jf + 1.0) - slope * neg_delta_pow * -delta / (jf + 2.0);
            let term = moment * w_pow;
            value += term;
            deriv -= (jf + 1.0) * term * w;
            if term.norm() <= 1e-18 * value.norm() {
                break;
            }
            neg_delta_pow *= -delta;
            w_pow *= w;
        }
        return (value, deriv);
    }
    let p_at_z = v0 + slope * (z - t0);
    let log_ratio = (z - t0).ln() - (z - t1).ln();
    let value = p_at_z * log_ratio - slope * delta;
    let deriv = slope * log_ratio + p_at_z * (1.0 / (z - t0) - 1.0 / (z - t1));
    (value, deriv)
}

impl AnalyticMeasure {
    pub fn standard_semicircle() -> Self {
        AnalyticMeasure::Semicircle {
            center: 0.0,
            radius: 2.0,
        }
    }

    pub fn standard_cauchy() -> Self {
        AnalyticMeasure::CauchyLaw {
            location: 0.0,
            scale: 1.0,
        }
    }

    pub fn mixture(parts: impl IntoIterator<Item = (f64, AnalyticMeasure)>) -> Self {
        AnalyticMeasure::Mixture {
            components: parts
                .into_iter()
                .map(|(weight, measure)| MixtureComponent { weight, measure })
                .collect(),
        }
    }

    /// Checks the descriptor's parameters. Field paths in errors are relative
    /// to the descriptor object.
    pub fn validate(&self) -> Result<()> {
        match self {
            AnalyticMeasure::Semicircle { center, radius } => {
                finite("center", *center)?;
                finite("radius", *radius)?;
                if *radius <= 0.0 {
                    return Err(Error::schema("radius", "must be positive"));
                }
            }
            AnalyticMeasure::CauchyLaw { location, scale } => {
                finite("location", *location)?;
                finite("scale", *scale)?;
                if *scale <= 0.0 {
                    return Err(Error::schema("scale", "must be positive"));
                }
            }
            AnalyticMeasure::ChebyshevEigen { n } => {
                if *n == 0 {
                    return Err(Error::schema("n", "must be at least 1"));
                }
            }
            AnalyticMeasure::DensityTable { grid, values } => {
                if grid.len() < 2 {
                    return Err(Error::schema("grid", "needs at least two points"));
                }
                if values.len() != grid.len() {
                    return Err(Error::schema("values", "length must match grid"));
                }
                for (i, (&x, &v)) in grid.iter().zip(values).enumerate() {
                    finite(&format!("grid[{i}]"), x)?;
                    finite(&format!("values[{i}]"), v)?;
                }
                if grid.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::schema("grid", "must be strictly increasing"));
                }
            }
            AnalyticMeasure::AtomMixture { points, weights } => {
                if points.is_empty() {
                    return Err(Error::schema("points", "needs at least one atom"));
                }
                if weights.len() != points.len() {
                    return Err(Error::schema("weights", "length must match points"));
                }
                for (i, (&x, &w)) in points.iter().zip(weights).enumerate() {
                    finite(&format!("points[{i}]"), x)?;
                    finite(&format!("weights[{i}]"), w)?;
                }
            }
            AnalyticMeasure::Mixture { components } => {
                if components.is_empty() {
                    return Err(Error::schema("components", "needs at least one component"));
                }
                for (i, c) in components.iter().enumerate() {
                    finite(&format!("components[{i}].weight"), c.weight)?;
                    c.measure.validate().map_err(|e| match e {
                        Error::Schema { field, message } => Error::Schema {
                            field: format!("components[{i}].measure.{field}"),
                            message,
                        },
                        other => other,
                    })?;
                }
            }
        }
        Ok(())
    }

    /// Total mass.
    pub fn mass(&self) -> f64 {
        match self {
            AnalyticMeasure::Semicircle { .. } | AnalyticMeasure::CauchyLaw { .. } => 1.0,
            AnalyticMeasure::ChebyshevEigen { .. } => 0.0,
            AnalyticMeasure::DensityTable { grid, values } => grid
                .windows(2)
                .zip(values.windows(2))
                .map(|(g, v)| 0.5 * (g[1] - g[0]) * (v[0] + v[1]))
                .sum(),
            AnalyticMeasure::AtomMixture { weights, .. } => weights.iter().sum(),
            AnalyticMeasure::Mixture { components } => components.iter().map(|c| c.weight * c.measure.mass()).sum(),
        }
    }

    /// True when the descriptor is a positive measure.
    pub fn is_positive(&self) -> bool {
        match self {
            AnalyticMeasure::Semicircle { .. } | AnalyticMeasure::CauchyLaw { .. } => true,
            AnalyticMeasure::ChebyshevEigen { .. } => false,
            AnalyticMeasure::DensityTable { values, .. } => values.iter().all(|&v| v >= 0.0) && values.iter().any(|&v| v > 0.0),
            AnalyticMeasure::AtomMixture { weights, .. } => weights.iter().all(|&w| w >= 0.0) && weights.iter().any(|&w| w > 0.0),
            AnalyticMeasure::Mixture { components } => {
                components.iter().all(|c| c.weight >= 0.0 && c.measure.is_positive())
            }
        }
    }

    /// Smallest closed interval containing the support, if bounded.
    pub fn support(&self) -> Option<(f64, f64)> {
        match self {
            AnalyticMeasure::Semicircle { center, radius } => Some((center - radius, center + radius)),
            AnalyticMeasure::CauchyLaw { .. } => None,
            AnalyticMeasure::ChebyshevEigen { .. } => Some((-2.0, 2.0)),
            AnalyticMeasure::DensityTable { grid, .. } => Some((grid[0], grid[grid.len() - 1])),
            AnalyticMeasure::AtomMixture { points, .. } => Some(
                points
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &p| (lo.min(p), hi.max(p))),
            ),
            AnalyticMeasure::Mixture { components } => components.iter().try_fold(
                (f64::INFINITY, f64::NEG_INFINITY),
                |(lo, hi), c| c.measure.support().map(|(a, b)| (lo.min(a), hi.max(b))),
            ),
        }
    }

    /// Closed-form density at a point where it is defined (absolutely
    /// continuous descriptors only).
    pub fn density(&self, t: f64) -> Option<f64> {
        match self {
            AnalyticMeasure::Semicircle { center, radius } => {
                let d = t - center;
                Some(if d.abs() >= *radius {
                    0.0
                } else {
                    2.0 / (PI * radius * radius) * (radius * radius - d * d).sqrt()
                })
            }
            AnalyticMeasure::CauchyLaw { location, scale } => {
                let d = t - location;
                Some(scale / (PI * (d * d + scale * scale)))
            }
            AnalyticMeasure::ChebyshevEigen { n } => crate::special::chebyshev_eigen_density(*n as usize, t).ok(),
            AnalyticMeasure::DensityTable { grid, values } => {
                if t < grid[0] || t > grid[grid.len() - 1] {
                    return Some(0.0);
                }
                let i = grid.partition_point(|&g| g <= t).clamp(1, grid.len() - 1);
                let (x0, x1) = (grid[i - 1], grid[i]);
                let s = (t - x0) / (x1 - x0);
                Some(values[i - 1] * (1.0 - s) + values[i] * s)
            }
            AnalyticMeasure::AtomMixture { .. } => None,
            AnalyticMeasure::Mixture { components } => components
                .iter()
                .map(|c| c.measure.density(t).map(|d| c.weight * d))
                .sum(),
        }
    }

    /// `G(z)` for `Im z > 0`.
    pub fn cauchy_transform(&self, z: C) -> Result<C> {
        if !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Domain(format!("Cauchy transform needs Im z > 0, got {z}")));
        }
        Ok(self.evaluate(z))
    }

    /// `G(z)` for any non-real `z`. In the lower half-plane this is
    /// `conj(G(conj z))`, which the closed forms produce directly.
    pub fn evaluate(&self, z: C) -> C {
        match self {
            AnalyticMeasure::Semicircle { center, radius } => {
                let zeta = z - center;
                // (2/r²)(ζ - √(ζ²-r²)) written without cancellation.
                2.0 / (zeta + branch_sqrt(zeta, *radius, -radius))
            }
            AnalyticMeasure::CauchyLaw { location, scale } => {
                let sign = if z.im >= 0.0 { 1.0 } else { -1.0 };
                1.0 / (z - location + C::new(0.0, sign * scale))
            }
            AnalyticMeasure::ChebyshevEigen { n } => {
                let s = branch_sqrt(z, 2.0, -2.0);
                let w = 2.0 / (z + s);
                w.powu(*n) / s
            }
            AnalyticMeasure::DensityTable { grid, values } => grid
                .windows(2)
                .zip(values.windows(2))
                .map(|(g, v)| segment_transform(z, g[0], g[1], v[0], v[1]).0)
                .sum(),
            AnalyticMeasure::AtomMixture { points, weights } => {
                points.iter().zip(weights).map(|(&p, &w)| w / (z - p)).sum()
            }
            AnalyticMeasure::Mixture { components } => {
                components.iter().map(|c| c.weight * c.measure.evaluate(z)).sum()
            }
        }
    }

    /// `G'(z)` for non-real `z`.
    pub fn derivative(&self, z: C) -> C {
        match self {
            AnalyticMeasure::Semicircle { center, radius } => {
                let zeta = z - center;
                let s = branch_sqrt(zeta, *radius, -radius);
                -2.0 / (s * (zeta + s))
            }
            AnalyticMeasure::CauchyLaw { .. } => {
                let g = self.evaluate(z);
                -g * g
            }
            AnalyticMeasure::ChebyshevEigen { n } => {
                let s = branch_sqrt(z, 2.0, -2.0);
                let w = 2.0 / (z + s);
                -w.powu(*n) * (*n as f64 * s + z) / (s * s * s)
            }
            AnalyticMeasure::DensityTable { grid, values } => grid
                .windows(2)
                .zip(values.windows(2))
                .map(|(g, v)| segment_transform(z, g[0], g[1], v[0], v[1]).1)
                .sum(),
            AnalyticMeasure::AtomMixture { points, weights } => {
                points.iter().zip(weights).map(|(&p, &w)| -w / ((z - p) * (z - p))).sum()
            }
            AnalyticMeasure::Mixture { components } => {
                components.iter().map(|c| c.weight * c.measure.derivative(z)).sum()
            }
        }
    }

    /// The image of this measure under `t ↦ r·t` (`r > 0`), where it has a
    /// closed form.
    pub fn dilate(&self, r: f64) -> Option<Self> {
        match self {
            AnalyticMeasure::Semicircle { center, radius } => Some(AnalyticMeasure::Semicircle {
                center: center * r,
                radius: radius * r,
            }),
            AnalyticMeasure::CauchyLaw { location, scale } => Some(AnalyticMeasure::CauchyLaw {
                location: location * r,
                scale: scale * r,
            }),
            AnalyticMeasure::AtomMixture { points, weights } => Some(AnalyticMeasure::AtomMixture {
                points: points.iter().map(|p| p * r).collect(),
                weights: weights.clone(),
            }),
            _ => None,
        }
    }
}
