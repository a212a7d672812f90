use super::{AnalyticMeasure, Complex64 as C};
use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_2;

/// Stopping rules shared by every Newton solve in the analytic layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonOptions {
    pub max_iterations: usize,
    pub tolerance: f64,
    /// Residual accepted when the iteration stalls above `tolerance`.
    pub acceptable: f64,
    /// Consecutive residual increases that count as divergence.
    pub divergence_window: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            max_iterations: 50,
            tolerance: 1e-12,
            acceptable: 1e-10,
            divergence_window: 5,
        }
    }
}

/// Damped Newton iteration for `f(x) = 0` where `f` returns the residual and
/// its derivative. Steps are halved until the new point satisfies `admissible`
/// and lowers the residual.
pub(crate) fn newton(
    mut x: C,
    opts: &NewtonOptions,
    mut f: impl FnMut(C) -> Result<(C, C)>,
    admissible: impl Fn(C) -> bool,
) -> Result<C> {
    let (mut r, mut d) = f(x)?;
    let mut res = r.norm();
    let mut growth = 0;
    for _ in 0..opts.max_iterations {
        let step = r / d;
        if res <= opts.tolerance {
            // Keep stepping while the steps shrink: this sharpens x when the
            // residual is measured in coarser units than the caller needs, and
            // near a double root, where convergence is only linear.
            let (mut x, mut step, mut size) = (x, step, step.norm());
            for _ in 0..opts.max_iterations {
                let polished = x - step;
                if size == 0.0 || !admissible(polished) {
                    break;
                }
                let Ok((rp, dp)) = f(polished) else { break };
                if rp.norm() > opts.tolerance {
                    break;
                }
                x = polished;
                step = rp / dp;
                let next = step.norm();
                if !(next < 0.9 * size) {
                    break;
                }
                size = next;
            }
            return Ok(x);
        }
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        let mut lambda = 1.0;
        let mut best: Option<(C, C, C, f64)> = None;
        for _ in 0..40 {
            let cand = x - step * lambda;
            if admissible(cand) {
                if let Ok((rc, dc)) = f(cand) {
                    let nc = rc.norm();
                    if nc.is_finite() {
                        if best.is_none() {
                            best = Some((cand, rc, dc, nc));
                        }
                        if nc < res {
                            best = Some((cand, rc, dc, nc));
                            break;
                        }
                    }
                }
            }
            lambda *= 0.5;
        }
        let Some((xn, rn, dn, nn)) = best else { break };
        growth = if nn > res { growth + 1 } else { 0 };
        if nn == res && xn == x {
            break;
        }
        x = xn;
        r = rn;
        d = dn;
        res = nn;
        if growth >= opts.divergence_window {
            break;
        }
    }
    if res <= opts.acceptable {
        Ok(x)
    } else {
        Err(Error::InversionFailure {
            iterations: opts.max_iterations,
            residual: res,
        })
    }
}

/// Solves `G_μ(z) = w` for `z ∈ ℂ⁺`, starting from `seed`.
pub fn solve_cauchy(mu: &AnalyticMeasure, w: C, seed: C) -> Result<C> {
    solve_cauchy_with(mu, w, seed, &NewtonOptions::default())
}

pub(crate) fn solve_cauchy_with(mu: &AnalyticMeasure, w: C, seed: C, opts: &NewtonOptions) -> Result<C> {
    if !(seed.im > 0.0) {
        return Err(Error::Domain(format!("Newton seed {seed} is not in the upper half-plane")));
    }
    newton(seed, opts, |z| Ok((mu.evaluate(z) - w, mu.derivative(z))), |z| z.im > 0.0)
}

/// `K_μ(w)`, the right inverse of `G_μ` near 0 in the lower half-plane,
/// computed by Newton iteration seeded at `1/w`.
pub fn invert_k(mu: &AnalyticMeasure, w: C) -> Result<C> {
    if !(w.im < 0.0) {
        return Err(Error::Domain(format!("K is evaluated on the lower half-plane, got {w}")));
    }
    solve_cauchy(mu, w, 1.0 / w)
}

/// `K_μ(w)` with an explicit seed, for continuation along a path.
pub fn invert_k_from(mu: &AnalyticMeasure, w: C, seed: C) -> Result<C> {
    if !(w.im < 0.0) {
        return Err(Error::Domain(format!("K is evaluated on the lower half-plane, got {w}")));
    }
    solve_cauchy(mu, w, seed)
}

/// `R_μ(w) = K_μ(w) - 1/w`.
pub fn r_transform(mu: &AnalyticMeasure, w: C) -> Result<C> {
    Ok(invert_k(mu, w)? - 1.0 / w)
}

/// A truncated cone at 0 around the negative imaginary axis:
/// `0 < |w| ≤ radius` and `|arg w + π/2| ≤ half_angle`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StolzRegion {
    pub half_angle: f64,
    pub radius: f64,
}

impl StolzRegion {
    pub fn new(half_angle: f64, radius: f64) -> Result<Self> {
        if !(half_angle > 0.0 && half_angle < FRAC_PI_2) {
            return Err(Error::InvalidArgument(format!("half-angle {half_angle} outside (0, π/2)")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("radius {radius} must be positive")));
        }
        Ok(StolzRegion { half_angle, radius })
    }

    pub fn contains(&self, w: C) -> bool {
        let r = w.norm();
        r > 0.0 && r <= self.radius && (w.arg() + FRAC_PI_2).abs() <= self.half_angle
    }

    /// `radii × angles` points spread over the region, excluding its edges.
    pub fn grid(&self, radii: usize, angles: usize) -> Vec<C> {
        let mut out = Vec::with_capacity(radii * angles);
        for i in 0..radii {
            let r = self.radius * (i as f64 + 1.0) / (radii as f64 + 0.5);
            for j in 0..angles {
                let frac = if angles == 1 {
                    0.0
                } else {
                    2.0 * j as f64 / (angles - 1) as f64 - 1.0
                };
                let arg = -FRAC_PI_2 + 0.9 * self.half_angle * frac;
                out.push(C::from_polar(r, arg));
            }
        }
        out
    }
}
