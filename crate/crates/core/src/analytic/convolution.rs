use super::inversion::{newton, solve_cauchy_with, NewtonOptions};
use super::{AnalyticMeasure, Complex64 as C};
use crate::error::{Error, Result};
use rayon::prelude::*;
use std::f64::consts::PI;

/// `n` equispaced points from `lo` to `hi` inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::InvalidArgument(format!("grid bounds {lo}:{hi} must be finite with lo < hi")));
        }
        if n < 2 {
            return Err(Error::InvalidArgument(format!("grid needs at least 2 points, got {n}")));
        }
        Ok(Grid { lo, hi, n })
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.n - 1) as f64
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.point(i)).collect()
    }
}

/// Offsets `ε, ε/2, ε/4` used for boundary values `G(x + iε)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StieltjesOptions {
    pub epsilon: f64,
}

impl Default for StieltjesOptions {
    fn default() -> Self {
        StieltjesOptions { epsilon: 1e-2 }
    }
}

impl StieltjesOptions {
    /// Offsets small enough that the `√ε` terms near square-root edges stay
    /// below `1e-4`; usable whenever `G` is evaluated by inversion rather
    /// than quadrature.
    pub fn fine() -> Self {
        StieltjesOptions { epsilon: 1e-6 }
    }

    pub fn offsets(&self) -> [f64; 3] {
        [self.epsilon, self.epsilon / 2.0, self.epsilon / 4.0]
    }
}

/// Second-order Richardson extrapolation to `ε → 0` from samples at
/// `ε, ε/2, ε/4`: cancels the linear and quadratic terms.
pub fn richardson(at_eps: f64, at_half: f64, at_quarter: f64) -> f64 {
    (8.0 * at_quarter - 6.0 * at_half + at_eps) / 3.0
}

/// `-(1/π) Im G(x + i0)` from an evaluator of `G` on the upper half-plane.
pub fn stieltjes_density(mut g: impl FnMut(C) -> Result<C>, x: f64, opts: &StieltjesOptions) -> Result<f64> {
    let [e1, e2, e4] = opts.offsets();
    let mut sample = |e: f64| -> Result<f64> { Ok(-g(C::new(x, e))?.im / PI) };
    let (a, b, c) = (sample(e1)?, sample(e2)?, sample(e4)?);
    Ok(richardson(a, b, c))
}

/// Cauchy transform of `μ ⊞ ν`, found by solving
/// `K_μ(g) + K_ν(g) - 1/g = z` for `g` in the lower half-plane.
///
/// Each evaluation continues the solution from `Im z` large down to the
/// requested height, halving the height at every stage, and warm-starts the
/// inner inversions of `G_μ` and `G_ν` from the previous stage.
#[derive(Clone, Debug)]
pub struct FreeConvolution {
    mu: AnalyticMeasure,
    nu: AnalyticMeasure,
    start_height: f64,
    opts: NewtonOptions,
}

#[derive(Clone, Copy, Debug)]
struct State {
    g: C,
    w1: C,
    w2: C,
}

fn normalized(m: &AnalyticMeasure, label: &str) -> Result<AnalyticMeasure> {
    m.validate()?;
    if !m.is_positive() {
        return Err(Error::InvalidArgument(format!("{label} must be a positive measure")));
    }
    let mass = m.mass();
    if (mass - 1.0).abs() > 1e-3 {
        return Err(Error::InvalidArgument(format!("{label} has mass {mass}, expected 1")));
    }
    Ok(if mass == 1.0 {
        m.clone()
    } else {
        AnalyticMeasure::mixture([(1.0 / mass, m.clone())])
    })
}

impl FreeConvolution {
    /// Both operands must be positive with unit mass; masses within `1e-3`
    /// of 1 (density tables, say) are renormalized.
    pub fn new(mu: &AnalyticMeasure, nu: &AnalyticMeasure) -> Result<Self> {
        let mu = normalized(mu, "first measure")?;
        let nu = normalized(nu, "second measure")?;
        let spread = [&mu, &nu]
            .iter()
            .map(|m| match m.support() {
                Some((a, b)) => a.abs().max(b.abs()),
                None => 1.0,
            })
            .sum::<f64>();
        let width = |m: &AnalyticMeasure| match m {
            AnalyticMeasure::CauchyLaw { scale, .. } => *scale,
            _ => 0.0,
        };
        Ok(FreeConvolution {
            start_height: 4.0 * (1.0 + spread + width(&mu) + width(&nu)),
            mu,
            nu,
            opts: NewtonOptions::default(),
        })
    }

    /// Falls back to parametrizing `g = G_μ(ω₁)` (or `G_ν(ω₂)`) when the
    /// direct solve fails; that avoids inverting an operand at a critical
    /// point of its Cauchy transform, where `K` has a branch point.
    fn solve_at(&self, z: C, prev: State) -> Result<State> {
        self.solve_in_g(z, prev)
            .or_else(|_| self.solve_in_omega(z, prev, false))
            .or_else(|_| self.solve_in_omega(z, prev, true))
    }

    fn solve_in_omega(&self, z: C, prev: State, swap: bool) -> Result<State> {
        let (mu, nu) = if swap { (&self.nu, &self.mu) } else { (&self.mu, &self.nu) };
        let (start, mut seed) = if swap { (prev.w2, prev.w1) } else { (prev.w1, prev.w2) };
        let inner = self.opts;
        let w = newton(
            start,
            &self.opts,
            |w| {
                let g = mu.evaluate(w);
                if !(g.im < 0.0) {
                    return Err(Error::Domain(format!("G({w}) left the lower half-plane")));
                }
                let other = solve_cauchy_with(nu, g, seed, &inner)?;
                seed = other;
                let dg = mu.derivative(w);
                let psi = w + other - 1.0 / g - z;
                let dpsi = 1.0 + dg / nu.derivative(other) + dg / (g * g);
                Ok((psi, dpsi))
            },
            |w| w.im > 0.0,
        )?;
        let g = mu.evaluate(w);
        let other = solve_cauchy_with(nu, g, seed, &inner)?;
        Ok(if swap {
            State { g, w1: other, w2: w }
        } else {
            State { g, w1: w, w2: other }
        })
    }

    fn solve_in_g(&self, z: C, prev: State) -> Result<State> {
        let mut seeds = (prev.w1, prev.w2);
        let inner = self.opts;
        let mu = &self.mu;
        let nu = &self.nu;
        let mut last = prev;
        let g = newton(
            prev.g,
            &self.opts,
            |g| {
                let w1 = solve_cauchy_with(mu, g, seeds.0, &inner)?;
                let w2 = solve_cauchy_with(nu, g, seeds.1, &inner)?;
                seeds = (w1, w2);
                last = State { g, w1, w2 };
                let phi = w1 + w2 - 1.0 / g - z;
                let dphi = 1.0 / mu.derivative(w1) + 1.0 / nu.derivative(w2) + 1.0 / (g * g);
                Ok((phi, dphi))
            },
            |g| g.im < 0.0,
        )?;
        if last.g != g {
            last = State {
                g,
                w1: solve_cauchy_with(mu, g, seeds.0, &inner)?,
                w2: solve_cauchy_with(nu, g, seeds.1, &inner)?,
            };
        }
        Ok(last)
    }

    fn start(&self, x: f64) -> Result<State> {
        let z = C::new(x, self.start_height);
        let g0 = 1.0 / z;
        self.solve_at(z, State { g: g0, w1: z, w2: z })
    }

    /// Continues from the start height down to each of `heights` (which must
    /// be decreasing) and returns `G_{μ⊞ν}(x + i·h)` for each.
    pub fn along_heights(&self, x: f64, heights: &[f64]) -> Result<Vec<C>> {
        let mut state = self.start(x)?;
        let mut y = self.start_height;
        let mut out = Vec::with_capacity(heights.len());
        for &target in heights {
            if !(target > 0.0) {
                return Err(Error::Domain(format!("height {target} is not positive")));
            }
            while y * 0.5 > target {
                y *= 0.5;
                state = self.solve_at(C::new(x, y), state)?;
            }
            y = target;
            state = self.solve_at(C::new(x, y), state)?;
            out.push(state.g);
        }
        Ok(out)
    }

    pub fn cauchy_transform(&self, z: C) -> Result<C> {
        if !(z.im > 0.0) {
            return Err(Error::Domain(format!("Cauchy transform needs Im z > 0, got {z}")));
        }
        if z.im >= self.start_height {
            return Ok(self.solve_at(z, State { g: 1.0 / z, w1: z, w2: z })?.g);
        }
        Ok(self.along_heights(z.re, &[z.im])?[0])
    }

    /// Density at `x` by Stieltjes inversion with Richardson extrapolation.
    pub fn density(&self, x: f64, opts: &StieltjesOptions) -> Result<f64> {
        let g = self.along_heights(x, &opts.offsets())?;
        let d = richardson(-g[0].im / PI, -g[1].im / PI, -g[2].im / PI);
        Ok(d.max(0.0))
    }
}

/// Density table of `μ ⊞ ν` on `grid`. When both operands have bounded
/// support, a missing mass above `1e-3` on the grid is reported as an error.
pub fn free_convolve(mu: &AnalyticMeasure, nu: &AnalyticMeasure, grid: &Grid) -> Result<AnalyticMeasure> {
    let conv = FreeConvolution::new(mu, nu)?;
    let opts = StieltjesOptions::fine();
    let points = grid.points();
    let values = points
        .par_iter()
        .map(|&x| conv.density(x, &opts))
        .collect::<Result<Vec<f64>>>()?;
    let table = AnalyticMeasure::DensityTable { grid: points, values };
    if mu.support().is_some() && nu.support().is_some() {
        let deficit = 1.0 - table.mass();
        if deficit > 1e-3 {
            return Err(Error::InvalidArgument(format!(
                "grid {}:{}:{} misses mass {deficit:.3e}; widen or refine it",
                grid.lo, grid.hi, grid.n
            )));
        }
    }
    Ok(table)
}
