use super::inversion::{invert_k, newton, solve_cauchy, NewtonOptions};
use super::{AnalyticMeasure, Complex64 as C};
use crate::error::{Error, Result};

/// Dilation factor `1/√2` of the free central limit step.
pub const BETA: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// An analytic function given by a value map and, optionally, an exact
/// derivative. Closures get a central-difference derivative.
pub trait Holomorphic: Sync {
    fn eval(&self, z: C) -> C;

    fn derivative(&self, z: C) -> C {
        let h = 1e-6 * (1.0 + z.norm());
        (self.eval(z + h) - self.eval(z - h)) / (2.0 * h)
    }
}

impl<F: Fn(C) -> C + Sync> Holomorphic for F {
    fn eval(&self, z: C) -> C {
        self(z)
    }
}

/// `Σ coeffs[k]·w^k`
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<C>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<C>) -> Self {
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| C::new(c, 0.0)).collect())
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![C::new(0.0, 0.0); k + 1];
        coeffs[k] = C::new(1.0, 0.0);
        Polynomial::new(coeffs)
    }
}

impl Holomorphic for Polynomial {
    fn eval(&self, z: C) -> C {
        self.coeffs.iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    fn derivative(&self, z: C) -> C {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(C::new(0.0, 0.0), |acc, (k, &c)| acc * z + c * k as f64)
    }
}

fn upper(z: C) -> Result<()> {
    if z.im > 0.0 && z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("expected a point of the upper half-plane, got {z}")))
    }
}

/// `ω(z) = K_χ(β·G_χ(z))` for the standard semicircle `χ`, so that
/// `G_χ(ω(z)) = β·G_χ(z)`.
pub fn transition_omega(z: C) -> Result<C> {
    upper(z)?;
    let chi = AnalyticMeasure::standard_semicircle();
    invert_k(&chi, BETA * chi.evaluate(z))
}

/// `ω'(z)` by a central difference with step `1e-6·|z|`.
pub fn omega_derivative(z: C) -> Result<C> {
    upper(z)?;
    let h = 1e-6 * z.norm().max(1e-3);
    let (zp, zm) = (z + h, z - h);
    Ok((transition_omega(zp)? - transition_omega(zm)?) / (2.0 * h))
}

/// The derivative of the free central limit map at the semicircle applied to
/// a perturbation `ψ` of its Cauchy transform: `2·ψ(ω(z))·ω'(z)`.
pub fn dt_action_on_psi(psi: &impl Holomorphic, z: C) -> Result<C> {
    let w = transition_omega(z)?;
    Ok(2.0 * psi.eval(w) * omega_derivative(z)?)
}

/// Both sides of the transport equation at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PdeCheck {
    /// `G'(z)·ψ(G(z))`
    pub transport: C,
    /// Central difference `(G(z,t) - G(z,-t))/(2t)`.
    pub time_derivative: C,
    pub residual: f64,
}

/// Time step of the central difference in [`pde_theorem_check`].
pub const PDE_TIME_STEP: f64 = 1e-4;

/// `G(z, t)`: the solution `g` of `K_ν(g) + t·ψ(g) = z`, continued from
/// `g = G_ν(z)` at `t = 0`.
pub fn deformed_cauchy(nu: &AnalyticMeasure, psi: &impl Holomorphic, z: C, t: f64) -> Result<C> {
    upper(z)?;
    let g0 = nu.evaluate(z);
    let mut seed = z;
    let opts = NewtonOptions::default();
    newton(
        g0,
        &opts,
        |g| {
            let k = solve_cauchy(nu, g, seed)?;
            seed = k;
            let phi = k + t * psi.eval(g) - z;
            let dphi = 1.0 / nu.derivative(k) + t * psi.derivative(g);
            Ok((phi, dphi))
        },
        |g| g.im < 0.0,
    )
}

/// Checks `G_ν'(z)·ψ(G_ν(z)) + ∂G/∂t(z, 0) = 0` numerically.
pub fn pde_theorem_check(nu: &AnalyticMeasure, psi: &impl Holomorphic, z: C) -> Result<PdeCheck> {
    upper(z)?;
    nu.validate()?;
    let t = PDE_TIME_STEP;
    let transport = nu.derivative(z) * psi.eval(nu.evaluate(z));
    let time_derivative = (deformed_cauchy(nu, psi, z, t)? - deformed_cauchy(nu, psi, z, -t)?) / (2.0 * t);
    Ok(PdeCheck {
        transport,
        time_derivative,
        residual: (transport + time_derivative).norm(),
    })
}

/// First-order change of the R-transform along `(1-ε)μ + εν`:
/// `R_{(1-ε)μ+εν} = R_μ - ε·ψ + O(ε²)` with
/// `ψ(w) = K_μ'(w)·(G_ν - G_μ)(K_μ(w))`.
pub fn perturbation_psi(mu: &AnalyticMeasure, nu: &AnalyticMeasure, w: C) -> Result<C> {
    let k = invert_k(mu, w)?;
    let dk = 1.0 / mu.derivative(k);
    Ok(dk * (nu.evaluate(k) - mu.evaluate(k)))
}

/// `G_μ(z) + ψ(G_μ(z))·G_μ'(z)`, which recovers `G_ν` from the
/// perturbation `ψ` of [`perturbation_psi`].
pub fn reconstruct_cauchy(mu: &AnalyticMeasure, psi: &impl Holomorphic, z: C) -> Result<C> {
    upper(z)?;
    let g = mu.evaluate(z);
    Ok(g + psi.eval(g) * mu.derivative(z))
}

/// Residual of the Fourier-side eigen relation for the Gaussian limit:
/// `|2·(iβt)ⁿ·e^{-(βt)²/2}·e^{-(βt)²/2} - 2^{1-n/2}·(it)ⁿ·e^{-t²/2}|`.
pub fn classical_fourier_check(n: u32, t: f64) -> f64 {
    let bt = BETA * t;
    let gauss = |s: f64| (-s * s / 2.0).exp();
    let lhs = 2.0 * C::new(0.0, bt).powu(n) * gauss(bt) * gauss(bt);
    let rhs = 2f64.powf(1.0 - n as f64 / 2.0) * C::new(0.0, t).powu(n) * gauss(t);
    (lhs - rhs).norm()
}
