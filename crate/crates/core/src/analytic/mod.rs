//! Floating-point analytic layer: Cauchy transforms `G(z) = ∫ dμ(t)/(z - t)`,
//! their functional inverses `K = G⁻¹`, R-transforms `R(w) = K(w) - 1/w`, free
//! additive convolution, Stieltjes inversion, and the transition function that
//! conjugates the linearized free central limit operator to a dilation.
//!
//! Branch convention: `√(z² - r²)` is `√(z - r)·√(z + r)` with principal
//! square roots. It is analytic off `[-r, r]` and behaves like `z` at
//! infinity, so every Cauchy transform below satisfies `G(z) ~ mass/z`.

mod convolution;
mod eigen;
mod inversion;
mod measure;
mod transition;

pub use convolution::{free_convolve, richardson, stieltjes_density, FreeConvolution, Grid, StieltjesOptions};
pub use eigen::{eigen_cauchy_transform, eigen_density, necessary_condition_probe, EigenParameter};
pub use inversion::{invert_k, invert_k_from, r_transform, solve_cauchy, NewtonOptions, StolzRegion};
pub use measure::{AnalyticMeasure, MixtureComponent};
pub use transition::{
    classical_fourier_check, dt_action_on_psi, omega_derivative, pde_theorem_check, perturbation_psi,
    reconstruct_cauchy, transition_omega, Holomorphic, PdeCheck, Polynomial, BETA,
};

pub use num_complex::Complex64;

/// `√(z - a)·√(z - b)` with principal roots.
pub(crate) fn branch_sqrt(z: Complex64, a: f64, b: f64) -> Complex64 {
    (z - a).sqrt() * (z - b).sqrt()
}

/// Cauchy transform of the standard semicircle on `[-2, 2]`, `(z - √(z²-4))/2`.
pub fn semicircle_g(z: Complex64) -> Complex64 {
    2.0 / (z + branch_sqrt(z, 2.0, -2.0))
}

/// Its inverse `K(w) = w + 1/w`.
pub fn semicircle_k(w: Complex64) -> Complex64 {
    w + 1.0 / w
}
