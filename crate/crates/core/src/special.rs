//! Eigenfunctions of the linearized operator: Hermite densities (classical)
//! and Chebyshev arcsine densities (free), with the exact series identities
//! behind their moment sequences.
//!
//! Normalizations are fixed by the moment contract `m_{n+2k} = a_{n+2k,n}`:
//!
//! | flavor    | density of eigenfunction `n`                        |
//! |-----------|-----------------------------------------------------|
//! | classical | `(-1)^n / (n√(2π)) · d^n/dx^n e^{-x²/2}`             |
//! | free      | `(1/π) · T_n(t/2) / √(4-t²)` on `(-2, 2)`            |
//!
//! Hermite polynomials follow `d^n/dx^n e^{-x²/2} = e^{-x²/2} H_n(x)`, so
//! `H_n = (-1)^n He_n` in terms of the probabilists' polynomials.

use crate::algebra::{binomial, factorial, integer, PowerSeries, Rational};
use crate::clt::build_lin_matrix;
use crate::cumulants::{Kind, Sequence};
use crate::error::{Error, Result};
use crate::Flavor;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyFamily {
    /// `d^n/dx^n e^{-x²/2} = e^{-x²/2} H_n(x)`
    Hermite,
    /// `T_n(cos θ) = cos(nθ)`
    Chebyshev1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoPoly {
    family: PolyFamily,
    /// ascending powers
    coeffs: Vec<Rational>,
}

impl OrthoPoly {
    pub fn hermite(n: usize) -> Self {
        // H_{k+1} = H_k' - x·H_k
        let mut h = vec![integer(1)];
        for _ in 0..n {
            let mut next = vec![Rational::zero(); h.len() + 1];
            for (i, c) in h.iter().enumerate() {
                if i >= 1 {
                    next[i - 1] += c * integer(i as i64);
                }
                next[i + 1] -= c;
            }
            h = next;
        }
        OrthoPoly {
            family: PolyFamily::Hermite,
            coeffs: h,
        }
    }

    pub fn chebyshev1(n: usize) -> Self {
        let mut prev = vec![integer(1)];
        let mut cur = vec![integer(0), integer(1)];
        if n == 0 {
            cur = prev.clone();
        }
        for _ in 1..n {
            let mut next = vec![Rational::zero(); cur.len() + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += c * integer(2);
            }
            for (i, c) in prev.iter().enumerate() {
                next[i] -= c;
            }
            prev = std::mem::replace(&mut cur, next);
        }
        OrthoPoly {
            family: PolyFamily::Chebyshev1,
            coeffs: cur,
        }
    }

    pub fn family(&self) -> PolyFamily {
        self.family
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

fn check_index(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("eigenfunction index must be at least 1".into()));
    }
    Ok(())
}

/// `m_1..m_max_order` with `m_{n+2k} = a_{n+2k,n}` and zeros elsewhere,
/// taken from the linearization matrix.
fn eigen_moments(flavor: Flavor, n: usize, max_order: usize) -> Result<Sequence> {
    check_index(n)?;
    if max_order == 0 {
        return Err(Error::InvalidArgument("need at least one moment".into()));
    }
    let size = max_order.max(n);
    let column = build_lin_matrix(flavor, size)?.column(n);
    Sequence::new(flavor, Kind::Moments, column.into_entries()[..max_order].to_vec())
}

/// Moments of the `n`-th classical eigenfunction:
/// `m_{n+2k} = (n+2k)! / (n·k!·2^k)`.
pub fn hermite_density_moments(n: usize, max_order: usize) -> Result<Sequence> {
    eigen_moments(Flavor::Classical, n, max_order)
}

/// Moments of the `n`-th free eigenfunction: `m_{n+2k} = C(n+2k, k)`.
pub fn chebyshev_density_moments(n: usize, max_order: usize) -> Result<Sequence> {
    eigen_moments(Flavor::Free, n, max_order)
}

pub fn hermite_eigen_density(n: usize, x: f64) -> Result<f64> {
    check_index(n)?;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let h = OrthoPoly::hermite(n).eval(x);
    Ok(sign / (n as f64 * (2.0 * PI).sqrt()) * (-x * x / 2.0).exp() * h)
}

pub fn chebyshev_eigen_density(n: usize, t: f64) -> Result<f64> {
    check_index(n)?;
    if (t.abs() - 2.0).abs() == 0.0 {
        return Err(Error::Singularity(format!("density is singular at t = {t}")));
    }
    if t.abs() > 2.0 {
        return Ok(0.0);
    }
    Ok((n as f64 * (t / 2.0).acos()).cos() / (PI * (4.0 - t * t).sqrt()))
}

/// Checks, coefficient by coefficient through `s^order`, that
/// `Σ_k a_{n+2k,n}/(n+2k)! · s^{n+2k} = (1/n)·s^n·exp(s²/2)` with `s = it`,
/// i.e. that the classical column `n` is the Taylor expansion of the
/// eigenfunction's characteristic function `(1/n)(it)^n e^{-t²/2}`.
pub fn fourier_identity_holds(n: usize, order: usize) -> Result<bool> {
    check_index(n)?;
    let matrix = build_lin_matrix(Flavor::Classical, order.max(n))?;
    let lhs = PowerSeries::from_coeffs(
        order,
        (0..=order).map(|j| {
            if j == 0 {
                Rational::zero()
            } else {
                matrix.get(j, n) / Rational::from_integer(factorial(j as u64))
            }
        }),
    );
    let gaussian = PowerSeries::monomial(order, 2, Rational::new(1.into(), 2.into()))
        .exp()
        .expect("zero constant term");
    let rhs = (&PowerSeries::monomial(order, n, Rational::new(1.into(), BigInt::from(n))) * &gaussian).truncate(order);
    Ok(lhs == rhs)
}

/// `w(u) = (z - √(z²-4))/2` as a power series in `u = 1/z`, from the fixed
/// point `w = u·(1 + w²)`: `w = Σ_k Catalan_k u^{2k+1}`.
pub fn inverse_semicircle_series(order: usize) -> PowerSeries {
    let mut w = PowerSeries::zero(order);
    let one = PowerSeries::one(order);
    for _ in 0..=order {
        w = (&one + &(&w * &w)).shift(1);
    }
    w
}

/// Checks `Σ_k 1/(n+2k)·C(n+2k,k)·z^{-(n+2k)} = (1/n)·w^n` through `z^{-order}`.
pub fn lemma_fn_identity(n: usize, order: usize) -> Result<bool> {
    check_index(n)?;
    let w = inverse_semicircle_series(order);
    let rhs = w.pow(n as u32).scale(&Rational::new(1.into(), BigInt::from(n)));
    let mut lhs = PowerSeries::zero(order);
    let mut k = 0;
    while n + 2 * k <= order {
        let j = n + 2 * k;
        let coeff = Rational::new(binomial(j as u64, k as u64), BigInt::from(j));
        lhs = &lhs + &PowerSeries::monomial(order, j, coeff);
        k += 1;
    }
    Ok(lhs == rhs)
}

/// Both sides of
/// `Σ_{k+l=t} n/(n+2k)·C(n+2k,k) · m/(m+2l)·C(m+2l,l) = (n+m)/(n+m+2t)·C(n+m+2t,t)`.
pub fn rothe_identity(n: usize, m: usize, t: usize) -> Result<(Rational, Rational)> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("n and m must be at least 1".into()));
    }
    let term = |a: usize, k: usize| {
        Rational::new(
            BigInt::from(a) * binomial((a + 2 * k) as u64, k as u64),
            BigInt::from(a + 2 * k),
        )
    };
    let lhs = (0..=t).fold(Rational::zero(), |acc, k| acc + term(n, k) * term(m, t - k));
    Ok((lhs, term(n + m, t)))
}

/// `∫_{-2}^{2} f(t) dt` for integrands with inverse-square-root endpoint
/// singularities, via `t = 2cos θ` and the midpoint rule in θ. With `f(t) =
/// g(t)/√(4-t²)` this is Gauss–Chebyshev quadrature on the nodes
/// `2cos((2i-1)π/(2N))`, exact for polynomial `g` of degree `< 2N`.
pub fn integrate_arcsine(f: impl Fn(f64) -> f64, nodes: usize) -> f64 {
    let h = PI / nodes as f64;
    (1..=nodes)
        .map(|i| {
            let theta = (i as f64 - 0.5) * h;
            f(2.0 * theta.cos()) * 2.0 * theta.sin()
        })
        .sum::<f64>()
        * h
}

/// Default Gauss–Chebyshev node count.
pub const DEFAULT_QUADRATURE_NODES: usize = 256;

/// `m_1..m_max_order` of the free eigen-density computed by quadrature.
pub fn chebyshev_quadrature_moments(n: usize, max_order: usize, nodes: usize) -> Result<Vec<f64>> {
    check_index(n)?;
    Ok((1..=max_order)
        .map(|j| {
            integrate_arcsine(
                |t| t.powi(j as i32) * chebyshev_eigen_density(n, t).unwrap_or(0.0),
                nodes,
            )
        })
        .collect())
}

/// Exact column of `build_lin_matrix` entry as `f64`, for comparisons with
/// quadrature.
pub fn moments_as_f64(seq: &Sequence) -> Vec<f64> {
    seq.entries().iter().map(|q| q.to_f64()).collect()
}
