//! The central limit operator on moment sequences, realized through the
//! cumulant side as `T = R⁻¹ ∘ T^R ∘ R` with `(T^R c)_k = 2^{1-k/2} c_k`, and
//! its linearization at the normal law.

use crate::algebra::{QSqrt2, Rational, Scalar};
use crate::cumulants::{
    cumulants_from_moments, cumulants_to_moments, derivative_of_cumulants, moments_to_cumulants, normal_moments,
    Kind, Sequence,
};
use crate::error::{Error, Result};
use crate::partitions::{profile_closed_form, BlockProfile};
use crate::Flavor;
use num_traits::Zero;
use rayon::prelude::*;

/// Default largest linearization matrix the CLI will build.
pub const DEFAULT_MAX_MATRIX_SIZE: usize = 16;

/// Applies the diagonal action `c_k ↦ 2^{1-k/2} c_k` on cumulants.
pub fn scale_cumulants<S: Scalar + From<QSqrt2>>(cumulants: &[S]) -> Vec<S> {
    cumulants
        .iter()
        .enumerate()
        .map(|(i, c)| c.clone() * S::from(QSqrt2::clt_eigenvalue(i as u32 + 1)))
        .collect()
}

/// One application of the central limit operator.
pub fn apply_t(m: &Sequence) -> Result<Sequence> {
    let c = moments_to_cumulants(m)?;
    let scaled = c.with_entries(scale_cumulants(c.entries()));
    cumulants_to_moments(&scaled)
}

/// True iff `m` is fixed by the central limit operator, i.e. all cumulants
/// other than the second vanish.
pub fn is_fixed_point(m: &Sequence) -> Result<bool> {
    let c = moments_to_cumulants(m)?;
    Ok(c.entries().iter().enumerate().all(|(i, c)| i == 1 || c.is_zero()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CltStep {
    pub step: usize,
    pub moments: Sequence,
    pub cumulants: Sequence,
    /// `m_k(step) - χ_k`
    pub gap: Vec<QSqrt2>,
}

/// History of `T^n m` for `n = 0..=steps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CltReport {
    pub flavor: Flavor,
    pub steps: usize,
    pub history: Vec<CltStep>,
    /// Whether `c_k(n) = 2^{n(1-k/2)} c_k(0)` held exactly at every step.
    pub decay_exact: bool,
}

impl CltReport {
    pub fn last(&self) -> &CltStep {
        self.history.last().expect("history includes step 0")
    }

    /// Orders whose gap is nonzero initially and shrinks strictly in absolute
    /// value at every step.
    pub fn gaps_strictly_decreasing(&self) -> bool {
        let len = self.history[0].gap.len();
        (0..len).all(|k| {
            if self.history[0].gap[k].is_zero() {
                return self.history.iter().all(|s| s.gap[k].is_zero());
            }
            self.history.windows(2).all(|w| w[1].gap[k].abs() < w[0].gap[k].abs())
        })
    }
}

/// Iterates the operator `steps` times, recording moments, cumulants and the
/// gap to the normal moments, and checks the exact cumulant decay law. Inputs
/// are not recentred.
pub fn iterate_t(m: &Sequence, steps: usize) -> Result<CltReport> {
    if m.kind() != Kind::Moments {
        return Err(Error::Mismatch("iterate_t expects moments".into()));
    }
    let normal = normal_moments(m.flavor(), m.len());
    let record = |step: usize, moments: Sequence| -> Result<CltStep> {
        let cumulants = moments_to_cumulants(&moments)?;
        let gap = moments
            .entries()
            .iter()
            .zip(normal.entries())
            .map(|(a, b)| a - b)
            .collect();
        Ok(CltStep {
            step,
            moments,
            cumulants,
            gap,
        })
    };
    let mut history = vec![record(0, m.clone())?];
    for step in 1..=steps {
        let next = apply_t(&history[step - 1].moments)?;
        history.push(record(step, next)?);
    }
    let initial = history[0].cumulants.entries().to_vec();
    let decay_exact = history.iter().all(|s| {
        s.cumulants.entries().iter().enumerate().all(|(i, c)| {
            let factor = QSqrt2::clt_eigenvalue(i as u32 + 1).pow(s.step as u32);
            *c == &factor * &initial[i]
        })
    });
    Ok(CltReport {
        flavor: m.flavor(),
        steps,
        history,
        decay_exact,
    })
}

/// The lower-triangular matrix of the derivative of the cumulant-to-moment
/// transform at the normal law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMatrix {
    flavor: Flavor,
    /// `rows[i-1][j-1] = a_{ij}` for `j <= i`
    rows: Vec<Vec<Rational>>,
}

impl LinMatrix {
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// 1-based entry; zero above the diagonal.
    pub fn get(&self, i: usize, j: usize) -> Rational {
        if j > i || j == 0 {
            return Rational::zero();
        }
        self.rows[i - 1][j - 1].clone()
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.rows[i - 1]
    }

    /// Column `j` as a moment sequence of length `size`: the eigenvector `e_j`.
    pub fn column(&self, j: usize) -> Sequence {
        Sequence::from_rationals(self.flavor, Kind::Moments, (1..=self.size()).map(|i| self.get(i, j)))
            .expect("size >= 1")
    }

    /// `A·x` for a vector of length `size`.
    pub fn apply<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        (1..=self.size())
            .map(|i| {
                (1..=i).fold(S::zero(), |acc, j| {
                    let a = self.get(i, j);
                    if a.is_zero() {
                        acc
                    } else {
                        acc + x[j - 1].clone() * S::from_rational(a)
                    }
                })
            })
            .collect()
    }
}

/// Builds the matrix from the closed forms `C(n+2k, k)` (free) and
/// `(n+2k)!/(n·k!·2^k)` (classical), zero when `i < j` or `i - j` is odd.
pub fn build_lin_matrix(flavor: Flavor, size: usize) -> Result<LinMatrix> {
    if size == 0 {
        return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
    }
    let rows = (1..=size)
        .into_par_iter()
        .map(|i| {
            (1..=i)
                .map(|j| {
                    if (i - j) % 2 == 1 {
                        Rational::zero()
                    } else {
                        let profile = BlockProfile { n: j, k: (i - j) / 2 };
                        Rational::from_integer(profile_closed_form(profile, flavor))
                    }
                })
                .collect()
        })
        .collect();
    Ok(LinMatrix { flavor, rows })
}

/// Derivative of the central limit operator at the normal law applied to a
/// moment-side direction: `A · diag(2^{1-k/2}) · f`, where `f` is the
/// derivative of the moment-to-cumulant transform at the normal law in that
/// direction.
pub fn apply_dt_at_chi(direction: &Sequence) -> Result<Sequence> {
    if direction.kind() != Kind::Moments {
        return Err(Error::Mismatch("direction must be a moment sequence".into()));
    }
    let len = direction.len();
    let normal = normal_moments(direction.flavor(), len);
    let f = derivative_of_cumulants(direction.flavor(), normal.entries(), direction.entries());
    let scaled = scale_cumulants(&f);
    let matrix = build_lin_matrix(direction.flavor(), len)?;
    Ok(direction.with_entries(matrix.apply(&scaled)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenVerdict {
    pub column: usize,
    pub eigenvalue: QSqrt2,
    pub exact: bool,
}

/// Checks `DT(e_j) = 2^{1-j/2}·e_j` for every column of the `size × size`
/// matrix.
pub fn eigencheck(flavor: Flavor, size: usize) -> Result<Vec<EigenVerdict>> {
    let matrix = build_lin_matrix(flavor, size)?;
    (1..=size)
        .into_par_iter()
        .map(|j| {
            let e = matrix.column(j);
            let image = apply_dt_at_chi(&e)?;
            let eigenvalue = QSqrt2::clt_eigenvalue(j as u32);
            let exact = image
                .entries()
                .iter()
                .zip(e.entries())
                .all(|(lhs, x)| *lhs == &eigenvalue * x);
            Ok(EigenVerdict {
                column: j,
                eigenvalue,
                exact,
            })
        })
        .collect()
}

/// Largest eigenvalue `2^{1-n/2}` over `3 <= n <= size`, if any. The normal
/// law is spectrally stable on mean-zero unit-variance perturbations iff this
/// is below 1.
pub fn max_stable_eigenvalue(size: usize) -> Option<QSqrt2> {
    (3..=size).map(|n| QSqrt2::clt_eigenvalue(n as u32)).max()
}

/// Cumulants of `m` as a plain vector (convenience for reports).
pub fn cumulant_entries(m: &Sequence) -> Vec<QSqrt2> {
    cumulants_from_moments(m.flavor(), m.entries())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use crate::cumulants::bernoulli_moments;
    use crate::partitions::count_profile;

    fn q(v: i64) -> QSqrt2 {
        QSqrt2::from_int(v)
    }

    #[test]
    fn normal_laws_are_fixed() {
        let free = Sequence::from_ints(Flavor::Free, Kind::Moments, &[0, 1, 0, 2, 0, 5]).unwrap();
        assert_eq!(apply_t(&free).unwrap(), free);
        let classical = Sequence::from_ints(Flavor::Classical, Kind::Moments, &[0, 1, 0, 3, 0, 15]).unwrap();
        assert_eq!(apply_t(&classical).unwrap(), classical);
        assert!(is_fixed_point(&free).unwrap());
    }

    #[test]
    fn free_bernoulli_fourth_cumulant_halves() {
        let m = bernoulli_moments(Flavor::Free, 6);
        let t = apply_t(&m).unwrap();
        let c = moments_to_cumulants(&t).unwrap();
        assert_eq!(c.get(4).unwrap(), &QSqrt2::from_rational(rational(-1, 2)));
        // m_4 = 2 + c_4 when c_1 = c_3 = 0 and c_2 = 1.
        assert_eq!(t.get(4).unwrap(), &QSqrt2::from_rational(rational(3, 2)));
    }

    #[test]
    fn bernoulli_gap_after_four_steps() {
        let free = iterate_t(&bernoulli_moments(Flavor::Free, 6), 4).unwrap();
        assert_eq!(free.last().gap[3], QSqrt2::from_rational(rational(-1, 16)));
        assert!(free.decay_exact);
        let classical = iterate_t(&bernoulli_moments(Flavor::Classical, 6), 4).unwrap();
        assert_eq!(classical.last().gap[3], QSqrt2::from_rational(rational(-1, 8)));
        assert!(classical.decay_exact);
        assert!(free.gaps_strictly_decreasing() && classical.gaps_strictly_decreasing());
    }

    #[test]
    fn fixed_point_does_not_move() {
        for flavor in Flavor::ALL {
            let report = iterate_t(&normal_moments(flavor, 8), 10).unwrap();
            assert!(report.history.iter().all(|s| s.gap.iter().all(num_traits::Zero::is_zero)));
        }
    }

    #[test]
    fn matrix_entries() {
        let free = build_lin_matrix(Flavor::Free, 6).unwrap();
        assert_eq!(free.get(3, 1), rational(3, 1));
        assert_eq!(free.get(5, 1), rational(10, 1));
        assert_eq!(free.get(4, 2), rational(4, 1));
        assert_eq!(free.row(5), &[10, 0, 5, 0, 1].map(|v| rational(v, 1)));
        let classical = build_lin_matrix(Flavor::Classical, 6).unwrap();
        assert_eq!(classical.get(3, 1), rational(3, 1));
        assert_eq!(classical.get(5, 1), rational(15, 1));
        assert_eq!(classical.get(4, 2), rational(6, 1));
        for (m, diag) in [(&free, [1, 1, 1, 1, 1, 1]), (&classical, [1, 1, 2, 6, 24, 120])] {
            for j in 1..=6 {
                assert_eq!(m.get(j, j), rational(diag[j - 1], 1));
                assert!(m.get(j, j + 1).is_zero());
            }
            assert!(m.get(4, 1).is_zero());
        }
        assert!(build_lin_matrix(Flavor::Free, 0).is_err());
    }

    #[test]
    fn matrix_matches_partition_oracle() {
        for flavor in Flavor::ALL {
            let m = build_lin_matrix(flavor, 11).unwrap();
            for i in 1..=11 {
                for j in (1..=i).filter(|j| (i - j) % 2 == 0) {
                    let oracle = count_profile(BlockProfile { n: j, k: (i - j) / 2 }, flavor, 14).unwrap();
                    assert_eq!(m.get(i, j), Rational::from_integer(oracle));
                }
            }
        }
    }

    #[test]
    fn eigenvectors() {
        let free = build_lin_matrix(Flavor::Free, 8).unwrap();
        let e3 = free.column(3);
        let image = apply_dt_at_chi(&e3).unwrap();
        let expected: Vec<_> = e3.entries().iter().map(|x| &QSqrt2::beta() * x).collect();
        assert_eq!(image.entries(), expected.as_slice());
        let e2 = free.column(2);
        assert_eq!(apply_dt_at_chi(&e2).unwrap(), e2);
        let zero = e2.with_entries(vec![q(0); 8]);
        assert!(apply_dt_at_chi(&zero).unwrap().is_zero());
        for flavor in Flavor::ALL {
            assert!(eigencheck(flavor, 10).unwrap().iter().all(|v| v.exact));
        }
    }

    #[test]
    fn spectral_stability() {
        let top = max_stable_eigenvalue(16).unwrap();
        assert_eq!(top, QSqrt2::beta());
        assert!(top < q(1));
        assert!(max_stable_eigenvalue(2).is_none());
    }
}
