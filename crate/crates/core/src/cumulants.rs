//! Moment ↔ cumulant transforms and the directional derivative of the
//! moment-to-cumulant map.
//!
//! Sequences are 1-indexed: entry `i` of a slice is `m_{i+1}` (or `c_{i+1}`),
//! and `m_0 = 1` is implicit.
//!
//! Conventions, with `w(B)` the weight of a block:
//!
//! ```text
//! free:       m_k = Σ_{π ∈ NC(k)} Π_B c_|B|              w(B) = 1
//! classical:  m_k = Σ_{π ∈ P(k)}  Π_B (|B|-1)! c_|B|     w(B) = (|B|-1)!
//! ```
//!
//! so the classical `c_j` here are the usual cumulants divided by `(j-1)!`.
//! Both conventions agree on the fixed points of the central limit operator
//! (only `c_2` nonzero) and on the scaling `c_k ↦ 2^{1-k/2} c_k`.
//!
//! The production path is the triangular recursion obtained by conditioning
//! on the block that contains element 1. [`cumulants_to_moments_by_partitions`]
//! and [`moments_to_cumulants_by_partitions`] sum over enumerated partitions
//! instead and exist to cross-check it.

use crate::algebra::{binomial, factorial, QSqrt2, Rational, Scalar};
use crate::error::{Error, Result};
use crate::partitions::block_type_census;
use crate::Flavor;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Moments,
    Cumulants,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Moments => "moments",
            Kind::Cumulants => "cumulants",
        })
    }
}

/// A finite prefix `x_1..x_L` of a moment or cumulant sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequence {
    flavor: Flavor,
    kind: Kind,
    entries: Vec<QSqrt2>,
}

impl Sequence {
    pub fn new(flavor: Flavor, kind: Kind, entries: Vec<QSqrt2>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("a sequence needs at least one entry".into()));
        }
        Ok(Sequence { flavor, kind, entries })
    }

    pub fn from_rationals(flavor: Flavor, kind: Kind, entries: impl IntoIterator<Item = Rational>) -> Result<Self> {
        Self::new(flavor, kind, entries.into_iter().map(QSqrt2::from_rational).collect())
    }

    pub fn from_ints(flavor: Flavor, kind: Kind, entries: &[i64]) -> Result<Self> {
        Self::new(flavor, kind, entries.iter().map(|&v| QSqrt2::from_int(v)).collect())
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn entries(&self) -> &[QSqrt2] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<QSqrt2> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// 1-based access: `get(k)` is `x_k`.
    pub fn get(&self, k: usize) -> Option<&QSqrt2> {
        k.checked_sub(1).and_then(|i| self.entries.get(i))
    }

    pub fn with_entries(&self, entries: Vec<QSqrt2>) -> Self {
        Sequence {
            flavor: self.flavor,
            kind: self.kind,
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(num_traits::Zero::is_zero)
    }

    /// `m_2 - m_1² >= 0`, the variance condition a moment sequence of a
    /// probability measure must satisfy. `None` if fewer than two moments.
    pub fn variance_nonnegative(&self) -> Option<bool> {
        let m1 = self.get(1)?;
        let m2 = self.get(2)?;
        Some((m2 - &(m1 * m1)).signum() >= 0)
    }

    fn expect(&self, kind: Kind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::Mismatch(format!("expected {kind}, got {}", self.kind)));
        }
        Ok(())
    }
}

/// Block weight `w(j)` for a block of size `j`.
fn block_weight(flavor: Flavor, j: usize) -> Rational {
    match flavor {
        Flavor::Free => Rational::from_integer(1.into()),
        Flavor::Classical => Rational::from_integer(factorial(j as u64 - 1)),
    }
}

/// Coefficient of `c_s · m_{k-s}` in the classical recursion:
/// `C(k-1, s-1)·(s-1)! = (k-1)!/(k-s)!`.
fn classical_coefficient(k: usize, s: usize) -> Rational {
    Rational::from_integer(binomial(k as u64 - 1, s as u64 - 1) * factorial(s as u64 - 1))
}

/// Incrementally built table of `[x^r] M(x)^s` for `M = 1 + Σ m_i x^i`.
struct PowerTable<S> {
    /// `rows[s][r]`, `s = 0..=len`
    rows: Vec<Vec<S>>,
    /// `m_0 = 1, m_1, ...` as filled so far
    moments: Vec<S>,
}

impl<S: Scalar> PowerTable<S> {
    fn new(len: usize) -> Self {
        let mut rows = vec![Vec::with_capacity(len + 1); len + 1];
        rows[0].push(S::one());
        for row in rows.iter_mut().skip(1) {
            row.push(S::one());
        }
        PowerTable {
            rows,
            moments: vec![S::one()],
        }
    }

    /// Appends `m_r` and fills column `r` for every power.
    fn push(&mut self, m: S) {
        self.moments.push(m);
        let r = self.moments.len() - 1;
        self.rows[0].push(S::zero());
        for s in 1..self.rows.len() {
            let mut acc = S::zero();
            for j in 0..=r {
                let prev = &self.rows[s - 1][r - j];
                if !prev.is_zero() && !self.moments[j].is_zero() {
                    acc = acc + self.moments[j].clone() * prev.clone();
                }
            }
            self.rows[s].push(acc);
        }
    }

    fn get(&self, s: usize, r: usize) -> &S {
        &self.rows[s][r]
    }
}

/// `c_1..c_L` from `m_1..m_L`.
pub fn cumulants_from_moments<S: Scalar>(flavor: Flavor, moments: &[S]) -> Vec<S> {
    let len = moments.len();
    let mut c: Vec<S> = Vec::with_capacity(len);
    match flavor {
        Flavor::Free => {
            let mut table: PowerTable<S> = PowerTable::new(len);
            for k in 1..=len {
                // c_k = m_k - Σ_{s<k} c_s [x^{k-s}] M^s, which only needs m_1..m_{k-1}.
                let mut acc = moments[k - 1].clone();
                for s in 1..k {
                    acc = acc - c[s - 1].clone() * table.get(s, k - s).clone();
                }
                c.push(acc);
                table.push(moments[k - 1].clone());
            }
        }
        Flavor::Classical => {
            for k in 1..=len {
                let mut acc = moments[k - 1].clone();
                for s in 1..k {
                    let m_rest = moments[k - s - 1].clone();
                    acc = acc - c[s - 1].clone() * m_rest * S::from_rational(classical_coefficient(k, s));
                }
                c.push(acc.div_rational(&classical_coefficient(k, k)));
            }
        }
    }
    c
}

/// `m_1..m_L` from `c_1..c_L`.
pub fn moments_from_cumulants<S: Scalar>(flavor: Flavor, cumulants: &[S]) -> Vec<S> {
    let len = cumulants.len();
    let mut m: Vec<S> = Vec::with_capacity(len);
    match flavor {
        Flavor::Free => {
            let mut table: PowerTable<S> = PowerTable::new(len);
            for k in 1..=len {
                let mut acc = S::zero();
                for s in 1..=k {
                    acc = acc + cumulants[s - 1].clone() * table.get(s, k - s).clone();
                }
                table.push(acc.clone());
                m.push(acc);
            }
        }
        Flavor::Classical => {
            for k in 1..=len {
                let mut acc = S::zero();
                for s in 1..=k {
                    let m_rest = if s == k { S::one() } else { m[k - s - 1].clone() };
                    acc = acc + cumulants[s - 1].clone() * m_rest * S::from_rational(classical_coefficient(k, s));
                }
                m.push(acc);
            }
        }
    }
    m
}

/// Derivative of the moment-to-cumulant map at `base` (moments) in the
/// direction `direction` (moments), by differentiating the recursion.
pub fn derivative_of_cumulants<S: Scalar>(flavor: Flavor, base: &[S], direction: &[S]) -> Vec<S> {
    let len = base.len().min(direction.len());
    let base = &base[..len];
    let direction = &direction[..len];
    let c = cumulants_from_moments(flavor, base);
    let mut f: Vec<S> = Vec::with_capacity(len);
    match flavor {
        Flavor::Free => {
            // rows[s][r] = [x^r] M^s and drows[s][r] = [x^r] d(M^s) = [x^r] s·M^{s-1}·D,
            // where D = Σ_{i>=1} m^d_i x^i.
            let mut table: PowerTable<S> = PowerTable::new(len);
            for m in base {
                table.push(m.clone());
            }
            let mut d: Vec<S> = vec![S::zero()];
            d.extend(direction.iter().cloned());
            let mut drows: Vec<Vec<S>> = vec![vec![S::zero(); len + 1]];
            for s in 1..=len {
                let mut row = vec![S::zero(); len + 1];
                for (r, slot) in row.iter_mut().enumerate() {
                    let mut acc = S::zero();
                    for j in 0..=r {
                        let mj = if j == 0 { S::one() } else { base[j - 1].clone() };
                        let prev = &drows[s - 1][r - j];
                        if !prev.is_zero() {
                            acc = acc + mj * prev.clone();
                        }
                        if j >= 1 && !d[j].is_zero() {
                            acc = acc + d[j].clone() * table.get(s - 1, r - j).clone();
                        }
                    }
                    *slot = acc;
                }
                drows.push(row);
            }
            for k in 1..=len {
                let mut acc = direction[k - 1].clone();
                for s in 1..k {
                    acc = acc - f[s - 1].clone() * table.get(s, k - s).clone();
                }
                for s in 1..=k {
                    acc = acc - c[s - 1].clone() * drows[s][k - s].clone();
                }
                f.push(acc);
            }
        }
        Flavor::Classical => {
            let m_at = |seq: &[S], j: usize, zeroth: S| if j == 0 { zeroth } else { seq[j - 1].clone() };
            for k in 1..=len {
                let mut acc = direction[k - 1].clone();
                for s in 1..=k {
                    let w = S::from_rational(classical_coefficient(k, s));
                    if s < k {
                        acc = acc - w.clone() * f[s - 1].clone() * m_at(base, k - s, S::one());
                    }
                    acc = acc - w * c[s - 1].clone() * m_at(direction, k - s, S::zero());
                }
                f.push(acc.div_rational(&classical_coefficient(k, k)));
            }
        }
    }
    f
}

/// The moment-to-cumulant transform.
pub fn moments_to_cumulants(m: &Sequence) -> Result<Sequence> {
    m.expect(Kind::Moments)?;
    Sequence::new(m.flavor, Kind::Cumulants, cumulants_from_moments(m.flavor, &m.entries))
}

/// The cumulant-to-moment transform.
pub fn cumulants_to_moments(c: &Sequence) -> Result<Sequence> {
    c.expect(Kind::Cumulants)?;
    Sequence::new(c.flavor, Kind::Moments, moments_from_cumulants(c.flavor, &c.entries))
}

/// The sequence `f(m°, m^d)`: derivative of the moment-to-cumulant transform
/// at `base_moments` in the direction `direction_moments`. Linear in the
/// direction.
pub fn gateaux_derivative(base_moments: &Sequence, direction_moments: &Sequence) -> Result<Sequence> {
    base_moments.expect(Kind::Moments)?;
    direction_moments.expect(Kind::Moments)?;
    if base_moments.flavor != direction_moments.flavor || base_moments.len() != direction_moments.len() {
        return Err(Error::Mismatch("base and direction must share flavor and length".into()));
    }
    Sequence::new(
        base_moments.flavor,
        Kind::Cumulants,
        derivative_of_cumulants(base_moments.flavor, &base_moments.entries, &direction_moments.entries),
    )
}

/// A base point, a direction, and the derivative of the moment-to-cumulant
/// transform there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionalDerivative {
    pub base: Sequence,
    pub direction: Sequence,
    pub result: Sequence,
}

impl DirectionalDerivative {
    pub fn compute(base: Sequence, direction: Sequence) -> Result<Self> {
        let result = gateaux_derivative(&base, &direction)?;
        Ok(DirectionalDerivative { base, direction, result })
    }
}

/// `m_k` as a sum over enumerated partitions, for `k <= len`. Limited by the
/// enumeration cap.
pub fn moments_from_cumulants_by_partitions<S: Scalar>(flavor: Flavor, cumulants: &[S], cap: usize) -> Result<Vec<S>> {
    let mut m = Vec::with_capacity(cumulants.len());
    for k in 1..=cumulants.len() {
        let census = block_type_census(k, flavor == Flavor::Free, cap)?;
        let mut acc = S::zero();
        for (sizes, count) in census {
            let term = sizes.iter().fold(S::from_bigint(BigInt::from(count)), |t, &j| {
                t * cumulants[j - 1].clone() * S::from_rational(block_weight(flavor, j))
            });
            acc = acc + term;
        }
        m.push(acc);
    }
    Ok(m)
}

/// Inverse of [`moments_from_cumulants_by_partitions`] by triangular solve:
/// the one-block partition contributes `w(k)·c_k`, everything else only
/// involves lower cumulants.
pub fn cumulants_from_moments_by_partitions<S: Scalar>(flavor: Flavor, moments: &[S], cap: usize) -> Result<Vec<S>> {
    let mut c: Vec<S> = Vec::with_capacity(moments.len());
    for k in 1..=moments.len() {
        let census = block_type_census(k, flavor == Flavor::Free, cap)?;
        let mut acc = moments[k - 1].clone();
        for (sizes, count) in census {
            if sizes == [k] {
                continue;
            }
            let term = sizes.iter().fold(S::from_bigint(BigInt::from(count)), |t, &j| {
                t * c[j - 1].clone() * S::from_rational(block_weight(flavor, j))
            });
            acc = acc - term;
        }
        c.push(acc.div_rational(&block_weight(flavor, k)));
    }
    Ok(c)
}

/// Sequence-level wrapper of [`moments_from_cumulants_by_partitions`].
pub fn cumulants_to_moments_by_partitions(c: &Sequence, cap: usize) -> Result<Sequence> {
    c.expect(Kind::Cumulants)?;
    Sequence::new(c.flavor, Kind::Moments, moments_from_cumulants_by_partitions(c.flavor, &c.entries, cap)?)
}

/// Sequence-level wrapper of [`cumulants_from_moments_by_partitions`].
pub fn moments_to_cumulants_by_partitions(m: &Sequence, cap: usize) -> Result<Sequence> {
    m.expect(Kind::Moments)?;
    Sequence::new(m.flavor, Kind::Cumulants, cumulants_from_moments_by_partitions(m.flavor, &m.entries, cap)?)
}

/// Moments of the standard normal law of the flavor: Catalan numbers (free,
/// semicircle) or double factorials (classical, Gaussian) at even orders.
pub fn normal_moments(flavor: Flavor, len: usize) -> Sequence {
    let mut c = vec![QSqrt2::from_int(0); len.max(1)];
    if c.len() >= 2 {
        c[1] = QSqrt2::from_int(1);
    }
    let c = Sequence::new(flavor, Kind::Cumulants, c).expect("nonempty");
    cumulants_to_moments(&c).expect("cumulant input")
}

/// Moments of the symmetric Bernoulli law on {-1, +1}: `m_k = 1` for even `k`.
pub fn bernoulli_moments(flavor: Flavor, len: usize) -> Sequence {
    let entries = (1..=len.max(1))
        .map(|k| QSqrt2::from_int(if k % 2 == 0 { 1 } else { 0 }))
        .collect();
    Sequence::new(flavor, Kind::Moments, entries).expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use crate::partitions::DEFAULT_MAX_GROUND_SIZE as CAP;

    fn ints(v: &[i64]) -> Vec<QSqrt2> {
        v.iter().map(|&x| QSqrt2::from_int(x)).collect()
    }

    fn delta2(len: usize) -> Vec<QSqrt2> {
        (1..=len).map(|i| QSqrt2::from_int((i == 2) as i64)).collect()
    }

    #[test]
    fn semicircle_and_gaussian_cumulants() {
        let free = cumulants_from_moments(Flavor::Free, &ints(&[0, 1, 0, 2, 0, 5]));
        assert_eq!(free, delta2(6));
        let classical = cumulants_from_moments(Flavor::Classical, &ints(&[0, 1, 0, 3, 0, 15]));
        assert_eq!(classical, delta2(6));
        for flavor in Flavor::ALL {
            assert_eq!(cumulants_from_moments(flavor, &ints(&[0; 7])), ints(&[0; 7]));
        }
    }

    #[test]
    fn pair_partition_counts() {
        assert_eq!(
            moments_from_cumulants(Flavor::Free, &delta2(8)),
            ints(&[0, 1, 0, 2, 0, 5, 0, 14])
        );
        assert_eq!(
            moments_from_cumulants(Flavor::Classical, &delta2(8)),
            ints(&[0, 1, 0, 3, 0, 15, 0, 105])
        );
        for flavor in Flavor::ALL {
            assert_eq!(
                moments_from_cumulants_by_partitions(flavor, &delta2(8), CAP).unwrap(),
                moments_from_cumulants(flavor, &delta2(8))
            );
        }
    }

    #[test]
    fn bernoulli_cumulants() {
        // Free cumulants of the symmetric Bernoulli law: 0, 1, 0, -1, 0, 2, 0, -5.
        let c = cumulants_from_moments(Flavor::Free, bernoulli_moments(Flavor::Free, 8).entries());
        assert_eq!(c, ints(&[0, 1, 0, -1, 0, 2, 0, -5]));
        // Classical: κ_4 = m_4 - 3 m_2² = -2, stored as κ_4 / 3!.
        let c = cumulants_from_moments(Flavor::Classical, bernoulli_moments(Flavor::Classical, 4).entries());
        assert_eq!(c[3], QSqrt2::from_rational(rational(-1, 3)));
    }

    #[test]
    fn sequence_kind_is_checked() {
        let m = Sequence::from_ints(Flavor::Free, Kind::Moments, &[0, 1]).unwrap();
        assert!(cumulants_to_moments(&m).is_err());
        let c = moments_to_cumulants(&m).unwrap();
        assert_eq!(c.kind(), Kind::Cumulants);
        assert!(moments_to_cumulants(&c).is_err());
        assert!(Sequence::new(Flavor::Free, Kind::Moments, vec![]).is_err());
        let other = Sequence::from_ints(Flavor::Classical, Kind::Moments, &[0, 1]).unwrap();
        assert!(gateaux_derivative(&m, &other).is_err());
    }

    #[test]
    fn variance_condition() {
        let m = Sequence::from_ints(Flavor::Free, Kind::Moments, &[1, 0]).unwrap();
        assert_eq!(m.variance_nonnegative(), Some(false));
        assert_eq!(bernoulli_moments(Flavor::Free, 4).variance_nonnegative(), Some(true));
        let short = Sequence::from_ints(Flavor::Free, Kind::Moments, &[1]).unwrap();
        assert_eq!(short.variance_nonnegative(), None);
    }

    #[test]
    fn derivative_in_zero_direction_vanishes() {
        for flavor in Flavor::ALL {
            let base = bernoulli_moments(flavor, 8);
            let zero = base.with_entries(ints(&[0; 8]));
            assert!(gateaux_derivative(&base, &zero).unwrap().is_zero());
        }
    }

    #[test]
    fn partition_path_agrees_with_recursion() {
        let c: Vec<QSqrt2> = (1..=9)
            .map(|i| QSqrt2::new(rational(i, 3), rational(1 - i, 5)))
            .collect();
        for flavor in Flavor::ALL {
            let fast = moments_from_cumulants(flavor, &c);
            assert_eq!(moments_from_cumulants_by_partitions(flavor, &c, CAP).unwrap(), fast);
            assert_eq!(cumulants_from_moments_by_partitions(flavor, &fast, CAP).unwrap(), c);
        }
    }
}
