use super::{format_rational, integer, rational, sign_of, Rational, Scalar};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// An element `rat + irr·√2` of the quadratic ring Q[√2].
///
/// The pair `(rat, irr)` is the canonical representation: since √2 is
/// irrational, two elements are equal iff both components are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    rat: Rational,
    irr: Rational,
}

impl QSqrt2 {
    pub fn new(rat: Rational, irr: Rational) -> Self {
        QSqrt2 { rat, irr }
    }

    pub fn from_rational(rat: Rational) -> Self {
        QSqrt2 {
            rat,
            irr: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(integer(n))
    }

    pub fn sqrt2() -> Self {
        QSqrt2::new(Rational::zero(), Rational::one())
    }

    /// β = 1/√2 = √2/2, the central-limit dilation factor.
    pub fn beta() -> Self {
        QSqrt2::new(Rational::zero(), rational(1, 2))
    }

    /// The eigenvalue 2^{1-k/2} = 2·β^k attached to order `k`.
    pub fn clt_eigenvalue(k: u32) -> Self {
        Self::beta().pow(k).scale(&integer(2))
    }

    pub fn rat(&self) -> &Rational {
        &self.rat
    }

    pub fn irr(&self) -> &Rational {
        &self.irr
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QSqrt2::new(&self.rat * r, &self.irr * r)
    }

    /// Exact power by repeated squaring.
    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QSqrt2::from_int(1);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Conjugate `rat - irr·√2`.
    pub fn conjugate(&self) -> Self {
        QSqrt2::new(self.rat.clone(), -self.irr.clone())
    }

    /// Field norm rat² - 2·irr².
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - integer(2) * &self.irr * &self.irr
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conjugate().scale(&n.recip()))
    }

    /// Exact sign of the real number `rat + irr·√2`.
    pub fn signum(&self) -> i32 {
        let a = sign_of(&self.rat);
        let b = sign_of(&self.irr);
        if a == 0 || b == 0 || a == b {
            return if a != 0 { a } else { b };
        }
        // Opposite signs: compare rat² with 2·irr².
        let lhs = &self.rat * &self.rat;
        let rhs = integer(2) * &self.irr * &self.irr;
        match lhs.cmp(&rhs) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64().unwrap_or(f64::NAN)
            + self.irr.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }

    /// The wire form `["p/q", "r/s"]`.
    pub fn to_pair(&self) -> [String; 2] {
        [format_rational(&self.rat), format_rational(&self.irr)]
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            write!(f, "{}", self.rat)
        } else if self.rat.is_zero() {
            write!(f, "{}*sqrt2", self.irr)
        } else if self.irr.is_negative() {
            write!(f, "{} - {}*sqrt2", self.rat, self.irr.abs())
        } else {
            write!(f, "{} + {}*sqrt2", self.rat, self.irr)
        }
    }
}

impl Add<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.rat + &rhs.rat, &self.irr + &rhs.irr)
    }
}

impl Sub<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.rat - &rhs.rat, &self.irr - &rhs.irr)
    }
}

impl Mul<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        let rat = &self.rat * &rhs.rat + integer(2) * &self.irr * &rhs.irr;
        let irr = &self.rat * &rhs.irr + &self.irr * &rhs.rat;
        QSqrt2::new(rat, irr)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, rhs: QSqrt2) -> QSqrt2 { (&self).$m(&rhs) }
        }
        impl $tr<&QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $m(self, rhs: &QSqrt2) -> QSqrt2 { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl AddAssign<&QSqrt2> for QSqrt2 {
    fn add_assign(&mut self, rhs: &QSqrt2) {
        self.rat += &rhs.rat;
        self.irr += &rhs.irr;
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.rat, -self.irr)
    }
}

impl From<Rational> for QSqrt2 {
    fn from(r: Rational) -> Self {
        QSqrt2::from_rational(r)
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        QSqrt2::from_int(0)
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        QSqrt2::from_int(1)
    }
}

impl Scalar for QSqrt2 {
    fn from_rational(r: Rational) -> Self {
        QSqrt2::from_rational(r)
    }
    fn div_rational(self, r: &Rational) -> Self {
        QSqrt2::new(self.rat / r, self.irr / r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: (i64, i64), b: (i64, i64)) -> QSqrt2 {
        QSqrt2::new(rational(a.0, a.1), rational(b.0, b.1))
    }

    #[test]
    fn pow_examples() {
        assert_eq!(QSqrt2::sqrt2().pow(2), QSqrt2::from_int(2));
        assert_eq!(QSqrt2::beta().pow(1), QSqrt2::beta());
        assert_eq!(QSqrt2::clt_eigenvalue(4), QSqrt2::from_rational(rational(1, 2)));
        assert_eq!(QSqrt2::clt_eigenvalue(2), QSqrt2::from_int(1));
        assert_eq!(QSqrt2::clt_eigenvalue(3), QSqrt2::beta());
        assert_eq!(QSqrt2::beta().pow(0), QSqrt2::from_int(1));
    }

    #[test]
    fn signs_and_order() {
        // 3 - 2√2 ≈ 0.17 > 0, 1 - √2 < 0, 7 - 5√2 ≈ -0.07 < 0
        assert_eq!(q((3, 1), (-2, 1)).signum(), 1);
        assert_eq!(q((1, 1), (-1, 1)).signum(), -1);
        assert_eq!(q((7, 1), (-5, 1)).signum(), -1);
        assert_eq!(q((-7, 1), (5, 1)).signum(), 1);
        assert_eq!(QSqrt2::from_int(0).signum(), 0);
        assert!(QSqrt2::beta() < QSqrt2::from_int(1));
        assert!(QSqrt2::sqrt2() > QSqrt2::from_rational(rational(141, 100)));
        assert!(QSqrt2::sqrt2() < QSqrt2::from_rational(rational(142, 100)));
    }

    #[test]
    fn reciprocal() {
        let x = q((1, 1), (1, 1));
        assert_eq!(&x * &x.recip().unwrap(), QSqrt2::from_int(1));
        assert!(QSqrt2::from_int(0).recip().is_none());
    }

    fn arb_q() -> impl Strategy<Value = QSqrt2> {
        (-50i64..50, 1i64..12, -50i64..50, 1i64..12).prop_map(|(a, b, c, d)| q((a, b), (c, d)))
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_q(), y in arb_q(), z in arb_q()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
        }

        #[test]
        fn signum_agrees_with_float(x in arb_q()) {
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(x.signum(), if f > 0.0 { 1 } else { -1 });
            }
        }
    }
}
