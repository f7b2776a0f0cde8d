//! Exact scalars `p + r*sqrt(5)` with rational `p, r`.
//!
//! This is the coefficient field of the 48-variable optimization: the target
//! function is `(16/3) - 2*sqrt(5)*f_24`, so every quantity in the
//! enumeration lives in `Q[sqrt 5]` and can be compared exactly. Sign tests
//! avoid any square-root evaluation: for mixed-sign components the sign is
//! decided by comparing `p^2` against `5 r^2`.

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

pub type Rational = Ratio<i64>;

/// `p + r*sqrt(5)` with exact rational components.
///
/// ```
/// use num_rational::Ratio;
/// use sumsquares::quad::Quad5;
///
/// // 9 - 4*sqrt(5) is positive, but only just: 81 > 80
/// let x = Quad5::new(Ratio::new(9, 1), Ratio::new(-4, 1));
/// assert_eq!(x.signum(), 1);
/// assert!(x.to_f64() < 0.06);
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quad5 {
    pub p: Rational,
    pub r: Rational,
}

impl Quad5 {
    pub const fn new(p: Rational, r: Rational) -> Self {
        Quad5 { p, r }
    }

    pub fn from_integer(n: i64) -> Self {
        Quad5 {
            p: Ratio::new(n, 1),
            r: Ratio::zero(),
        }
    }

    pub fn from_rational(p: Rational) -> Self {
        Quad5 { p, r: Ratio::zero() }
    }

    pub fn zero() -> Self {
        Quad5::from_integer(0)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.r.is_zero()
    }

    /// Exact sign: -1, 0, or +1.
    pub fn signum(&self) -> i32 {
        sign_of(self.p, self.r)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    /// Pointwise positive part.
    pub fn positive_part(&self) -> Quad5 {
        if self.is_positive() {
            *self
        } else {
            Quad5::zero()
        }
    }

    pub fn scale(&self, k: Rational) -> Quad5 {
        Quad5 {
            p: self.p * k,
            r: self.r * k,
        }
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(self.p) + ratio_to_f64(self.r) * 5f64.sqrt()
    }
}

/// Exact sign of `p + r*sqrt(5)` for rational `p, r`.
///
/// Cross-multiplies into `i128` so no intermediate rational can overflow:
/// with `a = p.numer * r.denom` and `b = r.numer * p.denom` (denominators
/// are positive after `Ratio` normalization), the sign equals the sign of
/// `a + b*sqrt(5)`, decided by comparing `a^2` with `5 b^2` when the
/// components disagree in sign.
pub fn sign_of(p: Rational, r: Rational) -> i32 {
    let a = *p.numer() as i128 * *r.denom() as i128;
    let b = *r.numer() as i128 * *p.denom() as i128;
    sign_int_pair(a, b)
}

fn sign_int_pair(a: i128, b: i128) -> i32 {
    match (a.signum(), b.signum()) {
        (0, 0) => 0,
        (sa, 0) => sa as i32,
        (0, sb) => sb as i32,
        (sa, sb) if sa == sb => sa as i32,
        (sa, _) => {
            let a2 = a * a;
            let b2 = 5 * b * b;
            match (a2.cmp(&b2), sa > 0) {
                (Ordering::Equal, _) => 0,
                (Ordering::Greater, true) => 1,
                (Ordering::Greater, false) => -1,
                (Ordering::Less, true) => -1,
                (Ordering::Less, false) => 1,
            }
        }
    }
}

pub fn ratio_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl Add for Quad5 {
    type Output = Quad5;
    fn add(self, o: Quad5) -> Quad5 {
        Quad5 {
            p: self.p + o.p,
            r: self.r + o.r,
        }
    }
}

impl AddAssign for Quad5 {
    fn add_assign(&mut self, o: Quad5) {
        self.p += o.p;
        self.r += o.r;
    }
}

impl Sub for Quad5 {
    type Output = Quad5;
    fn sub(self, o: Quad5) -> Quad5 {
        Quad5 {
            p: self.p - o.p,
            r: self.r - o.r,
        }
    }
}

impl Neg for Quad5 {
    type Output = Quad5;
    fn neg(self) -> Quad5 {
        Quad5 {
            p: -self.p,
            r: -self.r,
        }
    }
}

impl Mul for Quad5 {
    type Output = Quad5;
    fn mul(self, o: Quad5) -> Quad5 {
        // (p1 + r1 s)(p2 + r2 s) = p1 p2 + 5 r1 r2 + (p1 r2 + p2 r1) s
        Quad5 {
            p: self.p * o.p + Ratio::new(5, 1) * self.r * o.r,
            r: self.p * o.r + self.r * o.p,
        }
    }
}

impl PartialOrd for Quad5 {
    fn partial_cmp(&self, other: &Quad5) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quad5 {
    fn cmp(&self, other: &Quad5) -> Ordering {
        match (*self - *other).signum() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl std::fmt::Display for Quad5 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.r.is_zero() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{} + {}*sqrt(5)", self.p, self.r)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: (i64, i64), r: (i64, i64)) -> Quad5 {
        Quad5::new(Ratio::new(p.0, p.1), Ratio::new(r.0, r.1))
    }

    #[test]
    fn sign_same_components() {
        assert_eq!(q((1, 2), (3, 1)).signum(), 1);
        assert_eq!(q((-1, 2), (-3, 1)).signum(), -1);
        assert_eq!(Quad5::zero().signum(), 0);
    }

    #[test]
    fn sign_mixed_components() {
        // 16/3 - 2 sqrt5 > 0 since (16/3)^2 = 256/9 > 20
        assert_eq!(q((16, 3), (-2, 1)).signum(), 1);
        // 4 - 2 sqrt5 < 0 since 16 < 20
        assert_eq!(q((4, 1), (-2, 1)).signum(), -1);
        // -4 + 2 sqrt5 > 0
        assert_eq!(q((-4, 1), (2, 1)).signum(), 1);
        // 9 - 4 sqrt5 > 0 since 81 > 80 (tight case)
        assert_eq!(q((9, 1), (-4, 1)).signum(), 1);
        assert_eq!(q((-9, 1), (4, 1)).signum(), -1);
    }

    #[test]
    fn golden_ratio_inverse() {
        // (1 + sqrt5)/2 * (-1 + sqrt5)/2 = 1
        let phi = q((1, 2), (1, 2));
        let conj = q((-1, 2), (1, 2));
        assert_eq!(phi * conj, Quad5::from_integer(1));
    }

    #[test]
    fn ordering_matches_float() {
        let a = q((18, 1), (0, 1));
        let b = q((0, 1), (8, 1)); // 8 sqrt5 = 17.889
        assert!(a > b);
        assert!((a.to_f64() - 18.0).abs() < 1e-12);
    }

    #[test]
    fn eighteen_equals_itself_through_arithmetic() {
        let direct = Quad5::from_integer(18);
        // 24 * (16/3)/24 * 9... accumulate in pieces: 9*(2/1) via mixed path
        let pieced = q((16, 3), (0, 1)).scale(Ratio::new(27, 8))
            + q((0, 1), (-2, 1)).scale(Ratio::new(0, 1));
        assert_eq!(direct, pieced);
        assert_eq!(direct.cmp(&pieced), Ordering::Equal);
    }
}
