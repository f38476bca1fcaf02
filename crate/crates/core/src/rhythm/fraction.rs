use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A non-negative rational number, always kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };
    pub const ONE: Fraction = Fraction { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Fraction(format!("{num}/0 has a zero denominator")));
        }
        Ok(Self::reduced(num as u128, den as u128))
    }

    fn reduced(num: u128, den: u128) -> Self {
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        Fraction {
            num: u64::try_from(num).expect("numerator fits in 64 bits"),
            den: u64::try_from(den).expect("denominator fits in 64 bits"),
        }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// Multiply by `k / d`.
    pub fn scale(self, k: u64, d: u64) -> Self {
        assert!(d != 0, "scale by k/0");
        Self::reduced(self.num as u128 * k as u128, self.den as u128 * d as u128)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Whether the denominator has no prime factors other than 2 and 3.
    pub fn is_three_smooth(self) -> bool {
        let mut d = self.den;
        for p in [2, 3] {
            while d.is_multiple_of(p) {
                d /= p;
            }
        }
        d == 1
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Fraction {
    type Output = Fraction;

    fn add(self, rhs: Fraction) -> Fraction {
        let (a, b) = (self.num as u128, self.den as u128);
        let (c, d) = (rhs.num as u128, rhs.den as u128);
        Fraction::reduced(a * d + c * b, b * d)
    }
}

impl Sub for Fraction {
    type Output = Fraction;

    /// Panics if the result would be negative.
    fn sub(self, rhs: Fraction) -> Fraction {
        let (a, b) = (self.num as u128, self.den as u128);
        let (c, d) = (rhs.num as u128, rhs.den as u128);
        let left = a * d;
        let right = c * b;
        assert!(left >= right, "fraction subtraction below zero");
        Fraction::reduced(left - right, b * d)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Fraction(format!("cannot read `{s}` as a fraction"));
        let (n, d) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
        Fraction::new(n.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(n: u64, d: u64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    #[test]
    fn reduces_on_construction() {
        assert_eq!(f(6, 36), f(1, 6));
        assert_eq!(f(0, 5), Fraction::ZERO);
        assert_eq!(f(0, 5).den(), 1);
        assert!(Fraction::new(1, 0).is_err());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(f(5, 18).to_string(), "5/18");
        assert_eq!("10/36".parse::<Fraction>().unwrap(), f(5, 18));
        assert_eq!("1".parse::<Fraction>().unwrap(), Fraction::ONE);
        assert!("x/2".parse::<Fraction>().is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(f(1, 3) + f(1, 6), f(1, 2));
        assert_eq!(f(1, 2) - f(1, 3), f(1, 6));
        assert_eq!(f(1, 4).scale(2, 3), f(1, 6));
        assert!(f(1, 3) < f(3, 8));
    }

    #[test]
    fn smoothness() {
        assert!(f(5, 36).is_three_smooth());
        assert!(!f(1, 5).is_three_smooth());
    }

    proptest! {
        #[test]
        fn order_matches_cross_multiplication(a in 0u64..500, b in 1u64..500, c in 0u64..500, d in 1u64..500) {
            let (x, y) = (f(a, b), f(c, d));
            prop_assert_eq!(x.cmp(&y), (a * d).cmp(&(c * b)));
            prop_assert_eq!(x.num().gcd(&x.den()), 1);
        }

        #[test]
        fn add_then_sub(a in 0u64..500, b in 1u64..500, c in 0u64..500, d in 1u64..500) {
            let (x, y) = (f(a, b), f(c, d));
            prop_assert_eq!((x + y) - y, x);
        }
    }
}
