//! Arbitrary-precision rational scalars.
//!
//! Every quantity in this crate is exact: a [`Rat`] is a reduced fraction
//! with positive denominator, backed by `num-rational`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact rational number. Always stored reduced, denominator > 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `num/den`. Panics if `den == 0`; callers that handle untrusted
    /// input go through [`crate::parse::parse_rat`] instead.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational denominator must be nonzero");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Builds `num/den` from big integers, `None` if `den == 0`.
    pub fn from_big(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Rat(BigRational::new(num, den)))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse. `None` for zero.
    pub fn recip(&self) -> Option<Rat> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }
}

impl fmt::Display for Rat {
    /// Canonical form: `p` for integers, `p/q` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rat {
    type Err = crate::parse::SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::parse::parse_rat(s)
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_invariants() {
        let r = Rat::new(4, -6);
        assert_eq!(r, Rat::new(-2, 3));
        assert!(r.denom() > &BigInt::from(0));
        assert_eq!(Rat::new(0, 5), Rat::zero());
        assert_eq!(Rat::zero().to_string(), "0");
        assert_eq!(Rat::new(-2, 3).to_string(), "-2/3");
        assert_eq!(Rat::new(14, 7).to_string(), "2");
    }

    #[test]
    fn recip_and_div() {
        assert_eq!(Rat::new(3, 5).recip().unwrap(), Rat::new(5, 3));
        assert!(Rat::zero().recip().is_none());
        assert_eq!(&Rat::new(1, 2) / &Rat::new(3, 4), Rat::new(2, 3));
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-50i64..=50, 1i64..=20).prop_map(|(n, d)| Rat::new(n, d))
    }

    proptest! {
        // Field axioms on randomized triples, exact equality.
        #[test]
        fn ring_axioms(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }
    }
}
