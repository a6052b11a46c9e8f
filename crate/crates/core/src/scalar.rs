//! Scalar traits shared by the exact and floating-point code paths.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Commutative ring with a rational embedding. Used for polynomial coefficients.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn from_rat(r: &BigRational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(&BigRational::from_integer(BigInt::from(n)))
    }
}

/// Ordered field with a floor function: f32, f64 and exact rationals.
pub trait Scalar: Ring + PartialOrd + Div<Output = Self> + FromPrimitive {
    fn floor(&self) -> Self;

    fn frac(&self) -> Self {
        self.clone() - self.floor()
    }
}

impl Ring for BigRational {
    fn from_rat(r: &BigRational) -> Self {
        r.clone()
    }
}

impl Scalar for BigRational {
    fn floor(&self) -> Self {
        BigRational::floor(self)
    }
}

macro_rules! float_scalar {
    ($t:ty, $conv:ident) => {
        impl Ring for $t {
            fn from_rat(r: &BigRational) -> Self {
                r.$conv().unwrap_or_else(|| {
                    if r.is_negative() {
                        <$t>::NEG_INFINITY
                    } else {
                        <$t>::INFINITY
                    }
                })
            }
        }

        impl Scalar for $t {
            fn floor(&self) -> Self {
                <$t>::floor(*self)
            }
        }
    };
}

float_scalar!(f64, to_f64);
float_scalar!(f32, to_f32);

impl Ring for Complex64 {
    fn from_rat(r: &BigRational) -> Self {
        Complex64::new(f64::from_rat(r), 0.0)
    }
}
