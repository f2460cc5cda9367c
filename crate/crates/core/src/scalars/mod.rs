//! Exact scalars: ℚ, the local ring ℚ[z]₍z₎ and its fraction field ℚ(z).

mod local;
mod upoly;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

pub use local::{field_arithmetic, FieldOp, LocalScalar, Valuation};
pub use upoly::UPoly;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("element is not integral (negative z-adic valuation)")]
    NonIntegral,
    #[error("division by zero")]
    DivisionByZero,
}

/// Coefficient fields used by the Weyl-algebra engine.
pub trait Field:
    Clone
    + Eq
    + Ord
    + Debug
    + Display
    + Zero
    + One
    + Send
    + Sync
    + 'static
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Neg<Output = Self>
{
    fn inv(&self) -> Self;
    fn from_rational(q: Rational) -> Self;
    /// The element as a rational number, when it lies in ℚ.
    fn to_rational(&self) -> Option<Rational>;

    fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    fn from_int(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(k.into()))
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Field for LocalScalar {
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_rational(q: Rational) -> Self {
        LocalScalar::from_rational(q)
    }
    fn to_rational(&self) -> Option<Rational> {
        self.as_rational()
    }
}

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
