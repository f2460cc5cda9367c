//! Elements of ℚ(z) with the z-adic valuation; integral elements form the
//! local ring ℚ[z]₍z₎ whose uniformizer is `z`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Rational, ScalarError, UPoly};

/// z-adic valuation; `Infinite` only for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

/// A rational function `num(z)/den(z)` in canonical form: coprime, monic
/// denominator, zero stored as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalScalar {
    num: UPoly,
    den: UPoly,
}

impl LocalScalar {
    /// Builds the canonical form of `num/den`.
    pub fn new(num: UPoly, den: UPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return Self { num: UPoly::zero(), den: UPoly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            Self { num, den }
        } else {
            let inv = lc.recip();
            Self { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        Self { num: UPoly::constant(q), den: UPoly::one() }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(k.into()))
    }

    pub fn from_poly(p: UPoly) -> Self {
        Self { num: p, den: UPoly::one() }
    }

    /// The uniformizer `z`.
    pub fn z() -> Self {
        Self::from_poly(UPoly::var())
    }

    pub fn z_pow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(UPoly::monomial(Rational::one(), k as usize))
        } else {
            Self { num: UPoly::one(), den: UPoly::monomial(Rational::one(), (-k) as usize) }
        }
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UPoly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The rational value if this is a constant.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// True when the element is a polynomial in `z`.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn valuation(&self) -> Valuation {
        match (self.num.ord0(), self.den.ord0()) {
            (None, _) => Valuation::Infinite,
            (Some(a), Some(b)) => Valuation::Finite(a as i64 - b as i64),
            (Some(_), None) => unreachable!("denominator is never zero"),
        }
    }

    pub fn is_integral(&self) -> bool {
        !self.den.coeff(0).is_zero()
    }

    /// Image in the residue field ℚ: evaluation at `z = 0`.
    pub fn reduce_residue(&self) -> Result<Rational, ScalarError> {
        if !self.is_integral() {
            return Err(ScalarError::NonIntegral);
        }
        Ok(self.num.coeff(0) / self.den.coeff(0))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalize(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn recip(&self) -> Self {
        Self::one().checked_div(self).expect("reciprocal of zero")
    }
}

/// Exact field operation on two local scalars.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arithmetic(a: &LocalScalar, b: &LocalScalar, op: FieldOp) -> Result<LocalScalar, ScalarError> {
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

impl Zero for LocalScalar {
    fn zero() -> Self {
        Self { num: UPoly::zero(), den: UPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for LocalScalar {
    fn one() -> Self {
        Self { num: UPoly::one(), den: UPoly::one() }
    }
}

impl<'a> Add<&'a LocalScalar> for &'a LocalScalar {
    type Output = LocalScalar;
    fn add(self, rhs: &LocalScalar) -> LocalScalar {
        if self.den == rhs.den {
            return LocalScalar::normalize(&self.num + &rhs.num, self.den.clone());
        }
        LocalScalar::normalize(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a LocalScalar> for &'a LocalScalar {
    type Output = LocalScalar;
    fn sub(self, rhs: &LocalScalar) -> LocalScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LocalScalar> for &'a LocalScalar {
    type Output = LocalScalar;
    fn mul(self, rhs: &LocalScalar) -> LocalScalar {
        if self.is_zero() || rhs.is_zero() {
            return LocalScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return LocalScalar { num: &self.num * &rhs.num, den: UPoly::one() };
        }
        LocalScalar::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a LocalScalar> for &'a LocalScalar {
    type Output = LocalScalar;
    fn div(self, rhs: &LocalScalar) -> LocalScalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &LocalScalar {
    type Output = LocalScalar;
    fn neg(self) -> LocalScalar {
        LocalScalar { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<LocalScalar> for LocalScalar {
            type Output = LocalScalar;
            fn $m(self, rhs: LocalScalar) -> LocalScalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a LocalScalar> for LocalScalar {
            type Output = LocalScalar;
            fn $m(self, rhs: &LocalScalar) -> LocalScalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for LocalScalar {
    type Output = LocalScalar;
    fn neg(self) -> LocalScalar {
        -&self
    }
}

impl PartialOrd for LocalScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order on canonical forms (used only for deterministic sorting).
impl Ord for LocalScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.den.cmp(&other.den).then_with(|| self.num.cmp(&other.num))
    }
}

impl fmt::Display for LocalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.fmt_with("z");
        let wrap = |s: String, poly: &UPoly| {
            if poly.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            return write!(f, "{num}");
        }
        let den = self.den.fmt_with("z");
        write!(f, "{}/{}", wrap(num, &self.num), wrap(den, &self.den))
    }
}

impl fmt::Debug for LocalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
