//! Normal-ordered arithmetic in the Weyl algebra `W_n(R)`.
//!
//! [`Weyl`] is the generic engine type over a coefficient field with one
//! extra commuting slot. [`WeylElement`] is the user-facing element carrying a
//! [`RingTag`]; its coefficients live in ℚ(z) and are restricted by the tag.

mod element;
mod monomial;
mod poly;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

pub use element::{falling_factorial, Weyl};
pub use monomial::{monomial_product, Extra, Monomial, MultiIndex};
pub use poly::{symbol_names, x_names, Poly};

use crate::scalars::{LocalScalar, Rational, UPoly};

/// Coefficient ring of a Weyl algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingTag {
    /// `W_n(ℚ)`
    RationalField,
    /// `W_n(ℚ(z))`
    LocalField,
    /// `W_n(ℚ[z])`, `z` central; stand-in for `W_n(o_K)`.
    PolynomialZ,
}

impl RingTag {
    pub fn is_field(self) -> bool {
        !matches!(self, RingTag::PolynomialZ)
    }

    pub fn admits(self, c: &LocalScalar) -> bool {
        match self {
            RingTag::RationalField => c.is_constant(),
            RingTag::LocalField => true,
            RingTag::PolynomialZ => c.is_polynomial(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RingTag::RationalField => "QQ",
            RingTag::LocalField => "QQ(z)",
            RingTag::PolynomialZ => "QQ[z]",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("operands live in different Weyl algebras")]
    MixedAmbient,
    #[error("operation undefined on the zero element")]
    ZeroElement,
    #[error("coefficient {0} does not belong to the ring {1}")]
    RingMismatch(String, &'static str),
}

/// An element of `W_n(R)` for `R` given by its ring tag.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    ring: RingTag,
    body: Weyl<LocalScalar>,
}

impl WeylElement {
    /// Wraps a body, checking every coefficient lies in the tagged ring.
    pub fn new(ring: RingTag, body: Weyl<LocalScalar>) -> Result<Self, WeylError> {
        for c in body.terms().values() {
            if !ring.admits(c) {
                return Err(WeylError::RingMismatch(c.to_string(), ring.name()));
            }
        }
        debug_assert!(body.terms().keys().all(|m| m.t_exp() == 0));
        Ok(Self { ring, body })
    }

    pub fn zero(n: usize, ring: RingTag) -> Self {
        Self { ring, body: Weyl::zero(n) }
    }

    pub fn one(n: usize, ring: RingTag) -> Self {
        Self { ring, body: Weyl::one(n) }
    }

    pub fn scalar(n: usize, ring: RingTag, c: LocalScalar) -> Result<Self, WeylError> {
        Self::new(ring, Weyl::constant(n, c))
    }

    pub fn x(n: usize, ring: RingTag, i: usize) -> Self {
        Self { ring, body: Weyl::x(n, i) }
    }

    pub fn d(n: usize, ring: RingTag, i: usize) -> Self {
        Self { ring, body: Weyl::d(n, i) }
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn ambient_n(&self) -> usize {
        self.body.n()
    }

    pub fn body(&self) -> &Weyl<LocalScalar> {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Terms keyed by `(α, β)`.
    pub fn terms(&self) -> BTreeMap<(MultiIndex, MultiIndex), LocalScalar> {
        self.body
            .terms()
            .iter()
            .map(|(m, c)| ((MultiIndex(m.alpha().to_vec()), MultiIndex(m.beta().to_vec())), c.clone()))
            .collect()
    }

    fn check_same(&self, other: &Self) -> Result<(), WeylError> {
        if self.ring != other.ring || self.ambient_n() != other.ambient_n() {
            return Err(WeylError::MixedAmbient);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_same(other)?;
        Ok(Self { ring: self.ring, body: self.body.add(&other.body) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_same(other)?;
        Ok(Self { ring: self.ring, body: self.body.sub(&other.body) })
    }

    pub fn neg(&self) -> Self {
        Self { ring: self.ring, body: self.body.neg() }
    }

    pub fn scale(&self, c: &LocalScalar) -> Result<Self, WeylError> {
        Self::new(self.ring, self.body.scale(c))
    }

    /// Normal-ordered product `self · other`.
    pub fn normal_product(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_same(other)?;
        Ok(Self { ring: self.ring, body: self.body.mul(&other.body) })
    }

    pub fn bernstein_degree(&self) -> Result<u32, WeylError> {
        self.body.bernstein_degree().ok_or(WeylError::ZeroElement)
    }

    pub fn principal_symbol(&self) -> Result<Poly<LocalScalar>, WeylError> {
        self.body.principal_symbol().ok_or(WeylError::ZeroElement)
    }

    pub fn fourier(&self) -> Self {
        Self { ring: self.ring, body: self.body.fourier() }
    }

    pub fn transpose(&self) -> Self {
        Self { ring: self.ring, body: self.body.transpose() }
    }

    pub fn apply_to_polynomial(&self, f: &Poly<LocalScalar>) -> Result<Poly<LocalScalar>, WeylError> {
        for c in f.terms().values() {
            if !self.ring.admits(c) {
                return Err(WeylError::RingMismatch(c.to_string(), self.ring.name()));
            }
        }
        Ok(self.body.apply_to_polynomial(f))
    }

    /// Engine form over ℚ: for `PolynomialZ` the powers of `z` move into the
    /// extra monomial slot. Fails for `LocalField`-only coefficients.
    pub fn to_rational_engine(&self) -> Result<Weyl<Rational>, WeylError> {
        let n = self.ambient_n();
        let mut out = Weyl::zero(n);
        for (m, c) in self.body.terms() {
            if !c.is_polynomial() {
                return Err(WeylError::RingMismatch(c.to_string(), RingTag::PolynomialZ.name()));
            }
            for (k, q) in c.numerator().coeffs().iter().enumerate() {
                if !q.is_zero() {
                    out.add_term(m.with_t(k as u32), q.clone());
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`to_rational_engine`](Self::to_rational_engine).
    pub fn from_rational_engine(ring: RingTag, w: &Weyl<Rational>) -> Self {
        let n = w.n();
        let mut body = Weyl::zero(n);
        for (m, q) in w.terms() {
            let c = LocalScalar::from_poly(UPoly::monomial(q.clone(), m.t_exp() as usize));
            body.add_term(m.with_t(0), c);
        }
        debug_assert!(ring != RingTag::RationalField || w.max_t() == 0);
        Self { ring, body }
    }

    pub fn from_local_engine(ring: RingTag, w: &Weyl<LocalScalar>) -> Result<Self, WeylError> {
        Self::new(ring, w.clone())
    }

    /// Reinterpret under another ring tag (coefficients are re-checked).
    pub fn retag(&self, ring: RingTag) -> Result<Self, WeylError> {
        Self::new(ring, self.body.clone())
    }

    /// Entrywise evaluation at `z = 0`; requires integral coefficients.
    pub fn reduce_mod_z(&self) -> Result<Self, crate::scalars::ScalarError> {
        let mut body = Weyl::zero(self.ambient_n());
        for (m, c) in self.body.terms() {
            body.add_term(m.clone(), LocalScalar::from_rational(c.reduce_residue()?));
        }
        Ok(Self { ring: RingTag::RationalField, body })
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body.render("z"))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.ring.name(), self.body.render("z"))
    }
}

/// Convenience: the element `c` as a rational constant.
pub fn rational_constant(n: usize, c: Rational) -> WeylElement {
    WeylElement { ring: RingTag::RationalField, body: Weyl::constant(n, LocalScalar::from_rational(c)) }
}

/// Converts a ℚ-polynomial into the ℚ(z) polynomial type.
pub fn lift_poly(p: &Poly<Rational>) -> Poly<LocalScalar> {
    p.map_coeffs(|c| LocalScalar::from_rational(c.clone()))
}

#[doc(hidden)]
pub fn one_local() -> LocalScalar {
    LocalScalar::one()
}
