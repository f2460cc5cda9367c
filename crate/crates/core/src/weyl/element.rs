use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::monomial::{monomial_product, Extra, Monomial};
use super::poly::Poly;
use crate::scalars::{Field, Rational};

/// A normal-ordered element `Σ c_{αβk} x^α ∂^β t^k` of the Weyl algebra over
/// the coefficient field `C`, with one extra commuting slot `t`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weyl<C> {
    n: usize,
    extra: Extra,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Field> Weyl<C> {
    pub fn zero(n: usize) -> Self {
        Self::zero_in(n, Extra::Central)
    }

    pub fn zero_in(n: usize, extra: Extra) -> Self {
        Self { n, extra, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, C::one())
    }

    pub fn constant(n: usize, c: C) -> Self {
        Self::term(Monomial::one(n), c)
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut w = Self::zero(m.n());
        w.add_term(m, c);
        w
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self::term(Monomial::x(n, i), C::one())
    }

    pub fn d(n: usize, i: usize) -> Self {
        Self::term(Monomial::d(n, i), C::one())
    }

    /// The extra central variable (`z` for the integral ring).
    pub fn t(n: usize) -> Self {
        Self::term(Monomial::t_pow(n, 1), C::one())
    }

    pub fn from_terms(n: usize, extra: Extra, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut w = Self::zero_in(n, extra);
        for (m, c) in terms {
            w.add_term(m, c);
        }
        w
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn extra(&self) -> Extra {
        self.extra
    }

    pub fn with_extra(mut self, extra: Extra) -> Self {
        self.extra = extra;
        self
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, C> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// The constant coefficient when the element is a scalar.
    pub fn as_scalar(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        debug_assert_eq!(m.n(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { n: self.n, extra: self.extra, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero_in(self.n, self.extra);
        }
        Self {
            n: self.n,
            extra: self.extra,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c)).collect(),
        }
    }

    /// Normal-ordered product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero_in(self.n, self.extra);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c12 = c1.clone() * c2;
                for (m, k) in monomial_product(m1, m2, self.extra) {
                    out.add_term(m, c12.clone() * &C::from_rational(Rational::from_integer(k)));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.n).with_extra(self.extra), |acc, _| acc.mul(self))
    }

    /// `c · m · self` for a single term on the left.
    pub fn left_mul_term(&self, m: &Monomial, c: &C) -> Self {
        Self::term(m.clone(), c.clone()).with_extra(self.extra).mul(self)
    }

    /// Maximal `|α|+|β|` over the terms; `None` for zero.
    pub fn bernstein_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::bernstein_degree).max()
    }

    /// Terms of top Bernstein degree.
    pub fn top_part(&self) -> Self {
        match self.bernstein_degree() {
            None => self.clone(),
            Some(d) => Self {
                n: self.n,
                extra: self.extra,
                terms: self.terms.iter().filter(|(m, _)| m.bernstein_degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
            },
        }
    }

    /// Principal symbol in `ℚ[x1..xn, ξ1..ξn]` (the extra slot is ignored,
    /// matching its weight zero); `None` for zero.
    pub fn principal_symbol(&self) -> Option<Poly<C>> {
        let top = self.top_part();
        if top.is_zero() {
            return None;
        }
        let mut p = Poly::zero(2 * self.n);
        for (m, c) in &top.terms {
            let e: Vec<u32> = m.alpha().iter().chain(m.beta()).copied().collect();
            p.add_term(e, c.clone());
        }
        Some(p)
    }

    /// Substitution of generators by elements, respecting normal order:
    /// each monomial `x^α ∂^β t^k` maps to `X^α D^β t^k` (products taken
    /// left to right, `t` central).
    fn substitute(&self, xs: &[Self], ds: &[Self]) -> Self {
        let mut out = Self::zero_in(self.n, self.extra);
        for (m, c) in &self.terms {
            let mut acc = Self::term(Monomial::t_pow(self.n, m.t_exp()), c.clone()).with_extra(self.extra);
            for (i, x) in xs.iter().enumerate() {
                for _ in 0..m.x_exp(i) {
                    acc = acc.mul(x);
                }
            }
            for (i, d) in ds.iter().enumerate() {
                for _ in 0..m.d_exp(i) {
                    acc = acc.mul(d);
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// The automorphism `x_i ↦ ∂_i`, `∂_i ↦ -x_i`.
    pub fn fourier(&self) -> Self {
        let n = self.n;
        let xs: Vec<Self> = (0..n).map(|i| Self::d(n, i).with_extra(self.extra)).collect();
        let ds: Vec<Self> = (0..n).map(|i| Self::x(n, i).neg().with_extra(self.extra)).collect();
        self.substitute(&xs, &ds)
    }

    /// The inverse automorphism `x_i ↦ -∂_i`, `∂_i ↦ x_i`.
    pub fn fourier_inverse(&self) -> Self {
        let n = self.n;
        let xs: Vec<Self> = (0..n).map(|i| Self::d(n, i).neg().with_extra(self.extra)).collect();
        let ds: Vec<Self> = (0..n).map(|i| Self::x(n, i).with_extra(self.extra)).collect();
        self.substitute(&xs, &ds)
    }

    /// The transposition anti-automorphism `x ↦ x`, `∂ ↦ -∂`, reversing
    /// products. It identifies right modules with left modules.
    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero_in(n, self.extra);
        for (m, c) in &self.terms {
            // τ(x^α ∂^β t^k) = (-1)^{|β|} ∂^β x^α t^k
            let sign = if m.beta().iter().sum::<u32>() % 2 == 0 { C::one() } else { -C::one() };
            let dpart = Monomial::new(&vec![0; n], m.beta(), m.t_exp());
            let xpart = Monomial::new(m.alpha(), &vec![0; n], 0);
            for (mm, k) in monomial_product(&dpart, &xpart, self.extra) {
                out.add_term(mm, c.clone() * &sign * &C::from_rational(Rational::from_integer(k)));
            }
        }
        out
    }

    /// Action on a polynomial in `x1..xn` (`x_i` multiplies, `∂_i`
    /// differentiates). The extra slot must be absent.
    pub fn apply_to_polynomial(&self, f: &Poly<C>) -> Poly<C> {
        assert_eq!(f.nvars(), self.n, "polynomial has the wrong number of variables");
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            assert_eq!(m.t_exp(), 0, "extra variable has no action on polynomials");
            let mut g = f.clone();
            for i in 0..self.n {
                for _ in 0..m.d_exp(i) {
                    g = g.derivative(i);
                }
            }
            for i in 0..self.n {
                g = g.mul_var_pow(i, m.x_exp(i));
            }
            out = out.add(&g.scale(c));
        }
        out
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Weyl<D> {
        Weyl::from_terms(self.n, self.extra, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Maximal exponent of the extra slot.
    pub fn max_t(&self) -> u32 {
        self.terms.keys().map(Monomial::t_exp).max().unwrap_or(0)
    }

    /// Set the extra slot to one (`h = 1` or `z = 1`) and collect.
    pub fn drop_t(&self) -> Self {
        Self::from_terms(self.n, Extra::Central, self.terms.iter().map(|(m, c)| (m.with_t(0), c.clone())))
    }

    /// Terms whose extra exponent equals `k`, with that exponent cleared.
    pub fn t_coefficient(&self, k: u32) -> Self {
        Self::from_terms(
            self.n,
            self.extra,
            self.terms.iter().filter(|(m, _)| m.t_exp() == k).map(|(m, c)| (m.with_t(0), c.clone())),
        )
    }

    /// Lowest exponent of the extra slot over the terms.
    pub fn min_t(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::t_exp).min()
    }

    /// Divide by `t^k` (all terms must carry at least `t^k`).
    pub fn div_t(&self, k: u32) -> Self {
        Self::from_terms(
            self.n,
            self.extra,
            self.terms.iter().map(|(m, c)| {
                debug_assert!(m.t_exp() >= k);
                (m.with_t(m.t_exp() - k), c.clone())
            }),
        )
    }

    pub fn mul_t(&self, k: u32) -> Self {
        Self::from_terms(self.n, self.extra, self.terms.iter().map(|(m, c)| (m.with_t(m.t_exp() + k), c.clone())))
    }

    pub fn render(&self, tvar: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        // Highest Bernstein degree first, then the storage order reversed.
        let mut items: Vec<(&Monomial, &C)> = self.terms.iter().collect();
        items.sort_by(|a, b| b.0.bernstein_degree().cmp(&a.0.bernstein_degree()).then_with(|| b.0.cmp(a.0)));
        for (m, c) in items {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                _ => (false, cs),
            };
            let mag = if mag.contains(' ') { format!("({mag})") } else { mag };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mon = m.render(tvar);
            if m.is_one() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&mon);
            } else {
                out.push_str(&format!("{mag}*{mon}"));
            }
        }
        out
    }
}

impl<C: Field> fmt::Debug for Weyl<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

/// Falling factorial `s(s-1)...(s-k+1)`, the value of `x^k ∂^k` in terms of
/// the Euler operator `θ = x∂` when `n = 1`.
pub fn falling_factorial(k: u32) -> crate::scalars::UPoly {
    use crate::scalars::UPoly;
    let mut acc = UPoly::one();
    for j in 0..k {
        acc = &acc * &UPoly::from_coeffs(vec![Rational::from_integer((-(j as i64)).into()), Rational::one()]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    type W = Weyl<Rational>;

    #[test]
    fn product_examples() {
        let x = W::x(1, 0);
        let d = W::d(1, 0);
        assert_eq!(d.mul(&x), x.mul(&d).add(&W::one(1)));
        let x1 = W::x(2, 0);
        let x2 = W::x(2, 1);
        assert_eq!(x1.mul(&x2), W::term(Monomial::new(&[1, 1], &[0, 0], 0), Rational::one()));
        // ∂ x^2 = x^2 ∂ + 2x
        let lhs = d.mul(&x.pow(2));
        let rhs = x.pow(2).mul(&d).add(&x.scale(&Rational::from_integer(2.into())));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degrees_and_symbols() {
        let x = W::x(1, 0);
        let d = W::d(1, 0);
        let one = W::one(1);
        assert_eq!(x.pow(2).mul(&d).add(&one).bernstein_degree(), Some(3));
        assert_eq!(d.mul(&x.pow(3)).bernstein_degree(), Some(4));
        let x1d2 = W::x(2, 0).mul(&W::d(2, 1)).sub(&W::x(2, 1).mul(&W::d(2, 0)));
        assert_eq!(x1d2.bernstein_degree(), Some(2));
        let e = x.mul(&d).sub(&one.scale(&Rational::from_integer(5.into())));
        let s = e.principal_symbol().unwrap();
        assert_eq!(s.render(&super::super::poly::symbol_names(1)), "x1*xi1");
        assert!(W::zero(1).principal_symbol().is_none());
    }

    #[test]
    fn fourier_examples() {
        let x = W::x(1, 0);
        let d = W::d(1, 0);
        assert_eq!(x.fourier(), d);
        // x∂ + 1 ↦ ∂(-x) + 1 = -x∂
        let e = x.mul(&d).add(&W::one(1));
        assert_eq!(e.fourier(), x.mul(&d).neg());
        let x1d2 = W::x(2, 0).mul(&W::d(2, 1));
        assert_eq!(x1d2.fourier().fourier().fourier().fourier(), x1d2);
        assert_eq!(e.fourier().fourier_inverse(), e);
    }

    #[test]
    fn transpose_is_anti_automorphism() {
        let x = W::x(1, 0);
        let d = W::d(1, 0);
        let a = x.mul(&d).add(&x.pow(2));
        let b = d.pow(2).sub(&x);
        assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn polynomial_action() {
        let x = W::x(1, 0);
        let d = W::d(1, 0);
        let xv = Poly::<Rational>::var(1, 0);
        assert_eq!(d.apply_to_polynomial(&xv.pow(3)), xv.pow(2).scale(&Rational::from_integer(3.into())));
        assert_eq!(x.mul(&d).apply_to_polynomial(&xv.pow(5)), xv.pow(5).scale(&Rational::from_integer(5.into())));
        assert_eq!(d.mul(&x).apply_to_polynomial(&Poly::one(1)), Poly::one(1));
    }

    #[test]
    fn falling_factorial_matches_euler_operator() {
        // x^2 ∂^2 = θ(θ - 1)
        let ff = falling_factorial(2);
        assert_eq!(ff, crate::scalars::UPoly::from_i64s(&[0, -1, 1]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_weyl(n: usize) -> impl Strategy<Value = W> {
            prop::collection::vec((prop::collection::vec(0u32..3, 2 * n), -4i64..=4), 0..5).prop_map(move |terms| {
                W::from_terms(
                    n,
                    Extra::Central,
                    terms.into_iter().map(|(e, c)| (Monomial::new(&e[..n], &e[n..], 0), Rational::from_integer(c.into()))),
                )
            })
        }

        fn arb_poly() -> impl Strategy<Value = Poly<Rational>> {
            prop::collection::vec(((0u32..4, 0u32..4), -5i64..=5), 0..5).prop_map(|terms| {
                Poly::from_terms(2, terms.into_iter().map(|((a, b), c)| (vec![a, b], Rational::from_integer(c.into()))))
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn product_is_associative(a in arb_weyl(2), b in arb_weyl(2), c in arb_weyl(2)) {
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            }

            #[test]
            fn product_distributes(a in arb_weyl(2), b in arb_weyl(2), c in arb_weyl(2)) {
                prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                prop_assert_eq!(b.add(&c).mul(&a), b.mul(&a).add(&c.mul(&a)));
            }

            #[test]
            fn bernstein_degree_is_additive(a in arb_weyl(2), b in arb_weyl(2)) {
                if let (Some(da), Some(db)) = (a.bernstein_degree(), b.bernstein_degree()) {
                    prop_assert_eq!(a.mul(&b).bernstein_degree(), Some(da + db));
                    let sym = a.mul(&b).principal_symbol().unwrap();
                    prop_assert_eq!(sym, a.principal_symbol().unwrap().mul(&b.principal_symbol().unwrap()));
                }
            }

            #[test]
            fn action_on_polynomials_is_a_module_action(a in arb_weyl(2), b in arb_weyl(2), f in arb_poly()) {
                prop_assert_eq!(a.mul(&b).apply_to_polynomial(&f), a.apply_to_polynomial(&b.apply_to_polynomial(&f)));
            }

            #[test]
            fn fourier_is_an_automorphism(a in arb_weyl(2), b in arb_weyl(2)) {
                prop_assert_eq!(a.mul(&b).fourier(), a.fourier().mul(&b.fourier()));
                prop_assert_eq!(a.fourier().fourier_inverse(), a.clone());
                prop_assert_eq!(a.fourier_inverse().fourier(), a.clone());
                prop_assert_eq!(a.bernstein_degree(), a.fourier().bernstein_degree());
            }

            #[test]
            fn transpose_reverses_products(a in arb_weyl(2), b in arb_weyl(2)) {
                prop_assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
                prop_assert_eq!(a.transpose().transpose(), a.clone());
            }
        }
    }
}
