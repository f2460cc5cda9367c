use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use smallvec::SmallVec;

/// Exponent vector `α` of `x^α` or `β` of `∂^β`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// How the extra commuting slot behaves in products.
///
/// `Central` is the uniformizer `z` (a central variable). `Homogenizing` is
/// the variable `h` of the homogenized Weyl algebra, where `∂x = x∂ + h²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extra {
    Central,
    Homogenizing,
}

/// A normal-ordered monomial `x^α ∂^β t^k` with layout `[α | β | k]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    e: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self { e: SmallVec::from_elem(0, 2 * n + 1) }
    }

    pub fn new(alpha: &[u32], beta: &[u32], t: u32) -> Self {
        assert_eq!(alpha.len(), beta.len(), "x and d exponent lengths differ");
        let mut e: SmallVec<[u32; 8]> = SmallVec::with_capacity(2 * alpha.len() + 1);
        e.extend_from_slice(alpha);
        e.extend_from_slice(beta);
        e.push(t);
        Self { e }
    }

    pub fn x(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.e[i] = 1;
        m
    }

    pub fn d(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.e[n + i] = 1;
        m
    }

    pub fn t_pow(n: usize, k: u32) -> Self {
        let mut m = Self::one(n);
        m.e[2 * n] = k;
        m
    }

    pub fn n(&self) -> usize {
        (self.e.len() - 1) / 2
    }

    pub fn exps(&self) -> &[u32] {
        &self.e
    }

    pub fn x_exp(&self, i: usize) -> u32 {
        self.e[i]
    }

    pub fn d_exp(&self, i: usize) -> u32 {
        self.e[self.n() + i]
    }

    pub fn t_exp(&self) -> u32 {
        self.e[self.e.len() - 1]
    }

    pub fn alpha(&self) -> &[u32] {
        &self.e[..self.n()]
    }

    pub fn beta(&self) -> &[u32] {
        let n = self.n();
        &self.e[n..2 * n]
    }

    pub fn with_t(&self, k: u32) -> Self {
        let mut m = self.clone();
        let last = m.e.len() - 1;
        m.e[last] = k;
        m
    }

    /// `|α| + |β|`; the extra slot has weight zero.
    pub fn bernstein_degree(&self) -> u32 {
        self.e[..self.e.len() - 1].iter().sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.e.iter().sum()
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.e.iter().zip(other.e.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self { e: self.e.iter().zip(other.e.iter()).map(|(a, b)| *a.max(b)).collect() }
    }

    /// `other / self` in the commutative sense; requires `self | other`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        Self { e: other.e.iter().zip(self.e.iter()).map(|(a, b)| a - b).collect() }
    }

    pub fn mul_commutative(&self, other: &Self) -> Self {
        Self { e: self.e.iter().zip(other.e.iter()).map(|(a, b)| a + b).collect() }
    }

    pub fn is_one(&self) -> bool {
        self.e.iter().all(|&a| a == 0)
    }

    pub fn from_exps(e: &[u32]) -> Self {
        debug_assert!(e.len() % 2 == 1);
        Self { e: SmallVec::from_slice(e) }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("z"))
    }
}

impl Monomial {
    /// Renders as `x1^2*d1`, using `tvar` for the extra slot; `1` when trivial.
    pub fn render(&self, tvar: &str) -> String {
        let n = self.n();
        let mut parts = Vec::new();
        let mut push = |name: String, k: u32| match k {
            0 => {}
            1 => parts.push(name),
            _ => parts.push(format!("{name}^{k}")),
        };
        push(tvar.to_string(), self.t_exp());
        for i in 0..n {
            push(format!("x{}", i + 1), self.x_exp(i));
        }
        for i in 0..n {
            push(format!("d{}", i + 1), self.d_exp(i));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Normal-ordered expansion of the product `a·b` of two monomials.
///
/// Uses `∂^β x^γ = Σ_ν ν! C(β,ν) C(γ,ν) x^{γ-ν} ∂^{β-ν}` coordinatewise; in the
/// homogenized algebra every contraction also carries `h^{2|ν|}`.
pub fn monomial_product(a: &Monomial, b: &Monomial, extra: Extra) -> Vec<(Monomial, BigInt)> {
    let n = a.n();
    debug_assert_eq!(n, b.n());
    // Per-coordinate contraction coefficients.
    let mut per: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let beta = a.d_exp(i);
        let gamma = b.x_exp(i);
        let top = beta.min(gamma);
        per.push((0..=top).map(|nu| factorial(nu) * binomial(beta, nu) * binomial(gamma, nu)).collect());
    }
    let base = a.mul_commutative(b);
    let mut out = Vec::new();
    let mut nu = vec![0u32; n];
    loop {
        let mut coef = BigInt::one();
        let mut m = base.clone();
        let mut contracted = 0u32;
        for i in 0..n {
            coef *= &per[i][nu[i] as usize];
            m.e[i] -= nu[i];
            m.e[n + i] -= nu[i];
            contracted += nu[i];
        }
        if extra == Extra::Homogenizing {
            m.e[2 * n] += 2 * contracted;
        }
        out.push((m, coef));
        // Advance the multi-counter.
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if (nu[i] as usize) + 1 < per[i].len() {
                nu[i] += 1;
                break;
            }
            nu[i] = 0;
            i += 1;
        }
    }
}
