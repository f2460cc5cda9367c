use std::fmt;

use num_traits::Zero;

use crate::factor::factor;
use crate::scalars::{Field, Rational, UPoly};
use crate::weyl::{symbol_names, Poly};

use super::ModuleError;

/// One irreducible component of a characteristic variety: the prime ideal
/// (given by generators; empty for the zero ideal) and its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleComponent {
    pub prime: Vec<Poly<Rational>>,
    pub multiplicity: u32,
}

/// The characteristic cycle: components sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharCycle {
    pub n: usize,
    pub components: Vec<CycleComponent>,
}

impl CharCycle {
    pub fn empty(n: usize) -> Self {
        Self { n, components: Vec::new() }
    }

    pub fn from_components(n: usize, comps: impl IntoIterator<Item = (Vec<Poly<Rational>>, u32)>) -> Self {
        let mut c = Self::empty(n);
        for (p, m) in comps {
            c.add_component(p, m);
        }
        c
    }

    fn add_component(&mut self, prime: Vec<Poly<Rational>>, mult: u32) {
        if mult == 0 {
            return;
        }
        if let Some(c) = self.components.iter_mut().find(|c| c.prime == prime) {
            c.multiplicity += mult;
        } else {
            self.components.push(CycleComponent { prime, multiplicity: mult });
            self.components.sort();
        }
    }

    /// Componentwise sum of multiplicities.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for c in &other.components {
            out.add_component(c.prime.clone(), c.multiplicity);
        }
        out
    }

    pub fn multiplicity_sum(&self) -> u32 {
        self.components.iter().map(|c| c.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// True when every component is a hypersurface-type component of the
    /// right dimension (for `n = 1`: a principal prime in two variables).
    pub fn is_holonomic_type(&self) -> bool {
        self.components.iter().all(|c| !c.prime.is_empty())
    }

    /// `(prime generators rendered, multiplicity)` pairs.
    pub fn render(&self) -> Vec<(Vec<String>, u32)> {
        let names = symbol_names(self.n);
        self.components
            .iter()
            .map(|c| (c.prime.iter().map(|p| p.render(&names)).collect(), c.multiplicity))
            .collect()
    }
}

impl fmt::Display for CharCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .render()
            .into_iter()
            .map(|(g, m)| format!("({}): {}", if g.is_empty() { "0".to_string() } else { g.join(", ") }, m))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A homogeneous form in two variables `(u, v)` as the dehomogenized
/// polynomial `f(u, 1)` plus the power of `v` dividing it.
struct BinaryForm {
    dehom: UPoly,
    v_power: u32,
}

fn binary_form(p: &Poly<Rational>, iu: usize, iv: usize) -> BinaryForm {
    let mut coeffs: Vec<Rational> = Vec::new();
    let d = p.total_degree().unwrap_or(0);
    let mut max_u = 0u32;
    for (e, c) in p.terms() {
        let k = e[iu] as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::zero());
        }
        coeffs[k] = coeffs[k].clone() + c;
        max_u = max_u.max(e[iu]);
        debug_assert_eq!(e[iu] + e[iv], d);
    }
    BinaryForm { dehom: UPoly::from_coeffs(coeffs), v_power: d - max_u }
}

fn homogenize(p: &UPoly, nvars: usize, iu: usize, iv: usize) -> Poly<Rational> {
    let d = p.degree().unwrap_or(0) as u32;
    let mut out = Poly::zero(nvars);
    for (k, c) in p.coeffs().iter().enumerate() {
        let mut e = vec![0; nvars];
        e[iu] = k as u32;
        e[iv] = d - k as u32;
        out.add_term(e, c.clone());
    }
    out
}

/// Components of the gcd of nonzero homogeneous forms in the variables
/// `iu`, `iv` of an `nvars`-variable ring.
pub(crate) fn binary_gcd_components(
    forms: &[Poly<Rational>],
    nvars: usize,
    iu: usize,
    iv: usize,
) -> Result<Vec<(Vec<Poly<Rational>>, u32)>, ModuleError> {
    let mut g = UPoly::zero();
    let mut vpow = u32::MAX;
    for f in forms {
        let b = binary_form(f, iu, iv);
        g = g.gcd(&b.dehom);
        vpow = vpow.min(b.v_power);
    }
    let mut out = Vec::new();
    if vpow > 0 && vpow != u32::MAX {
        out.push((vec![Poly::var(nvars, iv)], vpow));
    }
    for (p, k) in factor(&g).map_err(|e| ModuleError::UnsupportedAmbient(e.to_string()))? {
        out.push((vec![homogenize(&p, nvars, iu, iv)], k));
    }
    Ok(out)
}

/// Determinant by cofactor expansion (small sizes only).
pub(crate) fn det<C: Field>(m: &[Vec<Poly<C>>], nvars: usize) -> Poly<C> {
    let k = m.len();
    match k {
        0 => Poly::one(nvars),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Poly::zero(nvars);
            for j in 0..k {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly<C>>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = m[0][j].mul(&det(&minor, nvars));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub(crate) fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

/// Monomial content of `p`: the largest monomial dividing every term.
pub(crate) fn monomial_content(p: &Poly<Rational>) -> Vec<u32> {
    let mut it = p.terms().keys();
    let first = it.next().cloned().unwrap_or_default();
    it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect())
}

pub(crate) fn divide_monomial(p: &Poly<Rational>, m: &[u32]) -> Poly<Rational> {
    Poly::from_terms(
        p.nvars(),
        p.terms().iter().map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone())),
    )
}

/// Rank of the symmetric matrix of a quadratic form; a quadric of rank at
/// least 3 is irreducible even over an algebraic closure.
fn quadric_rank(q: &Poly<Rational>) -> usize {
    let n = q.nvars();
    let two = Rational::from_integer(2.into());
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (e, c) in q.terms() {
        let idx: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
        match idx.as_slice() {
            [i] => m[*i][*i] = c.clone(),
            [i, j] => {
                m[*i][*j] = c / &two;
                m[*j][*i] = c / &two;
            }
            _ => unreachable!("quadratic monomial"),
        }
    }
    crate::linalg::rank(&m)
}

/// Irreducible factors of a homogeneous polynomial in `nvars` variables,
/// when they can be found by extracting monomials and binary-form
/// factoring.
pub(crate) fn factor_form(p: &Poly<Rational>) -> Result<Vec<(Vec<Poly<Rational>>, u32)>, ModuleError> {
    let nvars = p.nvars();
    let content = monomial_content(p);
    let mut out = Vec::new();
    for (i, &k) in content.iter().enumerate() {
        if k > 0 {
            out.push((vec![Poly::var(nvars, i)], k));
        }
    }
    let rest = divide_monomial(p, &content);
    let used: Vec<usize> = (0..nvars).filter(|&i| rest.terms().keys().any(|e| e[i] > 0)).collect();
    match used.len() {
        0 => {}
        1 => unreachable!("a homogeneous form in one variable is a monomial"),
        2 => out.extend(binary_gcd_components(&[rest], nvars, used[0], used[1])?),
        _ => {
            if rest.total_degree() == Some(1) || (rest.total_degree() == Some(2) && quadric_rank(&rest) >= 3) {
                out.push((vec![rest.monic()], 1));
            } else {
                return Err(ModuleError::UnsupportedAmbient(
                    "factoring forms in three or more variables".to_string(),
                ));
            }
        }
    }
    Ok(out)
}
