//! V-filtration along `x = 0` for `n = 1`: Gröbner bases in the V-order,
//! the b-function, and the finite-dimensional model of the `x`-action
//! between the extreme integer roots.

use num_traits::One;

use crate::groebner::{Ambient, Basis, Row, TermOrder};
use crate::linalg::{hermite, hermite_reduce, invariant_factors, rank};
use crate::scalars::{Rational, UPoly};
use crate::weyl::{falling_factorial, Extra, Monomial, Weyl};

use super::DerhamError;

type W = Weyl<Rational>;

/// The b-function along `x = 0`, in the variable `s = x∂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFunction {
    pub poly: UPoly,
    pub integer_roots: Vec<i64>,
}

impl BFunction {
    fn new(poly: UPoly) -> Self {
        let mut integer_roots: Vec<i64> = poly
            .rational_roots()
            .into_iter()
            .filter(|r| r.is_integer())
            .map(|r| i64::try_from(r.to_integer()).expect("small root"))
            .collect();
        integer_roots.sort_unstable();
        integer_roots.dedup();
        Self { poly: poly.monic(), integer_roots }
    }
}

/// V-weight `a − b` of `x^a ∂^b`.
fn weight(m: &Monomial) -> i64 {
    i64::from(m.x_exp(0)) - i64::from(m.d_exp(0))
}

fn row_weight(row: &[W]) -> Option<i64> {
    row.iter().flat_map(|e| e.terms().keys().map(weight)).min()
}

/// `x^j` for `j ≥ 0`, `∂^{-j}` otherwise.
fn t_elem(j: i64) -> W {
    if j >= 0 {
        W::x(1, 0).pow(j as u32)
    } else {
        W::d(1, 0).pow((-j) as u32)
    }
}

fn homogenize(row: &[W]) -> Row<Rational> {
    let top = row.iter().filter_map(W::bernstein_degree).max().unwrap_or(0);
    row.iter()
        .map(|e| {
            W::from_terms(
                1,
                Extra::Homogenizing,
                e.terms().iter().map(|(m, c)| (m.with_t(top - m.bernstein_degree()), c.clone())),
            )
        })
        .collect()
}

/// Generators whose initial forms generate the initial module of the
/// row span for the V-filtration along `x = 0`.
pub(crate) fn v_basis(rows: &[Row<Rational>], rank: usize) -> Vec<Row<Rational>> {
    let hom: Vec<Row<Rational>> = rows.iter().map(|r| homogenize(r)).collect();
    let gb = Basis::new(&hom, Ambient::homogenized(1, rank), TermOrder::v_order());
    gb.generators().iter().map(|r| r.iter().map(W::drop_t).collect::<Row<Rational>>()).filter(|r| row_weight(r).is_some()).collect()
}

/// Coordinates of the weight-`k` part of `e` as `p(θ)·x^k` (`k ≥ 0`) or
/// `p(θ)·∂^{-k}` (`k < 0`).
fn theta_part(e: &W, k: i64) -> UPoly {
    let mut acc = UPoly::zero();
    for (m, c) in e.terms() {
        if weight(m) != k {
            continue;
        }
        let f = if k >= 0 {
            falling_factorial(m.d_exp(0)).translate(&Rational::from_integer((-k).into()))
        } else {
            falling_factorial(m.x_exp(0))
        };
        acc = &acc + &f.scale(c);
    }
    acc
}

/// Relations of `Gr⁰_V` as a `ℚ[θ]`-module on the generators.
fn gr0_relations(basis: &[Row<Rational>]) -> Vec<Vec<UPoly>> {
    basis
        .iter()
        .map(|g| {
            let w = row_weight(g).expect("nonzero");
            let t = t_elem(-w);
            g.iter().map(|e| theta_part(&t.mul(e), 0)).collect()
        })
        .collect()
}

pub(crate) fn b_function_of_rows(rows: &[Row<Rational>], rank: usize) -> Result<(BFunction, Vec<Row<Rational>>), DerhamError> {
    let basis = v_basis(rows, rank);
    let rel = gr0_relations(&basis);
    let factors = invariant_factors(&rel, rank);
    if factors.len() < rank {
        return Err(DerhamError::NotHolonomic);
    }
    let b = factors.last().cloned().unwrap_or_else(UPoly::one);
    Ok((BFunction::new(b), basis))
}

/// `V^lo/V^{hi+1}` of the module, as `ℚ[θ]`-relations on the slots
/// `(k, component)` for `k ∈ [lo, hi]`.
struct Window {
    lo: i64,
    hi: i64,
    rank: usize,
    form: Vec<Vec<UPoly>>,
    pivots: Vec<usize>,
}

impl Window {
    fn slot(&self, k: i64, comp: usize) -> usize {
        (k - self.lo) as usize * self.rank + comp
    }

    fn width(&self) -> usize {
        (self.hi - self.lo + 1) as usize * self.rank
    }

    fn build(basis: &[Row<Rational>], rank: usize, lo: i64, hi: i64) -> Result<Self, DerhamError> {
        let mut w = Self { lo, hi, rank, form: Vec::new(), pivots: Vec::new() };
        let mut rows = Vec::new();
        for g in basis {
            let wg = row_weight(g).expect("nonzero");
            for j in (lo - wg)..=(hi - wg) {
                let tg: Vec<W> = g.iter().map(|e| t_elem(j).mul(e)).collect();
                let mut v = vec![UPoly::zero(); w.width()];
                for (comp, e) in tg.iter().enumerate() {
                    for k in lo..=hi {
                        v[w.slot(k, comp)] = theta_part(e, k);
                    }
                }
                rows.push(v);
            }
        }
        let (form, pivots) = hermite(&rows, w.width());
        if pivots.len() < w.width() {
            return Err(DerhamError::NotHolonomic);
        }
        w.form = form;
        w.pivots = pivots;
        Ok(w)
    }

    /// `(column, power of θ)` pairs forming a ℚ-basis of the quotient.
    fn monomial_basis(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (row, &col) in self.form.iter().zip(&self.pivots) {
            for e in 0..row[col].degree().expect("pivot") {
                out.push((col, e));
            }
        }
        out
    }

    fn coordinates(&self, mut v: Vec<UPoly>, basis: &[(usize, usize)]) -> Vec<Rational> {
        hermite_reduce(&mut v, &self.form, &self.pivots);
        basis.iter().map(|&(col, e)| v[col].coeff(e)).collect()
    }
}

/// Dimensions of kernel and cokernel of `x` acting on the module with the
/// given relations.
pub(crate) fn x_action_cohomology(rows: &[Row<Rational>], rank: usize) -> Result<(usize, usize), DerhamError> {
    let (b, basis) = b_function_of_rows(rows, rank)?;
    let roots: Vec<i64> = b.integer_roots.iter().map(|r| -r).collect();
    let (Some(&min), Some(&max)) = (roots.iter().min(), roots.iter().max()) else {
        return Ok((0, 0));
    };
    let (a, c) = (min - 1, max);
    let d0 = Window::build(&basis, rank, a, c - 1)?;
    let d1 = Window::build(&basis, rank, a + 1, c)?;
    let b0 = d0.monomial_basis();
    let b1 = d1.monomial_basis();
    let theta = UPoly::var();
    let shift = |p: &UPoly| p.translate(&Rational::from_integer((-1).into()));
    let images: Vec<Vec<Rational>> = b0
        .iter()
        .map(|&(col, e)| {
            let k = a + (col / rank) as i64;
            let comp = col % rank;
            let p = shift(&UPoly::monomial(Rational::one(), e));
            let img = if k >= 0 { p } else { &p * &theta };
            let mut v = vec![UPoly::zero(); d1.width()];
            v[d1.slot(k + 1, comp)] = img;
            d1.coordinates(v, &b1)
        })
        .collect();
    let r = rank_of(&images, b1.len());
    Ok((b0.len() - r, b1.len() - r))
}

fn rank_of(rows: &[Vec<Rational>], ncols: usize) -> usize {
    if rows.is_empty() || ncols == 0 {
        0
    } else {
        rank(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> W {
        W::x(1, 0)
    }

    fn d() -> W {
        W::d(1, 0)
    }

    fn c(v: Rational) -> W {
        W::constant(1, v)
    }

    fn b_of(p: W) -> BFunction {
        b_function_of_rows(&[vec![p]], 1).unwrap().0
    }

    #[test]
    fn b_functions_of_cyclic_modules() {
        assert_eq!(b_of(d()).poly, UPoly::var());
        assert_eq!(b_of(x()).poly, UPoly::from_i64s(&[1, 1]));
        let half = crate::scalars::rat(1, 2);
        let b = b_of(x().mul(&d()).sub(&c(half.clone())));
        assert_eq!(b.poly, UPoly::from_coeffs(vec![-half, Rational::from_integer(1.into())]));
        assert!(b.integer_roots.is_empty());
    }

    #[test]
    fn x_action_on_basic_modules() {
        // x on ℚ[x] (= W/W∂): injective, cokernel spanned by 1
        assert_eq!(x_action_cohomology(&[vec![d()]], 1).unwrap(), (0, 1));
        // x on the delta module: kernel spanned by δ, surjective
        assert_eq!(x_action_cohomology(&[vec![x()]], 1).unwrap(), (1, 0));
        // x invertible on W/W(x - 1)
        assert_eq!(x_action_cohomology(&[vec![x().sub(&W::one(1))]], 1).unwrap(), (0, 0));
    }

    #[test]
    fn free_module_is_not_holonomic() {
        assert_eq!(x_action_cohomology(&[], 1), Err(DerhamError::NotHolonomic));
    }
}
