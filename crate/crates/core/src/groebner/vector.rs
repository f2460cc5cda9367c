use std::cmp::Ordering;
use std::collections::HashMap;

use crate::scalars::{Field, Rational};
use crate::weyl::{monomial_product, Extra, Monomial, Weyl};

use super::order::TermOrder;

/// A row of a matrix over the Weyl algebra: one entry per component.
pub type Row<C> = Vec<Weyl<C>>;

/// Sparse module element with terms sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SVec<C> {
    pub terms: Vec<(usize, Monomial, C)>,
}

impl<C: Field> SVec<C> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn from_row(row: &[Weyl<C>], order: &TermOrder) -> Self {
        let mut terms: Vec<(usize, Monomial, C)> = row
            .iter()
            .enumerate()
            .flat_map(|(j, w)| w.terms().iter().map(move |(m, c)| (j, m.clone(), c.clone())))
            .collect();
        sort_desc(&mut terms, order);
        Self { terms }
    }

    pub fn to_row(&self, rank: usize, n: usize, extra: Extra) -> Row<C> {
        let mut row: Row<C> = (0..rank).map(|_| Weyl::zero_in(n, extra)).collect();
        for (j, m, c) in &self.terms {
            row[*j].add_term(m.clone(), c.clone());
        }
        row
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(usize, Monomial, C)> {
        self.terms.first()
    }

    pub fn scale(&mut self, c: &C) {
        for t in &mut self.terms {
            t.2 = t.2.clone() * c;
        }
    }

    /// `c · m · g`, sorted.
    pub fn left_term_product(c: &C, m: &Monomial, g: &Self, order: &TermOrder, extra: Extra) -> Self {
        let trivial = m.beta().iter().all(|&b| b == 0);
        let mut acc: HashMap<(usize, Monomial), C> = HashMap::with_capacity(g.terms.len() * 2);
        let mut plain: Vec<(usize, Monomial, C)> = Vec::with_capacity(g.terms.len());
        for (j, mg, cg) in &g.terms {
            let base = c.clone() * cg;
            if trivial || mg.alpha().iter().all(|&a| a == 0) {
                // no reordering needed
                plain.push((*j, m.mul_commutative(mg), base));
                continue;
            }
            for (mm, k) in monomial_product(m, mg, extra) {
                let v = base.clone() * &C::from_rational(Rational::from_integer(k));
                match acc.entry((*j, mm)) {
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        let s = o.get().clone() + &v;
                        *o.get_mut() = s;
                    }
                    std::collections::hash_map::Entry::Vacant(vac) => {
                        vac.insert(v);
                    }
                }
            }
        }
        if acc.is_empty() {
            // products of distinct terms by a monomial stay distinct and ordered
            return Self { terms: plain };
        }
        for (j, mm, v) in plain {
            match acc.entry((j, mm)) {
                std::collections::hash_map::Entry::Occupied(mut o) => {
                    let s = o.get().clone() + &v;
                    *o.get_mut() = s;
                }
                std::collections::hash_map::Entry::Vacant(vac) => {
                    vac.insert(v);
                }
            }
        }
        let mut terms: Vec<(usize, Monomial, C)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((j, m), c)| (j, m, c)).collect();
        sort_desc(&mut terms, order);
        Self { terms }
    }

    /// `self - other`, merging sorted term lists.
    pub fn sub(&self, other: &Self, order: &TermOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match order.cmp(a[i].0, &a[i].1, b[j].0, &b[j].1) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, b[j].1.clone(), -b[j].2.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].2.clone() - &b[j].2;
                    if !c.is_zero() {
                        out.push((a[i].0, a[i].1.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| (t.0, t.1.clone(), -t.2.clone())));
        Self { terms: out }
    }
}

pub(crate) fn sort_desc<C>(terms: &mut [(usize, Monomial, C)], order: &TermOrder) {
    terms.sort_by(|a, b| order.cmp(b.0, &b.1, a.0, &a.1));
}
