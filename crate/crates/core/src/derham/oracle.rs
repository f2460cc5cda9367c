//! Brute-force de Rham cohomology for `n = 1`: kernel and cokernel of `∂`
//! on the Bernstein filtration pieces `F_d M`, read off once they stop
//! changing. Independent of the restriction algorithm.

use std::collections::HashMap;

use num_traits::One;

use crate::groebner::{Ambient, Basis, Matrix, TermOrder};
use crate::linalg::rank;
use crate::scalars::Rational;
use crate::weyl::{Monomial, Weyl};

type W = Weyl<Rational>;

/// Stabilized truncated dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilizedCohomology {
    pub h0: usize,
    pub h1: usize,
    pub chi: i64,
    /// First degree from which the values stay constant up to the bound.
    pub stable_from: u32,
}

fn rank_or_zero(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        0
    } else {
        rank(rows)
    }
}

/// Truncated `(h0, h1)` for every `d ≤ max_degree`, where
/// `h0(d) = dim ker(∂|F_d)` and `h1(d) = dim F_d / (F_d ∩ ∂F_{2d+1})`.
/// Preimages may need more degrees than `∂` adds (`x^d = ∂x^{d+1}/(d+1)`
/// needs `x^{d+1}∂` in `W/W∂²`), hence the wide range.
pub fn truncated_dims(relations: &Matrix<Rational>, max_degree: u32) -> Vec<(usize, usize)> {
    let r = relations.cols;
    let amb = Ambient::new(1, r);
    let gb = Basis::new(&relations.rows, amb, TermOrder::bernstein());
    let leads = gb.leading_terms();

    // standard monomials ordered by degree
    let top = 2 * max_degree + 2;
    let mut std: Vec<(usize, Monomial)> = Vec::new();
    let mut count_le: Vec<usize> = Vec::new();
    for deg in 0..=top {
        for comp in 0..r {
            for a in 0..=deg {
                let m = Monomial::new(&[a], &[deg - a], 0);
                if !leads.iter().any(|(c, l)| *c == comp && l.divides(&m)) {
                    std.push((comp, m));
                }
            }
        }
        count_le.push(std.len());
    }
    let index: HashMap<(usize, Monomial), usize> = std.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();

    // ∂ applied to every standard monomial of degree ≤ top − 1
    let width = count_le[top as usize];
    let images: Vec<Vec<Rational>> = std[..count_le[top as usize - 1]]
        .iter()
        .map(|(comp, m)| {
            let mut row = amb.zero_row::<Rational>();
            row[*comp] = W::d(1, 0).mul(&W::term(m.clone(), Rational::one()));
            let nf = gb.normal_form(&row);
            let mut v = vec![Rational::from_integer(0.into()); width];
            for (j, e) in nf.iter().enumerate() {
                for (mon, c) in e.terms() {
                    v[index[&(j, mon.clone())]] = c.clone();
                }
            }
            v
        })
        .collect();

    (0..=max_degree as usize)
        .map(|d| {
            let nd = count_le[d];
            let img_d = &images[..nd];
            let h0 = nd - rank_or_zero(img_d);
            let img_next = &images[..count_le[2 * d + 1]];
            let tail: Vec<Vec<Rational>> = img_next.iter().map(|v| v[nd..].to_vec()).collect();
            let inter = rank_or_zero(img_next) - rank_or_zero(&tail);
            (h0, nd - inter)
        })
        .collect()
}

/// The stabilized values, when the last `window` truncations agree.
pub fn stabilized_cohomology(relations: &Matrix<Rational>, max_degree: u32, window: usize) -> Option<StabilizedCohomology> {
    let dims = truncated_dims(relations, max_degree);
    let last = *dims.last()?;
    if dims.len() < window || dims[dims.len() - window..].iter().any(|&v| v != last) {
        return None;
    }
    let stable_from = dims.iter().rposition(|&v| v != last).map_or(0, |i| i + 1) as u32;
    Some(StabilizedCohomology { h0: last.0, h1: last.1, chi: last.0 as i64 - last.1 as i64, stable_from })
}
