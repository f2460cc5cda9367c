//! Factorization of univariate polynomials over ℚ.
//!
//! Square-free decomposition, rational roots, then Kronecker's
//! interpolation search for the remaining nonlinear factors. The search is
//! exponential, so it is only attempted up to [`MAX_KRONECKER_DEGREE`].

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalars::{Rational, UPoly};

pub const MAX_KRONECKER_DEGREE: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("polynomial factor of degree {0} is too large to factor")]
    TooLarge(usize),
}

/// Monic irreducible factors with multiplicities, sorted; constants give `[]`.
pub fn factor(f: &UPoly) -> Result<Vec<(UPoly, u32)>, FactorError> {
    let mut out = Vec::new();
    if f.is_zero() || f.is_constant() {
        return Ok(out);
    }
    for (k, part) in squarefree(&f.monic()) {
        for p in factor_squarefree(&part)? {
            out.push((p, k));
        }
    }
    out.sort();
    Ok(out)
}

/// Yun's algorithm: `f = Π a_k^k` with each `a_k` square-free, monic.
pub fn squarefree(f: &UPoly) -> Vec<(u32, UPoly)> {
    let mut out = Vec::new();
    let f = f.monic();
    let df = f.derivative();
    let mut a = f.gcd(&df);
    let mut b = f.exact_div(&a);
    let mut c = df.exact_div(&a);
    let mut k = 1;
    loop {
        let d = &c - &b.derivative();
        if b.is_constant() {
            break;
        }
        a = b.gcd(&d);
        if !a.is_constant() {
            out.push((k, a.monic()));
        }
        b = b.exact_div(&a);
        c = d.exact_div(&a);
        k += 1;
    }
    out
}

fn factor_squarefree(f: &UPoly) -> Result<Vec<UPoly>, FactorError> {
    let mut out = Vec::new();
    let mut rest = f.monic();
    for r in rest.rational_roots() {
        let lin = UPoly::from_coeffs(vec![-r.clone(), Rational::one()]);
        rest = rest.exact_div(&lin);
        out.push(lin);
    }
    let mut stack = vec![rest];
    while let Some(g) = stack.pop() {
        let deg = g.degree().unwrap_or(0);
        if deg == 0 {
            continue;
        }
        if deg <= 3 {
            // no rational roots left, so degree 2 or 3 is irreducible
            out.push(g.monic());
            continue;
        }
        if deg > MAX_KRONECKER_DEGREE {
            return Err(FactorError::TooLarge(deg));
        }
        match kronecker_split(&g) {
            Some(h) => {
                let q = g.exact_div(&h);
                stack.push(h.monic());
                stack.push(q.monic());
            }
            None => out.push(g.monic()),
        }
    }
    Ok(out)
}

fn eval_int(coeffs: &[BigInt], x: i64) -> BigInt {
    let xb = BigInt::from(x);
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &xb + c)
}

fn divisors(v: &BigInt) -> Vec<BigInt> {
    let v = v.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= v {
        if (&v % &d).is_zero() {
            small.push(d.clone());
            let e = &v / &d;
            if e != d {
                large.push(e);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    let mut out = Vec::new();
    for d in small {
        out.push(d.clone());
        out.push(-d);
    }
    out
}

/// Lagrange interpolation through integer points.
fn interpolate(xs: &[i64], ys: &[BigInt]) -> UPoly {
    let mut acc = UPoly::zero();
    for (i, (&xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = UPoly::constant(Rational::from_integer(yi.clone()));
        for (j, &xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let lin = UPoly::from_coeffs(vec![Rational::from_integer((-xj).into()), Rational::one()]);
            basis = &basis * &lin;
            basis = basis.scale(&Rational::new(BigInt::one(), BigInt::from(xi - xj)));
        }
        acc = &acc + &basis;
    }
    acc
}

/// A proper factor of `g` (degree at most half), if one exists.
fn kronecker_split(g: &UPoly) -> Option<UPoly> {
    let coeffs = g.primitive_integer_coeffs();
    let deg = coeffs.len() - 1;
    // evaluation points with few divisors first
    let mut pts: Vec<(usize, i64, BigInt)> = (-8i64..=8)
        .map(|x| {
            let v = eval_int(&coeffs, x);
            let cost = if v.is_zero() { usize::MAX } else { divisors(&v).len() };
            (cost, x, v)
        })
        .filter(|(c, _, _)| *c != usize::MAX)
        .collect();
    pts.sort_by_key(|(c, x, _)| (*c, x.abs()));
    for d in 1..=deg / 2 {
        let chosen = &pts[..=d];
        let xs: Vec<i64> = chosen.iter().map(|p| p.1).collect();
        let divs: Vec<Vec<BigInt>> = chosen.iter().map(|p| divisors(&p.2)).collect();
        let mut idx = vec![0usize; d + 1];
        loop {
            // fix the sign of the first value to avoid testing h and -h
            if divs[0][idx[0]].is_positive() {
                let ys: Vec<BigInt> = idx.iter().zip(&divs).map(|(&k, ds)| ds[k].clone()).collect();
                let h = interpolate(&xs, &ys);
                if h.degree() == Some(d) && h.coeffs().iter().all(|c| c.is_integer()) && h.divides(g) {
                    return Some(h);
                }
            }
            let mut k = 0;
            loop {
                if k > d {
                    break;
                }
                idx[k] += 1;
                if idx[k] < divs[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k > d {
                break;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> UPoly {
        UPoly::from_i64s(cs)
    }

    #[test]
    fn factors_with_multiplicity() {
        // (t-1)^2 (t^2+1)
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[1, 0, 1]);
        let fs = factor(&f).unwrap();
        assert_eq!(fs, {
            let mut v = vec![(p(&[-1, 1]), 2), (p(&[1, 0, 1]), 1)];
            v.sort();
            v
        });
    }

    #[test]
    fn kronecker_finds_quadratic_pair() {
        // (t^2+1)(t^2+t+2)
        let f = &p(&[1, 0, 1]) * &p(&[2, 1, 1]);
        let mut fs: Vec<UPoly> = factor(&f).unwrap().into_iter().map(|x| x.0).collect();
        fs.sort();
        let mut want = vec![p(&[1, 0, 1]), p(&[2, 1, 1])];
        want.sort();
        assert_eq!(fs, want);
        // t^4 + 1 is irreducible over Q
        assert_eq!(factor(&p(&[1, 0, 0, 0, 1])).unwrap().len(), 1);
    }

    #[test]
    fn product_of_factors_recovers_input() {
        let f = &(&p(&[3, 0, 2]) * &p(&[0, 1])) * &p(&[5, -1, 0, 1]);
        let fs = factor(&f).unwrap();
        let prod = fs.iter().fold(UPoly::one(), |acc, (q, k)| &acc * &q.pow(*k));
        assert_eq!(prod, f.monic());
    }
}
