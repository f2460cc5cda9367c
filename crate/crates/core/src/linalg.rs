//! Dense linear algebra over a field and echelon forms over ℚ[θ].

use crate::scalars::{Field, UPoly};

/// Row-reduced echelon form in place; returns pivot columns.
pub fn rref<C: Field>(rows: &mut Vec<Vec<C>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv();
        for v in rows[r].iter_mut() {
            *v = v.clone() * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v = v.clone() - &(f.clone() * p);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<C: Field>(rows: &[Vec<C>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{v : M v = 0}` for an `m × ncols` matrix.
pub fn kernel<C: Field>(rows: &[Vec<C>], ncols: usize) -> Vec<Vec<C>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![C::zero(); ncols];
            v[f] = C::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Upper-triangular Hermite form of the ℚ[θ]-span of `rows`: each returned
/// row has a monic pivot, zeros before it, and entries after each pivot
/// above reduced modulo the pivot below. Pivot columns are returned.
pub fn hermite(rows: &[Vec<UPoly>], ncols: usize) -> (Vec<Vec<UPoly>>, Vec<usize>) {
    let mut work: Vec<Vec<UPoly>> = rows.iter().filter(|r| r.iter().any(|e| !e.is_zero())).cloned().collect();
    let mut out: Vec<Vec<UPoly>> = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..ncols {
        // gcd-combine all rows with a nonzero entry in `col`
        loop {
            let idx: Vec<usize> = (0..work.len()).filter(|&i| !work[i][col].is_zero()).collect();
            if idx.len() <= 1 {
                break;
            }
            // pick the row with smallest degree in `col`, reduce the others
            let best = *idx.iter().min_by_key(|&&i| work[i][col].degree().unwrap_or(0)).expect("nonempty");
            let pivot = work[best].clone();
            for &i in &idx {
                if i == best {
                    continue;
                }
                let (q, _) = work[i][col].div_rem(&pivot[col]);
                let row = &mut work[i];
                for (v, p) in row.iter_mut().zip(&pivot) {
                    *v = &*v - &(&q * p);
                }
            }
            work.retain(|r| r.iter().any(|e| !e.is_zero()));
        }
        if let Some(i) = (0..work.len()).find(|&i| !work[i][col].is_zero()) {
            let mut row = work.remove(i);
            let lc = row[col].leading_coeff().expect("nonzero").clone();
            let inv = lc.recip();
            for v in row.iter_mut() {
                *v = v.scale(&inv);
            }
            out.push(row);
            pivots.push(col);
        }
    }
    // reduce entries above pivots
    for k in (0..out.len()).rev() {
        let col = pivots[k];
        let piv = out[k].clone();
        for row in out.iter_mut().take(k) {
            let (q, _) = row[col].div_rem(&piv[col]);
            if q.is_zero() {
                continue;
            }
            for (v, p) in row.iter_mut().zip(&piv) {
                *v = &*v - &(&q * p);
            }
        }
    }
    (out, pivots)
}

/// Reduce `v` modulo a Hermite form; every pivot entry ends with degree
/// below the pivot's degree.
pub fn hermite_reduce(v: &mut [UPoly], form: &[Vec<UPoly>], pivots: &[usize]) {
    for (row, &col) in form.iter().zip(pivots) {
        let (q, _) = v[col].div_rem(&row[col]);
        if q.is_zero() {
            continue;
        }
        for (a, b) in v.iter_mut().zip(row) {
            *a = &*a - &(&q * b);
        }
    }
}

/// Invariant factors (monic, nonzero, divisibility chain) of the ℚ[θ]-span
/// of `rows`, together with its rank.
pub fn invariant_factors(rows: &[Vec<UPoly>], ncols: usize) -> Vec<UPoly> {
    let mut m: Vec<Vec<UPoly>> = rows.to_vec();
    let nrows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // find the nonzero entry of least degree in the lower-right block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if m[i][j].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => m[i][j].degree() < m[bi][bj].degree(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        // clear column t
        for i in t + 1..nrows {
            if m[i][t].is_zero() {
                continue;
            }
            let (q, r) = m[i][t].div_rem(&m[t][t]);
            let pivot = m[t].clone();
            for (v, p) in m[i].iter_mut().zip(&pivot) {
                *v = &*v - &(&q * p);
            }
            if !r.is_zero() {
                clean = false;
            }
        }
        // clear row t
        for j in t + 1..ncols {
            if m[t][j].is_zero() {
                continue;
            }
            let (q, r) = m[t][j].div_rem(&m[t][t]);
            for row in m.iter_mut() {
                let sub = &q * &row[t];
                row[j] = &row[j] - &sub;
            }
            if !r.is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // enforce divisibility of the remaining block
        let piv = m[t][t].clone();
        let bad = (t + 1..nrows).find_map(|i| (t + 1..ncols).find(|&j| !piv.divides(&m[i][j])).map(|j| (i, j)));
        if let Some((i, _)) = bad {
            let row_i = m[i].clone();
            for (v, p) in m[t].iter_mut().zip(&row_i) {
                *v = &*v + p;
            }
            continue;
        }
        diag.push(piv.monic());
        t += 1;
    }
    diag
}
