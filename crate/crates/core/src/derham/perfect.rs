//! Bounded complexes of finite free modules over the local ring `ℚ[z]₍z₎`
//! and their Euler characteristics on the generic and special fibers.

use num_traits::Zero;
use rand::Rng;

use crate::linalg::rank;
use crate::scalars::{LocalScalar, Rational, UPoly};

use super::DerhamError;

/// `C⁰ → C¹ → …`; `matrices[i]` is the differential `C^i → C^{i+1}` with
/// `ranks[i+1]` rows and `ranks[i]` columns, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectComplex {
    pub ranks: Vec<usize>,
    pub matrices: Vec<Vec<Vec<LocalScalar>>>,
}

fn matmul(a: &[Vec<LocalScalar>], b: &[Vec<LocalScalar>], inner: usize, cols: usize) -> Vec<Vec<LocalScalar>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(LocalScalar::from_int(0), |acc, k| acc + &(row[k].clone() * &b[k][j])))
                .collect()
        })
        .collect()
}

impl PerfectComplex {
    pub fn new(ranks: Vec<usize>, matrices: Vec<Vec<Vec<LocalScalar>>>) -> Result<Self, DerhamError> {
        if matrices.len() + 1 != ranks.len().max(1) {
            return Err(DerhamError::NotAComplex(format!("{} ranks need {} matrices", ranks.len(), ranks.len().saturating_sub(1))));
        }
        for (i, m) in matrices.iter().enumerate() {
            if m.len() != ranks[i + 1] || m.iter().any(|r| r.len() != ranks[i]) {
                return Err(DerhamError::NotAComplex(format!("differential {i} has the wrong shape")));
            }
            if let Some(c) = m.iter().flatten().find(|c| !c.is_integral()) {
                return Err(DerhamError::NotAComplex(format!("entry {c} is not integral")));
            }
        }
        for i in 1..matrices.len() {
            let prod = matmul(&matrices[i], &matrices[i - 1], ranks[i], ranks[i - 1]);
            if prod.iter().flatten().any(|c| !c.is_zero()) {
                return Err(DerhamError::NotAComplex(format!("d{i} ∘ d{} ≠ 0", i - 1)));
            }
        }
        Ok(Self { ranks, matrices })
    }

    pub fn alternating_rank(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(i, &r)| sign(i) * r as i64).sum()
    }
}

fn sign(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Σ (−1)^i dim H^i` from the ranks of the differentials.
fn chi_from_ranks(ranks: &[usize], diff_ranks: &[usize]) -> i64 {
    ranks
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let out = diff_ranks.get(i).copied().unwrap_or(0);
            let inc = if i == 0 { 0 } else { diff_ranks[i - 1] };
            sign(i) * (r - out - inc) as i64
        })
        .sum()
}

fn matrix_rank<C: crate::scalars::Field>(m: &[Vec<C>]) -> usize {
    if m.is_empty() || m[0].is_empty() {
        0
    } else {
        rank(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub generic_chi: i64,
    pub special_chi: i64,
    pub alternating_rank: i64,
    pub equal: bool,
}

/// Euler characteristics over `ℚ(z)` and over `ℚ = ℚ[z]₍z₎/(z)`.
pub fn euler_check_perfect(c: &PerfectComplex) -> EulerReport {
    let generic: Vec<usize> = c.matrices.iter().map(|m| matrix_rank(m)).collect();
    let special: Vec<usize> = c
        .matrices
        .iter()
        .map(|m| {
            let red: Vec<Vec<Rational>> =
                m.iter().map(|r| r.iter().map(|e| e.reduce_residue().expect("integral entries")).collect()).collect();
            matrix_rank(&red)
        })
        .collect();
    let generic_chi = chi_from_ranks(&c.ranks, &generic);
    let special_chi = chi_from_ranks(&c.ranks, &special);
    EulerReport { generic_chi, special_chi, alternating_rank: c.alternating_rank(), equal: generic_chi == special_chi }
}

fn random_unit_poly<R: Rng>(rng: &mut R) -> UPoly {
    UPoly::from_i64s(&[1, rng.gen_range(-3..=3)])
}

fn elementary(n: usize, p: usize, q: usize, e: LocalScalar) -> Vec<Vec<LocalScalar>> {
    let mut m: Vec<Vec<LocalScalar>> =
        (0..n).map(|i| (0..n).map(|j| LocalScalar::from_int(i64::from(i == j))).collect()).collect();
    if p != q {
        m[p][q] = e;
    }
    m
}

fn small_entry<R: Rng>(rng: &mut R) -> LocalScalar {
    let c = rng.gen_range(-2..=2);
    let k = rng.gen_range(0..=1);
    LocalScalar::from_poly(UPoly::monomial(Rational::from_integer(c.into()), k))
}

/// A random complex with the given ranks: a split complex whose
/// differentials are `z`-power multiples of coordinate inclusions,
/// conjugated by elementary integral changes of basis and scaled by units.
/// Entries have numerator degree at most 3 in `z`.
pub fn random_perfect_complex<R: Rng>(rng: &mut R, ranks: &[usize]) -> PerfectComplex {
    let len = ranks.len();
    // rank of each differential, with s_{i-1} + s_i ≤ ranks[i]
    let mut s = vec![0usize; len.saturating_sub(1)];
    for i in 0..s.len() {
        let used = if i == 0 { 0 } else { s[i - 1] };
        let room = (ranks[i] - used).min(ranks[i + 1]);
        s[i] = rng.gen_range(0..=room);
    }
    let changes: Vec<(usize, usize, LocalScalar)> = ranks
        .iter()
        .map(|&r| if r < 2 { (0, 0, LocalScalar::from_int(0)) } else { (rng.gen_range(0..r), rng.gen_range(0..r), small_entry(rng)) })
        .collect();
    let matrices = (0..s.len())
        .map(|i| {
            let (rows, cols) = (ranks[i + 1], ranks[i]);
            // the last s_i basis vectors of C^i map onto the first s_i of C^{i+1}
            let mut j: Vec<Vec<LocalScalar>> = vec![vec![LocalScalar::from_int(0); cols]; rows];
            for k in 0..s[i] {
                j[k][cols - s[i] + k] = LocalScalar::z_pow(rng.gen_range(0..=1));
            }
            let (p, q, e) = changes[i + 1].clone();
            let left = elementary(rows, p, q, e);
            let (p, q, e) = changes[i].clone();
            let right_inv = elementary(cols, p, q, -e);
            let d = matmul(&matmul(&left, &j, rows, cols), &right_inv, cols, cols);
            let unit = LocalScalar::new(UPoly::one(), random_unit_poly(rng)).expect("nonzero denominator");
            d.into_iter().map(|r| r.into_iter().map(|x| x * &unit).collect()).collect()
        })
        .collect();
    PerfectComplex::new(ranks.to_vec(), matrices).expect("construction composes to zero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn multiplication_by_z() {
        let c = PerfectComplex::new(vec![1, 1], vec![vec![vec![LocalScalar::z()]]]).unwrap();
        let r = euler_check_perfect(&c);
        assert_eq!((r.generic_chi, r.special_chi), (0, 0));
        assert!(r.equal);
    }

    #[test]
    fn one_term_complex() {
        let c = PerfectComplex::new(vec![1], Vec::new()).unwrap();
        let r = euler_check_perfect(&c);
        assert_eq!((r.generic_chi, r.special_chi), (1, 1));
    }

    #[test]
    fn rejects_non_complexes() {
        let one = LocalScalar::from_int(1);
        let bad = PerfectComplex::new(vec![1, 1, 1], vec![vec![vec![one.clone()]], vec![vec![one]]]);
        assert!(matches!(bad, Err(DerhamError::NotAComplex(_))));
        let frac = PerfectComplex::new(vec![1, 1], vec![vec![vec![LocalScalar::z_pow(-1)]]]);
        assert!(matches!(frac, Err(DerhamError::NotAComplex(_))));
    }

    #[test]
    fn random_complexes_have_equal_characteristics() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let ranks: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=4)).collect();
            let c = random_perfect_complex(&mut rng, &ranks);
            let r = euler_check_perfect(&c);
            assert!(r.equal);
            assert_eq!(r.generic_chi, r.alternating_rank);
        }
    }
}
