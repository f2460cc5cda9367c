//! Finitely presented modules over Weyl algebras: dimension, characteristic
//! cycles, Ext, grade, the minimal-dimension test and the duality
//! `M ↦ M* = Ext^n(M, W)`.
//!
//! Right modules are carried to left modules by the transposition `τ`; all
//! computations run on left presentations.

mod cycle;

use thiserror::Error;

pub use cycle::{CharCycle, CycleComponent};

use crate::groebner::{
    prune, resolve, row_is_zero, syzygies, uses_rational_engine, Ambient, Basis, Coefficient,
    FreeVector, GroebnerError, Matrix, Row, Side, TermOrder,
};
use crate::scalars::{Field, LocalScalar, Rational};
use crate::weyl::{Poly, RingTag, Weyl, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("the module is zero")]
    ZeroModule,
    #[error("unsupported: {0}")]
    UnsupportedAmbient(String),
    #[error("Ext index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("the module is not of minimal dimension")]
    NotMinimalDimension,
    #[error("operation requires field coefficients")]
    FieldRequired,
    #[error("invariants disagree: {0}")]
    CrossCheckFailed(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// A one-sided module given as the cokernel of its relation rows inside the
/// free module on `gens` generators. For right modules the relations span a
/// right submodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedModule {
    pub ring: RingTag,
    pub side: Side,
    pub n: usize,
    pub gens: usize,
    pub relations: Vec<FreeVector>,
}

impl PresentedModule {
    pub fn new(ring: RingTag, side: Side, n: usize, gens: usize, relations: Vec<FreeVector>) -> Result<Self, ModuleError> {
        for r in &relations {
            if r.rank() != gens {
                return Err(GroebnerError::RankMismatch { expected: gens, found: r.rank() }.into());
            }
            if r.entries.iter().any(|e| e.ring() != ring || e.ambient_n() != n) {
                return Err(GroebnerError::Incompatible.into());
            }
        }
        Ok(Self { ring, side, n, gens, relations })
    }

    /// Cyclic left module `W/W·p`.
    pub fn cyclic(p: WeylElement) -> Self {
        Self { ring: p.ring(), side: Side::Left, n: p.ambient_n(), gens: 1, relations: vec![FreeVector::new(vec![p])] }
    }

    pub fn free(ring: RingTag, side: Side, n: usize, rank: usize) -> Self {
        Self { ring, side, n, gens: rank, relations: Vec::new() }
    }

    pub fn zero(ring: RingTag, side: Side, n: usize) -> Self {
        Self::free(ring, side, n, 0)
    }

    /// Relations as an engine matrix in left form.
    pub fn left_matrix<C: Coefficient>(&self) -> Result<Matrix<C>, ModuleError> {
        let rows = self
            .relations
            .iter()
            .map(|v| {
                v.entries
                    .iter()
                    .map(|e| {
                        let w = C::to_engine(e)?;
                        Ok(if self.side == Side::Right { w.transpose() } else { w })
                    })
                    .collect::<Result<Row<C>, GroebnerError>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::new(self.gens, rows))
    }

    /// Inverse of [`left_matrix`](Self::left_matrix).
    pub fn from_left_matrix<C: Coefficient>(ring: RingTag, side: Side, n: usize, m: &Matrix<C>) -> Self {
        let relations = m
            .rows
            .iter()
            .map(|r| {
                FreeVector::new(
                    r.iter()
                        .map(|w| {
                            let w = if side == Side::Right { w.transpose() } else { w.clone() };
                            C::from_engine(ring, &w)
                        })
                        .collect(),
                )
            })
            .collect();
        Self { ring, side, n, gens: m.cols, relations }
    }

    /// The left module `τ(M)` for a right module (identity for left ones).
    pub fn as_left(&self) -> Self {
        match self.side {
            Side::Left => self.clone(),
            Side::Right => Self {
                side: Side::Left,
                relations: self
                    .relations
                    .iter()
                    .map(|v| FreeVector::new(v.entries.iter().map(WeylElement::transpose).collect()))
                    .collect(),
                ..self.clone()
            },
        }
    }

    /// Homological bound used for grade searches: `n` over fields, `n + 1`
    /// over `ℚ[z]`.
    pub fn homological_bound(&self) -> usize {
        if self.ring.is_field() {
            self.n
        } else {
            self.n + 1
        }
    }
}

macro_rules! dispatch {
    ($ring:expr, $f:ident ( $($arg:expr),* )) => {
        if uses_rational_engine($ring) {
            $f::<Rational>($($arg),*)
        } else {
            $f::<LocalScalar>($($arg),*)
        }
    };
}

pub(crate) fn is_zero_engine<C: Field>(m: &Matrix<C>, n: usize) -> bool {
    m.cols == 0 || Basis::new(&m.rows, Ambient::new(n, m.cols), TermOrder::bernstein()).is_everything()
}

fn is_zero_module<C: Coefficient>(m: &PresentedModule) -> Result<bool, ModuleError> {
    Ok(is_zero_engine(&m.left_matrix::<C>()?, m.n))
}

/// Zero-module detection via a Gröbner basis of the relations.
pub fn is_zero(m: &PresentedModule) -> Result<bool, ModuleError> {
    dispatch!(m.ring, is_zero_module(m))
}

/// Whether a scalar is a unit of the coefficient ring (for the ℚ engine the
/// extra slot is `z`, so constants must not involve it).
fn is_unit<C: Field>(w: &Weyl<C>) -> Option<C> {
    match w.as_scalar() {
        Some(c) if !c.is_zero() => Some(c),
        _ => None,
    }
}

/// Removes generators that a relation with a unit entry expresses through
/// the others, then drops zero and redundant relations.
pub fn simplify_engine<C: Field>(m: &Matrix<C>, n: usize) -> Matrix<C> {
    let mut rows = m.rows.clone();
    let mut cols = m.cols;
    loop {
        let pivot = rows.iter().enumerate().find_map(|(i, r)| {
            r.iter().enumerate().find_map(|(j, e)| is_unit(e).map(|u| (i, j, u)))
        });
        let Some((i, j, u)) = pivot else { break };
        let prow = rows.remove(i);
        let uinv = u.inv();
        for r in rows.iter_mut() {
            if r[j].is_zero() {
                continue;
            }
            let c = r[j].scale(&uinv);
            for (e, p) in r.iter_mut().zip(&prow) {
                *e = e.sub(&c.mul(p));
            }
        }
        for r in rows.iter_mut() {
            debug_assert!(r[j].is_zero());
            r.remove(j);
        }
        cols -= 1;
    }
    let rows = prune(&rows, Ambient::new(n, cols));
    Matrix::new(cols, rows)
}

pub fn simplify(m: &PresentedModule) -> Result<PresentedModule, ModuleError> {
    fn go<C: Coefficient>(m: &PresentedModule) -> Result<PresentedModule, ModuleError> {
        let s = simplify_engine(&m.left_matrix::<C>()?, m.n);
        Ok(PresentedModule::from_left_matrix(m.ring, m.side, m.n, &s))
    }
    dispatch!(m.ring, go(m))
}

// ---------------------------------------------------------------------------
// Dimension and characteristic cycle.

/// Krull dimension of `ℚ[v]/I` for a monomial ideal given by exponent
/// vectors: the largest variable set containing no generator's support.
fn monomial_ideal_dim(gens: &[Vec<u32>], nvars: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for mask in 0u32..(1 << nvars) {
        let ok = gens.iter().all(|g| g.iter().enumerate().any(|(i, &e)| e > 0 && mask & (1 << i) == 0));
        if ok {
            let k = mask.count_ones() as usize;
            best = Some(best.map_or(k, |b: usize| b.max(k)));
        }
    }
    best
}

fn hilbert_dimension_engine<C: Coefficient>(m: &PresentedModule) -> Result<usize, ModuleError> {
    let a = m.left_matrix::<C>()?;
    let gb = Basis::new(&a.rows, Ambient::new(m.n, a.cols), TermOrder::bernstein());
    let leads = gb.leading_terms();
    let mut dim: Option<usize> = None;
    for j in 0..a.cols {
        let gens: Vec<Vec<u32>> = leads
            .iter()
            .filter(|(c, _)| *c == j)
            .map(|(_, mon)| mon.alpha().iter().chain(mon.beta()).copied().collect())
            .collect();
        if let Some(d) = monomial_ideal_dim(&gens, 2 * m.n) {
            dim = Some(dim.map_or(d, |x| x.max(d)));
        }
    }
    dim.ok_or(ModuleError::ZeroModule)
}

/// Dimension of the characteristic variety (Bernstein filtration).
pub fn hilbert_dimension(m: &PresentedModule) -> Result<usize, ModuleError> {
    if !m.ring.is_field() {
        return Err(ModuleError::FieldRequired);
    }
    dispatch!(m.ring, hilbert_dimension_engine(m))
}

fn symbol_row<C: Field>(row: &[Weyl<C>], n: usize) -> Vec<Poly<C>> {
    let d = row.iter().filter_map(Weyl::bernstein_degree).max().unwrap_or(0);
    row.iter()
        .map(|e| match e.bernstein_degree() {
            Some(k) if k == d => e.principal_symbol().expect("nonzero"),
            _ => Poly::zero(2 * n),
        })
        .collect()
}

fn to_rational_poly<C: Field>(p: &Poly<C>) -> Result<Poly<Rational>, ModuleError> {
    let mut out = Poly::zero(p.nvars());
    for (e, c) in p.terms() {
        let q = c
            .to_rational()
            .ok_or_else(|| ModuleError::UnsupportedAmbient("characteristic cycles over QQ(z)".to_string()))?;
        out.add_term(e.clone(), q);
    }
    Ok(out)
}

fn char_cycle_engine<C: Coefficient>(m: &PresentedModule) -> Result<CharCycle, ModuleError> {
    let a = m.left_matrix::<C>()?;
    let n = m.n;
    let r = a.cols;
    let gb = Basis::new(&a.rows, Ambient::new(n, r), TermOrder::bernstein());
    if r == 0 || gb.is_everything() {
        return Err(ModuleError::ZeroModule);
    }
    let gens = gb.generators();
    let symbols: Vec<Vec<Poly<Rational>>> = gens
        .iter()
        .map(|g| symbol_row(g, n).iter().map(to_rational_poly).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    if n == 1 {
        return char_cycle_n1(&symbols, r);
    }
    if r == 1 && symbols.len() == 1 {
        return Ok(CharCycle::from_components(n, cycle::factor_form(&symbols[0][0])?));
    }
    if r == 1 && symbols.is_empty() {
        return Ok(CharCycle::from_components(n, [(Vec::new(), 1)]));
    }
    Err(ModuleError::UnsupportedAmbient("characteristic cycles for n > 1 beyond principal relations".to_string()))
}

fn char_cycle_n1(symbols: &[Vec<Poly<Rational>>], r: usize) -> Result<CharCycle, ModuleError> {
    let nvars = 2;
    let mut rank = 0;
    let mut top_minors: Vec<Poly<Rational>> = Vec::new();
    for k in (1..=r.min(symbols.len())).rev() {
        let mut minors = Vec::new();
        for rows in cycle::subsets(symbols.len(), k) {
            for cols in cycle::subsets(r, k) {
                let sub: Vec<Vec<Poly<Rational>>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| symbols[i][j].clone()).collect()).collect();
                let d = cycle::det(&sub, nvars);
                if !d.is_zero() {
                    minors.push(d);
                }
            }
        }
        if !minors.is_empty() {
            rank = k;
            top_minors = minors;
            break;
        }
    }
    if rank < r {
        // non-holonomic: the whole cotangent plane with the rank deficiency
        return Ok(CharCycle::from_components(1, [(Vec::new(), (r - rank) as u32)]));
    }
    Ok(CharCycle::from_components(1, cycle::binary_gcd_components(&top_minors, nvars, 0, 1)?))
}

/// Characteristic cycle of `M` (of `τM` for right modules).
pub fn char_cycle(m: &PresentedModule) -> Result<CharCycle, ModuleError> {
    if !m.ring.is_field() {
        return Err(ModuleError::FieldRequired);
    }
    let left = m.as_left();
    dispatch!(m.ring, char_cycle_engine(&left))
}

// ---------------------------------------------------------------------------
// Ext, grade and duality.

/// The two submodules `I ⊆ K ⊆ W^{r_i}` with `Ext^i(M, W)` (in left form)
/// equal to `K / I`; `None` when `F_i = 0`.
pub(crate) struct ExtData<C> {
    pub rank: usize,
    pub kernel: Vec<Row<C>>,
    pub image: Vec<Row<C>>,
}

pub(crate) fn ext_data<C: Field>(i: usize, pres: &Matrix<C>, n: usize) -> Option<ExtData<C>> {
    let res = resolve(pres, n, i + 1);
    let rank = *res.ranks.get(i)?;
    let amb = Ambient::new(n, rank);
    let image: Vec<Row<C>> = if i == 0 { Vec::new() } else { res.matrices[i - 1].adjoint(n).rows };
    let kernel: Vec<Row<C>> = match res.matrices.get(i) {
        Some(next) => {
            let adj = next.adjoint(n);
            syzygies(&adj.rows, Ambient::new(n, adj.cols))
        }
        None => (0..rank).map(|j| amb.unit_row(j)).collect(),
    };
    Some(ExtData { rank, kernel, image })
}

/// Presentation of `K / I` on the generators of `K`.
pub(crate) fn subquotient<C: Field>(kernel: &[Row<C>], image: &[Row<C>], n: usize, rank: usize) -> Matrix<C> {
    let amb = Ambient::new(n, rank);
    let kernel = prune(kernel, amb);
    let s = kernel.len();
    if s == 0 {
        return Matrix::new(0, Vec::new());
    }
    let mut gens = kernel.clone();
    gens.extend(image.iter().cloned());
    let rel: Vec<Row<C>> = syzygies(&gens, amb).into_iter().map(|r| r[..s].to_vec()).filter(|r| !row_is_zero(r)).collect();
    let m = Matrix::new(s, rel);
    if is_zero_engine(&m, n) {
        return Matrix::new(0, Vec::new());
    }
    simplify_engine(&m, n)
}

/// `Ext^i(M, W)` as a left-form matrix.
pub(crate) fn ext_engine<C: Field>(i: usize, pres: &Matrix<C>, n: usize) -> Matrix<C> {
    match ext_data(i, pres, n) {
        None => Matrix::new(0, Vec::new()),
        Some(d) => subquotient(&d.kernel, &d.image, n, d.rank),
    }
}

/// Whether `Ext^i(M, W) ≠ 0`, by testing `K ⊄ I`.
pub(crate) fn ext_nonzero<C: Field>(i: usize, pres: &Matrix<C>, n: usize) -> bool {
    match ext_data(i, pres, n) {
        None => false,
        Some(d) => {
            let gb = Basis::new(&d.image, Ambient::new(n, d.rank), TermOrder::bernstein());
            d.kernel.iter().any(|k| !gb.contains(k))
        }
    }
}

fn ext_module<C: Coefficient>(i: usize, m: &PresentedModule) -> Result<PresentedModule, ModuleError> {
    let a = m.left_matrix::<C>()?;
    let e = ext_engine(i, &a, m.n);
    Ok(PresentedModule::from_left_matrix(m.ring, m.side.opposite(), m.n, &e))
}

/// `Ext^i(M, W)`, a module of the opposite side.
pub fn ext(i: usize, m: &PresentedModule) -> Result<PresentedModule, ModuleError> {
    if i > m.homological_bound() {
        return Err(ModuleError::IndexOutOfRange(i));
    }
    dispatch!(m.ring, ext_module(i, m))
}

/// Grade of a module; `None` encodes `+∞` (the zero module).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Grade {
    Finite(usize),
    Infinite,
}

fn grade_engine<C: Coefficient>(m: &PresentedModule) -> Result<Grade, ModuleError> {
    let a = m.left_matrix::<C>()?;
    if is_zero_engine(&a, m.n) {
        return Ok(Grade::Infinite);
    }
    for i in 0..=m.homological_bound() {
        if ext_nonzero(i, &a, m.n) {
            return Ok(Grade::Finite(i));
        }
    }
    Err(ModuleError::CrossCheckFailed("nonzero module with all Ext groups zero".to_string()))
}

pub fn grade(m: &PresentedModule) -> Result<Grade, ModuleError> {
    dispatch!(m.ring, grade_engine(m))
}

/// `grade(M) = n`; for `n = 1` also checked against the dimension of the
/// characteristic variety.
pub fn is_minimal_dimension(m: &PresentedModule) -> Result<bool, ModuleError> {
    if !m.ring.is_field() {
        return Err(ModuleError::FieldRequired);
    }
    let g = grade(m)?;
    let verdict = g == Grade::Finite(m.n);
    if m.n == 1 && g != Grade::Infinite {
        let d = hilbert_dimension(m)?;
        if (d == 1) != verdict {
            return Err(ModuleError::CrossCheckFailed(format!("grade {g:?} but dimension {d}")));
        }
    }
    Ok(verdict)
}

/// `M* = Ext^n(M, W)` for a module of minimal dimension.
pub fn dual_star(m: &PresentedModule) -> Result<PresentedModule, ModuleError> {
    if !is_minimal_dimension(m)? {
        return Err(ModuleError::NotMinimalDimension);
    }
    ext(m.n, m)
}
