//! Left Gröbner bases for submodules of `W^r`, normal forms, syzygies, free
//! resolutions, intersections and `z`-saturation.
//!
//! The engine works with [`Row`]s of generic [`Weyl`] elements. Over
//! `W_n(ℚ[z])` the coefficient field is ℚ and `z` occupies the extra
//! monomial slot. The public types at the bottom of this module wrap the
//! engine for [`WeylElement`] inputs.

mod basis;
mod order;
pub mod stats;
mod vector;

use thiserror::Error;

pub use basis::{complete, Ambient, Basis, Completion};
pub use order::{OrderKind, TermOrder};
pub use vector::Row;

use crate::scalars::{Field, LocalScalar, Rational};
use crate::weyl::{Extra, RingTag, Weyl, WeylElement, WeylError};

/// Coefficient fields the engine can run over, with conversions from the
/// tagged public elements.
pub trait Coefficient: Field {
    fn to_engine(e: &WeylElement) -> Result<Weyl<Self>, WeylError>;
    fn from_engine(ring: RingTag, w: &Weyl<Self>) -> WeylElement;
}

impl Coefficient for Rational {
    fn to_engine(e: &WeylElement) -> Result<Weyl<Self>, WeylError> {
        e.to_rational_engine()
    }
    fn from_engine(ring: RingTag, w: &Weyl<Self>) -> WeylElement {
        WeylElement::from_rational_engine(ring, w)
    }
}

impl Coefficient for LocalScalar {
    fn to_engine(e: &WeylElement) -> Result<Weyl<Self>, WeylError> {
        Ok(e.body().clone())
    }
    fn from_engine(ring: RingTag, w: &Weyl<Self>) -> WeylElement {
        WeylElement::from_local_engine(ring, w).expect("engine output stays in its ring")
    }
}

/// Whether a ring tag is handled by the ℚ engine (with `z` as a variable)
/// rather than the ℚ(z) engine.
pub fn uses_rational_engine(ring: RingTag) -> bool {
    !matches!(ring, RingTag::LocalField)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("vector of rank {found} used with a module of rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("incompatible ring, side or ambient dimension")]
    Incompatible,
    #[error("operation requires the ring QQ[z]")]
    NotIntegral,
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// A matrix over the Weyl algebra; rows are module elements.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<C> {
    pub cols: usize,
    pub rows: Vec<Row<C>>,
}

impl<C: Field> std::fmt::Debug for Matrix<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Matrix").field("cols", &self.cols).field("rows", &self.rows).finish()
    }
}

impl<C: Field> Matrix<C> {
    pub fn new(cols: usize, rows: Vec<Row<C>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Self { cols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Entry-wise `τ` followed by transposition.
    pub fn adjoint(&self, n: usize) -> Self {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].transpose()).collect())
            .collect();
        let _ = n;
        Self { cols: self.rows.len(), rows }
    }

    /// Product `self · other` (rows of self combine rows of other).
    pub fn mul(&self, other: &Self, n: usize) -> Self {
        debug_assert_eq!(self.cols, other.rows.len());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.cols)
                    .map(|j| {
                        r.iter().zip(&other.rows).fold(Weyl::zero(n), |acc, (a, orow)| acc.add(&a.mul(&orow[j])))
                    })
                    .collect()
            })
            .collect();
        Self { cols: other.cols, rows }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Weyl::is_zero))
    }
}

pub(crate) fn row_is_zero<C: Field>(r: &[Weyl<C>]) -> bool {
    r.iter().all(Weyl::is_zero)
}

/// `Σ c_k rows_k` with left coefficients.
pub fn combine<C: Field>(coeffs: &[Weyl<C>], rows: &[Row<C>], ambient: Ambient) -> Row<C> {
    let mut out = ambient.zero_row();
    for (c, r) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, e) in out.iter_mut().zip(r) {
            *o = o.add(&c.mul(e));
        }
    }
    out
}

/// Generators of the left syzygy module of `rows`.
pub fn syzygies<C: Field>(rows: &[Row<C>], ambient: Ambient) -> Vec<Row<C>> {
    complete(rows, ambient, TermOrder::bernstein(), true).syzygies
}

/// Drops zero rows and rows lying in the span of the rows kept before them.
pub fn prune<C: Field>(rows: &[Row<C>], ambient: Ambient) -> Vec<Row<C>> {
    let mut cand: Vec<Row<C>> = rows.iter().filter(|r| !row_is_zero(r)).cloned().collect();
    cand.sort_by_key(|r| r.iter().map(Weyl::len).sum::<usize>());
    cand.dedup();
    let mut kept: Vec<Row<C>> = Vec::new();
    let mut gb: Option<Basis<C>> = None;
    for r in cand {
        if let Some(g) = &gb {
            if g.contains(&r) {
                continue;
            }
        }
        kept.push(r);
        gb = Some(Basis::new(&kept, ambient, TermOrder::bernstein()));
    }
    kept
}

/// Generators of `N ∩ P` inside `W^rank`, by elimination in `W^{2·rank}`.
pub fn intersection<C: Field>(n_rows: &[Row<C>], p_rows: &[Row<C>], ambient: Ambient) -> Vec<Row<C>> {
    let r = ambient.rank;
    let big = Ambient { rank: 2 * r, ..ambient };
    let mut gens: Vec<Row<C>> = Vec::new();
    for v in n_rows {
        let mut row = v.clone();
        row.extend(v.iter().cloned());
        gens.push(row);
    }
    for p in p_rows {
        let mut row = p.clone();
        row.extend(ambient.zero_row::<C>());
        gens.push(row);
    }
    let gb = Basis::new(&gens, big, TermOrder::elimination(r));
    gb.generators()
        .into_iter()
        .filter(|g| row_is_zero(&g[..r]))
        .map(|g| g[r..].to_vec())
        .collect()
}

fn z_row<C: Field>(ambient: Ambient, j: usize) -> Row<C> {
    let mut row = ambient.zero_row();
    row[j] = Weyl::t(ambient.n);
    row
}

/// `(N : z)` via `(N ∩ zF) / z`; `z` is the extra slot.
pub fn colon_z<C: Field>(n_rows: &[Row<C>], ambient: Ambient) -> Vec<Row<C>> {
    debug_assert_eq!(ambient.extra, Extra::Central);
    let zf: Vec<Row<C>> = (0..ambient.rank).map(|j| z_row(ambient, j)).collect();
    intersection(n_rows, &zf, ambient)
        .into_iter()
        .map(|v| v.iter().map(|e| e.div_t(1)).collect())
        .collect()
}

/// `(N : z)` as the projection of the syzygies of `(z e_1, …, z e_r, N)`.
pub fn colon_z_by_syzygies<C: Field>(n_rows: &[Row<C>], ambient: Ambient) -> Vec<Row<C>> {
    let r = ambient.rank;
    let mut gens: Vec<Row<C>> = (0..r).map(|j| z_row(ambient, j)).collect();
    gens.extend(n_rows.iter().cloned());
    let amb = Ambient { rank: r, ..ambient };
    syzygies(&gens, amb).into_iter().map(|s| s[..r].to_vec()).filter(|s| !row_is_zero(s)).collect()
}

/// `(N : z^∞)`: the colon step is iterated until the submodule stops growing.
pub fn saturate_z_rows<C: Field>(n_rows: &[Row<C>], ambient: Ambient) -> Vec<Row<C>> {
    let mut current = Basis::new(n_rows, ambient, TermOrder::bernstein());
    loop {
        let gens = current.generators();
        let next = colon_z(&gens, ambient);
        if next.iter().all(|v| current.contains(v)) {
            return gens;
        }
        let mut all = gens;
        all.extend(next);
        current = Basis::new(&all, ambient, TermOrder::bernstein());
    }
}

/// Submodule equality by mutual membership.
pub fn same_submodule<C: Field>(a: &[Row<C>], b: &[Row<C>], ambient: Ambient) -> bool {
    let ga = Basis::new(a, ambient, TermOrder::bernstein());
    let gb = Basis::new(b, ambient, TermOrder::bernstein());
    b.iter().all(|v| ga.contains(v)) && a.iter().all(|v| gb.contains(v))
}

/// A free resolution `… → W^{r_2} → W^{r_1} → W^{r_0}`; `matrices[k]` has
/// `ranks[k+1]` rows and `ranks[k]` columns.
#[derive(Clone)]
pub struct Resolution<C> {
    pub ranks: Vec<usize>,
    pub matrices: Vec<Matrix<C>>,
}

/// Iterated syzygies of a presentation, pruned at every stage, stopping when
/// the syzygy module vanishes or after `max_length` maps.
pub fn resolve<C: Field>(presentation: &Matrix<C>, n: usize, max_length: usize) -> Resolution<C> {
    let mut ranks = vec![presentation.cols];
    let mut matrices: Vec<Matrix<C>> = Vec::new();
    let first = prune(&presentation.rows, Ambient::new(n, presentation.cols));
    if first.is_empty() || max_length == 0 {
        return Resolution { ranks, matrices };
    }
    let mut current = Matrix::new(presentation.cols, first);
    loop {
        ranks.push(current.nrows());
        matrices.push(current.clone());
        if matrices.len() >= max_length {
            break;
        }
        let amb = Ambient::new(n, current.cols);
        let syz = syzygies(&current.rows, amb);
        let next = prune(&syz, Ambient::new(n, current.nrows()));
        if next.is_empty() {
            break;
        }
        current = Matrix::new(current.nrows(), next);
    }
    Resolution { ranks, matrices }
}

// ---------------------------------------------------------------------------
// Public element-level interface.

/// Which side a module or Gröbner basis lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// An element of the free module `W^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeVector {
    pub entries: Vec<WeylElement>,
}

impl FreeVector {
    pub fn new(entries: Vec<WeylElement>) -> Self {
        Self { entries }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(WeylElement::is_zero)
    }
}

#[derive(Clone, Debug)]
enum EngineBasis {
    Rational(Basis<Rational>),
    Local(Basis<LocalScalar>),
}

/// A left (or, through `τ`, right) Gröbner basis of a submodule of `W^rank`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub order: TermOrder,
    pub ring: RingTag,
    pub side: Side,
    pub n: usize,
    pub rank: usize,
    inner: EngineBasis,
}

fn to_rows<C: Coefficient>(vs: &[FreeVector], side: Side) -> Result<Vec<Row<C>>, GroebnerError> {
    vs.iter()
        .map(|v| {
            v.entries
                .iter()
                .map(|e| {
                    let w = C::to_engine(e)?;
                    Ok(if side == Side::Right { w.transpose() } else { w })
                })
                .collect()
        })
        .collect()
}

fn from_row<C: Coefficient>(row: &[Weyl<C>], ring: RingTag, side: Side) -> FreeVector {
    FreeVector::new(
        row.iter()
            .map(|w| {
                let w = if side == Side::Right { w.transpose() } else { w.clone() };
                C::from_engine(ring, &w)
            })
            .collect(),
    )
}

fn check_shape(vs: &[FreeVector], ring: RingTag, n: usize, rank: usize) -> Result<(), GroebnerError> {
    for v in vs {
        if v.rank() != rank {
            return Err(GroebnerError::RankMismatch { expected: rank, found: v.rank() });
        }
        if v.entries.iter().any(|e| e.ring() != ring || e.ambient_n() != n) {
            return Err(GroebnerError::Incompatible);
        }
    }
    Ok(())
}

/// Gröbner basis of the submodule generated by `generators` in `W^rank`.
pub fn buchberger(
    generators: &[FreeVector],
    ring: RingTag,
    side: Side,
    n: usize,
    rank: usize,
    order: TermOrder,
) -> Result<GroebnerBasis, GroebnerError> {
    check_shape(generators, ring, n, rank)?;
    let amb = Ambient::new(n, rank);
    let inner = if uses_rational_engine(ring) {
        EngineBasis::Rational(Basis::new(&to_rows::<Rational>(generators, side)?, amb, order))
    } else {
        EngineBasis::Local(Basis::new(&to_rows::<LocalScalar>(generators, side)?, amb, order))
    };
    Ok(GroebnerBasis { order, ring, side, n, rank, inner })
}

impl GroebnerBasis {
    pub fn generators(&self) -> Vec<FreeVector> {
        match &self.inner {
            EngineBasis::Rational(b) => b.generators().iter().map(|r| from_row(r, self.ring, self.side)).collect(),
            EngineBasis::Local(b) => b.generators().iter().map(|r| from_row(r, self.ring, self.side)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        match &self.inner {
            EngineBasis::Rational(b) => b.len(),
            EngineBasis::Local(b) => b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_everything(&self) -> bool {
        match &self.inner {
            EngineBasis::Rational(b) => b.is_everything(),
            EngineBasis::Local(b) => b.is_everything(),
        }
    }

    pub fn contains(&self, v: &FreeVector) -> Result<bool, GroebnerError> {
        Ok(left_normal_form(v, self)?.is_zero())
    }
}

/// Remainder of `v` under division by `g` (on the basis' side).
pub fn left_normal_form(v: &FreeVector, g: &GroebnerBasis) -> Result<FreeVector, GroebnerError> {
    check_shape(std::slice::from_ref(v), g.ring, g.n, g.rank)?;
    Ok(match &g.inner {
        EngineBasis::Rational(b) => {
            let row = &to_rows::<Rational>(std::slice::from_ref(v), g.side)?[0];
            from_row(&b.normal_form(row), g.ring, g.side)
        }
        EngineBasis::Local(b) => {
            let row = &to_rows::<LocalScalar>(std::slice::from_ref(v), g.side)?[0];
            from_row(&b.normal_form(row), g.ring, g.side)
        }
    })
}

/// Generators of the syzygy module of the basis elements of `g`.
pub fn syzygy_module(g: &GroebnerBasis) -> Vec<FreeVector> {
    let amb = Ambient::new(g.n, g.rank);
    let k = g.len();
    match &g.inner {
        EngineBasis::Rational(b) => syzygies(&b.generators(), amb)
            .iter()
            .map(|r| from_row(&r[..k], g.ring, g.side))
            .collect(),
        EngineBasis::Local(b) => syzygies(&b.generators(), amb)
            .iter()
            .map(|r| from_row(&r[..k], g.ring, g.side))
            .collect(),
    }
}

/// A free resolution with element-level matrices.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub ranks: Vec<usize>,
    pub matrices: Vec<Vec<FreeVector>>,
}

fn resolution_of<C: Coefficient>(
    rows: &[FreeVector],
    ring: RingTag,
    side: Side,
    n: usize,
    cols: usize,
    max_length: usize,
) -> Result<FreeResolution, GroebnerError> {
    let m = Matrix::new(cols, to_rows::<C>(rows, side)?);
    let res = resolve(&m, n, max_length);
    Ok(FreeResolution {
        ranks: res.ranks,
        matrices: res
            .matrices
            .iter()
            .map(|a| a.rows.iter().map(|r| from_row(r, ring, side)).collect())
            .collect(),
    })
}

/// Free resolution of the cokernel of the rows of `presentation` in `W^cols`.
pub fn free_resolution(
    presentation: &[FreeVector],
    ring: RingTag,
    n: usize,
    cols: usize,
    max_length: usize,
) -> Result<FreeResolution, GroebnerError> {
    check_shape(presentation, ring, n, cols)?;
    if uses_rational_engine(ring) {
        resolution_of::<Rational>(presentation, ring, Side::Left, n, cols, max_length)
    } else {
        resolution_of::<LocalScalar>(presentation, ring, Side::Left, n, cols, max_length)
    }
}

/// Generators of `(N : z^∞)` for a submodule of `W_n(ℚ[z])^rank`.
pub fn saturate_z(generators: &[FreeVector], n: usize, rank: usize) -> Result<Vec<FreeVector>, GroebnerError> {
    check_shape(generators, RingTag::PolynomialZ, n, rank)?;
    let rows = to_rows::<Rational>(generators, Side::Left)?;
    let sat = saturate_z_rows(&rows, Ambient::new(n, rank));
    Ok(sat.iter().map(|r| from_row(r, RingTag::PolynomialZ, Side::Left)).collect())
}
