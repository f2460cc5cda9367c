//! De Rham complexes of left modules, exact de Rham cohomology for `n = 1`,
//! Euler characteristics through reduction mod `z`, and Euler
//! characteristics of perfect complexes over `ℚ[z]₍z₎`.
//!
//! For `n = 1` the transform `σ: x ↦ −∂, ∂ ↦ x` carries the action of `∂` on
//! `M` to the action of `x` on `σM`, so `H⁰` and `H¹` are the kernel and
//! cokernel of `x` on `σM`. Those are computed on the finite window of the
//! V-filtration cut out by the integer roots of the b-function.

mod oracle;
mod perfect;
mod restriction;

use thiserror::Error;

pub use oracle::{stabilized_cohomology, truncated_dims, StabilizedCohomology};
pub use perfect::{euler_check_perfect, random_perfect_complex, EulerReport, PerfectComplex};
pub use restriction::BFunction;

use crate::groebner::{FreeVector, GroebnerError, Matrix, Row, Side};
use crate::lattice::{make_lattice, minimal_dimension_via_reduction, reduce_mod_z, IntegralPresentation, LatticeError};
use crate::module_theory::{ModuleError, PresentedModule};
use crate::scalars::Rational;
use crate::weyl::{Poly, RingTag, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerhamError {
    #[error("de Rham complexes are defined for left modules")]
    RightModule,
    #[error("the module is not holonomic")]
    NotHolonomic,
    #[error("the reduction is not of minimal dimension")]
    NotMinimalDimension,
    #[error("unsupported: {0}")]
    UnsupportedAmbient(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// Degree `s` of the de Rham complex: one copy of `M` per `dx_I`, `|I| = s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeRhamTerm {
    pub degree: usize,
    /// Sorted index sets `I` (0-based).
    pub copies: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeRhamComplex {
    pub n: usize,
    pub module: PresentedModule,
    pub terms: Vec<DeRhamTerm>,
}

fn subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, s, &mut Vec::new(), &mut out);
    out
}

pub fn dr_complex(m: &PresentedModule) -> Result<DeRhamComplex, DerhamError> {
    if m.side == Side::Right {
        return Err(DerhamError::RightModule);
    }
    if !m.ring.is_field() {
        return Err(ModuleError::FieldRequired.into());
    }
    let terms = (0..=m.n).map(|s| DeRhamTerm { degree: s, copies: subsets(m.n, s) }).collect();
    Ok(DeRhamComplex { n: m.n, module: m.clone(), terms })
}

impl DeRhamComplex {
    /// `δ(Σ m_I dx_I) = Σ_I Σ_i ∂_i m_I dx_i ∧ dx_I`, for any model of the
    /// module in which `act(i, m)` is `∂_i·m`.
    pub fn differential_with<T: Clone>(
        &self,
        s: usize,
        elem: &[T],
        zero: &T,
        act: impl Fn(usize, &T) -> T,
        add: impl Fn(&T, &T) -> T,
        neg: impl Fn(&T) -> T,
    ) -> Vec<T> {
        let target = &self.terms[s + 1].copies;
        let mut out = vec![zero.clone(); target.len()];
        for (m, set) in elem.iter().zip(&self.terms[s].copies) {
            for i in (0..self.n).filter(|i| !set.contains(i)) {
                let before = set.iter().filter(|&&j| j < i).count();
                let mut merged = set.clone();
                merged.push(i);
                merged.sort_unstable();
                let k = target.iter().position(|t| *t == merged).expect("index set");
                let v = act(i, m);
                let v = if before % 2 == 0 { v } else { neg(&v) };
                out[k] = add(&out[k], &v);
            }
        }
        out
    }

    /// The differential on representatives in the free module.
    pub fn differential(&self, s: usize, elem: &[FreeVector]) -> Vec<FreeVector> {
        let (n, ring) = (self.n, self.module.ring);
        let zero = FreeVector::new(vec![WeylElement::zero(n, ring); self.module.gens]);
        self.differential_with(
            s,
            elem,
            &zero,
            |i, v| {
                let d = WeylElement::d(n, ring, i);
                FreeVector::new(v.entries.iter().map(|e| d.normal_product(e).expect("same ambient")).collect())
            },
            |a, b| FreeVector::new(a.entries.iter().zip(&b.entries).map(|(x, y)| x.add(y).expect("same ambient")).collect()),
            |a| FreeVector::new(a.entries.iter().map(WeylElement::neg).collect()),
        )
    }

    /// The differential on `ℚ[x]`-valued forms, for modules modelled by
    /// polynomials with `∂_i` acting as `∂/∂x_i`.
    pub fn differential_on_polynomials(&self, s: usize, elem: &[Poly<Rational>]) -> Vec<Poly<Rational>> {
        self.differential_with(s, elem, &Poly::zero(self.n), |i, f| f.derivative(i), Poly::add, |f| {
            f.scale(&Rational::from_integer((-1).into()))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    DirectN1,
    ViaReduction,
    Transfer,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    /// `dim H^i` for `i = 0..=n`, when known.
    pub dims: Option<Vec<usize>>,
    pub chi: i64,
    pub provenance: Provenance,
}

fn rational_left_matrix(m: &PresentedModule) -> Result<Matrix<Rational>, DerhamError> {
    if m.n != 1 {
        return Err(DerhamError::UnsupportedAmbient("de Rham cohomology needs n = 1".into()));
    }
    if m.side == Side::Right {
        return Err(DerhamError::RightModule);
    }
    if m.ring != RingTag::RationalField {
        return Err(DerhamError::UnsupportedAmbient(format!("de Rham cohomology over {}", m.ring.name())));
    }
    Ok(m.left_matrix::<Rational>()?)
}

/// b-function of `M` along `x = 0` (`n = 1`, coefficients in ℚ).
pub fn b_function_along_x(m: &PresentedModule) -> Result<BFunction, DerhamError> {
    let a = rational_left_matrix(m)?;
    Ok(restriction::b_function_of_rows(&a.rows, a.cols)?.0)
}

/// Exact `H⁰_dR`, `H¹_dR` of a holonomic module over `W₁(ℚ)`.
pub fn h_dr_n1(m: &PresentedModule) -> Result<CohomologyReport, DerhamError> {
    let a = rational_left_matrix(m)?;
    let rows: Vec<Row<Rational>> = a.rows.iter().map(|r| r.iter().map(|e| e.fourier_inverse()).collect()).collect();
    let (h0, h1) = restriction::x_action_cohomology(&rows, a.cols)?;
    Ok(CohomologyReport { dims: Some(vec![h0, h1]), chi: h0 as i64 - h1 as i64, provenance: Provenance::DirectN1 })
}

/// Euler characteristic of the completed module, through the reduction
/// of its saturated lattice.
pub fn chi_via_reduction(p: &IntegralPresentation) -> Result<CohomologyReport, DerhamError> {
    if p.n() != 1 {
        return Err(DerhamError::UnsupportedAmbient("Euler characteristics need n = 1".into()));
    }
    if !minimal_dimension_via_reduction(p)? {
        return Err(DerhamError::NotMinimalDimension);
    }
    let reduced = reduce_mod_z(&make_lattice(p))?.reduced;
    let direct = h_dr_n1(&reduced)?;
    Ok(CohomologyReport { dims: None, chi: direct.chi, provenance: Provenance::Transfer })
}

/// Cross-check of [`h_dr_n1`] against the truncated-filtration oracle.
pub fn stabilization_check(m: &PresentedModule, max_degree: u32, window: usize) -> Result<Option<StabilizedCohomology>, DerhamError> {
    let a = rational_left_matrix(m)?;
    Ok(stabilized_cohomology(&a, max_degree, window))
}

#[cfg(test)]
mod tests;
