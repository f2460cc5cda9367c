//! Integral models over `W_n(ℚ[z])` of modules over the z-adically completed
//! Weyl algebra: z-saturation, reduction mod `z`, the double-dual good
//! lattice, lattice comparison and the Künneth sequence for `⊗ ℚ[z]/(z)`.
//!
//! Everything runs on the ℚ engine with `z` in the extra monomial slot.
//! Coefficients with denominators invertible at `z = 0` are accepted and
//! cleared row by row, which does not change the span over the local ring.

use thiserror::Error;

use crate::groebner::{
    colon_z, colon_z_by_syzygies, prune, same_submodule, saturate_z_rows, syzygies, Ambient, Basis, FreeVector,
    GroebnerError, Matrix, Row, Side, TermOrder,
};
use crate::module_theory::{
    char_cycle, ext_engine, is_minimal_dimension, is_zero_engine, subquotient, CharCycle, ModuleError,
    PresentedModule,
};
use crate::scalars::{LocalScalar, Rational, UPoly};
use crate::weyl::{RingTag, Weyl, WeylElement};

type Q = Rational;

/// Default bound on the powers of `z` tried in containment checks.
pub const DEFAULT_ZPOWER: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("presentation is not z-saturated")]
    NotSaturated,
    #[error("the reduction is not of minimal dimension")]
    NotMinimalDimension,
    #[error("the lattices do not span the same module")]
    NotSameModule,
    #[error("coefficient {0} is not integral at z = 0")]
    NotIntegral(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// A presentation over `W_n(ℚ[z])`; `saturated` records that the cokernel
/// has no z-torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralPresentation {
    pub module: PresentedModule,
    pub saturated: bool,
}

fn lcm(a: &UPoly, b: &UPoly) -> UPoly {
    (a * b).exact_div(&a.gcd(b)).monic()
}

fn clear_denominators(v: &FreeVector) -> Result<FreeVector, LatticeError> {
    let mut den = UPoly::one();
    for e in &v.entries {
        for c in e.body().terms().values() {
            if !c.is_integral() {
                return Err(LatticeError::NotIntegral(c.to_string()));
            }
            den = lcm(&den, c.denominator());
        }
    }
    let scale = LocalScalar::from_poly(den);
    let entries = v
        .entries
        .iter()
        .map(|e| {
            let body = e.body().map_coeffs(|c| c.clone() * &scale);
            WeylElement::new(RingTag::PolynomialZ, body).map_err(GroebnerError::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FreeVector::new(entries))
}

impl IntegralPresentation {
    /// Accepts presentations over any ring tag whose coefficients are
    /// integral at `z = 0`, clearing unit denominators.
    pub fn new(module: PresentedModule) -> Result<Self, LatticeError> {
        let relations = module.relations.iter().map(clear_denominators).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { module: PresentedModule { ring: RingTag::PolynomialZ, relations, ..module }, saturated: false })
    }

    pub fn n(&self) -> usize {
        self.module.n
    }

    pub fn side(&self) -> Side {
        self.module.side
    }

    pub fn gens(&self) -> usize {
        self.module.gens
    }

    pub(crate) fn engine(&self) -> Matrix<Q> {
        self.module.left_matrix::<Q>().expect("integral presentation converts to the rational engine")
    }

    pub(crate) fn from_engine(side: Side, n: usize, m: &Matrix<Q>, saturated: bool) -> Self {
        Self { module: PresentedModule::from_left_matrix(RingTag::PolynomialZ, side, n, m), saturated }
    }

    /// The same relations over `ℚ(z)`: the uncompleted generic fiber.
    pub fn generic_fiber(&self) -> PresentedModule {
        let relations = self
            .module
            .relations
            .iter()
            .map(|v| FreeVector::new(v.entries.iter().map(|e| e.retag(RingTag::LocalField).expect("widening")).collect()))
            .collect();
        PresentedModule { ring: RingTag::LocalField, relations, ..self.module.clone() }
    }
}

fn saturate_matrix(m: &Matrix<Q>, n: usize) -> Matrix<Q> {
    let amb = Ambient::new(n, m.cols);
    let sat = saturate_z_rows(&m.rows, amb);
    Matrix::new(m.cols, prune(&sat, amb))
}

/// Entrywise evaluation at `z = 0`.
pub(crate) fn reduce_matrix(m: &Matrix<Q>) -> Matrix<Q> {
    Matrix::new(m.cols, m.rows.iter().map(|r| r.iter().map(|e| e.t_coefficient(0)).collect()).collect())
}

/// Replaces the relations by their z-saturation.
pub fn make_lattice(p: &IntegralPresentation) -> IntegralPresentation {
    if p.saturated {
        return p.clone();
    }
    let sat = saturate_matrix(&p.engine(), p.n());
    IntegralPresentation::from_engine(p.side(), p.n(), &sat, true)
}

/// The reduction `L/zL` and its invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub reduced: PresentedModule,
    pub is_zero: bool,
    pub char_cycle: Option<CharCycle>,
    pub minimal_dimension: Option<bool>,
}

pub fn reduce_mod_z(p: &IntegralPresentation) -> Result<ReductionReport, LatticeError> {
    if !p.saturated {
        return Err(LatticeError::NotSaturated);
    }
    let red = reduce_matrix(&p.engine());
    let reduced = PresentedModule::from_left_matrix(RingTag::RationalField, p.side(), p.n(), &red);
    if is_zero_engine(&red, p.n()) {
        return Ok(ReductionReport { reduced, is_zero: true, char_cycle: None, minimal_dimension: None });
    }
    let cycle = match char_cycle(&reduced) {
        Ok(c) => Some(c),
        Err(ModuleError::UnsupportedAmbient(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let minimal = is_minimal_dimension(&reduced)?;
    Ok(ReductionReport { reduced, is_zero: false, char_cycle: cycle, minimal_dimension: Some(minimal) })
}

/// Minimal dimension of the completed module, decided on the reduction of
/// its saturated lattice. The zero module has infinite grade and counts as
/// not of minimal dimension.
pub fn minimal_dimension_via_reduction(p: &IntegralPresentation) -> Result<bool, LatticeError> {
    Ok(reduce_mod_z(&make_lattice(p))?.minimal_dimension.unwrap_or(false))
}

/// Whether the completed module is zero, i.e. its reduction vanishes.
pub fn completed_is_zero(p: &IntegralPresentation) -> Result<bool, LatticeError> {
    Ok(reduce_mod_z(&make_lattice(p))?.is_zero)
}

/// Zero test over `W_n(ℚ(z))` before completion. Diagnostic only: units of
/// the completed algebra are not units here.
pub fn generic_fiber_is_zero(p: &IntegralPresentation) -> Result<bool, LatticeError> {
    Ok(crate::module_theory::is_zero(&p.generic_fiber())?)
}

/// `sat(Ext^n(sat(Ext^n(L))))` over `W_n(ℚ[z])` for the saturated lattice `L`.
pub fn good_lattice(p: &IntegralPresentation) -> Result<IntegralPresentation, LatticeError> {
    if !minimal_dimension_via_reduction(p)? {
        return Err(LatticeError::NotMinimalDimension);
    }
    let n = p.n();
    let l = make_lattice(p);
    let dual = saturate_matrix(&ext_engine(n, &l.engine(), n), n);
    let double = saturate_matrix(&ext_engine(n, &dual, n), n);
    let out = IntegralPresentation::from_engine(p.side(), n, &double, true);
    if reduce_mod_z(&out)?.minimal_dimension != Some(true) {
        return Err(ModuleError::CrossCheckFailed("good lattice reduction is not of minimal dimension".into()).into());
    }
    Ok(out)
}

/// A lattice given by generators inside the saturated cokernel of an
/// ambient left presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub ambient: IntegralPresentation,
    pub generators: Vec<FreeVector>,
}

impl Lattice {
    /// The lattice spanned by the images of the standard generators.
    pub fn standard(ambient: IntegralPresentation) -> Self {
        let n = ambient.n();
        let r = ambient.gens();
        let generators = (0..r)
            .map(|j| {
                FreeVector::new(
                    (0..r)
                        .map(|k| if k == j { WeylElement::one(n, RingTag::PolynomialZ) } else { WeylElement::zero(n, RingTag::PolynomialZ) })
                        .collect(),
                )
            })
            .collect();
        Self { ambient, generators }
    }

    pub fn generated_by(ambient: IntegralPresentation, generators: Vec<FreeVector>) -> Result<Self, LatticeError> {
        let generators = generators.iter().map(clear_denominators).collect::<Result<Vec<_>, _>>()?;
        if let Some(g) = generators.iter().find(|g| g.rank() != ambient.gens()) {
            return Err(GroebnerError::RankMismatch { expected: ambient.gens(), found: g.rank() }.into());
        }
        Ok(Self { ambient, generators })
    }

    fn ambient_relations(&self) -> Matrix<Q> {
        make_lattice(&self.ambient).engine()
    }

    fn generator_rows(&self) -> Vec<Row<Q>> {
        let m = PresentedModule { relations: self.generators.clone(), ..self.ambient.module.as_left() };
        m.left_matrix::<Q>().expect("integral generators").rows
    }

    /// Presentation of the lattice on its generators: the relations are the
    /// combinations landing in the saturated ambient relations.
    pub fn presentation(&self) -> IntegralPresentation {
        let n = self.ambient.n();
        let rel = self.ambient_relations();
        let gens = self.generator_rows();
        let s = gens.len();
        let mut all = gens;
        all.extend(rel.rows.iter().cloned());
        let syz: Vec<Row<Q>> = syzygies(&all, Ambient::new(n, rel.cols)).into_iter().map(|r| r[..s].to_vec()).collect();
        let rows = prune(&syz, Ambient::new(n, s));
        IntegralPresentation::from_engine(Side::Left, n, &Matrix::new(s, rows), true)
    }
}

/// Least `a ≤ bound` with `z^a·v` in the span of `basis`.
fn z_exponent(basis: &Basis<Q>, v: &[Weyl<Q>], bound: u32) -> Option<u32> {
    (0..=bound).find(|&a| basis.contains(&v.iter().map(|e| e.mul_t(a)).collect::<Vec<_>>()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeComparison {
    pub first: ReductionReport,
    pub second: ReductionReport,
    pub equal: bool,
    pub multiplicity_sums: (u32, u32),
    /// Powers with `z^a·P ⊆ Q` and `z^b·Q ⊆ P`.
    pub exponents: (u32, u32),
}

fn containment_exponent(from: &[Row<Q>], into: &[Row<Q>], rel: &[Row<Q>], amb: Ambient, bound: u32) -> Option<u32> {
    let mut span = into.to_vec();
    span.extend(rel.iter().cloned());
    let gb = Basis::new(&span, amb, TermOrder::bernstein());
    from.iter().map(|v| z_exponent(&gb, v, bound)).try_fold(0, |acc, a| a.map(|a| acc.max(a)))
}

/// Reduces two lattices of the same module and compares the cycles of the
/// reductions.
pub fn compare_lattices(p: &Lattice, q: &Lattice, zpower: u32) -> Result<LatticeComparison, LatticeError> {
    let n = p.ambient.n();
    if n != q.ambient.n() || p.ambient.gens() != q.ambient.gens() {
        return Err(LatticeError::NotSameModule);
    }
    let amb = Ambient::new(n, p.ambient.gens());
    let rp = p.ambient_relations();
    let rq = q.ambient_relations();
    if !same_submodule(&rp.rows, &rq.rows, amb) {
        return Err(LatticeError::NotSameModule);
    }
    let gp = p.generator_rows();
    let gq = q.generator_rows();
    let a = containment_exponent(&gp, &gq, &rp.rows, amb, zpower).ok_or(LatticeError::NotSameModule)?;
    let b = containment_exponent(&gq, &gp, &rp.rows, amb, zpower).ok_or(LatticeError::NotSameModule)?;
    let first = reduce_mod_z(&p.presentation())?;
    let second = reduce_mod_z(&q.presentation())?;
    let sum = |r: &ReductionReport| r.char_cycle.as_ref().map_or(0, CharCycle::multiplicity_sum);
    let equal = first.is_zero == second.is_zero && first.char_cycle == second.char_cycle;
    Ok(LatticeComparison { multiplicity_sums: (sum(&first), sum(&second)), first, second, equal, exponents: (a, b) })
}

/// A term of the Künneth sequence, described by its invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethTerm {
    pub is_zero: bool,
    /// Empty for the zero module; absent when not computable.
    pub char_cycle: Option<CharCycle>,
}

impl KunnethTerm {
    fn of(m: &Matrix<Q>, n: usize) -> Result<Self, LatticeError> {
        if is_zero_engine(m, n) {
            return Ok(Self { is_zero: true, char_cycle: Some(CharCycle::empty(n)) });
        }
        let module = PresentedModule::from_left_matrix(RingTag::RationalField, Side::Left, n, m);
        let cycle = match char_cycle(&module) {
            Ok(c) => Some(c),
            Err(ModuleError::UnsupportedAmbient(_)) => None,
            Err(e) => return Err(e.into()),
        };
        Ok(Self { is_zero: false, char_cycle: cycle })
    }

    fn finite_length(&self) -> bool {
        self.char_cycle.as_ref().is_some_and(CharCycle::is_holonomic_type)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethReport {
    pub index: usize,
    /// `Ext^i(L, B₀) ⊗ B̄`
    pub reduced_ext: KunnethTerm,
    /// `Ext^i(L̄, B̄)`
    pub ext_of_reduction: KunnethTerm,
    /// `Tor₁(Ext^{i+1}(L, B₀), B̄)`, the z-torsion of the next Ext
    pub tor: KunnethTerm,
    pub zero_pattern_holds: bool,
    /// Cycle additivity, checked when all three terms have finite length.
    pub additivity: Option<bool>,
    /// The torsion computed by elimination and by syzygies of `×z` agree.
    pub tor_routes_agree: bool,
}

pub fn kunneth_check(p: &IntegralPresentation, i: usize) -> Result<KunnethReport, LatticeError> {
    let n = p.n();
    if i > n + 1 {
        return Err(ModuleError::IndexOutOfRange(i).into());
    }
    if !p.saturated {
        return Err(LatticeError::NotSaturated);
    }
    let a = p.engine();

    let reduced_ext = KunnethTerm::of(&reduce_matrix(&ext_engine(i, &a, n)), n)?;
    let ext_of_reduction = KunnethTerm::of(&ext_engine(i, &reduce_matrix(&a), n), n)?;

    let next = ext_engine(i + 1, &a, n);
    let amb = Ambient::new(n, next.cols);
    let by_elimination = colon_z(&next.rows, amb);
    let by_syzygies = colon_z_by_syzygies(&next.rows, amb);
    let with_rel = |t: &[Row<Q>]| {
        let mut v = t.to_vec();
        v.extend(next.rows.iter().cloned());
        v
    };
    let tor_routes_agree = next.cols == 0 || same_submodule(&with_rel(&by_elimination), &with_rel(&by_syzygies), amb);
    let torsion = if next.cols == 0 {
        Matrix::new(0, Vec::new())
    } else {
        subquotient(&by_elimination, &next.rows, n, next.cols)
    };
    let tor = KunnethTerm::of(&reduce_matrix(&torsion), n)?;

    let zero_pattern_holds = ext_of_reduction.is_zero == (reduced_ext.is_zero && tor.is_zero);
    let terms = [&reduced_ext, &ext_of_reduction, &tor];
    let additivity = terms.iter().all(|t| t.is_zero || t.finite_length()).then(|| {
        let sum = reduced_ext.char_cycle.as_ref().unwrap().add(tor.char_cycle.as_ref().unwrap());
        ext_of_reduction.char_cycle.as_ref() == Some(&sum)
    });
    Ok(KunnethReport { index: i, reduced_ext, ext_of_reduction, tor, zero_pattern_holds, additivity, tor_routes_agree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module_theory::char_cycle;

    const QZ: RingTag = RingTag::PolynomialZ;

    fn x() -> WeylElement {
        WeylElement::x(1, QZ, 0)
    }

    fn d() -> WeylElement {
        WeylElement::d(1, QZ, 0)
    }

    fn s(c: LocalScalar) -> WeylElement {
        WeylElement::scalar(1, RingTag::LocalField, c).unwrap()
    }

    fn z() -> WeylElement {
        s(LocalScalar::z()).retag(QZ).unwrap()
    }

    fn mul(a: &WeylElement, b: &WeylElement) -> WeylElement {
        a.normal_product(b).unwrap()
    }

    fn avatar(p: WeylElement) -> IntegralPresentation {
        IntegralPresentation::new(PresentedModule::cyclic(p)).unwrap()
    }

    fn one() -> WeylElement {
        WeylElement::one(1, QZ)
    }

    fn cycle_names(r: &ReductionReport) -> Vec<(Vec<String>, u32)> {
        r.char_cycle.as_ref().unwrap().render()
    }

    #[test]
    fn saturation_removes_z_torsion() {
        let l = make_lattice(&avatar(mul(&z(), &d())));
        assert!(l.saturated);
        assert_eq!(l.module.relations, vec![FreeVector::new(vec![d()])]);
        let l = make_lattice(&avatar(mul(&z(), &d()).sub(&one()).unwrap()));
        assert_eq!(l.module.relations.len(), 1);
        assert_eq!(l.module.relations[0].entries[0], mul(&z(), &d()).sub(&one()).unwrap());
    }

    #[test]
    fn reductions() {
        let r = reduce_mod_z(&make_lattice(&avatar(d()))).unwrap();
        assert!(!r.is_zero);
        assert_eq!(r.minimal_dimension, Some(true));
        assert_eq!(cycle_names(&r), vec![(vec!["xi1".to_string()], 1)]);

        let unit = avatar(mul(&z(), &d()).sub(&one()).unwrap());
        assert!(completed_is_zero(&unit).unwrap());
        assert!(!generic_fiber_is_zero(&unit).unwrap());

        let r = reduce_mod_z(&make_lattice(&avatar(mul(&x(), &d()).sub(&z()).unwrap()))).unwrap();
        assert_eq!(r.char_cycle.unwrap().multiplicity_sum(), 2);
        assert_eq!(reduce_mod_z(&avatar(d())), Err(LatticeError::NotSaturated));
    }

    #[test]
    fn unit_denominators_are_cleared() {
        let u = LocalScalar::new(UPoly::one(), UPoly::from_i64s(&[1, 1])).unwrap();
        let p = mul(&x(), &d()).retag(RingTag::LocalField).unwrap().sub(&s(u)).unwrap();
        let l = IntegralPresentation::new(PresentedModule::cyclic(p)).unwrap();
        assert_eq!(l.module.ring, QZ);
        assert!(minimal_dimension_via_reduction(&l).unwrap());
        let bad = s(LocalScalar::z_pow(-1));
        assert!(matches!(
            IntegralPresentation::new(PresentedModule::cyclic(bad)),
            Err(LatticeError::NotIntegral(_))
        ));
    }

    #[test]
    fn minimal_dimension_verdicts() {
        assert!(minimal_dimension_via_reduction(&avatar(d().sub(&z()).unwrap())).unwrap());
        let free = IntegralPresentation::new(PresentedModule::free(QZ, Side::Left, 1, 1)).unwrap();
        assert!(!minimal_dimension_via_reduction(&free).unwrap());
        assert_eq!(good_lattice(&free), Err(LatticeError::NotMinimalDimension));
    }

    #[test]
    fn good_lattice_keeps_the_cycle() {
        for p in [d(), x()] {
            let a = avatar(p);
            let g = good_lattice(&a).unwrap();
            let want = reduce_mod_z(&make_lattice(&a)).unwrap().char_cycle;
            assert_eq!(reduce_mod_z(&g).unwrap().char_cycle, want);
        }
    }

    #[test]
    fn comparing_lattices() {
        let a = avatar(mul(&x(), &d()));
        let std = Lattice::standard(a.clone());
        let other = Lattice::generated_by(a.clone(), vec![FreeVector::new(vec![z()]), FreeVector::new(vec![x()])]).unwrap();
        let c = compare_lattices(&std, &other, DEFAULT_ZPOWER).unwrap();
        assert!(c.equal);
        assert_eq!(c.multiplicity_sums, (2, 2));

        let scaled = Lattice::generated_by(a, vec![FreeVector::new(vec![z()])]).unwrap();
        let c = compare_lattices(&std, &scaled, DEFAULT_ZPOWER).unwrap();
        assert!(c.equal);
        assert_eq!(c.exponents, (1, 0));

        let delta = Lattice::standard(avatar(x()));
        let o = Lattice::standard(avatar(d()));
        assert_eq!(compare_lattices(&o, &delta, DEFAULT_ZPOWER), Err(LatticeError::NotSameModule));
    }

    #[test]
    fn kunneth_on_polynomial_avatar() {
        let l = make_lattice(&avatar(d()));
        let r1 = kunneth_check(&l, 1).unwrap();
        assert!(!r1.reduced_ext.is_zero);
        assert!(r1.tor.is_zero);
        assert_eq!(r1.reduced_ext.char_cycle, r1.ext_of_reduction.char_cycle);
        assert_eq!(r1.additivity, Some(true));
        assert!(r1.tor_routes_agree);
        let r0 = kunneth_check(&l, 0).unwrap();
        assert!(r0.reduced_ext.is_zero && r0.ext_of_reduction.is_zero && r0.tor.is_zero);
    }

    #[test]
    fn kunneth_on_free_module() {
        let free = make_lattice(&IntegralPresentation::new(PresentedModule::free(QZ, Side::Left, 1, 1)).unwrap());
        let r = kunneth_check(&free, 0).unwrap();
        assert!(!r.reduced_ext.is_zero && !r.ext_of_reduction.is_zero);
        assert!(r.tor.is_zero);
        assert!(r.zero_pattern_holds);
        assert_eq!(
            char_cycle(&reduce_mod_z(&free).unwrap().reduced).unwrap(),
            r.ext_of_reduction.char_cycle.clone().unwrap()
        );
    }
}
