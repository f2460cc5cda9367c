//! Command dispatch.

use std::time::Instant;

use dmod::derham::{
    chi_via_reduction, dr_complex, euler_check_perfect, h_dr_n1, stabilization_check, DerhamError, PerfectComplex, Provenance,
};
use dmod::groebner::{buchberger, left_normal_form, stats, FreeVector, GroebnerError, TermOrder};
use dmod::lattice::{
    compare_lattices, completed_is_zero, generic_fiber_is_zero, good_lattice, kunneth_check, make_lattice,
    minimal_dimension_via_reduction, reduce_mod_z, IntegralPresentation, Lattice, LatticeError, DEFAULT_ZPOWER,
};
use dmod::module_theory::{
    char_cycle, dual_star, ext, grade, hilbert_dimension, is_minimal_dimension, is_zero, ModuleError, PresentedModule,
};
use dmod::weyl::{RingTag, WeylError};
use serde_json::{json, Map, Value};

use crate::parser::{parse, Object, SessionInput, Subcommand};
use crate::report;

pub const DEFAULT_MAX_DEGREE: u32 = 40;
/// Consecutive equal truncations required by the stabilization oracle.
pub const ORACLE_WINDOW: usize = 5;

/// Settings from the command line; they override flags in the input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub max_degree: Option<u32>,
    pub zpower: Option<u32>,
    pub stats: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunError {
    pub code: &'static str,
    pub message: String,
}

impl RunError {
    fn wrong_object(message: impl Into<String>) -> Self {
        Self { code: "wrong_object", message: message.into() }
    }
}

fn weyl_code(e: &WeylError) -> &'static str {
    match e {
        WeylError::MixedAmbient => "mixed_ambient",
        WeylError::ZeroElement => "zero_element",
        WeylError::RingMismatch(..) => "ring_mismatch",
    }
}

fn groebner_code(e: &GroebnerError) -> &'static str {
    match e {
        GroebnerError::RankMismatch { .. } => "rank_mismatch",
        GroebnerError::Incompatible => "incompatible",
        GroebnerError::NotIntegral => "not_integral",
        GroebnerError::Weyl(w) => weyl_code(w),
    }
}

fn module_code(e: &ModuleError) -> &'static str {
    match e {
        ModuleError::ZeroModule => "zero_module",
        ModuleError::UnsupportedAmbient(_) => "unsupported",
        ModuleError::IndexOutOfRange(_) => "index_out_of_range",
        ModuleError::NotMinimalDimension => "not_minimal_dimension",
        ModuleError::FieldRequired => "field_required",
        ModuleError::CrossCheckFailed(_) => "cross_check_failed",
        ModuleError::Groebner(g) => groebner_code(g),
    }
}

fn lattice_code(e: &LatticeError) -> &'static str {
    match e {
        LatticeError::NotSaturated => "not_saturated",
        LatticeError::NotMinimalDimension => "not_minimal_dimension",
        LatticeError::NotSameModule => "not_same_module",
        LatticeError::NotIntegral(_) => "not_integral",
        LatticeError::Module(m) => module_code(m),
        LatticeError::Groebner(g) => groebner_code(g),
    }
}

fn derham_code(e: &DerhamError) -> &'static str {
    match e {
        DerhamError::RightModule => "right_module",
        DerhamError::NotHolonomic => "not_holonomic",
        DerhamError::NotMinimalDimension => "not_minimal_dimension",
        DerhamError::UnsupportedAmbient(_) => "unsupported",
        DerhamError::NotAComplex(_) => "not_a_complex",
        DerhamError::Module(m) => module_code(m),
        DerhamError::Lattice(l) => lattice_code(l),
        DerhamError::Groebner(g) => groebner_code(g),
    }
}

macro_rules! into_run_error {
    ($($t:ty => $f:ident),*) => {$(
        impl From<$t> for RunError {
            fn from(e: $t) -> Self {
                Self { code: $f(&e), message: e.to_string() }
            }
        }
    )*};
}

into_run_error!(
    WeylError => weyl_code,
    GroebnerError => groebner_code,
    ModuleError => module_code,
    LatticeError => lattice_code,
    DerhamError => derham_code
);

/// Parses and runs a session, producing the report document.
pub fn execute(src: &str, opts: &Options) -> Outcome {
    let start = Instant::now();
    let mut doc = Map::new();
    let session = match parse(src) {
        Ok(s) => s,
        Err(e) => {
            doc.insert("command".into(), Value::Null);
            doc.insert("status".into(), json!("parse_error"));
            doc.insert("exit_code".into(), json!(2));
            doc.insert("result".into(), Value::Null);
            doc.insert(
                "error".into(),
                json!({ "code": e.kind.code(), "message": e.message, "line": e.line, "column": e.column, "token": e.token }),
            );
            doc.insert("stats".into(), Value::Null);
            doc.insert("timing_ms".into(), json!(start.elapsed().as_millis() as u64));
            return Outcome { exit_code: 2, report: Value::Object(doc) };
        }
    };
    let flags = session.command.flags;
    let settings = Settings {
        max_degree: opts.max_degree.or(flags.max_degree).unwrap_or(DEFAULT_MAX_DEGREE),
        zpower: opts.zpower.or(flags.zpower).unwrap_or(DEFAULT_ZPOWER),
    };
    let want_stats = opts.stats || flags.stats;
    stats::reset();
    let outcome = run(&session, settings);
    let s = stats::snapshot();
    doc.insert("command".into(), json!(session.command.text));
    let code = match outcome {
        Ok(result) => {
            doc.insert("status".into(), json!("ok"));
            doc.insert("result".into(), result);
            doc.insert("error".into(), Value::Null);
            0
        }
        Err(e) => {
            doc.insert("status".into(), json!("error"));
            doc.insert("result".into(), Value::Null);
            doc.insert("error".into(), json!({ "code": e.code, "message": e.message }));
            1
        }
    };
    doc.insert("exit_code".into(), json!(code));
    doc.insert(
        "stats".into(),
        if want_stats {
            json!({
                "s_pairs": s.s_pairs,
                "zero_reductions": s.zero_reductions,
                "bases_computed": s.bases_computed,
                "max_basis_size": s.max_basis_size,
            })
        } else {
            Value::Null
        },
    );
    doc.insert("timing_ms".into(), json!(start.elapsed().as_millis() as u64));
    Outcome { exit_code: code, report: Value::Object(doc) }
}

#[derive(Clone, Copy, Debug)]
struct Settings {
    max_degree: u32,
    zpower: u32,
}

fn module_of<'s>(s: &'s SessionInput, name: &str) -> Result<&'s PresentedModule, RunError> {
    match s.objects.get(name) {
        Some(Object::Module(m)) => Ok(m),
        Some(Object::Lattice { module, .. }) => module_of(s, module),
        _ => Err(RunError::wrong_object(format!("'{name}' is not a module"))),
    }
}

/// Modules over `ℚ[z]` are studied through their generic fiber over `ℚ(z)`.
fn over_field(m: &PresentedModule) -> PresentedModule {
    if m.ring.is_field() {
        return m.clone();
    }
    retag(m, RingTag::LocalField)
}

fn retag(m: &PresentedModule, ring: RingTag) -> PresentedModule {
    let relations = m.relations.iter().map(|v| retag_vector(v, ring)).collect();
    PresentedModule { ring, relations, ..m.clone() }
}

fn retag_vector(v: &FreeVector, ring: RingTag) -> FreeVector {
    FreeVector::new(v.entries.iter().map(|e| e.retag(ring).expect("widening the coefficient ring")).collect())
}

/// Whether the object is studied as an integral lattice.
fn is_integral(s: &SessionInput, name: &str) -> bool {
    match s.objects.get(name) {
        Some(Object::Lattice { .. }) => true,
        Some(Object::Module(m)) => m.ring != RingTag::RationalField,
        _ => false,
    }
}

fn lattice_of(s: &SessionInput, name: &str) -> Result<Lattice, RunError> {
    match s.objects.get(name) {
        Some(Object::Lattice { module, generators }) => {
            let ambient = IntegralPresentation::new(module_of(s, module)?.clone())?;
            Ok(match generators {
                Some(g) => Lattice::generated_by(ambient, g.clone())?,
                None => Lattice::standard(ambient),
            })
        }
        Some(Object::Module(m)) => Ok(Lattice::standard(IntegralPresentation::new(m.clone())?)),
        _ => Err(RunError::wrong_object(format!("'{name}' is not a module or lattice"))),
    }
}

/// The saturated presentation of the lattice named `name`.
fn integral_of(s: &SessionInput, name: &str) -> Result<IntegralPresentation, RunError> {
    let l = lattice_of(s, name)?;
    Ok(match s.objects.get(name) {
        Some(Object::Lattice { generators: Some(_), .. }) => l.presentation(),
        _ => make_lattice(&l.ambient),
    })
}

fn provenance(p: Provenance) -> Value {
    json!(match p {
        Provenance::DirectN1 => "DirectN1",
        Provenance::ViaReduction => "ViaReduction",
        Provenance::Transfer => "Transfer",
    })
}

fn run(s: &SessionInput, settings: Settings) -> Result<Value, RunError> {
    let name = s.command.target.as_str();
    match &s.command.sub {
        Subcommand::Gb => {
            let m = module_of(s, name)?;
            let gb = buchberger(&m.relations, m.ring, m.side, m.n, m.gens, TermOrder::bernstein())?;
            let basis: Vec<Value> = gb.generators().iter().map(report::vector).collect();
            Ok(json!({
                "order": "bernstein",
                "ring": report::ring(m.ring),
                "side": report::side(m.side),
                "size": gb.len(),
                "basis": basis,
                "is_everything": gb.is_everything(),
            }))
        }
        Subcommand::Nf(v) => {
            let m = module_of(s, name)?;
            let (m, v) = match v.entries.first().map(|e| e.ring()) {
                Some(r) if r != m.ring => (retag(m, RingTag::LocalField), retag_vector(v, RingTag::LocalField)),
                _ => (m.clone(), v.clone()),
            };
            let gb = buchberger(&m.relations, m.ring, m.side, m.n, m.gens, TermOrder::bernstein())?;
            let nf = left_normal_form(&v, &gb)?;
            Ok(json!({
                "input": report::vector(&v),
                "normal_form": report::vector(&nf),
                "member": nf.is_zero(),
            }))
        }
        Subcommand::Dim => {
            let m = over_field(module_of(s, name)?);
            Ok(json!({ "dimension": hilbert_dimension(&m)?, "is_zero": is_zero(&m)?, "ring": report::ring(m.ring) }))
        }
        Subcommand::Grade => {
            let m = over_field(module_of(s, name)?);
            Ok(json!({ "grade": report::grade(grade(&m)?), "n": m.n, "ring": report::ring(m.ring) }))
        }
        Subcommand::Holonomic => {
            let m = over_field(module_of(s, name)?);
            let verdict = is_minimal_dimension(&m)?;
            Ok(json!({ "verdict": verdict, "grade": report::grade(grade(&m)?), "ring": report::ring(m.ring) }))
        }
        Subcommand::Ext(i) => {
            let m = over_field(module_of(s, name)?);
            let e = ext(*i, &m)?;
            Ok(json!({ "index": i, "is_zero": is_zero(&e)?, "module": report::presentation(&e) }))
        }
        Subcommand::CharCycle => {
            let m = over_field(module_of(s, name)?);
            let c = char_cycle(&m)?;
            Ok(json!({ "char_cycle": report::cycle(&c), "holonomic_type": c.is_holonomic_type() }))
        }
        Subcommand::Dual => {
            let m = over_field(module_of(s, name)?);
            let d = dual_star(&m)?;
            Ok(json!({ "dual": report::presentation(&d), "grade": report::grade(grade(&d)?) }))
        }
        Subcommand::Reduce => {
            let p = integral_of(s, name)?;
            let r = reduce_mod_z(&p)?;
            Ok(json!({ "lattice": report::presentation(&p.module), "reduction": report::reduction(&r) }))
        }
        Subcommand::HolonomicHat => {
            let p = integral_of(s, name)?;
            Ok(json!({
                "verdict": minimal_dimension_via_reduction(&p)?,
                "completed_is_zero": completed_is_zero(&p)?,
                "generic_fiber_is_zero": generic_fiber_is_zero(&p)?,
            }))
        }
        Subcommand::GoodLattice => {
            let p = integral_of(s, name)?;
            let g = good_lattice(&p)?;
            let r = reduce_mod_z(&g)?;
            Ok(json!({ "lattice": report::presentation(&g.module), "reduction": report::reduction(&r) }))
        }
        Subcommand::CompareLattices(other) => {
            let a = lattice_of(s, name)?;
            let b = lattice_of(s, other)?;
            let c = compare_lattices(&a, &b, settings.zpower)?;
            Ok(json!({
                "verdict": c.equal,
                "zpower": settings.zpower,
                "exponents": [c.exponents.0, c.exponents.1],
                "multiplicity_sums": [c.multiplicity_sums.0, c.multiplicity_sums.1],
                "first": report::reduction(&c.first),
                "second": report::reduction(&c.second),
            }))
        }
        Subcommand::Kunneth(i) => {
            let p = integral_of(s, name)?;
            let k = kunneth_check(&p, *i)?;
            Ok(json!({
                "verdict": k.zero_pattern_holds && k.additivity != Some(false) && k.tor_routes_agree,
                "index": k.index,
                "reduced_ext": report::kunneth_term(&k.reduced_ext),
                "ext_of_reduction": report::kunneth_term(&k.ext_of_reduction),
                "tor": report::kunneth_term(&k.tor),
                "zero_pattern_holds": k.zero_pattern_holds,
                "additivity": k.additivity,
                "tor_routes_agree": k.tor_routes_agree,
            }))
        }
        Subcommand::Derham => {
            if is_integral(s, name) {
                let p = integral_of(s, name)?;
                let r = reduce_mod_z(&p)?;
                let mut out = derham_report(&r.reduced, settings)?;
                out["provenance"] = provenance(Provenance::ViaReduction);
                Ok(out)
            } else {
                derham_report(module_of(s, name)?, settings)
            }
        }
        Subcommand::Chi => {
            if is_integral(s, name) {
                let p = integral_of(s, name)?;
                let r = chi_via_reduction(&p)?;
                Ok(json!({ "chi": r.chi, "dims": r.dims, "provenance": provenance(r.provenance) }))
            } else {
                let r = h_dr_n1(module_of(s, name)?)?;
                Ok(json!({ "chi": r.chi, "dims": r.dims, "provenance": provenance(r.provenance) }))
            }
        }
        Subcommand::EulerCheck => {
            let Some(Object::Complex { ranks, matrices }) = s.objects.get(name) else {
                return Err(RunError::wrong_object(format!("'{name}' is not a complex")));
            };
            let c = PerfectComplex::new(ranks.clone(), matrices.clone())?;
            let r = euler_check_perfect(&c);
            Ok(json!({
                "verdict": r.equal,
                "generic_chi": r.generic_chi,
                "special_chi": r.special_chi,
                "alternating_rank": r.alternating_rank,
                "ranks": ranks,
            }))
        }
    }
}

fn derham_report(m: &PresentedModule, settings: Settings) -> Result<Value, RunError> {
    let c = dr_complex(m)?;
    let terms: Vec<Value> = c.terms.iter().map(|t| json!({ "degree": t.degree, "copies": t.copies })).collect();
    let mut out = json!({ "n": c.n, "terms": terms });
    if m.n != 1 {
        out["dims"] = Value::Null;
        return Ok(out);
    }
    let direct = h_dr_n1(m)?;
    let b = dmod::derham::b_function_along_x(m)?;
    let oracle = stabilization_check(m, settings.max_degree, ORACLE_WINDOW)?;
    let dims = direct.dims.clone().unwrap_or_default();
    out["dims"] = json!(dims);
    out["chi"] = json!(direct.chi);
    out["provenance"] = provenance(direct.provenance);
    out["b_function"] = json!({
        "poly": b.poly.fmt_with("s"),
        "coefficients": b.poly.coeffs().iter().map(report::rational).collect::<Vec<_>>(),
        "integer_roots": b.integer_roots,
    });
    out["oracle"] = match oracle {
        Some(o) => json!({
            "max_degree": settings.max_degree,
            "window": ORACLE_WINDOW,
            "h0": o.h0,
            "h1": o.h1,
            "stable_from": o.stable_from,
            "agrees": dims == [o.h0, o.h1],
        }),
        None => json!({ "max_degree": settings.max_degree, "window": ORACLE_WINDOW, "stabilized": false }),
    };
    Ok(out)
}
