//! Recursive-descent parser for session files.
//!
//! ```text
//! ring W(2) over QQ;
//! module M = coker [[x1*d1 - 1/2, 0], [d2, x1]];
//! module N = right coker [[d1]];
//! lattice L = M;
//! lattice L2 = M generated by [[z, 0], [x1, 0]];
//! complex C = [1, 1] with [[z]];
//! check M holonomic --stats
//! ```
//!
//! Elements are normal-ordered while parsing, so `d1*x1` is stored as
//! `x1*d1 + 1`.

use std::collections::BTreeMap;

use dmod::groebner::{FreeVector, Side};
use dmod::module_theory::PresentedModule;
use dmod::scalars::{LocalScalar, Rational};
use dmod::weyl::{RingTag, Weyl};
use dmod::weyl::WeylElement;
use num_traits::{ToPrimitive, Zero};

use crate::lexer::{lex, Pos, Tok, Token};

pub const MAX_VARIABLES: usize = 16;
pub const MAX_EXPONENT: u32 = 32;
const MAX_DEPTH: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UndeclaredName,
    DuplicateName,
    RingMismatch,
}

impl ParseErrorKind {
    pub fn code(self) -> &'static str {
        match self {
            ParseErrorKind::Syntax => "parse_error",
            ParseErrorKind::UndeclaredName => "undeclared_name",
            ParseErrorKind::DuplicateName => "duplicate_name",
            ParseErrorKind::RingMismatch => "ring_mismatch",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub line: usize,
    pub column: usize,
    /// The offending token, `<eof>` at the end of input.
    pub token: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {} (at '{}')", self.line, self.column, self.message, self.token)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingDecl {
    QQ,
    QZ,
}

impl RingDecl {
    pub fn name(self) -> &'static str {
        match self {
            RingDecl::QQ => "QQ",
            RingDecl::QZ => "QZ",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Module(PresentedModule),
    /// A lattice in the named module: the standard one, or the one spanned
    /// by the given vectors.
    Lattice { module: String, generators: Option<Vec<FreeVector>> },
    Complex { ranks: Vec<usize>, matrices: Vec<Vec<Vec<LocalScalar>>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subcommand {
    Gb,
    Nf(FreeVector),
    Dim,
    Grade,
    Holonomic,
    Ext(usize),
    CharCycle,
    Dual,
    Reduce,
    HolonomicHat,
    GoodLattice,
    CompareLattices(String),
    Kunneth(usize),
    Derham,
    Chi,
    EulerCheck,
}

pub const SUBCOMMANDS: [&str; 16] = [
    "gb",
    "nf",
    "dim",
    "grade",
    "holonomic",
    "ext",
    "charcycle",
    "dual",
    "reduce",
    "holonomic-hat",
    "good-lattice",
    "compare-lattices",
    "kunneth",
    "derham",
    "chi",
    "euler-check",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub max_degree: Option<u32>,
    pub zpower: Option<u32>,
    pub stats: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub target: String,
    pub sub: Subcommand,
    pub flags: Flags,
    /// Source text of the command line.
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionInput {
    pub ambient_n: usize,
    pub ring: Option<RingDecl>,
    pub objects: BTreeMap<String, Object>,
    pub command: Command,
}

/// Parses a whole session.
pub fn parse(src: &str) -> Result<SessionInput, ParseError> {
    let toks = lex(src).map_err(|e| ParseError {
        kind: ParseErrorKind::Syntax,
        message: format!("unexpected character '{}'", e.found),
        line: e.pos.line,
        column: e.pos.column,
        token: e.found,
    })?;
    let mut p = Parser { src, toks, i: 0, n: 0, ring: None, objects: BTreeMap::new(), depth: 0 };
    p.session()
}

/// Parses a single element of `W_n` over ℚ(z), normal-ordered.
pub fn parse_element(src: &str, n: usize) -> Result<Weyl<LocalScalar>, ParseError> {
    let toks = lex(src).map_err(|e| ParseError {
        kind: ParseErrorKind::Syntax,
        message: format!("unexpected character '{}'", e.found),
        line: e.pos.line,
        column: e.pos.column,
        token: e.found,
    })?;
    let mut p = Parser { src, toks, i: 0, n, ring: None, objects: BTreeMap::new(), depth: 0 };
    let e = p.expr()?;
    if p.i < p.toks.len() {
        return Err(p.err_here("unexpected token after the element"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    i: usize,
    n: usize,
    ring: Option<RingDecl>,
    objects: BTreeMap<String, Object>,
    depth: usize,
}

/// A parsed entry with the position it started at.
struct Entry {
    value: Weyl<LocalScalar>,
    pos: Pos,
    text: String,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn eof_pos(&self) -> Pos {
        let mut line = 1;
        let mut column = 1;
        for c in self.src.chars() {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Pos { line, column, offset: self.src.len() }
    }

    fn error_at(&self, kind: ParseErrorKind, idx: usize, message: impl Into<String>) -> ParseError {
        let (pos, token) = match self.toks.get(idx) {
            Some(t) => (t.pos, t.tok.to_string()),
            None => (self.eof_pos(), "<eof>".to_string()),
        };
        ParseError { kind, message: message.into(), line: pos.line, column: pos.column, token }
    }

    fn err_here(&self, message: impl Into<String>) -> ParseError {
        self.error_at(ParseErrorKind::Syntax, self.i, message)
    }

    fn error_at_pos(kind: ParseErrorKind, pos: Pos, token: String, message: impl Into<String>) -> ParseError {
        ParseError { kind, message: message.into(), line: pos.line, column: pos.column, token }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.err_here(format!("expected '{c}'")))
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Word(x)) if x == w) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<(), ParseError> {
        if self.eat_word(w) {
            Ok(())
        } else {
            Err(self.err_here(format!("expected '{w}'")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.i += 1;
                Ok(w)
            }
            _ => Err(self.err_here(format!("expected {what}"))),
        }
    }

    fn small_int(&mut self, what: &str, max: usize) -> Result<usize, ParseError> {
        match self.peek() {
            Some(Tok::Int(k)) => match k.to_usize() {
                Some(v) if v <= max => {
                    self.i += 1;
                    Ok(v)
                }
                _ => Err(self.err_here(format!("{what} must be at most {max}"))),
            },
            _ => Err(self.err_here(format!("expected {what}"))),
        }
    }

    fn adjacent(&self, j: usize) -> bool {
        j > 0 && j < self.toks.len() && self.toks[j - 1].end == self.toks[j].pos.offset
    }

    /// A word possibly joined to following words by hyphens without spaces,
    /// such as `holonomic-hat`.
    fn dashed_word(&mut self, what: &str) -> Result<String, ParseError> {
        let mut w = self.ident(what)?;
        while self.peek() == Some(&Tok::Sym('-'))
            && self.adjacent(self.i)
            && matches!(self.toks.get(self.i + 1).map(|t| &t.tok), Some(Tok::Word(_)))
            && self.adjacent(self.i + 1)
        {
            let Tok::Word(next) = &self.toks[self.i + 1].tok else { unreachable!() };
            w.push('-');
            w.push_str(next);
            self.i += 2;
        }
        Ok(w)
    }

    fn session(&mut self) -> Result<SessionInput, ParseError> {
        loop {
            let start = self.i;
            let Some(tok) = self.peek().cloned() else {
                return Err(self.err_here("expected a check command"));
            };
            match tok {
                Tok::Word(w) if w == "ring" => self.ring_decl()?,
                Tok::Word(w) if w == "module" => self.module_decl()?,
                Tok::Word(w) if w == "lattice" => self.lattice_decl()?,
                Tok::Word(w) if w == "complex" => self.complex_decl()?,
                Tok::Word(w) if w == "check" => {
                    let command = self.command()?;
                    self.eat_sym(';');
                    if self.i < self.toks.len() {
                        return Err(self.err_here("only one command is allowed, and it must come last"));
                    }
                    return Ok(SessionInput {
                        ambient_n: self.n,
                        ring: self.ring,
                        objects: std::mem::take(&mut self.objects),
                        command,
                    });
                }
                _ => return Err(self.error_at(ParseErrorKind::Syntax, start, "expected a declaration or a check command")),
            }
        }
    }

    fn ring_decl(&mut self) -> Result<(), ParseError> {
        let at = self.i;
        self.expect_word("ring")?;
        if self.ring.is_some() {
            return Err(self.error_at(ParseErrorKind::Syntax, at, "the ring is already declared"));
        }
        self.expect_word("W")?;
        self.expect_sym('(')?;
        let n_at = self.i;
        let n = self.small_int("the number of variables", MAX_VARIABLES)?;
        if n == 0 {
            return Err(self.error_at(ParseErrorKind::Syntax, n_at, "the Weyl algebra needs at least one variable"));
        }
        self.expect_sym(')')?;
        self.expect_word("over")?;
        let ring = if self.eat_word("QQ") {
            RingDecl::QQ
        } else if self.eat_word("QZ") {
            RingDecl::QZ
        } else {
            return Err(self.err_here("expected QQ or QZ"));
        };
        self.expect_sym(';')?;
        self.n = n;
        self.ring = Some(ring);
        Ok(())
    }

    fn new_name(&mut self) -> Result<String, ParseError> {
        let at = self.i;
        let name = self.ident("a name")?;
        if self.objects.contains_key(&name) {
            return Err(self.error_at(ParseErrorKind::DuplicateName, at, format!("'{name}' is already declared")));
        }
        Ok(name)
    }

    fn require_ring(&self, at: usize) -> Result<RingDecl, ParseError> {
        self.ring.ok_or_else(|| self.error_at(ParseErrorKind::Syntax, at, "declare the ring before any module"))
    }

    fn module_decl(&mut self) -> Result<(), ParseError> {
        let at = self.i;
        self.expect_word("module")?;
        let decl = self.require_ring(at)?;
        let name = self.new_name()?;
        self.expect_sym('=')?;
        let side = if self.eat_word("right") { Side::Right } else { Side::Left };
        self.expect_word("coker")?;
        let mat_at = self.i;
        let rows = self.matrix()?;
        self.expect_sym(';')?;

        let mut width = None;
        for row in rows.iter().filter(|r| !r.is_empty()) {
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(Self::error_at_pos(
                        ParseErrorKind::Syntax,
                        row[0].pos,
                        row[0].text.clone(),
                        format!("relation rows must all have {w} entries"),
                    ))
                }
                Some(_) => {}
            }
        }
        let gens = width.unwrap_or(1);
        if rows.is_empty() {
            return Err(self.error_at(ParseErrorKind::Syntax, mat_at, "a presentation needs at least one row; use [[]] for a free module"));
        }
        let ring = element_ring(decl, rows.iter().flatten())?;
        let relations = rows
            .into_iter()
            .filter(|r| !r.is_empty())
            .map(|r| tagged_vector(ring, r))
            .collect::<Result<Vec<_>, _>>()?;
        let module = PresentedModule::new(ring, side, self.n, gens, relations)
            .map_err(|e| self.error_at(ParseErrorKind::Syntax, mat_at, e.to_string()))?;
        self.objects.insert(name, Object::Module(module));
        Ok(())
    }

    fn lattice_decl(&mut self) -> Result<(), ParseError> {
        let at = self.i;
        self.expect_word("lattice")?;
        let decl = self.require_ring(at)?;
        let name = self.new_name()?;
        self.expect_sym('=')?;
        let m_at = self.i;
        let module = self.ident("a module name")?;
        let Some(Object::Module(m)) = self.objects.get(&module) else {
            return Err(self.error_at(ParseErrorKind::UndeclaredName, m_at, format!("no module named '{module}'")));
        };
        let gens = m.gens;
        let generators = if self.eat_word("generated") {
            self.expect_word("by")?;
            let rows = self.matrix()?;
            let mut out = Vec::new();
            let ring = element_ring(decl, rows.iter().flatten())?;
            for r in rows {
                if r.len() != gens {
                    let (pos, token) = r.first().map_or((self.toks[m_at].pos, module.clone()), |e| (e.pos, e.text.clone()));
                    return Err(Self::error_at_pos(
                        ParseErrorKind::Syntax,
                        pos,
                        token,
                        format!("lattice generators need {gens} entries"),
                    ));
                }
                out.push(tagged_vector(ring, r)?);
            }
            Some(out)
        } else {
            None
        };
        self.expect_sym(';')?;
        self.objects.insert(name, Object::Lattice { module, generators });
        Ok(())
    }

    fn complex_decl(&mut self) -> Result<(), ParseError> {
        self.expect_word("complex")?;
        let name = self.new_name()?;
        self.expect_sym('=')?;
        self.expect_sym('[')?;
        let mut ranks = Vec::new();
        if !self.eat_sym(']') {
            loop {
                ranks.push(self.small_int("a rank", 64)?);
                if self.eat_sym(']') {
                    break;
                }
                self.expect_sym(',')?;
            }
        }
        if ranks.is_empty() {
            return Err(self.error_at(ParseErrorKind::Syntax, self.i - 1, "a complex needs at least one term"));
        }
        let mut matrices = Vec::new();
        if self.eat_word("with") {
            while self.peek() == Some(&Tok::Sym('[')) {
                let rows = self.matrix()?;
                let mut m = Vec::new();
                for row in rows {
                    let mut r = Vec::new();
                    for e in row {
                        let Some(c) = e.value.as_scalar() else {
                            return Err(Self::error_at_pos(ParseErrorKind::Syntax, e.pos, e.text, "complex entries must be scalars"));
                        };
                        if self.ring == Some(RingDecl::QQ) && !c.is_constant() {
                            return Err(Self::error_at_pos(
                                ParseErrorKind::RingMismatch,
                                e.pos,
                                e.text,
                                format!("{c} is not in QQ"),
                            ));
                        }
                        r.push(c);
                    }
                    m.push(r);
                }
                matrices.push(m);
            }
        }
        self.expect_sym(';')?;
        self.objects.insert(name, Object::Complex { ranks, matrices });
        Ok(())
    }

    fn command(&mut self) -> Result<Command, ParseError> {
        let start = self.i;
        self.expect_word("check")?;
        let t_at = self.i;
        let target = self.ident("an object name")?;
        let Some(obj) = self.objects.get(&target).cloned() else {
            return Err(self.error_at(ParseErrorKind::UndeclaredName, t_at, format!("no object named '{target}'")));
        };
        let s_at = self.i;
        let name = self.dashed_word("a subcommand")?;
        let sub = match name.as_str() {
            "gb" => Subcommand::Gb,
            "nf" => {
                let Object::Module(m) = &obj else {
                    return Err(self.error_at(ParseErrorKind::Syntax, s_at, "nf applies to modules"));
                };
                let v_at = self.i;
                let row = self.row()?;
                if row.len() != m.gens {
                    return Err(self.error_at(ParseErrorKind::Syntax, v_at, format!("the vector needs {} entries", m.gens)));
                }
                let decl = self.ring.expect("modules need a ring");
                let ring = element_ring(decl, row.iter())?;
                let ring = widen(m.ring, ring);
                Subcommand::Nf(tagged_vector(ring, row)?)
            }
            "dim" => Subcommand::Dim,
            "grade" => Subcommand::Grade,
            "holonomic" => Subcommand::Holonomic,
            "ext" => Subcommand::Ext(self.small_int("an Ext index", 64)?),
            "charcycle" => Subcommand::CharCycle,
            "dual" => Subcommand::Dual,
            "reduce" => Subcommand::Reduce,
            "holonomic-hat" => Subcommand::HolonomicHat,
            "good-lattice" => Subcommand::GoodLattice,
            "compare-lattices" => {
                let o_at = self.i;
                let other = self.ident("a second lattice")?;
                if !self.objects.contains_key(&other) {
                    return Err(self.error_at(ParseErrorKind::UndeclaredName, o_at, format!("no object named '{other}'")));
                }
                Subcommand::CompareLattices(other)
            }
            "kunneth" => Subcommand::Kunneth(self.small_int("an Ext index", 64)?),
            "derham" => Subcommand::Derham,
            "chi" => Subcommand::Chi,
            "euler-check" => Subcommand::EulerCheck,
            _ => return Err(self.error_at(ParseErrorKind::Syntax, s_at, format!("unknown subcommand '{name}'"))),
        };
        let flags = self.flags()?;
        let end = self.toks[self.i - 1].end;
        let text = self.src[self.toks[start].pos.offset..end].to_string();
        Ok(Command { target, sub, flags, text })
    }

    fn flags(&mut self) -> Result<Flags, ParseError> {
        let mut flags = Flags::default();
        while self.peek() == Some(&Tok::Sym('-')) {
            let at = self.i;
            self.i += 1;
            if !(self.peek() == Some(&Tok::Sym('-')) && self.adjacent(self.i)) {
                return Err(self.error_at(ParseErrorKind::Syntax, at, "expected a flag"));
            }
            self.i += 1;
            if !self.adjacent(self.i) {
                return Err(self.error_at(ParseErrorKind::Syntax, at, "expected a flag"));
            }
            let name = self.dashed_word("a flag name")?;
            match name.as_str() {
                "max-degree" => flags.max_degree = Some(self.small_int("a degree bound", 400)? as u32),
                "zpower" => flags.zpower = Some(self.small_int("a z-power bound", 64)? as u32),
                "stats" => flags.stats = true,
                _ => return Err(self.error_at(ParseErrorKind::Syntax, at, format!("unknown flag '--{name}'"))),
            }
        }
        Ok(flags)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<Entry>>, ParseError> {
        self.expect_sym('[')?;
        let mut rows = Vec::new();
        if self.eat_sym(']') {
            return Ok(rows);
        }
        loop {
            rows.push(self.row()?);
            if self.eat_sym(']') {
                return Ok(rows);
            }
            self.expect_sym(',')?;
        }
    }

    fn row(&mut self) -> Result<Vec<Entry>, ParseError> {
        self.expect_sym('[')?;
        let mut row = Vec::new();
        if self.eat_sym(']') {
            return Ok(row);
        }
        loop {
            let at = self.i;
            let value = self.expr()?;
            let text = self.src[self.toks[at].pos.offset..self.toks[self.i - 1].end].to_string();
            row.push(Entry { value, pos: self.toks[at].pos, text });
            if self.eat_sym(']') {
                return Ok(row);
            }
            self.expect_sym(',')?;
        }
    }

    fn expr(&mut self) -> Result<Weyl<LocalScalar>, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err_here("expression nested too deeply"));
        }
        let mut acc = self.term()?;
        loop {
            if self.eat_sym('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_sym('-') {
                acc = acc.sub(&self.term()?);
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Weyl<LocalScalar>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_sym('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.peek() == Some(&Tok::Sym('/')) {
                self.i += 1;
                let at = self.i;
                let rhs = self.unary()?;
                let Some(c) = rhs.as_scalar() else {
                    return Err(self.error_at(ParseErrorKind::Syntax, at, "only division by scalars is allowed"));
                };
                if c.is_zero() {
                    return Err(self.error_at(ParseErrorKind::Syntax, at, "division by zero"));
                }
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Weyl<LocalScalar>, ParseError> {
        if self.eat_sym('-') {
            self.depth += 1;
            if self.depth > MAX_DEPTH {
                return Err(self.err_here("expression nested too deeply"));
            }
            let v = self.unary()?.neg();
            self.depth -= 1;
            return Ok(v);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Weyl<LocalScalar>, ParseError> {
        let base = self.atom()?;
        if self.eat_sym('^') {
            let k = self.small_int("an exponent", MAX_EXPONENT as usize)?;
            return Ok(base.pow(k as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Weyl<LocalScalar>, ParseError> {
        let n = self.n;
        match self.peek().cloned() {
            Some(Tok::Int(k)) => {
                self.i += 1;
                Ok(Weyl::constant(n, LocalScalar::from_rational(Rational::from_integer(k))))
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Some(Tok::Word(w)) => {
                if w == "z" {
                    self.i += 1;
                    return Ok(Weyl::constant(n, LocalScalar::z()));
                }
                let var = w
                    .strip_prefix('x')
                    .map(|r| (true, r))
                    .or_else(|| w.strip_prefix('d').map(|r| (false, r)))
                    .and_then(|(is_x, r)| {
                        if r.starts_with('0') {
                            return None;
                        }
                        r.parse::<usize>().ok().filter(|&k| k >= 1 && k <= n).map(|k| (is_x, k - 1))
                    });
                match var {
                    Some((true, i)) => {
                        self.i += 1;
                        Ok(Weyl::x(n, i))
                    }
                    Some((false, i)) => {
                        self.i += 1;
                        Ok(Weyl::d(n, i))
                    }
                    None => Err(self.err_here(format!("unknown variable '{w}' (W({n}) has x1..x{n}, d1..d{n} and z)"))),
                }
            }
            _ => Err(self.err_here("expected a number, a variable or '('")),
        }
    }
}

/// The ring a declared coefficient ring assigns to a group of entries:
/// over `QZ`, polynomial coefficients give `ℚ[z]` and anything else `ℚ(z)`.
fn element_ring<'e>(decl: RingDecl, entries: impl Iterator<Item = &'e Entry>) -> Result<RingTag, ParseError> {
    let mut ring = match decl {
        RingDecl::QQ => RingTag::RationalField,
        RingDecl::QZ => RingTag::PolynomialZ,
    };
    for e in entries {
        for c in e.value.terms().values() {
            match decl {
                RingDecl::QQ if !c.is_constant() => {
                    return Err(Parser::error_at_pos(
                        ParseErrorKind::RingMismatch,
                        e.pos,
                        e.text.clone(),
                        format!("coefficient {c} is not in QQ"),
                    ))
                }
                RingDecl::QZ if !c.is_polynomial() => ring = RingTag::LocalField,
                _ => {}
            }
        }
    }
    Ok(ring)
}

fn widen(a: RingTag, b: RingTag) -> RingTag {
    if a == RingTag::LocalField || b == RingTag::LocalField {
        RingTag::LocalField
    } else {
        a.max(b)
    }
}

fn tagged_vector(ring: RingTag, row: Vec<Entry>) -> Result<FreeVector, ParseError> {
    row.into_iter()
        .map(|e| {
            WeylElement::new(ring, e.value)
                .map_err(|err| Parser::error_at_pos(ParseErrorKind::RingMismatch, e.pos, e.text, err.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(FreeVector::new)
}
