use std::collections::HashSet;

use crate::scalars::Field;
use crate::weyl::{Extra, Monomial, Weyl};

use super::order::TermOrder;
use super::stats;
use super::vector::{Row, SVec};

/// Shape of the free module `W^rank` an engine computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ambient {
    pub n: usize,
    pub rank: usize,
    pub extra: Extra,
}

impl Ambient {
    pub fn new(n: usize, rank: usize) -> Self {
        Self { n, rank, extra: Extra::Central }
    }

    pub fn homogenized(n: usize, rank: usize) -> Self {
        Self { n, rank, extra: Extra::Homogenizing }
    }

    pub fn zero_row<C: Field>(&self) -> Row<C> {
        (0..self.rank).map(|_| Weyl::zero_in(self.n, self.extra)).collect()
    }

    pub fn unit_row<C: Field>(&self, j: usize) -> Row<C> {
        let mut r = self.zero_row();
        r[j] = Weyl::one(self.n).with_extra(self.extra);
        r
    }
}

/// Order used for cofactor vectors; any fixed order works.
const REP_ORDER: TermOrder = TermOrder {
    kind: super::order::OrderKind::DegRevLexBernstein,
    position_over_term: true,
    block: 0,
};

#[derive(Clone, Debug)]
struct Elem<C> {
    v: SVec<C>,
    rep: Option<SVec<C>>,
}

/// A reduced left Gröbner basis of a submodule of `W^rank`.
#[derive(Clone, Debug)]
pub struct Basis<C> {
    pub order: TermOrder,
    pub ambient: Ambient,
    elems: Vec<SVec<C>>,
    reps: Option<Vec<SVec<C>>>,
    inputs: usize,
}

/// Outcome of a tracked completion: the basis and the syzygies of the inputs.
pub struct Completion<C> {
    pub basis: Basis<C>,
    pub syzygies: Vec<Row<C>>,
}

fn divides_lead<C: Field>(g: &SVec<C>, comp: usize, m: &Monomial) -> bool {
    match g.lead() {
        Some((j, lm, _)) => *j == comp && lm.divides(m),
        None => false,
    }
}

struct Run<'a> {
    order: &'a TermOrder,
    extra: Extra,
    track: bool,
}

impl Run<'_> {
    /// `f -= c·q·g` on both the vector and its cofactors.
    fn subtract<C: Field>(&self, f: &mut Elem<C>, c: &C, q: &Monomial, g: &Elem<C>) {
        let p = SVec::left_term_product(c, q, &g.v, self.order, self.extra);
        f.v = f.v.sub(&p, self.order);
        if self.track {
            let gr = g.rep.as_ref().expect("tracked element");
            let pr = SVec::left_term_product(c, q, gr, &REP_ORDER, self.extra);
            let fr = f.rep.as_mut().expect("tracked element");
            *fr = fr.sub(&pr, &REP_ORDER);
        }
    }

    /// Reduce the leading term until it is irreducible or `f` vanishes.
    fn top_reduce<C: Field>(&self, f: &mut Elem<C>, basis: &[Elem<C>]) {
        while let Some((comp, m, c)) = f.v.lead().cloned() {
            let Some(g) = basis.iter().find(|g| divides_lead(&g.v, comp, &m)) else {
                return;
            };
            let (_, lm, lc) = g.v.lead().expect("nonzero");
            let q = lm.quotient_of(&m);
            let coef = c * &lc.inv();
            self.subtract(f, &coef, &q, g);
        }
    }

    /// Reduce every term of `f`, skipping the element at index `skip`.
    fn full_reduce<C: Field>(&self, f: &mut Elem<C>, basis: &[Elem<C>], skip: Option<usize>) {
        let mut done = 0;
        while done < f.v.terms.len() {
            let (comp, m, c) = f.v.terms[done].clone();
            let found = basis
                .iter()
                .enumerate()
                .find(|(k, g)| Some(*k) != skip && divides_lead(&g.v, comp, &m));
            match found {
                None => done += 1,
                Some((_, g)) => {
                    let (_, lm, lc) = g.v.lead().expect("nonzero");
                    let q = lm.quotient_of(&m);
                    let coef = c * &lc.inv();
                    self.subtract(f, &coef, &q, g);
                }
            }
        }
    }

    fn make_monic<C: Field>(&self, f: &mut Elem<C>) {
        if let Some((_, _, c)) = f.v.lead() {
            let inv = c.inv();
            f.v.scale(&inv);
            if let Some(r) = f.rep.as_mut() {
                r.scale(&inv);
            }
        }
    }
}

/// Buchberger completion with the normal selection strategy and the chain
/// criterion. With `track` set, cofactors relative to the inputs are carried
/// along and every zero reduction yields a syzygy of the inputs.
pub fn complete<C: Field>(inputs: &[Row<C>], ambient: Ambient, order: TermOrder, track: bool) -> Completion<C> {
    let run = Run { order: &order, extra: ambient.extra, track };
    let m = inputs.len();
    let mut basis: Vec<Elem<C>> = Vec::new();
    let mut syz: Vec<Row<C>> = Vec::new();
    let rep_amb = Ambient { n: ambient.n, rank: m, extra: ambient.extra };
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();

    let push = |basis: &mut Vec<Elem<C>>, pending: &mut Vec<(usize, usize)>, pset: &mut HashSet<(usize, usize)>, e: Elem<C>| {
        let k = basis.len();
        let comp = e.v.lead().expect("nonzero").0;
        for (i, g) in basis.iter().enumerate() {
            if g.v.lead().expect("nonzero").0 == comp {
                pending.push((i, k));
                pset.insert((i, k));
            }
        }
        basis.push(e);
    };

    for (i, row) in inputs.iter().enumerate() {
        let v = SVec::from_row(row, &order);
        if v.is_zero() {
            if track {
                syz.push(rep_amb.unit_row(i));
            }
            continue;
        }
        let rep = track.then(|| SVec::from_row(&rep_amb.unit_row::<C>(i), &REP_ORDER));
        let mut e = Elem { v, rep };
        run.make_monic(&mut e);
        push(&mut basis, &mut pending, &mut pending_set, e);
    }

    while !pending.is_empty() {
        // normal strategy: smallest lcm first
        let mut best = 0;
        let mut best_lcm: Option<(usize, Monomial)> = None;
        for (idx, &(i, j)) in pending.iter().enumerate() {
            let (ci, mi, _) = basis[i].v.lead().expect("nonzero");
            let (_, mj, _) = basis[j].v.lead().expect("nonzero");
            let l = mi.lcm(mj);
            let better = match &best_lcm {
                None => true,
                Some((cb, lb)) => order.cmp(*ci, &l, *cb, lb).is_lt(),
            };
            if better {
                best = idx;
                best_lcm = Some((*ci, l));
            }
        }
        let (i, j) = pending.swap_remove(best);
        pending_set.remove(&(i, j));
        let (comp, l) = best_lcm.expect("nonempty");

        // chain criterion
        let redundant = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides_lead(&basis[k].v, comp, &l)
                && !pending_set.contains(&(i.min(k), i.max(k)))
                && !pending_set.contains(&(j.min(k), j.max(k)))
        });
        if redundant {
            continue;
        }

        let (_, mi, _) = basis[i].v.lead().expect("nonzero").clone();
        let (_, mj, _) = basis[j].v.lead().expect("nonzero").clone();
        let qi = mi.quotient_of(&l);
        let qj = mj.quotient_of(&l);
        let one = C::one();
        let mut s = Elem {
            v: SVec::left_term_product(&one, &qi, &basis[i].v, &order, ambient.extra),
            rep: basis[i].rep.as_ref().map(|r| SVec::left_term_product(&one, &qi, r, &REP_ORDER, ambient.extra)),
        };
        run.subtract(&mut s, &one, &qj, &basis[j]);
        run.top_reduce(&mut s, &basis);
        stats::count_pair(s.v.is_zero());
        if s.v.is_zero() {
            if let Some(r) = s.rep {
                if !r.is_zero() {
                    syz.push(r.to_row(m, ambient.n, ambient.extra));
                }
            }
            continue;
        }
        run.make_monic(&mut s);
        push(&mut basis, &mut pending, &mut pending_set, s);
    }

    // minimalize, then tail-reduce
    let mut keep: Vec<usize> = Vec::new();
    for k in 0..basis.len() {
        let (ck, mk, _) = basis[k].v.lead().expect("nonzero");
        let dominated = (0..basis.len()).any(|o| {
            if o == k {
                return false;
            }
            let (co, mo, _) = basis[o].v.lead().expect("nonzero");
            co == ck && mo.divides(mk) && (mo != mk || o < k)
        });
        if !dominated {
            keep.push(k);
        }
    }
    let mut fin: Vec<Elem<C>> = keep.into_iter().map(|k| basis[k].clone()).collect();
    for k in 0..fin.len() {
        let mut e = fin[k].clone();
        run.full_reduce(&mut e, &fin, Some(k));
        run.make_monic(&mut e);
        fin[k] = e;
    }
    fin.sort_by(|a, b| {
        let (ca, ma, _) = a.v.lead().expect("nonzero");
        let (cb, mb, _) = b.v.lead().expect("nonzero");
        order.cmp(*ca, ma, *cb, mb)
    });
    stats::count_basis(fin.len());

    let reps = track.then(|| fin.iter().map(|e| e.rep.clone().expect("tracked")).collect());
    Completion {
        basis: Basis { order, ambient, elems: fin.into_iter().map(|e| e.v).collect(), reps, inputs: m },
        syzygies: syz,
    }
}

impl<C: Field> Basis<C> {
    pub fn new(inputs: &[Row<C>], ambient: Ambient, order: TermOrder) -> Self {
        complete(inputs, ambient, order, false).basis
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn generators(&self) -> Vec<Row<C>> {
        self.elems.iter().map(|e| e.to_row(self.ambient.rank, self.ambient.n, self.ambient.extra)).collect()
    }

    /// Leading `(component, monomial)` of each generator.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elems.iter().map(|e| {
            let (c, m, _) = e.lead().expect("nonzero");
            (*c, m.clone())
        }).collect()
    }

    /// Cofactors expressing each generator through the inputs, when tracked.
    pub fn cofactors(&self) -> Option<Vec<Row<C>>> {
        let amb = Ambient { n: self.ambient.n, rank: self.inputs, extra: self.ambient.extra };
        self.reps.as_ref().map(|rs| rs.iter().map(|r| r.to_row(amb.rank, amb.n, amb.extra)).collect())
    }

    pub fn normal_form(&self, row: &[Weyl<C>]) -> Row<C> {
        let run = Run { order: &self.order, extra: self.ambient.extra, track: false };
        let basis: Vec<Elem<C>> = self.elems.iter().map(|v| Elem { v: v.clone(), rep: None }).collect();
        let mut f = Elem { v: SVec::from_row(row, &self.order), rep: None };
        run.full_reduce(&mut f, &basis, None);
        f.v.to_row(self.ambient.rank, self.ambient.n, self.ambient.extra)
    }

    /// Normal form together with quotients `q` such that `row - nf = Σ q_k g_k`.
    pub fn division(&self, row: &[Weyl<C>]) -> (Row<C>, Row<C>) {
        let run = Run { order: &self.order, extra: self.ambient.extra, track: true };
        let k = self.elems.len();
        let amb = Ambient { n: self.ambient.n, rank: k, extra: self.ambient.extra };
        let basis: Vec<Elem<C>> = self
            .elems
            .iter()
            .enumerate()
            .map(|(i, v)| Elem { v: v.clone(), rep: Some(SVec::from_row(&amb.unit_row::<C>(i), &REP_ORDER)) })
            .collect();
        let mut f = Elem { v: SVec::from_row(row, &self.order), rep: Some(SVec::zero()) };
        run.full_reduce(&mut f, &basis, None);
        let mut q = f.rep.expect("tracked");
        // f.rep accumulated -Σ q_k e_k
        for t in &mut q.terms {
            t.2 = -t.2.clone();
        }
        (f.v.to_row(self.ambient.rank, self.ambient.n, self.ambient.extra), q.to_row(k, amb.n, amb.extra))
    }

    pub fn contains(&self, row: &[Weyl<C>]) -> bool {
        self.normal_form(row).iter().all(Weyl::is_zero)
    }

    /// True when the submodule is the whole free module.
    pub fn is_everything(&self) -> bool {
        (0..self.ambient.rank).all(|j| {
            self.elems.iter().any(|e| matches!(e.lead(), Some((c, m, _)) if *c == j && m.is_one()))
        })
    }
}
