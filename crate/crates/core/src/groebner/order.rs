use std::cmp::Ordering;

use crate::weyl::Monomial;

/// Family of module term orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// Bernstein degree, then degrevlex on `x1..xn, d1..dn`; the extra slot
    /// has weight zero and breaks ties (higher power is larger).
    DegRevLexBernstein,
    /// Components below `block` dominate every component at or above it;
    /// inside a block the Bernstein order applies.
    POTElimination,
    /// For the homogenized algebra: total degree including `h`, then the
    /// weight `d1 - x1` (larger is larger), then degrevlex.
    VOrderAlongX1,
}

/// A total well-order on module monomials `(component, x^α ∂^β t^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    pub kind: OrderKind,
    pub position_over_term: bool,
    pub block: usize,
}

impl Default for TermOrder {
    fn default() -> Self {
        Self::bernstein()
    }
}

impl TermOrder {
    pub fn bernstein() -> Self {
        Self { kind: OrderKind::DegRevLexBernstein, position_over_term: false, block: 0 }
    }

    pub fn position_over_term() -> Self {
        Self { kind: OrderKind::DegRevLexBernstein, position_over_term: true, block: 0 }
    }

    pub fn elimination(block: usize) -> Self {
        Self { kind: OrderKind::POTElimination, position_over_term: false, block }
    }

    pub fn v_order() -> Self {
        Self { kind: OrderKind::VOrderAlongX1, position_over_term: false, block: 0 }
    }

    /// `Greater` when `(ca, a)` is the larger module monomial.
    pub fn cmp(&self, ca: usize, a: &Monomial, cb: usize, b: &Monomial) -> Ordering {
        let comp = || cb.cmp(&ca);
        match self.kind {
            OrderKind::DegRevLexBernstein => {
                if self.position_over_term {
                    comp().then_with(|| bernstein_cmp(a, b))
                } else {
                    bernstein_cmp(a, b).then_with(comp)
                }
            }
            OrderKind::POTElimination => {
                let ba = ca < self.block;
                let bb = cb < self.block;
                ba.cmp(&bb).then_with(|| {
                    if self.position_over_term {
                        comp().then_with(|| bernstein_cmp(a, b))
                    } else {
                        bernstein_cmp(a, b).then_with(comp)
                    }
                })
            }
            OrderKind::VOrderAlongX1 => {
                let inner = || {
                    a.total_degree()
                        .cmp(&b.total_degree())
                        .then_with(|| v_weight(a).cmp(&v_weight(b)))
                        .then_with(|| a.bernstein_degree().cmp(&b.bernstein_degree()))
                        .then_with(|| revlex(a, b))
                };
                if self.position_over_term {
                    comp().then_with(inner)
                } else {
                    inner().then_with(comp)
                }
            }
        }
    }
}

/// `d1 - x1` exponent difference.
fn v_weight(m: &Monomial) -> i64 {
    m.d_exp(0) as i64 - m.x_exp(0) as i64
}

fn bernstein_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.bernstein_degree()
        .cmp(&b.bernstein_degree())
        .then_with(|| revlex(a, b))
        .then_with(|| a.t_exp().cmp(&b.t_exp()))
}

/// Reverse lexicographic tie-break on the `x`/`∂` part: the monomial with
/// the smaller exponent in the last differing variable is larger.
fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    let ea = a.exps();
    let eb = b.exps();
    let k = ea.len() - 1;
    for i in (0..k).rev() {
        if ea[i] != eb[i] {
            return eb[i].cmp(&ea[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: &[u32], b: &[u32], t: u32) -> Monomial {
        Monomial::new(a, b, t)
    }

    #[test]
    fn bernstein_degree_dominates_z() {
        let o = TermOrder::bernstein();
        assert_eq!(o.cmp(0, &m(&[1], &[0], 0), 0, &m(&[0], &[0], 5)), Ordering::Greater);
        assert_eq!(o.cmp(0, &m(&[0], &[1], 1), 0, &m(&[0], &[1], 0)), Ordering::Greater);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = TermOrder::elimination(1);
        assert_eq!(o.cmp(0, &m(&[0], &[0], 0), 1, &m(&[4], &[4], 0)), Ordering::Greater);
    }

    #[test]
    fn v_order_prefers_derivatives() {
        let o = TermOrder::v_order();
        // same total degree: d1*h > x1*h, and x1*d1 > h^2
        assert_eq!(o.cmp(0, &m(&[0], &[1], 1), 0, &m(&[1], &[0], 1)), Ordering::Greater);
        assert_eq!(o.cmp(0, &m(&[1], &[1], 0), 0, &m(&[0], &[0], 2)), Ordering::Greater);
    }
}
