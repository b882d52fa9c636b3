use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::poly::monomial::{revlex, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialKind {
    /// Weighted degree, ties broken reverse-lexicographically.
    Degrevlex,
    Lex,
    /// Block order eliminating the first `block` variables: degrevlex on
    /// that block first, then degrevlex on the remaining variables.
    Elimination { block: usize },
}

/// How term orders extend from monomials to free-module terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleExtension {
    /// Lower position index wins first, then the monomial.
    PositionOverTerm,
    /// Monomial (including the basis degree shift) first, then position.
    TermOverPosition,
    /// Induced order: `m*e_i` is compared as `m * lead_i` in the parent
    /// module, position breaking ties. Entries are `(parent position,
    /// parent lead monomial)` per basis element.
    Schreyer(Vec<(usize, Monomial)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: MonomialKind,
    pub extension: ModuleExtension,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder { kind: MonomialKind::Degrevlex, extension: ModuleExtension::PositionOverTerm }
    }
}

impl MonomialOrder {
    pub fn degrevlex_pot() -> Self {
        Self::default()
    }

    pub fn degrevlex_top() -> Self {
        MonomialOrder { kind: MonomialKind::Degrevlex, extension: ModuleExtension::TermOverPosition }
    }

    pub fn lex_pot() -> Self {
        MonomialOrder { kind: MonomialKind::Lex, extension: ModuleExtension::PositionOverTerm }
    }
}

/// A monomial order bound to a grading and to the degree shifts of the
/// basis of the free module it orders.
#[derive(Clone, Debug)]
pub struct TermOrder {
    pub order: MonomialOrder,
    pub weights: Vec<u32>,
    pub shifts: Vec<i64>,
}

impl TermOrder {
    pub fn new(order: MonomialOrder, weights: Vec<u32>, shifts: Vec<i64>) -> Self {
        TermOrder { order, weights, shifts }
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order.kind {
            MonomialKind::Degrevlex => a.cmp_degrevlex(b, &self.weights),
            MonomialKind::Lex => a.cmp_lex(b),
            MonomialKind::Elimination { block } => {
                let (ab, ar) = a.exponents().split_at(block);
                let (bb, br) = b.exponents().split_at(block);
                let (wb, wr) = self.weights.split_at(block);
                block_cmp(ab, bb, wb).then_with(|| block_cmp(ar, br, wr))
            }
        }
    }

    /// Compares module terms `(position, monomial)`.
    pub fn cmp_terms(&self, pa: usize, a: &Monomial, pb: usize, b: &Monomial) -> Ordering {
        match &self.order.extension {
            ModuleExtension::PositionOverTerm => pb.cmp(&pa).then_with(|| self.cmp_monomials(a, b)),
            ModuleExtension::TermOverPosition => {
                let da = a.weighted_degree(&self.weights) as i64 + self.shifts.get(pa).copied().unwrap_or(0);
                let db = b.weighted_degree(&self.weights) as i64 + self.shifts.get(pb).copied().unwrap_or(0);
                match self.order.kind {
                    MonomialKind::Degrevlex => da.cmp(&db).then_with(|| revlex(a.exponents(), b.exponents())),
                    _ => self.cmp_monomials(a, b),
                }
                .then_with(|| pb.cmp(&pa))
            }
            ModuleExtension::Schreyer(leads) => {
                let (qa, la) = &leads[pa];
                let (qb, lb) = &leads[pb];
                let ma = a.mul(la);
                let mb = b.mul(lb);
                self.cmp_monomials(&ma, &mb).then_with(|| qb.cmp(qa)).then_with(|| pb.cmp(&pa))
            }
        }
    }
}

fn block_cmp(a: &[u32], b: &[u32], w: &[u32]) -> Ordering {
    let da: u64 = a.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum();
    let db: u64 = b.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum();
    da.cmp(&db).then_with(|| revlex(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elimination_order_puts_first_block_above() {
        let ord = TermOrder::new(
            MonomialOrder { kind: MonomialKind::Elimination { block: 1 }, extension: ModuleExtension::PositionOverTerm },
            vec![1, 1],
            vec![0],
        );
        let x = Monomial::from_exponents(&[1, 0]);
        let y5 = Monomial::from_exponents(&[0, 5]);
        assert_eq!(ord.cmp_monomials(&x, &y5), Ordering::Greater);
    }

    #[test]
    fn position_over_term_prefers_low_index() {
        let ord = TermOrder::new(MonomialOrder::degrevlex_pot(), vec![1, 1], vec![0, 0]);
        let one = Monomial::one(2);
        let x3 = Monomial::from_exponents(&[3, 0]);
        assert_eq!(ord.cmp_terms(0, &one, 1, &x3), Ordering::Greater);
        let top = TermOrder::new(MonomialOrder::degrevlex_top(), vec![1, 1], vec![0, 0]);
        assert_eq!(top.cmp_terms(0, &one, 1, &x3), Ordering::Less);
    }

    #[test]
    fn schreyer_order_compares_images_in_parent() {
        // e_0 -> x*f_0, e_1 -> y*f_0 in the parent.
        let leads = vec![(0, Monomial::from_exponents(&[1, 0])), (0, Monomial::from_exponents(&[0, 1]))];
        let ord = TermOrder::new(
            MonomialOrder { kind: MonomialKind::Degrevlex, extension: ModuleExtension::Schreyer(leads) },
            vec![1, 1],
            vec![1, 1],
        );
        let y = Monomial::from_exponents(&[0, 1]);
        let x = Monomial::from_exponents(&[1, 0]);
        // y*e_0 -> xy, x*e_1 -> xy: equal images, lower position wins.
        assert_eq!(ord.cmp_terms(0, &y, 1, &x), Ordering::Greater);
        // x*e_0 -> x^2 beats y*e_1 -> y^2.
        assert_eq!(ord.cmp_terms(0, &x, 1, &y), Ordering::Greater);
    }
}
