use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent vector of a monomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn variable(nvars: usize, index: usize, exp: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[index] = exp;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * n).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Weighted degree-reverse-lexicographic comparison.
    pub fn cmp_degrevlex(&self, other: &Monomial, weights: &[u32]) -> Ordering {
        self.weighted_degree(weights)
            .cmp(&other.weighted_degree(weights))
            .then_with(|| revlex(&self.0, &other.0))
    }

    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }

    pub fn to_text(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (e, name) in self.0.iter().zip(names) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// All monomials in `weights.len()` variables of weighted degree `d`.
pub fn monomials_of_degree(weights: &[u32], d: u64) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur));
            }
            return;
        }
        let w = weights[i] as u64;
        let mut e = 0;
        while e * w <= left {
            cur.push(e as u32);
            rec(weights, i + 1, left - e * w, cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, d, &mut Vec::with_capacity(weights.len()), &mut out);
    out
}

/// Reverse lexicographic tie-break for equal degrees: the monomial with the
/// smaller exponent in the last differing variable is larger.
pub(crate) fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_orders_by_degree_then_reverse_lex() {
        let w = [1, 1, 1];
        let x2 = Monomial::from_exponents(&[2, 0, 0]);
        let xy = Monomial::from_exponents(&[1, 1, 0]);
        let y2 = Monomial::from_exponents(&[0, 2, 0]);
        let xz = Monomial::from_exponents(&[1, 0, 1]);
        let z = Monomial::from_exponents(&[0, 0, 1]);
        assert_eq!(x2.cmp_degrevlex(&xy, &w), Ordering::Greater);
        assert_eq!(xy.cmp_degrevlex(&y2, &w), Ordering::Greater);
        assert_eq!(y2.cmp_degrevlex(&xz, &w), Ordering::Greater);
        assert_eq!(z.cmp_degrevlex(&xz, &w), Ordering::Less);
    }

    #[test]
    fn weighted_degree_respects_grading() {
        let a3 = Monomial::from_exponents(&[3, 0]);
        let b2 = Monomial::from_exponents(&[0, 2]);
        assert_eq!(a3.weighted_degree(&[2, 3]), 6);
        assert_eq!(b2.weighted_degree(&[2, 3]), 6);
        assert_eq!(a3.cmp_degrevlex(&b2, &[2, 3]), Ordering::Greater);
    }

    #[test]
    fn division_and_lcm() {
        let a = Monomial::from_exponents(&[2, 1]);
        let b = Monomial::from_exponents(&[1, 3]);
        assert_eq!(a.lcm(&b).exponents(), &[2, 3]);
        assert!(!a.divides(&b));
        assert_eq!(b.divide_into(&a.lcm(&b)).unwrap().exponents(), &[1, 0]);
        assert!(Monomial::from_exponents(&[2, 0]).is_coprime(&Monomial::from_exponents(&[0, 5])));
    }
}
