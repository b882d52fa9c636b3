use std::cmp::Ordering;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::Field;
use crate::poly::monomial::{revlex, Monomial};

/// Canonical storage order for polynomial terms: standard-graded degrevlex,
/// largest term first. Gröbner computations re-sort under their own order.
pub(crate) fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| revlex(a.exponents(), b.exponents()))
}

/// A multivariate polynomial with coefficients in `K`.
///
/// Terms are kept sorted in canonical order with no zero coefficients, so
/// structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<K: Field> {
    field: K,
    nvars: usize,
    terms: Vec<(Monomial, K::Elem)>,
}

impl<K: Field> Polynomial<K> {
    pub fn zero(field: K, nvars: usize) -> Self {
        Polynomial { field, nvars, terms: Vec::new() }
    }

    pub fn constant(field: K, nvars: usize, c: K::Elem) -> Self {
        if field.is_zero(&c) {
            return Self::zero(field, nvars);
        }
        Polynomial { field, nvars, terms: vec![(Monomial::one(nvars), c)] }
    }

    pub fn one(field: K, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn variable(field: K, nvars: usize, index: usize) -> Self {
        Self::term(field, Monomial::variable(nvars, index, 1), field.one())
    }

    pub fn term(field: K, mono: Monomial, c: K::Elem) -> Self {
        let nvars = mono.nvars();
        if field.is_zero(&c) {
            return Self::zero(field, nvars);
        }
        Polynomial { field, nvars, terms: vec![(mono, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(field: K, nvars: usize, terms: impl IntoIterator<Item = (Monomial, K::Elem)>) -> Self {
        let mut acc: HashMap<Monomial, K::Elem> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| canonical_cmp(&b.0, &a.0));
        Polynomial { field, nvars, terms }
    }

    pub fn field(&self) -> K {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, K::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, K::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The coefficient of the monomial `1`.
    pub fn constant_term(&self) -> K::Elem {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.field.zero(),
        }
    }

    pub fn coefficient(&self, mono: &Monomial) -> K::Elem {
        self.terms
            .iter()
            .find(|(m, _)| m == mono)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// Weighted degree of the highest-degree term, `None` for zero.
    pub fn degree(&self, weights: &[u32]) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.weighted_degree(weights)).max()
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.weighted_degree(weights));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(a, c))).collect();
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(m, a)| (m.mul(mono), a.clone())).collect();
        Polynomial { field: self.field, nvars: self.nvars, terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.field, self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial<K>]) -> Polynomial<K> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target_nvars = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut acc = Polynomial::zero(self.field, target_nvars);
        let mut power_cache: HashMap<(usize, u32), Polynomial<K>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(self.field, target_nvars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let p = power_cache.entry((i, e)).or_insert_with(|| images[i].pow(e));
                    t = &t * p;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-embeds into a ring with more variables, placing variable `i` at
    /// position `map[i]`.
    pub fn rename_variables(&self, nvars: usize, map: &[usize]) -> Polynomial<K> {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            (Monomial::from_exponents(&e), c.clone())
        });
        Polynomial::from_terms(self.field, nvars, terms)
    }

    /// Makes the leading coefficient one (no-op on zero).
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field.inv(c)),
        }
    }

    /// Canonical text: `3*x^2*y - 1/2*z`.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = self.field;
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = f.is_negative(c);
            let abs = if neg { f.neg(c) } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&f.format(&abs));
            } else if f.is_one(&abs) {
                out.push_str(&m.to_text(names));
            } else {
                out.push_str(&f.format(&abs));
                out.push('*');
                out.push_str(&m.to_text(names));
            }
        }
        out
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let f = self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match canonical_cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate_other { f.neg(cb) } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { f.sub(ca, cb) } else { f.add(ca, cb) };
                    if !f.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate_other { f.neg(c) } else { c.clone() })),
        );
        Polynomial { field: f, nvars: self.nvars, terms: out }
    }
}

impl<K: Field> Add for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn add(self, rhs: &Polynomial<K>) -> Polynomial<K> {
        self.merge(rhs, false)
    }
}

impl<K: Field> Sub for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn sub(self, rhs: &Polynomial<K>) -> Polynomial<K> {
        self.merge(rhs, true)
    }
}

impl<K: Field> Neg for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        let f = self.field;
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect();
        Polynomial { field: f, nvars: self.nvars, terms }
    }
}

impl<K: Field> Mul for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn mul(self, rhs: &Polynomial<K>) -> Polynomial<K> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.field, self.nvars);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        let f = self.field;
        let products = self
            .terms
            .iter()
            .flat_map(|(ma, ca)| rhs.terms.iter().map(move |(mb, cb)| (ma.mul(mb), f.mul(ca, cb))));
        Polynomial::from_terms(f, self.nvars, products)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    #[test]
    fn arithmetic_and_canonical_text() {
        let q = Rationals;
        let x = Polynomial::variable(q, 3, 0);
        let y = Polynomial::variable(q, 3, 1);
        let s = &x + &y;
        let sq = s.pow(2);
        assert_eq!(sq.to_text(&names()), "x^2 + 2*x*y + y^2");
        let d = &(&x * &x) - &(&y * &y);
        let f = &(&x - &y) * &s;
        assert_eq!(d, f);
        assert!(sq.is_homogeneous(&[1, 1, 1]));
        assert!(!(&sq + &x).is_homogeneous(&[1, 1, 1]));
    }

    #[test]
    fn frobenius_power_in_characteristic_two() {
        let f = PrimeField::new(2).unwrap();
        let x = Polynomial::variable(f, 2, 0);
        let y = Polynomial::variable(f, 2, 1);
        let s = (&x + &y).pow(2);
        assert_eq!(s, &x.pow(2) + &y.pow(2));
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let q = Rationals;
        let x = Polynomial::variable(q, 2, 0);
        let y = Polynomial::variable(q, 2, 1);
        let p = &(&x * &y) + &x;
        let images = vec![y.pow(2), &x + &y];
        let expected = &(&y.pow(2) * &(&x + &y)) + &y.pow(2);
        assert_eq!(p.substitute(&images), expected);
    }

    #[test]
    fn negative_coefficients_print_with_minus() {
        let f = PrimeField::new(5).unwrap();
        let x = Polynomial::variable(f, 3, 0);
        let y = Polynomial::variable(f, 3, 1);
        assert_eq!((&x - &y).to_text(&names()), "x - y");
        assert_eq!((&y - &x).to_text(&names()), "-x + y");
    }
}
