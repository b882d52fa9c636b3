//! Buchberger's algorithm for submodules of free modules over a polynomial
//! ring, with the Gebauer–Möller pair criteria.
//!
//! Pairs are processed by increasing sugar degree. For homogeneous input
//! (the only kind the module layer produces) this is the graded algorithm:
//! after degree `D` is finished, the basis is a `D`-truncated Gröbner basis,
//! which is what makes minimal-generator detection possible.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::free::FreeElement;
use crate::poly::monomial::Monomial;
use crate::poly::order::{MonomialOrder, TermOrder};
use crate::poly::polynomial::Polynomial;

pub const DEFAULT_DEGREE_CAP: u64 = 64;

/// Cooperative cancellation flag shared between a caller and a running
/// computation.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, AtomicOrdering::SeqCst);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(AtomicOrdering::SeqCst)
    }
}

/// Resource bounds checked inside every Gröbner computation.
#[derive(Clone, Debug)]
pub struct Limits {
    pub degree_cap: u64,
    pub cancel: Option<CancelToken>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { degree_cap: DEFAULT_DEGREE_CAP, cancel: None }
    }
}

impl Limits {
    fn check(&self, degree: u64) -> Result<()> {
        if let Some(c) = &self.cancel {
            if c.is_cancelled() {
                return Err(Error::Resource("computation cancelled".into()));
            }
        }
        if degree > self.degree_cap {
            return Err(Error::Resource(format!("degree cap {} exceeded (degree {degree})", self.degree_cap)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Term<K: Field> {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: K::Elem,
}

/// Sparse vector sorted ascending, so the leading term is last.
#[derive(Clone, Debug)]
pub(crate) struct Vector<K: Field> {
    pub terms: Vec<Term<K>>,
}

impl<K: Field> Vector<K> {
    pub fn lead(&self) -> Option<&Term<K>> {
        self.terms.last()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_free(v: &FreeElement<K>, ord: &TermOrder) -> Self {
        let mut terms: Vec<Term<K>> = v
            .components()
            .iter()
            .enumerate()
            .flat_map(|(pos, p)| p.terms().iter().map(move |(m, c)| Term { pos, mono: m.clone(), coeff: c.clone() }))
            .collect();
        terms.sort_by(|a, b| ord.cmp_terms(a.pos, &a.mono, b.pos, &b.mono));
        Vector { terms }
    }

    pub fn to_free(&self, field: K, nvars: usize, rank: usize) -> FreeElement<K> {
        let mut buckets: Vec<Vec<(Monomial, K::Elem)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.pos].push((t.mono.clone(), t.coeff.clone()));
        }
        FreeElement::from_components(
            buckets.into_iter().map(|b| Polynomial::from_terms(field, nvars, b)).collect(),
        )
    }

    fn scale(&mut self, field: K, c: &K::Elem) {
        for t in &mut self.terms {
            t.coeff = field.mul(&t.coeff, c);
        }
    }

    fn make_monic(&mut self, field: K) {
        if let Some(l) = self.lead() {
            if !field.is_one(&l.coeff) {
                let inv = field.inv(&l.coeff);
                self.scale(field, &inv);
            }
        }
    }

    /// Maximum weighted monomial degree and sugar (shifted degree).
    fn degrees(&self, ord: &TermOrder) -> (u64, i64) {
        let mut mono = 0;
        let mut sugar = i64::MIN;
        for t in &self.terms {
            let d = t.mono.weighted_degree(&ord.weights);
            mono = mono.max(d);
            sugar = sugar.max(d as i64 + ord.shifts[t.pos]);
        }
        (mono, sugar)
    }
}

/// `a - c * m * b`, all sorted ascending.
fn sub_mul<K: Field>(field: K, ord: &TermOrder, a: &[Term<K>], c: &K::Elem, m: &Monomial, b: &[Term<K>]) -> Vec<Term<K>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj: Option<Term<K>> = None;
    let scaled = |t: &Term<K>| Term { pos: t.pos, mono: t.mono.mul(m), coeff: field.neg(&field.mul(c, &t.coeff)) };
    loop {
        if bj.is_none() && j < b.len() {
            bj = Some(scaled(&b[j]));
            j += 1;
        }
        match (a.get(i), bj.as_ref()) {
            (None, None) => break,
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(_)) => out.push(bj.take().unwrap()),
            (Some(x), Some(y)) => match ord.cmp_terms(x.pos, &x.mono, y.pos, &y.mono) {
                Ordering::Less => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Greater => out.push(bj.take().unwrap()),
                Ordering::Equal => {
                    let s = field.add(&x.coeff, &y.coeff);
                    if !field.is_zero(&s) {
                        out.push(Term { pos: x.pos, mono: x.mono.clone(), coeff: s });
                    }
                    i += 1;
                    bj = None;
                }
            },
        }
    }
    out
}

fn support_mask(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &e)| if e > 0 { acc | (1u64 << (i % 64)) } else { acc })
}

struct Element<K: Field> {
    v: Vector<K>,
    mask: u64,
    sugar: i64,
    redundant: bool,
}

/// Reducer set indexed by lead position.
pub(crate) struct Reducers<K: Field> {
    field: K,
    elems: Vec<Element<K>>,
    by_pos: Vec<Vec<usize>>,
}

impl<K: Field> Reducers<K> {
    fn new(field: K, rank: usize) -> Self {
        Reducers { field, elems: Vec::new(), by_pos: vec![Vec::new(); rank] }
    }

    fn push(&mut self, v: Vector<K>, sugar: i64) -> usize {
        let lead = v.lead().expect("nonzero basis element");
        let mask = support_mask(&lead.mono);
        let pos = lead.pos;
        self.elems.push(Element { v, mask, sugar, redundant: false });
        let k = self.elems.len() - 1;
        self.by_pos[pos].push(k);
        k
    }

    fn find_divisor(&self, pos: usize, m: &Monomial) -> Option<usize> {
        let mask = support_mask(m);
        self.by_pos[pos].iter().copied().find(|&k| {
            let e = &self.elems[k];
            !e.redundant && e.mask & !mask == 0 && e.v.lead().unwrap().mono.divides(m)
        })
    }

    /// Full reduction: no term of the result is divisible by a lead.
    fn reduce(&self, ord: &TermOrder, mut v: Vector<K>, limits: &Limits) -> Result<Vector<K>> {
        let f = self.field;
        let mut done: Vec<Term<K>> = Vec::new();
        let mut steps = 0u64;
        while let Some(t) = v.terms.last() {
            match self.find_divisor(t.pos, &t.mono) {
                Some(k) => {
                    steps += 1;
                    if steps % 256 == 0 {
                        limits.check(0)?;
                    }
                    let g = &self.elems[k].v;
                    let gl = g.lead().unwrap();
                    let q = gl.mono.divide_into(&t.mono).unwrap();
                    let c = f.div(&t.coeff, &gl.coeff);
                    let n = v.terms.len() - 1;
                    let glen = g.terms.len() - 1;
                    v.terms = sub_mul(f, ord, &v.terms[..n], &c, &q, &g.terms[..glen]);
                }
                None => done.push(v.terms.pop().unwrap()),
            }
        }
        done.reverse();
        Ok(Vector { terms: done })
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
}

/// Outcome of a Buchberger run.
pub(crate) struct BuchbergerOutput<K: Field> {
    /// Reduced Gröbner basis, sorted by decreasing lead term.
    pub basis: Vec<Vector<K>>,
    /// Indices of the `counted` inputs that did not reduce to zero against
    /// everything of lower or equal degree processed before them.
    pub minimal: Vec<usize>,
}

/// Generator handed to [`buchberger`]. Uncounted generators (e.g. the
/// defining ideal of a quotient ring) are processed first in their degree
/// and never reported as minimal.
pub(crate) struct Input<K: Field> {
    pub v: Vector<K>,
    pub counted: bool,
}

pub(crate) fn buchberger<K: Field>(
    field: K,
    ord: &TermOrder,
    rank: usize,
    inputs: Vec<Input<K>>,
    limits: &Limits,
) -> Result<BuchbergerOutput<K>> {
    let mut red = Reducers::new(field, rank);
    let mut pairs: BTreeMap<i64, Vec<Pair>> = BTreeMap::new();
    let mut pending: BTreeMap<(i64, bool), Vec<(usize, Vector<K>)>> = BTreeMap::new();
    for (idx, inp) in inputs.into_iter().enumerate() {
        if inp.v.is_zero() {
            continue;
        }
        let (_, sugar) = inp.v.degrees(ord);
        pending.entry((sugar, inp.counted)).or_default().push((idx, inp.v));
    }
    let mut minimal = Vec::new();
    loop {
        let next_pair = pairs.keys().next().copied();
        let next_input = pending.keys().next().copied();
        let take_pair = match (next_pair, next_input) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(d), Some((e, _))) => d <= e,
        };
        if take_pair {
            let (d, batch) = pairs.pop_first().unwrap();
            for p in batch {
                limits.check(p.lcm.weighted_degree(&ord.weights))?;
                let s = s_vector(field, ord, &red, &p);
                let r = red.reduce(ord, s, limits)?;
                if !r.is_zero() {
                    insert(field, ord, &mut red, &mut pairs, r, d, limits)?;
                }
            }
        } else {
            let (key, batch) = pending.pop_first().unwrap();
            for (idx, v) in batch {
                let r = red.reduce(ord, v, limits)?;
                if !r.is_zero() {
                    if key.1 {
                        minimal.push(idx);
                    }
                    insert(field, ord, &mut red, &mut pairs, r, key.0, limits)?;
                }
            }
        }
    }
    let basis = finalize(field, ord, red, limits)?;
    Ok(BuchbergerOutput { basis, minimal })
}

fn s_vector<K: Field>(field: K, ord: &TermOrder, red: &Reducers<K>, p: &Pair) -> Vector<K> {
    let a = &red.elems[p.i].v;
    let b = &red.elems[p.j].v;
    let la = a.lead().unwrap();
    let lb = b.lead().unwrap();
    let ma = la.mono.divide_into(&p.lcm).unwrap();
    let mb = lb.mono.divide_into(&p.lcm).unwrap();
    // Basis elements are monic, so the leads cancel with unit coefficients.
    let a_part: Vec<Term<K>> =
        a.terms[..a.terms.len() - 1].iter().map(|t| Term { pos: t.pos, mono: t.mono.mul(&ma), coeff: t.coeff.clone() }).collect();
    let terms = sub_mul(field, ord, &a_part, &field.one(), &mb, &b.terms[..b.terms.len() - 1]);
    Vector { terms }
}

fn single_component<K: Field>(v: &Vector<K>) -> bool {
    let p = v.lead().unwrap().pos;
    v.terms.iter().all(|t| t.pos == p)
}

fn insert<K: Field>(
    field: K,
    ord: &TermOrder,
    red: &mut Reducers<K>,
    pairs: &mut BTreeMap<i64, Vec<Pair>>,
    mut v: Vector<K>,
    sugar: i64,
    limits: &Limits,
) -> Result<()> {
    v.make_monic(field);
    let (mono_deg, _) = v.degrees(ord);
    limits.check(mono_deg)?;
    let lead = v.lead().unwrap().clone();
    let new_single = single_component(&v);
    let k = red.push(v, sugar);

    // Chain criterion on queued pairs: drop (i, j) when lead(k) divides their
    // lcm strictly beyond both lcm(i, k) and lcm(j, k).
    for batch in pairs.values_mut() {
        batch.retain(|p| {
            if p.pos != lead.pos || !lead.mono.divides(&p.lcm) {
                return true;
            }
            let li = &red.elems[p.i].v.lead().unwrap().mono;
            let lj = &red.elems[p.j].v.lead().unwrap().mono;
            li.lcm(&lead.mono) == p.lcm || lj.lcm(&lead.mono) == p.lcm
        });
    }
    pairs.retain(|_, b| !b.is_empty());

    let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
    for &i in &red.by_pos[lead.pos] {
        if i == k || red.elems[i].redundant {
            continue;
        }
        let li = &red.elems[i].v.lead().unwrap().mono;
        let coprime = li.is_coprime(&lead.mono) && new_single && single_component(&red.elems[i].v);
        cands.push((i, li.lcm(&lead.mono), coprime));
    }
    // Drop pairs whose lcm is a proper multiple of another new pair's lcm.
    let keep: Vec<bool> = cands
        .iter()
        .map(|(_, l, _)| !cands.iter().any(|(_, l2, _)| l2 != l && l2.divides(l)))
        .collect();
    let mut seen: Vec<Monomial> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, (i, l, _)) in cands.iter().enumerate() {
        if !keep[idx] || seen.contains(l) {
            continue;
        }
        seen.push(l.clone());
        // Among pairs sharing an lcm keep one; if any of them has coprime
        // leads, the whole group is redundant.
        let group_coprime = cands.iter().any(|(_, l2, c)| l2 == l && *c);
        if !group_coprime {
            chosen.push(Pair { i: *i, j: k, pos: lead.pos, lcm: l.clone() });
        }
    }
    for p in chosen {
        let si = red.elems[p.i].sugar;
        let d_i = si + red.elems[p.i].v.lead().unwrap().mono.divide_into(&p.lcm).unwrap().weighted_degree(&ord.weights) as i64;
        let d_k = sugar + lead.mono.divide_into(&p.lcm).unwrap().weighted_degree(&ord.weights) as i64;
        pairs.entry(d_i.max(d_k)).or_default().push(p);
    }

    // Older elements whose lead is a multiple of the new lead no longer serve
    // as reducers.
    for &i in &red.by_pos[lead.pos].clone() {
        if i != k && !red.elems[i].redundant && lead.mono.divides(&red.elems[i].v.lead().unwrap().mono) {
            red.elems[i].redundant = true;
        }
    }
    Ok(())
}

fn finalize<K: Field>(field: K, ord: &TermOrder, red: Reducers<K>, limits: &Limits) -> Result<Vec<Vector<K>>> {
    let rank = red.by_pos.len();
    let mut kept: Vec<Vector<K>> = red.elems.into_iter().filter(|e| !e.redundant).map(|e| e.v).collect();
    kept.sort_by(|a, b| {
        let (la, lb) = (a.lead().unwrap(), b.lead().unwrap());
        ord.cmp_terms(lb.pos, &lb.mono, la.pos, &la.mono)
    });
    // Interreduce tails against the others.
    let mut out = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let mut others = Reducers::new(field, rank);
        for (j, v) in kept.iter().enumerate() {
            if j != i {
                others.push(v.clone(), 0);
            }
        }
        let v = &kept[i];
        let lead = v.terms.last().unwrap().clone();
        let tail = Vector { terms: v.terms[..v.terms.len() - 1].to_vec() };
        let mut r = others.reduce(ord, tail, limits)?;
        r.terms.push(lead);
        r.make_monic(field);
        out.push(r);
    }
    Ok(out)
}

/// A Gröbner basis of a submodule of `S^rank`, `S = k[x_1..x_n]`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<K: Field> {
    field: K,
    nvars: usize,
    rank: usize,
    ord: TermOrder,
    elements: Vec<Vector<K>>,
    reduced: bool,
}

impl<K: Field> GroebnerBasis<K> {
    /// Reduced Gröbner basis of the submodule generated by `gens`. `shifts`
    /// are the degrees of the basis of `S^rank`.
    pub fn compute(
        field: K,
        nvars: usize,
        gens: &[FreeElement<K>],
        order: MonomialOrder,
        weights: &[u32],
        shifts: &[i64],
        limits: &Limits,
    ) -> Result<Self> {
        let rank = shifts.len();
        if weights.len() != nvars {
            return Err(Error::Dimension(format!("{} weights for {nvars} variables", weights.len())));
        }
        for g in gens {
            if g.rank() != rank {
                return Err(Error::Dimension(format!("generator of rank {} in a module of rank {rank}", g.rank())));
            }
            if g.components().iter().any(|p| p.nvars() != nvars) {
                return Err(Error::Dimension("generator over a different number of variables".into()));
            }
        }
        let ord = TermOrder::new(order, weights.to_vec(), shifts.to_vec());
        let inputs = gens.iter().map(|g| Input { v: Vector::from_free(g, &ord), counted: true }).collect();
        let out = buchberger(field, &ord, rank, inputs, limits)?;
        Ok(GroebnerBasis { field, nvars, rank, ord, elements: out.basis, reduced: true })
    }

    pub fn generators(&self) -> Vec<FreeElement<K>> {
        self.elements.iter().map(|v| v.to_free(self.field, self.nvars, self.rank)).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.ord.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Leading terms `(position, monomial)`.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elements.iter().map(|v| {
            let l = v.lead().unwrap();
            (l.pos, l.mono.clone())
        }).collect()
    }

    fn reducers(&self) -> Reducers<K> {
        let mut r = Reducers::new(self.field, self.rank);
        for v in &self.elements {
            r.push(v.clone(), 0);
        }
        r
    }

    pub fn normal_form(&self, f: &FreeElement<K>) -> Result<FreeElement<K>> {
        if f.rank() != self.rank {
            return Err(Error::Dimension(format!("element of rank {} against a basis of rank {}", f.rank(), self.rank)));
        }
        if f.components().iter().any(|p| p.nvars() != self.nvars) {
            return Err(Error::Dimension("element over a different number of variables".into()));
        }
        let v = Vector::from_free(f, &self.ord);
        let r = self.reducers().reduce(&self.ord, v, &Limits { degree_cap: u64::MAX, cancel: None })?;
        Ok(r.to_free(self.field, self.nvars, self.rank))
    }

    /// Normal forms of many elements, sharing the reducer index.
    pub fn normal_forms(&self, fs: &[FreeElement<K>]) -> Result<Vec<FreeElement<K>>> {
        let red = self.reducers();
        let lim = Limits { degree_cap: u64::MAX, cancel: None };
        fs.iter()
            .map(|f| {
                if f.rank() != self.rank {
                    return Err(Error::Dimension("rank mismatch in normal form".into()));
                }
                let v = Vector::from_free(f, &self.ord);
                Ok(red.reduce(&self.ord, v, &lim)?.to_free(self.field, self.nvars, self.rank))
            })
            .collect()
    }

    pub fn contains(&self, f: &FreeElement<K>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Every S-vector of the basis reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let red = self.reducers();
        let lim = Limits { degree_cap: u64::MAX, cancel: None };
        for i in 0..self.elements.len() {
            for j in (i + 1)..self.elements.len() {
                let (li, lj) = (self.elements[i].lead().unwrap(), self.elements[j].lead().unwrap());
                if li.pos != lj.pos {
                    continue;
                }
                let p = Pair { i, j, pos: li.pos, lcm: li.mono.lcm(&lj.mono) };
                let s = s_vector(self.field, &self.ord, &red, &p);
                match red.reduce(&self.ord, s, &lim) {
                    Ok(r) if r.is_zero() => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

impl<K: Field> PartialEq for GroebnerBasis<K> {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.nvars == other.nvars && self.generators() == other.generators()
    }
}

/// Ideal version of [`GroebnerBasis::compute`] for plain polynomials.
pub fn ideal_basis<K: Field>(
    field: K,
    nvars: usize,
    gens: &[Polynomial<K>],
    weights: &[u32],
    limits: &Limits,
) -> Result<GroebnerBasis<K>> {
    let gens: Vec<FreeElement<K>> = gens.iter().map(|g| FreeElement::from_components(vec![g.clone()])).collect();
    GroebnerBasis::compute(field, nvars, &gens, MonomialOrder::default(), weights, &[0], limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::expr::parse_poly_expr;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn p(s: &str) -> Polynomial<Rationals> {
        parse_poly_expr(s).unwrap().eval(Rationals, &names()).unwrap()
    }

    fn texts(gb: &GroebnerBasis<Rationals>) -> Vec<String> {
        let mut t: Vec<String> = gb.generators().iter().map(|g| g.component(0).to_text(&names())).collect();
        t.sort();
        t
    }

    #[test]
    fn buchberger_on_x2_and_xy_plus_y2() {
        let gb = ideal_basis(Rationals, 2, &[p("x^2"), p("x*y + y^2")], &[1, 1], &Limits::default()).unwrap();
        assert_eq!(texts(&gb), vec!["x*y + y^2", "x^2", "y^3"]);
        assert!(gb.satisfies_buchberger_criterion());
    }

    #[test]
    fn normal_form_examples() {
        let gb = ideal_basis(Rationals, 2, &[p("x^2"), p("x*y + y^2"), p("y^3")], &[1, 1], &Limits::default()).unwrap();
        let f = FreeElement::from_components(vec![p("x*y^2 + y^3")]);
        assert!(gb.normal_form(&f).unwrap().is_zero());
        let gx = ideal_basis(Rationals, 2, &[p("x")], &[1, 1], &Limits::default()).unwrap();
        assert!(gx.normal_form(&FreeElement::from_components(vec![p("x^2")])).unwrap().is_zero());
        assert!(gx.normal_form(&FreeElement::zero(Rationals, 2, 1)).unwrap().is_zero());
        let r = gx.normal_form(&FreeElement::from_components(vec![p("x + y")])).unwrap();
        assert_eq!(r.component(0).to_text(&names()), "y");
    }

    #[test]
    fn already_reduced_and_principal() {
        let gb = ideal_basis(Rationals, 2, &[p("y"), p("x")], &[1, 1], &Limits::default()).unwrap();
        assert_eq!(texts(&gb), vec!["x", "y"]);
        let f2 = PrimeField::new(2).unwrap();
        let xy = parse_poly_expr("x*y").unwrap().eval(f2, &names()).unwrap();
        let gb = ideal_basis(f2, 2, &[xy.clone()], &[1, 1], &Limits::default()).unwrap();
        assert_eq!(gb.generators()[0].component(0), &xy);
    }

    #[test]
    fn rank_mismatch_is_dimension_error() {
        let gb = ideal_basis(Rationals, 2, &[p("x")], &[1, 1], &Limits::default()).unwrap();
        let e = FreeElement::zero(Rationals, 2, 2);
        assert!(matches!(gb.normal_form(&e), Err(Error::Dimension(_))));
    }

    #[test]
    fn degree_cap_aborts() {
        let lim = Limits { degree_cap: 2, cancel: None };
        let r = ideal_basis(Rationals, 2, &[p("x^2"), p("x*y + y^2")], &[1, 1], &lim);
        assert!(matches!(r, Err(Error::Resource(_))), "{r:?}");
    }

    #[test]
    fn cancellation_is_observed() {
        let token = CancelToken::new();
        token.cancel();
        let lim = Limits { degree_cap: 64, cancel: Some(token) };
        let r = ideal_basis(Rationals, 2, &[p("x^2"), p("x*y + y^2")], &[1, 1], &lim);
        assert!(matches!(r, Err(Error::Resource(_))));
    }

    #[test]
    fn module_basis_is_idempotent() {
        let gens = vec![
            FreeElement::from_components(vec![p("x"), p("y")]),
            FreeElement::from_components(vec![p("y"), p("0")]),
            FreeElement::from_components(vec![p("x^2"), p("x*y")]),
        ];
        let gb = GroebnerBasis::compute(Rationals, 2, &gens, MonomialOrder::default(), &[1, 1], &[0, 0], &Limits::default())
            .unwrap();
        assert!(gb.satisfies_buchberger_criterion());
        let again = GroebnerBasis::compute(
            Rationals,
            2,
            &gb.generators(),
            MonomialOrder::default(),
            &[1, 1],
            &[0, 0],
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(gb, again);
        for g in &gens {
            assert!(gb.contains(g).unwrap());
        }
    }
}
