//! Graded quotient rings `R = k[x_1..x_n]/I` and their ideals.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::expr::parse_poly_expr;
use crate::poly::free::FreeElement;
use crate::poly::groebner::{ideal_basis, GroebnerBasis, Limits};
use crate::poly::matrix::Matrix;
use crate::poly::polynomial::Polynomial;
use crate::poly::syzygy::{minimal_subset, reduce_polynomial, syzygies_mod};

/// Persistent store for expensive results, keyed by strings that fully
/// describe the computation. Implementations must return exactly what was
/// stored.
pub trait ComputationCache: Send + Sync {
    fn get(&self, key: &str) -> Option<String>;
    fn put(&self, key: &str, value: &str);
}

/// Declared structure of a ring. Flags are trusted except where
/// [`RingContext::new`] can check them.
#[derive(Clone, Debug, Default)]
pub struct RingFlags {
    pub reduced: bool,
    pub complete_intersection: bool,
}

struct RingInner<K: Field> {
    field: K,
    names: Vec<String>,
    weights: Vec<u32>,
    ideal_gens: Vec<Polynomial<K>>,
    ideal_gb: GroebnerBasis<K>,
    minimal_primes: Vec<Vec<Polynomial<K>>>,
    prime_gbs: Vec<GroebnerBasis<K>>,
    flags: RingFlags,
    warnings: Vec<String>,
    limits: Limits,
    cache: Option<Arc<dyn ComputationCache>>,
    depth: OnceLock<usize>,
}

/// An immutable, cheaply clonable graded quotient ring.
#[derive(Clone)]
pub struct RingContext<K: Field> {
    inner: Arc<RingInner<K>>,
}

impl<K: Field> fmt::Debug for RingContext<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingContext({})", self.descriptor())
    }
}

impl<K: Field> PartialEq for RingContext<K> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.descriptor() == other.descriptor()
    }
}

impl<K: Field> RingContext<K> {
    /// Validates and builds a ring. Checks: homogeneity of `I`, `I ⊆ p` for
    /// every declared minimal prime, and for a declared complete
    /// intersection that the generators of `I` form a regular sequence in
    /// the polynomial ring. Reducedness and primality are trusted.
    pub fn new(
        field: K,
        names: Vec<String>,
        ideal: Vec<Polynomial<K>>,
        weights: Option<Vec<u32>>,
        minimal_primes: Vec<Vec<Polynomial<K>>>,
        flags: RingFlags,
        limits: Limits,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Input("a ring needs at least one variable".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Input(format!("variable `{a}` declared twice")));
            }
        }
        let weights = weights.unwrap_or_else(|| vec![1; n]);
        if weights.len() != n || weights.contains(&0) {
            return Err(Error::Input("grading needs one positive degree per variable".into()));
        }
        let check_poly = |p: &Polynomial<K>, what: &str| -> Result<()> {
            if p.nvars() != n {
                return Err(Error::Dimension(format!("{what} lives in a different polynomial ring")));
            }
            if !p.is_homogeneous(&weights) {
                return Err(Error::Input(format!("{what} `{}` is not homogeneous", p.to_text(&names))));
            }
            Ok(())
        };
        for p in &ideal {
            check_poly(p, "defining polynomial")?;
        }
        let ideal: Vec<Polynomial<K>> = ideal.into_iter().filter(|p| !p.is_zero()).collect();
        let ideal_gb = ideal_basis(field, n, &ideal, &weights, &limits)?;
        let one = FreeElement::from_components(vec![Polynomial::one(field, n)]);
        if ideal_gb.contains(&one)? {
            return Err(Error::Input("the defining ideal is the unit ideal".into()));
        }
        let mut prime_gbs = Vec::new();
        for (k, p) in minimal_primes.iter().enumerate() {
            for g in p {
                check_poly(g, "minimal prime generator")?;
            }
            let gb = ideal_basis(field, n, p, &weights, &limits)?;
            if gb.contains(&one)? {
                return Err(Error::Structural(format!("declared minimal prime #{} is the unit ideal", k + 1)));
            }
            for f in &ideal {
                if !gb.contains(&FreeElement::from_components(vec![f.clone()]))? {
                    return Err(Error::Structural(format!(
                        "declared minimal prime #{} does not contain `{}`",
                        k + 1,
                        f.to_text(&names)
                    )));
                }
            }
            prime_gbs.push(gb);
        }
        let mut warnings = Vec::new();
        if flags.reduced && !ideal.is_empty() {
            warnings.push("reducedness is declared, not verified".to_string());
        }
        if !minimal_primes.is_empty() {
            warnings.push("primality and completeness of the declared minimal primes are trusted".to_string());
        }
        if flags.complete_intersection && !ideal.is_empty() {
            let zero = ideal_basis(field, n, &[], &weights, &limits)?;
            if !sequence_is_regular(field, n, &weights, &zero, &ideal, &limits)? {
                return Err(Error::Structural(
                    "declared complete intersection, but the defining polynomials are not a regular sequence".into(),
                ));
            }
        }
        Ok(RingContext {
            inner: Arc::new(RingInner {
                field,
                names,
                weights,
                ideal_gens: ideal,
                ideal_gb,
                minimal_primes,
                prime_gbs,
                flags,
                warnings,
                limits,
                cache: None,
                depth: OnceLock::new(),
            }),
        })
    }

    /// The polynomial ring `k[names]`.
    pub fn polynomial_ring(field: K, names: &[&str]) -> Result<Self> {
        Self::new(
            field,
            names.iter().map(|s| s.to_string()).collect(),
            Vec::new(),
            None,
            Vec::new(),
            RingFlags::default(),
            Limits::default(),
        )
    }

    /// Quotient by polynomials given as text, with optional declared
    /// minimal primes (also as text).
    pub fn quotient(
        field: K,
        names: &[&str],
        ideal: &[&str],
        minimal_primes: &[&[&str]],
        flags: RingFlags,
    ) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let parse = |s: &&str| parse_poly_expr(s).and_then(|e| e.eval(field, &names));
        let ideal = ideal.iter().map(parse).collect::<Result<Vec<_>>>()?;
        let primes = minimal_primes
            .iter()
            .map(|p| p.iter().map(parse).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, names, ideal, None, primes, flags, Limits::default())
    }

    fn rebuild(&self, f: impl FnOnce(&mut RingInnerParts)) -> Self {
        let i = &self.inner;
        let mut parts = RingInnerParts { limits: i.limits.clone(), cache: i.cache.clone() };
        f(&mut parts);
        let depth = OnceLock::new();
        if let Some(d) = i.depth.get() {
            let _ = depth.set(*d);
        }
        RingContext {
            inner: Arc::new(RingInner {
                field: i.field,
                names: i.names.clone(),
                weights: i.weights.clone(),
                ideal_gens: i.ideal_gens.clone(),
                ideal_gb: i.ideal_gb.clone(),
                minimal_primes: i.minimal_primes.clone(),
                prime_gbs: i.prime_gbs.clone(),
                flags: i.flags.clone(),
                warnings: i.warnings.clone(),
                limits: parts.limits,
                cache: parts.cache,
                depth,
            }),
        }
    }

    /// The same ring with every variable degree multiplied by `q`.
    pub fn with_dilated_grading(&self, q: u32) -> Result<Self> {
        let i = &self.inner;
        let r = Self::new(
            i.field,
            i.names.clone(),
            i.ideal_gens.clone(),
            Some(i.weights.iter().map(|w| w * q).collect()),
            i.minimal_primes.clone(),
            i.flags.clone(),
            i.limits.clone(),
        )?;
        Ok(r.with_cache(i.cache.clone()))
    }

    pub fn with_limits(&self, limits: Limits) -> Self {
        self.rebuild(|p| p.limits = limits)
    }

    pub fn with_cache(&self, cache: Option<Arc<dyn ComputationCache>>) -> Self {
        self.rebuild(|p| p.cache = cache)
    }

    pub fn field(&self) -> K {
        self.inner.field
    }

    pub fn nvars(&self) -> usize {
        self.inner.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.inner.weights
    }

    pub fn limits(&self) -> &Limits {
        &self.inner.limits
    }

    pub fn defining_ideal(&self) -> &[Polynomial<K>] {
        &self.inner.ideal_gens
    }

    pub fn ideal_basis(&self) -> &GroebnerBasis<K> {
        &self.inner.ideal_gb
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.inner.ideal_gens.is_empty()
    }

    pub fn declared_minimal_primes(&self) -> &[Vec<Polynomial<K>>] {
        &self.inner.minimal_primes
    }

    /// Gröbner bases of the minimal primes in use: the declared ones, or the
    /// zero ideal of a polynomial ring. `None` when nothing is known.
    pub fn minimal_prime_bases(&self) -> Option<Vec<GroebnerBasis<K>>> {
        if !self.inner.prime_gbs.is_empty() {
            Some(self.inner.prime_gbs.clone())
        } else if self.is_polynomial_ring() {
            Some(vec![self.inner.ideal_gb.clone()])
        } else {
            None
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.inner.flags.reduced || self.is_polynomial_ring()
    }

    pub fn is_complete_intersection(&self) -> bool {
        self.inner.flags.complete_intersection || self.is_polynomial_ring()
    }

    /// Declared (or evidently) a domain: reduced with a single minimal prime.
    pub fn is_domain(&self) -> bool {
        self.is_reduced() && self.minimal_prime_bases().map(|p| p.len() == 1).unwrap_or(false)
    }

    pub fn warnings(&self) -> &[String] {
        &self.inner.warnings
    }

    /// Assumptions a computation relying on minimal primes or reducedness
    /// inherits from this ring.
    pub fn trusted_assumptions(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.inner.flags.reduced && !self.is_polynomial_ring() {
            out.push(format!("{} is reduced (declared)", self.descriptor()));
        }
        if !self.inner.minimal_primes.is_empty() {
            let ps: Vec<String> = self.inner.minimal_primes.iter().map(|p| self.ideal_text(p)).collect();
            out.push(format!("minimal primes are exactly {} (declared)", ps.join(", ")));
        }
        out
    }

    fn ideal_text(&self, gens: &[Polynomial<K>]) -> String {
        let g: Vec<String> = gens.iter().map(|p| p.to_text(self.names())).collect();
        format!("({})", g.join(", "))
    }

    /// Canonical text of the ring, e.g. `GF(5)[x,y]/(x*y)`.
    pub fn descriptor(&self) -> String {
        let mut s = format!("{}[{}]", self.field().spec(), self.names().join(","));
        if self.weights().iter().any(|&w| w != 1) {
            let w: Vec<String> = self.weights().iter().map(|w| w.to_string()).collect();
            s.push_str(&format!("{{{}}}", w.join(",")));
        }
        if !self.is_polynomial_ring() {
            s.push('/');
            s.push_str(&self.ideal_text(&self.inner.ideal_gens));
        }
        s
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial<K>> {
        parse_poly_expr(text)?.eval(self.field(), self.names())
    }

    pub fn variable(&self, i: usize) -> Polynomial<K> {
        Polynomial::variable(self.field(), self.nvars(), i)
    }

    pub fn variables(&self) -> Vec<Polynomial<K>> {
        (0..self.nvars()).map(|i| self.variable(i)).collect()
    }

    pub fn zero(&self) -> Polynomial<K> {
        Polynomial::zero(self.field(), self.nvars())
    }

    pub fn one(&self) -> Polynomial<K> {
        Polynomial::one(self.field(), self.nvars())
    }

    /// Normal form modulo the defining ideal.
    pub fn reduce(&self, p: &Polynomial<K>) -> Polynomial<K> {
        reduce_polynomial(&self.inner.ideal_gb, p).expect("polynomial from this ring")
    }

    pub fn is_zero(&self, p: &Polynomial<K>) -> bool {
        self.reduce(p).is_zero()
    }

    /// Lies in `m = (x_1..x_n)`: no constant term.
    pub fn in_max_ideal(&self, p: &Polynomial<K>) -> bool {
        self.field().is_zero(&p.constant_term())
    }

    pub fn ideal(&self, gens: Vec<Polynomial<K>>) -> Result<Ideal<K>> {
        Ideal::new(self, gens)
    }

    pub fn max_ideal(&self) -> Ideal<K> {
        Ideal::new(self, self.variables()).expect("variables are homogeneous")
    }

    /// Syzygies over `R`; results are cached when a cache is attached.
    pub fn syzygies(&self, a: &Matrix<K>) -> Result<Matrix<K>> {
        let compute = || syzygies_mod(a, self.weights(), self.ideal_basis(), self.limits());
        let Some(cache) = &self.inner.cache else {
            return compute();
        };
        let key = format!("syz\n{}\n{}", self.descriptor(), encode_matrix(a, self.names()));
        if let Some(hit) = cache.get(&key) {
            if let Ok(m) = decode_matrix(self, &hit) {
                return Ok(m);
            }
        }
        let m = compute()?;
        cache.put(&key, &encode_matrix(&m, self.names()));
        Ok(m)
    }

    /// Depth of `R` along `m`, computed once via Koszul homology.
    pub fn depth(&self) -> Result<usize> {
        if let Some(d) = self.inner.depth.get() {
            return Ok(*d);
        }
        let d = crate::homology::ring_depth(self)?;
        let _ = self.inner.depth.set(d);
        Ok(d)
    }

    /// Whether `seq` is a regular sequence on `R`, by Koszul homology.
    pub fn is_regular_sequence(&self, seq: &[Polynomial<K>]) -> Result<bool> {
        if seq.is_empty() {
            return Err(Error::Input("empty sequence".into()));
        }
        for r in seq {
            if r.nvars() != self.nvars() || !r.is_homogeneous(self.weights()) {
                return Err(Error::Input("sequence elements must be homogeneous elements of the ring".into()));
            }
            if !self.in_max_ideal(r) {
                return Err(Error::Input(format!(
                    "`{}` is not in the maximal ideal, so the sequence generates the unit ideal",
                    r.to_text(self.names())
                )));
            }
        }
        crate::homology::koszul_is_acyclic(self, seq)
    }

    /// Same question answered by successive non-zerodivisor tests; used as
    /// an independent cross-check.
    pub fn is_regular_sequence_by_quotients(&self, seq: &[Polynomial<K>]) -> Result<bool> {
        sequence_is_regular(self.field(), self.nvars(), self.weights(), self.ideal_basis(), seq, self.limits())
    }
}

struct RingInnerParts {
    limits: Limits,
    cache: Option<Arc<dyn ComputationCache>>,
}

/// Successive test that `r_i` is a non-zerodivisor on `S/(I, r_1..r_{i-1})`.
fn sequence_is_regular<K: Field>(
    field: K,
    nvars: usize,
    weights: &[u32],
    base: &GroebnerBasis<K>,
    seq: &[Polynomial<K>],
    limits: &Limits,
) -> Result<bool> {
    let mut gens: Vec<Polynomial<K>> = base.generators().into_iter().map(|g| g.into_components().remove(0)).collect();
    let one = FreeElement::from_components(vec![Polynomial::one(field, nvars)]);
    for r in seq {
        let gb = ideal_basis(field, nvars, &gens, weights, limits)?;
        let deg = r.degree(weights).unwrap_or(0) as i64;
        let a = Matrix::new(field, nvars, vec![vec![r.clone()]], vec![0], vec![deg])?;
        let syz = syzygies_mod(&a, weights, &gb, limits)?;
        if syz.cols() > 0 {
            return Ok(false);
        }
        gens.push(r.clone());
    }
    let gb = ideal_basis(field, nvars, &gens, weights, limits)?;
    Ok(!gb.contains(&one)?)
}

pub(crate) fn encode_matrix<K: Field>(m: &Matrix<K>, names: &[String]) -> String {
    let join = |d: &[i64]| d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut s = format!("{} {}\n{}\n{}\n", m.rows(), m.cols(), join(m.row_degrees()), join(m.col_degrees()));
    for p in m.entries() {
        s.push_str(&p.to_text(names));
        s.push('\n');
    }
    s
}

pub(crate) fn decode_matrix<K: Field>(ring: &RingContext<K>, text: &str) -> Result<Matrix<K>> {
    let bad = || Error::Input("corrupt cache entry".into());
    let mut lines = text.split('\n');
    let dims: Vec<usize> = lines.next().ok_or_else(bad)?.split(' ').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_>>()?;
    if dims.len() != 2 {
        return Err(bad());
    }
    let mut degs = |n: usize| -> Result<Vec<i64>> {
        let l = lines.next().ok_or_else(bad)?;
        let v: Vec<i64> = if l.is_empty() { Vec::new() } else { l.split(' ').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_>>()? };
        if v.len() != n {
            return Err(bad());
        }
        Ok(v)
    };
    let rd = degs(dims[0])?;
    let cd = degs(dims[1])?;
    let mut entries = Vec::with_capacity(dims[0]);
    for _ in 0..dims[0] {
        let mut row = Vec::with_capacity(dims[1]);
        for _ in 0..dims[1] {
            row.push(ring.parse(lines.next().ok_or_else(bad)?)?);
        }
        entries.push(row);
    }
    Matrix::new(ring.field(), ring.nvars(), entries, rd, cd)
}

/// A homogeneous ideal of `R`, stored with a Gröbner basis of its preimage
/// in the polynomial ring.
#[derive(Clone, Debug)]
pub struct Ideal<K: Field> {
    ring: RingContext<K>,
    generators: Vec<Polynomial<K>>,
    gb: GroebnerBasis<K>,
}

impl<K: Field> Ideal<K> {
    pub fn new(ring: &RingContext<K>, gens: Vec<Polynomial<K>>) -> Result<Self> {
        for g in &gens {
            if g.nvars() != ring.nvars() {
                return Err(Error::Dimension("ideal generator from a different ring".into()));
            }
            if !g.is_homogeneous(ring.weights()) {
                return Err(Error::Input(format!("ideal generator `{}` is not homogeneous", g.to_text(ring.names()))));
            }
        }
        let generators: Vec<Polynomial<K>> = gens.iter().map(|g| ring.reduce(g)).filter(|g| !g.is_zero()).collect();
        let mut all: Vec<Polynomial<K>> = ring.defining_ideal().to_vec();
        all.extend(generators.iter().cloned());
        let gb = ideal_basis(ring.field(), ring.nvars(), &all, ring.weights(), ring.limits())?;
        Ok(Ideal { ring: ring.clone(), generators, gb })
    }

    pub fn ring(&self) -> &RingContext<K> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<K>] {
        &self.generators
    }

    /// Gröbner basis of the preimage of the ideal in the polynomial ring.
    pub fn basis(&self) -> &GroebnerBasis<K> {
        &self.gb
    }

    pub fn contains(&self, p: &Polynomial<K>) -> Result<bool> {
        self.gb.contains(&FreeElement::from_components(vec![p.clone()]))
    }

    pub fn contains_ideal(&self, other: &Ideal<K>) -> Result<bool> {
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by containment in both directions.
    pub fn equals(&self, other: &Ideal<K>) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.contains(&self.ring.one()).unwrap_or(false)
    }

    /// A minimal homogeneous generating set, reduced modulo `I`.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial<K>>> {
        let r = &self.ring;
        if self.is_unit() {
            return Ok(vec![r.one()]);
        }
        let gens: Vec<FreeElement<K>> = self.generators.iter().map(|g| FreeElement::from_components(vec![g.clone()])).collect();
        let keep = minimal_subset(r.field(), r.weights(), &[0], &gens, &[], r.ideal_basis(), r.limits())?;
        Ok(keep.into_iter().map(|i| self.generators[i].clone()).collect())
    }

    /// Intersection, read off the syzygies of `[1 J 0; 1 0 K]`.
    pub fn intersect(&self, other: &Ideal<K>) -> Result<Ideal<K>> {
        let r = &self.ring;
        let (f, n) = (r.field(), r.nvars());
        let a = self.generators.len();
        let b = other.generators.len();
        let mut entries = vec![vec![Polynomial::zero(f, n); 1 + a + b]; 2];
        entries[0][0] = r.one();
        entries[1][0] = r.one();
        for (j, g) in self.generators.iter().enumerate() {
            entries[0][1 + j] = g.clone();
        }
        for (j, g) in other.generators.iter().enumerate() {
            entries[1][1 + a + j] = g.clone();
        }
        let mut col_deg = vec![0i64];
        col_deg.extend(self.generators.iter().chain(&other.generators).map(|g| g.degree(r.weights()).unwrap_or(0) as i64));
        let m = Matrix::new(f, n, entries, vec![0, 0], col_deg)?;
        let syz = r.syzygies(&m)?;
        let gens = (0..syz.cols()).map(|j| r.reduce(syz.get(0, j))).filter(|p| !p.is_zero()).collect();
        Ideal::new(r, gens)
    }

    pub fn to_text(&self) -> String {
        self.ring.ideal_text(&self.generators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn polynomial_ring_is_regular_data() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        assert!(r.is_polynomial_ring());
        assert!(r.is_reduced() && r.is_domain());
        assert_eq!(r.descriptor(), "QQ[x,y]");
    }

    #[test]
    fn node_with_declared_primes() {
        let f5 = PrimeField::new(5).unwrap();
        let flags = RingFlags { reduced: true, complete_intersection: true };
        let r = RingContext::quotient(f5, &["x", "y"], &["x*y"], &[&["x"], &["y"]], flags).unwrap();
        assert_eq!(r.minimal_prime_bases().unwrap().len(), 2);
        assert!(!r.is_domain());
        assert_eq!(r.descriptor(), "GF(5)[x,y]/(x*y)");
    }

    #[test]
    fn bad_declarations_are_rejected() {
        let f5 = PrimeField::new(5).unwrap();
        let e = RingContext::quotient(f5, &["x", "y"], &["x*y"], &[&["x"], &["x + y"]], RingFlags::default());
        assert!(matches!(e, Err(Error::Structural(_))));
        let e = RingContext::quotient(f5, &["x", "y"], &["x*y + x"], &[], RingFlags::default());
        assert!(matches!(e, Err(Error::Input(_))));
        let ci = RingFlags { reduced: false, complete_intersection: true };
        let e = RingContext::quotient(f5, &["x", "y"], &["x*y", "x^2"], &[], ci);
        assert!(matches!(e, Err(Error::Structural(_))));
    }

    #[test]
    fn trusted_reducedness_records_a_warning() {
        let f2 = PrimeField::new(2).unwrap();
        let flags = RingFlags { reduced: true, complete_intersection: false };
        let r = RingContext::quotient(f2, &["x", "y"], &["x^2"], &[], flags).unwrap();
        assert!(r.warnings().iter().any(|w| w.contains("reduced")));
    }

    #[test]
    fn ideal_operations() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let x = r.ideal(vec![r.parse("x").unwrap()]).unwrap();
        let y = r.ideal(vec![r.parse("y").unwrap()]).unwrap();
        let xy = x.intersect(&y).unwrap();
        let want = r.ideal(vec![r.parse("x*y").unwrap()]).unwrap();
        assert!(xy.equals(&want).unwrap());
        let m = r.max_ideal();
        assert!(m.contains_ideal(&x).unwrap() && !x.contains_ideal(&m).unwrap());
        let redundant = r.ideal(vec![r.parse("x").unwrap(), r.parse("x*y").unwrap(), r.parse("y").unwrap()]).unwrap();
        assert_eq!(redundant.minimal_generators().unwrap().len(), 2);
    }

    #[test]
    fn regular_sequence_by_quotients() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let x = r.parse("x").unwrap();
        let y = r.parse("y").unwrap();
        assert!(r.is_regular_sequence_by_quotients(&[x.clone(), y.clone()]).unwrap());
        assert!(!r.is_regular_sequence_by_quotients(&[x.clone(), x.clone()]).unwrap());
    }

    #[test]
    fn cached_syzygies_round_trip() {
        use std::collections::HashMap;
        use std::sync::Mutex;
        #[derive(Default)]
        struct Mem(Mutex<HashMap<String, String>>);
        impl ComputationCache for Mem {
            fn get(&self, k: &str) -> Option<String> {
                self.0.lock().unwrap().get(k).cloned()
            }
            fn put(&self, k: &str, v: &str) {
                self.0.lock().unwrap().insert(k.into(), v.into());
            }
        }
        let mem = Arc::new(Mem::default());
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap().with_cache(Some(mem.clone()));
        let a = Matrix::new(Rationals, 2, vec![vec![r.parse("x").unwrap(), r.parse("y").unwrap()]], vec![0], vec![1, 1]).unwrap();
        let cold = r.syzygies(&a).unwrap();
        assert_eq!(mem.0.lock().unwrap().len(), 1);
        let warm = r.syzygies(&a).unwrap();
        assert_eq!(cold, warm);
    }
}
