//! Frobenius functors and restriction of scalars in positive
//! characteristic, with the carrier and regularity verifiers built on them.

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{free_resolution, pd, tensored_homology};
use crate::module::{FPModule, ModuleElement, ModuleMap};
use crate::poly::free::FreeElement;
use crate::poly::matrix::Matrix;
use crate::poly::monomial::Monomial;
use crate::poly::polynomial::Polynomial;
use crate::ring::RingContext;
use crate::torsion::torsion_split;

/// `φ^e`, with `q = p^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusPower {
    pub e: u32,
    pub p: u64,
    pub q: u64,
}

impl FrobeniusPower {
    pub fn new<K: Field>(ring: &RingContext<K>, e: u32) -> Result<Self> {
        let p = ring.field().characteristic();
        if p == 0 {
            return Err(Error::Unsupported(format!("{} has characteristic 0; Frobenius needs p > 0", ring.descriptor())));
        }
        if e == 0 {
            return Err(Error::Input("Frobenius power e must be positive".into()));
        }
        let q = p.checked_pow(e).filter(|&q| q <= u32::MAX as u64).ok_or_else(|| Error::Resource("p^e overflows".into()))?;
        Ok(FrobeniusPower { e, p, q })
    }
}

fn power_matrix<K: Field>(ring: &RingContext<K>, a: &Matrix<K>, q: u64) -> Matrix<K> {
    let scale = |d: &[i64]| d.iter().map(|x| x * q as i64).collect::<Vec<_>>();
    a.map_entries(|p| ring.reduce(&p.pow(q as u32))).with_degrees(scale(a.row_degrees()), scale(a.col_degrees()))
}

/// `F^e(coker A) = coker(A^[q])`, entries raised to the `q`-th power.
pub fn frobenius_functor<K: Field>(m: &FPModule<K>, e: u32) -> Result<FPModule<K>> {
    let fp = FrobeniusPower::new(m.ring(), e)?;
    FPModule::new(m.ring(), power_matrix(m.ring(), m.presentation(), fp.q))
}

/// `Tor_i(M, ^{φ^e}R) = H_i(F^e(F_•))` for the minimal resolution `F_•`.
pub fn tor_frobenius<K: Field>(m: &FPModule<K>, e: u32, i: usize) -> Result<FPModule<K>> {
    let ring = m.ring();
    let fp = FrobeniusPower::new(ring, e)?;
    if i == 0 {
        return frobenius_functor(m, e);
    }
    let res = free_resolution(m, i + 1)?;
    let scale = |d: &[i64]| d.iter().map(|x| x * fp.q as i64).collect::<Vec<_>>();
    let Some(deg_i) = res.degrees.get(i).filter(|d| !d.is_empty()) else {
        return FPModule::free(ring, Vec::new());
    };
    let di = power_matrix(ring, &res.differentials[i - 1], fp.q);
    let prev = scale(&res.degrees[i - 1]);
    let dnext = res.differentials.get(i).map(|d| power_matrix(ring, d, fp.q));
    let r = FPModule::free_rank(ring, 1);
    tensored_homology(&r, &scale(deg_i), dnext.as_ref(), Some((&di, prev.as_slice())))
}

/// `^{φ^e}M` over `R` with the grading dilated by `q`. Generator
/// `(α, j)` is `x^α g_j` with `0 ≤ α_i < q`.
#[derive(Clone, Debug)]
pub struct ScalarRestriction<K: Field> {
    pub source: FPModule<K>,
    pub frobenius: FrobeniusPower,
    pub ring: RingContext<K>,
    pub module: FPModule<K>,
    pub basis: Vec<(Monomial, usize)>,
}

fn exponent_box(nvars: usize, q: u32) -> Vec<Monomial> {
    let mut out = vec![vec![0u32; nvars]];
    for i in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..q).map(move |a| {
                    let mut e = e.clone();
                    e[i] = a;
                    e
                })
            })
            .collect();
    }
    out.iter().map(|e| Monomial::from_exponents(e)).collect()
}

impl<K: Field> ScalarRestriction<K> {
    fn slot(&self, alpha: &[u32], j: usize) -> usize {
        let q = self.frobenius.q as usize;
        let mut idx = 0;
        for &a in alpha {
            idx = idx * q + a as usize;
        }
        j * q.pow(alpha.len() as u32) + idx
    }

    /// Rewrites a vector of `S^m` in the basis `x^α e_j` over `k[y]`, with
    /// `y_i = x_i^q`.
    pub fn rewrite(&self, v: &FreeElement<K>) -> FreeElement<K> {
        let (field, n) = (self.ring.field(), self.ring.nvars());
        let q = self.frobenius.q as u32;
        let mut comps: Vec<Vec<(Monomial, K::Elem)>> = vec![Vec::new(); self.basis.len()];
        for (j, p) in v.components().iter().enumerate() {
            for (mono, c) in p.terms() {
                let alpha: Vec<u32> = mono.exponents().iter().map(|e| e % q).collect();
                let beta: Vec<u32> = mono.exponents().iter().map(|e| e / q).collect();
                comps[self.slot(&alpha, j)].push((Monomial::from_exponents(&beta), c.clone()));
            }
        }
        FreeElement::from_components(comps.into_iter().map(|t| Polynomial::from_terms(field, n, t)).collect())
    }

    /// The class of `v ∈ M` inside `^{φ^e}M`.
    pub fn push(&self, v: &ModuleElement<K>) -> Result<ModuleElement<K>> {
        ModuleElement::new(&self.module, self.rewrite(&v.coords))
    }

    /// `dim_k (^{φ^e}M)_j = dim_k M_j` for `j ≤ up_to`, the dilated grading
    /// making the two vector spaces coincide degreewise.
    pub fn hilbert_check(&self, up_to: i64) -> Result<bool> {
        let low = self.source.generator_degrees().iter().copied().min().unwrap_or(0);
        for d in low..=up_to {
            if self.source.hilbert_function(d)? != self.module.hilbert_function(d)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Spot checks of the scalar action: `y_i · push(g) = push(x_i^q g)` on
    /// generators, and relations of `M` push to zero.
    pub fn action_check(&self) -> Result<bool> {
        let q = self.frobenius.q as u32;
        for g in self.source.generators() {
            let pg = self.push(&g)?;
            for (i, x) in self.source.ring().variables().iter().enumerate() {
                let lhs = pg.scale(&self.ring.variable(i));
                let rhs = self.push(&g.scale(&x.pow(q)))?;
                if !lhs.equals(&rhs)? {
                    return Ok(false);
                }
            }
        }
        for rel in self.source.presentation().columns() {
            if !self.module.is_zero_vector(&self.rewrite(&rel))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Restriction of scalars along `φ^e`. `k[x]` is free over `k[x^q]` on the
/// monomials `x^α`, `α_i < q`, so generators and relations of `^{φ^e}M`
/// are read off by rewriting `x^α u` for every relation `u` of `M` and of
/// `I·S^m`.
pub fn restrict_scalars<K: Field>(m: &FPModule<K>, e: u32) -> Result<ScalarRestriction<K>> {
    let ring = m.ring();
    let fp = FrobeniusPower::new(ring, e)?;
    let q = fp.q as u32;
    let n = ring.nvars();
    let target_ring = ring.with_dilated_grading(q)?;
    let boxm = exponent_box(n, q);
    let mut basis = Vec::new();
    let mut row_degrees = Vec::new();
    for (j, &dj) in m.generator_degrees().iter().enumerate() {
        for a in &boxm {
            basis.push((a.clone(), j));
            row_degrees.push(dj + a.weighted_degree(ring.weights()) as i64);
        }
    }
    let mut sr = ScalarRestriction { source: m.clone(), frobenius: fp, ring: target_ring.clone(), module: FPModule::free_rank(&target_ring, 0), basis };
    let (f, nv) = (ring.field(), n);
    let mut relations: Vec<(FreeElement<K>, i64)> = Vec::new();
    let a = m.presentation();
    for (j, col) in a.columns().into_iter().enumerate() {
        relations.push((col, a.col_degrees()[j]));
    }
    for g in ring.defining_ideal() {
        let dg = g.degree(ring.weights()).unwrap_or(0) as i64;
        for (j, &dj) in m.generator_degrees().iter().enumerate() {
            let mut c = vec![Polynomial::zero(f, nv); m.num_generators()];
            c[j] = g.clone();
            relations.push((FreeElement::from_components(c), dg + dj));
        }
    }
    let mut cols = Vec::new();
    let mut col_degrees = Vec::new();
    for (u, du) in &relations {
        for al in &boxm {
            let shifted = FreeElement::from_components(u.components().iter().map(|p| p.mul_monomial(al)).collect());
            let w = sr.rewrite(&shifted);
            if !w.is_zero() {
                cols.push(w);
                col_degrees.push(du + al.weighted_degree(ring.weights()) as i64);
            }
        }
    }
    let pres = Matrix::from_columns(f, nv, row_degrees, &cols, col_degrees);
    sr.module = FPModule::new(&target_ring, pres)?;
    Ok(sr)
}

/// `0 -> M -> R^{ν*} -> N -> 0` through generators of `M*`.
#[derive(Clone, Debug)]
pub struct UniversalPushforward<K: Field> {
    pub embedding: ModuleMap<K>,
    pub cokernel: FPModule<K>,
    pub projection: ModuleMap<K>,
    pub exact: bool,
}

pub fn universal_pushforward<K: Field>(m: &FPModule<K>) -> Result<UniversalPushforward<K>> {
    if !torsion_split(m)?.is_torsion_free {
        return Err(Error::Input("the universal pushforward needs a torsion-free module".into()));
    }
    let embedding = m.evaluation_map()?;
    let (cokernel, projection) = embedding.cokernel()?;
    let mut exact = embedding.is_injective()? && projection.is_surjective()? && embedding.then(&projection)?.is_zero()?;
    if exact {
        let (_, kincl) = projection.kernel()?;
        for c in kincl.matrix().columns() {
            if !embedding.image_contains(&c)? {
                exact = false;
                break;
            }
        }
    }
    Ok(UniversalPushforward { embedding, cokernel, projection, exact })
}

/// Samples used for "for every `e'` and `i`" claims.
pub const SAMPLED_E: [u32; 2] = [1, 2];
pub const SAMPLED_I: [usize; 2] = [1, 2];

fn sample_note() -> String {
    format!("quantifiers over e' and i are sampled on e' ∈ {SAMPLED_E:?}, i ∈ {SAMPLED_I:?}")
}

/// Torsion-freeness of `F^e(M)` against "torsion-free of finite
/// projective dimension", each side computed on its own.
pub fn verify_thm_3_5<K: Field>(m: &FPModule<K>, e: u32) -> Result<Certificate> {
    let ring = m.ring();
    let mut cert = Certificate::new("thm3.5", ring.descriptor(), Some(m.to_text()));
    cert.trust(ring.trusted_assumptions());
    if ring.field().characteristic() == 0 {
        return Ok(cert.inapplicable("characteristic 0"));
    }
    if !ring.is_complete_intersection() {
        return Ok(cert.inapplicable("R is not declared a complete intersection"));
    }
    if !ring.is_reduced() || ring.minimal_prime_bases().is_none() {
        return Ok(cert.inapplicable("generic freeness is decided over reduced rings with known minimal primes"));
    }
    let ranks = m.rank()?;
    cert.witness("ranks", "per minimal prime", format!("{:?}", ranks.per_prime));
    cert.note("M is generically free: R is reduced, so each localization at a minimal prime is a field");
    cert.witness("number", "e", e.to_string());

    let fm = frobenius_functor(m, e)?;
    let fsplit = torsion_split(&fm)?;
    let side1 = fsplit.is_torsion_free;
    if let Some(g) = fsplit.torsion_generators().first() {
        cert.witness("element", "torsion in F^e(M)", g.to_text(ring.names()));
    }
    let tm = torsion_split(m)?.is_torsion_free;
    let p = pd(m)?;
    let side2 = tm && p.is_finite();
    cert.witness("pd", "pd M", p.to_string());
    cert.check("biconditional", "F^e(M) torsion-free iff M torsion-free of finite pd", side1 == side2, format!("(1) = {side1}, (2) = {side2}"));

    if side2 {
        cert.note(sample_note());
        for &e2 in &SAMPLED_E {
            for &i in &SAMPLED_I {
                let z = tor_frobenius(m, e2, i)?.is_zero()?;
                cert.check(&format!("cor3.6.e{e2}.i{i}"), format!("Tor_{i}(M, ^φ^{e2} R) = 0"), z, "");
            }
        }
        let up = universal_pushforward(m)?;
        let pn = pd(&up.cokernel)?;
        cert.check("pushforward", "universal pushforward is exact with N of finite pd", up.exact && pn.is_finite(), format!("pd N = {pn}"));
    } else if !p.is_finite() {
        for &e2 in &SAMPLED_E {
            for &i in &SAMPLED_I {
                let nz = !tor_frobenius(m, e2, i)?.is_zero()?;
                cert.check(&format!("am.e{e2}.i{i}"), format!("Tor_{i}(M, ^φ^{e2} R) ≠ 0 for infinite pd"), nz, "");
            }
        }
    }
    Ok(cert)
}

/// Graded regularity: eliminate variables occurring alone in a defining
/// polynomial of their own degree; regular iff nothing is left.
pub fn is_regular_by_linear_forms<K: Field>(ring: &RingContext<K>) -> bool {
    let w = ring.weights();
    let mut gens: Vec<Polynomial<K>> = ring.defining_ideal().to_vec();
    loop {
        gens.retain(|g| !g.is_zero());
        let mut found = None;
        'search: for (k, g) in gens.iter().enumerate() {
            let Some(d) = g.degree(w) else { continue };
            for i in 0..ring.nvars() {
                if d != w[i] as u64 {
                    continue;
                }
                let c = g.coefficient(&Monomial::variable(ring.nvars(), i, 1));
                if !ring.field().is_zero(&c) {
                    found = Some((k, i, c));
                    break 'search;
                }
            }
        }
        let Some((k, i, c)) = found else { break };
        let g = gens.remove(k);
        let xi = ring.variable(i);
        let rest = &g - &xi.scale(&c);
        let image = rest.scale(&ring.field().neg(&ring.field().inv(&c)));
        let mut images = ring.variables();
        images[i] = image;
        gens = gens.iter().map(|p| p.substitute(&images)).collect();
    }
    gens.is_empty()
}

/// Compares torsion in `F^e(^{φ^{e'}}M)` with the regularity of `R`,
/// decided both by linear forms and by finiteness of `pd k`.
pub fn regularity_probe<K: Field>(m: &FPModule<K>, e: u32, e2: u32) -> Result<Certificate> {
    let ring = m.ring();
    let mut cert = Certificate::new("cor3.7", ring.descriptor(), Some(m.to_text()));
    cert.trust(ring.trusted_assumptions());
    if ring.field().characteristic() == 0 {
        return Ok(cert.inapplicable("characteristic 0"));
    }
    if !ring.is_complete_intersection() || !ring.is_reduced() || ring.minimal_prime_bases().is_none() {
        return Ok(cert.inapplicable("R must be a reduced complete intersection with known minimal primes"));
    }
    cert.note("F-finite: the coefficient field is a prime field");
    let by_forms = is_regular_by_linear_forms(ring);
    let pk = pd(&FPModule::residue_field(ring))?;
    cert.check("decisions", "linear-forms criterion agrees with finiteness of pd k", by_forms == pk.is_finite(), format!("pd k = {pk}"));
    let regular = by_forms;
    cert.witness("bool", "regular", regular.to_string());
    let phi = restrict_scalars(m, e2)?;
    cert.check("restriction", "^φ M passes the Hilbert and action checks", phi.hilbert_check(12)? && phi.action_check()?, "");
    let f = frobenius_functor(&phi.module, e)?;
    let split = torsion_split(&f)?;
    if let Some(g) = split.torsion_generators().first() {
        cert.witness("element", "torsion in F^e(^φM)", g.to_text(ring.names()));
    }
    let m_tf = torsion_split(m)?.is_torsion_free;
    if m.is_zero()? {
        cert.note("M = 0; no claim");
    } else if regular {
        if m_tf {
            cert.check("regular", "R regular and M torsion-free ⟹ F^e(^φM) torsion-free", split.is_torsion_free, "");
        } else {
            cert.note("M has torsion; no claim over a regular ring");
        }
    } else {
        cert.check("singular", "R not regular ⟹ F^e(^φM) has torsion", !split.is_torsion_free, "");
    }
    Ok(cert)
}

/// Instance check of "R̄ ⊗ M torsion-free ⟹ M free" for a user-supplied
/// `R̄` whose generator `unit` is the identity.
pub fn integral_closure_check<K: Field>(rbar: &FPModule<K>, unit: usize, m: &FPModule<K>) -> Result<Certificate> {
    let ring = m.ring();
    let mut cert = Certificate::new("thm3.2", ring.descriptor(), Some(m.to_text()));
    cert.trust(ring.trusted_assumptions());
    cert.trust([format!("{} is the integral closure of a one-dimensional analytically unramified ring (declared)", rbar.to_text())]);
    if rbar.ring() != ring || unit >= rbar.num_generators() {
        return Ok(cert.inapplicable("R̄ is not supplied over this ring with a unit generator"));
    }
    if !ring.is_reduced() || ring.minimal_prime_bases().is_none() {
        return Ok(cert.inapplicable("torsion needs a reduced ring with known minimal primes"));
    }
    cert.check("rbar", "R̄ is torsion-free", torsion_split(rbar)?.is_torsion_free, "");
    let ann = rbar.annihilator(Some(&rbar.generator(unit)))?;
    cert.check("unit", "R ⟶ R̄, 1 ↦ unit, is injective", ann.is_zero(), "");
    let split = torsion_split(&rbar.tensor(m)?)?;
    if split.is_torsion_free {
        cert.check("implication", "R̄ ⊗ M torsion-free ⟹ M free", m.is_free()?, "");
    } else {
        cert.note("R̄ ⊗ M has torsion; the implication holds vacuously");
        if let Some(g) = split.torsion_generators().first() {
            cert.witness("element", "torsion in R̄ ⊗ M", g.to_text(ring.names()));
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::Verdict;
    use crate::field::{PrimeField, Rationals};
    use crate::ring::RingFlags;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn node2() -> RingContext<PrimeField> {
        let flags = RingFlags { reduced: true, complete_intersection: true };
        RingContext::quotient(f2(), &["x", "y"], &["x*y"], &[&["x"], &["y"]], flags).unwrap()
    }

    #[test]
    fn functor_is_entrywise_power() {
        let r = node2();
        let m = FPModule::cyclic_text(&r, &["x"]).unwrap();
        let f = frobenius_functor(&m, 1).unwrap();
        assert_eq!(f.to_text(), "coker [[x^2]]");
        let q = RingContext::polynomial_ring(Rationals, &["x"]).unwrap();
        assert!(matches!(frobenius_functor(&FPModule::free_rank(&q, 1), 1), Err(Error::Unsupported(_))));
        let f3 = PrimeField::new(3).unwrap();
        let flags = RingFlags { reduced: true, complete_intersection: true };
        let h = RingContext::quotient(f3, &["x", "y", "z"], &["x^2 + y^2 + z^2"], &[], flags).unwrap();
        let k = FPModule::coker_text(&h, &[&["y"], &["z"]]).unwrap();
        assert_eq!(frobenius_functor(&k, 1).unwrap().to_text(), "coker [[y^3], [z^3]]");
    }

    #[test]
    fn tor_frobenius_on_the_node() {
        let r = node2();
        let m = FPModule::cyclic_text(&r, &["x"]).unwrap();
        assert!(!tor_frobenius(&m, 1, 1).unwrap().is_zero().unwrap());
        let free = FPModule::free_rank(&r, 1);
        assert!(tor_frobenius(&free, 1, 1).unwrap().is_zero().unwrap());
        let p = RingContext::polynomial_ring(f2(), &["x", "y"]).unwrap();
        let k = FPModule::coker_text(&p, &[&["x"], &["y"]]).unwrap();
        assert!(tor_frobenius(&k, 1, 1).unwrap().is_zero().unwrap());
    }

    #[test]
    fn restriction_examples() {
        let line = RingContext::polynomial_ring(f2(), &["x"]).unwrap();
        let s = restrict_scalars(&FPModule::free_rank(&line, 1), 1).unwrap();
        assert!(s.module.is_free().unwrap());
        assert_eq!(s.module.nu().unwrap(), 2);
        let plane = RingContext::polynomial_ring(f2(), &["x", "y"]).unwrap();
        let s = restrict_scalars(&FPModule::free_rank(&plane, 1), 1).unwrap();
        assert!(s.module.is_free().unwrap());
        assert_eq!(s.module.nu().unwrap(), 4);
        let s = restrict_scalars(&FPModule::free_rank(&node2(), 1), 1).unwrap();
        assert!(!s.module.is_free().unwrap());
        assert_eq!(s.module.nu().unwrap(), 3);
        assert!(s.hilbert_check(12).unwrap());
        assert!(s.action_check().unwrap());
    }

    #[test]
    fn pushforward_examples() {
        let q = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let up = universal_pushforward(&FPModule::free_rank(&q, 1)).unwrap();
        assert!(up.exact && up.cokernel.is_zero().unwrap());
        let m = FPModule::coker_text(&q, &[&["x"], &["y"]]).unwrap();
        let up = universal_pushforward(&m).unwrap();
        assert!(up.exact);
        assert_eq!(up.cokernel.nu().unwrap(), 1);
        let k = FPModule::residue_field(&q);
        assert!(matches!(universal_pushforward(&k), Err(Error::Input(_))));
        let r = node2();
        let up = universal_pushforward(&FPModule::cyclic_text(&r, &["x"]).unwrap()).unwrap();
        assert!(up.exact);
        let ann = up.cokernel.annihilator(None).unwrap();
        assert!(ann.equals(&r.ideal(vec![r.parse("y").unwrap()]).unwrap()).unwrap());
    }

    #[test]
    fn linear_forms() {
        assert!(!is_regular_by_linear_forms(&node2()));
        let r = RingContext::quotient(f2(), &["x", "y", "z"], &["x + y", "y^2 + z^2"], &[], RingFlags::default()).unwrap();
        assert!(!is_regular_by_linear_forms(&r));
        let r = RingContext::quotient(f2(), &["x", "y", "z"], &["x + y", "y*z + x*z + z^2"], &[], RingFlags::default()).unwrap();
        assert!(!is_regular_by_linear_forms(&r));
        let r = RingContext::quotient(f2(), &["x", "y", "z"], &["x + y", "y*z + x*z"], &[], RingFlags::default()).unwrap();
        assert!(is_regular_by_linear_forms(&r));
    }

    #[test]
    fn thm_3_5_negative_instance() {
        let r = node2();
        let c = verify_thm_3_5(&FPModule::cyclic_text(&r, &["x"]).unwrap(), 1).unwrap();
        assert!(c.passed(), "{}", c.to_json());
        let q = RingContext::polynomial_ring(Rationals, &["x"]).unwrap();
        assert_eq!(verify_thm_3_5(&FPModule::free_rank(&q, 1), 1).unwrap().verdict, Verdict::Inapplicable);
    }

    #[test]
    fn thm_3_5_positive_instance() {
        let flags = RingFlags { reduced: true, complete_intersection: true };
        let r = RingContext::quotient(f2(), &["x", "y", "z"], &["x^3 + y^3 + z^3"], &[&["x^3 + y^3 + z^3"]], flags).unwrap();
        let m = crate::torsion::koszul_syzygy_module(&r, &[r.parse("y").unwrap(), r.parse("z").unwrap()]).unwrap();
        let c = verify_thm_3_5(&m.module, 1).unwrap();
        assert!(c.passed(), "{}", c.to_json());
        assert!(c.subclaim("cor3.6.e2.i2").unwrap().passed);
    }

    #[test]
    fn cusp_closure() {
        let f5 = PrimeField::new(5).unwrap();
        let names = vec!["a".to_string(), "b".to_string()];
        let cusp = crate::poly::expr::parse_poly_expr("a^3 - b^2").unwrap().eval(f5, &names).unwrap();
        let flags = RingFlags { reduced: true, complete_intersection: true };
        let r = RingContext::new(f5, names, vec![cusp.clone()], Some(vec![2, 3]), vec![vec![cusp]], flags, Default::default()).unwrap();
        let p = |s: &str| r.parse(s).unwrap();
        let rbar = FPModule::coker_with_degrees(&r, vec![vec![p("b"), p("a^2")], vec![p("-a"), p("-b")]], vec![0, 1]).unwrap();
        let c = integral_closure_check(&rbar, 0, &FPModule::free_rank(&r, 1)).unwrap();
        assert!(c.passed(), "{}", c.to_json());
        let (mm, _) = FPModule::free_rank(&r, 1).ideal_times(&r.max_ideal()).unwrap();
        let c = integral_closure_check(&rbar, 0, &mm).unwrap();
        assert!(c.passed(), "{}", c.to_json());
        assert!(c.witnesses.iter().any(|w| w.label == "torsion in R̄ ⊗ M"));
    }

    #[test]
    fn probe_examples() {
        let p = RingContext::polynomial_ring(f2(), &["x", "y"]).unwrap();
        let m = FPModule::coker_text(&p, &[&["x"], &["y"]]).unwrap();
        assert!(regularity_probe(&m, 1, 1).unwrap().passed());
        let r = node2();
        let c = regularity_probe(&FPModule::free_rank(&r, 1), 1, 1).unwrap();
        assert!(c.passed(), "{}", c.to_json());
    }
}
