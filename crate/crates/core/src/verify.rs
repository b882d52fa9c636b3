//! Instance verifiers for the tensor-power results and the maximal-ideal
//! carrier. Each returns a [`Certificate`] whose verdict is the conjunction
//! of its recorded sub-claims.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{free_resolution, pd, subsets, tor, ProjectiveDimension};
use crate::module::{FPModule, ModuleElement};
use crate::poly::free::FreeElement;
use crate::poly::matrix::Matrix;
use crate::poly::polynomial::Polynomial;
use crate::ring::{Ideal, RingContext};
use crate::torsion::{find_nonzerodivisor, koszul_syzygy_module, tau_in, torsion_split, universal_module};

fn seq_text<K: Field>(ring: &RingContext<K>, seq: &[Polynomial<K>]) -> String {
    let s: Vec<String> = seq.iter().map(|p| p.to_text(ring.names())).collect();
    format!("({})", s.join(", "))
}

/// `r_j · τ(m̲) = 0` in `⊗ᵈM` for every `j`, given `Σ r_i m_i = 0`.
pub fn check_prop_2_2<K: Field>(m: &FPModule<K>, elems: &[ModuleElement<K>], coeffs: &[Polynomial<K>]) -> Result<Certificate> {
    let ring = m.ring();
    if elems.len() != coeffs.len() || elems.is_empty() {
        return Err(Error::Dimension("relation needs as many coefficients as elements".into()));
    }
    let mut sum = m.zero_element();
    for (e, r) in elems.iter().zip(coeffs) {
        sum = sum.add(&e.scale(r));
    }
    if !sum.is_zero()? {
        return Err(Error::Input("the relation Σ r_i m_i = 0 does not hold".into()));
    }
    let power = m.tensor_power(elems.len())?;
    let t = tau_in(&power, elems)?;
    let mut cert = Certificate::new("prop2.2", ring.descriptor(), Some(m.to_text()));
    cert.witness("element", "tau", t.to_text());
    for (j, r) in coeffs.iter().enumerate() {
        let killed = t.scale(r).is_zero()?;
        cert.check(&format!("r{}", j + 1), format!("{} · τ = 0", r.to_text(ring.names())), killed, "");
    }
    Ok(cert)
}

/// Specialises the universal module along `x_i ↦ r_i` and checks that the
/// map is well defined on `⊗ᵈ` and carries `τ(u̲)` to `τ(m̲)`.
fn functoriality<K: Field>(ring: &RingContext<K>, seq: &[Polynomial<K>], power: &FPModule<K>, t: &ModuleElement<K>) -> Result<(bool, String)> {
    let d = seq.len();
    let u = universal_module(ring.field(), d)?;
    let upow = u.module.tensor_power(d)?;
    let ut = tau_in(&upow, &u.generators())?;
    let push = |v: &FreeElement<K>| FreeElement::from_components(v.components().iter().map(|p| ring.reduce(&p.substitute(seq))).collect());
    for rel in upow.presentation().columns() {
        if !power.is_zero_vector(&push(&rel))? {
            return Ok((false, "a relation of the universal tensor power does not specialise to zero".into()));
        }
    }
    let image = ModuleElement::new(power, push(&ut.coords))?;
    let same = image.equals(t)?;
    Ok((same, format!("τ(u) = {} over {}", ut.to_text(), u.module.ring().descriptor())))
}

pub fn verify_thm_2_8<K: Field>(ring: &RingContext<K>, seq: &[Polynomial<K>]) -> Result<Certificate> {
    let ksm = koszul_syzygy_module(ring, seq)?;
    let m = &ksm.module;
    let d = seq.len();
    let rs = ring.ideal(seq.to_vec())?;
    let mut cert = Certificate::new("thm2.8", ring.descriptor(), Some(m.to_text()));
    cert.trust(ring.trusted_assumptions());
    cert.witness("sequence", "r", seq_text(ring, seq));

    let mut powers = vec![FPModule::free_rank(ring, 1), m.clone()];
    for n in 2..=d {
        let next = powers[n - 1].tensor(m)?;
        powers.push(next);
    }

    // (a)
    for (n, p) in powers.iter().enumerate().take(d).skip(1) {
        let tf = torsion_split(p)?.is_torsion_free;
        cert.check(&format!("a.n{n}"), format!("⊗^{n} M is torsion-free"), tf, "");
    }

    // (b)
    let top = &powers[d];
    let t = tau_in(top, &ksm.generators())?;
    cert.witness("element", "tau", t.to_text());
    let ann = top.annihilator(Some(&t))?;
    cert.witness("ideal", "ann(tau)", ann.to_text());
    let down = ann.contains_ideal(&rs)?;
    let up = rs.contains_ideal(&ann)?;
    cert.check("b.contains", "(r) ⊆ ann τ", down, "");
    cert.check("b.contained", "ann τ ⊆ (r)", up, "");

    // (c)
    let split = torsion_split(top)?;
    let nu_t = split.torsion.nu()?;
    let ann_t = split.torsion.annihilator(None)?;
    cert.witness("ideal", "ann t(⊗^d M)", ann_t.to_text());
    cert.check("c.nonzero", format!("⊗^{d} M has torsion"), !split.is_torsion_free, "");
    cert.check("c.cyclic", "t(⊗^d M) is cyclic", nu_t == 1, format!("ν = {nu_t}"));
    cert.check("c.annihilator", "ann t(⊗^d M) = (r)", ann_t.equals(&rs)?, "");
    let tau_torsion = split.inclusion.image_contains(&t.coords)?;
    cert.check("c.generator", "τ lies in t(⊗^d M)", tau_torsion, "");
    let w = &split.torsion_free;
    let w_tf = torsion_split(w)?.is_torsion_free;
    cert.check("c.complement", "W = tf(⊗^d M) is torsion-free", w_tf, format!("ν(W) = {}", w.nu()?));
    cert.check("c.counts", "ν(⊗^d M) = 1 + ν(W)", top.nu()? == 1 + w.nu()?, "");

    // (d)
    for n in 1..=d {
        let p = pd(&powers[n])?;
        cert.check(&format!("d.pd{n}"), format!("pd ⊗^{n} M = {n}"), p == ProjectiveDimension::Finite(n), format!("pd = {p}"));
        if n >= 2 {
            for i in 1..=2 {
                let z = tor(m, &powers[n - 1], i)?.is_zero()?;
                cert.check(&format!("d.tor{n}.{i}"), format!("Tor_{i}(M, ⊗^{} M) = 0", n - 1), z, "");
            }
        }
    }
    let res = free_resolution(top, d + 1)?;
    cert.witness("betti", "⊗^d M", res.betti_table().render());

    // (e)
    let outside = !t.in_max_ideal_times_module()?;
    cert.check("e", "τ ∉ m ⊗^d M", outside, "");

    let (func, detail) = functoriality(ring, seq, top, &t)?;
    cert.check("functoriality", "⊗^d f maps τ(u) to τ(m)", func, detail);
    Ok(cert)
}

/// Which hypothesis of the tensor-power torsion theorem is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Thm210Case {
    /// `I(M)` contains a non-zerodivisor; `b = ν(M)`.
    PresentationIdeal,
    /// `M` has rank; `b = rank + 1`.
    Rank,
}

/// Bound on the number of subsets tried when choosing `m_1..m_b`.
pub const SUBSET_SEARCH_LIMIT: usize = 256;

/// Ideal of all coefficients in relations among the chosen generators.
fn relation_coefficients<K: Field>(m: &FPModule<K>, chosen: &[ModuleElement<K>]) -> Result<Ideal<K>> {
    let ring = m.ring();
    let cols: Vec<FreeElement<K>> = chosen.iter().map(|e| e.coords.clone()).collect();
    let degs = chosen.iter().map(|e| e.degree().unwrap_or(0)).collect();
    let g = Matrix::from_columns(ring.field(), ring.nvars(), m.generator_degrees().to_vec(), &cols, degs);
    let syz = ring.syzygies(&g.hconcat(m.presentation()))?;
    let mut gens = Vec::new();
    for j in 0..syz.cols() {
        for i in 0..chosen.len() {
            if !syz.get(i, j).is_zero() {
                gens.push(syz.get(i, j).clone());
            }
        }
    }
    ring.ideal(gens)
}

pub fn verify_thm_2_10<K: Field>(m: &FPModule<K>, n: &FPModule<K>, case: Thm210Case) -> Result<Certificate> {
    let ring = m.ring();
    let claim = match case {
        Thm210Case::PresentationIdeal => "thm2.10-case1",
        Thm210Case::Rank => "thm2.10-case2",
    };
    let mut cert = Certificate::new(claim, ring.descriptor(), Some(m.to_text()));
    cert.trust(ring.trusted_assumptions());
    cert.witness("module", "N", n.to_text());
    if m.is_free()? {
        return Ok(cert.inapplicable("M is free"));
    }
    if n.is_zero()? {
        return Ok(cert.inapplicable("N is zero"));
    }
    let mp = m.minimal_presentation()?;
    let min_gens: Vec<ModuleElement<K>> = mp.kept.iter().map(|&k| m.generator(k)).collect();
    let (b, chosen, killer) = match case {
        Thm210Case::PresentationIdeal => {
            let (im, nzd) = m.presentation_ideal()?;
            cert.witness("ideal", "I(M)", im.to_text());
            if !nzd {
                return Ok(cert.inapplicable("I(M) consists of zerodivisors"));
            }
            let f = find_nonzerodivisor(&im)?;
            let Some(f) = f else {
                return Ok(cert.inapplicable("no homogeneous non-zerodivisor found in I(M) by the search"));
            };
            (mp.nu, (0..mp.nu).collect::<Vec<_>>(), f)
        }
        Thm210Case::Rank => {
            let info = m.rank()?;
            let Some(rk) = info.rank else {
                return Ok(cert.inapplicable(format!("M has no rank: per-prime ranks {:?}", info.per_prime)));
            };
            let b = rk + 1;
            cert.witness("number", "rank", rk.to_string());
            if b > mp.nu {
                return Ok(cert.inapplicable("fewer minimal generators than rank + 1"));
            }
            let mut found = None;
            for s in subsets(mp.nu, b).into_iter().take(SUBSET_SEARCH_LIMIT) {
                let sel: Vec<ModuleElement<K>> = s.iter().map(|&i| min_gens[i].clone()).collect();
                let j = relation_coefficients(m, &sel)?;
                if let Some(f) = find_nonzerodivisor(&j)? {
                    found = Some((s, f));
                    break;
                }
            }
            let Some((s, f)) = found else {
                return Ok(cert.inapplicable("no generator subset with a non-zerodivisor relation coefficient within the search bound"));
            };
            (b, s, f)
        }
    };
    cert.witness("number", "b", b.to_string());
    cert.witness("subset", "m", format!("{chosen:?}"));
    cert.witness("polynomial", "non-zerodivisor", killer.to_text(ring.names()));
    let sel: Vec<ModuleElement<K>> = chosen.iter().map(|&i| min_gens[i].clone()).collect();
    let power = m.tensor_power(b)?;
    let t = tau_in(&power, &sel)?;
    let nmp = n.minimal_presentation()?;
    let x = n.generator(nmp.kept[0]);
    let target = power.tensor(n)?;
    let w = t.tensor(&x, &target)?;
    cert.witness("element", "tau ⊗ x", w.to_text());

    let nzd = crate::torsion::is_nonzerodivisor(ring, &killer)?;
    cert.check("nzd", "the annihilating element is a non-zerodivisor", nzd, "");
    cert.check("killed", "it kills τ ⊗ x", w.scale(&killer).is_zero()?, "");
    cert.check("nonvanishing", "τ ⊗ x ∉ m((⊗^b M) ⊗ N)", !w.in_max_ideal_times_module()?, "");
    let split = torsion_split(&target)?;
    cert.check("direct", "t((⊗^b M) ⊗ N) ≠ 0 by direct computation", !split.is_torsion_free, format!("ν(t) = {}", split.torsion.nu()?));
    cert.check("nonvanishing-tau", "τ ∉ m ⊗^b M", !t.in_max_ideal_times_module()?, "");
    Ok(cert)
}

/// Over a ring of positive depth: `Tor_1(k, M) = 0` iff `M` is free, and a
/// non-free `M` gives torsion in `m ⊗ M`.
pub fn carrier_check_maximal_ideal<K: Field>(m: &FPModule<K>) -> Result<Certificate> {
    let ring = m.ring();
    let mut cert = Certificate::new("carrier-max-ideal", ring.descriptor(), Some(m.to_text()));
    cert.trust(ring.trusted_assumptions());
    let depth = ring.depth()?;
    if depth == 0 {
        return Ok(cert.inapplicable("R has depth 0"));
    }
    let k = FPModule::residue_field(ring);
    let t1 = tor(&k, m, 1)?;
    let free = m.is_free()?;
    let t1_zero = t1.is_zero()?;
    cert.witness("number", "ν(Tor_1(k, M))", t1.nu()?.to_string());
    cert.check("tor1", "Tor_1(k, M) = 0 iff M is free", t1_zero == free, format!("free = {free}"));
    let (mm, _) = FPModule::free_rank(ring, 1).ideal_times(&ring.max_ideal())?;
    let prod = mm.tensor(m)?;
    let split = torsion_split(&prod)?;
    if free {
        cert.note("M is free; no torsion claim");
        cert.check("torsion", "m ⊗ M is torsion-free for free M", split.is_torsion_free, "");
    } else {
        cert.check("torsion", "t(m ⊗ M) ≠ 0", !split.is_torsion_free, format!("ν(t) = {}", split.torsion.nu()?));
        if let Some(g) = split.torsion_generators().first() {
            cert.witness("element", "torsion generator", g.to_text(ring.names()));
        }
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationRow {
    pub module: String,
    pub nu: usize,
    /// Least `n ≤ cap` with `t(⊗ⁿM) ≠ 0`.
    pub least_n: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationReport {
    pub ring: String,
    pub seed: u64,
    pub cap: usize,
    pub rows: Vec<ExplorationRow>,
    pub trusted_assumptions: Vec<String>,
}

fn random_linear_form<K: Field>(ring: &RingContext<K>, rng: &mut ChaCha8Rng) -> Polynomial<K> {
    let f = ring.field();
    loop {
        let mut p = ring.zero();
        for v in ring.variables() {
            let c: i64 = rng.gen_range(-2..=2);
            p = &p + &v.scale(&f.from_i64(c));
        }
        let p = ring.reduce(&p);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random non-free modules over a domain (cokernels of 2×1 and 2×2 matrices
/// of linear forms) and the least tensor power with torsion. Exploratory.
pub fn explore_question_2_12<K: Field>(ring: &RingContext<K>, panel: usize, seed: u64, cap: usize) -> Result<ExplorationReport> {
    if !ring.is_domain() {
        return Err(Error::Input(format!("{} is not declared a domain", ring.descriptor())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut attempts = 0;
    while rows.len() < panel && attempts < 20 * panel.max(1) {
        attempts += 1;
        let cols = rng.gen_range(1..=2);
        let entries: Vec<Vec<Polynomial<K>>> = (0..2).map(|_| (0..cols).map(|_| random_linear_form(ring, &mut rng)).collect()).collect();
        let m = FPModule::coker(ring, entries)?;
        if m.is_free()? || m.is_zero()? {
            continue;
        }
        let mut least = None;
        let mut p = FPModule::free_rank(ring, 1);
        for n in 1..=cap {
            p = p.tensor(&m)?;
            if !torsion_split(&p)?.is_torsion_free {
                least = Some(n);
                break;
            }
        }
        rows.push(ExplorationRow { module: m.to_text(), nu: m.nu()?, least_n: least });
    }
    Ok(ExplorationReport { ring: ring.descriptor(), seed, cap, rows, trusted_assumptions: ring.trusted_assumptions() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::Verdict;
    use crate::field::{PrimeField, Rationals};
    use crate::ring::RingFlags;

    fn node() -> RingContext<PrimeField> {
        let flags = RingFlags { reduced: true, complete_intersection: true };
        RingContext::quotient(PrimeField::new(5).unwrap(), &["x", "y"], &["x*y"], &[&["x"], &["y"]], flags).unwrap()
    }

    #[test]
    fn thm_2_8_in_two_variables() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let c = verify_thm_2_8(&r, &r.variables()).unwrap();
        assert!(c.passed(), "{}", c.to_json());
        let c = verify_thm_2_8(&r, &[r.parse("x^2").unwrap(), r.parse("y^3").unwrap()]).unwrap();
        assert!(c.passed(), "{}", c.to_json());
    }

    #[test]
    fn thm_2_8_in_three_variables() {
        let r = RingContext::polynomial_ring(PrimeField::new(5).unwrap(), &["x", "y", "z"]).unwrap();
        let c = verify_thm_2_8(&r, &r.variables()).unwrap();
        assert!(c.passed(), "{}", c.to_json());
    }

    #[test]
    fn thm_2_8_rejects_non_regular() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let x = r.parse("x").unwrap();
        assert!(matches!(verify_thm_2_8(&r, &[x.clone(), x]), Err(Error::Input(_))));
    }

    #[test]
    fn prop_2_2_checks_relation() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let m = FPModule::coker_text(&r, &[&["x"], &["y"]]).unwrap();
        let c = check_prop_2_2(&m, &m.generators(), &r.variables()).unwrap();
        assert!(c.passed());
        let bad = [r.parse("y").unwrap(), r.parse("x").unwrap()];
        assert!(matches!(check_prop_2_2(&m, &m.generators(), &bad), Err(Error::Input(_))));
    }

    #[test]
    fn thm_2_10_cases() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let m = FPModule::coker_text(&r, &[&["x"], &["y"]]).unwrap();
        let c = verify_thm_2_10(&m, &FPModule::free_rank(&r, 1), Thm210Case::PresentationIdeal).unwrap();
        assert!(c.passed(), "{}", c.to_json());
        let n = FPModule::cyclic_text(&r, &["x"]).unwrap();
        let c = verify_thm_2_10(&m, &n, Thm210Case::Rank).unwrap();
        assert!(c.passed(), "{}", c.to_json());
        let nd = node();
        let rx = FPModule::cyclic_text(&nd, &["x"]).unwrap();
        let c = verify_thm_2_10(&rx, &FPModule::free_rank(&nd, 1), Thm210Case::PresentationIdeal).unwrap();
        assert_eq!(c.verdict, Verdict::Inapplicable);
    }

    #[test]
    fn carrier_examples() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let c = carrier_check_maximal_ideal(&FPModule::free_rank(&r, 1)).unwrap();
        assert!(c.passed(), "{}", c.to_json());
        let c = carrier_check_maximal_ideal(&FPModule::cyclic_text(&r, &["x"]).unwrap()).unwrap();
        assert!(c.passed(), "{}", c.to_json());
        let nd = node();
        let c = carrier_check_maximal_ideal(&FPModule::cyclic_text(&nd, &["x"]).unwrap()).unwrap();
        assert!(c.passed(), "{}", c.to_json());
    }

    #[test]
    fn exploration_on_the_plane() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let rep = explore_question_2_12(&r, 4, 7, 3).unwrap();
        assert_eq!(rep.rows.len(), 4);
        assert!(rep.rows.iter().all(|row| row.least_n.is_some()));
        assert_eq!(rep, explore_question_2_12(&r, 4, 7, 3).unwrap());
        assert!(explore_question_2_12(&node(), 1, 0, 2).is_err());
    }
}
