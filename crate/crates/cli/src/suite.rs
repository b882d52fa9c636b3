//! The built-in instance panel behind `torsionlab verify-suite paper`.
//!
//! Each check returns a [`CheckResult`]; a check passes only if its
//! computation succeeds and every expected value matches exactly.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torsionlab_core::field::Field;
use torsionlab_core::frobenius::{frobenius_functor, is_regular_by_linear_forms, regularity_probe, tor_frobenius, verify_thm_3_5};
use torsionlab_core::homology::{koszul_depth, pd, tor};
use torsionlab_core::poly::free::FreeElement;
use torsionlab_core::poly::monomial::monomials_of_degree;
use torsionlab_core::torsion::{is_nonzerodivisor, koszul_syzygy_module, torsion_split};
use torsionlab_core::verify::{check_prop_2_2, verify_thm_2_10, verify_thm_2_8, Thm210Case};
use torsionlab_core::{
    FPModule, Limits, Matrix, ModuleElement, Polynomial, PrimeField, Rationals, Result, RingContext, RingFlags, Verdict,
};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2}: {} ({} ms){}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.millis,
            if self.detail.is_empty() { String::new() } else { format!(" - {}", self.detail) }
        )
    }
}

/// Collects named sub-results of one criterion.
#[derive(Default)]
struct Tally {
    failures: Vec<String>,
    count: usize,
}

impl Tally {
    fn check(&mut self, label: impl Into<String>, ok: bool) {
        self.count += 1;
        if !ok {
            self.failures.push(label.into());
        }
    }

    fn finish(self) -> (bool, String) {
        if self.failures.is_empty() {
            (true, format!("{} checks", self.count))
        } else {
            (false, format!("failed: {}", self.failures.join("; ")))
        }
    }
}

fn run(id: u32, title: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CheckResult { id, title, passed, detail, millis: start.elapsed().as_millis() }
}

pub fn f(p: u32) -> PrimeField {
    PrimeField::new(p).expect("small primes")
}

fn flags(reduced: bool, ci: bool) -> RingFlags {
    RingFlags { reduced, complete_intersection: ci }
}

/// `k[x,y]/(xy)` with its two minimal primes.
pub fn node<K: Field>(field: K) -> Result<RingContext<K>> {
    RingContext::quotient(field, &["x", "y"], &["x*y"], &[&["x"], &["y"]], flags(true, true))
}

fn polys<K: Field>(r: &RingContext<K>, s: &[&str]) -> Result<Vec<Polynomial<K>>> {
    s.iter().map(|t| r.parse(t)).collect()
}

pub fn criterion_1() -> CheckResult {
    run(1, "tensor powers of Koszul syzygy modules", || {
        let mut t = Tally::default();
        let q2 = RingContext::polynomial_ring(Rationals, &["x", "y"])?;
        let f3 = RingContext::polynomial_ring(f(5), &["x", "y", "z"])?;
        let cases: Vec<(String, Result<torsionlab_core::Certificate>)> = vec![
            ("d=2 QQ[x,y]".into(), verify_thm_2_8(&q2, &polys(&q2, &["x", "y"])?)),
            ("d=3 GF(5)[x,y,z]".into(), verify_thm_2_8(&f3, &polys(&f3, &["x", "y", "z"])?)),
            ("(x^2,y^3) QQ[x,y]".into(), verify_thm_2_8(&q2, &polys(&q2, &["x^2", "y^3"])?)),
        ];
        for (label, c) in cases {
            let c = c?;
            t.check(label.clone(), c.verdict == Verdict::Pass);
            for s in &c.subclaims {
                t.check(format!("{label} {}", s.id), s.passed);
            }
        }
        Ok(t.finish())
    })
}

fn random_form<K: Field>(ring: &RingContext<K>, deg: u64, rng: &mut ChaCha8Rng) -> Polynomial<K> {
    let fld = ring.field();
    let terms = monomials_of_degree(ring.weights(), deg).into_iter().map(|m| (m, fld.from_i64(rng.gen_range(-2..=2))));
    ring.reduce(&Polynomial::from_terms(fld, ring.nvars(), terms))
}

/// A module with two generators in degree 0 whose presentation contains
/// the planted relation `r_1 m_1 + r_2 m_2` and one random column.
pub fn planted_instance<K: Field>(
    ring: &RingContext<K>,
    rng: &mut ChaCha8Rng,
) -> Result<(FPModule<K>, Vec<ModuleElement<K>>, Vec<Polynomial<K>>)> {
    let (fld, n) = (ring.field(), ring.nvars());
    let total: u64 = rng.gen_range(1..=2);
    let mut elems = Vec::new();
    let mut coeffs = Vec::new();
    let mut planted = FreeElement::zero(fld, n, 2);
    for _ in 0..2 {
        let a: u64 = rng.gen_range(0..=total.min(1));
        let v = FreeElement::from_components(vec![random_form(ring, a, rng), random_form(ring, a, rng)]);
        let r = random_form(ring, total - a, rng);
        planted = planted.add(&v.scale(&r));
        elems.push(v);
        coeffs.push(r);
    }
    let planted = FreeElement::from_components(planted.components().iter().map(|p| ring.reduce(p)).collect());
    let extra_deg: u64 = rng.gen_range(1..=2);
    let extra = FreeElement::from_components(vec![random_form(ring, extra_deg, rng), random_form(ring, extra_deg, rng)]);
    let pres = Matrix::from_columns(fld, n, vec![0, 0], &[planted, extra], vec![total as i64, extra_deg as i64]);
    let m = FPModule::new(ring, pres)?;
    let elems = elems.into_iter().map(|v| ModuleElement::new(&m, v)).collect::<Result<Vec<_>>>()?;
    Ok((m, elems, coeffs))
}

pub const PLANTED_SEED: u64 = 0x2202;
pub const PLANTED_PER_RING: usize = 100;

pub fn criterion_2() -> CheckResult {
    run(2, "planted relations kill the shuffle element", || {
        let mut t = Tally::default();
        let mut rng = ChaCha8Rng::seed_from_u64(PLANTED_SEED);
        let q = RingContext::polynomial_ring(Rationals, &["x", "y"])?;
        let p = RingContext::polynomial_ring(f(5), &["x", "y", "z"])?;
        for i in 0..PLANTED_PER_RING {
            let (m, e, r) = planted_instance(&q, &mut rng)?;
            t.check(format!("QQ #{i}"), check_prop_2_2(&m, &e, &r)?.passed());
        }
        for i in 0..PLANTED_PER_RING {
            let (m, e, r) = planted_instance(&p, &mut rng)?;
            t.check(format!("GF(5) #{i}"), check_prop_2_2(&m, &e, &r)?.passed());
        }
        Ok(t.finish())
    })
}

pub fn criterion_3() -> CheckResult {
    run(3, "R/(x) over the node stays torsion-free", || {
        let mut t = Tally::default();
        let r = node(f(5))?;
        let m = FPModule::cyclic_text(&r, &["x"])?;
        for n in 1..=4 {
            let p = m.tensor_power(n)?;
            let mp = p.minimal_presentation()?;
            t.check(format!("n={n} presentation"), mp.module.to_text() == "coker [[x]]");
            t.check(format!("n={n} torsion-free"), torsion_split(&p)?.is_torsion_free);
        }
        Ok(t.finish())
    })
}

pub fn criterion_4() -> CheckResult {
    run(4, "torsion at n = b in both cases", || {
        let mut t = Tally::default();
        let q = RingContext::polynomial_ring(Rationals, &["x", "y"])?;
        let m = FPModule::coker_text(&q, &[&["x"], &["y"]])?;
        let c1 = verify_thm_2_10(&m, &FPModule::free_rank(&q, 1), Thm210Case::PresentationIdeal)?;
        t.check("case 1 pass", c1.verdict == Verdict::Pass);
        t.check("case 1 b = 2", c1.witnesses.iter().any(|w| w.label == "b" && w.value == "2"));
        let c2 = verify_thm_2_10(&m, &FPModule::cyclic_text(&q, &["x"])?, Thm210Case::Rank)?;
        t.check("case 2 pass", c2.verdict == Verdict::Pass);
        t.check("case 2 b = 2", c2.witnesses.iter().any(|w| w.label == "b" && w.value == "2"));
        let r = node(f(5))?;
        let x = FPModule::cyclic_text(&r, &["x"])?;
        let c3 = verify_thm_2_10(&x, &x, Thm210Case::PresentationIdeal)?;
        t.check("node case 1 inapplicable", c3.verdict == Verdict::Inapplicable);
        Ok(t.finish())
    })
}

/// `d - sup{i : Tor_i(R/J, M) ≠ 0}` for `J` generated by `seq`.
fn tor_depth<K: Field>(seq: &[Polynomial<K>], m: &FPModule<K>) -> Result<usize> {
    let ring = m.ring();
    let quotient = FPModule::cyclic(ring, seq)?;
    let d = seq.len();
    let mut sup = None;
    for i in (0..=d).rev() {
        if !tor(&quotient, m, i)?.is_zero()? {
            sup = Some(i);
            break;
        }
    }
    sup.map(|s| d - s).ok_or_else(|| torsionlab_core::Error::Input("J M = M".into()))
}

fn depth_case<K: Field>(t: &mut Tally, label: &str, seq: &[Polynomial<K>], m: &FPModule<K>, expected: usize) -> Result<()> {
    if !m.ring().is_regular_sequence(seq)? {
        t.check(format!("{label}: sequence not regular"), false);
        return Ok(());
    }
    let k = koszul_depth(seq, m)?.depth;
    let via_tor = tor_depth(seq, m)?;
    t.check(format!("{label}: koszul {k} vs tor {via_tor}"), k == via_tor);
    t.check(format!("{label}: expected {expected}, got {k}"), k == expected);
    Ok(())
}

pub fn criterion_5() -> CheckResult {
    run(5, "Koszul depth agrees with the Tor formula", || {
        let mut t = Tally::default();
        let q2 = RingContext::polynomial_ring(Rationals, &["x", "y"])?;
        let q3 = RingContext::polynomial_ring(Rationals, &["x", "y", "z"])?;
        let p3 = RingContext::polynomial_ring(f(5), &["x", "y", "z"])?;
        let n5 = node(f(5))?;
        let xy = polys(&q2, &["x", "y"])?;
        depth_case(&mut t, "R over QQ[x,y]", &xy, &FPModule::free_rank(&q2, 1), 2)?;
        depth_case(&mut t, "coker[x,y]", &xy, &FPModule::coker_text(&q2, &[&["x"], &["y"]])?, 1)?;
        depth_case(&mut t, "R/(x) along (x)", &polys(&q2, &["x"])?, &FPModule::cyclic_text(&q2, &["x"])?, 0)?;
        let k3 = FPModule::coker_text(&q3, &[&["x"], &["y"], &["z"]])?;
        depth_case(&mut t, "tensor square", &polys(&q3, &["x", "y", "z"])?, &k3.tensor_power(2)?, 1)?;
        depth_case(&mut t, "GF(5) R/(z) along (x,y)", &polys(&p3, &["x", "y"])?, &FPModule::cyclic_text(&p3, &["z"])?, 2)?;
        depth_case(&mut t, "node R/(x) along (x+y)", &polys(&n5, &["x + y"])?, &FPModule::cyclic_text(&n5, &["x"])?, 1)?;
        Ok(t.finish())
    })
}

pub fn criterion_6() -> CheckResult {
    run(6, "maximal ideal carrier over QQ[x,y]", || {
        let mut t = Tally::default();
        let q = RingContext::polynomial_ring(Rationals, &["x", "y"])?;
        let k = FPModule::residue_field(&q);
        let (mm, _) = FPModule::free_rank(&q, 1).ideal_times(&q.max_ideal())?;
        let panel = [
            ("free", FPModule::free_rank(&q, 1), false),
            ("R/(x)", FPModule::cyclic_text(&q, &["x"])?, true),
            ("coker[x,y]", FPModule::coker_text(&q, &[&["x"], &["y"]])?, true),
        ];
        for (label, m, non_free) in panel {
            let torsion = !torsion_split(&mm.tensor(&m)?)?.is_torsion_free;
            let tor1 = !tor(&k, &m, 1)?.is_zero()?;
            t.check(format!("{label}: torsion in m ⊗ M"), torsion == non_free);
            t.check(format!("{label}: Tor_1(k, M)"), tor1 == non_free);
            t.check(format!("{label}: free"), m.is_free()? != non_free);
        }
        Ok(t.finish())
    })
}

/// Modules checked for Frobenius flatness over a polynomial ring.
pub fn flatness_panel<K: Field>(ring: &RingContext<K>) -> Result<Vec<(String, FPModule<K>)>> {
    let vars: Vec<String> = ring.names().to_vec();
    let column: Vec<Vec<Polynomial<K>>> = ring.variables().into_iter().map(|v| vec![v]).collect();
    let mut out = vec![
        ("R".to_string(), FPModule::free_rank(ring, 1)),
        (format!("R/({})", vars[0]), FPModule::cyclic(ring, &[ring.variable(0)])?),
        ("k".to_string(), FPModule::residue_field(ring)),
        ("koszul".to_string(), FPModule::coker(ring, column)?),
    ];
    if vars.len() >= 2 {
        let p = ring.parse(&format!("{}^2", vars[0]))?;
        let q = ring.parse(&format!("{}*{}", vars[0], vars[1]))?;
        out.push(("R/(x^2, xy)".to_string(), FPModule::cyclic(ring, &[p, q])?));
    }
    Ok(out)
}

/// Degree cap for the Frobenius panel; `q = 25` entries push past the default.
pub const FROBENIUS_DEGREE_CAP: u64 = 512;

pub fn criterion_7() -> CheckResult {
    run(7, "Frobenius Tor vanishes over regular rings", || {
        let mut t = Tally::default();
        let limits = Limits { degree_cap: FROBENIUS_DEGREE_CAP, cancel: None };
        let rings = [
            RingContext::polynomial_ring(f(2), &["x", "y"])?.with_limits(limits.clone()),
            RingContext::polynomial_ring(f(5), &["x", "y", "z"])?.with_limits(limits),
        ];
        for r in &rings {
            for (label, m) in flatness_panel(r)? {
                for e in 1..=2 {
                    for i in 1..=2 {
                        let z = tor_frobenius(&m, e, i)?.is_zero()?;
                        t.check(format!("{} {label} e={e} i={i}", r.descriptor()), z);
                    }
                }
            }
        }
        Ok(t.finish())
    })
}

pub fn criterion_8() -> CheckResult {
    run(8, "infinite projective dimension is detected", || {
        let mut t = Tally::default();
        let r = node(f(2))?;
        let m = FPModule::cyclic_text(&r, &["x"])?;
        t.check("pd infinite", !pd(&m)?.is_finite());
        t.check("Tor_1 of F^1 nonzero", !tor_frobenius(&m, 1, 1)?.is_zero()?);
        let fm = frobenius_functor(&m, 1)?;
        t.check("F^1(M) = R/(x^2)", fm.to_text() == "coker [[x^2]]");
        let split = torsion_split(&fm)?;
        t.check("F^1(M) has torsion", !split.is_torsion_free);
        let x = fm.generator(0).scale(&r.parse("x")?);
        let s = r.parse("x + y")?;
        t.check("class of x nonzero", !x.is_zero()?);
        t.check("x + y kills it", x.scale(&s).is_zero()?);
        t.check("x + y is a non-zerodivisor", is_nonzerodivisor(&r, &s)?);
        t.check("x is torsion", split.projection.apply(&x)?.is_zero()?);
        Ok(t.finish())
    })
}

pub fn criterion_9() -> CheckResult {
    run(9, "Frobenius torsion versus finite projective dimension", || {
        let mut t = Tally::default();
        let r = node(f(2))?;
        let neg = verify_thm_3_5(&FPModule::cyclic_text(&r, &["x"])?, 1)?;
        t.check("node R/(x)", neg.verdict == Verdict::Pass);
        let cubic = RingContext::quotient(f(2), &["x", "y", "z"], &["x^3 + y^3 + z^3"], &[&["x^3 + y^3 + z^3"]], flags(true, true))?;
        let k = koszul_syzygy_module(&cubic, &polys(&cubic, &["y", "z"])?)?;
        let pos = verify_thm_3_5(&k.module, 1)?;
        t.check("cubic Koszul module", pos.verdict == Verdict::Pass);
        t.check("sampled vanishing recorded", pos.subclaims.iter().any(|s| s.id.starts_with("cor3.6")));
        for s in pos.subclaims.iter().filter(|s| s.id.starts_with("cor3.6")) {
            t.check(s.id.clone(), s.passed);
        }
        Ok(t.finish())
    })
}

pub fn criterion_10() -> CheckResult {
    run(10, "regularity probe through Frobenius pushforward", || {
        let mut t = Tally::default();
        let plane = RingContext::polynomial_ring(f(2), &["x", "y"])?;
        let panel = [
            ("R", FPModule::free_rank(&plane, 1)),
            ("koszul", FPModule::coker_text(&plane, &[&["x"], &["y"]])?),
            ("m", FPModule::free_rank(&plane, 1).ideal_times(&plane.max_ideal())?.0),
        ];
        for (label, m) in panel {
            let c = regularity_probe(&m, 1, 1)?;
            t.check(format!("regular {label}"), c.verdict == Verdict::Pass && c.subclaim("regular").is_some());
        }
        let r = node(f(2))?;
        let c = regularity_probe(&FPModule::free_rank(&r, 1), 1, 1)?;
        t.check("node R", c.verdict == Verdict::Pass && c.subclaim("singular").is_some());
        for ring in [&plane, &r] {
            let forms = is_regular_by_linear_forms(ring);
            let pk = pd(&FPModule::residue_field(ring))?.is_finite();
            t.check(format!("{}: decisions agree", ring.descriptor()), forms == pk);
        }
        t.check("plane is regular", is_regular_by_linear_forms(&plane));
        t.check("node is singular", !is_regular_by_linear_forms(&r));
        Ok(t.finish())
    })
}

pub type Check = fn() -> CheckResult;

pub const BUILTIN_SUITE: [Check; 10] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
];

pub fn run_builtin_suite() -> Vec<CheckResult> {
    BUILTIN_SUITE.iter().map(|c| c()).collect()
}
