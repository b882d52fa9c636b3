//! Torsion submodules, the shuffle element and Koszul syzygy modules.
//!
//! Over a reduced ring the total quotient ring is a product of fields, so
//! `M -> Q(R) ⊗ M` and `M -> M**` have the same kernel. The torsion
//! submodule is therefore computed as the kernel of the evaluation map
//! `M -> R^{ν*}` given by generators of `M*`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::module::{FPModule, ModuleElement, ModuleMap};
use crate::poly::free::FreeElement;
use crate::poly::matrix::Matrix;
use crate::poly::polynomial::Polynomial;
use crate::ring::{Ideal, RingContext};

/// `0 -> t(M) -> M -> tf(M) -> 0`.
#[derive(Clone, Debug)]
pub struct TorsionSplit<K: Field> {
    pub torsion: FPModule<K>,
    pub inclusion: ModuleMap<K>,
    pub torsion_free: FPModule<K>,
    pub projection: ModuleMap<K>,
    pub is_torsion_free: bool,
    pub is_torsion: bool,
}

pub fn torsion_split<K: Field>(m: &FPModule<K>) -> Result<TorsionSplit<K>> {
    let ring = m.ring();
    if !ring.is_reduced() {
        return Err(Error::Unsupported(format!(
            "torsion via double duals needs a reduced ring; {} is not declared reduced",
            ring.descriptor()
        )));
    }
    let (to_m, _) = m.minimal_maps()?;
    let small = to_m.source().clone();
    let ev = small.evaluation_map()?;
    let (_, incl_small) = ev.kernel()?;
    // Push the torsion generators from the minimal presentation into M.
    let gens: Vec<FreeElement<K>> = incl_small.matrix().columns().iter().map(|c| to_m.matrix().apply(c)).collect();
    let (t, inclusion) = m.submodule(&gens)?;
    let (tf, projection) = m.quotient(&gens)?;
    let is_torsion_free = t.is_zero()?;
    let is_torsion = tf.is_zero()?;
    Ok(TorsionSplit { torsion: t, inclusion, torsion_free: tf, projection, is_torsion_free, is_torsion })
}

impl<K: Field> TorsionSplit<K> {
    /// Exactness of the split: inclusion then projection is zero, the
    /// inclusion is injective, and the kernel of the projection is the
    /// included image.
    pub fn is_exact(&self) -> Result<bool> {
        if !self.inclusion.then(&self.projection)?.is_zero()? {
            return Ok(false);
        }
        if !self.inclusion.is_injective()? {
            return Ok(false);
        }
        let (_, kincl) = self.projection.kernel()?;
        for c in kincl.matrix().columns() {
            if !self.inclusion.image_contains(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Torsion generators (in the free cover of `M`) that are nonzero.
    pub fn torsion_generators(&self) -> Vec<FreeElement<K>> {
        self.inclusion.matrix().columns()
    }
}

/// Whether `r` is a non-zerodivisor of `R`, decided directly: `ann(r) = 0`.
pub fn is_nonzerodivisor<K: Field>(ring: &RingContext<K>, r: &Polynomial<K>) -> Result<bool> {
    if ring.is_zero(r) {
        return Ok(false);
    }
    let deg = if r.is_homogeneous(ring.weights()) { r.degree(ring.weights()).unwrap_or(0) as i64 } else { 0 };
    let a = Matrix::new(ring.field(), ring.nvars(), vec![vec![r.clone()]], vec![0], vec![deg])?;
    Ok(ring.syzygies(&a)?.cols() == 0)
}

/// Deterministic search for a homogeneous non-zerodivisor in an ideal:
/// single generators, then sums of subsets of generators raised to a common
/// degree.
pub fn find_nonzerodivisor<K: Field>(ideal: &Ideal<K>) -> Result<Option<Polynomial<K>>> {
    let ring = ideal.ring();
    let gens: Vec<Polynomial<K>> = ideal.generators().to_vec();
    for g in &gens {
        if is_nonzerodivisor(ring, g)? {
            return Ok(Some(g.clone()));
        }
    }
    let k = gens.len().min(10);
    if k < 2 {
        return Ok(None);
    }
    let degs: Vec<u64> = gens[..k].iter().map(|g| g.degree(ring.weights()).unwrap_or(1).max(1)).collect();
    for mask in 3u32..(1u32 << k) {
        if mask.count_ones() < 2 {
            continue;
        }
        let chosen: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let l = chosen.iter().fold(1u64, |acc, &i| num_integer::lcm(acc, degs[i]));
        let mut sum = ring.zero();
        for &i in &chosen {
            sum = &sum + &gens[i].pow((l / degs[i]) as u32);
        }
        let sum = ring.reduce(&sum);
        if is_nonzerodivisor(ring, &sum)? {
            return Ok(Some(sum));
        }
    }
    Ok(None)
}

/// Signed permutations of `0..d` in lexicographic order.
pub fn signed_permutations(d: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut perms = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; d], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let inversions = (0..d).flat_map(|i| ((i + 1)..d).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            (p, inversions % 2 == 1)
        })
        .collect()
}

/// `τ(m_1..m_d) = Σ_σ sign(σ) m_{σ(1)} ⊗ ... ⊗ m_{σ(d)}` inside `power`,
/// which must be `tensor_power(M, d)`.
pub fn tau_in<K: Field>(power: &FPModule<K>, elems: &[ModuleElement<K>]) -> Result<ModuleElement<K>> {
    let d = elems.len();
    if d == 0 {
        return Err(Error::Input("τ needs at least one element".into()));
    }
    let m = elems[0].module.num_generators();
    if elems.iter().any(|e| e.module.num_generators() != m) {
        return Err(Error::Dimension("τ of elements from different modules".into()));
    }
    if power.num_generators() != m.pow(d as u32) {
        return Err(Error::Dimension("target is not the matching tensor power".into()));
    }
    let ring = power.ring();
    let mut acc = FreeElement::zero(ring.field(), ring.nvars(), power.num_generators());
    for (p, odd) in signed_permutations(d) {
        let mut v = elems[p[0]].coords.clone();
        for &i in &p[1..] {
            v = v.tensor(&elems[i].coords);
        }
        acc = if odd { acc.sub(&v) } else { acc.add(&v) };
    }
    ModuleElement::new(power, acc)
}

/// `τ(m̲)` together with the tensor power it lives in.
pub fn tau<K: Field>(m: &FPModule<K>, elems: &[ModuleElement<K>]) -> Result<(FPModule<K>, ModuleElement<K>)> {
    let power = m.tensor_power(elems.len())?;
    let t = tau_in(&power, elems)?;
    Ok((power, t))
}

/// `M = coker([r_1..r_d]^T)` with its distinguished generators.
#[derive(Clone, Debug)]
pub struct KoszulSyzygyModule<K: Field> {
    pub sequence: Vec<Polynomial<K>>,
    pub module: FPModule<K>,
}

impl<K: Field> KoszulSyzygyModule<K> {
    pub fn generators(&self) -> Vec<ModuleElement<K>> {
        self.module.generators()
    }
}

pub fn koszul_syzygy_module<K: Field>(ring: &RingContext<K>, seq: &[Polynomial<K>]) -> Result<KoszulSyzygyModule<K>> {
    if !ring.is_regular_sequence(seq)? {
        let s: Vec<String> = seq.iter().map(|p| p.to_text(ring.names())).collect();
        return Err(Error::Input(format!("({}) is not a regular sequence", s.join(", "))));
    }
    Ok(KoszulSyzygyModule { sequence: seq.to_vec(), module: koszul_module_unchecked(ring, seq)? })
}

pub(crate) fn koszul_module_unchecked<K: Field>(ring: &RingContext<K>, seq: &[Polynomial<K>]) -> Result<FPModule<K>> {
    let rows = seq.iter().map(|r| vec![r.clone()]).collect();
    FPModule::coker(ring, rows)
}

/// The universal module over `k[x_1..x_d]`: the Koszul syzygy module of
/// the variables.
pub fn universal_module<K: Field>(field: K, d: usize) -> Result<KoszulSyzygyModule<K>> {
    let names: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ring = RingContext::polynomial_ring(field, &refs)?;
    let vars = ring.variables();
    Ok(KoszulSyzygyModule { sequence: vars.clone(), module: koszul_module_unchecked(&ring, &vars)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ring::RingFlags;

    fn node() -> RingContext<PrimeField> {
        let flags = RingFlags { reduced: true, complete_intersection: true };
        RingContext::quotient(PrimeField::new(5).unwrap(), &["x", "y"], &["x*y"], &[&["x"], &["y"]], flags).unwrap()
    }

    #[test]
    fn torsion_split_examples() {
        let n = node();
        let free = FPModule::free_rank(&n, 2);
        let s = torsion_split(&free).unwrap();
        assert!(s.is_torsion_free && !s.is_torsion);
        let rx = FPModule::cyclic_text(&n, &["x"]).unwrap();
        assert!(torsion_split(&rx).unwrap().is_torsion_free);
        let rx2 = FPModule::cyclic_text(&n, &["x^2"]).unwrap();
        let s = torsion_split(&rx2).unwrap();
        assert!(!s.is_torsion_free);
        assert!(s.is_exact().unwrap());
        let g = &s.torsion_generators()[0];
        assert_eq!(g.to_text(n.names()), "[x]");
        let killer = n.parse("x + y").unwrap();
        assert!(rx2.is_zero_vector(&g.scale(&killer)).unwrap());
        assert!(torsion_split(&s.torsion_free).unwrap().is_torsion_free);
    }

    #[test]
    fn non_reduced_ring_is_unsupported() {
        let r = RingContext::quotient(PrimeField::new(2).unwrap(), &["x", "y"], &["x^2"], &[], RingFlags::default()).unwrap();
        let m = FPModule::free_rank(&r, 1);
        assert!(matches!(torsion_split(&m), Err(Error::Unsupported(_))));
    }

    #[test]
    fn tau_examples() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let m = FPModule::coker_text(&r, &[&["x"], &["y"]]).unwrap();
        let g = m.generators();
        let (_, t1) = tau(&m, &g[..1]).unwrap();
        assert_eq!(t1.coords, g[0].coords);
        let (p, t2) = tau(&m, &g).unwrap();
        assert_eq!(t2.to_text(), "[0, 1, -1, 0]");
        let (_, same) = tau(&m, &[g[0].clone(), g[0].clone()]).unwrap();
        assert!(same.coords.is_zero());
        let ann = p.annihilator(Some(&t2)).unwrap();
        assert!(ann.equals(&r.max_ideal()).unwrap());
    }

    #[test]
    fn nonzerodivisor_search() {
        let n = node();
        let m = n.max_ideal();
        let f = find_nonzerodivisor(&m).unwrap().unwrap();
        assert_eq!(f.to_text(n.names()), "x + y");
        let x = n.ideal(vec![n.parse("x").unwrap()]).unwrap();
        assert!(find_nonzerodivisor(&x).unwrap().is_none());
    }

    #[test]
    fn koszul_modules() {
        let r = RingContext::polynomial_ring(Rationals, &["x"]).unwrap();
        let k = koszul_syzygy_module(&r, &r.variables()).unwrap();
        assert_eq!(k.module.nu().unwrap(), 1);
        let u = universal_module(PrimeField::new(5).unwrap(), 3).unwrap();
        assert_eq!(u.module.num_generators(), 3);
        assert_eq!(u.module.ring().descriptor(), "GF(5)[x1,x2,x3]");
        let r2 = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let x = r2.parse("x").unwrap();
        assert!(koszul_syzygy_module(&r2, &[x.clone(), x]).is_err());
    }

    #[test]
    fn permutation_signs() {
        let p = signed_permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().filter(|(_, odd)| *odd).count(), 3);
        assert_eq!(p[1], (vec![0, 2, 1], true));
    }
}
