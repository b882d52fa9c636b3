//! Minimal free resolutions, projective dimension, Tor and Koszul homology.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::module::FPModule;
use crate::poly::matrix::Matrix;
use crate::poly::polynomial::Polynomial;
use crate::ring::{Ideal, RingContext};

/// A minimal graded free resolution `... -> F_2 -> F_1 -> F_0 -> M`,
/// computed up to a homological bound.
#[derive(Clone, Debug)]
pub struct FreeResolution<K: Field> {
    /// `d_i: F_i -> F_{i-1}` for `i = 1..`.
    pub differentials: Vec<Matrix<K>>,
    /// Degrees of the basis of each `F_i`.
    pub degrees: Vec<Vec<i64>>,
    pub minimal: bool,
    /// The resolution terminated: the next syzygy module is zero.
    pub complete: bool,
}

/// Graded Betti numbers `β_{i,j}`, printed as the usual grid with rows
/// indexed by `j - i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub entries: Vec<(usize, i64, usize)>,
}

impl BettiTable {
    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|e| e.0 == i).map(|e| e.2).sum()
    }

    pub fn render(&self) -> String {
        if self.entries.is_empty() {
            return "total:\n".to_string();
        }
        let maxi = self.entries.iter().map(|e| e.0).max().unwrap();
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.entries.iter().map(|e| e.1 - e.0 as i64).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let cell = |v: usize| if v == 0 { "-".to_string() } else { v.to_string() };
        let width = self.entries.iter().map(|e| e.2.to_string().len()).max().unwrap().max(
            (0..=maxi).map(|i| self.total(i).to_string().len()).max().unwrap(),
        );
        let mut s = String::new();
        let _ = write!(s, "{:>7}", "");
        for i in 0..=maxi {
            let _ = write!(s, " {:>width$}", i);
        }
        s.push('\n');
        let _ = write!(s, "{:>7}", "total:");
        for i in 0..=maxi {
            let _ = write!(s, " {:>width$}", self.total(i));
        }
        s.push('\n');
        for r in rows {
            let _ = write!(s, "{:>7}", format!("{r}:"));
            for i in 0..=maxi {
                let v: usize = self.entries.iter().filter(|e| e.0 == i && e.1 - i as i64 == r).map(|e| e.2).sum();
                let _ = write!(s, " {:>width$}", cell(v));
            }
            s.push('\n');
        }
        s
    }
}

impl<K: Field> FreeResolution<K> {
    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.len()).collect()
    }

    /// Homological length of the computed part (index of the last nonzero
    /// free module).
    pub fn length(&self) -> usize {
        self.degrees.iter().rposition(|d| !d.is_empty()).unwrap_or(0)
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = Vec::new();
        for (i, degs) in self.degrees.iter().enumerate() {
            let mut ds = degs.clone();
            ds.sort_unstable();
            let mut k = 0;
            while k < ds.len() {
                let d = ds[k];
                let c = ds[k..].iter().take_while(|&&x| x == d).count();
                entries.push((i, d, c));
                k += c;
            }
        }
        BettiTable { entries }
    }

    /// Checks `d_i d_{i+1} = 0` modulo the ring's ideal and that every entry
    /// lies in the maximal ideal.
    pub fn verify(&self, ring: &RingContext<K>) -> bool {
        for w in self.differentials.windows(2) {
            let p = w[0].mul(&w[1]);
            if p.entries().any(|e| !ring.is_zero(e)) {
                return false;
            }
        }
        self.differentials.iter().all(|d| d.entries().all(|e| ring.in_max_ideal(e)))
    }

    /// First `len` steps. Stored differentials are all nonzero, so a cut
    /// below the full length is never complete.
    fn truncate(&self, len: usize) -> Self {
        if len >= self.differentials.len() {
            return self.clone();
        }
        FreeResolution {
            differentials: self.differentials[..len].to_vec(),
            degrees: self.degrees[..=len].to_vec(),
            minimal: self.minimal,
            complete: false,
        }
    }
}

/// Minimal resolution of `M` through homological degree `bound`. The
/// differential `d_{bound+1}` is also computed so completeness is known.
pub fn free_resolution<K: Field>(m: &FPModule<K>, bound: usize) -> Result<FreeResolution<K>> {
    {
        let slot = m.resolution_slot().lock().unwrap();
        if let Some(res) = slot.as_ref() {
            if res.complete || res.differentials.len() > bound {
                return Ok(res.truncate(bound));
            }
        }
    }
    let ring = m.ring();
    let mp = m.minimal_presentation()?;
    let mut current = mp.module.presentation().clone();
    let mut degrees = vec![current.row_degrees().to_vec()];
    let mut differentials = Vec::new();
    let mut complete = false;
    loop {
        if current.cols() == 0 {
            complete = true;
            break;
        }
        degrees.push(current.col_degrees().to_vec());
        let done = differentials.len() == bound;
        let next = if done { None } else { Some(ring.syzygies(&current)?) };
        differentials.push(current);
        match next {
            Some(n) => current = n,
            None => break,
        }
    }
    let res = FreeResolution { differentials, degrees, minimal: true, complete };
    let out = res.truncate(bound);
    *m.resolution_slot().lock().unwrap() = Some(res);
    Ok(out)
}

/// Projective dimension, or the verdict that it is infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectiveDimension {
    Finite(usize),
    /// `β_{depth R + 1} ≠ 0`, which is impossible for finite projective
    /// dimension over a graded ring.
    Infinite { depth: usize },
}

impl ProjectiveDimension {
    pub fn is_finite(&self) -> bool {
        matches!(self, ProjectiveDimension::Finite(_))
    }
}

impl std::fmt::Display for ProjectiveDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjectiveDimension::Finite(n) => write!(f, "{n}"),
            ProjectiveDimension::Infinite { .. } => write!(f, "infinite"),
        }
    }
}

pub fn pd<K: Field>(m: &FPModule<K>) -> Result<ProjectiveDimension> {
    let depth = m.ring().depth()?;
    let res = free_resolution(m, depth + 1)?;
    let b = res.betti_numbers();
    if b.len() > depth + 1 && b[depth + 1] > 0 {
        return Ok(ProjectiveDimension::Infinite { depth });
    }
    Ok(ProjectiveDimension::Finite(res.length()))
}

/// Homology at the middle of `C_{i+1} --inc--> C_i --out--> C_{i-1}` where
/// each `C` is `N^{b}` presented by `1 ⊗ B`, and the maps are `d ⊗ 1`.
/// Returns the minimal presentation of the homology module.
pub(crate) fn tensored_homology<K: Field>(
    n: &FPModule<K>,
    degrees_i: &[i64],
    incoming: Option<&Matrix<K>>,
    outgoing: Option<(&Matrix<K>, &[i64])>,
) -> Result<FPModule<K>> {
    let ring = n.ring();
    let (f, nv) = (ring.field(), ring.nvars());
    let id_n = Matrix::identity(f, nv, n.generator_degrees().to_vec());
    let ci = FPModule::new(ring, Matrix::identity(f, nv, degrees_i.to_vec()).kronecker(n.presentation()))?;
    let cycles: Vec<_> = match outgoing {
        None => ci.generators().into_iter().map(|g| g.coords).collect(),
        Some((d, degrees_prev)) => {
            let prev = FPModule::new(ring, Matrix::identity(f, nv, degrees_prev.to_vec()).kronecker(n.presentation()))?;
            let phi = crate::module::ModuleMap::new(&ci, &prev, matrix_rows(&d.kronecker(&id_n)))?;
            let (_, incl) = phi.kernel()?;
            incl.matrix().columns()
        }
    };
    let quotient = match incoming {
        None => ci,
        Some(d) => ci.quotient(&d.kronecker(&id_n).columns())?.0,
    };
    let (h, _) = quotient.submodule(&cycles)?;
    Ok(h.minimal_presentation()?.module.clone())
}

fn matrix_rows<K: Field>(m: &Matrix<K>) -> Vec<Vec<Polynomial<K>>> {
    (0..m.rows()).map(|i| m.row(i)).collect()
}

/// `Tor_i(M, N) = H_i(F_M ⊗ N)`, minimally presented.
pub fn tor<K: Field>(m: &FPModule<K>, n: &FPModule<K>, i: usize) -> Result<FPModule<K>> {
    if m.ring() != n.ring() {
        return Err(Error::Dimension("Tor of modules over different rings".into()));
    }
    let res = free_resolution(m, i + 1)?;
    let empty: Vec<i64> = Vec::new();
    let deg = |k: usize| res.degrees.get(k).cloned().unwrap_or_else(|| empty.clone());
    let di = if i >= 1 { res.differentials.get(i - 1) } else { None };
    let dnext = res.differentials.get(i);
    let prev_deg = if i >= 1 { deg(i - 1) } else { Vec::new() };
    if deg(i).is_empty() {
        return FPModule::free(m.ring(), Vec::new());
    }
    let outgoing = di.map(|d| (d, prev_deg.as_slice()));
    tensored_homology(n, &deg(i), dnext, outgoing)
}

pub(crate) fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..d {
            cur.push(s);
            rec(s + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, k, &mut Vec::new(), &mut out);
    out
}

/// The Koszul complex on `r_1..r_d` over `R`, with bases the sorted subsets
/// of `{0..d-1}`.
#[derive(Clone, Debug)]
pub struct KoszulComplex<K: Field> {
    pub elements: Vec<Polynomial<K>>,
    /// `differentials[i-1]: K_i -> K_{i-1}`.
    pub differentials: Vec<Matrix<K>>,
    pub degrees: Vec<Vec<i64>>,
}

impl<K: Field> KoszulComplex<K> {
    pub fn new(ring: &RingContext<K>, elements: &[Polynomial<K>]) -> Result<Self> {
        let d = elements.len();
        let mut edeg = Vec::with_capacity(d);
        for r in elements {
            if !r.is_homogeneous(ring.weights()) {
                return Err(Error::Input("Koszul elements must be homogeneous".into()));
            }
            edeg.push(r.degree(ring.weights()).unwrap_or(0) as i64);
        }
        let bases: Vec<Vec<Vec<usize>>> = (0..=d).map(|k| subsets(d, k)).collect();
        let degrees: Vec<Vec<i64>> = bases.iter().map(|b| b.iter().map(|s| s.iter().map(|&i| edeg[i]).sum()).collect()).collect();
        let mut differentials = Vec::new();
        for k in 1..=d {
            let mut m = Matrix::zero(ring.field(), ring.nvars(), degrees[k - 1].clone(), degrees[k].clone());
            for (j, s) in bases[k].iter().enumerate() {
                for (pos, &drop) in s.iter().enumerate() {
                    let rest: Vec<usize> = s.iter().copied().filter(|&x| x != drop).collect();
                    let i = bases[k - 1].iter().position(|t| *t == rest).unwrap();
                    let e = if pos % 2 == 0 { elements[drop].clone() } else { -&elements[drop] };
                    m.set(i, j, e);
                }
            }
            differentials.push(m);
        }
        Ok(KoszulComplex { elements: elements.to_vec(), differentials, degrees })
    }

    pub fn length(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.degrees.get(i).map(|d| d.len()).unwrap_or(0)
    }

    /// `d_i d_{i+1} = 0` in `R`.
    pub fn is_complex(&self, ring: &RingContext<K>) -> bool {
        self.differentials.windows(2).all(|w| w[0].mul(&w[1]).entries().all(|e| ring.is_zero(e)))
    }

    /// `H_i(K ⊗ M)`, minimally presented.
    pub fn homology(&self, m: &FPModule<K>, i: usize) -> Result<FPModule<K>> {
        if i > self.length() {
            return FPModule::free(m.ring(), Vec::new());
        }
        let incoming = self.differentials.get(i);
        let outgoing = if i >= 1 { Some((&self.differentials[i - 1], self.degrees[i - 1].as_slice())) } else { None };
        tensored_homology(m, &self.degrees[i], incoming, outgoing)
    }
}

/// Result of [`koszul_depth`].
#[derive(Clone, Debug)]
pub struct KoszulDepth<K: Field> {
    pub depth: usize,
    /// `(i, H_i)` for every nonzero Koszul homology module.
    pub homologies: Vec<(usize, FPModule<K>)>,
}

/// `depth(J, M) = d - sup{i : H_i(x; M) ≠ 0}` for `J = (x_1..x_d)`.
pub fn koszul_depth<K: Field>(seq: &[Polynomial<K>], m: &FPModule<K>) -> Result<KoszulDepth<K>> {
    let ring = m.ring();
    let j = Ideal::new(ring, seq.to_vec())?;
    if m.quotient_by_ideal(&j)?.is_zero()? {
        return Err(Error::Input("J M = M, so the depth along J is not defined".into()));
    }
    let k = KoszulComplex::new(ring, seq)?;
    let mut homologies = Vec::new();
    for i in (0..=k.length()).rev() {
        let h = k.homology(m, i)?;
        if !h.is_zero()? {
            homologies.push((i, h));
        }
    }
    homologies.reverse();
    let sup = homologies.last().map(|(i, _)| *i).expect("H_0 = M/JM is nonzero");
    Ok(KoszulDepth { depth: k.length() - sup, homologies })
}

/// Depth of `R` along its maximal ideal: the length of the top nonzero
/// Koszul homology on the variables, counted from the top.
pub(crate) fn ring_depth<K: Field>(ring: &RingContext<K>) -> Result<usize> {
    if ring.is_polynomial_ring() {
        return Ok(ring.nvars());
    }
    let k = KoszulComplex::new(ring, &ring.variables())?;
    let r = FPModule::free_rank(ring, 1);
    for i in (0..=k.length()).rev() {
        if !k.homology(&r, i)?.is_zero()? {
            return Ok(k.length() - i);
        }
    }
    unreachable!("H_0 = k is nonzero")
}

pub(crate) fn koszul_is_acyclic<K: Field>(ring: &RingContext<K>, seq: &[Polynomial<K>]) -> Result<bool> {
    let k = KoszulComplex::new(ring, seq)?;
    let r = FPModule::free_rank(ring, 1);
    for i in 1..=k.length() {
        if !k.homology(&r, i)?.is_zero()? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ring::RingFlags;

    fn node2() -> RingContext<PrimeField> {
        let flags = RingFlags { reduced: true, complete_intersection: true };
        RingContext::quotient(PrimeField::new(2).unwrap(), &["x", "y"], &["x*y"], &[&["x"], &["y"]], flags).unwrap()
    }

    #[test]
    fn resolution_examples() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let free = FPModule::free_rank(&r, 1);
        let res = free_resolution(&free, 3).unwrap();
        assert!(res.complete);
        assert_eq!(res.betti_numbers(), vec![1]);
        let k = FPModule::coker_text(&r, &[&["x"], &["y"]]).unwrap();
        let res = free_resolution(&k, 3).unwrap();
        assert!(res.complete && res.verify(&r));
        assert_eq!(res.betti_numbers(), vec![2, 1]);
        assert_eq!(pd(&k).unwrap(), ProjectiveDimension::Finite(1));
    }

    #[test]
    fn node_resolution_is_periodic() {
        let n = node2();
        let m = FPModule::cyclic_text(&n, &["x"]).unwrap();
        let res = free_resolution(&m, 5).unwrap();
        assert!(!res.complete);
        assert_eq!(res.betti_numbers(), vec![1; 6]);
        let texts: Vec<String> = res.differentials.iter().map(|d| d.get(0, 0).to_text(n.names())).collect();
        assert_eq!(texts, ["x", "y", "x", "y", "x"]);
        assert!(res.verify(&n));
        assert_eq!(n.depth().unwrap(), 1);
        assert!(!pd(&m).unwrap().is_finite());
    }

    #[test]
    fn tor_examples() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let rx = FPModule::cyclic_text(&r, &["x"]).unwrap();
        let ry = FPModule::cyclic_text(&r, &["y"]).unwrap();
        assert!(tor(&rx, &ry, 1).unwrap().is_zero().unwrap());
        let t = tor(&rx, &rx, 1).unwrap();
        assert_eq!(t.nu().unwrap(), 1);
        let ann = t.annihilator(None).unwrap();
        assert!(ann.equals(&r.ideal(vec![r.parse("x").unwrap()]).unwrap()).unwrap());
        let t0 = tor(&rx, &ry, 0).unwrap();
        assert_eq!(t0.nu().unwrap(), 1);
        let free = FPModule::free_rank(&r, 1);
        assert!(tor(&free, &rx, 1).unwrap().is_zero().unwrap());
    }

    #[test]
    fn koszul_depth_examples() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let free = FPModule::free_rank(&r, 1);
        assert_eq!(koszul_depth(&r.variables(), &free).unwrap().depth, 2);
        let rx = FPModule::cyclic_text(&r, &["x"]).unwrap();
        assert_eq!(koszul_depth(&[r.parse("x").unwrap()], &rx).unwrap().depth, 0);
        let k = FPModule::residue_field(&r);
        assert!(matches!(koszul_depth(&[r.one()], &k), Err(Error::Input(_))));
    }

    #[test]
    fn koszul_complex_shape() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y", "z"]).unwrap();
        let k = KoszulComplex::new(&r, &r.variables()).unwrap();
        assert_eq!((0..=3).map(|i| k.rank(i)).collect::<Vec<_>>(), vec![1, 3, 3, 1]);
        assert!(k.is_complex(&r));
    }

    #[test]
    fn regular_sequence_examples() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y", "z"]).unwrap();
        assert!(r.is_regular_sequence(&r.variables()).unwrap());
        let x = r.parse("x").unwrap();
        assert!(!r.is_regular_sequence(&[x.clone(), x.clone()]).unwrap());
        let n = node2();
        assert!(!n.is_regular_sequence(&[n.parse("x").unwrap()]).unwrap());
        assert!(matches!(r.is_regular_sequence(&[r.one()]), Err(Error::Input(_))));
    }

    #[test]
    fn betti_table_text() {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let k = FPModule::residue_field(&r);
        let t = free_resolution(&k, 3).unwrap().betti_table();
        assert_eq!(t.render(), "        0 1 2\n total: 1 2 1\n     0: 1 2 1\n");
    }
}
