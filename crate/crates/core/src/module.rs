//! Finitely presented graded modules `M = coker(A: R^a -> R^m)`.

use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::FreeResolution;
use crate::poly::free::FreeElement;
use crate::poly::groebner::GroebnerBasis;
use crate::poly::matrix::Matrix;
use crate::poly::monomial::monomials_of_degree;
use crate::poly::polynomial::Polynomial;
use crate::poly::syzygy::{minimal_subset, module_basis};
use crate::ring::{Ideal, RingContext};

struct ModuleInner<K: Field> {
    ring: RingContext<K>,
    presentation: Matrix<K>,
    relation_basis: OnceLock<GroebnerBasis<K>>,
    minimal: OnceLock<MinimalPresentation<K>>,
    pub(crate) resolution: Mutex<Option<FreeResolution<K>>>,
}

/// A graded module given by generators (rows of the presentation, with
/// their degrees) and relations (columns).
#[derive(Clone)]
pub struct FPModule<K: Field> {
    inner: Arc<ModuleInner<K>>,
}

impl<K: Field> std::fmt::Debug for FPModule<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FPModule(coker {} over {})", self.presentation().to_text(self.ring().names()), self.ring().descriptor())
    }
}

/// Result of [`FPModule::minimal_presentation`].
#[derive(Clone, Debug)]
pub struct MinimalPresentation<K: Field> {
    pub module: FPModule<K>,
    pub nu: usize,
    pub is_free: bool,
    /// Original generator index behind each minimal generator.
    pub kept: Vec<usize>,
    /// `nu x m` matrix: column `k` holds the coordinates of original
    /// generator `k` in the minimal generators.
    pub coordinates: Matrix<K>,
}

impl<K: Field> FPModule<K> {
    /// Module with the given presentation; row degrees of `presentation` are
    /// the generator degrees. Entries are reduced modulo the ring's ideal and
    /// zero relations dropped.
    pub fn new(ring: &RingContext<K>, presentation: Matrix<K>) -> Result<Self> {
        if presentation.nvars() != ring.nvars() || presentation.field() != ring.field() {
            return Err(Error::Dimension("presentation matrix over a different ring".into()));
        }
        presentation.check_homogeneous(ring.weights())?;
        let reduced = presentation.map_entries(|p| ring.reduce(p));
        let nonzero: Vec<usize> = (0..reduced.cols()).filter(|&j| !reduced.column(j).is_zero()).collect();
        let presentation = reduced.select_columns(&nonzero);
        Ok(FPModule {
            inner: Arc::new(ModuleInner {
                ring: ring.clone(),
                presentation,
                relation_basis: OnceLock::new(),
                minimal: OnceLock::new(),
                resolution: Mutex::new(None),
            }),
        })
    }

    /// `coker` of a matrix given by rows, generator degrees inferred.
    pub fn coker(ring: &RingContext<K>, rows: Vec<Vec<Polynomial<K>>>) -> Result<Self> {
        let m = Matrix::with_inferred_degrees(ring.field(), ring.nvars(), ring.weights(), rows, None)?;
        Self::new(ring, m)
    }

    pub fn coker_with_degrees(ring: &RingContext<K>, rows: Vec<Vec<Polynomial<K>>>, degrees: Vec<i64>) -> Result<Self> {
        let m = Matrix::with_inferred_degrees(ring.field(), ring.nvars(), ring.weights(), rows, Some(degrees))?;
        Self::new(ring, m)
    }

    /// Parses row-major entries, e.g. `&[&["x"], &["y"]]`.
    pub fn coker_text(ring: &RingContext<K>, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Self::free(ring, Vec::new());
        }
        Self::coker(ring, rows)
    }

    pub fn free(ring: &RingContext<K>, degrees: Vec<i64>) -> Result<Self> {
        Self::new(ring, Matrix::zero(ring.field(), ring.nvars(), degrees, Vec::new()))
    }

    pub fn free_rank(ring: &RingContext<K>, rank: usize) -> Self {
        Self::free(ring, vec![0; rank]).expect("free module")
    }

    /// `R/J` for an ideal given by generators.
    pub fn cyclic(ring: &RingContext<K>, gens: &[Polynomial<K>]) -> Result<Self> {
        let degs = gens.iter().map(|g| g.degree(ring.weights()).unwrap_or(0) as i64).collect();
        let m = Matrix::new(ring.field(), ring.nvars(), vec![gens.to_vec()], vec![0], degs)?;
        Self::new(ring, m)
    }

    pub fn cyclic_text(ring: &RingContext<K>, gens: &[&str]) -> Result<Self> {
        let gens = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::cyclic(ring, &gens)
    }

    /// The residue field `k = R/m`.
    pub fn residue_field(ring: &RingContext<K>) -> Self {
        Self::cyclic(ring, &ring.variables()).expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &RingContext<K> {
        &self.inner.ring
    }

    pub fn presentation(&self) -> &Matrix<K> {
        &self.inner.presentation
    }

    pub fn num_generators(&self) -> usize {
        self.inner.presentation.rows()
    }

    pub fn generator_degrees(&self) -> &[i64] {
        self.inner.presentation.row_degrees()
    }

    pub(crate) fn resolution_slot(&self) -> &Mutex<Option<FreeResolution<K>>> {
        &self.inner.resolution
    }

    fn same_ring(&self, other: &FPModule<K>) -> Result<()> {
        if self.ring() != other.ring() {
            return Err(Error::Dimension(format!(
                "modules over different rings: {} and {}",
                self.ring().descriptor(),
                other.ring().descriptor()
            )));
        }
        Ok(())
    }

    /// Gröbner basis of `im A + I R^m` in `S^m`.
    pub fn relation_basis(&self) -> Result<&GroebnerBasis<K>> {
        if let Some(gb) = self.inner.relation_basis.get() {
            return Ok(gb);
        }
        let r = self.ring();
        let gb = module_basis(
            r.field(),
            r.nvars(),
            r.weights(),
            self.generator_degrees(),
            &self.presentation().columns(),
            r.ideal_basis(),
            r.limits(),
        )?;
        let _ = self.inner.relation_basis.set(gb);
        Ok(self.inner.relation_basis.get().unwrap())
    }

    /// Normal form of a vector of the free cover modulo relations.
    pub fn normal_form(&self, v: &FreeElement<K>) -> Result<FreeElement<K>> {
        if self.num_generators() == 0 {
            return Ok(v.clone());
        }
        self.relation_basis()?.normal_form(v)
    }

    pub fn is_zero_vector(&self, v: &FreeElement<K>) -> Result<bool> {
        if v.rank() != self.num_generators() {
            return Err(Error::Dimension(format!("vector of rank {} in a module with {} generators", v.rank(), self.num_generators())));
        }
        if v.is_zero() {
            return Ok(true);
        }
        Ok(self.normal_form(v)?.is_zero())
    }

    pub fn generator(&self, i: usize) -> ModuleElement<K> {
        let r = self.ring();
        ModuleElement { module: self.clone(), coords: FreeElement::basis(r.field(), r.nvars(), self.num_generators(), i) }
    }

    pub fn generators(&self) -> Vec<ModuleElement<K>> {
        (0..self.num_generators()).map(|i| self.generator(i)).collect()
    }

    pub fn element(&self, coords: FreeElement<K>) -> Result<ModuleElement<K>> {
        ModuleElement::new(self, coords)
    }

    pub fn zero_element(&self) -> ModuleElement<K> {
        let r = self.ring();
        ModuleElement { module: self.clone(), coords: FreeElement::zero(r.field(), r.nvars(), self.num_generators()) }
    }

    /// Minimal presentation: unit entries eliminated, then a minimal subset of
    /// the relations kept.
    pub fn minimal_presentation(&self) -> Result<&MinimalPresentation<K>> {
        if let Some(m) = self.inner.minimal.get() {
            return Ok(m);
        }
        let mp = self.compute_minimal()?;
        let _ = self.inner.minimal.set(mp);
        Ok(self.inner.minimal.get().unwrap())
    }

    fn compute_minimal(&self) -> Result<MinimalPresentation<K>> {
        let r = self.ring();
        let (f, n) = (r.field(), r.nvars());
        let m0 = self.num_generators();
        let mut a = self.presentation().clone();
        // alive[i]: original generator index of current row i.
        let mut alive: Vec<usize> = (0..m0).collect();
        // coords[k]: coordinates of original generator k over the current rows.
        let mut coords: Vec<FreeElement<K>> = (0..m0).map(|k| FreeElement::basis(f, n, m0, k)).collect();
        loop {
            let mut pivot = None;
            'search: for j in 0..a.cols() {
                for i in 0..a.rows() {
                    let e = a.get(i, j);
                    if !e.is_zero() && e.is_constant() {
                        pivot = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            let c = a.get(pi, pj).constant_term();
            let cinv = f.inv(&c);
            let col = a.column(pj);
            // e_pi = -(1/c) * sum_{k != pi} a[k][pj] e_k
            let mut express: Vec<Polynomial<K>> = col.components().iter().map(|p| p.scale(&f.neg(&cinv))).collect();
            express[pi] = Polynomial::zero(f, n);
            let mut next = Matrix::zero(
                f,
                n,
                a.row_degrees().iter().enumerate().filter(|(i, _)| *i != pi).map(|(_, d)| *d).collect(),
                a.col_degrees().iter().enumerate().filter(|(j, _)| *j != pj).map(|(_, d)| *d).collect(),
            );
            for (nj, j) in (0..a.cols()).filter(|&j| j != pj).enumerate() {
                let t = a.get(pi, j).clone();
                for (ni, i) in (0..a.rows()).filter(|&i| i != pi).enumerate() {
                    let mut v = a.get(i, j).clone();
                    if !t.is_zero() && !express[i].is_zero() {
                        v = &v + &(&t * &express[i]);
                    }
                    next.set(ni, nj, r.reduce(&v));
                }
            }
            coords = coords
                .into_iter()
                .map(|v| {
                    let w = v.component(pi).clone();
                    let comps: Vec<Polynomial<K>> = (0..a.rows())
                        .filter(|&i| i != pi)
                        .map(|i| {
                            let mut p = v.component(i).clone();
                            if !w.is_zero() && !express[i].is_zero() {
                                p = &p + &(&w * &express[i]);
                            }
                            r.reduce(&p)
                        })
                        .collect();
                    FreeElement::from_components(comps)
                })
                .collect();
            alive.remove(pi);
            a = next;
        }
        let nonzero: Vec<usize> = (0..a.cols()).filter(|&j| !a.column(j).is_zero()).collect();
        let a = a.select_columns(&nonzero);
        let keep = minimal_subset(f, r.weights(), a.row_degrees(), &a.columns(), &[], r.ideal_basis(), r.limits())?;
        let mut keep = keep;
        keep.sort_by_key(|&j| (a.col_degrees()[j], j));
        let a = a.select_columns(&keep);
        let nu = a.rows();
        let is_free = a.cols() == 0;
        let coordinates = Matrix::from_columns(f, n, a.row_degrees().to_vec(), &coords, self.generator_degrees().to_vec());
        let module = FPModule::new(r, a)?;
        Ok(MinimalPresentation { module, nu, is_free, kept: alive, coordinates })
    }

    /// Minimal number of generators `dim_k M/mM`.
    pub fn nu(&self) -> Result<usize> {
        Ok(self.minimal_presentation()?.nu)
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.nu()? == 0)
    }

    pub fn is_free(&self) -> Result<bool> {
        Ok(self.minimal_presentation()?.is_free)
    }

    /// Isomorphism from the minimal presentation to `self`, and its inverse.
    pub fn minimal_maps(&self) -> Result<(ModuleMap<K>, ModuleMap<K>)> {
        let mp = self.minimal_presentation()?;
        let r = self.ring();
        let mut e = Matrix::zero(r.field(), r.nvars(), self.generator_degrees().to_vec(), mp.module.generator_degrees().to_vec());
        for (l, &k) in mp.kept.iter().enumerate() {
            e.set(k, l, r.one());
        }
        let to_self = ModuleMap::new_unchecked(mp.module.clone(), self.clone(), e, 0);
        let from_self = ModuleMap::new_unchecked(self.clone(), mp.module.clone(), mp.coordinates.clone(), 0);
        Ok((to_self, from_self))
    }

    /// `M ⊗ N` with generators `e_i ⊗ f_j` at index `i*n + j` and relations
    /// `[A ⊗ 1 | 1 ⊗ B]`.
    pub fn tensor(&self, other: &FPModule<K>) -> Result<FPModule<K>> {
        self.same_ring(other)?;
        let r = self.ring();
        let (f, n) = (r.field(), r.nvars());
        let im = Matrix::identity(f, n, self.generator_degrees().to_vec());
        let in_ = Matrix::identity(f, n, other.generator_degrees().to_vec());
        let left = self.presentation().kronecker(&in_);
        let right = im.kronecker(other.presentation());
        FPModule::new(r, left.hconcat(&right))
    }

    /// `⊗^t M` as a left fold, so that generator coordinates are in the basis
    /// `e_{i_1} ⊗ ... ⊗ e_{i_t}` with `i_1` most significant.
    pub fn tensor_power(&self, t: usize) -> Result<FPModule<K>> {
        match t {
            0 => FPModule::free(self.ring(), vec![0]),
            1 => Ok(self.clone()),
            _ => self.tensor_power(t - 1)?.tensor(self),
        }
    }

    /// Module generated inside `self` by `gens` (vectors of the free cover),
    /// with the inclusion. Generators are first thinned to a minimal subset.
    pub fn submodule(&self, gens: &[FreeElement<K>]) -> Result<(FPModule<K>, ModuleMap<K>)> {
        let r = self.ring();
        let (f, n) = (r.field(), r.nvars());
        let shifts = self.generator_degrees();
        let mut gens_nz = Vec::new();
        for g in gens {
            if g.rank() != self.num_generators() {
                return Err(Error::Dimension("submodule generator of the wrong rank".into()));
            }
            if !self.is_zero_vector(g)? {
                let g = self.normal_form(g)?;
                if g.homogeneous_degree(r.weights(), shifts).is_none() {
                    return Err(Error::Input("submodule generators must be homogeneous".into()));
                }
                gens_nz.push(g);
            }
        }
        let keep = minimal_subset(f, r.weights(), shifts, &gens_nz, &self.presentation().columns(), r.ideal_basis(), r.limits())?;
        let g: Vec<FreeElement<K>> = keep.iter().map(|&i| gens_nz[i].clone()).collect();
        let gdeg: Vec<i64> = g.iter().map(|v| v.homogeneous_degree(r.weights(), shifts).unwrap()).collect();
        let gm = Matrix::from_columns(f, n, shifts.to_vec(), &g, gdeg.clone());
        let s = g.len();
        let syz = r.syzygies(&gm.hconcat(self.presentation()))?;
        let rel = syz.select_rows(&(0..s).collect::<Vec<_>>());
        let sub = FPModule::new(r, rel.with_degrees(gdeg, syz.col_degrees().to_vec()))?;
        let incl = ModuleMap::new_unchecked(sub.clone(), self.clone(), gm, 0);
        Ok((sub, incl))
    }

    /// `self / (submodule generated by gens)` with the projection.
    pub fn quotient(&self, gens: &[FreeElement<K>]) -> Result<(FPModule<K>, ModuleMap<K>)> {
        let r = self.ring();
        let shifts = self.generator_degrees();
        let mut cols = Vec::new();
        let mut degs = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let d = g.homogeneous_degree(r.weights(), shifts).ok_or_else(|| Error::Input("quotient by inhomogeneous element".into()))?;
            cols.push(g.clone());
            degs.push(d);
        }
        let extra = Matrix::from_columns(r.field(), r.nvars(), shifts.to_vec(), &cols, degs);
        let q = FPModule::new(r, self.presentation().hconcat(&extra))?;
        let id = Matrix::identity(r.field(), r.nvars(), shifts.to_vec());
        let proj = ModuleMap::new_unchecked(self.clone(), q.clone(), id, 0);
        Ok((q, proj))
    }

    /// `M / J M`.
    pub fn quotient_by_ideal(&self, j: &Ideal<K>) -> Result<FPModule<K>> {
        let mut gens = Vec::new();
        for g in j.generators() {
            for i in 0..self.num_generators() {
                gens.push(self.generator(i).coords.scale(g));
            }
        }
        Ok(self.quotient(&gens)?.0)
    }

    /// `J M` as a submodule of `M`.
    pub fn ideal_times(&self, j: &Ideal<K>) -> Result<(FPModule<K>, ModuleMap<K>)> {
        let mut gens = Vec::new();
        for g in j.generators() {
            for i in 0..self.num_generators() {
                gens.push(self.generator(i).coords.scale(g));
            }
        }
        self.submodule(&gens)
    }

    /// Rows of a minimal generating set of `M* = Hom(M, R)` inside `R^m`:
    /// functionals `φ` with `φ A = 0`. Row degrees are the negated degrees
    /// of the functionals.
    pub fn dual_generators(&self) -> Result<Matrix<K>> {
        let r = self.ring();
        if self.num_generators() == 0 {
            return Ok(Matrix::zero(r.field(), r.nvars(), Vec::new(), Vec::new()));
        }
        let at = self.presentation().transpose();
        let syz = r.syzygies(&at)?;
        Ok(syz.transpose())
    }

    /// Evaluation map `M -> R^{ν*}` through the dual generators.
    pub fn evaluation_map(&self) -> Result<ModuleMap<K>> {
        let psi = self.dual_generators()?;
        let r = self.ring();
        let target = FPModule::free(r, psi.row_degrees().to_vec())?;
        let psi = psi.with_degrees(target.generator_degrees().to_vec(), self.generator_degrees().to_vec());
        Ok(ModuleMap::new_unchecked(self.clone(), target, psi, 0))
    }

    /// `ann(v) = ker(R -> M, 1 -> v)`; without `v`, the annihilator of `M`.
    pub fn annihilator(&self, v: Option<&ModuleElement<K>>) -> Result<Ideal<K>> {
        let r = self.ring();
        match v {
            Some(v) => {
                if v.module.presentation() != self.presentation() {
                    return Err(Error::Dimension("element of a different module".into()));
                }
                let w = self.normal_form(&v.coords)?;
                if w.is_zero() {
                    return r.ideal(vec![r.one()]);
                }
                let d = w
                    .homogeneous_degree(r.weights(), self.generator_degrees())
                    .ok_or_else(|| Error::Input("annihilator of an inhomogeneous element".into()))?;
                let col = Matrix::from_columns(r.field(), r.nvars(), self.generator_degrees().to_vec(), &[w], vec![d]);
                let syz = r.syzygies(&col.hconcat(self.presentation()))?;
                let gens = (0..syz.cols()).map(|j| syz.get(0, j).clone()).filter(|p| !p.is_zero()).collect();
                r.ideal(gens)
            }
            None => {
                let mut acc = r.ideal(vec![r.one()])?;
                for g in self.minimal_presentation()?.module.generators() {
                    let a = g.module.annihilator(Some(&g))?;
                    acc = acc.intersect(&a)?;
                }
                Ok(acc)
            }
        }
    }

    /// `I(M)`, the ideal of entries of a minimal presentation matrix, and
    /// whether it contains a non-zerodivisor (avoids every minimal prime).
    pub fn presentation_ideal(&self) -> Result<(Ideal<K>, bool)> {
        let mp = self.minimal_presentation()?;
        if mp.is_free {
            return Err(Error::Degenerate("I(M) is only used for non-free modules".into()));
        }
        let r = self.ring();
        let entries: Vec<Polynomial<K>> = mp.module.presentation().entries().filter(|p| !p.is_zero()).cloned().collect();
        let ideal = r.ideal(entries)?;
        let primes = r.minimal_prime_bases().ok_or_else(|| {
            Error::Unsupported("deciding non-zerodivisors needs declared minimal primes".into())
        })?;
        if !r.is_reduced() {
            return Err(Error::Unsupported("deciding non-zerodivisors needs a reduced ring".into()));
        }
        let mut avoids_all = true;
        for p in &primes {
            let mut inside = true;
            for g in ideal.generators() {
                if !p.contains(&FreeElement::from_components(vec![g.clone()]))? {
                    inside = false;
                    break;
                }
            }
            if inside {
                avoids_all = false;
            }
        }
        Ok((ideal, avoids_all))
    }

    /// Rank of `M` at each minimal prime: generators minus the rank of the
    /// presentation matrix over the residue domain `S/p`, found by
    /// fraction-free elimination.
    pub fn rank(&self) -> Result<RankInfo> {
        let r = self.ring();
        if !r.is_reduced() {
            return Err(Error::Unsupported("rank needs a reduced ring".into()));
        }
        let primes = r.minimal_prime_bases().ok_or_else(|| Error::Unsupported("rank needs declared minimal primes".into()))?;
        let a = self.presentation();
        let mut ranks = Vec::new();
        for p in &primes {
            let rk = matrix_rank_mod_prime(a, p)?;
            ranks.push(self.num_generators() - rk);
        }
        let common = if ranks.windows(2).all(|w| w[0] == w[1]) { ranks.first().copied() } else { None };
        Ok(RankInfo { per_prime: ranks, rank: common })
    }

    /// `dim_k M_d`.
    pub fn hilbert_function(&self, d: i64) -> Result<usize> {
        let r = self.ring();
        let leads = if self.num_generators() > 0 { self.relation_basis()?.leading_terms() } else { Vec::new() };
        let mut count = 0;
        for (i, &gd) in self.generator_degrees().iter().enumerate() {
            if d < gd {
                continue;
            }
            for mono in monomials_of_degree(r.weights(), (d - gd) as u64) {
                if !leads.iter().any(|(p, l)| *p == i && l.divides(&mono)) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Entrywise map of the presentation (used by base-change style
    /// constructions that keep the generators).
    pub fn map_presentation(&self, a: Matrix<K>) -> Result<FPModule<K>> {
        FPModule::new(self.ring(), a)
    }

    pub fn to_text(&self) -> String {
        format!("coker {}", self.presentation().to_text(self.ring().names()))
    }
}

/// Per-prime ranks of a module; `rank` is set when they agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankInfo {
    pub per_prime: Vec<usize>,
    pub rank: Option<usize>,
}

impl RankInfo {
    pub fn has_rank(&self) -> bool {
        self.rank.is_some()
    }
}

/// Rank of a matrix over `Frac(S/p)`.
pub fn matrix_rank_mod_prime<K: Field>(a: &Matrix<K>, p: &GroebnerBasis<K>) -> Result<usize> {
    let nf = |x: &Polynomial<K>| -> Result<Polynomial<K>> {
        crate::poly::syzygy::reduce_polynomial(p, x)
    };
    let mut rows: Vec<Vec<Polynomial<K>>> = (0..a.rows()).map(|i| a.row(i).iter().map(nf).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let cols = a.cols();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, pr);
        let piv = rows[rank][c].clone();
        for i in (rank + 1)..rows.len() {
            let t = rows[i][c].clone();
            if t.is_zero() {
                continue;
            }
            for k in c..cols {
                let v = &(&piv * &rows[i][k]) - &(&t * &rows[rank][k]);
                rows[i][k] = nf(&v)?;
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// A homogeneous map of graded modules; `matrix` has the target generators
/// as rows and the source generators as columns.
#[derive(Clone, Debug)]
pub struct ModuleMap<K: Field> {
    source: FPModule<K>,
    target: FPModule<K>,
    matrix: Matrix<K>,
    degree: i64,
}

impl<K: Field> ModuleMap<K> {
    /// Checks shapes, homogeneity (inferring the degree of the map) and
    /// well-definedness `Φ · relations(source) ⊆ relations(target)`.
    pub fn new(source: &FPModule<K>, target: &FPModule<K>, entries: Vec<Vec<Polynomial<K>>>) -> Result<Self> {
        source.same_ring(target)?;
        let r = source.ring();
        let (m, s) = (target.num_generators(), source.num_generators());
        if entries.len() != m || entries.iter().any(|row| row.len() != s) {
            return Err(Error::Dimension(format!("a map {s} -> {m} needs a {m}x{s} matrix")));
        }
        let mut degree = None;
        for (i, row) in entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                let p = r.reduce(p);
                if p.is_zero() {
                    continue;
                }
                if !p.is_homogeneous(r.weights()) {
                    return Err(Error::Input("map entries must be homogeneous".into()));
                }
                let d = p.degree(r.weights()).unwrap() as i64 + target.generator_degrees()[i] - source.generator_degrees()[j];
                match degree {
                    None => degree = Some(d),
                    Some(e) if e != d => return Err(Error::Input("map is not homogeneous of a single degree".into())),
                    _ => {}
                }
            }
        }
        let degree = degree.unwrap_or(0);
        let cd = source.generator_degrees().iter().map(|d| d + degree).collect();
        let matrix = Matrix::new(r.field(), r.nvars(), entries, target.generator_degrees().to_vec(), cd)?.map_entries(|p| r.reduce(p));
        let map = ModuleMap { source: source.clone(), target: target.clone(), matrix, degree };
        for c in source.presentation().columns() {
            if !target.is_zero_vector(&map.matrix.apply(&c))? {
                return Err(Error::Input("map does not respect the relations of its source".into()));
            }
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: FPModule<K>, target: FPModule<K>, matrix: Matrix<K>, degree: i64) -> Self {
        let cd = source.generator_degrees().iter().map(|d| d + degree).collect();
        let matrix = matrix.with_degrees(target.generator_degrees().to_vec(), cd);
        ModuleMap { source, target, matrix, degree }
    }

    pub fn identity(m: &FPModule<K>) -> Self {
        let r = m.ring();
        Self::new_unchecked(m.clone(), m.clone(), Matrix::identity(r.field(), r.nvars(), m.generator_degrees().to_vec()), 0)
    }

    /// Multiplication by a homogeneous ring element.
    pub fn multiplication(m: &FPModule<K>, f: &Polynomial<K>) -> Result<Self> {
        let r = m.ring();
        let k = m.num_generators();
        let mut entries = vec![vec![r.zero(); k]; k];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = f.clone();
        }
        Self::new(m, m, entries)
    }

    pub fn source(&self) -> &FPModule<K> {
        &self.source
    }

    pub fn target(&self) -> &FPModule<K> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<K> {
        &self.matrix
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn apply(&self, v: &ModuleElement<K>) -> Result<ModuleElement<K>> {
        if v.module.num_generators() != self.source.num_generators() {
            return Err(Error::Dimension("element not in the source".into()));
        }
        self.target.element(self.matrix.apply(&v.coords))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap<K>) -> Result<ModuleMap<K>> {
        if self.target.num_generators() != other.source.num_generators() {
            return Err(Error::Dimension("maps do not compose".into()));
        }
        let m = other.matrix.mul(&self.matrix);
        Ok(ModuleMap::new_unchecked(self.source.clone(), other.target.clone(), m, self.degree + other.degree))
    }

    /// Every source generator maps to zero.
    pub fn is_zero(&self) -> Result<bool> {
        for j in 0..self.matrix.cols() {
            if !self.target.is_zero_vector(&self.matrix.column(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Vectors of the source free cover generating the preimage of the
    /// target relations, i.e. the kernel.
    fn kernel_vectors(&self) -> Result<Vec<FreeElement<K>>> {
        let r = self.source.ring();
        let s = self.source.num_generators();
        if s == 0 {
            return Ok(Vec::new());
        }
        if self.target.num_generators() == 0 {
            return Ok((0..s).map(|i| self.source.generator(i).coords).collect());
        }
        let big = self.matrix.hconcat(self.target.presentation());
        let syz = r.syzygies(&big)?;
        Ok((0..syz.cols())
            .map(|j| FreeElement::from_components((0..s).map(|i| syz.get(i, j).clone()).collect()))
            .collect())
    }

    /// `ker φ` with its inclusion into the source.
    pub fn kernel(&self) -> Result<(FPModule<K>, ModuleMap<K>)> {
        let vecs = self.kernel_vectors()?;
        self.source.submodule(&vecs)
    }

    /// `coker φ` with the projection from the target.
    pub fn cokernel(&self) -> Result<(FPModule<K>, ModuleMap<K>)> {
        let cols = self.matrix.columns();
        let r = self.target.ring();
        let extra = Matrix::from_columns(r.field(), r.nvars(), self.target.generator_degrees().to_vec(), &cols, self.matrix.col_degrees().to_vec());
        let q = FPModule::new(r, self.target.presentation().hconcat(&extra))?;
        let id = Matrix::identity(r.field(), r.nvars(), self.target.generator_degrees().to_vec());
        Ok((q.clone(), ModuleMap::new_unchecked(self.target.clone(), q, id, 0)))
    }

    /// `im φ` as a submodule of the target.
    pub fn image(&self) -> Result<(FPModule<K>, ModuleMap<K>)> {
        self.target.submodule(&self.matrix.columns())
    }

    pub fn is_injective(&self) -> Result<bool> {
        self.kernel()?.0.is_zero()
    }

    pub fn is_surjective(&self) -> Result<bool> {
        self.cokernel()?.0.is_zero()
    }

    /// Whether `v` (in the source free cover) lies in the image of `other`,
    /// a map into the same module.
    pub fn image_contains(&self, v: &FreeElement<K>) -> Result<bool> {
        let r = self.target.ring();
        let mut cols = self.target.presentation().columns();
        cols.extend(self.matrix.columns());
        let gb = module_basis(r.field(), r.nvars(), r.weights(), self.target.generator_degrees(), &cols, r.ideal_basis(), r.limits())?;
        gb.contains(v)
    }
}

/// `kernel_of_map`: the kernel, its inclusion, and the exactness checks
/// (inclusion then `φ` vanishes; kernel vectors lie in the included image).
pub fn kernel_of_map<K: Field>(phi: &ModuleMap<K>) -> Result<(FPModule<K>, ModuleMap<K>)> {
    let (k, incl) = phi.kernel()?;
    if !incl.then(phi)?.is_zero()? {
        return Err(Error::Structural("kernel inclusion does not compose to zero".into()));
    }
    for v in phi.kernel_vectors()? {
        if !incl.image_contains(&v)? {
            return Err(Error::Structural("kernel generator outside the included image".into()));
        }
    }
    Ok((k, incl))
}

/// A residue class in a module, by coordinates in its free cover.
#[derive(Clone, Debug)]
pub struct ModuleElement<K: Field> {
    pub module: FPModule<K>,
    pub coords: FreeElement<K>,
}

impl<K: Field> ModuleElement<K> {
    pub fn new(module: &FPModule<K>, coords: FreeElement<K>) -> Result<Self> {
        if coords.rank() != module.num_generators() {
            return Err(Error::Dimension(format!(
                "element of rank {} in a module with {} generators",
                coords.rank(),
                module.num_generators()
            )));
        }
        let r = module.ring();
        let coords = FreeElement::from_components(coords.components().iter().map(|p| r.reduce(p)).collect());
        Ok(ModuleElement { module: module.clone(), coords })
    }

    pub fn is_zero(&self) -> Result<bool> {
        self.module.is_zero_vector(&self.coords)
    }

    pub fn add(&self, other: &Self) -> Self {
        ModuleElement { module: self.module.clone(), coords: self.coords.add(&other.coords) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        ModuleElement { module: self.module.clone(), coords: self.coords.sub(&other.coords) }
    }

    pub fn scale(&self, r: &Polynomial<K>) -> Self {
        let ring = self.module.ring();
        ModuleElement {
            module: self.module.clone(),
            coords: FreeElement::from_components(self.coords.scale(r).components().iter().map(|p| ring.reduce(p)).collect()),
        }
    }

    /// `self ⊗ other` inside `tensor(self.module, other.module)`.
    pub fn tensor(&self, other: &Self, product: &FPModule<K>) -> Result<Self> {
        let c = self.coords.tensor(&other.coords);
        ModuleElement::new(product, c)
    }

    pub fn degree(&self) -> Option<i64> {
        let r = self.module.ring();
        self.coords.homogeneous_degree(r.weights(), self.module.generator_degrees())
    }

    /// Whether the class lies in `m·M`, i.e. it dies in `M/mM`.
    pub fn in_max_ideal_times_module(&self) -> Result<bool> {
        let r = self.module.ring();
        let q = self.module.quotient_by_ideal(&r.max_ideal())?;
        q.is_zero_vector(&self.coords)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.sub(other).is_zero()
    }

    pub fn to_text(&self) -> String {
        self.coords.to_text(self.module.ring().names())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ring::RingFlags;

    fn qxy() -> RingContext<Rationals> {
        RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap()
    }

    fn node() -> RingContext<PrimeField> {
        let flags = RingFlags { reduced: true, complete_intersection: true };
        RingContext::quotient(PrimeField::new(5).unwrap(), &["x", "y"], &["x*y"], &[&["x"], &["y"]], flags).unwrap()
    }

    #[test]
    fn minimal_presentation_examples() {
        let r = qxy();
        let id = FPModule::new(&r, Matrix::identity(Rationals, 2, vec![0, 0])).unwrap();
        let mp = id.minimal_presentation().unwrap();
        assert_eq!((mp.nu, mp.is_free), (0, true));
        let k = FPModule::coker_text(&r, &[&["x"], &["y"]]).unwrap();
        let mp = k.minimal_presentation().unwrap();
        assert_eq!((mp.nu, mp.is_free), (2, false));
        let m = FPModule::coker_text(&r, &[&["x", "1"], &["y", "0"]]).unwrap();
        let mp = m.minimal_presentation().unwrap();
        assert_eq!(mp.nu, 1);
        assert_eq!(mp.module.presentation().cols(), 1);
        assert_eq!(mp.module.presentation().get(0, 0).to_text(r.names()), "y");
    }

    #[test]
    fn tensor_unit_and_node_power() {
        let r = qxy();
        let m = FPModule::coker_text(&r, &[&["x"], &["y"]]).unwrap();
        let rm = FPModule::free_rank(&r, 1).tensor(&m).unwrap();
        assert_eq!(rm.nu().unwrap(), 2);
        let n = node();
        let rx = FPModule::cyclic_text(&n, &["x"]).unwrap();
        let t3 = rx.tensor_power(3).unwrap();
        let mp = t3.minimal_presentation().unwrap();
        assert_eq!(mp.nu, 1);
        assert_eq!(mp.module.presentation().to_text(n.names()), "[[x]]");
    }

    #[test]
    fn kernel_of_multiplication() {
        let n = node();
        let free = FPModule::free_rank(&n, 1);
        let x = n.parse("x").unwrap();
        let phi = ModuleMap::multiplication(&free, &x).unwrap();
        let (k, incl) = kernel_of_map(&phi).unwrap();
        assert_eq!(k.nu().unwrap(), 1);
        assert_eq!(incl.matrix().get(0, 0).to_text(n.names()), "y");
        let r = RingContext::polynomial_ring(Rationals, &["x"]).unwrap();
        let free = FPModule::free_rank(&r, 1);
        let phi = ModuleMap::multiplication(&free, &r.parse("x").unwrap()).unwrap();
        assert!(kernel_of_map(&phi).unwrap().0.is_zero().unwrap());
    }

    #[test]
    fn ill_defined_map_is_rejected() {
        let r = qxy();
        let rx = FPModule::cyclic_text(&r, &["x"]).unwrap();
        let free = FPModule::free_rank(&r, 1);
        assert!(ModuleMap::new(&rx, &free, vec![vec![r.one()]]).is_err());
    }

    #[test]
    fn dual_generator_examples() {
        let r = qxy();
        let free = FPModule::free_rank(&r, 1);
        assert_eq!(free.dual_generators().unwrap().rows(), 1);
        let rx = FPModule::cyclic_text(&r, &["x"]).unwrap();
        assert_eq!(rx.dual_generators().unwrap().rows(), 0);
        let k = FPModule::coker_text(&r, &[&["x"], &["y"]]).unwrap();
        let psi = k.dual_generators().unwrap();
        assert_eq!(psi.rows(), 1);
        let row: Vec<String> = psi.row(0).iter().map(|p| p.to_text(r.names())).collect();
        assert!(row == ["y", "-x"] || row == ["-y", "x"], "{row:?}");
    }

    #[test]
    fn annihilator_examples() {
        let r = qxy();
        let k = FPModule::cyclic_text(&r, &["x", "y"]).unwrap();
        let a = k.annihilator(Some(&k.generator(0))).unwrap();
        assert!(a.equals(&r.max_ideal()).unwrap());
        assert!(k.annihilator(Some(&k.zero_element())).unwrap().is_unit());
        assert!(k.annihilator(None).unwrap().equals(&r.max_ideal()).unwrap());
    }

    #[test]
    fn presentation_ideal_examples() {
        let r = qxy();
        let k = FPModule::coker_text(&r, &[&["x"], &["y"]]).unwrap();
        let (i, nzd) = k.presentation_ideal().unwrap();
        assert!(i.equals(&r.max_ideal()).unwrap() && nzd);
        let n = node();
        let rx = FPModule::cyclic_text(&n, &["x"]).unwrap();
        assert!(!rx.presentation_ideal().unwrap().1);
        let rxy = FPModule::cyclic_text(&n, &["x + y"]).unwrap();
        assert!(rxy.presentation_ideal().unwrap().1);
        assert!(matches!(FPModule::free_rank(&n, 2).presentation_ideal(), Err(Error::Degenerate(_))));
    }

    #[test]
    fn rank_examples() {
        let r = qxy();
        assert_eq!(FPModule::free_rank(&r, 3).rank().unwrap().rank, Some(3));
        let k = FPModule::coker_text(&r, &[&["x"], &["y"]]).unwrap();
        assert_eq!(k.rank().unwrap().rank, Some(1));
        let n = node();
        let rx = FPModule::cyclic_text(&n, &["x"]).unwrap();
        let info = rx.rank().unwrap();
        assert_eq!(info.per_prime, vec![1, 0]);
        assert!(!info.has_rank());
    }

    #[test]
    fn hilbert_function_of_node() {
        let n = node();
        let free = FPModule::free_rank(&n, 1);
        assert_eq!(free.hilbert_function(0).unwrap(), 1);
        assert_eq!(free.hilbert_function(3).unwrap(), 2);
    }
}
