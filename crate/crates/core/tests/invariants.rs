//! Structural invariants of the module calculus on small random modules.

use proptest::prelude::*;

use torsionlab_core::frobenius::{frobenius_functor, restrict_scalars, tor_frobenius};
use torsionlab_core::homology::{koszul_depth, pd, tor, ProjectiveDimension};
use torsionlab_core::poly::monomial::Monomial;
use torsionlab_core::torsion::torsion_split;
use torsionlab_core::{FPModule, Field, Matrix, Polynomial, PrimeField, Rationals, RingContext, RingFlags};

/// Coefficients of a linear presentation: `rows × cols × nvars`.
type Linear = Vec<Vec<Vec<i64>>>;

fn linear_matrix<K: Field>(ring: &RingContext<K>, c: &Linear) -> Matrix<K> {
    let (fld, n) = (ring.field(), ring.nvars());
    let rows = c.len();
    let cols = c[0].len();
    let mut a = Matrix::zero(fld, n, vec![0; rows], vec![1; cols]);
    for (i, row) in c.iter().enumerate() {
        for (j, coeffs) in row.iter().enumerate() {
            let terms = coeffs.iter().enumerate().map(|(v, &k)| (Monomial::variable(n, v, 1), fld.from_i64(k)));
            a.set(i, j, Polynomial::from_terms(fld, n, terms));
        }
    }
    a
}

fn linear_module<K: Field>(ring: &RingContext<K>, c: &Linear) -> FPModule<K> {
    FPModule::new(ring, linear_matrix(ring, c)).expect("linear presentations are homogeneous")
}

fn linear(nvars: usize, max_rows: usize, max_cols: usize) -> impl Strategy<Value = Linear> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(prop::collection::vec(-1i64..=1, nvars), c), r)
    })
}

fn f3_plane() -> RingContext<PrimeField> {
    RingContext::polynomial_ring(PrimeField::new(3).unwrap(), &["x", "y"]).unwrap()
}

fn node(p: u32) -> RingContext<PrimeField> {
    let flags = RingFlags { reduced: true, complete_intersection: true };
    RingContext::quotient(PrimeField::new(p).unwrap(), &["x", "y"], &["x*y"], &[&["x"], &["y"]], flags).unwrap()
}

fn same_hilbert<K: Field>(a: &FPModule<K>, b: &FPModule<K>, up_to: i64) -> bool {
    (0..=up_to).all(|d| a.hilbert_function(d).unwrap() == b.hilbert_function(d).unwrap())
}

/// Symbolic determinant by cofactor expansion along the first row.
fn det<K: Field>(m: &[Vec<Polynomial<K>>]) -> Polynomial<K> {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero(m[0][0].field(), m[0][0].nvars());
    for j in 0..m.len() {
        let minor: Vec<Vec<_>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect()).collect();
        let t = &m[0][j] * &det(&minor);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
}

/// Largest `k` with a nonzero `k × k` minor.
fn determinantal_rank<K: Field>(a: &Matrix<K>) -> usize {
    (1..=a.rows().min(a.cols()))
        .rev()
        .find(|&k| {
            subsets(a.rows(), k).iter().any(|rs| {
                subsets(a.cols(), k).iter().any(|cs| {
                    let sub: Vec<Vec<_>> = rs.iter().map(|&i| cs.iter().map(|&j| a.get(i, j).clone()).collect()).collect();
                    !det(&sub).is_zero()
                })
            })
        })
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn tensor_commutes_and_multiplies_nu(a in linear(2, 2, 2), b in linear(2, 2, 2)) {
        let r = f3_plane();
        let (m, n) = (linear_module(&r, &a), linear_module(&r, &b));
        let (mn, nm) = (m.tensor(&n).unwrap(), n.tensor(&m).unwrap());
        prop_assert!(same_hilbert(&mn, &nm, 3));
        prop_assert_eq!(mn.nu().unwrap(), m.nu().unwrap() * n.nu().unwrap());
    }

    #[test]
    fn tensor_associates(a in linear(2, 1, 2), b in linear(2, 2, 1), c in linear(2, 1, 2)) {
        let r = f3_plane();
        let (m, n, p) = (linear_module(&r, &a), linear_module(&r, &b), linear_module(&r, &c));
        let left = m.tensor(&n).unwrap().tensor(&p).unwrap();
        let right = m.tensor(&n.tensor(&p).unwrap()).unwrap();
        prop_assert!(same_hilbert(&left, &right, 3));
    }

    #[test]
    fn element_annihilators_contain_module_annihilator(a in linear(2, 2, 2)) {
        let r = f3_plane();
        let m = linear_module(&r, &a);
        let whole = m.annihilator(None).unwrap();
        for g in m.generators() {
            prop_assert!(m.annihilator(Some(&g)).unwrap().contains_ideal(&whole).unwrap());
        }
    }

    #[test]
    fn torsion_split_is_exact_over_the_node(a in linear(2, 2, 2)) {
        let m = linear_module(&node(3), &a);
        let split = torsion_split(&m).unwrap();
        prop_assert!(split.is_exact().unwrap());
        prop_assert!(torsion_split(&split.torsion_free).unwrap().is_torsion_free);
    }

    #[test]
    fn tor_is_balanced(a in linear(2, 1, 2), b in linear(2, 2, 2)) {
        let r = f3_plane();
        let (m, n) = (linear_module(&r, &a), linear_module(&r, &b));
        for i in 1..=2 {
            let (mn, nm) = (tor(&m, &n, i).unwrap(), tor(&n, &m, i).unwrap());
            prop_assert_eq!(mn.nu().unwrap(), nm.nu().unwrap());
            prop_assert!(same_hilbert(&mn, &nm, 4));
        }
    }

    #[test]
    fn frobenius_powers_compose(a in linear(2, 2, 2)) {
        let r = f3_plane();
        let m = linear_module(&r, &a);
        let twice = frobenius_functor(&frobenius_functor(&m, 1).unwrap(), 1).unwrap();
        let once = frobenius_functor(&m, 2).unwrap();
        prop_assert_eq!(twice.nu().unwrap(), once.nu().unwrap());
        prop_assert!(same_hilbert(&twice, &once, 12));
    }

    #[test]
    fn frobenius_is_exact_on_a_regular_ring(a in linear(2, 2, 2)) {
        let m = linear_module(&f3_plane(), &a);
        for i in 1..=2 {
            prop_assert!(tor_frobenius(&m, 1, i).unwrap().is_zero().unwrap());
        }
    }

    #[test]
    fn restriction_preserves_graded_dimensions(a in linear(2, 2, 2)) {
        let r = RingContext::polynomial_ring(PrimeField::new(2).unwrap(), &["x", "y"]).unwrap();
        let res = restrict_scalars(&linear_module(&r, &a), 1).unwrap();
        prop_assert!(res.hilbert_check(12).unwrap());
        prop_assert!(res.action_check().unwrap());
    }

    #[test]
    fn auslander_buchsbaum(a in linear(3, 2, 3)) {
        let r = RingContext::polynomial_ring(PrimeField::new(3).unwrap(), &["x", "y", "z"]).unwrap();
        let m = linear_module(&r, &a);
        prop_assume!(!m.is_zero().unwrap());
        let ProjectiveDimension::Finite(p) = pd(&m).unwrap() else {
            return Err(TestCaseError::fail("infinite projective dimension over a polynomial ring"));
        };
        prop_assert_eq!(p + koszul_depth(&r.variables(), &m).unwrap().depth, 3);
    }

    #[test]
    fn rank_is_corank_of_the_presentation(a in linear(2, 3, 3)) {
        let r = RingContext::polynomial_ring(Rationals, &["x", "y"]).unwrap();
        let m = linear_module(&r, &a);
        let expected = a.len() - determinantal_rank(m.presentation());
        prop_assert_eq!(m.rank().unwrap().rank, Some(expected));
    }
}

#[test]
fn frobenius_detects_infinite_projective_dimension_on_the_node() {
    let r = node(2);
    let m = FPModule::cyclic_text(&r, &["x"]).unwrap();
    assert!(!pd(&m).unwrap().is_finite());
    let nonvanishing = (1..=2).any(|i| !tor_frobenius(&m, 1, i).unwrap().is_zero().unwrap());
    assert!(nonvanishing);
    let free = FPModule::free_rank(&r, 2);
    for i in 1..=2 {
        assert!(tor_frobenius(&free, 1, i).unwrap().is_zero().unwrap());
    }
}
