//! Syzygies and minimal generating sets, over `S = k[x]` or over a quotient
//! `S/I` given by a Gröbner basis of `I`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::free::FreeElement;
use crate::poly::groebner::{buchberger, GroebnerBasis, Input, Limits, Vector};
use crate::poly::matrix::Matrix;
use crate::poly::order::{MonomialOrder, TermOrder};
use crate::poly::polynomial::Polynomial;

/// Pads `f * e_i` for `f` in the ideal basis and every position `i`.
fn ideal_multiples<K: Field>(ideal: &GroebnerBasis<K>, rank: usize, offset: usize, total: usize) -> Vec<FreeElement<K>> {
    let mut out = Vec::new();
    for g in ideal.generators() {
        let f = g.component(0);
        for i in 0..rank {
            let mut comps = vec![Polynomial::zero(f.field(), f.nvars()); total];
            comps[offset + i] = f.clone();
            out.push(FreeElement::from_components(comps));
        }
    }
    out
}

/// Reduces every component modulo the ideal.
pub fn reduce_mod_ideal<K: Field>(ideal: &GroebnerBasis<K>, v: &FreeElement<K>) -> Result<FreeElement<K>> {
    if ideal.is_empty() {
        return Ok(v.clone());
    }
    let comps = v
        .components()
        .iter()
        .map(|p| Ok(ideal.normal_form(&FreeElement::from_components(vec![p.clone()]))?.into_components().remove(0)))
        .collect::<Result<Vec<_>>>()?;
    Ok(FreeElement::from_components(comps))
}

pub fn reduce_polynomial<K: Field>(ideal: &GroebnerBasis<K>, p: &Polynomial<K>) -> Result<Polynomial<K>> {
    if ideal.is_empty() {
        return Ok(p.clone());
    }
    Ok(ideal.normal_form(&FreeElement::from_components(vec![p.clone()]))?.into_components().remove(0))
}

/// Gröbner basis of the submodule of `S^rank` generated by `gens` and
/// `I * S^rank`; membership in it is membership in the image of `gens` in
/// `(S/I)^rank`.
pub fn module_basis<K: Field>(
    field: K,
    nvars: usize,
    weights: &[u32],
    shifts: &[i64],
    gens: &[FreeElement<K>],
    ideal: &GroebnerBasis<K>,
    limits: &Limits,
) -> Result<GroebnerBasis<K>> {
    let rank = shifts.len();
    let mut all = ideal_multiples(ideal, rank, 0, rank);
    all.extend(gens.iter().cloned());
    GroebnerBasis::compute(field, nvars, &all, MonomialOrder::default(), weights, shifts, limits)
}

/// Indices of a minimal homogeneous subset of `gens` generating, together
/// with `fixed`, the same submodule of `(S/I)^rank` as `gens` and `fixed`.
/// Generators are visited by degree, ties in input order.
pub fn minimal_subset<K: Field>(
    field: K,
    weights: &[u32],
    shifts: &[i64],
    gens: &[FreeElement<K>],
    fixed: &[FreeElement<K>],
    ideal: &GroebnerBasis<K>,
    limits: &Limits,
) -> Result<Vec<usize>> {
    let rank = shifts.len();
    for g in gens.iter().chain(fixed) {
        if !g.is_zero() && g.homogeneous_degree(weights, shifts).is_none() {
            return Err(Error::Input("minimal generators need homogeneous input".into()));
        }
    }
    let ord = TermOrder::new(MonomialOrder::default(), weights.to_vec(), shifts.to_vec());
    let mut inputs: Vec<Input<K>> = gens.iter().map(|g| Input { v: Vector::from_free(g, &ord), counted: true }).collect();
    for g in ideal_multiples(ideal, rank, 0, rank).iter().chain(fixed) {
        inputs.push(Input { v: Vector::from_free(g, &ord), counted: false });
    }
    let out = buchberger(field, &ord, rank, inputs, limits)?;
    let mut idx = out.minimal;
    idx.sort_unstable();
    Ok(idx)
}

/// Columns generating `{v in (S/I)^n : A v = 0 in (S/I)^m}`.
///
/// Homogeneous input gives a minimal generating set, reduced modulo `I`;
/// otherwise the generators are those read off an elimination basis.
/// Row degrees of the result are the column degrees of `a`.
pub fn syzygies_mod<K: Field>(
    a: &Matrix<K>,
    weights: &[u32],
    ideal: &GroebnerBasis<K>,
    limits: &Limits,
) -> Result<Matrix<K>> {
    let field = a.field();
    let nvars = a.nvars();
    let (m, n) = (a.rows(), a.cols());
    let out_rows = a.col_degrees().to_vec();
    if n == 0 {
        return Ok(Matrix::zero(field, nvars, out_rows, Vec::new()));
    }
    let homogeneous = a.check_homogeneous(weights).is_ok();
    let total = m + n;
    let mut shifts: Vec<i64> = a.row_degrees().to_vec();
    shifts.extend_from_slice(a.col_degrees());
    let mut gens = Vec::with_capacity(n + ideal.len() * m);
    for j in 0..n {
        let mut comps = a.column(j).into_components();
        for k in 0..n {
            comps.push(if k == j { Polynomial::one(field, nvars) } else { Polynomial::zero(field, nvars) });
        }
        gens.push(FreeElement::from_components(comps));
    }
    gens.extend(ideal_multiples(ideal, m, 0, total));
    let gb = GroebnerBasis::compute(field, nvars, &gens, MonomialOrder::default(), weights, &shifts, limits)?;
    let mut syz: Vec<FreeElement<K>> = Vec::new();
    for (pos, g) in gb.leading_terms().iter().zip(gb.generators()) {
        if pos.0 < m {
            continue;
        }
        let v = FreeElement::from_components(g.into_components().split_off(m));
        let v = reduce_mod_ideal(ideal, &v)?;
        if !v.is_zero() {
            syz.push(v);
        }
    }
    if homogeneous {
        let keep = minimal_subset(field, weights, &out_rows, &syz, &[], ideal, limits)?;
        syz = keep.into_iter().map(|i| syz[i].clone()).collect();
        syz.sort_by_key(|v| v.homogeneous_degree(weights, &out_rows).unwrap_or(0));
    }
    let col_degrees = syz.iter().map(|v| v.homogeneous_degree(weights, &out_rows).unwrap_or(0)).collect();
    Ok(Matrix::from_columns(field, nvars, out_rows, &syz, col_degrees))
}

/// Syzygies over the polynomial ring itself.
pub fn syzygies<K: Field>(a: &Matrix<K>, weights: &[u32], limits: &Limits) -> Result<Matrix<K>> {
    let zero = GroebnerBasis::compute(a.field(), a.nvars(), &[], MonomialOrder::default(), weights, &[0], limits)?;
    syzygies_mod(a, weights, &zero, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::expr::parse_poly_expr;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn mat<K: Field>(field: K, rows: &[&[&str]]) -> Matrix<K> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_poly_expr(s).unwrap().eval(field, &names()).unwrap()).collect())
            .collect();
        Matrix::with_inferred_degrees(field, 2, &[1, 1], entries, None).unwrap()
    }

    #[test]
    fn koszul_relation() {
        let a = mat(Rationals, &[&["x", "y"]]);
        let s = syzygies(&a, &[1, 1], &Limits::default()).unwrap();
        assert_eq!(s.cols(), 1);
        let col = s.column(0);
        let t: Vec<String> = col.components().iter().map(|p| p.to_text(&names())).collect();
        assert!(t == ["y", "-x"] || t == ["-y", "x"], "{t:?}");
        assert!(a.mul(&s).is_zero());
    }

    #[test]
    fn injective_map_has_no_syzygies() {
        let a = Matrix::identity(Rationals, 2, vec![0, 0]);
        assert_eq!(syzygies(&a, &[1, 1], &Limits::default()).unwrap().cols(), 0);
    }

    #[test]
    fn zero_row_does_not_change_kernel() {
        let f5 = PrimeField::new(5).unwrap();
        let a = mat(f5, &[&["x", "y"], &["0", "0"]]);
        let s = syzygies(&a, &[1, 1], &Limits::default()).unwrap();
        assert_eq!(s.cols(), 1);
        assert!(a.mul(&s).is_zero());
        assert_eq!(s.col_degrees(), &[2]);
    }

    #[test]
    fn annihilator_in_quotient() {
        // ann(x) in k[x,y]/(xy) is (y).
        let f5 = PrimeField::new(5).unwrap();
        let xy = parse_poly_expr("x*y").unwrap().eval(f5, &names()).unwrap();
        let ideal = crate::poly::groebner::ideal_basis(f5, 2, &[xy], &[1, 1], &Limits::default()).unwrap();
        let a = mat(f5, &[&["x"]]);
        let s = syzygies_mod(&a, &[1, 1], &ideal, &Limits::default()).unwrap();
        assert_eq!(s.cols(), 1);
        assert_eq!(s.get(0, 0).to_text(&names()), "y");
    }

    #[test]
    fn minimal_subset_drops_redundant() {
        let f = Rationals;
        let p = |s: &str| parse_poly_expr(s).unwrap().eval(f, &names()).unwrap();
        let gens = vec![
            FreeElement::from_components(vec![p("x")]),
            FreeElement::from_components(vec![p("x*y")]),
            FreeElement::from_components(vec![p("y")]),
            FreeElement::from_components(vec![p("x + y")]),
        ];
        let zero = crate::poly::groebner::ideal_basis(f, 2, &[], &[1, 1], &Limits::default()).unwrap();
        let keep = minimal_subset(f, &[1, 1], &[0], &gens, &[], &zero, &Limits::default()).unwrap();
        assert_eq!(keep, vec![0, 2]);
    }
}
