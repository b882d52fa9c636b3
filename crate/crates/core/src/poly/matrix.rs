use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::free::FreeElement;
use crate::poly::polynomial::Polynomial;

/// A homogeneous map between graded free modules `S^cols -> S^rows`.
///
/// Entry `(i, j)` is either zero or homogeneous of degree
/// `col_degrees[j] - row_degrees[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<K: Field> {
    field: K,
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<K>>,
    row_degrees: Vec<i64>,
    col_degrees: Vec<i64>,
}

impl<K: Field> Matrix<K> {
    pub fn new(
        field: K,
        nvars: usize,
        entries: Vec<Vec<Polynomial<K>>>,
        row_degrees: Vec<i64>,
        col_degrees: Vec<i64>,
    ) -> Result<Self> {
        let rows = row_degrees.len();
        let cols = col_degrees.len();
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension(format!("expected a {rows}x{cols} matrix")));
        }
        Ok(Matrix { field, nvars, rows, cols, entries: entries.into_iter().flatten().collect(), row_degrees, col_degrees })
    }

    pub fn zero(field: K, nvars: usize, row_degrees: Vec<i64>, col_degrees: Vec<i64>) -> Self {
        let (rows, cols) = (row_degrees.len(), col_degrees.len());
        Matrix {
            field,
            nvars,
            rows,
            cols,
            entries: vec![Polynomial::zero(field, nvars); rows * cols],
            row_degrees,
            col_degrees,
        }
    }

    pub fn identity(field: K, nvars: usize, degrees: Vec<i64>) -> Self {
        let mut m = Self::zero(field, nvars, degrees.clone(), degrees);
        for i in 0..m.rows {
            m.set(i, i, Polynomial::one(field, nvars));
        }
        m
    }

    pub fn from_columns(
        field: K,
        nvars: usize,
        row_degrees: Vec<i64>,
        columns: &[FreeElement<K>],
        col_degrees: Vec<i64>,
    ) -> Self {
        debug_assert_eq!(columns.len(), col_degrees.len());
        let mut m = Self::zero(field, nvars, row_degrees, col_degrees);
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.rank(), m.rows);
            for (i, p) in c.components().iter().enumerate() {
                m.set(i, j, p.clone());
            }
        }
        m
    }

    /// Builds a matrix whose generator (row) degrees are inferred from the
    /// entries when not supplied. Each connected block of rows is shifted so
    /// that its smallest row degree is zero.
    pub fn with_inferred_degrees(
        field: K,
        nvars: usize,
        weights: &[u32],
        entries: Vec<Vec<Polynomial<K>>>,
        row_degrees: Option<Vec<i64>>,
    ) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map(|r| r.len()).unwrap_or(0);
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Input("matrix rows have different lengths".into()));
        }
        let mut deg = vec![vec![None; cols]; rows];
        for (i, row) in entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if !p.is_zero() {
                    if !p.is_homogeneous(weights) {
                        return Err(Error::Input(format!(
                            "matrix entry ({}, {}) is not homogeneous",
                            i + 1,
                            j + 1
                        )));
                    }
                    deg[i][j] = p.degree(weights).map(|d| d as i64);
                }
            }
        }
        if let Some(r) = &row_degrees {
            if r.len() != rows {
                return Err(Error::Dimension(format!("{} generator degrees for {rows} rows", r.len())));
            }
            let col_degrees = (0..cols)
                .map(|j| (0..rows).find_map(|i| deg[i][j].map(|d| r[i] + d)).unwrap_or(0))
                .collect();
            let m = Matrix::new(field, nvars, entries, r.clone(), col_degrees)?;
            m.check_homogeneous(weights)?;
            return Ok(m);
        }
        let conflict = || Error::Input("matrix is not homogeneous for any choice of generator degrees".into());
        let mut rdeg: Vec<Option<i64>> = vec![None; rows];
        let mut cdeg: Vec<Option<i64>> = vec![None; cols];
        // Propagate col - row = deg over each connected block of the support.
        for start in 0..rows {
            if rdeg[start].is_some() {
                continue;
            }
            rdeg[start] = Some(0);
            let mut block_rows = vec![start];
            let mut block_cols = Vec::new();
            let mut queue: VecDeque<(bool, usize)> = VecDeque::from([(true, start)]);
            while let Some((is_row, k)) = queue.pop_front() {
                if is_row {
                    let r = rdeg[k].unwrap();
                    for j in 0..cols {
                        if let Some(d) = deg[k][j] {
                            match cdeg[j] {
                                None => {
                                    cdeg[j] = Some(r + d);
                                    block_cols.push(j);
                                    queue.push_back((false, j));
                                }
                                Some(c) if c != r + d => return Err(conflict()),
                                _ => {}
                            }
                        }
                    }
                } else {
                    let c = cdeg[k].unwrap();
                    for i in 0..rows {
                        if let Some(d) = deg[i][k] {
                            match rdeg[i] {
                                None => {
                                    rdeg[i] = Some(c - d);
                                    block_rows.push(i);
                                    queue.push_back((true, i));
                                }
                                Some(r) if r != c - d => return Err(conflict()),
                                _ => {}
                            }
                        }
                    }
                }
            }
            let min = block_rows.iter().map(|&i| rdeg[i].unwrap()).min().unwrap();
            for &i in &block_rows {
                rdeg[i] = rdeg[i].map(|d| d - min);
            }
            for &j in &block_cols {
                cdeg[j] = cdeg[j].map(|d| d - min);
            }
        }
        let row_degrees: Vec<i64> = rdeg.into_iter().map(|d| d.unwrap_or(0)).collect();
        let col_degrees: Vec<i64> = cdeg.into_iter().map(|d| d.unwrap_or(0)).collect();
        let m = Matrix::new(field, nvars, entries, row_degrees, col_degrees)?;
        m.check_homogeneous(weights)?;
        Ok(m)
    }

    pub fn field(&self) -> K {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_degrees(&self) -> &[i64] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[i64] {
        &self.col_degrees
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<K> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<K>) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = &Polynomial<K>> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn column(&self, j: usize) -> FreeElement<K> {
        FreeElement::from_components((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<FreeElement<K>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial<K>> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn check_homogeneous(&self, weights: &[u32]) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let p = self.get(i, j);
                if p.is_zero() {
                    continue;
                }
                let want = self.col_degrees[j] - self.row_degrees[i];
                let ok = p.is_homogeneous(weights) && p.degree(weights).map(|d| d as i64) == Some(want);
                if !ok {
                    return Err(Error::Input(format!(
                        "entry ({}, {}) is not homogeneous of degree {want}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &FreeElement<K>) -> FreeElement<K> {
        assert_eq!(v.rank(), self.cols, "vector rank must match matrix columns");
        let comps = (0..self.rows)
            .map(|i| {
                let mut acc = Polynomial::zero(self.field, self.nvars);
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v.component(j).is_zero() {
                        acc = &acc + &(a * v.component(j));
                    }
                }
                acc
            })
            .collect();
        FreeElement::from_components(comps)
    }

    pub fn mul(&self, other: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Matrix::zero(self.field, self.nvars, self.row_degrees.clone(), other.col_degrees.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix<K> {
        let mut out = Matrix::zero(
            self.field,
            self.nvars,
            self.col_degrees.iter().map(|d| -d).collect(),
            self.row_degrees.iter().map(|d| -d).collect(),
        );
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product, indexing rows `(i, k) -> i*b.rows + k`.
    pub fn kronecker(&self, b: &Matrix<K>) -> Matrix<K> {
        let rd = self.row_degrees.iter().flat_map(|x| b.row_degrees.iter().map(move |y| x + y)).collect();
        let cd = self.col_degrees.iter().flat_map(|x| b.col_degrees.iter().map(move |y| x + y)).collect();
        let mut out = Matrix::zero(self.field, self.nvars, rd, cd);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        let e = b.get(k, l);
                        if !e.is_zero() {
                            out.set(i * b.rows + k, j * b.cols + l, a * e);
                        }
                    }
                }
            }
        }
        out
    }

    /// `[self | other]`; row degrees must agree.
    pub fn hconcat(&self, other: &Matrix<K>) -> Matrix<K> {
        assert_eq!(self.rows, other.rows);
        let mut cd = self.col_degrees.clone();
        cd.extend_from_slice(&other.col_degrees);
        let mut out = Matrix::zero(self.field, self.nvars, self.row_degrees.clone(), cd);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn block_diagonal(&self, other: &Matrix<K>) -> Matrix<K> {
        let mut rd = self.row_degrees.clone();
        rd.extend_from_slice(&other.row_degrees);
        let mut cd = self.col_degrees.clone();
        cd.extend_from_slice(&other.col_degrees);
        let mut out = Matrix::zero(self.field, self.nvars, rd, cd);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix<K> {
        let cd = idx.iter().map(|&j| self.col_degrees[j]).collect();
        let mut out = Matrix::zero(self.field, self.nvars, self.row_degrees.clone(), cd);
        for i in 0..self.rows {
            for (nj, &j) in idx.iter().enumerate() {
                out.set(i, nj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix<K> {
        let rd = idx.iter().map(|&i| self.row_degrees[i]).collect();
        let mut out = Matrix::zero(self.field, self.nvars, rd, self.col_degrees.clone());
        for (ni, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ni, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial<K>) -> Polynomial<K>) -> Matrix<K> {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = f(e);
        }
        out
    }

    pub fn with_degrees(mut self, row_degrees: Vec<i64>, col_degrees: Vec<i64>) -> Matrix<K> {
        assert_eq!(row_degrees.len(), self.rows);
        assert_eq!(col_degrees.len(), self.cols);
        self.row_degrees = row_degrees;
        self.col_degrees = col_degrees;
        self
    }

    pub fn to_text(&self, names: &[String]) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_text(names)).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn var(i: usize) -> Polynomial<Rationals> {
        Polynomial::variable(Rationals, 2, i)
    }

    #[test]
    fn infers_generator_degrees() {
        let one = Polynomial::one(Rationals, 2);
        let zero = Polynomial::zero(Rationals, 2);
        let m = Matrix::with_inferred_degrees(Rationals, 2, &[1, 1], vec![vec![var(0), one], vec![var(1), zero]], None)
            .unwrap();
        assert_eq!(m.row_degrees(), &[0, 0]);
        assert_eq!(m.col_degrees(), &[1, 0]);
    }

    #[test]
    fn rejects_inconsistent_degrees() {
        let x2 = var(0).pow(2);
        let r = Matrix::with_inferred_degrees(
            Rationals,
            2,
            &[1, 1],
            vec![vec![var(0), var(1)], vec![var(1), x2]],
            None,
        );
        assert!(r.is_err());
    }

    #[test]
    fn kronecker_and_transpose_track_degrees() {
        let col = Matrix::new(Rationals, 2, vec![vec![var(0)], vec![var(1)]], vec![0, 0], vec![1]).unwrap();
        let k = col.kronecker(&col);
        assert_eq!((k.rows(), k.cols()), (4, 1));
        assert_eq!(k.col_degrees(), &[2]);
        assert_eq!(k.get(1, 0), &(&var(0) * &var(1)));
        let t = col.transpose();
        assert_eq!(t.row_degrees(), &[-1]);
        assert_eq!(t.col_degrees(), &[0, 0]);
        assert!(t.check_homogeneous(&[1, 1]).is_ok());
    }
}
