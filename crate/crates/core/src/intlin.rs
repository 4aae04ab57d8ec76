//! Exact integer linear algebra: Hermite normal form, kernel lattices, rank,
//! lattice equality and Smith invariant factors.
//!
//! Lattices are always stored as row-style Hermite normal forms: the leading
//! entry of each row is positive, leading columns strictly increase, and every
//! entry above a leading entry lies in `[0, pivot)`. That form is unique for a
//! subgroup of `Z^n`, so lattice equality is an equality of matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{LieError, Result};

/// Sparse row: `(column, value)` pairs with increasing columns and no zeros.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from rows; all rows must have length `cols`.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LieError::DimensionMismatch(r.len(), cols));
            }
            data.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_sparse_rows(cols: usize, rows: &[SparseRow]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn sparse_row(&self, i: usize) -> SparseRow {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `self · v`
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(LieError::DimensionMismatch(v.len(), self.cols));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let r: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            write!(f, "[{}]", r.join(","))?;
        }
        write!(f, "]")
    }
}

// row_a * a + row_b * b
fn combine(ra: &SparseRow, a: &BigInt, rb: &SparseRow, b: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(ra.len().max(rb.len()));
    let (mut i, mut j) = (0, 0);
    while i < ra.len() || j < rb.len() {
        let next = match (ra.get(i), rb.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                i += 1;
                j += 1;
                (*ca, va * a + vb * b)
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                i += 1;
                (*ca, va * a)
            }
            (Some((ca, va)), None) => {
                i += 1;
                (*ca, va * a)
            }
            (_, Some((cb, vb))) => {
                j += 1;
                (*cb, vb * b)
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

fn negate(r: &mut SparseRow) {
    for (_, v) in r.iter_mut() {
        *v = -std::mem::take(v);
    }
}

/// Online integer echelon form over the columns `< limit`, using unimodular
/// row operations only (division steps and 2×2 extended-gcd steps).
struct Echelon {
    limit: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    fn new(limit: usize) -> Self {
        Echelon { limit, pivots: BTreeMap::new() }
    }

    /// Reduce `v` against the pivots. Returns the residual if its leading column
    /// is `>= limit`; otherwise `v` became a pivot or vanished.
    fn insert(&mut self, mut v: SparseRow) -> Option<SparseRow> {
        loop {
            let (col, b) = match v.first() {
                None => return None,
                Some((c, _)) if *c >= self.limit => return Some(v),
                Some((c, b)) => (*c, b.clone()),
            };
            let Some(p) = self.pivots.get_mut(&col) else {
                if b.is_negative() {
                    negate(&mut v);
                }
                self.pivots.insert(col, v);
                return None;
            };
            let a = p[0].1.clone();
            if (&b % &a).is_zero() {
                v = combine(&v, &BigInt::one(), p, &-(&b / &a));
            } else {
                let e = a.extended_gcd(&b);
                let (g, s, t) = (e.gcd, e.x, e.y);
                let new_p = combine(p, &s, &v, &t);
                v = combine(p, &(&b / &g), &v, &-(&a / &g));
                *p = new_p;
                if p[0].1.is_negative() {
                    negate(p);
                }
            }
        }
    }

    /// Pivot rows in Hermite normal form (entries above pivots reduced).
    fn into_hnf(self) -> Vec<SparseRow> {
        let mut rows: Vec<SparseRow> = self.pivots.into_values().collect();
        for i in 0..rows.len() {
            let (pc, pv) = rows[i][0].clone();
            for k in 0..i {
                let entry = rows[k].iter().find(|(c, _)| *c == pc).map(|(_, v)| v.clone());
                if let Some(e) = entry {
                    let q = e.div_floor(&pv);
                    if !q.is_zero() {
                        rows[k] = combine(&rows[k], &BigInt::one(), &rows[i], &-q);
                    }
                }
            }
        }
        rows
    }
}

/// A subgroup of `Z^ambient`, stored as its Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Lattice { ambient, basis: IntMatrix::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Lattice { ambient, basis: IntMatrix::identity(ambient) }
    }

    /// The lattice generated by arbitrary (possibly dependent) rows.
    pub fn from_generators<T: Into<BigInt> + Clone>(ambient: usize, rows: &[Vec<T>]) -> Result<Self> {
        let m = IntMatrix::from_rows(ambient, rows)?;
        Ok(Self::from_sparse((0..m.rows()).map(|i| m.sparse_row(i)).collect(), ambient))
    }

    pub(crate) fn from_sparse(rows: Vec<SparseRow>, ambient: usize) -> Self {
        let mut ech = Echelon::new(ambient);
        for r in rows {
            ech.insert(r);
        }
        let hnf = ech.into_hnf();
        Lattice { ambient, basis: IntMatrix::from_sparse_rows(ambient, &hnf) }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Canonical (HNF) basis rows.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(LieError::DimensionMismatch(v.len(), self.ambient));
        }
        let mut rows: Vec<Vec<BigInt>> = self.basis.row_vecs();
        rows.push(v.to_vec());
        Ok(Lattice::from_generators(self.ambient, &rows)? == *self)
    }

    /// A lattice is saturated when it equals `(L ⊗ Q) ∩ Z^n`, i.e. all of
    /// its Smith invariant factors are 1.
    pub fn is_saturated(&self) -> bool {
        invariant_factors(&self.basis).iter().all(|d| d.is_one())
    }
}

/// `{v ∈ Z^cols : M·v = 0}`, in Hermite normal form. The result is always
/// saturated in `Z^cols`.
pub fn kernel_basis(m: &IntMatrix) -> Lattice {
    let t = m.transpose();
    let rows: Vec<SparseRow> = (0..t.rows()).map(|i| t.sparse_row(i)).collect();
    left_kernel(&rows, m.rows())
}

/// `{c ∈ Z^rows.len() : Σ c_i · rows_i = 0}` where each row lives in `Z^width`.
pub(crate) fn left_kernel(rows: &[SparseRow], width: usize) -> Lattice {
    let n = rows.len();
    let mut ech = Echelon::new(width);
    let mut kernel = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        debug_assert!(r.iter().all(|(c, _)| *c < width));
        let mut aug = r.clone();
        aug.push((width + i, BigInt::one()));
        if let Some(res) = ech.insert(aug) {
            kernel.push(res.into_iter().map(|(c, v)| (c - width, v)).collect());
        }
    }
    Lattice::from_sparse(kernel, n)
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    let mut ech = Echelon::new(m.cols());
    for i in 0..m.rows() {
        ech.insert(m.sparse_row(i));
    }
    ech.pivots.len()
}

pub(crate) fn rank_sparse(rows: &[SparseRow], width: usize) -> usize {
    let mut ech = Echelon::new(width);
    for r in rows {
        ech.insert(r.clone());
    }
    ech.pivots.len()
}

/// Equality of generated subgroups.
pub fn lattice_equal(a: &Lattice, b: &Lattice) -> Result<bool> {
    if a.ambient != b.ambient {
        return Err(LieError::DimensionMismatch(a.ambient, b.ambient));
    }
    Ok(a.basis == b.basis)
}

/// Nonzero diagonal entries of the Smith normal form, each dividing the next.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.row_vecs();
    let (rows, cols) = (m.rows(), m.cols());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let mut done = true;
        let p = a[t][t].clone();
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&p);
            if !q.is_zero() {
                for j in t..cols {
                    let d = &a[t][j] * &q;
                    a[i][j] -= d;
                }
            }
            if !a[i][t].is_zero() {
                done = false;
            }
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&p);
            if !q.is_zero() {
                for i in t..rows {
                    let d = &a[i][t] * &q;
                    a[i][j] -= d;
                }
            }
            if !a[t][j].is_zero() {
                done = false;
            }
        }
        if !done {
            continue;
        }
        // pivot must divide the rest of the block
        let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero()));
        if let Some(i) = offender {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(cols, rows).unwrap()
    }

    fn lat(cols: usize, rows: &[Vec<i64>]) -> Lattice {
        Lattice::from_generators(cols, rows).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&mat(2, &[vec![2, 4]]));
        assert_eq!(k, lat(2, &[vec![2, -1]]));
        assert_eq!(k.basis().row_vecs(), vec![vec![BigInt::from(2), BigInt::from(-1)]]);
        assert!(kernel_basis(&IntMatrix::identity(2)).is_zero());
        assert_eq!(kernel_basis(&IntMatrix::zeros(2, 2)), Lattice::full(2));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&mat(2, &[vec![1, 0], vec![0, 1]])), 2);
        assert_eq!(rank(&mat(2, &[vec![2, 4], vec![1, 2]])), 1);
        assert_eq!(rank(&mat(1, &[vec![0]])), 0);
    }

    #[test]
    fn lattice_equality_examples() {
        assert!(lattice_equal(&lat(2, &[vec![1, 0], vec![0, 1]]), &lat(2, &[vec![1, 1], vec![0, 1]])).unwrap());
        assert!(!lattice_equal(&lat(2, &[vec![2, 0]]), &lat(2, &[vec![1, 0]])).unwrap());
        assert!(lattice_equal(&Lattice::zero(3), &Lattice::zero(3)).unwrap());
        assert!(lattice_equal(&Lattice::zero(3), &Lattice::zero(2)).is_err());
    }

    #[test]
    fn hnf_is_reduced() {
        let l = lat(3, &[vec![3, 5, 7], vec![0, 2, 9], vec![6, 10, 14]]);
        let b = l.basis().row_vecs();
        assert_eq!(b.len(), 2);
        // entries above the second pivot (column 1, value 2) lie in [0, 2)
        assert!(b[0][1] >= BigInt::zero() && b[0][1] < b[1][1]);
    }

    #[test]
    fn smith_invariants() {
        let m = mat(2, &[vec![2, 4], vec![6, 8]]);
        assert_eq!(invariant_factors(&m), vec![BigInt::from(2), BigInt::from(4)]);
        assert!(!lat(2, &[vec![2, 0]]).is_saturated());
        assert!(lat(2, &[vec![2, -1]]).is_saturated());
    }

    #[test]
    fn contains_checks_membership() {
        let l = lat(2, &[vec![2, 0], vec![0, 3]]);
        assert!(l.contains(&[BigInt::from(4), BigInt::from(-3)]).unwrap());
        assert!(!l.contains(&[BigInt::from(1), BigInt::from(0)]).unwrap());
    }
}
