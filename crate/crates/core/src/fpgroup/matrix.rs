//! Exact integer matrices with arbitrary-precision entries: Smith and Hermite
//! normal forms and the lattice operations built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
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
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows).map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// row[i] += c * row[j]
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.cols {
            let v = &self[(j, k)] * c;
            self[(i, k)] += v;
        }
    }

    /// col[i] += c * col[j]
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.rows {
            let v = &self[(k, j)] * c;
            self[(k, i)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -&self[(i, k)];
            self[(i, k)] = v;
        }
    }

    fn negate_col(&mut self, i: usize) {
        for k in 0..self.rows {
            let v = -&self[(k, i)];
            self[(k, i)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// `A = U · D · V` with `U`, `V` unimodular and `D` diagonal with
/// `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form. Pivots are the smallest nonzero absolute value in the
/// active submatrix, ties broken by row-major position.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    let d = diagonalize(a, Some((&mut u, &mut v)));
    SnfResult { u, d, v }
}

/// Diagonal of the Smith normal form, without the transforms.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let d = diagonalize(a, None);
    (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect()
}

fn diagonalize(a: &IntMatrix, mut uv: Option<(&mut IntMatrix, &mut IntMatrix)>) -> IntMatrix {
    let (r, c) = (a.rows(), a.cols());
    let mut d = a.clone();
    // Invariant: a == u * d * v. A row operation d <- E d is mirrored by
    // u <- u E^-1, a column operation d <- d F by v <- F^-1 v.
    for t in 0..r.min(c) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &d[(i, j)];
                    if !x.is_zero() && pivot.is_none_or(|(pi, pj)| x.abs() < d[(pi, pj)].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            d.swap_rows(t, pi);
            d.swap_cols(t, pj);
            if let Some((u, v)) = uv.as_mut() {
                u.swap_cols(t, pi);
                v.swap_rows(t, pj);
            }

            let p = d[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&p);
                d.add_row(i, t, &-&q);
                if let Some((u, _)) = uv.as_mut() {
                    u.add_col(t, i, &q);
                }
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&p);
                d.add_col(j, t, &-&q);
                if let Some((_, v)) = uv.as_mut() {
                    v.add_row(t, j, &q);
                }
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    if let Some((u, _)) = uv.as_mut() {
                        u.add_col(i, t, &-BigInt::one());
                    }
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            if let Some((u, _)) = uv.as_mut() {
                u.negate_col(t);
            }
        }
    }
    d
}

/// Row-style Hermite normal form `H = T · M`: rows in echelon form with
/// positive pivots and entries above each pivot reduced into `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub t: IntMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn hermite_normal_form(m: &IntMatrix) -> HnfResult {
    let (r, c) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut t = IntMatrix::identity(r);
    let mut p = 0;
    let mut pivots = Vec::new();
    for col in 0..c {
        if p == r {
            break;
        }
        loop {
            let best = (p..r)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&i, &j| h[(i, col)].abs().cmp(&h[(j, col)].abs()).then(i.cmp(&j)));
            let Some(best) = best else { break };
            h.swap_rows(p, best);
            t.swap_rows(p, best);
            let piv = h[(p, col)].clone();
            let mut done = true;
            for i in p + 1..r {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&piv);
                h.add_row(i, p, &-&q);
                t.add_row(i, p, &-&q);
                done &= h[(i, col)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(p, col)].is_zero() {
            continue;
        }
        if h[(p, col)].is_negative() {
            h.negate_row(p);
            t.negate_row(p);
        }
        let piv = h[(p, col)].clone();
        for i in 0..p {
            let q = h[(i, col)].div_floor(&piv);
            if !q.is_zero() {
                h.add_row(i, p, &-&q);
                t.add_row(i, p, &-&q);
            }
        }
        pivots.push(col);
        p += 1;
    }
    HnfResult { h, t, rank: p, pivots }
}

/// A sublattice of `Zⁿ`, stored as its Hermite basis (canonical).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn spanned_by(generators: &IntMatrix) -> Self {
        let hnf = hermite_normal_form(generators);
        let basis = (0..hnf.rank).map(|i| hnf.h.row(i).to_vec()).collect();
        Lattice { dim: generators.cols(), basis, pivots: hnf.pivots }
    }

    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Self::spanned_by(&IntMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows_with_cols(&self.basis, self.dim)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for (row, &col) in self.basis.iter().zip(&self.pivots) {
            let (q, rem) = w[col].div_mod_floor(&row[col]);
            if !rem.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for k in col..self.dim {
                    w[k] -= &q * &row[k];
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice::spanned_by(&self.basis_matrix().stack(&other.basis_matrix()))
    }
}

/// Basis of the left kernel `{x : x · M = 0}`.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let hnf = hermite_normal_form(m);
    let rows: Vec<Vec<BigInt>> = (hnf.rank..m.rows()).map(|i| hnf.t.row(i).to_vec()).collect();
    IntMatrix::from_rows_with_cols(&rows, m.rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn check(a: &IntMatrix) -> Vec<BigInt> {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(&s.d).mul(&s.v), *a);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        diag
    }

    #[test]
    fn snf_examples() {
        assert_eq!(check(&IntMatrix::identity(3)), vec![BigInt::one(); 3]);
        assert_eq!(check(&m(&[&[2, 4], &[6, 8]])), vec![BigInt::from(2), BigInt::from(4)]);
        assert!(check(&IntMatrix::zeros(2, 3)).iter().all(Zero::is_zero));
        assert_eq!(check(&m(&[&[2, 0]])), vec![BigInt::from(2)]);
        assert_eq!(check(&m(&[&[0, 2], &[3, 0]])), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn hnf_and_lattices() {
        let l = Lattice::spanned_by(&m(&[&[2, 0], &[0, 3], &[4, 3]]));
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&[BigInt::from(6), BigInt::from(-9)]));
        assert!(!l.contains(&[BigInt::from(1), BigInt::from(0)]));
        assert_eq!(Lattice::spanned_by(&m(&[&[2, 3], &[4, 6]])), Lattice::spanned_by(&m(&[&[-2, -3]])));
        let k = left_kernel(&m(&[&[1, 2], &[2, 4], &[0, 1]]));
        assert_eq!(k.rows(), 1);
        let z = k.mul(&m(&[&[1, 2], &[2, 4], &[0, 1]]));
        assert!(z.is_zero());
    }

    #[test]
    fn determinant_matches_cofactor() {
        assert_eq!(m(&[&[2, 1], &[7, 4]]).determinant(), BigInt::from(1));
        assert_eq!(m(&[&[0, 1, 2], &[3, 4, 5], &[6, 7, 9]]).determinant(), BigInt::from(-3));
    }
}
