//! Dense matrices over a [`FiniteField`].

use crate::error::{spec_err, Result};
use crate::gf::{FiniteField, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return spec_err("ragged matrix rows");
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.concat() })
    }

    /// Row-major data of a `rows x cols` matrix.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return spec_err(format!("expected {} entries for a {rows}x{cols} matrix, got {}", rows * cols, data.len()));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_major(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn check_in(&self, field: &FiniteField) -> Result<()> {
        match self.data.iter().find(|&&v| !field.contains(v)) {
            Some(v) => spec_err(format!("matrix entry {v} is not in GF({})", field.order())),
            None => Ok(()),
        }
    }

    /// `out = self * v`
    #[inline]
    pub fn mul_vec_into(&self, field: &FiniteField, v: &[u32], out: &mut [u32]) {
        debug_assert_eq!(v.len(), self.cols);
        for (i, o) in out.iter_mut().enumerate().take(self.rows) {
            *o = self
                .row(i)
                .iter()
                .zip(v)
                .fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b)));
        }
    }

    pub fn mul_vec(&self, field: &FiniteField, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.rows];
        self.mul_vec_into(field, v, &mut out);
        out
    }

    pub fn mul(&self, field: &FiniteField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn pow(&self, field: &FiniteField, mut e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut acc = Matrix::identity(self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base);
            }
        }
        acc
    }

    pub fn rank(&self, field: &FiniteField) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(piv) = (rank..m.rows).find(|&i| m.get(i, col) != 0) else {
                continue;
            };
            m.swap_rows(piv, rank);
            let inv = field.inv(m.get(rank, col));
            for i in 0..m.rows {
                if i != rank && m.get(i, col) != 0 {
                    let t = field.mul(m.get(i, col), inv);
                    for j in col..m.cols {
                        let v = field.sub(m.get(i, j), field.mul(t, m.get(rank, j)));
                        m.set(i, j, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self, field: &FiniteField) -> bool {
        self.rows == self.cols && self.rank(field) == self.rows
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self, field: &FiniteField) -> u32 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = 1;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&i| m.get(i, col) != 0) else {
                return 0;
            };
            if piv != col {
                m.swap_rows(piv, col);
                det = field.neg(det);
            }
            let d = m.get(col, col);
            det = field.mul(det, d);
            let inv = field.inv(d);
            for i in col + 1..n {
                let t = field.mul(m.get(i, col), inv);
                if t == 0 {
                    continue;
                }
                for j in col..n {
                    let v = field.sub(m.get(i, j), field.mul(t, m.get(col, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `det(xI - A)`, monic of degree `n`.
    ///
    /// Reduces to upper Hessenberg form by elimination similarities, then
    /// expands the determinant of `xI - H` along the subdiagonal.
    pub fn char_poly(&self, field: &FiniteField) -> Poly {
        assert_eq!(self.rows, self.cols, "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| h.get(i, j) != 0) else {
                continue;
            };
            h.swap_rows(piv, j + 1);
            h.swap_cols(piv, j + 1);
            let inv = field.inv(h.get(j + 1, j));
            for k in j + 2..n {
                let t = field.mul(h.get(k, j), inv);
                if t == 0 {
                    continue;
                }
                // row_k -= t * row_{j+1}
                for c in 0..n {
                    let v = field.sub(h.get(k, c), field.mul(t, h.get(j + 1, c)));
                    h.set(k, c, v);
                }
                // col_{j+1} += t * col_k
                for r in 0..n {
                    let v = field.add(h.get(r, j + 1), field.mul(t, h.get(r, k)));
                    h.set(r, j + 1, v);
                }
            }
        }

        // p[k] = char poly of the leading k x k block.
        let mut p: Vec<Poly> = Vec::with_capacity(n + 1);
        p.push(Poly::one());
        for k in 1..=n {
            let hkk = h.get(k - 1, k - 1);
            let lin = Poly::new(vec![field.neg(hkk), 1]);
            let mut pk = field.poly_mul(&lin, &p[k - 1]);
            let mut prod = 1u32;
            for i in 1..k {
                // h[k-i-1][k-1] times the product of subdiagonal entries
                // h[k-1][k-2] ... h[k-i][k-i-1]
                prod = field.mul(prod, h.get(k - i, k - i - 1));
                if prod == 0 {
                    break;
                }
                let coef = field.mul(prod, h.get(k - i - 1, k - 1));
                pk = field.poly_sub(&pk, &field.poly_scale(&p[k - i - 1], coef));
            }
            p.push(pk);
        }
        p.pop().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    /// Evaluates a polynomial at a square matrix (Horner).
    fn poly_at(field: &FiniteField, p: &Poly, a: &Matrix) -> Matrix {
        let n = a.rows();
        let mut acc = Matrix::zeros(n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(field, a);
            for i in 0..n {
                let v = field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    fn shifted(field: &FiniteField, a: &Matrix, c: u32) -> Matrix {
        // cI - A
        let n = a.rows();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = if i == j { field.sub(c, a.get(i, j)) } else { field.neg(a.get(i, j)) };
                m.set(i, j, v);
            }
        }
        m
    }

    #[test]
    fn companion_char_poly_is_tap_poly() {
        let f = gf(3);
        // x^3 - (a0 + a1 x + a2 x^2) with a = (1, 2, 0)
        let a = Matrix::from_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 2, 0]]).unwrap();
        assert_eq!(a.char_poly(&f), Poly::new(vec![2, 1, 0, 1]));
    }

    #[test]
    fn one_by_one() {
        let f = gf(2);
        let a = Matrix::identity(1);
        assert_eq!(a.char_poly(&f), Poly::new(vec![1, 1]));
    }

    #[test]
    fn pseudo_random_matrices_satisfy_cayley_hamilton_and_pointwise_det() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for &p in &[2u32, 3, 5, 7] {
            let f = gf(p);
            for n in 1..=7usize {
                for _ in 0..10 {
                    let data = (0..n * n).map(|_| (next() % p as u64) as u32).collect();
                    let a = Matrix::from_row_major(n, n, data).unwrap();
                    let cp = a.char_poly(&f);
                    assert_eq!(cp.degree(), Some(n));
                    assert!(cp.is_monic());
                    assert_eq!(poly_at(&f, &cp, &a), Matrix::zeros(n, n));
                    for c in 0..p {
                        assert_eq!(f.poly_eval(&cp, c), shifted(&f, &a, c).det(&f));
                    }
                }
            }
        }
    }

    #[test]
    fn rank_and_inverse() {
        let f = gf(2);
        let a = Matrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(a.rank(&f), 1);
        assert!(!a.is_invertible(&f));
        assert!(Matrix::identity(4).is_invertible(&f));
        assert_eq!(a.det(&f), 0);
    }

    #[test]
    fn power_matches_repeated_product() {
        let f = gf(3);
        let a = Matrix::from_rows(&[vec![0, 1], vec![1, 2]]).unwrap();
        let mut acc = Matrix::identity(2);
        for e in 0..20u64 {
            assert_eq!(a.pow(&f, e), acc);
            acc = acc.mul(&f, &a);
        }
    }
}
