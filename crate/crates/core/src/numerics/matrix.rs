use super::complex::Complex;
use std::fmt;
use std::ops::Mul;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize, bits: u32) -> CMatrix {
        CMatrix { rows, cols, data: vec![Complex::zero(bits); rows * cols] }
    }

    pub fn identity(n: usize, bits: u32) -> CMatrix {
        let mut m = CMatrix::zeros(n, n, bits);
        for i in 0..n {
            m.set(i, i, Complex::one(bits));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex) -> CMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &Complex {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Submatrix made of the given rows.
    pub fn select_rows(&self, rows: &[usize]) -> CMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        CMatrix { rows: rows.len(), cols: self.cols, data }
    }

    pub fn prec(&self) -> u32 {
        self.data.iter().map(|z| z.prec()).max().unwrap_or(64)
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let bits = self.prec().max(other.prec());
        let mut out = CMatrix::zeros(self.rows, other.cols, bits);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.data[i * other.cols + j] += &(a * b);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Complex) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.abs_f64()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.sub(other).max_abs()
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Option<CMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let bits = self.prec();
        let mut a = self.clone();
        let mut inv = CMatrix::identity(n, bits);
        for c in 0..n {
            let p = (c..n).max_by(|&i, &j| a.get(i, c).abs_f64().total_cmp(&a.get(j, c).abs_f64()))?;
            if a.get(p, c).is_zero() {
                return None;
            }
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let r = a.get(c, c).recip();
            for j in 0..n {
                let v = a.get(c, j) * &r;
                a.set(c, j, v);
                let v = inv.get(c, j) * &r;
                inv.set(c, j, v);
            }
            for i in 0..n {
                if i == c || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..n {
                    let v = a.get(i, j) - &(&f * a.get(c, j));
                    a.set(i, j, v);
                    let v = inv.get(i, j) - &(&f * inv.get(c, j));
                    inv.set(i, j, v);
                }
            }
        }
        Some(inv)
    }

    pub fn to_f64(&self) -> Vec<Vec<(f64, f64)>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|z| z.to_f64()).collect()).collect()
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|z| z.to_decimal(8)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let b = 256;
        let m = CMatrix::from_fn(3, 3, |i, j| Complex::from_f64((i * 3 + j) as f64 + if i == j { 5.0 } else { 0.0 }, (i as f64) - (j as f64), b));
        let inv = m.inverse().unwrap();
        assert!(m.matmul(&inv).max_abs_diff(&CMatrix::identity(3, b)) < 1e-70);
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = CMatrix::zeros(2, 2, 128);
        assert!(m.inverse().is_none());
    }
}
