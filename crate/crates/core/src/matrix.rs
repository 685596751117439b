//! Dense matrices over a finite field, and matrices over the truncated
//! polynomial ring `F[s]/(s^{D+1})` stored coefficient-by-coefficient.

use serde::{Deserialize, Serialize};

use crate::field::{Elem, Field};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elem>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_ints(f: &Field, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Mat { rows: r, cols: c, data: rows.iter().flatten().map(|&x| f.from_int(x)).collect() }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == Elem::ZERO)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, f: &Field, other: &Mat) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    pub fn add_assign(&mut self, f: &Field, other: &Mat) {
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, b);
        }
    }

    pub fn scale(&self, f: &Field, k: Elem) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, k)).collect() }
    }

    pub fn mul(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Elem::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn pow(&self, f: &Field, e: u64) -> Mat {
        (0..e).fold(Mat::identity(self.rows), |acc, _| acc.mul(f, self))
    }

    pub fn kron(&self, f: &Field, other: &Mat) -> Mat {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Mat::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == Elem::ZERO {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub fn map(&self, g: impl Fn(Elem) -> Elem) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| g(x)).collect() }
    }

    pub fn trace(&self, f: &Field) -> Elem {
        (0..self.rows.min(self.cols)).fold(Elem::ZERO, |acc, i| f.add(acc, self.get(i, i)))
    }

    pub fn rank(&self, f: &Field) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(piv) = (rank..m.rows).find(|&r| m.get(r, col) != Elem::ZERO) else { continue };
            if piv != rank {
                for j in 0..m.cols {
                    let (a, b) = (m.get(piv, j), m.get(rank, j));
                    m.set(piv, j, b);
                    m.set(rank, j, a);
                }
            }
            let inv = f.inv(m.get(rank, col));
            for r in rank + 1..m.rows {
                let factor = f.mul(m.get(r, col), inv);
                if factor == Elem::ZERO {
                    continue;
                }
                for j in col..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(rank, j)));
                    m.set(r, j, v);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// `rank(U^j)` for `j = 0, 1, …` up to and including the first zero power.
    pub fn rank_profile(&self, f: &Field) -> Vec<usize> {
        let mut out = vec![self.rows];
        let mut pw = self.clone();
        loop {
            let r = pw.rank(f);
            out.push(r);
            if r == 0 || out.len() > self.rows + 1 {
                break;
            }
            pw = pw.mul(f, self);
        }
        out
    }
}

/// An `n×n` matrix over `F[s]/(s^{D+1})`, stored as its coefficient
/// matrices `coeffs[k]` of `s^k`, `k = 0..=D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPolyMatrix {
    pub degree_cap: usize,
    pub coeffs: Vec<Mat>,
}

impl FpPolyMatrix {
    pub fn constant(m: Mat, degree_cap: usize) -> Self {
        let (r, c) = (m.rows, m.cols);
        let mut coeffs = vec![Mat::zeros(r, c); degree_cap + 1];
        coeffs[0] = m;
        FpPolyMatrix { degree_cap, coeffs }
    }

    pub fn identity(n: usize, degree_cap: usize) -> Self {
        Self::constant(Mat::identity(n), degree_cap)
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].rows
    }

    /// Coefficient matrix of `s^k`; zero above the cap.
    pub fn coefficient(&self, k: usize) -> Mat {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Mat::zeros(self.coeffs[0].rows, self.coeffs[0].cols))
    }

    /// `Σ_{m<p} s^{m·stride} x^m / m!`, the exponential of a `p`-nilpotent
    /// matrix evaluated at `s^stride`.
    pub fn exp(f: &Field, x: &Mat, stride: usize, degree_cap: usize) -> Self {
        let mut out = Self::identity(x.rows, degree_cap);
        let mut pw = Mat::identity(x.rows);
        for m in 1..f.characteristic() as usize {
            pw = pw.mul(f, x);
            let deg = m * stride;
            if deg > degree_cap || pw.is_zero() {
                break;
            }
            out.coeffs[deg].add_assign(f, &pw.scale(f, f.inv_factorial(m as u64)));
        }
        out
    }

    pub fn mul(&self, f: &Field, other: &FpPolyMatrix) -> FpPolyMatrix {
        let d = self.degree_cap.min(other.degree_cap);
        let (r, c) = (self.coeffs[0].rows, other.coeffs[0].cols);
        let mut coeffs = vec![Mat::zeros(r, c); d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j].add_assign(f, &a.mul(f, b));
            }
        }
        FpPolyMatrix { degree_cap: d, coeffs }
    }

    pub fn kron(&self, f: &Field, other: &FpPolyMatrix) -> FpPolyMatrix {
        let d = self.degree_cap.min(other.degree_cap);
        let (r, c) = (self.coeffs[0].rows * other.coeffs[0].rows, self.coeffs[0].cols * other.coeffs[0].cols);
        let mut coeffs = vec![Mat::zeros(r, c); d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j].add_assign(f, &a.kron(f, b));
            }
        }
        FpPolyMatrix { degree_cap: d, coeffs }
    }

    /// Entrywise `i`-th power Frobenius: `Σ a_k s^k ↦ Σ a_k^{p^i} s^{k p^i}`.
    pub fn frobenius_twist(&self, f: &Field, i: u32) -> FpPolyMatrix {
        let stride = (f.characteristic() as usize).pow(i);
        let (r, c) = (self.coeffs[0].rows, self.coeffs[0].cols);
        let mut coeffs = vec![Mat::zeros(r, c); self.degree_cap + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            let deg = k * stride;
            if deg > self.degree_cap {
                break;
            }
            coeffs[deg] = a.map(|x| (0..i).fold(x, |acc, _| f.frobenius(acc)));
        }
        FpPolyMatrix { degree_cap: self.degree_cap, coeffs }
    }
}
