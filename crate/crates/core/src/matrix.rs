//! Dense complex matrices: the carrier type for every element of the toolkit.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Matrix unit E_{ij}: 1 in the (i, j) position, zeros elsewhere.
    pub fn matrix_unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::Schema("matrix needs at least one row".into()));
        }
        let c = rows[0].len();
        if c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::Schema("ragged or empty matrix rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.same_shape(other), "shape mismatch in add");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.same_shape(other), "shape mismatch in sub");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch in matmul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a * other[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }

    /// x* a x for square `a` (a = self).
    pub fn sandwich(&self, x: &Self) -> Self {
        x.adjoint().matmul(self).matmul(x)
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Kronecker product self ⊗ other.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        assert!(row0 + rows <= self.rows && col0 + cols <= self.cols, "block out of range");
        Self::from_fn(rows, cols, |i, j| self[(row0 + i, col0 + j)])
    }

    pub fn set_block(&mut self, row0: usize, col0: usize, b: &Self) {
        assert!(row0 + b.rows <= self.rows && col0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(row0 + i, col0 + j)] = b[(i, j)];
            }
        }
    }

    /// Hermitian deviation max_{ij} |a_ij - conj(a_ji)|.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol_herm: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let scale = self.frobenius_norm();
        if scale == 0.0 {
            return true;
        }
        self.hermitian_deviation() <= tol_herm * scale
    }

    pub fn check_hermitian(&self, tol_herm: f64) -> Result<()> {
        if self.is_hermitian(tol_herm) {
            Ok(())
        } else {
            let scale = self.frobenius_norm().max(f64::MIN_POSITIVE);
            Err(Error::NotHermitian { deviation: self.hermitian_deviation() / scale })
        }
    }

    /// (a + a*)/2; cheap symmetrization before spectral work.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square());
        self.add(&self.adjoint()).scale(0.5)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.same_shape(other) && self.sub(other).max_abs_entry() <= tol
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        assert!(self.same_shape(other), "shape mismatch in hadamard");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    // ⟨u, v⟩, antilinear in the first slot
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalize(v: &mut [Complex64]) -> f64 {
    let n = vec_norm(v);
    if n > 0.0 {
        for z in v.iter_mut() {
            *z /= n;
        }
    }
    n
}

/// ⟨a v, v⟩ for square a; real for Hermitian a.
pub fn quadratic_form(a: &ComplexMatrix, v: &[Complex64]) -> Complex64 {
    inner(v, &a.apply(v))
}

pub fn random_complex(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    random_matrix(rng, n, n).hermitian_part()
}

/// Random PSD matrix b*b, Frobenius-normalized to roughly unit scale.
pub fn random_psd(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let b = random_matrix(rng, n, n);
    let g = b.adjoint().matmul(&b);
    let s = g.frobenius_norm();
    if s > 0.0 {
        g.scale(1.0 / s)
    } else {
        g
    }
}

pub fn random_unit_vector(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
    loop {
        let mut v: Vec<Complex64> = (0..n).map(|_| random_complex(rng)).collect();
        if normalize(&mut v) > 1e-6 {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_identity() {
        let mut rng = crate::rng_from_seed(7);
        let a = random_matrix(&mut rng, 3, 3);
        let id = ComplexMatrix::identity(3);
        assert!(a.matmul(&id).approx_eq(&a, 1e-15));
        assert!(id.matmul(&a).approx_eq(&a, 1e-15));
    }

    #[test]
    fn adjoint_involution() {
        let mut rng = crate::rng_from_seed(8);
        let a = random_matrix(&mut rng, 2, 4);
        assert!(a.adjoint().adjoint().approx_eq(&a, 0.0));
    }

    #[test]
    fn frobenius_example() {
        let a = ComplexMatrix::from_rows(vec![
            vec![Complex64::new(3.0, 0.0), Complex64::new(4.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert!((a.frobenius_norm() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn trace_identity() {
        assert_eq!(ComplexMatrix::identity(3).trace(), Complex64::new(3.0, 0.0));
    }

    #[test]
    fn kron_identity_blocks() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(a.kron(&b).approx_eq(&ComplexMatrix::identity(6), 0.0));
    }

    #[test]
    fn hermitian_part_is_hermitian() {
        let mut rng = crate::rng_from_seed(9);
        let a = random_matrix(&mut rng, 5, 5).hermitian_part();
        assert!(a.is_hermitian(1e-12));
    }
}
