//! The scalar-diagonal 2x2 corner operator system: block matrices
//! [[lambda 1, x], [y, lambda 1]] over M_n, the positivity criterion
//! (x = y* and lambda >= ||x||), the rank-one compression S sending an
//! element to 2 lambda 1, and positive elements at matrix levels k.

use num_complex::Complex64;
use rand::Rng;

use crate::config::ToleranceConfig;
use crate::eig::{operator_norm, spectral_power};
#[cfg(test)]
use crate::eig::is_psd;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::order::random_contraction;

/// One element [[lambda 1, x], [y, lambda 1]] with n x n blocks.
#[derive(Debug, Clone)]
pub struct PaulsenElement {
    pub lambda: Complex64,
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
}

impl PaulsenElement {
    pub fn new(lambda: Complex64, x: ComplexMatrix, y: ComplexMatrix) -> Result<Self> {
        if !x.is_square() || !x.same_shape(&y) {
            return Err(Error::DimensionMismatch("corner blocks must be square and equal-sized".into()));
        }
        Ok(Self { lambda, x, y })
    }

    pub fn block_dim(&self) -> usize {
        self.x.rows()
    }

    /// The 2n x 2n matrix with exactly scalar diagonal blocks.
    pub fn materialize(&self) -> ComplexMatrix {
        let n = self.block_dim();
        let mut out = ComplexMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            out[(i, i)] = self.lambda;
            out[(n + i, n + i)] = self.lambda;
        }
        out.set_block(0, n, &self.x);
        out.set_block(n, 0, &self.y);
        out
    }

    /// The closed-form criterion: positive iff x = y*, lambda real, and
    /// lambda >= ||x||.
    pub fn criterion(&self, tol: f64) -> bool {
        let adjoint_ok = self.y.sub(&self.x.adjoint()).max_abs_entry() <= tol;
        let real_ok = self.lambda.im.abs() <= tol;
        adjoint_ok && real_ok && self.lambda.re >= operator_norm(&self.x) - tol
    }

    /// Distance of lambda to the criterion boundary ||x||; used to skip the
    /// tolerance-width band in sampling comparisons.
    pub fn boundary_distance(&self) -> f64 {
        (self.lambda.re - operator_norm(&self.x)).abs()
    }
}

/// The operator system over H = C^n with X = all of M_n, together with the
/// compression S([[l, x], [y, l]]) = 2 l 1.
#[derive(Debug, Clone, Copy)]
pub struct PaulsenSystem {
    pub n: usize,
}

impl PaulsenSystem {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    /// u = diag(1, -1) blockwise; conjugation by u realizes S - I exactly.
    pub fn sign_flip(&self) -> ComplexMatrix {
        let n = self.n;
        ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| {
            if i != j {
                Complex64::new(0.0, 0.0)
            } else if i < n {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(-1.0, 0.0)
            }
        })
    }

    pub fn apply_s(&self, e: &PaulsenElement) -> ComplexMatrix {
        ComplexMatrix::identity(2 * self.n).scale_complex(e.lambda * 2.0)
    }

    pub fn apply_s_minus_identity(&self, e: &PaulsenElement) -> ComplexMatrix {
        self.apply_s(e).sub(&e.materialize())
    }

    /// Draws an element straddling the positivity boundary: mostly honest
    /// candidates x = y* with real lambda near ||x||, plus adjoint-broken and
    /// complex-lambda cases.
    pub fn sample_boundary_element(&self, rng: &mut impl Rng) -> PaulsenElement {
        let n = self.n;
        let x = crate::matrix::random_matrix(rng, n, n).scale(0.5);
        let norm = operator_norm(&x);
        let case = rng.gen_range(0..10u32);
        match case {
            0 => {
                // adjoint condition broken
                let y = crate::matrix::random_matrix(rng, n, n).scale(0.5);
                PaulsenElement::new(Complex64::new(norm * 1.5 + 0.1, 0.0), x, y).expect("shape")
            }
            1 => {
                // lambda off the real axis
                let y = x.adjoint();
                PaulsenElement::new(Complex64::new(norm + 0.1, 0.3), x, y).expect("shape")
            }
            _ => {
                let y = x.adjoint();
                let factor = rng.gen_range(0.5..1.5);
                PaulsenElement::new(Complex64::new(norm * factor, 0.0), x, y).expect("shape")
            }
        }
    }
}

/// A positive element of M_k(A) in its natural 2n x 2n-block arrangement,
/// together with the data it was assembled from.
#[derive(Debug, Clone)]
pub struct LevelKElement {
    pub n: usize,
    pub k: usize,
    /// k x k PSD matrix of diagonal scalars.
    pub lambda: ComplexMatrix,
    /// kn x kn matrix of corner blocks x_{rs}.
    pub corner: ComplexMatrix,
}

impl LevelKElement {
    /// The 2kn x 2kn matrix with (r, s) block [[lambda_rs 1, x_rs], [x*_sr, lambda_rs 1]].
    pub fn materialize(&self) -> ComplexMatrix {
        let (n, k) = (self.n, self.k);
        let mut out = ComplexMatrix::zeros(2 * n * k, 2 * n * k);
        for r in 0..k {
            for s in 0..k {
                let x_rs = self.corner.block(r * n, s * n, n, n);
                let y_rs = self.corner.block(s * n, r * n, n, n).adjoint();
                for i in 0..n {
                    out[(r * 2 * n + i, s * 2 * n + i)] = self.lambda[(r, s)];
                    out[(r * 2 * n + n + i, s * 2 * n + n + i)] = self.lambda[(r, s)];
                }
                for i in 0..n {
                    for j in 0..n {
                        out[(r * 2 * n + i, s * 2 * n + n + j)] = x_rs[(i, j)];
                        out[(r * 2 * n + n + i, s * 2 * n + j)] = y_rs[(i, j)];
                    }
                }
            }
        }
        out
    }

    /// Levelwise image under S: every A-block is compressed to 2 lambda_rs 1.
    pub fn apply_s(&self) -> ComplexMatrix {
        let (n, k) = (self.n, self.k);
        let mut out = ComplexMatrix::zeros(2 * n * k, 2 * n * k);
        for r in 0..k {
            for s in 0..k {
                let two_lambda = self.lambda[(r, s)] * 2.0;
                for i in 0..2 * n {
                    out[(r * 2 * n + i, s * 2 * n + i)] = two_lambda;
                }
            }
        }
        out
    }

    /// I_k (x) diag(1, -1): conjugation by this realizes (S - I) levelwise.
    pub fn sign_flip(&self) -> ComplexMatrix {
        let (n, k) = (self.n, self.k);
        ComplexMatrix::from_fn(2 * n * k, 2 * n * k, |i, j| {
            if i != j {
                Complex64::new(0.0, 0.0)
            } else if i % (2 * n) < n {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(-1.0, 0.0)
            }
        })
    }
}

/// Draws a PSD element of M_k(A): Lambda PSD in M_k, K a contraction in
/// M_{kn}, and corner X = (Lambda (x) 1)^{1/2} K (Lambda (x) 1)^{1/2}.
pub fn sample_positive_level_k(
    n: usize,
    k: usize,
    rng: &mut impl Rng,
    cfg: &ToleranceConfig,
) -> Result<LevelKElement> {
    let lambda_raw = crate::matrix::random_psd(rng, k);
    // keep the scalar part well scaled
    let lambda = lambda_raw.scale(1.0 / operator_norm(&lambda_raw).max(1e-6));
    let contraction = random_contraction(rng, k * n, cfg)?;
    let big = lambda.kron(&ComplexMatrix::identity(n));
    let half = spectral_power(&big, 0.5, cfg)?;
    let corner = half.matmul(&contraction).matmul(&half);
    Ok(LevelKElement { n, k, lambda, corner })
}
