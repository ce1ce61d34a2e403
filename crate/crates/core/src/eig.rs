//! Hermitian eigendecomposition (cyclic Jacobi) and the spectral calculus
//! built on it: PSD tests with witnesses, fractional powers, pseudo-inverse
//! roots, operator norms.

use num_complex::Complex64;

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::matrix::{quadratic_form, ComplexMatrix};

/// Eigendecomposition a = Q Λ Q* of a Hermitian matrix, eigenvalues sorted
/// non-increasing, eigenvectors as the (unitary) columns of `eigenvectors`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    /// Q f(Λ) Q* for a scalar function applied to the eigenvalues.
    pub fn apply_function(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let q = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let fl = f(lambda);
            if fl == 0.0 {
                continue;
            }
            for i in 0..n {
                let qi = q[(i, k)] * fl;
                for j in 0..n {
                    let v = qi * q[(j, k)].conj();
                    out[(i, j)] += v;
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply_function(|l| l)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.first().expect("non-empty spectrum")
    }

    /// Column of the eigenvector matrix belonging to the k-th sorted eigenvalue.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        (0..self.eigenvalues.len()).map(|i| self.eigenvectors[(i, k)]).collect()
    }
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi for complex Hermitian matrices: 2x2 unitary rotations
/// annihilate off-diagonal pairs until the off-diagonal mass falls below
/// tol_eig * ||a||_F. Deterministic for fixed input.
pub fn eig_hermitian(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<SpectralDecomposition> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    a.check_hermitian(cfg.tol_herm)?;
    jacobi(&a.hermitian_part(), cfg.tol_eig)
}

fn off_diagonal_mass(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(a: &ComplexMatrix, tol_eig: f64) -> Result<SpectralDecomposition> {
    let n = a.rows();
    let scale = a.frobenius_norm();
    let mut m = a.clone();
    let mut q = ComplexMatrix::identity(n);

    if scale > 0.0 {
        let threshold = tol_eig * scale;
        let mut sweeps = 0;
        while off_diagonal_mass(&m) > threshold {
            if sweeps == MAX_SWEEPS {
                return Err(Error::NoConvergence {
                    sweeps,
                    off_norm: off_diagonal_mass(&m) / scale,
                });
            }
            for p in 0..n {
                for r in (p + 1)..n {
                    rotate(&mut m, &mut q, p, r);
                }
            }
            sweeps += 1;
        }
    }

    // sort non-increasing, ties broken by original index (stable sort)
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite eigenvalues"));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| q[(i, order[j])]);
    Ok(SpectralDecomposition { eigenvalues, eigenvectors })
}

/// One complex Jacobi rotation annihilating m[(p, r)].
fn rotate(m: &mut ComplexMatrix, q: &mut ComplexMatrix, p: usize, r: usize) {
    let beta = m[(p, r)];
    let b = beta.norm();
    if b == 0.0 {
        return;
    }
    let phase = beta / b; // e^{i phi}
    let alpha = m[(p, p)].re;
    let gamma = m[(r, r)].re;

    let tau = (gamma - alpha) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (tau - (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U = diag(1, conj(phase)) * [[c, s], [-s, c]] acting on the (p, r) plane:
    // U_pp = c, U_pr = s, U_rp = -s * conj(phase), U_rr = c * conj(phase)
    let upp = Complex64::new(c, 0.0);
    let upr = Complex64::new(s, 0.0);
    let urp = -phase.conj() * s;
    let urr = phase.conj() * c;

    let n = m.rows();
    // m <- U* m U
    for i in 0..n {
        let mip = m[(i, p)];
        let mir = m[(i, r)];
        m[(i, p)] = mip * upp + mir * urp;
        m[(i, r)] = mip * upr + mir * urr;
    }
    for j in 0..n {
        let mpj = m[(p, j)];
        let mrj = m[(r, j)];
        m[(p, j)] = upp.conj() * mpj + urp.conj() * mrj;
        m[(r, j)] = upr.conj() * mpj + urr.conj() * mrj;
    }
    // clean the pair we just annihilated and keep the diagonal real
    m[(p, r)] = Complex64::new(0.0, 0.0);
    m[(r, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(r, r)] = Complex64::new(m[(r, r)].re, 0.0);

    for i in 0..n {
        let qip = q[(i, p)];
        let qir = q[(i, r)];
        q[(i, p)] = qip * upp + qir * urp;
        q[(i, r)] = qip * upr + qir * urr;
    }
}

/// PSD verdict with the minimizing eigenvector attached on failure.
#[derive(Debug, Clone)]
pub struct PsdVerdict {
    pub psd: bool,
    pub min_eigenvalue: f64,
    /// Unit vector xi with <a xi, xi> = min eigenvalue; present iff not PSD.
    pub witness: Option<Vec<Complex64>>,
}

/// True iff the minimal eigenvalue clears -tol_psd * max(1, ||a||_2).
pub fn is_psd(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<PsdVerdict> {
    let dec = eig_hermitian(a, cfg)?;
    Ok(psd_verdict_from(&dec, cfg))
}

fn psd_verdict_from(dec: &SpectralDecomposition, cfg: &ToleranceConfig) -> PsdVerdict {
    let min = dec.min_eigenvalue();
    let op = dec.max_eigenvalue().abs().max(min.abs());
    let threshold = -cfg.tol_psd * op.max(1.0);
    if min >= threshold {
        PsdVerdict { psd: true, min_eigenvalue: min, witness: None }
    } else {
        let k = dec.eigenvalues.len() - 1;
        PsdVerdict { psd: false, min_eigenvalue: min, witness: Some(dec.eigenvector(k)) }
    }
}

/// Q Λ^α Q* for PSD a; eigenvalues in [-tol_psd*||a||_2, 0) are clipped to 0.
pub fn spectral_power(a: &ComplexMatrix, alpha: f64, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    assert!(alpha > 0.0, "exponent must be positive");
    let dec = eig_hermitian(a, cfg)?;
    let clip = clip_level(&dec, cfg);
    if dec.min_eigenvalue() < -clip {
        return Err(Error::NotPsd { min_eigenvalue: dec.min_eigenvalue() });
    }
    Ok(dec.apply_function(|l| if l <= 0.0 { 0.0 } else { l.powf(alpha) }))
}

fn clip_level(dec: &SpectralDecomposition, cfg: &ToleranceConfig) -> f64 {
    let op = dec.max_eigenvalue().abs().max(dec.min_eigenvalue().abs());
    cfg.tol_psd * op.max(1.0)
}

/// relative rank cut separating genuine kernel from rounding noise
pub const RANK_CUT: f64 = 1e-10;

/// Q Λ' Q* with Λ'_i = λ_i^{-α} above the rank cut, 0 below it.
pub fn pseudo_inverse_root(a: &ComplexMatrix, alpha: f64, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    assert!(alpha > 0.0, "exponent must be positive");
    let dec = eig_hermitian(a, cfg)?;
    let clip = clip_level(&dec, cfg);
    if dec.min_eigenvalue() < -clip {
        return Err(Error::NotPsd { min_eigenvalue: dec.min_eigenvalue() });
    }
    let cut = RANK_CUT * dec.max_eigenvalue().max(0.0);
    Ok(dec.apply_function(|l| if l > cut && l > 0.0 { l.powf(-alpha) } else { 0.0 }))
}

/// Support projection of a PSD matrix (eigenvalues above the rank cut).
pub fn support_projection(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    let dec = eig_hermitian(a, cfg)?;
    let cut = RANK_CUT * dec.max_eigenvalue().max(0.0);
    Ok(dec.apply_function(|l| if l > cut && l > 0.0 { 1.0 } else { 0.0 }))
}

/// Top singular value; works for rectangular inputs.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    let cfg = ToleranceConfig::default();
    // Gram matrix of the thinner side; exactly Hermitian by construction.
    let g = if a.cols() <= a.rows() {
        a.adjoint().matmul(a)
    } else {
        a.matmul(&a.adjoint())
    };
    let dec = jacobi(&g.hermitian_part(), cfg.tol_eig).expect("gram matrix eigendecomposition");
    dec.max_eigenvalue().max(0.0).sqrt()
}

/// <a v, v> as a real number (callers guarantee a Hermitian).
pub fn rayleigh(a: &ComplexMatrix, v: &[Complex64]) -> f64 {
    quadratic_form(a, v).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{random_hermitian, random_matrix};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn diagonal_input() {
        let a = ComplexMatrix::diag_real(&[3.0, -4.0]);
        let dec = eig_hermitian(&a, &cfg()).unwrap();
        assert_eq!(dec.eigenvalues, vec![3.0, -4.0]);
    }

    #[test]
    fn identity_spectrum() {
        let dec = eig_hermitian(&ComplexMatrix::identity(3), &cfg()).unwrap();
        assert_eq!(dec.eigenvalues, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| {
            if i != j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }
        });
        let dec = eig_hermitian(&a, &cfg()).unwrap();
        assert!((dec.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((dec.eigenvalues[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn reconstruction_and_unitarity_random() {
        let mut rng = crate::rng_from_seed(42);
        for _ in 0..100 {
            let n = 2 + (rand::Rng::gen_range(&mut rng, 0..15usize));
            let a = random_hermitian(&mut rng, n);
            let dec = eig_hermitian(&a, &cfg()).unwrap();
            let recon = dec.reconstruct();
            assert!(recon.sub(&a).frobenius_norm() <= 1e-9 * a.frobenius_norm().max(1e-300));
            let q = &dec.eigenvectors;
            let qq = q.adjoint().matmul(q);
            assert!(qq.approx_eq(&ComplexMatrix::identity(n), 1e-10));
        }
    }

    #[test]
    fn reconstruction_at_desk_scale() {
        let mut rng = crate::rng_from_seed(46);
        for &n in &[48usize, 64] {
            let a = random_hermitian(&mut rng, n);
            let dec = eig_hermitian(&a, &cfg()).unwrap();
            let recon = dec.reconstruct();
            assert!(recon.sub(&a).frobenius_norm() <= 1e-10 * a.frobenius_norm());
            let q = &dec.eigenvectors;
            assert!(q.adjoint().matmul(q).approx_eq(&ComplexMatrix::identity(n), 1e-10));
        }
    }

    #[test]
    fn psd_examples() {
        let c = cfg();
        assert!(is_psd(&ComplexMatrix::identity(2), &c).unwrap().psd);
        let v = is_psd(&ComplexMatrix::diag_real(&[1.0, -0.5]), &c).unwrap();
        assert!(!v.psd);
        let w = v.witness.unwrap();
        // witness is e2 up to phase
        assert!(w[0].norm() < 1e-9 && (w[1].norm() - 1.0).abs() < 1e-9);
        assert!(rayleigh(&ComplexMatrix::diag_real(&[1.0, -0.5]), &w) < 0.0);
        let zero = ComplexMatrix::zeros(3, 3);
        assert!(is_psd(&zero, &c).unwrap().psd);
    }

    #[test]
    fn psd_of_gram_matrices() {
        let c = cfg();
        let mut rng = crate::rng_from_seed(11);
        for _ in 0..100 {
            let b = random_matrix(&mut rng, 4, 4);
            let g = b.adjoint().matmul(&b);
            assert!(is_psd(&g, &c).unwrap().psd);
        }
    }

    #[test]
    fn spectral_power_examples() {
        let c = cfg();
        let a = ComplexMatrix::diag_real(&[4.0, 9.0]);
        let r = spectral_power(&a, 0.5, &c).unwrap();
        assert!(r.approx_eq(&ComplexMatrix::diag_real(&[2.0, 3.0]), 1e-10));
        let id = ComplexMatrix::identity(3);
        assert!(spectral_power(&id, 0.37, &c).unwrap().approx_eq(&id, 1e-12));
        let s = spectral_power(&ComplexMatrix::diag_real(&[16.0]), 0.25, &c).unwrap();
        assert!(s.approx_eq(&ComplexMatrix::diag_real(&[2.0]), 1e-12));
    }

    #[test]
    fn spectral_power_round_trips() {
        let c = cfg();
        let mut rng = crate::rng_from_seed(12);
        for _ in 0..20 {
            let a = crate::matrix::random_psd(&mut rng, 5);
            let one = spectral_power(&a, 1.0, &c).unwrap();
            assert!(one.sub(&a).frobenius_norm() <= 1e-10 * a.frobenius_norm());
            let half = spectral_power(&a, 0.5, &c).unwrap();
            let back = half.matmul(&half);
            assert!(back.sub(&a).frobenius_norm() <= 1e-8 * a.frobenius_norm());
        }
    }

    #[test]
    fn spectral_power_rejects_indefinite() {
        let a = ComplexMatrix::diag_real(&[1.0, -1.0]);
        assert!(matches!(spectral_power(&a, 0.5, &cfg()), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn pseudo_inverse_root_examples() {
        let c = cfg();
        let a = ComplexMatrix::diag_real(&[4.0, 0.0]);
        let r = pseudo_inverse_root(&a, 0.5, &c).unwrap();
        assert!(r.approx_eq(&ComplexMatrix::diag_real(&[0.5, 0.0]), 1e-12));
        let id = ComplexMatrix::identity(2);
        assert!(pseudo_inverse_root(&id, 1.0, &c).unwrap().approx_eq(&id, 1e-12));
        let b = ComplexMatrix::diag_real(&[9.0, 1.0]);
        let rb = pseudo_inverse_root(&b, 0.5, &c).unwrap();
        assert!(rb.approx_eq(&ComplexMatrix::diag_real(&[1.0 / 3.0, 1.0]), 1e-12));
        // product with a^alpha gives the support projection
        let prod = spectral_power(&a, 0.5, &c).unwrap().matmul(&r);
        assert!(prod.approx_eq(&ComplexMatrix::diag_real(&[1.0, 0.0]), 1e-12));
    }

    #[test]
    fn operator_norm_examples() {
        assert!((operator_norm(&ComplexMatrix::diag_real(&[3.0, -4.0])) - 4.0).abs() < 1e-10);
        let rect = ComplexMatrix::from_fn(1, 2, |_, j| Complex64::new(if j == 0 { 3.0 } else { 4.0 }, 0.0));
        assert!((operator_norm(&rect) - 5.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| Complex64::new((i * 2 + j) as f64, 1.0));
        assert!(matches!(eig_hermitian(&a, &cfg()), Err(Error::NotHermitian { .. })));
    }
}
