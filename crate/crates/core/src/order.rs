//! Order intervals [0, a], positive solids, corner truncations, the
//! quantitative off-diagonal estimates, and the monotone-chain construction.

use num_complex::Complex64;
use rand::Rng;

use crate::config::{SpaceConstants, ToleranceConfig};
use crate::eig::{eig_hermitian, is_psd, operator_norm, pseudo_inverse_root, spectral_power};
use crate::error::{Error, Result};
use crate::majorization::{symmetric_norm, Gauge};
use crate::maps::{Certificate, SuperOperator};
use crate::matrix::ComplexMatrix;

/// The order interval [0, a] in the PSD order.
#[derive(Debug, Clone)]
pub struct OrderInterval {
    upper: ComplexMatrix,
}

/// Membership verdict with the violating eigenvector on failure.
#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub member: bool,
    /// "lower" if x itself fails PSD, "upper" if a - x does.
    pub failing_side: Option<&'static str>,
    pub certificate: Option<Certificate>,
}

impl OrderInterval {
    pub fn new(upper: ComplexMatrix, cfg: &ToleranceConfig) -> Result<Self> {
        let verdict = is_psd(&upper, cfg)?;
        if !verdict.psd {
            return Err(Error::NotPsd { min_eigenvalue: verdict.min_eigenvalue });
        }
        Ok(Self { upper })
    }

    pub fn upper(&self) -> &ComplexMatrix {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.upper.rows()
    }

    pub fn member(&self, x: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<MembershipReport> {
        if !x.same_shape(&self.upper) {
            return Err(Error::DimensionMismatch(format!(
                "interval endpoint is {}x{}, candidate is {}x{}",
                self.upper.rows(),
                self.upper.cols(),
                x.rows(),
                x.cols()
            )));
        }
        let lower = is_psd(x, cfg)?;
        if !lower.psd {
            return Ok(MembershipReport {
                member: false,
                failing_side: Some("lower"),
                certificate: lower.witness.map(|vector| Certificate::PsdWitness {
                    vector,
                    value: lower.min_eigenvalue,
                }),
            });
        }
        let upper = is_psd(&self.upper.sub(x), cfg)?;
        if !upper.psd {
            return Ok(MembershipReport {
                member: false,
                failing_side: Some("upper"),
                certificate: upper.witness.map(|vector| Certificate::PsdWitness {
                    vector,
                    value: upper.min_eigenvalue,
                }),
            });
        }
        Ok(MembershipReport { member: true, failing_side: None, certificate: None })
    }

    /// Extracts the contraction w with x = ||a|| * b^{1/4} w b^{1/4}, where
    /// b = a / ||a|| is the normalized endpoint. The normalization is what
    /// makes ||w|| <= 1 hold for every member; fourth roots of an endpoint
    /// with norm above 1 would inflate w.
    pub fn parameterize(&self, x: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
        let report = self.member(x, cfg)?;
        if !report.member {
            return Err(Error::NotMember);
        }
        let s = operator_norm(&self.upper);
        if s == 0.0 {
            // interval degenerates to {0}
            return Ok(ComplexMatrix::zeros(self.dim(), self.dim()));
        }
        let normalized = self.upper.scale(1.0 / s);
        let quarter_pinv = pseudo_inverse_root(&normalized, 0.25, cfg)?;
        let w = quarter_pinv.matmul(&x.scale(1.0 / s)).matmul(&quarter_pinv).hermitian_part();

        let norm_w = operator_norm(&w);
        if norm_w > 1.0 + cfg.tol_cert {
            return Err(Error::BadRange(format!("extracted contraction has norm {norm_w}")));
        }
        let recon = self.reconstruct(&w, cfg)?;
        let err = recon.sub(x).frobenius_norm();
        if err > cfg.tol_cert * self.upper.frobenius_norm().max(1e-300) {
            return Err(Error::BadRange(format!("parameterization round trip error {err:.3e}")));
        }
        Ok(w)
    }

    /// ||a|| * b^{1/4} w b^{1/4} for the normalized endpoint b = a/||a||.
    pub fn reconstruct(&self, w: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
        let s = operator_norm(&self.upper);
        if s == 0.0 {
            return Ok(ComplexMatrix::zeros(self.dim(), self.dim()));
        }
        let quarter = spectral_power(&self.upper.scale(1.0 / s), 0.25, cfg)?;
        Ok(quarter.matmul(w).matmul(&quarter).scale(s).hermitian_part())
    }

    /// Random member x = a^{1/2} v a^{1/2} with a random contraction v.
    /// This square-root form parameterizes the interval exactly (the image of
    /// the positive unit ball under the multiplication operator of a^{1/2}
    /// is all of [0, a]); the quarter-root form of `parameterize` is only
    /// onto from inside, not a sampler.
    pub fn sample_member(&self, rng: &mut impl Rng, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
        let v = random_contraction(rng, self.dim(), cfg)?;
        let half = spectral_power(&self.upper, 0.5, cfg)?;
        Ok(half.matmul(&v).matmul(&half).hermitian_part())
    }
}

/// Random PSD contraction: eigenvalues drawn uniformly in [0, 1].
pub fn random_contraction(rng: &mut impl Rng, n: usize, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    let h = crate::matrix::random_hermitian(rng, n);
    let dec = eig_hermitian(&h, cfg)?;
    let q = &dec.eigenvectors;
    let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &w) in weights.iter().enumerate() {
        for i in 0..n {
            let qi = q[(i, k)] * w;
            for j in 0..n {
                let v = qi * q[(j, k)].conj();
                out[(i, j)] += v;
            }
        }
    }
    Ok(out.hermitian_part())
}

/// Membership in the positive solid of a finite set: 0 <= x <= y for some y.
pub fn psol_member(members: &[ComplexMatrix], x: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<bool> {
    for y in members {
        if !y.same_shape(x) {
            return Err(Error::DimensionMismatch("positive solid members must share the candidate's shape".into()));
        }
    }
    if !is_psd(x, cfg)?.psd {
        return Ok(false);
    }
    for y in members {
        if is_psd(&y.sub(x), cfg)?.psd {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Multiplication operator a -> x* a x (single Kraus element, hence CP).
pub fn multiplication_operator(x: &ComplexMatrix) -> Result<SuperOperator> {
    SuperOperator::multiplication(x)
}

/// Sampling check of [0, a*a] = { a* w a : 0 <= w <= 1 }, both inclusions.
#[derive(Debug, Clone)]
pub struct BallImageReport {
    pub holds: bool,
    pub samples_per_direction: usize,
    pub max_membership_defect: f64,
    pub max_recovery_error: f64,
}

pub fn interval_equals_ball_image(
    a: &ComplexMatrix,
    samples: usize,
    cfg: &ToleranceConfig,
) -> Result<BallImageReport> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch("symbol must be square".into()));
    }
    let n = a.rows();
    let gram = a.adjoint().matmul(a).hermitian_part();
    let interval = OrderInterval::new(gram.clone(), cfg)?;
    let m_a = SuperOperator::multiplication(a)?;
    let mut rng = crate::rng_from_seed(cfg.seed.wrapping_add(0x5eed));
    let mut holds = true;
    let mut max_defect = 0.0f64;
    let mut max_recovery = 0.0f64;

    // images of contractions land in the interval
    for _ in 0..samples {
        let w = random_contraction(&mut rng, n, cfg)?;
        let img = m_a.apply(&w)?;
        let report = interval.member(&img, cfg)?;
        if !report.member {
            holds = false;
            if let Some(cert) = &report.certificate {
                max_defect = max_defect.max(cert.value().abs());
            }
        }
    }

    // members of the interval are images of contractions
    let c = spectral_power(&gram, 0.5, cfg)?;
    let c_pinv = pseudo_inverse_root(&gram, 0.5, cfg)?;
    let u = a.matmul(&c_pinv);
    for _ in 0..samples {
        let x = interval.sample_member(&mut rng, cfg)?;
        let v = spectral_power(&x.hermitian_part(), 0.5, cfg)?.matmul(&c_pinv);
        let w = u.matmul(&v.adjoint()).matmul(&v).matmul(&u.adjoint()).hermitian_part();
        let norm_w = operator_norm(&w);
        if norm_w > 1.0 + cfg.tol_cert {
            holds = false;
            max_defect = max_defect.max(norm_w - 1.0);
        }
        let recovered = m_a.apply(&w)?;
        let err = recovered.sub(&x).frobenius_norm() / c.frobenius_norm().max(1e-300);
        max_recovery = max_recovery.max(err);
        if err > cfg.tol_cert {
            holds = false;
        }
    }

    Ok(BallImageReport {
        holds,
        samples_per_direction: samples,
        max_membership_defect: max_defect,
        max_recovery_error: max_recovery,
    })
}

/// Coordinate cut: P_n projects onto the first n basis vectors.
#[derive(Debug, Clone, Copy)]
pub struct Truncation {
    pub n: usize,
    pub dim: usize,
}

impl Truncation {
    pub fn new(n: usize, dim: usize) -> Result<Self> {
        if n > dim {
            return Err(Error::DimensionMismatch(format!("cut level {n} exceeds dimension {dim}")));
        }
        Ok(Self { n, dim })
    }
}

/// (Q x, R x, x - Qx - Rx): the two diagonal corners and the off-diagonal
/// part. The three summands reproduce x entry-exactly.
pub fn corner_truncations(
    x: &ComplexMatrix,
    t: Truncation,
) -> Result<(ComplexMatrix, ComplexMatrix, ComplexMatrix)> {
    if x.rows() != t.dim || x.cols() != t.dim {
        return Err(Error::DimensionMismatch(format!(
            "truncation dimension {} does not match matrix {}x{}",
            t.dim,
            x.rows(),
            x.cols()
        )));
    }
    let zero = Complex64::new(0.0, 0.0);
    let inside = |i: usize| i < t.n;
    let q = ComplexMatrix::from_fn(t.dim, t.dim, |i, j| if inside(i) && inside(j) { x[(i, j)] } else { zero });
    let r = ComplexMatrix::from_fn(t.dim, t.dim, |i, j| if !inside(i) && !inside(j) { x[(i, j)] } else { zero });
    let off = ComplexMatrix::from_fn(t.dim, t.dim, |i, j| if inside(i) != inside(j) { x[(i, j)] } else { zero });
    Ok((q, r, off))
}

/// Two-sided report for the off-diagonal estimate in a symmetric gauge.
#[derive(Debug, Clone)]
pub struct OffdiagReport {
    pub gauge: Gauge,
    /// ||T(x - Qx - Rx)||^2.
    pub lhs_squared: f64,
    pub norm_t_q: f64,
    pub norm_t_r: f64,
    /// 4 ||T(Qx)|| ||T(Rx)|| (symmetric-space constant).
    pub bound_symmetric: f64,
    /// 16 nu ||T(Qx)|| ||T(Rx)|| (generic normal-target constant).
    pub bound_general: f64,
    pub holds: bool,
    /// lhs_squared / (||T Qx|| ||T Rx||); measures tightness against 4.
    pub ratio: Option<f64>,
    /// Optimizer t* = (||T Rx|| / ||T Qx||)^{1/4} of the interpolation family.
    pub t_star: Option<f64>,
    /// ||T(t*^2 Qx + t*^{-2} Rx)|| at the optimizer.
    pub interpolation_value: Option<f64>,
    /// Either norm factor vanished; the bound degenerates to lhs <= tol.
    pub degenerate: bool,
}

/// Evaluates ||T(x - Qx - Rx)||^2 <= 4 ||T(Qx)|| ||T(Rx)|| for a positive map
/// into a symmetric gauge, together with the interpolation-family value at
/// the optimizing weight. Callers supply a map already known positive.
pub fn verify_offdiag_inequality(
    t: &SuperOperator,
    x: &ComplexMatrix,
    cut: Truncation,
    gauge: Gauge,
    constants: SpaceConstants,
    cfg: &ToleranceConfig,
) -> Result<OffdiagReport> {
    let (qx, rx, off) = corner_truncations(x, cut)?;
    let t_off = t.apply(&off)?;
    let t_q = t.apply(&qx)?;
    let t_r = t.apply(&rx)?;
    let lhs = symmetric_norm(&t_off, gauge)?;
    let lhs_squared = lhs * lhs;
    let norm_t_q = symmetric_norm(&t_q, gauge)?;
    let norm_t_r = symmetric_norm(&t_r, gauge)?;
    let product = norm_t_q * norm_t_r;
    let bound_symmetric = 4.0 * product;
    let bound_general = 16.0 * constants.normality * product;

    let degenerate = product <= cfg.tol_cert * cfg.tol_cert;
    let holds = if degenerate {
        lhs_squared <= cfg.tol_cert
    } else {
        lhs_squared <= bound_symmetric + cfg.tol_cert
    };

    let (ratio, t_star, interpolation_value) = if degenerate {
        (None, None, None)
    } else {
        let ts = (norm_t_r / norm_t_q).powf(0.25);
        let family = qx.scale(ts * ts).add(&rx.scale(1.0 / (ts * ts)));
        let interp = symmetric_norm(&t.apply(&family)?, gauge)?;
        (Some(lhs_squared / product), Some(ts), Some(interp))
    };

    Ok(OffdiagReport {
        gauge,
        lhs_squared,
        norm_t_q,
        norm_t_r,
        bound_symmetric,
        bound_general,
        holds,
        ratio,
        t_star,
        interpolation_value,
        degenerate,
    })
}

/// z x z* >= z x y x z* for x, y in [0, 1].
pub fn comparison_lemma_check(
    z: &ComplexMatrix,
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    cfg: &ToleranceConfig,
) -> Result<bool> {
    check_unit_range(x, "x", cfg)?;
    check_unit_range(y, "y", cfg)?;
    let left = x.sandwich(&z.adjoint());
    let right = x.matmul(y).matmul(x).sandwich(&z.adjoint());
    Ok(is_psd(&left.sub(&right).hermitian_part(), cfg)?.psd)
}

fn check_unit_range(m: &ComplexMatrix, name: &str, cfg: &ToleranceConfig) -> Result<()> {
    let low = is_psd(m, cfg)?;
    if !low.psd {
        return Err(Error::BadRange(format!("{name} is not PSD (min eigenvalue {:.3e})", low.min_eigenvalue)));
    }
    let id = ComplexMatrix::identity(m.rows());
    let high = is_psd(&id.sub(m), cfg)?;
    if !high.psd {
        return Err(Error::BadRange(format!("{name} exceeds the identity (defect {:.3e})", high.min_eigenvalue)));
    }
    Ok(())
}

/// The decreasing chain a_0 >= a_1 >= ... >= a_n built from nested spectral
/// projections, with every gap visible through x at scale > 2/3.
#[derive(Debug, Clone)]
pub struct MonotoneChain {
    pub elements: Vec<ComplexMatrix>,
    pub gap_norms: Vec<f64>,
    /// The level constant (2/3)^{1/(2n+1)}.
    pub level: f64,
}

/// Builds the chain a_k = b_0 ... b_{k-1} b_k b_{k-1} ... b_0 where
/// b_k = c * (projection onto the top n-k unit-threshold eigenvectors of x)
/// and c = (2/3)^{1/(2n+1)}. Requires n orthonormal vectors with
/// ||x xi|| >= 1; monotonicity is certified by the comparison lemma and the
/// gaps satisfy ||x(a_{k-1} - a_k)x|| > 2/3.
pub fn monotone_chain(x: &ComplexMatrix, n: usize, cfg: &ToleranceConfig) -> Result<MonotoneChain> {
    if n == 0 {
        return Err(Error::InsufficientSpectrum("chain length parameter must be positive".into()));
    }
    let verdict = is_psd(x, cfg)?;
    if !verdict.psd {
        return Err(Error::NotPsd { min_eigenvalue: verdict.min_eigenvalue });
    }
    let dec = eig_hermitian(x, cfg)?;
    let dim = x.rows();
    let above: Vec<usize> = (0..dim).filter(|&k| dec.eigenvalues[k] >= 1.0 - cfg.tol_psd).collect();
    if above.len() < n {
        return Err(Error::InsufficientSpectrum(format!(
            "need {n} orthonormal vectors with ||x xi|| >= 1, found {}",
            above.len()
        )));
    }
    let eta: Vec<Vec<Complex64>> = above.iter().take(n).map(|&k| dec.eigenvector(k)).collect();
    let c = (2.0f64 / 3.0).powf(1.0 / (2.0 * n as f64 + 1.0));

    // b_k = c * projector onto span(eta_1 .. eta_{n-k}); b_n = 0
    let mut b: Vec<ComplexMatrix> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let span = n - k;
        let mut proj = ComplexMatrix::zeros(dim, dim);
        for vec in eta.iter().take(span) {
            for i in 0..dim {
                for j in 0..dim {
                    let v = vec[i] * vec[j].conj() * c;
                    proj[(i, j)] += v;
                }
            }
        }
        b.push(proj.hermitian_part());
    }

    let mut elements = Vec::with_capacity(n + 1);
    let mut prefix = ComplexMatrix::identity(dim);
    for k in 0..=n {
        let a_k = b[k].sandwich(&prefix.adjoint()).hermitian_part();
        if k > 0 {
            // a_{k-1} >= a_k is exactly the comparison lemma at
            // (z, x, y) = (prefix up to b_{k-1}, b_{k-1}, b_k)
            let pre_prev = if k == 1 {
                ComplexMatrix::identity(dim)
            } else {
                let mut p = ComplexMatrix::identity(dim);
                for item in b.iter().take(k - 1) {
                    p = p.matmul(item);
                }
                p
            };
            if !comparison_lemma_check(&pre_prev.adjoint(), &b[k - 1], &b[k], cfg)? {
                return Err(Error::BadRange(format!("chain monotonicity failed at step {k}")));
            }
        }
        elements.push(a_k);
        prefix = prefix.matmul(&b[k]);
    }

    let mut gap_norms = Vec::with_capacity(n);
    for k in 1..=n {
        let gap = elements[k - 1].sub(&elements[k]);
        let visible = x.matmul(&gap).matmul(x);
        let norm = operator_norm(&visible);
        if norm <= 2.0 / 3.0 - cfg.tol_cert {
            return Err(Error::BadRange(format!("gap {k} has norm {norm} <= 2/3")));
        }
        gap_norms.push(norm);
    }

    Ok(MonotoneChain { elements, gap_norms, level: c })
}

/// Hilbert-Schmidt matrix of a map on the vec basis of matrix units;
/// column (i, j) holds vec(T(E_ij)).
pub fn map_matrix_on_vec(t: &SuperOperator) -> Result<ComplexMatrix> {
    let d_in = t.dim_in();
    let d_out = t.dim_out();
    let mut m = ComplexMatrix::zeros(d_out * d_out, d_in * d_in);
    for i in 0..d_in {
        for j in 0..d_in {
            let out = t.apply(&ComplexMatrix::matrix_unit(d_in, i, j))?;
            for r in 0..d_out {
                for s in 0..d_out {
                    m[(r * d_out + s, i * d_in + j)] = out[(r, s)];
                }
            }
        }
    }
    Ok(m)
}

/// Exact Hilbert-Schmidt -> Hilbert-Schmidt operator norm of T composed with
/// a corner compression ("q" for Q_n, "r" for R_n, "iq" for I - Q_n).
pub fn restricted_map_norm_s2(t: &SuperOperator, cut: Truncation, corner: &str) -> Result<f64> {
    let d = t.dim_in();
    if cut.dim != d {
        return Err(Error::DimensionMismatch("truncation does not match map input".into()));
    }
    let keep = |i: usize, j: usize| -> bool {
        match corner {
            "q" => i < cut.n && j < cut.n,
            "r" => i >= cut.n && j >= cut.n,
            "iq" => !(i < cut.n && j < cut.n),
            _ => true,
        }
    };
    let d_out = t.dim_out();
    let mut m = ComplexMatrix::zeros(d_out * d_out, d * d);
    for i in 0..d {
        for j in 0..d {
            if !keep(i, j) {
                continue;
            }
            let out = t.apply(&ComplexMatrix::matrix_unit(d, i, j))?;
            for r in 0..d_out {
                for s in 0..d_out {
                    m[(r * d_out + s, i * d + j)] = out[(r, s)];
                }
            }
        }
    }
    Ok(operator_norm(&m))
}

/// Lower-bound estimate of the restricted map norm in an arbitrary gauge,
/// from random unit-gauge samples. Reported as an estimate, never exact.
#[derive(Debug, Clone, Copy)]
pub struct NormEstimate {
    pub value: f64,
    pub is_lower_bound: bool,
    pub samples: usize,
}

pub fn estimate_restricted_norm(
    t: &SuperOperator,
    cut: Truncation,
    corner: &str,
    gauge: Gauge,
    samples: usize,
    cfg: &ToleranceConfig,
) -> Result<NormEstimate> {
    let d = t.dim_in();
    let mut rng = crate::rng_from_seed(cfg.seed.wrapping_add(0xe571));
    let mut best = 0.0f64;
    for _ in 0..samples {
        let y = crate::matrix::random_matrix(&mut rng, d, d);
        let compressed = compress_corner(&y, cut, corner);
        let denom = symmetric_norm(&compressed, gauge)?;
        if denom <= 1e-12 {
            continue;
        }
        let val = symmetric_norm(&t.apply(&compressed)?, gauge)? / denom;
        best = best.max(val);
    }
    Ok(NormEstimate { value: best, is_lower_bound: true, samples })
}

fn compress_corner(y: &ComplexMatrix, cut: Truncation, corner: &str) -> ComplexMatrix {
    let zero = Complex64::new(0.0, 0.0);
    ComplexMatrix::from_fn(y.rows(), y.cols(), |i, j| {
        let keep = match corner {
            "q" => i < cut.n && j < cut.n,
            "r" => i >= cut.n && j >= cut.n,
            "iq" => !(i < cut.n && j < cut.n),
            _ => true,
        };
        if keep { y[(i, j)] } else { zero }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{random_matrix, random_psd};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn interval_member_examples() {
        let c = cfg();
        let unit = OrderInterval::new(ComplexMatrix::identity(2), &c).unwrap();
        let half = ComplexMatrix::diag_real(&[0.5, 0.5]);
        assert!(unit.member(&half, &c).unwrap().member);

        let corner = OrderInterval::new(ComplexMatrix::diag_real(&[1.0, 0.0]), &c).unwrap();
        let outside = ComplexMatrix::diag_real(&[0.0, 0.5]);
        let report = corner.member(&outside, &c).unwrap();
        assert!(!report.member);
        assert_eq!(report.failing_side, Some("upper"));
        let cert = report.certificate.unwrap();
        match cert {
            Certificate::PsdWitness { vector, value } => {
                assert!(value < 0.0);
                assert!((vector[1].norm() - 1.0).abs() < 1e-9);
            }
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn interval_member_sandwich_construction() {
        let c = cfg();
        let mut rng = crate::rng_from_seed(51);
        for _ in 0..25 {
            let a = random_psd(&mut rng, 4);
            let interval = OrderInterval::new(a.clone(), &c).unwrap();
            let w = random_contraction(&mut rng, 4, &c).unwrap();
            let half = spectral_power(&a, 0.5, &c).unwrap();
            let x = half.matmul(&w).matmul(&half).hermitian_part();
            assert!(interval.member(&x, &c).unwrap().member);
        }
    }

    #[test]
    fn parameterize_examples() {
        let c = cfg();
        let unit = OrderInterval::new(ComplexMatrix::identity(2), &c).unwrap();
        let x = ComplexMatrix::diag_real(&[0.5, 0.5]);
        let w = unit.parameterize(&x, &c).unwrap();
        assert!(w.approx_eq(&x, 1e-10));

        // x = a with a projection endpoint recovers the support projection
        let proj = ComplexMatrix::diag_real(&[1.0, 0.0]);
        let interval = OrderInterval::new(proj.clone(), &c).unwrap();
        let w = interval.parameterize(&proj, &c).unwrap();
        assert!(w.approx_eq(&proj, 1e-10));

        // rescaled endpoint: same support projection comes back
        let scaled = OrderInterval::new(proj.scale(4.0), &c).unwrap();
        let w = scaled.parameterize(&proj.scale(4.0), &c).unwrap();
        assert!(w.approx_eq(&proj, 1e-10));

        let not_member = ComplexMatrix::diag_real(&[2.0, 0.0]);
        assert!(matches!(unit.parameterize(&not_member, &c), Err(Error::NotMember)));
    }

    #[test]
    fn parameterize_round_trip_random() {
        let c = cfg();
        let mut rng = crate::rng_from_seed(52);
        for trial in 0..200 {
            let a = if trial % 4 == 0 {
                // rank-deficient endpoint: the interval lives on a corner
                let b = random_matrix(&mut rng, 4, 2);
                let g = b.matmul(&b.adjoint()).hermitian_part();
                g.scale(1.0 / g.frobenius_norm())
            } else {
                random_psd(&mut rng, 4)
            };
            let interval = OrderInterval::new(a.clone(), &c).unwrap();
            let x = interval.sample_member(&mut rng, &c).unwrap();
            let w = interval.parameterize(&x, &c).unwrap();
            assert!(operator_norm(&w) <= 1.0 + c.tol_cert);
            let back = interval.reconstruct(&w, &c).unwrap();
            assert!(back.sub(&x).frobenius_norm() <= c.tol_cert * a.frobenius_norm());
        }
    }

    #[test]
    fn psol_examples() {
        let c = cfg();
        let id = ComplexMatrix::identity(2);
        let x = ComplexMatrix::diag_real(&[0.3, 0.9]);
        assert!(psol_member(std::slice::from_ref(&id), &x, &c).unwrap());
        let m = ComplexMatrix::diag_real(&[1.0, 0.0]);
        let y = ComplexMatrix::diag_real(&[0.0, 1.0]);
        assert!(!psol_member(std::slice::from_ref(&m), &y, &c).unwrap());
        // disjunction: dominated by the second member only
        assert!(psol_member(&[m, id], &y, &c).unwrap());
    }

    #[test]
    fn multiplication_examples() {
        let c = cfg();
        let zero = ComplexMatrix::zeros(2, 2);
        let m0 = multiplication_operator(&zero).unwrap();
        assert!(m0.apply(&ComplexMatrix::identity(2)).unwrap().approx_eq(&zero, 0.0));

        let mut rng = crate::rng_from_seed(53);
        let x = random_matrix(&mut rng, 3, 3);
        let mx = multiplication_operator(&x).unwrap();
        assert!(mx
            .apply(&ComplexMatrix::identity(3))
            .unwrap()
            .approx_eq(&x.adjoint().matmul(&x), 1e-12));
        assert!(crate::maps::check_cp(&mx, &c).unwrap().cp);

        // unitary symbol preserves spectra
        let h = crate::matrix::random_hermitian(&mut rng, 3);
        let u = eig_hermitian(&h, &c).unwrap().eigenvectors;
        let mu = multiplication_operator(&u).unwrap();
        let a = random_psd(&mut rng, 3);
        let conj = mu.apply(&a).unwrap();
        let s1 = eig_hermitian(&a, &c).unwrap().eigenvalues;
        let s2 = eig_hermitian(&conj.hermitian_part(), &c).unwrap().eigenvalues;
        for (p, q) in s1.iter().zip(&s2) {
            assert!((p - q).abs() < 1e-9);
        }
    }

    #[test]
    fn ball_image_examples() {
        let c = cfg();
        let report = interval_equals_ball_image(&ComplexMatrix::identity(2), 40, &c).unwrap();
        assert!(report.holds, "defect {:.3e} recovery {:.3e}", report.max_membership_defect, report.max_recovery_error);
        // rank-deficient symbol: the interval degenerates to the supported corner
        let report = interval_equals_ball_image(&ComplexMatrix::diag_real(&[1.0, 0.0]), 100, &c).unwrap();
        assert!(report.holds);
        let mut rng = crate::rng_from_seed(54);
        let a = random_matrix(&mut rng, 3, 3);
        let report = interval_equals_ball_image(&a, 100, &c).unwrap();
        assert!(report.holds, "recovery {:.3e}", report.max_recovery_error);
    }

    #[test]
    fn corner_truncation_examples() {
        let mut rng = crate::rng_from_seed(55);
        let x = random_matrix(&mut rng, 4, 4);
        let (q, r, off) = corner_truncations(&x, Truncation::new(0, 4).unwrap()).unwrap();
        assert!(q.approx_eq(&ComplexMatrix::zeros(4, 4), 0.0));
        assert!(r.approx_eq(&x, 0.0));
        assert!(off.approx_eq(&ComplexMatrix::zeros(4, 4), 0.0));

        let (q, r, off) = corner_truncations(&x, Truncation::new(4, 4).unwrap()).unwrap();
        assert!(q.approx_eq(&x, 0.0) && r.max_abs_entry() == 0.0 && off.max_abs_entry() == 0.0);

        // exact splitting for every cut
        for n in 0..=4 {
            let (q, r, off) = corner_truncations(&x, Truncation::new(n, 4).unwrap()).unwrap();
            assert!(q.add(&r).add(&off).approx_eq(&x, 0.0));
        }
    }

    #[test]
    fn offdiag_block_diagonal_is_degenerate_zero() {
        let c = cfg();
        let x = ComplexMatrix::diag_real(&[1.0, 2.0, 3.0, 4.0]);
        let t = SuperOperator::identity(4);
        let report = verify_offdiag_inequality(
            &t,
            &x,
            Truncation::new(2, 4).unwrap(),
            Gauge::Schatten(1.0),
            SpaceConstants::default(),
            &c,
        )
        .unwrap();
        assert!(report.holds);
        assert!(report.lhs_squared <= 1e-20);
    }

    #[test]
    fn offdiag_all_ones_example() {
        let c = cfg();
        let x = ComplexMatrix::from_fn(4, 4, |_, _| Complex64::new(1.0, 0.0));
        let t = SuperOperator::identity(4);
        let report = verify_offdiag_inequality(
            &t,
            &x,
            Truncation::new(2, 4).unwrap(),
            Gauge::Schatten(1.0),
            SpaceConstants::default(),
            &c,
        )
        .unwrap();
        assert!(report.holds);
        // all-ones: Qx and Rx are rank-one 2x2 all-ones corners with trace
        // norm 2; the off-diagonal part has singular values (2, 2)
        assert!((report.norm_t_q - 2.0).abs() < 1e-9);
        assert!((report.norm_t_r - 2.0).abs() < 1e-9);
        assert!((report.lhs_squared - 16.0).abs() < 1e-8);
        assert!((report.bound_symmetric - 16.0).abs() < 1e-8);
        assert!(report.t_star.is_some());
    }

    #[test]
    fn offdiag_monte_carlo_cp_maps() {
        let c = cfg();
        let mut rng = crate::rng_from_seed(56);
        for trial in 0..200 {
            let d = 3 + (trial % 3);
            let ks: Vec<ComplexMatrix> = (0..2).map(|_| random_matrix(&mut rng, d, d)).collect();
            let t = SuperOperator::from_kraus(ks).unwrap();
            let x = random_psd(&mut rng, d);
            let n = 1 + (trial % (d - 1));
            // the estimate holds in every symmetric gauge on the target
            for gauge in [Gauge::Schatten(1.0), Gauge::Schatten(2.0), Gauge::KyFan(1 + trial % d)] {
                let report = verify_offdiag_inequality(
                    &t,
                    &x,
                    Truncation::new(n, d).unwrap(),
                    gauge,
                    SpaceConstants::default(),
                    &c,
                )
                .unwrap();
                assert!(
                    report.holds,
                    "trial {trial} {}: lhs^2 {} > bound {}",
                    gauge.describe(),
                    report.lhs_squared,
                    report.bound_symmetric
                );
            }
        }
    }

    #[test]
    fn comparison_lemma_examples() {
        let c = cfg();
        let mut rng = crate::rng_from_seed(57);
        let z = random_matrix(&mut rng, 3, 3);
        let proj = ComplexMatrix::diag_real(&[1.0, 1.0, 0.0]);
        assert!(comparison_lemma_check(&z, &proj, &ComplexMatrix::identity(3), &c).unwrap());
        assert!(comparison_lemma_check(&z, &proj, &ComplexMatrix::zeros(3, 3), &c).unwrap());
        let bad = ComplexMatrix::diag_real(&[2.0, 0.0, 0.0]);
        assert!(matches!(
            comparison_lemma_check(&z, &bad, &proj, &c),
            Err(Error::BadRange(_))
        ));
    }

    #[test]
    fn comparison_lemma_random_triples() {
        let c = cfg();
        let mut rng = crate::rng_from_seed(58);
        for _ in 0..100 {
            let z = random_matrix(&mut rng, 4, 4);
            let x = random_contraction(&mut rng, 4, &c).unwrap();
            let y = random_contraction(&mut rng, 4, &c).unwrap();
            assert!(comparison_lemma_check(&z, &x, &y, &c).unwrap());
        }
    }

    #[test]
    fn monotone_chain_small() {
        let c = cfg();
        // 2 * rank-2 projection: one vector with ||x xi|| >= 1 needed
        let x = ComplexMatrix::diag_real(&[2.0, 2.0, 0.0, 0.0]);
        let chain = monotone_chain(&x, 1, &c).unwrap();
        assert_eq!(chain.elements.len(), 2);
        assert!(chain.gap_norms[0] > 2.0 / 3.0);
    }

    #[test]
    fn monotone_chain_demo_n3() {
        let c = cfg();
        let x = ComplexMatrix::diag_real(&[2.0, 2.0, 2.0, 2.0, 2.0, 2.0, 0.1, 0.1]);
        let chain = monotone_chain(&x, 3, &c).unwrap();
        assert_eq!(chain.elements.len(), 4);
        for (k, gap) in chain.gap_norms.iter().enumerate() {
            assert!(*gap > 2.0 / 3.0, "gap {k} = {gap}");
        }
        // chain is decreasing in the PSD order
        for k in 1..chain.elements.len() {
            let diff = chain.elements[k - 1].sub(&chain.elements[k]);
            assert!(is_psd(&diff, &c).unwrap().psd, "gap {k} not PSD");
        }
    }

    #[test]
    fn monotone_chain_degenerate() {
        let c = cfg();
        let zero = ComplexMatrix::zeros(4, 4);
        assert!(matches!(monotone_chain(&zero, 1, &c), Err(Error::InsufficientSpectrum(_))));
    }

    #[test]
    fn restricted_norm_corollary_form() {
        // || T (I - Q_n) y || <= ||T R_n|| ||y|| + 8 sqrt(||T R_n|| ||T Q_n||) ||y||
        // in the Hilbert-Schmidt gauge with exact restricted norms
        let c = cfg();
        let mut rng = crate::rng_from_seed(59);
        for trial in 0..25 {
            let d = 4;
            let ks: Vec<ComplexMatrix> = (0..2).map(|_| random_matrix(&mut rng, d, d)).collect();
            let t = SuperOperator::from_kraus(ks).unwrap();
            let cut = Truncation::new(2, d).unwrap();
            let nq = restricted_map_norm_s2(&t, cut, "q").unwrap();
            let nr = restricted_map_norm_s2(&t, cut, "r").unwrap();
            let y = random_matrix(&mut rng, d, d);
            let y_norm = symmetric_norm(&y, Gauge::Schatten(2.0)).unwrap();
            let iq = compress_corner(&y, cut, "iq");
            let lhs = symmetric_norm(&t.apply(&iq).unwrap(), Gauge::Schatten(2.0)).unwrap();
            let rhs = nr * y_norm + 8.0 * (nr * nq).sqrt() * y_norm;
            assert!(lhs <= rhs + 1e-9, "trial {trial}: {lhs} > {rhs}");
            // the sampling estimate stays below the exact norm
            let est = estimate_restricted_norm(&t, cut, "r", Gauge::Schatten(2.0), 64, &c).unwrap();
            assert!(est.is_lower_bound);
            assert!(est.value <= nr + 1e-9);
        }
    }
}
