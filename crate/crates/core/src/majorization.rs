//! Singular value spectra, Hardy-Littlewood submajorization with transfer
//! certificates, symmetric gauge norms, and pinchings.

use num_complex::Complex64;

use crate::config::ToleranceConfig;
use crate::eig::{eig_hermitian, is_psd};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Non-increasing, non-negative sequence of singular values.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum {
    values: Vec<f64>,
    ambient_dim: usize,
}

impl SingularSpectrum {
    /// Wrap an already-sorted non-negative sequence. Values below zero by
    /// rounding noise are clipped.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        for v in values.iter_mut() {
            if *v < 0.0 {
                if *v < -1e-9 {
                    return Err(Error::Schema(format!("negative singular value {v}")));
                }
                *v = 0.0;
            }
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Schema("singular values must be non-increasing".into()));
        }
        let ambient_dim = values.len();
        Ok(Self { values, ambient_dim })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Values padded with zeros to length n.
    pub fn padded(&self, n: usize) -> Vec<f64> {
        let mut v = self.values.clone();
        v.resize(n.max(v.len()), 0.0);
        v
    }
}

/// Singular values of an arbitrary rectangular matrix, sorted non-increasing.
pub fn singular_spectrum(x: &ComplexMatrix) -> SingularSpectrum {
    let cfg = ToleranceConfig::default();
    let g = if x.cols() <= x.rows() {
        x.adjoint().matmul(x)
    } else {
        x.matmul(&x.adjoint())
    };
    let dec = eig_hermitian(&g.hermitian_part(), &cfg).expect("gram eigendecomposition");
    let values = dec.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
    SingularSpectrum { values, ambient_dim: x.rows().min(x.cols()) }
}

/// Hardy-Littlewood submajorization: every partial sum of y is dominated by
/// the corresponding partial sum of x (within tol_cert).
pub fn submajorizes(x: &SingularSpectrum, y: &SingularSpectrum, cfg: &ToleranceConfig) -> bool {
    let n = x.values.len().max(y.values.len());
    let xv = x.padded(n);
    let yv = y.padded(n);
    let mut sx = 0.0;
    let mut sy = 0.0;
    for k in 0..n {
        sx += xv[k];
        sy += yv[k];
        if sy > sx + cfg.tol_cert {
            return false;
        }
    }
    true
}

/// Doubly substochastic matrix certifying a submajorization y = Dx.
#[derive(Debug, Clone)]
pub struct TransferMatrix {
    entries: Vec<Vec<f64>>,
}

impl TransferMatrix {
    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(x).map(|(d, v)| d * v).sum())
            .collect()
    }

    /// Row and column sums bounded by 1 + tol, all entries non-negative.
    pub fn is_doubly_substochastic(&self, tol: f64) -> bool {
        let n = self.dim();
        for row in &self.entries {
            if row.iter().any(|&e| e < -tol) {
                return false;
            }
            if row.iter().sum::<f64>() > 1.0 + tol {
                return false;
            }
        }
        for j in 0..n {
            let col: f64 = self.entries.iter().map(|row| row[j]).sum();
            if col > 1.0 + tol {
                return false;
            }
        }
        true
    }
}

/// Builds a doubly substochastic D with Dx = y for submajorized spectra.
///
/// The construction inflates y by water-filling to a vector z with y <= z and
/// z majorized by x (equal sums), chains T-transforms from x to z, and finally
/// rescales rows to come back down from z to y.
pub fn transfer_certificate(
    x: &SingularSpectrum,
    y: &SingularSpectrum,
    cfg: &ToleranceConfig,
) -> Result<TransferMatrix> {
    if !submajorizes(x, y, cfg) {
        return Err(Error::NotSubmajorized);
    }
    let n = x.values.len().max(y.values.len()).max(1);
    let xv = x.padded(n);
    let yv = y.padded(n);

    let z = water_fill(&xv, &yv);
    let ds = t_transform_chain(&xv, &z);

    // divide the inflation back out row by row; z_i = 0 forces y_i = 0,
    // so those rows can stay untouched
    let mut entries = ds;
    for i in 0..n {
        if z[i] <= 0.0 {
            continue;
        }
        let factor = (yv[i] / z[i]).clamp(0.0, 1.0);
        for e in entries[i].iter_mut() {
            *e *= factor;
        }
    }
    Ok(TransferMatrix { entries })
}

/// Water level L with sum_i max(y_i, L) = sum_i x_i; returns the inflated
/// vector max(y, L). Keeps sortedness and the majorization by x.
fn water_fill(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = y.len();
    let target: f64 = x.iter().sum();
    let total_y: f64 = y.iter().sum();
    if target - total_y <= 0.0 {
        return y.to_vec();
    }
    // ascending values; on the segment [w_k, w_{k+1}] the fill sum is
    // suffix + L * k with the k lowest coordinates wet
    let mut w: Vec<f64> = y.to_vec();
    w.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let mut level = target / n as f64; // k = n fallback: everything wet
    let mut suffix = 0.0; // sum of w[k..]
    for k in (1..=n).rev() {
        // here suffix = w[k..].sum(); candidate level for exactly k wet coords
        let cand = (target - suffix) / k as f64;
        let lo = w[k - 1];
        let hi = if k < n { w[k] } else { f64::INFINITY };
        if cand >= lo && cand <= hi {
            level = cand;
            break;
        }
        suffix += w[k - 1];
    }
    (0..n).map(|i| y[i].max(level)).collect()
}

/// Classical chain of T-transforms carrying x to z (z majorized by x, equal
/// sums, both sorted non-increasing); the product is doubly stochastic.
fn t_transform_chain(x: &[f64], z: &[f64]) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut u = x.to_vec();
    let mut d: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    for _ in 0..(2 * n * n) {
        // largest j with u_j > z_j, then the first k > j with u_k < z_k
        let eps = 1e-15 * (1.0 + u.iter().map(|v| v.abs()).fold(0.0, f64::max));
        let j = match (0..n).rev().find(|&j| u[j] > z[j] + eps) {
            Some(j) => j,
            None => break,
        };
        let k = match ((j + 1)..n).find(|&k| u[k] < z[k] - eps) {
            Some(k) => k,
            None => break,
        };
        let delta = (u[j] - z[j]).min(z[k] - u[k]);
        let span = u[j] - u[k];
        if span <= 0.0 {
            break;
        }
        let t = (delta / span).clamp(0.0, 1.0);
        // mix rows j and k of d: D <- ((1-t) I + t Q_{jk}) D
        let (top, bottom) = d.split_at_mut(k);
        for (a, b) in top[j].iter_mut().zip(bottom[0].iter_mut()) {
            let (va, vb) = (*a, *b);
            *a = (1.0 - t) * va + t * vb;
            *b = t * va + (1.0 - t) * vb;
        }
        let uj = u[j];
        let uk = u[k];
        u[j] = (1.0 - t) * uj + t * uk;
        u[k] = t * uj + (1.0 - t) * uk;
    }
    d
}

/// Symmetric gauge functionals on the singular spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gauge {
    /// Schatten p-norm, p >= 1; `f64::INFINITY` gives the operator norm.
    Schatten(f64),
    /// Sum of the k largest singular values, 1 <= k <= dim.
    KyFan(usize),
}

impl Gauge {
    pub fn parse(text: &str) -> Result<Self> {
        let lower = text.trim().to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("schatten:").or_else(|| lower.strip_prefix("schatten ")) {
            if rest == "inf" || rest == "infinity" || rest == "oo" {
                return Ok(Gauge::Schatten(f64::INFINITY));
            }
            let p: f64 = rest.parse().map_err(|_| Error::BadGauge(text.into()))?;
            return Ok(Gauge::Schatten(p));
        }
        if let Some(rest) = lower.strip_prefix("kyfan:").or_else(|| lower.strip_prefix("kyfan ")) {
            let k: usize = rest.parse().map_err(|_| Error::BadGauge(text.into()))?;
            return Ok(Gauge::KyFan(k));
        }
        Err(Error::BadGauge(text.into()))
    }

    pub fn describe(&self) -> String {
        match self {
            Gauge::Schatten(p) if p.is_infinite() => "schatten:inf".into(),
            Gauge::Schatten(p) => format!("schatten:{p}"),
            Gauge::KyFan(k) => format!("kyfan:{k}"),
        }
    }
}

pub fn spectrum_norm(s: &SingularSpectrum, gauge: Gauge) -> Result<f64> {
    match gauge {
        Gauge::Schatten(p) => {
            if p.is_infinite() {
                Ok(s.values.first().copied().unwrap_or(0.0))
            } else if p >= 1.0 {
                Ok(s.values.iter().map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p))
            } else {
                Err(Error::BadGauge(format!("schatten exponent {p} < 1")))
            }
        }
        Gauge::KyFan(k) => {
            if k >= 1 && k <= s.values.len() {
                Ok(s.values.iter().take(k).sum())
            } else {
                Err(Error::BadGauge(format!("ky fan order {k} outside 1..={}", s.values.len())))
            }
        }
    }
}

/// Gauge norm of a matrix through its singular spectrum.
pub fn symmetric_norm(x: &ComplexMatrix, gauge: Gauge) -> Result<f64> {
    spectrum_norm(&singular_spectrum(x), gauge)
}

/// Blocks of a pinching: a partition of 0..n.
#[derive(Debug, Clone)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in &blocks {
            for &i in b {
                if i >= n {
                    return Err(Error::BadPartition(format!("index {i} out of range 0..{n}")));
                }
                if seen[i] {
                    return Err(Error::BadPartition(format!("index {i} appears twice")));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::BadPartition("partition does not cover all indices".into()));
        }
        Ok(Self { blocks })
    }

    pub fn singletons(n: usize) -> Self {
        Self { blocks: (0..n).map(|i| vec![i]).collect() }
    }

    /// block id per index
    fn labels(&self, n: usize) -> Vec<usize> {
        let mut lab = vec![0usize; n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                lab[i] = b;
            }
        }
        lab
    }
}

/// Zeroes every entry whose row and column lie in different blocks.
pub fn pinch(x: &ComplexMatrix, partition: &Partition) -> Result<ComplexMatrix> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch("pinch needs a square matrix".into()));
    }
    let n = x.rows();
    let covered: usize = partition.blocks.iter().map(|b| b.len()).sum();
    if covered != n {
        return Err(Error::BadPartition(format!("partition covers {covered} of {n} indices")));
    }
    let labels = partition.labels(n);
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        if labels[i] == labels[j] { x[(i, j)] } else { Complex64::new(0.0, 0.0) }
    }))
}

/// Outcome of comparing spectra under the sandwich order -a <= b <= a.
#[derive(Debug, Clone, Copy)]
pub struct MuOrderReport {
    /// Whether the precondition -a <= b <= a holds.
    pub order_holds: bool,
    /// Whether mu_b <= mu_a pointwise (within tol_cert). Only meaningful when
    /// the order holds.
    pub pointwise_dominated: bool,
    /// Largest excess max_k (mu_b(k) - mu_a(k)).
    pub max_excess: f64,
}

/// Checks the order precondition -a <= b <= a and, when it holds, compares
/// the singular spectra pointwise.
///
/// Pointwise domination is guaranteed when b is itself positive (Weyl
/// monotonicity for 0 <= b <= a, and b is sandwiched symmetrically); for
/// mixed-sign b it can fail: a = diag(1, t^2), b = t * (the 0/1 flip matrix)
/// satisfies the order with mu_b = (t, t) not below (1, t^2). The report
/// carries both facts instead of conflating them.
pub fn mu_order_check(a: &ComplexMatrix, b: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<MuOrderReport> {
    if !a.same_shape(b) {
        return Err(Error::DimensionMismatch("mu_order_check needs equal shapes".into()));
    }
    let minus = is_psd(&a.sub(b), cfg)?;
    let plus = is_psd(&a.add(b), cfg)?;
    let mu_a = singular_spectrum(a);
    let mu_b = singular_spectrum(b);
    let n = mu_a.values.len().max(mu_b.values.len());
    let av = mu_a.padded(n);
    let bv = mu_b.padded(n);
    let max_excess = av
        .iter()
        .zip(&bv)
        .map(|(x, y)| y - x)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(MuOrderReport {
        order_holds: minus.psd && plus.psd,
        pointwise_dominated: max_excess <= cfg.tol_cert,
        max_excess,
    })
}
