//! Linear maps between matrix algebras: Kraus / Choi / named-construction
//! representations, the complete-positivity test, domination orders, and the
//! certificate vocabulary shared by every verdict.

use num_complex::Complex64;

use crate::config::ToleranceConfig;
use crate::eig::{eig_hermitian, is_psd};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Typed evidence attached to yes/no verdicts. Every variant can be
/// re-checked by a pure routine, independently of the search that found it.
#[derive(Debug, Clone)]
pub enum Certificate {
    /// Unit vector with <a v, v> = value < 0.
    PsdWitness { vector: Vec<Complex64>, value: f64 },
    /// Product vector xi (x) eta violating block positivity of a Choi matrix.
    ProductWitness { xi: Vec<Complex64>, eta: Vec<Complex64>, value: f64 },
    /// Schmidt-rank-bounded vector violating k-positivity.
    SchmidtWitness { vector: Vec<Complex64>, schmidt_rank: usize, value: f64 },
    /// J = cp_part + (co_cp_part partially transposed), both parts PSD.
    DecompositionPair { cp_part: ComplexMatrix, co_cp_part: ComplexMatrix, residual: f64 },
    /// PPT state with tr(rho J) = value < 0.
    PptWitness { state: ComplexMatrix, value: f64 },
    /// Search exhausted its budget without a decision.
    Inconclusive { restarts: usize, iterations: usize, best_value: f64 },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::PsdWitness { .. } => "psd-witness",
            Certificate::ProductWitness { .. } => "product-witness",
            Certificate::SchmidtWitness { .. } => "schmidt-witness",
            Certificate::DecompositionPair { .. } => "decomposition-pair",
            Certificate::PptWitness { .. } => "ppt-witness",
            Certificate::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            Certificate::PsdWitness { value, .. } => *value,
            Certificate::ProductWitness { value, .. } => *value,
            Certificate::SchmidtWitness { value, .. } => *value,
            Certificate::DecompositionPair { residual, .. } => *residual,
            Certificate::PptWitness { value, .. } => *value,
            Certificate::Inconclusive { best_value, .. } => *best_value,
        }
    }
}

/// Named exact constructions; applying one of these involves no rounding
/// beyond the arithmetic of the input entries.
#[derive(Debug, Clone)]
pub enum BuiltinMap {
    Identity { dim: usize },
    Transpose { dim: usize },
    TraceTimesIdentity { dim: usize },
    /// a -> u a u*
    Conjugation { u: ComplexMatrix },
    /// Diagonal kept, off-diagonal negated (3x3).
    StormerU,
    /// Cyclic shift of the diagonal, off-diagonal dropped (3x3).
    StormerV,
    /// Diagonal pinching (3x3).
    StormerW,
    /// a -> (a + a^t)/2
    Symmetrization { dim: usize },
    /// Entrywise multiplication by a fixed symbol grid.
    Schur { symbol: ComplexMatrix },
}

impl BuiltinMap {
    pub fn name(&self) -> &'static str {
        match self {
            BuiltinMap::Identity { .. } => "identity",
            BuiltinMap::Transpose { .. } => "transpose",
            BuiltinMap::TraceTimesIdentity { .. } => "trace_times_identity",
            BuiltinMap::Conjugation { .. } => "conjugation",
            BuiltinMap::StormerU => "stormer_U",
            BuiltinMap::StormerV => "stormer_V",
            BuiltinMap::StormerW => "stormer_W",
            BuiltinMap::Symmetrization { .. } => "symmetrization",
            BuiltinMap::Schur { .. } => "schur",
        }
    }

    fn dims(&self) -> (usize, usize) {
        match self {
            BuiltinMap::Identity { dim }
            | BuiltinMap::Transpose { dim }
            | BuiltinMap::TraceTimesIdentity { dim }
            | BuiltinMap::Symmetrization { dim } => (*dim, *dim),
            BuiltinMap::Conjugation { u } => (u.cols(), u.rows()),
            BuiltinMap::StormerU | BuiltinMap::StormerV | BuiltinMap::StormerW => (3, 3),
            BuiltinMap::Schur { symbol } => (symbol.rows(), symbol.rows()),
        }
    }

    fn apply(&self, a: &ComplexMatrix) -> ComplexMatrix {
        match self {
            BuiltinMap::Identity { .. } => a.clone(),
            BuiltinMap::Transpose { .. } => a.transpose(),
            BuiltinMap::TraceTimesIdentity { dim } => {
                ComplexMatrix::identity(*dim).scale_complex(a.trace())
            }
            BuiltinMap::Conjugation { u } => u.matmul(a).matmul(&u.adjoint()),
            BuiltinMap::StormerU => {
                ComplexMatrix::from_fn(3, 3, |i, j| if i == j { a[(i, j)] } else { -a[(i, j)] })
            }
            BuiltinMap::StormerV => ComplexMatrix::from_fn(3, 3, |i, j| {
                if i == j {
                    a[((i + 2) % 3, (i + 2) % 3)]
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
            BuiltinMap::StormerW => ComplexMatrix::from_fn(3, 3, |i, j| {
                if i == j { a[(i, j)] } else { Complex64::new(0.0, 0.0) }
            }),
            BuiltinMap::Symmetrization { .. } => a.add(&a.transpose()).scale(0.5),
            BuiltinMap::Schur { symbol } => symbol.hadamard(a),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Repr {
    Kraus(Vec<ComplexMatrix>),
    Choi(ComplexMatrix),
    Builtin(BuiltinMap),
}

/// A linear map M_{dim_in} -> M_{dim_out}.
#[derive(Debug, Clone)]
pub struct SuperOperator {
    dim_in: usize,
    dim_out: usize,
    repr: Repr,
}

impl SuperOperator {
    pub fn from_kraus(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::Schema("kraus list must be non-empty".into()))?;
        let (dim_out, dim_in) = (first.rows(), first.cols());
        if kraus.iter().any(|k| k.rows() != dim_out || k.cols() != dim_in) {
            return Err(Error::DimensionMismatch("kraus elements differ in shape".into()));
        }
        Ok(Self { dim_in, dim_out, repr: Repr::Kraus(kraus) })
    }

    pub fn from_choi(choi: ComplexMatrix, dim_in: usize, dim_out: usize) -> Result<Self> {
        let d = dim_in * dim_out;
        if choi.rows() != d || choi.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "choi matrix must be {d}x{d} for dims {dim_in}->{dim_out}"
            )));
        }
        Ok(Self { dim_in, dim_out, repr: Repr::Choi(choi) })
    }

    pub fn builtin(b: BuiltinMap) -> Self {
        let (dim_in, dim_out) = b.dims();
        Self { dim_in, dim_out, repr: Repr::Builtin(b) }
    }

    pub fn identity(dim: usize) -> Self {
        Self::builtin(BuiltinMap::Identity { dim })
    }

    pub fn transpose_map(dim: usize) -> Self {
        Self::builtin(BuiltinMap::Transpose { dim })
    }

    pub fn zero(dim_in: usize, dim_out: usize) -> Self {
        Self {
            dim_in,
            dim_out,
            repr: Repr::Choi(ComplexMatrix::zeros(dim_in * dim_out, dim_in * dim_out)),
        }
    }

    /// Multiplication operator a -> x* a x; completely positive with the
    /// single Kraus element x*.
    pub fn multiplication(x: &ComplexMatrix) -> Result<Self> {
        if !x.is_square() {
            return Err(Error::DimensionMismatch("multiplication symbol must be square".into()));
        }
        Self::from_kraus(vec![x.adjoint()])
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn describe(&self) -> String {
        match &self.repr {
            Repr::Kraus(ks) => format!("kraus[{}] {}->{}", ks.len(), self.dim_in, self.dim_out),
            Repr::Choi(_) => format!("choi {}->{}", self.dim_in, self.dim_out),
            Repr::Builtin(b) => format!("builtin:{} {}->{}", b.name(), self.dim_in, self.dim_out),
        }
    }

    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        if a.rows() != self.dim_in || a.cols() != self.dim_in {
            return Err(Error::DimensionMismatch(format!(
                "map expects {0}x{0} input, got {1}x{2}",
                self.dim_in,
                a.rows(),
                a.cols()
            )));
        }
        Ok(match &self.repr {
            Repr::Kraus(ks) => {
                let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
                for k in ks {
                    out = out.add(&k.matmul(a).matmul(&k.adjoint()));
                }
                out
            }
            Repr::Choi(j) => {
                let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
                for i in 0..self.dim_in {
                    for jj in 0..self.dim_in {
                        let c = a[(i, jj)];
                        if c.norm_sqr() == 0.0 {
                            continue;
                        }
                        for r in 0..self.dim_out {
                            for s in 0..self.dim_out {
                                let v = c * j[(i * self.dim_out + r, jj * self.dim_out + s)];
                                out[(r, s)] += v;
                            }
                        }
                    }
                }
                out
            }
            Repr::Builtin(b) => b.apply(a),
        })
    }

    /// Choi matrix J(T) = sum_ij E_ij (x) T(E_ij).
    pub fn choi(&self) -> ComplexMatrix {
        match &self.repr {
            Repr::Choi(j) => j.clone(),
            Repr::Kraus(ks) => {
                let d = self.dim_in * self.dim_out;
                let mut j = ComplexMatrix::zeros(d, d);
                for k in ks {
                    // rank-one contribution v v* with v[(i,r)] = k[r][i]
                    let v: Vec<Complex64> = (0..d)
                        .map(|idx| k[(idx % self.dim_out, idx / self.dim_out)])
                        .collect();
                    for p in 0..d {
                        for q in 0..d {
                            let add = v[p] * v[q].conj();
                            j[(p, q)] += add;
                        }
                    }
                }
                j
            }
            Repr::Builtin(b) => {
                let d = self.dim_in * self.dim_out;
                let mut j = ComplexMatrix::zeros(d, d);
                for i in 0..self.dim_in {
                    for jj in 0..self.dim_in {
                        let block = b.apply(&ComplexMatrix::matrix_unit(self.dim_in, i, jj));
                        for r in 0..self.dim_out {
                            for s in 0..self.dim_out {
                                j[(i * self.dim_out + r, jj * self.dim_out + s)] = block[(r, s)];
                            }
                        }
                    }
                }
                j
            }
        }
    }

    pub fn is_hermiticity_preserving(&self, cfg: &ToleranceConfig) -> bool {
        self.choi().is_hermitian(cfg.tol_herm)
    }

    fn check_same_dims(&self, other: &Self) -> Result<()> {
        if self.dim_in != other.dim_in || self.dim_out != other.dim_out {
            return Err(Error::DimensionMismatch(format!(
                "maps {}->{} and {}->{} cannot be combined",
                self.dim_in, self.dim_out, other.dim_in, other.dim_out
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dims(other)?;
        Self::from_choi(self.choi().add(&other.choi()), self.dim_in, self.dim_out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dims(other)?;
        Self::from_choi(self.choi().sub(&other.choi()), self.dim_in, self.dim_out)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            repr: Repr::Choi(self.choi().scale(s)),
        }
    }

    /// self after other: a -> self(other(a)).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.dim_out != self.dim_in {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}->{} after {}->{}",
                self.dim_in, self.dim_out, other.dim_in, other.dim_out
            )));
        }
        let d_in = other.dim_in;
        let d_out = self.dim_out;
        let d = d_in * d_out;
        let mut j = ComplexMatrix::zeros(d, d);
        for i in 0..d_in {
            for jj in 0..d_in {
                let block = self.apply(&other.apply(&ComplexMatrix::matrix_unit(d_in, i, jj))?)?;
                for r in 0..d_out {
                    for s in 0..d_out {
                        j[(i * d_out + r, jj * d_out + s)] = block[(r, s)];
                    }
                }
            }
        }
        Self::from_choi(j, d_in, d_out)
    }
}

/// Partial transpose on the input factor of the Choi indexing
/// (row (i,r), column (j,s)) -> (row (j,r), column (i,s)).
pub fn partial_transpose_input(j: &ComplexMatrix, dim_in: usize, dim_out: usize) -> ComplexMatrix {
    let d = dim_in * dim_out;
    assert_eq!(j.rows(), d, "choi size mismatch");
    let mut out = ComplexMatrix::zeros(d, d);
    for i in 0..dim_in {
        for jj in 0..dim_in {
            for r in 0..dim_out {
                for s in 0..dim_out {
                    out[(jj * dim_out + r, i * dim_out + s)] = j[(i * dim_out + r, jj * dim_out + s)];
                }
            }
        }
    }
    out
}

/// Complete-positivity verdict via the Choi criterion.
#[derive(Debug, Clone)]
pub struct CpReport {
    pub cp: bool,
    pub min_choi_eigenvalue: f64,
    /// Present iff not CP: the negative-eigenvalue witness.
    pub certificate: Option<Certificate>,
}

pub fn check_cp(t: &SuperOperator, cfg: &ToleranceConfig) -> Result<CpReport> {
    let j = t.choi();
    j.check_hermitian(cfg.tol_herm)?;
    let verdict = is_psd(&j, cfg)?;
    Ok(CpReport {
        cp: verdict.psd,
        min_choi_eigenvalue: verdict.min_eigenvalue,
        certificate: verdict.witness.map(|vector| Certificate::PsdWitness {
            vector,
            value: verdict.min_eigenvalue,
        }),
    })
}

/// Kraus elements extracted from a PSD Choi matrix; count equals the
/// numerical rank.
pub fn kraus_from_choi(t: &SuperOperator, cfg: &ToleranceConfig) -> Result<Vec<ComplexMatrix>> {
    let report = check_cp(t, cfg)?;
    if !report.cp {
        return Err(Error::NotCp);
    }
    let j = t.choi();
    let dec = eig_hermitian(&j, cfg)?;
    let top = dec.max_eigenvalue().max(0.0);
    let cut = crate::eig::RANK_CUT * top;
    let mut out = Vec::new();
    for (idx, &lambda) in dec.eigenvalues.iter().enumerate() {
        if lambda <= cut || lambda <= 0.0 {
            continue;
        }
        let v = dec.eigenvector(idx);
        let root = lambda.sqrt();
        let k = ComplexMatrix::from_fn(t.dim_out(), t.dim_in(), |r, i| v[i * t.dim_out() + r] * root);
        out.push(k);
    }
    Ok(out)
}

/// Domination order on Hermiticity-preserving maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominationOrder {
    /// 0 <= T and S - T positive.
    Positive,
    /// 0 <= T (positive) and S - T completely positive.
    Complete,
}

impl DominationOrder {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim().to_ascii_lowercase().as_str() {
            "positive" => Ok(DominationOrder::Positive),
            "complete" => Ok(DominationOrder::Complete),
            other => Err(Error::Schema(format!("unknown domination order '{other}'"))),
        }
    }
}

/// Outcome of one side of a domination check.
#[derive(Debug, Clone)]
pub enum CheckOutcome {
    /// Exact structural rule or Choi PSD.
    CertifiedPass { reason: String },
    /// No violation found by the see-saw search.
    HeuristicPass { best_value: f64, restarts: usize },
    Violated { certificate: Certificate },
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        !matches!(self, CheckOutcome::Violated { .. })
    }

    pub fn certified(&self) -> bool {
        matches!(self, CheckOutcome::CertifiedPass { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            CheckOutcome::CertifiedPass { .. } => "certified",
            CheckOutcome::HeuristicPass { .. } => "heuristic",
            CheckOutcome::Violated { .. } => "violated",
        }
    }
}

/// Verdict for 0 <= T <= S in the chosen order, with per-side outcomes.
#[derive(Debug, Clone)]
pub struct DominationReport {
    pub order: DominationOrder,
    /// T >= 0 (always in the positive sense).
    pub lower: CheckOutcome,
    /// S - T >= 0 in the chosen order.
    pub upper: CheckOutcome,
}

impl DominationReport {
    pub fn dominated(&self) -> bool {
        self.lower.passed() && self.upper.passed()
    }
}

pub fn dominates(
    s: &SuperOperator,
    t: &SuperOperator,
    order: DominationOrder,
    cfg: &ToleranceConfig,
) -> Result<DominationReport> {
    s.check_same_dims(t)?;
    let diff = s.sub(t)?;
    let lower = crate::seesaw::check_positive(t, cfg)?.into_outcome();
    let upper = match order {
        DominationOrder::Complete => {
            let report = check_cp(&diff, cfg)?;
            if report.cp {
                CheckOutcome::CertifiedPass {
                    reason: format!(
                        "difference completely positive (Choi min eigenvalue {:.3e})",
                        report.min_choi_eigenvalue
                    ),
                }
            } else {
                CheckOutcome::Violated { certificate: report.certificate.expect("witness on failure") }
            }
        }
        DominationOrder::Positive => crate::seesaw::check_positive(&diff, cfg)?.into_outcome(),
    };
    Ok(DominationReport { order, lower, upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::random_matrix;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn transpose_on_matrix_unit() {
        let t = SuperOperator::transpose_map(2);
        let e12 = ComplexMatrix::matrix_unit(2, 0, 1);
        let e21 = ComplexMatrix::matrix_unit(2, 1, 0);
        assert!(t.apply(&e12).unwrap().approx_eq(&e21, 0.0));
    }

    #[test]
    fn trace_map_and_zero_map() {
        let s = SuperOperator::builtin(BuiltinMap::TraceTimesIdentity { dim: 2 });
        let a = ComplexMatrix::diag_real(&[2.0, 3.0]);
        assert!(s.apply(&a).unwrap().approx_eq(&ComplexMatrix::identity(2).scale(5.0), 1e-14));
        let z = SuperOperator::zero(2, 2);
        assert!(z.apply(&a).unwrap().approx_eq(&ComplexMatrix::zeros(2, 2), 0.0));
    }

    #[test]
    fn choi_of_transpose_is_swap() {
        let t = SuperOperator::transpose_map(2);
        let j = t.choi();
        // swap operator: 1 at ((i,r),(r,i))
        for i in 0..2 {
            for r in 0..2 {
                for jj in 0..2 {
                    for s in 0..2 {
                        let expect = if i == s && r == jj { 1.0 } else { 0.0 };
                        assert_eq!(j[(i * 2 + r, jj * 2 + s)], Complex64::new(expect, 0.0));
                    }
                }
            }
        }
        let report = check_cp(&t, &cfg()).unwrap();
        assert!(!report.cp);
        assert!((report.min_choi_eigenvalue + 1.0).abs() < 1e-12);
    }

    #[test]
    fn cp_examples() {
        let c = cfg();
        assert!(check_cp(&SuperOperator::identity(2), &c).unwrap().cp);
        let s = SuperOperator::builtin(BuiltinMap::TraceTimesIdentity { dim: 2 });
        assert!(check_cp(&s, &c).unwrap().cp);
    }

    #[test]
    fn kraus_choi_round_trip_random() {
        let c = cfg();
        let mut rng = crate::rng_from_seed(31);
        for _ in 0..50 {
            let ks: Vec<ComplexMatrix> = (0..3).map(|_| random_matrix(&mut rng, 3, 2)).collect();
            let t = SuperOperator::from_kraus(ks).unwrap();
            let j = t.choi();
            let rebuilt = SuperOperator::from_choi(j.clone(), 2, 3).unwrap();
            let ks2 = kraus_from_choi(&rebuilt, &c).unwrap();
            let t2 = SuperOperator::from_kraus(ks2).unwrap();
            assert!(t2.choi().sub(&j).frobenius_norm() <= c.tol_eig.max(1e-10) * j.frobenius_norm());
            // application agrees on a random input
            let a = random_matrix(&mut rng, 2, 2);
            let out1 = t.apply(&a).unwrap();
            let out2 = t2.apply(&a).unwrap();
            assert!(out1.sub(&out2).frobenius_norm() <= 1e-9 * out1.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn kraus_of_multiplication_operator() {
        let c = cfg();
        let mut rng = crate::rng_from_seed(32);
        let x = random_matrix(&mut rng, 3, 3);
        let m = SuperOperator::multiplication(&x).unwrap();
        let ks = kraus_from_choi(&m, &c).unwrap();
        assert_eq!(ks.len(), 1);
        // M_x(1) = x* x
        let gram = m.apply(&ComplexMatrix::identity(3)).unwrap();
        assert!(gram.approx_eq(&x.adjoint().matmul(&x), 1e-12));
    }

    #[test]
    fn trace_map_kraus_count() {
        let c = cfg();
        let s = SuperOperator::builtin(BuiltinMap::TraceTimesIdentity { dim: 2 });
        let ks = kraus_from_choi(&s, &c).unwrap();
        assert_eq!(ks.len(), 4);
        // reconstruction on a basis
        for i in 0..2 {
            for j in 0..2 {
                let e = ComplexMatrix::matrix_unit(2, i, j);
                let mut out = ComplexMatrix::zeros(2, 2);
                for k in &ks {
                    out = out.add(&k.matmul(&e).matmul(&k.adjoint()));
                }
                assert!(out.approx_eq(&s.apply(&e).unwrap(), 1e-10));
            }
        }
    }

    #[test]
    fn partial_transpose_involution_and_swap() {
        let mut rng = crate::rng_from_seed(33);
        let j = random_matrix(&mut rng, 9, 9);
        let jg = partial_transpose_input(&j, 3, 3);
        assert!(partial_transpose_input(&jg, 3, 3).approx_eq(&j, 0.0));
        // swap^Gamma is the unnormalized maximally entangled projector
        let t = SuperOperator::transpose_map(2);
        let sg = partial_transpose_input(&t.choi(), 2, 2);
        let id_choi = SuperOperator::identity(2).choi();
        assert!(sg.approx_eq(&id_choi, 0.0));
    }

    #[test]
    fn trace_duality_of_partial_transpose() {
        let mut rng = crate::rng_from_seed(34);
        let x = crate::matrix::random_hermitian(&mut rng, 9);
        let y = crate::matrix::random_hermitian(&mut rng, 9);
        let lhs = x.matmul(&partial_transpose_input(&y, 3, 3)).trace();
        let rhs = partial_transpose_input(&x, 3, 3).matmul(&y).trace();
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn compose_transpose_twice_is_identity() {
        let t = SuperOperator::transpose_map(3);
        let tt = t.compose(&t).unwrap();
        let id = SuperOperator::identity(3);
        assert!(tt.choi().approx_eq(&id.choi(), 0.0));
    }

    #[test]
    fn stormer_relations() {
        // U = 2W - I, so V + 2W - (U + V) = I
        let u = SuperOperator::builtin(BuiltinMap::StormerU);
        let v = SuperOperator::builtin(BuiltinMap::StormerV);
        let w = SuperOperator::builtin(BuiltinMap::StormerW);
        let s = v.add(&w.scale(2.0)).unwrap();
        let t = u.add(&v).unwrap();
        let diff = s.sub(&t).unwrap();
        assert!(diff.choi().approx_eq(&SuperOperator::identity(3).choi(), 0.0));
    }
}
