//! Executable corpus of named constructions, each bundled with the checks
//! that certify it. Items run independently and report one verdict line per
//! check; certificates are re-verified by pure routines before a check may
//! pass.

use num_complex::Complex64;

use crate::config::{SpaceConstants, ToleranceConfig};
use crate::decompose::{check_decomposable, verify_ppt_witness, Decomposability};
use crate::eig::{eig_hermitian, is_psd};
use crate::error::{Error, Result};
use crate::majorization::{
    singular_spectrum, submajorizes, symmetric_norm, transfer_certificate, Gauge,
};
use crate::maps::{check_cp, dominates, BuiltinMap, DominationOrder, SuperOperator};
use crate::matrix::{random_matrix, random_psd, ComplexMatrix};
use crate::order::{
    corner_truncations, monotone_chain, random_contraction, verify_offdiag_inequality, Truncation,
};
use crate::paulsen::{sample_positive_level_k, PaulsenSystem};
use crate::schur::{build_obstruction, obstruction_witness};
use crate::seesaw::{check_k_positive, check_positive, verify_violation, PositivityVerdict};

/// One verdict line of a corpus item.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    /// "pass", "fail", or "inconclusive".
    pub verdict: String,
    pub value: Option<f64>,
    pub details: String,
    /// Attached evidence, when the check produced any.
    pub certificate: Option<crate::maps::Certificate>,
}

impl CheckResult {
    fn pass(name: &str, value: Option<f64>, details: impl Into<String>) -> Self {
        Self { name: name.into(), verdict: "pass".into(), value, details: details.into(), certificate: None }
    }

    fn fail(name: &str, value: Option<f64>, details: impl Into<String>) -> Self {
        Self { name: name.into(), verdict: "fail".into(), value, details: details.into(), certificate: None }
    }

    fn of(name: &str, ok: bool, value: Option<f64>, details: impl Into<String>) -> Self {
        if ok { Self::pass(name, value, details) } else { Self::fail(name, value, details) }
    }

    fn inconclusive(name: &str, value: Option<f64>, details: impl Into<String>) -> Self {
        Self { name: name.into(), verdict: "inconclusive".into(), value, details: details.into(), certificate: None }
    }

    fn with_certificate(mut self, certificate: crate::maps::Certificate) -> Self {
        self.certificate = Some(certificate);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

#[derive(Debug, Clone)]
pub struct ItemReport {
    pub id: String,
    pub description: String,
    pub checks: Vec<CheckResult>,
    pub runtime_ms: u128,
}

impl ItemReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn any_inconclusive(&self) -> bool {
        self.checks.iter().any(|c| c.verdict == "inconclusive")
    }
}

#[derive(Debug, Clone)]
pub struct CorpusReport {
    pub items: Vec<ItemReport>,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.all_passed())
    }

    pub fn any_inconclusive(&self) -> bool {
        self.items.iter().any(|i| i.any_inconclusive())
    }

    pub fn any_failed(&self) -> bool {
        self.items
            .iter()
            .any(|i| i.checks.iter().any(|c| c.verdict == "fail"))
    }
}

pub const CORPUS_IDS: [&str; 8] = [
    "chain",
    "lemma-matrices",
    "nogo-a",
    "nogo-b",
    "nogo-powers",
    "offdiag-inequality",
    "paulsen",
    "remark-powers",
];

/// Runs one item or, for "all", the whole corpus in id order.
pub fn corpus_run(id: &str, cfg: &ToleranceConfig) -> Result<CorpusReport> {
    let ids: Vec<&str> = if id == "all" {
        CORPUS_IDS.to_vec()
    } else if CORPUS_IDS.contains(&id) {
        vec![id]
    } else {
        return Err(Error::UnknownId(id.to_string()));
    };
    let mut items = Vec::new();
    for item_id in ids {
        let start = std::time::Instant::now();
        let (description, checks) = run_item(item_id, cfg)?;
        items.push(ItemReport {
            id: item_id.to_string(),
            description,
            checks,
            runtime_ms: start.elapsed().as_millis(),
        });
    }
    Ok(CorpusReport { items })
}

fn run_item(id: &str, cfg: &ToleranceConfig) -> Result<(String, Vec<CheckResult>)> {
    match id {
        "nogo-a" => item_nogo_a(cfg),
        "nogo-b" => item_nogo_b(cfg),
        "nogo-powers" => item_nogo_powers(cfg),
        "remark-powers" => item_remark_powers(cfg),
        "paulsen" => item_paulsen(cfg),
        "lemma-matrices" => item_lemma_matrices(cfg),
        "offdiag-inequality" => item_offdiag(cfg),
        "chain" => item_chain(cfg),
        other => Err(Error::UnknownId(other.to_string())),
    }
}

/// Max entrywise deviation of two maps over the matrix-unit basis.
fn basis_deviation(a: &SuperOperator, b: &SuperOperator) -> Result<f64> {
    let d = a.dim_in();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let e = ComplexMatrix::matrix_unit(d, i, j);
            let dev = a.apply(&e)?.sub(&b.apply(&e)?).max_abs_entry();
            worst = worst.max(dev);
        }
    }
    Ok(worst)
}

fn item_nogo_a(cfg: &ToleranceConfig) -> Result<(String, Vec<CheckResult>)> {
    let mut checks = Vec::new();
    let t = SuperOperator::transpose_map(2);
    let s = SuperOperator::builtin(BuiltinMap::TraceTimesIdentity { dim: 2 });

    match check_positive(&t, cfg)? {
        PositivityVerdict::Certified { reason } => {
            checks.push(CheckResult::pass("transpose positive (certified)", None, reason));
        }
        other => checks.push(CheckResult::fail(
            "transpose positive (certified)",
            None,
            format!("expected a certified verdict, got {}", other.label()),
        )),
    }

    match check_k_positive(&t, 2, cfg)? {
        PositivityVerdict::Violated { certificate } => {
            let value = certificate.value();
            let ok = (value + 1.0).abs() <= 1e-9 && verify_violation(&t.choi(), &certificate, 1e-10);
            checks.push(
                CheckResult::of(
                    "transpose not 2-positive, witness value -1",
                    ok,
                    Some(value),
                    "witness re-verified against the Choi form",
                )
                .with_certificate(certificate),
            );
        }
        other => checks.push(CheckResult::fail(
            "transpose not 2-positive, witness value -1",
            None,
            format!("expected violation, got {}", other.label()),
        )),
    }

    let cp = check_cp(&s, cfg)?;
    checks.push(CheckResult::of(
        "trace map completely positive",
        cp.cp,
        Some(cp.min_choi_eigenvalue),
        "Choi matrix PSD",
    ));

    // S - T is conjugation by the antisymmetric unit
    let u = ComplexMatrix::from_rows(vec![
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        vec![Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0)],
    ])?;
    let conj = SuperOperator::builtin(BuiltinMap::Conjugation { u });
    let dev = basis_deviation(&s.sub(&t)?, &conj)?;
    checks.push(CheckResult::of(
        "S - T equals the conjugation map on matrix units",
        dev <= 1e-12,
        Some(dev),
        "entrywise agreement on all four matrix units",
    ));

    let report = dominates(&s, &t, DominationOrder::Complete, cfg)?;
    checks.push(CheckResult::of(
        "dominates(S, T, complete)",
        report.dominated(),
        None,
        format!("lower {}, upper {}", report.lower.label(), report.upper.label()),
    ));

    Ok(("transpose under the trace map on M2: positivity without 2-positivity".into(), checks))
}

fn item_nogo_b(cfg: &ToleranceConfig) -> Result<(String, Vec<CheckResult>)> {
    let mut checks = Vec::new();
    let u = SuperOperator::builtin(BuiltinMap::StormerU);
    let v = SuperOperator::builtin(BuiltinMap::StormerV);
    let w = SuperOperator::builtin(BuiltinMap::StormerW);
    let t = u.add(&v)?;
    let s = v.add(&w.scale(2.0))?;

    let cp = check_cp(&s, cfg)?;
    checks.push(CheckResult::of(
        "S = V + 2W completely positive",
        cp.cp && cp.min_choi_eigenvalue >= -1e-9,
        Some(cp.min_choi_eigenvalue),
        "Choi matrix PSD",
    ));

    let dev = basis_deviation(&s.sub(&t)?, &SuperOperator::identity(3))?;
    checks.push(CheckResult::of(
        "S - T is the identity map on matrix units",
        dev <= 1e-12,
        Some(dev),
        "entrywise agreement on all nine matrix units",
    ));

    let report = dominates(&s, &t, DominationOrder::Complete, cfg)?;
    checks.push(CheckResult::of(
        "dominates(S, T, complete)",
        report.dominated(),
        None,
        format!("lower {}, upper {}", report.lower.label(), report.upper.label()),
    ));

    match check_positive(&t, cfg)? {
        PositivityVerdict::Violated { certificate } => checks.push(CheckResult::fail(
            "T = U + V positive (no violation over the restart budget)",
            Some(certificate.value()),
            "see-saw found a negative product vector",
        )),
        verdict => checks.push(CheckResult::pass(
            "T = U + V positive (no violation over the restart budget)",
            match &verdict {
                PositivityVerdict::Heuristic { best_value, .. } => Some(*best_value),
                _ => None,
            },
            format!("verdict {}", verdict.label()),
        )),
    }

    match check_decomposable(&t, cfg)? {
        Decomposability::NonDecomposable { certificate } => {
            let ok = verify_ppt_witness(&t.choi(), &certificate, 3, 3, cfg)?
                && certificate.value() < -1e-6;
            checks.push(
                CheckResult::of(
                    "T non-decomposable with re-verified PPT witness",
                    ok,
                    Some(certificate.value()),
                    "witness state PSD, PPT, unit trace; pairing below -1e-6",
                )
                .with_certificate(certificate),
            );
        }
        Decomposability::Inconclusive { certificate } => checks.push(CheckResult::inconclusive(
            "T non-decomposable with re-verified PPT witness",
            Some(certificate.value()),
            "search budget exhausted without a witness",
        )),
        Decomposability::Decomposable { certificate } => checks.push(CheckResult::fail(
            "T non-decomposable with re-verified PPT witness",
            Some(certificate.value()),
            "a decomposition pair was found",
        )),
    }

    Ok(("diagonal-flip plus cyclic-shift map on M3: positive, dominated, not decomposable".into(), checks))
}

fn item_nogo_powers(cfg: &ToleranceConfig) -> Result<(String, Vec<CheckResult>)> {
    let mut checks = Vec::new();
    let t = SuperOperator::builtin(BuiltinMap::Symmetrization { dim: 2 });
    let s = SuperOperator::builtin(BuiltinMap::TraceTimesIdentity { dim: 2 })
        .add(&SuperOperator::identity(2))?
        .scale(0.5);

    let dev = basis_deviation(&t.compose(&t)?, &t)?;
    checks.push(CheckResult::of(
        "T composed with itself equals T on matrix units",
        dev <= 1e-12,
        Some(dev),
        "idempotence on the basis",
    ));

    // the Choi matrix is (I (x) T) applied to the canonical maximally
    // entangled form sum E_ij (x) E_ij
    let j = t.choi();
    let half = 0.5;
    let expected = ComplexMatrix::from_rows(vec![
        vec![
            Complex64::new(2.0 * half, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(half, 0.0),
        ],
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(half, 0.0),
            Complex64::new(0.0, 0.0),
        ],
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(half, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ],
        vec![
            Complex64::new(half, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(2.0 * half, 0.0),
        ],
    ])?;
    let entry_dev = j.sub(&expected).max_abs_entry();
    checks.push(CheckResult::of(
        "symmetrized Choi matrix matches the displayed 4x4 form entry-exactly",
        entry_dev == 0.0,
        Some(entry_dev),
        "exact equality of all sixteen entries",
    ));

    let dec = eig_hermitian(&j, cfg)?;
    let min = dec.min_eigenvalue();
    checks.push(CheckResult::of(
        "minimal eigenvalue of the Choi form is -1/2",
        (min + 0.5).abs() <= 1e-9,
        Some(min),
        "middle antisymmetric block",
    ));

    let report = dominates(&s, &t, DominationOrder::Complete, cfg)?;
    checks.push(CheckResult::of(
        "dominates(S, T, complete)",
        report.dominated(),
        None,
        format!("lower {}, upper {}", report.lower.label(), report.upper.label()),
    ));

    Ok(("idempotent symmetrization on M2 dominated by an averaged trace map".into(), checks))
}

fn item_remark_powers(cfg: &ToleranceConfig) -> Result<(String, Vec<CheckResult>)> {
    let mut checks = Vec::new();
    let u = SuperOperator::builtin(BuiltinMap::StormerU);
    let v = SuperOperator::builtin(BuiltinMap::StormerV);
    for mu in [1.0f64, 2.0] {
        let t = u.add(&v.scale(mu))?;
        let t2 = t.compose(&t)?;
        let expected = SuperOperator::identity(3)
            .add(&v.scale(2.0 * mu))?
            .add(&v.compose(&v)?.scale(mu * mu))?;
        let dev = basis_deviation(&t2, &expected)?;
        checks.push(CheckResult::of(
            &format!("square of U + {mu} V expands on matrix units"),
            dev <= 1e-12,
            Some(dev),
            "agreement with identity + 2 mu V + mu^2 V^2",
        ));
        let cp = check_cp(&t2, cfg)?;
        checks.push(CheckResult::of(
            &format!("square of U + {mu} V is completely positive"),
            cp.cp,
            Some(cp.min_choi_eigenvalue),
            "Choi matrix PSD",
        ));
    }
    Ok(("squares of the shifted flip maps are completely positive".into(), checks))
}

fn item_paulsen(cfg: &ToleranceConfig) -> Result<(String, Vec<CheckResult>)> {
    let mut checks = Vec::new();
    for n in 1..=3usize {
        let system = PaulsenSystem::new(n);
        let mut rng = crate::rng_from_seed(cfg.seed.wrapping_add(700 + n as u64));
        let mut disagreements = 0usize;
        let mut compared = 0usize;
        let mut worst_identity_dev = 0.0f64;
        let u = system.sign_flip();
        for _ in 0..500 {
            let e = system.sample_boundary_element(&mut rng);
            let honest = e.y.sub(&e.x.adjoint()).max_abs_entry() <= 1e-12 && e.lambda.im.abs() <= 1e-12;
            let in_band = honest && e.boundary_distance() <= 1e-7;
            if !in_band {
                compared += 1;
                let psd = matches!(is_psd(&e.materialize(), cfg), Ok(v) if v.psd);
                if e.criterion(1e-9) != psd {
                    disagreements += 1;
                }
            }
            let m = e.materialize();
            let dev = system
                .apply_s_minus_identity(&e)
                .sub(&u.matmul(&m).matmul(&u))
                .max_abs_entry();
            worst_identity_dev = worst_identity_dev.max(dev);
        }
        checks.push(CheckResult::of(
            &format!("positivity criterion matches direct PSD tests (n = {n})"),
            disagreements == 0,
            Some(compared as f64),
            format!("{disagreements} disagreements outside the boundary band"),
        ));
        checks.push(CheckResult::of(
            &format!("(S - I) equals conjugation by the sign flip (n = {n})"),
            worst_identity_dev <= 1e-12,
            Some(worst_identity_dev),
            "exact identity on sampled elements",
        ));

        for k in 1..=3usize {
            let mut rng = crate::rng_from_seed(cfg.seed.wrapping_add(800 + (10 * n + k) as u64));
            let mut failures = 0usize;
            let mut worst_dev = 0.0f64;
            for _ in 0..200 {
                let e = sample_positive_level_k(n, k, &mut rng, cfg)?;
                let m = e.materialize();
                if !is_psd(&m, cfg)?.psd {
                    failures += 1;
                    continue;
                }
                let image = e.apply_s().sub(&m);
                let uk = e.sign_flip();
                worst_dev = worst_dev.max(image.sub(&uk.matmul(&m).matmul(&uk)).max_abs_entry());
                if !is_psd(&image, cfg)?.psd {
                    failures += 1;
                }
            }
            checks.push(CheckResult::of(
                &format!("S dominates the identity completely at level k = {k} (n = {n})"),
                failures == 0 && worst_dev <= 1e-12,
                Some(worst_dev),
                format!("{failures} failures over 200 positive samples"),
            ));
        }
    }
    Ok(("scalar-diagonal corner system: positivity criterion and complete domination by the compression".into(), checks))
}

fn item_lemma_matrices(cfg: &ToleranceConfig) -> Result<(String, Vec<CheckResult>)> {
    let mut checks = Vec::new();
    for (c, m) in [(0.9f64, 3usize), (1.0, 2)] {
        let inst = build_obstruction(c, m, cfg.seed.wrapping_add(900), cfg)?;
        let w = obstruction_witness(&inst, cfg)?;
        let bound = w.analytic_bound;
        checks.push(CheckResult::of(
            &format!("witness quadratic form below the analytic bound (c = {c}, m = {m})"),
            w.quadratic_form <= bound + 1e-7 && w.quadratic_form < 0.0,
            Some(w.quadratic_form),
            format!("bound {bound}"),
        ));
        checks.push(CheckResult::of(
            &format!("D - C has a negative eigenvalue (c = {c}, m = {m})"),
            w.min_eigenvalue_d_minus_c < 0.0,
            Some(w.min_eigenvalue_d_minus_c),
            "the domination C <= D fails",
        ));
    }
    Ok(("heavy-row against near-diagonal PSD grids: the two-matrix obstruction".into(), checks))
}

fn item_offdiag(cfg: &ToleranceConfig) -> Result<(String, Vec<CheckResult>)> {
    let mut checks = Vec::new();
    let mut rng = crate::rng_from_seed(cfg.seed.wrapping_add(1000));
    let mut violations = 0usize;
    let mut scalar_violations = 0usize;
    let mut worst_ratio = 0.0f64;
    let trials = 1000usize;
    for trial in 0..trials {
        let d = 3 + trial % 4;
        let kraus_count = 1 + trial % 3;
        let ks: Vec<ComplexMatrix> = (0..kraus_count).map(|_| random_matrix(&mut rng, d, d)).collect();
        let t = SuperOperator::from_kraus(ks)?;
        let x = random_psd(&mut rng, d);
        let n = 1 + trial % (d - 1);
        let cut = Truncation::new(n, d)?;
        let report =
            verify_offdiag_inequality(&t, &x, cut, Gauge::Schatten(1.0), SpaceConstants::default(), cfg)?;
        if !report.holds {
            violations += 1;
        }
        if let Some(r) = report.ratio {
            worst_ratio = worst_ratio.max(r);
        }

        // scalar form through the identity map, trace and operator gauges
        let (qx, rx, off) = corner_truncations(&x, cut)?;
        for gauge in [Gauge::Schatten(1.0), Gauge::Schatten(f64::INFINITY)] {
            let lhs = symmetric_norm(&off, gauge)?;
            let bound = 2.0 * (symmetric_norm(&rx, gauge)? * symmetric_norm(&qx, gauge)?).sqrt();
            if lhs > bound + 1e-8 {
                scalar_violations += 1;
            }
        }
    }
    checks.push(CheckResult::of(
        "off-diagonal estimate holds across the Monte Carlo sweep",
        violations == 0,
        Some(worst_ratio),
        format!("{violations} violations in {trials} trials; worst ratio against the constant 4"),
    ));
    checks.push(CheckResult::of(
        "scalar corner estimate holds in trace and operator gauges",
        scalar_violations == 0,
        None,
        format!("{scalar_violations} violations in {} checks", 2 * trials),
    ));
    Ok(("positive maps into the trace class: squared off-diagonal norm against the corner product".into(), checks))
}

fn item_chain(cfg: &ToleranceConfig) -> Result<(String, Vec<CheckResult>)> {
    let mut checks = Vec::new();
    let x = ComplexMatrix::diag_real(&[2.0, 2.0, 2.0, 2.0, 2.0, 2.0, 0.1, 0.1]);
    let chain = monotone_chain(&x, 3, cfg)?;
    let mut decreasing = true;
    for k in 1..chain.elements.len() {
        let gap = chain.elements[k - 1].sub(&chain.elements[k]);
        if !is_psd(&gap, cfg)?.psd {
            decreasing = false;
        }
    }
    checks.push(CheckResult::of(
        "chain decreases in the PSD order",
        decreasing,
        Some(chain.level),
        "every consecutive gap PSD",
    ));
    let min_gap = chain.gap_norms.iter().copied().fold(f64::INFINITY, f64::min);
    checks.push(CheckResult::of(
        "every gap is visible through x at scale above 2/3",
        min_gap > 2.0 / 3.0,
        Some(min_gap),
        "operator norms of x (a_{k-1} - a_k) x",
    ));
    Ok(("monotone chain with uniformly large visible gaps".into(), checks))
}

/// Majorization sweep shared by the acceptance suite and the CLI: sampled
/// order pairs with a positive middle term, pinchings with transfer
/// certificates.
pub fn majorization_sweep(cfg: &ToleranceConfig) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let mut rng = crate::rng_from_seed(cfg.seed.wrapping_add(1100));

    let mut order_failures = 0usize;
    for trial in 0..500 {
        let n = 2 + trial % 7;
        let b = random_psd(&mut rng, n);
        let d = random_psd(&mut rng, n);
        let a = b.add(&d);
        let report = crate::majorization::mu_order_check(&a, &b, cfg)?;
        if !(report.order_holds && report.pointwise_dominated && report.max_excess <= 1e-9) {
            order_failures += 1;
        }
    }
    checks.push(CheckResult::of(
        "sandwich order pairs dominate pointwise in the spectrum",
        order_failures == 0,
        None,
        format!("{order_failures} failures over 500 sampled pairs"),
    ));

    let mut pinch_failures = 0usize;
    for trial in 0..200 {
        let n = 4 + (trial % 3) * 2;
        let a = random_psd(&mut rng, n);
        let blocks: Vec<Vec<usize>> = (0..n / 2).map(|b| vec![2 * b, 2 * b + 1]).collect();
        let partition = crate::majorization::Partition::new(blocks, n)?;
        let pinched = crate::majorization::pinch(&a, &partition)?;
        let mu_a = singular_spectrum(&a);
        let mu_p = singular_spectrum(&pinched);
        if !submajorizes(&mu_a, &mu_p, cfg) {
            pinch_failures += 1;
            continue;
        }
        let d = transfer_certificate(&mu_a, &mu_p, cfg)?;
        if !d.is_doubly_substochastic(1e-7) {
            pinch_failures += 1;
            continue;
        }
        let applied = d.apply(&mu_a.padded(n));
        let target = mu_p.padded(n);
        if applied
            .iter()
            .zip(&target)
            .any(|(got, want)| (got - want).abs() > 1e-7)
        {
            pinch_failures += 1;
        }
    }
    checks.push(CheckResult::of(
        "pinchings submajorize with valid transfer certificates",
        pinch_failures == 0,
        None,
        format!("{pinch_failures} failures over 200 pinchings"),
    ));

    Ok(checks)
}

/// Schur equivalence sweep shared by the acceptance suite: formal positivity
/// of the symbol, positivity, and complete positivity agree.
pub fn schur_equivalence_sweep(cfg: &ToleranceConfig) -> Result<CheckResult> {
    let mut rng = crate::rng_from_seed(cfg.seed.wrapping_add(1200));
    let mut disagreements = 0usize;
    for trial in 0..100 {
        let n = 2 + trial % 5;
        let grid = if trial % 2 == 0 {
            let b = random_matrix(&mut rng, n, n);
            b.adjoint().matmul(&b).scale(1.0 / n as f64)
        } else {
            crate::matrix::random_hermitian(&mut rng, n)
        };
        let sym = crate::schur::SchurSymbol::new(grid)?;
        let fp = crate::schur::formally_positive(&sym, cfg);
        let map = sym.as_map();
        let cp = check_cp(&map, cfg)?.cp;
        let pos = check_positive(&map, cfg)?;
        let pos_ok = pos.passed();
        if fp != cp || fp != pos_ok {
            disagreements += 1;
        }
    }
    Ok(CheckResult::of(
        "formal positivity, positivity, and complete positivity agree on symbols",
        disagreements == 0,
        None,
        format!("{disagreements} disagreements over 100 random symbols"),
    ))
}

/// Ball-image sweep used by the acceptance runner.
pub fn ball_image_sweep(cfg: &ToleranceConfig) -> Result<CheckResult> {
    let mut rng = crate::rng_from_seed(cfg.seed.wrapping_add(1300));
    let mut failures = 0usize;
    for trial in 0..10 {
        let n = 2 + trial % 3;
        let a = random_matrix(&mut rng, n, n);
        let report = crate::order::interval_equals_ball_image(&a, 50, cfg)?;
        if !report.holds {
            failures += 1;
        }
    }
    let _ = random_contraction(&mut rng, 2, cfg);
    Ok(CheckResult::of(
        "order intervals coincide with multiplication-operator ball images",
        failures == 0,
        None,
        format!("{failures} failures over 10 sampled symbols"),
    ))
}
