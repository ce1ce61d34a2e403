//! Command-line surface. Exit codes: 0 all checks passed or answered, 1 a
//! check came back violated/false, 2 inconclusive verdicts present, 3 input
//! error.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::{SpaceConstants, ToleranceConfig};
use crate::corpus::{corpus_run, CORPUS_IDS};
use crate::decompose::{check_decomposable, Decomposability};
use crate::doc::{matrix_to_doc, parse_document, spectrum_to_doc, DocumentEnvelope};
use crate::error::{Error, Result};
use crate::majorization::{
    pinch, submajorizes, symmetric_norm, transfer_certificate, Gauge, Partition,
};
use crate::maps::{check_cp, dominates, DominationOrder};
use crate::order::{monotone_chain, psol_member, verify_offdiag_inequality, OrderInterval, Truncation};
use crate::report::Report;
use crate::schur::{
    build_obstruction, dp_tail_score, formally_positive, obstruction_witness, schur_apply,
    finite_domination_obstruction, ObstructionSearchOutcome,
};
use crate::seesaw::{check_k_positive, check_positive, PositivityVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "domcheck", version, about = "Order, majorization, and map-positivity checks on finite matrix spaces")]
pub struct Cli {
    /// Certificate tolerance (overrides DOMCHECK_TOL).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for randomized sweeps (default 0: fully deterministic runs).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Random restarts for see-saw searches.
    #[arg(long, global = true)]
    pub restarts: Option<usize>,
    /// Iteration budget for alternating projections.
    #[arg(long, global = true)]
    pub max_iters: Option<usize>,
    /// Output format; json is the stable machine contract.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Write the full report (certificates included) to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Singular value spectrum of a matrix.
    Sv {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Symmetric gauge norm (schatten:p or kyfan:k).
    Norm {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "schatten:2")]
        gauge: String,
    },
    /// Does the first spectrum submajorize the second?
    Submajorize {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
    },
    /// Doubly substochastic transfer certificate for a submajorization.
    Transfer {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
    },
    /// Block-diagonal compression; reports the submajorization check.
    Pinch {
        #[arg(long = "in")]
        input: PathBuf,
        /// Blocks as index lists: "0,1|2,3".
        #[arg(long)]
        blocks: String,
    },
    /// Membership of x in the order interval [0, upper].
    IntervalMember {
        #[arg(long)]
        upper: PathBuf,
        #[arg(long)]
        x: PathBuf,
    },
    /// Contraction parameterizing a member of [0, upper].
    IntervalParam {
        #[arg(long)]
        upper: PathBuf,
        #[arg(long)]
        x: PathBuf,
    },
    /// Membership of x in the positive solid of the given members.
    PsolMember {
        #[arg(long = "member", required = true)]
        members: Vec<PathBuf>,
        #[arg(long)]
        x: PathBuf,
    },
    /// Off-diagonal estimate for a positive map at a corner cut.
    OffdiagVerify {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        cut: usize,
        #[arg(long, default_value = "schatten:1")]
        gauge: String,
    },
    /// Monotone chain with uniformly large visible gaps.
    Chain {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Positivity hierarchy checks: cp, positive, kpositive:K, decomposable.
    CheckMap {
        #[arg(long)]
        property: String,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Domination 0 <= T <= S in the positive or complete order.
    Dominates {
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        t: PathBuf,
        #[arg(long, default_value = "complete")]
        order: String,
    },
    /// Schur multiplier analysis on a symbol grid.
    Schur {
        #[arg(long)]
        symbol: Option<PathBuf>,
        /// formally-positive | tail | apply | obstruction | build-obstruction
        #[arg(long)]
        op: String,
        #[arg(long)]
        x: Option<PathBuf>,
        #[arg(long)]
        psi: Option<PathBuf>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        threshold: Option<usize>,
    },
    /// Run the certified construction corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusAction {
    /// Run one item by id, or "all".
    Run { id: String },
    /// List item ids.
    List,
}

pub fn effective_config(cli: &Cli) -> ToleranceConfig {
    let mut cfg = ToleranceConfig::default();
    if let Ok(env_tol) = std::env::var("DOMCHECK_TOL") {
        if let Ok(v) = env_tol.parse::<f64>() {
            if v > 0.0 {
                cfg.tol_cert = v;
            }
        }
    }
    if let Some(t) = cli.tol {
        cfg.tol_cert = t;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(r) = cli.restarts {
        cfg.restarts = r.max(1);
    }
    if let Some(m) = cli.max_iters {
        cfg.max_iters = m;
    }
    cfg
}

/// Runs the parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let cfg = effective_config(&cli);
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return 3;
    }
    let start = std::time::Instant::now();
    let mut report = match dispatch(&cli, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    report.runtime_ms = start.elapsed().as_millis();

    match cli.format {
        OutputFormat::Text => print!("{}", report.to_text()),
        OutputFormat::Json => println!("{}", report.to_json_digest()),
    }
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, report.to_json_full()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 3;
        }
    }
    report.exit_code()
}

fn load(path: &Path, report: &mut Report) -> Result<DocumentEnvelope> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    report.add_input(&path.display().to_string(), &bytes);
    parse_document(std::str::from_utf8(&bytes).map_err(|e| Error::Parse(e.to_string()))?)
}

fn dispatch(cli: &Cli, cfg: &ToleranceConfig) -> Result<Report> {
    match &cli.command {
        Command::Sv { input } => {
            let mut report = Report::new("sv", cfg);
            let m = load(input, &mut report)?.as_matrix()?;
            let s = crate::majorization::singular_spectrum(&m);
            report.push("singular-spectrum", "info", None);
            report.output = Some(serde_json::to_value(spectrum_to_doc(&s)).expect("spectrum json"));
            Ok(report)
        }
        Command::Norm { input, gauge } => {
            let mut report = Report::new("norm", cfg);
            let m = load(input, &mut report)?.as_matrix()?;
            let g = Gauge::parse(gauge)?;
            let value = symmetric_norm(&m, g)?;
            report.push(&format!("norm {}", g.describe()), "info", Some(value));
            report.output = Some(serde_json::json!({ "value": value }));
            Ok(report)
        }
        Command::Submajorize { x, y } => {
            let mut report = Report::new("submajorize", cfg);
            let sx = load(x, &mut report)?.as_spectrum()?;
            let sy = load(y, &mut report)?.as_spectrum()?;
            let holds = submajorizes(&sx, &sy, cfg);
            report.push("submajorizes", if holds { "pass" } else { "violated" }, None);
            report.output = Some(serde_json::json!({ "submajorizes": holds }));
            Ok(report)
        }
        Command::Transfer { x, y } => {
            let mut report = Report::new("transfer", cfg);
            let sx = load(x, &mut report)?.as_spectrum()?;
            let sy = load(y, &mut report)?.as_spectrum()?;
            match transfer_certificate(&sx, &sy, cfg) {
                Ok(d) => {
                    let n = d.dim();
                    let substochastic = d.is_doubly_substochastic(cfg.tol_cert);
                    let applied = d.apply(&sx.padded(n));
                    let target = sy.padded(n);
                    let worst = applied
                        .iter()
                        .zip(&target)
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0f64, f64::max);
                    report.push("doubly-substochastic", if substochastic { "pass" } else { "violated" }, None);
                    report.push("transfer-reproduces-target", if worst <= cfg.tol_cert { "pass" } else { "violated" }, Some(worst));
                    report.output = Some(serde_json::json!({ "entries": d.entries() }));
                }
                Err(Error::NotSubmajorized) => {
                    report.push("submajorizes", "violated", None);
                }
                Err(e) => return Err(e),
            }
            Ok(report)
        }
        Command::Pinch { input, blocks } => {
            let mut report = Report::new("pinch", cfg);
            let m = load(input, &mut report)?.as_matrix()?;
            let partition = parse_blocks(blocks, m.rows())?;
            let out = pinch(&m, &partition)?;
            let holds = submajorizes(
                &crate::majorization::singular_spectrum(&m),
                &crate::majorization::singular_spectrum(&out),
                cfg,
            );
            report.push("pinched-submajorized", if holds { "pass" } else { "violated" }, None);
            report.output = Some(serde_json::to_value(matrix_to_doc(&out)).expect("matrix json"));
            Ok(report)
        }
        Command::IntervalMember { upper, x } => {
            let mut report = Report::new("interval-member", cfg);
            let a = load(upper, &mut report)?.as_matrix()?;
            let candidate = load(x, &mut report)?.as_matrix()?;
            let interval = OrderInterval::new(a, cfg)?;
            let verdict = interval.member(&candidate, cfg)?;
            if verdict.member {
                report.push("interval-member", "pass", None);
            } else if let Some(cert) = &verdict.certificate {
                report.push_with_certificate(
                    &format!("interval-member ({} bound fails)", verdict.failing_side.unwrap_or("?")),
                    "violated",
                    Some(cert.value()),
                    cert,
                );
            } else {
                report.push("interval-member", "violated", None);
            }
            report.output = Some(serde_json::json!({ "member": verdict.member }));
            Ok(report)
        }
        Command::IntervalParam { upper, x } => {
            let mut report = Report::new("interval-param", cfg);
            let a = load(upper, &mut report)?.as_matrix()?;
            let candidate = load(x, &mut report)?.as_matrix()?;
            let interval = OrderInterval::new(a, cfg)?;
            match interval.parameterize(&candidate, cfg) {
                Ok(w) => {
                    let norm = crate::eig::operator_norm(&w);
                    report.push("contraction-norm", if norm <= 1.0 + cfg.tol_cert { "pass" } else { "violated" }, Some(norm));
                    report.output = Some(serde_json::to_value(matrix_to_doc(&w)).expect("matrix json"));
                }
                Err(Error::NotMember) => report.push("interval-member", "violated", None),
                Err(e) => return Err(e),
            }
            Ok(report)
        }
        Command::PsolMember { members, x } => {
            let mut report = Report::new("psol-member", cfg);
            let mut set = Vec::new();
            for path in members {
                set.push(load(path, &mut report)?.as_matrix()?);
            }
            let candidate = load(x, &mut report)?.as_matrix()?;
            let member = psol_member(&set, &candidate, cfg)?;
            report.push("psol-member", if member { "pass" } else { "violated" }, None);
            report.output = Some(serde_json::json!({ "member": member }));
            Ok(report)
        }
        Command::OffdiagVerify { map, x, cut, gauge } => {
            let mut report = Report::new("offdiag-verify", cfg);
            let t = load(map, &mut report)?.as_map()?;
            let m = load(x, &mut report)?.as_matrix()?;
            let g = Gauge::parse(gauge)?;
            let positivity = check_positive(&t, cfg)?;
            report.push(
                "map-positivity",
                match positivity {
                    PositivityVerdict::Violated { .. } => "violated",
                    _ => "pass",
                },
                None,
            );
            let truncation = Truncation::new(*cut, m.rows())?;
            let r = verify_offdiag_inequality(&t, &m, truncation, g, SpaceConstants::default(), cfg)?;
            report.push("offdiag-estimate", if r.holds { "pass" } else { "violated" }, Some(r.lhs_squared));
            report.push("corner-product-bound", "info", Some(r.bound_symmetric));
            report.push("generic-target-bound", "info", Some(r.bound_general));
            if let Some(ratio) = r.ratio {
                report.push("observed-ratio", "info", Some(ratio));
            }
            if let (Some(ts), Some(iv)) = (r.t_star, r.interpolation_value) {
                report.push("interpolation-weight", "info", Some(ts));
                report.push("interpolation-value", "info", Some(iv));
            }
            Ok(report)
        }
        Command::Chain { x, n } => {
            let mut report = Report::new("chain", cfg);
            let m = load(x, &mut report)?.as_matrix()?;
            let chain = monotone_chain(&m, *n, cfg)?;
            let min_gap = chain.gap_norms.iter().copied().fold(f64::INFINITY, f64::min);
            report.push("chain-monotone", "pass", Some(chain.level));
            report.push("gaps-above-two-thirds", if min_gap > 2.0 / 3.0 { "pass" } else { "violated" }, Some(min_gap));
            report.output = Some(serde_json::json!({ "gap_norms": chain.gap_norms, "level": chain.level }));
            Ok(report)
        }
        Command::CheckMap { property, input } => {
            let mut report = Report::new("check-map", cfg);
            let t = load(input, &mut report)?.as_map()?;
            check_map_property(&t, property, cfg, &mut report)?;
            Ok(report)
        }
        Command::Dominates { s, t, order } => {
            let mut report = Report::new("dominates", cfg);
            let s_map = load(s, &mut report)?.as_map()?;
            let t_map = load(t, &mut report)?.as_map()?;
            let ord = DominationOrder::parse(order)?;
            let verdict = dominates(&s_map, &t_map, ord, cfg)?;
            push_outcome(&mut report, "lower (T positive)", &verdict.lower);
            push_outcome(
                &mut report,
                match ord {
                    DominationOrder::Complete => "upper (S - T completely positive)",
                    DominationOrder::Positive => "upper (S - T positive)",
                },
                &verdict.upper,
            );
            report.push("dominated", if verdict.dominated() { "pass" } else { "violated" }, None);
            Ok(report)
        }
        Command::Schur { symbol, op, x, psi, c, m, threshold } => {
            let mut report = Report::new("schur", cfg);
            match op.as_str() {
                "formally-positive" => {
                    let sym = load(required(symbol, "--symbol")?, &mut report)?.as_symbol()?;
                    let fp = formally_positive(&sym, cfg);
                    report.push("formally-positive", if fp { "pass" } else { "violated" }, None);
                }
                "tail" => {
                    let sym = load(required(symbol, "--symbol")?, &mut report)?.as_symbol()?;
                    let j = threshold.ok_or_else(|| Error::Schema("--threshold required for tail".into()))?;
                    let r = dp_tail_score(&sym, j)?;
                    report.push("tail-score", "info", Some(r.score));
                    report.output = Some(serde_json::json!({
                        "threshold": r.threshold,
                        "row_tails": r.row_tails,
                        "col_tails": r.col_tails,
                        "score": r.score,
                    }));
                }
                "apply" => {
                    let sym = load(required(symbol, "--symbol")?, &mut report)?.as_symbol()?;
                    let mat = load(required(x, "--x")?, &mut report)?.as_matrix()?;
                    let out = schur_apply(&sym, &mat)?;
                    report.push("schur-apply", "info", None);
                    report.output = Some(serde_json::to_value(matrix_to_doc(&out)).expect("matrix json"));
                }
                "build-obstruction" => {
                    let cc = c.ok_or_else(|| Error::Schema("--c required".into()))?;
                    let mm = m.ok_or_else(|| Error::Schema("--m required".into()))?;
                    let inst = build_obstruction(cc, mm, cfg.seed, cfg)?;
                    let w = obstruction_witness(&inst, cfg)?;
                    report.push("witness-quadratic-form", "pass", Some(w.quadratic_form));
                    report.push("analytic-bound", "info", Some(w.analytic_bound));
                    report.push("min-eigenvalue-d-minus-c", "info", Some(w.min_eigenvalue_d_minus_c));
                }
                "obstruction" => {
                    let phi = load(required(symbol, "--symbol")?, &mut report)?.as_symbol()?;
                    let psi_sym = load(required(psi, "--psi")?, &mut report)?.as_symbol()?;
                    let cc = c.ok_or_else(|| Error::Schema("--c required".into()))?;
                    let mm = m.ok_or_else(|| Error::Schema("--m required".into()))?;
                    let r = finite_domination_obstruction(&phi, &psi_sym, cc, mm, cfg)?;
                    report.push("phi-formally-positive", if r.phi_formally_positive { "pass" } else { "violated" }, None);
                    report.push("psi-formally-positive", if r.psi_formally_positive { "pass" } else { "violated" }, None);
                    report.push(
                        "difference-formally-positive",
                        if r.difference_formally_positive { "pass" } else { "violated" },
                        None,
                    );
                    match &r.outcome {
                        ObstructionSearchOutcome::NoObstruction => {
                            report.push("obstruction-search", "pass", None);
                        }
                        ObstructionSearchOutcome::Witnessed { indices, witness } => {
                            report.push("obstruction-search", "violated", Some(witness.quadratic_form));
                            report.output = Some(serde_json::json!({
                                "indices": indices,
                                "quadratic_form": witness.quadratic_form,
                                "message": r.message,
                            }));
                        }
                    }
                }
                other => return Err(Error::Schema(format!("unknown schur op '{other}'"))),
            }
            Ok(report)
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => {
                let mut report = Report::new("corpus list", cfg);
                for id in CORPUS_IDS {
                    report.push(id, "info", None);
                }
                report.output = Some(serde_json::json!(CORPUS_IDS));
                Ok(report)
            }
            CorpusAction::Run { id } => {
                let mut report = Report::new(&format!("corpus run {id}"), cfg);
                let corpus = corpus_run(id, cfg)?;
                for item in &corpus.items {
                    for check in &item.checks {
                        let verdict = match check.verdict.as_str() {
                            "pass" => "pass",
                            "inconclusive" => "inconclusive",
                            _ => "violated",
                        };
                        let name = format!("{}: {}", item.id, check.name);
                        match &check.certificate {
                            Some(cert) => report.push_with_certificate(&name, verdict, check.value, cert),
                            None => report.push(&name, verdict, check.value),
                        }
                    }
                }
                report.output = Some(serde_json::json!({
                    "items": corpus
                        .items
                        .iter()
                        .map(|i| {
                            serde_json::json!({
                                "id": i.id,
                                "description": i.description,
                                "passed": i.all_passed(),
                                "runtime_ms": i.runtime_ms,
                            })
                        })
                        .collect::<Vec<_>>(),
                }));
                Ok(report)
            }
        },
    }
}

fn required<'a>(value: &'a Option<PathBuf>, flag: &str) -> Result<&'a PathBuf> {
    value.as_ref().ok_or_else(|| Error::Schema(format!("{flag} is required for this op")))
}

fn push_outcome(report: &mut Report, name: &str, outcome: &crate::maps::CheckOutcome) {
    match outcome {
        crate::maps::CheckOutcome::CertifiedPass { .. } => report.push(name, "pass", None),
        crate::maps::CheckOutcome::HeuristicPass { best_value, .. } => {
            report.push(&format!("{name} [heuristic]"), "pass", Some(*best_value))
        }
        crate::maps::CheckOutcome::Violated { certificate } => {
            report.push_with_certificate(name, "violated", Some(certificate.value()), certificate)
        }
    }
}

fn check_map_property(
    t: &crate::maps::SuperOperator,
    property: &str,
    cfg: &ToleranceConfig,
    report: &mut Report,
) -> Result<()> {
    let lower = property.to_ascii_lowercase();
    if lower == "cp" {
        let r = check_cp(t, cfg)?;
        if r.cp {
            report.push("completely-positive", "pass", Some(r.min_choi_eigenvalue));
        } else {
            let cert = r.certificate.expect("witness on failure");
            report.push_with_certificate("completely-positive", "violated", Some(cert.value()), &cert);
        }
        return Ok(());
    }
    if lower == "positive" {
        push_positivity(report, "positive", check_positive(t, cfg)?);
        return Ok(());
    }
    if let Some(k_text) = lower.strip_prefix("kpositive:") {
        let k: usize = k_text
            .parse()
            .map_err(|_| Error::Schema(format!("bad k-positivity level '{k_text}'")))?;
        push_positivity(report, &format!("{k}-positive"), check_k_positive(t, k, cfg)?);
        return Ok(());
    }
    if lower == "decomposable" {
        match check_decomposable(t, cfg)? {
            Decomposability::Decomposable { certificate } => {
                report.push_with_certificate("decomposable", "pass", Some(certificate.value()), &certificate)
            }
            Decomposability::NonDecomposable { certificate } => {
                report.push_with_certificate("decomposable", "violated", Some(certificate.value()), &certificate)
            }
            Decomposability::Inconclusive { certificate } => {
                report.push_with_certificate("decomposable", "inconclusive", Some(certificate.value()), &certificate)
            }
        }
        return Ok(());
    }
    Err(Error::Schema(format!("unknown property '{property}'")))
}

fn push_positivity(report: &mut Report, name: &str, verdict: PositivityVerdict) {
    match verdict {
        PositivityVerdict::Certified { .. } => report.push(name, "pass", None),
        PositivityVerdict::Heuristic { best_value, .. } => {
            report.push(&format!("{name} [heuristic]"), "pass", Some(best_value))
        }
        PositivityVerdict::Violated { certificate } => {
            report.push_with_certificate(name, "violated", Some(certificate.value()), &certificate)
        }
    }
}

fn parse_blocks(text: &str, n: usize) -> Result<Partition> {
    let mut blocks = Vec::new();
    for chunk in text.split('|') {
        let mut block = Vec::new();
        for idx in chunk.split(',') {
            let idx = idx.trim();
            if idx.is_empty() {
                continue;
            }
            block.push(
                idx.parse::<usize>()
                    .map_err(|_| Error::BadPartition(format!("bad index '{idx}'")))?,
            );
        }
        if !block.is_empty() {
            blocks.push(block);
        }
    }
    Partition::new(blocks, n)
}
