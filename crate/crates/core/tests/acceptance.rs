//! Acceptance suite: every criterion runs standalone at its stated tolerance
//! and prints one pass/fail line. Tolerances are pinned here, in code.

use std::time::Instant;

use domcheck_core::config::{SpaceConstants, ToleranceConfig};
use domcheck_core::corpus;
use domcheck_core::decompose::{check_decomposable, verify_ppt_witness, Decomposability};
use domcheck_core::eig::{eig_hermitian, is_psd};
use domcheck_core::majorization::{
    mu_order_check, pinch, singular_spectrum, submajorizes, symmetric_norm, transfer_certificate,
    Gauge, Partition,
};
use domcheck_core::maps::{
    check_cp, dominates, partial_transpose_input, BuiltinMap, Certificate, DominationOrder,
    SuperOperator,
};
use domcheck_core::matrix::{random_matrix, random_psd, ComplexMatrix};
use domcheck_core::order::{
    corner_truncations, monotone_chain, verify_offdiag_inequality, Truncation,
};
use domcheck_core::paulsen::{sample_positive_level_k, PaulsenSystem};
use domcheck_core::schur::{build_obstruction, obstruction_witness, SchurSymbol};
use domcheck_core::seesaw::{check_k_positive, check_positive, verify_violation, PositivityVerdict};
use num_complex::Complex64;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn report(criterion: &str, passed: bool) {
    println!("acceptance {criterion}: {}", if passed { "pass" } else { "FAIL" });
    assert!(passed, "criterion failed: {criterion}");
}

fn basis_deviation(a: &SuperOperator, b: &SuperOperator) -> f64 {
    let d = a.dim_in();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let e = ComplexMatrix::matrix_unit(d, i, j);
            let dev = a.apply(&e).unwrap().sub(&b.apply(&e).unwrap()).max_abs_entry();
            worst = worst.max(dev);
        }
    }
    worst
}

#[test]
fn criterion_01_transpose_under_trace_map() {
    let start = Instant::now();
    let c = cfg();
    let t = SuperOperator::transpose_map(2);
    let s = SuperOperator::builtin(BuiltinMap::TraceTimesIdentity { dim: 2 });

    let positive_certified = matches!(check_positive(&t, &c).unwrap(), PositivityVerdict::Certified { .. });

    let two_positive = check_k_positive(&t, 2, &c).unwrap();
    let witness_ok = match &two_positive {
        PositivityVerdict::Violated { certificate } => {
            (certificate.value() + 1.0).abs() <= 1e-9
                && verify_violation(&t.choi(), certificate, 1e-10)
        }
        _ => false,
    };

    let s_cp = check_cp(&s, &c).unwrap().cp;

    let u = ComplexMatrix::from_rows(vec![
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        vec![Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0)],
    ])
    .unwrap();
    let conj = SuperOperator::builtin(BuiltinMap::Conjugation { u });
    let conj_exact = basis_deviation(&s.sub(&t).unwrap(), &conj) <= 1e-12;

    let dominated = dominates(&s, &t, DominationOrder::Complete, &c).unwrap().dominated();

    let in_time = start.elapsed().as_secs_f64() < 1.0;
    report(
        "1 (transpose/trace pair on M2)",
        positive_certified && witness_ok && s_cp && conj_exact && dominated && in_time,
    );
}

#[test]
fn criterion_02_stormer_map_non_decomposable() {
    let start = Instant::now();
    let c = cfg();
    let u = SuperOperator::builtin(BuiltinMap::StormerU);
    let v = SuperOperator::builtin(BuiltinMap::StormerV);
    let w = SuperOperator::builtin(BuiltinMap::StormerW);
    let t = u.add(&v).unwrap();
    let s = v.add(&w.scale(2.0)).unwrap();

    let s_report = check_cp(&s, &c).unwrap();
    let s_cp = s_report.cp && s_report.min_choi_eigenvalue >= -1e-9;

    let identity_exact = basis_deviation(&s.sub(&t).unwrap(), &SuperOperator::identity(3)) <= 1e-12;

    let t_positive = !matches!(check_positive(&t, &c).unwrap(), PositivityVerdict::Violated { .. });

    let verdict = check_decomposable(&t, &c).unwrap();
    let witness_ok = match &verdict {
        Decomposability::NonDecomposable { certificate } => {
            let Certificate::PptWitness { state, value } = certificate else {
                panic!("unexpected certificate kind")
            };
            let rho_psd = is_psd(state, &c).unwrap().min_eigenvalue >= -1e-9;
            let pt_psd = is_psd(&partial_transpose_input(state, 3, 3), &c)
                .unwrap()
                .min_eigenvalue
                >= -1e-9;
            rho_psd
                && pt_psd
                && *value < -1e-6
                && verify_ppt_witness(&t.choi(), certificate, 3, 3, &c).unwrap()
        }
        _ => false,
    };

    let in_time = start.elapsed().as_secs_f64() < 30.0;
    report(
        "2 (non-decomposable dominated map on M3)",
        s_cp && identity_exact && t_positive && witness_ok && in_time,
    );
}

#[test]
fn criterion_03_symmetrization_choi_form() {
    let c = cfg();
    let t = SuperOperator::builtin(BuiltinMap::Symmetrization { dim: 2 });

    let j = t.choi();
    let expected = [
        [1.0, 0.0, 0.0, 0.5],
        [0.0, 0.0, 0.5, 0.0],
        [0.0, 0.5, 0.0, 0.0],
        [0.5, 0.0, 0.0, 1.0],
    ];
    let mut exact = true;
    for r in 0..4 {
        for s in 0..4 {
            if j[(r, s)] != Complex64::new(expected[r][s], 0.0) {
                exact = false;
            }
        }
    }

    let min = eig_hermitian(&j, &c).unwrap().min_eigenvalue();
    let min_ok = (min + 0.5).abs() <= 1e-9;

    let idempotent = basis_deviation(&t.compose(&t).unwrap(), &t) <= 1e-12;

    report("3 (symmetrization Choi form on M2)", exact && min_ok && idempotent);
}

#[test]
fn criterion_04_shifted_flip_squares() {
    let c = cfg();
    let u = SuperOperator::builtin(BuiltinMap::StormerU);
    let v = SuperOperator::builtin(BuiltinMap::StormerV);
    let mut ok = true;
    for mu in [1.0f64, 2.0] {
        let t = u.add(&v.scale(mu)).unwrap();
        let t2 = t.compose(&t).unwrap();
        let expected = SuperOperator::identity(3)
            .add(&v.scale(2.0 * mu))
            .unwrap()
            .add(&v.compose(&v).unwrap().scale(mu * mu))
            .unwrap();
        if basis_deviation(&t2, &expected) > 1e-12 {
            ok = false;
        }
        if !check_cp(&t2, &c).unwrap().cp {
            ok = false;
        }
    }
    report("4 (squares expand and stay completely positive)", ok);
}

#[test]
fn criterion_05_corner_system_domination() {
    let c = cfg();
    let mut ok = true;
    for n in 1..=3usize {
        let system = PaulsenSystem::new(n);
        let mut rng = domcheck_core::rng_from_seed(500 + n as u64);
        let u = system.sign_flip();
        for _ in 0..500 {
            let e = system.sample_boundary_element(&mut rng);
            let honest = e.y.sub(&e.x.adjoint()).max_abs_entry() <= 1e-12 && e.lambda.im.abs() <= 1e-12;
            if !(honest && e.boundary_distance() <= 1e-7) {
                let psd = matches!(is_psd(&e.materialize(), &c), Ok(v) if v.psd);
                if e.criterion(1e-9) != psd {
                    ok = false;
                }
            }
            let m = e.materialize();
            if system
                .apply_s_minus_identity(&e)
                .sub(&u.matmul(&m).matmul(&u))
                .max_abs_entry()
                > 1e-12
            {
                ok = false;
            }
        }
        for k in 1..=3usize {
            let mut rng = domcheck_core::rng_from_seed(550 + (10 * n + k) as u64);
            for _ in 0..200 {
                let e = sample_positive_level_k(n, k, &mut rng, &c).unwrap();
                let m = e.materialize();
                if !is_psd(&m, &c).unwrap().psd {
                    ok = false;
                    continue;
                }
                let image = e.apply_s().sub(&m);
                let uk = e.sign_flip();
                if image.sub(&uk.matmul(&m).matmul(&uk)).max_abs_entry() > 1e-12 {
                    ok = false;
                }
                if !is_psd(&image, &c).unwrap().psd {
                    ok = false;
                }
            }
        }
    }
    report("5 (corner-system criterion and complete domination)", ok);
}

#[test]
fn criterion_06_obstruction_witness_bounds() {
    let c = cfg();
    let mut ok = true;
    for (cc, m, bound) in [(0.9f64, 3usize, -3.29f64), (1.0, 2, -1.0)] {
        let inst = build_obstruction(cc, m, 42, &c).unwrap();
        let w = obstruction_witness(&inst, &c).unwrap();
        if w.quadratic_form > bound + 1e-7 {
            ok = false;
        }
        if w.min_eigenvalue_d_minus_c >= 0.0 {
            ok = false;
        }
    }
    report("6 (two-matrix obstruction witness values)", ok);
}

#[test]
fn criterion_07_offdiag_sweep() {
    let start = Instant::now();
    let c = cfg();
    let mut rng = domcheck_core::rng_from_seed(701);
    let mut ok = true;
    for trial in 0..1000usize {
        let d = 3 + trial % 4;
        let kraus_count = 1 + trial % 3;
        let ks: Vec<ComplexMatrix> = (0..kraus_count).map(|_| random_matrix(&mut rng, d, d)).collect();
        let t = SuperOperator::from_kraus(ks).unwrap();
        let x = random_psd(&mut rng, d);
        let n = 1 + trial % (d - 1);
        let cut = Truncation::new(n, d).unwrap();
        let r = verify_offdiag_inequality(&t, &x, cut, Gauge::Schatten(1.0), SpaceConstants::default(), &c)
            .unwrap();
        let bound_ok = if r.degenerate {
            r.lhs_squared <= 1e-8
        } else {
            r.lhs_squared <= r.bound_symmetric + 1e-8
        };
        if !bound_ok {
            ok = false;
        }

        let (qx, rx, off) = corner_truncations(&x, cut).unwrap();
        for gauge in [Gauge::Schatten(1.0), Gauge::Schatten(f64::INFINITY)] {
            let lhs = symmetric_norm(&off, gauge).unwrap();
            let rhs = 2.0
                * (symmetric_norm(&rx, gauge).unwrap() * symmetric_norm(&qx, gauge).unwrap()).sqrt();
            if lhs > rhs + 1e-8 {
                ok = false;
            }
        }
    }
    let in_time = start.elapsed().as_secs_f64() < 60.0;
    report("7 (off-diagonal and scalar corner estimates, 1000 trials)", ok && in_time);
}

#[test]
fn criterion_08_majorization_suite() {
    let c = cfg();
    let mut rng = domcheck_core::rng_from_seed(801);
    let mut ok = true;

    for trial in 0..500usize {
        let n = 2 + trial % 7;
        let b = random_psd(&mut rng, n);
        let d = random_psd(&mut rng, n);
        let a = b.add(&d);
        let r = mu_order_check(&a, &b, &c).unwrap();
        if !(r.order_holds && r.max_excess <= 1e-9) {
            ok = false;
        }
    }

    for trial in 0..200usize {
        let n = 4 + (trial % 3) * 2;
        let a = random_psd(&mut rng, n);
        let blocks: Vec<Vec<usize>> = (0..n / 2).map(|b| vec![2 * b, 2 * b + 1]).collect();
        let partition = Partition::new(blocks, n).unwrap();
        let pinched = pinch(&a, &partition).unwrap();
        let mu_a = singular_spectrum(&a);
        let mu_p = singular_spectrum(&pinched);
        if !submajorizes(&mu_a, &mu_p, &c) {
            ok = false;
            continue;
        }
        let dmat = transfer_certificate(&mu_a, &mu_p, &c).unwrap();
        if !dmat.is_doubly_substochastic(1e-7) {
            ok = false;
            continue;
        }
        let applied = dmat.apply(&mu_a.padded(n));
        let target = mu_p.padded(n);
        if applied.iter().zip(&target).any(|(x, y)| (x - y).abs() > 1e-7) {
            ok = false;
        }
    }

    report("8 (majorization order pairs and pinching certificates)", ok);
}

#[test]
fn criterion_09_symbol_positivity_equivalence() {
    let c = cfg();
    let mut rng = domcheck_core::rng_from_seed(901);
    let mut ok = true;
    for trial in 0..100usize {
        let n = 2 + trial % 5;
        let grid = if trial % 2 == 0 {
            let b = random_matrix(&mut rng, n, n);
            b.adjoint().matmul(&b).scale(1.0 / n as f64)
        } else {
            domcheck_core::matrix::random_hermitian(&mut rng, n)
        };
        let sym = SchurSymbol::new(grid).unwrap();
        let fp = domcheck_core::schur::formally_positive(&sym, &c);
        let map = sym.as_map();
        let cp = check_cp(&map, &c).unwrap().cp;
        let pos = check_positive(&map, &c).unwrap().passed();
        if fp != cp || fp != pos {
            ok = false;
        }
    }
    report("9 (symbol positivity equivalences, 100 symbols)", ok);
}

#[test]
fn criterion_10_monotone_chain() {
    let c = cfg();
    let x = ComplexMatrix::diag_real(&[2.0, 2.0, 2.0, 2.0, 2.0, 2.0, 0.1, 0.1]);
    let chain = monotone_chain(&x, 3, &c).unwrap();
    let mut ok = chain.elements.len() == 4;
    for k in 1..chain.elements.len() {
        let gap = chain.elements[k - 1].sub(&chain.elements[k]);
        if is_psd(&gap, &c).unwrap().min_eigenvalue < -1e-9 {
            ok = false;
        }
    }
    for gap in &chain.gap_norms {
        if *gap <= 2.0 / 3.0 {
            ok = false;
        }
    }
    report("10 (monotone chain with gaps above 2/3)", ok);
}

#[test]
fn criterion_11_deterministic_corpus_reports() {
    let bin = env!("CARGO_BIN_EXE_domcheck");
    let run = || {
        let output = std::process::Command::new(bin)
            .args(["--seed", "0", "--format", "json", "corpus", "run", "all"])
            .output()
            .expect("corpus run");
        assert!(
            output.status.code().is_some(),
            "corpus run must terminate normally"
        );
        String::from_utf8(output.stdout).expect("utf-8 report")
    };
    let first = run();
    let second = run();

    // strip every timing field, then compare byte-for-byte
    fn strip(value: &mut serde_json::Value) {
        match value {
            serde_json::Value::Object(map) => {
                map.remove("runtime_ms");
                for v in map.values_mut() {
                    strip(v);
                }
            }
            serde_json::Value::Array(items) => items.iter_mut().for_each(strip),
            _ => {}
        }
    }
    let mut a: serde_json::Value = serde_json::from_str(&first).expect("json report");
    let mut b: serde_json::Value = serde_json::from_str(&second).expect("json report");
    strip(&mut a);
    strip(&mut b);
    let ok = serde_json::to_string(&a).unwrap() == serde_json::to_string(&b).unwrap();
    report("11 (byte-identical corpus reports modulo timing)", ok);
}

#[test]
fn corpus_full_run_passes() {
    let report_all = corpus::corpus_run("all", &cfg()).unwrap();
    for item in &report_all.items {
        for check in &item.checks {
            println!("corpus {}: {} -> {}", item.id, check.name, check.verdict);
        }
    }
    assert!(
        !report_all.any_failed(),
        "corpus failures: {:?}",
        report_all
            .items
            .iter()
            .flat_map(|i| i.checks.iter().filter(|c| c.verdict == "fail").map(move |c| format!("{}: {}", i.id, c.name)))
            .collect::<Vec<_>>()
    );
}
