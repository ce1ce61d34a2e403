//! Decomposability of Hermiticity-preserving maps: alternating-projection
//! feasibility for J = A + B^Gamma over the product PSD cone, and a PPT-state
//! witness search when the feasibility run plateaus.

use crate::config::ToleranceConfig;
use crate::eig::{eig_hermitian, is_psd};
use crate::error::Result;
use crate::maps::{partial_transpose_input, Certificate, SuperOperator};
use crate::matrix::ComplexMatrix;

const PLATEAU_WINDOW: usize = 500;
const PLATEAU_IMPROVEMENT: f64 = 1e-12;
const WITNESS_OUTER_STEPS: usize = 400;
const WITNESS_INNER_PROJECTIONS: usize = 60;
const CLEANUP_ROUNDS: usize = 2000;

#[derive(Debug, Clone)]
pub enum Decomposability {
    /// J = A + B^Gamma with both parts PSD, re-verified.
    Decomposable { certificate: Certificate },
    /// PPT state with tr(rho J) < -tol_cert, re-verified.
    NonDecomposable { certificate: Certificate },
    /// Neither a decomposition nor a witness within budget.
    Inconclusive { certificate: Certificate },
}

impl Decomposability {
    pub fn label(&self) -> &'static str {
        match self {
            Decomposability::Decomposable { .. } => "decomposable",
            Decomposability::NonDecomposable { .. } => "non-decomposable",
            Decomposability::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn certificate(&self) -> &Certificate {
        match self {
            Decomposability::Decomposable { certificate }
            | Decomposability::NonDecomposable { certificate }
            | Decomposability::Inconclusive { certificate } => certificate,
        }
    }
}

pub fn check_decomposable(t: &SuperOperator, cfg: &ToleranceConfig) -> Result<Decomposability> {
    let j = t.choi();
    j.check_hermitian(cfg.tol_herm)?;
    let d_in = t.dim_in();
    let d_out = t.dim_out();
    let d = d_in * d_out;
    let scale = j.frobenius_norm();
    if scale == 0.0 {
        return Ok(Decomposability::Decomposable {
            certificate: Certificate::DecompositionPair {
                cp_part: ComplexMatrix::zeros(d, d),
                co_cp_part: ComplexMatrix::zeros(d, d),
                residual: 0.0,
            },
        });
    }

    // exact corners first: CP maps and co-CP maps need no iteration
    if is_psd(&j, cfg)?.psd {
        return Ok(Decomposability::Decomposable {
            certificate: Certificate::DecompositionPair {
                cp_part: j.clone(),
                co_cp_part: ComplexMatrix::zeros(d, d),
                residual: 0.0,
            },
        });
    }
    let j_gamma = partial_transpose_input(&j, d_in, d_out);
    if is_psd(&j_gamma, cfg)?.psd {
        return Ok(Decomposability::Decomposable {
            certificate: Certificate::DecompositionPair {
                cp_part: ComplexMatrix::zeros(d, d),
                co_cp_part: j_gamma,
                residual: 0.0,
            },
        });
    }

    // Phase 1: Dykstra over C1 = PSD x PSD and the affine slice A + B^G = J
    let mut a = j.scale(0.5);
    let mut b = j_gamma.scale(0.5);
    let mut inc_a = ComplexMatrix::zeros(d, d);
    let mut inc_b = ComplexMatrix::zeros(d, d);
    let mut best_residual = f64::INFINITY;
    let mut best_pair: Option<(ComplexMatrix, ComplexMatrix)> = None;
    let mut window: Vec<f64> = Vec::new();
    let mut iterations_used = 0usize;

    for iter in 0..cfg.max_iters {
        iterations_used = iter + 1;
        // project the incremented point onto the PSD cones
        let pa = psd_projection(&a.add(&inc_a), cfg)?;
        let pb = psd_projection(&b.add(&inc_b), cfg)?;
        inc_a = a.add(&inc_a).sub(&pa);
        inc_b = b.add(&inc_b).sub(&pb);

        let residual = pa
            .add(&partial_transpose_input(&pb, d_in, d_out))
            .sub(&j)
            .frobenius_norm()
            / scale;
        if residual < best_residual {
            best_residual = residual;
            best_pair = Some((pa.clone(), pb.clone()));
        }
        if residual < cfg.tol_cert {
            break;
        }
        window.push(best_residual);
        if window.len() > PLATEAU_WINDOW {
            let old = window[window.len() - 1 - PLATEAU_WINDOW];
            if old - best_residual < PLATEAU_IMPROVEMENT {
                break;
            }
        }

        // closed-form projection onto the affine constraint
        let delta = pa
            .add(&partial_transpose_input(&pb, d_in, d_out))
            .sub(&j)
            .scale(0.5);
        a = pa.sub(&delta);
        b = pb.sub(&partial_transpose_input(&delta, d_in, d_out));
    }

    if best_residual < cfg.tol_cert {
        let (cp_part, co_cp_part) = best_pair.expect("pair recorded with residual");
        let cert = Certificate::DecompositionPair { cp_part, co_cp_part, residual: best_residual };
        if verify_decomposition_pair(&j, &cert, d_in, d_out, cfg)? {
            return Ok(Decomposability::Decomposable { certificate: cert });
        }
    }

    // Phase 2: minimize tr(rho J) over PPT states by projected descent
    let (witness, value, phase2_iters) = witness_search(&j, d_in, d_out, cfg)?;
    iterations_used += phase2_iters;
    if value < -cfg.tol_cert {
        let cert = Certificate::PptWitness { state: witness, value };
        if verify_ppt_witness(&j, &cert, d_in, d_out, cfg)? {
            return Ok(Decomposability::NonDecomposable { certificate: cert });
        }
    }

    Ok(Decomposability::Inconclusive {
        certificate: Certificate::Inconclusive {
            restarts: 0,
            iterations: iterations_used,
            best_value: best_residual.min(value.abs()),
        },
    })
}

/// Nearest PSD matrix in Frobenius norm: clip negative eigenvalues.
fn psd_projection(m: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    let dec = eig_hermitian(&m.hermitian_part(), cfg)?;
    Ok(dec.apply_function(|l| l.max(0.0)))
}

/// Nearest trace-one PSD matrix: project the eigenvalues onto the simplex.
fn density_projection(m: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    let dec = eig_hermitian(&m.hermitian_part(), cfg)?;
    let mu = simplex_projection(&dec.eigenvalues);
    let n = dec.eigenvalues.len();
    let q = &dec.eigenvectors;
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &w) in mu.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        for i in 0..n {
            let qi = q[(i, k)] * w;
            for jj in 0..n {
                let v = qi * q[(jj, k)].conj();
                out[(i, jj)] += v;
            }
        }
    }
    Ok(out)
}

/// Euclidean projection of a sorted-non-increasing vector onto the
/// probability simplex: the unique level theta with sum max(l - theta, 0) = 1.
fn simplex_projection(sorted_desc: &[f64]) -> Vec<f64> {
    let n = sorted_desc.len();
    let mut cumulative = 0.0;
    let mut theta = (sorted_desc.iter().sum::<f64>() - 1.0) / n as f64;
    for k in 0..n {
        cumulative += sorted_desc[k];
        // level if exactly the entries 0..=k stay positive
        let cand = (cumulative - 1.0) / (k + 1) as f64;
        let next = if k + 1 < n { sorted_desc[k + 1] } else { f64::NEG_INFINITY };
        if sorted_desc[k] - cand > 0.0 && next - cand <= 0.0 {
            theta = cand;
            break;
        }
    }
    sorted_desc.iter().map(|&l| (l - theta).max(0.0)).collect()
}

/// Dykstra projection onto {rho: rho PSD, tr rho = 1, rho^Gamma PSD}.
fn project_to_ppt(
    target: &ComplexMatrix,
    d_in: usize,
    d_out: usize,
    rounds: usize,
    cfg: &ToleranceConfig,
) -> Result<ComplexMatrix> {
    let d = d_in * d_out;
    let mut x = target.hermitian_part();
    let mut p = ComplexMatrix::zeros(d, d);
    let mut q = ComplexMatrix::zeros(d, d);
    let mut y = x.clone();
    for _ in 0..rounds {
        y = density_projection(&x.add(&p), cfg)?;
        p = x.add(&p).sub(&y);
        let yq = y.add(&q);
        let z = partial_transpose_input(
            &psd_projection(&partial_transpose_input(&yq, d_in, d_out), cfg)?,
            d_in,
            d_out,
        );
        q = yq.sub(&z);
        x = z;
    }
    Ok(y)
}

/// Projected descent on tr(rho J); returns the best near-feasible state after
/// an exact-feasibility cleanup, its objective value, and iterations used.
fn witness_search(
    j: &ComplexMatrix,
    d_in: usize,
    d_out: usize,
    cfg: &ToleranceConfig,
) -> Result<(ComplexMatrix, f64, usize)> {
    let d = d_in * d_out;
    let op = crate::eig::operator_norm(j).max(1e-12);
    let step = 1.0 / op;

    // start from the most negative direction of J, made PPT
    let dec = eig_hermitian(j, cfg)?;
    let v = dec.eigenvector(dec.eigenvalues.len() - 1);
    let mut seed_state = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for k in 0..d {
            seed_state[(i, k)] = v[i] * v[k].conj();
        }
    }
    let mut rho = project_to_ppt(&seed_state, d_in, d_out, WITNESS_INNER_PROJECTIONS, cfg)?;
    let mut best_value = f64::INFINITY;
    let mut best_rho = rho.clone();
    let mut used = 0usize;
    let mut stall = 0usize;

    for outer in 0..WITNESS_OUTER_STEPS {
        used = outer + 1;
        let gradient_step = rho.sub(&j.scale(step));
        rho = project_to_ppt(&gradient_step, d_in, d_out, WITNESS_INNER_PROJECTIONS, cfg)?;
        let value = rho.matmul(j).trace().re;
        if value < best_value - 1e-12 {
            best_value = value;
            best_rho = rho.clone();
            stall = 0;
        } else {
            stall += 1;
            if stall > 30 {
                break;
            }
        }
    }

    // drive feasibility to machine accuracy without moving the objective much
    let mut cleaned = best_rho;
    for _ in 0..CLEANUP_ROUNDS {
        let pt = partial_transpose_input(&cleaned, d_in, d_out);
        let pt_dec = eig_hermitian(&pt.hermitian_part(), cfg)?;
        if pt_dec.min_eigenvalue() >= -1e-12 {
            break;
        }
        let clipped = partial_transpose_input(&pt_dec.apply_function(|l| l.max(0.0)), d_in, d_out);
        cleaned = density_projection(&clipped, cfg)?;
    }
    cleaned = density_projection(&cleaned, cfg)?;
    let value = cleaned.matmul(j).trace().re;
    Ok((cleaned, value, used))
}

/// Pure re-check of a decomposition pair: both parts PSD and the
/// reconstruction within tol_cert * ||J||_F.
pub fn verify_decomposition_pair(
    j: &ComplexMatrix,
    cert: &Certificate,
    d_in: usize,
    d_out: usize,
    cfg: &ToleranceConfig,
) -> Result<bool> {
    let Certificate::DecompositionPair { cp_part, co_cp_part, .. } = cert else {
        return Ok(false);
    };
    let a_ok = is_psd(cp_part, cfg)?.psd;
    let b_ok = is_psd(co_cp_part, cfg)?.psd;
    let recon = cp_part
        .add(&partial_transpose_input(co_cp_part, d_in, d_out))
        .sub(j)
        .frobenius_norm();
    Ok(a_ok && b_ok && recon <= cfg.tol_cert * j.frobenius_norm().max(1e-300))
}

/// Pure re-check of a PPT witness: state PSD, partial transpose PSD, unit
/// trace, and tr(rho J) below -tol_cert.
pub fn verify_ppt_witness(
    j: &ComplexMatrix,
    cert: &Certificate,
    d_in: usize,
    d_out: usize,
    cfg: &ToleranceConfig,
) -> Result<bool> {
    let Certificate::PptWitness { state, value } = cert else {
        return Ok(false);
    };
    let rho_ok = is_psd(state, cfg)?.psd;
    let pt_ok = is_psd(&partial_transpose_input(state, d_in, d_out), cfg)?.psd;
    let trace_ok = (state.trace().re - 1.0).abs() <= cfg.tol_cert && state.trace().im.abs() <= cfg.tol_cert;
    let recomputed = state.matmul(j).trace().re;
    let value_ok = (recomputed - value).abs() <= 1e-10 && recomputed < -cfg.tol_cert;
    Ok(rho_ok && pt_ok && trace_ok && value_ok)
}
