//! Schur (entrywise) multipliers: symbol positivity, tail diagnostics for the
//! vanishing-row/column criterion at finite truncation, and the quantitative
//! two-matrix obstruction with its explicit witness vector.

use num_complex::Complex64;
use rand::Rng;

use crate::config::ToleranceConfig;
use crate::eig::{eig_hermitian, is_psd};
use crate::error::{Error, Result};
use crate::maps::{BuiltinMap, SuperOperator};
use crate::matrix::ComplexMatrix;

/// Finite symbol grid of a Schur multiplier.
#[derive(Debug, Clone)]
pub struct SchurSymbol {
    grid: ComplexMatrix,
    /// Declared tail decay, for reporting only; no verdict consumes it.
    pub tail_model: Option<String>,
}

impl SchurSymbol {
    pub fn new(grid: ComplexMatrix) -> Result<Self> {
        if !grid.is_square() {
            return Err(Error::DimensionMismatch("symbol grid must be square".into()));
        }
        Ok(Self { grid, tail_model: None })
    }

    pub fn size(&self) -> usize {
        self.grid.rows()
    }

    pub fn grid(&self) -> &ComplexMatrix {
        &self.grid
    }

    /// The multiplier as a map on matrices.
    pub fn as_map(&self) -> SuperOperator {
        SuperOperator::builtin(BuiltinMap::Schur { symbol: self.grid.clone() })
    }
}

/// Entrywise product phi . x.
pub fn schur_apply(phi: &SchurSymbol, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !phi.grid.same_shape(x) {
        return Err(Error::DimensionMismatch(format!(
            "symbol is {0}x{0}, input is {1}x{2}",
            phi.size(),
            x.rows(),
            x.cols()
        )));
    }
    Ok(phi.grid.hadamard(x))
}

/// Finite symbols are formally positive exactly when the grid itself is PSD
/// (every submatrix of a PSD matrix is PSD, and the grid is its own largest
/// submatrix).
pub fn formally_positive(phi: &SchurSymbol, cfg: &ToleranceConfig) -> bool {
    phi.grid.is_hermitian(cfg.tol_herm) && matches!(is_psd(&phi.grid.hermitian_part(), cfg), Ok(v) if v.psd)
}

/// Row/column tail suprema past a threshold column: the finite signature of
/// vanishing rows and columns.
#[derive(Debug, Clone)]
pub struct DpTailReport {
    pub threshold: usize,
    pub row_tails: Vec<f64>,
    pub col_tails: Vec<f64>,
    pub score: f64,
}

pub fn dp_tail_score(phi: &SchurSymbol, threshold: usize) -> Result<DpTailReport> {
    let n = phi.size();
    if threshold >= n {
        return Err(Error::BadThreshold { j: threshold, n });
    }
    let mut row_tails = vec![0.0f64; n];
    let mut col_tails = vec![0.0f64; n];
    for i in 0..n {
        for j in (threshold + 1)..n {
            if j == i {
                continue;
            }
            row_tails[i] = row_tails[i].max(phi.grid[(i, j)].norm());
            col_tails[i] = col_tails[i].max(phi.grid[(j, i)].norm());
        }
    }
    let score = row_tails
        .iter()
        .chain(col_tails.iter())
        .fold(0.0f64, |a, &b| a.max(b));
    Ok(DpTailReport { threshold, row_tails, col_tails, score })
}

/// The two-matrix obstruction data: C with a heavy first row, D nearly
/// diagonal, at parameters with (mc)^2 > m + 1.
#[derive(Debug, Clone)]
pub struct ObstructionInstance {
    pub c_grid: ComplexMatrix,
    pub d_grid: ComplexMatrix,
    pub c: f64,
    pub m: usize,
    /// Phases omega_i = C_{i0} / |C_{i0}|, i = 1..m.
    pub omega: Vec<Complex64>,
    /// alpha = m c.
    pub alpha: f64,
}

impl ObstructionInstance {
    /// Checks every structural invariant; construction and verification stay
    /// decoupled so externally supplied grids can be certified too.
    pub fn validate(&self, cfg: &ToleranceConfig) -> Result<()> {
        let m = self.m;
        let size = m + 1;
        if (m as f64 * self.c).powi(2) <= (m + 1) as f64 {
            return Err(Error::InfeasibleParameters(format!(
                "(mc)^2 = {} must exceed m + 1 = {}",
                (m as f64 * self.c).powi(2),
                m + 1
            )));
        }
        if self.c_grid.rows() != size || self.d_grid.rows() != size {
            return Err(Error::DimensionMismatch(format!("grids must be {size}x{size}")));
        }
        for grid in [&self.c_grid, &self.d_grid] {
            if !is_psd(&grid.hermitian_part(), cfg)?.psd || !grid.is_hermitian(cfg.tol_herm) {
                return Err(Error::NotPsd { min_eigenvalue: f64::NAN });
            }
            if grid.max_abs_entry() > 1.0 + cfg.tol_cert {
                return Err(Error::BadRange("grid entries must have modulus at most 1".into()));
            }
        }
        for j in 1..=m {
            // strictness degenerates at c = 1, where unit-modulus entries
            // meet the threshold exactly; the final bound stays negative
            if self.c_grid[(0, j)].norm() <= self.c - cfg.tol_cert {
                return Err(Error::BadRange(format!(
                    "|C_0{j}| = {} must reach c = {}",
                    self.c_grid[(0, j)].norm(),
                    self.c
                )));
            }
        }
        for i in 0..size {
            for j in 0..size {
                if i != j {
                    let cap = 10f64.powi(-2 * (i as i32 + j as i32));
                    if self.d_grid[(i, j)].norm() >= cap {
                        return Err(Error::BadRange(format!(
                            "|D_{i}{j}| = {} must stay below 10^-2(i+j) = {cap}",
                            self.d_grid[(i, j)].norm()
                        )));
                    }
                }
            }
        }
        if (self.alpha - m as f64 * self.c).abs() > 1e-12 {
            return Err(Error::BadRange("alpha must equal m c".into()));
        }
        Ok(())
    }
}

/// Builds an instance with rank-one C = v v* (v_0 = 1, |v_j| in (c, 1]) and
/// D = identity plus decaying off-diagonal noise.
pub fn build_obstruction(c: f64, m: usize, seed: u64, cfg: &ToleranceConfig) -> Result<ObstructionInstance> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::InfeasibleParameters(format!("c = {c} must lie in (0, 1]")));
    }
    if (m as f64 * c).powi(2) <= (m + 1) as f64 {
        return Err(Error::InfeasibleParameters(format!(
            "(mc)^2 = {} must exceed m + 1 = {}",
            (m as f64 * c).powi(2),
            m + 1
        )));
    }
    let size = m + 1;
    let mut rng = crate::rng_from_seed(seed);

    let mut v = vec![Complex64::new(1.0, 0.0)];
    for _ in 1..size {
        let magnitude = if c == 1.0 { 1.0 } else { c + (1.0 - c) * rng.gen_range(0.5..1.0) };
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        v.push(Complex64::from_polar(magnitude, phase));
    }
    let c_grid = ComplexMatrix::from_fn(size, size, |i, j| v[i] * v[j].conj());

    let mut d_grid = ComplexMatrix::identity(size);
    for i in 0..size {
        for j in (i + 1)..size {
            let cap = 10f64.powi(-2 * (i as i32 + j as i32));
            let magnitude = 0.5 * cap * rng.gen_range(0.1..1.0);
            let phase = rng.gen_range(0.0..std::f64::consts::TAU);
            let z = Complex64::from_polar(magnitude, phase);
            d_grid[(i, j)] = z;
            d_grid[(j, i)] = z.conj();
        }
    }

    let omega: Vec<Complex64> = (1..size)
        .map(|i| {
            let z = c_grid[(i, 0)];
            z / z.norm()
        })
        .collect();
    let inst = ObstructionInstance { c_grid, d_grid, c, m, omega, alpha: m as f64 * c };
    inst.validate(cfg)?;
    Ok(inst)
}

/// The explicit witness against C <= D: the block quadratic form at
/// xi = (alpha e_0, -sum omega_i e_i) comes out below
/// alpha^2 + m + 1 - 2 alpha m c < 0, and D - C has a negative eigenvalue.
#[derive(Debug, Clone)]
pub struct ObstructionWitness {
    pub xi: Vec<Complex64>,
    pub quadratic_form: f64,
    pub analytic_bound: f64,
    pub min_eigenvalue_d_minus_c: f64,
}

pub fn obstruction_witness(inst: &ObstructionInstance, cfg: &ToleranceConfig) -> Result<ObstructionWitness> {
    let m = inst.m;
    let size = m + 1;

    let mut xi1 = vec![Complex64::new(0.0, 0.0); size];
    xi1[0] = Complex64::new(inst.alpha, 0.0);
    let mut xi2 = vec![Complex64::new(0.0, 0.0); size];
    for (i, w) in inst.omega.iter().enumerate() {
        xi2[i + 1] = -w;
    }

    // q = <D xi1, xi1> + <D xi2, xi2> + 2 Re <C xi1, xi2>
    let d1 = crate::matrix::quadratic_form(&inst.d_grid, &xi1).re;
    let d2 = crate::matrix::quadratic_form(&inst.d_grid, &xi2).re;
    let cross = crate::matrix::inner(&xi2, &inst.c_grid.apply(&xi1));
    let q = d1 + d2 + 2.0 * cross.re;

    let analytic_bound = inst.alpha * inst.alpha + m as f64 + 1.0 - 2.0 * inst.alpha * m as f64 * inst.c;
    if q > analytic_bound + cfg.tol_cert {
        return Err(Error::WitnessFailed { value: q });
    }
    if q >= -cfg.tol_cert {
        return Err(Error::WitnessFailed { value: q });
    }

    let diff = inst.d_grid.sub(&inst.c_grid).hermitian_part();
    let dec = eig_hermitian(&diff, cfg)?;
    let min_eig = dec.min_eigenvalue();
    if min_eig >= 0.0 {
        return Err(Error::WitnessFailed { value: min_eig });
    }

    let mut xi = xi1;
    xi.extend(xi2);
    Ok(ObstructionWitness { xi, quadratic_form: q, analytic_bound, min_eigenvalue_d_minus_c: min_eig })
}

/// Re-evaluates a witness against its instance.
pub fn verify_obstruction_witness(
    inst: &ObstructionInstance,
    witness: &ObstructionWitness,
    tol: f64,
) -> bool {
    let size = inst.m + 1;
    if witness.xi.len() != 2 * size {
        return false;
    }
    let xi1 = &witness.xi[..size];
    let xi2 = &witness.xi[size..];
    let d1 = crate::matrix::quadratic_form(&inst.d_grid, xi1).re;
    let d2 = crate::matrix::quadratic_form(&inst.d_grid, xi2).re;
    let cross = crate::matrix::inner(xi2, &inst.c_grid.apply(xi1));
    let q = d1 + d2 + 2.0 * cross.re;
    (q - witness.quadratic_form).abs() <= tol && q < 0.0
}

/// Outcome of scanning a symbol pair for extractable obstruction submatrices.
#[derive(Debug, Clone)]
pub enum ObstructionSearchOutcome {
    /// No index subset satisfies the heavy-row / decaying-neighbor pattern.
    NoObstruction,
    /// A subset was found and its witness certified; incompatible with
    /// 0 <= S_phi <= S_psi.
    Witnessed { indices: Vec<usize>, witness: ObstructionWitness },
}

#[derive(Debug, Clone)]
pub struct DominationObstructionReport {
    pub phi_formally_positive: bool,
    pub psi_formally_positive: bool,
    pub difference_formally_positive: bool,
    pub outcome: ObstructionSearchOutcome,
    pub message: String,
}

const EXHAUSTIVE_LIMIT: usize = 12;

/// Searches for indices n_0 < ... < n_m whose phi-submatrix has a heavy
/// first row (entries above c) while the psi-submatrix decays off the
/// diagonal, then runs the witness. When the domination preconditions hold,
/// the search must come back empty; a certified witness refutes C <= D and
/// hence the assumed order.
pub fn finite_domination_obstruction(
    phi: &SchurSymbol,
    psi: &SchurSymbol,
    c: f64,
    m: usize,
    cfg: &ToleranceConfig,
) -> Result<DominationObstructionReport> {
    if phi.size() != psi.size() {
        return Err(Error::DimensionMismatch("symbols must share a grid size".into()));
    }
    if (m as f64 * c).powi(2) <= (m + 1) as f64 {
        return Err(Error::InfeasibleParameters(format!(
            "(mc)^2 = {} must exceed m + 1 = {}",
            (m as f64 * c).powi(2),
            m + 1
        )));
    }
    let n = phi.size();
    let phi_pos = formally_positive(phi, cfg);
    let psi_pos = formally_positive(psi, cfg);
    let diff = SchurSymbol::new(psi.grid.sub(&phi.grid))?;
    let diff_pos = formally_positive(&diff, cfg);

    let found = if n <= EXHAUSTIVE_LIMIT {
        exhaustive_subset_search(phi, psi, c, m)
    } else {
        greedy_subset_search(phi, psi, c, m)
    };

    let (outcome, message) = match found {
        Some(indices) => {
            let inst = extract_instance(phi, psi, &indices, c, m)?;
            let witness = obstruction_witness(&inst, cfg)?;
            let message = if diff_pos {
                "configuration impossible: the witnessed submatrices refute the assumed domination order".to_string()
            } else {
                "obstruction found and witnessed; the pair cannot satisfy the domination order".to_string()
            };
            (ObstructionSearchOutcome::Witnessed { indices, witness }, message)
        }
        None => (
            ObstructionSearchOutcome::NoObstruction,
            "no obstruction found at this scale".to_string(),
        ),
    };

    Ok(DominationObstructionReport {
        phi_formally_positive: phi_pos,
        psi_formally_positive: psi_pos,
        difference_formally_positive: diff_pos,
        outcome,
        message,
    })
}

fn subset_qualifies(phi: &SchurSymbol, psi: &SchurSymbol, subset: &[usize], c: f64) -> bool {
    let size = subset.len();
    for (pos_i, &ni) in subset.iter().enumerate() {
        for (pos_j, &nj) in subset.iter().enumerate() {
            if phi.grid[(ni, nj)].norm() > 1.0 || psi.grid[(ni, nj)].norm() > 1.0 {
                return false;
            }
            if pos_i != pos_j {
                let cap = 10f64.powi(-2 * (pos_i as i32 + pos_j as i32));
                if psi.grid[(ni, nj)].norm() >= cap {
                    return false;
                }
            }
        }
    }
    for pos_j in 1..size {
        if phi.grid[(subset[0], subset[pos_j])].norm() <= c {
            return false;
        }
    }
    true
}

fn exhaustive_subset_search(phi: &SchurSymbol, psi: &SchurSymbol, c: f64, m: usize) -> Option<Vec<usize>> {
    let n = phi.size();
    let size = m + 1;
    if size > n {
        return None;
    }
    let mut subset: Vec<usize> = (0..size).collect();
    loop {
        if subset_qualifies(phi, psi, &subset, c) {
            return Some(subset);
        }
        // next lexicographic combination
        let mut i = size;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if subset[i] != i + n - size {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        subset[i] += 1;
        for j in (i + 1)..size {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Heavy-row-first heuristic for large grids; sound (any hit is certified by
/// the full predicate) but not exhaustive. The anchor must come first, so
/// only partners with larger indices extend a prefix.
fn greedy_subset_search(phi: &SchurSymbol, psi: &SchurSymbol, c: f64, m: usize) -> Option<Vec<usize>> {
    let n = phi.size();
    for anchor in 0..n {
        let mut partners: Vec<usize> = ((anchor + 1)..n)
            .filter(|&j| phi.grid[(anchor, j)].norm() > c)
            .collect();
        if partners.len() < m {
            continue;
        }
        partners.sort_by(|&a, &b| {
            phi.grid[(anchor, b)]
                .norm()
                .partial_cmp(&phi.grid[(anchor, a)].norm())
                .expect("finite entries")
        });
        let mut chosen = vec![anchor];
        for &p in &partners {
            if chosen.len() == m + 1 {
                break;
            }
            let mut trial = chosen.clone();
            trial.push(p);
            trial.sort_unstable();
            if subset_qualifies(phi, psi, &trial, c) || trial.len() <= m {
                // accept growth while the partial pattern stays compatible
                if prefix_compatible(phi, psi, &trial, c) {
                    chosen = trial;
                }
            }
        }
        if chosen.len() == m + 1 && subset_qualifies(phi, psi, &chosen, c) {
            return Some(chosen);
        }
    }
    None
}

/// The qualification predicate restricted to the positions present so far.
fn prefix_compatible(phi: &SchurSymbol, psi: &SchurSymbol, subset: &[usize], c: f64) -> bool {
    for (pos_i, &ni) in subset.iter().enumerate() {
        for (pos_j, &nj) in subset.iter().enumerate() {
            if phi.grid[(ni, nj)].norm() > 1.0 || psi.grid[(ni, nj)].norm() > 1.0 {
                return false;
            }
            if pos_i != pos_j {
                let cap = 10f64.powi(-2 * (pos_i as i32 + pos_j as i32));
                if psi.grid[(ni, nj)].norm() >= cap {
                    return false;
                }
            }
        }
    }
    for (pos_j, &nj) in subset.iter().enumerate() {
        if pos_j > 0 && phi.grid[(subset[0], nj)].norm() <= c {
            return false;
        }
    }
    true
}

fn extract_instance(
    phi: &SchurSymbol,
    psi: &SchurSymbol,
    indices: &[usize],
    c: f64,
    m: usize,
) -> Result<ObstructionInstance> {
    let size = indices.len();
    let c_grid = ComplexMatrix::from_fn(size, size, |i, j| phi.grid[(indices[i], indices[j])]);
    let d_grid = ComplexMatrix::from_fn(size, size, |i, j| psi.grid[(indices[i], indices[j])]);
    let omega: Vec<Complex64> = (1..size)
        .map(|i| {
            let z = c_grid[(i, 0)];
            if z.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { z / z.norm() }
        })
        .collect();
    Ok(ObstructionInstance { c_grid, d_grid, c, m, omega, alpha: m as f64 * c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majorization::{pinch, Partition};
    use crate::matrix::random_matrix;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig { restarts: 8, ..ToleranceConfig::default() }
    }

    fn symbol(entries: ComplexMatrix) -> SchurSymbol {
        SchurSymbol::new(entries).unwrap()
    }

    #[test]
    fn apply_examples() {
        let mut rng = crate::rng_from_seed(61);
        let x = random_matrix(&mut rng, 3, 3);
        let ones = symbol(ComplexMatrix::from_fn(3, 3, |_, _| Complex64::new(1.0, 0.0)));
        assert!(schur_apply(&ones, &x).unwrap().approx_eq(&x, 0.0));
        let id = symbol(ComplexMatrix::identity(3));
        let pinched = pinch(&x, &Partition::singletons(3)).unwrap();
        assert!(schur_apply(&id, &x).unwrap().approx_eq(&pinched, 0.0));
        let zero = symbol(ComplexMatrix::zeros(3, 3));
        assert!(schur_apply(&zero, &x).unwrap().max_abs_entry() == 0.0);
    }

    #[test]
    fn formal_positivity_examples() {
        let c = cfg();
        let ones = symbol(ComplexMatrix::from_fn(2, 2, |_, _| Complex64::new(1.0, 0.0)));
        assert!(formally_positive(&ones, &c));
        let bad = symbol(ComplexMatrix::from_fn(2, 2, |i, j| {
            Complex64::new(if i == j { 1.0 } else { 2.0 }, 0.0)
        }));
        assert!(!formally_positive(&bad, &c));
    }

    #[test]
    fn positivity_matches_map_verdicts_random() {
        let c = cfg();
        let mut rng = crate::rng_from_seed(62);
        for trial in 0..100 {
            let n = 2 + trial % 5;
            let grid = if trial % 2 == 0 {
                let b = random_matrix(&mut rng, n, n);
                b.adjoint().matmul(&b).scale(1.0 / n as f64)
            } else {
                crate::matrix::random_hermitian(&mut rng, n)
            };
            let sym = symbol(grid);
            let fp = formally_positive(&sym, &c);
            let map = sym.as_map();
            let cp = crate::maps::check_cp(&map, &c).unwrap().cp;
            let pos = crate::seesaw::check_positive(&map, &c).unwrap();
            assert_eq!(fp, cp, "trial {trial}: formal positivity vs CP");
            if fp {
                assert!(pos.passed(), "trial {trial}: positive verdict");
            } else {
                assert!(
                    matches!(pos, crate::seesaw::PositivityVerdict::Violated { .. }),
                    "trial {trial}: positivity must fail with the CP check"
                );
            }
        }
    }

    #[test]
    fn tail_score_examples() {
        let n = 8;
        let constant_row = symbol(ComplexMatrix::from_fn(n, n, |i, _| {
            Complex64::new(if i == 0 { 0.7 } else { 0.0 }, 0.0)
        }));
        let report = dp_tail_score(&constant_row, n / 2).unwrap();
        assert!(report.score >= 0.7);

        let diag = symbol(ComplexMatrix::identity(n));
        let report = dp_tail_score(&diag, 0).unwrap();
        assert_eq!(report.score, 0.0);

        let decay = symbol(ComplexMatrix::from_fn(n, n, |i, j| {
            Complex64::new(2f64.powi(-(i as i32) - (j as i32)), 0.0)
        }));
        let report = dp_tail_score(&decay, n / 2).unwrap();
        assert!(report.score <= 2f64.powi(-(n as i32) / 2));

        assert!(matches!(dp_tail_score(&diag, n), Err(Error::BadThreshold { .. })));
    }

    #[test]
    fn build_obstruction_examples() {
        let c = cfg();
        let inst = build_obstruction(0.9, 3, 7, &c).unwrap();
        inst.validate(&c).unwrap();
        assert!((3.0f64 * 0.9).powi(2) > 4.0);

        assert!(matches!(
            build_obstruction(0.5, 2, 7, &c),
            Err(Error::InfeasibleParameters(_))
        ));

        let inst = build_obstruction(1.0, 2, 7, &c).unwrap();
        inst.validate(&c).unwrap();
    }

    #[test]
    fn witness_values_against_analytic_bounds() {
        let c = cfg();
        for (cc, m, bound) in [(0.9, 3usize, -3.29), (1.0, 2usize, -1.0)] {
            let inst = build_obstruction(cc, m, 11, &c).unwrap();
            let w = obstruction_witness(&inst, &c).unwrap();
            assert!((w.analytic_bound - bound).abs() < 1e-9, "bound {} vs {bound}", w.analytic_bound);
            assert!(w.quadratic_form <= bound + 1e-7, "q = {}", w.quadratic_form);
            assert!(w.min_eigenvalue_d_minus_c < 0.0);
            assert!(verify_obstruction_witness(&inst, &w, 1e-10));
        }
    }

    #[test]
    fn domination_search_empty_for_ordered_pairs() {
        let c = cfg();
        // psi dominates phi formally: no qualifying subset may exist
        let n = 8;
        let v: Vec<Complex64> = (0..n).map(|i| Complex64::new(0.6 - 0.01 * i as f64, 0.0)).collect();
        let phi = symbol(ComplexMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj()));
        let psi = symbol(ComplexMatrix::identity(n).scale(4.0).sub(&ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j { Complex64::new(0.0, 0.0) } else { Complex64::new(0.0001, 0.0) }
        })).scale(0.25));
        let report = finite_domination_obstruction(&phi, &psi, 0.9, 3, &c).unwrap();
        assert!(matches!(report.outcome, ObstructionSearchOutcome::NoObstruction));
        // identical symbols: C <= D holds with equality, nothing to find
        let report = finite_domination_obstruction(&phi, &phi, 0.9, 3, &c).unwrap();
        assert!(matches!(report.outcome, ObstructionSearchOutcome::NoObstruction));
    }

    #[test]
    fn greedy_search_handles_large_grids() {
        // 16 > the exhaustive limit: the heavy row sits away from index zero
        let c = cfg();
        let n = 16;
        let mut grid = ComplexMatrix::zeros(n, n);
        for &i in &[5usize, 7, 9, 11] {
            for &j in &[5usize, 7, 9, 11] {
                grid[(i, j)] = Complex64::new(0.95 * 0.95, 0.0);
            }
        }
        for i in 0..n {
            grid[(i, i)] = Complex64::new(1.0, 0.0);
        }
        let phi = symbol(grid);
        let psi = symbol(ComplexMatrix::identity(n));
        let report = finite_domination_obstruction(&phi, &psi, 0.9, 3, &c).unwrap();
        let ObstructionSearchOutcome::Witnessed { indices, witness } = &report.outcome else {
            panic!("expected a witnessed obstruction on the large grid");
        };
        assert_eq!(indices, &[5, 7, 9, 11]);
        assert!(witness.quadratic_form < 0.0);
    }

    #[test]
    fn domination_search_witnesses_heavy_row() {
        let c = cfg();
        let n = 6;
        let v: Vec<Complex64> = (0..n).map(|_| Complex64::new(0.95, 0.0)).collect();
        let mut grid = ComplexMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj());
        grid[(0, 0)] = Complex64::new(1.0, 0.0);
        let phi = symbol(grid);
        let psi = symbol(ComplexMatrix::identity(n));
        let report = finite_domination_obstruction(&phi, &psi, 0.9, 3, &c).unwrap();
        assert!(!report.difference_formally_positive);
        let ObstructionSearchOutcome::Witnessed { indices, witness } = &report.outcome else {
            panic!("expected a witnessed obstruction");
        };
        assert_eq!(indices.len(), 4);
        assert!(witness.quadratic_form < 0.0);
    }
}
