//! Finite-dimensional stress test of the averaged variational principle.
//!
//! A `FiniteModel` is a symmetric quadratic form Q and a positive-definite
//! metric M on R^n together with weighted trial vectors f_zeta and a subset
//! m0 of them. Solving the generalized eigenproblem Q psi = omega M psi
//! gives metric-orthonormal pairs, and the principle states
//!
//!   sum_j (z - omega_j)_+ sum_zeta w_zeta |<psi_j, f_zeta>|^2
//!     >= sum_{zeta in m0} w_zeta (z ||f_zeta||^2 - Q(f_zeta, f_zeta)),
//!
//! all norms and inner products taken in the metric. The right side never
//! exceeds the left for any subset, any weights, any z; `avp_verify` reports
//! the margin, and `random_model` generates seeded models to hammer it with.

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::riesz_bounds::BoundReport;

#[derive(Debug, Error)]
pub enum AvpError {
    #[error("model dimension must be positive")]
    ZeroDim,
    #[error("{what} is {rows}x{cols}, expected {dim}x{dim}")]
    ShapeMismatch {
        what: &'static str,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("{what} is not symmetric, largest asymmetry {asym}")]
    NotSymmetric { what: &'static str, asym: f64 },
    #[error("metric is not positive definite")]
    MetricNotPositiveDefinite,
    #[error("trial {index} has length {len}, expected {dim}")]
    BadTrialLength {
        index: usize,
        len: usize,
        dim: usize,
    },
    #[error("trial {index} has weight {weight}, weights must be finite and >= 0")]
    BadWeight { index: usize, weight: f64 },
    #[error("m0 refers to trial {index} but there are only {n_trials} trials")]
    SubsetIndexOutOfRange { index: usize, n_trials: usize },
    #[error("m0 lists trial {index} twice")]
    SubsetIndexRepeated { index: usize },
    #[error("eigenvectors are not metric-orthonormal, Gram defect {defect}")]
    OrthonormalityDefect { defect: f64 },
    #[error("eigenpair {j} has residual {residual}, budget {budget}")]
    ResidualTooLarge { j: usize, residual: f64, budget: f64 },
}

/// One trial vector with its measure weight.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialVector {
    pub vector: DVector<f64>,
    pub weight: f64,
}

/// Quadratic form, metric, weighted trial family, and the averaged subset.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteModel {
    pub dim: usize,
    pub form: DMatrix<f64>,
    pub metric: DMatrix<f64>,
    pub trials: Vec<TrialVector>,
    pub m0: Vec<usize>,
}

fn require_symmetric(what: &'static str, m: &DMatrix<f64>, dim: usize) -> Result<(), AvpError> {
    if m.nrows() != dim || m.ncols() != dim {
        return Err(AvpError::ShapeMismatch {
            what,
            rows: m.nrows(),
            cols: m.ncols(),
            dim,
        });
    }
    let mut asym = 0.0f64;
    for i in 0..dim {
        for j in (i + 1)..dim {
            asym = asym.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    let scale = m.norm().max(1.0);
    if asym > 1e-12 * scale {
        return Err(AvpError::NotSymmetric { what, asym });
    }
    Ok(())
}

impl FiniteModel {
    pub fn new(
        form: DMatrix<f64>,
        metric: DMatrix<f64>,
        trials: Vec<TrialVector>,
        m0: Vec<usize>,
    ) -> Result<Self, AvpError> {
        let dim = form.nrows();
        if dim == 0 {
            return Err(AvpError::ZeroDim);
        }
        require_symmetric("form", &form, dim)?;
        require_symmetric("metric", &metric, dim)?;
        for (index, trial) in trials.iter().enumerate() {
            if trial.vector.len() != dim {
                return Err(AvpError::BadTrialLength {
                    index,
                    len: trial.vector.len(),
                    dim,
                });
            }
            if !(trial.weight >= 0.0 && trial.weight.is_finite()) {
                return Err(AvpError::BadWeight {
                    index,
                    weight: trial.weight,
                });
            }
        }
        let mut seen = vec![false; trials.len()];
        for &index in &m0 {
            if index >= trials.len() {
                return Err(AvpError::SubsetIndexOutOfRange {
                    index,
                    n_trials: trials.len(),
                });
            }
            if seen[index] {
                return Err(AvpError::SubsetIndexRepeated { index });
            }
            seen[index] = true;
        }
        Ok(FiniteModel {
            dim,
            form,
            metric,
            trials,
            m0,
        })
    }
}

/// Ascending generalized eigenvalues with metric-orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct SolvedPairs {
    pub omegas: Vec<f64>,
    pub psis: Vec<DVector<f64>>,
}

/// Solve Q psi = omega M psi by Cholesky reduction to an ordinary symmetric
/// problem: with M = L L^T the matrix A = L^{-1} Q L^{-T} has the same
/// eigenvalues, and psi = L^{-T} y maps its eigenvectors back.
pub fn solve_pairs(model: &FiniteModel) -> Result<SolvedPairs, AvpError> {
    let chol =
        Cholesky::new(model.metric.clone()).ok_or(AvpError::MetricNotPositiveDefinite)?;
    let l = chol.l();
    let x = l
        .solve_lower_triangular(&model.form)
        .ok_or(AvpError::MetricNotPositiveDefinite)?;
    let a = l
        .solve_lower_triangular(&x.transpose())
        .ok_or(AvpError::MetricNotPositiveDefinite)?;
    // symmetrize away the rounding skew before the symmetric solver
    let a = (&a + a.transpose()) * 0.5;

    let eig = a.symmetric_eigen();
    let mut order: Vec<usize> = (0..model.dim).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let lt = l.transpose();
    let mut omegas = Vec::with_capacity(model.dim);
    let mut psis = Vec::with_capacity(model.dim);
    for &i in &order {
        omegas.push(eig.eigenvalues[i]);
        let y = eig.eigenvectors.column(i).into_owned();
        let psi = lt
            .solve_upper_triangular(&y)
            .ok_or(AvpError::MetricNotPositiveDefinite)?;
        psis.push(psi);
    }

    let mut defect = 0.0f64;
    let m_psis: Vec<DVector<f64>> = psis.iter().map(|p| &model.metric * p).collect();
    for i in 0..model.dim {
        for j in i..model.dim {
            let gram = psis[i].dot(&m_psis[j]);
            let target = if i == j { 1.0 } else { 0.0 };
            defect = defect.max((gram - target).abs());
        }
    }
    if defect > 1e-10 {
        return Err(AvpError::OrthonormalityDefect { defect });
    }

    let budget = 1e-8 * model.form.norm();
    for j in 0..model.dim {
        let residual = (&model.form * &psis[j] - &m_psis[j] * omegas[j]).norm();
        if residual > budget {
            return Err(AvpError::ResidualTooLarge {
                j,
                residual,
                budget,
            });
        }
    }

    Ok(SolvedPairs { omegas, psis })
}

/// Right side of the principle for one trial subset: the weighted Rayleigh
/// deficits sum_{zeta in subset} w_zeta (z ||f||^2 - Q(f, f)).
pub fn subset_deficit(model: &FiniteModel, subset: &[usize], z: f64) -> f64 {
    let mut acc = 0.0;
    for &zeta in subset {
        let trial = &model.trials[zeta];
        let norm_sq = trial.vector.dot(&(&model.metric * &trial.vector));
        let energy = trial.vector.dot(&(&model.form * &trial.vector));
        acc += trial.weight * (z * norm_sq - energy);
    }
    acc
}

/// Check the principle at one z on already-solved pairs.
pub fn avp_verify_solved(model: &FiniteModel, pairs: &SolvedPairs, z: f64) -> BoundReport {
    let m_trials: Vec<DVector<f64>> = model
        .trials
        .iter()
        .map(|t| &model.metric * &t.vector)
        .collect();
    let mut lhs = 0.0;
    for (j, psi) in pairs.psis.iter().enumerate() {
        let gap = z - pairs.omegas[j];
        if gap <= 0.0 {
            continue;
        }
        let mut projections = 0.0;
        for (trial, m_f) in model.trials.iter().zip(&m_trials) {
            let inner = psi.dot(m_f);
            projections += trial.weight * inner * inner;
        }
        lhs += gap * projections;
    }

    let rhs = subset_deficit(model, &model.m0, z);

    // slack scale built from the un-cancelled magnitudes on both sides
    let mut gross = 0.0;
    for &zeta in &model.m0 {
        let trial = &model.trials[zeta];
        let norm_sq = trial.vector.dot(&m_trials[zeta]);
        let energy = trial.vector.dot(&(&model.form * &trial.vector));
        gross += trial.weight * (z.abs() * norm_sq + energy.abs());
    }
    let scale = lhs.abs().max(gross);

    BoundReport {
        name: "averaged_variational_lower".to_string(),
        params: vec![
            ("z".to_string(), z),
            ("dim".to_string(), model.dim as f64),
            ("n_trials".to_string(), model.trials.len() as f64),
            ("m0_size".to_string(), model.m0.len() as f64),
            ("scale".to_string(), scale),
        ],
        lhs,
        rhs,
        margin: lhs - rhs,
        pass: lhs >= rhs - 1e-9 * scale,
    }
}

/// Solve the model and check the principle at one z.
pub fn avp_verify(model: &FiniteModel, z: f64) -> Result<BoundReport, AvpError> {
    let pairs = solve_pairs(model)?;
    Ok(avp_verify_solved(model, &pairs, z))
}

fn random_model_from(rng: &mut ChaCha8Rng, dim: usize, n_trials: usize) -> FiniteModel {
    let a = DMatrix::from_fn(dim, dim, |_, _| rng.random_range(-1.0..1.0));
    let shift: f64 = rng.random();
    let form = &a * a.transpose() + DMatrix::identity(dim, dim) * shift;
    let b = DMatrix::from_fn(dim, dim, |_, _| rng.random_range(-1.0..1.0));
    let metric = &b * b.transpose() + DMatrix::identity(dim, dim);
    let trials: Vec<TrialVector> = (0..n_trials)
        .map(|_| TrialVector {
            vector: DVector::from_fn(dim, |_, _| rng.random_range(-1.0..1.0)),
            weight: rng.random(),
        })
        .collect();
    let mut m0: Vec<usize> = (0..n_trials).filter(|_| rng.random_bool(0.5)).collect();
    if m0.is_empty() && n_trials > 0 {
        m0.push(0);
    }
    FiniteModel {
        dim,
        form,
        metric,
        trials,
        m0,
    }
}

/// Seeded random model: form = A A^T + shift I, metric = B B^T + I, uniform
/// trial entries and weights, each trial in m0 with probability one half
/// (first trial forced in when the coin flips all come up empty). The same
/// seed reproduces the model bit for bit.
pub fn random_model(seed: u64, dim: usize, n_trials: usize) -> FiniteModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_model_from(&mut rng, dim, n_trials)
}

/// Aggregate outcome of a batch of random-model checks.
#[derive(Clone, Copy, Debug)]
pub struct AvpSuiteSummary {
    pub models: u32,
    pub checks: u32,
    pub failures: u32,
    /// Smallest margin / scale seen across all checks.
    pub worst_margin: f64,
}

/// Run `n_models` seeded models (seeds base, base+1, ...), checking each at
/// z below, inside, and above its spectrum. Models run in parallel; the
/// outcome of each is independent of scheduling because every model draws
/// from its own seeded generator.
pub fn run_suite(
    base_seed: u64,
    n_models: u32,
    dim: usize,
    n_trials: usize,
) -> Result<AvpSuiteSummary, AvpError> {
    let per_model: Result<Vec<(u32, u32, f64)>, AvpError> = (0..n_models)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(base_seed.wrapping_add(u64::from(i)));
            let model = random_model_from(&mut rng, dim, n_trials);
            let pairs = solve_pairs(&model)?;
            let lo = pairs.omegas[0];
            let hi = 2.0 * pairs.omegas[model.dim - 1];
            let zs = [lo, rng.random_range(lo..hi), hi];
            let mut checks = 0;
            let mut failures = 0;
            let mut worst = f64::INFINITY;
            for z in zs {
                let report = avp_verify_solved(&model, &pairs, z);
                checks += 1;
                if !report.pass {
                    failures += 1;
                }
                let scale = report
                    .params
                    .iter()
                    .find(|(name, _)| name == "scale")
                    .map(|&(_, v)| v)
                    .unwrap_or(1.0)
                    .max(f64::MIN_POSITIVE);
                worst = worst.min(report.margin / scale);
            }
            Ok((checks, failures, worst))
        })
        .collect();
    let per_model = per_model?;
    let mut summary = AvpSuiteSummary {
        models: n_models,
        checks: 0,
        failures: 0,
        worst_margin: f64::INFINITY,
    };
    for (checks, failures, worst) in per_model {
        summary.checks += checks;
        summary.failures += failures;
        summary.worst_margin = summary.worst_margin.min(worst);
    }
    Ok(summary)
}
