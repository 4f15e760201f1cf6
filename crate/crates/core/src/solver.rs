//! Extrema of the polynomial form on the unit l^p sphere.
//!
//! `solve_max` runs multi-start projected gradient ascent
//! `x <- (x + a * t(x)) / |x + a * t(x)|_p`, where `t(x)` is the component
//! of `grad P(x)` tangent to the sphere, with backtracking on the form
//! value. Stepping along the full gradient instead would make the radial
//! retraction stationary at `grad P(x) ∝ x`, which is the p = 2 condition
//! only. Every returned value is attained by its witness, so a
//! maximum estimate is a lower bound on the true maximum and a minimum
//! estimate is an upper bound on the true minimum.
//!
//! When `p == r` both the form and `|x|_p^r` are homogeneous of degree `r`,
//! and the stationary points of the iteration are H-eigenvectors of the
//! hypergraph; no special handling is needed for that case.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::jacobi_eigen;
use crate::error::{Error, Result};
use crate::hypergraph::{lp_norm, WeightedHypergraph};

/// Smallest trial step before a backtracking search gives up.
const MIN_STEP: f64 = 1e-20;
/// Largest step the backtracking policy grows to.
const MAX_STEP: f64 = 1e4;
/// Relative residual below which a stalled line search still counts as
/// converged: the Armijo increase is then below roundoff of the value.
const STALL_TOL: f64 = 1e-6;
/// Attempts per requested restart before giving up on non-finite runs.
const RETRY_FACTOR: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum StepPolicy {
    /// Constant step `alpha`, always accepted.
    Fixed { alpha: f64 },
    /// Start at `initial`, multiply by `shrink` until the Armijo condition
    /// with constant `armijo` holds. Accepted steps grow by `1 / shrink` for
    /// the next iteration.
    Backtracking { initial: f64, shrink: f64, armijo: f64 },
}

impl Default for StepPolicy {
    fn default() -> Self {
        StepPolicy::Backtracking { initial: 1.0, shrink: 0.5, armijo: 1e-4 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub p: f64,
    pub restarts: usize,
    pub max_iters: usize,
    /// Tolerance on the tangential residual relative to `|grad P(x)|`.
    pub grad_tol: f64,
    pub step: StepPolicy,
    pub seed: u64,
}

impl SolverConfig {
    pub fn new(p: f64) -> Self {
        Self {
            p,
            restarts: 64,
            max_iters: 10_000,
            grad_tol: 1e-8,
            step: StepPolicy::default(),
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p >= 1.0) || !self.p.is_finite() {
            return Err(Error::BadP(self.p, 1.0));
        }
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        if !(self.grad_tol > 0.0) {
            return Err(Error::Config(format!("grad_tol must be positive, got {}", self.grad_tol)));
        }
        match self.step {
            StepPolicy::Fixed { alpha } if !(alpha > 0.0 && alpha.is_finite()) => {
                Err(Error::Config(format!("fixed step must be positive, got {alpha}")))
            }
            StepPolicy::Backtracking { initial, shrink, armijo }
                if !(initial > 0.0 && shrink > 0.0 && shrink < 1.0 && armijo > 0.0 && armijo < 1.0) =>
            {
                Err(Error::Config(format!(
                    "backtracking needs initial > 0, 0 < shrink < 1, 0 < armijo < 1; got {initial}, {shrink}, {armijo}"
                )))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremumKind {
    Max,
    Min,
}

/// An attained extremal value of the form with its witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralEstimate {
    pub kind: ExtremumKind,
    pub value: f64,
    /// Unit l^p vector with `P(witness) == value`.
    pub witness: Vec<f64>,
    pub p: f64,
    /// Iterations summed over all restarts.
    pub iterations_used: usize,
    pub restarts_converged: usize,
    pub best_restart_index: usize,
}

/// Whether the Hoffman-type ratio bound makes a claim for this `(r, p)`:
/// `r` even and `p >= r`.
pub fn theorem_applicable(r: usize, p: f64) -> bool {
    r % 2 == 0 && p >= r as f64
}

/// `x / |x|_p`.
pub fn project_to_sphere(x: &[f64], p: f64) -> Result<Vec<f64>> {
    let norm = lp_norm(x, p)?;
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(x.iter().map(|v| v / norm).collect())
}

pub fn solve_max(h: &WeightedHypergraph, cfg: &SolverConfig) -> Result<SpectralEstimate> {
    solve_max_seeded(h, cfg, &[])
}

pub fn solve_min(h: &WeightedHypergraph, cfg: &SolverConfig) -> Result<SpectralEstimate> {
    solve_min_seeded(h, cfg, &[])
}

/// [`solve_max`] with extra deterministic starting points, run after the
/// random restarts (restart indices `cfg.restarts..`).
pub fn solve_max_seeded(
    h: &WeightedHypergraph,
    cfg: &SolverConfig,
    starts: &[Vec<f64>],
) -> Result<SpectralEstimate> {
    let est = maximize(h, cfg, starts)?;
    if !(est.value > 0.0) {
        return Err(Error::ConvergenceSuspect(format!(
            "maximum estimate {} is not positive",
            est.value
        )));
    }
    Ok(est)
}

/// Minimum via maximization of the weight-negated form.
pub fn solve_min_seeded(
    h: &WeightedHypergraph,
    cfg: &SolverConfig,
    starts: &[Vec<f64>],
) -> Result<SpectralEstimate> {
    let neg = h.negated();
    let mut est = maximize(&neg, cfg, starts)?;
    est.kind = ExtremumKind::Min;
    est.value = h.evaluate(&est.witness)?;
    if !(est.value < 0.0) {
        return Err(Error::ConvergenceSuspect(format!(
            "minimum estimate {} is not negative",
            est.value
        )));
    }
    Ok(est)
}

/// Extreme eigenvalues of the weighted adjacency matrix of a 2-graph, which
/// are the p = 2 extrema of its quadratic form.
pub fn exact_graph_eigen(h: &WeightedHypergraph) -> Result<(SpectralEstimate, SpectralEstimate)> {
    if h.r() != 2 {
        return Err(Error::WrongArity(format!("exact eigen path needs r = 2, got r = {}", h.r())));
    }
    let n = h.n();
    let mut a = vec![vec![0.0; n]; n];
    for e in h.edges() {
        let (i, j) = (e.vertices[0], e.vertices[1]);
        a[i][j] = e.weight;
        a[j][i] = e.weight;
    }
    let eig = jacobi_eigen(a, 1e-14);
    let (imax, imin) = eig.values.iter().enumerate().fold((0, 0), |(hi, lo), (i, v)| {
        (
            if *v > eig.values[hi] { i } else { hi },
            if *v < eig.values[lo] { i } else { lo },
        )
    });
    let make = |kind, idx: usize| SpectralEstimate {
        kind,
        value: eig.values[idx],
        witness: eig.vectors[idx].clone(),
        p: 2.0,
        iterations_used: eig.sweeps,
        restarts_converged: 1,
        best_restart_index: 0,
    };
    Ok((make(ExtremumKind::Max, imax), make(ExtremumKind::Min, imin)))
}

#[derive(Debug, Clone)]
struct RestartOutcome {
    value: f64,
    x: Vec<f64>,
    iterations: usize,
    converged: bool,
}

fn maximize(h: &WeightedHypergraph, cfg: &SolverConfig, starts: &[Vec<f64>]) -> Result<SpectralEstimate> {
    cfg.validate()?;
    for s in starts {
        if s.len() != h.n() {
            return Err(Error::DimensionMismatch { expected: h.n(), actual: s.len() });
        }
    }

    // Random restarts in index order; failed (non-finite) attempts are
    // replaced by the next indices until the budget is exhausted.
    let budget = cfg.restarts * RETRY_FACTOR;
    let mut outcomes: Vec<(usize, RestartOutcome)> = Vec::with_capacity(cfg.restarts);
    let mut next = 0;
    let mut total_iters = 0;
    while outcomes.len() < cfg.restarts && next < budget {
        let want = (cfg.restarts - outcomes.len()).min(budget - next);
        let batch: Vec<(usize, Result<RestartOutcome>)> = (next..next + want)
            .into_par_iter()
            .map(|idx| (idx, ascend(h, cfg, random_start(h.n(), cfg.seed, idx))))
            .collect();
        next += want;
        for (idx, res) in batch {
            if let Ok(out) = res {
                total_iters += out.iterations;
                outcomes.push((idx, out));
            }
        }
    }
    if outcomes.is_empty() {
        return Err(Error::NonFinite(format!(
            "all {budget} restart attempts produced non-finite iterates"
        )));
    }

    let seeded: Vec<(usize, Result<RestartOutcome>)> = starts
        .par_iter()
        .enumerate()
        .map(|(i, s)| (cfg.restarts + i, ascend(h, cfg, s.clone())))
        .collect();
    for (idx, res) in seeded {
        let out = res?;
        total_iters += out.iterations;
        outcomes.push((idx, out));
    }

    let converged = outcomes.iter().filter(|(_, o)| o.converged).count();
    let (best_idx, best) = outcomes
        .into_iter()
        .reduce(|a, b| if b.1.value > a.1.value || (b.1.value == a.1.value && b.0 < a.0) { b } else { a })
        .expect("at least one outcome");
    Ok(SpectralEstimate {
        kind: ExtremumKind::Max,
        value: best.value,
        witness: best.x,
        p: cfg.p,
        iterations_used: total_iters,
        restarts_converged: converged,
        best_restart_index: best_idx,
    })
}

/// Restart `index` draws coordinates uniformly from `[-1, 1)` on stream
/// `index` of `ChaCha8Rng::seed_from_u64(seed)`.
fn random_start(n: usize, seed: u64, index: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    loop {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if x.iter().any(|v| *v != 0.0) {
            return x;
        }
    }
}

/// Component of `grad` tangent to the l^p sphere at `x`: `grad` minus its
/// projection on the sphere normal `sign(x) |x|^(p-1)`. Writes it into
/// `tangent` and returns `(|tangent|, |grad|)`.
fn tangential_residual(x: &[f64], grad: &[f64], p: f64, tangent: &mut [f64]) -> (f64, f64) {
    let mut gn = 0.0;
    let mut nn = 0.0;
    let mut gg = 0.0;
    for ((&xi, &gi), t) in x.iter().zip(grad).zip(tangent.iter_mut()) {
        let ni = xi.signum() * xi.abs().powf(p - 1.0);
        *t = ni;
        gn += gi * ni;
        nn += ni * ni;
        gg += gi * gi;
    }
    let coef = if nn > 0.0 { gn / nn } else { 0.0 };
    let mut res = 0.0;
    for (t, &gi) in tangent.iter_mut().zip(grad) {
        *t = gi - coef * *t;
        res += *t * *t;
    }
    (res.sqrt(), gg.sqrt())
}

fn ascend(h: &WeightedHypergraph, cfg: &SolverConfig, start: Vec<f64>) -> Result<RestartOutcome> {
    let p = cfg.p;
    let mut x = project_to_sphere(&start, p)?;
    let mut f = h.evaluate_unchecked(&x);
    let mut grad = vec![0.0; h.n()];
    h.gradient_into(&x, &mut grad);
    let mut trial = vec![0.0; h.n()];
    let mut tangent = vec![0.0; h.n()];

    let mut alpha = match cfg.step {
        StepPolicy::Fixed { alpha } => alpha,
        StepPolicy::Backtracking { initial, .. } => initial,
    };
    let mut converged = false;
    let mut iterations = 0;

    while iterations < cfg.max_iters {
        if !f.is_finite() {
            return Err(Error::NonFinite(format!("form value {f} at iteration {iterations}")));
        }
        let (res, gnorm) = tangential_residual(&x, &grad, p, &mut tangent);
        if !(res.is_finite() && gnorm.is_finite()) {
            return Err(Error::NonFinite(format!("gradient at iteration {iterations}")));
        }
        if gnorm == 0.0 {
            break;
        }
        if res <= cfg.grad_tol * gnorm {
            converged = true;
            break;
        }
        iterations += 1;

        // Normalized direction keeps the trajectory invariant under weight
        // scaling.
        let scale = x.iter().map(|v| v * v).sum::<f64>().sqrt() / gnorm;
        match cfg.step {
            StepPolicy::Fixed { alpha } => {
                for ((t, xi), ti) in trial.iter_mut().zip(&x).zip(&tangent) {
                    *t = xi + alpha * scale * ti;
                }
                x = project_to_sphere(&trial, p)?;
                f = h.evaluate_unchecked(&x);
            }
            StepPolicy::Backtracking { shrink, armijo, .. } => {
                let mut accepted = false;
                while alpha >= MIN_STEP {
                    for ((t, xi), ti) in trial.iter_mut().zip(&x).zip(&tangent) {
                        *t = xi + alpha * scale * ti;
                    }
                    let y = project_to_sphere(&trial, p)?;
                    let fy = h.evaluate_unchecked(&y);
                    if fy >= f + armijo * alpha * scale * res * res {
                        x = y;
                        f = fy;
                        accepted = true;
                        break;
                    }
                    alpha *= shrink;
                }
                if !accepted {
                    converged = res <= STALL_TOL * gnorm;
                    break;
                }
                alpha = (alpha / shrink).min(MAX_STEP);
            }
        }
        h.gradient_into(&x, &mut grad);
    }

    if !f.is_finite() || x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("final iterate".into()));
    }
    Ok(RestartOutcome { value: h.evaluate(&x)?, x, iterations, converged })
}
