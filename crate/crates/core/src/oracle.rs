//! Brute-force references for tiny instances.
//!
//! Nothing here calls into [`crate::solver`]; these routines are the
//! independent side of every solver check.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{lp_norm, WeightedHypergraph};

/// Largest vertex count accepted by [`grid_extrema`].
pub const GRID_MAX_N: usize = 6;
const POLISH_CANDIDATES: usize = 10;
const POLISH_STEPS: usize = 200;

/// Central finite-difference gradient of the polynomial form.
pub fn fd_gradient(h: &WeightedHypergraph, x: &[f64], step: f64) -> Result<Vec<f64>> {
    if x.len() != h.n() {
        return Err(Error::DimensionMismatch { expected: h.n(), actual: x.len() });
    }
    if !(step > 0.0) {
        return Err(Error::Config(format!("finite-difference step must be positive, got {step}")));
    }
    let mut probe = x.to_vec();
    let mut grad = Vec::with_capacity(x.len());
    for j in 0..x.len() {
        probe[j] = x[j] + step;
        let up = h.evaluate(&probe)?;
        probe[j] = x[j] - step;
        let down = h.evaluate(&probe)?;
        probe[j] = x[j];
        grad.push((up - down) / (2.0 * step));
    }
    Ok(grad)
}

/// Second implementation of the polynomial form: each edge term is
/// multiplied by `r!` separately and the terms are added in order of
/// increasing absolute value.
pub fn exhaustive_expand(h: &WeightedHypergraph, x: &[f64]) -> Result<f64> {
    if x.len() != h.n() {
        return Err(Error::DimensionMismatch { expected: h.n(), actual: x.len() });
    }
    let fact: f64 = (2..=h.r()).fold(1.0, |acc, i| acc * i as f64);
    let mut terms: Vec<f64> = h
        .edges()
        .iter()
        .map(|e| {
            let mut t = fact * e.weight;
            for &v in &e.vertices {
                t *= x[v];
            }
            t
        })
        .collect();
    terms.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    Ok(terms.iter().sum())
}

/// Result of [`grid_extrema`]: feasible-side bounds on both extrema.
#[derive(Debug, Clone, PartialEq)]
pub struct GridExtrema {
    /// A value attained on the unit sphere, so `max_lb <= true max`.
    pub max_lb: f64,
    /// A value attained on the unit sphere, so `min_ub >= true min`.
    pub min_ub: f64,
    pub max_witness: Vec<f64>,
    pub min_witness: Vec<f64>,
    pub grid_points: usize,
}

#[derive(Debug, Clone)]
struct Candidate {
    value: f64,
    index: u64,
    x: Vec<f64>,
}

fn better(a: &Candidate, b: &Candidate) -> Ordering {
    b.value.total_cmp(&a.value).then(a.index.cmp(&b.index))
}

#[derive(Debug, Clone, Default)]
struct TopK {
    items: Vec<Candidate>,
}

impl TopK {
    fn offer(&mut self, value: f64, index: u64, x: impl FnOnce() -> Vec<f64>) {
        if self.items.len() == POLISH_CANDIDATES {
            let worst = &self.items[POLISH_CANDIDATES - 1];
            if value < worst.value || (value == worst.value && index > worst.index) {
                return;
            }
        }
        self.items.push(Candidate { value, index, x: x() });
        self.items.sort_by(better);
        self.items.truncate(POLISH_CANDIDATES);
    }

    fn merge(mut self, other: TopK) -> TopK {
        self.items.extend(other.items);
        self.items.sort_by(better);
        self.items.truncate(POLISH_CANDIDATES);
        self
    }
}

/// Enumerates the grid `|x_i|^p = m_i / resolution` (all compositions of
/// `resolution` into `n` parts, all sign patterns), then polishes the best
/// ten points of each direction with 200 projected-gradient steps.
pub fn grid_extrema(h: &WeightedHypergraph, p: f64, resolution: usize) -> Result<GridExtrema> {
    let n = h.n();
    if n > GRID_MAX_N {
        return Err(Error::TooLarge { n, limit: GRID_MAX_N });
    }
    if resolution < 4 {
        return Err(Error::Config(format!("grid resolution must be >= 4, got {resolution}")));
    }
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::BadP(p, 1.0));
    }

    let comps = compositions(resolution, n);
    let levels: Vec<f64> =
        (0..=resolution).map(|m| (m as f64 / resolution as f64).powf(1.0 / p)).collect();
    let sign_count = 1u64 << n;

    let (top_max, top_min) = comps
        .par_iter()
        .enumerate()
        .fold(
            || (TopK::default(), TopK::default()),
            |(mut hi, mut lo), (ci, comp)| {
                let mut x = vec![0.0; n];
                for signs in 0..sign_count {
                    // a sign on a zero coordinate duplicates another pattern
                    if (0..n).any(|i| signs >> i & 1 == 1 && comp[i] == 0) {
                        continue;
                    }
                    for i in 0..n {
                        let mag = levels[comp[i]];
                        x[i] = if signs >> i & 1 == 1 { -mag } else { mag };
                    }
                    let v = h.evaluate_unchecked(&x);
                    let index = ci as u64 * sign_count + signs;
                    hi.offer(v, index, || x.clone());
                    lo.offer(-v, index, || x.clone());
                }
                (hi, lo)
            },
        )
        .reduce(
            || (TopK::default(), TopK::default()),
            |(a_hi, a_lo), (b_hi, b_lo)| (a_hi.merge(b_hi), a_lo.merge(b_lo)),
        );

    let neg = h.negated();
    let (max_lb, max_witness) = polish_best(h, p, top_max)?;
    let (neg_best, min_witness) = polish_best(&neg, p, top_min)?;
    Ok(GridExtrema {
        max_lb,
        min_ub: -neg_best,
        max_witness,
        min_witness,
        grid_points: comps.len(),
    })
}

fn polish_best(h: &WeightedHypergraph, p: f64, top: TopK) -> Result<(f64, Vec<f64>)> {
    let mut best: Option<(f64, Vec<f64>)> = None;
    for cand in top.items {
        let x = polish(h, p, cand.x)?;
        let v = h.evaluate(&x)?;
        if best.as_ref().map_or(true, |(bv, _)| v > *bv) {
            best = Some((v, x));
        }
    }
    best.ok_or_else(|| Error::Config("grid produced no candidates".into()))
}

/// Plain ascent: move along the unit tangential gradient, renormalize,
/// halve the step until the value improves.
fn polish(h: &WeightedHypergraph, p: f64, mut x: Vec<f64>) -> Result<Vec<f64>> {
    let mut fx = h.evaluate(&x)?;
    let mut eta = 0.1;
    for _ in 0..POLISH_STEPS {
        let g = h.gradient(&x)?;
        let normal: Vec<f64> = x.iter().map(|v| v.signum() * v.abs().powf(p - 1.0)).collect();
        let nn: f64 = normal.iter().map(|v| v * v).sum();
        let gn: f64 = g.iter().zip(&normal).map(|(a, b)| a * b).sum();
        let tangent: Vec<f64> = if nn > 0.0 {
            g.iter().zip(&normal).map(|(a, b)| a - gn / nn * b).collect()
        } else {
            g.clone()
        };
        let tnorm = tangent.iter().map(|v| v * v).sum::<f64>().sqrt();
        if tnorm == 0.0 || !tnorm.is_finite() {
            break;
        }
        let mut improved = false;
        while eta > 1e-15 {
            let trial: Vec<f64> = x.iter().zip(&tangent).map(|(a, t)| a + eta * t / tnorm).collect();
            let norm = lp_norm(&trial, p)?;
            if norm > 0.0 {
                let y: Vec<f64> = trial.iter().map(|v| v / norm).collect();
                let fy = h.evaluate(&y)?;
                if fy > fx {
                    x = y;
                    fx = fy;
                    improved = true;
                    break;
                }
            }
            eta *= 0.5;
        }
        if !improved {
            break;
        }
        eta = (eta * 2.0).min(1.0);
    }
    Ok(x)
}

/// All weak compositions of `total` into `parts` nonnegative parts, in
/// lexicographic order.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for m in 0..=rest {
            cur.push(m);
            rec(rest - m, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}
