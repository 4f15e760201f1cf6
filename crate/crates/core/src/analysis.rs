//! Closed forms and bound checks built on the solver.
//!
//! * the maximum of the complete r-graph `K_k^r`:
//!   `k^(1 - r/p) * (k-1)(k-2)...(k-r+1)`;
//! * the ratio bound `max(G)/min(G) >= max(K_k^r)/min(K_k^r)` for weighted
//!   k-partite r-graphs with `r` even and `p >= r`;
//! * its equality case, the complete regular k-partite blow-up, whose
//!   extrema are those of `K_k^r` scaled by `t^(r - r/p)`;
//! * the 2-chromatic 4-graph family whose ratio `max/|min|` is unbounded.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{complete_rgraph, counterexample_4graph, kpartite_blowup, BlowupSpec};
use crate::hypergraph::{check_partition, PartitionCertificate, WeightedHypergraph};
use crate::solver::{
    project_to_sphere, solve_max, solve_min, solve_min_seeded, theorem_applicable,
    SolverConfig, SpectralEstimate,
};

/// Default relative tolerance for [`hoffman_check`].
pub const DEFAULT_BOUND_TOL: f64 = 1e-5;
/// Violations within this multiple of the tolerance are reported as
/// `violated_within_tol` rather than `violated`.
pub const NEAR_MISS_FACTOR: f64 = 100.0;
/// Restart multiplier used for the single escalation after a violation.
pub const ESCALATION_FACTOR: usize = 8;

/// Maximum of the form of `K_k^r` on the unit l^p sphere.
pub fn kkr_lambda_max(k: usize, r: usize, p: f64) -> Result<f64> {
    if r < 2 || k < r {
        return Err(Error::BadArity(format!("need k >= r >= 2, got k = {k}, r = {r}")));
    }
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::BadP(p, 1.0));
    }
    let falling: f64 = (1..r).map(|i| (k - i) as f64).product();
    Ok((k as f64).powf(1.0 - r as f64 / p) * falling)
}

/// Where a reported quantity came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    Solver {
        restarts: usize,
        seed: u64,
        restarts_converged: usize,
        best_restart_index: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quantity {
    pub value: f64,
    #[serde(flatten)]
    pub provenance: Provenance,
}

impl Quantity {
    fn closed(value: f64) -> Self {
        Self { value, provenance: Provenance::ClosedForm }
    }

    fn solved(est: &SpectralEstimate, cfg: &SolverConfig) -> Self {
        Self {
            value: est.value,
            provenance: Provenance::Solver {
                restarts: cfg.restarts,
                seed: cfg.seed,
                restarts_converged: est.restarts_converged,
                best_restart_index: est.best_restart_index,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    ViolatedWithinTol,
    Violated,
}

/// Both sides of the ratio bound for one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub p: f64,
    pub k: usize,
    pub r: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    /// Absolute threshold used for the verdict: `tol * max(1, |rhs|)`.
    pub threshold: f64,
    /// `None` when a denominator is not negative.
    pub verdict: Option<Verdict>,
    pub escalated: bool,
    pub max_g: Quantity,
    pub min_g: Quantity,
    pub max_k: Quantity,
    pub min_k: Quantity,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.verdict == Some(Verdict::Holds)
    }

    pub fn to_table(&self) -> String {
        let verdict = match self.verdict {
            Some(v) => serde_json::to_value(v).unwrap().as_str().unwrap().to_string(),
            None => "invalid".into(),
        };
        let rows = vec![
            vec!["quantity".into(), "value".into(), "source".into()],
            vec!["max(G)".into(), fmt(self.max_g.value), source(&self.max_g)],
            vec!["min(G)".into(), fmt(self.min_g.value), source(&self.min_g)],
            vec![format!("max(K_{}^{})", self.k, self.r), fmt(self.max_k.value), source(&self.max_k)],
            vec![format!("min(K_{}^{})", self.k, self.r), fmt(self.min_k.value), source(&self.min_k)],
            vec!["lhs".into(), fmt(self.lhs), String::new()],
            vec!["rhs".into(), fmt(self.rhs), String::new()],
            vec!["slack".into(), fmt(self.slack), format!("threshold {:.3e}", self.threshold)],
            vec!["verdict".into(), verdict, if self.escalated { "escalated".into() } else { String::new() }],
        ];
        table(&rows)
    }
}

fn source(q: &Quantity) -> String {
    match &q.provenance {
        Provenance::ClosedForm => "closed form".into(),
        Provenance::Solver { restarts, restarts_converged, .. } => {
            format!("solver {restarts_converged}/{restarts} converged")
        }
    }
}

/// Checks the ratio bound for a weighted k-partite r-graph, with `k` taken
/// from the certificate.
///
/// Rejects inputs where the bound makes no claim (odd `r`, `k < r`,
/// `p < r`, or an invalid certificate). A first-pass violation triggers one
/// rerun with `ESCALATION_FACTOR` times the restarts.
pub fn hoffman_check(
    h: &WeightedHypergraph,
    cert: &PartitionCertificate,
    p: f64,
    cfg: &SolverConfig,
    tol: f64,
) -> Result<BoundReport> {
    let r = h.r();
    let k = cert.k;
    if r % 2 != 0 {
        return Err(Error::TheoremInapplicable(format!("r = {r} is odd")));
    }
    if k < r {
        return Err(Error::TheoremInapplicable(format!("k = {k} is less than r = {r}")));
    }
    if !(p >= r as f64) {
        return Err(Error::TheoremInapplicable(format!("p = {p} is less than r = {r}")));
    }
    check_partition(h, cert).map_err(|e| match e {
        Error::NotPartite { .. } => Error::TheoremInapplicable(format!("certificate rejected: {e}")),
        other => other,
    })?;
    if !(tol >= 0.0) {
        return Err(Error::Config(format!("tolerance must be nonnegative, got {tol}")));
    }

    let base = SolverConfig { p, ..cfg.clone() };
    let (kk, _) = complete_rgraph(k, r)?;
    let max_k = Quantity::closed(kkr_lambda_max(k, r, p)?);

    let evaluate = |cfg: &SolverConfig, escalated: bool| -> Result<BoundReport> {
        let max_g = solve_max(h, cfg)?;
        let min_g = solve_min(h, cfg)?;
        let min_kk = solve_min(&kk, cfg)?;
        let lhs = max_g.value / min_g.value;
        let rhs = max_k.value / min_kk.value;
        let slack = lhs - rhs;
        let threshold = tol * rhs.abs().max(1.0);
        let verdict = if !(min_g.value < 0.0 && min_kk.value < 0.0) {
            None
        } else if slack >= -threshold {
            Some(Verdict::Holds)
        } else if slack >= -NEAR_MISS_FACTOR * threshold {
            Some(Verdict::ViolatedWithinTol)
        } else {
            Some(Verdict::Violated)
        };
        Ok(BoundReport {
            p,
            k,
            r,
            lhs,
            rhs,
            slack,
            threshold,
            verdict,
            escalated,
            max_g: Quantity::solved(&max_g, cfg),
            min_g: Quantity::solved(&min_g, cfg),
            max_k: max_k.clone(),
            min_k: Quantity::solved(&min_kk, cfg),
        })
    };

    let first = evaluate(&base, false)?;
    if first.verdict.is_none() || first.holds() {
        return Ok(first);
    }
    let escalated = SolverConfig { restarts: base.restarts * ESCALATION_FACTOR, ..base };
    evaluate(&escalated, true)
}

/// Both sides of the blow-up equalities
/// `max(G) = t^(r - r/p) * max(K_k^r)` and `min(G) = t^(r - r/p) * min(K_k^r)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlowupReport {
    pub k: usize,
    pub r: usize,
    pub t: usize,
    pub p: f64,
    pub factor: f64,
    pub max_blowup: f64,
    pub max_complete: f64,
    pub max_deviation: f64,
    pub min_blowup: f64,
    pub min_complete: f64,
    pub min_deviation: f64,
}

impl BlowupReport {
    pub fn worst_deviation(&self) -> f64 {
        self.max_deviation.max(self.min_deviation)
    }
}

/// Builds the blow-up of `K_k^r` with parts of size `t` and compares its
/// extrema with the scaled extrema of `K_k^r`.
///
/// The minimum of the blow-up is seeded with the lift of the `K_k^r`
/// witness, and the `K_k^r` minimum is re-solved from the collapse of the
/// blow-up witness, so each side starts from the other's best point.
pub fn blowup_equality_check(
    k: usize,
    r: usize,
    t: usize,
    p: f64,
    cfg: &SolverConfig,
) -> Result<BlowupReport> {
    let spec = BlowupSpec::new(k, r, t)?;
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::BadP(p, 1.0));
    }
    let cfg = SolverConfig { p, ..cfg.clone() };
    let (g, cert) = kpartite_blowup(spec)?;
    let (kk, _) = complete_rgraph(k, r)?;
    let factor = (t as f64).powf(r as f64 - r as f64 / p);

    let max_complete = kkr_lambda_max(k, r, p)?;
    let max_blowup = solve_max(&g, &cfg)?.value;

    let min_k = solve_min(&kk, &cfg)?;
    let lifted: Vec<f64> = (0..g.n())
        .map(|v| min_k.witness[cert.part_of[v]] * (t as f64).powf(-1.0 / p))
        .collect();
    let min_g = solve_min_seeded(&g, &cfg, &[lifted])?;
    let collapsed = collapse(&min_g.witness, &cert);
    let min_k = match project_to_sphere(&collapsed, p) {
        Ok(y) => {
            let refined = solve_min_seeded(&kk, &cfg.clone().with_restarts(1), &[y])?;
            if refined.value < min_k.value { refined } else { min_k }
        }
        Err(_) => min_k,
    };

    let rel = |actual: f64, predicted: f64| (actual - predicted).abs() / predicted.abs();
    Ok(BlowupReport {
        k,
        r,
        t,
        p,
        factor,
        max_blowup,
        max_complete,
        max_deviation: rel(max_blowup, factor * max_complete),
        min_blowup: min_g.value,
        min_complete: min_k.value,
        min_deviation: rel(min_g.value, factor * min_k.value),
    })
}

/// Sums the coordinates of each part.
fn collapse(x: &[f64], cert: &PartitionCertificate) -> Vec<f64> {
    let mut y = vec![0.0; cert.k];
    for (v, &part) in cert.part_of.iter().enumerate() {
        y[part] += x[v];
    }
    y
}

fn check_counterexample_args(n: usize, p: f64) -> Result<()> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::BadOrder(n));
    }
    if !(p >= 2.0) || !p.is_finite() {
        return Err(Error::BadP(p, 2.0));
    }
    Ok(())
}

fn binom2(n: usize) -> f64 {
    (n * (n - 1) / 2) as f64
}

/// Exact maximum of the 2-chromatic 4-graph family:
/// `4! * C(n,2)^2 * (2n)^(-4/p)`.
pub fn counterexample_sr(n: usize, p: f64) -> Result<f64> {
    check_counterexample_args(n, p)?;
    Ok(24.0 * binom2(n).powi(2) * (2.0 * n as f64).powf(-4.0 / p))
}

/// Feasible point for the minimum of the family: the first `n/2` vertices
/// of `A` get `-(2n)^(-1/p)`, every other vertex `+(2n)^(-1/p)`. Its value
/// is `-4! * (n/2) * C(n,2) * (2n)^(-4/p)`.
pub fn counterexample_min_construction(n: usize, p: f64) -> Result<(f64, Vec<f64>)> {
    check_counterexample_args(n, p)?;
    let a = (2.0 * n as f64).powf(-1.0 / p);
    let witness = (0..2 * n).map(|i| if i < n / 2 { -a } else { a }).collect();
    let value = -24.0 * (n as f64 / 2.0) * binom2(n) * (2.0 * n as f64).powf(-4.0 / p);
    Ok((value, witness))
}

/// Lower bound on the minimum of the family: `-4! * 2n^3 / (2n)^(4/p)`.
pub fn counterexample_min_lower_bound(n: usize, p: f64) -> Result<f64> {
    check_counterexample_args(n, p)?;
    let nf = n as f64;
    Ok(-24.0 * 2.0 * nf.powi(3) / (2.0 * nf).powf(4.0 / p))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub p: f64,
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub construction_value: f64,
    pub lower_bound: f64,
    pub ratio: f64,
    /// `ratio(n) / ratio(previous n)`.
    pub growth: Option<f64>,
    pub min_source: Quantity,
}

/// Ratio `max/|min|` over the counterexample family. The maximum is the
/// closed form; the minimum is solved with the construction witness added
/// to the random restarts.
pub fn ratio_sweep(n_list: &[usize], p: f64, cfg: &SolverConfig) -> Result<Vec<SweepRow>> {
    for &n in n_list {
        check_counterexample_args(n, p)?;
    }
    let cfg = SolverConfig { p, ..cfg.clone() };
    let mut rows: Vec<SweepRow> = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let g = counterexample_4graph(n)?;
        let lambda_max = counterexample_sr(n, p)?;
        let (construction_value, witness) = counterexample_min_construction(n, p)?;
        let min = solve_min_seeded(&g, &cfg, &[witness])?;
        let ratio = lambda_max / min.value.abs();
        let growth = rows.last().map(|prev| ratio / prev.ratio);
        rows.push(SweepRow {
            n,
            p,
            lambda_max,
            lambda_min: min.value,
            construction_value,
            lower_bound: counterexample_min_lower_bound(n, p)?,
            ratio,
            growth,
            min_source: Quantity::solved(&min, &cfg),
        });
    }
    Ok(rows)
}

pub fn sweep_table(rows: &[SweepRow]) -> String {
    let mut out = vec![vec![
        "n".to_string(),
        "p".into(),
        "max".into(),
        "min".into(),
        "construction".into(),
        "lower_bound".into(),
        "ratio".into(),
        "growth".into(),
    ]];
    for row in rows {
        out.push(vec![
            row.n.to_string(),
            row.p.to_string(),
            fmt(row.lambda_max),
            fmt(row.lambda_min),
            fmt(row.construction_value),
            fmt(row.lower_bound),
            fmt(row.ratio),
            row.growth.map(fmt).unwrap_or_else(|| "-".into()),
        ]);
    }
    table(&out)
}

/// `max + min` for odd `r`, where `P(-x) = -P(x)` forces `min = -max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OddSymmetryReport {
    pub r: usize,
    pub p: f64,
    pub max: f64,
    pub min: f64,
    /// `|max + min| / max(|max|, |min|)`.
    pub deviation: f64,
}

pub fn odd_r_symmetry_check(
    h: &WeightedHypergraph,
    p: f64,
    cfg: &SolverConfig,
) -> Result<OddSymmetryReport> {
    if h.r() % 2 == 0 {
        return Err(Error::WrongArity(format!("symmetry check needs odd r, got r = {}", h.r())));
    }
    let cfg = SolverConfig { p, ..cfg.clone() };
    let max = solve_max(h, &cfg)?.value;
    let min = solve_min(h, &cfg)?.value;
    Ok(OddSymmetryReport {
        r: h.r(),
        p,
        max,
        min,
        deviation: (max + min).abs() / max.abs().max(min.abs()),
    })
}

/// Whether the bound makes a claim for `h` at exponent `p`.
pub fn bound_applicable(h: &WeightedHypergraph, p: f64) -> bool {
    theorem_applicable(h.r(), p)
}

pub(crate) fn fmt(v: f64) -> String {
    format!("{v:.10}")
}

/// Left-aligned first column, right-aligned others.
pub(crate) fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| if c == 0 { format!("{s:<w$}", w = widths[c]) } else { format!("{s:>w$}", w = widths[c]) })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete_rgraph;

    fn cfg() -> SolverConfig {
        SolverConfig::new(2.0).with_seed(11)
    }

    #[test]
    fn kkr_closed_form() {
        assert!((kkr_lambda_max(3, 2, 2.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((kkr_lambda_max(4, 2, 4.0).unwrap() - 6.0).abs() < 1e-14);
        assert!((kkr_lambda_max(4, 4, 4.0).unwrap() - 6.0).abs() < 1e-14);
        assert!(matches!(kkr_lambda_max(3, 4, 4.0), Err(Error::BadArity(_))));
    }

    #[test]
    fn counterexample_closed_forms() {
        assert!((counterexample_sr(2, 4.0).unwrap() - 6.0).abs() < 1e-13);
        assert!((counterexample_sr(4, 4.0).unwrap() - 108.0).abs() < 1e-12);
        assert!((counterexample_sr(4, 2.0).unwrap() - 13.5).abs() < 1e-13);
        assert_eq!(counterexample_sr(3, 4.0), Err(Error::BadOrder(3)));
        assert_eq!(counterexample_sr(4, 1.5), Err(Error::BadP(1.5, 2.0)));

        let (v2, _) = counterexample_min_construction(2, 4.0).unwrap();
        assert!((v2 + 6.0).abs() < 1e-13);
        let (v4, w4) = counterexample_min_construction(4, 4.0).unwrap();
        assert!((v4 + 36.0).abs() < 1e-12);
        assert!((crate::lp_norm(&w4, 4.0).unwrap() - 1.0).abs() < 1e-15);
        let g = counterexample_4graph(4).unwrap();
        assert!((g.evaluate(&w4).unwrap() - v4).abs() < 1e-12);
    }

    #[test]
    fn hoffman_self_comparison() {
        let (k44, cert) = complete_rgraph(4, 4).unwrap();
        let rep = hoffman_check(&k44, &cert, 4.0, &cfg(), DEFAULT_BOUND_TOL).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert!(rep.slack.abs() < 1e-8);
    }

    #[test]
    fn hoffman_rejects_inapplicable() {
        let (k53, c53) = complete_rgraph(5, 3).unwrap();
        assert!(matches!(hoffman_check(&k53, &c53, 3.0, &cfg(), 1e-5), Err(Error::TheoremInapplicable(_))));
        let (k44, c44) = complete_rgraph(4, 4).unwrap();
        assert!(matches!(hoffman_check(&k44, &c44, 3.0, &cfg(), 1e-5), Err(Error::TheoremInapplicable(_))));
        let g = counterexample_4graph(4).unwrap();
        let col = crate::generators::counterexample_coloring(4).unwrap();
        let err = hoffman_check(&g, &col, 4.0, &cfg(), 1e-5).unwrap_err();
        assert!(matches!(err, Error::TheoremInapplicable(_)), "{err:?}");
    }

    #[test]
    fn blowup_triangle() {
        let rep = blowup_equality_check(3, 2, 2, 2.0, &cfg()).unwrap();
        assert!((rep.max_blowup - 4.0).abs() < 1e-8);
        assert!((rep.min_blowup + 2.0).abs() < 1e-8);
        assert!(rep.worst_deviation() < 1e-8);
        let id = blowup_equality_check(4, 2, 1, 3.0, &cfg()).unwrap();
        assert!(id.worst_deviation() < 1e-9, "{id:?}");
    }

    #[test]
    fn odd_symmetry() {
        let e = WeightedHypergraph::new(3, 3, vec![(vec![0, 1, 2], 1.0)]).unwrap();
        let rep = odd_r_symmetry_check(&e, 3.0, &cfg()).unwrap();
        assert!((rep.max - 2.0).abs() < 1e-8 && (rep.min + 2.0).abs() < 1e-8);
        let (k3, _) = complete_rgraph(3, 2).unwrap();
        assert!(matches!(odd_r_symmetry_check(&k3, 2.0, &cfg()), Err(Error::WrongArity(_))));
    }

    #[test]
    fn sweep_small() {
        let rows = ratio_sweep(&[2, 4], 4.0, &cfg()).unwrap();
        assert!((rows[0].ratio - 1.0).abs() < 1e-8);
        for row in &rows {
            assert!((row.ratio * row.lambda_min.abs() - row.lambda_max).abs() <= 1e-10 * row.lambda_max);
        }
        assert!(rows[1].growth.unwrap() > 1.0);
        assert!(sweep_table(&rows).lines().count() == 3);
        assert_eq!(ratio_sweep(&[2, 5], 4.0, &cfg()), Err(Error::BadOrder(5)));
    }
}
