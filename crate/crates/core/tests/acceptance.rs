//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pspectral::analysis::{
    blowup_equality_check, counterexample_min_construction, counterexample_min_lower_bound,
    counterexample_sr, hoffman_check, kkr_lambda_max, odd_r_symmetry_check, ratio_sweep, Verdict,
    DEFAULT_BOUND_TOL,
};
use pspectral::generators::{complete_rgraph, counterexample_4graph, random_kpartite, RandomKPartite};
use pspectral::oracle::{exhaustive_expand, fd_gradient, grid_extrema};
use pspectral::{exact_graph_eigen, lp_norm, solve_max, solve_min, SolverConfig, WeightedHypergraph};

type Outcome = Result<String, String>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Random weighted r-graph on `n` vertices: every r-subset is an edge with
/// probability `density`, weights uniform in [-2, 2].
fn random_graph(n: usize, r: usize, density: f64, seed: u64) -> WeightedHypergraph {
    let spec = RandomKPartite {
        k: n,
        r,
        part_sizes: vec![1; n],
        edge_density: density,
        weight_range: (-2.0, 2.0),
        seed,
    };
    random_kpartite(&spec).unwrap().0
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn criterion_1() -> Outcome {
    let mut worst = 0.0f64;
    for k in 2..=8 {
        let (h, _) = complete_rgraph(k, 2).unwrap();
        let cfg = SolverConfig::new(2.0).with_seed(k as u64);
        let max = solve_max(&h, &cfg).unwrap().value;
        let min = solve_min(&h, &cfg).unwrap().value;
        let (emax, emin) = exact_graph_eigen(&h).unwrap();
        ensure((max - (k as f64 - 1.0)).abs() < 1e-8, || format!("K_{k}: max {max}"))?;
        ensure((min + 1.0).abs() < 1e-8, || format!("K_{k}: min {min}"))?;
        ensure((emax.value - (k as f64 - 1.0)).abs() < 1e-10, || format!("K_{k}: exact max {}", emax.value))?;
        ensure((emin.value + 1.0).abs() < 1e-10, || format!("K_{k}: exact min {}", emin.value))?;
        worst = worst.max((max - emax.value).abs()).max((min - emin.value).abs());
    }
    ensure(worst < 1e-10, || format!("solver vs exact eigen differ by {worst:.2e}"))?;
    Ok(format!("k = 2..8, worst solver/exact gap {worst:.2e}"))
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    for (k, r) in [(3, 2), (4, 2), (4, 4), (5, 4), (6, 4)] {
        let (h, _) = complete_rgraph(k, r).unwrap();
        for p in [r as f64, r as f64 + 1.0, 2.0 * r as f64] {
            let got = solve_max(&h, &SolverConfig::new(p)).unwrap().value;
            let want = kkr_lambda_max(k, r, p).unwrap();
            let err = (got - want).abs() / want.abs();
            ensure(err < 1e-6, || format!("K_{k}^{r} p={p}: {got} vs {want}"))?;
            worst = worst.max(err);
        }
    }
    Ok(format!("15 cases, worst relative error {worst:.2e}"))
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for k in 2..=4 {
        for r in [2, 4] {
            if k < r {
                continue;
            }
            for t in 1..=3 {
                for p in [r as f64, 2.0 * r as f64] {
                    let rep = blowup_equality_check(k, r, t, p, &SolverConfig::new(p)).unwrap();
                    let dev = rep.worst_deviation();
                    ensure(dev < 1e-5, || format!("k={k} r={r} t={t} p={p}: deviation {dev:.2e}"))?;
                    worst = worst.max(dev);
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} blow-ups, worst deviation {worst:.2e}"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = f64::INFINITY;
    let mut max_n = 0;
    for i in 0..50u64 {
        let k = [4, 5, 6][i as usize % 3];
        let p = if i % 2 == 0 { 4.0 } else { 6.0 };
        let part_sizes: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
        let spec = RandomKPartite {
            k,
            r: 4,
            part_sizes,
            edge_density: 0.6,
            weight_range: (-2.0, 2.0),
            seed: 1000 + i,
        };
        let (h, cert) = random_kpartite(&spec).unwrap();
        max_n = max_n.max(h.n());
        let cfg = SolverConfig::new(p).with_seed(i);
        let rep = hoffman_check(&h, &cert, p, &cfg, DEFAULT_BOUND_TOL).unwrap();
        ensure(rep.verdict == Some(Verdict::Holds) && rep.slack >= -1e-5, || {
            format!("instance {i} (k={k}, n={}, p={p}): slack {:.3e}, verdict {:?}", h.n(), rep.slack, rep.verdict)
        })?;
        worst = worst.min(rep.slack);
    }
    ensure(max_n <= 18, || format!("instance with n = {max_n}"))?;
    Ok(format!("50 instances hold, n <= {max_n}, smallest slack {worst:.3e}"))
}

fn criterion_5() -> Outcome {
    let ns = [2, 4, 6, 8];
    let mut ratio_growth = 0.0;
    for p in [2.0, 4.0] {
        for &n in &ns {
            let h = counterexample_4graph(n).unwrap();
            let max = solve_max(&h, &SolverConfig::new(p)).unwrap().value;
            let sr = counterexample_sr(n, p).unwrap();
            ensure(rel(max, sr) < 1e-6, || format!("n={n} p={p}: max {max} vs (sr) {sr}"))?;
        }
        let rows = ratio_sweep(&ns, p, &SolverConfig::new(p)).unwrap();
        for row in &rows {
            let (construction, _) = counterexample_min_construction(row.n, p).unwrap();
            let lower = counterexample_min_lower_bound(row.n, p).unwrap();
            ensure(row.lambda_min <= construction + 1e-10, || {
                format!("n={} p={p}: min {} above construction {construction}", row.n, row.lambda_min)
            })?;
            ensure(row.lambda_min >= lower, || {
                format!("n={} p={p}: min {} below lower bound {lower}", row.n, row.lambda_min)
            })?;
        }
        for w in rows.windows(2) {
            ensure(w[1].ratio > w[0].ratio, || format!("p={p}: ratio not increasing at n={}", w[1].n))?;
        }
        if p == 4.0 {
            ratio_growth = rows[3].ratio / rows[1].ratio;
            ensure(ratio_growth >= 1.6, || format!("ratio(8)/ratio(4) = {ratio_growth}"))?;
        }
    }
    Ok(format!("(sr) matched, min bracketed, ratio(8)/ratio(4) = {ratio_growth:.4} at p=4"))
}

fn criterion_6() -> Outcome {
    let mut corpus: Vec<(String, WeightedHypergraph, f64)> = Vec::new();
    for k in 2..=5 {
        corpus.push((format!("K_{k}^2"), complete_rgraph(k, 2).unwrap().0, 2.0));
    }
    corpus.push(("K_4^4".into(), complete_rgraph(4, 4).unwrap().0, 4.0));
    corpus.push(("K_5^3".into(), complete_rgraph(5, 3).unwrap().0, 3.0));
    corpus.push(("K_5^4".into(), complete_rgraph(5, 4).unwrap().0, 4.0));
    corpus.push(("counterexample(2)".into(), counterexample_4graph(2).unwrap(), 4.0));
    corpus.push(("edge^2".into(), WeightedHypergraph::new(2, 2, vec![(vec![0, 1], 1.0)]).unwrap(), 2.0));
    corpus.push(("edge^3".into(), WeightedHypergraph::new(3, 3, vec![(vec![0, 1, 2], 1.0)]).unwrap(), 3.0));
    for (i, (n, r)) in [(4, 2), (5, 2), (5, 3), (5, 4), (4, 3)].into_iter().enumerate() {
        corpus.push((format!("random n={n} r={r}"), random_graph(n, r, 0.8, 60 + i as u64), r as f64));
    }

    let mut worst = 0.0f64;
    for (name, h, p) in &corpus {
        let cfg = SolverConfig::new(*p);
        let max = solve_max(h, &cfg).unwrap().value;
        let min = solve_min(h, &cfg).unwrap().value;
        let grid = grid_extrema(h, *p, 24).unwrap();
        ensure(max >= grid.max_lb - 1e-6 && min <= grid.min_ub + 1e-6, || {
            format!("{name}: solver ({max}, {min}) loses to grid ({}, {})", grid.max_lb, grid.min_ub)
        })?;
        let gap = rel(max, grid.max_lb).max(rel(min, grid.min_ub));
        ensure(gap < 1e-4, || format!("{name}: solver ({max}, {min}) vs grid ({}, {})", grid.max_lb, grid.min_ub))?;
        worst = worst.max(gap);
        if h.r() == 2 && *p == 2.0 {
            let (emax, emin) = exact_graph_eigen(h).unwrap();
            for (label, v, e) in [("solver", max, emax.value), ("solver", min, emin.value), ("grid", grid.max_lb, emax.value), ("grid", grid.min_ub, emin.value)] {
                ensure(rel(v, e) < 1e-4, || format!("{name}: {label} {v} vs exact {e}"))?;
            }
        }
    }
    Ok(format!("{} instances, worst solver/grid gap {worst:.2e}", corpus.len()))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let mut fd_worst = 0.0f64;
    let mut euler_worst = 0.0f64;
    let mut homog_worst = 0.0f64;
    for i in 0..100u64 {
        let r = rng.gen_range(2..=4);
        let n = rng.gen_range(r..=8);
        let h = random_graph(n, r, 0.7, 700 + i);
        let x = random_vector(&mut rng, n);
        let grad = h.gradient(&x).unwrap();
        let fd = fd_gradient(&h, &x, 1e-5).unwrap();
        let scale = grad.iter().map(|g| g.abs()).fold(1.0, f64::max);
        let fd_err = grad.iter().zip(&fd).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / scale;
        ensure(fd_err < 1e-5, || format!("instance {i}: gradient vs FD {fd_err:.2e}"))?;
        fd_worst = fd_worst.max(fd_err);

        let value = h.evaluate(&x).unwrap();
        let inner: f64 = grad.iter().zip(&x).map(|(g, xi)| g * xi).sum();
        let euler = (inner - r as f64 * value).abs() / value.abs().max(1.0);
        ensure(euler < 1e-10, || format!("instance {i}: Euler residual {euler:.2e}"))?;
        euler_worst = euler_worst.max(euler);

        let c: f64 = rng.gen_range(-3.0..3.0);
        let cx: Vec<f64> = x.iter().map(|v| c * v).collect();
        let homog = rel(h.evaluate(&cx).unwrap(), c.powi(r as i32) * value);
        ensure(homog < 1e-12, || format!("instance {i}: homogeneity {homog:.2e}"))?;
        homog_worst = homog_worst.max(homog);

        let expanded = exhaustive_expand(&h, &x).unwrap();
        ensure(rel(expanded, value) < 1e-12, || format!("instance {i}: expansion {expanded} vs {value}"))?;
    }

    let mut odd_worst = 0.0f64;
    for i in 0..20u64 {
        let n = rng.gen_range(3..=7);
        let h = random_graph(n, 3, 0.7, 800 + i);
        let p = [3.0, 4.0][i as usize % 2];
        let rep = odd_r_symmetry_check(&h, p, &SolverConfig::new(p).with_seed(i)).unwrap();
        ensure(rep.deviation < 2e-6, || format!("odd instance {i}: deviation {:.2e}", rep.deviation))?;
        odd_worst = odd_worst.max(rep.deviation);
    }

    let mut samples = 0;
    for i in 0..10u64 {
        let r = [2, 4][i as usize % 2];
        let n = rng.gen_range(r..=7);
        let p = r as f64 + (i % 3) as f64;
        let h = random_graph(n, r, 0.7, 900 + i);
        let cfg = SolverConfig::new(p).with_seed(i);
        let min = solve_min(&h, &cfg).unwrap().value;
        let max = solve_max(&h, &cfg).unwrap().value;
        for _ in 0..1000 {
            let x = random_vector(&mut rng, n);
            let norm = lp_norm(&x, p).unwrap();
            let ratio = h.evaluate(&x).unwrap() / norm.powi(r as i32);
            ensure(ratio >= min - 1e-8 && ratio <= max + 1e-8, || {
                format!("instance {i}: sampled {ratio} outside [{min}, {max}]")
            })?;
            samples += 1;
        }
    }

    Ok(format!(
        "FD {fd_worst:.1e}, Euler {euler_worst:.1e}, homogeneity {homog_worst:.1e}, odd-r {odd_worst:.1e}, {samples} samples inside [min, max]"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 classical Hoffman values", criterion_1),
        ("2 closed-form maximum of K_k^r", criterion_2),
        ("3 blow-up equality cases", criterion_3),
        ("4 ratio bound on random k-partite graphs", criterion_4),
        ("5 counterexample family", criterion_5),
        ("6 oracle equivalence", criterion_6),
        ("7 calculus and invariants", criterion_7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail}; {secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail}; {secs:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
