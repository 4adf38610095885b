//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! run with `cargo test --test acceptance -- --nocapture` to see them.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use dynmincut::bench::{gen_gnm, gen_random_workload, gen_worstcase_workload, run_compare, Mode, RunOptions};
use dynmincut::flow::{FlowNetwork, FlowResult, ResetMode};
use dynmincut::static_cactus::{build_cactus_seeded, oracle_all_min_cuts, static_min_cut};
use dynmincut::{DynamicConfig, DynamicMinCut};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_pair(rng: &mut StdRng, n: usize) -> (usize, usize) {
    let u = rng.gen_range(0..n);
    let v = (u + rng.gen_range(1..n)) % n;
    (u, v)
}

fn oracle_equivalence() -> Outcome {
    let limit = Duration::from_secs(60);
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(101);
    let mut graphs = 0;
    for p in [0.2, 0.4, 0.7] {
        for max_w in [1, 8] {
            for _ in 0..40 {
                let n = rng.gen_range(4..=12);
                let g = gnp(&mut rng, n, p, max_w);
                let oracle = oracle_all_min_cuts(&g).unwrap();
                let c = build_cactus_seeded(&g, graphs);
                ensure(c.enumerate_cuts() == oracle.cuts, || {
                    format!("graph {graphs} (n={n}, p={p}) cut sets differ")
                })?;
                graphs += 1;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < limit, || format!("{t:.1?} exceeds {limit:?}"))?;
    Ok(format!("{graphs} graphs, cut sets equal, {t:.2?} (limit 60s)"))
}

fn dynamic_lambda() -> Outcome {
    let limit = Duration::from_secs(300);
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(202);
    let graphs = 50;
    let ops = 1000;
    for gi in 0..graphs {
        let n = rng.gen_range(10..=40);
        let max_w = if gi % 2 == 0 { 1 } else { 8 };
        let p = rng.gen_range(0.05..0.3);
        let g = connected_gnp(&mut rng, n, p, max_w);
        let mut d = DynamicMinCut::with_config(g, DynamicConfig { seed: gi, ..Default::default() });
        for op in 0..ops {
            if d.graph().num_edges() == 0 || rng.gen_bool(0.6) {
                let (u, v) = random_pair(&mut rng, n);
                d.insert(u, v, rng.gen_range(1..=max_w)).unwrap();
            } else {
                let edges: Vec<_> = d.graph().edges().collect();
                let (u, v, _) = edges[rng.gen_range(0..edges.len())];
                d.delete(u, v).unwrap();
            }
            let fresh = static_min_cut(d.graph());
            ensure(d.current_lambda() == fresh, || {
                format!("graph {gi} op {op}: dynamic {} vs static {fresh}", d.current_lambda())
            })?;
        }
    }
    let t = start.elapsed();
    ensure(t < limit, || format!("{t:.1?} exceeds {limit:?}"))?;
    Ok(format!("{graphs} graphs x {ops} ops, 0 mismatches, {t:.2?} (limit 300s)"))
}

fn flow_engine() -> Outcome {
    let mut rng = StdRng::seed_from_u64(303);
    let mut net = FlowNetwork::new();
    let (mut exact, mut bounded, mut brute) = (0, 0, 0);
    for i in 0..600 {
        let small = i % 2 == 0;
        let n = if small { rng.gen_range(2..=14) } else { rng.gen_range(2..=200) };
        let p = rng.gen_range(0.05..0.5);
        let g = gnp(&mut rng, n, p, [1, 8, 100][i % 3]);
        let (s, t) = random_pair(&mut rng, n);
        let truth = edmonds_karp(&g, s, t);
        if small {
            let b = brute_st_cut(&g, s, t);
            ensure(b == truth, || format!("instance {i}: reference flows disagree"))?;
        }
        let bound = if i % 3 == 0 { Some(rng.gen_range(1..=truth + 2)) } else { None };
        match net.max_flow_bounded(&g, s, t, bound, rng.gen_range(0..3)) {
            FlowResult::ReachedBound(b) => {
                ensure(truth >= b, || format!("instance {i}: bound {b} > true flow {truth}"))?;
                bounded += 1;
            }
            FlowResult::Exact { value, source_side } => {
                ensure(value == truth, || format!("instance {i}: exact {value} vs {truth}"))?;
                ensure(g.cut_weight_of(&source_side) == truth, || format!("instance {i}: bad cut side"))?;
                exact += 1;
                brute += small as usize;
            }
        }
    }
    Ok(format!(
        "600 instances: {exact} exact ({brute} vs brute force), {bounded} bounded, 0 errors"
    ))
}

fn local_relabel_valid() -> Outcome {
    let mut rng = StdRng::seed_from_u64(404);
    let mut net = FlowNetwork::new();
    let mut checks = 0;
    for gi in 0..100 {
        let n = rng.gen_range(2..=60);
        let p = rng.gen_range(0.05..0.5);
        let g = gnp(&mut rng, n, p, 5);
        let (s, t) = random_pair(&mut rng, n);
        for gamma in [0, 1, 2, n - 1] {
            net.prepare(&g, s, t, gamma, None);
            let bad = net.labeling_violations(&g);
            ensure(bad == 0, || format!("graph {gi} gamma {gamma}: {bad} violations"))?;
            checks += 1;
        }
    }
    Ok(format!("100 graphs, {checks} labelings, 0 violations"))
}

fn implicit_reset() -> Outcome {
    let mut rng = StdRng::seed_from_u64(505);
    for seq in 0..100 {
        let n = rng.gen_range(3..=40);
        let mut g = connected_gnp(&mut rng, n, 0.2, 6);
        let mut lazy = FlowNetwork::with_reset_mode(ResetMode::Implicit);
        let mut eager = FlowNetwork::with_reset_mode(ResetMode::Explicit);
        for prob in 0..20 {
            let (s, t) = random_pair(&mut rng, n);
            let bound = rng.gen_bool(0.5).then(|| rng.gen_range(1..12));
            let gamma = rng.gen_range(0..3);
            let a = lazy.max_flow_bounded(&g, s, t, bound, gamma);
            let b = eager.max_flow_bounded(&g, s, t, bound, gamma);
            ensure(a == b, || {
                format!("sequence {seq} problem {prob}: {a:?} vs {b:?}")
            })?;
            let (u, v) = random_pair(&mut rng, n);
            if g.has_edge(u, v) && rng.gen_bool(0.4) {
                g.delete_edge(u, v).unwrap();
            } else {
                g.insert_edge(u, v, rng.gen_range(1..4)).unwrap();
            }
        }
    }
    Ok("100 sequences x 20 problems, identical results".into())
}

fn cycle_regression() -> Outcome {
    let mut d = DynamicMinCut::new(cycle(1000));
    let mut seq = vec![d.current_lambda()];
    for _ in 0..100 {
        d.delete(0, 1).unwrap();
        seq.push(d.current_lambda());
        d.insert(0, 1, 1).unwrap();
        seq.push(d.current_lambda());
    }
    let alternates = seq.iter().enumerate().all(|(i, &l)| l == if i % 2 == 0 { 2 } else { 1 });
    ensure(alternates, || format!("lambda sequence broke: {:?}", &seq[..seq.len().min(12)]))?;
    let full = d.stats().full_recomputes;
    ensure(full <= 2, || format!("{full} full rebuilds"))?;
    let side = d.current_most_balanced().ok_or("no cut")?;
    let bal = balance(side.len(), 1000);
    ensure(bal == 500, || format!("most balanced smaller side {bal}"))?;
    Ok(format!(
        "201 lambdas alternate 2,1; full rebuilds {full} (limit 2); restores {}; balanced side 500",
        d.stats().cache_restores
    ))
}

fn cycle_cut_count() -> Outcome {
    let mut got = Vec::new();
    for n in [5, 8, 12] {
        let c = build_cactus_seeded(&cycle(n), 1);
        let k = c.enumerate_cuts().len();
        ensure(k == n * (n - 1) / 2, || format!("C{n}: {k} cuts"))?;
        got.push(format!("C{n}={k}"));
    }
    Ok(got.join(" "))
}

fn speedup() -> Outcome {
    let n = 100_000;
    let g = gen_gnm(n, 1_000_000, 3, 808).map_err(|e| e.to_string())?;
    let opts = |mode, timeout| RunOptions {
        mode,
        config: DynamicConfig::default(),
        timeout: Some(Duration::from_secs(timeout)),
    };
    let (init, mixed) = gen_random_workload(&g, 0.0005, 0.0005, 809).map_err(|e| e.to_string())?;
    let r = run_compare(&init, &mixed, &opts(Mode::Both, 15)).map_err(|e| e.to_string())?;
    let mixed_speedup = r.speedup().unwrap();
    let mixed_per = r.dynamic.as_ref().unwrap().total_micros / r.updates as f64;
    let (init, ins) = gen_random_workload(&g, 0.001, 0.0, 810).map_err(|e| e.to_string())?;
    let q = run_compare(&init, &ins, &opts(Mode::Both, 5)).map_err(|e| e.to_string())?;
    let ins_speedup = q.speedup().unwrap();
    let ins_per = q.dynamic.as_ref().unwrap().total_micros / q.updates as f64;
    let line = format!(
        "mixed {} updates: speedup {mixed_speedup:.0}x (bar 10x), {mixed_per:.1}us/update; \
         insert-only: speedup {ins_speedup:.0}x, {ins_per:.1}us/update",
        r.updates
    );
    ensure(r.updates == 1000 && q.updates == 1000, || format!("wrong workload sizes; {line}"))?;
    ensure(mixed_speedup >= 10.0, || line.clone())?;
    ensure(ins_per < mixed_per, || format!("insert-only not faster; {line}"))?;
    Ok(line)
}

fn worst_case() -> Outcome {
    let g = gen_gnm(10_000, 40_000, 3, 909).map_err(|e| e.to_string())?;
    let mut gen = DynamicMinCut::new(g.clone());
    let s = gen_worstcase_workload(&mut gen, 1000, 500, 910).map_err(|e| e.to_string())?;
    let r = run_compare(&g, &s, &RunOptions::default()).map_err(|e| e.to_string())?;
    let stats = &r.dynamic.as_ref().unwrap().stats;
    let fixed = r.fixed.as_ref().unwrap();
    ensure(!fixed.extrapolated, || "static replay was cut short".into())?;
    ensure(stats.insertions == 1000 && stats.separated_insertions == stats.insertions, || {
        format!("separated {} of {} insertions", stats.separated_insertions, stats.insertions)
    })?;
    Ok(format!(
        "{} updates ({} deletions), 0 mismatches over {} batches, separated {}/{}",
        r.updates,
        stats.deletions,
        fixed.batches_measured,
        stats.separated_insertions,
        stats.insertions
    ))
}

fn most_balanced() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1010);
    for gi in 0..50 {
        let n = rng.gen_range(3..=12);
        let p = rng.gen_range(0.1..0.6);
        let g = connected_gnp(&mut rng, n, p, if gi % 2 == 0 { 1 } else { 4 });
        let oracle = oracle_all_min_cuts(&g).unwrap();
        let best = oracle.cuts.iter().map(|c| balance(c.len(), n)).max().unwrap();
        let mut d = DynamicMinCut::new(g);
        let side = d.current_most_balanced().ok_or("no cut")?;
        ensure(balance(side.len(), n) == best, || {
            format!("graph {gi}: balance {} vs exhaustive {best}", balance(side.len(), n))
        })?;
        for op in 0..100 {
            if rng.gen_bool(0.55) || d.graph().num_edges() == 0 {
                let (u, v) = random_pair(&mut rng, n);
                d.insert(u, v, rng.gen_range(1..=3)).unwrap();
            } else {
                let edges: Vec<_> = d.graph().edges().collect();
                let (u, v, _) = edges[rng.gen_range(0..edges.len())];
                d.delete(u, v).unwrap();
            }
            if let Some(side) = d.current_most_balanced() {
                let w = d.graph().cut_weight_of(&side);
                ensure(w == d.current_lambda(), || format!("graph {gi} op {op}: cut {w} != lambda"))?;
            }
        }
    }
    Ok("50 graphs exact after init; 5000 post-update cuts weigh lambda".into())
}

fn check(id: usize, name: &str, f: fn() -> Outcome) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    let secs = start.elapsed().as_secs_f64();
    match &result {
        Ok(msg) => println!("PASS [{id}] {name}: {msg} ({secs:.1}s)"),
        Err(msg) => println!("FAIL [{id}] {name}: {msg} ({secs:.1}s)"),
    }
    result.is_ok()
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("dynamic lambda correctness", dynamic_lambda),
        ("flow engine", flow_engine),
        ("local relabel validity", local_relabel_valid),
        ("implicit reset equivalence", implicit_reset),
        ("cycle insertion regression", cycle_regression),
        ("cycle cut count", cycle_cut_count),
        ("qualitative speedup", speedup),
        ("worst-case workload", worst_case),
        ("most balanced consistency", most_balanced),
    ];
    let passed = criteria
        .iter()
        .enumerate()
        .map(|(i, &(name, f))| check(i + 1, name, f))
        .filter(|&ok| ok)
        .count();
    println!("{passed}/{} criteria passed", criteria.len());
    assert_eq!(passed, criteria.len());
}
