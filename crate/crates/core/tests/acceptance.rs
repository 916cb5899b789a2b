//! Acceptance suite. Runs each criterion once and prints one line per
//! criterion; exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use flowgame::fixtures;
use flowgame::game::{
    core_membership_in, is_convex_bruteforce, shapley_over_orders, verify_pmas_in, Allocation,
    CoreCheck, GameTable,
};
use flowgame::io::report::verdict_json;
use flowgame::io::{gen_convex, gen_random, serialize, GenParams, RandomParams};
use flowgame::recognition::{
    gamma_fast, pmas_construct, recognize, shapley_fast, structural_diagnostics,
    verify_certificate, CheckKind, Outcome, Verdict, WitnessKind,
};
use flowgame::structure::{count_paths_through, reduce, PathCount};
use flowgame::{Coalition, FlowNetwork, Rational, StPath};

use common::{forward_dags, is_dummy, path_mask};

type Outcomes = Result<String, String>;

struct Instance {
    network: FlowNetwork,
    verdict: Verdict,
    table: GameTable,
}

fn criterion(failures: &mut usize, id: u32, name: &str, run: impl FnOnce() -> Outcomes) {
    let start = Instant::now();
    let result = run();
    let secs = start.elapsed().as_secs_f64();
    match result {
        Ok(detail) => println!("PASS  {id}. {name}: {detail} [{secs:.1}s]"),
        Err(detail) => {
            *failures += 1;
            println!("FAIL  {id}. {name}: {detail} [{secs:.1}s]");
        }
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Re-validates whatever recognize produced.
fn evidence_checks(n: &FlowNetwork, v: &Verdict) -> Result<(), String> {
    if let Some(cert) = v.certificate() {
        verify_certificate(n, cert).map_err(|e| format!("certificate: {e}\n{}", serialize(n)))?;
    }
    if let Some(w) = v.witness() {
        w.validate(n)
            .map_err(|e| format!("witness: {e}\n{}", serialize(n)))?;
    }
    Ok(())
}

/// Recognizer against brute force on the reduced network. With `all`
/// unset, instances whose source no longer reaches the sink are skipped.
fn agreement(networks: &[FlowNetwork], all: bool, convex: &mut Vec<Instance>) -> Outcomes {
    let (mut compared, mut connected, mut agree_convex) = (0usize, 0usize, 0usize);
    for n in networks {
        let reduced = reduce(n).network;
        if reduced.arc_count() > 0 {
            connected += 1;
        } else if !all {
            continue;
        }
        compared += 1;
        let v = recognize(n);
        let oracle = is_convex_bruteforce(&reduced).map_err(|e| e.to_string())?;
        if v.is_convex() != oracle.is_none() {
            return Err(format!(
                "disagreement: recognize convex={}, oracle convex={}\n{}",
                v.is_convex(),
                oracle.is_none(),
                serialize(n)
            ));
        }
        evidence_checks(n, &v)?;
        if v.is_convex() {
            agree_convex += 1;
            if n.arc_count() <= 10 {
                let table = GameTable::new(n).map_err(|e| e.to_string())?;
                convex.push(Instance {
                    network: n.clone(),
                    verdict: v,
                    table,
                });
            }
        }
    }
    Ok(format!(
        "{compared} instances ({connected} with an s-t path), {agree_convex} convex, 0 disagreements"
    ))
}

fn fixture_verdicts() -> Outcomes {
    let expect = [
        ("n1", None),
        ("n2", None),
        ("n3", Some(WitnessKind::CapacityDeficit)),
        ("n4", Some(WitnessKind::SharedBottleneck)),
        ("n5", Some(WitnessKind::Cycle)),
        ("n6", None),
    ];
    for (name, n) in fixtures::all() {
        let Some(&(_, want)) = expect.iter().find(|(k, _)| *k == name) else {
            continue;
        };
        let v = recognize(&n);
        let got = v.witness().map(|w| w.kind());
        ensure(got == want, || {
            format!("{name}: expected {want:?}, got {got:?}")
        })?;
        evidence_checks(&n, &v)?;
    }
    // A per-bottleneck sum on the six-arc fixture would count the path with
    // two bottlenecks twice: 2 + 2 + 3 = 7 > 5.
    let n6 = fixtures::n6();
    let cert = recognize(&n6)
        .certificate()
        .cloned()
        .ok_or("n6 not convex")?;
    ensure(cert.paths().len() == 2, || {
        "n6 certificate not deduplicated".into()
    })?;
    Ok("N1 N2 N6 convex; N3 deficit, N4 shared bottleneck, N5 cycle; witnesses re-validate".into())
}

fn closed_form(pool: &[Instance]) -> Outcomes {
    let mut coalitions = 0usize;
    for inst in pool {
        let cert = inst.verdict.certificate().expect("pool is convex");
        for mask in 0..=inst.table.grand_mask() {
            let fast = gamma_fast(cert, &Coalition::from_mask(mask)).map_err(|e| e.to_string())?;
            ensure(&fast == inst.table.value(mask), || {
                format!(
                    "mask {mask:#b}: fast {fast}, max flow {}\n{}",
                    inst.table.value(mask),
                    serialize(&inst.network)
                )
            })?;
            coalitions += 1;
        }
    }
    Ok(format!(
        "{} instances, {coalitions} coalitions exact",
        pool.len()
    ))
}

fn dividend_support(pool: &[Instance]) -> Outcomes {
    for inst in pool {
        let cert = inst.verdict.certificate().expect("pool is convex");
        let dividends = inst.table.dividends();
        for mask in 1..=inst.table.grand_mask() {
            let expected = cert
                .paths()
                .iter()
                .find(|p| path_mask(p) == mask)
                .map_or_else(Rational::zero, |p| p.capacity().value().clone());
            ensure(dividends.get_mask(mask) == &expected, || {
                format!("mask {mask:#b}\n{}", serialize(&inst.network))
            })?;
        }
    }
    Ok(format!(
        "{} instances, support = certificate paths",
        pool.len()
    ))
}

fn marginal_from_table(table: &GameTable, order: &[usize]) -> Allocation {
    let mut mask = 0u64;
    let mut x = Allocation::new();
    for &p in order {
        let next = mask | 1 << p;
        x.set(p, table.value(next) - table.value(mask));
        mask = next;
    }
    x
}

fn solution_concepts(pool: &[Instance]) -> Outcomes {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut shapley, mut orders, mut schemes) = (0usize, 0usize, 0usize);
    for inst in pool.iter().filter(|i| i.network.arc_count() <= 8) {
        let cert = inst.verdict.certificate().expect("pool is convex");
        let fast = shapley_fast(cert);
        let brute = shapley_over_orders(&inst.table);
        ensure(fast == brute, || {
            format!("shapley\n{}", serialize(&inst.network))
        })?;
        shapley += 1;

        let scheme = pmas_construct(cert).map_err(|e| e.to_string())?;
        let failure = verify_pmas_in(&inst.table, &scheme).map_err(|e| e.to_string())?;
        ensure(failure.is_none(), || {
            format!("pmas {failure:?}\n{}", serialize(&inst.network))
        })?;
        schemes += 1;
    }
    for inst in pool {
        let n = inst.network.arc_count();
        let mut all: Vec<Vec<usize>> = Vec::new();
        if n <= 5 {
            permutations(&mut (0..n).collect(), 0, &mut all);
        } else {
            for _ in 0..60 {
                let mut o: Vec<usize> = (0..n).collect();
                o.shuffle(&mut rng);
                all.push(o);
            }
        }
        for order in all {
            let x = marginal_from_table(&inst.table, &order);
            let check = core_membership_in(&inst.table, &x).map_err(|e| e.to_string())?;
            ensure(check == CoreCheck::InCore, || {
                format!("order {order:?}: {check:?}\n{}", serialize(&inst.network))
            })?;
            orders += 1;
        }
    }
    Ok(format!(
        "Shapley exact on {shapley}, PMAS valid on {schemes}, {orders} marginal vectors in core"
    ))
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Vertices where `p` and `q` first diverge and last merge, with the
/// segments in between.
fn segment_bound(n: &FlowNetwork, p: &StPath, q: &StPath) -> Result<(), String> {
    let (pa, qa) = (p.arcs(), q.arcs());
    let prefix = pa.iter().zip(qa).take_while(|(a, b)| a == b).count();
    let suffix = pa
        .iter()
        .rev()
        .zip(qa.iter().rev())
        .take_while(|(a, b)| a == b)
        .count();
    let p_mid = &pa[prefix..pa.len() - suffix];
    let q_mid = &qa[prefix..qa.len() - suffix];
    let seg_cap = |arcs: &[usize]| arcs.iter().map(|&a| n.capacity(a)).min().cloned();

    // The middle segments share only their endpoints.
    let inner = |arcs: &[usize]| -> Vec<usize> {
        arcs.iter()
            .take(arcs.len().saturating_sub(1))
            .map(|&a| n.arc(a).head)
            .collect()
    };
    let (pi, qi) = (inner(p_mid), inner(q_mid));
    ensure(pi.iter().all(|v| !qi.contains(v)), || {
        format!(
            "segments of {:?} and {:?} meet internally",
            p.labels(n),
            q.labels(n)
        )
    })?;

    let lhs = seg_cap(p_mid).unwrap_or_default() + seg_cap(q_mid).unwrap_or_default();
    let bound = [seg_cap(&pa[..prefix]), seg_cap(&pa[pa.len() - suffix..])]
        .into_iter()
        .flatten()
        .min();
    if let Some(bound) = bound {
        ensure(lhs <= bound, || {
            format!(
                "{:?} / {:?}: {lhs} > {bound}\n{}",
                p.labels(n),
                q.labels(n),
                serialize(n)
            )
        })?;
    }
    Ok(())
}

fn necessity(pool: &[Instance], extra: &[FlowNetwork]) -> Outcomes {
    let mut checked = 0usize;
    let mut pairs = 0usize;
    let networks = pool.iter().map(|i| &i.network).chain(extra);
    for n in networks {
        let v = recognize(n);
        let cert = v
            .certificate()
            .ok_or("necessity pool holds a non-convex network")?;
        let report = structural_diagnostics(n);
        for kind in [
            CheckKind::ArcEssentiality,
            CheckKind::DegreeCondition,
            CheckKind::BottleneckExclusivity,
            CheckKind::BottleneckDisjointCover,
        ] {
            ensure(report.get(kind) == &Outcome::Pass, || {
                format!("{kind:?}: {:?}\n{}", report.get(kind), serialize(n))
            })?;
        }
        // Exclusivity once more straight from the path counts, on the arcs
        // that are not dummies.
        let kept: Vec<usize> = (0..n.arc_count())
            .filter(|a| !v.removed_dummies.contains(a))
            .collect();
        let counts = count_paths_through(&n.restrict_to(&kept)).map_err(|e| e.to_string())?;
        for (k, &a) in kept.iter().enumerate() {
            if cert.bottlenecks().contains(a) {
                ensure(counts[k] == PathCount::One, || {
                    format!("bottleneck {} not unique", n.label(a))
                })?;
            }
        }
        // Pairwise bottleneck-disjoint cover by the certificate paths.
        for (i, p) in cert.paths().iter().enumerate() {
            for q in &cert.paths()[i + 1..] {
                ensure(
                    !p.arcs()
                        .iter()
                        .any(|&a| cert.bottlenecks().contains(a) && q.contains(a)),
                    || "certificate paths share a bottleneck".into(),
                )?;
                segment_bound(n, p, q)?;
                pairs += 1;
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} convex instances, {pairs} path pairs"))
}

fn scaling_params(arcs: usize) -> GenParams {
    // About 1.9 arcs and 0.9 vertices per path.
    GenParams {
        paths: (arcs * 10 / 19).max(2),
        depth: 10,
        cap_min: 1,
        cap_max: 50,
    }
}

fn median_time(n: &FlowNetwork, reps: usize) -> Duration {
    let mut times: Vec<Duration> = (0..reps)
        .map(|_| {
            let start = Instant::now();
            let v = recognize(n);
            let elapsed = start.elapsed();
            assert!(v.is_convex());
            elapsed
        })
        .collect();
    times.sort();
    times[reps / 2]
}

fn scaling() -> Outcomes {
    let mut points = Vec::new();
    let mut detail = Vec::new();
    for (target, reps) in [(100usize, 21usize), (1_000, 9), (10_000, 3)] {
        let n = gen_convex(17, &scaling_params(target));
        let t = median_time(&n, reps);
        detail.push(format!(
            "E={} V={} {:.2}ms",
            n.arc_count(),
            n.vertex_count(),
            t.as_secs_f64() * 1e3
        ));
        points.push((n.arc_count() as f64, t.as_secs_f64(), n.vertex_count()));
    }
    let (e_big, t_big, _) = points[2];
    ensure(e_big >= 9_000.0 && t_big < 10.0, || {
        format!("largest instance E={e_big} took {t_big:.2}s")
    })?;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 3.0, ys.iter().sum::<f64>() / 3.0);
    let slope = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    detail.push(format!(
        "log-log slope {slope:.2} (bound 2, accepted [0.67, 6])"
    ));
    ensure((2.0 / 3.0..=6.0).contains(&slope), || detail.join("; "))?;
    Ok(detail.join("; "))
}

fn reduction() -> Outcomes {
    let params = RandomParams {
        max_arcs: 6,
        ..RandomParams::default()
    };
    let mut removed_total = 0usize;
    for seed in 0..200u64 {
        let n = gen_random(10_000 + seed, &params);
        let table = GameTable::new(&n).map_err(|e| e.to_string())?;
        let r = reduce(&n);
        for &a in &r.removed {
            ensure(is_dummy(&table, a), || {
                format!("seed {seed}: removed arc {} is not a dummy", n.label(a))
            })?;
        }
        let v = recognize(&n);
        for &a in &v.removed_dummies {
            ensure(is_dummy(&table, a), || {
                format!(
                    "seed {seed}: recognizer dummy {} is not a dummy",
                    n.label(a)
                )
            })?;
        }
        removed_total += r.removed.len();
        let pre = recognize(&r.network);
        let strip = |mut doc: serde_json::Value| {
            doc.as_object_mut()
                .expect("object")
                .remove("removed_dummies");
            doc
        };
        ensure(
            strip(verdict_json(&n, &v, None)) == strip(verdict_json(&r.network, &pre, None)),
            || {
                format!(
                    "seed {seed}: verdict changes under pre-reduction\n{}",
                    serialize(&n)
                )
            },
        )?;
    }
    Ok(format!(
        "200 instances, {removed_total} removed arcs all dummies, verdicts stable"
    ))
}

fn main() {
    let mut failures = 0;
    let mut pool: Vec<Instance> = Vec::new();

    let dags = forward_dags(5, &[1, 2, 3]);
    criterion(
        &mut failures,
        1,
        "oracle agreement, exhaustive DAGs",
        || agreement(&dags, false, &mut pool),
    );

    let random: Vec<FlowNetwork> = (0..1000u64)
        .map(|seed| gen_random(seed, &RandomParams::default()))
        .collect();
    criterion(
        &mut failures,
        2,
        "oracle agreement, random networks",
        || agreement(&random, true, &mut pool),
    );

    criterion(&mut failures, 3, "fixture verdicts", fixture_verdicts);

    let small = GenParams {
        paths: 3,
        depth: 2,
        cap_min: 1,
        cap_max: 4,
    };
    let generated: Vec<FlowNetwork> = (0..300u64)
        .map(|seed| gen_convex(seed, &small))
        .filter(|n| n.arc_count() <= 10)
        .collect();
    for (_, n) in fixtures::all() {
        let v = recognize(&n);
        if v.is_convex() {
            let table = GameTable::new(&n).expect("fixture is small");
            pool.push(Instance {
                network: n,
                verdict: v,
                table,
            });
        }
    }
    for n in &generated {
        let table = GameTable::new(n).expect("at most ten arcs");
        pool.push(Instance {
            network: n.clone(),
            verdict: recognize(n),
            table,
        });
    }

    criterion(&mut failures, 4, "closed form equals max flow", || {
        closed_form(&pool)
    });
    criterion(&mut failures, 5, "dividend support", || {
        dividend_support(&pool)
    });
    criterion(&mut failures, 6, "solution concepts", || {
        solution_concepts(&pool)
    });
    let larger: Vec<FlowNetwork> = (0..50u64)
        .map(|seed| gen_convex(seed, &GenParams::default()))
        .collect();
    criterion(&mut failures, 7, "necessity properties", || {
        necessity(&pool, &larger)
    });
    criterion(&mut failures, 8, "scaling", scaling);
    criterion(&mut failures, 9, "reduction", reduction);

    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
