//! Acceptance suite: twelve criteria, one PASS/FAIL line each. Runs without
//! the libtest harness so the lines are always printed.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use gddn::bounds::{bound_report, classify_small_gddn, KnownValues, SmallGddn};
use gddn::classgen::{build_spider, generate, Family, GenSpec};
use gddn::decomposition::{QuasiKind, SpecialGraph, SpiderKind};
use gddn::graph::{Graph, TwinKind};
use gddn::oracle::Oracle;
use gddn::reductions::{blowup_gf, deletion_delta, doubled_sequence, twin_interval};
use gddn::sequence::footprint;
use gddn::solvers::{
    mdns_join, mdns_quasi_spider, mdns_spider, mdns_union, solve_p4tidy, solve_tree, JoinCase, Method,
    SolveResult,
};
use gddn::VertexSeq;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{
    add_twin, naive_double_domination, naive_gddn, naive_grundy, naive_mdns, random_connected_graph,
    random_graph, shifted,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn check_witness(g: &Graph, seq: &[usize], value: usize) -> Result<(), String> {
    let cert = footprint(g, seq).map_err(|e| e.to_string())?;
    ensure!(cert.is_dns, "witness {seq:?} is not a DNS of {g:?}");
    ensure!(seq.len() == value, "witness {seq:?} has length {} but value is {value}", seq.len());
    ensure!(g.has_isolated() || cert.is_dds, "witness {seq:?} does not double-dominate {g:?}");
    Ok(())
}

fn oracle_self_consistency() -> Outcome {
    let oracle = Oracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let n = rng.gen_range(1..=7);
        let p = *[0.2, 0.4, 0.6, 0.8].choose(&mut rng).unwrap();
        let g = random_graph(&mut rng, n, p);
        let mdns = oracle.mdns(&g).unwrap();
        ensure!(mdns.value == naive_mdns(&g), "mdns differs on {g:?}");
        check_witness(&g, &mdns.witness, mdns.value)?;
        ensure!(
            oracle.grundy_domination(&g).unwrap().value == naive_grundy(&g),
            "grundy domination differs on {g:?}"
        );
        if !g.has_isolated() {
            ensure!(Some(oracle.gddn(&g).unwrap().value) == naive_gddn(&g), "gddn differs on {g:?}");
            ensure!(
                Some(oracle.double_domination(&g).unwrap().value) == naive_double_domination(&g),
                "double domination differs on {g:?}"
            );
        }
    }
    Ok("500 graphs, n <= 7".into())
}

fn complete_graphs() -> Outcome {
    let oracle = Oracle::default();
    for n in 2..=10 {
        let g = Graph::complete(n);
        ensure!(oracle.gddn(&g).unwrap().value == 2, "GDDN(K_{n}) != 2");
        ensure!(classify_small_gddn(&g) == Ok(SmallGddn::Two), "K_{n} not classified Two");
    }
    Ok("K_2..K_10".into())
}

fn trees() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut largest = 0;
    for i in 0..100 {
        let size = if i == 0 { 200 } else { rng.gen_range(1..=200) };
        let g = generate(GenSpec { family: Family::Tree, size, seed: i }).unwrap().graph;
        let r = solve_tree(&g).unwrap();
        ensure!(r.value == size, "solve_tree gave {} on a tree of {size}", r.value);
        check_witness(&g, &r.sequence, r.value)?;
        largest = largest.max(size);
    }
    let oracle = Oracle::default();
    for i in 0..100 {
        let size = 1 + i as usize % 14;
        let g = generate(GenSpec { family: Family::Tree, size, seed: 1000 + i }).unwrap().graph;
        ensure!(oracle.mdns(&g).unwrap().value == size, "oracle disagrees on a tree of {size}");
        ensure!(solve_tree(&g).unwrap().value == size, "solver disagrees on a tree of {size}");
    }
    Ok(format!("100 trees up to n = {largest}, 100 oracle checks n <= 14"))
}

fn bipartite_values() -> Outcome {
    let oracle = Oracle::default();
    for n in 2..=7 {
        for m in 1..n {
            let v = oracle.gddn(&Graph::complete_bipartite(n, m)).unwrap().value;
            ensure!(v == n + 1, "GDDN(K_{n},{m}) = {v}, expected {}", n + 1);
        }
    }
    Ok("1 <= m < n <= 7".into())
}

fn bound_sandwiches() -> Outcome {
    let oracle = Oracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let n = rng.gen_range(2..=12);
        let p = *[0.1, 0.3, 0.5, 0.7].choose(&mut rng).unwrap();
        let g = random_connected_graph(&mut rng, n, p);
        let r = bound_report(&g, KnownValues::default(), &oracle).unwrap();
        ensure!(r.sandwich_holds(), "sandwich fails on {g:?}: {r:?}");
        ensure!(r.grundy_chain_holds(), "grundy chain fails on {g:?}: {r:?}");
    }
    for n in 2..=8 {
        let r = bound_report(&Graph::complete(n), KnownValues::default(), &oracle).unwrap();
        let sides = [r.spherical_lower, r.gamma_x2, r.gddn, r.upper, r.grundy_upper];
        ensure!(sides.iter().all(|&x| x == 2), "K_{n} not tight: {r:?}");
    }
    Ok("300 connected graphs n <= 12, tight at K_2..K_8".into())
}

/// `k` disjoint cliques plus a hub adjacent to one vertex of each; the hub is
/// the last vertex.
fn cliques_with_hub(rng: &mut ChaCha8Rng) -> Graph {
    let k = rng.gen_range(2..=3);
    let mut edges = Vec::new();
    let mut next = 0;
    let mut anchors = Vec::new();
    for _ in 0..k {
        let size = rng.gen_range(2..=3);
        for a in next..next + size {
            edges.extend((a + 1..next + size).map(|b| (a, b)));
        }
        anchors.push(next + rng.gen_range(0..size));
        next += size;
    }
    edges.extend(anchors.iter().map(|&a| (a, next)));
    Graph::from_edges(next + 1, edges).unwrap()
}

fn isolated_free_without(g: &Graph, v: usize) -> bool {
    (0..g.n()).all(|w| w == v || g.neighbors(w).iter().any(|&x| x != v))
}

fn deletion_sandwich() -> Outcome {
    let oracle = Oracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut checked = 0;
    while checked < 300 {
        let n = rng.gen_range(3..=12);
        let p = rng.gen_range(0.05..0.6);
        let g = random_connected_graph(&mut rng, n, p);
        let v = rng.gen_range(0..n);
        if !isolated_free_without(&g, v) {
            continue;
        }
        let d = deletion_delta(&g, v, &oracle).unwrap();
        ensure!(d <= 3, "delta {d} on {g:?} at {v}");
        checked += 1;
    }
    let mut seen = BTreeSet::new();
    let mut attempts = 0;
    while seen.len() < 4 && attempts < 20_000 {
        attempts += 1;
        let (g, v) = if attempts % 2 == 0 {
            let g = cliques_with_hub(&mut rng);
            let hub = g.n() - 1;
            (g, hub)
        } else {
            let n = rng.gen_range(3..=10);
            let p = rng.gen_range(0.05..0.6);
            let g = random_connected_graph(&mut rng, n, p);
            let v = rng.gen_range(0..n);
            (g, v)
        };
        if isolated_free_without(&g, v) {
            seen.insert(deletion_delta(&g, v, &oracle).unwrap());
        }
    }
    ensure!(seen == BTreeSet::from([0, 1, 2, 3]), "search found only deltas {seen:?}");
    Ok(format!("300 instances n <= 12, deltas 0..3 found in {attempts} attempts"))
}

fn blowup_identity() -> Outcome {
    let oracle = Oracle::with_limit(21);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let n = rng.gen_range(1..=7);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        let f: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
        let (gf, classes) = blowup_gf(&g, &f).unwrap();
        let grundy = oracle.grundy_domination(&g).unwrap();
        let gddn = oracle.gddn(&gf).unwrap().value;
        ensure!(gddn == 2 * grundy.value, "GDDN(G_f) = {gddn}, 2 gamma_gr = {} on {g:?}, f = {f:?}", 2 * grundy.value);
        let doubled = doubled_sequence(&classes, &grundy.witness).unwrap();
        ensure!(footprint(&gf, &doubled).unwrap().is_dds, "doubled Grundy sequence is not a DDS");
    }
    Ok("100 pairs n <= 7, f(v) in {1, 2}".into())
}

fn union_join() -> Outcome {
    let oracle = Oracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut cases = BTreeSet::new();
    let as_result = |seq: Vec<usize>| SolveResult::new(VertexSeq::new(seq).unwrap(), Method::Oracle);
    for _ in 0..200 {
        let (ng, nh) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let p = *[0.1, 0.3, 0.5, 0.8].choose(&mut rng).unwrap();
        let g = random_graph(&mut rng, ng, p);
        let p = *[0.1, 0.3, 0.5, 0.8].choose(&mut rng).unwrap();
        let h = random_graph(&mut rng, nh, p);
        let a = as_result(oracle.mdns(&g).unwrap().witness.into_vec());
        let b = as_result(shifted(&oracle.mdns(&h).unwrap().witness, ng));

        let union = g.disjoint_union(&h);
        let u = mdns_union(&a, &b).unwrap();
        let exact = oracle.mdns(&union).unwrap().value;
        ensure!(u.value == exact, "union value {} != {exact}", u.value);
        check_witness(&union, &u.sequence, u.value)?;

        let join = g.join(&h);
        let left: Vec<usize> = (0..ng).collect();
        let right: Vec<usize> = (ng..ng + nh).collect();
        let (j, case) = mdns_join(&join, &left, &a, &right, &b).unwrap();
        let exact = oracle.mdns(&join).unwrap().value;
        ensure!(j.value == exact, "join value {} != {exact} ({case:?}) for {g:?} and {h:?}", j.value);
        check_witness(&join, &j.sequence, j.value)?;
        cases.insert(format!("{case:?}"));
    }
    let all = [JoinCase::Left, JoinCase::LeftAppend, JoinCase::Right, JoinCase::RightAppend];
    ensure!(cases.len() == all.len(), "join cases exercised: {cases:?}");
    Ok("200 pairs n <= 7 per side, all four join cases".into())
}

fn spider_formulas() -> Outcome {
    let oracle = Oracle::default();
    let heads = [
        ("empty", Graph::empty(0)),
        ("K1", Graph::empty(1)),
        ("coK2", Graph::empty(2)),
        ("K2", Graph::complete(2)),
        ("P4", Graph::path(4)),
    ];
    let mut count = 0;
    for (kind, rs) in [(SpiderKind::Thin, 2..=5), (SpiderKind::Thick, 3..=5)] {
        for r in rs {
            for quasi in QuasiKind::ALL {
                for (name, head) in &heads {
                    let (g, p) = build_spider(kind, r, quasi, head).unwrap();
                    let head_result = if head.n() == 0 {
                        SolveResult::empty(Method::Oracle)
                    } else {
                        let w = oracle.mdns(head).unwrap().witness;
                        SolveResult::new(VertexSeq::new(shifted(&w, 2 * r)).unwrap(), Method::Oracle)
                    };
                    let s = if quasi == QuasiKind::None {
                        mdns_spider(&p, &head_result)
                    } else {
                        mdns_quasi_spider(&p, &head_result, head.has_isolated())
                    }
                    .unwrap();
                    let exact = oracle.mdns(&g).unwrap().value;
                    let label = format!("{kind:?} r={r} {quasi:?} head={name}");
                    ensure!(s.value == exact, "{label}: formula {} != oracle {exact}", s.value);
                    check_witness(&g, &s.sequence, s.value).map_err(|e| format!("{label}: {e}"))?;
                    let solved = solve_p4tidy(&g).map_err(|e| format!("{label}: not recognized {e:?}"))?;
                    ensure!(solved.value == exact, "{label}: end-to-end {} != {exact}", solved.value);
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} spider and quasi-spider configurations"))
}

fn p4tidy_end_to_end() -> Outcome {
    let oracle = Oracle::default();
    for i in 0..200u64 {
        let size = 1 + i as usize % 14;
        let g = generate(GenSpec { family: Family::P4tidy, size, seed: i }).unwrap().graph;
        let r = solve_p4tidy(&g).map_err(|e| format!("seed {i}: not recognized {e:?}"))?;
        let exact = oracle.mdns(&g).unwrap().value;
        ensure!(r.value == exact, "seed {i}: {} != oracle {exact} on {g:?}", r.value);
        check_witness(&g, &r.sequence, r.value)?;
    }
    for (shape, value) in [(SpecialGraph::P5, 5), (SpecialGraph::House, 4), (SpecialGraph::C5, 4)] {
        let g = shape.graph();
        let r = solve_p4tidy(&g).unwrap();
        ensure!(r.value == value && oracle.mdns(&g).unwrap().value == value, "{shape:?} value {}", r.value);
        check_witness(&g, &r.sequence, r.value)?;
    }
    Ok("200 generated graphs n <= 14, P5/house/C5".into())
}

fn twin_intervals() -> Outcome {
    let oracle = Oracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut true_pairs, mut false_pairs) = (0, 0);
    for _ in 0..200 {
        let n0 = rng.gen_range(2..=10);
        let p = rng.gen_range(0.2..0.7);
        let mut g = random_graph(&mut rng, n0, p);
        for _ in 0..rng.gen_range(1..=2) {
            let v = rng.gen_range(0..g.n());
            g = add_twin(&g, v, rng.gen_bool(0.5));
        }
        let value = oracle.mdns(&g).unwrap().value;
        for (v, v2, kind) in g.find_twins() {
            let (without, _) = g.remove_vertex(v2).unwrap();
            let below = oracle.mdns(&without).unwrap().value;
            let interval = twin_interval(&g, v, v2, kind, below).unwrap();
            ensure!(interval.contains(value), "{kind:?} twins {v},{v2}: {value} outside {interval:?} on {g:?}");
            match kind {
                TwinKind::True => true_pairs += 1,
                TwinKind::False => false_pairs += 1,
            }
        }
    }
    ensure!(true_pairs > 0 && false_pairs > 0, "pairs: {true_pairs} true, {false_pairs} false");
    Ok(format!("200 graphs n <= 12, {true_pairs} true and {false_pairs} false pairs"))
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gddn")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn cli_round_trip() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for family in Family::ALL {
        let path = dir.path().join(format!("{family}.txt"));
        let sidecar = dir.path().join(format!("{family}.json"));
        let (path_s, sidecar_s) = (path.to_str().unwrap(), sidecar.to_str().unwrap());
        let (code, edges, err) = cli(&["gen", "--family", family.name(), "--size", "10", "--seed", "4", "--sidecar", sidecar_s]);
        ensure!(code == 0, "gen {family}: exit {code}: {err}");
        std::fs::write(&path, edges).unwrap();
        let (code, out, err) = cli(&["solve", path_s, "--format", "json"]);
        ensure!(code == 0, "solve {family}: exit {code}: {err}");
        let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        let seq: Vec<String> = v["certificate"]["sequence"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        let (code, out, err) = cli(&["verify", path_s, "--sequence", &seq.join(","), "--format", "json"]);
        ensure!(code == 0, "verify {family}: exit {code}: {err}");
        let cert: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        ensure!(cert["is_dns"] == true, "verify {family}: not a DNS");
    }
    for family in ["cograph", "p4tidy"] {
        let (code, out, err) = cli(&["crosscheck", "--family", family, "--count", "100", "--size", "12", "--seed", "1"]);
        ensure!(code == 0, "crosscheck {family}: exit {code}: {err}{out}");
    }
    Ok("gen/solve/verify for 7 families, crosscheck cograph and p4tidy x100".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("oracle self-consistency", oracle_self_consistency),
        ("complete graphs", complete_graphs),
        ("trees", trees),
        ("bipartite values", bipartite_values),
        ("bound sandwiches", bound_sandwiches),
        ("deletion sandwich", deletion_sandwich),
        ("blow-up identity", blowup_identity),
        ("union/join", union_join),
        ("spider formulas", spider_formulas),
        ("P4-tidy end to end", p4tidy_end_to_end),
        ("twin intervals", twin_intervals),
        ("CLI round trip", cli_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
