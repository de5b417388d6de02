//! Acceptance criteria. Runs as a plain binary (`harness = false`) so every
//! criterion prints its own PASS/FAIL line; exits non-zero if any fails.

use std::panic;
use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vcgraph::algorithms::{
    boruvka, diameter, euler, hashmin, list_ranking, luby, pagerank, simulation, sssp, sv,
    traversal, AlgoConfig,
};
use vcgraph::cost::{
    audit_run, superstep_cost, CostParams, SuperstepMetrics, VertexMaxima, DEFAULT_BPPA_C,
};
use vcgraph::engine::EngineConfig;
use vcgraph::graph::{generate, Family, Graph, GraphBuilder, GraphSpec, VertexId};
use vcgraph::harness::{self, Algorithm, GenTemplate};
use vcgraph::oracles;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn gen(spec: GraphSpec) -> Result<Graph, String> {
    ok(generate(&spec))
}

fn engine() -> EngineConfig {
    EngineConfig::default().with_workers(4)
}

fn log2(n: usize) -> f64 {
    (n as f64).log2()
}

fn ceil_log2(n: usize) -> usize {
    (usize::BITS - (n.max(1) - 1).leading_zeros()) as usize
}

fn euler_tour() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..20 {
        let n = 1usize << (7 + i % 7);
        let t = gen(GraphSpec::new(Family::RandomTree, n, 100 + i as u64))?;
        let root = rng.gen_range(0..n) as VertexId;
        let cfg = AlgoConfig {
            root: Some(root),
            ..Default::default()
        };
        let out = ok(euler::euler_tour(&t, &cfg, &engine()))?;
        ensure(out.supersteps == 2, || {
            format!("tree {i} (n={n}) took {} supersteps", out.supersteps)
        })?;
        let cycle = out.output.order_from(&t, root);
        let mut seen = vec![false; t.arc_count()];
        cycle.iter().for_each(|&a| seen[a] = true);
        ensure(
            cycle.len() == 2 * (n - 1) && seen.iter().all(|&s| s),
            || {
                format!(
                    "tree {i} (n={n}): cycle through the root covers {} of {} arcs",
                    cycle.len(),
                    2 * (n - 1)
                )
            },
        )?;
        let (_, bppa) = ok(audit_run(
            &out.trace,
            &t,
            &CostParams::default(),
            DEFAULT_BPPA_C,
        ))?;
        ensure(bppa.verdict, || {
            format!("tree {i} (n={n}) fails BPPA: {bppa:?}")
        })?;
    }
    let template = ok(GenTemplate::parse("random-tree:seed=4"))?;
    let sizes: Vec<usize> = (7..=13).map(|e| 1 << e).collect();
    let b = ok(harness::bench(
        Algorithm::EulerTour,
        &template,
        &sizes,
        false,
        false,
        None,
        &AlgoConfig::default(),
        &engine(),
        DEFAULT_BPPA_C,
    ))?;
    let x = b.ratio_fit.exponent;
    ensure(x.abs() <= 0.1, || {
        format!("work-ratio exponent {x:.3} outside +-0.1")
    })?;
    ensure(!b.observed.more_work && b.observed.bppa, || {
        format!("verdict {:?}", b.observed)
    })?;
    Ok(format!("20 trees with 2 supersteps and a full cycle, BPPA pass; ratio exponent {x:.3}; More Work? No | BPPA? Yes"))
}

/// 50 undirected random graphs of up to 4096 vertices with varying density.
fn cc_corpus() -> Result<Vec<Graph>, String> {
    (0..50)
        .map(|i| {
            let n = 64usize << (i % 7);
            let deg = 0.5 + 0.5 * (i % 5) as f64;
            let family = match i % 3 {
                0 => Family::Gnp {
                    p: deg / (n - 1) as f64,
                },
                1 => Family::RandomConnected {
                    p: deg / (n - 1) as f64,
                },
                _ => Family::BipartiteRandom {
                    left: n / 3,
                    p: deg / (n - 1) as f64,
                },
            };
            gen(GraphSpec::new(family, n, 500 + i as u64))
        })
        .collect()
}

fn hash_min() -> Check {
    for (i, g) in cc_corpus()?.iter().enumerate() {
        let out = ok(hashmin::cc_hashmin(g, &engine()))?;
        ensure(out.output == oracles::bfs_components(g).output, || {
            format!("graph {i}: partition differs from BFS")
        })?;
    }
    let mut steps = Vec::new();
    for n in [128, 512, 1024, 4096] {
        let p = gen(GraphSpec::new(Family::Path, n, 0))?;
        let out = ok(hashmin::cc_hashmin(&p, &engine()))?;
        ensure(out.supersteps.abs_diff(n) <= 2, || {
            format!("path n={n}: {} supersteps", out.supersteps)
        })?;
        if n == 1024 {
            let (_, bppa) = ok(audit_run(
                &out.trace,
                &p,
                &CostParams::default(),
                DEFAULT_BPPA_C,
            ))?;
            ensure(!bppa.supersteps.pass && out.supersteps > 88, || {
                format!("path 1024: property 4 {:?}", bppa.supersteps)
            })?;
        }
        steps.push(out.supersteps);
    }
    let template = ok(GenTemplate::parse("path"))?;
    let sizes: Vec<usize> = (7..=12).map(|e| 1 << e).collect();
    let b = ok(harness::bench(
        Algorithm::HashMin,
        &template,
        &sizes,
        false,
        false,
        None,
        &AlgoConfig::default(),
        &engine(),
        DEFAULT_BPPA_C,
    ))?;
    let x = b.ratio_fit.exponent;
    ensure(x >= 0.8, || {
        format!("path work-ratio exponent {x:.3} < 0.8")
    })?;
    ensure(b.observed.more_work && !b.observed.bppa, || {
        format!("verdict {:?}", b.observed)
    })?;
    Ok(format!("50/50 partitions match; path supersteps {steps:?}; property 4 fails at n=1024; ratio exponent {x:.3}; More Work? Yes | BPPA? No"))
}

fn star_high_center(n: usize) -> Result<Graph, String> {
    let mut b = GraphBuilder::new(n, false);
    for v in 0..n - 1 {
        b.edge(v as VertexId, (n - 1) as VertexId);
    }
    ok(b.build())
}

fn shiloach_vishkin() -> Check {
    for (i, g) in cc_corpus()?.iter().enumerate() {
        let out = ok(sv::cc_sv(g, &engine()))?;
        ensure(out.output == oracles::bfs_components(g).output, || {
            format!("graph {i}: partition differs from BFS")
        })?;
    }
    let mut worst: f64 = 0.0;
    for e in 4..=13 {
        let n = 1usize << e;
        let families = [
            Family::Path,
            Family::RandomTree,
            Family::Gnp {
                p: 2.0 / (n - 1) as f64,
            },
            Family::RandomConnected {
                p: 1.0 / (n - 1) as f64,
            },
        ];
        for f in families {
            let g = gen(GraphSpec::new(f, n, e as u64))?;
            let out = ok(sv::cc_sv(&g, &engine()))?;
            let bound = 6.0 * log2(n);
            ensure(out.supersteps as f64 <= bound, || {
                format!("{f:?} n={n}: {} supersteps > {bound}", out.supersteps)
            })?;
            worst = worst.max(out.supersteps as f64 / log2(n));
        }
    }
    let star = star_high_center(1024)?;
    let out = ok(sv::cc_sv(&star, &engine()))?;
    let (_, bppa) = ok(audit_run(
        &out.trace,
        &star,
        &CostParams::default(),
        DEFAULT_BPPA_C,
    ))?;
    let ratio = bppa.messages.observed;
    ensure(ratio > 8.0, || format!("star message ratio {ratio} <= 8"))?;
    Ok(format!("50/50 partitions match; max supersteps/log2 n = {worst:.2} (<= 6); star message ratio {ratio:.0} > 8"))
}

fn diameter_apsp() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut max_share: f64 = 0.0;
    for i in 0..50 {
        let n = rng.gen_range(8..=256);
        let deg = rng.gen_range(0.5..3.0);
        let g = gen(GraphSpec::new(
            Family::RandomConnected {
                p: deg / (n - 1) as f64,
            },
            n,
            900 + i,
        ))?;
        let cfg = AlgoConfig {
            apsp: true,
            ..Default::default()
        };
        let out = ok(diameter::diameter_apsp(&g, &cfg, &engine()))?;
        let oracle = ok(oracles::bfs_all_pairs(&g, true))?.output;
        ensure(out.supersteps - 1 == oracle.diameter as usize, || {
            format!(
                "graph {i}: {} supersteps, diameter {}",
                out.supersteps, oracle.diameter
            )
        })?;
        ensure(out.output == oracle, || {
            format!("graph {i}: distance matrix differs")
        })?;
        let relays = out.total_messages();
        let cap = (g.m() * g.n()) as u64;
        ensure(relays <= cap, || {
            format!("graph {i}: {relays} relays > m*n = {cap}")
        })?;
        max_share = max_share.max(relays as f64 / cap as f64);
    }
    Ok(format!(
        "50 graphs: supersteps-1 = diameter, matrices equal; max relays/(m*n) = {max_share:.3}"
    ))
}

fn pagerank_agreement() -> Check {
    let mut worst_rank: f64 = 0.0;
    let mut worst_sum: f64 = 0.0;
    for i in 0..20u64 {
        let n = 50 + 97 * i as usize;
        let spec = match i % 4 {
            0 => GraphSpec::new(Family::Gnp { p: 3.0 / n as f64 }, n, i).directed(),
            1 => GraphSpec::new(Family::RandomConnected { p: 2.0 / n as f64 }, n, i),
            2 => GraphSpec::new(Family::Star, n, i),
            _ => GraphSpec::new(Family::Gnp { p: 1.0 / n as f64 }, n, i).directed(),
        };
        let g = gen(spec)?;
        let cfg = AlgoConfig {
            iterations: 30,
            ..Default::default()
        };
        let out = ok(pagerank::pagerank(&g, &cfg, &engine()))?;
        let oracle = oracles::power_iteration(&g, cfg.alpha, 30, 0.0).output;
        for (a, b) in out.output.iter().zip(&oracle) {
            worst_rank = worst_rank.max((a - b).abs());
        }
        let sums = pagerank::rank_sums(&out.trace);
        ensure(sums.len() == out.supersteps, || {
            format!(
                "graph {i}: {} sums for {} supersteps",
                sums.len(),
                out.supersteps
            )
        })?;
        for s in sums {
            worst_sum = worst_sum.max((s - 1.0).abs());
        }
    }
    ensure(worst_rank <= 1e-9, || {
        format!("rank difference {worst_rank:e}")
    })?;
    ensure(worst_sum <= 1e-9, || {
        format!("rank-sum deviation {worst_sum:e}")
    })?;
    Ok(format!(
        "20 graphs, K=30: max |rank - oracle| = {worst_rank:.1e}, max |sum - 1| = {worst_sum:.1e}"
    ))
}

fn random_list(n: usize, rng: &mut ChaCha8Rng) -> (Vec<i64>, Vec<Option<VertexId>>) {
    let mut order: Vec<VertexId> = (0..n as VertexId).collect();
    order.shuffle(rng);
    let mut preds = vec![None; n];
    for w in order.windows(2) {
        preds[w[1] as usize] = Some(w[0]);
    }
    let vals = (0..n).map(|_| rng.gen_range(-100..=100)).collect();
    (vals, preds)
}

fn list_ranking_check() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut ratios = Vec::new();
    for e in 1..=13 {
        let n = 1usize << e;
        let (vals, preds) = random_list(n, &mut rng);
        let out = ok(list_ranking::list_ranking(&vals, &preds, &engine()))?;
        ensure(
            out.output == ok(oracles::prefix_sum(&vals, &preds))?.output,
            || format!("n={n}: sums differ"),
        )?;
        let bound = ceil_log2(n) + 2;
        ensure(out.supersteps <= bound, || {
            format!("n={n}: {} supersteps > {bound}", out.supersteps)
        })?;
        if e >= 7 {
            let r = out.total_messages() as f64 / (n as f64 * log2(n));
            ensure((0.3..=3.0).contains(&r), || {
                format!("n={n}: messages/(n log n) = {r:.3}")
            })?;
            ratios.push(format!("{r:.2}"));
        }
    }
    Ok(format!(
        "n = 2..2^13 match, supersteps <= ceil(log2 n)+2; messages/(n log2 n) over 2^7..2^13: [{}]",
        ratios.join(", ")
    ))
}

fn pre_post() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..50 {
        let n = rng.gen_range(2..=8192);
        let t = gen(GraphSpec::new(Family::RandomTree, n, 700 + i))?;
        let root = rng.gen_range(0..n) as VertexId;
        let cfg = AlgoConfig {
            root: Some(root),
            ..Default::default()
        };
        let out = ok(traversal::pre_post_order(&t, &cfg, &engine()))?.output;
        let dfs = ok(oracles::dfs_suite(&t, root))?.output;
        ensure(out.pre == dfs.pre && out.post == dfs.post, || {
            format!("tree {i} (n={n}, root {root}) differs")
        })?;
    }
    Ok("50 trees up to 8192 vertices match the DFS oracle exactly".into())
}

fn mcst() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut max_phases = 0;
    for i in 0..50 {
        let n = rng.gen_range(4..=2000);
        let p = rng.gen_range(1.0..4.0) / (n - 1) as f64;
        let g =
            gen(GraphSpec::new(Family::RandomConnected { p }, n, 800 + i)
                .weighted(1, 10_000_000, true))?;
        let (out, phases) = ok(boruvka::mcst_boruvka_phases(&g, &engine()))?;
        let oracle = oracles::kruskal(&g).output;
        ensure(out.output.total_weight == oracle.total_weight, || {
            format!(
                "graph {i}: weight {} vs {}",
                out.output.total_weight, oracle.total_weight
            )
        })?;
        ensure(phases.len() <= ceil_log2(n), || {
            format!("graph {i} (n={n}): {} phases", phases.len())
        })?;
        max_phases = max_phases.max(phases.len());
    }
    for i in 0..20 {
        let n = rng.gen_range(4..=500);
        let g = gen(
            GraphSpec::new(Family::RandomConnected { p: 3.0 / n as f64 }, n, 850 + i)
                .weighted(1, 3, false),
        )?;
        let out = ok(boruvka::mcst_boruvka(&g, &engine()))?;
        ensure(
            out.output.edges == oracles::kruskal(&g).output.edges,
            || format!("duplicate-weight graph {i}: edge sets differ"),
        )?;
    }
    Ok(format!("50 distinct-weight graphs match Kruskal, max {max_phases} phases (<= ceil log2 n); 20 duplicate-weight graphs have identical edge sets"))
}

fn luby_coloring() -> Check {
    let mut specs = Vec::new();
    for i in 0..12u64 {
        let n = 100 + 150 * i as usize;
        specs.push(GraphSpec::new(
            Family::Gnp {
                p: (2 + i % 6) as f64 * 2.0 / n as f64,
            },
            n,
            i,
        ));
    }
    specs.push(GraphSpec::new(Family::Complete, 40, 0));
    specs.push(GraphSpec::new(Family::Star, 300, 0));
    specs.push(GraphSpec::new(Family::RandomTree, 1000, 3));
    specs.push(GraphSpec::new(Family::Grid { rows: 20 }, 400, 0));
    specs.push(GraphSpec::new(
        Family::BipartiteRandom { left: 100, p: 0.05 },
        300,
        1,
    ));
    let mut colors_used = 0;
    for (i, spec) in specs.iter().enumerate() {
        let g = gen(spec.clone())?;
        let mut digests = Vec::new();
        for p in [1, 2, 4] {
            let e = EngineConfig::default().with_workers(p).with_seed(11);
            let out = ok(luby::coloring_luby_mis(&g, &e))?;
            let mono = g
                .edges()
                .filter(|&(u, v, _, _)| out.output[u as usize] == out.output[v as usize])
                .count();
            ensure(mono == 0, || {
                format!("graph {i}: {mono} monochromatic edges")
            })?;
            if let Some(err) = luby::check_phase_mis(&g, &out.output) {
                return Err(format!("graph {i}: {err}"));
            }
            colors_used = colors_used.max(out.output.iter().max().map_or(0, |c| c + 1));
            digests.push(
                ok(harness::execute(
                    Algorithm::LubyColoring,
                    &g,
                    None,
                    &AlgoConfig::default(),
                    &e,
                ))?
                .digest,
            );
        }
        ensure(digests.iter().all(|d| *d == digests[0]), || {
            format!("graph {i}: digests differ across p")
        })?;
    }
    Ok(format!("{} graphs: no monochromatic edge, every phase a maximal independent set, digests equal for p = 1, 2, 4 (max {colors_used} colors)", specs.len()))
}

fn graph_simulation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut not_simulated = 0;
    for i in 0..100u64 {
        let n = rng.gen_range(10..=200);
        let k = rng.gen_range(2..=3);
        let deg = rng.gen_range(0.5..3.0);
        let data = gen(
            GraphSpec::new(Family::Gnp { p: deg / n as f64 }, n, 2000 + i)
                .directed()
                .labeled(k),
        )?;
        let nq = rng.gen_range(1..=4);
        let query = gen(GraphSpec::new(Family::Gnp { p: 0.5 }, nq, 3000 + i)
            .directed()
            .labeled(k))?;
        let (out, snaps) = ok(simulation::graph_simulation_recorded(
            &data,
            &query,
            &EngineConfig::default().with_workers(4).recording(),
        ))?;
        let oracle = ok(oracles::simulation_fixpoint(&data, &query))?.output;
        ensure(out.output == oracle, || {
            format!("instance {i}: relation differs from the fixpoint")
        })?;
        not_simulated += usize::from(!oracle.simulated);
        for t in 1..snaps.len() {
            for v in 0..n {
                let (before, after) = (snaps[t - 1][v], snaps[t][v]);
                ensure(after & !before == 0, || {
                    format!("instance {i}: vertex {v} gained matches in superstep {t}")
                })?;
            }
        }
    }
    ensure(not_simulated >= 10, || {
        format!("only {not_simulated} not-simulated instances")
    })?;
    Ok(format!("100 instances match the fixpoint ({not_simulated} not simulated); match sets never grow after superstep 1"))
}

fn sssp_check() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..50 {
        let n = rng.gen_range(2..=1000);
        let p = rng.gen_range(0.5..4.0) / n as f64;
        let g = gen(GraphSpec::new(Family::Gnp { p }, n, 1100 + i)
            .directed()
            .weighted(0, 1000, false))?;
        let s = rng.gen_range(0..n) as VertexId;
        let out = ok(sssp::sssp(
            &g,
            &AlgoConfig {
                source: Some(s),
                ..Default::default()
            },
            &engine(),
        ))?;
        ensure(out.output == ok(oracles::dijkstra(&g, s))?.output, || {
            format!("graph {i}: distances differ")
        })?;
    }
    Ok("50 weighted digraphs match Dijkstra exactly".into())
}

fn cost_grid() -> Check {
    let mut cases = 0;
    for w in 0..=10u64 {
        for h in 0..=10u64 {
            for l in 0..=10u64 {
                for g in 0..=4u64 {
                    let cp = ok(CostParams::new(g as f64, l as f64, 1))?;
                    let ms = SuperstepMetrics {
                        superstep: 0,
                        work: vec![w],
                        sent: vec![h],
                        sent_wire: vec![h],
                        received: vec![0],
                        active_vertices: 0,
                        vertex_max: VertexMaxima::default(),
                        aggregates: Default::default(),
                    };
                    let expected = w.max(g * h).max(l) as f64;
                    let got = superstep_cost(&ms, &cp);
                    ensure(got == expected, || {
                        format!("w={w} h={h} L={l} g={g}: {got} != {expected}")
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!(
        "{cases} grid points reproduce max(w, g*h, L) exactly"
    ))
}

fn determinism() -> Check {
    let tree = gen(GraphSpec::new(Family::RandomTree, 600, 1))?;
    let sparse = gen(GraphSpec::new(Family::Gnp { p: 0.01 }, 400, 2))?;
    let connected = gen(GraphSpec::new(Family::RandomConnected { p: 0.01 }, 200, 3))?;
    let weighted =
        gen(GraphSpec::new(Family::RandomConnected { p: 0.01 }, 500, 4).weighted(1, 50, false))?;
    let digraph = gen(GraphSpec::new(Family::Gnp { p: 0.01 }, 500, 5)
        .directed()
        .weighted(0, 100, false))?;
    let path = gen(GraphSpec::new(Family::Path, 700, 0))?;
    let labeled = gen(GraphSpec::new(Family::Gnp { p: 0.02 }, 300, 6)
        .directed()
        .labeled(2))?;
    let query = gen(GraphSpec::new(Family::Gnp { p: 0.5 }, 3, 7)
        .directed()
        .labeled(2))?;
    let rooted = AlgoConfig {
        root: Some(5),
        source: Some(0),
        ..Default::default()
    };
    for alg in Algorithm::ALL {
        let (g, q) = match alg {
            Algorithm::Diameter => (&connected, None),
            Algorithm::PageRank | Algorithm::HashMin | Algorithm::Sv | Algorithm::LubyColoring => {
                (&sparse, None)
            }
            Algorithm::EulerTour | Algorithm::PrePost => (&tree, None),
            Algorithm::ListRanking => (&path, None),
            Algorithm::Mcst => (&weighted, None),
            Algorithm::Sssp => (&digraph, None),
            Algorithm::Simulation => (&labeled, Some(&query)),
        };
        let cfg = if alg == Algorithm::ListRanking {
            AlgoConfig::default()
        } else {
            rooted.clone()
        };
        let mut digests = Vec::new();
        for p in [1, 2, 4, 8] {
            for _ in 0..2 {
                let e = EngineConfig::default().with_workers(p).with_seed(99);
                digests.push(ok(harness::execute(alg, g, q, &cfg, &e))?.digest);
            }
        }
        ensure(digests.iter().all(|d| *d == digests[0]), || {
            format!("{alg}: digests differ across runs")
        })?;
    }
    Ok(format!(
        "all {} algorithms: identical digests for p = 1, 2, 4, 8, twice each",
        Algorithm::ALL.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("euler tour", euler_tour),
        ("hash-min", hash_min),
        ("s-v", shiloach_vishkin),
        ("diameter/apsp", diameter_apsp),
        ("pagerank", pagerank_agreement),
        ("list ranking", list_ranking_check),
        ("pre/post-order", pre_post),
        ("mcst", mcst),
        ("luby coloring", luby_coloring),
        ("graph simulation", graph_simulation),
        ("sssp", sssp_check),
        ("cost model", cost_grid),
        ("determinism", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let results: Vec<(Check, f64)> = thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                s.spawn(move || {
                    let start = Instant::now();
                    let r = panic::catch_unwind(f).unwrap_or_else(|e| {
                        let msg = e
                            .downcast_ref::<String>()
                            .cloned()
                            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
                        Err(format!("panicked: {}", msg.unwrap_or_default()))
                    });
                    (r, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread"))
            .collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (r, secs))) in criteria.iter().zip(&results).enumerate() {
        let (tag, detail) = match r {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {:<17} {tag}  ({secs:.1}s) {detail}",
            i + 1,
            name
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
