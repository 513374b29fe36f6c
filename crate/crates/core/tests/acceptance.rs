//! Acceptance suite: one line per criterion, non-zero exit on any
//! unexpected failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use domenum::bench::{measure, Problem};
use domenum::cdom::enumerate_mcds;
use domenum::extensions::{
    classify_mds_extension, domination_stream, enumerate_mds, enumerate_mtds, is_blue_pair, red_part_holds, DominationOracle,
    NeighborhoodMode,
};
use domenum::generate::{complete_bipartite_2n, generate_chordal_bipartite, vertex_names, GeneratorConfig};
use domenum::model::{sperner_minimize, Hypergraph};
use domenum::oracles::{self, Family, OracleCaps};
use domenum::reductions::{
    build_mis_reduction, build_transversal_reduction, verify_bijection, verify_mis_children, verify_separator_structure,
    MisInstance,
};
use domenum::separators::{
    check_complete_bipartite_separator, close_components, close_neighbor_violation, conformality, minimal_separators,
    Conformality,
};
use domenum::{Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(id: &'static str, pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        id,
        pass,
        detail: detail.into(),
    }
}

/// Criteria whose failure has been analysed and is expected. Each entry names
/// the exact failure signature the run must reproduce.
const EXPECTED_FAILURES: &[&str] = &["4-cases", "8-open"];

struct Corpus {
    exhaustive: Vec<Graph>,
    generated: Vec<Graph>,
}

fn mds_family(g: &Graph) -> Family {
    enumerate_mds(g).unwrap().collect::<Result<_, _>>().unwrap()
}

fn mtds_family(g: &Graph) -> Family {
    enumerate_mtds(g).unwrap().collect::<Result<_, _>>().unwrap()
}

fn mcds_family(g: &Graph) -> Family {
    enumerate_mcds(g).unwrap().map(|t| t.set).collect()
}

fn criterion_1(c: &Corpus, caps: &OracleCaps) -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    for g in c.exhaustive.iter().chain(&c.generated) {
        if mds_family(g) != oracles::brute_mds(g, caps).unwrap() {
            mismatches += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        "1",
        mismatches == 0 && secs <= 600.0,
        format!(
            "MDS vs brute on {} exhaustive + {} generated graphs, {mismatches} mismatches, {secs:.1}s",
            c.exhaustive.len(),
            c.generated.len()
        ),
    )
}

fn criterion_2(c: &Corpus, caps: &OracleCaps) -> Outcome {
    let mut mismatches = 0;
    let mut tested = 0;
    for g in c.exhaustive.iter().chain(&c.generated) {
        if g.isolated_vertices().next().is_some() {
            continue;
        }
        tested += 1;
        if mtds_family(g) != oracles::brute_mtds(g, caps).unwrap() {
            mismatches += 1;
        }
    }
    outcome("2", mismatches == 0, format!("TDS vs brute on {tested} isolate-free graphs, {mismatches} mismatches"))
}

fn criterion_3(c: &Corpus, caps: &OracleCaps) -> Outcome {
    let mut mismatches = 0;
    let mut identity_failures = 0;
    let mut tested = 0;
    for g in c.exhaustive.iter().chain(&c.generated) {
        if g.len() > 13 || !g.is_connected() {
            continue;
        }
        tested += 1;
        let brute = oracles::brute_mcds(g, caps).unwrap();
        if mcds_family(g) != brute {
            mismatches += 1;
        }
        let seps = oracles::brute_separators(g, true, caps).unwrap();
        if seps.is_empty() {
            // Complete graphs have no separator; their answer is the universal singletons.
            continue;
        }
        let h = Hypergraph::new(g.names().to_vec(), seps);
        if oracles::brute_transversals(&h, caps).unwrap() != brute {
            identity_failures += 1;
        }
    }
    outcome(
        "3",
        mismatches == 0 && identity_failures == 0,
        format!("CDS vs brute on {tested} connected graphs, {mismatches} mismatches, {identity_failures} Tr(S(G)) identity failures"),
    )
}

struct ExtensionAudit {
    nodes: usize,
    mismatches: usize,
    red_part: usize,
    unclassified: usize,
    /// Unclassified extensions that are not blue pairs.
    unexplained: usize,
}

fn audit_extensions(c: &Corpus) -> ExtensionAudit {
    let mut a = ExtensionAudit {
        nodes: 0,
        mismatches: 0,
        red_part: 0,
        unclassified: 0,
        unexplained: 0,
    };
    for g in &c.generated {
        for mode in [NeighborhoodMode::Closed, NeighborhoodMode::Open] {
            if mode == NeighborhoodMode::Open && g.isolated_vertices().next().is_some() {
                continue;
            }
            let mut oracle = DominationOracle::recording(g, mode);
            let stream = domination_stream(g, mode, &mut oracle).unwrap();
            for s in stream {
                s.unwrap();
            }
            for node in oracle.take_harvest() {
                a.nodes += 1;
                let support = node.delta.support(g.len());
                let brute: BTreeSet<VertexSet> = oracles::minimal_transversals_over(&node.delta.edges, &support, 40)
                    .unwrap()
                    .into_iter()
                    .collect();
                let fast: BTreeSet<VertexSet> = node.extensions.iter().cloned().collect();
                if fast != brute || fast.len() != node.extensions.len() {
                    a.mismatches += 1;
                }
                if mode == NeighborhoodMode::Closed {
                    for z in &node.extensions {
                        if classify_mds_extension(g, &node.instance, z).is_none() {
                            a.unclassified += 1;
                            if !is_blue_pair(g, &node.instance, &node.delta, z) {
                                a.unexplained += 1;
                            }
                        }
                        if !red_part_holds(&node.instance, z) {
                            a.red_part += 1;
                        }
                    }
                }
            }
        }
    }
    a
}

fn criterion_4(c: &Corpus) -> Vec<Outcome> {
    let a = audit_extensions(c);
    vec![
        outcome(
            "4-oracle",
            a.nodes >= 500 && a.mismatches == 0 && a.red_part == 0,
            format!(
                "{} harvested nodes, {} oracle mismatches, {} red-part violations",
                a.nodes, a.mismatches, a.red_part
            ),
        ),
        outcome(
            "4-cases",
            a.unclassified == 0,
            format!(
                "{} closed extensions outside the four cases, {} of them not blue pairs",
                a.unclassified, a.unexplained
            ),
        ),
    ]
}

fn criterion_5() -> Outcome {
    let sizes = [10usize, 20, 40, 80];
    let limit = Some(500);
    let mut lines = Vec::new();
    let mut pool_ok = true;
    let mut flagged = Vec::new();
    for problem in [Problem::Mds, Problem::Tds] {
        for family in ["k2n", "generated"] {
            let mut previous: Option<f64> = None;
            for &n in &sizes {
                let g = if family == "k2n" {
                    complete_bipartite_2n(n - 2)
                } else {
                    generate_chordal_bipartite(&GeneratorConfig::new(n, 0.2, 5).connected(true)).unwrap()
                };
                let row = measure(family, &g, problem, limit).unwrap();
                pool_ok &= row.max_pool <= row.pool_bound;
                let ratio = row.delay_over_n4();
                if let Some(p) = previous {
                    if ratio > 10.0 * p {
                        flagged.push(format!("{family}/{}/n={n}", problem.label()));
                    }
                }
                previous = Some(ratio);
                lines.push(format!(
                    "{family}/{}/n={n}: solutions={} max_pool={}/{} max_delay={} delay/n^4={ratio:.2e}",
                    problem.label(),
                    row.solutions,
                    row.max_pool,
                    row.pool_bound,
                    row.max_delay
                ));
            }
        }
    }
    for l in &lines {
        println!("    {l}");
    }
    outcome(
        "5",
        pool_ok && flagged.is_empty(),
        format!("pool bound held: {pool_ok}; delay/n^4 growth flags: {flagged:?}"),
    )
}

fn same_conformality(fast: Conformality, brute: oracles::Conformality) -> bool {
    match (fast, brute) {
        (Conformality::Exactly(a), oracles::Conformality::Exactly(b)) => a == b,
        (Conformality::AboveMax, oracles::Conformality::AboveMax) => true,
        _ => false,
    }
}

fn criterion_6(caps: &OracleCaps) -> Outcome {
    let graphs = common::generated_corpus(100, 4, 12, 606);
    let mut above_five = 0;
    let mut disagreements = 0;
    let mut worst = 0;
    for g in &graphs {
        let h = minimal_separators(g).to_hypergraph(g);
        let brute = oracles::brute_conformality(&h, 6, caps).unwrap();
        match brute {
            oracles::Conformality::Exactly(c) if c <= 5 => worst = worst.max(c),
            _ => above_five += 1,
        }
        if !same_conformality(conformality(&h, 6), brute) {
            disagreements += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(607);
    let mut random_disagreements = 0;
    for _ in 0..200 {
        let h = common::random_hypergraph(&mut rng, 10, 9);
        let brute = oracles::brute_conformality(&h, 6, caps).unwrap();
        if !same_conformality(conformality(&h, 6), brute) {
            random_disagreements += 1;
        }
    }
    outcome(
        "6",
        above_five == 0 && disagreements == 0 && random_disagreements == 0,
        format!(
            "100 graphs: max conformality {worst}, {above_five} above 5, {disagreements} fast/brute disagreements; 200 random hypergraphs: {random_disagreements} disagreements"
        ),
    )
}

fn criterion_7(c: &Corpus, caps: &OracleCaps) -> Outcome {
    let extra = common::generated_corpus(100, 4, 12, 606);
    let mut checked = 0;
    let mut not_complete = 0;
    let mut few_close = 0;
    let mut close_neighbor = 0;
    let mut routine_mismatch = 0;
    for g in c.exhaustive.iter().chain(&c.generated).chain(&extra) {
        let seps = minimal_separators(g);
        if g.is_connected() {
            for s in &seps.separators {
                checked += 1;
                if !check_complete_bipartite_separator(g, s) {
                    not_complete += 1;
                }
                if close_components(g, s).map_or(true, |c| c.len() < 2) {
                    few_close += 1;
                }
                if close_neighbor_violation(g, s).is_some() {
                    close_neighbor += 1;
                }
            }
        }
        if g.len() <= 10 {
            let fast: Family = seps.separators.into_iter().collect();
            if fast != oracles::brute_separators(g, true, caps).unwrap() {
                routine_mismatch += 1;
            }
        }
    }
    outcome(
        "7",
        not_complete + few_close + close_neighbor + routine_mismatch == 0,
        format!(
            "{checked} separators: {not_complete} not complete bipartite, {few_close} with <2 close components, {close_neighbor} close-neighbor violations; {routine_mismatch} S(G) mismatches vs brute"
        ),
    )
}

fn random_mis_instance(rng: &mut ChaCha8Rng) -> MisInstance {
    let n = rng.gen_range(1..=6);
    let k = rng.gen_range(1..=3usize.min(n));
    let class_of: Vec<usize> = (0..n).map(|v| if v < k { v } else { rng.gen_range(0..k) }).collect();
    let p = rng.gen_range(0.1..0.7);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if class_of[a] != class_of[b] && rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let names: Vec<String> = vertex_names(n).into_iter().map(|s| s.replacen('v', "g", 1)).collect();
    let g = Graph::from_index_edges(names, &edges);
    let classes = (0..k)
        .map(|c| VertexSet::from_indices(n, (0..n).filter(|&v| class_of[v] == c)))
        .collect();
    MisInstance::new(g, classes).unwrap()
}

fn criterion_8() -> Vec<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let instances: Vec<MisInstance> = (0..50).map(|_| random_mis_instance(&mut rng)).collect();
    let mut results = Vec::new();
    for (id, mode) in [("8-closed", NeighborhoodMode::Closed), ("8-open", NeighborhoodMode::Open)] {
        let mut holds = 0;
        let mut t_star_ok = 0;
        let mut only_alpha = 0;
        let mut with_is = 0;
        for inst in &instances {
            let red = build_mis_reduction(inst).unwrap();
            let rep = verify_mis_children(inst, &red, mode).unwrap();
            holds += usize::from(rep.holds());
            t_star_ok += usize::from(rep.t_star_minimal);
            only_alpha += usize::from(rep.children == vec![red.t_star.with(red.alpha)]);
            with_is += usize::from(!rep.multicolored_independent_sets.is_empty());
        }
        results.push(outcome(
            id,
            holds == instances.len(),
            format!(
                "{:?} neighborhoods: {holds}/50 match (#IS + 1 children), T* minimal in {t_star_ok}/50, only the alpha child in {only_alpha}/50, {with_is}/50 instances have a multicolored IS",
                mode
            ),
        ));
    }
    results
}

/// The analysed signature of the open-neighborhood failure: `T*` is still a
/// minimal transversal, but `N(β) = {α}` forces `α` into every child, so each
/// instance has exactly one child and the check fails exactly on instances
/// that have a multicolored independent set.
fn open_failure_matches_analysis() -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    (0..50).all(|_| {
        let inst = random_mis_instance(&mut rng);
        let red = build_mis_reduction(&inst).unwrap();
        let rep = verify_mis_children(&inst, &red, NeighborhoodMode::Open).unwrap();
        rep.t_star_minimal
            && rep.children == vec![red.t_star.with(red.alpha)]
            && rep.holds() == rep.multicolored_independent_sets.is_empty()
    })
}

fn criterion_9(caps: &OracleCaps) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut sep_fail = 0;
    let mut bij_fail = 0;
    let mut built = 0;
    while built < 50 {
        let raw = common::random_hypergraph(&mut rng, 7, 5);
        let h = sperner_minimize(&raw);
        if h.edges().iter().any(|e| e.is_empty()) {
            continue;
        }
        // Restrict to vertices that lie in some edge.
        let named: Vec<Vec<String>> = h.edges().iter().map(|e| h.names_of(e)).collect();
        let h = Hypergraph::from_named_edges(named);
        let red = build_transversal_reduction(&h).unwrap();
        built += 1;
        if !verify_separator_structure(&red, caps).unwrap().holds() {
            sep_fail += 1;
        }
        if !verify_bijection(&red, caps).unwrap().holds() {
            bij_fail += 1;
        }
    }
    outcome(
        "9",
        sep_fail == 0 && bij_fail == 0,
        format!("50 Sperner hypergraphs: {sep_fail} separator-structure failures, {bij_fail} bijection failures"),
    )
}

fn render(g: &Graph, sets: &[VertexSet]) -> String {
    sets.iter().map(|s| g.names_of(s).join(" ") + "\n").collect()
}

fn hand_outputs(g: &Graph) -> [Vec<VertexSet>; 3] {
    [
        enumerate_mds(g).unwrap().map(Result::unwrap).collect(),
        enumerate_mtds(g).unwrap().map(Result::unwrap).collect(),
        enumerate_mcds(g).unwrap().map(|t| t.set).collect(),
    ]
}

fn criterion_10() -> Outcome {
    let p4 = Graph::from_edges([("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
    let c4 = Graph::from_edges([("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1")]).unwrap();
    let fam = |g: &Graph, sets: &[&[&str]]| -> Family { sets.iter().map(|s| g.set_of(s.iter()).unwrap()).collect() };
    let expected = [
        (
            &p4,
            [
                fam(&p4, &[&["b", "c"], &["a", "c"], &["b", "d"], &["a", "d"]]),
                fam(&p4, &[&["b", "c"]]),
                fam(&p4, &[&["b", "c"]]),
            ],
        ),
        (
            &c4,
            [
                fam(&c4, &[&["v1", "v2"], &["v2", "v3"], &["v3", "v4"], &["v4", "v1"], &["v1", "v3"], &["v2", "v4"]]),
                // Only adjacent pairs are total dominating in C4.
                fam(&c4, &[&["v1", "v2"], &["v2", "v3"], &["v3", "v4"], &["v4", "v1"]]),
                fam(&c4, &[&["v1", "v2"], &["v2", "v3"], &["v3", "v4"], &["v4", "v1"]]),
            ],
        ),
    ];
    let mut failures = Vec::new();
    for (g, want) in &expected {
        let first = hand_outputs(g);
        let second = hand_outputs(g);
        for (k, label) in ["mds", "tds", "cds"].iter().enumerate() {
            let got: Family = first[k].iter().cloned().collect();
            if got != want[k] || got.len() != first[k].len() {
                failures.push(format!("{label} on {} vertices", g.len()));
            }
            if render(g, &first[k]) != render(g, &second[k]) {
                failures.push(format!("{label} output not byte-stable"));
            }
        }
    }
    outcome("10", failures.is_empty(), format!("P4 and C4 for mds/tds/cds; failures: {failures:?}"))
}

fn main() -> ExitCode {
    let caps = OracleCaps::default();
    let start = Instant::now();
    let corpus = Corpus {
        exhaustive: common::exhaustive_corpus(7),
        generated: common::generated_corpus(200, 4, 14, 101),
    };
    println!(
        "acceptance: {} exhaustive graphs (n <= 7), {} generated graphs (n <= 14), corpus built in {:.1}s",
        corpus.exhaustive.len(),
        corpus.generated.len(),
        start.elapsed().as_secs_f64()
    );

    let mut outcomes = Vec::new();
    let mut run = |f: &mut dyn FnMut() -> Vec<Outcome>| {
        let t = Instant::now();
        for o in f() {
            println!(
                "criterion {:<8} {}  {} ({:.1}s)",
                o.id,
                if o.pass { "PASS" } else { "FAIL" },
                o.detail,
                t.elapsed().as_secs_f64()
            );
            outcomes.push(o);
        }
    };
    run(&mut || vec![criterion_1(&corpus, &caps)]);
    run(&mut || vec![criterion_2(&corpus, &caps)]);
    run(&mut || vec![criterion_3(&corpus, &caps)]);
    run(&mut || criterion_4(&corpus));
    run(&mut || vec![criterion_5()]);
    run(&mut || vec![criterion_6(&caps)]);
    run(&mut || vec![criterion_7(&corpus, &caps)]);
    run(&mut criterion_8);
    run(&mut || vec![criterion_9(&caps)]);
    run(&mut || vec![criterion_10()]);

    let mut unexpected = 0;
    for o in &outcomes {
        let expected_failure = EXPECTED_FAILURES.contains(&o.id);
        if !o.pass && !expected_failure {
            unexpected += 1;
        }
        if o.pass && expected_failure {
            println!("note: criterion {} was expected to fail but passed", o.id);
        }
    }
    if EXPECTED_FAILURES.contains(&"4-cases") {
        let a = audit_extensions(&corpus);
        let analysed = a.unclassified > 0 && a.unexplained == 0;
        println!(
            "known failure 4-cases: every unclassified extension is a blue pair {{r, b}}: {}",
            if analysed { "yes" } else { "NO" }
        );
        if !analysed {
            unexpected += 1;
        }
    }
    if EXPECTED_FAILURES.contains(&"8-open") {
        let analysed = open_failure_matches_analysis();
        println!(
            "known failure 8-open: forced alpha child reproduced on every instance: {}",
            if analysed { "yes" } else { "NO" }
        );
        if !analysed {
            unexpected += 1;
        }
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!(
        "acceptance: {passed}/{} criteria passed, {unexpected} unexpected failures, {:.1}s total",
        outcomes.len(),
        start.elapsed().as_secs_f64()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
