//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.
//!
//! Set `COMMGRAPH_EXTRA_CATALOG` to a catalog file to also check its fully
//! covered orders against the reference non-cograph counts (e.g. 128: 1539).

use std::process::ExitCode;
use std::time::{Duration, Instant};

use commgraph::catalog::{scan_nonchordal, scan_noncograph, Catalog, TABLE1_IDS, TABLE2_COUNTS};
use commgraph::classes::{
    classify_graph, find_induced, is_chordal, is_cograph, shortest_hole, GraphClass, Pattern, SearchPattern, Witness,
};
use commgraph::classify::{
    classify_group, is_generalized_dihedral_odd, verify_frobenius, ClassifyError, ClassifyOptions,
};
use commgraph::constructions::{direct_product, sl3_p4_witness, su3_p4_witness};
use commgraph::graph::{commuting_graph_on, commuting_graph_with, strong_product};
use commgraph::suite::{default_corpus, A6_HOLE, A7_HOLE, A8_HOLE, STRONG_PRODUCT_PAIRS};
use commgraph::{ElementSet, Execution, FamilySpec, Group, UndirectedGraph, VertexScope};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE1_LIMIT: Duration = Duration::from_secs(60);
const TABLE2_LIMIT: Duration = Duration::from_secs(600);
const EQUIVALENCE_LIMIT: Duration = Duration::from_secs(60);
const SWEEP_LIMIT: Duration = Duration::from_secs(300);
const PSL2_LIMIT: Duration = Duration::from_secs(300);
const MATRIX_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_LIMIT: Duration = Duration::from_secs(300);
const MINIMAL_LIMIT: Duration = Duration::from_secs(60);
const STRONG_PRODUCT_LIMIT: Duration = Duration::from_secs(60);
const SUZUKI_LIMIT: Duration = Duration::from_secs(1800);
const SUZUKI_MEMORY_KB: u64 = 2 * 1024 * 1024;

/// Reference non-cograph counts for the shipped orders.
const TABLE2_SHIPPED: [(usize, usize); 8] = [
    (24, 1),
    (32, 7),
    (36, 1),
    (48, 10),
    (54, 2),
    (60, 2),
    (64, 115),
    (72, 11),
];

/// Minimum corpus size for the split/threshold/2K2-free equivalence.
const MIN_CORPUS: usize = 100;

/// Shortest hole in the non-central commuting graph of A6, cross-checked
/// with an independent chordless-cycle enumeration (lengths 8 and 10 occur
/// below 12, nothing shorter than 8).
const A6_SHORTEST_HOLE: usize = 8;

const RANDOM_GRAPHS_PER_N: usize = 10_000;
const RANDOM_SEED: u64 = 0x5EED_2024;

struct Outcome {
    passed: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: false,
        detail: detail.into(),
    }
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: ok,
        detail: detail.into(),
    }
}

fn build(spec: &str) -> Group {
    spec.parse::<FamilySpec>().unwrap().build().unwrap()
}

fn noncentral(g: &Group) -> UndirectedGraph {
    commuting_graph_with(g, VertexScope::NonCentral, Execution::default())
}

fn table1() -> Outcome {
    let scan = scan_noncograph(&Catalog::shipped(), 36, Execution::default()).unwrap();
    let ids = scan.ids();
    check(ids == TABLE1_IDS, format!("{} IDs {:?}", ids.len(), ids))
}

fn table2() -> Outcome {
    let catalog = Catalog::shipped();
    let scan = scan_noncograph(&catalog, 72, Execution::default()).unwrap();
    let mut bad = Vec::new();
    let mut shown = Vec::new();
    for (order, expected) in TABLE2_SHIPPED {
        let got = if catalog.is_complete(order) {
            scan.count(order).unwrap_or(0)
        } else {
            usize::MAX
        };
        shown.push(format!("{order}:{got}"));
        if got != expected {
            bad.push(format!("order {order}: got {got}, expected {expected}"));
        }
    }
    if let Ok(path) = std::env::var("COMMGRAPH_EXTRA_CATALOG") {
        match Catalog::load(std::path::Path::new(&path)) {
            Ok(extra) => {
                let max = extra.entries().iter().map(|e| e.order).max().unwrap_or(0);
                let scan = scan_noncograph(&extra, max, Execution::default()).unwrap();
                for (order, expected) in TABLE2_COUNTS {
                    if extra.is_complete(order) {
                        let got = scan.count(order).unwrap_or(0);
                        shown.push(format!("{order}:{got}"));
                        if got != expected {
                            bad.push(format!("order {order}: got {got}, expected {expected}"));
                        }
                    }
                }
            }
            Err(e) => bad.push(format!("{path}: {e}")),
        }
    }
    if bad.is_empty() {
        pass(shown.join(" "))
    } else {
        fail(bad.join("; "))
    }
}

fn equivalence() -> Outcome {
    let corpus = default_corpus(&Catalog::shipped()).unwrap();
    let options = ClassifyOptions::default();
    let mut violations = Vec::new();
    for c in &corpus {
        match classify_group(&c.group, &c.name, &options) {
            Ok(r) => {
                let expected = c.group.is_abelian() || is_generalized_dihedral_odd(&c.group);
                let got = [GraphClass::Split, GraphClass::Threshold, GraphClass::TwoK2Free].map(|k| r.member(k));
                if got.iter().any(|&m| m != expected) {
                    violations.push(format!("{}: {got:?} vs {expected}", c.name));
                }
            }
            Err(ClassifyError::Inconsistent(e)) => violations.push(e),
            Err(e) => violations.push(format!("{}: {e}", c.name)),
        }
    }
    let ok = corpus.len() >= MIN_CORPUS && violations.is_empty();
    check(
        ok,
        format!(
            "{} groups, {} violations {:?}",
            corpus.len(),
            violations.len(),
            violations
        ),
    )
}

fn induced_listing(g: &Group, pattern: Pattern, cycles: &[&str]) -> bool {
    let els: Vec<usize> = cycles.iter().map(|c| g.element_from_cycles(c).unwrap()).collect();
    let set = ElementSet::new(g.order(), els.clone()).unwrap();
    let sub = commuting_graph_on(g, &set, Execution::Sequential);
    let local = els.iter().map(|&e| sub.vertex_of(e).unwrap()).collect();
    Witness::new(pattern, local).verify(&sub)
}

fn sweeps() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=6 {
        let gamma = noncentral(&build(&format!("sym:{n}")));
        if is_cograph(&gamma).member != (n <= 3) {
            bad.push(format!("S{n} cograph"));
        }
        if is_chordal(&gamma).member != (n <= 4) {
            bad.push(format!("S{n} chordal"));
        }
    }
    let mut hole_len = 0;
    let mut shortest = None;
    for n in 4..=6 {
        let gamma = noncentral(&build(&format!("alt:{n}")));
        let chordal = is_chordal(&gamma);
        if is_cograph(&gamma).member != (n <= 5) || chordal.member != (n <= 5) {
            bad.push(format!("A{n}"));
        }
        if n == 6 {
            match &chordal.witness {
                Some(w) if w.vertices.len() >= 4 && w.verify(&gamma) => hole_len = w.vertices.len(),
                _ => bad.push("A6 hole witness".into()),
            }
            shortest = shortest_hole(&gamma).map(|h| h.len());
            if shortest != Some(A6_SHORTEST_HOLE) {
                bad.push(format!("A6 shortest hole {shortest:?}"));
            }
            if !induced_listing(&build("alt:6"), Pattern::Hole(12), &A6_HOLE) {
                bad.push("listed A6 C12".into());
            }
        }
    }
    if !induced_listing(&build("alt:7"), Pattern::Hole(6), &A7_HOLE) {
        bad.push("listed A7 C6".into());
    }
    if !induced_listing(&build("alt:8"), Pattern::C4, &A8_HOLE) {
        bad.push("listed A8 C4".into());
    }
    check(
        bad.is_empty(),
        format!("A6 witness hole length {hole_len}, shortest hole {shortest:?} {bad:?}"),
    )
}

fn psl2() -> Outcome {
    let mut got = Vec::new();
    for q in [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        if is_cograph(&noncentral(&build(&format!("psl2:{q}")))).member {
            got.push(q);
        }
    }
    check(got == [2, 3, 4, 5, 8, 16], format!("cograph for q in {got:?}"))
}

fn matrices() -> Outcome {
    let mut bad = Vec::new();
    for q in [3, 5, 7, 8, 9] {
        if !sl3_p4_witness(q).is_ok_and(|w| w.report.verified()) {
            bad.push(format!("SL3 q={q}"));
        }
    }
    for q in [2, 4] {
        if sl3_p4_witness(q).is_ok() {
            bad.push(format!("SL3 q={q} accepted"));
        }
    }
    for q in [3, 4, 5] {
        if !su3_p4_witness(q).is_ok_and(|w| w.report.verified()) {
            bad.push(format!("SU3 q={q}"));
        }
    }
    if su3_p4_witness(2).is_ok() {
        bad.push("SU3 q=2 accepted".into());
    }
    check(bad.is_empty(), format!("{bad:?}"))
}

// --- oracle equivalence ------------------------------------------------------

fn erdos_renyi(n: usize, p: f64, rng: &mut ChaCha8Rng) -> UndirectedGraph {
    let mut g = UndirectedGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn random_threshold(n: usize, rng: &mut ChaCha8Rng) -> UndirectedGraph {
    let mut g = UndirectedGraph::empty(n);
    for v in 1..n {
        if rng.gen_bool(0.5) {
            for u in 0..v {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn random_split(n: usize, rng: &mut ChaCha8Rng) -> UndirectedGraph {
    let k = rng.gen_range(0..=n);
    let mut g = UndirectedGraph::empty(n);
    let p = rng.gen_range(0.1..0.9);
    for u in 0..n {
        for v in u + 1..n {
            if v < k || (u < k && rng.gen_bool(p)) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn random_cograph(n: usize, rng: &mut ChaCha8Rng) -> UndirectedGraph {
    fn rec(g: &mut UndirectedGraph, vs: &[usize], rng: &mut ChaCha8Rng) {
        if vs.len() < 2 {
            return;
        }
        let cut = rng.gen_range(1..vs.len());
        let (a, b) = vs.split_at(cut);
        if rng.gen_bool(0.5) {
            for &x in a {
                for &y in b {
                    g.add_edge(x, y);
                }
            }
        }
        rec(g, a, rng);
        rec(g, b, rng);
    }
    let mut g = UndirectedGraph::empty(n);
    let mut vs: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        vs.swap(i, rng.gen_range(0..=i));
    }
    rec(&mut g, &vs, rng);
    g
}

/// Each new vertex is joined to a clique, so it is simplicial when added.
fn random_chordal(n: usize, rng: &mut ChaCha8Rng) -> UndirectedGraph {
    let mut g = UndirectedGraph::empty(n);
    for v in 1..n {
        let mut clique = vec![rng.gen_range(0..v)];
        for u in 0..v {
            if !clique.contains(&u) && clique.iter().all(|&c| g.has_edge(c, u)) && rng.gen_bool(0.6) {
                clique.push(u);
            }
        }
        if rng.gen_bool(0.9) {
            for c in clique {
                g.add_edge(c, v);
            }
        }
    }
    g
}

fn flip_edges(mut g: UndirectedGraph, flips: usize, rng: &mut ChaCha8Rng) -> UndirectedGraph {
    let n = g.vertex_count();
    if n < 2 {
        return g;
    }
    for _ in 0..flips {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        if g.has_edge(u, v) {
            g.remove_edge(u, v);
        } else {
            g.add_edge(u, v);
        }
    }
    g
}

fn random_graph(n: usize, i: usize, rng: &mut ChaCha8Rng) -> UndirectedGraph {
    let flips = rng.gen_range(1..=2);
    match i % 10 {
        0 | 1 => {
            let p = [0.1, 0.25, 0.5, 0.75, 0.9][rng.gen_range(0..5)];
            erdos_renyi(n, p, rng)
        }
        2 => random_threshold(n, rng),
        3 => random_split(n, rng),
        4 => random_cograph(n, rng),
        5 => random_chordal(n, rng),
        6 => random_chordal(n, rng).complement(),
        7 => {
            let g = random_threshold(n, rng);
            flip_edges(g, flips, rng)
        }
        8 => {
            let g = random_cograph(n, rng);
            flip_edges(g, flips, rng)
        }
        _ => {
            let g = random_chordal(n, rng);
            flip_edges(g, flips, rng)
        }
    }
}

/// Disagreement between recognizers and the forbidden-subgraph oracle, or a
/// certificate or witness that fails its verifier.
fn oracle_disagreement(g: &UndirectedGraph) -> Option<String> {
    let has = |p| find_induced(g, p).expect("within the hole cap").is_some();
    let (p4, c4, c5, k2) = (
        has(SearchPattern::P4),
        has(SearchPattern::C4),
        has(SearchPattern::C5),
        has(SearchPattern::TwoK2),
    );
    let hole = c4 || c5 || has(SearchPattern::HoleAtLeast(4));
    let expected = [!(c4 || c5 || k2), !(p4 || c4 || k2), !k2, !p4, !hole];
    for (v, e) in classify_graph(g).iter().zip(expected) {
        if v.member != e {
            return Some(format!("{}: recognizer {} oracle {}", v.class, v.member, e));
        }
        if let Err(err) = v.verify(g) {
            return Some(err.to_string());
        }
    }
    None
}

fn oracle() -> Outcome {
    let mut graphs = 0usize;
    let mut bad: Vec<String> = Vec::new();
    for mask in 0u64..(1 << 15) {
        let g = UndirectedGraph::from_pair_mask(6, mask);
        graphs += 1;
        if let Some(d) = oracle_disagreement(&g) {
            bad.push(format!("6-vertex mask {mask}: {d}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut members = [0usize; 5];
    for n in 7..=32 {
        for i in 0..RANDOM_GRAPHS_PER_N {
            let g = random_graph(n, i, &mut rng);
            graphs += 1;
            if let Some(d) = oracle_disagreement(&g) {
                if bad.len() < 10 {
                    bad.push(format!("n={n} #{i} {}: {d}", g.to_packed()));
                }
            }
            for (k, v) in classify_graph(&g).iter().enumerate() {
                members[k] += usize::from(v.member);
            }
        }
    }
    check(
        bad.is_empty(),
        format!(
            "{graphs} graphs; random members split/threshold/2k2/cograph/chordal {members:?}; {} disagreements {bad:?}",
            bad.len()
        ),
    )
}

fn minimal_orders() -> Outcome {
    let catalog = Catalog::shipped();
    let cog = scan_noncograph(&catalog, 36, Execution::default()).unwrap();
    let cho = scan_nonchordal(&catalog, 36, Execution::default()).unwrap();
    let least = |s: &commgraph::ScanResult| s.rows.iter().find(|r| r.count() > 0).map(|r| r.order);
    let ids = cho.ids();
    let constructed = ["extraspecial+", "extraspecial-"]
        .iter()
        .all(|s| !is_chordal(&noncentral(&build(s))).member);
    let ok = least(&cog) == Some(24)
        && least(&cho) == Some(32)
        && ids.contains(&(32, 49))
        && ids.contains(&(32, 50))
        && constructed;
    check(
        ok,
        format!(
            "least non-cograph {:?}, least non-chordal {:?}, non-chordal IDs {:?}",
            least(&cog),
            least(&cho),
            ids
        ),
    )
}

fn strong_products() -> Outcome {
    let mut bad = Vec::new();
    for (a, b) in STRONG_PRODUCT_PAIRS {
        let (h, k) = (build(a), build(b));
        let p = direct_product(&h, &k).unwrap();
        let lhs = commuting_graph_with(&p, VertexScope::All, Execution::default());
        let rhs = strong_product(
            &commuting_graph_with(&h, VertexScope::All, Execution::default()),
            &commuting_graph_with(&k, VertexScope::All, Execution::default()),
        )
        .unwrap();
        if lhs != rhs {
            bad.push(format!("{a} x {b}"));
        }
    }
    check(
        bad.is_empty() && STRONG_PRODUCT_PAIRS.len() == 10,
        format!("10 pairs {bad:?}"),
    )
}

fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn suzuki() -> Outcome {
    // reset the high-water mark so the figure covers this criterion only
    let _ = std::fs::write("/proc/self/clear_refs", "5");
    let sz2 = build("suzuki:2");
    let four = (0..20).find(|&x| sz2.element_order(x).unwrap() == 4).unwrap();
    let h = sz2.subgroup_closure(&ElementSet::new(20, vec![four]).unwrap()).unwrap();
    let kernel = verify_frobenius(&sz2, &h).map(|r| r.kernel.len());
    let sz2_cograph = is_cograph(&noncentral(&sz2)).member;
    let sz8 = build("suzuki:8");
    let sz8_cograph = is_cograph(&noncentral(&sz8)).member;
    let rss = peak_rss_kb();
    let ok = kernel == Ok(5) && sz2_cograph && sz8_cograph && rss.is_none_or(|r| r < SUZUKI_MEMORY_KB);
    check(
        ok,
        format!(
            "|Sz(8)| = {}, cograph {sz8_cograph}; Sz(2) kernel {kernel:?}, cograph {sz2_cograph}; peak RSS {} MB",
            sz8.order(),
            rss.map(|r| (r / 1024).to_string()).unwrap_or_else(|| "unknown".into())
        ),
    )
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags such as --nocapture; a name filter
    // selects criteria by number.
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 10] = [
        (1, "table 1 reproduction", TABLE1_LIMIT, table1),
        (2, "table 2 counts through order 72", TABLE2_LIMIT, table2),
        (
            3,
            "split = threshold = 2K2-free = abelian or D(A) odd",
            EQUIVALENCE_LIMIT,
            equivalence,
        ),
        (4, "symmetric and alternating sweeps", SWEEP_LIMIT, sweeps),
        (5, "PSL(2,q) cograph dichotomy", PSL2_LIMIT, psl2),
        (6, "matrix P4 witnesses", MATRIX_LIMIT, matrices),
        (
            7,
            "recognizers agree with the forbidden-subgraph oracle",
            ORACLE_LIMIT,
            oracle,
        ),
        (
            8,
            "minimal non-cograph and non-chordal orders",
            MINIMAL_LIMIT,
            minimal_orders,
        ),
        (9, "strong product identity", STRONG_PRODUCT_LIMIT, strong_products),
        (10, "Sz(8) and Sz(2)", SUZUKI_LIMIT, suzuki),
    ];
    let mut all = true;
    for (id, name, limit, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == &id.to_string()) {
            continue;
        }
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        let ok = outcome.passed && elapsed <= limit;
        all &= ok;
        println!(
            "{} criterion {id:>2}: {name} ({:.2}s, limit {}s) {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            outcome.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
