use commgraph::classes::{
    find_induced, is_2k2_free, is_chordal, is_cograph, is_split, is_threshold, shortest_hole, GraphClass, SearchPattern,
};
use commgraph::graph::{commuting_graph_with, strong_product};
use commgraph::group::GeneratorSpec;
use commgraph::{Execution, Group, Perm, UndirectedGraph, VertexScope};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = UndirectedGraph> {
    (0..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (Just(n), prop::collection::vec(any::<bool>(), pairs))
        })
        .prop_map(|(n, bits)| {
            let mut g = UndirectedGraph::empty(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
}

/// Graphs with a bias towards sparse or dense adjacency, so that members of
/// every class show up.
fn biased_graph(max_n: usize) -> impl Strategy<Value = UndirectedGraph> {
    (0..=max_n, 0u32..=100, any::<u64>()).prop_map(|(n, p, seed)| {
        let mut g = UndirectedGraph::empty(n);
        let mut s = seed | 1;
        for u in 0..n {
            for v in u + 1..n {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                if (s % 100) < p as u64 {
                    g.add_edge(u, v);
                }
            }
        }
        g
    })
}

// --- naive oracle ----------------------------------------------------------

fn naive_fixed(g: &UndirectedGraph, template: &UndirectedGraph) -> Option<Vec<usize>> {
    let k = template.vertex_count();
    let n = g.vertex_count();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut listing = vec![0; k];
    fn rec(
        g: &UndirectedGraph,
        t: &UndirectedGraph,
        i: usize,
        listing: &mut Vec<usize>,
        best: &mut Option<(Vec<usize>, Vec<usize>)>,
    ) {
        let k = t.vertex_count();
        if i == k {
            let ok = (0..k).all(|a| (0..k).all(|b| a == b || g.has_edge(listing[a], listing[b]) == t.has_edge(a, b)));
            if ok {
                let mut set = listing.clone();
                set.sort_unstable();
                let cand = (set, listing.clone());
                if best.as_ref().is_none_or(|b| cand < *b) {
                    *best = Some(cand);
                }
            }
            return;
        }
        for v in 0..g.vertex_count() {
            if !listing[..i].contains(&v) {
                listing[i] = v;
                rec(g, t, i + 1, listing, best);
            }
        }
    }
    if n >= k {
        rec(g, template, 0, &mut listing, &mut best);
    }
    best.map(|(_, l)| l)
}

/// Every hole, written from its least vertex in the smaller direction; the
/// least such sequence overall.
fn naive_hole(g: &UndirectedGraph, min_len: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut best: Option<Vec<usize>> = None;
    for mask in 1u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if vs.len() < min_len.max(4) {
            continue;
        }
        let deg = |v: usize| vs.iter().filter(|&&w| g.has_edge(v, w)).count();
        if !vs.iter().all(|&v| deg(v) == 2) {
            continue;
        }
        // walk the cycle; 2-regular and connected means a single cycle
        let start = vs[0];
        let mut seq = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = vs
                .iter()
                .copied()
                .filter(|&w| g.has_edge(cur, w) && w != prev)
                .min()
                .unwrap();
            if next == start {
                break;
            }
            seq.push(next);
            prev = cur;
            cur = next;
            if seq.len() > vs.len() {
                break;
            }
        }
        if seq.len() != vs.len() {
            continue;
        }
        if best.as_ref().is_none_or(|b| seq < *b) {
            best = Some(seq);
        }
    }
    best
}

fn naive_has_hole(g: &UndirectedGraph, exact: usize) -> bool {
    naive_hole_lengths(g).contains(&exact)
}

fn naive_hole_lengths(g: &UndirectedGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if vs.len() < 4
            || !vs
                .iter()
                .all(|&v| vs.iter().filter(|&&w| g.has_edge(v, w)).count() == 2)
        {
            continue;
        }
        let sub = g.induced_subgraph(&vs).unwrap();
        if sub.components().len() == 1 {
            out.push(vs.len());
        }
    }
    out
}

fn p4() -> UndirectedGraph {
    UndirectedGraph::path(4)
}
fn two_k2() -> UndirectedGraph {
    UndirectedGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn fixed_patterns_are_lex_least(g in graph(8)) {
        for (pat, t) in [
            (SearchPattern::P4, p4()),
            (SearchPattern::C4, UndirectedGraph::cycle(4)),
            (SearchPattern::C5, UndirectedGraph::cycle(5)),
            (SearchPattern::TwoK2, two_k2()),
        ] {
            prop_assert_eq!(find_induced(&g, pat).unwrap(), naive_fixed(&g, &t), "{:?}", pat);
        }
    }

    #[test]
    fn holes_are_lex_least(g in biased_graph(10), k in 4usize..7) {
        prop_assert_eq!(find_induced(&g, SearchPattern::HoleAtLeast(k)).unwrap(), naive_hole(&g, k));
    }

    #[test]
    fn shortest_hole_is_shortest(g in biased_graph(10)) {
        let lens = naive_hole_lengths(&g);
        let got = shortest_hole(&g);
        prop_assert_eq!(got.as_ref().map(|h| h.len()), lens.iter().copied().min());
        if let Some(h) = got {
            prop_assert!(naive_has_hole(&g, h.len()));
            let w = commgraph::classes::Witness::new(commgraph::Pattern::cycle(h.len()), h);
            prop_assert!(w.verify(&g));
        }
    }

    #[test]
    fn recognizers_match_forbidden_subgraphs(g in biased_graph(16)) {
        let has = |p| find_induced(&g, p).unwrap().is_some();
        let (p4, c4, c5, k2) = (
            has(SearchPattern::P4),
            has(SearchPattern::C4),
            has(SearchPattern::C5),
            has(SearchPattern::TwoK2),
        );
        let hole = has(SearchPattern::HoleAtLeast(4));
        let verdicts = [
            (is_split(&g), !(c4 || c5 || k2)),
            (is_threshold(&g), !(p4 || c4 || k2)),
            (is_2k2_free(&g), !k2),
            (is_cograph(&g), !p4),
            (is_chordal(&g), !hole),
        ];
        for (v, expected) in &verdicts {
            prop_assert_eq!(v.member, *expected, "{}", v.class);
            prop_assert!(v.verify(&g).is_ok(), "{}", v.class);
        }
        let m = |c: GraphClass| verdicts.iter().find(|(v, _)| v.class == c).unwrap().0.member;
        if m(GraphClass::Threshold) {
            prop_assert!(m(GraphClass::Split) && m(GraphClass::Cograph) && m(GraphClass::Chordal));
        }
        if m(GraphClass::Split) {
            prop_assert!(m(GraphClass::TwoK2Free));
        }
    }

    #[test]
    fn cographs_are_closed_under_complement(g in biased_graph(24)) {
        prop_assert_eq!(is_cograph(&g).member, is_cograph(&g.complement()).member);
    }

    #[test]
    fn dominant_vertices_do_not_matter(g in biased_graph(14), extra in 0usize..3) {
        // add `extra` dominating vertices, then strip all of them
        let n = g.vertex_count();
        let mut big = UndirectedGraph::empty(n + extra);
        for (u, v) in g.edges() {
            big.add_edge(u, v);
        }
        for d in n..n + extra {
            for v in 0..n + extra {
                if v != d {
                    big.add_edge(d, v);
                }
            }
        }
        let (stripped, _) = big.remove_dominant();
        for class in GraphClass::ALL {
            prop_assert_eq!(class.recognize(&big).member, class.recognize(&stripped).member, "{}", class);
            prop_assert_eq!(class.recognize(&big).member, class.recognize(&g).member, "{}", class);
        }
    }

    #[test]
    fn text_formats_round_trip(g in biased_graph(80)) {
        prop_assert_eq!(UndirectedGraph::parse_edge_list(&g.to_edge_list()).unwrap(), g.clone());
        let packed = g.to_packed();
        prop_assert!(packed.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(UndirectedGraph::from_packed(&packed).unwrap(), g);
    }

    #[test]
    fn strong_product_commutes(a in biased_graph(7), b in biased_graph(7)) {
        let ab = strong_product(&a, &b).unwrap();
        let ba = strong_product(&b, &a).unwrap();
        let (n, m) = (a.vertex_count(), b.vertex_count());
        for x in 0..n * m {
            for y in 0..n * m {
                let swap = |z: usize| (z % m) * n + z / m;
                prop_assert_eq!(ab.has_edge(x, y), ba.has_edge(swap(x), swap(y)));
            }
        }
    }
}

fn perm(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn random_permutation_groups(gens in (2usize..=6).prop_flat_map(|d| prop::collection::vec(perm(d), 1..=3))) {
        let d = gens[0].degree();
        let g = Group::from_generators(&GeneratorSpec::new(d, gens), None).unwrap();
        g.verify_axioms(64, 10_000, 1).unwrap();
        let n = g.order();
        let z = g.center();
        for x in 0..n {
            prop_assert_eq!(n % g.centralizer(x).unwrap().len(), 0);
        }
        let q = g.quotient(&z).unwrap();
        prop_assert_eq!(q.group.order() * z.len(), n);
        let all = commuting_graph_with(&g, VertexScope::All, Execution::Sequential);
        let sum: usize = (0..n).map(|x| g.centralizer(x).unwrap().len()).sum();
        prop_assert_eq!(all.edge_count(), (sum - n) / 2);
        for x in 0..n {
            for y in 0..n {
                let p = g.perm_of(x).unwrap().compose(&g.perm_of(y).unwrap());
                prop_assert_eq!(g.element_of(&p), Some(g.mul(x, y)));
            }
        }
        prop_assert_eq!(
            commuting_graph_with(&g, VertexScope::All, Execution::Parallel),
            all
        );
    }
}
