use super::{chordal, oracle, twok2, Certificate, ClassVerdict, GraphClass, Pattern, Witness};
use crate::graph::UndirectedGraph;

/// Degree-sequence test: with degrees `d1 >= ... >= dn` and `m` the largest
/// `i` with `d_i >= i - 1`, the graph is split iff
/// `sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i`, and then the first `m`
/// vertices form a clique and the rest an independent set.
pub fn is_split(g: &UndirectedGraph) -> ClassVerdict {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    let deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
    let m = (0..n).rev().find(|&i| deg[order[i]] >= i).map_or(0, |i| i + 1);
    let head: usize = order[..m].iter().map(|&v| deg[v]).sum();
    let tail: usize = order[m..].iter().map(|&v| deg[v]).sum();
    if head == m * m.saturating_sub(1) + tail {
        let mut cert = Certificate::Split {
            clique: order[..m].to_vec(),
            independent: order[m..].to_vec(),
        };
        if !cert.verify(g) {
            cert = repair(g, order, m).expect("degree condition guarantees a split partition");
        }
        return ClassVerdict::member(cert);
    }
    ClassVerdict::non_member(GraphClass::Split, split_witness(g))
}

/// Tries every single swap between the two parts.
fn repair(g: &UndirectedGraph, order: Vec<usize>, m: usize) -> Option<Certificate> {
    for i in 0..m {
        for j in m..order.len() {
            let mut o = order.clone();
            o.swap(i, j);
            let cert = Certificate::Split {
                clique: o[..m].to_vec(),
                independent: o[m..].to_vec(),
            };
            if cert.verify(g) {
                return Some(cert);
            }
        }
    }
    None
}

/// A 2K2 if there is one; otherwise the graph is 2K2-free, so any hole has
/// length 4 or 5.
fn split_witness(g: &UndirectedGraph) -> Witness {
    if let Some(w) = twok2::find_2k2(g) {
        return Witness::new(Pattern::TwoK2, w.to_vec());
    }
    if let Some(hole) = chordal::find_hole(g) {
        debug_assert!(hole.len() <= 5);
        return Witness::new(Pattern::cycle(hole.len()), hole);
    }
    for p in [oracle::SearchPattern::C4, oracle::SearchPattern::C5] {
        if let Ok(Some(v)) = oracle::find_induced(g, p) {
            return Witness::new(p.pattern(), v);
        }
    }
    unreachable!("non-split graph without C4, C5 or 2K2")
}
