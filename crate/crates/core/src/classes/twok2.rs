use super::{Certificate, ClassVerdict, GraphClass, Pattern, Witness};
use crate::bitset::BitSet;
use crate::graph::UndirectedGraph;

/// An induced `2K2` as `[a, b, c, d]` with edges `ab` and `cd`.
///
/// Two components with edges give one immediately (least edge of each);
/// otherwise edges `ab` are scanned in order, looking for an edge among the
/// vertices outside `N[a] ∪ N[b]`.
pub(crate) fn find_2k2(g: &UndirectedGraph) -> Option<[usize; 4]> {
    let n = g.vertex_count();
    let least_edge = |comp: &[usize]| comp.iter().find_map(|&u| g.neighbors(u).next().map(|v| (u, v)));
    let comps = g.components();
    let mut with_edges = comps.iter().filter_map(|c| least_edge(c));
    if let (Some((a, b)), Some((c, d))) = (with_edges.next(), with_edges.next()) {
        return Some([a, b, c, d]);
    }
    for (a, b) in g.edges() {
        let mut outside = BitSet::full(n);
        outside.and_not_with(g.row(a));
        outside.and_not_with(g.row(b));
        outside.remove(a);
        outside.remove(b);
        for c in outside.iter() {
            let mut nb = outside.clone();
            nb.and_with(g.row(c));
            if let Some(d) = nb.first() {
                return Some([a, b, c, d]);
            }
        }
    }
    None
}

pub fn is_2k2_free(g: &UndirectedGraph) -> ClassVerdict {
    match find_2k2(g) {
        Some(w) => ClassVerdict::non_member(GraphClass::TwoK2Free, Witness::new(Pattern::TwoK2, w.to_vec())),
        None => ClassVerdict::member(Certificate::TwoK2Free),
    }
}
