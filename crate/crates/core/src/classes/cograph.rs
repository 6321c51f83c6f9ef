use super::{Certificate, ClassVerdict, Cotree, CotreeNode, GraphClass, Pattern, Witness};
use crate::bitset::BitSet;
use crate::graph::UndirectedGraph;

/// Components of `G[set]` (or of its complement), ordered by least vertex.
fn split_parts(g: &UndirectedGraph, set: &BitSet, complement: bool) -> Vec<Vec<usize>> {
    let mut unseen = set.clone();
    let mut parts = Vec::new();
    while let Some(s) = unseen.first() {
        unseen.remove(s);
        let mut part = vec![s];
        let mut i = 0;
        while i < part.len() {
            let v = part[i];
            i += 1;
            let mut next = unseen.clone();
            if complement {
                next.and_not_with(g.row(v));
            } else {
                next.and_with(g.row(v));
            }
            for w in next.iter() {
                unseen.remove(w);
                part.push(w);
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts
}

/// Induced P4 in a connected, co-connected `G[set]`: the first middle edge
/// `xy` (in order) with `a ~ x`, `y ~ b` and `a, b` otherwise independent.
fn p4_in(g: &UndirectedGraph, set: &BitSet) -> Option<[usize; 4]> {
    for x in set.iter() {
        let mut nx = set.clone();
        nx.and_with(g.row(x));
        for y in nx.iter() {
            let mut a_side = nx.clone();
            a_side.and_not_with(g.row(y));
            a_side.remove(y);
            if a_side.is_empty() {
                continue;
            }
            let mut b_side = set.clone();
            b_side.and_with(g.row(y));
            b_side.and_not_with(g.row(x));
            b_side.remove(x);
            for a in a_side.iter() {
                let mut b = b_side.clone();
                b.and_not_with(g.row(a));
                if let Some(b) = b.first() {
                    return Some([a, x, y, b]);
                }
            }
        }
    }
    None
}

/// Recursive union/join decomposition, run with an explicit stack.
pub fn is_cograph(g: &UndirectedGraph) -> ClassVerdict {
    let n = g.vertex_count();
    let mut tree = Cotree::default();
    if n == 0 {
        return ClassVerdict::member(Certificate::Cograph(tree));
    }
    let all: Vec<usize> = (0..n).collect();
    // (vertices, parent node, slot in parent's child list)
    let mut stack: Vec<(Vec<usize>, Option<(usize, usize)>)> = vec![(all, None)];
    while let Some((verts, parent)) = stack.pop() {
        let id = tree.nodes.len();
        match parent {
            Some((p, slot)) => match &mut tree.nodes[p] {
                CotreeNode::Union(c) | CotreeNode::Join(c) => c[slot] = id,
                CotreeNode::Leaf(_) => unreachable!(),
            },
            None => tree.root = Some(id),
        }
        if let [v] = verts[..] {
            tree.nodes.push(CotreeNode::Leaf(v));
            continue;
        }
        let set = BitSet::from_indices(n, verts.iter().copied());
        let mut parts = split_parts(g, &set, false);
        let join = parts.len() == 1;
        if join {
            parts = split_parts(g, &set, true);
        }
        if parts.len() == 1 {
            let [a, x, y, b] = p4_in(g, &set).expect("connected and co-connected graphs contain P4");
            return ClassVerdict::non_member(GraphClass::Cograph, Witness::new(Pattern::P4, vec![a, x, y, b]));
        }
        let placeholders = vec![usize::MAX; parts.len()];
        tree.nodes.push(if join {
            CotreeNode::Join(placeholders)
        } else {
            CotreeNode::Union(placeholders)
        });
        for (slot, part) in parts.into_iter().enumerate().rev() {
            stack.push((part, Some((id, slot))));
        }
    }
    ClassVerdict::member(Certificate::Cograph(tree))
}
