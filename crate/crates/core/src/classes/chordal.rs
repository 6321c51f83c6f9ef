use super::{oracle, Certificate, ClassVerdict, GraphClass, Pattern, Witness};
use crate::bitset::BitSet;
use crate::graph::UndirectedGraph;

/// Lexicographic breadth-first search by partition refinement; returns the
/// visit order. The unvisited vertices are kept in `verts` as consecutive
/// classes, and visiting a vertex moves its neighbours to the front of their
/// classes before splitting them off.
pub fn lex_bfs(g: &UndirectedGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut verts: Vec<usize> = (0..n).collect();
    let mut pos: Vec<usize> = (0..n).collect();
    let mut class_of = vec![0usize; n];
    // class id -> (start, end) in `verts`
    let mut ranges: Vec<(usize, usize)> = vec![(0, n)];
    let mut moved: Vec<usize> = vec![0];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for done in 0..n {
        let v = verts[done];
        visited[v] = true;
        order.push(v);
        ranges[class_of[v]].0 += 1;
        let mut touched = Vec::new();
        for w in g.neighbors(v) {
            if visited[w] {
                continue;
            }
            let c = class_of[w];
            let (start, _) = ranges[c];
            if moved[c] == 0 {
                touched.push(c);
            }
            let target = start + moved[c];
            let other = verts[target];
            verts.swap(pos[w], target);
            pos[other] = pos[w];
            pos[w] = target;
            moved[c] += 1;
        }
        for c in touched {
            let (start, end) = ranges[c];
            let k = std::mem::take(&mut moved[c]);
            if k == end - start {
                continue;
            }
            let id = ranges.len();
            ranges.push((start, start + k));
            moved.push(0);
            ranges[c].0 = start + k;
            for &w in &verts[start..start + k] {
                class_of[w] = id;
            }
        }
    }
    order
}

/// First violation `(v, u, w)` of the elimination ordering: `u` and `w` are
/// non-adjacent later neighbours of `v`.
fn peo_violation(g: &UndirectedGraph, peo: &[usize]) -> Option<(usize, usize, usize)> {
    let n = g.vertex_count();
    let mut pos = vec![0; n];
    for (i, &v) in peo.iter().enumerate() {
        pos[v] = i;
    }
    for &v in peo {
        let later: Vec<usize> = g.neighbors(v).filter(|&w| pos[w] > pos[v]).collect();
        let Some(&u) = later.iter().min_by_key(|&&w| pos[w]) else {
            continue;
        };
        if let Some(&w) = later.iter().find(|&&w| w != u && !g.has_edge(u, w)) {
            return Some((v, u, w));
        }
    }
    None
}

/// Reverse LexBFS order, which is a perfect elimination ordering exactly
/// when the graph is chordal.
fn elimination_order(g: &UndirectedGraph) -> Vec<usize> {
    let mut peo = lex_bfs(g);
    peo.reverse();
    peo
}

/// A hole in cyclic order when the graph is not chordal.
pub(crate) fn find_hole(g: &UndirectedGraph) -> Option<Vec<usize>> {
    let peo = elimination_order(g);
    let (v, u, w) = peo_violation(g, &peo)?;
    Some(
        hole_through(g, v, u, w)
            .unwrap_or_else(|| oracle::shortest_hole(g).expect("elimination ordering failed, so a hole exists")),
    )
}

/// `v, u, ..., w` closed by a shortest `u`-`w` path avoiding `N[v]`.
fn hole_through(g: &UndirectedGraph, v: usize, u: usize, w: usize) -> Option<Vec<usize>> {
    let mut allowed = BitSet::full(g.vertex_count());
    allowed.and_not_with(g.row(v));
    allowed.remove(v);
    let path = g.shortest_path(u, w, &allowed)?;
    let mut hole = vec![v];
    hole.extend(path);
    Some(hole)
}

pub fn is_chordal(g: &UndirectedGraph) -> ClassVerdict {
    let peo = elimination_order(g);
    match peo_violation(g, &peo) {
        None => ClassVerdict::member(Certificate::Chordal(peo)),
        Some((v, u, w)) => {
            let hole = hole_through(g, v, u, w).unwrap_or_else(|| oracle::shortest_hole(g).expect("a hole exists"));
            ClassVerdict::non_member(GraphClass::Chordal, Witness::new(Pattern::cycle(hole.len()), hole))
        }
    }
}
