use super::{
    chordal, cograph, twok2, Certificate, ClassVerdict, CreationStep, GraphClass, Insertion, Pattern, Witness,
};
use crate::graph::UndirectedGraph;

/// Peels isolated or dominating vertices; the reversed peel is a creation
/// sequence. Degrees are kept in lazily cleaned buckets.
pub fn is_threshold(g: &UndirectedGraph) -> ClassVerdict {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n.max(1)];
    for v in (0..n).rev() {
        buckets[deg[v]].push(v);
    }
    let mut peel = Vec::with_capacity(n);
    let mut left = n;
    while left > 0 {
        let pick = |d: usize, buckets: &mut Vec<Vec<usize>>| -> Option<usize> {
            while let Some(v) = buckets[d].pop() {
                if alive[v] && deg[v] == d {
                    return Some(v);
                }
            }
            None
        };
        let (v, insertion) = if let Some(v) = pick(0, &mut buckets) {
            (v, Insertion::Isolated)
        } else if let Some(v) = pick(left - 1, &mut buckets) {
            (v, Insertion::Dominating)
        } else {
            break;
        };
        alive[v] = false;
        left -= 1;
        for w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                buckets[deg[w]].push(w);
            }
        }
        peel.push(CreationStep { vertex: v, insertion });
    }
    if left == 0 {
        peel.reverse();
        return ClassVerdict::member(Certificate::Threshold(peel));
    }
    let rest: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let core = g.induced_on(&rest);
    let (pattern, local) = stuck_witness(&core);
    ClassVerdict::non_member(
        GraphClass::Threshold,
        Witness::new(pattern, local.into_iter().map(|i| rest[i]).collect()),
    )
}

/// The remainder has neither isolated nor dominating vertices. A 2K2-free
/// graph has no hole longer than 5; a hole of length 5 contains a P4; a
/// chordal 2K2-free graph is split, and a split non-threshold graph has a P4.
fn stuck_witness(core: &UndirectedGraph) -> (Pattern, Vec<usize>) {
    if let Some(w) = twok2::find_2k2(core) {
        return (Pattern::TwoK2, w.to_vec());
    }
    if let Some(hole) = chordal::find_hole(core) {
        return match hole.len() {
            4 => (Pattern::C4, hole),
            _ => (Pattern::P4, hole[..4].to_vec()),
        };
    }
    let v = cograph::is_cograph(core);
    let w = v
        .witness
        .expect("split graph without isolated or dominating vertices has a P4");
    (w.pattern, w.vertices)
}
