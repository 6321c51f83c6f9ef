//! Simple undirected graphs as packed bit matrices, and commuting graphs.
//!
//! Text formats:
//!
//! * edge list: a header line `n m`, then `m` lines `u v` with `0 <= u < v < n`
//!   in ascending order;
//! * packed: one ASCII line. A size prefix (one byte `n + 63` for `n <= 62`,
//!   otherwise `~` and three 6-bit bytes, or `~~` and six 6-bit bytes for
//!   `n > 258047`), then the upper triangle in row-major order
//!   `(0,1), (0,2), ..., (0,n-1), (1,2), ...`, six bits per byte, most
//!   significant bit first, each byte offset by 63, zero padded.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::{self, BitSet};
use crate::exec::{self, Execution};
use crate::group::{ElementSet, Group};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("vertex list must be strictly increasing")]
    NotIncreasing,
    #[error("graph with {0} vertices exceeds the size cap")]
    SizeCap(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Largest vertex count accepted by [`strong_product`] by default.
pub const STRONG_PRODUCT_CAP: usize = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexScope {
    All,
    NonCentral,
}

#[derive(Clone)]
pub struct UndirectedGraph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
    labels: Option<Vec<usize>>,
}

impl PartialEq for UndirectedGraph {
    /// Adjacency only; labels are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bits == other.bits
    }
}

impl Eq for UndirectedGraph {}

impl std::fmt::Debug for UndirectedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UndirectedGraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl UndirectedGraph {
    pub fn empty(n: usize) -> Self {
        let stride = bitset::words_for(n);
        UndirectedGraph {
            n,
            stride,
            bits: vec![0; n * stride],
            labels: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::IndexOutOfRange { index: x, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Graph on `n <= 11` vertices from a bitmask over pairs `(i, j)`,
    /// `i < j`, in row-major order.
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        let mut g = Self::empty(n);
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> bit & 1 == 1 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        bitset::set(&mut self.bits[u * self.stride..(u + 1) * self.stride], v);
        bitset::set(&mut self.bits[v * self.stride..(v + 1) * self.stride], u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        bitset::clear(&mut self.bits[u * self.stride..(u + 1) * self.stride], v);
        bitset::clear(&mut self.bits[v * self.stride..(v + 1) * self.stride], u);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        bitset::count(&self.bits) / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bitset::test(self.row(u), v)
    }

    /// Adjacency row of `v` as words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.stride..(v + 1) * self.stride]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bitset::ones(self.row(v))
    }

    pub fn neighbor_set(&self, v: usize) -> BitSet {
        BitSet::from_words(self.n, self.row(v).to_vec())
    }

    pub fn degree(&self, v: usize) -> usize {
        bitset::count(self.row(v))
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    /// Label of vertex `v`, or `v` itself when unlabeled.
    pub fn label(&self, v: usize) -> usize {
        self.labels.as_ref().map_or(v, |l| l[v])
    }

    pub fn with_labels(mut self, labels: Vec<usize>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    /// Vertex carrying `label`.
    pub fn vertex_of(&self, label: usize) -> Option<usize> {
        match &self.labels {
            Some(l) => l.iter().position(|&x| x == label),
            None => (label < self.n).then_some(label),
        }
    }

    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Self, GraphError> {
        for w in vertices.windows(2) {
            if w[0] >= w[1] {
                return Err(GraphError::NotIncreasing);
            }
        }
        if let Some(&last) = vertices.last() {
            if last >= self.n {
                return Err(GraphError::IndexOutOfRange { index: last, n: self.n });
            }
        }
        Ok(self.induced_on(vertices))
    }

    /// Induced subgraph on `vertices` in the given order, which need not be
    /// sorted but must be in range and distinct.
    pub(crate) fn induced_on(&self, vertices: &[usize]) -> Self {
        let k = vertices.len();
        let mut g = Self::empty(k);
        for i in 0..k {
            for j in i + 1..k {
                if self.has_edge(vertices[i], vertices[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g.labels = Some(vertices.iter().map(|&v| self.label(v)).collect());
        g
    }

    pub fn complement(&self) -> Self {
        let mut g = self.clone();
        let full = BitSet::full(self.n);
        for v in 0..self.n {
            let row = &mut g.bits[v * self.stride..(v + 1) * self.stride];
            for (w, f) in row.iter_mut().zip(full.words()) {
                *w = !*w & f;
            }
            bitset::clear(row, v);
        }
        g
    }

    /// Repeatedly deletes vertices adjacent to all others. Returns the
    /// remaining graph (labels preserved) and the removed vertices.
    pub fn remove_dominant(&self) -> (Self, Vec<usize>) {
        let mut alive = BitSet::full(self.n);
        let mut removed = Vec::new();
        loop {
            let r = alive.count();
            let next = alive.iter().find(|&v| {
                let mut row = alive.clone();
                row.and_with(self.row(v));
                row.count() + 1 == r
            });
            match next {
                Some(v) => {
                    alive.remove(v);
                    removed.push(v);
                }
                None => break,
            }
        }
        removed.sort_unstable();
        let keep: Vec<usize> = alive.iter().collect();
        (self.induced_on(&keep), removed)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let bad = |m: String| GraphError::Parse(m);
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| bad("missing header".into()))?;
        let nums = |l: &str| -> Result<(usize, usize), GraphError> {
            let mut it = l.split_whitespace().map(|t| t.parse::<usize>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
                _ => Err(bad(format!("expected two integers: {l:?}"))),
            }
        };
        let (n, m) = nums(header)?;
        let edges = lines.map(nums).collect::<Result<Vec<_>, _>>()?;
        if edges.len() != m {
            return Err(bad(format!("header says {m} edges, found {}", edges.len())));
        }
        let g = Self::from_edges(n, edges)?;
        if g.edge_count() != m {
            return Err(bad("duplicate edges".into()));
        }
        Ok(g)
    }

    pub fn to_packed(&self) -> String {
        let n = self.n;
        let mut out = String::new();
        let push6 = |out: &mut String, x: usize| out.push((x as u8 + 63) as char);
        if n <= 62 {
            push6(&mut out, n);
        } else if n <= 258_047 {
            out.push('~');
            for shift in [12, 6, 0] {
                push6(&mut out, (n >> shift) & 63);
            }
        } else {
            out.push_str("~~");
            for shift in [30, 24, 18, 12, 6, 0] {
                push6(&mut out, (n >> shift) & 63);
            }
        }
        let mut acc = 0usize;
        let mut filled = 0;
        for u in 0..n {
            for v in u + 1..n {
                acc = acc << 1 | self.has_edge(u, v) as usize;
                filled += 1;
                if filled == 6 {
                    push6(&mut out, acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            push6(&mut out, acc << (6 - filled));
        }
        out
    }

    pub fn from_packed(text: &str) -> Result<Self, GraphError> {
        let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
        let bad = |m: &str| GraphError::Parse(format!("packed graph: {m}"));
        let val = |b: u8| -> Result<usize, GraphError> {
            if (63..=126).contains(&b) {
                Ok((b - 63) as usize)
            } else {
                Err(bad("byte outside 63..=126"))
            }
        };
        let (n, rest) = match bytes {
            [b'~', b'~', rest @ ..] => {
                if rest.len() < 6 {
                    return Err(bad("truncated size"));
                }
                let mut n = 0;
                for &b in &rest[..6] {
                    n = n << 6 | val(b)?;
                }
                (n, &rest[6..])
            }
            [b'~', rest @ ..] => {
                if rest.len() < 3 {
                    return Err(bad("truncated size"));
                }
                let mut n = 0;
                for &b in &rest[..3] {
                    n = n << 6 | val(b)?;
                }
                (n, &rest[3..])
            }
            [b, rest @ ..] => (val(*b)?, rest),
            [] => return Err(bad("empty")),
        };
        let pairs = n * n.saturating_sub(1) / 2;
        if rest.len() != pairs.div_ceil(6) {
            return Err(bad("wrong body length"));
        }
        let mut g = Self::empty(n);
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if val(rest[k / 6])? >> (5 - k % 6) & 1 == 1 {
                    g.add_edge(u, v);
                }
                k += 1;
            }
        }
        if pairs % 6 != 0 {
            let pad = 6 - pairs % 6;
            if val(rest[rest.len() - 1])? & ((1 << pad) - 1) != 0 {
                return Err(bad("non-zero padding"));
            }
        }
        Ok(g)
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut unseen = BitSet::full(self.n);
        let mut out = Vec::new();
        while let Some(s) = unseen.first() {
            unseen.remove(s);
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                let mut next = unseen.clone();
                next.and_with(self.row(v));
                for w in next.iter() {
                    unseen.remove(w);
                    comp.push(w);
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Vertices of a shortest path from `from` to `to` whose interior lies
    /// in `allowed`; `None` when there is none. Ties go to smaller indices.
    pub(crate) fn shortest_path(&self, from: usize, to: usize, allowed: &BitSet) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n];
        let mut seen = BitSet::new(self.n);
        seen.insert(from);
        let mut frontier = vec![from];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &v in &frontier {
                if self.has_edge(v, to) {
                    let mut path = vec![to, v];
                    let mut x = v;
                    while x != from {
                        x = parent[x];
                        path.push(x);
                    }
                    path.reverse();
                    return Some(path);
                }
                let mut cand = allowed.clone();
                cand.and_with(self.row(v));
                cand.and_not_with(seen.words());
                for w in cand.iter() {
                    seen.insert(w);
                    parent[w] = v;
                    next.push(w);
                }
            }
            frontier = next;
        }
        None
    }
}

/// `(v1, w1) ~ (v2, w2)` iff each coordinate is equal or adjacent and the
/// pairs differ. Vertex `(v, w)` has index `v |g2| + w`.
pub fn strong_product(g1: &UndirectedGraph, g2: &UndirectedGraph) -> Result<UndirectedGraph, GraphError> {
    strong_product_capped(g1, g2, STRONG_PRODUCT_CAP)
}

pub fn strong_product_capped(
    g1: &UndirectedGraph,
    g2: &UndirectedGraph,
    cap: usize,
) -> Result<UndirectedGraph, GraphError> {
    let (a, b) = (g1.n, g2.n);
    let n = a.checked_mul(b).ok_or(GraphError::SizeCap(usize::MAX))?;
    if n > cap {
        return Err(GraphError::SizeCap(n));
    }
    let close = |g: &UndirectedGraph, x: usize, y: usize| x == y || g.has_edge(x, y);
    let mut g = UndirectedGraph::empty(n);
    for x in 0..n {
        for y in x + 1..n {
            if close(g1, x / b, y / b) && close(g2, x % b, y % b) {
                g.add_edge(x, y);
            }
        }
    }
    Ok(g)
}

/// The commuting graph on the chosen elements, in index order; vertex labels
/// are element indices.
pub fn commuting_graph(group: &Group, scope: VertexScope) -> UndirectedGraph {
    commuting_graph_with(group, scope, Execution::default())
}

pub fn commuting_graph_with(group: &Group, scope: VertexScope, exec: Execution) -> UndirectedGraph {
    let elements = match scope {
        VertexScope::All => ElementSet::whole(group.order()),
        VertexScope::NonCentral => group.center().complement(),
    };
    commuting_graph_on(group, &elements, exec)
}

pub fn commuting_graph_on(group: &Group, elements: &ElementSet, exec: Execution) -> UndirectedGraph {
    let verts = elements.as_slice();
    let n = verts.len();
    let mut g = UndirectedGraph::empty(n);
    let stride = g.stride;
    if stride > 0 {
        // Upper triangle by rows; every row is written by exactly one task.
        exec::for_each_chunk_mut(exec, &mut g.bits, stride, |i, row| {
            for j in i + 1..n {
                if group.commute(verts[i], verts[j]) {
                    bitset::set(row, j);
                }
            }
        });
        for i in 0..n {
            let upper: Vec<usize> = bitset::ones(&g.bits[i * stride..(i + 1) * stride])
                .filter(|&j| j > i)
                .collect();
            for j in upper {
                bitset::set(&mut g.bits[j * stride..(j + 1) * stride], i);
            }
        }
    }
    g.labels = Some(verts.to_vec());
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::FamilySpec;

    fn build(s: &str) -> Group {
        s.parse::<FamilySpec>().unwrap().build().unwrap()
    }

    #[test]
    fn abelian_graph_is_complete() {
        let g = build("abelian:2,6");
        assert_eq!(commuting_graph(&g, VertexScope::All), UndirectedGraph::complete(12));
        assert_eq!(commuting_graph(&g, VertexScope::NonCentral).vertex_count(), 0);
    }

    #[test]
    fn odd_generalized_dihedral_shape() {
        // A = Z_5 at indices 0..5, reflections 5..10
        let g = build("gdih:5");
        let gamma = commuting_graph(&g, VertexScope::All);
        let mut want = UndirectedGraph::complete(5);
        want = UndirectedGraph::from_edges(10, want.edges().chain((5..10).map(|x| (0, x)))).unwrap();
        assert_eq!(gamma, want);
    }

    #[test]
    fn quaternion_noncentral_is_matching() {
        let g = commuting_graph(&build("Q8"), VertexScope::NonCentral);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 3);
        assert!((0..6).all(|v| g.degree(v) == 1));
    }

    #[test]
    fn s4_listed_path_is_induced() {
        let s4 = build("S4");
        let gamma = commuting_graph(&s4, VertexScope::All);
        let mut verts: Vec<usize> = ["(1 2)", "(1 2)(3 4)", "(1 3)(2 4)", "(1 3)"]
            .iter()
            .map(|c| s4.element_from_cycles(c).unwrap())
            .collect();
        let order = verts.clone();
        verts.sort_unstable();
        let sub = gamma.induced_subgraph(&verts).unwrap();
        let pos = |e: usize| verts.iter().position(|&x| x == e).unwrap();
        let p: Vec<usize> = order.iter().map(|&e| pos(e)).collect();
        let expect = UndirectedGraph::from_edges(4, [(p[0], p[1]), (p[1], p[2]), (p[2], p[3])]).unwrap();
        assert_eq!(sub, expect);
    }

    #[test]
    fn induced_subgraph_edge_cases() {
        let g = UndirectedGraph::cycle(5);
        assert_eq!(g.induced_subgraph(&[0, 1, 2, 3, 4]).unwrap(), g);
        assert_eq!(g.induced_subgraph(&[]).unwrap().vertex_count(), 0);
        assert_eq!(g.induced_subgraph(&[2, 1]), Err(GraphError::NotIncreasing));
        assert!(matches!(
            g.induced_subgraph(&[1, 7]),
            Err(GraphError::IndexOutOfRange { index: 7, .. })
        ));
    }

    #[test]
    fn complements() {
        assert_eq!(UndirectedGraph::complete(6).complement(), UndirectedGraph::empty(6));
        let p4 = UndirectedGraph::path(4);
        // complement of 0-1-2-3 is 1-3-0-2
        assert_eq!(
            p4.complement(),
            UndirectedGraph::from_edges(4, [(1, 3), (3, 0), (0, 2)]).unwrap()
        );
        let c5 = UndirectedGraph::cycle(5);
        assert_eq!(
            c5.complement(),
            UndirectedGraph::from_edges(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap()
        );
        assert_eq!(c5.complement().complement(), c5);
    }

    #[test]
    fn strong_products() {
        let k = strong_product(&UndirectedGraph::complete(3), &UndirectedGraph::complete(4)).unwrap();
        assert_eq!(k, UndirectedGraph::complete(12));
        let c5 = UndirectedGraph::cycle(5);
        assert_eq!(strong_product(&UndirectedGraph::empty(1), &c5).unwrap(), c5);
        assert_eq!(strong_product_capped(&c5, &c5, 24), Err(GraphError::SizeCap(25)));
    }

    #[test]
    fn product_of_commuting_graphs() {
        let s3 = build("S3");
        let gs = commuting_graph(&s3, VertexScope::All);
        let p = build("S3*S3");
        assert_eq!(strong_product(&gs, &gs).unwrap(), commuting_graph(&p, VertexScope::All));
    }

    #[test]
    fn dominant_removal() {
        let (g, removed) = UndirectedGraph::complete(4).remove_dominant();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(removed, vec![0, 1, 2, 3]);
        let star = UndirectedGraph::from_edges(5, (1..5).map(|i| (0, i))).unwrap();
        let (g, removed) = star.remove_dominant();
        assert_eq!(removed, vec![0]);
        assert_eq!(g, UndirectedGraph::empty(4));
        let s4 = commuting_graph(&build("S4"), VertexScope::All);
        assert_eq!(s4.remove_dominant().1, vec![0]);
    }

    #[test]
    fn formats_round_trip() {
        let g = commuting_graph(&build("S4"), VertexScope::NonCentral);
        assert_eq!(UndirectedGraph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert_eq!(UndirectedGraph::from_packed(&g.to_packed()).unwrap(), g);
        // 3-vertex path 0-1-2: bits (0,1)=1 (0,2)=0 (1,2)=1 -> 101000 = 40
        let p3 = UndirectedGraph::path(3);
        assert_eq!(
            p3.to_packed(),
            format!("{}{}", (3 + 63) as u8 as char, (40 + 63) as u8 as char)
        );
        assert_eq!(UndirectedGraph::empty(0).to_packed(), "?");
        assert!(UndirectedGraph::parse_edge_list("3 2\n0 1\n").is_err());
        assert!(UndirectedGraph::from_packed("B~").is_err());
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = build("sym:5");
        let a = commuting_graph_with(&g, VertexScope::All, Execution::Sequential);
        let b = commuting_graph_with(&g, VertexScope::All, Execution::Parallel);
        assert_eq!(a, b);
    }
}
