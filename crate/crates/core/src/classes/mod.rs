//! Recognition of split, threshold, 2K2-free, cograph and chordal graphs.
//!
//! Every verdict carries either a certificate of membership or an induced
//! forbidden subgraph. Forbidden sets:
//!
//! | class     | forbidden induced subgraphs |
//! |-----------|-----------------------------|
//! | split     | C4, C5, 2K2                 |
//! | threshold | P4, C4, 2K2                 |
//! | 2K2-free  | 2K2                         |
//! | cograph   | P4                          |
//! | chordal   | C_k for every k >= 4        |

mod chordal;
mod cograph;
mod oracle;
mod split;
mod threshold;
mod twok2;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::UndirectedGraph;

pub use chordal::{is_chordal, lex_bfs};
pub use cograph::is_cograph;
pub use oracle::{find_induced, find_induced_with, shortest_hole, OracleError, OracleOptions, SearchPattern};
pub use split::is_split;
pub use threshold::is_threshold;
pub use twok2::is_2k2_free;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GraphClass {
    #[serde(rename = "split")]
    Split,
    #[serde(rename = "threshold")]
    Threshold,
    #[serde(rename = "2k2-free")]
    TwoK2Free,
    #[serde(rename = "cograph")]
    Cograph,
    #[serde(rename = "chordal")]
    Chordal,
}

impl GraphClass {
    pub const ALL: [GraphClass; 5] = [
        GraphClass::Split,
        GraphClass::Threshold,
        GraphClass::TwoK2Free,
        GraphClass::Cograph,
        GraphClass::Chordal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Split => "split",
            GraphClass::Threshold => "threshold",
            GraphClass::TwoK2Free => "2k2-free",
            GraphClass::Cograph => "cograph",
            GraphClass::Chordal => "chordal",
        }
    }

    /// Whether `pattern` is one of the class's forbidden induced subgraphs.
    pub fn forbids(self, pattern: Pattern) -> bool {
        use Pattern::*;
        let p = pattern.normalized();
        match self {
            GraphClass::Split => matches!(p, C4 | C5 | TwoK2),
            GraphClass::Threshold => matches!(p, P4 | C4 | TwoK2),
            GraphClass::TwoK2Free => p == TwoK2,
            GraphClass::Cograph => p == P4,
            GraphClass::Chordal => matches!(p, C4 | C5) || matches!(p, Hole(k) if k >= 4),
        }
    }

    pub fn recognize(self, g: &UndirectedGraph) -> ClassVerdict {
        match self {
            GraphClass::Split => is_split(g),
            GraphClass::Threshold => is_threshold(g),
            GraphClass::TwoK2Free => is_2k2_free(g),
            GraphClass::Cograph => is_cograph(g),
            GraphClass::Chordal => is_chordal(g),
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Small forbidden patterns. Witness vertex lists follow the pattern: path
/// order for `P4`, cyclic order for cycles, and `[a, b, c, d]` with edges
/// `ab`, `cd` for `2K2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pattern {
    P4,
    C4,
    C5,
    TwoK2,
    /// Chordless cycle of the given length.
    Hole(usize),
}

impl Pattern {
    /// Cycle pattern of length `k >= 4`, using `C4`/`C5` where they apply.
    pub fn cycle(k: usize) -> Pattern {
        match k {
            4 => Pattern::C4,
            5 => Pattern::C5,
            k => Pattern::Hole(k),
        }
    }

    fn normalized(self) -> Pattern {
        match self {
            Pattern::Hole(k) => Pattern::cycle(k),
            p => p,
        }
    }

    pub fn vertex_count(self) -> usize {
        match self {
            Pattern::P4 | Pattern::C4 | Pattern::TwoK2 => 4,
            Pattern::C5 => 5,
            Pattern::Hole(k) => k,
        }
    }

    /// The pattern on vertices `0..k` in witness order.
    pub fn template(self) -> UndirectedGraph {
        match self {
            Pattern::P4 => UndirectedGraph::path(4),
            Pattern::C4 => UndirectedGraph::cycle(4),
            Pattern::C5 => UndirectedGraph::cycle(5),
            Pattern::TwoK2 => UndirectedGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap(),
            Pattern::Hole(k) => UndirectedGraph::cycle(k),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::P4 => f.write_str("P4"),
            Pattern::C4 => f.write_str("C4"),
            Pattern::C5 => f.write_str("C5"),
            Pattern::TwoK2 => f.write_str("2K2"),
            Pattern::Hole(k) => write!(f, "C{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub pattern: Pattern,
    pub vertices: Vec<usize>,
}

impl Witness {
    pub fn new(pattern: Pattern, vertices: Vec<usize>) -> Self {
        Witness { pattern, vertices }
    }

    /// Induced subgraph on the vertices, in order, equals the pattern.
    pub fn verify(&self, g: &UndirectedGraph) -> bool {
        let v = &self.vertices;
        if v.len() != self.pattern.vertex_count() || v.iter().any(|&x| x >= g.vertex_count()) {
            return false;
        }
        let mut sorted = v.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == v.len() && g.induced_on(v) == self.pattern.template()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Insertion {
    Isolated,
    Dominating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CreationStep {
    pub vertex: usize,
    pub insertion: Insertion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CotreeNode {
    Leaf(usize),
    Union(Vec<usize>),
    Join(Vec<usize>),
}

/// Arena cotree; children are node indices. Two leaves are adjacent iff
/// their lowest common ancestor is a join node.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Cotree {
    pub nodes: Vec<CotreeNode>,
    pub root: Option<usize>,
}

impl Cotree {
    /// Leaf vertices under `node`, in tree order.
    pub fn leaves(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            match &self.nodes[x] {
                CotreeNode::Leaf(v) => out.push(*v),
                CotreeNode::Union(c) | CotreeNode::Join(c) => stack.extend(c.iter().rev()),
            }
        }
        out
    }

    /// The graph on `n` vertices the tree describes, or `None` when the
    /// structure is not a tree whose leaves are exactly `0..n`.
    pub fn evaluate(&self, n: usize) -> Option<UndirectedGraph> {
        let Some(root) = self.root else {
            return (n == 0).then(|| UndirectedGraph::empty(0));
        };
        let mut seen_node = vec![false; self.nodes.len()];
        let mut seen_leaf = vec![false; n];
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            if x >= self.nodes.len() || std::mem::replace(&mut seen_node[x], true) {
                return None;
            }
            match &self.nodes[x] {
                CotreeNode::Leaf(v) => {
                    if *v >= n || std::mem::replace(&mut seen_leaf[*v], true) {
                        return None;
                    }
                }
                CotreeNode::Union(c) | CotreeNode::Join(c) => stack.extend(c),
            }
        }
        if !seen_leaf.iter().all(|&b| b) || !seen_node.iter().all(|&b| b) {
            return None;
        }
        let mut g = UndirectedGraph::empty(n);
        for node in &self.nodes {
            if let CotreeNode::Join(children) = node {
                let parts: Vec<Vec<usize>> = children.iter().map(|&c| self.leaves(c)).collect();
                for i in 0..parts.len() {
                    for j in i + 1..parts.len() {
                        for &a in &parts[i] {
                            for &b in &parts[j] {
                                g.add_edge(a, b);
                            }
                        }
                    }
                }
            }
        }
        Some(g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    Split {
        clique: Vec<usize>,
        independent: Vec<usize>,
    },
    /// Insertion order rebuilding the graph.
    Threshold(Vec<CreationStep>),
    Cograph(Cotree),
    /// Perfect elimination ordering.
    Chordal(Vec<usize>),
    /// Membership established by exhaustive edge-pair search; there is no
    /// compact certificate.
    TwoK2Free,
}

impl Certificate {
    pub fn class(&self) -> GraphClass {
        match self {
            Certificate::Split { .. } => GraphClass::Split,
            Certificate::Threshold(_) => GraphClass::Threshold,
            Certificate::Cograph(_) => GraphClass::Cograph,
            Certificate::Chordal(_) => GraphClass::Chordal,
            Certificate::TwoK2Free => GraphClass::TwoK2Free,
        }
    }

    pub fn verify(&self, g: &UndirectedGraph) -> bool {
        let n = g.vertex_count();
        let is_perm = |v: &[usize]| {
            let mut seen = vec![false; n];
            v.len() == n && v.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        match self {
            Certificate::Split { clique, independent } => {
                let all: Vec<usize> = clique.iter().chain(independent).copied().collect();
                is_perm(&all)
                    && clique
                        .iter()
                        .enumerate()
                        .all(|(i, &a)| clique[i + 1..].iter().all(|&b| g.has_edge(a, b)))
                    && independent
                        .iter()
                        .enumerate()
                        .all(|(i, &a)| independent[i + 1..].iter().all(|&b| !g.has_edge(a, b)))
            }
            Certificate::Threshold(steps) => {
                let order: Vec<usize> = steps.iter().map(|s| s.vertex).collect();
                if !is_perm(&order) {
                    return false;
                }
                let mut h = UndirectedGraph::empty(n);
                for (i, s) in steps.iter().enumerate() {
                    if s.insertion == Insertion::Dominating {
                        for &u in &order[..i] {
                            h.add_edge(s.vertex, u);
                        }
                    }
                }
                h == *g
            }
            Certificate::Cograph(tree) => tree.evaluate(n).is_some_and(|h| h == *g),
            Certificate::Chordal(peo) => {
                if !is_perm(peo) {
                    return false;
                }
                let mut pos = vec![0; n];
                for (i, &v) in peo.iter().enumerate() {
                    pos[v] = i;
                }
                peo.iter().all(|&v| {
                    let later: Vec<usize> = g.neighbors(v).filter(|&w| pos[w] > pos[v]).collect();
                    later
                        .iter()
                        .enumerate()
                        .all(|(i, &a)| later[i + 1..].iter().all(|&b| g.has_edge(a, b)))
                })
            }
            Certificate::TwoK2Free => twok2::find_2k2(g).is_none(),
        }
    }

    /// Renames vertices, e.g. to commuting-graph labels.
    pub fn map_vertices(&self, f: impl Fn(usize) -> usize) -> Certificate {
        let map = |v: &[usize]| v.iter().map(|&x| f(x)).collect::<Vec<_>>();
        match self {
            Certificate::Split { clique, independent } => Certificate::Split {
                clique: map(clique),
                independent: map(independent),
            },
            Certificate::Threshold(steps) => Certificate::Threshold(
                steps
                    .iter()
                    .map(|s| CreationStep {
                        vertex: f(s.vertex),
                        insertion: s.insertion,
                    })
                    .collect(),
            ),
            Certificate::Cograph(tree) => Certificate::Cograph(Cotree {
                nodes: tree
                    .nodes
                    .iter()
                    .map(|n| match n {
                        CotreeNode::Leaf(v) => CotreeNode::Leaf(f(*v)),
                        other => other.clone(),
                    })
                    .collect(),
                root: tree.root,
            }),
            Certificate::Chordal(peo) => Certificate::Chordal(map(peo)),
            Certificate::TwoK2Free => Certificate::TwoK2Free,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{0}: exactly one of certificate and witness must be present")]
    Shape(GraphClass),
    #[error("{0}: certificate of the wrong class")]
    WrongCertificate(GraphClass),
    #[error("{0}: certificate does not verify")]
    BadCertificate(GraphClass),
    #[error("{0}: witness does not induce {1}")]
    BadWitness(GraphClass, Pattern),
    #[error("{0}: {1} is not forbidden for the class")]
    NotForbidden(GraphClass, Pattern),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassVerdict {
    pub class: GraphClass,
    pub member: bool,
    pub certificate: Option<Certificate>,
    pub witness: Option<Witness>,
}

impl ClassVerdict {
    pub(crate) fn member(certificate: Certificate) -> Self {
        ClassVerdict {
            class: certificate.class(),
            member: true,
            certificate: Some(certificate),
            witness: None,
        }
    }

    pub(crate) fn non_member(class: GraphClass, witness: Witness) -> Self {
        ClassVerdict {
            class,
            member: false,
            certificate: None,
            witness: Some(witness),
        }
    }

    pub fn verify(&self, g: &UndirectedGraph) -> Result<(), VerifyError> {
        let class = self.class;
        match (&self.certificate, &self.witness, self.member) {
            (Some(c), None, true) => {
                if c.class() != class {
                    return Err(VerifyError::WrongCertificate(class));
                }
                if !c.verify(g) {
                    return Err(VerifyError::BadCertificate(class));
                }
            }
            (None, Some(w), false) => {
                if !class.forbids(w.pattern) {
                    return Err(VerifyError::NotForbidden(class, w.pattern));
                }
                if !w.verify(g) {
                    return Err(VerifyError::BadWitness(class, w.pattern));
                }
            }
            _ => return Err(VerifyError::Shape(class)),
        }
        Ok(())
    }

    /// Serializable record with vertices renamed through the graph labels
    /// and witness vertices also rendered by `name`.
    pub fn to_record(&self, g: &UndirectedGraph, name: impl Fn(usize) -> String) -> VerdictRecord {
        VerdictRecord {
            class: self.class,
            member: self.member,
            certificate: self.certificate.as_ref().map(|c| c.map_vertices(|v| g.label(v))),
            pattern: self.witness.as_ref().map(|w| w.pattern.to_string()),
            witness: self
                .witness
                .as_ref()
                .map(|w| w.vertices.iter().map(|&v| g.label(v)).collect()),
            witness_labels: self
                .witness
                .as_ref()
                .map(|w| w.vertices.iter().map(|&v| name(g.label(v))).collect()),
        }
    }
}

/// Record schema: `class`, `member`, then either `certificate` or
/// `pattern`, `witness` (labels) and `witness_labels` (rendered labels).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub class: GraphClass,
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pattern: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_labels: Option<Vec<String>>,
}

/// All five verdicts in [`GraphClass::ALL`] order.
pub fn classify_graph(g: &UndirectedGraph) -> [ClassVerdict; 5] {
    GraphClass::ALL.map(|c| c.recognize(g))
}

impl FromStr for Pattern {
    type Err = String;

    /// `P4`, `C4`, `C5`, `2K2`, `C<k>` or `hole:<k>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let k = match t.to_ascii_lowercase().as_str() {
            "p4" => return Ok(Pattern::P4),
            "2k2" => return Ok(Pattern::TwoK2),
            other => other
                .strip_prefix("hole:")
                .or_else(|| other.strip_prefix('c'))
                .and_then(|x| x.parse::<usize>().ok()),
        };
        match k {
            Some(k) if k >= 4 => Ok(Pattern::cycle(k)),
            _ => Err(format!("unknown pattern {s:?}")),
        }
    }
}
