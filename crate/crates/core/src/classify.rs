//! Group predicates and the per-group classification report.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::classes::{classify_graph, ClassVerdict, GraphClass, VerdictRecord, VerifyError};
use crate::exec::Execution;
use crate::graph::{commuting_graph_with, UndirectedGraph, VertexScope};
use crate::group::{ElementSet, Group};

/// `Ω(G)`, the subgroup generated by the elements of order greater than 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Omega {
    pub subgroup: ElementSet,
    pub abelian: bool,
}

pub fn omega_subgroup(g: &Group) -> Omega {
    let seeds: Vec<usize> = (1..g.order()).filter(|&x| g.order_of(x) > 2).collect();
    let subgroup = g.closure_of(&seeds);
    let abelian = if subgroup.len() == g.order() {
        g.is_abelian()
    } else {
        let s = subgroup.as_slice();
        s.iter()
            .enumerate()
            .all(|(i, &a)| s[i + 1..].iter().all(|&b| g.commute(a, b)))
    };
    Omega { subgroup, abelian }
}

/// The odd-order abelian `A` with `G = D(A)`, if there is one. `A` can only
/// be `Ω(G)`: it must be abelian of odd order and index 2, and every element
/// outside it must be an involution inverting it.
pub fn generalized_dihedral_odd_base(g: &Group) -> Option<ElementSet> {
    if g.is_abelian() {
        return None;
    }
    let omega = omega_subgroup(g);
    let a = omega.subgroup;
    if !omega.abelian || a.len().is_multiple_of(2) || 2 * a.len() != g.order() {
        return None;
    }
    let inverts = a
        .complement()
        .iter()
        .all(|x| g.order_of(x) == 2 && a.iter().all(|y| g.mul(g.mul(x, y), x) == g.inv(y)));
    inverts.then_some(a)
}

pub fn is_generalized_dihedral_odd(g: &Group) -> bool {
    generalized_dihedral_odd_base(g).is_some()
}

fn abelian_set(g: &Group, set: &ElementSet) -> bool {
    let s = set.as_slice();
    s.iter()
        .enumerate()
        .all(|(i, &a)| s[i + 1..].iter().all(|&b| g.commute(a, b)))
}

/// First non-central element (by index) with non-abelian centralizer.
pub fn ac_counterexample(g: &Group) -> Option<usize> {
    let center = g.center();
    (0..g.order())
        .filter(|&x| !center.contains(x))
        .find(|&x| !abelian_set(g, &g.centralizer_of(x)))
}

/// Every non-central element has abelian centralizer.
pub fn is_ac_group(g: &Group) -> bool {
    ac_counterexample(g).is_none()
}

/// Every non-identity element has abelian centralizer.
pub fn is_ca_group(g: &Group) -> bool {
    (1..g.order()).all(|x| abelian_set(g, &g.centralizer_of(x)))
}

/// AC test on the non-central commuting graph: centralizers are closed
/// neighbourhoods plus the centre, so the group is AC exactly when the graph
/// is a disjoint union of cliques.
pub fn is_cluster_graph(gamma: &UndirectedGraph) -> bool {
    (0..gamma.vertex_count()).all(|v| {
        gamma
            .neighbors(v)
            .all(|u| gamma.neighbors(v).all(|w| w == u || gamma.has_edge(u, w)))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusRecord {
    pub complement: Vec<usize>,
    pub kernel: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobeniusError {
    #[error("complement is not a subgroup")]
    NotASubgroup,
    #[error("not a Frobenius group: {0}")]
    NotFrobenius(String),
}

/// Checks that `h` is a Frobenius complement: `H ∩ H^g = 1` for `g ∉ H`, the
/// kernel `{1} ∪ (G ∖ ∪ H^g)` is a normal subgroup with `|K||H| = |G|`, and
/// centralizers of non-identity elements of `H` and `K` stay inside them.
pub fn verify_frobenius(g: &Group, h: &ElementSet) -> Result<FrobeniusRecord, FrobeniusError> {
    let n = g.order();
    if h.group_order() != n || !g.is_subgroup(h) {
        return Err(FrobeniusError::NotASubgroup);
    }
    let fail = |why: String| Err(FrobeniusError::NotFrobenius(why));
    if h.len() == 1 || h.len() == n {
        return fail("complement must be proper and non-trivial".into());
    }
    // left coset representatives: least element of each coset xH
    let mut covered = vec![false; n];
    let mut in_conjugate = vec![false; n];
    for x in 0..n {
        if covered[x] {
            continue;
        }
        for y in h.iter() {
            covered[g.mul(x, y)] = true;
        }
        let xi = g.inv(x);
        let conj: Vec<usize> = h.iter().map(|y| g.mul(g.mul(x, y), xi)).collect();
        if !h.contains(x) {
            if let Some(&bad) = conj.iter().find(|&&c| c != 0 && h.contains(c)) {
                return fail(format!("H meets its conjugate by {} in {}", g.label(x), g.label(bad)));
            }
        }
        for c in conj {
            in_conjugate[c] = true;
        }
    }
    let kernel: Vec<usize> = (0..n).filter(|&x| x == 0 || !in_conjugate[x]).collect();
    let k = ElementSet::new(n, kernel).expect("indices in range");
    if k.len() * h.len() != n {
        return fail(format!("kernel has {} elements, expected {}", k.len(), n / h.len()));
    }
    if !g.is_subgroup(&k) {
        return fail("kernel is not a subgroup".into());
    }
    if !g.is_normal(&k) {
        return fail("kernel is not normal".into());
    }
    for (set, name) in [(h, "complement"), (&k, "kernel")] {
        if let Some(x) = set.iter().skip(1).find(|&x| !g.centralizer_of(x).is_subset(set)) {
            return fail(format!("centralizer of {} leaves the {name}", g.label(x)));
        }
    }
    Ok(FrobeniusRecord {
        complement: h.as_slice().to_vec(),
        kernel: k.as_slice().to_vec(),
    })
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub scope: VertexScope,
    pub exec: Execution,
    /// Re-check every certificate and witness after recognition.
    pub verify: bool,
    /// Complement to test with [`verify_frobenius`].
    pub frobenius_complement: Option<ElementSet>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            scope: VertexScope::NonCentral,
            exec: Execution::default(),
            verify: true,
            frobenius_complement: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("verdicts violate the split/threshold/2K2-free equivalence: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub graph_ms: f64,
    pub recognize_ms: f64,
    pub predicates_ms: f64,
}

/// Version of the serialized report layout.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub schema: u32,
    pub group: String,
    pub order: usize,
    pub center_size: usize,
    pub scope: VertexScope,
    pub vertices: usize,
    pub edges: usize,
    pub verdicts: Vec<VerdictRecord>,
    pub is_abelian: bool,
    pub is_generalized_dihedral_odd: bool,
    pub is_ac_group: bool,
    pub is_ca_group: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<FrobeniusRecord>,
    pub timings: Timings,
    #[serde(skip)]
    pub raw: Vec<ClassVerdict>,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn classify_group(g: &Group, name: &str, options: &ClassifyOptions) -> Result<ClassReport, ClassifyError> {
    let t = Instant::now();
    let gamma = commuting_graph_with(g, options.scope, options.exec);
    let graph_ms = ms(t);

    let t = Instant::now();
    let raw = classify_graph(&gamma);
    if options.verify {
        for v in &raw {
            v.verify(&gamma)?;
        }
    }
    let recognize_ms = ms(t);

    let t = Instant::now();
    let center = g.center();
    let noncentral = match options.scope {
        VertexScope::NonCentral => gamma.clone(),
        VertexScope::All => {
            let keep: Vec<usize> = (0..gamma.vertex_count())
                .filter(|&v| !center.contains(gamma.label(v)))
                .collect();
            gamma.induced_on(&keep)
        }
    };
    let is_abelian = center.len() == g.order();
    let ac = is_cluster_graph(&noncentral);
    let ca = ac && (is_abelian || center.len() == 1);
    let gdih = is_generalized_dihedral_odd(g);
    let frobenius = options
        .frobenius_complement
        .as_ref()
        .map(|h| verify_frobenius(g, h))
        .transpose()?;
    let predicates_ms = ms(t);

    let member = |c: GraphClass| raw.iter().find(|v| v.class == c).is_some_and(|v| v.member);
    let (split, threshold, free) = (
        member(GraphClass::Split),
        member(GraphClass::Threshold),
        member(GraphClass::TwoK2Free),
    );
    let expected = is_abelian || gdih;
    if split != threshold || threshold != free || free != expected {
        return Err(ClassifyError::Inconsistent(format!(
            "{name}: split={split} threshold={threshold} 2k2-free={free} abelian-or-D(A)-odd={expected}"
        )));
    }
    if threshold && !(member(GraphClass::Cograph) && member(GraphClass::Chordal)) {
        return Err(ClassifyError::Inconsistent(format!(
            "{name}: threshold graph that is not both a cograph and chordal"
        )));
    }

    let verdicts = raw.iter().map(|v| v.to_record(&gamma, |e| g.label(e))).collect();
    Ok(ClassReport {
        schema: REPORT_SCHEMA,
        group: name.to_string(),
        order: g.order(),
        center_size: center.len(),
        scope: options.scope,
        vertices: gamma.vertex_count(),
        edges: gamma.edge_count(),
        verdicts,
        is_abelian,
        is_generalized_dihedral_odd: gdih,
        is_ac_group: ac,
        is_ca_group: ca,
        frobenius,
        timings: Timings {
            graph_ms,
            recognize_ms,
            predicates_ms,
        },
        raw: raw.into(),
    })
}

impl ClassReport {
    pub fn member(&self, class: GraphClass) -> bool {
        self.raw.iter().any(|v| v.class == class && v.member)
    }

    pub fn csv_header() -> &'static str {
        "group,order,center,scope,split,threshold,2k2_free,cograph,chordal,abelian,gdih_odd,ac,ca"
    }

    pub fn to_csv_row(&self) -> String {
        let scope = match self.scope {
            VertexScope::All => "all",
            VertexScope::NonCentral => "noncentral",
        };
        let mut row = format!(
            "\"{}\",{},{},{}",
            self.group.replace('"', "\"\""),
            self.order,
            self.center_size,
            scope
        );
        for c in GraphClass::ALL {
            let _ = write!(row, ",{}", self.member(c));
        }
        let _ = write!(
            row,
            ",{},{},{},{}",
            self.is_abelian, self.is_generalized_dihedral_odd, self.is_ac_group, self.is_ca_group
        );
        row
    }

    pub fn to_table(&self) -> String {
        let scope = match self.scope {
            VertexScope::All => "all",
            VertexScope::NonCentral => "non-central",
        };
        let yes = |b: bool| if b { "yes" } else { "no" };
        let mut out = format!(
            "{} (order {}, centre {}, {} vertices, {} edges, {scope} scope)\n",
            self.group, self.order, self.center_size, self.vertices, self.edges
        );
        for v in &self.verdicts {
            let _ = write!(out, "  {:<10} {}", v.class.name(), yes(v.member));
            if let (Some(p), Some(l)) = (&v.pattern, &v.witness_labels) {
                let _ = write!(out, "  {p}: {}", l.join(" ~ "));
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "  abelian {}, D(A) with |A| odd {}, AC {}, CA {}",
            yes(self.is_abelian),
            yes(self.is_generalized_dihedral_odd),
            yes(self.is_ac_group),
            yes(self.is_ca_group)
        );
        if let Some(f) = &self.frobenius {
            let _ = writeln!(
                out,
                "  Frobenius: complement {} elements, kernel {} elements",
                f.complement.len(),
                f.kernel.len()
            );
        }
        out
    }
}
