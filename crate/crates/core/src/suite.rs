//! Theorem suite: every classification statement checked on a reproducible
//! corpus, with a pass/fail line per named check.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::catalog::{scan_nonchordal, scan_noncograph, Catalog, TABLE1_IDS, TABLE2_COUNTS};
use crate::classes::{is_chordal, is_cograph, shortest_hole, GraphClass, Pattern, Witness};
use crate::classify::{classify_group, is_ac_group, is_ca_group, verify_frobenius, ClassifyOptions};
use crate::constructions::{
    affine_frobenius, direct_product, extraspecial, sl3_p4_witness, su3_p4_witness, ExtraspecialKind, FamilySpec,
};
use crate::exec::{map_range, Execution};
use crate::graph::{commuting_graph_on, commuting_graph_with, strong_product, UndirectedGraph, VertexScope};
use crate::group::{ElementSet, Group};

/// Failures listed per check before truncating.
const MAX_LISTED: usize = 20;

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    /// Adds Sz(8) and the order 48 to 72 catalog scans.
    pub slow: bool,
    pub exec: Execution,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(
                out,
                "{} {:<44} {:>5} cases {:>9.1} ms",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.cases,
                c.elapsed_ms
            );
            if let Some(n) = &c.note {
                let _ = write!(out, "  [{n}]");
            }
            out.push('\n');
            for f in &c.failures {
                let _ = writeln!(out, "     - {f}");
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,passed,cases,failures,elapsed_ms\n");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{},{},{},{},{:.1}",
                c.name,
                c.passed,
                c.cases,
                c.failures.len(),
                c.elapsed_ms
            );
        }
        out
    }
}

/// Collects cases and failures for one named check.
struct Check {
    cases: usize,
    failures: Vec<String>,
    failed: usize,
    note: Option<String>,
}

impl Check {
    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED {
                self.failures.push(what());
            }
        }
    }
}

fn run(report: &mut SuiteReport, name: &str, body: impl FnOnce(&mut Check)) {
    let t = Instant::now();
    let mut c = Check {
        cases: 0,
        failures: Vec::new(),
        failed: 0,
        note: None,
    };
    body(&mut c);
    if c.failed > c.failures.len() {
        let extra = c.failed - c.failures.len();
        c.failures.push(format!("... and {extra} more"));
    }
    report.checks.push(CheckResult {
        name: name.to_string(),
        passed: c.failed == 0 && c.cases > 0,
        cases: c.cases,
        failures: c.failures,
        note: c.note,
        elapsed_ms: t.elapsed().as_secs_f64() * 1e3,
    });
}

pub struct CorpusGroup {
    pub name: String,
    pub group: Group,
}

/// Abelian groups used for the `D(A)` corpus members, by cyclic factors.
pub const CORPUS_DIHEDRAL_BASES: [&[usize]; 10] =
    [&[3], &[5], &[7], &[9], &[3, 3], &[15], &[4], &[6], &[2, 4], &[3, 6]];

/// Catalog groups of order at most 36, `D_{2n}` for `n ≤ 15`, ten `D(A)` and
/// `Q_{4m}` for `2 ≤ m ≤ 8`.
pub fn default_corpus(catalog: &Catalog) -> Result<Vec<CorpusGroup>, String> {
    let mut out = Vec::new();
    for e in catalog.entries().iter().filter(|e| e.order <= 36) {
        let group = e.build().map_err(|err| err.to_string())?;
        out.push(CorpusGroup {
            name: format!("[{},{}]", e.order, e.index),
            group,
        });
    }
    let mut specs: Vec<FamilySpec> = (1..=15).map(FamilySpec::Dihedral).collect();
    specs.extend(
        CORPUS_DIHEDRAL_BASES
            .iter()
            .map(|a| FamilySpec::GeneralizedDihedral(a.to_vec())),
    );
    specs.extend((2..=8).map(FamilySpec::GeneralizedQuaternion));
    for spec in specs {
        let group = spec.build().map_err(|err| format!("{spec}: {err}"))?;
        out.push(CorpusGroup {
            name: spec.to_string(),
            group,
        });
    }
    Ok(out)
}

fn build(spec: &str) -> Group {
    spec.parse::<FamilySpec>()
        .and_then(|s| s.build())
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn noncentral(g: &Group, exec: Execution) -> UndirectedGraph {
    commuting_graph_with(g, VertexScope::NonCentral, exec)
}

fn prime_factor_count(mut n: usize) -> usize {
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            n /= p;
            count += 1;
        }
        p += 1;
    }
    count + usize::from(n > 1)
}

/// The elements named by cycle strings, as an element set of `g`.
fn elements(g: &Group, cycles: &[&str]) -> Result<Vec<usize>, String> {
    cycles
        .iter()
        .map(|c| g.element_from_cycles(c).map_err(|e| format!("{c}: {e}")))
        .collect()
}

/// Whether the listed elements, in order, form an induced path or cycle of
/// the commuting graph.
fn induced_in_group(g: &Group, pattern: Pattern, cycles: &[&str]) -> Result<bool, String> {
    let els = elements(g, cycles)?;
    let set = ElementSet::new(g.order(), els.clone()).map_err(|e| e.to_string())?;
    if set.len() != els.len() {
        return Ok(false);
    }
    let sub = commuting_graph_on(g, &set, Execution::Sequential);
    let local: Vec<usize> = els.iter().map(|&e| sub.vertex_of(e).expect("listed element")).collect();
    Ok(Witness::new(pattern, local).verify(&sub))
}

/// The A6 cycle of double transpositions, in cyclic order.
pub const A6_HOLE: [&str; 12] = [
    "(1 3)(4 5)",
    "(1 4)(3 5)",
    "(1 4)(2 6)",
    "(1 2)(4 6)",
    "(1 2)(3 5)",
    "(1 3)(2 5)",
    "(1 3)(4 6)",
    "(1 4)(3 6)",
    "(1 4)(2 5)",
    "(1 2)(4 5)",
    "(1 2)(3 6)",
    "(1 3)(2 6)",
];
pub const A6_P4: [&str; 4] = ["(1 2)(5 6)", "(1 2)(3 4)", "(1 3)(2 4)", "(1 3)(5 6)"];
pub const A7_HOLE: [&str; 6] = ["(1 2 3)", "(4 5 6)", "(1 2 7)", "(3 4 5)", "(1 2 6)", "(4 5 7)"];
pub const A8_HOLE: [&str; 4] = ["(1 2)(3 4)", "(5 6 7)", "(3 4 8)", "(1 2)(5 6)"];

pub const PSL2_FIELDS: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];
pub const PSL2_COGRAPH_FIELDS: [u32; 6] = [2, 3, 4, 5, 8, 16];

/// Pairs for the strong-product identity, as family strings.
pub const STRONG_PRODUCT_PAIRS: [(&str, &str); 10] = [
    ("S3", "S3"),
    ("Q8", "D8"),
    ("S3", "Z4"),
    ("A4", "Z2"),
    ("D10", "D6"),
    ("Q8", "S3"),
    ("S4", "Z2"),
    ("D8", "D8"),
    ("Q12", "Z3"),
    ("abelian:2,2", "A4"),
];

const PRODUCT_FACTORS: [&str; 11] = [
    "Z2",
    "Z3",
    "abelian:2,2",
    "S3",
    "D8",
    "Q8",
    "A4",
    "D10",
    "Q12",
    "gdih:3,3",
    "S4",
];

pub fn run_theorem_suite(options: &SuiteOptions) -> SuiteReport {
    let exec = options.exec;
    let mut report = SuiteReport::default();
    let catalog = Catalog::shipped();
    let corpus = match default_corpus(&catalog) {
        Ok(c) => c,
        Err(e) => {
            run(&mut report, "corpus construction", |c| c.case(false, || e));
            return report;
        }
    };

    let classify = ClassifyOptions {
        exec: Execution::Sequential,
        ..ClassifyOptions::default()
    };
    let reports = map_range(exec, corpus.len(), |i| {
        classify_group(&corpus[i].group, &corpus[i].name, &classify)
    });

    run(&mut report, "split-threshold-2k2 equivalence", |c| {
        for (g, r) in corpus.iter().zip(&reports) {
            c.case(r.is_ok(), || format!("{}: {}", g.name, r.as_ref().err().unwrap()));
        }
        c.note = Some(format!("{} groups", corpus.len()));
    });
    let ok: Vec<_> = corpus
        .iter()
        .zip(&reports)
        .filter_map(|(g, r)| Some((g, r.as_ref().ok()?)))
        .collect();

    run(&mut report, "abelian groups are in every class", |c| {
        for (g, r) in ok.iter().filter(|(_, r)| r.is_abelian) {
            c.case(GraphClass::ALL.iter().all(|&k| r.member(k)), || g.name.clone());
        }
    });

    run(&mut report, "AC groups are cographs and chordal", |c| {
        for (g, r) in ok.iter().filter(|(_, r)| r.is_ac_group) {
            c.case(r.member(GraphClass::Cograph) && r.member(GraphClass::Chordal), || {
                g.name.clone()
            });
        }
    });

    run(&mut report, "AC from centralizers matches the cluster test", |c| {
        for (g, r) in &ok {
            c.case(is_ac_group(&g.group) == r.is_ac_group, || g.name.clone());
            c.case(is_ca_group(&g.group) == r.is_ca_group, || format!("{} (CA)", g.name));
        }
    });

    run(&mut report, "trivial centre: AC iff CA", |c| {
        for (g, r) in ok.iter().filter(|(_, r)| r.center_size == 1) {
            c.case(r.is_ac_group == r.is_ca_group, || g.name.clone());
        }
    });

    run(&mut report, "centre quotient of three primes implies AC", |c| {
        for (g, r) in ok.iter().filter(|(g, _)| g.name.starts_with('[')) {
            if prime_factor_count(r.order / r.center_size) <= 3 {
                c.case(r.is_ac_group, || g.name.clone());
            }
        }
    });

    run(&mut report, "direct product cograph and chordal criterion", |c| {
        let factors: Vec<(&str, Group)> = PRODUCT_FACTORS.iter().map(|&s| (s, build(s))).collect();
        let verdicts: Vec<(bool, bool, bool)> = factors
            .iter()
            .map(|(_, g)| {
                let gamma = noncentral(g, exec);
                (g.is_abelian(), is_cograph(&gamma).member, is_chordal(&gamma).member)
            })
            .collect();
        for i in 0..factors.len() {
            for j in i..factors.len() {
                let p = match direct_product(&factors[i].1, &factors[j].1) {
                    Ok(p) => p,
                    Err(e) => {
                        c.case(false, || format!("{} x {}: {e}", factors[i].0, factors[j].0));
                        continue;
                    }
                };
                let gamma = noncentral(&p, exec);
                let (ai, ci, hi) = verdicts[i];
                let (aj, cj, hj) = verdicts[j];
                let cograph = (ai && cj) || (aj && ci);
                let chordal = (ai && hj) || (aj && hi);
                c.case(is_cograph(&gamma).member == cograph, || {
                    format!("{} x {} cograph", factors[i].0, factors[j].0)
                });
                c.case(is_chordal(&gamma).member == chordal, || {
                    format!("{} x {} chordal", factors[i].0, factors[j].0)
                });
            }
        }
    });

    run(&mut report, "extraspecial groups of order 32 contain C4", |c| {
        for kind in [ExtraspecialKind::Plus, ExtraspecialKind::Minus] {
            let e = match extraspecial(kind) {
                Ok(e) => e,
                Err(err) => {
                    c.case(false, || format!("{kind:?}: {err}"));
                    continue;
                }
            };
            let set = ElementSet::new(32, e.generators.to_vec()).expect("generators in range");
            let sub = commuting_graph_on(&e.group, &set, Execution::Sequential);
            let cycle = sub.edge_count() == 4 && (0..4).all(|v| sub.degree(v) == 2);
            c.case(cycle, || format!("{kind:?}: generators do not induce C4"));
            c.case(!is_chordal(&noncentral(&e.group, exec)).member, || {
                format!("{kind:?} is chordal")
            });
        }
    });

    run(
        &mut report,
        "Frobenius groups: criterion via kernel and complement",
        |c| {
            let mut cases: Vec<(String, Group, ElementSet)> = Vec::new();
            for (q, d) in [
                (4, 3),
                (5, 2),
                (5, 4),
                (7, 2),
                (7, 3),
                (7, 6),
                (8, 7),
                (9, 4),
                (9, 8),
                (11, 5),
                (13, 4),
                (13, 6),
            ] {
                match affine_frobenius(q, d) {
                    Ok((g, h)) => cases.push((format!("affine({q},{d})"), g, h)),
                    Err(e) => c.case(false, || format!("affine({q},{d}): {e}")),
                }
            }
            let d10 = build("gdih:5");
            cases.push(("gdih:5".into(), d10, ElementSet::new(10, vec![0, 5]).expect("in range")));
            let sz2 = build("suzuki:2");
            let four = (0..sz2.order())
                .find(|&x| sz2.order_of(x) == 4)
                .expect("Sz(2) has elements of order 4");
            let h = sz2.closure_of(&[four]);
            cases.push(("suzuki:2".into(), sz2, h));
            for (name, g, h) in cases {
                let rec = match verify_frobenius(&g, &h) {
                    Ok(r) => r,
                    Err(e) => {
                        c.case(false, || format!("{name}: {e}"));
                        continue;
                    }
                };
                let k = ElementSet::new(g.order(), rec.kernel).expect("kernel in range");
                let whole = noncentral(&g, exec);
                let gk = commuting_graph_on(&g, &k, exec);
                let gh = commuting_graph_on(&g, &h, exec);
                c.case(
                    is_cograph(&whole).member == (is_cograph(&gk).member && is_cograph(&gh).member),
                    || format!("{name}: cograph"),
                );
                c.case(
                    is_chordal(&whole).member == (is_chordal(&gk).member && is_chordal(&gh).member),
                    || format!("{name}: chordal"),
                );
            }
        },
    );

    run(&mut report, "Sz(2) is Frobenius with kernel of order 5", |c| {
        let g = build("suzuki:2");
        let four = (0..g.order())
            .find(|&x| g.order_of(x) == 4)
            .expect("elements of order 4");
        let h = g.closure_of(&[four]);
        let kernel = verify_frobenius(&g, &h).map(|r| r.kernel.len());
        c.case(kernel == Ok(5), || format!("{kernel:?}"));
        c.case(is_cograph(&noncentral(&g, exec)).member, || {
            "Γ(Sz(2)) is not a cograph".into()
        });
    });

    run(&mut report, "symmetric groups: cograph to 3, chordal to 4", |c| {
        for n in 1..=6 {
            let gamma = noncentral(&build(&format!("sym:{n}")), exec);
            c.case(is_cograph(&gamma).member == (n <= 3), || format!("S{n} cograph"));
            c.case(is_chordal(&gamma).member == (n <= 4), || format!("S{n} chordal"));
        }
    });

    run(&mut report, "alternating groups: cograph and chordal to 5", |c| {
        for n in 4..=6 {
            let g = build(&format!("alt:{n}"));
            let gamma = noncentral(&g, exec);
            c.case(is_cograph(&gamma).member == (n <= 5), || format!("A{n} cograph"));
            let chordal = is_chordal(&gamma);
            c.case(chordal.member == (n <= 5), || format!("A{n} chordal"));
            if n == 6 {
                let w = chordal.witness.as_ref();
                let ok = w.is_some_and(|w| w.vertices.len() >= 4 && w.verify(&gamma));
                c.case(ok, || "A6 chordality witness is not an induced hole".into());
                let shortest = shortest_hole(&gamma).map(|h| h.len());
                c.note = Some(format!("shortest hole in Γ(A6): {shortest:?}"));
            }
        }
    });

    run(&mut report, "listed alternating-group paths and holes", |c| {
        let a6 = build("alt:6");
        let listed: [(&Group, Pattern, &[&str]); 2] = [(&a6, Pattern::P4, &A6_P4), (&a6, Pattern::Hole(12), &A6_HOLE)];
        for (g, p, cycles) in listed {
            let r = induced_in_group(g, p, cycles);
            c.case(r == Ok(true), || format!("A6 {p}: {r:?}"));
        }
        let a7 = build("alt:7");
        let r = induced_in_group(&a7, Pattern::Hole(6), &A7_HOLE);
        c.case(r == Ok(true), || format!("A7 C6: {r:?}"));
        let a8 = build("alt:8");
        let r = induced_in_group(&a8, Pattern::C4, &A8_HOLE);
        c.case(r == Ok(true), || format!("A8 C4: {r:?}"));
    });

    run(&mut report, "PSL(2,q) cograph exactly for q even or q = 3, 5", |c| {
        for q in PSL2_FIELDS {
            let gamma = noncentral(&build(&format!("psl2:{q}")), exec);
            let v = is_cograph(&gamma);
            c.case(v.member == PSL2_COGRAPH_FIELDS.contains(&q), || {
                format!("PSL(2,{q}) cograph = {}", v.member)
            });
        }
    });

    run(&mut report, "matrix P4 witnesses", |c| {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let w = sl3_p4_witness(q);
            let excluded = q == 2 || q == 4;
            c.case(w.is_err() == excluded, || format!("SL(3,{q}): error = {}", w.is_err()));
            if let Ok(w) = w {
                c.case(w.report.verified(), || format!("SL(3,{q}) pattern"));
            }
        }
        for q in [2, 3, 4, 5] {
            let w = su3_p4_witness(q);
            c.case(w.is_err() == (q == 2), || format!("SU(3,{q}): error = {}", w.is_err()));
            if let Ok(w) = w {
                c.case(w.report.verified(), || format!("SU(3,{q}) pattern"));
            }
        }
    });

    run(&mut report, "table 1 non-cograph groups", |c| {
        match scan_noncograph(&catalog, 36, exec) {
            Ok(scan) => {
                let got = scan.ids();
                c.case(got == TABLE1_IDS, || format!("got {got:?}"));
            }
            Err(e) => c.case(false, || e.to_string()),
        }
    });

    run(&mut report, "minimal non-cograph and non-chordal orders", |c| {
        let cog = scan_noncograph(&catalog, 36, exec);
        let cho = scan_nonchordal(&catalog, 36, exec);
        match (cog, cho) {
            (Ok(cog), Ok(cho)) => {
                let least = |s: &crate::catalog::ScanResult| s.rows.iter().find(|r| r.count() > 0).map(|r| r.order);
                c.case(least(&cog) == Some(24), || {
                    format!("least non-cograph order {:?}", least(&cog))
                });
                c.case(least(&cho) == Some(32), || {
                    format!("least non-chordal order {:?}", least(&cho))
                });
                let ids = cho.ids();
                for id in [(32, 49), (32, 50)] {
                    c.case(ids.contains(&id), || format!("{id:?} missing from non-chordal list"));
                }
                c.case(!ids.contains(&(24, 12)), || "S4 listed as non-chordal".into());
            }
            (a, b) => {
                for e in [a.err(), b.err()].into_iter().flatten() {
                    c.case(false, || e.to_string());
                }
            }
        }
    });

    run(&mut report, "strong product identity", |c| {
        for (a, b) in STRONG_PRODUCT_PAIRS {
            let (h, k) = (build(a), build(b));
            let p = match direct_product(&h, &k) {
                Ok(p) => p,
                Err(e) => {
                    c.case(false, || format!("{a} x {b}: {e}"));
                    continue;
                }
            };
            let lhs = commuting_graph_with(&p, VertexScope::All, exec);
            let rhs = strong_product(
                &commuting_graph_with(&h, VertexScope::All, exec),
                &commuting_graph_with(&k, VertexScope::All, exec),
            );
            c.case(rhs.as_ref().is_ok_and(|r| *r == lhs), || format!("{a} x {b}"));
        }
    });

    let table2_max = if options.slow { 72 } else { 36 };
    run(&mut report, "table 2 non-cograph counts", |c| {
        let scan = match scan_noncograph(&catalog, table2_max, exec) {
            Ok(s) => s,
            Err(e) => return c.case(false, || e.to_string()),
        };
        for (order, expected) in TABLE2_COUNTS {
            if order > table2_max || !catalog.is_complete(order) {
                continue;
            }
            let got = scan.count(order).unwrap_or(0);
            c.case(got == expected, || format!("order {order}: {got} != {expected}"));
        }
    });

    if options.slow {
        run(&mut report, "Sz(8) commuting graph is a cograph", |c| {
            let g = build("suzuki:8");
            let gamma = noncentral(&g, exec);
            let v = is_cograph(&gamma);
            c.case(v.member, || format!("witness {:?}", v.witness));
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_factors() {
        assert_eq!(prime_factor_count(1), 0);
        assert_eq!(prime_factor_count(12), 3);
        assert_eq!(prime_factor_count(16), 4);
        assert_eq!(prime_factor_count(30), 3);
    }

    #[test]
    fn corpus_size() {
        let corpus = default_corpus(&Catalog::shipped()).unwrap();
        assert!(corpus.len() >= 100);
    }
}
