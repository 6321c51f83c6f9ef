//! Small-group catalog files and the table scans over them.
//!
//! File format (UTF-8):
//!
//! ```text
//! # comment
//! #coverage 24 complete
//! 24 12 4 | (2 4 3), (1 2) | S4
//! ```
//!
//! `#coverage <order> complete|partial` header lines declare whether every
//! group of that order is present. Entry lines are `order index degree |`
//! followed by comma-separated cycle expressions over `1..=degree`, and an
//! optional trailing `| name`. Whitespace between tokens is free.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::classes::{is_chordal, is_cograph, ClassVerdict, Witness};
use crate::exec::{self, Execution};
use crate::graph::{commuting_graph, VertexScope};
use crate::group::{GeneratorSpec, Group, GroupError};
use crate::perm::Perm;

const SHIPPED: &str = include_str!("../data/small_groups.cat");

/// Reference IDs of the groups of order at most 36 whose commuting graph is
/// not a cograph.
pub const TABLE1_IDS: [(usize, usize); 9] = [
    (24, 12),
    (32, 6),
    (32, 7),
    (32, 8),
    (32, 43),
    (32, 44),
    (32, 49),
    (32, 50),
    (36, 10),
];

/// Reference counts of groups with non-cograph commuting graph, per order.
pub const TABLE2_COUNTS: [(usize, usize); 17] = [
    (24, 1),
    (32, 7),
    (36, 1),
    (48, 10),
    (54, 2),
    (60, 2),
    (64, 115),
    (72, 11),
    (80, 12),
    (84, 1),
    (96, 112),
    (100, 2),
    (108, 10),
    (112, 8),
    (120, 15),
    (126, 2),
    (128, 1539),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("[{order},{index}] generates a group of order {computed}")]
    OrderValidationFailed {
        order: usize,
        index: usize,
        computed: usize,
    },
    #[error("duplicate ID [{0},{1}]")]
    DuplicateId(usize, usize),
    #[error("order {0} is not completely covered by the catalog")]
    IncompleteCoverage(usize),
    #[error("[{0},{1}] is not in the catalog")]
    UnknownId(usize, usize),
    #[error("[{order},{index}]: {source}")]
    Group {
        order: usize,
        index: usize,
        source: GroupError,
    },
    #[error("{0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coverage {
    Complete,
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub order: usize,
    pub index: usize,
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub name: Option<String>,
}

impl CatalogEntry {
    pub fn id(&self) -> (usize, usize) {
        (self.order, self.index)
    }

    pub fn generator_spec(&self) -> GeneratorSpec {
        GeneratorSpec::new(self.degree, self.generators.clone())
    }

    /// Closes the generators and checks the declared order.
    pub fn build(&self) -> Result<Group, CatalogError> {
        let group = Group::from_generators(&self.generator_spec(), None).map_err(|source| CatalogError::Group {
            order: self.order,
            index: self.index,
            source,
        })?;
        if group.order() != self.order {
            return Err(CatalogError::OrderValidationFailed {
                order: self.order,
                index: self.index,
                computed: group.order(),
            });
        }
        Ok(group)
    }

    fn to_line(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_cycles()).collect();
        let mut line = format!("{} {} {} | {}", self.order, self.index, self.degree, gens.join(", "));
        if let Some(name) = &self.name {
            let _ = write!(line, " | {name}");
        }
        line
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    coverage: BTreeMap<usize, Coverage>,
    entries: Vec<CatalogEntry>,
}

/// Splits on commas outside parentheses.
fn split_generators(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out.retain(|s| !s.is_empty());
    out
}

impl Catalog {
    /// Parses without closing the generators; entries come out sorted.
    pub fn parse(text: &str) -> Result<Catalog, CatalogError> {
        let mut coverage = BTreeMap::new();
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |message: String| CatalogError::Parse { line: line_no, message };
            let line = raw.trim();
            if let Some(rest) = line.strip_prefix("#coverage") {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [order, kind] = toks[..] else {
                    return Err(err("expected `#coverage <order> complete|partial`".into()));
                };
                let order: usize = order.parse().map_err(|_| err(format!("bad order {order:?}")))?;
                let kind = match kind {
                    "complete" => Coverage::Complete,
                    "partial" => Coverage::Partial,
                    other => return Err(err(format!("bad coverage kind {other:?}"))),
                };
                coverage.insert(order, kind);
                continue;
            }
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.splitn(3, '|');
            let head = fields.next().unwrap_or_default();
            let gens = fields
                .next()
                .ok_or_else(|| err("missing `|` before generators".into()))?;
            let name = fields.next().map(str::trim).filter(|s| !s.is_empty()).map(String::from);
            let nums = head
                .split_whitespace()
                .map(|t| t.parse::<usize>().ok().filter(|&x| x > 0))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| err(format!("bad header {head:?}")))?;
            let [order, index, degree] = nums[..] else {
                return Err(err("expected `order index degree`".into()));
            };
            let generators = split_generators(gens)
                .into_iter()
                .map(|g| Perm::parse_cycles(g, degree).map_err(|e| err(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            entries.push(CatalogEntry {
                order,
                index,
                degree,
                generators,
                name,
            });
        }
        entries.sort_by_key(|e| e.id());
        for w in entries.windows(2) {
            if w[0].id() == w[1].id() {
                return Err(CatalogError::DuplicateId(w[0].order, w[0].index));
            }
        }
        Ok(Catalog { coverage, entries })
    }

    /// Parses and validates every entry's order.
    pub fn load(path: &Path) -> Result<Catalog, CatalogError> {
        let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))?;
        let catalog = Self::parse(&text)?;
        catalog.validate(Execution::default())?;
        Ok(catalog)
    }

    /// The catalog bundled with the crate (all orders up to 36, and 48, 54,
    /// 60, 64, 72), unvalidated.
    pub fn shipped() -> Catalog {
        Self::parse(SHIPPED).expect("bundled catalog parses")
    }

    /// Builds every group, reporting the first failure in catalog order.
    pub fn validate(&self, exec: Execution) -> Result<(), CatalogError> {
        let results = exec::map_range(exec, self.entries.len(), |i| self.entries[i].build().map(|_| ()));
        results.into_iter().collect()
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, order: usize, index: usize) -> Result<&CatalogEntry, CatalogError> {
        self.entries
            .binary_search_by_key(&(order, index), |e| e.id())
            .map(|i| &self.entries[i])
            .map_err(|_| CatalogError::UnknownId(order, index))
    }

    pub fn coverage(&self, order: usize) -> Option<Coverage> {
        self.coverage.get(&order).copied()
    }

    pub fn is_complete(&self, order: usize) -> bool {
        self.coverage(order) == Some(Coverage::Complete)
    }

    /// Fails on the first order in `1..=max_order` lacking full coverage.
    pub fn require_complete(&self, max_order: usize) -> Result<(), CatalogError> {
        match (1..=max_order).find(|&n| !self.is_complete(n)) {
            Some(n) => Err(CatalogError::IncompleteCoverage(n)),
            None => Ok(()),
        }
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (order, kind) in &self.coverage {
            let kind = match kind {
                Coverage::Complete => "complete",
                Coverage::Partial => "partial",
            };
            let _ = writeln!(out, "#coverage {order} {kind}");
        }
        for e in &self.entries {
            out.push_str(&e.to_line());
            out.push('\n');
        }
        out
    }
}

/// One group found by a scan, with the forbidden subgraph found in its
/// commuting graph (element labels in cycle notation).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub order: usize,
    pub index: usize,
    pub name: Option<String>,
    pub pattern: String,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub order: usize,
    pub ids: Vec<TableEntry>,
}

impl TableRow {
    pub fn count(&self) -> usize {
        self.ids.len()
    }
}

/// Rows for the fully covered orders up to a bound, plus the orders that
/// were skipped for lack of coverage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub rows: Vec<TableRow>,
    pub skipped: Vec<usize>,
}

impl ScanResult {
    pub fn ids(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .flat_map(|r| r.ids.iter().map(|e| (e.order, e.index)))
            .collect()
    }

    pub fn count(&self, order: usize) -> Option<usize> {
        self.rows.iter().find(|r| r.order == order).map(TableRow::count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ScanClass {
    Cograph,
    Chordal,
}

fn scan(catalog: &Catalog, max_order: usize, class: ScanClass, exec: Execution) -> Result<ScanResult, CatalogError> {
    let covered: HashSet<usize> = (1..=max_order).filter(|&n| catalog.is_complete(n)).collect();
    let chosen: Vec<&CatalogEntry> = catalog.entries.iter().filter(|e| covered.contains(&e.order)).collect();
    let found = exec::map_range(exec, chosen.len(), |i| -> Result<Option<TableEntry>, CatalogError> {
        let entry = chosen[i];
        let group = entry.build()?;
        let gamma = commuting_graph(&group, VertexScope::NonCentral);
        let verdict: ClassVerdict = match class {
            ScanClass::Cograph => is_cograph(&gamma),
            ScanClass::Chordal => is_chordal(&gamma),
        };
        Ok(verdict.witness.map(|w: Witness| TableEntry {
            order: entry.order,
            index: entry.index,
            name: entry.name.clone(),
            pattern: w.pattern.to_string(),
            witness: w.vertices.iter().map(|&v| group.label(gamma.label(v))).collect(),
        }))
    });
    let mut by_order: BTreeMap<usize, Vec<TableEntry>> = covered.iter().map(|&n| (n, Vec::new())).collect();
    for f in found {
        if let Some(e) = f? {
            by_order.get_mut(&e.order).expect("covered order").push(e);
        }
    }
    let mut skipped: Vec<usize> = catalog
        .entries
        .iter()
        .map(|e| e.order)
        .chain(catalog.coverage.keys().copied())
        .filter(|n| *n <= max_order && !covered.contains(n))
        .collect();
    skipped.sort_unstable();
    skipped.dedup();
    Ok(ScanResult {
        rows: by_order
            .into_iter()
            .map(|(order, ids)| TableRow { order, ids })
            .collect(),
        skipped,
    })
}

/// Groups of order at most `max_order` whose non-central commuting graph is
/// not a cograph. Only fully covered orders are scanned.
pub fn scan_noncograph(catalog: &Catalog, max_order: usize, exec: Execution) -> Result<ScanResult, CatalogError> {
    scan(catalog, max_order, ScanClass::Cograph, exec)
}

/// As [`scan_noncograph`], for chordality.
pub fn scan_nonchordal(catalog: &Catalog, max_order: usize, exec: Execution) -> Result<ScanResult, CatalogError> {
    scan(catalog, max_order, ScanClass::Chordal, exec)
}

/// Non-cograph count for one order; the order must be fully covered.
pub fn count_noncograph(catalog: &Catalog, order: usize, exec: Execution) -> Result<usize, CatalogError> {
    if !catalog.is_complete(order) {
        return Err(CatalogError::IncompleteCoverage(order));
    }
    let sub = Catalog {
        coverage: BTreeMap::from([(order, Coverage::Complete)]),
        entries: catalog.entries.iter().filter(|e| e.order == order).cloned().collect(),
    };
    Ok(scan_noncograph(&sub, order, exec)?.count(order).unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_entry() {
        let c = Catalog::parse("24 12 4 | (1 2), (1 2 3 4)").unwrap();
        let e = &c.entries()[0];
        assert_eq!((e.order, e.index, e.degree), (24, 12, 4));
        assert_eq!(e.build().unwrap().order(), 24);
        assert_eq!(e.name, None);
    }

    #[test]
    fn order_validation() {
        let c = Catalog::parse("24 1 4 | (1 2 3), (1 2)(3 4)").unwrap();
        assert_eq!(
            c.validate(Execution::Sequential),
            Err(CatalogError::OrderValidationFailed {
                order: 24,
                index: 1,
                computed: 12
            })
        );
    }

    #[test]
    fn empty_and_malformed() {
        assert!(Catalog::parse("").unwrap().entries().is_empty());
        assert!(Catalog::parse("# only comments\n\n").unwrap().entries().is_empty());
        assert!(matches!(
            Catalog::parse("\n6 1 3 (1 2)"),
            Err(CatalogError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Catalog::parse("6 1 3 | (1 4)"),
            Err(CatalogError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Catalog::parse("#coverage 6 maybe"),
            Err(CatalogError::Parse { .. })
        ));
        assert_eq!(
            Catalog::parse("2 1 2 | (1 2)\n2 1 2 | (1 2)"),
            Err(CatalogError::DuplicateId(2, 1))
        );
    }

    #[test]
    fn commas_inside_cycles() {
        let c = Catalog::parse("6 2 3 | (1,2,3), (1,2) | S3").unwrap();
        assert_eq!(c.entries()[0].generators.len(), 2);
        assert_eq!(c.entries()[0].name.as_deref(), Some("S3"));
    }

    #[test]
    fn round_trip_and_sorting() {
        let text = "#coverage 4 complete\n4 2 4 | (1 2), (3 4)\n4 1 4 | (1 2 3 4) | C4\n";
        let c = Catalog::parse(text).unwrap();
        assert_eq!(c.entries()[0].index, 1);
        assert_eq!(Catalog::parse(&c.serialize()).unwrap(), c);
        let shipped = Catalog::shipped();
        assert_eq!(Catalog::parse(&shipped.serialize()).unwrap(), shipped);
    }

    #[test]
    fn coverage_queries() {
        let c = Catalog::shipped();
        c.require_complete(36).unwrap();
        assert_eq!(c.require_complete(37), Err(CatalogError::IncompleteCoverage(37)));
        assert_eq!(
            count_noncograph(&c, 40, Execution::Sequential),
            Err(CatalogError::IncompleteCoverage(40))
        );
        assert_eq!(c.get(24, 12).unwrap().name.as_deref(), Some("S4"));
    }

    #[test]
    fn small_orders_are_cographs() {
        let scan = scan_noncograph(&Catalog::shipped(), 23, Execution::default()).unwrap();
        assert!(scan.ids().is_empty());
        assert_eq!(scan.rows.len(), 23);
    }
}
