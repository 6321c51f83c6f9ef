use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use commgraph::catalog::{scan_noncograph, Catalog, ScanResult, TABLE1_IDS, TABLE2_COUNTS};
use commgraph::classes::{find_induced, Pattern, SearchPattern};
use commgraph::classify::{classify_group, ClassReport, ClassifyOptions};
use commgraph::exec::{init_threads_from_env, Execution, THREADS_ENV};
use commgraph::graph::{commuting_graph_with, VertexScope};
use commgraph::suite::{run_theorem_suite, SuiteOptions};
use commgraph::{FamilySpec, Group};

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "commgraph",
    version,
    about = "Commuting graphs of finite groups and their graph classes"
)]
struct Cli {
    /// Run every computation on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the commuting graph of one group.
    Classify {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Scope::Noncentral)]
        scope: Scope,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Groups of order at most 36 whose commuting graph is not a cograph.
    Table1 {
        /// Catalog file; the built-in catalog when omitted.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Non-cograph counts per fully covered order.
    Table2 {
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long, default_value_t = 72)]
        max_order: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Lexicographically least induced P4, C4, C5, 2K2 or hole of length at least k.
    Witness {
        #[command(flatten)]
        source: Source,
        /// P4, C4, C5, 2K2 or hole:k
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum, default_value_t = Scope::Noncentral)]
        scope: Scope,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run the theorem suite.
    Verify {
        /// Include Sz(8) and the order 48 to 72 catalog scans.
        #[arg(long)]
        slow: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Write a commuting graph to a file.
    ExportGraph {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Scope::Noncentral)]
        scope: Scope,
        #[arg(long = "graph-format", value_enum, default_value_t = GraphFormat::Edges)]
        graph_format: GraphFormat,
        /// Also write `vertex element label` lines to this file.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
}

/// A group given by family spec or by catalog ID.
#[derive(Args)]
struct Source {
    /// Family such as sym:4, gdih:3,3, psl2:7, D12, Q8 or sym:3*cyclic:2.
    #[arg(long, conflicts_with_all = ["catalog", "id"])]
    family: Option<String>,
    /// Catalog file; the built-in catalog when omitted.
    #[arg(long, requires = "id")]
    catalog: Option<PathBuf>,
    /// Catalog ID as order,index.
    #[arg(long)]
    id: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scope {
    All,
    Noncentral,
}

impl From<Scope> for VertexScope {
    fn from(s: Scope) -> Self {
        match s {
            Scope::All => VertexScope::All,
            Scope::Noncentral => VertexScope::NonCentral,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Edges,
    Packed,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn input(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.to_string(),
    }
}

fn mismatch(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_VERIFY,
        message: message.to_string(),
    }
}

fn load_catalog(path: Option<&Path>) -> Result<Catalog, Failure> {
    match path {
        Some(p) => Catalog::load(p).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => Ok(Catalog::shipped()),
    }
}

fn parse_id(text: &str) -> Result<(usize, usize), Failure> {
    let t = text.trim().trim_start_matches('[').trim_end_matches(']');
    let (a, b) = t
        .split_once(',')
        .ok_or_else(|| input(format!("bad ID {text:?}, expected order,index")))?;
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| input(format!("bad ID {text:?}")));
    Ok((num(a)?, num(b)?))
}

fn resolve(source: &Source) -> Result<(String, Group), Failure> {
    match (&source.family, &source.id) {
        (Some(f), None) => {
            let spec: FamilySpec = f.parse().map_err(input)?;
            let group = spec.build().map_err(|e| input(format!("{spec}: {e}")))?;
            Ok((spec.to_string(), group))
        }
        (None, Some(id)) => {
            let (order, index) = parse_id(id)?;
            let catalog = load_catalog(source.catalog.as_deref())?;
            let entry = catalog.get(order, index).map_err(input)?;
            let group = entry.build().map_err(input)?;
            Ok((format!("[{order},{index}]"), group))
        }
        _ => Err(input("give exactly one of --family or --id")),
    }
}

fn emit_report(report: &ClassReport, format: Format) -> String {
    match format {
        Format::Table => report.to_table(),
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes") + "\n",
        Format::Csv => format!("{}\n{}\n", ClassReport::csv_header(), report.to_csv_row()),
    }
}

fn scan_text(scan: &ScanResult, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(scan).expect("scan serializes") + "\n",
        Format::Csv => {
            let mut out = String::from("order,index,name,pattern,witness\n");
            for e in scan.rows.iter().flat_map(|r| &r.ids) {
                let _ = writeln!(
                    out,
                    "{},{},\"{}\",{},\"{}\"",
                    e.order,
                    e.index,
                    e.name.as_deref().unwrap_or(""),
                    e.pattern,
                    e.witness.join(" ~ ")
                );
            }
            out
        }
        Format::Table => {
            let mut out = String::new();
            for e in scan.rows.iter().flat_map(|r| &r.ids) {
                let _ = writeln!(
                    out,
                    "[{},{}]  {:<24} {}: {}",
                    e.order,
                    e.index,
                    e.name.as_deref().unwrap_or("-"),
                    e.pattern,
                    e.witness.join(" ~ ")
                );
            }
            out
        }
    }
}

fn table1(catalog: Option<&Path>, format: Format, exec: Execution) -> Result<String, Failure> {
    let catalog = load_catalog(catalog)?;
    catalog.require_complete(36).map_err(input)?;
    let scan = scan_noncograph(&catalog, 36, exec).map_err(input)?;
    let out = scan_text(&scan, format);
    let got = scan.ids();
    if got != TABLE1_IDS {
        print!("{out}");
        return Err(mismatch(format!("expected {TABLE1_IDS:?}, got {got:?}")));
    }
    Ok(out)
}

fn table2(catalog: Option<&Path>, max_order: usize, format: Format, exec: Execution) -> Result<String, Failure> {
    let catalog = load_catalog(catalog)?;
    let scan = scan_noncograph(&catalog, max_order, exec).map_err(input)?;
    let rows: Vec<(usize, usize, Option<usize>)> = scan
        .rows
        .iter()
        .map(|r| {
            let expected = TABLE2_COUNTS.iter().find(|(o, _)| *o == r.order).map(|&(_, c)| c);
            (r.order, r.count(), expected)
        })
        .filter(|&(_, count, expected)| count > 0 || expected.is_some())
        .collect();
    let out = match format {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|&(order, count, expected)| json!({"order": order, "count": count, "expected": expected}))
                .collect();
            serde_json::to_string_pretty(&json!({"rows": rows, "skipped": scan.skipped})).expect("serializes") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("order,count,expected\n");
            for (order, count, expected) in &rows {
                let e = expected.map(|e| e.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{order},{count},{e}");
            }
            out
        }
        Format::Table => {
            let mut out = String::from("order  count  expected\n");
            for (order, count, expected) in &rows {
                let e = expected.map(|e| e.to_string()).unwrap_or_else(|| "-".into());
                let mark = if expected.is_some_and(|e| e != *count) {
                    "  MISMATCH"
                } else {
                    ""
                };
                let _ = writeln!(out, "{order:>5}  {count:>5}  {e:>8}{mark}");
            }
            if !scan.skipped.is_empty() {
                let list: Vec<String> = scan.skipped.iter().map(|o| o.to_string()).collect();
                let _ = writeln!(out, "not fully covered: {}", list.join(", "));
            }
            out
        }
    };
    let bad: Vec<String> = rows
        .iter()
        .filter(|(_, c, e)| e.is_some_and(|e| e != *c))
        .map(|(o, c, e)| format!("order {o}: {c} != {}", e.unwrap_or(0)))
        .collect();
    if !bad.is_empty() {
        print!("{out}");
        return Err(mismatch(bad.join("; ")));
    }
    Ok(out)
}

fn witness(source: &Source, pattern: &str, scope: Scope, format: Format, exec: Execution) -> Result<String, Failure> {
    let search: SearchPattern = pattern.parse().map_err(input)?;
    let (name, group) = resolve(source)?;
    let gamma = commuting_graph_with(&group, scope.into(), exec);
    let found = find_induced(&gamma, search).map_err(input)?;
    let elements: Option<Vec<usize>> = found.as_ref().map(|v| v.iter().map(|&x| gamma.label(x)).collect());
    let labels: Option<Vec<String>> = elements.as_ref().map(|v| v.iter().map(|&e| group.label(e)).collect());
    let shown = found
        .as_ref()
        .map(|v| match search {
            SearchPattern::HoleAtLeast(_) => Pattern::cycle(v.len()).to_string(),
            fixed => fixed.pattern().to_string(),
        })
        .unwrap_or_else(|| match search {
            SearchPattern::HoleAtLeast(k) => format!("hole of length at least {k}"),
            fixed => fixed.pattern().to_string(),
        });
    let out = match format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "group": name,
                "pattern": shown,
                "found": found.is_some(),
                "elements": elements,
                "labels": labels,
            }))
            .expect("serializes")
                + "\n"
        }
        Format::Csv => format!(
            "group,pattern,found,labels\n\"{name}\",{shown},{},\"{}\"\n",
            found.is_some(),
            labels.as_ref().map(|l| l.join(" ~ ")).unwrap_or_default()
        ),
        Format::Table => match &labels {
            Some(l) => format!("{name}: {shown}: {}\n", l.join(" ~ ")),
            None => format!("{name}: no induced {shown}\n"),
        },
    };
    if found.is_none() {
        print!("{out}");
        return Err(mismatch(format!("no induced {shown} in the commuting graph of {name}")));
    }
    Ok(out)
}

fn export_graph(
    source: &Source,
    out: &Path,
    labels: Option<&Path>,
    scope: Scope,
    format: GraphFormat,
    exec: Execution,
) -> Result<String, Failure> {
    let (name, group) = resolve(source)?;
    let gamma = commuting_graph_with(&group, scope.into(), exec);
    let text = match format {
        GraphFormat::Edges => gamma.to_edge_list(),
        GraphFormat::Packed => gamma.to_packed() + "\n",
    };
    std::fs::write(out, text).map_err(|e| input(format!("{}: {e}", out.display())))?;
    if let Some(path) = labels {
        let mut text = String::new();
        for v in 0..gamma.vertex_count() {
            let e = gamma.label(v);
            let _ = writeln!(text, "{v} {e} {}", group.label(e));
        }
        std::fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    }
    Ok(format!(
        "{name}: {} vertices, {} edges written to {}\n",
        gamma.vertex_count(),
        gamma.edge_count(),
        out.display()
    ))
}

fn run(cli: Cli) -> Result<String, Failure> {
    init_threads_from_env().map_err(|v| input(format!("{THREADS_ENV}={v:?} is not a positive integer")))?;
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Classify { source, scope, format } => {
            let (name, group) = resolve(&source)?;
            let options = ClassifyOptions {
                scope: scope.into(),
                exec,
                ..ClassifyOptions::default()
            };
            let report = classify_group(&group, &name, &options).map_err(mismatch)?;
            Ok(emit_report(&report, format))
        }
        Command::Table1 { catalog, format } => table1(catalog.as_deref(), format, exec),
        Command::Table2 {
            catalog,
            max_order,
            format,
        } => table2(catalog.as_deref(), max_order, format, exec),
        Command::Witness {
            source,
            pattern,
            scope,
            format,
        } => witness(&source, &pattern, scope, format, exec),
        Command::Verify { slow, format } => {
            let report = run_theorem_suite(&SuiteOptions { slow, exec });
            let out = match format {
                Format::Table => report.to_table(),
                Format::Json => serde_json::to_string_pretty(&report).expect("serializes") + "\n",
                Format::Csv => report.to_csv(),
            };
            if report.passed() {
                Ok(out)
            } else {
                print!("{out}");
                let failed: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name.as_str())
                    .collect();
                Err(mismatch(format!("failed: {}", failed.join(", "))))
            }
        }
        Command::ExportGraph {
            source,
            out,
            scope,
            graph_format,
            labels,
        } => export_graph(&source, &out, labels.as_deref(), scope, graph_format, exec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
