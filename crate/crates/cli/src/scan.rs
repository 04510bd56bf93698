//! `flowgp scan ...`: batch runs over permutations and graph families.

use std::collections::HashSet;
use std::fs::OpenOptions;
use std::path::Path;

use clap::Subcommand;
use serde_json::json;

use flowgp::scan::{multigraphs, random_multigraphs, scan_graphs, simple_graphs, Checks, GraphVerdict};
use flowgp::schubert::{conjecture_scan, theorem_c_scan, ScanReport};
use flowgp::MultiGraph;

use crate::{CliError, Common, Format, Report};

/// Graphs checked between two flushes of the output file.
const BATCH: usize = 64;

#[derive(Subcommand)]
pub enum ScanCommand {
    /// Saturated Newton polytope and GP components of the Grothendieck polynomial, all of S_n.
    Conjecture {
        #[arg(long)]
        n: usize,
    },
    /// Theorem C checks for every 1w in S_n with w dominant.
    TheoremC {
        #[arg(long)]
        n: usize,
    },
    /// Graph-side checks over a family. With `--output x.csv --format csv`,
    /// rows are appended in batches and hashes already in the file are skipped.
    Graphs {
        #[arg(long, default_value_t = 4)]
        max_vertices: usize,
        #[arg(long, default_value_t = 5)]
        max_edges: usize,
        /// Simple graphs only (ignores --max-edges).
        #[arg(long)]
        simple: bool,
        /// Seeded random multigraphs instead of the exhaustive family.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Subset of theorem-a,encoding,volume,genperm,corollaries.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },
}

pub fn run(cmd: ScanCommand, common: &Common) -> Result<Report, CliError> {
    match cmd {
        ScanCommand::Conjecture { n } => Ok(permutation_report(conjecture_scan(n)?, false)),
        ScanCommand::TheoremC { n } => Ok(permutation_report(theorem_c_scan(n)?, true)),
        ScanCommand::Graphs { max_vertices, max_edges, simple, random, seed, checks } => {
            let graphs = match (random, simple) {
                (Some(count), _) => random_multigraphs(count, seed, max_vertices, max_edges),
                (None, true) => simple_graphs(max_vertices),
                (None, false) => multigraphs(max_vertices, max_edges),
            };
            graph_scan(&graphs, parse_checks(&checks)?, seed, common)
        }
    }
}

fn permutation_report(r: ScanReport, theorem_c: bool) -> Report {
    let failed = |x: &flowgp::schubert::PermutationReport| {
        if theorem_c { !x.theorem_c_holds() } else { !x.conjecture_holds() }
    };
    let mut text = r.to_string();
    for x in r.reports.iter().filter(|x| failed(x)) {
        text.push_str(&format!("\n{}: {}", x.pi, x.counterexample.as_deref().unwrap_or("failed")));
    }
    let header = ["pi", "pipe_dreams", "snp", "components_gp", "schubert_01", "schubert_saturated", "counterexample"];
    let rows = r
        .reports
        .iter()
        .map(|x| {
            vec![
                x.pi.to_string(),
                x.pipe_dreams.to_string(),
                x.snp.to_string(),
                x.components_gp.to_string(),
                x.schubert_01.to_string(),
                x.schubert_saturated.to_string(),
                x.counterexample.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let ok = r.counterexamples == 0;
    let mut report = Report::new(json!(r), text).verdict(ok);
    report.csv = Some((header.iter().map(|s| s.to_string()).collect(), rows));
    report
}

fn parse_checks(names: &[String]) -> Result<Checks, CliError> {
    if names.is_empty() {
        return Ok(Checks::all());
    }
    let mut c = Checks { theorem_a: false, encoding: false, volume: false, genperm: false, corollaries: false };
    for name in names {
        match name.as_str() {
            "theorem-a" => c.theorem_a = true,
            "encoding" => c.encoding = true,
            "volume" => c.volume = true,
            "genperm" => c.genperm = true,
            "corollaries" => c.corollaries = true,
            other => return Err(CliError::Usage(format!("unknown check {other:?}"))),
        }
    }
    Ok(c)
}

fn header() -> Vec<String> {
    let mut h = vec!["hash".to_string(), "graph".into(), "edges".into()];
    h.extend(GraphVerdict::default().flags().iter().map(|(k, _)| k.to_string()));
    h.push("holds".into());
    h.push("counterexample".into());
    h
}

fn row(v: &GraphVerdict) -> Vec<String> {
    let mut r = vec![v.hash.clone(), v.graph.clone(), v.edges.to_string()];
    r.extend(v.flags().iter().map(|(_, f)| f.map(|b| b.to_string()).unwrap_or_default()));
    r.push(v.holds().to_string());
    r.push(v.counterexample.clone().unwrap_or_default());
    r
}

/// Hashes and `holds` values of rows already in a scan file.
fn previous_rows(path: &Path) -> Result<Vec<(String, bool)>, CliError> {
    if !path.exists() || std::fs::metadata(path)?.len() == 0 {
        return Ok(Vec::new());
    }
    let mut rd = csv::Reader::from_path(path)?;
    let cols = rd.headers()?.clone();
    if cols.iter().collect::<Vec<_>>() != header() {
        return Err(CliError::Usage(format!("{} is not a graph scan file with the current columns", path.display())));
    }
    let holds = cols.iter().position(|c| c == "holds").expect("header has holds");
    rd.records()
        .map(|rec| {
            let rec = rec?;
            Ok((rec[0].to_string(), &rec[holds] == "true"))
        })
        .collect()
}

fn graph_scan(graphs: &[MultiGraph], checks: Checks, seed: u64, common: &Common) -> Result<Report, CliError> {
    let resume = match (&common.output, common.format) {
        (Some(path), Format::Csv) => Some(path.clone()),
        _ => None,
    };
    let previous = match &resume {
        Some(p) => previous_rows(p)?,
        None => Vec::new(),
    };
    let skip: HashSet<String> = previous.iter().map(|(h, _)| h.clone()).collect();
    let mut writer = match &resume {
        Some(p) => {
            let fresh = previous.is_empty();
            let file = OpenOptions::new().create(true).append(true).open(p)?;
            let mut w = csv::Writer::from_writer(file);
            if fresh {
                w.write_record(header())?;
                w.flush()?;
            }
            Some(w)
        }
        None => None,
    };

    let mut verdicts = Vec::new();
    // the same graph can appear twice in a random family; check it once
    let mut seen = skip.clone();
    let todo: Vec<MultiGraph> = graphs.iter().filter(|g| seen.insert(g.hash_hex())).cloned().collect();
    for chunk in todo.chunks(BATCH) {
        let batch = scan_graphs(chunk, checks, seed, &HashSet::new())?;
        if let Some(w) = writer.as_mut() {
            for v in &batch {
                w.write_record(row(v))?;
            }
            w.flush()?;
        }
        verdicts.extend(batch);
    }

    let failures: Vec<&GraphVerdict> = verdicts.iter().filter(|v| !v.holds()).collect();
    let old_failures = previous.iter().filter(|(_, ok)| !ok).count();
    let total = previous.len() + verdicts.len();
    let failed = failures.len() + old_failures;
    let mut text = format!(
        "{failed} failing / {total} graphs ({} checked now, {} resumed)",
        verdicts.len(),
        previous.len()
    );
    let mut by_flag: Vec<(&str, usize)> = Vec::new();
    for (i, (name, _)) in GraphVerdict::default().flags().iter().enumerate() {
        let n = verdicts.iter().filter(|v| v.flags()[i].1 == Some(false)).count();
        if n > 0 {
            by_flag.push((name, n));
        }
    }
    for (name, n) in &by_flag {
        text.push_str(&format!("\n  {name}: {n} failing"));
    }
    if let Some(v) = failures.first() {
        text.push_str(&format!("\nfirst: {} {}", v.graph, v.counterexample.as_deref().unwrap_or("")));
    }
    let json = json!({
        "graphs": total,
        "checked": verdicts.len(),
        "resumed": previous.len(),
        "failing": failed,
        "failing_by_check": by_flag.iter().map(|(k, n)| json!({ "check": k, "count": n })).collect::<Vec<_>>(),
        "verdicts": verdicts,
    });
    let mut report = Report::new(json, text).verdict(failed == 0);
    report.csv = Some((header(), verdicts.iter().map(row).collect()));
    report.streamed = writer.is_some();
    Ok(report)
}
