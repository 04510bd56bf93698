use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flowgp::arrays::{tri_array, verify_encoding_chain};
use flowgp::flow::{feasible_by_cuts, feasible_by_maxflow, kostant, NetflowVector};
use flowgp::genperm::minkowski_to_z;
use flowgp::newton::{
    ehrhart, ld_polynomial, rd_polynomial, reduced_rd, snp_check, verify_corollaries, verify_genperm, verify_volume,
    volume, y_parameters, z_closed_form, z_parameters, z_parameters_level,
};
use flowgp::reduction::{strategy_from_name, verify_theorem_a, LdMultiset, Strategy};
use flowgp::schubert::{grothendieck, pipe_dreams, schubert, transition, verify_theorem_c};
use flowgp::{EdgeSubset, MultiGraph, Permutation};

mod scan;

#[derive(Parser)]
#[command(name = "flowgp", version, about = "Reduction trees, flow polytopes, generalized permutahedra and pipe dreams")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for scans (default: all cores).
    #[arg(long, global = true, env = "FLOWGP_THREADS")]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Left-degree sequences of a reduction tree, with F-labels.
    Ld {
        graph: String,
        #[arg(long, default_value = "special")]
        strategy: String,
    },
    /// Constraint array Tri_G(F).
    Tri {
        graph: String,
        /// Edge subset F, e.g. `2-3,2-4`.
        #[arg(long = "F", default_value = "")]
        f: String,
        /// Print LaTeX rows.
        #[arg(long)]
        latex: bool,
    },
    /// Number of integer flows with the given netflow.
    Kostant {
        graph: String,
        #[arg(allow_hyphen_values = true)]
        netflow: String,
    },
    /// Whether a flow with the given netflow exists.
    Feasible {
        graph: String,
        #[arg(allow_hyphen_values = true)]
        netflow: String,
    },
    /// Normalized volume of the flow polytope of the tilde graph.
    Volume { graph: String },
    /// Ehrhart polynomial with direct dilation checks.
    Ehrhart { graph: String },
    /// Left- and right-degree polynomials and their support checks.
    Newton { graph: String },
    /// z- and y-parameters of left-degree polytopes.
    Genperm {
        graph: String,
        #[arg(long = "F", conflicts_with = "k")]
        f: Option<String>,
        /// Homogeneous component of codimension k.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Schubert polynomial from reduced pipe dreams.
    Schubert {
        perm: String,
        #[arg(long, default_value = "x")]
        var: String,
    },
    /// Grothendieck polynomial from all pipe dreams.
    Grothendieck {
        perm: String,
        #[arg(long, default_value = "t")]
        var: String,
    },
    /// Schubert polynomial of 1w, w dominant, by the transition rule.
    Transition {
        perm: String,
        #[arg(long, default_value = "x")]
        var: String,
    },
    /// Run one verifier.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Batch scans.
    Scan {
        #[command(subcommand)]
        what: scan::ScanCommand,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// LD multisets agree across strategies, the special tree and the arrays.
    TheoremA {
        graph: String,
        #[arg(long, value_delimiter = ',', default_value = "special,lex,rightmost,random:1")]
        strategies: Vec<String>,
    },
    /// |Sol_G(F)| = K_Gr(G)(a) = K(b) and the projections, for one F or all.
    Encoding {
        graph: String,
        #[arg(long = "F")]
        f: Option<String>,
    },
    /// Hyperplane slices and lattice-point counts of the top component.
    Corollaries { graph: String },
    /// z-parameter, lattice-point and y-decomposition statements for every F and k.
    Genperm { graph: String },
    /// Volume, Ehrhart polynomial and dilation counts.
    Volume { graph: String },
    /// Polytopal support checks for 1w, w dominant.
    TheoremC { perm: String },
}

/// A rendered command result.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub csv: Option<(Vec<String>, Vec<Vec<String>>)>,
    /// `Some(false)` when a verification failed.
    pub verified: Option<bool>,
    /// Rows already went to `--output`; only the summary is printed.
    pub streamed: bool,
}

impl Report {
    pub fn new(json: Value, text: String) -> Self {
        Report { json, text, csv: None, verified: None, streamed: false }
    }

    pub fn verdict(mut self, ok: bool) -> Self {
        self.verified = Some(ok);
        self
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("json")),
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Format::Csv => match &self.csv {
                Some((header, rows)) => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(header).expect("csv");
                    for r in rows {
                        w.write_record(r).expect("csv");
                    }
                    String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
                }
                None => json_to_csv(&self.json),
            },
        }
    }
}

/// Flat `key,value` rendering of a JSON object.
fn json_to_csv(v: &Value) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["key", "value"]).expect("csv");
    if let Value::Object(map) = v {
        for (k, x) in map {
            let cell = match x {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            w.write_record([k.as_str(), cell.as_str()]).expect("csv");
        }
    } else {
        w.write_record(["value", v.to_string().as_str()]).expect("csv");
    }
    String::from_utf8(w.into_inner().expect("csv")).expect("utf8")
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] flowgp::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

pub fn read_graph(arg: &str) -> Result<MultiGraph, CliError> {
    let path = std::path::Path::new(arg);
    if path.is_file() {
        Ok(MultiGraph::parse(&fs::read_to_string(path)?)?)
    } else {
        Ok(MultiGraph::parse(arg)?)
    }
}

fn read_subset(g: &MultiGraph, f: &str) -> Result<EdgeSubset, CliError> {
    if f.trim().is_empty() {
        Ok(EdgeSubset::empty())
    } else {
        Ok(EdgeSubset::parse(g, f)?)
    }
}

fn seq(s: &[u32]) -> String {
    format!("({})", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn ld_report(g: &MultiGraph, strategy: &dyn Strategy) -> Report {
    let ld = LdMultiset::of(g, strategy);
    let mut text = String::new();
    let mut rows = Vec::new();
    for ((s, f), m) in &ld.entries {
        let mult = if *m > 1 { format!("  x{m}") } else { String::new() };
        text.push_str(&format!("{}  F={}  codim {}{}\n", seq(s), f, f.len(), mult));
        rows.push(vec![seq(s), f.to_string(), f.len().to_string(), m.to_string()]);
    }
    text.push_str(&format!("{} leaves, codim profile {:?}\n", ld.total(), ld.codim_profile()));
    let json = json!({
        "graph": g.to_json(),
        "strategy": strategy.name(),
        "leaves": ld.total(),
        "codim_profile": ld.codim_profile(),
        "sequences": ld.to_json(),
    });
    let mut r = Report::new(json, text);
    r.csv = Some((vec!["sequence".into(), "F".into(), "codim".into(), "multiplicity".into()], rows));
    r
}

fn poly_report(name: &str, p: &flowgp::SparsePolynomial, var: &str, extra: Value) -> Report {
    let s = p.to_string_with(var);
    let mut json = json!({ "name": name, "polynomial": s, "terms": p.to_json() });
    if let (Value::Object(a), Value::Object(b)) = (&mut json, extra) {
        a.extend(b);
    }
    Report::new(json, s)
}

fn run(cmd: Command, common: &Common) -> Result<Report, CliError> {
    Ok(match cmd {
        Command::Ld { graph, strategy } => {
            let g = read_graph(&graph)?;
            ld_report(&g, strategy_from_name(&strategy)?.as_ref())
        }
        Command::Tri { graph, f, latex } => {
            let g = read_graph(&graph)?;
            let f = read_subset(&g, &f)?;
            let tri = tri_array(&g, &f)?;
            let rows = if latex { tri.to_latex() } else { tri.to_text() };
            let mut json = tri.to_json();
            json["F"] = json!(f.to_string());
            json["text"] = json!(tri.to_text());
            json["latex"] = json!(tri.to_latex());
            json["solutions"] = json!(tri.solutions().len());
            Report::new(json, rows.join("\n"))
        }
        Command::Kostant { graph, netflow } => {
            let g = read_graph(&graph)?;
            let a = NetflowVector::parse(&netflow)?;
            let k = kostant(&g, &a.0)?;
            Report::new(json!({ "netflow": a.0, "kostant": k }), k.to_string())
        }
        Command::Feasible { graph, netflow } => {
            let g = read_graph(&graph)?;
            let a = NetflowVector::parse(&netflow)?;
            let by_cuts = feasible_by_cuts(&g, &a.0).ok();
            let by_maxflow = feasible_by_maxflow(&g, &a.0)?;
            let text = if by_maxflow { "feasible" } else { "infeasible" };
            Report::new(json!({ "netflow": a.0, "feasible": by_maxflow, "by_cuts": by_cuts }), text.into())
        }
        Command::Volume { graph } => {
            let g = read_graph(&graph)?;
            let v = volume(&g)?;
            Report::new(json!({ "volume": v, "dimension": g.num_edges() + g.n() }), v.to_string())
        }
        Command::Ehrhart { graph } => {
            let g = read_graph(&graph)?;
            let e = ehrhart(&g)?;
            let r = verify_volume(&g)?;
            let mut text = format!("Ehr(t) = {e}\n");
            for (t, value, direct) in &r.dilations {
                text.push_str(&format!("t={t}: {value} (direct count {direct})\n"));
            }
            text.push_str(&format!("volume {} ({})", r.volume, if r.holds { "consistent" } else { "INCONSISTENT" }));
            Report::new(json!({ "ehrhart": e.to_string(), "report": r }), text).verdict(r.holds)
        }
        Command::Newton { graph } => {
            let g = read_graph(&graph)?;
            let l = ld_polynomial(&g);
            let r = rd_polynomial(&g);
            let rr = reduced_rd(&g);
            let lv = snp_check(&l)?;
            let rv = snp_check(&r)?;
            let text = format!(
                "L_G = {l}\n  saturated {} components GP {}\nR_G = {r}\n  saturated {} components GP {}\nreduced R_G = {rr}",
                lv.snp, lv.components_gp, rv.snp, rv.components_gp
            );
            let json = json!({
                "ld_polynomial": l.to_string(),
                "ld_check": lv,
                "rd_polynomial": r.to_string(),
                "rd_check": rv,
                "reduced_rd": rr.to_string(),
            });
            Report::new(json, text)
        }
        Command::Genperm { graph, f, k } => {
            let g = read_graph(&graph)?;
            if let Some(k) = k {
                let z = z_parameters_level(&g, k)?;
                let pts = z.lattice_points().ok();
                let text = format!("z = {:?}\nlattice points: {}", z.values(), pts.as_ref().map_or(0, Vec::len));
                Report::new(json!({ "k": k, "z": z.to_json(), "lattice_points": pts }), text)
            } else {
                let f = read_subset(&g, f.as_deref().unwrap_or(""))?;
                let z = z_parameters(&g, &f)?;
                let y = y_parameters(&g, &f)?;
                let from_y = minkowski_to_z(&y)?;
                let closed = z_closed_form(&g, &f)?;
                let pts = z.lattice_points().ok();
                let text = format!(
                    "z = {:?}\ny = {}\ny reproduces z: {}\nclosed form agrees: {}\nlattice points: {}",
                    z.values(),
                    y.to_json(),
                    from_y == z,
                    closed == z,
                    pts.as_ref().map_or(0, Vec::len)
                );
                let json = json!({
                    "F": f.to_string(),
                    "z": z.to_json(),
                    "y": y.to_json(),
                    "y_matches_z": from_y == z,
                    "closed_form_matches_z": closed == z,
                    "supermodular": z.supermodular_violation().is_none(),
                    "lattice_points": pts,
                });
                Report::new(json, text)
            }
        }
        Command::Schubert { perm, var } => {
            let pi = Permutation::parse(&perm)?;
            poly_report("schubert", &schubert(&pi)?, &var, json!({ "pi": pi }))
        }
        Command::Grothendieck { perm, var } => {
            let pi = Permutation::parse(&perm)?;
            let dreams = pipe_dreams(&pi)?.len();
            poly_report("grothendieck", &grothendieck(&pi)?, &var, json!({ "pi": pi, "pipe_dreams": dreams }))
        }
        Command::Transition { perm, var } => {
            let pi = Permutation::parse(&perm)?;
            let p = transition(&pi)?;
            let agrees = p == schubert(&pi)?;
            poly_report("transition", &p, &var, json!({ "pi": pi, "matches_pipe_dreams": agrees })).verdict(agrees)
        }
        Command::Verify { what } => verify(what)?,
        Command::Scan { what } => scan::run(what, common)?,
    })
}

fn verify(what: Verify) -> Result<Report, CliError> {
    Ok(match what {
        Verify::TheoremA { graph, strategies } => {
            let g = read_graph(&graph)?;
            let boxed: Vec<Box<dyn Strategy>> =
                strategies.iter().map(|s| strategy_from_name(s)).collect::<Result<_, _>>()?;
            let refs: Vec<&dyn Strategy> = boxed.iter().map(|b| b.as_ref()).collect();
            let r = verify_theorem_a(&g, &refs)?;
            let mut text: String = r
                .routes
                .iter()
                .map(|x| format!("{}: {} sequences, {} full-dimensional\n", x.route, x.sequences, x.full_dimensional))
                .collect();
            text.push_str(if r.holds { "all routes agree" } else { "MISMATCH" });
            if let Some(m) = &r.mismatch {
                text.push_str(&format!("\n{} has {} of {} but {} has {}", m.left, m.left_count, seq(&m.sequence), m.right, m.right_count));
            }
            Report::new(json!(r), text).verdict(r.holds)
        }
        Verify::Encoding { graph, f } => {
            let g = read_graph(&graph)?;
            let subsets = match f {
                Some(f) => vec![read_subset(&g, &f)?],
                None => g.source_free_subsets()?,
            };
            let reports: Vec<_> = subsets.iter().map(|f| verify_encoding_chain(&g, f)).collect::<Result<_, _>>()?;
            let ok = reports.iter().all(|r| r.holds);
            let mut text: String = reports
                .iter()
                .map(|r| format!("F={}: Sol {} Gr {} tilde {}{}\n", r.f, r.sol_count, r.gr_count, r.tilde_count,
                    r.counterexample.as_ref().map(|c| format!("  {c}")).unwrap_or_default()))
                .collect();
            text.push_str(if ok { "encoding chain holds" } else { "ENCODING MISMATCH" });
            let counterexample = reports.iter().find(|r| !r.holds).cloned();
            Report::new(json!({ "holds": ok, "subsets": reports, "counterexample": counterexample }), text).verdict(ok)
        }
        Verify::Corollaries { graph } => {
            let g = read_graph(&graph)?;
            let r = verify_corollaries(&g)?;
            let text = format!(
                "hyperplane slices: {}\nvolume = lattice points of P^0: {}\nL^0 coefficients all 1: {}{}",
                r.hyperplane_slices,
                opt(r.lattice_point_volume),
                opt(r.top_component_01),
                r.counterexample.as_ref().map(|c| format!("\ncounterexample: {c}")).unwrap_or_default()
            );
            Report::new(json!(r), text).verdict(r.holds)
        }
        Verify::Genperm { graph } => {
            let g = read_graph(&graph)?;
            let r = verify_genperm(&g)?;
            let ok = r.counterexamples.is_empty();
            let mut text = format!(
                "{} subsets ({} with empty LD), {} with negative b\nsupermodular {}\nLD(G,F) lattice points {}\nlevel lattice points {}\ny decomposition {}\nclosed form {}\nlargest-closed-subset form {}",
                r.subsets_checked, r.empty_subsets, r.negative_b_subsets, r.supermodular, r.f_lattice_points,
                r.level_lattice_points, r.minkowski_y, r.closed_form, r.largest_closed_form
            );
            for (k, v) in &r.counterexamples {
                text.push_str(&format!("\n{k}: {v}"));
            }
            Report::new(json!(r), text).verdict(ok)
        }
        Verify::Volume { graph } => {
            let g = read_graph(&graph)?;
            let r = verify_volume(&g)?;
            let text = format!("volume {} full-dimensional leaves {} Ehrhart consistent {}", r.volume, r.full_dimensional_leaves, r.holds);
            Report::new(json!(r), text).verdict(r.holds)
        }
        Verify::TheoremC { perm } => {
            let pi = Permutation::parse(&perm)?;
            let r = verify_theorem_c(&pi)?;
            let ok = r.theorem_c_holds();
            let text = format!(
                "{}: {} pipe dreams, saturated {}, components GP {}, Schubert 0/1 {}, Schubert saturated {}",
                r.pi, r.pipe_dreams, r.snp, r.components_gp, r.schubert_01, r.schubert_saturated
            );
            Report::new(json!(r), text).verdict(ok)
        }
    })
}

fn opt(b: Option<bool>) -> String {
    b.map_or("n/a (G\\0 has an undirected cycle)".into(), |x| x.to_string())
}

pub fn set_threads(common: &Common) {
    if let Some(n) = common.threads {
        // a second call fails harmlessly when a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    set_threads(&cli.common);
    let report = match run(cli.command, &cli.common) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.common.output {
        Some(_) if report.streamed => std::io::stdout().write_all(report.render(Format::Text).as_bytes()),
        Some(path) => fs::write(path, report.render(cli.common.format)),
        None => std::io::stdout().write_all(report.render(cli.common.format).as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match report.verified {
        Some(false) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
