//! The `at-lab` command line: graph generation and products, Alon-Tarsi
//! solving with certificates, `diff` computation, certificate verification and
//! the claim suite.

pub mod document;
pub mod error;

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use atlab::atsolver::{
    at_bipartite, at_exact_with, at_lower_bound, degeneracy_orientation, AtResult, AtValue,
    ExactOptions,
};
use atlab::construct::{verify_certificate, Verdict};
use atlab::eulerian::{eulerian_diff_poly, eulerian_tally_enumerate};
use atlab::graph::{
    cartesian_product, complete, corona, cycle, hypercube, path, star, tree_from_pruefer,
};
use atlab::theorems::{
    jobs_for, render_table, run_jobs, tree_catalog, Claim, ClaimReport, Instance, Outcome,
    SuiteParams, DEFAULT_SEED,
};
use atlab::{Budget, Engine, Graph, Orientation};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

pub use document::{parse_graph_text, CertificateDocument, GraphDocument, Provenance};
pub use error::{exit, CliError};

#[derive(Debug, Parser)]
#[command(
    name = "at-lab",
    version,
    about = "Alon-Tarsi numbers of graphs and their products"
)]
pub struct Cli {
    /// Worker threads for parallel solvers.
    #[arg(long, global = true, env = "AT_LAB_THREADS")]
    pub threads: Option<usize>,
    /// Largest arc count for subset enumeration.
    #[arg(long, global = true, env = "AT_LAB_ENUM_CAP")]
    pub enum_cap: Option<usize>,
    /// Wall-clock limit per orientation search, in seconds.
    #[arg(
        long,
        global = true,
        env = "AT_LAB_TIME_BUDGET",
        value_name = "SECONDS"
    )]
    pub time_budget: Option<f64>,
    /// Largest live-monomial bound for the coefficient engine.
    #[arg(long, global = true)]
    pub poly_states: Option<u128>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph from a standard family.
    Gen(GenArgs),
    /// Cartesian product of two graphs.
    Product(PairArgs),
    /// Corona of two graphs: one copy of the second per vertex of the first.
    Corona(PairArgs),
    /// Alon-Tarsi number of a graph.
    At(AtArgs),
    /// Even/odd Eulerian subdigraph counts of an orientation.
    Diff(DiffArgs),
    /// Re-check a certificate.
    Verify(VerifyArgs),
    /// Run claim checkers.
    Theorems(TheoremArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Hypercube,
    Cycle,
    Path,
    Star,
    Complete,
    Tree,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Hypercube => "hypercube",
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::Star => "star",
            Family::Complete => "complete",
            Family::Tree => "tree",
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub family: Family,
    /// Dimension or vertex count (not used for trees).
    pub size: Option<usize>,
    /// Prüfer sequence of a tree, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub pruefer: Option<Vec<usize>>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AtArgs {
    pub graph: PathBuf,
    /// Exhaustive search with refutations (the default).
    #[arg(long, conflicts_with_all = ["bipartite", "bounds"])]
    pub exact: bool,
    /// Closed form for bipartite graphs.
    #[arg(long, conflicts_with = "bounds")]
    pub bipartite: bool,
    /// Lower and upper bounds only, no search.
    #[arg(long)]
    pub bounds: bool,
    /// Write the certificate orientation here.
    #[arg(long)]
    pub cert: Option<PathBuf>,
    /// Search on all worker threads instead of one.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Args)]
pub struct DiffArgs {
    #[arg(long, conflicts_with_all = ["graph", "arcs"])]
    pub cert: Option<PathBuf>,
    #[arg(long, requires = "arcs")]
    pub graph: Option<PathBuf>,
    /// Arcs as `tail head` lines, in any order.
    #[arg(long, requires = "graph")]
    pub arcs: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub cert: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeSet {
    /// Paths, stars, brooms and seeded Prüfer trees.
    Catalog,
    Paths,
    Stars,
}

#[derive(Debug, Args)]
pub struct TheoremArgs {
    /// Claim to run (repeatable); all claims when omitted.
    #[arg(long = "claim")]
    pub claims: Vec<String>,
    /// Range `a..b` (inclusive) or a single value.
    #[arg(long, value_parser = parse_range)]
    pub n: Option<RangeInclusive<usize>>,
    #[arg(long, value_parser = parse_range)]
    pub k: Option<RangeInclusive<usize>>,
    /// Largest cycle length for toroidal grids.
    #[arg(long)]
    pub max: Option<usize>,
    #[arg(long, value_enum)]
    pub trees: Option<TreeSet>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Aligned table instead of JSON lines.
    #[arg(long)]
    pub table: bool,
}

pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("{t:?} is not a number"))
    };
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => {
            let v = num(s)?;
            v..=v
        }
    };
    if range.is_empty() {
        return Err(format!("empty range {s:?}"));
    }
    Ok(range)
}

fn budget(cli: &Cli) -> Result<Budget, CliError> {
    let mut b = Budget::default();
    if let Some(cap) = cli.enum_cap {
        b.enum_cap = cap;
    }
    if let Some(states) = cli.poly_states {
        b.poly_states = states;
    }
    if let Some(secs) = cli.time_budget {
        if !(secs.is_finite() && secs > 0.0) {
            return Err(CliError::Usage(format!(
                "time budget must be positive, got {secs}"
            )));
        }
        b.time = Some(Duration::from_secs_f64(secs));
    }
    Ok(b)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

pub fn load_graph(path: &Path) -> Result<(Graph, GraphDocument), CliError> {
    let doc = parse_graph_text(&read(path)?)?;
    Ok((doc.to_graph()?, doc))
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Runs one invocation; returns the process exit code. Documents and results
/// go to `out`, summaries and timings to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    let budget = budget(cli)?;
    match &cli.command {
        Command::Gen(a) => cmd_gen(a, out, err),
        Command::Product(a) => cmd_compose(a, false, out, err),
        Command::Corona(a) => cmd_compose(a, true, out, err),
        Command::At(a) => {
            let threads = if a.parallel { cli.threads } else { Some(1) };
            pooled(threads, out, err, |o, _| cmd_at(a, &budget, o))
        }
        Command::Diff(a) => cmd_diff(a, &budget, out),
        Command::Verify(a) => pooled(cli.threads, out, err, |o, _| cmd_verify(a, &budget, o)),
        Command::Theorems(a) => {
            pooled(cli.threads, out, err, |o, e| cmd_theorems(a, &budget, o, e))
        }
    }
}

/// Runs `f` inside a pool of `threads` workers, buffering its output.
fn pooled(
    threads: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write, &mut dyn Write) -> Result<u8, CliError> + Send,
) -> Result<u8, CliError> {
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let result = with_pool(threads, || f(&mut o, &mut e))?;
    out.write_all(&o).map_err(io)?;
    err.write_all(&e).map_err(io)?;
    result
}

fn emit_graph(
    doc: &GraphDocument,
    g: &Graph,
    output: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8, CliError> {
    let summary = format!("vertices {}, edges {}", g.vertex_count(), g.edge_count());
    match output {
        Some(path) => {
            write_file(path, &doc.to_toml())?;
            writeln!(out, "{summary}").map_err(io)?;
        }
        None => {
            out.write_all(doc.to_toml().as_bytes()).map_err(io)?;
            writeln!(err, "{summary}").map_err(io)?;
        }
    }
    Ok(exit::OK)
}

pub fn cmd_gen(a: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    let size = || {
        a.size
            .ok_or_else(|| CliError::Usage(format!("{:?} needs a size", a.family)))
    };
    let (g, generator, params) = match a.family {
        Family::Tree => {
            let seq = a
                .pruefer
                .clone()
                .ok_or_else(|| CliError::Usage("tree needs --pruefer".into()))?;
            let params = seq.iter().map(|s| s.to_string()).collect();
            (tree_from_pruefer(&seq)?, "tree", params)
        }
        family => {
            let n = size()?;
            let g = match family {
                Family::Hypercube => hypercube(n)?,
                Family::Cycle => cycle(n)?,
                Family::Path => path(n)?,
                Family::Star => star(n)?,
                Family::Complete => complete(n)?,
                Family::Tree => unreachable!(),
            };
            (g, family.name(), vec![n.to_string()])
        }
    };
    let doc = GraphDocument::from_graph(
        &g,
        Some(Provenance {
            generator: generator.into(),
            params,
        }),
    );
    emit_graph(&doc, &g, a.output.as_deref(), out, err)
}

fn describe(doc: &GraphDocument) -> String {
    doc.provenance
        .as_ref()
        .map(|p| p.to_string())
        .unwrap_or_else(|| format!("graph({})", doc.labels.len()))
}

fn cmd_compose(
    a: &PairArgs,
    is_corona: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8, CliError> {
    let (g1, d1) = load_graph(&a.first)?;
    let (g2, d2) = load_graph(&a.second)?;
    let g = if is_corona {
        corona(&g1, &g2)?
    } else {
        cartesian_product(&g1, &g2)?
    };
    let doc = GraphDocument::from_graph(
        &g,
        Some(Provenance {
            generator: if is_corona { "corona" } else { "product" }.into(),
            params: vec![describe(&d1), describe(&d2)],
        }),
    );
    emit_graph(&doc, &g, a.output.as_deref(), out, err)
}

fn certificate_doc(
    o: &Orientation,
    level: usize,
    method: Engine,
    diff: Option<&BigInt>,
    doc: &GraphDocument,
) -> CertificateDocument {
    CertificateDocument::new(
        o,
        level,
        method.as_str(),
        diff.map(|d| d.magnitude().to_string()),
        doc.provenance.clone(),
    )
}

fn report_result(r: &AtResult, out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "AT = {}", r.value).map_err(io)?;
    writeln!(out, "lower bound: {}", r.lower_bound_reason).map_err(io)?;
    for x in &r.refutations {
        writeln!(
            out,
            "refuted level {}: {} orientations",
            x.level, x.orientations_checked
        )
        .map_err(io)?;
    }
    if let Some(c) = &r.certificate {
        let diff = c
            .diff
            .as_ref()
            .map(|d| d.to_string())
            .unwrap_or_else(|| "nonzero".into());
        writeln!(
            out,
            "certificate: level {}, method {}, diff {diff}",
            c.level, c.method
        )
        .map_err(io)?;
    }
    Ok(())
}

pub fn cmd_at(a: &AtArgs, budget: &Budget, out: &mut dyn Write) -> Result<u8, CliError> {
    let (g, doc) = load_graph(&a.graph)?;
    let g = Arc::new(g);
    if a.bounds {
        let lower = at_lower_bound(&g, &[], budget)?;
        let (cert, source) = if g.is_bipartite() {
            let c = at_bipartite(g.clone(), budget)?
                .certificate
                .expect("closed form carries a certificate");
            (c, "bipartite orientation")
        } else {
            let o = degeneracy_orientation(g.clone());
            let c = atlab::atsolver::AtCertificate::certify(o, budget)?;
            (c, "acyclic orientation")
        };
        writeln!(out, "lower: {} ({})", lower.value, lower.reason).map_err(io)?;
        writeln!(out, "upper: {} ({source})", cert.level).map_err(io)?;
        let value = AtValue::from_bounds(lower.value, cert.level);
        writeln!(out, "AT = {value}").map_err(io)?;
        if let Some(path) = &a.cert {
            let c = certificate_doc(
                &cert.orientation,
                cert.level,
                cert.method,
                cert.diff.as_ref(),
                &doc,
            );
            write_file(path, &c.to_toml())?;
            writeln!(out, "certificate written to {}", path.display()).map_err(io)?;
        }
        return Ok(if value.exact().is_some() {
            exit::OK
        } else {
            exit::INCONCLUSIVE
        });
    }
    let result = if a.bipartite {
        at_bipartite(g, budget)?
    } else {
        at_exact_with(
            g,
            &ExactOptions {
                budget: budget.clone(),
                ..ExactOptions::default()
            },
        )?
    };
    report_result(&result, out)?;
    if let (Some(path), Some(c)) = (&a.cert, &result.certificate) {
        let cd = certificate_doc(&c.orientation, c.level, c.method, c.diff.as_ref(), &doc);
        write_file(path, &cd.to_toml())?;
        writeln!(out, "certificate written to {}", path.display()).map_err(io)?;
    }
    Ok(match result.value {
        AtValue::Exact(_) => exit::OK,
        AtValue::Bracket { .. } => exit::INCONCLUSIVE,
    })
}

pub fn cmd_diff(a: &DiffArgs, budget: &Budget, out: &mut dyn Write) -> Result<u8, CliError> {
    let d = match (&a.cert, &a.graph, &a.arcs) {
        (Some(cert), _, _) => CertificateDocument::from_toml(&read(cert)?)?.orientation()?,
        (None, Some(graph), Some(arcs)) => {
            let (g, _) = load_graph(graph)?;
            let pairs: Vec<(usize, usize)> = document::parse_pairs(&read(arcs)?)?
                .into_iter()
                .map(|[t, h]| (t, h))
                .collect();
            Orientation::from_arcs(g, &pairs)?
        }
        _ => {
            return Err(CliError::Usage(
                "give --cert, or --graph with --arcs".into(),
            ))
        }
    };
    if d.arcs().len() <= budget.enum_cap {
        let t = eulerian_tally_enumerate(&d, budget)?;
        writeln!(
            out,
            "even {}\nodd {}\ndiff {}\nengine {}",
            t.even,
            t.odd,
            t.diff,
            Engine::Enumeration
        )
        .map_err(io)?;
    } else {
        let diff = eulerian_diff_poly(&d, budget)?;
        writeln!(out, "diff {diff}\nengine {}", Engine::Polynomial).map_err(io)?;
    }
    Ok(exit::OK)
}

pub fn cmd_verify(a: &VerifyArgs, budget: &Budget, out: &mut dyn Write) -> Result<u8, CliError> {
    let cert = CertificateDocument::from_toml(&read(&a.cert)?)?;
    let d = cert.orientation()?;
    let recipe = cert.recipe()?;
    let recorded = cert.method.parse::<Engine>().ok();
    let verdict = verify_certificate(&d, cert.level, recorded, recipe.as_ref(), budget)?;
    match verdict {
        Verdict::Accepted { engine, diff } => {
            if let (Some(recorded), Some(diff)) = (&cert.diff, &diff) {
                if *recorded != diff.magnitude().to_string() {
                    writeln!(
                        out,
                        "rejected: recorded |diff| {recorded} but {engine} gives {diff}"
                    )
                    .map_err(io)?;
                    return Ok(exit::FAILURE);
                }
            }
            let shown = diff
                .map(|d| d.to_string())
                .unwrap_or_else(|| "nonzero".into());
            writeln!(
                out,
                "accepted: AT <= {}, engine {engine}, diff {shown}",
                cert.level
            )
            .map_err(io)?;
            Ok(exit::OK)
        }
        Verdict::Rejected(why) => {
            writeln!(out, "rejected: {why}").map_err(io)?;
            Ok(exit::FAILURE)
        }
        Verdict::OutdegreeCheckedOnly => {
            writeln!(
                out,
                "inconclusive: outdegrees fit level {}, diff beyond budget",
                cert.level
            )
            .map_err(io)?;
            Ok(exit::INCONCLUSIVE)
        }
    }
}

/// A report without its timing, for byte-stable output.
#[derive(serde::Serialize)]
struct StableReport<'a> {
    claim: Claim,
    instance: &'a str,
    quantity: String,
    predicted: String,
    computed: String,
    outcome: Outcome,
    evidence: &'a atlab::theorems::Evidence,
}

impl<'a> From<&'a ClaimReport> for StableReport<'a> {
    fn from(r: &'a ClaimReport) -> Self {
        StableReport {
            claim: r.claim,
            instance: &r.instance,
            quantity: r.quantity.to_string(),
            predicted: r.predicted.to_string(),
            computed: r.computed.to_string(),
            outcome: r.outcome,
            evidence: &r.evidence,
        }
    }
}

pub fn cmd_theorems(
    a: &TheoremArgs,
    budget: &Budget,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8, CliError> {
    let claims: Vec<Claim> = if a.claims.is_empty() {
        Claim::ALL.to_vec()
    } else {
        a.claims
            .iter()
            .map(|c| {
                c.parse::<Claim>()
                    .map_err(|e| CliError::Usage(e.to_string()))
            })
            .collect::<Result<_, _>>()?
    };
    let trees = match a.trees {
        None => None,
        Some(TreeSet::Catalog) => Some(tree_catalog(2..=6, 2, a.seed)?),
        Some(TreeSet::Paths) => Some((2..=6).map(Instance::path).collect::<Result<_, _>>()?),
        Some(TreeSet::Stars) => Some((2..=6).map(Instance::star).collect::<Result<_, _>>()?),
    };
    let params = SuiteParams {
        n: a.n.clone(),
        k: a.k.clone(),
        max: a.max,
        trees,
        seed: a.seed,
    };
    let mut jobs = Vec::new();
    for c in claims {
        jobs.extend(jobs_for(c, &params)?);
    }
    let mut reports = Vec::new();
    let mut code = exit::OK;
    for (job, r) in jobs.iter().zip(run_jobs(&jobs, budget)) {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => {
                writeln!(err, "error: {}: {e}", job.claim()).map_err(io)?;
                code = merge(code, CliError::from(e).exit_code());
            }
        }
    }
    if a.table {
        out.write_all(render_table(&reports).as_bytes())
            .map_err(io)?;
    } else {
        for r in &reports {
            let line = serde_json::to_string(&StableReport::from(r))
                .map_err(|e| CliError::Parse(e.to_string()))?;
            writeln!(out, "{line}").map_err(io)?;
            writeln!(err, "{} {} {}ms", r.claim, r.instance, r.millis).map_err(io)?;
        }
    }
    for r in &reports {
        let c = match r.outcome {
            Outcome::Pass => exit::OK,
            Outcome::Fail => exit::FAILURE,
            Outcome::Inconclusive => exit::INCONCLUSIVE,
        };
        code = merge(code, c);
    }
    Ok(code)
}

/// Failure dominates usage errors and inconclusive results.
fn merge(a: u8, b: u8) -> u8 {
    let rank = |c: u8| match c {
        exit::FAILURE => 3,
        exit::USAGE => 2,
        exit::INCONCLUSIVE => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..6").unwrap(), 1..=6);
        assert_eq!(parse_range("1..=6").unwrap(), 1..=6);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert!(parse_range("6..1").is_err());
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn exit_code_merging() {
        assert_eq!(merge(exit::OK, exit::INCONCLUSIVE), exit::INCONCLUSIVE);
        assert_eq!(merge(exit::INCONCLUSIVE, exit::FAILURE), exit::FAILURE);
        assert_eq!(merge(exit::FAILURE, exit::OK), exit::FAILURE);
    }
}
