use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use domenum::bench::{self, Problem};
use domenum::cdom::{enumerate_mcds, CdomError};
use domenum::extensions::{enumerate_mds, enumerate_mtds, ExtensionError, NeighborhoodMode};
use domenum::generate::{complete_bipartite_2n, generate_chordal_bipartite, path, GeneratorConfig};
use domenum::model::io::{parse_classes, parse_edge_list, parse_hypergraph, write_edge_list, write_hypergraph};
use domenum::model::{bipartition, closed_neighborhood_hypergraph, open_neighborhood_hypergraph, BipartiteCheck, ModelError};
use domenum::oracles::{self, Family, OracleCaps, OracleError};
use domenum::recognition::weak_simplicial_ordering;
use domenum::reductions::{
    build_mis_reduction, build_transversal_reduction, verify_bijection, verify_mis_children, verify_separator_structure,
    MisInstance, ReductionError,
};
use domenum::separators::{conformality, minimal_separators, Conformality};
use domenum::{Graph, Hypergraph, VertexSet};

const EXIT_MISMATCH: u8 = 1;
const EXIT_RECOGNITION: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_PRECONDITION: u8 = 4;

#[derive(Parser)]
#[command(name = "domenum", version, about = "Minimal domination enumeration for chordal bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph is chordal bipartite.
    Recognize(InputArgs),
    /// Print a weak-simplicial elimination ordering.
    Order(InputArgs),
    /// Enumerate minimal dominating, total dominating or connected dominating sets.
    Enumerate(EnumerateArgs),
    /// Print the minimal separators S(G) in hypergraph format.
    Separators(SeparatorArgs),
    /// Smallest conformality of S(G), or of a hypergraph given with --hypergraph.
    Conformality(ConformalityArgs),
    /// Build one of the hardness reductions.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Check that every line of a solutions file is a minimal solution.
    Verify(VerifyArgs),
    /// Generate a random chordal bipartite graph.
    Generate(GenerateArgs),
    /// Measure enumeration delay in work units and print CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Edge-list file, or `-` for stdin.
    #[arg(short, long)]
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Mds,
    Tds,
    Cds,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct EnumerateArgs {
    kind: Kind,
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Print only the number of solutions.
    #[arg(long)]
    count_only: bool,
    /// Compare the output with the brute-force oracle.
    #[arg(long)]
    check_oracle: bool,
    /// Add cumulative work counters to each solution.
    #[arg(long)]
    emit_timing: bool,
}

#[derive(Args)]
struct SeparatorArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    check_oracle: bool,
}

#[derive(Args)]
struct ConformalityArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, default_value_t = 5)]
    max: usize,
    /// Read a hypergraph instead of a graph.
    #[arg(long)]
    hypergraph: bool,
    #[arg(long)]
    check_oracle: bool,
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Multicolored independent set to the sequential method.
    Mis {
        #[arg(short, long)]
        input: PathBuf,
        /// One colour class per line.
        #[arg(long)]
        classes: PathBuf,
        /// Check the children of T* against the multicolored independent sets.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
    },
    /// Hypergraph transversals to connected domination.
    Trans {
        #[arg(short, long)]
        input: PathBuf,
        /// Check the separator structure and the solution bijection.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Closed,
    Open,
    Both,
}

#[derive(Args)]
struct VerifyArgs {
    kind: Kind,
    #[arg(short, long)]
    input: PathBuf,
    /// One solution per line, whitespace-separated ids.
    #[arg(long)]
    solutions: PathBuf,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Give every vertex after the first an earlier neighbor.
    #[arg(long)]
    connected: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFamily {
    K2n,
    Generated,
    Path,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    problem: Kind,
    #[arg(long, value_enum, default_value_t = GraphFamily::K2n)]
    family: GraphFamily,
    #[arg(long, value_delimiter = ',', default_value = "10,20,40")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 0.2)]
    density: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Stop each run after this many solutions.
    #[arg(long)]
    limit: Option<usize>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_IO, e.to_string())
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Parse { .. } => Failure::new(EXIT_IO, e.to_string()),
            _ => Failure::new(EXIT_PRECONDITION, e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::new(EXIT_PRECONDITION, e.to_string())
    }
}

impl From<ExtensionError> for Failure {
    fn from(e: ExtensionError) -> Self {
        match e {
            ExtensionError::NotChordalBipartite => Failure::new(EXIT_RECOGNITION, e.to_string()),
            ExtensionError::Model(m) => m.into(),
            _ => Failure::new(EXIT_PRECONDITION, e.to_string()),
        }
    }
}

impl From<CdomError> for Failure {
    fn from(e: CdomError) -> Self {
        Failure::new(EXIT_PRECONDITION, e.to_string())
    }
}

impl From<bench::BenchError> for Failure {
    fn from(e: bench::BenchError) -> Self {
        match e {
            bench::BenchError::Extension(e) => e.into(),
            bench::BenchError::Cdom(e) => e.into(),
        }
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::Model(m) => m.into(),
            ReductionError::Oracle(o) => o.into(),
            _ => Failure::new(EXIT_PRECONDITION, e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_text(p: &Path) -> Result<String, Failure> {
    if p.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(p).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", p.display())))
    }
}

fn read_graph(p: &Path) -> Result<Graph, Failure> {
    Ok(parse_edge_list(&read_text(p)?)?)
}

fn set_text(g: &Graph, s: &VertexSet) -> String {
    if s.is_empty() {
        "{}".to_owned()
    } else {
        g.names_of(s).join(" ")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Recognize(a) => recognize(&a, &mut out),
        Command::Order(a) => order(&a, &mut out),
        Command::Enumerate(a) => enumerate(&a, &mut out),
        Command::Separators(a) => separators(&a, &mut out),
        Command::Conformality(a) => conformality_cmd(&a, &mut out),
        Command::Reduce(r) => reduce(&r, &mut out),
        Command::Verify(a) => verify(&a, &mut out),
        Command::Generate(a) => generate(&a, &mut out),
        Command::Bench(a) => bench_cmd(&a, &mut out),
    };
    let flushed = out.flush();
    match result.and(flushed.map_err(Failure::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn recognize(a: &InputArgs, out: &mut impl Write) -> Outcome {
    let g = read_graph(&a.input)?;
    if weak_simplicial_ordering(&g).is_some() {
        writeln!(out, "chordal bipartite")?;
        return Ok(());
    }
    writeln!(out, "not chordal bipartite")?;
    match bipartition(&g) {
        BipartiteCheck::NotBipartite { odd_cycle } => {
            let ids: Vec<&str> = odd_cycle.iter().map(|&v| g.name(v)).collect();
            writeln!(out, "odd cycle: {}", ids.join(" "))?;
        }
        BipartiteCheck::Bipartite(_) => {
            if let Ok(Some(cycle)) = oracles::has_long_induced_cycle(&g, 6, &OracleCaps::from_env()) {
                let ids: Vec<&str> = cycle.iter().map(|&v| g.name(v)).collect();
                writeln!(out, "induced cycle: {}", ids.join(" "))?;
            } else {
                writeln!(out, "no weak-simplicial vertex in some induced subgraph")?;
            }
        }
    }
    Err(Failure::new(EXIT_RECOGNITION, "graph is not chordal bipartite"))
}

fn order(a: &InputArgs, out: &mut impl Write) -> Outcome {
    let g = read_graph(&a.input)?;
    let ordering = weak_simplicial_ordering(&g)
        .ok_or_else(|| Failure::new(EXIT_RECOGNITION, "graph is not chordal bipartite"))?;
    let ids: Vec<&str> = ordering.as_slice().iter().map(|&v| g.name(v)).collect();
    writeln!(out, "{}", ids.join(" "))?;
    Ok(())
}

type Solutions<'g> = Box<dyn Iterator<Item = Result<(VertexSet, u64), Failure>> + 'g>;

fn solutions(kind: Kind, g: &Graph) -> Result<Solutions<'_>, Failure> {
    Ok(match kind {
        Kind::Mds | Kind::Tds => {
            let mut stream = if matches!(kind, Kind::Mds) {
                enumerate_mds(g)?
            } else {
                enumerate_mtds(g)?
            };
            Box::new(std::iter::from_fn(move || {
                let item = stream.next()?;
                let work = stream.stats().work() as u64;
                Some(item.map(|s| (s, work)).map_err(|e| Failure::new(EXIT_PRECONDITION, e.to_string())))
            }))
        }
        Kind::Cds => Box::new(enumerate_mcds(g)?.map(|t| Ok((t.set, t.work)))),
    })
}

fn brute_family(kind: Kind, g: &Graph) -> Result<Family, Failure> {
    let caps = OracleCaps::from_env();
    Ok(match kind {
        Kind::Mds => oracles::brute_mds(g, &caps)?,
        Kind::Tds => oracles::brute_mtds(g, &caps)?,
        Kind::Cds => oracles::brute_mcds(g, &caps)?,
    })
}

fn enumerate(a: &EnumerateArgs, out: &mut impl Write) -> Outcome {
    let g = read_graph(&a.input)?;
    if a.check_oracle {
        // Fail on oversized inputs before producing any output.
        let caps = OracleCaps::from_env();
        let cap = match a.kind {
            Kind::Mds | Kind::Tds => caps.dominating,
            Kind::Cds => caps.connected,
        };
        if g.len() > cap {
            return Err(OracleError::TooLarge {
                what: "oracle check",
                size: g.len(),
                cap,
            }
            .into());
        }
    }
    let mut seen = Family::new();
    let mut count = 0usize;
    for item in solutions(a.kind, &g)? {
        let (s, work) = item?;
        if !a.count_only {
            match a.format {
                Format::Text if a.emit_timing => writeln!(out, "{}\twork={work}", set_text(&g, &s))?,
                Format::Text => writeln!(out, "{}", set_text(&g, &s))?,
                Format::Json => {
                    let mut line = json!({ "solution": g.names_of(&s), "index": count });
                    if a.emit_timing {
                        line["work"] = json!(work);
                    }
                    writeln!(out, "{line}")?;
                }
            }
            out.flush()?;
        }
        count += 1;
        if a.check_oracle {
            seen.insert(s);
        }
    }
    if a.count_only {
        writeln!(out, "{count}")?;
    }
    if a.check_oracle {
        let brute = brute_family(a.kind, &g)?;
        if brute != seen || count != seen.len() {
            return Err(Failure::new(
                EXIT_MISMATCH,
                format!("oracle mismatch: {} emitted ({} distinct), oracle has {}", count, seen.len(), brute.len()),
            ));
        }
        eprintln!("oracle check: ok ({count} solutions)");
    }
    Ok(())
}

fn separators(a: &SeparatorArgs, out: &mut impl Write) -> Outcome {
    let g = read_graph(&a.input)?;
    let seps = minimal_separators(&g);
    write!(out, "{}", write_hypergraph(&seps.to_hypergraph(&g)))?;
    if a.check_oracle {
        let brute = oracles::brute_separators(&g, true, &OracleCaps::from_env())?;
        let fast: Family = seps.separators.into_iter().collect();
        if brute != fast {
            return Err(Failure::new(EXIT_MISMATCH, "oracle mismatch on minimal separators"));
        }
        eprintln!("oracle check: ok ({} separators)", fast.len());
    }
    Ok(())
}

fn conformality_cmd(a: &ConformalityArgs, out: &mut impl Write) -> Outcome {
    if a.max == 0 {
        return Err(Failure::new(EXIT_PRECONDITION, "--max must be at least 1"));
    }
    let text = read_text(&a.input)?;
    let h: Hypergraph = if a.hypergraph {
        domenum::model::sperner_minimize(&parse_hypergraph(&text)?)
    } else {
        let g = parse_edge_list(&text)?;
        minimal_separators(&g).to_hypergraph(&g)
    };
    let c = conformality(&h, a.max);
    match c {
        Conformality::Exactly(c) => writeln!(out, "{c}")?,
        Conformality::AboveMax => writeln!(out, "above {}", a.max)?,
    }
    if a.check_oracle {
        let brute = oracles::brute_conformality(&h, a.max, &OracleCaps::from_env())?;
        let same = matches!(
            (c, brute),
            (Conformality::Exactly(x), oracles::Conformality::Exactly(y)) if x == y
        ) || matches!((c, brute), (Conformality::AboveMax, oracles::Conformality::AboveMax));
        if !same {
            return Err(Failure::new(EXIT_MISMATCH, format!("oracle mismatch: brute force gives {brute:?}")));
        }
        eprintln!("oracle check: ok");
    }
    Ok(())
}

fn reduce(r: &ReduceCommand, out: &mut impl Write) -> Outcome {
    match r {
        ReduceCommand::Mis {
            input,
            classes,
            verify,
            mode,
        } => {
            let g = read_graph(input)?;
            let classes = parse_classes(&read_text(classes)?);
            let inst = MisInstance::from_named(g, &classes)?;
            let red = build_mis_reduction(&inst)?;
            let ids = |vs: &[usize]| vs.iter().map(|&v| red.h.name(v)).collect::<Vec<_>>().join(" ");
            writeln!(out, "# ordering: {}", ids(&red.ordering))?;
            writeln!(out, "# tstar: {}", red.h.names_of(&red.t_star).join(" "))?;
            write!(out, "{}", write_edge_list(&red.h))?;
            if *verify {
                let modes: &[NeighborhoodMode] = match mode {
                    ModeArg::Closed => &[NeighborhoodMode::Closed],
                    ModeArg::Open => &[NeighborhoodMode::Open],
                    ModeArg::Both => &[NeighborhoodMode::Closed, NeighborhoodMode::Open],
                };
                let mut all = true;
                for &m in modes {
                    let rep = verify_mis_children(&inst, &red, m)?;
                    eprintln!(
                        "{:?}: bipartite={} tstar-minimal={} children={} alpha-child={} multicolored-independent-sets={} holds={}",
                        m,
                        rep.bipartite,
                        rep.t_star_minimal,
                        rep.children.len(),
                        rep.alpha_child,
                        rep.multicolored_independent_sets.len(),
                        rep.holds()
                    );
                    all &= rep.holds();
                }
                if !all {
                    return Err(Failure::new(EXIT_MISMATCH, "children structure check failed"));
                }
            }
            Ok(())
        }
        ReduceCommand::Trans { input, verify } => {
            let h = parse_hypergraph(&read_text(input)?)?;
            let red = build_transversal_reduction(&h)?;
            write!(out, "{}", write_edge_list(&red.g))?;
            if *verify {
                let caps = OracleCaps::from_env();
                let seps = verify_separator_structure(&red, &caps)?;
                let bij = verify_bijection(&red, &caps)?;
                eprintln!(
                    "separators: expected={} found={} holds={}",
                    seps.expected.len(),
                    seps.actual.len(),
                    seps.holds()
                );
                eprintln!(
                    "bijection: mcds={} transversals={} injective={} onto={} holds={}",
                    bij.mcds_count,
                    bij.transversal_count,
                    bij.injective,
                    bij.onto,
                    bij.holds()
                );
                if !(seps.holds() && bij.holds()) {
                    return Err(Failure::new(EXIT_MISMATCH, "reduction structure check failed"));
                }
            }
            Ok(())
        }
    }
}

fn verify(a: &VerifyArgs, out: &mut impl Write) -> Outcome {
    let g = read_graph(&a.input)?;
    let h = match a.kind {
        Kind::Mds => closed_neighborhood_hypergraph(&g),
        Kind::Tds => open_neighborhood_hypergraph(&g)?,
        Kind::Cds => {
            if g.len() >= 2 && !g.is_connected() {
                return Err(CdomError::Disconnected.into());
            }
            minimal_separators(&g).to_hypergraph(&g)
        }
    };
    let complete_cds = matches!(a.kind, Kind::Cds) && h.edge_count() == 0 && !g.is_empty();
    let mut bad = 0usize;
    let mut total = 0usize;
    for line in parse_classes(&read_text(&a.solutions)?) {
        total += 1;
        let ids: Vec<&str> = line.iter().map(String::as_str).filter(|s| *s != "{}").collect();
        let ok = match g.set_of(&ids) {
            Ok(s) if complete_cds => s.len() == 1 && g.closed_neighbors(s.first().unwrap_or(0)) == g.all_vertices(),
            Ok(s) => h.is_minimal_transversal(&s),
            Err(_) => false,
        };
        if !ok {
            bad += 1;
            writeln!(out, "invalid: {}", line.join(" "))?;
        }
    }
    writeln!(out, "{} of {} solutions valid", total - bad, total)?;
    if bad > 0 {
        return Err(Failure::new(EXIT_MISMATCH, format!("{bad} invalid solutions")));
    }
    Ok(())
}

fn generate(a: &GenerateArgs, out: &mut impl Write) -> Outcome {
    let cfg = GeneratorConfig::new(a.n, a.density, a.seed).connected(a.connected);
    let g = generate_chordal_bipartite(&cfg).map_err(|e| Failure::new(EXIT_PRECONDITION, e.to_string()))?;
    let text = write_edge_list(&g);
    match &a.output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", p.display())))?,
        None => write!(out, "{text}")?,
    }
    Ok(())
}

fn bench_cmd(a: &BenchArgs, out: &mut impl Write) -> Outcome {
    let problem = match a.problem {
        Kind::Mds => Problem::Mds,
        Kind::Tds => Problem::Tds,
        Kind::Cds => Problem::Cds,
    };
    let mut rows = Vec::new();
    for &n in &a.sizes {
        let (name, g) = match a.family {
            GraphFamily::K2n => ("k2n", complete_bipartite_2n(n)),
            GraphFamily::Path => ("path", path(n)),
            GraphFamily::Generated => {
                let cfg = GeneratorConfig::new(n, a.density, a.seed).connected(true);
                let g = generate_chordal_bipartite(&cfg).map_err(|e| Failure::new(EXIT_PRECONDITION, e.to_string()))?;
                ("generated", g)
            }
        };
        rows.push(bench::measure(name, &g, problem, a.limit)?);
    }
    write!(out, "{}", bench::to_csv(&rows))?;
    Ok(())
}
