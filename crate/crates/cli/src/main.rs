use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cartk::export::{read_presentation_json, write_presentation, Expansion, Format};
use cartk::homology::{self, CycleChoice};
use cartk::reduce::{build_presentation, cycle_relation, cycle_relation_length};
use cartk::verify::{verify_presentation, DEFAULT_MAX_VERIFY_SIZE};
use cartk::{Error, FlagComplex, GroupSpec};

mod report;

/// Letters allowed in an expanded presentation without `--force`.
const EXPAND_LIMIT: u64 = 100_000_000;

#[derive(Parser)]
#[command(name = "cartk", version, about = "Presentations of Cartesian subgroups of graph products")]
struct Cli {
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true, env = "CARTK_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generator count, relation bounds and deficiency interval
    Bounds {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        /// Drop generating cycles forced by triangles
        #[arg(long)]
        prune: bool,
    },
    /// Emit the presentation
    Present {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        prune: bool,
        /// Instantiate every template once per element tuple
        #[arg(long)]
        expand: bool,
        /// Allow expansions beyond 10^8 letters
        #[arg(long)]
        force: bool,
    },
    /// Check exponent sums and evaluate relations in the graph product
    Verify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        prune: bool,
        /// Skip templates whose instances exceed this many syllables
        #[arg(long, default_value_t = DEFAULT_MAX_VERIFY_SIZE)]
        max_verify_size: usize,
        /// Verify this JSON presentation instead of building one
        #[arg(long)]
        presentation: Option<PathBuf>,
    },
    /// The relation of the m-cycle and its length
    Cycle {
        /// Number of vertices (at least 4)
        m: usize,
        #[command(flatten)]
        output: Output,
        /// Also report symbol counts
        #[arg(long)]
        stats: bool,
        /// Print the reduced word
        #[arg(long)]
        word: bool,
    },
    /// Homology of the real moment-angle complex and of the Cartesian subgroup
    Homology {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Input {
    /// Graph file (text or JSON)
    #[arg(long, conflicts_with = "edges", required_unless_present = "edges")]
    graph: Option<PathBuf>,
    /// Inline edge list, e.g. "1-2,2-3,3-1"
    #[arg(long)]
    edges: Option<String>,
    /// Vertex count for --edges (default: largest vertex named)
    #[arg(long, requires = "edges")]
    vertices: Option<usize>,
    /// Vertex groups: "2,3,2", one entry for all vertices, "inf", or "table:PATH"
    #[arg(long, default_value = "2")]
    groups: String,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Gap,
    Magma,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Gap => Format::Gap,
            FormatArg::Magma => Format::Magma,
        }
    }
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn new(code: u8, error: anyhow::Error) -> Self {
        Failure { code, error }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Unsupported(_) | Error::UnsupportedDimension(_) | Error::Overflow => 3,
        Error::Verification(_) => 4,
        _ => 2,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::new(exit_code(&e), e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(1, e.into())
    }
}

type Outcome = std::result::Result<(), Failure>;

impl Input {
    fn load(&self) -> std::result::Result<(FlagComplex, GroupSpec), Failure> {
        let complex = match (&self.graph, &self.edges) {
            (Some(path), _) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))
                    .map_err(|e| Failure::new(2, e))?;
                cartk::io::parse_graph(&text)
                    .map_err(|e| Failure::new(2, anyhow!("{}: {e}", path.display())))?
            }
            (None, Some(edges)) => cartk::io::parse_edge_list(edges, self.vertices)?,
            (None, None) => unreachable!("clap requires one graph source"),
        };
        let spec = GroupSpec::parse(&self.groups, complex.vertex_count(), |p| fs::read_to_string(p))?;
        Ok((complex, spec))
    }
}

impl Output {
    fn writer(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(fs::File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    fn text_or_json(&self) -> std::result::Result<bool, Failure> {
        match self.format {
            FormatArg::Text => Ok(false),
            FormatArg::Json => Ok(true),
            _ => Err(Failure::new(
                3,
                anyhow!("this command only writes text or json"),
            )),
        }
    }
}

fn choice(prune: bool) -> CycleChoice {
    if prune {
        CycleChoice::Pruned
    } else {
        CycleChoice::Fundamental
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::new(1, e.into()))?;
    }
    match cli.command {
        Command::Bounds { input, output, prune } => {
            let json = output.text_or_json()?;
            let (complex, spec) = input.load()?;
            let r = homology::bounds(&complex, &spec, choice(prune))?;
            let mut w = output.writer()?;
            if json {
                report::bounds_json(&mut w, &r)?;
            } else {
                report::bounds_text(&mut w, &r)?;
            }
            w.flush()?;
        }
        Command::Present {
            input,
            output,
            prune,
            expand,
            force,
        } => {
            let (complex, spec) = input.load()?;
            let p = build_presentation(&complex, &spec, choice(prune))?;
            let expansion = if expand {
                let e = Expansion::new(&p, &spec)?;
                match e.letter_count() {
                    Some(n) if n <= EXPAND_LIMIT || force => {}
                    n => {
                        let size = n.map_or("more than 2^64".to_string(), |n| n.to_string());
                        return Err(Failure::new(
                            3,
                            anyhow!("expansion has {size} letters; pass --force to write it anyway"),
                        ));
                    }
                }
                Some(e)
            } else {
                None
            };
            let mut w = output.writer()?;
            write_presentation(&mut w, &p, &spec, output.format.into(), expansion.as_ref())?;
            w.flush()?;
        }
        Command::Verify {
            input,
            output,
            prune,
            max_verify_size,
            presentation,
        } => {
            let json = output.text_or_json()?;
            let (complex, spec) = input.load()?;
            let p = match presentation {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))
                        .map_err(|e| Failure::new(2, e))?;
                    read_presentation_json(&text, &complex, &spec)
                        .map_err(|e| Failure::new(2, anyhow!("{}: {e}", path.display())))?
                }
                None => build_presentation(&complex, &spec, choice(prune))?,
            };
            let r = verify_presentation(&complex, &spec, &p, max_verify_size)?;
            let mut w = output.writer()?;
            if json {
                report::verify_json(&mut w, &r, max_verify_size)?;
            } else {
                report::verify_text(&mut w, &r, max_verify_size)?;
            }
            w.flush()?;
            if !r.passed() {
                return Err(Failure::new(
                    4,
                    anyhow!("{} relation instance(s) failed", r.failures.len()),
                ));
            }
        }
        Command::Cycle {
            m,
            output,
            stats,
            word,
        } => {
            let json = output.text_or_json()?;
            let start = Instant::now();
            let batch = cycle_relation(m)?;
            let elapsed = start.elapsed();
            let expected = cycle_relation_length(m);
            let mut w = output.writer()?;
            let c = report::CycleReport {
                m,
                batch: &batch,
                expected,
                seconds: elapsed.as_secs_f64(),
                stats,
                word,
            };
            if json {
                c.json(&mut w)?;
            } else {
                c.text(&mut w)?;
            }
            w.flush()?;
        }
        Command::Homology { input, output } => {
            let json = output.text_or_json()?;
            let (complex, spec) = input.load()?;
            let rows = homology::all_subsets(&complex)?;
            let mut w = output.writer()?;
            let h = report::HomologyReport::new(&spec, &rows);
            if json {
                h.json(&mut w)?;
            } else {
                h.text(&mut w)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
