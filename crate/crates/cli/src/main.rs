use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use slam_core::format::significant;
use slam_core::metrics::{PathSample, SmallWorldReport};
use slam_core::prox::{self, DEFAULT_STEPS};
use slam_core::resolver::DEFAULT_RADIUS;
use slam_core::triples::{DEFAULT_MAX_LEMMA_FREQ, DEFAULT_MIN_TRIPLE_COUNT};
use slam_core::{
    evaluate, resolve, Error, GoldData, Lexeme, LexicalGraph, MetaphorQuery, SlamParams,
    TripleStore,
};

/// Resolve lexical metaphors by crossing synonym-graph neighbourhoods with
/// corpus triples.
#[derive(Debug, Parser)]
#[command(name = "slam", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Size, mean shortest path, clustering and degree fit of a graph.
    GraphStats {
        #[arg(long)]
        graph: PathBuf,
        /// Estimate the mean path from this many seeded sources.
        #[arg(long)]
        sample_size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lexemes ranked by random-walk confluence from a start lexeme.
    Prox {
        lexeme: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_STEPS as u64, value_parser = clap::value_parser!(u64).range(1..))]
        lambda: u64,
        #[arg(long, default_value_t = DEFAULT_RADIUS as u64, value_parser = clap::value_parser!(u64).range(1..))]
        gamma: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Index a triple file into a binary snapshot.
    TriplesBuild {
        #[arg(long)]
        triples: PathBuf,
        #[arg(long)]
        lemma_freq: Option<PathBuf>,
        /// Output snapshot path.
        #[arg(long)]
        snapshot: PathBuf,
        /// Defaults to the triple file's stem.
        #[arg(long)]
        corpus_id: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Resolve one query of the form `<focus>*|<relation>|<dependent>`.
    Resolve {
        query: String,
        #[command(flatten)]
        resources: Resources,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score resolutions against a gold file.
    Eval {
        #[arg(long)]
        gold: PathBuf,
        #[command(flatten)]
        resources: Resources,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        /// Drop queries carrying any of these tags.
        #[arg(long, value_delimiter = ',')]
        exclude_tags: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Resources {
    #[arg(long)]
    graph: PathBuf,
    /// Prebuilt triple-store snapshot.
    #[arg(long, conflicts_with_all = ["triples", "lemma_freq"], required_unless_present = "triples")]
    snapshot: Option<PathBuf>,
    #[arg(long)]
    triples: Option<PathBuf>,
    #[arg(long, requires = "triples")]
    lemma_freq: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long, default_value_t = DEFAULT_STEPS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    lambda: u64,
    #[arg(long, default_value_t = DEFAULT_RADIUS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    gamma: u64,
    #[arg(long, default_value_t = DEFAULT_MIN_TRIPLE_COUNT, value_parser = clap::value_parser!(u64).range(1..))]
    alpha: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_LEMMA_FREQ, value_parser = clap::value_parser!(u64).range(1..))]
    beta: u64,
}

impl ParamArgs {
    fn params(&self) -> SlamParams {
        SlamParams {
            steps: self.lambda as usize,
            radius: self.gamma as usize,
            min_count: self.alpha,
            max_freq: self.beta,
        }
    }
}

/// Exit status 1: usage or parse error. Exit status 2: missing resource or
/// lexeme.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Missing(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Missing(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Missing(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownLexeme(_) | Error::Io(_) => Failure::Missing(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn require_file(path: &Path) -> Result<(), Failure> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Failure::Missing(format!(
            "missing resource: {}",
            path.display()
        )))
    }
}

fn load_graph(path: &Path) -> Result<LexicalGraph, Failure> {
    require_file(path)?;
    LexicalGraph::from_path(path).map_err(|e| in_file(path, e))
}

fn in_file(path: &Path, e: Error) -> Failure {
    match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
        Failure::Missing(m) => Failure::Missing(format!("{}: {m}", path.display())),
    }
}

fn build_store(
    triples: &Path,
    lemma_freq: Option<&Path>,
    corpus_id: Option<&str>,
) -> Result<TripleStore, Failure> {
    require_file(triples)?;
    if let Some(p) = lemma_freq {
        require_file(p)?;
    }
    let stem = triples
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    TripleStore::build_from_paths(triples, lemma_freq, corpus_id.unwrap_or(&stem))
        .map_err(|e| in_file(triples, e))
}

impl Resources {
    fn load(&self) -> Result<(LexicalGraph, TripleStore), Failure> {
        let graph = load_graph(&self.graph)?;
        let store = match (&self.snapshot, &self.triples) {
            (Some(snap), _) => {
                require_file(snap)?;
                TripleStore::read_snapshot(snap).map_err(|e| in_file(snap, e))?
            }
            (None, Some(triples)) => build_store(triples, self.lemma_freq.as_deref(), None)?,
            (None, None) => unreachable!("clap requires one of --snapshot/--triples"),
        };
        Ok((graph, store))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Missing(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Missing(format!("stdout: {e}")))
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::GraphStats {
            graph,
            sample_size,
            seed,
            out,
        } => {
            let g = load_graph(&graph)?;
            let sample = sample_size.map(|size| PathSample { size, seed });
            let report = SmallWorldReport::compute(&g, sample)?;
            emit(out.as_deref(), &report.to_string())
        }
        Command::Prox {
            lexeme,
            graph,
            lambda,
            gamma,
            out,
        } => {
            let g = load_graph(&graph)?;
            let start = Lexeme::new(lexeme)?;
            let nb = prox::diam(&g, &start, lambda as usize, gamma as usize)?;
            let text: String = nb
                .entries
                .iter()
                .map(|e| format!("{}\t{}\t{}\n", e.rank, e.lexeme, significant(e.probability)))
                .collect();
            emit(out.as_deref(), &text)
        }
        Command::TriplesBuild {
            triples,
            lemma_freq,
            snapshot,
            corpus_id,
            out,
        } => {
            let store = build_store(&triples, lemma_freq.as_deref(), corpus_id.as_deref())?;
            if store.is_empty() {
                eprintln!("warning: {} holds no triples", triples.display());
            }
            store
                .write_snapshot(&snapshot)
                .map_err(|e| in_file(&snapshot, e))?;
            let flagged = store.flagged().count();
            if flagged > 0 && lemma_freq.is_some() {
                eprintln!("warning: {flagged} lexeme(s) missing from the lemma frequencies");
            }
            let text = format!(
                "triples\t{}\nlexemes\t{}\n",
                store.triple_count(),
                store.lexeme_count()
            );
            emit(out.as_deref(), &text)
        }
        Command::Resolve {
            query,
            resources,
            params,
            out,
        } => {
            let q = MetaphorQuery::parse(&query, params.params())?;
            let (g, store) = resources.load()?;
            let sl = resolve(&g, &store, &q);
            if sl.is_empty() {
                eprintln!("no solution for {q}: {}", sl.diagnostic);
            }
            let text: String = sl
                .solutions
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    format!(
                        "{}\t{}\t{}\t{}\n",
                        i + 1,
                        s.lexeme,
                        s.triple_count,
                        s.proxemic_rank
                    )
                })
                .collect();
            emit(out.as_deref(), &text)
        }
        Command::Eval {
            gold,
            resources,
            params,
            n_max,
            exclude_tags,
            out,
        } => {
            require_file(&gold)?;
            let gold_data = GoldData::from_path(&gold).map_err(|e| in_file(&gold, e))?;
            let (g, store) = resources.load()?;
            let exclude: BTreeSet<String> = exclude_tags.into_iter().collect();
            let report = evaluate(
                &g,
                &store,
                &gold_data,
                params.params(),
                n_max as usize,
                &exclude,
            )?;
            emit(out.as_deref(), &report.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("slam: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
