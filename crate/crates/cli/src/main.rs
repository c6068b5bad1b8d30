use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use sublab_core::corpus::{load_group_source, shared_standard_corpus, Corpus};
use sublab_core::harness::{self, emit_report, render_all};
use sublab_core::{Error, Lattice, StepPolicy};

#[derive(Parser)]
#[command(
    name = "sublab",
    version,
    about = "Subnormality variants in small permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a subgroup is subnormal under a step policy.
    Query {
        /// builtin:NAME or file:PATH
        #[arg(long)]
        group: String,
        /// Comma separated generators in 1-based cycle notation.
        #[arg(long)]
        subgroup: String,
        /// subnormal, psub, kpsub, kpt, fsub:<F> or kfsub:<F>
        #[arg(long)]
        policy: String,
        #[arg(long)]
        t: Option<u32>,
        /// Print the witness chain (it is printed for true verdicts either way).
        #[arg(long)]
        witness: bool,
    },
    /// Run property suites over a corpus.
    Verify {
        /// A suite id or `all`.
        #[arg(long)]
        suite: String,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        t: Vec<u32>,
        /// `standard`, a comma separated list of builtin:/file: sources, or a
        /// path to a file listing one source per line.
        #[arg(long, default_value = "standard")]
        corpus: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Worker threads, 0 for one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Build the subgroup lattice of a group.
    Lattice {
        #[arg(long)]
        group: String,
        #[arg(long)]
        emit_lattice_dot: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool, Error> {
    match command {
        Command::Query {
            group,
            subgroup,
            policy,
            t,
            witness: _,
        } => {
            let policy = StepPolicy::parse(&policy, t)?;
            let out = harness::query(&group, &subgroup, policy)?;
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(
                stdout,
                "verdict={} group={} order={} subgroup_order={} policy={}",
                out.verdict, out.group, out.group_order, out.subgroup_order, out.policy
            );
            if let Some(w) = &out.witness {
                let _ = write!(stdout, "{w}");
            }
            Ok(out.verdict)
        }
        Command::Verify {
            suite,
            t,
            corpus,
            report,
            jobs,
        } => {
            let ids = harness::parse_suite_selection(&suite)?;
            let owned;
            let corpus: &Corpus = if corpus.trim().eq_ignore_ascii_case("standard") {
                shared_standard_corpus()
            } else {
                owned = Corpus::from_sources(&corpus_sources(&corpus)?)?;
                &owned
            };
            let start = Instant::now();
            let reports = harness::verify(&ids, corpus, &t, jobs)?;
            match &report {
                Some(path) => emit_report(&reports, path)?,
                None => print!("{}", render_all(&reports)),
            }
            for r in &reports {
                eprintln!("{} wall={:.3}s", r.suite, r.wall.as_secs_f64());
            }
            eprintln!("wall={:.3}s", start.elapsed().as_secs_f64());
            Ok(reports.iter().all(|r| r.passed()))
        }
        Command::Lattice {
            group,
            emit_lattice_dot,
        } => {
            let (name, g) = load_group_source(&group)?;
            let lat = Lattice::new(&g)?;
            println!("group={name} order={} subgroups={}", g.order(), lat.len());
            if let Some(path) = emit_lattice_dot {
                std::fs::write(&path, lat.to_dot()).map_err(|e| Error::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
            }
            Ok(true)
        }
    }
}

fn corpus_sources(spec: &str) -> Result<Vec<String>, Error> {
    let looks_like_sources = spec.contains("builtin:") || spec.contains("file:");
    if looks_like_sources {
        return Ok(spec
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect());
    }
    let path = Path::new(spec.trim());
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}
