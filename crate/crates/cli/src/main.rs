use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hopfforge_cli::report::Report;
use hopfforge_cli::{
    classify, construct, corpus_file, load_instance, verify, write_corpus, CliError, Emit, Options,
};
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "hopfforge",
    version,
    about = "Verify and classify (weak) multiplier Hopf algebras given by integrals"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Window size for algebras with an infinite basis.
    #[arg(long, global = true)]
    window: Option<usize>,
    /// Worker threads for multiple instance files.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    /// Include wall-clock time in reports.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run every applicable check.
    Verify { files: Vec<PathBuf> },
    /// Report the strongest classification with its evidence.
    Classify { files: Vec<PathBuf> },
    /// Build counit, antipode, E or F.
    Construct {
        file: PathBuf,
        /// Comma-separated subset of counit, antipode, E, F.
        #[arg(long, value_delimiter = ',', required = true)]
        emit: Vec<String>,
        /// Write the artifacts to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write corpus instance files; `all` selects every instance.
    Corpus {
        names: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

type Runner = fn(&hopfforge::Instance, &str, &Options) -> Result<(Report, i32), CliError>;

fn run_files(
    files: &[PathBuf],
    opts: &Options,
    jobs: usize,
    run: Runner,
) -> (Vec<Result<Report, CliError>>, i32) {
    let one = |p: &PathBuf| {
        let path = p.display().to_string();
        load_instance(&path, opts).and_then(|inst| run(&inst, &path, opts))
    };
    let results: Vec<Result<(Report, i32), CliError>> = if jobs > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| files.par_iter().map(one).collect()),
            Err(_) => files.iter().map(one).collect(),
        }
    } else {
        files.iter().map(one).collect()
    };
    let code = results
        .iter()
        .map(|r| {
            r.as_ref()
                .map(|(_, c)| *c)
                .unwrap_or_else(|e| e.exit_code())
        })
        .max()
        .unwrap_or(0);
    (
        results.into_iter().map(|r| r.map(|(rep, _)| rep)).collect(),
        code,
    )
}

fn print_reports(results: Vec<Result<Report, CliError>>, format: Format) {
    let mut reports = Vec::new();
    for r in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err(e) => eprintln!("error: {e}"),
        }
    }
    match format {
        Format::Text => reports.iter().for_each(|r| print!("{}", r.to_text())),
        Format::Json if reports.len() == 1 => {
            print!("{}", hopfforge_cli::file::to_json(&reports[0]))
        }
        Format::Json if !reports.is_empty() => print!("{}", hopfforge_cli::file::to_json(&reports)),
        Format::Json => {}
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        window: cli.window,
        timings: cli.timings,
    };
    let code = match cli.command {
        Command::Verify { files } | Command::Classify { files } if files.is_empty() => {
            eprintln!("error: no instance files given");
            2
        }
        Command::Verify { files } => {
            let (results, code) = run_files(&files, &opts, cli.jobs, verify);
            print_reports(results, cli.format);
            code
        }
        Command::Classify { files } => {
            let (results, code) = run_files(&files, &opts, cli.jobs, classify);
            print_reports(results, cli.format);
            code
        }
        Command::Construct { file, emit, out } => {
            let kinds: Option<Vec<Emit>> = emit.iter().map(|s| Emit::parse(s)).collect();
            let path = file.display().to_string();
            match kinds {
                None => {
                    eprintln!("error: --emit takes counit, antipode, E or F");
                    2
                }
                Some(kinds) => match load_instance(&path, &opts)
                    .and_then(|inst| construct(&inst, &path, &kinds))
                {
                    Ok((doc, code)) => {
                        let text = hopfforge_cli::file::to_json(&doc);
                        match out {
                            Some(o) => match std::fs::write(&o, text) {
                                Ok(()) => code,
                                Err(e) => {
                                    eprintln!("error: {}: {e}", o.display());
                                    2
                                }
                            },
                            None => {
                                print!("{text}");
                                code
                            }
                        }
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        e.exit_code()
                    }
                },
            }
        }
        Command::Corpus { names, out } => {
            if names.is_empty() {
                eprintln!(
                    "error: name an instance or `all`; known: {}",
                    hopfforge::corpus::names().join(", ")
                );
                2
            } else {
                let result = match out {
                    Some(dir) => write_corpus(&names, &dir)
                        .map(|paths| paths.iter().for_each(|p| println!("{p}"))),
                    None => names
                        .iter()
                        .try_for_each(|n| corpus_file(n).map(|t| print!("{t}"))),
                };
                match result {
                    Ok(()) => 0,
                    Err(e) => {
                        eprintln!("error: {e}");
                        2
                    }
                }
            }
        }
    };
    ExitCode::from(code as u8)
}
