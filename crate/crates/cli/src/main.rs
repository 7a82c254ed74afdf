use clap::{Parser, Subcommand};
use std::process::ExitCode;
use tamed_cli::{analyze, check, check_exit_code, render_outcomes, report, EXIT_PARSE};
use tamed_core::fixtures;
use tamed_core::identities::IdentityName;

#[derive(Parser)]
#[command(name = "tamed", version, about = "Exact analysis of tamed structures on Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on one or more structure files.
    Analyze {
        #[arg(required = true)]
        files: Vec<String>,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Print the sign-convention ledger (to stderr with --json).
        #[arg(long)]
        convention: bool,
    },
    /// Check one identity and print its residual.
    Check {
        file: String,
        #[arg(long)]
        identity: String,
    },
    /// List or print the bundled structure files.
    Examples {
        #[arg(long, conflicts_with = "emit")]
        list: bool,
        #[arg(long, value_name = "NAME")]
        emit: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE as u8 } else { 0 });
        }
    };
    ExitCode::from(run(cli.command) as u8)
}

fn read(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

struct FileResult {
    stdout: String,
    stderr: String,
    code: i32,
    json: Option<serde_json::Value>,
}

fn analyze_one(path: &str, json: bool) -> FileResult {
    let text = match read(path) {
        Ok(t) => t,
        Err(e) => return FileResult { stdout: String::new(), stderr: e + "\n", code: EXIT_PARSE, json: None },
    };
    let a = analyze(&text);
    let code = a.exit_code();
    let mut stderr = String::new();
    if let Some(stop) = &a.stop {
        stderr.push_str(&format!("{path}: {stop}\n"));
    }
    if let Some(r) = &a.report {
        for e in r.identity_suite.iter().filter(|e| e.status == "fail") {
            stderr.push_str(&format!(
                "{path}: identity violated: {} (witness {})\n",
                e.name,
                e.witness.as_deref().unwrap_or("-")
            ));
        }
    }
    let stdout = match (&a.report, json) {
        (Some(r), false) => report::render_text(path, r, &a.details),
        _ => String::new(),
    };
    let json = a.report.as_ref().map(|r| serde_json::to_value(r).expect("report serializes"));
    FileResult { stdout, stderr, code, json }
}

fn run(command: Command) -> i32 {
    match command {
        Command::Analyze { files, json, convention } => {
            if convention {
                if json {
                    eprint!("{}", tamed_core::conventions::ledger());
                } else {
                    println!("{}", tamed_core::conventions::ledger());
                }
            }
            // Files are independent; buffer each one and print in argument order.
            let results: Vec<FileResult> = std::thread::scope(|s| {
                let handles: Vec<_> = files.iter().map(|f| s.spawn(move || analyze_one(f, json))).collect();
                handles.into_iter().map(|h| h.join().expect("analysis thread panicked")).collect()
            });
            for (i, r) in results.iter().enumerate() {
                if !json && i > 0 {
                    println!();
                }
                print!("{}", r.stdout);
                eprint!("{}", r.stderr);
            }
            if json {
                let doc = if files.len() == 1 {
                    results[0].json.clone().unwrap_or(serde_json::Value::Null)
                } else {
                    serde_json::Value::Array(results.iter().map(|r| r.json.clone().unwrap_or_default()).collect())
                };
                println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            }
            results.iter().map(|r| r.code).max().unwrap_or(0)
        }
        Command::Check { file, identity } => {
            let name: IdentityName = match identity.parse() {
                Ok(n) => n,
                Err(e) => {
                    eprintln!("{e}");
                    return EXIT_PARSE;
                }
            };
            let text = match read(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{e}");
                    return EXIT_PARSE;
                }
            };
            match check(&text, name) {
                Ok(outcomes) => {
                    print!("{}", render_outcomes(&outcomes));
                    check_exit_code(&outcomes)
                }
                Err(stop) => {
                    eprintln!("{file}: {stop}");
                    stop.exit_code()
                }
            }
        }
        Command::Examples { list: _, emit } => match emit {
            Some(name) => match fixtures::by_name(&name) {
                Some(text) => {
                    print!("{text}");
                    0
                }
                None => {
                    eprintln!("unknown example `{name}`");
                    EXIT_PARSE
                }
            },
            None => {
                for (name, text) in fixtures::ALL {
                    let summary = text.lines().next().unwrap_or("").trim_start_matches('#').trim();
                    println!("{name:<14} {summary}");
                }
                0
            }
        },
    }
}
