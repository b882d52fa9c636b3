use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use torsionlab::cache::FileCache;
use torsionlab::report::Status;
use torsionlab::suite::run_builtin_suite;
use torsionlab::{execute_text, Config};

#[derive(Parser)]
#[command(name = "torsionlab", version, about = "Run torsionlab scripts and the built-in verification suite")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a `.tl` script.
    Run {
        script: PathBuf,
        /// Write the JSON run report here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest degree any Gröbner basis computation may reach.
        #[arg(long)]
        degree_cap: Option<u64>,
        /// Cache directory; defaults to $TORSIONLAB_CACHE or the user cache dir.
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, conflicts_with = "cache")]
        no_cache: bool,
    },
    /// Run a built-in panel of instance checks.
    VerifySuite { suite: Suite },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Paper,
}

fn run(script: PathBuf, json: Option<PathBuf>, seed: u64, degree_cap: Option<u64>, cache: Option<PathBuf>, no_cache: bool) -> u8 {
    let text = match std::fs::read(&script) {
        Ok(bytes) => match String::from_utf8(bytes) {
            Ok(t) => t,
            Err(_) => {
                eprintln!("error: {} is not valid UTF-8", script.display());
                return 3;
            }
        },
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", script.display());
            return 3;
        }
    };
    let mut config = Config { seed, ..Config::default() };
    if let Some(d) = degree_cap {
        config.degree_cap = d;
    }
    if !no_cache {
        let dir = FileCache::default_dir(cache.as_deref());
        match FileCache::open(&dir) {
            Ok(c) => config.cache = Some(Arc::new(c)),
            Err(e) => eprintln!("warning: cache disabled ({}: {e})", dir.display()),
        }
    }
    let report = execute_text(&text, &config);
    if let Some(p) = &report.parse_error {
        eprintln!("{}:{}:{}: {}", script.display(), p.line.unwrap_or(0), p.column.unwrap_or(0), p.message);
    }
    for s in &report.statements {
        let tag = match s.status {
            Status::Ok => None,
            Status::Pass => Some("pass"),
            Status::Fail => Some("FAIL"),
            Status::Inapplicable => Some("inapplicable"),
            Status::Error => Some("ERROR"),
        };
        if let Some(tag) = tag {
            println!("{:>4}: [{tag}] {}", s.line, s.source);
        }
        if s.kind == "print" {
            if let Some(v) = &s.value {
                match v {
                    serde_json::Value::Object(o) if o.contains_key("text") => println!("{}", o["text"].as_str().unwrap_or_default()),
                    serde_json::Value::String(t) => println!("{t}"),
                    other => println!("{other}"),
                }
            }
        }
        if let Some(e) = &s.error {
            eprintln!("{}:{}: {}", script.display(), s.line, e.message);
        }
    }
    let sm = report.summary;
    println!(
        "{} statements: {} pass, {} fail, {} inapplicable, {} errors",
        sm.statements, sm.pass, sm.fail, sm.inapplicable, sm.errors
    );
    if let Some(path) = json {
        let out = report.to_json();
        if path.as_os_str() == "-" {
            println!("{out}");
        } else if let Err(e) = std::fs::write(&path, out + "\n") {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 3;
        }
    }
    report.exit_code as u8
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run { script, json, seed, degree_cap, cache, no_cache } => run(script, json, seed, degree_cap, cache, no_cache),
        Command::VerifySuite { suite: Suite::Paper } => {
            let results = run_builtin_suite();
            for r in &results {
                println!("{}", r.line());
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            println!("{} of {} criteria passed", results.len() - failed, results.len());
            u8::from(failed > 0)
        }
    };
    ExitCode::from(code)
}
