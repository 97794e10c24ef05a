use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use spectral_cli::{run_session, RunOptions, Session};

#[derive(Parser)]
#[command(name = "spectral", version, about = "Run spectral-curve computations from session files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a session file.
    Run {
        session: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random candidates per randomized search.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Write the JSON report here; `-` for stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the plain-text summary here instead of stdout.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Keep going after a task error.
        #[arg(long)]
        continue_on_error: bool,
        /// Run tasks on several threads; the report order does not change.
        #[arg(long)]
        parallel: bool,
        /// Record wall-clock time per task in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Check that a session file parses and print its task list.
    Check { session: PathBuf },
}

fn load(path: &PathBuf) -> Result<Session, String> {
    let src = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Session::parse(&src).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { session } => match load(&session) {
            Ok(s) => {
                for t in &s.tasks {
                    println!("{:>3} {} (line {})", t.index + 1, t.kind.as_str(), t.line);
                }
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Command::Run { session, seed, trials, json, summary, continue_on_error, parallel, timing } => {
            let s = match load(&session) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let name =
                session.file_name().map_or_else(|| session.display().to_string(), |n| n.to_string_lossy().into_owned());
            let opts = RunOptions { seed, trials, continue_on_error, parallel, timing };
            let report = run_session(&s, &name, &opts);
            let text = report.summary_text();
            let written = (|| -> std::io::Result<()> {
                match &json {
                    Some(p) if p.as_os_str() == "-" => print!("{}", report.to_json()),
                    Some(p) => fs::write(p, report.to_json())?,
                    None => {}
                }
                match &summary {
                    Some(p) => fs::write(p, &text)?,
                    None if json.as_ref().is_some_and(|p| p.as_os_str() == "-") => eprint!("{text}"),
                    None => print!("{text}"),
                }
                Ok(())
            })();
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(report.exit_code as u8)
        }
    }
}
