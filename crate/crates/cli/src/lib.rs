//! Batch driver for session files: parse, run the task list, report.

pub mod report;
pub mod session;
pub mod tasks;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

pub use report::{Record, Report, Status};
pub use session::{Session, SessionError};
pub use tasks::TaskKind;

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    /// Random candidates per randomized search.
    pub trials: usize,
    pub continue_on_error: bool,
    pub parallel: bool,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, trials: 20, continue_on_error: false, parallel: false, timing: false }
    }
}

/// The random stream of task `index`, independent of which other tasks run.
pub fn task_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn run_one(session: &Session, task: &session::Task, opts: &RunOptions) -> Record {
    let start = Instant::now();
    let mut rng = task_rng(opts.seed, task.index);
    let out = tasks::run_task(session, task, opts.trials, &mut rng);
    let args = serde_json::to_value(&task.args).unwrap_or(Value::Null);
    Record {
        index: task.index + 1,
        task: task.kind.as_str(),
        anchor: task.kind.anchor(),
        line: task.line,
        inputs: report::Inputs { args, objects: out.objects },
        outputs: out.outputs,
        status: out.status,
        message: out.message,
        timing_ms: opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    }
}

/// Runs every task. Without `continue_on_error` the batch stops at the first error; in parallel
/// mode all tasks run and the records after that error are dropped, so both modes report the
/// same thing.
pub fn run_session(session: &Session, name: &str, opts: &RunOptions) -> Report {
    let total = session.tasks.len();
    let mut records: Vec<Record> = if opts.parallel && total > 1 {
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(total);
        let mut slots: Vec<Option<Record>> = vec![None; total];
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|k| {
                    s.spawn(move || {
                        session
                            .tasks
                            .iter()
                            .skip(k)
                            .step_by(threads)
                            .map(|t| run_one(session, t, opts))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for r in h.join().expect("task thread panicked") {
                    let i = r.index - 1;
                    slots[i] = Some(r);
                }
            }
        });
        slots.into_iter().map(|r| r.expect("every task ran")).collect()
    } else {
        let mut out = Vec::with_capacity(total);
        for t in &session.tasks {
            let r = run_one(session, t, opts);
            let stop = r.status == Status::Error && !opts.continue_on_error;
            out.push(r);
            if stop {
                break;
            }
        }
        out
    };
    if !opts.continue_on_error {
        if let Some(i) = records.iter().position(|r| r.status == Status::Error) {
            records.truncate(i + 1);
        }
    }
    Report::new(name.to_string(), opts.seed, opts.trials, records, total)
}
