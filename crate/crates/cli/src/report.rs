//! Task records, the JSON report and the plain-text summary.

use serde::Serialize;
use serde_json::{Map, Value};

/// Version of the JSON layout. Field names are frozen within a version.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    /// A computation with nothing to verify.
    Ok,
    Pass,
    Fail,
    Undecided,
    Error,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "OK",
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Undecided => "UNDECIDED",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Inputs {
    pub args: Value,
    /// Named session objects the task used, as displayed.
    pub objects: Map<String, Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    /// 1-based position in the task list.
    pub index: usize,
    pub task: &'static str,
    pub anchor: &'static str,
    pub line: usize,
    pub inputs: Inputs,
    pub outputs: Map<String, Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    /// Only with `--timing`, since it breaks byte-identical reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub tasks: usize,
    pub ok: usize,
    pub pass: usize,
    pub fail: usize,
    pub undecided: usize,
    pub error: usize,
    /// Tasks not run because an earlier task failed with an error.
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub session: String,
    pub seed: u64,
    pub trials: usize,
    pub records: Vec<Record>,
    pub summary: Counts,
    pub exit_code: i32,
}

impl Report {
    pub fn new(session: String, seed: u64, trials: usize, records: Vec<Record>, total: usize) -> Report {
        let mut c = Counts { tasks: total, ..Counts::default() };
        for r in &records {
            match r.status {
                Status::Ok => c.ok += 1,
                Status::Pass => c.pass += 1,
                Status::Fail => c.fail += 1,
                Status::Undecided => c.undecided += 1,
                Status::Error => c.error += 1,
            }
        }
        c.skipped = total - records.len();
        let exit_code = exit_code(&c);
        Report { schema_version: SCHEMA_VERSION, session, seed, trials, records, summary: c, exit_code }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn summary_text(&self) -> String {
        let mut out = format!("session {} (seed {})\n", self.session, self.seed);
        for r in &self.records {
            out.push_str(&format!("[{:>3}] {:<18} {:<9} {}", r.index, r.task, r.status.as_str(), r.anchor));
            if let Some(m) = &r.message {
                out.push_str(&format!(": {m}"));
            }
            out.push('\n');
            for (k, v) in &r.outputs {
                let shown = match v {
                    Value::String(s) => s.clone(),
                    Value::Array(a) if a.len() > 6 => format!("[{} entries]", a.len()),
                    other => other.to_string(),
                };
                out.push_str(&format!("      {k} = {shown}\n"));
            }
        }
        let c = &self.summary;
        out.push_str(&format!(
            "{} tasks: {} ok, {} pass, {} fail, {} undecided, {} error, {} skipped; exit {}\n",
            c.tasks, c.ok, c.pass, c.fail, c.undecided, c.error, c.skipped, self.exit_code
        ));
        out
    }
}

/// 1 on any error, else 2 on any failure, else 3 if something is undecided, else 0.
pub fn exit_code(c: &Counts) -> i32 {
    if c.error > 0 || c.skipped > 0 {
        1
    } else if c.fail > 0 {
        2
    } else if c.undecided > 0 {
        3
    } else {
        0
    }
}
