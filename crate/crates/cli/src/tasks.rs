//! The named computations a session can run.

use std::str::FromStr;

use num_rational::BigRational;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use spectral_core::cover::{ideal_norm, BaseFraction, CoverChart, NumericProfile};
use spectral_core::divisors::{direct_image, find_preimage_divisor, inverse_image, GeneralizedDivisor};
use spectral_core::groebner::{is_maximal, maximal_ideals_over, Ideal, QuotientRing};
use spectral_core::kernel::UniPoly;
use spectral_core::spectral::{
    bnr_q_map, conjugacy_search, cover_coeffs, default_bound, degree_formulas, fractional_form, gsp_char_identity,
    gsp_translate, higgs_to_module, krylov_form, matrix_display, module_to_higgs, norm_fiber_check, polarized_rank,
    pushforward, sigma_pullback, sp_duality_check, sp_duality_twist, sp_parity_check, spectral_cover,
    verify_bnr_sequence, verify_sp_witness, BnrStatus, ConjugacyResult, Group, HiggsChart, NormFiber, SpDuality,
    SpectralModule,
};

use crate::report::Status;
use crate::session::{NamedDivisor, Session, Side, Task};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TaskKind {
    NormElement,
    NormIdeal,
    Pushforward,
    Pullback,
    Degree,
    DegreeAt,
    FindPreimage,
    SpectralToHiggs,
    HiggsToSpectral,
    VerifyBnr,
    SlCheck,
    SpCheck,
    GspTranslate,
    Formulas,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Arg {
    /// A divisor name.
    Divisor,
    /// An ideal name, or `S` for the structure sheaf.
    Module,
    Higgs,
    /// An element name or a literal on the cover.
    CoverElement,
    /// A literal on the base.
    BaseLiteral,
    Literals,
    Int,
    Ints,
    Bool,
    Str,
    Strs,
    Rows,
}

impl TaskKind {
    pub const ALL: [TaskKind; 14] = [
        TaskKind::NormElement,
        TaskKind::NormIdeal,
        TaskKind::Pushforward,
        TaskKind::Pullback,
        TaskKind::Degree,
        TaskKind::DegreeAt,
        TaskKind::FindPreimage,
        TaskKind::SpectralToHiggs,
        TaskKind::HiggsToSpectral,
        TaskKind::VerifyBnr,
        TaskKind::SlCheck,
        TaskKind::SpCheck,
        TaskKind::GspTranslate,
        TaskKind::Formulas,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TaskKind::NormElement => "norm-element",
            TaskKind::NormIdeal => "norm-ideal",
            TaskKind::Pushforward => "pushforward",
            TaskKind::Pullback => "pullback",
            TaskKind::Degree => "degree",
            TaskKind::DegreeAt => "degree-at",
            TaskKind::FindPreimage => "find-preimage",
            TaskKind::SpectralToHiggs => "spectral-to-higgs",
            TaskKind::HiggsToSpectral => "higgs-to-spectral",
            TaskKind::VerifyBnr => "verify-bnr",
            TaskKind::SlCheck => "sl-check",
            TaskKind::SpCheck => "sp-check",
            TaskKind::GspTranslate => "gsp-translate",
            TaskKind::Formulas => "formulas",
        }
    }

    /// Label of the identity or construction the task checks, for mapping reports back to the
    /// mathematics.
    pub fn anchor(&self) -> &'static str {
        match self {
            TaskKind::NormElement => "normpr",
            TaskKind::NormIdeal => "NormOfSheaves",
            TaskKind::Pushforward => "DirectImageDef",
            TaskKind::Pullback => "InverseImageDef",
            TaskKind::Degree => "DegreeGenDivDef",
            TaskKind::DegreeAt => "FiberDegree",
            TaskKind::FindPreimage => "SurjDirectImage",
            TaskKind::SpectralToHiggs => "Spectral",
            TaskKind::HiggsToSpectral => "Spectral",
            TaskKind::VerifyBnr => "SpectralExactSeq",
            TaskKind::SlCheck => "DataSL",
            TaskKind::SpCheck => "DataSp",
            TaskKind::GspTranslate => "GSpCharCompare",
            TaskKind::Formulas => "CanonicalSheafOfX",
        }
    }

    fn args(&self) -> &'static [(&'static str, Arg, bool)] {
        use Arg::*;
        match self {
            TaskKind::NormElement => &[("element", CoverElement, true), ("expect", BaseLiteral, false)],
            TaskKind::NormIdeal => {
                &[("ideal", Module, true), ("expect", BaseLiteral, false), ("expect_den", BaseLiteral, false)]
            }
            TaskKind::Pushforward => {
                &[("divisor", Divisor, true), ("expect", Literals, false), ("expect_degrees", Ints, false)]
            }
            TaskKind::Pullback => &[("divisor", Divisor, true), ("expect", Literals, false)],
            TaskKind::Degree => &[("divisor", Divisor, true), ("expect", Int, false)],
            TaskKind::DegreeAt => &[
                ("divisor", Divisor, true),
                ("point", Literals, false),
                ("fiber", Literals, false),
                ("expect", Int, false),
            ],
            TaskKind::FindPreimage => &[("target", BaseLiteral, true)],
            TaskKind::SpectralToHiggs => &[("ideal", Module, false), ("expect", Rows, false)],
            TaskKind::HiggsToSpectral => &[("higgs", Higgs, true), ("bound", Int, false)],
            TaskKind::VerifyBnr => &[
                ("higgs", Higgs, false),
                ("ideal", Module, false),
                ("points", Int, false),
                ("element", CoverElement, false),
            ],
            TaskKind::SlCheck => &[("ideal", Module, false), ("expect", Bool, false)],
            TaskKind::SpCheck => &[("ideal", Module, false)],
            TaskKind::GspTranslate => &[("higgs", Higgs, true)],
            TaskKind::Formulas => &[
                ("r", Int, true),
                ("g", Int, true),
                ("l", Int, true),
                ("d", Int, false),
                ("group", Str, false),
                ("ranks", Strs, false),
                ("mults", Ints, false),
                ("degs", Ints, false),
            ],
        }
    }

    /// Checks argument names, types and references against the session.
    pub fn validate(&self, session: &Session, args: &toml::Table) -> Result<(), String> {
        let allowed = self.args();
        for key in args.keys() {
            if !allowed.iter().any(|(k, _, _)| k == key) {
                return Err(format!("unknown argument `{key}`"));
            }
        }
        for (key, kind, required) in allowed {
            let Some(v) = args.get(*key) else {
                if *required {
                    return Err(format!("missing argument `{key}`"));
                }
                continue;
            };
            let bad = || format!("argument `{key}` has the wrong type");
            match kind {
                Arg::Divisor => {
                    let name = v.as_str().ok_or_else(bad)?;
                    if !session.divisors.contains_key(name) {
                        return Err(format!("undeclared divisor \"{name}\""));
                    }
                }
                Arg::Module => {
                    let name = v.as_str().ok_or_else(bad)?;
                    if name != "S" && !session.ideals.contains_key(name) {
                        return Err(format!("undeclared ideal \"{name}\""));
                    }
                }
                Arg::Higgs => {
                    let name = v.as_str().ok_or_else(bad)?;
                    if !session.higgs.contains_key(name) {
                        return Err(format!("undeclared higgs \"{name}\""));
                    }
                }
                Arg::CoverElement => {
                    let src = v.as_str().ok_or_else(bad)?;
                    session.cover_element(src)?;
                }
                Arg::BaseLiteral => {
                    session.base_element(v.as_str().ok_or_else(bad)?)?;
                }
                Arg::Str => {
                    v.as_str().ok_or_else(bad)?;
                }
                Arg::Int => {
                    v.as_integer().ok_or_else(bad)?;
                }
                Arg::Bool => {
                    v.as_bool().ok_or_else(bad)?;
                }
                Arg::Literals | Arg::Strs => {
                    str_list(v).ok_or_else(bad)?;
                }
                Arg::Ints => {
                    int_list(v).ok_or_else(bad)?;
                }
                Arg::Rows => {
                    let rows = v.as_array().ok_or_else(bad)?;
                    if rows.iter().any(|r| str_list(r).is_none()) {
                        return Err(bad());
                    }
                }
            }
        }
        if *self == TaskKind::DegreeAt && args.contains_key("point") == args.contains_key("fiber") {
            return Err("give exactly one of `point` and `fiber`".into());
        }
        if *self == TaskKind::VerifyBnr && args.contains_key("higgs") && args.contains_key("ideal") {
            return Err("give at most one of `higgs` and `ideal`".into());
        }
        if *self == TaskKind::Formulas {
            if let Some(g) = args.get("group").and_then(|v| v.as_str()) {
                Group::from_str(g).map_err(|e| e.to_string())?;
            }
        }
        Ok(())
    }
}

impl FromStr for TaskKind {
    type Err = String;
    fn from_str(s: &str) -> Result<TaskKind, String> {
        TaskKind::ALL.iter().copied().find(|k| k.as_str() == s).ok_or_else(|| format!("unknown task {s}"))
    }
}

fn str_list(v: &toml::Value) -> Option<Vec<String>> {
    v.as_array()?.iter().map(|x| x.as_str().map(str::to_string)).collect()
}

fn int_list(v: &toml::Value) -> Option<Vec<i64>> {
    v.as_array()?.iter().map(|x| x.as_integer()).collect()
}

/// What a task produced.
pub struct Outcome {
    pub objects: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub status: Status,
    pub message: Option<String>,
}

struct Run<'a> {
    session: &'a Session,
    args: &'a toml::Table,
    trials: usize,
    objects: Map<String, Value>,
    outputs: Map<String, Value>,
}

type TaskResult = Result<(Status, Option<String>), String>;

impl<'a> Run<'a> {
    fn str_arg(&self, key: &str) -> Option<&'a str> {
        self.args.get(key).and_then(|v| v.as_str())
    }

    fn int_arg(&self, key: &str) -> Option<i64> {
        self.args.get(key).and_then(|v| v.as_integer())
    }

    fn out(&mut self, key: &str, v: impl Into<Value>) {
        self.outputs.insert(key.to_string(), v.into());
    }

    fn chart(&self) -> Result<&'a CoverChart, String> {
        self.session.require_cover()
    }

    fn divisor(&mut self, want: Option<Side>) -> Result<&'a NamedDivisor, String> {
        let name = self.str_arg("divisor").expect("validated");
        let d = &self.session.divisors[name];
        if let Some(side) = want {
            if d.side != side {
                return Err(format!("divisor {name} is on the {}, expected the {}", d.side.as_str(), side.as_str()));
            }
        }
        self.objects.insert(name.to_string(), json!({ "on": d.side.as_str(), "value": d.divisor.display() }));
        Ok(d)
    }

    fn module(&mut self) -> Result<(String, SpectralModule), String> {
        let chart = self.chart()?;
        let name = self.str_arg("ideal").unwrap_or("S");
        let m = if name == "S" {
            SpectralModule::structure(chart)
        } else {
            SpectralModule::fractional(self.session.ideals[name].clone())
        };
        self.objects.insert(name.to_string(), Value::String(m.display(chart)));
        Ok((name.to_string(), m))
    }

    fn higgs(&mut self) -> &'a HiggsChart {
        let name = self.str_arg("higgs").expect("validated");
        let phi = &self.session.higgs[name];
        self.objects.insert(name.to_string(), Value::String(phi.display()));
        phi
    }

    fn base_ideal(&self, key: &str, ring: &std::sync::Arc<QuotientRing>, cover: bool) -> Result<Option<Ideal>, String> {
        let Some(v) = self.args.get(key) else { return Ok(None) };
        let gens = str_list(v).expect("validated");
        let polys =
            gens.iter()
                .map(|g| {
                    if cover {
                        self.session.cover_element(g)
                    } else {
                        ring.parse(g).map_err(|e| format!("\"{g}\": {e}"))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(Ideal::new(ring, polys)))
    }
}

fn verdict(ok: bool, failure: impl FnOnce() -> String) -> (Status, Option<String>) {
    if ok {
        (Status::Pass, None)
    } else {
        (Status::Fail, Some(failure()))
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Runs one task with its own random stream.
pub fn run_task(session: &Session, task: &Task, trials: usize, rng: &mut ChaCha8Rng) -> Outcome {
    let mut run = Run { session, args: &task.args, trials, objects: Map::new(), outputs: Map::new() };
    let res = match task.kind {
        TaskKind::NormElement => norm_element(&mut run),
        TaskKind::NormIdeal => norm_ideal(&mut run),
        TaskKind::Pushforward => push_divisor(&mut run),
        TaskKind::Pullback => pull_divisor(&mut run),
        TaskKind::Degree => degree(&mut run),
        TaskKind::DegreeAt => degree_at(&mut run),
        TaskKind::FindPreimage => find_preimage(&mut run),
        TaskKind::SpectralToHiggs => spectral_to_higgs(&mut run),
        TaskKind::HiggsToSpectral => higgs_to_spectral(&mut run, rng),
        TaskKind::VerifyBnr => verify_bnr(&mut run, rng),
        TaskKind::SlCheck => sl_check(&mut run),
        TaskKind::SpCheck => sp_check(&mut run, rng),
        TaskKind::GspTranslate => gsp(&mut run),
        TaskKind::Formulas => formulas(&mut run),
    };
    let (status, message) = match res {
        Ok(x) => x,
        Err(e) => (Status::Error, Some(e)),
    };
    Outcome { objects: run.objects, outputs: run.outputs, status, message }
}

fn norm_element(run: &mut Run) -> TaskResult {
    let chart = run.chart()?;
    let src = run.str_arg("element").expect("validated");
    let f = run.session.cover_element(src)?;
    run.objects.insert(src.to_string(), Value::String(chart.display(&f)));
    let n = chart.element_norm(&f);
    let base = chart.base();
    run.out("norm", base.display(&n));
    run.out("cover_degree", chart.degree());
    match run.str_arg("expect") {
        None => Ok((Status::Ok, None)),
        Some(e) => {
            let want = base.nf(&run.session.base_element(e)?);
            Ok(verdict(want == n, || format!("expected {}", base.display(&want))))
        }
    }
}

fn norm_ideal(run: &mut Run) -> TaskResult {
    let chart = run.chart()?;
    let (_, m) = run.module()?;
    let j = fractional_form(chart, &m).map_err(err)?;
    let norm = ideal_norm(chart, &j).map_err(err)?;
    let var = chart.base().names()[0].clone();
    run.out("norm", norm.display_with(&var));
    run.out("unit", norm.is_unit_ideal());
    match run.str_arg("expect") {
        None => Ok((Status::Ok, None)),
        Some(e) => {
            let num = chart.base_to_uni(&run.session.base_element(e)?).map_err(err)?;
            let den = match run.str_arg("expect_den") {
                Some(d) => chart.base_to_uni(&run.session.base_element(d)?).map_err(err)?,
                None => UniPoly::one(chart.field()),
            };
            let want = BaseFraction::new(&num, &den).map_err(err)?;
            Ok(verdict(want == norm, || format!("expected {}", want.display_with(&var))))
        }
    }
}

fn push_divisor(run: &mut Run) -> TaskResult {
    let chart = run.chart()?;
    let d = &run.divisor(Some(Side::Cover))?.divisor;
    let image = direct_image(chart, d).map_err(err)?;
    run.out("image", image.display());
    let degrees = match (d.chart_degree(), image.chart_degree()) {
        (Ok(a), Ok(b)) => {
            run.out("degrees", json!([a, b]));
            Some([a, b])
        }
        _ => None,
    };
    let mut failures = Vec::new();
    if let Some(want) = run.base_ideal("expect", chart.base(), false)? {
        if !GeneralizedDivisor::effective(want.clone()).equals(&image) {
            failures.push(format!("expected image {}", want.display()));
        }
    }
    if let Some(want) = run.args.get("expect_degrees").and_then(int_list) {
        if degrees.map(|d| d.to_vec()) != Some(want.clone()) {
            failures.push(format!("expected degrees {want:?}"));
        }
    }
    Ok(checked(run, &["expect", "expect_degrees"], failures))
}

/// `OK` when nothing was expected, otherwise `PASS` or `FAIL` with the failures joined.
fn checked(run: &Run, keys: &[&str], failures: Vec<String>) -> (Status, Option<String>) {
    if !keys.iter().any(|k| run.args.contains_key(*k)) {
        return (Status::Ok, None);
    }
    verdict(failures.is_empty(), || failures.join("; "))
}

fn pull_divisor(run: &mut Run) -> TaskResult {
    let chart = run.chart()?;
    let d = &run.divisor(Some(Side::Base))?.divisor;
    let pre = inverse_image(chart, d).map_err(err)?;
    run.out("preimage", pre.display());
    let mut failures = Vec::new();
    if let Some(want) = run.base_ideal("expect", chart.ring(), true)? {
        if !GeneralizedDivisor::effective(want.clone()).equals(&pre) {
            failures.push(format!("expected {}", want.display()));
        }
    }
    Ok(checked(run, &["expect"], failures))
}

fn degree(run: &mut Run) -> TaskResult {
    let d = &run.divisor(None)?.divisor;
    let deg = d.chart_degree().map_err(err)?;
    run.out("degree", deg);
    match run.int_arg("expect") {
        None => Ok((Status::Ok, None)),
        Some(want) => Ok(verdict(want == deg, || format!("expected {want}"))),
    }
}

fn degree_at(run: &mut Run) -> TaskResult {
    let named = run.divisor(None)?;
    let (side, d) = (named.side, &named.divisor);
    let ring = d.ring().clone();
    if let Some(point) = run.base_ideal("point", &ring, side == Side::Cover)? {
        run.out("point", point.display());
        let deg = d.degree_at_point(&point).map_err(err)?;
        run.out("degree", deg);
        return match run.int_arg("expect") {
            None => Ok((Status::Ok, None)),
            Some(want) => Ok(verdict(want == deg, || format!("expected {want}"))),
        };
    }
    // fiber: deg_y(pi_* D) against the sum of deg_x(D) over the points x above y
    if side != Side::Cover {
        return Err("`fiber` needs a divisor on the cover".into());
    }
    let chart = run.chart()?;
    let y = run.base_ideal("fiber", chart.base(), false)?.expect("validated");
    if !is_maximal(&y).map_err(err)? {
        return Err(format!("{} is not a closed point of the base", y.display()));
    }
    run.out("fiber", y.display());
    let image = direct_image(chart, d).map_err(err)?;
    let lhs = image.degree_at_point(&y).map_err(err)?;
    let above = Ideal::new(chart.ring(), y.generators().iter().map(|g| chart.embed_base(g)).collect());
    let mut sum = 0;
    let mut points = Vec::new();
    for p in maximal_ideals_over(&above).map_err(err)? {
        let k = d.degree_at_point(&p).map_err(err)?;
        sum += k;
        points.push(json!({ "point": p.display(), "degree": k }));
    }
    run.out("image_degree", lhs);
    run.out("points", Value::Array(points));
    run.out("sum", sum);
    let (mut status, mut message) =
        verdict(lhs == sum, || format!("degree of the image {lhs} differs from the sum {sum}"));
    if let Some(want) = run.int_arg("expect") {
        if want != lhs {
            status = Status::Fail;
            message = Some(format!("expected {want}"));
        }
    }
    Ok((status, message))
}

fn find_preimage(run: &mut Run) -> TaskResult {
    let chart = run.chart()?;
    let src = run.str_arg("target").expect("validated");
    let target = run.session.base_element(src)?;
    let e = chart.base_to_uni(&target).map_err(err)?;
    let pre = find_preimage_divisor(chart, &e).map_err(err)?;
    run.out("divisor", pre.divisor.display());
    run.out("transcript", pre.transcript.clone());
    let image = direct_image(chart, &pre.divisor).map_err(err)?;
    run.out("image", image.display());
    let want = GeneralizedDivisor::principal(chart.base(), &target);
    Ok(verdict(want.equals(&image), || "the direct image differs from the target".into()))
}

fn spectral_to_higgs(run: &mut Run) -> TaskResult {
    let chart = run.chart()?;
    let (_, m) = run.module()?;
    let phi = pushforward(chart, &m).map_err(err)?.higgs;
    run.out("higgs", phi.display());
    let coeffs = cover_coeffs(chart).map_err(err)?;
    let char_ok = phi.char_coeffs() == coeffs;
    run.out("char_coeffs", phi.char_coeffs().iter().map(|a| a.display_with("t")).collect::<Vec<_>>());
    if !char_ok {
        return Ok((Status::Fail, Some("characteristic polynomial differs from the cover".into())));
    }
    let Some(rows) = run.args.get("expect") else { return Ok((Status::Pass, None)) };
    let rows: Vec<Vec<String>> =
        rows.as_array().expect("validated").iter().map(|r| str_list(r).expect("validated")).collect();
    let want = HiggsChart::parse(chart.field(), &rows).map_err(err)?;
    Ok(verdict(want.matrix() == phi.matrix(), || format!("expected {}", want.display())))
}

fn higgs_to_spectral(run: &mut Run, rng: &mut ChaCha8Rng) -> TaskResult {
    let phi = run.higgs();
    let field = phi.field();
    let chart = spectral_cover(phi).map_err(err)?;
    run.out("cover", cover_display(&phi.char_coeffs()));
    let m = higgs_to_module(&chart, phi).map_err(err)?;
    run.out("module", m.display(&chart));
    run.out("twist", m.twist);
    let krylov = krylov_form(&chart, phi).map_err(err)?;
    run.out("ideal", krylov.ideal.display(&chart));
    let back = module_to_higgs(&chart, &SpectralModule::fractional(krylov.ideal.clone())).map_err(err)?;
    run.out("higgs_back", back.display());
    let presented = module_to_higgs(&chart, &m).map_err(err)?;
    if presented.char_coeffs() != phi.char_coeffs() || back.char_coeffs() != phi.char_coeffs() {
        return Ok((Status::Fail, Some("characteristic polynomial not preserved".into())));
    }
    if !field.is_finite() {
        return Ok((Status::Ok, Some("conjugacy search skipped: needs a finite field".into())));
    }
    let bound = run.int_arg("bound").map_or_else(|| default_bound(phi, &back), |b| b.max(0) as usize);
    run.out("bound", bound);
    match conjugacy_search(phi, &back, bound, run.trials, rng).map_err(err)? {
        ConjugacyResult::Found { g, degree } => {
            run.out("conjugator", matrix_display(&g));
            run.out("conjugator_degree", degree);
            Ok((Status::Pass, None))
        }
        ConjugacyResult::NotConjugate { reason } => Ok((Status::Fail, Some(reason))),
        ConjugacyResult::Undecided { bound } => {
            Ok((Status::Undecided, Some(format!("no invertible conjugator of degree <= {bound}"))))
        }
    }
}

fn verify_bnr(run: &mut Run, rng: &mut ChaCha8Rng) -> TaskResult {
    let (chart, m) = if run.args.contains_key("higgs") {
        let phi = run.higgs();
        let chart = spectral_cover(phi).map_err(err)?;
        let m = higgs_to_module(&chart, phi).map_err(err)?;
        (chart, m)
    } else {
        let (_, m) = run.module()?;
        (run.chart()?.clone(), m)
    };
    let points = run.int_arg("points").unwrap_or(20).max(1) as usize;
    let rep = verify_bnr_sequence(&chart, &m, points, rng).map_err(err)?;
    run.out("rank", rep.rank);
    run.out("psi_q_zero", rep.psi_q_zero);
    run.out("ev_psi_zero", rep.ev_psi_zero);
    let pts: Vec<Value> = rep
        .points
        .iter()
        .map(|p| {
            json!({
                "point": p.point.display_with("t"),
                "rank_psi": p.rank_psi,
                "rank_q": p.rank_q,
                "rank_ev": p.rank_ev,
                "exact": p.exact,
            })
        })
        .collect();
    run.out("points", Value::Array(pts));
    run.out("transcript", rep.transcript.clone());
    if let Some(src) = run.str_arg("element") {
        let f = run.session.cover_element(src)?;
        run.out("q_map", bnr_q_map(&chart, &m, &f).map_err(err)?);
    }
    Ok(match rep.status {
        BnrStatus::Pass => (Status::Pass, None),
        BnrStatus::Fail => (Status::Fail, Some("the sequence is not exact".into())),
        BnrStatus::Inconclusive => (Status::Undecided, rep.transcript.iter().rev().nth(1).cloned()),
    })
}

fn sl_check(run: &mut Run) -> TaskResult {
    let chart = run.chart()?;
    let (_, m) = run.module()?;
    let res = norm_fiber_check(chart, &m).map_err(err)?;
    let var = chart.base().names()[0].clone();
    run.out("in_fiber", res.is_in_fiber());
    match &res {
        NormFiber::InFiber { unit } => run.out("unit", unit.to_string()),
        NormFiber::NotInFiber { norm } => run.out("norm", norm.display_with(&var)),
    }
    match run.args.get("expect").and_then(|v| v.as_bool()) {
        None => Ok((Status::Ok, None)),
        Some(want) => Ok(verdict(want == res.is_in_fiber(), || format!("expected in_fiber = {want}"))),
    }
}

fn sp_check(run: &mut Run, rng: &mut ChaCha8Rng) -> TaskResult {
    let chart = run.chart()?;
    let (_, m) = run.module()?;
    let parity = sp_parity_check(&cover_coeffs(chart).map_err(err)?);
    run.out("parity", parity);
    if !parity {
        return Ok((Status::Fail, Some("the cover is not invariant under x -> -x".into())));
    }
    run.out("twist", sp_duality_twist(chart));
    let sigma = sigma_pullback(chart, &m).map_err(err)?;
    run.out("sigma_pullback", fractional_form(chart, &sigma).map_err(err)?.display(chart));
    let res = sp_duality_check(chart, &m, run.trials, rng).map_err(err)?;
    match res {
        SpDuality::Holds { ref num, ref den } => {
            run.out("witness", res.witness_display(chart).unwrap_or_default());
            let ok = verify_sp_witness(chart, &m, num, den).map_err(err)?;
            run.out("witness_verified", ok);
            Ok(verdict(ok, || "the witness does not verify".into()))
        }
        SpDuality::Fails { reason } => Ok((Status::Fail, Some(reason))),
        SpDuality::Undecided => Ok((Status::Undecided, Some("no witness found".into()))),
    }
}

fn gsp(run: &mut Run) -> TaskResult {
    let phi = run.higgs();
    let (shifted, mu) = gsp_translate(phi).map_err(err)?;
    run.out("shifted", shifted.display());
    run.out("mu", mu.display_with("t"));
    let traceless = shifted.trace().is_zero();
    let identity = gsp_char_identity(phi, &shifted, &mu);
    run.out("traceless", traceless);
    run.out("char_identity", identity);
    Ok(verdict(traceless && identity, || "translation check failed".into()))
}

fn formulas(run: &mut Run) -> TaskResult {
    let p = NumericProfile::new(
        run.int_arg("r").expect("validated"),
        run.int_arg("g").expect("validated"),
        run.int_arg("l").expect("validated"),
        run.int_arg("d").unwrap_or(0),
    )
    .map_err(err)?;
    let groups: Vec<Group> = match run.str_arg("group") {
        Some(g) => vec![g.parse().map_err(err)?],
        None => Group::ALL.to_vec(),
    };
    let records: Vec<Value> = groups
        .iter()
        .map(|g| {
            let rec = degree_formulas(&p, *g);
            json!({
                "group": g.as_str(),
                "cover_degree": rec.cover_degree,
                "d_prime": rec.d_prime,
                "chi": rec.chi,
                "deg_omega": rec.deg_omega,
            })
        })
        .collect();
    run.out("records", Value::Array(records));
    if let Some(ranks) = run.args.get("ranks").and_then(str_list) {
        let ranks = ranks
            .iter()
            .map(|r| BigRational::from_str(r).map_err(|e| format!("rank \"{r}\": {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        let ones = vec![1; ranks.len()];
        let mults = run.args.get("mults").and_then(int_list).unwrap_or_else(|| ones.clone());
        let degs = run.args.get("degs").and_then(int_list).unwrap_or(ones);
        run.out("polarized_rank", polarized_rank(&ranks, &mults, &degs).map_err(err)?.to_string());
    }
    Ok((Status::Ok, None))
}

/// `x^n + a_1 x^(n-1) + ... + a_n` in descending powers of `x`, coefficients in `t`.
pub fn cover_display(coeffs: &[UniPoly]) -> String {
    let n = coeffs.len();
    let power = |k: usize| match k {
        0 => String::new(),
        1 => "x".to_string(),
        _ => format!("x^{k}"),
    };
    let mut out = power(n);
    for (i, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let k = n - 1 - i;
        let c = a.display_with("t");
        let multi = c.contains(' ');
        let (sign, body) = match c.strip_prefix('-') {
            Some(rest) if !multi => ("-", rest.to_string()),
            _ => ("+", c.clone()),
        };
        let term = match (k, body.as_str()) {
            (0, _) if multi => format!("({body})"),
            (0, _) => body.clone(),
            (_, "1") => power(k),
            _ if multi => format!("({body})*{}", power(k)),
            _ => format!("{body}*{}", power(k)),
        };
        out.push_str(&format!(" {sign} {term}"));
    }
    out
}
