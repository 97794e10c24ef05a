//! Session files: a field, a base ring, a cover, named objects and a task list, in TOML.
//!
//! The grammar is documented in `docs/session-grammar.md`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Deserialize;
use toml::Spanned;

use spectral_core::cover::{CoverChart, FractionalIdeal};
use spectral_core::divisors::GeneralizedDivisor;
use spectral_core::groebner::{Ideal, QuotientRing};
use spectral_core::kernel::{Field, KernelError, MultiPoly, UniPoly};
use spectral_core::spectral::HiggsChart;

use crate::tasks::TaskKind;

/// A session error with the 1-based line and column of the offending input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SessionError {}

type Lit = Spanned<String>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSession {
    field: Spanned<toml::Value>,
    base: Option<RawBase>,
    cover: Option<RawCover>,
    #[serde(default)]
    elements: BTreeMap<String, Lit>,
    #[serde(default)]
    ideals: BTreeMap<String, RawIdeal>,
    #[serde(default)]
    divisors: BTreeMap<String, RawDivisor>,
    #[serde(default)]
    higgs: BTreeMap<String, RawHiggs>,
    #[serde(default)]
    task: Vec<Spanned<toml::Table>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBase {
    vars: Vec<String>,
    #[serde(default)]
    relations: Vec<Lit>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCover {
    kind: Spanned<String>,
    var: Option<String>,
    coeffs: Option<Vec<Lit>>,
    names: Option<Vec<String>>,
    table: Option<Vec<Vec<Vec<Lit>>>>,
    #[serde(default)]
    aliases: BTreeMap<String, Lit>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIdeal {
    gens: Vec<Lit>,
    den: Option<Lit>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDivisor {
    ideal: Vec<Lit>,
    negative: Option<Lit>,
    #[serde(default = "cover_side")]
    on: Spanned<String>,
}

fn cover_side() -> Spanned<String> {
    Spanned::new(0..0, "cover".into())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHiggs {
    rows: Vec<Vec<Lit>>,
    #[serde(default)]
    twist: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Base,
    Cover,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Base => "base",
            Side::Cover => "cover",
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedDivisor {
    pub side: Side,
    pub divisor: GeneralizedDivisor,
}

/// One entry of the task list: its kind, its arguments as written, and where it starts.
#[derive(Clone, Debug)]
pub struct Task {
    pub index: usize,
    pub kind: TaskKind,
    pub args: toml::Table,
    pub line: usize,
    pub column: usize,
}

/// A parsed and resolved session.
#[derive(Clone, Debug)]
pub struct Session {
    pub field: Field,
    pub base: Arc<QuotientRing>,
    pub cover: Option<CoverChart>,
    pub aliases: HashMap<String, MultiPoly>,
    pub elements: BTreeMap<String, MultiPoly>,
    pub ideals: BTreeMap<String, FractionalIdeal>,
    pub divisors: BTreeMap<String, NamedDivisor>,
    pub higgs: BTreeMap<String, HiggsChart>,
    pub tasks: Vec<Task>,
    source: String,
}

struct Ctx<'a> {
    src: &'a str,
}

impl Ctx<'_> {
    fn at(&self, offset: usize, message: impl Into<String>) -> SessionError {
        let before = &self.src[..offset.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
        SessionError { line, column, message: message.into() }
    }

    fn span_err<T>(&self, s: &Spanned<T>, message: impl Into<String>) -> SessionError {
        self.at(s.span().start, message)
    }

    /// Parses a literal, pointing parse errors at the character inside the string.
    fn poly(
        &self,
        ring: &QuotientRing,
        lit: &Lit,
        aliases: &HashMap<String, MultiPoly>,
    ) -> Result<MultiPoly, SessionError> {
        ring.parse_with_aliases(lit.get_ref(), aliases).map_err(|e| match e {
            // +1 for the opening quote
            KernelError::Parse { pos, msg } => {
                self.at(lit.span().start + 1 + pos, format!("in \"{}\": {msg}", lit.get_ref()))
            }
            other => self.span_err(lit, other.to_string()),
        })
    }
}

impl Session {
    pub fn parse(src: &str) -> Result<Session, SessionError> {
        let ctx = Ctx { src };
        let raw: RawSession = toml::from_str(src).map_err(|e| match e.span() {
            Some(span) => ctx.at(span.start, e.message().to_string()),
            None => SessionError { line: 1, column: 1, message: e.message().to_string() },
        })?;
        let field = parse_field(&ctx, &raw.field)?;
        let no_aliases = HashMap::new();

        let base = match &raw.base {
            None => Arc::new(QuotientRing::polynomial(field, vec!["t".into()])),
            Some(b) => {
                let free = QuotientRing::polynomial(field, b.vars.clone());
                let rels =
                    b.relations.iter().map(|r| ctx.poly(&free, r, &no_aliases)).collect::<Result<Vec<_>, _>>()?;
                Arc::new(QuotientRing::new(field, b.vars.clone(), rels))
            }
        };

        let (cover, aliases) = match &raw.cover {
            None => (None, HashMap::new()),
            Some(c) => {
                let chart = build_cover(&ctx, &base, c)?;
                let mut aliases = HashMap::new();
                for (name, lit) in &c.aliases {
                    let value = ctx.poly(chart.ring(), lit, &no_aliases)?;
                    aliases.insert(name.clone(), value);
                }
                (Some(chart), aliases)
            }
        };

        let need_cover = |what: &str, at: usize| -> Result<&CoverChart, SessionError> {
            cover.as_ref().ok_or_else(|| ctx.at(at, format!("{what} needs a [cover] section")))
        };

        let mut elements = BTreeMap::new();
        for (name, lit) in &raw.elements {
            let chart = need_cover(&format!("element {name}"), lit.span().start)?;
            elements.insert(name.clone(), ctx.poly(chart.ring(), lit, &aliases)?);
        }

        let mut ideals = BTreeMap::new();
        for (name, entry) in &raw.ideals {
            let at = entry.gens.first().map_or(0, |g| g.span().start);
            let chart = need_cover(&format!("ideal {name}"), at)?;
            let gens = entry.gens.iter().map(|g| ctx.poly(chart.ring(), g, &aliases)).collect::<Result<Vec<_>, _>>()?;
            let num = Ideal::new(chart.ring(), gens);
            let j = match &entry.den {
                None => FractionalIdeal::integral(num),
                Some(d) => {
                    let den = ctx.poly(chart.ring(), d, &aliases)?;
                    FractionalIdeal::new(chart, num, den).map_err(|e| ctx.span_err(d, format!("ideal {name}: {e}")))?
                }
            };
            ideals.insert(name.clone(), j);
        }

        let mut divisors = BTreeMap::new();
        for (name, entry) in &raw.divisors {
            let at = entry.ideal.first().map_or(0, |g| g.span().start);
            let (side, ring, al) = match entry.on.get_ref().as_str() {
                "cover" => (Side::Cover, need_cover(&format!("divisor {name}"), at)?.ring().clone(), &aliases),
                "base" => (Side::Base, base.clone(), &no_aliases),
                other => {
                    return Err(ctx.span_err(
                        &entry.on,
                        format!("divisor {name}: `on` must be \"base\" or \"cover\", found \"{other}\""),
                    ))
                }
            };
            let gens = entry.ideal.iter().map(|g| ctx.poly(&ring, g, al)).collect::<Result<Vec<_>, _>>()?;
            let negative = entry.negative.as_ref().map(|n| ctx.poly(&ring, n, al)).transpose()?;
            let divisor = GeneralizedDivisor::new(Ideal::new(&ring, gens), negative)
                .map_err(|e| ctx.at(at, format!("divisor {name}: {e}")))?;
            divisors.insert(name.clone(), NamedDivisor { side, divisor });
        }

        let line_ring = QuotientRing::polynomial(field, vec!["t".into()]);
        let mut higgs = BTreeMap::new();
        for (name, entry) in &raw.higgs {
            let mut rows = Vec::with_capacity(entry.rows.len());
            for row in &entry.rows {
                let mut out = Vec::with_capacity(row.len());
                for lit in row {
                    let p = ctx.poly(&line_ring, lit, &no_aliases)?;
                    out.push(p.to_uni(0).unwrap_or_else(|| UniPoly::zero(field)));
                }
                rows.push(out);
            }
            let at = entry.rows.first().and_then(|r| r.first()).map_or(0, |l| l.span().start);
            let n = rows.len();
            if rows.iter().any(|r| r.len() != n) {
                return Err(ctx.at(at, format!("higgs {name}: matrix is not square")));
            }
            let m =
                spectral_core::kernel::Matrix::from_rows(rows).map_err(|e| ctx.at(at, format!("higgs {name}: {e}")))?;
            let phi = HiggsChart::new(field, m).map_err(|e| ctx.at(at, format!("higgs {name}: {e}")))?;
            higgs.insert(name.clone(), phi.with_twist(entry.twist));
        }

        let mut session = Session {
            field,
            base,
            cover,
            aliases,
            elements,
            ideals,
            divisors,
            higgs,
            tasks: Vec::new(),
            source: src.to_string(),
        };
        for (index, t) in raw.task.iter().enumerate() {
            let start = t.span().start;
            let table = t.get_ref().clone();
            let name = match table.get("name") {
                Some(toml::Value::String(s)) => s.clone(),
                _ => return Err(ctx.at(start, "task without a string `name`")),
            };
            let kind: TaskKind = name.parse().map_err(|_| ctx.at(start, format!("unknown task \"{name}\"")))?;
            let mut args = table;
            args.remove("name");
            kind.validate(&session, &args).map_err(|m| ctx.at(start, format!("task {} ({name}): {m}", index + 1)))?;
            let pos = ctx.at(start, "");
            session.tasks.push(Task { index, kind, args, line: pos.line, column: pos.column });
        }
        Ok(session)
    }

    /// The session text as given.
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn require_cover(&self) -> Result<&CoverChart, String> {
        self.cover.as_ref().ok_or_else(|| "the session has no [cover]".to_string())
    }

    /// A cover element given by name or as a literal.
    pub fn cover_element(&self, src: &str) -> Result<MultiPoly, String> {
        if let Some(e) = self.elements.get(src) {
            return Ok(e.clone());
        }
        let chart = self.require_cover()?;
        chart.ring().parse_with_aliases(src, &self.aliases).map_err(|e| format!("element \"{src}\": {e}"))
    }

    pub fn base_element(&self, src: &str) -> Result<MultiPoly, String> {
        self.base.parse(src).map_err(|e| format!("\"{src}\": {e}"))
    }
}

fn parse_field(ctx: &Ctx, v: &Spanned<toml::Value>) -> Result<Field, SessionError> {
    match v.get_ref() {
        toml::Value::Integer(p) if *p > 1 => Field::prime(*p as u64).map_err(|e| ctx.span_err(v, e.to_string())),
        toml::Value::String(s) if matches!(s.as_str(), "Q" | "QQ" | "rational") => Ok(Field::Rational),
        other => Err(ctx.span_err(v, format!("field must be a prime or \"Q\", found {other}"))),
    }
}

fn build_cover(ctx: &Ctx, base: &Arc<QuotientRing>, c: &RawCover) -> Result<CoverChart, SessionError> {
    let none = HashMap::new();
    match c.kind.get_ref().as_str() {
        "monic" => {
            let coeffs = c.coeffs.as_ref().ok_or_else(|| ctx.span_err(&c.kind, "monic cover needs `coeffs`"))?;
            let a = coeffs.iter().map(|l| ctx.poly(base, l, &none)).collect::<Result<Vec<_>, _>>()?;
            let var = c.var.clone().unwrap_or_else(|| "x".into());
            CoverChart::monic(base.clone(), &var, a).map_err(|e| ctx.span_err(&c.kind, e.to_string()))
        }
        "free" => {
            let names = c.names.clone().ok_or_else(|| ctx.span_err(&c.kind, "free cover needs `names`"))?;
            let table = c.table.as_ref().ok_or_else(|| ctx.span_err(&c.kind, "free cover needs `table`"))?;
            let table = table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|entry| entry.iter().map(|l| ctx.poly(base, l, &none)).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            CoverChart::free(base.clone(), names, table).map_err(|e| ctx.span_err(&c.kind, e.to_string()))
        }
        other => Err(ctx.span_err(&c.kind, format!("cover kind must be \"monic\" or \"free\", found \"{other}\""))),
    }
}
