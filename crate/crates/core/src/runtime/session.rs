use std::collections::BTreeMap;
use std::sync::Arc;

use super::commands::run_command;
use super::eval::{eval_expr, Staging};
use super::value::{render_value, Value};
use super::{commands, functions};
use crate::bignum::PrecisionContext;
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::lang::{parse_source, Statement};
use crate::report::Report;
use crate::viz::ChartSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ItemTag {
    Text,
    Error,
    ChartRef,
    ReportRef,
}

impl ItemTag {
    pub fn name(self) -> &'static str {
        match self {
            ItemTag::Text => "text",
            ItemTag::Error => "error",
            ItemTag::ChartRef => "chart_ref",
            ItemTag::ReportRef => "report_ref",
        }
    }
}

/// One unit of console output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputItem {
    pub tag: ItemTag,
    pub text: String,
}

impl OutputItem {
    pub fn text(s: impl Into<String>) -> OutputItem {
        OutputItem {
            tag: ItemTag::Text,
            text: s.into(),
        }
    }

    pub fn error(e: &Error) -> OutputItem {
        OutputItem {
            tag: ItemTag::Error,
            text: e.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ObjectKind {
    Dataset,
    Variable,
    Chart,
    Report,
}

impl ObjectKind {
    pub fn name(self) -> &'static str {
        match self {
            ObjectKind::Dataset => "datasets",
            ObjectKind::Variable => "vars",
            ObjectKind::Chart => "charts",
            ObjectKind::Report => "reports",
        }
    }

    pub fn parse(s: &str) -> Option<ObjectKind> {
        match s {
            "datasets" | "dataset" => Some(ObjectKind::Dataset),
            "vars" | "var" | "variables" | "variable" => Some(ObjectKind::Variable),
            "charts" | "chart" => Some(ObjectKind::Chart),
            "reports" | "report" => Some(ObjectKind::Report),
            _ => None,
        }
    }
}

/// State behind one console: variables, object stores and precision.
///
/// Names are stored case-folded. A statement either succeeds and commits
/// all its effects or fails and leaves the session untouched.
#[derive(Clone, Debug)]
pub struct Session {
    pub(crate) vars: BTreeMap<String, Value>,
    pub(crate) datasets: BTreeMap<String, Arc<Dataset>>,
    pub(crate) charts: BTreeMap<String, ChartSpec>,
    pub(crate) reports: BTreeMap<String, Report>,
    pub(crate) ctx: PrecisionContext,
    pub(crate) chart_counter: u64,
    pub(crate) report_counter: u64,
    transcript: Vec<String>,
    created: Vec<(ObjectKind, String)>,
}

impl Default for Session {
    fn default() -> Self {
        Session::new()
    }
}

impl Session {
    /// Fresh session: 8 words (256 bits), 8 printed digits.
    pub fn new() -> Session {
        Session::with_context(PrecisionContext::default())
    }

    pub fn with_context(ctx: PrecisionContext) -> Session {
        Session {
            vars: BTreeMap::new(),
            datasets: BTreeMap::new(),
            charts: BTreeMap::new(),
            reports: BTreeMap::new(),
            ctx,
            chart_counter: 0,
            report_counter: 0,
            transcript: Vec::new(),
            created: Vec::new(),
        }
    }

    pub fn context(&self) -> &PrecisionContext {
        &self.ctx
    }

    pub fn var(&self, name: &str) -> Option<&Value> {
        self.vars.get(&name.to_ascii_lowercase())
    }

    pub fn chart(&self, name: &str) -> Option<&ChartSpec> {
        self.charts.get(&name.to_ascii_lowercase())
    }

    pub fn report(&self, name: &str) -> Option<&Report> {
        self.reports.get(&name.to_ascii_lowercase())
    }

    pub fn dataset(&self, name: &str) -> Option<&Arc<Dataset>> {
        self.datasets.get(name.trim_start_matches('$').to_ascii_lowercase().as_str())
    }

    /// Registers a dataset under a case-folded name, replacing any previous one.
    pub fn insert_dataset(&mut self, name: &str, d: Dataset) {
        self.datasets
            .insert(name.trim_start_matches('$').to_ascii_lowercase(), Arc::new(d));
    }

    /// Names per object kind, sorted.
    pub fn names(&self, kind: ObjectKind) -> Vec<String> {
        match kind {
            ObjectKind::Dataset => self.datasets.keys().cloned().collect(),
            ObjectKind::Variable => self.vars.keys().cloned().collect(),
            ObjectKind::Chart => self.charts.keys().cloned().collect(),
            ObjectKind::Report => self.reports.keys().cloned().collect(),
        }
    }

    /// Console text and error lines produced so far.
    pub fn transcript(&self) -> &[String] {
        &self.transcript
    }

    /// Charts and reports committed since the last call.
    pub fn drain_created(&mut self) -> Vec<(ObjectKind, String)> {
        std::mem::take(&mut self.created)
    }

    pub(crate) fn note_created(&mut self, kind: ObjectKind, name: String) {
        self.created.push((kind, name));
    }

    /// Resolves `$name` against variables, then datasets.
    pub(crate) fn lookup(&self, name: &str) -> Result<Value> {
        if let Some(v) = self.vars.get(name) {
            return Ok(v.clone());
        }
        let bare = name.trim_start_matches('$');
        if let Some(d) = self.datasets.get(bare) {
            return Ok(Value::Dataset(bare.to_string(), d.clone()));
        }
        Err(Error::UndefinedVariable(name.to_string()))
    }

    /// Executes one parsed statement.
    pub fn execute(&mut self, stmt: &Statement) -> Result<Vec<OutputItem>> {
        match stmt {
            Statement::Expr(e) => {
                let mut staging = Staging::default();
                let v = eval_expr(e, self, &mut staging)?;
                let refs = self.commit(staging);
                let mut items = Vec::new();
                match &v {
                    Value::Chart(_) | Value::Report(_) | Value::Unit => {}
                    other => items.push(OutputItem::text(render_value(other, self.ctx.output_digits()))),
                }
                items.extend(refs);
                Ok(items)
            }
            Statement::Assign { target, value } => {
                let mut staging = Staging::default();
                let v = eval_expr(value, self, &mut staging)?;
                if v == Value::Unit {
                    return Err(Error::Type(format!("nothing to assign to {target}")));
                }
                self.commit(staging);
                self.vars.insert(target.clone(), v);
                Ok(Vec::new())
            }
            Statement::Command { name, args } => run_command(self, name, args),
        }
    }

    /// Commits staged charts and reports, returning their reference items.
    pub(crate) fn commit(&mut self, staging: Staging) -> Vec<OutputItem> {
        let mut items = Vec::new();
        self.chart_counter = staging.chart_counter.max(self.chart_counter);
        self.report_counter = staging.report_counter.max(self.report_counter);
        for (name, chart) in staging.charts {
            self.charts.insert(name.clone(), chart);
            self.note_created(ObjectKind::Chart, name.clone());
            items.push(OutputItem {
                tag: ItemTag::ChartRef,
                text: name,
            });
        }
        for (name, report) in staging.reports {
            self.reports.insert(name.clone(), report);
            self.note_created(ObjectKind::Report, name.clone());
            items.push(OutputItem {
                tag: ItemTag::ReportRef,
                text: name,
            });
        }
        items
    }

    /// Parses and runs `source` statement by statement. Output stops after
    /// the first failing statement, whose error is the last item.
    pub fn run(&mut self, source: &str) -> Vec<OutputItem> {
        let mut items = Vec::new();
        for parsed in parse_source(source) {
            let result = parsed.map_err(Error::from).and_then(|s| self.execute(&s));
            let (out, failed) = match result {
                Ok(out) => (out, false),
                Err(e) => (vec![OutputItem::error(&e)], true),
            };
            for it in &out {
                if matches!(it.tag, ItemTag::Text | ItemTag::Error) {
                    self.transcript.push(it.text.clone());
                }
            }
            items.extend(out);
            if failed {
                break;
            }
        }
        items
    }

    /// Case-insensitive prefix matches, sorted. A fragment starting with `$`
    /// matches variables and datasets; anything else matches function and
    /// command names.
    pub fn complete_prefix(&self, fragment: &str) -> Vec<String> {
        let frag = fragment.to_ascii_lowercase();
        let mut out: Vec<String> = if frag.starts_with('$') {
            self.vars
                .keys()
                .cloned()
                .chain(self.datasets.keys().map(|d| format!("${d}")))
                .filter(|n| n.starts_with(&frag))
                .collect()
        } else {
            functions::registry()
                .iter()
                .map(|f| f.name)
                .chain(commands::registry().iter().map(|c| c.name))
                .filter(|n| n.starts_with(&frag))
                .map(str::to_string)
                .collect()
        };
        out.sort();
        out.dedup();
        out
    }
}
