use std::path::Path;
use std::sync::Arc;

use super::eval::Staging;
use super::functions;
use super::session::{ObjectKind, OutputItem, Session};
use super::value::preview;
use crate::bignum::PrecisionContext;
use crate::dataset::{export_dataset, import_dataset, ImportOptions};
use crate::error::{Error, Result};
use crate::lang::{TokenKind, Word};
use crate::report::{console_report, export_report, ReportKind};
use crate::viz::export_chart;

/// Largest accepted `precision` argument, in 32-bit words.
pub const MAX_WORDS: u32 = 1 << 16;

type Handler = fn(&mut Session, &Args) -> Result<Vec<OutputItem>>;

/// A session command with its help text.
pub struct CommandSpec {
    pub name: &'static str,
    pub signature: &'static str,
    pub summary: &'static str,
    pub example: &'static str,
    handler: Handler,
}

static REGISTRY: &[CommandSpec] = &[
    CommandSpec {
        name: "delete",
        signature: "delete name",
        summary: "Removes a variable ($name), dataset, chart or report.",
        example: "delete $myvar",
        handler: c_delete,
    },
    CommandSpec {
        name: "export",
        signature: "export name \"path\"",
        summary: "Writes a chart (SVG), report (HTML or text) or dataset (CSV) to a file.",
        example: "export chart_1 \"plot.svg\"",
        handler: c_export,
    },
    CommandSpec {
        name: "help",
        signature: "help [topic]",
        summary: "Lists functions and commands, or describes one of them.",
        example: "help invert",
        handler: c_help,
    },
    CommandSpec {
        name: "import",
        signature: "import \"path\" name [delimiter=\",\"] [header=true|false]",
        summary: "Reads a comma- or tab-separated file into a dataset; columns are $name[0], $name[1], ...",
        example: "import \"data.csv\" mydataset",
        handler: c_import,
    },
    CommandSpec {
        name: "objects",
        signature: "objects [vars|datasets|charts|reports]",
        summary: "Lists the objects of the session with a preview of each.",
        example: "objects vars",
        handler: c_objects,
    },
    CommandSpec {
        name: "output_precision",
        signature: "output_precision digits",
        summary: "Sets the number of printed significant digits.",
        example: "output_precision 8",
        handler: c_output_precision,
    },
    CommandSpec {
        name: "precision",
        signature: "precision [words]",
        summary: "Sets the internal precision in 32-bit words (printed digits become 8 per word), or shows the current setting.",
        example: "precision 6",
        handler: c_precision,
    },
    CommandSpec {
        name: "report",
        signature: "report [html|text] [name=\"...\"]",
        summary: "Turns the console output so far into a report.",
        example: "report text",
        handler: c_report,
    },
];

pub fn registry() -> &'static [CommandSpec] {
    REGISTRY
}

pub fn lookup(name: &str) -> Option<&'static CommandSpec> {
    let name = name.to_ascii_lowercase();
    REGISTRY.iter().find(|c| c.name == name)
}

pub(crate) fn run_command(s: &mut Session, name: &str, words: &[Word]) -> Result<Vec<OutputItem>> {
    let cmd = lookup(name).ok_or_else(|| Error::UnknownCommand(name.to_string()))?;
    let args = Args::split(cmd.name, words)?;
    (cmd.handler)(s, &args)
}

/// Command words split into positional arguments and `key=value` options.
struct Args {
    cmd: &'static str,
    positional: Vec<Word>,
    options: Vec<(String, Word)>,
}

impl Args {
    fn split(cmd: &'static str, words: &[Word]) -> Result<Args> {
        let mut positional = Vec::new();
        let mut options = Vec::new();
        let mut i = 0;
        while i < words.len() {
            let w = &words[i];
            let is_key = w.kind == TokenKind::Identifier
                && words.get(i + 1).is_some_and(|n| n.kind == TokenKind::Operator && n.text == "=");
            if is_key {
                let value = words
                    .get(i + 2)
                    .ok_or_else(|| Error::Domain(format!("{cmd}: option {} needs a value", w.text)))?;
                options.push((w.text.clone(), value.clone()));
                i += 3;
            } else if w.kind == TokenKind::Operator && w.text == "-" {
                // A sign belongs to the number after it.
                match words.get(i + 1) {
                    Some(n) if n.kind == TokenKind::Number => {
                        positional.push(Word {
                            kind: TokenKind::Number,
                            text: format!("-{}", n.text),
                        });
                        i += 2;
                    }
                    _ => return Err(Error::Domain(format!("{cmd}: unexpected '-'"))),
                }
            } else {
                positional.push(w.clone());
                i += 1;
            }
        }
        Ok(Args { cmd, positional, options })
    }

    fn at_most(&self, n: usize) -> Result<()> {
        if self.positional.len() > n {
            return Err(Error::Domain(format!(
                "{}: too many arguments; usage: {}",
                self.cmd,
                lookup(self.cmd).map_or("", |c| c.signature)
            )));
        }
        Ok(())
    }

    fn no_options(&self) -> Result<()> {
        match self.options.first() {
            Some((k, _)) => Err(Error::Domain(format!("{}: unknown option '{k}'", self.cmd))),
            None => Ok(()),
        }
    }

    fn positive(&self, i: usize, what: &str) -> Result<Option<u32>> {
        let Some(w) = self.positional.get(i) else {
            return Ok(None);
        };
        let bad = || Error::Domain(format!("{}: {what} must be a positive integer, got {}", self.cmd, w.text));
        if w.kind != TokenKind::Number {
            return Err(bad());
        }
        match w.text.parse::<i64>() {
            Ok(v) if v >= 1 && v <= u32::MAX as i64 => Ok(Some(v as u32)),
            _ => Err(bad()),
        }
    }

    /// A bare or `$`-prefixed name.
    fn name(&self, i: usize) -> Option<&str> {
        self.positional
            .get(i)
            .filter(|w| matches!(w.kind, TokenKind::Identifier | TokenKind::Variable))
            .map(|w| w.text.as_str())
    }

    fn string(&self, i: usize) -> Option<&str> {
        self.positional
            .get(i)
            .filter(|w| w.kind == TokenKind::String)
            .map(|w| w.text.as_str())
    }
}

fn text(lines: Vec<String>) -> Vec<OutputItem> {
    if lines.is_empty() {
        Vec::new()
    } else {
        vec![OutputItem::text(lines.join("\n"))]
    }
}

fn precision_summary(ctx: &PrecisionContext) -> String {
    format!(
        "Internal precision is set to {} (memory blocks)\nActual precision: {} bits\nNumber of printed digits: {}",
        ctx.words(),
        ctx.bits(),
        ctx.output_digits()
    )
}

fn c_precision(s: &mut Session, a: &Args) -> Result<Vec<OutputItem>> {
    a.at_most(1)?;
    a.no_options()?;
    match a.positive(0, "the number of words")? {
        None => Ok(text(vec![precision_summary(&s.ctx)])),
        Some(words) if words > MAX_WORDS => Err(Error::Domain(format!(
            "precision: at most {MAX_WORDS} words are supported"
        ))),
        Some(words) => {
            s.ctx = PrecisionContext::with_precision(words)?;
            Ok(Vec::new())
        }
    }
}

fn c_output_precision(s: &mut Session, a: &Args) -> Result<Vec<OutputItem>> {
    a.at_most(1)?;
    a.no_options()?;
    let digits = a
        .positive(0, "the number of digits")?
        .ok_or_else(|| Error::Domain("output_precision: missing number of digits".into()))?;
    s.ctx.set_output_digits(digits)?;
    Ok(Vec::new())
}

/// Usage block for one function or command.
pub fn help_topic(topic: &str) -> Option<String> {
    let block = |sig: &str, sum: &str, ex: &str| format!("{sig}\n  {sum}\n  example: {ex}");
    if let Some(f) = functions::lookup(topic) {
        return Some(block(f.signature, f.summary, f.example));
    }
    lookup(topic).map(|c| block(c.signature, c.summary, c.example))
}

/// Every function and command with its synopsis.
pub fn help_index() -> String {
    let width = functions::registry()
        .iter()
        .map(|f| f.name.len())
        .chain(REGISTRY.iter().map(|c| c.name.len()))
        .max()
        .unwrap_or(0)
        + 2;
    let mut lines = vec!["Functions:".to_string()];
    for f in functions::registry() {
        lines.push(format!("  {:<width$}{}", f.name, f.summary));
    }
    lines.push("Commands:".into());
    for c in REGISTRY {
        lines.push(format!("  {:<width$}{}", c.name, c.summary));
    }
    lines.join("\n")
}

fn c_help(_: &mut Session, a: &Args) -> Result<Vec<OutputItem>> {
    a.at_most(1)?;
    let out = match a.positional.first() {
        None => help_index(),
        Some(w) => help_topic(&w.text).unwrap_or_else(|| format!("no help for {}", w.text)),
    };
    Ok(text(vec![out]))
}

/// One line per object of `kind`: name, type and a short preview.
pub fn object_listing(s: &Session, kind: ObjectKind) -> Vec<String> {
    let d = s.ctx.output_digits();
    match kind {
        ObjectKind::Variable => s
            .vars
            .iter()
            .map(|(k, v)| format!("{k} : {} = {}", v.type_name(), preview(v, d)))
            .collect(),
        ObjectKind::Dataset => s
            .datasets
            .iter()
            .map(|(k, v)| format!("{k} : dataset = {}", v.summary()))
            .collect(),
        ObjectKind::Chart => s
            .charts
            .iter()
            .map(|(k, v)| format!("{k} : chart = {}", v.summary()))
            .collect(),
        ObjectKind::Report => s
            .reports
            .iter()
            .map(|(k, v)| format!("{k} : report = {}, from {}", v.kind.name(), v.created_from))
            .collect(),
    }
}

fn c_objects(s: &mut Session, a: &Args) -> Result<Vec<OutputItem>> {
    a.at_most(1)?;
    a.no_options()?;
    if let Some(w) = a.positional.first() {
        let kind = ObjectKind::parse(&w.text).ok_or_else(|| {
            Error::Domain(format!(
                "objects: unknown kind '{}' (use vars, datasets, charts or reports)",
                w.text
            ))
        })?;
        return Ok(text(object_listing(s, kind)));
    }
    let mut lines = Vec::new();
    for kind in [ObjectKind::Dataset, ObjectKind::Variable, ObjectKind::Chart, ObjectKind::Report] {
        let entries = object_listing(s, kind);
        if !entries.is_empty() {
            lines.push(format!("{}:", kind.name()));
            lines.extend(entries.into_iter().map(|e| format!("  {e}")));
        }
    }
    Ok(text(lines))
}

fn c_delete(s: &mut Session, a: &Args) -> Result<Vec<OutputItem>> {
    a.at_most(1)?;
    a.no_options()?;
    let name = a
        .name(0)
        .ok_or_else(|| Error::Domain("delete: missing object name".into()))?;
    let bare = name.trim_start_matches('$');
    let removed = if name.starts_with('$') {
        s.vars.remove(name).is_some() || s.datasets.remove(bare).is_some()
    } else {
        s.datasets.remove(bare).is_some() || s.charts.remove(bare).is_some() || s.reports.remove(bare).is_some()
    };
    if removed {
        Ok(Vec::new())
    } else {
        Err(Error::UndefinedVariable(name.to_string()))
    }
}

fn c_import(s: &mut Session, a: &Args) -> Result<Vec<OutputItem>> {
    a.at_most(2)?;
    let (Some(path), Some(name)) = (a.string(0), a.name(1)) else {
        return Err(Error::Domain("import: usage: import \"path\" name".into()));
    };
    let mut opts = ImportOptions::default();
    for (k, v) in &a.options {
        match (k.as_str(), v.kind) {
            ("delimiter", TokenKind::String | TokenKind::Identifier) => {
                opts.delimiter = Some(match v.text.as_str() {
                    "tab" => b'\t',
                    "comma" => b',',
                    t if t.len() == 1 => t.as_bytes()[0],
                    t => {
                        return Err(Error::Domain(format!(
                            "import: delimiter must be one character, got \"{t}\""
                        )))
                    }
                });
            }
            ("header", TokenKind::Boolean) => opts.header = Some(v.text == "true"),
            _ => return Err(Error::Domain(format!("import: invalid option {k}={}", v.text))),
        }
    }
    let d = import_dataset(Path::new(path), opts, &s.ctx)?;
    s.datasets.insert(name.trim_start_matches('$').to_string(), Arc::new(d));
    Ok(Vec::new())
}

/// Every decimal digit the working precision fully determines; decimal
/// input therefore exports as written.
fn export_digits(ctx: &PrecisionContext) -> u32 {
    ((ctx.bits() as f64 * std::f64::consts::LOG10_2).floor() as u32).max(1)
}

fn c_export(s: &mut Session, a: &Args) -> Result<Vec<OutputItem>> {
    a.at_most(2)?;
    a.no_options()?;
    let (Some(name), Some(path)) = (a.name(0), a.string(1)) else {
        return Err(Error::Domain("export: usage: export name \"path\"".into()));
    };
    let bare = name.trim_start_matches('$');
    let path = Path::new(path);
    if let Some(c) = s.charts.get(bare) {
        export_chart(c, path)?;
    } else if let Some(r) = s.reports.get(bare) {
        export_report(r, path)?;
    } else if let Some(d) = s.datasets.get(bare) {
        export_dataset(d, path, export_digits(&s.ctx))?;
    } else if s.vars.contains_key(name) {
        return Err(Error::Type(format!(
            "export: {name} is a variable; only charts, reports and datasets can be exported"
        )));
    } else {
        return Err(Error::UndefinedVariable(name.to_string()));
    }
    Ok(Vec::new())
}

fn c_report(s: &mut Session, a: &Args) -> Result<Vec<OutputItem>> {
    a.at_most(1)?;
    let kind = match a.positional.first().map(|w| w.text.as_str()) {
        None | Some("html") => ReportKind::Html,
        Some("text") => ReportKind::Text,
        Some(other) => {
            return Err(Error::Domain(format!("report: unknown format '{other}' (use html or text)")))
        }
    };
    let mut requested = None;
    for (k, v) in &a.options {
        match (k.as_str(), v.kind) {
            ("name", TokenKind::String | TokenKind::Identifier) => requested = Some(v.text.clone()),
            _ => return Err(Error::Domain(format!("report: invalid option {k}={}", v.text))),
        }
    }
    let mut st = Staging::default();
    let name = st.report_name(s, requested.as_deref())?;
    st.reports.push((name, console_report(s.transcript(), kind)));
    Ok(s.commit(st))
}
