//! Terminal front end: batch script runner and interactive console.

mod highlight;
mod repl;

use std::io::{self, IsTerminal, Read, Write};
use std::path::{Path, PathBuf};

use clap::Parser;

use crate::bignum::PrecisionContext;
use crate::report::export_report;
use crate::runtime::{ItemTag, ObjectKind, OutputItem, Session, MAX_WORDS};
use crate::viz::export_chart;

pub use highlight::highlight;
pub use repl::repl;

pub const EXIT_OK: i32 = 0;
pub const EXIT_EVAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable naming the interactive history file.
pub const HISTORY_ENV: &str = "ARBCALC_HISTORY";

#[derive(Parser, Debug, Clone, Default)]
#[command(name = "arbcalc", version, about = "Arbitrary-precision calculator console")]
pub struct Config {
    /// Run a script file (`-` reads standard input) instead of the console.
    #[arg(long, value_name = "PATH", conflicts_with = "serve")]
    pub script: Option<String>,

    /// Initial precision in 32-bit words.
    #[arg(long, value_name = "WORDS", value_parser = clap::value_parser!(u32).range(1..=MAX_WORDS as i64))]
    pub precision: Option<u32>,

    /// Directory for charts and reports written in batch mode.
    #[arg(long, value_name = "DIR")]
    pub output_dir: Option<PathBuf>,

    /// Disable colored output.
    #[arg(long)]
    pub no_color: bool,

    /// Serve the JSON protocol on this address instead of the console.
    #[arg(long, value_name = "ADDR")]
    pub serve: Option<String>,
}

impl Config {
    pub fn context(&self) -> PrecisionContext {
        match self.precision {
            Some(w) => PrecisionContext::with_precision(w).expect("range checked by the argument parser"),
            None => PrecisionContext::default(),
        }
    }

    /// History file: the environment variable, else `~/.arbcalc_history`.
    pub fn history_path(&self) -> Option<PathBuf> {
        if let Some(p) = std::env::var_os(HISTORY_ENV) {
            return Some(PathBuf::from(p));
        }
        std::env::var_os("HOME").map(|h| Path::new(&h).join(".arbcalc_history"))
    }
}

/// Dispatches on the configuration and returns the process exit status.
pub fn main(config: Config) -> i32 {
    if let Some(addr) = &config.serve {
        return match crate::service::serve(addr, config.context()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("arbcalc: cannot serve on {addr}: {e}");
                EXIT_USAGE
            }
        };
    }
    match &config.script {
        Some(path) => {
            let source = match read_script(path) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("arbcalc: {path}: {e}");
                    return EXIT_USAGE;
                }
            };
            let dir = config.output_dir.clone().unwrap_or_else(|| PathBuf::from("."));
            let mut session = Session::with_context(config.context());
            run_batch(&mut session, &source, Some(&dir), &mut io::stdout().lock(), &mut io::stderr().lock())
        }
        None => repl(&config),
    }
}

fn read_script(path: &str) -> io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

/// Runs a whole script. Text goes to `out`; the first error goes to `err`
/// and ends the run with [`EXIT_EVAL`]. Charts and reports are written to
/// `export_dir` when given.
pub fn run_batch(
    session: &mut Session,
    source: &str,
    export_dir: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let items = session.run(source);
    let mut status = EXIT_OK;
    for item in &items {
        let written = match item.tag {
            ItemTag::Text => writeln!(out, "{}", item.text),
            ItemTag::Error => {
                status = EXIT_EVAL;
                writeln!(err, "{}", item.text)
            }
            ItemTag::ChartRef | ItemTag::ReportRef => Ok(()),
        };
        if written.is_err() {
            return EXIT_USAGE;
        }
    }
    let created = session.drain_created();
    if let Some(dir) = export_dir.filter(|_| !created.is_empty()) {
        if let Err(e) = std::fs::create_dir_all(dir) {
            let _ = writeln!(err, "arbcalc: {}: {e}", dir.display());
            return EXIT_USAGE;
        }
        for (kind, name) in created {
            if let Err(e) = export_object(session, kind, &name, dir) {
                let _ = writeln!(err, "{e}");
                return EXIT_USAGE;
            }
        }
    }
    status
}

/// Writes one chart (`name.svg`) or report (`name.html` / `name.txt`) into
/// `dir` and returns the path.
pub fn export_object(session: &Session, kind: ObjectKind, name: &str, dir: &Path) -> crate::Result<PathBuf> {
    match kind {
        ObjectKind::Chart => {
            let path = dir.join(format!("{name}.svg"));
            if let Some(c) = session.chart(name) {
                export_chart(c, &path)?;
            }
            Ok(path)
        }
        ObjectKind::Report => {
            let Some(r) = session.report(name) else {
                return Ok(dir.join(name));
            };
            let path = dir.join(format!("{name}.{}", r.kind.extension()));
            export_report(r, &path)?;
            Ok(path)
        }
        _ => Ok(dir.join(name)),
    }
}

/// Ansi styling that switches off entirely when disabled.
#[derive(Clone, Copy, Debug)]
pub struct Style {
    pub enabled: bool,
}

impl Style {
    pub fn detect(no_color: bool) -> Style {
        Style {
            enabled: !no_color && io::stdout().is_terminal() && std::env::var_os("NO_COLOR").is_none(),
        }
    }

    pub fn paint(self, code: &str, s: &str) -> String {
        if self.enabled {
            format!("\x1b[{code}m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }

    /// One console line for an output item.
    pub fn item(self, item: &OutputItem) -> String {
        match item.tag {
            ItemTag::Text => item.text.clone(),
            ItemTag::Error => self.paint("31", &item.text),
            ItemTag::ChartRef => self.paint("2", &format!("chart {} created", item.text)),
            ItemTag::ReportRef => self.paint("2", &format!("report {} created", item.text)),
        }
    }
}
