//! Printable report documents: test summaries and console snapshots.

use std::fmt::Write;
use std::path::Path;

use crate::bignum::{format_float, format_real};
use crate::error::Result;
use crate::stats::{TTestResult, ZTestResult, ALPHA};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportKind {
    Html,
    Text,
}

impl ReportKind {
    pub fn name(self) -> &'static str {
        match self {
            ReportKind::Html => "html",
            ReportKind::Text => "text",
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            ReportKind::Html => "html",
            ReportKind::Text => "txt",
        }
    }
}

/// An immutable report body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub kind: ReportKind,
    pub body: String,
    pub created_from: String,
}

pub const ZTEST_HEADING: &str = "One-sample z-test (two-sided)";
pub const TTEST_HEADING: &str = "One-sample t-test (two-sided)";

pub fn escape_html(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

const STYLE: &str = "body{font-family:sans-serif;margin:2em}\
table{border-collapse:collapse}\
th,td{border:1px solid #999;padding:4px 10px;text-align:left}\
th{background:#eee}\
pre{background:#f6f6f6;padding:1em}";

fn html_page(title: &str, content: &str) -> String {
    format!(
        "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\"/>\n\
         <title>{t}</title>\n<style>{STYLE}</style>\n</head>\n<body>\n<h1>{t}</h1>\n{content}</body>\n</html>\n",
        t = escape_html(title)
    )
}

/// Heading, `(label, value)` rows, summary line and decision line.
struct Summary {
    heading: &'static str,
    rows: Vec<(&'static str, String)>,
    summary: String,
    decision: String,
}

impl Summary {
    fn render(&self, kind: ReportKind) -> String {
        match kind {
            ReportKind::Html => {
                let mut t = String::from("<table>\n<tr><th>Quantity</th><th>Value</th></tr>\n");
                for (k, v) in &self.rows {
                    let _ = writeln!(t, "<tr><td>{}</td><td>{}</td></tr>", escape_html(k), escape_html(v));
                }
                t.push_str("</table>\n");
                let _ = writeln!(t, "<p class=\"summary\">{}</p>", escape_html(&self.summary));
                let _ = writeln!(t, "<p class=\"decision\">{}</p>", escape_html(&self.decision));
                html_page(self.heading, &t)
            }
            ReportKind::Text => {
                let mut t = format!("{}\n", self.heading);
                let width = self.rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
                for (k, v) in &self.rows {
                    let _ = writeln!(t, "  {k:<width$}  {v}");
                }
                let _ = writeln!(t, "{}", self.summary);
                let _ = writeln!(t, "{}", self.decision);
                t
            }
        }
    }
}

/// Console line summarizing a z-test.
pub fn ztest_summary(r: &ZTestResult, digits: u32) -> String {
    format!("z = {}, p = {}", format_float(&r.z, digits), format_float(&r.p, digits))
}

pub fn ttest_summary(r: &TTestResult, digits: u32) -> String {
    format!(
        "t = {}, df = {}, p = {}",
        format_float(&r.t, digits),
        r.df,
        format_float(&r.p, digits)
    )
}

pub fn ztest_report(r: &ZTestResult, digits: u32, kind: ReportKind) -> Report {
    let s = Summary {
        heading: ZTEST_HEADING,
        rows: vec![
            ("n", r.n.to_string()),
            ("sample mean", format_real(&r.mean, digits)),
            ("mu0", format_real(&r.mu0, digits)),
            ("sigma", format_real(&r.sigma, digits)),
            ("z", format_float(&r.z, digits)),
            ("p (two-sided)", format_float(&r.p, digits)),
        ],
        summary: ztest_summary(r, digits),
        decision: format!("Decision at alpha = {ALPHA}: {}", r.decision),
    };
    Report {
        kind,
        body: s.render(kind),
        created_from: "ztest".into(),
    }
}

pub fn ttest_report(r: &TTestResult, digits: u32, kind: ReportKind) -> Report {
    let s = Summary {
        heading: TTEST_HEADING,
        rows: vec![
            ("n", r.n.to_string()),
            ("sample mean", format_real(&r.mean, digits)),
            ("mu0", format_real(&r.mu0, digits)),
            ("sample stddev", format_float(&r.stddev, digits)),
            ("df", r.df.to_string()),
            ("t", format_float(&r.t, digits)),
            ("p (two-sided)", format_float(&r.p, digits)),
        ],
        summary: ttest_summary(r, digits),
        decision: format!("Decision at alpha = {ALPHA}: {}", r.decision),
    };
    Report {
        kind,
        body: s.render(kind),
        created_from: "ttest".into(),
    }
}

/// Snapshot of console output lines as a report.
pub fn console_report(lines: &[String], kind: ReportKind) -> Report {
    let text = lines.join("\n");
    let body = match kind {
        ReportKind::Text => text,
        ReportKind::Html => html_page("Console output", &format!("<pre>{}</pre>\n", escape_html(&text))),
    };
    Report {
        kind,
        body,
        created_from: "console".into(),
    }
}

/// Writes the report body verbatim, replacing any existing file.
pub fn export_report(r: &Report, path: &Path) -> Result<()> {
    std::fs::write(path, &r.body).map_err(|e| crate::Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::{PrecisionContext, Real};
    use crate::linalg::NumVector;
    use crate::stats::ztest;

    #[test]
    fn ztest_html_contains_numbers() {
        let c = PrecisionContext::default();
        let r = ztest(&NumVector::from_ints(&[9, 3, -1, -2, 4, 5]), &Real::int(2), &Real::int(3), &c).unwrap();
        let rep = ztest_report(&r, 8, ReportKind::Html);
        assert!(rep.body.contains(ZTEST_HEADING));
        assert!(rep.body.contains("z = 0.81649658, p = 0.41421618"));
        assert!(rep.body.contains("fail to reject H0"));
    }

    #[test]
    fn null_mean_prints_unit_p() {
        let c = PrecisionContext::default();
        let r = ztest(&NumVector::from_ints(&[1, 3]), &Real::int(2), &Real::int(1), &c).unwrap();
        assert!(ztest_report(&r, 8, ReportKind::Text).body.contains("p = 1"));
    }

    #[test]
    fn console_text_joins_lines() {
        let r = console_report(&["4".into(), "12".into()], ReportKind::Text);
        assert_eq!(r.body, "4\n12");
        assert_eq!(console_report(&[], ReportKind::Text).body, "");
        assert!(console_report(&["a<b".into()], ReportKind::Html).body.contains("a&lt;b"));
    }
}
