//! Charts: a double-precision plot model rendered to standalone SVG.

mod svg;
mod ticks;

pub use svg::{render_svg, DEFAULT_HEIGHT, DEFAULT_WIDTH};
pub use ticks::{autoscale, label, Axis, MAX_TICKS, MIN_TICKS};

use crate::error::{Error, Result};
use crate::linalg::NumVector;
use crate::stats::Histogram;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartKind {
    Line,
    Scatter,
    Histogram,
}

impl ChartKind {
    pub fn name(self) -> &'static str {
        match self {
            ChartKind::Line => "xy-line",
            ChartKind::Scatter => "xy-scatter",
            ChartKind::Histogram => "histogram",
        }
    }

    pub fn parse(s: &str) -> Option<ChartKind> {
        match s.to_ascii_lowercase().as_str() {
            "line" | "xy-line" => Some(ChartKind::Line),
            "scatter" | "xy-scatter" => Some(ChartKind::Scatter),
            "histogram" => Some(ChartKind::Histogram),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ChartData {
    Points { x: Vec<f64>, y: Vec<f64> },
    Bins { edges: Vec<f64>, counts: Vec<u64> },
}

/// A chart ready for rendering. All coordinates are finite doubles.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartSpec {
    pub kind: ChartKind,
    pub data: ChartData,
    pub title: Option<String>,
    pub xtitle: Option<String>,
    pub ytitle: Option<String>,
    pub xrange: Option<(f64, f64)>,
    pub yrange: Option<(f64, f64)>,
}

fn finite(v: &[f64], what: &str) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::Range(format!("{what} values do not fit a double")))
    }
}

impl ChartSpec {
    /// Downcasts both vectors to doubles and builds a line or scatter chart.
    pub fn xy(kind: ChartKind, x: &NumVector, y: &NumVector) -> Result<ChartSpec> {
        if x.len() != y.len() {
            return Err(Error::Dimension(format!(
                "plot needs vectors of equal length, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        if x.is_empty() {
            return Err(Error::Domain("plot needs at least one point".into()));
        }
        if kind == ChartKind::Histogram {
            return Err(Error::Domain("use frequency() for histograms".into()));
        }
        let (xs, ys) = (x.to_f64()?, y.to_f64()?);
        finite(&xs, "x")?;
        finite(&ys, "y")?;
        Ok(ChartSpec {
            kind,
            data: ChartData::Points { x: xs, y: ys },
            title: None,
            xtitle: None,
            ytitle: None,
            xrange: None,
            yrange: None,
        })
    }

    pub fn histogram(h: &Histogram) -> ChartSpec {
        ChartSpec {
            kind: ChartKind::Histogram,
            data: ChartData::Bins {
                edges: h.edges(),
                counts: h.counts.clone(),
            },
            title: None,
            xtitle: None,
            ytitle: None,
            xrange: None,
            yrange: None,
        }
    }

    pub fn len(&self) -> usize {
        match &self.data {
            ChartData::Points { x, .. } => x.len(),
            ChartData::Bins { counts, .. } => counts.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// One-line description for object listings.
    pub fn summary(&self) -> String {
        let what = match self.kind {
            ChartKind::Histogram => "bins",
            _ => "points",
        };
        let mut s = format!("{}, {} {what}", self.kind.name(), self.len());
        if let Some(t) = &self.title {
            s.push_str(&format!(", \"{t}\""));
        }
        s
    }
}

/// Writes the chart as an SVG file, replacing any existing file.
pub fn export_chart(c: &ChartSpec, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, render_svg(c, DEFAULT_WIDTH, DEFAULT_HEIGHT)).map_err(|e| crate::Error::Io(format!("{}: {e}", path.display())))
}
