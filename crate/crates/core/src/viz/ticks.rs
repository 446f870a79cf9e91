/// Axis scale: the displayed interval and its tick positions.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
    /// Power of ten of `step`, used to pick label decimals.
    pub exp10: i32,
    pub ticks: Vec<f64>,
}

pub const MIN_TICKS: usize = 5;
pub const MAX_TICKS: usize = 8;

/// Ladder steps `m·10^k`, ascending, that could produce a reasonable tick
/// count over a span.
fn ladder(span: f64) -> Vec<(f64, i32)> {
    let top = span.log10().floor() as i32;
    let mut out = Vec::new();
    for k in (top - 2)..=(top + 1) {
        for m in [1.0, 2.0, 5.0] {
            out.push((m * 10f64.powi(k), k));
        }
    }
    out
}

fn ticks_between(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

/// Pads `[min, max]` by 5% on each side and chooses a step from the
/// 1/2/5×10^k ladder giving 5–8 ticks, preferring the smaller step. If no
/// step fits inside the padded range, the range is widened outward to
/// multiples of the step.
pub fn autoscale(min: f64, max: f64) -> Axis {
    let (lo, hi) = if min == max {
        let d = if min == 0.0 { 1.0 } else { min.abs() * 0.1 };
        (min - d, max + d)
    } else {
        let pad = (max - min) * 0.05;
        (min - pad, max + pad)
    };
    let steps = ladder(hi - lo);
    let fits = |n: usize| (MIN_TICKS..=MAX_TICKS).contains(&n);
    let inside = steps
        .iter()
        .find(|(s, _)| fits(ticks_between(lo, hi, *s).len()));
    let (step, exp10) = match inside {
        Some(&found) => found,
        None => {
            let span = |s: f64| ((lo / s).floor() as i64, (hi / s).ceil() as i64);
            let widened = steps.iter().find(|(s, _)| {
                let (a, b) = span(*s);
                fits((b - a + 1) as usize)
            });
            let &(s, k) = widened.unwrap_or_else(|| {
                steps
                    .iter()
                    .find(|(s, _)| ticks_between(lo, hi, *s).len() <= MAX_TICKS)
                    .unwrap_or(&steps[steps.len() - 1])
            });
            let (a, b) = span(s);
            return Axis {
                lo: a as f64 * s,
                hi: b as f64 * s,
                step: s,
                exp10: k,
                ticks: (a..=b).map(|i| i as f64 * s).collect(),
            };
        }
    };
    Axis {
        lo,
        hi,
        step,
        exp10,
        ticks: ticks_between(lo, hi, step),
    }
}

/// Tick label with just enough decimals for the step.
pub fn label(v: f64, exp10: i32) -> String {
    let decimals = if exp10 < 0 { (-exp10) as usize } else { 0 };
    let s = format!("{v:.decimals$}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}
