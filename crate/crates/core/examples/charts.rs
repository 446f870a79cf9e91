//! Line chart and histogram rendered to SVG files in the temp dir.

use arbcalc::runtime::Session;
use arbcalc::viz::{render_svg, DEFAULT_HEIGHT, DEFAULT_WIDTH};

fn main() {
    let mut session = Session::new();
    let source = "$x = sequence(-1, 1, 0.1)\n\
                  $y = cos( $x ) * sin( $x )\n\
                  plot($x, $y, xtitle=\"x [rad]\", ytitle=\"cos(x)*sin(x)\")\n\
                  frequency($y, bins=5, title=\"distribution of y\")";
    for item in session.run(source) {
        println!("{}: {}", item.tag.name(), item.text);
    }
    for name in ["chart_1", "chart_2"] {
        let chart = session.chart(name).expect("chart was created");
        let path = std::env::temp_dir().join(format!("{name}.svg"));
        std::fs::write(&path, render_svg(chart, DEFAULT_WIDTH, DEFAULT_HEIGHT)).expect("temp dir is writable");
        println!("{} -> {}", chart.summary(), path.display());
    }
}
