use arbcalc::runtime::Session;
use arbcalc::viz::{render_svg, DEFAULT_HEIGHT, DEFAULT_WIDTH};
use roxmltree::{Document, ParsingOptions};

fn parse(text: &str) -> Document<'_> {
    let opts = ParsingOptions {
        allow_dtd: true,
        ..ParsingOptions::default()
    };
    Document::parse_with_options(text, opts).unwrap_or_else(|e| panic!("not well-formed: {e}\n{text}"))
}

fn session_with(src: &str) -> Session {
    let mut s = Session::new();
    for item in s.run(src) {
        assert_ne!(item.tag.name(), "error", "{}", item.text);
    }
    s
}

#[test]
fn line_chart_has_every_point_and_titles() {
    let s = session_with(
        "$x = sequence(-1, 1, 0.1)\n$y = cos( $x ) * sin( $x )\nplot($x, $y, xtitle=\"x [rad]\", ytitle=\"cos(x)*sin(x)\")",
    );
    let svg = render_svg(s.chart("chart_1").unwrap(), DEFAULT_WIDTH, DEFAULT_HEIGHT);
    let doc = parse(&svg);
    let poly = doc.descendants().find(|n| n.has_tag_name("polyline")).expect("polyline");
    assert_eq!(poly.attribute("points").unwrap().split_whitespace().count(), 21);
    let text_of = |class: &str| {
        doc.descendants()
            .find(|n| n.attribute("class") == Some(class))
            .and_then(|n| n.text())
            .map(str::to_string)
    };
    assert_eq!(text_of("xtitle").as_deref(), Some("x [rad]"));
    assert_eq!(text_of("ytitle").as_deref(), Some("cos(x)*sin(x)"));
    assert_eq!(text_of("title"), None);
}

#[test]
fn scatter_and_histogram_are_well_formed() {
    let s = session_with(
        "plot([1, 2, 3], [3, 1, 2], kind=\"scatter\", title=\"a < b & \\\"c\\\"\")\nfrequency([1, 2, 2, 3, 3, 3], bins=3)",
    );
    let scatter = render_svg(s.chart("chart_1").unwrap(), 300, 200);
    let doc = parse(&scatter);
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("circle")).count(), 3);
    assert!(doc.descendants().any(|n| n.text() == Some("a < b & \"c\"")));

    let hist = render_svg(s.chart("chart_2").unwrap(), DEFAULT_WIDTH, DEFAULT_HEIGHT);
    let doc = parse(&hist);
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("rect")).count(), 3);
}

#[test]
fn reports_are_well_formed() {
    let s = session_with(
        "$x = [9, 3, -1, -2, 4, 5]\nztest($x, 2, 3, report=true)\nttest($x, 2, report=true)\nztest($x, 3, 3, report=true)\n\"<b>&</b>\"\nreport html",
    );
    for name in ["report_1", "report_2", "report_3", "report_4"] {
        let r = s.report(name).unwrap();
        let doc = parse(&r.body);
        assert_eq!(doc.root_element().tag_name().name(), "html", "{name}");
    }
    assert!(s.report("report_1").unwrap().body.contains("One-sample z-test (two-sided)"));
    assert!(s.report("report_3").unwrap().body.contains("p = 1"));
    assert!(s.report("report_4").unwrap().body.contains("&lt;b&gt;&amp;&lt;/b&gt;"));
}

#[test]
fn report_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = session_with("ztest([9, 3, -1, -2, 4, 5], 2, 3, report=true)");
    let path = dir.path().join("z.html");
    assert!(s.run(&format!("export report_1 \"{}\"", path.display())).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), s.report("report_1").unwrap().body);
}
