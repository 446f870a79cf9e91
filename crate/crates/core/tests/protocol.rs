mod common;

use common::{start_service, text_lines, Client};
use serde_json::json;

#[test]
fn reconnecting_gives_a_fresh_session() {
    let addr = start_service();
    let mut a = Client::connect(addr);
    a.eval("1", "$myvar = 12");
    let r = a.send(&json!({"id": "2", "kind": "complete", "fragment": "$my"}));
    assert_eq!(r.names.unwrap(), ["$myvar"]);
    drop(a);
    let mut b = Client::connect(addr);
    let r = b.eval("3", "$myvar");
    assert_eq!(r.items.unwrap()[0].text, "undefined variable $myvar");
}

#[test]
fn every_request_gets_one_response_with_its_id() {
    let addr = start_service();
    let mut c = Client::connect(addr);
    for id in ["9", "1", "zz", "1"] {
        let r = c.eval(id, "1 + 1");
        assert_eq!((r.id.as_str(), r.ok), (id, true));
        assert_eq!(text_lines(&r), "2\n");
    }
    let r = c.raw("this is not json");
    assert!(!r.ok);
    let r = c.raw(r#"{"id":"q","kind":"teleport"}"#);
    assert_eq!((r.id.as_str(), r.ok), ("q", false));
    assert!(r.error.unwrap().contains("teleport"));
    let r = c.eval("after", "3");
    assert_eq!(text_lines(&r), "3\n");
}

#[test]
fn charts_reports_and_help_cross_the_wire_as_text() {
    let addr = start_service();
    let mut c = Client::connect(addr);
    let r = c.eval("1", "plot([1, 2], [3, 4])\nztest([9, 3, -1, -2, 4, 5], 2, 3, report=true)");
    let tags: Vec<String> = r.items.unwrap().iter().map(|i| i.tag.clone()).collect();
    assert_eq!(tags, ["chart_ref", "text", "report_ref"]);
    let r = c.send(&json!({"id": "2", "kind": "get_chart", "name": "chart_1"}));
    assert!(r.items.unwrap()[0].text.starts_with("<svg"));
    let r = c.send(&json!({"id": "3", "kind": "get_report", "name": "report_1"}));
    assert_eq!(r.names.unwrap(), ["html"]);
    assert!(r.items.unwrap()[0].text.contains("0.81649658"));
    let r = c.send(&json!({"id": "4", "kind": "get_report", "name": "report_9"}));
    assert_eq!(r.error.as_deref(), Some("unknown report"));
    let r = c.send(&json!({"id": "5", "kind": "help", "name": "invert"}));
    assert!(r.items.unwrap()[0].text.contains("invert(matrix)"));
    let r = c.send(&json!({"id": "6", "kind": "objects"}));
    assert_eq!(r.names.unwrap(), ["datasets", "vars", "charts", "reports"]);
}

#[test]
fn evaluation_errors_are_items_not_protocol_errors() {
    let addr = start_service();
    let mut c = Client::connect(addr);
    let r = c.eval("1", "1\nlog(-1)\n2");
    assert!(r.ok);
    let items = r.items.unwrap();
    assert_eq!(items.len(), 2);
    assert_eq!(items[1].tag, "error");
}
