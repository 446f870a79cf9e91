mod common;

use arbcalc::lang::Statement;
use arbcalc::runtime::{ItemTag, ObjectKind, Session};
use common::{random_expr, random_statement, uppercase_code};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SETUP: &str = "$x = [1, 2, 3]\n$y = {2, -1}\n$myvar = 2.5\n$a_1 = {[1, 2, 3, 4], 2, 2}\n$z9 = 7";

fn seeded() -> Session {
    let mut s = Session::new();
    assert!(s.run(SETUP).is_empty());
    s
}

/// Everything observable about a session except its transcript.
fn state(s: &Session) -> String {
    let vars: Vec<String> = s
        .names(ObjectKind::Variable)
        .iter()
        .map(|n| format!("{n}={:?}", s.var(n)))
        .collect();
    format!(
        "{vars:?} {:?} {:?} {:?} {:?}",
        s.names(ObjectKind::Chart),
        s.names(ObjectKind::Report),
        s.names(ObjectKind::Dataset),
        s.context()
    )
}

fn source(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_statement(&mut rng).to_string()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn assignment_is_silent_and_binds_the_value(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(&mut rng, 3);
        let mut direct = seeded();
        let shown = direct.run(&e.to_string());
        let mut bound = seeded();
        let out = bound.run(&format!("$v = {e}"));
        match shown.last().map(|i| i.tag) {
            Some(ItemTag::Error) => prop_assert_eq!(out.len(), 1),
            _ => {
                prop_assert!(out.is_empty(), "{} produced {:?}", e, out);
                let echo = bound.run("$v");
                if let Some(first) = shown.first().filter(|i| i.tag == ItemTag::Text) {
                    prop_assert_eq!(&echo[0].text, &first.text);
                }
            }
        }
    }

    #[test]
    fn failing_statements_leave_state_untouched(seed in any::<u64>()) {
        let src = source(seed);
        let mut s = seeded();
        let before = state(&s);
        let out = s.run(&src);
        if out.last().is_some_and(|i| i.tag == ItemTag::Error) {
            prop_assert_eq!(state(&s), before, "{}", src);
        }
    }

    #[test]
    fn uppercase_source_is_equivalent(seed in any::<u64>()) {
        let src = source(seed);
        let (mut a, mut b) = (seeded(), seeded());
        let (oa, ob) = (a.run(&src), b.run(&uppercase_code(&src)));
        prop_assert_eq!(format!("{oa:?}"), format!("{ob:?}"), "{}", src);
        prop_assert_eq!(state(&a), state(&b));
    }

    #[test]
    fn display_digits_never_change_values(seed in any::<u64>(), digits in 1u32..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(&mut rng, 3);
        let mut s = seeded();
        s.run(&format!("$v = {e}"));
        let before = state(&s);
        s.run(&format!("output_precision {digits}"));
        let mut restored = s.clone();
        restored.run("output_precision 8");
        prop_assert_eq!(state(&restored), before);
    }
}

#[test]
fn generated_statements_cover_every_kind() {
    let kinds: std::collections::BTreeSet<&str> = (0..200)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match random_statement(&mut rng) {
                Statement::Expr(_) => "expr",
                Statement::Assign { .. } => "assign",
                Statement::Command { .. } => "command",
            }
        })
        .collect();
    assert_eq!(kinds.len(), 3);
}

#[test]
fn registry_covers_every_name_in_the_examples() {
    let functions = [
        "log", "exp", "sqrt", "sin", "cos", "pi", "im", "re", "append", "dotprod", "invert", "det", "trace",
        "transpose", "sequence", "mean", "stddev", "ztest", "ttest", "frequency", "plot",
    ];
    for f in functions {
        assert!(arbcalc::runtime::is_function(f), "{f}");
        assert!(arbcalc::runtime::is_function(&f.to_uppercase()), "{f}");
    }
    for c in ["precision", "output_precision", "help", "objects", "delete", "import", "export", "report"] {
        assert!(arbcalc::runtime::is_command(c), "{c}");
    }
    let mut s = Session::new();
    let e = s.run("nosuch(1)");
    assert_eq!(e[0].text, "undefined function nosuch");
}
