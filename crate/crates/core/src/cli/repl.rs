use std::borrow::Cow;
use std::cell::RefCell;
use std::rc::Rc;

use rustyline::completion::{Completer, Pair};
use rustyline::error::ReadlineError;
use rustyline::highlight::Highlighter;
use rustyline::hint::Hinter;
use rustyline::validate::{ValidationContext, ValidationResult, Validator};
use rustyline::{Context, Editor, Helper};

use super::{highlight, Config, Style, EXIT_OK, EXIT_USAGE};
use crate::lang::needs_more_input;
use crate::runtime::{is_function, Session};

const PROMPT: &str = ">> ";

struct ConsoleHelper {
    session: Rc<RefCell<Session>>,
    color: bool,
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '$'
}

impl Completer for ConsoleHelper {
    type Candidate = Pair;

    fn complete(&self, line: &str, pos: usize, _: &Context<'_>) -> rustyline::Result<(usize, Vec<Pair>)> {
        let start = line[..pos]
            .char_indices()
            .rev()
            .take_while(|&(_, c)| is_name_char(c))
            .last()
            .map_or(pos, |(i, _)| i);
        let fragment = &line[start..pos];
        if fragment.is_empty() {
            return Ok((pos, Vec::new()));
        }
        let pairs = self
            .session
            .borrow()
            .complete_prefix(fragment)
            .into_iter()
            .map(|name| {
                let replacement = if is_function(&name) { format!("{name}(") } else { name.clone() };
                Pair {
                    display: name,
                    replacement,
                }
            })
            .collect();
        Ok((start, pairs))
    }
}

impl Hinter for ConsoleHelper {
    type Hint = String;
}

impl Highlighter for ConsoleHelper {
    fn highlight<'l>(&self, line: &'l str, _pos: usize) -> Cow<'l, str> {
        if self.color {
            Cow::Owned(highlight(line))
        } else {
            Cow::Borrowed(line)
        }
    }

    fn highlight_char(&self, _line: &str, _pos: usize, _forced: bool) -> bool {
        self.color
    }
}

impl Validator for ConsoleHelper {
    fn validate(&self, ctx: &mut ValidationContext<'_>) -> rustyline::Result<ValidationResult> {
        if needs_more_input(ctx.input()) {
            Ok(ValidationResult::Incomplete)
        } else {
            Ok(ValidationResult::Valid(None))
        }
    }
}

impl Helper for ConsoleHelper {}

/// Interactive console; returns the exit status.
pub fn repl(config: &Config) -> i32 {
    let style = Style::detect(config.no_color);
    let session = Rc::new(RefCell::new(Session::with_context(config.context())));
    let mut editor: Editor<ConsoleHelper, _> = match Editor::new() {
        Ok(e) => e,
        Err(e) => {
            eprintln!("arbcalc: cannot start the console: {e}");
            return EXIT_USAGE;
        }
    };
    editor.set_helper(Some(ConsoleHelper {
        session: session.clone(),
        color: style.enabled,
    }));
    let history = config.history_path();
    if let Some(h) = &history {
        let _ = editor.load_history(h);
    }
    loop {
        match editor.readline(PROMPT) {
            Ok(input) => {
                let trimmed = input.trim();
                if trimmed.is_empty() {
                    continue;
                }
                let _ = editor.add_history_entry(input.as_str());
                if matches!(trimmed.to_ascii_lowercase().as_str(), "exit" | "quit") {
                    break;
                }
                let items = session.borrow_mut().run(&input);
                for item in &items {
                    println!("{}", style.item(item));
                }
            }
            Err(ReadlineError::Interrupted) => continue,
            Err(ReadlineError::Eof) => break,
            Err(e) => {
                eprintln!("arbcalc: {e}");
                return EXIT_USAGE;
            }
        }
    }
    if let Some(h) = &history {
        let _ = editor.save_history(h);
    }
    EXIT_OK
}
