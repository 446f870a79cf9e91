use crate::lang::{scan, TokenKind};

fn color(kind: TokenKind) -> Option<&'static str> {
    match kind {
        TokenKind::Number | TokenKind::Boolean => Some("36"),
        TokenKind::String => Some("32"),
        TokenKind::Variable => Some("33"),
        TokenKind::Identifier => Some("34"),
        TokenKind::Comment => Some("2"),
        TokenKind::Operator | TokenKind::Continuation => Some("35"),
        TokenKind::Delimiter | TokenKind::Newline | TokenKind::End => None,
    }
}

/// Source text with ANSI colors per token class. Text from a lexical error
/// onwards is shown in red.
pub fn highlight(source: &str) -> String {
    let s = scan(source, true);
    let chars: Vec<char> = source.chars().collect();
    let mut line_start = vec![0usize];
    for (i, c) in chars.iter().enumerate() {
        if *c == '\n' {
            line_start.push(i + 1);
        }
    }
    let offset = |line: usize, col: usize| {
        line_start
            .get(line.saturating_sub(1))
            .map_or(chars.len(), |l| (l + col.saturating_sub(1)).min(chars.len()))
    };
    let starts: Vec<(usize, TokenKind)> = s.tokens.iter().map(|t| (offset(t.line, t.col), t.kind)).collect();
    let stop = s.error.as_ref().map_or(chars.len(), |e| offset(e.line, e.col));

    let mut out = String::new();
    let mut pos = 0;
    for (i, &(start, kind)) in starts.iter().enumerate() {
        if start < pos || start >= stop {
            continue;
        }
        out.extend(&chars[pos..start]);
        let end = starts.get(i + 1).map_or(stop, |n| n.0).min(stop).max(start);
        let seg: String = chars[start..end].iter().collect();
        let body = seg.trim_end();
        match color(kind) {
            Some(code) if !body.is_empty() => {
                out.push_str(&format!("\x1b[{code}m{body}\x1b[0m"));
                out.push_str(&seg[body.len()..]);
            }
            _ => out.push_str(&seg),
        }
        pos = end;
    }
    if pos < stop {
        out.extend(&chars[pos..stop]);
        pos = stop;
    }
    if pos < chars.len() {
        let rest: String = chars[pos..].iter().collect();
        out.push_str(&format!("\x1b[31m{rest}\x1b[0m"));
    }
    out
}
