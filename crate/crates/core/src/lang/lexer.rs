use std::fmt;

use super::SyntaxError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Number,
    String,
    Boolean,
    /// `$name`; the lexeme includes the `$`.
    Variable,
    Identifier,
    /// One of `+ - * / ^ =`.
    Operator,
    /// One of `( ) [ ] { } ,`.
    Delimiter,
    Newline,
    Continuation,
    Comment,
    End,
}

/// A lexical token. Identifier, variable, boolean and number lexemes are
/// lowercase; string lexemes hold the decoded contents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    pub line: usize,
    pub col: usize,
}

impl Token {
    pub fn is(&self, kind: TokenKind, lexeme: &str) -> bool {
        self.kind == kind && self.lexeme == lexeme
    }

    pub fn is_op(&self, op: &str) -> bool {
        self.is(TokenKind::Operator, op)
    }

    pub fn is_delim(&self, d: &str) -> bool {
        self.is(TokenKind::Delimiter, d)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TokenKind::String => write!(f, "{}", quote(&self.lexeme)),
            TokenKind::Newline => f.write_str("end of line"),
            TokenKind::End => f.write_str("end of input"),
            _ => write!(f, "'{}'", self.lexeme),
        }
    }
}

/// Renders string contents as a source literal.
pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Result of scanning a whole source text.
#[derive(Debug, Clone)]
pub struct Scan {
    /// Tokens up to the first lexical error, terminated by `End` when there
    /// was none.
    pub tokens: Vec<Token>,
    pub error: Option<SyntaxError>,
    /// Brackets still open at the end of input.
    pub open_brackets: usize,
    /// The last physical line ended with `%`.
    pub pending_continuation: bool,
}

/// Splits source text into tokens.
///
/// With `trivia` set, comments and continuation markers are kept and
/// newlines are never suppressed, which is what a highlighter wants.
/// Otherwise newlines inside open brackets and after `%` vanish so that each
/// `Newline` ends a statement.
pub fn scan(source: &str, trivia: bool) -> Scan {
    let mut lx = Lexer {
        chars: source.chars().collect(),
        pos: 0,
        line: 1,
        col: 1,
        depth: 0,
        trivia,
        tokens: Vec::new(),
        continued: false,
    };
    let error = lx.run().err();
    if error.is_none() {
        let (line, col) = (lx.line, lx.col);
        lx.tokens.push(Token {
            kind: TokenKind::End,
            lexeme: String::new(),
            line,
            col,
        });
    }
    Scan {
        tokens: lx.tokens,
        error,
        open_brackets: lx.depth,
        pending_continuation: lx.continued,
    }
}

/// Tokens of `source` with comments dropped and continuations spliced.
pub fn tokenize(source: &str) -> Result<Vec<Token>, SyntaxError> {
    let s = scan(source, false);
    match s.error {
        Some(e) => Err(e),
        None => Ok(s.tokens),
    }
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    depth: usize,
    trivia: bool,
    tokens: Vec<Token>,
    continued: bool,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl Lexer {
    fn peek(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.pos + ahead).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn push(&mut self, kind: TokenKind, lexeme: String, line: usize, col: usize) {
        self.tokens.push(Token { kind, lexeme, line, col });
    }

    fn run(&mut self) -> Result<(), SyntaxError> {
        while let Some(c) = self.peek(0) {
            let (line, col) = (self.line, self.col);
            match c {
                ' ' | '\t' | '\r' => {
                    self.bump();
                }
                '\n' => {
                    self.bump();
                    if self.trivia || (self.depth == 0 && !self.continued) {
                        self.push(TokenKind::Newline, "\n".into(), line, col);
                    }
                    self.continued = false;
                }
                '/' if self.peek(1) == Some('/') => {
                    let mut text = String::new();
                    while let Some(c) = self.peek(0) {
                        if c == '\n' {
                            break;
                        }
                        text.push(c);
                        self.bump();
                    }
                    if self.trivia {
                        self.push(TokenKind::Comment, text, line, col);
                    }
                }
                '%' => {
                    self.bump();
                    if !self.rest_of_line_is_blank() {
                        return Err(SyntaxError::new(
                            "'%' continues a statement only at the end of a line".into(),
                            line,
                            col,
                        ));
                    }
                    self.continued = true;
                    if self.trivia {
                        self.push(TokenKind::Continuation, "%".into(), line, col);
                    }
                }
                '"' => self.string(line, col)?,
                '$' => {
                    self.bump();
                    let name = self.take_while(is_ident_char);
                    if name.is_empty() || !name.starts_with(is_ident_start) {
                        return Err(SyntaxError::new("expected a variable name after '$'".into(), line, col));
                    }
                    self.push(TokenKind::Variable, format!("${}", name.to_ascii_lowercase()), line, col);
                }
                c if c.is_ascii_digit() || (c == '.' && self.peek(1).is_some_and(|d| d.is_ascii_digit())) => {
                    self.number(line, col);
                }
                c if is_ident_start(c) => {
                    let word = self.take_while(is_ident_char).to_ascii_lowercase();
                    let kind = if word == "true" || word == "false" {
                        TokenKind::Boolean
                    } else {
                        TokenKind::Identifier
                    };
                    self.push(kind, word, line, col);
                }
                '+' | '-' | '*' | '/' | '^' | '=' => {
                    self.bump();
                    self.push(TokenKind::Operator, c.to_string(), line, col);
                }
                '(' | '[' | '{' => {
                    self.bump();
                    self.depth += 1;
                    self.push(TokenKind::Delimiter, c.to_string(), line, col);
                }
                ')' | ']' | '}' => {
                    self.bump();
                    self.depth = self.depth.saturating_sub(1);
                    self.push(TokenKind::Delimiter, c.to_string(), line, col);
                }
                ',' => {
                    self.bump();
                    self.push(TokenKind::Delimiter, ",".into(), line, col);
                }
                other => {
                    return Err(SyntaxError::new(format!("illegal character '{other}'"), line, col));
                }
            }
        }
        Ok(())
    }

    fn take_while(&mut self, pred: fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek(0) {
            if !pred(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    /// Only blanks or a comment remain before the end of the physical line.
    fn rest_of_line_is_blank(&self) -> bool {
        let mut i = self.pos;
        while let Some(&c) = self.chars.get(i) {
            match c {
                ' ' | '\t' | '\r' => i += 1,
                '\n' => return true,
                '/' => return self.chars.get(i + 1) == Some(&'/'),
                _ => return false,
            }
        }
        true
    }

    fn number(&mut self, line: usize, col: usize) {
        let mut text = self.take_while(|c| c.is_ascii_digit());
        if self.peek(0) == Some('.') {
            self.bump();
            text.push('.');
            text.push_str(&self.take_while(|c| c.is_ascii_digit()));
        }
        if matches!(self.peek(0), Some('e' | 'E')) {
            let signed = matches!(self.peek(1), Some('+' | '-'));
            let digit_at = if signed { 2 } else { 1 };
            if self.peek(digit_at).is_some_and(|d| d.is_ascii_digit()) {
                self.bump();
                text.push('e');
                if signed {
                    text.push(self.bump().unwrap_or('+'));
                }
                text.push_str(&self.take_while(|c| c.is_ascii_digit()));
            }
        }
        self.push(TokenKind::Number, text, line, col);
    }

    fn string(&mut self, line: usize, col: usize) -> Result<(), SyntaxError> {
        self.bump();
        let mut s = String::new();
        loop {
            match self.peek(0) {
                None | Some('\n') => {
                    return Err(SyntaxError::new("unterminated string".into(), line, col));
                }
                Some('"') => {
                    self.bump();
                    break;
                }
                Some('\\') => {
                    let (el, ec) = (self.line, self.col);
                    self.bump();
                    let decoded = match self.bump() {
                        Some('n') => '\n',
                        Some('t') => '\t',
                        Some('"') => '"',
                        Some('\\') => '\\',
                        Some(other) => {
                            return Err(SyntaxError::new(format!("unknown escape '\\{other}'"), el, ec));
                        }
                        None => return Err(SyntaxError::new("unterminated string".into(), line, col)),
                    };
                    s.push(decoded);
                }
                Some(c) => {
                    s.push(c);
                    self.bump();
                }
            }
        }
        self.push(TokenKind::String, s, line, col);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<(TokenKind, String)> {
        tokenize(src)
            .unwrap()
            .into_iter()
            .map(|t| (t.kind, t.lexeme))
            .collect()
    }

    #[test]
    fn variables_are_case_folded() {
        let toks = kinds("$MyVar * 3");
        assert_eq!(
            toks,
            vec![
                (TokenKind::Variable, "$myvar".into()),
                (TokenKind::Operator, "*".into()),
                (TokenKind::Number, "3".into()),
                (TokenKind::End, String::new()),
            ]
        );
    }

    #[test]
    fn empty_source_is_just_end() {
        assert_eq!(kinds(""), vec![(TokenKind::End, String::new())]);
    }

    #[test]
    fn comments_are_dropped() {
        let toks = kinds("log( 2 ) // note");
        assert_eq!(toks.len(), 5);
        assert_eq!(toks[0], (TokenKind::Identifier, "log".into()));
    }

    #[test]
    fn percent_splices_lines() {
        let joined = kinds("1 + %\n2");
        assert_eq!(joined, kinds("1 + 2"));
        assert_eq!(kinds("1 + % // c\n2"), joined);
    }

    #[test]
    fn open_brackets_suppress_newlines() {
        let toks = kinds("plot(1,\n2)\n3");
        let newlines = toks.iter().filter(|t| t.0 == TokenKind::Newline).count();
        assert_eq!(newlines, 1);
    }

    #[test]
    fn numbers_and_exponents() {
        assert_eq!(kinds("1.5E-3")[0], (TokenKind::Number, "1.5e-3".into()));
        assert_eq!(kinds(".25")[0], (TokenKind::Number, ".25".into()));
        let toks = kinds("2e");
        assert_eq!(toks[0], (TokenKind::Number, "2".into()));
        assert_eq!(toks[1], (TokenKind::Identifier, "e".into()));
    }

    #[test]
    fn strings_decode_escapes() {
        assert_eq!(kinds(r#""a\"b\n""#)[0], (TokenKind::String, "a\"b\n".into()));
    }

    #[test]
    fn errors_carry_positions() {
        let e = tokenize("1 +\n  \"abc").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        let e = tokenize("3 # 4").unwrap_err();
        assert_eq!((e.line, e.col), (1, 3));
        let e = tokenize("1 % 2").unwrap_err();
        assert_eq!((e.line, e.col), (1, 3));
    }

    #[test]
    fn scan_reports_pending_input() {
        assert_eq!(scan("plot(1,", false).open_brackets, 1);
        assert!(scan("1 + %", false).pending_continuation);
        assert!(!scan("1 + 2", false).pending_continuation);
    }

    #[test]
    fn trivia_mode_keeps_comments() {
        let s = scan("1 // c", true);
        assert!(s.tokens.iter().any(|t| t.kind == TokenKind::Comment));
    }
}
