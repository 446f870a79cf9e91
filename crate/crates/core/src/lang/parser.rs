use super::ast::{BinOp, Expr, Statement, Word};
use super::lexer::{scan, Token, TokenKind};
use super::SyntaxError;

/// Parses every statement of `source`. A statement that fails to parse
/// yields its error and parsing resumes at the next line; a lexical error
/// ends the sequence.
pub fn parse_source(source: &str) -> Vec<Result<Statement, SyntaxError>> {
    let s = scan(source, false);
    let mut out = parse_tokens(&s.tokens);
    if let Some(e) = s.error {
        // The statement cut short by the lexical error is replaced by it.
        if let Some(last) = s.tokens.last() {
            if last.kind != TokenKind::Newline {
                out.pop();
            }
        }
        out.push(Err(e));
    }
    out
}

/// Parses one statement; anything after its end is an error.
pub fn parse_statement(source: &str) -> Result<Statement, SyntaxError> {
    let mut all = parse_source(source);
    match all.len() {
        0 => Err(SyntaxError::new("empty statement".into(), 1, 1)),
        1 => all.pop().expect("one element"),
        _ => match all.into_iter().find(|r| r.is_err()) {
            Some(err) => err,
            None => Err(SyntaxError::new("expected a single statement".into(), 1, 1)),
        },
    }
}

/// Parses a token stream; tokens need not end with `End`.
pub fn parse(tokens: &[Token]) -> Vec<Result<Statement, SyntaxError>> {
    parse_tokens(tokens)
}

fn parse_tokens(tokens: &[Token]) -> Vec<Result<Statement, SyntaxError>> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < tokens.len() {
        let end = tokens[start..]
            .iter()
            .position(|t| matches!(t.kind, TokenKind::Newline | TokenKind::End))
            .map_or(tokens.len(), |i| start + i);
        if end > start {
            let mut p = Parser {
                toks: &tokens[start..end],
                pos: 0,
                end_tok: tokens.get(end).cloned(),
            };
            out.push(p.statement());
        }
        start = end + 1;
    }
    out
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    end_tok: Option<Token>,
}

fn describe(t: Option<&Token>) -> String {
    t.map_or_else(|| "end of line".to_string(), ToString::to_string)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, ahead: usize) -> Option<&'a Token> {
        self.toks.get(self.pos + ahead)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    /// Position used for errors at the current token.
    fn here(&self) -> (usize, usize) {
        match self.peek().or(self.end_tok.as_ref()).or(self.toks.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        }
    }

    fn error_here(&self, expected: &str) -> SyntaxError {
        let (line, col) = self.here();
        SyntaxError::new(format!("expected {expected}, found {}", describe(self.peek())), line, col)
    }

    fn eat_delim(&mut self, d: &str) -> bool {
        if self.peek().is_some_and(|t| t.is_delim(d)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Consumes the closing delimiter matching `open`.
    fn close(&mut self, open: &Token, close: &str) -> Result<(), SyntaxError> {
        if self.eat_delim(close) {
            return Ok(());
        }
        if self.peek().is_none() {
            return Err(SyntaxError::new(
                format!("unclosed '{}'", open.lexeme),
                open.line,
                open.col,
            ));
        }
        Err(self.error_here(&format!("'{close}'")))
    }

    fn statement(&mut self) -> Result<Statement, SyntaxError> {
        let first = self.peek().expect("statement has tokens");
        let stmt = if first.kind == TokenKind::Identifier && !self.peek_at(1).is_some_and(|t| t.is_delim("(")) {
            self.pos = self.toks.len();
            Statement::Command {
                name: first.lexeme.clone(),
                args: self.toks[1..]
                    .iter()
                    .map(|t| Word {
                        kind: t.kind,
                        text: t.lexeme.clone(),
                    })
                    .collect(),
            }
        } else if first.kind == TokenKind::Variable && self.peek_at(1).is_some_and(|t| t.is_op("=")) {
            self.pos += 2;
            Statement::Assign {
                target: first.lexeme.clone(),
                value: self.expr()?,
            }
        } else {
            Statement::Expr(self.expr()?)
        };
        if self.peek().is_some() {
            return Err(self.error_here("end of statement"));
        }
        Ok(stmt)
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(t) if t.is_op("+") => BinOp::Add,
                Some(t) if t.is_op("-") => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(t) if t.is_op("*") => BinOp::Mul,
                Some(t) if t.is_op("/") => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek() {
            Some(t) if t.is_op("-") => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(t) if t.is_op("+") => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.postfix()?;
        if self.peek().is_some_and(|t| t.is_op("^")) {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn postfix(&mut self) -> Result<Expr, SyntaxError> {
        let mut e = self.primary()?;
        while let Some(open) = self.peek().filter(|t| t.is_delim("[")) {
            self.pos += 1;
            let idx = self.expr()?;
            self.close(open, "]")?;
            e = Expr::Index(Box::new(e), Box::new(idx));
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        let Some(t) = self.peek() else {
            return Err(self.error_here("an expression"));
        };
        match t.kind {
            TokenKind::Number => {
                self.pos += 1;
                Ok(Expr::Number(t.lexeme.clone()))
            }
            TokenKind::String => {
                self.pos += 1;
                Ok(Expr::Str(t.lexeme.clone()))
            }
            TokenKind::Boolean => {
                self.pos += 1;
                Ok(Expr::Bool(t.lexeme == "true"))
            }
            TokenKind::Variable => {
                self.pos += 1;
                Ok(Expr::Var(t.lexeme.clone()))
            }
            TokenKind::Identifier => {
                self.pos += 1;
                match self.peek() {
                    Some(open) if open.is_delim("(") => {
                        self.pos += 1;
                        self.call(t, open)
                    }
                    _ => Err(SyntaxError::new(
                        format!("'{}' must be called with parentheses", t.lexeme),
                        t.line,
                        t.col,
                    )),
                }
            }
            TokenKind::Delimiter if t.lexeme == "(" => {
                self.pos += 1;
                let e = self.expr()?;
                self.close(t, ")")?;
                Ok(e)
            }
            TokenKind::Delimiter if t.lexeme == "[" => {
                self.pos += 1;
                let items = self.list(t, "]")?;
                Ok(Expr::Vector(items))
            }
            TokenKind::Delimiter if t.lexeme == "{" => {
                self.pos += 1;
                let mut items = self.list(t, "}")?;
                match items.len() {
                    2 => {
                        let im = items.pop().expect("two items");
                        let re = items.pop().expect("two items");
                        Ok(Expr::Complex(Box::new(re), Box::new(im)))
                    }
                    3 => {
                        let c = items.pop().expect("three items");
                        let r = items.pop().expect("three items");
                        let d = items.pop().expect("three items");
                        Ok(Expr::Matrix(Box::new(d), Box::new(r), Box::new(c)))
                    }
                    n => Err(SyntaxError::new(
                        format!(
                            "braces take 2 members (complex) or 3 members (matrix), found {n}"
                        ),
                        t.line,
                        t.col,
                    )),
                }
            }
            _ => Err(self.error_here("an expression")),
        }
    }

    /// Comma-separated expressions up to `close`; the opener is consumed.
    fn list(&mut self, open: &Token, close: &str) -> Result<Vec<Expr>, SyntaxError> {
        let mut items = Vec::new();
        if self.eat_delim(close) {
            return Ok(items);
        }
        loop {
            items.push(self.expr()?);
            if self.eat_delim(",") {
                continue;
            }
            self.close(open, close)?;
            return Ok(items);
        }
    }

    fn call(&mut self, name: &Token, open: &Token) -> Result<Expr, SyntaxError> {
        let mut args = Vec::new();
        let mut options: Vec<(String, Expr)> = Vec::new();
        if !self.eat_delim(")") {
            loop {
                let named = self.peek().is_some_and(|t| t.kind == TokenKind::Identifier)
                    && self.peek_at(1).is_some_and(|t| t.is_op("="));
                if named {
                    let key = self.next().expect("option name");
                    self.pos += 1;
                    if options.iter().any(|(k, _)| *k == key.lexeme) {
                        return Err(SyntaxError::new(
                            format!("option '{}' given twice", key.lexeme),
                            key.line,
                            key.col,
                        ));
                    }
                    options.push((key.lexeme.clone(), self.expr()?));
                } else if !options.is_empty() {
                    return Err(self.error_here("a named option after named options"));
                } else {
                    args.push(self.expr()?);
                }
                if self.eat_delim(",") {
                    continue;
                }
                self.close(open, ")")?;
                break;
            }
        }
        Ok(Expr::Call {
            name: name.lexeme.clone(),
            args,
            options,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(src: &str) -> Statement {
        parse_statement(src).unwrap()
    }

    fn num(n: &str) -> Box<Expr> {
        Box::new(Expr::Number(n.into()))
    }

    #[test]
    fn precedence_and_grouping() {
        let s = one("2^( 3 + 1 ) / 4");
        let expected = Statement::Expr(Expr::Binary(
            BinOp::Div,
            Box::new(Expr::Binary(
                BinOp::Pow,
                num("2"),
                Box::new(Expr::Binary(BinOp::Add, num("3"), num("1"))),
            )),
            num("4"),
        ));
        assert_eq!(s, expected);
    }

    #[test]
    fn power_is_right_associative_and_binds_tighter_than_negation() {
        let s = one("-2^3^2");
        let expected = Statement::Expr(Expr::Neg(Box::new(Expr::Binary(
            BinOp::Pow,
            num("2"),
            Box::new(Expr::Binary(BinOp::Pow, num("3"), num("2"))),
        ))));
        assert_eq!(s, expected);
        assert_eq!(
            one("2^-1"),
            Statement::Expr(Expr::Binary(BinOp::Pow, num("2"), Box::new(Expr::Neg(num("1")))))
        );
    }

    #[test]
    fn braces_make_complex_or_matrix() {
        assert!(matches!(one("{2, -3}"), Statement::Expr(Expr::Complex(..))));
        assert!(matches!(one("{[1,3,-1,4],2,2}"), Statement::Expr(Expr::Matrix(..))));
        assert!(parse_statement("{1}").is_err());
        assert!(parse_statement("{1, 2, 3, 4}").is_err());
    }

    #[test]
    fn commands_are_bare_leading_words() {
        let Statement::Command { name, args } = one("precision 2") else {
            panic!("not a command");
        };
        assert_eq!(name, "precision");
        assert_eq!(args, vec![Word { kind: TokenKind::Number, text: "2".into() }]);
        let Statement::Command { name, args } = one("help invert") else {
            panic!("not a command");
        };
        assert_eq!((name.as_str(), args[0].text.as_str()), ("help", "invert"));
        assert!(matches!(one("precision"), Statement::Command { .. }));
    }

    #[test]
    fn named_options() {
        let s = one("ztest( $x, 2, 3, report=true )");
        let Statement::Expr(Expr::Call { name, args, options }) = s else {
            panic!("not a call");
        };
        assert_eq!(name, "ztest");
        assert_eq!(args.len(), 3);
        assert_eq!(options, vec![("report".to_string(), Expr::Bool(true))]);
        assert!(parse_statement("f(a=1, 2)").is_err());
        assert!(parse_statement("f(a=1, a=2)").is_err());
    }

    #[test]
    fn assignment_and_index() {
        let s = one("$MyVar = $d[0]");
        assert_eq!(
            s,
            Statement::Assign {
                target: "$myvar".into(),
                value: Expr::Index(Box::new(Expr::Var("$d".into())), num("0")),
            }
        );
    }

    #[test]
    fn unclosed_bracket_reported_at_opener() {
        let e = parse_statement("1 + plot(2,\n 3").unwrap_err();
        assert_eq!((e.line, e.col), (1, 9));
        let e = parse_statement("[1, 2").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
    }

    #[test]
    fn errors_resynchronise_at_newline() {
        let all = parse_source("1 +\n2\n* 3\n4");
        assert_eq!(all.len(), 4);
        assert!(all[0].is_err());
        assert!(all[1].is_ok());
        assert!(all[2].is_err());
        assert!(all[3].is_ok());
    }

    #[test]
    fn lexical_error_ends_sequence() {
        let all = parse_source("1\n2 # 3\n4");
        assert_eq!(all.len(), 2);
        assert!(all[0].is_ok());
        assert_eq!(all[1].as_ref().unwrap_err().line, 2);
    }

    #[test]
    fn multi_line_call_with_trailing_continuation() {
        let src = "plot($x, $y,\ntitle = \"test plot\", \nXtitle = \"x axis\", \nYtitle = \"y axis\") %\n";
        let s = one(src);
        let Statement::Expr(Expr::Call { options, .. }) = s else {
            panic!("not a call");
        };
        let keys: Vec<_> = options.iter().map(|o| o.0.as_str()).collect();
        assert_eq!(keys, ["title", "xtitle", "ytitle"]);
    }

    #[test]
    fn printing_reparses_identically() {
        for src in [
            "-(2 - 3) ^ 2",
            "(-2)^2",
            "1 - (2 - 3)",
            "1 - -3",
            "2 / (3 * 4)",
            "(1 + 2)[0]",
            "f(1, a=\"q\\\"\")",
            "{[1, 2], 1, 2}",
            "help invert",
            "--1",
        ] {
            let s = one(src);
            assert_eq!(one(&s.to_string()), s, "{src} printed as {s}");
        }
        assert_eq!(one("(-2)^2").to_string(), "(-2)^2");
        assert_eq!(one("1 - (2 - 3)").to_string(), "1 - (2 - 3)");
        assert_eq!(one("(1 - 2) - 3").to_string(), "1 - 2 - 3");
    }
}
