use std::fmt;

use crate::logic::{Distinguished, Formula, Signature, Var, RESERVED};

/// Byte range in the source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub span: Span,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

impl ParseError {
    pub(crate) fn at(text: &str, span: Span, message: impl Into<String>) -> Self {
        let before = &text[..span.start.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.chars().rev().take_while(|&c| c != '\n').count() + 1;
        ParseError {
            message: message.into(),
            span,
            line,
            column,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Bang,
    Amp,
    Bar,
    Arrow,
    DoubleArrow,
    Eq,
    Neq,
    Lt,
    Gt,
    Tilde,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Bang => "`!`".into(),
        Tok::Amp => "`&`".into(),
        Tok::Bar => "`|`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::DoubleArrow => "`<->`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Neq => "`!=`".into(),
        Tok::Lt => "`<`".into(),
        Tok::Gt => "`>`".into(),
        Tok::Tilde => "`~`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let two = |s: &str| text[i..].starts_with(s);
        let (tok, len) = if two("<->") {
            (Tok::DoubleArrow, 3)
        } else if two("->") {
            (Tok::Arrow, 2)
        } else if two("!=") {
            (Tok::Neq, 2)
        } else {
            match c {
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                b',' => (Tok::Comma, 1),
                b'!' => (Tok::Bang, 1),
                b'&' => (Tok::Amp, 1),
                b'|' => (Tok::Bar, 1),
                b'=' => (Tok::Eq, 1),
                b'<' => (Tok::Lt, 1),
                b'>' => (Tok::Gt, 1),
                b'~' => (Tok::Tilde, 1),
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let mut j = i;
                    while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                        j += 1;
                    }
                    (Tok::Ident(text[i..j].to_string()), j - i)
                }
                _ => {
                    let ch = text[i..].chars().next().unwrap();
                    return Err(ParseError::at(
                        text,
                        Span { start, end: start + ch.len_utf8() },
                        format!("unexpected character `{ch}`"),
                    ));
                }
            }
        };
        i += len;
        out.push((tok, Span { start, end: i }));
    }
    out.push((Tok::End, Span { start: text.len(), end: text.len() }));
    Ok(out)
}

/// How predicate names are resolved while parsing.
enum Names<'a> {
    Fixed(&'a Signature),
    Infer(&'a mut Signature),
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(Tok, Span)>,
    pos: usize,
    names: Names<'a>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, span: Span, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::at(self.text, span, msg))
    }

    fn expect(&mut self, want: Tok) -> Result<Span, ParseError> {
        let (t, span) = self.bump();
        if t == want {
            Ok(span)
        } else {
            self.err(span, format!("expected {}, found {}", describe(&want), describe(&t)))
        }
    }

    fn distinguished(&self) -> Distinguished {
        match &self.names {
            Names::Fixed(s) => s.distinguished(),
            Names::Infer(s) => s.distinguished(),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implication()?;
        while *self.peek() == Tok::DoubleArrow {
            self.bump();
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.conjunction()?];
        while *self.peek() == Tok::Bar {
            self.bump();
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::Or(parts) })
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.unary()?];
        while *self.peek() == Tok::Amp {
            self.bump();
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::And(parts) })
    }

    fn variable(&mut self) -> Result<Var, ParseError> {
        let (t, span) = self.bump();
        match t {
            Tok::Ident(s) if s == "x" => Ok(Var::X),
            Tok::Ident(s) if s == "y" => Ok(Var::Y),
            Tok::Ident(s) => self.err(span, format!("`{s}` is not a variable; only `x` and `y` are allowed")),
            t => self.err(span, format!("expected a variable, found {}", describe(&t))),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(k) if k == "forall" || k == "exists" => {
                self.bump();
                let v = self.variable()?;
                let body = self.unary()?;
                Ok(if k == "forall" { Formula::forall(v, body) } else { Formula::exists(v, body) })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let (t, span) = self.bump();
        match t {
            Tok::LParen => {
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) if s == "true" => Ok(Formula::True),
            Tok::Ident(s) if s == "false" => Ok(Formula::False),
            Tok::Ident(s) if s == "x" || s == "y" => {
                let a = if s == "x" { Var::X } else { Var::Y };
                let (op, op_span) = self.bump();
                let b = self.variable()?;
                match op {
                    Tok::Eq => Ok(Formula::Eq(a, b)),
                    Tok::Neq => Ok(Formula::neq(a, b)),
                    Tok::Lt | Tok::Gt | Tok::Tilde => {
                        if self.distinguished() != Distinguished::PartialOrder {
                            return self.err(op_span, "order atoms need the partial-order logic");
                        }
                        Ok(match op {
                            Tok::Lt => Formula::Less(a, b),
                            Tok::Gt => Formula::Less(b, a),
                            _ => Formula::incomparable(a, b),
                        })
                    }
                    t => self.err(op_span, format!("expected a comparison, found {}", describe(&t))),
                }
            }
            Tok::Ident(name) => self.application(name, span),
            t => self.err(span, format!("expected a formula, found {}", describe(&t))),
        }
    }

    fn application(&mut self, name: String, span: Span) -> Result<Formula, ParseError> {
        if RESERVED.contains(&name.as_str()) && name != "t" {
            return self.err(span, format!("`{name}` is a reserved word"));
        }
        self.expect(Tok::LParen)?;
        let a = self.variable()?;
        let b = if *self.peek() == Tok::Comma {
            self.bump();
            Some(self.variable()?)
        } else {
            None
        };
        self.expect(Tok::RParen)?;
        let arity = if b.is_some() { 2 } else { 1 };
        if name == "t" {
            if self.distinguished() != Distinguished::Transitive {
                return self.err(span, "`t` is reserved for the transitive logic");
            }
            return match b {
                Some(b) => Ok(Formula::Trans(a, b)),
                None => self.err(span, "`t` is binary"),
            };
        }
        let declared = match &mut self.names {
            Names::Fixed(sig) => sig.arity(&name),
            Names::Infer(sig) => {
                if sig.arity(&name).is_none() {
                    let added = if arity == 1 { sig.add_unary(&name) } else { sig.add_binary(&name) };
                    if added.is_err() {
                        return self.err(span, format!("invalid predicate name `{name}`"));
                    }
                }
                sig.arity(&name)
            }
        };
        match declared {
            None => self.err(span, format!("unknown predicate `{name}`")),
            Some(d) if d != arity => {
                self.err(span, format!("predicate `{name}` has arity {d} but is applied to {arity} argument(s)"))
            }
            Some(_) => Ok(match b {
                Some(b) => Formula::Binary(name, a, b),
                None => Formula::Unary(name, a),
            }),
        }
    }
}

fn run(text: &str, names: Names<'_>) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { text, toks, pos: 0, names };
    if *p.peek() == Tok::End {
        return p.err(p.span(), "empty formula");
    }
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        let (t, span) = p.bump();
        return p.err(span, format!("unexpected {} after formula", describe(&t)));
    }
    Ok(f)
}

/// Parses a formula whose predicates must all be declared in `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    run(text, Names::Fixed(sig))
}

/// Parses a formula and collects its predicates into a fresh signature.
pub fn parse_formula_infer(text: &str, distinguished: Distinguished) -> Result<(Formula, Signature), ParseError> {
    let mut sig = Signature::empty(distinguished);
    let f = run(text, Names::Infer(&mut sig))?;
    Ok((f, sig))
}

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(gs) if gs.len() >= 2 => 3,
        Formula::And(gs) if gs.len() >= 2 => 4,
        Formula::Or(gs) | Formula::And(gs) if gs.len() == 1 => prec(&gs[0]),
        Formula::Not(g) if matches!(**g, Formula::Eq(..)) => 6,
        Formula::Not(..) | Formula::Forall(..) | Formula::Exists(..) => 5,
        _ => 6,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut String) {
    if prec(f) < min {
        out.push('(');
        write_formula(f, out);
        out.push(')');
    } else {
        write_formula(f, out);
    }
}

fn write_formula(f: &Formula, out: &mut String) {
    use std::fmt::Write;
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Unary(p, v) => {
            let _ = write!(out, "{p}({})", v.name());
        }
        Formula::Binary(r, a, b) => {
            let _ = write!(out, "{r}({}, {})", a.name(), b.name());
        }
        Formula::Trans(a, b) => {
            let _ = write!(out, "t({}, {})", a.name(), b.name());
        }
        Formula::Less(a, b) => {
            let _ = write!(out, "{} < {}", a.name(), b.name());
        }
        Formula::Eq(a, b) => {
            let _ = write!(out, "{} = {}", a.name(), b.name());
        }
        Formula::Not(g) => match &**g {
            Formula::Eq(a, b) => {
                let _ = write!(out, "{} != {}", a.name(), b.name());
            }
            g => {
                out.push('!');
                write_at(g, 5, out);
            }
        },
        Formula::And(gs) | Formula::Or(gs) => {
            let is_and = matches!(f, Formula::And(_));
            match gs.len() {
                0 => out.push_str(if is_and { "true" } else { "false" }),
                1 => write_formula(&gs[0], out),
                _ => {
                    let (sep, level) = if is_and { (" & ", 5) } else { (" | ", 4) };
                    for (i, g) in gs.iter().enumerate() {
                        if i > 0 {
                            out.push_str(sep);
                        }
                        write_at(g, level, out);
                    }
                }
            }
        }
        Formula::Implies(a, b) => {
            write_at(a, 3, out);
            out.push_str(" -> ");
            write_at(b, 2, out);
        }
        Formula::Iff(a, b) => {
            write_at(a, 1, out);
            out.push_str(" <-> ");
            write_at(b, 2, out);
        }
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            out.push_str(if matches!(f, Formula::Forall(..)) { "forall " } else { "exists " });
            out.push_str(v.name());
            out.push(' ');
            write_at(g, 5, out);
        }
    }
}

/// Renders a formula in the concrete syntax accepted by [`parse_formula`].
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(f, &mut out);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn po() -> Signature {
        Signature::new(["p", "q"], ["r"], Distinguished::PartialOrder).unwrap()
    }

    #[test]
    fn precedence_and_binding() {
        let f = parse_formula("forall x exists y (x != y & p(y)) | q(x) -> p(x)", &po()).unwrap();
        let expected = Formula::implies(
            Formula::Or(vec![
                Formula::forall(
                    Var::X,
                    Formula::exists(
                        Var::Y,
                        Formula::And(vec![Formula::neq(Var::X, Var::Y), Formula::unary("p", Var::Y)]),
                    ),
                ),
                Formula::unary("q", Var::X),
            ]),
            Formula::unary("p", Var::X),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn order_sugar() {
        let f = parse_formula("x > y", &po()).unwrap();
        assert_eq!(f, Formula::Less(Var::Y, Var::X));
        let g = parse_formula("x ~ y", &po()).unwrap();
        assert_eq!(g, Formula::incomparable(Var::X, Var::Y));
    }

    #[test]
    fn rejects_third_variable() {
        let e = parse_formula("forall z p(z)", &po()).unwrap_err();
        assert!(e.message.contains("only `x` and `y`"), "{e}");
        assert_eq!((e.line, e.column), (1, 8));
    }

    #[test]
    fn rejects_unknown_and_misused() {
        assert!(parse_formula("s(x)", &po()).unwrap_err().message.contains("unknown predicate"));
        assert!(parse_formula("p(x, y)", &po()).unwrap_err().message.contains("arity"));
        assert!(parse_formula("t(x, y)", &po()).is_err());
        let l2 = Signature::new(["p"], Vec::<String>::new(), Distinguished::None).unwrap();
        assert!(parse_formula("x < y", &l2).is_err());
        assert!(parse_formula("p(x) &", &po()).is_err());
        assert!(parse_formula("p(x) q(x)", &po()).is_err());
    }

    #[test]
    fn infers_signature() {
        let (f, sig) =
            parse_formula_infer("forall x (t(x, x) & exists y (r(x, y) & p(y)))", Distinguished::Transitive).unwrap();
        assert_eq!(sig.unary(), &["p".to_string()]);
        assert_eq!(sig.binary(), &["r".to_string()]);
        assert!(f.is_sentence());
    }

    #[test]
    fn printer_round_trip() {
        for src in [
            "forall x (p(x) -> exists y (x < y & !q(y)))",
            "(p(x) -> q(x)) -> p(x)",
            "p(x) <-> (q(x) <-> p(y))",
            "!(p(x) | q(x)) & x != y",
            "forall x !forall y r(x, y)",
            "(p(x) & q(x)) | (p(y) & !q(y))",
        ] {
            let f = parse_formula(src, &po()).unwrap();
            let printed = print_formula(&f);
            assert_eq!(parse_formula(&printed, &po()).unwrap(), f, "{printed}");
        }
    }
}
