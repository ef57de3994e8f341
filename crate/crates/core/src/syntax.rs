//! Lexer and recursive-descent parser for terms and formulas.

use std::fmt;

use crate::field::FieldSpec;
use crate::logic::Formula;
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eq,
    Neq,
    Dot,
    Tilde,
    And,
    Or,
    Implies,
    Iff,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) | Tok::Num(s) => return write!(f, "`{s}`"),
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Caret => "^",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Eq => "=",
            Tok::Neq => "!=",
            Tok::Dot => ".",
            Tok::Tilde => "~",
            Tok::And => "/\\",
            Tok::Or => "\\/",
            Tok::Implies => "->",
            Tok::Iff => "<->",
            Tok::Eof => return f.write_str("end of input"),
        };
        write!(f, "`{s}`")
    }
}

struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let err = |m: String| ParseError { line: tl, col: tc, message: m };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let next = chars.get(i + 1).copied();
        let (tok, len) = if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            (Tok::Ident(chars[start..j].iter().collect()), j - i)
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            (Tok::Num(chars[i..j].iter().collect()), j - i)
        } else {
            match (c, next) {
                ('-', Some('>')) => (Tok::Implies, 2),
                ('<', Some('-')) if chars.get(i + 2) == Some(&'>') => (Tok::Iff, 3),
                ('!', Some('=')) => (Tok::Neq, 2),
                ('/', Some('\\')) => (Tok::And, 2),
                ('\\', Some('/')) => (Tok::Or, 2),
                ('+', _) => (Tok::Plus, 1),
                ('-', _) => (Tok::Minus, 1),
                ('*', _) => (Tok::Star, 1),
                ('^', _) => (Tok::Caret, 1),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                ('=', _) => (Tok::Eq, 1),
                ('.', _) => (Tok::Dot, 1),
                ('~', _) => (Tok::Tilde, 1),
                _ => return Err(err(format!("unexpected character `{c}`"))),
            }
        };
        out.push(Token { tok, line: tl, col: tc });
        i += len;
        col += len;
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

const KEYWORDS: [&str; 4] = ["exists", "forall", "true", "false"];

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    field: &'a FieldSpec,
    bound: Vec<String>,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn error_here(&self, message: String) -> ParseError {
        let t = &self.tokens[self.pos];
        ParseError { line: t.line, col: t.col, message }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error_here(format!("expected {wanted}, found {}", self.peek()))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn is_generator(&self, name: &str) -> bool {
        self.field.r() > 1 && name == self.field.generator_name()
    }

    fn check_var_name(&self, name: &str) -> PResult<()> {
        if name.starts_with('_') {
            return Err(self.error_here(format!("identifier `{name}` is reserved (leading underscore)")));
        }
        if KEYWORDS.contains(&name) {
            return Err(self.error_here(format!("keyword `{name}` used as a variable")));
        }
        if self.is_generator(name) {
            return Err(self.error_here(format!("`{name}` names the field generator")));
        }
        Ok(())
    }

    // formula := quant | iff
    fn formula(&mut self) -> PResult<Formula> {
        if let Tok::Ident(kw) = self.peek() {
            if kw == "exists" || kw == "forall" {
                return self.quantified();
            }
        }
        self.iff()
    }

    fn quantified(&mut self) -> PResult<Formula> {
        let universal = matches!(self.peek(), Tok::Ident(k) if k == "forall");
        self.pos += 1;
        let mut vars: Vec<String> = Vec::new();
        while let Tok::Ident(name) = self.peek().clone() {
            self.check_var_name(&name)?;
            if vars.contains(&name) {
                return Err(self.error_here(format!("variable `{name}` listed twice in one quantifier")));
            }
            if self.bound.contains(&name) {
                return Err(self.error_here(format!("variable `{name}` shadows an enclosing binding")));
            }
            vars.push(name);
            self.pos += 1;
        }
        if vars.is_empty() {
            return Err(self.unexpected("a variable"));
        }
        self.expect(Tok::Dot)?;
        let depth = self.bound.len();
        self.bound.extend(vars.iter().cloned());
        let body = self.formula();
        self.bound.truncate(depth);
        let body = Box::new(body?);
        Ok(if universal { Formula::Forall(vars, body) } else { Formula::Exists(vars, body) })
    }

    // iff := imp ("<->" imp)*
    fn iff(&mut self) -> PResult<Formula> {
        let mut left = self.imp()?;
        while self.eat(&Tok::Iff) {
            let right = self.imp()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    // imp := or ("->" imp)?
    fn imp(&mut self) -> PResult<Formula> {
        let left = self.or()?;
        if self.eat(&Tok::Implies) {
            let right = self.imp()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn or(&mut self) -> PResult<Formula> {
        let mut parts = vec![self.and()?];
        while self.eat(&Tok::Or) {
            parts.push(self.and()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::Or(parts) })
    }

    fn and(&mut self) -> PResult<Formula> {
        let mut parts = vec![self.not()?];
        while self.eat(&Tok::And) {
            parts.push(self.not()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::And(parts) })
    }

    fn not(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.pos += 1;
                Ok(Formula::Not(Box::new(self.not()?)))
            }
            Tok::Ident(k) if k == "exists" || k == "forall" => self.quantified(),
            Tok::Ident(k) if k == "true" => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Tok::Ident(k) if k == "false" => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Tok::LParen => {
                let start = self.pos;
                self.pos += 1;
                let as_formula = self.formula().and_then(|f| self.expect(Tok::RParen).map(|_| f));
                let continues_term =
                    matches!(self.peek(), Tok::Eq | Tok::Neq | Tok::Plus | Tok::Minus | Tok::Star | Tok::Caret);
                match as_formula {
                    Ok(f) if !continues_term => Ok(f),
                    formula_result => {
                        let formula_pos = self.pos;
                        self.pos = start;
                        match self.atom() {
                            Ok(a) => Ok(a),
                            Err(atom_err) => match formula_result {
                                Err(e) if formula_pos > self.pos => Err(e),
                                _ => Err(atom_err),
                            },
                        }
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        let lhs = self.term()?;
        let negated = match self.peek() {
            Tok::Eq => false,
            Tok::Neq => true,
            _ => return Err(self.unexpected("`=` or `!=`")),
        };
        self.pos += 1;
        let rhs = self.term()?;
        let t = if rhs.is_zero_const() { lhs } else { Term::difference(lhs, rhs) };
        Ok(if negated { Formula::NegAtom(t) } else { Formula::Atom(t) })
    }

    // term := ["-"] product (("+"|"-") product)*
    fn term(&mut self) -> PResult<Term> {
        let mut parts = Vec::new();
        let first = if self.eat(&Tok::Minus) { Term::negated(self.product()?) } else { self.product()? };
        parts.push(first);
        loop {
            if self.eat(&Tok::Plus) {
                parts.push(self.product()?);
            } else if self.eat(&Tok::Minus) {
                parts.push(Term::negated(self.product()?));
            } else {
                break;
            }
        }
        Ok(Term::sum(parts))
    }

    fn product(&mut self) -> PResult<Term> {
        let mut parts = vec![self.power()?];
        while self.eat(&Tok::Star) {
            parts.push(self.power()?);
        }
        Ok(Term::product(parts))
    }

    fn power(&mut self) -> PResult<Term> {
        let base = self.primary()?;
        if self.eat(&Tok::Caret) {
            let Tok::Num(n) = self.peek().clone() else {
                return Err(self.unexpected("an exponent"));
            };
            let e: u32 = n.parse().map_err(|_| self.error_here(format!("exponent `{n}` too large")))?;
            self.pos += 1;
            return Ok(Term::power(base, e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Num(n) => {
                let p = self.field.p() as u64;
                let v = n.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                self.pos += 1;
                Ok(Term::Const(self.field.element(v as u32)))
            }
            Tok::Ident(name) => {
                if self.is_generator(&name) {
                    self.pos += 1;
                    return Ok(Term::Const(self.field.generator()));
                }
                self.check_var_name(&name)?;
                self.pos += 1;
                Ok(Term::Var(name))
            }
            Tok::LParen => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn finish(&self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

fn parser<'a>(text: &str, field: &'a FieldSpec) -> PResult<Parser<'a>> {
    Ok(Parser { tokens: lex(text)?, pos: 0, field, bound: Vec::new() })
}

pub fn parse_formula(text: &str, field: &FieldSpec) -> Result<Formula, ParseError> {
    let mut p = parser(text, field)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_term(text: &str, field: &FieldSpec) -> Result<Term, ParseError> {
    let mut p = parser(text, field)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}
