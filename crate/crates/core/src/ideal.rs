//! Ideals given by explicit polynomial generators, and the text format they
//! are read from.
//!
//! ```text
//! # comments run to the end of the line
//! vars: x, y
//! gens: (x+y)^2 + y^4; (x+y)*y^2
//! ```
//!
//! Generators are separated by `;` or by line breaks. A line break directly
//! after an operator or inside parentheses continues the current generator.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// A nonempty list of nonzero generators in a common polynomial ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdealPresentation {
    vars: Vec<String>,
    generators: Vec<Polynomial>,
}

impl IdealPresentation {
    pub fn new(vars: Vec<String>, generators: Vec<Polynomial>) -> Result<Self> {
        let n = vars.len();
        if n == 0 {
            return Err(Error::InvalidArgument("no variables declared".into()));
        }
        if generators.is_empty() {
            return Err(Error::InvalidArgument("no generators".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.nvars(),
                });
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator { index: i + 1 });
            }
        }
        Ok(IdealPresentation { vars, generators })
    }

    /// Uses the default names `x, y, z` (up to three variables) or
    /// `x1, …, xn`.
    pub fn with_default_vars(generators: Vec<Polynomial>) -> Result<Self> {
        let n = generators.first().map(Polynomial::nvars).unwrap_or(0);
        Self::new(default_vars(n), generators)
    }

    /// The monomial ideal generated by `x^e` for each listed exponent.
    pub fn from_exponents(n: usize, exps: &[Exponent]) -> Result<Self> {
        Self::new(
            default_vars(n),
            exps.iter().cloned().map(Polynomial::monomial).collect(),
        )
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Every generator is a single term.
    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(Polynomial::is_monomial_term)
    }

    /// Same variables, new generators.
    pub fn with_generators(&self, generators: Vec<Polynomial>) -> Result<Self> {
        Self::new(self.vars.clone(), generators)
    }

    /// Renders in the ideal file format; [`parse_ideal`] inverts this.
    pub fn render(&self) -> String {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| g.render(&self.vars))
            .collect();
        format!("vars: {}\ngens: {}\n", self.vars.join(", "), gens.join("; "))
    }

    pub fn rendered_generators(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.render(&self.vars)).collect()
    }
}

impl fmt::Display for IdealPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩", self.rendered_generators().join(", "))
    }
}

pub fn default_vars(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Sep,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Tokenizes the generator section. `start` is the (line, column) of its
/// first character in the original file.
fn tokenize(text: &str, start: (usize, usize)) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = start;
    let mut chars = text.chars().peekable();
    let mut depth = 0usize;
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: l, column: col });
        match c {
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    column += 1;
                }
                continue;
            }
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
                let continues = matches!(
                    out.last().map(|t: &Token| &t.tok),
                    None | Some(Tok::Plus | Tok::Minus | Tok::Star | Tok::Slash | Tok::Caret | Tok::LParen | Tok::Sep)
                );
                if depth == 0 && !continues {
                    push(&mut out, Tok::Sep);
                }
                continue;
            }
            c if c.is_whitespace() => {}
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    chars.next();
                    column += 1;
                }
                push(&mut out, Tok::Int(digits.parse().expect("digits")));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    name.push(d);
                    chars.next();
                    column += 1;
                }
                push(&mut out, Tok::Ident(name));
                continue;
            }
            '+' => push(&mut out, Tok::Plus),
            '-' => push(&mut out, Tok::Minus),
            '*' => push(&mut out, Tok::Star),
            '/' => push(&mut out, Tok::Slash),
            '^' => push(&mut out, Tok::Caret),
            '(' => {
                depth += 1;
                push(&mut out, Tok::LParen)
            }
            ')' => {
                depth = depth.saturating_sub(1);
                push(&mut out, Tok::RParen)
            }
            ';' => push(&mut out, Tok::Sep),
            other => return Err(syntax(l, col, format!("unexpected character `{other}`"))),
        }
        chars.next();
        column += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    vars: &'a [String],
    end: (usize, usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|t| (t.line, t.column))
            .unwrap_or(self.end)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -&self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => {
                    return Err(self.err("explicit `*` required between factors"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let (l, c) = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(k)) => {
                self.pos += 1;
                let k = u32::try_from(&k).map_err(|_| syntax(l, c, "exponent too large"))?;
                Ok(base.pow(k))
            }
            Some(Tok::Minus) => Err(Error::NegativeExponent { line: l, column: c }),
            _ => Err(self.err("expected an integer exponent after `^`")),
        }
    }

    fn primary(&mut self) -> Result<Polynomial> {
        let (l, c) = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(p)) => {
                self.pos += 1;
                let mut q = Rational::from_integer(p);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if d != BigInt::from(0) => {
                            self.pos += 1;
                            q /= Rational::from_integer(d);
                        }
                        Some(Tok::Int(_)) => return Err(self.err("zero denominator")),
                        _ => return Err(self.err("expected an integer denominator after `/`")),
                    }
                }
                Ok(Polynomial::constant(self.n(), q))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Polynomial::var(self.n(), i)),
                    None => Err(Error::UnknownVariable {
                        name,
                        line: l,
                        column: c,
                    }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::Slash) => Err(self.err("`/` is only allowed inside a rational literal p/q")),
            Some(_) => Err(self.err("expected a number, variable or `(`")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the ideal file format into fully expanded generators.
pub fn parse_ideal(text: &str) -> Result<IdealPresentation> {
    let mut vars: Option<Vec<String>> = None;
    let mut gens_start: Option<(usize, usize, usize)> = None; // (byte offset, line, column)
    let mut offset = 0usize;
    for (idx, raw) in text.split_inclusive('\n').enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        let indent = content.len() - trimmed.len();
        if let Some(rest) = trimmed.strip_prefix("vars:") {
            if vars.is_some() {
                return Err(syntax(line_no, indent + 1, "duplicate `vars:` line"));
            }
            let mut names = Vec::new();
            for name in rest.split(',') {
                let name = name.trim();
                if !is_identifier(name) {
                    return Err(syntax(line_no, indent + 6, format!("invalid variable name `{name}`")));
                }
                if names.iter().any(|v| v == name) {
                    return Err(syntax(line_no, indent + 6, format!("duplicate variable `{name}`")));
                }
                names.push(name.to_string());
            }
            vars = Some(names);
        } else if trimmed.starts_with("gens:") {
            if vars.is_none() {
                return Err(syntax(line_no, indent + 1, "`gens:` before `vars:`"));
            }
            let body = offset + indent + "gens:".len();
            gens_start = Some((body, line_no, indent + "gens:".len() + 1));
            break;
        } else if !trimmed.trim().is_empty() {
            return Err(syntax(line_no, indent + 1, "expected `vars:` or `gens:`"));
        }
        offset += raw.len();
    }
    let vars = vars.ok_or_else(|| syntax(1, 1, "missing `vars:` line"))?;
    let (body, line, column) = gens_start.ok_or_else(|| syntax(1, 1, "missing `gens:` line"))?;
    let toks = tokenize(&text[body..], (line, column))?;

    let last_line = text.lines().count().max(1);
    let mut generators = Vec::new();
    for chunk in toks.split(|t| t.tok == Tok::Sep) {
        if chunk.is_empty() {
            continue;
        }
        let end = chunk
            .last()
            .map(|t| (t.line, t.column + 1))
            .unwrap_or((last_line, 1));
        let mut parser = Parser {
            toks: chunk,
            pos: 0,
            vars: &vars,
            end,
        };
        let g = parser.expr()?;
        if parser.pos != chunk.len() {
            return Err(parser.err("unexpected token"));
        }
        if g.is_zero() {
            return Err(Error::ZeroGenerator {
                index: generators.len() + 1,
            });
        }
        generators.push(g);
    }
    if generators.is_empty() {
        return Err(syntax(line, column, "no generators after `gens:`"));
    }
    IdealPresentation::new(vars, generators)
}
