//! System-file reader.
//!
//! ```text
//! # comment
//! vars: x, y
//! P1 = x^2*y - 1
//! P2 = x*y^2 - 1
//! at: (1, -1)
//! q: 2
//! ```

use std::fmt;

use indicatrix::exactpoly::{check_supported_dim, Exponent, GaussianRational, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Dimension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn syntax(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
            kind: ParseErrorKind::Syntax,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemFile {
    pub variables: Vec<String>,
    pub polynomials: Vec<(String, Polynomial)>,
    pub basepoint: Vec<GaussianRational>,
    pub q: BigRational,
}

impl SystemFile {
    pub fn n(&self) -> usize {
        self.variables.len()
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.polynomials.iter().map(|(_, p)| p.clone()).collect()
    }
}

impl fmt::Display for SystemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        writeln!(f, "vars: {}", names.join(", "))?;
        for (name, p) in &self.polynomials {
            writeln!(f, "{name} = {}", p.display_with(&names))?;
        }
        if self.basepoint.iter().any(|c| !c.is_zero()) {
            let parts: Vec<String> = self.basepoint.iter().map(|c| c.to_string()).collect();
            writeln!(f, "at: ({})", parts.join(", "))?;
        }
        writeln!(f, "q: {}", self.q)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str, line: usize, offset: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = offset + k + 1;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((Tok::Ident(chars[start..k].iter().collect()), col));
        } else if "+-*/^(),".contains(c) {
            out.push((Tok::Op(c), col));
            k += 1;
        } else {
            return Err(ParseError::syntax(
                line,
                col,
                format!("unexpected character '{c}'"),
            ));
        }
    }
    Ok(out)
}

struct ExprParser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
    vars: &'a [String],
}

impl ExprParser<'_> {
    fn n(&self) -> usize {
        self.vars.len().max(1)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::syntax(self.line, self.col(), msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?).expect("same dimension");
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?).expect("same dimension");
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?).expect("same dimension");
            } else if self.peek() == Some(&Tok::Op('/')) {
                self.pos += 1;
                let col = self.col();
                let d = self.unary()?;
                let c = constant_of(&d).ok_or_else(|| {
                    ParseError::syntax(self.line, col, "division by a non-constant")
                })?;
                let inv = c
                    .inv()
                    .ok_or_else(|| ParseError::syntax(self.line, col, "division by zero"))?;
                acc = acc.scale(&inv);
            } else if matches!(
                self.peek(),
                Some(Tok::Num(_) | Tok::Ident(_)) | Some(Tok::Op('('))
            ) {
                return Err(self.err("expected an operator; write products with '*'"));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                let e: u32 = v
                    .try_into()
                    .ok()
                    .filter(|e| *e <= MAX_EXPONENT)
                    .ok_or_else(|| self.err(format!("exponent larger than {MAX_EXPONENT}")))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => Err(self.err("exponent must be a nonnegative integer")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let n = self.n();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Polynomial::constant(
                    n,
                    GaussianRational::real(BigRational::from_integer(v)),
                ))
            }
            Some(Tok::Ident(name)) => {
                if name == "i" {
                    self.pos += 1;
                    return Ok(Polynomial::constant(n, GaussianRational::i()));
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(k) => {
                        self.pos += 1;
                        Ok(Polynomial::var(n, k))
                    }
                    None => Err(self.err(format!("undeclared variable '{name}'"))),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(Tok::Op(c)) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

fn constant_of(p: &Polynomial) -> Option<GaussianRational> {
    if p.is_zero() {
        return Some(GaussianRational::zero());
    }
    if p.num_terms() == 1 && p.total_degree() == Some(0) {
        return Some(p.coeff(&Exponent::zero(p.n())));
    }
    None
}

fn parse_expr(
    src: &str,
    line: usize,
    offset: usize,
    vars: &[String],
) -> Result<Polynomial, ParseError> {
    let toks = lex(src, line, offset)?;
    let end_col = offset + src.chars().count() + 1;
    let mut p = ExprParser {
        toks: &toks,
        pos: 0,
        line,
        end_col,
        vars,
    };
    if toks.is_empty() {
        return Err(p.err("empty expression"));
    }
    let out = p.expr()?;
    if p.pos < toks.len() {
        return Err(p.err("unexpected token after expression"));
    }
    Ok(out)
}

/// A constant expression such as `3/4`, `-i` or `(1/2 + 3/4*i)`.
pub fn parse_constant(src: &str) -> Result<GaussianRational, ParseError> {
    parse_constant_at(src, 1, 0)
}

fn parse_constant_at(
    src: &str,
    line: usize,
    offset: usize,
) -> Result<GaussianRational, ParseError> {
    let p = parse_expr(src, line, offset, &[])?;
    constant_of(&p).ok_or_else(|| ParseError::syntax(line, offset + 1, "expected a constant"))
}

/// Comma-separated constants, optionally wrapped in parentheses.
pub fn parse_point(src: &str) -> Result<Vec<GaussianRational>, ParseError> {
    parse_point_at(src, 1, 0)
}

fn parse_point_at(
    src: &str,
    line: usize,
    offset: usize,
) -> Result<Vec<GaussianRational>, ParseError> {
    let trimmed = src.trim();
    let lead = offset + src.len() - src.trim_start().len();
    let (body, shift) = match trimmed.strip_prefix('(') {
        Some(rest) => match rest.strip_suffix(')') {
            Some(b) => (b, lead + 1),
            None => {
                return Err(ParseError::syntax(
                    line,
                    lead + trimmed.len() + 1,
                    "expected ')'",
                ))
            }
        },
        None => (trimmed, lead),
    };
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in body
        .char_indices()
        .chain(std::iter::once((body.len(), ',')))
    {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(parse_constant_at(&body[start..k], line, shift + start)?);
                start = k + 1;
            }
            _ => {}
        }
    }
    Ok(out)
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || c == '_')
}

pub fn parse_system(text: &str) -> Result<SystemFile, ParseError> {
    let mut vars: Option<Vec<String>> = None;
    let mut polys: Vec<(String, Polynomial)> = Vec::new();
    let mut at: Option<(Vec<GaussianRational>, usize)> = None;
    let mut q: Option<BigRational> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        if let Some((key, rest)) = content.split_once(':') {
            let off = key.len() + 1;
            match key.trim() {
                "vars" => {
                    if vars.is_some() {
                        return Err(ParseError::syntax(line, lead + 1, "duplicate 'vars:' line"));
                    }
                    if !polys.is_empty() {
                        return Err(ParseError::syntax(
                            line,
                            lead + 1,
                            "'vars:' must precede the polynomials",
                        ));
                    }
                    let names: Vec<String> =
                        rest.split(',').map(|s| s.trim().to_string()).collect();
                    let mut col = off;
                    for (k, name) in rest.split(',').enumerate() {
                        let c = col + name.len() - name.trim_start().len() + 1;
                        if !is_ident(name.trim()) || name.trim() == "i" {
                            return Err(ParseError::syntax(
                                line,
                                c,
                                format!("invalid variable name '{}'", name.trim()),
                            ));
                        }
                        if names[..k].contains(&names[k]) {
                            return Err(ParseError::syntax(
                                line,
                                c,
                                format!("duplicate variable '{}'", names[k]),
                            ));
                        }
                        col += name.len() + 1;
                    }
                    if check_supported_dim(names.len()).is_err() {
                        return Err(ParseError {
                            line,
                            col: lead + 1,
                            message: format!(
                                "{} variables declared; between 1 and 4 are supported",
                                names.len()
                            ),
                            kind: ParseErrorKind::Dimension,
                        });
                    }
                    vars = Some(names);
                }
                "at" => at = Some((parse_point_at(rest, line, off)?, line)),
                "q" => {
                    let c = parse_constant_at(rest, line, off)?;
                    if !c.is_real() || !c.re.is_positive() {
                        return Err(ParseError::syntax(
                            line,
                            off + 1,
                            "q must be a positive rational",
                        ));
                    }
                    q = Some(c.re);
                }
                other => {
                    return Err(ParseError::syntax(
                        line,
                        lead + 1,
                        format!("unknown option '{other}'"),
                    ));
                }
            }
            continue;
        }
        let Some((lhs, rhs)) = content.split_once('=') else {
            return Err(ParseError::syntax(
                line,
                lead + 1,
                "expected 'NAME = expression' or 'key: value'",
            ));
        };
        let name = lhs.trim();
        if !is_ident(name) {
            return Err(ParseError::syntax(
                line,
                lead + 1,
                format!("invalid polynomial name '{name}'"),
            ));
        }
        let Some(vs) = vars.as_ref() else {
            return Err(ParseError::syntax(
                line,
                lead + 1,
                "'vars:' must come first",
            ));
        };
        if vs.iter().any(|v| v == name) || name == "i" {
            return Err(ParseError::syntax(
                line,
                lead + 1,
                format!("'{name}' is not a valid polynomial name"),
            ));
        }
        if polys.iter().any(|(n, _)| n == name) {
            return Err(ParseError::syntax(
                line,
                lead + 1,
                format!("duplicate polynomial '{name}'"),
            ));
        }
        let p = parse_expr(rhs, line, lhs.len() + 1, vs)?;
        polys.push((name.to_string(), p));
    }

    let end = text.lines().count().max(1);
    let variables = vars.ok_or_else(|| ParseError::syntax(end, 1, "missing 'vars:' line"))?;
    if polys.is_empty() {
        return Err(ParseError::syntax(end, 1, "no polynomials given"));
    }
    let n = variables.len();
    let basepoint = match at {
        Some((p, line)) if p.len() != n => {
            return Err(ParseError::syntax(
                line,
                1,
                format!("'at:' has {} coordinates, expected {n}", p.len()),
            ));
        }
        Some((p, _)) => p,
        None => vec![GaussianRational::zero(); n],
    };
    Ok(SystemFile {
        variables,
        polynomials: polys,
        basepoint,
        q: q.unwrap_or_else(|| BigRational::one() + BigRational::one()),
    })
}
