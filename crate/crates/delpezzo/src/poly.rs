//! Sparse multivariate polynomials over the rationals, plus a small parser.
//!
//! A polynomial knows its ambient variable count; terms are kept in a map
//! from exponent vectors to nonzero rational coefficients, so equality is
//! structural. The text grammar accepts rational literals (`3`, `3/2`),
//! variables, `+ - * ^` and parentheses, with juxtaposition as
//! multiplication; a bare identifier such as `xy` is decomposed greedily
//! against the declared variable list (longest prefix first), and `^`
//! after such a run binds to the last variable, so `xy^2` is x·y².

use crate::rational::{format_rat, parse_rat, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse polynomial in `nvars` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, value: Rat) -> Poly {
        let mut p = Poly::zero(nvars);
        if !value.is_zero() {
            p.terms.insert(vec![0; nvars], value);
        }
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, index: usize) -> Poly {
        assert!(index < nvars, "variable index out of range");
        let mut expts = vec![0; nvars];
        expts[index] = 1;
        Poly::monomial(nvars, expts, Rat::one())
    }

    pub fn monomial(nvars: usize, expts: Vec<u32>, coeff: Rat) -> Poly {
        assert_eq!(expts.len(), nvars, "exponent vector length mismatch");
        let mut p = Poly::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(expts, coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, expts: &[u32]) -> Rat {
        self.terms.get(expts).cloned().unwrap_or_else(Rat::zero)
    }

    fn insert_term(&mut self, expts: Vec<u32>, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(expts) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get() + &coeff;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        if k.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let expts: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_term(expts, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal partial derivative in the given variable.
    pub fn partial_derivative(&self, index: usize) -> Poly {
        assert!(index < self.nvars, "variable index out of range");
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[index] == 0 {
                continue;
            }
            let mut expts = e.clone();
            expts[index] -= 1;
            let factor = Rat::from_integer(e[index].into());
            out.insert_term(expts, c * factor);
        }
        out
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Weighted degree of a term under the given variable weights.
    pub fn weighted_term_degree(expts: &[u32], weights: &[i64]) -> i64 {
        expts
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    /// Maximal weighted degree; `None` for the zero polynomial.
    pub fn weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        assert_eq!(weights.len(), self.nvars, "weight vector length mismatch");
        self.terms
            .keys()
            .map(|e| Poly::weighted_term_degree(e, weights))
            .max()
    }

    /// True when all terms share one weighted degree (zero counts as
    /// homogeneous of every degree).
    pub fn is_weighted_homogeneous(&self, weights: &[i64]) -> bool {
        let mut degrees = self
            .terms
            .keys()
            .map(|e| Poly::weighted_term_degree(e, weights));
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    /// Split into weighted-homogeneous parts, keyed by weighted degree.
    pub fn weighted_parts(&self, weights: &[i64]) -> BTreeMap<i64, Poly> {
        let mut out: BTreeMap<i64, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = Poly::weighted_term_degree(e, weights);
            out.entry(d)
                .or_insert_with(|| Poly::zero(self.nvars))
                .insert_term(e.clone(), c.clone());
        }
        out
    }

    /// Render with the given variable names; the inverse of [`parse_poly`]
    /// for the same name list. Terms are ordered by descending total
    /// degree, ties broken by exponent vector.
    pub fn render(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars, "name list length mismatch");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (i, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let is_constant_term = e.iter().all(|&x| x == 0);
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || is_constant_term {
                factors.push(format_rat(&mag));
            }
            for (v, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if exp == 1 {
                    factors.push(names[v].clone());
                } else {
                    factors.push(format!("{}^{}", names[v], exp));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

/// Parse error with position information.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for PolyParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, PolyParseError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            '^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                // A '/' directly followed by digits continues the literal.
                if i + 1 < bytes.len() && bytes[i] as char == '/' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text = &src[start..i];
                let value = parse_rat(text).map_err(|e| PolyParseError {
                    position: start,
                    message: e.to_string(),
                })?;
                tokens.push((start, Token::Number(value)));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] as char == '_')
                {
                    i += 1;
                }
                tokens.push((start, Token::Ident(src[start..i].to_string())));
            }
            _ => {
                return Err(PolyParseError {
                    position: i,
                    message: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(tokens)
}

/// Greedy longest-prefix decomposition of an identifier run into declared
/// variable indices, so `xy` parses as x·y when both are variables.
fn split_ident(word: &str, position: usize, vars: &[String]) -> Result<Vec<usize>, PolyParseError> {
    let mut out = Vec::new();
    let mut rest = word;
    while !rest.is_empty() {
        let hit = vars
            .iter()
            .enumerate()
            .filter(|(_, v)| rest.starts_with(v.as_str()))
            .max_by_key(|(_, v)| v.len());
        match hit {
            Some((idx, v)) => {
                out.push(idx);
                rest = &rest[v.len()..];
            }
            None => {
                return Err(PolyParseError {
                    position,
                    message: format!(
                        "cannot match {rest:?} (inside {word:?}) against the declared variables"
                    ),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    vars: &'a [String],
    src_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.src_len)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError {
            position: self.here(),
            message: message.into(),
        })
    }

    fn parse_expr(&mut self) -> Result<Poly, PolyParseError> {
        let mut negate = false;
        while matches!(self.peek(), Some(Token::Plus) | Some(Token::Minus)) {
            if matches!(self.bump(), Some(Token::Minus)) {
                negate = !negate;
            }
        }
        let mut acc = self.parse_term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.add(&t);
                }
                Some(Token::Minus) => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Poly, PolyParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    let f = self.parse_factor()?;
                    acc = acc.mul(&f);
                }
                // Juxtaposition: a factor starting right here multiplies in.
                Some(Token::Number(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    let f = self.parse_factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_exponent(&mut self) -> Result<u32, PolyParseError> {
        match self.bump() {
            Some(Token::Number(v)) => {
                if !v.denom().is_one() || v.is_negative() {
                    return self.fail("exponent must be a nonnegative integer");
                }
                let n = v.numer();
                u32::try_from(n.clone()).map_or_else(|_| self.fail("exponent too large"), Ok)
            }
            _ => self.fail("expected an integer exponent after '^'"),
        }
    }

    fn parse_factor(&mut self) -> Result<Poly, PolyParseError> {
        let nvars = self.vars.len();
        match self.bump() {
            Some(Token::Number(v)) => {
                let base = Poly::constant(nvars, v);
                if matches!(self.peek(), Some(Token::Caret)) {
                    self.bump();
                    let e = self.parse_exponent()?;
                    Ok(base.pow(e))
                } else {
                    Ok(base)
                }
            }
            Some(Token::Ident(word)) => {
                let position = self.tokens[self.pos - 1].0;
                let indices = split_ident(&word, position, self.vars)?;
                // '^' binds to the last variable of the run.
                let mut exp_last = 1u32;
                if matches!(self.peek(), Some(Token::Caret)) {
                    self.bump();
                    exp_last = self.parse_exponent()?;
                }
                let mut expts = vec![0u32; nvars];
                for (pos, &idx) in indices.iter().enumerate() {
                    if pos + 1 == indices.len() {
                        expts[idx] += exp_last;
                    } else {
                        expts[idx] += 1;
                    }
                }
                Ok(Poly::monomial(nvars, expts, Rat::one()))
            }
            Some(Token::LParen) => {
                let inner = self.parse_expr()?;
                match self.bump() {
                    Some(Token::RParen) => {}
                    _ => return self.fail("expected ')'"),
                }
                if matches!(self.peek(), Some(Token::Caret)) {
                    self.bump();
                    let e = self.parse_exponent()?;
                    Ok(inner.pow(e))
                } else {
                    Ok(inner)
                }
            }
            Some(other) => self.fail(format!("unexpected token {other:?}")),
            None => self.fail("unexpected end of input"),
        }
    }
}

/// Parse a polynomial over the given variable list.
pub fn parse_poly(src: &str, vars: &[String]) -> Result<Poly, PolyParseError> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(PolyParseError {
            position: 0,
            message: "empty polynomial".to_string(),
        });
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        vars,
        src_len: src.len(),
    };
    let poly = parser.parse_expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.fail("trailing input after polynomial");
    }
    Ok(poly)
}
