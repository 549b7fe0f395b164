//! Paragrassmann expressions such as `(1+2i)*th1^2*bth2 - 3*bth*th`.
//!
//! ```text
//! sum     := [+|-] product { (+|-) product }
//! product := power { * power }
//! power   := atom [ ^ uint ]
//! atom    := number | number i | i | th[<index>] | bth[<index>] | ( sum )
//! ```
//!
//! Products keep the order in which they were written.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use paraquant::{Deformation, FactorWord, Generator, ParaPoly};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown generator index {index} at byte {offset} (modes: 1..={modes})")]
    UnknownIndex { offset: usize, index: usize, modes: usize },
    #[error("generator at byte {offset} needs a mode index when there are {modes} modes")]
    MissingIndex { offset: usize, modes: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(Complex64),
    Gen(Generator),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// A parsed expression together with the mode count it was checked against.
#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    pub root: Expr,
    pub modes: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Real(f64, bool),
    Imag(f64),
    Theta(Option<usize>),
    Bar(Option<usize>),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        offset,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::Open)),
            b')' => out.push((start, Tok::Close)),
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let lit = &text[start..i];
                let v: f64 = lit.parse().map_err(|_| syntax(start, format!("bad number '{lit}'")))?;
                let integral = lit.bytes().all(|c| c.is_ascii_digit());
                if i < bytes.len() && bytes[i] == b'i' && !bytes.get(i + 1).is_some_and(|c| c.is_ascii_alphanumeric()) {
                    i += 1;
                    out.push((start, Tok::Imag(v)));
                } else {
                    out.push((start, Tok::Real(v, integral)));
                }
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word = &text[start..i];
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let index = if i > digits_start {
                    Some(text[digits_start..i].parse().map_err(|_| syntax(digits_start, "index too large"))?)
                } else {
                    None
                };
                let tok = match (word, index) {
                    ("th", idx) => Tok::Theta(idx),
                    ("bth", idx) => Tok::Bar(idx),
                    ("i", None) => Tok::Imag(1.0),
                    _ => return Err(syntax(start, format!("unknown token '{}'", &text[start..i]))),
                };
                out.push((start, tok));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character '{ch}'")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    modes: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Expr::Neg(Box::new(self.product()?))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.product()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.product()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.power()?));
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Some((_, Tok::Real(v, true))) if v <= u32::MAX as f64 => Ok(Expr::Pow(Box::new(base), v as u32)),
            _ => Err(syntax(at, "expected a non-negative integer exponent")),
        }
    }

    fn generator(&self, offset: usize, index: Option<usize>, barred: bool) -> Result<Expr, ParseError> {
        let mode = match index {
            Some(i) if i == 0 || i > self.modes => {
                return Err(ParseError::UnknownIndex {
                    offset,
                    index: i,
                    modes: self.modes,
                })
            }
            Some(i) => i,
            None if self.modes == 1 => 1,
            None => return Err(ParseError::MissingIndex { offset, modes: self.modes }),
        };
        Ok(Expr::Gen(Generator { mode, barred }))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some((_, Tok::Real(v, _))) => Ok(Expr::Number(Complex64::new(v, 0.0))),
            Some((_, Tok::Imag(v))) => Ok(Expr::Number(Complex64::new(0.0, v))),
            Some((o, Tok::Theta(idx))) => self.generator(o, idx, false),
            Some((o, Tok::Bar(idx))) => self.generator(o, idx, true),
            Some((_, Tok::Open)) => {
                let inner = self.sum()?;
                let close = self.offset();
                match self.bump() {
                    Some((_, Tok::Close)) => Ok(inner),
                    _ => Err(syntax(close, "expected ')'")),
                }
            }
            Some(_) => Err(syntax(at, "expected a number, generator or '('")),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses `text` for an algebra with `modes` modes.
pub fn parse(text: &str, modes: usize) -> Result<Expression, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        modes,
    };
    let root = p.sum()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.offset(), "unexpected token"));
    }
    Ok(Expression { root, modes })
}

/// Formal sum of words with coefficients, letters in written order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct WordSum {
    terms: HashMap<Vec<Generator>, Complex64>,
}

impl WordSum {
    fn scalar(c: Complex64) -> Self {
        let mut terms = HashMap::new();
        terms.insert(Vec::new(), c);
        WordSum { terms }
    }

    fn add(mut self, other: WordSum, sign: f64) -> Self {
        for (w, c) in other.terms {
            *self.terms.entry(w).or_default() += c * sign;
        }
        self
    }

    /// Concatenates every pair of words; words in which some generator
    /// occurs `k'` times are dropped, since they vanish under either
    /// reordering.
    fn mul(&self, other: &WordSum, kprime: usize) -> Self {
        let mut out = WordSum::default();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                if overflows(&w, kprime) {
                    continue;
                }
                *out.terms.entry(w).or_default() += c1 * c2;
            }
        }
        out
    }

    pub fn words(&self) -> Vec<FactorWord> {
        let mut v: Vec<FactorWord> = self
            .terms
            .iter()
            .filter(|(_, c)| c.norm() != 0.0)
            .map(|(w, c)| FactorWord::new(*c, w.clone()))
            .collect();
        v.sort_by_key(|w| w.letters.iter().map(|g| (g.barred, g.mode)).collect::<Vec<_>>());
        v
    }
}

fn overflows(w: &[Generator], kprime: usize) -> bool {
    let mut counts: HashMap<Generator, usize> = HashMap::new();
    w.iter().any(|g| {
        let n = counts.entry(*g).or_default();
        *n += 1;
        *n >= kprime
    })
}

impl Expression {
    /// Expands into a formal word sum without reordering any product.
    pub fn expand(&self, kprime: usize) -> WordSum {
        fn go(e: &Expr, kp: usize) -> WordSum {
            match e {
                Expr::Number(c) => WordSum::scalar(*c),
                Expr::Gen(g) => {
                    let mut terms = HashMap::new();
                    terms.insert(vec![*g], Complex64::new(1.0, 0.0));
                    WordSum { terms }
                }
                Expr::Neg(a) => WordSum::default().add(go(a, kp), -1.0),
                Expr::Add(a, b) => go(a, kp).add(go(b, kp), 1.0),
                Expr::Sub(a, b) => go(a, kp).add(go(b, kp), -1.0),
                Expr::Mul(a, b) => go(a, kp).mul(&go(b, kp), kp),
                Expr::Pow(a, n) => {
                    let base = go(a, kp);
                    let mut acc = WordSum::scalar(Complex64::new(1.0, 0.0));
                    for _ in 0..*n {
                        acc = acc.mul(&base, kp);
                    }
                    acc
                }
            }
        }
        go(&self.root, kprime)
    }

    /// Evaluates in the algebra, multiplying factors in written order.
    pub fn eval(&self, d: &Deformation) -> paraquant::Result<ParaPoly> {
        fn go(e: &Expr, d: &Deformation, modes: usize) -> paraquant::Result<ParaPoly> {
            Ok(match e {
                Expr::Number(c) => ParaPoly::constant(*d, modes, *c),
                Expr::Gen(g) => ParaPoly::generator(*d, modes, *g)?,
                Expr::Neg(a) => -&go(a, d, modes)?,
                Expr::Add(a, b) => go(a, d, modes)?.try_add(&go(b, d, modes)?)?,
                Expr::Sub(a, b) => go(a, d, modes)?.try_add(&-&go(b, d, modes)?)?,
                Expr::Mul(a, b) => go(a, d, modes)?.multiply(&go(b, d, modes)?)?,
                Expr::Pow(a, n) => go(a, d, modes)?.pow(*n),
            })
        }
        go(&self.root, d, self.modes)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Number(c) if c.im == 0.0 => write!(f, "{}", c.re),
            Expr::Number(c) => write!(f, "({}{:+}i)", c.re, c.im),
            Expr::Gen(g) => write!(f, "{}{}", if g.barred { "bth" } else { "th" }, g.mode),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Pow(a, n) => write!(f, "({a})^{n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use paraquant::Monomial;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn word_order_is_kept() {
        let e = parse("th*bth", 1).unwrap();
        let w = e.expand(4).words();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].letters, vec![Generator::theta(1), Generator::bar(1)]);
        let e = parse("bth*th", 1).unwrap();
        assert_eq!(e.expand(4).words()[0].letters, vec![Generator::bar(1), Generator::theta(1)]);
    }

    #[test]
    fn bar_theta_evaluates_with_phase() {
        let d = Deformation::new(8).unwrap();
        let p = parse("bth*th", 1).unwrap().eval(&d).unwrap();
        assert!((p.coeff_st(1, 1) - d.q_k().conj()).norm() < 1e-15);
    }

    #[test]
    fn complex_coefficient_two_modes() {
        let d = Deformation::new(6).unwrap();
        let e = parse("(1+2i)*th1^2*bth2", 2).unwrap();
        let w = e.expand(3).words();
        assert_eq!(w[0].scalar, c(1.0, 2.0));
        assert_eq!(w[0].letters, vec![Generator::theta(1), Generator::theta(1), Generator::bar(2)]);
        let p = e.eval(&d).unwrap();
        let m = Monomial::new(vec![2, 0], vec![0, 1]).unwrap();
        assert_eq!(p.coeff(&m), c(1.0, 2.0));
    }

    #[test]
    fn literals() {
        let d = Deformation::new(4).unwrap();
        for (text, expect) in [("2i", c(0.0, 2.0)), ("i", c(0.0, 1.0)), ("-1.5", c(-1.5, 0.0)), ("(0.5-1i)", c(0.5, -1.0)), ("1e-3", c(0.001, 0.0))] {
            let p = parse(text, 1).unwrap().eval(&d).unwrap();
            assert_eq!(p.coeff_st(0, 0), expect, "{text}");
        }
        let p = parse("  2 * i * th ", 1).unwrap().eval(&d).unwrap();
        assert_eq!(p.coeff_st(1, 0), c(0.0, 2.0));
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(
            parse("th + * bth", 1),
            Err(ParseError::Syntax {
                offset: 5,
                message: "expected a number, generator or '('".into()
            })
        );
        assert!(matches!(parse("th3", 2), Err(ParseError::UnknownIndex { offset: 0, index: 3, modes: 2 })));
        assert!(matches!(parse("th0", 1), Err(ParseError::UnknownIndex { index: 0, .. })));
        assert!(matches!(parse("th", 2), Err(ParseError::MissingIndex { .. })));
        assert!(matches!(parse("x", 1), Err(ParseError::Syntax { offset: 0, .. })));
        assert!(matches!(parse("(th", 1), Err(ParseError::Syntax { offset: 3, .. })));
        assert!(matches!(parse("th^1.5", 1), Err(ParseError::Syntax { offset: 3, .. })));
        assert!(matches!(parse("th bth", 1), Err(ParseError::Syntax { offset: 3, .. })));
        assert!(matches!(parse("", 1), Err(ParseError::Syntax { offset: 0, .. })));
    }

    #[test]
    fn expand_matches_eval() {
        let d = Deformation::new(6).unwrap();
        let e = parse("(th + 2*bth)^3 - i*bth*th*th + 4", 1).unwrap();
        let mut from_words = ParaPoly::zero(d, 1);
        for w in e.expand(3).words() {
            from_words = &from_words + &paraquant::pgalgebra::canonicalize_q(&w, &d, 1).unwrap();
        }
        assert!(from_words.max_abs_diff(&e.eval(&d).unwrap()) < 1e-12);
    }

    #[test]
    fn overflowing_words_are_dropped() {
        let e = parse("th*bth*th", 1).unwrap();
        assert!(e.expand(2).words().is_empty());
        assert_eq!(e.expand(3).words().len(), 1);
    }
}
