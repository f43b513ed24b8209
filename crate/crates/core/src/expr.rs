//! Parser for the text form of KLR elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (['*'] power)*
//! power  := atom ['^' digits]
//! atom   := 'e(' int,* ')' | 'x(' k ')' | 'd(' r ')' | digits ['/' digits] | '(' expr ')'
//! ```
//!
//! Products read right to left: the rightmost factor is at the bottom. `x(k)`
//! and `d(r)` only make sense once an idempotent is in reach, either below
//! them or (for crossings, through the inverse permutation) above them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::klr::{default_engine, idempotent, perm, power, Element, Gen, KlrError};
use crate::quiver::Seq;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: idempotents do not match across this product")]
    IdempotentMismatch { line: usize, col: usize },
    #[error("{line}:{col}: {source}")]
    Algebra { line: usize, col: usize, source: KlrError },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Let a product of mismatched idempotents evaluate to zero instead of failing.
    pub allow_mismatch: bool,
}

/// Generators still waiting for an idempotent, plus the part already attached.
#[derive(Clone, Debug, Default)]
struct Value {
    /// `coefficient * word` with the word listed top to bottom.
    loose: BTreeMap<Vec<Gen>, BigRational>,
    fixed: Element,
}

impl Value {
    fn scalar(c: BigRational) -> Value {
        let mut v = Value::default();
        if !c.is_zero() {
            v.loose.insert(Vec::new(), c);
        }
        v
    }

    fn gen(g: Gen) -> Value {
        let mut v = Value::default();
        v.loose.insert(vec![g], BigRational::one());
        v
    }

    fn is_zero(&self) -> bool {
        self.loose.is_empty() && self.fixed.is_zero()
    }

    fn add(mut self, other: Value, sign: i32) -> Value {
        for (w, c) in other.loose {
            let c = if sign < 0 { -c } else { c };
            let slot = self.loose.entry(w.clone()).or_insert_with(BigRational::zero);
            *slot += c;
            if slot.is_zero() {
                self.loose.remove(&w);
            }
        }
        self.fixed = if sign < 0 { self.fixed.sub(&other.fixed) } else { self.fixed.add(&other.fixed) };
        self
    }
}

/// `W · 1_bottom` for a top-to-bottom generator word.
fn word_on(word: &[Gen], bottom: &Seq) -> Result<Element, KlrError> {
    let m = bottom.len();
    for g in word {
        let (Gen::Dot(k) | Gen::Cross(k)) = *g;
        let limit = if matches!(g, Gen::Dot(_)) { m } else { m.saturating_sub(1) };
        if k as usize >= limit {
            return Err(KlrError::PositionOutOfRange { r: k as usize + 1, len: limit });
        }
    }
    let up: Vec<Gen> = word.iter().rev().copied().collect();
    Ok(default_engine().eval_gens(&up, bottom))
}

/// The bottom sequence of a word whose top is `top`.
fn bottom_of(word: &[Gen], top: &Seq) -> Result<Seq, KlrError> {
    let crossings: Vec<u8> = word.iter().filter_map(|g| if let Gen::Cross(r) = g { Some(*r) } else { None }).collect();
    if crossings.iter().any(|&r| r as usize + 1 >= top.len()) {
        return Err(KlrError::PositionOutOfRange { r: top.len(), len: top.len().saturating_sub(1) });
    }
    Ok(Seq::new(perm::act(&crossings, top.entries())))
}

fn tops(e: &Element) -> Vec<Seq> {
    let mut v: Vec<Seq> = e.blocks().into_keys().map(|(_, t)| t).collect();
    v.sort();
    v.dedup();
    v
}

fn sources(e: &Element) -> Vec<Seq> {
    let mut v: Vec<Seq> = e.terms().keys().map(|m| m.source().clone()).collect();
    v.sort();
    v.dedup();
    v
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    opts: ParseOptions,
}

impl<'a> Parser<'a> {
    fn location(&self, at: usize) -> (usize, usize) {
        let byte = self.chars.get(at).map_or(self.src.len(), |c| c.0);
        let before = &self.src[..byte];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        (line, col)
    }

    fn err<T>(&self, at: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.location(at);
        Err(ParseError::Syntax { line, col, msg: msg.into() })
    }

    fn algebra(&self, at: usize, source: KlrError) -> ParseError {
        let (line, col) = self.location(at);
        ParseError::Algebra { line, col, source }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.err(self.pos, format!("expected '{want}', found '{c}'")),
            None => self.err(self.pos, format!("expected '{want}', found end of input")),
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn small(&mut self) -> Result<usize, ParseError> {
        let at = self.pos;
        let n = self.digits()?;
        n.try_into().or_else(|_| self.err(at, "number too large"))
    }

    fn signed(&mut self) -> Result<i32, ParseError> {
        let neg = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let at = self.pos;
        let n: i64 = self.digits()?.try_into().or_else(|_| self.err(at, "label too large"))?;
        let n = if neg { -n } else { n };
        n.try_into().or_else(|_| self.err(at, "label too large"))
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut sign = 1;
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                sign = -1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let mut acc = Value::default().add(self.term()?, sign);
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(self.term()?, 1);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.add(self.term()?, -1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(c: char) -> bool {
        matches!(c, 'e' | 'x' | 'd' | '(') || c.is_ascii_digit()
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut factors = vec![(self.pos, self.power()?)];
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    factors.push((self.pos, self.power()?));
                }
                Some(c) if Self::starts_atom(c) => factors.push((self.pos, self.power()?)),
                _ => break,
            }
        }
        let (_, mut acc) = factors.pop().expect("at least one factor");
        while let Some((at, f)) = factors.pop() {
            acc = self.product(f, acc, at)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let n = self.small()?;
        if n == 0 {
            if !base.loose.is_empty() && base.fixed.is_zero() {
                return Ok(Value::scalar(BigRational::one()));
            }
            if base.loose.is_empty() {
                let fixed = power(&base.fixed, 0).map_err(|e| self.algebra(at, e))?;
                return Ok(Value { loose: BTreeMap::new(), fixed });
            }
            return self.err(at, "zeroth power of a partly attached expression");
        }
        let mut acc = base.clone();
        for _ in 1..n {
            acc = self.product(base.clone(), acc, at)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some('e') => {
                self.pos += 1;
                self.expect('(')?;
                let mut labels = Vec::new();
                if self.peek() != Some(')') {
                    labels.push(self.signed()?);
                    while self.peek() == Some(',') {
                        self.pos += 1;
                        labels.push(self.signed()?);
                    }
                }
                self.expect(')')?;
                Ok(Value { loose: BTreeMap::new(), fixed: idempotent(&Seq::from_labels(&labels)) })
            }
            Some(c @ ('x' | 'd')) => {
                self.pos += 1;
                self.expect('(')?;
                let k_at = self.pos;
                let k = self.small()?;
                self.expect(')')?;
                if k == 0 || k > 255 {
                    return self.err(k_at, "positions are 1-based");
                }
                let g = if c == 'x' { Gen::Dot((k - 1) as u8) } else { Gen::Cross((k - 1) as u8) };
                Ok(Value::gen(g))
            }
            Some(c) if c.is_ascii_digit() => {
                let p = self.digits()?;
                let mut q = BigInt::one();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let q_at = self.pos;
                    q = self.digits()?;
                    if q.is_zero() {
                        return self.err(q_at, "zero denominator");
                    }
                }
                Ok(Value::scalar(BigRational::new(p, q)))
            }
            Some(c) => self.err(at, format!("unexpected '{c}'")),
            None => self.err(at, "unexpected end of input"),
        }
    }

    /// `upper · lower`.
    fn product(&self, upper: Value, lower: Value, at: usize) -> Result<Value, ParseError> {
        let mut out = Value::default();
        let alg = |e| self.algebra(at, e);
        // loose · loose
        for (wu, cu) in &upper.loose {
            for (wl, cl) in &lower.loose {
                let mut w = wu.clone();
                w.extend_from_slice(wl);
                let mut one = Value::default();
                one.loose.insert(w, cu * cl);
                out = out.add(one, 1);
            }
        }
        // loose · fixed: attach at the tops of the lower part
        for (w, c) in &upper.loose {
            for t in tops(&lower.fixed) {
                let top_part = word_on(w, &t).map_err(alg)?;
                let prod = default_engine().multiply(&top_part, &lower.fixed).map_err(alg)?;
                out.fixed = out.fixed.add(&prod.scaled(c));
            }
        }
        // fixed · loose: attach below the sources of the upper part
        for (w, c) in &lower.loose {
            for s in sources(&upper.fixed) {
                let b = bottom_of(w, &s).map_err(alg)?;
                let low = word_on(w, &b).map_err(alg)?;
                let prod = default_engine().multiply(&upper.fixed, &low).map_err(alg)?;
                out.fixed = out.fixed.add(&prod.scaled(c));
            }
        }
        if !upper.fixed.is_zero() && !lower.fixed.is_zero() {
            let prod = default_engine().multiply(&upper.fixed, &lower.fixed).map_err(alg)?;
            let meets = sources(&upper.fixed).iter().any(|s| tops(&lower.fixed).contains(s));
            if !meets && !self.opts.allow_mismatch {
                let (line, col) = self.location(at);
                return Err(ParseError::IdempotentMismatch { line, col });
            }
            out.fixed = out.fixed.add(&prod);
        }
        Ok(out)
    }
}

/// Parses `text` into a normal-form element.
pub fn parse_expression(text: &str) -> Result<Element, ParseError> {
    parse_expression_with(text, ParseOptions::default())
}

pub fn parse_expression_with(text: &str, opts: ParseOptions) -> Result<Element, ParseError> {
    let mut p = Parser { src: text, chars: text.char_indices().collect(), pos: 0, opts };
    let v = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected '{c}'"));
    }
    if !v.loose.is_empty() {
        if v.is_zero() {
            return Ok(Element::zero());
        }
        return p.err(0, "no idempotent fixes the strands of every term");
    }
    Ok(v.fixed)
}

/// The printed form read back by [`parse_expression`]; the same as `Display`.
pub fn print_expression(e: &Element) -> String {
    e.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klr::{crossing, dot, dot_power, multiply};

    fn s(v: &[i32]) -> Seq {
        Seq::from_labels(v)
    }

    #[test]
    fn basics() {
        assert_eq!(parse_expression("e(0,0)").unwrap(), idempotent(&s(&[0, 0])));
        assert!(parse_expression("d(1)*d(1)*e(0,0)").unwrap().is_zero());
        assert_eq!(parse_expression("x(1)^2*e(0)").unwrap(), dot_power(1, 2, &s(&[0])).unwrap());
        assert_eq!(parse_expression("e()").unwrap(), idempotent(&s(&[])));
    }

    #[test]
    fn dot_slide() {
        let i = s(&[0, 0]);
        let want = multiply(&dot(2, &i).unwrap(), &crossing(1, &i).unwrap()).unwrap();
        assert_eq!(parse_expression("x(2) d(1) e(0,0)").unwrap(), want);
        assert_eq!(want.len(), 2);
    }

    #[test]
    fn idempotent_on_top() {
        // e(1,0)·d(1) has bottom (0,1)
        assert_eq!(parse_expression("e(1,0)*d(1)").unwrap(), crossing(1, &s(&[0, 1])).unwrap());
        assert_eq!(parse_expression("e(0,1)*x(2)").unwrap(), dot(2, &s(&[0, 1])).unwrap());
    }

    #[test]
    fn scalars_and_sums() {
        let e = parse_expression("-3/2*e(0,0) + 3/2 x(1) d(1) e(0,0)").unwrap();
        assert_eq!(parse_expression(&e.to_string()).unwrap(), e);
        assert!(parse_expression("2*e(0) - 2*e(0)").unwrap().is_zero());
        assert!(parse_expression("0").unwrap().is_zero());
        assert_eq!(parse_expression("(x(1)+x(2))*e(3,4)").unwrap().len(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expression("e(0,1)\n  * q") {
            Err(ParseError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expression("x(1)"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expression("e(0,1)*e(1,0)"), Err(ParseError::IdempotentMismatch { .. })));
        let z = parse_expression_with("e(0,1)*e(1,0)", ParseOptions { allow_mismatch: true }).unwrap();
        assert!(z.is_zero());
        assert!(matches!(parse_expression("d(2)*e(0,1)"), Err(ParseError::Algebra { .. })));
        assert!(matches!(parse_expression("e(0)*e(1)"), Err(ParseError::Algebra { .. })));
        assert!(parse_expression("1/0*e(0)").is_err());
    }
}
