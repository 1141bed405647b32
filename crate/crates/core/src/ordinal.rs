//! Exact arithmetic for ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a finite descending sum of ω-powers with positive
//! natural coefficients. Addition, left subtraction, multiplication,
//! exponentiation and the division algorithm are all exact; there is a
//! small expression language (`w^2*3+w+5`) with a parser and a canonical
//! printer that are mutually inverse.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// An ordinal below ε₀ in Cantor normal form.
///
/// Invariants: exponents strictly decreasing, every coefficient ≥ 1.
/// The empty term list denotes 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ordinal {
    /// (exponent, coefficient) pairs, exponents strictly decreasing.
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn from_nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(Self::zero(), n)],
            }
        }
    }

    pub fn one() -> Self {
        Self::from_nat(1)
    }

    pub fn omega() -> Self {
        Self::omega_pow(&Self::one())
    }

    /// ω^exp.
    pub fn omega_pow(exp: &Ordinal) -> Self {
        Ordinal {
            terms: vec![(exp.clone(), 1)],
        }
    }

    /// ω^exp · coef; panics if coef is 0.
    pub fn omega_pow_times(exp: &Ordinal, coef: u64) -> Self {
        assert!(coef > 0, "coefficient must be positive");
        Ordinal {
            terms: vec![(exp.clone(), coef)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The natural number this ordinal denotes, if it is finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.len() {
            0 => Some(0),
            1 if self.terms[0].0.is_zero() => Some(self.terms[0].1),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    /// CNF terms, exponents strictly decreasing.
    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    fn leading(&self) -> Option<&(Ordinal, u64)> {
        self.terms.first()
    }

    /// Drops the leading CNF term.
    fn rest(&self) -> Ordinal {
        Ordinal {
            terms: self.terms[1..].to_vec(),
        }
    }

    /// The coefficient of ω^k in the CNF of `self` (0 when no such term).
    pub fn coeff_of_power(&self, k: &Ordinal) -> u64 {
        self.terms
            .iter()
            .find(|(e, _)| e == k)
            .map(|&(_, c)| c)
            .unwrap_or(0)
    }

    /// Ordinal sum `self + b`. Terms of `self` below the leading power of
    /// `b` are absorbed (ω^α + ω^β = ω^β for α < β).
    pub fn add(&self, b: &Ordinal) -> Ordinal {
        let Some((eb, cb)) = b.leading() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> = Vec::new();
        for (ea, ca) in &self.terms {
            match ea.cmp(eb) {
                Ordering::Greater => terms.push((ea.clone(), *ca)),
                Ordering::Equal | Ordering::Less => {
                    if ea == eb {
                        terms.push((eb.clone(), ca.checked_add(*cb).expect("coefficient overflow")));
                        terms.extend_from_slice(&b.terms[1..]);
                        return Ordinal { terms };
                    }
                    break;
                }
            }
        }
        terms.extend_from_slice(&b.terms);
        Ordinal { terms }
    }

    /// Left subtraction: the unique γ with `self + γ = b`, or `None` when
    /// `self > b`.
    pub fn left_sub(&self, b: &Ordinal) -> Option<Ordinal> {
        let mut a_terms = self.terms.as_slice();
        let mut b_terms = b.terms.as_slice();
        loop {
            match (a_terms.first(), b_terms.first()) {
                (None, _) => {
                    return Some(Ordinal {
                        terms: b_terms.to_vec(),
                    })
                }
                (Some(_), None) => return None,
                (Some((ea, ca)), Some((eb, cb))) => match ea.cmp(eb) {
                    Ordering::Greater => return None,
                    Ordering::Less => {
                        return Some(Ordinal {
                            terms: b_terms.to_vec(),
                        })
                    }
                    Ordering::Equal => match ca.cmp(cb) {
                        Ordering::Greater => return None,
                        Ordering::Less => {
                            let mut terms = vec![(eb.clone(), cb - ca)];
                            terms.extend_from_slice(&b_terms[1..]);
                            return Some(Ordinal { terms });
                        }
                        Ordering::Equal => {
                            a_terms = &a_terms[1..];
                            b_terms = &b_terms[1..];
                        }
                    },
                },
            }
        }
    }

    /// Ordinal product. Distributes over the right argument's CNF:
    /// a·(β+γ) = a·β + a·γ.
    pub fn mul(&self, b: &Ordinal) -> Ordinal {
        if self.is_zero() || b.is_zero() {
            return Ordinal::zero();
        }
        let (ea, ca) = self.leading().unwrap();
        let mut acc = Ordinal::zero();
        for (eb, cb) in &b.terms {
            let piece = if eb.is_zero() {
                // a·n = ω^{e₁}·(c₁·n) + rest of a
                let mut terms = vec![(ea.clone(), ca.checked_mul(*cb).expect("coefficient overflow"))];
                terms.extend_from_slice(&self.terms[1..]);
                Ordinal { terms }
            } else {
                Ordinal::omega_pow_times(&ea.add(eb), *cb)
            };
            acc = acc.add(&piece);
        }
        acc
    }

    /// Ordinal exponentiation. `pow(0, 0)` is 1 by convention.
    pub fn pow(&self, b: &Ordinal) -> Ordinal {
        if b.is_zero() {
            return Ordinal::one();
        }
        if self.is_zero() {
            return Ordinal::zero();
        }
        if *self == Ordinal::one() {
            return Ordinal::one();
        }
        let mut acc = Ordinal::one();
        for (eb, cb) in &b.terms {
            acc = acc.mul(&self.pow_single(eb, *cb));
        }
        acc
    }

    /// self^(ω^γ·c) for self ≥ 2.
    fn pow_single(&self, gamma: &Ordinal, c: u64) -> Ordinal {
        if gamma.is_zero() {
            // plain finite iteration
            let mut acc = Ordinal::one();
            for _ in 0..c {
                acc = acc.mul(self);
            }
            return acc;
        }
        if let Some(n) = self.as_nat() {
            debug_assert!(n >= 2);
            // n^(ω^γ) = ω^(ω^δ) where 1 + δ = γ
            let delta = Ordinal::one().left_sub(gamma).expect("γ ≥ 1 here");
            let exp = Ordinal::omega_pow(&delta).mul(&Ordinal::from_nat(c));
            Ordinal::omega_pow(&exp)
        } else {
            // a^(ω^γ) = ω^(e₁·ω^γ) for infinite a with leading exponent e₁
            let e1 = &self.leading().unwrap().0;
            let exp = e1.mul(&Ordinal::omega_pow(gamma)).mul(&Ordinal::from_nat(c));
            Ordinal::omega_pow(&exp)
        }
    }

    /// Division with remainder: `self = a·q + r` with `r < a`.
    pub fn div_rem(&self, a: &Ordinal) -> Option<(Ordinal, Ordinal)> {
        if a.is_zero() {
            return None;
        }
        let (alpha1, c1) = a.leading().unwrap();
        let mut q = Ordinal::zero();
        let mut rem = self.clone();
        while rem >= *a {
            let (gamma1, d1) = rem.leading().unwrap().clone();
            if gamma1 > *alpha1 {
                // a·(ω^δ·d₁) = ω^{γ₁}·d₁ exactly, for δ = -α₁+γ₁ > 0
                let delta = alpha1.left_sub(&gamma1).expect("γ₁ > α₁");
                q = q.add(&Ordinal::omega_pow_times(&delta, d1));
                rem = rem.rest();
            } else {
                debug_assert!(gamma1 == *alpha1);
                let mut n = d1 / c1;
                let mut candidate = a.mul(&Ordinal::from_nat(n));
                if candidate > rem {
                    n -= 1;
                    candidate = a.mul(&Ordinal::from_nat(n));
                }
                debug_assert!(n >= 1);
                q = q.add(&Ordinal::from_nat(n));
                rem = candidate.left_sub(&rem).expect("candidate ≤ rem");
            }
        }
        Some((q, rem))
    }

    /// The division algorithm of base expansion: given `self < a·b`,
    /// returns the unique (b₁, a₁) with `self = a·b₁ + a₁`, b₁ < b, a₁ < a.
    pub fn divmod(&self, a: &Ordinal, b: &Ordinal) -> Option<(Ordinal, Ordinal)> {
        if a.is_zero() || b.is_zero() || *self >= a.mul(b) {
            return None;
        }
        let (q, r) = self.div_rem(a)?;
        debug_assert!(q < *b && r < *a);
        Some((q, r))
    }

    /// When `self = ω^k` exactly (single term, coefficient 1), returns `k`.
    pub fn omega_power_exponent(&self) -> Option<Ordinal> {
        match self.terms.as_slice() {
            [(e, 1)] => Some(e.clone()),
            _ => None,
        }
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.terms.as_slice();
        let mut b = other.terms.as_slice();
        loop {
            match (a.first(), b.first()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ea, ca)), Some((eb, cb))) => {
                    match ea.cmp(eb).then_with(|| ca.cmp(cb)) {
                        Ordering::Equal => {
                            a = &a[1..];
                            b = &b[1..];
                        }
                        ord => return ord,
                    }
                }
            }
        }
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{}", c)?;
                continue;
            }
            write!(f, "w")?;
            if *e != Ordinal::one() {
                if e.as_nat().is_some() || *e == Ordinal::omega() {
                    write!(f, "^{}", e)?;
                } else {
                    write!(f, "^({})", e)?;
                }
            }
            if *c != 1 {
                write!(f, "*{}", c)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error from [`parse_ordinal`], with the byte offset of the problem.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("ordinal syntax error at offset {pos}: {msg}")]
pub struct ParseOrdinalError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            input: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseOrdinalError> {
        Err(ParseOrdinalError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64, ParseOrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a natural number");
        }
        let text = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        text.parse::<u64>().map_err(|_| ParseOrdinalError {
            pos: start,
            msg: format!("number {} out of range", text),
        })
    }

    fn ord(&mut self) -> Result<Ordinal, ParseOrdinalError> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            let t = self.term()?;
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, ParseOrdinalError> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exp = if self.eat(b'^') {
                    self.atom()?
                } else {
                    Ordinal::one()
                };
                let coef = if self.eat(b'*') {
                    let at = self.pos;
                    let n = self.nat()?;
                    if n == 0 {
                        return Err(ParseOrdinalError {
                            pos: at,
                            msg: "coefficient 0 is not allowed".into(),
                        });
                    }
                    n
                } else {
                    1
                };
                Ok(Ordinal::omega_pow_times(&exp, coef))
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::from_nat(self.nat()?)),
            _ => self.err("expected a term ('w' or a number)"),
        }
    }

    fn atom(&mut self) -> Result<Ordinal, ParseOrdinalError> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.ord()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::from_nat(self.nat()?)),
            _ => self.err("expected an exponent atom (number, 'w' or parenthesized expression)"),
        }
    }
}

/// Parses an ordinal expression, e.g. `w^2*3+w+5` or `w^(w)`.
///
/// The result is always in canonical CNF; non-canonical sums such as
/// `1+w` are normalized during parsing.
pub fn parse_ordinal(text: &str) -> Result<Ordinal, ParseOrdinalError> {
    let mut p = Parser::new(text);
    let value = p.ord()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return p.err("unexpected trailing input");
    }
    Ok(value)
}
