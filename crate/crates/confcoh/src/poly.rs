//! Sparse multivariate polynomials over exact rationals.
//!
//! The variable universe is fixed and small: the module symbol `D` (the
//! formal ∂), two bracket parameters `x` and `y` (λ and µ in bracket
//! calculus), a reserved evaluation variable `t` used by the homotopy
//! operators, and numbered slot variables `x1, x2, …` (the λᵢ attached to the
//! arguments of a cochain).
//!
//! Design notes:
//!
//! * Terms are kept in a `BTreeMap` keyed by monomials under graded
//!   lexicographic order (higher total degree first; ties broken by the
//!   exponent of the earliest variable). Iteration order — and therefore
//!   printing, hashing into matrices, and every downstream computation — is
//!   deterministic.
//! * All arithmetic is exact; coefficients are arbitrary-precision rationals
//!   and zero terms are pruned eagerly, so `is_zero` is structural equality
//!   with the empty polynomial.
//! * The text form round-trips: `Display` output always reparses to the same
//!   polynomial, e.g. `1/2*D + 3/2*x`.

use crate::rational::{parse_rational, Rational};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// A variable of the polynomial ring.
///
/// The derived ordering (`D < x < y < t < x1 < x2 < …`) is the variable order
/// used by the graded lexicographic term order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    /// The module symbol ∂.
    D,
    /// First bracket parameter (λ).
    X,
    /// Second bracket parameter (µ).
    Y,
    /// Reserved evaluation variable for the homotopy operators.
    T,
    /// Slot variable λᵢ, 1-based.
    Lam(u32),
}

impl Var {
    /// The slot variable for 1-based slot `i`.
    pub fn lam(i: usize) -> Var {
        Var::Lam(u32::try_from(i).expect("slot index fits in u32"))
    }

    /// Parses a variable name as written in polynomial text.
    pub fn parse_name(name: &str) -> Option<Var> {
        match name {
            "D" => Some(Var::D),
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            "t" => Some(Var::T),
            _ => {
                let idx = name.strip_prefix('x')?;
                let i: u32 = idx.parse().ok()?;
                if i == 0 {
                    None
                } else {
                    Some(Var::Lam(i))
                }
            }
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::D => write!(f, "D"),
            Var::X => write!(f, "x"),
            Var::Y => write!(f, "y"),
            Var::T => write!(f, "t"),
            Var::Lam(i) => write!(f, "x{i}"),
        }
    }
}

/// A power product of variables; exponents are strictly positive and the
/// pairs are sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: Vec<(Var, u32)>,
}

impl Monomial {
    /// The empty product (the constant monomial 1).
    pub fn one() -> Monomial {
        Monomial::default()
    }

    /// A single variable raised to a power.
    pub fn var(v: Var, e: u32) -> Monomial {
        Monomial::from_pairs([(v, e)])
    }

    /// Builds a monomial from arbitrary (variable, exponent) pairs, merging
    /// duplicates and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Monomial {
        let mut merged: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *merged.entry(v).or_insert(0) += e;
            }
        }
        Monomial {
            exps: merged.into_iter().collect(),
        }
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    /// Degree counting only variables selected by `pred`.
    pub fn degree_in(&self, pred: impl Fn(Var) -> bool) -> u32 {
        self.exps
            .iter()
            .filter(|&&(v, _)| pred(v))
            .map(|&(_, e)| e)
            .sum()
    }

    /// The exponent of `v` (zero if absent).
    pub fn exp(&self, v: Var) -> u32 {
        self.exps
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    /// Product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(self.exps.iter().chain(other.exps.iter()).copied())
    }

    /// The variables occurring with positive exponent.
    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    /// Splits off `v`: returns its exponent and the monomial without it.
    pub fn without(&self, v: Var) -> (u32, Monomial) {
        let e = self.exp(v);
        if e == 0 {
            return (0, self.clone());
        }
        let rest = Monomial {
            exps: self
                .exps
                .iter()
                .copied()
                .filter(|&(w, _)| w != v)
                .collect(),
        };
        (e, rest)
    }

    fn is_one(&self) -> bool {
        self.exps.is_empty()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Equal total degree: walk the variables in order; the monomial with
        // the larger exponent on the earliest differing variable is greater.
        let mut a = self.exps.iter();
        let mut b = other.exps.iter();
        let (mut pa, mut pb) = (a.next(), b.next());
        loop {
            match (pa, pb) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            pa = a.next();
                            pb = b.next();
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    /// The zero polynomial.
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Polynomial {
        Polynomial::constant(Rational::one())
    }

    /// A constant polynomial.
    pub fn constant(c: Rational) -> Polynomial {
        Polynomial::term(Monomial::one(), c)
    }

    /// The polynomial consisting of a single variable.
    pub fn var(v: Var) -> Polynomial {
        Polynomial::term(Monomial::var(v, 1), Rational::one())
    }

    /// A single term.
    pub fn term(m: Monomial, c: Rational) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from terms, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    /// True iff this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Number of terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The leading (greatest) term under graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The coefficient of a monomial (zero if absent).
    pub fn coeff_of(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree counting only selected variables; `None` for zero.
    pub fn degree_in(&self, pred: impl Fn(Var) -> bool) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(&pred)).max()
    }

    /// The set of variables that occur.
    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Raises to a nonnegative integer power.
    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `replacement` for every occurrence of `v`, expanding
    /// powers exactly.
    pub fn substitute(&self, v: Var, replacement: &Polynomial) -> Polynomial {
        if !self.vars().contains(&v) {
            return self.clone();
        }
        // Cache the powers of the replacement up to the largest exponent.
        let max_e = self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0);
        let mut powers: Vec<Polynomial> = Vec::with_capacity(max_e as usize + 1);
        powers.push(Polynomial::one());
        for e in 1..=max_e {
            let next = &powers[(e - 1) as usize] * replacement;
            powers.push(next);
        }
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            let piece = powers[e as usize].scale(c);
            for (pm, pc) in &piece.terms {
                out.add_term(rest.mul(pm), pc.clone());
            }
        }
        out
    }

    /// Sets `v` to zero (drops every term containing it).
    pub fn set_var_zero(&self, v: Var) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Simultaneously renames variables. Variables absent from `map` are kept.
    /// Fails if two occurring variables would collapse onto the same target.
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Result<Polynomial> {
        let occurring = self.vars();
        let mut targets: BTreeMap<Var, Var> = BTreeMap::new();
        for &v in &occurring {
            let tgt = *map.get(&v).unwrap_or(&v);
            if let Some(&prev) = targets.iter().find(|&(_, &t)| t == tgt).map(|(k, _)| k) {
                return Err(Error::RenameCollision(prev, v, tgt));
            }
            targets.insert(v, tgt);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let renamed =
                    Monomial::from_pairs(m.exps.iter().map(|&(v, e)| (targets[&v], e)));
                (renamed, c.clone())
            })
            .collect();
        Ok(Polynomial { terms })
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial(&self, v: Var) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            if e == 0 {
                continue;
            }
            let mono = if e == 1 {
                rest
            } else {
                rest.mul(&Monomial::var(v, e - 1))
            };
            out.add_term(mono, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// The derivative with respect to `v`, evaluated at `v = 0`: picks out
    /// the coefficient of the linear occurrence of `v`.
    pub fn diff_at_zero(&self, v: Var) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.without(v);
            if e == 1 {
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Splits into homogeneous components with respect to the degree counting
    /// only variables selected by `pred`. Returned ascending by degree; the
    /// zero polynomial yields an empty list.
    pub fn homogeneous_components(&self, pred: impl Fn(Var) -> bool) -> Vec<(u32, Polynomial)> {
        let mut by_degree: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_degree
                .entry(m.degree_in(&pred))
                .or_insert_with(Polynomial::zero)
                .add_term(m.clone(), c.clone());
        }
        by_degree.into_iter().collect()
    }

    /// Evaluates under a total assignment of the occurring variables.
    pub fn eval_with(&self, assign: impl Fn(Var) -> Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut prod = c.clone();
            for &(v, e) in &m.exps {
                let val = assign(v);
                for _ in 0..e {
                    prod *= val.clone();
                }
            }
            acc += prod;
        }
        acc
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending order: leading term first.
        for (m, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let mono = format_monomial(m);
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn format_monomial(m: &Monomial) -> String {
    m.exps
        .iter()
        .map(|&(v, e)| {
            if e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Polynomial> {
        Parser::new(s)?.parse_all()
    }
}

/// Parses polynomial text; alias for [`str::parse`].
pub fn parse_poly(s: &str) -> Result<Polynomial> {
    s.parse()
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Result<Parser<'a>> {
        let mut toks = Vec::new();
        let bytes = input.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            match c {
                ' ' | '\t' => i += 1,
                '+' => {
                    toks.push(Tok::Plus);
                    i += 1;
                }
                '-' => {
                    toks.push(Tok::Minus);
                    i += 1;
                }
                '*' => {
                    toks.push(Tok::Star);
                    i += 1;
                }
                '/' => {
                    toks.push(Tok::Slash);
                    i += 1;
                }
                '^' => {
                    toks.push(Tok::Caret);
                    i += 1;
                }
                '(' => {
                    toks.push(Tok::LParen);
                    i += 1;
                }
                ')' => {
                    toks.push(Tok::RParen);
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let lit = &input[start..i];
                    toks.push(Tok::Num(parse_rational(lit).map_err(|_| {
                        Error::PolySyntax {
                            input: input.to_string(),
                            msg: format!("bad number `{lit}`"),
                        }
                    })?));
                }
                'a'..='z' | 'A'..='Z' => {
                    let start = i;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let name = &input[start..i];
                    let v = Var::parse_name(name).ok_or_else(|| Error::PolySyntax {
                        input: input.to_string(),
                        msg: format!("unknown variable `{name}`"),
                    })?;
                    toks.push(Tok::Var(v));
                }
                other => {
                    return Err(Error::PolySyntax {
                        input: input.to_string(),
                        msg: format!("unexpected character `{other}`"),
                    })
                }
            }
        }
        Ok(Parser { input, toks, pos: 0 })
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::PolySyntax {
            input: self.input.to_string(),
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_all(&mut self) -> Result<Polynomial> {
        let p = self.parse_expr()?;
        if self.pos != self.toks.len() {
            return Err(self.err(format!("trailing input at token {}", self.pos)));
        }
        Ok(p)
    }

    fn parse_expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.parse_term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.pos += 1;
                    acc += &self.parse_term()?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = &acc - &self.parse_term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Polynomial> {
        let mut acc = self.parse_factor()?;
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Star => {
                    self.pos += 1;
                    acc = &acc * &self.parse_factor()?;
                }
                Tok::Slash => {
                    self.pos += 1;
                    let divisor = self.parse_factor()?;
                    let c = constant_value(&divisor)
                        .ok_or_else(|| self.err("division is only defined by constants"))?;
                    if c.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&(Rational::one() / c));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Polynomial> {
        let mut sign = Rational::one();
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Minus => {
                    self.pos += 1;
                    sign = -sign;
                }
                Tok::Plus => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let base = match self.next() {
            Some(Tok::Num(c)) => Polynomial::constant(c),
            Some(Tok::Var(v)) => Polynomial::var(v),
            Some(Tok::LParen) => {
                let inner = self.parse_expr()?;
                match self.next() {
                    Some(Tok::RParen) => inner,
                    _ => return Err(self.err("missing closing parenthesis")),
                }
            }
            other => return Err(self.err(format!("expected a value, found {other:?}"))),
        };
        let powered = if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(e)) if e.is_integer() && !e.is_negative() => {
                    let e: u32 = e
                        .to_integer()
                        .try_into()
                        .map_err(|_| self.err("exponent too large"))?;
                    base.pow(e)
                }
                _ => return Err(self.err("exponent must be a nonnegative integer")),
            }
        } else {
            base
        };
        Ok(powered.scale(&sign))
    }
}

fn constant_value(p: &Polynomial) -> Option<Rational> {
    if p.is_zero() {
        return Some(Rational::zero());
    }
    if p.term_count() == 1 {
        let (m, c) = p.terms().next().unwrap();
        if m.is_one() {
            return Some(c.clone());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn parses_and_prints_the_canonical_example() {
        let q = p("1/2*D + 3/2*x");
        assert_eq!(q.coeff_of(&Monomial::var(Var::D, 1)), rat(1, 2));
        assert_eq!(q.coeff_of(&Monomial::var(Var::X, 1)), rat(3, 2));
        assert_eq!(q.to_string(), "1/2*D + 3/2*x");
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "0",
            "1",
            "-3/2",
            "D + 2*x",
            "x1^2*x2 - x1*x2^2",
            "-x1^3 + x2^3",
            "2*D*x1^2*x2 + 1/3*t",
            "D^2 - D*x + x^2 - 7",
        ] {
            let q = p(s);
            assert_eq!(q.to_string(), s, "canonical form of `{s}`");
            assert_eq!(p(&q.to_string()), q, "round trip of `{s}`");
        }
    }

    #[test]
    fn graded_lex_order() {
        let m = |s: &str| p(s).leading().unwrap().0.clone();
        // Higher total degree wins.
        assert!(m("x1^2") > m("x1"));
        // Ties: earlier variable with larger exponent wins.
        assert!(m("D^2") > m("D*x"));
        assert!(m("D*x") > m("x^2"));
        assert!(m("x1^2*x2") > m("x1*x2^2"));
        // Leading term extraction.
        assert_eq!(
            p("x1^2*x2 - x1*x2^2").leading().unwrap().0,
            &m("x1^2*x2")
        );
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(p("x1 - x1").degree(), None);
        assert_eq!(p("D*x1^2").degree(), Some(3));
    }

    #[test]
    fn arithmetic_identities() {
        let a = p("D + 2*x");
        let b = p("x - 3");
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&a * &Polynomial::zero(), Polynomial::zero());
        assert_eq!((&a * &b).to_string(), "D*x + 2*x^2 - 3*D - 6*x");
    }

    #[test]
    fn substitution_expands_powers() {
        // (D + 2x) with D -> D + x gives D + 3x.
        let q = p("D + 2*x").substitute(Var::D, &p("D + x"));
        assert_eq!(q, p("D + 3*x"));
        // (D^2) with D -> x1 + x2 expands the square.
        let q = p("D^2").substitute(Var::D, &p("x1 + x2"));
        assert_eq!(q, p("x1^2 + 2*x1*x2 + x2^2"));
        // Substituting an absent variable is the identity.
        let q = p("x1*x2");
        assert_eq!(q.substitute(Var::D, &p("7")), q);
    }

    #[test]
    fn rename_is_simultaneous_and_injective() {
        let q = p("x1^2*x2");
        let swap: BTreeMap<Var, Var> =
            [(Var::lam(1), Var::lam(2)), (Var::lam(2), Var::lam(1))].into();
        assert_eq!(q.rename(&swap).unwrap(), p("x1*x2^2"));
        let collide: BTreeMap<Var, Var> = [(Var::lam(1), Var::lam(2))].into();
        assert!(q.rename(&collide).is_err());
    }

    #[test]
    fn derivative_at_zero_extracts_the_linear_coefficient() {
        let f = p("(x1 + x2 + t)*(x1 - x2)*(x1 - t)*(x2 - t)");
        assert_eq!(f.diff_at_zero(Var::T), p("-x1^3 + x2^3"));
        // Consistency with partial-then-evaluate.
        assert_eq!(f.partial(Var::T).set_var_zero(Var::T), p("-x1^3 + x2^3"));
    }

    #[test]
    fn homogeneous_components_split_by_selected_degree() {
        let f = p("x1^2 + x2 + D*x2");
        let lam_only = |v: Var| matches!(v, Var::Lam(_));
        let comps = f.homogeneous_components(lam_only);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], (1, p("D*x2 + x2")));
        assert_eq!(comps[1], (2, p("x1^2")));
        assert!(Polynomial::zero().homogeneous_components(lam_only).is_empty());
    }

    #[test]
    fn evaluation_is_exact() {
        let f = p("1/2*x1^2 - x2/3");
        let val = f.eval_with(|v| match v {
            Var::Lam(1) => rat_int(4),
            Var::Lam(2) => rat_int(6),
            _ => rat_int(0),
        });
        assert_eq!(val, rat_int(6));
    }

    #[test]
    fn parser_rejects_malformed_input() {
        assert!("x0".parse::<Polynomial>().is_err());
        assert!("q".parse::<Polynomial>().is_err());
        assert!("1 +".parse::<Polynomial>().is_err());
        assert!("(x1".parse::<Polynomial>().is_err());
        assert!("x1^(2)".parse::<Polynomial>().is_err());
        assert!("1/x".parse::<Polynomial>().is_err());
        assert!("1/0".parse::<Polynomial>().is_err());
        assert!("2 2".parse::<Polynomial>().is_err());
    }

    #[test]
    fn division_by_constants_and_unary_signs() {
        assert_eq!(p("(D + 2*x)/2"), p("1/2*D + x"));
        assert_eq!(p("-x1 + -x2"), p("-x1 - x2"));
        assert_eq!(p("--x1"), p("x1"));
        assert_eq!(p("-(x1 - x2)^2"), p("-x1^2 + 2*x1*x2 - x2^2"));
    }
}
