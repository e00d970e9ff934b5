//! Sparse exact-rational multivariate polynomials over a weighted ring,
//! with a small expression parser.
//!
//! Terms are kept in a canonical descending order: graded by weighted
//! degree, ties broken reverse-lexicographically on the declared variable
//! order. All coefficients are arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

pub type Rat = BigRational;
pub type Int = BigInt;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// A polynomial ring with named variables carrying positive even weights.
#[derive(Debug, PartialEq, Eq)]
pub struct WeightedRing {
    vars: Vec<String>,
    weights: Vec<u64>,
}

pub type RingRef = Arc<WeightedRing>;

impl WeightedRing {
    pub fn new(vars: Vec<String>, weights: Vec<u64>) -> Result<RingRef> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("at least one variable required".into()));
        }
        if vars.len() != weights.len() {
            return Err(Error::InvalidRing(format!(
                "{} variables but {} weights",
                vars.len(),
                weights.len()
            )));
        }
        for w in &weights {
            if *w < 2 || *w % 2 != 0 {
                return Err(Error::InvalidRing(format!(
                    "weight {w} is not a positive even integer"
                )));
            }
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(WeightedRing { vars, weights }))
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn weight(&self, i: usize) -> u64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn max_weight(&self) -> u64 {
        *self.weights.iter().max().unwrap()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An exponent vector, indexed by the ring's variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u64>,
}

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial {
            exps: vec![0; num_vars],
        }
    }

    pub fn var(i: usize, num_vars: usize) -> Self {
        let mut exps = vec![0; num_vars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u64>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u64 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().sum()
    }

    pub fn weighted_degree(&self, ring: &WeightedRing) -> u64 {
        self.exps
            .iter()
            .zip(ring.weights())
            .map(|(e, w)| e * w)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Canonical order: weighted degree first, then reverse-lexicographic on
/// the declared variable order (the monomial with the smaller exponent in
/// the last differing position is the larger one).
pub fn cmp_monomials(ring: &WeightedRing, a: &Monomial, b: &Monomial) -> Ordering {
    let da = a.weighted_degree(ring);
    let db = b.weighted_degree(ring);
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    for i in (0..ring.num_vars()).rev() {
        if a.exps[i] != b.exps[i] {
            return if a.exps[i] < b.exps[i] {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
    }
    Ordering::Equal
}

/// Result of a weighted-homogeneity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    /// All terms share the given weighted degree.
    Homogeneous(u64),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn is_homogeneous(&self) -> bool {
        !matches!(self, Homogeneity::Inhomogeneous)
    }
}

/// A sparse polynomial with exact rational coefficients. Terms are stored
/// in strictly descending canonical order with no zero coefficients.
#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, Rat)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.num_vars()), c)],
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, Rat::one())
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(i, ring.num_vars()), Rat::one())],
        }
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(m, c)],
        }
    }

    /// Build from an arbitrary term list: sorts, merges, drops zeros.
    pub fn from_terms(ring: &RingRef, mut terms: Vec<(Monomial, Rat)>) -> Self {
        terms.sort_by(|a, b| cmp_monomials(ring, &b.0, &a.0));
        let mut out: Vec<(Monomial, Rat)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 += c;
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), c1 * c2));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u64) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn is_weighted_homogeneous(&self) -> Homogeneity {
        let mut it = self.terms.iter();
        let first = match it.next() {
            None => return Homogeneity::Zero,
            Some((m, _)) => m.weighted_degree(&self.ring),
        };
        for (m, _) in it {
            if m.weighted_degree(&self.ring) != first {
                return Homogeneity::Inhomogeneous;
            }
        }
        Homogeneity::Homogeneous(first)
    }

    /// Maximum weighted degree of a term (zero polynomial reports 0).
    pub fn weighted_degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|(m, _)| m.weighted_degree(&self.ring))
            .max()
            .unwrap_or(0)
    }

    /// Sum of the terms with total exponent 1.
    pub fn linear_part(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == 1)
                .cloned()
                .collect(),
        }
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms
            .iter()
            .find(|(tm, _)| tm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            terms.push((Monomial::from_exps(exps), c * rat(e as i64)));
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Transport to a ring containing this ring's variables (by name),
    /// with matching weights.
    pub fn map_to_ring(&self, target: &RingRef) -> Result<Polynomial> {
        let mut index = Vec::with_capacity(self.ring.num_vars());
        for i in 0..self.ring.num_vars() {
            let name = self.ring.var_name(i);
            let j = target
                .var_index(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            if target.weight(j) != self.ring.weight(i) {
                return Err(Error::InvalidRing(format!(
                    "weight mismatch for variable `{name}`"
                )));
            }
            index.push(j);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u64; target.num_vars()];
                for (i, &e) in m.exps().iter().enumerate() {
                    exps[index[i]] = e;
                }
                (Monomial::from_exps(exps), c.clone())
            })
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rat::zero();
            let abs = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || m.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            let mut first_var = !show_coeff;
            for i in 0..self.ring.num_vars() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                write!(f, "{}", self.ring.var_name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// A weighted ring together with a list of weighted-homogeneous relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    ring: RingRef,
    relations: Vec<Polynomial>,
}

impl Presentation {
    pub fn new(ring: RingRef, relations: Vec<Polynomial>) -> Result<Self> {
        for (i, r) in relations.iter().enumerate() {
            if !same_ring(r.ring(), &ring) {
                return Err(Error::RingMismatch);
            }
            match r.is_weighted_homogeneous() {
                Homogeneity::Homogeneous(d) if d > 0 => {}
                _ => {
                    return Err(Error::InvalidPresentation(format!(
                        "relation {} is not weighted-homogeneous of positive weight",
                        i + 1
                    )))
                }
            }
        }
        Ok(Presentation { ring, relations })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Weighted degrees |f_i| of the relations.
    pub fn relation_weights(&self) -> Vec<u64> {
        self.relations
            .iter()
            .map(|r| match r.is_weighted_homogeneous() {
                Homogeneity::Homogeneous(d) => d,
                _ => unreachable!("validated at construction"),
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Expression parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    ring: &'a RingRef,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            if e.sign() == num_bigint::Sign::Minus {
                return self.err("negative exponent");
            }
            let e: u64 = e
                .try_into()
                .map_err(|_| Error::Parse {
                    pos: self.pos,
                    msg: "exponent too large".into(),
                })?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.eat(b'/') {
                    let den = self.integer()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    Ok(Polynomial::constant(self.ring, Rat::new(num, den)))
                } else {
                    Ok(Polynomial::constant(self.ring, Rat::from_integer(num)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.text.len()
                    && (self.text[self.pos].is_ascii_alphanumeric()
                        || self.text[self.pos] == b'_'
                        || self.text[self.pos] == b'\'')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => Err(Error::UnknownVariable(name.to_string())),
                }
            }
            Some(c) => self.err(format!("unexpected character `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn integer(&mut self) -> Result<Int> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }
}

/// Parse an expression in the grammar `integers, rationals a/b, variables,
/// + - * ^, parentheses`; `^` binds tightest and unary minus is allowed.
pub fn parse(text: &str, ring: &RingRef) -> Result<Polynomial> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        ring,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return p.err("trailing input");
    }
    Ok(poly)
}
