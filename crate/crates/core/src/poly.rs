//! Multivariate polynomials over F_p in canonical form.
//!
//! Terms are kept strictly descending in the ring's term order with no zero
//! coefficients, so structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{usage, Result};
use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::order::TermOrder;

/// The ambient polynomial ring S = F_p[x_1..x_v] with its term order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    pub field: PrimeField,
    pub vars: Vec<String>,
    pub order: TermOrder,
}

impl PolyRing {
    pub fn new(field: PrimeField, vars: Vec<String>, order: TermOrder) -> Self {
        PolyRing { field, vars, order }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(&self, c: u64) -> Polynomial {
        let c = c % self.field.modulus();
        if c == 0 {
            self.zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(self.nvars()), c)],
            }
        }
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial {
            terms: vec![(Monomial::var(i, self.nvars()), 1)],
        }
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        Polynomial { terms: vec![(m, 1)] }
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs,
    /// sorting, merging and dropping zeros.
    pub fn from_terms(&self, terms: Vec<(Monomial, u64)>) -> Polynomial {
        let mut terms: Vec<(Monomial, u64)> = terms
            .into_iter()
            .map(|(m, c)| (m, c % self.field.modulus()))
            .collect();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u64)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = self.field.add(last.1, c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| *c != 0);
        Polynomial { terms: out }
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        // Merge of two descending term lists.
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < f.terms.len() && j < g.terms.len() {
            match self.order.cmp(&f.terms[i].0, &g.terms[j].0) {
                Ordering::Greater => {
                    out.push(f.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(g.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.field.add(f.terms[i].1, g.terms[j].1);
                    if c != 0 {
                        out.push((f.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f.terms[i..]);
        out.extend_from_slice(&g.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(*c)))
                .collect(),
        }
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.add(f, &self.neg(g))
    }

    pub fn scale(&self, f: &Polynomial, c: u64) -> Polynomial {
        let c = c % self.field.modulus();
        if c == 0 {
            return self.zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), self.field.mul(*k, c)))
                .collect(),
        }
    }

    /// Multiplies by the single term `c * m`; preserves term ordering.
    pub fn mul_term(&self, f: &Polynomial, m: &Monomial, c: u64) -> Polynomial {
        let c = c % self.field.modulus();
        if c == 0 {
            return self.zero();
        }
        Polynomial {
            terms: f
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), self.field.mul(*k, c)))
                .collect(),
        }
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut acc = self.zero();
        for (m, c) in &g.terms {
            acc = self.add(&acc, &self.mul_term(f, m, *c));
        }
        acc
    }

    /// Parses `+`/`-`/`*`/`^` expressions over the ring variables and integer
    /// literals. Intended for fixtures and tests; the CLI has its own parser.
    pub fn parse(&self, src: &str) -> Result<Polynomial> {
        parse::parse_poly(self, src)
    }

    pub fn fmt_poly(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in f.terms.iter().enumerate() {
            if idx > 0 {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 1 {
                    factors.push(self.vars[i].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.vars[i], e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// A polynomial in canonical form: descending terms, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, u64)>,
}

impl Polynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn lead(&self) -> Option<(&Monomial, u64)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    /// Total degree (of the lead term; equals max over terms).
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// The common degree of all terms, or `None` for 0 or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms
            .iter()
            .all(|(m, _)| m.degree() == d)
            .then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.is_empty() || self.homogeneous_degree().is_some()
    }

    pub fn constant_term(&self) -> u64 {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

mod parse {
    use super::*;

    struct P<'a> {
        ring: &'a PolyRing,
        src: &'a [u8],
        pos: usize,
    }

    pub fn parse_poly(ring: &PolyRing, src: &str) -> Result<Polynomial> {
        let mut p = P {
            ring,
            src: src.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(usage(format!(
                "unexpected input at byte {} of polynomial {src:?}",
                p.pos
            )));
        }
        Ok(out)
    }

    impl<'a> P<'a> {
        fn skip_ws(&mut self) {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.src.get(self.pos).copied()
        }

        fn expr(&mut self) -> Result<Polynomial> {
            let mut neg = false;
            if let Some(c) = self.peek() {
                if c == b'-' {
                    self.pos += 1;
                    neg = true;
                } else if c == b'+' {
                    self.pos += 1;
                }
            }
            let mut acc = self.term()?;
            if neg {
                acc = self.ring.neg(&acc);
            }
            while let Some(c) = self.peek() {
                match c {
                    b'+' => {
                        self.pos += 1;
                        let t = self.term()?;
                        acc = self.ring.add(&acc, &t);
                    }
                    b'-' => {
                        self.pos += 1;
                        let t = self.term()?;
                        acc = self.ring.sub(&acc, &t);
                    }
                    _ => break,
                }
            }
            Ok(acc)
        }

        fn term(&mut self) -> Result<Polynomial> {
            let mut acc = self.factor()?;
            while let Some(c) = self.peek() {
                if c == b'*' {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.ring.mul(&acc, &f);
                } else if c == b'(' || c.is_ascii_alphabetic() || c == b'_' {
                    // implicit multiplication: "2x", "x y"
                    let f = self.factor()?;
                    acc = self.ring.mul(&acc, &f);
                } else {
                    break;
                }
            }
            Ok(acc)
        }

        fn factor(&mut self) -> Result<Polynomial> {
            let base = self.atom()?;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let e = self.integer()?;
                let mut acc = self.ring.one();
                for _ in 0..e {
                    acc = self.ring.mul(&acc, &base);
                }
                return Ok(acc);
            }
            Ok(base)
        }

        fn atom(&mut self) -> Result<Polynomial> {
            match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.expr()?;
                    if self.peek() != Some(b')') {
                        return Err(usage("expected ')' in polynomial"));
                    }
                    self.pos += 1;
                    Ok(inner)
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.integer()?;
                    Ok(self.ring.constant(n))
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric()
                            || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    match self.ring.vars.iter().position(|v| v == name) {
                        Some(i) => Ok(self.ring.var(i)),
                        None => Err(usage(format!("unknown variable `{name}`"))),
                    }
                }
                other => Err(usage(format!(
                    "unexpected {:?} in polynomial",
                    other.map(|b| b as char)
                ))),
            }
        }

        fn integer(&mut self) -> Result<u64> {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(usage("expected integer"));
            }
            std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| usage("integer literal out of range"))
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Variable names are not known here; used for debugging only.
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{:?}", m.exps())?;
        }
        Ok(())
    }
}
