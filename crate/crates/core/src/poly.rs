//! Integer polynomials in the deformation coordinates `x_{j,s}` and the
//! even-dimension marker `x`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{from_bigint, Scalar};

/// `x_{j,s}` (coordinate of `Psi_{j,s}`) or the top marker `x`
/// (coordinate of `Psi_{k,-1}`). Orders by `(j, s)` with `Top` last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeformVariable {
    Pair { j: usize, s: usize },
    Top,
}

impl DeformVariable {
    pub fn pair(j: usize, s: usize) -> Self {
        DeformVariable::Pair { j, s }
    }

    /// Weight of the cocycle the variable multiplies.
    pub fn weight(self) -> i64 {
        match self {
            DeformVariable::Pair { s, .. } => s as i64,
            DeformVariable::Top => -1,
        }
    }

    fn cas_name(self) -> String {
        match self {
            DeformVariable::Pair { j, s } => format!("x_{j}_{s}"),
            DeformVariable::Top => "x".into(),
        }
    }
}

impl fmt::Display for DeformVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeformVariable::Pair { j, s } => write!(f, "x_{{{j},{s}}}"),
            DeformVariable::Top => write!(f, "x"),
        }
    }
}

/// A monomial as a sorted multiset of variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<DeformVariable>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut vars: Vec<DeformVariable>) -> Self {
        vars.sort();
        Monomial(vars)
    }

    pub fn vars(&self) -> &[DeformVariable] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(|v| v.weight()).sum()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Monomial::new(v)
    }

    /// `(variable, power)` pairs in canonical order.
    pub fn powers(&self) -> Vec<(DeformVariable, usize)> {
        let mut out: Vec<(DeformVariable, usize)> = Vec::new();
        for &v in &self.0 {
            match out.last_mut() {
                Some((last, p)) if *last == v => *p += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }

    fn render(&self, cas: bool) -> String {
        let parts: Vec<String> = self
            .powers()
            .into_iter()
            .map(|(v, p)| {
                let name = if cas { v.cas_name() } else { v.to_string() };
                if p == 1 {
                    name
                } else {
                    format!("{name}^{p}")
                }
            })
            .collect();
        parts.join(if cas { "*" } else { "" })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DeformPolynomial(BTreeMap<Monomial, BigInt>);

impl DeformPolynomial {
    pub fn zero() -> Self {
        DeformPolynomial(BTreeMap::new())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c.into());
        p
    }

    pub fn var(v: DeformVariable) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::new(vec![v]), BigInt::one());
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(m.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.0.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.0.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn plus(&self, other: &DeformPolynomial) -> DeformPolynomial {
        let mut p = self.clone();
        for (m, c) in &other.0 {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn minus(&self, other: &DeformPolynomial) -> DeformPolynomial {
        self.plus(&other.neg())
    }

    pub fn neg(&self) -> DeformPolynomial {
        self.scaled(&-BigInt::one())
    }

    pub fn scaled(&self, c: &BigInt) -> DeformPolynomial {
        let mut p = Self::zero();
        for (m, d) in &self.0 {
            p.add_term(m.clone(), c * d);
        }
        p
    }

    pub fn times(&self, other: &DeformPolynomial) -> DeformPolynomial {
        let mut p = Self::zero();
        for (a, ca) in &self.0 {
            for (b, cb) in &other.0 {
                p.add_term(a.times(b), ca * cb);
            }
        }
        p
    }

    /// Evaluates with `value(v)` for each variable.
    pub fn evaluate<F: Fn(DeformVariable) -> Scalar>(&self, value: F) -> Scalar {
        let mut total = Scalar::zero();
        for (m, c) in &self.0 {
            let mut t = from_bigint(c.clone());
            for &v in m.vars() {
                t *= value(v);
                if t.is_zero() {
                    break;
                }
            }
            total += t;
        }
        total
    }

    /// Substitutes an integer for the top marker `x`.
    pub fn substitute_top(&self, value: &BigInt) -> DeformPolynomial {
        let mut p = Self::zero();
        for (m, c) in &self.0 {
            let top = m.vars().iter().filter(|&&v| v == DeformVariable::Top).count();
            let rest: Vec<_> = m.vars().iter().copied().filter(|&v| v != DeformVariable::Top).collect();
            p.add_term(Monomial::new(rest), c * num_traits::pow(value.clone(), top));
        }
        p
    }

    /// Sets every variable outside `keep` to zero.
    pub fn restrict<F: Fn(DeformVariable) -> bool>(&self, keep: F) -> DeformPolynomial {
        let mut p = Self::zero();
        for (m, c) in &self.0 {
            if m.vars().iter().all(|&v| keep(v)) {
                p.add_term(m.clone(), c.clone());
            }
        }
        p
    }

    pub fn variables(&self) -> BTreeSet<DeformVariable> {
        self.0.keys().flat_map(|m| m.vars().iter().copied()).collect()
    }

    /// Every monomial has this degree and weight.
    pub fn is_bihomogeneous(&self, degree: usize, weight: i64) -> bool {
        self.0.keys().all(|m| m.degree() == degree && m.weight() == weight)
    }

    /// Splits by `(degree, weight)`. Under `x_{j,s} -> beta alpha^s x_{j,s}` the
    /// part at `(d, w)` picks up exactly `beta^d alpha^w`.
    pub fn scaling_expansion(&self) -> BTreeMap<(usize, i64), DeformPolynomial> {
        let mut out: BTreeMap<(usize, i64), DeformPolynomial> = BTreeMap::new();
        for (m, c) in &self.0 {
            out.entry((m.degree(), m.weight()))
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// `true` if `self = other` or `self = -other`.
    pub fn equal_up_to_sign(&self, other: &DeformPolynomial) -> bool {
        self == other || *self == other.neg()
    }

    /// Single-line form for computer algebra systems: `3*x_3_0^2-x_3_0*x_4_0`.
    pub fn to_cas(&self) -> String {
        self.render(true)
    }

    fn render(&self, cas: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (m, c)) in self.0.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (n, neg, cas) {
                (0, true, _) => out.push('-'),
                (0, false, _) => {}
                (_, true, true) => out.push('-'),
                (_, false, true) => out.push('+'),
                (_, true, false) => out.push_str(" - "),
                (_, false, false) => out.push_str(" + "),
            }
            let body = m.render(cas);
            if body.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&body);
            } else if cas {
                out.push_str(&format!("{abs}*{body}"));
            } else {
                out.push_str(&format!("{abs}{body}"));
            }
        }
        out
    }
}

impl fmt::Display for DeformPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

impl FromStr for DeformPolynomial {
    type Err = Error;

    /// Accepts both renderings plus parentheses and juxtaposition, e.g.
    /// `x_{2,2}(2x_{5,1} - 4x_{4,1}) - x^2_{3,0}` or `2*x_2_0*x_4_0`.
    fn from_str(text: &str) -> Result<Self> {
        let cleaned: Vec<char> = text
            .chars()
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .filter(|c| !c.is_whitespace())
            .collect();
        let mut parser = Parser { s: &cleaned, pos: 0 };
        let p = parser.expr()?;
        if parser.pos != cleaned.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

struct Parser<'a> {
    s: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, msg: &str) -> Error {
        let rest: String = self.s[self.pos.min(self.s.len())..].iter().collect();
        Error::Parse(format!("{msg} at `{rest}`"))
    }

    fn expr(&mut self) -> Result<DeformPolynomial> {
        let mut total = DeformPolynomial::zero();
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                break;
            };
            first = false;
            let t = self.term()?;
            total = if negative { total.minus(&t) } else { total.plus(&t) };
            if self.peek().is_none() || self.peek() == Some(')') {
                break;
            }
        }
        Ok(total)
    }

    fn term(&mut self) -> Result<DeformPolynomial> {
        let mut acc = self.factor()?;
        loop {
            let juxtaposed = matches!(self.peek(), Some(c) if c == 'x' || c == '(' || c.is_ascii_digit());
            if self.eat('*') || juxtaposed {
                acc = acc.times(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<DeformPolynomial> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                inner
            }
            Some(c) if c.is_ascii_digit() => DeformPolynomial::constant(self.integer()?),
            Some('x') => {
                self.pos += 1;
                // `x^2_{3,0}` (power first) or `x_{3,0}^2`
                let early_power = if self.peek() == Some('^') && self.lookahead_power_then_index() {
                    self.pos += 1;
                    Some(self.small()?)
                } else {
                    None
                };
                let v = if self.eat('_') { self.indices()? } else { DeformVariable::Top };
                let p = DeformPolynomial::var(v);
                return match early_power {
                    Some(k) => Ok(power(&p, k)),
                    None => self.optional_power(p),
                };
            }
            _ => return Err(self.error("expected a coefficient, variable or `(`")),
        };
        self.optional_power(base)
    }

    fn lookahead_power_then_index(&self) -> bool {
        let mut i = self.pos + 1;
        while i < self.s.len() && self.s[i].is_ascii_digit() {
            i += 1;
        }
        i > self.pos + 1 && self.s.get(i) == Some(&'_')
    }

    fn optional_power(&mut self, base: DeformPolynomial) -> Result<DeformPolynomial> {
        if self.eat('^') {
            let k = self.small()?;
            Ok(power(&base, k))
        } else {
            Ok(base)
        }
    }

    fn indices(&mut self) -> Result<DeformVariable> {
        if self.eat('{') {
            let j = self.small()?;
            if !self.eat(',') {
                return Err(self.error("expected `,`"));
            }
            let s = self.small()?;
            if !self.eat('}') {
                return Err(self.error("expected `}`"));
            }
            Ok(DeformVariable::pair(j, s))
        } else {
            let j = self.small()?;
            if !self.eat('_') {
                return Err(self.error("expected `_`"));
            }
            let s = self.small()?;
            Ok(DeformVariable::pair(j, s))
        }
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(self.s[start..self.pos].iter().collect())
    }

    fn integer(&mut self) -> Result<BigInt> {
        let d = self.digits()?;
        d.parse().map_err(|_| self.error("bad integer"))
    }

    fn small(&mut self) -> Result<usize> {
        let d = self.digits()?;
        d.parse().map_err(|_| self.error("index too large"))
    }
}

fn power(p: &DeformPolynomial, k: usize) -> DeformPolynomial {
    let mut acc = DeformPolynomial::constant(1);
    for _ in 0..k {
        acc = acc.times(p);
    }
    acc
}
