//! The exterior algebra on the dual basis `e^1, e^2, ...` together with the
//! operators `D_1`, `D_{-1}`, the trivial-coefficient differential of `m0`,
//! and the closed forms `omega(e^{i_1} ^ ... ^ e^{i_q} ^ e^{i_q + 1})`.
//!
//! Sign convention: `d e^1 = d e^2 = 0` and `d e^i = e^1 ^ e^{i-1}` for
//! `i >= 3`, so that `d xi = e^1 ^ D_1 xi` for every `xi` free of `e^1`.
//! Every other sign in this module follows from that choice.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_scalar, Scalar};

/// A wedge monomial `e^{i_1} ^ ... ^ e^{i_q}` with `i_1 < ... < i_q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtMonomial(Vec<usize>);

impl ExtMonomial {
    /// The empty monomial (the unit of the algebra).
    pub fn unit() -> Self {
        ExtMonomial(Vec::new())
    }

    /// Sorts `indices` into canonical order. Returns the permutation sign
    /// and the monomial, or `None` when an index repeats.
    pub fn canonical(indices: &[usize]) -> Option<(bool, Self)> {
        let mut v = indices.to_vec();
        let mut odd = false;
        // insertion sort, counting transpositions
        for a in 1..v.len() {
            let mut b = a;
            while b > 0 && v[b - 1] > v[b] {
                v.swap(b - 1, b);
                odd = !odd;
                b -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((odd, ExtMonomial(v)))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    fn contains_e1(&self) -> bool {
        self.0.first() == Some(&1)
    }
}

/// A finite combination of wedge monomials with exact coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtForm(BTreeMap<ExtMonomial, Scalar>);

impl ExtForm {
    pub fn zero() -> Self {
        ExtForm(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::from_monomial(ExtMonomial::unit(), Scalar::one())
    }

    /// The generator `e^i`.
    pub fn generator(i: usize) -> Self {
        Self::wedge_of(&[i])
    }

    /// `e^{i_1} ^ ... ^ e^{i_q}` for indices in any order.
    pub fn wedge_of(indices: &[usize]) -> Self {
        let mut f = Self::zero();
        f.add_indices(indices, Scalar::one());
        f
    }

    pub fn from_monomial(m: ExtMonomial, c: Scalar) -> Self {
        let mut f = Self::zero();
        f.add_term(m, c);
        f
    }

    pub fn add_term(&mut self, m: ExtMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(m.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&m);
        }
    }

    /// Adds `c * e^{indices...}`, carrying the sorting sign.
    pub fn add_indices(&mut self, indices: &[usize], c: Scalar) {
        if let Some((odd, m)) = ExtMonomial::canonical(indices) {
            self.add_term(m, if odd { -c } else { c });
        }
    }

    pub fn add_form(&mut self, other: &ExtForm, factor: &Scalar) {
        for (m, c) in &other.0 {
            self.add_term(m.clone(), c * factor);
        }
    }

    pub fn plus(&self, other: &ExtForm) -> ExtForm {
        let mut f = self.clone();
        f.add_form(other, &Scalar::one());
        f
    }

    pub fn minus(&self, other: &ExtForm) -> ExtForm {
        let mut f = self.clone();
        f.add_form(other, &-Scalar::one());
        f
    }

    pub fn scaled(&self, factor: &Scalar) -> ExtForm {
        let mut f = ExtForm::zero();
        f.add_form(self, factor);
        f
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtMonomial, &Scalar)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coefficient of the monomial on `indices` (given in increasing order).
    pub fn coeff(&self, indices: &[usize]) -> Scalar {
        self.0
            .get(&ExtMonomial(indices.to_vec()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// The common weight of all monomials, if there is one.
    pub fn weight(&self) -> Option<usize> {
        let mut ws = self.0.keys().map(ExtMonomial::weight);
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    /// The common degree of all monomials, if there is one.
    pub fn degree(&self) -> Option<usize> {
        let mut ds = self.0.keys().map(ExtMonomial::degree);
        let first = ds.next()?;
        ds.all(|d| d == first).then_some(first)
    }

    fn contains_e1(&self) -> bool {
        self.0.keys().any(ExtMonomial::contains_e1)
    }

    pub fn wedge(&self, other: &ExtForm) -> ExtForm {
        let mut out = ExtForm::zero();
        for (a, ca) in &self.0 {
            for (b, cb) in &other.0 {
                if let Some((odd, m)) = merge(a, b) {
                    let c = ca * cb;
                    out.add_term(m, if odd { -c } else { c });
                }
            }
        }
        out
    }

    /// `D_1`: the degree-zero derivation with `e^2 -> 0`, `e^i -> e^{i-1}`.
    pub fn d1(&self) -> Result<ExtForm> {
        if self.contains_e1() {
            return Err(Error::ContainsE1("D_1"));
        }
        Ok(self.d1_unchecked())
    }

    fn d1_unchecked(&self) -> ExtForm {
        let mut out = ExtForm::zero();
        for (m, c) in &self.0 {
            let idx = m.indices();
            for p in 0..idx.len() {
                if idx[p] == 2 {
                    continue;
                }
                let lowered = idx[p] - 1;
                if p > 0 && idx[p - 1] == lowered {
                    continue;
                }
                let mut v = idx.to_vec();
                v[p] = lowered;
                out.add_term(ExtMonomial(v), c.clone());
            }
        }
        out
    }

    /// `D_{-1}`, the right inverse of `D_1`. On `xi ^ e^i` with `xi` supported
    /// below `i` it is `sum_l (-1)^l D_1^l(xi) ^ e^{i+1+l}`.
    pub fn dminus1(&self) -> Result<ExtForm> {
        if self.contains_e1() {
            return Err(Error::ContainsE1("D_-1"));
        }
        let mut out = ExtForm::zero();
        for (m, c) in &self.0 {
            let (&last, prefix) = m.indices().split_last().ok_or(Error::ConstantForm)?;
            let xi = ExtForm::from_monomial(ExtMonomial(prefix.to_vec()), c.clone());
            out.add_form(&alternating_tail(&xi, last + 1), &Scalar::one());
        }
        Ok(out)
    }

    /// The differential of `C*(m0, K)`: the anti-derivation with
    /// `d e^1 = d e^2 = 0` and `d e^i = e^1 ^ e^{i-1}`.
    pub fn d_trivial(&self) -> ExtForm {
        let mut out = ExtForm::zero();
        for (m, c) in &self.0 {
            let idx = m.indices();
            for p in 0..idx.len() {
                if idx[p] < 3 {
                    continue;
                }
                // (-1)^p e^{a_1} ^ .. ^ (e^1 ^ e^{a_p - 1}) ^ .. ^ e^{a_q}; moving e^1
                // to the front costs the same (-1)^p
                let mut v = Vec::with_capacity(idx.len() + 1);
                v.push(1);
                v.extend_from_slice(&idx[..p]);
                v.push(idx[p] - 1);
                v.extend_from_slice(&idx[p + 1..]);
                out.add_indices(&v, c.clone());
            }
        }
        out
    }
}

/// `sum_{l >= 0} (-1)^l D_1^l(xi) ^ e^{start + l}` for `xi` supported below
/// `start - 1`. The number of terms is `weight(xi) - min_weight(deg xi) + 1`,
/// after which `D_1^l` has pushed every index below 2.
fn alternating_tail(xi: &ExtForm, start: usize) -> ExtForm {
    let mut out = ExtForm::zero();
    let (max_weight, min_degree) = xi
        .terms()
        .fold((0, usize::MAX), |(w, d), (m, _)| (w.max(m.weight()), d.min(m.degree())));
    if xi.is_zero() {
        return out;
    }
    // smallest weight of a degree-d monomial in e^2, e^3, ...: 2 + 3 + ... + (d+1)
    let min_weight = min_degree * (min_degree + 3) / 2;
    let steps = max_weight.saturating_sub(min_weight);
    let mut current = xi.clone();
    for l in 0..=steps {
        if current.is_zero() {
            break;
        }
        let tail = ExtForm::generator(start + l);
        let sign = if l % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        out.add_form(&current.wedge(&tail), &sign);
        current = current.d1_unchecked();
    }
    debug_assert!(current.is_zero() || min_degree == 0);
    out
}

/// `omega(e^{i_1} ^ ... ^ e^{i_q} ^ e^{i_q + 1})` for `prefix = [i_1, ..., i_q]`,
/// `2 <= i_1 < ... < i_q`. The result is a closed `(q+1)`-form of weight
/// `i_1 + ... + i_{q-1} + 2 i_q + 1`.
pub fn omega(prefix: &[usize]) -> Result<ExtForm> {
    let valid = !prefix.is_empty() && prefix[0] >= 2 && prefix.windows(2).all(|w| w[0] < w[1]);
    if !valid {
        return Err(Error::BadIndices(prefix.to_vec()));
    }
    let xi = ExtForm::wedge_of(prefix);
    Ok(alternating_tail(&xi, prefix[prefix.len() - 1] + 1))
}

/// Merges two sorted monomials; `(odd, product)` or `None` on a repeat.
fn merge(a: &ExtMonomial, b: &ExtMonomial) -> Option<(bool, ExtMonomial)> {
    let (x, y) = (a.indices(), b.indices());
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => {
                out.push(x[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                // y[j] jumps over the remaining x's
                inversions += x.len() - i;
                out.push(y[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    Some((inversions % 2 == 1, ExtMonomial(out)))
}

impl fmt::Display for ExtForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms().enumerate() {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() || m.degree() == 0 {
                write!(f, "{}", format_scalar(&abs))?;
            }
            let parts: Vec<String> = m.indices().iter().map(|i| format!("e^{i}")).collect();
            write!(f, "{}", parts.join("^"))?;
        }
        Ok(())
    }
}
