//! Sparse structure constants of graded Lie algebras over the rationals.
//!
//! Basis vectors are 1-based (`e_1, e_2, ...`). Only brackets `[e_i, e_j]`
//! with `i < j` are stored; the opposite order is read off by negation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{format_scalar, Scalar};

/// A value together with a flag recording whether terms beyond an evaluation
/// cutoff were dropped while computing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncated<T> {
    pub value: T,
    pub truncated: bool,
}

impl<T> Truncated<T> {
    pub fn exact(value: T) -> Self {
        Truncated {
            value,
            truncated: false,
        }
    }
}

/// A finite linear combination of basis vectors with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LieElement(BTreeMap<usize, Scalar>);

impl LieElement {
    pub fn zero() -> Self {
        LieElement(BTreeMap::new())
    }

    pub fn basis(index: usize) -> Self {
        Self::term(index, Scalar::one())
    }

    pub fn term(index: usize, coeff: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(index, coeff);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Scalar)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn add_term(&mut self, index: usize, coeff: Scalar) {
        assert!(index >= 1, "basis indices start at 1");
        if coeff.is_zero() {
            return;
        }
        let slot = self.0.entry(index).or_insert_with(Scalar::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.0.remove(&index);
        }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, other: &LieElement, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (&i, c) in &other.0 {
            self.add_term(i, c * factor);
        }
    }

    pub fn coeff(&self, index: usize) -> Scalar {
        self.0.get(&index).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    pub fn scaled(&self, factor: &Scalar) -> LieElement {
        let mut out = LieElement::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn neg(&self) -> LieElement {
        self.scaled(&-Scalar::one())
    }

    pub fn plus(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn minus(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs.is_one() {
                write!(f, "e_{i}")?;
            } else {
                write!(f, "{}e_{i}", format_scalar(&abs))?;
            }
        }
        Ok(())
    }
}

/// How the dimension bound of a structure is to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extent {
    /// A genuinely finite-dimensional algebra on `e_1..e_n`.
    Finite(usize),
    /// An infinite algebra probed only up to `e_n`; terms beyond are dropped
    /// and the drop is reported.
    Cutoff(usize),
}

impl Extent {
    pub fn bound(self) -> usize {
        match self {
            Extent::Finite(n) | Extent::Cutoff(n) => n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieStructure {
    name: String,
    extent: Extent,
    basis: BTreeSet<usize>,
    table: BTreeMap<(usize, usize), LieElement>,
    dropped: BTreeSet<(usize, usize)>,
}

impl LieStructure {
    /// An abelian structure on `basis`; relations are added with
    /// [`LieStructure::set_bracket`].
    pub fn new(name: impl Into<String>, extent: Extent, basis: impl IntoIterator<Item = usize>) -> Self {
        let n = extent.bound();
        let basis: BTreeSet<usize> = basis.into_iter().filter(|&i| i >= 1 && i <= n).collect();
        LieStructure {
            name: name.into(),
            extent,
            basis,
            table: BTreeMap::new(),
            dropped: BTreeSet::new(),
        }
    }

    /// Structure on the full basis `e_1..e_n`.
    pub fn with_dimension(name: impl Into<String>, extent: Extent) -> Self {
        let n = extent.bound();
        Self::new(name, extent, 1..=n)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn extent(&self) -> Extent {
        self.extent
    }

    pub fn bound(&self) -> usize {
        self.extent.bound()
    }

    pub fn basis(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis.iter().copied()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.basis.contains(&index)
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if self.contains(index) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                structure: self.name.clone(),
            })
        }
    }

    /// Sets `[e_i, e_j] = value`. Terms with index above the bound are
    /// dropped (and remembered for cutoff structures).
    pub fn set_bracket(&mut self, i: usize, j: usize, value: LieElement) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::Range(format!("[e_{i}, e_{i}] is always zero")));
        }
        let (key, value) = if i < j { ((i, j), value) } else { ((j, i), value.neg()) };
        let n = self.bound();
        let mut kept = LieElement::zero();
        let mut dropped = false;
        for (t, c) in value.iter() {
            if t <= n {
                self.check_index(t)?;
                kept.add_term(t, c.clone());
            } else {
                dropped = true;
            }
        }
        if dropped && matches!(self.extent, Extent::Cutoff(_)) {
            self.dropped.insert(key);
        } else {
            self.dropped.remove(&key);
        }
        if kept.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, kept);
        }
        Ok(())
    }

    /// Stored relations `(i, j, [e_i, e_j])` with `i < j`, in index order.
    pub fn relations(&self) -> impl Iterator<Item = (usize, usize, &LieElement)> {
        self.table.iter().map(|(&(i, j), v)| (i, j, v))
    }

    /// `[e_i, e_j]` on basis vectors.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Result<Truncated<LieElement>> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.bracket_basis_unchecked(i, j))
    }

    fn bracket_basis_unchecked(&self, i: usize, j: usize) -> Truncated<LieElement> {
        use std::cmp::Ordering::*;
        let (key, negate) = match i.cmp(&j) {
            Equal => return Truncated::exact(LieElement::zero()),
            Less => ((i, j), false),
            Greater => ((j, i), true),
        };
        let truncated = self.dropped.contains(&key);
        let value = match self.table.get(&key) {
            None => LieElement::zero(),
            Some(v) if negate => v.neg(),
            Some(v) => v.clone(),
        };
        Truncated { value, truncated }
    }

    /// Bilinear extension of the stored table.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<Truncated<LieElement>> {
        for (i, _) in a.iter().chain(b.iter()) {
            self.check_index(i)?;
        }
        let mut value = LieElement::zero();
        let mut truncated = false;
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                let r = self.bracket_basis_unchecked(i, j);
                truncated |= r.truncated;
                value.add_scaled(&r.value, &(ca * cb));
            }
        }
        Ok(Truncated { value, truncated })
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    pub fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> Result<LieElement> {
        let e = |t: usize| LieElement::basis(t);
        let mut total = LieElement::zero();
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            let inner = self.bracket(&e(x), &e(y))?.value;
            total = total.plus(&self.bracket(&inner, &e(z))?.value);
        }
        Ok(total)
    }

    /// Every increasing basis triple with a nonzero Jacobi defect. An empty
    /// result certifies a Lie algebra at this truncation.
    pub fn jacobi_scan(&self) -> Vec<([usize; 3], LieElement)> {
        let basis: Vec<usize> = self.basis().collect();
        let mut triples = Vec::new();
        for (a, &i) in basis.iter().enumerate() {
            for (b, &j) in basis.iter().enumerate().skip(a + 1) {
                for &k in &basis[b + 1..] {
                    triples.push([i, j, k]);
                }
            }
        }
        triples
            .into_par_iter()
            .filter_map(|t| {
                let d = self
                    .jacobi_defect(t[0], t[1], t[2])
                    .expect("triple drawn from the basis");
                (!d.is_zero()).then_some((t, d))
            })
            .collect()
    }
}
