//! The quadratic polynomials `F_{j,q,r}`, the linear corrections `G_{j,q,r}`
//! and the equation systems cutting out the filiform varieties.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{binomial, partitions_exact};
use crate::error::{Error, Result};
use crate::poly::{DeformPolynomial, DeformVariable, Monomial};

/// Index `(j, q, r)` of an equation, `2 <= j < q`, `r >= -1`. Sorted by total
/// weight `j + 2q + 1 + r`, then `j`, then `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Label {
    pub j: usize,
    pub q: usize,
    pub r: i64,
}

impl Label {
    pub fn new(j: usize, q: usize, r: i64) -> Self {
        Label { j, q, r }
    }

    /// Index of the basis vector the equation is read from.
    pub fn total(&self) -> i64 {
        (self.j + 2 * self.q + 1) as i64 + self.r
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.total(), self.j, self.q).cmp(&(other.total(), other.j, other.q))
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.j, self.q, self.r)
    }
}

/// How the top marker `x` enters an even-dimensional system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum XMode {
    #[serde(rename = "0")]
    Fixed0,
    #[serde(rename = "1")]
    Fixed1,
    #[serde(rename = "free")]
    Free,
}

impl FromStr for XMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" => Ok(XMode::Fixed0),
            "1" => Ok(XMode::Fixed1),
            "free" => Ok(XMode::Free),
            _ => Err(Error::Parse(format!("x mode must be 0, 1 or free, got `{s}`"))),
        }
    }
}

impl fmt::Display for XMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            XMode::Fixed0 => "0",
            XMode::Fixed1 => "1",
            XMode::Free => "free",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemKind {
    /// `M_Fil(n)`.
    Finite { n: usize },
    /// The infinite system cut at `j + 2q + 1 + r <= total_max`.
    Truncated { total_max: usize },
}

impl SystemKind {
    pub fn bound(self) -> usize {
        match self {
            SystemKind::Finite { n } => n,
            SystemKind::Truncated { total_max } => total_max,
        }
    }
}

/// Which formula produced an equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquationForm {
    /// `F_{j,q,r}`.
    Plain,
    /// `F_{j,q,r} + (-1)^{k-j-q} x G_{j,q,r}`.
    Corrected,
    /// `(-1)^{k-j-q} x G_{j,q,-1}`.
    TopOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub label: Label,
    pub form: EquationForm,
    pub poly: DeformPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSystem {
    pub kind: SystemKind,
    pub x_mode: XMode,
    pub variables: Vec<DeformVariable>,
    pub equations: Vec<Equation>,
}

impl EquationSystem {
    pub fn get(&self, label: Label) -> Option<&Equation> {
        self.equations.iter().find(|e| e.label == label)
    }

    pub fn labels(&self) -> Vec<Label> {
        self.equations.iter().map(|e| e.label).collect()
    }
}

fn x(l: i64, t: i64) -> DeformVariable {
    DeformVariable::pair(l as usize, t as usize)
}

fn quadratic(p: &mut DeformPolynomial, c: BigInt, a: DeformVariable, b: DeformVariable) {
    p.add_term(Monomial::new(vec![a, b]), c);
}

fn signed(e: i64, c: BigInt) -> BigInt {
    if e.rem_euclid(2) == 0 {
        c
    } else {
        -c
    }
}

fn check_label(j: usize, q: usize, r: i64, min_r: i64) -> Result<()> {
    if j < 2 || j >= q || r < min_r {
        return Err(Error::Range(format!(
            "label ({j},{q},{r}) needs 2 <= j < q and r >= {min_r}"
        )));
    }
    Ok(())
}

/// `F_{j,q,r}`, summed over the three triple sums with the printed limits.
pub fn f_poly(j: usize, q: usize, r: i64) -> Result<DeformPolynomial> {
    check_label(j, q, r, 0)?;
    let (j, q) = (j as i64, q as i64);
    let mut p = DeformPolynomial::zero();
    for t in 0..=r {
        let m_top = q + (j + t).div_euclid(2);
        for l in j..=(j + q - 1).div_euclid(2) {
            for m in q + 1..=m_top {
                let c = binomial(q - l - 1, l - j) * binomial(j + q - m + t - 1, m - q - 1);
                quadratic(&mut p, signed(l - j + m - q, c), x(l, t), x(m, r - t));
            }
        }
        for l in j..=(j + q).div_euclid(2) {
            for m in q..=m_top {
                let c = binomial(q - l, l - j) * binomial(j + q - m + t, m - q);
                quadratic(&mut p, signed(l - j + m - q, c), x(l, t), x(m, r - t));
            }
        }
        for m in j..=m_top {
            let c = binomial(2 * q - m + t, m - j);
            quadratic(&mut p, signed(m - j + 1, c), x(q, t), x(m, r - t));
        }
    }
    Ok(p)
}

/// `G_{j,q,r}`, linear in the weight-`(r+1)` variables.
pub fn g_poly(j: usize, q: usize, r: i64) -> Result<DeformPolynomial> {
    check_label(j, q, r, -1)?;
    let (j, q) = (j as i64, q as i64);
    let s = r + 1;
    let mut p = DeformPolynomial::zero();
    let mut linear = |c: BigInt, l: i64| p.add_term(Monomial::new(vec![x(l, s)]), c);
    for l in j..=(j + q - 1).div_euclid(2) {
        linear(signed(l, binomial(q - l - 1, l - j)), l);
    }
    for l in j..=(j + q).div_euclid(2) {
        linear(signed(l, binomial(q - l, l - j)), l);
    }
    linear(signed(q + 1, BigInt::one()), q);
    Ok(p)
}

/// Labels with `r >= 0` and `j + 2q + 1 + r <= total_max`, in canonical order.
pub fn labels_up_to(total_max: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for j in 2..total_max {
        for q in j + 1..total_max {
            let base = j + 2 * q + 1;
            if base > total_max {
                break;
            }
            for r in 0..=(total_max - base) {
                out.push(Label::new(j, q, r as i64));
            }
        }
    }
    out.sort();
    out
}

/// `{x_{j,s} : 2j + 1 + s <= n}` in canonical order.
pub fn variable_inventory(n: usize) -> Vec<DeformVariable> {
    let mut out = Vec::new();
    for j in 2..n {
        if 2 * j + 1 > n {
            break;
        }
        for s in 0..=(n - 2 * j - 1) {
            out.push(DeformVariable::pair(j, s));
        }
    }
    out.sort();
    out
}

fn top_poly() -> DeformPolynomial {
    DeformPolynomial::var(DeformVariable::Top)
}

/// The defining system of `M_Fil(n)`.
/// Labels of `M_Fil(n)`: every total up to `n`, plus the `r = -1` labels of
/// total `n` when `n` is even.
pub fn finite_labels(n: usize) -> Vec<Label> {
    let mut labels = labels_up_to(n);
    if n % 2 == 0 {
        let k = n / 2;
        for j in 2..k {
            for q in j + 1..k {
                if j + 2 * q == n {
                    labels.push(Label::new(j, q, -1));
                }
            }
        }
        labels.sort();
    }
    labels
}

pub fn system_finite(n: usize, x_mode: XMode) -> Result<EquationSystem> {
    if n < 9 {
        return Err(Error::DimensionTooSmall(n));
    }
    let even = n % 2 == 0;
    let equations = finite_labels(n)
        .into_par_iter()
        .map(|label| -> Result<Equation> {
            let Label { j, q, r } = label;
            let k = (n / 2) as i64;
            let twist = signed(k - j as i64 - q as i64, BigInt::one());
            let (form, poly) = if !even || label.total() < n as i64 {
                (EquationForm::Plain, f_poly(j, q, r)?)
            } else if r >= 0 {
                let g = g_poly(j, q, r)?.times(&top_poly()).scaled(&twist);
                (EquationForm::Corrected, f_poly(j, q, r)?.plus(&g))
            } else {
                (EquationForm::TopOnly, g_poly(j, q, r)?.times(&top_poly()).scaled(&twist))
            };
            let poly = match x_mode {
                XMode::Free => poly,
                XMode::Fixed0 => poly.substitute_top(&BigInt::zero()),
                XMode::Fixed1 => poly.substitute_top(&BigInt::one()),
            };
            Ok(Equation { label, form, poly })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut variables = variable_inventory(n);
    if even && x_mode == XMode::Free {
        variables.push(DeformVariable::Top);
    }
    Ok(EquationSystem {
        kind: SystemKind::Finite { n },
        x_mode,
        variables,
        equations,
    })
}

/// All `F_{j,q,r}` with `j + 2q + 1 + r <= total_max`.
pub fn system_truncated(total_max: usize) -> Result<EquationSystem> {
    if total_max < 9 {
        return Err(Error::DimensionTooSmall(total_max));
    }
    let equations = labels_up_to(total_max)
        .into_par_iter()
        .map(|label| {
            f_poly(label.j, label.q, label.r).map(|poly| Equation {
                label,
                form: EquationForm::Plain,
                poly,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EquationSystem {
        kind: SystemKind::Truncated { total_max },
        x_mode: XMode::Fixed0,
        variables: variable_inventory(total_max),
        equations,
    })
}

/// Counts for `M_Fil(n)`, each from closed forms and from enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimsReport {
    pub n: usize,
    pub num_vars: usize,
    pub num_vars_enumerated: usize,
    pub num_vars_partition_sum: u64,
    pub num_eqs: u64,
    pub num_eqs_enumerated: usize,
    /// Number of `x_{j,s}` per weight `s` (`-1` is the top marker).
    pub h2_by_weight: BTreeMap<i64, usize>,
    /// Number of equations per weight `r`.
    pub h3_by_weight: BTreeMap<i64, usize>,
}

impl DimsReport {
    pub fn consistent(&self) -> bool {
        self.num_vars == self.num_vars_enumerated
            && self.num_vars as u64 == self.num_vars_partition_sum
            && self.num_eqs == self.num_eqs_enumerated as u64
    }
}

pub fn dims_report(n: usize) -> Result<DimsReport> {
    if n < 9 {
        return Err(Error::DimensionTooSmall(n));
    }
    let num_vars = if n % 2 == 1 { (n - 3) * (n - 3) / 4 } else { (n - 2) * (n - 4) / 4 };
    let p3_sum = |hi: i64| (3..=hi).map(|r| partitions_exact(3, r)).sum::<u64>();
    let num_eqs = if n % 2 == 1 {
        p3_sum(n as i64 - 6)
    } else {
        p3_sum(n as i64 - 7) + partitions_exact(3, n as i64 - 5)
    };
    let num_vars_partition_sum = (2..=(n as i64 - 3)).map(|r| partitions_exact(2, r)).sum();
    let mut variables = variable_inventory(n);
    if n % 2 == 0 {
        variables.push(DeformVariable::Top);
    }
    let labels = finite_labels(n);
    let mut h2_by_weight = BTreeMap::new();
    for v in &variables {
        *h2_by_weight.entry(v.weight()).or_insert(0) += 1;
    }
    let mut h3_by_weight = BTreeMap::new();
    for l in &labels {
        *h3_by_weight.entry(l.r).or_insert(0) += 1;
    }
    Ok(DimsReport {
        n,
        num_vars,
        num_vars_enumerated: variables.iter().filter(|v| v.weight() >= 0).count(),
        num_vars_partition_sum,
        num_eqs,
        num_eqs_enumerated: labels.len(),
        h2_by_weight,
        h3_by_weight,
    })
}
