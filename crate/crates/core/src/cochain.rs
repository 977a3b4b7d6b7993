//! Cochains of a graded Lie algebra with values in its adjoint module.
//!
//! A cochain is held as a rule on strictly increasing index tuples; the
//! alternating extension to arbitrary tuples (and multilinear extension to
//! arbitrary arguments) is applied here, never by the rule itself.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::exterior::{omega, ExtForm, ExtMonomial};
use crate::fixtures::{make_fixture, Fixture};
use crate::lie::{LieElement, LieStructure, Truncated};
use crate::scalar::{from_bigint, sign, Scalar};

/// Value rule on strictly increasing tuples.
pub type Rule = Arc<dyn Fn(&[usize]) -> Result<Truncated<LieElement>> + Send + Sync>;

/// Label `(j, q, r)` of the degree-3 basis cocycle `Psi_{j,q,r}`.
pub type Label3 = (usize, usize, i64);

#[derive(Clone)]
pub struct AdjointCochain {
    degree: usize,
    weight: Option<i64>,
    bound: usize,
    rule: Rule,
}

impl fmt::Debug for AdjointCochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdjointCochain")
            .field("degree", &self.degree)
            .field("weight", &self.weight)
            .field("bound", &self.bound)
            .finish_non_exhaustive()
    }
}

impl AdjointCochain {
    pub fn from_rule<F>(degree: usize, weight: Option<i64>, bound: usize, rule: F) -> Self
    where
        F: Fn(&[usize]) -> Result<Truncated<LieElement>> + Send + Sync + 'static,
    {
        AdjointCochain {
            degree,
            weight,
            bound,
            rule: Arc::new(rule),
        }
    }

    /// A cochain given by its values on increasing tuples; absent tuples are zero.
    pub fn from_table(
        degree: usize,
        weight: Option<i64>,
        bound: usize,
        table: HashMap<Vec<usize>, Truncated<LieElement>>,
    ) -> Self {
        Self::from_rule(degree, weight, bound, move |t| {
            Ok(table
                .get(t)
                .cloned()
                .unwrap_or_else(|| Truncated::exact(LieElement::zero())))
        })
    }

    pub fn zero(degree: usize, bound: usize) -> Self {
        Self::from_rule(degree, None, bound, |_| Ok(Truncated::exact(LieElement::zero())))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weight(&self) -> Option<i64> {
        self.weight
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Value on basis vectors given in any order.
    pub fn eval(&self, indices: &[usize]) -> Result<Truncated<LieElement>> {
        if indices.len() != self.degree {
            return Err(Error::Degree(format!(
                "{} arguments for a {}-cochain",
                indices.len(),
                self.degree
            )));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > self.bound) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                structure: format!("cochain bound {}", self.bound),
            });
        }
        let Some((odd, m)) = ExtMonomial::canonical(indices) else {
            return Ok(Truncated::exact(LieElement::zero()));
        };
        let mut r = (self.rule)(m.indices())?;
        if odd {
            r.value = r.value.neg();
        }
        Ok(r)
    }

    /// Multilinear extension to arbitrary arguments.
    pub fn eval_elements(&self, args: &[LieElement]) -> Result<Truncated<LieElement>> {
        if args.len() != self.degree {
            return Err(Error::Degree(format!(
                "{} arguments for a {}-cochain",
                args.len(),
                self.degree
            )));
        }
        let mut value = LieElement::zero();
        let mut truncated = false;
        let mut idx = vec![0usize; args.len()];
        self.expand(args, 0, &Scalar::one(), &mut idx, &mut value, &mut truncated)?;
        Ok(Truncated { value, truncated })
    }

    fn expand(
        &self,
        args: &[LieElement],
        pos: usize,
        coeff: &Scalar,
        idx: &mut Vec<usize>,
        value: &mut LieElement,
        truncated: &mut bool,
    ) -> Result<()> {
        if pos == args.len() {
            let r = self.eval(idx)?;
            *truncated |= r.truncated;
            value.add_scaled(&r.value, coeff);
            return Ok(());
        }
        for (i, c) in args[pos].iter() {
            idx[pos] = i;
            self.expand(args, pos + 1, &(coeff * c), idx, value, truncated)?;
        }
        Ok(())
    }

    /// Tabulates every increasing tuple up to the bound, in parallel.
    pub fn memoized(&self) -> Result<AdjointCochain> {
        let tuples = increasing_tuples(self.degree, 1, self.bound);
        let rows: Result<Vec<_>> = tuples
            .into_par_iter()
            .map(|t| (self.rule)(&t).map(|v| (t, v)))
            .collect();
        let table: HashMap<_, _> = rows?
            .into_iter()
            .filter(|(_, v)| !v.value.is_zero() || v.truncated)
            .collect();
        Ok(Self::from_table(self.degree, self.weight, self.bound, table))
    }

    pub fn scaled(&self, factor: Scalar) -> AdjointCochain {
        let inner = self.rule.clone();
        Self::from_rule(self.degree, self.weight, self.bound, move |t| {
            let mut r = inner(t)?;
            r.value = r.value.scaled(&factor);
            Ok(r)
        })
    }

    /// Every increasing tuple (within both bounds) where the two cochains differ.
    pub fn differences(&self, other: &AdjointCochain) -> Result<Vec<(Vec<usize>, LieElement, LieElement)>> {
        if self.degree != other.degree {
            return Err(Error::Degree(format!("{} vs {}", self.degree, other.degree)));
        }
        let mut out = Vec::new();
        for t in increasing_tuples(self.degree, 1, self.bound.min(other.bound)) {
            let a = self.eval(&t)?.value;
            let b = other.eval(&t)?.value;
            if a != b {
                out.push((t, a, b));
            }
        }
        Ok(out)
    }
}

/// `sum c_i * phi_i`; all terms must share degree and bound.
pub fn linear_combination(terms: Vec<(Scalar, AdjointCochain)>, degree: usize, bound: usize) -> Result<AdjointCochain> {
    let mut weights = terms.iter().map(|(_, c)| c.weight);
    let weight = match weights.next() {
        None => None,
        Some(first) => weights.all(|w| w == first).then_some(first).flatten(),
    };
    for (_, c) in &terms {
        if c.degree != degree || c.bound != bound {
            return Err(Error::Degree(format!(
                "combining a degree-{} cochain with bound {} into degree {degree}, bound {bound}",
                c.degree, c.bound
            )));
        }
    }
    Ok(AdjointCochain::from_rule(degree, weight, bound, move |t| {
        let mut value = LieElement::zero();
        let mut truncated = false;
        for (c, phi) in &terms {
            let r = (phi.rule)(t)?;
            truncated |= r.truncated;
            value.add_scaled(&r.value, c);
        }
        Ok(Truncated { value, truncated })
    }))
}

/// Strictly increasing `q`-tuples drawn from `from..=to`, in lexicographic order.
pub fn increasing_tuples(q: usize, from: usize, to: usize) -> Vec<Vec<usize>> {
    fn rec(q: usize, start: usize, to: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..=to {
            cur.push(i);
            rec(q, i + 1, to, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if from <= to || q == 0 {
        rec(q, from, to, &mut Vec::new(), &mut out);
    }
    out
}

fn check_weight_minus_one(j: usize, s: i64, n: usize, what: &str) -> Result<()> {
    if s < -1 {
        return Err(Error::Range(format!("{what}: weight {s} is below -1")));
    }
    if s == -1 && (n % 2 != 0 || j != n / 2) {
        return Err(Error::Range(format!(
            "{what}: weight -1 needs an even bound n = 2j, got j={j}, n={n}"
        )));
    }
    Ok(())
}

/// `Psi_{j,s}(e_k, e_m)` for `2 <= k < m`:
/// `(-1)^{j-k} C(m-j-1, j-k) e_{m+k+s}`, zero when the target exceeds `n`.
pub fn psi2_value(j: usize, s: i64, n: usize, k: usize, m: usize) -> Result<LieElement> {
    if k == 1 {
        return Err(Error::Range("Psi_{j,s} is adapted: e_1 is not an admissible argument".into()));
    }
    if j < 2 || k == 0 || k >= m {
        return Err(Error::Range(format!("need j >= 2 and 2 <= k < m, got j={j}, k={k}, m={m}")));
    }
    check_weight_minus_one(j, s, n, "psi2_value")?;
    Ok(psi2_raw(j, s, k, m)
        .filter(|&(t, _)| t <= n)
        .map_or_else(LieElement::zero, |(t, c)| LieElement::term(t, c)))
}

/// Untruncated `(target, coefficient)` of `Psi_{j,s}(e_k, e_m)`, `2 <= k < m`.
fn psi2_raw(j: usize, s: i64, k: usize, m: usize) -> Option<(usize, Scalar)> {
    let (j, k, m) = (j as i64, k as i64, m as i64);
    let c = binomial(m - j - 1, j - k);
    if c.is_zero() {
        return None;
    }
    Some(((m + k + s) as usize, sign(j - k) * from_bigint(c)))
}

fn check_psi2(j: usize, s: i64, n: usize) -> Result<()> {
    if j < 2 {
        return Err(Error::Range(format!("Psi_{{j,s}} needs j >= 2, got {j}")));
    }
    check_weight_minus_one(j, s, n, "psi2")?;
    if 2 * j as i64 + 1 + s > n as i64 {
        return Err(Error::Range(format!("Psi_{{{j},{s}}} needs 2j+1+s <= n = {n}")));
    }
    Ok(())
}

/// `Psi_{j,s}` on `e_1..e_n`, read from the closed-form value table.
pub fn psi2(j: usize, s: i64, n: usize) -> Result<AdjointCochain> {
    check_psi2(j, s, n)?;
    Ok(AdjointCochain::from_rule(2, Some(s), n, move |t| {
        let (k, m) = (t[0], t[1]);
        if k == 1 {
            return Ok(Truncated::exact(LieElement::zero()));
        }
        Ok(match psi2_raw(j, s, k, m) {
            Some((target, c)) if target <= n => Truncated::exact(LieElement::term(target, c)),
            Some(_) => Truncated {
                value: LieElement::zero(),
                truncated: true,
            },
            None => Truncated::exact(LieElement::zero()),
        })
    }))
}

/// `Psi_{j,s}` on `e_1..e_n`, summed from `sum_k e_{2j+1+s+k} (x) D_{-1}^k omega(e^j ^ e^{j+1})`.
pub fn psi2_series(j: usize, s: i64, n: usize) -> Result<AdjointCochain> {
    check_psi2(j, s, n)?;
    series_cochain(&[j], s, n)
}

/// `Psi_{k,-1} = e_{2k} (x) omega(e^k ^ e^{k+1})` on `e_1..e_{2k}`.
pub fn psi_top(k: usize) -> Result<AdjointCochain> {
    if k < 3 {
        return Err(Error::Range(format!("Psi_{{k,-1}} needs k >= 3, got {k}")));
    }
    let n = 2 * k;
    let w = omega(&[k])?;
    let mut table = HashMap::new();
    for (m, c) in w.terms() {
        table.insert(m.indices().to_vec(), Truncated::exact(LieElement::term(n, c.clone())));
    }
    Ok(AdjointCochain::from_table(2, Some(-1), n, table))
}

/// The top cocycle for dimension `n`; only even `n` carries one.
pub fn psi_top_for_dimension(n: usize) -> Result<AdjointCochain> {
    if n % 2 != 0 {
        return Err(Error::Range(format!("Psi_{{k,-1}} exists only for even n, got {n}")));
    }
    psi_top(n / 2)
}

/// `Psi_{i,j,s} = sum_k e_{i+2j+1+s+k} (x) D_{-1}^k omega(e^i ^ e^j ^ e^{j+1})` on `e_1..e_n`.
/// Weight `-1` exists only for the top index, `i + 2j = n`.
pub fn psi3(i: usize, j: usize, s: i64, n: usize) -> Result<AdjointCochain> {
    if i < 2 || i >= j {
        return Err(Error::Range(format!("Psi_{{i,j,s}} needs 2 <= i < j, got i={i}, j={j}")));
    }
    if s < -1 || (s == -1 && i + 2 * j != n) {
        return Err(Error::Range(format!(
            "Psi_{{{i},{j},{s}}}: weight -1 is closed only when i + 2j = n = {n}"
        )));
    }
    if (i + 2 * j + 1) as i64 + s > n as i64 {
        return Err(Error::Range(format!("Psi_{{{i},{j},{s}}} needs i+2j+1+s <= n = {n}")));
    }
    series_cochain(&[i, j], s, n)
}

/// Tabulates `sum_k e_{w0+s+k} (x) D_{-1}^k omega(prefix ^ e^{last+1})` for every
/// increasing tuple in `e_2..e_n`, including the entries that fall beyond `e_n`
/// (recorded as truncated).
fn series_cochain(prefix: &[usize], s: i64, n: usize) -> Result<AdjointCochain> {
    let degree = prefix.len() + 1;
    let max_weight: usize = (0..degree).map(|t| n - t).sum();
    let mut table: HashMap<Vec<usize>, Truncated<LieElement>> = HashMap::new();
    let mut form: ExtForm = omega(prefix)?;
    while !form.is_zero() {
        let w = form.weight().expect("series terms are homogeneous");
        if w > max_weight {
            break;
        }
        let target = w as i64 + s;
        for (m, c) in form.terms() {
            if m.indices().iter().any(|&i| i > n) {
                continue;
            }
            let entry = table
                .entry(m.indices().to_vec())
                .or_insert_with(|| Truncated::exact(LieElement::zero()));
            if target as usize <= n {
                entry.value.add_term(target as usize, c.clone());
            } else {
                entry.truncated = true;
            }
        }
        form = form.dminus1()?;
    }
    Ok(AdjointCochain::from_table(degree, Some(s), n, table))
}

/// The Chevalley-Eilenberg differential with coefficients in the adjoint module:
/// `sum_i (-1)^{i+1} [X_i, c(.., X^_i, ..)] + sum_{i<j} (-1)^{i+j} c([X_i, X_j], .., X^_i, .., X^_j, ..)`.
pub fn d_adjoint(c: &AdjointCochain, base: &LieStructure) -> Result<AdjointCochain> {
    if c.bound != base.bound() {
        return Err(Error::Range(format!(
            "cochain bound {} differs from structure bound {}",
            c.bound,
            base.bound()
        )));
    }
    let c = c.clone();
    let base = base.clone();
    let q = c.degree;
    Ok(AdjointCochain::from_rule(q + 1, c.weight, c.bound, move |x| {
        let mut value = LieElement::zero();
        let mut truncated = false;
        for i in 0..=q {
            let rest: Vec<usize> = x.iter().enumerate().filter(|&(p, _)| p != i).map(|(_, &v)| v).collect();
            let inner = c.eval(&rest)?;
            let outer = base.bracket(&LieElement::basis(x[i]), &inner.value)?;
            truncated |= inner.truncated || outer.truncated;
            value.add_scaled(&outer.value, &sign(i as i64));
        }
        for i in 0..=q {
            for j in i + 1..=q {
                let br = base.bracket_basis(x[i], x[j])?;
                if br.value.is_zero() && !br.truncated {
                    continue;
                }
                let mut args = vec![br.value];
                args.extend(
                    x.iter()
                        .enumerate()
                        .filter(|&(p, _)| p != i && p != j)
                        .map(|(_, &v)| LieElement::basis(v)),
                );
                let r = c.eval_elements(&args)?;
                truncated |= br.truncated || r.truncated;
                value.add_scaled(&r.value, &sign((i + j) as i64));
            }
        }
        Ok(Truncated { value, truncated })
    }))
}

/// `[a, b](x, y, z)` for two 2-cochains: the six double substitutions
/// `a(b(x,y),z) + a(b(y,z),x) + a(b(z,x),y) + (a <-> b)`.
pub fn nr_bracket22(a: &AdjointCochain, b: &AdjointCochain) -> Result<AdjointCochain> {
    if a.degree != 2 || b.degree != 2 {
        return Err(Error::Degree(format!(
            "the bracket takes two 2-cochains, got degrees {} and {}",
            a.degree, b.degree
        )));
    }
    if a.bound != b.bound {
        return Err(Error::Range(format!("bounds {} and {} differ", a.bound, b.bound)));
    }
    let weight = a.weight.zip(b.weight).map(|(u, v)| u + v);
    let (a, b) = (a.clone(), b.clone());
    Ok(AdjointCochain::from_rule(3, weight, a.bound, move |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let mut value = LieElement::zero();
        let mut truncated = false;
        for (outer, inner) in [(&a, &b), (&b, &a)] {
            for (u, v, w) in [(x, y, z), (y, z, x), (z, x, y)] {
                let first = inner.eval(&[u, v])?;
                let second = outer.eval_elements(&[first.value, LieElement::basis(w)])?;
                truncated |= first.truncated || second.truncated;
                value = value.plus(&second.value);
            }
        }
        Ok(Truncated { value, truncated })
    }))
}

/// Coordinates of an adapted closed 3-cochain on the basis `Psi_{j,q,r}`: the
/// coefficient of `e_{j+2q+1+r}` in `phi(e_j, e_q, e_{q+1})`.
pub fn decompose3(phi: &AdjointCochain) -> Result<BTreeMap<Label3, Scalar>> {
    if phi.degree != 3 {
        return Err(Error::Degree(format!("decompose3 takes a 3-cochain, got degree {}", phi.degree)));
    }
    let n = phi.bound;
    let phi = phi.memoized()?;
    for t in increasing_tuples(3, 1, n) {
        let v = phi.eval(&t)?.value;
        if t[0] == 1 && !v.is_zero() {
            return Err(Error::NotAdapted([t[0], t[1], t[2]]));
        }
        let sum: usize = t.iter().sum();
        let lowest = v.iter().next().map(|(i, _)| i);
        if let Some(low) = lowest {
            let weight = low as i64 - sum as i64;
            if weight < -1 {
                return Err(Error::WeightTooLow {
                    triple: [t[0], t[1], t[2]],
                    weight,
                });
            }
        }
    }
    let m0 = make_fixture(&Fixture::M0, n)?;
    let dphi = d_adjoint(&phi, &m0)?;
    let failures: Vec<Vec<usize>> = increasing_tuples(4, 1, n)
        .into_par_iter()
        .filter(|t| dphi.eval(t).map_or(true, |r| !r.value.is_zero()))
        .collect();
    if let Some(t) = failures.first() {
        return Err(Error::NotClosed([t[0], t[1], t[2], t[3]]));
    }
    let mut out = BTreeMap::new();
    for j in 2..n {
        for q in j + 1..n {
            let base = j + 2 * q + 1;
            for (t, c) in phi.eval(&[j, q, q + 1])?.value.iter() {
                out.insert((j, q, t as i64 - base as i64), c.clone());
            }
        }
    }
    Ok(out)
}

/// `sum coeff * Psi_{j,q,r}` on `e_1..e_n`.
pub fn reconstruct3(coeffs: &BTreeMap<Label3, Scalar>, n: usize) -> Result<AdjointCochain> {
    let terms = coeffs
        .iter()
        .map(|(&(j, q, r), c)| psi3(j, q, r, n).map(|p| (c.clone(), p)))
        .collect::<Result<Vec<_>>>()?;
    linear_combination(terms, 3, n)
}
