//! Brute-force checks that share no code with the closed-form polynomials:
//! the symbolic expansion of `1/2 [Psi, Psi]`, known solution families,
//! residual evaluation and Jacobi scans of deformed brackets.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cochain::psi2_value;
use crate::error::{Error, Result};
use crate::lie::{Extent, LieElement, LieStructure};
use crate::poly::{DeformPolynomial, DeformVariable};
use crate::scalar::{format_scalar, int, parse_scalar, Scalar};
use crate::system::{system_truncated, EquationSystem, Label, SystemKind};

/// Values of the deformation coordinates; anything absent is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    values: BTreeMap<DeformVariable, Scalar>,
    weight_bound: Option<usize>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: DeformVariable, value: Scalar) -> Self {
        self.set(v, value);
        self
    }

    pub fn set(&mut self, v: DeformVariable, value: Scalar) {
        if value.is_zero() {
            self.values.remove(&v);
        } else {
            self.values.insert(v, value);
        }
    }

    /// Declares every `x_{j,s}` with `s > bound` zero.
    pub fn with_weight_bound(mut self, bound: usize) -> Self {
        self.weight_bound = Some(bound);
        self.values
            .retain(|v, _| !matches!(v, DeformVariable::Pair { s, .. } if *s > bound));
        self
    }

    pub fn weight_bound(&self) -> Option<usize> {
        self.weight_bound
    }

    pub fn get(&self, v: DeformVariable) -> Scalar {
        self.values.get(&v).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (DeformVariable, &Scalar)> {
        self.values.iter().map(|(&v, c)| (v, c))
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_file(&self) -> AssignmentFile {
        let mut entries = Vec::new();
        let mut x = None;
        for (v, c) in self.iter() {
            match v {
                DeformVariable::Pair { j, s } => entries.push(AssignmentEntry {
                    j,
                    s,
                    value: format_scalar(c),
                }),
                DeformVariable::Top => x = Some(format_scalar(c)),
            }
        }
        AssignmentFile { entries, x }
    }

    pub fn from_file(file: &AssignmentFile) -> Result<Self> {
        let mut a = Assignment::new();
        for e in &file.entries {
            if e.j < 2 {
                return Err(Error::Parse(format!("x_{{{},{}}} is not a deformation coordinate", e.j, e.s)));
            }
            a.set(DeformVariable::pair(e.j, e.s), parse_scalar(&e.value)?);
        }
        if let Some(x) = &file.x {
            a.set(DeformVariable::Top, parse_scalar(x)?);
        }
        Ok(a)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AssignmentFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(v, c)| format!("{v} = {}", format_scalar(c))).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// On-disk assignment: `{"entries": [{"j": 2, "s": 0, "value": "1/10"}], "x": "1"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentFile {
    pub entries: Vec<AssignmentEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentEntry {
    pub j: usize,
    pub s: usize,
    pub value: String,
}

/// The variables a symbolic cocycle is built from, and the index bound its
/// values are computed to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inventory {
    pub vars: Vec<DeformVariable>,
    pub bound: usize,
}

impl Inventory {
    /// `{x_{j,s} : 2j + 1 + s <= n}`, plus `x` when requested and `n` is even.
    pub fn for_dimension(n: usize, with_top: bool) -> Self {
        let mut vars = Vec::new();
        for j in 2..=n / 2 {
            for s in 0..=n.saturating_sub(2 * j + 1) {
                if 2 * j + 1 + s <= n {
                    vars.push(DeformVariable::pair(j, s));
                }
            }
        }
        if with_top && n % 2 == 0 {
            vars.push(DeformVariable::Top);
        }
        Inventory { vars, bound: n }
    }

    pub fn has_top(&self) -> bool {
        self.vars.contains(&DeformVariable::Top)
    }
}

/// A vector whose coordinates are polynomials in the deformation variables.
type SymbolicElement = BTreeMap<usize, DeformPolynomial>;

fn add_into(acc: &mut SymbolicElement, index: usize, p: &DeformPolynomial) {
    let slot = acc.entry(index).or_default();
    *slot = slot.plus(p);
    if slot.is_zero() {
        acc.remove(&index);
    }
}

/// Symbolic `Psi = sum_v x_v Psi_v` over an inventory, with memoized values
/// on basis pairs.
struct SymbolicCocycle<'a> {
    inv: &'a Inventory,
    cache: HashMap<(usize, usize), SymbolicElement>,
}

impl<'a> SymbolicCocycle<'a> {
    fn new(inv: &'a Inventory) -> Result<Self> {
        if inv.has_top() && inv.bound % 2 != 0 {
            return Err(Error::Range(format!("x needs an even bound, got {}", inv.bound)));
        }
        Ok(SymbolicCocycle {
            inv,
            cache: HashMap::new(),
        })
    }

    /// `Psi(e_a, e_b)` for `a < b`.
    fn pair(&mut self, a: usize, b: usize) -> Result<SymbolicElement> {
        if let Some(v) = self.cache.get(&(a, b)) {
            return Ok(v.clone());
        }
        let mut out = SymbolicElement::new();
        if a >= 2 {
            let n = self.inv.bound;
            for &v in &self.inv.vars {
                let (j, s) = match v {
                    DeformVariable::Pair { j, s } => (j, s as i64),
                    DeformVariable::Top => (n / 2, -1),
                };
                for (t, c) in psi2_value(j, s, n, a, b)?.iter() {
                    let c = c.to_integer();
                    add_into(&mut out, t, &DeformPolynomial::var(v).scaled(&c));
                }
            }
        }
        self.cache.insert((a, b), out.clone());
        Ok(out)
    }

    /// `Psi(u, e_c)` for a symbolic `u`.
    fn apply(&mut self, u: &SymbolicElement, c: usize) -> Result<SymbolicElement> {
        let mut out = SymbolicElement::new();
        for (&t, p) in u {
            let (sign, value) = match t.cmp(&c) {
                std::cmp::Ordering::Equal => continue,
                std::cmp::Ordering::Less => (1, self.pair(t, c)?),
                std::cmp::Ordering::Greater => (-1, self.pair(c, t)?),
            };
            for (idx, q) in &value {
                add_into(&mut out, *idx, &p.times(q).scaled(&BigInt::from(sign)));
            }
        }
        Ok(out)
    }

    fn basis_pair(&mut self, a: usize, b: usize) -> Result<SymbolicElement> {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => Ok(SymbolicElement::new()),
            std::cmp::Ordering::Less => self.pair(a, b),
            std::cmp::Ordering::Greater => Ok(self
                .pair(b, a)?
                .into_iter()
                .map(|(i, p)| (i, p.neg()))
                .collect()),
        }
    }
}

/// `1/2 [Psi, Psi](e_j, e_q, e_{q+1})` over the inventory, as coefficients of
/// basis vectors up to the bound.
pub fn oracle_expansion(j: usize, q: usize, inv: &Inventory) -> Result<BTreeMap<usize, DeformPolynomial>> {
    if j < 2 || j >= q || q + 1 > inv.bound {
        return Err(Error::Range(format!("need 2 <= j < q < bound, got j={j}, q={q}, bound={}", inv.bound)));
    }
    let mut psi = SymbolicCocycle::new(inv)?;
    let (x, y, z) = (j, q, q + 1);
    let mut total = SymbolicElement::new();
    // six-term bracket with a = b = Psi: every cyclic term appears twice
    for _ in 0..2 {
        for (u, v, w) in [(x, y, z), (y, z, x), (z, x, y)] {
            let inner = psi.basis_pair(u, v)?;
            for (i, p) in psi.apply(&inner, w)? {
                add_into(&mut total, i, &p);
            }
        }
    }
    let mut half = BTreeMap::new();
    for (i, p) in total {
        let mut h = DeformPolynomial::zero();
        for (m, c) in p.terms() {
            let (quot, rem) = c.div_rem(&BigInt::from(2));
            assert!(rem.is_zero(), "[Psi, Psi] has an odd coefficient");
            h.add_term(m.clone(), quot);
        }
        half.insert(i, h);
    }
    Ok(half)
}

/// Coefficient of `e_{j+2q+1+r}` in `1/2 [Psi, Psi](e_j, e_q, e_{q+1})`.
pub fn oracle_coefficient(j: usize, q: usize, r: i64, inv: &Inventory) -> Result<DeformPolynomial> {
    if r < -1 || (r == -1 && !inv.has_top()) {
        return Err(Error::Range(format!("weight {r} needs r >= 0, or r = -1 with x in the inventory")));
    }
    let target = (j + 2 * q + 1) as i64 + r;
    if target as usize > inv.bound {
        return Err(Error::InconclusiveInventory {
            target: target as usize,
            bound: inv.bound,
        });
    }
    Ok(oracle_expansion(j, q, inv)?
        .remove(&(target as usize))
        .unwrap_or_default())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnownSolution {
    /// `t Psi_{2,0}`.
    M2,
    /// `t sum_k 6 (k-2)!(k-1)!/(2k-1)! Psi_{k,0}`.
    L1,
    /// `t Psi_{2,k-2}`.
    Mk(usize),
    /// `t sum_j 6 j!(j+1)!/(2j+3)! Psi_{j,2}`.
    L1Lacuna2,
}

impl KnownSolution {
    pub fn from_name(name: &str, k: Option<usize>) -> Result<Self> {
        match name {
            "m2" => Ok(KnownSolution::M2),
            "L1" => Ok(KnownSolution::L1),
            "L1-lacuna2" => Ok(KnownSolution::L1Lacuna2),
            "mk" => match k {
                Some(k) if k >= 2 => Ok(KnownSolution::Mk(k)),
                _ => Err(Error::FixtureParams("mk needs --k >= 2".into())),
            },
            _ => Err(Error::UnknownSolution(name.into())),
        }
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `6 (k-2)! (k-1)! / (2k-1)!`.
pub fn l1_coefficient(k: usize) -> Scalar {
    Scalar::new(
        BigInt::from(6) * factorial(k - 2) * factorial(k - 1),
        factorial(2 * k - 1),
    )
}

/// The solution family scaled by `t`, with every coordinate `x_{j,s}` such that
/// `2j + 1 + s <= bound`.
pub fn known_solution(sol: &KnownSolution, t: &Scalar, bound: usize) -> Assignment {
    let mut a = Assignment::new();
    let fits = |j: usize, s: usize| 2 * j + 1 + s <= bound;
    match sol {
        KnownSolution::M2 => {
            if fits(2, 0) {
                a.set(DeformVariable::pair(2, 0), t.clone());
            }
        }
        KnownSolution::Mk(k) => {
            if fits(2, k - 2) {
                a.set(DeformVariable::pair(2, k - 2), t.clone());
            }
        }
        KnownSolution::L1 => {
            for k in (2..).take_while(|&k| fits(k, 0)) {
                a.set(DeformVariable::pair(k, 0), t * l1_coefficient(k));
            }
        }
        KnownSolution::L1Lacuna2 => {
            for j in (2..).take_while(|&j| fits(j, 2)) {
                a.set(DeformVariable::pair(j, 2), t * l1_coefficient(j + 2));
            }
        }
    }
    a
}

/// Exact residual of every equation.
pub fn evaluate_system(sys: &EquationSystem, a: &Assignment) -> Vec<(Label, Scalar)> {
    sys.equations
        .par_iter()
        .map(|e| (e.label, e.poly.evaluate(|v| a.get(v))))
        .collect()
}

/// First label (in canonical order) with a nonzero residual, scanning the
/// truncated systems up to `total_max`.
pub fn first_violation(a: &Assignment, total_max: usize) -> Result<Option<(Label, Scalar)>> {
    let sys = system_truncated(total_max)?;
    Ok(evaluate_system(&sys, a).into_iter().find(|(_, v)| !v.is_zero()))
}

/// `m0(n)` with `[e_k, e_m] += sum_v a_v Psi_v(e_k, e_m)` for `2 <= k < m`.
pub fn deformed_structure(a: &Assignment, n: usize) -> Result<LieStructure> {
    if n < 3 {
        return Err(Error::Range(format!("deformed structures need n >= 3, got {n}")));
    }
    let top = a.get(DeformVariable::Top);
    if !top.is_zero() && n % 2 != 0 {
        return Err(Error::Range(format!("x = {} needs an even dimension, got {n}", format_scalar(&top))));
    }
    let mut s = LieStructure::with_dimension(format!("deformed[n={n}]"), Extent::Finite(n));
    for i in 2..=n {
        s.set_bracket(1, i, LieElement::basis(i + 1))?;
    }
    for k in 2..=n {
        for m in k + 1..=n {
            let mut value = LieElement::zero();
            for (v, c) in a.iter() {
                let (j, w) = match v {
                    DeformVariable::Pair { j, s } => (j, s as i64),
                    DeformVariable::Top => (n / 2, -1),
                };
                if 2 * j as i64 + 1 + w > n as i64 {
                    continue;
                }
                value.add_scaled(&psi2_value(j, w, n, k, m)?, c);
            }
            if !value.is_zero() {
                s.set_bracket(k, m, value)?;
            }
        }
    }
    Ok(s)
}

pub fn jacobi_scan(s: &LieStructure) -> Vec<([usize; 3], LieElement)> {
    s.jacobi_scan()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualEntry {
    pub label: (usize, usize, i64),
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectEntry {
    pub triple: [usize; 3],
    /// `(index, coefficient)` pairs.
    pub defect: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    #[serde(rename = "system-id")]
    pub system_id: String,
    pub assignment: AssignmentFile,
    /// Nonzero residuals only.
    pub residuals: Vec<ResidualEntry>,
    pub jacobi: Vec<DefectEntry>,
    pub verdict: String,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.residuals.is_empty() && self.jacobi.is_empty()
    }
}

/// Residuals of `sys` at `a` together with a Jacobi scan of the deformed bracket.
pub fn verify(sys: &EquationSystem, a: &Assignment) -> Result<VerificationReport> {
    let n = sys.kind.bound();
    let system_id = match sys.kind {
        SystemKind::Finite { n } => format!("M_Fil({n}), x={}", sys.x_mode),
        SystemKind::Truncated { total_max } => format!("truncated({total_max})"),
    };
    let mut a = a.clone();
    if let SystemKind::Finite { n } = sys.kind {
        if n % 2 == 0 {
            match sys.x_mode {
                crate::system::XMode::Fixed0 => a.set(DeformVariable::Top, Scalar::zero()),
                crate::system::XMode::Fixed1 => a.set(DeformVariable::Top, int(1)),
                crate::system::XMode::Free => {}
            }
        } else {
            a.set(DeformVariable::Top, Scalar::zero());
        }
    }
    let residuals: Vec<ResidualEntry> = evaluate_system(sys, &a)
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(l, v)| ResidualEntry {
            label: (l.j, l.q, l.r),
            value: format_scalar(&v),
        })
        .collect();
    let jacobi: Vec<DefectEntry> = jacobi_scan(&deformed_structure(&a, n)?)
        .into_iter()
        .map(|(triple, d)| DefectEntry {
            triple,
            defect: d.iter().map(|(i, c)| (i, format_scalar(c))).collect(),
        })
        .collect();
    let verdict = if residuals.is_empty() && jacobi.is_empty() { "verified" } else { "failed" };
    Ok(VerificationReport {
        system_id,
        assignment: a.to_file(),
        residuals,
        jacobi,
        verdict: verdict.into(),
    })
}

/// One label where the closed form and the expansion disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleDiff {
    pub label: Label,
    pub generated: DeformPolynomial,
    pub oracle: DeformPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComparison {
    pub checked: usize,
    pub diffs: Vec<OracleDiff>,
}

/// Compares every equation of `sys` with the expansion over `inv`, one
/// expansion per `(j, q)`.
fn compare(sys: &EquationSystem, inv: &Inventory) -> Result<OracleComparison> {
    let mut groups: BTreeMap<(usize, usize), Vec<&crate::system::Equation>> = BTreeMap::new();
    for e in &sys.equations {
        groups.entry((e.label.j, e.label.q)).or_default().push(e);
    }
    let groups: Vec<_> = groups.into_iter().collect();
    let per_group = groups
        .par_iter()
        .map(|((j, q), eqs)| -> Result<Vec<OracleDiff>> {
            let expansion = oracle_expansion(*j, *q, inv)?;
            Ok(eqs
                .iter()
                .filter_map(|e| {
                    let target = e.label.total() as usize;
                    let oracle = expansion.get(&target).cloned().unwrap_or_default();
                    (oracle != e.poly).then(|| OracleDiff {
                        label: e.label,
                        generated: e.poly.clone(),
                        oracle,
                    })
                })
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleComparison {
        checked: sys.equations.len(),
        diffs: per_group.into_iter().flatten().collect(),
    })
}

/// `F_{j,q,r}` against the expansion for every label with `j + 2q + 1 + r <= total_max`.
pub fn compare_truncated(total_max: usize) -> Result<OracleComparison> {
    compare(&system_truncated(total_max)?, &Inventory::for_dimension(total_max, false))
}

/// The equations of `M_Fil(n)` (with `x` free) against the expansion of
/// `x Psi_{k,-1} + Psi` for even `n`.
pub fn compare_finite(n: usize) -> Result<OracleComparison> {
    let sys = crate::system::system_finite(n, crate::system::XMode::Free)?;
    compare(&sys, &Inventory::for_dimension(n, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{make_fixture, Fixture};
    use crate::scalar::ratio;
    use crate::system::{system_finite, XMode};

    fn poly(s: &str) -> DeformPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn f230_by_expansion() {
        let inv = Inventory::for_dimension(9, false);
        let f = oracle_coefficient(2, 3, 0, &inv).unwrap();
        assert_eq!(f, poly("3x_{3,0}^2 - x_{3,0}x_{4,0} - 2x_{2,0}x_{4,0}"));
        let line = Assignment::new()
            .with(DeformVariable::pair(2, 0), int(1))
            .with(DeformVariable::pair(3, 0), ratio(1, 10))
            .with(DeformVariable::pair(4, 0), ratio(1, 70))
            .with(DeformVariable::pair(5, 0), ratio(1, 420));
        assert!(f.evaluate(|v| line.get(v)).is_zero());
        let empty = Inventory { vars: vec![], bound: 9 };
        assert!(oracle_coefficient(2, 3, 0, &empty).unwrap().is_zero());
        assert!(matches!(
            oracle_coefficient(2, 3, 1, &inv),
            Err(Error::InconclusiveInventory { target: 10, bound: 9 })
        ));
        assert!(oracle_coefficient(2, 4, -1, &inv).is_err());
    }

    #[test]
    fn l1_values() {
        assert_eq!(l1_coefficient(2), int(1));
        assert_eq!(l1_coefficient(3), ratio(1, 10));
        assert_eq!(l1_coefficient(4), ratio(1, 70));
        assert_eq!(l1_coefficient(5), ratio(1, 420));
        let lac = known_solution(&KnownSolution::L1Lacuna2, &int(1), 19);
        let want = [70, 420, 2310, 12012, 60060, 291720, 1385670];
        let got: Vec<Scalar> = lac.iter().map(|(_, c)| c.clone()).collect();
        assert_eq!(got, want.iter().map(|&d| ratio(1, d)).collect::<Vec<_>>());
        assert!(KnownSolution::from_name("m7", None).is_err());
    }

    #[test]
    fn residual_example() {
        let sys = system_finite(12, XMode::Fixed0).unwrap();
        let a = Assignment::new().with(DeformVariable::pair(3, 0), int(1));
        let r = evaluate_system(&sys, &a);
        assert_eq!(r[0], (Label::new(2, 3, 0), int(3)));
        let d = deformed_structure(&a, 12).unwrap();
        let scan = jacobi_scan(&d);
        assert!(scan.contains(&([2, 3, 4], LieElement::term(9, int(3)))));
        let report = verify(&sys, &a).unwrap();
        assert!(!report.verified());
    }

    #[test]
    fn deformed_matches_fixtures() {
        let n = 14;
        let m0 = make_fixture(&Fixture::M0, n).unwrap();
        let zero = deformed_structure(&Assignment::new(), n).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                assert_eq!(zero.bracket_basis(i, j).unwrap(), m0.bracket_basis(i, j).unwrap());
            }
        }
        let m2 = make_fixture(&Fixture::M2, n).unwrap();
        let d = deformed_structure(&known_solution(&KnownSolution::M2, &int(1), n), n).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                assert_eq!(d.bracket_basis(i, j).unwrap().value, m2.bracket_basis(i, j).unwrap().value);
            }
        }
        let m1 = make_fixture(&Fixture::M1, n).unwrap();
        let d = deformed_structure(&Assignment::new().with(DeformVariable::Top, int(1)), n).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                assert_eq!(d.bracket_basis(i, j).unwrap().value, m1.bracket_basis(i, j).unwrap().value);
            }
        }
        assert!(deformed_structure(&Assignment::new().with(DeformVariable::Top, int(1)), 13).is_err());
    }

    #[test]
    fn assignment_file_round_trip() {
        let a = Assignment::new()
            .with(DeformVariable::pair(2, 0), ratio(-3, 7))
            .with(DeformVariable::Top, int(1));
        let text = serde_json::to_string(&a.to_file()).unwrap();
        assert_eq!(Assignment::from_json(&text).unwrap(), a);
        assert!(Assignment::from_json(r#"{"entries":[{"j":2,"s":0,"value":"1/0"}]}"#).is_err());
        assert!(Assignment::from_json(r#"{"entries":[{"j":1,"s":0,"value":"1"}]}"#).is_err());
        let bounded = Assignment::new()
            .with(DeformVariable::pair(2, 3), int(1))
            .with(DeformVariable::pair(2, 1), int(1))
            .with_weight_bound(2);
        assert_eq!(bounded.iter().count(), 1);
    }
}
