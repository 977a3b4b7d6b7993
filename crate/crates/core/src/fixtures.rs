//! Reference algebras: `m0`, `m1(2k)`, `m2`, `m_k`, `L_1`, `L_k` and the
//! lacuna subalgebras `g(s) = g_1 + sum_{i >= s+2} g_i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{Extent, LieElement, LieStructure};
use crate::scalar::{int, sign, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    /// `[e_1, e_i] = e_{i+1}`.
    M0,
    /// `m0(2k)` plus `[e_j, e_{2k+1-j}] = (-1)^{j+k} e_{2k}`, `2 <= j <= k`.
    M1,
    /// `m0` plus `[e_2, e_j] = e_{j+2}`.
    M2,
    /// Basis `e_1, e_k, e_{k+1}, ...` with `[e_1, e_i] = e_{i+1}` and
    /// `[e_k, e_i] = e_{k+i}`.
    Mk { k: usize },
    /// `[e_i, e_j] = (j - i) e_{i+j}`.
    L1,
    /// `L_1` restricted to `e_i`, `i >= k`.
    Lk { k: usize },
    /// `e_1` together with `e_i`, `i >= s + 2`, inside a base algebra whose
    /// grading puts `e_i` in degree `i`.
    LacunaOf { base: Box<Fixture>, s: usize },
}

impl Fixture {
    /// Resolves a fixture from its command-line name and optional parameters.
    pub fn from_name(name: &str, k: Option<usize>, s: Option<usize>, base: Option<&str>) -> Result<Fixture> {
        let need = |v: Option<usize>, what: &str| {
            v.ok_or_else(|| Error::FixtureParams(format!("fixture `{name}` needs --{what}")))
        };
        Ok(match name {
            "m0" => Fixture::M0,
            "m1" => Fixture::M1,
            "m2" => Fixture::M2,
            "mk" => Fixture::Mk { k: need(k, "k")? },
            "L1" => Fixture::L1,
            "Lk" => Fixture::Lk { k: need(k, "k")? },
            "lacuna-of" => {
                let base = base.ok_or_else(|| Error::FixtureParams("lacuna-of needs --base".into()))?;
                Fixture::LacunaOf {
                    base: Box::new(Fixture::from_name(base, k, None, None)?),
                    s: need(s, "s")?,
                }
            }
            other => return Err(Error::UnknownFixture(other.to_string())),
        })
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::M0 => write!(f, "m0"),
            Fixture::M1 => write!(f, "m1"),
            Fixture::M2 => write!(f, "m2"),
            Fixture::Mk { k } => write!(f, "m{k}"),
            Fixture::L1 => write!(f, "L1"),
            Fixture::Lk { k } => write!(f, "L{k}"),
            Fixture::LacunaOf { base, s } => write!(f, "{base}({s})"),
        }
    }
}

/// Builds the structure constants of `fixture` truncated at `e_n`.
pub fn make_fixture(fixture: &Fixture, n: usize) -> Result<LieStructure> {
    let name = format!("{fixture}[n={n}]");
    let params = |msg: String| Err(Error::FixtureParams(msg));
    match fixture {
        Fixture::M0 => {
            if n < 2 {
                return params(format!("m0 needs n >= 2, got {n}"));
            }
            let mut s = LieStructure::with_dimension(name, Extent::Finite(n));
            add_m0_relations(&mut s, 2)?;
            Ok(s)
        }
        Fixture::M1 => {
            if n % 2 != 0 || n < 6 {
                return params(format!("m1 needs even n = 2k >= 6, got {n}"));
            }
            let k = n / 2;
            let mut s = LieStructure::with_dimension(name, Extent::Finite(n));
            add_m0_relations(&mut s, 2)?;
            for j in 2..=k {
                let c = sign((j + k) as i64);
                s.set_bracket(j, n + 1 - j, LieElement::term(n, c))?;
            }
            Ok(s)
        }
        Fixture::M2 => {
            if n < 2 {
                return params(format!("m2 needs n >= 2, got {n}"));
            }
            let mut s = LieStructure::with_dimension(name, Extent::Cutoff(n));
            add_m0_relations(&mut s, 2)?;
            for j in 3..=n {
                s.set_bracket(2, j, LieElement::basis(j + 2))?;
            }
            Ok(s)
        }
        Fixture::Mk { k } => {
            let k = *k;
            if k < 2 || k > n {
                return params(format!("mk needs 2 <= k <= n, got k={k}, n={n}"));
            }
            let basis = std::iter::once(1).chain(k..=n);
            let mut s = LieStructure::new(name, Extent::Cutoff(n), basis);
            add_m0_relations(&mut s, k)?;
            for i in k + 1..=n {
                s.set_bracket(k, i, LieElement::basis(k + i))?;
            }
            Ok(s)
        }
        Fixture::L1 => witt_positive(name, 1, n),
        Fixture::Lk { k } => {
            if *k < 1 || *k > n {
                return params(format!("Lk needs 1 <= k <= n, got k={k}, n={n}"));
            }
            witt_positive(name, *k, n)
        }
        Fixture::LacunaOf { base, s } => {
            if !matches!(**base, Fixture::M0 | Fixture::M2 | Fixture::L1) {
                return params(format!("lacuna-of needs a base graded by index (m0, m2, L1), got {base}"));
            }
            if *s < 1 {
                return params("lacuna-of needs s >= 1".into());
            }
            let full = make_fixture(base, n)?;
            let keep: Vec<usize> = full.basis().filter(|&i| i == 1 || i >= s + 2).collect();
            let mut sub = LieStructure::new(name, Extent::Cutoff(n), keep.iter().copied());
            for (a, &i) in keep.iter().enumerate() {
                for &j in &keep[a + 1..] {
                    let b = full.bracket_basis(i, j)?;
                    let mut v = b.value;
                    if b.truncated {
                        // re-mark the dropped tail so the cutoff flag carries over
                        v.add_term(n + 1, int(1));
                    }
                    sub.set_bracket(i, j, v)?;
                }
            }
            Ok(sub)
        }
    }
}

fn add_m0_relations(s: &mut LieStructure, from: usize) -> Result<()> {
    let n = s.bound();
    for i in from..=n {
        if s.contains(i) {
            s.set_bracket(1, i, LieElement::basis(i + 1))?;
        }
    }
    Ok(())
}

fn witt_positive(name: String, k: usize, n: usize) -> Result<LieStructure> {
    let mut s = LieStructure::new(name, Extent::Cutoff(n), k..=n);
    for i in k..=n {
        for j in i + 1..=n {
            s.set_bracket(i, j, LieElement::term(i + j, int((j - i) as i64)))?;
        }
    }
    Ok(s)
}

/// Serialized form of a structure: every stored relation `[e_i, e_j]`,
/// `i < j`, with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDocument {
    pub name: String,
    pub dimension: usize,
    pub relations: Vec<RelationEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<CoefficientEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub index: usize,
    pub numerator: String,
    pub denominator: String,
}

impl StructureDocument {
    pub fn from_structure(name: &str, s: &LieStructure) -> Self {
        let relations = s
            .relations()
            .map(|(i, j, v)| RelationEntry {
                i,
                j,
                value: v
                    .iter()
                    .map(|(index, c): (usize, &Scalar)| CoefficientEntry {
                        index,
                        numerator: c.numer().to_string(),
                        denominator: c.denom().to_string(),
                    })
                    .collect(),
            })
            .collect();
        StructureDocument {
            name: name.to_string(),
            dimension: s.bound(),
            relations,
        }
    }
}
