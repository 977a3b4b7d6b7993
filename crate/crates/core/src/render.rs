//! Text, JSON and CAS renderings of equation systems.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{DeformPolynomial, DeformVariable, Monomial};
use crate::system::{EquationForm, EquationSystem, Label, SystemKind};

fn title(sys: &EquationSystem) -> String {
    match sys.kind {
        SystemKind::Finite { n } if n % 2 == 0 => format!("M_Fil({n}), x = {}", sys.x_mode),
        SystemKind::Finite { n } => format!("M_Fil({n})"),
        SystemKind::Truncated { total_max } => format!("M_Fil truncated at j+2q+1+r <= {total_max}"),
    }
}

/// One equation per line in the `x_{j,s}` / `F_{j,q,r}` notation.
pub fn render_text(sys: &EquationSystem) -> String {
    let mut out = format!(
        "# {}: {} equations in {} variables\n",
        title(sys),
        sys.equations.len(),
        sys.variables.len()
    );
    for e in &sys.equations {
        let name = match e.form {
            EquationForm::Plain => "F",
            EquationForm::Corrected | EquationForm::TopOnly => "F\u{303}",
        };
        out.push_str(&format!("{name}_{{{}}} = {}\n", e.label, e.poly));
    }
    out
}

/// A ring declaration followed by one polynomial per line.
pub fn render_cas(sys: &EquationSystem) -> String {
    let names: Vec<String> = sys
        .variables
        .iter()
        .map(|v| DeformPolynomial::var(*v).to_cas())
        .collect();
    let mut out = format!("QQ[{}]\n", names.join(","));
    for e in &sys.equations {
        out.push_str(&e.poly.to_cas());
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VariableEntry {
    Pair { j: usize, s: usize },
    Top(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VarPower {
    Pair(usize, usize, usize),
    Top(String, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialEntry {
    pub coeff: String,
    pub vars: Vec<VarPower>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationEntry {
    pub label: (usize, usize, i64),
    pub monomials: Vec<MonomialEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDocument {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_max: Option<usize>,
    pub x_mode: String,
    pub variables: Vec<VariableEntry>,
    pub equations: Vec<EquationEntry>,
}

fn variable_entry(v: DeformVariable) -> VariableEntry {
    match v {
        DeformVariable::Pair { j, s } => VariableEntry::Pair { j, s },
        DeformVariable::Top => VariableEntry::Top("x".into()),
    }
}

fn parse_var(v: &VarPower) -> Result<(DeformVariable, usize)> {
    match v {
        VarPower::Pair(j, s, p) => Ok((DeformVariable::pair(*j, *s), *p)),
        VarPower::Top(name, p) if name == "x" => Ok((DeformVariable::Top, *p)),
        VarPower::Top(name, _) => Err(Error::Parse(format!("unknown variable `{name}`"))),
    }
}

impl SystemDocument {
    pub fn from_system(sys: &EquationSystem) -> Self {
        let (kind, n, total_max) = match sys.kind {
            SystemKind::Finite { n } => ("M_Fil(n)", Some(n), None),
            SystemKind::Truncated { total_max } => ("truncated", None, Some(total_max)),
        };
        let equations = sys
            .equations
            .iter()
            .map(|e| EquationEntry {
                label: (e.label.j, e.label.q, e.label.r),
                monomials: e
                    .poly
                    .terms()
                    .map(|(m, c)| MonomialEntry {
                        coeff: c.to_string(),
                        vars: m
                            .powers()
                            .into_iter()
                            .map(|(v, p)| match v {
                                DeformVariable::Pair { j, s } => VarPower::Pair(j, s, p),
                                DeformVariable::Top => VarPower::Top("x".into(), p),
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect();
        SystemDocument {
            kind: kind.into(),
            n,
            total_max,
            x_mode: sys.x_mode.to_string(),
            variables: sys.variables.iter().copied().map(variable_entry).collect(),
            equations,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// The labeled polynomials the document describes.
    pub fn polynomials(&self) -> Result<Vec<(Label, DeformPolynomial)>> {
        self.equations
            .iter()
            .map(|e| {
                let mut p = DeformPolynomial::zero();
                for m in &e.monomials {
                    let mut vars = Vec::new();
                    for vp in &m.vars {
                        let (v, k) = parse_var(vp)?;
                        vars.extend(std::iter::repeat_n(v, k));
                    }
                    let c = m
                        .coeff
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient `{}`", m.coeff)))?;
                    p.add_term(Monomial::new(vars), c);
                }
                let (j, q, r) = e.label;
                Ok((Label::new(j, q, r), p))
            })
            .collect()
    }
}
