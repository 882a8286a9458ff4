//! JSON file formats. Rationals are strings `"p/q"` or `"n"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sperf_core::completion::{LinearConstraint, PartialGram};
use sperf_core::lattice::LatticeError;
use sperf_core::rat;
use sperf_core::thetalp::{LpOutcome, LpStatus, ThetaLPSystem, ThetaLpError};
use sperf_core::{Lattice, Rat, RatMatrix};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {value:?} is not a rational")]
    Rational { field: String, value: String },
    #[error("{field}: {detail}")]
    Shape { field: String, detail: String },
    #[error("gram is not symmetric at ({i}, {j})")]
    NonSymmetric { i: usize, j: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    ThetaLp(#[from] ThetaLpError),
}

fn shape(field: impl Into<String>, detail: impl Into<String>) -> FormatError {
    FormatError::Shape { field: field.into(), detail: detail.into() }
}

fn parse_rat(field: &str, s: &str) -> Result<Rat, FormatError> {
    rat::parse(s.trim()).map_err(|_| FormatError::Rational { field: field.into(), value: s.into() })
}

fn parse_list(field: &str, v: &[String]) -> Result<Vec<Rat>, FormatError> {
    v.iter().enumerate().map(|(i, s)| parse_rat(&format!("{field}[{i}]"), s)).collect()
}

fn show_list(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat::show).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub name: String,
    pub dim: usize,
    pub gram: Vec<Vec<String>>,
}

impl LatticeFile {
    pub fn from_lattice(l: &Lattice) -> Self {
        let gram = l.gram().to_rows().iter().map(|r| show_list(r)).collect();
        Self { name: l.name().to_string(), dim: l.dim(), gram }
    }

    pub fn to_lattice(&self) -> Result<Lattice, FormatError> {
        if self.gram.len() != self.dim {
            return Err(shape("gram", format!("{} rows for dim {}", self.gram.len(), self.dim)));
        }
        let mut rows = Vec::with_capacity(self.dim);
        for (i, r) in self.gram.iter().enumerate() {
            if r.len() != self.dim {
                return Err(shape(format!("gram[{i}]"), format!("{} entries for dim {}", r.len(), self.dim)));
            }
            rows.push(parse_list(&format!("gram[{i}]"), r)?);
        }
        let m = RatMatrix::from_rows(rows).map_err(|e| shape("gram", e.to_string()))?;
        if let Some((i, j)) = m.asymmetry() {
            return Err(FormatError::NonSymmetric { i, j });
        }
        Ok(Lattice::named(&self.name, m)?)
    }
}

pub fn parse_lattice(json: &str) -> Result<Lattice, FormatError> {
    serde_json::from_str::<LatticeFile>(json)?.to_lattice()
}

pub fn lattice_json(l: &Lattice) -> String {
    serde_json::to_string_pretty(&LatticeFile::from_lattice(l)).expect("serializable")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaSystemFile {
    pub level: u64,
    pub weight: u64,
    pub precision: usize,
    pub m_prime: usize,
    pub m: usize,
    pub s: u64,
    pub s_prime: u64,
    pub eis: Vec<String>,
    pub cusp_basis: Vec<Vec<String>>,
    pub eis_w: Vec<String>,
    pub cusp_basis_w: Vec<Vec<String>>,
    #[serde(default)]
    pub provenance: String,
}

impl ThetaSystemFile {
    pub fn to_system(&self) -> Result<ThetaLPSystem, FormatError> {
        let rows = |field: &str, v: &[Vec<String>]| -> Result<Vec<Vec<Rat>>, FormatError> {
            v.iter().enumerate().map(|(i, r)| parse_list(&format!("{field}[{i}]"), r)).collect()
        };
        let sys = ThetaLPSystem {
            level: self.level,
            weight: self.weight,
            precision: self.precision,
            m_prime: self.m_prime,
            m: self.m,
            s: self.s,
            s_prime: self.s_prime,
            eis: parse_list("eis", &self.eis)?,
            cusp_basis: rows("cusp_basis", &self.cusp_basis)?,
            eis_w: parse_list("eis_w", &self.eis_w)?,
            cusp_basis_w: rows("cusp_basis_w", &self.cusp_basis_w)?,
            provenance: self.provenance.clone(),
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn from_system(sys: &ThetaLPSystem) -> Self {
        Self {
            level: sys.level,
            weight: sys.weight,
            precision: sys.precision,
            m_prime: sys.m_prime,
            m: sys.m,
            s: sys.s,
            s_prime: sys.s_prime,
            eis: show_list(&sys.eis),
            cusp_basis: sys.cusp_basis.iter().map(|r| show_list(r)).collect(),
            eis_w: show_list(&sys.eis_w),
            cusp_basis_w: sys.cusp_basis_w.iter().map(|r| show_list(r)).collect(),
            provenance: sys.provenance.clone(),
        }
    }
}

pub fn parse_theta_system(json: &str) -> Result<ThetaLPSystem, FormatError> {
    serde_json::from_str::<ThetaSystemFile>(json)?.to_system()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeFile {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<String>>,
}

impl OutcomeFile {
    pub fn from_outcome(o: &LpOutcome) -> Self {
        Self {
            status: match o.status {
                LpStatus::Feasible => "feasible",
                LpStatus::Infeasible => "infeasible",
            }
            .into(),
            solution: o.solution.as_deref().map(show_list),
            certificate: o.certificate.as_deref().map(show_list),
        }
    }

    pub fn to_outcome(&self) -> Result<LpOutcome, FormatError> {
        let status = match self.status.as_str() {
            "feasible" => LpStatus::Feasible,
            "infeasible" => LpStatus::Infeasible,
            other => return Err(shape("status", format!("{other:?} is neither feasible nor infeasible"))),
        };
        Ok(LpOutcome {
            status,
            solution: self.solution.as_deref().map(|v| parse_list("solution", v)).transpose()?,
            certificate: self.certificate.as_deref().map(|v| parse_list("certificate", v)).transpose()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedEntry {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnknownEntry {
    pub i: usize,
    pub j: usize,
    pub candidates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearEntry {
    /// `[i, j, coefficient]` triples.
    pub terms: Vec<(usize, usize, String)>,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialGramFile {
    pub size: usize,
    pub fixed: Vec<FixedEntry>,
    pub unknowns: Vec<UnknownEntry>,
    pub rank_bound: usize,
    pub min_bound: String,
    #[serde(default = "default_coeff_bound")]
    pub coeff_bound: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub linear: Vec<LinearEntry>,
    /// Shorthand for `Σ_j G[i][j] = value` on every row.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_sums: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
}

fn default_coeff_bound() -> u32 {
    sperf_core::completion::DEFAULT_COEFF_BOUND
}

impl PartialGramFile {
    pub fn to_partial(&self) -> Result<PartialGram, FormatError> {
        let mut p = PartialGram::new(self.size, self.rank_bound, parse_rat("min_bound", &self.min_bound)?);
        p.coeff_bound = self.coeff_bound;
        let mut seen = BTreeMap::new();
        let mut note = |i: usize, j: usize, what: &str| match seen.insert((i.min(j), i.max(j)), what.to_string()) {
            Some(prev) => Err(shape(what, format!("entry ({i},{j}) already given as {prev}"))),
            None => Ok(()),
        };
        for (k, e) in self.fixed.iter().enumerate() {
            note(e.i, e.j, "fixed")?;
            p.fix(e.i, e.j, parse_rat(&format!("fixed[{k}]"), &e.value)?);
        }
        for (k, e) in self.unknowns.iter().enumerate() {
            note(e.i, e.j, "unknowns")?;
            p.unknown(e.i, e.j, parse_list(&format!("unknowns[{k}]"), &e.candidates)?);
        }
        for (k, c) in self.linear.iter().enumerate() {
            let terms = c
                .terms
                .iter()
                .map(|(i, j, v)| Ok(((*i.min(j), *i.max(j)), parse_rat(&format!("linear[{k}]"), v)?)))
                .collect::<Result<_, FormatError>>()?;
            p.linear.push(LinearConstraint { terms, rhs: parse_rat(&format!("linear[{k}].rhs"), &c.rhs)? });
        }
        if let Some(v) = &self.row_sums {
            let v = parse_rat("row_sums", v)?;
            for i in 0..self.size {
                p.linear.push(LinearConstraint::row_sum(self.size, i, v.clone()));
            }
        }
        p.generators = self.generators.clone();
        p.order = self.order.clone();
        p.validate().map_err(|e| shape("partial gram", e.to_string()))?;
        Ok(p)
    }

    pub fn from_partial(p: &PartialGram) -> Self {
        Self {
            size: p.size,
            fixed: p.fixed.iter().map(|(&(i, j), v)| FixedEntry { i, j, value: rat::show(v) }).collect(),
            unknowns: p
                .unknowns
                .iter()
                .map(|(&(i, j), c)| UnknownEntry { i, j, candidates: show_list(c) })
                .collect(),
            rank_bound: p.rank_bound,
            min_bound: rat::show(&p.min_bound),
            coeff_bound: p.coeff_bound,
            linear: p
                .linear
                .iter()
                .map(|c| LinearEntry {
                    terms: c.terms.iter().map(|((i, j), v)| (*i, *j, rat::show(v))).collect(),
                    rhs: rat::show(&c.rhs),
                })
                .collect(),
            row_sums: None,
            generators: p.generators.clone(),
            order: p.order.clone(),
        }
    }
}

pub fn parse_partial_gram(json: &str) -> Result<PartialGram, FormatError> {
    serde_json::from_str::<PartialGramFile>(json)?.to_partial()
}

pub fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| show_list(r)).collect()
}
