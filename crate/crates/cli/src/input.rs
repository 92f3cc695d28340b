//! JSON job schema and conversion into core types.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use shuffle_core::exactalg::{parse_ratfunc, parse_rational, RatFunc};
use shuffle_core::fgl::FormalGroupLaw;
use shuffle_core::quiver::{Arrow, DimVector, Quiver};
use shuffle_core::shuffle::ShuffleElement;

use crate::error::CliError;

/// A preset name (`A1`, `A2`, `A3`, `Jordan`, `Kronecker-<a>`) or an
/// explicit quiver.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum QuiverSpec {
    Preset(String),
    Explicit(ExplicitQuiver),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub out: String,
    pub inc: String,
    #[serde(default = "one")]
    pub m_h: i64,
    #[serde(default = "one")]
    pub m_hstar: i64,
}

fn one() -> i64 {
    1
}

impl QuiverSpec {
    pub fn build(&self) -> Result<Quiver, CliError> {
        match self {
            QuiverSpec::Preset(name) => Ok(Quiver::preset(name)?),
            QuiverSpec::Explicit(q) => {
                let index = |name: &str| {
                    q.vertices
                        .iter()
                        .position(|v| v == name)
                        .ok_or_else(|| CliError::Input(format!("arrow mentions unknown vertex {:?}", name)))
                };
                let mut arrows = Vec::with_capacity(q.arrows.len());
                for a in &q.arrows {
                    arrows.push(Arrow {
                        out: index(&a.out)?,
                        inc: index(&a.inc)?,
                        m_h: a.m_h,
                        m_hstar: a.m_hstar,
                    });
                }
                Ok(Quiver::new(q.vertices.clone(), arrows)?)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum FglKind {
    Additive,
    Multiplicative,
    Truncated,
}

/// `"additive"`, `"multiplicative"` (`β = 1`), or the full object.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum FglSpec {
    Name(FglKind),
    Full(FglObject),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FglObject {
    pub kind: FglKind,
    #[serde(default)]
    pub beta: Option<String>,
    #[serde(default)]
    pub order: Option<u32>,
    /// `[i, j, "a_ij"]` for the terms `a_ij xⁱ yʲ`, `i, j ≥ 1`.
    #[serde(default)]
    pub coeffs: Option<Vec<(u32, u32, String)>>,
}

impl Default for FglSpec {
    fn default() -> Self {
        FglSpec::Name(FglKind::Additive)
    }
}

impl FglSpec {
    pub fn build(&self) -> Result<FormalGroupLaw, CliError> {
        let obj = match self {
            FglSpec::Name(kind) => FglObject {
                kind: *kind,
                beta: None,
                order: None,
                coeffs: None,
            },
            FglSpec::Full(o) => o.clone(),
        };
        match obj.kind {
            FglKind::Additive => Ok(FormalGroupLaw::additive()),
            FglKind::Multiplicative => {
                let beta = match &obj.beta {
                    Some(b) => parse_expr(b)?,
                    None => RatFunc::one(),
                };
                Ok(FormalGroupLaw::multiplicative(beta))
            }
            FglKind::Truncated => {
                let order = obj
                    .order
                    .ok_or_else(|| CliError::Input("truncated law needs \"order\"".into()))?;
                let mut coeffs = Vec::new();
                for (i, j, c) in obj.coeffs.unwrap_or_default() {
                    let q = parse_rational(&c).map_err(|e| CliError::Input(format!("coefficient {:?}: {}", c, e)))?;
                    coeffs.push(((i, j), q));
                }
                Ok(FormalGroupLaw::truncated(order, coeffs)?)
            }
        }
    }
}

/// `{"dim": {"1": 2}, "num": "...", "den": "..."}` or `"expr@dim"`.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ElementSpec {
    Short(String),
    Full(ElementJson),
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub dim: BTreeMap<String, u32>,
    pub num: String,
    #[serde(default = "one_text")]
    pub den: String,
}

fn one_text() -> String {
    "1".into()
}

pub fn parse_expr(s: &str) -> Result<RatFunc, CliError> {
    parse_ratfunc(s).map_err(|e| CliError::Input(format!("expression {:?}: {}", s, e)))
}

/// A vertex as a 1-based index or a name.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum VertexRef {
    Index(usize),
    Name(String),
}

impl VertexRef {
    pub fn resolve(&self, q: &Quiver) -> Result<usize, CliError> {
        match self {
            VertexRef::Index(i) if (1..=q.num_vertices()).contains(i) => Ok(i - 1),
            VertexRef::Index(i) => Err(CliError::Input(format!("vertex index {} out of range", i))),
            VertexRef::Name(n) => Ok(q.vertex_index(n)?),
        }
    }
}

/// Dimension vectors: `"e"` (one-vertex quivers), `"2e1+e2"`, `"(1,2)"`, or
/// a map from vertex names to entries.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum DimSpec {
    Text(String),
    Map(BTreeMap<String, u32>),
}

impl DimSpec {
    pub fn build(&self, q: &Quiver) -> Result<DimVector, CliError> {
        match self {
            DimSpec::Text(s) => parse_dim(s, q),
            DimSpec::Map(m) => dim_from_map(m, q),
        }
    }
}

fn dim_from_map(m: &BTreeMap<String, u32>, q: &Quiver) -> Result<DimVector, CliError> {
    let mut d = vec![0; q.num_vertices()];
    for (name, &x) in m {
        d[q.vertex_index(name)?] = x;
    }
    Ok(DimVector(d))
}

pub fn parse_dim(s: &str, q: &Quiver) -> Result<DimVector, CliError> {
    let n = q.num_vertices();
    let s = s.trim();
    let bad = || CliError::Input(format!("bad dimension vector {:?}", s));
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        let entries: Result<Vec<u32>, _> = inner.split(',').map(|x| x.trim().parse::<u32>()).collect();
        let entries = entries.map_err(|_| bad())?;
        if entries.len() != n {
            return Err(CliError::Input(format!("dimension vector {:?} needs {} entries", s, n)));
        }
        return Ok(DimVector(entries));
    }
    if s == "0" {
        return Ok(DimVector::zero(n));
    }
    let mut d = vec![0u32; n];
    for term in s.split('+') {
        let term = term.trim();
        let pos = term.find('e').ok_or_else(bad)?;
        let coef = match &term[..pos] {
            "" => 1,
            c => c.parse::<u32>().map_err(|_| bad())?,
        };
        let vertex = match &term[pos + 1..] {
            "" if n == 1 => 0,
            "" => return Err(CliError::Input(format!("{:?}: bare e needs a one-vertex quiver", s))),
            idx => {
                let k: usize = idx.trim_start_matches('_').parse().map_err(|_| bad())?;
                if !(1..=n).contains(&k) {
                    return Err(CliError::Input(format!("{:?}: vertex {} out of range", s, k)));
                }
                k - 1
            }
        };
        d[vertex] += coef;
    }
    Ok(DimVector(d))
}

impl ElementSpec {
    pub fn build(&self, q: &Quiver) -> Result<ShuffleElement, CliError> {
        let (dim, f) = match self {
            ElementSpec::Short(s) => {
                let (expr, dim) = s
                    .rsplit_once('@')
                    .ok_or_else(|| CliError::Input(format!("element {:?} lacks \"@dim\"", s)))?;
                (parse_dim(dim, q)?, parse_expr(expr)?)
            }
            ElementSpec::Full(e) => {
                let num = parse_expr(&e.num)?;
                let den = parse_expr(&e.den)?;
                let f = num
                    .div_ref(&den)
                    .map_err(|_| CliError::Input("zero denominator".into()))?;
                (dim_from_map(&e.dim, q)?, f)
            }
        };
        q.check_dim(&dim)?;
        Ok(ShuffleElement::new(dim, f)?)
    }
}

/// The canonical JSON form of an element.
pub fn element_json(e: &ShuffleElement, q: &Quiver) -> ElementJson {
    let dim = q
        .vertices()
        .iter()
        .enumerate()
        .filter(|(i, _)| e.v.get(*i) > 0)
        .map(|(i, name)| (name.clone(), e.v.get(i)))
        .collect();
    ElementJson {
        dim,
        num: e.f.num().to_string(),
        den: e.f.den().to_string(),
    }
}
