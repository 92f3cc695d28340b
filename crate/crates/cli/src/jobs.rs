//! Job execution.  Each job yields a JSON envelope and a status.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use shuffle_core::cartan::{phi_hat, CartanSeries};
use shuffle_core::exactalg::{RatFunc, VarId};
use shuffle_core::fgl::FormalGroupLaw;
use shuffle_core::quiver::{Quiver, WeightCase};
use shuffle_core::serre::{s_direct, s_recursive, SParams, DEFAULT_LIMIT};
use shuffle_core::shuffle::{
    flag_pushforward, fo_homomorphism_check, grass_pushforward, proj_pushforward, spherical_span, ShuffleAlgebra,
    ShuffleElement, Specialization, SphericalLimits,
};
use shuffle_core::yangian::{check_quadratic, check_serre, YangianConfig};

use crate::error::{CliError, Status};
use crate::input::{element_json, parse_expr, DimSpec, ElementJson, ElementSpec, FglSpec, QuiverSpec, VertexRef};

type Subs = BTreeMap<String, String>;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Job {
    Product {
        quiver: QuiverSpec,
        #[serde(default)]
        fgl: FglSpec,
        a: ElementSpec,
        b: ElementSpec,
        #[serde(default)]
        substitute: Subs,
    },
    CohaProduct {
        quiver: QuiverSpec,
        #[serde(default)]
        fgl: FglSpec,
        a: ElementSpec,
        b: ElementSpec,
        #[serde(default)]
        substitute: Subs,
    },
    TwistedProduct {
        quiver: QuiverSpec,
        #[serde(default)]
        fgl: FglSpec,
        a: ElementSpec,
        b: ElementSpec,
        #[serde(default)]
        substitute: Subs,
    },
    Pushforward {
        #[serde(default)]
        fgl: FglSpec,
        kind: PushKind,
        f: String,
        n: usize,
        #[serde(default)]
        r: Option<usize>,
        #[serde(default)]
        r1: Option<usize>,
        #[serde(default)]
        r2: Option<usize>,
        #[serde(default)]
        t: Option<String>,
        #[serde(default)]
        substitute: Subs,
    },
    PhiHat {
        quiver: QuiverSpec,
        #[serde(default)]
        fgl: FglSpec,
        k: VertexRef,
        dim: DimSpec,
        case: u8,
        #[serde(default)]
        order: Option<usize>,
        #[serde(default)]
        substitute: Subs,
    },
    CheckQuadratic {
        quiver: QuiverSpec,
        #[serde(default)]
        k: Option<VertexRef>,
        #[serde(default)]
        l: Option<VertexRef>,
        #[serde(default)]
        hbar: HbarScale,
    },
    CheckSerre {
        quiver: QuiverSpec,
        #[serde(default)]
        k: Option<VertexRef>,
        #[serde(default)]
        l: Option<VertexRef>,
        #[serde(default)]
        hbar: HbarScale,
    },
    SerreTable {
        n_max: u32,
        #[serde(default)]
        limit: Option<u32>,
    },
    SphericalTable {
        quiver: QuiverSpec,
        #[serde(default)]
        fgl: FglSpec,
        max_deg: u32,
        max_dim: DimSpec,
        #[serde(default)]
        twisted: bool,
        #[serde(default)]
        max_words: Option<usize>,
        #[serde(default)]
        max_shuffles: Option<u64>,
        #[serde(default)]
        substitute: Subs,
    },
    FoCheck {
        /// Pairs of Jordan-quiver elements; a built-in set when absent.
        #[serde(default)]
        pairs: Option<Vec<(ElementSpec, ElementSpec)>>,
    },
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum PushKind {
    Grassmannian,
    Flag,
    Projective,
}

/// `t₁ = t₂ = ħ/2` (`half`) or `t₁ = t₂ = ħ` (`full`).
#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum HbarScale {
    #[default]
    Half,
    Full,
}

impl HbarScale {
    fn config(self) -> YangianConfig {
        YangianConfig {
            spec: match self {
                HbarScale::Half => Specialization::HalfHbar,
                HbarScale::Full => Specialization::FullHbar,
            },
            ..YangianConfig::default()
        }
    }
}

/// Command-line overrides.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub substitute: Vec<(String, String)>,
    pub order: Option<usize>,
}

impl Job {
    pub fn name(&self) -> &'static str {
        match self {
            Job::Product { .. } => "product",
            Job::CohaProduct { .. } => "coha-product",
            Job::TwistedProduct { .. } => "twisted-product",
            Job::Pushforward { .. } => "pushforward",
            Job::PhiHat { .. } => "phi-hat",
            Job::CheckQuadratic { .. } => "check-quadratic",
            Job::CheckSerre { .. } => "check-serre",
            Job::SerreTable { .. } => "serre-table",
            Job::SphericalTable { .. } => "spherical-table",
            Job::FoCheck { .. } => "fo-check",
        }
    }
}

/// Substitutions with the parameters `t1`, `t2` split off.
struct Substitution {
    t1: RatFunc,
    t2: RatFunc,
    rest: Vec<(VarId, RatFunc)>,
}

impl Substitution {
    fn new(job: &Subs, cli: &[(String, String)]) -> Result<Self, CliError> {
        let mut all = job.clone();
        for (k, v) in cli {
            all.insert(k.clone(), v.clone());
        }
        let mut out = Substitution {
            t1: RatFunc::param("t1"),
            t2: RatFunc::param("t2"),
            rest: Vec::new(),
        };
        for (k, v) in all {
            let var = VarId::parse(&k).ok_or_else(|| CliError::Input(format!("bad variable name {:?}", k)))?;
            let val = parse_expr(&v)?;
            match k.as_str() {
                "t1" => out.t1 = val,
                "t2" => out.t2 = val,
                _ => out.rest.push((var, val)),
            }
        }
        Ok(out)
    }

    fn apply(&self, f: &RatFunc) -> Result<RatFunc, CliError> {
        if self.rest.is_empty() {
            return Ok(f.clone());
        }
        f.substitute_all(&self.rest)
            .map_err(|e| CliError::Input(format!("substitution: {}", e)))
    }

    fn element(&self, e: &ShuffleElement) -> Result<ShuffleElement, CliError> {
        Ok(ShuffleElement::new(e.v.clone(), self.apply(&e.f)?)?)
    }
}

#[derive(Serialize)]
struct Envelope {
    command: String,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Runs one job; verification failures come back as `Status::Failed` with
/// the full result attached.
pub fn run_job(job: &Job, ov: &Overrides) -> (Value, Status) {
    let (result, status, error) = match execute(job, ov) {
        Ok((v, verified)) => (Some(v), if verified { Status::Ok } else { Status::Failed }, None),
        Err(e) => (None, e.status(), Some(e.to_string())),
    };
    let env = Envelope {
        command: job.name().to_string(),
        status: status.label(),
        result,
        error,
    };
    (serde_json::to_value(env).expect("serializable"), status)
}

/// Runs a job object or an array of jobs.  The status of a batch is the
/// most severe of its members.
pub fn run_value(input: &Value, ov: &Overrides) -> (Value, Status) {
    match input {
        Value::Array(items) => {
            let mut worst = Status::Ok;
            let out: Vec<Value> = items
                .iter()
                .map(|item| {
                    let (v, s) = run_one(item, ov);
                    worst = worst.max(s);
                    v
                })
                .collect();
            (Value::Array(out), worst)
        }
        other => run_one(other, ov),
    }
}

fn run_one(item: &Value, ov: &Overrides) -> (Value, Status) {
    match serde_json::from_value::<Job>(item.clone()) {
        Ok(job) => run_job(&job, ov),
        Err(e) => {
            let command = item
                .get("command")
                .and_then(Value::as_str)
                .unwrap_or("unknown")
                .to_string();
            let env = Envelope {
                command,
                status: Status::Input.label(),
                result: None,
                error: Some(format!("invalid job: {}", e)),
            };
            (serde_json::to_value(env).expect("serializable"), Status::Input)
        }
    }
}

fn text(f: &RatFunc) -> String {
    f.to_string()
}

fn vertex_name(q: &Quiver, k: usize) -> String {
    q.vertices()[k].clone()
}

#[derive(Clone, Copy)]
enum ProductKind {
    Shuffle,
    Coha,
    Twisted,
}

fn execute(job: &Job, ov: &Overrides) -> Result<(Value, bool), CliError> {
    match job {
        Job::Product {
            quiver,
            fgl,
            a,
            b,
            substitute,
        } => product(quiver, fgl, a, b, substitute, ov, ProductKind::Shuffle),
        Job::CohaProduct {
            quiver,
            fgl,
            a,
            b,
            substitute,
        } => product(quiver, fgl, a, b, substitute, ov, ProductKind::Coha),
        Job::TwistedProduct {
            quiver,
            fgl,
            a,
            b,
            substitute,
        } => product(quiver, fgl, a, b, substitute, ov, ProductKind::Twisted),
        Job::Pushforward {
            fgl,
            kind,
            f,
            n,
            r,
            r1,
            r2,
            t,
            substitute,
        } => {
            let law = fgl.build()?;
            let subs = Substitution::new(substitute, &ov.substitute)?;
            let f = parse_expr(f)?;
            let need = |x: &Option<usize>, name: &str| {
                x.ok_or_else(|| CliError::Input(format!("{:?} pushforward needs {:?}", kind, name)))
            };
            let out = match kind {
                PushKind::Grassmannian => {
                    let r = need(r, "r")?;
                    if r > *n {
                        return Err(CliError::Input(format!("r = {} exceeds n = {}", r, n)));
                    }
                    grass_pushforward(&law, &f, r, *n)?
                }
                PushKind::Flag => {
                    let (r1, r2) = (need(r1, "r1")?, need(r2, "r2")?);
                    if !(r1 <= r2 && r2 <= *n) {
                        return Err(CliError::Input("flag ranks must satisfy r1 <= r2 <= n".into()));
                    }
                    flag_pushforward(&law, &f, r1, r2, *n)?
                }
                PushKind::Projective => {
                    let t = t.as_deref().unwrap_or("t");
                    let var = VarId::parse(t).ok_or_else(|| CliError::Input(format!("bad variable {:?}", t)))?;
                    proj_pushforward(&law, &f, &var, *n)?
                }
            };
            Ok((json!({ "value": text(&subs.apply(&out)?) }), true))
        }
        Job::PhiHat {
            quiver,
            fgl,
            k,
            dim,
            case,
            order,
            substitute,
        } => {
            let q = quiver.build()?;
            let law = fgl.build()?;
            let subs = Substitution::new(substitute, &ov.substitute)?;
            let k = k.resolve(&q)?;
            let v = dim.build(&q)?;
            let case = match case {
                1 => WeightCase::Case1,
                2 => WeightCase::Case2,
                c => return Err(CliError::Input(format!("case must be 1 or 2, got {}", c))),
            };
            let order = ov.order.or(*order).unwrap_or(5);
            let s: CartanSeries = phi_hat(&law, &q, k, &v, case, order)?;
            let coeffs: Result<Vec<String>, CliError> = s
                .tail
                .coeffs()
                .iter()
                .map(|c| subs.apply(c).map(|c| text(&c)))
                .collect();
            Ok((
                json!({
                    "vertex": vertex_name(&q, k),
                    "order": order,
                    "coefficients": coeffs?,
                    "leading_is_one": s.c0_is_one(),
                }),
                true,
            ))
        }
        Job::CheckQuadratic { quiver, k, l, hbar } => {
            let q = quiver.build()?;
            let cfg = hbar.config();
            let mut rows = Vec::new();
            let mut all = true;
            for (k, l) in pairs(&q, k, l, true)? {
                let r = check_quadratic(&q, k, l, &cfg)?;
                all &= r.verified();
                rows.push(json!({
                    "k": vertex_name(&q, k),
                    "l": vertex_name(&q, l),
                    "c": r.c,
                    "verified": r.verified(),
                    "witness": text(&r.witness),
                    "mode_failures": r.mode_failures,
                    "coefficient_mismatches": r.coefficient_mismatches,
                }));
            }
            Ok((json!({ "verified": all, "pairs": rows }), all))
        }
        Job::CheckSerre { quiver, k, l, hbar } => {
            let q = quiver.build()?;
            let cfg = hbar.config();
            let mut rows = Vec::new();
            let mut all = true;
            for (k, l) in pairs(&q, k, l, false)? {
                let r = check_serre(&q, k, l, &cfg)?;
                all &= r.verified();
                rows.push(json!({
                    "k": vertex_name(&q, k),
                    "l": vertex_name(&q, l),
                    "a": r.a,
                    "verified": r.verified(),
                    "direct": r.direct.as_ref().map(text),
                    "reduced": r.reduced.as_ref().map(text),
                    "note": r.note,
                }));
            }
            Ok((json!({ "verified": all, "pairs": rows }), all))
        }
        Job::SerreTable { n_max, limit } => serre_table(*n_max, limit.unwrap_or(DEFAULT_LIMIT)),
        Job::SphericalTable {
            quiver,
            fgl,
            max_deg,
            max_dim,
            twisted,
            max_words,
            max_shuffles,
            substitute,
        } => {
            let q = quiver.build()?;
            let subs = Substitution::new(substitute, &ov.substitute)?;
            let alg = ShuffleAlgebra::with_params(fgl.build()?, q.clone(), subs.t1.clone(), subs.t2.clone());
            let d = max_dim.build(&q)?;
            let defaults = SphericalLimits::default();
            let limits = SphericalLimits {
                max_words: max_words.unwrap_or(defaults.max_words),
                max_shuffles: max_shuffles.unwrap_or(defaults.max_shuffles),
            };
            let table = spherical_span(&alg, *max_deg, &d, *twisted, limits)?;
            let mut rows = Vec::with_capacity(table.len());
            for e in &table {
                let word: Vec<(String, u32)> = e.word.iter().map(|&(k, r)| (vertex_name(&q, k), r)).collect();
                rows.push(json!({
                    "word": word,
                    "element": element_json(&subs.element(&e.element)?, &q),
                    "polynomial": e.polynomial,
                }));
            }
            Ok((json!({ "entries": rows }), true))
        }
        Job::FoCheck { pairs } => fo_check(pairs.as_deref()),
    }
}

#[allow(clippy::too_many_arguments)]
fn product(
    quiver: &QuiverSpec,
    fgl: &FglSpec,
    a: &ElementSpec,
    b: &ElementSpec,
    substitute: &Subs,
    ov: &Overrides,
    kind: ProductKind,
) -> Result<(Value, bool), CliError> {
    let q = quiver.build()?;
    let law: FormalGroupLaw = fgl.build()?;
    let subs = Substitution::new(substitute, &ov.substitute)?;
    let (a, b) = (a.build(&q)?, b.build(&q)?);
    let alg = ShuffleAlgebra::with_params(law, q.clone(), subs.t1.clone(), subs.t2.clone());
    let p = match kind {
        ProductKind::Shuffle => alg.product(&a, &b)?,
        ProductKind::Coha => alg.coha_product(&a, &b)?,
        ProductKind::Twisted => alg.twisted_product(&a, &b)?,
    };
    let p = subs.element(&p)?;
    let out: ElementJson = element_json(&p, &q);
    Ok((serde_json::to_value(out).expect("serializable"), true))
}

/// Ordered pairs `(k, l)`: the given one, or all of them (`k ≠ l` unless
/// `diagonal`).
fn pairs(
    q: &Quiver,
    k: &Option<VertexRef>,
    l: &Option<VertexRef>,
    diagonal: bool,
) -> Result<Vec<(usize, usize)>, CliError> {
    match (k, l) {
        (Some(k), Some(l)) => Ok(vec![(k.resolve(q)?, l.resolve(q)?)]),
        (None, None) => {
            let n = q.num_vertices();
            Ok((0..n)
                .flat_map(|k| (0..n).map(move |l| (k, l)))
                .filter(|(k, l)| diagonal || k != l)
                .collect())
        }
        _ => Err(CliError::Input("give both k and l, or neither".into())),
    }
}

fn serre_table(n_max: u32, limit: u32) -> Result<(Value, bool), CliError> {
    if n_max == 0 {
        return Err(CliError::Input("n_max must be positive".into()));
    }
    let mut rows = Vec::new();
    let mut all = true;
    for n in 1..=n_max {
        let sp = SParams::symbolic(n);
        let direct = s_direct(&sp, limit)?;
        let rec = s_recursive(&sp)?;
        let half = SParams::with_b(n, n as i64 - 1, 2);
        let vanishes = s_direct(&half, limit)?.is_zero() && s_recursive(&half)?.is_zero();
        let agree = direct == rec;
        all &= agree && vanishes;
        rows.push(json!({
            "n": n,
            "direct": text(&direct),
            "recursive": text(&rec),
            "agree": agree,
            "lambda_free": true,
            "vanishes_at_half": vanishes,
        }));
    }
    Ok((json!({ "verified": all, "rows": rows }), all))
}

fn default_fo_pairs() -> Vec<(ElementSpec, ElementSpec)> {
    let gens = ["1", "l1_1", "l1_1^-1", "l1_1^2"];
    let el = |s: &str, d: &str| ElementSpec::Short(format!("{}@{}", s, d));
    let mut out = Vec::new();
    for a in gens {
        for b in gens {
            out.push((el(a, "e"), el(b, "e")));
        }
        out.push((el("1", "0"), el(a, "e")));
        out.push((el(a, "e"), el("1", "0")));
    }
    out.push((el("1", "2e"), el("1", "0")));
    out.push((el("l1_1 + l1_2", "2e"), el("1", "0")));
    out
}

fn fo_check(pairs: Option<&[(ElementSpec, ElementSpec)]>) -> Result<(Value, bool), CliError> {
    let q = Quiver::jordan();
    let owned;
    let pairs = match pairs {
        Some(p) => p,
        None => {
            owned = default_fo_pairs();
            &owned
        }
    };
    let mut rows = Vec::new();
    let mut all = true;
    for (a, b) in pairs {
        let (ea, eb) = (a.build(&q)?, b.build(&q)?);
        if ea.v.total() + eb.v.total() > 2 {
            return Err(CliError::Input(
                "fo-check is limited to products in dimension <= 2".into(),
            ));
        }
        let diff = fo_homomorphism_check(&ea, &eb)?;
        all &= diff.is_zero();
        rows.push(json!({
            "a": element_json(&ea, &q),
            "b": element_json(&eb, &q),
            "difference": text(&diff),
        }));
    }
    Ok((json!({ "verified": all, "checks": rows }), all))
}
