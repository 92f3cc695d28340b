//! The raising half of the Yangian inside the twisted shuffle algebra:
//! `x_{k,r} ↦ (λ^{(k)})^r`, additive law, Case-2 weights.
//!
//! The quadratic relation is checked on generating functions
//! `x_k(u) ↦ ħ/(u − λ^{(k)})` as an identity of rational functions in
//! `u`, `v` and the `λ`'s, and again mode by mode.

use thiserror::Error;

use crate::exactalg::{q_frac, LaurentTail, RatFunc, VarId};
use crate::fgl::FormalGroupLaw;
use crate::quiver::{DimVector, Quiver};
use crate::serre::{s_direct, SParams, SerreError};
use crate::shuffle::{ShuffleAlgebra, ShuffleElement, ShuffleError, Specialization};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YangianError {
    #[error("quiver has an edge loop at vertex index {0} (0-based)")]
    EdgeLoopRejected(usize),
    #[error("vertex {0} out of range")]
    UnknownVertex(usize),
    #[error("power {0} outside 1..=5")]
    PowerOutOfRange(u32),
    #[error(transparent)]
    Shuffle(#[from] ShuffleError),
    #[error(transparent)]
    Serre(#[from] SerreError),
    #[error(transparent)]
    Alg(#[from] crate::exactalg::AlgError),
}

/// `t₁ = t₂ = ħ/2` by default; `FullHbar` reruns every check at `t₁ = t₂ = ħ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YangianConfig {
    pub spec: Specialization,
    /// Largest mode index used by the mode-by-mode check.
    pub max_mode: u32,
}

impl Default for YangianConfig {
    fn default() -> Self {
        YangianConfig {
            spec: Specialization::HalfHbar,
            max_mode: 2,
        }
    }
}

/// A word `x_{k₁,r₁} ⋯ x_{kₘ,rₘ}` in the raising generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    pub letters: Vec<(usize, u32)>,
}

impl GeneratorWord {
    pub fn new(letters: Vec<(usize, u32)>) -> Self {
        GeneratorWord { letters }
    }

    pub fn dim(&self, n_vertices: usize) -> DimVector {
        let mut d = vec![0u32; n_vertices];
        for &(k, _) in &self.letters {
            d[k] += 1;
        }
        DimVector(d)
    }

    /// Twisted product of the images `(λ^{(k)})^r`, left to right.
    pub fn image(&self, alg: &ShuffleAlgebra) -> Result<ShuffleElement, YangianError> {
        let n = alg.quiver().num_vertices();
        let gens: Vec<ShuffleElement> = self
            .letters
            .iter()
            .map(|&(k, r)| ShuffleElement::generator(n, k, r))
            .collect();
        Ok(alg.product_many(&gens, true)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticReport {
    pub k: usize,
    pub l: usize,
    pub c: i64,
    pub lhs: RatFunc,
    pub rhs: RatFunc,
    /// Numerator of `lhs − rhs`.
    pub witness: RatFunc,
    /// Mode pairs `(r, s)` whose relation failed.
    pub mode_failures: Vec<(u32, u32)>,
    /// Mode pairs where the generating-function coefficient disagreed with
    /// the direct product of generators.
    pub coefficient_mismatches: Vec<(u32, u32)>,
}

impl QuadraticReport {
    pub fn verified(&self) -> bool {
        self.witness.is_zero() && self.mode_failures.is_empty() && self.coefficient_mismatches.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreReport {
    pub k: usize,
    pub l: usize,
    /// `a = −c_kl`.
    pub a: i64,
    /// `Σ_p (−1)^p C(a+1,p) x_k^{*p} * x_l * x_k^{*(a+1−p)}`; `None` when `a = 0`.
    pub direct: Option<RatFunc>,
    /// `𝕊(a+1, a/2, ħ)`; `None` when `a = 0`.
    pub reduced: Option<RatFunc>,
    pub note: Option<String>,
}

impl SerreReport {
    pub fn verified(&self) -> bool {
        self.direct.as_ref().map_or(true, RatFunc::is_zero) && self.reduced.as_ref().map_or(true, RatFunc::is_zero)
    }
}

fn u_var() -> VarId {
    VarId::param("u")
}

fn v_var() -> VarId {
    VarId::param("v")
}

fn check_quiver(q: &Quiver, vertices: &[usize]) -> Result<(), YangianError> {
    for &k in vertices {
        if k >= q.num_vertices() {
            return Err(YangianError::UnknownVertex(k));
        }
    }
    match (0..q.num_vertices()).find(|&k| q.has_loop_at(k)) {
        Some(k) => Err(YangianError::EdgeLoopRejected(k)),
        None => Ok(()),
    }
}

/// The twisted additive shuffle algebra with Case-2 weights.
pub fn yangian_algebra(q: &Quiver, cfg: &YangianConfig) -> ShuffleAlgebra {
    ShuffleAlgebra::specialized(FormalGroupLaw::additive(), q.with_case2_weights(), &cfg.spec)
}

/// `h/(w − λ^{(k)})` in `𝒮ℋ_{e_k}`.
pub fn generating_element(n: usize, k: usize, w: &VarId, h: &RatFunc) -> ShuffleElement {
    let f = h
        .div_ref(&(&RatFunc::var(w.clone()) - &RatFunc::lambda(k, 1)))
        .expect("nonzero");
    ShuffleElement::new(DimVector::unit(n, k), f).expect("single slot")
}

/// The Yangian parameter `t₁ + t₂`: `ħ` under the default specialization.
fn hbar_unit(alg: &ShuffleAlgebra) -> RatFunc {
    let (t1, t2) = alg.params();
    t1 + t2
}

/// Checks
/// `(u−v−ħc/2) x_k(u)*x_l(v) − (u−v+ħc/2) x_l(v)*x_k(u)
///  = ħ(1_k*x_l(v) − x_l(v)*1_k − x_k(u)*1_l + 1_l*x_k(u))`
/// and its mode form for `r, s ≤ max_mode`.
pub fn check_quadratic(q: &Quiver, k: usize, l: usize, cfg: &YangianConfig) -> Result<QuadraticReport, YangianError> {
    check_quiver(q, &[k, l])?;
    let alg = yangian_algebra(q, cfg);
    let n = q.num_vertices();
    let c = q.cartan_entry(k, l);
    let h = hbar_unit(&alg);
    let shift = (&h * &RatFunc::int(c)).scale(&q_frac(1, 2));
    let (u, v) = (RatFunc::var(u_var()), RatFunc::var(v_var()));
    let uv = &u - &v;

    let xu = generating_element(n, k, &u_var(), &h);
    let xv = generating_element(n, l, &v_var(), &h);
    let (one_k, one_l) = (ShuffleElement::generator(n, k, 0), ShuffleElement::generator(n, l, 0));

    let kl = alg.twisted_product(&xu, &xv)?;
    let lk = alg.twisted_product(&xv, &xu)?;
    let lhs = &(&(&uv - &shift) * &kl.f) - &(&(&uv + &shift) * &lk.f);
    let comm = &(&alg.twisted_product(&one_k, &xv)?.f - &alg.twisted_product(&xv, &one_k)?.f)
        - &(&alg.twisted_product(&xu, &one_l)?.f - &alg.twisted_product(&one_l, &xu)?.f);
    let rhs = &h * &comm;
    let witness = RatFunc::from_poly((&lhs - &rhs).num().clone());

    let m = cfg.max_mode;
    let x = |vert: usize, r: u32| ShuffleElement::generator(n, vert, r);
    let mut mode_failures = Vec::new();
    for r in 0..=m {
        for s in 0..=m {
            let p = |a: &ShuffleElement, b: &ShuffleElement| alg.twisted_product(a, b).map(|e| e.f);
            let bracket =
                |a: &ShuffleElement, b: &ShuffleElement| -> Result<RatFunc, ShuffleError> { Ok(&p(a, b)? - &p(b, a)?) };
            let left = &bracket(&x(k, r + 1), &x(l, s))? - &bracket(&x(k, r), &x(l, s + 1))?;
            let anti = &p(&x(k, r), &x(l, s))? + &p(&x(l, s), &x(k, r))?;
            if !(&left - &(&shift * &anti)).is_zero() {
                mode_failures.push((r, s));
            }
        }
    }

    // [u^{−r−1} v^{−s−1}] x_k(u)*x_l(v) = ħ² x_{k,r}*x_{l,s}
    let mut coefficient_mismatches = Vec::new();
    let order = m as usize + 2;
    let in_u = LaurentTail::expand_at_infinity(&kl.f, &u_var(), order)?;
    let h2 = &h * &h;
    for r in 0..=m {
        let in_v = LaurentTail::expand_at_infinity(in_u.coeff(r as usize + 1), &v_var(), order)?;
        for s in 0..=m {
            let direct = alg.twisted_product(&x(k, r), &x(l, s))?.f;
            if in_v.coeff(s as usize + 1) != &(&h2 * &direct) {
                coefficient_mismatches.push((r, s));
            }
        }
    }

    Ok(QuadraticReport {
        k,
        l,
        c,
        lhs,
        rhs,
        witness,
        mode_failures,
        coefficient_mismatches,
    })
}

/// `x^{*n}` for `x = x_{k,0}`, twisted.
pub fn twisted_power(alg: &ShuffleAlgebra, k: usize, n: u32) -> Result<ShuffleElement, YangianError> {
    GeneratorWord::new(vec![(k, 0); n as usize]).image(alg)
}

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `Σ_p (−1)^p C(a+1,p) x_{k,0}^{*p} * x_{l,0} * x_{k,0}^{*(a+1−p)}` directly,
/// and `𝕊(a+1, a/2, ħ)`.
pub fn check_serre(q: &Quiver, k: usize, l: usize, cfg: &YangianConfig) -> Result<SerreReport, YangianError> {
    check_quiver(q, &[k, l])?;
    let a = -q.cartan_entry(k, l);
    if k == l || a <= 0 {
        return Ok(SerreReport {
            k,
            l,
            a: a.max(0),
            direct: None,
            reduced: None,
            note: Some("vertices not adjacent: relation is vacuous".into()),
        });
    }
    let alg = yangian_algebra(q, cfg);
    let mut terms = Vec::new();
    for p in 0..=a + 1 {
        let mut word = vec![(k, 0u32); p as usize];
        word.push((l, 0));
        word.extend(std::iter::repeat((k, 0u32)).take((a + 1 - p) as usize));
        let e = GeneratorWord::new(word).image(&alg)?;
        let sign = if p % 2 == 0 { 1 } else { -1 };
        terms.push(&e.f * &RatFunc::int(sign * binom(a + 1, p)));
    }
    let direct = RatFunc::sum(terms);
    let sp = SParams {
        n: (a + 1) as u32,
        b: RatFunc::from_q(q_frac(a, 2)),
        hbar: hbar_unit(&alg),
    };
    let reduced = s_direct(&sp, crate::serre::DEFAULT_LIMIT)?;
    Ok(SerreReport {
        k,
        l,
        a,
        direct: Some(direct),
        reduced: Some(reduced),
        note: None,
    })
}

/// The closed form `(−1)^{n(n+1)/2−1} Σ_{σ∈𝔖ₙ} σ(∏_{i<j} (λᵢⱼ + ħ)/λⱼᵢ)`
/// with `ħ = t₁ + t₂`.
pub fn power_closed_form(alg: &ShuffleAlgebra, k: usize, n: u32) -> RatFunc {
    let h = hbar_unit(alg);
    let lam = |i: u32| RatFunc::lambda(k, i as usize);
    let mut base = RatFunc::one();
    for i in 1..=n {
        for j in i + 1..=n {
            let num = &(&lam(i) - &lam(j)) + &h;
            base = &base * &num.div_ref(&(&lam(j) - &lam(i))).expect("distinct variables");
        }
    }
    let group = crate::exactalg::symmetric_group(alg.quiver().num_vertices(), k, n as usize);
    let total = RatFunc::sum(group.iter().map(|s| crate::exactalg::permute_vars(&base, s)));
    let e = (n * (n + 1) / 2) as i64 - 1;
    if e % 2 == 0 {
        total
    } else {
        -total
    }
}

/// Whether `x_{k,0}^{*n}` equals its closed form, `1 ≤ n ≤ 5`.
pub fn power_formula_check(q: &Quiver, k: usize, n: u32, cfg: &YangianConfig) -> Result<bool, YangianError> {
    if !(1..=5).contains(&n) {
        return Err(YangianError::PowerOutOfRange(n));
    }
    check_quiver(q, &[k])?;
    let alg = yangian_algebra(q, cfg);
    Ok(twisted_power(&alg, k, n)?.f == power_closed_form(&alg, k, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_ratfunc;

    fn cfg() -> YangianConfig {
        YangianConfig::default()
    }

    #[test]
    fn quadratic_a2_all_pairs() {
        let q = Quiver::a2();
        for k in 0..2 {
            for l in 0..2 {
                let r = check_quadratic(&q, k, l, &cfg()).unwrap();
                assert!(r.verified(), "pair ({}, {}): {:?}", k, l, r);
            }
        }
    }

    #[test]
    fn quadratic_sides_match_reduced_form() {
        // after clearing the common factor, both sides are
        // aħ(u − v + λ^{(l)} − λ^{(k)})/((u − λ^{(k)})(v − λ^{(l)})), a = 1
        let r = check_quadratic(&Quiver::a2(), 0, 1, &cfg()).unwrap();
        let want = parse_ratfunc("hbar^2*hbar*(u - v + l2_1 - l1_1)/((u - l1_1)*(v - l2_1))").unwrap();
        assert_eq!(r.rhs, r.lhs);
        assert_eq!(r.lhs, -want);
    }

    #[test]
    fn quadratic_same_vertex_value() {
        let r = check_quadratic(&Quiver::a2(), 0, 0, &cfg()).unwrap();
        let want = parse_ratfunc("2*hbar^3/(l1_2 - l1_1)*(1/(v - l1_2) - 1/(v - l1_1) - 1/(u - l1_1) + 1/(u - l1_2))")
            .unwrap();
        assert_eq!(r.lhs, want);
    }

    #[test]
    fn quadratic_disconnected() {
        let q = Quiver::from_edges(2, &[]);
        assert!(check_quadratic(&q, 0, 1, &cfg()).unwrap().verified());
    }

    #[test]
    fn serre_a1_a2() {
        let r = check_serre(&Quiver::a2(), 0, 1, &cfg()).unwrap();
        assert_eq!(r.a, 1);
        assert!(r.verified());
        let r = check_serre(&Quiver::kronecker(2), 0, 1, &cfg()).unwrap();
        assert_eq!(r.a, 2);
        assert!(r.verified());
    }

    #[test]
    fn serre_vacuous_when_not_adjacent() {
        let r = check_serre(&Quiver::a3(), 0, 2, &cfg()).unwrap();
        assert!(r.direct.is_none() && r.verified() && r.note.is_some());
    }

    #[test]
    fn power_formula() {
        let q = Quiver::a1();
        for n in 1..=4 {
            assert!(power_formula_check(&q, 0, n, &cfg()).unwrap(), "n = {}", n);
        }
        let alg = yangian_algebra(&q, &cfg());
        assert_eq!(twisted_power(&alg, 0, 2).unwrap().f, RatFunc::int(-2));
    }

    #[test]
    fn edge_loops_rejected() {
        let j = Quiver::jordan();
        assert!(matches!(
            check_quadratic(&j, 0, 0, &cfg()),
            Err(YangianError::EdgeLoopRejected(0))
        ));
        assert!(matches!(
            check_serre(&j, 0, 0, &cfg()),
            Err(YangianError::EdgeLoopRejected(0))
        ));
    }

    #[test]
    fn full_hbar_switch() {
        let c = YangianConfig {
            spec: Specialization::FullHbar,
            ..cfg()
        };
        assert!(check_quadratic(&Quiver::a2(), 0, 1, &c).unwrap().verified());
    }
}
