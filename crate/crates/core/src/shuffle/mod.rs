//! The generalized shuffle algebra of a quiver over a formal group law.

mod kernel;
pub mod ktheory;
pub mod pushforward;
pub mod spherical;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use thiserror::Error;

use crate::exactalg::{is_symmetric, permute_vars, AlgError, RatFunc, SlotPermutation, VarId};
use crate::fgl::{FglError, FormalGroupLaw};
use crate::quiver::{shuffles, DimVector, Quiver, QuiverError};

pub use kernel::Kernel;
use kernel::KernelBuilder;
pub use ktheory::{
    explicit_kernel_product, fo_embed, fo_homomorphism_check, fo_product, jordan_dual_product, k_theory_product,
    ZConvention,
};
pub use pushforward::{flag_pushforward, grass_pushforward, proj_pushforward};
pub use spherical::{spherical_span, SphericalEntry, SphericalLimits, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShuffleError {
    #[error("pole not cancelled: {0}")]
    PoleNotCancelled(String),
    #[error("element is not symmetric under S_{0}: {1}")]
    NotSymmetric(DimVector, String),
    #[error("variable {0} is outside the slots of dimension vector {1}")]
    SlotOutOfRange(VarId, DimVector),
    #[error("resource limit exceeded: {0}")]
    LimitExceeded(String),
    #[error(transparent)]
    Fgl(#[from] FglError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// An element of `𝒮ℋ_v`: an `𝔖_v`-symmetric function of `λⁱⱼ`
/// (`j ≤ vⁱ`) and parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShuffleElement {
    pub v: DimVector,
    pub f: RatFunc,
}

impl ShuffleElement {
    /// Validates slot ranges and symmetry.
    pub fn new(v: DimVector, f: RatFunc) -> Result<Self, ShuffleError> {
        for var in f.vars() {
            if let Some((i, j)) = var.as_lambda() {
                if j as u32 > v.get(i) || i >= v.len() {
                    return Err(ShuffleError::SlotOutOfRange(var, v));
                }
            }
        }
        if !is_symmetric(&f, v.entries()) {
            return Err(ShuffleError::NotSymmetric(v, f.to_string()));
        }
        Ok(ShuffleElement { v, f })
    }

    pub(crate) fn new_unchecked(v: DimVector, f: RatFunc) -> Self {
        ShuffleElement { v, f }
    }

    /// The unit of `𝒮ℋ₀`.
    pub fn unit(n_vertices: usize) -> Self {
        ShuffleElement::new_unchecked(DimVector::zero(n_vertices), RatFunc::one())
    }

    /// `(λ^{(k)})^r ∈ 𝒮ℋ_{e_k}`.
    pub fn generator(n_vertices: usize, k: usize, r: u32) -> Self {
        let f = RatFunc::lambda(k, 1).pow(r as i32).expect("nonnegative power");
        ShuffleElement::new_unchecked(DimVector::unit(n_vertices, k), f)
    }

    pub fn is_polynomial(&self) -> bool {
        self.f.is_polynomial()
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        ShuffleElement::new_unchecked(self.v.clone(), &self.f * c)
    }

    pub fn add(&self, other: &ShuffleElement) -> Result<Self, ShuffleError> {
        if self.v != other.v {
            return Err(ShuffleError::Quiver(QuiverError::DimMismatch {
                got: other.v.total() as usize,
                want: self.v.total() as usize,
            }));
        }
        Ok(ShuffleElement::new_unchecked(self.v.clone(), &self.f + &other.f))
    }
}

/// How a Chern root is expressed through the slot variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootMap {
    /// `λ` itself.
    Identity,
    /// `λ = 1 − 1/z`: `z` is the tautological line bundle.
    LineBundle,
    /// `λ = 1 − z`: `z` is the dual line bundle.
    Dual,
}

impl RootMap {
    pub fn root(&self, vertex: usize, slot: usize) -> RatFunc {
        let z = RatFunc::lambda(vertex, slot);
        match self {
            RootMap::Identity => z,
            RootMap::LineBundle => &RatFunc::one() - &z.inv().expect("variable is nonzero"),
            RootMap::Dual => &RatFunc::one() - &z,
        }
    }
}

/// Parameter specializations applied as explicit substitution passes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// `t₁ = t₂ = ħ/2`.
    HalfHbar,
    /// `t₁ = t₂ = ħ`.
    FullHbar,
    /// `tᵢ = 1 − 1/sᵢ`.
    KTheory,
}

impl Specialization {
    pub fn values(&self) -> (RatFunc, RatFunc) {
        let h = RatFunc::param("hbar");
        match self {
            Specialization::HalfHbar => {
                let half = h.scale(&crate::exactalg::q_frac(1, 2));
                (half.clone(), half)
            }
            Specialization::FullHbar => (h.clone(), h),
            Specialization::KTheory => {
                let k = |s: &str| &RatFunc::one() - &RatFunc::param(s).inv().unwrap();
                (k("s1"), k("s2"))
            }
        }
    }

    pub fn apply(&self, f: &RatFunc) -> Result<RatFunc, AlgError> {
        let (a, b) = self.values();
        f.substitute_all(&[(VarId::param("t1"), a), (VarId::param("t2"), b)])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum KernelKind {
    Shuffle,
    Coha,
}

type KernelKey = (KernelKind, DimVector, DimVector);

/// A shuffle algebra: quiver, formal group law, torus parameters and root
/// convention.  Kernels are cached per pair of dimension vectors.
pub struct ShuffleAlgebra {
    law: FormalGroupLaw,
    quiver: Quiver,
    t1: RatFunc,
    t2: RatFunc,
    roots: RootMap,
    cache: Mutex<HashMap<KernelKey, Arc<Kernel>>>,
}

impl Clone for ShuffleAlgebra {
    fn clone(&self) -> Self {
        ShuffleAlgebra {
            law: self.law.clone(),
            quiver: self.quiver.clone(),
            t1: self.t1.clone(),
            t2: self.t2.clone(),
            roots: self.roots,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl ShuffleAlgebra {
    /// Symbolic `t₁`, `t₂`, roots are the slot variables themselves.
    pub fn new(law: FormalGroupLaw, quiver: Quiver) -> Self {
        Self::with_params(law, quiver, RatFunc::param("t1"), RatFunc::param("t2"))
    }

    pub fn with_params(law: FormalGroupLaw, quiver: Quiver, t1: RatFunc, t2: RatFunc) -> Self {
        ShuffleAlgebra {
            law,
            quiver,
            t1,
            t2,
            roots: RootMap::Identity,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// The same algebra with `t₁, t₂` fixed by a specialization.
    pub fn specialized(law: FormalGroupLaw, quiver: Quiver, spec: &Specialization) -> Self {
        let (t1, t2) = spec.values();
        Self::with_params(law, quiver, t1, t2)
    }

    pub fn with_roots(mut self, roots: RootMap) -> Self {
        self.roots = roots;
        self.cache = Mutex::new(HashMap::new());
        self
    }

    pub fn law(&self) -> &FormalGroupLaw {
        &self.law
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn params(&self) -> (&RatFunc, &RatFunc) {
        (&self.t1, &self.t2)
    }

    fn builder(&self) -> KernelBuilder<'_> {
        KernelBuilder {
            law: &self.law,
            roots: self.roots,
            t1: &self.t1,
            t2: &self.t2,
        }
    }

    pub fn fac1(&self, v1: &DimVector, v2: &DimVector) -> Result<RatFunc, ShuffleError> {
        self.builder().fac1(v1, v2)?.value()
    }

    pub fn fac2(&self, v1: &DimVector, v2: &DimVector) -> Result<RatFunc, ShuffleError> {
        self.builder().fac2(&self.quiver, v1, v2)?.value()
    }

    fn kernel(&self, kind: KernelKind, v1: &DimVector, v2: &DimVector) -> Result<Arc<Kernel>, ShuffleError> {
        let key = (kind, v1.clone(), v2.clone());
        if let Some(k) = self.cache.lock().unwrap().get(&key) {
            return Ok(k.clone());
        }
        let b = self.builder();
        let k = match kind {
            KernelKind::Shuffle => b.fac1(v1, v2)?.mul(&b.fac2(&self.quiver, v1, v2)?, &self.law)?,
            KernelKind::Coha => b.coha(&self.quiver, v1, v2)?,
        };
        let k = Arc::new(k);
        self.cache.lock().unwrap().insert(key, k.clone());
        Ok(k)
    }

    fn check_elements(&self, a: &ShuffleElement, b: &ShuffleElement) -> Result<(), ShuffleError> {
        self.quiver.check_dim(&a.v)?;
        self.quiver.check_dim(&b.v)?;
        Ok(())
    }

    fn product_with(
        &self,
        kind: KernelKind,
        a: &ShuffleElement,
        b: &ShuffleElement,
    ) -> Result<ShuffleElement, ShuffleError> {
        self.check_elements(a, b)?;
        let v = a.v.add(&b.v);
        let k = self.kernel(kind, &a.v, &b.v)?;
        let numer = self.law.truncate(&(&(&a.f * &offset(&b.f, &a.v)) * &k.poly_part))?;
        let summand = numer.div_ref(&k.pole_part)?;
        let sh = shuffles(&a.v, &b.v);
        let terms: Vec<RatFunc> = if sh.len() >= 6 {
            sh.par_iter().map(|s| permute_vars(&summand, s)).collect()
        } else {
            sh.iter().map(|s| permute_vars(&summand, s)).collect()
        };
        let mut f = RatFunc::sum(terms);
        if let Some(order) = self.law.truncation_order() {
            f = self.law.truncate(&f)?;
            let valid = order.saturating_sub(k.poles);
            f = RatFunc::from_poly(
                f.as_poly()
                    .ok_or_else(|| ShuffleError::PoleNotCancelled(f.to_string()))?
                    .truncate_degree(valid),
            );
        }
        self.check_poles(&f, &v, a, b)?;
        Ok(ShuffleElement::new_unchecked(v, f))
    }

    fn check_poles(
        &self,
        f: &RatFunc,
        v: &DimVector,
        a: &ShuffleElement,
        b: &ShuffleElement,
    ) -> Result<(), ShuffleError> {
        if f.is_polynomial() {
            return Ok(());
        }
        if self.law.is_additive()
            && self.roots == RootMap::Identity
            && a.is_polynomial()
            && b.is_polynomial()
            && self.t1.is_polynomial()
            && self.t2.is_polynomial()
        {
            return Err(ShuffleError::PoleNotCancelled(f.to_string()));
        }
        if let Some(pair) = diagonal_pole(f, v) {
            return Err(ShuffleError::PoleNotCancelled(format!(
                "{} vanishes on {}",
                f.den(),
                pair
            )));
        }
        Ok(())
    }

    /// The shuffle product `Σ_{Sh(v₁,v₂)} σ(f₁·f₂·fac₁·fac₂)`.
    pub fn product(&self, a: &ShuffleElement, b: &ShuffleElement) -> Result<ShuffleElement, ShuffleError> {
        self.product_with(KernelKind::Shuffle, a, b)
    }

    /// `(−1)^{⟨v₂, C̄v₁⟩+1}` times the shuffle product.
    pub fn twisted_product(&self, a: &ShuffleElement, b: &ShuffleElement) -> Result<ShuffleElement, ShuffleError> {
        let p = self.product(a, b)?;
        Ok(if self.quiver.twist_sign(&a.v, &b.v) < 0 {
            ShuffleElement::new_unchecked(p.v, -p.f)
        } else {
            p
        })
    }

    /// The formal CoHA product.
    pub fn coha_product(&self, a: &ShuffleElement, b: &ShuffleElement) -> Result<ShuffleElement, ShuffleError> {
        self.product_with(KernelKind::Coha, a, b)
    }

    /// Left-to-right product of several elements.
    pub fn product_many(&self, elems: &[ShuffleElement], twisted: bool) -> Result<ShuffleElement, ShuffleError> {
        let mut acc = ShuffleElement::unit(self.quiver.num_vertices());
        for (i, e) in elems.iter().enumerate() {
            acc = if i == 0 {
                e.clone()
            } else if twisted {
                self.twisted_product(&acc, e)?
            } else {
                self.product(&acc, e)?
            };
        }
        Ok(acc)
    }
}

/// `f₂` with `λⁱₜ ↦ λⁱ_{t+v₁ⁱ}`.
pub fn offset(f2: &RatFunc, v1: &DimVector) -> RatFunc {
    f2.rename_injective(&|var: &VarId| match var.as_lambda() {
        Some((i, t)) => VarId::lambda(i, t + v1.get(i) as usize),
        None => var.clone(),
    })
}

/// A same-vertex diagonal `λⁱₛ = λⁱₜ` on which the denominator of `f`
/// vanishes, if any.
pub fn diagonal_pole(f: &RatFunc, v: &DimVector) -> Option<String> {
    let factors: Vec<crate::exactalg::Poly> = match f.den_factors() {
        Some(fs) => fs.iter().map(|(p, _)| p.clone()).collect(),
        None => vec![f.den().clone()],
    };
    for (i, &n) in v.entries().iter().enumerate() {
        for s in 1..=n as usize {
            for t in s + 1..=n as usize {
                let (ls, lt) = (VarId::lambda(i, s), VarId::lambda(i, t));
                for p in &factors {
                    if !p.contains_var(&lt) {
                        continue;
                    }
                    let q = p.rename(&|x: &VarId| if *x == lt { ls.clone() } else { x.clone() });
                    if q.is_zero() {
                        return Some(format!("{} = {}", ls, lt));
                    }
                }
            }
        }
    }
    None
}

/// Applies `σ` to an element's function (convenience for tests).
pub fn act(e: &ShuffleElement, sigma: &SlotPermutation) -> ShuffleElement {
    ShuffleElement::new_unchecked(e.v.clone(), permute_vars(&e.f, sigma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_ratfunc;

    fn p(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn additive(q: Quiver) -> ShuffleAlgebra {
        ShuffleAlgebra::new(FormalGroupLaw::additive(), q)
    }

    #[test]
    fn fac1_examples() {
        let alg = additive(Quiver::a1());
        let e = DimVector(vec![1]);
        assert_eq!(alg.fac1(&e, &e).unwrap(), p("(l1_1 - l1_2 + t1 + t2)/(l1_2 - l1_1)"));
        assert!(alg.fac1(&DimVector(vec![0]), &e).unwrap().is_one());
    }

    #[test]
    fn fac1_k_theory_matches_closed_factor() {
        let alg = ShuffleAlgebra::specialized(
            FormalGroupLaw::multiplicative(RatFunc::one()),
            Quiver::jordan(),
            &Specialization::KTheory,
        )
        .with_roots(RootMap::LineBundle);
        let e = DimVector(vec![1]);
        let want = p("(1 - l1_2/(l1_1*s1*s2))/(1 - l1_1/l1_2)");
        assert_eq!(alg.fac1(&e, &e).unwrap(), want);
    }

    #[test]
    fn fac2_examples() {
        let e = DimVector(vec![1, 0]);
        let f = DimVector(vec![0, 1]);
        assert!(additive(Quiver::from_edges(2, &[])).fac2(&e, &f).unwrap().is_one());
        assert_eq!(additive(Quiver::a2()).fac2(&e, &f).unwrap(), p("l2_1 - l1_1 + t1"));
        assert_eq!(additive(Quiver::a2()).fac2(&f, &e).unwrap(), p("l1_1 - l2_1 + t2"));
        let q = Quiver::kronecker(3).with_case2_weights();
        let alg = ShuffleAlgebra::specialized(FormalGroupLaw::additive(), q, &Specialization::HalfHbar);
        let want = p("(l2_1 - l1_1 + 3*hbar/2)*(l2_1 - l1_1 + hbar/2)*(l2_1 - l1_1 - hbar/2)");
        assert_eq!(alg.fac2(&e, &f).unwrap(), want);
    }

    #[test]
    fn a1_unit_square() {
        let alg = additive(Quiver::a1());
        let one = ShuffleElement::generator(1, 0, 0);
        let r = alg.product(&one, &one).unwrap();
        assert_eq!(r.v, DimVector(vec![2]));
        assert_eq!(r.f, RatFunc::int(-2));
        assert_eq!(alg.twisted_product(&one, &one).unwrap().f, RatFunc::int(-2));
    }

    #[test]
    fn unit_is_neutral() {
        let alg = additive(Quiver::a2());
        let x = ShuffleElement::new(DimVector(vec![2, 1]), p("l1_1*l1_2 + l2_1^3")).unwrap();
        let u = ShuffleElement::unit(2);
        assert_eq!(alg.product(&x, &u).unwrap(), x);
        assert_eq!(alg.product(&u, &x).unwrap(), x);
    }

    #[test]
    fn a2_single_shuffle() {
        let alg = additive(Quiver::a2());
        let a = ShuffleElement::generator(2, 0, 0);
        let b = ShuffleElement::generator(2, 1, 0);
        assert_eq!(alg.product(&a, &b).unwrap().f, p("l2_1 - l1_1 + t1"));
    }

    #[test]
    fn jordan_twisted_sign() {
        let alg = additive(Quiver::jordan());
        let one = ShuffleElement::generator(1, 0, 0);
        let plain = alg.product(&one, &one).unwrap();
        let tw = alg.twisted_product(&one, &one).unwrap();
        assert_eq!(tw.f, -plain.f);
    }

    #[test]
    fn coha_examples() {
        let alg = additive(Quiver::jordan());
        let one = ShuffleElement::generator(1, 0, 0);
        assert_eq!(alg.coha_product(&one, &one).unwrap().f, RatFunc::int(2));
        let x = ShuffleElement::generator(1, 0, 3);
        assert_eq!(alg.coha_product(&x, &ShuffleElement::unit(1)).unwrap(), x);
    }

    #[test]
    fn rejects_asymmetric_elements() {
        let r = ShuffleElement::new(DimVector(vec![2]), p("l1_1"));
        assert!(matches!(r, Err(ShuffleError::NotSymmetric(..))));
        let r = ShuffleElement::new(DimVector(vec![1]), p("l1_2"));
        assert!(matches!(r, Err(ShuffleError::SlotOutOfRange(..))));
    }

    #[test]
    fn diagonal_pole_detection() {
        let v = DimVector(vec![2]);
        assert!(diagonal_pole(&p("1/(l1_1 - l1_2)"), &v).is_some());
        assert!(diagonal_pole(&p("1/(1 - l1_2)"), &v).is_none());
    }

    #[test]
    fn truncated_law_with_no_corrections_matches_additive() {
        let law = FormalGroupLaw::truncated(8, []).unwrap();
        let alg = ShuffleAlgebra::new(law, Quiver::a1());
        let add = additive(Quiver::a1());
        let x = ShuffleElement::generator(1, 0, 1);
        let y = ShuffleElement::generator(1, 0, 2);
        assert_eq!(alg.product(&x, &y).unwrap().f, add.product(&x, &y).unwrap().f);
    }

    #[test]
    fn truncated_multiplicative_agrees_at_low_degree() {
        // F_m truncated at order N agrees with F_m up to degree N - poles
        let law = FormalGroupLaw::truncated(6, [((1, 1), crate::exactalg::q_int(-1))]).unwrap();
        let alg = ShuffleAlgebra::new(law, Quiver::a1());
        let one = ShuffleElement::generator(1, 0, 0);
        let r = alg.product(&one, &one).unwrap();
        assert!(r.f.is_polynomial());
        assert!(is_symmetric(&r.f, &[2]));
        // degree-0 part is the additive answer
        assert_eq!(r.f.num().constant_term(), crate::exactalg::q_int(-2));
    }
}
