//! Conjugation factors `Φ̂ₖ(z, v)` of the Cartan extension, expanded at
//! `z = ∞`.

use thiserror::Error;

use crate::exactalg::{q_frac, AlgError, LaurentTail, RatFunc, VarId};
use crate::fgl::{FglError, FormalGroupLaw};
use crate::quiver::{DimVector, Quiver, QuiverError, WeightCase};
use crate::shuffle::offset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("quiver has an edge loop at vertex index {0} (0-based)")]
    EdgeLoopRejected(usize),
    #[error("law not supported for series expansion: {0}")]
    NotTruncatable(String),
    #[error(transparent)]
    Fgl(#[from] FglError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// `Φ̂ₖ(z, v)` as a truncated series in `z⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanSeries {
    pub vertex: usize,
    pub case: WeightCase,
    pub tail: LaurentTail,
}

impl CartanSeries {
    pub fn c0_is_one(&self) -> bool {
        self.tail.coeff(0).is_one()
    }
}

pub fn z_var() -> VarId {
    VarId::param("z")
}

fn hbar_half() -> RatFunc {
    RatFunc::param("hbar").scale(&q_frac(1, 2))
}

/// `(z −_F λ +_F a) / (z −_F λ −_F b)` expanded to `order` terms.
fn ratio_series(
    law: &FormalGroupLaw,
    lambda: &RatFunc,
    a: &RatFunc,
    b: &RatFunc,
    order: usize,
) -> Result<LaurentTail, CartanError> {
    let z = RatFunc::var(z_var());
    let d = law.difference(&z, lambda)?;
    let num = law.sum(&d, a)?;
    let den = law.difference(&d, b)?;
    let f = num.div_ref(&den)?;
    Ok(LaurentTail::expand_at_infinity(&f, &z_var(), order)?)
}

/// The product formula for `Φ̂ₖ(z, v)`: Case 1 with symbolic `t₁, t₂`,
/// Case 2 with `(c_ki)·ħ/2`.
pub fn phi_hat(
    law: &FormalGroupLaw,
    quiver: &Quiver,
    k: usize,
    v: &DimVector,
    case: WeightCase,
    order: usize,
) -> Result<CartanSeries, CartanError> {
    if let FormalGroupLaw::Truncated { .. } = law {
        return Err(CartanError::NotTruncatable(format!("{:?}", law)));
    }
    quiver.check_dim(v)?;
    let mut tail = LaurentTail::one(order);
    match case {
        WeightCase::Case1 => {
            let (t1, t2) = (RatFunc::param("t1"), RatFunc::param("t2"));
            let t12 = law.sum(&t1, &t2)?;
            for i in 0..quiver.num_vertices() {
                let (aik, aki) = (quiver.arrow_count(i, k) as i32, quiver.arrow_count(k, i) as i32);
                for j in 1..=v.get(i) as usize {
                    let lam = RatFunc::lambda(i, j);
                    if i == k {
                        tail = tail.mul(&ratio_series(law, &lam, &t12, &t12, order)?);
                        continue;
                    }
                    // (z − λ − t₁)^{a_ik} / (z − λ + t₂)^{a_ik}
                    let neg_t1 = law.inverse(&t1)?;
                    let neg_t2 = law.inverse(&t2)?;
                    let s1 = ratio_series(law, &lam, &neg_t1, &neg_t2, order)?;
                    let s2 = ratio_series(law, &lam, &neg_t2, &neg_t1, order)?;
                    for _ in 0..aik {
                        tail = tail.mul(&s1);
                    }
                    for _ in 0..aki {
                        tail = tail.mul(&s2);
                    }
                }
            }
        }
        WeightCase::Case2 => {
            if quiver.has_loop_at(k) {
                return Err(CartanError::EdgeLoopRejected(k));
            }
            for i in 0..quiver.num_vertices() {
                let c = law.multiple(quiver.cartan_entry(k, i), &hbar_half())?;
                if c.is_zero() || v.get(i) == 0 {
                    continue;
                }
                for j in 1..=v.get(i) as usize {
                    let lam = RatFunc::lambda(i, j);
                    tail = tail.mul(&ratio_series(law, &lam, &c, &c, order)?);
                }
            }
        }
    }
    Ok(CartanSeries { vertex: k, case, tail })
}

/// Whether `Φ̂ₖ(z, v₁)·Φ̂ₖ(z, v₂) = Φ̂ₖ(z, v₁+v₂)` modulo `z^{−order}`, with
/// the `λ`'s of `v₂` offset past those of `v₁`.
pub fn phi_hat_multiplicativity_check(
    law: &FormalGroupLaw,
    quiver: &Quiver,
    k: usize,
    v1: &DimVector,
    v2: &DimVector,
    case: WeightCase,
    order: usize,
) -> Result<bool, CartanError> {
    let a = phi_hat(law, quiver, k, v1, case, order)?;
    let b = phi_hat(law, quiver, k, v2, case, order)?;
    let b = b.tail.map(|c| Ok(offset(c, v1)))?;
    let whole = phi_hat(law, quiver, k, &v1.add(v2), case, order)?;
    Ok(a.tail.mul(&b) == whole.tail)
}

/// `[z⁻¹] g·(Φ̂ₖ(z, e_j) − 1) − c_kj·ħ·g` for `g = (λ^{(j)})^s`, additive
/// law, Case 2.  Zero when the commutator relation holds.
pub fn cartan_commutator_leading(
    quiver: &Quiver,
    k: usize,
    j: usize,
    s: u32,
    order: usize,
) -> Result<RatFunc, CartanError> {
    let law = FormalGroupLaw::additive();
    let series = phi_hat(&law, quiver, k, &quiver.unit(j), WeightCase::Case2, order.max(2))?;
    let g = RatFunc::lambda(j, 1).pow(s as i32)?;
    let coeff = &g * series.tail.coeff(1);
    let want = &(&g * &RatFunc::param("hbar")) * &RatFunc::int(quiver.cartan_entry(k, j));
    Ok(&coeff - &want)
}
