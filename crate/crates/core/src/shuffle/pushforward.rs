//! Pushforwards along Grassmannian, flag and projective bundles, in the
//! Chern roots `λ₁, …, λₙ` (slots of vertex 0).

use crate::exactalg::{permute_vars, AlgError, RatFunc, VarId};
use crate::fgl::FormalGroupLaw;
use crate::quiver::{shuffles, shuffles3, DimVector};

use super::ShuffleError;

fn root(j: usize) -> RatFunc {
    RatFunc::lambda(0, j)
}

/// `f / ∏ (λᵢ −_F λⱼ)` over `j` in `lower` and `i` in `upper`.
fn divide_pairs(
    law: &FormalGroupLaw,
    f: &RatFunc,
    pairs: impl Iterator<Item = (usize, usize)>,
) -> Result<(RatFunc, u32), ShuffleError> {
    let mut poly = f.clone();
    let mut lin = RatFunc::one();
    let mut poles = 0;
    for (j, i) in pairs {
        match law {
            FormalGroupLaw::Truncated { .. } => {
                let (l, g) = law.unit_factor(&root(i), &root(j))?;
                poly = law.truncate(&(&poly * &law.unit_inverse(&g)?))?;
                lin = &lin * &l;
                poles += 1;
            }
            _ => poly = poly.div_ref(&law.difference(&root(i), &root(j))?)?,
        }
    }
    Ok((poly.div_ref(&lin)?, poles))
}

fn finish(law: &FormalGroupLaw, f: RatFunc, poles: u32) -> Result<RatFunc, ShuffleError> {
    match law.truncation_order() {
        Some(order) => {
            let p = f
                .as_poly()
                .ok_or_else(|| ShuffleError::PoleNotCancelled(f.to_string()))?;
            Ok(RatFunc::from_poly(p.truncate_degree(order.saturating_sub(poles))))
        }
        None => Ok(f),
    }
}

/// `Σ_{Sh(r, n−r)} σ(f / ∏_{j≤r<i} (λᵢ −_F λⱼ))`.
pub fn grass_pushforward(law: &FormalGroupLaw, f: &RatFunc, r: usize, n: usize) -> Result<RatFunc, ShuffleError> {
    assert!(r <= n, "rank exceeds bundle rank");
    let pairs = (1..=r).flat_map(|j| (r + 1..=n).map(move |i| (j, i)));
    let (summand, poles) = divide_pairs(law, f, pairs)?;
    let sh = shuffles(&DimVector(vec![r as u32]), &DimVector(vec![(n - r) as u32]));
    let total = RatFunc::sum(sh.iter().map(|s| permute_vars(&summand, s)));
    finish(law, total, poles)
}

/// Pushforward from the partial flag bundle with three blocks of sizes
/// `r₁`, `r₂ − r₁`, `n − r₂` to the base, in one step.
pub fn flag_pushforward(
    law: &FormalGroupLaw,
    f: &RatFunc,
    r1: usize,
    r2: usize,
    n: usize,
) -> Result<RatFunc, ShuffleError> {
    assert!(r1 <= r2 && r2 <= n, "flag ranks must increase");
    let block = |x: usize| {
        if x <= r1 {
            0
        } else if x <= r2 {
            1
        } else {
            2
        }
    };
    let pairs = (1..=n).flat_map(|j| (1..=n).filter(move |&i| block(j) < block(i)).map(move |i| (j, i)));
    let (summand, poles) = divide_pairs(law, f, pairs)?;
    let sh = shuffles3(
        &DimVector(vec![r1 as u32]),
        &DimVector(vec![(r2 - r1) as u32]),
        &DimVector(vec![(n - r2) as u32]),
    );
    let total = RatFunc::sum(sh.iter().map(|s| permute_vars(&summand, s)));
    finish(law, total, poles)
}

/// `Σᵢ f(−_F λᵢ) / ∏_{j≠i} (λⱼ −_F λᵢ)` for `f` a function of the
/// parameter `t`.
pub fn proj_pushforward(law: &FormalGroupLaw, f: &RatFunc, t: &VarId, n: usize) -> Result<RatFunc, ShuffleError> {
    let mut terms = Vec::with_capacity(n);
    let mut poles = 0;
    for i in 1..=n {
        let at = f.substitute(t, &law.inverse(&root(i))?).map_err(|e| match e {
            AlgError::DivisionByZero => AlgError::EvaluationPole,
            e => e,
        })?;
        let pairs = (1..=n).filter(|&j| j != i).map(|j| (i, j));
        let (term, k) = divide_pairs(law, &at, pairs)?;
        poles = k;
        terms.push(term);
    }
    finish(law, RatFunc::sum(terms), poles)
}
