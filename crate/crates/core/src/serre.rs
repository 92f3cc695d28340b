//! The symmetric function `𝕊(n, b, ħ)`: direct symmetrization, recursion,
//! and the two residue identities behind the recursion.
//!
//! ```text
//! 𝕊(n, b, ħ) = Σ_{σ∈𝔖ₙ} σ( Σ_{p=0}^{n} (−1)^p C(n,p) ∏_{i≤p}(λᵢ − bħ) ∏_{j>p}(λⱼ + bħ)
//!                                  · ∏_{i<j} (λᵢⱼ + ħ)/λⱼᵢ )
//! ```

use rayon::prelude::*;
use thiserror::Error;

use crate::exactalg::{permute_vars, q_frac, symmetric_group, symmetrize_over_vandermonde, RatFunc};

pub const DEFAULT_LIMIT: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerreError {
    #[error("n = {n} exceeds the limit {limit}")]
    LimitExceeded { n: u32, limit: u32 },
    #[error("n must be positive")]
    ZeroN,
    #[error("result depends on the lambda variables: {0}")]
    NotLambdaFree(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SParams {
    pub n: u32,
    pub b: RatFunc,
    pub hbar: RatFunc,
}

impl SParams {
    /// Symbolic `b` and `ħ`.
    pub fn symbolic(n: u32) -> Self {
        SParams {
            n,
            b: RatFunc::param("b"),
            hbar: RatFunc::param("hbar"),
        }
    }

    /// `b = num/den`, symbolic `ħ`.
    pub fn with_b(n: u32, num: i64, den: i64) -> Self {
        SParams {
            n,
            b: RatFunc::from_q(q_frac(num, den)),
            hbar: RatFunc::param("hbar"),
        }
    }
}

fn lam(i: u32) -> RatFunc {
    RatFunc::lambda(0, i as usize)
}

fn binom(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn check(n: u32, limit: u32) -> Result<(), SerreError> {
    if n == 0 {
        return Err(SerreError::ZeroN);
    }
    if n > limit {
        return Err(SerreError::LimitExceeded { n, limit });
    }
    Ok(())
}

fn inner_sum(p: &SParams) -> RatFunc {
    let n = p.n;
    let bh = &p.b * &p.hbar;
    let mut inner = RatFunc::zero();
    for k in 0..=n {
        let mut term = RatFunc::int(if k % 2 == 0 { 1 } else { -1 } * binom(n, k));
        for i in 1..=k {
            term = &term * &(&lam(i) - &bh);
        }
        for j in k + 1..=n {
            term = &term * &(&lam(j) + &bh);
        }
        inner = &inner + &term;
    }
    inner
}

/// `∏_{i<j} (λᵢⱼ + ħ)`.
fn shifted_product(p: &SParams) -> RatFunc {
    let mut acc = RatFunc::one();
    for i in 1..=p.n {
        for j in i + 1..=p.n {
            acc = &acc * &(&(&lam(i) - &lam(j)) + &p.hbar);
        }
    }
    acc
}

/// The summand before symmetrization.
pub fn s_summand(p: &SParams) -> RatFunc {
    let mut den = RatFunc::one();
    for i in 1..=p.n {
        for j in i + 1..=p.n {
            den = &den * &(&lam(j) - &lam(i));
        }
    }
    (&inner_sum(p) * &shifted_product(p))
        .div_ref(&den)
        .expect("distinct variables")
}

/// `Σ_σ σ(summand)` term by term in the rational-function field.
pub fn s_direct_naive(p: &SParams, limit: u32) -> Result<RatFunc, SerreError> {
    check(p.n, limit)?;
    let summand = s_summand(p);
    let group = symmetric_group(1, 0, p.n as usize);
    let terms: Vec<RatFunc> = group.par_iter().map(|s| permute_vars(&summand, s)).collect();
    Ok(RatFunc::sum(terms))
}

/// `𝕊(n, b, ħ)` by direct symmetrization over `𝔖ₙ`.  Fails if the result
/// still involves the `λ`'s.
///
/// The denominator of the summand is the Vandermonde product, so the sum is
/// the antisymmetrization of the numerator divided by it.
pub fn s_direct(p: &SParams, limit: u32) -> Result<RatFunc, SerreError> {
    check(p.n, limit)?;
    let numer = &inner_sum(p) * &shifted_product(p);
    let total = match numer.as_poly() {
        Some(poly) => RatFunc::from_poly(symmetrize_over_vandermonde(poly, 0, p.n as usize)),
        None => s_direct_naive(p, limit)?,
    };
    if !total.lambda_free() {
        return Err(SerreError::NotLambdaFree(total.to_string()));
    }
    Ok(total)
}

/// `𝕊(1) = 2ħb`, `𝕊(n) = 𝕊(n−1)·(−1)^{n+1}·2ħn·(b − (n−1)/2)`.
pub fn s_recursive(p: &SParams) -> Result<RatFunc, SerreError> {
    check(p.n, u32::MAX)?;
    let two_h = &p.hbar * &RatFunc::int(2);
    let mut acc = &two_h * &p.b;
    for m in 2..=p.n {
        let shift = &p.b - &RatFunc::from_q(q_frac(m as i64 - 1, 2));
        let sign = if m % 2 == 1 { 1 } else { -1 };
        acc = &(&acc * &two_h) * &(&shift * &RatFunc::int(sign * m as i64));
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResidueSign {
    Plus,
    Minus,
}

/// Difference of the two sides of
/// `Σⱼ (λⱼ + bħ) ∏_{i≠j} (λᵢⱼ + ħ)/λⱼᵢ = −(−1)ⁿ(nbħ + Σλᵢ − ħC(n,2))` (plus) or
/// `Σⱼ (λⱼ − bħ) ∏_{i≠j} (λⱼᵢ + ħ)/λᵢⱼ = −(−1)ⁿ(−nbħ + Σλᵢ + ħC(n,2))` (minus).
pub fn residue_identity(n: u32, sign: ResidueSign, limit: u32) -> Result<RatFunc, SerreError> {
    check(n, limit)?;
    let (b, h) = (RatFunc::param("b"), RatFunc::param("hbar"));
    let bh = &b * &h;
    let mut lhs = Vec::with_capacity(n as usize);
    for j in 1..=n {
        let mut term = match sign {
            ResidueSign::Plus => &lam(j) + &bh,
            ResidueSign::Minus => &lam(j) - &bh,
        };
        for i in (1..=n).filter(|&i| i != j) {
            let (x, y) = match sign {
                ResidueSign::Plus => (lam(i), lam(j)),
                ResidueSign::Minus => (lam(j), lam(i)),
            };
            let f = (&(&x - &y) + &h).div_ref(&(&y - &x)).expect("distinct variables");
            term = &term * &f;
        }
        lhs.push(term);
    }
    let lhs = RatFunc::sum(lhs);
    let sum_l = RatFunc::sum((1..=n).map(lam));
    let nbh = &bh * &RatFunc::int(n as i64);
    let hc = &h * &RatFunc::int(binom(n, 2));
    let inner = match sign {
        ResidueSign::Plus => &(&nbh + &sum_l) - &hc,
        ResidueSign::Minus => &(&sum_l - &nbh) + &hc,
    };
    let rhs = if n % 2 == 0 { -inner } else { inner };
    Ok(&lhs - &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_ratfunc;

    fn p(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(s_direct(&SParams::symbolic(1), 6).unwrap(), p("2*hbar*b"));
        let s2 = p("-8*hbar^2*b*(b - 1/2)");
        assert_eq!(s_direct(&SParams::symbolic(2), 6).unwrap(), s2);
        assert_eq!(s_recursive(&SParams::symbolic(2)).unwrap(), s2);
        assert!(s_direct(&SParams::with_b(3, 1, 1), 6).unwrap().is_zero());
    }

    #[test]
    fn direct_matches_recursion() {
        for n in 1..=4 {
            let sp = SParams::symbolic(n);
            assert_eq!(s_direct(&sp, 6).unwrap(), s_recursive(&sp).unwrap(), "n = {}", n);
        }
    }

    #[test]
    fn fast_path_matches_naive_sum() {
        for n in 1..=3 {
            let sp = SParams::symbolic(n);
            assert_eq!(s_direct(&sp, 6).unwrap(), s_direct_naive(&sp, 6).unwrap());
        }
    }

    #[test]
    fn recursion_vanishes_at_half_integer() {
        for n in 1..=8 {
            assert!(s_recursive(&SParams::with_b(n, n as i64 - 1, 2)).unwrap().is_zero());
        }
    }

    #[test]
    fn limit_enforced() {
        assert!(matches!(
            s_direct(&SParams::symbolic(7), 6),
            Err(SerreError::LimitExceeded { n: 7, limit: 6 })
        ));
    }

    #[test]
    fn residue_identities_small() {
        for (n, s) in [(1, ResidueSign::Plus), (2, ResidueSign::Plus), (3, ResidueSign::Minus)] {
            assert!(residue_identity(n, s, 6).unwrap().is_zero());
        }
    }
}
