//! Formal group law arithmetic: F-sum, F-inverse, F-multiple, F-difference.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;
use thiserror::Error;

use crate::exactalg::{AlgError, Poly, RatFunc, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FglError {
    #[error("truncated law needs polynomial inputs without constant term: {0}")]
    NotTruncatable(String),
    #[error("truncated law is not commutative: a({0},{1}) != a({1},{0})")]
    NotCommutative(u32, u32),
    #[error("truncated law is not associative modulo degree {0}")]
    NotAssociative(u32),
    #[error("invalid law: {0}")]
    Invalid(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// A one-dimensional commutative formal group law over a ℚ-algebra.
#[derive(Clone, PartialEq, Eq)]
pub enum FormalGroupLaw {
    /// `F(x, y) = x + y`.
    Additive,
    /// `F(x, y) = x + y − βxy`.
    Multiplicative { beta: RatFunc },
    /// `F(x, y) = x + y + Σ_{i,j≥1} a_ij xⁱyʲ`, computed modulo total degree
    /// `order`.
    Truncated {
        order: u32,
        coeffs: BTreeMap<(u32, u32), Q>,
    },
}

impl fmt::Debug for FormalGroupLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormalGroupLaw::Additive => write!(f, "Additive"),
            FormalGroupLaw::Multiplicative { beta } => write!(f, "Multiplicative(beta = {})", beta),
            FormalGroupLaw::Truncated { order, coeffs } => {
                write!(f, "Truncated(order = {}, {} coefficients)", order, coeffs.len())
            }
        }
    }
}

impl FormalGroupLaw {
    pub fn additive() -> Self {
        FormalGroupLaw::Additive
    }

    pub fn multiplicative(beta: RatFunc) -> Self {
        FormalGroupLaw::Multiplicative { beta }
    }

    /// Builds a truncated law, checking commutativity exactly and
    /// associativity modulo total degree `order`.
    pub fn truncated(order: u32, coeffs: impl IntoIterator<Item = ((u32, u32), Q)>) -> Result<Self, FglError> {
        if order < 2 {
            return Err(FglError::Invalid("truncation order must be at least 2".into()));
        }
        let mut map = BTreeMap::new();
        for ((i, j), c) in coeffs {
            if i == 0 || j == 0 {
                return Err(FglError::Invalid(format!(
                    "coefficient a({},{}) is fixed by F(x,0) = x",
                    i, j
                )));
            }
            if i + j >= order || c.is_zero() {
                continue;
            }
            map.insert((i, j), c);
        }
        for (&(i, j), c) in &map {
            if map.get(&(j, i)) != Some(c) {
                return Err(FglError::NotCommutative(i, j));
            }
        }
        let law = FormalGroupLaw::Truncated { order, coeffs: map };
        let (x, y, z) = (RatFunc::param("x"), RatFunc::param("y"), RatFunc::param("z"));
        let left = law.sum(&x, &law.sum(&y, &z)?)?;
        let right = law.sum(&law.sum(&x, &y)?, &z)?;
        if left != right {
            return Err(FglError::NotAssociative(order));
        }
        Ok(law)
    }

    pub fn is_additive(&self) -> bool {
        matches!(self, FormalGroupLaw::Additive)
    }

    pub fn truncation_order(&self) -> Option<u32> {
        match self {
            FormalGroupLaw::Truncated { order, .. } => Some(*order),
            _ => None,
        }
    }

    fn truncatable<'a>(&self, a: &'a RatFunc) -> Result<&'a Poly, FglError> {
        match a.as_poly() {
            Some(p) if p.constant_term().is_zero() => Ok(p),
            _ => Err(FglError::NotTruncatable(a.to_string())),
        }
    }

    /// `a +_F b`.
    pub fn sum(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc, FglError> {
        match self {
            FormalGroupLaw::Additive => Ok(a + b),
            FormalGroupLaw::Multiplicative { beta } => Ok(&(a + b) - &(&(a * b) * beta)),
            FormalGroupLaw::Truncated { order, coeffs } => {
                let pa = self.truncatable(a)?;
                let pb = self.truncatable(b)?;
                Ok(RatFunc::from_poly(truncated_eval(*order, coeffs, pa, pb)))
            }
        }
    }

    /// `−_F a`, the solution `w` of `F(a, w) = 0`.
    pub fn inverse(&self, a: &RatFunc) -> Result<RatFunc, FglError> {
        match self {
            FormalGroupLaw::Additive => Ok(-a),
            FormalGroupLaw::Multiplicative { beta } => {
                let den = RatFunc::one() - &(beta * a);
                Ok((-a).div_ref(&den)?)
            }
            FormalGroupLaw::Truncated { order, coeffs } => {
                let pa = self.truncatable(a)?;
                // w = −a − Σ a_ij aⁱ wʲ, each pass fixes one more degree
                let mut w = -pa;
                for _ in 0..*order {
                    let higher = &truncated_eval(*order, coeffs, pa, &w) - &(pa + &w);
                    let next = &(-pa) - &higher;
                    if next == w {
                        break;
                    }
                    w = next;
                }
                Ok(RatFunc::from_poly(w))
            }
        }
    }

    /// `m·t = t +_F ⋯ +_F t` (`m` terms); negative `m` uses the inverse.
    pub fn multiple(&self, m: i64, t: &RatFunc) -> Result<RatFunc, FglError> {
        if m == 0 {
            return Ok(RatFunc::zero());
        }
        if let FormalGroupLaw::Additive = self {
            return Ok(t * &RatFunc::int(m));
        }
        let mut acc = t.clone();
        for _ in 1..m.unsigned_abs() {
            acc = self.sum(&acc, t)?;
        }
        if m < 0 {
            acc = self.inverse(&acc)?;
        }
        Ok(acc)
    }

    /// `a −_F b = a +_F (−_F b)`.
    pub fn difference(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc, FglError> {
        match self {
            FormalGroupLaw::Additive => Ok(a - b),
            FormalGroupLaw::Multiplicative { beta } => {
                let den = RatFunc::one() - &(beta * b);
                Ok((a - b).div_ref(&den)?)
            }
            FormalGroupLaw::Truncated { .. } => self.sum(a, &self.inverse(b)?),
        }
    }

    /// Splits `a −_F b = (a − b)·g`.  Returns `(a − b, g)`.
    pub fn unit_factor(&self, a: &RatFunc, b: &RatFunc) -> Result<(RatFunc, RatFunc), FglError> {
        let lin = a - b;
        let g = match self {
            FormalGroupLaw::Additive => RatFunc::one(),
            FormalGroupLaw::Multiplicative { beta } => (RatFunc::one() - &(beta * b)).inv()?,
            FormalGroupLaw::Truncated { .. } => {
                let d = self.difference(a, b)?;
                if lin.is_zero() {
                    return Ok((lin, RatFunc::one()));
                }
                let q = d
                    .as_poly()
                    .and_then(|p| p.exact_div(lin.as_poly().unwrap()))
                    .ok_or_else(|| FglError::NotTruncatable(format!("({}) does not split off ({})", d, lin)))?;
                RatFunc::from_poly(q)
            }
        };
        Ok((lin, g))
    }

    /// Inverse of a unit `g` produced by `unit_factor`, as a truncated series
    /// for truncated laws.
    pub fn unit_inverse(&self, g: &RatFunc) -> Result<RatFunc, FglError> {
        match self {
            FormalGroupLaw::Truncated { order, .. } => {
                let p = g.as_poly().ok_or_else(|| FglError::NotTruncatable(g.to_string()))?;
                let c0 = p.constant_term();
                if c0.is_zero() {
                    return Err(FglError::NotTruncatable(format!("{} is not a unit", g)));
                }
                // 1/(c₀(1 + n)) = c₀⁻¹ Σ (−n)ᵏ
                let c0_inv = c0.recip();
                let n = &p.scale(&c0_inv) - &Poly::one();
                let mut acc = Poly::one();
                let mut pw = Poly::one();
                for _ in 1..*order {
                    pw = (&pw * &(-&n)).truncate_degree(*order);
                    if pw.is_zero() {
                        break;
                    }
                    acc = &acc + &pw;
                }
                Ok(RatFunc::from_poly(acc.scale(&c0_inv)))
            }
            _ => Ok(g.inv()?),
        }
    }

    /// Drops terms of total degree ≥ `order` (identity for exact laws).
    pub fn truncate(&self, f: &RatFunc) -> Result<RatFunc, FglError> {
        match self {
            FormalGroupLaw::Truncated { order, .. } => {
                let p = f.as_poly().ok_or_else(|| FglError::NotTruncatable(f.to_string()))?;
                Ok(RatFunc::from_poly(p.truncate_degree(*order)))
            }
            _ => Ok(f.clone()),
        }
    }
}

fn truncated_eval(order: u32, coeffs: &BTreeMap<(u32, u32), Q>, a: &Poly, b: &Poly) -> Poly {
    let mut acc = a + b;
    if coeffs.is_empty() {
        return acc.truncate_degree(order);
    }
    let max_i = coeffs.keys().map(|k| k.0).max().unwrap_or(0);
    let pows = |p: &Poly| {
        let mut v = vec![Poly::one()];
        for _ in 0..max_i {
            let next = (v.last().unwrap() * p).truncate_degree(order);
            v.push(next);
        }
        v
    };
    let pa = pows(a);
    let pb = pows(b);
    for (&(i, j), c) in coeffs {
        let t = (&pa[i as usize] * &pb[j as usize]).truncate_degree(order);
        acc = &acc + &t.scale(c);
    }
    acc.truncate_degree(order)
}
