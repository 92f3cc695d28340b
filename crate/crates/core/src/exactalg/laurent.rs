use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::var::VarId;
use super::AlgError;

/// `c₀ + c₁ z⁻¹ + … + c_{N−1} z^{−(N−1)} + O(z^{−N})` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTail {
    coeffs: Vec<RatFunc>,
}

impl LaurentTail {
    pub fn new(coeffs: Vec<RatFunc>) -> Self {
        assert!(!coeffs.is_empty(), "truncation order must be positive");
        LaurentTail { coeffs }
    }

    pub fn constant(c: RatFunc, order: usize) -> Self {
        let mut coeffs = vec![RatFunc::zero(); order];
        coeffs[0] = c;
        Self::new(coeffs)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(RatFunc::one(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// Coefficient of `z^{-m}`.
    pub fn coeff(&self, m: usize) -> &RatFunc {
        &self.coeffs[m]
    }

    pub fn add(&self, other: &LaurentTail) -> LaurentTail {
        let n = self.order().min(other.order());
        LaurentTail::new((0..n).map(|m| &self.coeffs[m] + &other.coeffs[m]).collect())
    }

    pub fn sub(&self, other: &LaurentTail) -> LaurentTail {
        let n = self.order().min(other.order());
        LaurentTail::new((0..n).map(|m| &self.coeffs[m] - &other.coeffs[m]).collect())
    }

    pub fn mul(&self, other: &LaurentTail) -> LaurentTail {
        let n = self.order().min(other.order());
        let coeffs = (0..n)
            .map(|m| RatFunc::sum((0..=m).map(|i| &self.coeffs[i] * &other.coeffs[m - i])))
            .collect();
        LaurentTail::new(coeffs)
    }

    pub fn scale(&self, c: &RatFunc) -> LaurentTail {
        LaurentTail::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplicative inverse; requires `c₀ ≠ 0`.
    pub fn inverse(&self) -> Result<LaurentTail, AlgError> {
        let c0_inv = self.coeffs[0].inv()?;
        let n = self.order();
        let mut out: Vec<RatFunc> = Vec::with_capacity(n);
        out.push(c0_inv.clone());
        for m in 1..n {
            let s = RatFunc::sum((1..=m).map(|i| &self.coeffs[i] * &out[m - i]));
            out.push(-(&s * &c0_inv));
        }
        Ok(LaurentTail::new(out))
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> Result<RatFunc, AlgError>) -> Result<LaurentTail, AlgError> {
        Ok(LaurentTail::new(
            self.coeffs.iter().map(f).collect::<Result<Vec<_>, _>>()?,
        ))
    }

    /// Expansion of `f` at `z = ∞` in powers of `z⁻¹`.  Fails when `f` has
    /// a pole at infinity.
    pub fn expand_at_infinity(f: &RatFunc, z: &VarId, order: usize) -> Result<LaurentTail, AlgError> {
        let a = f.num().coefficients_in(z);
        let b = f.den().coefficients_in(z);
        let p = a.len() - 1;
        let q = b.len() - 1;
        if f.is_zero() {
            return Ok(LaurentTail::new(vec![RatFunc::zero(); order]));
        }
        if p > q {
            return Err(AlgError::NotExpandable(format!(
                "degree {} over degree {} in {}",
                p, q, z
            )));
        }
        // in w = 1/z: A_k = a_{q-k}, B_k = b_{q-k}
        let coef = |v: &Vec<Poly>, k: usize| -> RatFunc {
            if k > q {
                RatFunc::zero()
            } else {
                v.get(q - k)
                    .cloned()
                    .map(RatFunc::from_poly)
                    .unwrap_or_else(RatFunc::zero)
            }
        };
        let b0_inv = RatFunc::from_poly(b[q].clone()).inv()?;
        let mut out: Vec<RatFunc> = Vec::with_capacity(order);
        for k in 0..order {
            let s = RatFunc::sum((1..=k.min(q)).map(|j| &coef(&b, j) * &out[k - j]));
            out.push(&(&coef(&a, k) - &s) * &b0_inv);
        }
        Ok(LaurentTail::new(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::text::parse_ratfunc;

    fn z() -> VarId {
        VarId::param("z")
    }

    #[test]
    fn geometric_series() {
        // 1/(1 - a/z) = z/(z - a) = 1 + a z^-1 + a^2 z^-2 + ...
        let f = parse_ratfunc("z/(z - a)").unwrap();
        let s = LaurentTail::expand_at_infinity(&f, &z(), 4).unwrap();
        let a = RatFunc::param("a");
        assert_eq!(s.coeff(0), &RatFunc::one());
        assert_eq!(s.coeff(1), &a);
        assert_eq!(s.coeff(3), &(&(&a * &a) * &a));
    }

    #[test]
    fn pole_at_infinity_rejected() {
        let f = parse_ratfunc("z^2/(z - 1)").unwrap();
        assert!(LaurentTail::expand_at_infinity(&f, &z(), 3).is_err());
    }

    #[test]
    fn inverse_times_self_is_one() {
        let f = parse_ratfunc("(z - x + h)/(z - x - h)").unwrap();
        let s = LaurentTail::expand_at_infinity(&f, &z(), 5).unwrap();
        assert_eq!(s.mul(&s.inverse().unwrap()), LaurentTail::one(5));
    }
}
