use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use super::gcd::gcd;
use super::poly::{Poly, Q};
use super::var::VarId;
use super::AlgError;

/// A factor list: monic irreducible polynomials with multiplicities, sorted.
type Factors = Vec<(Poly, u32)>;

/// Canonical rational function `num / den` over ℚ.
///
/// Invariants: `den` is nonzero and monic under the graded-lex order, and
/// `gcd(num, den) = 1`.  Zero is `0 / 1`.
///
/// When the denominator is known as a product of irreducible factors the
/// factorization is carried along; products and sums then cancel by trial
/// division instead of general gcds.  The cache never affects equality.
#[derive(Clone)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
    factors: Option<Factors>,
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RatFunc {}

impl Hash for RatFunc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

/// Attempts to split `p` into `c · ∏ fᵢ^eᵢ` with every fᵢ monic and provably
/// irreducible.  Handles monomial content and factors of degree one in some
/// variable; gives up (`None`) otherwise.
pub(crate) fn try_factor(p: &Poly) -> Option<(Q, Factors)> {
    if p.is_zero() {
        return None;
    }
    if let Some(c) = p.as_constant() {
        return Some((c, Vec::new()));
    }
    let mut out: Factors = Vec::new();
    let mc = p.monomial_content();
    let rest = if mc.is_empty() {
        p.clone()
    } else {
        p.exact_div(&Poly::monomial(&mc)).unwrap()
    };
    for (v, e) in mc {
        out.push((Poly::var(v), e as u32));
    }
    let c = factor_primitive_part(&rest, &mut out)?;
    Some((c, normalize_factors(out)))
}

fn factor_primitive_part(r: &Poly, out: &mut Factors) -> Option<Q> {
    if let Some(c) = r.as_constant() {
        return Some(c);
    }
    if r.total_degree() == 1 {
        out.push((r.monic(), 1));
        return Some(r.leading_coeff());
    }
    let linear_vars: Vec<&VarId> = r.vars().iter().filter(|v| r.degree_in(v) == 1).collect();
    // a primitive polynomial of degree one in some variable is irreducible
    for x in &linear_vars {
        let cs = r.coefficients_in(x);
        if cs[0].is_constant() || cs[1].is_constant() {
            out.push((r.monic(), 1));
            return Some(r.leading_coeff());
        }
    }
    let x = linear_vars.first()?;
    let cs = r.coefficients_in(x);
    let g = gcd(&cs[0], &cs[1]);
    if g.is_constant() {
        out.push((r.monic(), 1));
        return Some(r.leading_coeff());
    }
    let prim = r.exact_div(&g).expect("content divides");
    let (cg, fg) = try_factor(&g)?;
    out.extend(fg);
    out.push((prim.monic(), 1));
    Some(cg * prim.leading_coeff())
}

fn normalize_factors(mut fs: Factors) -> Factors {
    fs.retain(|(_, e)| *e > 0);
    fs.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Factors = Vec::with_capacity(fs.len());
    for (f, e) in fs {
        match out.last_mut() {
            Some((g, k)) if *g == f => *k += e,
            _ => out.push((f, e)),
        }
    }
    out
}

fn factors_product(fs: &Factors) -> Poly {
    let mut acc = Poly::one();
    for (f, e) in fs {
        acc = &acc * &f.pow(*e);
    }
    acc
}

/// Pointwise max of two sorted factor lists.
fn factors_lcm(a: &Factors, b: &Factors) -> Factors {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0.clone(), a[i].1.max(b[j].1)));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `big / small` as a factor list (every factor of `small` must occur in `big`).
fn factors_quotient(big: &Factors, small: &Factors) -> Factors {
    let mut out = Vec::new();
    let mut j = 0;
    for (f, e) in big {
        let mut k = *e;
        while j < small.len() && small[j].0 < *f {
            j += 1;
        }
        if j < small.len() && small[j].0 == *f {
            k -= small[j].1;
        }
        if k > 0 {
            out.push((f.clone(), k));
        }
    }
    out
}

/// Divides `num` by as many of the factors as possible.
fn cancel(mut num: Poly, fs: Factors) -> (Poly, Factors) {
    if num.is_zero() {
        return (num, Vec::new());
    }
    let mut left = Vec::with_capacity(fs.len());
    for (f, mut e) in fs {
        while e > 0 {
            match num.exact_div(&f) {
                Some(q) => {
                    num = q;
                    e -= 1;
                }
                None => break,
            }
        }
        if e > 0 {
            left.push((f, e));
        }
    }
    (num, left)
}

impl RatFunc {
    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
            factors: Some(Vec::new()),
        }
    }

    pub fn int(n: i64) -> Self {
        Self::from_poly(Poly::int(n))
    }

    pub fn from_q(q: Q) -> Self {
        Self::from_poly(Poly::constant(q))
    }

    pub fn var(v: VarId) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn lambda(vertex: usize, slot: usize) -> Self {
        Self::from_poly(Poly::lambda(vertex, slot))
    }

    pub fn param(name: &str) -> Self {
        Self::from_poly(Poly::param(name))
    }

    /// `num / den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, AlgError> {
        if den.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Ok(match try_factor(&den) {
            Some((c, fs)) => Self::assemble(num, c, fs, true),
            None => Self::new_general(num, den),
        })
    }

    /// `num / (c · ∏ fs)` where the factors are monic irreducibles.
    fn assemble(num: Poly, c: Q, fs: Factors, cancel_common: bool) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let num = if c.is_one() { num } else { num.scale(&c.recip()) };
        let (num, fs) = if cancel_common { cancel(num, fs) } else { (num, fs) };
        let den = factors_product(&fs);
        RatFunc {
            num,
            den,
            factors: Some(fs),
        }
    }

    fn new_general(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        Self::normalized(num, den)
    }

    /// Makes a coprime pair canonical: monic denominator, known factors.
    fn normalized(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        let (num, den) = if lc.is_one() {
            (num, den)
        } else {
            let inv = lc.recip();
            (num.scale(&inv), den.scale(&inv))
        };
        let factors = try_factor(&den).map(|(_, fs)| fs);
        RatFunc { num, den, factors }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// Irreducible factors of the denominator, when known.
    pub fn den_factors(&self) -> Option<&[(Poly, u32)]> {
        self.factors.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn vars(&self) -> Vec<VarId> {
        let mut v: Vec<VarId> = self.num.vars().iter().chain(self.den.vars()).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn contains_var(&self, v: &VarId) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn lambda_free(&self) -> bool {
        self.num.lambda_free() && self.den.lambda_free()
    }

    pub fn scale(&self, c: &Q) -> RatFunc {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
            factors: self.factors.clone(),
        }
    }

    pub fn mul_ref(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num * &other.num);
        }
        match (&self.factors, &other.factors) {
            (Some(fa), Some(fb)) => {
                let (na, fb_left) = cancel(self.num.clone(), fb.clone());
                let (nb, fa_left) = cancel(other.num.clone(), fa.clone());
                let mut fs = fa_left;
                fs.extend(fb_left);
                let fs = normalize_factors(fs);
                let den = factors_product(&fs);
                RatFunc {
                    num: &na * &nb,
                    den,
                    factors: Some(fs),
                }
            }
            _ => {
                let g1 = gcd(&self.num, &other.den);
                let g2 = gcd(&other.num, &self.den);
                let num = &self.num.exact_div(&g1).unwrap() * &other.num.exact_div(&g2).unwrap();
                let den = &self.den.exact_div(&g2).unwrap() * &other.den.exact_div(&g1).unwrap();
                let lc = den.leading_coeff();
                let inv = lc.recip();
                let (num, den) = (num.scale(&inv), den.scale(&inv));
                let factors = try_factor(&den).map(|(_, fs)| fs);
                RatFunc { num, den, factors }
            }
        }
    }

    pub fn add_ref(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = &self.num + &other.num;
            return match &self.factors {
                Some(fs) => Self::assemble(num, Q::one(), fs.clone(), true),
                None => Self::new_general(num, self.den.clone()),
            };
        }
        match (&self.factors, &other.factors) {
            (Some(fa), Some(fb)) => {
                let l = factors_lcm(fa, fb);
                let ca = factors_product(&factors_quotient(&l, fa));
                let cb = factors_product(&factors_quotient(&l, fb));
                let num = &(&self.num * &ca) + &(&other.num * &cb);
                Self::assemble(num, Q::one(), l, true)
            }
            _ => {
                let g = gcd(&self.den, &other.den);
                let da = self.den.exact_div(&g).unwrap();
                let db = other.den.exact_div(&g).unwrap();
                let mut num = &(&self.num * &db) + &(&other.num * &da);
                let mut den = &self.den * &db;
                if num.is_zero() {
                    return Self::zero();
                }
                // both inputs are reduced, so only factors of g can cancel
                let mut g = g;
                while !g.is_constant() {
                    let h = gcd(&num, &g);
                    if h.is_constant() {
                        break;
                    }
                    num = num.exact_div(&h).unwrap();
                    den = den.exact_div(&h).unwrap();
                    g = gcd(&g, &den);
                }
                Self::normalized(num, den)
            }
        }
    }

    pub fn sub_ref(&self, other: &RatFunc) -> RatFunc {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
            factors: self.factors.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc, AlgError> {
        if self.num.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Ok(match try_factor(&self.num) {
            Some((c, fs)) => Self::assemble(self.den.clone(), c, fs, false),
            None => Self::new_general(self.den.clone(), self.num.clone()),
        })
    }

    pub fn div_ref(&self, other: &RatFunc) -> Result<RatFunc, AlgError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<RatFunc, AlgError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        Ok(acc)
    }

    /// Sum of many terms with a single final cancellation when all
    /// denominators are factored.
    pub fn sum<I: IntoIterator<Item = RatFunc>>(terms: I) -> RatFunc {
        let terms: Vec<RatFunc> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        if terms.len() == 1 {
            return terms.into_iter().next().unwrap();
        }
        if terms.iter().all(|t| t.factors.is_some()) {
            let mut l: Factors = Vec::new();
            for t in &terms {
                l = factors_lcm(&l, t.factors.as_ref().unwrap());
            }
            let mut num = Poly::zero();
            for t in &terms {
                let cof = factors_quotient(&l, t.factors.as_ref().unwrap());
                num = &num + &(&t.num * &factors_product(&cof));
            }
            Self::assemble(num, Q::one(), l, true)
        } else {
            terms.iter().skip(1).fold(terms[0].clone(), |acc, t| acc.add_ref(t))
        }
    }

    pub fn product<I: IntoIterator<Item = RatFunc>>(factors: I) -> RatFunc {
        factors.into_iter().fold(RatFunc::one(), |acc, f| acc.mul_ref(&f))
    }

    /// Renames variables.  Identifying variables may create a pole, reported
    /// as `EvaluationPole`.
    pub fn rename(&self, f: &impl Fn(&VarId) -> VarId) -> Result<RatFunc, AlgError> {
        let vars = self.vars();
        let mut images: Vec<VarId> = vars.iter().map(f).collect();
        images.sort();
        images.dedup();
        if images.len() == vars.len() {
            return Ok(self.rename_injective(f));
        }
        let num = self.num.rename(f);
        match &self.factors {
            Some(fs) => {
                let mut c = Q::one();
                let mut out = Vec::new();
                for (p, e) in fs {
                    let q = p.rename(f);
                    if q.is_zero() {
                        return Err(AlgError::EvaluationPole);
                    }
                    match try_factor(&q) {
                        Some((cq, fq)) => {
                            for _ in 0..*e {
                                c *= &cq;
                            }
                            out.extend(fq.into_iter().map(|(g, k)| (g, k * e)));
                        }
                        None => return RatFunc::new(num, self.den.rename(f)).map_err(|_| AlgError::EvaluationPole),
                    }
                }
                Ok(Self::assemble(num, c, normalize_factors(out), true))
            }
            None => {
                let den = self.den.rename(f);
                if den.is_zero() {
                    return Err(AlgError::EvaluationPole);
                }
                RatFunc::new(num, den)
            }
        }
    }

    /// Renaming by a map that is injective on the variables present; this
    /// keeps num and den coprime, so only the leading coefficient needs fixing.
    pub fn rename_injective(&self, f: &impl Fn(&VarId) -> VarId) -> RatFunc {
        let num = self.num.rename(f);
        if self.den.is_one() {
            return Self::from_poly(num);
        }
        let den = self.den.rename(f);
        let lc = den.leading_coeff();
        let (num, den) = if lc.is_one() {
            (num, den)
        } else {
            let inv = lc.recip();
            (num.scale(&inv), den.scale(&inv))
        };
        let factors = self
            .factors
            .as_ref()
            .map(|fs| normalize_factors(fs.iter().map(|(p, e)| (p.rename(f).monic(), *e)).collect()));
        RatFunc { num, den, factors }
    }

    /// Substitutes `v := value`.
    pub fn substitute(&self, v: &VarId, value: &RatFunc) -> Result<RatFunc, AlgError> {
        if !self.contains_var(v) {
            return Ok(self.clone());
        }
        if let Some(pv) = value.as_poly() {
            let num = self.num.substitute(v, pv);
            if let Some(fs) = &self.factors {
                let mut c = Q::one();
                let mut out = Vec::new();
                let mut ok = true;
                for (p, e) in fs {
                    let q = p.substitute(v, pv);
                    if q.is_zero() {
                        return Err(AlgError::EvaluationPole);
                    }
                    match try_factor(&q) {
                        Some((cq, fq)) => {
                            for _ in 0..*e {
                                c *= &cq;
                            }
                            out.extend(fq.into_iter().map(|(g, k)| (g, k * e)));
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    return Ok(Self::assemble(num, c, normalize_factors(out), true));
                }
            }
            let den = self.den.substitute(v, pv);
            if den.is_zero() {
                return Err(AlgError::EvaluationPole);
            }
            return RatFunc::new(num, den);
        }
        let n = horner(&self.num, v, value);
        let d = horner(&self.den, v, value);
        if d.is_zero() {
            return Err(AlgError::EvaluationPole);
        }
        n.div_ref(&d)
    }

    /// Applies several substitutions in order.
    pub fn substitute_all(&self, subs: &[(VarId, RatFunc)]) -> Result<RatFunc, AlgError> {
        let mut acc = self.clone();
        for (v, val) in subs {
            acc = acc.substitute(v, val)?;
        }
        Ok(acc)
    }

    /// Canonical text `num` or `(num)/(den)`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn horner(p: &Poly, v: &VarId, value: &RatFunc) -> RatFunc {
    let coeffs = p.coefficients_in(v);
    let mut acc = RatFunc::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul_ref(value).add_ref(&RatFunc::from_poly(c.clone()));
    }
    acc
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<'a> $tr<&'a RatFunc> for &'a RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &'a RatFunc) -> RatFunc {
                self.$f(rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$f(&rhs)
            }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &'a RatFunc) -> RatFunc {
                self.$f(rhs)
            }
        }
    };
}

rat_binop!(Add, add, add_ref);
rat_binop!(Sub, sub, sub_ref);
rat_binop!(Mul, mul, mul_ref);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        self.neg_ref()
    }
}
