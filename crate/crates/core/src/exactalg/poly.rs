use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::var::VarId;

/// Exact rational coefficients.
pub type Q = BigRational;

// Integer fast paths: `Ratio` arithmetic reduces by a gcd on every operation.

fn q_mul(a: &Q, b: &Q) -> Q {
    if a.denom().is_one() && b.denom().is_one() {
        Q::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn q_add_assign(acc: &mut Q, b: &Q) {
    if acc.denom().is_one() && b.denom().is_one() {
        *acc = Q::from_integer(acc.numer() + b.numer());
    } else {
        *acc += b;
    }
}

fn q_add(a: &Q, b: &Q) -> Q {
    let mut c = a.clone();
    q_add_assign(&mut c, b);
    c
}

fn q_sub(a: &Q, b: &Q) -> Q {
    if a.denom().is_one() && b.denom().is_one() {
        Q::from_integer(a.numer() - b.numer())
    } else {
        a - b
    }
}

pub(crate) type Exps = SmallVec<[u16; 12]>;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Graded lexicographic comparison of exponent vectors over a shared
/// variable list (index 0 is the first variable in the fixed order).
pub(crate) fn grlex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq)]
struct GrlexKey(Exps);

impl Ord for GrlexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for GrlexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over ℚ in canonical form.
///
/// Terms are stored in strictly decreasing graded-lex order with no zero
/// coefficients, and `vars` lists exactly the variables that occur, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    vars: Arc<[VarId]>,
    terms: Vec<(Exps, Q)>,
}

fn empty_vars() -> Arc<[VarId]> {
    Arc::from(Vec::new())
}

/// Maps the columns of `from` into `to` (which must contain every variable of `from`).
fn column_map(from: &[VarId], to: &[VarId]) -> Vec<usize> {
    let mut out = Vec::with_capacity(from.len());
    let mut j = 0;
    for v in from {
        while &to[j] != v {
            j += 1;
        }
        out.push(j);
    }
    out
}

fn embed_terms(terms: &[(Exps, Q)], from: &[VarId], to: &[VarId]) -> Vec<(Exps, Q)> {
    let map = column_map(from, to);
    terms
        .iter()
        .map(|(e, c)| {
            let mut ne: Exps = SmallVec::from_elem(0, to.len());
            for (i, &x) in e.iter().enumerate() {
                ne[map[i]] = x;
            }
            (ne, c.clone())
        })
        .collect()
}

fn merge_vars(a: &[VarId], b: &[VarId]) -> Vec<VarId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            vars: empty_vars(),
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            vars: empty_vars(),
            terms: vec![(SmallVec::new(), c)],
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(q_int(n))
    }

    pub fn var(v: VarId) -> Self {
        Poly {
            vars: Arc::from(vec![v]),
            terms: vec![(SmallVec::from_elem(1, 1), Q::one())],
        }
    }

    pub fn lambda(vertex: usize, slot: usize) -> Self {
        Self::var(VarId::lambda(vertex, slot))
    }

    pub fn param(name: &str) -> Self {
        Self::var(VarId::param(name))
    }

    /// Builds a polynomial from a sorted, duplicate-free variable list and
    /// arbitrary (possibly repeated, unsorted, zero) terms.
    pub(crate) fn from_raw(vars: Vec<VarId>, terms: Vec<(Exps, Q)>) -> Self {
        debug_assert!(vars.windows(2).all(|w| w[0] < w[1]));
        let mut map: FxHashMap<Exps, Q> = FxHashMap::default();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.get_mut(&e) {
                Some(acc) => q_add_assign(acc, &c),
                None => {
                    map.insert(e, c);
                }
            }
        }
        let terms: Vec<(Exps, Q)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self::from_unique_terms(vars, terms)
    }

    /// Like `from_raw` but the exponent vectors are already distinct and nonzero.
    fn from_unique_terms(vars: Vec<VarId>, mut terms: Vec<(Exps, Q)>) -> Self {
        terms.sort_unstable_by(|a, b| grlex_cmp(&b.0, &a.0));
        let mut p = Poly {
            vars: Arc::from(vars),
            terms,
        };
        p.prune();
        p
    }

    fn prune(&mut self) {
        let n = self.vars.len();
        if n == 0 {
            return;
        }
        let mut used = vec![false; n];
        for (e, _) in &self.terms {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        let vars: Vec<VarId> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        for (e, _) in self.terms.iter_mut() {
            let ne: Exps = keep.iter().map(|&i| e[i]).collect();
            *e = ne;
        }
        self.vars = Arc::from(vars);
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates over `(monomial, coefficient)` in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<(VarId, u32)>, &Q)> + '_ {
        self.terms.iter().map(move |(e, c)| {
            let mono = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| (self.vars[i].clone(), x as u32))
                .collect();
            (mono, c)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Q> {
        if self.is_zero() {
            Some(Q::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Q {
        match self.terms.last() {
            Some((e, c)) if e.iter().all(|&x| x == 0) => c.clone(),
            _ => Q::zero(),
        }
    }

    pub fn leading_coeff(&self) -> Q {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Q::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .first()
            .map(|(e, _)| e.iter().map(|&x| x as u32).sum())
            .unwrap_or(0)
    }

    fn index_of(&self, v: &VarId) -> Option<usize> {
        self.vars.binary_search(v).ok()
    }

    pub fn contains_var(&self, v: &VarId) -> bool {
        self.index_of(v).is_some()
    }

    pub fn degree_in(&self, v: &VarId) -> u32 {
        match self.index_of(v) {
            Some(i) => self.terms.iter().map(|(e, _)| e[i] as u32).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), q_mul(x, c))).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.recip())
    }

    /// The rational content: a positive rational c such that self / c has
    /// coprime integer coefficients.
    pub fn rational_content(&self) -> Q {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Q::one();
        }
        Q::new(num_gcd, den_lcm)
    }

    fn unify<'a>(
        &'a self,
        other: &'a Poly,
    ) -> (
        Arc<[VarId]>,
        std::borrow::Cow<'a, [(Exps, Q)]>,
        std::borrow::Cow<'a, [(Exps, Q)]>,
    ) {
        use std::borrow::Cow;
        if self.vars == other.vars {
            return (
                self.vars.clone(),
                Cow::Borrowed(&self.terms),
                Cow::Borrowed(&other.terms),
            );
        }
        let merged = merge_vars(&self.vars, &other.vars);
        let a = if merged.len() == self.vars.len() {
            Cow::Borrowed(&self.terms[..])
        } else {
            Cow::Owned(embed_terms(&self.terms, &self.vars, &merged))
        };
        let b = if merged.len() == other.vars.len() {
            Cow::Borrowed(&other.terms[..])
        } else {
            Cow::Owned(embed_terms(&other.terms, &other.vars, &merged))
        };
        (Arc::from(merged), a, b)
    }

    fn add_impl(&self, other: &Poly, negate_other: bool) -> Poly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate_other { -other } else { other.clone() };
        }
        let (vars, a, b) = self.unify(other);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match grlex_cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        q_sub(&a[i].1, &b[j].1)
                    } else {
                        q_add(&a[i].1, &b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        let mut p = Poly { vars, terms: out };
        p.prune();
        p
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let (vars, a, b) = self.unify(other);
        let n = vars.len();
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        if small.len() == 1 {
            let (se, sc) = &small[0];
            let terms = large
                .iter()
                .map(|(e, c)| {
                    let ne: Exps = (0..n).map(|i| e[i] + se[i]).collect();
                    (ne, q_mul(c, sc))
                })
                .collect();
            // multiplication by a monomial preserves the order
            return Poly { vars, terms };
        }
        let mut map: FxHashMap<Exps, Q> =
            FxHashMap::with_capacity_and_hasher((small.len() * large.len()).min(1 << 16), Default::default());
        for (ea, ca) in small.iter() {
            for (eb, cb) in large.iter() {
                let ne: Exps = (0..n).map(|i| ea[i] + eb[i]).collect();
                let prod = q_mul(ca, cb);
                match map.get_mut(&ne) {
                    Some(acc) => q_add_assign(acc, &prod),
                    None => {
                        map.insert(ne, prod);
                    }
                }
            }
        }
        let terms: Vec<(Exps, Q)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self::from_unique_terms(vars.to_vec(), terms)
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Poly>) -> Poly {
        let mut acc = Poly::one();
        for f in factors {
            acc = &acc * f;
        }
        acc
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "exact_div by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        if d.vars.iter().any(|v| self.index_of(v).is_none()) {
            return None;
        }
        if d.total_degree() > self.total_degree() {
            return None;
        }
        let (vars, a, b) = self.unify(d);
        let n = vars.len();
        let (lead_e, lead_c) = &b[0];
        if b.len() == 1 {
            let mut terms = Vec::with_capacity(a.len());
            for (e, c) in a.iter() {
                if (0..n).any(|i| e[i] < lead_e[i]) {
                    return None;
                }
                let ne: Exps = (0..n).map(|i| e[i] - lead_e[i]).collect();
                terms.push((ne, c / lead_c));
            }
            let mut p = Poly { vars, terms };
            p.prune();
            return Some(p);
        }
        let mut rem: BTreeMap<GrlexKey, Q> = a.iter().map(|(e, c)| (GrlexKey(e.clone()), c.clone())).collect();
        let mut quot: Vec<(Exps, Q)> = Vec::new();
        while let Some((key, c)) = rem.pop_last() {
            let e = key.0;
            if (0..n).any(|i| e[i] < lead_e[i]) {
                return None;
            }
            let qe: Exps = (0..n).map(|i| e[i] - lead_e[i]).collect();
            let qc = &c / lead_c;
            for (de, dc) in b.iter().skip(1) {
                let ne: Exps = (0..n).map(|i| de[i] + qe[i]).collect();
                let delta = &qc * dc;
                let k = GrlexKey(ne);
                match rem.get_mut(&k) {
                    Some(acc) => {
                        *acc -= delta;
                        if acc.is_zero() {
                            rem.remove(&k);
                        }
                    }
                    None => {
                        rem.insert(k, -delta);
                    }
                }
            }
            quot.push((qe, qc));
        }
        // quotient terms were produced in decreasing order
        let mut p = Poly { vars, terms: quot };
        p.prune();
        Some(p)
    }

    /// Coefficients with respect to `v`: entry k is the coefficient of v^k,
    /// a polynomial in the remaining variables.
    pub fn coefficients_in(&self, v: &VarId) -> Vec<Poly> {
        let Some(idx) = self.index_of(v) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(v) as usize;
        let rest: Vec<VarId> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, x)| x.clone())
            .collect();
        let mut buckets: Vec<Vec<(Exps, Q)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let k = e[idx] as usize;
            let ne: Exps = e
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != idx)
                .map(|(_, &x)| x)
                .collect();
            buckets[k].push((ne, c.clone()));
        }
        buckets
            .into_iter()
            .map(|terms| {
                // removing a column keeps the relative grlex order only within a
                // fixed power of v, which is the case for each bucket
                let mut p = Poly {
                    vars: Arc::from(rest.clone()),
                    terms,
                };
                p.terms.sort_unstable_by(|a, b| grlex_cmp(&b.0, &a.0));
                p.prune();
                p
            })
            .collect()
    }

    /// Inverse of `coefficients_in`.
    pub fn from_coefficients(v: &VarId, coeffs: &[Poly]) -> Poly {
        let mut all_vars: Vec<VarId> = vec![v.clone()];
        for c in coeffs {
            all_vars = merge_vars(&all_vars, &c.vars);
        }
        let vi = all_vars.binary_search(v).unwrap();
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (mut e, x) in embed_terms(&c.terms, &c.vars, &all_vars) {
                e[vi] = k as u16;
                terms.push((e, x));
            }
        }
        Self::from_unique_terms(all_vars, terms)
    }

    /// Substitutes `v := value`.
    pub fn substitute(&self, v: &VarId, value: &Poly) -> Poly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let coeffs = self.coefficients_in(v);
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Renames variables.  The map may identify variables (exponents add up).
    pub fn rename(&self, f: &impl Fn(&VarId) -> VarId) -> Poly {
        if self.vars.is_empty() {
            return self.clone();
        }
        let images: Vec<VarId> = self.vars.iter().map(f).collect();
        let mut target = images.clone();
        target.sort();
        target.dedup();
        let cols: Vec<usize> = images.iter().map(|v| target.binary_search(v).unwrap()).collect();
        let injective = target.len() == images.len();
        let terms: Vec<(Exps, Q)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne: Exps = SmallVec::from_elem(0, target.len());
                for (i, &x) in e.iter().enumerate() {
                    ne[cols[i]] += x;
                }
                (ne, c.clone())
            })
            .collect();
        if injective {
            Self::from_unique_terms(target, terms)
        } else {
            Self::from_raw(target, terms)
        }
    }

    /// Writes `Σ_{σ∈𝔖ₙ} sgn(σ)·σ(self)`, with `σ` permuting the variables
    /// `slots`, as `Σ_α c_α·A_α` over strictly decreasing exponent tuples `α`,
    /// where `A_α = Σ_σ sgn(σ) ∏ᵢ slots[σ(i)]^{αᵢ}` and the `c_α` are free of
    /// the slot variables.  Terms with a repeated slot exponent cancel.
    pub fn alternant_coefficients(&self, slots: &[VarId]) -> BTreeMap<Vec<u16>, Poly> {
        let cols: Vec<Option<usize>> = slots.iter().map(|v| self.vars.iter().position(|w| w == v)).collect();
        let mut groups: FxHashMap<Vec<u16>, Vec<(Exps, Q)>> = FxHashMap::default();
        for (e, c) in &self.terms {
            let ex: Vec<u16> = cols.iter().map(|c| c.map_or(0, |i| e[i])).collect();
            let mut inversions = 0usize;
            let mut repeated = false;
            for i in 0..ex.len() {
                for j in i + 1..ex.len() {
                    match ex[i].cmp(&ex[j]) {
                        Ordering::Less => inversions += 1,
                        Ordering::Equal => repeated = true,
                        Ordering::Greater => {}
                    }
                }
            }
            if repeated {
                continue;
            }
            let mut alpha = ex;
            alpha.sort_unstable_by(|a, b| b.cmp(a));
            let mut rest = e.clone();
            for i in cols.iter().flatten() {
                rest[*i] = 0;
            }
            let c = if inversions % 2 == 0 { c.clone() } else { -c };
            groups.entry(alpha).or_default().push((rest, c));
        }
        groups
            .into_iter()
            .map(|(alpha, terms)| (alpha, Self::from_raw(self.vars.to_vec(), terms)))
            .filter(|(_, p)| !p.is_zero())
            .collect()
    }

    /// Drops every term of total degree >= `order`.
    pub fn truncate_degree(&self, order: u32) -> Poly {
        let terms: Vec<(Exps, Q)> = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().map(|&x| x as u32).sum::<u32>() < order)
            .cloned()
            .collect();
        let mut p = Poly {
            vars: self.vars.clone(),
            terms,
        };
        p.prune();
        p
    }

    /// Lowest total degree among the terms (0 for the zero polynomial).
    pub fn min_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().map(|&x| x as u32).sum())
            .min()
            .unwrap_or(0)
    }

    /// The largest monomial dividing every term, as exponents per variable.
    pub(crate) fn monomial_content(&self) -> Vec<(VarId, u16)> {
        if self.terms.is_empty() {
            return Vec::new();
        }
        let n = self.vars.len();
        let mut m: Vec<u16> = self.terms[0].0.to_vec();
        for (e, _) in &self.terms[1..] {
            for i in 0..n {
                m[i] = m[i].min(e[i]);
            }
        }
        (0..n)
            .filter(|&i| m[i] > 0)
            .map(|i| (self.vars[i].clone(), m[i]))
            .collect()
    }

    pub(crate) fn monomial(vars: &[(VarId, u16)]) -> Poly {
        let mut vs: Vec<(VarId, u16)> = vars.iter().filter(|(_, e)| *e > 0).cloned().collect();
        vs.sort();
        let exps: Exps = vs.iter().map(|(_, e)| *e).collect();
        Poly {
            vars: Arc::from(vs.into_iter().map(|(v, _)| v).collect::<Vec<_>>()),
            terms: vec![(exps, Q::one())],
        }
    }

    pub fn lambda_free(&self) -> bool {
        self.vars.iter().all(|v| !v.is_lambda())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.vars[i].to_string()
                    } else {
                        format!("{}^{}", self.vars[i], x)
                    }
                })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", abs, mono.join("*"))
            };
            match (k, neg) {
                (0, false) => f.write_str(&body)?,
                (0, true) => write!(f, "-{}", body)?,
                (_, false) => write!(f, " + {}", body)?,
                (_, true) => write!(f, " - {}", body)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, rhs: &'a Poly) -> Poly {
                $body(self, rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &'a Poly) -> Poly {
                $body(&self, rhs)
            }
        }
    };
}

poly_binop!(Add, add, |a: &Poly, b: &Poly| a.add_impl(b, false));
poly_binop!(Sub, sub, |a: &Poly, b: &Poly| a.add_impl(b, true));
poly_binop!(Mul, mul, |a: &Poly, b: &Poly| a.mul_impl(b));

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::param("x")
    }
    fn y() -> Poly {
        Poly::param("y")
    }

    #[test]
    fn cancellation_is_canonical() {
        let s = (&x() + &y()) + (&x() - &y());
        assert_eq!(s, x().scale(&q_int(2)));
        assert_eq!(s.vars().len(), 1);
        assert_eq!((&x() - &x()), Poly::zero());
    }

    #[test]
    fn display_orders_by_grlex() {
        let p = &(&x() * &x()) + &(&y().scale(&q_frac(-3, 2)) + &Poly::int(4));
        assert_eq!(p.to_string(), "x^2 - 3/2*y + 4");
        let q = &Poly::lambda(0, 1) * &Poly::param("hbar");
        assert_eq!(q.to_string(), "l1_1*hbar");
        assert_eq!((-&Poly::lambda(1, 2)).to_string(), "-l2_2");
    }

    #[test]
    fn exact_division() {
        let num = &(&x() * &x()) - &(&y() * &y());
        let q = num.exact_div(&(&x() - &y())).unwrap();
        assert_eq!(q, &x() + &y());
        assert!(num.exact_div(&(&x() + &Poly::int(1))).is_none());
    }

    #[test]
    fn coefficients_round_trip() {
        let p = &(&(&x() * &x()) * &y()) + &(&x().scale(&q_int(3)) + &y());
        let cs = p.coefficients_in(&VarId::param("x"));
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[1], Poly::int(3));
        assert_eq!(Poly::from_coefficients(&VarId::param("x"), &cs), p);
    }

    #[test]
    fn rename_merges_columns() {
        let p = &x() - &y();
        let q = p.rename(&|v: &VarId| {
            if *v == VarId::param("y") {
                VarId::param("x")
            } else {
                v.clone()
            }
        });
        assert!(q.is_zero());
    }
}
