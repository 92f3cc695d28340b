//! Multivariate gcd over ℚ.
//!
//! Recursive primitive-PRS over ℚ[rest][x] with content splitting, preceded by
//! a coprimality test on univariate images.  Not fast
//! for dense high-degree inputs, but rational functions built from linear
//! factors never reach it: `RatFunc` keeps denominators factored and cancels
//! by trial division.

use num::{BigInt, One, Zero};

use super::poly::{Poly, Q};
use super::var::VarId;

/// Monic gcd (zero only when both inputs are zero).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    // cheap divisibility shortcut
    let (small, large) = if a.num_terms() <= b.num_terms() { (a, b) } else { (b, a) };
    if large.exact_div(small).is_some() {
        return small.monic();
    }

    // split off monomial contents
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    if !ma.is_empty() || !mb.is_empty() {
        let common: Vec<(VarId, u16)> = ma
            .iter()
            .filter_map(|(v, e)| mb.iter().find(|(w, _)| w == v).map(|(_, f)| (v.clone(), *e.min(f))))
            .collect();
        let a1 = a.exact_div(&Poly::monomial(&ma)).unwrap();
        let b1 = b.exact_div(&Poly::monomial(&mb)).unwrap();
        return (&Poly::monomial(&common) * &gcd(&a1, &b1)).monic();
    }

    // a variable present in only one argument can only contribute through content
    if let Some(v) = a.vars().iter().find(|v| !b.contains_var(v)) {
        let c = content_in(a, v);
        return gcd(&c, b);
    }
    if let Some(v) = b.vars().iter().find(|v| !a.contains_var(v)) {
        let c = content_in(b, v);
        return gcd(a, &c);
    }

    // same variable set: pick the main variable of least degree
    let x = a
        .vars()
        .iter()
        .min_by_key(|v| (a.degree_in(v).max(b.degree_in(v)), (*v).clone()))
        .unwrap()
        .clone();
    let ca = content_in(a, &x);
    let cb = content_in(b, &x);
    let gc = gcd(&ca, &cb);
    let mut p = primitive(a, &ca);
    let mut q = primitive(b, &cb);
    if p.degree_in(&x) < q.degree_in(&x) {
        std::mem::swap(&mut p, &mut q);
    }
    match image_gcd_degree(&p, &q, &x) {
        Some(0) => return gc.monic(),
        Some(d) if d == q.degree_in(&x) as usize && p.exact_div(&q).is_some() => return (&gc * &q).monic(),
        _ => {}
    }
    loop {
        let r = pseudo_rem(&p, &q, &x);
        if r.is_zero() {
            break;
        }
        if r.degree_in(&x) == 0 {
            return gc.monic();
        }
        let cr = content_in(&r, &x);
        p = q;
        q = primitive(&r, &cr);
    }
    (&gc * &q).monic()
}

/// Upper bound for `deg_x gcd(p, q)`: the degree of the gcd of univariate
/// images at a point where neither leading coefficient in `x` vanishes.
fn image_gcd_degree(p: &Poly, q: &Poly, x: &VarId) -> Option<usize> {
    let others: Vec<VarId> = p.vars().iter().chain(q.vars()).filter(|v| *v != x).cloned().collect();
    for attempt in 0..4i64 {
        let point = |v: &VarId| {
            let i = others.iter().position(|w| w == v).unwrap() as i64;
            Q::from_integer(BigInt::from(3 + 7 * i + 11 * attempt * (i + 1)))
        };
        let (pi, qi) = (image(p, x, &point), image(q, x, &point));
        if pi.len() == p.degree_in(x) as usize + 1 && qi.len() == q.degree_in(x) as usize + 1 {
            return Some(univariate_gcd_degree(pi, qi));
        }
    }
    None
}

/// Coefficients in `x`, lowest first, after evaluating every other variable;
/// trailing zeros removed.
fn image(p: &Poly, x: &VarId, point: &impl Fn(&VarId) -> Q) -> Vec<Q> {
    let mut out = vec![Q::zero(); p.degree_in(x) as usize + 1];
    for (mono, c) in p.terms() {
        let mut value = c.clone();
        let mut k = 0;
        for (v, e) in mono {
            if &v == x {
                k = e as usize;
            } else {
                value *= num::pow(point(&v), e as usize);
            }
        }
        out[k] += value;
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn univariate_gcd_degree(mut a: Vec<Q>, mut b: Vec<Q>) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        // a mod b
        while a.len() >= b.len() {
            let f = a.last().unwrap() / b.last().unwrap();
            let shift = a.len() - b.len();
            for (k, c) in b.iter().enumerate() {
                a[k + shift] -= &f * c;
            }
            a.pop();
            while a.last().is_some_and(|c| c.is_zero()) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn primitive(p: &Poly, content: &Poly) -> Poly {
    p.exact_div(content).expect("content divides")
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &Poly, v: &VarId) -> Poly {
    let coeffs = p.coefficients_in(v);
    let mut nonzero: Vec<&Poly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|c| (c.num_terms(), c.total_degree()));
    let mut g = Poly::zero();
    for c in nonzero {
        g = gcd(&g, c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

/// Pseudo-remainder of `a` by `b` in the variable `x`.
pub fn pseudo_rem(a: &Poly, b: &Poly, x: &VarId) -> Poly {
    let mut r = a.coefficients_in(x);
    let bc = b.coefficients_in(x);
    let db = bc.len() - 1;
    let lb = &bc[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bk) in bc.iter().enumerate() {
            let t = &lr * bk;
            r[k + shift] = &r[k + shift] - &t;
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
    }
    if r.is_empty() {
        return Poly::zero();
    }
    // keep the coefficient size down: remove the rational content
    let p = Poly::from_coefficients(x, &r);
    let c = p.rational_content();
    if c.is_zero() || c.is_one() {
        p
    } else {
        p.scale(&c.recip())
    }
}

/// Least common multiple, monic.
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd(a, b);
    (a.exact_div(&g).unwrap() * b).monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Poly {
        Poly::param(n)
    }

    #[test]
    fn gcd_of_products() {
        let x = v("x");
        let y = v("y");
        let z = v("z");
        let f1 = &x - &y;
        let f2 = &(&x * &z) + &Poly::int(1);
        let f3 = &(&y * &y) + &z;
        let a = &(&f1 * &f2) * &f3;
        let b = &(&f1 * &f3) * &(&x + &z);
        let g = gcd(&a, &b);
        assert_eq!(g, (&f1 * &f3).monic());
    }

    #[test]
    fn coprime_inputs() {
        let x = v("x");
        let y = v("y");
        let a = &(&x * &x) + &y;
        let b = &(&y * &y) + &x;
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn content_only_gcd() {
        let x = v("x");
        let y = v("y");
        let b = v("b");
        // gcd((x-y)*b + (x-y), (x-y)^2)
        let a = &(&x - &y) * &(&b + &Poly::int(1));
        let c = (&x - &y).pow(2);
        assert_eq!(gcd(&a, &c), (&x - &y).monic());
    }

    #[test]
    fn univariate_rational_coefficients() {
        let x = v("x");
        let a = &(&x * &x).scale(&super::super::poly::q_frac(1, 2)) - &Poly::constant(super::super::poly::q_frac(1, 2));
        let b = &x - &Poly::int(1);
        assert_eq!(gcd(&a, &b), b);
    }
}
