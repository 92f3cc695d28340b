//! Slot permutations acting on λ variables, symmetrization and symmetry tests.

use rayon::prelude::*;

use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::var::VarId;
use super::AlgError;

/// A product of permutations, one per vertex, acting on λ slots.
///
/// `images[i][j - 1] = σᵢ(j)`; the action substitutes `λ^i_j ↦ λ^i_{σᵢ(j)}`.
/// Slots beyond a vertex's permutation and all parameters are fixed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlotPermutation {
    images: Vec<Vec<u16>>,
}

impl SlotPermutation {
    pub fn new(images: Vec<Vec<usize>>) -> Result<Self, AlgError> {
        for (i, img) in images.iter().enumerate() {
            let n = img.len();
            let mut seen = vec![false; n];
            for &x in img {
                if x == 0 || x > n || seen[x - 1] {
                    return Err(AlgError::BadPermutation(format!(
                        "vertex {}: {:?} is not a permutation of 1..{}",
                        i + 1,
                        img,
                        n
                    )));
                }
                seen[x - 1] = true;
            }
        }
        Ok(SlotPermutation {
            images: images
                .into_iter()
                .map(|v| v.into_iter().map(|x| x as u16).collect())
                .collect(),
        })
    }

    pub fn identity(dims: &[u32]) -> Self {
        SlotPermutation {
            images: dims.iter().map(|&n| (1..=n as u16).collect()).collect(),
        }
    }

    /// Swaps slots `a` and `b` of `vertex`, identity elsewhere.
    pub fn transposition(dims: &[u32], vertex: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(dims);
        p.images[vertex].swap(a - 1, b - 1);
        p
    }

    /// Number of slots permuted at each vertex.
    pub fn sizes(&self) -> Vec<u32> {
        self.images.iter().map(|v| v.len() as u32).collect()
    }

    pub fn images(&self, vertex: usize) -> &[u16] {
        self.images.get(vertex).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .all(|v| v.iter().enumerate().all(|(j, &x)| x as usize == j + 1))
    }

    pub fn apply_var(&self, v: &VarId) -> VarId {
        match v {
            VarId::Lambda { vertex, slot } => {
                let img = self.images(*vertex as usize);
                match img.get(*slot as usize - 1) {
                    Some(&t) => VarId::Lambda {
                        vertex: *vertex,
                        slot: t,
                    },
                    None => v.clone(),
                }
            }
            VarId::Param(_) => v.clone(),
        }
    }

    /// Composition `self ∘ other` as an action on functions: applying the
    /// result equals applying `other` first, then `self`.
    pub fn then(&self, other: &SlotPermutation) -> SlotPermutation {
        // f ↦ other(f) substitutes λ_j ↦ λ_{o(j)}; then self substitutes
        // λ_k ↦ λ_{s(k)}, so overall λ_j ↦ λ_{s(o(j))}
        let n = self.images.len().max(other.images.len());
        let images = (0..n)
            .map(|i| {
                let s = self.images(i);
                let o = other.images(i);
                let len = s.len().max(o.len());
                (1..=len as u16)
                    .map(|j| {
                        let oj = o.get(j as usize - 1).copied().unwrap_or(j);
                        s.get(oj as usize - 1).copied().unwrap_or(oj)
                    })
                    .collect()
            })
            .collect();
        SlotPermutation { images }
    }
}

/// `σ(f)`: substitutes `λ^i_j ↦ λ^i_{σᵢ(j)}`.
pub fn permute_vars(f: &RatFunc, sigma: &SlotPermutation) -> RatFunc {
    if sigma.is_identity() {
        return f.clone();
    }
    f.rename_injective(&|v: &VarId| sigma.apply_var(v))
}

/// `permute_vars` for a function declared on `declared[i]` slots per vertex;
/// the permutation may not reach beyond the declared slots.
pub fn permute_vars_declared(f: &RatFunc, sigma: &SlotPermutation, declared: &[u32]) -> Result<RatFunc, AlgError> {
    for (i, n) in sigma.sizes().iter().enumerate() {
        let have = declared.get(i).copied().unwrap_or(0);
        if *n > have {
            return Err(AlgError::BadPermutation(format!(
                "permutation acts on {} slots of vertex {} but only {} are declared",
                n,
                i + 1,
                have
            )));
        }
    }
    Ok(permute_vars(f, sigma))
}

/// `Σ_{σ ∈ cosets} σ(f)`.
pub fn symmetrize(f: &RatFunc, cosets: &[SlotPermutation]) -> RatFunc {
    RatFunc::sum(cosets.iter().map(|s| permute_vars(f, s)))
}

/// Whether `f` is invariant under `𝔖_v = ∏ 𝔖_{vᵢ}` (checked on adjacent
/// transpositions).
pub fn is_symmetric(f: &RatFunc, v: &[u32]) -> bool {
    for (vertex, &n) in v.iter().enumerate() {
        for a in 1..n as usize {
            let t = SlotPermutation::transposition(v, vertex, a, a + 1);
            if permute_vars(f, &t) != *f {
                return false;
            }
        }
    }
    true
}

/// All permutations of `1..=n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (1..=n).permutations(n).collect()
}

/// The full symmetric group on the slots `1..=n` of one vertex.
pub fn symmetric_group(n_vertices: usize, vertex: usize, n: usize) -> Vec<SlotPermutation> {
    all_permutations(n)
        .into_iter()
        .map(|p| {
            let mut images = vec![Vec::new(); n_vertices];
            images[vertex] = p;
            SlotPermutation::new(images).expect("valid permutation")
        })
        .collect()
}

/// Sign of the permutation with the given images.
pub fn sign(images: &[usize]) -> i64 {
    let mut inv = 0usize;
    for i in 0..images.len() {
        inv += images[i + 1..].iter().filter(|&&x| x < images[i]).count();
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `∏_{i<j} (λⱼ − λᵢ)` on the slots `1..=n` of `vertex`.
pub fn vandermonde(vertex: usize, n: usize) -> Poly {
    let l = |i: usize| Poly::var(VarId::lambda(vertex, i));
    let mut acc = Poly::one();
    for i in 1..=n {
        for j in i + 1..=n {
            acc = &acc * &(&l(j) - &l(i));
        }
    }
    acc
}

/// `Σ_{σ∈𝔖ₙ} sgn(σ)·σ(p)` on the slots `1..=n` of `vertex`.
pub fn antisymmetrize(p: &Poly, vertex: usize, n: usize) -> Poly {
    all_permutations(n)
        .into_par_iter()
        .map(|img| {
            let s = sign(&img);
            let q = p.rename(&|v: &VarId| match v {
                VarId::Lambda { vertex: w, slot } if *w as usize == vertex && (*slot as usize) <= n => {
                    VarId::lambda(vertex, img[*slot as usize - 1])
                }
                _ => v.clone(),
            });
            if s < 0 {
                -q
            } else {
                q
            }
        })
        .reduce(Poly::zero, |a, b| &a + &b)
}

/// `Σ_{σ∈𝔖ₙ} σ(p / ∏_{i<j}(λⱼ − λᵢ))`, as the antisymmetrization of `p`
/// divided by the Vandermonde product.
///
/// When `p` only contributes to the staircase alternant the quotient is read
/// off directly; otherwise the antisymmetrization is formed and divided.
pub fn symmetrize_over_vandermonde(p: &Poly, vertex: usize, n: usize) -> Poly {
    let slots: Vec<VarId> = (1..=n).map(|j| VarId::lambda(vertex, j)).collect();
    let coeffs = p.alternant_coefficients(&slots);
    let staircase: Vec<u16> = (0..n as u16).rev().collect();
    if coeffs.keys().all(|a| *a == staircase) {
        // A_δ = ∏_{i<j}(λᵢ − λⱼ) = (−1)^{n(n−1)/2} ∏_{i<j}(λⱼ − λᵢ)
        let c = coeffs.get(&staircase).cloned().unwrap_or_else(Poly::zero);
        return if (n * n.saturating_sub(1) / 2) % 2 == 0 { c } else { -c };
    }
    antisymmetrize(p, vertex, n)
        .exact_div(&vandermonde(vertex, n))
        .expect("antisymmetric polynomials are divisible by the Vandermonde product")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_ratfunc;

    fn poly(s: &str) -> Poly {
        parse_ratfunc(s).unwrap().as_poly().unwrap().clone()
    }

    #[test]
    fn vandermonde_quotient_both_paths() {
        // staircase only: the quotient is a constant
        for (src, n) in [("l1_2 + 3*l1_1", 2), ("hbar*l1_3^2*l1_2 - l1_1*l1_2^2 + 7", 3)] {
            let p = poly(src);
            let slow = antisymmetrize(&p, 0, n).exact_div(&vandermonde(0, n)).unwrap();
            assert_eq!(symmetrize_over_vandermonde(&p, 0, n), slow);
        }
        // a higher alternant: quotient depends on the slots
        let p = poly("l1_1^2");
        assert_eq!(symmetrize_over_vandermonde(&p, 0, 2), poly("-l1_1 - l1_2"));
    }
    use crate::exactalg::poly::q_int;

    fn l(j: usize) -> RatFunc {
        RatFunc::lambda(0, j)
    }

    fn swap12() -> SlotPermutation {
        SlotPermutation::new(vec![vec![2, 1]]).unwrap()
    }

    #[test]
    fn permute_single_variable() {
        assert_eq!(permute_vars(&l(1), &swap12()), l(2));
    }

    #[test]
    fn permute_symmetric_fixed_point() {
        let f = &l(1) * &l(2);
        assert_eq!(permute_vars(&f, &swap12()), f);
    }

    #[test]
    fn permute_sign_flip() {
        let f = &l(1) - &l(2);
        assert_eq!(permute_vars(&f, &swap12()), -&f);
    }

    #[test]
    fn bad_permutation_rejected() {
        assert!(matches!(
            SlotPermutation::new(vec![vec![1, 1]]),
            Err(AlgError::BadPermutation(_))
        ));
        let r = permute_vars_declared(&l(1), &swap12(), &[1]);
        assert!(matches!(r, Err(AlgError::BadPermutation(_))));
    }

    #[test]
    fn symmetrize_examples() {
        let s2 = symmetric_group(1, 0, 2);
        assert_eq!(symmetrize(&l(1), &s2), &l(1) + &l(2));
        let odd = RatFunc::one().div_ref(&(&l(2) - &l(1))).unwrap();
        assert!(symmetrize(&odd, &s2).is_zero());
        let t = RatFunc::param("t1") + RatFunc::param("t2");
        let fac = (&(&l(1) - &l(2)) + &t).div_ref(&(&l(2) - &l(1))).unwrap();
        assert_eq!(symmetrize(&fac, &s2), RatFunc::from_q(q_int(-2)));
    }

    #[test]
    fn symmetry_checks() {
        assert!(is_symmetric(&(&l(1) + &l(2)), &[2]));
        assert!(!is_symmetric(&l(1), &[2]));
        let f = &RatFunc::lambda(0, 1) * &RatFunc::lambda(1, 1);
        assert!(is_symmetric(&f, &[1, 1]));
    }

    #[test]
    fn composition_matches_sequential_action() {
        let a = SlotPermutation::new(vec![vec![2, 3, 1]]).unwrap();
        let b = SlotPermutation::new(vec![vec![1, 3, 2]]).unwrap();
        let f = &(&l(1) * &l(1)) + &(&l(2) * &RatFunc::int(3));
        let seq = permute_vars(&permute_vars(&f, &b), &a);
        assert_eq!(permute_vars(&f, &a.then(&b)), seq);
    }
}
