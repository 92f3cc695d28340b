//! Structure constants of the spherical subalgebra generated by the
//! `𝒮ℋ_{e_k}`.

use std::collections::HashMap;

use crate::quiver::{DimVector, Quiver};

use super::{ShuffleAlgebra, ShuffleElement, ShuffleError};

/// A word in the generators `(λ^{(k)})^r`, as `(k, r)` letters.
pub type Word = Vec<(usize, u32)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SphericalLimits {
    pub max_words: usize,
    /// Bound on `|Sh(v₁, v₂)|` for any single product.
    pub max_shuffles: u64,
}

impl Default for SphericalLimits {
    fn default() -> Self {
        SphericalLimits {
            max_words: 5000,
            max_shuffles: 720,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalEntry {
    pub word: Word,
    pub element: ShuffleElement,
    /// `false` flags a non-polynomial representative.
    pub polynomial: bool,
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn shuffle_count(v1: &DimVector, v2: &DimVector) -> u64 {
    (0..v1.len().max(v2.len()))
        .map(|i| binom((v1.get(i) + v2.get(i)) as u64, v1.get(i) as u64))
        .fold(1u64, |a, b| a.saturating_mul(b))
}

fn enumerate_words(
    quiver: &Quiver,
    max_deg: u32,
    max_dim: &DimVector,
    limit: usize,
) -> Result<Vec<Word>, ShuffleError> {
    let n = quiver.num_vertices();
    let letters: Vec<(usize, u32)> = (0..n)
        .filter(|&k| max_dim.get(k) > 0)
        .flat_map(|k| (0..=max_deg).map(move |r| (k, r)))
        .collect();
    let mut out: Vec<Word> = Vec::new();
    let mut frontier: Vec<(Word, DimVector)> = vec![(Vec::new(), DimVector::zero(n))];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (w, d) in &frontier {
            for &(k, r) in &letters {
                let nd = d.add(&DimVector::unit(n, k));
                if !nd.le(max_dim) {
                    continue;
                }
                let mut nw = w.clone();
                nw.push((k, r));
                out.push(nw.clone());
                if out.len() > limit {
                    return Err(ShuffleError::LimitExceeded(format!("more than {} words", limit)));
                }
                next.push((nw, nd));
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// Products of all words with letters `(k, r)`, `r ≤ max_deg`, and total
/// dimension `≤ max_dim`, in order of length then letters.  Any limit
/// violation discards the whole table.
pub fn spherical_span(
    alg: &ShuffleAlgebra,
    max_deg: u32,
    max_dim: &DimVector,
    twisted: bool,
    limits: SphericalLimits,
) -> Result<Vec<SphericalEntry>, ShuffleError> {
    let q = alg.quiver();
    q.check_dim(max_dim)?;
    let words = enumerate_words(q, max_deg, max_dim, limits.max_words)?;
    let n = q.num_vertices();
    let mut memo: HashMap<Word, ShuffleElement> = HashMap::new();
    let mut out = Vec::with_capacity(words.len());
    for w in words {
        let (k, r) = *w.last().unwrap();
        let g = ShuffleElement::generator(n, k, r);
        let element = if w.len() == 1 {
            g
        } else {
            let prefix = &memo[&w[..w.len() - 1].to_vec()];
            let c = shuffle_count(&prefix.v, &g.v);
            if c > limits.max_shuffles {
                return Err(ShuffleError::LimitExceeded(format!(
                    "word {:?} needs {} shuffles (limit {})",
                    w, c, limits.max_shuffles
                )));
            }
            if twisted {
                alg.twisted_product(prefix, &g)?
            } else {
                alg.product(prefix, &g)?
            }
        };
        memo.insert(w.clone(), element.clone());
        out.push(SphericalEntry {
            polynomial: element.is_polynomial(),
            word: w,
            element,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::RatFunc;
    use crate::fgl::FormalGroupLaw;

    #[test]
    fn a1_table() {
        let alg = ShuffleAlgebra::new(FormalGroupLaw::additive(), Quiver::a1());
        let t = spherical_span(&alg, 1, &DimVector(vec![1]), false, SphericalLimits::default()).unwrap();
        let fs: Vec<String> = t.iter().map(|e| e.element.f.to_string()).collect();
        assert_eq!(fs, vec!["1", "l1_1"]);
        let t = spherical_span(&alg, 0, &DimVector(vec![2]), false, SphericalLimits::default()).unwrap();
        assert_eq!(t[1].element.f, RatFunc::int(-2));
        assert!(t.iter().all(|e| e.polynomial));
    }

    #[test]
    fn a2_orders_differ() {
        let alg = ShuffleAlgebra::new(FormalGroupLaw::additive(), Quiver::a2());
        let t = spherical_span(&alg, 0, &DimVector(vec![1, 1]), false, SphericalLimits::default()).unwrap();
        let find = |w: Word| t.iter().find(|e| e.word == w).unwrap().element.clone();
        let x = find(vec![(0, 0), (1, 0)]);
        let y = find(vec![(1, 0), (0, 0)]);
        assert_eq!(x.v, y.v);
        assert_ne!(x, y);
    }

    #[test]
    fn limits_are_all_or_nothing() {
        let alg = ShuffleAlgebra::new(FormalGroupLaw::additive(), Quiver::a1());
        let lim = SphericalLimits {
            max_words: 100,
            max_shuffles: 2,
        };
        let r = spherical_span(&alg, 0, &DimVector(vec![3]), false, lim);
        assert!(matches!(r, Err(ShuffleError::LimitExceeded(_))));
    }
}
