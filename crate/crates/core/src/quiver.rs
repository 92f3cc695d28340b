//! Quivers, dimension vectors, adjacency/Cartan matrices, arrow weights,
//! shuffle cosets and the twist sign.

use std::fmt;

use thiserror::Error;

use crate::exactalg::SlotPermutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("dimension vector has {got} entries, quiver has {want} vertices")]
    DimMismatch { got: usize, want: usize },
    #[error("unknown quiver preset `{0}`")]
    UnknownPreset(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub out: usize,
    pub inc: usize,
    pub m_h: i64,
    pub m_hstar: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// Dimension vector indexed by vertex position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    /// The basis vector `e_k`.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = vec![0; n];
        v[k] = 1;
        DimVector(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        let n = self.len().max(other.len());
        DimVector((0..n).map(|i| self.get(i) + other.get(i)).collect())
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &DimVector) -> bool {
        (0..self.len().max(other.len())).all(|i| self.get(i) <= other.get(i))
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

pub type Matrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverMatrices {
    pub ad: Matrix,
    pub adbar: Matrix,
    pub c: Matrix,
    pub cbar: Matrix,
    pub cartan: Matrix,
}

/// Which torus-weight regime a computation follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightCase {
    /// All weights 1, `t₁`, `t₂` independent.
    Case1,
    /// `t₁ = t₂ = ħ/2` with the weights of [`Quiver::with_case2_weights`].
    Case2,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        for a in &arrows {
            for x in [a.out, a.inc] {
                if x >= vertices.len() {
                    return Err(QuiverError::UnknownVertex(x.to_string()));
                }
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Vertices named `"1"`, …, `"n"` and arrows `(out, inc)` given 0-based,
    /// all weights 1.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = edges
            .iter()
            .map(|&(out, inc)| Arrow {
                out,
                inc,
                m_h: 1,
                m_hstar: 1,
            })
            .collect();
        Quiver::new(vertices, arrows).expect("edges within range")
    }

    pub fn a1() -> Self {
        Self::from_edges(1, &[])
    }

    pub fn a2() -> Self {
        Self::from_edges(2, &[(0, 1)])
    }

    pub fn a3() -> Self {
        Self::from_edges(3, &[(0, 1), (1, 2)])
    }

    pub fn jordan() -> Self {
        Self::from_edges(1, &[(0, 0)])
    }

    /// Two vertices with `a` parallel arrows `1 → 2`.
    pub fn kronecker(a: usize) -> Self {
        Self::from_edges(2, &vec![(0, 1); a])
    }

    /// Built-in presets: `A1`, `A2`, `A3`, `Jordan`, `Kronecker-<a>`
    /// (`Kronecker` alone means `a = 2`).
    pub fn preset(name: &str) -> Result<Self, QuiverError> {
        let lower = name.to_ascii_lowercase();
        match lower.as_str() {
            "a1" => Ok(Self::a1()),
            "a2" => Ok(Self::a2()),
            "a3" => Ok(Self::a3()),
            "jordan" => Ok(Self::jordan()),
            "kronecker" => Ok(Self::kronecker(2)),
            _ => lower
                .strip_prefix("kronecker-")
                .and_then(|a| a.parse::<usize>().ok())
                .map(Self::kronecker)
                .ok_or_else(|| QuiverError::UnknownPreset(name.to_string())),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, QuiverError> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
    }

    pub fn unit(&self, k: usize) -> DimVector {
        DimVector::unit(self.num_vertices(), k)
    }

    pub fn zero_dim(&self) -> DimVector {
        DimVector::zero(self.num_vertices())
    }

    pub fn check_dim(&self, v: &DimVector) -> Result<(), QuiverError> {
        if v.len() != self.num_vertices() {
            return Err(QuiverError::DimMismatch {
                got: v.len(),
                want: self.num_vertices(),
            });
        }
        Ok(())
    }

    /// `a_ij`, the number of arrows `i → j`.
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|a| a.out == i && a.inc == j).count()
    }

    pub fn has_edge_loops(&self) -> bool {
        self.arrows.iter().any(|a| a.out == a.inc)
    }

    pub fn has_loop_at(&self, k: usize) -> bool {
        self.arrows.iter().any(|a| a.out == k && a.inc == k)
    }

    /// `AD_kl = #{h : inc(h) = k, out(h) = l}`, `C = I − AD`, `C̄ = I − ADᵗ`,
    /// Cartan `= C + C̄`.
    pub fn matrices(&self) -> QuiverMatrices {
        let n = self.num_vertices();
        let mut ad = vec![vec![0i64; n]; n];
        for a in &self.arrows {
            ad[a.inc][a.out] += 1;
        }
        let adbar: Matrix = (0..n).map(|k| (0..n).map(|l| ad[l][k]).collect()).collect();
        let id = |k: usize, l: usize| i64::from(k == l);
        let c: Matrix = (0..n).map(|k| (0..n).map(|l| id(k, l) - ad[k][l]).collect()).collect();
        let cbar: Matrix = (0..n)
            .map(|k| (0..n).map(|l| id(k, l) - adbar[k][l]).collect())
            .collect();
        let cartan = (0..n).map(|k| (0..n).map(|l| c[k][l] + cbar[k][l]).collect()).collect();
        QuiverMatrices {
            ad,
            adbar,
            c,
            cbar,
            cartan,
        }
    }

    /// `c_kl = 2δ_kl − a_kl − a_lk`.
    pub fn cartan_entry(&self, k: usize, l: usize) -> i64 {
        2 * i64::from(k == l) - self.arrow_count(k, l) as i64 - self.arrow_count(l, k) as i64
    }

    /// Weights `m_{h_p} = a+2−2p`, `m_{h_p*} = −a+2p` for the `a` arrows of
    /// each ordered vertex pair, numbered in input order.
    pub fn with_case2_weights(&self) -> Quiver {
        let mut arrows = self.arrows.clone();
        let mut seen: Vec<(usize, usize, i64)> = Vec::new();
        for i in 0..arrows.len() {
            let key = (arrows[i].out, arrows[i].inc);
            let a = self.arrow_count(key.0, key.1) as i64;
            let p = match seen.iter_mut().find(|s| (s.0, s.1) == key) {
                Some(s) => {
                    s.2 += 1;
                    s.2
                }
                None => {
                    seen.push((key.0, key.1, 1));
                    1
                }
            };
            arrows[i].m_h = a + 2 - 2 * p;
            arrows[i].m_hstar = -a + 2 * p;
        }
        Quiver {
            vertices: self.vertices.clone(),
            arrows,
        }
    }

    /// Whether `t₁^{m_h} t₂^{m_h*}` is arrow-independent under the given case.
    pub fn satisfies_weight_assumption(&self, case: WeightCase) -> bool {
        match case {
            WeightCase::Case1 => self.arrows.iter().all(|a| a.m_h == 1 && a.m_hstar == 1),
            WeightCase::Case2 => {
                let mut sums = self.arrows.iter().map(|a| a.m_h + a.m_hstar);
                match sums.next() {
                    None => true,
                    Some(s) => sums.all(|x| x == s),
                }
            }
        }
    }

    /// `(−1)^{⟨v₂, C̄ v₁⟩ + 1}`.
    pub fn twist_sign(&self, v1: &DimVector, v2: &DimVector) -> i64 {
        let cbar = self.matrices().cbar;
        let n = self.num_vertices();
        let mut e: i64 = 1;
        for k in 0..n {
            for l in 0..n {
                e += v2.get(k) as i64 * cbar[k][l] * v1.get(l) as i64;
            }
        }
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

/// Ordered `p`-subsets of `{1..n}` in lexicographic order.
fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (1..=n).combinations(p).collect()
}

/// `∏ᵢ Sh(v₁ⁱ, v₂ⁱ)`: slot permutations keeping the relative order of the
/// first `v₁ⁱ` and of the last `v₂ⁱ` slots at every vertex.
pub fn shuffles(v1: &DimVector, v2: &DimVector) -> Vec<SlotPermutation> {
    let n = v1.len().max(v2.len());
    let per_vertex: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|i| {
            let (a, b) = (v1.get(i) as usize, v2.get(i) as usize);
            subsets(a + b, a)
                .into_iter()
                .map(|first| {
                    let rest = (1..=a + b).filter(|x| !first.contains(x));
                    first.iter().copied().chain(rest).collect()
                })
                .collect()
        })
        .collect();
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for choices in &per_vertex {
        let mut next = Vec::with_capacity(out.len() * choices.len());
        for prefix in &out {
            for c in choices {
                let mut p = prefix.clone();
                p.push(c.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|images| SlotPermutation::new(images).expect("shuffle is a permutation"))
        .collect()
}

/// Shuffles of three consecutive blocks at each vertex.
pub fn shuffles3(v1: &DimVector, v2: &DimVector, v3: &DimVector) -> Vec<SlotPermutation> {
    let v12 = v1.add(v2);
    let outer = shuffles(&v12, v3);
    let inner = shuffles(v1, v2);
    let mut out = Vec::with_capacity(outer.len() * inner.len());
    for o in &outer {
        for i in &inner {
            out.push(o.then(i));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn jordan_matrices() {
        let m = Quiver::jordan().matrices();
        assert_eq!(m.ad, vec![vec![1]]);
        assert_eq!(m.c, vec![vec![0]]);
        assert_eq!(m.cbar, vec![vec![0]]);
        assert_eq!(m.cartan, vec![vec![0]]);
    }

    #[test]
    fn a2_matrices() {
        let m = Quiver::a2().matrices();
        assert_eq!(m.ad, vec![vec![0, 0], vec![1, 0]]);
        assert_eq!(m.cartan, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(Quiver::a2().cartan_entry(0, 1), -1);
    }

    #[test]
    fn arrowless_matrices() {
        let m = Quiver::from_edges(3, &[]).matrices();
        for k in 0..3 {
            for l in 0..3 {
                assert_eq!(m.c[k][l], i64::from(k == l));
                assert_eq!(m.cartan[k][l], 2 * i64::from(k == l));
            }
        }
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(&dv(&[1]), &dv(&[1])).len(), 2);
        assert_eq!(shuffles(&dv(&[1, 1]), &dv(&[1, 0])).len(), 2);
        let id = shuffles(&dv(&[0, 0]), &dv(&[2, 1]));
        assert_eq!(id.len(), 1);
        assert!(id[0].is_identity());
        assert_eq!(shuffles(&dv(&[2, 1]), &dv(&[2, 2])).len(), 6 * 3);
    }

    #[test]
    fn shuffles_preserve_block_order() {
        let (v1, v2) = (dv(&[2, 1]), dv(&[2, 2]));
        for s in shuffles(&v1, &v2) {
            for i in 0..2 {
                let img = s.images(i);
                let a = v1.get(i) as usize;
                assert!(img[..a].windows(2).all(|w| w[0] < w[1]));
                assert!(img[a..].windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn case2_weight_values() {
        let q = Quiver::a2().with_case2_weights();
        assert_eq!((q.arrows()[0].m_h, q.arrows()[0].m_hstar), (1, 1));
        let k = Quiver::kronecker(2).with_case2_weights();
        let w: Vec<(i64, i64)> = k.arrows().iter().map(|a| (a.m_h, a.m_hstar)).collect();
        assert_eq!(w, vec![(2, 0), (0, 2)]);
        for a in 1..5 {
            let q = Quiver::kronecker(a).with_case2_weights();
            assert!(q.satisfies_weight_assumption(WeightCase::Case2));
            assert!(q.arrows().iter().all(|h| h.m_h + h.m_hstar == 2));
        }
    }

    #[test]
    fn twist_signs() {
        let e = dv(&[1]);
        assert_eq!(Quiver::a1().twist_sign(&e, &e), 1);
        assert_eq!(Quiver::jordan().twist_sign(&e, &e), -1);
        assert_eq!(Quiver::a1().twist_sign(&dv(&[0]), &e), -1);
    }

    #[test]
    fn presets() {
        assert_eq!(Quiver::preset("Kronecker-3").unwrap().arrow_count(0, 1), 3);
        assert_eq!(Quiver::preset("A3").unwrap().num_vertices(), 3);
        assert!(Quiver::preset("E8").is_err());
    }
}
