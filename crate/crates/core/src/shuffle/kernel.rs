//! The multiplication kernels fac₁, fac₂ and the formal-CoHA kernel, in the
//! slot-offset variables `λ′ⁱₛ = λⁱₛ`, `λ″ⁱₜ = λⁱ_{t+v₁ⁱ}`.

use crate::exactalg::RatFunc;
use crate::fgl::FormalGroupLaw;
use crate::quiver::{DimVector, Quiver};

use super::{RootMap, ShuffleError};

/// A kernel split as `poly_part / pole_part`.
///
/// For exact laws `poly_part` carries the whole kernel and `pole_part = 1`.
/// For truncated laws `poly_part` is a truncated polynomial and `pole_part`
/// the product of the linear differences `λ″ − λ′` split off by
/// `unit_factor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub poly_part: RatFunc,
    pub pole_part: RatFunc,
    /// Number of linear pole factors.
    pub poles: u32,
}

impl Kernel {
    pub fn one() -> Self {
        Kernel {
            poly_part: RatFunc::one(),
            pole_part: RatFunc::one(),
            poles: 0,
        }
    }

    /// The kernel as a single rational function.
    pub fn value(&self) -> Result<RatFunc, ShuffleError> {
        Ok(self.poly_part.div_ref(&self.pole_part)?)
    }

    pub(crate) fn mul(&self, other: &Kernel, law: &FormalGroupLaw) -> Result<Kernel, ShuffleError> {
        Ok(Kernel {
            poly_part: law.truncate(&(&self.poly_part * &other.poly_part))?,
            pole_part: &self.pole_part * &other.pole_part,
            poles: self.poles + other.poles,
        })
    }
}

/// Builds kernels for one law, root map and pair of parameters.
pub(crate) struct KernelBuilder<'a> {
    pub law: &'a FormalGroupLaw,
    pub roots: RootMap,
    pub t1: &'a RatFunc,
    pub t2: &'a RatFunc,
}

impl KernelBuilder<'_> {
    fn first(&self, i: usize, s: u32) -> RatFunc {
        self.roots.root(i, s as usize)
    }

    fn second(&self, v1: &DimVector, i: usize, t: u32) -> RatFunc {
        self.roots.root(i, (v1.get(i) + t) as usize)
    }

    /// Multiplies `acc` by `1/(x −_F y)`.
    fn divide_by_difference(&self, acc: &mut Kernel, x: &RatFunc, y: &RatFunc) -> Result<(), ShuffleError> {
        match self.law {
            FormalGroupLaw::Truncated { .. } => {
                let (lin, g) = self.law.unit_factor(x, y)?;
                let ginv = self.law.unit_inverse(&g)?;
                acc.poly_part = self.law.truncate(&(&acc.poly_part * &ginv))?;
                acc.pole_part = &acc.pole_part * &lin;
                acc.poles += 1;
            }
            _ => {
                let d = self.law.difference(x, y)?;
                acc.poly_part = acc.poly_part.div_ref(&d)?;
            }
        }
        Ok(())
    }

    fn multiply(&self, acc: &mut Kernel, f: &RatFunc) -> Result<(), ShuffleError> {
        acc.poly_part = self.law.truncate(&(&acc.poly_part * f))?;
        Ok(())
    }

    /// `∏ᵢ ∏ₛ ∏ₜ (λ′ⁱₛ −_F λ″ⁱₜ +_F t₁ +_F t₂)/(λ″ⁱₜ −_F λ′ⁱₛ)`.
    pub fn fac1(&self, v1: &DimVector, v2: &DimVector) -> Result<Kernel, ShuffleError> {
        let mut acc = Kernel::one();
        let n = v1.len().max(v2.len());
        for i in 0..n {
            for s in 1..=v1.get(i) {
                for t in 1..=v2.get(i) {
                    let x1 = self.first(i, s);
                    let x2 = self.second(v1, i, t);
                    let d = self.law.difference(&x1, &x2)?;
                    let num = self.law.sum(&self.law.sum(&d, self.t1)?, self.t2)?;
                    self.multiply(&mut acc, &num)?;
                    self.divide_by_difference(&mut acc, &x2, &x1)?;
                }
            }
        }
        Ok(acc)
    }

    /// `∏_h ∏(λ″^{inc}ₜ −_F λ′^{out}ₛ +_F m_h·t₁) · ∏(λ″^{out}ₜ −_F λ′^{inc}ₛ +_F m_{h*}·t₂)`.
    pub fn fac2(&self, quiver: &Quiver, v1: &DimVector, v2: &DimVector) -> Result<Kernel, ShuffleError> {
        let mut acc = Kernel::one();
        for h in quiver.arrows() {
            let w1 = self.law.multiple(h.m_h, self.t1)?;
            for s in 1..=v1.get(h.out) {
                for t in 1..=v2.get(h.inc) {
                    let d = self.law.difference(&self.second(v1, h.inc, t), &self.first(h.out, s))?;
                    self.multiply(&mut acc, &self.law.sum(&d, &w1)?)?;
                }
            }
            let w2 = self.law.multiple(h.m_hstar, self.t2)?;
            for s in 1..=v1.get(h.inc) {
                for t in 1..=v2.get(h.out) {
                    let d = self.law.difference(&self.second(v1, h.out, t), &self.first(h.inc, s))?;
                    self.multiply(&mut acc, &self.law.sum(&d, &w2)?)?;
                }
            }
        }
        Ok(acc)
    }

    /// `∏_{h} ∏(λ″^{inc}ₜ −_F λ′^{out}ₛ) / ∏ᵢ ∏(λ″ⁱₜ −_F λ′ⁱₛ)`.
    pub fn coha(&self, quiver: &Quiver, v1: &DimVector, v2: &DimVector) -> Result<Kernel, ShuffleError> {
        let mut acc = Kernel::one();
        for h in quiver.arrows() {
            for s in 1..=v1.get(h.out) {
                for t in 1..=v2.get(h.inc) {
                    let d = self.law.difference(&self.second(v1, h.inc, t), &self.first(h.out, s))?;
                    self.multiply(&mut acc, &d)?;
                }
            }
        }
        let n = v1.len().max(v2.len());
        for i in 0..n {
            for s in 1..=v1.get(i) {
                for t in 1..=v2.get(i) {
                    let (x1, x2) = (self.first(i, s), self.second(v1, i, t));
                    self.divide_by_difference(&mut acc, &x2, &x1)?;
                }
            }
        }
        Ok(acc)
    }
}
