//! Exact arithmetic kernel: rationals, sparse multivariate polynomials,
//! canonical rational functions, truncated Laurent tails and slot
//! permutations.  No floating point is used anywhere.

pub mod gcd;
pub mod laurent;
pub mod perm;
pub mod poly;
pub mod ratfunc;
pub mod text;
pub mod var;

use thiserror::Error;

pub use laurent::LaurentTail;
pub use perm::{
    all_permutations, antisymmetrize, is_symmetric, permute_vars, permute_vars_declared, sign, symmetric_group,
    symmetrize, symmetrize_over_vandermonde, vandermonde, SlotPermutation,
};
pub use poly::{q_frac, q_int, Poly, Q};
pub use ratfunc::RatFunc;
pub use text::{parse_ratfunc, parse_rational};
pub use var::VarId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("bad permutation: {0}")]
    BadPermutation(String),
    #[error("substitution hits a pole")]
    EvaluationPole,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not expandable at infinity: {0}")]
    NotExpandable(String),
}

/// `a op b` on rational functions (polynomials are rational functions with
/// denominator one).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn poly_arith(a: &RatFunc, b: &RatFunc, op: ArithOp) -> Result<RatFunc, AlgError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.div_ref(b)?,
    })
}
