//! Exact arithmetic: rationals, polynomials over ℚ and F_p, resultants, factorization.

pub mod factor_q;
pub mod intfactor;
pub mod parse;
pub mod poly_fp;
pub mod poly_q;
pub mod rational;
pub mod resultant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

pub use factor_q::{q_factor, rational_roots, squarefree_decomposition, Factorization};
pub use parse::parse_poly;
pub use poly_fp::{fp_factor_shape, fp_irreducible, FactorShape, PolyFp};
pub use poly_q::PolyQ;
pub use rational::{parse_rational, valuation, Rational};
pub use resultant::{discriminant, discriminant_in_t, resultant};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: String, cap: u64 },
    #[error("reduction modulo {p} is undefined: a denominator is divisible by {p}")]
    UndefinedReduction { p: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Coefficientwise reduction of `f` modulo `p`. The leading coefficient may vanish.
pub fn reduce_mod_p(f: &PolyQ, p: u64) -> Result<PolyFp, AlgebraError> {
    let pb = BigInt::from(p);
    let mut out = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        let den = c.denom().mod_floor(&pb).to_u64().unwrap();
        if den == 0 {
            return Err(AlgebraError::UndefinedReduction { p });
        }
        let num = c.numer().mod_floor(&pb).to_u64().unwrap();
        out.push(poly_fp::mul_mod(num, poly_fp::inv_mod(den, p), p));
    }
    Ok(PolyFp::new(p, out))
}
