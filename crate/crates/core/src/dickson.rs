//! Normalized cubic Dickson polynomials `±(X³ − 3cX)` and the values `a` that give
//! them the largest stable-prime density.
//!
//! When `c = α² + 3β²`, the rational function
//! `g(x) = 2c(αx² + 6βx − 3α)/(x² + 3)` parameterizes the `a` for which the
//! discriminant `108c³ − 27a²` of `X³ − 3cX − a` is a square, i.e. the cubic has
//! cyclic Galois group. Such an `a` outside `f(ℚ)` makes `f(X) − a` irreducible.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::rational::{rat, serde_rational};
use crate::exactalg::{rational_roots, PolyQ, Rational};

/// Largest `c` accepted by [`represent_c`].
pub const MAX_C: u64 = 1_000_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DicksonError {
    #[error("c = {0} is not of the form α² + 3β²")]
    NotRepresentable(u64),
    #[error("c must lie in 1..={MAX_C}, got {0}")]
    OutOfRange(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DicksonParams {
    pub c: u64,
    pub sign: Sign,
    /// `(α, β)` with `c = α² + 3β²`, both nonnegative.
    pub representation: Option<(u64, u64)>,
}

impl DicksonParams {
    pub fn new(c: u64, sign: Sign) -> Result<Self, DicksonError> {
        Ok(DicksonParams { c, sign, representation: represent_c(c)? })
    }
}

/// Finds `c = α² + 3β²`, trying `β = 0, 1, …` in turn. `None` means no
/// representation exists.
pub fn represent_c(c: u64) -> Result<Option<(u64, u64)>, DicksonError> {
    if c == 0 || c > MAX_C {
        return Err(DicksonError::OutOfRange(c));
    }
    let mut beta = 0u64;
    while 3 * beta * beta <= c {
        let rest = c - 3 * beta * beta;
        let alpha = rest.sqrt();
        if alpha * alpha == rest {
            return Ok(Some((alpha, beta)));
        }
        beta += 1;
    }
    Ok(None)
}

/// `±(X³ − 3cX)`.
pub fn dickson_poly(params: &DicksonParams) -> PolyQ {
    let f = PolyQ::new(vec![rat(0), -rat(3) * Rational::from_integer(BigInt::from(params.c)), rat(0), rat(1)]);
    match params.sign {
        Sign::Plus => f,
        Sign::Minus => f.scale(&rat(-1)),
    }
}

/// `g(x) = 2c(αx² + 6βx − 3α)/(x² + 3)`.
pub fn g_value(c: u64, alpha: i64, beta: i64, x: &Rational) -> Rational {
    let c = Rational::from_integer(BigInt::from(c));
    let (a, b) = (rat(alpha), rat(beta));
    let num = &a * x * x + rat(6) * &b * x - rat(3) * &a;
    rat(2) * c * num / (x * x + rat(3))
}

/// Whether `a = f(x)` for some rational `x`.
pub fn in_image(f: &PolyQ, a: &Rational) -> bool {
    !rational_roots(&(f - &PolyQ::constant(a.clone()))).is_empty()
}

/// Rationals of naive height `h`: integers first, then by denominator, then numerator.
fn rationals_of_height(h: u64) -> Vec<Rational> {
    if h == 0 {
        return vec![rat(0)];
    }
    let mut out = Vec::new();
    for d in 1..=h {
        let nums: Vec<u64> = if d == h { (1..=h).collect() } else { vec![h] };
        for n in nums {
            if n.gcd(&d) == 1 {
                let x = Rational::new(BigInt::from(n), BigInt::from(d));
                out.push(x.clone());
                out.push(-x);
            }
        }
    }
    out
}

/// `x = 0, ±1, ±2, ±1/2, ±3, ±3/2, ±1/3, ±2/3, …`
pub fn rationals_by_height() -> impl Iterator<Item = Rational> {
    (0u64..).flat_map(rationals_of_height)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    #[serde(with = "serde_rational")]
    pub x: Rational,
    #[serde(with = "serde_rational")]
    pub a: Rational,
    /// `a ∉ f(ℚ)`.
    pub eligible: bool,
}

/// The first `count` distinct values `a = g(x)`, sampling `x` by ascending height.
pub fn maximal_density_candidates(c: u64, count: usize) -> Result<Vec<Candidate>, DicksonError> {
    let params = DicksonParams::new(c, Sign::Plus)?;
    let (alpha, beta) = params.representation.ok_or(DicksonError::NotRepresentable(c))?;
    let f = dickson_poly(&params);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(count);
    for x in rationals_by_height() {
        if out.len() == count {
            break;
        }
        let a = g_value(c, alpha as i64, beta as i64, &x);
        if seen.insert(a.clone()) {
            let eligible = !in_image(&f, &a);
            out.push(Candidate { x, a, eligible });
        }
    }
    Ok(out)
}
