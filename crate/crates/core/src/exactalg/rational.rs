//! Big rationals and p-adic valuations.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `ν_p` of a nonzero big integer.
pub fn int_valuation(n: &BigInt, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of `x`; `None` stands for +∞ (x = 0).
pub fn valuation(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let num = int_valuation(x.numer(), p) as i64;
    let den = int_valuation(x.denom(), p) as i64;
    Some(num - den)
}

/// Residue of `x` modulo `p`, or `None` if `p` divides the denominator.
pub fn reduce_rational(x: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = x.denom().mod_floor(&pb).to_u64().unwrap();
    if den == 0 {
        return None;
    }
    let num = x.numer().mod_floor(&pb).to_u64().unwrap();
    Some(super::poly_fp::mul_mod(num, super::poly_fp::inv_mod(den, p), p))
}

pub fn is_p_integral(x: &Rational, p: u64) -> bool {
    !(x.denom() % BigInt::from(p)).is_zero()
}

/// Naive height `max(|num|, den)` as a big integer (its log is the logarithmic height).
pub fn naive_height(x: &Rational) -> BigUint {
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    if n > d { n.clone() } else { d.clone() }
}

/// Natural log of the naive height, for reporting only.
pub fn log_height(x: &Rational) -> f64 {
    biguint_ln(&naive_height(x))
}

pub(crate) fn biguint_ln(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Parses `-3`, `7/2`, `-1/7` and exact decimals such as `0.015`.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("not a rational literal: {s:?}"));
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('+') {
            return Err(bad());
        }
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        return Ok(Rational::new(num, BigInt::from(10u32).pow(frac.len() as u32)));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(
            BigInt::from_biguint(Sign::Plus, rn),
            BigInt::from_biguint(Sign::Plus, rd),
        ))
    } else {
        None
    }
}

pub(crate) mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    /// Accepts `"7/2"` as well as a bare JSON integer.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum Literal {
        Text(String),
        Int(i64),
    }

    impl Literal {
        pub(crate) fn into_rational<E: serde::de::Error>(self) -> Result<Rational, E> {
            match self {
                Literal::Text(s) => parse_rational(&s).map_err(E::custom),
                Literal::Int(n) => Ok(super::rat(n)),
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        Literal::deserialize(d)?.into_rational()
    }
}

pub(crate) mod serde_rational_opt {
    use super::serde_rational::Literal;
    use super::{format_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<Literal>::deserialize(d)?.map(Literal::into_rational).transpose()
    }

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&format_rational(x)),
            None => s.serialize_none(),
        }
    }
}

pub(crate) mod serde_rational_vec {
    use super::{format_rational, Rational};
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }
}
