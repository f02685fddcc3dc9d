//! Dense univariate polynomials over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, rat, Rational};
use super::AlgebraError;

/// Default guard for [`PolyQ::iterate`].
pub const DEFAULT_DEGREE_CAP: u64 = 100_000;

/// Polynomial with rational coefficients, lowest degree first.
///
/// Trailing zeros are never stored, so the zero polynomial is the empty
/// vector and structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `X - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyQ { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(g(X))`, by Horner's rule.
    pub fn compose(&self, g: &PolyQ) -> PolyQ {
        let mut acc = PolyQ::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &PolyQ::constant(c.clone());
        }
        acc
    }

    /// `n`-th iterate under composition, guarded by `cap` on the resulting degree.
    pub fn iterate(&self, n: u32, cap: u64) -> Result<PolyQ, AlgebraError> {
        let d = self.deg() as u64;
        if n > 0 && d >= 2 {
            let degree = d.checked_pow(n).filter(|&deg| deg <= cap);
            if degree.is_none() {
                return Err(AlgebraError::DegreeCapExceeded {
                    degree: format!("{d}^{n}"),
                    cap,
                });
            }
        }
        let mut acc = PolyQ::x();
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        Ok(acc)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, b: &PolyQ) -> (PolyQ, PolyQ) {
        let db = b.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return (PolyQ::zero(), self.clone());
        }
        let inv = b.leading().recip();
        let mut q = vec![Rational::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = &r[i + db] * &inv;
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    r[i + j] -= &c * bj;
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        (PolyQ::new(q), PolyQ::new(r))
    }

    pub fn rem(&self, b: &PolyQ) -> PolyQ {
        self.div_rem(b).1
    }

    /// Exact quotient; `None` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &PolyQ) -> Option<PolyQ> {
        let (q, r) = self.div_rem(b);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero iff both inputs are zero).
    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Splits into `c · P` with `P` a primitive integer polynomial of positive leading coefficient.
    pub fn primitive_integer_model(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, den), prim)
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// Conjugate `(X - a) ∘ self ∘ (X + a)`.
    pub fn linear_shift(&self, a: &Rational) -> PolyQ {
        let inner = PolyQ::new(vec![a.clone(), Rational::one()]);
        &self.compose(&inner) - &PolyQ::constant(a.clone())
    }

    /// Coefficients of `self(X + a)`, i.e. the Taylor expansion around `a`.
    pub fn taylor_shift(&self, a: &Rational) -> PolyQ {
        self.compose(&PolyQ::new(vec![a.clone(), Rational::one()]))
    }

    /// Formats the polynomial in the given variable name.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", format_rational(&mag), mono));
            }
        }
        out
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyQ({self})")
    }
}

impl serde::Serialize for PolyQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for PolyQ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        super::parse::parse_poly(&s).map_err(serde::de::Error::custom)
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyQ {
            type Output = PolyQ;
            fn $m(self, rhs: PolyQ) -> PolyQ {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::ratio;

    fn p(c: &[i64]) -> PolyQ {
        PolyQ::from_ints(c)
    }

    #[test]
    fn compose_examples() {
        let f = p(&[1, 0, 1]);
        assert_eq!(f.compose(&PolyQ::x()), f);
        assert_eq!(f.compose(&p(&[-1, 1])), p(&[2, -2, 1]));
        assert_eq!(p(&[0, 0, 1]).compose(&p(&[0, 0, 1])), p(&[0, 0, 0, 0, 1]));
    }

    #[test]
    fn iterate_examples() {
        assert_eq!(p(&[0, 0, 1]).iterate(3, DEFAULT_DEGREE_CAP).unwrap(), PolyQ::monomial(rat(1), 8));
        assert_eq!(p(&[1, 0, 1]).iterate(2, DEFAULT_DEGREE_CAP).unwrap(), p(&[2, 0, 2, 0, 1]));
        assert_eq!(p(&[5, 3, 1]).iterate(0, DEFAULT_DEGREE_CAP).unwrap(), PolyQ::x());
        assert!(matches!(
            p(&[1, 0, 1]).iterate(20, DEFAULT_DEGREE_CAP),
            Err(AlgebraError::DegreeCapExceeded { .. })
        ));
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        let g = p(&[2, 3, 1]).gcd(&p(&[-1, 0, 1]));
        assert_eq!(g, p(&[1, 1]));
    }

    #[test]
    fn primitive_model() {
        let f = PolyQ::new(vec![ratio(1, 2), ratio(-3, 4), ratio(-3, 2)]);
        let (c, prim) = f.primitive_integer_model();
        let back = PolyQ::from_bigints(&prim).scale(&c);
        assert_eq!(back, f);
        assert!(prim.last().unwrap() > &BigInt::zero());
    }

    #[test]
    fn shift_example() {
        assert_eq!(p(&[1, 0, 1]).linear_shift(&rat(1)), p(&[1, 2, 1]));
        let f = p(&[3, -1, 0, 2]);
        assert_eq!(f.linear_shift(&ratio(2, 3)).linear_shift(&ratio(-2, 3)), f);
    }

    #[test]
    fn display_roundtrip_text() {
        assert_eq!(p(&[1, -3, 0, 1]).to_string(), "x^3 - 3*x + 1");
        assert_eq!(PolyQ::new(vec![ratio(-1, 2)]).to_string(), "-1/2");
        assert_eq!(PolyQ::zero().to_string(), "0");
    }
}
