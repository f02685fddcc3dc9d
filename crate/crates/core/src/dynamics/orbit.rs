//! Forward orbits over ℚ with exact escape certification.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exactalg::rational::{biguint_ln, naive_height, serde_rational, serde_rational_vec, Rational};
use crate::exactalg::PolyQ;

/// Escape threshold for a polynomial of degree `d ≥ 2`.
///
/// Write `f = (1/D) Σ c_i X^i` with integers `c_i`, and let `H(x)` be the naive
/// height. With `C = |c_d|`, `A = Σ_{i<d} |c_i|` and `λ = max(1, 2A/C)` one has
/// `H(f(x)) ≥ min(C/2, D/λ^d) · H(x)^d / (D C^d)`, because the cancelled
/// common factor divides `D C^d`. Hence `H(x)^{d-1} > K` with
/// `K = D C^d / min(C/2, D/λ^d)` forces `H(f(x)) > H(x)`, and the same then
/// holds for every later iterate. When `A = 0` the sharper `min(C, D)` is used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EscapeBound {
    pub degree: usize,
    #[serde(with = "serde_rational")]
    pub threshold: Rational,
}

impl EscapeBound {
    pub fn new(f: &PolyQ) -> Self {
        let d = f.deg();
        assert!(d >= 2, "escape bound needs degree at least 2");
        let mut den = BigInt::one();
        for c in f.coeffs() {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = f
            .coeffs()
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer().abs())
            .collect();
        let big_d = Rational::from_integer(den);
        let c = Rational::from_integer(ints[d].clone());
        let a: BigInt = ints[..d].iter().sum();
        let scale = big_d.clone() * pow(&c, d);
        let denom_bound = if a.is_zero() {
            c.clone().min(big_d)
        } else {
            let lambda = (Rational::from_integer(a * 2) / &c).max(Rational::one());
            let half_c = &c / Rational::from_integer(BigInt::from(2));
            half_c.min(big_d / pow(&lambda, d))
        };
        EscapeBound { degree: d, threshold: scale / denom_bound }
    }

    /// `H(x)^{d-1} > K`: every later iterate has strictly larger height.
    pub fn certifies(&self, x: &Rational) -> bool {
        let h = Rational::from_integer(BigInt::from(naive_height(x)));
        pow(&h, self.degree - 1) > self.threshold
    }

    /// The logarithmic form `ln(K)/(d-1)`, clamped at 0. For reporting.
    pub fn log_height(&self) -> f64 {
        let num = biguint_ln(self.threshold.numer().magnitude());
        let den = biguint_ln(self.threshold.denom().magnitude());
        ((num - den) / (self.degree - 1) as f64).max(0.0)
    }
}

fn pow(x: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Logarithmic height bound `H` with `h(x) > H ⇒ h(f(x)) > h(x)`.
pub fn escape_height(f: &PolyQ) -> f64 {
    EscapeBound::new(f).log_height()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitStatus {
    Preperiodic { tail_length: usize, cycle_length: usize },
    Wandering { certified_at_step: usize },
    Undetermined { steps_used: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    #[serde(with = "serde_rational")]
    pub start: Rational,
    #[serde(with = "serde_rational_vec")]
    pub trajectory: Vec<Rational>,
    pub status: OrbitStatus,
}

impl OrbitRecord {
    pub fn is_wandering(&self) -> bool {
        matches!(self.status, OrbitStatus::Wandering { .. })
    }

    pub fn is_preperiodic(&self) -> bool {
        matches!(self.status, OrbitStatus::Preperiodic { .. })
    }
}

/// Iterates `f` from `x0` until a repeat, an escape certificate, or `max_steps` applications.
pub fn orbit_classify(f: &PolyQ, x0: &Rational, max_steps: usize) -> OrbitRecord {
    let bound = EscapeBound::new(f);
    let mut seen: HashMap<Rational, usize> = HashMap::new();
    let mut trajectory = vec![x0.clone()];
    let mut step = 0;
    let status = loop {
        let x = &trajectory[step];
        if let Some(&j) = seen.get(x) {
            break OrbitStatus::Preperiodic { tail_length: j, cycle_length: step - j };
        }
        if bound.certifies(x) {
            break OrbitStatus::Wandering { certified_at_step: step };
        }
        if step == max_steps {
            break OrbitStatus::Undetermined { steps_used: max_steps };
        }
        seen.insert(x.clone(), step);
        let next = f.eval(x);
        trajectory.push(next);
        step += 1;
    };
    OrbitRecord { start: x0.clone(), trajectory, status }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;

    fn p(c: &[i64]) -> PolyQ {
        PolyQ::from_ints(c)
    }

    #[test]
    fn thresholds() {
        assert_eq!(EscapeBound::new(&p(&[0, 0, 1])).threshold, rat(1));
        assert_eq!(escape_height(&p(&[0, 0, 1])), 0.0);
        assert_eq!(EscapeBound::new(&p(&[1, 0, 1])).threshold, rat(4));
    }

    #[test]
    fn orbit_examples() {
        let r = orbit_classify(&p(&[1, 0, 0, -1]), &rat(0), 64);
        assert_eq!(r.status, OrbitStatus::Preperiodic { tail_length: 0, cycle_length: 2 });
        assert_eq!(r.trajectory, vec![rat(0), rat(1), rat(0)]);

        let r = orbit_classify(&p(&[1, 0, 1]), &rat(0), 64);
        assert!(matches!(r.status, OrbitStatus::Wandering { certified_at_step } if certified_at_step <= 6));
        assert_eq!(&r.trajectory[..4], &[rat(0), rat(1), rat(2), rat(5)]);

        let r = orbit_classify(&p(&[0, -3, 0, 1]), &rat(-2), 64);
        assert_eq!(r.status, OrbitStatus::Preperiodic { tail_length: 0, cycle_length: 1 });

        let r = orbit_classify(&p(&[1, 0, 1]), &rat(0), 1);
        assert_eq!(r.status, OrbitStatus::Undetermined { steps_used: 1 });
    }

    #[test]
    fn tail_detection() {
        // X^2 - 2 sends 1 -> -1 -> -1.
        let r = orbit_classify(&p(&[-2, 0, 1]), &rat(1), 64);
        assert_eq!(r.status, OrbitStatus::Preperiodic { tail_length: 1, cycle_length: 1 });
    }
}
