//! Exact mod-p stability for unicritical polynomials `uX^d + v`.

use std::collections::HashMap;

use serde::Serialize;

use crate::exactalg::poly_fp::{inv_mod, mul_mod, pow_mod, sub_mod};
use crate::exactalg::rational::reduce_rational;
use crate::exactalg::{PolyQ, Rational};

use super::{require_prime, FailureReason, StabilityError, StabilityMode, StabilityStatus, StabilityVerdict};

/// `f = uX^d + v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unicritical {
    #[serde(with = "crate::exactalg::rational::serde_rational")]
    pub u: Rational,
    pub d: usize,
    #[serde(with = "crate::exactalg::rational::serde_rational")]
    pub v: Rational,
}

impl Unicritical {
    pub fn to_poly(&self) -> PolyQ {
        &PolyQ::monomial(self.u.clone(), self.d) + &PolyQ::constant(self.v.clone())
    }
}

/// Recognizes `uX^d + v` with `d ≥ 2`.
pub fn as_unicritical(f: &PolyQ) -> Option<Unicritical> {
    let d = f.degree()?;
    if d < 2 || f.coeffs()[1..d].iter().any(|c| *c != Rational::default()) {
        return None;
    }
    Some(Unicritical { u: f.leading(), d, v: f.coeff(0) })
}

/// Distinct prime divisors, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether `x` is a `q`-th power in F_p, for `q | p − 1`. Zero counts as one.
pub fn is_qth_power_mod(x: u64, q: u64, p: u64) -> bool {
    debug_assert_eq!((p - 1) % q, 0);
    x.is_multiple_of(p) || pow_mod(x, (p - 1) / q, p) == 1
}

/// Decides whether every `f^n(X) − a` is irreducible over F_p, for `f = uX^d + v`.
///
/// `uX^d + v − β` is irreducible over a finite field `k` with `q | #k − 1` for all
/// primes `q | d` exactly when `(β − v)/u` is not a `q`-th power for any such `q`
/// (with the usual extra condition when `4 | d`, absorbed here by `p ≡ 1 mod 4`).
/// Applied over the field generated by a root `β` of `f^n(X) − a`, the power test
/// passes through the norm to F_p, and the norm is `(f^n(v) − a)/u` up to `q`-th
/// powers. The orbit of `v` mod p is finite, so one period settles every level.
pub fn unicritical_exact_stable(
    u: &Rational,
    d: usize,
    v: &Rational,
    a: &Rational,
    p: u64,
) -> Result<StabilityVerdict, StabilityError> {
    require_prime(p)?;
    if d < 2 {
        return Err(StabilityError::DegreeTooSmall(d));
    }
    let mode = StabilityMode::ExactUnicritical;
    let unstable = |level, reason| Ok(StabilityVerdict::unstable(p, mode, level, reason));
    let (up, vp, ap) = match (reduce_rational(u, p), reduce_rational(v, p), reduce_rational(a, p)) {
        (Some(up), Some(vp), Some(ap)) => (up, vp, ap),
        _ => return unstable(1, FailureReason::Undefined),
    };
    if up == 0 {
        return unstable(1, FailureReason::DegreeDrop);
    }
    let qs = prime_divisors(d as u64);
    if qs.iter().any(|&q| !(p - 1).is_multiple_of(q)) || (d.is_multiple_of(4) && p % 4 != 1) {
        return unstable(1, FailureReason::Reducible);
    }
    let u_inv = inv_mod(up, p);
    let residue_ok = |x: u64| qs.iter().all(|&q| !is_qth_power_mod(x, q, p));
    if !residue_ok(mul_mod(sub_mod(ap, vp, p), u_inv, p)) {
        return unstable(1, FailureReason::Reducible);
    }
    let step = |x: u64| (mul_mod(up, pow_mod(x, d as u64, p), p) + vp) % p;
    let mut seen: HashMap<u64, usize> = HashMap::from([(vp, 0)]);
    let mut x = vp;
    let mut n = 0;
    let period = loop {
        n += 1;
        x = step(x);
        if !residue_ok(mul_mod(sub_mod(x, ap, p), u_inv, p)) {
            return unstable(n + 1, FailureReason::Reducible);
        }
        if let Some(&first) = seen.get(&x) {
            break n - first;
        }
        seen.insert(x, n);
    };
    Ok(StabilityVerdict {
        prime: p,
        mode,
        status: StabilityStatus::StableExact,
        orbit_period_mod_p: Some(period),
    })
}
