//! Depth-bounded stability over F_p.

use crate::exactalg::poly_fp::{coprime_to_frobenius_fixers, fp_irreducible, Frobenius};
use crate::exactalg::rational::reduce_rational;
use crate::exactalg::{reduce_mod_p, PolyFp, PolyQ, Rational};

use super::{require_prime, FailureReason, StabilityError, StabilityMode, StabilityStatus, StabilityVerdict};

/// Largest iterate degree [`depth_stable`] will build before answering `Inconclusive`.
pub const DEFAULT_DEPTH_DEGREE_CAP: usize = 1024;

/// Checks irreducibility of `f^n(X) − a` over F_p for `n = 1..=depth`, stopping at
/// the first failure.
pub fn depth_stable(f: &PolyQ, a: &Rational, p: u64, depth: usize) -> Result<StabilityVerdict, StabilityError> {
    depth_stable_capped(f, a, p, depth, DEFAULT_DEPTH_DEGREE_CAP)
}

/// [`depth_stable`] with an explicit cap on the degree of the iterates.
pub fn depth_stable_capped(
    f: &PolyQ,
    a: &Rational,
    p: u64,
    depth: usize,
    degree_cap: usize,
) -> Result<StabilityVerdict, StabilityError> {
    require_prime(p)?;
    let d = f.deg();
    if d < 2 {
        return Err(StabilityError::DegreeTooSmall(d));
    }
    if depth == 0 {
        return Err(StabilityError::ZeroDepth);
    }
    let mode = StabilityMode::DepthBounded { depth };
    let (fp, ap) = match (reduce_mod_p(f, p), reduce_rational(a, p)) {
        (Ok(fp), Some(ap)) => (fp, ap),
        _ => return Ok(StabilityVerdict::unstable(p, mode, 1, FailureReason::Undefined)),
    };
    if fp.deg() < d {
        return Ok(StabilityVerdict::unstable(p, mode, 1, FailureReason::DegreeDrop));
    }
    let shift = PolyFp::new(p, vec![ap]);
    let mut g = fp.clone();
    if !fp_irreducible(&g.sub(&shift)) {
        return Ok(StabilityVerdict::unstable(p, mode, 1, FailureReason::Reducible));
    }
    let mut prev_degree = d;
    for level in 2..=depth {
        let next_degree = prev_degree.saturating_mul(d);
        if next_degree > degree_cap {
            return Ok(StabilityVerdict {
                prime: p,
                mode,
                status: StabilityStatus::Inconclusive { verified_to: level - 1 },
                orbit_period_mod_p: None,
            });
        }
        g = fp.compose(&g);
        if !irreducible_over_irreducible(&g.sub(&shift), prev_degree, d) {
            return Ok(StabilityVerdict::unstable(p, mode, level, FailureReason::Reducible));
        }
        prev_degree = next_degree;
    }
    Ok(StabilityVerdict {
        prime: p,
        mode,
        status: StabilityStatus::StableUpTo { depth },
        orbit_period_mod_p: None,
    })
}

/// Irreducibility of `G = H ∘ f` when `H` is irreducible of degree `m` and `deg f = d`.
///
/// Every irreducible factor of `G` has degree `m·k` with `k | d`, so `G` is
/// irreducible iff it has no irreducible factor of degree `m·k` for `k ≤ d/2`,
/// i.e. iff it is coprime to `X^{p^{mk}} − X` for those `k`. A repeated factor
/// would also have such a degree, so squarefreeness comes for free.
fn irreducible_over_irreducible(g: &PolyFp, m: usize, d: usize) -> bool {
    let ks: Vec<usize> = (1..=d / 2).map(|k| k * m).collect();
    let frob = Frobenius::new(g);
    coprime_to_frobenius_fixers(&frob, &ks)
}
