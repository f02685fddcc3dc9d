//! Density statistics.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::exactalg::Rational;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959963984540054;

/// Wilson score interval for `successes` out of `trials` at 95% confidence.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = Z95 / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    // Rounding can push an endpoint past the estimate when it sits at 0 or 1.
    ((center - half).clamp(0.0, phat), (center + half).clamp(phat, 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Pass,
    Fail,
}

/// `Pass` iff `|stable/tested − predicted| ≤ tol`, compared exactly.
pub fn compare_density(stable: u64, tested: u64, predicted: &Rational, tol: &Rational) -> Comparison {
    if tested == 0 {
        return Comparison::Fail;
    }
    let density = Rational::new(BigInt::from(stable), BigInt::from(tested));
    if (density - predicted).abs() <= *tol {
        Comparison::Pass
    } else {
        Comparison::Fail
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::ratio;

    #[test]
    fn wilson_contains_estimate() {
        for (s, n) in [(0u64, 10u64), (10, 10), (223, 1000), (5, 9592), (4796, 9592)] {
            let (lo, hi) = wilson_interval(s, n);
            let p = s as f64 / n as f64;
            assert!(lo <= p && p <= hi && 0.0 <= lo && hi <= 1.0);
        }
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo - 0.4038).abs() < 1e-4 && (hi - 0.5962).abs() < 1e-4);
    }

    #[test]
    fn comparisons() {
        let tol = ratio(15, 1000);
        assert_eq!(compare_density(2230, 10000, &ratio(2, 9), &tol), Comparison::Pass);
        assert_eq!(compare_density(31, 100, &ratio(2, 9), &tol), Comparison::Fail);
        assert_eq!(compare_density(666, 1000, &ratio(2, 3), &tol), Comparison::Pass);
    }
}
