//! Segmented sieve of Eratosthenes.

use super::CensusError;

/// Largest bound accepted by [`prime_stream`].
pub const MAX_PRIME_BOUND: u64 = 100_000_000;

const SEGMENT: u64 = 1 << 18;

fn simple_sieve(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// All primes `≤ bound`, ascending.
pub fn prime_stream(bound: u64) -> Result<Vec<u64>, CensusError> {
    if bound > MAX_PRIME_BOUND {
        return Err(CensusError::BoundTooLarge { bound, max: MAX_PRIME_BOUND });
    }
    if bound < 2 {
        return Ok(Vec::new());
    }
    let base = simple_sieve((bound as f64).sqrt() as u64 + 1);
    let mut out = Vec::new();
    let mut lo = 2;
    while lo <= bound {
        let hi = (lo + SEGMENT - 1).min(bound);
        let mut composite = vec![false; (hi - lo + 1) as usize];
        for &q in &base {
            if q * q > hi {
                break;
            }
            let start = (q * q).max(lo.div_ceil(q) * q);
            let mut m = start;
            while m <= hi {
                composite[(m - lo) as usize] = true;
                m += q;
            }
        }
        out.extend(composite.iter().enumerate().filter(|(_, &c)| !c).map(|(i, _)| lo + i as u64));
        lo = hi + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::intfactor::is_prime_u64;

    #[test]
    fn small_bounds() {
        assert_eq!(prime_stream(10).unwrap(), vec![2, 3, 5, 7]);
        assert!(prime_stream(1).unwrap().is_empty());
        let p30 = prime_stream(30).unwrap();
        assert_eq!((p30.len(), p30.last()), (10, Some(&29)));
        assert!(matches!(prime_stream(MAX_PRIME_BOUND + 1), Err(CensusError::BoundTooLarge { .. })));
    }

    #[test]
    fn crosses_segments() {
        let bound = 3 * SEGMENT + 17;
        let ps = prime_stream(bound).unwrap();
        let direct: Vec<u64> = (2..=bound).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(ps, direct);
        assert_eq!(prime_stream(1_000_000).unwrap().len(), 78_498);
    }
}
