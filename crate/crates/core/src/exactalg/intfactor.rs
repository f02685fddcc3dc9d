//! Integer primality and partial factorization.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::poly_fp::{mul_mod, pow_mod};

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(mut n: u64) -> u64 {
    while !is_prime_u64(n) {
        n += 1;
    }
    n
}

/// Miller–Rabin with the first 24 prime bases; deterministic below 3.3·10^24.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    const BASES: [u32; 24] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    ];
    'witness: for a in BASES {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor or `None` within `budget` steps.
pub fn pollard_rho(n: &BigUint, budget: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    let absdiff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    const BLOCK: u64 = 128;
    let mut steps = 0u64;
    for c in 1u32..=8 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = one.clone();
        let mut g = one.clone();
        let mut r: u64 = 1;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..BLOCK.min(r - k) {
                    y = f(&y);
                    q = q * absdiff(&x, &y) % n;
                }
                g = q.gcd(n);
                k += BLOCK;
            }
            steps += r;
            r *= 2;
            if steps > budget {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = absdiff(&x, &ys).gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

/// Result of a bounded factorization attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFactorization {
    /// Prime factors found, ascending, with exponents.
    pub primes: Vec<(BigUint, u32)>,
    /// Composite part left unsplit (empty when factorization is complete).
    pub cofactors: Vec<BigUint>,
}

impl PartialFactorization {
    pub fn is_complete(&self) -> bool {
        self.cofactors.is_empty()
    }
}

/// Factors `n > 0` by trial division up to `trial_bound`, then optionally Pollard rho.
pub fn factor_partial(n: &BigUint, trial_bound: u64, rho_budget: Option<u64>) -> PartialFactorization {
    let mut primes = Vec::new();
    let mut rest = n.clone();
    if rest.is_zero() {
        return PartialFactorization { primes, cofactors: vec![rest] };
    }
    let mut q: u64 = 2;
    while q <= trial_bound && rest > BigUint::one() {
        let qb = BigUint::from(q);
        if &qb * &qb > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (d, r) = rest.div_rem(&qb);
            if !r.is_zero() {
                break;
            }
            rest = d;
            e += 1;
        }
        if e > 0 {
            primes.push((qb, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    let mut cofactors = Vec::new();
    if rest > BigUint::one() {
        let mut stack = vec![rest];
        let mut found: Vec<BigUint> = Vec::new();
        while let Some(m) = stack.pop() {
            let trial_sq = BigUint::from(trial_bound) * BigUint::from(trial_bound);
            if m <= trial_sq || is_probable_prime(&m) {
                found.push(m);
                continue;
            }
            match rho_budget.and_then(|b| pollard_rho(&m, b)) {
                Some(f) => {
                    let g = &m / &f;
                    stack.push(f);
                    stack.push(g);
                }
                None => cofactors.push(m),
            }
        }
        found.sort();
        for f in found {
            match primes.last_mut() {
                Some((p, e)) if *p == f => *e += 1,
                _ => primes.push((f, 1)),
            }
        }
        primes.sort();
    }
    PartialFactorization { primes, cofactors }
}
