//! Polynomials over a prime field F_p, with p < 2^63.
//!
//! Arithmetic is schoolbook. The expensive primitive is the Frobenius
//! map `h ↦ h^p mod g`, which is linear over F_p and is cached as a
//! matrix whose rows are `X^{ip} mod g`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const SMALL: u64 = 1 << 32;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p < SMALL {
        a * b % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    assert!(r1 != 0, "inverse of zero mod {p}");
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i128) as u64
}

/// Dense polynomial over F_p, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyFp {
    p: u64,
    coeffs: Vec<u64>,
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl PolyFp {
    /// Builds a polynomial from residues already in `[0, p)`.
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < p));
        trim(&mut coeffs);
        PolyFp { p, coeffs }
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        let v = coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
        Self::new(p, v)
    }

    pub fn zero(p: u64) -> Self {
        PolyFp { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1 % p])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self::new(p, self.coeffs.iter().map(|&a| mul_mod(a, c, p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.p))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let p = self.p;
        Self::new(p, (0..n).map(|i| add_mod(self.coeff(i), o.coeff(i), p)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let p = self.p;
        Self::new(p, (0..n).map(|i| sub_mod(self.coeff(i), o.coeff(i), p)).collect())
    }

    pub fn add_const(&self, c: u64) -> Self {
        let mut v = self.coeffs.clone();
        if v.is_empty() {
            v.push(0);
        }
        v[0] = add_mod(v[0], c % self.p, self.p);
        Self::new(self.p, v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.p, mul_slices(&self.coeffs, &o.coeffs, self.p))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
                .collect(),
        )
    }

    /// `self(g(X))` by Horner's rule.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = PolyFp::zero(self.p);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add_const(c);
        }
        acc
    }

    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by zero polynomial");
        let p = self.p;
        if self.coeffs.len() <= db {
            return (PolyFp::zero(p), self.clone());
        }
        let inv = inv_mod(b.leading(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0; r.len() - db];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + db], inv, p);
            if c != 0 {
                let nc = p - c;
                for (j, &bj) in b.coeffs.iter().enumerate() {
                    r[i + j] = add_mod(r[i + j], mul_mod(nc, bj, p), p);
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        (PolyFp::new(p, q), PolyFp::new(p, r))
    }

    pub fn rem(&self, b: &Self) -> Self {
        if b.degree() == Some(0) {
            return PolyFp::zero(self.p);
        }
        let mut r = self.coeffs.clone();
        rem_in_place(&mut r, &b.monic().coeffs, self.p);
        PolyFp::new(self.p, r)
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let m = m.monic();
        let mut base = self.rem(&m);
        let mut acc = PolyFp::one(self.p).rem(&m);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, &m);
            }
            e >>= 1;
            if e > 0 {
                base = mulmod(&base, &base, &m);
            }
        }
        acc
    }
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {})", self.p);
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{c}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        write!(f, " (mod {})", self.p)
    }
}

impl fmt::Debug for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFp({self})")
    }
}

fn mul_slices(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    if p < SMALL {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += (x * y) as u128;
            }
        }
        acc.into_iter().map(|s| (s % p as u128) as u64).collect()
    } else {
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + mul_mod(x, y, p) as u128) % p as u128;
            }
        }
        acc.into_iter().map(|s| s as u64).collect()
    }
}

/// Reduces `r` modulo the monic polynomial `g` in place.
fn rem_in_place(r: &mut Vec<u64>, g: &[u64], p: u64) {
    let n = g.len() - 1;
    while r.len() > n {
        let top = r.pop().unwrap();
        if top != 0 {
            let nc = p - top;
            let base = r.len() - n;
            for j in 0..n {
                r[base + j] = add_mod(r[base + j], mul_mod(nc, g[j], p), p);
            }
        }
    }
    trim(r);
}

fn mulmod(a: &PolyFp, b: &PolyFp, m: &PolyFp) -> PolyFp {
    let mut v = mul_slices(&a.coeffs, &b.coeffs, a.p);
    rem_in_place(&mut v, &m.coeffs, a.p);
    PolyFp::new(a.p, v)
}

/// The F_p-linear map `h ↦ h^p mod g` for a fixed monic `g` of degree ≥ 1.
pub struct Frobenius {
    p: u64,
    modulus: PolyFp,
    rows: Vec<Vec<u64>>,
}

impl Frobenius {
    pub fn new(g: &PolyFp) -> Self {
        let p = g.p;
        let modulus = g.monic();
        let n = modulus.deg();
        let xp = PolyFp::x(p).pow_mod(p as u128, &modulus);
        let mut rows = Vec::with_capacity(n);
        let mut cur = PolyFp::one(p).rem(&modulus);
        for i in 0..n {
            if i > 0 {
                cur = mulmod(&cur, &xp, &modulus);
            }
            let mut row = cur.coeffs.clone();
            row.resize(n, 0);
            rows.push(row);
        }
        Frobenius { p, modulus, rows }
    }

    pub fn modulus(&self) -> &PolyFp {
        &self.modulus
    }

    /// `h^p mod g`, for `h` already reduced mod `g`.
    pub fn apply(&self, h: &PolyFp) -> PolyFp {
        let n = self.rows.len();
        let p = self.p;
        let mut acc = vec![0u128; n];
        if p < SMALL {
            // Each summand is below 2^64, so n < 2^64 of them fit in u128.
            for (i, &c) in h.coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (a, &m) in acc.iter_mut().zip(&self.rows[i]) {
                    *a += (c * m) as u128;
                }
            }
            PolyFp::new(p, acc.into_iter().map(|s| (s % p as u128) as u64).collect())
        } else {
            for (i, &c) in h.coeffs.iter().enumerate() {
                for (a, &m) in acc.iter_mut().zip(&self.rows[i]) {
                    *a = (*a + mul_mod(c, m, p) as u128) % p as u128;
                }
            }
            PolyFp::new(p, acc.into_iter().map(|s| s as u64).collect())
        }
    }

    /// `X^{p^k} mod g` for k = 1, 2, …, lazily.
    pub fn powers_of_x(&self) -> impl Iterator<Item = PolyFp> + '_ {
        let start = PolyFp::x(self.p).rem(&self.modulus);
        std::iter::successors(Some(self.apply(&start)), move |h| Some(self.apply(h)))
    }
}

/// `gcd(X^{p^k} - X, g)` is 1 for every `k` in `ks` (ascending).
pub fn coprime_to_frobenius_fixers(frob: &Frobenius, ks: &[usize]) -> bool {
    let g = frob.modulus();
    let p = g.p;
    let x = PolyFp::x(p);
    let mut it = frob.powers_of_x();
    let mut k = 0;
    let mut cur = PolyFp::zero(p);
    for &target in ks {
        while k < target {
            cur = it.next().unwrap();
            k += 1;
        }
        if !cur.sub(&x).gcd(g).is_one() {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
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

/// Irreducibility over F_p: squarefree check followed by Rabin's test.
pub fn fp_irreducible(g: &PolyFp) -> bool {
    let n = match g.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let d = g.derivative();
    if d.is_zero() || !g.gcd(&d).is_one() {
        return false;
    }
    let frob = Frobenius::new(g);
    let x = PolyFp::x(g.p);
    let mut ks: Vec<usize> = prime_divisors(n).into_iter().map(|q| n / q).collect();
    ks.sort_unstable();
    let mut it = frob.powers_of_x();
    let mut k = 0;
    let mut cur = PolyFp::zero(g.p);
    for &target in ks.iter().chain(std::iter::once(&n)) {
        while k < target {
            cur = it.next().unwrap();
            k += 1;
        }
        let diff = cur.sub(&x);
        if target == n {
            return diff.is_zero();
        }
        if !diff.gcd(frob.modulus()).is_one() {
            return false;
        }
    }
    unreachable!()
}

/// Multiset of (degree, multiplicity) of irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FactorShape(pub Vec<(usize, usize)>);

impl FactorShape {
    pub fn from_pairs(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        FactorShape(pairs)
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&(d, m)| d * m).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self.0.as_slice(), [(_, 1)])
    }
}

impl fmt::Display for FactorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(d, m)| format!("({d},{m})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Squarefree decomposition over F_p: monic pairwise coprime parts with multiplicities.
pub fn fp_squarefree(g: &PolyFp) -> Vec<(PolyFp, usize)> {
    let mut out = Vec::new();
    sff_rec(&g.monic(), 1, &mut out);
    out.sort_by_key(|(_, m)| *m);
    out
}

fn sff_rec(f: &PolyFp, mult: usize, out: &mut Vec<(PolyFp, usize)>) {
    if f.deg() == 0 {
        return;
    }
    let p = f.p;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if fac.deg() > 0 {
            out.push((fac.monic(), i * mult));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.deg() > 0 {
        // c is a polynomial in X^p; its p-th root has coefficients c_{ip}.
        let root: Vec<u64> = c.coeffs.iter().step_by(p as usize).copied().collect();
        sff_rec(&PolyFp::new(p, root), mult * p as usize, out);
    }
}

/// Distinct-degree factorization of a squarefree polynomial: (degree, product of factors).
pub fn distinct_degree(g: &PolyFp) -> Vec<(usize, PolyFp)> {
    let g = g.monic();
    let mut out = Vec::new();
    if g.deg() == 0 {
        return out;
    }
    let p = g.p;
    let frob = Frobenius::new(&g);
    let x = PolyFp::x(p);
    let mut rest = g.clone();
    let mut h = x.rem(&g);
    let mut i = 0;
    while rest.deg() >= 2 * (i + 1) {
        i += 1;
        h = frob.apply(&h);
        let f = rest.gcd(&h.sub(&x));
        if f.deg() > 0 {
            rest = rest.div_rem(&f).0;
            out.push((i, f));
        }
    }
    if rest.deg() > 0 {
        out.push((rest.deg(), rest));
    }
    out
}

pub fn fp_factor_shape(g: &PolyFp) -> FactorShape {
    let mut pairs = Vec::new();
    for (part, m) in fp_squarefree(g) {
        for (d, prod) in distinct_degree(&part) {
            for _ in 0..prod.deg() / d {
                pairs.push((d, m));
            }
        }
    }
    FactorShape::from_pairs(pairs)
}

/// Cantor–Zassenhaus splitting of a squarefree product of degree-`k` factors.
pub fn equal_degree_split(g: &PolyFp, k: usize, rng: &mut ChaCha8Rng) -> Vec<PolyFp> {
    let g = g.monic();
    let n = g.deg();
    if n == k {
        return vec![g];
    }
    let p = g.p;
    let frob = Frobenius::new(&g);
    loop {
        let a = PolyFp::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let mut conj = a.clone();
        let b = if p == 2 {
            // Trace a + a^2 + ⋯ + a^{2^{k-1}}, which lies in F_2 on each factor.
            let mut t = a.clone();
            for _ in 1..k {
                conj = frob.apply(&conj);
                t = t.add(&conj);
            }
            t
        } else {
            // a^{(p^k-1)/2} = (a · a^p ⋯ a^{p^{k-1}})^{(p-1)/2}
            let mut t = a.clone();
            for _ in 1..k {
                conj = frob.apply(&conj);
                t = mulmod(&t, &conj, &g);
            }
            t.pow_mod(((p - 1) / 2) as u128, &g).add_const(p - 1)
        };
        let d = g.gcd(&b);
        if d.deg() > 0 && d.deg() < n {
            let other = g.div_rem(&d).0;
            let mut out = equal_degree_split(&d, k, rng);
            out.extend(equal_degree_split(&other, k, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities.
pub fn fp_factor(g: &PolyFp, seed: u64) -> Vec<(PolyFp, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, m) in fp_squarefree(g) {
        for (d, prod) in distinct_degree(&part) {
            for f in equal_degree_split(&prod, d, &mut rng) {
                out.push((f, m));
            }
        }
    }
    out.sort_by(|a, b| (a.0.deg(), &a.0.coeffs, a.1).cmp(&(b.0.deg(), &b.0.coeffs, b.1)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[i64]) -> PolyFp {
        PolyFp::from_i64(p, c)
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(inv_mod(3, 7), 5);
        assert_eq!(pow_mod(3, 6, 7), 1);
        let big = (1u64 << 61) - 1;
        assert_eq!(mul_mod(inv_mod(12345, big), 12345, big), 1);
    }

    #[test]
    fn irreducible_examples() {
        assert!(fp_irreducible(&fp(3, &[1, 0, 1])));
        assert!(!fp_irreducible(&fp(5, &[1, 0, 1])));
        assert!(fp_irreducible(&fp(2, &[1, 1])));
        assert!(fp_irreducible(&fp(3, &[2, 0, 2, 0, 1])));
        assert!(!fp_irreducible(&fp(3, &[0, 0, 1])));
        assert!(!fp_irreducible(&fp(2, &[1, 0, 1])));
    }

    #[test]
    fn shape_examples() {
        assert_eq!(fp_factor_shape(&fp(5, &[-1, 0, 1])), FactorShape(vec![(1, 1), (1, 1)]));
        assert_eq!(fp_factor_shape(&fp(3, &[2, 0, 2, 0, 1])), FactorShape(vec![(4, 1)]));
        assert_eq!(fp_factor_shape(&fp(3, &[0, 0, 1])), FactorShape(vec![(1, 2)]));
        // x^3 - x^... with a p-th power part: (x+1)^3 (x^2+1) over F_3
        let g = fp(3, &[1, 1]).pow_mod(3, &fp(3, &[0, 0, 0, 0, 0, 0, 1])).mul(&fp(3, &[1, 0, 1]));
        assert_eq!(fp_factor_shape(&g), FactorShape(vec![(1, 3), (2, 1)]));
    }

    #[test]
    fn full_factorization_multiplies_back() {
        let g = fp(7, &[3, 1, 4, 1, 5, 2, 6, 1]).mul(&fp(7, &[1, 1])).mul(&fp(7, &[1, 1]));
        let factors = fp_factor(&g, 1);
        let mut prod = PolyFp::one(7);
        for (f, m) in &factors {
            assert!(fp_irreducible(f));
            for _ in 0..*m {
                prod = prod.mul(f);
            }
        }
        assert_eq!(prod, g.monic());
    }

    #[test]
    fn compose_and_division() {
        let f = fp(5, &[1, 0, 1]);
        assert_eq!(f.compose(&f), fp(5, &[2, 0, 2, 0, 1]));
        let (q, r) = fp(5, &[4, 0, 1]).div_rem(&fp(5, &[1, 1]));
        assert_eq!(q, fp(5, &[-1, 1]));
        assert_eq!(r, fp(5, &[0]));
    }
}
