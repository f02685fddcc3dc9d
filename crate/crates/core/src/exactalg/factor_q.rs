//! Squarefree decomposition, rational roots and irreducible factorization over ℚ.
//!
//! Rational roots and full factorizations both go through a single prime `p`
//! where the polynomial stays squarefree: factor mod `p`, lift p-adically,
//! and test each candidate exactly. Nothing is accepted without an exact
//! division check over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::intfactor::is_prime_u64;
use super::poly_fp::{fp_factor, fp_factor_shape, PolyFp};
use super::poly_q::PolyQ;
use super::rational::Rational;
use super::AlgebraError;

/// Largest degree accepted by [`q_factor`].
pub const Q_FACTOR_MAX_DEGREE: usize = 32;

/// Yun's algorithm. Returns monic, pairwise coprime squarefree parts with
/// multiplicities, so that `f = lc(f) · Π part^mult`.
pub fn squarefree_decomposition(f: &PolyQ) -> Vec<(PolyQ, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let f = f.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).unwrap();
    let c = df.div_exact(&a0).unwrap();
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        let nb = b.div_exact(&a).unwrap();
        let nc = d.div_exact(&a).unwrap();
        if a.deg() > 0 {
            out.push((a, i));
        }
        d = &nc - &nb.derivative();
        b = nb;
        i += 1;
    }
    out
}

fn to_fp(coeffs: &[BigInt], p: u64) -> PolyFp {
    let pb = BigInt::from(p);
    PolyFp::new(p, coeffs.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn squarefree_mod(coeffs: &[BigInt], p: u64) -> bool {
    let g = to_fp(coeffs, p);
    let lead_ok = g.deg() + 1 == coeffs.len();
    lead_ok && g.gcd(&g.derivative()).is_one()
}

/// Odd primes `p` not dividing the leading coefficient and keeping `coeffs` squarefree.
fn admissible_primes(coeffs: &[BigInt]) -> impl Iterator<Item = u64> + '_ {
    (3u64..).filter(|&p| is_prime_u64(p)).filter(move |&p| squarefree_mod(coeffs, p))
}

fn max_abs(coeffs: &[BigInt]) -> BigInt {
    coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn eval_int(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Rational roots with multiplicities, in descending order.
pub fn rational_roots(f: &PolyQ) -> Vec<(Rational, usize)> {
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        for r in simple_rational_roots(&part) {
            out.push((r, mult));
        }
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out
}

/// Roots of a squarefree polynomial: every rational root `u/v` has `v | lc`,
/// so `lc · root` is an integer bounded by `|lc| + max|a_i|` and is recovered
/// from a p-adic root of sufficient precision.
fn simple_rational_roots(f: &PolyQ) -> Vec<Rational> {
    if f.deg() == 0 {
        return Vec::new();
    }
    let (_, prim) = f.primitive_integer_model();
    if prim.len() == 2 {
        return vec![Rational::new(-prim[0].clone(), prim[1].clone())];
    }
    let lc = prim.last().unwrap().clone();
    let p = admissible_primes(&prim).next().unwrap();
    let pb = BigInt::from(p);
    let bound = (lc.abs() + max_abs(&prim)) * 2 + 1;
    let dprim: Vec<BigInt> = prim.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();
    let fmod = to_fp(&prim, p);
    let mut roots = Vec::new();
    for r0 in 0..p {
        if fmod.eval(r0) != 0 {
            continue;
        }
        let mut r = BigInt::from(r0);
        let mut m = pb.clone();
        while m < bound {
            m = &m * &m;
            let num = eval_int(&prim, &r, &m);
            let den = eval_int(&dprim, &r, &m);
            r = (r - num * modinv(&den, &m)).mod_floor(&m);
        }
        let cand = Rational::new(symmetric(&(&lc * &r), &m), lc.clone());
        if f.eval(&cand).is_zero() {
            roots.push(cand);
        }
    }
    roots
}

/// Irreducible factorization `f = unit · Π factor^mult` with monic factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<(PolyQ, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> PolyQ {
        let mut acc = PolyQ::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u32);
        }
        acc
    }
}

pub fn q_factor(f: &PolyQ) -> Result<Factorization, AlgebraError> {
    let d = f.deg();
    if d > Q_FACTOR_MAX_DEGREE {
        return Err(AlgebraError::DegreeCapExceeded {
            degree: d.to_string(),
            cap: Q_FACTOR_MAX_DEGREE as u64,
        });
    }
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        let (_, prim) = part.primitive_integer_model();
        for g in factor_squarefree_primitive(prim) {
            factors.push((PolyQ::from_bigints(&g).monic(), mult));
        }
    }
    factors.sort_by(|a, b| {
        (a.0.deg(), a.1)
            .cmp(&(b.0.deg(), b.1))
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(Factorization { unit: f.leading(), factors })
}

pub fn is_irreducible_q(f: &PolyQ) -> Result<bool, AlgebraError> {
    let fac = q_factor(f)?;
    Ok(f.deg() >= 1 && matches!(fac.factors.as_slice(), [(_, 1)]))
}

/// Zassenhaus on a primitive squarefree integer polynomial with positive leading coefficient.
fn factor_squarefree_primitive(prim: Vec<BigInt>) -> Vec<Vec<BigInt>> {
    let n = prim.len() - 1;
    if n <= 1 {
        return vec![prim];
    }
    // Prefer the prime with the fewest modular factors among a few candidates.
    let mut best: Option<(usize, u64)> = None;
    for p in admissible_primes(&prim).take(5) {
        let r = fp_factor_shape(&to_fp(&prim, p)).0.len();
        if best.is_none_or(|(br, _)| r < br) {
            best = Some((r, p));
        }
        if r == 1 {
            break;
        }
    }
    let (r, p) = best.unwrap();
    if r == 1 {
        return vec![prim];
    }
    let modular: Vec<PolyFp> = fp_factor(&to_fp(&prim, p), p).into_iter().map(|(g, _)| g).collect();

    let lc = prim.last().unwrap().clone();
    let bound = lc.abs() * max_abs(&prim) * BigInt::from(2u32).pow(n as u32 + 1) * (n + 1);
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    while m <= bound {
        m = &m * &m;
    }
    let lifted = multifactor_lift(&prim, &modular, p, &m);
    recombine(prim, lifted, &m)
}

fn recombine(mut f: Vec<BigInt>, mut pool: Vec<Vec<BigInt>>, m: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= pool.len() {
        let lc = f.last().unwrap().clone();
        for subset in combinations(pool.len(), s) {
            let mut g = vec![lc.clone()];
            for &i in &subset {
                g = zm_mul(&g, &pool[i], m);
            }
            let g: Vec<BigInt> = g.iter().map(|c| symmetric(c, m)).collect();
            let gq = PolyQ::from_bigints(&g);
            let (_, gprim) = gq.primitive_integer_model();
            // Cheap necessary condition before the full division.
            let divides_const = if gprim[0].is_zero() {
                f[0].is_zero()
            } else {
                (&f[0] % &gprim[0]).is_zero()
            };
            if !divides_const {
                continue;
            }
            let gprim_q = PolyQ::from_bigints(&gprim);
            if let Some(q) = PolyQ::from_bigints(&f).div_exact(&gprim_q) {
                out.push(gprim);
                f = q.primitive_integer_model().1;
                let mut keep = Vec::new();
                for (i, h) in pool.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(h);
                    }
                }
                pool = keep;
                continue 'outer;
            }
        }
        s += 1;
    }
    out.push(f);
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

// Polynomials over Z/mZ as coefficient vectors with entries in [0, m).

fn zm_trim(mut v: Vec<BigInt>, m: &BigInt) -> Vec<BigInt> {
    for c in v.iter_mut() {
        *c = c.mod_floor(m);
    }
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect(), m)
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zm_trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect(), m)
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zm_trim(out, m)
}

/// Division by a monic divisor over Z/mZ.
fn zm_divrem(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), zm_trim(r, m));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] = (&r[i + j] - &c * bj).mod_floor(m);
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (zm_trim(q, m), zm_trim(r, m))
}

fn fp_to_int(g: &PolyFp) -> Vec<BigInt> {
    g.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// Extended Euclid over F_p: `(s, t)` with `s a + t b = 1`.
fn fp_bezout(a: &PolyFp, b: &PolyFp) -> (PolyFp, PolyFp) {
    let p = a.modulus();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (PolyFp::one(p), PolyFp::zero(p));
    let (mut t0, mut t1) = (PolyFp::zero(p), PolyFp::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        (r0, r1) = (r1, r);
        let ns = s0.sub(&q.mul(&s1));
        (s0, s1) = (s1, ns);
        let nt = t0.sub(&q.mul(&t1));
        (t0, t1) = (t1, nt);
    }
    let inv = super::poly_fp::inv_mod(r0.leading(), p);
    (s0.scale(inv), t0.scale(inv))
}

/// Lifts `f ≡ lc(f) · Π factors (mod p)` to monic factors modulo `target`.
fn multifactor_lift(f: &[BigInt], factors: &[PolyFp], p: u64, target: &BigInt) -> Vec<Vec<BigInt>> {
    let lc = f.last().unwrap().clone();
    if factors.len() == 1 {
        let inv = modinv(&lc, target);
        return vec![zm_trim(f.iter().map(|c| c * &inv).collect(), target)];
    }
    let k = factors.len() / 2;
    let prod = |fs: &[PolyFp]| fs.iter().fold(PolyFp::one(p), |acc, g| acc.mul(g));
    let u = prod(&factors[..k]);
    let w = prod(&factors[k..]);
    let lc_p = lc.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let g0 = u.scale(lc_p);
    let (s0, t0) = fp_bezout(&g0, &w);
    // Normalize degrees: deg s < deg h, deg t < deg g.
    let (q, s0) = s0.div_rem(&w);
    let t0 = t0.add(&q.mul(&g0));

    let mut g = fp_to_int(&g0);
    let mut h = fp_to_int(&w);
    let mut s = fp_to_int(&s0);
    let mut t = fp_to_int(&t0);
    let mut m = BigInt::from(p);
    while &m < target {
        m = &m * &m;
        let e = zm_sub(f, &zm_mul(&g, &h, &m), &m);
        let (q, r) = zm_divrem(&zm_mul(&s, &e, &m), &h, &m);
        let g1 = zm_add(&zm_add(&g, &zm_mul(&t, &e, &m), &m), &zm_mul(&q, &g, &m), &m);
        let h1 = zm_add(&h, &r, &m);
        let b = zm_sub(&zm_add(&zm_mul(&s, &g1, &m), &zm_mul(&t, &h1, &m), &m), &[BigInt::one()], &m);
        let (c, d) = zm_divrem(&zm_mul(&s, &b, &m), &h1, &m);
        let s1 = zm_sub(&s, &d, &m);
        let t1 = zm_sub(&zm_sub(&t, &zm_mul(&t, &b, &m), &m), &zm_mul(&c, &g1, &m), &m);
        (g, h, s, t) = (g1, h1, s1, t1);
    }
    debug_assert_eq!(&m, target);
    let mut out = multifactor_lift(&g, &factors[..k], p, target);
    out.extend(multifactor_lift(&h, &factors[k..], p, target));
    out
}
