//! Resultants and discriminants by the subresultant PRS.
//!
//! The algorithm only needs exact division in the coefficient ring, so it
//! runs unchanged over ℚ and over ℚ[t].

use num_traits::{One, Zero};

use super::poly_q::PolyQ;
use super::rational::{rat, Rational};

/// Integral domain with exact division, as needed by the subresultant PRS.
pub trait ExactRing: Clone + PartialEq {
    fn r_zero() -> Self;
    fn r_one() -> Self;
    fn r_is_zero(&self) -> bool;
    fn r_add(&self, o: &Self) -> Self;
    fn r_sub(&self, o: &Self) -> Self;
    fn r_mul(&self, o: &Self) -> Self;
    /// `self / o`, where the caller guarantees divisibility.
    fn r_div_exact(&self, o: &Self) -> Self;

    fn r_neg(&self) -> Self {
        Self::r_zero().r_sub(self)
    }

    fn r_pow(&self, e: usize) -> Self {
        let mut acc = Self::r_one();
        for _ in 0..e {
            acc = acc.r_mul(self);
        }
        acc
    }
}

impl ExactRing for Rational {
    fn r_zero() -> Self {
        Zero::zero()
    }
    fn r_one() -> Self {
        One::one()
    }
    fn r_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn r_add(&self, o: &Self) -> Self {
        self + o
    }
    fn r_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn r_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn r_div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

impl ExactRing for PolyQ {
    fn r_zero() -> Self {
        PolyQ::zero()
    }
    fn r_one() -> Self {
        PolyQ::one()
    }
    fn r_is_zero(&self) -> bool {
        PolyQ::is_zero(self)
    }
    fn r_add(&self, o: &Self) -> Self {
        self + o
    }
    fn r_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn r_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn r_div_exact(&self, o: &Self) -> Self {
        PolyQ::div_exact(self, o).expect("inexact division in subresultant sequence")
    }
}

fn trim<R: ExactRing>(v: &mut Vec<R>) {
    while v.last().is_some_and(|c| c.r_is_zero()) {
        v.pop();
    }
}

fn deg<R>(v: &[R]) -> usize {
    v.len().saturating_sub(1)
}

/// Pseudo-remainder: `lc(b)^{deg a - deg b + 1} a mod b`.
fn prem<R: ExactRing>(a: &[R], b: &[R]) -> Vec<R> {
    let db = deg(b);
    let lb = b.last().unwrap().clone();
    let mut r = a.to_vec();
    let mut shift = deg(a) as isize - db as isize + 1;
    while r.len() > db && !r.is_empty() {
        let top = r.last().unwrap().clone();
        let k = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = c.r_mul(&lb);
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = r[k + j].r_sub(&top.r_mul(bj));
        }
        r.pop();
        trim(&mut r);
        shift -= 1;
    }
    let fix = lb.r_pow(shift.max(0) as usize);
    for c in r.iter_mut() {
        *c = c.r_mul(&fix);
    }
    trim(&mut r);
    r
}

/// Resultant of two polynomials given by coefficient vectors (lowest first).
pub fn resultant_generic<R: ExactRing>(a: &[R], b: &[R]) -> R {
    let mut a: Vec<R> = a.to_vec();
    let mut b: Vec<R> = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return R::r_zero();
    }
    let mut negate = false;
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            negate = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        let r = b[0].r_pow(deg(&a));
        return if negate { r.r_neg() } else { r };
    }
    let mut g = R::r_one();
    let mut h = R::r_one();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            negate = !negate;
        }
        let r = prem(&a, &b);
        a = b;
        let denom = g.r_mul(&h.r_pow(delta));
        b = r.iter().map(|c| c.r_div_exact(&denom)).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 { h } else { g.r_pow(delta).r_div_exact(&h.r_pow(delta - 1)) };
        if b.is_empty() {
            return R::r_zero();
        }
        if deg(&b) == 0 {
            let da = deg(&a);
            let res = b[0].r_pow(da).r_div_exact(&h.r_pow(da.saturating_sub(1)));
            return if negate { res.r_neg() } else { res };
        }
    }
}

pub fn resultant(a: &PolyQ, b: &PolyQ) -> Rational {
    resultant_generic(a.coeffs(), b.coeffs())
}

/// `disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f)`.
pub fn discriminant(f: &PolyQ) -> Rational {
    let d = f.deg();
    let r = resultant(f, &f.derivative()) / f.leading();
    if (d * (d.saturating_sub(1)) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// `Δ(t) = disc_X(f(X) - t)`, a polynomial in `t`.
pub fn discriminant_in_t(f: &PolyQ) -> PolyQ {
    let d = f.deg();
    let t = PolyQ::x();
    let mut big: Vec<PolyQ> = f.coeffs().iter().map(|c| PolyQ::constant(c.clone())).collect();
    big[0] = &big[0] - &t;
    let fp: Vec<PolyQ> = f.derivative().coeffs().iter().map(|c| PolyQ::constant(c.clone())).collect();
    let r = resultant_generic(&big, &fp);
    let mut out = r.scale(&f.leading().recip());
    if (d * (d - 1) / 2) % 2 == 1 {
        out = out.scale(&rat(-1));
    }
    out
}

/// Sylvester-matrix resultant by Gaussian elimination over ℚ; an independent check.
pub fn sylvester_resultant(a: &PolyQ, b: &PolyQ) -> Rational {
    let (m, n) = (a.deg(), b.deg());
    let size = m + n;
    if size == 0 {
        return Rational::one();
    }
    let mut mat = vec![vec![Rational::zero(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            mat[i][i + j] = a.coeff(m - j);
        }
    }
    for i in 0..m {
        for j in 0..=n {
            mat[n + i][i + j] = b.coeff(n - j);
        }
    }
    determinant(mat)
}

fn determinant(mut mat: Vec<Vec<Rational>>) -> Rational {
    let n = mat.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !mat[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            mat.swap(piv, col);
            det = -det;
        }
        let pv = mat[col][col].clone();
        det *= &pv;
        let (top, below) = mat.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in below.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pv;
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * y;
            }
        }
    }
    det
}
