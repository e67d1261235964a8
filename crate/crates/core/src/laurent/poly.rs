//! Dense univariate polynomials over `Z`, coefficients in increasing degree.
//! Only what the rational-function field needs: exact division and gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::LaurentPoly;

pub(crate) type Poly = Vec<BigInt>;

/// Splits `f = v^s * p(v)` with `p(0) != 0`. `f` must be nonzero.
pub(crate) fn to_poly(f: &LaurentPoly) -> (i32, Poly) {
    let lo = f.min_exp().expect("nonzero polynomial");
    let hi = f.max_exp().unwrap();
    let mut p = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, c) in f.terms() {
        p[(e - lo) as usize] = c.clone();
    }
    (lo, p)
}

pub(crate) fn from_poly(shift: i32, p: &[BigInt]) -> LaurentPoly {
    LaurentPoly::from_sorted(
        p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (shift + i as i32, c.clone())).collect(),
    )
}

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn degree(p: &Poly) -> usize {
    p.len() - 1
}

pub(crate) fn content(p: &Poly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(p: &Poly) -> Poly {
    let c = content(p);
    let mut q: Poly = p.iter().map(|x| x / &c).collect();
    if q.last().is_some_and(|x| x.is_negative()) {
        q.iter_mut().for_each(|x| *x = -std::mem::take(x));
    }
    q
}

/// Quotient of `a / b` if it is exact over `Z`.
pub(crate) fn div_exact(a: &Poly, b: &Poly) -> Option<Poly> {
    let mut r = a.clone();
    trim(&mut r);
    let mut b = b.clone();
    trim(&mut b);
    if b.is_empty() {
        return None;
    }
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let db = degree(&b);
    let lb = b[db].clone();
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let dr = degree(&r);
        let (t, rem) = r[dr].div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &t * bc;
        }
        q[shift] = t;
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    if r.is_empty() {
        trim(&mut q);
        Some(q)
    } else {
        None
    }
}

/// Pseudo-remainder of `a` by `b` (`deg a >= deg b`).
fn pseudo_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = degree(b);
    let lb = &b[db];
    while !r.is_empty() && r.len() > db {
        let dr = degree(&r);
        let lr = r[dr].clone();
        r.iter_mut().for_each(|x| *x *= lb);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Greatest common divisor over `Z[v]`, normalized to a positive leading coefficient.
pub(crate) fn gcd(a: &Poly, b: &Poly) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() {
        return primitive_sign(&b);
    }
    if b.is_empty() {
        return primitive_sign(&a);
    }
    let c = content(&a).gcd(&content(&b));
    let mut x = primitive(&a);
    let mut y = primitive(&b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive(&r) };
    }
    let g = primitive(&x);
    g.into_iter().map(|t| t * &c).collect()
}

fn primitive_sign(p: &Poly) -> Poly {
    if p.last().is_some_and(|x| x.is_negative()) {
        p.iter().map(|x| -x).collect()
    } else {
        p.clone()
    }
}

pub(crate) fn is_one(p: &Poly) -> bool {
    p.len() == 1 && p[0].is_one()
}
