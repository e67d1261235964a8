//! Exact integer Laurent polynomials in `v`.
//!
//! Everything in the crate is a `Z[v, v^-1]`-linear combination, so this is
//! the scalar type. `q` always means `v^-2`.

mod poly;
mod qpoly;
mod rational;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use qpoly::QPolynomial;
pub use rational::RationalFunction;

/// An element of `Z[v, v^-1]`.
///
/// Terms are kept sorted by increasing exponent and no stored coefficient is
/// zero, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i32, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * v^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(e, c)] }
        }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `v^e`.
    pub fn v_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// merging repeated exponents.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(i32, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    /// Takes ownership of a sorted, zero-free term list.
    fn from_sorted(terms: Vec<(i32, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Self { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// Leading coefficient (at the largest exponent).
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|t| &t.1)
    }

    /// A single term `c * v^e`, if that is what this is.
    pub fn as_monomial(&self) -> Option<(i32, &BigInt)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((*e, c)),
            _ => None,
        }
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self::from_sorted(self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect())
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self::from_sorted(self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_sorted(self.terms.iter().map(|(e, x)| (*e, x * c)).collect())
    }

    /// Value at `v = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.bar() == *self
    }

    /// True when every exponent is negative, i.e. the polynomial lies in `v^-1 Z[v^-1]`.
    pub fn in_negative_part(&self) -> bool {
        self.max_exp().is_none_or(|e| e < 0)
    }

    /// Sum of the terms with negative exponent.
    pub fn negative_part(&self) -> Self {
        Self::from_sorted(self.terms.iter().filter(|t| t.0 < 0).cloned().collect())
    }

    /// Given `f` with `bar(f) = -f`, returns the unique `g` supported in
    /// negative degrees with `g - bar(g) = f`.
    pub fn split_negative(&self) -> Result<Self> {
        if self.bar() != -self {
            return Err(Error::BarAsymmetry(self.to_string()));
        }
        Ok(self.negative_part())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division. Returns `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (sa, pa) = poly::to_poly(self);
        let (sb, pb) = poly::to_poly(other);
        let q = poly::div_exact(&pa, &pb)?;
        Some(poly::from_poly(sa - sb, &q))
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let sgn = |c: &BigInt| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, sgn(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| (*e, sgn(c))));
        Self::from_sorted(out)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some((e, c)) = other.as_monomial() {
            return if c.is_one() { self.shift(e) } else { self.shift(e).scale(c) };
        }
        if let Some((e, c)) = self.as_monomial() {
            return if c.is_one() { other.shift(e) } else { other.shift(e).scale(c) };
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms.last().unwrap().0 + other.terms.last().unwrap().0;
        let mut acc = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                acc[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        Self::from_sorted(
            acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (lo + i as i32, c)).collect(),
        )
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(&self, rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &LaurentPoly, b: &LaurentPoly| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &LaurentPoly, b: &LaurentPoly| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &LaurentPoly, b: &LaurentPoly| a.mul_impl(b));

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        *self = self.add_impl(rhs, false);
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        *self = self.add_impl(rhs, true);
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_sorted(self.terms.iter().map(|(e, c)| (*e, -c)).collect())
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, x| acc + x)
    }
}

/// Writes `Σ c x^e` in decreasing exponent order, e.g. `v^2 - 2*v + 3 + v^-1`.
pub(crate) fn fmt_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    var: &str,
    terms: impl Iterator<Item = (i64, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let unit = abs.is_one();
        match (e, unit) {
            (0, _) => write!(f, "{abs}")?,
            (1, true) => write!(f, "{var}")?,
            (1, false) => write!(f, "{abs}*{var}")?,
            (_, true) => write!(f, "{var}^{e}")?,
            (_, false) => write!(f, "{abs}*{var}^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, "v", self.terms.iter().rev().map(|(e, c)| (*e as i64, c)))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

pub(crate) fn serialize_coeff<S: SerializeMap>(
    map: &mut S,
    key: &str,
    c: &BigInt,
) -> std::result::Result<(), S::Error> {
    match c.to_i64() {
        Some(x) => map.serialize_entry(key, &x),
        None => map.serialize_entry(key, &c.to_string()),
    }
}

/// Coefficient as found in JSON: an integer, or a decimal string for huge values.
#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum JsonCoeff {
    Int(i64),
    Str(String),
}

impl JsonCoeff {
    pub(crate) fn into_bigint<E: de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            JsonCoeff::Int(x) => Ok(BigInt::from(x)),
            JsonCoeff::Str(s) => s.parse().map_err(|_| E::custom(format!("bad coefficient {s:?}"))),
        }
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            serialize_coeff(&mut map, &e.to_string(), c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from integer exponents to integer coefficients")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<LaurentPoly, A::Error> {
                let mut terms = Vec::new();
                while let Some((k, c)) = map.next_entry::<String, JsonCoeff>()? {
                    let e: i32 = k.parse().map_err(|_| de::Error::custom(format!("bad exponent {k:?}")))?;
                    terms.push((e, c.into_bigint()?));
                }
                Ok(LaurentPoly::from_terms(terms))
            }
        }
        deserializer.deserialize_map(V)
    }
}

/// The balanced quantum integer `[n] = (v^n - v^-n) / (v - v^-1)`.
pub fn quantum_integer(n: i32) -> LaurentPoly {
    let sign = if n < 0 { -1 } else { 1 };
    let m = n.abs();
    LaurentPoly::from_terms((0..m).map(|j| (m - 1 - 2 * j, sign)))
}

/// `[n]! = [1][2]...[n]`.
pub fn quantum_factorial(n: u32) -> LaurentPoly {
    (1..=n as i32).fold(LaurentPoly::one(), |acc, i| acc * quantum_integer(i))
}

static BINOMIALS: Lazy<RwLock<HashMap<(u32, u32), LaurentPoly>>> = Lazy::new(Default::default);

/// The balanced quantum binomial `[n choose k] = [n]! / ([k]! [n-k]!)`, zero
/// when `k` lies outside `0..=n`.
pub fn gauss_binomial(n: u32, k: i64) -> LaurentPoly {
    if k < 0 || k > n as i64 {
        return LaurentPoly::zero();
    }
    let k = k as u32;
    let k = k.min(n - k);
    if let Some(p) = BINOMIALS.read().get(&(n, k)) {
        return p.clone();
    }
    let num = quantum_factorial(n);
    let den = quantum_factorial(k) * quantum_factorial(n - k);
    let b = num.div_exact(&den).expect("quantum factorials divide");
    BINOMIALS.write().insert((n, k), b.clone());
    b
}
