use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use super::{poly, LaurentPoly};
use crate::error::{Error, Result};

/// A reduced quotient of two Laurent polynomials.
///
/// Canonical form: the denominator is an honest polynomial in `v` with
/// nonzero constant term and positive leading coefficient, every monomial
/// factor sits in the numerator, and numerator and denominator are coprime
/// in `Z[v]` (integer content included). Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        self.is_laurent().then(|| self.num.clone())
    }

    pub fn bar(&self) -> Self {
        if self.is_laurent() {
            return Self::from_laurent(self.num.bar());
        }
        Self::reduce(self.num.bar(), self.den.bar())
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Multiplication by a Laurent polynomial.
    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        if self.is_laurent() {
            return Self::from_laurent(&self.num * p);
        }
        if let Some((e, c)) = p.as_monomial() {
            if c.is_one() {
                // no new common factor can appear
                return Self { num: self.num.shift(e), den: self.den.clone() };
            }
        }
        Self::reduce(&self.num * p, self.den.clone())
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (sn, pn) = poly::to_poly(&num);
        let (sd, pd) = poly::to_poly(&den);
        let g = poly::gcd(&pn, &pd);
        let (mut pn, mut pd) = if poly::is_one(&g) {
            (pn, pd)
        } else {
            (poly::div_exact(&pn, &g).unwrap(), poly::div_exact(&pd, &g).unwrap())
        };
        if pd.last().unwrap().is_negative() {
            pn.iter_mut().for_each(|x| *x = -std::mem::take(x));
            pd.iter_mut().for_each(|x| *x = -std::mem::take(x));
        }
        Self { num: poly::from_poly(sn - sd, &pn), den: poly::from_poly(0, &pd) }
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }
}

fn add(a: &RationalFunction, b: &RationalFunction, negate: bool) -> RationalFunction {
    let bn = if negate { -&b.num } else { b.num.clone() };
    if a.den == b.den {
        let num = &a.num + &bn;
        if a.is_laurent() {
            return RationalFunction::from_laurent(num);
        }
        return RationalFunction::reduce(num, a.den.clone());
    }
    // a/d1 + b/d2 = (a*(d2/g) + b*(d1/g)) / lcm
    let (_, p1) = poly::to_poly(&a.den);
    let (_, p2) = poly::to_poly(&b.den);
    let g = poly::gcd(&p1, &p2);
    let g = poly::from_poly(0, &g);
    let c1 = b.den.div_exact(&g).unwrap();
    let c2 = a.den.div_exact(&g).unwrap();
    RationalFunction::reduce(&a.num * &c1 + &bn * &c2, &a.den * &c1)
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        add(self, rhs, false)
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        add(&self, &rhs, false)
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        add(self, rhs, true)
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        add(&self, &rhs, true)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if rhs.is_laurent() {
            return self.mul_laurent(&rhs.num);
        }
        if self.is_laurent() {
            return rhs.mul_laurent(&self.num);
        }
        RationalFunction::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -self.num, den: self.den }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::gauss_binomial;
    use proptest::prelude::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn canonical_form() {
        let r = RationalFunction::new(lp(&[(0, 2)]), lp(&[(0, 4)])).unwrap();
        assert_eq!(r.numerator(), &lp(&[(0, 1)]));
        assert_eq!(r.denominator(), &lp(&[(0, 2)]));

        // v^2 / (v^3 + v) = v / (v^2 + 1)
        let r = RationalFunction::new(lp(&[(2, 1)]), lp(&[(3, 1), (1, 1)])).unwrap();
        assert_eq!(r.numerator(), &lp(&[(1, 1)]));
        assert_eq!(r.denominator(), &lp(&[(2, 1), (0, 1)]));

        // 1 / -[2] : sign moves to the numerator, monomial to the numerator
        let r = RationalFunction::new(lp(&[(0, 1)]), -gauss_binomial(2, 1)).unwrap();
        assert_eq!(r.numerator(), &lp(&[(1, -1)]));
        assert_eq!(r.denominator(), &lp(&[(2, 1), (0, 1)]));

        assert!(RationalFunction::new(lp(&[(0, 1)]), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn field_arithmetic() {
        let two = RationalFunction::from_laurent(gauss_binomial(2, 1));
        let inv = two.recip().unwrap();
        assert_eq!(&two * &inv, RationalFunction::one());
        let half = &inv + &inv;
        assert_eq!(half.mul_laurent(&gauss_binomial(2, 1)), RationalFunction::from(2));
        assert_eq!(&inv - &inv, RationalFunction::zero());
        assert_eq!(inv.bar(), inv);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i32..4, -9i64..9), 0..4).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn common_factor_cancels(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assume!(!g.is_zero() && !h.is_zero());
            let a = RationalFunction::new(&f * &h, &g * &h).unwrap();
            let b = RationalFunction::new(f, g).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn addition_matches_cross_multiplication(
            a in arb_poly(), b in arb_poly(), c in arb_poly(), d in arb_poly()
        ) {
            prop_assume!(!b.is_zero() && !d.is_zero());
            let x = RationalFunction::new(a.clone(), b.clone()).unwrap();
            let y = RationalFunction::new(c.clone(), d.clone()).unwrap();
            let direct = RationalFunction::new(&a * &d + &c * &b, &b * &d).unwrap();
            prop_assert_eq!(&x + &y, direct);
        }
    }
}
