use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{fmt_terms, serialize_coeff, JsonCoeff, LaurentPoly};

/// A polynomial in `q = v^-2` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPolynomial {
    terms: BTreeMap<u32, BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_terms([(0, 1)])
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigInt>,
    {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigInt::zero) += c.into();
        }
        map.retain(|_, c: &mut BigInt| !c.is_zero());
        Self { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: u32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// `Some(e)` if this is exactly `q^e`.
    pub fn as_power_of_q(&self) -> Option<u32> {
        match self.terms.iter().next() {
            Some((e, c)) if self.terms.len() == 1 && c.is_one() => Some(*e),
            _ => None,
        }
    }

    /// Substitutes `q = v^-2`.
    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (-2 * *e as i32, c.clone())))
    }

    /// Inverse of [`to_laurent`](Self::to_laurent); `None` unless every
    /// exponent is even and nonpositive.
    pub fn from_laurent(p: &LaurentPoly) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in p.terms() {
            if e > 0 || e % 2 != 0 {
                return None;
            }
            terms.insert((-e / 2) as u32, c.clone());
        }
        Some(Self { terms })
    }
}

impl std::ops::Add<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        QPolynomial::from_terms(self.terms().chain(rhs.terms()).map(|(e, c)| (e, c.clone())))
    }
}

impl std::ops::Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, "q", self.terms.iter().rev().map(|(e, c)| (*e as i64, c)))
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({self})")
    }
}

impl Serialize for QPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            serialize_coeff(&mut map, &e.to_string(), c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for QPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = QPolynomial;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from nonnegative exponents to integer coefficients")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<QPolynomial, A::Error> {
                let mut terms = Vec::new();
                while let Some((k, c)) = map.next_entry::<String, JsonCoeff>()? {
                    let e: u32 = k.parse().map_err(|_| de::Error::custom(format!("bad exponent {k:?}")))?;
                    terms.push((e, c.into_bigint()?));
                }
                Ok(QPolynomial::from_terms(terms))
            }
        }
        deserializer.deserialize_map(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_and_json() {
        let p = QPolynomial::from_terms([(0, 1), (1, 1)]);
        assert_eq!(p.to_string(), "q + 1");
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"0":1,"1":1}"#);
        assert_eq!(QPolynomial::from_terms([(3, 1)]).as_power_of_q(), Some(3));
        assert_eq!(p.as_power_of_q(), None);
    }

    #[test]
    fn rejects_non_q_shapes() {
        assert!(QPolynomial::from_laurent(&LaurentPoly::v_pow(-1)).is_none());
        assert!(QPolynomial::from_laurent(&LaurentPoly::v_pow(2)).is_none());
    }

    proptest! {
        #[test]
        fn laurent_round_trip(terms in prop::collection::vec((0u32..8, -9i64..9), 0..5)) {
            let p = QPolynomial::from_terms(terms);
            prop_assert_eq!(QPolynomial::from_laurent(&p.to_laurent()), Some(p));
        }
    }
}
