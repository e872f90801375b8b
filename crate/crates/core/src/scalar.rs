//! Exact arithmetic in the real quadratic biextension Q(√2, √3).
//!
//! Every coordinate that appears anywhere in this crate (halves, √3/2,
//! 1/(2√3), √2/2, 2√3/3, ...) lives in this field, so a single number type
//! suffices. Elements are stored on the Q-basis {1, √2, √3, √6} with
//! arbitrary-precision rational coefficients; all operations are exact.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (guaranteed by `num_rational`'s canonical form).
pub type Rational = BigRational;

/// Shorthand for a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// An element `a + b·√2 + c·√3 + d·√6` of Q(√2, √3).
///
/// The representation is unique because {1, √2, √3, √6} is a Q-basis, so
/// equality and hashing are plain componentwise operations.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

/// Attempt to invert zero.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("attempted to invert the zero element of Q(sqrt2, sqrt3)")]
pub struct ZeroInversion;

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    pub fn from_rational(a: Rational) -> Self {
        Scalar {
            a,
            b: Rational::zero(),
            c: Rational::zero(),
            d: Rational::zero(),
        }
    }

    /// `p/q` as a scalar.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(rat(p, q))
    }

    /// `(p/q)·√2`.
    pub fn sqrt2(p: i64, q: i64) -> Self {
        Scalar {
            a: Rational::zero(),
            b: rat(p, q),
            c: Rational::zero(),
            d: Rational::zero(),
        }
    }

    /// `(p/q)·√3`.
    pub fn sqrt3(p: i64, q: i64) -> Self {
        Scalar {
            a: Rational::zero(),
            b: Rational::zero(),
            c: rat(p, q),
            d: Rational::zero(),
        }
    }

    /// `(p/q)·√6`.
    pub fn sqrt6(p: i64, q: i64) -> Self {
        Scalar {
            a: Rational::zero(),
            b: Rational::zero(),
            c: Rational::zero(),
            d: rat(p, q),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// True when the element lies in Q (no surd components).
    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// The rational part if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Galois conjugation √2 ↦ −√2 (fixes √3, flips √6).
    fn conj_sqrt2(&self) -> Self {
        Scalar {
            a: self.a.clone(),
            b: -self.b.clone(),
            c: self.c.clone(),
            d: -self.d.clone(),
        }
    }

    /// Galois conjugation √3 ↦ −√3 (fixes √2, flips √6).
    fn conj_sqrt3(&self) -> Self {
        Scalar {
            a: self.a.clone(),
            b: self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }

    /// Multiplicative inverse, computed by successive conjugation: the
    /// product of all four Galois conjugates is a nonzero rational.
    pub fn invert(&self) -> Result<Scalar, ZeroInversion> {
        if self.is_zero() {
            return Err(ZeroInversion);
        }
        let c2 = self.conj_sqrt2();
        let c3 = self.conj_sqrt3();
        let c23 = c2.conj_sqrt3();
        let numer = &(&c2 * &c3) * &c23;
        let norm = self * &numer;
        debug_assert!(norm.is_rational() && !norm.a.is_zero());
        let inv_norm = norm.a.recip();
        Ok(Scalar {
            a: &numer.a * &inv_norm,
            b: &numer.b * &inv_norm,
            c: &numer.c * &inv_norm,
            d: &numer.d * &inv_norm,
        })
    }

    pub fn double(&self) -> Self {
        self + self
    }

    fn fmt_term(f: &mut fmt::Formatter<'_>, coeff: &Rational, surd: Option<&str>, first: bool) -> fmt::Result {
        let negative = coeff.is_negative();
        let abs = coeff.abs();
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        match surd {
            None => write!(f, "{}", abs),
            Some(s) => {
                if abs.is_one() {
                    write!(f, "{}", s)
                } else {
                    write!(f, "{}*{}", abs, s)
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    /// Canonical textual form `p/q + r/s*sqrt2 + t/u*sqrt3 + v/w*sqrt6`
    /// with zero terms omitted (and "0" for the zero element).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (coeff, surd) in [
            (&self.a, None),
            (&self.b, Some("sqrt2")),
            (&self.c, Some("sqrt3")),
            (&self.d, Some("sqrt6")),
        ] {
            if !coeff.is_zero() {
                Self::fmt_term(f, coeff, surd, first)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Malformed scalar literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scalar literal: {0}")]
pub struct ParseScalarError(String);

fn parse_rational(s: &str) -> Result<Rational, ParseScalarError> {
    let bad = || ParseScalarError(s.to_owned());
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(Rational::from(n))
        }
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Parses the textual grammar emitted by `Display`. Terms may be joined
    /// by `+` or `-`, each term is `p[/q]`, `p[/q]*sqrtK`, or a bare
    /// `sqrtK`, with K in {2, 3, 6}.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let bad = || ParseScalarError(input.to_owned());
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        // Split into signed terms. A sign starts a new term unless it is
        // the first character or directly follows '/' or '*'.
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                let prev = cur.chars().last();
                if !matches!(prev, Some('/') | Some('*') | None) {
                    terms.push(std::mem::take(&mut cur));
                    if ch == '-' {
                        cur.push('-');
                    }
                    continue;
                }
            }
            cur.push(ch);
        }
        terms.push(cur);

        let mut out = Scalar::zero();
        for term in &terms {
            let t = term.trim();
            if t.is_empty() {
                return Err(bad());
            }
            let (coeff_str, surd) = match t.split_once('*') {
                Some((c, s)) => (c.trim(), Some(s.trim())),
                None => {
                    // Bare surd, possibly signed.
                    let (sign, rest) = match t.strip_prefix('-') {
                        Some(r) => (-1i64, r.trim()),
                        None => (1, t),
                    };
                    if rest.starts_with("sqrt") {
                        let unit = match rest {
                            "sqrt2" => Scalar::sqrt2(sign, 1),
                            "sqrt3" => Scalar::sqrt3(sign, 1),
                            "sqrt6" => Scalar::sqrt6(sign, 1),
                            _ => return Err(bad()),
                        };
                        out += &unit;
                        continue;
                    }
                    (t, None)
                }
            };
            let coeff = parse_rational(coeff_str)?;
            let part = match surd {
                None => Scalar::from_rational(coeff),
                Some("sqrt2") => Scalar {
                    b: coeff,
                    ..Scalar::zero()
                },
                Some("sqrt3") => Scalar {
                    c: coeff,
                    ..Scalar::zero()
                },
                Some("sqrt6") => Scalar {
                    d: coeff,
                    ..Scalar::zero()
                },
                Some(_) => return Err(bad()),
            };
            out += &part;
        }
        Ok(out)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            c: &self.c + &rhs.c,
            d: &self.d + &rhs.d,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            c: &self.c - &rhs.c,
            d: &self.d - &rhs.d,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    /// Product expanded through the surd multiplication table
    /// √2·√3 = √6, √2·√6 = 2√3, √3·√6 = 3√2.
    fn mul(self, rhs: &Scalar) -> Scalar {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&rhs.a, &rhs.b, &rhs.c, &rhs.d);
        let two = rat(2, 1);
        let three = rat(3, 1);
        let six = rat(6, 1);
        Scalar {
            a: a1 * a2 + &two * (b1 * b2) + &three * (c1 * c2) + &six * (d1 * d2),
            b: a1 * b2 + b1 * a2 + &three * (c1 * d2 + d1 * c2),
            c: a1 * c2 + c1 * a2 + &two * (b1 * d2 + d1 * b2),
            d: a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_addition() {
        let half = Scalar::ratio(1, 2);
        assert_eq!(&half + &half, Scalar::one());
    }

    #[test]
    fn sqrt3_coordinate_addition() {
        let x = Scalar::sqrt3(1, 2);
        assert_eq!(&x + &x, Scalar::sqrt3(1, 1));
    }

    #[test]
    fn e6_coordinate_difference() {
        // 2√3/3 − √3/2 = √3/6: the last coordinate of ϖ₆ minus the last
        // coordinate of a root in the E6 realization.
        let x = Scalar::sqrt3(2, 3);
        let y = Scalar::sqrt3(-1, 2);
        assert_eq!(&x + &y, Scalar::sqrt3(1, 6));
    }

    #[test]
    fn surd_products() {
        assert_eq!(
            &Scalar::sqrt2(1, 1) * &Scalar::sqrt3(1, 1),
            Scalar::sqrt6(1, 1)
        );
        let one_plus = &Scalar::one() + &Scalar::sqrt2(1, 1);
        let one_minus = &Scalar::one() - &Scalar::sqrt2(1, 1);
        assert_eq!(&one_plus * &one_minus, Scalar::from_int(-1));
        assert_eq!(
            &Scalar::sqrt3(2, 3) * &Scalar::sqrt3(1, 2),
            Scalar::one()
        );
    }

    #[test]
    fn inversion() {
        assert_eq!(
            Scalar::sqrt3(1, 1).invert().unwrap(),
            Scalar::sqrt3(1, 3)
        );
        assert_eq!(Scalar::from_int(2).invert().unwrap(), Scalar::ratio(1, 2));
        let x = &(&Scalar::one() + &Scalar::sqrt2(1, 1)) + &Scalar::sqrt3(1, 1);
        let inv = x.invert().unwrap();
        assert_eq!(&x * &inv, Scalar::one());
        assert_eq!(Scalar::zero().invert(), Err(ZeroInversion));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let samples = [
            Scalar::zero(),
            Scalar::one(),
            Scalar::ratio(-1, 2),
            Scalar::sqrt3(2, 3),
            Scalar::sqrt3(-1, 3),
            Scalar::sqrt2(1, 2),
            &(&Scalar::ratio(1, 2) - &Scalar::sqrt2(3, 4)) + &Scalar::sqrt6(-5, 7),
        ];
        for s in &samples {
            let text = s.to_string();
            let back: Scalar = text.parse().unwrap();
            assert_eq!(&back, s, "round trip failed for {text}");
        }
    }

    #[test]
    fn parse_grammar_forms() {
        let cases = [
            ("0", Scalar::zero()),
            ("1/2", Scalar::ratio(1, 2)),
            ("-1/2", Scalar::ratio(-1, 2)),
            ("2/3*sqrt3", Scalar::sqrt3(2, 3)),
            ("sqrt2", Scalar::sqrt2(1, 1)),
            ("-sqrt2", Scalar::sqrt2(-1, 1)),
            ("1*sqrt6", Scalar::sqrt6(1, 1)),
            (
                "1/2 + 1/2*sqrt2",
                &Scalar::ratio(1, 2) + &Scalar::sqrt2(1, 2),
            ),
            (
                "1 - 1/3*sqrt3",
                &Scalar::one() - &Scalar::sqrt3(1, 3),
            ),
            (
                "-1/2+1/2*sqrt2-sqrt6",
                &(&Scalar::ratio(-1, 2) + &Scalar::sqrt2(1, 2)) - &Scalar::sqrt6(1, 1),
            ),
        ];
        for (text, want) in cases {
            let got: Scalar = text.parse().unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(got, want, "parsing {text}");
        }
        assert!("".parse::<Scalar>().is_err());
        assert!("sqrt5".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x + 2".parse::<Scalar>().is_err());
    }
}
