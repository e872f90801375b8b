//! Weights and roots as exact coordinate vectors.
//!
//! All realizations in this crate are in orthonormal coordinates, so the
//! inner product is the plain dot product of `Scalar` entries.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::{Rational, Scalar};

/// A vector of exact field elements in the ambient coordinate space of one
/// simple factor.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight(pub Vec<Scalar>);

impl Weight {
    pub fn zero(dim: usize) -> Self {
        Weight(vec![Scalar::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Basis vector `e_i` (0-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut w = Self::zero(dim);
        w.0[i] = Scalar::one();
        w
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&n| Scalar::from_int(n)).collect())
    }

    /// Parses a vector of scalar literals.
    pub fn parse(coords: &[&str]) -> Self {
        Weight(
            coords
                .iter()
                .map(|s| s.parse().expect("bad scalar literal"))
                .collect(),
        )
    }

    pub fn dot(&self, other: &Weight) -> Scalar {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in dot product");
        let mut acc = Scalar::zero();
        for (x, y) in self.0.iter().zip(&other.0) {
            acc += &(x * y);
        }
        acc
    }

    pub fn norm_sq(&self) -> Scalar {
        self.dot(self)
    }

    pub fn scale(&self, k: &Scalar) -> Weight {
        Weight(self.0.iter().map(|x| x * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    /// Coordinate sum, used for the type A trace conventions.
    pub fn coord_sum(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for x in &self.0 {
            acc += x;
        }
        acc
    }

    /// Equality modulo the all-ones line (the type A convention
    /// `(mod (1,...,1))`); plain equality elsewhere.
    pub fn congruent_mod_ones(&self, other: &Weight) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let diff = self - other;
        let first = diff.0[0].clone();
        diff.0.iter().all(|x| *x == first)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.dim(), rhs.dim());
        Weight(self.0.iter().zip(&rhs.0).map(|(x, y)| x + y).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.dim(), rhs.dim());
        Weight(self.0.iter().zip(&rhs.0).map(|(x, y)| x - y).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|x| -x).collect())
    }
}

/// A root together with its shorter-root flag.
///
/// `shorter` is true exactly when some root of the same simple factor has
/// strictly larger squared norm; this only happens in types B and C.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub vec: Weight,
    pub shorter: bool,
}

impl Root {
    /// The coroot `2α/(α,α)`.
    pub fn coroot(&self) -> Weight {
        let norm = self.vec.norm_sq();
        debug_assert!(!norm.is_zero());
        let k = &Scalar::from_int(2) * &norm.invert().expect("zero root");
        self.vec.scale(&k)
    }

    /// The pairing `(λ, α∨)`.
    pub fn pair(&self, lambda: &Weight) -> Scalar {
        lambda.dot(&self.coroot())
    }

    /// Allowed target values for the forced-pairing search: `{1, 2}` at a
    /// shorter root and `{1}` otherwise.
    pub fn allowed_values(&self) -> &'static [i64] {
        if self.shorter {
            &[1, 2]
        } else {
            &[1]
        }
    }

    /// Reflection of `λ` in the hyperplane orthogonal to this root:
    /// `λ − (λ, α∨)·α`.
    pub fn reflect(&self, lambda: &Weight) -> Weight {
        let t = self.pair(lambda);
        &lambda.clone() - &self.vec.scale(&t)
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.vec, if self.shorter { " (shorter)" } else { "" })
    }
}

/// The rational value of a pairing that is known to be surd-free; panics
/// otherwise (callers gate on `Scalar::is_rational` where inputs are open).
pub fn rational_value(s: &Scalar) -> &Rational {
    s.as_rational().expect("pairing has irrational part")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_and_norm() {
        let v = Weight::parse(&["1/2", "1/2", "1/2", "1/2", "1/2", "1/6*sqrt3"]);
        let w = Weight::parse(&["-1/2", "-1/2", "-1/2", "-1/2", "-1/2", "1/2*sqrt3"]);
        // (row 2 of the E6 table) · α₆ = -5/4 + 1/4 = -1.
        assert_eq!(v.dot(&w), Scalar::from_int(-1));
        assert_eq!(w.norm_sq(), Scalar::from_int(2));
    }

    #[test]
    fn coroot_of_short_b_root() {
        let e1 = Root {
            vec: Weight::from_ints(&[1, 0]),
            shorter: true,
        };
        assert_eq!(e1.coroot(), Weight::from_ints(&[2, 0]));
        assert_eq!(e1.allowed_values(), &[1, 2]);
    }

    #[test]
    fn coroot_of_simply_laced_root_is_itself() {
        let alpha = Root {
            vec: Weight::parse(&["-1/2", "-1/2", "-1/2", "-1/2", "-1/2", "1/2*sqrt3"]),
            shorter: false,
        };
        assert_eq!(alpha.coroot(), alpha.vec);
    }

    #[test]
    fn reflection_fixes_orthogonal_vectors() {
        let alpha = Root {
            vec: Weight::from_ints(&[1, -1, 0]),
            shorter: false,
        };
        let fixed = Weight::from_ints(&[2, 2, 5]);
        assert_eq!(alpha.reflect(&fixed), fixed);
        let moved = Weight::from_ints(&[1, 0, 0]);
        assert_eq!(alpha.reflect(&moved), Weight::from_ints(&[0, 1, 0]));
    }

    #[test]
    fn mod_ones_congruence() {
        let a = Weight::from_ints(&[1, 1, 0]);
        let b = Weight::from_ints(&[2, 2, 1]);
        assert!(a.congruent_mod_ones(&b));
        assert!(!a.congruent_mod_ones(&Weight::from_ints(&[2, 1, 1])));
    }
}
