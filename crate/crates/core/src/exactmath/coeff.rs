//! The coefficient interface shared by scalar problems and parameterized ones.

use std::fmt;

use super::poly::Poly2;
use super::scalar::Scalar;

/// A commutative ring of coefficients for equation systems and matrices.
///
/// `Scalar` is a field; `Poly2` models `k[λ,μ]` where λ is the parameter of the
/// left (row) class and μ that of the right (column) class.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Inverse when the element is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;
    fn from_scalar(s: Scalar) -> Self;
    fn as_scalar(&self) -> Option<Scalar>;
    /// An element of a class's own parameter ring, moved to act from the right.
    fn acting_right(&self) -> Self;
    fn to_poly2(&self) -> Poly2;
    /// The free parameter of a class, when the ring has one.
    fn parameter() -> Option<Self>;
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.inv()
    }
    fn from_scalar(s: Scalar) -> Self {
        s
    }
    fn as_scalar(&self) -> Option<Scalar> {
        Some(self.clone())
    }
    fn acting_right(&self) -> Self {
        self.clone()
    }
    fn to_poly2(&self) -> Poly2 {
        Poly2::constant(self.clone())
    }
    fn parameter() -> Option<Self> {
        None
    }
}

impl Coeff for Poly2 {
    fn zero() -> Self {
        Poly2::zero()
    }
    fn one() -> Self {
        Poly2::constant(Scalar::one())
    }
    fn is_zero(&self) -> bool {
        Poly2::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.as_constant().and_then(|c| c.inv()).map(Poly2::constant)
    }
    fn from_scalar(s: Scalar) -> Self {
        Poly2::constant(s)
    }
    fn as_scalar(&self) -> Option<Scalar> {
        self.as_constant()
    }
    fn acting_right(&self) -> Self {
        self.swap_vars()
    }
    fn to_poly2(&self) -> Poly2 {
        self.clone()
    }
    fn parameter() -> Option<Self> {
        Some(Poly2::lambda())
    }
}
