//! Minimal commutative-ring interface shared by the coefficient types.

use std::fmt::Debug;

use crate::scalar::ComplexScalar;

/// Commutative ring over the Gaussian rationals with an antilinear involution.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn scale(&self, c: &ComplexScalar) -> Self;

    fn from_scalar(c: &ComplexScalar) -> Self {
        Self::one().scale(c)
    }
}

/// The derivation written `′`: `∂/∂y` on Laurent functions, `d/dφ` on circle functions,
/// the total derivative on jet polynomials.
pub trait Derivation: Coefficient {
    fn derive(&self) -> Self;
}

impl Coefficient for ComplexScalar {
    fn zero() -> Self {
        ComplexScalar::zero()
    }
    fn one() -> Self {
        ComplexScalar::one()
    }
    fn is_zero(&self) -> bool {
        ComplexScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        ComplexScalar::conj(self)
    }
    fn scale(&self, c: &ComplexScalar) -> Self {
        self * c
    }
}

impl Derivation for ComplexScalar {
    fn derive(&self) -> Self {
        ComplexScalar::zero()
    }
}

/// Operator sugar over a [`Coefficient`] implementation.
macro_rules! impl_ring_ops {
    ($t:ty) => {
        impl<'a> std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                $crate::ring::Coefficient::add(self, o)
            }
        }
        impl<'a> std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                $crate::ring::Coefficient::sub(self, o)
            }
        }
        impl<'a> std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                $crate::ring::Coefficient::mul(self, o)
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::ring::Coefficient::neg(self)
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                $crate::ring::Coefficient::add(&self, &o)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                $crate::ring::Coefficient::sub(&self, &o)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                $crate::ring::Coefficient::mul(&self, &o)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::ring::Coefficient::neg(&self)
            }
        }
    };
}

pub(crate) use impl_ring_ops;
