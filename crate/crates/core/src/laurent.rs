//! Finite Laurent sums `Σ c_{mn} z^m z̄^n` in a chart coordinate and its conjugate.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::circle::CircleFn;
use crate::error::{Error, Result};
use crate::ring::{impl_ring_ops, Coefficient, Derivation};
use crate::scalar::ComplexScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wirtinger {
    /// `∂/∂z`
    Holomorphic,
    /// `∂/∂z̄`
    AntiHolomorphic,
}

/// Exponent pair `(m, n)` of the monomial `z^m z̄^n`.
pub type Exponents = (i64, i64);

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentFn {
    terms: BTreeMap<Exponents, ComplexScalar>,
}

/// Coordinate change `z_old = c · z_new^e` with `c ≠ 0`, `e = ±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    pub coeff: ComplexScalar,
    pub exponent: i64,
}

impl MonomialMap {
    pub fn new(coeff: ComplexScalar, exponent: i64) -> Result<Self> {
        if coeff.is_zero() {
            return Err(Error::NotLaurentInvertible("zero coefficient".into()));
        }
        if exponent != 1 && exponent != -1 {
            return Err(Error::NotLaurentInvertible(format!(
                "exponent {exponent} has no Laurent inverse"
            )));
        }
        Ok(MonomialMap { coeff, exponent })
    }

    pub fn identity() -> Self {
        MonomialMap { coeff: ComplexScalar::one(), exponent: 1 }
    }

    /// `z ↦ 1/z`
    pub fn inversion() -> Self {
        MonomialMap { coeff: ComplexScalar::one(), exponent: -1 }
    }

    /// The map as a Laurent function of the new coordinate.
    pub fn as_laurent(&self) -> LaurentFn {
        LaurentFn::monomial(self.coeff.clone(), self.exponent, 0)
    }

    pub fn derivative(&self) -> LaurentFn {
        self.as_laurent().diff(Wirtinger::Holomorphic)
    }

    pub fn inverse(&self) -> Self {
        // z_old = c z_new^e  ⇔  z_new = c^{-e} z_old^e  (e = ±1)
        let c = self.coeff.powi(-self.exponent).expect("non-zero coefficient");
        MonomialMap { coeff: c, exponent: self.exponent }
    }

    /// `self ∘ inner`: first apply `inner`, then `self`.
    pub fn compose(&self, inner: &MonomialMap) -> Self {
        let c = &self.coeff * &inner.coeff.powi(self.exponent).expect("non-zero coefficient");
        MonomialMap { coeff: c, exponent: self.exponent * inner.exponent }
    }
}

impl LaurentFn {
    pub fn from_terms<I: IntoIterator<Item = (Exponents, ComplexScalar)>>(it: I) -> Self {
        let mut out = LaurentFn::default();
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
    }

    pub fn constant(c: ComplexScalar) -> Self {
        LaurentFn::monomial(c, 0, 0)
    }

    pub fn monomial(c: ComplexScalar, m: i64, n: i64) -> Self {
        LaurentFn::from_terms([((m, n), c)])
    }

    /// The coordinate `z`.
    pub fn z() -> Self {
        LaurentFn::monomial(ComplexScalar::one(), 1, 0)
    }

    /// The conjugate coordinate `z̄`.
    pub fn zbar() -> Self {
        LaurentFn::monomial(ComplexScalar::one(), 0, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &ComplexScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: i64, n: i64) -> ComplexScalar {
        self.terms.get(&(m, n)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Exponents, c: &ComplexScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|&(_, n)| n == 0)
    }

    pub fn diff(&self, which: Wirtinger) -> Self {
        let mut out = LaurentFn::default();
        for (&(m, n), c) in &self.terms {
            match which {
                Wirtinger::Holomorphic if m != 0 => out.add_term((m - 1, n), &c.scale(&crate::scalar::rat(m))),
                Wirtinger::AntiHolomorphic if n != 0 => {
                    out.add_term((m, n - 1), &c.scale(&crate::scalar::rat(n)))
                }
                _ => {}
            }
        }
        out
    }

    /// Rewrites a function of `z_old` in the new coordinate, where `z_old = c · z_new^{±1}`.
    pub fn pullback(&self, map: &MonomialMap) -> Self {
        let cbar = map.coeff.conj();
        let mut out = LaurentFn::default();
        for (&(m, n), c) in &self.terms {
            let k = &map.coeff.powi(m).expect("non-zero") * &cbar.powi(n).expect("non-zero");
            out.add_term((map.exponent * m, map.exponent * n), &(c * &k));
        }
        out
    }

    /// Sets `z = e^{iφ}`, `z̄ = e^{-iφ}`.
    pub fn restrict_to_circle(&self) -> CircleFn {
        CircleFn::from_terms(self.terms.iter().map(|(&(m, n), c)| (m - n, c.clone())))
    }

    /// A single-term function `c z^m z̄^n` with `c ≠ 0` is a unit; everything else is not.
    pub fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(m, n), c) = self.terms.iter().next()?;
        Some(LaurentFn::monomial(c.inv()?, -m, -n))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        self.terms
            .iter()
            .map(|(&(m, n), c)| c.to_c64() * z.powi(m as i32) * zb.powi(n as i32))
            .sum()
    }

    /// Largest absolute real or imaginary part over all coefficients.
    pub fn max_coeff(&self) -> crate::scalar::Rational {
        self.terms
            .values()
            .map(|c| c.max_abs())
            .max()
            .unwrap_or_default()
    }
}

impl Coefficient for LaurentFn {
    fn zero() -> Self {
        LaurentFn::default()
    }
    fn one() -> Self {
        LaurentFn::constant(ComplexScalar::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &o.terms {
            out.add_term(e, c);
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &o.terms {
            out.add_term(e, &-c);
        }
        out
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = LaurentFn::default();
        for (&(m1, n1), a) in &self.terms {
            for (&(m2, n2), b) in &o.terms {
                out.add_term((m1 + m2, n1 + n2), &(a * b));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        LaurentFn { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
    fn conj(&self) -> Self {
        LaurentFn::from_terms(self.terms.iter().map(|(&(m, n), c)| ((n, m), c.conj())))
    }
    fn scale(&self, k: &ComplexScalar) -> Self {
        LaurentFn::from_terms(self.terms.iter().map(|(&e, c)| (e, c * k)))
    }
}

impl Derivation for LaurentFn {
    fn derive(&self) -> Self {
        self.diff(Wirtinger::Holomorphic)
    }
}

impl_ring_ops!(LaurentFn);

impl fmt::Debug for LaurentFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(m, n), c)| format!("({c})z^{m}zb^{n}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
