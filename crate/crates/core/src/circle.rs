//! Trigonometric polynomials `Σ c_k e^{ikφ}` on the unit circle.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::ring::{impl_ring_ops, Coefficient, Derivation};
use crate::scalar::{rat, ratio, ComplexScalar};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CircleFn {
    terms: BTreeMap<i64, ComplexScalar>,
}

impl CircleFn {
    pub fn from_terms<I: IntoIterator<Item = (i64, ComplexScalar)>>(it: I) -> Self {
        let mut out = CircleFn::default();
        for (k, c) in it {
            out.add_term(k, &c);
        }
        out
    }

    pub fn constant(c: ComplexScalar) -> Self {
        CircleFn::from_terms([(0, c)])
    }

    /// `c · e^{ikφ}`
    pub fn exp(k: i64, c: ComplexScalar) -> Self {
        CircleFn::from_terms([(k, c)])
    }

    /// `sin(nφ) = (e^{inφ} − e^{−inφ}) / 2i`
    pub fn sin(n: i64) -> Self {
        let h = ComplexScalar::new(rat(0), ratio(-1, 2));
        CircleFn::from_terms([(n, h.clone()), (-n, -h)])
    }

    /// `cos(nφ) = (e^{inφ} + e^{−inφ}) / 2`
    pub fn cos(n: i64) -> Self {
        let h = ComplexScalar::real(ratio(1, 2));
        CircleFn::from_terms([(n, h.clone()), (-n, h)])
    }

    fn add_term(&mut self, k: i64, c: &ComplexScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &ComplexScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: i64) -> ComplexScalar {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `d/dφ`
    pub fn d_dphi(&self) -> Self {
        CircleFn::from_terms(
            self.terms
                .iter()
                .map(|(&k, c)| (k, c * &ComplexScalar::from_ints(0, k))),
        )
    }

    /// Pointwise real part `(u + ū)/2`.
    pub fn real_part(&self) -> Self {
        (self + &self.conj()).scale(&ComplexScalar::real(ratio(1, 2)))
    }

    /// Pointwise imaginary part `(u − ū)/2i`.
    pub fn imag_part(&self) -> Self {
        (self - &self.conj()).scale(&ComplexScalar::new(rat(0), ratio(-1, 2)))
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn is_imaginary(&self) -> bool {
        self.conj() == -self
    }

    /// Mean value over a period, i.e. `(1/2π)∫₀^{2π} u dφ`.
    pub fn mean(&self) -> ComplexScalar {
        self.coeff(0)
    }

    pub fn max_abs_frequency(&self) -> i64 {
        self.terms.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    pub fn eval(&self, phi: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&k, c)| c.to_c64() * Complex64::from_polar(1.0, k as f64 * phi))
            .sum()
    }

    /// Exact value at `φ = π·p/q`, available when every frequency lands on a multiple of `π/2`.
    pub fn eval_at_pi_fraction(&self, p: i64, q: i64) -> Option<ComplexScalar> {
        let mut acc = ComplexScalar::zero();
        for (&k, c) in &self.terms {
            let num = 2 * k * p;
            if num % q != 0 {
                return None;
            }
            acc += &(c * &ComplexScalar::i_pow(num / q));
        }
        Some(acc)
    }

    pub fn max_coeff(&self) -> crate::scalar::Rational {
        self.terms.values().map(|c| c.max_abs()).max().unwrap_or_default()
    }
}

impl Coefficient for CircleFn {
    fn zero() -> Self {
        CircleFn::default()
    }
    fn one() -> Self {
        CircleFn::constant(ComplexScalar::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &o.terms {
            out.add_term(k, c);
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &o.terms {
            out.add_term(k, &-c);
        }
        out
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = CircleFn::default();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &o.terms {
                out.add_term(a + b, &(ca * cb));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        CircleFn { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
    fn conj(&self) -> Self {
        CircleFn::from_terms(self.terms.iter().map(|(&k, c)| (-k, c.conj())))
    }
    fn scale(&self, s: &ComplexScalar) -> Self {
        CircleFn::from_terms(self.terms.iter().map(|(&k, c)| (k, c * s)))
    }
}

impl Derivation for CircleFn {
    fn derive(&self) -> Self {
        self.d_dphi()
    }
}

impl_ring_ops!(CircleFn);

impl fmt::Debug for CircleFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CircleFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(&k, c)| format!("({c})e^{{{k}iφ}}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
