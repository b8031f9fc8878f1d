//! Rank-2 exterior algebra `R ⊕ R η¹ ⊕ R η² ⊕ R η¹∧η²` over a commutative coefficient ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::ring::{Coefficient, Derivation};

/// How complex conjugation acts on the top form `η¹∧η²`.
///
/// `Fix` is an antilinear ring map with `conj(η¹²) = η¹²`; `Negate` reverses products and
/// sends `η¹²` to `−η¹²`. Both fix the generators `η¹`, `η²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConjugationPolicy {
    #[default]
    Fix,
    Negate,
}

impl ConjugationPolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConjugationPolicy::Fix => "fix",
            ConjugationPolicy::Negate => "negate",
        }
    }
}

impl FromStr for ConjugationPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "fix" => Ok(ConjugationPolicy::Fix),
            "negate" => Ok(ConjugationPolicy::Negate),
            other => Err(Error::Parse(format!("unknown conjugation policy {other:?}"))),
        }
    }
}

impl fmt::Display for ConjugationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Grassmann<R> {
    pub c0: R,
    pub c1: R,
    pub c2: R,
    pub c12: R,
}

impl<R: Coefficient> Grassmann<R> {
    pub fn new(c0: R, c1: R, c2: R, c12: R) -> Self {
        Grassmann { c0, c1, c2, c12 }
    }

    pub fn zero() -> Self {
        Grassmann::new(R::zero(), R::zero(), R::zero(), R::zero())
    }

    pub fn one() -> Self {
        Grassmann::even(R::one())
    }

    /// `c0` with no odd part.
    pub fn even(c0: R) -> Self {
        Grassmann::new(c0, R::zero(), R::zero(), R::zero())
    }

    /// `c0 + c12 η¹²`
    pub fn even_pair(c0: R, c12: R) -> Self {
        Grassmann::new(c0, R::zero(), R::zero(), c12)
    }

    pub fn eta1() -> Self {
        Grassmann::new(R::zero(), R::one(), R::zero(), R::zero())
    }

    pub fn eta2() -> Self {
        Grassmann::new(R::zero(), R::zero(), R::one(), R::zero())
    }

    pub fn eta12() -> Self {
        Grassmann::new(R::zero(), R::zero(), R::zero(), R::one())
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero() && self.c12.is_zero()
    }

    /// Body map: drop every nilpotent term.
    pub fn body(&self) -> &R {
        &self.c0
    }

    /// Berezin integral: the `η¹∧η²` coefficient.
    pub fn top(&self) -> &R {
        &self.c12
    }

    pub fn is_even(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero()
    }

    pub fn product(&self, o: &Self) -> Self {
        Grassmann {
            c0: self.c0.mul(&o.c0),
            c1: self.c0.mul(&o.c1).add(&self.c1.mul(&o.c0)),
            c2: self.c0.mul(&o.c2).add(&self.c2.mul(&o.c0)),
            c12: self
                .c0
                .mul(&o.c12)
                .add(&self.c12.mul(&o.c0))
                .add(&self.c1.mul(&o.c2))
                .sub(&self.c2.mul(&o.c1)),
        }
    }

    pub fn sum(&self, o: &Self) -> Self {
        self.zip(o, R::add)
    }

    pub fn difference(&self, o: &Self) -> Self {
        self.zip(o, R::sub)
    }

    pub fn negated(&self) -> Self {
        self.map(R::neg)
    }

    /// Multiply every coefficient by a ring element.
    pub fn scale(&self, r: &R) -> Self {
        self.map(|c| c.mul(r))
    }

    pub fn conj(&self, policy: ConjugationPolicy) -> Self {
        let top = self.c12.conj();
        Grassmann {
            c0: self.c0.conj(),
            c1: self.c1.conj(),
            c2: self.c2.conj(),
            c12: match policy {
                ConjugationPolicy::Fix => top,
                ConjugationPolicy::Negate => top.neg(),
            },
        }
    }

    /// `⟨a, b⟩ = a · conj(b)`
    pub fn hermitian_pair(&self, b: &Self, policy: ConjugationPolicy) -> Self {
        self.product(&b.conj(policy))
    }

    /// Left derivative `∂/∂η¹`.
    pub fn d_eta1(&self) -> Self {
        Grassmann::new(self.c1.clone(), R::zero(), self.c12.clone(), R::zero())
    }

    /// Left derivative `∂/∂η²`.
    pub fn d_eta2(&self) -> Self {
        Grassmann::new(self.c2.clone(), self.c12.neg(), R::zero(), R::zero())
    }

    pub fn map<S, F: Fn(&R) -> S>(&self, f: F) -> Grassmann<S> {
        Grassmann { c0: f(&self.c0), c1: f(&self.c1), c2: f(&self.c2), c12: f(&self.c12) }
    }

    fn zip<F: Fn(&R, &R) -> R>(&self, o: &Self, f: F) -> Self {
        Grassmann {
            c0: f(&self.c0, &o.c0),
            c1: f(&self.c1, &o.c1),
            c2: f(&self.c2, &o.c2),
            c12: f(&self.c12, &o.c12),
        }
    }
}

impl<R: Derivation> Grassmann<R> {
    /// Coefficient-wise `′` (the even coordinate derivative `∂/∂Y`).
    pub fn d_even(&self) -> Self {
        self.map(R::derive)
    }

    /// The superconformal vector field `D_a = ∂/∂η^a − η^b ∂/∂Y` (`b ≠ a`).
    pub fn superconformal_d(&self, a: usize) -> Self {
        let dy = self.d_even();
        match a {
            1 => self.d_eta1().difference(&Grassmann::eta2().product(&dy)),
            2 => self.d_eta2().difference(&Grassmann::eta1().product(&dy)),
            _ => panic!("odd index must be 1 or 2, got {a}"),
        }
    }
}

impl<R: Coefficient> Default for Grassmann<R> {
    fn default() -> Self {
        Grassmann::zero()
    }
}

impl<R: Coefficient> Mul for &Grassmann<R> {
    type Output = Grassmann<R>;
    fn mul(self, o: &Grassmann<R>) -> Grassmann<R> {
        self.product(o)
    }
}

impl<R: Coefficient> Add for &Grassmann<R> {
    type Output = Grassmann<R>;
    fn add(self, o: &Grassmann<R>) -> Grassmann<R> {
        self.sum(o)
    }
}

impl<R: Coefficient> Sub for &Grassmann<R> {
    type Output = Grassmann<R>;
    fn sub(self, o: &Grassmann<R>) -> Grassmann<R> {
        self.difference(o)
    }
}

impl<R: Coefficient> Neg for &Grassmann<R> {
    type Output = Grassmann<R>;
    fn neg(self) -> Grassmann<R> {
        self.negated()
    }
}

impl<R: fmt::Display> fmt::Display for Grassmann<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] + [{}]η1 + [{}]η2 + [{}]η12", self.c0, self.c1, self.c2, self.c12)
    }
}
