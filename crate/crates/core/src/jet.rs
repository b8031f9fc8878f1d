//! Polynomials in field jets with circle-function coefficients, and their first variations.
//!
//! A field `f` and its conjugate `f̄` are independent jet variables; reality constraints are
//! imposed afterwards through a [`RealityAssignment`].

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::CircleFn;
use crate::error::{Error, Result};
use crate::grassmann::Grassmann;
use crate::lagrangian::ChartFields;
use crate::ring::{impl_ring_ops, Coefficient, Derivation};
use crate::scalar::ComplexScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "phi")]
    Phi,
    #[serde(rename = "psi1")]
    Psi1,
    #[serde(rename = "psi2")]
    Psi2,
    #[serde(rename = "F")]
    F,
}

impl Field {
    pub const ALL: [Field; 4] = [Field::Phi, Field::Psi1, Field::Psi2, Field::F];

    pub fn name(&self) -> &'static str {
        match self {
            Field::Phi => "phi",
            Field::Psi1 => "psi1",
            Field::Psi2 => "psi2",
            Field::F => "F",
        }
    }
}

/// `f^{(deriv)}` or its conjugate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JetSymbol {
    pub field: Field,
    pub conj: bool,
    pub deriv: u8,
}

impl JetSymbol {
    pub fn new(field: Field, conj: bool, deriv: u8) -> Self {
        JetSymbol { field, conj, deriv }
    }

    fn raised(self) -> Self {
        JetSymbol { deriv: self.deriv + 1, ..self }
    }

    fn conjugated(self) -> Self {
        JetSymbol { conj: !self.conj, ..self }
    }
}

impl fmt::Display for JetSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.name())?;
        if self.conj {
            write!(f, "bar")?;
        }
        for _ in 0..self.deriv {
            write!(f, "'")?;
        }
        Ok(())
    }
}

type Monomial = BTreeMap<JetSymbol, u32>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct JetPolynomial {
    terms: BTreeMap<Monomial, CircleFn>,
}

/// Concrete circle-restricted components, with `′ = d/dφ`.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct CircleFields {
    #[serde(default)]
    pub phi: CircleFn,
    #[serde(default)]
    pub psi1: CircleFn,
    #[serde(default)]
    pub psi2: CircleFn,
    #[serde(default, rename = "F")]
    pub f: CircleFn,
}

impl CircleFields {
    pub fn new(phi: CircleFn, psi1: CircleFn, psi2: CircleFn, f: CircleFn) -> Self {
        CircleFields { phi, psi1, psi2, f }
    }

    pub fn from_chart(c: &ChartFields) -> Self {
        CircleFields::new(
            c.phi.restrict_to_circle(),
            c.psi1.restrict_to_circle(),
            c.psi2.restrict_to_circle(),
            c.f.restrict_to_circle(),
        )
    }

    pub fn get(&self, field: Field) -> &CircleFn {
        match field {
            Field::Phi => &self.phi,
            Field::Psi1 => &self.psi1,
            Field::Psi2 => &self.psi2,
            Field::F => &self.f,
        }
    }

    pub fn get_mut(&mut self, field: Field) -> &mut CircleFn {
        match field {
            Field::Phi => &mut self.phi,
            Field::Psi1 => &mut self.psi1,
            Field::Psi2 => &mut self.psi2,
            Field::F => &mut self.f,
        }
    }

    pub fn jet(&self, s: JetSymbol) -> CircleFn {
        let mut u = self.get(s.field).clone();
        if s.conj {
            u = u.conj();
        }
        for _ in 0..s.deriv {
            u = u.d_dphi();
        }
        u
    }
}

impl JetPolynomial {
    pub fn symbol(s: JetSymbol) -> Self {
        let mut m = Monomial::new();
        m.insert(s, 1);
        JetPolynomial { terms: BTreeMap::from([(m, CircleFn::one())]) }
    }

    /// `f` (or `f̄`), undifferentiated.
    pub fn field(field: Field, conj: bool) -> Self {
        JetPolynomial::symbol(JetSymbol::new(field, conj, 0))
    }

    pub fn from_circle(c: CircleFn) -> Self {
        let mut out = JetPolynomial::default();
        out.add_term(Monomial::new(), &c);
        out
    }

    fn add_term(&mut self, m: Monomial, c: &CircleFn) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BTreeMap<JetSymbol, u32>, &CircleFn)> {
        self.terms.iter()
    }

    /// Highest derivative order appearing in any symbol.
    pub fn order(&self) -> u8 {
        self.terms.keys().flat_map(|m| m.keys().map(|s| s.deriv)).max().unwrap_or(0)
    }

    /// `∂P/∂s`, treating every jet symbol as independent.
    pub fn partial(&self, s: JetSymbol) -> Self {
        let mut out = JetPolynomial::default();
        for (m, c) in &self.terms {
            if let Some(&e) = m.get(&s) {
                let mut m2 = m.clone();
                if e == 1 {
                    m2.remove(&s);
                } else {
                    m2.insert(s, e - 1);
                }
                out.add_term(m2, &c.scale(&ComplexScalar::from(e as i64)));
            }
        }
        out
    }

    /// `d/dφ` through the chain rule; `with_coefficients = false` treats the circle-function
    /// coefficients as constants.
    pub fn total_derivative(&self, with_coefficients: bool) -> Self {
        let mut out = JetPolynomial::default();
        for (m, c) in &self.terms {
            if with_coefficients {
                out.add_term(m.clone(), &c.d_dphi());
            }
            for (&s, &e) in m {
                let mut m2 = m.clone();
                if e == 1 {
                    m2.remove(&s);
                } else {
                    m2.insert(s, e - 1);
                }
                *m2.entry(s.raised()).or_insert(0) += 1;
                out.add_term(m2, &c.scale(&ComplexScalar::from(e as i64)));
            }
        }
        out
    }

    /// Replaces each symbol by `Some((k, s'))`, meaning `k·s'`, or by zero.
    pub fn map_symbols<F: Fn(JetSymbol) -> Option<(ComplexScalar, JetSymbol)>>(&self, f: F) -> Self {
        let mut out = JetPolynomial::default();
        'terms: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut m2 = Monomial::new();
            for (&s, &e) in m {
                match f(s) {
                    None => continue 'terms,
                    Some((k, s2)) => {
                        coeff = coeff.scale(&k.powi(e as i64).unwrap_or_else(ComplexScalar::zero));
                        *m2.entry(s2).or_insert(0) += e;
                    }
                }
            }
            out.add_term(m2, &coeff);
        }
        out
    }

    pub fn evaluate(&self, fields: &CircleFields) -> CircleFn {
        let mut cache: BTreeMap<JetSymbol, CircleFn> = BTreeMap::new();
        let mut acc = CircleFn::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (&s, &e) in m {
                let v = cache.entry(s).or_insert_with(|| fields.jet(s)).clone();
                for _ in 0..e {
                    term = &term * &v;
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Floating-point value at one angle, with jets supplied by `jet`.
    pub fn eval_numeric<F: Fn(JetSymbol) -> Complex64>(&self, phi: f64, jet: F) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| m.iter().fold(c.eval(phi), |acc, (&s, &e)| acc * jet(s).powu(e)))
            .sum()
    }
}

impl Coefficient for JetPolynomial {
    fn zero() -> Self {
        JetPolynomial::default()
    }
    fn one() -> Self {
        JetPolynomial::from_circle(CircleFn::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
    fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = JetPolynomial::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let mut m = ma.clone();
                for (&s, &e) in mb {
                    *m.entry(s).or_insert(0) += e;
                }
                out.add_term(m, &(ca * cb));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        JetPolynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    fn conj(&self) -> Self {
        let mut out = JetPolynomial::default();
        for (m, c) in &self.terms {
            let m2 = m.iter().map(|(&s, &e)| (s.conjugated(), e)).collect();
            out.add_term(m2, &c.conj());
        }
        out
    }
    fn scale(&self, k: &ComplexScalar) -> Self {
        let mut out = JetPolynomial::default();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &c.scale(k));
        }
        out
    }
}

impl Derivation for JetPolynomial {
    fn derive(&self) -> Self {
        self.total_derivative(true)
    }
}

impl_ring_ops!(JetPolynomial);

impl fmt::Debug for JetPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for JetPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = format!("[{c}]");
                for (sym, e) in m {
                    s.push_str(&format!("·{sym}"));
                    if *e > 1 {
                        s.push_str(&format!("^{e}"));
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The generic superfield `φ + ψ₁η¹ + ψ₂η² + F η¹η²` over jet variables.
pub fn symbolic_superfield() -> Grassmann<JetPolynomial> {
    Grassmann::new(
        JetPolynomial::field(Field::Phi, false),
        JetPolynomial::field(Field::Psi1, false),
        JetPolynomial::field(Field::Psi2, false),
        JetPolynomial::field(Field::F, false),
    )
}

/// Variation `δf` (or `δf̄`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarSymbol {
    pub field: Field,
    pub conj: bool,
}

impl fmt::Display for VarSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "δ{}{}", self.field.name(), if self.conj { "bar" } else { "" })
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct VariationForm {
    pub coeffs: BTreeMap<VarSymbol, JetPolynomial>,
}

impl VariationForm {
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(JetPolynomial::is_zero)
    }

    pub fn scale(&self, k: &ComplexScalar) -> Self {
        let coeffs = self.coeffs.iter().map(|(v, p)| (*v, p.scale(k))).filter(|(_, p)| !p.is_zero()).collect();
        VariationForm { coeffs }
    }

    pub fn coeff(&self, v: VarSymbol) -> JetPolynomial {
        self.coeffs.get(&v).cloned().unwrap_or_default()
    }

    fn add(&mut self, v: VarSymbol, p: &JetPolynomial) {
        let slot = self.coeffs.entry(v).or_default();
        *slot = &*slot + p;
        if slot.is_zero() {
            self.coeffs.remove(&v);
        }
    }

    pub fn evaluate(&self, fields: &CircleFields) -> EvaluatedVariation {
        EvaluatedVariation {
            coeffs: self
                .coeffs
                .iter()
                .map(|(v, p)| (*v, p.evaluate(fields)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Human-readable term list, one entry per variation.
    pub fn describe(&self) -> Vec<String> {
        self.coeffs.iter().map(|(v, p)| format!("({p})·{v}")).collect()
    }
}

/// A variation form evaluated along a concrete field.
#[derive(Clone, Debug, PartialEq, Default, Serialize)]
pub struct EvaluatedVariation {
    #[serde(serialize_with = "serialize_var_map")]
    pub coeffs: BTreeMap<VarSymbol, CircleFn>,
}

fn serialize_var_map<S: serde::Serializer>(
    m: &BTreeMap<VarSymbol, CircleFn>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(&k.to_string(), v)?;
    }
    map.end()
}

impl EvaluatedVariation {
    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(CircleFn::is_zero)
    }

    /// `(1/2π) Σ_v ∫₀^{2π} c_v(φ) h_v(φ) dφ` where `h_{δf} = h_f` and `h_{δf̄} = conj(h_f)`.
    pub fn mean_pairing(&self, h: &CircleFields) -> ComplexScalar {
        self.coeffs.iter().fold(ComplexScalar::zero(), |acc, (v, c)| {
            let hv = h.get(v.field);
            let hv = if v.conj { hv.conj() } else { hv.clone() };
            &acc + &(c * &hv).mean()
        })
    }
}

/// `δP/δs = ∂P/∂s − D(∂P/∂s′)` for every field and conjugate; `D` differentiates the
/// coefficients too unless `frozen` is set.
fn variation(p: &JetPolynomial, frozen: bool) -> Result<VariationForm> {
    if p.order() > 1 {
        return Err(Error::HigherOrderJet(format!("order {} in {p}", p.order())));
    }
    let mut out = VariationForm::default();
    for field in Field::ALL {
        for conj in [false, true] {
            let s0 = JetSymbol::new(field, conj, 0);
            let s1 = JetSymbol::new(field, conj, 1);
            let c = &p.partial(s0) - &p.partial(s1).total_derivative(!frozen);
            out.add(VarSymbol { field, conj }, &c);
        }
    }
    Ok(out)
}

pub fn euler_lagrange_variation(p: &JetPolynomial) -> Result<VariationForm> {
    variation(p, false)
}

/// Variation that integrates by parts as if the circle-function coefficients were constant.
pub fn euler_lagrange_variation_frozen(p: &JetPolynomial) -> Result<VariationForm> {
    variation(p, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reality {
    Real,
    Imaginary,
    Zero,
    Free,
}

impl Reality {
    pub fn of(u: &CircleFn) -> Reality {
        if u.is_zero() {
            Reality::Zero
        } else if u.is_real() {
            Reality::Real
        } else if u.is_imaginary() {
            Reality::Imaginary
        } else {
            Reality::Free
        }
    }

    /// Zero is compatible with either type.
    pub fn same_type(self, other: Reality) -> bool {
        self == Reality::Zero || other == Reality::Zero || (self == other && self != Reality::Free)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RealityAssignment {
    pub types: BTreeMap<Field, Reality>,
}

impl RealityAssignment {
    pub fn get(&self, f: Field) -> Reality {
        self.types.get(&f).copied().unwrap_or(Reality::Free)
    }

    pub fn with(mut self, f: Field, r: Reality) -> Self {
        self.types.insert(f, r);
        self
    }

    pub fn of_fields(fields: &CircleFields) -> Self {
        RealityAssignment { types: Field::ALL.iter().map(|&f| (f, Reality::of(fields.get(f)))).collect() }
    }

    fn image(&self, s: JetSymbol) -> Option<(ComplexScalar, JetSymbol)> {
        match (self.get(s.field), s.conj) {
            (Reality::Zero, _) => None,
            (Reality::Real, true) => Some((ComplexScalar::one(), s.conjugated())),
            (Reality::Imaginary, true) => Some((-ComplexScalar::one(), s.conjugated())),
            _ => Some((ComplexScalar::one(), s)),
        }
    }

    pub fn constrain(&self, p: &JetPolynomial) -> JetPolynomial {
        p.map_symbols(|s| self.image(s))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstrainedVariation {
    pub vanishes: bool,
    pub residual: VariationForm,
}

/// Identifies `f̄` with `±f` (and `δf̄` with `±δf`) per the assignment and collects terms.
pub fn vanishing_under_constraints(v: &VariationForm, r: &RealityAssignment) -> ConstrainedVariation {
    let mut residual = VariationForm::default();
    for (var, p) in &v.coeffs {
        let p = r.constrain(p);
        match r.image(JetSymbol::new(var.field, var.conj, 0)) {
            None => {}
            Some((k, s)) => residual.add(VarSymbol { field: s.field, conj: s.conj }, &p.scale(&k)),
        }
    }
    ConstrainedVariation { vanishes: residual.is_zero(), residual }
}
