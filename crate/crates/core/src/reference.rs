//! Recomputes the closed forms displayed in the consistency analysis of the projective models
//! and diffs them against first-principles values. Every diff is data: a mismatch never turns
//! into an error.

use serde::Serialize;

use crate::atlas::{build_projective_atlas, candidate_cocycle, SplitModelSpec};
use crate::circle::CircleFn;
use crate::consistency::{component_difference_poly, g_components, prop46_type_analysis, GComponents};
use crate::error::Result;
use crate::grassmann::{ConjugationPolicy, Grassmann};
use crate::jet::{
    euler_lagrange_variation, euler_lagrange_variation_frozen, vanishing_under_constraints, CircleFields, Field, JetPolynomial, JetSymbol, Reality,
    RealityAssignment, VarSymbol, VariationForm,
};
use crate::lagrangian::global_lagrangian_check;
use crate::laurent::LaurentFn;
use crate::ring::Coefficient;
use crate::scalar::{ratio, ComplexScalar as C};

/// Range of `k₁` swept by the family-wide checks; `k₂ = 2 − k₁`.
pub const K1_RANGE: std::ops::RangeInclusive<i64> = -5..=7;

/// Identifiers of the displayed forms whose disagreement with recomputation is already known.
pub const KNOWN_DISCREPANCIES: [&str; 5] =
    ["standard_g", "twisted_g", "g_components", "twisted_model_components", "must_vanish_index"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub status: Status,
    /// Whether a mismatch here is on the known-discrepancy list.
    pub documented: bool,
    /// `computed − displayed`, one line per differing instance.
    pub differences: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckEntry {
    fn new(id: &'static str, description: &'static str, differences: Vec<String>, notes: Vec<String>) -> Self {
        CheckEntry {
            id,
            description,
            status: if differences.is_empty() { Status::Match } else { Status::Mismatch },
            documented: KNOWN_DISCREPANCIES.contains(&id),
            differences,
            notes,
        }
    }

    pub fn matches(&self) -> bool {
        self.status == Status::Match
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReferenceReport {
    pub policy: ConjugationPolicy,
    pub entries: Vec<CheckEntry>,
}

impl ReferenceReport {
    pub fn entry(&self, id: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Mismatches outside the known-discrepancy list.
    pub fn unexpected_mismatches(&self) -> Vec<&'static str> {
        self.entries.iter().filter(|e| !e.matches() && !e.documented).map(|e| e.id).collect()
    }

    /// Known discrepancies that recomputation did not actually reproduce.
    pub fn unreproduced_discrepancies(&self) -> Vec<&'static str> {
        self.entries.iter().filter(|e| e.documented && e.matches()).map(|e| e.id).collect()
    }
}

fn diff<T>(label: String, computed: &T, displayed: &T) -> Option<String>
where
    T: PartialEq + std::fmt::Display,
    for<'a> &'a T: std::ops::Sub<&'a T, Output = T>,
{
    (computed != displayed).then(|| format!("{label}: computed − displayed = {}", computed - displayed))
}

fn cx(re: i64, im: i64) -> C {
    C::from_ints(re, im)
}

fn lambda_pairs() -> Vec<(C, C)> {
    vec![
        (C::i(), C::i()),
        (C::one(), cx(-1, 0)),
        (cx(2, 0), C::real(ratio(-1, 2))),
        (cx(1, 1), C::new(ratio(-1, 2), ratio(1, 2))),
    ]
}

fn maximal_specs() -> Vec<SplitModelSpec> {
    let mut out = Vec::new();
    for (l1, l2) in lambda_pairs() {
        for k1 in K1_RANGE {
            out.push(SplitModelSpec::new(k1, 2 - k1, l1.clone(), l2.clone()));
        }
    }
    out
}

fn label(spec: &SplitModelSpec) -> String {
    format!("(k1,k2)=({},{}) λ=({},{})", spec.k1, spec.k2, spec.lambda1, spec.lambda2)
}

/// `λ_a y^{k_a} − (−1)^{a−1} k_a λ_a y^{k_a−1} η¹²`
pub fn displayed_cocycle(k: i64, lambda: &C, a: usize) -> Grassmann<LaurentFn> {
    let sign = if a == 1 { -1 } else { 1 };
    Grassmann::even_pair(
        LaurentFn::monomial(lambda.clone(), k, 0),
        LaurentFn::monomial(lambda * &C::from(sign * k), k - 1, 0),
    )
}

fn cocycle_entry() -> Result<CheckEntry> {
    let mut differences = Vec::new();
    for spec in maximal_specs() {
        let cocycle = candidate_cocycle(&build_projective_atlas(&spec)?)?;
        let m = &cocycle.entries[&("U".to_string(), "V".to_string())];
        for (a, k, lambda) in [(1, spec.k1, &spec.lambda1), (2, spec.k2, &spec.lambda2)] {
            let computed = &m[a - 1][a - 1];
            differences.extend(diff(format!("{} g{a}", label(&spec)), computed, &displayed_cocycle(k, lambda, a)));
        }
    }
    Ok(CheckEntry::new("cocycle", "diagonal superconformal cocycle of the projective models", differences, vec![]))
}

/// `λ₁λ̄₂ y^{k₁} ȳ^{k₂} (1 + (k₂ȳ⁻¹ − k₁y⁻¹) η¹²)`
pub fn displayed_hermitian_product(spec: &SplitModelSpec) -> Grassmann<LaurentFn> {
    let c = &spec.lambda1 * &spec.lambda2.conj();
    let (k1, k2) = (spec.k1, spec.k2);
    Grassmann::even_pair(
        LaurentFn::monomial(c.clone(), k1, k2),
        &LaurentFn::monomial(&c * &C::from(k2), k1, k2 - 1) - &LaurentFn::monomial(&c * &C::from(k1), k1 - 1, k2),
    )
}

fn hermitian_product_entry(policy: ConjugationPolicy) -> Result<CheckEntry> {
    let mut differences = Vec::new();
    for spec in maximal_specs() {
        let g = global_lagrangian_check(&build_projective_atlas(&spec)?, policy)?.g;
        differences.extend(diff(label(&spec), &g, &displayed_hermitian_product(&spec)));
    }
    Ok(CheckEntry::new("hermitian_product", "G = g₁ · conj(g₂) on the overlap", differences, vec![]))
}

fn circle_g(spec: &SplitModelSpec, policy: ConjugationPolicy) -> Result<Grassmann<CircleFn>> {
    Ok(global_lagrangian_check(&build_projective_atlas(spec)?, policy)?.g.map(|u| u.restrict_to_circle()))
}

fn standard_g_entry(policy: ConjugationPolicy) -> Result<CheckEntry> {
    let spec = SplitModelSpec::with_i(1, 1);
    let displayed = Grassmann::even_pair(CircleFn::one(), CircleFn::sin(1).scale(&cx(0, -2)));
    let computed = circle_g(&spec, policy)?;
    let derived = displayed_hermitian_product(&spec).map(|u| u.restrict_to_circle());
    let mut notes = vec![format!("computed: {computed}")];
    if derived != displayed {
        notes.push(format!("the displayed product formula itself gives {derived}"));
    }
    let differences = diff(label(&spec), &computed, &displayed).into_iter().collect();
    Ok(CheckEntry::new("standard_g", "G on the unit circle for (k1,k2) = (1,1), λ = (i,i)", differences, notes))
}

/// `e^{2i(k₁−1)φ}(1 − 2k₁ cos φ η¹²) − 2e^{i(2k₁−3)φ} η¹²`
pub fn displayed_twisted_g(k1: i64) -> Grassmann<CircleFn> {
    let phase = CircleFn::exp(2 * (k1 - 1), C::one());
    let top = &(&phase * &CircleFn::cos(1).scale(&C::from(-2 * k1))) - &CircleFn::exp(2 * k1 - 3, C::from(2));
    Grassmann::even_pair(phase, top)
}

fn twisted_g_entry(policy: ConjugationPolicy) -> Result<CheckEntry> {
    let mut differences = Vec::new();
    let mut notes = Vec::new();
    for k1 in K1_RANGE {
        let spec = SplitModelSpec::with_i(k1, 2 - k1);
        let computed = circle_g(&spec, policy)?;
        let displayed = displayed_twisted_g(k1);
        differences.extend(diff(format!("k1={k1}"), &computed, &displayed));
        let derived = displayed_hermitian_product(&spec).map(|u| u.restrict_to_circle());
        if derived != displayed && k1 == 2 {
            notes.push(format!("k1=2: the displayed product formula itself gives {derived}"));
        }
    }
    Ok(CheckEntry::new("twisted_g", "G on the unit circle for λ = (i,i), k1 + k2 = 2", differences, notes))
}

/// `R = cos 2k̃φ − 2(k̃ cos φ cos 2k̃φ − sin φ sin 2k̃φ) η¹²` and
/// `I = sin 2k̃φ − 2(k̃ cos φ sin 2k̃φ + sin φ cos 2k̃φ) η¹²`, with `k̃ = k₁ − 1`.
pub fn displayed_components(k1: i64) -> GComponents {
    let kt = k1 - 1;
    let (c2, s2) = (CircleFn::cos(2 * kt), CircleFn::sin(2 * kt));
    let (c, s) = (CircleFn::cos(1), CircleFn::sin(1));
    let m2 = C::from(-2);
    let kt = C::from(kt);
    let r12 = &(&(&c * &c2).scale(&kt) - &(&s * &s2)).scale(&m2);
    let i12 = &(&(&c * &s2).scale(&kt) + &(&s * &c2)).scale(&m2);
    GComponents { r0: c2, r12: r12.clone(), i0: s2, i12: i12.clone() }
}

fn component_diffs(prefix: String, computed: &GComponents, displayed: &GComponents) -> Vec<String> {
    [
        ("R0", &computed.r0, &displayed.r0),
        ("R12", &computed.r12, &displayed.r12),
        ("I0", &computed.i0, &displayed.i0),
        ("I12", &computed.i12, &displayed.i12),
    ]
    .into_iter()
    .filter_map(|(name, a, b)| diff(format!("{prefix} {name}"), a, b))
    .collect()
}

fn g_components_entry(policy: ConjugationPolicy) -> Result<CheckEntry> {
    let mut differences = Vec::new();
    for k1 in K1_RANGE.filter(|&k| k != 1) {
        let computed = g_components(&SplitModelSpec::with_i(k1, 2 - k1), policy)?;
        differences.extend(component_diffs(format!("k1={k1}"), &computed, &displayed_components(k1)));
    }
    Ok(CheckEntry::new(
        "g_components",
        "real and imaginary parts of G for k1 ≠ 1",
        differences,
        vec!["R0 and I0 are compared alongside the η¹² parts".into()],
    ))
}

fn twisted_model_components_entry(policy: ConjugationPolicy) -> Result<CheckEntry> {
    let computed = g_components(&SplitModelSpec::with_i(2, 0), policy)?;
    let displayed = GComponents {
        r0: CircleFn::cos(2),
        r12: CircleFn::cos(3).scale(&C::from(-2)),
        i0: CircleFn::sin(2),
        i12: CircleFn::sin(3).scale(&C::from(-2)),
    };
    let mut notes = Vec::new();
    if displayed_components(2) != displayed {
        notes.push("the general component formula at k1 = 2 does not give the displayed specialization".into());
    }
    Ok(CheckEntry::new(
        "twisted_model_components",
        "real and imaginary parts of G for (k1,k2) = (2,0)",
        component_diffs("(2,0)".into(), &computed, &displayed),
        notes,
    ))
}

fn sym(field: Field, conj: bool, deriv: u8) -> JetPolynomial {
    JetPolynomial::symbol(JetSymbol::new(field, conj, deriv))
}

fn circ(c: CircleFn) -> JetPolynomial {
    JetPolynomial::from_circle(c)
}

fn var(field: Field, conj: bool) -> VarSymbol {
    VarSymbol { field, conj }
}

fn form(terms: Vec<(VarSymbol, JetPolynomial)>) -> VariationForm {
    VariationForm { coeffs: terms.into_iter().filter(|(_, p)| !p.is_zero()).collect() }
}

/// The displayed fermionic first variation of `L_U − R₀L_V` on the `(2,0)` model.
pub fn displayed_twisted_variation() -> VariationForm {
    let (p1, p2) = (Field::Psi1, Field::Psi2);
    let e3 = |c: i64| circ(CircleFn::exp(3, C::from(c)));
    let em3 = |c: i64| circ(CircleFn::exp(-3, C::from(c)));
    let isin2 = circ(CircleFn::sin(2).scale(&C::i()));
    form(vec![
        (var(p1, false), -&(&(&e3(2) * &sym(p2, true, 0)) + &(&isin2 * &sym(p2, true, 1)))),
        (var(p1, true), &(&em3(2) * &sym(p2, false, 0)) - &(&isin2 * &sym(p2, false, 1))),
        (var(p2, false), &(&em3(2) * &sym(p1, true, 0)) + &(&isin2 * &sym(p1, true, 1))),
        (var(p2, true), -&(&(&e3(2) * &sym(p1, false, 0)) - &(&isin2 * &sym(p1, false, 1)))),
    ])
}

/// Displayed `(Re,Re)` specialization: `−4 sinh(3iφ)ψ₂ δψ₁ − (4 sinh(3iφ)ψ₁ − 2i sin 2φ ψ₁′) δψ₂`.
pub fn displayed_real_real() -> VariationForm {
    let sinh3 = circ(CircleFn::sin(3).scale(&C::i()));
    let isin2 = circ(CircleFn::sin(2).scale(&C::i()));
    let m4 = C::from(-4);
    form(vec![
        (var(Field::Psi1, false), (&sinh3 * &sym(Field::Psi2, false, 0)).scale(&m4)),
        (
            var(Field::Psi2, false),
            &(&sinh3 * &sym(Field::Psi1, false, 0)).scale(&m4) + &(&isin2 * &sym(Field::Psi1, false, 1)).scale(&C::from(2)),
        ),
    ])
}

/// Displayed `(Im,Re)` specialization: `−4 cosh(3iφ)ψ₂ δψ₁ − (4 cosh(3iφ)ψ₁ + 2i sin 2φ ψ₁′) δψ₂`.
pub fn displayed_imag_real() -> VariationForm {
    let cosh3 = circ(CircleFn::cos(3));
    let isin2 = circ(CircleFn::sin(2).scale(&C::i()));
    let m4 = C::from(-4);
    form(vec![
        (var(Field::Psi1, false), (&cosh3 * &sym(Field::Psi2, false, 0)).scale(&m4)),
        (
            var(Field::Psi2, false),
            &(&cosh3 * &sym(Field::Psi1, false, 0)).scale(&m4) - &(&isin2 * &sym(Field::Psi1, false, 1)).scale(&C::from(2)),
        ),
    ])
}

fn form_diffs(prefix: &str, computed: &VariationForm, displayed: &VariationForm) -> Vec<String> {
    let mut keys: Vec<VarSymbol> = computed.coeffs.keys().chain(displayed.coeffs.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|v| diff(format!("{prefix} coefficient of {v}"), &computed.coeff(v), &displayed.coeff(v)))
        .collect()
}

fn fermionic_part(v: &VariationForm) -> VariationForm {
    form(v.coeffs.iter().filter(|(k, _)| matches!(k.field, Field::Psi1 | Field::Psi2)).map(|(k, p)| (*k, p.clone())).collect())
}

/// Drops every monomial that contains a derivative of a field.
pub fn underived_part(v: &VariationForm) -> VariationForm {
    let keep = |p: &JetPolynomial| {
        let mut out = JetPolynomial::default();
        for (m, c) in p.terms() {
            if m.keys().all(|s| s.deriv == 0) {
                let mono = m.iter().fold(circ(c.clone()), |acc, (s, e)| {
                    (0..*e).fold(acc, |a, _| &a * &JetPolynomial::symbol(*s))
                });
                out = &out + &mono;
            }
        }
        out
    };
    form(v.coeffs.iter().map(|(k, p)| (*k, keep(p))).collect())
}

/// Bosons constrained real, so the necessary conditions hold and their terms drop out.
fn bosons_real() -> RealityAssignment {
    RealityAssignment::default().with(Field::Phi, Reality::Real).with(Field::F, Reality::Real)
}

fn computed_twisted_variation(policy: ConjugationPolicy) -> Result<VariationForm> {
    let g = g_components(&SplitModelSpec::with_i(2, 0), policy)?;
    let p = component_difference_poly(&g, policy);
    let v = euler_lagrange_variation(&p)?;
    Ok(fermionic_part(&vanishing_under_constraints(&v, &bosons_real()).residual))
}

/// Fermionic part of `R₁₂ ε*ℓ + i I₁₂ ε*m + i I₀ M` assembled from the displayed `(2,0)` components
/// and the displayed (unhalved) density bodies.
pub fn displayed_twisted_difference() -> JetPolynomial {
    let (p1, p2) = (Field::Psi1, Field::Psi2);
    let a = &sym(p1, false, 0) * &sym(p2, true, 0);
    let b = &sym(p1, true, 0) * &sym(p2, false, 0);
    let top = &(&(&sym(p2, true, 0) * &sym(p1, false, 1)) - &(&sym(p1, true, 0) * &sym(p2, false, 1)))
        + &(&(&sym(p2, false, 0) * &sym(p1, true, 1)) - &(&sym(p1, false, 0) * &sym(p2, true, 1)));
    let r12 = circ(CircleFn::cos(3).scale(&C::from(-2)));
    let i_i12 = circ(CircleFn::sin(3).scale(&cx(0, -2)));
    let i_i0 = circ(CircleFn::sin(2).scale(&C::new(ratio(0, 1), ratio(1, 2))));
    &(&(&r12 * &(&a - &b)) + &(&i_i12 * &(&a + &b))) + &(&i_i0 * &top)
}

fn twisted_variation_entry(policy: ConjugationPolicy) -> Result<CheckEntry> {
    let computed = computed_twisted_variation(policy)?;
    let displayed = displayed_twisted_variation();
    let mut notes = vec![];
    let ingredients = displayed_twisted_difference();
    if euler_lagrange_variation_frozen(&ingredients)? == displayed {
        notes.push("the displayed form is the frozen-coefficient variation of the displayed ingredients".into());
    }
    let exact = euler_lagrange_variation(&ingredients)?;
    notes.extend(form_diffs("exact variation of the displayed ingredients", &exact, &displayed));
    if computed == displayed.scale(&C::from(-1)) {
        notes.push("computed equals the displayed form up to a global sign".into());
    }
    if underived_part(&computed) == underived_part(&displayed) {
        notes.push("underived terms agree".into());
    } else if underived_part(&computed) == underived_part(&displayed).scale(&C::from(-1)) {
        notes.push("underived terms agree up to a global sign".into());
    }
    Ok(CheckEntry::new(
        "twisted_variation",
        "fermionic first variation of L_U − R0·L_V on (2,0) under the boson conditions",
        form_diffs("(2,0)", &computed, &displayed),
        notes,
    ))
}

fn typed(t1: Reality, t2: Reality) -> RealityAssignment {
    bosons_real().with(Field::Psi1, t1).with(Field::Psi2, t2)
}

/// Specializes the displayed variation under a type assignment and compares with the displayed
/// specialization; notes how the first-principles variation specializes.
fn specialization_entry(
    id: &'static str,
    description: &'static str,
    types: (Reality, Reality),
    displayed: VariationForm,
    policy: ConjugationPolicy,
) -> Result<CheckEntry> {
    let r = typed(types.0, types.1);
    let step = vanishing_under_constraints(&displayed_twisted_variation(), &r).residual;
    let mut notes = Vec::new();
    if underived_part(&step) == underived_part(&displayed) {
        notes.push("underived coefficients follow from the displayed variation".into());
    }
    let ours = vanishing_under_constraints(&computed_twisted_variation(policy)?, &r).residual;
    for line in form_diffs("first principles", &ours, &displayed) {
        notes.push(line);
    }
    Ok(CheckEntry::new(id, description, form_diffs("specialized display", &step, &displayed), notes))
}

fn must_vanish_entry(policy: ConjugationPolicy) -> Result<CheckEntry> {
    let mut differences = Vec::new();
    let cases = [
        ("(Re,Re)", CircleFn::cos(1), CircleFn::cos(2), Field::Psi1),
        ("(Im,Re)", CircleFn::sin(1).scale(&C::i()), CircleFn::cos(2), Field::Psi1),
        ("(Re,Im)", CircleFn::cos(1), CircleFn::sin(2).scale(&C::i()), Field::Psi2),
        ("(Im,Im)", CircleFn::sin(1).scale(&C::i()), CircleFn::sin(2).scale(&C::i()), Field::Psi2),
    ];
    for (name, psi1, psi2, displayed) in cases {
        let field = CircleFields::new(CircleFn::cos(1), psi1, psi2, CircleFn::cos(1));
        let a = prop46_type_analysis(&field, policy)?;
        let computed = a.must_vanish;
        if computed != Some(displayed) {
            differences.push(format!(
                "{name}: computed forces {}, displayed forces {}",
                computed.map_or("nothing", |f| f.name()),
                displayed.name()
            ));
        }
    }
    Ok(CheckEntry::new("must_vanish_index", "which fermion a typed field must lose", differences, vec![]))
}

/// Every reference check under one conjugation policy, in a fixed order.
pub fn reference_check(policy: ConjugationPolicy) -> Result<ReferenceReport> {
    let entries = vec![
        cocycle_entry()?,
        hermitian_product_entry(policy)?,
        standard_g_entry(policy)?,
        twisted_g_entry(policy)?,
        g_components_entry(policy)?,
        twisted_model_components_entry(policy)?,
        twisted_variation_entry(policy)?,
        specialization_entry(
            "real_real_specialization",
            "(Re,Re) specialization of the (2,0) variation",
            (Reality::Real, Reality::Real),
            displayed_real_real(),
            policy,
        )?,
        specialization_entry(
            "imag_real_specialization",
            "(Im,Re) specialization of the (2,0) variation",
            (Reality::Imaginary, Reality::Real),
            displayed_imag_real(),
            policy,
        )?,
        must_vanish_entry(policy)?,
    ];
    Ok(ReferenceReport { policy, entries })
}
