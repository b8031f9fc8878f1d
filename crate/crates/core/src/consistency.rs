//! Real/imaginary decomposition of the G-cocycle on the unit circle, the component-Lagrangian
//! difference across the overlap, and the consistency classifiers built on it.

use num_traits::Zero;
use serde::Serialize;

use crate::atlas::{build_projective_atlas, classify_maximal, SplitModelSpec};
use crate::circle::CircleFn;
use crate::error::{Error, Result};
use crate::grassmann::{ConjugationPolicy, Grassmann};
use crate::jet::{
    euler_lagrange_variation, symbolic_superfield, vanishing_under_constraints, CircleFields, EvaluatedVariation,
    Field, JetPolynomial, Reality, RealityAssignment, VariationForm,
};
use crate::lagrangian::{auxiliary_density, global_lagrangian_check, superparticle_density};
use crate::ring::Coefficient;
use crate::scalar::{ratio, ComplexScalar, Rational};

/// `G = (R₀ + R₁₂η¹²) + i(I₀ + I₁₂η¹²)` on `|y| = 1`, where `R = (G + conj G)/2` and
/// `I = (G − conj G)/2i` use the chosen conjugation policy.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GComponents {
    pub r0: CircleFn,
    pub r12: CircleFn,
    pub i0: CircleFn,
    pub i12: CircleFn,
}

impl GComponents {
    pub fn from_circle(g: &Grassmann<CircleFn>, policy: ConjugationPolicy) -> Self {
        let gc = g.conj(policy);
        let half = ComplexScalar::real(ratio(1, 2));
        let minus_half_i = ComplexScalar::new(ratio(0, 1), ratio(-1, 2));
        let re = (g + &gc).map(|u| u.scale(&half));
        let im = (g - &gc).map(|u| u.scale(&minus_half_i));
        GComponents { r0: re.c0, r12: re.c12, i0: im.c0, i12: im.c12 }
    }

    pub fn imaginary_vanishes(&self) -> bool {
        self.i0.is_zero() && self.i12.is_zero()
    }
}

fn require_maximal(spec: &SplitModelSpec) -> Result<()> {
    let report = classify_maximal(spec);
    if report.maximal {
        Ok(())
    } else {
        Err(Error::NotMaximal(report.reasons.join("; ")))
    }
}

/// `G_UV = g₁ · conj(g₂)` restricted to the unit circle.
pub fn g_cocycle_on_circle(spec: &SplitModelSpec, policy: ConjugationPolicy) -> Result<Grassmann<CircleFn>> {
    require_maximal(spec)?;
    let atlas = build_projective_atlas(spec)?;
    let g = global_lagrangian_check(&atlas, policy)?.g;
    Ok(g.map(|u| u.restrict_to_circle()))
}

pub fn g_components(spec: &SplitModelSpec, policy: ConjugationPolicy) -> Result<GComponents> {
    Ok(GComponents::from_circle(&g_cocycle_on_circle(spec, policy)?, policy))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    /// `"I0"` or `"I12"`.
    pub component: &'static str,
    /// The angle `π·p/q` as `(p, q)`.
    pub angle: (i64, i64),
    pub value: ComplexScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonexistenceReport {
    pub imaginary_vanishes: bool,
    pub witness: Option<Witness>,
}

/// Angles `π·p/q` tried in order when looking for an exact witness.
fn candidate_angles() -> Vec<(i64, i64)> {
    let mut out = vec![(1, 2), (1, 4), (3, 4), (0, 1), (1, 1)];
    for q in [2, 4, 8, 16] {
        for p in 1..2 * q {
            if num_integer::gcd(p, q) == 1 && !out.contains(&(p, q)) {
                out.push((p, q));
            }
        }
    }
    out
}

/// Exhibits an angle where the imaginary part of `G` is exactly nonzero.
pub fn nonexistence_check(spec: &SplitModelSpec, policy: ConjugationPolicy) -> Result<NonexistenceReport> {
    let g = g_components(spec, policy)?;
    let mut witness = None;
    'search: for (name, u) in [("I0", &g.i0), ("I12", &g.i12)] {
        if u.is_zero() {
            continue;
        }
        for (p, q) in candidate_angles() {
            if let Some(v) = u.eval_at_pi_fraction(p, q) {
                if !v.is_zero() {
                    witness = Some(Witness { component: name, angle: (p, q), value: v });
                    break 'search;
                }
            }
        }
    }
    Ok(NonexistenceReport { imaginary_vanishes: g.imaginary_vanishes(), witness })
}

/// Bodies and tops of the two densities over jet variables, `′ = d/dφ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicDensities {
    pub l_body: JetPolynomial,
    pub l_top: JetPolynomial,
    pub m_body: JetPolynomial,
    pub m_top: JetPolynomial,
}

pub fn symbolic_densities(policy: ConjugationPolicy) -> SymbolicDensities {
    let phi = symbolic_superfield();
    let l = superparticle_density(&phi, policy);
    let m = auxiliary_density(&phi, policy);
    SymbolicDensities { l_body: l.c0, l_top: l.c12, m_body: m.c0, m_top: m.c12 }
}

/// `R₁₂·ε*ℓ + i I₁₂·ε*m + i I₀·top(m)`, the coefficient of `dy` in `L_U − R₀ L_V`.
pub fn component_difference_poly(g: &GComponents, policy: ConjugationPolicy) -> JetPolynomial {
    let d = symbolic_densities(policy);
    let c = |u: &CircleFn| JetPolynomial::from_circle(u.clone());
    let i = |u: &CircleFn| JetPolynomial::from_circle(u.scale(&ComplexScalar::i()));
    &(&(&c(&g.r12) * &d.l_body) + &(&i(&g.i12) * &d.m_body)) + &(&i(&g.i0) * &d.m_top)
}

/// The difference for a spec. `good_residual` is the field's good-field residual norm (see
/// [`crate::lagrangian::residual_norm`]); a nonzero value is rejected unless `force` is set.
pub fn component_difference(
    spec: &SplitModelSpec,
    policy: ConjugationPolicy,
    good_residual: &Rational,
    force: bool,
) -> Result<JetPolynomial> {
    if !good_residual.is_zero() && !force {
        return Err(Error::NotGood { max_residual: good_residual.to_string() });
    }
    Ok(component_difference_poly(&g_components(spec, policy)?, policy))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub necessary_ok: bool,
    #[serde(skip)]
    pub symbolic_residual: VariationForm,
    pub residual: EvaluatedVariation,
}

impl ConsistencyReport {
    pub fn residual_terms(&self) -> Vec<String> {
        self.symbolic_residual.describe()
    }
}

/// `φ′` and `F` must share a reality type whenever `I₀ ≢ 0`.
pub fn necessary_conditions(g: &GComponents, field: &CircleFields) -> bool {
    if g.i0.is_zero() {
        return true;
    }
    let a = Reality::of(&field.phi.d_dphi());
    let b = Reality::of(&field.f);
    a.same_type(b)
}

/// First variation of the overlap difference, constrained by the field's own reality types and
/// evaluated along it.
pub fn consistency_classify(
    spec: &SplitModelSpec,
    field: &CircleFields,
    policy: ConjugationPolicy,
) -> Result<ConsistencyReport> {
    let g = g_components(spec, policy)?;
    classify_any_completion(&g, field, policy, &RealityAssignment::of_fields(field))
}

/// An identically zero field is both real and imaginary, so its variation may be taken of either
/// type. Every such choice is tried; the field is consistent if one of them kills the residual.
fn completions(base: &RealityAssignment) -> Vec<RealityAssignment> {
    let mut out = vec![base.clone()];
    for f in Field::ALL {
        if base.get(f) == Reality::Zero {
            out = out
                .into_iter()
                .flat_map(|r| [r.clone().with(f, Reality::Real), r.with(f, Reality::Imaginary)])
                .collect();
        }
    }
    out
}

fn classify_any_completion(
    g: &GComponents,
    field: &CircleFields,
    policy: ConjugationPolicy,
    base: &RealityAssignment,
) -> Result<ConsistencyReport> {
    let mut first = None;
    for types in completions(base) {
        let report = classify_with(g, field, policy, &types)?;
        if report.consistent {
            return Ok(report);
        }
        first.get_or_insert(report);
    }
    Ok(first.expect("at least one completion"))
}

fn classify_with(
    g: &GComponents,
    field: &CircleFields,
    policy: ConjugationPolicy,
    types: &RealityAssignment,
) -> Result<ConsistencyReport> {
    let v = euler_lagrange_variation(&component_difference_poly(g, policy))?;
    let constrained = vanishing_under_constraints(&v, types);
    let residual = constrained.residual.evaluate(field);
    Ok(ConsistencyReport {
        consistent: residual.is_zero(),
        necessary_ok: necessary_conditions(g, field),
        symbolic_residual: constrained.residual,
        residual,
    })
}

/// `u ↦ 2e^{−imφ}u + e^{−iφ} sin(nφ) u′`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaOperator {
    pub m: i64,
    pub n: i64,
}

pub fn delta_apply(op: DeltaOperator, u: &CircleFn) -> CircleFn {
    let a = &CircleFn::exp(-op.m, ComplexScalar::from(2)) * u;
    let b = &(&CircleFn::exp(-1, ComplexScalar::one()) * &CircleFn::sin(op.n)) * &u.d_dphi();
    &a + &b
}

/// The operator with conjugated coefficients, `u ↦ 2e^{imφ}u + e^{iφ} sin(nφ) u′`.
pub fn conj_delta_apply(op: DeltaOperator, u: &CircleFn) -> CircleFn {
    delta_apply(op, &u.conj()).conj()
}

/// Both `conj(Δ_{(3,2)}) ψ₁` and `conj(Δ_{(−3,2)}) ψ₂` vanish.
pub fn prop45_check(field: &CircleFields) -> bool {
    conj_delta_apply(DeltaOperator { m: 3, n: 2 }, &field.psi1).is_zero()
        && conj_delta_apply(DeltaOperator { m: -3, n: 2 }, &field.psi2).is_zero()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TypeAnalysis {
    pub types: (Reality, Reality),
    /// The fermion whose identical vanishing the variation forces, if any.
    pub must_vanish: Option<Field>,
    pub consistent: bool,
    /// Constrained first variation under the declared types, one entry per variation.
    pub specialized: Vec<String>,
}

/// The `(−2, 0)` model analysed under the declared reality types of `ψ₁`, `ψ₂`.
pub fn prop46_type_analysis(field: &CircleFields, policy: ConjugationPolicy) -> Result<TypeAnalysis> {
    type_analysis(&SplitModelSpec::with_i(2, 0), field, policy)
}

/// Constrained first variation of a maximal model under the declared types of `ψ₁`, `ψ₂`.
pub fn type_analysis(spec: &SplitModelSpec, field: &CircleFields, policy: ConjugationPolicy) -> Result<TypeAnalysis> {
    let declared = |f: Field| match Reality::of(field.get(f)) {
        Reality::Free => Err(Error::UndeclaredType(f.name().into())),
        r => Ok(r),
    };
    let t1 = declared(Field::Psi1)?;
    let t2 = declared(Field::Psi2)?;
    let g = g_components(spec, policy)?;
    let base = RealityAssignment::of_fields(field);
    // Symbolic analysis treats a declared fermion as nonzero of its type; zero fields are
    // read as either type, so fall back to Real.
    let as_type = |r: Reality| if r == Reality::Zero { Reality::Real } else { r };
    let typed = base
        .clone()
        .with(Field::Psi1, as_type(t1))
        .with(Field::Psi2, as_type(t2));
    let v = euler_lagrange_variation(&component_difference_poly(&g, policy))?;
    let generic = vanishing_under_constraints(&v, &typed);
    let must_vanish = if generic.vanishes {
        None
    } else {
        [Field::Psi2, Field::Psi1]
            .into_iter()
            .find(|&f| vanishing_under_constraints(&v, &typed.clone().with(f, Reality::Zero)).vanishes)
    };
    let report = classify_any_completion(&g, field, policy, &base)?;
    Ok(TypeAnalysis {
        types: (t1, t2),
        must_vanish,
        consistent: report.consistent,
        specialized: generic.residual.describe(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ComplexScalar as C;

    #[test]
    fn standard_model_components() {
        let g = g_components(&SplitModelSpec::with_i(1, 1), ConjugationPolicy::Fix).unwrap();
        assert_eq!(g.r0, CircleFn::one());
        assert!(g.r12.is_zero());
        assert!(g.i0.is_zero());
        assert_eq!(g.i12, CircleFn::sin(1).scale(&C::from(-2)));
    }

    #[test]
    fn components_are_policy_robust_where_expected() {
        for policy in [ConjugationPolicy::Fix, ConjugationPolicy::Negate] {
            for k1 in -5..=7 {
                let g = g_components(&SplitModelSpec::with_i(k1, 2 - k1), policy).unwrap();
                assert_eq!(g.r0, CircleFn::cos(2 * (k1 - 1)), "k1={k1}");
                assert_eq!(g.i0, CircleFn::sin(2 * (k1 - 1)), "k1={k1}");
                if k1 == 1 {
                    assert!(g.r12.is_zero() && g.i0.is_zero());
                } else {
                    assert!(!g.r12.is_zero() && !g.i12.is_zero());
                }
            }
        }
    }

    #[test]
    fn non_maximal_specs_are_rejected() {
        let spec = SplitModelSpec::new(1, 1, C::one(), C::one());
        assert!(matches!(g_components(&spec, ConjugationPolicy::Fix), Err(Error::NotMaximal(_))));
    }

    #[test]
    fn witnesses() {
        let r = nonexistence_check(&SplitModelSpec::with_i(1, 1), ConjugationPolicy::Fix).unwrap();
        let w = r.witness.unwrap();
        assert_eq!((w.component, w.angle, w.value), ("I12", (1, 2), C::from(-2)));
        let w = nonexistence_check(&SplitModelSpec::with_i(2, 0), ConjugationPolicy::Fix).unwrap().witness.unwrap();
        assert_eq!((w.component, w.angle, w.value), ("I0", (1, 4), C::one()));
        let w = nonexistence_check(&SplitModelSpec::with_i(0, 2), ConjugationPolicy::Fix).unwrap().witness.unwrap();
        assert_eq!((w.component, w.angle, w.value), ("I0", (1, 4), C::from(-1)));
    }

    #[test]
    fn delta_examples() {
        for m in -5..=5 {
            for n in -5..=5 {
                let op = DeltaOperator { m, n };
                assert_eq!(delta_apply(op, &CircleFn::one()), CircleFn::exp(-m, C::from(2)));
            }
        }
        let out = delta_apply(DeltaOperator { m: 3, n: 2 }, &CircleFn::exp(3, C::one()));
        let expected = CircleFn::from_terms([(0, C::real(ratio(1, 2))), (4, C::real(ratio(3, 2)))]);
        assert_eq!(out, expected);
    }

    #[test]
    fn standard_model_classification() {
        let spec = SplitModelSpec::with_i(1, 1);
        let re_im = CircleFields::new(
            CircleFn::cos(1),
            CircleFn::cos(2),
            CircleFn::sin(1).scale(&C::i()),
            CircleFn::cos(3),
        );
        assert!(consistency_classify(&spec, &re_im, ConjugationPolicy::Fix).unwrap().consistent);
        let re_re = CircleFields::new(CircleFn::zero(), CircleFn::cos(2), CircleFn::cos(1), CircleFn::zero());
        let r = consistency_classify(&spec, &re_re, ConjugationPolicy::Fix).unwrap();
        assert!(!r.consistent);
        assert!(!r.residual_terms().is_empty());
    }

    #[test]
    fn necessary_condition_on_bosons() {
        let spec = SplitModelSpec::with_i(2, 0);
        let mixed = CircleFields::new(
            CircleFn::exp(1, C::one()),
            CircleFn::zero(),
            CircleFn::zero(),
            CircleFn::exp(2, C::one()),
        );
        assert!(!consistency_classify(&spec, &mixed, ConjugationPolicy::Fix).unwrap().necessary_ok);
        let real = CircleFields::new(CircleFn::cos(1), CircleFn::zero(), CircleFn::zero(), CircleFn::sin(2));
        assert!(consistency_classify(&spec, &real, ConjugationPolicy::Fix).unwrap().necessary_ok);
    }

    #[test]
    fn type_analysis_of_the_twisted_model() {
        let psi1_only = CircleFields::new(CircleFn::cos(1), CircleFn::cos(2), CircleFn::zero(), CircleFn::cos(1));
        let a = prop46_type_analysis(&psi1_only, ConjugationPolicy::Fix).unwrap();
        assert_eq!(a.must_vanish, Some(Field::Psi2));
        // Losing ψ₂ is forced but not enough: the δψ₂ equation still involves ψ₁.
        assert!(!a.consistent);
        let bosons_only = CircleFields::new(CircleFn::cos(1), CircleFn::zero(), CircleFn::zero(), CircleFn::cos(1));
        assert!(prop46_type_analysis(&bosons_only, ConjugationPolicy::Fix).unwrap().consistent);
        let both = CircleFields::new(CircleFn::cos(1), CircleFn::cos(2), CircleFn::cos(1), CircleFn::cos(1));
        assert!(!prop46_type_analysis(&both, ConjugationPolicy::Fix).unwrap().consistent);
        let free = CircleFields::new(CircleFn::zero(), CircleFn::exp(1, C::one()), CircleFn::zero(), CircleFn::zero());
        assert!(matches!(prop46_type_analysis(&free, ConjugationPolicy::Fix), Err(Error::UndeclaredType(_))));
    }
}
