//! Superfields, the superparticle density and its auxiliary partner, Berezin integration,
//! transport across overlaps, coboundaries and the good-field residual.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::atlas::{candidate_cocycle, Atlas, ChartId, TransitionData, G};
use crate::error::{Error, Result};
use crate::grassmann::{ConjugationPolicy, Grassmann};
use crate::laurent::LaurentFn;
use crate::ring::{Coefficient, Derivation};
use crate::scalar::{ratio, ComplexScalar};

/// Components of `Φ = φ + ψ₁η¹ + ψ₂η² + F η¹η²` on a single chart.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartFields {
    #[serde(default)]
    pub phi: LaurentFn,
    #[serde(default)]
    pub psi1: LaurentFn,
    #[serde(default)]
    pub psi2: LaurentFn,
    #[serde(default, rename = "F")]
    pub f: LaurentFn,
}

impl ChartFields {
    pub fn new(phi: LaurentFn, psi1: LaurentFn, psi2: LaurentFn, f: LaurentFn) -> Self {
        ChartFields { phi, psi1, psi2, f }
    }

    pub fn superfield(&self) -> G {
        G::new(self.phi.clone(), self.psi1.clone(), self.psi2.clone(), self.f.clone())
    }

    pub fn from_superfield(e: &G) -> Self {
        ChartFields::new(e.c0.clone(), e.c1.clone(), e.c2.clone(), e.c12.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.superfield().is_zero()
    }
}

/// A field given chart by chart; missing charts are filled by transport.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Superfield {
    pub charts: BTreeMap<ChartId, ChartFields>,
}

impl Superfield {
    pub fn on_chart(chart: impl Into<ChartId>, fields: ChartFields) -> Self {
        let mut charts = BTreeMap::new();
        charts.insert(chart.into(), fields);
        Superfield { charts }
    }

    pub fn chart(&self, id: &str) -> Result<&ChartFields> {
        self.charts
            .get(id)
            .ok_or_else(|| Error::MissingData(format!("field has no components on chart {id}")))
    }

    /// Fills every chart of `atlas` reachable by a single transition from a chart that already
    /// carries components, repeating until nothing changes.
    pub fn completed(&self, atlas: &Atlas) -> Result<Superfield> {
        let mut out = self.clone();
        loop {
            let mut added = false;
            for t in atlas.transitions() {
                if out.charts.contains_key(&t.from) {
                    continue;
                }
                if let Some(src) = out.charts.get(&t.to) {
                    let moved = transport_field(src, t)?;
                    out.charts.insert(t.from.clone(), moved);
                    added = true;
                }
            }
            if !added {
                return Ok(out);
            }
        }
    }
}

/// `D_a Φ` with `′ = ∂/∂y`.
pub fn apply_d(a: usize, fields: &ChartFields) -> G {
    fields.superfield().superconformal_d(a)
}

/// `½(D₁D₂ + D₂D₁)Φ + ∂Φ/∂X`, which vanishes identically.
pub fn bracket_check<R: Derivation>(phi: &Grassmann<R>) -> Grassmann<R> {
    let d12 = phi.superconformal_d(2).superconformal_d(1);
    let d21 = phi.superconformal_d(1).superconformal_d(2);
    let half = ComplexScalar::real(ratio(1, 2));
    (&d12 + &d21).map(|c| c.scale(&half)).sum(&phi.d_even())
}

fn halve<R: Coefficient>(e: Grassmann<R>) -> Grassmann<R> {
    let half = ComplexScalar::real(ratio(1, 2));
    e.map(|c| c.scale(&half))
}

/// `ℓ = ½ ε^{ab} ⟨D_aΦ, D_bΦ⟩` with `ε^{12} = 1 = −ε^{21}`.
pub fn superparticle_density<R: Derivation>(phi: &Grassmann<R>, policy: ConjugationPolicy) -> Grassmann<R> {
    let (d1, d2) = (phi.superconformal_d(1), phi.superconformal_d(2));
    density_from_frames(&d1, &d2, DensityKind::Lagrangian, policy)
}

/// `m = ½ s^{ab} ⟨D_aΦ, D_bΦ⟩` with `s^{12} = s^{21} = 1`.
pub fn auxiliary_density<R: Derivation>(phi: &Grassmann<R>, policy: ConjugationPolicy) -> Grassmann<R> {
    let (d1, d2) = (phi.superconformal_d(1), phi.superconformal_d(2));
    density_from_frames(&d1, &d2, DensityKind::Auxiliary, policy)
}

/// Chartwise densities, each written in its own chart's coordinates.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct DensityCochain {
    pub densities: BTreeMap<ChartId, G>,
}

/// Chartwise coefficients of `dy` on the reduced manifold.
#[derive(Clone, Debug, PartialEq, Default, Serialize)]
pub struct FormCochain {
    pub coefficients: BTreeMap<ChartId, LaurentFn>,
}

pub fn lagrangian_cochain(field: &Superfield, policy: ConjugationPolicy) -> DensityCochain {
    DensityCochain {
        densities: field
            .charts
            .iter()
            .map(|(id, c)| (id.clone(), superparticle_density(&c.superfield(), policy)))
            .collect(),
    }
}

pub fn berezin_integral(d: &DensityCochain) -> FormCochain {
    FormCochain {
        coefficients: d.densities.iter().map(|(id, e)| (id.clone(), e.top().clone())).collect(),
    }
}

/// Components on `t.from` of a field given on `t.to`. Only split transitions are supported.
pub fn transport_field(fields: &ChartFields, t: &TransitionData) -> Result<ChartFields> {
    if !t.is_split() {
        return Err(Error::NonSplitTransport);
    }
    Ok(ChartFields::from_superfield(&t.pull_back(&fields.superfield())?))
}

/// Rewrites a density on `t.to` in the coordinates of `t.from`, including the Berezinian factor
/// of the coordinate change.
pub fn transport_density(d: &G, t: &TransitionData) -> Result<G> {
    Ok(&t.pull_back(d)? * &t.berezinian()?)
}

/// `dx`-coefficient of a reduced form on `t.to`, rewritten as a `dy`-coefficient on `t.from`.
pub fn transport_form(coefficient: &LaurentFn, t: &TransitionData) -> LaurentFn {
    &t.pull_back_function(coefficient) * &t.df()
}

/// Per ordered overlap `(U, V)`, a quantity written in `V` coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverlapValue<T> {
    pub from: ChartId,
    pub to: ChartId,
    pub value: T,
}

fn overlap_pairs(atlas: &Atlas) -> Vec<(&TransitionData, &TransitionData)> {
    atlas
        .transitions()
        .filter_map(|t| atlas.transition(&t.to, &t.from).ok().map(|back| (t, back)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityKind {
    /// `ℓ`, antisymmetric in the frame indices.
    Lagrangian,
    /// `m`, symmetric in the frame indices.
    Auxiliary,
}

fn density_from_frames<R: Coefficient>(
    d1: &Grassmann<R>,
    d2: &Grassmann<R>,
    kind: DensityKind,
    policy: ConjugationPolicy,
) -> Grassmann<R> {
    let a = d1.hermitian_pair(d2, policy);
    let b = d2.hermitian_pair(d1, policy);
    match kind {
        DensityKind::Lagrangian => halve(&a - &b),
        DensityKind::Auxiliary => halve(&a + &b),
    }
}

/// `(ρ_UV)_*` of the density built from `fields` on `back.to`, written on `back.from`.
///
/// The frames `D_{U,a}Φ` are rewritten in the target chart before the hermitian pairing is
/// taken, so conjugation always acts on the target's odd coordinates.
pub fn pushed_density(
    fields: &ChartFields,
    back: &TransitionData,
    kind: DensityKind,
    policy: ConjugationPolicy,
) -> Result<G> {
    let d1 = back.pull_back(&apply_d(1, fields))?;
    let d2 = back.pull_back(&apply_d(2, fields))?;
    Ok(&density_from_frames(&d1, &d2, kind, policy) * &back.berezinian()?)
}

/// `(δ𝓛)_{UV}(Φ) = 𝓛_V(Φ) − (ρ_UV)_* 𝓛_U(Φ)` on every ordered overlap.
pub fn coboundary_super(
    field: &Superfield,
    atlas: &Atlas,
    policy: ConjugationPolicy,
) -> Result<Vec<OverlapValue<G>>> {
    let mut out = Vec::new();
    for (t, back) in overlap_pairs(atlas) {
        let here = superparticle_density(&field.chart(&t.to)?.superfield(), policy);
        let moved = pushed_density(field.chart(&t.from)?, back, DensityKind::Lagrangian, policy)?;
        out.push(OverlapValue { from: t.from.clone(), to: t.to.clone(), value: &here - &moved });
    }
    Ok(out)
}

/// `(δ_red L)_{UV} = L_V − f^* L_U` on every ordered overlap.
pub fn coboundary_reduced(l: &FormCochain, atlas: &Atlas) -> Result<Vec<OverlapValue<LaurentFn>>> {
    let mut out = Vec::new();
    for (t, back) in overlap_pairs(atlas) {
        let get = |id: &str| {
            l.coefficients
                .get(id)
                .ok_or_else(|| Error::MissingData(format!("form on chart {id}")))
        };
        let moved = transport_form(get(&t.from)?, back);
        out.push(OverlapValue { from: t.from.clone(), to: t.to.clone(), value: get(&t.to)? - &moved });
    }
    Ok(out)
}

/// `∫_Ber (δ𝓛)(Φ) − (δ_red L)(Φ)` on every ordered overlap; `Φ` is good iff all vanish.
pub fn good_field_residual(
    field: &Superfield,
    atlas: &Atlas,
    policy: ConjugationPolicy,
) -> Result<Vec<OverlapValue<LaurentFn>>> {
    let full = field.completed(atlas)?;
    let dens = lagrangian_cochain(&full, policy);
    let super_side = coboundary_super(&full, atlas, policy)?;
    let reduced_side = coboundary_reduced(&berezin_integral(&dens), atlas)?;
    Ok(super_side
        .into_iter()
        .zip(reduced_side)
        .map(|(s, r)| OverlapValue { from: s.from, to: s.to, value: s.value.top() - &r.value })
        .collect())
}

/// Largest absolute real or imaginary part over every residual coefficient.
pub fn residual_norm(residuals: &[OverlapValue<LaurentFn>]) -> crate::scalar::Rational {
    residuals.iter().map(|r| r.value.max_coeff()).max().unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq)]
pub struct GlobalLagrangianCheck {
    /// `G_UV = g_{UV,1} · conj(g_{UV,2})` in `V` coordinates.
    pub g: G,
    pub real: bool,
}

fn is_real(u: &LaurentFn) -> bool {
    u.conj() == *u
}

/// The hermitian product of the diagonal cocycle on the overlap `U → V`.
pub fn global_lagrangian_check(atlas: &Atlas, policy: ConjugationPolicy) -> Result<GlobalLagrangianCheck> {
    let cocycle = candidate_cocycle(atlas)?;
    if !cocycle.diagonal {
        return Err(Error::NotMaximal("superconformal cocycle is not diagonal".into()));
    }
    let m = cocycle
        .entries
        .get(&("U".to_string(), "V".to_string()))
        .ok_or_else(|| Error::MissingData("overlap U→V".into()))?;
    let g = m[0][0].hermitian_pair(&m[1][1], policy);
    let real = g.map(is_real);
    Ok(GlobalLagrangianCheck { real: real.c0 && real.c1 && real.c2 && real.c12, g })
}

/// Tests `(ρ_UV)_* 𝓛_U(Φ) = h · 𝓛_V(Φ)` for each sample field given on `V`.
pub fn compatibility_check(
    atlas: &Atlas,
    h: &G,
    samples: &[ChartFields],
    policy: ConjugationPolicy,
) -> Result<bool> {
    let t_uv = atlas.transition("U", "V")?;
    let t_vu = atlas.transition("V", "U")?;
    for s in samples {
        let on_u = transport_field(s, t_uv)?;
        let lhs = pushed_density(&on_u, t_vu, DensityKind::Lagrangian, policy)?;
        let rhs = h * &superparticle_density(&s.superfield(), policy);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fields with one or two monomial components, enough to separate every quadratic term
/// of the densities.
pub fn quadratic_probe_fields() -> Vec<ChartFields> {
    let mono = |c: ComplexScalar, k: i64| LaurentFn::monomial(c, k, 0);
    let mut singles = Vec::new();
    for slot in 0..4 {
        for k in [-1, 0, 2] {
            let mut comps: [LaurentFn; 4] = Default::default();
            comps[slot] = mono(ComplexScalar::from_ints(1, slot as i64), k);
            singles.push(comps);
        }
    }
    let mut out: Vec<ChartFields> = Vec::new();
    for (i, a) in singles.iter().enumerate() {
        for b in &singles[i..] {
            let c: Vec<LaurentFn> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            out.push(ChartFields::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()));
        }
    }
    out
}
