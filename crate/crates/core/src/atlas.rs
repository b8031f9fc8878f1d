//! Super transition functions, superconformal pushforwards and cocycles over (1|2)-dimensional atlases.
//!
//! A transition `t(U, V)` writes the coordinates `(Y, η)` of chart `V` in terms of `(x, θ)` on `U`:
//! `Y = f(x) + α(x) θ¹θ²`, `η^a = ζ^a_b(x) θ^b`. All coefficient functions live in the `U` coordinate.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::Grassmann;
use crate::laurent::{LaurentFn, MonomialMap, Wirtinger};
use crate::ring::Coefficient;
use crate::scalar::ComplexScalar;

pub type ChartId = String;
pub type G = Grassmann<LaurentFn>;
/// `m[row][col]`; for odd blocks `m[a][b] = ζ^a_b`, for cocycles `m[b][a] = g^b_a`.
pub type Matrix2<T> = [[T; 2]; 2];

#[derive(Clone, Debug, PartialEq)]
pub struct TransitionData {
    pub from: ChartId,
    pub to: ChartId,
    pub f: MonomialMap,
    pub alpha: LaurentFn,
    pub zeta: Matrix2<LaurentFn>,
}

fn det2(m: &Matrix2<LaurentFn>) -> LaurentFn {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

impl TransitionData {
    pub fn new(
        from: impl Into<ChartId>,
        to: impl Into<ChartId>,
        f: MonomialMap,
        alpha: LaurentFn,
        zeta: Matrix2<LaurentFn>,
    ) -> Result<Self> {
        let t = TransitionData { from: from.into(), to: to.into(), f, alpha, zeta };
        if t.det_zeta().inverse().is_none() {
            return Err(Error::NotLaurentInvertible(format!(
                "det ζ = {} on {}→{} is not a Laurent unit",
                t.det_zeta(),
                t.from,
                t.to
            )));
        }
        Ok(t)
    }

    pub fn det_zeta(&self) -> LaurentFn {
        det2(&self.zeta)
    }

    pub fn is_split(&self) -> bool {
        self.alpha.is_zero()
    }

    pub fn is_diagonal(&self) -> bool {
        self.zeta[0][1].is_zero() && self.zeta[1][0].is_zero()
    }

    /// `∂f/∂x` as a function of `x`.
    pub fn df(&self) -> LaurentFn {
        self.f.derivative()
    }

    fn zeta_inverse(&self) -> Option<Matrix2<LaurentFn>> {
        let d = self.det_zeta().inverse()?;
        let z = &self.zeta;
        Some([
            [&z[1][1] * &d, -&(&z[0][1] * &d)],
            [-&(&z[1][0] * &d), &z[0][0] * &d],
        ])
    }

    /// The transition in the opposite direction, computed exactly.
    pub fn inverse(&self) -> Result<TransitionData> {
        let g = self.f.inverse();
        let det_inv = self
            .det_zeta()
            .inverse()
            .ok_or_else(|| Error::NotLaurentInvertible("det ζ".into()))?;
        let df_inv = self.df().inverse().expect("monomial maps have unit derivative");
        let zinv = self.zeta_inverse().expect("det ζ checked above");
        let zeta = zinv.map(|row| row.map(|e| e.pullback(&g)));
        // x = g(Y) − (α / (f′ det ζ))∘g · η¹η²
        let beta = -&(&(&self.alpha * &det_inv) * &df_inv).pullback(&g);
        TransitionData::new(self.to.clone(), self.from.clone(), g, beta, zeta)
    }

    /// `Y` as an element written in the `from` chart.
    pub fn target_even(&self) -> G {
        G::new(self.f.as_laurent(), LaurentFn::zero(), LaurentFn::zero(), self.alpha.clone())
    }

    /// `η^b` (`b ∈ {1, 2}`) as an element written in the `from` chart.
    pub fn target_odd(&self, b: usize) -> G {
        let row = &self.zeta[b - 1];
        G::new(LaurentFn::zero(), row[0].clone(), row[1].clone(), LaurentFn::zero())
    }

    fn substitute_function(&self, h: &LaurentFn) -> Result<G> {
        let body = h.pullback(&self.f);
        if self.alpha.is_zero() {
            return Ok(G::even(body));
        }
        if !h.is_holomorphic() {
            return Err(Error::NonSplitTransport);
        }
        let soul = &h.diff(Wirtinger::Holomorphic).pullback(&self.f) * &self.alpha;
        Ok(G::even_pair(body, soul))
    }

    /// Rewrites an element given in the `to` chart's coordinates in the `from` chart's coordinates.
    pub fn pull_back(&self, e: &G) -> Result<G> {
        let eta1 = self.target_odd(1);
        let eta2 = self.target_odd(2);
        let eta12 = &eta1 * &eta2;
        let mut out = self.substitute_function(&e.c0)?;
        out = &out + &(&self.substitute_function(&e.c1)? * &eta1);
        out = &out + &(&self.substitute_function(&e.c2)? * &eta2);
        out = &out + &(&self.substitute_function(&e.c12)? * &eta12);
        Ok(out)
    }

    /// Pulls back a body-only function along the reduced map `f`.
    pub fn pull_back_function(&self, h: &LaurentFn) -> LaurentFn {
        h.pullback(&self.f)
    }

    pub fn super_jacobian(&self) -> SuperJacobian {
        let zero = LaurentFn::zero;
        let dz = |r: usize| {
            G::new(zero(), self.zeta[r][0].diff(Wirtinger::Holomorphic), self.zeta[r][1].diff(Wirtinger::Holomorphic), zero())
        };
        SuperJacobian {
            a: G::even_pair(self.df(), self.alpha.diff(Wirtinger::Holomorphic)),
            b: [
                G::new(zero(), zero(), self.alpha.clone(), zero()),
                G::new(zero(), -&self.alpha, zero(), zero()),
            ],
            c: [dz(0), dz(1)],
            d: self.zeta.clone(),
        }
    }

    pub fn berezinian(&self) -> Result<G> {
        self.super_jacobian().berezinian()
    }
}

/// Block form `[[A, B], [C, D]]` with rows indexed by `(Y, η)` and columns by `(x, θ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperJacobian {
    pub a: G,
    pub b: [G; 2],
    pub c: [G; 2],
    pub d: Matrix2<LaurentFn>,
}

impl SuperJacobian {
    /// `(A − B D⁻¹ C) / det D`
    pub fn berezinian(&self) -> Result<G> {
        let det_inv = det2(&self.d).inverse().ok_or(Error::DegenerateOddBlock)?;
        let z = &self.d;
        let dinv = [
            [&z[1][1] * &det_inv, -&(&z[0][1] * &det_inv)],
            [-&(&z[1][0] * &det_inv), &z[0][0] * &det_inv],
        ];
        let mut schur = self.a.clone();
        for (i, bi) in self.b.iter().enumerate() {
            for (j, cj) in self.c.iter().enumerate() {
                schur = &schur - &(&bi.scale(&dinv[i][j]) * cj);
            }
        }
        Ok(schur.scale(&det_inv))
    }
}

/// `(ρ_UV)_* D_{U,a}` decomposed against the target frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Pushforward {
    pub index: usize,
    /// `g^1_a`, `g^2_a` in the target chart.
    pub coeffs: [G; 2],
    /// `∂/∂Y`-component not accounted for by `Σ_b g^b_a D_{V,b}`; zero iff the frame closes.
    pub residual: G,
}

/// `back` must be the transition in the opposite direction.
pub fn pushforward_superconformal(t: &TransitionData, back: &TransitionData, a: usize) -> Result<Pushforward> {
    if back.from != t.to || back.to != t.from {
        return Err(Error::MissingData(format!("inverse of {}→{}", t.from, t.to)));
    }
    let dy = back.pull_back(&t.target_even().superconformal_d(a))?;
    let g1 = back.pull_back(&t.target_odd(1).superconformal_d(a))?;
    let g2 = back.pull_back(&t.target_odd(2).superconformal_d(a))?;
    let residual = &(&dy + &(&g1 * &G::eta2())) + &(&g2 * &G::eta1());
    Ok(Pushforward { index: a, coeffs: [g1, g2], residual })
}

/// For diagonal `ζ`, the two scalar combinations of the residuals that isolate the obstructions:
/// `alpha_part = 2α` and `det_part = 2(det ζ − ∂f)`, both written in the target chart.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualSplit {
    pub alpha_part: LaurentFn,
    pub det_part: LaurentFn,
}

pub fn residual_split(t: &TransitionData, back: &TransitionData, pf: &[Pushforward; 2]) -> Result<Option<ResidualSplit>> {
    if !t.is_diagonal() {
        return Ok(None);
    }
    let z11 = back.pull_back(&G::even(t.zeta[0][0].clone()))?.c0;
    let z22 = back.pull_back(&G::even(t.zeta[1][1].clone()))?.c0;
    let r1 = &z22 * &pf[0].residual.c2;
    let r2 = &z11 * &pf[1].residual.c1;
    Ok(Some(ResidualSplit { alpha_part: &r1 - &r2, det_part: &r1 + &r2 }))
}

#[derive(Clone, Debug)]
pub struct Atlas {
    charts: Vec<ChartId>,
    transitions: BTreeMap<(ChartId, ChartId), TransitionData>,
    triples: Vec<[ChartId; 3]>,
}

impl Atlas {
    /// Builds an atlas from one transition per overlapping pair; the reverse directions are
    /// computed and stored alongside.
    pub fn from_transitions(
        charts: Vec<ChartId>,
        forward: Vec<TransitionData>,
        triples: Vec<[ChartId; 3]>,
    ) -> Result<Self> {
        let mut transitions = BTreeMap::new();
        for t in forward {
            for id in [&t.from, &t.to] {
                if !charts.contains(id) {
                    return Err(Error::MissingData(format!("unknown chart {id}")));
                }
            }
            let back = t.inverse()?;
            transitions.insert((back.from.clone(), back.to.clone()), back);
            transitions.insert((t.from.clone(), t.to.clone()), t);
        }
        for tri in &triples {
            for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                if !transitions.contains_key(&(tri[i].clone(), tri[j].clone())) {
                    return Err(Error::MissingData(format!(
                        "triple overlap {:?} lacks transition {}→{}",
                        tri, tri[i], tri[j]
                    )));
                }
            }
        }
        Ok(Atlas { charts, transitions, triples })
    }

    pub fn charts(&self) -> &[ChartId] {
        &self.charts
    }

    pub fn triples(&self) -> &[[ChartId; 3]] {
        &self.triples
    }

    pub fn transition(&self, from: &str, to: &str) -> Result<&TransitionData> {
        self.transitions
            .get(&(from.to_string(), to.to_string()))
            .ok_or_else(|| Error::MissingData(format!("transition {from}→{to}")))
    }

    /// Every stored transition, in a deterministic order.
    pub fn transitions(&self) -> impl Iterator<Item = &TransitionData> {
        self.transitions.values()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitModelSpec {
    pub k1: i64,
    pub k2: i64,
    pub lambda1: ComplexScalar,
    pub lambda2: ComplexScalar,
    #[serde(default)]
    pub alpha: LaurentFn,
    /// The corner entry `ζ^1_2`; zero for the split line-bundle sum.
    #[serde(default)]
    pub offdiag: LaurentFn,
}

impl SplitModelSpec {
    pub fn new(k1: i64, k2: i64, lambda1: ComplexScalar, lambda2: ComplexScalar) -> Self {
        SplitModelSpec { k1, k2, lambda1, lambda2, alpha: LaurentFn::zero(), offdiag: LaurentFn::zero() }
    }

    /// `λ = (i, i)`, the choice used throughout the worked examples.
    pub fn with_i(k1: i64, k2: i64) -> Self {
        SplitModelSpec::new(k1, k2, ComplexScalar::i(), ComplexScalar::i())
    }

    pub fn with_alpha(mut self, alpha: LaurentFn) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_offdiag(mut self, offdiag: LaurentFn) -> Self {
        self.offdiag = offdiag;
        self
    }

    pub fn det_lambda(&self) -> ComplexScalar {
        &self.lambda1 * &self.lambda2
    }

    pub fn transition(&self) -> Result<TransitionData> {
        if self.lambda1.is_zero() || self.lambda2.is_zero() {
            return Err(Error::ZeroLambda);
        }
        let zeta = [
            [LaurentFn::monomial(self.lambda1.clone(), -self.k1, 0), self.offdiag.clone()],
            [LaurentFn::zero(), LaurentFn::monomial(self.lambda2.clone(), -self.k2, 0)],
        ];
        TransitionData::new("U", "V", MonomialMap::inversion(), self.alpha.clone(), zeta)
    }
}

/// Two charts `U`, `V` on the projective line glued by `y = 1/x`.
pub fn build_projective_atlas(spec: &SplitModelSpec) -> Result<Atlas> {
    Atlas::from_transitions(vec!["U".into(), "V".into()], vec![spec.transition()?], vec![])
}

/// Three charts on `ℂ^×` with a single triple overlap; `ζ` satisfies `det ζ = ∂f` on every pair
/// when `scale = 1`. Other values rescale the first diagonal entry of `ζ_UV`, keeping the
/// composite `ζ_UW` consistent.
pub fn three_chart_fixture(scale: ComplexScalar) -> Result<Atlas> {
    let c = |re: i64, im: i64| ComplexScalar::from_ints(re, im);
    let mono = |k: ComplexScalar, m: i64| LaurentFn::monomial(k, m, 0);
    let f_uv = MonomialMap::new(c(2, 0), 1)?;
    let zeta_uv = [[mono(scale.clone(), 0), LaurentFn::zero()], [LaurentFn::zero(), mono(c(2, 0), 0)]];
    let f_vw = MonomialMap::inversion();
    let zeta_vw = [[mono(c(0, 1), -1), LaurentFn::zero()], [LaurentFn::zero(), mono(c(0, 1), -1)]];
    let f_uw = f_vw.compose(&f_uv);
    let mut zeta_uw: Matrix2<LaurentFn> = Default::default();
    for (a, row) in zeta_uw.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            for k in 0..2 {
                *slot = &*slot + &(&zeta_vw[a][k].pullback(&f_uv) * &zeta_uv[k][b]);
            }
        }
    }
    let zero = LaurentFn::zero;
    Atlas::from_transitions(
        vec!["U".into(), "V".into(), "W".into()],
        vec![
            TransitionData::new("U", "V", f_uv, zero(), zeta_uv)?,
            TransitionData::new("V", "W", f_vw, zero(), zeta_vw)?,
            TransitionData::new("U", "W", f_uw, zero(), zeta_uw)?,
        ],
        vec![["U".into(), "V".into(), "W".into()]],
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuperconformalCocycle {
    /// `(U, V) ↦ [[g^1_1, g^1_2], [g^2_1, g^2_2]]`, entries in the `V` chart.
    pub entries: BTreeMap<(ChartId, ChartId), Matrix2<G>>,
    pub diagonal: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairResidual {
    pub from: ChartId,
    pub to: ChartId,
    pub index: usize,
    pub residual: G,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CocycleOutcome {
    Cocycle(SuperconformalCocycle),
    Obstructed(Vec<PairResidual>),
}

fn pair_matrix(atlas: &Atlas, t: &TransitionData) -> Result<(Matrix2<G>, [Pushforward; 2])> {
    let back = atlas.transition(&t.to, &t.from)?;
    let p1 = pushforward_superconformal(t, back, 1)?;
    let p2 = pushforward_superconformal(t, back, 2)?;
    let m = [
        [p1.coeffs[0].clone(), p2.coeffs[0].clone()],
        [p1.coeffs[1].clone(), p2.coeffs[1].clone()],
    ];
    Ok((m, [p1, p2]))
}

/// The `∂/∂η`-coefficients of every pairwise pushforward, whether or not the residuals vanish.
pub fn candidate_cocycle(atlas: &Atlas) -> Result<SuperconformalCocycle> {
    let mut entries = BTreeMap::new();
    let mut diagonal = true;
    for t in atlas.transitions() {
        let (m, _) = pair_matrix(atlas, t)?;
        diagonal &= m[0][1].is_zero() && m[1][0].is_zero();
        entries.insert((t.from.clone(), t.to.clone()), m);
    }
    Ok(SuperconformalCocycle { entries, diagonal })
}

pub fn superconformal_cocycle(atlas: &Atlas) -> Result<CocycleOutcome> {
    let mut failures = Vec::new();
    for t in atlas.transitions() {
        let (_, pf) = pair_matrix(atlas, t)?;
        for p in pf {
            if !p.residual.is_zero() {
                failures.push(PairResidual {
                    from: t.from.clone(),
                    to: t.to.clone(),
                    index: p.index,
                    residual: p.residual,
                });
            }
        }
    }
    if failures.is_empty() {
        Ok(CocycleOutcome::Cocycle(candidate_cocycle(atlas)?))
    } else {
        Ok(CocycleOutcome::Obstructed(failures))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TripleResidual {
    pub charts: [ChartId; 3],
    /// `Σ_b g_BC[c][b] · g_AB[b][a] − g_AC[c][a]` in the last chart.
    pub residual: Matrix2<G>,
}

impl TripleResidual {
    pub fn is_zero(&self) -> bool {
        self.residual.iter().flatten().all(G::is_zero)
    }
}

/// Evaluates the composition law on every ordering of every declared triple overlap.
pub fn check_cocycle_condition(g: &SuperconformalCocycle, atlas: &Atlas) -> Result<Vec<TripleResidual>> {
    const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let entry = |a: &ChartId, b: &ChartId| {
        g.entries
            .get(&(a.clone(), b.clone()))
            .ok_or_else(|| Error::MissingData(format!("cocycle entry {a}→{b}")))
    };
    let mut out = Vec::new();
    for tri in atlas.triples() {
        for ord in ORDERS {
            let [a, b, c] = ord.map(|i| tri[i].clone());
            let g_ab = entry(&a, &b)?;
            let g_bc = entry(&b, &c)?;
            let g_ac = entry(&a, &c)?;
            let to_c = atlas.transition(&c, &b)?;
            let mut moved: Matrix2<G> = Default::default();
            for (row, slot_row) in moved.iter_mut().enumerate() {
                for (col, slot) in slot_row.iter_mut().enumerate() {
                    *slot = to_c.pull_back(&g_ab[row][col])?;
                }
            }
            let mut residual: Matrix2<G> = Default::default();
            for r in 0..2 {
                for col in 0..2 {
                    let mut acc = g_ac[r][col].negated();
                    for k in 0..2 {
                        acc = &acc + &(&g_bc[r][k] * &moved[k][col]);
                    }
                    residual[r][col] = acc;
                }
            }
            out.push(TripleResidual { charts: [a, b, c], residual });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalityReport {
    pub maximal: bool,
    pub reasons: Vec<String>,
}

pub const REASON_ALPHA: &str = "not superconformal: α obstruction";
pub const REASON_OFFDIAG: &str = "not maximal: ζ not diagonal";
pub const REASON_DEGREE: &str = "not maximal: k1 + k2 ≠ 2";
pub const REASON_DET: &str = "not maximal: det λ ≠ −1";

pub fn classify_maximal(spec: &SplitModelSpec) -> MaximalityReport {
    let mut reasons = Vec::new();
    if !spec.alpha.is_zero() {
        reasons.push(REASON_ALPHA.to_string());
    }
    if !spec.offdiag.is_zero() {
        reasons.push(REASON_OFFDIAG.to_string());
    }
    if spec.k1 + spec.k2 != 2 {
        reasons.push(REASON_DEGREE.to_string());
    }
    if spec.det_lambda() != ComplexScalar::from(-1) {
        reasons.push(REASON_DET.to_string());
    }
    MaximalityReport { maximal: reasons.is_empty(), reasons }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ComplexScalar as C;

    fn lm(re: i64, im: i64, m: i64) -> LaurentFn {
        LaurentFn::monomial(C::from_ints(re, im), m, 0)
    }

    #[test]
    fn projective_transition_blocks() {
        let t = SplitModelSpec::with_i(2, 0).transition().unwrap();
        assert_eq!(t.zeta[0][0], lm(0, 1, -2));
        assert_eq!(t.zeta[1][1], lm(0, 1, 0));
        assert_eq!(t.f, MonomialMap::inversion());
        let zero = SplitModelSpec::new(1, 1, C::zero(), C::i()).transition();
        assert!(matches!(zero, Err(Error::ZeroLambda)));
    }

    #[test]
    fn inverse_round_trips() {
        let spec = SplitModelSpec::with_i(1, 1).with_alpha(lm(1, 0, -1)).with_offdiag(lm(3, 0, 2));
        let t = spec.transition().unwrap();
        let back = t.inverse().unwrap();
        assert_eq!(back.inverse().unwrap(), t);
        for e in [G::even(LaurentFn::z()), G::eta1(), G::eta2(), G::even(lm(2, 1, 3))] {
            assert_eq!(t.pull_back(&back.pull_back(&e).unwrap()).unwrap(), e);
        }
    }

    #[test]
    fn berezinians_of_sample_models() {
        let ber = |spec: SplitModelSpec| spec.transition().unwrap().inverse().unwrap().berezinian().unwrap();
        assert_eq!(ber(SplitModelSpec::with_i(1, 1)), G::one());
        assert_eq!(ber(SplitModelSpec::new(2, 0, C::from(1), C::from(-1))), G::one());
        assert_eq!(ber(SplitModelSpec::new(1, 1, C::one(), C::one())), G::one().negated());
    }

    #[test]
    fn degenerate_odd_block_is_reported() {
        let j = SuperJacobian {
            a: G::one(),
            b: [G::zero(), G::zero()],
            c: [G::zero(), G::zero()],
            d: [[LaurentFn::one(), LaurentFn::one()], [LaurentFn::one(), LaurentFn::one()]],
        };
        assert!(matches!(j.berezinian(), Err(Error::DegenerateOddBlock)));
    }

    #[test]
    fn pushforward_of_standard_model_closes() {
        let atlas = build_projective_atlas(&SplitModelSpec::with_i(1, 1)).unwrap();
        let t = atlas.transition("U", "V").unwrap();
        let back = atlas.transition("V", "U").unwrap();
        let p = pushforward_superconformal(t, back, 1).unwrap();
        assert!(p.residual.is_zero());
        assert!(p.coeffs[1].is_zero());
        assert_eq!(p.coeffs[0].c0, lm(0, 1, 1));
    }

    #[test]
    fn alpha_term_obstructs() {
        let spec = SplitModelSpec::with_i(1, 1).with_alpha(lm(1, 0, -1));
        let atlas = build_projective_atlas(&spec).unwrap();
        match superconformal_cocycle(&atlas).unwrap() {
            CocycleOutcome::Obstructed(f) => assert!(!f.is_empty()),
            CocycleOutcome::Cocycle(_) => panic!("α ≠ 0 must obstruct"),
        }
    }

    #[test]
    fn corner_entry_gives_nondiagonal_coefficients() {
        let spec = SplitModelSpec::with_i(1, 1).with_offdiag(lm(1, 0, 0));
        let atlas = build_projective_atlas(&spec).unwrap();
        assert!(!candidate_cocycle(&atlas).unwrap().diagonal);
        assert!(classify_maximal(&spec).reasons.contains(&REASON_OFFDIAG.to_string()));
    }

    #[test]
    fn fixture_composites_are_consistent() {
        let atlas = three_chart_fixture(C::one()).unwrap();
        for t in atlas.transitions() {
            assert_eq!(t.det_zeta(), t.df(), "{}→{}", t.from, t.to);
        }
    }

    #[test]
    fn maximality_reasons() {
        assert!(classify_maximal(&SplitModelSpec::with_i(1, 1)).maximal);
        assert!(classify_maximal(&SplitModelSpec::with_i(2, 0)).maximal);
        let r = classify_maximal(&SplitModelSpec::new(1, 1, C::one(), C::one()));
        assert_eq!(r.reasons, vec![REASON_DET.to_string()]);
    }

    #[test]
    fn cocycle_condition_tracks_det_equals_df() {
        let ok = three_chart_fixture(C::one()).unwrap();
        let g = candidate_cocycle(&ok).unwrap();
        assert!(check_cocycle_condition(&g, &ok).unwrap().iter().all(TripleResidual::is_zero));
        let bad = three_chart_fixture(C::from(2)).unwrap();
        let g = candidate_cocycle(&bad).unwrap();
        assert!(check_cocycle_condition(&g, &bad).unwrap().iter().any(|r| !r.is_zero()));
    }

    #[test]
    fn residual_split_isolates_alpha() {
        let alpha = lm(1, 0, -1);
        let atlas = build_projective_atlas(&SplitModelSpec::with_i(1, 1).with_alpha(alpha.clone())).unwrap();
        let t = atlas.transition("U", "V").unwrap();
        let back = atlas.transition("V", "U").unwrap();
        let pf = [1, 2].map(|a| pushforward_superconformal(t, back, a).unwrap());
        let split = residual_split(t, back, &pf).unwrap().unwrap();
        let alpha_v = back.pull_back_function(&alpha).scale(&C::from(2));
        assert_eq!(split.alpha_part, alpha_v);
        assert!(split.det_part.is_zero());
    }
}
