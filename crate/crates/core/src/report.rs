//! Per-field reports, the frozen scan table, and seeded random field families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::atlas::{build_projective_atlas, SplitModelSpec};
use crate::circle::CircleFn;
use crate::consistency::{consistency_classify, type_analysis};
use crate::error::{Error, Result};
use crate::grassmann::ConjugationPolicy;
use crate::jet::{CircleFields, Field, Reality};
use crate::lagrangian::{good_field_residual, residual_norm, ChartFields, OverlapValue, Superfield};
use crate::laurent::LaurentFn;
use crate::reference::{ReferenceReport, Status};
use crate::scalar::{ratio, ComplexScalar, Rational};

/// Chart whose coordinate restricts to `y = e^{iφ}` in the circle analysis.
pub const ANALYSIS_CHART: &str = "V";

pub const SEED_VAR: &str = "SUPERKIT_SEED";
pub const DEFAULT_SEED: u64 = 20_160_301;

/// Column order of the scan table. Do not reorder: plotting scripts index by position.
pub const CSV_HEADER: &str = "index,type1,type2,good_residual_norm,necessary_ok,consistent,must_vanish";

/// Reads the seed from the environment, falling back to [`DEFAULT_SEED`].
pub fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Parse(format!("{SEED_VAR}={s:?} is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

pub fn circle_restriction(field: &Superfield) -> Result<CircleFields> {
    let c = field.chart(ANALYSIS_CHART)?;
    Ok(CircleFields::new(
        c.phi.restrict_to_circle(),
        c.psi1.restrict_to_circle(),
        c.psi2.restrict_to_circle(),
        c.f.restrict_to_circle(),
    ))
}

/// Holomorphic lift `Σ c_k e^{ikφ} ↦ Σ c_k y^k`.
pub fn lift(u: &CircleFn) -> LaurentFn {
    LaurentFn::from_terms(u.terms().map(|(k, c)| ((*k, 0), c.clone())))
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

/// A trig polynomial of frequencies in `[−3, 3]` with the requested reality. `Free` draws
/// independent complex coefficients and `Zero` returns zero.
pub fn random_circle<R: Rng>(rng: &mut R, reality: Reality) -> CircleFn {
    let mut terms = Vec::new();
    match reality {
        Reality::Zero => {}
        Reality::Free => {
            for k in -3..=3 {
                terms.push((k, ComplexScalar::new(random_rational(rng), random_rational(rng))));
            }
        }
        Reality::Real | Reality::Imaginary => {
            terms.push((0, ComplexScalar::real(random_rational(rng))));
            for k in 1..=3 {
                let c = ComplexScalar::new(random_rational(rng), random_rational(rng));
                terms.push((-k, c.conj()));
                terms.push((k, c));
            }
        }
    }
    let mut u = CircleFn::from_terms(terms);
    if u.is_empty() && reality != Reality::Zero {
        u = CircleFn::cos(1);
    }
    if reality == Reality::Imaginary {
        u = &u * &CircleFn::constant(ComplexScalar::i());
    }
    u
}

/// `count` fields on the analysis chart with `ψ₁`, `ψ₂` of the given types and real bosons.
pub fn random_family(seed: u64, types: (Reality, Reality), count: usize) -> Vec<Superfield> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let phi = random_circle(&mut rng, Reality::Real);
            let psi1 = random_circle(&mut rng, types.0);
            let psi2 = random_circle(&mut rng, types.1);
            let f = random_circle(&mut rng, Reality::Real);
            Superfield::on_chart(ANALYSIS_CHART, ChartFields::new(lift(&phi), lift(&psi1), lift(&psi2), lift(&f)))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoodFieldReport {
    pub model: [i64; 2],
    pub policy: ConjugationPolicy,
    pub good: bool,
    pub good_residual_norm: String,
    pub residuals: Vec<OverlapValue<LaurentFn>>,
}

pub fn goodfield_report(spec: &SplitModelSpec, field: &Superfield, policy: ConjugationPolicy) -> Result<GoodFieldReport> {
    let residuals = good_field_residual(field, &build_projective_atlas(spec)?, policy)?;
    let norm = residual_norm(&residuals);
    Ok(GoodFieldReport {
        model: [spec.k1, spec.k2],
        policy,
        good: norm == Rational::default(),
        good_residual_norm: norm.to_string(),
        residuals,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiffSummary {
    pub id: &'static str,
    pub status: Status,
    pub documented: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub model: [i64; 2],
    pub policy: ConjugationPolicy,
    pub field: Superfield,
    pub good_residual: String,
    pub necessary_ok: bool,
    pub consistent: bool,
    pub residual_terms: Vec<String>,
    pub paper_diff: Vec<DiffSummary>,
}

/// Whether a reference entry speaks about the model `(k1, k2)`.
fn entry_applies(id: &str, k1: i64, k2: i64) -> bool {
    match id {
        "cocycle" | "hermitian_product" | "twisted_g" => true,
        "g_components" => k1 != 1,
        "standard_g" => (k1, k2) == (1, 1),
        _ => (k1, k2) == (2, 0),
    }
}

pub fn classification_report(
    spec: &SplitModelSpec,
    field: &Superfield,
    policy: ConjugationPolicy,
    reference: &ReferenceReport,
) -> Result<ClassificationReport> {
    let good = goodfield_report(spec, field, policy)?;
    let circle = circle_restriction(field)?;
    let c = consistency_classify(spec, &circle, policy)?;
    let paper_diff = reference
        .entries
        .iter()
        .filter(|e| entry_applies(e.id, spec.k1, spec.k2))
        .map(|e| DiffSummary { id: e.id, status: e.status, documented: e.documented })
        .collect();
    Ok(ClassificationReport {
        model: [spec.k1, spec.k2],
        policy,
        field: field.clone(),
        good_residual: good.good_residual_norm,
        necessary_ok: c.necessary_ok,
        consistent: c.consistent,
        residual_terms: c.residual_terms(),
        paper_diff,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub index: usize,
    pub type1: Reality,
    pub type2: Reality,
    pub good_residual_norm: String,
    pub necessary_ok: bool,
    pub consistent: bool,
    pub must_vanish: Option<Field>,
}

impl ScanRow {
    pub fn csv_line(&self) -> String {
        let name = |r: Reality| serde_json::to_value(r).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            self.index,
            name(self.type1),
            name(self.type2),
            self.good_residual_norm,
            self.necessary_ok,
            self.consistent,
            self.must_vanish.map_or("", |f| f.name()),
        )
    }
}

pub fn scan_row(
    index: usize,
    spec: &SplitModelSpec,
    field: &Superfield,
    policy: ConjugationPolicy,
) -> Result<ScanRow> {
    let good = goodfield_report(spec, field, policy)?;
    let circle = circle_restriction(field)?;
    let c = consistency_classify(spec, &circle, policy)?;
    let (type1, type2) = (Reality::of(&circle.psi1), Reality::of(&circle.psi2));
    let typed = |r: Reality| matches!(r, Reality::Real | Reality::Imaginary);
    let must_vanish = if typed(type1) && typed(type2) { type_analysis(spec, &circle, policy)?.must_vanish } else { None };
    Ok(ScanRow {
        index,
        type1,
        type2,
        good_residual_norm: good.good_residual_norm,
        necessary_ok: c.necessary_ok,
        consistent: c.consistent,
        must_vanish,
    })
}

/// Rows in input order.
pub fn scan(spec: &SplitModelSpec, fields: &[Superfield], policy: ConjugationPolicy) -> Result<Vec<ScanRow>> {
    fields.iter().enumerate().map(|(i, f)| scan_row(i, spec, f, policy)).collect()
}

pub fn to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_fields_have_requested_types() {
        for (t1, t2) in [(Reality::Real, Reality::Imaginary), (Reality::Imaginary, Reality::Imaginary)] {
            for f in random_family(7, (t1, t2), 20) {
                let c = circle_restriction(&f).unwrap();
                assert_eq!(Reality::of(&c.psi1), t1);
                assert_eq!(Reality::of(&c.psi2), t2);
                assert_eq!(Reality::of(&c.phi), Reality::Real);
            }
        }
    }

    #[test]
    fn families_are_reproducible_from_the_seed() {
        let a = random_family(11, (Reality::Real, Reality::Real), 5);
        assert_eq!(a, random_family(11, (Reality::Real, Reality::Real), 5));
        assert_ne!(a, random_family(12, (Reality::Real, Reality::Real), 5));
    }

    #[test]
    fn zero_field_row() {
        let spec = SplitModelSpec::with_i(1, 1);
        let zero = Superfield::on_chart(ANALYSIS_CHART, ChartFields::default());
        let row = scan_row(0, &spec, &zero, ConjugationPolicy::Fix).unwrap();
        assert_eq!(row.csv_line(), "0,zero,zero,0,true,true,");
        assert!(to_csv(&[row]).starts_with(CSV_HEADER));
    }
}
