//! Numeric oracle shared by the test targets: the symbolic first variation paired with a
//! perturbation must equal the directional derivative of the circle integral.

use num_complex::Complex64;
use rand::Rng;

use superkit::circle::CircleFn;
use superkit::jet::{euler_lagrange_variation, CircleFields, Field, JetPolynomial, JetSymbol, Reality};
use superkit::report::random_circle;

pub const NODES: usize = 64;
pub const REL_TOL: f64 = 1e-8;

pub fn random_fields<R: Rng>(rng: &mut R) -> CircleFields {
    let mut draw = || random_circle(rng, Reality::Free);
    CircleFields::new(draw(), draw(), draw(), draw())
}

pub fn random_symbol<R: Rng>(rng: &mut R) -> JetSymbol {
    JetSymbol::new(Field::ALL[rng.gen_range(0..4)], rng.gen_bool(0.5), rng.gen_range(0..=1))
}

/// Up to four monomials of degree at most three with trig-polynomial coefficients.
pub fn random_jet<R: Rng>(rng: &mut R) -> JetPolynomial {
    let mut p = JetPolynomial::default();
    for _ in 0..rng.gen_range(1..=4) {
        let mut m = JetPolynomial::from_circle(random_circle(rng, Reality::Free));
        for _ in 0..rng.gen_range(1..=3) {
            m = &m * &JetPolynomial::symbol(random_symbol(rng));
        }
        p = &p + &m;
    }
    p
}

pub fn nodes() -> impl Iterator<Item = f64> {
    (0..NODES).map(|j| j as f64 * std::f64::consts::TAU / NODES as f64)
}

pub fn sample(c: &CircleFn) -> Vec<Complex64> {
    nodes().map(|phi| c.eval(phi)).collect()
}

/// `P`, `u` and `h` sampled once on the quadrature nodes: per term, the coefficient and the
/// `(u, h)` samples of each factor with its multiplicity.
type Samples = Vec<Complex64>;
/// Samples of `u` and `h` for one factor, with its multiplicity.
type Factor = (Samples, Samples, u32);

struct Sampled {
    terms: Vec<(Samples, Vec<Factor>)>,
}

impl Sampled {
    fn new(p: &JetPolynomial, u: &CircleFields, h: &CircleFields) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| (sample(c), m.iter().map(|(&s, &e)| (sample(&u.jet(s)), sample(&h.jet(s)), e)).collect()))
            .collect();
        Sampled { terms }
    }

    /// `(1/2π) ∫₀^{2π} P(u + t h) dφ` by the trapezoid rule, exact for the frequencies involved.
    fn mean_integral(&self, t: f64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for j in 0..NODES {
            for (c, factors) in &self.terms {
                let mut v = c[j];
                for (uu, hh, e) in factors {
                    v *= (uu[j] + hh[j] * t).powu(*e);
                }
                sum += v;
            }
        }
        sum / NODES as f64
    }
}

/// Four-point centered difference, exact for polynomials of degree ≤ 4 in `t`.
pub fn gateaux(p: &JetPolynomial, u: &CircleFields, h: &CircleFields) -> Complex64 {
    let t = 1e-2;
    let s = Sampled::new(p, u, h);
    let f = |x: f64| s.mean_integral(x);
    (8.0 * (f(t) - f(-t)) - (f(2.0 * t) - f(-2.0 * t))) / (12.0 * t)
}

pub fn symbolic(p: &JetPolynomial, u: &CircleFields, h: &CircleFields) -> Complex64 {
    euler_lagrange_variation(p).unwrap().evaluate(u).mean_pairing(h).to_c64()
}

/// Relative disagreement between the symbolic and numeric derivatives.
pub fn relative_error(p: &JetPolynomial, u: &CircleFields, h: &CircleFields) -> f64 {
    let a = symbolic(p, u, h);
    let b = gateaux(p, u, h);
    (a - b).norm() / a.norm().max(b.norm()).max(1e-12)
}

#[allow(dead_code)]
pub fn assert_agree(p: &JetPolynomial, u: &CircleFields, h: &CircleFields) {
    let e = relative_error(p, u, h);
    assert!(e <= REL_TOL, "relative error {e} for {p}");
}

