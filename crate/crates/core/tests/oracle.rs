use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superkit::atlas::SplitModelSpec;
use superkit::consistency::{component_difference_poly, g_components, symbolic_densities};
use superkit::grassmann::ConjugationPolicy;

mod common;
use common::{assert_agree, random_fields, random_jet};

#[test]
fn random_jets_match_the_numeric_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..120 {
        let p = random_jet(&mut rng);
        let u = random_fields(&mut rng);
        let h = random_fields(&mut rng);
        assert_agree(&p, &u, &h);
    }
}

#[test]
fn lagrangian_densities_match_the_numeric_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for policy in [ConjugationPolicy::Fix, ConjugationPolicy::Negate] {
        let d = symbolic_densities(policy);
        for p in [&d.l_body, &d.m_body, &d.m_top] {
            for _ in 0..40 {
                let u = random_fields(&mut rng);
                let h = random_fields(&mut rng);
                assert_agree(p, &u, &h);
            }
        }
    }
}

#[test]
fn overlap_differences_match_the_numeric_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (k1, k2) in [(1, 1), (2, 0), (0, 2), (3, -1)] {
        let g = g_components(&SplitModelSpec::with_i(k1, k2), ConjugationPolicy::Fix).unwrap();
        let p = component_difference_poly(&g, ConjugationPolicy::Fix);
        for _ in 0..25 {
            let u = random_fields(&mut rng);
            let h = random_fields(&mut rng);
            assert_agree(&p, &u, &h);
        }
    }
}
