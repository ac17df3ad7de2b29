mod common;

use cdga::catalog::{self, e_nilmanifold, heisenberg, sphere};
use cdga::formality::{build_minimal_model, formality_verdict, FormalityVerdict};
use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn label(name: &str, n: usize) -> &'static str {
    let entry = catalog::lookup(name).unwrap();
    formality_verdict(&entry.presentation, n, n + 1)
        .unwrap()
        .label()
}

#[test]
fn verdict_labels() {
    assert_eq!(label("heisenberg", 3), "NON-FORMAL");
    assert_eq!(label("e-nilmanifold", 4), "NON-FORMAL");
    assert_eq!(label("heisenberg*sphere:2", 5), "NON-FORMAL");
    assert_eq!(label("sphere:4", 4), "FORMAL-CERTIFIED-UP-TO-CAP");
    assert_eq!(label("torus:3*sphere:2", 5), "FORMAL-CERTIFIED-UP-TO-CAP");
    assert_eq!(label("torus:3", 4), "NOT-APPLICABLE");
}

#[test]
fn non_formal_certificate_is_a_heisenberg_product() {
    let n = heisenberg();
    let FormalityVerdict::NonFormal { certificate } =
        formality_verdict(&n.presentation, 3, 4).unwrap()
    else {
        panic!("expected a Massey certificate");
    };
    assert_eq!(certificate.classes, [(1, 0), (1, 0), (1, 1)]);
    assert!(certificate.result.nonzero);
}

#[test]
fn model_stages_are_quasi_isomorphic() {
    for entry in [
        heisenberg(),
        e_nilmanifold(),
        sphere(2).unwrap(),
        sphere(4).unwrap(),
    ] {
        let mm = build_minimal_model(&entry.presentation, entry.dimension).unwrap();
        assert!(mm.model.is_minimal(), "{}", entry.name);
        for stage in &mm.stages {
            assert!(
                stage.bijective && stage.injective_next,
                "{} stage {}",
                entry.name,
                stage.degree
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_models_match_cohomology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let count = rng.gen_range(1..=4);
        let degrees = random_degrees(&mut rng, count, 3);
        let p = random_presentation(&mut rng, &degrees);
        let up_to = 2;
        let mm = build_minimal_model(&p, up_to).unwrap();
        prop_assert!(mm.model.is_minimal());
        for k in 0..=up_to {
            prop_assert_eq!(mm.model.betti(k), p.betti(k));
        }
        for stage in &mm.stages {
            prop_assert!(stage.bijective && stage.injective_next);
            prop_assert_eq!(stage.closed.dim() + stage.non_closed.dim(), stage.generators.len());
        }
    }
}
