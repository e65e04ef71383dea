use std::sync::Arc;

use morita_core::bibundle::{bundle_from_functor, is_biprincipal, is_principal, morita_equivalent};
use morita_core::cocycle::{cocycle_to_bundle, cocycles_equivalent, lift_cocycle, pushforward, validate_cocycle, CechGroupoid, GridCover};
use morita_core::gen;
use morita_core::groupoid::{is_weak_equivalence, orbits, validate_groupoid, FiniteGroupoid};
use morita_core::homotopy::{pi0, pi1_finite};
use morita_core::schema::{cocycle_to_json, groupoid_to_json, read_cocycle, read_groupoid, Source};
use proptest::prelude::*;
use rand::Rng;

/// Isotropy groups of one representative per orbit.
fn isotropy_profile(g: &FiniteGroupoid) -> Vec<morita_core::FiniteGroup> {
    orbits(g).iter().map(|o| pi1_finite(g, o[0]).unwrap()).collect()
}

/// Orbits match up with isomorphic isotropy, by greedy matching.
fn same_profile(g: &FiniteGroupoid, h: &FiniteGroupoid) -> bool {
    let mut rest = isotropy_profile(h);
    for a in isotropy_profile(g) {
        match rest.iter().position(|b| b.is_isomorphic(&a)) {
            Some(i) => {
                rest.swap_remove(i);
            }
            None => return false,
        }
    }
    rest.is_empty()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_groupoids_are_valid(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let g = gen::random_groupoid(&mut rng, 6);
        prop_assert!(validate_groupoid(&g).is_valid());
        let s = gen::shuffle(&mut rng, &g);
        prop_assert!(validate_groupoid(&s).is_valid());
        prop_assert_eq!(orbits(&s).len(), orbits(&g).len());
    }

    #[test]
    fn groupoid_json_round_trip(seed in any::<u64>()) {
        let g = gen::random_groupoid(&mut gen::rng(seed), 6);
        let text = groupoid_to_json(&g).to_string();
        prop_assert_eq!(read_groupoid(&Source::inline(&text)).unwrap(), g);
    }

    #[test]
    fn morita_decision_matches_isotropy_profile(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let (g, h) = if rng.gen_bool(0.5) {
            gen::random_morita_pair(&mut rng, 6)
        } else {
            (gen::random_groupoid(&mut rng, 4), gen::random_groupoid(&mut rng, 4))
        };
        let d = morita_equivalent(&g, &h);
        prop_assert_eq!(d.equivalent, same_profile(&g, &h));
        prop_assert_eq!(morita_equivalent(&h, &g).equivalent, d.equivalent);
        if let Some(w) = &d.witness {
            prop_assert!(is_biprincipal(w));
            prop_assert!(*w.left == g && *w.right == h);
        } else {
            prop_assert!(!d.equivalent);
        }
    }

    #[test]
    fn weak_equivalences_give_biprincipal_bundles(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let g = Arc::new(gen::random_groupoid(&mut rng, 4));
        let w = gen::weak_equivalence_out_of(&mut rng, &g);
        prop_assert!(is_weak_equivalence(&w).holds());
        prop_assert!(is_biprincipal(&bundle_from_functor(&w)));
        prop_assert!(morita_equivalent(&g, &w.target).equivalent);
        prop_assert_eq!(pi0(&g, 0).unwrap().len(), pi0(&w.target, w.obj_map[0]).unwrap().len());
    }

    #[test]
    fn functor_bundles_are_principal(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let g = Arc::new(gen::random_groupoid(&mut rng, 4));
        let f = gen::functor_out_of(&mut rng, &g);
        prop_assert!(f.violations().is_empty());
        prop_assert!(is_principal(&bundle_from_functor(&f)).is_principal());
    }

    #[test]
    fn cocycles_lift_and_round_trip(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let phi = gen::qualifying_functor(&mut rng);
        let cover = GridCover::new(rng.gen_range(1..=2), rng.gen_range(1..=3)).unwrap();
        let c = gen::random_cocycle(&mut rng, cover, phi.target.clone());
        prop_assert!(validate_cocycle(&c).is_valid());
        let text = cocycle_to_json(&c).to_string();
        prop_assert_eq!(&read_cocycle(&Source::inline(&text)).unwrap(), &c);
        let lift = lift_cocycle(&phi, &c, None).unwrap();
        prop_assert!(validate_cocycle(&lift).is_valid());
        prop_assert_eq!(&pushforward(&phi, &lift).unwrap(), &c);
        let other = lift_cocycle(&phi, &c, Some(lift.f[0])).unwrap();
        prop_assert!(cocycles_equivalent(&pushforward(&phi, &other).unwrap(), &c));
        let cech = CechGroupoid::of(&cover);
        prop_assert!(is_principal(&cocycle_to_bundle(&c, &cech).unwrap()).is_principal());
    }
}
