use morita_core::fpgroup::coset::{finite_order, probably_isomorphic_to_group, IsoVerdict};
use morita_core::fpgroup::presentation::GroupPresentation;
use morita_core::fpgroup::{invariant_factors, Lattice};
use morita_core::gen::{self, ActionKind};
use morita_core::group::FiniteGroup;
use morita_core::homotopy::{borel_pi1, check_example4_sequence, eff_translation};
use morita_core::report::Verdict;
use morita_core::simplicial::{ComplexAction, SimplicialComplex};
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trivial_action_on_a_path_recovers_the_group(seed in any::<u64>(), n in 1usize..=6) {
        let g = gen::random_group(&mut gen::rng(seed), 6);
        let a = ComplexAction::trivial(g.clone(), SimplicialComplex::path(n).unwrap());
        let model = borel_pi1(&a, n - 1).unwrap();
        prop_assert_eq!(finite_order(model.presentation()), Some(g.order()));
        prop_assert_eq!(probably_isomorphic_to_group(model.presentation(), &g), IsoVerdict::YesCertified);
    }

    #[test]
    fn trivial_action_on_a_cycle_adds_a_free_factor(seed in any::<u64>(), m in 3usize..=7) {
        let g = gen::random_group(&mut gen::rng(seed), 6);
        let a = ComplexAction::trivial(g.clone(), SimplicialComplex::cycle(m).unwrap());
        let ab = borel_pi1(&a, 0).unwrap().presentation().abelianization();
        let ag = GroupPresentation::of_group(&g).presentation.abelianization();
        prop_assert_eq!(ab.rank, 1 + ag.rank);
        prop_assert_eq!(ab.torsion, ag.torsion);
    }

    #[test]
    fn rotations_of_a_cycle_have_infinite_cyclic_pi1(n in 1usize..=6, k in 1usize..=3) {
        let m = (n * k).max(3).div_ceil(n) * n;
        let step = m / n;
        let a = ComplexAction::from_fn(FiniteGroup::cyclic(n), SimplicialComplex::cycle(m).unwrap(), |g, v| (v + step * g) % m).unwrap();
        let model = borel_pi1(&a, 0).unwrap();
        let p = model.presentation();
        let ab = p.abelianization();
        prop_assert_eq!(ab.rank, 1);
        prop_assert!(ab.torsion.is_empty());
        let image = Lattice::spanned_by(&model.fiber_map.abelian_matrix()).sum(&p.relator_lattice());
        let index: BigInt = invariant_factors(&image.basis_matrix()).iter().product();
        prop_assert_eq!(index, BigInt::from(n));
    }

    #[test]
    fn basepoint_does_not_change_pi1(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let a = gen::random_action(&mut rng, ActionKind::Mixed);
        let n = a.complex.vertex_count();
        let at = |v: usize| borel_pi1(&a, v).unwrap().presentation().abelianization();
        let first = at(0);
        prop_assert_eq!(at(n - 1), first.clone());
        prop_assert_eq!(at(a.act(a.group.order() - 1, 0)), first);
    }

    #[test]
    fn random_actions_satisfy_the_sequence(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let kind = [ActionKind::Free, ActionKind::Fixed, ActionKind::Mixed][(seed % 3) as usize];
        let a = gen::random_action(&mut rng, kind);
        let r = check_example4_sequence(&a, 0).unwrap();
        prop_assert!(r.overall <= Verdict::ExactAbelianOnly, "{}", r);
        prop_assert!(r.hom_signature);
        let eff = eff_translation(&a).unwrap();
        prop_assert_eq!(eff.kernel.len() * eff.quotient.group.order(), a.group.order());
    }
}
