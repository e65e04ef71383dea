//! Seeded random instances: groups, groupoids, functors, cocycles and
//! actions on small complexes. Used by the property tests, the acceptance
//! suite and the benches; every generator is deterministic given the RNG.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cocycle::{Cocycle, GridCover};
use crate::group::FiniteGroup;
use crate::groupoid::{FiniteGroupoid, GroupoidFunctor, SetAction};
use crate::simplicial::{ComplexAction, SimplicialComplex};

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Groups of order at most 12 used as building blocks.
pub fn small_groups() -> Vec<FiniteGroup> {
    let z = FiniteGroup::cyclic;
    vec![
        FiniteGroup::trivial(),
        z(2),
        z(3),
        z(4),
        z(2).direct_product(&z(2)),
        z(5),
        z(6),
        FiniteGroup::symmetric(3),
        z(8),
        FiniteGroup::dihedral(4),
        z(2).direct_product(&z(2)).direct_product(&z(2)),
        FiniteGroup::dihedral(5),
        z(12),
        FiniteGroup::alternating(4),
        z(2).direct_product(&z(6)),
    ]
}

pub fn random_group(rng: &mut GenRng, max_order: usize) -> FiniteGroup {
    let choices: Vec<FiniteGroup> = small_groups().into_iter().filter(|g| g.order() <= max_order).collect();
    choices.choose(rng).expect("trivial group always qualifies").clone()
}

fn permutation(rng: &mut GenRng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Relabels objects and arrows by random permutations.
pub fn shuffle(rng: &mut GenRng, g: &FiniteGroupoid) -> FiniteGroupoid {
    let objs = permutation(rng, g.object_count());
    let arrs = permutation(rng, g.arrow_count());
    g.relabel(&objs, &arrs)
}

/// A disjoint union of one to three transitive groupoids on at most three
/// objects each, with isotropy of order at most `max_isotropy`, shuffled.
pub fn random_groupoid(rng: &mut GenRng, max_isotropy: usize) -> FiniteGroupoid {
    let parts: Vec<FiniteGroupoid> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let k = rng.gen_range(1..=3);
            FiniteGroupoid::transitive(k, &random_group(rng, max_isotropy)).expect("k > 0")
        })
        .collect();
    shuffle(rng, &FiniteGroupoid::disjoint_union(&parts))
}

/// Two Morita equivalent groupoids: the same isotropy groups on a
/// different number of objects per component, in a different order.
pub fn random_morita_pair(rng: &mut GenRng, max_isotropy: usize) -> (FiniteGroupoid, FiniteGroupoid) {
    let groups: Vec<FiniteGroup> = (0..rng.gen_range(1..=3)).map(|_| random_group(rng, max_isotropy)).collect();
    let build = |rng: &mut GenRng| {
        let mut parts: Vec<FiniteGroupoid> = groups
            .iter()
            .map(|g| FiniteGroupoid::transitive(rng.gen_range(1..=3), g).expect("k > 0"))
            .collect();
        parts.shuffle(rng);
        shuffle(rng, &FiniteGroupoid::disjoint_union(&parts))
    };
    (build(rng), build(rng))
}

/// A random functor out of `g`: identity, relabelling, collapse to a point,
/// inclusion into a product with a pair groupoid, or inclusion into a
/// disjoint union.
pub fn functor_out_of(rng: &mut GenRng, g: &Arc<FiniteGroupoid>) -> GroupoidFunctor {
    match rng.gen_range(0..5) {
        0 => GroupoidFunctor::identity(g.clone()),
        1 => weak_equivalence_out_of(rng, g),
        2 => {
            let point = Arc::new(FiniteGroupoid::unit_groupoid(1));
            GroupoidFunctor::new(g.clone(), point, vec![0; g.object_count()], vec![0; g.arrow_count()]).expect("collapse")
        }
        3 => {
            let extra = random_groupoid(rng, 4);
            let target = Arc::new(FiniteGroupoid::disjoint_union(&[(**g).clone(), extra]));
            let obj_map = (0..g.object_count()).collect();
            let arr_map = (0..g.arrow_count()).collect();
            GroupoidFunctor::new(g.clone(), target, obj_map, arr_map).expect("inclusion")
        }
        _ => {
            let other = random_groupoid(rng, 4);
            let y = rng.gen_range(0..other.object_count());
            product_inclusion(g, &other, y)
        }
    }
}

/// `x ↦ (x, y)`, `a ↦ (a, 1_y)` into `g × other`.
fn product_inclusion(g: &Arc<FiniteGroupoid>, other: &FiniteGroupoid, y: usize) -> GroupoidFunctor {
    let target = Arc::new(g.product(other));
    let obj_map = (0..g.object_count()).map(|x| x * other.object_count() + y).collect();
    let arr_map = (0..g.arrow_count()).map(|a| a * other.arrow_count() + other.unit(y)).collect();
    GroupoidFunctor::new(g.clone(), target, obj_map, arr_map).expect("product inclusion")
}

/// A weak equivalence out of `g`: a relabelling isomorphism, or the
/// inclusion into `g × Pair(k)`.
pub fn weak_equivalence_out_of(rng: &mut GenRng, g: &Arc<FiniteGroupoid>) -> GroupoidFunctor {
    if rng.gen_bool(0.5) {
        let objs = permutation(rng, g.object_count());
        let arrs = permutation(rng, g.arrow_count());
        let target = Arc::new(g.relabel(&objs, &arrs));
        GroupoidFunctor::new(g.clone(), target, objs, arrs).expect("relabelling")
    } else {
        let k = rng.gen_range(1..=3);
        let pair = FiniteGroupoid::pair_groupoid(k).expect("k > 0");
        product_inclusion(g, &pair, rng.gen_range(0..k))
    }
}

/// Functors satisfying the lifting hypotheses: a product projection, a
/// group epimorphism, a surjection of pair groupoids, or a translation
/// groupoid forgetting to its group.
pub fn qualifying_functor(rng: &mut GenRng) -> GroupoidFunctor {
    match rng.gen_range(0..4) {
        0 => {
            let base = Arc::new(random_groupoid(rng, 6));
            let fiber = random_groupoid(rng, 3);
            let source = Arc::new(base.product(&fiber));
            let (n0, n1) = (fiber.object_count(), fiber.arrow_count());
            let obj_map = (0..source.object_count()).map(|x| x / n0).collect();
            let arr_map = (0..source.arrow_count()).map(|a| a / n1).collect();
            GroupoidFunctor::new(source, base, obj_map, arr_map).expect("projection")
        }
        1 => {
            let g = random_group(rng, 12);
            let normal = random_normal_subgroup(rng, &g);
            let (q, map) = g.quotient(&normal).expect("normal");
            GroupoidFunctor::from_group_hom(&g, &q, map).expect("quotient map")
        }
        2 => {
            let j = rng.gen_range(1..=3);
            let k = rng.gen_range(j..=4);
            let mut s: Vec<usize> = (0..k).map(|i| if i < j { i } else { rng.gen_range(0..j) }).collect();
            s.shuffle(rng);
            let source = Arc::new(FiniteGroupoid::pair_groupoid(k).expect("k > 0"));
            let target = Arc::new(FiniteGroupoid::pair_groupoid(j).expect("j > 0"));
            let arr_map = (0..k * k).map(|a| s[a / k] * j + s[a % k]).collect();
            GroupoidFunctor::new(source, target, s, arr_map).expect("pair surjection")
        }
        _ => {
            let g = random_group(rng, 6);
            let carrier = rng.gen_range(1..=4);
            let action = random_set_action(rng, &g, carrier);
            let source = Arc::new(FiniteGroupoid::translation_groupoid(&action));
            let n = g.order();
            let arr_map = (0..source.arrow_count()).map(|a| a % n).collect();
            let target = Arc::new(FiniteGroupoid::group_as_groupoid(&g));
            GroupoidFunctor::new(source, target, vec![0; action.carrier], arr_map).expect("forgetful functor")
        }
    }
}

/// A normal subgroup: the normal closure of a random element (or trivial).
pub fn random_normal_subgroup(rng: &mut GenRng, g: &FiniteGroup) -> Vec<usize> {
    let x = rng.gen_range(0..g.order());
    let conjugates: Vec<usize> = (0..g.order()).map(|h| g.mul(g.mul(h, x), g.inv(h))).collect();
    g.subgroup_generated(&conjugates)
}

/// An action on the disjoint union of coset spaces `G/H` of random cyclic
/// subgroups, truncated to `carrier` points by taking whole orbits.
pub fn random_set_action(rng: &mut GenRng, g: &FiniteGroup, carrier: usize) -> SetAction {
    let mut points: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut orbit_sizes = Vec::new();
    while points.len() < carrier {
        let h = g.subgroup_generated(&[rng.gen_range(0..g.order())]);
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for x in 0..g.order() {
            let mut c: Vec<usize> = h.iter().map(|&k| g.mul(x, k)).collect();
            c.sort_unstable();
            if !cosets.contains(&c) {
                cosets.push(c);
            }
        }
        let orbit = orbit_sizes.len();
        orbit_sizes.push(cosets.len());
        points.extend(cosets.into_iter().map(|c| (orbit, c)));
    }
    let n = points.len();
    SetAction::from_fn(g.clone(), n, |x, p| {
        let (orbit, coset) = &points[p];
        let mut c: Vec<usize> = coset.iter().map(|&k| g.mul(x, k)).collect();
        c.sort_unstable();
        points.iter().position(|(o, d)| o == orbit && *d == c).expect("cosets are permuted")
    })
    .expect("left multiplication on cosets")
}

/// A coboundary cocycle with random arrows out of a random object.
pub fn random_cocycle(rng: &mut GenRng, cover: GridCover, groupoid: Arc<FiniteGroupoid>) -> Cocycle {
    let s = rng.gen_range(0..groupoid.object_count());
    let out = groupoid.arrows_from(s);
    let lambda: Vec<usize> = (0..cover.cell_count()).map(|_| *out.choose(rng).expect("units")).collect();
    Cocycle::coboundary(cover, groupoid, &lambda).expect("coboundary")
}

/// Action generated by permutations of the vertices.
pub fn permutation_action(complex: SimplicialComplex, generators: &[Vec<usize>]) -> crate::Result<ComplexAction> {
    let (group, perms) = FiniteGroup::permutation_group(complex.vertex_count(), generators)?;
    ComplexAction::new(group, complex, perms)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionKind {
    Free,
    Fixed,
    Mixed,
}

/// Largest number of simplices of a random complex.
pub const MAX_SIMPLICES: usize = 60;

/// Left multiplication on a Cayley graph of a random group of order ≤ 6.
fn cayley_action(rng: &mut GenRng) -> ComplexAction {
    let g = random_group(rng, 6);
    let mut gens = g.generating_set();
    if rng.gen_bool(0.5) {
        gens.push(rng.gen_range(0..g.order()));
    }
    let mut edges = Vec::new();
    for x in 0..g.order() {
        for &s in &gens {
            let y = g.mul(x, s);
            if y != x {
                edges.push([x.min(y), x.max(y)]);
            }
        }
    }
    let complex = SimplicialComplex::from_simplices(g.order(), &edges, &[]).expect("Cayley graph");
    ComplexAction::from_fn(g.clone(), complex, |h, x| g.mul(h, x)).expect("left multiplication")
}

fn rotation_action(rng: &mut GenRng) -> ComplexAction {
    let n = rng.gen_range(2..=6);
    let m = n * rng.gen_range(3usize.div_ceil(n)..=12 / n);
    let step = m / n;
    ComplexAction::from_fn(FiniteGroup::cyclic(n), SimplicialComplex::cycle(m).expect("m ≥ 3"), |g, v| (v + step * g) % m)
        .expect("rotation")
}

fn random_graph(rng: &mut GenRng) -> SimplicialComplex {
    let n = rng.gen_range(1..=8);
    let mut edges: Vec<[usize; 2]> = (1..n).map(|v| [rng.gen_range(0..v), v]).collect();
    for _ in 0..rng.gen_range(0..=2) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            edges.push([a.min(b), a.max(b)]);
        }
    }
    SimplicialComplex::from_simplices(n, &edges, &[]).expect("graph")
}

fn fixed_action(rng: &mut GenRng) -> ComplexAction {
    match rng.gen_range(0..4) {
        0 => ComplexAction::trivial(random_group(rng, 6), random_graph(rng)),
        1 => {
            let n = 2 * rng.gen_range(1..=4) + 1;
            permutation_action(SimplicialComplex::path(n).expect("n > 0"), &[(0..n).rev().collect()]).expect("reflection")
        }
        2 => {
            let n = 2 * rng.gen_range(2..=5);
            let flip: Vec<usize> = (0..n).map(|v| (n - v) % n).collect();
            permutation_action(SimplicialComplex::cycle(n).expect("n ≥ 3"), &[flip]).expect("reflection")
        }
        _ => permutation_action(SimplicialComplex::cycle(3).expect("triangle"), &[vec![1, 0, 2], vec![1, 2, 0]]).expect("S3"),
    }
}

/// Extends an action to the cone, fixing the apex.
fn cone_action(a: &ComplexAction) -> ComplexAction {
    let cone = a.complex.cone().expect("graph");
    let apex = a.complex.vertex_count();
    ComplexAction::from_fn(a.group.clone(), cone, |g, v| if v == apex { v } else { a.act(g, v) }).expect("cone action")
}

fn mixed_action(rng: &mut GenRng) -> ComplexAction {
    match rng.gen_range(0..3) {
        0 => cone_action(&cayley_action(rng)),
        1 => cone_action(&rotation_action(rng)),
        _ => {
            let n = 2 * rng.gen_range(2..=5);
            let half: Vec<usize> = (0..n).map(|v| (v + n / 2) % n).collect();
            let flip: Vec<usize> = (0..n).map(|v| (n - v) % n).collect();
            permutation_action(SimplicialComplex::cycle(n).expect("n ≥ 3"), &[half, flip]).expect("Klein four")
        }
    }
}

/// A connected complex with at most [`MAX_SIMPLICES`] simplices and an
/// acting group of order at most 6.
pub fn random_action(rng: &mut GenRng, kind: ActionKind) -> ComplexAction {
    loop {
        let a = match kind {
            ActionKind::Free => {
                if rng.gen_bool(0.5) {
                    cayley_action(rng)
                } else {
                    rotation_action(rng)
                }
            }
            ActionKind::Fixed => fixed_action(rng),
            ActionKind::Mixed => mixed_action(rng),
        };
        if a.complex.simplex_count() <= MAX_SIMPLICES && a.complex.is_connected() && a.group.order() <= 6 {
            return a;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{check_lifting_hypotheses, validate_cocycle};
    use crate::groupoid::validate_groupoid;

    #[test]
    fn generators_are_deterministic_and_valid() {
        let (mut a, mut b) = (rng(7), rng(7));
        for _ in 0..20 {
            let g = random_groupoid(&mut a, 12);
            assert_eq!(g, random_groupoid(&mut b, 12));
            assert!(validate_groupoid(&g).is_valid());
        }
        for _ in 0..20 {
            let f = qualifying_functor(&mut a);
            assert!(check_lifting_hypotheses(&f).is_ok());
            let c = random_cocycle(&mut a, GridCover::new(2, 3).unwrap(), f.target.clone());
            assert!(validate_cocycle(&c).is_valid());
        }
    }

    #[test]
    fn actions_have_the_requested_kind() {
        let mut r = rng(3);
        for _ in 0..10 {
            let free = random_action(&mut r, ActionKind::Free);
            assert!(free.is_free_on_vertices());
            let fixed = random_action(&mut r, ActionKind::Fixed);
            assert!(fixed.group.order() == 1 || !fixed.is_free_on_vertices());
            assert!(random_action(&mut r, ActionKind::Mixed).complex.simplex_count() <= MAX_SIMPLICES);
        }
    }
}
