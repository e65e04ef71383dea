//! Counting homomorphisms from a presented group into a small finite group.

use super::presentation::{gen_of, GroupPresentation};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::par;

pub const HOM_COUNT_GUARD: u64 = 10_000_000;

/// Relators bucketed by the last generator they mention, so each one is
/// tested as soon as its letters are all assigned.
struct Plan {
    gens: usize,
    checks: Vec<Vec<Vec<(usize, bool)>>>,
}

impl Plan {
    fn new(p: &GroupPresentation, target: &FiniteGroup) -> Result<Plan> {
        let gens = p.generator_count();
        let space = (target.order() as u64).checked_pow(gens as u32);
        if space.is_none_or(|s| s > HOM_COUNT_GUARD) {
            return Err(Error::Guard(format!(
                "|T|^n = {}^{} exceeds {}",
                target.order(),
                gens,
                HOM_COUNT_GUARD
            )));
        }
        let mut checks = vec![Vec::new(); gens];
        for r in p.relators() {
            let last = r.iter().map(|&l| gen_of(l)).max().expect("relators are nonempty");
            checks[last].push(r.iter().map(|&l| (gen_of(l), l > 0)).collect());
        }
        Ok(Plan { gens, checks })
    }

    fn holds(&self, t: &FiniteGroup, depth: usize, images: &[usize]) -> bool {
        self.checks[depth].iter().all(|r| {
            let v = r.iter().fold(t.identity(), |acc, &(g, pos)| {
                t.mul(acc, if pos { images[g] } else { t.inv(images[g]) })
            });
            v == t.identity()
        })
    }

    fn count_from(&self, t: &FiniteGroup, images: &mut Vec<usize>) -> u64 {
        let depth = images.len();
        if depth == self.gens {
            return 1;
        }
        let mut total = 0;
        for x in 0..t.order() {
            images.push(x);
            if self.holds(t, depth, images) {
                total += self.count_from(t, images);
            }
            images.pop();
        }
        total
    }
}

/// Number of generator assignments into `target` satisfying every relator.
///
/// Errors when `|target|^n` exceeds [`HOM_COUNT_GUARD`]. Callers wanting
/// larger presentations should simplify first; the count is a Tietze invariant.
pub fn hom_count(p: &GroupPresentation, target: &FiniteGroup) -> Result<u64> {
    let plan = Plan::new(p, target)?;
    if plan.gens == 0 {
        return Ok(1);
    }
    Ok(par::sum_range(target.order(), |x| {
        let mut images = vec![x];
        if plan.holds(target, 0, &images) {
            plan.count_from(target, &mut images)
        } else {
            0
        }
    }))
}

pub fn hom_count_sequential(p: &GroupPresentation, target: &FiniteGroup) -> Result<u64> {
    let plan = Plan::new(p, target)?;
    Ok(plan.count_from(target, &mut Vec::new()))
}

/// Z₂, Z₃, Z₄, S₃, D₄, A₄, S₄.
pub fn default_targets() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("Z2", FiniteGroup::cyclic(2)),
        ("Z3", FiniteGroup::cyclic(3)),
        ("Z4", FiniteGroup::cyclic(4)),
        ("S3", FiniteGroup::symmetric(3)),
        ("D4", FiniteGroup::dihedral(4)),
        ("A4", FiniteGroup::alternating(4)),
        ("S4", FiniteGroup::symmetric(4)),
    ]
}

pub fn hom_signature(p: &GroupPresentation, targets: &[FiniteGroup]) -> Result<Vec<u64>> {
    targets.iter().map(|t| hom_count(p, t)).collect()
}

/// Signature against [`default_targets`], computed on the Tietze-simplified
/// presentation.
pub fn default_signature(p: &GroupPresentation) -> Result<Vec<u64>> {
    let simple = p.simplify().presentation;
    let targets: Vec<FiniteGroup> = default_targets().into_iter().map(|(_, g)| g).collect();
    hom_signature(&simple, &targets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(n: usize, rels: &[&[i32]]) -> GroupPresentation {
        GroupPresentation::new(n, rels.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn small_counts() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(hom_count(&pres(1, &[&[1, 1]]), &s3).unwrap(), 4);
        assert_eq!(hom_count(&GroupPresentation::trivial(), &s3).unwrap(), 1);
        assert_eq!(hom_count(&GroupPresentation::free(2), &s3).unwrap(), 36);
    }

    #[test]
    fn parallel_matches_sequential() {
        let p = pres(2, &[&[1, 1, 1], &[2, 2], &[1, 2, 1, 2]]);
        for (_, t) in default_targets() {
            assert_eq!(hom_count(&p, &t).unwrap(), hom_count_sequential(&p, &t).unwrap());
        }
    }

    #[test]
    fn guard_is_enforced() {
        let big = GroupPresentation::free(6);
        assert!(matches!(hom_count(&big, &FiniteGroup::symmetric(4)), Err(Error::Guard(_))));
    }
}
