//! Groupoid-valued cocycles on grid covers of the cube, pushforward along
//! functors, and the cell-by-cell lifting algorithm.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::bibundle::Bibundle;
use crate::error::{invalid, Error, Result};
use crate::groupoid::{ArrowId, FiniteGroupoid, GroupoidFunctor, ObjectId, ValidationReport, Violation};

/// Cover of `Iⁿ` (`n ≤ 2`) by `Nⁿ` closed cells; two cells are adjacent when
/// they intersect (shared faces and corners count). Cells are numbered in
/// lexicographic order of their multi-indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridCover {
    pub dim: usize,
    pub subdivisions: usize,
}

impl GridCover {
    pub fn new(dim: usize, subdivisions: usize) -> Result<Self> {
        if dim > 2 {
            return Err(invalid(format!("grid covers exist in dimensions 0..=2, not {dim}")));
        }
        if subdivisions == 0 {
            return Err(invalid("a grid cover needs at least one subdivision"));
        }
        Ok(GridCover { dim, subdivisions })
    }

    pub fn cell_count(&self) -> usize {
        self.subdivisions.pow(self.dim as u32)
    }

    /// Zero-based multi-index of a cell.
    pub fn multi_index(&self, cell: usize) -> Vec<usize> {
        let n = self.subdivisions;
        let mut out = vec![0; self.dim];
        let mut c = cell;
        for k in (0..self.dim).rev() {
            out[k] = c % n;
            c /= n;
        }
        out
    }

    pub fn cell_of(&self, index: &[usize]) -> Option<usize> {
        if index.len() != self.dim || index.iter().any(|&i| i >= self.subdivisions) {
            return None;
        }
        Some(index.iter().fold(0, |acc, &i| acc * self.subdivisions + i))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        let (x, y) = (self.multi_index(a), self.multi_index(b));
        x.iter().zip(&y).all(|(&i, &j)| i.abs_diff(j) <= 1)
    }

    /// Adjacent cells of `a`, including `a`, in increasing order.
    pub fn neighbours(&self, a: usize) -> Vec<usize> {
        (0..self.cell_count()).filter(|&b| self.adjacent(a, b)).collect()
    }

    /// Atoms of the cube: the open faces of the grid, each with the set of
    /// closed cells containing it. Atom coordinates live on the doubled grid
    /// `0..=2N` (odd = open interval, even = grid point).
    pub fn atoms(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let m = 2 * self.subdivisions + 1;
        let total = m.pow(self.dim as u32);
        (0..total)
            .map(|a| {
                let mut coord = vec![0; self.dim];
                let mut c = a;
                for k in (0..self.dim).rev() {
                    coord[k] = c % m;
                    c /= m;
                }
                let cells = (0..self.cell_count())
                    .filter(|&cell| {
                        self.multi_index(cell).iter().zip(&coord).all(|(&i, &x)| x == 2 * i + 1 || x == 2 * i || x == 2 * i + 2)
                    })
                    .collect();
                (coord, cells)
            })
            .collect()
    }
}

/// `f_μ` objects and `g_{μν}: f_ν → f_μ` arrows for adjacent cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    pub cover: GridCover,
    pub groupoid: Arc<FiniteGroupoid>,
    pub f: Vec<ObjectId>,
    pub g: BTreeMap<(usize, usize), ArrowId>,
}

impl Cocycle {
    pub fn new(
        cover: GridCover,
        groupoid: Arc<FiniteGroupoid>,
        f: Vec<ObjectId>,
        g: BTreeMap<(usize, usize), ArrowId>,
    ) -> Result<Self> {
        if f.len() != cover.cell_count() {
            return Err(invalid(format!("{} objects for {} cells", f.len(), cover.cell_count())));
        }
        if let Some(&x) = f.iter().find(|&&x| x >= groupoid.object_count()) {
            return Err(Error::UnknownObject(x));
        }
        if let Some((_, &a)) = g.iter().find(|(_, &a)| a >= groupoid.arrow_count()) {
            return Err(Error::UnknownArrow(a));
        }
        if let Some(&(m, n)) = g.keys().find(|&&(m, n)| m >= cover.cell_count() || n >= cover.cell_count() || !cover.adjacent(m, n)) {
            return Err(invalid(format!("transition ({m}, {n}) is not between adjacent cells")));
        }
        Ok(Cocycle { cover, groupoid, f, g })
    }

    /// All objects equal to `a`, all transitions units.
    pub fn constant(cover: GridCover, groupoid: Arc<FiniteGroupoid>, a: ObjectId) -> Result<Self> {
        let unit = groupoid.unit(a);
        let n = cover.cell_count();
        let g = (0..n).flat_map(|m| cover.neighbours(m).into_iter().map(move |k| ((m, k), unit))).collect();
        Cocycle::new(cover, groupoid, vec![a; n], g)
    }

    /// `f_μ = t(λ_μ)`, `g_{μν} = λ_μ λ_ν⁻¹` for arrows `λ_μ` out of a common object.
    pub fn coboundary(cover: GridCover, groupoid: Arc<FiniteGroupoid>, lambda: &[ArrowId]) -> Result<Self> {
        if lambda.len() != cover.cell_count() {
            return Err(invalid("one arrow per cell is required"));
        }
        if lambda.iter().any(|&l| groupoid.src(l) != groupoid.src(lambda[0])) {
            return Err(invalid("coboundary arrows must share their source"));
        }
        let f = lambda.iter().map(|&l| groupoid.tgt(l)).collect();
        let mut g = BTreeMap::new();
        for m in 0..cover.cell_count() {
            for k in cover.neighbours(m) {
                g.insert((m, k), groupoid.mul(lambda[m], groupoid.inv(lambda[k])));
            }
        }
        Cocycle::new(cover, groupoid, f, g)
    }

    pub fn transition(&self, m: usize, n: usize) -> Option<ArrowId> {
        self.g.get(&(m, n)).copied()
    }
}

/// Lists missing transitions, endpoint mismatches, non-unit diagonal
/// entries and failures of `g_{μν} g_{νκ} = g_{μκ}`.
pub fn validate_cocycle(c: &Cocycle) -> ValidationReport {
    let gr = &*c.groupoid;
    let cover = &c.cover;
    let mut r = ValidationReport::default();
    let n = cover.cell_count();
    for m in 0..n {
        for k in cover.neighbours(m) {
            match c.transition(m, k) {
                None => r.violations.push(Violation { axiom: "missing transition", tuple: vec![m, k] }),
                Some(a) => {
                    if gr.src(a) != c.f[k] || gr.tgt(a) != c.f[m] {
                        r.violations.push(Violation { axiom: "transition endpoints differ from cell objects", tuple: vec![m, k, a] });
                    }
                    if m == k && a != gr.unit(c.f[m]) {
                        r.violations.push(Violation { axiom: "diagonal transition is not a unit", tuple: vec![m] });
                    }
                }
            }
        }
    }
    if !r.is_valid() {
        return r;
    }
    for m in 0..n {
        for k in cover.neighbours(m) {
            for l in cover.neighbours(k) {
                if !cover.adjacent(m, l) {
                    continue;
                }
                let (a, b, ab) = (c.g[&(m, k)], c.g[&(k, l)], c.g[&(m, l)]);
                if gr.comp(a, b) != Some(ab) {
                    r.violations.push(Violation { axiom: "cocycle condition fails", tuple: vec![m, k, l] });
                }
            }
        }
    }
    r
}

/// `{φ ∘ f_μ, φ ∘ g_{μν}}`.
pub fn pushforward(phi: &GroupoidFunctor, c: &Cocycle) -> Result<Cocycle> {
    if *phi.source != *c.groupoid {
        return Err(Error::Mismatch("cocycle groupoid is not the functor's source".into()));
    }
    Ok(Cocycle {
        cover: c.cover,
        groupoid: phi.target.clone(),
        f: c.f.iter().map(|&x| phi.obj_map[x]).collect(),
        g: c.g.iter().map(|(&k, &a)| (k, phi.arr_map[a])).collect(),
    })
}

/// Checks that `φ` is surjective on objects and that `(φ, s): H₁ → G₁ ×_{G₀} H₀`
/// is surjective; names the first missing element.
pub fn check_lifting_hypotheses(phi: &GroupoidFunctor) -> Result<()> {
    let (h, g) = (&*phi.source, &*phi.target);
    let mut hit = vec![false; g.object_count()];
    for &x in &phi.obj_map {
        hit[x] = true;
    }
    if let Some(a) = hit.iter().position(|&b| !b) {
        return Err(Error::Unliftable(format!("object {a} has no preimage")));
    }
    let mut covered = std::collections::HashSet::new();
    for a in 0..h.arrow_count() {
        covered.insert((phi.arr_map[a], h.src(a)));
    }
    for y in 0..h.object_count() {
        for ga in g.arrows_from(phi.obj_map[y]) {
            if !covered.contains(&(ga, y)) {
                return Err(Error::Unliftable(format!("arrow {ga} has no lift starting at object {y}")));
            }
        }
    }
    Ok(())
}

/// Lifts a cocycle along `φ`. Cells are processed in lexicographic order:
/// the first cell takes `seed` (default: least preimage of `f_0`); each later
/// cell lifts its transition to the least earlier neighbour (least arrow id),
/// which fixes `F_μ`; the remaining transitions are the composites forced by
/// the already lifted data.
pub fn lift_cocycle(phi: &GroupoidFunctor, c: &Cocycle, seed: Option<ObjectId>) -> Result<Cocycle> {
    if *phi.target != *c.groupoid {
        return Err(Error::Mismatch("cocycle groupoid is not the functor's target".into()));
    }
    check_lifting_hypotheses(phi)?;
    let report = validate_cocycle(c);
    if let Some(v) = report.violations.first() {
        return Err(invalid(format!("input is not a cocycle: {v}")));
    }
    let h = &*phi.source;
    let n = c.cover.cell_count();
    let f0 = match seed {
        Some(y) if y < h.object_count() && phi.obj_map[y] == c.f[0] => y,
        Some(y) => return Err(Error::Unliftable(format!("seed {y} does not map to the first cell's object"))),
        None => (0..h.object_count()).find(|&y| phi.obj_map[y] == c.f[0]).expect("surjective on objects"),
    };
    let mut lifts_by_pair: HashMap<(ArrowId, ObjectId), ArrowId> = HashMap::new();
    for a in (0..h.arrow_count()).rev() {
        lifts_by_pair.insert((phi.arr_map[a], h.src(a)), a);
    }
    // tree[μ]: arrow F_0 → F_μ in H
    let mut f = vec![f0];
    let mut tree = vec![h.unit(f0)];
    for m in 1..n {
        let parent = c.cover.neighbours(m).into_iter().find(|&k| k < m).expect("earlier neighbour in a grid");
        let want = c.g[&(m, parent)];
        let lifted = *lifts_by_pair
            .get(&(want, f[parent]))
            .ok_or_else(|| Error::Unliftable(format!("transition ({m}, {parent}) = arrow {want} has no lift")))?;
        f.push(h.tgt(lifted));
        tree.push(h.mul(lifted, tree[parent]));
    }
    let mut g = BTreeMap::new();
    for m in 0..n {
        for k in c.cover.neighbours(m) {
            g.insert((m, k), h.mul(tree[m], h.inv(tree[k])));
        }
    }
    let lifted = Cocycle::new(c.cover, phi.source.clone(), f, g)?;
    debug_assert!(validate_cocycle(&lifted).is_valid());
    Ok(lifted)
}

/// Searches `λ_μ: f_μ → f'_μ` with `g'_{μν} = λ_μ g_{μν} λ_ν⁻¹`; returns the
/// first family found, trying `λ_0` in increasing arrow order.
pub fn cocycle_equivalence(c: &Cocycle, d: &Cocycle) -> Option<Vec<ArrowId>> {
    if c.cover != d.cover || *c.groupoid != *d.groupoid {
        return None;
    }
    let gr = &*c.groupoid;
    let n = c.cover.cell_count();
    for l0 in gr.arrows_between(c.f[0], d.f[0]) {
        let mut lambda = vec![l0];
        for m in 1..n {
            let p = c.cover.neighbours(m).into_iter().find(|&k| k < m).expect("earlier neighbour");
            lambda.push(gr.mul(gr.mul(d.g[&(m, p)], lambda[p]), c.g[&(p, m)]));
        }
        let ok = c.g.iter().all(|(&(m, k), &a)| d.g.get(&(m, k)) == Some(&gr.mul(gr.mul(lambda[m], a), gr.inv(lambda[k]))));
        if ok {
            return Some(lambda);
        }
    }
    None
}

pub fn cocycles_equivalent(c: &Cocycle, d: &Cocycle) -> bool {
    cocycle_equivalence(c, d).is_some()
}

/// Čech groupoid of a grid cover over its atoms: objects `(atom, cell)`
/// with the atom inside the cell, one arrow `(atom, μ ← ν)` per pair of
/// cells containing the atom.
#[derive(Debug, Clone)]
pub struct CechGroupoid {
    pub groupoid: Arc<FiniteGroupoid>,
    pub objects: Vec<(usize, usize)>,
    pub arrows: Vec<(usize, usize, usize)>,
}

impl CechGroupoid {
    pub fn of(cover: &GridCover) -> Self {
        let atoms = cover.atoms();
        let mut objects = Vec::new();
        let mut obj_index = HashMap::new();
        for (a, (_, cells)) in atoms.iter().enumerate() {
            for &m in cells {
                obj_index.insert((a, m), objects.len());
                objects.push((a, m));
            }
        }
        let mut arrows = Vec::new();
        let mut arr_index = HashMap::new();
        for (a, (_, cells)) in atoms.iter().enumerate() {
            for &m in cells {
                for &k in cells {
                    arr_index.insert((a, m, k), arrows.len());
                    arrows.push((a, m, k));
                }
            }
        }
        let src = arrows.iter().map(|&(a, _, k)| obj_index[&(a, k)]).collect();
        let tgt = arrows.iter().map(|&(a, m, _)| obj_index[&(a, m)]).collect();
        let inv = arrows.iter().map(|&(a, m, k)| arr_index[&(a, k, m)]).collect();
        let unit = objects.iter().map(|&(a, m)| arr_index[&(a, m, m)]).collect();
        let groupoid = FiniteGroupoid::from_fn(objects.len(), src, tgt, inv, unit, |x, y| {
            let (a, m, _) = arrows[x];
            let (_, _, k) = arrows[y];
            arr_index[&(a, m, k)]
        });
        CechGroupoid { groupoid: Arc::new(groupoid), objects, arrows }
    }
}

/// The principal `G`-bundle over the Čech groupoid determined by a cocycle:
/// points `(atom, μ, g)` with `t(g) = f_μ`, anchored at `(atom, μ)` and `s(g)`;
/// the Čech arrow `(atom, μ ← ν)` acts by `g_{μν}`, `G` by right multiplication.
pub fn cocycle_to_bundle(c: &Cocycle, cech: &CechGroupoid) -> Result<Bibundle> {
    let report = validate_cocycle(c);
    if let Some(v) = report.violations.first() {
        return Err(invalid(format!("not a cocycle: {v}")));
    }
    let gr = &*c.groupoid;
    let mut points = Vec::new();
    let mut index = HashMap::new();
    for (o, &(_, m)) in cech.objects.iter().enumerate() {
        for a in 0..gr.arrow_count() {
            if gr.tgt(a) == c.f[m] {
                index.insert((o, a), points.len());
                points.push((o, a));
            }
        }
    }
    let obj_of: HashMap<(usize, usize), usize> = cech.objects.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let pi = points.iter().map(|&(o, _)| o).collect();
    let eps = points.iter().map(|&(_, a)| gr.src(a)).collect();
    let mut left = Vec::new();
    for (h, &(atom, m, k)) in cech.arrows.iter().enumerate() {
        let src = obj_of[&(atom, k)];
        let tgt = obj_of[&(atom, m)];
        for a in 0..gr.arrow_count() {
            if let Some(&p) = index.get(&(src, a)) {
                let moved = gr.mul(c.g[&(m, k)], a);
                left.push((h, p, index[&(tgt, moved)]));
            }
        }
    }
    let mut right = Vec::new();
    for (p, &(o, a)) in points.iter().enumerate() {
        for b in 0..gr.arrow_count() {
            if gr.tgt(b) == gr.src(a) {
                right.push((p, b, index[&(o, gr.mul(a, b))]));
            }
        }
    }
    Bibundle::new(cech.groupoid.clone(), c.groupoid.clone(), points.len(), pi, eps, left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bibundle::{bibundle_iso_search, bundle_from_functor, is_principal, tensor};
    use crate::group::FiniteGroup;

    fn z(n: usize) -> Arc<FiniteGroupoid> {
        Arc::new(FiniteGroupoid::group_as_groupoid(&FiniteGroup::cyclic(n)))
    }

    /// Z2-cocycle on the 2×2 grid with a nontrivial transition between the
    /// left and right columns.
    fn split_cocycle() -> Cocycle {
        let cover = GridCover::new(2, 2).unwrap();
        let lambda: Vec<ArrowId> = (0..4).map(|m| cover.multi_index(m)[1]).collect();
        Cocycle::coboundary(cover, z(2), &lambda).unwrap()
    }

    #[test]
    fn validation() {
        let cover = GridCover::new(2, 3).unwrap();
        let c = Cocycle::constant(cover, z(3), 0).unwrap();
        assert!(validate_cocycle(&c).is_valid());
        let pair = Arc::new(FiniteGroupoid::pair_groupoid(2).unwrap());
        let mut bad = Cocycle::constant(cover, pair, 0).unwrap();
        // arrow (1, 0) goes 0 -> 1, so its source matches but target does not
        bad.g.insert((0, 1), 2);
        assert!(!validate_cocycle(&bad).is_valid());
        assert!(validate_cocycle(&split_cocycle()).is_valid());
    }

    #[test]
    fn lift_along_epimorphism() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let epi = GroupoidFunctor::from_group_hom(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let c = split_cocycle();
        let lift = lift_cocycle(&epi, &c, None).unwrap();
        assert!(validate_cocycle(&lift).is_valid());
        assert_eq!(pushforward(&epi, &lift).unwrap(), c);
        assert!([1, 3].contains(&lift.g[&(1, 0)]));
        let id = GroupoidFunctor::identity(z(2));
        assert_eq!(lift_cocycle(&id, &c, None).unwrap(), c);
    }

    #[test]
    fn constant_lifts_to_constant() {
        let pair = Arc::new(FiniteGroupoid::pair_groupoid(3).unwrap());
        let point = Arc::new(FiniteGroupoid::unit_groupoid(1));
        let collapse = GroupoidFunctor::new(pair.clone(), point.clone(), vec![0; 3], vec![0; 9]).unwrap();
        let c = Cocycle::constant(GridCover::new(2, 3).unwrap(), point, 0).unwrap();
        let lift = lift_cocycle(&collapse, &c, Some(2)).unwrap();
        assert_eq!(lift.f[0], 2);
        assert!(validate_cocycle(&lift).is_valid());
        assert_eq!(pushforward(&collapse, &lift).unwrap(), c);
        assert!(cocycles_equivalent(&lift, &Cocycle::constant(c.cover, pair, 2).unwrap()));
    }

    #[test]
    fn hypotheses_are_checked() {
        let incl = GroupoidFunctor::from_group_hom(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4), vec![0, 2]).unwrap();
        let c = Cocycle::coboundary(GridCover::new(1, 2).unwrap(), z(4), &[0, 1]).unwrap();
        assert!(matches!(lift_cocycle(&incl, &c, None), Err(Error::Unliftable(_))));
    }

    #[test]
    fn bundles_from_cocycles() {
        let cover = GridCover::new(2, 2).unwrap();
        let cech = CechGroupoid::of(&cover);
        assert_eq!(crate::groupoid::orbits(&cech.groupoid).len(), 25);
        let c = split_cocycle();
        let b = cocycle_to_bundle(&c, &cech).unwrap();
        assert!(is_principal(&b).is_principal());
        let triv = cocycle_to_bundle(&Cocycle::constant(cover, z(2), 0).unwrap(), &cech).unwrap();
        assert!(cocycles_equivalent(&c, &Cocycle::constant(cover, z(2), 0).unwrap()));
        assert!(bibundle_iso_search(&b, &triv).is_some());

        let epi = GroupoidFunctor::from_group_hom(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(2), vec![0, 1, 0, 1]).unwrap();
        let lifted = lift_cocycle(&epi, &c, None).unwrap();
        let direct = cocycle_to_bundle(&pushforward(&epi, &lifted).unwrap(), &cech).unwrap();
        let extended = tensor(&cocycle_to_bundle(&lifted, &cech).unwrap(), &bundle_from_functor(&epi)).unwrap();
        assert!(bibundle_iso_search(&direct, &extended).is_some());
    }
}
