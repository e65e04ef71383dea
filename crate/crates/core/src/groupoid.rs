//! Finite discrete groupoids, functors between them, and set actions.
//!
//! Objects and arrows are dense integer ids. Structure maps are stored as
//! dense arrays; the partial composition is a map keyed by the composable
//! pair `(g, h)` with `src(g) == tgt(h)`, read as "first `h`, then `g`".

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::error::{invalid, Error, Result};
use crate::group::FiniteGroup;

pub type ObjectId = usize;
pub type ArrowId = usize;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    n_objects: usize,
    src: Vec<u32>,
    tgt: Vec<u32>,
    comp: HashMap<(u32, u32), u32>,
    inv: Vec<u32>,
    unit: Vec<u32>,
}

/// One violated axiom, with the offending tuple rendered for humans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub tuple: Vec<usize>,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} at {:?}", self.axiom, self.tuple)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, axiom: &'static str, tuple: Vec<usize>) {
        self.violations.push(Violation { axiom, tuple });
    }
}

impl FiniteGroupoid {
    /// Raw constructor; no axioms are checked. Use [`validate_groupoid`] or
    /// [`FiniteGroupoid::validated`] before relying on the structure.
    pub fn from_parts(
        n_objects: usize,
        src: Vec<usize>,
        tgt: Vec<usize>,
        comp: impl IntoIterator<Item = ((ArrowId, ArrowId), ArrowId)>,
        inv: Vec<Option<ArrowId>>,
        unit: Vec<Option<ArrowId>>,
    ) -> Result<Self> {
        let n_arrows = src.len();
        if tgt.len() != n_arrows || inv.len() != n_arrows || unit.len() != n_objects {
            return Err(invalid("structure tables have inconsistent lengths"));
        }
        let cast = |v: Option<usize>| v.map_or(NONE, |x| x as u32);
        Ok(FiniteGroupoid {
            n_objects,
            src: src.into_iter().map(|x| x as u32).collect(),
            tgt: tgt.into_iter().map(|x| x as u32).collect(),
            comp: comp.into_iter().map(|((g, h), gh)| ((g as u32, h as u32), gh as u32)).collect(),
            inv: inv.into_iter().map(cast).collect(),
            unit: unit.into_iter().map(cast).collect(),
        })
    }

    /// Builds a groupoid by evaluating `compose(g, h)` on every composable
    /// pair. Callers supply total inverse and unit tables.
    pub(crate) fn from_fn(
        n_objects: usize,
        src: Vec<usize>,
        tgt: Vec<usize>,
        inv: Vec<ArrowId>,
        unit: Vec<ArrowId>,
        compose: impl Fn(ArrowId, ArrowId) -> ArrowId,
    ) -> Self {
        let mut by_tgt: Vec<Vec<ArrowId>> = vec![Vec::new(); n_objects];
        for (h, &t) in tgt.iter().enumerate() {
            by_tgt[t].push(h);
        }
        let mut comp = HashMap::new();
        for g in 0..src.len() {
            for &h in &by_tgt[src[g]] {
                comp.insert((g as u32, h as u32), compose(g, h) as u32);
            }
        }
        FiniteGroupoid {
            n_objects,
            src: src.into_iter().map(|x| x as u32).collect(),
            tgt: tgt.into_iter().map(|x| x as u32).collect(),
            comp,
            inv: inv.into_iter().map(|x| x as u32).collect(),
            unit: unit.into_iter().map(|x| x as u32).collect(),
        }
    }

    pub fn validated(self) -> Result<Self> {
        let report = validate_groupoid(&self);
        match report.violations.first() {
            None => Ok(self),
            Some(v) => Err(invalid(format!(
                "groupoid violates {} axiom(s); first: {v}",
                report.violations.len()
            ))),
        }
    }

    pub fn object_count(&self) -> usize {
        self.n_objects
    }

    pub fn arrow_count(&self) -> usize {
        self.src.len()
    }

    #[inline]
    pub fn src(&self, g: ArrowId) -> ObjectId {
        self.src[g] as usize
    }

    #[inline]
    pub fn tgt(&self, g: ArrowId) -> ObjectId {
        self.tgt[g] as usize
    }

    /// `g ∘ h` (first `h`, then `g`), defined when `src(g) == tgt(h)`.
    #[inline]
    pub fn comp(&self, g: ArrowId, h: ArrowId) -> Option<ArrowId> {
        self.comp.get(&(g as u32, h as u32)).map(|&x| x as usize)
    }

    /// Composition on a pair already known to be composable in a valid groupoid.
    #[inline]
    pub fn mul(&self, g: ArrowId, h: ArrowId) -> ArrowId {
        self.comp(g, h).unwrap_or_else(|| panic!("arrows {g} and {h} are not composable"))
    }

    #[inline]
    pub fn inv(&self, g: ArrowId) -> ArrowId {
        self.inv[g] as usize
    }

    #[inline]
    pub fn unit(&self, x: ObjectId) -> ArrowId {
        self.unit[x] as usize
    }

    pub fn is_unit(&self, g: ArrowId) -> bool {
        self.unit[self.src(g)] as usize == g
    }

    pub fn raw_inv(&self, g: ArrowId) -> Option<ArrowId> {
        (self.inv[g] != NONE).then_some(self.inv[g] as usize)
    }

    pub fn raw_unit(&self, x: ObjectId) -> Option<ArrowId> {
        (self.unit[x] != NONE).then_some(self.unit[x] as usize)
    }

    /// All composition entries, sorted.
    pub fn composition_entries(&self) -> Vec<(ArrowId, ArrowId, ArrowId)> {
        let mut v: Vec<_> =
            self.comp.iter().map(|(&(g, h), &gh)| (g as usize, h as usize, gh as usize)).collect();
        v.sort_unstable();
        v
    }

    /// Arrows grouped by `(src, tgt)`.
    pub fn hom_sets(&self) -> BTreeMap<(ObjectId, ObjectId), Vec<ArrowId>> {
        let mut m: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for g in 0..self.arrow_count() {
            m.entry((self.src(g), self.tgt(g))).or_default().push(g);
        }
        m
    }

    pub fn arrows_from(&self, x: ObjectId) -> Vec<ArrowId> {
        (0..self.arrow_count()).filter(|&g| self.src(g) == x).collect()
    }

    pub fn arrows_between(&self, x: ObjectId, y: ObjectId) -> Vec<ArrowId> {
        (0..self.arrow_count()).filter(|&g| self.src(g) == x && self.tgt(g) == y).collect()
    }

    /// Unit groupoid `X ⇉ X` on `n` points.
    pub fn unit_groupoid(n: usize) -> Self {
        let ids: Vec<usize> = (0..n).collect();
        Self::from_fn(n, ids.clone(), ids.clone(), ids.clone(), ids, |g, _| g)
    }

    /// Pair groupoid on `n` points: arrow `(a, b)` from `b` to `a`
    /// has id `a * n + b`, and `(a, b)(b, c) = (a, c)`.
    pub fn pair_groupoid(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("pair groupoid needs a nonempty set"));
        }
        let src = (0..n * n).map(|g| g % n).collect();
        let tgt = (0..n * n).map(|g| g / n).collect();
        let inv = (0..n * n).map(|g| (g % n) * n + g / n).collect();
        let unit = (0..n).map(|x| x * n + x).collect();
        Ok(Self::from_fn(n, src, tgt, inv, unit, |g, h| (g / n) * n + h % n))
    }

    /// One-object groupoid `G ⇉ *`; arrow ids are group elements.
    pub fn group_as_groupoid(group: &FiniteGroup) -> Self {
        let n = group.order();
        let inv = (0..n).map(|g| group.inv(g)).collect();
        Self::from_fn(1, vec![0; n], vec![0; n], inv, vec![group.identity()], |g, h| group.mul(g, h))
    }

    /// Action groupoid of a left set action: arrow `(g, x)` goes from `x` to
    /// `g·x` and has id `x * |G| + g`.
    pub fn translation_groupoid(action: &SetAction) -> Self {
        let n = action.group.order();
        let m = action.carrier;
        let grp = &action.group;
        let src = (0..m * n).map(|a| a / n).collect();
        let tgt = (0..m * n).map(|a| action.act(a % n, a / n)).collect();
        let inv = (0..m * n).map(|a| action.act(a % n, a / n) * n + grp.inv(a % n)).collect();
        let unit = (0..m).map(|x| x * n + grp.identity()).collect();
        Self::from_fn(m, src, tgt, inv, unit, |g, h| (h / n) * n + grp.mul(g % n, h % n))
    }

    /// Transitive groupoid on `k` objects with isotropy `group`
    /// (isomorphic to `Pair(k) × group`).
    pub fn transitive(k: usize, group: &FiniteGroup) -> Result<Self> {
        Ok(Self::pair_groupoid(k)?.product(&Self::group_as_groupoid(group)))
    }

    /// Product groupoid; object `(x, y)` is `x * |H₀| + y`, arrow `(g, h)`
    /// is `g * |H₁| + h`.
    pub fn product(&self, other: &FiniteGroupoid) -> Self {
        let (n0, m0) = (self.object_count(), other.object_count());
        let m1 = other.arrow_count();
        let total = self.arrow_count() * m1;
        let src = (0..total).map(|a| self.src(a / m1) * m0 + other.src(a % m1)).collect();
        let tgt = (0..total).map(|a| self.tgt(a / m1) * m0 + other.tgt(a % m1)).collect();
        let inv = (0..total).map(|a| self.inv(a / m1) * m1 + other.inv(a % m1)).collect();
        let unit = (0..n0 * m0).map(|x| self.unit(x / m0) * m1 + other.unit(x % m0)).collect();
        Self::from_fn(n0 * m0, src, tgt, inv, unit, |g, h| {
            self.mul(g / m1, h / m1) * m1 + other.mul(g % m1, h % m1)
        })
    }

    /// Disjoint union; ids of later parts are shifted past earlier ones.
    pub fn disjoint_union(parts: &[FiniteGroupoid]) -> Self {
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        let mut inv = Vec::new();
        let mut unit = Vec::new();
        let mut comp = HashMap::new();
        let (mut obase, mut abase) = (0usize, 0usize);
        for p in parts {
            for g in 0..p.arrow_count() {
                src.push((p.src(g) + obase) as u32);
                tgt.push((p.tgt(g) + obase) as u32);
                inv.push((p.inv(g) + abase) as u32);
            }
            for x in 0..p.object_count() {
                unit.push((p.unit(x) + abase) as u32);
            }
            for (&(g, h), &gh) in &p.comp {
                comp.insert((g + abase as u32, h + abase as u32), gh + abase as u32);
            }
            obase += p.object_count();
            abase += p.arrow_count();
        }
        FiniteGroupoid { n_objects: obase, src, tgt, comp, inv, unit }
    }

    /// Renames objects and arrows by the given permutations
    /// (`new_id = perm[old_id]`).
    pub fn relabel(&self, obj_perm: &[usize], arr_perm: &[usize]) -> Self {
        let n1 = self.arrow_count();
        let mut src = vec![0u32; n1];
        let mut tgt = vec![0u32; n1];
        let mut inv = vec![0u32; n1];
        for g in 0..n1 {
            src[arr_perm[g]] = obj_perm[self.src(g)] as u32;
            tgt[arr_perm[g]] = obj_perm[self.tgt(g)] as u32;
            inv[arr_perm[g]] = arr_perm[self.inv(g)] as u32;
        }
        let mut unit = vec![0u32; self.n_objects];
        for x in 0..self.n_objects {
            unit[obj_perm[x]] = arr_perm[self.unit(x)] as u32;
        }
        let comp = self
            .comp
            .iter()
            .map(|(&(g, h), &gh)| {
                ((arr_perm[g as usize] as u32, arr_perm[h as usize] as u32), arr_perm[gh as usize] as u32)
            })
            .collect();
        FiniteGroupoid { n_objects: self.n_objects, src, tgt, comp, inv, unit }
    }

    /// Full subgroupoid on the given objects, with its inclusion functor data
    /// (object map, arrow map into `self`).
    pub fn full_subgroupoid(&self, objects: &[ObjectId]) -> (FiniteGroupoid, Vec<ObjectId>, Vec<ArrowId>) {
        let mut pos = vec![usize::MAX; self.n_objects];
        for (i, &x) in objects.iter().enumerate() {
            pos[x] = i;
        }
        let arrows: Vec<ArrowId> = (0..self.arrow_count())
            .filter(|&g| pos[self.src(g)] != usize::MAX && pos[self.tgt(g)] != usize::MAX)
            .collect();
        let mut apos = vec![usize::MAX; self.arrow_count()];
        for (i, &g) in arrows.iter().enumerate() {
            apos[g] = i;
        }
        let sub = Self::from_fn(
            objects.len(),
            arrows.iter().map(|&g| pos[self.src(g)]).collect(),
            arrows.iter().map(|&g| pos[self.tgt(g)]).collect(),
            arrows.iter().map(|&g| apos[self.inv(g)]).collect(),
            objects.iter().map(|&x| apos[self.unit(x)]).collect(),
            |g, h| apos[self.mul(arrows[g], arrows[h])],
        );
        (sub, objects.to_vec(), arrows)
    }
}

/// Checks every groupoid axiom and lists each violation with its tuple.
pub fn validate_groupoid(g: &FiniteGroupoid) -> ValidationReport {
    let mut r = ValidationReport::default();
    let n0 = g.object_count();
    let n1 = g.arrow_count();
    let mut structural_ok = true;
    for a in 0..n1 {
        if g.src(a) >= n0 || g.tgt(a) >= n0 {
            r.push("source/target out of range", vec![a]);
            structural_ok = false;
        }
        match g.raw_inv(a) {
            None => {
                r.push("inverse undefined", vec![a]);
                structural_ok = false;
            }
            Some(i) if i >= n1 => {
                r.push("inverse out of range", vec![a, i]);
                structural_ok = false;
            }
            _ => {}
        }
    }
    for x in 0..n0 {
        match g.raw_unit(x) {
            None => {
                r.push("unit undefined", vec![x]);
                structural_ok = false;
            }
            Some(u) if u >= n1 => {
                r.push("unit out of range", vec![x, u]);
                structural_ok = false;
            }
            _ => {}
        }
    }
    for (a, b, ab) in g.composition_entries() {
        if a >= n1 || b >= n1 || ab >= n1 {
            r.push("composition entry out of range", vec![a, b, ab]);
            structural_ok = false;
        }
    }
    if !structural_ok {
        return r;
    }
    for (a, b, ab) in g.composition_entries() {
        if g.src(a) != g.tgt(b) {
            r.push("composition defined on non-composable pair", vec![a, b, ab]);
            continue;
        }
        if g.src(ab) != g.src(b) || g.tgt(ab) != g.tgt(a) {
            r.push("composite has wrong endpoints", vec![a, b, ab]);
        }
    }
    let mut by_tgt: Vec<Vec<ArrowId>> = vec![Vec::new(); n0];
    for b in 0..n1 {
        by_tgt[g.tgt(b)].push(b);
    }
    for a in 0..n1 {
        for &b in &by_tgt[g.src(a)] {
            if g.comp(a, b).is_none() {
                r.push("composition undefined on composable pair", vec![a, b]);
            }
        }
    }
    for a in 0..n1 {
        for &b in &by_tgt[g.src(a)] {
            let Some(ab) = g.comp(a, b) else { continue };
            for &c in &by_tgt[g.src(b)] {
                let (Some(bc), Some(ab_c)) = (g.comp(b, c), g.comp(ab, c)) else { continue };
                if g.comp(a, bc) != Some(ab_c) {
                    r.push("associativity", vec![a, b, c]);
                }
            }
        }
    }
    for x in 0..n0 {
        let u = g.unit(x);
        if g.src(u) != x || g.tgt(u) != x {
            r.push("unit has wrong endpoints", vec![x, u]);
        }
    }
    for a in 0..n1 {
        let (s, t) = (g.src(a), g.tgt(a));
        if g.comp(a, g.unit(s)) != Some(a) || g.comp(g.unit(t), a) != Some(a) {
            r.push("unit law", vec![a]);
        }
        let i = g.inv(a);
        if g.src(i) != t || g.tgt(i) != s {
            r.push("inverse has wrong endpoints", vec![a, i]);
        } else if g.comp(a, i) != Some(g.unit(t)) || g.comp(i, a) != Some(g.unit(s)) {
            r.push("inverse law", vec![a, i]);
        }
    }
    r
}

/// Orbit partition of the objects: classes sorted by least element.
pub fn orbits(g: &FiniteGroupoid) -> Vec<Vec<ObjectId>> {
    let mut uf = UnionFind::<usize>::new(g.object_count());
    for a in 0..g.arrow_count() {
        uf.union(g.src(a), g.tgt(a));
    }
    let mut classes: BTreeMap<usize, Vec<ObjectId>> = BTreeMap::new();
    let mut key_of_root: HashMap<usize, usize> = HashMap::new();
    for x in 0..g.object_count() {
        let root = uf.find(x);
        let key = *key_of_root.entry(root).or_insert(x);
        classes.entry(key).or_default().push(x);
    }
    classes.into_values().collect()
}

/// `orbit_index[x]` = position of x's class in [`orbits`].
pub fn orbit_index(g: &FiniteGroupoid) -> Vec<usize> {
    let mut idx = vec![0; g.object_count()];
    for (i, class) in orbits(g).iter().enumerate() {
        for &x in class {
            idx[x] = i;
        }
    }
    idx
}

/// The isotropy group at an object together with its arrows
/// (group element `i` is arrow `arrows[i]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyGroup {
    pub object: ObjectId,
    pub group: FiniteGroup,
    pub arrows: Vec<ArrowId>,
}

impl IsotropyGroup {
    pub fn element_of(&self, arrow: ArrowId) -> Option<usize> {
        self.arrows.iter().position(|&a| a == arrow)
    }
}

pub fn isotropy(g: &FiniteGroupoid, a: ObjectId) -> Result<IsotropyGroup> {
    if a >= g.object_count() {
        return Err(Error::UnknownObject(a));
    }
    let arrows = g.arrows_between(a, a);
    let pos: HashMap<ArrowId, usize> = arrows.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let m = arrows.len();
    let mut table = vec![0u32; m * m];
    for (i, &x) in arrows.iter().enumerate() {
        for (j, &y) in arrows.iter().enumerate() {
            table[i * m + j] = pos[&g.mul(x, y)] as u32;
        }
    }
    Ok(IsotropyGroup { object: a, group: FiniteGroup::from_flat(m, table)?, arrows })
}

/// Base-point change along an arrow `arrow: a1 -> a0`: the isomorphism
/// `isotropy(a0) -> isotropy(a1)`, `x ↦ arrow⁻¹ · x · arrow`.
#[derive(Debug, Clone)]
pub struct BaseChange {
    pub from: IsotropyGroup,
    pub to: IsotropyGroup,
    /// `map[i]` is the image of element `i` of `from.group`.
    pub map: Vec<usize>,
}

pub fn base_change_iso(g: &FiniteGroupoid, arrow: ArrowId, a1: ObjectId, a0: ObjectId) -> Result<BaseChange> {
    if arrow >= g.arrow_count() {
        return Err(Error::UnknownArrow(arrow));
    }
    if g.src(arrow) != a1 || g.tgt(arrow) != a0 {
        return Err(Error::EndpointMismatch { arrow, expected_src: a1, expected_tgt: a0 });
    }
    let from = isotropy(g, a0)?;
    let to = isotropy(g, a1)?;
    let back = g.inv(arrow);
    let map: Vec<usize> = from
        .arrows
        .iter()
        .map(|&x| {
            let y = g.mul(back, g.mul(x, arrow));
            to.element_of(y).expect("conjugate lies in the isotropy group")
        })
        .collect();
    let mut hit = vec![false; to.group.order()];
    for &y in &map {
        hit[y] = true;
    }
    if !from.group.is_homomorphism(&to.group, &map) || hit.iter().any(|h| !h) {
        return Err(invalid("base change is not an isomorphism; groupoid is not valid"));
    }
    Ok(BaseChange { from, to, map })
}

/// A functor between finite groupoids.
#[derive(Debug, Clone)]
pub struct GroupoidFunctor {
    pub source: Arc<FiniteGroupoid>,
    pub target: Arc<FiniteGroupoid>,
    pub obj_map: Vec<ObjectId>,
    pub arr_map: Vec<ArrowId>,
}

impl GroupoidFunctor {
    /// Checks the functor laws against both groupoids.
    pub fn new(
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
        obj_map: Vec<ObjectId>,
        arr_map: Vec<ArrowId>,
    ) -> Result<Self> {
        if obj_map.len() != source.object_count() || arr_map.len() != source.arrow_count() {
            return Err(Error::Mismatch(format!(
                "functor maps have sizes ({}, {}) but source has ({}, {})",
                obj_map.len(),
                arr_map.len(),
                source.object_count(),
                source.arrow_count()
            )));
        }
        if obj_map.iter().any(|&y| y >= target.object_count()) || arr_map.iter().any(|&h| h >= target.arrow_count()) {
            return Err(Error::Mismatch("functor image out of range of target".into()));
        }
        let f = GroupoidFunctor { source, target, obj_map, arr_map };
        if let Some(v) = f.violations().first() {
            return Err(invalid(format!("functor law violated: {v}")));
        }
        Ok(f)
    }

    pub fn violations(&self) -> Vec<Violation> {
        let (h, g) = (&*self.source, &*self.target);
        let mut r = ValidationReport::default();
        for a in 0..h.arrow_count() {
            let fa = self.arr_map[a];
            if g.src(fa) != self.obj_map[h.src(a)] || g.tgt(fa) != self.obj_map[h.tgt(a)] {
                r.push("functor does not commute with source/target", vec![a]);
            }
            if self.arr_map[h.inv(a)] != g.inv(fa) {
                r.push("functor does not commute with inverse", vec![a]);
            }
        }
        for x in 0..h.object_count() {
            if self.arr_map[h.unit(x)] != g.unit(self.obj_map[x]) {
                r.push("functor does not preserve units", vec![x]);
            }
        }
        for (a, b, ab) in h.composition_entries() {
            if g.comp(self.arr_map[a], self.arr_map[b]) != Some(self.arr_map[ab]) {
                r.push("functor does not preserve composition", vec![a, b]);
            }
        }
        r.violations
    }

    pub fn identity(g: Arc<FiniteGroupoid>) -> Self {
        let obj_map = (0..g.object_count()).collect();
        let arr_map = (0..g.arrow_count()).collect();
        GroupoidFunctor { source: g.clone(), target: g, obj_map, arr_map }
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &GroupoidFunctor) -> Result<GroupoidFunctor> {
        if *self.target != *then.source {
            return Err(Error::Mismatch("functors are not composable".into()));
        }
        Ok(GroupoidFunctor {
            source: self.source.clone(),
            target: then.target.clone(),
            obj_map: self.obj_map.iter().map(|&x| then.obj_map[x]).collect(),
            arr_map: self.arr_map.iter().map(|&a| then.arr_map[a]).collect(),
        })
    }

    /// Functor of groups `(H ⇉ *) -> (G ⇉ *)` from an element map.
    pub fn from_group_hom(source: &FiniteGroup, target: &FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if !source.is_homomorphism(target, &map) {
            return Err(invalid("element map is not a homomorphism"));
        }
        Ok(GroupoidFunctor {
            source: Arc::new(FiniteGroupoid::group_as_groupoid(source)),
            target: Arc::new(FiniteGroupoid::group_as_groupoid(target)),
            obj_map: vec![0],
            arr_map: map,
        })
    }

    /// Inclusion `(isotropy(a) ⇉ *) -> G` of the one-object subgroupoid at `a`.
    pub fn isotropy_inclusion(g: Arc<FiniteGroupoid>, a: ObjectId) -> Result<Self> {
        let iso = isotropy(&g, a)?;
        Ok(GroupoidFunctor {
            source: Arc::new(FiniteGroupoid::group_as_groupoid(&iso.group)),
            target: g,
            obj_map: vec![a],
            arr_map: iso.arrows,
        })
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        let mut hit = vec![false; self.target.object_count()];
        for &y in &self.obj_map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// Outcome of [`is_weak_equivalence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakEquivalenceReport {
    /// Target objects not connected to the image of the object map.
    pub unreached_objects: Vec<ObjectId>,
    /// Source object pairs `(x, y)` where the arrow map is not a bijection
    /// `Hom(x, y) -> Hom(φx, φy)`.
    pub not_fully_faithful: Vec<(ObjectId, ObjectId)>,
}

impl WeakEquivalenceReport {
    pub fn holds(&self) -> bool {
        self.unreached_objects.is_empty() && self.not_fully_faithful.is_empty()
    }
}

/// Essential surjectivity plus full faithfulness; over discrete object sets
/// the local-section condition reduces to surjectivity.
pub fn is_weak_equivalence(phi: &GroupoidFunctor) -> WeakEquivalenceReport {
    let (h, g) = (&*phi.source, &*phi.target);
    let mut reached = vec![false; g.object_count()];
    for &y in &phi.obj_map {
        reached[y] = true;
    }
    for a in 0..g.arrow_count() {
        if reached[g.src(a)] {
            reached[g.tgt(a)] = true;
        }
    }
    let unreached_objects = (0..g.object_count()).filter(|&y| !reached[y]).collect();

    let g_homs = g.hom_sets();
    let h_homs = h.hom_sets();
    let mut not_ff = Vec::new();
    for x in 0..h.object_count() {
        for y in 0..h.object_count() {
            let src_arrows = h_homs.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[]);
            let tgt_arrows = g_homs.get(&(phi.obj_map[x], phi.obj_map[y])).map(Vec::as_slice).unwrap_or(&[]);
            let mut images: Vec<ArrowId> = src_arrows.iter().map(|&a| phi.arr_map[a]).collect();
            images.sort_unstable();
            images.dedup();
            if images.len() != src_arrows.len() || images.len() != tgt_arrows.len() {
                not_ff.push((x, y));
            }
        }
    }
    WeakEquivalenceReport { unreached_objects, not_fully_faithful: not_ff }
}

/// A left action of a finite group on `0..carrier`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetAction {
    pub group: FiniteGroup,
    pub carrier: usize,
    table: Vec<u32>,
}

impl SetAction {
    /// `images[g][x]` is `g · x`.
    pub fn new(group: FiniteGroup, carrier: usize, images: Vec<Vec<usize>>) -> Result<Self> {
        if images.len() != group.order() || images.iter().any(|row| row.len() != carrier) {
            return Err(invalid("action table has the wrong shape"));
        }
        if images.iter().flatten().any(|&y| y >= carrier) {
            return Err(invalid("action table entry out of range"));
        }
        let table = images.into_iter().flatten().map(|y| y as u32).collect();
        let a = SetAction { group, carrier, table };
        for x in 0..carrier {
            if a.act(a.group.identity(), x) != x {
                return Err(invalid(format!("identity moves point {x}")));
            }
        }
        for g in 0..a.group.order() {
            for h in 0..a.group.order() {
                for x in 0..carrier {
                    if a.act(g, a.act(h, x)) != a.act(a.group.mul(g, h), x) {
                        return Err(invalid(format!("action law fails on ({g}, {h}, {x})")));
                    }
                }
            }
        }
        Ok(a)
    }

    /// Action through a homomorphism `group -> Sym(carrier)` given by images of every element.
    pub fn from_fn(group: FiniteGroup, carrier: usize, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let images = (0..group.order()).map(|g| (0..carrier).map(|x| act(g, x)).collect()).collect();
        Self::new(group, carrier, images)
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.table[g * self.carrier + x] as usize
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.act(g, x) == x).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_swap(points: usize) -> SetAction {
        SetAction::from_fn(FiniteGroup::cyclic(2), points, |g, x| if g == 1 && x < 2 { 1 - x } else { x }).unwrap()
    }

    #[test]
    fn constructors_are_valid() {
        assert!(validate_groupoid(&FiniteGroupoid::pair_groupoid(2).unwrap()).is_valid());
        assert!(validate_groupoid(&FiniteGroupoid::group_as_groupoid(&FiniteGroup::cyclic(2))).is_valid());
        assert!(validate_groupoid(&FiniteGroupoid::translation_groupoid(&z2_swap(3))).is_valid());
        let p = FiniteGroupoid::pair_groupoid(2).unwrap();
        let q = FiniteGroupoid::group_as_groupoid(&FiniteGroup::symmetric(3));
        assert!(validate_groupoid(&p.product(&q)).is_valid());
        assert!(validate_groupoid(&FiniteGroupoid::disjoint_union(&[p, q])).is_valid());
    }

    #[test]
    fn non_composable_entry_is_reported() {
        let p = FiniteGroupoid::pair_groupoid(2).unwrap();
        // arrow 1 = (0,1): 1 -> 0; arrow 2 = (1,0): 0 -> 1. Compose (1, 1) is not composable.
        let mut entries: Vec<_> = p.composition_entries().into_iter().map(|(a, b, c)| ((a, b), c)).collect();
        entries.push(((1, 1), 0));
        let bad = FiniteGroupoid::from_parts(
            2,
            (0..4).map(|g| p.src(g)).collect(),
            (0..4).map(|g| p.tgt(g)).collect(),
            entries,
            (0..4).map(|g| Some(p.inv(g))).collect(),
            (0..2).map(|x| Some(p.unit(x))).collect(),
        )
        .unwrap();
        let report = validate_groupoid(&bad);
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == "composition defined on non-composable pair" && v.tuple == vec![1, 1, 0]));
    }

    #[test]
    fn pair_groupoid_shape() {
        assert!(FiniteGroupoid::pair_groupoid(0).is_err());
        let one = FiniteGroupoid::pair_groupoid(1).unwrap();
        assert_eq!((one.object_count(), one.arrow_count()), (1, 1));
        let p3 = FiniteGroupoid::pair_groupoid(3).unwrap();
        assert_eq!(p3.arrow_count(), 9);
        assert_eq!(orbits(&p3), vec![vec![0, 1, 2]]);
        assert_eq!(isotropy(&p3, 0).unwrap().group.order(), 1);
        assert_eq!(isotropy(&FiniteGroupoid::pair_groupoid(2).unwrap(), 1).unwrap().group.order(), 1);
    }

    #[test]
    fn group_groupoids() {
        let z2 = FiniteGroupoid::group_as_groupoid(&FiniteGroup::cyclic(2));
        assert_eq!((z2.object_count(), z2.arrow_count()), (1, 2));
        let t = FiniteGroupoid::group_as_groupoid(&FiniteGroup::trivial());
        assert_eq!(t, FiniteGroupoid::unit_groupoid(1));
        let s3 = FiniteGroupoid::group_as_groupoid(&FiniteGroup::symmetric(3));
        assert!(isotropy(&s3, 0).unwrap().group.is_isomorphic(&FiniteGroup::symmetric(3)));
    }

    #[test]
    fn translation_groupoids() {
        let trivial = SetAction::from_fn(FiniteGroup::cyclic(2), 1, |_, x| x).unwrap();
        assert_eq!(
            FiniteGroupoid::translation_groupoid(&trivial),
            FiniteGroupoid::group_as_groupoid(&FiniteGroup::cyclic(2))
        );
        let swap = FiniteGroupoid::translation_groupoid(&z2_swap(2));
        assert_eq!(orbits(&swap), vec![vec![0, 1]]);
        assert_eq!(isotropy(&swap, 0).unwrap().group.order(), 1);
        // Z4 acting on {0,1} through Z4 -> Z2; stabilizer of 0 is {0, 2}.
        let z4 = SetAction::from_fn(FiniteGroup::cyclic(4), 2, |g, x| if g % 2 == 1 { 1 - x } else { x }).unwrap();
        assert_eq!(z4.stabilizer(0), vec![0, 2]);
        assert_eq!(isotropy(&FiniteGroupoid::translation_groupoid(&z4), 0).unwrap().group.order(), 2);
        assert!(SetAction::from_fn(FiniteGroup::cyclic(3), 2, |g, x| if g == 1 { 1 - x } else { x }).is_err());
    }

    #[test]
    fn orbit_partitions() {
        let two_points = FiniteGroupoid::disjoint_union(&[FiniteGroupoid::unit_groupoid(1), FiniteGroupoid::unit_groupoid(1)]);
        assert_eq!(orbits(&two_points), vec![vec![0], vec![1]]);
        let swap = FiniteGroupoid::translation_groupoid(&z2_swap(3));
        assert_eq!(orbits(&swap), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn base_change() {
        let z3 = FiniteGroup::cyclic(3);
        let g = FiniteGroupoid::transitive(2, &z3).unwrap();
        // objects (x, *) = x; arrows ((a,b), k) = (a*2+b)*3 + k
        let unit0 = g.unit(0);
        let bc = base_change_iso(&g, unit0, 0, 0).unwrap();
        assert_eq!(bc.map, (0..3).collect::<Vec<_>>());
        // abelian isotropy: all arrows 1 -> 0 induce the same map
        let arrows: Vec<_> = g.arrows_between(1, 0);
        let maps: Vec<Vec<ArrowId>> = arrows
            .iter()
            .map(|&a| {
                let bc = base_change_iso(&g, a, 1, 0).unwrap();
                bc.map.iter().map(|&i| bc.to.arrows[i]).collect()
            })
            .collect();
        assert!(maps.windows(2).all(|w| w[0] == w[1]));
        assert!(matches!(base_change_iso(&g, arrows[0], 0, 0), Err(Error::EndpointMismatch { .. })));
    }

    #[test]
    fn weak_equivalences() {
        let s3 = FiniteGroup::symmetric(3);
        let g = Arc::new(FiniteGroupoid::transitive(3, &s3).unwrap());
        assert!(is_weak_equivalence(&GroupoidFunctor::identity(g.clone())).holds());
        let inc = GroupoidFunctor::isotropy_inclusion(g.clone(), 1).unwrap();
        assert!(is_weak_equivalence(&inc).holds());
        let two = Arc::new(FiniteGroupoid::disjoint_union(&[(*g).clone(), FiniteGroupoid::unit_groupoid(1)]));
        let (_, objs, arrs) = two.full_subgroupoid(&[0, 1, 2]);
        let f = GroupoidFunctor::new(g.clone(), two.clone(), objs, arrs).unwrap();
        let report = is_weak_equivalence(&f);
        assert!(!report.holds());
        assert_eq!(report.unreached_objects, vec![3]);
    }
}
