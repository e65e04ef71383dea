//! Principal bibundles between finite groupoids and the Morita category.

use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::error::{invalid, Error, Result};
use crate::groupoid::{isotropy, orbits, ArrowId, FiniteGroupoid, GroupoidFunctor, ObjectId, Violation};

const NONE: u32 = u32::MAX;

/// A set `P` with a left `H`-action along `π: P → H₀` and a right
/// `G`-action along `ε: P → G₀` that commute.
#[derive(Debug, Clone)]
pub struct Bibundle {
    pub left: Arc<FiniteGroupoid>,
    pub right: Arc<FiniteGroupoid>,
    total: usize,
    pi: Vec<ObjectId>,
    eps: Vec<ObjectId>,
    /// `left_act[h * total + p]`, defined when `s(h) = π(p)`.
    left_act: Vec<u32>,
    /// `right_act[p * |G₁| + g]`, defined when `ε(p) = t(g)`.
    right_act: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PrincipalityReport {
    pub surjective_pi: bool,
    pub right_action_free: bool,
    pub right_action_fiber_transitive: bool,
    /// Points with no preimage, `(p, g)` with `p·g = p` and `g` not a unit,
    /// or `(p, q)` in one fiber with no `g` taking `p` to `q`.
    pub counterexamples: Vec<(&'static str, Vec<usize>)>,
}

impl PrincipalityReport {
    pub fn is_principal(&self) -> bool {
        self.surjective_pi && self.right_action_free && self.right_action_fiber_transitive
    }
}

impl Bibundle {
    /// Builds and validates a bibundle from explicit action triples.
    pub fn new(
        left: Arc<FiniteGroupoid>,
        right: Arc<FiniteGroupoid>,
        total: usize,
        pi: Vec<ObjectId>,
        eps: Vec<ObjectId>,
        left_act: impl IntoIterator<Item = (ArrowId, usize, usize)>,
        right_act: impl IntoIterator<Item = (usize, ArrowId, usize)>,
    ) -> Result<Self> {
        if pi.len() != total || eps.len() != total {
            return Err(invalid("anchor maps must be defined on every point"));
        }
        if pi.iter().any(|&x| x >= left.object_count()) || eps.iter().any(|&a| a >= right.object_count()) {
            return Err(invalid("anchor value out of range"));
        }
        let (nh, ng) = (left.arrow_count(), right.arrow_count());
        let mut la = vec![NONE; nh * total];
        for (h, p, q) in left_act {
            if h >= nh || p >= total || q >= total {
                return Err(invalid(format!("left action entry ({h}, {p}, {q}) out of range")));
            }
            la[h * total + p] = q as u32;
        }
        let mut ra = vec![NONE; total * ng];
        for (p, g, q) in right_act {
            if g >= ng || p >= total || q >= total {
                return Err(invalid(format!("right action entry ({p}, {g}, {q}) out of range")));
            }
            ra[p * ng + g] = q as u32;
        }
        let b = Bibundle { left, right, total, pi, eps, left_act: la, right_act: ra };
        if let Some(v) = b.violations().first() {
            return Err(invalid(format!("bibundle axiom violated: {v}")));
        }
        Ok(b)
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn pi(&self, p: usize) -> ObjectId {
        self.pi[p]
    }

    pub fn eps(&self, p: usize) -> ObjectId {
        self.eps[p]
    }

    pub fn left_act(&self, h: ArrowId, p: usize) -> Option<usize> {
        let q = self.left_act[h * self.total + p];
        (q != NONE).then_some(q as usize)
    }

    pub fn right_act(&self, p: usize, g: ArrowId) -> Option<usize> {
        let q = self.right_act[p * self.right.arrow_count() + g];
        (q != NONE).then_some(q as usize)
    }

    /// Sorted `(h, p, hp)` triples.
    pub fn left_entries(&self) -> Vec<(ArrowId, usize, usize)> {
        let mut out = Vec::new();
        for h in 0..self.left.arrow_count() {
            for p in 0..self.total {
                if let Some(q) = self.left_act(h, p) {
                    out.push((h, p, q));
                }
            }
        }
        out
    }

    /// Sorted `(p, g, pg)` triples.
    pub fn right_entries(&self) -> Vec<(usize, ArrowId, usize)> {
        let mut out = Vec::new();
        for p in 0..self.total {
            for g in 0..self.right.arrow_count() {
                if let Some(q) = self.right_act(p, g) {
                    out.push((p, g, q));
                }
            }
        }
        out
    }

    /// Checks definedness domains, anchor compatibility, action laws and
    /// commutation of the two actions.
    pub fn violations(&self) -> Vec<Violation> {
        let (h_, g_) = (&*self.left, &*self.right);
        let mut out = Vec::new();
        let mut push = |axiom: &'static str, tuple: Vec<usize>| out.push(Violation { axiom, tuple });
        for h in 0..h_.arrow_count() {
            for p in 0..self.total {
                let defined = h_.src(h) == self.pi[p];
                match (defined, self.left_act(h, p)) {
                    (true, None) => push("left action undefined where s(h) = π(p)", vec![h, p]),
                    (false, Some(_)) => push("left action defined where s(h) ≠ π(p)", vec![h, p]),
                    (true, Some(q)) => {
                        if self.pi[q] != h_.tgt(h) {
                            push("π(hp) ≠ t(h)", vec![h, p]);
                        }
                        if self.eps[q] != self.eps[p] {
                            push("ε(hp) ≠ ε(p)", vec![h, p]);
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for p in 0..self.total {
            for g in 0..g_.arrow_count() {
                let defined = g_.tgt(g) == self.eps[p];
                match (defined, self.right_act(p, g)) {
                    (true, None) => push("right action undefined where ε(p) = t(g)", vec![p, g]),
                    (false, Some(_)) => push("right action defined where ε(p) ≠ t(g)", vec![p, g]),
                    (true, Some(q)) => {
                        if self.eps[q] != g_.src(g) {
                            push("ε(pg) ≠ s(g)", vec![p, g]);
                        }
                        if self.pi[q] != self.pi[p] {
                            push("π(pg) ≠ π(p)", vec![p, g]);
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        let mut push = |axiom: &'static str, tuple: Vec<usize>| out.push(Violation { axiom, tuple });
        for p in 0..self.total {
            if self.left_act(h_.unit(self.pi[p]), p) != Some(p) {
                push("left unit acts nontrivially", vec![p]);
            }
            if self.right_act(p, g_.unit(self.eps[p])) != Some(p) {
                push("right unit acts nontrivially", vec![p]);
            }
        }
        for (a, b, ab) in h_.composition_entries() {
            for p in 0..self.total {
                if h_.src(b) == self.pi[p] {
                    let lhs = self.left_act(b, p).and_then(|q| self.left_act(a, q));
                    if lhs != self.left_act(ab, p) {
                        push("left action does not compose", vec![a, b, p]);
                    }
                }
            }
        }
        for (a, b, ab) in g_.composition_entries() {
            for p in 0..self.total {
                if g_.tgt(a) == self.eps[p] {
                    let lhs = self.right_act(p, a).and_then(|q| self.right_act(q, b));
                    if lhs != self.right_act(p, ab) {
                        push("right action does not compose", vec![p, a, b]);
                    }
                }
            }
        }
        for (h, p, q) in self.left_entries() {
            for g in 0..g_.arrow_count() {
                if g_.tgt(g) == self.eps[p] {
                    let a = self.right_act(q, g);
                    let b = self.right_act(p, g).and_then(|r| self.left_act(h, r));
                    if a != b {
                        push("actions do not commute", vec![h, p, g]);
                    }
                }
            }
        }
        out
    }
}

/// `⟨φ⟩ = H₀ ×_{G₀} G₁ = {(y, g) | φ(y) = t(g)}` with anchors `pr₁` and
/// `s ∘ pr₂`, `h·(y, g) = (t(h), φ(h) g)` and `(y, g)·g' = (y, g g')`.
pub fn bundle_from_functor(phi: &GroupoidFunctor) -> Bibundle {
    let (h_, g_) = (&*phi.source, &*phi.target);
    let mut points = Vec::new();
    let mut index = std::collections::HashMap::new();
    for y in 0..h_.object_count() {
        for g in 0..g_.arrow_count() {
            if g_.tgt(g) == phi.obj_map[y] {
                index.insert((y, g), points.len());
                points.push((y, g));
            }
        }
    }
    let pi = points.iter().map(|&(y, _)| y).collect();
    let eps = points.iter().map(|&(_, g)| g_.src(g)).collect();
    let mut left = Vec::new();
    for h in 0..h_.arrow_count() {
        for (p, &(y, g)) in points.iter().enumerate() {
            if h_.src(h) == y {
                left.push((h, p, index[&(h_.tgt(h), g_.mul(phi.arr_map[h], g))]));
            }
        }
    }
    let mut right = Vec::new();
    for (p, &(y, g)) in points.iter().enumerate() {
        for g2 in 0..g_.arrow_count() {
            if g_.tgt(g2) == g_.src(g) {
                right.push((p, g2, index[&(y, g_.mul(g, g2))]));
            }
        }
    }
    Bibundle::new(phi.source.clone(), phi.target.clone(), points.len(), pi, eps, left, right)
        .expect("bundle of a functor satisfies the axioms")
}

/// The unit bundle `⟨id⟩` of a groupoid.
pub fn unit_bundle(g: &Arc<FiniteGroupoid>) -> Bibundle {
    bundle_from_functor(&GroupoidFunctor::identity(g.clone()))
}

/// Surjectivity of `π` plus freeness and fiberwise transitivity of the right
/// action, i.e. bijectivity of `(p, g) ↦ (p, pg)` onto `P ×_{H₀} P`.
pub fn is_principal(b: &Bibundle) -> PrincipalityReport {
    let mut r = PrincipalityReport { surjective_pi: true, right_action_free: true, right_action_fiber_transitive: true, ..Default::default() };
    let mut hit = vec![false; b.left.object_count()];
    for p in 0..b.total {
        hit[b.pi[p]] = true;
    }
    for (x, _) in hit.iter().enumerate().filter(|(_, h)| !**h) {
        r.surjective_pi = false;
        r.counterexamples.push(("empty fiber", vec![x]));
    }
    let g_ = &*b.right;
    for p in 0..b.total {
        let mut reached = vec![false; b.total];
        for g in 0..g_.arrow_count() {
            if let Some(q) = b.right_act(p, g) {
                if q == p && !g_.is_unit(g) {
                    r.right_action_free = false;
                    r.counterexamples.push(("nontrivial stabilizer", vec![p, g]));
                }
                reached[q] = true;
            }
        }
        for (q, &seen) in reached.iter().enumerate() {
            if b.pi[q] == b.pi[p] && !seen {
                r.right_action_fiber_transitive = false;
                r.counterexamples.push(("fiber not transitive", vec![p, q]));
            }
        }
    }
    r
}

/// Both actions principal over the opposite anchors.
pub fn is_biprincipal(b: &Bibundle) -> bool {
    is_principal(b).is_principal() && is_principal(&transpose(b)).is_principal()
}

fn transpose(b: &Bibundle) -> Bibundle {
    let (h_, g_) = (&*b.left, &*b.right);
    let left = b.right_entries().into_iter().map(|(p, g, q)| (g_.inv(g), p, q));
    let right = b.left_entries().into_iter().map(|(h, p, q)| (p, h_.inv(h), q));
    Bibundle::new(b.right.clone(), b.left.clone(), b.total, b.eps.clone(), b.pi.clone(), left, right)
        .expect("transposed actions satisfy the axioms")
}

/// `P⁻¹`: the same set with anchors swapped, `g·p = p g⁻¹`, `p·h = h⁻¹ p`.
pub fn inverse_bibundle(b: &Bibundle) -> Result<Bibundle> {
    let t = transpose(b);
    if !is_principal(b).is_principal() || !is_principal(&t).is_principal() {
        return Err(Error::NotBiprincipal("both actions must be principal".into()));
    }
    Ok(t)
}

/// `Q ⊗_H P`: orbits of `Q ×_{H₀} P` under `(q h, p) ~ (q, h p)`.
pub fn tensor(q: &Bibundle, p: &Bibundle) -> Result<Bibundle> {
    if *q.right != *p.left {
        return Err(Error::Mismatch("right groupoid of Q differs from left groupoid of P".into()));
    }
    let h_ = &*q.right;
    let mut pairs = Vec::new();
    let mut index = std::collections::HashMap::new();
    for a in 0..q.total {
        for b in 0..p.total {
            if q.eps[a] == p.pi[b] {
                index.insert((a, b), pairs.len());
                pairs.push((a, b));
            }
        }
    }
    let mut uf = UnionFind::<usize>::new(pairs.len());
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for h in 0..h_.arrow_count() {
            if h_.src(h) == p.pi[b] {
                // (a, h b) ~ (a h, b)
                let hb = p.left_act(h, b).expect("defined");
                if let Some(ah) = q.right_act(a, h_.inv(h)) {
                    // (a h⁻¹, h b) ~ (a, b) is the same relation read from (a, b)
                    uf.union(i, index[&(ah, hb)]);
                }
            }
        }
    }
    let labels = uf.into_labeling();
    let mut class = vec![usize::MAX; pairs.len()];
    let mut reps = Vec::new();
    for i in 0..pairs.len() {
        if class[labels[i]] == usize::MAX {
            class[labels[i]] = reps.len();
            reps.push(i);
        }
    }
    let cls = |i: usize| class[labels[i]];
    let pi = reps.iter().map(|&i| q.pi[pairs[i].0]).collect();
    let eps = reps.iter().map(|&i| p.eps[pairs[i].1]).collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (c, &i) in reps.iter().enumerate() {
        let (a, b) = pairs[i];
        for k in 0..q.left.arrow_count() {
            if let Some(ka) = q.left_act(k, a) {
                left.push((k, c, cls(index[&(ka, b)])));
            }
        }
        for g in 0..p.right.arrow_count() {
            if let Some(bg) = p.right_act(b, g) {
                right.push((c, g, cls(index[&(a, bg)])));
            }
        }
    }
    Bibundle::new(q.left.clone(), p.right.clone(), reps.len(), pi, eps, left, right)
}

/// Lexicographically least equivariant, anchor-preserving bijection
/// `P → P'`, or `None` after exhaustive search.
pub fn bibundle_iso_search(p: &Bibundle, p2: &Bibundle) -> Option<Vec<usize>> {
    if *p.left != *p2.left || *p.right != *p2.right || p.total != p2.total {
        return None;
    }
    let n = p.total;
    let sig = |b: &Bibundle| -> Vec<(usize, usize)> {
        let mut v: Vec<_> = (0..b.total).map(|x| (b.pi[x], b.eps[x])).collect();
        v.sort_unstable();
        v
    };
    if sig(p) != sig(p2) {
        return None;
    }
    // two-sided orbits of P, in order of their least element
    let mut orbit_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if orbit_of[x] == usize::MAX {
            let o = reps.len();
            reps.push(x);
            let mut stack = vec![x];
            orbit_of[x] = o;
            while let Some(y) = stack.pop() {
                for z in neighbours(p, y) {
                    if orbit_of[z] == usize::MAX {
                        orbit_of[z] = o;
                        stack.push(z);
                    }
                }
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(p, p2, &reps, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn neighbours(b: &Bibundle, y: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for h in 0..b.left.arrow_count() {
        if let Some(z) = b.left_act(h, y) {
            out.push(z);
        }
    }
    for g in 0..b.right.arrow_count() {
        if let Some(z) = b.right_act(y, g) {
            out.push(z);
        }
    }
    out
}

fn search(p: &Bibundle, p2: &Bibundle, reps: &[usize], k: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
    let Some(&x) = reps.get(k) else { return true };
    for cand in 0..p2.total {
        if used[cand] || p2.pi[cand] != p.pi[x] || p2.eps[cand] != p.eps[x] {
            continue;
        }
        let mut assigned = Vec::new();
        if propagate(p, p2, x, cand, map, used, &mut assigned) && search(p, p2, reps, k + 1, map, used) {
            return true;
        }
        for y in assigned {
            used[map[y]] = false;
            map[y] = usize::MAX;
        }
    }
    false
}

fn propagate(
    p: &Bibundle,
    p2: &Bibundle,
    x: usize,
    cand: usize,
    map: &mut [usize],
    used: &mut [bool],
    assigned: &mut Vec<usize>,
) -> bool {
    let mut stack = vec![(x, cand)];
    while let Some((y, img)) = stack.pop() {
        if map[y] != usize::MAX {
            if map[y] != img {
                return false;
            }
            continue;
        }
        if used[img] || p2.pi[img] != p.pi[y] || p2.eps[img] != p.eps[y] {
            return false;
        }
        map[y] = img;
        used[img] = true;
        assigned.push(y);
        for h in 0..p.left.arrow_count() {
            if let Some(z) = p.left_act(h, y) {
                stack.push((z, p2.left_act(h, img).expect("anchors agree")));
            }
        }
        for g in 0..p.right.arrow_count() {
            if let Some(z) = p.right_act(y, g) {
                stack.push((z, p2.right_act(img, g).expect("anchors agree")));
            }
        }
    }
    true
}

/// Outcome of [`morita_equivalent`].
#[derive(Debug, Clone)]
pub struct MoritaDecision {
    pub equivalent: bool,
    /// Matched orbit representatives `(x in G, y in H)`.
    pub matching: Vec<(ObjectId, ObjectId)>,
    pub reason: String,
    /// A biprincipal bundle with left `G` and right `H` on success.
    pub witness: Option<Bibundle>,
}

/// Decides Morita equivalence by matching orbits with isomorphic isotropy
/// groups; on success builds a witness through the skeleta.
pub fn morita_equivalent(g: &FiniteGroupoid, h: &FiniteGroupoid) -> MoritaDecision {
    let og = orbits(g);
    let oh = orbits(h);
    let fail = |reason: String| MoritaDecision { equivalent: false, matching: Vec::new(), reason, witness: None };
    if og.len() != oh.len() {
        return fail(format!("orbit counts differ ({} vs {})", og.len(), oh.len()));
    }
    let ig: Vec<_> = og.iter().map(|o| isotropy(g, o[0]).expect("object exists")).collect();
    let ih: Vec<_> = oh.iter().map(|o| isotropy(h, o[0]).expect("object exists")).collect();
    let mut used = vec![false; oh.len()];
    let mut matching = Vec::new();
    let mut isos = Vec::new();
    for (i, a) in ig.iter().enumerate() {
        let found = (0..oh.len()).filter(|&j| !used[j]).find_map(|j| a.group.isomorphism(&ih[j].group).map(|m| (j, m)));
        match found {
            Some((j, m)) => {
                used[j] = true;
                matching.push((og[i][0], oh[j][0]));
                isos.push((i, j, m));
            }
            None => {
                return fail(format!(
                    "no orbit of the second groupoid has isotropy isomorphic to that at object {} (order {})",
                    og[i][0],
                    a.group.order()
                ))
            }
        }
    }
    let witness = build_witness(g, h, &ig, &ih, &isos);
    let checked = witness.as_ref().is_ok_and(is_biprincipal);
    MoritaDecision {
        equivalent: true,
        matching,
        reason: if checked {
            "orbits match with isomorphic isotropy; witness is biprincipal".into()
        } else {
            "orbits match with isomorphic isotropy; witness construction failed".into()
        },
        witness: witness.ok().filter(is_biprincipal),
    }
}

type Iso = (usize, usize, Vec<usize>);

fn build_witness(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    ig: &[crate::groupoid::IsotropyGroup],
    ih: &[crate::groupoid::IsotropyGroup],
    isos: &[Iso],
) -> Result<Bibundle> {
    let g = Arc::new(g.clone());
    let h = Arc::new(h.clone());
    let skeleton_g: Vec<ObjectId> = ig.iter().map(|i| i.object).collect();
    let skeleton_h: Vec<ObjectId> = ih.iter().map(|i| i.object).collect();
    let (sg, _, sg_arrows) = g.full_subgroupoid(&skeleton_g);
    let (sh, _, sh_arrows) = h.full_subgroupoid(&skeleton_h);
    let sg = Arc::new(sg);
    let sh = Arc::new(sh);
    let incl_g = GroupoidFunctor::new(sg.clone(), g.clone(), skeleton_g.clone(), sg_arrows)?;
    let incl_h = GroupoidFunctor::new(sh.clone(), h.clone(), skeleton_h.clone(), sh_arrows)?;
    // skeleton isomorphism: orbit i ↦ orbit j through the group isomorphism
    let mut obj_map = vec![0; sg.object_count()];
    let mut arr_map = vec![0; sg.arrow_count()];
    for (i, j, m) in isos {
        obj_map[*i] = *j;
        for (a, slot) in arr_map.iter_mut().enumerate() {
            if sg.src(a) == *i {
                let ga = incl_g.arr_map[a];
                let elem = ig[*i].element_of(ga).expect("skeleton arrows are loops");
                let target_arrow = ih[*j].arrows[m[elem]];
                *slot = sh_arrow_index(&incl_h, target_arrow)?;
            }
        }
    }
    let alpha = GroupoidFunctor::new(sg.clone(), sh, obj_map, arr_map)?;
    let left = inverse_bibundle(&bundle_from_functor(&incl_g))?;
    tensor(&tensor(&left, &bundle_from_functor(&alpha))?, &bundle_from_functor(&incl_h))
}

fn sh_arrow_index(incl: &GroupoidFunctor, arrow: ArrowId) -> Result<ArrowId> {
    incl.arr_map.iter().position(|&a| a == arrow).ok_or(Error::UnknownArrow(arrow))
}

/// Translation groupoid of the left action restricted to `ε⁻¹(a₀)`, with
/// the bundle point of each object.
pub fn fiber_groupoid(b: &Bibundle, a0: ObjectId) -> Result<(FiniteGroupoid, Vec<usize>)> {
    if a0 >= b.right.object_count() {
        return Err(Error::UnknownObject(a0));
    }
    let h_ = &*b.left;
    let pts: Vec<usize> = (0..b.total).filter(|&p| b.eps[p] == a0).collect();
    let mut local = vec![usize::MAX; b.total];
    for (i, &p) in pts.iter().enumerate() {
        local[p] = i;
    }
    let mut arrows = Vec::new();
    let mut index = std::collections::HashMap::new();
    for (i, &p) in pts.iter().enumerate() {
        for hh in 0..h_.arrow_count() {
            if h_.src(hh) == b.pi[p] {
                index.insert((hh, i), arrows.len());
                arrows.push((hh, i));
            }
        }
    }
    let tgt_of = |&(hh, i): &(usize, usize)| local[b.left_act(hh, pts[i]).expect("defined")];
    let src: Vec<usize> = arrows.iter().map(|&(_, i)| i).collect();
    let tgt: Vec<usize> = arrows.iter().map(tgt_of).collect();
    let inv = arrows.iter().map(|a| index[&(h_.inv(a.0), tgt_of(a))]).collect();
    let unit = pts.iter().enumerate().map(|(i, &p)| index[&(h_.unit(b.pi[p]), i)]).collect();
    let g = FiniteGroupoid::from_fn(pts.len(), src, tgt, inv, unit, |x, y| {
        let (hx, _) = arrows[x];
        let (hy, iy) = arrows[y];
        index[&(h_.mul(hx, hy), iy)]
    });
    Ok((g.validated()?, pts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn group(g: &FiniteGroup) -> Arc<FiniteGroupoid> {
        Arc::new(FiniteGroupoid::group_as_groupoid(g))
    }

    #[test]
    fn functor_bundles() {
        let z4 = FiniteGroup::cyclic(4);
        let id = unit_bundle(&group(&z4));
        assert_eq!(id.total(), 4);
        assert!(is_principal(&id).is_principal());
        let incl = GroupoidFunctor::from_group_hom(&FiniteGroup::cyclic(2), &z4, vec![0, 2]).unwrap();
        let b = bundle_from_functor(&incl);
        assert_eq!(b.total(), 4);
        assert!(is_principal(&b).is_principal());
        assert!(!is_biprincipal(&b));
    }

    #[test]
    fn non_principal_examples() {
        let z2 = group(&FiniteGroup::cyclic(2));
        let point = Arc::new(FiniteGroupoid::unit_groupoid(1));
        // the point with trivial Z2 action
        let b = Bibundle::new(point.clone(), z2.clone(), 1, vec![0], vec![0], [(0, 0, 0)], [(0, 0, 0), (0, 1, 0)]).unwrap();
        let r = is_principal(&b);
        assert!(!r.right_action_free);
        assert!(r.counterexamples.iter().any(|(k, t)| *k == "nontrivial stabilizer" && t == &vec![0, 1]));
        let two = Arc::new(FiniteGroupoid::unit_groupoid(2));
        let empty_fiber = Bibundle::new(two, z2.clone(), 2, vec![0, 0], vec![0, 0], [(0, 0, 0), (0, 1, 1)], [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]).unwrap();
        assert!(!is_principal(&empty_fiber).surjective_pi);
    }

    #[test]
    fn tensor_units_and_inverses() {
        let s3 = FiniteGroup::symmetric(3);
        let g = Arc::new(FiniteGroupoid::transitive(2, &s3).unwrap());
        let p = unit_bundle(&g);
        let pp = tensor(&p, &unit_bundle(&g)).unwrap();
        assert!(bibundle_iso_search(&pp, &p).is_some());
        let inv = inverse_bibundle(&p).unwrap();
        assert!(bibundle_iso_search(&tensor(&p, &inv).unwrap(), &unit_bundle(&g)).is_some());
    }

    #[test]
    fn iso_search_distinguishes() {
        let z4 = FiniteGroup::cyclic(4);
        let incl = bundle_from_functor(&GroupoidFunctor::from_group_hom(&FiniteGroup::cyclic(2), &z4, vec![0, 2]).unwrap());
        let triv = bundle_from_functor(&GroupoidFunctor::from_group_hom(&FiniteGroup::cyclic(2), &z4, vec![0, 0]).unwrap());
        assert!(bibundle_iso_search(&incl, &triv).is_none());
        assert_eq!(bibundle_iso_search(&incl, &incl), Some((0..4).collect()));
    }

    #[test]
    fn morita_decisions() {
        let pair = FiniteGroupoid::pair_groupoid(3).unwrap();
        let point = FiniteGroupoid::unit_groupoid(1);
        let d = morita_equivalent(&pair, &point);
        assert!(d.equivalent && d.witness.is_some());
        let z2 = FiniteGroupoid::group_as_groupoid(&FiniteGroup::cyclic(2));
        let z3 = FiniteGroupoid::group_as_groupoid(&FiniteGroup::cyclic(3));
        assert!(!morita_equivalent(&z2, &z3).equivalent);
        let s3 = FiniteGroupoid::group_as_groupoid(&FiniteGroup::symmetric(3));
        let prod = s3.product(&FiniteGroupoid::pair_groupoid(2).unwrap());
        let d = morita_equivalent(&s3, &prod);
        assert!(d.equivalent);
        let w = d.witness.unwrap();
        assert!(is_biprincipal(&w));
    }

    #[test]
    fn fibers() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        let epi = GroupoidFunctor::from_group_hom(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let (f, _) = fiber_groupoid(&bundle_from_functor(&epi), 0).unwrap();
        assert!(morita_equivalent(&f, &FiniteGroupoid::group_as_groupoid(&z2)).equivalent);
        let g = Arc::new(FiniteGroupoid::transitive(2, &z2).unwrap());
        let (f, pts) = fiber_groupoid(&unit_bundle(&g), 0).unwrap();
        assert_eq!(pts.len(), 4);
        assert!(morita_equivalent(&f, &FiniteGroupoid::unit_groupoid(1)).equivalent);
    }
}
