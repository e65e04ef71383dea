//! π₀ and π₁ of finite groupoids and of translation groupoids of actions on
//! complexes (through a combinatorial Borel construction), the Eff
//! quotient, and verification of the associated short exact sequences.

use std::collections::HashMap;

use serde_json::json;

use crate::error::{Error, Result};
use crate::fpgroup::coset::{probably_isomorphic, reconstruct, words_generate, IsoVerdict, RECONSTRUCTION_LIMIT};
use crate::fpgroup::exact::{abelian_isomorphism, abelian_surjective, check_exact_abelian};
use crate::fpgroup::presentation::{
    gen_of, letter, GroupPresentation, GroupWithPresentation, PresentationMap, Simplified, Word,
};
use crate::fpgroup::schreier::SchreierPresentation;
use crate::group::FiniteGroup;
use crate::groupoid::{isotropy, orbit_index, orbits, FiniteGroupoid, ObjectId};
use crate::report::{Check, Report, Verdict};
use crate::simplicial::cell::{CellAction, CellComplex2, FreeQuotient, Pi1Presentation};
use crate::simplicial::{eg_skeleton, ComplexAction};

/// Largest number of cells of the product `X × EG` a Borel model may use.
pub const BOREL_GUARD: usize = 200_000;

/// Largest acting group for which surjectivity onto the group itself is
/// checked by generation.
pub const GENERATION_CHECK_LIMIT: usize = 8;

/// Orbit classes with the basepoint's class marked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi0 {
    pub classes: Vec<Vec<ObjectId>>,
    pub base_class: usize,
}

impl Pi0 {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn pi0(g: &FiniteGroupoid, base: ObjectId) -> Result<Pi0> {
    if base >= g.object_count() {
        return Err(Error::UnknownObject(base));
    }
    Ok(Pi0 { classes: orbits(g), base_class: orbit_index(g)[base] })
}

/// The isotropy group at `a0`.
pub fn pi1_finite(g: &FiniteGroupoid, a0: ObjectId) -> Result<FiniteGroup> {
    Ok(isotropy(g, a0)?.group)
}

/// 2-skeleton of the nerve of the component of `a0`: objects, non-unit
/// arrows as edges `s → t`, and a 2-cell per composable pair of non-unit
/// arrows. Returns the complex and the position of `a0` in it.
pub fn nerve_2skeleton(g: &FiniteGroupoid, a0: ObjectId) -> Result<(CellComplex2, usize)> {
    if a0 >= g.object_count() {
        return Err(Error::UnknownObject(a0));
    }
    let idx = orbit_index(g);
    let objects: Vec<ObjectId> = (0..g.object_count()).filter(|&x| idx[x] == idx[a0]).collect();
    let (sub, _, _) = g.full_subgroupoid(&objects);
    let mut edge_of = vec![usize::MAX; sub.arrow_count()];
    let mut edges = Vec::new();
    for (a, slot) in edge_of.iter_mut().enumerate() {
        if !sub.is_unit(a) {
            *slot = edges.len();
            edges.push((sub.src(a), sub.tgt(a)));
        }
    }
    let mut faces = Vec::new();
    for h in 0..sub.arrow_count() {
        if sub.is_unit(h) {
            continue;
        }
        for k in 0..sub.arrow_count() {
            if sub.is_unit(k) || sub.src(k) != sub.tgt(h) {
                continue;
            }
            let kh = sub.mul(k, h);
            let mut w = vec![letter(edge_of[h], true), letter(edge_of[k], true)];
            if !sub.is_unit(kh) {
                w.push(letter(edge_of[kh], false));
            }
            faces.push(w);
        }
    }
    let base = objects.iter().position(|&x| x == a0).expect("a0 lies in its own orbit");
    Ok((CellComplex2::new(objects.len(), edges, faces)?, base))
}

/// Edge-path presentation of π₁ of the nerve's 2-skeleton at `a0`.
pub fn pi1_nerve(g: &FiniteGroupoid, a0: ObjectId) -> Result<GroupPresentation> {
    let (cx, base) = nerve_2skeleton(g, a0)?;
    Ok(cx.pi1(base)?.presentation)
}

/// Cell numbering of the product `X × E` of two 2-complexes: vertex
/// `(x, w)` is `x·W + w`; edges `(e, w)` come first, then `(x, f)`.
#[derive(Debug, Clone, Copy)]
struct ProductLayout {
    w: usize,
    f: usize,
    ea: usize,
}

impl ProductLayout {
    fn a(&self, e: usize, w: usize) -> usize {
        e * self.w + w
    }

    fn b(&self, x: usize, f: usize) -> usize {
        self.ea + x * self.f + f
    }

    fn a_letter(&self, l: i32, w: usize) -> i32 {
        l.signum() * (self.a(gen_of(l), w) as i32 + 1)
    }

    fn b_letter(&self, x: usize, l: i32) -> i32 {
        l.signum() * (self.b(x, gen_of(l)) as i32 + 1)
    }
}

fn product_cell_count(x: &CellComplex2, e: &CellComplex2) -> usize {
    let (xv, xe, xf) = (x.vertices, x.edges.len(), x.faces.len());
    let (ev, ee, ef) = (e.vertices, e.edges.len(), e.faces.len());
    xv * ev + xe * ev + xv * ee + xf * ev + xv * ef + xe * ee
}

/// Diagonal action on the product cell complex.
fn product_action(x: &CellAction, e: &CellAction) -> (CellAction, ProductLayout) {
    let (cx, ce) = (&x.complex, &e.complex);
    let lay = ProductLayout { w: ce.vertices, f: ce.edges.len(), ea: cx.edges.len() * ce.vertices };
    let mut edges = Vec::with_capacity(lay.ea + cx.vertices * lay.f);
    for &(a, b) in &cx.edges {
        for w in 0..ce.vertices {
            edges.push((a * lay.w + w, b * lay.w + w));
        }
    }
    for xv in 0..cx.vertices {
        for &(c, d) in &ce.edges {
            edges.push((xv * lay.w + c, xv * lay.w + d));
        }
    }
    let mut faces = Vec::new();
    for face in &cx.faces {
        for w in 0..ce.vertices {
            faces.push(face.iter().map(|&l| lay.a_letter(l, w)).collect());
        }
    }
    for xv in 0..cx.vertices {
        for face in &ce.faces {
            faces.push(face.iter().map(|&l| lay.b_letter(xv, l)).collect());
        }
    }
    for (ei, &(a, b)) in cx.edges.iter().enumerate() {
        for (fi, &(c, d)) in ce.edges.iter().enumerate() {
            let ea = letter(ei, true);
            let fb = letter(fi, true);
            faces.push(vec![lay.a_letter(ea, c), lay.b_letter(b, fb), -lay.a_letter(ea, d), -lay.b_letter(a, fb)]);
        }
    }
    let complex = CellComplex2 { vertices: cx.vertices * ce.vertices, edges, faces };
    let order = x.group.order();
    let vertex_act = (0..order)
        .map(|g| (0..complex.vertices).map(|p| x.vertex_act[g][p / lay.w] * lay.w + e.vertex_act[g][p % lay.w]).collect())
        .collect();
    let edge_act = (0..order)
        .map(|g| {
            let mut row = Vec::with_capacity(complex.edges.len());
            for ei in 0..cx.edges.len() {
                for w in 0..ce.vertices {
                    row.push(lay.a_letter(x.edge_act[g][ei], e.vertex_act[g][w]));
                }
            }
            for xv in 0..cx.vertices {
                for fi in 0..ce.edges.len() {
                    row.push(lay.b_letter(x.vertex_act[g][xv], e.edge_act[g][fi]));
                }
            }
            row
        })
        .collect();
    (CellAction { group: x.group.clone(), complex, vertex_act, edge_act }, lay)
}

/// `(X × EG)/G` with its π₁ presentation, the fiber inclusion of `X` and the
/// projection to `G`. Presentations are stored Tietze-simplified; maps go
/// between the simplified presentations.
#[derive(Debug, Clone)]
pub struct BorelModel {
    pub action: ComplexAction,
    pub base: usize,
    pub eg: ComplexAction,
    pub quotient: FreeQuotient,
    /// Basepoint of the quotient: the orbit of `(base, e)`.
    pub quotient_base: usize,
    pub pi1: Pi1Presentation,
    pub simplified: Simplified,
    pub fiber: Simplified,
    pub group: GroupWithPresentation,
    pub fiber_map: PresentationMap,
    pub proj_map: PresentationMap,
    /// Group element carried by each simplified generator.
    pub holonomy: Vec<usize>,
    layout: ProductLayout,
    base_offset: usize,
}

impl BorelModel {
    pub fn presentation(&self) -> &GroupPresentation {
        &self.simplified.presentation
    }

    /// Element of `G` carried by a loop at the basepoint given as a quotient edge word.
    pub fn loop_holonomy(&self, w: &[i32]) -> usize {
        let g = &self.action.group;
        let h = self.quotient.holonomy(g, w);
        g.mul(g.mul(self.base_offset, h), g.inv(self.base_offset))
    }
}

pub fn borel_pi1(action: &ComplexAction, base: usize) -> Result<BorelModel> {
    let x = &action.complex;
    if base >= x.vertex_count() {
        return Err(Error::UnknownObject(base));
    }
    if !x.is_connected() {
        return Err(Error::Disconnected);
    }
    let group = &action.group;
    let eg = eg_skeleton(group);
    let x_cells = action.to_cell_action();
    let e_cells = eg.to_cell_action();
    let size = product_cell_count(&x_cells.complex, &e_cells.complex);
    if size > BOREL_GUARD {
        return Err(Error::Guard(format!("X × EG has {size} cells, more than {BOREL_GUARD}")));
    }
    let (cover, layout) = product_action(&x_cells, &e_cells);
    let quotient = cover.free_quotient()?;
    let cover_base = base * layout.w + group.identity();
    let quotient_base = quotient.vertex_orbit[cover_base];
    let base_offset = quotient.vertex_offset[cover_base];
    let pi1 = quotient.quotient.pi1(quotient_base)?;
    let simplified = pi1.presentation.simplify();

    let x_pi1 = x.pi1_presentation(base)?;
    let fiber = x_pi1.presentation.simplify();
    let edge_images: Vec<Word> = (0..x.edges().len())
        .map(|e| quotient.push_word(&[layout.a_letter(letter(e, true), group.identity())]))
        .collect();
    let loops = x_pi1.induced_images(&edge_images);
    let fiber_images = fiber.kept.iter().map(|&k| simplified.rewrite(&loops[k])).collect();
    let fiber_map = PresentationMap::new(fiber.presentation.clone(), simplified.presentation.clone(), fiber_images)?;

    let gp = GroupPresentation::of_group(group);
    let mut model = BorelModel {
        action: action.clone(),
        base,
        eg,
        quotient,
        quotient_base,
        pi1,
        simplified,
        fiber,
        group: gp.clone(),
        fiber_map,
        proj_map: PresentationMap::identity(&GroupPresentation::trivial()),
        holonomy: Vec::new(),
        layout,
        base_offset,
    };
    model.holonomy = model.simplified.kept.iter().map(|&e| model.loop_holonomy(&model.pi1.generator_loop(e))).collect();
    let proj_images = model.holonomy.iter().map(|&h| gp.words[h].clone()).collect();
    model.proj_map = PresentationMap::new(model.simplified.presentation.clone(), gp.presentation.clone(), proj_images)?;
    Ok(model)
}

fn iso_verdict(v: &IsoVerdict) -> Verdict {
    match v {
        IsoVerdict::YesCertified => Verdict::Exact,
        IsoVerdict::Consistent => Verdict::ExactAbelianOnly,
        IsoVerdict::Refuted(_) => Verdict::ObstructionFound,
    }
}

fn abelian_verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::ExactAbelianOnly
    } else {
        Verdict::ObstructionFound
    }
}

/// `0 → π₁(X) → π₁(G⋉X) → G → 0` at the basepoint.
///
/// Injectivity compares the fiber map with the kernel of the projection,
/// presented by Reidemeister–Schreier: exact when both groups are small
/// enough to reconstruct and the images generate; otherwise abelianized
/// isomorphism plus equal hom-signatures.
pub fn check_example4_sequence(action: &ComplexAction, base: usize) -> Result<Report> {
    let model = borel_pi1(action, base)?;
    let g = &action.group;
    let mut report = Report::new("0 -> pi1(X) -> pi1(G x| X) -> G -> 0");
    let pi = model.presentation();
    report.fact("pi1(X)", model.fiber.presentation.abelianization());
    report.fact("pi1", pi.abelianization());
    report.fact("|G|", g.order());

    let generated = g.subgroup_generated(&model.holonomy).len() == g.order();
    let ab_surj = abelian_surjective(&model.proj_map)?;
    report.abelian &= ab_surj;
    let surj = if !ab_surj || (g.order() <= GENERATION_CHECK_LIMIT && !generated) {
        Verdict::ObstructionFound
    } else if g.order() <= GENERATION_CHECK_LIMIT || generated {
        Verdict::Exact
    } else {
        Verdict::ExactAbelianOnly
    };
    report.push(Check::new(
        "projection surjective",
        surj,
        format!("abelianized: {ab_surj}; holonomies generate G: {generated}"),
    ));
    if !generated {
        report.push(Check::new("fiber injective", Verdict::NotChecked, "projection is not onto G"));
        report.push(Check::new("exact at middle", Verdict::NotChecked, "projection is not onto G"));
        return Ok(report);
    }

    let mut coset_of = vec![0; g.order()];
    let mut elem_of = vec![0; g.order()];
    // coset 0 must be the identity
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.swap(0, g.identity());
    for (c, &x) in order.iter().enumerate() {
        coset_of[x] = c;
        elem_of[c] = x;
    }
    let cosets = (0..g.order())
        .map(|c| model.holonomy.iter().map(|&h| coset_of[g.mul(elem_of[c], h)]).collect())
        .collect();
    let schreier = SchreierPresentation::new(pi, cosets)?;
    let kernel = schreier.presentation.simplify();
    let images = model
        .fiber_map
        .images
        .iter()
        .map(|w| schreier.rewrite(w).map(|r| kernel.rewrite(&r)))
        .collect::<Option<Vec<Word>>>()
        .ok_or_else(|| Error::Invalid("fiber loop with nontrivial holonomy".into()))?;
    let into_kernel = PresentationMap::new(model.fiber.presentation.clone(), kernel.presentation.clone(), images)?;
    let ab_iso = abelian_isomorphism(&into_kernel)?;
    let sig = probably_isomorphic(&model.fiber.presentation, &kernel.presentation);
    report.abelian &= ab_iso;
    report.hom_signature &= !sig.is_refuted();
    let certified = match (
        reconstruct(&model.fiber.presentation, RECONSTRUCTION_LIMIT),
        reconstruct(&kernel.presentation, RECONSTRUCTION_LIMIT),
    ) {
        (Some(a), Some(b)) => a.group.order() == b.group.order() && words_generate(&b, &into_kernel.images),
        _ => false,
    };
    let inj = if !ab_iso || sig.is_refuted() {
        Verdict::ObstructionFound
    } else if certified {
        Verdict::Exact
    } else {
        Verdict::ExactAbelianOnly
    };
    report.push(Check::new(
        "fiber injective",
        inj,
        format!("onto kernel of index {}: abelianized isomorphism {ab_iso}; comparison {sig}", schreier.index()),
    ));

    let ex = check_exact_abelian(&model.fiber_map, &model.proj_map)?;
    report.abelian &= ex.exact();
    let mid = if !ex.exact() {
        Verdict::ObstructionFound
    } else if inj == Verdict::Exact {
        Verdict::Exact
    } else {
        Verdict::ExactAbelianOnly
    };
    report.push(Check::new("exact at middle", mid, format!("{ex:?}")).with_witness(json!(ex)));
    Ok(report)
}

/// Ineffective kernel and the induced effective action.
#[derive(Debug, Clone)]
pub struct EffResult {
    /// Elements acting trivially near every vertex, sorted.
    pub kernel: Vec<usize>,
    pub kernel_group: FiniteGroup,
    /// Kernel group element `i` is `kernel_embedding[i]` in the acting group.
    pub kernel_embedding: Vec<usize>,
    pub quotient: ComplexAction,
    /// Quotient map on group elements.
    pub map: Vec<usize>,
}

pub fn eff_translation(action: &ComplexAction) -> Result<EffResult> {
    let g = &action.group;
    let x = &action.complex;
    let fixing = |v: usize| -> Vec<usize> {
        let star = x.closed_star(v);
        (0..g.order()).filter(|&h| star.iter().all(|&u| action.act(h, u) == u)).collect()
    };
    let kernel = action.kernel();
    for v in 0..x.vertex_count() {
        if fixing(v) != kernel {
            return Err(Error::NonUniformIneffectivity { vertex: v });
        }
    }
    let (kernel_group, kernel_embedding) = g.subgroup(&kernel)?;
    let (quotient, map) = action.quotient_group_action(&kernel)?;
    Ok(EffResult { kernel, kernel_group, kernel_embedding, quotient, map })
}

/// Cellular map of Borel quotients induced by `q: G → Q` on the join
/// coordinate and the identity on `X`. Returns the quotient edge word of
/// each source quotient edge, plus whether the map is a bijection on
/// vertices and edges.
fn borel_quotient_map(src: &BorelModel, tgt: &BorelModel, q: &[usize]) -> (Vec<Word>, bool) {
    let (sl, tl) = (src.layout, tgt.layout);
    let n = src.action.group.order();
    let m = tgt.action.group.order();
    let join = |w: usize| (w / n) * m + q[w % n];
    let map_cover_edge = |c: usize| -> i32 {
        if c < sl.ea {
            tl.a(c / sl.w, join(c % sl.w)) as i32 + 1
        } else {
            let (xv, f) = ((c - sl.ea) / sl.f, (c - sl.ea) % sl.f);
            let [a, b] = src.eg.complex.edges()[f];
            let l = tgt.eg.complex.edge_letter(join(a), join(b)).expect("join map is simplicial");
            tl.b_letter(xv, l)
        }
    };
    let quotient_edges = src.quotient.quotient.edges.len();
    let mut images = vec![Vec::new(); quotient_edges];
    let mut done = vec![false; quotient_edges];
    for (c, &l) in src.quotient.edge_letter.iter().enumerate() {
        let e = gen_of(l);
        if done[e] {
            continue;
        }
        done[e] = true;
        let img = tgt.quotient.push_word(&[map_cover_edge(c)]);
        images[e] = if l > 0 { img } else { crate::fpgroup::presentation::inverse_word(&img) };
    }
    let tq = &tgt.quotient.quotient;
    let mut hit = vec![false; tq.edges.len()];
    for w in &images {
        if let [l] = w[..] {
            hit[gen_of(l)] = true;
        }
    }
    let bijective = src.quotient.quotient.vertices == tq.vertices
        && quotient_edges == tq.edges.len()
        && hit.iter().all(|&b| b)
        && src.quotient.quotient.faces.len() == tq.faces.len();
    (images, bijective)
}

/// `0 → K → π₁(G⋉X) → π₁((G/K)⋉X) → 0` for the ineffective kernel `K`.
/// Reported as not checked unless `X` is a graph or a cone.
pub fn check_eff_sequence(action: &ComplexAction, base: usize) -> Result<Report> {
    let mut report = Report::new("0 -> K -> pi1(G x| X) -> pi1(Eff) -> 0");
    if !action.complex.is_graph_or_cone() {
        report.abelian = false;
        report.hom_signature = false;
        for name in ["kernel injective", "exact at middle", "surjective", "hom-signature"] {
            report.push(Check::new(name, Verdict::NotChecked, "second homotopy group may not vanish"));
        }
        return Ok(report);
    }
    let eff = eff_translation(action)?;
    let src = borel_pi1(action, base)?;
    let tgt = borel_pi1(&eff.quotient, base)?;
    let g = &action.group;
    report.fact("|K|", eff.kernel.len());
    report.fact("pi1", src.presentation().abelianization());
    report.fact("pi1(Eff)", tgt.presentation().abelianization());

    let (edge_images, bijective) = borel_quotient_map(&src, &tgt, &eff.map);
    let loops = src.pi1.induced_images(&edge_images);
    let q_images = src.simplified.kept.iter().map(|&e| tgt.simplified.rewrite(&loops[e])).collect();
    let qmap = PresentationMap::new(src.presentation().clone(), tgt.presentation().clone(), q_images)?;

    let kp = GroupPresentation::of_group(&eff.kernel_group);
    let eg = &src.eg.complex;
    let id = g.identity();
    let n = g.order();
    let mut k_images = Vec::new();
    let mut k_holonomy = Vec::new();
    for &kg in &kp.generators {
        let k = eff.kernel_embedding[kg];
        let up = eg.edge_letter(id, n + id).expect("join edge");
        let down = eg.edge_letter(n + id, k).expect("join edge");
        let path = [src.layout.b_letter(base, up), src.layout.b_letter(base, down)];
        let w = src.quotient.push_word(&path);
        k_holonomy.push((k, src.loop_holonomy(&w)));
        k_images.push(src.simplified.rewrite(&w));
    }
    let kmap = PresentationMap::new(kp.presentation.clone(), src.presentation().clone(), k_images)?;
    let k_injective = k_holonomy.iter().all(|&(k, h)| k == h);
    report.push(Check::new(
        "kernel injective",
        if k_injective { Verdict::Exact } else { Verdict::ObstructionFound },
        "composite with the projection to G is the inclusion",
    ));

    let ex = check_exact_abelian(&kmap, &qmap)?;
    let surj = abelian_surjective(&qmap)?;
    report.abelian &= ex.exact() && surj;
    let upgrade = |ok: bool| if ok && bijective { Verdict::Exact } else { abelian_verdict(ok) };
    report.push(Check::new("exact at middle", upgrade(ex.exact()), format!("{ex:?}")).with_witness(json!(ex)));
    report.push(Check::new("surjective", upgrade(surj), format!("abelianized surjective: {surj}")));

    let killed = src.presentation().with_relators(kmap.images.iter().cloned());
    let sig = probably_isomorphic(&killed, tgt.presentation());
    report.hom_signature &= !sig.is_refuted();
    let sig_verdict = if bijective && !sig.is_refuted() { Verdict::Exact } else { iso_verdict(&sig).max(Verdict::ExactAbelianOnly) };
    report.push(Check::new("hom-signature", sig_verdict, format!("pi1 / K against pi1(Eff): {sig}")));
    if bijective {
        report.fact("certified", "cellular isomorphism of Borel quotients");
    }
    Ok(report)
}

/// Whether an orbit matching is a bijection preserving isotropy groups up
/// to isomorphism.
pub fn matched_invariants(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    matching: &[usize],
) -> Result<bool> {
    let (og, oh) = (orbits(g), orbits(h));
    if og.len() != oh.len() || matching.len() != og.len() {
        return Ok(false);
    }
    let mut seen = HashMap::new();
    for (i, &j) in matching.iter().enumerate() {
        if j >= oh.len() || seen.insert(j, i).is_some() {
            return Ok(false);
        }
        let a = pi1_finite(g, og[i][0])?;
        let b = pi1_finite(h, oh[j][0])?;
        if !a.is_isomorphic(&b) {
            return Ok(false);
        }
    }
    Ok(true)
}
