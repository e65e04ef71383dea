//! Abstract simplicial complexes of dimension at most two, simplicial group
//! actions, and the constructions used to model spaces and their quotients.

pub mod cell;

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{invalid, Error, Result};
use crate::fpgroup::presentation::letter;
use crate::group::FiniteGroup;
use crate::groupoid::SetAction;
pub use cell::{CellAction, CellComplex2, FreeQuotient, Pi1Presentation};

/// Vertices `0..n`, edges `[a, b]` with `a < b`, triangles `[a, b, c]` with
/// `a < b < c`, all sorted and closed under faces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertices: usize,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
}

fn sorted2(a: usize, b: usize) -> [usize; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

fn sorted3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

impl SimplicialComplex {
    /// Strict constructor: rejects degenerate simplices, out-of-range
    /// vertices, and triangles whose edges are missing.
    pub fn new(vertices: usize, edges: Vec<[usize; 2]>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let mut es = BTreeSet::new();
        for &[a, b] in &edges {
            if a >= vertices || b >= vertices {
                return Err(invalid(format!("edge [{a}, {b}] has a vertex out of range")));
            }
            if a == b {
                return Err(invalid(format!("edge [{a}, {b}] is degenerate")));
            }
            es.insert(sorted2(a, b));
        }
        let mut ts = BTreeSet::new();
        for &[a, b, c] in &triangles {
            if a >= vertices || b >= vertices || c >= vertices {
                return Err(invalid(format!("triangle [{a}, {b}, {c}] has a vertex out of range")));
            }
            if a == b || b == c || a == c {
                return Err(invalid(format!("triangle [{a}, {b}, {c}] is degenerate")));
            }
            for e in [sorted2(a, b), sorted2(b, c), sorted2(a, c)] {
                if !es.contains(&e) {
                    return Err(invalid(format!("triangle [{a}, {b}, {c}] lacks its edge {e:?}")));
                }
            }
            ts.insert(sorted3(a, b, c));
        }
        Ok(SimplicialComplex { vertices, edges: es.into_iter().collect(), triangles: ts.into_iter().collect() })
    }

    /// Closes the given simplices under faces.
    pub fn from_simplices(vertices: usize, edges: &[[usize; 2]], triangles: &[[usize; 3]]) -> Result<Self> {
        let mut all: Vec<[usize; 2]> = edges.to_vec();
        for &[a, b, c] in triangles {
            all.extend([sorted2(a, b), sorted2(b, c), sorted2(a, c)]);
        }
        for e in all.iter_mut() {
            *e = sorted2(e[0], e[1]);
        }
        Self::new(vertices, all, triangles.to_vec())
    }

    pub fn point() -> Self {
        SimplicialComplex { vertices: 1, edges: Vec::new(), triangles: Vec::new() }
    }

    /// Path graph with `n` vertices.
    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("a path needs at least one vertex"));
        }
        Self::new(n, (1..n).map(|i| [i - 1, i]).collect(), Vec::new())
    }

    /// Cycle graph with `n ≥ 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(invalid("a simplicial cycle needs at least three vertices"));
        }
        Self::new(n, (0..n).map(|i| sorted2(i, (i + 1) % n)).collect(), Vec::new())
    }

    /// The filled triangle.
    pub fn triangle() -> Self {
        SimplicialComplex { vertices: 3, edges: vec![[0, 1], [0, 2], [1, 2]], triangles: vec![[0, 1, 2]] }
    }

    /// Cone over a graph: apex `n`, joined to every vertex and edge.
    pub fn cone(&self) -> Result<Self> {
        if !self.triangles.is_empty() {
            return Err(invalid("only cones over graphs stay two-dimensional"));
        }
        let apex = self.vertices;
        let mut edges = self.edges.clone();
        edges.extend((0..apex).map(|v| [v, apex]));
        let triangles = self.edges.iter().map(|&[a, b]| [a, b, apex]).collect();
        Self::new(apex + 1, edges, triangles)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn simplex_count(&self) -> usize {
        self.vertices + self.edges.len() + self.triangles.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&sorted2(a, b)).ok()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index(a, b).is_some()
    }

    pub fn has_triangle(&self, a: usize, b: usize, c: usize) -> bool {
        self.triangles.binary_search(&sorted3(a, b, c)).is_ok()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &[a, b] in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        self.to_cell_complex().is_connected()
    }

    /// Vertices of the closed star of `v`: `v` and its neighbours (a
    /// simplicial map fixing these fixes every simplex of the star).
    pub fn closed_star(&self, v: usize) -> Vec<usize> {
        let mut s: Vec<usize> = self.neighbors()[v].clone();
        s.push(v);
        s.sort_unstable();
        s
    }

    /// A cone or a graph: complexes with vanishing second homotopy.
    pub fn is_graph_or_cone(&self) -> bool {
        if self.triangles.is_empty() {
            return true;
        }
        (0..self.vertices).any(|apex| {
            self.triangles.iter().all(|t| t.contains(&apex))
                && self.edges.iter().all(|&[a, b]| a == apex || b == apex || self.has_triangle(a, b, apex))
                && (0..self.vertices).all(|v| v == apex || self.has_edge(v, apex))
        })
    }

    /// Edges oriented `a → b` with `a < b`; triangles attached along
    /// `[a, b] [b, c] [a, c]⁻¹`.
    pub fn to_cell_complex(&self) -> CellComplex2 {
        let e = |a: usize, b: usize| self.edge_index(a, b).expect("closed under faces") as i32 + 1;
        CellComplex2 {
            vertices: self.vertices,
            edges: self.edges.iter().map(|&[a, b]| (a, b)).collect(),
            faces: self.triangles.iter().map(|&[a, b, c]| vec![e(a, b), e(b, c), -e(a, c)]).collect(),
        }
    }

    /// Edge-path presentation of π₁ at `base`: a generator per edge, killed
    /// along a spanning tree, and a relator per triangle.
    pub fn pi1_presentation(&self, base: usize) -> Result<Pi1Presentation> {
        self.to_cell_complex().pi1(base)
    }

    /// Signed edge letter for the oriented edge `a → b`.
    pub fn edge_letter(&self, a: usize, b: usize) -> Option<i32> {
        self.edge_index(a, b).map(|e| letter(e, a < b))
    }

    /// Barycentric subdivision. New vertices: old vertices, then edge
    /// barycenters, then triangle barycenters.
    pub fn barycentric_subdivision(&self) -> Subdivision {
        let n = self.vertices;
        let ne = self.edges.len();
        let tri_vertex = |t: usize| n + ne + t;
        let mut edges = Vec::new();
        let mut triangles = Vec::new();
        for (i, &[a, b]) in self.edges.iter().enumerate() {
            edges.push([a, n + i]);
            edges.push([b, n + i]);
        }
        for (t, &[a, b, c]) in self.triangles.iter().enumerate() {
            let bt = tri_vertex(t);
            for v in [a, b, c] {
                edges.push([v, bt]);
            }
            for [u, w] in [[a, b], [b, c], [a, c]] {
                let be = n + self.edge_index(u, w).expect("closed");
                edges.push([be, bt]);
                triangles.push([u, be, bt]);
                triangles.push([w, be, bt]);
            }
        }
        let complex = SimplicialComplex::from_simplices(n + ne + self.triangles.len(), &edges, &triangles)
            .expect("subdivision is a complex");
        let mut carrier: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        carrier.extend(self.edges.iter().map(|e| e.to_vec()));
        carrier.extend(self.triangles.iter().map(|t| t.to_vec()));
        Subdivision { complex, carrier }
    }

    /// Grid complex: a point for `n = 0`, a path with `subdivisions` edges
    /// for `n = 1`, a triangulated square grid for `n = 2`.
    pub fn grid(n: usize, subdivisions: usize) -> Result<Self> {
        let k = subdivisions;
        match n {
            0 => Ok(Self::point()),
            1 => Self::path(k + 1),
            2 => {
                let id = |i: usize, j: usize| i * (k + 1) + j;
                let mut edges = Vec::new();
                let mut triangles = Vec::new();
                for i in 0..=k {
                    for j in 0..=k {
                        if i < k {
                            edges.push([id(i, j), id(i + 1, j)]);
                        }
                        if j < k {
                            edges.push([id(i, j), id(i, j + 1)]);
                        }
                        if i < k && j < k {
                            edges.push([id(i, j), id(i + 1, j + 1)]);
                            triangles.push([id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
                            triangles.push([id(i, j), id(i, j + 1), id(i + 1, j + 1)]);
                        }
                    }
                }
                Self::from_simplices((k + 1) * (k + 1), &edges, &triangles)
            }
            _ => Err(invalid(format!("grid complexes exist in dimensions 0..=2, not {n}"))),
        }
    }

    /// Staircase triangulation of the product, truncated to dimension two.
    /// Vertex `(x, y)` is `x * |Y| + y`; simplices are chains in the
    /// product order whose projections are simplices.
    pub fn product_2skeleton(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let m = other.vertices;
        let id = |x: usize, y: usize| x * m + y;
        let face_x = |s: &[usize]| -> bool { simplex_in(self, s) };
        let face_y = |s: &[usize]| -> bool { simplex_in(other, s) };
        // chains of length 2 and 3: start from simplex pairs
        let mut edges = BTreeSet::new();
        let mut triangles = BTreeSet::new();
        let xs = self.all_simplices();
        let ys = other.all_simplices();
        for sx in &xs {
            for sy in &ys {
                // monotone lattice paths through sx × sy of at most 3 points
                for chain in staircase_chains(sx, sy) {
                    let pts: Vec<usize> = chain.iter().map(|&(x, y)| id(x, y)).collect();
                    let xs_: Vec<usize> = dedup_sorted(chain.iter().map(|p| p.0));
                    let ys_: Vec<usize> = dedup_sorted(chain.iter().map(|p| p.1));
                    if !face_x(&xs_) || !face_y(&ys_) {
                        continue;
                    }
                    match pts.len() {
                        2 => {
                            edges.insert(sorted2(pts[0], pts[1]));
                        }
                        3 => {
                            edges.insert(sorted2(pts[0], pts[1]));
                            edges.insert(sorted2(pts[1], pts[2]));
                            edges.insert(sorted2(pts[0], pts[2]));
                            triangles.insert(sorted3(pts[0], pts[1], pts[2]));
                        }
                        _ => {}
                    }
                }
            }
        }
        SimplicialComplex::new(self.vertices * m, edges.into_iter().collect(), triangles.into_iter().collect())
            .expect("product chains are closed under faces")
    }

    fn all_simplices(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (0..self.vertices).map(|v| vec![v]).collect();
        out.extend(self.edges.iter().map(|e| e.to_vec()));
        out.extend(self.triangles.iter().map(|t| t.to_vec()));
        out
    }
}

fn simplex_in(c: &SimplicialComplex, s: &[usize]) -> bool {
    match *s {
        [v] => v < c.vertices,
        [a, b] => c.has_edge(a, b),
        [a, b, c_] => c.has_triangle(a, b, c_),
        _ => false,
    }
}

fn dedup_sorted(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Strictly increasing chains of length 2 or 3 in the product order of the
/// sorted vertex lists.
fn staircase_chains(sx: &[usize], sy: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let pts: Vec<(usize, usize)> = sx.iter().flat_map(|&x| sy.iter().map(move |&y| (x, y))).collect();
    let le = |p: (usize, usize), q: (usize, usize)| p != q && p.0 <= q.0 && p.1 <= q.1;
    let mut out = Vec::new();
    for &p in &pts {
        for &q in &pts {
            if le(p, q) {
                out.push(vec![p, q]);
                for &r in &pts {
                    if le(q, r) {
                        out.push(vec![p, q, r]);
                    }
                }
            }
        }
    }
    out
}

/// A barycentric subdivision with the carrier simplex of each new vertex.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    pub carrier: Vec<Vec<usize>>,
}

/// A left action of a finite group on a complex by simplicial automorphisms.
#[derive(Debug, Clone)]
pub struct ComplexAction {
    pub group: FiniteGroup,
    pub complex: SimplicialComplex,
    vertex_action: SetAction,
}

impl ComplexAction {
    /// `images[g][v]` is `g · v`; checks the action laws and that simplices
    /// map to simplices.
    pub fn new(group: FiniteGroup, complex: SimplicialComplex, images: Vec<Vec<usize>>) -> Result<Self> {
        let vertex_action = SetAction::new(group.clone(), complex.vertex_count(), images)?;
        let a = ComplexAction { group, complex, vertex_action };
        for g in 0..a.group.order() {
            for &[u, v] in a.complex.edges() {
                if !a.complex.has_edge(a.act(g, u), a.act(g, v)) {
                    return Err(invalid(format!("element {g} does not map edge [{u}, {v}] to an edge")));
                }
            }
            for &[u, v, w] in a.complex.triangles() {
                if !a.complex.has_triangle(a.act(g, u), a.act(g, v), a.act(g, w)) {
                    return Err(invalid(format!("element {g} does not map triangle [{u}, {v}, {w}] to a triangle")));
                }
            }
        }
        Ok(a)
    }

    pub fn from_fn(group: FiniteGroup, complex: SimplicialComplex, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let images = (0..group.order()).map(|g| (0..complex.vertex_count()).map(|v| act(g, v)).collect()).collect();
        Self::new(group, complex, images)
    }

    pub fn trivial(group: FiniteGroup, complex: SimplicialComplex) -> Self {
        Self::from_fn(group, complex, |_, v| v).expect("trivial action")
    }

    #[inline]
    pub fn act(&self, g: usize, v: usize) -> usize {
        self.vertex_action.act(g, v)
    }

    pub fn vertex_images(&self) -> Vec<Vec<usize>> {
        (0..self.group.order()).map(|g| (0..self.complex.vertex_count()).map(|v| self.act(g, v)).collect()).collect()
    }

    pub fn stabilizer(&self, v: usize) -> Vec<usize> {
        self.vertex_action.stabilizer(v)
    }

    pub fn is_free_on_vertices(&self) -> bool {
        (0..self.complex.vertex_count()).all(|v| self.stabilizer(v).len() == 1)
    }

    /// Elements fixing every vertex.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| (0..self.complex.vertex_count()).all(|v| self.act(g, v) == v))
            .collect()
    }

    /// Induced action on the barycentric subdivision.
    pub fn subdivide(&self) -> (ComplexAction, Subdivision) {
        let sub = self.complex.barycentric_subdivision();
        let index: HashMap<Vec<usize>, usize> = sub.carrier.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let images = (0..self.group.order())
            .map(|g| {
                sub.carrier
                    .iter()
                    .map(|s| {
                        let img = dedup_sorted(s.iter().map(|&v| self.act(g, v)));
                        index[&img]
                    })
                    .collect()
            })
            .collect();
        let action = ComplexAction::new(self.group.clone(), sub.complex.clone(), images).expect("subdivided action");
        (action, sub)
    }

    /// Action of `group` through a surjection `q` onto the acting group,
    /// e.g. to model an action with a kernel.
    pub fn pull_back(&self, group: FiniteGroup, q: &[usize]) -> Result<ComplexAction> {
        if !group.is_homomorphism(&self.group, q) {
            return Err(invalid("map is not a homomorphism onto the acting group"));
        }
        Self::from_fn(group, self.complex.clone(), |g, v| self.act(q[g], v))
    }

    /// Action of `G/N` for a normal subgroup `N` contained in the kernel of
    /// every vertex, with the quotient map.
    pub fn quotient_group_action(&self, normal: &[usize]) -> Result<(ComplexAction, Vec<usize>)> {
        let (quotient, map) = self.group.quotient(normal)?;
        let mut rep = vec![usize::MAX; quotient.order()];
        for g in (0..self.group.order()).rev() {
            rep[map[g]] = g;
        }
        let action = Self::from_fn(quotient, self.complex.clone(), |c, v| self.act(rep[c], v))?;
        Ok((action, map))
    }

    /// Least graph distance between a vertex and a distinct translate.
    pub fn translation_distance(&self) -> Option<usize> {
        let adj = self.complex.neighbors();
        let n = self.complex.vertex_count();
        let mut best: Option<usize> = None;
        for v in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[v] = 0;
            let mut queue = VecDeque::from([v]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for g in 0..self.group.order() {
                let w = self.act(g, v);
                if w != v && dist[w] != usize::MAX {
                    best = Some(best.map_or(dist[w], |b| b.min(dist[w])));
                }
            }
        }
        best
    }

    /// Cellular action on the complex viewed as a [`CellComplex2`].
    pub fn to_cell_action(&self) -> CellAction {
        let cx = &self.complex;
        let edge_act = (0..self.group.order())
            .map(|g| {
                cx.edges()
                    .iter()
                    .map(|&[a, b]| cx.edge_letter(self.act(g, a), self.act(g, b)).expect("simplicial"))
                    .collect()
            })
            .collect();
        CellAction {
            group: self.group.clone(),
            complex: cx.to_cell_complex(),
            vertex_act: self.vertex_images(),
            edge_act,
        }
    }
}

/// The standard simply connected free `G`-complex used as the 2-skeleton of
/// `EG`: the join of three copies of `G`. Vertex `(g, layer)` is
/// `layer * |G| + g`; `G` acts by left multiplication in every layer.
pub fn eg_skeleton(group: &FiniteGroup) -> ComplexAction {
    let n = group.order();
    let v = |layer: usize, g: usize| layer * n + g;
    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    for a in 0..n {
        for b in 0..n {
            edges.push([v(0, a), v(1, b)]);
            edges.push([v(1, a), v(2, b)]);
            edges.push([v(0, a), v(2, b)]);
            for c in 0..n {
                triangles.push([v(0, a), v(1, b), v(2, c)]);
            }
        }
    }
    let complex = SimplicialComplex::new(3 * n, edges, triangles).expect("join is a complex");
    ComplexAction::from_fn(group.clone(), complex, |g, x| v(x / n, group.mul(g, x % n))).expect("left multiplication")
}

/// Result of [`quotient_by_free_action`].
#[derive(Debug, Clone)]
pub struct QuotientComplex {
    pub quotient: SimplicialComplex,
    /// The (possibly subdivided) action whose orbits were taken.
    pub cover: ComplexAction,
    pub projection: Vec<usize>,
    pub subdivisions: usize,
}

/// Orbit complex of an action that is free on the realization. Subdivides
/// at most twice until translates of a vertex are at distance ≥ 3, which
/// makes the projection a covering map onto a simplicial complex.
pub fn quotient_by_free_action(action: &ComplexAction) -> Result<QuotientComplex> {
    let mut cover = action.clone();
    let mut rounds = 0;
    loop {
        if !cover.is_free_on_vertices() {
            return Err(Error::NotFree(if rounds == 0 {
                "some vertex has a nontrivial stabilizer".into()
            } else {
                "some simplex is mapped to itself with a fixed barycenter".into()
            }));
        }
        if cover.translation_distance().is_none_or(|d| d >= 3) {
            break;
        }
        if rounds == 2 {
            return Err(Error::NotFree("translates stay too close after two subdivisions".into()));
        }
        cover = cover.subdivide().0;
        rounds += 1;
    }
    let g = cover.group.order();
    let n = cover.complex.vertex_count();
    let (orbit, _, reps) = cell::orbit_data(g, n, |h, v| cover.act(h, v), "vertex")?;
    let edges: Vec<[usize; 2]> = cover.complex.edges().iter().map(|&[a, b]| sorted2(orbit[a], orbit[b])).collect();
    let triangles: Vec<[usize; 3]> =
        cover.complex.triangles().iter().map(|&[a, b, c]| sorted3(orbit[a], orbit[b], orbit[c])).collect();
    let quotient = SimplicialComplex::new(reps.len(), edges, triangles)?;
    if cover.complex.euler_characteristic() != g as i64 * quotient.euler_characteristic() {
        return Err(Error::NotFree("Euler characteristic is not multiplicative".into()));
    }
    Ok(QuotientComplex { quotient, cover, projection: orbit, subdivisions: rounds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::hom_count;

    fn rotation(n: usize, k: usize, order: usize) -> ComplexAction {
        ComplexAction::from_fn(FiniteGroup::cyclic(order), SimplicialComplex::cycle(n).unwrap(), |g, v| (v + g * k) % n)
            .unwrap()
    }

    #[test]
    fn basic_fundamental_groups() {
        let p5 = SimplicialComplex::path(5).unwrap();
        assert!(p5.pi1_presentation(0).unwrap().presentation.abelianization().is_trivial());
        let c6 = SimplicialComplex::cycle(6).unwrap();
        let pi = c6.pi1_presentation(0).unwrap().presentation;
        assert_eq!(pi.abelianization().to_string(), "Z");
        assert_eq!(hom_count(&pi.simplify().presentation, &FiniteGroup::cyclic(2)).unwrap(), 2);
        assert!(SimplicialComplex::triangle().pi1_presentation(1).unwrap().presentation.abelianization().is_trivial());
        let two_points = SimplicialComplex::new(2, Vec::new(), Vec::new()).unwrap();
        assert!(matches!(two_points.pi1_presentation(0), Err(Error::Disconnected)));
    }

    #[test]
    fn strict_constructor_checks_faces() {
        assert!(SimplicialComplex::new(3, vec![[0, 1], [1, 2]], vec![[0, 1, 2]]).is_err());
        assert!(SimplicialComplex::new(2, vec![[1, 1]], Vec::new()).is_err());
        assert!(SimplicialComplex::from_simplices(3, &[], &[[0, 1, 2]]).is_ok());
    }

    #[test]
    fn products() {
        let c4 = SimplicialComplex::cycle(4).unwrap();
        let torus = c4.product_2skeleton(&c4);
        assert_eq!(torus.pi1_presentation(0).unwrap().presentation.abelianization().to_string(), "Z^2");
        assert_eq!(torus.euler_characteristic(), 0);
        let p2 = SimplicialComplex::path(2).unwrap();
        assert!(p2.product_2skeleton(&p2).pi1_presentation(0).unwrap().presentation.abelianization().is_trivial());
        assert_eq!(SimplicialComplex::point().product_2skeleton(&c4), c4);
    }

    #[test]
    fn subdivision_and_grids() {
        let boundary = SimplicialComplex::cycle(3).unwrap();
        let hex = boundary.barycentric_subdivision().complex;
        assert_eq!((hex.vertex_count(), hex.edges().len()), (6, 6));
        assert_eq!(hex.pi1_presentation(0).unwrap().presentation.abelianization().to_string(), "Z");
        let sd = SimplicialComplex::triangle().barycentric_subdivision().complex;
        assert_eq!((sd.vertex_count(), sd.triangles().len(), sd.euler_characteristic()), (7, 6, 1));
        assert_eq!(SimplicialComplex::grid(1, 4).unwrap().vertex_count(), 5);
        let g2 = SimplicialComplex::grid(2, 2).unwrap();
        assert!(g2.pi1_presentation(0).unwrap().presentation.abelianization().is_trivial());
        assert_eq!(g2.euler_characteristic(), 1);
        assert!(SimplicialComplex::grid(3, 2).is_err());
    }

    #[test]
    fn eg_is_free_and_simply_connected() {
        for g in [FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)] {
            let eg = eg_skeleton(&g);
            assert!(eg.is_free_on_vertices());
            let pi = eg.complex.pi1_presentation(0).unwrap().presentation;
            assert!(pi.abelianization().is_trivial());
            let simple = pi.simplify().presentation;
            assert_eq!(simple.generator_count(), 0);
        }
        assert_eq!(eg_skeleton(&FiniteGroup::trivial()).complex, SimplicialComplex::triangle());
    }

    #[test]
    fn quotients() {
        let antipodal = rotation(6, 3, 2);
        let q = quotient_by_free_action(&antipodal).unwrap();
        assert_eq!((q.quotient.vertex_count(), q.subdivisions), (3, 0));
        assert_eq!(q.quotient.pi1_presentation(0).unwrap().presentation.abelianization().to_string(), "Z");
        let q3 = quotient_by_free_action(&rotation(6, 2, 3)).unwrap();
        assert_eq!((q3.quotient.vertex_count(), q3.subdivisions), (4, 1));
        assert_eq!(q3.quotient.pi1_presentation(0).unwrap().presentation.abelianization().to_string(), "Z");
        let trivial = ComplexAction::trivial(FiniteGroup::trivial(), SimplicialComplex::cycle(5).unwrap());
        assert_eq!(quotient_by_free_action(&trivial).unwrap().quotient, SimplicialComplex::cycle(5).unwrap());
        let flip = ComplexAction::from_fn(FiniteGroup::cyclic(2), SimplicialComplex::path(2).unwrap(), |g, v| (v + g) % 2)
            .unwrap();
        assert!(matches!(quotient_by_free_action(&flip), Err(Error::NotFree(_))));
    }

    #[test]
    fn cones_and_graphs() {
        let c5 = SimplicialComplex::cycle(5).unwrap();
        assert!(c5.is_graph_or_cone());
        let cone = c5.cone().unwrap();
        assert!(cone.is_graph_or_cone());
        assert!(cone.pi1_presentation(0).unwrap().presentation.abelianization().is_trivial());
        let torus = c5.product_2skeleton(&SimplicialComplex::cycle(3).unwrap());
        assert!(!torus.is_graph_or_cone());
    }
}
