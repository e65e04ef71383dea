//! Two-dimensional CW complexes with combinatorial attaching maps, their
//! edge-path presentations, and quotients by free cellular actions.

use std::collections::{HashMap, VecDeque};

use crate::error::{invalid, Error, Result};
use crate::fpgroup::presentation::{gen_of, inverse_word, letter, substitute, GroupPresentation, Word};
use crate::group::FiniteGroup;

/// Vertices `0..n`, directed edges, and 2-cells attached along closed edge
/// paths (signed letters `±(e + 1)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex2 {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<Word>,
}

/// Edge-path presentation: one generator per edge, a relator per spanning
/// tree edge and per 2-cell.
#[derive(Debug, Clone)]
pub struct Pi1Presentation {
    pub presentation: GroupPresentation,
    pub base: usize,
    /// Tree path from the base to each vertex, as an edge word.
    pub tree_words: Vec<Word>,
    edges: Vec<(usize, usize)>,
}

impl Pi1Presentation {
    /// The loop through edge `e` closed up along the tree.
    pub fn generator_loop(&self, e: usize) -> Word {
        let (a, b) = self.edges[e];
        let mut w = self.tree_words[a].clone();
        w.push(letter(e, true));
        w.extend(inverse_word(&self.tree_words[b]));
        w
    }

    /// Images of the generators under a cellular map given on edges as
    /// edge words in the target; the base point must map to the target base.
    pub fn induced_images(&self, edge_images: &[Word]) -> Vec<Word> {
        (0..self.edges.len()).map(|e| substitute(&self.generator_loop(e), edge_images)).collect()
    }
}

impl CellComplex2 {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, faces: Vec<Word>) -> Result<Self> {
        if let Some(e) = edges.iter().position(|&(a, b)| a >= vertices || b >= vertices) {
            return Err(invalid(format!("edge {e} has an endpoint out of range")));
        }
        let c = CellComplex2 { vertices, edges, faces };
        for (i, f) in c.faces.iter().enumerate() {
            if f.is_empty() || f.iter().any(|&l| l == 0 || gen_of(l) >= c.edges.len()) {
                return Err(invalid(format!("face {i} has an empty or out-of-range boundary")));
            }
            let start = c.tail(f[0]);
            let end = f.iter().try_fold(start, |at, &l| (c.tail(l) == at).then(|| c.head(l)));
            if end != Some(start) {
                return Err(invalid(format!("face {i} boundary is not a closed path")));
            }
        }
        Ok(c)
    }

    pub fn tail(&self, l: i32) -> usize {
        let (a, b) = self.edges[gen_of(l)];
        if l > 0 {
            a
        } else {
            b
        }
    }

    pub fn head(&self, l: i32) -> usize {
        let (a, b) = self.edges[gen_of(l)];
        if l > 0 {
            b
        } else {
            a
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn components(&self) -> Vec<usize> {
        let mut uf = petgraph::unionfind::UnionFind::new(self.vertices);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        let labels = uf.into_labeling();
        let mut index = HashMap::new();
        labels
            .iter()
            .map(|&r| {
                let next = index.len();
                *index.entry(r).or_insert(next)
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// The component containing `v`, with the old index of each new vertex
    /// and of each new edge.
    pub fn component_of(&self, v: usize) -> (CellComplex2, Vec<usize>, Vec<usize>) {
        let comp = self.components();
        let keep: Vec<usize> = (0..self.vertices).filter(|&u| comp[u] == comp[v]).collect();
        let mut vmap = vec![usize::MAX; self.vertices];
        for (i, &u) in keep.iter().enumerate() {
            vmap[u] = i;
        }
        let kept_edges: Vec<usize> = (0..self.edges.len()).filter(|&e| comp[self.edges[e].0] == comp[v]).collect();
        let mut emap = vec![0i32; self.edges.len()];
        for (i, &e) in kept_edges.iter().enumerate() {
            emap[e] = i as i32 + 1;
        }
        let edges = kept_edges.iter().map(|&e| (vmap[self.edges[e].0], vmap[self.edges[e].1])).collect();
        let faces = self
            .faces
            .iter()
            .filter(|f| comp[self.tail(f[0])] == comp[v])
            .map(|f| f.iter().map(|&l| l.signum() * emap[gen_of(l)]).collect())
            .collect();
        (CellComplex2 { vertices: keep.len(), edges, faces }, keep, kept_edges)
    }

    /// Breadth-first spanning tree from `base`, lowest edge index first.
    pub fn pi1(&self, base: usize) -> Result<Pi1Presentation> {
        if base >= self.vertices {
            return Err(Error::UnknownObject(base));
        }
        let mut incident: Vec<Vec<i32>> = vec![Vec::new(); self.vertices];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            incident[a].push(letter(e, true));
            incident[b].push(letter(e, false));
        }
        let mut tree_words: Vec<Option<Word>> = vec![None; self.vertices];
        tree_words[base] = Some(Vec::new());
        let mut relators = Vec::new();
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            for &l in &incident[v] {
                let w = self.head(l);
                if tree_words[w].is_none() {
                    let mut word = tree_words[v].clone().expect("visited");
                    word.push(l);
                    tree_words[w] = Some(word);
                    relators.push(vec![l.abs()]);
                    queue.push_back(w);
                }
            }
        }
        let tree_words: Vec<Word> = tree_words.into_iter().collect::<Option<_>>().ok_or(Error::Disconnected)?;
        relators.extend(self.faces.iter().cloned());
        Ok(Pi1Presentation {
            presentation: GroupPresentation::new(self.edges.len(), relators)?,
            base,
            tree_words,
            edges: self.edges.clone(),
        })
    }
}

/// A left action of a finite group by cellular automorphisms of a
/// [`CellComplex2`]. Edges may be reversed: `edge_act[g][e]` is a signed letter.
#[derive(Debug, Clone)]
pub struct CellAction {
    pub group: FiniteGroup,
    pub complex: CellComplex2,
    pub vertex_act: Vec<Vec<usize>>,
    pub edge_act: Vec<Vec<i32>>,
}

/// Quotient of a free cellular action together with the data relating it
/// to the cover.
#[derive(Debug, Clone)]
pub struct FreeQuotient {
    pub quotient: CellComplex2,
    pub vertex_orbit: Vec<usize>,
    /// For each cover vertex `p`, the element `g` with `p = g · rep(orbit(p))`.
    pub vertex_offset: Vec<usize>,
    pub vertex_reps: Vec<usize>,
    /// Signed quotient letter of each cover edge in its stored orientation.
    pub edge_letter: Vec<i32>,
    /// Group label of each quotient edge: a lift starting at the
    /// representative of its tail ends at `label · rep(head)`.
    pub edge_label: Vec<usize>,
}

impl FreeQuotient {
    /// Quotient word of a cover edge path.
    pub fn push_word(&self, w: &[i32]) -> Word {
        w.iter().map(|&l| l.signum() * self.edge_letter[gen_of(l)]).collect()
    }

    /// Group element carried by a quotient edge word (lifting holonomy).
    pub fn holonomy(&self, group: &FiniteGroup, w: &[i32]) -> usize {
        w.iter().fold(group.identity(), |acc, &l| {
            let k = self.edge_label[gen_of(l)];
            group.mul(acc, if l > 0 { k } else { group.inv(k) })
        })
    }
}

impl CellAction {
    pub fn act_letter(&self, g: usize, l: i32) -> i32 {
        let img = self.edge_act[g][gen_of(l)];
        if l > 0 {
            img
        } else {
            -img
        }
    }

    /// Orbit complex of a free action. Errors if some vertex, edge or face
    /// has a nontrivial stabilizer.
    pub fn free_quotient(&self) -> Result<FreeQuotient> {
        let g = &self.group;
        let c = &self.complex;
        let (vertex_orbit, vertex_offset, vertex_reps) = orbit_data(g.order(), c.vertices, |h, v| self.vertex_act[h][v], "vertex")?;

        let mut edge_letter = vec![0i32; c.edges.len()];
        let mut edges = Vec::new();
        let mut edge_label = Vec::new();
        for e in 0..c.edges.len() {
            if edge_letter[e] != 0 {
                continue;
            }
            let q = edges.len() as i32 + 1;
            for h in 0..g.order() {
                let img = self.edge_act[h][e];
                let slot = &mut edge_letter[gen_of(img)];
                if *slot != 0 {
                    return Err(Error::NotFree(format!("edge {e} has a nontrivial stabilizer")));
                }
                *slot = img.signum() * q;
            }
            let (p0, p1) = c.edges[e];
            edges.push((vertex_orbit[p0], vertex_orbit[p1]));
            edge_label.push(g.mul(g.inv(vertex_offset[p0]), vertex_offset[p1]));
        }

        let mut key_of_face: HashMap<Vec<usize>, usize> = HashMap::new();
        for (i, f) in c.faces.iter().enumerate() {
            key_of_face.insert(face_key(f), i);
        }
        let mut face_seen = vec![false; c.faces.len()];
        let mut faces = Vec::new();
        for (i, f) in c.faces.iter().enumerate() {
            if face_seen[i] {
                continue;
            }
            for h in 0..g.order() {
                let img: Word = f.iter().map(|&l| self.act_letter(h, l)).collect();
                let j = *key_of_face
                    .get(&face_key(&img))
                    .ok_or_else(|| invalid(format!("face {i} is not mapped to a face")))?;
                if std::mem::replace(&mut face_seen[j], true) {
                    return Err(Error::NotFree(format!("face {i} has a nontrivial stabilizer")));
                }
            }
            faces.push(f.iter().map(|&l| l.signum() * edge_letter[gen_of(l)]).collect());
        }
        let quotient = CellComplex2::new(vertex_reps.len(), edges, faces)?;
        Ok(FreeQuotient { quotient, vertex_orbit, vertex_offset, vertex_reps, edge_letter, edge_label })
    }
}

fn face_key(f: &[i32]) -> Vec<usize> {
    let mut k: Vec<usize> = f.iter().map(|&l| gen_of(l)).collect();
    k.sort_unstable();
    k
}

/// Orbits of a free action on `0..n`: orbit index, offset element and
/// orbit representatives (least element of each orbit).
pub(crate) fn orbit_data(
    order: usize,
    n: usize,
    act: impl Fn(usize, usize) -> usize,
    what: &str,
) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let mut orbit = vec![usize::MAX; n];
    let mut offset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for v in 0..n {
        if orbit[v] != usize::MAX {
            continue;
        }
        for h in 0..order {
            let w = act(h, v);
            if orbit[w] != usize::MAX {
                return Err(Error::NotFree(format!("{what} {v} has a nontrivial stabilizer")));
            }
            orbit[w] = reps.len();
            offset[w] = h;
        }
        reps.push(v);
    }
    Ok((orbit, offset, reps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: usize) -> CellComplex2 {
        CellComplex2::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect(), Vec::new()).unwrap()
    }

    #[test]
    fn circle_and_disk() {
        let c = circle(4);
        assert_eq!(c.pi1(0).unwrap().presentation.abelianization().to_string(), "Z");
        let disk = CellComplex2::new(4, c.edges.clone(), vec![vec![1, 2, 3, 4]]).unwrap();
        assert!(disk.pi1(2).unwrap().presentation.abelianization().is_trivial());
        assert!(CellComplex2::new(4, c.edges.clone(), vec![vec![1, 3]]).is_err());
    }

    #[test]
    fn rotation_quotient_of_a_circle() {
        let c = circle(6);
        let z3 = FiniteGroup::cyclic(3);
        let vertex_act: Vec<Vec<usize>> = (0..3).map(|g| (0..6).map(|v| (v + 2 * g) % 6).collect()).collect();
        let edge_act = (0..3).map(|g| (0..6).map(|e| (e + 2 * g) % 6 + 1).collect()).collect();
        let q = CellAction { group: z3.clone(), complex: c, vertex_act, edge_act }.free_quotient().unwrap();
        assert_eq!(q.quotient.vertices, 2);
        assert_eq!(q.quotient.edges.len(), 2);
        let pi = q.quotient.pi1(0).unwrap();
        let gen_holonomy: Vec<usize> = (0..2).map(|e| q.holonomy(&z3, &pi.generator_loop(e))).collect();
        let generated = z3.subgroup_generated(&gen_holonomy);
        assert_eq!(generated.len(), 3);
    }

    #[test]
    fn disconnected_complex_is_rejected() {
        let c = CellComplex2::new(3, vec![(0, 1)], Vec::new()).unwrap();
        assert!(matches!(c.pi1(0), Err(Error::Disconnected)));
        let (comp, keep, _) = c.component_of(2);
        assert_eq!((comp.vertices, keep), (1, vec![2]));
    }
}
