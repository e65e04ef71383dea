//! Finite presentations, presentation maps, and Tietze simplification.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::{invariant_factors, IntMatrix, Lattice};
use crate::error::{invalid, Result};
use crate::group::FiniteGroup;

/// A word in the free group: letter `k > 0` is generator `k - 1`,
/// letter `-k` its inverse.
pub type Word = Vec<i32>;

#[inline]
pub fn letter(gen: usize, positive: bool) -> i32 {
    let l = gen as i32 + 1;
    if positive {
        l
    } else {
        -l
    }
}

#[inline]
pub fn gen_of(l: i32) -> usize {
    (l.unsigned_abs() - 1) as usize
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

pub fn inverse_word(w: &[i32]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

pub fn concat(parts: &[&[i32]]) -> Word {
    free_reduce(&parts.concat())
}

/// Substitutes `images[g]` for each generator `g` (inverted for inverse letters).
pub fn substitute(w: &[i32], images: &[Word]) -> Word {
    let mut out = Vec::new();
    for &l in w {
        let img = &images[gen_of(l)];
        if l > 0 {
            out.extend_from_slice(img);
        } else {
            out.extend(img.iter().rev().map(|&x| -x));
        }
    }
    free_reduce(&out)
}

/// Evaluates a word in a finite group given generator images.
pub fn evaluate(w: &[i32], group: &FiniteGroup, images: &[usize]) -> usize {
    w.iter().fold(group.identity(), |acc, &l| {
        let g = images[gen_of(l)];
        group.mul(acc, if l > 0 { g } else { group.inv(g) })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    generators: usize,
    relators: Vec<Word>,
}

/// Free rank plus invariant factors `> 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Abelianization {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Abelianization {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for Abelianization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Result of [`GroupPresentation::simplify`]: the reduced presentation and
/// how old generators are expressed in it.
#[derive(Debug, Clone)]
pub struct Simplified {
    pub presentation: GroupPresentation,
    /// Image of each original generator as a word in the new generators.
    pub old_to_new: Vec<Word>,
    /// Original index of each surviving generator.
    pub kept: Vec<usize>,
}

impl Simplified {
    pub fn rewrite(&self, w: &[i32]) -> Word {
        substitute(w, &self.old_to_new)
    }
}

impl GroupPresentation {
    /// Letters must be nonzero and in range; relators are freely reduced
    /// and empty relators dropped.
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Self> {
        for (i, r) in relators.iter().enumerate() {
            if let Some(&l) = r.iter().find(|&&l| l == 0 || gen_of(l) >= generators) {
                return Err(invalid(format!("relator {i} has letter {l} out of range")));
            }
        }
        let relators = relators.iter().map(|r| free_reduce(r)).filter(|r| !r.is_empty()).collect();
        Ok(GroupPresentation { generators, relators })
    }

    pub fn trivial() -> Self {
        GroupPresentation { generators: 0, relators: Vec::new() }
    }

    pub fn free(n: usize) -> Self {
        GroupPresentation { generators: n, relators: Vec::new() }
    }

    /// `⟨a | aⁿ⟩`.
    pub fn cyclic(n: usize) -> Self {
        GroupPresentation { generators: 1, relators: vec![vec![1; n]] }
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Self {
        let mut relators = self.relators.clone();
        relators.extend(extra.into_iter().map(|r| free_reduce(&r)).filter(|r| !r.is_empty()));
        GroupPresentation { generators: self.generators, relators }
    }

    /// Exponent-sum vector of a word.
    pub fn exponent_vector(&self, w: &[i32]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.generators];
        for &l in w {
            if l > 0 {
                v[gen_of(l)] += 1;
            } else {
                v[gen_of(l)] -= 1;
            }
        }
        v
    }

    /// Relators × generators matrix of exponent sums.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = self.relators.iter().map(|r| self.exponent_vector(r)).collect();
        IntMatrix::from_rows_with_cols(&rows, self.generators)
    }

    pub fn relator_lattice(&self) -> Lattice {
        Lattice::spanned_by(&self.exponent_matrix())
    }

    pub fn abelianization(&self) -> Abelianization {
        let diag = invariant_factors(&self.exponent_matrix());
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        Abelianization {
            rank: self.generators - nonzero,
            torsion: diag.into_iter().filter(|d| !d.is_zero() && !d.is_one()).collect(),
        }
    }

    /// Tietze reduction: drops generators killed by length-one relators and
    /// eliminates generators that occur exactly once in some relator, shortest
    /// relators first, while the total relator length stays bounded.
    pub fn simplify(&self) -> Simplified {
        let n = self.generators;
        let mut alive = vec![true; n];
        // (generator, value in the generators alive at that point)
        let mut eliminated: Vec<(usize, Word)> = Vec::new();
        let mut rels: Vec<Word> = self.relators.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect();
        let budget = 4 * rels.iter().map(Vec::len).sum::<usize>() + 1000;
        loop {
            let killed: BTreeSet<usize> = rels.iter().filter(|r| r.len() == 1).map(|r| gen_of(r[0])).collect();
            if killed.is_empty() {
                break;
            }
            for &g in &killed {
                alive[g] = false;
                eliminated.push((g, Vec::new()));
            }
            rels = rels
                .iter()
                .map(|w| cyclic_reduce(&w.iter().copied().filter(|&l| !killed.contains(&gen_of(l))).collect::<Word>()))
                .filter(|w| !w.is_empty())
                .collect();
        }
        let mut scratch = Vec::new();
        loop {
            // (relator index, position) of a letter occurring once, shortest relator first
            let mut best: Option<(usize, usize)> = None;
            for (ri, r) in rels.iter().enumerate() {
                if best.is_some_and(|(bi, _)| rels[bi].len() <= r.len()) {
                    continue;
                }
                scratch.clear();
                scratch.extend(r.iter().map(|&l| gen_of(l)));
                scratch.sort_unstable();
                let once = |g: usize| {
                    let lo = scratch.partition_point(|&x| x < g);
                    scratch.get(lo + 1) != Some(&g)
                };
                if let Some(pos) = r.iter().position(|&l| once(gen_of(l))) {
                    best = Some((ri, pos));
                }
            }
            let Some((ri, pos)) = best else { break };
            let r = &rels[ri];
            let g = gen_of(r[pos]);
            // r = u x^e v = 1  =>  x^e = (v u)^-1
            let rotated: Word = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
            let value = if r[pos] > 0 { inverse_word(&rotated) } else { rotated };
            let mut sub: Vec<Word> = Vec::new();
            let new_rels: Vec<Word> = rels
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != ri)
                .map(|(_, w)| {
                    if !w.iter().any(|&l| gen_of(l) == g) {
                        return w.clone();
                    }
                    if sub.is_empty() {
                        sub = (0..n).map(|k| vec![letter(k, true)]).collect();
                        sub[g] = value.clone();
                    }
                    cyclic_reduce(&substitute(w, &sub))
                })
                .filter(|w| !w.is_empty())
                .collect();
            if new_rels.iter().map(Vec::len).sum::<usize>() > budget {
                break;
            }
            rels = new_rels;
            alive[g] = false;
            eliminated.push((g, value));
        }
        let kept: Vec<usize> = (0..n).filter(|&g| alive[g]).collect();
        let mut renumber = vec![0i32; n];
        for (i, &g) in kept.iter().enumerate() {
            renumber[g] = i as i32 + 1;
        }
        let mut images: Vec<Word> = vec![Vec::new(); n];
        for &g in &kept {
            images[g] = vec![renumber[g]];
        }
        for (g, value) in eliminated.iter().rev() {
            images[*g] = substitute(value, &images);
        }
        let rn = |w: &Word| -> Word { w.iter().map(|&l| l.signum() * renumber[gen_of(l)]).collect() };
        let mut relators: Vec<Word> = rels.iter().map(rn).collect();
        dedup_relators(&mut relators);
        Simplified {
            presentation: GroupPresentation { generators: kept.len(), relators },
            old_to_new: images,
            kept,
        }
    }

    /// Presentation of a finite group on a small generating set, with
    /// relators `w_g s w_{gs}⁻¹` read off a breadth-first Cayley-graph tree.
    pub fn of_group(group: &FiniteGroup) -> GroupWithPresentation {
        let gens = group.generating_set();
        let n = group.order();
        let mut words: Vec<Option<Word>> = vec![None; n];
        words[group.identity()] = Some(Vec::new());
        let mut queue = std::collections::VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let y = group.mul(x, s);
                if words[y].is_none() {
                    let mut w = words[x].clone().expect("visited");
                    w.push(letter(k, true));
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        let words: Vec<Word> = words.into_iter().map(|w| w.expect("generating set spans")).collect();
        let mut relators = Vec::new();
        for x in 0..n {
            for (k, &s) in gens.iter().enumerate() {
                let y = group.mul(x, s);
                let r = concat(&[&words[x], &[letter(k, true)], &inverse_word(&words[y])]);
                if !r.is_empty() {
                    relators.push(r);
                }
            }
        }
        dedup_relators(&mut relators);
        GroupWithPresentation {
            presentation: GroupPresentation { generators: gens.len(), relators },
            generators: gens,
            words,
        }
    }
}

fn dedup_relators(rels: &mut Vec<Word>) {
    let mut seen = BTreeSet::new();
    rels.retain(|r| {
        // canonical key up to cyclic rotation and inversion
        let inv = inverse_word(r);
        let key = (0..r.len())
            .flat_map(|i| {
                let a: Word = r[i..].iter().chain(&r[..i]).copied().collect();
                let b: Word = inv[i..].iter().chain(&inv[..i]).copied().collect();
                [a, b]
            })
            .min()
            .unwrap_or_default();
        seen.insert(key)
    });
}

/// A finite group with a presentation on `generators` (group elements) and
/// a normal-form word for every element.
#[derive(Debug, Clone)]
pub struct GroupWithPresentation {
    pub presentation: GroupPresentation,
    pub generators: Vec<usize>,
    pub words: Vec<Word>,
}

/// A homomorphism between presented groups, given on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationMap {
    pub source: GroupPresentation,
    pub target: GroupPresentation,
    pub images: Vec<Word>,
}

impl PresentationMap {
    /// Checks ranges and that every source relator maps into the target's
    /// relator lattice (triviality in the abelianization).
    pub fn new(source: GroupPresentation, target: GroupPresentation, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.generator_count() {
            return Err(invalid(format!(
                "map has {} images for {} generators",
                images.len(),
                source.generator_count()
            )));
        }
        if images.iter().flatten().any(|&l| l == 0 || gen_of(l) >= target.generator_count()) {
            return Err(invalid("image letter out of range"));
        }
        let images: Vec<Word> = images.iter().map(|w| free_reduce(w)).collect();
        let map = PresentationMap { source, target, images };
        let lattice = map.target.relator_lattice();
        for (i, r) in map.source.relators.iter().enumerate() {
            if !lattice.contains(&map.target.exponent_vector(&map.apply(r))) {
                return Err(invalid(format!("relator {i} does not map to an abelian-trivial word")));
            }
        }
        Ok(map)
    }

    pub fn apply(&self, w: &[i32]) -> Word {
        substitute(w, &self.images)
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &PresentationMap) -> Result<PresentationMap> {
        if self.target != then.source {
            return Err(invalid("presentation maps are not composable"));
        }
        Ok(PresentationMap {
            source: self.source.clone(),
            target: then.target.clone(),
            images: self.images.iter().map(|w| then.apply(w)).collect(),
        })
    }

    /// Source generators × target generators matrix of the induced map on
    /// abelianizations (row vectors act on the right).
    pub fn abelian_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = self.images.iter().map(|w| self.target.exponent_vector(w)).collect();
        IntMatrix::from_rows_with_cols(&rows, self.target.generator_count())
    }

    /// The zero map into the trivial group.
    pub fn to_trivial(source: &GroupPresentation) -> Self {
        PresentationMap {
            source: source.clone(),
            target: GroupPresentation::trivial(),
            images: vec![Vec::new(); source.generator_count()],
        }
    }

    /// The map out of the trivial group.
    pub fn from_trivial(target: &GroupPresentation) -> Self {
        PresentationMap { source: GroupPresentation::trivial(), target: target.clone(), images: Vec::new() }
    }

    pub fn identity(p: &GroupPresentation) -> Self {
        PresentationMap {
            source: p.clone(),
            target: p.clone(),
            images: (0..p.generator_count()).map(|g| vec![letter(g, true)]).collect(),
        }
    }

    /// Rewrites source and target through their Tietze simplifications.
    pub fn simplified(&self, source: &Simplified, target: &Simplified) -> PresentationMap {
        let images = source
            .kept
            .iter()
            .map(|&g| target.rewrite(&self.images[g]))
            .collect();
        PresentationMap {
            source: source.presentation.clone(),
            target: target.presentation.clone(),
            images,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(gens: usize, rels: &[&[i32]]) -> Abelianization {
        GroupPresentation::new(gens, rels.iter().map(|r| r.to_vec()).collect()).unwrap().abelianization()
    }

    #[test]
    fn abelianization_examples() {
        let commutator = ab(2, &[&[1, 2, -1, -2]]);
        assert_eq!((commutator.rank, commutator.torsion.len()), (2, 0));
        assert_eq!(ab(1, &[&[1, 1]]).to_string(), "Z/2");
        assert_eq!(ab(2, &[&[1, 2, 1, -2]]).to_string(), "Z/2 + Z");
        assert_eq!(ab(0, &[]).to_string(), "0");
    }

    #[test]
    fn construction_rejects_bad_letters() {
        assert!(GroupPresentation::new(1, vec![vec![2]]).is_err());
        assert!(GroupPresentation::new(1, vec![vec![0]]).is_err());
        let p = GroupPresentation::new(1, vec![vec![1, -1], vec![1, 1, -1]]).unwrap();
        assert_eq!(p.relators(), &[vec![1]]);
    }

    #[test]
    fn simplification_preserves_abelianization() {
        // edge-path style presentation of a circle: 3 edges, two killed by a tree
        let p = GroupPresentation::new(3, vec![vec![1], vec![2]]).unwrap();
        let s = p.simplify();
        assert_eq!(s.presentation.generator_count(), 1);
        assert_eq!(s.presentation.abelianization(), p.abelianization());
        let q = GroupPresentation::new(3, vec![vec![1, 2, -3], vec![3, 3]]).unwrap();
        let s = q.simplify();
        assert_eq!(s.presentation.abelianization(), q.abelianization());
    }

    #[test]
    fn group_presentations_have_the_right_abelianization() {
        assert_eq!(GroupPresentation::of_group(&FiniteGroup::cyclic(6)).presentation.abelianization().to_string(), "Z/6");
        assert_eq!(GroupPresentation::of_group(&FiniteGroup::symmetric(3)).presentation.abelianization().to_string(), "Z/2");
        assert_eq!(GroupPresentation::of_group(&FiniteGroup::alternating(4)).presentation.abelianization().to_string(), "Z/3");
    }

    #[test]
    fn presentation_maps_check_relators() {
        let z = GroupPresentation::free(1);
        let z2 = GroupPresentation::cyclic(2);
        assert!(PresentationMap::new(z.clone(), z2.clone(), vec![vec![1]]).is_ok());
        assert!(PresentationMap::new(z2.clone(), z.clone(), vec![vec![1]]).is_err());
        assert!(PresentationMap::new(z2, z, vec![vec![]]).is_ok());
    }
}
