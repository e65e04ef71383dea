//! Reidemeister–Schreier presentations of finite-index subgroups given by a
//! permutation action on cosets.

use std::collections::{HashMap, VecDeque};

use super::presentation::{gen_of, letter, GroupPresentation, Word};
use crate::error::{invalid, Result};

/// Presentation of the stabilizer of coset 0 under an action of the
/// presented group on `0..n` (`action[c][k]` = `c · x_k`).
#[derive(Debug, Clone)]
pub struct SchreierPresentation {
    pub presentation: GroupPresentation,
    action: Vec<Vec<usize>>,
    inverse: Vec<Vec<usize>>,
    /// Schreier generator index for each non-tree pair `(coset, generator)`.
    gen_index: HashMap<(usize, usize), usize>,
    /// Transversal words.
    pub transversal: Vec<Word>,
}

impl SchreierPresentation {
    pub fn new(p: &GroupPresentation, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = action.len();
        let gens = p.generator_count();
        if n == 0 || action.iter().any(|row| row.len() != gens || row.iter().any(|&d| d >= n)) {
            return Err(invalid("coset action has the wrong shape"));
        }
        let mut inverse = vec![vec![usize::MAX; gens]; n];
        for (c, row) in action.iter().enumerate() {
            for (k, &d) in row.iter().enumerate() {
                if inverse[d][k] != usize::MAX {
                    return Err(invalid(format!("generator {k} does not act as a permutation")));
                }
                inverse[d][k] = c;
            }
        }
        let mut transversal: Vec<Option<Word>> = vec![None; n];
        let mut tree = std::collections::HashSet::new();
        transversal[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for k in 0..gens {
                for (d, positive) in [(action[c][k], true), (inverse[c][k], false)] {
                    if transversal[d].is_none() {
                        let mut w = transversal[c].clone().expect("visited");
                        w.push(letter(k, positive));
                        transversal[d] = Some(w);
                        // tree edge stored in its positive orientation
                        tree.insert(if positive { (c, k) } else { (d, k) });
                        queue.push_back(d);
                    }
                }
            }
        }
        let transversal: Vec<Word> = transversal
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| invalid("coset action is not transitive"))?;
        let mut gen_index = HashMap::new();
        for c in 0..n {
            for k in 0..gens {
                if !tree.contains(&(c, k)) {
                    let i = gen_index.len();
                    gen_index.insert((c, k), i);
                }
            }
        }
        let mut sp = SchreierPresentation {
            presentation: GroupPresentation::free(gen_index.len()),
            action,
            inverse,
            gen_index,
            transversal,
        };
        let mut relators = Vec::new();
        for c in 0..n {
            for r in p.relators() {
                let (w, end) = sp.trace(c, r);
                if end != c {
                    return Err(invalid("a relator does not act trivially on cosets"));
                }
                relators.push(w);
            }
        }
        sp.presentation = GroupPresentation::new(sp.gen_index.len(), relators)?;
        Ok(sp)
    }

    pub fn index(&self) -> usize {
        self.action.len()
    }

    fn trace(&self, start: usize, w: &[i32]) -> (Word, usize) {
        let mut out = Vec::new();
        let mut c = start;
        for &l in w {
            let k = gen_of(l);
            if l > 0 {
                if let Some(&i) = self.gen_index.get(&(c, k)) {
                    out.push(letter(i, true));
                }
                c = self.action[c][k];
            } else {
                let d = self.inverse[c][k];
                if let Some(&i) = self.gen_index.get(&(d, k)) {
                    out.push(letter(i, false));
                }
                c = d;
            }
        }
        (super::presentation::free_reduce(&out), c)
    }

    /// Rewrites a word of the big group lying in the subgroup; `None` if the
    /// word does not fix coset 0.
    pub fn rewrite(&self, w: &[i32]) -> Option<Word> {
        let (out, end) = self.trace(0, w);
        (end == 0).then_some(out)
    }
}
