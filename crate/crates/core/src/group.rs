//! Finite groups given by full multiplication tables.
//!
//! Groups here are small (order at most a few hundred), so every operation is
//! table driven. Isomorphism testing uses generator-image search with
//! order-profile pruning.

use std::collections::{HashMap, VecDeque};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    identity: usize,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table, checking the
    /// group axioms over the full table.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(invalid("group must have at least one element"));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(invalid(format!("row {i} has length {} (expected {n})", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(invalid(format!("entry {x} in row {i} out of range")));
                }
                table.push(x as u32);
            }
        }
        Self::from_flat(n, table)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<u32>) -> Result<Self> {
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .ok_or_else(|| invalid("no two-sided identity"))?;
        let mut inverse = vec![u32::MAX; n];
        for a in 0..n {
            if let Some(b) = (0..n).find(|&b| table[a * n + b] as usize == identity) {
                if table[b * n + a] as usize != identity {
                    return Err(invalid(format!("element {a} has only a one-sided inverse")));
                }
                inverse[a] = b as u32;
            } else {
                return Err(invalid(format!("element {a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b] as usize;
                for c in 0..n {
                    let bc = table[b * n + c] as usize;
                    if table[ab * n + c] != table[a * n + bc] {
                        return Err(invalid(format!("associativity fails on ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, table, inverse, identity })
    }

    pub fn trivial() -> Self {
        FiniteGroup { order: 1, table: vec![0], inverse: vec![0], identity: 0 }
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(((a + b) % n) as u32);
            }
        }
        let inverse = (0..n).map(|a| ((n - a) % n) as u32).collect();
        FiniteGroup { order: n, table, inverse, identity: 0 }
    }

    /// Closure of a set of permutations of `0..degree` under composition.
    /// Element 0 is the identity; `(a * b)(x) = a(b(x))`.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        Self::permutation_group(degree, generators).map(|(g, _)| g)
    }

    /// As [`FiniteGroup::from_permutations`], also returning the permutation
    /// of each element.
    pub fn permutation_group(degree: usize, generators: &[Vec<usize>]) -> Result<(Self, Vec<Vec<usize>>)> {
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(invalid(format!("{g:?} is not a permutation of degree {degree}")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let p: Vec<usize> = (0..degree).map(|x| g[elems[i][x]]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let p: Vec<usize> = (0..degree).map(|x| elems[a][elems[b][x]]).collect();
                table[a * n + b] = index[&p] as u32;
            }
        }
        Ok((Self::from_flat(n, table)?, elems))
    }

    pub fn symmetric(n: usize) -> Self {
        if n <= 1 {
            return Self::trivial();
        }
        let transposition: Vec<usize> = (0..n).map(|i| match i { 0 => 1, 1 => 0, _ => i }).collect();
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(n, &[transposition, cycle]).expect("valid permutations")
    }

    pub fn alternating(n: usize) -> Self {
        if n <= 2 {
            return Self::trivial();
        }
        // 3-cycles (0 1 k) generate A_n.
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|k| (0..n).map(|i| if i == 0 { 1 } else if i == 1 { k } else if i == k { 0 } else { i }).collect())
            .collect();
        Self::from_permutations(n, &gens).expect("valid permutations")
    }

    /// Dihedral group of order `2n` (symmetries of an n-gon), `n >= 3`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3, "dihedral(n) needs n >= 3");
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(n, &[rot, refl]).expect("valid permutations")
    }

    /// Direct product; element `(a, b)` has index `a * other.order() + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let (n, m) = (self.order, other.order);
        let nm = n * m;
        let mut table = vec![0u32; nm * nm];
        for x in 0..nm {
            for y in 0..nm {
                let a = self.mul(x / m, y / m);
                let b = other.mul(x % m, y % m);
                table[x * nm + y] = (a * m + b) as u32;
            }
        }
        let inverse = (0..nm).map(|x| (self.inv(x / m) * m + other.inv(x % m)) as u32).collect();
        FiniteGroup { order: nm, table, inverse, identity: self.identity * m + other.identity }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted list of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// A small generating set, chosen greedily by decreasing element order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = (0..self.order).filter(|&a| a != self.identity).collect();
        candidates.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in candidates {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in subset {
            if x >= self.order {
                return false;
            }
            member[x] = true;
        }
        member[self.identity]
            && subset.iter().all(|&a| member[self.inv(a)] && subset.iter().all(|&b| member[self.mul(a, b)]))
    }

    pub fn is_normal(&self, subset: &[usize]) -> bool {
        if !self.is_subgroup(subset) {
            return false;
        }
        let mut member = vec![false; self.order];
        for &x in subset {
            member[x] = true;
        }
        (0..self.order).all(|g| subset.iter().all(|&k| member[self.mul(self.mul(g, k), self.inv(g))]))
    }

    /// Quotient by a normal subgroup. Returns the quotient and the projection
    /// (element -> coset index). Coset indices follow the least element of
    /// each coset, so the identity coset is 0 whenever the identity is 0.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(invalid("subset is not a normal subgroup"));
        }
        let mut coset = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset[g] == usize::MAX {
                for &k in normal {
                    coset[self.mul(g, k)] = reps.len();
                }
                reps.push(g);
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = coset[self.mul(a, b)] as u32;
            }
        }
        Ok((Self::from_flat(m, table)?, coset))
    }

    /// Checks that `map` (element of `self` -> element of `target`) is a
    /// homomorphism.
    pub fn is_homomorphism(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order
            && map.iter().all(|&x| x < target.order)
            && (0..self.order)
                .all(|a| (0..self.order).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }

    /// An isomorphism `self -> other` if one exists.
    ///
    /// Searches images for a greedy generating set among elements of matching
    /// order; each complete assignment is extended along a breadth-first word
    /// tree and verified. The first isomorphism in candidate order is returned.
    pub fn isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order != other.order || self.order_profile() != other.order_profile() {
            return None;
        }
        if self.is_abelian() != other.is_abelian() {
            return None;
        }
        let gens = self.generating_set();
        // BFS spanning tree: each non-identity element = parent * gens[k].
        let mut parent = vec![(usize::MAX, usize::MAX); self.order];
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut bfs = vec![self.identity];
        let mut head = 0;
        while head < bfs.len() {
            let x = bfs[head];
            head += 1;
            for (k, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = (x, k);
                    bfs.push(y);
                }
            }
        }
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                (0..other.order).filter(|&h| other.element_order(h) == o).collect()
            })
            .collect();
        let mut choice = vec![0usize; gens.len()];
        let try_extend = |images: &[usize]| -> Option<Vec<usize>> {
            let mut map = vec![usize::MAX; self.order];
            map[self.identity] = other.identity;
            for &y in &bfs[1..] {
                let (p, k) = parent[y];
                map[y] = other.mul(map[p], images[k]);
            }
            let mut hit = vec![false; other.order];
            for &v in &map {
                if std::mem::replace(&mut hit[v], true) {
                    return None;
                }
            }
            let hom = (0..self.order)
                .all(|x| gens.iter().enumerate().all(|(k, &g)| map[self.mul(x, g)] == other.mul(map[x], images[k])));
            hom.then_some(map)
        };
        if gens.is_empty() {
            return try_extend(&[]);
        }
        loop {
            let images: Vec<usize> = choice.iter().enumerate().map(|(k, &c)| candidates[k][c]).collect();
            if let Some(map) = try_extend(&images) {
                return Some(map);
            }
            // odometer increment
            let mut k = gens.len();
            loop {
                if k == 0 {
                    return None;
                }
                k -= 1;
                choice[k] += 1;
                if choice[k] < candidates[k].len() {
                    break;
                }
                choice[k] = 0;
            }
        }
    }

    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Restricts to a subgroup, returning the subgroup as a group together
    /// with the embedding (new index -> old element).
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(elements) {
            return Err(invalid("subset is not a subgroup"));
        }
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let m = elems.len();
        let mut table = vec![0u32; m * m];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                table[i * m + j] = pos[&self.mul(a, b)] as u32;
            }
        }
        Ok((Self::from_flat(m, table)?, elems))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_orders() {
        assert_eq!(FiniteGroup::symmetric(3).order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::alternating(4).order(), 12);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert_eq!(FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2)).order(), 4);
    }

    #[test]
    fn table_validation_rejects_non_groups() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(FiniteGroup::from_table(vec![]).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let z2sq = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        assert!(!z2sq.is_isomorphic(&FiniteGroup::cyclic(4)));
        let z6 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(3));
        let iso = z6.isomorphism(&FiniteGroup::cyclic(6)).unwrap();
        assert!(z6.is_homomorphism(&FiniteGroup::cyclic(6), &iso));
        assert!(!FiniteGroup::symmetric(3).is_isomorphic(&FiniteGroup::cyclic(6)));
        assert!(FiniteGroup::dihedral(3).is_isomorphic(&FiniteGroup::symmetric(3)));
        // D4 and Q8 share order 8 but not order profiles; D4 vs Z2 x Z4 differ too
        let z2z4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(4));
        assert!(!FiniteGroup::dihedral(4).is_isomorphic(&z2z4));
    }

    #[test]
    fn quotient_of_z4_by_z2() {
        let z4 = FiniteGroup::cyclic(4);
        let (q, proj) = z4.quotient(&[0, 2]).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj, vec![0, 1, 0, 1]);
        assert!(z4.quotient(&[0, 1]).is_err());
    }

    #[test]
    fn generating_sets_generate() {
        for g in [FiniteGroup::symmetric(4), FiniteGroup::alternating(4), FiniteGroup::dihedral(4)] {
            assert_eq!(g.subgroup_generated(&g.generating_set()).len(), g.order());
        }
    }
}
