//! Tope fields: bipartite-graph generalisations of Grassmannian matching
//! fields, with the linkage test and amalgamation.

use crate::error::Error;
use crate::matching_field::{subset_order, MatchingField};
use itertools::Itertools;
use std::collections::BTreeSet;

/// A tope field for Gr(k,n) of type `t = (t_1, ..., t_s)` with `k = sum t_a`.
/// Each k-subset `I` carries a bipartite graph (its tope) on `[n] ⊔ [s]`
/// whose left-degree vector is the characteristic vector of `I` and whose
/// right-degree vector is `t`. A tope is stored as a tuple: the
/// concatenation of its blocks, where block `a` lists the left endpoints of
/// the edges at right vertex `a` in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopeField {
    n: usize,
    tope_type: Vec<usize>,
    tuples: Vec<Vec<usize>>,
}

impl TopeField {
    /// The tope field of type (1,...,1) carried by a Grassmannian matching
    /// field: tuples are taken verbatim.
    pub fn from_matching_field(mf: &MatchingField) -> Result<TopeField, Error> {
        if !mf.is_grassmannian() {
            return Err(Error::NotGrassmannian);
        }
        let k = mf.grades()[0];
        Ok(TopeField {
            n: mf.n(),
            tope_type: vec![1; k],
            tuples: mf.tuples_of_grade(0).to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Subset size: the sum of the type entries.
    pub fn k(&self) -> usize {
        self.tope_type.iter().sum()
    }

    pub fn tope_type(&self) -> &[usize] {
        &self.tope_type
    }

    /// One tuple per k-subset, in canonical subset order.
    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// Edges (left in 1..=n, right block index in 1..=s) of the tope at
    /// `idx`, deduplicated and sorted.
    pub fn tope_edges(&self, idx: usize) -> Vec<(usize, usize)> {
        let mut edges = BTreeSet::new();
        let mut pos = 0;
        for (block, &size) in self.tope_type.iter().enumerate() {
            for _ in 0..size {
                edges.insert((self.tuples[idx][pos], block + 1));
                pos += 1;
            }
        }
        edges.into_iter().collect()
    }

    /// Deduplicated union of the edges of all topes whose subset is
    /// contained in `s`.
    fn union_edges(&self, s: &[usize]) -> Vec<(usize, usize)> {
        let k = self.k();
        let members: BTreeSet<usize> = s.iter().copied().collect();
        let subsets = subset_order(k, self.n);
        let mut edges = BTreeSet::new();
        for (idx, subset) in subsets.iter().enumerate() {
            if subset.iter().all(|e| members.contains(e)) {
                edges.extend(self.tope_edges(idx));
            }
        }
        edges.into_iter().collect()
    }

    /// True iff for every (k+1)-subset S the union of the topes supported on
    /// S is a forest. Vacuously true when k = n.
    pub fn is_linkage(&self) -> bool {
        let k = self.k();
        if k >= self.n {
            return true;
        }
        let s = self.tope_type.len();
        subset_order(k + 1, self.n).iter().all(|subset| {
            let edges = self.union_edges(subset);
            is_forest(&edges, self.n, s)
        })
    }

    /// The i-th amalgamation (1-based block index): a tope field of type
    /// `t + e_i` for Gr(k+1,n) whose tope at each (k+1)-subset S is the
    /// unique subgraph of the union forest of S with left-degree vector the
    /// characteristic vector of S and right-degree vector `t + e_i`.
    pub fn amalgamation(&self, i: usize) -> Result<TopeField, Error> {
        let s = self.tope_type.len();
        assert!((1..=s).contains(&i), "block index {i} out of 1..={s}");
        if !self.is_linkage() {
            return Err(Error::NotLinkage);
        }
        let k = self.k();
        assert!(k < self.n, "no (k+1)-subsets left to amalgamate over");
        let mut target = self.tope_type.clone();
        target[i - 1] += 1;
        let mut tuples = Vec::new();
        for subset in subset_order(k + 1, self.n) {
            let edges = self.union_edges(&subset);
            let mut found: Option<Vec<(usize, usize)>> = None;
            for combo in (0..edges.len()).combinations(k + 1) {
                let chosen: Vec<(usize, usize)> = combo.iter().map(|&e| edges[e]).collect();
                if degrees_match(&chosen, &subset, &target) {
                    if found.is_some() {
                        return Err(Error::AmalgamationNonUnique { subset });
                    }
                    found = Some(chosen);
                }
            }
            let Some(chosen) = found else {
                return Err(Error::AmalgamationNoSubgraph { subset });
            };
            let mut tuple = Vec::with_capacity(k + 1);
            for block in 1..=s {
                let mut lefts: Vec<usize> = chosen
                    .iter()
                    .filter(|&&(_, b)| b == block)
                    .map(|&(l, _)| l)
                    .collect();
                lefts.sort_unstable();
                tuple.extend(lefts);
            }
            tuples.push(tuple);
        }
        Ok(TopeField {
            n: self.n,
            tope_type: target,
            tuples,
        })
    }

    /// Apply a sequence of amalgamations left to right.
    pub fn amalgamation_sequence(&self, indices: &[usize]) -> Result<TopeField, Error> {
        let mut current = self.clone();
        for &i in indices {
            current = current.amalgamation(i)?;
        }
        Ok(current)
    }
}

/// Left endpoints use 0..n-1, right endpoints n..n+s-1.
fn is_forest(edges: &[(usize, usize)], n: usize, s: usize) -> bool {
    let mut parent: Vec<usize> = (0..n + s).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for &(l, r) in edges {
        let a = find(&mut parent, l - 1);
        let b = find(&mut parent, n + r - 1);
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Left degrees must be exactly one on `subset` (zero elsewhere) and right
/// degrees must equal `target`.
fn degrees_match(edges: &[(usize, usize)], subset: &[usize], target: &[usize]) -> bool {
    let mut left: BTreeSet<usize> = BTreeSet::new();
    let mut right = vec![0usize; target.len()];
    for &(l, r) in edges {
        if !left.insert(l) {
            return false; // left degree above one
        }
        right[r - 1] += 1;
    }
    left.iter().copied().eq(subset.iter().copied()) && right == target
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tuples(raw: &[&[usize]]) -> Vec<Vec<usize>> {
        raw.iter().map(|t| t.to_vec()).collect()
    }

    fn gr35_field() -> MatchingField {
        MatchingField::from_tuples(
            &[3],
            5,
            &[tuples(&[
                &[1, 3, 2],
                &[1, 4, 2],
                &[1, 5, 2],
                &[3, 4, 1],
                &[1, 3, 5],
                &[1, 4, 5],
                &[3, 4, 2],
                &[2, 3, 5],
                &[2, 4, 5],
                &[3, 4, 5],
            ])],
        )
        .unwrap()
    }

    #[test]
    fn type_vector_comes_from_the_grade() {
        let tf = TopeField::from_matching_field(&gr35_field()).unwrap();
        assert_eq!(tf.n(), 5);
        assert_eq!(tf.tope_type(), &[1, 1, 1]);
        let tf1 = TopeField::from_matching_field(&MatchingField::diagonal(&[1], 4).unwrap())
            .unwrap();
        assert_eq!(tf1.tope_type(), &[1]);
        let tf2 = TopeField::from_matching_field(&MatchingField::diagonal(&[2], 4).unwrap())
            .unwrap();
        assert_eq!(tf2.tope_type(), &[1, 1]);
        assert!(matches!(
            TopeField::from_matching_field(&MatchingField::diagonal(&[1, 2], 4).unwrap()),
            Err(Error::NotGrassmannian)
        ));
    }

    #[test]
    fn tope_edges_follow_blocks() {
        let tf = TopeField::from_matching_field(&gr35_field()).unwrap();
        // first tuple (1,3,2): edges (1,1),(3,2),(2,3)
        assert_eq!(tf.tope_edges(0), vec![(1, 1), (2, 3), (3, 2)]);
    }

    #[test]
    fn gr35_field_is_linkage() {
        let tf = TopeField::from_matching_field(&gr35_field()).unwrap();
        assert!(tf.is_linkage());
    }

    #[test]
    fn non_coherent_example_fails_linkage() {
        // for S = {1,3,4} the union of topes 13, 41, 34 has six distinct
        // edges on five vertices, hence a cycle
        let mf = MatchingField::from_tuples(
            &[2],
            4,
            &[tuples(&[
                &[1, 2],
                &[1, 3],
                &[4, 1],
                &[2, 3],
                &[4, 2],
                &[3, 4],
            ])],
        )
        .unwrap();
        let tf = TopeField::from_matching_field(&mf).unwrap();
        assert_eq!(tf.union_edges(&[1, 3, 4]).len(), 6);
        assert!(!tf.is_linkage());
        assert_eq!(tf.amalgamation(1), Err(Error::NotLinkage));
    }

    #[test]
    fn rank_one_topes_are_stars() {
        let tf = TopeField::from_matching_field(&MatchingField::diagonal(&[1], 4).unwrap())
            .unwrap();
        assert!(tf.is_linkage());
        let amal = tf.amalgamation(1).unwrap();
        assert_eq!(amal.tope_type(), &[2]);
        assert_eq!(amal.tuples(), subset_order(2, 4).as_slice());
        assert!(amal.is_linkage());
    }

    #[test]
    fn gr35_amalgamation_chain() {
        let tf = TopeField::from_matching_field(&gr35_field()).unwrap();
        let t2 = tf.amalgamation(2).unwrap();
        assert_eq!(t2.n(), 5);
        assert_eq!(t2.tope_type(), &[1, 2, 1]);
        assert_eq!(
            t2.tuples(),
            tuples(&[
                &[1, 3, 4, 2],
                &[1, 3, 5, 2],
                &[1, 4, 5, 2],
                &[1, 3, 4, 5],
                &[2, 3, 4, 5],
            ])
            .as_slice()
        );

        let t23 = t2.amalgamation(3).unwrap();
        assert_eq!(t23.tope_type(), &[1, 2, 2]);
        assert_eq!(t23.tuples(), tuples(&[&[1, 3, 4, 2, 5]]).as_slice());

        // same result through the sequence helper
        let seq = tf.amalgamation_sequence(&[2, 3]).unwrap();
        assert_eq!(seq, t23);

        // degree invariants of the amalgamated topes
        for (idx, subset) in subset_order(4, 5).iter().enumerate() {
            let edges = t2.tope_edges(idx);
            assert!(degrees_match(&edges, subset, &[1, 2, 1]));
        }
        for (idx, subset) in subset_order(5, 5).iter().enumerate() {
            let edges = t23.tope_edges(idx);
            assert!(degrees_match(&edges, subset, &[1, 2, 2]));
        }
    }

    #[test]
    fn full_rank_tope_field_is_vacuously_linkage() {
        let tf = TopeField::from_matching_field(&gr35_field()).unwrap();
        let full = tf.amalgamation_sequence(&[2, 3]).unwrap();
        assert_eq!(full.k(), 5);
        assert!(full.is_linkage());
    }

    #[test]
    fn coherent_fields_give_linkage_tope_fields() {
        for (grades, n) in [(vec![2], 4), (vec![2], 5), (vec![3], 5), (vec![3], 6)] {
            let mf = MatchingField::diagonal(&grades, n).unwrap();
            let tf = TopeField::from_matching_field(&mf).unwrap();
            assert!(tf.is_linkage(), "diagonal Gr({},{}) should be linkage", grades[0], n);
        }
    }
}
