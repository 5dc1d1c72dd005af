//! Matroidal layer: regular subdivisions of the hypersimplex induced by a
//! matching field's weight on Pluecker coordinates, and the linear matroid
//! realised by the tuple exponent vectors.

use crate::error::{Error, Limits};
use crate::linalg::{rank_int, Rat};
use crate::matching_field::{subset_order, tuple_exponent, MatchingField};
use crate::polyhedra::lower_hull_cells;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// Linear matroid over the rationals, realised by one integer vector per
/// ground element. Ground elements are labelled by k-subsets listed in the
/// canonical subset order.
#[derive(Debug, Clone)]
pub struct Matroid {
    ground: Vec<Vec<usize>>,
    vectors: Vec<Vec<BigInt>>,
    rank: usize,
}

impl Matroid {
    /// Build from labelled realisation vectors.
    pub fn from_vectors(ground: Vec<Vec<usize>>, vectors: Vec<Vec<BigInt>>) -> Matroid {
        assert_eq!(ground.len(), vectors.len());
        let rank = rank_int(&vectors);
        Matroid {
            ground,
            vectors,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of ground elements.
    pub fn size(&self) -> usize {
        self.ground.len()
    }

    /// Ground element labels in canonical order.
    pub fn ground_labels(&self) -> &[Vec<usize>] {
        &self.ground
    }

    /// Rank of the subset of ground elements given by indices.
    pub fn rank_of(&self, indices: &[usize]) -> usize {
        let rows: Vec<Vec<BigInt>> = indices.iter().map(|&i| self.vectors[i].clone()).collect();
        rank_int(&rows)
    }

    pub fn is_independent(&self, indices: &[usize]) -> bool {
        self.rank_of(indices) == indices.len()
    }

    /// All bases, as sorted index sets in lexicographic order.
    pub fn bases(&self, limits: &Limits) -> Result<Vec<Vec<usize>>, Error> {
        self.check_ground_cap(limits)?;
        let mut out = Vec::new();
        for combo in (0..self.size()).combinations(self.rank) {
            if self.is_independent(&combo) {
                out.push(combo);
            }
        }
        Ok(out)
    }

    /// All circuits (minimal dependent sets), as sorted index sets ordered by
    /// size then lexicographically.
    pub fn circuits(&self, limits: &Limits) -> Result<Vec<Vec<usize>>, Error> {
        self.check_ground_cap(limits)?;
        let mut circuits: Vec<Vec<usize>> = Vec::new();
        for size in 1..=(self.rank + 1).min(self.size()) {
            for combo in (0..self.size()).combinations(size) {
                if circuits
                    .iter()
                    .any(|c| c.iter().all(|e| combo.binary_search(e).is_ok()))
                {
                    continue;
                }
                // no smaller circuit inside, so dependent means minimal
                if self.rank_of(&combo) < combo.len() {
                    circuits.push(combo);
                }
            }
        }
        Ok(circuits)
    }

    /// Translate index sets into their ground labels.
    pub fn label_sets(&self, index_sets: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
        index_sets
            .iter()
            .map(|set| set.iter().map(|&i| self.ground[i].clone()).collect())
            .collect()
    }

    fn check_ground_cap(&self, limits: &Limits) -> Result<(), Error> {
        if self.size() > limits.matroid_ground_cap {
            return Err(Error::GroundSetTooLarge {
                elements: self.size(),
                cap: limits.matroid_ground_cap,
            });
        }
        Ok(())
    }
}

/// Regular subdivision of the hypersimplex induced by the weight on Pluecker
/// coordinates. Each cell is the list of k-subsets indexing its vertices, in
/// canonical subset order; cells are sorted lexicographically.
pub fn matroid_subdivision(mf: &MatchingField) -> Result<Vec<Vec<Vec<usize>>>, Error> {
    if !mf.is_grassmannian() {
        return Err(Error::NotGrassmannian);
    }
    let weights = mf.induced_weight()?;
    let k = mf.grades()[0];
    let n = mf.n();
    let subsets = subset_order(k, n);
    let points: Vec<Vec<Rat>> = subsets
        .iter()
        .map(|s| {
            let mut v = vec![Rat::zero(); n];
            for &e in s {
                v[e - 1] = Rat::one();
            }
            v
        })
        .collect();
    let heights: Vec<Rat> = weights
        .iter()
        .map(|w| Rat::from_integer(w.clone()))
        .collect();
    let sd = lower_hull_cells(&points, &heights);
    Ok(sd
        .cells
        .iter()
        .map(|cell| cell.iter().map(|&i| subsets[i].clone()).collect())
        .collect())
}

/// True iff every cell's family of subsets satisfies the basis-exchange
/// axiom, checked pairwise exhaustively.
pub fn is_matroidal(cells: &[Vec<Vec<usize>>]) -> bool {
    cells.iter().all(|cell| exchange_holds(cell))
}

/// Basis-exchange axiom for a family of equal-size sets: for all B1, B2 and
/// every i in B1 \ B2 there is some j in B2 \ B1 with B1 - i + j in the
/// family.
pub fn exchange_holds(family: &[Vec<usize>]) -> bool {
    if family.is_empty() {
        return false;
    }
    let sets: Vec<BTreeSet<usize>> = family.iter().map(|s| s.iter().copied().collect()).collect();
    let size = sets[0].len();
    if sets.iter().any(|s| s.len() != size) {
        return false;
    }
    let lookup: BTreeSet<&BTreeSet<usize>> = sets.iter().collect();
    for b1 in &sets {
        for b2 in &sets {
            for &i in b1.difference(b2) {
                let found = b2.difference(b1).any(|&j| {
                    let mut cand = b1.clone();
                    cand.remove(&i);
                    cand.insert(j);
                    lookup.contains(&cand)
                });
                if !found {
                    return false;
                }
            }
        }
    }
    true
}

/// The linear matroid realised over the rationals by the tuple exponent
/// vectors of a coherent Grassmannian matching field, one per k-subset in
/// canonical subset order.
pub fn algebraic_matroid(mf: &MatchingField) -> Result<Matroid, Error> {
    if !mf.is_grassmannian() {
        return Err(Error::NotGrassmannian);
    }
    if !mf.is_coherent() {
        return Err(Error::NotCoherent);
    }
    let rows = mf.rows();
    let n = mf.n();
    let vectors: Vec<Vec<BigInt>> = mf
        .tuples_of_grade(0)
        .iter()
        .map(|t| {
            tuple_exponent(t, rows, n)
                .into_iter()
                .map(BigInt::from)
                .collect()
        })
        .collect();
    Ok(Matroid::from_vectors(
        subset_order(mf.grades()[0], n),
        vectors,
    ))
}

/// Bases of the algebraic matroid, as sets of k-subset labels.
pub fn algebraic_matroid_bases(
    mf: &MatchingField,
    limits: &Limits,
) -> Result<Vec<Vec<Vec<usize>>>, Error> {
    let m = algebraic_matroid(mf)?;
    let bases = m.bases(limits)?;
    Ok(m.label_sets(&bases))
}

/// Circuits of the algebraic matroid, as sets of k-subset labels.
pub fn algebraic_matroid_circuits(
    mf: &MatchingField,
    limits: &Limits,
) -> Result<Vec<Vec<Vec<usize>>>, Error> {
    let m = algebraic_matroid(mf)?;
    let circuits = m.circuits(limits)?;
    Ok(m.label_sets(&circuits))
}
