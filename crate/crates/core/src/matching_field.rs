//! Matching fields: one ordered tuple per subset, for a single subset size
//! (Grassmannian case) or several sizes at once (flag case). Includes the
//! canonical diagonal and permutation-induced constructions, recovery of a
//! field from a weight matrix, the cone of all inducing weight matrices, and
//! the signed monomial attached to each tuple.

use crate::error::Error;
use crate::linalg::{clear_denominators, rat, Rat};
use crate::polyhedra::{interior_point, ConeH};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use std::sync::OnceLock;

/// All k-subsets of {1,..,n}, each listed ascending, ordered by comparing
/// the reversed (descending) tuples lexicographically. This is the fixed
/// listing order used everywhere a value is indexed by subsets.
pub fn subset_order(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (1..=n).combinations(k).collect();
    subsets.sort_by_key(|s| {
        let mut key = s.clone();
        key.reverse();
        key
    });
    subsets
}

/// Sign of an ordered tuple: parity of the number of out-of-order pairs.
pub fn tuple_sign(tuple: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for a in 0..tuple.len() {
        for b in (a + 1)..tuple.len() {
            if tuple[a] > tuple[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// 0/1 exponent of the monomial x_(1,t1) x_(2,t2) ... read off a tuple,
/// flattened row-major over an r x n matrix of variables.
pub fn tuple_exponent(tuple: &[usize], rows: usize, n: usize) -> Vec<u32> {
    assert!(tuple.len() <= rows);
    let mut e = vec![0u32; rows * n];
    for (a, &t) in tuple.iter().enumerate() {
        e[a * n + (t - 1)] += 1;
    }
    e
}

/// A matching field on {1,..,n} with the given grades (subset sizes).
///
/// `tuples[g][s]` is the tuple for the s-th subset (in `subset_order`) of
/// size `grades[g]`. A weight matrix is remembered when the field was built
/// from one; otherwise coherence is decided, and a witness recovered, from
/// the weight-matrix cone.
#[derive(Debug)]
pub struct MatchingField {
    n: usize,
    grades: Vec<usize>,
    tuples: Vec<Vec<Vec<usize>>>,
    weight: Option<Vec<Vec<BigInt>>>,
    coherent: OnceLock<bool>,
}

impl Clone for MatchingField {
    fn clone(&self) -> Self {
        MatchingField {
            n: self.n,
            grades: self.grades.clone(),
            tuples: self.tuples.clone(),
            weight: self.weight.clone(),
            coherent: self.coherent.clone(),
        }
    }
}

impl PartialEq for MatchingField {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.grades == other.grades && self.tuples == other.tuples
    }
}

impl Eq for MatchingField {}

/// Shared validation: grades strictly increasing, each in 1..=n.
pub fn check_grades(grades: &[usize], n: usize) -> Result<(), Error> {
    let ok = n >= 1
        && !grades.is_empty()
        && grades.windows(2).all(|w| w[0] < w[1])
        && grades.iter().all(|&g| g >= 1 && g <= n);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidGrades {
            grades: grades.to_vec(),
            n,
        })
    }
}

impl MatchingField {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grades(&self) -> &[usize] {
        &self.grades
    }

    /// Number of weight matrix rows: the largest grade.
    pub fn rows(&self) -> usize {
        *self.grades.last().unwrap()
    }

    pub fn is_grassmannian(&self) -> bool {
        self.grades.len() == 1
    }

    /// Tuples of one grade, indexed like `subset_order(grade, n)`.
    pub fn tuples_of_grade(&self, grade_idx: usize) -> &[Vec<usize>] {
        &self.tuples[grade_idx]
    }

    /// All tuples, grades ascending, subsets in listing order within each.
    pub fn all_tuples(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.tuples.iter().flatten()
    }

    /// All subsets the field assigns tuples to, in the same flattened order
    /// as `all_tuples`.
    pub fn all_subsets(&self) -> Vec<Vec<usize>> {
        self.grades
            .iter()
            .flat_map(|&k| subset_order(k, self.n))
            .collect()
    }

    /// The weight matrix the field was constructed from, if any.
    pub fn stored_weight(&self) -> Option<&Vec<Vec<BigInt>>> {
        self.weight.as_ref()
    }

    /// Diagonal matching field: every tuple ascending. Induced by the
    /// staircase weight matrix with row a equal to (a-1)*(n, n-1, ..., 1).
    pub fn diagonal(grades: &[usize], n: usize) -> Result<MatchingField, Error> {
        check_grades(grades, n)?;
        let r = *grades.last().unwrap();
        let weight: Vec<Vec<BigInt>> = (0..r)
            .map(|a| {
                (1..=n)
                    .map(|j| BigInt::from(a as i64 * (n as i64 + 1 - j as i64)))
                    .collect()
            })
            .collect();
        Self::from_weight_matrix(grades, n, weight)
    }

    /// Matching field induced by a permutation: row 1 zero, row 2 the
    /// permutation itself, row a >= 3 the staircase n^(a-2) * (n-1, ..., 0).
    pub fn from_permutation(k: usize, n: usize, perm: &[usize]) -> Result<MatchingField, Error> {
        let mut seen = perm.to_vec();
        seen.sort_unstable();
        if perm.len() != n || seen != (1..=n).collect::<Vec<_>>() {
            return Err(Error::NotPermutation {
                perm: perm.to_vec(),
                n,
            });
        }
        check_grades(&[k], n)?;
        let mut weight: Vec<Vec<BigInt>> = vec![vec![BigInt::from(0); n]];
        if k >= 2 {
            weight.push(perm.iter().map(|&v| BigInt::from(v)).collect());
        }
        for a in 3..=k {
            let scale = BigInt::from(n).pow(a as u32 - 2);
            weight.push((1..=n).map(|j| &scale * BigInt::from((n - j) as i64)).collect());
        }
        Self::from_weight_matrix(&[k], n, weight)
    }

    /// Build a field from a weight matrix by picking, for every subset, the
    /// ordering of least total weight (entry a of the tuple is weighed by
    /// row a). A tie on any subset is an error naming the first such subset.
    pub fn from_weight_matrix(
        grades: &[usize],
        n: usize,
        weight: Vec<Vec<BigInt>>,
    ) -> Result<MatchingField, Error> {
        check_grades(grades, n)?;
        let r = *grades.last().unwrap();
        if weight.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: weight.len(),
            });
        }
        for row in &weight {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        let mut tuples: Vec<Vec<Vec<usize>>> = Vec::with_capacity(grades.len());
        for &k in grades {
            let mut grade_tuples = Vec::new();
            for subset in subset_order(k, n) {
                let mut best: Option<(BigInt, Vec<usize>)> = None;
                let mut tied = false;
                for perm in subset.iter().copied().permutations(k) {
                    let w: BigInt = perm
                        .iter()
                        .enumerate()
                        .map(|(a, &j)| weight[a][j - 1].clone())
                        .sum();
                    match &best {
                        Some((bw, _)) if *bw < w => {}
                        Some((bw, _)) if *bw == w => tied = true,
                        _ => {
                            best = Some((w, perm));
                            tied = false;
                        }
                    }
                }
                if tied {
                    return Err(Error::WeightTie { subset });
                }
                grade_tuples.push(best.unwrap().1);
            }
            tuples.push(grade_tuples);
        }
        let coherent = OnceLock::new();
        // a matrix with unique minima lies strictly inside its own cone
        let _ = coherent.set(true);
        Ok(MatchingField {
            n,
            grades: grades.to_vec(),
            tuples,
            weight: Some(weight),
            coherent,
        })
    }

    /// Build a field from explicit tuples, given per grade in any order;
    /// each subset of each grade must receive exactly one ordering.
    pub fn from_tuples(
        grades: &[usize],
        n: usize,
        given: &[Vec<Vec<usize>>],
    ) -> Result<MatchingField, Error> {
        check_grades(grades, n)?;
        if given.len() != grades.len() {
            return Err(Error::DimensionMismatch {
                expected: grades.len(),
                got: given.len(),
            });
        }
        let mut tuples: Vec<Vec<Vec<usize>>> = Vec::with_capacity(grades.len());
        for (gi, &k) in grades.iter().enumerate() {
            let subsets = subset_order(k, n);
            let mut slot: Vec<Option<Vec<usize>>> = vec![None; subsets.len()];
            for tuple in &given[gi] {
                let mut sorted = tuple.clone();
                sorted.sort_unstable();
                let valid = tuple.len() == k
                    && sorted.windows(2).all(|w| w[0] < w[1])
                    && sorted.iter().all(|&e| e >= 1 && e <= n);
                if !valid {
                    return Err(Error::MalformedTuple {
                        tuple: tuple.clone(),
                        n,
                    });
                }
                let idx = subsets
                    .iter()
                    .position(|s| *s == sorted)
                    .expect("sorted valid tuple is a listed subset");
                if slot[idx].is_some() {
                    return Err(Error::DuplicateTuple {
                        subset: sorted.clone(),
                    });
                }
                slot[idx] = Some(tuple.clone());
            }
            let mut grade_tuples = Vec::with_capacity(subsets.len());
            for (idx, s) in slot.into_iter().enumerate() {
                match s {
                    Some(t) => grade_tuples.push(t),
                    None => {
                        return Err(Error::MissingTuple {
                            subset: subsets[idx].clone(),
                        })
                    }
                }
            }
            tuples.push(grade_tuples);
        }
        Ok(MatchingField {
            n,
            grades: grades.to_vec(),
            tuples,
            weight: None,
            coherent: OnceLock::new(),
        })
    }

    /// The closed cone of weight matrices inducing this field, in the
    /// row-major coordinates of an r x n matrix: one inequality per tuple
    /// per non-identity reordering, stating that the tuple weighs no more.
    pub fn weight_matrix_cone(&self) -> ConeH {
        let r = self.rows();
        let n = self.n;
        let dim = r * n;
        let mut inequalities = Vec::new();
        for tuple in self.all_tuples() {
            let k = tuple.len();
            for perm in tuple.iter().copied().permutations(k) {
                if perm == *tuple {
                    continue;
                }
                // weight(tuple) - weight(perm) <= 0
                let mut coeffs = vec![Rat::zero(); dim];
                for (a, (&t, &p)) in tuple.iter().zip(&perm).enumerate() {
                    coeffs[a * n + (t - 1)] += rat(1);
                    coeffs[a * n + (p - 1)] -= rat(1);
                }
                if coeffs.iter().any(|c| !c.is_zero()) {
                    inequalities.push(coeffs);
                }
            }
        }
        ConeH::new(dim, inequalities, Vec::new())
    }

    /// Whether some weight matrix induces exactly these tuples. Fields built
    /// from a weight matrix are coherent by construction; otherwise the
    /// weight-matrix cone is tested for a strict interior point.
    pub fn is_coherent(&self) -> bool {
        *self
            .coherent
            .get_or_init(|| interior_point(&self.weight_matrix_cone()).is_some())
    }

    /// A weight matrix inducing the field: the one it was built from, else
    /// an integer point in the interior of the weight-matrix cone.
    pub fn weight_matrix(&self) -> Result<Vec<Vec<BigInt>>, Error> {
        if let Some(w) = &self.weight {
            return Ok(w.clone());
        }
        let point = interior_point(&self.weight_matrix_cone()).ok_or(Error::NotCoherent)?;
        let ints = clear_denominators(&point);
        let n = self.n;
        Ok(ints.chunks(n).map(|row| row.to_vec()).collect())
    }

    /// Weight vector induced on subsets: entry s is the weight of the s-th
    /// tuple (grades ascending, subsets in listing order) under the field's
    /// weight matrix.
    pub fn induced_weight(&self) -> Result<Vec<BigInt>, Error> {
        let w = self.weight_matrix()?;
        Ok(self
            .all_tuples()
            .map(|tuple| {
                tuple
                    .iter()
                    .enumerate()
                    .map(|(a, &j)| w[a][j - 1].clone())
                    .sum()
            })
            .collect())
    }

    /// Signed monomial data of every tuple: (sign, exponent) pairs in the
    /// flattened subset order, exponents over the r x n matrix variables.
    pub fn tuple_monomials(&self) -> Vec<(i8, Vec<u32>)> {
        let r = self.rows();
        self.all_tuples()
            .map(|t| (tuple_sign(t), tuple_exponent(t, r, self.n)))
            .collect()
    }
}
