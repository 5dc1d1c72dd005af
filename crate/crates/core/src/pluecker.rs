//! The Pluecker algebra of a Grassmannian or partial flag variety and the
//! matching-field machinery built on it: presentation ideals, toric
//! degeneration tests by three independent routes, SAGBI bases driven by
//! subduction, matching field polytopes, and Newton-Okounkov bodies.

use crate::error::{Error, Limits};
use crate::linalg::{rat, Rat};
use crate::matching_field::{check_grades, subset_order, tuple_exponent, tuple_sign, MatchingField};
use crate::poly::{
    elimination_kernel, initial_ideal, toric_ideal, Ideal, Order, Poly, Ring, Var,
};
use crate::polyhedra::{convex_hull, lattice_normalized_volume, minkowski_sum, PolytopeV};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::OnceLock;

/// The polynomial ring S with one Pluecker variable per subset, grades
/// ascending and subsets in listing order, plus that subset list.
pub fn pluecker_ring(grades: &[usize], n: usize) -> (Ring, Vec<Vec<usize>>) {
    let subsets: Vec<Vec<usize>> = grades
        .iter()
        .flat_map(|&k| subset_order(k, n))
        .collect();
    let ring = Ring::new(
        subsets
            .iter()
            .map(|s| Var::P { subset: s.clone() })
            .collect(),
    );
    (ring, subsets)
}

/// The ring R of matrix entries x_(a,j), a in 1..=rows, j in 1..=n,
/// listed row-major so x_(1,1) > x_(1,2) > ... under its reverse-lex order.
pub fn matrix_ring(rows: usize, n: usize) -> Ring {
    let vars = (1..=rows)
        .flat_map(|row| (1..=n).map(move |col| Var::X { row, col }))
        .collect();
    Ring::new(vars)
}

/// Generators of the Pluecker algebra: the top-justified maximal minors
/// det(X_I) for every subset I of every grade.
#[derive(Debug, Clone)]
pub struct PlueckerAlgebra {
    pub n: usize,
    pub grades: Vec<usize>,
    pub ring_x: Ring,
    pub ring_s: Ring,
    pub subsets: Vec<Vec<usize>>,
    /// det(X_I) on rows 1..|I| and columns I, indexed like `subsets`.
    pub forms: Vec<Poly>,
    /// Multidegree of each form: the standard basis vector of its grade.
    pub multidegrees: Vec<Vec<u32>>,
}

pub fn pluecker_forms(grades: &[usize], n: usize) -> Result<PlueckerAlgebra, Error> {
    check_grades(grades, n)?;
    let r = *grades.last().unwrap();
    let ring_x = matrix_ring(r, n);
    let (ring_s, subsets) = pluecker_ring(grades, n);
    let nx = ring_x.nvars();
    let mut forms = Vec::with_capacity(subsets.len());
    let mut multidegrees = Vec::with_capacity(subsets.len());
    for (gi, &k) in grades.iter().enumerate() {
        for subset in subset_order(k, n) {
            // Leibniz expansion over the orderings of the column set
            let mut det = Poly::zero();
            for q in subset.iter().copied().permutations(k) {
                let coeff = rat(tuple_sign(&q) as i64);
                det.add_term(tuple_exponent(&q, r, n), coeff);
            }
            forms.push(det);
            let mut d = vec![0u32; grades.len()];
            d[gi] = 1;
            multidegrees.push(d);
        }
    }
    debug_assert!(forms.iter().all(|f| f.terms().all(|(m, _)| m.len() == nx)));
    Ok(PlueckerAlgebra {
        n,
        grades: grades.to_vec(),
        ring_x,
        ring_s,
        subsets,
        forms,
        multidegrees,
    })
}

/// Kernel of P_I -> det(X_I): the Pluecker ideal, computed by block
/// elimination. Guarded by the elimination cap since the cost grows quickly
/// with the number of Pluecker variables.
pub fn pluecker_ideal(pa: &PlueckerAlgebra, limits: &Limits) -> Result<Ideal, Error> {
    let requested = pa.ring_s.nvars();
    if requested > limits.elimination_cap {
        return Err(Error::TooManyTargetVariables {
            requested,
            cap: limits.elimination_cap,
        });
    }
    let gens = elimination_kernel(&pa.ring_x, &pa.ring_s, &pa.forms, limits.pair_budget)?;
    Ok(Ideal::new(pa.ring_s.clone(), gens))
}

/// Kernel of the signed monomial map P_I -> m_I read off the matching
/// field's tuples: the matching field ideal.
pub fn matching_field_ideal(mf: &MatchingField, limits: &Limits) -> Result<Ideal, Error> {
    if !mf.is_coherent() {
        return Err(Error::NotCoherent);
    }
    let (ring_s, _) = pluecker_ring(mf.grades(), mf.n());
    let monomials = mf.tuple_monomials();
    let columns: Vec<Vec<u32>> = monomials.iter().map(|(_, e)| e.clone()).collect();
    let signs: Vec<i8> = monomials.iter().map(|(s, _)| *s).collect();
    let gens = toric_ideal(&ring_s, &columns, &signs, limits.pair_budget)?;
    Ok(Ideal::new(ring_s, gens))
}

/// Minkowski sum over grades of the convex hulls of that grade's tuple
/// exponent matrices, in R^(rows x n) flattened row-major.
pub fn matching_field_polytope(mf: &MatchingField) -> PolytopeV {
    let r = mf.rows();
    let n = mf.n();
    let mut result: Option<PolytopeV> = None;
    for gi in 0..mf.grades().len() {
        let points: Vec<Vec<Rat>> = mf
            .tuples_of_grade(gi)
            .iter()
            .map(|t| {
                tuple_exponent(t, r, n)
                    .into_iter()
                    .map(|e| rat(e as i64))
                    .collect()
            })
            .collect();
        let hull = convex_hull(&points);
        result = Some(match result {
            None => hull,
            Some(acc) => minkowski_sum(&acc, &hull),
        });
    }
    result.expect("grades are nonempty")
}

/// The three independent toric-degeneration tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToricMethod {
    /// in_w-hat(Pluecker ideal) == matching field ideal.
    Groebner,
    /// lattice-normalized volume of the matching field polytope equals the
    /// diagonal field's (the degree of the embedded variety).
    Volume,
    /// every relation among the tuple monomials, evaluated on the Pluecker
    /// forms, subducts to zero against them (SAGBI certificate).
    Subduction,
}

/// Shared, lazily computed context for testing several matching fields of
/// the same shape: the Pluecker forms, the Pluecker ideal (one elimination),
/// and the diagonal polytope volume.
pub struct DegenerationTester {
    pa: PlueckerAlgebra,
    pluecker: OnceLock<Result<Ideal, Error>>,
    diagonal_volume: OnceLock<Result<Rat, Error>>,
}

impl DegenerationTester {
    pub fn new(grades: &[usize], n: usize) -> Result<Self, Error> {
        Ok(DegenerationTester {
            pa: pluecker_forms(grades, n)?,
            pluecker: OnceLock::new(),
            diagonal_volume: OnceLock::new(),
        })
    }

    pub fn algebra(&self) -> &PlueckerAlgebra {
        &self.pa
    }

    pub fn pluecker_ideal(&self, limits: &Limits) -> Result<&Ideal, Error> {
        self.pluecker
            .get_or_init(|| pluecker_ideal(&self.pa, limits))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn diagonal_volume(&self, _limits: &Limits) -> Result<Rat, Error> {
        self.diagonal_volume
            .get_or_init(|| {
                let diag = MatchingField::diagonal(&self.pa.grades, self.pa.n)?;
                lattice_normalized_volume(&matching_field_polytope(&diag))
            })
            .clone()
    }

    pub fn test(
        &self,
        mf: &MatchingField,
        method: ToricMethod,
        limits: &Limits,
    ) -> Result<bool, Error> {
        if mf.grades() != self.pa.grades.as_slice() || mf.n() != self.pa.n {
            return Err(Error::DimensionMismatch {
                expected: self.pa.n,
                got: mf.n(),
            });
        }
        if !mf.is_coherent() {
            return Err(Error::NotCoherent);
        }
        match method {
            ToricMethod::Groebner => {
                let pluecker = self.pluecker_ideal(limits)?;
                let weights: Vec<Rat> = mf
                    .induced_weight()?
                    .into_iter()
                    .map(Rat::from)
                    .collect();
                let initial = initial_ideal(
                    &pluecker.gens,
                    &self.pa.ring_s,
                    &weights,
                    limits.pair_budget,
                )?;
                let field_ideal = matching_field_ideal(mf, limits)?;
                let order = Order::grevlex(&self.pa.ring_s);
                let initial = Ideal::new(self.pa.ring_s.clone(), initial);
                initial.equals(&field_ideal, &order, limits.pair_budget)
            }
            ToricMethod::Volume => {
                let own = lattice_normalized_volume(&matching_field_polytope(mf))?;
                Ok(own == self.diagonal_volume(limits)?)
            }
            ToricMethod::Subduction => {
                let weight = mf.weight_matrix()?;
                let gens = initial_generators(&self.pa, &weight)?;
                let order = weight_order(&self.pa, &weight)?;
                // relations among the initial (tuple) monomials, unsigned
                let columns: Vec<Vec<u32>> =
                    gens.iter().map(|g| g.initial_exponent.clone()).collect();
                let qring = aux_ring(&columns);
                let relations = toric_ideal(
                    &qring,
                    &columns,
                    &vec![1; columns.len()],
                    limits.pair_budget,
                )?;
                let polys: Vec<Poly> = gens.iter().map(|g| g.poly.clone()).collect();
                let nx = self.pa.ring_x.nvars();
                for rel in &relations {
                    let lifted = rel.evaluate(&polys, nx);
                    if !subduct(&lifted, &gens, &order).is_zero() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

/// Whether the matching field gives a toric degeneration, by the chosen
/// method. All three methods agree; they differ in cost and in which
/// resource budget they can exhaust.
pub fn is_toric_degeneration(
    mf: &MatchingField,
    method: ToricMethod,
    limits: &Limits,
) -> Result<bool, Error> {
    DegenerationTester::new(mf.grades(), mf.n())?.test(mf, method, limits)
}

/// One element of a (possibly partial) SAGBI basis.
#[derive(Debug, Clone)]
pub struct SagbiGenerator {
    /// Monic under the weight-refined order.
    pub poly: Poly,
    pub initial_exponent: Vec<u32>,
    pub multidegree: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SagbiStatus {
    Complete,
    PartialAtDegreeCap,
}

#[derive(Debug, Clone)]
pub struct SagbiResult {
    pub generators: Vec<SagbiGenerator>,
    pub status: SagbiStatus,
    /// The weight-refined order everything was computed under.
    pub order: Order,
}

fn weight_order(pa: &PlueckerAlgebra, weight: &[Vec<BigInt>]) -> Result<Order, Error> {
    let r = *pa.grades.last().unwrap();
    if weight.len() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            got: weight.len(),
        });
    }
    let mut flat = Vec::with_capacity(pa.ring_x.nvars());
    for row in weight {
        if row.len() != pa.n {
            return Err(Error::DimensionMismatch {
                expected: pa.n,
                got: row.len(),
            });
        }
        flat.extend(row.iter().cloned().map(Rat::from));
    }
    Ok(Order::weight_refined(&pa.ring_x, flat))
}

/// The forms made monic under the weight-refined order, with their initial
/// exponents and multidegrees.
fn initial_generators(
    pa: &PlueckerAlgebra,
    weight: &[Vec<BigInt>],
) -> Result<Vec<SagbiGenerator>, Error> {
    let order = weight_order(pa, weight)?;
    let mut gens = Vec::with_capacity(pa.forms.len());
    for (f, d) in pa.forms.iter().zip(&pa.multidegrees) {
        let monic = f.monic(&order);
        let (lm, _) = monic.leading(&order).expect("determinants are nonzero");
        gens.push(SagbiGenerator {
            initial_exponent: lm.clone(),
            poly: monic,
            multidegree: d.clone(),
        });
    }
    Ok(gens)
}

/// Internal ring with one variable per current generator, graded by the
/// generator's degree in the matrix variables.
fn aux_ring(columns: &[Vec<u32>]) -> Ring {
    let vars = (0..columns.len())
        .map(|i| Var::P {
            subset: vec![i + 1],
        })
        .collect();
    let grading = columns
        .iter()
        .map(|c| c.iter().map(|&e| e as u64).sum::<u64>().max(1))
        .collect();
    Ring::with_grading(vars, grading)
}

/// Subduction: repeatedly factor the leading exponent of `h` as a product
/// of generator initial exponents and cancel. The remainder's leading term
/// is not a product of initial terms (or the remainder is zero).
pub fn subduct(h: &Poly, gens: &[SagbiGenerator], order: &Order) -> Poly {
    let mut work = h.clone();
    let exps: Vec<&Vec<u32>> = gens.iter().map(|g| &g.initial_exponent).collect();
    loop {
        let Some((lm, lc)) = work.leading(order).map(|(m, c)| (m.clone(), c.clone())) else {
            return work;
        };
        let nv = lm.len();
        let mut mults = vec![0u32; gens.len()];
        let mut target = lm;
        if !factor_over(&mut target, &exps, 0, &mut mults) {
            return work;
        }
        let mut prod = Poly::one(nv);
        for (i, &m) in mults.iter().enumerate() {
            if m > 0 {
                prod = prod.mul(&gens[i].poly.pow(m));
            }
        }
        // generators are monic, so the product's leading coefficient is 1
        work = work.sub(&prod.scale(&lc));
    }
}

/// Depth-first search for multiplicities with sum_i mults[i]*exps[i] =
/// target; generators may repeat, and indices are scanned in order so the
/// first factorization found is canonical.
fn factor_over(
    target: &mut Vec<u32>,
    exps: &[&Vec<u32>],
    from: usize,
    mults: &mut Vec<u32>,
) -> bool {
    if target.iter().all(|&e| e == 0) {
        return true;
    }
    for i in from..exps.len() {
        if exps[i].iter().zip(target.iter()).all(|(a, b)| a <= b) {
            for (t, e) in target.iter_mut().zip(exps[i].iter()) {
                *t -= e;
            }
            mults[i] += 1;
            if factor_over(target, exps, i, mults) {
                return true;
            }
            mults[i] -= 1;
            for (t, e) in target.iter_mut().zip(exps[i].iter()) {
                *t += e;
            }
        }
    }
    false
}

/// Multidegree of a multihomogeneous exponent over the r x n matrix
/// variables: row occupancies determine how many factors of each grade the
/// monomial uses. Panics if the row sums are not consistent with any
/// multidegree, which would mean a non-multihomogeneous intermediate.
fn multidegree_from_exponent(exp: &[u32], grades: &[usize], n: usize) -> Vec<u32> {
    let r = *grades.last().unwrap();
    assert_eq!(exp.len(), r * n);
    let s: Vec<u32> = (0..r)
        .map(|a| exp[a * n..(a + 1) * n].iter().sum())
        .collect();
    let mut d = vec![0u32; grades.len()];
    let mut above = 0u32;
    for i in (0..grades.len()).rev() {
        let si = s[grades[i] - 1];
        assert!(si >= above, "row sums are not multihomogeneous");
        d[i] = si - above;
        above = si;
    }
    // rows strictly between grades must match the occupancy at the grade
    let mut prev = 0usize;
    for (i, &g) in grades.iter().enumerate() {
        let expect: u32 = d[i..].iter().sum();
        for a in prev..g {
            assert_eq!(s[a], expect, "row sums are not multihomogeneous");
        }
        prev = g;
    }
    d
}

/// SAGBI construction for the Pluecker forms under the weight order given
/// by `weight`, refined by graded reverse lex. Rounds alternate between
/// finding all binomial relations among current initial exponents, lifting
/// them to the actual generators, and subducting; nonzero remainders join
/// the basis. Stops when a round adds nothing (complete) or a remainder
/// exceeds the degree cap (partial).
pub fn sagbi(
    pa: &PlueckerAlgebra,
    weight: &[Vec<BigInt>],
    limits: &Limits,
) -> Result<SagbiResult, Error> {
    let order = weight_order(pa, weight)?;
    let mut gens = initial_generators(pa, weight)?;
    {
        let mut seen: Vec<&Vec<u32>> = gens.iter().map(|g| &g.initial_exponent).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), gens.len(), "initial exponents must be distinct");
    }
    let nx = pa.ring_x.nvars();
    loop {
        let columns: Vec<Vec<u32>> = gens.iter().map(|g| g.initial_exponent.clone()).collect();
        let qring = aux_ring(&columns);
        let relations = toric_ideal(&qring, &columns, &vec![1; columns.len()], limits.pair_budget)?;
        let polys: Vec<Poly> = gens.iter().map(|g| g.poly.clone()).collect();
        let mut candidates: Vec<Poly> = Vec::new();
        for rel in &relations {
            debug_assert!(lift_is_multihomogeneous(rel, &gens));
            let lifted = rel.evaluate(&polys, nx);
            let rem = subduct(&lifted, &gens, &order);
            if !rem.is_zero() {
                candidates.push(rem);
            }
        }
        if candidates.is_empty() {
            return Ok(SagbiResult {
                generators: gens,
                status: SagbiStatus::Complete,
                order,
            });
        }
        // deterministic insertion: by (multidegree, initial exponent)
        candidates.sort_by(|a, b| {
            let (la, _) = a.leading(&order).unwrap();
            let (lb, _) = b.leading(&order).unwrap();
            let da = multidegree_from_exponent(la, &pa.grades, pa.n);
            let db = multidegree_from_exponent(lb, &pa.grades, pa.n);
            da.cmp(&db).then_with(|| order.cmp(la, lb))
        });
        let mut added = false;
        for cand in candidates {
            // earlier insertions this round may now subduct it further
            let rem = subduct(&cand, &gens, &order);
            if rem.is_zero() {
                continue;
            }
            if rem.total_degree() > limits.degree_cap {
                return Ok(SagbiResult {
                    generators: gens,
                    status: SagbiStatus::PartialAtDegreeCap,
                    order,
                });
            }
            let monic = rem.monic(&order);
            let (lm, _) = monic.leading(&order).unwrap();
            let multidegree = multidegree_from_exponent(lm, &pa.grades, pa.n);
            gens.push(SagbiGenerator {
                initial_exponent: lm.clone(),
                poly: monic,
                multidegree,
            });
            added = true;
        }
        if !added {
            return Ok(SagbiResult {
                generators: gens,
                status: SagbiStatus::Complete,
                order,
            });
        }
    }
}

/// Check that both sides of a binomial relation carry the same total
/// multidegree, so its lift is multihomogeneous.
fn lift_is_multihomogeneous(rel: &Poly, gens: &[SagbiGenerator]) -> bool {
    let degs: Vec<Vec<u64>> = rel
        .terms()
        .map(|(m, _)| {
            let mut d = vec![0u64; gens[0].multidegree.len()];
            for (i, &e) in m.iter().enumerate() {
                for (acc, &gd) in d.iter_mut().zip(&gens[i].multidegree) {
                    *acc += e as u64 * gd as u64;
                }
            }
            d
        })
        .collect();
    degs.windows(2).all(|w| w[0] == w[1])
}

/// The Newton-Okounkov body of the Pluecker algebra for the weight order of
/// a coherent matching field: the slice of the cone generated by the SAGBI
/// initial data where the multidegrees sum to all-ones.
#[derive(Debug, Clone)]
pub struct NewtonOkounkovBody {
    pub polytope: PolytopeV,
    /// Multidegrees of the SAGBI generators the body was built from.
    pub source_degrees: Vec<Vec<u32>>,
}

pub fn newton_okounkov_body(
    mf: &MatchingField,
    limits: &Limits,
) -> Result<NewtonOkounkovBody, Error> {
    if !mf.is_coherent() {
        return Err(Error::NotCoherent);
    }
    let pa = pluecker_forms(mf.grades(), mf.n())?;
    let weight = mf.weight_matrix()?;
    let result = sagbi(&pa, &weight, limits)?;
    if result.status == SagbiStatus::PartialAtDegreeCap {
        return Err(Error::SagbiIncomplete {
            cap: limits.degree_cap,
        });
    }
    let gens = &result.generators;
    let jj = pa.grades.len();
    let nx = pa.ring_x.nvars();
    let mut points: Vec<Vec<Rat>> = Vec::new();
    for size in 1..=jj {
        for combo in (0..gens.len()).combinations(size) {
            if let Some(lambda) = solve_slice(&combo, gens, jj) {
                let mut pt = vec![Rat::zero(); nx];
                for (l, &gi) in lambda.iter().zip(&combo) {
                    for (c, &e) in pt.iter_mut().zip(&gens[gi].initial_exponent) {
                        if e > 0 {
                            *c += l * rat(e as i64);
                        }
                    }
                }
                points.push(pt);
            }
        }
    }
    Ok(NewtonOkounkovBody {
        polytope: convex_hull(&points),
        source_degrees: gens.iter().map(|g| g.multidegree.clone()).collect(),
    })
}

/// Solve sum_j lambda_j * multidegree_j = (1,..,1) for the chosen
/// generators; `Some` only for a unique nonnegative solution (a basic
/// feasible point of the slice).
fn solve_slice(combo: &[usize], gens: &[SagbiGenerator], jj: usize) -> Option<Vec<Rat>> {
    use crate::linalg::{rref, RatMatrix};
    let m = combo.len();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(jj);
    for row in 0..jj {
        let mut r: Vec<Rat> = combo
            .iter()
            .map(|&gi| rat(gens[gi].multidegree[row] as i64))
            .collect();
        r.push(Rat::one());
        rows.push(r);
    }
    let red = rref(&RatMatrix::from_rows(rows));
    // unique solution: every lambda column is a pivot, consistency: the
    // right-hand column is not
    if red.pivots.contains(&m) || red.pivots.len() != m {
        return None;
    }
    let mut lambda = vec![Rat::zero(); m];
    for (row, &pc) in red.pivots.iter().enumerate() {
        lambda[pc] = red.matrix.at(row, m).clone();
    }
    // rows beyond the pivots must be consistent (zero = zero); rref makes
    // any inconsistency show up as a pivot in the last column, handled above
    if lambda.iter().any(|l| l < &Rat::zero()) {
        return None;
    }
    Some(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::normal_form;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn gr24_forms_are_the_six_quadrics() {
        let pa = pluecker_forms(&[2], 4).unwrap();
        assert_eq!(pa.forms.len(), 6);
        // Render under the diagonal weight order so the diagonal term leads.
        let mf = MatchingField::diagonal(&[2], 4).unwrap();
        let order = weight_order(&pa, &mf.weight_matrix().unwrap()).unwrap();
        assert_eq!(
            pa.forms[0].render(&pa.ring_x, &order),
            "x_(1,1)x_(2,2)-x_(1,2)x_(2,1)"
        );
        assert_eq!(
            pa.forms[5].render(&pa.ring_x, &order),
            "x_(1,3)x_(2,4)-x_(1,4)x_(2,3)"
        );
        // determinant of an all-ones matrix is zero: coefficients sum to 0
        let pa3 = pluecker_forms(&[3], 3).unwrap();
        let sum: Rat = pa3.forms[0].terms().map(|(_, c)| c.clone()).sum();
        assert!(sum.is_zero());
        assert_eq!(pa3.forms[0].num_terms(), 6);
    }

    #[test]
    fn gr1_ideal_is_zero() {
        let pa = pluecker_forms(&[1], 4).unwrap();
        let ideal = pluecker_ideal(&pa, &limits()).unwrap();
        assert!(ideal.gens.is_empty());
    }

    #[test]
    fn gr24_pluecker_ideal_is_the_single_relation() {
        let pa = pluecker_forms(&[2], 4).unwrap();
        let ideal = pluecker_ideal(&pa, &limits()).unwrap();
        assert_eq!(ideal.gens.len(), 1);
        let order = Order::grevlex(&pa.ring_s);
        assert_eq!(
            ideal.gens[0].render(&pa.ring_s, &order),
            "p_(2,3)p_(1,4)-p_(1,3)p_(2,4)+p_(1,2)p_(3,4)"
        );
    }

    #[test]
    fn elimination_cap_guards_large_eliminations() {
        let pa = pluecker_forms(&[3], 6).unwrap();
        let mut small = limits();
        small.elimination_cap = 10;
        match pluecker_ideal(&pa, &small) {
            Err(Error::TooManyTargetVariables { requested, cap }) => {
                assert_eq!(requested, 20);
                assert_eq!(cap, 10);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn flag_123_incidence_relation() {
        let pa = pluecker_forms(&[1, 2], 3).unwrap();
        let ideal = pluecker_ideal(&pa, &limits()).unwrap();
        // p1*p23 - p2*p13 + p3*p12 up to sign; vars: p1 p2 p3 p12 p13 p23
        let mut expect = Poly::zero();
        expect.add_term(vec![1, 0, 0, 0, 0, 1], rat(1));
        expect.add_term(vec![0, 1, 0, 0, 1, 0], rat(-1));
        expect.add_term(vec![0, 0, 1, 1, 0, 0], rat(1));
        let order = Order::grevlex(&pa.ring_s);
        let gb = Ideal::new(pa.ring_s.clone(), vec![expect]);
        assert!(gb
            .equals(&ideal, &order, limits().pair_budget)
            .unwrap());
    }

    #[test]
    fn diagonal_gr24_matching_field_ideal() {
        let mf = MatchingField::diagonal(&[2], 4).unwrap();
        let ideal = matching_field_ideal(&mf, &limits()).unwrap();
        assert_eq!(ideal.gens.len(), 1);
        let (ring_s, _) = pluecker_ring(&[2], 4);
        let order = Order::grevlex(&ring_s);
        assert_eq!(
            ideal.gens[0].render(&ring_s, &order),
            "p_(2,3)p_(1,4)-p_(1,3)p_(2,4)"
        );
    }

    #[test]
    fn flag_field_ideal_with_signs() {
        // tuples (1),(2),(3),(1,2),(1,3),(3,2): the (3,2) monomial carries a
        // sign, so the kernel generator has a plus
        let mf = MatchingField::from_tuples(
            &[1, 2],
            3,
            &[
                vec![vec![1], vec![2], vec![3]],
                vec![vec![1, 2], vec![1, 3], vec![3, 2]],
            ],
        )
        .unwrap();
        assert!(mf.is_coherent());
        let ideal = matching_field_ideal(&mf, &limits()).unwrap();
        assert_eq!(ideal.gens.len(), 1);
        // p1*p23 + p3*p12 (vars p1 p2 p3 p12 p13 p23)
        let mut expect = Poly::zero();
        expect.add_term(vec![1, 0, 0, 0, 0, 1], rat(1));
        expect.add_term(vec![0, 0, 1, 1, 0, 0], rat(1));
        assert_eq!(ideal.gens[0], expect);
    }

    #[test]
    fn diagonal_gr24_polytope_has_six_vertices() {
        let mf = MatchingField::diagonal(&[2], 4).unwrap();
        let p = matching_field_polytope(&mf);
        assert_eq!(p.vertices.len(), 6);
        assert_eq!(p.affine_dim, 4);
    }

    #[test]
    fn gr1_polytope_is_standard_simplex() {
        let mf = MatchingField::diagonal(&[1], 3).unwrap();
        let p = matching_field_polytope(&mf);
        assert_eq!(p.vertices.len(), 3);
        assert_eq!(p.affine_dim, 2);
        assert_eq!(lattice_normalized_volume(&p).unwrap(), rat(1));
    }

    #[test]
    fn diagonal_gr24_is_toric_by_all_methods() {
        let mf = MatchingField::diagonal(&[2], 4).unwrap();
        for method in [
            ToricMethod::Groebner,
            ToricMethod::Volume,
            ToricMethod::Subduction,
        ] {
            assert_eq!(
                is_toric_degeneration(&mf, method, &limits()).unwrap(),
                true,
                "{method:?}"
            );
        }
    }

    #[test]
    fn toric_test_requires_coherence() {
        let tuples = vec![vec![
            vec![1, 2],
            vec![1, 3],
            vec![4, 1],
            vec![2, 3],
            vec![4, 2],
            vec![3, 4],
        ]];
        let mf = MatchingField::from_tuples(&[2], 4, &tuples).unwrap();
        for method in [
            ToricMethod::Groebner,
            ToricMethod::Volume,
            ToricMethod::Subduction,
        ] {
            assert_eq!(
                is_toric_degeneration(&mf, method, &limits()),
                Err(Error::NotCoherent)
            );
        }
    }

    #[test]
    fn sagbi_on_diagonal_gr24_is_already_complete() {
        let mf = MatchingField::diagonal(&[2], 4).unwrap();
        let pa = pluecker_forms(&[2], 4).unwrap();
        let result = sagbi(&pa, &mf.weight_matrix().unwrap(), &limits()).unwrap();
        assert_eq!(result.status, SagbiStatus::Complete);
        assert_eq!(result.generators.len(), 6);
        // unchanged: each generator is a monic determinant
        for (g, f) in result.generators.iter().zip(&pa.forms) {
            assert_eq!(g.poly, f.monic(&result.order));
        }
    }

    #[test]
    fn subduction_remainder_outside_the_algebra() {
        let pa = pluecker_forms(&[2], 4).unwrap();
        let mf = MatchingField::diagonal(&[2], 4).unwrap();
        let gens = initial_generators(&pa, &mf.weight_matrix().unwrap()).unwrap();
        let order = weight_order(&pa, &mf.weight_matrix().unwrap()).unwrap();
        // x_(1,1) alone is not in the algebra: subduction returns it as-is
        let x11 = Poly::variable(0, pa.ring_x.nvars());
        assert_eq!(subduct(&x11, &gens, &order), x11);
        // a product of two generators subducts to zero
        let prod = pa.forms[0].mul(&pa.forms[5]);
        assert!(subduct(&prod, &gens, &order).is_zero());
    }

    #[test]
    fn newton_okounkov_gr1_is_standard_simplex() {
        let mf = MatchingField::diagonal(&[1], 3).unwrap();
        let body = newton_okounkov_body(&mf, &limits()).unwrap();
        assert_eq!(body.polytope.vertices.len(), 3);
        assert_eq!(
            lattice_normalized_volume(&body.polytope).unwrap(),
            rat(1)
        );
    }

    #[test]
    fn newton_okounkov_matches_polytope_for_toric_fields() {
        let mf = MatchingField::diagonal(&[2], 4).unwrap();
        let body = newton_okounkov_body(&mf, &limits()).unwrap();
        let p = matching_field_polytope(&mf);
        assert_eq!(body.polytope.vertices, p.vertices);
    }

    #[test]
    fn initial_ideal_contains_only_field_ideal_members() {
        // the inclusion in_w(I) subset of I_L for a random-ish coherent field
        let w = vec![
            vec![BigInt::from(0), BigInt::from(0), BigInt::from(0), BigInt::from(0)],
            vec![BigInt::from(2), BigInt::from(5), BigInt::from(1), BigInt::from(3)],
        ];
        let mf = MatchingField::from_weight_matrix(&[2], 4, w).unwrap();
        let tester = DegenerationTester::new(&[2], 4).unwrap();
        let pluecker = tester.pluecker_ideal(&limits()).unwrap();
        let weights: Vec<Rat> = mf.induced_weight().unwrap().into_iter().map(Rat::from).collect();
        let initial = initial_ideal(&pluecker.gens, &tester.algebra().ring_s, &weights, 100_000)
            .unwrap();
        let field_ideal = matching_field_ideal(&mf, &limits()).unwrap();
        let order = Order::grevlex(&tester.algebra().ring_s);
        let gb = field_ideal.groebner(&order, 100_000).unwrap();
        for g in &initial {
            assert!(normal_form(g, &gb, &order, 100_000).unwrap().is_zero());
        }
    }

    #[test]
    fn multidegree_recovery() {
        // grades (1,3) over n=3: a monomial using rows {1}, {1,2,3} twice
        let grades = vec![1, 3];
        // exponent: row sums (3, 2, 2): one grade-1 factor, two grade-3
        let mut exp = vec![0u32; 9];
        exp[0] = 3; // row 1
        exp[3] = 2; // row 2
        exp[6] = 2; // row 3
        assert_eq!(multidegree_from_exponent(&exp, &grades, 3), vec![1, 2]);
    }
}
