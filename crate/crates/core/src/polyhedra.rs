//! Exact polyhedral geometry: cones in H-description, polytopes built from
//! point sets by an incremental hull, lattice-normalized volumes, Ehrhart
//! counts, Minkowski sums, and regular subdivisions from lifted lower hulls.
//!
//! Degenerate (lower-dimensional) inputs are handled by working inside the
//! affine hull throughout; volumes and point counts are measured against the
//! lattice induced on the affine hull, so a segment of lattice length one has
//! normalized volume 1 no matter where it sits.

use crate::error::{Error, Limits};
use crate::linalg::{
    clear_denominators, dot, kernel_lattice_basis, nullspace, rat, rref, IntLattice, Rat,
    RatMatrix,
};
use crate::lp::{solve_lp, Constraint, LpResult};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Polyhedral cone {x : a.x <= 0 for each inequality, b.x = 0 for each equation}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeH {
    pub ambient_dim: usize,
    pub inequalities: Vec<Vec<Rat>>,
    pub equations: Vec<Vec<Rat>>,
}

impl ConeH {
    pub fn new(ambient_dim: usize, inequalities: Vec<Vec<Rat>>, equations: Vec<Vec<Rat>>) -> Self {
        for v in inequalities.iter().chain(&equations) {
            assert_eq!(v.len(), ambient_dim, "cone row arity mismatch");
        }
        ConeH {
            ambient_dim,
            inequalities,
            equations,
        }
    }
}

/// Maximize a uniform slack t subject to a.x + t <= 0, b.x = 0, t <= 1.
/// By homogeneity the optimum is 1 exactly when every inequality can be made
/// strict simultaneously, and 0 otherwise.
fn strict_slack(cone: &ConeH) -> Option<Vec<Rat>> {
    let n = cone.ambient_dim;
    let mut objective = vec![Rat::zero(); n + 1];
    objective[n] = Rat::one();
    let mut cons = Vec::new();
    for a in &cone.inequalities {
        let mut row = a.clone();
        row.push(Rat::one());
        cons.push(Constraint::le(row, Rat::zero()));
    }
    for b in &cone.equations {
        let mut row = b.clone();
        row.push(Rat::zero());
        cons.push(Constraint::eq(row, Rat::zero()));
    }
    let mut cap = vec![Rat::zero(); n + 1];
    cap[n] = Rat::one();
    cons.push(Constraint::le(cap, Rat::one()));
    match solve_lp(&objective, &cons) {
        LpResult::Optimal { point, value } => {
            if value.is_positive() {
                Some(point[..n].to_vec())
            } else {
                None
            }
        }
        other => unreachable!("slack LP is always feasible and bounded: {other:?}"),
    }
}

/// A point of the cone satisfying every inequality strictly (equations hold
/// exactly), scaled to integer entries; `None` when no such point exists.
pub fn interior_point(cone: &ConeH) -> Option<Vec<Rat>> {
    if cone.inequalities.is_empty() {
        return Some(vec![Rat::zero(); cone.ambient_dim]);
    }
    let x = strict_slack(cone)?;
    let ints = clear_denominators(&x);
    Some(ints.into_iter().map(Rat::from).collect())
}

/// Dimension of the cone: ambient dimension minus the rank of the equations
/// together with the implicit equalities among the inequalities.
pub fn cone_dim(cone: &ConeH) -> usize {
    let n = cone.ambient_dim;
    let eq_rank_only = || {
        if cone.equations.is_empty() {
            0
        } else {
            rref(&RatMatrix::from_rows(cone.equations.clone())).rank
        }
    };
    if cone.inequalities.is_empty() {
        return n - eq_rank_only();
    }
    if strict_slack(cone).is_some() {
        return n - eq_rank_only();
    }
    // detect which inequalities hold with equality on the whole cone: a.x <= 0
    // is implicit iff max of -a.x over the cone (capped at 1) is 0
    let mut tight: Vec<Vec<Rat>> = cone.equations.clone();
    for a in &cone.inequalities {
        let neg: Vec<Rat> = a.iter().map(|e| -e.clone()).collect();
        let mut cons: Vec<Constraint> = cone
            .inequalities
            .iter()
            .map(|row| Constraint::le(row.clone(), Rat::zero()))
            .collect();
        for b in &cone.equations {
            cons.push(Constraint::eq(b.clone(), Rat::zero()));
        }
        cons.push(Constraint::le(neg.clone(), Rat::one()));
        match solve_lp(&neg, &cons) {
            LpResult::Optimal { value, .. } => {
                if value.is_zero() {
                    tight.push(a.clone());
                }
            }
            other => unreachable!("capped cone LP is feasible and bounded: {other:?}"),
        }
    }
    if tight.is_empty() {
        n
    } else {
        n - rref(&RatMatrix::from_rows(tight)).rank
    }
}

/// Polytope from a finite point set, with derived minimal V- and
/// H-descriptions. Facet inequalities are stated in the ambient space and cut
/// out the facets inside the affine hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeV {
    pub ambient_dim: usize,
    /// Deduplicated input points, sorted lexicographically.
    pub points: Vec<Vec<Rat>>,
    /// Minimal vertex set, sorted lexicographically.
    pub vertices: Vec<Vec<Rat>>,
    pub affine_dim: usize,
    /// Affine hull H-description: pairs (e, c) with e.x = c on the polytope.
    pub hull_equations: Vec<(Vec<Rat>, Rat)>,
    /// Facet inequalities: pairs (a, c) with a.x <= c, a primitive integral.
    pub facets: Vec<(Vec<Rat>, Rat)>,
}

/// Simplicial facet of an intermediate hull: vertex indices plus the oriented
/// supporting hyperplane normal.x <= offset (inside on the small side).
#[derive(Debug, Clone)]
struct SimpFacet {
    verts: Vec<usize>,
    normal: Vec<Rat>,
    offset: Rat,
}

/// Full-dimensional incremental hull over points in Q^d (beneath-beyond with
/// exact arithmetic; coplanar facets are rebuilt, which keeps every facet a
/// genuine simplex). Returns the simplicial facets and the accumulated
/// placing-triangulation volume times d!.
fn incremental_hull(points: &[Vec<Rat>], d: usize) -> (Vec<SimpFacet>, Rat) {
    assert!(d >= 1);
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].cmp(&points[j]));

    // greedy affinely independent seed of size d+1
    let mut seed: Vec<usize> = vec![order[0]];
    for &i in &order[1..] {
        if seed.len() == d + 1 {
            break;
        }
        let rows: Vec<Vec<Rat>> = seed[1..]
            .iter()
            .chain(std::iter::once(&i))
            .map(|&s| sub(&points[s], &points[seed[0]]))
            .collect();
        if rref(&RatMatrix::from_rows(rows)).rank == seed.len() {
            seed.push(i);
        }
    }
    assert_eq!(seed.len(), d + 1, "points do not span dimension {d}");

    // fixed interior reference point: seed centroid
    let centroid: Vec<Rat> = (0..d)
        .map(|j| {
            let mut s = Rat::zero();
            for &i in &seed {
                s += &points[i][j];
            }
            s / rat((d + 1) as i64)
        })
        .collect();

    let mut facets: Vec<SimpFacet> = Vec::new();
    for drop in 0..=d {
        let verts: Vec<usize> = seed
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != drop)
            .map(|(_, &v)| v)
            .collect();
        facets.push(make_facet(points, &verts, &centroid));
    }

    let mut volume = simplex_volume(points, &seed);
    let seed_set: BTreeSet<usize> = seed.iter().copied().collect();

    for &p in &order {
        if seed_set.contains(&p) {
            continue;
        }
        let mut strictly_visible = false;
        let mut visible = vec![false; facets.len()];
        for (fi, f) in facets.iter().enumerate() {
            let v = dot(&f.normal, &points[p]);
            if v > f.offset {
                visible[fi] = true;
                strictly_visible = true;
                volume += pyramid_volume(points, f, p);
            } else if v == f.offset {
                visible[fi] = true; // coplanar facets are rebuilt with p included
            }
        }
        if !strictly_visible {
            continue;
        }
        // horizon ridges: (d-1)-subsets of visible facets shared with a hidden facet
        let mut ridge_count: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (fi, f) in facets.iter().enumerate() {
            if !visible[fi] {
                continue;
            }
            for drop in 0..f.verts.len() {
                let mut ridge: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != drop)
                    .map(|(_, &v)| v)
                    .collect();
                ridge.sort_unstable();
                *ridge_count.entry(ridge).or_insert(0) += 1;
            }
        }
        let mut next: Vec<SimpFacet> = facets
            .iter()
            .enumerate()
            .filter(|&(fi, _)| !visible[fi])
            .map(|(_, f)| f.clone())
            .collect();
        for (ridge, count) in ridge_count {
            if count == 1 {
                let mut verts = ridge;
                verts.push(p);
                next.push(make_facet(points, &verts, &centroid));
            }
        }
        facets = next;
    }
    (facets, volume)
}

fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Oriented hyperplane through `verts` with `inside` strictly on the <= side.
fn make_facet(points: &[Vec<Rat>], verts: &[usize], inside: &[Rat]) -> SimpFacet {
    let ns = if verts.len() == 1 {
        // dimension 1: a facet is a single point, any nonzero scalar works
        vec![vec![Rat::one()]]
    } else {
        let rows: Vec<Vec<Rat>> = verts[1..]
            .iter()
            .map(|&v| sub(&points[v], &points[verts[0]]))
            .collect();
        nullspace(&RatMatrix::from_rows(rows))
    };
    assert_eq!(ns.len(), 1, "facet points are degenerate");
    let mut normal: Vec<Rat> = clear_denominators(&ns[0])
        .into_iter()
        .map(Rat::from)
        .collect();
    let mut offset = dot(&normal, &points[verts[0]]);
    let side = dot(&normal, inside);
    assert!(side != offset, "reference point lies on a facet hyperplane");
    if side > offset {
        for e in normal.iter_mut() {
            *e = -e.clone();
        }
        offset = -offset;
    }
    SimpFacet {
        verts: verts.to_vec(),
        normal,
        offset,
    }
}

fn det(mut rows: Vec<Vec<Rat>>) -> Rat {
    let n = rows.len();
    let mut sign = Rat::one();
    let mut result = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            rows.swap(p, c);
            sign = -sign;
        }
        result *= &rows[c][c];
        let inv = rows[c][c].recip();
        for i in c + 1..n {
            if !rows[i][c].is_zero() {
                let f = &rows[i][c] * &inv;
                for j in c..n {
                    let v = &rows[i][j] - &f * &rows[c][j];
                    rows[i][j] = v;
                }
            }
        }
    }
    result * sign
}

fn simplex_volume(points: &[Vec<Rat>], verts: &[usize]) -> Rat {
    let rows: Vec<Vec<Rat>> = verts[1..]
        .iter()
        .map(|&v| sub(&points[v], &points[verts[0]]))
        .collect();
    let d = det(rows);
    if d.is_negative() {
        -d
    } else {
        d
    }
}

fn pyramid_volume(points: &[Vec<Rat>], f: &SimpFacet, apex: usize) -> Rat {
    let mut verts = f.verts.clone();
    verts.push(apex);
    simplex_volume(points, &verts)
}

/// Affine chart of a point set: base point, pivot columns of the difference
/// space, and the points' coordinates in that chart.
struct Chart {
    base: Vec<Rat>,
    pivots: Vec<usize>,
    coords: Vec<Vec<Rat>>,
    dim: usize,
    /// rational basis of {e : e . (p - base) = 0 for all points p}
    normal_space: Vec<Vec<Rat>>,
}

fn affine_chart(points: &[Vec<Rat>]) -> Chart {
    let base = points
        .iter()
        .min()
        .expect("affine chart of empty point set")
        .clone();
    let diffs: Vec<Vec<Rat>> = points.iter().map(|p| sub(p, &base)).collect();
    let m = RatMatrix::from_rows(diffs.clone());
    let red = rref(&m);
    let pivots = red.pivots.clone();
    let coords = diffs
        .iter()
        .map(|v| pivots.iter().map(|&c| v[c].clone()).collect())
        .collect();
    let normal_space = nullspace(&m);
    Chart {
        base,
        pivots,
        coords,
        dim: red.rank,
        normal_space,
    }
}

/// Convex hull of a point set: minimal vertices, affine hull, and facets.
pub fn convex_hull(points: &[Vec<Rat>]) -> PolytopeV {
    assert!(!points.is_empty(), "convex hull of empty point set");
    let ambient_dim = points[0].len();
    let deduped: Vec<Vec<Rat>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let chart = affine_chart(&deduped);
    let hull_equations: Vec<(Vec<Rat>, Rat)> = chart
        .normal_space
        .iter()
        .map(|e| {
            let prim: Vec<Rat> = clear_denominators(e).into_iter().map(Rat::from).collect();
            let c = dot(&prim, &chart.base);
            (prim, c)
        })
        .collect();

    if chart.dim == 0 {
        return PolytopeV {
            ambient_dim,
            points: deduped.clone(),
            vertices: deduped,
            affine_dim: 0,
            hull_equations,
            facets: Vec::new(),
        };
    }

    let (simp_facets, _) = incremental_hull(&chart.coords, chart.dim);

    // merge simplicial facets by supporting hyperplane
    let mut merged: BTreeMap<(Vec<Rat>, Rat), BTreeSet<usize>> = BTreeMap::new();
    for f in &simp_facets {
        merged
            .entry((f.normal.clone(), f.offset.clone()))
            .or_default()
            .extend(f.verts.iter().copied());
    }

    // a point is a vertex iff its tight facet normals span the chart
    let mut tight_normals: Vec<Vec<&Vec<Rat>>> = vec![Vec::new(); deduped.len()];
    for ((normal, offset), _) in &merged {
        for (i, u) in chart.coords.iter().enumerate() {
            if dot(normal, u) == *offset {
                tight_normals[i].push(normal);
            }
        }
    }
    let mut vertices: Vec<Vec<Rat>> = Vec::new();
    for (i, tn) in tight_normals.iter().enumerate() {
        if tn.len() >= chart.dim {
            let rows: Vec<Vec<Rat>> = tn.iter().map(|v| (*v).clone()).collect();
            if rref(&RatMatrix::from_rows(rows)).rank == chart.dim {
                vertices.push(deduped[i].clone());
            }
        }
    }
    vertices.sort();

    // lift facet inequalities to the ambient space through the pivot chart
    let facets: Vec<(Vec<Rat>, Rat)> = merged
        .keys()
        .map(|(normal, offset)| {
            let mut amb = vec![Rat::zero(); ambient_dim];
            for (j, &c) in chart.pivots.iter().enumerate() {
                amb[c] = normal[j].clone();
            }
            let c = offset + dot(&amb, &chart.base);
            (amb, c)
        })
        .collect();

    PolytopeV {
        ambient_dim,
        points: deduped,
        vertices,
        affine_dim: chart.dim,
        hull_equations,
        facets,
    }
}

/// Coordinates of the points of `p` with respect to the lattice induced on
/// the affine hull (saturated direction lattice, base at an integral point of
/// the hull). Rational coordinates are allowed; the base must be integral.
struct LatticeChart {
    dim: usize,
    coords: Vec<Vec<Rat>>,
}

fn lattice_chart(points: &[Vec<Rat>]) -> Result<LatticeChart, Error> {
    let base = points
        .iter()
        .find(|p| p.iter().all(|e| e.is_integer()))
        .ok_or(Error::NonIntegralPolytope)?
        .clone();
    let diffs: Vec<Vec<Rat>> = points.iter().map(|p| sub(p, &base)).collect();
    let span = RatMatrix::from_rows(diffs.clone());
    let dim = rref(&span).rank;
    if dim == 0 {
        return Ok(LatticeChart {
            dim,
            coords: vec![Vec::new(); points.len()],
        });
    }
    // saturated lattice of the direction span: integer kernel of its normal space
    let normals: Vec<Vec<BigInt>> = nullspace(&span)
        .iter()
        .map(|v| clear_denominators(v))
        .collect();
    let lattice: IntLattice = if normals.is_empty() {
        // full-dimensional: the standard lattice
        IntLattice {
            dim: points[0].len(),
            basis: (0..points[0].len())
                .map(|i| {
                    (0..points[0].len())
                        .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                        .collect()
                })
                .collect(),
        }
    } else {
        kernel_lattice_basis(&normals)
    };
    debug_assert_eq!(lattice.rank(), dim);
    // solve diff = sum c_k basis_k for each point (rational c allowed)
    let basis_rows: Vec<Vec<Rat>> = lattice
        .basis
        .iter()
        .map(|row| row.iter().map(|e| Rat::from(e.clone())).collect())
        .collect();
    let mut coords = Vec::with_capacity(points.len());
    for v in &diffs {
        coords.push(solve_in_span(&basis_rows, v));
    }
    Ok(LatticeChart { dim, coords })
}

/// Solve v = sum c_k rows_k, assuming v lies in the row span.
fn solve_in_span(rows: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    let k = rows.len();
    let n = v.len();
    // rref of [rows^T | v]
    let mut aug_rows: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let mut r: Vec<Rat> = rows.iter().map(|row| row[j].clone()).collect();
            r.push(v[j].clone());
            r
        })
        .collect();
    let red = rref(&RatMatrix::from_rows(std::mem::take(&mut aug_rows)));
    let mut c = vec![Rat::zero(); k];
    for (row, &pc) in red.pivots.iter().enumerate() {
        assert!(pc < k, "vector lies outside the row span");
        c[pc] = red.matrix.at(row, k).clone();
    }
    c
}

/// Volume of the polytope measured in affine-lattice coordinates, times
/// (affine dimension)!. For a lattice polytope this is a nonnegative integer;
/// rational vertices are allowed as long as the affine hull contains an
/// integral input point to anchor the lattice.
pub fn lattice_normalized_volume(p: &PolytopeV) -> Result<Rat, Error> {
    let chart = lattice_chart(&p.points)?;
    if chart.dim == 0 {
        return Ok(Rat::one());
    }
    let unique: Vec<Vec<Rat>> = chart
        .coords
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let (_, volume) = incremental_hull(&unique, chart.dim);
    Ok(volume)
}

/// Number of lattice points in the `dilate`-th dilation of an integral
/// polytope, by direct enumeration of the coordinate box inside the affine
/// lattice. Refuses when the box exceeds `limits.enum_budget` candidates.
pub fn lattice_point_count(p: &PolytopeV, dilate: u32, limits: &Limits) -> Result<u64, Error> {
    if !p
        .points
        .iter()
        .all(|pt| pt.iter().all(|e| e.is_integer()))
    {
        return Err(Error::NonIntegralPolytope);
    }
    let chart = lattice_chart(&p.points)?;
    if chart.dim == 0 || dilate == 0 {
        return Ok(1);
    }
    let scale = rat(dilate as i64);
    let scaled: Vec<Vec<Rat>> = chart
        .coords
        .iter()
        .map(|u| u.iter().map(|e| e * &scale).collect())
        .collect();
    let unique: Vec<Vec<Rat>> = scaled
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let d = chart.dim;
    let facets: Vec<(Vec<Rat>, Rat)> = {
        let (simp, _) = incremental_hull(&unique, d);
        let mut merged: BTreeSet<(Vec<Rat>, Rat)> = BTreeSet::new();
        for f in simp {
            merged.insert((f.normal, f.offset));
        }
        merged.into_iter().collect()
    };

    // bounding box
    let mut lo = vec![BigInt::zero(); d];
    let mut hi = vec![BigInt::zero(); d];
    for j in 0..d {
        let mut min = unique[0][j].clone();
        let mut max = unique[0][j].clone();
        for u in &unique[1..] {
            if u[j] < min {
                min = u[j].clone();
            }
            if u[j] > max {
                max = u[j].clone();
            }
        }
        lo[j] = min.ceil().to_integer();
        hi[j] = max.floor().to_integer();
    }
    let mut estimate: u128 = 1;
    for j in 0..d {
        let width = (&hi[j] - &lo[j] + BigInt::one())
            .max(BigInt::zero())
            .to_u128()
            .unwrap_or(u128::MAX);
        estimate = estimate.saturating_mul(width);
        if estimate > limits.enum_budget {
            return Err(Error::EnumerationBudget {
                dilate,
                estimate,
                budget: limits.enum_budget,
            });
        }
    }
    let mut count = 0u64;
    let mut cursor: Vec<BigInt> = lo.clone();
    'outer: loop {
        let pt: Vec<Rat> = cursor.iter().map(|e| Rat::from(e.clone())).collect();
        if facets.iter().all(|(a, c)| dot(a, &pt) <= *c) {
            count += 1;
        }
        // advance odometer
        for j in (0..d).rev() {
            cursor[j] += 1;
            if cursor[j] <= hi[j] {
                continue 'outer;
            }
            cursor[j] = lo[j].clone();
            if j == 0 {
                break 'outer;
            }
        }
    }
    Ok(count)
}

/// Ehrhart polynomial of an integral polytope, as rational coefficients in
/// ascending degree order, interpolated from the counts at dilates 0..=dim.
pub fn ehrhart_polynomial(p: &PolytopeV, limits: &Limits) -> Result<Vec<Rat>, Error> {
    let d = p.affine_dim;
    let mut values = Vec::with_capacity(d + 1);
    for t in 0..=d {
        values.push(Rat::from(BigInt::from(lattice_point_count(
            p, t as u32, limits,
        )?)));
    }
    // Lagrange interpolation at 0..=d
    let mut coeffs = vec![Rat::zero(); d + 1];
    for (i, vi) in values.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - j) / (i - j)
        let mut basis = vec![Rat::zero(); d + 1];
        basis[0] = Rat::one();
        let mut deg = 0;
        let mut denom = Rat::one();
        for j in 0..=d {
            if j == i {
                continue;
            }
            // multiply basis by (x - j)
            for k in (0..=deg).rev() {
                let b = basis[k].clone();
                basis[k + 1] += &b;
                basis[k] = -rat(j as i64) * &b;
            }
            deg += 1;
            denom *= rat(i as i64) - rat(j as i64);
        }
        let f = vi / denom;
        for k in 0..=d {
            coeffs[k] += &basis[k] * &f;
        }
    }
    Ok(coeffs)
}

pub fn eval_poly(coeffs: &[Rat], t: i64) -> Rat {
    let x = rat(t);
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &x + c;
    }
    acc
}

/// Minkowski sum: hull of all pairwise vertex sums.
pub fn minkowski_sum(a: &PolytopeV, b: &PolytopeV) -> PolytopeV {
    assert_eq!(a.ambient_dim, b.ambient_dim, "ambient dimension mismatch");
    let mut sums = Vec::with_capacity(a.vertices.len() * b.vertices.len());
    for va in &a.vertices {
        for vb in &b.vertices {
            sums.push(va.iter().zip(vb).map(|(x, y)| x + y).collect());
        }
    }
    convex_hull(&sums)
}

/// Regular subdivision induced by lifting `points[i]` to height `heights[i]`
/// and projecting the lower hull back down. Cells are index sets: all points
/// whose lift lies on a shared lower facet. When the heights are an affine
/// function of the points the subdivision is trivial: one cell with every
/// index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision {
    pub lifted: Vec<(Vec<Rat>, Rat)>,
    pub cells: Vec<Vec<usize>>,
}

pub fn lower_hull_cells(points: &[Vec<Rat>], heights: &[Rat]) -> Subdivision {
    assert_eq!(points.len(), heights.len());
    assert!(!points.is_empty());
    let ambient = points[0].len();
    let lifted: Vec<(Vec<Rat>, Rat)> = points
        .iter()
        .cloned()
        .zip(heights.iter().cloned())
        .collect();

    // affine heights give the trivial subdivision
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(points.len());
    for p in points {
        let mut r = p.clone();
        r.push(Rat::one());
        rows.push(r);
    }
    let coeff_rank = rref(&RatMatrix::from_rows(rows.clone())).rank;
    let mut aug = rows.clone();
    for (r, h) in aug.iter_mut().zip(heights) {
        r.push(h.clone());
    }
    let aug_rank = rref(&RatMatrix::from_rows(aug)).rank;
    if aug_rank == coeff_rank {
        return Subdivision {
            lifted,
            cells: vec![(0..points.len()).collect()],
        };
    }

    let lifts: Vec<Vec<Rat>> = lifted
        .iter()
        .map(|(p, h)| {
            let mut v = p.clone();
            v.push(h.clone());
            v
        })
        .collect();
    let hull = convex_hull(&lifts);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (a, c) in &hull.facets {
        if a[ambient].is_negative() {
            let cell: Vec<usize> = lifts
                .iter()
                .enumerate()
                .filter(|(_, q)| dot(a, q) == *c)
                .map(|(i, _)| i)
                .collect();
            cells.push(cell);
        }
    }
    cells.sort();
    Subdivision { lifted, cells }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[&[i64]]) -> Vec<Vec<Rat>> {
        raw.iter()
            .map(|row| row.iter().map(|&e| rat(e)).collect())
            .collect()
    }

    #[test]
    fn cone_dim_full_octant() {
        // {x <= 0, y <= 0} in R^2 is full-dimensional
        let cone = ConeH::new(2, pts(&[&[1, 0], &[0, 1]]), vec![]);
        assert_eq!(cone_dim(&cone), 2);
        assert!(interior_point(&cone).is_some());
    }

    #[test]
    fn cone_dim_implicit_line() {
        // {x <= 0, -x <= 0} in R^1 collapses to the origin's hyperplane
        let cone = ConeH::new(1, pts(&[&[1], &[-1]]), vec![]);
        assert_eq!(cone_dim(&cone), 0);
        assert_eq!(interior_point(&cone), None);
    }

    #[test]
    fn cone_dim_with_equations() {
        // {x + y = 0, x <= 0} in R^2: a ray, dimension 1
        let cone = ConeH::new(2, pts(&[&[1, 0]]), pts(&[&[1, 1]]));
        assert_eq!(cone_dim(&cone), 1);
        let ip = interior_point(&cone).expect("ray has a strict point");
        assert!(ip[0].is_negative());
        assert_eq!(&ip[0] + &ip[1], rat(0));
    }

    #[test]
    fn hull_of_square_with_interior_and_boundary_points() {
        let p = convex_hull(&pts(&[
            &[0, 0],
            &[2, 0],
            &[0, 2],
            &[2, 2],
            &[1, 1], // interior
            &[1, 0], // edge midpoint
            &[2, 1], // edge midpoint
        ]));
        assert_eq!(p.affine_dim, 2);
        assert_eq!(p.vertices, pts(&[&[0, 0], &[0, 2], &[2, 0], &[2, 2]]));
        assert_eq!(p.facets.len(), 4);
        for (a, c) in &p.facets {
            for pt in &p.points {
                assert!(dot(a, pt) <= *c);
            }
        }
    }

    #[test]
    fn hull_of_degenerate_segment_in_3d() {
        let p = convex_hull(&pts(&[&[1, 1, 1], &[3, 3, 3], &[2, 2, 2]]));
        assert_eq!(p.affine_dim, 1);
        assert_eq!(p.vertices, pts(&[&[1, 1, 1], &[3, 3, 3]]));
        assert_eq!(p.hull_equations.len(), 2);
        for (e, c) in &p.hull_equations {
            for pt in &p.points {
                assert_eq!(dot(e, pt), *c);
            }
        }
    }

    #[test]
    fn hull_of_point() {
        let p = convex_hull(&pts(&[&[5, -3]]));
        assert_eq!(p.affine_dim, 0);
        assert_eq!(p.vertices, pts(&[&[5, -3]]));
        assert!(p.facets.is_empty());
        assert_eq!(p.hull_equations.len(), 2);
    }

    #[test]
    fn octahedron_hull_counts() {
        let p = convex_hull(&pts(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]));
        assert_eq!(p.vertices.len(), 6);
        assert_eq!(p.facets.len(), 8);
        assert_eq!(
            lattice_normalized_volume(&p).unwrap(),
            rat(8) // euclidean volume 4/3 times 3!
        );
    }

    #[test]
    fn volume_of_unit_segment_and_square() {
        let seg = convex_hull(&pts(&[&[0], &[1]]));
        assert_eq!(lattice_normalized_volume(&seg).unwrap(), rat(1));
        let square = convex_hull(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
        assert_eq!(lattice_normalized_volume(&square).unwrap(), rat(2));
    }

    #[test]
    fn volume_respects_induced_lattice() {
        // segment from (0,0) to (2,2): two lattice steps along the diagonal
        let seg = convex_hull(&pts(&[&[0, 0], &[2, 2]]));
        assert_eq!(lattice_normalized_volume(&seg).unwrap(), rat(2));
        // triangle (0,0),(1,0),(0,1) has normalized volume 1
        let tri = convex_hull(&pts(&[&[0, 0], &[1, 0], &[0, 1]]));
        assert_eq!(lattice_normalized_volume(&tri).unwrap(), rat(1));
    }

    #[test]
    fn volume_insertion_order_independence() {
        // a 3-cube with centroid-ish perturbation points; two traversals of
        // the same point set must agree (placing orders differ internally)
        let mut cube: Vec<Vec<Rat>> = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    cube.push(vec![rat(x), rat(y), rat(z)]);
                }
            }
        }
        let v1 = lattice_normalized_volume(&convex_hull(&cube)).unwrap();
        cube.reverse();
        cube.push(vec![rat(1), rat(1), rat(0)]); // duplicate
        let v2 = lattice_normalized_volume(&convex_hull(&cube)).unwrap();
        assert_eq!(v1, rat(6));
        assert_eq!(v1, v2);
    }

    #[test]
    fn counts_and_ehrhart_for_unit_segment() {
        let seg = convex_hull(&pts(&[&[0], &[1]]));
        let limits = Limits::default();
        assert_eq!(lattice_point_count(&seg, 0, &limits).unwrap(), 1);
        assert_eq!(lattice_point_count(&seg, 1, &limits).unwrap(), 2);
        assert_eq!(lattice_point_count(&seg, 7, &limits).unwrap(), 8);
        let coeffs = ehrhart_polynomial(&seg, &limits).unwrap();
        assert_eq!(coeffs, vec![rat(1), rat(1)]); // E(t) = t + 1
    }

    #[test]
    fn ehrhart_of_square() {
        let square = convex_hull(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
        let coeffs = ehrhart_polynomial(&square, &Limits::default()).unwrap();
        assert_eq!(coeffs, vec![rat(1), rat(2), rat(1)]); // (t+1)^2
        assert_eq!(eval_poly(&coeffs, 3), rat(16));
    }

    #[test]
    fn enumeration_budget_names_dilate() {
        let square = convex_hull(&pts(&[&[0, 0], &[40, 0], &[0, 40], &[40, 40]]));
        let limits = Limits {
            enum_budget: 100,
            ..Limits::default()
        };
        match lattice_point_count(&square, 3, &limits) {
            Err(Error::EnumerationBudget { dilate, .. }) => assert_eq!(dilate, 3),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn minkowski_square_from_segments() {
        let sx = convex_hull(&pts(&[&[0, 0], &[1, 0]]));
        let sy = convex_hull(&pts(&[&[0, 0], &[0, 1]]));
        let sum = minkowski_sum(&sx, &sy);
        assert_eq!(sum.vertices.len(), 4);
        assert_eq!(lattice_normalized_volume(&sum).unwrap(), rat(2));
        let sum2 = minkowski_sum(&sy, &sx);
        assert_eq!(sum.vertices, sum2.vertices);
    }

    #[test]
    fn lower_hull_collinear_example() {
        // collinear points 0,1,2 with heights 0,-1,0: cells {0,1} and {1,2}
        let sd = lower_hull_cells(&pts(&[&[0], &[1], &[2]]), &[rat(0), rat(-1), rat(0)]);
        assert_eq!(sd.cells, vec![vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn lower_hull_flat_heights() {
        let sd = lower_hull_cells(
            &pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]),
            &[rat(3), rat(3), rat(3), rat(3)],
        );
        assert_eq!(sd.cells, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn lower_hull_matches_brute_force_on_small_instances() {
        let configs: Vec<(Vec<Vec<Rat>>, Vec<Rat>)> = vec![
            (
                pts(&[&[0], &[1], &[2], &[3]]),
                vec![rat(0), rat(2), rat(1), rat(0)],
            ),
            (
                pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[2, 2]]),
                vec![rat(0), rat(1), rat(1), rat(0), rat(5)],
            ),
            (
                pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1]]),
                vec![rat(0), rat(0), rat(0), rat(0), rat(-1)],
            ),
        ];
        for (points, heights) in configs {
            let sd = lower_hull_cells(&points, &heights);
            let expected = brute_force_cells(&points, &heights);
            let got: BTreeSet<Vec<usize>> = sd.cells.iter().cloned().collect();
            assert_eq!(got, expected, "points {points:?} heights {heights:?}");
        }
    }

    /// Oracle: try every affinely-spanning subset as the graph of an affine
    /// function; keep those lying weakly below all lifts; report the maximal
    /// tight sets.
    fn brute_force_cells(points: &[Vec<Rat>], heights: &[Rat]) -> BTreeSet<Vec<usize>> {
        let n = points.len();
        let dim = points[0].len();
        let mut cells: BTreeSet<Vec<usize>> = BTreeSet::new();
        // iterate over all subsets of size <= dim+1 via bitmask (small n only)
        for mask in 1u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if subset.len() > dim + 1 {
                continue;
            }
            // solve c.p + g = h on the subset
            let mut rows = Vec::new();
            for &i in &subset {
                let mut r = points[i].clone();
                r.push(Rat::one());
                r.push(heights[i].clone());
                rows.push(r);
            }
            let red = rref(&RatMatrix::from_rows(rows));
            if red.pivots.contains(&(dim + 1)) {
                continue; // inconsistent
            }
            let mut func = vec![Rat::zero(); dim + 1];
            for (r, &pc) in red.pivots.iter().enumerate() {
                func[pc] = red.matrix.at(r, dim + 1).clone();
            }
            let eval = |p: &[Rat]| {
                let mut acc = func[dim].clone();
                for j in 0..dim {
                    acc += &func[j] * &p[j];
                }
                acc
            };
            if subset.iter().any(|&i| eval(&points[i]) != heights[i]) {
                continue; // underdetermined system solved away from the data
            }
            if (0..n).all(|i| eval(&points[i]) <= heights[i]) {
                let cell: Vec<usize> = (0..n).filter(|&i| eval(&points[i]) == heights[i]).collect();
                cells.insert(cell);
            }
        }
        // keep only inclusion-maximal cells
        let all: Vec<Vec<usize>> = cells.iter().cloned().collect();
        cells
            .into_iter()
            .filter(|c| {
                !all.iter().any(|other| {
                    other.len() > c.len() && c.iter().all(|i| other.contains(i))
                })
            })
            .collect()
    }

    #[test]
    fn vertices_saturate_enough_facets() {
        let p = convex_hull(&pts(&[
            &[0, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 0, 1],
            &[0, 1, 1],
            &[1, 1, 1],
        ]));
        for v in &p.vertices {
            let tight: Vec<Vec<Rat>> = p
                .facets
                .iter()
                .filter(|(a, c)| dot(a, v) == *c)
                .map(|(a, _)| a.clone())
                .collect();
            assert!(rref(&RatMatrix::from_rows(tight)).rank >= p.affine_dim);
        }
    }
}
