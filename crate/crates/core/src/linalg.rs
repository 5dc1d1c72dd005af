//! Exact rational and integer linear algebra: reduced row echelon form,
//! saturated integer kernels, and Hermite normal forms. Everything here is
//! deterministic; no floating point anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

pub fn rat_from_big(n: BigInt) -> Rat {
    Rat::from(n)
}

/// Dense row-major matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[Vec<BigInt>]) -> Self {
        RatMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|e| Rat::from(e.clone())).collect())
                .collect(),
        )
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Result of Gauss-Jordan elimination: the unique reduced row echelon form,
/// its rank, and the pivot column of each nonzero row.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &RatMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..a.cols {
        if r == a.rows {
            break;
        }
        // first nonzero entry in this column at or below row r
        let Some(pr) = (r..a.rows).find(|&i| !a.at(i, col).is_zero()) else {
            continue;
        };
        a.swap_rows(r, pr);
        let inv = a.at(r, col).recip();
        for j in col..a.cols {
            let v = a.at(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i != r && !a.at(i, col).is_zero() {
                let f = a.at(i, col).clone();
                for j in col..a.cols {
                    let v = a.at(i, j) - &f * a.at(r, j);
                    a.set(i, j, v);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    Rref {
        matrix: a,
        rank: r,
        pivots,
    }
}

/// Basis of the rational null space {x : m x = 0}, one vector per free
/// column, in the standard rref parametrisation.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let red = rref(m);
    let pivot_set: std::collections::BTreeSet<usize> = red.pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); m.cols];
        v[free] = Rat::one();
        for (row, &pc) in red.pivots.iter().enumerate() {
            v[pc] = -red.matrix.at(row, free).clone();
        }
        basis.push(v);
    }
    basis
}

pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rref(&RatMatrix::from_int_rows(rows)).rank
}

/// A full-rank integer lattice given by a canonical basis: the rows are in
/// row-style Hermite normal form (positive pivots, entries above each pivot
/// reduced into [0, pivot)), so equal lattices have equal bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    pub dim: usize,
    pub basis: Vec<Vec<BigInt>>,
}

impl IntLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Membership test: can `v` be written as an integer combination of the
    /// basis rows? Uses the HNF staircase directly.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Integer coordinates of `v` in the basis, if any.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim);
        let mut rem = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let pc = row.iter().position(|e| !e.is_zero())?;
            if rem[..pc].iter().any(|e| !e.is_zero()) {
                return None;
            }
            let (q, r) = rem[pc].div_rem(&row[pc]);
            if !r.is_zero() {
                return None;
            }
            for j in 0..self.dim {
                rem[j] -= &q * &row[j];
            }
            coords.push(q);
        }
        if rem.iter().all(|e| e.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }
}

/// Row-style Hermite normal form. Returns the nonzero rows only.
pub fn hnf_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut pivot_row = 0;
    for col in 0..cols {
        // gcd-reduce all entries of this column below pivot_row into one row
        loop {
            let mut nz: Vec<usize> = (pivot_row..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                let i = nz[0];
                a.swap(pivot_row, i);
                break;
            }
            // pick the row with the smallest nonzero |entry| and reduce the rest
            nz.sort_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let min = nz[0];
            for &i in &nz[1..] {
                let q = div_round(&a[i][col], &a[min][col]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let sub = &q * &a[min][j];
                        a[i][j] -= sub;
                    }
                }
            }
        }
        if pivot_row < a.len() && !a[pivot_row][col].is_zero() {
            if a[pivot_row][col].is_negative() {
                for j in 0..cols {
                    a[pivot_row][j] = -a[pivot_row][j].clone();
                }
            }
            // reduce entries above the pivot into [0, pivot)
            for i in 0..pivot_row {
                let q = a[i][col].div_floor(&a[pivot_row][col]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let sub = &q * &a[pivot_row][j];
                        a[i][j] -= sub;
                    }
                }
            }
            pivot_row += 1;
        }
    }
    a.truncate(pivot_row);
    a
}

/// Nearest-integer quotient, used to shrink entries fast during HNF.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Saturated integer kernel of an integer matrix, i.e. {v in Z^cols : m v = 0}.
///
/// Unimodular row reduction of [m^T | I] sends the identity block to a basis
/// of the kernel exactly where the m^T block vanishes; because the transform
/// is unimodular the resulting lattice is automatically saturated. The basis
/// is then canonicalised by HNF.
pub fn kernel_lattice_basis(m: &[Vec<BigInt>]) -> IntLattice {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    if cols == 0 {
        return IntLattice {
            dim: 0,
            basis: Vec::new(),
        };
    }
    // augmented = [m^T | I_cols], one row per variable
    let mut aug: Vec<Vec<BigInt>> = (0..cols)
        .map(|v| {
            let mut row: Vec<BigInt> = (0..rows).map(|r| m[r][v].clone()).collect();
            row.extend((0..cols).map(|j| {
                if j == v {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();

    let mut pivot_row = 0;
    for col in 0..rows {
        loop {
            let mut nz: Vec<usize> = (pivot_row..aug.len())
                .filter(|&i| !aug[i][col].is_zero())
                .collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                aug.swap(pivot_row, nz[0]);
                break;
            }
            nz.sort_by(|&i, &j| aug[i][col].abs().cmp(&aug[j][col].abs()));
            let min = nz[0];
            for &i in &nz[1..] {
                let q = div_round(&aug[i][col], &aug[min][col]);
                if !q.is_zero() {
                    for j in 0..aug[i].len() {
                        let sub = &q * &aug[min][j];
                        aug[i][j] -= sub;
                    }
                }
            }
        }
        if pivot_row < aug.len() && !aug[pivot_row][col].is_zero() {
            pivot_row += 1;
        }
    }

    let kernel_rows: Vec<Vec<BigInt>> = aug[pivot_row..]
        .iter()
        .map(|row| {
            debug_assert!(row[..rows].iter().all(|e| e.is_zero()));
            row[rows..].to_vec()
        })
        .collect();
    IntLattice {
        dim: cols,
        basis: hnf_rows(&kernel_rows),
    }
}

/// Clear denominators of a rational vector, returning the primitive integer
/// vector with the same direction (first nonzero entry's sign preserved).
pub fn clear_denominators(v: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for e in v {
        lcm = lcm.lcm(e.denom());
    }
    let scaled: Vec<BigInt> = v.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
    let mut g = BigInt::zero();
    for e in &scaled {
        g = g.gcd(e);
    }
    if g.is_zero() || g.is_one() {
        scaled
    } else {
        scaled.iter().map(|e| e / &g).collect()
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn rref_identity_on_invertible() {
        let m = RatMatrix::from_rows(vec![
            vec![rat(2), rat(1)],
            vec![rat(1), rat(1)],
        ]);
        let r = rref(&m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.matrix.at(0, 0), &rat(1));
        assert_eq!(r.matrix.at(0, 1), &rat(0));
        assert_eq!(r.matrix.at(1, 1), &rat(1));
    }

    #[test]
    fn rref_is_idempotent() {
        let m = RatMatrix::from_rows(vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(0), rat(1), rat(1)],
        ]);
        let once = rref(&m);
        let twice = rref(&once.matrix);
        assert_eq!(once.matrix, twice.matrix);
        assert_eq!(once.rank, 2);
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let m = RatMatrix::from_rows(vec![
            vec![rat(1), rat(2), rat(3), rat(4)],
            vec![rat(0), rat(1), rat(1), rat(1)],
        ]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for i in 0..m.rows {
                assert!(dot(m.row(i), v).is_zero());
            }
        }
    }

    #[test]
    fn hnf_canonical_example() {
        // rows spanning the same lattice in two presentations
        let a = hnf_rows(&[vec![bi(2), bi(0)], vec![bi(1), bi(3)]]);
        let b = hnf_rows(&[vec![bi(1), bi(3)], vec![bi(3), bi(3)]]);
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![bi(1), bi(3)], vec![bi(0), bi(6)]]);
    }

    #[test]
    fn kernel_of_full_rank_is_trivial() {
        let m = vec![vec![bi(1), bi(0)], vec![bi(0), bi(1)]];
        let k = kernel_lattice_basis(&m);
        assert_eq!(k.rank(), 0);
    }

    #[test]
    fn kernel_is_saturated_not_just_spanning() {
        // kernel of (1 1): the saturated kernel is spanned by (1,-1); a naive
        // subtraction scheme could return a sublattice like (2,-2).
        let m = vec![vec![bi(1), bi(1)]];
        let k = kernel_lattice_basis(&m);
        assert_eq!(k.basis, vec![vec![bi(1), bi(-1)]]);
        // (2, 4, -2): kernel of this single row is rank 2 and must contain
        // (1, 0, 1) even though (2,0,2)-style doubles span the same Q-space.
        let m2 = vec![vec![bi(2), bi(4), bi(-2)]];
        let k2 = kernel_lattice_basis(&m2);
        assert_eq!(k2.rank(), 2);
        assert!(k2.contains(&[bi(1), bi(0), bi(1)]));
        assert!(k2.contains(&[bi(2), bi(-1), bi(0)]));
    }

    #[test]
    fn lattice_coordinates_roundtrip() {
        let m = vec![vec![bi(1), bi(2), bi(3), bi(4), bi(5), bi(6)]];
        let k = kernel_lattice_basis(&m);
        assert_eq!(k.rank(), 5);
        // an arbitrary integer combination must come back with the same coords
        let mut v = vec![BigInt::zero(); 6];
        let coeffs = [bi(3), bi(-2), bi(0), bi(7), bi(1)];
        for (c, row) in coeffs.iter().zip(&k.basis) {
            for j in 0..6 {
                v[j] += c * &row[j];
            }
        }
        assert_eq!(k.coordinates(&v).unwrap(), coeffs.to_vec());
    }

    #[test]
    fn clear_denominators_primitive() {
        let v = vec![
            Rat::new(bi(1), bi(2)),
            Rat::new(bi(-1), bi(3)),
            Rat::zero(),
        ];
        assert_eq!(clear_denominators(&v), vec![bi(3), bi(-2), bi(0)]);
    }
}
