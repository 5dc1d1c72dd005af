//! Buchberger's algorithm with Gebauer-Moeller pair pruning, fraction-free
//! integer arithmetic, full normal forms, reduced (hence canonical) bases,
//! weight-initial ideals, and saturation of homogeneous ideals by the
//! product of all variables.

use super::order::Order;
use super::{mono_div, mono_divides, mono_is_coprime, mono_lcm, Mono, Poly, Ring};
use crate::error::Error;
use crate::linalg::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BinaryHeap, HashSet};

/// Terms with integer coefficients, sorted strictly descending under the
/// active order; the working representation inside the solver. Basis
/// elements are kept primitive (unit content, positive leading coefficient).
type ITerms = Vec<(Mono, BigInt)>;

/// Clear denominators: returns `d * p` as sorted integer terms together
/// with the denominator `d` (the lcm of the coefficient denominators).
fn to_int_terms(p: &Poly, order: &Order) -> (ITerms, BigInt) {
    let mut denom = BigInt::one();
    for (_, c) in p.terms() {
        denom = denom.lcm(c.denom());
    }
    let mut v: ITerms = p
        .terms()
        .map(|(m, c)| (m.clone(), c.numer() * (&denom / c.denom())))
        .collect();
    v.sort_by(|(a, _), (b, _)| order.cmp(b, a));
    (v, denom)
}

fn to_iterms(p: &Poly, order: &Order) -> ITerms {
    let (mut v, _) = to_int_terms(p, order);
    normalize(&mut v);
    v
}

/// Positive gcd of all coefficients; zero only for the zero polynomial.
fn content(t: &ITerms) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in t {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divide out the content and make the leading coefficient positive.
fn normalize(t: &mut ITerms) {
    if t.is_empty() {
        return;
    }
    let mut c = content(t);
    if t[0].1.is_negative() {
        c = -c;
    }
    if !c.is_one() {
        for (_, coeff) in t.iter_mut() {
            *coeff = &*coeff / &c;
        }
    }
}

/// Monic rational polynomial from primitive integer terms.
fn to_monic_poly(t: &ITerms) -> Poly {
    let lead = t[0].1.clone();
    Poly::from_terms(
        t.iter()
            .map(|(m, c)| (m.clone(), Rat::new(c.clone(), lead.clone()))),
    )
}

/// Support bitmask over the first 64 variables; a reducer can only divide a
/// monomial whose mask covers the reducer's mask, so one AND rejects most
/// candidates before the full divisibility scan.
fn mono_mask(m: &Mono) -> u64 {
    let mut mask = 0u64;
    for (i, &e) in m.iter().take(64).enumerate() {
        if e > 0 {
            mask |= 1 << i;
        }
    }
    mask
}

/// out = f - c * x^shift * g, all inputs sorted descending under `order`.
fn sub_shifted(
    f: &[(Mono, BigInt)],
    c: &BigInt,
    shift: &Mono,
    g: &[(Mono, BigInt)],
    order: &Order,
) -> ITerms {
    let mut out = ITerms::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    while i < f.len() && j < g.len() {
        let gm: Mono = g[j].0.iter().zip(shift).map(|(a, b)| a + b).collect();
        match order.cmp(&f[i].0, &gm) {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, -(&g[j].1 * c)));
                j += 1;
            }
            Ordering::Equal => {
                let coeff = &f[i].1 - &g[j].1 * c;
                if !coeff.is_zero() {
                    out.push((gm, coeff));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&f[i..]);
    while j < g.len() {
        let gm: Mono = g[j].0.iter().zip(shift).map(|(a, b)| a + b).collect();
        out.push((gm, -(&g[j].1 * c)));
        j += 1;
    }
    out
}

struct Budget {
    remaining: usize,
    limit: usize,
}

impl Budget {
    fn new(limit: usize) -> Self {
        Budget {
            remaining: limit,
            limit,
        }
    }

    fn spend(&mut self) -> Result<(), Error> {
        if self.remaining == 0 {
            return Err(Error::PairBudget { budget: self.limit });
        }
        self.remaining -= 1;
        Ok(())
    }
}

/// Full normal form against primitive reducers with positive leading
/// coefficients, fraction-free: the polynomial is rescaled by an integer
/// before each cancelling subtraction and its content is stripped after, so
/// the returned terms equal `(num/den) * NF(f)`. Every subtraction costs one
/// budget unit.
fn reduce_full(
    f: ITerms,
    reducers: &[(&ITerms, u64)],
    order: &Order,
    budget: &mut Budget,
) -> Result<(ITerms, BigInt, BigInt), Error> {
    let mut work = f;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut cursor = 0;
    'outer: while cursor < work.len() {
        let head_mask = mono_mask(&work[cursor].0);
        for (g, gmask) in reducers {
            if gmask & !head_mask != 0 {
                continue;
            }
            if !mono_divides(&g[0].0, &work[cursor].0) {
                continue;
            }
            budget.spend()?;
            let shift = mono_div(&work[cursor].0, &g[0].0);
            let c = work[cursor].1.clone();
            let b = &g[0].1; // positive
            let d = c.gcd(b);
            let mult = b / &d;
            let sub = &c / &d;
            if !mult.is_one() {
                for (_, coeff) in work.iter_mut() {
                    *coeff *= &mult;
                }
                num *= &mult;
            }
            let tail = sub_shifted(&work[cursor..], &sub, &shift, g, order);
            work.truncate(cursor);
            work.extend(tail);
            if !work.is_empty() {
                let ct = content(&work);
                if !ct.is_one() {
                    for (_, coeff) in work.iter_mut() {
                        *coeff = &*coeff / &ct;
                    }
                    den *= &ct;
                }
            }
            continue 'outer;
        }
        cursor += 1;
    }
    Ok((work, num, den))
}

/// Pair-queue key: block degree and graded degree of the lcm first (normal
/// selection), then the lcm itself and the indices for determinism.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    block_deg: u64,
    deg: u64,
    lcm: Mono,
    i: usize,
    j: usize,
}

struct Solver<'o> {
    order: &'o Order,
    basis: Vec<ITerms>,
    lts: Vec<Mono>,
    masks: Vec<u64>,
    /// An element retires as a reducer once a later leading term divides its
    /// own; retired elements still participate in pair bookkeeping.
    live: Vec<bool>,
    heap: BinaryHeap<Reverse<PairKey>>,
    pending: HashSet<(usize, usize)>,
}

impl<'o> Solver<'o> {
    fn new(order: &'o Order) -> Self {
        Solver {
            order,
            basis: Vec::new(),
            lts: Vec::new(),
            masks: Vec::new(),
            live: Vec::new(),
            heap: BinaryHeap::new(),
            pending: HashSet::new(),
        }
    }

    fn reducers(&self) -> Vec<(&ITerms, u64)> {
        self.basis
            .iter()
            .zip(&self.masks)
            .zip(&self.live)
            .filter(|(_, &alive)| alive)
            .map(|((b, &m), _)| (b, m))
            .collect()
    }

    fn push_pair(&mut self, i: usize, t: usize, lcm: Mono) {
        let (block_deg, deg) = self.order.selection_key(&lcm);
        self.pending.insert((i, t));
        self.heap.push(Reverse(PairKey {
            block_deg,
            deg,
            lcm,
            i,
            j: t,
        }));
    }

    /// Install a new basis element (primitive, nonzero) and update the pair
    /// queue with the Gebauer-Moeller criteria.
    fn add_element(&mut self, elem: ITerms) {
        let t = self.basis.len();
        let lt = elem[0].0.clone();

        // chain criterion: a pending pair is settled once the new leading
        // term divides its lcm and both cross pairs have strictly smaller lcm
        let old_pairs: Vec<(usize, usize)> = self.pending.iter().copied().collect();
        for (i, j) in old_pairs {
            let lcm_ij = mono_lcm(&self.lts[i], &self.lts[j]);
            if mono_divides(&lt, &lcm_ij)
                && mono_lcm(&self.lts[i], &lt) != lcm_ij
                && mono_lcm(&self.lts[j], &lt) != lcm_ij
            {
                self.pending.remove(&(i, j));
            }
        }

        // filter the new pairs (i, t): drop any whose lcm another new pair's
        // lcm properly divides; keep one pair per lcm value; a coprime member
        // settles its whole lcm class (product criterion)
        let lcms: Vec<Mono> = (0..t).map(|i| mono_lcm(&self.lts[i], &lt)).collect();
        let mut survives = vec![true; t];
        for i in 0..t {
            for j in 0..t {
                if j != i && lcms[j] != lcms[i] && mono_divides(&lcms[j], &lcms[i]) {
                    survives[i] = false;
                    break;
                }
            }
        }
        let mut by_lcm: BTreeMap<Mono, Vec<usize>> = BTreeMap::new();
        for i in 0..t {
            if survives[i] {
                by_lcm.entry(lcms[i].clone()).or_default().push(i);
            }
        }
        for (lcm, class) in by_lcm {
            if class
                .iter()
                .any(|&i| mono_is_coprime(&self.lts[i], &lt))
            {
                continue;
            }
            self.push_pair(class[0], t, lcm);
        }

        for i in 0..t {
            if self.live[i] && mono_divides(&lt, &self.lts[i]) {
                self.live[i] = false;
            }
        }
        self.masks.push(mono_mask(&lt));
        self.lts.push(lt);
        self.basis.push(elem);
        self.live.push(true);
    }
}

/// Reduced Groebner basis of the ideal generated by `gens` under `order`,
/// listed with increasing leading monomials. The reduced basis is unique,
/// so equal outputs mean equal ideals.
pub fn buchberger(gens: &[Poly], order: &Order, budget: usize) -> Result<Vec<Poly>, Error> {
    let mut budget = Budget::new(budget);
    let mut solver = Solver::new(order);

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let (mut rem, _, _) = reduce_full(to_iterms(g, order), &solver.reducers(), order, &mut budget)?;
        if rem.is_empty() {
            continue;
        }
        normalize(&mut rem);
        solver.add_element(rem);
    }

    while let Some(Reverse(key)) = solver.heap.pop() {
        let (i, j) = (key.i, key.j);
        if !solver.pending.remove(&(i, j)) {
            continue; // pruned after it was queued
        }
        budget.spend()?;
        let shift_i = mono_div(&key.lcm, &solver.lts[i]);
        let shift_j = mono_div(&key.lcm, &solver.lts[j]);
        // fraction-free s-polynomial: (b/d) x^si f_i - (a/d) x^sj f_j
        let a = &solver.basis[i][0].1;
        let b = &solver.basis[j][0].1;
        let d = a.gcd(b);
        let ca = b / &d;
        let cb = a / &d;
        let lifted: ITerms = solver.basis[i]
            .iter()
            .map(|(m, c)| {
                let shifted: Mono = m.iter().zip(&shift_i).map(|(x, y)| x + y).collect();
                (shifted, c * &ca)
            })
            .collect();
        let spoly = sub_shifted(&lifted, &cb, &shift_j, &solver.basis[j], order);
        let (mut rem, _, _) = reduce_full(spoly, &solver.reducers(), order, &mut budget)?;
        if rem.is_empty() {
            continue;
        }
        normalize(&mut rem);
        solver.add_element(rem);
    }

    // minimal generators: drop anything whose leading term another divides
    let mut keep: Vec<&ITerms> = Vec::new();
    let mut order_idx: Vec<usize> = (0..solver.basis.len()).collect();
    order_idx.sort_by(|&a, &b| order.cmp(&solver.lts[a], &solver.lts[b]));
    for &idx in &order_idx {
        let lt = &solver.lts[idx];
        if !keep.iter().any(|g| mono_divides(&g[0].0, lt)) {
            keep.push(&solver.basis[idx]);
        }
    }
    // tail-reduce each against the others for the unique reduced basis
    let mut reduced: Vec<ITerms> = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<(&ITerms, u64)> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| (*g, mono_mask(&g[0].0)))
            .collect();
        let (mut r, _, _) = reduce_full(keep[i].clone(), &others, order, &mut budget)?;
        normalize(&mut r);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    Ok(reduced.iter().map(to_monic_poly).collect())
}

/// Normal form of `f` modulo the ideal spanned by `basis`, which must be a
/// Groebner basis under `order` for the result to be canonical.
pub fn normal_form(
    f: &Poly,
    basis: &[Poly],
    order: &Order,
    budget: usize,
) -> Result<Poly, Error> {
    let mut budget = Budget::new(budget);
    let owned: Vec<ITerms> = basis
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| to_iterms(p, order))
        .collect();
    let reducers: Vec<(&ITerms, u64)> = owned.iter().map(|t| (t, mono_mask(&t[0].0))).collect();
    let (work, denom) = to_int_terms(f, order);
    let (rem, num, den) = reduce_full(work, &reducers, order, &mut budget)?;
    // the reduction computed (num/den) * NF(denom * f); undo both scalings
    let full_den = num * denom;
    Ok(Poly::from_terms(
        rem.into_iter()
            .map(|(m, c)| (m, Rat::new(c * &den, full_den.clone()))),
    ))
}

/// Whether two generating sets span the same ideal, decided by comparing
/// reduced bases under the same order.
pub fn ideal_equals(
    a: &[Poly],
    b: &[Poly],
    order: &Order,
    budget: usize,
) -> Result<bool, Error> {
    Ok(buchberger(a, order, budget)? == buchberger(b, order, budget)?)
}

/// Generators of the initial ideal of `gens` for a weight vector in the
/// minimum convention: compute a basis under the weight-refined order and
/// take lowest-weight parts.
pub fn initial_ideal(
    gens: &[Poly],
    ring: &Ring,
    weights: &[Rat],
    budget: usize,
) -> Result<Vec<Poly>, Error> {
    let order = Order::weight_refined(ring, weights.to_vec());
    let gb = buchberger(gens, &order, budget)?;
    Ok(gb.iter().map(|g| g.initial_form(weights)).collect())
}

fn divide_out_variable(p: &Poly, v: usize) -> Poly {
    let min = p.terms().map(|(m, _)| m[v]).min().unwrap_or(0);
    if min == 0 {
        return p.clone();
    }
    Poly::from_terms(p.terms().map(|(m, c)| {
        let mut m = m.clone();
        m[v] -= min;
        (m, c.clone())
    }))
}

/// Saturate a homogeneous ideal by the product of all ring variables:
/// repeatedly compute a basis in an order where one variable is cheapest
/// and strip that variable from every element, until nothing changes.
pub fn saturate_by_variables(
    gens: &[Poly],
    ring: &Ring,
    budget: usize,
) -> Result<Vec<Poly>, Error> {
    let mut cur: Vec<Poly> = gens.to_vec();
    loop {
        let mut changed = false;
        for v in 0..ring.nvars() {
            let order = Order::grevlex_cheapest(ring, v);
            let gb = buchberger(&cur, &order, budget)?;
            let divided: Vec<Poly> = gb.iter().map(|g| divide_out_variable(g, v)).collect();
            if divided != gb {
                changed = true;
            }
            cur = divided;
        }
        if !changed {
            return Ok(cur);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    fn ring(n: usize) -> Ring {
        Ring::new((1..=n).map(|col| Var::X { row: 1, col }).collect())
    }

    fn var(i: usize, n: usize) -> Poly {
        Poly::variable(i, n)
    }

    #[test]
    fn katsura_like_small_system() {
        // x^2 - y, x*y - z over grevlex(x > y > z): classic reduced basis
        let r = ring(3);
        let o = Order::grevlex(&r);
        let (x, y, z) = (var(0, 3), var(1, 3), var(2, 3));
        let f = x.mul(&x).sub(&y);
        let g = x.mul(&y).sub(&z);
        let gb = buchberger(&[f.clone(), g.clone()], &o, 100_000).unwrap();
        // membership of the inputs and of y^2 - xz (an s-poly consequence)
        for p in [&f, &g, &y.mul(&y).sub(&x.mul(&z))] {
            assert!(normal_form(p, &gb, &o, 100_000).unwrap().is_zero());
        }
        // x stays outside the ideal
        assert!(!normal_form(&x, &gb, &o, 100_000).unwrap().is_zero());
        // a second run from shuffled, scaled generators gives the same basis
        let gb2 = buchberger(
            &[g.scale(&crate::linalg::rat(7)), f.scale(&crate::linalg::rat(-3))],
            &o,
            100_000,
        )
        .unwrap();
        assert_eq!(gb, gb2);
    }

    #[test]
    fn normal_form_is_linear_in_the_input() {
        // NF of a scaled input is the scaled NF, including nonzero remainders
        let r = ring(3);
        let o = Order::grevlex(&r);
        let (x, y, z) = (var(0, 3), var(1, 3), var(2, 3));
        let gb = buchberger(&[x.mul(&x).sub(&y)], &o, 10_000).unwrap();
        let f = x.mul(&x).mul(&x).add(&z.scale(&crate::linalg::rat(5)));
        let nf = normal_form(&f, &gb, &o, 10_000).unwrap();
        assert_eq!(nf, x.mul(&y).add(&z.scale(&crate::linalg::rat(5))));
        let nf3 = normal_form(&f.scale(&crate::linalg::rat(3)), &gb, &o, 10_000).unwrap();
        assert_eq!(nf3, nf.scale(&crate::linalg::rat(3)));
    }

    #[test]
    fn budget_error_reports_limit() {
        let r = ring(3);
        let o = Order::grevlex(&r);
        let (x, y) = (var(0, 3), var(1, 3));
        let f = x.mul(&x).sub(&y);
        let g = x.mul(&y).sub(&var(2, 3));
        match buchberger(&[f, g], &o, 2) {
            Err(Error::PairBudget { budget }) => assert_eq!(budget, 2),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn ideal_equality_independent_of_presentation() {
        let r = ring(2);
        let o = Order::grevlex(&r);
        let (x, y) = (var(0, 2), var(1, 2));
        let a = vec![x.add(&y), x.sub(&y)];
        let b = vec![x.clone(), y.clone()];
        assert!(ideal_equals(&a, &b, &o, 10_000).unwrap());
        let c = vec![x.clone()];
        assert!(!ideal_equals(&a, &c, &o, 10_000).unwrap());
    }

    #[test]
    fn initial_ideal_of_a_binomial() {
        // x*z - y^2 with weights (0,0,1): lowest weight part is y^2
        let r = ring(3);
        let (x, y, z) = (var(0, 3), var(1, 3), var(2, 3));
        let f = x.mul(&z).sub(&y.mul(&y));
        let init = initial_ideal(
            &[f],
            &r,
            &[crate::linalg::rat(0), crate::linalg::rat(0), crate::linalg::rat(1)],
            10_000,
        )
        .unwrap();
        assert_eq!(init, vec![y.mul(&y).neg().monic(&Order::grevlex(&r))]);
    }

    #[test]
    fn saturation_strips_monomial_factors() {
        // <x*y - x*z> : (xyz)^inf  =  <y - z>
        let r = ring(3);
        let (x, y, z) = (var(0, 3), var(1, 3), var(2, 3));
        let f = x.mul(&y).sub(&x.mul(&z));
        let sat = saturate_by_variables(&[f], &r, 10_000).unwrap();
        let o = Order::grevlex(&r);
        assert!(ideal_equals(&sat, &[y.sub(&z)], &o, 10_000).unwrap());
    }

    #[test]
    fn saturation_of_twisted_cubic_lattice_basis() {
        // lattice basis ideal <ac - b^2, bd - c^2>; saturation also
        // contains ad - bc (the full toric ideal of the twisted cubic)
        let r = ring(4);
        let (a, b, c, d) = (var(0, 4), var(1, 4), var(2, 4), var(3, 4));
        let f = a.mul(&c).sub(&b.mul(&b));
        let g = b.mul(&d).sub(&c.mul(&c));
        let h = a.mul(&d).sub(&b.mul(&c));
        let sat = saturate_by_variables(&[f.clone(), g.clone()], &r, 100_000).unwrap();
        let o = Order::grevlex(&r);
        let gb = buchberger(&sat, &o, 100_000).unwrap();
        assert!(normal_form(&h, &gb, &o, 100_000).unwrap().is_zero());
        assert!(ideal_equals(&sat, &[f, g, h], &o, 100_000).unwrap());
    }
}
