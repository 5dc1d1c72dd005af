//! Toric ideals of integer exponent data and kernels of polynomial maps by
//! elimination. Both return canonical generating sets: the reduced basis
//! under the target ring's graded reverse-lex order.

use super::groebner::{buchberger, saturate_by_variables};
use super::order::Order;
use super::{Mono, Poly, Ring};
use crate::error::Error;
use crate::linalg::{kernel_lattice_basis, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

/// Kernel of the monomial map sending variable i of `ring` to
/// sign[i] * x^columns[i]: binomials from a basis of the exponent kernel
/// lattice, saturated by all variables, then sign-adjusted so the relations
/// hold for the signed monomials. Returns the reduced graded reverse-lex
/// basis.
pub fn toric_ideal(
    ring: &Ring,
    columns: &[Mono],
    signs: &[i8],
    budget: usize,
) -> Result<Vec<Poly>, Error> {
    let nv = ring.nvars();
    assert_eq!(columns.len(), nv);
    assert_eq!(signs.len(), nv);
    if nv == 0 {
        return Ok(Vec::new());
    }
    let coords = columns[0].len();
    // matrix with one row per exponent coordinate, one column per variable
    let mut m = vec![vec![BigInt::from(0); nv]; coords];
    for (j, col) in columns.iter().enumerate() {
        assert_eq!(col.len(), coords);
        for (i, &e) in col.iter().enumerate() {
            m[i][j] = BigInt::from(e);
        }
    }
    let kernel = kernel_lattice_basis(&m);
    let mut gens: Vec<Poly> = Vec::new();
    for v in &kernel.basis {
        let mut plus: Mono = vec![0; nv];
        let mut minus: Mono = vec![0; nv];
        for (j, e) in v.iter().enumerate() {
            if e.is_positive() {
                plus[j] = e.to_u32().expect("kernel exponent fits in u32");
            } else if e.is_negative() {
                minus[j] = (-e).to_u32().expect("kernel exponent fits in u32");
            }
        }
        let mut b = Poly::term(plus, Rat::one());
        b.add_term(minus, -Rat::one());
        if !b.is_zero() {
            gens.push(b);
        }
    }
    let saturated = saturate_by_variables(&gens, ring, budget)?;
    let twisted: Vec<Poly> = saturated
        .iter()
        .map(|g| apply_sign_twist(g, signs))
        .collect();
    buchberger(&twisted, &Order::grevlex(ring), budget)
}

/// Substitute variable i by signs[i] * variable i; an involutive ring
/// automorphism when every sign is +-1.
pub fn apply_sign_twist(p: &Poly, signs: &[i8]) -> Poly {
    Poly::from_terms(p.terms().map(|(m, c)| {
        let mut neg = false;
        for (j, &e) in m.iter().enumerate() {
            if signs[j] < 0 && e % 2 == 1 {
                neg = !neg;
            }
        }
        (m.clone(), if neg { -c.clone() } else { c.clone() })
    }))
}

/// Kernel of the polynomial map target variable i -> images[i], where the
/// images live in a ring of `n_src` variables. Works in the combined ring
/// (source variables first), eliminates them, and returns the target-ring
/// reduced graded reverse-lex basis.
pub fn elimination_kernel(
    source: &Ring,
    target: &Ring,
    images: &[Poly],
    budget: usize,
) -> Result<Vec<Poly>, Error> {
    let n_src = source.nvars();
    let n_tgt = target.nvars();
    assert_eq!(images.len(), n_tgt);
    let mut vars = source.vars.clone();
    vars.extend(target.vars.iter().cloned());
    let combined = Ring::new(vars);
    let nv = combined.nvars();

    let mut gens: Vec<Poly> = Vec::with_capacity(n_tgt);
    for (i, img) in images.iter().enumerate() {
        // target variable minus its image, both widened to the combined ring
        let mut mono = vec![0u32; nv];
        mono[n_src + i] = 1;
        let mut g = Poly::term(mono, Rat::one());
        for (m, c) in img.terms() {
            let mut wide = vec![0u32; nv];
            wide[..n_src].copy_from_slice(m);
            g.add_term(wide, -c.clone());
        }
        gens.push(g);
    }
    let order = Order::elimination(&combined, n_src);
    let gb = buchberger(&gens, &order, budget)?;
    let mut kept: Vec<Poly> = Vec::new();
    for g in &gb {
        if g.terms().all(|(m, _)| m[..n_src].iter().all(|&e| e == 0)) {
            kept.push(Poly::from_terms(
                g.terms().map(|(m, c)| (m[n_src..].to_vec(), c.clone())),
            ));
        }
    }
    buchberger(&kept, &Order::grevlex(target), budget)
}
