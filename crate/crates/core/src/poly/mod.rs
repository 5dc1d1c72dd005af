//! Sparse multivariate polynomials over the rationals, with the monomial
//! orders and Groebner machinery used for Pluecker algebra: weight-refined
//! orders in the minimum convention, block elimination, binomial saturation,
//! and toric ideals of integer kernels.

pub mod groebner;
pub mod order;
pub mod toric;

use crate::linalg::Rat;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub use groebner::{buchberger, ideal_equals, initial_ideal, normal_form, saturate_by_variables};
pub use order::Order;
pub use toric::{elimination_kernel, toric_ideal};

/// Exponent vector; one entry per ring variable.
pub type Mono = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    /// Matrix entry x_(row, col), 1-based for display.
    X { row: usize, col: usize },
    /// Pluecker coordinate p_(subset).
    P { subset: Vec<usize> },
}

impl Var {
    pub fn name(&self) -> String {
        match self {
            Var::X { row, col } => format!("x_({row},{col})"),
            Var::P { subset } => {
                let parts: Vec<String> = subset.iter().map(|e| e.to_string()).collect();
                format!("p_({})", parts.join(","))
            }
        }
    }
}

/// A polynomial ring: an ordered list of variables together with a positive
/// grading (x-variables have degree 1, p-variables the size of their subset).
/// All ideals handled here are homogeneous for this grading, which is what
/// makes minimum-convention weight orders safe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    pub vars: Vec<Var>,
    pub grading: Vec<u64>,
}

impl Ring {
    pub fn new(vars: Vec<Var>) -> Self {
        let grading = vars
            .iter()
            .map(|v| match v {
                Var::X { .. } => 1,
                Var::P { subset } => subset.len() as u64,
            })
            .collect();
        Ring { vars, grading }
    }

    /// Ring with an explicit positive grading (every degree >= 1).
    pub fn with_grading(vars: Vec<Var>, grading: Vec<u64>) -> Self {
        assert_eq!(vars.len(), grading.len());
        assert!(grading.iter().all(|&g| g >= 1));
        Ring { vars, grading }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn degree(&self, m: &Mono) -> u64 {
        m.iter()
            .zip(&self.grading)
            .map(|(&e, &g)| e as u64 * g)
            .sum()
    }
}

/// Sparse polynomial; the map keys give a canonical, order-independent
/// storage so equality means mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(mono: Mono, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Poly { terms }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::term(vec![0; nvars], Rat::one())
    }

    pub fn variable(index: usize, nvars: usize) -> Self {
        let mut mono = vec![0; nvars];
        mono[index] = 1;
        Poly::term(mono, Rat::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, Rat)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, mono: Mono, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, f: &Rat) -> Poly {
        if f.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * f))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let nvars = self.terms.keys().next().map_or(0, |m| m.len());
        let mut out = Poly::term(vec![0; nvars], Rat::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Leading (monomial, coefficient) under the given order.
    pub fn leading<'a>(&'a self, order: &Order) -> Option<(&'a Mono, &'a Rat)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    /// Divide by the leading coefficient under the order.
    pub fn monic(&self, order: &Order) -> Poly {
        match self.leading(order) {
            None => Poly::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Sum of the terms of minimal weight (minimum convention initial form).
    pub fn initial_form(&self, weights: &[Rat]) -> Poly {
        let mut best: Option<Rat> = None;
        for m in self.terms.keys() {
            let w = weight_of(m, weights);
            if best.as_ref().map_or(true, |b| w < *b) {
                best = Some(w);
            }
        }
        let Some(min) = best else {
            return Poly::zero();
        };
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| weight_of(m, weights) == min)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitute `images[i]` for variable i; the images live in another ring.
    pub fn evaluate(&self, images: &[Poly], target_nvars: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut prod = Poly::term(vec![0; target_nvars], c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(&images[i].pow(e));
                }
            }
            out = out.add(&prod);
        }
        out
    }

    /// Total degree in the plain (all-ones) sense.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Render with terms in decreasing order under `order`, matching the
    /// usual computer-algebra listing style (juxtaposed variables, ^ powers).
    pub fn render(&self, ring: &Ring, order: &Order) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut monos: Vec<(&Mono, &Rat)> = self.terms.iter().collect();
        monos.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        let mut out = String::new();
        for (i, (m, c)) in monos.iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -(*c).clone() } else { (*c).clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            let mono_str = render_mono(m, ring);
            if abs.is_one() && !mono_str.is_empty() {
                out.push_str(&mono_str);
            } else if mono_str.is_empty() {
                let _ = write!(out, "{abs}");
            } else {
                let _ = write!(out, "{abs}{mono_str}");
            }
        }
        out
    }
}

fn render_mono(m: &Mono, ring: &Ring) -> String {
    let mut out = String::new();
    for (i, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        out.push_str(&ring.vars[i].name());
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
    out
}

/// An ideal: generators plus a cache of reduced bases, one per order.
/// First writer wins on the cache; the value is the same either way because
/// reduced bases are unique.
#[derive(Debug)]
pub struct Ideal {
    pub ring: Ring,
    pub gens: Vec<Poly>,
    cache: std::sync::Mutex<std::collections::HashMap<Order, Vec<Poly>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: std::sync::Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl Ideal {
    pub fn new(ring: Ring, gens: Vec<Poly>) -> Self {
        Ideal {
            ring,
            gens,
            cache: std::sync::Mutex::new(std::collections::HashMap::new()),
        }
    }

    /// Reduced basis under `order`, computed once per order and cached.
    pub fn groebner(&self, order: &Order, budget: usize) -> Result<Vec<Poly>, crate::error::Error> {
        if let Some(gb) = self.cache.lock().unwrap().get(order) {
            return Ok(gb.clone());
        }
        let gb = groebner::buchberger(&self.gens, order, budget)?;
        self.cache
            .lock()
            .unwrap()
            .entry(order.clone())
            .or_insert_with(|| gb.clone());
        Ok(gb)
    }

    pub fn contains(
        &self,
        f: &Poly,
        order: &Order,
        budget: usize,
    ) -> Result<bool, crate::error::Error> {
        let gb = self.groebner(order, budget)?;
        Ok(groebner::normal_form(f, &gb, order, budget)?.is_zero())
    }

    pub fn equals(
        &self,
        other: &Ideal,
        order: &Order,
        budget: usize,
    ) -> Result<bool, crate::error::Error> {
        Ok(self.groebner(order, budget)? == other.groebner(order, budget)?)
    }
}

pub fn weight_of(m: &Mono, weights: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (i, &e) in m.iter().enumerate() {
        if e > 0 {
            acc += &weights[i] * Rat::from(num_bigint::BigInt::from(e));
        }
    }
    acc
}

pub fn mono_divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_lcm(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_div(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mono_is_coprime(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}
