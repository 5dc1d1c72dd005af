//! Monomial orders. Every order here compares the positive grading first
//! (so ties under later, possibly non-well-founded keys such as
//! minimum-convention weights are broken inside a single graded piece),
//! except elimination orders, which put the eliminated block first.

use super::Mono;
use super::Ring;
use crate::linalg::Rat;
use std::cmp::Ordering;

/// A monomial order assembled from up to four lexicographically applied
/// keys: an optional elimination block, the ring grading, an optional weight
/// vector compared in the minimum convention (smaller weight is larger in
/// the order), and a reverse-lexicographic tiebreak described by a
/// cheapest-first scan sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Order {
    grading: Vec<u64>,
    weights: Option<Vec<Rat>>,
    /// Eliminate variables [0, split): compare their total degree, then
    /// reverse-lex within the block, before any other key.
    block_split: Option<usize>,
    /// Variable indices from cheapest to most expensive for the final
    /// reverse-lexicographic comparison.
    scan: Vec<usize>,
}

impl Order {
    /// Graded reverse lexicographic with x_(1,1) > x_(1,2) > ... ;
    /// the ring's listing order is the variable precedence.
    pub fn grevlex(ring: &Ring) -> Order {
        Order {
            grading: ring.grading.clone(),
            weights: None,
            block_split: None,
            scan: (0..ring.nvars()).rev().collect(),
        }
    }

    /// Grading, then weights in minimum convention, then grevlex.
    pub fn weight_refined(ring: &Ring, weights: Vec<Rat>) -> Order {
        assert_eq!(weights.len(), ring.nvars());
        Order {
            grading: ring.grading.clone(),
            weights: Some(weights),
            block_split: None,
            scan: (0..ring.nvars()).rev().collect(),
        }
    }

    /// Elimination order for the first `split` variables: any monomial that
    /// involves an eliminated variable is larger than any monomial that does
    /// not, so an ideal's reduced basis intersected with the remaining
    /// variables generates the elimination ideal.
    pub fn elimination(ring: &Ring, split: usize) -> Order {
        assert!(split <= ring.nvars());
        Order {
            grading: ring.grading.clone(),
            weights: None,
            block_split: Some(split),
            scan: (0..ring.nvars()).rev().collect(),
        }
    }

    /// Graded reverse lex with variable `cheapest` treated as the cheapest;
    /// used for saturating homogeneous ideals by one variable.
    pub fn grevlex_cheapest(ring: &Ring, cheapest: usize) -> Order {
        let mut scan = vec![cheapest];
        scan.extend((0..ring.nvars()).rev().filter(|&i| i != cheapest));
        Order {
            grading: ring.grading.clone(),
            weights: None,
            block_split: None,
            scan,
        }
    }

    /// Key for the solver's pair queue: eliminated-block degree first (zero
    /// when the order has no block), then the graded degree. Only a selection
    /// heuristic; term comparison stays with `cmp`.
    pub(crate) fn selection_key(&self, m: &Mono) -> (u64, u64) {
        let block = match self.block_split {
            Some(split) => m[..split].iter().map(|&e| e as u64).sum(),
            None => 0,
        };
        (block, graded_degree(m, &self.grading))
    }

    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        if let Some(split) = self.block_split {
            let da: u64 = a[..split].iter().map(|&e| e as u64).sum();
            let db: u64 = b[..split].iter().map(|&e| e as u64).sum();
            match da.cmp(&db) {
                Ordering::Equal => {}
                other => return other,
            }
            // reverse lex within the block, cheapest (last block var) first
            for i in (0..split).rev() {
                match a[i].cmp(&b[i]) {
                    Ordering::Equal => {}
                    // smaller exponent in a cheap variable means larger monomial
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
            }
        }
        let da = graded_degree(a, &self.grading);
        let db = graded_degree(b, &self.grading);
        match da.cmp(&db) {
            Ordering::Equal => {}
            other => return other,
        }
        if let Some(w) = &self.weights {
            let wa = super::weight_of(a, w);
            let wb = super::weight_of(b, w);
            // minimum convention: lower weight is the larger monomial
            match wa.cmp(&wb) {
                Ordering::Equal => {}
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        for &i in &self.scan {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => {}
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

fn graded_degree(m: &Mono, grading: &[u64]) -> u64 {
    m.iter()
        .zip(grading)
        .map(|(&e, &g)| e as u64 * g)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::poly::Var;

    fn ring(n: usize) -> Ring {
        Ring::new((1..=n).map(|col| Var::X { row: 1, col }).collect())
    }

    fn m(v: &[u32]) -> Mono {
        v.to_vec()
    }

    #[test]
    fn grevlex_textbook_cases() {
        let r = ring(3);
        let o = Order::grevlex(&r);
        // degree decides first
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[1, 0, 0])), Ordering::Greater);
        // x*z vs y^2: equal degree, last nonzero of difference (1,-2,1) is
        // positive -> x*z smaller
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        // x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn cheapest_variable_moves_to_back() {
        let r = ring(3);
        let o = Order::grevlex_cheapest(&r, 0);
        // degree ties: the monomial with the smaller exponent in the
        // cheapest variable (x, index 0) wins
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[1, 0, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[1, 0, 0])), Ordering::Greater);
        // among the two x-free monomials, default relative order remains
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn elimination_block_dominates_degree() {
        let r = ring(3);
        let o = Order::elimination(&r, 1);
        // x beats y^5 even though the total degree is smaller
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 0])), Ordering::Greater);
        // within the x-free part, graded revlex
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn weight_minimum_convention() {
        let r = ring(2);
        let o = Order::weight_refined(&r, vec![rat(5), rat(1)]);
        // equal degree: y (weight 1) beats x (weight 5) in min convention
        assert_eq!(o.cmp(&m(&[0, 1]), &m(&[1, 0])), Ordering::Greater);
        // grading still dominates: x^2 beats y
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn total_order_properties() {
        let r = ring(3);
        let orders = [
            Order::grevlex(&r),
            Order::grevlex_cheapest(&r, 1),
            Order::elimination(&r, 2),
            Order::weight_refined(&r, vec![rat(1), rat(1), rat(3)]),
        ];
        let monos: Vec<Mono> = (0..3u32)
            .flat_map(|a| (0..3u32).flat_map(move |b| (0..3u32).map(move |c| vec![a, b, c])))
            .collect();
        for o in &orders {
            let one = vec![0, 0, 0];
            for x in &monos {
                // 1 is the minimum
                if *x != one {
                    assert_eq!(o.cmp(x, &one), Ordering::Greater);
                }
                for y in &monos {
                    let c = o.cmp(x, y);
                    assert_eq!(c, o.cmp(y, x).reverse());
                    if x != y {
                        assert_ne!(c, Ordering::Equal, "{x:?} vs {y:?}");
                    }
                    // multiplicative: shifting both by z preserves comparison
                    let z = vec![1, 2, 1];
                    let xs: Mono = x.iter().zip(&z).map(|(p, q)| p + q).collect();
                    let ys: Mono = y.iter().zip(&z).map(|(p, q)| p + q).collect();
                    assert_eq!(o.cmp(&xs, &ys), c);
                }
            }
        }
    }
}
