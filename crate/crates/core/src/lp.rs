//! Exact linear programming over the rationals: a two-phase primal simplex
//! with Bland's rule (so no cycling, ever). Variables are free; internally
//! each is split into a difference of nonnegative parts.

use crate::linalg::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint {
            coeffs,
            rel: Rel::Le,
            rhs,
        }
    }
    pub fn eq(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint {
            coeffs,
            rel: Rel::Eq,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    /// Maximum attained; `point` is one optimal solution.
    Optimal { point: Vec<Rat>, value: Rat },
    /// Objective unbounded above; `ray` is a feasible direction with
    /// positive objective growth.
    Unbounded { ray: Vec<Rat> },
    Infeasible,
}

/// Maximize `objective . x` over all real x satisfying the constraints.
pub fn solve_lp(objective: &[Rat], constraints: &[Constraint]) -> LpResult {
    let n = objective.len();
    for c in constraints {
        assert_eq!(c.coeffs.len(), n, "constraint arity mismatch");
    }
    let m = constraints.len();

    // Split x = y - z with y, z >= 0, add one slack per inequality, then one
    // artificial per row that lacks an identity column after sign-fixing.
    let n_split = 2 * n;
    let n_slack = constraints.iter().filter(|c| c.rel == Rel::Le).count();
    let total = n_split + n_slack + m; // artificials allocated per row, some unused

    // tableau rows: [coeffs | rhs], basis[i] = index of basic var of row i
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut artificials: Vec<usize> = Vec::new();
    let mut slack_idx = 0;

    for (i, c) in constraints.iter().enumerate() {
        let mut row = vec![Rat::zero(); total + 1];
        let flip = c.rhs.is_negative();
        let sgn = if flip { -Rat::one() } else { Rat::one() };
        for j in 0..n {
            let v = &sgn * &c.coeffs[j];
            row[j] = v.clone();
            row[n + j] = -v;
        }
        row[total] = &sgn * &c.rhs;
        match c.rel {
            Rel::Le => {
                let s = n_split + slack_idx;
                slack_idx += 1;
                row[s] = sgn.clone();
                if !flip {
                    basis.push(s);
                } else {
                    // slack entered with coefficient -1; need an artificial
                    let a = n_split + n_slack + i;
                    row[a] = Rat::one();
                    artificials.push(a);
                    basis.push(a);
                }
            }
            Rel::Eq => {
                let a = n_split + n_slack + i;
                row[a] = Rat::one();
                artificials.push(a);
                basis.push(a);
            }
        }
        tab.push(row);
    }

    // Phase 1: minimize the sum of artificials (maximize its negation).
    if !artificials.is_empty() {
        let mut phase1 = vec![Rat::zero(); total];
        for &a in &artificials {
            phase1[a] = -Rat::one();
        }
        let status = simplex(&mut tab, &mut basis, &phase1, total);
        debug_assert!(status.is_none(), "phase-1 objective is bounded");
        let obj_val = phase1_value(&tab, &basis, &phase1, total);
        if !obj_val.is_zero() {
            return LpResult::Infeasible;
        }
        // pivot remaining artificials out of the basis where possible;
        // rows where that fails are redundant and can be neutralised
        for i in 0..m {
            if artificials.contains(&basis[i]) {
                if let Some(j) = (0..n_split + n_slack).find(|&j| !tab[i][j].is_zero()) {
                    pivot(&mut tab, &mut basis, i, j, total);
                }
            }
        }
    }

    // forbid artificials from ever re-entering
    let blocked: Vec<bool> = {
        let mut b = vec![false; total];
        for &a in &artificials {
            b[a] = true;
        }
        b
    };

    // Phase 2
    let mut obj = vec![Rat::zero(); total];
    for j in 0..n {
        obj[j] = objective[j].clone();
        obj[n + j] = -objective[j].clone();
    }
    if let Some(ray) = simplex_blocked(&mut tab, &mut basis, &obj, total, &blocked) {
        let ray_x: Vec<Rat> = (0..n).map(|j| &ray[j] - &ray[n + j]).collect();
        return LpResult::Unbounded { ray: ray_x };
    }

    let mut full = vec![Rat::zero(); total];
    for i in 0..m {
        full[basis[i]] = tab[i][total].clone();
    }
    let point: Vec<Rat> = (0..n).map(|j| &full[j] - &full[n + j]).collect();
    let mut value = Rat::zero();
    for j in 0..n {
        value += &objective[j] * &point[j];
    }
    LpResult::Optimal { point, value }
}

fn phase1_value(tab: &[Vec<Rat>], basis: &[usize], obj: &[Rat], total: usize) -> Rat {
    let mut v = Rat::zero();
    for (i, &b) in basis.iter().enumerate() {
        if !obj[b].is_zero() {
            v += &obj[b] * &tab[i][total];
        }
    }
    v
}

fn simplex(tab: &mut [Vec<Rat>], basis: &mut [usize], obj: &[Rat], total: usize) -> Option<Vec<Rat>> {
    simplex_blocked(tab, basis, obj, total, &vec![false; total])
}

/// Primal simplex with Bland's rule. Returns None at optimality; Some(ray)
/// in the full split-variable space if unbounded.
fn simplex_blocked(
    tab: &mut [Vec<Rat>],
    basis: &mut [usize],
    obj: &[Rat],
    total: usize,
    blocked: &[bool],
) -> Option<Vec<Rat>> {
    let m = tab.len();
    loop {
        // reduced costs: c_j - c_B . B^{-1} A_j, computed row-wise
        let mut entering = None;
        for j in 0..total {
            if blocked[j] || basis.contains(&j) {
                continue;
            }
            let mut rc = obj[j].clone();
            for i in 0..m {
                if !obj[basis[i]].is_zero() && !tab[i][j].is_zero() {
                    rc -= &obj[basis[i]] * &tab[i][j];
                }
            }
            if rc.is_positive() {
                entering = Some(j); // Bland: smallest improving index
                break;
            }
        }
        let Some(e) = entering else {
            return None;
        };
        // ratio test, ties broken by smallest basic variable index (Bland)
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if tab[i][e].is_positive() {
                let ratio = &tab[i][total] / &tab[i][e];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        match leave {
            Some((row, _)) => pivot(tab, basis, row, e, total),
            None => {
                // unbounded: ray = e_e - sum over basic rows of column e
                let mut ray = vec![Rat::zero(); total];
                ray[e] = Rat::one();
                for i in 0..m {
                    if !tab[i][e].is_zero() {
                        ray[basis[i]] = -tab[i][e].clone();
                    }
                }
                return Some(ray);
            }
        }
    }
}

fn pivot(tab: &mut [Vec<Rat>], basis: &mut [usize], row: usize, col: usize, total: usize) {
    let inv = tab[row][col].recip();
    for j in 0..=total {
        if !tab[row][j].is_zero() {
            tab[row][j] = &tab[row][j] * &inv;
        }
    }
    for i in 0..tab.len() {
        if i != row && !tab[i][col].is_zero() {
            let f = tab[i][col].clone();
            for j in 0..=total {
                if !tab[row][j].is_zero() {
                    let v = &tab[i][j] - &f * &tab[row][j];
                    tab[i][j] = v;
                }
            }
        }
    }
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn bounded_box() {
        // max x + y, x <= 3, y <= 4
        let r = solve_lp(
            &[rat(1), rat(1)],
            &[
                Constraint::le(vec![rat(1), rat(0)], rat(3)),
                Constraint::le(vec![rat(0), rat(1)], rat(4)),
            ],
        );
        match r {
            LpResult::Optimal { point, value } => {
                assert_eq!(value, rat(7));
                assert_eq!(point, vec![rat(3), rat(4)]);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_pair() {
        // max 0 s.t. x <= -1, -x <= 0
        let r = solve_lp(
            &[rat(0)],
            &[
                Constraint::le(vec![rat(1)], rat(-1)),
                Constraint::le(vec![rat(-1)], rat(0)),
            ],
        );
        assert_eq!(r, LpResult::Infeasible);
    }

    #[test]
    fn unbounded_gives_improving_ray() {
        // max x with only x >= 1 (i.e. -x <= -1)
        let r = solve_lp(&[rat(1)], &[Constraint::le(vec![rat(-1)], rat(-1))]);
        match r {
            LpResult::Unbounded { ray } => {
                assert!(ray[0].is_positive());
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn equality_and_negative_coordinates() {
        // max -x - y s.t. x + y = -2 -> optimum 2 at e.g. x+y=-2
        let r = solve_lp(
            &[rat(-1), rat(-1)],
            &[Constraint::eq(vec![rat(1), rat(1)], rat(-2))],
        );
        match r {
            LpResult::Optimal { point, value } => {
                assert_eq!(value, rat(2));
                assert_eq!(&point[0] + &point[1], rat(-2));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn optimum_survives_being_pinned() {
        // re-solving with the optimum pinned as an equality keeps the value
        let obj = [rat(2), rat(3)];
        let cons = vec![
            Constraint::le(vec![rat(1), rat(2)], rat(14)),
            Constraint::le(vec![rat(3), rat(-1)], rat(0)),
            Constraint::le(vec![rat(1), rat(-1)], rat(2)),
        ];
        let LpResult::Optimal { value, .. } = solve_lp(&obj, &cons) else {
            panic!("expected optimal");
        };
        let mut pinned = cons.clone();
        pinned.push(Constraint::eq(obj.to_vec(), value.clone()));
        let LpResult::Optimal { value: v2, .. } = solve_lp(&obj, &pinned) else {
            panic!("expected optimal after pinning");
        };
        assert_eq!(value, v2);
    }

    #[test]
    fn degenerate_cycling_guard() {
        // classic Beale-style degenerate instance; Bland must terminate
        let r = solve_lp(
            &[Rat::new(3.into(), 4.into()), rat(-150), Rat::new(1.into(), 50.into()), rat(-6)],
            &[
                Constraint::le(
                    vec![Rat::new(1.into(), 4.into()), rat(-60), Rat::new((-1).into(), 25.into()), rat(9)],
                    rat(0),
                ),
                Constraint::le(
                    vec![Rat::new(1.into(), 2.into()), rat(-90), Rat::new((-1).into(), 50.into()), rat(3)],
                    rat(0),
                ),
                Constraint::le(vec![rat(0), rat(0), rat(1), rat(0)], rat(1)),
                // keep the free-variable split bounded
                Constraint::le(vec![rat(-1), rat(0), rat(0), rat(0)], rat(0)),
                Constraint::le(vec![rat(0), rat(-1), rat(0), rat(0)], rat(0)),
                Constraint::le(vec![rat(0), rat(0), rat(-1), rat(0)], rat(0)),
                Constraint::le(vec![rat(0), rat(0), rat(0), rat(-1)], rat(0)),
            ],
        );
        match r {
            LpResult::Optimal { value, .. } => {
                assert_eq!(value, Rat::new(1.into(), 20.into()));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }
}
