//! Exact two-phase simplex over an ordered field.
//!
//! Variables are free (unrestricted sign); internally each is split into a
//! nonnegative pair.  Bland's rule everywhere, so the method terminates on
//! exact scalars.  This is a cross-check tool: the production paths in this
//! crate use closed forms or double description, and tests use this solver as
//! the independent route.

use crate::linalg::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<S> {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<S>, value: S },
}

/// Maximize `objective · x` subject to `a·x ≤ b` for `(a, b)` in `ineqs` and
/// `a·x = b` for `(a, b)` in `eqs`.
pub fn maximize<S: Scalar>(
    objective: &[S],
    ineqs: &[(Vec<S>, S)],
    eqs: &[(Vec<S>, S)],
) -> LpOutcome<S> {
    Problem::new(objective.len(), ineqs, eqs).maximize(objective)
}

/// A feasible point of `{a·x ≤ b} ∩ {a·x = b}`, if one exists.
pub fn feasible_point<S: Scalar>(ineqs: &[(Vec<S>, S)], eqs: &[(Vec<S>, S)]) -> Option<Vec<S>> {
    let n = ineqs
        .first()
        .map(|(a, _)| a.len())
        .or_else(|| eqs.first().map(|(a, _)| a.len()))?;
    match Problem::new(n, ineqs, eqs).maximize(&vec![S::zero(); n]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

struct Problem<S> {
    n_free: usize,
    n_slack: usize,
    rows: Vec<Vec<S>>, // coefficient rows over split + slack vars, rhs ≥ 0 separate
    rhs: Vec<S>,
}

impl<S: Scalar> Problem<S> {
    fn new(n_free: usize, ineqs: &[(Vec<S>, S)], eqs: &[(Vec<S>, S)]) -> Self {
        let n_slack = ineqs.len();
        let width = 2 * n_free + n_slack;
        let mut rows = Vec::with_capacity(ineqs.len() + eqs.len());
        let mut rhs = Vec::with_capacity(rows.capacity());
        for (k, (a, b)) in ineqs.iter().chain(eqs.iter()).enumerate() {
            debug_assert_eq!(a.len(), n_free);
            let slack = (k < ineqs.len()).then_some(2 * n_free + k);
            let negate = b < &S::zero();
            let mut row = vec![S::zero(); width];
            for (j, v) in a.iter().enumerate() {
                let v = if negate { -v.clone() } else { v.clone() };
                row[j] = v.clone();
                row[n_free + j] = -v;
            }
            if let Some(s) = slack {
                row[s] = if negate { -S::one() } else { S::one() };
            }
            rows.push(row);
            rhs.push(if negate { -b.clone() } else { b.clone() });
        }
        Problem {
            n_free,
            n_slack,
            rows,
            rhs,
        }
    }

    fn maximize(mut self, objective: &[S]) -> LpOutcome<S> {
        let m = self.rows.len();
        let width = 2 * self.n_free + self.n_slack;
        // Append one artificial variable per row; they start basic.
        for (i, row) in self.rows.iter_mut().enumerate() {
            for k in 0..m {
                row.push(if k == i { S::one() } else { S::zero() });
            }
        }
        let mut basis: Vec<usize> = (width..width + m).collect();

        // Phase 1: minimize the sum of artificials.
        let mut cost = vec![S::zero(); width + m];
        for j in width..width + m {
            cost[j] = S::one();
        }
        let mut cost_rhs = S::zero();
        for i in 0..m {
            // Reduce the cost row against the basic artificials.
            for j in 0..width + m {
                cost[j] = cost[j].clone() - self.rows[i][j].clone();
            }
            cost_rhs = cost_rhs - self.rhs[i].clone();
        }
        if self.pivot_loop(&mut cost, &mut cost_rhs, &mut basis).is_none() {
            // Phase 1 is bounded below by 0, so this cannot happen.
            unreachable!("phase 1 unbounded");
        }
        if !cost_rhs.is_zero() {
            return LpOutcome::Infeasible;
        }
        // Pivot basic artificials out; a row where this is impossible is a
        // redundant constraint and can stay (its artificial is zero).
        for i in 0..m {
            if basis[i] >= width {
                if let Some(j) = (0..width).find(|&j| !self.rows[i][j].is_zero()) {
                    self.pivot(i, j, &mut vec![S::zero(); width + m], &mut S::zero());
                    basis[i] = j;
                }
            }
        }

        // Phase 2: maximize the objective = minimize its negation.
        let mut cost = vec![S::zero(); width + m];
        for j in 0..self.n_free {
            cost[j] = -objective[j].clone();
            cost[self.n_free + j] = objective[j].clone();
        }
        for j in width..width + m {
            cost[j] = S::one(); // keep artificials priced out
        }
        let mut cost_rhs = S::zero();
        for (i, &b) in basis.iter().enumerate() {
            if !cost[b].is_zero() {
                let f = cost[b].clone();
                for j in 0..width + m {
                    cost[j] = cost[j].clone() - f.clone() * self.rows[i][j].clone();
                }
                cost_rhs = cost_rhs - f * self.rhs[i].clone();
            }
        }
        if self.pivot_loop(&mut cost, &mut cost_rhs, &mut basis).is_none() {
            return LpOutcome::Unbounded;
        }

        let mut x = vec![S::zero(); self.n_free];
        for (i, &b) in basis.iter().enumerate() {
            if b < self.n_free {
                x[b] = x[b].clone() + self.rhs[i].clone();
            } else if b < 2 * self.n_free {
                let j = b - self.n_free;
                x[j] = x[j].clone() - self.rhs[i].clone();
            }
        }
        // The reduced cost row tracks the negated minimization value, and the
        // minimization form is the negated objective: value = cost_rhs.
        LpOutcome::Optimal { x, value: cost_rhs }
    }

    /// Bland-rule pivoting until optimal (`Some`) or unbounded (`None`).
    fn pivot_loop(
        &mut self,
        cost: &mut Vec<S>,
        cost_rhs: &mut S,
        basis: &mut [usize],
    ) -> Option<()> {
        loop {
            let Some(enter) = cost.iter().position(|c| c < &S::zero()) else {
                return Some(());
            };
            let mut leave: Option<usize> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][enter] > S::zero() {
                    let better = match leave {
                        None => true,
                        Some(l) => {
                            let lhs = self.rhs[i].clone() * self.rows[l][enter].clone();
                            let rhs = self.rhs[l].clone() * self.rows[i][enter].clone();
                            lhs < rhs || (lhs == rhs && basis[i] < basis[l])
                        }
                    };
                    if better {
                        leave = Some(i);
                    }
                }
            }
            let leave = leave?;
            self.pivot(leave, enter, cost, cost_rhs);
            basis[leave] = enter;
        }
    }

    fn pivot(&mut self, row: usize, col: usize, cost: &mut [S], cost_rhs: &mut S) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v = v.clone() / p.clone();
        }
        self.rhs[row] = self.rhs[row].clone() / p;
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for j in 0..self.rows[i].len() {
                let delta = f.clone() * self.rows[row][j].clone();
                self.rows[i][j] = self.rows[i][j].clone() - delta;
            }
            self.rhs[i] = self.rhs[i].clone() - f * self.rhs[row].clone();
        }
        if !cost[col].is_zero() {
            let f = cost[col].clone();
            for j in 0..cost.len() {
                let delta = f.clone() * self.rows[row][j].clone();
                cost[j] = cost[j].clone() - delta;
            }
            *cost_rhs = cost_rhs.clone() - f * self.rhs[row].clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }
    fn qv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn simple_polytope_max() {
        // max x + y over the triangle x,y ≥ 0 (as -x ≤ 0), x + 2y ≤ 4, 2x + y ≤ 4.
        let ineqs = vec![
            (qv(&[-1, 0]), q(0)),
            (qv(&[0, -1]), q(0)),
            (qv(&[1, 2]), q(4)),
            (qv(&[2, 1]), q(4)),
        ];
        match maximize(&qv(&[1, 1]), &ineqs, &[]) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, Rat::new(8.into(), 3.into()));
                assert_eq!(x, vec![Rat::new(4.into(), 3.into()); 2]);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn detects_unbounded_and_infeasible() {
        let unb = maximize(&qv(&[1]), &[(qv(&[-1]), q(0))], &[]);
        assert!(matches!(unb, LpOutcome::Unbounded));
        let inf = maximize(
            &qv(&[0]),
            &[(qv(&[1]), q(-1)), (qv(&[-1]), q(-1))],
            &[],
        );
        assert!(matches!(inf, LpOutcome::Infeasible));
    }

    #[test]
    fn equality_constraints() {
        // max y with x + y = 1, y ≤ 3, x ≥ -1.
        let out = maximize(
            &qv(&[0, 1]),
            &[(qv(&[0, 1]), q(3)), (qv(&[-1, 0]), q(1))],
            &[(qv(&[1, 1]), q(1))],
        );
        match out {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, q(2));
                assert_eq!(x, qv(&[-1, 2]));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn feasibility_probe() {
        assert!(feasible_point(&[(qv(&[1]), q(5)), (qv(&[-1]), q(-3))], &[]).is_some());
        assert!(feasible_point(&[(qv(&[1]), q(2)), (qv(&[-1]), q(-3))], &[]).is_none());
    }
}
