use std::cmp::Ordering;

use super::{dot, DualCertificate, LpError, LpOutcome, LpProblem, LpScalar, ITERATION_CAP};

/// Where an original variable lives in the standard-form column space.
#[derive(Debug, Clone, Copy)]
struct VarColumns {
    pos: usize,
    neg: Option<usize>,
}

/// Dense tableau in canonical form with respect to `basis`.
///
/// Column layout: structural columns (split free variables), one slack per
/// inequality, one artificial per row.
struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    reduced: Vec<T>,
    value: T,
    basis: Vec<usize>,
    first_artificial: usize,
    tol: f64,
    pivots: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded(usize),
}

impl<T: LpScalar> Tableau<T> {
    fn num_cols(&self) -> usize {
        self.reduced.len()
    }

    fn pivot(&mut self, row: usize, col: usize) -> Result<(), LpError> {
        self.pivots += 1;
        if self.pivots > ITERATION_CAP {
            return Err(LpError::IterationCap(ITERATION_CAP));
        }
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v = v.clone() / p.clone();
        }
        self.rhs[row] = self.rhs[row].clone() / p;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let f = self.rows[i][col].clone();
            if f.is_zero() {
                continue;
            }
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
            self.rows[i][col] = T::zero();
            self.rhs[i] = self.rhs[i].clone() - f * pivot_rhs.clone();
        }
        let f = self.reduced[col].clone();
        if !f.is_zero() {
            for (v, pv) in self.reduced.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
            self.reduced[col] = T::zero();
            self.value = self.value.clone() + f * pivot_rhs;
        }
        self.basis[row] = col;
        Ok(())
    }

    /// Recompute reduced costs and value for `costs` from the current basis.
    fn price(&mut self, costs: &[T]) {
        let mut reduced = costs.to_vec();
        let mut value = T::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = costs[b].clone();
            if cb.is_zero() {
                continue;
            }
            for (r, a) in reduced.iter_mut().zip(&self.rows[i]) {
                *r = r.clone() - cb.clone() * a.clone();
            }
            value = value + cb * self.rhs[i].clone();
        }
        for &b in &self.basis {
            reduced[b] = T::zero();
        }
        self.reduced = reduced;
        self.value = value;
    }

    /// Bland's rule: lowest-index improving column, lowest-index basic
    /// variable among ratio ties.
    fn run(&mut self, allow_artificial: bool) -> Result<PhaseEnd, LpError> {
        loop {
            let limit = if allow_artificial { self.num_cols() } else { self.first_artificial };
            let entering = (0..limit).find(|&j| self.reduced[j].sign_tol(self.tol) == Ordering::Less);
            let Some(col) = entering else {
                return Ok(PhaseEnd::Optimal);
            };
            let mut leaving: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if a.sign_tol(self.tol) != Ordering::Greater {
                    continue;
                }
                let ratio = self.rhs[i].clone() / a.clone();
                leaving = match leaving {
                    None => Some((i, ratio)),
                    Some((best, best_ratio)) => {
                        match (ratio.clone() - best_ratio.clone()).sign_tol(self.tol) {
                            Ordering::Less => Some((i, ratio)),
                            Ordering::Equal if self.basis[i] < self.basis[best] => Some((i, ratio)),
                            _ => Some((best, best_ratio)),
                        }
                    }
                };
            }
            match leaving {
                None => return Ok(PhaseEnd::Unbounded(col)),
                Some((row, _)) => self.pivot(row, col)?,
            }
        }
    }
}

/// Solve `problem` with the two-phase simplex method.
///
/// `tolerance` is the zero threshold for floating point pivots; exact scalar
/// types ignore it but it must still be positive.
pub fn solve_lp<T: LpScalar>(problem: &LpProblem<T>, tolerance: f64) -> Result<LpOutcome<T>, LpError> {
    problem.validate()?;
    if !(tolerance > 0.0) {
        return Err(LpError::Tolerance(tolerance));
    }

    let n = problem.num_vars();
    let mut var_cols = Vec::with_capacity(n);
    let mut next = 0;
    for &nonneg in &problem.nonnegative {
        if nonneg {
            var_cols.push(VarColumns { pos: next, neg: None });
            next += 1;
        } else {
            var_cols.push(VarColumns { pos: next, neg: Some(next + 1) });
            next += 2;
        }
    }
    let n_struct = next;
    let n_ineq = problem.inequalities.len();
    let n_rows = n_ineq + problem.equalities.len();
    let first_artificial = n_struct + n_ineq;
    let n_cols = first_artificial + n_rows;

    let mut rows = Vec::with_capacity(n_rows);
    let mut rhs = Vec::with_capacity(n_rows);
    let mut row_sign = Vec::with_capacity(n_rows);
    let all_rows = problem.inequalities.iter().chain(&problem.equalities);
    for (i, c) in all_rows.enumerate() {
        let mut row = vec![T::zero(); n_cols];
        for (j, a) in c.normal.iter().enumerate() {
            row[var_cols[j].pos] = a.clone();
            if let Some(neg) = var_cols[j].neg {
                row[neg] = -a.clone();
            }
        }
        if i < n_ineq {
            row[n_struct + i] = -T::one();
        }
        let negate = c.bound.is_negative();
        if negate {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[first_artificial + i] = T::one();
        rhs.push(if negate { -c.bound.clone() } else { c.bound.clone() });
        row_sign.push(if negate { -T::one() } else { T::one() });
        rows.push(row);
    }

    let scale = rhs.iter().map(|b: &T| b.to_f64().abs()).fold(1.0_f64, f64::max);
    let mut tab = Tableau {
        rows,
        rhs,
        reduced: Vec::new(),
        value: T::zero(),
        basis: (first_artificial..n_cols).collect(),
        first_artificial,
        tol: tolerance,
        pivots: 0,
    };

    // Phase 1: minimize the sum of artificials.
    let mut phase1_costs = vec![T::zero(); n_cols];
    for c in phase1_costs.iter_mut().skip(first_artificial) {
        *c = T::one();
    }
    tab.price(&phase1_costs);
    if let PhaseEnd::Unbounded(_) = tab.run(true)? {
        return Err(LpError::Indeterminate("phase one reported an unbounded auxiliary program".into()));
    }
    if tab.value.sign_tol(tolerance * scale) == Ordering::Greater {
        return Ok(LpOutcome::Infeasible);
    }
    // Drive zero-level artificials out of the basis where possible; rows with
    // no structural entry are redundant and keep their artificial.
    for row in 0..n_rows {
        if tab.basis[row] < first_artificial {
            continue;
        }
        let col = (0..first_artificial).find(|&j| tab.rows[row][j].sign_tol(tolerance) != Ordering::Equal);
        if let Some(col) = col {
            tab.pivot(row, col)?;
        }
    }

    // Phase 2.
    let mut costs = vec![T::zero(); n_cols];
    for (j, c) in problem.objective.iter().enumerate() {
        costs[var_cols[j].pos] = c.clone();
        if let Some(neg) = var_cols[j].neg {
            costs[neg] = -c.clone();
        }
    }
    tab.price(&costs);
    match tab.run(false)? {
        PhaseEnd::Unbounded(col) => {
            let mut direction = vec![T::zero(); n_cols];
            direction[col] = T::one();
            for (i, &b) in tab.basis.iter().enumerate() {
                direction[b] = -tab.rows[i][col].clone();
            }
            let ray = to_original(&direction, &var_cols);
            Ok(LpOutcome::Unbounded { ray })
        }
        PhaseEnd::Optimal => {
            let mut point = vec![T::zero(); n_cols];
            for (i, &b) in tab.basis.iter().enumerate() {
                point[b] = tab.rhs[i].clone();
            }
            let x = to_original(&point, &var_cols);
            let value = dot(&problem.objective, &x);
            // y_i = -(reduced cost of artificial i), mapped back through the row sign.
            let multipliers: Vec<T> = (0..n_rows)
                .map(|i| -tab.reduced[first_artificial + i].clone() * row_sign[i].clone())
                .collect();
            let duals = DualCertificate {
                inequality: multipliers[..n_ineq].to_vec(),
                equality: multipliers[n_ineq..].to_vec(),
            };
            verify_certificate(problem, &x, &value, &duals, tolerance)?;
            Ok(LpOutcome::Optimal { x, value, duals })
        }
    }
}

fn to_original<T: LpScalar>(std_form: &[T], var_cols: &[VarColumns]) -> Vec<T> {
    var_cols
        .iter()
        .map(|vc| match vc.neg {
            Some(neg) => std_form[vc.pos].clone() - std_form[neg].clone(),
            None => std_form[vc.pos].clone(),
        })
        .collect()
}

/// Checks primal feasibility, dual feasibility and a zero duality gap.
fn verify_certificate<T: LpScalar>(
    problem: &LpProblem<T>,
    x: &[T],
    value: &T,
    duals: &DualCertificate<T>,
    tolerance: f64,
) -> Result<(), LpError> {
    let magnitude = problem
        .inequalities
        .iter()
        .chain(&problem.equalities)
        .flat_map(|c| c.normal.iter().chain(std::iter::once(&c.bound)))
        .chain(&problem.objective)
        .chain(x)
        .map(|v| v.to_f64().abs())
        .fold(1.0_f64, f64::max);
    let tol = 1e3 * tolerance * magnitude;
    let fail = |what: &str| Err(LpError::Indeterminate(format!("optimality certificate failed: {what}")));

    for c in &problem.inequalities {
        if (dot(&c.normal, x) - c.bound.clone()).sign_tol(tol) == Ordering::Less {
            return fail("primal inequality violated");
        }
    }
    for c in &problem.equalities {
        if (dot(&c.normal, x) - c.bound.clone()).sign_tol(tol) != Ordering::Equal {
            return fail("primal equality violated");
        }
    }
    if duals.inequality.iter().any(|l| l.sign_tol(tol) == Ordering::Less) {
        return fail("negative inequality multiplier");
    }
    for j in 0..problem.num_vars() {
        let mut resid = problem.objective[j].clone();
        for (c, l) in problem.inequalities.iter().zip(&duals.inequality) {
            resid = resid - c.normal[j].clone() * l.clone();
        }
        for (c, m) in problem.equalities.iter().zip(&duals.equality) {
            resid = resid - c.normal[j].clone() * m.clone();
        }
        let sign = resid.sign_tol(tol);
        let ok = if problem.nonnegative[j] { sign != Ordering::Less } else { sign == Ordering::Equal };
        if !ok {
            return fail("dual constraint violated");
        }
    }
    let dual_value = problem
        .inequalities
        .iter()
        .zip(&duals.inequality)
        .chain(problem.equalities.iter().zip(&duals.equality))
        .fold(T::zero(), |acc, (c, m)| acc + c.bound.clone() * m.clone());
    if (dual_value - value.clone()).sign_tol(tol) != Ordering::Equal {
        return fail("duality gap");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::LpStatus;
    use num::BigRational;

    fn solve(p: &LpProblem<f64>) -> LpOutcome<f64> {
        solve_lp(p, 1e-9).unwrap()
    }

    #[test]
    fn single_binding_constraint() {
        let p = LpProblem::new(vec![1.0]).ge(vec![1.0], 2.0);
        match solve(&p) {
            LpOutcome::Optimal { x, value, duals } => {
                assert_eq!(x, vec![2.0]);
                assert_eq!(value, 2.0);
                assert_eq!(duals.inequality, vec![1.0]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn recession_direction() {
        let p = LpProblem::new(vec![-1.0]).ge(vec![1.0], 0.0);
        assert_eq!(solve(&p), LpOutcome::Unbounded { ray: vec![1.0] });
    }

    #[test]
    fn separable_program() {
        let p = LpProblem::new(vec![1.0, 1.0]).ge(vec![1.0, 0.0], 1.0).ge(vec![0.0, 1.0], 1.0);
        let out = solve(&p);
        assert_eq!(out.optimizer(), Some(&[1.0, 1.0][..]));
        assert_eq!(out.value(), Some(&2.0));
    }

    #[test]
    fn infeasible_program() {
        let p = LpProblem::new(vec![0.0]).ge(vec![1.0], 1.0).ge(vec![-1.0], 0.0);
        assert_eq!(solve(&p).status(), LpStatus::Infeasible);
    }

    #[test]
    fn equalities_and_redundant_rows() {
        // x + y = 2 stated twice, minimize x - y with x, y >= 0.
        let mut p = LpProblem::new(vec![1.0, -1.0]).eq(vec![1.0, 1.0], 2.0).eq(vec![2.0, 2.0], 4.0);
        p.set_nonnegative(0);
        p.set_nonnegative(1);
        let out = solve(&p);
        assert_eq!(out.optimizer(), Some(&[0.0, 2.0][..]));
        assert_eq!(out.value(), Some(&-2.0));
    }

    #[test]
    fn exact_rational_backend() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        // minimize x s.t. 3x >= 1
        let p = LpProblem::new(vec![r(1, 1)]).ge(vec![r(3, 1)], r(1, 1));
        let out = solve_lp(&p, 1e-9).unwrap();
        assert_eq!(out.value(), Some(&r(1, 3)));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example, which cycles under the largest-coefficient rule.
        let mut p = LpProblem::new(vec![-0.75, 150.0, -0.02, 6.0])
            .ge(vec![-0.25, 60.0, 0.04, -9.0], 0.0)
            .ge(vec![-0.5, 90.0, 0.02, -3.0], 0.0)
            .ge(vec![0.0, 0.0, -1.0, 0.0], -1.0);
        for j in 0..4 {
            p.set_nonnegative(j);
        }
        let out = solve(&p);
        assert!((out.value().unwrap() + 0.05).abs() < 1e-9);
    }

    #[test]
    fn rejects_malformed_programs() {
        let p = LpProblem::new(vec![1.0, 2.0]).ge(vec![1.0], 0.0);
        assert!(matches!(solve_lp(&p, 1e-9), Err(LpError::Dimension(_))));
        let p = LpProblem::<f64>::new(vec![]);
        assert!(matches!(solve_lp(&p, 1e-9), Err(LpError::Dimension(_))));
        let p = LpProblem::new(vec![1.0]);
        assert!(matches!(solve_lp(&p, 0.0), Err(LpError::Tolerance(_))));
    }

    #[test]
    fn deterministic_outcomes() {
        let p = LpProblem::new(vec![1.0, 2.0, -1.0])
            .ge(vec![1.0, 1.0, 0.0], 1.0)
            .ge(vec![0.0, 1.0, -1.0], -3.0)
            .ge(vec![-1.0, 0.0, -1.0], -5.0);
        let a = solve(&p);
        let b = solve(&p);
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }
}
