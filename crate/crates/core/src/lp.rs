//! Dense two-phase primal simplex over exact rationals with Bland's rule.
//!
//! Problems are `min c·x` subject to rows `a·x {<=,=,>=} b` and `x >= 0`.
//! Every outcome carries a certificate that is checked before it is returned:
//! dual values for optimal problems (strong duality holds exactly), a Farkas
//! vector for infeasible ones, and a feasible point plus improving ray for
//! unbounded ones.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug)]
pub struct LpProblem {
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
}

impl LpProblem {
    pub fn minimize(objective: Vec<Rational>) -> Self {
        LpProblem {
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Result<()> {
        if coeffs.len() != self.num_vars() {
            return Err(Error::MalformedLp(format!(
                "row has {} coefficients, problem has {} variables",
                coeffs.len(),
                self.num_vars()
            )));
        }
        self.constraints.push(Constraint { coeffs, relation, rhs });
        Ok(())
    }

    pub fn with_constraint(mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Result<Self> {
        self.add_constraint(coeffs, relation, rhs)?;
        Ok(self)
    }

    pub fn solve(&self) -> Result<LpOutcome> {
        let outcome = Simplex::new(self).run();
        outcome.verify(self)?;
        Ok(outcome)
    }

    fn row_value(&self, i: usize, x: &[Rational]) -> Rational {
        self.constraints[i]
            .coeffs
            .iter()
            .zip(x)
            .map(|(a, v)| a * v)
            .sum()
    }

    /// Checks `x >= 0` and every row.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && (0..self.constraints.len()).all(|i| {
                let lhs = self.row_value(i, x);
                let c = &self.constraints[i];
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                }
            })
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// `sum_i y_i a_ij` for column `j`.
    fn dual_column(&self, y: &[Rational], j: usize) -> Rational {
        self.constraints
            .iter()
            .zip(y)
            .map(|(c, yi)| &c.coeffs[j] * yi)
            .sum()
    }

    /// Sign convention for a min problem: `y_i >= 0` on `>=` rows, `<= 0` on `<=` rows.
    fn dual_signs_ok(&self, y: &[Rational]) -> bool {
        self.constraints.iter().zip(y).all(|(c, yi)| match c.relation {
            Relation::Le => !yi.is_positive(),
            Relation::Eq => true,
            Relation::Ge => !yi.is_negative(),
        })
    }

    fn dual_objective(&self, y: &[Rational]) -> Rational {
        self.constraints.iter().zip(y).map(|(c, yi)| &c.rhs * yi).sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        primal: Vec<Rational>,
        /// One multiplier per constraint.
        duals: Vec<Rational>,
    },
    Infeasible {
        /// `y` with `y^T A <= 0` columnwise, correct signs, and `y·b > 0`.
        farkas: Vec<Rational>,
    },
    Unbounded {
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible { .. })
    }

    /// Re-checks the attached certificate against `problem` exactly.
    pub fn verify(&self, problem: &LpProblem) -> Result<()> {
        let fail = |msg: &str| Err(Error::Certificate(msg.to_string()));
        match self {
            LpOutcome::Optimal { value, primal, duals } => {
                if !problem.is_feasible(primal) {
                    return fail("primal point infeasible");
                }
                if &problem.objective_value(primal) != value {
                    return fail("primal objective differs from reported value");
                }
                if duals.len() != problem.constraints.len() || !problem.dual_signs_ok(duals) {
                    return fail("dual multipliers have wrong length or sign");
                }
                for j in 0..problem.num_vars() {
                    if problem.dual_column(duals, j) > problem.objective[j] {
                        return fail("dual infeasible");
                    }
                }
                if &problem.dual_objective(duals) != value {
                    return fail("strong duality gap");
                }
                Ok(())
            }
            LpOutcome::Infeasible { farkas } => {
                if farkas.len() != problem.constraints.len() || !problem.dual_signs_ok(farkas) {
                    return fail("Farkas vector has wrong length or sign");
                }
                for j in 0..problem.num_vars() {
                    if problem.dual_column(farkas, j).is_positive() {
                        return fail("Farkas vector violates a column");
                    }
                }
                if !problem.dual_objective(farkas).is_positive() {
                    return fail("Farkas vector does not separate the right-hand side");
                }
                Ok(())
            }
            LpOutcome::Unbounded { point, ray } => {
                if !problem.is_feasible(point) {
                    return fail("unbounded: base point infeasible");
                }
                if ray.len() != problem.num_vars() || ray.iter().any(Signed::is_negative) {
                    return fail("unbounded: ray not non-negative");
                }
                for (i, c) in problem.constraints.iter().enumerate() {
                    let lhs = problem.row_value(i, ray);
                    let ok = match c.relation {
                        Relation::Le => !lhs.is_positive(),
                        Relation::Eq => lhs.is_zero(),
                        Relation::Ge => !lhs.is_negative(),
                    };
                    if !ok {
                        return fail("unbounded: ray leaves the feasible region");
                    }
                }
                if !problem.objective_value(ray).is_negative() {
                    return fail("unbounded: ray does not improve");
                }
                Ok(())
            }
        }
    }
}

/// Standard-form tableau. Columns: structural, then one slack per inequality,
/// then one artificial per row. Rows are sign-normalized so `rhs >= 0`.
struct Simplex {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    num_structural: usize,
    num_real: usize,
    row_sign: Vec<Rational>,
    cost: Vec<Rational>,
}

enum PhaseResult {
    Optimal,
    Unbounded(usize),
}

impl Simplex {
    fn new(problem: &LpProblem) -> Self {
        let m = problem.constraints.len();
        let n = problem.num_vars();
        let num_slack = problem
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let num_real = n + num_slack;
        let width = num_real + m;
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut row_sign = Vec::with_capacity(m);
        let mut slack = n;
        for (i, c) in problem.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); width];
            row[..n].clone_from_slice(&c.coeffs);
            match c.relation {
                Relation::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            let mut b = c.rhs.clone();
            let sign = if b.is_negative() {
                for v in row.iter_mut() {
                    *v = -&*v;
                }
                b = -b;
                -Rational::one()
            } else {
                Rational::one()
            };
            row[num_real + i] = Rational::one();
            rows.push(row);
            rhs.push(b);
            row_sign.push(sign);
        }
        let mut cost = vec![Rational::zero(); width];
        cost[..n].clone_from_slice(&problem.objective);
        Simplex {
            rows,
            rhs,
            basis: (num_real..num_real + m).collect(),
            num_structural: n,
            num_real,
            row_sign,
            cost,
        }
    }

    fn width(&self) -> usize {
        self.num_real + self.rows.len()
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        self.basis[r] = col;
    }

    /// Simplex multipliers `c_B B^{-1}` for the sign-normalized rows, read
    /// from the artificial columns.
    fn multipliers(&self, cost: &[Rational]) -> Vec<Rational> {
        let m = self.rows.len();
        (0..m)
            .map(|k| {
                (0..m)
                    .map(|i| &cost[self.basis[i]] * &self.rows[i][self.num_real + k])
                    .sum()
            })
            .collect()
    }

    /// `c_j - sum_i c_B(i) T_ij` on the current tableau.
    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let z: Rational = (0..self.rows.len())
            .map(|i| &cost[self.basis[i]] * &self.rows[i][j])
            .sum();
        &cost[j] - z
    }

    /// Bland's rule: lowest-index improving column, ties in the ratio test
    /// broken by lowest basic index.
    fn run_phase(&mut self, cost: &[Rational], allowed: usize) -> PhaseResult {
        loop {
            let entering = (0..allowed).find(|&j| {
                !self.basis.contains(&j) && self.reduced_cost(cost, j).is_negative()
            });
            let Some(col) = entering else {
                return PhaseResult::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                None => return PhaseResult::Unbounded(col),
                Some((r, _)) => self.pivot(r, col),
            }
        }
    }

    fn primal(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.width()];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.rhs[i].clone();
        }
        x
    }

    /// Undo the row sign normalization on a multiplier vector.
    fn unsign(&self, y: Vec<Rational>) -> Vec<Rational> {
        y.into_iter().zip(&self.row_sign).map(|(v, s)| v * s).collect()
    }

    fn run(mut self) -> LpOutcome {
        let m = self.rows.len();
        let width = self.width();
        let mut phase1_cost = vec![Rational::zero(); width];
        for c in phase1_cost.iter_mut().skip(self.num_real) {
            *c = Rational::one();
        }
        // artificials start basic, so Phase 1 is always bounded
        let _ = self.run_phase(&phase1_cost, self.num_real);
        let infeasibility: Rational = (0..m)
            .filter(|&i| self.basis[i] >= self.num_real)
            .map(|i| self.rhs[i].clone())
            .sum();
        if infeasibility.is_positive() {
            // Phase 1 optimality gives y·A_j <= 0 on every real column,
            // and y·b equals the positive infeasibility.
            let farkas = self.multipliers(&phase1_cost);
            return LpOutcome::Infeasible {
                farkas: self.unsign(farkas),
            };
        }
        // drive zero-level artificials out of the basis where possible
        for i in 0..m {
            if self.basis[i] >= self.num_real {
                if let Some(col) = (0..self.num_real).find(|&j| !self.rows[i][j].is_zero()) {
                    self.pivot(i, col);
                }
            }
        }
        let cost = self.cost.clone();
        match self.run_phase(&cost, self.num_real) {
            PhaseResult::Optimal => {
                let x = self.primal();
                let y = self.multipliers(&cost);
                let primal = x[..self.num_structural].to_vec();
                let value = (0..self.num_structural).map(|j| &cost[j] * &x[j]).sum();
                LpOutcome::Optimal {
                    value,
                    primal,
                    duals: self.unsign(y),
                }
            }
            PhaseResult::Unbounded(col) => {
                let x = self.primal();
                let mut ray = vec![Rational::zero(); width];
                ray[col] = Rational::one();
                for (i, &b) in self.basis.iter().enumerate() {
                    ray[b] = -&self.rows[i][col];
                }
                LpOutcome::Unbounded {
                    point: x[..self.num_structural].to_vec(),
                    ray: ray[..self.num_structural].to_vec(),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn single_cut_lp() {
        let lp = LpProblem::minimize(vec![int(1), int(1)])
            .with_constraint(vec![rat(9, 10), rat(4, 5)], Relation::Ge, int(1))
            .unwrap();
        match lp.solve().unwrap() {
            LpOutcome::Optimal { value, primal, .. } => {
                assert_eq!(value, rat(10, 9));
                assert_eq!(primal, vec![rat(10, 9), int(0)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible_with_certificate() {
        let lp = LpProblem::minimize(vec![int(0)])
            .with_constraint(vec![int(0)], Relation::Eq, int(1))
            .unwrap();
        let out = lp.solve().unwrap();
        assert!(out.is_infeasible());
        out.verify(&lp).unwrap();

        let lp = LpProblem::minimize(vec![int(1), int(2)])
            .with_constraint(vec![int(1), int(1)], Relation::Le, rat(-1, 2))
            .unwrap();
        assert!(lp.solve().unwrap().is_infeasible());
    }

    #[test]
    fn unbounded_with_ray() {
        let lp = LpProblem::minimize(vec![int(-1)]);
        assert!(matches!(lp.solve().unwrap(), LpOutcome::Unbounded { .. }));
        let lp = LpProblem::minimize(vec![int(-1), int(1)])
            .with_constraint(vec![int(1), int(-1)], Relation::Ge, int(2))
            .unwrap();
        assert!(matches!(lp.solve().unwrap(), LpOutcome::Unbounded { .. }));
    }

    #[test]
    fn mixed_relations_and_degeneracy() {
        // min x + 2y + 3z, x + y + z = 1, x - y >= 0, y - z <= 0, x <= 1/3
        let lp = LpProblem::minimize(vec![int(1), int(2), int(3)])
            .with_constraint(vec![int(1), int(1), int(1)], Relation::Eq, int(1))
            .unwrap()
            .with_constraint(vec![int(1), int(-1), int(0)], Relation::Ge, int(0))
            .unwrap()
            .with_constraint(vec![int(0), int(1), int(-1)], Relation::Le, int(0))
            .unwrap()
            .with_constraint(vec![int(1), int(0), int(0)], Relation::Le, rat(1, 3))
            .unwrap();
        let out = lp.solve().unwrap();
        assert_eq!(out.value(), Some(&int(2)));
    }

    #[test]
    fn redundant_equalities() {
        let lp = LpProblem::minimize(vec![int(1), int(1)])
            .with_constraint(vec![int(1), int(2)], Relation::Eq, int(2))
            .unwrap()
            .with_constraint(vec![int(2), int(4)], Relation::Eq, int(4))
            .unwrap();
        assert_eq!(lp.solve().unwrap().value(), Some(&int(1)));
    }

    #[test]
    fn malformed_row() {
        let mut lp = LpProblem::minimize(vec![int(1)]);
        assert!(matches!(
            lp.add_constraint(vec![int(1), int(1)], Relation::Ge, int(1)),
            Err(Error::MalformedLp(_))
        ));
    }

    #[test]
    fn beale_cycling_example_terminates() {
        // Beale's classic cycling instance, as a min problem.
        let lp = LpProblem::minimize(vec![rat(-3, 4), int(150), rat(-1, 50), int(6)])
            .with_constraint(vec![rat(1, 4), int(-60), rat(-1, 25), int(9)], Relation::Le, int(0))
            .unwrap()
            .with_constraint(vec![rat(1, 2), int(-90), rat(-1, 50), int(3)], Relation::Le, int(0))
            .unwrap()
            .with_constraint(vec![int(0), int(0), int(1), int(0)], Relation::Le, int(1))
            .unwrap();
        assert_eq!(lp.solve().unwrap().value(), Some(&rat(-1, 20)));
    }
}
