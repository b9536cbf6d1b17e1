//! Split cuts through exact LPs: validity over a disjunction, the deepest cut
//! of a disjunction, pointwise-vs-LP dominance, and split closure bounds.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::corner::{CornerRelaxation, CutCoefficients, Disjunction, SolutionPoint};
use crate::cutfn::{pi_period, AlphaCut};
use crate::error::{Error, Result};
use crate::exact::{is_integral, IntVector, Rational};
use crate::lp::{LpOutcome, LpProblem, Relation};

/// Result of minimizing over a polyhedron that may be empty or unbounded below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Optimum {
    Infeasible,
    Finite { value: Rational, point: SolutionPoint },
    Unbounded,
}

impl Optimum {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Optimum::Finite { value, .. } => Some(value),
            _ => None,
        }
    }

    fn rank(&self) -> (u8, Option<&Rational>) {
        match self {
            Optimum::Unbounded => (0, None),
            Optimum::Finite { value, .. } => (1, Some(value)),
            Optimum::Infeasible => (2, None),
        }
    }

    /// Same optimal value (points may differ).
    pub fn same_value(&self, other: &Optimum) -> bool {
        self.rank() == other.rank()
    }

    /// The better of two minimization outcomes.
    pub fn min(self, other: Optimum) -> Optimum {
        if other.rank() < self.rank() {
            other
        } else {
            self
        }
    }

    fn from_outcome(rel: &CornerRelaxation, outcome: LpOutcome) -> Result<Self> {
        Ok(match outcome {
            LpOutcome::Optimal { value, primal, .. } => {
                let (s, y) = primal.split_at(rel.r_cols().len());
                let point = SolutionPoint::from_nonbasic(rel, s.to_vec(), y.to_vec())?;
                Optimum::Finite { value, point }
            }
            LpOutcome::Infeasible { .. } => Optimum::Infeasible,
            LpOutcome::Unbounded { .. } => Optimum::Unbounded,
        })
    }
}

/// `min objective·(s, y)` over `C_LP` with extra rows on `(s, y)`.
fn minimize_nonbasic(
    rel: &CornerRelaxation,
    objective: &[Rational],
    rows: impl IntoIterator<Item = (Vec<Rational>, Relation, Rational)>,
) -> Result<Optimum> {
    if objective.len() != rel.num_columns() {
        return Err(Error::ColumnMismatch(format!(
            "objective has {} entries for {} columns",
            objective.len(),
            rel.num_columns()
        )));
    }
    let mut lp = LpProblem::minimize(objective.to_vec());
    for (row, relation, rhs) in rows {
        lp.add_constraint(row, relation, rhs)?;
    }
    Optimum::from_outcome(rel, lp.solve()?)
}

/// Rows of the two closed sides of `d` in `(s, y)` space: lower side first.
fn side_rows(rel: &CornerRelaxation, d: &Disjunction) -> Result<[(Vec<Rational>, Relation, Rational); 2]> {
    let row = d.nonbasic_row(rel)?;
    let (lo, hi) = d.walls();
    Ok([
        (row.clone(), Relation::Le, lo - d.alpha_f()),
        (row, Relation::Ge, hi - d.alpha_f()),
    ])
}

/// Optimizes `objective` over each side of `d` intersected with `C_LP`.
pub fn minimize_over_sides(rel: &CornerRelaxation, objective: &[Rational], d: &Disjunction) -> Result<[Optimum; 2]> {
    let [lo, hi] = side_rows(rel, d)?;
    Ok([minimize_nonbasic(rel, objective, [lo])?, minimize_nonbasic(rel, objective, [hi])?])
}

/// Optimum over the disjunctive hull, i.e. the better of the two sides.
pub fn minimize_disjunctive_hull(rel: &CornerRelaxation, objective: &[Rational], d: &Disjunction) -> Result<Optimum> {
    let [a, b] = minimize_over_sides(rel, objective, d)?;
    Ok(a.min(b))
}

/// Optimum over `C_LP` intersected with the given cuts.
pub fn minimize_with_cuts(rel: &CornerRelaxation, objective: &[Rational], cuts: &[CutCoefficients]) -> Result<Optimum> {
    for c in cuts {
        c.check_columns(rel)?;
    }
    minimize_nonbasic(rel, objective, cuts.iter().map(|c| (c.row(), Relation::Ge, Rational::one())))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCutCheck {
    pub valid: bool,
    /// Minimum cut value on the lower and upper side.
    pub sides: [Optimum; 2],
    /// A point of `C_LP ∩ D` with cut value below 1.
    pub witness: Option<SolutionPoint>,
}

/// Decides whether `cut` holds on `C_LP ∩ D(alpha, beta, f)` by minimizing the
/// cut over each side.
pub fn verify_split_cut(rel: &CornerRelaxation, cut: &CutCoefficients, d: &Disjunction) -> Result<SplitCutCheck> {
    cut.check_columns(rel)?;
    let sides = minimize_over_sides(rel, &cut.row(), d)?;
    let witness = sides.iter().find_map(|side| match side {
        Optimum::Finite { value, point } if value < &Rational::one() => Some(point.clone()),
        _ => None,
    });
    Ok(SplitCutCheck {
        valid: witness.is_none(),
        sides,
        witness,
    })
}

/// Strongest cut valid on `C_LP ∩ D(alpha, beta, f)`: the gauge of the lifted
/// split `S((alpha, 1), (f, 0))` at `(r, 0)` and `(q, beta(q))`.
pub fn deepest_disjunctive_cut(rel: &CornerRelaxation, d: &Disjunction) -> Result<CutCoefficients> {
    let split = d.lifted_split(rel);
    let row: Vec<Rational> = d
        .nonbasic_row(rel)?
        .iter()
        .map(|v| split.gauge_of_projection(v))
        .collect();
    let (psi, pi) = row.split_at(rel.r_cols().len());
    CutCoefficients::new(psi.to_vec(), pi.to_vec())
}

/// A point of `C_LP` satisfying `a` but not `b`, found by `min b·z` over `a·z >= 1`.
pub fn separating_point(rel: &CornerRelaxation, a: &CutCoefficients, b: &CutCoefficients) -> Result<Option<SolutionPoint>> {
    a.check_columns(rel)?;
    b.check_columns(rel)?;
    Ok(match minimize_with_cuts(rel, &b.row(), std::slice::from_ref(a))? {
        Optimum::Finite { value, point } if value < Rational::one() => Some(point),
        _ => None,
    })
}

/// Set-containment dominance of `a` over `b` on `C_LP`, decided by LP.
pub fn dominates_by_lp(rel: &CornerRelaxation, a: &CutCoefficients, b: &CutCoefficients) -> Result<bool> {
    Ok(separating_point(rel, a, b)?.is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureStrategy {
    /// One-row instances: every `alpha` in one coefficient period. Exact.
    Period,
    /// Every `alpha` in `[-A, A]^n`. A relaxation of the closure.
    Box(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    pub optimum: Optimum,
    /// Whether the alpha family used describes the whole closure.
    pub exact: bool,
    /// Length of the alpha period under [`ClosureStrategy::Period`].
    pub period: Option<BigInt>,
    /// Number of alpha-cuts in the family.
    pub family_size: usize,
    /// Cuts tight at the reported point.
    pub binding: Vec<IntVector>,
}

/// Sign representatives `alpha` (first non-zero entry positive) with `alpha f`
/// non-integral, for the chosen strategy.
pub fn closure_alphas(rel: &CornerRelaxation, strategy: ClosureStrategy) -> Result<(Vec<IntVector>, Option<BigInt>)> {
    let f = rel.f();
    let keep = |a: &IntVector| a.dot(f).is_ok_and(|v| !is_integral(&v));
    match strategy {
        ClosureStrategy::Period => {
            if rel.dim() != 1 {
                return Err(Error::PeriodNeedsOneRow(rel.dim()));
            }
            // alpha + kL has the same pi and a larger psi than alpha, so
            // 1..L-1 covers every alpha-cut up to dominance.
            let period = pi_period(&f[0], rel.q_cols().iter().map(|q| &q[0]));
            let l = period
                .to_i64()
                .ok_or_else(|| Error::Unsupported(format!("alpha period {period} too large")))?;
            let alphas = (1..l).map(|a| IntVector::from_ints(&[a])).filter(keep).collect();
            Ok((alphas, Some(period)))
        }
        ClosureStrategy::Box(a) => {
            let a = i64::from(a);
            let n = rel.dim();
            let mut out = Vec::new();
            let mut cur = vec![-a; n];
            loop {
                let v = IntVector::from_ints(&cur);
                if v.is_sign_representative() && keep(&v) {
                    out.push(v);
                }
                let mut i = 0;
                while i < n && cur[i] == a {
                    cur[i] = -a;
                    i += 1;
                }
                if i == n {
                    break;
                }
                cur[i] += 1;
            }
            Ok((out, None))
        }
    }
}

/// Minimizes `objective` over `C_LP` intersected with every alpha-cut of the
/// strategy's family, adding the most violated cut until none is violated.
pub fn split_closure_optimize(
    rel: &CornerRelaxation,
    objective: &[Rational],
    strategy: ClosureStrategy,
) -> Result<ClosureResult> {
    let (alphas, period) = closure_alphas(rel, strategy)?;
    let cuts: Vec<CutCoefficients> = alphas
        .iter()
        .map(|a| CutCoefficients::alpha_cut(rel, &AlphaCut::new(a.clone(), rel.f().clone())?))
        .collect::<Result<_>>()?;

    let mut active: Vec<usize> = Vec::new();
    let optimum = loop {
        let chosen: Vec<CutCoefficients> = active.iter().map(|&i| cuts[i].clone()).collect();
        let opt = minimize_with_cuts(rel, objective, &chosen)?;
        let point = match &opt {
            Optimum::Finite { point, .. } => point,
            Optimum::Infeasible => break opt,
            // an unbounded partial LP says nothing about the full one
            Optimum::Unbounded => break minimize_with_cuts(rel, objective, &cuts)?,
        };
        let worst = cuts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.value(point), i))
            .filter(|(v, _)| v < &Rational::one())
            .min();
        match worst {
            Some((_, i)) => active.push(i),
            None => break opt,
        }
    };

    let binding = match &optimum {
        Optimum::Finite { point, .. } => cuts
            .iter()
            .zip(&alphas)
            .filter(|(c, _)| c.value(point).is_one())
            .map(|(_, a)| a.clone())
            .collect(),
        _ => Vec::new(),
    };
    Ok(ClosureResult {
        optimum,
        exact: matches!(strategy, ClosureStrategy::Period),
        period,
        family_size: cuts.len(),
        binding,
    })
}

/// Whether `point` satisfies every alpha-cut of the strategy's family; the
/// first violated alpha otherwise.
pub fn violated_alpha(rel: &CornerRelaxation, point: &SolutionPoint, strategy: ClosureStrategy) -> Result<Option<IntVector>> {
    let (alphas, _) = closure_alphas(rel, strategy)?;
    for a in alphas {
        let cut = CutCoefficients::alpha_cut(rel, &AlphaCut::new(a.clone(), rel.f().clone())?)?;
        if !cut.is_satisfied(point) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Non-negative objectives keep every closure LP bounded.
pub fn is_bounded_objective(objective: &[Rational]) -> bool {
    objective.iter().all(|c| !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, RationalVector};

    fn rel(f: (i64, i64), r: &[(i64, i64)], q: &[(i64, i64)]) -> CornerRelaxation {
        CornerRelaxation::new(
            RationalVector::from_ratios(&[f]),
            r.iter().map(|&v| RationalVector::from_ratios(&[v])).collect(),
            q.iter().map(|&v| RationalVector::from_ratios(&[v])).collect(),
        )
        .unwrap()
    }

    fn tenth() -> CornerRelaxation {
        rel((1, 2), &[], &[(11, 20), (3, 5)])
    }

    #[test]
    fn verify_split_cut_examples() {
        let r = rel((1, 2), &[], &[(1, 2)]);
        let d = Disjunction::on_x(&r, IntVector::from_ints(&[1])).unwrap();
        let strong = CutCoefficients::new(vec![], vec![int(1)]).unwrap();
        let check = verify_split_cut(&r, &strong, &d).unwrap();
        assert!(check.valid);
        assert_eq!(check.sides[0], Optimum::Infeasible);
        assert_eq!(check.sides[1].value(), Some(&int(1)));

        let weak = CutCoefficients::new(vec![], vec![rat(1, 2)]).unwrap();
        let check = verify_split_cut(&r, &weak, &d).unwrap();
        assert!(!check.valid);
        let w = check.witness.unwrap();
        assert_eq!(w.y, vec![int(1)]);
        assert_eq!(w.x, RationalVector::from_ints(&[1]));
    }

    #[test]
    fn deepest_cut_examples() {
        let r = rel((1, 2), &[], &[(1, 2)]);
        let d = Disjunction::on_x(&r, IntVector::from_ints(&[1])).unwrap();
        let cut = deepest_disjunctive_cut(&r, &d).unwrap();
        assert_eq!(cut.pi, vec![int(1)]);
        assert!(verify_split_cut(&r, &cut, &d).unwrap().valid);

        let r = rel((1, 2), &[], &[(3, 4)]);
        let d = Disjunction::new(&r, IntVector::from_ints(&[1]), vec![BigInt::from(-1)]).unwrap();
        assert_eq!(deepest_disjunctive_cut(&r, &d).unwrap().pi, vec![rat(1, 2)]);
    }

    #[test]
    fn lp_dominance_matches_pointwise() {
        let r = tenth();
        let a1 = CutCoefficients::new(vec![], vec![rat(9, 10), rat(4, 5)]).unwrap();
        let a3 = CutCoefficients::new(vec![], vec![rat(7, 10), rat(2, 5)]).unwrap();
        assert!(dominates_by_lp(&r, &a3, &a1).unwrap());
        let p = separating_point(&r, &a1, &a3).unwrap().unwrap();
        assert!(a1.is_satisfied(&p) && !a3.is_satisfied(&p));
    }

    #[test]
    fn closure_of_tenth_family() {
        let res = split_closure_optimize(&tenth(), &[int(1), int(1)], ClosureStrategy::Period).unwrap();
        assert!(res.exact);
        assert_eq!(res.period, Some(BigInt::from(20)));
        assert_eq!(res.family_size, 10);
        match &res.optimum {
            Optimum::Finite { value, point } => {
                assert_eq!(value, &int(3));
                assert_eq!(point.y, vec![int(2), int(1)]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(res.binding.contains(&IntVector::from_ints(&[5])));
    }

    #[test]
    fn closure_with_continuous_column() {
        let r = rel((1, 2), &[(1, 1)], &[]);
        let res = split_closure_optimize(&r, &[int(1)], ClosureStrategy::Period).unwrap();
        assert_eq!(res.optimum.value(), Some(&rat(1, 2)));
        assert_eq!(res.binding, vec![IntVector::from_ints(&[1])]);
        let boxed = split_closure_optimize(&r, &[int(1)], ClosureStrategy::Box(3)).unwrap();
        assert!(!boxed.exact);
        assert_eq!(boxed.optimum.value(), Some(&rat(1, 2)));
    }

    #[test]
    fn period_needs_one_row() {
        let r = CornerRelaxation::new(RationalVector::from_ratios(&[(1, 2), (1, 3)]), vec![], vec![]).unwrap();
        assert!(matches!(
            split_closure_optimize(&r, &[], ClosureStrategy::Period),
            Err(Error::PeriodNeedsOneRow(2))
        ));
        let (alphas, _) = closure_alphas(&r, ClosureStrategy::Box(1)).unwrap();
        assert!(alphas.iter().all(IntVector::is_sign_representative));
        assert_eq!(alphas.len(), 4);
    }

    #[test]
    fn unbounded_objective_falls_back_to_full_family() {
        let r = rel((1, 2), &[(1, 1), (-1, 1)], &[]);
        let res = split_closure_optimize(&r, &[int(-1), int(0)], ClosureStrategy::Period).unwrap();
        assert_eq!(res.optimum, Optimum::Unbounded);
        assert!(!is_bounded_objective(&[int(-1)]));
    }
}
