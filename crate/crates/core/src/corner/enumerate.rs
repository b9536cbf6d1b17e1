//! Brute-force oracles over integer points of a corner relaxation.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{CornerRelaxation, CutCoefficients, SolutionPoint};
use crate::error::{Error, Result};
use crate::exact::{common_denominator, Rational, RationalVector};
use crate::lp::{LpOutcome, LpProblem, Relation};

/// Three-valued answer of a capped search; the feasible set is unbounded, so a
/// clean search is only a proof when the cap covers every possible violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidityOutcome {
    Valid,
    Violated(SolutionPoint),
    NoViolationWithinCap { cap: u64 },
}

/// Visits every `y in Z^Q_+` with `sum y <= cap`, in order of increasing
/// `sum y`, for which `f + Q y` is integral (pure-integer points of `C`).
/// The callback gets `y` and `x`.
pub fn for_each_integer_point<B>(
    rel: &CornerRelaxation,
    cap: u64,
    mut visit: impl FnMut(&[u64], &RationalVector) -> ControlFlow<B>,
) -> Option<B> {
    // Work coordinatewise with numerators over a common denominator.
    let n = rel.dim();
    let k = rel.q_cols().len();
    let dens: Vec<BigInt> = (0..n)
        .map(|i| common_denominator(std::iter::once(&rel.f()[i]).chain(rel.q_cols().iter().map(|q| &q[i]))))
        .collect();
    let scaled = |v: &Rational, i: usize| -> BigInt { (v * Rational::from_integer(dens[i].clone())).to_integer() };
    let f_num: Vec<BigInt> = (0..n).map(|i| scaled(&rel.f()[i], i).mod_floor(&dens[i])).collect();
    let q_num: Vec<Vec<BigInt>> = rel
        .q_cols()
        .iter()
        .map(|q| (0..n).map(|i| scaled(&q[i], i).mod_floor(&dens[i])).collect())
        .collect();

    let mut y = vec![0u64; k];
    for total in 0..=cap {
        if k == 0 && total > 0 {
            break;
        }
        let flow = compositions(&mut y, 0, total, &mut |y| {
            let integral = (0..n).all(|i| {
                let mut acc = f_num[i].clone();
                for (j, &yj) in y.iter().enumerate() {
                    if yj != 0 && !q_num[j][i].is_zero() {
                        acc += &q_num[j][i] * yj;
                    }
                }
                acc.is_multiple_of(&dens[i])
            });
            if !integral {
                return ControlFlow::Continue(());
            }
            let yr: Vec<Rational> = y.iter().map(|&v| Rational::from_integer(v.into())).collect();
            let x = rel.basic_point(&[], &yr).expect("lengths match");
            visit(y, &x)
        });
        if let ControlFlow::Break(b) = flow {
            return Some(b);
        }
    }
    None
}

fn compositions<B>(
    y: &mut [u64],
    start: usize,
    remaining: u64,
    visit: &mut impl FnMut(&[u64]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if start + 1 >= y.len() {
        if y.is_empty() {
            return if remaining == 0 { visit(y) } else { ControlFlow::Continue(()) };
        }
        y[start] = remaining;
        let out = visit(y);
        y[start] = 0;
        return out;
    }
    for v in (0..=remaining).rev() {
        y[start] = v;
        compositions(y, start + 1, remaining - v, visit)?;
    }
    y[start] = 0;
    ControlFlow::Continue(())
}

/// Searches integer points of `C` with `sum y <= cap` for a violation of `cut`.
///
/// With continuous columns, `x` also ranges over the integer box
/// `|x_i| <= cap` and the cheapest `s` for each `(x, y)` comes from an LP.
/// Returns [`ValidityOutcome::Valid`] only when the cap provably covers every
/// point that could violate the cut.
pub fn check_validity_enumerated(rel: &CornerRelaxation, cut: &CutCoefficients, cap: u64) -> Result<ValidityOutcome> {
    cut.check_columns(rel)?;
    if cap == 0 {
        return Err(Error::Unsupported("cap must be at least 1".into()));
    }
    let witness = if rel.is_pure_integer() {
        for_each_integer_point(rel, cap, |y, x| {
            let yr: Vec<Rational> = y.iter().map(|&v| Rational::from_integer(v.into())).collect();
            let p = SolutionPoint { x: x.clone(), s: vec![], y: yr };
            if cut.is_satisfied(&p) {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(p)
            }
        })
    } else {
        mixed_search(rel, cut, cap)?
    };
    if let Some(p) = witness {
        return Ok(ValidityOutcome::Violated(p));
    }
    Ok(if cap_is_exhaustive(rel, cut, cap) {
        ValidityOutcome::Valid
    } else {
        ValidityOutcome::NoViolationWithinCap { cap }
    })
}

fn mixed_search(rel: &CornerRelaxation, cut: &CutCoefficients, cap: u64) -> Result<Option<SolutionPoint>> {
    let n = rel.dim();
    let k = rel.q_cols().len();
    let bound = i64::try_from(cap).map_err(|_| Error::Unsupported("cap too large".into()))?;
    let mut found = None;
    let mut y = vec![0u64; k];
    for total in 0..=cap {
        if k == 0 && total > 0 {
            break;
        }
        let mut err = None;
        let flow = compositions(&mut y, 0, total, &mut |y| {
            let yr: Vec<Rational> = y.iter().map(|&v| Rational::from_integer(v.into())).collect();
            let y_cost: Rational = cut.pi.iter().zip(&yr).map(|(c, v)| c * v).sum();
            let base = match rel.basic_point(&vec![Rational::zero(); rel.r_cols().len()], &yr) {
                Ok(b) => b,
                Err(e) => {
                    err = Some(e);
                    return ControlFlow::Break(None);
                }
            };
            let mut x = vec![-bound; n];
            loop {
                let target = RationalVector::new(x.iter().map(|&v| Rational::from_integer(v.into())).collect());
                match cheapest_continuous(rel, cut, &(&target - &base)) {
                    Ok(Some(s)) => {
                        let s_cost: Rational = cut.psi.iter().zip(&s).map(|(c, v)| c * v).sum();
                        if s_cost + &y_cost < Rational::one() {
                            let p = SolutionPoint { x: target, s, y: yr.clone() };
                            return ControlFlow::Break(Some(p));
                        }
                    }
                    Ok(None) => {}
                    Err(e) => {
                        err = Some(e);
                        return ControlFlow::Break(None);
                    }
                }
                if !advance(&mut x, bound) {
                    return ControlFlow::Continue(());
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        if let ControlFlow::Break(p) = flow {
            found = p;
            break;
        }
    }
    Ok(found)
}

/// Odometer over `[-bound, bound]^n`.
fn advance(x: &mut [i64], bound: i64) -> bool {
    for v in x.iter_mut() {
        if *v < bound {
            *v += 1;
            return true;
        }
        *v = -bound;
    }
    false
}

/// `min psi·s` subject to `sum r s(r) = target`, `s >= 0`; `None` if infeasible.
fn cheapest_continuous(rel: &CornerRelaxation, cut: &CutCoefficients, target: &RationalVector) -> Result<Option<Vec<Rational>>> {
    let mut lp = LpProblem::minimize(cut.psi.clone());
    for i in 0..rel.dim() {
        let row = rel.r_cols().iter().map(|r| r[i].clone()).collect();
        lp.add_constraint(row, Relation::Eq, target[i].clone())?;
    }
    match lp.solve()? {
        LpOutcome::Optimal { primal, .. } => Ok(Some(primal)),
        LpOutcome::Infeasible { .. } => Ok(None),
        // psi >= 0, so the LP is bounded below
        LpOutcome::Unbounded { .. } => unreachable!("non-negative objective"),
    }
}

/// Whether every violating point necessarily has `sum y <= cap` (and, with
/// continuous columns, `|x|_inf <= cap`).
fn cap_is_exhaustive(rel: &CornerRelaxation, cut: &CutCoefficients, cap: u64) -> bool {
    let cap_r = Rational::from_integer(cap.into());
    // violations have sum y < 1 / min pi
    let y_limit = if rel.q_cols().is_empty() {
        Some(Rational::zero())
    } else {
        cut.pi.iter().min().filter(|m| m.is_positive()).map(|m| m.recip())
    };
    let Some(y_limit) = y_limit else { return false };
    if y_limit.ceil() - Rational::one() > cap_r {
        return false;
    }
    if rel.is_pure_integer() {
        return true;
    }
    let Some(psi_min) = cut.psi.iter().min().filter(|m| m.is_positive()) else {
        return false;
    };
    let norm = |v: &RationalVector| v.iter().map(|a| a.abs()).max().unwrap_or_else(Rational::zero);
    let q_max = rel.q_cols().iter().map(norm).max().unwrap_or_else(Rational::zero);
    let r_max = rel.r_cols().iter().map(norm).max().unwrap_or_else(Rational::zero);
    let x_limit = norm(rel.f()) + q_max * &y_limit + r_max / psi_min;
    x_limit <= cap_r
}

/// Exact minimum of a non-negative objective over pure-integer points with
/// `sum y <= cap`, plus whether the cap is known to cover the true optimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CappedOptimum {
    pub value: Rational,
    pub witness: SolutionPoint,
    /// True when no point beyond the cap can beat `value`.
    pub certified: bool,
}

pub fn minimize_enumerated(rel: &CornerRelaxation, objective: &[Rational], cap: u64) -> Result<Option<CappedOptimum>> {
    if !rel.is_pure_integer() {
        return Err(Error::Unsupported("brute-force optimum needs a pure-integer relaxation".into()));
    }
    if objective.len() != rel.q_cols().len() {
        return Err(Error::ColumnMismatch("objective length differs from |Q|".into()));
    }
    if objective.iter().any(Signed::is_negative) {
        return Err(Error::Unsupported("objective must be non-negative".into()));
    }
    let min_c = objective.iter().min().cloned().unwrap_or_else(Rational::zero);
    let mut best: Option<(Rational, SolutionPoint)> = None;
    // points come in order of increasing sum y, so once min_c * sum y reaches
    // the incumbent nothing later can improve on it
    let stopped = for_each_integer_point(rel, cap, |y, x| {
        let total: u64 = y.iter().sum();
        if let Some((b, _)) = &best {
            if &(&min_c * BigInt::from(total)) >= b {
                return ControlFlow::Break(());
            }
        }
        let value: Rational = objective.iter().zip(y).map(|(c, &v)| c * BigInt::from(v)).sum();
        if best.as_ref().is_none_or(|(b, _)| &value < b) {
            let yr = y.iter().map(|&v| Rational::from_integer(v.into())).collect();
            best = Some((value, SolutionPoint { x: x.clone(), s: vec![], y: yr }));
        }
        ControlFlow::Continue(())
    })
    .is_some();
    Ok(best.map(|(value, witness)| {
        let beyond = &min_c * Rational::from_integer(BigInt::from(cap) + 1);
        let certified = stopped || objective.is_empty() || beyond >= value;
        CappedOptimum { value, witness, certified }
    }))
}
