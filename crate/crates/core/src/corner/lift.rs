use num_bigint::BigInt;
use num_traits::Zero;

use super::{CornerRelaxation, CutCoefficients, SolutionPoint};
use crate::error::{Error, Result};
use crate::exact::{Rational, RationalVector};

/// The `(n+1)`-row program with `f0 = (f, 0)`, columns `(r, 0)` and `(q, ell(q))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedRelaxation {
    base: CornerRelaxation,
    ell: Vec<BigInt>,
    lifted: CornerRelaxation,
}

pub fn lift_program(rel: &CornerRelaxation, ell: Vec<BigInt>) -> Result<LiftedRelaxation> {
    if ell.len() != rel.q_cols().len() {
        return Err(Error::IncompleteLifting(format!(
            "{} values for {} integer columns",
            ell.len(),
            rel.q_cols().len()
        )));
    }
    let f0 = rel.f().extended(Rational::zero());
    let r0 = rel.r_cols().iter().map(|r| r.extended(Rational::zero())).collect();
    let q_ell = rel
        .q_cols()
        .iter()
        .zip(&ell)
        .map(|(q, w)| q.extended(Rational::from_integer(w.clone())))
        .collect();
    let lifted = CornerRelaxation::new(f0, r0, q_ell)?;
    Ok(LiftedRelaxation {
        base: rel.clone(),
        ell,
        lifted,
    })
}

impl LiftedRelaxation {
    pub fn base(&self) -> &CornerRelaxation {
        &self.base
    }

    pub fn ell(&self) -> &[BigInt] {
        &self.ell
    }

    /// The lifted program as an ordinary relaxation in dimension `n + 1`.
    pub fn relaxation(&self) -> CornerRelaxation {
        self.lifted.clone()
    }

    /// `Gamma_ell`: appends `x_{n+1} = sum ell(q) y(q)`; `s` and `y` carry over
    /// column by column.
    pub fn gamma_point(&self, p: &SolutionPoint) -> SolutionPoint {
        let last: Rational = self
            .ell
            .iter()
            .zip(&p.y)
            .map(|(w, y)| y * w)
            .sum();
        SolutionPoint {
            x: p.x.extended(last),
            s: p.s.clone(),
            y: p.y.clone(),
        }
    }

    pub fn gamma_point_inverse(&self, p: &SolutionPoint) -> SolutionPoint {
        SolutionPoint {
            x: p.x.truncated(),
            s: p.s.clone(),
            y: p.y.clone(),
        }
    }

    /// `Gamma°_ell`: the coefficient of `(q, ell(q))` is that of `q`.
    pub fn gamma_cut(&self, cut: &CutCoefficients) -> CutCoefficients {
        cut.clone()
    }

    pub fn gamma_cut_inverse(&self, cut: &CutCoefficients) -> CutCoefficients {
        cut.clone()
    }

    /// The lifted column paired with base integer column `j`.
    pub fn lifted_q(&self, j: usize) -> &RationalVector {
        &self.lifted.q_cols()[j]
    }
}
