//! Corner relaxations `x = f + sum r s(r) + sum q y(q)`, cuts on them as
//! coefficient tables, and split disjunctions.
//!
//! Columns are kept in order; a cut's `psi[i]` belongs to `r_cols[i]` and
//! `pi[j]` to `q_cols[j]`, and the same for a point's `s` and `y`.

mod enumerate;
mod extend;
mod hull;
mod lift;

pub use enumerate::{check_validity_enumerated, for_each_integer_point, minimize_enumerated, CappedOptimum, ValidityOutcome};
pub use extend::{extend_split_cut, ExtendedCutFunction};
pub use hull::{hull_certificate, HullCertificate};
pub use lift::{lift_program, LiftedRelaxation};

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cutfn::{trivial_lifting, AlphaCut};
use crate::error::{Error, Result};
use crate::exact::{floor_ceil, is_integral, IntVector, Rational, RationalVector};
use crate::split::SplitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerRelaxation {
    f: RationalVector,
    r_cols: Vec<RationalVector>,
    q_cols: Vec<RationalVector>,
}

impl CornerRelaxation {
    /// Validates `f in [0,1]^n \ Z^n`, column dimensions, and column uniqueness.
    pub fn new(f: RationalVector, r_cols: Vec<RationalVector>, q_cols: Vec<RationalVector>) -> Result<Self> {
        let n = f.dim();
        if n == 0 {
            return Err(Error::InvalidRelaxation("dimension must be positive".into()));
        }
        if f.iter().any(|v| v.is_negative() || v > &Rational::one()) {
            return Err(Error::InvalidRelaxation(format!("f = ({f}) is not in [0,1]^n")));
        }
        if f.is_integral() {
            return Err(Error::InvalidRelaxation(format!("f = ({f}) is integral")));
        }
        for cols in [&r_cols, &q_cols] {
            let mut seen = HashSet::new();
            for c in cols {
                c.check_dim(n)?;
                if !seen.insert(c) {
                    return Err(Error::DuplicateColumn(c.to_string()));
                }
            }
        }
        Ok(CornerRelaxation { f, r_cols, q_cols })
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    pub fn f(&self) -> &RationalVector {
        &self.f
    }

    pub fn r_cols(&self) -> &[RationalVector] {
        &self.r_cols
    }

    pub fn q_cols(&self) -> &[RationalVector] {
        &self.q_cols
    }

    pub fn is_pure_integer(&self) -> bool {
        self.r_cols.is_empty()
    }

    /// Number of non-basic variables `|R| + |Q|`.
    pub fn num_columns(&self) -> usize {
        self.r_cols.len() + self.q_cols.len()
    }

    /// `x = f + sum r s(r) + sum q y(q)`.
    pub fn basic_point(&self, s: &[Rational], y: &[Rational]) -> Result<RationalVector> {
        self.check_lengths(s.len(), y.len())?;
        let mut x = self.f.clone();
        for (col, v) in self.r_cols.iter().zip(s).chain(self.q_cols.iter().zip(y)) {
            if !v.is_zero() {
                x = &x + &col.scale(v);
            }
        }
        Ok(x)
    }

    /// `alpha · column` for every column, `R` first then `Q`.
    pub fn projections(&self, alpha: &IntVector) -> Result<(Vec<Rational>, Vec<Rational>)> {
        let pr = self.r_cols.iter().map(|r| alpha.dot(r)).collect::<Result<_>>()?;
        let pq = self.q_cols.iter().map(|q| alpha.dot(q)).collect::<Result<_>>()?;
        Ok((pr, pq))
    }

    fn check_lengths(&self, s: usize, y: usize) -> Result<()> {
        if s != self.r_cols.len() || y != self.q_cols.len() {
            return Err(Error::ColumnMismatch(format!(
                "expected {} + {} entries, got {} + {}",
                self.r_cols.len(),
                self.q_cols.len(),
                s,
                y
            )));
        }
        Ok(())
    }
}

/// A point `(x, s, y)`. `x` is stored, and [`SolutionPoint::in_linear_relaxation`]
/// re-derives it from `(s, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionPoint {
    pub x: RationalVector,
    pub s: Vec<Rational>,
    pub y: Vec<Rational>,
}

impl SolutionPoint {
    /// Builds the point with `x` computed from the defining equation.
    pub fn from_nonbasic(rel: &CornerRelaxation, s: Vec<Rational>, y: Vec<Rational>) -> Result<Self> {
        let x = rel.basic_point(&s, &y)?;
        Ok(SolutionPoint { x, s, y })
    }

    /// Membership in `C_LP`: the equation holds and `s, y >= 0`.
    pub fn in_linear_relaxation(&self, rel: &CornerRelaxation) -> bool {
        self.s.iter().chain(&self.y).all(|v| !v.is_negative())
            && rel.basic_point(&self.s, &self.y).is_ok_and(|x| x == self.x)
    }

    /// Membership in `CC`: additionally `x` integral.
    pub fn in_continuous_relaxation(&self, rel: &CornerRelaxation) -> bool {
        self.in_linear_relaxation(rel) && self.x.is_integral()
    }

    /// Membership in `C`: additionally `y` integral.
    pub fn in_corner(&self, rel: &CornerRelaxation) -> bool {
        self.in_continuous_relaxation(rel) && self.y.iter().all(is_integral)
    }

    /// Nonbasic part as one vector, `s` then `y`.
    pub fn nonbasic(&self) -> Vec<Rational> {
        self.s.iter().chain(&self.y).cloned().collect()
    }

    pub fn combine(points: &[(Rational, SolutionPoint)]) -> Option<SolutionPoint> {
        let (_, first) = points.first()?;
        let mut x = RationalVector::zeros(first.x.dim());
        let mut s = vec![Rational::zero(); first.s.len()];
        let mut y = vec![Rational::zero(); first.y.len()];
        for (w, p) in points {
            x = &x + &p.x.scale(w);
            for (acc, v) in s.iter_mut().zip(&p.s) {
                *acc += w * v;
            }
            for (acc, v) in y.iter_mut().zip(&p.y) {
                *acc += w * v;
            }
        }
        Some(SolutionPoint { x, s, y })
    }
}

/// Cut `sum psi(r) s(r) + sum pi(q) y(q) >= 1` with non-negative tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutCoefficients {
    pub psi: Vec<Rational>,
    pub pi: Vec<Rational>,
}

impl CutCoefficients {
    pub fn new(psi: Vec<Rational>, pi: Vec<Rational>) -> Result<Self> {
        if let Some(v) = psi.iter().chain(&pi).find(|v| v.is_negative()) {
            return Err(Error::ColumnMismatch(format!("negative cut coefficient {v}")));
        }
        Ok(CutCoefficients { psi, pi })
    }

    /// The alpha-cut restricted to the columns of `rel`.
    pub fn alpha_cut(rel: &CornerRelaxation, cut: &AlphaCut) -> Result<Self> {
        let psi = rel.r_cols().iter().map(|r| cut.psi(r)).collect::<Result<_>>()?;
        let pi = rel.q_cols().iter().map(|q| cut.pi(q)).collect::<Result<_>>()?;
        Ok(CutCoefficients { psi, pi })
    }

    /// The lattice-free split cut: the gauge of `S(alpha, f) - f` on every column.
    pub fn lattice_free(rel: &CornerRelaxation, split: &SplitSet) -> Result<Self> {
        let psi = rel.r_cols().iter().map(|r| split.gauge(r)).collect::<Result<_>>()?;
        let pi = rel.q_cols().iter().map(|q| split.gauge(q)).collect::<Result<_>>()?;
        Ok(CutCoefficients { psi, pi })
    }

    /// `(psi~, pi~)` of a lifted split in dimension `n + 1`, with the minimizing
    /// lifting values per `Q` column.
    pub fn trivial_lifting(rel: &CornerRelaxation, split: &SplitSet) -> Result<(Self, Vec<BigInt>)> {
        let psi = rel
            .r_cols()
            .iter()
            .map(|r| crate::cutfn::psi_plus(split, r))
            .collect::<Result<_>>()?;
        let (pi, ell): (Vec<_>, Vec<_>) = rel
            .q_cols()
            .iter()
            .map(|q| trivial_lifting(split, q))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip();
        Ok((CutCoefficients { psi, pi }, ell))
    }

    pub fn check_columns(&self, rel: &CornerRelaxation) -> Result<()> {
        rel.check_lengths(self.psi.len(), self.pi.len())
    }

    /// Left-hand side `sum psi s + sum pi y` at `p`.
    pub fn value(&self, p: &SolutionPoint) -> Rational {
        let a: Rational = self.psi.iter().zip(&p.s).map(|(c, v)| c * v).sum();
        let b: Rational = self.pi.iter().zip(&p.y).map(|(c, v)| c * v).sum();
        a + b
    }

    pub fn is_satisfied(&self, p: &SolutionPoint) -> bool {
        self.value(p) >= Rational::one()
    }

    /// Coefficients as one row, `psi` then `pi`.
    pub fn row(&self) -> Vec<Rational> {
        self.psi.iter().chain(&self.pi).cloned().collect()
    }
}

/// `a` dominates `b` (every `C_LP` point satisfying `a` satisfies `b`), which
/// for non-negative cuts on a non-empty relaxation is `a <= b` pointwise.
pub fn dominates(a: &CutCoefficients, b: &CutCoefficients) -> Result<bool> {
    if a.psi.len() != b.psi.len() || a.pi.len() != b.pi.len() {
        return Err(Error::ColumnMismatch("cuts are on different column sets".into()));
    }
    Ok(a.psi.iter().zip(&b.psi).all(|(x, y)| x <= y) && a.pi.iter().zip(&b.pi).all(|(x, y)| x <= y))
}

/// Split disjunction `alpha x + sum beta(q) y(q) <= floor(alpha f)` or `>= ceil(alpha f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disjunction {
    alpha: IntVector,
    beta: Vec<BigInt>,
    alpha_f: Rational,
    lo: Rational,
    hi: Rational,
}

impl Disjunction {
    pub fn new(rel: &CornerRelaxation, alpha: IntVector, beta: Vec<BigInt>) -> Result<Self> {
        let alpha_f = alpha.dot(rel.f())?;
        if is_integral(&alpha_f) {
            return Err(Error::IntegralProduct(alpha_f.to_string()));
        }
        if beta.len() != rel.q_cols().len() {
            return Err(Error::ColumnMismatch(format!(
                "beta has {} entries for {} integer columns",
                beta.len(),
                rel.q_cols().len()
            )));
        }
        let (lo, hi) = floor_ceil(&alpha_f);
        Ok(Disjunction {
            alpha,
            beta,
            alpha_f,
            lo: Rational::from_integer(lo),
            hi: Rational::from_integer(hi),
        })
    }

    /// `beta = 0`, the disjunction on `x` alone.
    pub fn on_x(rel: &CornerRelaxation, alpha: IntVector) -> Result<Self> {
        let k = rel.q_cols().len();
        Self::new(rel, alpha, vec![BigInt::zero(); k])
    }

    pub fn alpha(&self) -> &IntVector {
        &self.alpha
    }

    pub fn beta(&self) -> &[BigInt] {
        &self.beta
    }

    pub fn alpha_f(&self) -> &Rational {
        &self.alpha_f
    }

    /// `(floor(alpha f), ceil(alpha f))`.
    pub fn walls(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    /// `alpha x + sum beta(q) y(q)`.
    pub fn lhs(&self, p: &SolutionPoint) -> Result<Rational> {
        let ax = self.alpha.dot(&p.x)?;
        let by: Rational = self
            .beta
            .iter()
            .zip(&p.y)
            .map(|(b, y)| y * b)
            .sum();
        Ok(ax + by)
    }

    pub fn contains(&self, p: &SolutionPoint) -> Result<bool> {
        let v = self.lhs(p)?;
        Ok(v <= self.lo || v >= self.hi)
    }

    /// Coefficients of `lhs - alpha f` in the non-basic variables, `s` then `y`:
    /// `alpha r` and `alpha q + beta(q)`.
    pub fn nonbasic_row(&self, rel: &CornerRelaxation) -> Result<Vec<Rational>> {
        let (pr, pq) = rel.projections(&self.alpha)?;
        Ok(pr
            .into_iter()
            .chain(pq.into_iter().zip(&self.beta).map(|(v, b)| v + Rational::from_integer(b.clone())))
            .collect())
    }

    /// `S((alpha, 1), (f, 0))`, the split of the lifted program this disjunction maps to.
    pub fn lifted_split(&self, rel: &CornerRelaxation) -> SplitSet {
        SplitSet::new(self.alpha.extended(BigInt::one()), rel.f().extended(Rational::zero()))
            .expect("alpha·f is non-integral")
    }
}

pub fn in_disjunction(d: &Disjunction, p: &SolutionPoint) -> Result<bool> {
    d.contains(p)
}
