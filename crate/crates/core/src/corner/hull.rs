use num_traits::{One, Signed, Zero};

use super::{CornerRelaxation, CutCoefficients, SolutionPoint};
use crate::error::{Error, Result};
use crate::exact::{IntVector, Rational};
use crate::split::SplitSet;

/// `p` written as a convex combination of points of `C_LP` lying on or beyond
/// the walls of `S(alpha, f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullCertificate {
    pub pieces: Vec<(Rational, SolutionPoint)>,
    /// Value of the lattice-free cut at `p`.
    pub cut_value: Rational,
}

impl HullCertificate {
    /// Checks weights, membership of every piece, and exact recombination to `p`.
    pub fn verify(&self, rel: &CornerRelaxation, split: &SplitSet, p: &SolutionPoint) -> Result<()> {
        let total: Rational = self.pieces.iter().map(|(w, _)| w.clone()).sum();
        if !total.is_one() || self.pieces.iter().any(|(w, _)| !w.is_positive()) {
            return Err(Error::Certificate("weights are not a convex combination".into()));
        }
        for (_, piece) in &self.pieces {
            if !piece.in_linear_relaxation(rel) {
                return Err(Error::Certificate("piece outside C_LP".into()));
            }
            if split.contains_in_interior(&piece.x)? {
                return Err(Error::Certificate(format!("piece x = ({}) strictly inside the split", piece.x)));
            }
        }
        if SolutionPoint::combine(&self.pieces).as_ref() != Some(p) {
            return Err(Error::Certificate("combination does not reproduce p".into()));
        }
        Ok(())
    }
}

/// Splits a point that satisfies the lattice-free cut of `S(alpha, f)` into
/// points on the disjunction sides, one per column with positive gauge, each
/// shifted by the zero-gauge part of `p`.
pub fn hull_certificate(rel: &CornerRelaxation, alpha: &IntVector, p: &SolutionPoint) -> Result<HullCertificate> {
    if !p.in_linear_relaxation(rel) {
        return Err(Error::NotInLinearRelaxation(format!("x = ({})", p.x)));
    }
    let split = SplitSet::new(alpha.clone(), rel.f().clone())?;
    let cut = CutCoefficients::lattice_free(rel, &split)?;
    let nu = cut.value(p);
    if nu < Rational::one() {
        return Err(Error::CutViolated(format!("lattice-free cut value {nu} < 1")));
    }

    let ks = rel.r_cols().len();
    let coeffs = cut.row();
    let values = p.nonbasic();
    let zero_gauge: Vec<Rational> = coeffs
        .iter()
        .zip(&values)
        .map(|(c, v)| if c.is_zero() { v.clone() } else { Rational::zero() })
        .collect();

    let mut pieces = Vec::new();
    for (j, (c, v)) in coeffs.iter().zip(&values).enumerate() {
        if c.is_zero() || v.is_zero() {
            continue;
        }
        let weight = c * v / &nu;
        let mut nb = zero_gauge.clone();
        nb[j] = &nu / c;
        let (s, y) = nb.split_at(ks);
        pieces.push((weight, SolutionPoint::from_nonbasic(rel, s.to_vec(), y.to_vec())?));
    }
    let cert = HullCertificate { pieces, cut_value: nu };
    cert.verify(rel, &split, p)?;
    Ok(cert)
}
