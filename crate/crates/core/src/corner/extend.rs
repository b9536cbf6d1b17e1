use std::collections::HashMap;

use super::{dominates, CornerRelaxation, CutCoefficients};
use crate::cutfn::AlphaCut;
use crate::error::{Error, Result};
use crate::exact::{IntVector, Rational, RationalVector};

/// A cut defined on every column: the given table on the relaxation's
/// columns and the alpha-cut formula elsewhere.
#[derive(Clone, Debug)]
pub struct ExtendedCutFunction {
    table_psi: HashMap<RationalVector, Rational>,
    table_pi: HashMap<RationalVector, Rational>,
    fallback: AlphaCut,
}

impl ExtendedCutFunction {
    pub fn fallback(&self) -> &AlphaCut {
        &self.fallback
    }

    pub fn psi(&self, r: &RationalVector) -> Result<Rational> {
        match self.table_psi.get(r) {
            Some(v) => Ok(v.clone()),
            None => self.fallback.psi(r),
        }
    }

    pub fn pi(&self, q: &RationalVector) -> Result<Rational> {
        match self.table_pi.get(q) {
            Some(v) => Ok(v.clone()),
            None => self.fallback.pi(q),
        }
    }

    /// The extension evaluated on the columns of `rel`.
    pub fn restrict(&self, rel: &CornerRelaxation) -> Result<CutCoefficients> {
        let psi = rel.r_cols().iter().map(|r| self.psi(r)).collect::<Result<_>>()?;
        let pi = rel.q_cols().iter().map(|q| self.pi(q)).collect::<Result<_>>()?;
        CutCoefficients::new(psi, pi)
    }
}

/// Extends `cut` beyond the columns of `rel`; requires the `alpha_bar`-cut to
/// dominate `cut` on those columns, so the extension dominates it everywhere.
pub fn extend_split_cut(rel: &CornerRelaxation, cut: &CutCoefficients, alpha_bar: IntVector) -> Result<ExtendedCutFunction> {
    cut.check_columns(rel)?;
    let fallback = AlphaCut::new(alpha_bar, rel.f().clone())?;
    let reference = CutCoefficients::alpha_cut(rel, &fallback)?;
    if !dominates(&reference, cut)? {
        return Err(Error::NotDominated(format!("alpha = ({})", fallback.alpha())));
    }
    Ok(ExtendedCutFunction {
        table_psi: rel.r_cols().iter().cloned().zip(cut.psi.iter().cloned()).collect(),
        table_pi: rel.q_cols().iter().cloned().zip(cut.pi.iter().cloned()).collect(),
        fallback,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn tenth() -> CornerRelaxation {
        CornerRelaxation::new(
            RationalVector::from_ratios(&[(1, 2)]),
            vec![],
            vec![RationalVector::from_ratios(&[(11, 20)]), RationalVector::from_ratios(&[(3, 5)])],
        )
        .unwrap()
    }

    #[test]
    fn extension_of_alpha_cut_uses_formula_off_support() {
        let cut = CutCoefficients::new(vec![], vec![rat(9, 10), rat(4, 5)]).unwrap();
        let ext = extend_split_cut(&tenth(), &cut, IntVector::from_ints(&[1])).unwrap();
        assert_eq!(ext.pi(&RationalVector::from_ratios(&[(1, 4)])).unwrap(), rat(1, 2));
        assert_eq!(ext.restrict(&tenth()).unwrap(), cut);
    }

    #[test]
    fn weakened_table_is_kept() {
        let cut = CutCoefficients::new(vec![], vec![int(1), int(1)]).unwrap();
        let ext = extend_split_cut(&tenth(), &cut, IntVector::from_ints(&[1])).unwrap();
        assert_eq!(ext.pi(&RationalVector::from_ratios(&[(11, 20)])).unwrap(), int(1));
        assert_eq!(ext.pi(&RationalVector::from_ratios(&[(3, 4)])).unwrap(), rat(1, 2));
    }

    #[test]
    fn stronger_cut_is_rejected() {
        let cut = CutCoefficients::new(vec![], vec![rat(1, 10), rat(1, 10)]).unwrap();
        assert!(matches!(
            extend_split_cut(&tenth(), &cut, IntVector::from_ints(&[1])),
            Err(Error::NotDominated(_))
        ));
    }
}
