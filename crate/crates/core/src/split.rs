//! Lattice-free split sets `S(alpha, f) = { x : floor(alpha f) <= alpha x <= ceil(alpha f) }`
//! and the Minkowski gauge of their centered version `S(alpha, f) - f`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{floor_ceil, is_integral, IntVector, Rational, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitSet {
    alpha: IntVector,
    f: RationalVector,
}

/// Reciprocal wall distances of a centered split: the gauge is
/// `max(c1 * alpha r, -c2 * alpha r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeCoefficients {
    pub c1: Rational,
    pub c2: Rational,
}

impl SplitSet {
    /// Requires `alpha != 0` and `alpha·f` non-integral.
    pub fn new(alpha: IntVector, f: RationalVector) -> Result<Self> {
        f.check_dim(alpha.dim())?;
        if alpha.is_zero() {
            return Err(Error::ZeroNormal);
        }
        let af = alpha.dot(&f)?;
        if is_integral(&af) {
            return Err(Error::IntegralProduct(af.to_string()));
        }
        Ok(SplitSet { alpha, f })
    }

    pub fn alpha(&self) -> &IntVector {
        &self.alpha
    }

    pub fn f(&self) -> &RationalVector {
        &self.f
    }

    pub fn dim(&self) -> usize {
        self.alpha.dim()
    }

    /// `alpha · f`, non-integral by construction.
    pub fn alpha_f(&self) -> Rational {
        self.alpha.dot(&self.f).expect("dimensions checked at construction")
    }

    /// The two wall values `(floor(alpha f), ceil(alpha f))`.
    pub fn walls(&self) -> (BigInt, BigInt) {
        floor_ceil(&self.alpha_f())
    }

    pub fn gauge_coefficients(&self) -> GaugeCoefficients {
        let af = self.alpha_f();
        let (lo, hi) = self.walls();
        GaugeCoefficients {
            c1: (Rational::from_integer(hi) - &af).recip(),
            c2: (&af - Rational::from_integer(lo)).recip(),
        }
    }

    /// Gauge of the centered split at `r`, closed form.
    pub fn gauge(&self, r: &RationalVector) -> Result<Rational> {
        let ar = self.alpha.dot(r)?;
        Ok(self.gauge_of_projection(&ar))
    }

    /// Gauge as a function of `alpha · r` alone.
    pub fn gauge_of_projection(&self, ar: &Rational) -> Rational {
        let GaugeCoefficients { c1, c2 } = self.gauge_coefficients();
        if ar.is_negative() {
            -(c2 * ar)
        } else {
            c1 * ar
        }
    }

    /// `floor(alpha f) < alpha x < ceil(alpha f)`.
    pub fn contains_in_interior(&self, x: &RationalVector) -> Result<bool> {
        let ax = self.alpha.dot(x)?;
        let (lo, hi) = self.walls();
        Ok(Rational::from_integer(lo) < ax && ax < Rational::from_integer(hi))
    }

    /// Closed membership `floor(alpha f) <= alpha x <= ceil(alpha f)`.
    pub fn contains(&self, x: &RationalVector) -> Result<bool> {
        let ax = self.alpha.dot(x)?;
        let (lo, hi) = self.walls();
        Ok(Rational::from_integer(lo) <= ax && ax <= Rational::from_integer(hi))
    }

    /// Preimage of the centered split under a linear map `A: Q^m -> Q^n`,
    /// given through its adjoint (an `m x n` integer matrix, one row per
    /// coordinate of the domain) and an anchor `f_pre` with `A f_pre = f`.
    ///
    /// Returns `S(A^t alpha, f_pre)`.
    pub fn pullback(&self, adjoint: &[IntVector], f_pre: &RationalVector) -> Result<SplitSet> {
        f_pre.check_dim(adjoint.len())?;
        let mut alpha = Vec::with_capacity(adjoint.len());
        for row in adjoint {
            if row.dim() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    found: row.dim(),
                });
            }
            let entry: BigInt = row
                .entries()
                .iter()
                .zip(self.alpha.entries())
                .map(|(a, u)| a * u)
                .sum();
            alpha.push(entry);
        }
        let alpha = IntVector::new(alpha);
        if alpha.is_zero() {
            return Err(Error::DegeneratePullback("A^t alpha is zero".into()));
        }
        let af = alpha.dot(f_pre)?;
        if is_integral(&af) {
            return Err(Error::DegeneratePullback(format!(
                "A^t alpha · f' = {af} is integral"
            )));
        }
        Ok(SplitSet { alpha, f: f_pre.clone() })
    }

    /// Like [`SplitSet::pullback`], but also takes the forward map (`n x m`,
    /// one row per image coordinate) and checks both `A f_pre = f` and that
    /// `adjoint` is its transpose.
    pub fn pullback_checked(
        &self,
        forward: &[IntVector],
        adjoint: &[IntVector],
        f_pre: &RationalVector,
    ) -> Result<SplitSet> {
        if forward.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: forward.len(),
            });
        }
        for (i, row) in forward.iter().enumerate() {
            if row.dim() != adjoint.len() {
                return Err(Error::DimensionMismatch {
                    expected: adjoint.len(),
                    found: row.dim(),
                });
            }
            for (j, adj_row) in adjoint.iter().enumerate() {
                if adj_row.dim() != forward.len() || adj_row[i] != row[j] {
                    return Err(Error::DegeneratePullback(
                        "adjoint is not the transpose of the forward map".into(),
                    ));
                }
            }
        }
        let image = apply(forward, f_pre)?;
        if &image != self.f() {
            return Err(Error::DegeneratePullback(format!(
                "A f' = ({image}) differs from f = ({})",
                self.f
            )));
        }
        self.pullback(adjoint, f_pre)
    }
}

/// Applies an integer matrix (rows as [`IntVector`]) to a rational vector.
pub fn apply(matrix: &[IntVector], v: &RationalVector) -> Result<RationalVector> {
    matrix
        .iter()
        .map(|row| row.dot(v))
        .collect::<Result<Vec<_>>>()
        .map(RationalVector::new)
}

/// Reference gauge evaluation straight from `inf { 1/lambda > 0 : lambda r in S - f }`.
///
/// Treats the split as two generic half-spaces `a·x <= b` and runs a ratio test
/// along the ray `f + lambda r`; it never touches the closed-form coefficients.
pub fn gauge_by_definition(split: &SplitSet, r: &RationalVector) -> Result<Rational> {
    r.check_dim(split.dim())?;
    let normal = split.alpha().to_rational();
    let (lo, hi) = split.walls();
    let halfspaces = [
        (normal.clone(), Rational::from_integer(hi)),
        (-&normal, -Rational::from_integer(lo)),
    ];
    let mut lambda_max: Option<Rational> = None;
    for (a, b) in &halfspaces {
        let rate = crate::exact::dot(a, r)?;
        if rate.is_positive() {
            let slack = b - crate::exact::dot(a, split.f())?;
            let limit = slack / rate;
            lambda_max = Some(match lambda_max {
                Some(cur) if cur <= limit => cur,
                _ => limit,
            });
        }
    }
    Ok(match lambda_max {
        None => Rational::zero(),
        Some(l) => Rational::one() / l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn split(alpha: &[i64], f: &[(i64, i64)]) -> SplitSet {
        SplitSet::new(IntVector::from_ints(alpha), RationalVector::from_ratios(f)).unwrap()
    }

    #[test]
    fn gauge_examples() {
        let s = split(&[1], &[(1, 4)]);
        let r = RationalVector::from_ratios(&[(3, 4)]);
        assert_eq!(s.gauge(&r).unwrap(), int(1));
        assert_eq!(gauge_by_definition(&s, &r).unwrap(), int(1));

        let s = split(&[1], &[(1, 2)]);
        for r0 in [rat(3, 7), rat(-5, 2), int(0)] {
            let r = RationalVector::new(vec![r0.clone()]);
            assert_eq!(s.gauge(&r).unwrap(), int(2) * r0.abs());
            assert_eq!(gauge_by_definition(&s, &r).unwrap(), int(2) * r0.abs());
        }

        let s = split(&[1, 1], &[(1, 2), (0, 1)]);
        let r = RationalVector::from_ratios(&[(1, 2), (0, 1)]);
        assert_eq!(s.gauge(&r).unwrap(), int(1));
        assert_eq!(gauge_by_definition(&s, &r).unwrap(), int(1));
    }

    #[test]
    fn gauge_zero_cases() {
        let s = split(&[1], &[(1, 4)]);
        assert_eq!(gauge_by_definition(&s, &RationalVector::zeros(1)).unwrap(), int(0));
        let s = split(&[1, 0], &[(1, 2), (1, 2)]);
        let r = RationalVector::from_ints(&[0, 7]);
        assert_eq!(gauge_by_definition(&s, &r).unwrap(), int(0));
        assert_eq!(s.gauge(&r).unwrap(), int(0));
    }

    #[test]
    fn coefficients_sum_to_unit_width() {
        let s = split(&[2, 3], &[(1, 3), (1, 7)]);
        let GaugeCoefficients { c1, c2 } = s.gauge_coefficients();
        assert!(c1 > int(0) && c2 > int(0));
        assert_eq!(c1.recip() + c2.recip(), int(1));
    }

    #[test]
    fn interior_membership() {
        let s = split(&[1], &[(1, 2)]);
        assert!(s.contains_in_interior(&RationalVector::from_ratios(&[(1, 2)])).unwrap());
        assert!(!s.contains_in_interior(&RationalVector::from_ints(&[1])).unwrap());
        let s = split(&[2, 3], &[(1, 4), (0, 1)]);
        for a in -4..=4 {
            for b in -4..=4 {
                let x = RationalVector::from_ints(&[a, b]);
                assert!(!s.contains_in_interior(&x).unwrap());
            }
        }
    }

    #[test]
    fn rejects_bad_splits() {
        assert_eq!(
            SplitSet::new(IntVector::from_ints(&[0, 0]), RationalVector::from_ratios(&[(1, 2), (0, 1)])),
            Err(Error::ZeroNormal)
        );
        assert!(matches!(
            SplitSet::new(IntVector::from_ints(&[2]), RationalVector::from_ratios(&[(1, 2)])),
            Err(Error::IntegralProduct(_))
        ));
        let s = split(&[1], &[(1, 2)]);
        assert!(matches!(
            s.gauge(&RationalVector::zeros(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pullback_trivial_lifting_map() {
        // A: (x1, x2) -> x1 + x2, adjoint x -> (x, x)
        let s = split(&[1], &[(1, 4)]);
        let forward = [IntVector::from_ints(&[1, 1])];
        let adjoint = [IntVector::from_ints(&[1]), IntVector::from_ints(&[1])];
        let f_pre = RationalVector::from_ratios(&[(1, 4), (0, 1)]);
        let pulled = s.pullback_checked(&forward, &adjoint, &f_pre).unwrap();
        assert_eq!(pulled, split(&[1, 1], &[(1, 4), (0, 1)]));
    }

    #[test]
    fn pullback_alpha_aggregation_map() {
        // A: (x1, x2, x3) -> (2 x1 - 3 x2, x3), u = (1, 1)
        let f0 = RationalVector::from_ratios(&[(1, 3), (1, 5)]);
        let alpha = IntVector::from_ints(&[2, -3]);
        let af0 = alpha.dot(&f0).unwrap();
        let s = SplitSet::new(IntVector::from_ints(&[1, 1]), RationalVector::new(vec![af0, int(0)])).unwrap();
        let forward = [IntVector::from_ints(&[2, -3, 0]), IntVector::from_ints(&[0, 0, 1])];
        let adjoint = [
            IntVector::from_ints(&[2, 0]),
            IntVector::from_ints(&[-3, 0]),
            IntVector::from_ints(&[0, 1]),
        ];
        let f_pre = f0.extended(int(0));
        let pulled = s.pullback_checked(&forward, &adjoint, &f_pre).unwrap();
        assert_eq!(pulled, SplitSet::new(alpha.extended(BigInt::one()), f_pre).unwrap());
    }

    #[test]
    fn pullback_identity_and_errors() {
        let s = split(&[1, 2], &[(1, 3), (0, 1)]);
        let id = [IntVector::from_ints(&[1, 0]), IntVector::from_ints(&[0, 1])];
        assert_eq!(s.pullback_checked(&id, &id, s.f()).unwrap(), s);

        let zero = [IntVector::from_ints(&[0, 0])];
        assert!(matches!(
            s.pullback(&zero, &RationalVector::from_ratios(&[(1, 2)])),
            Err(Error::DegeneratePullback(_))
        ));
        let wrong_anchor = RationalVector::from_ratios(&[(1, 2), (0, 1)]);
        assert!(matches!(
            s.pullback_checked(&id, &id, &wrong_anchor),
            Err(Error::DegeneratePullback(_))
        ));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..13).prop_map(|(p, q)| rat(p, q))
    }

    fn split_and_two_dirs() -> impl Strategy<Value = (SplitSet, RationalVector, RationalVector)> {
        (1usize..=3)
            .prop_flat_map(|n| {
                (
                    proptest::collection::vec(-4i64..=4, n),
                    proptest::collection::vec((0i64..12, 2i64..13), n),
                    proptest::collection::vec(small_rational(), n),
                    proptest::collection::vec(small_rational(), n),
                )
            })
            .prop_filter_map("alpha in Z_f", |(a, f, r1, r2)| {
                let f = RationalVector::from_ratios(&f.iter().map(|&(p, q)| (p % q, q)).collect::<Vec<_>>());
                SplitSet::new(IntVector::from_ints(&a), f)
                    .ok()
                    .map(|s| (s, RationalVector::new(r1), RationalVector::new(r2)))
            })
    }

    proptest! {
        #[test]
        fn gauge_is_sublinear((s, r1, r2) in split_and_two_dirs(), t in (0i64..30, 1i64..9)) {
            let g1 = s.gauge(&r1).unwrap();
            let g2 = s.gauge(&r2).unwrap();
            prop_assert!(s.gauge(&(&r1 + &r2)).unwrap() <= &g1 + &g2);
            let t = rat(t.0, t.1);
            prop_assert_eq!(s.gauge(&r1.scale(&t)).unwrap(), &t * &g1);
            prop_assert_eq!(s.gauge(&RationalVector::zeros(s.dim())).unwrap(), int(0));
        }

        #[test]
        fn closed_form_matches_definition((s, r1, _r2) in split_and_two_dirs()) {
            prop_assert_eq!(s.gauge(&r1).unwrap(), gauge_by_definition(&s, &r1).unwrap());
        }

        #[test]
        fn gauge_level_sets_are_membership((s, r1, _r2) in split_and_two_dirs()) {
            let x = s.f() + &r1;
            let g = s.gauge(&r1).unwrap();
            prop_assert_eq!(g <= int(1), s.contains(&x).unwrap());
            prop_assert_eq!(g < int(1), s.contains_in_interior(&x).unwrap());
        }
    }
}
