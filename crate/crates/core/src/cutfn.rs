//! The GMI function, alpha-cut functions, and geometric lifting of split gauges.
//!
//! `pi` is always the min form `min{ [q]/(1-[f]), (1-[q])/[f] }`, i.e. the
//! trivial lifting `min_w psi(q + w)` of the interval gauge.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{frac, is_integral, IntVector, Rational, RationalVector};
use crate::split::SplitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmiFunction {
    f_frac: Rational,
}

impl GmiFunction {
    pub fn new(f: &Rational) -> Result<Self> {
        let f_frac = frac(f);
        if f_frac.is_zero() {
            return Err(Error::IntegralGmiAnchor);
        }
        Ok(GmiFunction { f_frac })
    }

    /// `[f]`, in `(0, 1)`.
    pub fn f_frac(&self) -> &Rational {
        &self.f_frac
    }

    pub fn psi(&self, r: &Rational) -> Rational {
        if r.is_negative() {
            -r / &self.f_frac
        } else {
            r / (Rational::one() - &self.f_frac)
        }
    }

    pub fn pi(&self, q: &Rational) -> Rational {
        let t = frac(q);
        let up = &t / (Rational::one() - &self.f_frac);
        let down = (Rational::one() - &t) / &self.f_frac;
        up.min(down)
    }
}

pub fn gmi_psi(g: &GmiFunction, r: &Rational) -> Rational {
    g.psi(r)
}

pub fn gmi_pi(g: &GmiFunction, q: &Rational) -> Rational {
    g.pi(q)
}

/// The alpha-cut `(psi_alpha, pi_alpha)` for an `n`-row relaxation anchored at `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaCut {
    alpha: IntVector,
    f: RationalVector,
    gmi: GmiFunction,
}

impl AlphaCut {
    pub fn new(alpha: IntVector, f: RationalVector) -> Result<Self> {
        let af = alpha.dot(&f)?;
        if is_integral(&af) {
            return Err(Error::IntegralProduct(af.to_string()));
        }
        let gmi = GmiFunction::new(&af)?;
        Ok(AlphaCut { alpha, f, gmi })
    }

    pub fn alpha(&self) -> &IntVector {
        &self.alpha
    }

    pub fn f(&self) -> &RationalVector {
        &self.f
    }

    pub fn gmi(&self) -> &GmiFunction {
        &self.gmi
    }

    pub fn psi(&self, r: &RationalVector) -> Result<Rational> {
        Ok(self.gmi.psi(&self.alpha.dot(r)?))
    }

    pub fn pi(&self, q: &RationalVector) -> Result<Rational> {
        Ok(self.gmi.pi(&self.alpha.dot(q)?))
    }

    /// The lifted split `S((alpha, 1), (f, 0))` whose trivial lifting is this cut.
    pub fn lifted_split(&self) -> SplitSet {
        SplitSet::new(
            self.alpha.extended(BigInt::one()),
            self.f.extended(Rational::zero()),
        )
        .expect("alpha·f is non-integral")
    }
}

pub fn alpha_psi(c: &AlphaCut, r: &RationalVector) -> Result<Rational> {
    c.psi(r)
}

pub fn alpha_pi(c: &AlphaCut, q: &RationalVector) -> Result<Rational> {
    c.pi(q)
}

/// `min over integers w of gauge(S, (q, w))` for a split in dimension `n + 1`,
/// with a minimizing `w`.
///
/// The gauge depends on `(q, w)` only through `t = alpha' q + a w`, where `a`
/// is the last normal coordinate, and is convex piecewise linear in `t` with
/// its zero at `t = 0`. So the integer minimum is at one of the two points of
/// `alpha' q + a Z` bracketing zero.
pub fn trivial_lifting(split: &SplitSet, q: &RationalVector) -> Result<(Rational, BigInt)> {
    let n = split.dim().checked_sub(1).ok_or(Error::MissingLiftCoordinate)?;
    q.check_dim(n)?;
    let a = split.alpha()[n].clone();
    if a.is_zero() {
        return Err(Error::MissingLiftCoordinate);
    }
    let head = IntVector::new(split.alpha().entries()[..n].to_vec());
    let base = head.dot(q)?;
    let width = Rational::from_integer(a.abs());

    // t_up in [0, |a|), t_down = t_up - |a|
    let t_up = &base - (&base / &width).floor() * &width;
    let t_down = &t_up - &width;
    let g_up = split.gauge_of_projection(&t_up);
    let g_down = split.gauge_of_projection(&t_down);
    let (value, t) = if g_down < g_up { (g_down, t_down) } else { (g_up, t_up) };
    let w = (t - base) / Rational::from_integer(a);
    debug_assert!(is_integral(&w));
    Ok((value, w.to_integer()))
}

/// `psi+(r) = gauge(S, (r, 0))`.
pub fn psi_plus(split: &SplitSet, r: &RationalVector) -> Result<Rational> {
    split.gauge(&r.extended(Rational::zero()))
}

/// `pi+(q) = gauge(S, (q, ell(q)))`.
pub fn pi_plus(
    split: &SplitSet,
    ell: &HashMap<RationalVector, BigInt>,
    q: &RationalVector,
) -> Result<Rational> {
    let w = ell
        .get(q)
        .ok_or_else(|| Error::IncompleteLifting(q.to_string()))?;
    split.gauge(&q.extended(Rational::from_integer(w.clone())))
}

/// Smallest positive `L` with `alpha + L` giving the same `pi` table, i.e. the
/// lcm of the denominators of `f` and every `q`. Only meaningful for `n = 1`.
pub fn pi_period<'a>(f: &Rational, qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter().fold(f.denom().clone(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn rv(entries: &[(i64, i64)]) -> RationalVector {
        RationalVector::from_ratios(entries)
    }

    fn alpha_cut(alpha: &[i64], f: &[(i64, i64)]) -> AlphaCut {
        AlphaCut::new(IntVector::from_ints(alpha), rv(f)).unwrap()
    }

    fn split(alpha: &[i64], f: &[(i64, i64)]) -> SplitSet {
        SplitSet::new(IntVector::from_ints(alpha), rv(f)).unwrap()
    }

    /// Independent lifting oracle: scan a window of integer shifts.
    fn brute_gmi_pi(g: &GmiFunction, q: &Rational) -> Rational {
        (-3..=3).map(|w| g.psi(&(q + int(w)))).min().unwrap()
    }

    #[test]
    fn gmi_psi_examples() {
        let g = GmiFunction::new(&rat(1, 4)).unwrap();
        assert_eq!(gmi_psi(&g, &rat(3, 4)), int(1));
        assert_eq!(gmi_psi(&g, &int(0)), int(0));
        let g = GmiFunction::new(&rat(1, 2)).unwrap();
        assert_eq!(gmi_psi(&g, &rat(-1, 2)), int(1));
    }

    #[test]
    fn gmi_pi_examples() {
        let half = GmiFunction::new(&rat(1, 2)).unwrap();
        assert_eq!(gmi_pi(&half, &rat(1, 2)), int(1));
        assert_eq!(gmi_pi(&half, &int(2)), int(0));
        let quarter = GmiFunction::new(&rat(1, 4)).unwrap();
        assert_eq!(gmi_pi(&quarter, &rat(1, 4)), rat(1, 3));
        assert_eq!(brute_gmi_pi(&quarter, &rat(1, 4)), rat(1, 3));
        // value 1 sits at [q] = 1 - [f]
        assert_eq!(gmi_pi(&quarter, &rat(3, 4)), int(1));
    }

    #[test]
    fn gmi_rejects_integral_anchor() {
        assert_eq!(GmiFunction::new(&int(3)), Err(Error::IntegralGmiAnchor));
        assert!(matches!(
            AlphaCut::new(IntVector::from_ints(&[2]), rv(&[(1, 2)])),
            Err(Error::IntegralProduct(_))
        ));
    }

    #[test]
    fn alpha_psi_examples() {
        let c = alpha_cut(&[1, 1], &[(1, 4), (0, 1)]);
        assert_eq!(alpha_psi(&c, &rv(&[(3, 4), (0, 1)])).unwrap(), int(1));
        let c = alpha_cut(&[1], &[(1, 2)]);
        assert_eq!(alpha_psi(&c, &rv(&[(1, 1)])).unwrap(), int(2));
        let c = alpha_cut(&[2, -1], &[(1, 3), (1, 2)]);
        assert_eq!(alpha_psi(&c, &rv(&[(1, 2), (1, 1)])).unwrap(), int(0));
    }

    #[test]
    fn alpha_pi_examples() {
        let c = alpha_cut(&[1], &[(1, 2)]);
        assert_eq!(alpha_pi(&c, &rv(&[(11, 20)])).unwrap(), rat(9, 10));
        let c = alpha_cut(&[3], &[(1, 2)]);
        assert_eq!(alpha_pi(&c, &rv(&[(11, 20)])).unwrap(), rat(7, 10));
        let c = alpha_cut(&[5], &[(1, 2)]);
        assert_eq!(alpha_pi(&c, &rv(&[(3, 5)])).unwrap(), int(0));
    }

    #[test]
    fn trivial_lifting_examples() {
        let s = split(&[1, 1], &[(1, 2), (0, 1)]);
        assert_eq!(
            trivial_lifting(&s, &rv(&[(3, 4)])).unwrap(),
            (rat(1, 2), BigInt::from(-1))
        );
        // oracle: scan w in [-4, 4]
        let brute = (-4..=4)
            .map(|w| s.gauge(&rv(&[(3, 4), (w, 1)])).unwrap())
            .min()
            .unwrap();
        assert_eq!(brute, rat(1, 2));
        assert_eq!(
            trivial_lifting(&s, &rv(&[(2, 1)])).unwrap(),
            (int(0), BigInt::from(-2))
        );
    }

    #[test]
    fn trivial_lifting_needs_last_coordinate() {
        let s = split(&[1, 0], &[(1, 2), (0, 1)]);
        assert_eq!(
            trivial_lifting(&s, &rv(&[(1, 3)])),
            Err(Error::MissingLiftCoordinate)
        );
    }

    #[test]
    fn plus_cut_examples() {
        let s = split(&[1, 1], &[(1, 2), (0, 1)]);
        assert_eq!(psi_plus(&s, &rv(&[(1, 4)])).unwrap(), rat(1, 2));
        let q = rv(&[(3, 4)]);
        let mut ell = HashMap::new();
        ell.insert(q.clone(), BigInt::from(-1));
        assert_eq!(pi_plus(&s, &ell, &q).unwrap(), rat(1, 2));
        ell.insert(q.clone(), BigInt::from(0));
        let weak = pi_plus(&s, &ell, &q).unwrap();
        assert_eq!(weak, rat(3, 2));
        assert!(weak >= trivial_lifting(&s, &q).unwrap().0);
        assert!(matches!(
            pi_plus(&s, &ell, &rv(&[(1, 3)])),
            Err(Error::IncompleteLifting(_))
        ));
    }

    #[test]
    fn period_of_bad_family() {
        let q = [rat(11, 20), rat(3, 5)];
        assert_eq!(pi_period(&rat(1, 2), q.iter()), BigInt::from(20));
    }

    fn anchor() -> impl Strategy<Value = Rational> {
        (2i64..40).prop_flat_map(|q| (1..q).prop_map(move |p| rat(p, q)))
    }

    fn any_rational() -> impl Strategy<Value = Rational> {
        (-200i64..200, 1i64..30).prop_map(|(p, q)| rat(p, q))
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (1i64..40).prop_flat_map(|q| (-2 * q..=2 * q).prop_map(move |p| rat(p, q)))
    }

    fn cut_with_points() -> impl Strategy<Value = (AlphaCut, RationalVector, RationalVector)> {
        (1usize..=3)
            .prop_flat_map(|n| {
                (
                    proptest::collection::vec(-6i64..=6, n),
                    proptest::collection::vec((0i64..15, 2i64..16), n),
                    proptest::collection::vec(any_rational(), n),
                    proptest::collection::vec(any_rational(), n),
                )
            })
            .prop_filter_map("alpha in Z_f", |(a, f, r, q)| {
                let f = RationalVector::from_ratios(&f.iter().map(|&(p, d)| (p % d, d)).collect::<Vec<_>>());
                AlphaCut::new(IntVector::from_ints(&a), f)
                    .ok()
                    .map(|c| (c, RationalVector::new(r), RationalVector::new(q)))
            })
    }

    proptest! {
        #[test]
        fn gmi_pi_is_lifting_of_interval_gauge(f in anchor(), q in small_rational()) {
            let g = GmiFunction::new(&f).unwrap();
            prop_assert_eq!(g.pi(&q), brute_gmi_pi(&g, &q));
            let s = SplitSet::new(IntVector::from_ints(&[1]), RationalVector::new(vec![f])).unwrap();
            prop_assert_eq!(g.psi(&q), s.gauge(&RationalVector::new(vec![q.clone()])).unwrap());
        }

        #[test]
        fn alpha_cut_sign_symmetry((c, r, q) in cut_with_points()) {
            let neg = AlphaCut::new(c.alpha().negated(), c.f().clone()).unwrap();
            prop_assert_eq!(c.psi(&r).unwrap(), neg.psi(&r).unwrap());
            prop_assert_eq!(c.pi(&q).unwrap(), neg.pi(&q).unwrap());
        }

        #[test]
        fn alpha_pi_periodic_and_below_psi((c, _r, q) in cut_with_points(), z in proptest::collection::vec(-5i64..=5, 3)) {
            let shift = RationalVector::from_ints(&z[..q.dim()]);
            prop_assert_eq!(c.pi(&(&q + &shift)).unwrap(), c.pi(&q).unwrap());
            prop_assert!(c.pi(&q).unwrap() <= c.psi(&q).unwrap());
        }

        #[test]
        fn alpha_cut_is_geometric_lifting((c, r, q) in cut_with_points()) {
            let s = c.lifted_split();
            prop_assert_eq!(c.psi(&r).unwrap(), psi_plus(&s, &r).unwrap());
            let (value, w) = trivial_lifting(&s, &q).unwrap();
            prop_assert_eq!(c.pi(&q).unwrap(), value.clone());
            prop_assert_eq!(s.gauge(&q.extended(Rational::from_integer(w.clone()))).unwrap(), value.clone());
            // the two-candidate search agrees with a window scan around the witness
            let scan = (-5i64..=5)
                .map(|d| s.gauge(&q.extended(Rational::from_integer(&w + d))).unwrap())
                .min()
                .unwrap();
            prop_assert_eq!(value, scan);
        }

        #[test]
        fn explicit_half_anchor_formula((c, _r, q) in cut_with_points()) {
            let af = c.alpha().dot(c.f()).unwrap();
            if frac(&af) == rat(1, 2) {
                let t = frac(&c.alpha().dot(&q).unwrap());
                let expected = if t <= rat(1, 2) { int(2) * &t } else { int(2) - int(2) * &t };
                prop_assert_eq!(c.pi(&q).unwrap(), expected);
            }
        }
    }
}
