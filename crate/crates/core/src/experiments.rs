//! The one-row family with a large split-closure gap, and the pipeline that
//! measures that gap exactly.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::corner::{minimize_enumerated, CappedOptimum, CornerRelaxation, CutCoefficients, SolutionPoint};
use crate::cutfn::AlphaCut;
use crate::error::{Error, Result};
use crate::exact::{frac, int, rat, IntVector, Rational, RationalVector};
use crate::separation::{closure_alphas, split_closure_optimize, violated_alpha, ClosureStrategy, Optimum};

/// `C(1/2, {}, {1/2 + eps/2, 1/2 + eps})`.
pub fn make_bad_family(epsilon: &Rational) -> Result<CornerRelaxation> {
    if !epsilon.is_positive() {
        return Err(Error::BadEpsilon(format!("epsilon must be positive, got {epsilon}")));
    }
    let half = rat(1, 2);
    let q1 = &half + epsilon / int(2);
    let q2 = &half + epsilon;
    CornerRelaxation::new(
        RationalVector::new(vec![half]),
        vec![],
        vec![RationalVector::new(vec![q1]), RationalVector::new(vec![q2])],
    )
}

/// Default brute-force cap: `max(2 ceil(1/(2 eps)), 12)`.
pub fn default_cap(epsilon: &Rational) -> Result<u64> {
    let half_inv = (int(1) / (int(2) * epsilon)).ceil().to_integer();
    let cap = (half_inv * 2u32).max(BigInt::from(12));
    cap.to_u64()
        .ok_or_else(|| Error::BadEpsilon(format!("cap {cap} too large")))
}

/// Exact minimum of `objective` over integer points with `sum y <= cap`.
pub fn ip_optimum_bruteforce(rel: &CornerRelaxation, objective: &[Rational], cap: u64) -> Result<Option<CappedOptimum>> {
    minimize_enumerated(rel, objective, cap)
}

fn bad_family_cuts(epsilon: &Rational) -> Result<(CornerRelaxation, Vec<(IntVector, CutCoefficients)>, BigInt)> {
    let rel = make_bad_family(epsilon)?;
    let (alphas, period) = closure_alphas(&rel, ClosureStrategy::Period)?;
    let cuts = alphas
        .into_iter()
        .map(|a| {
            let cut = CutCoefficients::alpha_cut(&rel, &AlphaCut::new(a.clone(), rel.f().clone())?)?;
            Ok((a, cut))
        })
        .collect::<Result<_>>()?;
    Ok((rel, cuts, period.expect("period strategy reports its period")))
}

/// First alpha in one period for which neither `frac(alpha q1)` nor
/// `frac(alpha q2)` lies in `[1/6, 5/6]`.
pub fn verify_claim_alpha_q(epsilon: &Rational) -> Result<Option<IntVector>> {
    let (rel, cuts, _) = bad_family_cuts(epsilon)?;
    let (lo, hi) = (rat(1, 6), rat(5, 6));
    for (alpha, _) in cuts {
        let (_, pq) = rel.projections(&alpha)?;
        if !pq.iter().any(|v| {
            let t = frac(v);
            t >= lo && t <= hi
        }) {
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}

/// First alpha in one period whose larger integer coefficient is below 1/3.
pub fn verify_one_third_lemma(epsilon: &Rational) -> Result<Option<IntVector>> {
    let (_, cuts, _) = bad_family_cuts(epsilon)?;
    let third = rat(1, 3);
    Ok(cuts
        .into_iter()
        .find(|(_, c)| c.pi.iter().max().is_none_or(|m| m < &third))
        .map(|(a, _)| a))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaRow {
    pub alpha: BigInt,
    pub pi: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GapStatus {
    Pass,
    /// A property that must hold failed.
    Violation(Vec<String>),
    /// The enumeration could not certify its answer.
    Inconclusive(Vec<String>),
}

impl GapStatus {
    pub fn exit_code(&self) -> i32 {
        match self {
            GapStatus::Pass => 0,
            GapStatus::Violation(_) => 1,
            GapStatus::Inconclusive(_) => 2,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            GapStatus::Pass => "pass",
            GapStatus::Violation(_) => "violation",
            GapStatus::Inconclusive(_) => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub epsilon: Rational,
    pub cap: u64,
    pub ip_optimum: Option<Rational>,
    pub ip_witness: Option<SolutionPoint>,
    pub ip_certified: bool,
    /// Exact optimum of the period LP over all alpha-cuts.
    pub closure_optimum: Option<Rational>,
    pub closure_witness: Option<SolutionPoint>,
    pub closure_binding: Vec<IntVector>,
    /// `(3, 3)` satisfies every alpha-cut, so the closure optimum is at most 6.
    pub three_three_survives: bool,
    pub ratio: Option<Rational>,
    /// `1 / (12 eps)`.
    pub paper_bound: Rational,
    /// `1 / (2 eps)`, the lower bound on the integer optimum.
    pub ip_lower_bound: Rational,
    pub alpha_period: BigInt,
    pub alpha_table: Vec<AlphaRow>,
    pub claim_alpha_q: Option<IntVector>,
    pub one_third: Option<IntVector>,
    pub status: GapStatus,
}

/// Integer optimum, split-closure optimum, their ratio, and the supporting
/// lemmas for `C_eps` with objective `y1 + y2`.
pub fn run_gap_experiment(epsilon: &Rational, cap: Option<u64>) -> Result<GapReport> {
    if !epsilon.is_positive() || epsilon > &rat(1, 2) {
        return Err(Error::BadEpsilon(format!("epsilon must lie in (0, 1/2], got {epsilon}")));
    }
    let rel = make_bad_family(epsilon)?;
    let objective = vec![Rational::one(), Rational::one()];
    let cap = match cap {
        Some(c) => c,
        None => default_cap(epsilon)?,
    };

    let ip = ip_optimum_bruteforce(&rel, &objective, cap)?;
    let closure = split_closure_optimize(&rel, &objective, ClosureStrategy::Period)?;
    let (closure_optimum, closure_witness) = match closure.optimum {
        Optimum::Finite { value, point } => (Some(value), Some(point)),
        _ => (None, None),
    };
    let three = SolutionPoint::from_nonbasic(&rel, vec![], vec![int(3), int(3)])?;
    let three_three_survives = violated_alpha(&rel, &three, ClosureStrategy::Period)?.is_none();

    let (_, cuts, period) = bad_family_cuts(epsilon)?;
    let alpha_table = cuts
        .into_iter()
        .map(|(a, c)| AlphaRow {
            alpha: a.entries()[0].clone(),
            pi: c.pi,
        })
        .collect();
    let claim_alpha_q = verify_claim_alpha_q(epsilon)?;
    let one_third = verify_one_third_lemma(epsilon)?;

    let paper_bound = int(1) / (int(12) * epsilon);
    let ip_lower_bound = int(1) / (int(2) * epsilon);
    let ip_optimum = ip.as_ref().map(|o| o.value.clone());
    let ratio = match (&ip_optimum, &closure_optimum) {
        (Some(a), Some(b)) if !b.is_zero() => Some(a / b),
        _ => None,
    };

    let mut violations = Vec::new();
    let mut inconclusive = Vec::new();
    match &ip {
        None => inconclusive.push(format!("no integer point with y1 + y2 <= {cap}")),
        Some(o) if !o.certified => inconclusive.push(format!("cap {cap} does not certify the integer optimum")),
        Some(_) => {}
    }
    if let Some(v) = &ip_optimum {
        if v < &ip_lower_bound {
            violations.push(format!("integer optimum {v} below 1/(2 eps) = {ip_lower_bound}"));
        }
    }
    match &closure_optimum {
        None => violations.push("closure LP has no finite optimum".into()),
        Some(v) if v > &int(6) => violations.push(format!("closure optimum {v} exceeds 6")),
        Some(_) => {}
    }
    if !three_three_survives {
        violations.push("(3, 3) violates an alpha-cut".into());
    }
    if let Some(a) = &claim_alpha_q {
        violations.push(format!("alpha = {a}: no fractional part in [1/6, 5/6]"));
    }
    if let Some(a) = &one_third {
        violations.push(format!("alpha = {a}: largest coefficient below 1/3"));
    }
    match &ratio {
        Some(r) if r < &paper_bound => violations.push(format!("ratio {r} below 1/(12 eps) = {paper_bound}")),
        None if ip_optimum.is_some() => violations.push("ratio undefined".into()),
        _ => {}
    }
    let status = if !violations.is_empty() {
        GapStatus::Violation(violations)
    } else if !inconclusive.is_empty() {
        GapStatus::Inconclusive(inconclusive)
    } else {
        GapStatus::Pass
    };

    Ok(GapReport {
        epsilon: epsilon.clone(),
        cap,
        ip_certified: ip.as_ref().is_some_and(|o| o.certified),
        ip_witness: ip.map(|o| o.witness),
        ip_optimum,
        closure_optimum,
        closure_witness,
        closure_binding: closure.binding,
        three_three_survives,
        ratio,
        paper_bound,
        ip_lower_bound,
        alpha_period: period,
        alpha_table,
        claim_alpha_q,
        one_third,
        status,
    })
}

fn opt(v: &Option<Rational>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), Rational::to_string)
}

impl GapReport {
    pub const CSV_HEADER: &'static str = "epsilon,ip_opt,closure_opt,ratio,paper_bound,alpha_period,status";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.epsilon,
            opt(&self.ip_optimum),
            opt(&self.closure_optimum),
            opt(&self.ratio),
            self.paper_bound,
            self.alpha_period,
            self.status.label()
        )
    }

    pub fn to_text(&self, with_table: bool) -> String {
        let mut s = String::new();
        let point = |p: &Option<SolutionPoint>| {
            p.as_ref().map_or_else(
                || "-".to_string(),
                |p| {
                    let y: Vec<String> = p.y.iter().map(ToString::to_string).collect();
                    format!("y = ({}), x = {}", y.join(", "), p.x)
                },
            )
        };
        let _ = writeln!(s, "epsilon            {}", self.epsilon);
        let _ = writeln!(
            s,
            "ip optimum         {}  [{}; cap {}{}]",
            opt(&self.ip_optimum),
            point(&self.ip_witness),
            self.cap,
            if self.ip_certified { ", certified" } else { ", not certified" }
        );
        let _ = writeln!(s, "1/(2 eps)          {}", self.ip_lower_bound);
        let _ = writeln!(
            s,
            "closure optimum    {}  [{}; exact period LP]",
            opt(&self.closure_optimum),
            point(&self.closure_witness)
        );
        let binding: Vec<String> = self.closure_binding.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "binding alphas     {}", binding.join(" "));
        let _ = writeln!(s, "(3,3) survives     {}", self.three_three_survives);
        let _ = writeln!(s, "ratio              {}", opt(&self.ratio));
        let _ = writeln!(s, "1/(12 eps)         {}", self.paper_bound);
        let _ = writeln!(s, "alpha period       {} ({} cuts)", self.alpha_period, self.alpha_table.len());
        let none_or = |a: &Option<IntVector>| a.as_ref().map_or("ok".to_string(), |a| format!("fails at alpha = {a}"));
        let _ = writeln!(s, "[1/6,5/6] claim    {}", none_or(&self.claim_alpha_q));
        let _ = writeln!(s, "1/3 lemma          {}", none_or(&self.one_third));
        let _ = writeln!(s, "status             {}", self.status.label());
        if let GapStatus::Violation(msgs) | GapStatus::Inconclusive(msgs) = &self.status {
            for m in msgs {
                let _ = writeln!(s, "  - {m}");
            }
        }
        if with_table {
            let _ = writeln!(s, "alpha  pi(q1)  pi(q2)");
            for row in &self.alpha_table {
                let pis: Vec<String> = row.pi.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "{}  {}", row.alpha, pis.join("  "));
            }
        }
        s
    }
}

/// Whether `alpha` gives a cut on the family, i.e. is odd.
pub fn is_family_alpha(alpha: &BigInt) -> bool {
    alpha.is_odd()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_columns() {
        let rel = make_bad_family(&rat(1, 10)).unwrap();
        assert_eq!(rel.q_cols()[0], RationalVector::from_ratios(&[(11, 20)]));
        assert_eq!(rel.q_cols()[1], RationalVector::from_ratios(&[(3, 5)]));
        let rel = make_bad_family(&rat(1, 100)).unwrap();
        assert_eq!(rel.q_cols()[0], RationalVector::from_ratios(&[(101, 200)]));
        assert_eq!(rel.q_cols()[1], RationalVector::from_ratios(&[(51, 100)]));
        let rel = make_bad_family(&int(1)).unwrap();
        assert_eq!(rel.q_cols()[0], RationalVector::from_ints(&[1]));
        let pi = CutCoefficients::alpha_cut(&rel, &AlphaCut::new(IntVector::from_ints(&[3]), rel.f().clone()).unwrap()).unwrap().pi;
        assert_eq!(pi[0], int(0));
        assert!(make_bad_family(&int(0)).is_err());
        assert!(make_bad_family(&rat(-1, 3)).is_err());
    }

    #[test]
    fn default_caps() {
        assert_eq!(default_cap(&rat(1, 10)).unwrap(), 12);
        assert_eq!(default_cap(&rat(1, 100)).unwrap(), 100);
        assert_eq!(default_cap(&rat(1, 3)).unwrap(), 12);
    }

    #[test]
    fn ip_optimum_examples() {
        let rel = make_bad_family(&rat(1, 100)).unwrap();
        let best = ip_optimum_bruteforce(&rel, &[int(1), int(1)], 60).unwrap().unwrap();
        assert_eq!(best.value, int(50));
        assert_eq!(best.witness.y, vec![int(0), int(50)]);
        assert_eq!(best.witness.x, RationalVector::from_ints(&[26]));
        assert!(best.certified);
        let zero = ip_optimum_bruteforce(&rel, &[int(0), int(0)], 60).unwrap().unwrap();
        assert_eq!(zero.value, int(0));
        // below the optimum nothing is found
        assert!(ip_optimum_bruteforce(&rel, &[int(1), int(1)], 40).unwrap().is_none());
    }

    #[test]
    fn lemma_checks_on_tenth() {
        assert_eq!(verify_claim_alpha_q(&rat(1, 10)).unwrap(), None);
        assert_eq!(verify_one_third_lemma(&rat(1, 10)).unwrap(), None);
        let (_, cuts, period) = bad_family_cuts(&rat(1, 10)).unwrap();
        assert_eq!(period, BigInt::from(20));
        let five = &cuts.iter().find(|(a, _)| a == &IntVector::from_ints(&[5])).unwrap().1;
        assert_eq!(five.pi, vec![rat(1, 2), int(0)]);
        assert!(cuts.iter().all(|(a, _)| is_family_alpha(&a.entries()[0])));
    }

    #[test]
    fn gap_on_tenth() {
        let report = run_gap_experiment(&rat(1, 10), None).unwrap();
        assert_eq!(report.ip_optimum, Some(int(6)));
        assert_eq!(report.closure_optimum, Some(int(3)));
        assert_eq!(report.ratio, Some(int(2)));
        assert_eq!(report.paper_bound, rat(5, 6));
        assert_eq!(report.status, GapStatus::Pass);
        assert_eq!(report.csv_row(), "1/10,6,3,2,5/6,20,pass");
        assert!(report.to_text(true).contains("alpha  pi(q1)  pi(q2)"));
    }

    #[test]
    fn small_cap_is_inconclusive() {
        let report = run_gap_experiment(&rat(1, 100), Some(20)).unwrap();
        assert_eq!(report.ip_optimum, None);
        assert_eq!(report.status.exit_code(), 2);
        assert!(run_gap_experiment(&rat(3, 4), None).is_err());
    }
}
