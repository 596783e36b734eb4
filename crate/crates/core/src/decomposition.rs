//! Splitting the pay change from extra information into a
//! perception-correcting component (task assignment held fixed) and an
//! instrumental component (perception held fixed).

use crate::error::{ModelError, Result};
use crate::garbling::{build_joints, find_garbling, GarblingKernel, JointDist};
use crate::model::{
    assign_task_with, average_pay_parts, check_len, posterior, Dist, Firm, SignalStructure,
    TieBreak,
};
use crate::orders::{is_mlr, perception_class, PerceptionClass};
use crate::scalar::{dot, sum, Scalar};

/// Default slack for sign and identity checks in float mode.
pub const SIGN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct DecompResult<T> {
    /// `W(fine) - W(coarse)`.
    pub total: T,
    pub perception_correcting: T,
    pub instrumental: T,
    pub w_coarse: T,
    pub w_fine: T,
    pub kernel: GarblingKernel<T>,
    /// Task chosen for each coarse signal.
    pub assignment_coarse: Vec<usize>,
    /// Task chosen for each fine signal.
    pub assignment_fine: Vec<usize>,
}

impl<T: Scalar> DecompResult<T> {
    /// `total - (C + I)`; zero up to rounding.
    pub fn residual(&self) -> T {
        self.total.clone() - (self.perception_correcting.clone() + self.instrumental.clone())
    }
}

struct Pieces<T> {
    assignment_coarse: Vec<usize>,
    assignment_fine: Vec<usize>,
    mu_p: JointDist<T>,
    mu_q: JointDist<T>,
}

fn pieces<T: Scalar>(
    firm: &Firm<T>,
    p: &Dist<T>,
    q: &Dist<T>,
    coarse: &SignalStructure<T>,
    fine: &SignalStructure<T>,
    g: &GarblingKernel<T>,
    tie: TieBreak,
) -> Result<Pieces<T>> {
    p.ensure_full_support("true distribution p")?;
    q.ensure_full_support("perception q")?;
    check_len(firm.num_types(), p.len())?;
    let (mu_p, mu_q) = build_joints(p, q, fine, coarse, g)?;
    let assign = |sig: &SignalStructure<T>| {
        (0..sig.num_signals())
            .map(|s| Ok(assign_task_with(firm, &posterior(q, sig, s)?, tie).task))
            .collect::<Result<Vec<_>>>()
    };
    Ok(Pieces {
        assignment_coarse: assign(coarse)?,
        assignment_fine: assign(fine)?,
        mu_p,
        mu_q,
    })
}

/// `(C, I)` from a shared pass over signal pairs. Pairs with `μ_q(s,s') = 0`
/// contribute nothing; under full-support `q` these are exactly the pairs
/// with `μ_p(s,s') = 0`.
fn components<T: Scalar>(firm: &Firm<T>, pc: &Pieces<T>) -> (T, T) {
    let tasks = firm.tasks();
    let (ns, nf) = (pc.mu_p.coarse_len(), pc.mu_p.fine_len());
    let mut correcting = T::zero();
    let mut instrumental = T::zero();
    for s in 0..ns {
        let pairs_p: Vec<T> = (0..nf).map(|t| pc.mu_p.pair(s, t)).collect();
        let pairs_q: Vec<T> = (0..nf).map(|t| pc.mu_q.pair(s, t)).collect();
        let mass_p = sum(pairs_p.iter().cloned());
        let mass_q = sum(pairs_q.iter().cloned());
        let chosen = tasks[pc.assignment_coarse[s]].surplus();
        for t in 0..nf {
            let Some(cond) = pc.mu_q.type_given_pair(s, t) else {
                assert!(
                    pairs_p[t].is_zero(),
                    "μ_p(s,s') > 0 where μ_q(s,s') = 0: perception lacks full support"
                );
                continue;
            };
            let v_coarse = dot(&cond, chosen);
            let v_fine = dot(&cond, tasks[pc.assignment_fine[t]].surplus());
            let weight = pairs_p[t].clone() / mass_p.clone() - pairs_q[t].clone() / mass_q.clone();
            correcting = correcting + mass_p.clone() * weight * v_coarse.clone();
            instrumental = instrumental + pairs_p[t].clone() * (v_fine - v_coarse);
        }
    }
    (correcting, instrumental)
}

/// Perception-correcting component `C_A` for a given kernel.
pub fn perception_correcting<T: Scalar>(
    firm: &Firm<T>,
    p: &Dist<T>,
    q: &Dist<T>,
    coarse: &SignalStructure<T>,
    fine: &SignalStructure<T>,
    g: &GarblingKernel<T>,
) -> Result<T> {
    Ok(components(
        firm,
        &pieces(firm, p, q, coarse, fine, g, TieBreak::Lowest)?,
    )
    .0)
}

/// Instrumental component `I_A`, conditioned on coarse signals.
pub fn instrumental<T: Scalar>(
    firm: &Firm<T>,
    p: &Dist<T>,
    q: &Dist<T>,
    coarse: &SignalStructure<T>,
    fine: &SignalStructure<T>,
    g: &GarblingKernel<T>,
) -> Result<T> {
    Ok(components(
        firm,
        &pieces(firm, p, q, coarse, fine, g, TieBreak::Lowest)?,
    )
    .1)
}

/// Instrumental component written over fine signals:
/// `Σ_s' μ_p(s') Σ_θ q'(θ|s') [â'_s'(θ) - Σ_s g(s|s') â_s(θ)]`.
pub fn instrumental_by_fine<T: Scalar>(
    firm: &Firm<T>,
    p: &Dist<T>,
    q: &Dist<T>,
    coarse: &SignalStructure<T>,
    fine: &SignalStructure<T>,
    g: &GarblingKernel<T>,
    tie: TieBreak,
) -> Result<T> {
    let pc = pieces(firm, p, q, coarse, fine, g, tie)?;
    let tasks = firm.tasks();
    let mut total = T::zero();
    for t in 0..fine.num_signals() {
        let post = posterior(q, fine, t)?;
        let mixed: Vec<T> = (0..p.len())
            .map(|theta| {
                let own = tasks[pc.assignment_fine[t]].surplus()[theta].clone();
                let garbled = sum((0..coarse.num_signals()).map(|s| {
                    g.get(s, t).clone() * tasks[pc.assignment_coarse[s]].surplus()[theta].clone()
                }));
                own - garbled
            })
            .collect();
        total = total + pc.mu_p.fine_marginal(t) * dot(post.probs(), &mixed);
    }
    Ok(total)
}

/// Decomposition with an explicit kernel and tie-breaking rule.
pub fn decompose_with_kernel<T: Scalar>(
    firm: &Firm<T>,
    p: &Dist<T>,
    q: &Dist<T>,
    coarse: &SignalStructure<T>,
    fine: &SignalStructure<T>,
    g: GarblingKernel<T>,
    tie: TieBreak,
) -> Result<DecompResult<T>> {
    let pc = pieces(firm, p, q, coarse, fine, &g, tie)?;
    let (perception_correcting, instrumental) = components(firm, &pc);
    let w_coarse = average_pay_parts(firm, p, q, coarse)?;
    let w_fine = average_pay_parts(firm, p, q, fine)?;
    Ok(DecompResult {
        total: w_fine.clone() - w_coarse.clone(),
        perception_correcting,
        instrumental,
        w_coarse,
        w_fine,
        kernel: g,
        assignment_coarse: pc.assignment_coarse,
        assignment_fine: pc.assignment_fine,
    })
}

/// Decomposes `W(p,q,fine) - W(p,q,coarse)` using the kernel found by
/// [`find_garbling`]. Fails with [`ModelError::NotGarblingOrdered`] when no
/// kernel exists.
pub fn decompose<T: Scalar>(
    firm: &Firm<T>,
    p: &Dist<T>,
    q: &Dist<T>,
    coarse: &SignalStructure<T>,
    fine: &SignalStructure<T>,
) -> Result<DecompResult<T>> {
    let g = find_garbling(fine, coarse)?.ok_or(ModelError::NotGarblingOrdered)?;
    decompose_with_kernel(firm, p, q, coarse, fine, g, TieBreak::Lowest)
}

/// Outcome of checking one signed claim. The conclusion is evaluated even
/// when the hypotheses fail, so counterexamples show up as
/// `hypotheses_hold = false, conclusion_holds = false`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimCheck {
    pub claim: &'static str,
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
}

impl ClaimCheck {
    pub fn new(claim: &'static str, hypotheses_hold: bool, conclusion_holds: bool) -> Self {
        Self {
            claim,
            hypotheses_hold,
            conclusion_holds,
        }
    }

    pub fn violated(&self) -> bool {
        self.hypotheses_hold && !self.conclusion_holds
    }
}

#[derive(Debug, Clone)]
pub struct SignReport<T> {
    pub decomposition: DecompResult<T>,
    pub monotone: bool,
    /// `None` when the fine signals carry no real values.
    pub fine_mlr: Option<bool>,
    pub perception: PerceptionClass,
    pub claims: Vec<ClaimCheck>,
}

impl<T: Scalar> SignReport<T> {
    pub fn violations(&self) -> impl Iterator<Item = &ClaimCheck> {
        self.claims.iter().filter(|c| c.violated())
    }

    pub fn claim(&self, name: &str) -> Option<&ClaimCheck> {
        self.claims.iter().find(|c| c.claim == name)
    }
}

pub const CLAIM_IDENTITY: &str = "decomposition-identity";
pub const CLAIM_INSTRUMENTAL: &str = "instrumental-nonnegative";
pub const CLAIM_CORRECTING_UNDER: &str = "correcting-nonnegative-if-under-perceived";
pub const CLAIM_CORRECTING_OVER: &str = "correcting-nonpositive-if-over-perceived";
pub const CLAIM_TOTAL_UNDER: &str = "total-nonnegative-if-under-perceived";

/// Decomposes and checks the identity, the instrumental sign, and the
/// perception-correcting signs together with their hypotheses.
pub fn check_sign_theorem<T: Scalar>(
    firm: &Firm<T>,
    p: &Dist<T>,
    q: &Dist<T>,
    coarse: &SignalStructure<T>,
    fine: &SignalStructure<T>,
    tol: f64,
) -> Result<SignReport<T>> {
    let d = decompose(firm, p, q, coarse, fine)?;
    Ok(sign_report(firm, p, q, fine, d, tol))
}

pub fn sign_report<T: Scalar>(
    firm: &Firm<T>,
    p: &Dist<T>,
    q: &Dist<T>,
    fine: &SignalStructure<T>,
    d: DecompResult<T>,
    tol: f64,
) -> SignReport<T> {
    let monotone = firm.is_monotone();
    let fine_mlr = is_mlr(fine).ok();
    let perception = perception_class(p, q);
    let shape = monotone && fine_mlr == Some(true);
    let zero = T::zero();
    let c = &d.perception_correcting;
    let claims = vec![
        ClaimCheck::new(CLAIM_IDENTITY, true, d.residual().approx_eq(&zero, tol)),
        ClaimCheck::new(CLAIM_INSTRUMENTAL, true, d.instrumental.ge_tol(&zero, tol)),
        ClaimCheck::new(
            CLAIM_CORRECTING_UNDER,
            shape && perception.is_under(),
            c.ge_tol(&zero, tol),
        ),
        ClaimCheck::new(
            CLAIM_CORRECTING_OVER,
            shape && perception.is_over(),
            zero.ge_tol(c, tol),
        ),
        ClaimCheck::new(
            CLAIM_TOTAL_UNDER,
            shape && perception.is_under(),
            d.total.ge_tol(&zero, tol),
        ),
    ];
    SignReport {
        decomposition: d,
        monotone,
        fine_mlr,
        perception,
        claims,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Task;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    fn up() -> Firm<Rational> {
        Firm::new(vec![Task(vec![r(0, 1), r(1, 1)])]).unwrap()
    }

    fn up3() -> Firm<Rational> {
        Firm::new(vec![Task(vec![r(0, 1), r(1, 1), r(2, 1)])]).unwrap()
    }

    fn figure1_firm() -> Firm<Rational> {
        Firm::new(vec![
            Task(vec![r(0, 1), r(1, 1)]),
            Task(vec![r(-4, 1), r(4, 1)]),
        ])
        .unwrap()
    }

    fn reveal_middle() -> SignalStructure<Rational> {
        SignalStructure::from_rows(vec![
            vec![r(1, 1), r(0, 1)],
            vec![r(0, 1), r(1, 1)],
            vec![r(1, 1), r(0, 1)],
        ])
        .unwrap()
    }

    #[test]
    fn example1_reversal() {
        let p = Dist::binary(r(1, 2)).unwrap();
        let q = Dist::binary(r(3, 4)).unwrap();
        let (coarse, fine) = (
            SignalStructure::uninformative(2),
            SignalStructure::fully_informative(2),
        );
        let d = decompose(&up(), &p, &q, &coarse, &fine).unwrap();
        assert_eq!(d.total, r(-1, 4));
        assert_eq!(d.perception_correcting, r(-1, 4));
        assert_eq!(d.instrumental, r(0, 1));
    }

    #[test]
    fn example2_monotonicity_fails() {
        let down = Firm::new(vec![Task(vec![r(1, 1), r(0, 1)])]).unwrap();
        let p = Dist::binary(r(2, 5)).unwrap();
        let q = Dist::binary(r(1, 5)).unwrap();
        let (coarse, fine) = (
            SignalStructure::uninformative(2),
            SignalStructure::fully_informative(2),
        );
        let report = check_sign_theorem(&down, &p, &q, &coarse, &fine, SIGN_TOL).unwrap();
        let d = &report.decomposition;
        assert_eq!(d.perception_correcting, r(3, 5) - r(4, 5));
        assert_eq!(d.instrumental, r(0, 1));
        assert_eq!(report.perception, PerceptionClass::UnderPerceived);
        let c = report.claim(CLAIM_CORRECTING_UNDER).unwrap();
        assert!(!c.hypotheses_hold && !c.conclusion_holds);
        assert_eq!(report.violations().count(), 0);
    }

    #[test]
    fn example3_mlr_fails() {
        let q = Dist::full_support(vec![r(1, 4), r(1, 4), r(1, 2)]).unwrap();
        let delta = r(1, 25);
        let p = Dist::full_support(vec![
            r(1, 4) - r(3, 1) * delta.clone(),
            r(1, 4) + delta.clone(),
            r(1, 2) + r(2, 1) * delta,
        ])
        .unwrap();
        let report = check_sign_theorem(
            &up3(),
            &p,
            &q,
            &SignalStructure::uninformative(3),
            &reveal_middle(),
            SIGN_TOL,
        )
        .unwrap();
        assert_eq!(report.decomposition.perception_correcting, r(-1, 75));
        assert_eq!(report.fine_mlr, Some(false));
        assert_eq!(report.perception, PerceptionClass::UnderPerceived);
        assert!(
            !report
                .claim(CLAIM_CORRECTING_UNDER)
                .unwrap()
                .conclusion_holds
        );
    }

    #[test]
    fn example1_hypotheses_hold_and_sign_confirmed() {
        let p = Dist::binary(r(1, 3)).unwrap();
        let q = Dist::binary(r(1, 2)).unwrap();
        let report = check_sign_theorem(
            &up(),
            &p,
            &q,
            &SignalStructure::uninformative(2),
            &SignalStructure::fully_informative(2),
            SIGN_TOL,
        )
        .unwrap();
        assert!(report.monotone);
        assert_eq!(report.fine_mlr, Some(true));
        assert_eq!(report.perception, PerceptionClass::OverPerceived);
        let c = report.claim(CLAIM_CORRECTING_OVER).unwrap();
        assert!(c.hypotheses_hold && c.conclusion_holds);
        assert!(report.decomposition.total < r(0, 1));
    }

    #[test]
    fn accurate_perception_has_no_correction() {
        let p = Dist::binary(r(2, 7)).unwrap();
        let fine = SignalStructure::binary_symmetric(r(5, 6)).unwrap();
        let coarse = SignalStructure::binary_symmetric(r(3, 5)).unwrap();
        let d = decompose(&figure1_firm(), &p, &p, &coarse, &fine).unwrap();
        assert_eq!(d.perception_correcting, r(0, 1));
        assert_eq!(d.total, d.instrumental);
        assert!(d.instrumental >= r(0, 1));
    }

    #[test]
    fn identical_structures_have_no_instrumental_value() {
        let p = Dist::binary(r(1, 3)).unwrap();
        let q = Dist::binary(r(4, 5)).unwrap();
        let sig = SignalStructure::binary_symmetric(r(7, 10)).unwrap();
        let g = GarblingKernel::identity(2);
        assert_eq!(
            instrumental(&figure1_firm(), &p, &q, &sig, &sig, &g).unwrap(),
            r(0, 1)
        );
    }

    #[test]
    fn assignment_flip_gives_positive_instrumental_value() {
        let p = Dist::binary(r(1, 2)).unwrap();
        let q = Dist::binary(r(1, 4)).unwrap();
        let coarse = SignalStructure::binary_symmetric(r(7, 10)).unwrap();
        let fine = SignalStructure::binary_symmetric(r(9, 10)).unwrap();
        let d = decompose(&figure1_firm(), &p, &q, &coarse, &fine).unwrap();
        assert_eq!(d.assignment_coarse, vec![0, 0]);
        assert_eq!(d.assignment_fine, vec![0, 1]);
        assert!(d.instrumental > r(0, 1));
        assert_eq!(
            d.total.clone() - d.perception_correcting.clone(),
            d.instrumental
        );
        let g = find_garbling(&fine, &coarse).unwrap().unwrap();
        assert_eq!(
            instrumental_by_fine(
                &figure1_firm(),
                &p,
                &q,
                &coarse,
                &fine,
                &g,
                TieBreak::Lowest
            )
            .unwrap(),
            d.instrumental
        );
    }

    #[test]
    fn not_ordered_is_an_error() {
        let p = Dist::binary(r(1, 2)).unwrap();
        let coarse = SignalStructure::binary_symmetric(r(9, 10)).unwrap();
        let fine = SignalStructure::binary_symmetric(r(7, 10)).unwrap();
        assert_eq!(
            decompose(&up(), &p, &p, &coarse, &fine).unwrap_err(),
            ModelError::NotGarblingOrdered
        );
    }
}
