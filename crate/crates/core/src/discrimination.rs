//! Pay gaps between two populations with the same true skill distribution
//! but different perceptions, and when extra information narrows them.

use crate::decomposition::{decompose, decompose_with_kernel};
use crate::error::{ModelError, Result};
use crate::garbling::{
    eps_of_structure, find_garbling, is_slightly_more_informative, within_eps_of_full, EpsBound,
    GarblingKernel,
};
use crate::model::{average_pay_parts, check_len, Dist, Firm, SignalStructure, Task, TieBreak};
use crate::orders::{is_mlr, lr_geq, separating_structure_at};
use crate::scalar::Scalar;

/// Two populations `I` and `J` sharing true distribution `p` and a common
/// signal structure, with a candidate replacement structure `fine`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapScenario<T> {
    pub firm: Firm<T>,
    pub p: Dist<T>,
    /// Perception of population `I`.
    pub q_i: Dist<T>,
    /// Perception of population `J`.
    pub q_j: Dist<T>,
    pub coarse: SignalStructure<T>,
    pub fine: SignalStructure<T>,
}

impl<T: Scalar> GapScenario<T> {
    pub fn new(
        firm: Firm<T>,
        p: Dist<T>,
        q_i: Dist<T>,
        q_j: Dist<T>,
        coarse: SignalStructure<T>,
        fine: SignalStructure<T>,
    ) -> Result<Self> {
        p.ensure_full_support("true distribution p")?;
        q_i.ensure_full_support("perception q_I")?;
        q_j.ensure_full_support("perception q_J")?;
        let n = p.len();
        for m in [
            firm.num_types(),
            q_i.len(),
            q_j.len(),
            coarse.num_types(),
            fine.num_types(),
        ] {
            check_len(n, m)?;
        }
        Ok(Self {
            firm,
            p,
            q_i,
            q_j,
            coarse,
            fine,
        })
    }

    /// `q_I ⪰_LR q_J`.
    pub fn is_ordered(&self) -> bool {
        lr_geq(&self.q_i, &self.q_j)
    }

    pub fn gap_coarse(&self) -> Result<T> {
        pay_gap(&self.firm, &self.p, &self.q_i, &self.q_j, &self.coarse)
    }

    pub fn gap_fine(&self) -> Result<T> {
        pay_gap(&self.firm, &self.p, &self.q_i, &self.q_j, &self.fine)
    }
}

/// `W(p,q_I,sig) - W(p,q_J,sig)`.
pub fn pay_gap<T: Scalar>(
    firm: &Firm<T>,
    p: &Dist<T>,
    q_i: &Dist<T>,
    q_j: &Dist<T>,
    sig: &SignalStructure<T>,
) -> Result<T> {
    Ok(average_pay_parts(firm, p, q_i, sig)? - average_pay_parts(firm, p, q_j, sig)?)
}

/// The three terms of `W(p,q_I,sig_I) - W(p,q_J,sig_J)`: the favorableness
/// bracket `W(p,q_I,sig_I) - W(p,q_J,sig_I)`, then the correcting and
/// instrumental parts of `J`'s move from `sig_J` to `sig_I`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapTerms<T> {
    pub favorableness: T,
    pub correcting: T,
    pub instrumental: T,
}

impl<T: Scalar> GapTerms<T> {
    pub fn sum(&self) -> T {
        self.favorableness.clone() + self.correcting.clone() + self.instrumental.clone()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corollary2Report<T> {
    pub sig_i_mlr: bool,
    /// `p ⪰_LR q_J`.
    pub j_under_perceived: bool,
    /// `q_I ⪰_LR q_J`.
    pub i_favored: bool,
    /// `sig_I ⪰_G sig_J`.
    pub i_more_informative: bool,
    pub monotone: bool,
    /// `W(p,q_I,sig_I) - W(p,q_J,sig_J)`.
    pub gap: T,
    /// Present only when `sig_I ⪰_G sig_J`.
    pub terms: Option<GapTerms<T>>,
    pub conclusion_holds: bool,
}

impl<T: Scalar> Corollary2Report<T> {
    pub fn hypotheses_hold(&self) -> bool {
        self.sig_i_mlr
            && self.j_under_perceived
            && self.i_favored
            && self.i_more_informative
            && self.monotone
    }

    pub fn violated(&self) -> bool {
        self.hypotheses_hold() && !self.conclusion_holds
    }
}

/// Checks that a more favorably perceived, more informative population is
/// paid more when the other population is under-perceived.
pub fn check_corollary2<T: Scalar>(
    firm: &Firm<T>,
    p: &Dist<T>,
    q_i: &Dist<T>,
    q_j: &Dist<T>,
    sig_i: &SignalStructure<T>,
    sig_j: &SignalStructure<T>,
    tol: f64,
) -> Result<Corollary2Report<T>> {
    let gap = average_pay_parts(firm, p, q_i, sig_i)? - average_pay_parts(firm, p, q_j, sig_j)?;
    let i_more_informative = find_garbling(sig_i, sig_j)?.is_some();
    let terms = if i_more_informative {
        let d = decompose(firm, p, q_j, sig_j, sig_i)?;
        Some(GapTerms {
            favorableness: pay_gap(firm, p, q_i, q_j, sig_i)?,
            correcting: d.perception_correcting,
            instrumental: d.instrumental,
        })
    } else {
        None
    };
    Ok(Corollary2Report {
        sig_i_mlr: is_mlr(sig_i).unwrap_or(false),
        j_under_perceived: lr_geq(p, q_j),
        i_favored: lr_geq(q_i, q_j),
        i_more_informative,
        monotone: firm.is_monotone(),
        conclusion_holds: gap.ge_tol(&T::zero(), tol),
        gap,
        terms,
    })
}

/// Hypotheses of the gap-narrowing result, in their conventional order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NarrowingHypothesis {
    MonotoneFirm,
    FineMlr,
    IOverPerceived,
    JUnderPerceived,
    Slight,
}

impl NarrowingHypothesis {
    pub const ALL: [NarrowingHypothesis; 5] = [
        NarrowingHypothesis::MonotoneFirm,
        NarrowingHypothesis::FineMlr,
        NarrowingHypothesis::IOverPerceived,
        NarrowingHypothesis::JUnderPerceived,
        NarrowingHypothesis::Slight,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::MonotoneFirm => "monotone-firm",
            Self::FineMlr => "fine-mlr",
            Self::IOverPerceived => "i-over-perceived",
            Self::JUnderPerceived => "j-under-perceived",
            Self::Slight => "slight",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NarrowingReport<T> {
    /// `q_I ⪰_LR q_J`, a standing assumption rather than a hypothesis.
    pub ordered: bool,
    /// Truth value of each hypothesis, indexed as [`NarrowingHypothesis::ALL`].
    pub hypotheses: [bool; 5],
    pub gap_coarse: T,
    pub gap_fine: T,
    /// Whether `gap_fine <= gap_coarse`.
    pub narrows: bool,
    pub correcting_i: T,
    pub correcting_j: T,
    pub instrumental_i: T,
    pub instrumental_j: T,
    pub kernel: GarblingKernel<T>,
}

impl<T: Scalar> NarrowingReport<T> {
    pub fn holds(&self, h: NarrowingHypothesis) -> bool {
        let idx = NarrowingHypothesis::ALL
            .iter()
            .position(|&x| x == h)
            .expect("listed");
        self.hypotheses[idx]
    }

    pub fn failing(&self) -> Vec<NarrowingHypothesis> {
        NarrowingHypothesis::ALL
            .into_iter()
            .filter(|&h| !self.holds(h))
            .collect()
    }

    pub fn all_hold(&self) -> bool {
        self.ordered && self.hypotheses.iter().all(|&h| h)
    }

    /// `gap_fine - gap_coarse`.
    pub fn gap_change(&self) -> T {
        self.gap_fine.clone() - self.gap_coarse.clone()
    }

    pub fn violated(&self) -> bool {
        self.all_hold() && !self.narrows
    }
}

/// Evaluates whether moving both populations to `fine` narrows the gap, and
/// which hypotheses of the narrowing result hold. Slightness is required at
/// both perceptions, since the argument needs both instrumental parts to
/// vanish.
pub fn check_narrowing<T: Scalar>(sc: &GapScenario<T>, tol: f64) -> Result<NarrowingReport<T>> {
    let g = find_garbling(&sc.fine, &sc.coarse)?.ok_or(ModelError::NotGarblingOrdered)?;
    let slight = is_slightly_more_informative(&sc.firm, &sc.q_i, &sc.fine, &sc.coarse, &g)?
        && is_slightly_more_informative(&sc.firm, &sc.q_j, &sc.fine, &sc.coarse, &g)?;
    let d_i = decompose_with_kernel(
        &sc.firm,
        &sc.p,
        &sc.q_i,
        &sc.coarse,
        &sc.fine,
        g.clone(),
        TieBreak::Lowest,
    )?;
    let d_j = decompose_with_kernel(
        &sc.firm,
        &sc.p,
        &sc.q_j,
        &sc.coarse,
        &sc.fine,
        g.clone(),
        TieBreak::Lowest,
    )?;
    let gap_coarse = d_i.w_coarse.clone() - d_j.w_coarse.clone();
    let gap_fine = d_i.w_fine.clone() - d_j.w_fine.clone();
    Ok(NarrowingReport {
        ordered: sc.is_ordered(),
        hypotheses: [
            sc.firm.is_monotone(),
            is_mlr(&sc.fine).unwrap_or(false),
            lr_geq(&sc.q_i, &sc.p),
            lr_geq(&sc.p, &sc.q_j),
            slight,
        ],
        narrows: gap_coarse.ge_tol(&gap_fine, tol),
        gap_coarse,
        gap_fine,
        correcting_i: d_i.perception_correcting,
        correcting_j: d_j.perception_correcting,
        instrumental_i: d_i.instrumental,
        instrumental_j: d_j.instrumental,
        kernel: g,
    })
}

/// A scenario built to break exactly one narrowing hypothesis.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample<T> {
    pub name: &'static str,
    pub breaks: NarrowingHypothesis,
    pub scenario: GapScenario<T>,
}

fn frac<T: Scalar>(n: i64, d: i64) -> T {
    T::from_frac(n, d)
}

fn binary_dist<T: Scalar>(high_n: i64, high_d: i64) -> Dist<T> {
    Dist::binary(frac(high_n, high_d)).expect("valid binary distribution")
}

fn single_task<T: Scalar>(surplus: &[i64]) -> Firm<T> {
    Firm::new(vec![Task(
        surplus.iter().map(|&x| T::from_int(x)).collect(),
    )])
    .expect("non-empty firm")
}

/// Firm with tasks `θ` and `4(2θ - 1)` on binary types.
pub fn two_task_firm<T: Scalar>() -> Firm<T> {
    Firm::new(vec![
        Task(vec![T::zero(), T::one()]),
        Task(vec![T::from_int(-4), T::from_int(4)]),
    ])
    .expect("non-empty firm")
}

/// One scenario for each narrowing hypothesis in which that hypothesis alone
/// fails and the gap widens.
pub fn prop2_counterexamples<T: Scalar>() -> Vec<Counterexample<T>> {
    let uninf2 = SignalStructure::uninformative(2);
    let full2 = SignalStructure::fully_informative(2);
    let sym = |n, d| SignalStructure::binary_symmetric(frac::<T>(n, d)).expect("valid accuracy");
    let build = |firm, p, qi, qj, coarse, fine| {
        GapScenario::new(firm, p, qi, qj, coarse, fine).expect("consistent scenario")
    };

    // Decreasing task, perceptions straddling p on the low type.
    let monotone = build(
        single_task(&[1, 0]),
        binary_dist(1, 2),
        binary_dist(3, 4),
        binary_dist(1, 4),
        uninf2.clone(),
        full2,
    );

    // Three types; the fine structure reveals the middle type only.
    let d = frac::<T>(1, 25);
    let three = |a: i64, b: i64, c: i64| {
        Dist::full_support(vec![
            frac::<T>(1, 4) + T::from_int(a) * d.clone(),
            frac::<T>(1, 4) + T::from_int(b) * d.clone(),
            frac::<T>(1, 2) + T::from_int(c) * d.clone(),
        ])
        .expect("valid perception")
    };
    let mlr = build(
        single_task(&[0, 1, 2]),
        three(-3, 1, 2),
        three(-6, 2, 4),
        three(0, 0, 0),
        SignalStructure::uninformative(3),
        separating_structure_at(3, 0, 2).expect("valid pooling"),
    );

    let over = build(
        single_task(&[0, 1]),
        binary_dist(3, 4),
        binary_dist(1, 4),
        binary_dist(1, 6),
        uninf2.clone(),
        sym(3, 4),
    );
    let under = build(
        single_task(&[0, 1]),
        binary_dist(1, 4),
        binary_dist(5, 6),
        binary_dist(3, 4),
        uninf2,
        sym(3, 4),
    );
    let slight = build(
        two_task_firm(),
        binary_dist(1, 2),
        binary_dist(3, 4),
        binary_dist(1, 4),
        sym(9, 13),
        sym(4, 5),
    );

    vec![
        Counterexample {
            name: "non-monotone-firm",
            breaks: NarrowingHypothesis::MonotoneFirm,
            scenario: monotone,
        },
        Counterexample {
            name: "non-mlr-fine",
            breaks: NarrowingHypothesis::FineMlr,
            scenario: mlr,
        },
        Counterexample {
            name: "i-not-over-perceived",
            breaks: NarrowingHypothesis::IOverPerceived,
            scenario: over,
        },
        Counterexample {
            name: "j-not-under-perceived",
            breaks: NarrowingHypothesis::JUnderPerceived,
            scenario: under,
        },
        Counterexample {
            name: "not-slight",
            breaks: NarrowingHypothesis::Slight,
            scenario: slight,
        },
    ]
}

/// Largest `eps` for which closeness of `fine` to full information is
/// guaranteed to keep the fine gap at or below the coarse gap `η`.
///
/// Within that `eps`, every posterior of either population puts at least
/// `1 - δ` on the signal's dominant type, so the two populations' pay at any
/// signal differs by at most `4Lδ`, where `L` is the largest absolute surplus.
/// Taking `δ = min(1, η / 4L)` gives the bound; `η = 0` gives `eps = 0`.
pub fn certified_eps<T: Scalar>(sc: &GapScenario<T>) -> Result<EpsBound<T>> {
    let eta = sc.gap_coarse()?;
    if eta <= T::zero() {
        return Ok(EpsBound::Finite(T::zero()));
    }
    let scale = T::from_int(4) * sc.firm.max_abs_surplus();
    if scale.is_zero() {
        return Ok(EpsBound::Unbounded);
    }
    let ratio = eta / scale;
    let delta = if ratio > T::one() { T::one() } else { ratio };
    let a = crate::garbling::prop3_eps_bound(&sc.q_i, &delta)?;
    let b = crate::garbling::prop3_eps_bound(&sc.q_j, &delta)?;
    Ok(match (a, b) {
        (EpsBound::Finite(x), EpsBound::Finite(y)) => EpsBound::Finite(if x < y { x } else { y }),
        (EpsBound::Finite(x), EpsBound::Unbounded) | (EpsBound::Unbounded, EpsBound::Finite(x)) => {
            EpsBound::Finite(x)
        }
        (EpsBound::Unbounded, EpsBound::Unbounded) => EpsBound::Unbounded,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NearlyFullReport<T> {
    pub ordered: bool,
    pub gap_coarse: T,
    pub gap_fine: T,
    pub eps: T,
    /// Smallest `eps` the fine structure satisfies.
    pub fine_eps: T,
    pub certified: EpsBound<T>,
    /// `fine` is within `eps` of full information and `eps` is certified.
    pub applies: bool,
    pub narrows: bool,
}

impl<T: Scalar> NearlyFullReport<T> {
    pub fn violated(&self) -> bool {
        self.ordered && self.applies && !self.narrows
    }
}

/// Checks that a fine structure within a certified `eps` of full
/// information does not widen the gap.
pub fn check_nearly_full<T: Scalar>(
    sc: &GapScenario<T>,
    eps: &T,
    tol: f64,
) -> Result<NearlyFullReport<T>> {
    let within = within_eps_of_full(&sc.fine, eps)?;
    let certified = certified_eps(sc)?;
    let gap_coarse = sc.gap_coarse()?;
    let gap_fine = sc.gap_fine()?;
    Ok(NearlyFullReport {
        ordered: sc.is_ordered(),
        applies: within && certified.admits(eps),
        narrows: gap_coarse.ge_tol(&gap_fine, tol),
        fine_eps: eps_of_structure(&sc.fine),
        eps: eps.clone(),
        certified,
        gap_coarse,
        gap_fine,
    })
}
