//! Seeded randomized property suites. Each trial draws its own stream, so
//! results do not depend on scheduling; trials run in parallel and are
//! reported in trial order.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::decomposition::{
    check_sign_theorem, decompose, decompose_with_kernel, instrumental_by_fine, DecompResult,
    CLAIM_CORRECTING_OVER, CLAIM_CORRECTING_UNDER, CLAIM_TOTAL_UNDER,
};
use crate::discrimination::{
    certified_eps, check_corollary2, check_narrowing, check_nearly_full, pay_gap,
    prop2_counterexamples, GapScenario,
};
use crate::error::Result;
use crate::garbling::{
    build_joints, eps_of_structure, find_garbling, is_slightly_more_informative, prop3_eps_bound,
    within_eps_of_full, EpsBound,
};
use crate::gen::{self, trial_rng, TrialRng, RNG_ALGORITHM};
use crate::instance::{Change, Instance};
use crate::model::{
    average_pay_parts, posterior, Dist, Firm, SignalStructure, SkillSpace, TieBreak,
};
use crate::orders::{
    fosd_geq, fosd_geq_slices, is_mlr, lr_geq, ordered_row, perception_class,
    separating_structure_at, violating_pair,
};
use crate::scalar::{dot, Mode, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Theorem1,
    Lemma1,
    Corollary1,
    Corollary2,
    Prop1,
    Prop2,
    Prop3,
    Orders,
    Garbling,
    Blackwell,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Theorem1,
        Suite::Lemma1,
        Suite::Corollary1,
        Suite::Corollary2,
        Suite::Prop1,
        Suite::Prop2,
        Suite::Prop3,
        Suite::Orders,
        Suite::Garbling,
        Suite::Blackwell,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Lemma1 => "lemma1",
            Suite::Corollary1 => "corollary1",
            Suite::Corollary2 => "corollary2",
            Suite::Prop1 => "prop1",
            Suite::Prop2 => "prop2",
            Suite::Prop3 => "prop3",
            Suite::Orders => "orders",
            Suite::Garbling => "garbling",
            Suite::Blackwell => "blackwell",
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("unknown suite {0:?}")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimTally {
    pub claim: String,
    pub checked: usize,
    pub passed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub trial: usize,
    pub claim: String,
    /// Serialized instance, or an error description.
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub mode: Mode,
    pub seed: u64,
    pub trials: usize,
    pub tallies: Vec<ClaimTally>,
    pub first_failure: Option<Failure>,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.tallies.iter().all(|t| t.passed == t.checked)
    }

    pub fn tally(&self, claim: &str) -> Option<&ClaimTally> {
        self.tallies.iter().find(|t| t.claim == claim)
    }

    /// Human-readable summary with a header naming the generator.
    pub fn report(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "# suite={} mode={} seed={} trials={} rng={}",
            self.suite.name(),
            self.mode.name(),
            self.seed,
            self.trials,
            RNG_ALGORITHM
        )
        .expect("write to string");
        for t in &self.tallies {
            let mark = if t.passed == t.checked {
                "ok  "
            } else {
                "FAIL"
            };
            writeln!(out, "{mark} {:<40} {}/{}", t.claim, t.passed, t.checked)
                .expect("write to string");
        }
        match &self.first_failure {
            Some(f) => {
                writeln!(
                    out,
                    "first counterexample: trial {} claim {}",
                    f.trial, f.claim
                )
                .expect("write to string");
                out.push_str(&f.witness);
                if !f.witness.ends_with('\n') {
                    out.push('\n');
                }
            }
            None => out.push_str(if self.passed() {
                "all checks passed\n"
            } else {
                "\n"
            }),
        }
        out
    }
}

/// Checks from one trial plus a lazily produced witness.
struct Trial {
    checks: Vec<(&'static str, bool)>,
    witness: Option<String>,
}

struct Checks {
    list: Vec<(&'static str, bool)>,
}

impl Checks {
    fn new() -> Self {
        Self { list: vec![] }
    }

    fn add(&mut self, claim: &'static str, ok: bool) {
        self.list.push((claim, ok));
    }

    fn finish(self, witness: impl FnOnce() -> String) -> Trial {
        let failed = self.list.iter().any(|(_, ok)| !ok);
        Trial {
            witness: failed.then(witness),
            checks: self.list,
        }
    }
}

fn run_trials<F>(trials: usize, seed: u64, f: F) -> Vec<Trial>
where
    F: Fn(&mut TrialRng) -> Result<Trial> + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64);
            f(&mut rng).unwrap_or_else(|e| Trial {
                checks: vec![("no-model-error", false)],
                witness: Some(format!("error: {e}\n")),
            })
        })
        .collect()
}

fn summarize(suite: Suite, mode: Mode, seed: u64, results: Vec<Trial>) -> SuiteSummary {
    let mut order: Vec<String> = vec![];
    let mut counts: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut first_failure = None;
    let trials = results.len();
    for (i, t) in results.into_iter().enumerate() {
        for (claim, ok) in &t.checks {
            let entry = counts.entry(claim.to_string()).or_insert_with(|| {
                order.push(claim.to_string());
                (0, 0)
            });
            entry.0 += 1;
            if *ok {
                entry.1 += 1;
            } else if first_failure.is_none() {
                first_failure = Some(Failure {
                    trial: i,
                    claim: claim.to_string(),
                    witness: t.witness.clone().unwrap_or_default(),
                });
            }
        }
    }
    let tallies = order
        .into_iter()
        .map(|c| {
            let (checked, passed) = counts[&c];
            ClaimTally {
                claim: c,
                checked,
                passed,
            }
        })
        .collect();
    SuiteSummary {
        suite,
        mode,
        seed,
        trials,
        tallies,
        first_failure,
    }
}

/// Runs a suite. `tol` is the slack for float comparisons and is ignored
/// in rational mode.
pub fn run_suite<T: Scalar>(suite: Suite, trials: usize, seed: u64, tol: f64) -> SuiteSummary {
    let trials = trials.max(1);
    let results = match suite {
        Suite::Theorem1 => run_trials(trials, seed, |rng| theorem1_trial::<T>(rng, tol)),
        Suite::Lemma1 => run_trials(trials, seed, |rng| lemma1_trial::<T>(rng, tol)),
        Suite::Corollary1 => run_trials(trials, seed, |rng| corollary1_trial::<T>(rng, tol)),
        Suite::Corollary2 => run_trials(trials, seed, |rng| corollary2_trial::<T>(rng, tol)),
        Suite::Prop1 => run_trials(trials, seed, |rng| prop1_trial::<T>(rng, tol)),
        Suite::Prop2 => prop2_checks::<T>(tol),
        Suite::Prop3 => run_trials(trials, seed, |rng| prop3_trial::<T>(rng, tol)),
        Suite::Orders => run_trials(trials, seed, |rng| orders_trial::<T>(rng)),
        Suite::Garbling => run_trials(trials, seed, |rng| garbling_trial::<T>(rng)),
        Suite::Blackwell => run_trials(trials, seed, |rng| blackwell_trial::<T>(rng, tol)),
    };
    summarize(suite, T::MODE, seed, results)
}

/// Size limits for unrestricted instances.
const MAX_TYPES: usize = 5;
const MAX_COARSE: usize = 5;
const MAX_FINE: usize = 6;
const MAX_TASKS: usize = 4;

/// A firm, `p`, `q`, a fine structure, and a coarse structure obtained
/// from it through a known kernel.
pub struct RandomChange<T> {
    pub change: Change<T>,
    pub kernel: crate::garbling::GarblingKernel<T>,
}

/// Sign hypotheses to enforce when drawing a change.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Draw {
    /// Any firm, any fine structure, independent `p` and `q`.
    Unrestricted,
    /// Monotone firm, MLR fine structure, `p ⪰_LR q`.
    UnderPerceived,
    /// Monotone firm, MLR fine structure, `q ⪰_LR p`.
    OverPerceived,
    /// Any firm, any fine structure, `q = p`.
    Accurate,
}

pub fn random_change<T: Scalar>(rng: &mut TrialRng, draw: Draw) -> RandomChange<T> {
    let n = rng.gen_range(2..=MAX_TYPES);
    let kf = rng.gen_range(1..=MAX_FINE);
    let kc = rng.gen_range(1..=MAX_COARSE);
    let m = rng.gen_range(1..=MAX_TASKS);
    let shaped = matches!(draw, Draw::UnderPerceived | Draw::OverPerceived);
    let firm = if shaped {
        gen::random_monotone_firm(rng, n, m)
    } else {
        gen::random_firm(rng, n, m)
    };
    let fine = if shaped {
        gen::random_mlr_structure(rng, n, kf)
    } else {
        gen::random_structure(rng, n, kf)
    };
    let sticky = rng.gen_bool(0.5);
    let kernel = gen::random_kernel(rng, kf, kc, sticky);
    let coarse = kernel.apply(&fine).expect("kernel fits");
    let base = gen::positive_weights(rng, n, 9);
    let (p, q) = match draw {
        Draw::Unrestricted => (gen::dist_from_weights(&base), gen::random_dist(rng, n)),
        Draw::UnderPerceived => (
            gen::dist_from_weights(&gen::lr_above(rng, &base)),
            gen::dist_from_weights(&base),
        ),
        Draw::OverPerceived => (
            gen::dist_from_weights(&base),
            gen::dist_from_weights(&gen::lr_above(rng, &base)),
        ),
        Draw::Accurate => {
            let d = gen::dist_from_weights(&base);
            (d.clone(), d)
        }
    };
    RandomChange {
        change: Change {
            firm,
            p,
            q,
            coarse,
            fine,
        },
        kernel,
    }
}

fn change_text<T: Scalar>(c: &Change<T>) -> String {
    Instance::from_change(c).to_text()
}

fn decompose_change<T: Scalar>(c: &Change<T>) -> Result<DecompResult<T>> {
    decompose(&c.firm, &c.p, &c.q, &c.coarse, &c.fine)
}

/// For each coarse signal, the value of the coarse assignment along fine
/// signals in ascending value order is non-decreasing, and the conditional
/// fine-signal law under the higher of `p`, `q` dominates the other.
fn ordering_lemmas<T: Scalar>(
    c: &Change<T>,
    d: &DecompResult<T>,
    p_above: bool,
    tol: f64,
) -> Result<(bool, bool)> {
    let (mu_p, mu_q) = build_joints(&c.p, &c.q, &c.fine, &c.coarse, &d.kernel)?;
    let order = c.fine.value_order()?;
    let mut increasing = true;
    let mut dominance = true;
    for s in 0..c.coarse.num_signals() {
        let task = c.firm.tasks()[d.assignment_coarse[s]].surplus();
        let mut prev: Option<T> = None;
        for &t in &order {
            if let Some(cond) = mu_q.type_given_pair(s, t) {
                let v = dot(&cond, task);
                if let Some(pv) = &prev {
                    increasing &= v.ge_tol(pv, tol);
                }
                prev = Some(v);
            }
        }
        let cond_p: Vec<T> = order
            .iter()
            .map(|&t| mu_p.fine_given_coarse(t, s))
            .collect();
        let cond_q: Vec<T> = order
            .iter()
            .map(|&t| mu_q.fine_given_coarse(t, s))
            .collect();
        dominance &= if p_above {
            fosd_geq_slices(&cond_p, &cond_q)
        } else {
            fosd_geq_slices(&cond_q, &cond_p)
        };
    }
    Ok((increasing, dominance))
}

fn theorem1_trial<T: Scalar>(rng: &mut TrialRng, tol: f64) -> Result<Trial> {
    let mut checks = Checks::new();
    let free = random_change::<T>(rng, Draw::Unrestricted);
    let c = &free.change;
    let d = decompose_change(c)?;
    let zero = T::zero();
    checks.add("identity", d.residual().approx_eq(&zero, tol));
    checks.add(
        "instrumental-nonnegative",
        d.instrumental.ge_tol(&zero, tol),
    );
    let alt = instrumental_by_fine(
        &c.firm,
        &c.p,
        &c.q,
        &c.coarse,
        &c.fine,
        &d.kernel,
        TieBreak::Lowest,
    )?;
    checks.add(
        "instrumental-forms-agree",
        alt.approx_eq(&d.instrumental, tol),
    );
    let high = decompose_with_kernel(
        &c.firm,
        &c.p,
        &c.q,
        &c.coarse,
        &c.fine,
        d.kernel.clone(),
        TieBreak::Highest,
    )?;
    checks.add(
        "identity-highest-index-ties",
        high.residual().approx_eq(&zero, tol),
    );
    checks.add(
        "instrumental-nonnegative-highest-index-ties",
        high.instrumental.ge_tol(&zero, tol),
    );
    let other = decompose_with_kernel(
        &c.firm,
        &c.p,
        &c.q,
        &c.coarse,
        &c.fine,
        free.kernel.clone(),
        TieBreak::Lowest,
    )?;
    checks.add(
        "identity-generating-kernel",
        other.residual().approx_eq(&zero, tol) && other.total.approx_eq(&d.total, tol),
    );
    let free_text = checks
        .list
        .iter()
        .any(|(_, ok)| !ok)
        .then(|| change_text(c));

    let under = rng.gen_bool(0.5);
    let shaped = random_change::<T>(
        rng,
        if under {
            Draw::UnderPerceived
        } else {
            Draw::OverPerceived
        },
    );
    let sc = &shaped.change;
    let report = check_sign_theorem(&sc.firm, &sc.p, &sc.q, &sc.coarse, &sc.fine, tol)?;
    let claim = if under {
        CLAIM_CORRECTING_UNDER
    } else {
        CLAIM_CORRECTING_OVER
    };
    let check = report.claim(claim).expect("listed");
    checks.add("sign-hypotheses-generated", check.hypotheses_hold);
    checks.add(
        if under {
            "correcting-nonnegative-under"
        } else {
            "correcting-nonpositive-over"
        },
        check.conclusion_holds,
    );
    if under {
        checks.add(
            "total-nonnegative-under",
            report
                .claim(CLAIM_TOTAL_UNDER)
                .expect("listed")
                .conclusion_holds,
        );
    }
    checks.add(
        "instrumental-nonnegative-shaped",
        report.decomposition.instrumental.ge_tol(&zero, tol),
    );
    let alt_kernel = decompose_with_kernel(
        &sc.firm,
        &sc.p,
        &sc.q,
        &sc.coarse,
        &sc.fine,
        shaped.kernel.clone(),
        TieBreak::Lowest,
    )?;
    let c_alt = &alt_kernel.perception_correcting;
    checks.add(
        "correcting-sign-generating-kernel",
        if under {
            c_alt.ge_tol(&zero, tol)
        } else {
            zero.ge_tol(c_alt, tol)
        },
    );
    let (increasing, dominance) = ordering_lemmas(sc, &report.decomposition, under, tol)?;
    checks.add("assignment-value-increasing-in-fine-signal", increasing);
    checks.add("conditional-fine-law-dominance", dominance);
    Ok(checks.finish(|| free_text.unwrap_or_else(|| change_text(sc))))
}

fn corollary1_trial<T: Scalar>(rng: &mut TrialRng, tol: f64) -> Result<Trial> {
    let mut checks = Checks::new();
    let shaped = random_change::<T>(rng, Draw::UnderPerceived);
    let c = &shaped.change;
    let report = check_sign_theorem(&c.firm, &c.p, &c.q, &c.coarse, &c.fine, tol)?;
    let claim = report.claim(CLAIM_TOTAL_UNDER).expect("listed");
    checks.add("hypotheses-generated", claim.hypotheses_hold);
    checks.add("total-nonnegative", claim.conclusion_holds);
    Ok(checks.finish(|| change_text(c)))
}

fn blackwell_trial<T: Scalar>(rng: &mut TrialRng, tol: f64) -> Result<Trial> {
    let mut checks = Checks::new();
    let drawn = random_change::<T>(rng, Draw::Accurate);
    let c = &drawn.change;
    let d = decompose_change(c)?;
    checks.add(
        "correcting-zero",
        d.perception_correcting.approx_eq(&T::zero(), tol),
    );
    checks.add("fine-pays-weakly-more", d.w_fine.ge_tol(&d.w_coarse, tol));
    checks.add(
        "total-equals-instrumental",
        d.total.approx_eq(&d.instrumental, tol),
    );
    Ok(checks.finish(|| change_text(c)))
}

fn lemma1_trial<T: Scalar>(rng: &mut TrialRng, tol: f64) -> Result<Trial> {
    let mut checks = Checks::new();
    let n = rng.gen_range(2..=MAX_TYPES);
    let k = rng.gen_range(1..=MAX_FINE);
    let firm: Firm<T> = {
        let arg = rng.gen_range(1..=MAX_TASKS);
        gen::random_monotone_firm(rng, n, arg)
    };
    let p: Dist<T> = gen::random_dist(rng, n);
    let sig = gen::random_structure(rng, n, k);
    let base = gen::positive_weights(rng, n, 9);
    let q: Dist<T> = gen::dist_from_weights(&base);
    let q_up: Dist<T> = gen::dist_from_weights(&gen::lr_above(rng, &base));
    let w_up = average_pay_parts(&firm, &p, &q_up, &sig)?;
    let w = average_pay_parts(&firm, &p, &q, &sig)?;
    checks.add(
        "favorable-perception-earns-weakly-more",
        w_up.ge_tol(&w, tol),
    );
    let mut witness = Instance::new(SkillSpace::range(n)?);
    witness.firm = Some(firm);
    witness.put_distribution("p", p.clone());
    witness.put_distribution("q", q);
    witness.put_distribution("q_favored", q_up);
    witness.put_structure("sig", sig);

    // Unordered pair: the pooling structure at a violating pair hurts q'.
    let (q_other, q_prime, (lo, hi)) = loop {
        let a: Dist<T> = gen::random_dist(rng, n);
        let b: Dist<T> = gen::random_dist(rng, n);
        if let Some(pair) = violating_pair(&b, &a) {
            break (a, b, pair);
        }
    };
    let pooled = separating_structure_at(n, lo, hi)?;
    let mut strict = true;
    for _ in 0..10 {
        let f: Firm<T> = {
            let arg = rng.gen_range(1..=MAX_TASKS);
            gen::random_monotone_firm(rng, n, arg)
        };
        let w_prime = average_pay_parts(&f, &p, &q_prime, &pooled)?;
        let w_other = average_pay_parts(&f, &p, &q_other, &pooled)?;
        strict &= w_prime < w_other;
    }
    checks.add("unfavorable-perception-earns-less-under-pooling", strict);
    witness.put_distribution("q_unordered", q_other);
    witness.put_distribution("q_prime", q_prime);
    witness.put_structure("pooling", pooled);
    Ok(checks.finish(|| witness.to_text()))
}

fn corollary2_trial<T: Scalar>(rng: &mut TrialRng, tol: f64) -> Result<Trial> {
    let mut checks = Checks::new();
    let n = rng.gen_range(2..=MAX_TYPES);
    let kf = rng.gen_range(1..=MAX_FINE);
    let kc = rng.gen_range(1..=MAX_COARSE);
    let firm: Firm<T> = {
        let arg = rng.gen_range(1..=MAX_TASKS);
        gen::random_monotone_firm(rng, n, arg)
    };
    let sig_i: SignalStructure<T> = gen::random_mlr_structure(rng, n, kf);
    let sticky = rng.gen_bool(0.5);
    let sig_j = gen::random_kernel(rng, kf, kc, sticky).apply(&sig_i)?;
    let base = gen::positive_weights(rng, n, 9);
    let q_j: Dist<T> = gen::dist_from_weights(&base);
    let p: Dist<T> = gen::dist_from_weights(&gen::lr_above(rng, &base));
    let q_i: Dist<T> = gen::dist_from_weights(&gen::lr_above(rng, &base));
    let rep = check_corollary2(&firm, &p, &q_i, &q_j, &sig_i, &sig_j, tol)?;
    let zero = T::zero();
    checks.add("hypotheses-generated", rep.hypotheses_hold());
    checks.add("favored-population-paid-weakly-more", rep.conclusion_holds);
    if let Some(t) = &rep.terms {
        checks.add(
            "favorableness-term-nonnegative",
            t.favorableness.ge_tol(&zero, tol),
        );
        checks.add(
            "correcting-term-nonnegative",
            t.correcting.ge_tol(&zero, tol),
        );
        checks.add(
            "instrumental-term-nonnegative",
            t.instrumental.ge_tol(&zero, tol),
        );
        checks.add("terms-sum-to-gap", t.sum().approx_eq(&rep.gap, tol));
    }
    Ok(checks.finish(|| {
        let sc = GapScenario {
            firm,
            p,
            q_i,
            q_j,
            coarse: sig_j,
            fine: sig_i,
        };
        Instance::from_scenario(&sc).to_text()
    }))
}

/// Scenario satisfying every narrowing hypothesis. Slightness is enforced by
/// rejection on multi-task firms; single-task firms satisfy it always and
/// serve as the fallback.
pub fn random_narrowing_scenario<T: Scalar>(rng: &mut TrialRng) -> Result<GapScenario<T>> {
    for attempt in 0..60 {
        let n = rng.gen_range(2..=4);
        let kf = rng.gen_range(1..=5);
        let kc = rng.gen_range(1..=kf);
        let tasks = if attempt == 59 || rng.gen_bool(0.4) {
            1
        } else {
            rng.gen_range(2..=3)
        };
        let firm: Firm<T> = gen::random_monotone_firm(rng, n, tasks);
        let fine: SignalStructure<T> = gen::random_mlr_structure(rng, n, kf);
        let kernel = gen::random_kernel(rng, kf, kc, true);
        let coarse = kernel.apply(&fine)?;
        let base = gen::positive_weights(rng, n, 9);
        let q_j: Dist<T> = gen::dist_from_weights(&base);
        let p_w = gen::lr_above(rng, &base);
        let p: Dist<T> = gen::dist_from_weights(&p_w);
        let q_i: Dist<T> = gen::dist_from_weights(&gen::lr_above(rng, &p_w));
        let Some(g) = find_garbling(&fine, &coarse)? else {
            continue;
        };
        if is_slightly_more_informative(&firm, &q_i, &fine, &coarse, &g)?
            && is_slightly_more_informative(&firm, &q_j, &fine, &coarse, &g)?
        {
            return GapScenario::new(firm, p, q_i, q_j, coarse, fine);
        }
    }
    unreachable!("single-task fallback is always slight")
}

fn prop1_trial<T: Scalar>(rng: &mut TrialRng, tol: f64) -> Result<Trial> {
    let mut checks = Checks::new();
    let sc = random_narrowing_scenario::<T>(rng)?;
    let rep = check_narrowing(&sc, tol)?;
    checks.add("hypotheses-generated", rep.all_hold());
    checks.add("gap-narrows", rep.narrows);
    Ok(checks.finish(|| Instance::from_scenario(&sc).to_text()))
}

fn prop2_checks<T: Scalar>(tol: f64) -> Vec<Trial> {
    prop2_counterexamples::<T>()
        .into_iter()
        .map(|cx| {
            let mut checks = Checks::new();
            match check_narrowing(&cx.scenario, tol) {
                Ok(rep) => {
                    checks.add("perceptions-ordered", rep.ordered);
                    checks.add(
                        "only-designated-hypothesis-fails",
                        rep.failing() == vec![cx.breaks],
                    );
                    checks.add("gap-widens", !rep.narrows);
                }
                Err(_) => checks.add("no-model-error", false),
            }
            checks.finish(|| {
                format!(
                    "# {}\n{}",
                    cx.name,
                    Instance::from_scenario(&cx.scenario).to_text()
                )
            })
        })
        .collect()
}

/// Posteriors under `q` all lie in `[0, δ] ∪ [1 - δ, 1]`, up to `tol` in
/// float mode.
pub fn is_delta_extreme<T: Scalar>(
    q: &Dist<T>,
    sig: &SignalStructure<T>,
    delta: &T,
    tol: f64,
) -> Result<bool> {
    let hi = T::one() - delta.clone();
    for s in 0..sig.num_signals() {
        if !posterior(q, sig, s)?
            .probs()
            .iter()
            .all(|x| delta.ge_tol(x, tol) || x.ge_tol(&hi, tol))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One signal per type with off-diagonal likelihoods `eps·x·u`, `u ∈ (0, 1]`,
/// where `x = 1 / (1 + eps (n - 1))`; the remaining mass sits on the
/// diagonal, which is at least `x`. Entries with `u = 1` are at the bound.
pub fn structure_within_eps<T: Scalar>(
    rng: &mut TrialRng,
    n: usize,
    eps: &T,
) -> Result<SignalStructure<T>> {
    let x = T::one() / (T::one() + eps.clone() * T::from_int(n as i64 - 1));
    let mut rows: Vec<Vec<T>> = vec![vec![T::zero(); n]; n];
    for (theta, row) in rows.iter_mut().enumerate() {
        let mut off = T::zero();
        for (s, cell) in row.iter_mut().enumerate() {
            if s != theta {
                let u: T = if rng.gen_bool(0.5) {
                    T::one()
                } else {
                    gen::open_unit(rng)
                };
                *cell = eps.clone() * x.clone() * u;
                off = off + cell.clone();
            }
        }
        row[theta] = T::one() - off;
    }
    SignalStructure::from_rows(rows)
}

/// `δ` whose bound equals `eps`, inverting `eps = δ/(1-δ) · m/(n-1)`.
fn delta_for_eps<T: Scalar>(q: &Dist<T>, eps: &T) -> T {
    let odds = q
        .probs()
        .iter()
        .map(|x| x.clone() / (T::one() - x.clone()))
        .reduce(|a, b| if b < a { b } else { a })
        .expect("non-empty");
    let t = eps.clone() * T::from_int(q.len() as i64 - 1) / odds;
    t.clone() / (T::one() + t)
}

fn prop3_trial<T: Scalar>(rng: &mut TrialRng, tol: f64) -> Result<Trial> {
    let mut checks = Checks::new();
    let n = rng.gen_range(2..=MAX_TYPES);
    let q: Dist<T> = gen::random_dist(rng, n);
    let mut witness = Instance::new(SkillSpace::range(n)?);
    witness.put_distribution("q", q.clone());

    // From (q, δ): build a structure at the implied bound.
    let delta: T = gen::open_unit(rng);
    let EpsBound::Finite(eps) = prop3_eps_bound(&q, &delta)? else {
        unreachable!("δ < 1")
    };
    let sig = structure_within_eps(rng, n, &eps)?;
    checks.add("construction-within-eps", within_eps_of_full(&sig, &eps)?);
    checks.add(
        "delta-extreme-at-eps-bound",
        is_delta_extreme(&q, &sig, &delta, tol)?,
    );
    witness.put_structure("at_eps_bound", sig);

    // From a random near-full structure: read off its eps and invert.
    let k = rng.gen_range(n..=n + 2);
    let full: SignalStructure<T> = gen::random_fully_informative(rng, n, k);
    let noise: SignalStructure<T> = gen::random_structure(rng, n, k);
    let t = T::from_frac(1, rng.gen_range(4..=200));
    let rows = (0..n)
        .map(|th| {
            (0..k)
                .map(|s| {
                    (T::one() - t.clone()) * full.lik(s, th).clone()
                        + t.clone() * noise.lik(s, th).clone()
                })
                .collect()
        })
        .collect();
    let mixed = SignalStructure::from_rows(rows)?;
    let eps_star = eps_of_structure(&mixed);
    let delta_star = delta_for_eps(&q, &eps_star);
    checks.add(
        "delta-extreme-at-structure-eps",
        is_delta_extreme(&q, &mixed, &delta_star, tol)?,
    );
    witness.put_structure("near_full", mixed);

    // Full information removes any gap.
    let firm: Firm<T> = {
        let arg = rng.gen_range(1..=MAX_TASKS);
        gen::random_firm(rng, n, arg)
    };
    let (p, q_i, q_j): (Dist<T>, Dist<T>, Dist<T>) = (
        gen::random_dist(rng, n),
        gen::random_dist(rng, n),
        gen::random_dist(rng, n),
    );
    let revealing = gen::random_fully_informative(rng, n, k);
    checks.add(
        "full-information-no-gap",
        pay_gap(&firm, &p, &q_i, &q_j, &revealing)?.approx_eq(&T::zero(), tol),
    );

    // Nearly full fine structure at the certified eps narrows an ordered gap.
    let base = gen::positive_weights(rng, n, 9);
    let q_j: Dist<T> = gen::dist_from_weights(&base);
    let q_i: Dist<T> = gen::dist_from_weights(&gen::lr_above(rng, &base));
    let mono: Firm<T> = {
        let arg = rng.gen_range(1..=MAX_TASKS);
        gen::random_monotone_firm(rng, n, arg)
    };
    let coarse: SignalStructure<T> = {
        let arg = rng.gen_range(1..=MAX_COARSE);
        gen::random_structure(rng, n, arg)
    };
    let probe = GapScenario::new(mono, p, q_i, q_j, coarse, revealing)?;
    let (fine, eps) = match certified_eps(&probe)? {
        EpsBound::Finite(e) if e > T::zero() => (structure_within_eps(rng, n, &e)?, e),
        EpsBound::Finite(e) => (probe.fine.clone(), e),
        EpsBound::Unbounded => {
            let e = T::one();
            (structure_within_eps(rng, n, &e)?, e)
        }
    };
    let sc = GapScenario { fine, ..probe };
    let rep = check_nearly_full(&sc, &eps, tol)?;
    checks.add("nearly-full-applies", rep.applies && rep.ordered);
    checks.add("nearly-full-narrows", rep.narrows);
    Ok(checks.finish(|| {
        let mut text = witness.to_text();
        text.push('\n');
        text.push_str(&Instance::from_scenario(&sc).to_text());
        text
    }))
}

fn orders_trial<T: Scalar>(rng: &mut TrialRng) -> Result<Trial> {
    let mut checks = Checks::new();
    let n = rng.gen_range(2..=MAX_TYPES);
    let base = gen::positive_weights(rng, n, 9);
    let lo: Dist<T> = gen::dist_from_weights(&base);
    let hi: Dist<T> = gen::dist_from_weights(&gen::lr_above(rng, &base));
    checks.add("lr-construction", lr_geq(&hi, &lo));
    checks.add("lr-implies-fosd", fosd_geq(&hi, &lo));
    checks.add("lr-reflexive", lr_geq(&lo, &lo) && fosd_geq(&lo, &lo));
    checks.add(
        "perception-class-under",
        perception_class(&hi, &lo).is_under(),
    );
    checks.add(
        "perception-class-over",
        perception_class(&lo, &hi).is_over(),
    );
    let a: Dist<T> = gen::random_dist(rng, n);
    let b: Dist<T> = gen::random_dist(rng, n);
    if lr_geq(&a, &b) {
        checks.add("lr-implies-fosd-random", fosd_geq(&a, &b));
    }
    checks.add(
        "violating-pair-iff-not-lr",
        violating_pair(&a, &b).is_some() != lr_geq(&a, &b),
    );
    let k = rng.gen_range(1..=MAX_FINE);
    let sig: SignalStructure<T> = gen::random_mlr_structure(rng, n, k);
    checks.add("mlr-construction", is_mlr(&sig)?);
    let rows_fosd = (1..n).all(|t| {
        let (r0, r1) = (
            ordered_row(&sig, t - 1).expect("valued"),
            ordered_row(&sig, t).expect("valued"),
        );
        fosd_geq_slices(&r1, &r0)
    });
    checks.add("mlr-rows-fosd-increasing", rows_fosd);
    let any: SignalStructure<T> = gen::random_structure(rng, n, k);
    let preserved = (0..k).all(|s| {
        lr_geq(
            &posterior(&hi, &any, s).expect("valid"),
            &posterior(&lo, &any, s).expect("valid"),
        )
    });
    checks.add("posterior-preserves-lr", preserved);
    Ok(checks.finish(|| {
        let mut inst = Instance::new(SkillSpace::range(n).expect("n >= 2"));
        inst.put_distribution("lo", lo);
        inst.put_distribution("hi", hi);
        inst.put_distribution("a", a);
        inst.put_distribution("b", b);
        inst.put_structure("mlr", sig);
        inst.put_structure("any", any);
        inst.to_text()
    }))
}

fn garbling_trial<T: Scalar>(rng: &mut TrialRng) -> Result<Trial> {
    let mut checks = Checks::new();
    let n = rng.gen_range(2..=MAX_TYPES);
    let k = rng.gen_range(1..=MAX_FINE);
    let a: SignalStructure<T> = gen::random_structure(rng, n, k);
    checks.add("identity-feasible", find_garbling(&a, &a)?.is_some());
    checks.add(
        "uninformative-target-feasible",
        find_garbling(&a, &SignalStructure::uninformative(n))?.is_some(),
    );
    checks.add(
        "full-information-source-feasible",
        find_garbling(&SignalStructure::fully_informative(n), &a)?.is_some(),
    );
    let kb = rng.gen_range(1..=MAX_COARSE);
    let kc = rng.gen_range(1..=MAX_COARSE);
    let g1 = {
        let arg = rng.gen_bool(0.5);
        gen::random_kernel(rng, k, kb, arg)
    };
    let b = g1.apply(&a)?;
    let g2 = {
        let arg = rng.gen_bool(0.5);
        gen::random_kernel(rng, kb, kc, arg)
    };
    let c = g2.apply(&b)?;
    let composed = g1.then(&g2)?;
    checks.add("composed-kernel-valid", composed.validate(&a, &c).is_ok());
    checks.add("transitive-feasible", find_garbling(&a, &c)?.is_some());
    Ok(checks.finish(|| {
        let mut inst = Instance::new(SkillSpace::range(n).expect("n >= 2"));
        inst.put_structure("a", a);
        inst.put_structure("b", b);
        inst.put_structure("c", c);
        inst.to_text()
    }))
}
