//! Acceptance run: one line per criterion. Values are cross-checked against
//! oracles written here from the definitions, not against library helpers.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use paygap::decomposition::decompose;
use paygap::discrimination::{
    check_narrowing, pay_gap, prop2_counterexamples, NarrowingHypothesis,
};
use paygap::experiments::{parse_grid, run_sweep, sweep_row, SweepRow};
use paygap::garbling::{find_garbling, prop3_eps_bound, EpsBound, GarblingKernel};
use paygap::gen::{self, trial_rng};
use paygap::orders::{is_mlr, separating_structure_at, violating_pair};
use paygap::suites::{random_change, random_narrowing_scenario, structure_within_eps, Draw};
use paygap::{Dist, Firm, Rational, Scalar, SignalStructure, Task};
use rand::Rng;

const SEED: u64 = 20_240_601;

/// Criteria whose literal check is known to be false and is recorded as
/// such; the run still requires them to fail so a change is noticed.
const KNOWN_FALSE: &[u32] = &[7];

fn r(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

fn zero() -> Rational {
    Rational::from_int(0)
}

// ---- oracles -------------------------------------------------------------

fn post_oracle(q: &[Rational], sig: &SignalStructure<Rational>, s: usize) -> Option<Vec<Rational>> {
    let joint: Vec<Rational> = (0..q.len()).map(|t| &q[t] * sig.lik(s, t)).collect();
    let total: Rational = joint.iter().sum();
    (total != zero()).then(|| joint.into_iter().map(|x| x / &total).collect())
}

fn pay_oracle(firm: &Firm<Rational>, belief: &[Rational]) -> Rational {
    firm.tasks()
        .iter()
        .map(|a| {
            a.surplus()
                .iter()
                .zip(belief)
                .map(|(x, b)| x * b)
                .sum::<Rational>()
        })
        .max()
        .expect("non-empty firm")
}

/// Average pay computed directly from the definition.
fn w_oracle(
    firm: &Firm<Rational>,
    p: &Dist<Rational>,
    q: &Dist<Rational>,
    sig: &SignalStructure<Rational>,
) -> Rational {
    let mut total = zero();
    for s in 0..sig.num_signals() {
        let mass: Rational = (0..p.len()).map(|t| p.get(t) * sig.lik(s, t)).sum();
        if mass == zero() {
            continue;
        }
        let belief = post_oracle(q.probs(), sig, s).expect("q has full support");
        total += mass * pay_oracle(firm, &belief);
    }
    total
}

fn lr_oracle(hi: &[Rational], lo: &[Rational]) -> bool {
    (0..hi.len()).all(|j| (0..j).all(|i| &hi[j] * &lo[i] >= &hi[i] * &lo[j]))
}

/// `g` is column-stochastic and maps `fine` onto `coarse`.
fn kernel_oracle(
    g: &GarblingKernel<Rational>,
    fine: &SignalStructure<Rational>,
    coarse: &SignalStructure<Rational>,
) -> bool {
    let columns_ok = (0..fine.num_signals()).all(|t| {
        (0..coarse.num_signals())
            .map(|s| g.get(s, t))
            .sum::<Rational>()
            == r(1, 1)
    }) && g.rows().iter().flatten().all(|x| *x >= zero());
    let maps = (0..fine.num_types()).all(|th| {
        (0..coarse.num_signals()).all(|s| {
            (0..fine.num_signals())
                .map(|t| g.get(s, t) * fine.lik(t, th))
                .sum::<Rational>()
                == *coarse.lik(s, th)
        })
    });
    columns_ok && maps
}

// ---- reporting -----------------------------------------------------------

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn timed<F: FnOnce() -> (bool, String)>(
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    f: F,
) -> Outcome {
    let start = Instant::now();
    let (ok, mut detail) = f();
    let took = start.elapsed();
    let in_time = limit.is_none_or(|l| took <= l);
    detail.push_str(&format!("; {:.1}s", took.as_secs_f64()));
    if let Some(l) = limit {
        detail.push_str(&format!(" (limit {}s)", l.as_secs()));
    }
    Outcome {
        id,
        title,
        pass: ok && in_time,
        detail,
    }
}

fn tally(label: &str, passed: usize, total: usize) -> String {
    format!("{label} {passed}/{total}")
}

// ---- criteria ------------------------------------------------------------

/// Identity and instrumental sign on the same unrestricted instances.
fn criteria_1_2() -> (Outcome, Outcome) {
    const N: u64 = 10_000;
    let mut identity = 0;
    let mut oracle_w = 0;
    let mut nonneg = 0;
    let mut worst_i = None::<Rational>;
    let start = Instant::now();
    for trial in 0..N {
        let mut rng = trial_rng(SEED, trial);
        let c = random_change::<Rational>(&mut rng, Draw::Unrestricted).change;
        let d = decompose(&c.firm, &c.p, &c.q, &c.coarse, &c.fine).expect("valid instance");
        if d.total == &d.perception_correcting + &d.instrumental {
            identity += 1;
        }
        if d.w_fine == w_oracle(&c.firm, &c.p, &c.q, &c.fine)
            && d.w_coarse == w_oracle(&c.firm, &c.p, &c.q, &c.coarse)
        {
            oracle_w += 1;
        }
        if d.instrumental >= zero() {
            nonneg += 1;
        }
        if worst_i.as_ref().is_none_or(|w| d.instrumental < *w) {
            worst_i = Some(d.instrumental.clone());
        }
    }
    let took = start.elapsed();
    let n = N as usize;
    let limit = Duration::from_secs(60);
    let c1 = Outcome {
        id: 1,
        title: "decomposition identity, exact",
        pass: identity == n && oracle_w == n && took <= limit,
        detail: format!(
            "{}, {}; {:.1}s (limit 60s)",
            tally("total = C + I", identity, n),
            tally("W matches direct oracle", oracle_w, n),
            took.as_secs_f64()
        ),
    };
    let c2 = Outcome {
        id: 2,
        title: "instrumental component non-negative",
        pass: nonneg == n,
        detail: format!(
            "{}; min I = {}",
            tally("I >= 0", nonneg, n),
            worst_i.expect("trials ran").format()
        ),
    };
    (c1, c2)
}

fn criterion_1_float() -> (bool, String) {
    const N: u64 = 10_000;
    let mut ok = 0;
    let mut worst = 0.0f64;
    let mut neg = 0;
    for trial in 0..N {
        let mut rng = trial_rng(SEED, trial);
        let c = random_change::<f64>(&mut rng, Draw::Unrestricted).change;
        let d = decompose(&c.firm, &c.p, &c.q, &c.coarse, &c.fine).expect("valid instance");
        let res = d.residual().abs();
        worst = worst.max(res);
        ok += usize::from(res <= 1e-9);
        neg += usize::from(d.instrumental < -1e-12);
    }
    (
        ok == N as usize && neg == 0,
        format!("float: |residual| <= 1e-9 {ok}/{N}, max {worst:.1e}; I < -1e-12 in {neg}"),
    )
}

fn criterion_3() -> (bool, String) {
    const N: u64 = 10_000;
    let (mut under, mut under_ok, mut over, mut over_ok, mut hyp) = (0, 0, 0, 0, 0);
    for trial in 0..N {
        let mut rng = trial_rng(SEED ^ 3, trial);
        let is_under = trial % 2 == 0;
        let c = random_change::<Rational>(
            &mut rng,
            if is_under {
                Draw::UnderPerceived
            } else {
                Draw::OverPerceived
            },
        )
        .change;
        let ordered = if is_under {
            lr_oracle(c.p.probs(), c.q.probs())
        } else {
            lr_oracle(c.q.probs(), c.p.probs())
        };
        if ordered && c.firm.is_monotone() && is_mlr(&c.fine).expect("valued signals") {
            hyp += 1;
        }
        let d = decompose(&c.firm, &c.p, &c.q, &c.coarse, &c.fine).expect("valid instance");
        if is_under {
            under += 1;
            under_ok += usize::from(d.perception_correcting >= zero());
        } else {
            over += 1;
            over_ok += usize::from(d.perception_correcting <= zero());
        }
    }
    (
        hyp == N as usize && under_ok == under && over_ok == over,
        format!(
            "{}, {}, {}",
            tally("hypotheses verified", hyp, N as usize),
            tally("C >= 0 when p >= q", under_ok, under),
            tally("C <= 0 when q >= p", over_ok, over)
        ),
    )
}

fn up(n: usize) -> Firm<Rational> {
    Firm::new(vec![Task((0..n as i64).map(Rational::from_int).collect())]).unwrap()
}

fn criterion_4() -> (bool, String) {
    let p = Dist::binary(r(1, 2)).unwrap();
    let q = Dist::binary(r(3, 4)).unwrap();
    let d = decompose(
        &up(2),
        &p,
        &q,
        &SignalStructure::uninformative(2),
        &SignalStructure::fully_informative(2),
    )
    .unwrap();
    let formula = r(1, 2) - r(3, 4);
    let ok = d.total == r(-1, 4)
        && d.perception_correcting == r(-1, 4)
        && d.instrumental == zero()
        && d.total == formula;
    (
        ok,
        format!(
            "total {}, C {}, I {}",
            d.total.format(),
            d.perception_correcting.format(),
            d.instrumental.format()
        ),
    )
}

fn criterion_5() -> (bool, String) {
    let down = Firm::new(vec![Task(vec![r(1, 1), r(0, 1)])]).unwrap();
    let mut ok = 0;
    for trial in 0..100 {
        let mut rng = trial_rng(SEED ^ 5, trial);
        let (p1, q1): (Rational, Rational) = (gen::open_unit(&mut rng), gen::open_unit(&mut rng));
        let (p, q) = (
            Dist::binary(p1.clone()).unwrap(),
            Dist::binary(q1.clone()).unwrap(),
        );
        let d = decompose(
            &down,
            &p,
            &q,
            &SignalStructure::uninformative(2),
            &SignalStructure::fully_informative(2),
        )
        .unwrap();
        ok += usize::from(d.perception_correcting == (r(1, 1) - p1) - (r(1, 1) - q1));
    }
    (ok == 100, tally("C = p(0) - q(0)", ok, 100))
}

fn criterion_6() -> (bool, String) {
    let reveal_middle = SignalStructure::from_rows(vec![
        vec![r(1, 1), r(0, 1)],
        vec![r(0, 1), r(1, 1)],
        vec![r(1, 1), r(0, 1)],
    ])
    .unwrap();
    let q = Dist::full_support(vec![r(1, 4), r(1, 4), r(1, 2)]).unwrap();
    let mut parts = vec![];
    let mut ok = true;
    for delta in [r(1, 25), r(-1, 25), r(1, 50), r(-1, 50)] {
        let p = Dist::full_support(vec![
            r(1, 4) - r(3, 1) * &delta,
            r(1, 4) + &delta,
            r(1, 2) + r(2, 1) * &delta,
        ])
        .unwrap();
        let c = decompose(
            &up(3),
            &p,
            &q,
            &SignalStructure::uninformative(3),
            &reveal_middle,
        )
        .unwrap()
        .perception_correcting;
        let expected = (r(1, 4) - p.get(1)) / r(3, 1);
        let sign = if delta > zero() {
            c < zero()
        } else {
            c > zero()
        };
        ok &= c == expected && sign;
        parts.push(format!("delta {} -> C {}", delta.format(), c.format()));
    }
    (ok, parts.join(", "))
}

fn tasks_at<'a>(rows: &'a [SweepRow<Rational>], lam: &Rational) -> &'a SweepRow<Rational> {
    rows.iter()
        .find(|row| row.lambda == *lam)
        .expect("grid point")
}

fn criterion_7() -> (bool, String) {
    let grid: Vec<Rational> = parse_grid("1/2:1:1/520").unwrap();
    let rows = run_sweep(&grid).unwrap();
    let (kink_i, kink_j) = (r(9, 13), r(4, 5));
    // Population I, signal s0: task 1 below 9/13, task 0 above, tie at it.
    let i_switch = rows.iter().all(|row| {
        let want: &[usize] = if row.lambda < kink_i {
            &[1]
        } else if row.lambda > kink_i {
            &[0]
        } else {
            &[0, 1]
        };
        row.tasks_i[0] == want && row.tasks_i[1] == [1]
    });
    // Population J, signal s1: task 0 below 4/5, task 1 above, tie at it.
    let j_switch = rows.iter().all(|row| {
        let want: &[usize] = if row.lambda < kink_j {
            &[0]
        } else if row.lambda > kink_j {
            &[1]
        } else {
            &[0, 1]
        };
        row.tasks_j[1] == want && row.tasks_j[0] == [0]
    });
    let top = tasks_at(&rows, &r(1, 1));
    let gap_one = top.gap == zero() && top.w_i == r(2, 1) && top.w_j == r(2, 1);
    let at_kinks =
        tasks_at(&rows, &kink_i).gap == r(647, 434) && tasks_at(&rows, &kink_j).gap == r(144, 91);
    // Independent evaluation of the two accuracies named in the claim.
    let direct = |lam: Rational| {
        let firm = Firm::new(vec![
            Task(vec![r(0, 1), r(1, 1)]),
            Task(vec![r(-4, 1), r(4, 1)]),
        ])
        .unwrap();
        let p = Dist::binary(r(1, 2)).unwrap();
        let sig = SignalStructure::binary_symmetric(lam).unwrap();
        w_oracle(&firm, &p, &Dist::binary(r(3, 4)).unwrap(), &sig)
            - w_oracle(&firm, &p, &Dist::binary(r(1, 4)).unwrap(), &sig)
    };
    let (g79, g81) = (direct(r(79, 100)), direct(r(81, 100)));
    let agree =
        sweep_row(&r(79, 100)).unwrap().gap == g79 && sweep_row(&r(81, 100)).unwrap().gap == g81;
    let step = r(1, 520);
    let after = tasks_at(&rows, &(&kink_j + &step)).gap.clone();
    let before = tasks_at(&rows, &(&kink_j - &step)).gap.clone();
    let literal = g81 > g79 && after > before;
    // The existence statement itself: some later accuracy has a larger gap.
    let exists = rows
        .iter()
        .any(|a| rows.iter().any(|b| b.lambda > a.lambda && b.gap > a.gap));
    let ok = i_switch && j_switch && gap_one && at_kinks && agree && literal;
    (
        ok,
        format!(
            "switch at 9/13 {i_switch}, switch at 4/5 {j_switch}, gap(1) = 0 {gap_one}, gap(9/13) = 647/434 and gap(4/5) = 144/91 {at_kinks}; \
             gap(0.81) = {} > gap(0.79) = {} is {}, gap(4/5 + 1/520) = {} > gap(4/5 - 1/520) = {} is {}; \
             some later accuracy has a larger gap {exists}",
            g81.format(),
            g79.format(),
            g81 > g79,
            after.format(),
            before.format(),
            after > before,
        ),
    )
}

fn criterion_8() -> (bool, String) {
    let mut ok = true;
    let mut parts = vec![];
    for cx in prop2_counterexamples::<Rational>() {
        let rep = check_narrowing(&cx.scenario, 0.0).unwrap();
        let only = NarrowingHypothesis::ALL
            .iter()
            .all(|&h| rep.holds(h) == (h != cx.breaks));
        let widens = rep.gap_fine > rep.gap_coarse;
        ok &= rep.ordered && only && widens;
        parts.push(format!(
            "{} {}",
            cx.name,
            if only && widens { "ok" } else { "FAIL" }
        ));
        if cx.breaks == NarrowingHypothesis::IOverPerceived {
            let change = rep.gap_fine.clone() - rep.gap_coarse.clone();
            ok &= change == r(1, 10) - r(35, 384);
            parts.push(format!("gap change {}", change.format()));
        }
    }
    (ok, parts.join(", "))
}

fn criterion_9() -> (bool, String) {
    const N: u64 = 1_000;
    let (mut hyp, mut narrows) = (0, 0);
    for trial in 0..N {
        let mut rng = trial_rng(SEED ^ 9, trial);
        let sc = random_narrowing_scenario::<Rational>(&mut rng).unwrap();
        let rep = check_narrowing(&sc, 0.0).unwrap();
        hyp += usize::from(
            rep.ordered
                && rep.all_hold()
                && lr_oracle(sc.q_i.probs(), sc.p.probs())
                && lr_oracle(sc.p.probs(), sc.q_j.probs()),
        );
        let coarse_gap = w_oracle(&sc.firm, &sc.p, &sc.q_i, &sc.coarse)
            - w_oracle(&sc.firm, &sc.p, &sc.q_j, &sc.coarse);
        let fine_gap = w_oracle(&sc.firm, &sc.p, &sc.q_i, &sc.fine)
            - w_oracle(&sc.firm, &sc.p, &sc.q_j, &sc.fine);
        narrows += usize::from(fine_gap <= coarse_gap && rep.narrows);
    }
    let n = N as usize;
    (
        hyp == n && narrows == n,
        format!(
            "{}, {}",
            tally("hypotheses verified", hyp, n),
            tally("gap narrows", narrows, n)
        ),
    )
}

fn criterion_10() -> (bool, String) {
    const N: u64 = 10_000;
    let (mut more, mut c_zero) = (0, 0);
    for trial in 0..N {
        let mut rng = trial_rng(SEED ^ 10, trial);
        let c = random_change::<Rational>(&mut rng, Draw::Accurate).change;
        let d = decompose(&c.firm, &c.p, &c.q, &c.coarse, &c.fine).unwrap();
        more += usize::from(
            w_oracle(&c.firm, &c.p, &c.p, &c.fine) >= w_oracle(&c.firm, &c.p, &c.p, &c.coarse),
        );
        c_zero += usize::from(d.perception_correcting == zero());
    }
    let n = N as usize;
    (
        more == n && c_zero == n,
        format!(
            "{}, {}",
            tally("W(fine) >= W(coarse)", more, n),
            tally("C = 0", c_zero, n)
        ),
    )
}

fn criterion_11() -> (bool, String) {
    const A: u64 = 10_000;
    const B: u64 = 1_000;
    let mut a_ok = 0;
    for trial in 0..A {
        let mut rng = trial_rng(SEED ^ 11, trial);
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=6);
        let firm: Firm<Rational> = gen::random_monotone_firm(&mut rng, n, m);
        let p: Dist<Rational> = gen::random_dist(&mut rng, n);
        let sig: SignalStructure<Rational> = gen::random_structure(&mut rng, n, k);
        let base = gen::positive_weights(&mut rng, n, 9);
        let q: Dist<Rational> = gen::dist_from_weights(&base);
        let q_up: Dist<Rational> = gen::dist_from_weights(&gen::lr_above(&mut rng, &base));
        assert!(lr_oracle(q_up.probs(), q.probs()));
        a_ok += usize::from(w_oracle(&firm, &p, &q_up, &sig) >= w_oracle(&firm, &p, &q, &sig));
    }
    let mut b_ok = 0;
    let mut b_unordered = 0;
    for trial in 0..B {
        let mut rng = trial_rng(SEED ^ 111, trial);
        let n = rng.gen_range(2..=5);
        let p: Dist<Rational> = gen::random_dist(&mut rng, n);
        let (q, q_prime, (lo, hi)) = loop {
            let a: Dist<Rational> = gen::random_dist(&mut rng, n);
            let b: Dist<Rational> = gen::random_dist(&mut rng, n);
            if let Some(pair) = violating_pair(&b, &a) {
                break (a, b, pair);
            }
        };
        b_unordered += usize::from(!lr_oracle(q_prime.probs(), q.probs()));
        let sig = separating_structure_at(n, lo, hi).unwrap();
        let all = (0..10).all(|_| {
            let m = rng.gen_range(1..=4);
            let firm: Firm<Rational> = gen::random_monotone_firm(&mut rng, n, m);
            w_oracle(&firm, &p, &q_prime, &sig) < w_oracle(&firm, &p, &q, &sig)
        });
        b_ok += usize::from(all);
    }
    let (a, b) = (A as usize, B as usize);
    (
        a_ok == a && b_ok == b && b_unordered == b,
        format!(
            "(a) {}; (b) {}, {}",
            tally("favorable earns weakly more", a_ok, a),
            tally("pairs not LR-ordered", b_unordered, b),
            tally("strictly lower pay for q' across 10 firms", b_ok, b)
        ),
    )
}

fn criterion_12() -> (bool, String) {
    const N: u64 = 1_000;
    let (mut id, mut unin, mut full, mut trans) = (0, 0, 0, 0);
    for trial in 0..N {
        let mut rng = trial_rng(SEED ^ 12, trial);
        let n = rng.gen_range(2..=5);
        let k = rng.gen_range(1..=6);
        let a: SignalStructure<Rational> = gen::random_structure(&mut rng, n, k);
        let feasible = |fine: &SignalStructure<Rational>, coarse: &SignalStructure<Rational>| {
            find_garbling(fine, coarse)
                .unwrap()
                .is_some_and(|g| kernel_oracle(&g, fine, coarse))
        };
        id += usize::from(feasible(&a, &a));
        unin += usize::from(feasible(&a, &SignalStructure::uninformative(n)));
        full += usize::from(feasible(&SignalStructure::fully_informative(n), &a));
        let (kb, kc) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let sticky = rng.gen_bool(0.5);
        let g1 = gen::random_kernel(&mut rng, k, kb, sticky);
        let b = g1.apply(&a).unwrap();
        let g2 = gen::random_kernel(&mut rng, kb, kc, !sticky);
        let c = g2.apply(&b).unwrap();
        let composed = g1.then(&g2).unwrap();
        trans += usize::from(kernel_oracle(&composed, &a, &c) && feasible(&a, &c));
    }
    let n = N as usize;
    (
        id == n && unin == n && full == n && trans == n,
        format!(
            "{}, {}, {}, {}",
            tally("identity", id, n),
            tally("uninformative target", unin, n),
            tally("full-information source", full, n),
            tally("composed witness", trans, n)
        ),
    )
}

fn criterion_13() -> (bool, String) {
    const N: u64 = 1_000;
    let (mut extreme, mut no_gap) = (0, 0);
    for trial in 0..N {
        let mut rng = trial_rng(SEED ^ 13, trial);
        let n = rng.gen_range(2..=5);
        let q: Dist<Rational> = gen::random_dist(&mut rng, n);
        let delta: Rational = gen::open_unit(&mut rng);
        let EpsBound::Finite(eps) = prop3_eps_bound(&q, &delta).unwrap() else {
            continue;
        };
        let sig = structure_within_eps(&mut rng, n, &eps).unwrap();
        let hi = r(1, 1) - &delta;
        let ok = (0..sig.num_signals()).all(|s| {
            post_oracle(q.probs(), &sig, s)
                .is_none_or(|post| post.iter().all(|x| *x <= delta || *x >= hi))
        });
        extreme += usize::from(ok);

        let m = rng.gen_range(1..=4);
        let firm: Firm<Rational> = gen::random_firm(&mut rng, n, m);
        let (p, q_i, q_j): (Dist<Rational>, Dist<Rational>, Dist<Rational>) = (
            gen::random_dist(&mut rng, n),
            gen::random_dist(&mut rng, n),
            gen::random_dist(&mut rng, n),
        );
        let k = rng.gen_range(n..=n + 2);
        let full: SignalStructure<Rational> = gen::random_fully_informative(&mut rng, n, k);
        let gap = pay_gap(&firm, &p, &q_i, &q_j, &full).unwrap();
        let oracle = w_oracle(&firm, &p, &q_i, &full) - w_oracle(&firm, &p, &q_j, &full);
        no_gap += usize::from(gap == zero() && oracle == zero());
    }
    let n = N as usize;
    (
        extreme == n && no_gap == n,
        format!(
            "{}, {}",
            tally("delta-extreme at the bound", extreme, n),
            tally("fully informative gap 0", no_gap, n)
        ),
    )
}

fn main() -> ExitCode {
    let mut outcomes = vec![];
    let (c1, c2) = criteria_1_2();
    let (float_ok, float_detail) = criterion_1_float();
    outcomes.push(Outcome {
        pass: c1.pass && float_ok,
        detail: format!("{}; {float_detail}", c1.detail),
        ..c1
    });
    outcomes.push(c2);
    outcomes.push(timed(
        3,
        "sign of the perception-correcting component",
        None,
        criterion_3,
    ));
    outcomes.push(timed(4, "reversal example", None, criterion_4));
    outcomes.push(timed(5, "monotonicity failure example", None, criterion_5));
    outcomes.push(timed(6, "MLR failure example", None, criterion_6));
    outcomes.push(timed(
        7,
        "accuracy sweep",
        Some(Duration::from_secs(10)),
        criterion_7,
    ));
    outcomes.push(timed(8, "narrowing counterexamples", None, criterion_8));
    outcomes.push(timed(
        9,
        "narrowing under all hypotheses",
        None,
        criterion_9,
    ));
    outcomes.push(timed(
        10,
        "accurate perception, finer signal",
        None,
        criterion_10,
    ));
    outcomes.push(timed(
        11,
        "favorable perception and pooling",
        None,
        criterion_11,
    ));
    outcomes.push(timed(12, "garbling feasibility", None, criterion_12));
    outcomes.push(timed(13, "nearly full information", None, criterion_13));

    let mut unexpected = 0;
    for o in &outcomes {
        let known = KNOWN_FALSE.contains(&o.id);
        let mark = match (o.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known, recorded)",
            (false, false) => "FAIL",
        };
        println!("criterion {:>2} {mark}: {} -- {}", o.id, o.title, o.detail);
        if o.pass == known {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria differ from the recorded expectation");
        ExitCode::FAILURE
    }
}
