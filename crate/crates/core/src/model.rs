//! Skill spaces, distributions, tasks, firms, signal structures, and the pay
//! pipeline: posterior beliefs, task assignment, worker pay, average pay.

use crate::error::{ModelError, Result};
use crate::scalar::{dot, sum, Scalar};

/// Slack used when validating that float inputs are normalized.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Strictly increasing list of skill types, at least two of them.
#[derive(Debug, Clone, PartialEq)]
pub struct SkillSpace<T> {
    thetas: Vec<T>,
}

impl<T: Scalar> SkillSpace<T> {
    pub fn new(thetas: Vec<T>) -> Result<Self> {
        if thetas.len() < 2 {
            return Err(ModelError::TooFewTypes(thetas.len()));
        }
        if let Some(i) = thetas.windows(2).position(|w| w[0] >= w[1]) {
            return Err(ModelError::TypesNotIncreasing(i + 1));
        }
        Ok(Self { thetas })
    }

    /// `{0, 1, ..., n-1}`.
    pub fn range(n: usize) -> Result<Self> {
        Self::new((0..n as i64).map(T::from_int).collect())
    }

    pub fn thetas(&self) -> &[T] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, theta: &T) -> Option<usize> {
        self.thetas.iter().position(|t| t == theta)
    }
}

/// Probability vector over a skill space, indexed by type position.
#[derive(Debug, Clone, PartialEq)]
pub struct Dist<T> {
    probs: Vec<T>,
}

impl<T: Scalar> Dist<T> {
    /// Validates non-negativity and normalization. Zero entries are allowed;
    /// use [`Dist::full_support`] for priors and perceptions.
    pub fn new(probs: Vec<T>) -> Result<Self> {
        if let Some(index) = probs.iter().position(|x| *x < T::zero()) {
            return Err(ModelError::NegativeEntry {
                what: "distribution".into(),
                index,
            });
        }
        let total = sum(probs.iter().cloned());
        if !total.approx_eq(&T::one(), NORMALIZATION_TOL) {
            return Err(ModelError::NotNormalized {
                what: "distribution".into(),
                sum: total.format(),
            });
        }
        Ok(Self { probs })
    }

    pub fn full_support(probs: Vec<T>) -> Result<Self> {
        let d = Self::new(probs)?;
        d.ensure_full_support("distribution")?;
        Ok(d)
    }

    /// Normalizes non-negative weights.
    pub fn from_weights(weights: Vec<T>) -> Result<Self> {
        let total = sum(weights.iter().cloned());
        if total <= T::zero() {
            return Err(ModelError::NotNormalized {
                what: "weights".into(),
                sum: total.format(),
            });
        }
        Self::new(weights.into_iter().map(|w| w / total.clone()).collect())
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            probs: vec![T::from_frac(1, n as i64); n],
        }
    }

    /// Two-type distribution with mass `high` on the upper type.
    pub fn binary(high: T) -> Result<Self> {
        Self::full_support(vec![T::one() - high.clone(), high])
    }

    pub fn ensure_full_support(&self, what: &str) -> Result<()> {
        match self.probs.iter().position(|x| *x <= T::zero()) {
            Some(index) => Err(ModelError::NotFullSupport {
                what: what.into(),
                index,
            }),
            None => Ok(()),
        }
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn get(&self, i: usize) -> &T {
        &self.probs[i]
    }

    /// Cumulative sums, lowest type first.
    pub fn cdf(&self) -> Vec<T> {
        let mut acc = T::zero();
        self.probs
            .iter()
            .map(|p| {
                acc = acc.clone() + p.clone();
                acc.clone()
            })
            .collect()
    }
}

/// Expected surplus per skill type.
#[derive(Debug, Clone, PartialEq)]
pub struct Task<T>(pub Vec<T>);

impl<T: Scalar> Task<T> {
    pub fn surplus(&self) -> &[T] {
        &self.0
    }

    pub fn expected(&self, belief: &Dist<T>) -> T {
        dot(belief.probs(), &self.0)
    }

    /// Strictly increasing in skill.
    pub fn is_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Firm<T> {
    tasks: Vec<Task<T>>,
}

impl<T: Scalar> Firm<T> {
    pub fn new(tasks: Vec<Task<T>>) -> Result<Self> {
        let first = tasks.first().ok_or(ModelError::EmptyFirm)?;
        let n = first.0.len();
        for t in &tasks {
            if t.0.len() != n {
                return Err(ModelError::LengthMismatch {
                    what: "task".into(),
                    expected: n,
                    got: t.0.len(),
                });
            }
        }
        Ok(Self { tasks })
    }

    pub fn tasks(&self) -> &[Task<T>] {
        &self.tasks
    }

    pub fn num_types(&self) -> usize {
        self.tasks[0].0.len()
    }

    pub fn is_monotone(&self) -> bool {
        self.tasks.iter().all(Task::is_increasing)
    }

    /// Largest absolute surplus across tasks and types.
    pub fn max_abs_surplus(&self) -> T {
        self.tasks
            .iter()
            .flat_map(|t| t.0.iter())
            .map(Scalar::abs_val)
            .fold(T::zero(), |m, x| if x > m { x } else { m })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Signal<T> {
    pub label: String,
    pub value: Option<T>,
}

impl<T> Signal<T> {
    pub fn valued(label: impl Into<String>, value: T) -> Self {
        Self {
            label: label.into(),
            value: Some(value),
        }
    }

    pub fn label(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            value: None,
        }
    }
}

/// Finite signal set with likelihoods `π(s|θ)`, stored as one row per type.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalStructure<T> {
    signals: Vec<Signal<T>>,
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> SignalStructure<T> {
    /// `rows[θ][s] = π(s|θ)`.
    pub fn new(signals: Vec<Signal<T>>, rows: Vec<Vec<T>>) -> Result<Self> {
        if signals.is_empty() {
            return Err(ModelError::NoSignals);
        }
        if rows.len() < 2 {
            return Err(ModelError::TooFewTypes(rows.len()));
        }
        for (theta, row) in rows.iter().enumerate() {
            if row.len() != signals.len() {
                return Err(ModelError::LengthMismatch {
                    what: format!("likelihood row for skill type {theta}"),
                    expected: signals.len(),
                    got: row.len(),
                });
            }
            if let Some(index) = row.iter().position(|x| *x < T::zero()) {
                return Err(ModelError::NegativeEntry {
                    what: format!("likelihood row for skill type {theta}"),
                    index,
                });
            }
            let total = sum(row.iter().cloned());
            if !total.approx_eq(&T::one(), NORMALIZATION_TOL) {
                return Err(ModelError::RowNotStochastic {
                    theta,
                    sum: total.format(),
                });
            }
        }
        for (s, sig) in signals.iter().enumerate() {
            if rows.iter().all(|r| r[s] <= T::zero()) {
                return Err(ModelError::NullSignal(sig.label.clone()));
            }
        }
        Ok(Self { signals, rows })
    }

    /// Signals `s0, s1, ...` valued `0, 1, ...`.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let k = rows.first().map_or(0, Vec::len);
        let signals = (0..k)
            .map(|s| Signal::valued(format!("s{s}"), T::from_int(s as i64)))
            .collect();
        Self::new(signals, rows)
    }

    /// One signal sent by every type.
    pub fn uninformative(num_types: usize) -> Self {
        Self::from_rows(vec![vec![T::one()]; num_types.max(2)]).expect("valid by construction")
    }

    /// Signal `s_k` is sent exactly by type `k`.
    pub fn fully_informative(num_types: usize) -> Self {
        let rows = (0..num_types)
            .map(|t| {
                (0..num_types)
                    .map(|s| if s == t { T::one() } else { T::zero() })
                    .collect()
            })
            .collect();
        Self::from_rows(rows).expect("valid by construction")
    }

    /// Binary symmetric structure on two types: `π(s0|0) = π(s1|1) = accuracy`.
    pub fn binary_symmetric(accuracy: T) -> Result<Self> {
        let miss = T::one() - accuracy.clone();
        Self::from_rows(vec![
            vec![accuracy.clone(), miss.clone()],
            vec![miss, accuracy],
        ])
    }

    pub fn signals(&self) -> &[Signal<T>] {
        &self.signals
    }

    pub fn num_signals(&self) -> usize {
        self.signals.len()
    }

    pub fn num_types(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    /// `π(s|θ)` by positions.
    pub fn lik(&self, s: usize, theta: usize) -> &T {
        &self.rows[theta][s]
    }

    pub fn signal_index(&self, label: &str) -> Result<usize> {
        self.signals
            .iter()
            .position(|s| s.label == label)
            .ok_or_else(|| ModelError::UnknownSignal(label.to_string()))
    }

    /// Signal positions sorted by value, ascending. Fails if any signal is
    /// unvalued or two share a value.
    pub fn value_order(&self) -> Result<Vec<usize>> {
        let mut idx: Vec<usize> = (0..self.signals.len()).collect();
        if self.signals.iter().any(|s| s.value.is_none()) {
            return Err(ModelError::UnvaluedSignals);
        }
        let val = |i: usize| self.signals[i].value.as_ref().expect("checked");
        idx.sort_by(|&a, &b| val(a).partial_cmp(val(b)).expect("comparable values"));
        if idx.windows(2).any(|w| val(w[0]) == val(w[1])) {
            return Err(ModelError::UnvaluedSignals);
        }
        Ok(idx)
    }

    /// Every signal reveals exactly one type.
    pub fn is_fully_informative(&self) -> bool {
        (0..self.num_signals()).all(|s| self.rows.iter().filter(|r| r[s] > T::zero()).count() == 1)
    }

    /// Every type has the same likelihood row.
    pub fn is_uninformative(&self) -> bool {
        self.rows.windows(2).all(|w| w[0] == w[1])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population<T> {
    pub p: Dist<T>,
    pub q: Dist<T>,
    pub sig: SignalStructure<T>,
}

impl<T: Scalar> Population<T> {
    pub fn new(p: Dist<T>, q: Dist<T>, sig: SignalStructure<T>) -> Result<Self> {
        p.ensure_full_support("true distribution p")?;
        q.ensure_full_support("perception q")?;
        check_len(p.len(), q.len())?;
        check_len(p.len(), sig.num_types())?;
        Ok(Self { p, q, sig })
    }
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(ModelError::SpaceMismatch(expected, got))
    }
}

/// Bayes update of `q` after observing signal position `s`.
pub fn posterior<T: Scalar>(q: &Dist<T>, sig: &SignalStructure<T>, s: usize) -> Result<Dist<T>> {
    check_len(q.len(), sig.num_types())?;
    if s >= sig.num_signals() {
        return Err(ModelError::UnknownSignal(format!("#{s}")));
    }
    let joint: Vec<T> = (0..q.len())
        .map(|t| q.get(t).clone() * sig.lik(s, t).clone())
        .collect();
    let total = sum(joint.iter().cloned());
    if total <= T::zero() {
        return Err(ModelError::NotFullSupport {
            what: "perception q".into(),
            index: 0,
        });
    }
    Ok(Dist {
        probs: joint.into_iter().map(|x| x / total.clone()).collect(),
    })
}

pub fn posterior_by_label<T: Scalar>(
    q: &Dist<T>,
    sig: &SignalStructure<T>,
    label: &str,
) -> Result<Dist<T>> {
    posterior(q, sig, sig.signal_index(label)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    Lowest,
    Highest,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assignment<T> {
    pub task: usize,
    pub value: T,
}

/// Surplus-maximizing task at `belief`; ties go to the lowest index.
pub fn assign_task<T: Scalar>(firm: &Firm<T>, belief: &Dist<T>) -> Assignment<T> {
    assign_task_with(firm, belief, TieBreak::Lowest)
}

pub fn assign_task_with<T: Scalar>(
    firm: &Firm<T>,
    belief: &Dist<T>,
    tie: TieBreak,
) -> Assignment<T> {
    let mut best = Assignment {
        task: 0,
        value: firm.tasks[0].expected(belief),
    };
    for (i, task) in firm.tasks.iter().enumerate().skip(1) {
        let v = task.expected(belief);
        let better = match tie {
            TieBreak::Lowest => v > best.value,
            TieBreak::Highest => v >= best.value,
        };
        if better {
            best = Assignment { task: i, value: v };
        }
    }
    best
}

/// Every task whose expected surplus is within `slack` of the maximum
/// (exact maximizers in rational mode).
pub fn argmax_set<T: Scalar>(firm: &Firm<T>, belief: &Dist<T>, slack: f64) -> Vec<usize> {
    let values: Vec<T> = firm.tasks.iter().map(|t| t.expected(belief)).collect();
    let best = assign_task(firm, belief).value;
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.ge_tol(&best, slack))
        .map(|(i, _)| i)
        .collect()
}

/// `w_A(s, q, sig)`: pay of a worker with signal `s`.
pub fn worker_pay<T: Scalar>(
    firm: &Firm<T>,
    q: &Dist<T>,
    sig: &SignalStructure<T>,
    s: usize,
) -> Result<T> {
    Ok(assign_task(firm, &posterior(q, sig, s)?).value)
}

/// `W_A(p, q, sig)`: pay computed under `q`, averaged under `p`.
pub fn average_pay<T: Scalar>(firm: &Firm<T>, pop: &Population<T>) -> Result<T> {
    average_pay_parts(firm, &pop.p, &pop.q, &pop.sig)
}

pub fn average_pay_parts<T: Scalar>(
    firm: &Firm<T>,
    p: &Dist<T>,
    q: &Dist<T>,
    sig: &SignalStructure<T>,
) -> Result<T> {
    check_len(firm.num_types(), p.len())?;
    check_len(p.len(), q.len())?;
    let mut total = T::zero();
    for s in 0..sig.num_signals() {
        let mass = sum((0..p.len()).map(|t| p.get(t).clone() * sig.lik(s, t).clone()));
        if mass.is_zero() {
            continue;
        }
        total = total + mass * worker_pay(firm, q, sig, s)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    fn dist(v: &[(i64, i64)]) -> Dist<Rational> {
        Dist::full_support(v.iter().map(|&(n, d)| r(n, d)).collect()).unwrap()
    }

    /// ā(θ) = θ and ã(θ) = 4(2θ - 1) on {0, 1}.
    fn figure1_firm() -> Firm<Rational> {
        Firm::new(vec![
            Task(vec![r(0, 1), r(1, 1)]),
            Task(vec![r(-4, 1), r(4, 1)]),
        ])
        .unwrap()
    }

    /// Brute force over the joint distribution of (θ, s).
    fn brute_force_average_pay(
        firm: &Firm<Rational>,
        p: &Dist<Rational>,
        q: &Dist<Rational>,
        sig: &SignalStructure<Rational>,
    ) -> Rational {
        let mut total = r(0, 1);
        for t in 0..p.len() {
            for s in 0..sig.num_signals() {
                let weight = p.get(t).clone() * sig.lik(s, t).clone();
                if weight == r(0, 1) {
                    continue;
                }
                let norm: Rational = (0..q.len())
                    .map(|u| q.get(u).clone() * sig.lik(s, u).clone())
                    .sum();
                let pay = firm
                    .tasks()
                    .iter()
                    .map(|a| {
                        (0..q.len())
                            .map(|u| q.get(u).clone() * sig.lik(s, u).clone() * a.0[u].clone())
                            .sum::<Rational>()
                            / norm.clone()
                    })
                    .max()
                    .unwrap();
                total += weight * pay;
            }
        }
        total
    }

    #[test]
    fn skill_space_validation() {
        assert!(SkillSpace::<f64>::new(vec![0.0]).is_err());
        assert_eq!(
            SkillSpace::new(vec![0.0, 1.0, 1.0]),
            Err(ModelError::TypesNotIncreasing(2))
        );
        assert_eq!(
            SkillSpace::<f64>::range(3).unwrap().thetas(),
            &[0.0, 1.0, 2.0]
        );
    }

    #[test]
    fn dist_validation() {
        assert!(Dist::new(vec![r(1, 2), r(1, 3)]).is_err());
        assert!(Dist::full_support(vec![r(1, 1), r(0, 1)]).is_err());
        assert!(Dist::new(vec![r(1, 1), r(0, 1)]).is_ok());
        assert!(Dist::new(vec![-0.5, 1.5]).is_err());
    }

    #[test]
    fn signal_structure_validation() {
        let err = SignalStructure::from_rows(vec![vec![r(1, 2), r(1, 3)], vec![r(1, 2), r(1, 2)]])
            .unwrap_err();
        assert!(matches!(err, ModelError::RowNotStochastic { theta: 0, .. }));
        let err = SignalStructure::from_rows(vec![vec![r(1, 1), r(0, 1)], vec![r(1, 1), r(0, 1)]])
            .unwrap_err();
        assert!(matches!(err, ModelError::NullSignal(_)));
    }

    #[test]
    fn uninformative_posterior_is_prior() {
        let q = dist(&[(1, 5), (3, 10), (1, 2)]);
        let sig = SignalStructure::from_rows(vec![vec![r(1, 3), r(2, 3)]; 3]).unwrap();
        for s in 0..2 {
            assert_eq!(posterior(&q, &sig, s).unwrap(), q);
        }
    }

    #[test]
    fn pooled_posterior() {
        // Reveal θ = 1, pool {0, 2}.
        let q = dist(&[(1, 4), (1, 4), (1, 2)]);
        let sig = SignalStructure::from_rows(vec![
            vec![r(0, 1), r(1, 1)],
            vec![r(1, 1), r(0, 1)],
            vec![r(0, 1), r(1, 1)],
        ])
        .unwrap();
        assert_eq!(
            posterior(&q, &sig, 1).unwrap().probs(),
            &[r(1, 3), r(0, 1), r(2, 3)]
        );
    }

    #[test]
    fn binary_symmetric_posterior() {
        let q = dist(&[(1, 4), (3, 4)]);
        let sig = SignalStructure::binary_symmetric(r(4, 5)).unwrap();
        // Joint: (θ=0,s1) = 1/4 * 1/5 = 1/20, (θ=1,s1) = 3/4 * 4/5 = 12/20.
        let post = posterior(&q, &sig, 1).unwrap();
        assert_eq!(post.probs(), &[r(1, 13), r(12, 13)]);
        assert_eq!(posterior_by_label(&q, &sig, "s1").unwrap(), post);
        assert_eq!(
            posterior_by_label(&q, &sig, "nope"),
            Err(ModelError::UnknownSignal("nope".into()))
        );
    }

    #[test]
    fn assign_task_examples() {
        let firm = figure1_firm();
        let a = assign_task(&firm, &dist(&[(1, 4), (3, 4)]));
        assert_eq!((a.task, a.value), (1, r(2, 1)));
        let a = assign_task(&firm, &dist(&[(3, 4), (1, 4)]));
        assert_eq!((a.task, a.value), (0, r(1, 4)));
        let single = Firm::new(vec![Task(vec![r(0, 1), r(1, 1)])]).unwrap();
        assert_eq!(
            assign_task(&single, &dist(&[(2, 5), (3, 5)])).value,
            r(3, 5)
        );
    }

    #[test]
    fn ties_follow_rule() {
        let firm = figure1_firm();
        // Indifference at belief 4/7 on the high type.
        let belief = dist(&[(3, 7), (4, 7)]);
        assert_eq!(assign_task(&firm, &belief).task, 0);
        assert_eq!(assign_task_with(&firm, &belief, TieBreak::Highest).task, 1);
        assert_eq!(argmax_set(&firm, &belief, 0.0), vec![0, 1]);
    }

    #[test]
    fn worker_pay_examples() {
        let q = dist(&[(2, 7), (5, 7)]);
        let sig = SignalStructure::binary_symmetric(r(2, 3)).unwrap();
        let up = Firm::new(vec![Task(vec![r(0, 1), r(1, 1)])]).unwrap();
        let down = Firm::new(vec![Task(vec![r(1, 1), r(0, 1)])]).unwrap();
        for s in 0..2 {
            let post = posterior(&q, &sig, s).unwrap();
            assert_eq!(worker_pay(&up, &q, &sig, s).unwrap(), post.get(1).clone());
            assert_eq!(worker_pay(&down, &q, &sig, s).unwrap(), post.get(0).clone());
        }
        let full = SignalStructure::fully_informative(2);
        let firm = figure1_firm();
        assert_eq!(worker_pay(&firm, &q, &full, 0).unwrap(), r(0, 1));
        assert_eq!(worker_pay(&firm, &q, &full, 1).unwrap(), r(4, 1));
    }

    #[test]
    fn average_pay_examples() {
        let up = Firm::new(vec![Task(vec![r(0, 1), r(1, 1)])]).unwrap();
        let p = dist(&[(2, 3), (1, 3)]);
        let q = dist(&[(1, 4), (3, 4)]);
        let pay =
            |sig| average_pay(&up, &Population::new(p.clone(), q.clone(), sig).unwrap()).unwrap();
        assert_eq!(pay(SignalStructure::uninformative(2)), r(3, 4));
        assert_eq!(pay(SignalStructure::fully_informative(2)), r(1, 3));

        let p = dist(&[(1, 2), (1, 2)]);
        let sig = SignalStructure::binary_symmetric(r(1, 2)).unwrap();
        assert_eq!(
            average_pay_parts(&figure1_firm(), &p, &q, &sig).unwrap(),
            r(2, 1)
        );
    }

    #[test]
    fn average_pay_matches_joint_enumeration() {
        let firm = figure1_firm();
        let p = dist(&[(1, 3), (2, 3)]);
        for q in [dist(&[(1, 3), (2, 3)]), dist(&[(4, 5), (1, 5)])] {
            for lambda in [r(1, 2), r(3, 5), r(9, 13), r(4, 5), r(1, 1)] {
                let sig = SignalStructure::binary_symmetric(lambda).unwrap();
                assert_eq!(
                    average_pay_parts(&firm, &p, &q, &sig).unwrap(),
                    brute_force_average_pay(&firm, &p, &q, &sig)
                );
            }
        }
    }

    #[test]
    fn monotone_predicate() {
        assert!(figure1_firm().is_monotone());
        let flat = Firm::new(vec![Task(vec![r(1, 1), r(1, 1)])]).unwrap();
        assert!(!flat.is_monotone());
        assert_eq!(Firm::<f64>::new(vec![]), Err(ModelError::EmptyFirm));
    }

    #[test]
    fn value_order_requires_values() {
        let sig = SignalStructure::new(
            vec![Signal::label("a"), Signal::label("b")],
            vec![vec![r(1, 2), r(1, 2)], vec![r(1, 2), r(1, 2)]],
        )
        .unwrap();
        assert_eq!(sig.value_order(), Err(ModelError::UnvaluedSignals));
        let sig = SignalStructure::new(
            vec![
                Signal::valued("hi", r(5, 1)),
                Signal::valued("lo", r(-1, 1)),
            ],
            vec![vec![r(1, 2), r(1, 2)], vec![r(1, 2), r(1, 2)]],
        )
        .unwrap();
        assert_eq!(sig.value_order().unwrap(), vec![1, 0]);
    }
}
