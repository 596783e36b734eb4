//! Blackwell garbling: kernels, the joint distributions they induce, and
//! the informativeness predicates used by the pay-gap results.

use crate::error::{ModelError, Result};
use crate::model::{argmax_set, check_len, posterior, Dist, Firm, SignalStructure};
use crate::scalar::{sum, Scalar};
use crate::simplex;

/// Slack for kernel validity in float mode.
pub const KERNEL_TOL: f64 = 1e-8;
/// Slack when deciding argmax-set membership in float mode.
pub const ARGMAX_TOL: f64 = 1e-9;
/// Kernel entries at or below this are treated as zero in float mode.
const POSITIVE_TOL: f64 = 1e-12;

fn is_positive<T: Scalar>(x: &T) -> bool {
    !T::zero().ge_tol(x, POSITIVE_TOL)
}

/// `g(s|s')`: probability that fine signal `s'` is reported as coarse `s`.
/// Stored as `g[s][s']`.
#[derive(Debug, Clone, PartialEq)]
pub struct GarblingKernel<T> {
    g: Vec<Vec<T>>,
}

impl<T: Scalar> GarblingKernel<T> {
    /// Builds a kernel and checks it against both structures.
    pub fn new(
        g: Vec<Vec<T>>,
        fine: &SignalStructure<T>,
        coarse: &SignalStructure<T>,
    ) -> Result<Self> {
        let k = Self { g };
        k.validate(fine, coarse)?;
        Ok(k)
    }

    /// Kernel without validation against any pair of structures; only the
    /// column-stochastic property is checked.
    pub fn from_columns(g: Vec<Vec<T>>) -> Result<Self> {
        let k = Self { g };
        k.check_stochastic()?;
        Ok(k)
    }

    pub fn identity(k: usize) -> Self {
        Self {
            g: (0..k)
                .map(|s| {
                    (0..k)
                        .map(|t| if s == t { T::one() } else { T::zero() })
                        .collect()
                })
                .collect(),
        }
    }

    /// Every fine signal is reported as coarse `s` with probability `weights[s]`.
    pub fn constant(weights: &[T], fine_signals: usize) -> Self {
        Self {
            g: weights
                .iter()
                .map(|w| vec![w.clone(); fine_signals])
                .collect(),
        }
    }

    pub fn coarse_len(&self) -> usize {
        self.g.len()
    }

    pub fn fine_len(&self) -> usize {
        self.g.first().map_or(0, Vec::len)
    }

    pub fn get(&self, s: usize, s_fine: usize) -> &T {
        &self.g[s][s_fine]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.g
    }

    fn check_stochastic(&self) -> Result<()> {
        let width = self.fine_len();
        if self.g.iter().any(|r| r.len() != width) || width == 0 {
            return Err(ModelError::InvalidKernel("ragged or empty matrix".into()));
        }
        for s_fine in 0..width {
            if self.g.iter().any(|r| r[s_fine] < T::zero()) {
                return Err(ModelError::InvalidKernel(format!(
                    "negative entry in column {s_fine}"
                )));
            }
            let total = sum(self.g.iter().map(|r| r[s_fine].clone()));
            if !total.approx_eq(&T::one(), KERNEL_TOL) {
                return Err(ModelError::InvalidKernel(format!(
                    "column {s_fine} sums to {}",
                    total.format()
                )));
            }
        }
        Ok(())
    }

    /// Checks column-stochasticity and `π(s|θ) = Σ_s' g(s|s') π'(s'|θ)`.
    pub fn validate(&self, fine: &SignalStructure<T>, coarse: &SignalStructure<T>) -> Result<()> {
        check_len(fine.num_types(), coarse.num_types())?;
        if self.coarse_len() != coarse.num_signals() || self.fine_len() != fine.num_signals() {
            return Err(ModelError::InvalidKernel(format!(
                "shape {}x{} does not match {} coarse and {} fine signals",
                self.coarse_len(),
                self.fine_len(),
                coarse.num_signals(),
                fine.num_signals()
            )));
        }
        self.check_stochastic()?;
        for theta in 0..fine.num_types() {
            for s in 0..coarse.num_signals() {
                let image = sum((0..fine.num_signals())
                    .map(|t| self.g[s][t].clone() * fine.lik(t, theta).clone()));
                if !image.approx_eq(coarse.lik(s, theta), KERNEL_TOL) {
                    return Err(ModelError::InvalidKernel(format!(
                        "does not reproduce coarse likelihood of signal {s} at skill type {theta}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Applies the kernel to a fine structure, yielding the coarse one.
    pub fn apply(&self, fine: &SignalStructure<T>) -> Result<SignalStructure<T>> {
        if self.fine_len() != fine.num_signals() {
            return Err(ModelError::InvalidKernel(
                "kernel width does not match signal count".into(),
            ));
        }
        let rows = (0..fine.num_types())
            .map(|theta| {
                (0..self.coarse_len())
                    .map(|s| {
                        sum((0..fine.num_signals())
                            .map(|t| self.g[s][t].clone() * fine.lik(t, theta).clone()))
                    })
                    .collect()
            })
            .collect();
        SignalStructure::from_rows(rows)
    }

    /// `self` maps A to B and `next` maps B to C; the result maps A to C.
    pub fn then(&self, next: &GarblingKernel<T>) -> Result<GarblingKernel<T>> {
        if next.fine_len() != self.coarse_len() {
            return Err(ModelError::InvalidKernel("kernels do not compose".into()));
        }
        let g = (0..next.coarse_len())
            .map(|c| {
                (0..self.fine_len())
                    .map(|a| {
                        sum((0..self.coarse_len())
                            .map(|b| next.g[c][b].clone() * self.g[b][a].clone()))
                    })
                    .collect()
            })
            .collect();
        Ok(Self { g })
    }
}

/// Searches for a garbling kernel from `fine` to `coarse` by solving the
/// linear feasibility program over `g(s|s') >= 0`. `Ok(None)` means `fine`
/// is not more informative than `coarse`.
pub fn find_garbling<T: Scalar>(
    fine: &SignalStructure<T>,
    coarse: &SignalStructure<T>,
) -> Result<Option<GarblingKernel<T>>> {
    check_len(fine.num_types(), coarse.num_types())?;
    let ns = coarse.num_signals();
    let nf = fine.num_signals();
    let var = |s: usize, t: usize| s * nf + t;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for t in 0..nf {
        let mut row = vec![T::zero(); ns * nf];
        for s in 0..ns {
            row[var(s, t)] = T::one();
        }
        a.push(row);
        b.push(T::one());
    }
    for theta in 0..fine.num_types() {
        for s in 0..ns {
            let mut row = vec![T::zero(); ns * nf];
            for t in 0..nf {
                row[var(s, t)] = fine.lik(t, theta).clone();
            }
            a.push(row);
            b.push(coarse.lik(s, theta).clone());
        }
    }
    let Some(x) = simplex::find_feasible(&a, &b) else {
        return Ok(None);
    };
    let g = (0..ns)
        .map(|s| (0..nf).map(|t| x[var(s, t)].clone()).collect())
        .collect();
    let kernel = GarblingKernel { g };
    kernel.validate(fine, coarse)?;
    Ok(Some(kernel))
}

/// `fine ⪰_G coarse`.
pub fn is_more_informative<T: Scalar>(
    fine: &SignalStructure<T>,
    coarse: &SignalStructure<T>,
) -> Result<bool> {
    Ok(find_garbling(fine, coarse)?.is_some())
}

/// Joint distribution over `(θ, s, s')`, stored `mu[θ][s][s']`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDist<T> {
    mu: Vec<Vec<Vec<T>>>,
}

impl<T: Scalar> JointDist<T> {
    pub fn get(&self, theta: usize, s: usize, s_fine: usize) -> &T {
        &self.mu[theta][s][s_fine]
    }

    pub fn num_types(&self) -> usize {
        self.mu.len()
    }

    pub fn coarse_len(&self) -> usize {
        self.mu[0].len()
    }

    pub fn fine_len(&self) -> usize {
        self.mu[0][0].len()
    }

    pub fn total(&self) -> T {
        sum(self.mu.iter().flatten().flatten().cloned())
    }

    /// `μ(s, s')`.
    pub fn pair(&self, s: usize, s_fine: usize) -> T {
        sum(self.mu.iter().map(|m| m[s][s_fine].clone()))
    }

    /// `μ(s)`.
    pub fn coarse_marginal(&self, s: usize) -> T {
        sum((0..self.fine_len()).map(|t| self.pair(s, t)))
    }

    /// `μ(s')`.
    pub fn fine_marginal(&self, s_fine: usize) -> T {
        sum((0..self.coarse_len()).map(|s| self.pair(s, s_fine)))
    }

    /// `μ(θ, s)`.
    pub fn type_coarse(&self, theta: usize, s: usize) -> T {
        sum(self.mu[theta][s].iter().cloned())
    }

    /// `μ(s'|s)`; zero if `μ(s) = 0`.
    pub fn fine_given_coarse(&self, s_fine: usize, s: usize) -> T {
        let m = self.coarse_marginal(s);
        if m.is_zero() {
            T::zero()
        } else {
            self.pair(s, s_fine) / m
        }
    }

    /// `μ(θ|s, s')`, undefined when `μ(s, s') = 0`.
    pub fn type_given_pair(&self, s: usize, s_fine: usize) -> Option<Vec<T>> {
        let m = self.pair(s, s_fine);
        if m.is_zero() {
            return None;
        }
        Some(
            self.mu
                .iter()
                .map(|row| row[s][s_fine].clone() / m.clone())
                .collect(),
        )
    }

    /// `μ(θ|s')`, undefined when `μ(s') = 0`.
    pub fn type_given_fine(&self, s_fine: usize) -> Option<Vec<T>> {
        let m = self.fine_marginal(s_fine);
        if m.is_zero() {
            return None;
        }
        Some(
            self.mu
                .iter()
                .map(|row| sum(row.iter().map(|r| r[s_fine].clone())) / m.clone())
                .collect(),
        )
    }
}

fn joint<T: Scalar>(w: &Dist<T>, fine: &SignalStructure<T>, g: &GarblingKernel<T>) -> JointDist<T> {
    let mu = (0..w.len())
        .map(|theta| {
            (0..g.coarse_len())
                .map(|s| {
                    (0..fine.num_signals())
                        .map(|t| {
                            w.get(theta).clone() * fine.lik(t, theta).clone() * g.get(s, t).clone()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    JointDist { mu }
}

/// `μ_p(θ,s,s') = p(θ)π'(s'|θ)g(s|s')` and the same with `q`.
pub fn build_joints<T: Scalar>(
    p: &Dist<T>,
    q: &Dist<T>,
    fine: &SignalStructure<T>,
    coarse: &SignalStructure<T>,
    g: &GarblingKernel<T>,
) -> Result<(JointDist<T>, JointDist<T>)> {
    check_len(p.len(), q.len())?;
    check_len(p.len(), fine.num_types())?;
    g.validate(fine, coarse)?;
    Ok((joint(p, fine, g), joint(q, fine, g)))
}

/// Definition of a slight informativeness increase: for every pair `(s, s')`
/// with `g(s|s') > 0`, the argmax task sets at the two posteriors intersect.
pub fn is_slightly_more_informative<T: Scalar>(
    firm: &Firm<T>,
    q: &Dist<T>,
    fine: &SignalStructure<T>,
    coarse: &SignalStructure<T>,
    g: &GarblingKernel<T>,
) -> Result<bool> {
    g.validate(fine, coarse)?;
    let coarse_sets = (0..coarse.num_signals())
        .map(|s| Ok(argmax_set(firm, &posterior(q, coarse, s)?, ARGMAX_TOL)))
        .collect::<Result<Vec<_>>>()?;
    let fine_sets = (0..fine.num_signals())
        .map(|t| Ok(argmax_set(firm, &posterior(q, fine, t)?, ARGMAX_TOL)))
        .collect::<Result<Vec<_>>>()?;
    for (s, cs) in coarse_sets.iter().enumerate() {
        for (t, fs) in fine_sets.iter().enumerate() {
            if is_positive(g.get(s, t)) && !cs.iter().any(|a| fs.contains(a)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Dominant type of a signal: the lowest-index type of maximal likelihood.
fn dominant_type<T: Scalar>(sig: &SignalStructure<T>, s: usize) -> usize {
    let mut best = 0;
    for theta in 1..sig.num_types() {
        if *sig.lik(s, theta) > *sig.lik(s, best) {
            best = theta;
        }
    }
    best
}

/// Each signal has a type `θ_s` with `π(s|θ) <= eps·π(s|θ_s)` for all other `θ`.
pub fn within_eps_of_full<T: Scalar>(sig: &SignalStructure<T>, eps: &T) -> Result<bool> {
    if *eps < T::zero() {
        return Err(ModelError::NegativeEps(eps.format()));
    }
    for s in 0..sig.num_signals() {
        let top = dominant_type(sig, s);
        let bound = eps.clone() * sig.lik(s, top).clone();
        let scale = sig.lik(s, top).to_f64();
        for theta in (0..sig.num_types()).filter(|&t| t != top) {
            if !bound.ge_tol(sig.lik(s, theta), 1e-12 * scale) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Smallest `eps` for which [`within_eps_of_full`] holds.
pub fn eps_of_structure<T: Scalar>(sig: &SignalStructure<T>) -> T {
    let mut worst = T::zero();
    for s in 0..sig.num_signals() {
        let top = dominant_type(sig, s);
        for theta in (0..sig.num_types()).filter(|&t| t != top) {
            let ratio = sig.lik(s, theta).clone() / sig.lik(s, top).clone();
            if ratio > worst {
                worst = ratio;
            }
        }
    }
    worst
}

#[derive(Debug, Clone, PartialEq)]
pub enum EpsBound<T> {
    Finite(T),
    /// `δ = 1` constrains nothing.
    Unbounded,
}

impl<T: Scalar> EpsBound<T> {
    pub fn admits(&self, eps: &T) -> bool {
        match self {
            EpsBound::Finite(b) => *eps <= *b,
            EpsBound::Unbounded => true,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            EpsBound::Finite(b) => b.format(),
            EpsBound::Unbounded => "unbounded".to_string(),
        }
    }
}

/// `δ/(1-δ) · min_θ q(θ)/(1-q(θ)) · 1/(|Θ|-1)`: any structure within this
/// `eps` of full information yields posteriors under `q` whose largest entry
/// is at least `1 - δ` at every signal.
pub fn prop3_eps_bound<T: Scalar>(q: &Dist<T>, delta: &T) -> Result<EpsBound<T>> {
    if *delta <= T::zero() || *delta > T::one() {
        return Err(ModelError::DeltaOutOfRange(delta.format()));
    }
    q.ensure_full_support("perception q")?;
    if *delta == T::one() {
        return Ok(EpsBound::Unbounded);
    }
    let odds = q
        .probs()
        .iter()
        .map(|x| x.clone() / (T::one() - x.clone()))
        .reduce(|a, b| if b < a { b } else { a })
        .expect("non-empty");
    let others = T::from_int(q.len() as i64 - 1);
    Ok(EpsBound::Finite(
        delta.clone() / (T::one() - delta.clone()) * odds / others,
    ))
}
