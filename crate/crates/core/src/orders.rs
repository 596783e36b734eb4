//! Stochastic orders on skill distributions and signal structures.

use crate::error::{ModelError, Result};
use crate::model::{Dist, Signal, SignalStructure, SkillSpace};
use crate::scalar::Scalar;

/// Relative slack for cross-product comparisons in float mode.
pub const ORDER_TOL: f64 = 1e-12;

fn cross_ge<T: Scalar>(lhs: &T, rhs: &T) -> bool {
    let scale = lhs.to_f64().abs().max(rhs.to_f64().abs());
    lhs.ge_tol(rhs, ORDER_TOL * scale)
}

/// Likelihood-ratio dominance of weight vectors: `lo[i]·hi[j] >= lo[j]·hi[i]`
/// for all `j > i`.
pub fn lr_geq_slices<T: Scalar>(hi: &[T], lo: &[T]) -> bool {
    violating_pair_slices(hi, lo).is_none()
}

fn violating_pair_slices<T: Scalar>(hi: &[T], lo: &[T]) -> Option<(usize, usize)> {
    let n = hi.len();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = lo[i].clone() * hi[j].clone();
            let rhs = lo[j].clone() * hi[i].clone();
            if !cross_ge(&lhs, &rhs) {
                return Some((i, j));
            }
        }
    }
    None
}

/// `q_hi ⪰_LR q_lo`.
pub fn lr_geq<T: Scalar>(q_hi: &Dist<T>, q_lo: &Dist<T>) -> bool {
    q_hi.len() == q_lo.len() && lr_geq_slices(q_hi.probs(), q_lo.probs())
}

/// A pair of type positions `(lo, hi)`, `lo < hi`, at which `q_hi ⪰_LR q_lo`
/// fails, if any.
pub fn violating_pair<T: Scalar>(q_hi: &Dist<T>, q_lo: &Dist<T>) -> Option<(usize, usize)> {
    violating_pair_slices(q_hi.probs(), q_lo.probs())
}

pub fn fosd_geq_slices<T: Scalar>(hi: &[T], lo: &[T]) -> bool {
    let mut cum_hi = T::zero();
    let mut cum_lo = T::zero();
    for (h, l) in hi.iter().zip(lo) {
        cum_hi = cum_hi + h.clone();
        cum_lo = cum_lo + l.clone();
        if !cross_ge(&cum_lo, &cum_hi) {
            return false;
        }
    }
    true
}

/// First-order stochastic dominance: the CDF of `q_hi` lies weakly below.
pub fn fosd_geq<T: Scalar>(q_hi: &Dist<T>, q_lo: &Dist<T>) -> bool {
    q_hi.len() == q_lo.len() && fosd_geq_slices(q_hi.probs(), q_lo.probs())
}

/// Monotone likelihood ratio property over valued signals.
pub fn is_mlr<T: Scalar>(sig: &SignalStructure<T>) -> Result<bool> {
    let order = sig.value_order()?;
    let rows = sig.rows();
    for (a, &s) in order.iter().enumerate() {
        for &t in &order[a + 1..] {
            for lo in 0..rows.len() {
                for hi in lo + 1..rows.len() {
                    let lhs = rows[lo][s].clone() * rows[hi][t].clone();
                    let rhs = rows[hi][s].clone() * rows[lo][t].clone();
                    if !cross_ge(&lhs, &rhs) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Likelihoods of type `theta` listed in ascending signal-value order.
pub fn ordered_row<T: Scalar>(sig: &SignalStructure<T>, theta: usize) -> Result<Vec<T>> {
    Ok(sig
        .value_order()?
        .into_iter()
        .map(|s| sig.lik(s, theta).clone())
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerceptionClass {
    /// `p ⪰_LR q`, strictly.
    UnderPerceived,
    /// `q ⪰_LR p`, strictly.
    OverPerceived,
    Accurate,
    Incomparable,
}

impl PerceptionClass {
    /// `p ⪰_LR q` (includes accurate perception).
    pub fn is_under(self) -> bool {
        matches!(self, Self::UnderPerceived | Self::Accurate)
    }

    /// `q ⪰_LR p` (includes accurate perception).
    pub fn is_over(self) -> bool {
        matches!(self, Self::OverPerceived | Self::Accurate)
    }
}

pub fn perception_class<T: Scalar>(p: &Dist<T>, q: &Dist<T>) -> PerceptionClass {
    match (lr_geq(p, q), lr_geq(q, p)) {
        (true, true) => PerceptionClass::Accurate,
        (true, false) => PerceptionClass::UnderPerceived,
        (false, true) => PerceptionClass::OverPerceived,
        (false, false) => PerceptionClass::Incomparable,
    }
}

/// Signal structure that pools types `theta_lo` and `theta_hi` into one
/// signal and reveals every other type.
pub fn separating_signal_structure<T: Scalar>(
    space: &SkillSpace<T>,
    theta_lo: &T,
    theta_hi: &T,
) -> Result<SignalStructure<T>> {
    let n = space.len();
    let lo = space
        .index_of(theta_lo)
        .ok_or(ModelError::InvalidPooling { lo: n, hi: n })?;
    let hi = space
        .index_of(theta_hi)
        .ok_or(ModelError::InvalidPooling { lo, hi: n })?;
    separating_structure_at(n, lo, hi)
}

/// Position-based form of [`separating_signal_structure`].
pub fn separating_structure_at<T: Scalar>(
    num_types: usize,
    lo: usize,
    hi: usize,
) -> Result<SignalStructure<T>> {
    if lo >= hi || hi >= num_types {
        return Err(ModelError::InvalidPooling { lo, hi });
    }
    // One signal per type except `hi`, which shares the pooled signal of `lo`.
    let owners: Vec<usize> = (0..num_types).filter(|&t| t != hi).collect();
    let signals = owners
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let label = if t == lo {
                format!("pool{lo}_{hi}")
            } else {
                format!("s{t}")
            };
            Signal::valued(label, T::from_int(k as i64))
        })
        .collect();
    let rows = (0..num_types)
        .map(|t| {
            let owner = if t == hi { lo } else { t };
            owners
                .iter()
                .map(|&o| if o == owner { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    SignalStructure::new(signals, rows)
}
