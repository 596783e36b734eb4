//! Seeded random instance generators. All randomness is drawn as small
//! integers and converted to scalars by exact division, so the same seed
//! yields the same instance in both arithmetic modes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::garbling::GarblingKernel;
use crate::model::{Dist, Firm, SignalStructure, Task};
use crate::scalar::Scalar;

/// Identifier of the generator recorded in suite output.
pub const RNG_ALGORITHM: &str = "chacha8/rand_chacha-0.3";

pub type TrialRng = ChaCha8Rng;

/// Independent stream for one trial of a seeded run.
pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn normalize<T: Scalar>(w: &[i64]) -> Vec<T> {
    let total: i64 = w.iter().sum();
    w.iter().map(|&x| T::from_frac(x, total)).collect()
}

/// Positive integer weights in `1..=max`.
pub fn positive_weights(rng: &mut impl Rng, n: usize, max: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(1..=max)).collect()
}

pub fn dist_from_weights<T: Scalar>(w: &[i64]) -> Dist<T> {
    Dist::full_support(normalize(w)).expect("positive weights")
}

pub fn random_dist<T: Scalar>(rng: &mut impl Rng, n: usize) -> Dist<T> {
    dist_from_weights(&positive_weights(rng, n, 9))
}

/// Non-decreasing positive multipliers.
fn nondecreasing(rng: &mut impl Rng, n: usize, lo: i64, hi: i64) -> Vec<i64> {
    let mut h: Vec<i64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    h.sort_unstable();
    h
}

/// Weights LR-above `base`: `base[i]·h[i]` with `h` non-decreasing.
pub fn lr_above(rng: &mut impl Rng, base: &[i64]) -> Vec<i64> {
    let h = nondecreasing(rng, base.len(), 1, 4);
    base.iter().zip(h).map(|(b, x)| b * x).collect()
}

/// Weights LR-below `base`: `base[i]·h[i]` with `h` non-increasing.
pub fn lr_below(rng: &mut impl Rng, base: &[i64]) -> Vec<i64> {
    let mut h = nondecreasing(rng, base.len(), 1, 4);
    h.reverse();
    base.iter().zip(h).map(|(b, x)| b * x).collect()
}

/// Arbitrary signal structure; likelihoods may be zero.
pub fn random_structure<T: Scalar>(rng: &mut impl Rng, n: usize, k: usize) -> SignalStructure<T> {
    let mut w: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..k)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        0
                    } else {
                        rng.gen_range(1..=6)
                    }
                })
                .collect()
        })
        .collect();
    for row in &mut w {
        if row.iter().all(|&x| x == 0) {
            row[rng.gen_range(0..k)] = 1;
        }
    }
    for s in 0..k {
        if w.iter().all(|r| r[s] == 0) {
            w[rng.gen_range(0..n)][s] = 1;
        }
    }
    SignalStructure::from_rows(w.iter().map(|r| normalize(r)).collect())
        .expect("valid by construction")
}

/// MLR structure: each type's likelihoods are the previous type's times a
/// non-decreasing ratio in the signal, which may start at zero.
pub fn random_mlr_structure<T: Scalar>(
    rng: &mut impl Rng,
    n: usize,
    k: usize,
) -> SignalStructure<T> {
    let mut rows = vec![positive_weights(rng, k, 4)];
    for _ in 1..n {
        let mut h = nondecreasing(rng, k, 0, 3);
        if h[k - 1] == 0 {
            h[k - 1] = 1;
        }
        // The last entry never vanishes, so no row is all zero.
        let prev = rows.last().expect("non-empty");
        let next = prev.iter().zip(&h).map(|(a, b)| a * b).collect();
        rows.push(next);
    }
    SignalStructure::from_rows(rows.iter().map(|r| normalize(r)).collect())
        .expect("valid by construction")
}

/// Structure in which every signal reveals one type; `k >= n`.
pub fn random_fully_informative<T: Scalar>(
    rng: &mut impl Rng,
    n: usize,
    k: usize,
) -> SignalStructure<T> {
    let mut owner: Vec<usize> = (0..n).chain((n..k).map(|_| rng.gen_range(0..n))).collect();
    owner.shuffle(rng);
    let w: Vec<Vec<i64>> = (0..n)
        .map(|t| {
            owner
                .iter()
                .map(|&o| if o == t { rng.gen_range(1..=5) } else { 0 })
                .collect()
        })
        .collect();
    SignalStructure::from_rows(w.iter().map(|r| normalize(r)).collect())
        .expect("valid by construction")
}

/// Column-stochastic kernel in which every coarse signal receives mass.
/// With `sticky`, each fine signal keeps most of its mass on one coarse
/// signal, so coarse posteriors stay close to fine ones.
pub fn random_kernel<T: Scalar>(
    rng: &mut impl Rng,
    fine: usize,
    coarse: usize,
    sticky: bool,
) -> GarblingKernel<T> {
    let mut w = vec![vec![0i64; fine]; coarse];
    for t in 0..fine {
        if sticky {
            let home = if t < coarse {
                t
            } else {
                rng.gen_range(0..coarse)
            };
            w[home][t] = 40;
            if rng.gen_bool(0.5) {
                w[rng.gen_range(0..coarse)][t] += 1;
            }
        } else {
            for row in w.iter_mut() {
                if rng.gen_bool(0.5) {
                    row[t] = rng.gen_range(1..=5);
                }
            }
            if w.iter().all(|r| r[t] == 0) {
                w[rng.gen_range(0..coarse)][t] = 1;
            }
        }
    }
    for row in &mut w {
        if row.iter().all(|&x| x == 0) {
            row[rng.gen_range(0..fine)] = 1;
        }
    }
    let totals: Vec<i64> = (0..fine).map(|t| w.iter().map(|r| r[t]).sum()).collect();
    let g = w
        .iter()
        .map(|r| {
            r.iter()
                .zip(&totals)
                .map(|(&x, &tot)| T::from_frac(x, tot))
                .collect()
        })
        .collect();
    GarblingKernel::from_columns(g).expect("column-stochastic by construction")
}

/// Arbitrary firm with integer surpluses in `-6..=6`.
pub fn random_firm<T: Scalar>(rng: &mut impl Rng, n: usize, m: usize) -> Firm<T> {
    let tasks = (0..m)
        .map(|_| Task((0..n).map(|_| T::from_int(rng.gen_range(-6..=6))).collect()))
        .collect();
    Firm::new(tasks).expect("non-empty")
}

/// Firm whose tasks all have strictly increasing surplus.
pub fn random_monotone_firm<T: Scalar>(rng: &mut impl Rng, n: usize, m: usize) -> Firm<T> {
    let tasks = (0..m)
        .map(|_| {
            let mut level: i64 = rng.gen_range(-8..=2);
            Task(
                (0..n)
                    .map(|_| {
                        let v = level;
                        level += rng.gen_range(1..=4);
                        T::from_int(v)
                    })
                    .collect(),
            )
        })
        .collect();
    Firm::new(tasks).expect("non-empty")
}

/// Rational in `(0, 1)` with a small denominator.
pub fn open_unit<T: Scalar>(rng: &mut impl Rng) -> T {
    let den = rng.gen_range(2..=40);
    T::from_frac(rng.gen_range(1..den), den)
}
