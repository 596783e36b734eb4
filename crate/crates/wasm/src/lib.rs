//! Browser bindings for a static demo page. Each operation is a plain Rust
//! function returning text, with a thin `wasm_bindgen` wrapper on top.

use std::fmt::Write as _;

use paygap::decomposition::decompose;
use paygap::experiments::{parse_grid, run_sweep, sweep_csv};
use paygap::model::{assign_task, average_pay_parts, posterior};
use paygap::{Dist, Firm, Mode, Rational, Scalar, SignalStructure, Task};
use wasm_bindgen::prelude::*;

fn num<T: Scalar>(name: &str, s: &str) -> Result<T, String> {
    T::parse(s.trim()).map_err(|e| format!("{name}: {e}"))
}

fn binary<T: Scalar>(name: &str, s: &str) -> Result<Dist<T>, String> {
    let x: T = num(name, s)?;
    if x <= T::zero() || x >= T::one() {
        return Err(format!("{name}: must lie strictly between 0 and 1"));
    }
    Dist::binary(x).map_err(|e| e.to_string())
}

fn accuracy<T: Scalar>(name: &str, s: &str) -> Result<SignalStructure<T>, String> {
    let x: T = num(name, s)?;
    if x < T::from_frac(1, 2) || x > T::one() {
        return Err(format!("{name}: must lie in [1/2, 1]"));
    }
    SignalStructure::binary_symmetric(x).map_err(|e| e.to_string())
}

/// Tasks separated by `;`, each a pair of surpluses for the low and high type.
fn firm<T: Scalar>(s: &str) -> Result<Firm<T>, String> {
    let tasks = s
        .split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let v = t
                .split_whitespace()
                .map(|x| num::<T>("firm", x))
                .collect::<Result<Vec<T>, _>>()?;
            if v.len() != 2 {
                return Err(format!("firm: task {:?} needs two surpluses", t.trim()));
            }
            Ok(Task(v))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Firm::new(tasks).map_err(|e| e.to_string())
}

fn mode(s: &str) -> Result<Mode, String> {
    s.parse()
        .map_err(|e: paygap::scalar::UnknownMode| e.to_string())
}

/// CSV of the two-population accuracy sweep.
pub fn sweep(grid: &str, mode_name: &str) -> Result<String, String> {
    fn run<T: Scalar>(grid: &str) -> Result<String, String> {
        let points = parse_grid::<T>(grid).map_err(|e| e.to_string())?;
        Ok(sweep_csv(&run_sweep(&points).map_err(|e| e.to_string())?))
    }
    match mode(mode_name)? {
        Mode::Rational => run::<Rational>(grid),
        Mode::Float => run::<f64>(grid),
    }
}

/// Effect of moving from a coarse to a fine symmetric binary signal.
pub fn decomposition(
    p: &str,
    q: &str,
    coarse: &str,
    fine: &str,
    tasks: &str,
    mode_name: &str,
) -> Result<String, String> {
    fn run<T: Scalar>(
        p: &str,
        q: &str,
        coarse: &str,
        fine: &str,
        tasks: &str,
    ) -> Result<String, String> {
        let (p, q) = (binary::<T>("p", p)?, binary::<T>("q", q)?);
        let (coarse, fine) = (
            accuracy::<T>("coarse", coarse)?,
            accuracy::<T>("fine", fine)?,
        );
        let firm = firm::<T>(tasks)?;
        let d = decompose(&firm, &p, &q, &coarse, &fine).map_err(|e| e.to_string())?;
        let mut out = String::new();
        for (k, v) in [
            ("W coarse", &d.w_coarse),
            ("W fine", &d.w_fine),
            ("total", &d.total),
            ("perception-correcting", &d.perception_correcting),
            ("instrumental", &d.instrumental),
        ] {
            writeln!(out, "{k:<22} {}", v.format()).expect("write to string");
        }
        writeln!(out, "tasks (coarse signal)  {:?}", d.assignment_coarse).expect("write to string");
        writeln!(out, "tasks (fine signal)    {:?}", d.assignment_fine).expect("write to string");
        Ok(out)
    }
    match mode(mode_name)? {
        Mode::Rational => run::<Rational>(p, q, coarse, fine, tasks),
        Mode::Float => run::<f64>(p, q, coarse, fine, tasks),
    }
}

/// Posteriors, assigned tasks, and average pay of two populations sharing
/// `p` and a symmetric binary signal but perceived as `q_i` and `q_j`.
pub fn pay_gap(
    p: &str,
    q_i: &str,
    q_j: &str,
    acc: &str,
    tasks: &str,
    mode_name: &str,
) -> Result<String, String> {
    fn run<T: Scalar>(
        p: &str,
        q_i: &str,
        q_j: &str,
        acc: &str,
        tasks: &str,
    ) -> Result<String, String> {
        let p = binary::<T>("p", p)?;
        let pops = [
            ("I", binary::<T>("q_I", q_i)?),
            ("J", binary::<T>("q_J", q_j)?),
        ];
        let sig = accuracy::<T>("accuracy", acc)?;
        let firm = firm::<T>(tasks)?;
        let mut out = String::new();
        let mut pay = vec![];
        for (name, q) in &pops {
            for s in 0..2 {
                let post = posterior(q, &sig, s).map_err(|e| e.to_string())?;
                let a = assign_task(&firm, &post);
                writeln!(
                    out,
                    "{name} s{s}: P(high) = {}, task {}, pay {}",
                    post.get(1).format(),
                    a.task,
                    a.value.format()
                )
                .expect("write to string");
            }
            let w = average_pay_parts(&firm, &p, q, &sig).map_err(|e| e.to_string())?;
            writeln!(out, "W_{name} = {}", w.format()).expect("write to string");
            pay.push(w);
        }
        writeln!(out, "gap = {}", (pay[0].clone() - pay[1].clone()).format())
            .expect("write to string");
        Ok(out)
    }
    match mode(mode_name)? {
        Mode::Rational => run::<Rational>(p, q_i, q_j, acc, tasks),
        Mode::Float => run::<f64>(p, q_i, q_j, acc, tasks),
    }
}

#[wasm_bindgen(js_name = sweepCsv)]
pub fn sweep_js(grid: &str, mode: &str) -> Result<String, JsValue> {
    sweep(grid, mode).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = decomposeBinary)]
pub fn decomposition_js(
    p: &str,
    q: &str,
    coarse: &str,
    fine: &str,
    tasks: &str,
    mode: &str,
) -> Result<String, JsValue> {
    decomposition(p, q, coarse, fine, tasks, mode).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = payGap)]
pub fn pay_gap_js(
    p: &str,
    q_i: &str,
    q_j: &str,
    acc: &str,
    tasks: &str,
    mode: &str,
) -> Result<String, JsValue> {
    pay_gap(p, q_i, q_j, acc, tasks, mode).map_err(|e| JsValue::from_str(&e))
}
