//! Tanh-sinh (double exponential) rule: x = tanh(π/2 · sinh t) on a trapezoid
//! grid of step 2^-level, truncated once the weights fall below 2^-bits.
//!
//! Levels nest: level k adds the odd multiples of 2^-k, so each refinement
//! reuses every earlier evaluation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use super::{eval_point, finish, target, Integrand, QuadResult, Side};
use crate::error::{Error, Result};
use crate::numeric::constants::pi_at;
use crate::numeric::{HPReal, Precision};

/// Levels below this never stop early, whatever the difference says.
const MIN_LEVEL: u32 = 3;

/// One abscissa pair ±x of the reference rule on [-1, 1].
#[derive(Clone, Debug)]
struct Node {
    /// 1 - |x|, kept separately so points next to an endpoint keep full
    /// relative accuracy.
    complement: Float,
    /// (π/2) cosh t / cosh²(π/2 sinh t), not yet multiplied by the step.
    weight: Float,
    center: bool,
}

type NodeCache = OnceLock<Mutex<HashMap<(u32, u32), Arc<Vec<Node>>>>>;
static NODES: NodeCache = OnceLock::new();

/// Largest t whose weight is still above 2^-bits.
fn t_max(bits: u32) -> f64 {
    let log_w = |t: f64| {
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        // ln cosh u = u + ln(1 + e^{-2u}) - ln 2
        let ln_cosh_u = u + (-2.0 * u).exp().ln_1p() - std::f64::consts::LN_2;
        std::f64::consts::FRAC_PI_2.ln() + t.cosh().ln() - 2.0 * ln_cosh_u
    };
    let floor = -f64::from(bits) * std::f64::consts::LN_2;
    let (mut lo, mut hi) = (0.0f64, 10.0f64);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if log_w(mid) > floor {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Nodes introduced at `level` (all integer t at level 0, odd multiples of
/// 2^-level afterwards), t ≥ 0 only.
fn level_nodes(level: u32, bits: u32) -> Arc<Vec<Node>> {
    let cache = NODES.get_or_init(Default::default);
    if let Some(n) = cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(&(level, bits))
    {
        return Arc::clone(n);
    }
    let nodes = Arc::new(compute_level(level, bits));
    cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .entry((level, bits))
        .or_insert_with(|| Arc::clone(&nodes));
    nodes
}

fn compute_level(level: u32, bits: u32) -> Vec<Node> {
    let inner = bits + 16;
    let limit = t_max(bits);
    let step = 0.5f64.powi(level as i32);
    let pi = pi_at(inner);
    let half_pi = Float::with_val(inner, &pi / 2u32);
    let two_pi = Float::with_val(inner, &pi * 2u32);
    let (first, stride) = if level == 0 { (0u64, 1u64) } else { (1, 2) };
    let mut out = Vec::new();
    let mut j = first;
    while (j as f64) * step <= limit {
        if j == 0 {
            out.push(Node {
                complement: Float::with_val(bits, 1),
                weight: Float::with_val(bits, &half_pi),
                center: true,
            });
        } else {
            let mut t = Float::with_val(inner, j);
            t >>= level;
            let et = Float::with_val(inner, t.exp_ref());
            let inv = Float::with_val(inner, et.recip_ref());
            let sinh = Float::with_val(inner, &et - &inv) / 2u32;
            let cosh = Float::with_val(inner, &et + &inv) / 2u32;
            let u = Float::with_val(inner, &half_pi * &sinh);
            let e2u = Float::with_val(inner, (u * 2u32).exp_ref());
            let complement = Float::with_val(inner, 2u32) / Float::with_val(inner, &e2u + 1u32);
            let denom =
                Float::with_val(inner, &e2u + 2u32) + Float::with_val(inner, e2u.recip_ref());
            let weight = Float::with_val(inner, &two_pi * &cosh) / denom;
            out.push(Node {
                complement: Float::with_val(bits, complement),
                weight: Float::with_val(bits, weight),
                center: false,
            });
        }
        j += stride;
    }
    out
}

/// Full node table of the step-2^-level grid on [-1, 1], ascending, with
/// weights already multiplied by the step.
pub fn tanh_sinh_nodes(level: u32, p: Precision) -> Vec<(HPReal, HPReal)> {
    let bits = p.working();
    let mut half: Vec<(Float, Float)> = Vec::new();
    for l in 0..=level {
        for n in level_nodes(l, bits).iter() {
            let x = Float::with_val(bits, 1u32) - &n.complement;
            let mut w = n.weight.clone();
            w >>= level;
            half.push((x, w));
        }
    }
    half.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
    let mut out = Vec::with_capacity(2 * half.len());
    for (x, w) in half.iter().rev().filter(|(x, _)| !x.is_zero()) {
        out.push((Float::with_val(bits, -x), w.clone()));
    }
    out.extend(half);
    out.into_iter()
        .map(|(x, w)| {
            (
                HPReal::from_float(&x, p).expect("finite"),
                HPReal::from_float(&w, p).expect("finite"),
            )
        })
        .collect()
}

struct Interval {
    a: Float,
    b: Float,
    half: Float,
    mid: Float,
}

impl Interval {
    fn of(f: &Integrand, bits: u32) -> Self {
        let (a, b) = f.bounds_at(bits);
        let half = Float::with_val(bits, &b - &a) / 2u32;
        let mid = Float::with_val(bits, &a + &b) / 2u32;
        Interval { a, b, half, mid }
    }

    fn left(&self, complement: &Float) -> Float {
        Float::with_val(self.a.prec(), &self.half * complement) + &self.a
    }

    fn right(&self, complement: &Float) -> Float {
        Float::with_val(
            self.b.prec(),
            &self.b - Float::with_val(self.b.prec(), &self.half * complement),
        )
    }
}

/// Runs levels 0..=max_level, calling `done` after each with the level and
/// its estimate; stops as soon as `done` returns true.
fn run_1d(
    f: &Integrand,
    max_level: u32,
    p: Precision,
    mut done: impl FnMut(u32, &Float, Option<&Float>, u64) -> bool,
) -> Result<()> {
    let bits = p.working();
    let iv = Interval::of(f, bits);
    let mut sum = Float::new(bits);
    let mut evaluations = 0u64;
    let mut previous: Option<Float> = None;
    for level in 0..=max_level {
        for node in level_nodes(level, bits).iter() {
            if node.center {
                evaluations += 1;
                if let Some(v) = eval_point(f, &iv.mid, Side::Interior)? {
                    sum += v * &node.weight;
                }
                continue;
            }
            let l = iv.left(&node.complement);
            let r = iv.right(&node.complement);
            evaluations += 2;
            let mut pair = Float::new(bits);
            if let Some(v) = eval_point(f, &l, Side::Left)? {
                pair += v;
            }
            if let Some(v) = eval_point(f, &r, Side::Right)? {
                pair += v;
            }
            sum += pair * &node.weight;
        }
        let mut t = Float::with_val(bits, &sum * &iv.half);
        t >>= level;
        let estimate = previous
            .as_ref()
            .map(|prev| Float::with_val(bits, &t - prev).abs());
        if done(level, &t, estimate.as_ref(), evaluations) {
            return Ok(());
        }
        previous = Some(t);
    }
    Ok(())
}

pub(super) fn integrate_1d(f: &Integrand, max_level: u32, p: Precision) -> Result<QuadResult> {
    let mut outcome: Option<(Float, Float, u64, u32)> = None;
    let mut last_estimate = None;
    run_1d(f, max_level, p, |level, t, estimate, evals| {
        let Some(est) = estimate else { return false };
        last_estimate = Some(est.clone());
        if level >= MIN_LEVEL && *est <= target(t, p) {
            outcome = Some((t.clone(), est.clone(), evals, level));
            return true;
        }
        false
    })?;
    match outcome {
        Some((v, e, n, l)) => finish(v, e, n, l, p),
        None => Err(Error::NonConvergence {
            id: f.id.clone(),
            level: max_level,
            estimate: last_estimate
                .map(|e| e.to_string_radix(10, Some(6)))
                .unwrap_or_else(|| "n/a".into()),
        }),
    }
}

/// Every level's value 0..=max_level without early stopping. The estimate of
/// level 0 is reported as zero.
pub fn tanh_sinh_levels(f: &Integrand, max_level: u32, p: Precision) -> Result<Vec<QuadResult>> {
    if f.dimension() != 1 {
        return Err(Error::InvalidScheme(
            "tanh_sinh_levels needs a 1D integrand".into(),
        ));
    }
    let mut out = Vec::new();
    let mut failure = None;
    run_1d(f, max_level, p, |level, t, estimate, evals| {
        let est = estimate.cloned().unwrap_or_else(|| Float::new(p.working()));
        match finish(t.clone(), est, evals, level, p) {
            Ok(r) => out.push(r),
            Err(e) => {
                failure = Some(e);
                return true;
            }
        }
        false
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// One-dimensional abscissae on the integrand's interval, tagged with the
/// level that introduced them.
fn points_for_level(iv: &Interval, level: u32, bits: u32) -> Vec<(Float, Float)> {
    let mut out = Vec::new();
    for node in level_nodes(level, bits).iter() {
        if node.center {
            out.push((iv.mid.clone(), node.weight.clone()));
        } else {
            out.push((iv.left(&node.complement), node.weight.clone()));
            out.push((iv.right(&node.complement), node.weight.clone()));
        }
    }
    out
}

pub(super) fn integrate_2d(f: &Integrand, max_level: u32, p: Precision) -> Result<QuadResult> {
    let bits = p.working();
    let iv = Interval::of(f, bits);
    let area = Float::with_val(bits, iv.half.square_ref());
    let mut sum = Float::new(bits);
    let mut evaluations = 0u64;
    let mut old: Vec<(Float, Float)> = Vec::new();
    let mut previous: Option<Float> = None;
    let mut last_estimate = String::from("n/a");

    let eval = |x: &Float, y: &Float, evaluations: &mut u64| -> Result<Float> {
        *evaluations += 1;
        let v = f.eval_2d(x, y)?;
        if !v.is_finite() {
            return Err(Error::Domain {
                id: f.id().to_string(),
                point: format!("({}, {})", x.to_f64(), y.to_f64()),
            });
        }
        Ok(v)
    };

    for level in 0..=max_level {
        let new = points_for_level(&iv, level, bits);
        // pairs with at least one new coordinate
        for (x, wx) in &new {
            for (y, wy) in old.iter().chain(new.iter()) {
                let v = eval(x, y, &mut evaluations)?;
                sum += v * Float::with_val(bits, wx * wy);
            }
        }
        for (x, wx) in &old {
            for (y, wy) in &new {
                let v = eval(x, y, &mut evaluations)?;
                sum += v * Float::with_val(bits, wx * wy);
            }
        }
        old.extend(new);
        let mut t = Float::with_val(bits, &sum * &area);
        t >>= 2 * level;
        if let Some(prev) = &previous {
            let est = Float::with_val(bits, &t - prev).abs();
            if level >= MIN_LEVEL && est <= target(&t, p) {
                return finish(t, est, evaluations, level, p);
            }
            last_estimate = est.to_string_radix(10, Some(6));
        }
        previous = Some(t);
    }
    Err(Error::NonConvergence {
        id: f.id().to_string(),
        level: max_level,
        estimate: last_estimate,
    })
}
