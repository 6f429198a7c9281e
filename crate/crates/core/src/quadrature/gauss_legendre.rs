//! Gauss-Legendre nodes by Newton iteration on P_n, and the 1D / tensor rules
//! built on them. The error estimate compares order n with order ⌈n/2⌉.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use super::{eval_point, finish, Integrand, QuadResult, Side};
use crate::error::{Error, Result};
use crate::numeric::{HPReal, Precision};

type GlCache = OnceLock<Mutex<HashMap<(u32, u32), Arc<Vec<(Float, Float)>>>>>;
static GL: GlCache = OnceLock::new();

/// (P_n(x), P_{n-1}(x)) by the three-term recurrence.
fn legendre_pair(n: u32, x: &Float) -> (Float, Float) {
    let bits = x.prec();
    let mut p_prev = Float::with_val(bits, 1);
    let mut p = x.clone();
    for k in 1..n {
        // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        let a = Float::with_val(bits, x * &p) * (2 * k + 1);
        let next = (a - Float::with_val(bits, &p_prev * k)) / (k + 1);
        p_prev = std::mem::replace(&mut p, next);
    }
    (p, p_prev)
}

fn compute_nodes(n: u32, bits: u32) -> Vec<(Float, Float)> {
    let inner = bits + 16;
    let half = n.div_ceil(2);
    let mut positive = Vec::with_capacity(half as usize);
    let tiny = Float::with_val(inner, Float::i_exp(1, -(inner as i32) + 4));
    for i in 1..=half {
        // i-th largest root
        let guess = (std::f64::consts::PI * (f64::from(i) - 0.25) / (f64::from(n) + 0.5)).cos();
        let middle = n % 2 == 1 && i == half;
        let mut x = if middle {
            Float::new(inner)
        } else {
            Float::with_val(inner, guess)
        };
        let mut derivative;
        for _ in 0..if middle { 0 } else { 100 } {
            let (pn, pm) = legendre_pair(n, &x);
            // P_n'(x) = n (x P_n - P_{n-1}) / (x² - 1)
            let x2m1 = Float::with_val(inner, x.square_ref()) - 1u32;
            derivative = (Float::with_val(inner, &x * &pn) - &pm) * n / x2m1;
            let dx = Float::with_val(inner, &pn / &derivative);
            x -= &dx;
            if dx.abs() <= tiny {
                break;
            }
        }
        let (pn, pm) = legendre_pair(n, &x);
        let x2m1 = Float::with_val(inner, x.square_ref()) - 1u32;
        derivative = (Float::with_val(inner, &x * &pn) - &pm) * n / x2m1;
        let one_minus_x2 = Float::with_val(inner, 1u32) - Float::with_val(inner, x.square_ref());
        let w = Float::with_val(inner, 2u32) / (one_minus_x2 * derivative.square());
        positive.push((x, w));
    }
    let mut nodes: Vec<(Float, Float)> = Vec::with_capacity(n as usize);
    let pairs = (n / 2) as usize;
    for (x, w) in &positive[..pairs] {
        nodes.push((Float::with_val(bits, -x), Float::with_val(bits, w)));
    }
    if n % 2 == 1 {
        let (_, w) = &positive[pairs];
        nodes.push((Float::new(bits), Float::with_val(bits, w)));
    }
    for (x, w) in positive[..pairs].iter().rev() {
        nodes.push((Float::with_val(bits, x), Float::with_val(bits, w)));
    }
    nodes
}

fn nodes_at(n: u32, bits: u32) -> Arc<Vec<(Float, Float)>> {
    let cache = GL.get_or_init(Default::default);
    if let Some(v) = cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(&(n, bits))
    {
        return Arc::clone(v);
    }
    let nodes = if n == 1 {
        Arc::new(vec![(Float::new(bits), Float::with_val(bits, 2))])
    } else {
        Arc::new(compute_nodes(n, bits))
    };
    cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .entry((n, bits))
        .or_insert_with(|| Arc::clone(&nodes));
    nodes
}

/// Nodes and weights of the order-`n` rule on [-1, 1], ascending.
pub fn gauss_legendre_nodes(n: u32, p: Precision) -> Result<Vec<(HPReal, HPReal)>> {
    if n == 0 {
        return Err(Error::InvalidScheme(
            "Gauss-Legendre order must be positive".into(),
        ));
    }
    nodes_at(n, p.working())
        .iter()
        .map(|(x, w)| Ok((HPReal::from_float(x, p)?, HPReal::from_float(w, p)?)))
        .collect()
}

fn rule_1d(f: &Integrand, n: u32, bits: u32, evaluations: &mut u64) -> Result<Float> {
    let (a, b) = f.bounds_at(bits);
    let half = Float::with_val(bits, &b - &a) / 2u32;
    let mid = Float::with_val(bits, &a + &b) / 2u32;
    let mut s = Float::new(bits);
    for (x, w) in nodes_at(n, bits).iter() {
        let pt = Float::with_val(bits, &half * x) + &mid;
        *evaluations += 1;
        if let Some(v) = eval_point(f, &pt, Side::Interior)? {
            s += v * w;
        }
    }
    Ok(s * half)
}

pub(super) fn integrate_1d(f: &Integrand, order: u32, p: Precision) -> Result<QuadResult> {
    let bits = p.working();
    let mut evaluations = 0;
    let fine = rule_1d(f, order, bits, &mut evaluations)?;
    let coarse = rule_1d(f, order.div_ceil(2), bits, &mut evaluations)?;
    let est = Float::with_val(bits, &fine - &coarse);
    finish(fine, est, evaluations, order, p)
}

fn rule_2d(f: &Integrand, n: u32, bits: u32, evaluations: &mut u64) -> Result<Float> {
    let (a, b) = f.bounds_at(bits);
    let half = Float::with_val(bits, &b - &a) / 2u32;
    let mid = Float::with_val(bits, &a + &b) / 2u32;
    let nodes = nodes_at(n, bits);
    let pts: Vec<Float> = nodes
        .iter()
        .map(|(x, _)| Float::with_val(bits, &half * x) + &mid)
        .collect();
    let mut s = Float::new(bits);
    for (xi, (_, wi)) in pts.iter().zip(nodes.iter()) {
        let mut row = Float::new(bits);
        for (yj, (_, wj)) in pts.iter().zip(nodes.iter()) {
            *evaluations += 1;
            let v = f.eval_2d(xi, yj)?;
            if !v.is_finite() {
                return Err(Error::Domain {
                    id: f.id().to_string(),
                    point: format!("({}, {})", xi.to_f64(), yj.to_f64()),
                });
            }
            row += v * wj;
        }
        s += row * wi;
    }
    Ok(s * half.square())
}

pub(super) fn integrate_2d(f: &Integrand, order: u32, p: Precision) -> Result<QuadResult> {
    let bits = p.working();
    let mut evaluations = 0;
    let fine = rule_2d(f, order, bits, &mut evaluations)?;
    let coarse = rule_2d(f, order.div_ceil(2), bits, &mut evaluations)?;
    let est = Float::with_val(bits, &fine - &coarse);
    finish(fine, est, evaluations, order, p)
}
