//! Summation of alternating series Σ_{n≥1} (-1)^{n-1} c_n.
//!
//! Three methods are offered: plain partial sums with the alternating-series
//! remainder bound, the Euler transform, and the Cohen-Rodriguez
//! Villegas-Zagier (CRZ) Chebyshev accelerator. CRZ assumes the coefficients
//! are a moment sequence c_n = ∫ t^{n-1} dμ(t) with μ ≥ 0 on [0, 1]; only
//! positivity and monotonicity over the terms actually used are checked.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numeric::{HPReal, Precision};

/// log2(3 + √8), the number of bits CRZ gains per term.
pub const CRZ_BITS_PER_TERM: f64 = 2.543_106_606_327_58;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AccelMethod {
    Direct { terms: usize },
    Euler { terms: usize },
    Crz { terms: usize },
}

impl AccelMethod {
    pub fn terms(self) -> usize {
        match self {
            AccelMethod::Direct { terms }
            | AccelMethod::Euler { terms }
            | AccelMethod::Crz { terms } => terms,
        }
    }

    /// CRZ with enough terms for full accuracy at `p`.
    pub fn crz_for(p: Precision) -> Self {
        AccelMethod::Crz {
            terms: crz_terms_for_bits(p.working()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesResult {
    pub value: HPReal,
    pub terms_used: usize,
    /// Alternating-series remainder bound; only the direct method has one.
    pub error_bound: Option<HPReal>,
}

/// Number of CRZ terms after which (3+√8)^{-n} drops below 2^{-bits}.
pub fn crz_terms_for_bits(bits: u32) -> usize {
    (f64::from(bits) / CRZ_BITS_PER_TERM).ceil() as usize + 2
}

/// Sums Σ_{n≥1} (-1)^{n-1} c_n where `coeff(n, bits)` returns c_n at `bits`
/// bits of mantissa.
pub fn sum_alternating<F>(mut coeff: F, method: AccelMethod, p: Precision) -> Result<SeriesResult>
where
    F: FnMut(usize, u32) -> Float,
{
    let terms = method.terms();
    if terms == 0 {
        return Err(Error::InvalidArgument(
            "series needs at least one term".into(),
        ));
    }
    let bits = match method {
        // Repeated differencing cancels up to one bit per order.
        AccelMethod::Euler { terms } => p.working() + terms as u32 + 16,
        _ => p.working(),
    };
    let needed = match method {
        AccelMethod::Direct { terms } => terms + 1,
        _ => terms,
    };
    let coeffs: Vec<Float> = (1..=needed).map(|n| coeff(n, bits)).collect();
    check_monotone(&coeffs)?;

    let (value, bound) = match method {
        AccelMethod::Direct { terms } => {
            let mut s = Float::new(bits);
            for (i, c) in coeffs[..terms].iter().enumerate() {
                if i % 2 == 0 {
                    s += c;
                } else {
                    s -= c;
                }
            }
            (s, Some(coeffs[terms].clone()))
        }
        AccelMethod::Euler { .. } => (euler_sum(&coeffs, bits), None),
        AccelMethod::Crz { .. } => (crz_sum(&coeffs, bits), None),
    };
    Ok(SeriesResult {
        value: HPReal::from_float(&value, p)?,
        terms_used: terms,
        error_bound: bound.map(|b| HPReal::from_float(&b, p)).transpose()?,
    })
}

fn check_monotone(coeffs: &[Float]) -> Result<()> {
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_finite() || *c <= 0 {
            return Err(Error::PreconditionViolation(format!(
                "coefficient {} is not positive ({})",
                i + 1,
                c.to_f64()
            )));
        }
        if i > 0 && *c > coeffs[i - 1] {
            return Err(Error::PreconditionViolation(format!(
                "coefficient {} exceeds coefficient {}",
                i + 1,
                i
            )));
        }
    }
    Ok(())
}

/// Σ_{k≥0} (-1)^k a_k by the Euler transform truncated after `a.len()` orders:
/// Σ_j (-1)^j (Δ^j a)_0 / 2^{j+1}.
pub(crate) fn euler_sum(a: &[Float], bits: u32) -> Float {
    let mut diffs: Vec<Float> = a.iter().map(|x| Float::with_val(bits, x)).collect();
    let mut s = Float::new(bits);
    for j in 0..a.len() {
        let mut term = diffs[0].clone();
        term >>= (j + 1) as u32;
        if j % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
        for i in 0..diffs.len() - 1 - j {
            let next = Float::with_val(bits, &diffs[i + 1] - &diffs[i]);
            diffs[i] = next;
        }
    }
    s
}

type WeightCache = OnceLock<RwLock<HashMap<usize, Arc<Vec<Rational>>>>>;
static CRZ_WEIGHTS: WeightCache = OnceLock::new();

/// Exact CRZ weights w_k (k = 0..n) such that Σ_k w_k a_k approximates
/// Σ_{k≥0} (-1)^k a_k; the signs of w_k alternate.
pub fn crz_weights(n: usize) -> Arc<Vec<Rational>> {
    let cache = CRZ_WEIGHTS.get_or_init(Default::default);
    if let Some(w) = cache.read().unwrap_or_else(|e| e.into_inner()).get(&n) {
        return Arc::clone(w);
    }
    let w = Arc::new(compute_crz_weights(n));
    cache
        .write()
        .unwrap_or_else(|e| e.into_inner())
        .entry(n)
        .or_insert_with(|| Arc::clone(&w));
    w
}

fn compute_crz_weights(n: usize) -> Vec<Rational> {
    // d = ((3+√8)^n + (3-√8)^n)/2 = T_n(3), an integer.
    let (mut t_prev, mut d) = (Integer::from(1), Integer::from(3));
    if n == 0 {
        d = Integer::from(1);
    }
    for _ in 1..n {
        let next = Integer::from(&d * 6u32) - &t_prev;
        t_prev = std::mem::replace(&mut d, next);
    }
    let d = Rational::from(d);
    let ni = n as i64;
    let mut b = Rational::from(-1);
    let mut c = Rational::from(-&d);
    let mut weights = Vec::with_capacity(n);
    for k in 0..ni {
        c = Rational::from(&b - &c);
        weights.push(Rational::from(&c / &d));
        // b <- (k+n)(k-n) b / ((k+1/2)(k+1))
        b *= Rational::from((2 * (k + ni) * (k - ni), (2 * k + 1) * (k + 1)));
    }
    weights
}

/// Σ_{k≥0} (-1)^k a_k by CRZ with n = `a.len()` terms.
pub(crate) fn crz_sum(a: &[Float], bits: u32) -> Float {
    let weights = crz_weights(a.len());
    let mut s = Float::new(bits);
    for (w, x) in weights.iter().zip(a) {
        s += Float::with_val(bits, w) * x;
    }
    s
}
