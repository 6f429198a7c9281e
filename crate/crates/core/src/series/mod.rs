//! Harmonic tails a_n = ln2 - (1/(n+1) + … + 1/(2n)), the σ series built from
//! them, and Σ (-1)^{n-1}/n².
//!
//! a_n is computable three ways: from the exact harmonic block, as the tail of
//! the alternating harmonic series starting at k = 2n+1, and as
//! ∫₀¹ x^{2n}/(1+x) dx. The routes are independent and cross-check each other.

pub mod accel;

use std::fmt;
use std::sync::Arc;

use rug::ops::Pow;
use rug::{Float, Rational};

pub use accel::{sum_alternating, AccelMethod, SeriesResult};

use crate::error::{Error, Result};
use crate::numeric::constants::ln2_at;
use crate::numeric::{HPReal, Precision};
use crate::quadrature::{integrate, Integrand, Scheme};

/// Extra terms beyond 2n summed by the alternating-tail route.
pub const ALT_TAIL_EXTRA_TERMS: u64 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TailRoute {
    Harmonic,
    AltTail,
    Integral,
}

impl fmt::Display for TailRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TailRoute::Harmonic => "HARMONIC",
            TailRoute::AltTail => "ALT_TAIL",
            TailRoute::Integral => "INTEGRAL",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TailTerm {
    pub n: u64,
    pub value: HPReal,
    pub route: TailRoute,
    /// Absolute error bound of the route (rounding level for HARMONIC,
    /// remainder for ALT_TAIL, quadrature estimate for INTEGRAL).
    pub error_bound: HPReal,
    pub evaluations: u64,
}

/// Σ_{k=n+1}^{2n} 1/k, exactly.
pub fn harmonic_block(n: u64) -> Rational {
    let mut s = Rational::new();
    for k in n + 1..=2 * n {
        s += Rational::from((1, k));
    }
    s
}

pub(crate) fn tail_harmonic_at(n: u64, bits: u32) -> Float {
    ln2_at(bits) - Float::with_val(bits, harmonic_block(n))
}

/// ∫₀¹ x^{2n}/(1+x) dx.
pub fn tail_integrand(n: u64) -> Integrand {
    let power = 2 * n as u32;
    Integrand::unit_1d(format!("tail_n{n}"), move |x: &Float| {
        let bits = x.prec();
        let num = Float::with_val(bits, x.pow(power));
        num / (Float::with_val(bits, 1) + x)
    })
}

pub fn tail(n: u64, route: TailRoute, p: Precision) -> Result<TailTerm> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "tail index must be at least 1".into(),
        ));
    }
    let bits = p.working();
    let (value, bound, evaluations) = match route {
        TailRoute::Harmonic => (tail_harmonic_at(n, bits), p.resolution(0), 0),
        TailRoute::AltTail => {
            let last = 2 * n + ALT_TAIL_EXTRA_TERMS;
            let mut s = Float::new(bits);
            for k in 2 * n + 1..=last {
                let term = Float::with_val(bits, 1) / Float::with_val(bits, k);
                if k % 2 == 1 {
                    s += term;
                } else {
                    s -= term;
                }
            }
            let bound = Float::with_val(bits, 1) / Float::with_val(bits, last + 1);
            (s, bound, 0)
        }
        TailRoute::Integral => {
            let q = integrate(&tail_integrand(n), &Scheme::default(), p)?;
            (
                q.value.into_float(),
                q.error_estimate.into_float(),
                q.evaluations,
            )
        }
    };
    Ok(TailTerm {
        n,
        value: HPReal::from_float(&value, p)?,
        route,
        error_bound: HPReal::from_float(&bound, p)?,
        evaluations,
    })
}

/// a_1², a_2², … at `bits` bits, from the exact harmonic blocks.
pub(crate) fn sigma_coefficients(count: usize, bits: u32) -> Vec<Float> {
    let ln2 = ln2_at(bits + 16);
    let mut block = Rational::from((1, 2));
    let mut out = Vec::with_capacity(count);
    for n in 1..=count as u64 {
        if n > 1 {
            // block(n) = block(n-1) - 1/n + 1/(2n-1) + 1/(2n)
            block -= Rational::from((1, n));
            block += Rational::from((1, 2 * n - 1));
            block += Rational::from((1, 2 * n));
        }
        let a = Float::with_val(bits + 16, &ln2 - Float::with_val(bits + 16, &block));
        out.push(Float::with_val(bits, a.square()));
    }
    out
}

fn sigma_coefficient_fn(count: usize) -> impl FnMut(usize, u32) -> Float {
    let mut table: Option<(u32, Arc<Vec<Float>>)> = None;
    move |n, bits| {
        let fresh = match &table {
            Some((b, t)) => *b != bits || t.len() < n,
            None => true,
        };
        if fresh {
            table = Some((bits, Arc::new(sigma_coefficients(count.max(n), bits))));
        }
        table.as_ref().unwrap().1[n - 1].clone()
    }
}

/// Σ_{n=1}^{N} (-1)^n a_n², with remainder bound a_{N+1}².
pub fn sigma_partial(terms: usize, p: Precision) -> Result<SeriesResult> {
    if terms == 0 {
        return Err(Error::InvalidArgument("sigma_partial needs N >= 1".into()));
    }
    let r = sum_alternating(
        sigma_coefficient_fn(terms + 1),
        AccelMethod::Direct { terms },
        p,
    )?;
    Ok(negate(r))
}

/// σ = Σ_{n≥1} (-1)^n a_n² summed with `method`.
pub fn sigma(method: AccelMethod, p: Precision) -> Result<SeriesResult> {
    let r = sum_alternating(sigma_coefficient_fn(method.terms() + 1), method, p)?;
    Ok(negate(r))
}

fn negate(r: SeriesResult) -> SeriesResult {
    let p = r.value.precision();
    let v = Float::with_val(p.bits(), -r.value.value());
    SeriesResult {
        value: HPReal::from_float(&v, p).expect("finite"),
        ..r
    }
}

/// ∫₀¹ ln(1+t)/t dt = Σ (-1)^{n-1}/n², by CRZ.
pub fn ln1pt_over_t(p: Precision) -> HPReal {
    let r = sum_alternating(
        |n, bits| Float::with_val(bits, 1) / Float::with_val(bits, (n as u64).pow(2)),
        AccelMethod::crz_for(p),
        p,
    )
    .expect("1/n^2 is positive and decreasing");
    r.value
}

/// ln(1+t)/t on [0, 1], with its limit 1 at t = 0.
pub fn ln1pt_over_t_integrand() -> Integrand {
    Integrand::unit_1d("ln1pt_over_t", |t: &Float| {
        let bits = t.prec();
        if t.is_zero() {
            return Float::with_val(bits, 1);
        }
        Float::with_val(bits, t.ln_1p_ref()) / t
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    #[test]
    fn harmonic_tails() {
        let t1 = tail(1, TailRoute::Harmonic, p(128)).unwrap();
        assert!(t1
            .value
            .to_decimal()
            .starts_with("0.1931471805599453094172"));
        let t2 = tail(2, TailRoute::Harmonic, p(128)).unwrap();
        assert!(t2.value.to_decimal().starts_with("0.10981384722661197608"));
        assert_eq!(harmonic_block(2), Rational::from((7, 12)));
    }

    #[test]
    fn integral_route_matches_harmonic() {
        let h = tail(1, TailRoute::Harmonic, p(128)).unwrap();
        let i = tail(1, TailRoute::Integral, p(128)).unwrap();
        let d = h.value.abs_diff(&i.value);
        assert!(*d.value() <= i.error_bound.value().clone() * 8u32 + h.value.ulp() * 4u32);
        assert!(i.evaluations > 0);
    }

    #[test]
    fn alt_tail_within_remainder() {
        for n in [1, 7] {
            let h = tail(n, TailRoute::Harmonic, p(128)).unwrap();
            let a = tail(n, TailRoute::AltTail, p(128)).unwrap();
            assert!(h.value.abs_diff(&a.value) <= a.error_bound);
            // the partial tail stops after a subtracted term, so it undershoots
            assert!(a.value < h.value);
        }
    }

    #[test]
    fn zero_index_rejected() {
        assert!(tail(0, TailRoute::Harmonic, p(64)).is_err());
        assert!(sigma_partial(0, p(64)).is_err());
    }

    #[test]
    fn sigma_partials() {
        let s1 = sigma_partial(1, p(128)).unwrap();
        assert!(s1.value.to_decimal().starts_with("-0.0373058333582561152"));
        assert!(s1
            .error_bound
            .as_ref()
            .unwrap()
            .to_decimal()
            .starts_with("0.0120590810427096747"));
        let s2 = sigma_partial(2, p(128)).unwrap();
        assert!(s2.value.to_decimal().starts_with("-0.0252467523155464404"));
        let sigma = -0.028_995_093_021_738_7;
        assert!(s1.value.to_f64() < sigma && sigma < s2.value.to_f64());
    }

    #[test]
    fn li2_series() {
        let v = ln1pt_over_t(p(128));
        assert!(v.to_decimal().starts_with("0.82246703342411321823"));
        let first = sum_alternating(
            |n, bits| Float::with_val(bits, 1) / Float::with_val(bits, (n as u64).pow(2)),
            AccelMethod::Direct { terms: 1 },
            p(64),
        )
        .unwrap();
        assert_eq!(*first.value.value(), 1);
    }

    #[test]
    fn li2_integrand_has_limit_at_zero() {
        let f = ln1pt_over_t_integrand();
        let v = f.eval_1d(&Float::new(96)).unwrap();
        assert_eq!(v, 1);
    }
}
