//! π, ln 2 and Catalan's constant.
//!
//! π and ln 2 come from Machin-type arctangent formulas summed in fixed-point
//! integer arithmetic. G is the alternating series Σ (-1)^k/(2k+1)^2 summed
//! with the Cohen-Rodriguez Villegas-Zagier accelerator.
//!
//! Values are cached per mantissa size; the cache is only ever filled with the
//! deterministic result of the computation, so racing fills are harmless.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use rug::{Float, Integer};

use super::{HPReal, Precision};
use crate::series::accel::crz_sum;
use crate::series::accel::crz_terms_for_bits;

type Cache = OnceLock<RwLock<HashMap<u32, Float>>>;

static PI: Cache = OnceLock::new();
static LN2: Cache = OnceLock::new();
static CATALAN: Cache = OnceLock::new();

fn cached(cache: &'static Cache, bits: u32, compute: fn(u32) -> Float) -> Float {
    let map = cache.get_or_init(Default::default);
    if let Some(v) = map.read().unwrap_or_else(|e| e.into_inner()).get(&bits) {
        return v.clone();
    }
    let value = compute(bits);
    map.write()
        .unwrap_or_else(|e| e.into_inner())
        .entry(bits)
        .or_insert_with(|| value.clone());
    value
}

pub fn const_pi(p: Precision) -> HPReal {
    HPReal::from_float(&pi_at(p.working()), p).expect("pi is finite")
}

pub fn const_ln2(p: Precision) -> HPReal {
    HPReal::from_float(&ln2_at(p.working()), p).expect("ln 2 is finite")
}

pub fn const_catalan(p: Precision) -> HPReal {
    HPReal::from_float(&catalan_at(p.working()), p).expect("G is finite")
}

/// π correctly to within an ulp at `bits` bits.
pub(crate) fn pi_at(bits: u32) -> Float {
    cached(&PI, bits, |bits| {
        let scale = bits + 24;
        // π = 16 atan(1/5) - 4 atan(1/239)
        let fixed = atan_inv(5, scale) * 16u32 - atan_inv(239, scale) * 4u32;
        from_fixed(fixed, scale, bits)
    })
}

/// ln 2 correctly to within an ulp at `bits` bits.
pub(crate) fn ln2_at(bits: u32) -> Float {
    cached(&LN2, bits, |bits| {
        let scale = bits + 24;
        // ln 2 = 18 atanh(1/26) - 2 atanh(1/4801) + 8 atanh(1/8749)
        let fixed = atanh_inv(26, scale) * 18u32 - atanh_inv(4801, scale) * 2u32
            + atanh_inv(8749, scale) * 8u32;
        from_fixed(fixed, scale, bits)
    })
}

pub(crate) fn catalan_at(bits: u32) -> Float {
    cached(&CATALAN, bits, |bits| {
        let inner = bits + 16;
        let terms = crz_terms_for_bits(inner);
        // Σ_{k≥0} (-1)^k a_k with a_k = 1/(2k+1)^2
        let coeffs: Vec<Float> = (0..terms)
            .map(|k| {
                let odd = 2 * k as u64 + 1;
                Float::with_val(inner, 1) / Float::with_val(inner, odd * odd)
            })
            .collect();
        Float::with_val(bits, crz_sum(&coeffs, inner))
    })
}

/// atan(1/n) scaled by 2^scale, truncated.
fn atan_inv(n: u32, scale: u32) -> Integer {
    let n2 = Integer::from(n) * n;
    let mut power = (Integer::from(1) << scale) / n;
    let mut sum = power.clone();
    let mut k = 1u32;
    loop {
        power /= &n2;
        if power == 0 {
            break;
        }
        let term = Integer::from(&power / (2 * k + 1));
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// atanh(1/n) scaled by 2^scale, truncated.
fn atanh_inv(n: u32, scale: u32) -> Integer {
    let n2 = Integer::from(n) * n;
    let mut power = (Integer::from(1) << scale) / n;
    let mut sum = power.clone();
    let mut k = 1u32;
    loop {
        power /= &n2;
        if power == 0 {
            break;
        }
        sum += Integer::from(&power / (2 * k + 1));
        k += 1;
    }
    sum
}

fn from_fixed(fixed: Integer, scale: u32, bits: u32) -> Float {
    let mut f = Float::with_val(bits, fixed);
    f >>= scale;
    f
}
