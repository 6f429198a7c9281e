//! Every integrand the catalog refers to, registered under a stable id.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::numeric::constants::ln2_at;
use crate::numeric::{BasisConstant, ClosedForm};
use crate::quadrature::Integrand;
use crate::series::ln1pt_over_t_integrand;

use super::param::{derivative_integrand, ParamKind};

static REGISTRY: OnceLock<BTreeMap<String, Integrand>> = OnceLock::new();

fn registry() -> &'static BTreeMap<String, Integrand> {
    REGISTRY.get_or_init(build)
}

/// Looks up a registered integrand.
pub fn integrand(id: &str) -> Result<Integrand> {
    registry()
        .get(id)
        .cloned()
        .ok_or_else(|| Error::Catalog(format!("no integrand registered as `{id}`")))
}

pub fn integrand_ids() -> impl Iterator<Item = &'static str> {
    registry().keys().map(String::as_str)
}

fn one(x: &Float) -> Float {
    Float::with_val(x.prec(), 1)
}

/// 1 + x².
fn one_plus_sq(x: &Float) -> Float {
    Float::with_val(x.prec(), x.square_ref()) + 1u32
}

/// ln(1 + x²).
fn ln_one_plus_sq(x: &Float) -> Float {
    Float::with_val(x.prec(), x.square_ref()).ln_1p()
}

fn one_plus(x: &Float) -> Float {
    Float::with_val(x.prec(), x + 1u32)
}

fn atan(x: &Float) -> Float {
    Float::with_val(x.prec(), x.atan_ref())
}

fn ln_sin(t: &Float) -> Float {
    Float::with_val(t.prec(), t.sin_ref()).ln()
}

fn ln_cos(t: &Float) -> Float {
    Float::with_val(t.prec(), t.cos_ref()).ln()
}

/// u²/((1+u²)(u+x)) on [0, x].
pub fn inner_integrand(id: &'static str, x: (i64, i64)) -> Integrand {
    let xr = Rational::from(x);
    Integrand::new_1d(
        id,
        ClosedForm::zero(),
        ClosedForm::term(BasisConstant::One, x.0, x.1),
        move |u: &Float| {
            let bits = u.prec();
            let shifted = Float::with_val(bits, u + Float::with_val(bits, &xr));
            Float::with_val(bits, u.square_ref()) / (one_plus_sq(u) * shifted)
        },
    )
}

/// x²/(1+x²)·ln2 + ln(1+x²)/(2(1+x²)) − x·arctan x/(1+x²), the closed value
/// of the inner integral.
pub fn inner_closed(x: &Float) -> Float {
    let bits = x.prec();
    let q = one_plus_sq(x);
    let ln2 = ln2_at(bits);
    let first = Float::with_val(bits, x.square_ref()) * ln2;
    let second = ln_one_plus_sq(x) / 2u32;
    let third = Float::with_val(bits, x * atan(x));
    (first + second - third) / q
}

fn build() -> BTreeMap<String, Integrand> {
    let zero = ClosedForm::zero;
    let half_pi = || ClosedForm::term(BasisConstant::Pi, 1, 2);
    let list = vec![
        Integrand::unit_square("sigma_2d", |x: &Float, y: &Float| {
            let bits = x.prec();
            let xy2 = Float::with_val(bits, x * y).square();
            let den = Float::with_val(bits, &xy2 + 1u32) * one_plus(x) * one_plus(y);
            -(xy2 / den)
        }),
        inner_integrand("inner_x1_4", (1, 4)),
        inner_integrand("inner_x1_2", (1, 2)),
        inner_integrand("inner_x3_4", (3, 4)),
        inner_integrand("inner_x1", (1, 1)),
        Integrand::unit_1d("inner_closed_over_1px", |x: &Float| {
            inner_closed(x) / one_plus(x)
        }),
        Integrand::unit_1d("A", |x: &Float| {
            Float::with_val(x.prec(), x.square_ref()) / (one_plus_sq(x) * one_plus(x))
        }),
        Integrand::unit_1d("B", |x: &Float| {
            ln_one_plus_sq(x) / (one_plus_sq(x) * one_plus(x))
        }),
        Integrand::unit_1d("C", |x: &Float| {
            -(Float::with_val(x.prec(), x * atan(x)) / (one_plus_sq(x) * one_plus(x)))
        }),
        Integrand::unit_1d("I1", |x: &Float| ln_one_plus_sq(x) / one_plus_sq(x)),
        Integrand::unit_1d("I2", |x: &Float| ln_one_plus_sq(x) / one_plus(x)),
        Integrand::unit_1d("I3", |x: &Float| atan(x) / one_plus(x)),
        Integrand::unit_1d("x_log_over_quadratic", |x: &Float| {
            Float::with_val(x.prec(), x * ln_one_plus_sq(x)) / one_plus_sq(x)
        }),
        Integrand::unit_1d("atan_over_quadratic", |x: &Float| atan(x) / one_plus_sq(x)),
        Integrand::unit_1d("x_atan_over_quadratic", |x: &Float| {
            Float::with_val(x.prec(), x * atan(x)) / one_plus_sq(x)
        }),
        Integrand::unit_1d("atan_over_x", |x: &Float| {
            if x.is_zero() {
                return one(x);
            }
            atan(x) / x
        }),
        Integrand::unit_1d("neg_log_over_quadratic", |x: &Float| {
            -(Float::with_val(x.prec(), x.ln_ref()) / one_plus_sq(x))
        })
        .singular_left(),
        Integrand::unit_1d("I1_plus_catalan", |x: &Float| {
            (ln_one_plus_sq(x) - Float::with_val(x.prec(), x.ln_ref())) / one_plus_sq(x)
        })
        .singular_left(),
        Integrand::new_1d(
            "neg_log_sin_cos",
            zero(),
            ClosedForm::term(BasisConstant::Pi, 1, 4),
            |t: &Float| -(ln_cos(t) + ln_sin(t)),
        )
        .singular_left(),
        Integrand::new_1d("log_sin", zero(), half_pi(), ln_sin).singular_left(),
        Integrand::new_1d(
            "log_sin_full",
            zero(),
            ClosedForm::term(BasisConstant::Pi, 1, 1),
            ln_sin,
        )
        .singular_left()
        .singular_right(),
        Integrand::new_1d("log_cos", zero(), half_pi(), ln_cos).singular_right(),
        Integrand::unit_1d("middle_alpha", |a: &Float| {
            if a.is_zero() {
                return Float::new(a.prec());
            }
            ln_one_plus_sq(a) / (Float::with_val(a.prec(), a * one_plus_sq(a)))
        }),
        Integrand::unit_1d("middle_t", |t: &Float| {
            if t.is_zero() {
                return one(t);
            }
            Float::with_val(t.prec(), t.ln_1p_ref()) / Float::with_val(t.prec(), t * one_plus(t))
        }),
        ln1pt_over_t_integrand(),
        Integrand::unit_1d("log_over_one_plus", |t: &Float| {
            Float::with_val(t.prec(), t.ln_1p_ref()) / one_plus(t)
        }),
        derivative_integrand(ParamKind::F),
        derivative_integrand(ParamKind::H),
    ];
    list.into_iter().map(|f| (f.id().to_string(), f)).collect()
}
