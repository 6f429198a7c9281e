//! The parameter integrals F(α) = ∫₀¹ ln(1+α²x²)/(1+x) dx and
//! H(α) = ∫₀¹ arctan(αx)/(1+x) dx, their closed derivatives, and the
//! finite-difference check that ties the two together.

use std::fmt;

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::numeric::constants::ln2_at;
use crate::numeric::{HPReal, Precision};
use crate::quadrature::{integrate, Integrand, QuadResult, Scheme};

use super::{run_check, CheckResult, IdentityCheck, Recipe, TolerancePolicy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParamKind {
    F,
    H,
}

impl fmt::Display for ParamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParamKind::F => "F",
            ParamKind::H => "H",
        })
    }
}

/// One of F, H at a fixed α ∈ [0, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct ParamFunction {
    pub kind: ParamKind,
    pub alpha: HPReal,
}

impl ParamFunction {
    pub fn new(kind: ParamKind, alpha: HPReal) -> Result<Self> {
        if *alpha.value() < 0 || *alpha.value() > 1 {
            return Err(Error::InvalidArgument(format!(
                "{kind}(α) needs α in [0, 1], got {}",
                alpha.to_decimal()
            )));
        }
        Ok(ParamFunction { kind, alpha })
    }
}

/// F(α) or H(α) by tanh-sinh quadrature at the precision of α.
pub fn eval_param(pf: &ParamFunction) -> Result<HPReal> {
    let pf = ParamFunction::new(pf.kind, pf.alpha.clone())?;
    let p = pf.alpha.precision();
    Ok(param_quadrature(pf.kind, pf.alpha.value(), p)?.value)
}

/// The integrand of F or H at `alpha`, with no range check on α.
fn param_integrand(kind: ParamKind, alpha: &Float) -> Integrand {
    let alpha = alpha.clone();
    match kind {
        ParamKind::F => Integrand::unit_1d("F_alpha", move |x: &Float| {
            let bits = x.prec();
            let ax2 = Float::with_val(bits, &alpha * x).square();
            ax2.ln_1p() / Float::with_val(bits, x + 1u32)
        }),
        ParamKind::H => Integrand::unit_1d("H_alpha", move |x: &Float| {
            let bits = x.prec();
            let ax = Float::with_val(bits, &alpha * x);
            ax.atan() / Float::with_val(bits, x + 1u32)
        }),
    }
}

pub(crate) fn param_quadrature(kind: ParamKind, alpha: &Float, p: Precision) -> Result<QuadResult> {
    let alpha = Float::with_val(p.working(), alpha);
    integrate(&param_integrand(kind, &alpha), &Scheme::default(), p)
}

/// F′(α) = 2α ln2/(1+α²) + ln(1+α²)/(α(1+α²)) − 2 arctan α/(1+α²), or
/// H′(α) = −ln2/(1+α²) + ½ ln(1+α²)/(1+α²) + arctan α/(α(1+α²)),
/// at the precision of `alpha`. The removable point α = 0 takes its limit.
pub fn closed_derivative(kind: ParamKind, alpha: &Float) -> Float {
    let bits = alpha.prec();
    let q = Float::with_val(bits, alpha.square_ref()) + 1u32;
    let ln2 = ln2_at(bits);
    let log_q = Float::with_val(bits, alpha.square_ref()).ln_1p();
    let atan = Float::with_val(bits, alpha.atan_ref());
    match kind {
        ParamKind::F => {
            if alpha.is_zero() {
                return Float::new(bits);
            }
            let first = Float::with_val(bits, alpha * &ln2) * 2u32;
            let second = log_q / alpha;
            let third = atan * 2u32;
            (first + second - third) / q
        }
        ParamKind::H => {
            let ratio = if alpha.is_zero() {
                Float::with_val(bits, 1)
            } else {
                atan / alpha
            };
            (ratio + log_q / 2u32 - ln2) / q
        }
    }
}

/// F′ or H′ as an integrand over α ∈ [0, 1].
pub(crate) fn derivative_integrand(kind: ParamKind) -> Integrand {
    let id = match kind {
        ParamKind::F => "dF_closed",
        ParamKind::H => "dH_closed",
    };
    Integrand::unit_1d(id, move |a: &Float| closed_derivative(kind, a))
}

/// Finite-difference step 2^-⌊p/3⌋ for α ∈ (0, 1].
pub fn fd_step(p: Precision) -> Float {
    Float::with_val(p.working(), Float::i_exp(1, -((p.bits() / 3) as i32)))
}

/// (P(α+h) − P(α−h))/(2h) by quadrature, with the evaluations spent.
pub(crate) fn central_difference(
    kind: ParamKind,
    alpha: &Float,
    p: Precision,
) -> Result<(Float, u64)> {
    let bits = p.working();
    let h = fd_step(p);
    let up = Float::with_val(bits, alpha + &h);
    let down = Float::with_val(bits, alpha - &h);
    let f_up = param_quadrature(kind, &up, p)?;
    let f_down = param_quadrature(kind, &down, p)?;
    let diff = Float::with_val(bits, f_up.value.value() - f_down.value.value());
    let value = diff / (h * 2u32);
    Ok((value, f_up.evaluations + f_down.evaluations))
}

fn id_prefix(kind: ParamKind) -> &'static str {
    match kind {
        ParamKind::F => "app2",
        ParamKind::H => "app3",
    }
}

/// Closed derivative against the central difference at each α, then the
/// reconstruction of P(1) from ∫₀¹ P′(α) dα.
pub fn check_param_derivative(
    kind: ParamKind,
    alphas: &[HPReal],
    p: Precision,
) -> Result<Vec<CheckResult>> {
    let mut out = Vec::with_capacity(alphas.len() + 1);
    for alpha in alphas {
        if *alpha.value() <= 0 || *alpha.value() > 1 {
            return Err(Error::InvalidArgument(format!(
                "derivative check needs α in (0, 1], got {}",
                alpha.to_decimal()
            )));
        }
        let exact = alpha.value().to_rational().expect("finite by construction");
        let check = derivative_check(
            format!("{}_d{kind}_alpha{}", id_prefix(kind), alpha.to_f64()),
            kind,
            exact,
        );
        out.push(run_check(&check, p)?);
    }
    out.push(run_check(&reconstruct_check(kind), p)?);
    Ok(out)
}

pub(crate) fn derivative_check(id: String, kind: ParamKind, alpha: Rational) -> IdentityCheck {
    let shown = alpha.to_f64();
    IdentityCheck {
        id,
        description: format!(
            "closed {kind}'({shown}) against the central difference with step 2^-(p/3)"
        ),
        paper_ref: match kind {
            ParamKind::F => "F'(a) = 2a ln2/(1+a^2) + ln(1+a^2)/(a(1+a^2)) - 2 arctan a/(1+a^2)",
            ParamKind::H => "H'(a) = -ln2/(1+a^2) + ln(1+a^2)/(2(1+a^2)) + arctan a/(a(1+a^2))",
        }
        .into(),
        lhs: Recipe::ParamDerivative {
            kind,
            alpha: alpha.clone(),
        },
        rhs: Recipe::ParamDifference { kind, alpha },
        tolerance: TolerancePolicy::HalfPrecision,
    }
}

pub(crate) fn reconstruct_check(kind: ParamKind) -> IdentityCheck {
    let (id, paper_ref) = match kind {
        ParamKind::F => (
            "app2_F1_reconstruct",
            "I2 = F(1) = integral of F' over [0, 1]",
        ),
        ParamKind::H => (
            "app3_H1_reconstruct",
            "I3 = H(1) = integral of H' over [0, 1]",
        ),
    };
    IdentityCheck {
        id: id.into(),
        description: format!("quadrature of the closed {kind}' over [0, 1] against {kind}(1)"),
        paper_ref: paper_ref.into(),
        lhs: Recipe::quad(match kind {
            ParamKind::F => "dF_closed",
            ParamKind::H => "dH_closed",
        }),
        rhs: Recipe::ParamValue {
            kind,
            alpha: Rational::from(1),
        },
        tolerance: TolerancePolicy::Absolute { exponent: -35 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn at(kind: ParamKind, alpha: f64, pr: Precision) -> HPReal {
        let a = HPReal::from_float(&Float::with_val(pr.working(), alpha), pr).unwrap();
        eval_param(&ParamFunction::new(kind, a).unwrap()).unwrap()
    }

    #[test]
    fn vanish_at_zero() {
        assert!(at(ParamKind::F, 0.0, p(128)).is_zero());
        assert!(at(ParamKind::H, 0.0, p(128)).is_zero());
    }

    #[test]
    fn values_at_one() {
        assert!(at(ParamKind::F, 1.0, p(128))
            .to_decimal()
            .starts_with("0.15472300208262276394"));
        assert!(at(ParamKind::H, 1.0, p(128))
            .to_decimal()
            .starts_with("0.27219826128795026631"));
    }

    #[test]
    fn alpha_out_of_range() {
        let two = HPReal::from_i64(2, p(64));
        assert!(ParamFunction::new(ParamKind::F, two).is_err());
    }

    #[test]
    fn closed_derivatives_at_one() {
        let one = Float::with_val(200, 1);
        let f = closed_derivative(ParamKind::F, &one);
        assert!((f.to_f64() - 0.254_322_607_442_469_65).abs() < 1e-16);
        let h = closed_derivative(ParamKind::H, &one);
        assert!((h.to_f64() - 0.219_412_286_558_737_83).abs() < 1e-16);
    }

    #[test]
    fn step_is_cube_root_of_resolution() {
        assert_eq!(fd_step(p(256)), Float::with_val(64, Float::i_exp(1, -85)));
    }

    #[test]
    fn derivative_check_passes_at_half() {
        let pr = p(192);
        let half = HPReal::from_float(&Float::with_val(64, 0.5), pr).unwrap();
        let results = check_param_derivative(ParamKind::H, &[half], pr).unwrap();
        assert_eq!(results.len(), 2);
        assert!(results.iter().all(|r| r.passed), "{results:#?}");
        assert_eq!(results[0].id, "app3_dH_alpha0.5");
    }
}
