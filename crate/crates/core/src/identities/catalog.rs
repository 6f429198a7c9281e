//! The checks, in the order the identities are derived.

use std::sync::OnceLock;

use rug::{Float, Rational};

use super::forms;
use super::integrands::inner_closed;
use super::param::{derivative_check, reconstruct_check, ParamKind};
use super::{IdentityCheck, Recipe, SeriesRecipe, TolerancePolicy};
use crate::numeric::ClosedForm;
use crate::quadrature::Scheme;
use crate::series::TailRoute;

/// Terms of the direct alternating sum for ln 2.
pub const LN2_DIRECT_TERMS: usize = 100_000;

/// Gauss-Legendre order per axis for the σ double integral.
pub const SIGMA_2D_ORDER: u32 = 128;

pub const TAIL_ROUTE_INDICES: [u64; 6] = [1, 2, 3, 5, 10, 20];
pub const ALT_TAIL_INDICES: [u64; 3] = [1, 5, 20];
pub const INNER_GRID: [(&str, i64, i64); 4] =
    [("x1_4", 1, 4), ("x1_2", 1, 2), ("x3_4", 3, 4), ("x1", 1, 1)];
pub const DERIVATIVE_ALPHAS: [(&str, i64, i64); 3] = [("03", 3, 10), ("07", 7, 10), ("10", 1, 1)];

static CATALOG: OnceLock<Vec<IdentityCheck>> = OnceLock::new();

/// Every check, in derivation order.
pub fn catalog() -> &'static [IdentityCheck] {
    CATALOG.get_or_init(build)
}

pub fn check_by_id(id: &str) -> Option<&'static IdentityCheck> {
    catalog().iter().find(|c| c.id == id)
}

fn check(
    id: impl Into<String>,
    description: impl Into<String>,
    paper_ref: impl Into<String>,
    lhs: Recipe,
    rhs: Recipe,
    tolerance: TolerancePolicy,
) -> IdentityCheck {
    IdentityCheck {
        id: id.into(),
        description: description.into(),
        paper_ref: paper_ref.into(),
        lhs,
        rhs,
        tolerance,
    }
}

/// Quadrature of a registered integrand against a closed form.
fn quad_closed(
    id: &str,
    integrand: &str,
    what: &str,
    paper_ref: &str,
    cf: ClosedForm,
) -> IdentityCheck {
    check(
        id,
        format!("quadrature of {what} against {cf}"),
        paper_ref,
        Recipe::quad(integrand),
        Recipe::Closed(cf),
        TolerancePolicy::QuadEstimate,
    )
}

fn derived(
    id: &str,
    description: &str,
    paper_ref: &str,
    lhs: fn() -> crate::Result<ClosedForm>,
    rhs: ClosedForm,
) -> IdentityCheck {
    check(
        id,
        description,
        paper_ref,
        Recipe::Derived(lhs),
        Recipe::Closed(rhs),
        TolerancePolicy::Exact,
    )
}

fn build() -> Vec<IdentityCheck> {
    let mut c = Vec::new();

    c.push(check(
        "eq01_sigma_series",
        "CRZ-accelerated sum of (-1)^n a_n^2 against the closed form",
        "sigma = G/2 + pi^2/48 - 7/8 (ln2)^2 - pi/8 ln2",
        Recipe::Series(SeriesRecipe::SigmaCrz),
        Recipe::Closed(forms::sigma()),
        TolerancePolicy::Absolute { exponent: -40 },
    ));
    c.push(check(
        "eq03_ln2",
        format!("direct sum of {LN2_DIRECT_TERMS} terms of (-1)^(k-1)/k against ln2, within the remainder bound"),
        "ln2 = sum (-1)^(k-1)/k",
        Recipe::Series(SeriesRecipe::Ln2Direct {
            terms: LN2_DIRECT_TERMS,
        }),
        Recipe::Closed(forms::ln2()),
        TolerancePolicy::RemainderBound,
    ));
    for n in TAIL_ROUTE_INDICES {
        c.push(check(
            format!("eq04_tail_routes_n{n}"),
            format!(
                "a_{n} by quadrature of x^{}/(1+x) against ln2 minus the exact harmonic block",
                2 * n
            ),
            "ln2 - (1/(n+1) + ... + 1/(2n)) = integral of x^(2n)/(1+x) over [0, 1]",
            Recipe::Tail {
                n,
                route: TailRoute::Integral,
            },
            Recipe::Tail {
                n,
                route: TailRoute::Harmonic,
            },
            TolerancePolicy::QuadEstimate,
        ));
    }
    for n in ALT_TAIL_INDICES {
        c.push(check(
            format!("eq04_alt_tail_n{n}"),
            format!(
                "a_{n} as a truncated alternating tail from k = {} against the harmonic route",
                2 * n + 1
            ),
            "ln2 - (1/(n+1) + ... + 1/(2n)) = sum over k >= 2n+1 of (-1)^(k-1)/k",
            Recipe::Tail {
                n,
                route: TailRoute::AltTail,
            },
            Recipe::Tail {
                n,
                route: TailRoute::Harmonic,
            },
            TolerancePolicy::RemainderBound,
        ));
    }
    c.push(check(
        "eq05_sigma_2d",
        format!("tensor Gauss-Legendre (order {SIGMA_2D_ORDER}) of -x^2y^2/((1+x^2y^2)(1+x)(1+y)) against the series value"),
        "sigma = -double integral of x^2 y^2/((1+x^2 y^2)(1+x)(1+y)) over [0, 1]^2",
        Recipe::Quad {
            integrand: "sigma_2d".into(),
            scheme: Scheme::tensor(Scheme::GaussLegendre {
                order: SIGMA_2D_ORDER,
            }),
        },
        Recipe::Reference("eq01_sigma_series".into()),
        TolerancePolicy::QuadEstimate,
    ));
    for (tag, num, den) in INNER_GRID {
        let x = Rational::from((num, den));
        let shown = if den == 1 {
            format!("{num}")
        } else {
            format!("{num}/{den}")
        };
        c.push(check(
            format!("eq06_inner_{tag}"),
            format!("quadrature of u^2/((1+u^2)(u+x)) over [0, x] at x = {shown} against its closed value"),
            "integral over [0, x] of u^2/((1+u^2)(u+x)) = x^2 ln2/(1+x^2) + ln(1+x^2)/(2(1+x^2)) - x arctan x/(1+x^2)",
            Recipe::quad(&format!("inner_{tag}")),
            Recipe::formula(&format!("inner closed form at x = {shown}"), move |bits| {
                inner_closed(&Float::with_val(bits, &x))
            }),
            TolerancePolicy::QuadEstimate,
        ));
    }
    c.push(quad_closed(
        "eq06_outer",
        "inner_closed_over_1px",
        "the closed inner integral over (1+x)",
        "-sigma = integral of the closed inner integral times 1/(1+x) over [0, 1]",
        forms::sigma().neg(),
    ));
    c.push(derived(
        "eq07_assembly",
        "exact rational assembly of A ln2 + B/2 + C against -sigma",
        "-sigma = A ln2 + B/2 + C",
        forms::assembly,
        forms::sigma().neg(),
    ));
    c.push(quad_closed(
        "eq08_A",
        "A",
        "x^2/((1+x^2)(1+x))",
        "A = 3/4 ln2 - pi/8",
        forms::a(),
    ));
    c.push(check(
        "eq09_B_split",
        "quadrature of ln(1+x^2)/((1+x^2)(1+x)) against half the sum of its three split integrals",
        "B = 1/2 (I2 + I1 - integral of x ln(1+x^2)/(1+x^2))",
        Recipe::quad("B"),
        Recipe::combo(&[("I2", 1, 2), ("I1", 1, 2), ("x_log_over_quadratic", -1, 2)]),
        TolerancePolicy::QuadEstimate,
    ));
    c.push(quad_closed(
        "eq10",
        "x_log_over_quadratic",
        "x ln(1+x^2)/(1+x^2)",
        "integral of x ln(1+x^2)/(1+x^2) = (ln2)^2/4",
        forms::x_log_over_quadratic(),
    ));
    c.push(quad_closed(
        "app1_I1",
        "I1",
        "ln(1+x^2)/(1+x^2)",
        "I1 = pi/2 ln2 - G",
        forms::i1(),
    ));
    c.push(quad_closed(
        "app2_I2",
        "I2",
        "ln(1+x^2)/(1+x)",
        "I2 = 3/4 (ln2)^2 - pi^2/48",
        forms::i2(),
    ));
    c.push(quad_closed(
        "eq13_B",
        "B",
        "ln(1+x^2)/((1+x^2)(1+x))",
        "B = 1/2 (1/2 (ln2)^2 - pi^2/48 + pi/2 ln2 - G)",
        forms::b(),
    ));
    c.push(derived(
        "eq13_B_form",
        "exact rational evaluation of the B split from the closed forms of its parts",
        "B = 1/2 (I2 + I1 - (ln2)^2/4)",
        forms::b_from_split,
        forms::b(),
    ));
    c.push(check(
        "eq14_C_split",
        "quadrature of -x arctan x/((1+x^2)(1+x)) against half the combination of its three split integrals",
        "C = 1/2 (I3 - integral of x arctan x/(1+x^2) - integral of arctan x/(1+x^2))",
        Recipe::quad("C"),
        Recipe::combo(&[
            ("I3", 1, 2),
            ("x_atan_over_quadratic", -1, 2),
            ("atan_over_quadratic", -1, 2),
        ]),
        TolerancePolicy::QuadEstimate,
    ));
    c.push(quad_closed(
        "app3_I3",
        "I3",
        "arctan x/(1+x)",
        "I3 = pi/8 ln2",
        forms::i3(),
    ));
    c.push(quad_closed(
        "eq16",
        "atan_over_quadratic",
        "arctan x/(1+x^2)",
        "integral of arctan x/(1+x^2) = pi^2/32",
        forms::atan_over_quadratic(),
    ));
    c.push(quad_closed(
        "eq17",
        "x_atan_over_quadratic",
        "x arctan x/(1+x^2)",
        "integral of x arctan x/(1+x^2) = G/2 - pi/8 ln2",
        forms::x_atan_over_quadratic(),
    ));
    c.push(derived(
        "eq17_form",
        "exact rational evaluation of the integration by parts with I1 substituted",
        "integral of x arctan x/(1+x^2) = pi/8 ln2 - I1/2",
        forms::x_atan_by_parts,
        forms::x_atan_over_quadratic(),
    ));
    c.push(quad_closed(
        "eq18_C",
        "C",
        "-x arctan x/((1+x^2)(1+x))",
        "C = 1/2 (pi/4 ln2 - pi^2/32 - G/2)",
        forms::c(),
    ));
    c.push(derived(
        "eq18_C_form",
        "exact rational evaluation of the C split from the closed forms of its parts",
        "C = 1/2 (I3 - (G/2 - pi/8 ln2) - pi^2/32)",
        forms::c_from_split,
        forms::c(),
    ));

    c.push(quad_closed(
        "app1_catalan_atan",
        "atan_over_x",
        "arctan x/x",
        "G = integral of arctan x/x over [0, 1]",
        forms::catalan(),
    ));
    c.push(quad_closed(
        "app1_catalan_log",
        "neg_log_over_quadratic",
        "-ln x/(1+x^2)",
        "G = -integral of ln x/(1+x^2) over [0, 1]",
        forms::catalan(),
    ));
    c.push(quad_closed(
        "app1_I1_substitution",
        "I1_plus_catalan",
        "(ln(1+x^2) - ln x)/(1+x^2)",
        "I1 + G = integral of (ln(1+x^2) - ln x)/(1+x^2) = pi/2 ln2",
        forms::i1().add(&forms::catalan()),
    ));
    c.push(quad_closed(
        "app1_I1_theta",
        "neg_log_sin_cos",
        "-(ln cos t + ln sin t) over [0, pi/4]",
        "I1 + G = -integral over [0, pi/4] of (ln cos t + ln sin t)",
        forms::i1().add(&forms::catalan()),
    ));
    c.push(quad_closed(
        "app1_logsine",
        "log_sin",
        "ln sin t over [0, pi/2]",
        "S = integral over [0, pi/2] of ln sin t = -pi/2 ln2",
        forms::log_sine(),
    ));
    c.push(check(
        "app1_logsine_funceq_double",
        "quadrature of ln sin t over [0, pi] against twice the quadrature over [0, pi/2]",
        "integral over [0, pi] of ln sin t = 2S",
        Recipe::quad("log_sin_full"),
        Recipe::combo(&[("log_sin", 2, 1)]),
        TolerancePolicy::QuadEstimate,
    ));
    c.push(check(
        "app1_logsine_funceq_cos",
        "quadrature of ln cos t against ln sin t, both over [0, pi/2]",
        "integral over [0, pi/2] of ln cos t = S",
        Recipe::quad("log_cos"),
        Recipe::quad("log_sin"),
        TolerancePolicy::QuadEstimate,
    ));
    c.push(derived(
        "app1_I1_form",
        "exact rational evaluation of I1 from the log-sine value",
        "I1 + G = pi/4 ln2 - S/2",
        forms::i1_from_log_sine,
        forms::i1(),
    ));

    for (tag, num, den) in DERIVATIVE_ALPHAS {
        c.push(derivative_check(
            format!("app2_dF_alpha{tag}"),
            ParamKind::F,
            Rational::from((num, den)),
        ));
    }
    c.push(reconstruct_check(ParamKind::F));
    c.push(check(
        "app2_middle",
        "quadrature of ln(1+a^2)/(a(1+a^2)) against half the quadrature of ln(1+t)/(t(1+t))",
        "integral of ln(1+a^2)/(a(1+a^2)) = 1/2 integral of ln(1+t)/(t(1+t)), with a^2 = t",
        Recipe::quad("middle_alpha"),
        Recipe::combo(&[("middle_t", 1, 2)]),
        TolerancePolicy::QuadEstimate,
    ));
    c.push(check(
        "app2_li2_series",
        "CRZ sum of (-1)^(n-1)/n^2 against pi^2/12",
        "sum (-1)^(n-1)/n^2 = pi^2/12",
        Recipe::Series(SeriesRecipe::AltInverseSquares),
        Recipe::Closed(forms::alt_inverse_squares()),
        TolerancePolicy::Absolute { exponent: -40 },
    ));
    c.push(check(
        "app2_li2_quad",
        "quadrature of ln(1+t)/t against the CRZ sum of (-1)^(n-1)/n^2",
        "integral of ln(1+t)/t over [0, 1] = sum (-1)^(n-1)/n^2",
        Recipe::quad("ln1pt_over_t"),
        Recipe::Series(SeriesRecipe::AltInverseSquares),
        TolerancePolicy::QuadEstimate,
    ));
    c.push(quad_closed(
        "app2_log_over_1pt",
        "log_over_one_plus",
        "ln(1+t)/(1+t)",
        "integral of ln(1+t)/(1+t) over [0, 1] = (ln2)^2/2",
        forms::log_over_one_plus(),
    ));
    c.push(derived(
        "app2_I2_form",
        "exact rational assembly of F(1) from its four parameter integrals",
        "I2 = (ln2)^2 + 1/2 pi^2/12 - 1/2 (ln2)^2/2 - pi^2/16",
        forms::i2_from_parameter,
        forms::i2(),
    ));

    for (tag, num, den) in DERIVATIVE_ALPHAS {
        c.push(derivative_check(
            format!("app3_dH_alpha{tag}"),
            ParamKind::H,
            Rational::from((num, den)),
        ));
    }
    c.push(reconstruct_check(ParamKind::H));
    c.push(derived(
        "app3_I3_form",
        "exact rational assembly of H(1) from I1, G and the by-parts integral",
        "H(1) = -3pi/8 ln2 + I1 + G",
        forms::i3_from_parameter,
        forms::i3(),
    ));
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn ids_unique_and_core_present() {
        let ids: Vec<&str> = catalog().iter().map(|c| c.id.as_str()).collect();
        let set: HashSet<_> = ids.iter().collect();
        assert_eq!(set.len(), ids.len());
        for id in [
            "eq01_sigma_series",
            "eq03_ln2",
            "eq05_sigma_2d",
            "eq07_assembly",
            "eq08_A",
            "eq09_B_split",
            "eq10",
            "app1_I1",
            "app1_I1_substitution",
            "app1_logsine",
            "app2_I2",
            "app2_middle",
            "eq13_B",
            "eq14_C_split",
            "app3_I3",
            "eq16",
            "eq17",
            "eq18_C",
        ] {
            assert!(check_by_id(id).is_some(), "{id}");
        }
        assert!(catalog().len() >= 21);
    }

    #[test]
    fn references_resolve() {
        for c in catalog() {
            for r in [&c.lhs, &c.rhs] {
                if let Recipe::Reference(id) = r {
                    assert!(check_by_id(id).is_some());
                }
            }
        }
    }
}
