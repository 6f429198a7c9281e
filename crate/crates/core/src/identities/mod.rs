//! The identity catalog and the machinery that runs it.
//!
//! Each check pairs two recipes, evaluates both at the working precision and
//! compares them under a tolerance policy. Recipes name integrands by id; the
//! registry in [`integrands`] resolves them, so a typo surfaces as a
//! `CATALOG_ERROR` rather than a silently different integral.

pub mod catalog;
pub mod forms;
pub mod integrands;
pub mod param;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rug::ops::Pow;
use rug::{Float, Rational};

pub use catalog::{catalog, check_by_id};
pub use param::{check_param_derivative, closed_derivative, eval_param, ParamFunction, ParamKind};

use crate::error::{Error, Result};
use crate::numeric::{ClosedForm, HPReal, Precision};
use crate::quadrature::{integrate, integrate_2d, Scheme};
use crate::series::{self, sum_alternating, AccelMethod, TailRoute};

pub type FormulaFn = Arc<dyn Fn(u32) -> Float + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesRecipe {
    /// σ by CRZ with enough terms for the requested precision.
    SigmaCrz,
    /// Σ (−1)^{k−1}/k summed term by term.
    Ln2Direct { terms: usize },
    /// Σ (−1)^{n−1}/n² by CRZ.
    AltInverseSquares,
}

/// How one side of a check is computed.
#[derive(Clone)]
pub enum Recipe {
    /// Quadrature of a registered integrand; 2D integrands need a tensor scheme.
    Quad {
        integrand: String,
        scheme: Scheme,
    },
    /// Σ num/den · ∫ integrand, each by the default scheme.
    QuadCombo {
        terms: Vec<(String, i64, i64)>,
    },
    Series(SeriesRecipe),
    Tail {
        n: u64,
        route: TailRoute,
    },
    /// A closed expression outside the constant basis, evaluated at `bits`.
    Formula {
        text: String,
        eval: FormulaFn,
    },
    /// A closed form obtained by exact rational manipulation of others.
    Derived(fn() -> Result<ClosedForm>),
    Closed(ClosedForm),
    /// The left-hand side of another catalog check.
    Reference(String),
    ParamValue {
        kind: ParamKind,
        alpha: Rational,
    },
    ParamDerivative {
        kind: ParamKind,
        alpha: Rational,
    },
    ParamDifference {
        kind: ParamKind,
        alpha: Rational,
    },
}

impl Recipe {
    pub fn quad(id: &str) -> Self {
        Recipe::Quad {
            integrand: id.into(),
            scheme: Scheme::default(),
        }
    }

    pub fn combo(terms: &[(&str, i64, i64)]) -> Self {
        Recipe::QuadCombo {
            terms: terms
                .iter()
                .map(|&(id, n, d)| (id.to_string(), n, d))
                .collect(),
        }
    }

    pub fn formula(text: &str, eval: impl Fn(u32) -> Float + Send + Sync + 'static) -> Self {
        Recipe::Formula {
            text: text.into(),
            eval: Arc::new(eval),
        }
    }
}

impl fmt::Debug for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Quad { integrand, scheme } => write!(f, "Quad({integrand}, {scheme:?})"),
            Recipe::QuadCombo { terms } => write!(f, "QuadCombo({terms:?})"),
            Recipe::Series(s) => write!(f, "Series({s:?})"),
            Recipe::Tail { n, route } => write!(f, "Tail({n}, {route})"),
            Recipe::Formula { text, .. } => write!(f, "Formula({text})"),
            Recipe::Derived(_) => f.write_str("Derived"),
            Recipe::Closed(cf) => write!(f, "Closed({cf})"),
            Recipe::Reference(id) => write!(f, "Reference({id})"),
            Recipe::ParamValue { kind, alpha } => write!(f, "{kind}({alpha})"),
            Recipe::ParamDerivative { kind, alpha } => write!(f, "{kind}'({alpha})"),
            Recipe::ParamDifference { kind, alpha } => write!(f, "Δ{kind}({alpha})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TolerancePolicy {
    /// 10^exponent, never below the precision floor 2^-(p-16).
    Absolute { exponent: i32 },
    /// 8 × (sum of both sides' quadrature estimates) + 2^-(p-16).
    QuadEstimate,
    /// Sum of both sides' series remainder bounds + 2^-(p-16).
    RemainderBound,
    /// 2^-⌊p/2⌋.
    HalfPrecision,
    /// Both sides must be the same rational closed form.
    Exact,
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub id: String,
    pub description: String,
    /// The identity as a formula, e.g. "A = 3/4 ln2 - pi/8".
    pub paper_ref: String,
    pub lhs: Recipe,
    pub rhs: Recipe,
    pub tolerance: TolerancePolicy,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub id: String,
    pub description: String,
    pub paper_ref: String,
    pub lhs_value: HPReal,
    pub rhs_value: HPReal,
    pub abs_error: HPReal,
    pub tolerance: HPReal,
    /// abs_error ≤ tolerance.
    pub passed: bool,
    pub evaluations: u64,
    pub elapsed_ms: u64,
}

/// A recipe's value at the working precision with its error indicator
/// (quadrature estimate or series remainder; zero when exact).
#[derive(Clone, Debug)]
struct Evaluated {
    value: Float,
    error: Float,
    evaluations: u64,
    form: Option<ClosedForm>,
}

impl Evaluated {
    fn exact(value: Float, form: Option<ClosedForm>) -> Self {
        let bits = value.prec();
        Evaluated {
            value,
            error: Float::new(bits),
            evaluations: 0,
            form,
        }
    }
}

/// Settings shared by the checks of one run, plus a cache of referenced
/// values so that route-vs-route checks reuse work.
pub struct RunContext {
    precision: Precision,
    tolerance_exponent: Option<i32>,
    references: Mutex<HashMap<String, Evaluated>>,
}

impl RunContext {
    pub fn new(precision: Precision) -> Self {
        RunContext {
            precision,
            tolerance_exponent: None,
            references: Mutex::new(HashMap::new()),
        }
    }

    /// Replaces the tolerance of every non-exact check by 10^exponent.
    pub fn with_tolerance_exponent(mut self, exponent: Option<i32>) -> Self {
        self.tolerance_exponent = exponent;
        self
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn run(&self, c: &IdentityCheck) -> Result<CheckResult> {
        let start = Instant::now();
        let p = self.precision;
        let bits = p.working();
        let lhs = self.evaluate(&c.lhs)?;
        let rhs = self.evaluate(&c.rhs)?;
        let diff = Float::with_val(bits, &lhs.value - &rhs.value).abs();

        let (abs_error, tolerance) = if c.tolerance == TolerancePolicy::Exact {
            let (Some(l), Some(r)) = (&lhs.form, &rhs.form) else {
                return Err(Error::Catalog(format!(
                    "`{}` is exact but a side has no closed form",
                    c.id
                )));
            };
            let err = if l == r {
                Float::new(bits)
            } else {
                diff.max(&p.resolution(0))
            };
            (err, Float::new(bits))
        } else {
            let tol = match self.tolerance_exponent {
                Some(e) => power_of_ten(e, bits),
                None => policy_tolerance(c.tolerance, &lhs, &rhs, p),
            };
            (diff, tol)
        };

        let abs_error = HPReal::from_float(&abs_error, p)?;
        let tolerance = HPReal::from_float(&tolerance, p)?;
        Ok(CheckResult {
            id: c.id.clone(),
            description: c.description.clone(),
            paper_ref: c.paper_ref.clone(),
            lhs_value: HPReal::from_float(&lhs.value, p)?,
            rhs_value: HPReal::from_float(&rhs.value, p)?,
            passed: abs_error <= tolerance,
            abs_error,
            tolerance,
            evaluations: lhs.evaluations + rhs.evaluations,
            elapsed_ms: start.elapsed().as_millis() as u64,
        })
    }

    fn evaluate(&self, r: &Recipe) -> Result<Evaluated> {
        let p = self.precision;
        let bits = p.working();
        Ok(match r {
            Recipe::Quad { integrand, scheme } => {
                let f = integrands::integrand(integrand)?;
                let q = if f.dimension() == 2 {
                    integrate_2d(&f, scheme, p)?
                } else {
                    integrate(&f, scheme, p)?
                };
                Evaluated {
                    value: q.value.into_float(),
                    error: q.error_estimate.into_float(),
                    evaluations: q.evaluations,
                    form: None,
                }
            }
            Recipe::QuadCombo { terms } => {
                let mut value = Float::new(bits);
                let mut error = Float::new(bits);
                let mut evaluations = 0;
                for (id, num, den) in terms {
                    let f = integrands::integrand(id)?;
                    let q = integrate(&f, &Scheme::default(), p)?;
                    let w = Float::with_val(bits, Rational::from((*num, *den)));
                    value += Float::with_val(bits, q.value.value() * &w);
                    error += Float::with_val(bits, q.error_estimate.value() * w.abs());
                    evaluations += q.evaluations;
                }
                Evaluated {
                    value,
                    error,
                    evaluations,
                    form: None,
                }
            }
            Recipe::Series(s) => {
                let (value, bound, terms) = match s {
                    SeriesRecipe::SigmaCrz => {
                        let r = series::sigma(AccelMethod::crz_for(p), p)?;
                        (r.value, r.error_bound, r.terms_used)
                    }
                    SeriesRecipe::Ln2Direct { terms } => {
                        let r = sum_alternating(
                            |n, b| Float::with_val(b, 1) / Float::with_val(b, n as u64),
                            AccelMethod::Direct { terms: *terms },
                            p,
                        )?;
                        (r.value, r.error_bound, r.terms_used)
                    }
                    SeriesRecipe::AltInverseSquares => {
                        let method = AccelMethod::crz_for(p);
                        (series::ln1pt_over_t(p), None, method.terms())
                    }
                };
                Evaluated {
                    value: value.into_float(),
                    error: bound
                        .map(HPReal::into_float)
                        .unwrap_or_else(|| Float::new(bits)),
                    evaluations: terms as u64,
                    form: None,
                }
            }
            Recipe::Tail { n, route } => {
                let t = series::tail(*n, *route, p)?;
                Evaluated {
                    value: t.value.into_float(),
                    error: t.error_bound.into_float(),
                    evaluations: t.evaluations,
                    form: None,
                }
            }
            Recipe::Formula { eval, .. } => Evaluated::exact(eval(bits), None),
            Recipe::Derived(f) => {
                let cf = f()?;
                Evaluated::exact(cf.eval_at(bits), Some(cf))
            }
            Recipe::Closed(cf) => Evaluated::exact(cf.eval_at(bits), Some(cf.clone())),
            Recipe::Reference(id) => {
                let cached = self.lock_references().get(id).cloned();
                match cached {
                    Some(v) => Evaluated {
                        evaluations: 0,
                        ..v
                    },
                    None => {
                        let target = check_by_id(id).ok_or_else(|| {
                            Error::Catalog(format!("reference to unknown check `{id}`"))
                        })?;
                        let v = self.evaluate(&target.lhs)?;
                        self.lock_references().insert(id.clone(), v.clone());
                        v
                    }
                }
            }
            Recipe::ParamValue { kind, alpha } => {
                let a = Float::with_val(bits, alpha);
                let q = param::param_quadrature(*kind, &a, p)?;
                Evaluated {
                    value: q.value.into_float(),
                    error: q.error_estimate.into_float(),
                    evaluations: q.evaluations,
                    form: None,
                }
            }
            Recipe::ParamDerivative { kind, alpha } => {
                let a = Float::with_val(bits, alpha);
                Evaluated::exact(closed_derivative(*kind, &a), None)
            }
            Recipe::ParamDifference { kind, alpha } => {
                let a = Float::with_val(bits, alpha);
                let (value, evaluations) = param::central_difference(*kind, &a, p)?;
                Evaluated {
                    evaluations,
                    ..Evaluated::exact(value, None)
                }
            }
        })
    }

    fn lock_references(&self) -> std::sync::MutexGuard<'_, HashMap<String, Evaluated>> {
        self.references.lock().unwrap_or_else(|e| e.into_inner())
    }
}

fn power_of_ten(exponent: i32, bits: u32) -> Float {
    Float::with_val(bits, 10u32).pow(exponent)
}

fn policy_tolerance(
    policy: TolerancePolicy,
    lhs: &Evaluated,
    rhs: &Evaluated,
    p: Precision,
) -> Float {
    let bits = p.working();
    let floor = p.resolution(16);
    let both = Float::with_val(bits, &lhs.error + &rhs.error);
    match policy {
        TolerancePolicy::Absolute { exponent } => power_of_ten(exponent, bits).max(&floor),
        TolerancePolicy::QuadEstimate => both * 8u32 + floor,
        TolerancePolicy::RemainderBound => both + floor,
        TolerancePolicy::HalfPrecision => {
            Float::with_val(bits, Float::i_exp(1, -((p.bits() / 2) as i32)))
        }
        TolerancePolicy::Exact => Float::new(bits),
    }
}

/// Runs one check in a fresh context.
pub fn run_check(c: &IdentityCheck, p: Precision) -> Result<CheckResult> {
    RunContext::new(p).run(c)
}
