//! Deterministic 1D and tensor-product 2D quadrature.
//!
//! Tanh-sinh is the workhorse: it tolerates integrable endpoint singularities
//! (ln x, ln sin θ) as long as the integrand is flagged as singular there.
//! Gauss-Legendre is available for smooth integrands and refuses flagged ones.

mod gauss_legendre;
mod tanh_sinh;

use std::fmt;
use std::sync::Arc;

use rug::Float;

pub use gauss_legendre::gauss_legendre_nodes;
pub use tanh_sinh::{tanh_sinh_levels, tanh_sinh_nodes};

use crate::error::{Error, Result};
use crate::numeric::{BasisConstant, ClosedForm, HPReal, Precision};

pub type Eval1 = Arc<dyn Fn(&Float) -> Float + Send + Sync>;
pub type Eval2 = Arc<dyn Fn(&Float, &Float) -> Float + Send + Sync>;

#[derive(Clone)]
pub enum Evaluator {
    OneD(Eval1),
    TwoD(Eval2),
}

/// A named integrand on an interval (or the square over that interval).
///
/// The evaluator receives points at the working precision and must return a
/// value at the same precision. Endpoints are closed forms so that domains
/// like [0, π/2] are exact up to the working precision.
#[derive(Clone)]
pub struct Integrand {
    id: String,
    evaluator: Evaluator,
    lower: ClosedForm,
    upper: ClosedForm,
    singular_left: bool,
    singular_right: bool,
}

impl Integrand {
    pub fn new_1d<F>(id: impl Into<String>, lower: ClosedForm, upper: ClosedForm, f: F) -> Self
    where
        F: Fn(&Float) -> Float + Send + Sync + 'static,
    {
        Integrand {
            id: id.into(),
            evaluator: Evaluator::OneD(Arc::new(f)),
            lower,
            upper,
            singular_left: false,
            singular_right: false,
        }
    }

    /// An integrand on [0, 1].
    pub fn unit_1d<F>(id: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Float) -> Float + Send + Sync + 'static,
    {
        Self::new_1d(id, ClosedForm::zero(), unit(), f)
    }

    /// An integrand on [0, 1]².
    pub fn unit_square<F>(id: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Float, &Float) -> Float + Send + Sync + 'static,
    {
        Integrand {
            id: id.into(),
            evaluator: Evaluator::TwoD(Arc::new(f)),
            lower: ClosedForm::zero(),
            upper: unit(),
            singular_left: false,
            singular_right: false,
        }
    }

    pub fn singular_left(mut self) -> Self {
        self.singular_left = true;
        self
    }

    pub fn singular_right(mut self) -> Self {
        self.singular_right = true;
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dimension(&self) -> u8 {
        match self.evaluator {
            Evaluator::OneD(_) => 1,
            Evaluator::TwoD(_) => 2,
        }
    }

    pub fn bounds(&self) -> (&ClosedForm, &ClosedForm) {
        (&self.lower, &self.upper)
    }

    pub fn is_singular(&self) -> (bool, bool) {
        (self.singular_left, self.singular_right)
    }

    pub fn eval_1d(&self, x: &Float) -> Result<Float> {
        match &self.evaluator {
            Evaluator::OneD(f) => Ok(f(x)),
            Evaluator::TwoD(_) => Err(dimension_error(self, 1)),
        }
    }

    pub fn eval_2d(&self, x: &Float, y: &Float) -> Result<Float> {
        match &self.evaluator {
            Evaluator::TwoD(f) => Ok(f(x, y)),
            Evaluator::OneD(_) => Err(dimension_error(self, 2)),
        }
    }

    fn bounds_at(&self, bits: u32) -> (Float, Float) {
        (self.lower.eval_at(bits), self.upper.eval_at(bits))
    }
}

impl fmt::Debug for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Integrand")
            .field("id", &self.id)
            .field("dimension", &self.dimension())
            .field("lower", &self.lower.to_string())
            .field("upper", &self.upper.to_string())
            .field("singular_left", &self.singular_left)
            .field("singular_right", &self.singular_right)
            .finish()
    }
}

fn unit() -> ClosedForm {
    ClosedForm::term(BasisConstant::One, 1, 1)
}

fn dimension_error(f: &Integrand, wanted: u8) -> Error {
    Error::InvalidScheme(format!(
        "integrand `{}` has dimension {}, scheme expects {}",
        f.id,
        f.dimension(),
        wanted
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scheme {
    TanhSinh { max_level: u32 },
    GaussLegendre { order: u32 },
    Tensor2d { inner: Box<Scheme> },
}

impl Default for Scheme {
    fn default() -> Self {
        Scheme::TanhSinh { max_level: 12 }
    }
}

impl Scheme {
    pub fn tensor(inner: Scheme) -> Self {
        Scheme::Tensor2d {
            inner: Box::new(inner),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Scheme::TanhSinh { max_level } if !(3..=15).contains(max_level) => Err(
                Error::InvalidScheme(format!("tanh-sinh max_level {max_level} outside [3, 15]")),
            ),
            Scheme::GaussLegendre { order } if !(2..=4096).contains(order) => Err(
                Error::InvalidScheme(format!("Gauss-Legendre order {order} outside [2, 4096]")),
            ),
            Scheme::Tensor2d { inner } => match **inner {
                Scheme::Tensor2d { .. } => {
                    Err(Error::InvalidScheme("nested tensor schemes".into()))
                }
                ref s => s.validate(),
            },
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadResult {
    pub value: HPReal,
    /// |T_k - T_{k-1}| between the last two levels (or orders).
    pub error_estimate: HPReal,
    pub evaluations: u64,
    pub level_or_order: u32,
}

pub fn integrate(f: &Integrand, s: &Scheme, p: Precision) -> Result<QuadResult> {
    s.validate()?;
    if f.dimension() != 1 {
        return Err(dimension_error(f, 1));
    }
    match s {
        Scheme::TanhSinh { max_level } => tanh_sinh::integrate_1d(f, *max_level, p),
        Scheme::GaussLegendre { order } => {
            refuse_singular(f)?;
            gauss_legendre::integrate_1d(f, *order, p)
        }
        Scheme::Tensor2d { .. } => Err(Error::InvalidScheme(
            "tensor scheme requires a 2D integrand".into(),
        )),
    }
}

pub fn integrate_2d(f: &Integrand, s: &Scheme, p: Precision) -> Result<QuadResult> {
    s.validate()?;
    if f.dimension() != 2 {
        return Err(dimension_error(f, 2));
    }
    match s {
        Scheme::Tensor2d { inner } => match **inner {
            Scheme::TanhSinh { max_level } => tanh_sinh::integrate_2d(f, max_level, p),
            Scheme::GaussLegendre { order } => {
                refuse_singular(f)?;
                gauss_legendre::integrate_2d(f, order, p)
            }
            Scheme::Tensor2d { .. } => unreachable!("rejected by validate"),
        },
        _ => Err(Error::InvalidScheme(
            "2D integration needs a tensor scheme".into(),
        )),
    }
}

fn refuse_singular(f: &Integrand) -> Result<()> {
    if f.singular_left || f.singular_right {
        return Err(Error::InvalidScheme(format!(
            "Gauss-Legendre refuses `{}`: it has a flagged endpoint singularity",
            f.id
        )));
    }
    Ok(())
}

/// `2^-bits`-relative convergence target for a value of magnitude `v`.
fn target(v: &Float, p: Precision) -> Float {
    let one = Float::with_val(p.working(), 1);
    let scale = if v.clone().abs() > one {
        v.clone().abs()
    } else {
        one
    };
    scale * p.resolution(0)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
    Interior,
}

/// Evaluates `f` at `x`. Non-finite values next to a flagged endpoint are
/// dropped (the abscissa has collapsed onto the endpoint); elsewhere they are
/// a domain error.
fn eval_point(f: &Integrand, x: &Float, side: Side) -> Result<Option<Float>> {
    let v = f.eval_1d(x)?;
    if v.is_finite() {
        return Ok(Some(v));
    }
    let tolerated = match side {
        Side::Left => f.singular_left,
        Side::Right => f.singular_right,
        Side::Interior => false,
    };
    if tolerated {
        Ok(None)
    } else {
        Err(Error::Domain {
            id: f.id.clone(),
            point: x.to_string_radix(10, Some(20)),
        })
    }
}

fn finish(
    value: Float,
    estimate: Float,
    evaluations: u64,
    level: u32,
    p: Precision,
) -> Result<QuadResult> {
    Ok(QuadResult {
        value: HPReal::from_float(&value, p)?,
        error_estimate: HPReal::from_float(&estimate.abs(), p)?,
        evaluations,
        level_or_order: level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn one() -> Integrand {
        Integrand::unit_1d("one", |x: &Float| Float::with_val(x.prec(), 1))
    }

    #[test]
    fn constant_integrand_all_schemes() {
        for s in [Scheme::default(), Scheme::GaussLegendre { order: 8 }] {
            let r = integrate(&one(), &s, p(128)).unwrap();
            let err = Float::with_val(200, r.value.value() - 1u32).abs();
            assert!(err < Float::with_val(64, Float::i_exp(1, -120)), "{s:?}");
            assert!(*r.error_estimate.value() < Float::with_val(64, Float::i_exp(1, -120)));
            assert!(r.evaluations > 0);
        }
    }

    #[test]
    fn x_squared_over_one_plus_x() {
        // antiderivative x²/2 - x + ln(1+x)  ->  ln 2 - 1/2 on [0, 1]
        let f = Integrand::unit_1d("tail1", |x: &Float| {
            Float::with_val(x.prec(), x.square_ref()) / (Float::with_val(x.prec(), 1) + x)
        });
        let r = integrate(&f, &Scheme::default(), p(256)).unwrap();
        let exact = Float::with_val(300, rug::float::Constant::Log2) - 0.5f64;
        let err = Float::with_val(300, r.value.value() - &exact).abs();
        assert!(err < Float::with_val(64, Float::i_exp(1, -250)));
        assert!(r.value.to_decimal().starts_with("0.1931471805599453094172"));
    }

    #[test]
    fn log_sine_with_left_singularity() {
        let f = Integrand::new_1d(
            "logsine",
            ClosedForm::zero(),
            ClosedForm::term(BasisConstant::Pi, 1, 2),
            |t: &Float| Float::with_val(t.prec(), t.sin_ref()).ln(),
        )
        .singular_left();
        let r = integrate(&f, &Scheme::default(), p(256)).unwrap();
        assert!(r.value.to_decimal().starts_with("-1.08879304515180106525"));
        assert!(matches!(
            integrate(&f, &Scheme::GaussLegendre { order: 16 }, p(128)),
            Err(Error::InvalidScheme(_))
        ));
    }

    #[test]
    fn unflagged_pole_is_domain_error() {
        let f = Integrand::new_1d(
            "pole",
            ClosedForm::term(BasisConstant::One, -1, 1),
            ClosedForm::term(BasisConstant::One, 1, 1),
            |x: &Float| Float::with_val(x.prec(), 1) / x,
        );
        // the midpoint 0 is a tanh-sinh node
        assert!(matches!(
            integrate(&f, &Scheme::default(), p(64)),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn nonconvergence_reported() {
        // |x - 1/3| has a kink in the interior; tanh-sinh cannot reach 2^-256 by level 3
        let f = Integrand::unit_1d("kink", |x: &Float| {
            Float::with_val(x.prec(), x - Float::with_val(x.prec(), 1) / 3u32).abs()
        });
        assert!(matches!(
            integrate(&f, &Scheme::TanhSinh { max_level: 3 }, p(256)),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn scheme_validation() {
        assert!(Scheme::TanhSinh { max_level: 2 }.validate().is_err());
        assert!(Scheme::TanhSinh { max_level: 16 }.validate().is_err());
        assert!(Scheme::GaussLegendre { order: 1 }.validate().is_err());
        assert!(Scheme::GaussLegendre { order: 4097 }.validate().is_err());
        assert!(Scheme::tensor(Scheme::tensor(Scheme::default()))
            .validate()
            .is_err());
        assert!(integrate(&one(), &Scheme::tensor(Scheme::default()), p(64)).is_err());
        assert!(integrate_2d(&one(), &Scheme::tensor(Scheme::default()), p(64)).is_err());
    }

    #[test]
    fn square_integrals() {
        let one2 =
            Integrand::unit_square("one2", |x: &Float, _: &Float| Float::with_val(x.prec(), 1));
        let xy = Integrand::unit_square("xy", |x: &Float, y: &Float| {
            Float::with_val(x.prec(), x * y)
        });
        for s in [
            Scheme::tensor(Scheme::GaussLegendre { order: 8 }),
            Scheme::tensor(Scheme::TanhSinh { max_level: 8 }),
        ] {
            let a = integrate_2d(&one2, &s, p(128)).unwrap();
            let b = integrate_2d(&xy, &s, p(128)).unwrap();
            let ea = Float::with_val(200, a.value.value() - 1u32).abs();
            let eb = Float::with_val(200, b.value.value() - 0.25f64).abs();
            assert!(
                ea < 1e-36 && eb < 1e-36,
                "{s:?}: {} {}",
                ea.to_f64(),
                eb.to_f64()
            );
        }
    }
}
