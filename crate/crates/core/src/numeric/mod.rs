//! Extended-precision reals, the fundamental constants, and closed forms over
//! the seven-constant basis.
//!
//! Every operation takes a [`Precision`] `p` and computes internally at
//! `p + GUARD_BITS` bits before rounding the result to `p` bits. Values that
//! cross a module boundary are [`HPReal`]s, which are always finite.

use std::fmt;

use rug::float::Round;
use rug::Float;

use crate::error::{Error, Result};

pub mod closed_form;
pub mod constants;

pub use closed_form::{cf_add, cf_scale, eval_closed_form, BasisConstant, ClosedForm};
pub use constants::{const_catalan, const_ln2, const_pi};

/// Extra bits carried by every internal computation.
pub const GUARD_BITS: u32 = 32;

/// Smallest working mantissa accepted anywhere in the crate.
pub const MIN_PRECISION_BITS: u32 = 64;

/// Working mantissa size in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision(u32);

impl Precision {
    pub fn new(bits: u32) -> Result<Self> {
        if bits < MIN_PRECISION_BITS {
            return Err(Error::InvalidPrecision(bits));
        }
        Ok(Precision(bits))
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// Mantissa size used for internal computation.
    pub const fn working(self) -> u32 {
        self.0 + GUARD_BITS
    }

    pub const fn doubled(self) -> Self {
        Precision(self.0 * 2)
    }

    /// Significant decimal digits needed for a binary -> decimal -> binary
    /// round trip at this precision.
    pub fn decimal_digits(self) -> usize {
        (f64::from(self.0) * std::f64::consts::LOG10_2).ceil() as usize + 1
    }

    /// `2^-(bits - slack)`, the absolute resolution used as a noise floor.
    pub fn resolution(self, slack: u32) -> Float {
        let exp = -(self.0 as i32) + slack as i32;
        Float::with_val(self.working(), Float::i_exp(1, exp))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(256)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

/// A finite real number rounded to a known precision.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct HPReal {
    value: Float,
    precision: Precision,
}

impl HPReal {
    /// Rounds `value` (to nearest) to `p` bits.
    pub fn from_float(value: &Float, p: Precision) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite(value.to_string()));
        }
        Ok(HPReal {
            value: Float::with_val_round(p.bits(), value, Round::Nearest).0,
            precision: p,
        })
    }

    pub fn zero(p: Precision) -> Self {
        HPReal {
            value: Float::new(p.bits()),
            precision: p,
        }
    }

    pub fn from_i64(v: i64, p: Precision) -> Self {
        HPReal {
            value: Float::with_val(p.bits(), v),
            precision: p,
        }
    }

    /// Parses a decimal string as produced by [`HPReal::to_decimal`].
    pub fn parse_decimal(s: &str, p: Precision) -> Result<Self> {
        let parsed = Float::parse(s).map_err(|e| Error::InvalidArgument(format!("`{s}`: {e}")))?;
        let value = Float::with_val(p.bits(), parsed);
        Self::from_float(&value, p)
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn into_float(self) -> Float {
        self.value
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// `|self - other|` at the larger of the two precisions.
    pub fn abs_diff(&self, other: &HPReal) -> HPReal {
        let p = self.precision.max(other.precision);
        let d = Float::with_val(p.working(), &self.value - &other.value).abs();
        HPReal {
            value: Float::with_val(p.bits(), d),
            precision: p,
        }
    }

    /// Unit in the last place of this value at its precision (for zero, the
    /// ulp of one).
    pub fn ulp(&self) -> Float {
        let exp = self.value.get_exp().unwrap_or(1);
        Float::with_val(
            self.precision.bits(),
            Float::i_exp(1, exp - self.precision.bits() as i32),
        )
    }

    /// Rounds to a lower precision; rounding never adds more than half an ulp
    /// of the target precision.
    pub fn round_to(&self, p: Precision) -> HPReal {
        HPReal {
            value: Float::with_val(p.bits(), &self.value),
            precision: p,
        }
    }

    /// Decimal rendering with as many significant digits as the binary
    /// precision carries. Moderate magnitudes are printed positionally, very
    /// large or small ones in `d.ddde-N` notation.
    pub fn to_decimal(&self) -> String {
        format_decimal(&self.value, self.precision.decimal_digits())
    }
}

impl fmt::Display for HPReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

pub(crate) fn format_decimal(value: &Float, digits: usize) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let (negative, mantissa, exp) = value.to_sign_string_exp(10, Some(digits));
    // value = 0.<mantissa> * 10^exp
    let exp = exp.unwrap_or(0);
    let sign = if negative { "-" } else { "" };
    let len = mantissa.len() as i32;
    let body = if (-20..=0).contains(&exp) {
        format!("0.{}{}", "0".repeat((-exp) as usize), mantissa)
    } else if exp > 0 && exp < len {
        let (int, frac) = mantissa.split_at(exp as usize);
        format!("{int}.{frac}")
    } else if exp >= len && exp <= 40 {
        format!("{}{}", mantissa, "0".repeat((exp - len) as usize))
    } else {
        let (first, rest) = mantissa.split_at(1);
        format!("{first}.{rest}e{}", exp - 1)
    };
    format!("{sign}{body}")
}
