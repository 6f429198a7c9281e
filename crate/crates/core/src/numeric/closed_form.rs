//! Exact rational combinations of the seven basis constants.

use std::collections::BTreeMap;
use std::fmt;

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use super::constants::{catalan_at, ln2_at, pi_at};
use super::{HPReal, Precision};
use crate::error::{Error, Result};

/// The constants spanning every right-hand side in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BasisConstant {
    One,
    Ln2,
    Ln2Sq,
    Pi,
    PiLn2,
    PiSq,
    Catalan,
}

impl BasisConstant {
    pub const ALL: [BasisConstant; 7] = [
        BasisConstant::One,
        BasisConstant::Ln2,
        BasisConstant::Ln2Sq,
        BasisConstant::Pi,
        BasisConstant::PiLn2,
        BasisConstant::PiSq,
        BasisConstant::Catalan,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            BasisConstant::One => "ONE",
            BasisConstant::Ln2 => "LN2",
            BasisConstant::Ln2Sq => "LN2_SQ",
            BasisConstant::Pi => "PI",
            BasisConstant::PiLn2 => "PI_LN2",
            BasisConstant::PiSq => "PI_SQ",
            BasisConstant::Catalan => "CATALAN",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|b| b.tag() == tag)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BasisConstant::One => "1",
            BasisConstant::Ln2 => "ln2",
            BasisConstant::Ln2Sq => "(ln2)^2",
            BasisConstant::Pi => "pi",
            BasisConstant::PiLn2 => "pi*ln2",
            BasisConstant::PiSq => "pi^2",
            BasisConstant::Catalan => "G",
        }
    }

    /// The slot that `ln2 * self` lands in, if it stays inside the basis.
    pub fn times_ln2(self) -> Option<Self> {
        match self {
            BasisConstant::One => Some(BasisConstant::Ln2),
            BasisConstant::Ln2 => Some(BasisConstant::Ln2Sq),
            BasisConstant::Pi => Some(BasisConstant::PiLn2),
            _ => None,
        }
    }

    /// Value at `bits` bits of mantissa.
    pub(crate) fn value_at(self, bits: u32) -> Float {
        let inner = bits + 8;
        let v = match self {
            BasisConstant::One => Float::with_val(inner, 1),
            BasisConstant::Ln2 => ln2_at(inner),
            BasisConstant::Ln2Sq => ln2_at(inner).square(),
            BasisConstant::Pi => pi_at(inner),
            BasisConstant::PiLn2 => pi_at(inner) * ln2_at(inner),
            BasisConstant::PiSq => pi_at(inner).square(),
            BasisConstant::Catalan => catalan_at(inner),
        };
        Float::with_val(bits, v)
    }
}

/// Σ coefficient(b)·b over the basis, with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is value
/// equality of the formal combination.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosedForm {
    terms: BTreeMap<BasisConstant, Rational>,
}

impl ClosedForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `num/den · basis`.
    pub fn term(basis: BasisConstant, num: i64, den: i64) -> Self {
        Self::zero().with(basis, num, den)
    }

    /// Adds `num/den · basis` to this form.
    pub fn with(mut self, basis: BasisConstant, num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        self.add_term(basis, Rational::from((num, den)));
        self
    }

    pub fn from_terms(terms: &[(BasisConstant, i64, i64)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(), |cf, &(b, n, d)| cf.with(b, n, d))
    }

    fn add_term(&mut self, basis: BasisConstant, coeff: Rational) {
        let slot = self.terms.entry(basis).or_default();
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&basis);
        }
    }

    pub fn coefficient(&self, basis: BasisConstant) -> Rational {
        self.terms.get(&basis).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisConstant, &Rational)> {
        self.terms.iter().map(|(b, r)| (*b, r))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ClosedForm) -> ClosedForm {
        let mut out = self.clone();
        for (b, r) in other.terms() {
            out.add_term(b, r.clone());
        }
        out
    }

    pub fn sub(&self, other: &ClosedForm) -> ClosedForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ClosedForm {
        self.scale(&Rational::from(-1))
    }

    pub fn scale(&self, r: &Rational) -> ClosedForm {
        let mut out = ClosedForm::zero();
        if *r == 0 {
            return out;
        }
        for (b, c) in self.terms() {
            out.terms.insert(b, Rational::from(c * r));
        }
        out
    }

    pub fn scale_ratio(&self, num: i64, den: i64) -> ClosedForm {
        self.scale(&Rational::from((num, den)))
    }

    /// Multiplies by ln 2 by moving every coefficient to its product slot.
    /// Fails if some slot has no image in the basis.
    pub fn times_ln2(&self) -> Result<ClosedForm> {
        let mut out = ClosedForm::zero();
        for (b, c) in self.terms() {
            let target = b.times_ln2().ok_or_else(|| {
                Error::Basis(format!("ln2 * {} is not a basis constant", b.symbol()))
            })?;
            out.add_term(target, c.clone());
        }
        Ok(out)
    }

    pub(crate) fn eval_at(&self, bits: u32) -> Float {
        let mut acc = Float::new(bits);
        for (b, c) in self.terms() {
            let v = b.value_at(bits);
            acc += v * Float::with_val(bits, c);
        }
        acc
    }

    pub fn eval(&self, p: Precision) -> HPReal {
        HPReal::from_float(&self.eval_at(p.working()), p).expect("closed forms are finite")
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms().enumerate() {
            let negative = *c < 0;
            let mag = Rational::from(c.abs_ref());
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if b == BasisConstant::One {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                f.write_str(b.symbol())?;
            } else {
                write!(f, "{mag}*{}", b.symbol())?;
            }
        }
        Ok(())
    }
}

pub fn eval_closed_form(cf: &ClosedForm, p: Precision) -> HPReal {
    cf.eval(p)
}

pub fn cf_add(a: &ClosedForm, b: &ClosedForm) -> ClosedForm {
    a.add(b)
}

pub fn cf_scale(a: &ClosedForm, r: &Rational) -> ClosedForm {
    a.scale(r)
}

#[cfg(test)]
mod tests {
    use super::BasisConstant::*;
    use super::*;

    fn p256() -> Precision {
        Precision::new(256).unwrap()
    }

    #[test]
    fn one_evaluates_to_one() {
        let v = ClosedForm::term(One, 1, 1).eval(p256());
        assert_eq!(*v.value(), 1);
    }

    #[test]
    fn coefficients_are_reduced() {
        let cf = ClosedForm::term(Pi, 6, -8);
        assert_eq!(cf.coefficient(Pi), Rational::from((-3, 4)));
        assert_eq!(*cf.coefficient(Pi).denom(), 4);
    }

    #[test]
    fn zero_identities() {
        let x = ClosedForm::from_terms(&[(Catalan, 1, 2), (PiSq, -1, 48)]);
        assert_eq!(cf_add(&x, &ClosedForm::zero()), x);
        assert!(cf_scale(&x, &Rational::new()).is_zero());
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn sigma_form_value() {
        let cf = ClosedForm::from_terms(&[
            (Catalan, 1, 2),
            (PiSq, 1, 48),
            (Ln2Sq, -7, 8),
            (PiLn2, -1, 8),
        ]);
        assert!(cf
            .eval(p256())
            .to_decimal()
            .starts_with("-0.02899509302173870080"));
        let i3 = ClosedForm::term(PiLn2, 1, 8);
        assert!(i3
            .eval(p256())
            .to_decimal()
            .starts_with("0.27219826128795026631"));
    }

    #[test]
    fn ln2_composition_map() {
        let a = ClosedForm::from_terms(&[(One, 2, 1), (Ln2, 3, 4), (Pi, -1, 8)]);
        let shifted = a.times_ln2().unwrap();
        assert_eq!(
            shifted,
            ClosedForm::from_terms(&[(Ln2, 2, 1), (Ln2Sq, 3, 4), (PiLn2, -1, 8)])
        );
        for b in [Ln2Sq, PiLn2, PiSq, Catalan] {
            assert!(matches!(
                ClosedForm::term(b, 1, 1).times_ln2(),
                Err(Error::Basis(_))
            ));
        }
    }

    #[test]
    fn display_is_readable() {
        let cf = ClosedForm::from_terms(&[(Ln2, 3, 4), (Pi, -1, 8)]);
        assert_eq!(cf.to_string(), "3/4*ln2 - 1/8*pi");
        assert_eq!(ClosedForm::term(One, -2, 1).to_string(), "-2");
    }

    #[test]
    fn tags_round_trip() {
        for b in BasisConstant::ALL {
            assert_eq!(BasisConstant::from_tag(b.tag()), Some(b));
        }
    }
}
