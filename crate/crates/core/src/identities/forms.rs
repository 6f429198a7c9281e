//! Right-hand sides of the identities, as exact rational combinations of the
//! basis constants.

use crate::numeric::{BasisConstant::*, ClosedForm};

/// σ = G/2 + π²/48 − 7/8 (ln2)² − π/8 ln2.
pub fn sigma() -> ClosedForm {
    ClosedForm::from_terms(&[
        (Catalan, 1, 2),
        (PiSq, 1, 48),
        (Ln2Sq, -7, 8),
        (PiLn2, -1, 8),
    ])
}

/// A = ∫₀¹ x²/((1+x²)(1+x)) dx.
pub fn a() -> ClosedForm {
    ClosedForm::from_terms(&[(Ln2, 3, 4), (Pi, -1, 8)])
}

/// B = ∫₀¹ ln(1+x²)/((1+x²)(1+x)) dx.
pub fn b() -> ClosedForm {
    ClosedForm::from_terms(&[
        (Ln2Sq, 1, 4),
        (PiSq, -1, 96),
        (PiLn2, 1, 4),
        (Catalan, -1, 2),
    ])
}

/// C = −∫₀¹ x arctan x/((1+x²)(1+x)) dx.
pub fn c() -> ClosedForm {
    ClosedForm::from_terms(&[(PiLn2, 1, 8), (PiSq, -1, 64), (Catalan, -1, 4)])
}

/// ∫₀¹ ln(1+x²)/(1+x²) dx.
pub fn i1() -> ClosedForm {
    ClosedForm::from_terms(&[(PiLn2, 1, 2), (Catalan, -1, 1)])
}

/// ∫₀¹ ln(1+x²)/(1+x) dx.
pub fn i2() -> ClosedForm {
    ClosedForm::from_terms(&[(Ln2Sq, 3, 4), (PiSq, -1, 48)])
}

/// ∫₀¹ arctan x/(1+x) dx.
pub fn i3() -> ClosedForm {
    ClosedForm::term(PiLn2, 1, 8)
}

/// ∫₀¹ x ln(1+x²)/(1+x²) dx.
pub fn x_log_over_quadratic() -> ClosedForm {
    ClosedForm::term(Ln2Sq, 1, 4)
}

/// ∫₀¹ arctan x/(1+x²) dx.
pub fn atan_over_quadratic() -> ClosedForm {
    ClosedForm::term(PiSq, 1, 32)
}

/// ∫₀¹ x arctan x/(1+x²) dx.
pub fn x_atan_over_quadratic() -> ClosedForm {
    ClosedForm::from_terms(&[(Catalan, 1, 2), (PiLn2, -1, 8)])
}

/// ∫₀^{π/2} ln sin θ dθ.
pub fn log_sine() -> ClosedForm {
    ClosedForm::term(PiLn2, -1, 2)
}

pub fn catalan() -> ClosedForm {
    ClosedForm::term(Catalan, 1, 1)
}

pub fn ln2() -> ClosedForm {
    ClosedForm::term(Ln2, 1, 1)
}

/// Σ (−1)^{n−1}/n².
pub fn alt_inverse_squares() -> ClosedForm {
    ClosedForm::term(PiSq, 1, 12)
}

/// ∫₀¹ ln(1+t)/(1+t) dt.
pub fn log_over_one_plus() -> ClosedForm {
    ClosedForm::term(Ln2Sq, 1, 2)
}

/// A ln2 + B/2 + C, which must equal −σ.
pub fn assembly() -> crate::Result<ClosedForm> {
    Ok(a().times_ln2()?.add(&b().scale_ratio(1, 2)).add(&c()))
}

/// B from its three-integral split: ½(I₂ + I₁ − ∫ x ln(1+x²)/(1+x²)).
pub fn b_from_split() -> crate::Result<ClosedForm> {
    Ok(i2()
        .add(&i1())
        .sub(&x_log_over_quadratic())
        .scale_ratio(1, 2))
}

/// ∫ x arctan x/(1+x²) after integration by parts: π/8 ln2 − I₁/2.
pub fn x_atan_by_parts() -> crate::Result<ClosedForm> {
    Ok(ClosedForm::term(PiLn2, 1, 8).sub(&i1().scale_ratio(1, 2)))
}

/// C from its three-integral split: ½(I₃ − ∫ x arctan x/(1+x²) − ∫ arctan x/(1+x²)).
pub fn c_from_split() -> crate::Result<ClosedForm> {
    Ok(i3()
        .sub(&x_atan_over_quadratic())
        .sub(&atan_over_quadratic())
        .scale_ratio(1, 2))
}

/// I₁ + G = π ln2/4 − S/2 with S the log-sine integral, so I₁ follows.
pub fn i1_from_log_sine() -> crate::Result<ClosedForm> {
    Ok(ClosedForm::term(PiLn2, 1, 4)
        .sub(&log_sine().scale_ratio(1, 2))
        .sub(&catalan()))
}

/// I₂ = ln2·∫2α/(1+α²) + ½∫ln(1+t)/t − ½∫ln(1+t)/(1+t) − ∫2 arctan α/(1+α²).
pub fn i2_from_parameter() -> crate::Result<ClosedForm> {
    let first = ln2().times_ln2()?;
    let atan_term = atan_over_quadratic().scale_ratio(2, 1);
    Ok(first
        .add(&alt_inverse_squares().scale_ratio(1, 2))
        .sub(&log_over_one_plus().scale_ratio(1, 2))
        .sub(&atan_term))
}

/// H(1) = −π/4 ln2 + ½ I₁ + G − ∫ α arctan α/(1+α²), with the last integral
/// taken by parts.
pub fn i3_from_parameter() -> crate::Result<ClosedForm> {
    Ok(ClosedForm::term(PiLn2, -1, 4)
        .add(&i1().scale_ratio(1, 2))
        .add(&catalan())
        .sub(&x_atan_by_parts()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivations_close_exactly() {
        assert_eq!(assembly().unwrap(), sigma().neg());
        assert_eq!(b_from_split().unwrap(), b());
        assert_eq!(x_atan_by_parts().unwrap(), x_atan_over_quadratic());
        assert_eq!(c_from_split().unwrap(), c());
        assert_eq!(i1_from_log_sine().unwrap(), i1());
        assert_eq!(i2_from_parameter().unwrap(), i2());
        assert_eq!(i3_from_parameter().unwrap(), i3());
    }
}
