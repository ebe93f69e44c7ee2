//! Chebyshev-style bounds for the prime counting function from a two-valued
//! step function.
//!
//! Let `f(x) = Σ c_k ⌊x/m_k⌋` be bounded and two-valued, with first jump at
//! `s = min m_k` (to the value 1) and first return to 0 at `λ > s`. Summing
//! `Λ(n) f(x/n)` over `n` gives `Σ c_k log(⌊x/m_k⌋!) = A x + O(log x)` with
//! `A = −Σ c_k log(m_k)/m_k` (Stirling, using `Σ c_k/m_k = 0`). Since
//! `f(x/n) ∈ {0, 1}` vanishes for `n > x/s` and equals 1 for
//! `x/λ < n ≤ x/s`:
//!
//! ```text
//! ψ(y) − ψ(y s/λ) ≤ A s y + O(log y) ≤ ψ(y)
//! ```
//!
//! so `c1 = A s` and, iterating the left inequality, `c2 = A s λ / (λ − s)`.
//! For Chebyshev's function `s = 1`, `λ = 6`.

use serde::Serialize;

use crate::classify::is_two_valued;
use crate::error::{Error, Result};
use crate::step::StepFunction;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChebyshevBounds {
    /// `−Σ c_k log(m_k)/m_k`.
    pub a: f64,
    /// First jump point `s`, the smallest modulus.
    pub plateau_start: u64,
    pub lambda: u64,
    pub c1: f64,
    pub c2: f64,
}

/// `A = −Σ c_k log(m_k)/m_k`.
pub fn constant_a(s: &StepFunction) -> Result<f64> {
    if !s.is_bounded() {
        return Err(Error::UnboundedStep);
    }
    Ok(weighted_log_sum(s).0)
}

/// Sum of `−c_k ln(m_k)/m_k` with an error bound. Each term is within a couple
/// of ulps of its true value and the summation adds at most one more per term.
fn weighted_log_sum(s: &StepFunction) -> (f64, f64) {
    let mut sum = 0.0f64;
    let mut err = 0.0f64;
    for &(m, sign) in s.terms() {
        let t = -(sign.coefficient() as f64) * (m as f64).ln() / m as f64;
        sum += t;
        err += 4.0 * f64::EPSILON * (t.abs() + sum.abs());
    }
    (sum, err)
}

/// `[lo, hi]` containing the exact `c1 = A s`.
pub fn c1_enclosure(s: &StepFunction) -> Result<(f64, f64)> {
    let b = bounds(s)?;
    let (_, err) = weighted_log_sum(s);
    let e = err * b.plateau_start as f64 + 4.0 * f64::EPSILON * b.c1.abs();
    Ok((b.c1 - e, b.c1 + e))
}

/// `[lo, hi]` containing the exact `c2`.
pub fn c2_enclosure(s: &StepFunction) -> Result<(f64, f64)> {
    let b = bounds(s)?;
    let (_, err) = weighted_log_sum(s);
    let factor = b.plateau_start as f64 * b.lambda as f64 / (b.lambda - b.plateau_start) as f64;
    let e = err * factor + 8.0 * f64::EPSILON * b.c2.abs();
    Ok((b.c2 - e, b.c2 + e))
}

fn smallest_modulus(s: &StepFunction) -> u64 {
    s.terms()
        .iter()
        .map(|t| t.0)
        .min()
        .expect("step functions are nonempty")
}

/// Smallest jump point `x > s` with `f(x) = 0`, where `s` is the smallest
/// modulus and `f(s)` must be 1.
pub fn lambda_threshold(s: &StepFunction) -> Result<u64> {
    if !is_two_valued(s)? {
        return Err(Error::NotTwoValued);
    }
    let start = smallest_modulus(s);
    if s.value_at(start) != 1 {
        return Err(Error::NoInitialPlateau);
    }
    // f(period) = f(0) = 0, so the scan always terminates
    Ok(s.jump_points()
        .into_iter()
        .find(|&x| x > start && s.value_at(x) == 0)
        .expect("bounded step functions return to zero within a period"))
}

pub fn bounds(s: &StepFunction) -> Result<ChebyshevBounds> {
    let a = constant_a(s)?;
    let lambda = lambda_threshold(s)?;
    let start = smallest_modulus(s);
    let c1 = a * start as f64;
    let c2 = c1 * lambda as f64 / (lambda - start) as f64;
    Ok(ChebyshevBounds {
        a,
        plateau_start: start,
        lambda,
        c1,
        c2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::phi_map;
    use crate::ratio::normalize;

    fn chebyshev() -> StepFunction {
        StepFunction::from_moduli(&[1, 30], &[2, 3, 5]).unwrap()
    }

    #[test]
    fn chebyshev_constants() {
        let ln = f64::ln;
        let closed = ln(2.0) / 2.0 + ln(3.0) / 3.0 + ln(5.0) / 5.0 - ln(30.0) / 30.0;
        let b = bounds(&chebyshev()).unwrap();
        assert!((b.a - closed).abs() < 1e-14);
        assert!((b.a - 0.921292).abs() < 1e-6);
        assert_eq!(b.lambda, 6);
        assert!((b.c2 - 6.0 * closed / 5.0).abs() < 1e-14);
        assert!((b.c2 - 1.105551).abs() < 1e-6);
        let (lo, hi) = c1_enclosure(&chebyshev()).unwrap();
        assert!(lo <= closed && closed <= hi && hi - lo < 1e-13);
    }

    #[test]
    fn binomial_constants() {
        let s = StepFunction::from_moduli(&[1], &[2, 2]).unwrap();
        assert_eq!(s, phi_map(&normalize(&[2], &[1, 1]).unwrap()));
        let b = bounds(&s).unwrap();
        assert!((b.a - 2f64.ln()).abs() < 1e-15);
        assert_eq!(b.lambda, 2);
        assert!((b.c2 - 2.0 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        let unbounded = StepFunction::from_moduli(&[1], &[]).unwrap();
        assert_eq!(constant_a(&unbounded), Err(Error::UnboundedStep));
        // first jump goes to -1
        let negative = StepFunction::from_moduli(&[2, 2], &[1]).unwrap();
        assert_eq!(lambda_threshold(&negative), Err(Error::NotTwoValued));
        // smallest modulus doubled: f jumps straight to 2
        let double = phi_map(&normalize(&[2, 2], &[1, 1, 1, 1]).unwrap());
        assert_eq!(lambda_threshold(&double), Err(Error::NotTwoValued));
    }

    #[test]
    fn scaling_moduli_leaves_constants_unchanged() {
        let s = StepFunction::from_moduli(&[7, 210], &[14, 21, 35]).unwrap();
        let b = bounds(&s).unwrap();
        let c = bounds(&chebyshev()).unwrap();
        assert_eq!((b.plateau_start, b.lambda), (7, 42));
        assert!((b.c1 - c.c1).abs() < 1e-13);
        assert!((b.c2 - c.c2).abs() < 1e-13);
    }

    #[test]
    fn non_unit_plateau() {
        // binomial (5 choose 2): moduli 6 | 10, 15; f(6) = 1
        let s = phi_map(&normalize(&[5], &[3, 2]).unwrap());
        assert_eq!(s.plus(), vec![6]);
        let b = bounds(&s).unwrap();
        assert_eq!(b.plateau_start, 6);
        assert!(b.c1 < 1.0 && b.c2 > 1.0);
    }
}
