//! The generating function `Σ u_n z^n` as a hypergeometric series
//! `_{d'}F_{d'−1}(α'; β'; C z)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratio::{ExactRational, FactorialParams};
use crate::spectrum::{spectrum_of, Angle};

/// `∏ base^exp / ∏ base^exp`, kept factored. Bases equal to 1 are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FactoredRatio {
    pub numerator: Vec<(u64, u64)>,
    pub denominator: Vec<(u64, u64)>,
}

impl FactoredRatio {
    pub fn value(&self) -> ExactRational {
        let prod = |fs: &[(u64, u64)]| {
            fs.iter().fold(BigUint::one(), |acc, &(b, e)| {
                acc * BigUint::from(b).pow(e as u32)
            })
        };
        BigRational::new(
            BigInt::from(prod(&self.numerator)),
            BigInt::from(prod(&self.denominator)),
        )
    }
}

fn write_product(f: &mut fmt::Formatter<'_>, fs: &[(u64, u64)]) -> fmt::Result {
    for (i, (b, e)) in fs.iter().enumerate() {
        if i > 0 {
            write!(f, " * ")?;
        }
        write!(f, "{b}^{e}")?;
    }
    Ok(())
}

/// Renders as `30^30 / (15^15 * 10^10 * 6^6)`.
impl fmt::Display for FactoredRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.numerator.is_empty() {
            write!(f, "1")?;
        } else if self.numerator.len() > 1 && !self.denominator.is_empty() {
            write!(f, "(")?;
            write_product(f, &self.numerator)?;
            write!(f, ")")?;
        } else {
            write_product(f, &self.numerator)?;
        }
        match self.denominator.len() {
            0 => Ok(()),
            1 => {
                write!(f, " / ")?;
                write_product(f, &self.denominator)
            }
            _ => {
                write!(f, " / (")?;
                write_product(f, &self.denominator)?;
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HypergeomParams {
    pub upper: Vec<Angle>,
    pub lower: Vec<Angle>,
    pub scale: FactoredRatio,
}

impl HypergeomParams {
    /// `d'`, the number of upper parameters.
    pub fn order(&self) -> usize {
        self.upper.len()
    }

    /// `C^n ∏(α')_n / (n! ∏(β')_n)`.
    pub fn term(&self, n: u64) -> ExactRational {
        let c = self.scale.value();
        let mut t = pow(&c, n);
        for &a in &self.upper {
            t *= pochhammer(a, n);
        }
        for &b in &self.lower {
            t /= pochhammer(b, n);
        }
        t / pochhammer(Angle::ONE, n)
    }
}

fn pow(x: &ExactRational, n: u64) -> ExactRational {
    (0..n).fold(ExactRational::one(), |acc, _| acc * x)
}

/// Rising factorial `(t)_n`.
pub fn pochhammer(t: Angle, n: u64) -> ExactRational {
    let t = t.to_rational();
    (0..n).fold(ExactRational::one(), |acc, i| {
        acc * (&t + ExactRational::from_integer(i.into()))
    })
}

/// Hypergeometric parameters of `Σ u_n z^n`.
///
/// When `L > K` one copy of the angle 1 is removed from the lower list (it is
/// the `n!`); otherwise the angle 1 is appended to the upper list.
pub fn hypergeom_params(p: &FactorialParams) -> Result<HypergeomParams> {
    let s = spectrum_of(p)?;
    let (mut upper, mut lower) = (s.alpha, s.beta);
    if p.l() > p.k() {
        // one is the largest angle, so it sits at the end
        match lower.last() {
            Some(&t) if t == Angle::ONE => {
                lower.pop();
            }
            _ => return Err(Error::DegreeMismatch),
        }
    } else {
        upper.push(Angle::ONE);
    }
    let factors = |xs: &[u64]| xs.iter().filter(|&&x| x > 1).map(|&x| (x, x)).collect();
    Ok(HypergeomParams {
        upper,
        lower,
        scale: FactoredRatio {
            numerator: factors(p.a()),
            denominator: factors(p.b()),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{eval_u, normalize};

    #[test]
    fn chebyshev_parameters() {
        let h = hypergeom_params(&normalize(&[30, 1], &[15, 10, 6]).unwrap()).unwrap();
        let upper: Vec<String> = h.upper.iter().map(|t| t.to_string()).collect();
        let lower: Vec<String> = h.lower.iter().map(|t| t.to_string()).collect();
        assert_eq!(
            upper,
            ["1/30", "7/30", "11/30", "13/30", "17/30", "19/30", "23/30", "29/30"]
        );
        assert_eq!(lower, ["1/5", "1/3", "2/5", "1/2", "3/5", "2/3", "4/5"]);
        assert_eq!(h.scale.to_string(), "30^30 / (15^15 * 10^10 * 6^6)");
        assert_eq!(h.order(), 8);
    }

    #[test]
    fn small_parameters() {
        let h = hypergeom_params(&normalize(&[3], &[2, 1]).unwrap()).unwrap();
        assert_eq!(h.upper, vec![Angle::new(1, 3), Angle::new(2, 3)]);
        assert_eq!(h.lower, vec![Angle::new(1, 2)]);
        assert_eq!(h.scale.value(), BigRational::new(27.into(), 4.into()));
        assert_eq!(h.scale.to_string(), "3^3 / 2^2");

        let h = hypergeom_params(&normalize(&[2], &[1, 1]).unwrap()).unwrap();
        assert_eq!(h.upper, vec![Angle::new(1, 2)]);
        assert!(h.lower.is_empty());
        // C = 2^2 / (1^1 1^1)
        assert_eq!(h.scale.value(), BigRational::from_integer(4.into()));
        assert_eq!(h.scale.to_string(), "2^2");
    }

    #[test]
    fn k_at_least_l_appends_one() {
        let p = normalize(&[1, 1], &[2]).unwrap();
        let h = hypergeom_params(&p).unwrap();
        assert_eq!(h.upper, vec![Angle::ONE, Angle::ONE]);
        assert_eq!(h.lower, vec![Angle::new(1, 2)]);
        assert_eq!(h.scale.to_string(), "1 / 2^2");
        for n in 0..6 {
            assert_eq!(h.term(n), eval_u(&p, n));
        }
    }

    #[test]
    fn unbalanced_is_rejected() {
        assert_eq!(
            hypergeom_params(&normalize(&[1], &[2]).unwrap()),
            Err(Error::DegreeMismatch)
        );
    }

    #[test]
    fn term_matches_factorials() {
        let p = normalize(&[30, 1], &[15, 10, 6]).unwrap();
        let h = hypergeom_params(&p).unwrap();
        for n in 0..5 {
            assert_eq!(h.term(n), eval_u(&p, n));
        }
    }
}
