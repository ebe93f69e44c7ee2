//! Signed floor sums `Σ c_k ⌊x / m_k⌋` with `c_k = ±1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratio::ExactRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn coefficient(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A step function `Σ c_k ⌊x / m_k⌋`.
///
/// Terms are kept with the positive ones first, each group ascending by
/// modulus. No modulus carries both signs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepFunction {
    terms: Vec<(u64, Sign)>,
}

impl StepFunction {
    pub fn new(terms: &[(u64, Sign)]) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyStepFunction);
        }
        if terms.iter().any(|&(m, _)| m == 0) {
            return Err(Error::NonPositiveEntry);
        }
        for &(m, s) in terms {
            if terms.iter().any(|&(m2, s2)| m2 == m && s2 != s) {
                return Err(Error::ConflictingModulus(m));
            }
        }
        let mut terms = terms.to_vec();
        terms.sort_unstable_by_key(|&(m, s)| (s, m));
        Ok(StepFunction { terms })
    }

    pub fn from_moduli(plus: &[u64], minus: &[u64]) -> Result<Self> {
        let terms: Vec<_> = plus
            .iter()
            .map(|&m| (m, Sign::Plus))
            .chain(minus.iter().map(|&m| (m, Sign::Minus)))
            .collect();
        Self::new(&terms)
    }

    pub fn terms(&self) -> &[(u64, Sign)] {
        &self.terms
    }

    pub fn plus(&self) -> Vec<u64> {
        self.moduli_with(Sign::Plus)
    }

    pub fn minus(&self) -> Vec<u64> {
        self.moduli_with(Sign::Minus)
    }

    fn moduli_with(&self, sign: Sign) -> Vec<u64> {
        self.terms
            .iter()
            .filter(|t| t.1 == sign)
            .map(|t| t.0)
            .collect()
    }

    /// Period of the bounded function: the lcm of the moduli.
    pub fn period(&self) -> u64 {
        self.terms.iter().fold(1, |l, &(m, _)| l.lcm(&m))
    }

    pub fn moduli_gcd(&self) -> u64 {
        self.terms.iter().fold(0, |g, &(m, _)| g.gcd(&m))
    }

    /// `Σ c_k / m_k = 0`, checked over the common denominator.
    pub fn is_bounded(&self) -> bool {
        let period = self.period() as i128;
        let total: i128 = self
            .terms
            .iter()
            .map(|&(m, s)| s.coefficient() as i128 * (period / m as i128))
            .sum();
        total == 0
    }

    /// Value at a nonnegative integer point.
    pub fn value_at(&self, x: u64) -> i64 {
        self.terms
            .iter()
            .map(|&(m, s)| s.coefficient() * (x / m) as i64)
            .sum()
    }

    /// Integer jump points in `(0, period]`, ascending.
    pub(crate) fn jump_points(&self) -> Vec<u64> {
        let period = self.period();
        let mut points: Vec<u64> = Vec::new();
        let mut moduli: Vec<u64> = self.terms.iter().map(|t| t.0).collect();
        moduli.sort_unstable();
        moduli.dedup();
        for m in moduli {
            points.extend((1..=period / m).map(|j| j * m));
        }
        points.sort_unstable();
        points.dedup();
        points
    }

    /// Exact range over one period, or `UnboundedStep`.
    pub fn value_range(&self) -> Result<(i64, i64)> {
        if !self.is_bounded() {
            return Err(Error::UnboundedStep);
        }
        let (mut lo, mut hi) = (0, 0);
        for x in self.jump_points() {
            let v = self.value_at(x);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Ok((lo, hi))
    }
}

/// Exact `Σ c_k ⌊x / m_k⌋` at a rational point.
pub fn eval_step(s: &StepFunction, x: &ExactRational) -> BigInt {
    s.terms
        .iter()
        .map(|&(m, sign)| {
            let q = x.numer().div_floor(&(x.denom() * BigInt::from(m)));
            q * sign.coefficient()
        })
        .sum()
}

impl fmt::Display for StepFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(m, s)) in self.terms.iter().enumerate() {
            let sym = match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            };
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{sym}[x/{m}]")?;
        }
        Ok(())
    }
}
