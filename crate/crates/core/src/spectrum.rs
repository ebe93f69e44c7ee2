//! Root spectra of `∏(x^{a_k} − 1) / ∏(x^{b_l} − 1)` after cancellation.
//!
//! Both sides are products of cyclotomic polynomials, so the reduced quotient
//! is determined by the exponent of each `Φ_m`. That exponent is a divisor
//! count; no polynomial arithmetic is needed. A root `e(j/m)` is stored as the
//! reduced angle `j/m ∈ (0, 1]`, with `1/1` standing for the root 1.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ratio::{ExactRational, FactorialParams};

/// A reduced fraction in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Angle {
    num: u64,
    den: u64,
}

impl Angle {
    pub const ONE: Angle = Angle { num: 1, den: 1 };

    /// The representative of `num/den` modulo 1 in `(0, 1]`.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "angle with zero denominator");
        let r = num % den;
        if r == 0 {
            return Angle::ONE;
        }
        let g = r.gcd(&den);
        Angle {
            num: r / g,
            den: den / g,
        }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn to_rational(self) -> ExactRational {
        ExactRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    /// `{t + 1/2}` with 0 sent to 1.
    pub fn shift_half(self) -> Self {
        Angle::new(2 * self.num + self.den, 2 * self.den)
    }

    /// `{k t}` with 0 sent to 1.
    pub fn twist(self, k: u64) -> Self {
        Angle::new(
            ((self.num as u128 * k as u128) % self.den as u128) as u64,
            self.den,
        )
    }

    /// Parses `"j/m"` (or a bare integer). Values are taken modulo 1.
    pub fn parse(s: &str) -> Option<Self> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim().parse().ok()?, d.trim().parse().ok()?),
            None => (s.trim().parse().ok()?, 1),
        };
        if d == 0 {
            return None;
        }
        Some(Angle::new(n, d))
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Numerator angles `alpha` and denominator angles `beta`, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Spectrum {
    pub alpha: Vec<Angle>,
    pub beta: Vec<Angle>,
}

impl Spectrum {
    pub fn new(mut alpha: Vec<Angle>, mut beta: Vec<Angle>) -> Self {
        alpha.sort();
        beta.sort();
        Spectrum { alpha, beta }
    }

    pub fn degree(&self) -> usize {
        self.alpha.len()
    }

    /// Lcm of every denominator present.
    pub fn common_denominator(&self) -> u64 {
        self.alpha
            .iter()
            .chain(&self.beta)
            .fold(1, |l, t| l.lcm(&t.den))
    }

    pub fn swapped(&self) -> Spectrum {
        Spectrum {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }
}

/// `e_m = #{k : m | a_k} − #{l : m | b_l}`, zero exponents omitted.
pub fn cyclotomic_exponents(p: &FactorialParams) -> BTreeMap<u64, i64> {
    let mut exps: BTreeMap<u64, i64> = BTreeMap::new();
    let mut add = |n: u64, w: i64| {
        let mut d = 1;
        while d * d <= n {
            if n.is_multiple_of(d) {
                *exps.entry(d).or_default() += w;
                if d * d != n {
                    *exps.entry(n / d).or_default() += w;
                }
            }
            d += 1;
        }
    };
    for &x in p.a() {
        add(x, 1);
    }
    for &x in p.b() {
        add(x, -1);
    }
    exps.retain(|_, e| *e != 0);
    exps
}

/// Primitive angles `j/m`, `gcd(j, m) = 1`.
fn primitive_angles(m: u64) -> impl Iterator<Item = Angle> {
    (1..=m)
        .filter(move |j| j.gcd(&m) == 1)
        .map(move |j| Angle::new(j, m))
}

/// The spectrum `(α, β)` of balanced parameters.
pub fn spectrum_of(p: &FactorialParams) -> Result<Spectrum> {
    if !p.is_balanced() {
        return Err(Error::DegreeMismatch);
    }
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for (m, e) in cyclotomic_exponents(p) {
        let target = if e > 0 { &mut alpha } else { &mut beta };
        for t in primitive_angles(m) {
            for _ in 0..e.unsigned_abs() {
                target.push(t);
            }
        }
    }
    Ok(Spectrum::new(alpha, beta))
}

/// Whether `alpha` and `beta` interlace: merged in ascending order, the two
/// sets alternate strictly. With equal sizes this is the same as alternating
/// around the unit circle. Any value shared between (or repeated within) the
/// two sets breaks alternation.
pub fn interlaces(s: &Spectrum) -> bool {
    if s.alpha.len() != s.beta.len() {
        return false;
    }
    if s.alpha.is_empty() {
        return true;
    }
    let alpha_first = s.alpha[0] < s.beta[0];
    let (first, second) = if alpha_first {
        (&s.alpha, &s.beta)
    } else {
        (&s.beta, &s.alpha)
    };
    // first[0] < second[0] < first[1] < second[1] < ...
    for i in 0..first.len() {
        if first[i] >= second[i] {
            return false;
        }
        if i + 1 < first.len() && second[i] >= first[i + 1] {
            return false;
        }
    }
    true
}

/// Applies `t ↦ {k t}` to every angle.
pub fn galois_twist(s: &Spectrum, k: u64) -> Result<Spectrum> {
    let modulus = s.common_denominator();
    if k == 0 || k.gcd(&modulus) != 1 {
        return Err(Error::NotGaloisTwist { k, modulus });
    }
    Ok(Spectrum::new(
        s.alpha.iter().map(|t| t.twist(k)).collect(),
        s.beta.iter().map(|t| t.twist(k)).collect(),
    ))
}

/// Interlacing after every Galois twist `k ∈ [1, M]`, `gcd(k, M) = 1`.
pub fn bh_algebraicity_test(s: &Spectrum) -> bool {
    let modulus = s.common_denominator();
    (1..=modulus)
        .filter(|k| k.gcd(&modulus) == 1)
        .all(|k| galois_twist(s, k).map(|t| interlaces(&t)).unwrap_or(false))
}

/// `#(α ∩ [0, {x}]) − #(β ∩ [0, {x}])`.
pub fn counting_function(s: &Spectrum, x: &ExactRational) -> i64 {
    let frac = x - x.floor();
    let count = |set: &[Angle]| set.iter().filter(|t| t.to_rational() <= frac).count() as i64;
    count(&s.alpha) - count(&s.beta)
}

/// Multiplies every root by `−1`: `t ↦ {t + 1/2}` on both sides.
pub fn scalar_shift_half(s: &Spectrum) -> Spectrum {
    Spectrum::new(
        s.alpha.iter().map(|t| t.shift_half()).collect(),
        s.beta.iter().map(|t| t.shift_half()).collect(),
    )
}
