//! Factorial ratios `u_n(a, b) = ∏(a_k n)! / ∏(b_l n)!` and their floor-sum
//! step functions `f(x; a, b) = Σ⌊a_k x⌋ − Σ⌊b_l x⌋`.
//!
//! Everything here is exact. `f` is right-continuous and only jumps at the
//! fractions `j/m` with `m` an entry of `a` or `b`, so scanning those points
//! answers every "for all x" question about `f` on a period.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};

pub type ExactRational = BigRational;

/// Canonical factorial-ratio parameters.
///
/// Both sides are sorted descending and share no entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FactorialParams {
    a: Vec<u64>,
    b: Vec<u64>,
}

/// Cancels common entries pairwise and sorts both sides descending.
pub fn normalize(a: &[u64], b: &[u64]) -> Result<FactorialParams> {
    if a.iter().chain(b).any(|&x| x == 0) {
        return Err(Error::NonPositiveEntry);
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable_by(|x, y| y.cmp(x));
    b.sort_unstable_by(|x, y| y.cmp(x));

    // both descending: a merge walk removes the multiset intersection
    let (mut i, mut j) = (0, 0);
    let mut keep_a = Vec::with_capacity(a.len());
    let mut keep_b = Vec::with_capacity(b.len());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Greater => {
                keep_a.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Less => {
                keep_b.push(b[j]);
                j += 1;
            }
        }
    }
    keep_a.extend_from_slice(&a[i..]);
    keep_b.extend_from_slice(&b[j..]);

    if keep_a.is_empty() && keep_b.is_empty() {
        return Err(Error::TrivialRatio);
    }
    Ok(FactorialParams {
        a: keep_a,
        b: keep_b,
    })
}

impl FactorialParams {
    pub fn new(a: &[u64], b: &[u64]) -> Result<Self> {
        normalize(a, b)
    }

    /// Wraps already-canonical slices. Callers guarantee sortedness and disjointness.
    pub(crate) fn from_canonical(a: Vec<u64>, b: Vec<u64>) -> Self {
        debug_assert!(a.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(b.windows(2).all(|w| w[0] >= w[1]));
        FactorialParams { a, b }
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    /// Number of numerator factorials.
    pub fn k(&self) -> usize {
        self.a.len()
    }

    /// Number of denominator factorials.
    pub fn l(&self) -> usize {
        self.b.len()
    }

    /// `L − K`.
    pub fn excess(&self) -> i64 {
        self.l() as i64 - self.k() as i64
    }

    pub fn numerator_sum(&self) -> u64 {
        self.a.iter().sum()
    }

    pub fn denominator_sum(&self) -> u64 {
        self.b.iter().sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.numerator_sum() == self.denominator_sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = u64> + '_ {
        self.a.iter().chain(&self.b).copied()
    }

    pub fn max_entry(&self) -> u64 {
        self.entries().max().unwrap_or(0)
    }

    pub fn gcd(&self) -> u64 {
        self.entries().fold(0, |g, x| g.gcd(&x))
    }

    pub fn lcm(&self) -> u64 {
        self.entries().fold(1, |l, x| l.lcm(&x))
    }

    pub(crate) fn require_balanced(&self) -> Result<()> {
        if self.is_balanced() {
            Ok(())
        } else {
            Err(Error::Unbounded {
                numerator: self.numerator_sum(),
                denominator: self.denominator_sum(),
            })
        }
    }
}

impl fmt::Display for FactorialParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.a, self.b)
    }
}

/// Splits off `d = gcd` of all entries.
pub fn primitive_part(p: &FactorialParams) -> (u64, FactorialParams) {
    let d = p.gcd();
    let a = p.a.iter().map(|x| x / d).collect();
    let b = p.b.iter().map(|x| x / d).collect();
    (d, FactorialParams::from_canonical(a, b))
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Exact `u_n(a, b)`.
pub fn eval_u(p: &FactorialParams, n: u64) -> ExactRational {
    let num =
        p.a.iter()
            .fold(BigUint::one(), |acc, &x| acc * factorial(x * n));
    let den =
        p.b.iter()
            .fold(BigUint::one(), |acc, &x| acc * factorial(x * n));
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact `f(x; a, b)` for rational `x`.
pub fn eval_f(p: &FactorialParams, x: &ExactRational) -> BigInt {
    let floor_mul = |m: u64| -> BigInt {
        let num = x.numer() * BigInt::from(m);
        num.div_floor(x.denom())
    };
    let plus: BigInt = p.a.iter().map(|&m| floor_mul(m)).sum();
    let minus: BigInt = p.b.iter().map(|&m| floor_mul(m)).sum();
    plus - minus
}

/// `f(j/m)` in machine integers.
pub(crate) fn f_at(a: &[u64], b: &[u64], j: u64, m: u64) -> i64 {
    let floor = |e: u64| ((e as u128 * j as u128) / m as u128) as i64;
    a.iter().map(|&e| floor(e)).sum::<i64>() - b.iter().map(|&e| floor(e)).sum::<i64>()
}

/// Reduced fractions `j/m` in `(0, 1]` with `m` an entry, ascending, as `(num, den)`.
pub(crate) fn breakpoint_fractions(p: &FactorialParams) -> Vec<(u64, u64)> {
    let mut moduli: Vec<u64> = p.entries().collect();
    moduli.sort_unstable();
    moduli.dedup();
    let mut out = Vec::new();
    for &m in &moduli {
        for j in 1..=m {
            let g = j.gcd(&m);
            out.push((j / g, m / g));
        }
    }
    out.sort_unstable_by(|&(n1, d1), &(n2, d2)| {
        (n1 as u128 * d2 as u128).cmp(&(n2 as u128 * d1 as u128))
    });
    out.dedup();
    out
}

/// Every distinct jump point of `f` in `(0, 1]`, ascending.
pub fn breakpoints(p: &FactorialParams) -> Vec<ExactRational> {
    breakpoint_fractions(p)
        .into_iter()
        .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
        .collect()
}

/// Exact range of `f` over one period `[0, 1)`.
pub fn min_max_f(p: &FactorialParams) -> Result<(i64, i64)> {
    p.require_balanced()?;
    let mut lo = 0i64;
    let mut hi = 0i64;
    for (j, m) in breakpoint_fractions(p) {
        if j == m {
            continue;
        }
        let v = f_at(&p.a, &p.b, j, m);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok((lo, hi))
}

/// Walks the jump points of `f` on `(0, 1)` in ascending order and returns the
/// first one where `f < 0`, as `(j, m)` with `j/m` reduced. Both slices must be
/// sorted descending and disjoint.
///
/// The running value is updated incrementally: crossing `j/m` raises `⌊m x⌋` by
/// one for every copy of `m`, so `f` moves by the signed multiplicity of `m`.
pub(crate) fn first_negative(a: &[u64], b: &[u64]) -> Option<(u64, u64)> {
    // (modulus, next numerator, signed multiplicity)
    let mut cursors: [(u64, u64, i64); 16] = [(0, 0, 0); 16];
    let mut len = 0usize;
    let push = |m: u64, w: i64, cursors: &mut [(u64, u64, i64); 16], len: &mut usize| {
        if *len > 0 && cursors[*len - 1].0 == m {
            cursors[*len - 1].2 += w;
        } else {
            cursors[*len] = (m, 1, w);
            *len += 1;
        }
    };
    if a.len() + b.len() > 16 {
        return first_negative_slow(a, b);
    }
    // descending merge keeps equal moduli adjacent
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i] >= b[j]) {
            push(a[i], 1, &mut cursors, &mut len);
            i += 1;
        } else {
            push(b[j], -1, &mut cursors, &mut len);
            j += 1;
        }
    }
    let cursors = &mut cursors[..len];

    let mut f = 0i64;
    loop {
        // smallest pending j/m < 1
        let mut best: Option<(u64, u64)> = None;
        for c in cursors.iter() {
            if c.1 >= c.0 {
                continue;
            }
            best = match best {
                None => Some((c.1, c.0)),
                Some((bn, bd)) => {
                    if (c.1 as u128) * (bd as u128) < (bn as u128) * (c.0 as u128) {
                        Some((c.1, c.0))
                    } else {
                        Some((bn, bd))
                    }
                }
            };
        }
        let (bn, bd) = best?;
        for c in cursors.iter_mut() {
            if c.1 < c.0 && (c.1 as u128) * (bd as u128) == (bn as u128) * (c.0 as u128) {
                f += c.2;
                c.1 += 1;
            }
        }
        if f < 0 {
            let g = bn.gcd(&bd);
            return Some((bn / g, bd / g));
        }
    }
}

fn first_negative_slow(a: &[u64], b: &[u64]) -> Option<(u64, u64)> {
    let p = FactorialParams::from_canonical(a.to_vec(), b.to_vec());
    breakpoint_fractions(&p)
        .into_iter()
        .filter(|&(j, m)| j < m)
        .find(|&(j, m)| f_at(a, b, j, m) < 0)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `v_p(u_n) = Σ_{α≥1} f(n / p^α)`, truncated once `p^α > n · max entry`.
pub fn valuation(p: &FactorialParams, prime: u64, n: u64) -> Result<i64> {
    if !is_prime(prime) {
        return Err(Error::NotPrime(prime));
    }
    let limit = n as u128 * p.max_entry() as u128;
    let mut total = 0i64;
    let mut pk = prime as u128;
    while pk <= limit {
        let floor = |e: u64| ((e as u128 * n as u128) / pk) as i64;
        total += p.a.iter().map(|&e| floor(e)).sum::<i64>();
        total -= p.b.iter().map(|&e| floor(e)).sum::<i64>();
        pk *= prime as u128;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        BigRational::new(n.into(), d.into())
    }

    fn params(a: &[u64], b: &[u64]) -> FactorialParams {
        normalize(a, b).unwrap()
    }

    #[test]
    fn normalize_cancels_and_sorts() {
        assert_eq!(normalize(&[2, 3], &[3, 2]), Err(Error::TrivialRatio));
        let p = params(&[30, 1, 5], &[15, 10, 6, 5]);
        assert_eq!(p.a(), &[30, 1]);
        assert_eq!(p.b(), &[15, 10, 6]);
        let p = params(&[3], &[1, 2]);
        assert_eq!((p.a(), p.b()), (&[3u64][..], &[2u64, 1][..]));
        assert_eq!((p.k(), p.l()), (1, 2));
        assert!(p.is_balanced());
        assert_eq!(normalize(&[0], &[1]), Err(Error::NonPositiveEntry));
        // repeated entries cancel one copy at a time
        let p = params(&[2, 2, 2], &[2, 3, 1]);
        assert_eq!((p.a(), p.b()), (&[2u64, 2][..], &[3u64, 1][..]));
    }

    #[test]
    fn primitive_part_divides_gcd() {
        let (d, p) = primitive_part(&params(&[6], &[4, 2]));
        assert_eq!((d, p.a(), p.b()), (2, &[3u64][..], &[2u64, 1][..]));
        let cheb = params(&[30, 1], &[15, 10, 6]);
        assert_eq!(primitive_part(&cheb), (1, cheb.clone()));
        let (d, p) = primitive_part(&params(&[60, 2], &[30, 20, 12]));
        assert_eq!((d, p), (2, cheb));
    }

    #[test]
    fn eval_u_examples() {
        assert_eq!(eval_u(&params(&[3], &[2, 1]), 2), q(15, 1));
        assert_eq!(eval_u(&params(&[30, 1], &[15, 10, 6]), 0), q(1, 1));
        assert_eq!(eval_u(&params(&[1], &[2]), 1), q(1, 2));
    }

    #[test]
    fn eval_f_examples() {
        let cheb = params(&[30, 1], &[15, 10, 6]);
        assert_eq!(eval_f(&cheb, &q(1, 2)), 0.into());
        assert_eq!(eval_f(&cheb, &q(0, 1)), 0.into());
        assert_eq!(eval_f(&params(&[3], &[2, 1]), &q(1, 3)), 1.into());
        // negative arguments floor toward -inf
        assert_eq!(
            eval_f(&params(&[3], &[2, 1]), &q(-1, 3)),
            // ⌊−1⌋ − ⌊−2/3⌋ − ⌊−1/3⌋ = −1 + 1 + 1
            1.into()
        );
    }

    #[test]
    fn breakpoint_examples() {
        assert_eq!(
            breakpoints(&params(&[3], &[2, 1])),
            vec![q(1, 3), q(1, 2), q(2, 3), q(1, 1)]
        );
        assert_eq!(breakpoints(&params(&[2], &[1, 1])), vec![q(1, 2), q(1, 1)]);
        let bp = breakpoints(&params(&[30, 1], &[15, 10, 6]));
        // every breakpoint is j/30 since all entries divide 30
        assert_eq!(bp.len(), 30);
        assert_eq!(bp[0], q(1, 30));
        assert_eq!(*bp.last().unwrap(), q(1, 1));
    }

    #[test]
    fn min_max_examples() {
        assert_eq!(min_max_f(&params(&[3], &[2, 1])), Ok((0, 1)));
        assert_eq!(min_max_f(&params(&[30, 1], &[15, 10, 6])), Ok((0, 1)));
        assert_eq!(min_max_f(&params(&[2, 2], &[1, 1, 1, 1])), Ok((0, 2)));
        assert!(matches!(
            min_max_f(&params(&[1], &[2])),
            Err(Error::Unbounded { .. })
        ));
    }

    #[test]
    fn first_negative_finds_smallest_witness() {
        assert_eq!(first_negative(&[2, 2], &[3, 1]), Some((1, 3)));
        assert_eq!(first_negative(&[30, 1], &[15, 10, 6]), None);
        assert_eq!(first_negative(&[3], &[2, 1]), None);
        // largest entry in the denominator fails at the first jump
        assert_eq!(first_negative(&[4, 1], &[5]), Some((1, 5)));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&params(&[3], &[2, 1]), 5, 2), Ok(1));
        assert_eq!(valuation(&params(&[3], &[2, 1]), 2, 0), Ok(0));
        assert_eq!(valuation(&params(&[1], &[2]), 2, 1), Ok(-1));
        assert_eq!(
            valuation(&params(&[3], &[2, 1]), 4, 2),
            Err(Error::NotPrime(4))
        );
        assert_eq!(
            valuation(&params(&[3], &[2, 1]), 1, 2),
            Err(Error::NotPrime(1))
        );
    }
}
