//! Integrality, the three infinite families, and the correspondence between
//! factorial ratios and two-valued step functions.

use std::fmt;

use num_integer::Integer;

use crate::catalog::SporadicCatalog;
use crate::error::{Error, Result};
use crate::ratio::{first_negative, normalize, primitive_part, ExactRational, FactorialParams};
use crate::spectrum::{scalar_shift_half, spectrum_of};
use crate::step::StepFunction;

/// Why a ratio is not integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `Σa ≠ Σb`, so `f` is unbounded.
    Unbalanced {
        numerator_sum: u64,
        denominator_sum: u64,
    },
    /// `f(x) < 0` at this jump point.
    Negative { x: ExactRational, value: i64 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Unbalanced {
                numerator_sum,
                denominator_sum,
            } => {
                write!(
                    f,
                    "unbalanced: sum a = {numerator_sum}, sum b = {denominator_sum}"
                )
            }
            Witness::Negative { x, value } => write!(f, "f({x}) = {value}"),
        }
    }
}

/// `Ok(())` when `u_n(a, b)` is an integer for every `n` and the ratio is
/// balanced; otherwise the smallest failing jump point (or the imbalance).
pub fn is_integral(p: &FactorialParams) -> std::result::Result<(), Witness> {
    if !p.is_balanced() {
        return Err(Witness::Unbalanced {
            numerator_sum: p.numerator_sum(),
            denominator_sum: p.denominator_sum(),
        });
    }
    match first_negative(p.a(), p.b()) {
        None => Ok(()),
        Some((j, m)) => Err(Witness::Negative {
            x: ExactRational::new(j.into(), m.into()),
            value: crate::ratio::f_at(p.a(), p.b(), j, m),
        }),
    }
}

/// Whether a bounded step function only takes the values 0 and 1.
pub fn is_two_valued(s: &StepFunction) -> Result<bool> {
    let (lo, hi) = s.value_range()?;
    Ok(lo >= 0 && hi <= 1)
}

/// `a_k ↦ M/a_k`, `b_l ↦ M/b_l` with `M = lcm` of all entries; numerator
/// terms get `+1`, denominator terms `−1`.
pub fn phi_map(p: &FactorialParams) -> StepFunction {
    let m = p.lcm();
    let plus: Vec<u64> = p.a().iter().map(|&x| m / x).collect();
    let minus: Vec<u64> = p.b().iter().map(|&x| m / x).collect();
    StepFunction::from_moduli(&plus, &minus).expect("canonical params have disjoint sides")
}

/// Inverse of [`phi_map`]. A common factor of the moduli drops out.
pub fn phi_inverse(s: &StepFunction) -> FactorialParams {
    let m = s.period();
    let a: Vec<u64> = s.plus().iter().map(|&x| m / x).collect();
    let b: Vec<u64> = s.minus().iter().map(|&x| m / x).collect();
    normalize(&a, &b).expect("step functions have at least one term")
}

/// Gcd of all entries exceeds 1.
pub fn reflection_reducible(p: &FactorialParams) -> bool {
    p.gcd() > 1
}

/// The infinite families of integral ratios with `L = K + 1`, stated before
/// cancellation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `[(x+y)n]! / ((xn)! (yn)!)`
    One { x: u64, y: u64 },
    /// `(2xn)! (yn)! / ((xn)! (2yn)! [(x−y)n]!)`, `x > y`
    Two { x: u64, y: u64 },
    /// `(2xn)! (2yn)! / ((xn)! (yn)! [(x+y)n]!)`
    Three { x: u64, y: u64 },
}

impl Family {
    pub fn index(self) -> u8 {
        match self {
            Family::One { .. } => 1,
            Family::Two { .. } => 2,
            Family::Three { .. } => 3,
        }
    }

    pub fn xy(self) -> (u64, u64) {
        match self {
            Family::One { x, y } | Family::Two { x, y } | Family::Three { x, y } => (x, y),
        }
    }

    /// Pre-cancellation multipliers.
    pub fn raw(self) -> (Vec<u64>, Vec<u64>) {
        match self {
            Family::One { x, y } => (vec![x + y], vec![x, y]),
            Family::Two { x, y } => (vec![2 * x, y], vec![x, 2 * y, x - y]),
            Family::Three { x, y } => (vec![2 * x, 2 * y], vec![x, y, x + y]),
        }
    }

    pub fn params(self) -> FactorialParams {
        let (a, b) = self.raw();
        normalize(&a, &b).expect("family members never cancel completely")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.xy();
        write!(f, "Family{}({x},{y})", self.index())
    }
}

/// Every family member (with `gcd(x, y) = 1`) whose canonical form is `p`.
///
/// In forms two and three the largest pre-cancellation entry is `2x` (taking
/// `x ≥ y` in form three) and it never cancels, so `x` is half the largest
/// canonical entry and only `y` needs a search. Symmetric forms are reported
/// with `x ≥ y`.
pub fn match_family(p: &FactorialParams) -> Vec<Family> {
    let mut out = Vec::new();
    if p.k() == 1 && p.l() == 2 {
        let (x, y) = (p.b()[0], p.b()[1]);
        if p.a()[0] == x + y && x.gcd(&y) == 1 {
            out.push(Family::One { x, y });
        }
    }
    let top = p.max_entry();
    if top.is_multiple_of(2) {
        let x = top / 2;
        for y in 1..x {
            let fam = Family::Two { x, y };
            if x.gcd(&y) == 1 && fam.params() == *p {
                out.push(fam);
            }
        }
        for y in 1..=x {
            let fam = Family::Three { x, y };
            if x.gcd(&y) == 1 && fam.params() == *p {
                out.push(fam);
            }
        }
    }
    out
}

/// Form (2 or 3) and `(x, y)` of an imprimitive family member: form two or
/// three with `x`, `y` not both odd.
pub fn imprimitive_pattern(p: &FactorialParams) -> Option<(u8, u64, u64)> {
    match_family(p).into_iter().find_map(|fam| {
        let (x, y) = fam.xy();
        match fam {
            Family::One { .. } => None,
            _ if x % 2 == 1 && y % 2 == 1 => None,
            _ => Some((fam.index(), x, y)),
        }
    })
}

/// Parameter-level structure behind a family-two or family-three tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    /// `x`, `y` not both odd.
    Imprimitive { form: u8, x: u64, y: u64 },
    /// `x`, `y` both odd: multiplying every root by `−1` gives the spectrum of
    /// `binomial` (with the two sides exchanged when `reversed`).
    ScalarShift {
        form: u8,
        x: u64,
        y: u64,
        binomial: FactorialParams,
        reversed: bool,
    },
}

fn structure_of(fam: Family) -> Option<Structure> {
    let (x, y) = fam.xy();
    let form = fam.index();
    match fam {
        Family::One { .. } => None,
        _ if x % 2 == 0 || y % 2 == 0 => Some(Structure::Imprimitive { form, x, y }),
        Family::Two { .. } => Some(Structure::ScalarShift {
            form,
            x,
            y,
            binomial: Family::One { x: y, y: x - y }.params(),
            reversed: false,
        }),
        Family::Three { .. } => Some(Structure::ScalarShift {
            form,
            x,
            y,
            binomial: Family::One { x, y }.params(),
            reversed: true,
        }),
    }
}

/// Checks the scalar-shift relation by comparing spectra.
pub fn scalar_shift_holds(p: &FactorialParams, structure: &Structure) -> bool {
    let Structure::ScalarShift {
        binomial, reversed, ..
    } = structure
    else {
        return false;
    };
    let (Ok(s), Ok(t)) = (spectrum_of(p), spectrum_of(binomial)) else {
        return false;
    };
    let shifted = scalar_shift_half(&s);
    if *reversed {
        shifted == t.swapped()
    } else {
        shifted == t
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tag {
    Family(Family),
    Sporadic(u32),
    NotIntegral,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Family(fam) => fam.fmt(f),
            Tag::Sporadic(id) => write!(f, "Sporadic({id})"),
            Tag::NotIntegral => write!(f, "NotIntegral"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub tag: Tag,
    /// Gcd split off before matching; 1 for primitive input.
    pub scale: u64,
    pub primitive: FactorialParams,
    pub witness: Option<Witness>,
    /// Other family descriptions of the same ratio.
    pub also: Vec<Family>,
    pub structure: Option<Structure>,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale > 1 {
            write!(f, "{} x {}", self.scale, self.tag)
        } else {
            self.tag.fmt(f)
        }
    }
}

/// Classifies canonical parameters against the families and the sporadic catalog.
pub fn classify(p: &FactorialParams, catalog: &SporadicCatalog) -> Result<Classification> {
    if let Err(w) = is_integral(p) {
        return Ok(Classification {
            tag: Tag::NotIntegral,
            scale: 1,
            primitive: p.clone(),
            witness: Some(w),
            also: Vec::new(),
            structure: None,
        });
    }
    let (scale, primitive) = primitive_part(p);
    if primitive.excess() != 1 {
        return Err(Error::OutsideClassification(primitive.excess()));
    }
    let families = match_family(&primitive);
    if let Some((&first, rest)) = families.split_first() {
        let structure = families.iter().find_map(|&fam| structure_of(fam));
        return Ok(Classification {
            tag: Tag::Family(first),
            scale,
            primitive,
            witness: None,
            also: rest.to_vec(),
            structure,
        });
    }
    match catalog.lookup(&primitive) {
        Some(id) => Ok(Classification {
            tag: Tag::Sporadic(id),
            scale,
            primitive,
            witness: None,
            also: Vec::new(),
            structure: None,
        }),
        None => Err(Error::CatalogIncomplete(primitive.to_string())),
    }
}
