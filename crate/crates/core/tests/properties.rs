use std::collections::{BTreeMap, HashMap};

use factorial_ratio::chebyshev::{c1_enclosure, c2_enclosure};
use factorial_ratio::search::family_members;
use factorial_ratio::{
    breakpoints, chebyshev_bounds, counting_function, enumerate_candidates, eval_f, eval_u,
    galois_twist, hypergeom_params, interlaces, is_integral, min_max_f, normalize, phi_map,
    primitive_part, spectrum_of, valuation, ExactRational, FactorialParams, SearchConfig,
    SporadicCatalog, StepFunction,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational(n: i64, d: i64) -> ExactRational {
    ExactRational::new(BigInt::from(n), BigInt::from(d))
}

/// Splits `total` into `parts` positive pieces at the given cut fractions.
fn split(total: u64, cuts: &[u64]) -> Vec<u64> {
    let mut points: Vec<u64> = cuts.iter().map(|c| 1 + c % (total - 1).max(1)).collect();
    points.sort();
    points.dedup();
    points.retain(|&p| p < total);
    let mut out = Vec::new();
    let mut prev = 0;
    for p in points.into_iter().chain([total]) {
        out.push(p - prev);
        prev = p;
    }
    out
}

prop_compose! {
    /// Canonical balanced params with numerator entries up to `hi`.
    fn balanced(hi: u64)(a in prop::collection::vec(1..=hi, 1..=3), cuts in prop::collection::vec(any::<u64>(), 1..=3))
        -> Option<FactorialParams> {
        let total: u64 = a.iter().sum();
        let b = split(total, &cuts);
        if b.iter().any(|&x| x > hi) {
            return None;
        }
        normalize(&a, &b).ok()
    }
}

fn some_balanced(hi: u64) -> impl Strategy<Value = FactorialParams> {
    balanced(hi).prop_filter_map("cancelled or out of range", |p| p)
}

fn floor_sum(p: &FactorialParams, num: u64, den: u64) -> i64 {
    let s = |xs: &[u64]| xs.iter().map(|&x| (x * num / den) as i64).sum::<i64>();
    s(p.a()) - s(p.b())
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn brute_integral(a: &[u64], b: &[u64], n_max: u64) -> bool {
    (0..=n_max).all(|n| {
        let num = a
            .iter()
            .fold(BigUint::one(), |acc, &x| acc * factorial(x * n));
        let den = b
            .iter()
            .fold(BigUint::one(), |acc, &x| acc * factorial(x * n));
        (num % den).is_zero()
    })
}

fn v_p(mut x: BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut v = 0;
    while !x.is_zero() && (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    v
}

fn totient(m: u64) -> u64 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn periodicity(p in some_balanced(12), j in -50i64..50, m in 1i64..40) {
        let x = rational(j, m);
        let shifted = &x + ExactRational::one();
        prop_assert_eq!(eval_f(&p, &shifted), eval_f(&p, &x));
    }

    #[test]
    fn reflection(p in some_balanced(12), j in 1i64..200, q in prop::sample::select(vec![13i64, 17, 19, 23])) {
        prop_assume!(j % q != 0);
        let x = rational(j, q);
        let sum = eval_f(&p, &x) + eval_f(&p, &-x);
        prop_assert_eq!(sum, BigInt::from(p.excess()));
    }

    #[test]
    fn valuation_matches_factorization(p in some_balanced(12), idx in 0usize..15, n in 0u64..=30) {
        let prime = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47][idx];
        let u = eval_u(&p, n);
        let expected = v_p(u.numer().clone(), prime) - v_p(u.denom().clone(), prime);
        prop_assert_eq!(valuation(&p, prime, n).unwrap(), expected);
    }

    #[test]
    fn scaling_preserves_integrality(p in some_balanced(6), d in 2u64..=3) {
        let a: Vec<u64> = p.a().iter().map(|x| x * d).collect();
        let b: Vec<u64> = p.b().iter().map(|x| x * d).collect();
        let scaled = normalize(&a, &b).unwrap();
        prop_assert_eq!(primitive_part(&scaled).1, primitive_part(&p).1);
        let brute = brute_integral(p.a(), p.b(), 20);
        prop_assert_eq!(brute_integral(&a, &b, 20), brute);
        prop_assert_eq!(is_integral(&scaled).is_ok(), brute);
        prop_assert_eq!(is_integral(&p).is_ok(), brute);
    }

    #[test]
    fn min_max_matches_dense_sampling(p in some_balanced(8)) {
        let n = 10 * p.lcm();
        let (mut lo, mut hi) = (i64::MAX, i64::MIN);
        for i in 0..n {
            let v = floor_sum(&p, i, n);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        prop_assert_eq!(min_max_f(&p).unwrap(), (lo, hi));
    }

    #[test]
    fn spectrum_counts_step_values(p in some_balanced(12)) {
        let s = spectrum_of(&p).unwrap();
        for x in breakpoints(&p) {
            prop_assert_eq!(BigInt::from(counting_function(&s, &x)), eval_f(&p, &x));
        }
    }

    #[test]
    fn spectrum_structure(p in some_balanced(12)) {
        let s = spectrum_of(&p).unwrap();
        // divisor-count oracle for the cyclotomic exponents
        let mut e: BTreeMap<u64, i64> = BTreeMap::new();
        for (xs, sign) in [(p.a(), 1i64), (p.b(), -1)] {
            for &x in xs {
                for m in (1..=x).filter(|m| x % m == 0) {
                    *e.entry(m).or_default() += sign;
                }
            }
        }
        let up: u64 = e.iter().filter(|(_, &c)| c > 0).map(|(&m, &c)| c as u64 * totient(m)).sum();
        let down: u64 = e.iter().filter(|(_, &c)| c < 0).map(|(&m, &c)| (-c) as u64 * totient(m)).sum();
        prop_assert_eq!(s.alpha.len() as u64, up);
        prop_assert_eq!(s.beta.len() as u64, down);
        prop_assert!(s.alpha.iter().all(|t| !s.beta.contains(t)));
    }

    #[test]
    fn twists_preserve_interlacing_and_compose(p in some_balanced(12), i in 0usize..64, j in 0usize..64) {
        let s = spectrum_of(&p).unwrap();
        let m = s.common_denominator();
        let units: Vec<u64> = (1..=m.max(1)).filter(|k| k.gcd(&m) == 1).collect();
        let (k1, k2) = (units[i % units.len()], units[j % units.len()]);
        let t1 = galois_twist(&s, k1).unwrap();
        prop_assert_eq!(interlaces(&t1), interlaces(&s));
        let composed = galois_twist(&t1, k2).unwrap();
        let k = if m == 1 { 1 } else { (k1 * k2) % m };
        prop_assert_eq!(composed, galois_twist(&s, k).unwrap());
    }

    #[test]
    fn phi_step_values_match_floor_sums(p in some_balanced(12), i in 0u64..2000) {
        let s = phi_map(&p);
        let m = p.lcm();
        // f(x; a, b) at x = i/m equals the step function at x = i
        prop_assert_eq!(s.value_at(i), floor_sum(&p, i, m));
    }
}

#[test]
fn pruned_verdicts_survive_full_scan() {
    use rand::{Rng, SeedableRng};
    let cfg = SearchConfig {
        max_terms: 3,
        max_entry: 20,
        max_sum: 30,
        shards: 1,
    };
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let mut sampled = 0;
    for p in enumerate_candidates(&cfg) {
        if rng.gen_range(0..100) != 0 {
            continue;
        }
        sampled += 1;
        let m = p.lcm();
        let full = (0..m).all(|j| floor_sum(&p, j, m) >= 0);
        assert_eq!(is_integral(&p).is_ok(), full, "{p}");
    }
    assert!(sampled > 100, "{sampled}");
}

#[test]
fn hypergeometric_parameters_are_injective() {
    let mut seen: HashMap<String, FactorialParams> = HashMap::new();
    let mut checked = 0;
    for a1 in 1..=10u64 {
        for a2 in 0..=a1 {
            let a: Vec<u64> = [a1, a2].into_iter().filter(|&x| x > 0).collect();
            let total: u64 = a.iter().sum();
            for b1 in 1..=10u64 {
                for b2 in 0..=b1 {
                    for b3 in 0..=b2 {
                        let b: Vec<u64> = [b1, b2, b3].into_iter().filter(|&x| x > 0).collect();
                        if b.iter().sum::<u64>() != total {
                            continue;
                        }
                        let Ok(p) = normalize(&a, &b) else { continue };
                        let h = hypergeom_params(&p).unwrap();
                        let key = format!("{:?}|{:?}|{}", h.upper, h.lower, h.scale.value());
                        if let Some(q) = seen.get(&key) {
                            assert_eq!(q, &p, "two parameter sets share a series");
                        }
                        seen.insert(key, p);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

fn catalog_steps() -> Vec<(FactorialParams, StepFunction)> {
    let mut out: Vec<(FactorialParams, StepFunction)> = SporadicCatalog::builtin()
        .iter()
        .map(|(_, p)| (p.clone(), phi_map(p)))
        .collect();
    for fam in family_members(&SearchConfig::default()) {
        let p = primitive_part(&fam.params()).1;
        if p.excess() == 1 {
            out.push((p.clone(), phi_map(&p)));
        }
    }
    out
}

#[test]
fn chebyshev_constants_bracket_one() {
    let entries = catalog_steps();
    assert!(entries.len() > 52);
    for (p, s) in &entries {
        let b = chebyshev_bounds(s).unwrap_or_else(|e| panic!("{p}: {e}"));
        assert!(0.0 < b.c1 && b.c1 < 1.0 && 1.0 < b.c2, "{p}: {b:?}");
    }
}

#[test]
fn constant_a_from_parameters() {
    for (p, s) in catalog_steps() {
        let log_sum = |xs: &[u64]| xs.iter().map(|&x| x as f64 * (x as f64).ln()).sum::<f64>();
        let expected = (log_sum(p.a()) - log_sum(p.b())) / p.lcm() as f64;
        let a = chebyshev_bounds(&s).unwrap().a;
        assert!(
            (a - expected).abs() <= 1e-12 * expected.abs().max(1.0),
            "{p}"
        );
    }
}

#[test]
fn chebyshev_ratio_gives_best_constants() {
    let cheb = normalize(&[30, 1], &[15, 10, 6]).unwrap();
    let entries = catalog_steps();
    let cheb_step = phi_map(&cheb);
    let (c1_lo, _) = c1_enclosure(&cheb_step).unwrap();
    let (_, c2_hi) = c2_enclosure(&cheb_step).unwrap();

    // plateau starting at 1: Chebyshev wins both constants outright
    for (p, s) in entries
        .iter()
        .filter(|(p, s)| p != &cheb && chebyshev_bounds(s).unwrap().plateau_start == 1)
    {
        assert!(c1_enclosure(s).unwrap().1 < c1_lo, "{p} beats c1");
        assert!(c2_enclosure(s).unwrap().0 > c2_hi, "{p} beats c2");
    }

    // any plateau start: still the best c1
    for (p, s) in entries.iter().filter(|(p, _)| p != &cheb) {
        assert!(c1_enclosure(s).unwrap().1 < c1_lo, "{p} beats c1");
    }
    // but not the best c2 once the plateau may start later
    let better_c2: Vec<String> = entries
        .iter()
        .filter(|(_, s)| c2_enclosure(s).unwrap().1 < c2_hi)
        .map(|(p, _)| p.to_string())
        .collect();
    assert!(
        better_c2.contains(&"[30, 3, 2]/[15, 10, 6, 4]".to_string()),
        "{better_c2:?}"
    );
}
