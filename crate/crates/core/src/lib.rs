//! Integral factorial ratios `u_n(a, b) = ∏(a_k n)! / ∏(b_l n)!`.
//!
//! The crate decides integrality through the floor-sum step function
//! `f(x; a, b)`, reads off the root spectrum of
//! `∏(x^{a_k} − 1) / ∏(x^{b_l} − 1)`, builds the hypergeometric parameters
//! of `Σ u_n z^n`, classifies integral ratios with `L = K + 1` into the three
//! infinite families or the sporadic catalog, and searches for sporadic
//! solutions.
//!
//! ```
//! use factorial_ratio::{normalize, is_integral, spectrum_of, interlaces};
//!
//! let p = normalize(&[30, 1], &[15, 10, 6]).unwrap();
//! assert!(is_integral(&p).is_ok());
//! assert!(interlaces(&spectrum_of(&p).unwrap()));
//! ```

pub mod catalog;
pub mod chebyshev;
pub mod classify;
pub mod error;
pub mod hypergeom;
pub mod ratio;
pub mod search;
pub mod spectrum;
pub mod step;

pub use catalog::{Bounds, Catalog, CatalogEntry, SporadicCatalog};
pub use chebyshev::{bounds as chebyshev_bounds, constant_a, lambda_threshold, ChebyshevBounds};
pub use classify::{
    classify, imprimitive_pattern, is_integral, is_two_valued, match_family, phi_inverse, phi_map,
    reflection_reducible, Classification, Family, Structure, Tag, Witness,
};
pub use error::{Error, Result};
pub use hypergeom::{hypergeom_params, FactoredRatio, HypergeomParams};
pub use ratio::{
    breakpoints, eval_f, eval_u, min_max_f, normalize, primitive_part, valuation, ExactRational,
    FactorialParams,
};
pub use search::{
    completeness_report, enumerate_candidates, run_search, CompletenessReport, SearchConfig,
};
pub use spectrum::{
    bh_algebraicity_test, counting_function, cyclotomic_exponents, galois_twist, interlaces,
    scalar_shift_half, spectrum_of, Angle, Spectrum,
};
pub use step::{eval_step, Sign, StepFunction};
