//! Direction sets of function graphs over finite fields.
//!
//! For `f: F_q -> F_q` the direction set `D_f` is the set of secant slopes
//! `(f(x) - f(y)) / (x - y)`. This crate computes it exactly over table-driven
//! fields up to `2^16` elements, evaluates the permutation criteria built on
//! the product sets `D_f^-1 D_f` and `D_f^-1 D_f D_f^-1`, and runs exhaustive
//! or sampled campaigns that check those criteria against brute-force oracles.
//!
//! ```
//! use std::sync::Arc;
//! use dirset::{direction_set, FieldContext, FqFunction};
//!
//! let f9 = Arc::new(FieldContext::new(3, 2).unwrap());
//! let cube = FqFunction::monomial(f9.clone(), 3);
//! // (x^3 - y^3) / (x - y) = (x - y)^2 in characteristic 3
//! assert_eq!(*direction_set(&cube).set(), f9.mult_subgroup(2).unwrap());
//! ```

pub mod campaign;
pub mod cli;
pub mod criteria;
pub mod direction;
pub mod field;
pub mod poly;
pub mod set;

pub use campaign::{
    run_campaign, run_search, CampaignError, CampaignSpec, Family, SearchReport, Theorem,
    VerificationReport,
};
pub use criteria::{
    cor1_criterion, cor2_criterion, is_permutation_oracle, main2_criterion, result1_check,
    result2_check, sziklai_classify, Cor2Outcome, CriteriaError, SziklaiOutcome, Verdict,
    VerdictKind,
};
pub use direction::{
    build_h_set, direction_set, direction_set_within, inverse_set, line_intersection_count,
    product_set, ratio_stabilizer, shift_set, theorem1_check, DirectionError, DirectionSet,
    HSetReport, LineIncidence, Theorem1Check,
};
pub use field::{Elem, FieldContext, FieldDescription, FieldError};
pub use poly::{FqFunction, MonomialForm, PolyError};
pub use set::ElementSet;
