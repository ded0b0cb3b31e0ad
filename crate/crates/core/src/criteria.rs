//! Permutation criteria driven by product sets of the direction set, and
//! statement-level checks of the classification results they feed.

use serde::Serialize;
use thiserror::Error;

use crate::direction::{
    direction_set, direction_set_within, inverse_set, product_set, DirectionSet,
};
use crate::field::{Elem, FieldError};
use crate::poly::{FqFunction, MonomialForm, PolyError};
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("reduced degree {degree} is outside 0 < k < q = {q}")]
    DegreeOutOfRange { degree: usize, q: u32 },
    #[error("criterion needs a non-constant function")]
    ConstantFunction,
    #[error("subgroup index must exceed 1, got {0}")]
    TrivialIndex(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// True iff the value table has no repeats.
pub fn is_permutation_oracle(f: &FqFunction) -> bool {
    let mut seen = ElementSet::empty(f.field().q());
    f.table().iter().all(|&v| seen.insert(v))
}

/// `(q + 1) / 2`, rounded down; `s <= half_bound(q)` iff `2s <= q + 1`.
pub fn half_bound(q: u32) -> usize {
    (q as usize).div_ceil(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    PermutationProven,
    Inconclusive,
}

/// Outcome of a sufficient permutation criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// `|D_f^-1 D_f|`.
    pub size: usize,
    /// The value `size` is compared against.
    pub threshold: usize,
}

impl Verdict {
    pub fn fired(&self) -> bool {
        self.kind == VerdictKind::PermutationProven
    }

    pub fn margin(&self) -> i64 {
        self.size as i64 - self.threshold as i64
    }
}

fn quotient_size(dir: &DirectionSet, f: &FqFunction) -> usize {
    let ctx = f.field();
    product_set(ctx, &inverse_set(ctx, dir.set()), dir.set()).len()
}

/// Proven a permutation when `|D_f^-1 D_f| < q - deg f + 2`.
pub fn main2_criterion(f: &FqFunction) -> Result<Verdict, CriteriaError> {
    main2_with(f, &direction_set(f))
}

pub fn main2_with(f: &FqFunction, dir: &DirectionSet) -> Result<Verdict, CriteriaError> {
    let q = f.field().q();
    let degree = f.reduced_degree();
    if degree == 0 || degree >= q as usize {
        return Err(CriteriaError::DegreeOutOfRange { degree, q });
    }
    let size = quotient_size(dir, f);
    let threshold = q as usize + 2 - degree;
    let kind = if size < threshold {
        VerdictKind::PermutationProven
    } else {
        VerdictKind::Inconclusive
    };
    Ok(Verdict {
        kind,
        size,
        threshold,
    })
}

/// Proven a permutation when `|D_f^-1 D_f| <= (q + 1) / 2`.
pub fn cor1_criterion(f: &FqFunction) -> Result<Verdict, CriteriaError> {
    cor1_with(f, &direction_set(f))
}

pub fn cor1_with(f: &FqFunction, dir: &DirectionSet) -> Result<Verdict, CriteriaError> {
    if f.is_constant() {
        return Err(CriteriaError::ConstantFunction);
    }
    let q = f.field().q();
    let size = quotient_size(dir, f);
    let kind = if 2 * size <= q as usize + 1 {
        VerdictKind::PermutationProven
    } else {
        VerdictKind::Inconclusive
    };
    Ok(Verdict {
        kind,
        size,
        threshold: half_bound(q),
    })
}

/// `M_d ∪ {0}` for `d > 1` dividing `q - 1`.
pub fn subgroup_with_zero(f: &FqFunction, d: u64) -> Result<ElementSet, CriteriaError> {
    if d <= 1 {
        return Err(CriteriaError::TrivialIndex(d));
    }
    let mut s = f.field().mult_subgroup(d)?;
    s.insert(Elem::ZERO);
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum SziklaiOutcome {
    NotContained,
    /// `form` is `None` only for a counterexample.
    Contained {
        form: Option<MonomialForm>,
    },
}

impl SziklaiOutcome {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, SziklaiOutcome::Contained { form: None })
    }
}

/// If `D_f ⊆ M_d ∪ {0}`, the function must be `a x^(p^k) + b`.
pub fn sziklai_classify(f: &FqFunction, d: u64) -> Result<SziklaiOutcome, CriteriaError> {
    let permitted = subgroup_with_zero(f, d)?;
    Ok(sziklai_within(f, &permitted))
}

/// [`sziklai_classify`] with the permitted set prebuilt.
pub fn sziklai_within(f: &FqFunction, permitted: &ElementSet) -> SziklaiOutcome {
    match direction_set_within(f, permitted) {
        Err(_) => SziklaiOutcome::NotContained,
        Ok(_) => SziklaiOutcome::Contained {
            form: f.detect_monomial_form(),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum Cor2Outcome {
    FormProven {
        size: usize,
        form: MonomialForm,
    },
    Inconclusive {
        size: usize,
    },
    /// Small triple product but no monomial form.
    Counterexample {
        size: usize,
    },
}

impl Cor2Outcome {
    pub fn size(&self) -> usize {
        match *self {
            Cor2Outcome::FormProven { size, .. }
            | Cor2Outcome::Inconclusive { size }
            | Cor2Outcome::Counterexample { size } => size,
        }
    }
}

/// `D_f^-1 D_f D_f^-1`.
pub fn triple_product(f: &FqFunction, dir: &DirectionSet) -> ElementSet {
    let ctx = f.field();
    let inv = inverse_set(ctx, dir.set());
    product_set(ctx, &product_set(ctx, &inv, dir.set()), &inv)
}

/// If `|D_f^-1 D_f D_f^-1| <= (q + 1) / 2`, the function must be `a x^(p^k) + b`.
pub fn cor2_criterion(f: &FqFunction) -> Cor2Outcome {
    cor2_with(f, &direction_set(f))
}

pub fn cor2_with(f: &FqFunction, dir: &DirectionSet) -> Cor2Outcome {
    let size = triple_product(f, dir).len();
    if 2 * size > f.field().q() as usize + 1 {
        return Cor2Outcome::Inconclusive { size };
    }
    match f.detect_monomial_form() {
        Some(form) => Cor2Outcome::FormProven { size, form },
        None => Cor2Outcome::Counterexample { size },
    }
}

/// Outcome of checking an implication `antecedent => conclusion`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub antecedent: bool,
    pub conclusion: bool,
}

impl Implication {
    pub fn holds(&self) -> bool {
        !self.antecedent || self.conclusion
    }
}

/// `D_f ⊆ M_d` implies a monomial form.
pub fn result1_check(f: &FqFunction, d: u64) -> Result<Implication, CriteriaError> {
    let mut permitted = subgroup_with_zero(f, d)?;
    permitted.remove(Elem::ZERO);
    Ok(result1_within(f, &permitted))
}

pub fn result1_within(f: &FqFunction, subgroup: &ElementSet) -> Implication {
    let antecedent = direction_set_within(f, subgroup).is_ok();
    let conclusion = antecedent && f.detect_monomial_form().is_some();
    Implication {
        antecedent,
        conclusion,
    }
}

/// `|D_f| <= (q + 1) / 2` implies the function is affine.
pub fn result2_check(f: &FqFunction) -> Result<Implication, CriteriaError> {
    result2_with(f, &direction_set(f))
}

pub fn result2_with(f: &FqFunction, dir: &DirectionSet) -> Result<Implication, CriteriaError> {
    let antecedent = 2 * dir.len() <= f.field().q() as usize + 1;
    let conclusion = antecedent && f.is_affine()?;
    Ok(Implication {
        antecedent,
        conclusion,
    })
}
