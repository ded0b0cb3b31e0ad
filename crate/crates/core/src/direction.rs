//! Direction sets, product-set algebra, line incidence, and the H-set
//! construction behind the lower bound on `|(D_f - m)^-1 (D_f - m)|`.

use serde::Serialize;
use thiserror::Error;

use crate::field::{Elem, FieldContext};
use crate::poly::FqFunction;
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirectionError {
    #[error("line y = {m}x + {b} meets the graph in {k} points; need 1 < k < q = {q}")]
    PreconditionViolated { m: Elem, b: Elem, k: usize, q: u32 },
    #[error("ratio set contains zero")]
    ZeroInR,
    #[error("ratio set is empty")]
    EmptyRatioSet,
}

/// The set of slopes `(f(x) - f(y)) / (x - y)` over `x != y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectionSet {
    set: ElementSet,
    contains_zero: bool,
}

impl DirectionSet {
    pub fn set(&self) -> &ElementSet {
        &self.set
    }

    pub fn into_set(self) -> ElementSet {
        self.set
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_zero
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }
}

/// First slope found outside the permitted set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NotContained {
    pub x: Elem,
    pub y: Elem,
    pub slope: Elem,
}

/// Direction set over all unordered pairs.
pub fn direction_set(f: &FqFunction) -> DirectionSet {
    direction_set_of_table(f.field(), f.table())
}

/// Direction set, abandoned at the first slope outside `permitted`.
pub fn direction_set_within(
    f: &FqFunction,
    permitted: &ElementSet,
) -> Result<DirectionSet, NotContained> {
    direction_set_within_table(f.field(), f.table(), permitted)
}

/// [`direction_set`] on a bare value table of length `q`.
pub fn direction_set_of_table(ctx: &FieldContext, table: &[Elem]) -> DirectionSet {
    let mut set = ElementSet::empty(ctx.q());
    for_each_slope(ctx, table, |_, _, s| {
        set.insert(s);
        true
    });
    let contains_zero = set.contains(Elem::ZERO);
    DirectionSet { set, contains_zero }
}

/// [`direction_set_within`] on a bare value table of length `q`.
pub fn direction_set_within_table(
    ctx: &FieldContext,
    table: &[Elem],
    permitted: &ElementSet,
) -> Result<DirectionSet, NotContained> {
    let mut set = ElementSet::empty(ctx.q());
    let mut escape = None;
    for_each_slope(ctx, table, |x, y, s| {
        if !permitted.contains(s) {
            escape = Some(NotContained { x, y, slope: s });
            return false;
        }
        set.insert(s);
        true
    });
    match escape {
        Some(e) => Err(e),
        None => {
            let contains_zero = set.contains(Elem::ZERO);
            Ok(DirectionSet { set, contains_zero })
        }
    }
}

/// Runs `visit(x, y, slope)` over pairs `x < y` until it returns false.
fn for_each_slope(
    ctx: &FieldContext,
    table: &[Elem],
    mut visit: impl FnMut(Elem, Elem, Elem) -> bool,
) {
    assert_eq!(table.len(), ctx.q() as usize, "value table length");
    for (yi, &fy) in table.iter().enumerate() {
        let y = Elem::from_index(yi as u32);
        for (xi, &fx) in table.iter().enumerate().take(yi) {
            let x = Elem::from_index(xi as u32);
            let slope = ctx.div_nonzero(ctx.sub(fx, fy), ctx.sub(x, y));
            if !visit(x, y, slope) {
                return;
            }
        }
    }
}

/// `A^-1 = {a^-1 : a in A, a != 0}`.
pub fn inverse_set(ctx: &FieldContext, a: &ElementSet) -> ElementSet {
    ElementSet::from_iter(
        ctx.q(),
        a.iter()
            .filter(|x| !x.is_zero())
            .map(|x| ctx.inv_nonzero(x)),
    )
}

/// `AB = {ab : a in A, b in B}`.
pub fn product_set(ctx: &FieldContext, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let mut out = ElementSet::empty(ctx.q());
    if a.is_empty() || b.is_empty() {
        return out;
    }
    if a.contains(Elem::ZERO) || b.contains(Elem::ZERO) {
        out.insert(Elem::ZERO);
    }
    for x in a.iter().filter(|x| !x.is_zero()) {
        for y in b.iter().filter(|y| !y.is_zero()) {
            out.insert(ctx.mul(x, y));
        }
    }
    out
}

/// `A - c = {a - c : a in A}`.
pub fn shift_set(ctx: &FieldContext, a: &ElementSet, c: Elem) -> ElementSet {
    ElementSet::from_iter(ctx.q(), a.iter().map(|x| ctx.sub(x, c)))
}

/// `cA = {ca : a in A}`.
pub fn scale_set(ctx: &FieldContext, a: &ElementSet, c: Elem) -> ElementSet {
    ElementSet::from_iter(ctx.q(), a.iter().map(|x| ctx.mul(c, x)))
}

/// `A^-1 A`.
pub fn quotient_set(ctx: &FieldContext, a: &ElementSet) -> ElementSet {
    product_set(ctx, &inverse_set(ctx, a), a)
}

/// Intersection of the line `y = mx + b` with the graph of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LineIncidence {
    pub m: Elem,
    pub b: Elem,
    pub k: usize,
}

pub fn line_intersection_count(f: &FqFunction, m: Elem, b: Elem) -> LineIncidence {
    let ctx = f.field();
    let k = ctx
        .elements()
        .filter(|&x| f.value(x) == ctx.add(ctx.mul(m, x), b))
        .count();
    LineIncidence { m, b, k }
}

fn admissible(f: &FqFunction, m: Elem, b: Elem) -> Result<usize, DirectionError> {
    let q = f.field().q();
    let k = line_intersection_count(f, m, b).k;
    if k <= 1 || k >= q as usize {
        return Err(DirectionError::PreconditionViolated { m, b, k, q });
    }
    Ok(k)
}

/// `{beta != 0 : beta R = R}` for a nonempty set of nonzero elements.
///
/// Any such beta sends `r_1` into `R`, so the candidates are the ratios `r / r_1`.
pub fn ratio_stabilizer(ctx: &FieldContext, r: &ElementSet) -> Result<ElementSet, DirectionError> {
    if r.contains(Elem::ZERO) {
        return Err(DirectionError::ZeroInR);
    }
    let r1 = r.iter().next().ok_or(DirectionError::EmptyRatioSet)?;
    let r1_inv = ctx.inv_nonzero(r1);
    Ok(ElementSet::from_iter(
        ctx.q(),
        r.iter()
            .map(|x| ctx.mul(x, r1_inv))
            .filter(|&beta| r.iter().all(|x| r.contains(ctx.mul(beta, x)))),
    ))
}

/// Everything the H-set argument builds for one secant line.
#[derive(Debug, Clone, Serialize)]
pub struct HSetReport {
    pub m: Elem,
    pub b: Elem,
    /// Points where the line meets the graph.
    pub k: usize,
    /// Root of `g(x) = f(x) - mx - b` used for the translation.
    pub a: Elem,
    /// Value table of `h(x) = g(x + a)`.
    pub h: Vec<Elem>,
    /// Nonzero roots of `h`.
    pub roots: ElementSet,
    /// `{x / (x - y) : h(x) != 0, h(y) = 0}`.
    pub h_set: ElementSet,
    /// `D_h^-1 D_h`.
    pub quotient_set: ElementSet,
    /// `alpha` outside `{0, 1}` and outside `H`.
    pub exceptional: ElementSet,
    /// `{beta != 0 : beta R = R}`.
    pub stabilizer: ElementSet,
    pub h_subset_of_quotient: bool,
    pub meets_size_bound: bool,
    pub contains_one: bool,
    pub excludes_zero: bool,
    pub shift_identity: bool,
    /// Every exceptional `alpha` has `alpha / (alpha - 1)` in the stabilizer.
    pub exceptional_stabilize: bool,
}

impl HSetReport {
    /// Lower bound `q - k + 1` on `|H|`.
    pub fn size_bound(&self) -> usize {
        self.h.len() + 1 - self.k
    }

    pub fn all_hold(&self) -> bool {
        self.h_subset_of_quotient
            && self.meets_size_bound
            && self.contains_one
            && self.excludes_zero
            && self.shift_identity
            && self.exceptional_stabilize
    }
}

pub fn build_h_set(f: &FqFunction, m: Elem, b: Elem) -> Result<HSetReport, DirectionError> {
    let df = direction_set(f);
    build_h_set_with(f, &df, m, b)
}

/// [`build_h_set`] with a precomputed `D_f`.
pub fn build_h_set_with(
    f: &FqFunction,
    df: &DirectionSet,
    m: Elem,
    b: Elem,
) -> Result<HSetReport, DirectionError> {
    let ctx = f.field();
    let q = ctx.q() as usize;
    let k = admissible(f, m, b)?;

    let g = |x: Elem| ctx.sub(f.value(x), ctx.add(ctx.mul(m, x), b));
    let a = ctx
        .elements()
        .find(|&x| g(x).is_zero())
        .expect("admissible line has a root");
    let h: Vec<Elem> = ctx.elements().map(|x| g(ctx.add(x, a))).collect();
    debug_assert!(h[0].is_zero());

    let zeros: Vec<Elem> = ctx
        .elements()
        .filter(|x| h[x.index() as usize].is_zero())
        .collect();
    let roots = ElementSet::from_iter(ctx.q(), zeros.iter().copied().filter(|x| !x.is_zero()));

    let mut h_set = ElementSet::empty(ctx.q());
    for x in ctx.elements().filter(|x| !h[x.index() as usize].is_zero()) {
        for &y in &zeros {
            h_set.insert(ctx.div_nonzero(x, ctx.sub(x, y)));
        }
    }

    let dh = direction_set_of_table(ctx, &h);
    let quotient = quotient_set(ctx, dh.set());

    let mut exceptional = h_set.complement();
    exceptional.remove(Elem::ZERO);
    exceptional.remove(Elem::ONE);
    let stabilizer = ratio_stabilizer(ctx, &roots)?;
    let exceptional_stabilize = exceptional.iter().all(|alpha| {
        let beta = ctx.div_nonzero(alpha, ctx.sub(alpha, Elem::ONE));
        stabilizer.contains(beta)
    });

    Ok(HSetReport {
        m,
        b,
        k,
        a,
        h_subset_of_quotient: h_set.is_subset(&quotient),
        meets_size_bound: h_set.len() + k > q,
        contains_one: h_set.contains(Elem::ONE),
        excludes_zero: !h_set.contains(Elem::ZERO),
        shift_identity: *dh.set() == shift_set(ctx, df.set(), m),
        exceptional_stabilize,
        h,
        roots,
        h_set,
        quotient_set: quotient,
        exceptional,
        stabilizer,
    })
}

/// Sizes behind one instance of the bound `|(D_f - m)^-1 (D_f - m)| >= q - k + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Theorem1Check {
    pub m: Elem,
    pub b: Elem,
    pub k: usize,
    pub quotient_size: usize,
    pub bound: usize,
    pub holds: bool,
}

impl Theorem1Check {
    /// `quotient_size - bound`; negative means the inequality failed.
    pub fn margin(&self) -> i64 {
        self.quotient_size as i64 - self.bound as i64
    }

    /// From `|(D_f - m)^-1 (D_f - m)|` already in hand.
    pub fn from_parts(q: u32, m: Elem, b: Elem, k: usize, quotient_size: usize) -> Self {
        let bound = q as usize + 2 - k;
        Theorem1Check {
            m,
            b,
            k,
            quotient_size,
            bound,
            holds: quotient_size >= bound,
        }
    }
}

pub fn theorem1_check(f: &FqFunction, m: Elem, b: Elem) -> Result<Theorem1Check, DirectionError> {
    let ctx = f.field();
    let k = admissible(f, m, b)?;
    let shifted = shift_set(ctx, direction_set(f).set(), m);
    let size = quotient_set(ctx, &shifted).len();
    Ok(Theorem1Check::from_parts(ctx.q(), m, b, k, size))
}
