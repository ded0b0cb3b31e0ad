//! Functions `F_q -> F_q`, held both as a value table and as the reduced
//! polynomial of degree at most `q - 1` that induces them.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Elem, FieldContext, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("value table has {got} entries, expected q = {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error(
        "pairwise and coefficient-support additivity tests disagree ({pairwise} vs {support})"
    )]
    InternalDisagreement { pairwise: bool, support: bool },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The form `x -> a * x^(p^k) + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialForm {
    pub a: Elem,
    pub k: u32,
    pub b: Elem,
}

impl MonomialForm {
    pub fn eval(&self, ctx: &FieldContext, x: Elem) -> Elem {
        let e = (ctx.p() as u64).pow(self.k);
        ctx.add(ctx.mul(self.a, ctx.pow(x, e)), self.b)
    }
}

/// A function on `F_q`.
#[derive(Clone)]
pub struct FqFunction {
    ctx: Arc<FieldContext>,
    table: Vec<Elem>,
    coeffs: Vec<Elem>,
}

impl std::fmt::Debug for FqFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FqFunction")
            .field("q", &self.ctx.q())
            .field("table", &self.table_indices())
            .finish()
    }
}

impl PartialEq for FqFunction {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.q() == other.ctx.q() && self.table == other.table
    }
}

impl Eq for FqFunction {}

/// Reduced coefficients of the function with the given value table.
///
/// On the full grid `F_q` every Lagrange basis polynomial is
/// `1 - (x - a)^(q-1)`, and expanding gives `c_0 = f(0)` and
/// `c_j = -sum_a f(a) a^(q-1-j)` for `j >= 1`, with `0^0 = 1`.
/// The inner sums run over the multiplicative group in log space.
fn interpolate_coeffs(ctx: &FieldContext, table: &[Elem]) -> Vec<Elem> {
    let q = ctx.q() as usize;
    let order = (q - 1) as u64;
    let mut coeffs = vec![Elem::ZERO; q];
    coeffs[0] = table[0];
    // (log a, f(a)) for nonzero a with f(a) != 0
    let support: Vec<(u64, Elem)> = (1..q)
        .filter(|&a| !table[a].is_zero())
        .map(|a| {
            let x = Elem::from_index(a as u32);
            (ctx.log(x).unwrap() as u64, table[a])
        })
        .collect();
    for (j, c) in coeffs.iter_mut().enumerate().skip(1) {
        let e = (order - j as u64) % order;
        let mut acc = if j == q - 1 { table[0] } else { Elem::ZERO };
        for &(la, fa) in &support {
            acc = ctx.add(acc, ctx.mul(fa, ctx.antilog(la * e)));
        }
        *c = ctx.neg(acc);
    }
    coeffs
}

/// Horner evaluation of a coefficient list (constant term first).
pub fn horner(ctx: &FieldContext, coeffs: &[Elem], x: Elem) -> Elem {
    coeffs
        .iter()
        .rev()
        .fold(Elem::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
}

impl FqFunction {
    /// Lagrange interpolation of a full value table.
    pub fn interpolate(ctx: Arc<FieldContext>, table: Vec<Elem>) -> Result<Self, PolyError> {
        let q = ctx.q() as usize;
        if table.len() != q {
            return Err(PolyError::LengthMismatch {
                got: table.len(),
                expected: q,
            });
        }
        if let Some(bad) = table.iter().find(|x| x.index() >= ctx.q()) {
            return Err(ctx.elem(bad.index() as u64).unwrap_err().into());
        }
        let coeffs = interpolate_coeffs(&ctx, &table);
        Ok(FqFunction { ctx, table, coeffs })
    }

    /// From raw value-table indices.
    pub fn from_table_indices(ctx: Arc<FieldContext>, table: &[u32]) -> Result<Self, PolyError> {
        let t = table.iter().map(|&i| Elem::from_index(i)).collect();
        Self::interpolate(ctx, t)
    }

    /// From polynomial coefficients of any length; reduces mod `x^q - x`.
    pub fn from_coefficients(ctx: Arc<FieldContext>, coeffs: &[Elem]) -> Result<Self, PolyError> {
        for c in coeffs {
            ctx.elem(c.index() as u64)?;
        }
        let table = ctx.elements().map(|x| horner(&ctx, coeffs, x)).collect();
        Self::interpolate(ctx, table)
    }

    pub fn from_fn(ctx: Arc<FieldContext>, f: impl Fn(&FieldContext, Elem) -> Elem) -> Self {
        let table = ctx.elements().map(|x| f(&ctx, x)).collect();
        Self::interpolate(ctx, table).expect("table built over the field")
    }

    pub fn constant(ctx: Arc<FieldContext>, c: Elem) -> Self {
        Self::from_fn(ctx, |_, _| c)
    }

    pub fn identity(ctx: Arc<FieldContext>) -> Self {
        Self::from_fn(ctx, |_, x| x)
    }

    pub fn monomial(ctx: Arc<FieldContext>, e: u64) -> Self {
        Self::from_fn(ctx, |f, x| f.pow(x, e))
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn field(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn table_indices(&self) -> Vec<u32> {
        self.table.iter().map(|x| x.index()).collect()
    }

    /// Reduced coefficients, constant term first, length `q`.
    pub fn coefficients(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Reduced coefficients with trailing zeros removed; empty for the zero function.
    pub fn trimmed_coefficients(&self) -> &[Elem] {
        let len = self
            .coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map_or(0, |i| i + 1);
        &self.coeffs[..len]
    }

    /// Table lookup.
    #[inline]
    pub fn value(&self, x: Elem) -> Elem {
        self.table[x.index() as usize]
    }

    /// Horner evaluation of the reduced polynomial.
    pub fn evaluate(&self, x: Elem) -> Elem {
        horner(&self.ctx, self.trimmed_coefficients(), x)
    }

    /// Degree of the reduced polynomial; 0 for constants.
    pub fn reduced_degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.table.iter().all(|&v| v == self.table[0])
    }

    /// Pointwise image under `g`.
    pub fn map_values(&self, g: impl Fn(&FieldContext, Elem, Elem) -> Elem) -> Self {
        let ctx = self.ctx.clone();
        let table = ctx
            .elements()
            .map(|x| g(&ctx, x, self.table[x.index() as usize]))
            .collect();
        Self::interpolate(ctx, table).expect("table built over the field")
    }

    /// `x -> f(x) + c`.
    pub fn add_constant(&self, c: Elem) -> Self {
        self.map_values(|f, _, v| f.add(v, c))
    }

    /// `x -> f(x) + m x`.
    pub fn add_linear(&self, m: Elem) -> Self {
        self.map_values(|f, x, v| f.add(v, f.mul(m, x)))
    }

    /// `x -> lambda f(x)`.
    pub fn scale(&self, lambda: Elem) -> Self {
        self.map_values(|f, _, v| f.mul(lambda, v))
    }

    /// `x -> f(x + a)`.
    pub fn translate(&self, a: Elem) -> Self {
        let ctx = self.ctx.clone();
        let table = ctx.elements().map(|x| self.value(ctx.add(x, a))).collect();
        Self::interpolate(ctx, table).expect("table built over the field")
    }

    /// Looks for `a x^(p^k) + b` matching the table, smallest `k` first.
    ///
    /// With `b = f(0)` and `a = f(1) - b` forced by the values at 0 and 1,
    /// each `k` leaves exactly one candidate. Constants come back as `(0, 0, f(0))`.
    pub fn detect_monomial_form(&self) -> Option<MonomialForm> {
        let ctx = &*self.ctx;
        let b = self.table[0];
        let a = ctx.sub(self.value(Elem::ONE), b);
        (0..ctx.n())
            .map(|k| MonomialForm { a, k, b })
            .find(|form| ctx.elements().all(|x| form.eval(ctx, x) == self.value(x)))
    }

    fn is_additive_pairwise(&self) -> bool {
        let ctx = &*self.ctx;
        ctx.elements().all(|x| {
            ctx.elements()
                .filter(|y| y.index() >= x.index())
                .all(|y| self.value(ctx.add(x, y)) == ctx.add(self.value(x), self.value(y)))
        })
    }

    fn is_additive_by_support(&self) -> bool {
        let p = self.ctx.p() as usize;
        let mut powers = Vec::new();
        let mut e = 1usize;
        for _ in 0..self.ctx.n() {
            powers.push(e);
            e *= p;
        }
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || powers.contains(&i))
    }

    /// Additivity, decided twice: by all pairs and by the coefficient support.
    pub fn is_additive(&self) -> Result<bool, PolyError> {
        let pairwise = self.is_additive_pairwise();
        let support = self.is_additive_by_support();
        if pairwise != support {
            return Err(PolyError::InternalDisagreement { pairwise, support });
        }
        Ok(pairwise)
    }

    /// Additive up to a constant.
    pub fn is_affine(&self) -> Result<bool, PolyError> {
        let c = self.ctx.neg(self.table[0]);
        self.add_constant(c).is_additive()
    }
}
