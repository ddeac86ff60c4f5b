//! Single, iterated and positive-part residues of expressions.

use num_traits::Zero;
use rayon::prelude::*;

use super::expr::{ExpTerm, Expression};
use super::series::residue_term;
use crate::error::{Error, Result};
use crate::exact::Coeff;

/// Residue at `var = 0` of every term, with the other variables held generic.
pub fn residue_single<C: Coeff>(expr: &Expression<C>, var: usize) -> Result<Expression<C>> {
    residue_filtered(expr, var, |_| true)
}

/// Residue restricted to terms whose exponential coefficient in `var` is strictly positive.
pub fn res_plus<C: Coeff>(expr: &Expression<C>, var: usize) -> Result<Expression<C>> {
    residue_filtered(expr, var, |t| t.exp[var] > Zero::zero())
}

fn residue_filtered<C: Coeff>(
    expr: &Expression<C>,
    var: usize,
    keep: impl Fn(&ExpTerm<C>) -> bool + Sync,
) -> Result<Expression<C>> {
    if var >= expr.nvars() {
        return Err(Error::InvalidInput(format!("variable Y{} out of range", var + 1)));
    }
    let terms: Vec<ExpTerm<C>> = expr.terms().filter(|t| keep(t)).collect();
    let parts: Vec<Result<Option<ExpTerm<C>>>> = terms.par_iter().map(|t| residue_term(t, var)).collect();
    let mut out = Expression::new(expr.nvars());
    for p in parts {
        if let Some(t) = p? {
            out.push(t);
        }
    }
    Ok(out)
}

/// `Res_{Y₁=0} … Res_{Y_{m}=0}` applied innermost-first (Y_m, then Y_{m−1}, …).
pub fn iterated_residue<C: Coeff>(expr: &Expression<C>) -> Result<C> {
    let mut cur = expr.clone();
    for var in (0..expr.nvars()).rev() {
        cur = residue_single(&cur, var)?;
    }
    scalar_value(&cur)
}

/// Sum of the constant terms of a fully reduced expression.
pub fn scalar_value<C: Coeff>(expr: &Expression<C>) -> Result<C> {
    let mut total = C::zero();
    for t in expr.terms() {
        if t.exp.iter().any(|c| !c.is_zero()) || !t.euler.is_empty() {
            return Err(Error::Computation("expression still depends on its variables".into()));
        }
        let c = t.rat.as_constant().ok_or_else(|| Error::Computation(format!("non-constant residue {}", t.rat)))?;
        total.add_assign_ref(&c);
    }
    Ok(total)
}
