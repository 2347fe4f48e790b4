use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed};

use super::expand::{puiseux_branches, PARAM};
use super::{BranchParam, PuiseuxError};
use crate::poly::{series_order, substitute, CoefficientField, MultiPoly, PolyError, PuiseuxSeries, Rational, SeriesOrder};

/// A variable that occurs linearly with constant coefficient: `eq = c*v + r`.
fn linear_solve(eq: &MultiPoly) -> Option<(usize, MultiPoly)> {
    for i in eq.support_vars() {
        if eq.degree_in(i) != 1 {
            continue;
        }
        let cs = eq.coefficients_in(i);
        if cs[1].is_constant() {
            let c = cs[1].constant_term();
            return Some((i, cs[0].scale(&(-Rational::one() / c))));
        }
    }
    None
}

/// Branches of the curve cut out by `equations`, assumed to be in
/// binomial-and-linear normal form: after eliminating every variable that
/// occurs linearly with constant coefficient, either one free variable is
/// left, or a single equation in exactly two free variables.
pub fn parameterize_component(
    equations: &[MultiPoly],
    vars: &[String],
    trunc: i64,
) -> Result<Vec<BranchParam>, PuiseuxError> {
    let mut eqs: Vec<MultiPoly> = equations
        .iter()
        .map(|e| e.embed(vars))
        .collect::<Result<_, PolyError>>()?;
    let mut solved: Vec<(usize, MultiPoly)> = Vec::new();
    loop {
        eqs.retain(|e| !e.is_zero());
        if eqs.iter().any(MultiPoly::is_constant) {
            return Err(PuiseuxError::NotThroughOrigin);
        }
        let Some((k, (i, expr))) = eqs.iter().enumerate().find_map(|(k, e)| linear_solve(e).map(|s| (k, s))) else {
            break;
        };
        eqs.remove(k);
        for e in eqs.iter_mut() {
            *e = e.substitute_var(i, &expr);
        }
        for (_, s) in solved.iter_mut() {
            *s = s.substitute_var(i, &expr);
        }
        solved.push((i, expr));
    }
    let free: Vec<usize> = (0..vars.len()).filter(|i| !solved.iter().any(|(j, _)| j == i)).collect();
    let field = CoefficientField::Rational;
    let free_branches: Vec<(BTreeMap<String, PuiseuxSeries>, CoefficientField, u32)> = match (eqs.len(), free.len()) {
        (0, 1) => {
            let mut a = BTreeMap::new();
            a.insert(vars[free[0]].clone(), PuiseuxSeries::parameter(PARAM, field.clone()));
            alloc::vec![(a, field, 1)]
        }
        (1, 2) => {
            let names: Vec<String> = free.iter().map(|&i| vars[i].clone()).collect();
            let phi = eqs[0].embed(&names).map_err(|_| {
                PuiseuxError::NotNormalForm(format!("residual equation {} involves solved variables", eqs[0]))
            })?;
            puiseux_branches(&phi, trunc)?
                .into_iter()
                .map(|b| (b.assignment(), b.field, b.conjugates))
                .collect()
        }
        (e, f) => {
            return Err(PuiseuxError::NotNormalForm(format!(
                "{} residual equation(s) in {} free variable(s)",
                e, f
            )))
        }
    };
    let mut out = Vec::new();
    for (mut assignment, field, conjugates) in free_branches {
        for &i in &free {
            assignment.entry(vars[i].clone()).or_insert_with(|| PuiseuxSeries::zero(PARAM, field.clone()));
        }
        let free_only: BTreeMap<String, PuiseuxSeries> = assignment.clone();
        let mut series = Vec::with_capacity(vars.len());
        for (i, v) in vars.iter().enumerate() {
            let s = match solved.iter().find(|(j, _)| *j == i) {
                Some((_, expr)) if expr.is_zero() => PuiseuxSeries::zero(PARAM, field.clone()),
                Some((_, expr)) => substitute(expr, &free_only)?,
                None => assignment[v].clone(),
            };
            if let Ok(SeriesOrder::Finite(q)) = series_order(&s) {
                if !q.is_positive() {
                    return Err(PuiseuxError::NotThroughOrigin);
                }
            }
            series.push(s.with_field(&field)?);
        }
        out.push(BranchParam { vars: vars.to_vec(), series, equations: equations.to_vec(), field, conjugates });
    }
    Ok(out)
}

/// Intersection multiplicity of one geometric branch with `V(g)`:
/// the order of `g` along the branch.
pub fn branch_multiplicity(b: &BranchParam, g: &MultiPoly) -> Result<u64, PuiseuxError> {
    let mut a = b.assignment();
    for v in g.vars() {
        if !a.contains_key(v) && g.var_index(v).map(|i| g.depends_on(i)).unwrap_or(false) {
            return Err(PolyError::Unassigned(v.clone()).into());
        }
        a.entry(v.clone()).or_insert_with(|| PuiseuxSeries::zero(PARAM, b.field.clone()));
    }
    a.retain(|k, _| g.vars().contains(k));
    if g.is_constant() {
        return if g.is_zero() { Err(PuiseuxError::InfiniteContact) } else { Ok(0) };
    }
    match series_order(&substitute(g, &a)?)? {
        SeriesOrder::Infinite => Err(PuiseuxError::InfiniteContact),
        SeriesOrder::Finite(q) if q.is_integer() && !q.is_negative() => {
            Ok(q.to_integer().try_into().unwrap_or(u64::MAX))
        }
        SeriesOrder::Finite(q) => Err(PuiseuxError::UnsupportedShape(format!("non-integral order {}", q))),
    }
}
