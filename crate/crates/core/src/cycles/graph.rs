//! Subvarieties in graph form: some coordinates are polynomials in the
//! remaining free ones, optionally cut by one residual equation in the free
//! coordinates.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{CycleError, Hints};
use crate::poly::{MultiPoly, Rational};
use crate::puiseux::roots::rational_roots;

/// Rank of a homogeneous quadratic form; rank 3 or more means irreducible
/// even over C.
pub(crate) fn quadric_rank(q: &MultiPoly) -> Option<usize> {
    let k = q.nvars();
    if q.is_zero() || q.terms().any(|(m, _)| m.degree() != 2) {
        return None;
    }
    let half = Rational::new(1.into(), 2.into());
    let mut a = alloc::vec![alloc::vec![Rational::zero(); k]; k];
    for (m, c) in q.terms() {
        let idx: Vec<usize> = (0..k).filter(|&i| m.0[i] > 0).collect();
        match idx[..] {
            [i] => a[i][i] = c.clone(),
            [i, j] => {
                a[i][j] = c * &half;
                a[j][i] = c * &half;
            }
            _ => return None,
        }
    }
    let mut rank = 0;
    for col in 0..k {
        let Some(p) = (rank..k).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..k {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[rank][col];
                for c in col..k {
                    let v = &a[rank][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Graph {
    pub vars: Vec<String>,
    pub solved: Vec<(usize, MultiPoly)>,
    pub free: Vec<usize>,
    pub residual: Option<MultiPoly>,
}

impl Graph {
    pub fn ambient(vars: &[String]) -> Self {
        Graph { vars: vars.to_vec(), solved: Vec::new(), free: (0..vars.len()).collect(), residual: None }
    }

    pub fn dim(&self) -> usize {
        self.free.len() - usize::from(self.residual.is_some())
    }

    pub fn restrict(&self, h: &MultiPoly) -> MultiPoly {
        let mut r = h.clone();
        for (i, e) in &self.solved {
            if r.depends_on(*i) {
                r = r.substitute_var(*i, e);
            }
        }
        r
    }

    /// Certified vanishing of `h` on the whole set: exact after substitution
    /// or divisible by the residual.
    pub fn vanishes_on(&self, h: &MultiPoly) -> bool {
        let r = self.restrict(h);
        if r.is_zero() {
            return true;
        }
        match &self.residual {
            Some(phi) => r.exact_div(phi).is_ok(),
            None => false,
        }
    }

    pub fn equations(&self) -> Vec<MultiPoly> {
        let mut out: Vec<MultiPoly> = self
            .solved
            .iter()
            .map(|(i, e)| (&MultiPoly::var(&self.vars, *i) - e).primitive())
            .collect();
        if let Some(r) = &self.residual {
            out.push(r.primitive());
        }
        out
    }

    /// `other` is contained in `self`.
    pub fn contains(&self, other: &Graph) -> bool {
        self.equations().iter().all(|e| other.vanishes_on(e))
    }

    pub fn same_germ(&self, other: &Graph) -> bool {
        self.dim() == other.dim() && self.contains(other) && other.contains(self)
    }

    pub fn through_origin(&self) -> bool {
        self.solved.iter().all(|(_, e)| e.constant_term().is_zero())
            && self.residual.as_ref().map_or(true, |r| r.constant_term().is_zero())
    }

    /// Restricts to a subgraph `e` expressed in this graph's free coordinates.
    /// The residual of `self`, if any, must already be accounted for in `e`.
    pub fn combine(&self, e: &Graph) -> Graph {
        let mut solved: Vec<(usize, MultiPoly)> =
            self.solved.iter().map(|(i, expr)| (*i, e.restrict(expr))).collect();
        solved.extend(e.solved.iter().cloned());
        solved.sort_by_key(|(i, _)| *i);
        if let Some(r) = &e.residual {
            // canonical representatives modulo the residual equation
            for (_, expr) in solved.iter_mut() {
                if let Ok((_, rem)) = expr.div_rem(r) {
                    *expr = rem;
                }
            }
        }
        Graph { vars: self.vars.clone(), solved, free: e.free.clone(), residual: e.residual.clone() }
    }

    fn sub(&self, i: usize, expr: MultiPoly) -> Graph {
        Graph {
            vars: self.vars.clone(),
            solved: alloc::vec![(i, expr)],
            free: self.free.iter().copied().filter(|&j| j != i).collect(),
            residual: None,
        }
    }

    fn with_residual(&self, r: MultiPoly) -> Graph {
        Graph { vars: self.vars.clone(), solved: Vec::new(), free: self.free.clone(), residual: Some(r.primitive()) }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eqs = self.equations();
        if eqs.is_empty() {
            return write!(f, "C^{}", self.vars.len());
        }
        write!(f, "V(")?;
        for (k, e) in eqs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

/// A variable occurring linearly with constant coefficient: `r = c*v + s`
/// gives `v = -s/c`.
pub(crate) fn linear_solve(r: &MultiPoly) -> Option<(usize, MultiPoly)> {
    // prefer the last coordinate, which keeps the distinguished one free
    for i in r.support_vars().into_iter().rev() {
        if r.degree_in(i) != 1 {
            continue;
        }
        let cs = r.coefficients_in(i);
        if cs[1].is_constant() {
            let c = cs[1].constant_term();
            return Some((i, cs[0].scale(&(-Rational::one() / c))));
        }
    }
    None
}

/// Rational linear factors of a binary form in coordinates `a`, `b`, as
/// polynomials `q*a - p*b` (or `b`).
fn binary_linear_factors(form: &MultiPoly, a: usize, b: usize) -> Result<Vec<MultiPoly>, CycleError> {
    let cs = form.coefficients_in(a);
    let d = form.total_degree();
    let mut u: Vec<Rational> = cs.iter().map(|c| c.terms().next().map(|(_, q)| q.clone()).unwrap_or_else(Rational::zero)).collect();
    let vars = form.vars();
    let mut out = Vec::new();
    if (u.len() as u32) < d + 1 {
        out.push(MultiPoly::var(vars, b));
    }
    while u.first().map_or(false, Zero::is_zero) {
        u.remove(0);
        out.push(MultiPoly::var(vars, a));
    }
    let (roots, _) = rational_roots(&u).map_err(|e| CycleError::DecompositionFailure(format!("{}", e)))?;
    for (rho, _) in roots {
        // a = rho * b
        let q = Rational::from_integer(rho.denom().clone());
        let p = Rational::from_integer(rho.numer().clone());
        out.push(&MultiPoly::var(vars, a).scale(&q) - &MultiPoly::var(vars, b).scale(&p));
    }
    Ok(out)
}

pub(crate) struct Decomposer<'a> {
    pub hints: &'a Hints,
    pub warnings: &'a mut Vec<String>,
}

impl Decomposer<'_> {
    /// Irreducible pieces (as far as supported) of `V(h)` inside the space
    /// of `within`'s free coordinates, with multiplicities; only pieces
    /// through the origin are kept.
    pub fn hypersurface(&mut self, h: &MultiPoly, within: &Graph) -> Result<Vec<(Graph, u32)>, CycleError> {
        if h.is_zero() {
            return Err(CycleError::ImproperIntersection(format!("equation vanishes identically on {}", within)));
        }
        let base = Graph { vars: within.vars.clone(), solved: Vec::new(), free: within.free.clone(), residual: None };
        let mut out = Vec::new();
        if !h.constant_term().is_zero() {
            return Ok(out);
        }
        let (e, rest) = h.monomial_split()?;
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                out.push((base.sub(i, MultiPoly::zero(&base.vars)), k));
            }
        }
        self.factor(&rest, 1, &base, &mut out)?;
        out.retain(|(g, _)| g.through_origin());
        Ok(out)
    }

    fn factor(&mut self, r: &MultiPoly, m: u32, base: &Graph, out: &mut Vec<(Graph, u32)>) -> Result<(), CycleError> {
        if r.is_constant() || !r.constant_term().is_zero() {
            return Ok(());
        }
        if let Some(factors) = self.hints.decomposition_of(r) {
            for (p, k) in factors {
                self.factor(&p, m * k, base, out)?;
            }
            return Ok(());
        }
        if let Some((p, k)) = r.perfect_power() {
            if k >= 2 {
                return self.factor(&p, m * k, base, out);
            }
        }
        if let Some((i, expr)) = linear_solve(r) {
            out.push((base.sub(i, expr), m));
            return Ok(());
        }
        // linear factors through the origin divide the lowest homogeneous part
        let low = r.homogeneous_part(r.order().unwrap_or(0));
        let sv = low.support_vars();
        if sv.len() == 2 {
            let mut rest = r.clone();
            let mut found = false;
            for l in binary_linear_factors(&low, sv[0], sv[1])? {
                let mut k = 0;
                while let Ok(q) = rest.exact_div(&l) {
                    rest = q;
                    k += 1;
                }
                if k > 0 {
                    found = true;
                    self.factor(&l, m * k, base, out)?;
                }
            }
            if found {
                return self.factor(&rest, m, base, out);
            }
        }
        if r.support_vars().len() > 2 && r.num_terms() > 2 && quadric_rank(r).map_or(true, |k| k < 3) {
            self.warnings.push(format!("treating {} as irreducible", r.primitive()));
        }
        out.push((base.with_residual(r.clone()), m));
        Ok(())
    }

    /// `D . V(h)` for a graph `D` of dimension at least 2.
    pub fn intersect(&mut self, d: &Graph, h: &MultiPoly) -> Result<Vec<(Graph, u32)>, CycleError> {
        self.intersect_depth(d, h, 0)
    }

    fn intersect_depth(&mut self, d: &Graph, h: &MultiPoly, depth: u32) -> Result<Vec<(Graph, u32)>, CycleError> {
        let r = d.restrict(h);
        if d.vanishes_on(h) {
            return Err(CycleError::ImproperIntersection(format!("{} lies in V({})", d, h)));
        }
        let pieces = self.hypersurface(&r, d)?;
        let mut out = Vec::new();
        match &d.residual {
            None => {
                for (e, m) in pieces {
                    out.push((d.combine(&e), m));
                }
            }
            Some(phi) => {
                // V(phi) . V(r) = sum over pieces E of V(r) of E . V(phi)
                for (e, m) in pieces {
                    let phi_e = e.restrict(phi);
                    let sub = if e.residual.is_none() {
                        let inner = Graph { residual: None, ..e.clone() };
                        self.hypersurface(&phi_e, &inner)?
                            .into_iter()
                            .map(|(f, m2)| (inner.combine(&f), m2))
                            .collect::<Vec<_>>()
                    } else if depth < 2 {
                        self.intersect_depth(&e, &phi_e, depth + 1)?
                    } else {
                        return Err(CycleError::DecompositionFailure(format!(
                            "intersection of {} with V({}) needs a decomposition hint",
                            d, h
                        )));
                    };
                    for (f, m2) in sub {
                        out.push((d.combine(&f), m * m2));
                    }
                }
            }
        }
        out.retain(|(g, _)| g.through_origin());
        Ok(out)
    }
}

/// Sums multiplicities of pieces describing the same germ.
pub(crate) fn merge(pieces: Vec<(Graph, u32)>) -> Vec<(Graph, u32)> {
    let mut out: Vec<(Graph, u32)> = Vec::new();
    for (g, m) in pieces {
        match out.iter_mut().find(|(h, _)| h.same_germ(&g)) {
            Some((_, k)) => *k += m,
            None => out.push((g, m)),
        }
    }
    out
}
