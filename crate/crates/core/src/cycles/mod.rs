//! Polar and Lê cycles of `f` with respect to coordinates `z0, ..., zn`,
//! and the intersection numbers built from them.

mod graph;
mod hints;

pub use hints::{DecompositionHint, Hints, ParamHint};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use graph::{merge, Decomposer, Graph};

use crate::poly::{series_order, substitute, MultiPoly, PolyError, PuiseuxSeries, SeriesOrder};
use crate::puiseux::{parameterize_component, BranchParam, PuiseuxError};

/// Upper bound for automatic truncation doubling.
pub const DEFAULT_TRUNC_CAP: i64 = 512;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycleError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Puiseux(#[from] PuiseuxError),
    #[error("coordinate list must contain every variable of f: missing `{0}`")]
    UnknownCoordinate(String),
    #[error("f must vanish with its gradient at the origin: {0}")]
    NotSingular(String),
    #[error("improper intersection: {0}")]
    ImproperIntersection(String),
    #[error("decomposition failure: {0}")]
    DecompositionFailure(String),
    #[error("Teissier identity fails on {component}: n = {n}, m = {m}, polar contact = {polar}")]
    TeissierViolation { component: String, n: u64, m: u64, polar: u64 },
    #[error("hint rejected: {0}")]
    HintMismatch(String),
}

impl CycleError {
    /// True when a larger truncation might resolve the failure.
    pub fn is_indeterminate(&self) -> bool {
        matches!(
            self,
            CycleError::Poly(PolyError::IndeterminateOrder(_))
                | CycleError::Puiseux(PuiseuxError::Poly(PolyError::IndeterminateOrder(_)))
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleComponent {
    pub name: String,
    pub equations: Vec<MultiPoly>,
    pub multiplicity: u32,
    pub dimension: usize,
    pub parameterization: Option<BranchParam>,
    pub conjugates: u32,
    graph: Graph,
    branch_index: usize,
    trunc: i64,
}

impl CycleComponent {
    fn from_graph(g: &Graph, multiplicity: u32) -> Self {
        CycleComponent {
            name: format!("{}", g),
            equations: g.equations(),
            multiplicity,
            dimension: g.dim(),
            parameterization: None,
            conjugates: 1,
            graph: g.clone(),
            branch_index: 0,
            trunc: 0,
        }
    }

    fn point(vars: &[String], multiplicity: u32) -> Self {
        let g = Graph {
            vars: vars.to_vec(),
            solved: (0..vars.len()).map(|i| (i, MultiPoly::zero(vars))).collect(),
            free: Vec::new(),
            residual: None,
        };
        CycleComponent { name: "[0]".into(), ..Self::from_graph(&g, multiplicity) }
    }

    /// Number of geometric components times multiplicity.
    pub fn weight(&self) -> u64 {
        self.multiplicity as u64 * self.conjugates as u64
    }

    fn reparameterized(&self, trunc: i64) -> Result<Self, CycleError> {
        let mut bs = parameterize_component(&self.graph.equations(), &self.graph.vars, trunc)?;
        if self.branch_index >= bs.len() {
            return Err(CycleError::DecompositionFailure(format!("branch set of {} changed", self.name)));
        }
        Ok(CycleComponent { parameterization: Some(bs.swap_remove(self.branch_index)), trunc, ..self.clone() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cycle {
    pub vars: Vec<String>,
    pub components: Vec<CycleComponent>,
}

impl Cycle {
    pub fn zero(vars: &[String]) -> Self {
        Cycle { vars: vars.to_vec(), components: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Total weight: for a point cycle this is its degree at the origin.
    pub fn total(&self) -> u64 {
        self.components.iter().map(CycleComponent::weight).sum()
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.multiplicity != 1 {
                write!(f, "{}", c.multiplicity)?;
            }
            write!(f, "{}", c.name)?;
            if c.conjugates > 1 {
                write!(f, " [{} conjugate branches]", c.conjugates)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeOptions {
    /// Initial series truncation; `None` means four times the degree of f.
    pub trunc: Option<i64>,
    pub trunc_cap: i64,
    pub hints: Hints,
}

impl Default for CascadeOptions {
    fn default() -> Self {
        CascadeOptions { trunc: None, trunc_cap: DEFAULT_TRUNC_CAP, hints: Hints::default() }
    }
}

/// Output of [`polar_le_cascade`]: `gamma[k]` is `Γ^k` for `k = 1..=n+1`
/// (`gamma[0]` is empty), `lambda[k]` is `Λ^k` for `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cascade {
    pub f: MultiPoly,
    pub vars: Vec<String>,
    pub gamma: Vec<Cycle>,
    pub lambda: Vec<Cycle>,
    pub warnings: Vec<String>,
    pub trunc: i64,
    pub options: CascadeOptions,
}

impl Cascade {
    /// Largest `k` with `Λ^k` nonzero; the dimension of the critical locus.
    pub fn sigma_dim(&self) -> Option<usize> {
        (0..self.lambda.len()).rev().find(|&k| !self.lambda[k].is_zero())
    }

    pub fn gamma1(&self) -> &Cycle {
        &self.gamma[1]
    }

    pub fn lambda0(&self) -> u64 {
        self.lambda[0].total()
    }
}

fn curve_components(g: &Graph, mult: u32, trunc: i64, hints: &Hints) -> Result<Vec<CycleComponent>, CycleError> {
    let base = CycleComponent::from_graph(g, mult);
    let eqs = g.equations();
    let hinted = hints.parameterization_for(&base.name, &eqs, &g.vars)?;
    let branches = match hinted {
        Some(a) => {
            let first = a.values().next().cloned().ok_or_else(|| CycleError::HintMismatch(base.name.clone()))?;
            vec![BranchParam {
                vars: g.vars.clone(),
                series: g.vars.iter().map(|v| a[v].clone()).collect(),
                equations: eqs.clone(),
                field: first.field().clone(),
                conjugates: 1,
            }]
        }
        None => match parameterize_component(&eqs, &g.vars, trunc) {
            Ok(b) => b,
            Err(e @ (PuiseuxError::UnsupportedShape(_) | PuiseuxError::NotNormalForm(_))) => {
                return Err(CycleError::DecompositionFailure(format!(
                    "{}: {}; supply a parameterization hint for `{}`",
                    base.name, e, base.name
                )))
            }
            Err(e) => return Err(e.into()),
        },
    };
    let several = branches.len() > 1;
    Ok(branches
        .into_iter()
        .enumerate()
        .map(|(i, b)| CycleComponent {
            name: if several { format!("{} #{}", base.name, i + 1) } else { base.name.clone() },
            dimension: 1,
            conjugates: b.conjugates,
            parameterization: Some(b),
            branch_index: i,
            trunc,
            ..base.clone()
        })
        .collect())
}

/// `g` restricted to the branch of a curve component, with the truncation
/// refined up to `cap` until its order is certified.
pub fn certified_restriction(c: &CycleComponent, g: &MultiPoly, cap: i64) -> Result<PuiseuxSeries, CycleError> {
    let mut c = c.clone();
    loop {
        let b = c
            .parameterization
            .as_ref()
            .ok_or_else(|| CycleError::DecompositionFailure(format!("{} has no parameterization", c.name)))?;
        let mut a = b.assignment();
        for v in g.vars() {
            a.entry(v.clone()).or_insert_with(|| PuiseuxSeries::zero("t", b.field.clone()));
        }
        a.retain(|k, _| g.vars().contains(k));
        let s = substitute(g, &a)?;
        match series_order(&s) {
            Err(PolyError::IndeterminateOrder(_)) if c.trunc > 0 && c.trunc * 2 <= cap => {
                c = c.reparameterized(c.trunc * 2)?;
            }
            Err(e) => return Err(e.into()),
            Ok(_) => return Ok(s),
        }
    }
}

fn order_along(c: &CycleComponent, g: &MultiPoly, cap: i64) -> Result<SeriesOrder, CycleError> {
    Ok(series_order(&certified_restriction(c, g, cap)?)?)
}

fn finite_order(c: &CycleComponent, g: &MultiPoly, cap: i64) -> Result<Option<u64>, CycleError> {
    match order_along(c, g, cap)? {
        SeriesOrder::Infinite => Ok(None),
        SeriesOrder::Finite(q) if q.is_integer() => Ok(Some(q.to_integer().try_into().unwrap_or(u64::MAX))),
        SeriesOrder::Finite(q) => Err(PuiseuxError::UnsupportedShape(format!("non-integral order {}", q)).into()),
    }
}

fn critical_membership(d: &CycleComponent, partials: &[MultiPoly], cap: i64) -> Result<bool, CycleError> {
    if partials.iter().all(|p| d.graph.vanishes_on(p)) {
        return Ok(true);
    }
    match d.dimension {
        0 => Ok(true),
        1 => {
            for p in partials {
                if finite_order(d, p, cap)?.is_some() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Ok(false),
    }
}

/// Whether `d` lies in the critical locus of `f`: every partial derivative
/// vanishes on it, certified symbolically or along its parameterization.
pub fn component_membership_in_critical_locus(d: &CycleComponent, f: &MultiPoly) -> Result<bool, CycleError> {
    let f = f.embed(&d.graph.vars)?;
    let partials: Vec<MultiPoly> = (0..f.nvars()).map(|i| f.derivative(i)).collect();
    critical_membership(d, &partials, DEFAULT_TRUNC_CAP)
}

/// Euler characteristic of the complex link of `Σf` at the origin with
/// respect to `z0`, when it can be read off the Lê cycles: an isolated
/// point has an empty link; a curve meets `V(z0 - δ)` in
/// `(|Σf|·V(z0))` points; a smooth linear critical locus transverse to
/// `V(z0)` and containing all lower Lê cycles has a contractible link.
pub fn complex_link_euler(c: &Cascade, z0: &str) -> Result<Option<i64>, CycleError> {
    let Some(top) = c.sigma_dim() else { return Ok(None) };
    let i0 = c.f.var_index(z0)?;
    match top {
        0 => Ok(Some(0)),
        1 => {
            let z = MultiPoly::var(&c.vars, i0);
            let mut chi = 0i64;
            for d in &c.lambda[1].components {
                let Some(k) = finite_order(d, &z, c.options.trunc_cap)? else { return Ok(None) };
                chi += (k * d.conjugates as u64) as i64;
            }
            Ok(Some(chi))
        }
        k => {
            let comps = &c.lambda[k].components;
            if comps.len() != 1 {
                return Ok(None);
            }
            let g = &comps[0].graph;
            let linear = g.residual.is_none()
                && g.free.contains(&i0)
                && g.solved.iter().all(|(_, e)| e.total_degree() <= 1);
            let nested = (1..k).all(|j| c.lambda[j].components.iter().all(|d| g.contains(&d.graph)));
            Ok((linear && nested).then_some(1))
        }
    }
}

/// The cascade `Γ^{k+1} · V(∂f/∂z_k) = Γ^k + Λ^k` for `k = n, ..., 0`,
/// starting from `Γ^{n+1}` = the whole space.
pub fn polar_le_cascade(f: &MultiPoly, coords: &[String], opts: &CascadeOptions) -> Result<Cascade, CycleError> {
    for v in f.vars() {
        let i = f.var_index(v)?;
        if f.depends_on(i) && !coords.contains(v) {
            return Err(CycleError::UnknownCoordinate(v.clone()));
        }
    }
    if coords.is_empty() {
        return Err(CycleError::NotSingular("no coordinates".into()));
    }
    opts.hints.verify()?;
    let f = f.embed(coords)?;
    if !num_traits::Zero::is_zero(&f.constant_term()) {
        return Err(CycleError::NotSingular(format!("f(0) = {}", f.constant_term())));
    }
    for i in 0..f.nvars() {
        let c = f.derivative(i).constant_term();
        if !num_traits::Zero::is_zero(&c) {
            return Err(CycleError::NotSingular(format!("df/d{} = {} at 0", coords[i], c)));
        }
    }
    let mut trunc = opts.trunc.unwrap_or(4 * f.total_degree() as i64).max(4);
    loop {
        match cascade_once(&f, coords, trunc, opts) {
            Err(e) if e.is_indeterminate() && trunc * 2 <= opts.trunc_cap => trunc *= 2,
            other => return other,
        }
    }
}

fn cascade_once(f: &MultiPoly, vars: &[String], trunc: i64, opts: &CascadeOptions) -> Result<Cascade, CycleError> {
    let n = vars.len() - 1;
    let cap = opts.trunc_cap;
    let partials: Vec<MultiPoly> = (0..=n).map(|k| f.derivative(k)).collect();
    let mut warnings = Vec::new();
    let mut gamma = vec![Cycle::zero(vars); n + 2];
    let mut lambda = vec![Cycle::zero(vars); n + 1];
    let ambient = Graph::ambient(vars);
    gamma[n + 1].components.push(CycleComponent::from_graph(&ambient, 1));
    if n == 0 {
        gamma[1].components = curve_components(&ambient, 1, trunc, &opts.hints)?;
    }
    let mut current: Vec<(Graph, u32)> = vec![(ambient, 1)];
    for k in (1..=n).rev() {
        let mut pieces = Vec::new();
        {
            let mut dec = Decomposer { hints: &opts.hints, warnings: &mut warnings };
            for (d, m) in &current {
                for (e, m2) in dec.intersect(d, &partials[k])? {
                    pieces.push((e, m * m2));
                }
            }
        }
        let mut next = Vec::new();
        for (g, m) in merge(pieces) {
            let comps =
                if k >= 2 { vec![CycleComponent::from_graph(&g, m)] } else { curve_components(&g, m, trunc, &opts.hints)? };
            let mut any_polar = false;
            for c in comps {
                if critical_membership(&c, &partials, cap)? {
                    lambda[k].components.push(c);
                } else {
                    any_polar = true;
                    gamma[k].components.push(c);
                }
            }
            if any_polar {
                next.push((g, m));
            }
        }
        current = next;
    }
    let mut l0 = 0u64;
    for c in &gamma[1].components {
        match finite_order(c, &partials[0], cap)? {
            Some(p) => l0 += p * c.weight(),
            None => {
                return Err(CycleError::ImproperIntersection(format!(
                    "{} lies in V(df/d{})",
                    c.name, vars[0]
                )))
            }
        }
    }
    if l0 > 0 {
        lambda[0].components.push(CycleComponent::point(vars, l0 as u32));
    }
    Ok(Cascade { f: f.clone(), vars: vars.to_vec(), gamma, lambda, warnings, trunc, options: opts.clone() })
}

/// Contact data of one polar component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarContact {
    pub name: String,
    pub multiplicity: u32,
    pub conjugates: u32,
    /// `(D·V(z0))` for one geometric branch.
    pub m_branch: u64,
    /// `(D·V(f))` for one geometric branch.
    pub n_branch: u64,
    /// `(D·V(∂f/∂z0))` for one geometric branch.
    pub polar_branch: u64,
    /// Totals over all geometric branches, with multiplicity.
    pub m: u64,
    pub n: u64,
    pub polar: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionData {
    pub gamma1: u64,
    pub lambda0: u64,
    pub tau: u64,
    pub components: Vec<PolarContact>,
}

pub fn intersection_numbers(gamma1: &Cycle, f: &MultiPoly, z0: &str) -> Result<IntersectionData, CycleError> {
    intersection_numbers_capped(gamma1, f, z0, DEFAULT_TRUNC_CAP)
}

pub fn intersection_numbers_capped(
    gamma1: &Cycle,
    f: &MultiPoly,
    z0: &str,
    cap: i64,
) -> Result<IntersectionData, CycleError> {
    let f = f.embed(&gamma1.vars)?;
    let i0 = f.var_index(z0)?;
    let z = MultiPoly::var(&gamma1.vars, i0);
    let df = f.derivative(i0);
    let mut out = IntersectionData { gamma1: 0, lambda0: 0, tau: 0, components: Vec::new() };
    for c in &gamma1.components {
        let improper = |what: &str| CycleError::ImproperIntersection(format!("{} lies in V({})", c.name, what));
        let m = finite_order(c, &z, cap)?.ok_or_else(|| improper(z0))?;
        let n = finite_order(c, &f, cap)?.ok_or_else(|| improper("f"))?;
        let p = finite_order(c, &df, cap)?.ok_or_else(|| improper("df/dz0"))?;
        if n != m + p || m == 0 {
            return Err(CycleError::TeissierViolation { component: c.name.clone(), n, m, polar: p });
        }
        let w = c.weight();
        out.gamma1 += m * w;
        out.tau += n * w;
        out.lambda0 += p * w;
        out.components.push(PolarContact {
            name: c.name.clone(),
            multiplicity: c.multiplicity,
            conjugates: c.conjugates,
            m_branch: m,
            n_branch: n,
            polar_branch: p,
            m: m * w,
            n: n * w,
            polar: p * w,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeNumbers {
    /// `values[k]` is `λ^k` at the origin.
    pub values: Vec<u64>,
    /// Per-component contributions to `values[k]`.
    pub contributions: Vec<Vec<(String, u64)>>,
}

/// `λ^k = (Λ^k · V(z0) ··· V(z_{k-1}))` at the origin.
pub fn le_numbers(c: &Cascade) -> Result<LeNumbers, CycleError> {
    let n = c.vars.len() - 1;
    let cap = c.options.trunc_cap;
    let mut values = vec![0u64; n + 1];
    let mut contributions = vec![Vec::new(); n + 1];
    values[0] = c.lambda0();
    if values[0] > 0 {
        contributions[0].push(("[0]".into(), values[0]));
    }
    let coord = |j: usize| MultiPoly::var(&c.vars, j);
    let mut warnings = Vec::new();
    for k in 1..=n {
        for comp in &c.lambda[k].components {
            let mut total = 0u64;
            let curves: Vec<CycleComponent> = if k == 1 {
                vec![comp.clone()]
            } else {
                let mut pieces = vec![(comp.graph.clone(), comp.multiplicity)];
                let mut dec = Decomposer { hints: &c.options.hints, warnings: &mut warnings };
                for j in 0..k - 1 {
                    let mut next = Vec::new();
                    for (g, m) in &pieces {
                        for (e, m2) in dec.intersect(g, &coord(j))? {
                            next.push((e, m * m2));
                        }
                    }
                    pieces = merge(next);
                }
                let mut out = Vec::new();
                for (g, m) in &pieces {
                    out.extend(curve_components(g, *m, c.trunc, &c.options.hints)?);
                }
                out
            };
            for cv in &curves {
                let o = finite_order(cv, &coord(k - 1), cap)?.ok_or_else(|| {
                    CycleError::ImproperIntersection(format!("{} lies in V({})", cv.name, c.vars[k - 1]))
                })?;
                total += o * cv.weight();
            }
            values[k] += total;
            contributions[k].push((comp.name.clone(), total));
        }
    }
    Ok(LeNumbers { values, contributions })
}

#[cfg(test)]
mod tests;
