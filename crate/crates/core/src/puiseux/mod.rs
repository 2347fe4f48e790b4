//! Newton polygons, Newton–Puiseux expansion of plane-curve germs and
//! parameterization of curve components in graph form.

mod bipoly;
mod component;
mod expand;
pub(crate) mod roots;

pub use component::{branch_multiplicity, parameterize_component};
pub use expand::puiseux_branches;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::Zero;

use crate::poly::{CoefficientField, MultiPoly, PolyError, PuiseuxSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PuiseuxError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("expected a polynomial in exactly two variables, got {0}")]
    NotPlane(usize),
    #[error("curve does not pass through the origin")]
    NotThroughOrigin,
    #[error("repeated factor detected")]
    NonSquareFree,
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("component not in normal form: {0}")]
    NotNormalForm(String),
    #[error("polynomial vanishes identically on the branch")]
    InfiniteContact,
}

/// Compact edge of the Newton polygon. Endpoints are `(i, j)` exponents of
/// `x^i y^j`; branches on this edge satisfy `y ~ c x^(rise/run)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonSegment {
    pub rise: u32,
    pub run: u32,
    pub lattice_length: u32,
    pub start: (u32, u32),
    pub end: (u32, u32),
}

/// Lower-left boundary of the support, by increasing `rise/run`.
pub fn newton_polygon(g: &MultiPoly) -> Result<Vec<NewtonSegment>, PuiseuxError> {
    if g.nvars() != 2 {
        return Err(PuiseuxError::NotPlane(g.nvars()));
    }
    if g.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    if !g.constant_term().is_zero() {
        return Err(PuiseuxError::NotThroughOrigin);
    }
    let pts: Vec<(u32, u32)> = g.terms().map(|(m, _)| (m.0[0], m.0[1])).collect();
    Ok(polygon_of(&pts))
}

pub(crate) fn polygon_of(pts: &[(u32, u32)]) -> Vec<NewtonSegment> {
    let mut out = Vec::new();
    let Some(&imin) = pts.iter().map(|p| &p.0).min() else {
        return out;
    };
    let jmin = pts.iter().map(|p| p.1).min().unwrap_or(0);
    let mut cur = pts.iter().filter(|p| p.0 == imin).min_by_key(|p| p.1).copied().unwrap_or((0, 0));
    while cur.1 > jmin {
        // steepest descent from `cur`, ties broken by the farthest point
        let mut best: Option<(u32, u32)> = None;
        for &p in pts.iter().filter(|p| p.0 > cur.0 && p.1 < cur.1) {
            best = Some(match best {
                None => p,
                Some(b) => {
                    // compare (cur.1 - p.1)/(p.0 - cur.0) against the same for b
                    let lhs = (cur.1 - p.1) as u64 * (b.0 - cur.0) as u64;
                    let rhs = (cur.1 - b.1) as u64 * (p.0 - cur.0) as u64;
                    if lhs > rhs || (lhs == rhs && p.0 > b.0) {
                        p
                    } else {
                        b
                    }
                }
            });
        }
        let Some(next) = best else { break };
        let di = next.0 - cur.0;
        let dj = cur.1 - next.1;
        let g = di.gcd(&dj);
        out.push(NewtonSegment { rise: di / g, run: dj / g, lattice_length: g, start: cur, end: next });
        cur = next;
    }
    out
}

/// One branch (up to conjugacy) of a curve germ, parameterized by `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchParam {
    pub vars: Vec<String>,
    pub series: Vec<PuiseuxSeries>,
    pub equations: Vec<MultiPoly>,
    pub field: CoefficientField,
    /// Number of Galois-conjugate geometric branches this entry stands for.
    pub conjugates: u32,
}

impl BranchParam {
    pub fn assignment(&self) -> BTreeMap<String, PuiseuxSeries> {
        self.vars.iter().cloned().zip(self.series.iter().cloned()).collect()
    }

    pub fn series_of(&self, var: &str) -> Option<&PuiseuxSeries> {
        self.vars.iter().position(|v| v == var).map(|i| &self.series[i])
    }

    pub fn is_exact(&self) -> bool {
        self.series.iter().all(PuiseuxSeries::is_exact)
    }
}

impl core::fmt::Display for BranchParam {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, (v, s)) in self.vars.iter().zip(&self.series).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} = {}", v, s)?;
        }
        if self.conjugates > 1 {
            write!(f, " (x{} conjugates over {})", self.conjugates, self.field)?;
        }
        Ok(())
    }
}
