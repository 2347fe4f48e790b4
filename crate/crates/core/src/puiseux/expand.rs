use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::bipoly::BiPoly;
use super::roots::edge_roots;
use super::{polygon_of, BranchParam, PuiseuxError};
use crate::poly::{CoefficientField, FieldElem, MultiPoly, PuiseuxSeries};

pub(crate) const PARAM: &str = "t";

#[derive(Debug, Clone)]
pub(crate) struct PlaneBranch {
    pub x: PuiseuxSeries,
    pub y: PuiseuxSeries,
    pub field: CoefficientField,
    pub conjugates: u32,
}

/// Branches at the origin of a plane curve `g(x, y) = 0`, one entry per
/// Galois orbit. Every series is in integer powers of `t`; coefficients at
/// exponents `>= trunc` are left unknown unless the branch is exact.
pub fn puiseux_branches(g: &MultiPoly, trunc: i64) -> Result<Vec<BranchParam>, PuiseuxError> {
    if g.nvars() != 2 {
        return Err(PuiseuxError::NotPlane(g.nvars()));
    }
    if g.is_zero() {
        return Err(crate::poly::PolyError::ZeroPolynomial.into());
    }
    if !num_traits::Zero::is_zero(&g.constant_term()) {
        return Err(PuiseuxError::NotThroughOrigin);
    }
    let raw = plane_branches(&BiPoly::from_multipoly(g), trunc)?;
    Ok(raw
        .into_iter()
        .map(|b| BranchParam {
            vars: g.vars().to_vec(),
            series: vec![b.x, b.y],
            equations: vec![g.clone()],
            field: b.field,
            conjugates: b.conjugates,
        })
        .collect())
}

pub(crate) fn plane_branches(g: &BiPoly, trunc: i64) -> Result<Vec<PlaneBranch>, PuiseuxError> {
    branches_rec(g, trunc.max(1), 0)
}

fn branches_rec(g: &BiPoly, trunc: i64, depth: i64) -> Result<Vec<PlaneBranch>, PuiseuxError> {
    if depth > trunc {
        // a multiple root that never separates within the truncation
        return Err(PuiseuxError::NonSquareFree);
    }
    let field = g.field.clone();
    let t = PuiseuxSeries::parameter(PARAM, field.clone());
    let zero = PuiseuxSeries::zero(PARAM, field.clone());
    let ((a, b), rest) = g.monomial_split();
    if a >= 2 || b >= 2 {
        return Err(PuiseuxError::NonSquareFree);
    }
    let mut out = Vec::new();
    if a == 1 {
        out.push(PlaneBranch { x: zero.clone(), y: t.clone(), field: field.clone(), conjugates: 1 });
    }
    if b == 1 {
        out.push(PlaneBranch { x: t.clone(), y: zero.clone(), field: field.clone(), conjugates: 1 });
    }
    if !rest.constant_is_zero() {
        return Ok(out);
    }
    for seg in polygon_of(&rest.support()) {
        let (p, q) = (seg.run, seg.rise);
        let (ie, je) = seg.end;
        let psi: Vec<FieldElem> =
            (0..=seg.lattice_length).map(|k| rest.coeff(ie - q * k, je + p * k)).collect();
        let n = p * ie + q * je;
        // x = W^u s^p, y = W^v s^q with v p - u q = 1
        let u = (0..p).find(|u| (u * q + 1) % p == 0).unwrap_or(0);
        let v = (1 + u * q) / p;
        for root in edge_roots(&field, &psi)? {
            let k = &root.field;
            let ca = k.powi(&root.value, u as i64)?;
            let cb = k.powi(&root.value, v as i64)?;
            let g1 = rest.weighted_shift(k, &ca, &cb, p, q, n)?;
            let subs = if root.multiplicity == 1 {
                vec![simple_root_branch(&g1, trunc)?]
            } else {
                branches_rec(&g1, trunc, depth + 1)?
            };
            for sub in subs {
                let kf = sub.field.clone();
                let s = sub.x;
                let ca_s = PuiseuxSeries::constant(PARAM, kf.clone(), ca.clone());
                let cb_s = PuiseuxSeries::constant(PARAM, kf.clone(), cb.clone());
                let x = s.pow(p)?.mul(&ca_s)?;
                let y = s.pow(q)?.mul(&cb_s.add(&sub.y)?)?;
                out.push(PlaneBranch { x, y, field: kf, conjugates: root.conjugates * sub.conjugates });
            }
        }
    }
    Ok(out)
}

/// Implicit-function solution `y1 = h(s)` of `g1(s, y1) = 0` returned as
/// the branch `(s, h(s))`.
fn simple_root_branch(g1: &BiPoly, trunc: i64) -> Result<PlaneBranch, PuiseuxError> {
    let k = g1.field.clone();
    let s = PuiseuxSeries::parameter(PARAM, k.clone());
    let d = g1.coeff(0, 1);
    if d.is_zero() {
        return Err(PuiseuxError::UnsupportedShape(format!("singular implicit equation over {}", k)));
    }
    let h = if let Some((rest, d)) = g1.linear_in_y() {
        let scale = k.neg(&k.inv(&d)?);
        PuiseuxSeries::from_terms(PARAM, k.clone(), 1, rest.into_iter().map(|(i, c)| (i as i64, k.mul(&c, &scale))), None)
    } else {
        let inv_d = PuiseuxSeries::constant(PARAM, k.clone(), k.inv(&d)?);
        let mut h = PuiseuxSeries::from_terms(PARAM, k.clone(), 1, [], Some(trunc));
        for _ in 0..=trunc + 1 {
            let r = g1.eval_series(&s, &h)?.truncate(trunc);
            let next = h.sub(&r.mul(&inv_d)?)?.truncate(trunc);
            if next == h {
                break;
            }
            h = next;
        }
        // a polynomial solution is certified by exact substitution
        let exact = PuiseuxSeries::from_terms(PARAM, k.clone(), 1, h.terms().map(|(e, c)| (*e, c.clone())), None);
        if g1.eval_series(&s, &exact)?.is_exact_zero() {
            exact
        } else {
            h
        }
    };
    Ok(PlaneBranch { x: s, y: h, field: k, conjugates: 1 })
}
