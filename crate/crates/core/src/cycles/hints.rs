use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::CycleError;
use crate::poly::{substitute, MultiPoly, PuiseuxSeries};

/// User-asserted factorization `poly = c * prod factor^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionHint {
    pub poly: MultiPoly,
    pub factors: Vec<(MultiPoly, u32)>,
}

/// User-supplied parameterization of a named curve component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamHint {
    pub component: String,
    pub series: BTreeMap<String, PuiseuxSeries>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Hints {
    pub decompositions: Vec<DecompositionHint>,
    pub parameterizations: Vec<ParamHint>,
}

fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

impl DecompositionHint {
    /// Checks the product against the polynomial, up to a rational unit.
    pub fn verify(&self) -> Result<(), CycleError> {
        let mut prod = MultiPoly::one(self.poly.vars());
        for (p, k) in &self.factors {
            prod = &prod * &p.pow(*k);
        }
        if prod.primitive() == self.poly.primitive() {
            Ok(())
        } else {
            Err(CycleError::HintMismatch(format!("factors do not multiply to {}", self.poly)))
        }
    }
}

impl Hints {
    pub fn is_empty(&self) -> bool {
        self.decompositions.is_empty() && self.parameterizations.is_empty()
    }

    pub fn verify(&self) -> Result<(), CycleError> {
        self.decompositions.iter().try_for_each(DecompositionHint::verify)
    }

    pub(crate) fn decomposition_of(&self, r: &MultiPoly) -> Option<Vec<(MultiPoly, u32)>> {
        let target = r.primitive();
        for h in &self.decompositions {
            let Ok(p) = h.poly.embed(r.vars()) else { continue };
            if p.primitive() == target {
                let factors: Option<Vec<_>> =
                    h.factors.iter().map(|(f, k)| f.embed(r.vars()).ok().map(|f| (f, *k))).collect();
                return factors;
            }
        }
        None
    }

    /// The hinted parameterization for the component displayed as `name`,
    /// checked against `equations`.
    pub(crate) fn parameterization_for(
        &self,
        name: &str,
        equations: &[MultiPoly],
        vars: &[String],
    ) -> Result<Option<BTreeMap<String, PuiseuxSeries>>, CycleError> {
        let key = squash(name);
        let Some(h) = self.parameterizations.iter().find(|h| squash(&h.component) == key) else {
            return Ok(None);
        };
        let Some(first) = h.series.values().next() else {
            return Err(CycleError::HintMismatch(format!("empty parameterization for {}", name)));
        };
        let mut a = h.series.clone();
        for v in vars {
            a.entry(v.clone()).or_insert_with(|| PuiseuxSeries::zero(first.param(), first.field().clone()));
        }
        for e in equations {
            // a visible nonzero term refutes the hint
            if substitute(e, &a)?.leading().is_some() {
                return Err(CycleError::HintMismatch(format!("parameterization of {} does not satisfy {}", name, e)));
            }
        }
        Ok(Some(a))
    }
}
