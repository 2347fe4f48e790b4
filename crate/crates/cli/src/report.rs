//! The structured report: one JSON document with fixed field names.
//!
//! Bump [`SCHEMA_VERSION`] whenever a field is added, removed or renamed.

use std::collections::BTreeMap;

use carrousel_core::cycles::{Cascade, Cycle};
use carrousel_core::monodromy::{Case, CharPoly, ConstraintReport};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::analysis::AnalysisConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub problem: Problem,
    pub cycles: Cycles,
    pub le_numbers: Vec<u64>,
    pub invariants: Invariants,
    pub classification: Classification,
    pub inputs: Inputs,
    pub candidates: Candidates,
    pub cases: Option<Cases>,
    pub options: Vec<OptionEntry>,
    pub checks: Vec<Check>,
    pub audit: Vec<AuditRecord>,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem {
    /// Canonical form of the input polynomial.
    pub f: String,
    /// Coordinates with `z0` first.
    pub coordinates: Vec<String>,
    pub z0: String,
    pub profile: String,
    pub trunc_cap: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub name: String,
    pub multiplicity: u32,
    pub dimension: usize,
    pub conjugates: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleEntry {
    pub index: usize,
    pub cycle: String,
    pub components: Vec<ComponentEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cycles {
    /// Polar cycles `Γ^k`, `k = 1..=n`.
    pub polar: Vec<CycleEntry>,
    /// Lê cycles `Λ^k`, highest dimension first.
    pub le: Vec<CycleEntry>,
    pub sigma_dim: Option<usize>,
    pub truncation: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolarEntry {
    pub name: String,
    pub multiplicity: u32,
    pub conjugates: u32,
    /// `(D·V(z0))`, `(D·V(f))`, `(D·V(∂f/∂z0))` per branch.
    pub m: u64,
    pub n: u64,
    pub polar: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Invariants {
    pub gamma1: u64,
    pub lambda0: u64,
    pub tau: u64,
    pub gcd_gamma1_tau: u64,
    pub components: Vec<PolarEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CerfEntry {
    pub name: String,
    pub m: u64,
    pub n: u64,
    pub g: u64,
    pub p: u64,
    pub q: u64,
    pub beta: String,
    pub field: String,
    pub conjugates: u32,
    pub relatively_prime: bool,
    pub unitary: bool,
    pub prime_of_order: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Classification {
    pub components: Vec<CerfEntry>,
    pub carrousel_form: String,
    pub semi_simple: String,
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inputs {
    pub n: usize,
    pub sigma_dim: Option<usize>,
    pub b_slice: Option<u64>,
    pub chi_link: Option<i64>,
    pub observed_trace: Option<i64>,
    pub bn: Option<u64>,
    pub slice_chars: Vec<String>,
    pub divides: Vec<String>,
    pub provenance: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Candidates {
    pub char_rel: Vec<String>,
    /// Slice characteristic polynomials that survived.
    pub slice_chars: Vec<String>,
    pub rank_im: (u64, u64),
    pub rank_bn: (u64, u64),
    pub b_slice: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RemovedCase {
    pub case: String,
    pub filter: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cases {
    pub prime: u64,
    pub admissible: Vec<String>,
    pub removed: Vec<RemovedCase>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionEntry {
    pub rank_im: u64,
    pub b_n_minus_1: Option<u64>,
    pub b_n: u64,
    pub slice_char: Option<String>,
    pub char_rel: Option<String>,
    pub char_im: Option<String>,
    pub char_n_minus_1: Option<String>,
    pub char_n: Option<String>,
    pub char_n_polynomial: Option<bool>,
    pub cases: Vec<String>,
    pub consequences: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    /// `module.rule`.
    pub rule: String,
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditRecord {
    pub module: String,
    pub filter: String,
    pub candidate: String,
    pub reason: String,
}

fn text(c: &CharPoly) -> String {
    c.to_text()
}

fn cycle_entry(index: usize, c: &Cycle) -> CycleEntry {
    CycleEntry {
        index,
        cycle: c.to_string(),
        components: c
            .components
            .iter()
            .map(|d| ComponentEntry { name: d.name.clone(), multiplicity: d.multiplicity, dimension: d.dimension, conjugates: d.conjugates })
            .collect(),
    }
}

fn checks(r: &ConstraintReport) -> Vec<Check> {
    let d = &r.intersection;
    let mut out = vec![Check {
        rule: "cycles.tau-split".into(),
        statement: format!("τ = γ¹ + λ⁰: {} = {} + {}", d.tau, d.gamma1, d.lambda0),
        holds: d.tau == d.gamma1 + d.lambda0,
    }];
    for c in &d.components {
        out.push(Check {
            rule: "cycles.teissier".into(),
            statement: format!("{}: n = m + polar contact: {} = {} + {}", c.name, c.n_branch, c.m_branch, c.polar_branch),
            holds: c.n_branch == c.m_branch + c.polar_branch,
        });
    }
    if let Some(v) = &r.cases {
        if v.is_admissible(Case::Case0) {
            let n1 = r.inputs.n.saturating_sub(1);
            let (statement, holds) = match r.rank.b_slice {
                Some(b) => (format!("Case 0 needs b̃_{}(f₀) ≥ {}: b̃_{}(f₀) = {}", n1, v.prime, n1, b), b >= v.prime),
                None => (format!("Case 0 needs b̃_{}(f₀) ≥ {}: slice rank unknown", n1, v.prime), true),
            };
            out.push(Check { rule: "monodromy.case0-slice-rank".into(), statement, holds });
        }
    }
    out
}

impl Report {
    pub fn new(cfg: &AnalysisConfig, coords: &[String], cascade: &Cascade, r: &ConstraintReport, warnings: Vec<String>) -> Self {
        let n = coords.len() - 1;
        let d = &r.intersection;
        let p = r.cases.as_ref().map(|v| v.prime);
        let mut audit: Vec<AuditRecord> = r
            .audit
            .iter()
            .map(|a| AuditRecord { module: "monodromy".into(), filter: a.filter.clone(), candidate: a.candidate.clone(), reason: a.reason.clone() })
            .collect();
        let cases = r.cases.as_ref().map(|v| {
            let removed: Vec<RemovedCase> = v
                .removed
                .iter()
                .map(|(c, why)| {
                    let (filter, detail) = why.split_once(": ").unwrap_or((why, ""));
                    RemovedCase { case: c.to_string(), filter: filter.into(), detail: detail.into() }
                })
                .collect();
            for rc in &removed {
                audit.push(AuditRecord {
                    module: "monodromy.cases".into(),
                    filter: rc.filter.clone(),
                    candidate: rc.case.clone(),
                    reason: if rc.detail.is_empty() { rc.filter.clone() } else { rc.detail.clone() },
                });
            }
            Cases { prime: v.prime, admissible: v.admissible.iter().map(Case::to_string).collect(), removed }
        });
        Report {
            schema_version: SCHEMA_VERSION,
            problem: Problem {
                f: cascade.f.to_string(),
                coordinates: coords.to_vec(),
                z0: coords[0].clone(),
                profile: r.profile.as_str().into(),
                trunc_cap: cfg.trunc_cap,
            },
            cycles: Cycles {
                polar: (1..=n).rev().map(|k| cycle_entry(k, &cascade.gamma[k])).collect(),
                le: (0..=n).rev().filter(|&k| !cascade.lambda[k].is_zero()).map(|k| cycle_entry(k, &cascade.lambda[k])).collect(),
                sigma_dim: cascade.sigma_dim(),
                truncation: cascade.trunc,
            },
            le_numbers: r.inputs.le_numbers.clone(),
            invariants: Invariants {
                gamma1: d.gamma1,
                lambda0: d.lambda0,
                tau: d.tau,
                gcd_gamma1_tau: d.gamma1.gcd(&d.tau),
                components: d
                    .components
                    .iter()
                    .map(|c| PolarEntry { name: c.name.clone(), multiplicity: c.multiplicity, conjugates: c.conjugates, m: c.m_branch, n: c.n_branch, polar: c.polar_branch })
                    .collect(),
            },
            classification: Classification {
                components: r
                    .cerf
                    .iter()
                    .map(|c| CerfEntry {
                        name: c.name.clone(),
                        m: c.m,
                        n: c.n,
                        g: c.g,
                        p: c.p,
                        q: c.q,
                        beta: c.beta_display(),
                        field: c.field.to_string(),
                        conjugates: c.conjugates,
                        relatively_prime: c.flags.relatively_prime,
                        unitary: c.flags.unitary,
                        prime_of_order: c.flags.prime_of_order,
                    })
                    .collect(),
                carrousel_form: r.verdict.carrousel_form.as_str().into(),
                semi_simple: r.verdict.semi_simple.as_str().into(),
                reasons: r.verdict.reasons.clone(),
            },
            inputs: Inputs {
                n: r.inputs.n,
                sigma_dim: r.inputs.sigma_dim,
                b_slice: r.inputs.b_slice,
                chi_link: r.inputs.chi_link,
                observed_trace: r.inputs.observed_trace,
                bn: r.inputs.bn,
                slice_chars: r.inputs.slice_chars.iter().map(text).collect(),
                divides: r.inputs.divides.iter().map(text).collect(),
                provenance: r.inputs.provenance.clone().into_iter().collect(),
            },
            candidates: Candidates {
                char_rel: r.char_rel.iter().map(text).collect(),
                slice_chars: r.slice_chars.iter().map(text).collect(),
                rank_im: r.rank.rank_im,
                rank_bn: r.rank.rank_bn,
                b_slice: r.rank.b_slice,
            },
            cases,
            options: r
                .options
                .iter()
                .map(|o| OptionEntry {
                    rank_im: o.rank_im,
                    b_n_minus_1: o.b_n_minus_1,
                    b_n: o.b_n,
                    slice_char: o.slice_char.as_ref().map(text),
                    char_rel: o.char_rel.as_ref().map(text),
                    char_im: o.char_im.as_ref().map(text),
                    char_n_minus_1: o.char_n_minus_1.as_ref().map(text),
                    char_n: o.char_n.as_ref().map(text),
                    char_n_polynomial: o.char_n_polynomial,
                    cases: o.cases.iter().map(Case::to_string).collect(),
                    consequences: p.map_or_else(Vec::new, |p| {
                        let mut v: Vec<String> = o.cases.iter().flat_map(|c| c.consequences(p)).collect();
                        v.dedup();
                        v
                    }),
                    notes: o.notes.clone(),
                })
                .collect(),
            checks: checks(r),
            audit,
            notes: r.notes.clone(),
            warnings,
        }
    }

    /// True when every check holds and nothing was flagged.
    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty() && self.checks.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}
