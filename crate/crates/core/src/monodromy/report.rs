//! Enumeration of the monodromy scenarios compatible with everything known,
//! with an audit trail of every elimination.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::cases::{is_prime, Case, CaseInputs, CaseVerdict};
use super::{char_rel_candidates, divisibility_filter, swing_bounds, classify_prime_case, trace_from_complex_link};
use super::{CharPoly, MonodromyError, RankState};
use crate::cerf::{CarrouselVerdict, CerfComponent};
use crate::cycles::IntersectionData;

/// Which filters run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Profile {
    /// The filters the worked examples use: outside the prime case,
    /// `char_rel / char_im` is only required to be polynomial in its
    /// cyclotomic factors of order at least 3.
    #[default]
    Paper,
    /// Full polynomiality everywhere.
    Strict,
}

impl Profile {
    pub fn as_str(self) -> &'static str {
        match self {
            Profile::Paper => "paper",
            Profile::Strict => "strict",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReportConfig {
    pub profile: Profile,
}

/// Facts that do not come from the cycle computation, each with the
/// provenance recorded in `provenance`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReportInputs {
    /// `f` has `n + 1` variables.
    pub n: usize,
    pub sigma_dim: Option<usize>,
    /// Rank of `H̃^{n-1}(F_{f0})`.
    pub b_slice: Option<u64>,
    /// Candidates for the slice characteristic polynomial; non-polynomial
    /// ones are discarded.
    pub slice_chars: Vec<CharPoly>,
    /// Characteristic polynomials that `char^{n-1}_f` must divide.
    pub divides: Vec<CharPoly>,
    pub chi_link: Option<i64>,
    pub observed_trace: Option<i64>,
    pub bn: Option<u64>,
    pub le_numbers: Vec<u64>,
    pub provenance: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditEntry {
    pub filter: String,
    pub candidate: String,
    pub reason: String,
}

impl AuditEntry {
    pub fn new(filter: &str, candidate: String, reason: String) -> Self {
        AuditEntry { filter: filter.into(), candidate, reason }
    }
}

/// One surviving scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportOption {
    pub rank_im: u64,
    /// `b̃_{n-1}(f)`, when the slice rank is known.
    pub b_n_minus_1: Option<u64>,
    pub b_n: u64,
    pub slice_char: Option<CharPoly>,
    pub char_rel: Option<CharPoly>,
    pub char_im: Option<CharPoly>,
    pub char_n_minus_1: Option<CharPoly>,
    pub char_n: Option<CharPoly>,
    pub char_n_polynomial: Option<bool>,
    pub cases: Vec<Case>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintReport {
    pub profile: Profile,
    pub inputs: ReportInputs,
    pub intersection: IntersectionData,
    pub cerf: Vec<CerfComponent>,
    pub verdict: CarrouselVerdict,
    pub char_rel: Vec<CharPoly>,
    pub slice_chars: Vec<CharPoly>,
    pub rank: RankState,
    pub cases: Option<CaseVerdict>,
    pub options: Vec<ReportOption>,
    pub audit: Vec<AuditEntry>,
    pub notes: Vec<String>,
}

fn describe(r: u64, rel: &Option<CharPoly>, im: &Option<CharPoly>) -> String {
    let mut s = format!("rank im = {}", r);
    if let Some(c) = rel {
        s += &format!(", char_rel = {}", c);
    }
    if let Some(c) = im {
        s += &format!(", char_im = {}", c);
    }
    s
}

/// Cases of the prime classification compatible with `b_n` and `char_n`.
fn cases_of(p: u64, b_n: u64, char_n: Option<&CharPoly>) -> Vec<Case> {
    Case::ALL
        .into_iter()
        .filter(|c| !(p == 2 && matches!(c, Case::Case2a | Case::Case2b)))
        .filter(|c| c.bn(p) == b_n)
        .filter(|c| char_n.map_or(true, |ch| *ch == c.char_n(p)))
        .collect()
}

pub fn build_report(
    d: &IntersectionData,
    components: &[CerfComponent],
    verdict: &CarrouselVerdict,
    inputs: &ReportInputs,
    config: &ReportConfig,
) -> Result<ConstraintReport, MonodromyError> {
    let mut audit = Vec::new();
    let mut notes = Vec::new();

    // slice characteristic polynomial candidates
    let mut slices = Vec::new();
    for s in &inputs.slice_chars {
        if !s.is_polynomial() {
            audit.push(AuditEntry::new("slice-polynomiality", format!("slice char = {}", s), format!("not a polynomial: Φ{:?} in the denominator", s.obstructions())));
        } else if inputs.b_slice.map_or(false, |b| s.degree() != b as i64) {
            audit.push(AuditEntry::new("slice-rank", format!("slice char = {}", s), format!("degree {} ≠ slice rank {}", s.degree(), inputs.b_slice.unwrap_or(0))));
        } else {
            slices.push(CharPoly::from_cyclotomic(&s.cyclotomic()));
        }
    }
    if !inputs.slice_chars.is_empty() && slices.is_empty() {
        return Err(MonodromyError::EmptyAdmissibleSet(audit));
    }
    let b_slice = inputs.b_slice.or_else(|| {
        let degs: Vec<i64> = slices.iter().map(CharPoly::degree).collect();
        (!degs.is_empty() && degs.iter().all(|&g| g == degs[0])).then(|| degs[0] as u64)
    });
    let rank = swing_bounds(d, inputs.n, b_slice)?;

    // relative characteristic polynomial
    let rel: Vec<Option<CharPoly>> = match char_rel_candidates(components, verdict) {
        Ok((c, a)) => {
            audit.extend(a);
            c.into_iter().map(Some).collect()
        }
        Err(MonodromyError::NotSemisimple) => {
            notes.push(format!("carrousel semi-simplicity is {}; no characteristic polynomial constraints", verdict.semi_simple.as_str()));
            vec![None]
        }
        Err(e) => return Err(e),
    };
    let char_rel: Vec<CharPoly> = rel.iter().flatten().cloned().collect();

    // prime polar curve
    let prime = match components {
        [c] if c.conjugates == 1 && c.flags.relatively_prime && is_prime(c.n) && d.components.len() == 1 => Some(c),
        _ => None,
    };
    let cases = match prime {
        Some(c) => {
            let ci = CaseInputs {
                chi_link: inputs.chi_link,
                mu0_slice: b_slice,
                observed_trace: inputs.observed_trace,
                sigma_dim: inputs.sigma_dim,
                bn: inputs.bn,
            };
            Some(classify_prime_case(c.n, d, c.flags.unitary, inputs.n, &ci)?)
        }
        None => None,
    };
    let full_polynomiality = config.profile == Profile::Strict || cases.is_some();

    let slice_iter: Vec<Option<CharPoly>> = if slices.is_empty() { vec![None] } else { slices.iter().cloned().map(Some).collect() };
    let mut options = Vec::new();
    for s in &slice_iter {
        let hi = s.as_ref().map_or(rank.rank_im.1, |s| (s.degree() as u64).min(rank.rank_im.1));
        for cr in &rel {
            for r in rank.rank_im.0..=hi {
                let b_n = d.tau - r;
                let here = describe(r, cr, &None);
                if let Some(b) = inputs.bn.filter(|&b| b != b_n) {
                    audit.push(AuditEntry::new("given-top-rank", here, format!("b̃_n = {} ≠ {}", b_n, b)));
                    continue;
                }
                let ims: Vec<Option<CharPoly>> = match (s, cr) {
                    (Some(s), _) => s.divisors_of_degree(r).into_iter().map(Some).collect(),
                    (None, Some(cr)) => cr.divisors_of_degree(r).into_iter().map(Some).collect(),
                    (None, None) => vec![None],
                };
                if ims.is_empty() {
                    let source = if s.is_some() { "slice" } else { "relative" };
                    audit.push(AuditEntry::new("image-divisor", here, format!("no degree-{} divisor of the {} characteristic polynomial", r, source)));
                    continue;
                }
                for ci in ims {
                    let here = describe(r, cr, &ci);
                    let mut opt_notes = Vec::new();
                    let char_n = match (cr, &ci) {
                        (Some(cr), Some(ci)) => Some(cr.div(ci)),
                        _ => None,
                    };
                    let poly = char_n.as_ref().map(CharPoly::is_polynomial);
                    if let (Some(ch), Some(false)) = (&char_n, poly) {
                        let obs = ch.obstructions();
                        if full_polynomiality || obs.iter().any(|&k| k > 2) {
                            audit.push(AuditEntry::new("polynomiality", here, format!("char_n = {} has Φ{:?} in the denominator", ch, obs)));
                            continue;
                        }
                        opt_notes.push(format!("char_n = {} is not a polynomial (Φ{:?} unmatched); kept by the paper profile", ch, obs));
                    }
                    let char_nm1 = match (s, &ci) {
                        (Some(s), Some(ci)) => Some(s.div(ci)),
                        _ => None,
                    };
                    if let Some(c) = &char_nm1 {
                        if !inputs.divides.is_empty() {
                            let mut all = vec![s.clone().unwrap_or_default()];
                            all.extend(inputs.divides.iter().cloned());
                            if !divisibility_filter(c, &all)? {
                                audit.push(AuditEntry::new("slice-divisibility", here, format!("char_(n-1) = {} does not divide the slice gcd", c)));
                                continue;
                            }
                        }
                    }
                    let trace = match (cr, &ci) {
                        (Some(cr), Some(ci)) => Some(cr.trace() - ci.trace()),
                        _ => None,
                    };
                    if let (Some(chi), Some(t)) = (inputs.chi_link, trace) {
                        if b_n == d.lambda0 {
                            let want = trace_from_complex_link(chi, inputs.n as i64);
                            if t != want {
                                audit.push(AuditEntry::new("complex-link-trace", here, format!("b̃_n = λ⁰ forces trace {}, found {}", want, t)));
                                continue;
                            }
                        }
                    }
                    if let (Some(o), Some(t)) = (inputs.observed_trace, trace) {
                        if o != t {
                            audit.push(AuditEntry::new("observed-trace", here, format!("trace {} ≠ observed {}", t, o)));
                            continue;
                        }
                    }
                    let mut cs = Vec::new();
                    if let (Some(v), Some(c)) = (&cases, prime) {
                        let structural = cases_of(c.n, b_n, char_n.as_ref());
                        if structural.is_empty() {
                            audit.push(AuditEntry::new("case-structure", here, format!("b̃_n = {} with char_n {} matches no case", b_n, char_n.as_ref().map_or("unknown".into(), |c| format!("{}", c)))));
                            continue;
                        }
                        cs = structural.into_iter().filter(|c| v.is_admissible(*c)).collect();
                        if cs.is_empty() {
                            audit.push(AuditEntry::new("case-consistency", here, "case eliminated by the prime classification".into()));
                            continue;
                        }
                    }
                    options.push(ReportOption {
                        rank_im: r,
                        b_n_minus_1: s.as_ref().map(|s| s.degree() as u64 - r).or(b_slice.map(|b| b - r)),
                        b_n,
                        slice_char: s.clone(),
                        char_rel: cr.clone(),
                        char_im: ci,
                        char_n_minus_1: char_nm1,
                        char_n,
                        char_n_polynomial: poly,
                        cases: cs,
                        notes: opt_notes,
                    });
                }
            }
        }
    }
    if options.is_empty() {
        return Err(MonodromyError::EmptyAdmissibleSet(audit));
    }
    if options.iter().any(|o| o.char_n_polynomial == Some(false)) {
        notes.push("some options carry a non-polynomial char_n; the strict profile removes them".into());
    }
    Ok(ConstraintReport {
        profile: config.profile,
        inputs: inputs.clone(),
        intersection: d.clone(),
        cerf: components.to_vec(),
        verdict: verdict.clone(),
        char_rel,
        slice_chars: slices,
        rank,
        cases,
        options,
        audit,
        notes,
    })
}

/// Inputs readable from the cascade itself: dimensions, Lê numbers, the
/// complex link, and the slice `f|V(z0)` when it is a join of pure powers.
pub fn derived_inputs(c: &crate::cycles::Cascade, z0: &str) -> Result<ReportInputs, crate::cycles::CycleError> {
    use crate::poly::MultiPoly;
    let mut inputs = ReportInputs { n: c.vars.len() - 1, sigma_dim: c.sigma_dim(), ..Default::default() };
    inputs.provenance.insert("sigma_dim".into(), "derived: Lê cycles".into());
    if let Ok(le) = crate::cycles::le_numbers(c) {
        inputs.le_numbers = le.values;
    }
    if let Some(chi) = crate::cycles::complex_link_euler(c, z0)? {
        inputs.chi_link = Some(chi);
        inputs.provenance.insert("chi_link".into(), "derived: Lê cycles".into());
    }
    let i0 = c.f.var_index(z0)?;
    let slice = c.f.substitute_var(i0, &MultiPoly::zero(&c.vars));
    if let Ok(e) = super::join_exponents(&slice) {
        if let Ok((mu, ch)) = super::milnor_number_suspension(&e) {
            inputs.b_slice = Some(mu);
            inputs.slice_chars = vec![ch];
            inputs.provenance.insert("b_slice".into(), "derived: join rule".into());
            inputs.provenance.insert("slice_char".into(), "derived: join rule".into());
        }
    }
    if c.sigma_dim() == Some(0) {
        if let Some(&l0) = inputs.le_numbers.first() {
            // isolated: the top Betti number is the Milnor number λ⁰
            inputs.bn = Some(l0);
            inputs.provenance.insert("bn".into(), "derived: isolated critical point".into());
        }
    }
    Ok(inputs)
}
