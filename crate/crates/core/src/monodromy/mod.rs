//! Monodromy constraints: characteristic-polynomial calculus, rank bounds
//! from the swing, trace filters and the report that combines them.

mod cases;
mod charpoly;
mod report;

pub use cases::{classify_prime_case, Case, CaseInputs, CaseVerdict};
pub use charpoly::{coefficients_i64, totient, Binomial, CharPoly, Cyclotomic};
pub use report::{build_report, derived_inputs, AuditEntry, ConstraintReport, ReportOption, Profile, ReportConfig, ReportInputs};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cerf::{CarrouselVerdict, CerfComponent, Verdict};
use crate::cycles::IntersectionData;
use crate::poly::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonodromyError {
    #[error("not a polynomial: {0}")]
    NonPolynomial(String),
    #[error("carrousel is not known to be semi-simple")]
    NotSemisimple,
    #[error("inconsistent inputs: {0}")]
    InconsistentInputs(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("not a sum of pure powers in distinct variables: {0}")]
    NotAJoin(String),
    #[error("no option survives the filters ({} eliminations)", .0.len())]
    EmptyAdmissibleSet(Vec<AuditEntry>),
}

/// Rank bookkeeping for `∂ : H̃^{n-1}(F_{f0}) → H^n(F_f, F_{f0})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankState {
    pub n: usize,
    pub tau: u64,
    pub gamma1: u64,
    pub lambda0: u64,
    pub b_slice: Option<u64>,
    /// Closed interval for the rank of the image of `∂`.
    pub rank_im: (u64, u64),
    /// Closed interval for `b̃_n(f)`.
    pub rank_bn: (u64, u64),
    /// `τ - b̃_n` when pinned down.
    pub e: Option<u64>,
}

/// The image of `∂` has rank at least `γ¹` and at most `τ` and the slice
/// rank; `b̃_n = τ - rank`.
pub fn swing_bounds(d: &IntersectionData, n: usize, b_slice: Option<u64>) -> Result<RankState, MonodromyError> {
    if d.lambda0 == 0 {
        return Err(MonodromyError::InconsistentInputs(format!(
            "γ¹ = τ = {}: λ⁰ must be positive at a critical point",
            d.tau
        )));
    }
    let hi = b_slice.map_or(d.tau, |b| b.min(d.tau));
    if d.gamma1 > hi {
        return Err(MonodromyError::InconsistentInputs(format!(
            "γ¹ = {} exceeds the slice rank {}",
            d.gamma1, hi
        )));
    }
    let rank_im = (d.gamma1, hi);
    Ok(RankState {
        n,
        tau: d.tau,
        gamma1: d.gamma1,
        lambda0: d.lambda0,
        b_slice,
        rank_im,
        rank_bn: (d.tau - hi, d.tau - d.gamma1),
        e: (rank_im.0 == rank_im.1).then_some(rank_im.0),
    })
}

/// Monodromy trace on `H̃_n(F_f)` when `b̃_n = λ⁰`, from the Euler
/// characteristic of the complex link of the critical locus.
pub fn trace_from_complex_link(chi: i64, n: i64) -> i64 {
    let s = if (n + 1) % 2 == 0 { 1 } else { -1 };
    s * (1 - chi)
}

/// All sign choices `∏ (λ^{n_D} ± 1)`. Conjugate branches are
/// interchangeable, so a class of `c` branches contributes `c + 1` choices.
/// Candidates with nonzero trace are dropped: the relative monodromy has
/// trace zero.
pub fn char_rel_candidates(
    components: &[CerfComponent],
    verdict: &CarrouselVerdict,
) -> Result<(Vec<CharPoly>, Vec<AuditEntry>), MonodromyError> {
    if verdict.semi_simple != Verdict::Yes {
        return Err(MonodromyError::NotSemisimple);
    }
    let mut partial = alloc::vec![CharPoly::one()];
    for c in components {
        let mut next = Vec::new();
        for base in &partial {
            for plus in 0..=c.conjugates {
                let mut num = base.num.clone();
                for i in 0..c.conjugates {
                    num.push(if i < plus { Binomial::plus(c.n) } else { Binomial::minus(c.n) });
                }
                next.push(CharPoly::new(num, Vec::new()));
            }
        }
        partial = next;
    }
    let mut audit = Vec::new();
    let mut out = Vec::new();
    for cand in partial {
        if cand.trace() != 0 {
            audit.push(AuditEntry::new("relative-trace", format!("char_rel = {}", cand), format!("trace {} ≠ 0", cand.trace())));
        } else {
            out.push(cand);
        }
    }
    Ok((out, audit))
}

/// `cand` divides the gcd of the slice characteristic polynomials.
pub fn divisibility_filter(cand: &CharPoly, slice_chars: &[CharPoly]) -> Result<bool, MonodromyError> {
    for c in core::iter::once(cand).chain(slice_chars) {
        if !c.is_polynomial() {
            return Err(MonodromyError::NonPolynomial(format!("{}", c)));
        }
    }
    let Some((first, rest)) = slice_chars.split_first() else {
        return Ok(true);
    };
    let g = rest.iter().fold(first.clone(), |g, c| g.gcd(c));
    Ok(cand.divides(&g))
}

/// Exponents `a_i` of `f = Σ c_i x_i^{a_i}` in distinct variables.
pub fn join_exponents(f: &MultiPoly) -> Result<Vec<u64>, MonodromyError> {
    let not_join = || MonodromyError::NotAJoin(format!("{}", f));
    let mut seen = BTreeMap::new();
    for (m, c) in f.terms() {
        if c.is_zero() {
            continue;
        }
        let mut nz = m.0.iter().enumerate().filter(|(_, e)| **e > 0);
        let (i, &e) = nz.next().ok_or_else(not_join)?;
        if nz.next().is_some() || seen.insert(i, e).is_some() {
            return Err(not_join());
        }
    }
    if seen.is_empty() {
        return Err(not_join());
    }
    Ok(seen.into_values().map(u64::from).collect())
}

/// Milnor number and characteristic polynomial of a join of pure powers:
/// `μ = ∏ (a_i - 1)`, and the divisor `∏ (Λ_{a_i} - 1)` with
/// `Λ_a Λ_b = gcd(a, b) Λ_{lcm(a, b)}`.
pub fn milnor_number_suspension(exponents: &[u64]) -> Result<(u64, CharPoly), MonodromyError> {
    if exponents.is_empty() || exponents.iter().any(|&a| a < 2) {
        return Err(MonodromyError::NotAJoin(format!("exponents {:?} (each must be at least 2)", exponents)));
    }
    let mut div: BTreeMap<u64, i64> = BTreeMap::new();
    div.insert(1, 1);
    for &a in exponents {
        let mut next: BTreeMap<u64, i64> = BTreeMap::new();
        for (&k, &c) in &div {
            *next.entry(k.lcm(&a)).or_insert(0) += c * k.gcd(&a) as i64;
            *next.entry(k).or_insert(0) -= c;
        }
        next.retain(|_, c| *c != 0);
        div = next;
    }
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (k, c) in div {
        for _ in 0..c.unsigned_abs() {
            if c > 0 { num.push(Binomial::minus(k)) } else { den.push(Binomial::minus(k)) }
        }
    }
    let raw = CharPoly::new(num, den);
    let mu: u64 = exponents.iter().map(|a| a - 1).product();
    let ch = CharPoly::from_cyclotomic(&raw.cyclotomic());
    debug_assert_eq!(ch.degree().to_u64(), Some(mu));
    Ok((mu, ch))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cerf::classify;
    use crate::poly::{rat, CoefficientField};
    use alloc::string::ToString;
    use alloc::vec;

    fn data(gamma1: u64, tau: u64) -> IntersectionData {
        IntersectionData { gamma1, lambda0: tau - gamma1, tau, components: Vec::new() }
    }

    fn comp(m: u64, n: u64, conjugates: u32) -> CerfComponent {
        CerfComponent {
            name: "D".into(),
            m,
            n,
            g: 1,
            p: m,
            q: n,
            beta: None,
            field: CoefficientField::Rational,
            conjugates,
            flags: classify(m, n),
        }
    }

    fn semisimple() -> CarrouselVerdict {
        CarrouselVerdict { carrousel_form: Verdict::Yes, semi_simple: Verdict::Yes, reasons: Vec::new() }
    }

    #[test]
    fn swing_examples() {
        let w = swing_bounds(&data(1, 3), 2, Some(2)).unwrap();
        assert_eq!((w.rank_im, w.rank_bn), ((1, 2), (1, 2)));
        let f = swing_bounds(&data(1, 12), 3, Some(5)).unwrap();
        assert_eq!((f.rank_im, f.rank_bn), ((1, 5), (7, 11)));
        let bad = IntersectionData { gamma1: 3, lambda0: 0, tau: 3, components: Vec::new() };
        assert!(matches!(swing_bounds(&bad, 1, None), Err(MonodromyError::InconsistentInputs(_))));
    }

    #[test]
    fn complex_link_traces() {
        assert_eq!(trace_from_complex_link(1, 2), 0);
        assert_eq!(trace_from_complex_link(2, 2), 1);
        assert_eq!(trace_from_complex_link(0, 3), 1);
    }

    #[test]
    fn relative_candidates() {
        let (c, _) = char_rel_candidates(&[comp(1, 3, 1)], &semisimple()).unwrap();
        let texts: Vec<String> = c.iter().map(|c| c.to_string()).collect();
        assert_eq!(texts, vec!["λ^3 - 1", "λ^3 + 1"]);
        let (c, _) = char_rel_candidates(&[comp(1, 12, 1)], &semisimple()).unwrap();
        assert_eq!(c.len(), 2);
        let (c, _) = char_rel_candidates(&[comp(1, 2, 1), comp(2, 3, 1)], &semisimple()).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|c| c.degree() == 5 && c.trace() == 0));
        let mut v = semisimple();
        v.semi_simple = Verdict::Unknown;
        assert_eq!(char_rel_candidates(&[comp(1, 2, 1)], &v), Err(MonodromyError::NotSemisimple));
    }

    #[test]
    fn slice_divisibility() {
        let g0 = CharPoly::new(vec![Binomial::minus(4)], vec![Binomial::plus(1)]);
        let gt = CharPoly::new(vec![Binomial::plus(3)], vec![Binomial::plus(1)]);
        assert!(!divisibility_filter(&CharPoly::binomial(Binomial::minus(1)), &[g0.clone(), gt]).unwrap());
        let both = CharPoly::new(vec![Binomial::minus(1), Binomial::plus(2)], vec![]);
        assert!(divisibility_filter(&CharPoly::binomial(Binomial::minus(1)), &[g0.clone(), both]).unwrap());
        assert!(!divisibility_filter(&CharPoly::binomial(Binomial::minus(5)), &[g0]).unwrap());
    }

    #[test]
    fn join_rule() {
        let (mu, ch) = milnor_number_suspension(&[2, 4]).unwrap();
        assert_eq!(mu, 3);
        assert_eq!(ch, CharPoly::new(vec![Binomial::minus(4)], vec![Binomial::plus(1)]));
        let (mu, ch) = milnor_number_suspension(&[2, 3]).unwrap();
        assert_eq!(mu, 2);
        assert_eq!(ch, CharPoly::new(vec![Binomial::plus(3)], vec![Binomial::plus(1)]));
        assert_eq!(milnor_number_suspension(&[2]).unwrap().0, 1);
        assert_eq!(milnor_number_suspension(&[2]).unwrap().1, CharPoly::binomial(Binomial::plus(1)));
        assert!(milnor_number_suspension(&[1, 3]).is_err());
    }

    #[test]
    fn join_detection() {
        let v: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let f = MultiPoly::from_terms(&v, [(vec![0, 2], rat(1, 1)), (vec![3, 0], rat(-1, 1))]);
        assert_eq!(join_exponents(&f).unwrap(), vec![3, 2]);
        let g = MultiPoly::from_terms(&v, [(vec![1, 2], rat(1, 1)), (vec![3, 0], rat(-1, 1))]);
        assert!(join_exponents(&g).is_err());
    }
}
