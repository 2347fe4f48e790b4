//! Case analysis for a prime polar curve: `Γ¹` irreducible with
//! `(Γ¹·V(f)) = 𝔭` prime.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{trace_from_complex_link, CharPoly, MonodromyError};
use super::charpoly::Binomial;
use crate::cycles::IntersectionData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Case {
    Case0,
    Case1a,
    Case1b,
    Case2a,
    Case2b,
}

impl Case {
    pub const ALL: [Case; 5] = [Case::Case0, Case::Case1a, Case::Case1b, Case::Case2a, Case::Case2b];

    /// Rank of the top reduced homology of the Milnor fiber.
    pub fn bn(self, p: u64) -> u64 {
        match self {
            Case::Case0 => 0,
            Case::Case1a | Case::Case1b => 1,
            Case::Case2a | Case::Case2b => p - 1,
        }
    }

    pub fn char_n(self, p: u64) -> CharPoly {
        match self {
            Case::Case0 => CharPoly::one(),
            Case::Case1a => CharPoly::binomial(Binomial::minus(1)),
            Case::Case1b => CharPoly::binomial(Binomial::plus(1)),
            Case::Case2a => CharPoly::new(alloc::vec![Binomial::minus(p)], alloc::vec![Binomial::minus(1)]),
            Case::Case2b => CharPoly::new(alloc::vec![Binomial::plus(p)], alloc::vec![Binomial::plus(1)]),
        }
    }

    /// Monodromy trace on the top homology.
    pub fn trace(self) -> i64 {
        match self {
            Case::Case0 => 0,
            Case::Case1a | Case::Case2b => 1,
            Case::Case1b | Case::Case2a => -1,
        }
    }

    /// What the case asserts beyond its rank and characteristic polynomial.
    pub fn consequences(self, p: u64) -> Vec<String> {
        let mut out = Vec::new();
        match self {
            Case::Case0 => {
                out.push(format!("rank of the slice cohomology is at least {}", p));
                out.push("critical locus has positive dimension".into());
            }
            Case::Case1a => out.push("monodromy on the top homology is the identity".into()),
            Case::Case1b => out.push("monodromy on the top homology is minus the identity".into()),
            Case::Case2a | Case::Case2b => {
                out.push("next-to-top homology is free Abelian".into());
                out.push("polar curve is unitary".into());
            }
        }
        if p == 2 && matches!(self, Case::Case1a | Case::Case1b) {
            out.push("next-to-top homology is free Abelian".into());
            out.push("polar curve is unitary".into());
        }
        out
    }

    /// Same case after adding a square in a new variable.
    pub fn suspended(self) -> Case {
        match self {
            Case::Case0 => Case::Case0,
            Case::Case1a => Case::Case1b,
            Case::Case1b => Case::Case1a,
            Case::Case2a => Case::Case2b,
            Case::Case2b => Case::Case2a,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Case0 => "Case 0",
            Case::Case1a => "Case 1a",
            Case::Case1b => "Case 1b",
            Case::Case2a => "Case 2a",
            Case::Case2b => "Case 2b",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CaseInputs {
    /// Euler characteristic of the complex link of the critical locus.
    pub chi_link: Option<i64>,
    /// Milnor number (top reduced Betti number) of the hyperplane slice.
    pub mu0_slice: Option<u64>,
    /// Monodromy trace on the top homology of the Milnor fiber.
    pub observed_trace: Option<i64>,
    pub sigma_dim: Option<usize>,
    /// Known rank of the top homology.
    pub bn: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseVerdict {
    pub prime: u64,
    pub admissible: Vec<Case>,
    /// Eliminated cases, each with `filter: detail`.
    pub removed: Vec<(Case, String)>,
}

impl CaseVerdict {
    pub fn is_admissible(&self, c: Case) -> bool {
        self.admissible.contains(&c)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Which of the five cases remain possible for a prime polar curve of
/// order `p` in `n + 1` variables.
pub fn classify_prime_case(
    p: u64,
    d: &IntersectionData,
    unitary: bool,
    n: usize,
    inputs: &CaseInputs,
) -> Result<CaseVerdict, MonodromyError> {
    if !is_prime(p) {
        return Err(MonodromyError::NotPrime(p));
    }
    if d.tau != p {
        return Err(MonodromyError::InconsistentInputs(format!("polar order {} differs from τ = {}", p, d.tau)));
    }
    if d.lambda0 == 0 {
        return Err(MonodromyError::InconsistentInputs("λ⁰ = 0 at a critical point".into()));
    }
    let lo = inputs.mu0_slice.map_or(0, |mu| d.tau.saturating_sub(mu));
    let mut admissible = Vec::new();
    let mut removed = Vec::new();
    for c in Case::ALL {
        let bn = c.bn(p);
        let reason = if matches!(c, Case::Case2a | Case::Case2b) && p == 2 {
            Some("order-two".into())
        } else if matches!(c, Case::Case2a | Case::Case2b) && !unitary {
            Some("not-unitary".into())
        } else if c == Case::Case0 && inputs.sigma_dim == Some(0) {
            Some("isolated-critical-point".into())
        } else if bn < lo || bn > d.lambda0 {
            Some(format!("swing: top rank {} outside [{}, {}]", bn, lo, d.lambda0))
        } else if c == Case::Case0 && inputs.mu0_slice.map_or(false, |mu| mu < p) {
            Some(format!("slice-rank: {} < {}", inputs.mu0_slice.unwrap_or(0), p))
        } else if inputs.bn.map_or(false, |b| b != bn) {
            Some(format!("given-top-rank: top rank is {}", inputs.bn.unwrap_or(0)))
        } else if let (Some(chi), true) = (inputs.chi_link, bn == d.lambda0) {
            let t = trace_from_complex_link(chi, n as i64);
            (t != c.trace()).then(|| format!("complex-link-trace: {} ≠ {}", t, c.trace()))
        } else {
            None
        };
        let reason = reason.or_else(|| {
            inputs
                .observed_trace
                .filter(|&t| t != c.trace())
                .map(|t| format!("observed-trace: {} ≠ {}", t, c.trace()))
        });
        match reason {
            Some(r) => removed.push((c, r)),
            None => admissible.push(c),
        }
    }
    Ok(CaseVerdict { prime: p, admissible, removed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn data(gamma1: u64, tau: u64) -> IntersectionData {
        IntersectionData { gamma1, lambda0: tau - gamma1, tau, components: Vec::new() }
    }

    #[test]
    fn quadric_odd_dimension_is_case_1a() {
        let inputs = CaseInputs { sigma_dim: Some(0), observed_trace: Some(1), ..Default::default() };
        let v = classify_prime_case(2, &data(1, 2), true, 3, &inputs).unwrap();
        assert_eq!(v.admissible, vec![Case::Case1a]);
    }

    #[test]
    fn cusp_is_case_2b() {
        let inputs = CaseInputs { sigma_dim: Some(0), bn: Some(2), observed_trace: Some(1), ..Default::default() };
        let v = classify_prime_case(3, &data(1, 3), true, 1, &inputs).unwrap();
        assert_eq!(v.admissible, vec![Case::Case2b]);
        // the complex link alone decides it: an isolated point has an empty link
        let inputs = CaseInputs { sigma_dim: Some(0), bn: Some(2), chi_link: Some(0), ..Default::default() };
        let v = classify_prime_case(3, &data(1, 3), true, 1, &inputs).unwrap();
        assert_eq!(v.admissible, vec![Case::Case2b]);
    }

    #[test]
    fn whitney_umbrella_is_case_1() {
        let inputs = CaseInputs { chi_link: Some(1), mu0_slice: Some(2), sigma_dim: Some(1), ..Default::default() };
        let v = classify_prime_case(3, &data(1, 3), true, 2, &inputs).unwrap();
        assert_eq!(v.admissible, vec![Case::Case1a, Case::Case1b]);
    }

    #[test]
    fn order_two_never_has_case_2() {
        let v = classify_prime_case(2, &data(1, 2), true, 1, &CaseInputs::default()).unwrap();
        assert!(!v.admissible.iter().any(|c| matches!(c, Case::Case2a | Case::Case2b)));
    }

    #[test]
    fn composite_rejected() {
        assert_eq!(classify_prime_case(4, &data(1, 4), true, 1, &CaseInputs::default()), Err(MonodromyError::NotPrime(4)));
    }

    #[test]
    fn suspension_swaps_subcases() {
        for c in Case::ALL {
            assert_eq!(c.suspended().suspended(), c);
            assert_eq!(c.char_n(5).suspend(), c.suspended().char_n(5));
        }
    }
}
