//! Cerf-diagram invariants of polar branches and the carrousel decisions
//! built from them.
//!
//! Along a branch `φ` of `Γ¹`, `z0∘φ` has order `m` and `f∘φ` order `n`.
//! With `g = gcd(m, n)`, `p = m/g`, `q = n/g`, the carrousel coefficient is
//! `β = lc(z0∘φ)^q / lc(f∘φ)^p`, which does not depend on the choice of
//! parameter.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::Zero;

use crate::cycles::{certified_restriction, Cycle, CycleComponent, CycleError, DEFAULT_TRUNC_CAP};
use crate::poly::{series_order, CoefficientField, FieldElem, MultiPoly, PolyError, SeriesOrder};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CerfError {
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("component {0} is not reduced; carrousel analysis needs multiplicity 1")]
    NonReducedComponent(String),
    #[error("component {0} has no parameterization")]
    NotACurve(String),
    #[error("component {name} lies in V({what})")]
    Improper { name: String, what: String },
}

impl From<PolyError> for CerfError {
    fn from(e: PolyError) -> Self {
        CerfError::Cycle(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CerfFlags {
    pub relatively_prime: bool,
    pub unitary: bool,
    pub prime_of_order: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CerfComponent {
    pub name: String,
    pub m: u64,
    pub n: u64,
    pub g: u64,
    pub p: u64,
    pub q: u64,
    /// `None` when the leading coefficients could not be combined.
    pub beta: Option<FieldElem>,
    pub field: CoefficientField,
    /// Number of Galois-conjugate geometric branches represented.
    pub conjugates: u32,
    pub flags: CerfFlags,
}

impl CerfComponent {
    pub fn beta_display(&self) -> String {
        match &self.beta {
            Some(b) => format!("{}", self.field.display(b)),
            None => "unknown".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarrouselVerdict {
    pub carrousel_form: Verdict,
    pub semi_simple: Verdict,
    pub reasons: Vec<String>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn classify(m: u64, n: u64) -> CerfFlags {
    let g = m.gcd(&n);
    CerfFlags {
        relatively_prime: g == 1,
        unitary: m == 1,
        prime_of_order: (g == 1 && is_prime(n)).then_some(n),
    }
}

pub fn classify_component(c: &CerfComponent) -> CerfFlags {
    classify(c.m, c.n)
}

/// `lu^q / lv^p` in `field`.
pub fn carrousel_coefficient(
    field: &CoefficientField,
    lu: &FieldElem,
    lv: &FieldElem,
    p: u64,
    q: u64,
) -> Result<FieldElem, PolyError> {
    let num = field.pow(&field.lift(lu), q as u32);
    let den = field.pow(&field.lift(lv), p as u32);
    field.div(&num, &den)
}

/// Invariants of a reduced curve component of `Γ¹`.
pub fn cerf_component(d: &CycleComponent, f: &MultiPoly, z0: &str) -> Result<CerfComponent, CerfError> {
    cerf_component_capped(d, f, z0, DEFAULT_TRUNC_CAP)
}

pub fn cerf_component_capped(d: &CycleComponent, f: &MultiPoly, z0: &str, cap: i64) -> Result<CerfComponent, CerfError> {
    if d.multiplicity != 1 {
        return Err(CerfError::NonReducedComponent(d.name.clone()));
    }
    let b = d.parameterization.as_ref().ok_or_else(|| CerfError::NotACurve(d.name.clone()))?;
    let f = f.embed(&b.vars)?;
    let z = MultiPoly::var(&b.vars, f.var_index(z0)?);
    let restrict = |g: &MultiPoly, what: &str| -> Result<(u64, FieldElem, CoefficientField), CerfError> {
        let s = certified_restriction(d, g, cap)?;
        let improper = || CerfError::Improper { name: d.name.clone(), what: what.into() };
        let k = match series_order(&s)? {
            SeriesOrder::Infinite => return Err(improper()),
            SeriesOrder::Finite(q) if q.is_integer() && q > Zero::zero() => q.to_integer(),
            SeriesOrder::Finite(q) => {
                return Err(CycleError::DecompositionFailure(format!("order {} of {} along {}", q, what, d.name)).into())
            }
        };
        let lc = s.leading_coefficient().cloned().ok_or_else(improper)?;
        Ok((k.try_into().unwrap_or(u64::MAX), lc, s.field().clone()))
    };
    let (m, lu, fu) = restrict(&z, z0)?;
    let (n, lv, fv) = restrict(&f, "f")?;
    let g = m.gcd(&n);
    let (p, q) = (m / g, n / g);
    let (field, beta) = match fu.join(&fv) {
        Ok(field) => {
            let beta = carrousel_coefficient(&field, &lu, &lv, p, q).ok();
            (field, beta)
        }
        Err(_) => (fv, None),
    };
    Ok(CerfComponent {
        name: d.name.clone(),
        m,
        n,
        g,
        p,
        q,
        beta,
        field,
        conjugates: d.conjugates,
        flags: classify(m, n),
    })
}

/// Cerf components for every component of `Γ¹`.
pub fn cerf_components(gamma1: &Cycle, f: &MultiPoly, z0: &str) -> Result<Vec<CerfComponent>, CerfError> {
    gamma1.components.iter().map(|d| cerf_component(d, f, z0)).collect()
}

/// Sufficient condition: every component reduced and relatively prime.
pub fn check_carrousel_form(components: &[CerfComponent], gamma1: &Cycle) -> (Verdict, Vec<String>) {
    let mut reasons = Vec::new();
    if gamma1.is_zero() {
        reasons.push("empty-polar-curve".into());
        return (Verdict::Yes, reasons);
    }
    for d in gamma1.components.iter().filter(|d| d.multiplicity != 1) {
        reasons.push(format!("non-reduced:{}", d.name));
    }
    if components.len() < gamma1.components.len() {
        reasons.push("components-not-analyzed".into());
    }
    for c in components.iter().filter(|c| !c.flags.relatively_prime) {
        reasons.push(format!("not-relatively-prime:{}(g={})", c.name, c.g));
    }
    if reasons.is_empty() {
        reasons.push("all-components-relatively-prime".into());
        (Verdict::Yes, reasons)
    } else {
        (Verdict::Unknown, reasons)
    }
}

/// Number of distinct values among the Galois conjugates of `b`.
fn distinct_conjugates(field: &CoefficientField, b: &FieldElem) -> u64 {
    let e = field.degree() as u64;
    // θ -> ζθ scales coordinate j by ζ^j; ζ fixes b iff ord(ζ) divides
    // every j with a nonzero coordinate
    let g = b
        .coords()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !c.is_zero())
        .fold(e, |acc, (j, _)| acc.gcd(&(j as u64)));
    e / g
}

fn support(b: &FieldElem) -> Vec<usize> {
    b.coords().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, _)| j).collect()
}

/// Semi-simplicity: every component relatively prime and all carrousel
/// approximations `(p, q, β)` pairwise distinct, conjugate branches
/// included.
pub fn check_semisimple(components: &[CerfComponent]) -> (Verdict, Vec<String>) {
    let mut reasons = Vec::new();
    if let Some(c) = components.iter().find(|c| c.g != 1) {
        reasons.push(format!("not-relatively-prime:{}(g={})", c.name, c.g));
        return (Verdict::No, reasons);
    }
    let mut verdict = Verdict::Yes;
    let demote = |v: &mut Verdict, to: Verdict| {
        if to == Verdict::No || *v == Verdict::Yes {
            *v = to;
        }
    };
    for c in components.iter().filter(|c| c.conjugates > 1) {
        match &c.beta {
            None => {
                reasons.push(format!("beta-unknown:{}", c.name));
                demote(&mut verdict, Verdict::Unknown);
            }
            Some(b) if distinct_conjugates(&c.field, b) < c.conjugates as u64 => {
                reasons.push(format!("conjugate-branches-share-approximation:{}", c.name));
                demote(&mut verdict, Verdict::No);
            }
            Some(_) => {}
        }
    }
    for (i, a) in components.iter().enumerate() {
        for b in &components[i + 1..] {
            if (a.p, a.q) != (b.p, b.q) {
                continue;
            }
            match (&a.beta, &b.beta) {
                (Some(x), Some(y)) if a.field == b.field => {
                    if x == y {
                        reasons.push(format!("equal-approximations:{}|{}", a.name, b.name));
                        demote(&mut verdict, Verdict::No);
                    } else if a.field != CoefficientField::Rational && support(x) == support(y) {
                        // conjugates could still coincide through a root of unity
                        reasons.push(format!("root-of-unity-ambiguity:{}|{}", a.name, b.name));
                        demote(&mut verdict, Verdict::Unknown);
                    }
                }
                (Some(x), Some(y)) => {
                    // a rational β differs from every conjugate of an irrational one
                    if x.as_rational().is_none() && y.as_rational().is_none() {
                        reasons.push(format!("incomparable-fields:{}|{}", a.name, b.name));
                        demote(&mut verdict, Verdict::Unknown);
                    }
                }
                _ => {
                    reasons.push(format!("beta-unknown:{}|{}", a.name, b.name));
                    demote(&mut verdict, Verdict::Unknown);
                }
            }
        }
    }
    if verdict == Verdict::Yes {
        reasons.push(if components.len() <= 1 && components.iter().all(|c| c.conjugates == 1) {
            "single-component".into()
        } else {
            "distinct-approximations".into()
        });
    }
    (verdict, reasons)
}

/// Both decisions; semi-simplicity is only asserted for carrousel forms.
pub fn carrousel_verdict(components: &[CerfComponent], gamma1: &Cycle) -> CarrouselVerdict {
    let (form, mut reasons) = check_carrousel_form(components, gamma1);
    let (mut semi, r2) = check_semisimple(components);
    reasons.extend(r2);
    if form != Verdict::Yes && semi == Verdict::Yes {
        semi = Verdict::Unknown;
    }
    CarrouselVerdict { carrousel_form: form, semi_simple: semi, reasons }
}
