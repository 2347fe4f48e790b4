//! Configuration and orchestration: cascade, intersection numbers, Cerf
//! classification, then the constraint engine.

use std::path::PathBuf;

use carrousel_core::cerf::{carrousel_verdict, cerf_component_capped, CerfError, Verdict};
use carrousel_core::cycles::{intersection_numbers_capped, polar_le_cascade, CascadeOptions, CycleError, DEFAULT_TRUNC_CAP};
use carrousel_core::monodromy::{build_report, derived_inputs, CharPoly, MonodromyError, Profile, ReportConfig, ReportInputs};
use serde::{Deserialize, Serialize};

use crate::factorspec::{parse_factorspec, FactorSpecError};
use crate::hintfile::{parse_hints, HintError};
use crate::parse::{parse_polynomial, ParseError};
use crate::report::Report;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileName {
    #[default]
    Paper,
    Strict,
}

impl From<ProfileName> for Profile {
    fn from(p: ProfileName) -> Self {
        match p {
            ProfileName::Paper => Profile::Paper,
            ProfileName::Strict => Profile::Strict,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub input: String,
    pub vars: Vec<String>,
    /// Defaults to the first variable.
    pub z0: Option<String>,
    pub observed_trace: Option<i64>,
    pub chi_link: Option<i64>,
    pub mu0_slice: Option<u64>,
    pub sigma_dim: Option<usize>,
    /// Known top Betti number `b̃_n`.
    pub bn: Option<u64>,
    /// Factorspecs for the slice characteristic polynomial.
    pub slice_chars: Vec<String>,
    /// Factorspecs that `char^{n-1}` must divide.
    pub divides: Vec<String>,
    /// Hint text; `hint_file` is read when this is absent.
    pub hints: Option<String>,
    pub hint_file: Option<PathBuf>,
    pub profile: ProfileName,
    pub trunc_cap: i64,
    pub format: OutputFormat,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            input: String::new(),
            vars: Vec::new(),
            z0: None,
            observed_trace: None,
            chi_link: None,
            mu0_slice: None,
            sigma_dim: None,
            bn: None,
            slice_chars: Vec::new(),
            divides: Vec::new(),
            hints: None,
            hint_file: None,
            profile: ProfileName::Paper,
            trunc_cap: DEFAULT_TRUNC_CAP,
            format: OutputFormat::Text,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AnalysisError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("input polynomial: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    FactorSpec(#[from] FactorSpecError),
    #[error("{0}")]
    Hint(#[from] HintError),
    #[error("cycles: {0}")]
    Cycle(#[from] CycleError),
    #[error("cerf: {0}")]
    Cerf(#[from] CerfError),
    #[error("monodromy: {0}")]
    Monodromy(#[from] MonodromyError),
}

fn variant<T: std::fmt::Debug>(e: &T) -> String {
    let s = format!("{:?}", e);
    let end = s.find(|c: char| !c.is_alphanumeric()).unwrap_or(s.len());
    let mut out = String::new();
    for (i, c) in s[..end].chars().enumerate() {
        if c.is_uppercase() && i > 0 {
            out.push('-');
        }
        out.extend(c.to_lowercase());
    }
    out
}

impl AnalysisError {
    /// 2 for analysis failures, 3 for bad configuration.
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalysisError::Config(_) | AnalysisError::Parse(_) | AnalysisError::FactorSpec(_) | AnalysisError::Hint(_) => 3,
            _ => 2,
        }
    }

    /// Stable machine-readable identifier, `module.rule`.
    pub fn code(&self) -> String {
        match self {
            AnalysisError::Config(_) => "cli.config".into(),
            AnalysisError::Parse(_) => "cli.parse".into(),
            AnalysisError::FactorSpec(_) => "cli.factorspec".into(),
            AnalysisError::Hint(_) => "cli.hints".into(),
            AnalysisError::Cycle(e) => format!("cycles.{}", variant(e)),
            AnalysisError::Cerf(e) => format!("cerf.{}", variant(e)),
            AnalysisError::Monodromy(e) => format!("monodromy.{}", variant(e)),
        }
    }
}

/// Variables with `z0` moved to the front.
fn coordinates(cfg: &AnalysisConfig) -> Result<(Vec<String>, String), AnalysisError> {
    if cfg.vars.is_empty() {
        return Err(AnalysisError::Config("no variables declared".into()));
    }
    for (i, v) in cfg.vars.iter().enumerate() {
        let ok = v.chars().next().map_or(false, |c| c.is_alphabetic() || c == '_') && v.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(AnalysisError::Config(format!("`{}` is not a valid variable name", v)));
        }
        if cfg.vars[..i].contains(v) {
            return Err(AnalysisError::Config(format!("variable `{}` declared twice", v)));
        }
    }
    let z0 = cfg.z0.clone().unwrap_or_else(|| cfg.vars[0].clone());
    if !cfg.vars.contains(&z0) {
        return Err(AnalysisError::Config(format!("z0 `{}` is not a declared variable", z0)));
    }
    let mut coords = vec![z0.clone()];
    coords.extend(cfg.vars.iter().filter(|v| **v != z0).cloned());
    Ok((coords, z0))
}

fn specs(list: &[String]) -> Result<Vec<CharPoly>, AnalysisError> {
    let mut out = Vec::new();
    for s in list {
        for c in parse_factorspec(s)? {
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

pub fn run_analysis(cfg: &AnalysisConfig) -> Result<Report, AnalysisError> {
    let (coords, z0) = coordinates(cfg)?;
    if cfg.trunc_cap < DEFAULT_TRUNC_CAP {
        return Err(AnalysisError::Config(format!("truncation cap {} is below the default {}", cfg.trunc_cap, DEFAULT_TRUNC_CAP)));
    }
    let f = parse_polynomial(&cfg.input, &cfg.vars)?.embed(&coords).map_err(CycleError::from)?;
    let hint_text = match (&cfg.hints, &cfg.hint_file) {
        (Some(t), _) => Some(t.clone()),
        (None, Some(p)) => Some(std::fs::read_to_string(p).map_err(|e| AnalysisError::Config(format!("{}: {}", p.display(), e)))?),
        (None, None) => None,
    };
    let hints = match hint_text {
        Some(t) => parse_hints(&t, &coords)?,
        None => Default::default(),
    };
    let slice_chars = specs(&cfg.slice_chars)?;
    let divides = specs(&cfg.divides)?;

    let opts = CascadeOptions { trunc: None, trunc_cap: cfg.trunc_cap, hints };
    let cascade = polar_le_cascade(&f, &coords, &opts)?;
    let gamma1 = cascade.gamma1();
    let data = intersection_numbers_capped(gamma1, &f, &z0, cfg.trunc_cap)?;
    let mut cerf = Vec::new();
    for d in gamma1.components.iter().filter(|d| d.multiplicity == 1) {
        cerf.push(cerf_component_capped(d, &f, &z0, cfg.trunc_cap)?);
    }
    let verdict = carrousel_verdict(&cerf, gamma1);

    let mut inputs = derived_inputs(&cascade, &z0)?;
    let set = |key: &str, inputs: &mut ReportInputs| {
        inputs.provenance.insert(key.into(), "user".into());
    };
    if let Some(v) = cfg.sigma_dim {
        if inputs.sigma_dim.map_or(false, |d| d != v) {
            return Err(AnalysisError::Config(format!("sigma_dim {} contradicts the computed dimension {}", v, inputs.sigma_dim.unwrap_or(0))));
        }
        inputs.sigma_dim = Some(v);
        set("sigma_dim", &mut inputs);
    }
    if let Some(v) = cfg.chi_link {
        inputs.chi_link = Some(v);
        set("chi_link", &mut inputs);
    }
    if let Some(v) = cfg.mu0_slice {
        inputs.b_slice = Some(v);
        set("b_slice", &mut inputs);
    }
    if let Some(v) = cfg.bn {
        inputs.bn = Some(v);
        set("bn", &mut inputs);
    }
    if let Some(v) = cfg.observed_trace {
        inputs.observed_trace = Some(v);
        set("observed_trace", &mut inputs);
    }
    if !slice_chars.is_empty() {
        inputs.slice_chars = slice_chars;
        set("slice_char", &mut inputs);
    }
    if !divides.is_empty() {
        inputs.divides = divides;
        set("divides", &mut inputs);
    }

    let report = build_report(&data, &cerf, &verdict, &inputs, &ReportConfig { profile: cfg.profile.into() })?;

    let mut warnings: Vec<String> = cascade.warnings.iter().map(|w| format!("cycles: {}", w)).collect();
    if verdict.carrousel_form != Verdict::Yes {
        warnings.push(format!("cerf: carrousel form is {}", verdict.carrousel_form.as_str()));
    }
    if verdict.semi_simple == Verdict::Unknown {
        warnings.push("cerf: semi-simplicity is unknown".into());
    }
    Ok(Report::new(cfg, &coords, &cascade, &report, warnings))
}
