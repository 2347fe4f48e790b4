//! Named fixtures with committed expected reports.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::analysis::{run_analysis, AnalysisConfig};
use crate::report::Report;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub config: AnalysisConfig,
    /// `None` for fixtures whose analysis must fail with `error`.
    pub expected: Option<Report>,
    #[serde(default)]
    pub error: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum GoldenError {
    #[error("unknown fixture `{0}`")]
    Unknown(String),
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("{0}: {1}")]
    Format(PathBuf, serde_json::Error),
}

#[derive(Debug)]
pub struct Outcome {
    pub name: String,
    pub diffs: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.diffs.is_empty()
    }
}

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// `example-3.1 a=4 b=3 c=2` becomes `example-3.1-a4-b3-c2`.
pub fn normalize(name: &str) -> String {
    name.split_whitespace().map(|t| t.replace('=', "").to_lowercase()).collect::<Vec<_>>().join("-")
}

pub fn load_all(dir: &Path) -> Result<Vec<(PathBuf, Fixture)>, GoldenError> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| GoldenError::Io(dir.into(), e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().map_or(false, |x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let s = fs::read_to_string(&p).map_err(|e| GoldenError::Io(p.clone(), e))?;
            let f: Fixture = serde_json::from_str(&s).map_err(|e| GoldenError::Format(p.clone(), e))?;
            Ok((p, f))
        })
        .collect()
}

/// Fixtures named `name`, or all with `name-` as prefix; `all` selects
/// everything.
pub fn select(dir: &Path, name: &str) -> Result<Vec<(PathBuf, Fixture)>, GoldenError> {
    let all = load_all(dir)?;
    if name == "all" {
        return Ok(all);
    }
    let key = normalize(name);
    let exact: Vec<_> = all.iter().filter(|(_, f)| f.name == key).cloned().collect();
    if !exact.is_empty() {
        return Ok(exact);
    }
    let prefix = format!("{}-", key);
    let hits: Vec<_> = all.into_iter().filter(|(_, f)| f.name.starts_with(&prefix)).collect();
    if hits.is_empty() {
        return Err(GoldenError::Unknown(name.into()));
    }
    Ok(hits)
}

fn describe(v: &Value) -> String {
    let s = v.to_string();
    if s.len() > 120 {
        format!("{}…", &s[..s.char_indices().nth(117).map_or(s.len(), |(i, _)| i)])
    } else {
        s
    }
}

/// Paths where `got` differs from `want`.
pub fn diff(path: &str, want: &Value, got: &Value, out: &mut Vec<String>) {
    match (want, got) {
        (Value::Object(a), Value::Object(b)) => {
            for (k, va) in a {
                let p = if path.is_empty() { k.clone() } else { format!("{}.{}", path, k) };
                match b.get(k) {
                    Some(vb) => diff(&p, va, vb, out),
                    None => out.push(format!("{}: missing", p)),
                }
            }
            for k in b.keys().filter(|k| !a.contains_key(*k)) {
                out.push(format!("{}.{}: unexpected field", path, k));
            }
        }
        (Value::Array(a), Value::Array(b)) => {
            for (i, (va, vb)) in a.iter().zip(b).enumerate() {
                diff(&format!("{}[{}]", path, i), va, vb, out);
            }
            if a.len() != b.len() {
                out.push(format!("{}: expected {} entries, got {}", path, a.len(), b.len()));
            }
        }
        _ if want != got => out.push(format!("{}: expected {}, got {}", path, describe(want), describe(got))),
        _ => {}
    }
}

pub fn run_fixture(f: &Fixture) -> Outcome {
    let mut diffs = Vec::new();
    match (run_analysis(&f.config), &f.expected, &f.error) {
        (Ok(got), Some(want), _) => {
            let want = serde_json::to_value(want).expect("report serializes");
            let got = serde_json::to_value(&got).expect("report serializes");
            diff("", &want, &got, &mut diffs);
        }
        (Ok(_), None, _) => diffs.push("expected an error, analysis succeeded".into()),
        (Err(e), _, Some(code)) if e.code() == *code => {}
        (Err(e), _, _) => diffs.push(format!("analysis failed: [{}] {}", e.code(), e)),
    }
    Outcome { name: f.name.clone(), diffs }
}

/// Rewrites the expected report of a fixture from the current analysis.
pub fn bless(path: &Path, f: &Fixture) -> Result<(), GoldenError> {
    let mut f = f.clone();
    match run_analysis(&f.config) {
        Ok(r) => {
            f.expected = Some(r);
            f.error = None;
        }
        Err(e) => {
            f.expected = None;
            f.error = Some(e.code());
        }
    }
    let mut s = serde_json::to_string_pretty(&f).map_err(|e| GoldenError::Format(path.into(), e))?;
    s.push('\n');
    fs::write(path, s).map_err(|e| GoldenError::Io(path.into(), e))
}
