use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use carrousel_cli::golden::{bless, fixture_dir, run_fixture, select};
use carrousel_cli::render::render_text;
use carrousel_cli::{run_analysis, AnalysisConfig, OutputFormat, ProfileName};

#[derive(Parser)]
#[command(name = "carrousel", version, about = "Polar curves, Lê cycles and carrousel monodromy constraints")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Paper,
    Strict,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze a polynomial germ at the origin.
    Analyze {
        /// Polynomial file, or `-` for stdin.
        #[arg(long)]
        input: String,
        /// Comma-separated variables.
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long)]
        z0: Option<String>,
        /// Observed monodromy trace on the top homology.
        #[arg(long, allow_hyphen_values = true)]
        trace: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        chi_link: Option<i64>,
        #[arg(long)]
        mu0_slice: Option<u64>,
        #[arg(long)]
        sigma_dim: Option<usize>,
        /// Known top reduced Betti number.
        #[arg(long)]
        bn: Option<u64>,
        /// Slice characteristic polynomial, e.g. `(L^8±1)(L+1)/(L^4-1)`.
        #[arg(long = "slice-char")]
        slice_char: Vec<String>,
        /// A characteristic polynomial that char^(n-1) must divide.
        #[arg(long)]
        divides: Vec<String>,
        #[arg(long)]
        hints: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "paper")]
        profile: ProfileArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        trunc_cap: Option<i64>,
    },
    /// Check fixtures against their committed reports.
    Golden {
        #[arg(default_value = "all")]
        name: String,
        /// Rewrite the expected reports instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

fn read_input(input: &str) -> std::io::Result<String> {
    if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(input)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match cli.cmd {
        Cmd::Analyze { input, vars, z0, trace, chi_link, mu0_slice, sigma_dim, bn, slice_char, divides, hints, profile, format, trunc_cap } => {
            let text = match read_input(&input) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error [cli.config]: {}: {}", input, e);
                    return ExitCode::from(3);
                }
            };
            let mut cfg = AnalysisConfig {
                input: text.trim().to_string(),
                vars,
                z0,
                observed_trace: trace,
                chi_link,
                mu0_slice,
                sigma_dim,
                bn,
                slice_chars: slice_char,
                divides,
                hint_file: hints,
                profile: match profile {
                    ProfileArg::Paper => ProfileName::Paper,
                    ProfileArg::Strict => ProfileName::Strict,
                },
                format: match format {
                    Format::Text => OutputFormat::Text,
                    Format::Structured => OutputFormat::Structured,
                },
                ..Default::default()
            };
            if let Some(c) = trunc_cap {
                cfg.trunc_cap = c;
            }
            match run_analysis(&cfg) {
                Ok(r) => {
                    match cfg.format {
                        OutputFormat::Text => print!("{}", render_text(&r)),
                        OutputFormat::Structured => print!("{}", r.to_json()),
                    }
                    ExitCode::from(if r.is_clean() { 0 } else { 1 })
                }
                Err(e) => {
                    eprintln!("error [{}]: {}", e.code(), e);
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Cmd::Golden { name, bless: rewrite } => {
            let fixtures = match select(&fixture_dir(), &name) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error [cli.golden]: {}", e);
                    return ExitCode::from(3);
                }
            };
            let mut failed = 0;
            for (path, f) in &fixtures {
                if rewrite {
                    if let Err(e) = bless(path, f) {
                        eprintln!("error [cli.golden]: {}", e);
                        return ExitCode::from(2);
                    }
                    println!("blessed {}", f.name);
                    continue;
                }
                let o = run_fixture(f);
                println!("{} {}", if o.passed() { "pass" } else { "FAIL" }, o.name);
                for d in &o.diffs {
                    println!("    {}", d);
                }
                failed += usize::from(!o.passed());
            }
            println!("{} of {} fixtures passed", fixtures.len() - failed, fixtures.len());
            ExitCode::from(if failed == 0 { 0 } else { 2 })
        }
    }
}
