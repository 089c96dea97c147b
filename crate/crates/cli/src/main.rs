use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lefschetz_core::scalar::DEFAULT_PRIME;
use lefschetz_core::{parse_poly, FieldConfig, MultiDegree};
use lefschetz_lab::batch::{run_aci, AciOptions};
use lefschetz_lab::sweep::{run_sweep, SweepOptions, DEFAULT_Q_BOUND};
use lefschetz_lab::sysfile::{infer_vars, read_system_file};
use lefschetz_lab::{analyze, analyze_milnor, to_json, AnalyzeOptions, CliError, Result};

/// Exit status for bad input or flags; 0, 1 and 2 carry analysis verdicts.
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "lefschetz-lab",
    version,
    about = "Exact certificates for graded complete intersections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline on a system file.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Lefschetz degrees, comma separated (1 is always included).
        #[arg(long, value_delimiter = ',', default_value = "1")]
        k: Vec<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Full pipeline on the gradient system of one form.
    Milnor {
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        expr: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        k: Vec<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Seeded almost complete intersections inside the off-diagonal ideal.
    Aci {
        #[arg(long)]
        multidegree: MultiDegree,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Random complete intersections of one multidegree.
    Sweep {
        #[arg(long)]
        multidegree: MultiDegree,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// `q` or `fp:<p>`.
    #[arg(long)]
    field: Option<FieldConfig>,
    /// SLP witness trials (analyze, milnor, sweep) or linear forms per fixture (aci).
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    coeff_bound: Option<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report on stdout.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    no_timing: bool,
}

impl Common {
    fn analyze_options(&self, k: Vec<usize>) -> AnalyzeOptions {
        let d = AnalyzeOptions::default();
        AnalyzeOptions {
            ks: k,
            trials: self.trials.unwrap_or(d.trials),
            seed: self.seed,
            coeff_bound: self.coeff_bound.unwrap_or(d.coeff_bound),
            timing: !self.no_timing,
        }
    }

    /// JSON goes to `--out` when given, else to stdout if `--json` or `always`.
    fn emit(&self, json: &str, summary: impl FnOnce() -> String, always: bool) -> Result<()> {
        if let Some(path) = &self.out {
            std::fs::write(path, json).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
        }
        let mut stdout = std::io::stdout().lock();
        let text = if self.json || (always && self.out.is_none()) {
            json.to_string()
        } else if always {
            String::new()
        } else {
            summary()
        };
        let _ = stdout.write_all(text.as_bytes());
        Ok(())
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze { input, k, common } => {
            let field = common.field.unwrap_or(FieldConfig::Rational);
            let sys = read_system_file(&input, field)?.into_system(field)?;
            let a = analyze(sys, &common.analyze_options(k), "file", None)?;
            common.emit(&to_json(&a.report)?, String::new, true)?;
            Ok(a.status.exit_code() as u8)
        }
        Command::Milnor {
            expr,
            input,
            k,
            common,
        } => {
            let field = common.field.unwrap_or(FieldConfig::Rational);
            let (f, vars) = match (expr, input) {
                (Some(e), _) => {
                    let vars = infer_vars(&e);
                    (parse_poly(&e, &vars, field)?, vars)
                }
                (None, Some(path)) => {
                    let file = read_system_file(&path, field)?;
                    if file.forms.len() != 1 {
                        return Err(CliError::Usage(format!(
                            "milnor expects one form, {} has {}",
                            path.display(),
                            file.forms.len()
                        )));
                    }
                    (file.forms[0].clone(), file.vars)
                }
                (None, None) => return Err(CliError::Usage("give --expr or --input".into())),
            };
            let a = analyze_milnor(&f, vars, &common.analyze_options(k))?;
            common.emit(&to_json(&a.report)?, String::new, true)?;
            Ok(a.status.exit_code() as u8)
        }
        Command::Aci {
            multidegree,
            samples,
            common,
        } => {
            let mut opts = AciOptions::new(multidegree, samples, common.seed);
            opts.field = common.field.unwrap_or(FieldConfig::Rational);
            opts.coeff_bound = common.coeff_bound.unwrap_or(opts.coeff_bound);
            opts.linear_forms = common.trials.unwrap_or(opts.linear_forms);
            opts.jobs = common.jobs;
            opts.timing = !common.no_timing;
            let r = run_aci(&opts)?;
            let summary = || {
                let mut s = String::new();
                for d in &r.details {
                    s.push_str(&format!(
                        "#{:04} passed={} quotient_dim={} c1={}/{} outside={}/{}{}\n",
                        d.index,
                        d.passed,
                        d.quotient_dim,
                        d.c1_holds,
                        d.linear_forms,
                        d.power_outside_ideal,
                        d.linear_forms,
                        if d.failed_claims.is_empty() {
                            String::new()
                        } else {
                            format!(" failed={}", d.failed_claims.join(","))
                        }
                    ));
                }
                s.push_str(&format!(
                    "multidegree {:?}: {}/{} passed, c1 rate {}, power outside ideal rate {}\n",
                    r.multidegree,
                    r.passed,
                    r.samples,
                    fmt_rate(r.c1_rate),
                    fmt_rate(r.power_outside_ideal_rate)
                ));
                s
            };
            common.emit(&to_json(&r)?, summary, false)?;
            Ok(0)
        }
        Command::Sweep {
            multidegree,
            samples,
            common,
        } => {
            let field = common.field.unwrap_or(FieldConfig::Prime(DEFAULT_PRIME));
            let mut opts = SweepOptions::new(multidegree, samples, field, common.seed);
            opts.coeff_bound = common.coeff_bound.unwrap_or(DEFAULT_Q_BOUND);
            opts.trials = common.trials.unwrap_or(opts.trials);
            opts.jobs = common.jobs;
            opts.timing = !common.no_timing;
            let s = run_sweep(&opts)?;
            let summary = || {
                let mut text: String = s.outcomes.iter().map(|o| format!("{}\n", o.line)).collect();
                text.push_str(&format!(
                    "multidegree {:?} over {}: {} samples, ci {}, condition1 {}, condition2 {}, slp1 {}, escalations {}, violations {}\n",
                    s.multidegree,
                    s.field,
                    s.completed,
                    fmt_rate(s.ci_rate),
                    fmt_rate(s.condition1_rate),
                    fmt_rate(s.condition2_rate),
                    fmt_rate(s.slp1_rate),
                    s.escalations,
                    s.violations()
                ));
                text
            };
            common.emit(&to_json(&s)?, summary, false)?;
            Ok(if s.violations() > 0 { 2 } else { 0 })
        }
    }
}

fn fmt_rate(r: Option<f64>) -> String {
    r.map_or_else(|| "n/a".into(), |r| format!("{:.3}", r))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
