//! `dilute-spectra`: masses, amplitudes, identity checks and finite-size Bethe
//! solves for the dilute A_L models.
//!
//! Exit codes: 0 success, 1 verification or solver failure, 2 usage error.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dilute_spectra::bethe::{self, SolverOptions};
use dilute_spectra::elliptic::Truncation;
use dilute_spectra::model::{self, ModelParams, NomeFrame};
use dilute_spectra::spectrum;
use dilute_spectra::verifier::{self, SuiteOptions, VerificationReport};
use dilute_spectra::Error;
use serde_json::json;

use output::{join, num, Artifact, Format};

#[derive(Parser)]
#[command(name = "dilute-spectra", version, about = "Excitation spectra of the dilute A_L lattice models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Masses and correlation lengths of every excitation.
    Masses {
        #[arg(long = "L", value_name = "L")]
        l: u32,
        #[command(flatten)]
        nome: NomeArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        kernel: KernelArgs,
    },
    /// Universal amplitude combinations of the L = 4 model.
    Amplitudes {
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Numeric identity checks.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
        /// Seed for the sample points.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample points per case.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Nomes x for the recurrence and assembly suites.
        #[arg(long, value_delimiter = ',', default_values_t = verifier::DEFAULT_XS)]
        xs: Vec<f64>,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        kernel: KernelArgs,
    },
    /// Finite-N Bethe solves at the isotropic point.
    Bethe {
        #[arg(long = "L", value_name = "L", default_value_t = 4)]
        l: u32,
        /// Lattice width (even).
        #[arg(long = "N", value_name = "N")]
        n: usize,
        /// Largest width accepted.
        #[arg(long, default_value_t = 24)]
        max_n: usize,
        /// Excitations to solve; 0 is the ground state.
        #[arg(long = "j", value_delimiter = ',', default_values_t = [0usize])]
        j: Vec<usize>,
        #[command(flatten)]
        nome: NomeArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        kernel: KernelArgs,
    },
    /// Masses against their critical asymptotes over a log-spaced p range.
    Scan {
        #[arg(long = "L", value_name = "L")]
        l: u32,
        #[arg(long, default_value_t = 1e-8)]
        p_min: f64,
        #[arg(long, default_value_t = 1e-5)]
        p_max: f64,
        #[arg(long, default_value_t = 16)]
        count: usize,
        #[command(flatten)]
        out: OutputArgs,
        #[command(flatten)]
        kernel: KernelArgs,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct NomeArgs {
    /// Nome p = e^{-ε}.
    #[arg(long)]
    p: Option<f64>,
    /// Conjugate nome x = e^{-π²/(rε)}.
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format (default json; csv for scan).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct KernelArgs {
    /// Tail tolerance of the truncated products.
    #[arg(long)]
    tol: Option<f64>,
    /// Term cap of the truncated products (overrides DILUTE_SPECTRA_MAX_TERMS).
    #[arg(long)]
    max_terms: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Poch,
    Recurrences,
    Assembly,
    All,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Usage(String),
    Run(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Run(format!("{e:#}"))
    }
}

type CmdResult = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Library errors from argument validation are usage errors, the rest are
/// run failures.
fn classify(e: Error) -> Failure {
    match e {
        Error::Domain(_) | Error::Ansatz(_) => Failure::Usage(e.to_string()),
        other => Failure::Run(other.to_string()),
    }
}

fn truncation(k: &KernelArgs) -> Result<Truncation, Failure> {
    let mut tr = Truncation::from_env().map_err(usage)?;
    if let Some(tol) = k.tol {
        tr = tr.with_tol(tol).map_err(usage)?;
    }
    if let Some(m) = k.max_terms {
        tr = tr.with_max_terms(m).map_err(usage)?;
    }
    Ok(tr)
}

fn frame(nome: &NomeArgs, params: &ModelParams) -> Result<NomeFrame, Failure> {
    let r = match (nome.p, nome.x, nome.eps) {
        (Some(p), None, None) => NomeFrame::from_p(p, params),
        (None, Some(x), None) => NomeFrame::from_x(x, params),
        (None, None, Some(eps)) => NomeFrame::from_eps(eps, params),
        _ => return Err(usage("give exactly one of --p, --x, --eps")),
    };
    r.map_err(|e| usage(format!("nome out of range: {e}")))
}

fn nome_json(f: &NomeFrame) -> serde_json::Value {
    json!({ "p": f.p, "x": f.x, "eps": f.eps })
}

fn cmd_masses(l: u32, nome: &NomeArgs, out: &OutputArgs, kernel: &KernelArgs) -> CmdResult {
    let params = model::params_for(l).map_err(usage)?;
    let frame = frame(nome, &params)?;
    let tr = truncation(kernel)?;
    let spectrum = spectrum::mass_spectrum(&params, &frame, &tr).map_err(classify)?;
    let mut art = Artifact::new("masses", &["j", "label", "a_set", "m", "xi", "parity"]);
    art.field("L", l);
    art.field("nome", nome_json(&frame));
    let mut rows = Vec::new();
    for e in &spectrum.entries {
        art.rows.push(vec![
            e.index.to_string(),
            e.label.to_string(),
            join(e.a_set),
            num(e.mass),
            num(e.correlation_length),
            e.parity.map(|p| p.to_string()).unwrap_or_default(),
        ]);
        rows.push(json!({
            "j": e.index,
            "label": e.label,
            "a_set": e.a_set,
            "m": e.mass,
            "xi": e.correlation_length,
            "parity": e.parity,
        }));
    }
    art.field("rows", rows);
    art.emit(out.format.unwrap_or(Format::Json), out.output.as_deref())?;
    Ok(())
}

fn cmd_amplitudes(out: &OutputArgs) -> CmdResult {
    let a = spectrum::amplitudes();
    let mut art = Artifact::new("amplitudes", &["name", "value"]);
    let values = [
        ("fs_xi1_sq", a.fs_xi1_sq),
        ("r_xi_plus", a.r_xi_plus),
        ("r_xi_minus", a.r_xi_minus),
        ("xi0_ratio", a.xi0_ratio),
    ];
    for (k, v) in values {
        art.field(k, v);
        art.rows.push(vec![k.to_string(), num(v)]);
    }
    art.emit(out.format.unwrap_or(Format::Json), out.output.as_deref())?;
    Ok(())
}

fn run_suites(suite: Suite, opts: &SuiteOptions) -> dilute_spectra::Result<VerificationReport> {
    let mut report = VerificationReport { cases: Vec::new() };
    if matches!(suite, Suite::Poch | Suite::All) {
        report.extend(verifier::poch_suite(opts)?);
    }
    if matches!(suite, Suite::Recurrences | Suite::All) {
        report.extend(verifier::recurrence_suite(opts)?);
    }
    if matches!(suite, Suite::Assembly | Suite::All) {
        report.extend(verifier::assembly_suite(opts)?);
    }
    Ok(report)
}

fn cmd_verify(suite: Suite, seed: u64, samples: usize, xs: &[f64], out: &OutputArgs, kernel: &KernelArgs) -> CmdResult {
    if samples == 0 {
        return Err(usage("--samples must be positive"));
    }
    let opts = SuiteOptions {
        seed,
        xs: xs.to_vec(),
        samples,
        truncation: truncation(kernel)?,
    };
    let report = run_suites(suite, &opts).map_err(classify)?;
    let mut art = Artifact::new(
        "verify",
        &["suite", "name", "j", "x", "samples", "skipped", "max_deviation", "tolerance", "passed", "constant_re", "constant_im"],
    );
    art.field("suite", format!("{suite:?}").to_lowercase());
    art.field("seed", seed);
    art.field("passed", report.passed());
    art.field("cases", serde_json::to_value(&report.cases).map_err(|e| Failure::Run(e.to_string()))?);
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    for c in &report.cases {
        art.rows.push(vec![
            c.suite.clone(),
            c.name.clone(),
            c.excitation.map(|j| j.to_string()).unwrap_or_default(),
            opt(c.x),
            c.samples.to_string(),
            c.skipped.to_string(),
            num(c.max_deviation),
            num(c.tolerance),
            c.passed.to_string(),
            opt(c.constant.map(|z| z.re)),
            opt(c.constant.map(|z| z.im)),
        ]);
    }
    // human-readable lines go to stdout unless the artifact itself does
    let to_file = out.output.is_some();
    for c in &report.cases {
        let line = format!(
            "{} {:<12} {:<48} x={:<6} dev={:.3e} tol={:.0e}",
            if c.passed { "PASS" } else { "FAIL" },
            c.suite,
            c.name,
            opt(c.x),
            c.max_deviation,
            c.tolerance
        );
        if to_file {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
    art.emit(out.format.unwrap_or(Format::Json), out.output.as_deref())?;
    if report.passed() {
        Ok(())
    } else {
        let worst: Vec<String> = report
            .worst(5)
            .into_iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{} (x = {}): {:e}", c.name, opt(c.x), c.max_deviation))
            .collect();
        Err(Failure::Run(format!("verification failed; worst cases:\n  {}", worst.join("\n  "))))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_bethe(l: u32, n: usize, max_n: usize, js: &[usize], nome: &NomeArgs, out: &OutputArgs, kernel: &KernelArgs) -> CmdResult {
    if n < 2 || n % 2 != 0 {
        return Err(usage(format!("--N must be even and at least 2, got {n}")));
    }
    if n > max_n {
        return Err(usage(format!("--N = {n} exceeds --max-n = {max_n}")));
    }
    let params = model::params_for(l).map_err(usage)?;
    if js.iter().any(|&j| j > 0) && l != 4 {
        return Err(usage("excited states are available for L = 4 only"));
    }
    let frame = frame(nome, &params)?;
    let opts = SolverOptions {
        truncation: truncation(kernel)?,
        ..SolverOptions::default()
    };
    let mut art = Artifact::new(
        "bethe",
        &["j", "N", "x", "ell", "signs", "residual", "ln_lambda_re", "ln_lambda_im", "ln_ratio_re", "ln_ratio_im", "closed_re", "closed_im", "deviation"],
    );
    art.field("L", l);
    art.field("N", n);
    art.field("nome", nome_json(&frame));
    let roots = |s: &bethe::BetheState| -> Vec<[f64; 2]> { s.roots().iter().map(|z| [z.re, z.im]).collect() };
    let solve_err = |e: Error| Failure::Run(format!("solver failed: {e}"));
    let mut states = Vec::new();
    for &j in js {
        if j == 0 {
            let g = bethe::solve_ground(&params, n, frame.x, &opts).map_err(solve_err)?;
            let ll = g.eigenvalue.ln_lambda;
            art.rows.push(vec![
                "0".into(),
                n.to_string(),
                num(frame.x),
                g.state.sector.ell.to_string(),
                String::new(),
                num(g.state.residual.unwrap_or(f64::NAN)),
                num(ll.re),
                num(ll.im),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
            ]);
            states.push(json!({
                "j": 0,
                "ell": g.state.sector.ell,
                "residual": g.state.residual,
                "ln_lambda": [ll.re, ll.im],
                "roots": roots(&g.state),
            }));
            continue;
        }
        let m = bethe::measure_excitation(&params, j, n, frame.x, &opts).map_err(|e| match e {
            Error::Domain(_) | Error::Ansatz(_) => classify(e),
            other => solve_err(other),
        })?;
        let s = &m.excited.state;
        let ll = m.excited.eigenvalue.ln_lambda;
        let constraints = bethe::string_constraints_check(s, &opts.truncation).map_err(solve_err)?;
        art.rows.push(vec![
            j.to_string(),
            n.to_string(),
            num(frame.x),
            s.sector.ell.to_string(),
            join(&m.excited.signs),
            num(s.residual.unwrap_or(f64::NAN)),
            num(ll.re),
            num(ll.im),
            num(m.ln_ratio.re),
            num(m.ln_ratio.im),
            num(m.ln_ratio_closed.re),
            num(m.ln_ratio_closed.im),
            num(m.deviation),
        ]);
        states.push(json!({
            "j": j,
            "ell": s.sector.ell,
            "signs": m.excited.signs,
            "residual": s.residual,
            "ln_lambda": [ll.re, ll.im],
            "ln_ratio": [m.ln_ratio.re, m.ln_ratio.im],
            "ln_ratio_closed": [m.ln_ratio_closed.re, m.ln_ratio_closed.im],
            "deviation": m.deviation,
            "phases": s.phases().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "constraints": constraints.entries,
            "roots": roots(s),
        }));
    }
    art.field("states", states);
    art.emit(out.format.unwrap_or(Format::Json), out.output.as_deref())?;
    Ok(())
}

fn cmd_scan(l: u32, p_min: f64, p_max: f64, count: usize, out: &OutputArgs, kernel: &KernelArgs) -> CmdResult {
    let params = model::params_for(l).map_err(usage)?;
    if !(p_min > 0.0 && p_min <= p_max && p_max < 1.0) {
        return Err(usage(format!("need 0 < p-min <= p-max < 1, got {p_min} and {p_max}")));
    }
    if count == 0 || (count == 1 && p_min != p_max) {
        return Err(usage("--count must be at least 2 for a range"));
    }
    let tr = truncation(kernel)?;
    let mut art = Artifact::new("scan", &["p", "j", "m", "m_asymptotic", "ratio"]);
    art.field("L", l);
    let mut rows = Vec::new();
    for k in 0..count {
        let p = match k {
            0 => p_min,
            k if k + 1 == count => p_max,
            k => p_min * (p_max / p_min).powf(k as f64 / (count - 1) as f64),
        };
        let frame = NomeFrame::from_p(p, &params).map_err(usage)?;
        let spec = spectrum::mass_spectrum(&params, &frame, &tr).map_err(classify)?;
        for (e, row) in spec.entries.iter().zip(model::excitation_table(l).map_err(classify)?) {
            let asym = spectrum::asymptotic_mass(&row, p, &params);
            let ratio = e.mass / asym;
            art.rows.push(vec![num(p), e.index.to_string(), num(e.mass), num(asym), num(ratio)]);
            rows.push(json!({ "p": p, "j": e.index, "m": e.mass, "m_asymptotic": asym, "ratio": ratio }));
        }
    }
    art.field("rows", rows);
    art.emit(out.format.unwrap_or(Format::Csv), out.output.as_deref())?;
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Masses { l, nome, out, kernel } => cmd_masses(*l, nome, out, kernel),
        Command::Amplitudes { out } => cmd_amplitudes(out),
        Command::Verify {
            suite,
            seed,
            samples,
            xs,
            out,
            kernel,
        } => cmd_verify(*suite, *seed, *samples, xs, out, kernel),
        Command::Bethe {
            l,
            n,
            max_n,
            j,
            nome,
            out,
            kernel,
        } => cmd_bethe(*l, *n, *max_n, j, nome, out, kernel),
        Command::Scan {
            l,
            p_min,
            p_max,
            count,
            out,
            kernel,
        } => cmd_scan(*l, *p_min, *p_max, *count, out, kernel),
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on its own usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
