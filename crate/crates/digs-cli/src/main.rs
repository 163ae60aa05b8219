//! Command-line front end: resolves a parameter set from preset, config
//! file, and flag overrides, dispatches the requested computation, and
//! writes CSV/JSON artifacts plus a run manifest. Data files carry no
//! timestamps, so identical invocations produce identical bytes; the
//! manifest records the wall clock.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use digs_core::analytic::{self, GeneralizedPopulations};
use digs_core::doppler::DopplerSpec;
use digs_core::liouvillian::steady_state_of;
use digs_core::params::{preset, Level, PresetBundle, PumpConfig, SystemParams};
use digs_core::response::{
    self, delay_ratio, group_index_at, Grid, MediumSpec, Method, ScanConfig,
};

#[derive(Parser)]
#[command(
    name = "digs",
    version,
    about = "Steady-state response of a pumped five-level DIGS atom"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan the probe susceptibility over a detuning grid.
    Spectrum(SpectrumArgs),
    /// Sweep the closed pump rate and tabulate populations.
    Populations(PopulationsArgs),
    /// Evaluate gain/anomalous-dispersion thresholds and group delays.
    Thresholds(ThresholdsArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Named parameter set (fig2-open, fig3-closed, fig5-populations,
    /// fig6-dispersion, kash-rb87, doppler-fig8, doppler-fig9).
    #[arg(long)]
    preset: Option<String>,
    /// Parameter config file; takes precedence over the preset's params.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Closed pump rate override.
    #[arg(long)]
    r: Option<f64>,
    /// Open pump rate overrides.
    #[arg(long)]
    r_b: Option<f64>,
    #[arg(long)]
    r_cp: Option<f64>,
    #[arg(long)]
    omega_b: Option<f64>,
    #[arg(long)]
    omega_c: Option<f64>,
    #[arg(long)]
    omega_mu: Option<f64>,
    #[arg(long)]
    omega_p: Option<f64>,
    #[arg(long)]
    delta_b: Option<f64>,
    #[arg(long)]
    delta_c: Option<f64>,
    #[arg(long)]
    delta_mu: Option<f64>,
    /// One-photon Doppler width override.
    #[arg(long)]
    sigma_delta_p: Option<f64>,
    /// Two-photon Doppler width override.
    #[arg(long)]
    sigma_delta: Option<f64>,
    /// Generic `key=value` overrides for any flat config key.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Probe-detuning grid, start:stop:count in gamma_ab units.
    #[arg(long, default_value = "-2:2:2001", allow_hyphen_values = true)]
    grid: String,
    /// Comma-separated methods: analytic, analytic-resonant,
    /// analytic-general, numeric, doppler.
    #[arg(long, default_value = "analytic")]
    method: String,
    /// Exit 4 unless multi-method scans agree within 5% of peak.
    #[arg(long)]
    assert: bool,
}

#[derive(Args)]
struct PopulationsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Pump-rate sweep, start:stop:count.
    #[arg(long, default_value = "0:0.05:51", allow_hyphen_values = true)]
    sweep: String,
}

#[derive(Args)]
struct ThresholdsArgs {
    #[command(flatten)]
    common: CommonArgs,
}

/// Exit codes: 0 ok, 2 usage/config (also clap's), 3 numeric failure,
/// 4 assert-mode tolerance breach.
const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERIC: u8 = 3;
const EXIT_ASSERT: u8 = 4;

enum CliError {
    Config(String),
    Numeric(String),
    Assert(String),
}

impl CliError {
    fn report(self) -> ExitCode {
        match self {
            CliError::Config(msg) => {
                eprintln!("config error: {msg}");
                ExitCode::from(EXIT_CONFIG)
            }
            CliError::Numeric(msg) => {
                eprintln!("numeric failure: {msg}");
                ExitCode::from(EXIT_NUMERIC)
            }
            CliError::Assert(msg) => {
                eprintln!("assertion failed: {msg}");
                ExitCode::from(EXIT_ASSERT)
            }
        }
    }
}

struct Resolved {
    label: String,
    params: SystemParams,
    medium: Option<MediumSpec>,
    doppler: Option<DopplerSpec>,
    populations: Option<GeneralizedPopulations>,
    tau_d_eit_s: Option<f64>,
}

fn set_field(params: &mut SystemParams, key: &str, value: f64) -> Result<(), CliError> {
    let deph = &mut params.dephasings;
    match key {
        "omega_mu" => params.omega_mu = value,
        "omega_b" => params.omega_b = value,
        "omega_c" => params.omega_c = value,
        "omega_p" => params.omega_p = value,
        "delta_p" => params.delta_p = value,
        "delta_mu" => params.delta_mu = value,
        "delta_b" => params.delta_b = value,
        "delta_c" => params.delta_c = value,
        "gamma_a" => params.gamma_a = value,
        "gamma_b" => params.gamma_b = value,
        "gamma_bp" => params.gamma_bp = value,
        "gamma_c" => params.gamma_c = value,
        "gamma_cp" => params.gamma_cp = value,
        "gamma_ph_ab" => deph.gamma_ph_ab = value,
        "gamma_ph_abp" => deph.gamma_ph_abp = value,
        "gamma_ph_ac" => deph.gamma_ph_ac = value,
        "gamma_ph_acp" => deph.gamma_ph_acp = value,
        "gamma_ph_bbp" => deph.gamma_ph_bbp = value,
        "gamma_ph_bc" => deph.gamma_ph_bc = value,
        "gamma_ph_bcp" => deph.gamma_ph_bcp = value,
        "gamma_ph_bpc" => deph.gamma_ph_bpc = value,
        "gamma_ph_bpcp" => deph.gamma_ph_bpcp = value,
        "gamma_ph_ccp" => deph.gamma_ph_ccp = value,
        "pump_broadens_coherences" => params.pump_broadens_coherences = value != 0.0,
        "r" | "r_b" | "r_cp" | "alpha_b" | "alpha_c" | "alpha_cp" => {
            set_pump_field(params, key, value)?
        }
        other => {
            return Err(CliError::Config(format!("unknown override key `{other}`")));
        }
    }
    Ok(())
}

fn set_pump_field(params: &mut SystemParams, key: &str, value: f64) -> Result<(), CliError> {
    match (&mut params.pump, key) {
        (PumpConfig::Closed { r, .. }, "r") => *r = value,
        (PumpConfig::Closed { alpha_b, .. }, "alpha_b") => *alpha_b = value,
        (PumpConfig::Closed { alpha_c, .. }, "alpha_c") => *alpha_c = value,
        (PumpConfig::Closed { alpha_cp, .. }, "alpha_cp") => *alpha_cp = value,
        (PumpConfig::Open { r_b, .. }, "r_b") => *r_b = value,
        (PumpConfig::Open { r_cp, .. }, "r_cp") => *r_cp = value,
        (pump, key) => {
            return Err(CliError::Config(format!(
                "pump override `{key}` does not match the {} variant",
                if pump.is_closed() { "closed" } else { "open" }
            )));
        }
    }
    Ok(())
}

fn resolve(common: &CommonArgs) -> Result<Resolved, CliError> {
    let bundle: Option<PresetBundle> = match &common.preset {
        Some(name) => Some(preset(name).map_err(|e| CliError::Config(e.to_string()))?),
        None => None,
    };

    let mut label = common
        .preset
        .clone()
        .unwrap_or_else(|| "custom".to_string());
    let mut params = match (&common.config, &bundle) {
        (Some(path), _) => {
            label = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or(label);
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            SystemParams::from_config_str(&text).map_err(|e| CliError::Config(e.to_string()))?
        }
        (None, Some(b)) => b.params.clone(),
        (None, None) => {
            return Err(CliError::Config(
                "provide --preset and/or --config".to_string(),
            ));
        }
    };

    for (key, value) in [
        ("r", common.r),
        ("r_b", common.r_b),
        ("r_cp", common.r_cp),
        ("omega_b", common.omega_b),
        ("omega_c", common.omega_c),
        ("omega_mu", common.omega_mu),
        ("omega_p", common.omega_p),
        ("delta_b", common.delta_b),
        ("delta_c", common.delta_c),
        ("delta_mu", common.delta_mu),
    ] {
        if let Some(v) = value {
            set_field(&mut params, key, v)?;
        }
    }
    for entry in &common.set {
        let (key, value) = entry
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("--set `{entry}` is not KEY=VALUE")))?;
        let value: f64 = value
            .parse()
            .map_err(|_| CliError::Config(format!("--set `{entry}`: bad number")))?;
        set_field(&mut params, key.trim(), value)?;
    }

    let report = params.validate();
    if !report.ok {
        let lines: Vec<String> = report
            .violations
            .iter()
            .map(|(id, msg)| format!("[{id}] {msg}"))
            .collect();
        return Err(CliError::Config(lines.join("; ")));
    }
    for w in &report.warnings {
        eprintln!("warning [{}]: {}", w.rule, w.message);
    }

    let mut doppler = bundle.as_ref().and_then(|b| b.doppler.clone());
    if common.sigma_delta_p.is_some() || common.sigma_delta.is_some() {
        let mut spec = doppler.unwrap_or_else(|| DopplerSpec::new(0.0, 0.0));
        if let Some(s) = common.sigma_delta_p {
            spec.sigma_delta_p = s;
        }
        if let Some(s) = common.sigma_delta {
            spec.sigma_delta = s;
        }
        doppler = Some(spec);
    }

    Ok(Resolved {
        label,
        params,
        medium: bundle.as_ref().and_then(|b| b.medium),
        doppler,
        populations: bundle.as_ref().and_then(|b| b.populations),
        tau_d_eit_s: bundle.as_ref().and_then(|b| b.tau_d_eit_s),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| CliError::Config(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, contents).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn manifest(
    command: &str,
    resolved: &Resolved,
    extra: serde_json::Value,
    outputs: &[PathBuf],
    started: Instant,
) -> serde_json::Value {
    let argv: Vec<String> = std::env::args().collect();
    serde_json::json!({
        "command": command,
        "argv": argv,
        "label": resolved.label,
        "params": resolved.params,
        "medium": resolved.medium,
        "doppler": resolved.doppler,
        "populations": resolved.populations,
        "run": extra,
        "outputs": outputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "version": env!("CARGO_PKG_VERSION"),
        "duration_seconds": started.elapsed().as_secs_f64(),
    })
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let resolved = resolve(&args.common)?;
    let grid = Grid::parse(&args.grid).map_err(|e| CliError::Config(e.to_string()))?;

    let mut methods = Vec::new();
    for name in args.method.split(',') {
        methods.push(
            Method::parse(name.trim(), &resolved.params)
                .map_err(|e| CliError::Config(e.to_string()))?,
        );
    }

    let mut outputs = Vec::new();
    let mut spectra = Vec::new();
    for method in &methods {
        let mut cfg = ScanConfig::new(*method);
        cfg.medium = resolved.medium;
        cfg.doppler = resolved.doppler.clone();
        cfg.populations = resolved.populations;
        let spectrum = response::scan(&resolved.params, &grid, &cfg);
        let failed: Vec<&str> = spectrum
            .points
            .iter()
            .filter_map(|p| p.flag.as_deref())
            .collect();
        if failed.len() == spectrum.points.len() {
            return Err(CliError::Numeric(format!(
                "every grid point failed for method {}: {}",
                method.label(),
                failed[0]
            )));
        }
        if !failed.is_empty() {
            eprintln!(
                "warning: {} of {} points flagged for {} (first: {})",
                failed.len(),
                spectrum.points.len(),
                method.label(),
                failed[0]
            );
        }
        let path = args
            .common
            .out_dir
            .join(format!("{}_{}.csv", resolved.label, method.label()));
        write_file(&path, &spectrum.to_csv())?;
        println!("wrote {}", path.display());
        outputs.push(path);
        spectra.push(spectrum);
    }

    let mut summary = serde_json::json!({
        "grid": { "start": grid.start, "stop": grid.stop, "count": grid.count },
        "methods": methods.iter().map(|m| m.label()).collect::<Vec<_>>(),
    });
    if spectra.len() >= 2 {
        let peak = spectra
            .iter()
            .map(|s| s.peak_im())
            .fold(0.0_f64, f64::max);
        let deviation = spectra[0].max_im_deviation(&spectra[1]);
        let relative = if peak > 0.0 { deviation / peak } else { 0.0 };
        println!(
            "comparison: max |Im chi| deviation {:.3e} ({:.2}% of peak {:.3e})",
            deviation,
            100.0 * relative,
            peak
        );
        summary["comparison"] = serde_json::json!({
            "max_im_deviation": deviation,
            "peak_im": peak,
            "relative": relative,
        });
        if args.assert && relative > 0.05 {
            return Err(CliError::Assert(format!(
                "method deviation {:.2}% of peak exceeds 5%",
                100.0 * relative
            )));
        }
    }

    let manifest_path = args
        .common
        .out_dir
        .join(format!("{}_spectrum_manifest.json", resolved.label));
    let doc = manifest("spectrum", &resolved, summary, &outputs, started);
    write_file(&manifest_path, &serde_json::to_string_pretty(&doc).unwrap())?;
    println!("wrote {}", manifest_path.display());
    Ok(())
}

fn populations_csv(rows: &[(f64, [f64; 5])]) -> String {
    let mut out = String::from("r,rho_aa,rho_bb,rho_bpbp,rho_cc,rho_cpcp\n");
    for (r, pops) in rows {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            r, pops[0], pops[1], pops[2], pops[3], pops[4]
        ));
    }
    out
}

fn cmd_populations(args: &PopulationsArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let resolved = resolve(&args.common)?;
    let sweep = Grid::parse(&args.sweep).map_err(|e| CliError::Config(e.to_string()))?;
    let PumpConfig::Closed {
        alpha_b,
        alpha_c,
        alpha_cp,
        ..
    } = resolved.params.pump
    else {
        return Err(CliError::Config(
            "populations sweep needs a closed pump configuration".to_string(),
        ));
    };

    let mut analytic_rows = Vec::new();
    let mut numeric_rows = Vec::new();
    for r in sweep.points() {
        let mut p = resolved.params.clone();
        p.pump = PumpConfig::Closed {
            r,
            alpha_b,
            alpha_c,
            alpha_cp,
        };
        let pops = analytic::closed_populations(&p)
            .map_err(|e| CliError::Numeric(e.to_string()))?;
        analytic_rows.push((
            r,
            [pops.rho_aa, pops.rho_bb, pops.rho_bpbp, pops.rho_cc, pops.rho_cpcp],
        ));
        let rho = steady_state_of(&p).map_err(|e| CliError::Numeric(e.to_string()))?;
        numeric_rows.push((
            r,
            [
                rho.population(Level::A),
                rho.population(Level::B),
                rho.population(Level::Bp),
                rho.population(Level::C),
                rho.population(Level::Cp),
            ],
        ));
    }

    let mut outputs = Vec::new();
    for (tag, rows) in [("analytic", &analytic_rows), ("numeric", &numeric_rows)] {
        let path = args
            .common
            .out_dir
            .join(format!("{}_populations_{tag}.csv", resolved.label));
        write_file(&path, &populations_csv(rows))?;
        println!("wrote {}", path.display());
        outputs.push(path);
    }

    let worst = analytic_rows
        .iter()
        .zip(&numeric_rows)
        .map(|(a, n)| {
            a.1.iter()
                .zip(&n.1)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0_f64, f64::max)
        })
        .fold(0.0_f64, f64::max);
    println!("max |analytic - numeric| population deviation: {worst:.3e}");

    let summary = serde_json::json!({
        "sweep": { "start": sweep.start, "stop": sweep.stop, "count": sweep.count },
        "max_population_deviation": worst,
    });
    let manifest_path = args
        .common
        .out_dir
        .join(format!("{}_populations_manifest.json", resolved.label));
    let doc = manifest("populations", &resolved, summary, &outputs, started);
    write_file(&manifest_path, &serde_json::to_string_pretty(&doc).unwrap())?;
    println!("wrote {}", manifest_path.display());
    Ok(())
}

fn cmd_thresholds(args: &ThresholdsArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let resolved = resolve(&args.common)?;
    let params = &resolved.params;

    let gain = analytic::gain_threshold(params).map_err(|e| CliError::Numeric(e.to_string()))?;
    let anomalous =
        analytic::anomalous_threshold(params).map_err(|e| CliError::Numeric(e.to_string()))?;
    let populations = match resolved.populations {
        Some(p) => p,
        None => GeneralizedPopulations::from_params(params)
            .map_err(|e| CliError::Numeric(e.to_string()))?,
    };
    let ratio = delay_ratio(
        populations.p_b.re,
        populations.rho_cpcp,
        params.omega_b,
        params.omega_c,
    )
    .map_err(|e| CliError::Numeric(e.to_string()))?;

    let bound_name = if params.pump.is_closed() { "r" } else { "r_cp/r_b" };
    println!("gain threshold ({bound_name}):      {gain:.6e}");
    println!("anomalous threshold ({bound_name}): {:.6e}", anomalous.pump_threshold);
    println!("population ratio threshold:  {:.6}", anomalous.population_ratio);
    println!(
        "populations: Re P_B = {:.6}, rho_c'c' = {:.6}",
        populations.p_b.re, populations.rho_cpcp
    );
    println!("delay ratio tau_DIGS/tau_EIT: {ratio:.6}");

    let mut report = serde_json::json!({
        "pump_bound": bound_name,
        "gain_threshold": gain,
        "anomalous_threshold": anomalous.pump_threshold,
        "population_ratio_threshold": anomalous.population_ratio,
        "re_p_b": populations.p_b.re,
        "rho_cpcp": populations.rho_cpcp,
        "delay_ratio": ratio,
    });

    if let Some(medium) = &resolved.medium {
        let cfg = {
            let mut cfg = ScanConfig::new(Method::AnalyticResonant);
            cfg.populations = Some(populations);
            cfg
        };
        let chi = |d: f64| response::chi_tilde_at(params, &cfg, d);
        let group = group_index_at(&chi, 0.0, params.omega_b / 25.0, medium)
            .map_err(|e| CliError::Numeric(e.to_string()))?;
        println!("n = {:.9}", group.n);
        println!("n_g = {:.6e}", group.n_g);
        println!("v_g = {:.6} m/s", group.v_g);
        report["n"] = serde_json::json!(group.n);
        report["n_g"] = serde_json::json!(group.n_g);
        report["v_g_m_per_s"] = serde_json::json!(group.v_g);
        if let Some(tau_eit) = resolved.tau_d_eit_s {
            let tau_digs = ratio * tau_eit;
            println!(
                "group delay: tau_EIT = {:.3e} s (reference), tau_DIGS = {:.3e} s",
                tau_eit, tau_digs
            );
            report["tau_d_eit_s"] = serde_json::json!(tau_eit);
            report["tau_d_digs_s"] = serde_json::json!(tau_digs);
        }
    }

    let path = args
        .common
        .out_dir
        .join(format!("{}_thresholds.json", resolved.label));
    write_file(&path, &serde_json::to_string_pretty(&report).unwrap())?;
    println!("wrote {}", path.display());

    let manifest_path = args
        .common
        .out_dir
        .join(format!("{}_thresholds_manifest.json", resolved.label));
    let doc = manifest(
        "thresholds",
        &resolved,
        report,
        &[path.clone()],
        started,
    );
    write_file(&manifest_path, &serde_json::to_string_pretty(&doc).unwrap())?;
    Ok(())
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("DIGS_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Populations(args) => cmd_populations(args),
        Command::Thresholds(args) => cmd_thresholds(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.report(),
    }
}
