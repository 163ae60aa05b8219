//! Experiment-facing response quantities: spectra over detuning grids,
//! absorption and refraction in physical units, group index, group velocity,
//! group delay, and the Rb-87 calibration behind the headline numbers.
//!
//! Internally every detuning keeps the `Delta_p = omega_a - omega_b - nu_p`
//! convention, under which a *positive* slope of `Re chi` means anomalous
//! dispersion; the single sign flip to a laboratory frequency axis belongs
//! at output time, not in the math.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{
    self, ChiParams, GeneralDetunings, GeneralizedPopulations,
};
use crate::doppler::{self, DopplerSpec};
use crate::dressed::MixingAngles;
use crate::error::{Error, Result};
use crate::liouvillian;
use crate::params::SystemParams;

/// Physical constants (SI).
pub mod constants {
    /// Speed of light [m/s].
    pub const C: f64 = 299_792_458.0;
    /// Reduced Planck constant [J s].
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Vacuum permittivity [F/m].
    pub const EPSILON_0: f64 = 8.854_187_8128e-12;
    /// Boltzmann constant [J/K].
    pub const K_B: f64 = 1.380_649e-23;
    /// Atomic mass unit [kg].
    pub const ATOMIC_MASS: f64 = 1.660_539_066_60e-27;
}

/// Medium data converting the reduced susceptibility to physical units via
/// `chi = chi_tilde D_ab^2 N sigma / (epsilon_0 hbar gamma_ab)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MediumSpec {
    /// Number density N [m^-3].
    pub number_density: f64,
    /// Transition dipole moment D_ab [C m].
    pub dipole_moment: f64,
    /// Dimensionless density-profile factor sigma(r).
    pub fill_factor: f64,
    /// Probe wavelength [m].
    pub probe_wavelength: f64,
    /// Sample length l [m].
    pub sample_length: f64,
    /// gamma_ab in SI [1/s]; the unit behind the dimensionless rates.
    pub gamma_ab_si: f64,
}

impl MediumSpec {
    /// Scale factor `chi / chi_tilde`.
    pub fn chi_scale(&self) -> f64 {
        self.dipole_moment * self.dipole_moment * self.number_density * self.fill_factor
            / (constants::EPSILON_0 * constants::HBAR * self.gamma_ab_si)
    }

    /// Probe angular frequency `2 pi c / lambda_p` [rad/s].
    pub fn probe_angular_frequency(&self) -> f64 {
        2.0 * std::f64::consts::PI * constants::C / self.probe_wavelength
    }

    /// Probe wavenumber `2 pi / lambda_p` [1/m].
    pub fn probe_wavenumber(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.probe_wavelength
    }

    /// The Rb-87 vapor cell with a 2.5 cm sample: the dipole-density
    /// product is backed out so the standard-EIT slope `-4/omega_mu^2`
    /// (omega_mu = 2) reproduces a 90 m/s group velocity at the D1 line.
    /// This is a calibration to the quoted group velocity, not a
    /// first-principles density.
    pub fn kash_rb87() -> Self {
        let gamma_ab_si = 5e6; // gamma_a = 1e7 s^-1, gamma_ab = gamma_a/2
        let probe_wavelength = 794.8e-9;
        let dipole_moment = 2.537e-29;
        let v_g_eit = 90.0;
        let slope_eit = 1.0; // |d Re chi_tilde / d Delta_p| at omega_mu = 2
        let nu_p = 2.0 * std::f64::consts::PI * constants::C / probe_wavelength;
        // n_g = 1 + (nu_p / 2) * chi_scale * slope / gamma_ab_si = c / v_g
        let chi_scale = (constants::C / v_g_eit - 1.0) * 2.0 * gamma_ab_si / (nu_p * slope_eit);
        let number_density = chi_scale * constants::EPSILON_0 * constants::HBAR * gamma_ab_si
            / (dipole_moment * dipole_moment);
        Self {
            number_density,
            dipole_moment,
            fill_factor: 1.0,
            probe_wavelength,
            sample_length: 0.025,
            gamma_ab_si,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            self.number_density,
            self.dipole_moment,
            self.fill_factor,
            self.probe_wavelength,
            self.sample_length,
            self.gamma_ab_si,
        ];
        if fields.iter().any(|&v| !(v > 0.0)) {
            return Err(Error::Config("medium fields must be strictly positive".into()));
        }
        Ok(())
    }
}

/// Physical response at one detuning.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhysicalResponse {
    pub chi: Complex64,
    /// Absorption coefficient `k_p Im chi` [1/m].
    pub alpha: f64,
    /// Refractive index `sqrt(1 + Re chi)`.
    pub n: f64,
}

/// Convert a reduced susceptibility to physical units.
pub fn to_physical(chi_tilde: Complex64, medium: &MediumSpec) -> PhysicalResponse {
    let chi = chi_tilde * medium.chi_scale();
    PhysicalResponse {
        chi,
        alpha: medium.probe_wavenumber() * chi.im,
        n: (1.0 + chi.re).sqrt(),
    }
}

/// Group response at one operating point.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GroupResponse {
    pub n: f64,
    pub n_g: f64,
    /// Group velocity `c / n_g` [m/s].
    pub v_g: f64,
}

/// Group index from the reduced susceptibility and its slope (both in
/// `gamma_ab` units): `n_g = n - (nu_p / 2n) d Re chi / d Delta_p`.
pub fn group_index_from_slope(
    re_chi_tilde: f64,
    slope_chi_tilde: f64,
    medium: &MediumSpec,
) -> GroupResponse {
    let scale = medium.chi_scale();
    let n = (1.0 + scale * re_chi_tilde).sqrt();
    let slope_si = scale * slope_chi_tilde / medium.gamma_ab_si;
    let n_g = n - medium.probe_angular_frequency() / (2.0 * n) * slope_si;
    GroupResponse {
        n,
        n_g,
        v_g: constants::C / n_g,
    }
}

/// Adaptive central difference: halve the step until two successive
/// estimates agree to 0.1% or the step drops below 1e-6.
pub fn adaptive_slope(
    f: &dyn Fn(f64) -> Result<Complex64>,
    x: f64,
    initial_step: f64,
) -> Result<f64> {
    let mut h = initial_step;
    let eval = |h: f64| -> Result<f64> {
        let plus = f(x + h)?;
        let minus = f(x - h)?;
        Ok((plus.re - minus.re) / (2.0 * h))
    };
    let mut prev = eval(h)?;
    loop {
        h *= 0.5;
        if h < 1e-6 {
            return Ok(prev);
        }
        let next = eval(h)?;
        if (next - prev).abs() <= 1e-3 * next.abs().max(1e-300) {
            return Ok(next);
        }
        prev = next;
    }
}

/// Group index at one detuning, differentiating the supplied susceptibility.
pub fn group_index_at(
    chi_tilde: &dyn Fn(f64) -> Result<Complex64>,
    delta_p: f64,
    initial_step: f64,
    medium: &MediumSpec,
) -> Result<GroupResponse> {
    let slope = adaptive_slope(chi_tilde, delta_p, initial_step)?;
    let value = chi_tilde(delta_p)?;
    Ok(group_index_from_slope(value.re, slope, medium))
}

/// Group delay `tau_d = l (1/v_g - 1/c)` [s].
pub fn group_delay(n_g: f64, medium: &MediumSpec) -> f64 {
    medium.sample_length * (n_g - 1.0) / constants::C
}

/// Delay of the doubly-dressed system relative to the matching EIT system:
/// `(Re P_B (omega_b^2 + omega_c^2) - omega_c^2 rho_c'c') / omega_b^2`.
pub fn delay_ratio(p_b_re: f64, rho_cpcp: f64, omega_b: f64, omega_c: f64) -> Result<f64> {
    if omega_b == 0.0 {
        return Err(Error::DivisionByZero("delay_ratio"));
    }
    Ok(
        (p_b_re * (omega_b * omega_b + omega_c * omega_c) - omega_c * omega_c * rho_cpcp)
            / (omega_b * omega_b),
    )
}

/// Delay ratio as a function of the closed pump rate.
pub fn delay_ratio_vs_closed_pump(
    params: &SystemParams,
    r_values: &[f64],
) -> Result<Vec<(f64, f64)>> {
    use crate::params::PumpConfig;
    let PumpConfig::Closed {
        alpha_b,
        alpha_c,
        alpha_cp,
        ..
    } = params.pump
    else {
        return Err(Error::Config("delay-ratio sweep needs a closed pump".into()));
    };
    r_values
        .iter()
        .map(|&r| {
            let mut p = params.clone();
            p.pump = PumpConfig::Closed {
                r,
                alpha_b,
                alpha_c,
                alpha_cp,
            };
            let pops = analytic::closed_populations(&p)?;
            let ratio = delay_ratio(pops.rho_bb, pops.rho_cpcp, p.omega_b, p.omega_c)?;
            Ok((r, ratio))
        })
        .collect()
}

/// How a spectrum's per-point susceptibility is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    AnalyticResonant,
    AnalyticGeneral,
    Numeric,
    Doppler,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::AnalyticResonant => "analytic-resonant",
            Method::AnalyticGeneral => "analytic-general",
            Method::Numeric => "numeric",
            Method::Doppler => "doppler",
        }
    }

    pub fn parse(s: &str, params: &SystemParams) -> Result<Self> {
        match s {
            "analytic-resonant" => Ok(Method::AnalyticResonant),
            "analytic-general" => Ok(Method::AnalyticGeneral),
            // plain "analytic" picks the form matching the detunings
            "analytic" => {
                if params.delta_mu == 0.0 && params.delta_b == 0.0 && params.delta_c == 0.0 {
                    Ok(Method::AnalyticResonant)
                } else {
                    Ok(Method::AnalyticGeneral)
                }
            }
            "numeric" => Ok(Method::Numeric),
            "doppler" => Ok(Method::Doppler),
            other => Err(Error::Config(format!("unknown method `{other}`"))),
        }
    }
}

/// Uniform probe-detuning grid, `start:stop:count` in `gamma_ab` units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count == 0 || (count > 1 && stop <= start) {
            return Err(Error::Config(format!(
                "grid {start}:{stop}:{count} must be increasing with count >= 1"
            )));
        }
        Ok(Self { start, stop, count })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Config(format!(
                "grid `{text}` must be start:stop:count"
            )));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| Error::Config(format!("bad grid start `{}`", parts[0])))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| Error::Config(format!("bad grid stop `{}`", parts[1])))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| Error::Config(format!("bad grid count `{}`", parts[2])))?;
        Self::new(start, stop, count)
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + step * i as f64).collect()
    }
}

/// One spectrum sample.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumPoint {
    pub delta_p: f64,
    pub chi_tilde: Complex64,
    pub chi: Option<Complex64>,
    pub alpha: Option<f64>,
    pub n: Option<f64>,
    pub n_g: Option<f64>,
    /// Set when this point failed or carried warnings; the scan never aborts.
    pub flag: Option<String>,
}

/// A scanned spectrum with its method tag.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    pub method: Method,
    pub points: Vec<SpectrumPoint>,
}

/// Everything a scan needs besides the detuning grid.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub method: Method,
    pub medium: Option<MediumSpec>,
    pub doppler: Option<DopplerSpec>,
    /// Overrides the pump-derived populations for the analytic and Doppler
    /// methods.
    pub populations: Option<GeneralizedPopulations>,
}

impl ScanConfig {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            medium: None,
            doppler: None,
            populations: None,
        }
    }
}

fn resolved_populations(
    params: &SystemParams,
    cfg: &ScanConfig,
) -> Result<GeneralizedPopulations> {
    match cfg.populations {
        Some(p) => Ok(p),
        None => GeneralizedPopulations::from_params(params),
    }
}

/// Reduced susceptibility at one detuning for any method.
pub fn chi_tilde_at(params: &SystemParams, cfg: &ScanConfig, delta_p: f64) -> Result<Complex64> {
    match cfg.method {
        Method::AnalyticResonant => {
            let (chi_params, _) = ChiParams::from_params(params);
            let p = resolved_populations(params, cfg)?;
            analytic::susceptibility_resonant(&p, delta_p, &chi_params)
        }
        Method::AnalyticGeneral => {
            let (chi_params, _) = ChiParams::from_params(params);
            let p = resolved_populations(params, cfg)?;
            let angles = MixingAngles::from_params(params)?;
            let det =
                GeneralDetunings::physical(delta_p, params.delta_mu, params.delta_b, params.delta_c);
            analytic::susceptibility_general_populations(
                &p,
                &det,
                &angles,
                params.omega_mu,
                chi_params.gamma_ab,
                chi_params.gamma_c,
                chi_params.gamma_cp,
            )
        }
        Method::Numeric => Ok(liouvillian::numeric_susceptibility(params, delta_p)?.chi),
        Method::Doppler => {
            let spec = cfg
                .doppler
                .clone()
                .ok_or_else(|| Error::Config("doppler method needs a DopplerSpec".into()))?;
            let p = resolved_populations(params, cfg)?;
            doppler::broadened_susceptibility(params, &p, delta_p, &spec)
        }
    }
}

/// Scan a grid. Per-point failures are flagged on the point, never fatal.
/// Points are computed in parallel; the assembled spectrum preserves grid
/// order.
pub fn scan(params: &SystemParams, grid: &Grid, cfg: &ScanConfig) -> Spectrum {
    let deltas = grid.points();
    let mut points: Vec<SpectrumPoint> = deltas
        .par_iter()
        .map(|&delta_p| match chi_tilde_at(params, cfg, delta_p) {
            Ok(chi_tilde) => {
                let phys = cfg.medium.as_ref().map(|m| to_physical(chi_tilde, m));
                SpectrumPoint {
                    delta_p,
                    chi_tilde,
                    chi: phys.map(|p| p.chi),
                    alpha: phys.map(|p| p.alpha),
                    n: phys.map(|p| p.n),
                    n_g: None,
                    flag: None,
                }
            }
            Err(e) => SpectrumPoint {
                delta_p,
                chi_tilde: Complex64::new(f64::NAN, f64::NAN),
                chi: None,
                alpha: None,
                n: None,
                n_g: None,
                flag: Some(e.to_string()),
            },
        })
        .collect();

    // grid-based group index: central differences inside, one-sided at ends
    if let Some(medium) = &cfg.medium {
        let chis: Vec<Option<f64>> = points.iter().map(|p| p.chi.map(|c| c.re)).collect();
        let n = points.len();
        for i in 0..n {
            let slope_si = match (
                i.checked_sub(1).and_then(|j| chis[j]),
                chis[i],
                chis.get(i + 1).copied().flatten(),
            ) {
                (Some(lo), _, Some(hi)) => {
                    let h = points[i + 1].delta_p - points[i - 1].delta_p;
                    Some((hi - lo) / (h * medium.gamma_ab_si))
                }
                (None, Some(mid), Some(hi)) if i + 1 < n => {
                    let h = points[i + 1].delta_p - points[i].delta_p;
                    Some((hi - mid) / (h * medium.gamma_ab_si))
                }
                (Some(lo), Some(mid), None) if i > 0 => {
                    let h = points[i].delta_p - points[i - 1].delta_p;
                    Some((mid - lo) / (h * medium.gamma_ab_si))
                }
                _ => None,
            };
            if let (Some(slope), Some(n_idx)) = (slope_si, points[i].n) {
                points[i].n_g =
                    Some(n_idx - medium.probe_angular_frequency() / (2.0 * n_idx) * slope);
            }
        }
    }

    Spectrum {
        method: cfg.method,
        points,
    }
}

impl Spectrum {
    /// Largest finite `|Im chi_tilde|` over the scan.
    pub fn peak_im(&self) -> f64 {
        self.points
            .iter()
            .filter(|p| p.flag.is_none())
            .map(|p| p.chi_tilde.im.abs())
            .fold(0.0, f64::max)
    }

    /// Pointwise `max |Im chi_a - Im chi_b|` over shared, unflagged points.
    pub fn max_im_deviation(&self, other: &Spectrum) -> f64 {
        self.points
            .iter()
            .zip(&other.points)
            .filter(|(a, b)| a.flag.is_none() && b.flag.is_none())
            .map(|(a, b)| (a.chi_tilde.im - b.chi_tilde.im).abs())
            .fold(0.0, f64::max)
    }

    /// CSV with the fixed header
    /// `delta_p,re_chi_tilde,im_chi_tilde,re_chi,im_chi,alpha,n,n_g`, full
    /// double precision, one row per grid point. Physical columns are empty
    /// without a medium.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("delta_p,re_chi_tilde,im_chi_tilde,re_chi,im_chi,alpha,n,n_g\n");
        let fmt = |v: f64| format!("{v:.16e}");
        let opt = |v: Option<f64>| v.map(fmt).unwrap_or_default();
        for p in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                fmt(p.delta_p),
                fmt(p.chi_tilde.re),
                fmt(p.chi_tilde.im),
                opt(p.chi.map(|c| c.re)),
                opt(p.chi.map(|c| c.im)),
                opt(p.alpha),
                opt(p.n),
                opt(p.n_g),
            ));
        }
        out
    }

    /// JSON mirror of the CSV fields.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "method": self.method.label(),
            "points": self.points.iter().map(|p| {
                serde_json::json!({
                    "delta_p": p.delta_p,
                    "re_chi_tilde": p.chi_tilde.re,
                    "im_chi_tilde": p.chi_tilde.im,
                    "re_chi": p.chi.map(|c| c.re),
                    "im_chi": p.chi.map(|c| c.im),
                    "alpha": p.alpha,
                    "n": p.n,
                    "n_g": p.n_g,
                    "flag": p.flag,
                })
            }).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::preset;
    use approx::assert_relative_eq;

    #[test]
    fn grid_parsing() {
        let g = Grid::parse("-2:2:2001").unwrap();
        assert_eq!(g.count, 2001);
        let pts = g.points();
        assert_eq!(pts.len(), 2001);
        assert_relative_eq!(pts[0], -2.0);
        assert_relative_eq!(pts[2000], 2.0);
        assert_relative_eq!(pts[1000], 0.0);
        // single-point grid
        let g = Grid::parse("0:0:1").unwrap();
        assert_eq!(g.points(), vec![0.0]);
        assert!(Grid::parse("2:-2:100").is_err());
        assert!(Grid::parse("nope").is_err());
    }

    #[test]
    fn physical_conversion_zero_and_linearity() {
        let medium = MediumSpec::kash_rb87();
        medium.validate().unwrap();
        let zero = to_physical(Complex64::new(0.0, 0.0), &medium);
        assert_eq!(zero.chi.norm(), 0.0);
        assert_eq!(zero.alpha, 0.0);
        assert_eq!(zero.n, 1.0);

        let base = to_physical(Complex64::new(1e-3, 2e-3), &medium);
        let mut doubled = medium;
        doubled.number_density *= 2.0;
        let two = to_physical(Complex64::new(1e-3, 2e-3), &doubled);
        assert_relative_eq!(two.chi.re, 2.0 * base.chi.re, max_relative = 1e-12);
        assert_relative_eq!(two.chi.im, 2.0 * base.chi.im, max_relative = 1e-12);
    }

    #[test]
    fn kash_calibration_hits_eit_group_velocity() {
        let medium = MediumSpec::kash_rb87();
        // standard-EIT slope in reduced units at omega_mu = 2 is -1
        let g = group_index_from_slope(0.0, -1.0, &medium);
        assert_relative_eq!(g.v_g, 90.0, max_relative = 1e-9);
        assert_relative_eq!(g.n_g, constants::C / 90.0, max_relative = 1e-9);
        // flat dispersion: n_g reduces to n
        let flat = group_index_from_slope(0.0, 0.0, &medium);
        assert_eq!(flat.n_g, flat.n);
    }

    #[test]
    fn group_delay_formula() {
        let medium = MediumSpec::kash_rb87();
        assert_eq!(group_delay(1.0, &medium), 0.0); // v_g = c
        let tau = group_delay(constants::C / 90.0, &medium);
        assert_relative_eq!(tau, 0.025 / 90.0 - 0.025 / constants::C, max_relative = 1e-9);
    }

    #[test]
    fn delay_ratio_reference_points() {
        // EIT reference
        assert_relative_eq!(delay_ratio(0.5, 0.0, 0.1, 0.1).unwrap(), 1.0);
        // headline DIGS point
        let r = delay_ratio(0.1, 0.8, 0.1, 0.1).unwrap();
        assert!((r + 0.6).abs() < 1e-12);
        assert!(delay_ratio(0.1, 0.8, 0.0, 0.1).is_err());
    }

    #[test]
    fn empty_coupling_scan_is_flat_zero() {
        let mut p = preset("fig2-open").unwrap().params;
        p.pump = crate::params::PumpConfig::Open { r_b: 0.0, r_cp: 0.0 };
        let grid = Grid::new(-1.0, 1.0, 21).unwrap();
        let spectrum = scan(&p, &grid, &ScanConfig::new(Method::Numeric));
        for pt in &spectrum.points {
            assert!(pt.flag.is_none());
            assert!(pt.chi_tilde.norm() < 1e-12);
        }
    }

    #[test]
    fn scan_methods_share_grid_and_stay_close() {
        let p = preset("fig3-closed").unwrap().params;
        let grid = Grid::new(-0.2, 0.2, 81).unwrap();
        let analytic = scan(&p, &grid, &ScanConfig::new(Method::AnalyticResonant));
        let numeric = scan(&p, &grid, &ScanConfig::new(Method::Numeric));
        assert_eq!(analytic.points.len(), numeric.points.len());
        let peak = numeric.peak_im();
        assert!(peak > 0.0);
        assert!(analytic.max_im_deviation(&numeric) < 0.05 * peak);
    }

    #[test]
    fn csv_has_full_precision_and_fixed_header() {
        let p = preset("fig3-closed").unwrap().params;
        let grid = Grid::new(0.0, 0.1, 3).unwrap();
        let mut cfg = ScanConfig::new(Method::AnalyticResonant);
        cfg.medium = Some(MediumSpec::kash_rb87());
        let spectrum = scan(&p, &grid, &cfg);
        let csv = spectrum.to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "delta_p,re_chi_tilde,im_chi_tilde,re_chi,im_chi,alpha,n,n_g"
        );
        let row = lines.next().unwrap();
        assert_eq!(row.split(',').count(), 8);
        // 16 digits after the decimal point = 17 significant digits
        assert!(row.split(',').next().unwrap().contains("e0"));
        // deterministic emission
        assert_eq!(csv, spectrum.to_csv());
    }

    #[test]
    fn adaptive_slope_matches_linear_function() {
        let f = |x: f64| -> Result<Complex64> { Ok(Complex64::new(3.5 * x + 1.0, 0.0)) };
        let s = adaptive_slope(&f, 0.2, 0.1).unwrap();
        assert_relative_eq!(s, 3.5, max_relative = 1e-9);
    }
}
