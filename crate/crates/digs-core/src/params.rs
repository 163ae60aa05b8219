//! Physical parameters of the pumped five-level atom.
//!
//! One excited state `a` sits above two ground doublets `{b, b'}` and
//! `{c, c'}`. A strong control field (Rabi frequency `omega_mu`) couples
//! `a <-> c`, two RF fields (`omega_b`, `omega_c`) couple the doublet
//! members, and a weak probe (`omega_p`) couples `a <-> b`. Incoherent
//! pumping is either *open* (rates `r_b`, `r_cp` feed `b` and `c'` from
//! external levels, all decay leaves the subspace) or *closed* (`b -> a`
//! pumping at rate `r`, with `a` decaying back into `b`, `c`, `c'`).
//!
//! Every rate and frequency is dimensionless, measured in units of the
//! optical coherence decay `gamma_ab`; conversion to SI happens only in the
//! response module. Keys with an `_si` suffix are the exception and carry SI
//! units.

use serde::{Deserialize, Serialize};

use crate::analytic::GeneralizedPopulations;
use crate::doppler::DopplerSpec;
use crate::error::{Error, Result, Warning};
use crate::response::MediumSpec;

/// Bare atomic levels, in the fixed basis order used for every matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    A,
    B,
    Bp,
    C,
    Cp,
}

impl Level {
    pub const ALL: [Level; 5] = [Level::A, Level::B, Level::Bp, Level::C, Level::Cp];

    #[inline]
    pub fn index(self) -> usize {
        match self {
            Level::A => 0,
            Level::B => 1,
            Level::Bp => 2,
            Level::C => 3,
            Level::Cp => 4,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Level::A => "a",
            Level::B => "b",
            Level::Bp => "b'",
            Level::C => "c",
            Level::Cp => "c'",
        }
    }
}

/// Pure dephasing rates for each unordered level pair, in `gamma_ab` units.
///
/// These add to the population-decay average in the off-diagonal relaxation
/// rule; they never move population.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct Dephasings {
    pub gamma_ph_ab: f64,
    pub gamma_ph_abp: f64,
    pub gamma_ph_ac: f64,
    pub gamma_ph_acp: f64,
    pub gamma_ph_bbp: f64,
    pub gamma_ph_bc: f64,
    pub gamma_ph_bcp: f64,
    pub gamma_ph_bpc: f64,
    pub gamma_ph_bpcp: f64,
    pub gamma_ph_ccp: f64,
}

impl Dephasings {
    /// Dephasing for the unordered pair `(j, k)`; zero on the diagonal.
    pub fn pair(&self, j: Level, k: Level) -> f64 {
        use Level::*;
        match (j.index().min(k.index()), j.index().max(k.index())) {
            (a, b) if a == b => 0.0,
            _ => match (j, k) {
                (A, B) | (B, A) => self.gamma_ph_ab,
                (A, Bp) | (Bp, A) => self.gamma_ph_abp,
                (A, C) | (C, A) => self.gamma_ph_ac,
                (A, Cp) | (Cp, A) => self.gamma_ph_acp,
                (B, Bp) | (Bp, B) => self.gamma_ph_bbp,
                (B, C) | (C, B) => self.gamma_ph_bc,
                (B, Cp) | (Cp, B) => self.gamma_ph_bcp,
                (Bp, C) | (C, Bp) => self.gamma_ph_bpc,
                (Bp, Cp) | (Cp, Bp) => self.gamma_ph_bpcp,
                (C, Cp) | (Cp, C) => self.gamma_ph_ccp,
                _ => unreachable!(),
            },
        }
    }

    fn all(&self) -> [(&'static str, f64); 10] {
        [
            ("gamma_ph_ab", self.gamma_ph_ab),
            ("gamma_ph_abp", self.gamma_ph_abp),
            ("gamma_ph_ac", self.gamma_ph_ac),
            ("gamma_ph_acp", self.gamma_ph_acp),
            ("gamma_ph_bbp", self.gamma_ph_bbp),
            ("gamma_ph_bc", self.gamma_ph_bc),
            ("gamma_ph_bcp", self.gamma_ph_bcp),
            ("gamma_ph_bpc", self.gamma_ph_bpc),
            ("gamma_ph_bpcp", self.gamma_ph_bpcp),
            ("gamma_ph_ccp", self.gamma_ph_ccp),
        ]
    }
}

/// Incoherent pumping scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum PumpConfig {
    /// `b` and `c'` are fed from unspecified external levels; decay leaves
    /// the five-level subspace, so the steady trace is not normalized.
    Open { r_b: f64, r_cp: f64 },
    /// Atoms are pumped `b -> a` at rate `r`; `a` decays back to `b`, `c`,
    /// `c'` with branching ratios summing to one. Trace is conserved.
    Closed {
        r: f64,
        alpha_b: f64,
        alpha_c: f64,
        alpha_cp: f64,
    },
}

impl PumpConfig {
    pub fn is_closed(&self) -> bool {
        matches!(self, PumpConfig::Closed { .. })
    }
}

/// Complete model parametrization, in `gamma_ab` units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Control-field Rabi frequency on `a <-> c`.
    pub omega_mu: f64,
    /// RF Rabi frequency on `b <-> b'`.
    pub omega_b: f64,
    /// RF Rabi frequency on `c <-> c'`.
    pub omega_c: f64,
    /// Probe Rabi frequency on `a <-> b`.
    pub omega_p: f64,
    /// Probe detuning `omega_a - omega_b - nu_p`.
    pub delta_p: f64,
    /// Control detuning `omega_a - omega_c - nu_mu`.
    pub delta_mu: f64,
    /// RF detuning `omega_b' - omega_b - nu_b`.
    pub delta_b: f64,
    /// RF detuning `omega_c' - omega_c - nu_c`.
    pub delta_c: f64,
    /// Excited-state decay (nominally 1e7 s^-1 physically; ~2 in these units).
    pub gamma_a: f64,
    /// Ground decays to external levels (zero in the closed configuration).
    pub gamma_b: f64,
    pub gamma_bp: f64,
    pub gamma_c: f64,
    pub gamma_cp: f64,
    #[serde(flatten)]
    pub dephasings: Dephasings,
    pub pump: PumpConfig,
    /// Whether the closed pump rate also broadens coherences by `r/2` on
    /// every pair involving `a` or `b`. The equations of motion state the
    /// extra `r` only on the populations, so this defaults to off.
    #[serde(default)]
    pub pump_broadens_coherences: bool,
}

impl SystemParams {
    /// Population decay rate of a single level.
    pub fn gamma_level(&self, j: Level) -> f64 {
        match j {
            Level::A => self.gamma_a,
            Level::B => self.gamma_b,
            Level::Bp => self.gamma_bp,
            Level::C => self.gamma_c,
            Level::Cp => self.gamma_cp,
        }
    }

    /// Off-diagonal relaxation rate
    /// `gamma_jk = (gamma_j + gamma_k)/2 + gamma_jk^ph`.
    ///
    /// With `pump_broadens_coherences` set and a closed pump, the incoherent
    /// cycling `b <-> a` at rate `r` adds `r/2` per involved level.
    pub fn gamma_pair(&self, j: Level, k: Level) -> f64 {
        let mut g = 0.5 * (self.gamma_level(j) + self.gamma_level(k)) + self.dephasings.pair(j, k);
        if self.pump_broadens_coherences {
            if let PumpConfig::Closed { r, .. } = self.pump {
                for lvl in [j, k] {
                    if matches!(lvl, Level::A | Level::B) {
                        g += 0.5 * r;
                    }
                }
            }
        }
        g
    }

    /// Optical coherence decay `gamma_ab`, the unit of every other rate.
    pub fn gamma_ab(&self) -> f64 {
        self.gamma_pair(Level::A, Level::B)
    }

    /// Check rates, branching, and the analytic validity orderings.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut warnings = Vec::new();

        let rates = [
            ("omega_mu", self.omega_mu),
            ("omega_b", self.omega_b),
            ("omega_c", self.omega_c),
            ("omega_p", self.omega_p),
            ("gamma_a", self.gamma_a),
            ("gamma_b", self.gamma_b),
            ("gamma_bp", self.gamma_bp),
            ("gamma_c", self.gamma_c),
            ("gamma_cp", self.gamma_cp),
        ];
        for (name, v) in rates {
            if v < 0.0 {
                violations.push((
                    "negative-rate",
                    format!("{name} = {v} must be nonnegative"),
                ));
            }
        }
        for (name, v) in self.dephasings.all() {
            if v < 0.0 {
                violations.push((
                    "negative-dephasing",
                    format!("{name} = {v} must be nonnegative"),
                ));
            }
        }
        for j in Level::ALL {
            for k in Level::ALL {
                if j.index() < k.index() && self.gamma_pair(j, k) < 0.0 {
                    violations.push((
                        "negative-pair-relaxation",
                        format!("gamma_{}{} < 0", j.label(), k.label()),
                    ));
                }
            }
        }

        match self.pump {
            PumpConfig::Open { r_b, r_cp } => {
                for (name, v) in [("r_b", r_b), ("r_cp", r_cp)] {
                    if v < 0.0 {
                        violations.push(("negative-pump", format!("{name} = {v}")));
                    }
                }
                let r_max = r_b.max(r_cp);
                if self.omega_b > 0.0 && r_max >= self.omega_b {
                    warnings.push(Warning::new(
                        "regime-pump-strong",
                        format!("pump rate {r_max} >= omega_b {}", self.omega_b),
                    ));
                }
            }
            PumpConfig::Closed {
                r,
                alpha_b,
                alpha_c,
                alpha_cp,
            } => {
                if r < 0.0 {
                    violations.push(("negative-pump", format!("r = {r}")));
                }
                for (name, v) in [
                    ("alpha_b", alpha_b),
                    ("alpha_c", alpha_c),
                    ("alpha_cp", alpha_cp),
                ] {
                    if v < 0.0 {
                        violations.push(("negative-branching", format!("{name} = {v}")));
                    }
                }
                let sum = alpha_b + alpha_c + alpha_cp;
                if (sum - 1.0).abs() > 1e-12 {
                    violations.push((
                        "branching-sum",
                        format!("alpha_b + alpha_c + alpha_cp = {sum}, expected 1"),
                    ));
                }
                if alpha_cp == 0.0 {
                    warnings.push(Warning::new(
                        "gain-impossible",
                        "alpha_cp = 0: c' is never fed, so gain is impossible",
                    ));
                }
                let ground_decay = [
                    ("gamma_b", self.gamma_b),
                    ("gamma_bp", self.gamma_bp),
                    ("gamma_c", self.gamma_c),
                    ("gamma_cp", self.gamma_cp),
                ];
                for (name, v) in ground_decay {
                    if v != 0.0 {
                        violations.push((
                            "closed-ground-decay",
                            format!("{name} = {v}: closed pumping assumes stable ground states"),
                        ));
                    }
                }
                if self.omega_b > 0.0 && r >= self.omega_b {
                    warnings.push(Warning::new(
                        "regime-pump-strong",
                        format!("r = {r} >= omega_b {}", self.omega_b),
                    ));
                }
            }
        }

        if self.omega_b > 0.0 && self.omega_p >= 0.1 * self.omega_b {
            warnings.push(Warning::new(
                "regime-probe-strong",
                format!("omega_p {} >= 0.1 omega_b {}", self.omega_p, self.omega_b),
            ));
        }
        if self.omega_c > 0.0 && self.omega_p >= 0.1 * self.omega_c {
            warnings.push(Warning::new(
                "regime-probe-strong",
                format!("omega_p {} >= 0.1 omega_c {}", self.omega_p, self.omega_c),
            ));
        }
        if self.omega_c >= 0.5 * self.omega_mu {
            warnings.push(Warning::new(
                "regime-rf-strong",
                format!("omega_c {} >= 0.5 omega_mu {}", self.omega_c, self.omega_mu),
            ));
        }
        if self.omega_b >= 0.5 * self.omega_mu {
            warnings.push(Warning::new(
                "regime-rf-strong",
                format!("omega_b {} >= 0.5 omega_mu {}", self.omega_b, self.omega_mu),
            ));
        }

        ValidationReport {
            ok: violations.is_empty(),
            violations,
            warnings,
        }
    }

    /// Parse from the flat key/value config format (TOML syntax, one nested
    /// table for the pump variant).
    pub fn from_config_str(text: &str) -> Result<SystemParams> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Serialize back to the config format. Round-trips bit-exactly.
    pub fn to_config_string(&self) -> String {
        toml::to_string(self).expect("SystemParams serializes to TOML")
    }
}

/// Outcome of `validate`: `ok` iff there are no hard violations. Warnings
/// flag parameters outside the analytic validity regime; the numeric solver
/// remains valid there.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<(&'static str, String)>,
    pub warnings: Vec<Warning>,
}

/// A named parameter set plus the medium, Doppler, and population data some
/// of them carry.
#[derive(Debug, Clone)]
pub struct PresetBundle {
    pub name: &'static str,
    pub params: SystemParams,
    pub medium: Option<MediumSpec>,
    pub doppler: Option<DopplerSpec>,
    /// Generalized populations quoted directly where the source figure uses
    /// them instead of a pump model.
    pub populations: Option<GeneralizedPopulations>,
    /// Reference EIT group delay in seconds (kash-rb87 only).
    pub tau_d_eit_s: Option<f64>,
}

pub const PRESET_NAMES: [&str; 7] = [
    "fig2-open",
    "fig3-closed",
    "fig5-populations",
    "fig6-dispersion",
    "kash-rb87",
    "doppler-fig8",
    "doppler-fig9",
];

/// Shared field values for every shipped parameter set: resonant fields,
/// `omega_b = omega_c = 0.1`, `omega_mu = 2`, weak probe.
fn base_params(pump: PumpConfig) -> SystemParams {
    SystemParams {
        omega_mu: 2.0,
        omega_b: 0.1,
        omega_c: 0.1,
        omega_p: 1e-4,
        delta_p: 0.0,
        delta_mu: 0.0,
        delta_b: 0.0,
        delta_c: 0.0,
        gamma_a: 2.0,
        gamma_b: 0.0,
        gamma_bp: 0.0,
        gamma_c: 0.0,
        gamma_cp: 0.0,
        dephasings: Dephasings::default(),
        pump,
        pump_broadens_coherences: false,
    }
}

fn closed_equal_branching(r: f64) -> PumpConfig {
    PumpConfig::Closed {
        r,
        alpha_b: 1.0 / 3.0,
        alpha_c: 1.0 / 3.0,
        alpha_cp: 1.0 / 3.0,
    }
}

/// Closed pumping with the dephasing set
/// `gamma_C = gamma_C' = gamma_cc' = gamma_b'b = 1e-4`.
fn closed_figure_params(r: f64) -> SystemParams {
    let mut p = base_params(closed_equal_branching(r));
    p.dephasings.gamma_ph_bc = 1e-4;
    p.dephasings.gamma_ph_bpc = 1e-4;
    p.dephasings.gamma_ph_bcp = 1e-4;
    p.dephasings.gamma_ph_bpcp = 1e-4;
    p.dephasings.gamma_ph_ccp = 1e-4;
    p.dephasings.gamma_ph_bbp = 1e-4;
    p
}

/// Look up a shipped parameter set by name.
///
/// Pump rates default to the strongest-pumping curve of the source figure;
/// sweeps override them per point.
pub fn preset(name: &str) -> Result<PresetBundle> {
    let bundle = match name {
        // Open pumping, r_cp for the gain (green) curve. gamma_a is chosen so
        // the derived gamma_ab is exactly 1 in these units.
        "fig2-open" => {
            let mut p = base_params(PumpConfig::Open {
                r_b: 1e-4,
                r_cp: 0.007,
            });
            p.gamma_a = 2.0 - 1e-4;
            p.gamma_b = 1e-4;
            p.gamma_bp = 1e-4;
            p.gamma_c = 1e-4;
            p.gamma_cp = 1e-4;
            PresetBundle {
                name: "fig2-open",
                params: p,
                medium: None,
                doppler: None,
                populations: None,
                tau_d_eit_s: None,
            }
        }
        "fig3-closed" => PresetBundle {
            name: "fig3-closed",
            params: closed_figure_params(0.04),
            medium: None,
            doppler: None,
            populations: None,
            tau_d_eit_s: None,
        },
        "fig5-populations" => PresetBundle {
            name: "fig5-populations",
            params: closed_figure_params(0.04),
            medium: None,
            doppler: None,
            populations: None,
            tau_d_eit_s: None,
        },
        "fig6-dispersion" => PresetBundle {
            name: "fig6-dispersion",
            params: closed_figure_params(0.04),
            medium: None,
            doppler: None,
            populations: Some(GeneralizedPopulations::real(0.1, 0.8)),
            tau_d_eit_s: None,
        },
        // Rb-87 vapor cell with a 2.5 cm sample and an EIT group velocity of
        // 90 m/s; the dipole-density product is calibrated to reproduce that
        // group velocity, not derived from first principles.
        "kash-rb87" => PresetBundle {
            name: "kash-rb87",
            params: closed_figure_params(0.04),
            medium: Some(MediumSpec::kash_rb87()),
            doppler: None,
            populations: Some(GeneralizedPopulations::real(0.1, 0.8)),
            tau_d_eit_s: Some(0.26e-3),
        },
        // Doppler figures use generalized populations and vanishing
        // dephasings.
        "doppler-fig8" => PresetBundle {
            name: "doppler-fig8",
            params: base_params(closed_equal_branching(0.04)),
            medium: None,
            doppler: Some(DopplerSpec::new(0.001, 0.05)),
            populations: Some(GeneralizedPopulations::real(0.1, 0.8)),
            tau_d_eit_s: None,
        },
        "doppler-fig9" => PresetBundle {
            name: "doppler-fig9",
            params: base_params(closed_equal_branching(0.04)),
            medium: None,
            doppler: Some(DopplerSpec::new(10.0, 0.001)),
            populations: Some(GeneralizedPopulations::real(0.1, 0.8)),
            tau_d_eit_s: None,
        },
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    Ok(bundle)
}
