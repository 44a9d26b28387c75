//! Run configuration. Every table rejects unknown keys so a misspelt
//! physics parameter is an error rather than a silent default.
//!
//! Energies are ordinary frequencies in GHz (multiplied by 2π on the way in),
//! times are in ns, flux is in radians of the loop phase.

use holoq_core::berry::{GridSpec, DEFAULT_DPHI, DEFAULT_DQ};
use holoq_core::dynamics::GateOptions;
use holoq_core::noise::OffsetShift;
use holoq_core::{ChargeBasis, CircuitParams};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub circuit: CircuitConfig,
    #[serde(default)]
    pub basis: BasisConfig,
    #[serde(default)]
    pub output: OutputConfig,
    pub curvature_map: Option<CurvatureConfig>,
    pub gate_angle: Option<GateAngleConfig>,
    pub dynamics: Option<DynamicsConfig>,
    pub noise: Option<NoiseConfig>,
}

/// Either absolute energies or `(E_Σ, e_C, η)`; mixing the two is an error.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitConfig {
    pub e2_ghz: Option<f64>,
    pub e2_prime_ghz: Option<f64>,
    pub ec_ghz: Option<f64>,
    pub e_sigma_ghz: Option<f64>,
    /// `2E_C/E_Σ`.
    pub e_c: Option<f64>,
    /// `|E₂ - E₂'| / 2E_C`.
    pub eta: Option<f64>,
}

impl CircuitConfig {
    pub fn params(&self) -> Result<CircuitParams, String> {
        let absolute = [self.e2_ghz, self.e2_prime_ghz, self.ec_ghz];
        let ratios = [self.e_sigma_ghz, self.e_c, self.eta];
        let any = |v: &[Option<f64>]| v.iter().any(Option::is_some);
        let all = |v: &[Option<f64>]| v.iter().all(Option::is_some);
        match (any(&absolute), any(&ratios)) {
            (true, true) => {
                Err("[circuit]: give either e2_ghz/e2_prime_ghz/ec_ghz or e_sigma_ghz/e_c/eta, not both".into())
            }
            (true, false) if all(&absolute) => {
                CircuitParams::from_ghz(absolute[0].unwrap(), absolute[1].unwrap(), absolute[2].unwrap())
                    .map_err(|e| format!("[circuit]: {e}"))
            }
            (false, true) if all(&ratios) => {
                CircuitParams::from_ratios(2.0 * PI * ratios[0].unwrap(), ratios[1].unwrap(), ratios[2].unwrap())
                    .map_err(|e| format!("[circuit]: {e}"))
            }
            _ => Err("[circuit]: incomplete; need all of e2_ghz, e2_prime_ghz, ec_ghz or all of e_sigma_ghz, e_c, eta"
                .into()),
        }
    }

    /// `(E_Σ in rad/ns, e_C)` for sweeps over η.
    pub fn family(&self) -> Result<(f64, f64), String> {
        let p = self.params()?;
        Ok((p.e_sigma(), p.e_c_dimless()))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisConfig {
    /// Charge cutoff for spectra and Berry phases.
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    /// Charge cutoff for time evolution.
    #[serde(default = "default_dynamics_n_max")]
    pub dynamics_n_max: usize,
}

fn default_n_max() -> usize {
    holoq_core::circuit::DEFAULT_N_MAX
}

fn default_dynamics_n_max() -> usize {
    holoq_core::dynamics::DEFAULT_DYNAMICS_N_MAX
}

impl Default for BasisConfig {
    fn default() -> Self {
        Self { n_max: default_n_max(), dynamics_n_max: default_dynamics_n_max() }
    }
}

impl BasisConfig {
    pub fn statics(&self) -> Result<ChargeBasis, String> {
        ChargeBasis::new(self.n_max).map_err(|e| format!("[basis] n_max: {e}"))
    }

    pub fn dynamics(&self) -> Result<ChargeBasis, String> {
        ChargeBasis::new(self.dynamics_n_max).map_err(|e| format!("[basis] dynamics_n_max: {e}"))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_out")]
    pub dir: PathBuf,
    #[serde(default)]
    pub format: Format,
}

fn default_out() -> PathBuf {
    PathBuf::from("holoq-out")
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { dir: default_out(), format: Format::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridPreset {
    Overview,
    Zoom,
    LoopInterior,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvatureConfig {
    /// A named grid, or explicit bounds below.
    pub preset: Option<GridPreset>,
    /// `[min, max]` in radians.
    pub phi: Option<[f64; 2]>,
    pub q: Option<[f64; 2]>,
    pub n_phi: Option<usize>,
    pub n_q: Option<usize>,
}

impl CurvatureConfig {
    pub fn grid(&self, params: &CircuitParams) -> Result<GridSpec, String> {
        let explicit = self.phi.is_some() || self.q.is_some() || self.n_phi.is_some() || self.n_q.is_some();
        let grid = match (self.preset, explicit) {
            (Some(_), true) => return Err("[curvature_map]: preset and explicit bounds are exclusive".into()),
            (Some(GridPreset::Overview), false) => GridSpec::overview(),
            (Some(GridPreset::Zoom), false) => GridSpec::zoom(params),
            (Some(GridPreset::LoopInterior), false) => GridSpec::loop_interior(0.5),
            (None, _) => match (self.phi, self.q, self.n_phi, self.n_q) {
                (Some(phi), Some(q), Some(n_phi), Some(n_q)) => {
                    GridSpec { phi_min: phi[0], phi_max: phi[1], q_min: q[0], q_max: q[1], n_phi, n_q }
                }
                _ => return Err("[curvature_map]: need a preset or all of phi, q, n_phi, n_q".into()),
            },
        };
        grid.validate().map_err(|e| format!("[curvature_map]: {e}"))?;
        Ok(grid)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateAngleConfig {
    /// Asymmetries to sweep; `E_Σ` and `e_C` come from `[circuit]`.
    pub eta: Vec<f64>,
    #[serde(default = "half")]
    pub margin_q: f64,
    /// Loop sampling steps; flux in radians.
    #[serde(default = "default_dphi")]
    pub dphi: f64,
    #[serde(default = "default_dq")]
    pub dq: f64,
    /// Fit `Θ = π - 𝒜η` to the rows with `η ≤ fit_eta_max`.
    #[serde(default = "yes")]
    pub fit: bool,
    #[serde(default = "default_fit_eta_max")]
    pub fit_eta_max: f64,
    /// Slope used for `theta_predicted` when no fit is made.
    #[serde(default = "default_a")]
    pub a_reference: f64,
}

fn half() -> f64 {
    0.5
}
fn yes() -> bool {
    true
}
fn default_dphi() -> f64 {
    DEFAULT_DPHI
}
fn default_dq() -> f64 {
    DEFAULT_DQ
}
fn default_fit_eta_max() -> f64 {
    0.1
}
fn default_a() -> f64 {
    2.97
}
fn default_vertical_fraction() -> f64 {
    GateOptions::default().vertical_fraction
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum DynamicsConfig {
    Holonomic {
        tau_ns: Vec<f64>,
        /// Defaults to `min(τ/10⁴, 0.5/E_Σ)`.
        dt_ns: Option<f64>,
        #[serde(default = "half")]
        margin_q: f64,
        #[serde(default = "default_vertical_fraction")]
        vertical_fraction: f64,
    },
    DiscreteZ {
        /// Defaults to the ideal `π/(2E_C)`.
        hold_ns: Option<Vec<f64>>,
        /// Zero is the sudden limit.
        #[serde(default)]
        ramp_ns: f64,
        #[serde(default)]
        q: f64,
        #[serde(default = "default_discrete_dt")]
        dt_ns: f64,
    },
    LzSweep {
        tau_ns: Vec<f64>,
        dt_ns: Option<f64>,
    },
}

fn default_discrete_dt() -> f64 {
    1e-4
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum NoiseConfig {
    StaticOffset {
        eps_q: Vec<f64>,
        #[serde(default)]
        shift: OffsetShift,
    },
    AnalyticDephasing {
        tau_gate_ns: f64,
        sqrt_a: Vec<f64>,
        /// Noise band; defaults to `[0.1/τ, 0.5/dt]`.
        f_min_ghz: Option<f64>,
        f_max_ghz: Option<f64>,
        dt_ns: Option<f64>,
        /// Defaults to the time the gate spends with `E₂eff < E_C`.
        tau_u_ns: Option<f64>,
    },
    MonteCarlo {
        tau_gate_ns: f64,
        sqrt_a: f64,
        n_samples: usize,
        #[serde(default)]
        seed: u64,
        dt_ns: Option<f64>,
        f_min_ghz: Option<f64>,
        f_max_ghz: Option<f64>,
    },
}

pub fn load(path: &Path) -> Result<(RunConfig, String), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let cfg = toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((cfg, text))
}
