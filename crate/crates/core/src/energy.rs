//! Physical constants and figure-of-merit calculators.
//!
//! Everything here is a pure function of its arguments. The adiabatic model is
//! the asymptotic result for charging a capacitance `C` through a resistance
//! `R` with a linear ramp of duration `τ`:
//!
//! ```text
//! E_adiabatic = ξ · C · V² · (R · C / τ)
//! ```
//!
//! and the Landauer floor is `k_B · T · ln 2` per bit of lost information.

use std::f64::consts::{LN_2, PI};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Boltzmann constant, exact SI value (J/K).
pub const BOLTZMANN_K: f64 = 1.380649e-23;

/// Elementary charge, exact SI value (C). One electron-volt in joules.
pub const ELECTRON_VOLT: f64 = 1.602176634e-19;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EnergyError {
    #[error("temperature must be positive and finite, got {0} K")]
    NonPositiveTemperature(f64),
    #[error("parameter `{name}` must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("cannot read params file {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid parameters: {0}")]
    Parse(String),
}

fn require_positive(name: &'static str, value: f64) -> Result<f64, EnergyError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(EnergyError::NonPositive { name, value })
    }
}

/// Electrical technology parameters for the adiabatic model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TechnologyParams {
    /// Node capacitance (F).
    pub capacitance: f64,
    /// Transmission-gate on-resistance (Ω).
    pub on_resistance: f64,
    /// Logic swing (V).
    pub swing: f64,
    /// Off-state leakage per transistor (A).
    pub off_current: f64,
    /// Ambient temperature (K).
    pub temperature: f64,
    /// Duration of one clock interval, which is also the ramp time (s).
    pub ramp_time: f64,
    /// Shape factor of the adiabatic formula.
    #[serde(default = "default_xi")]
    pub xi: f64,
}

fn default_xi() -> f64 {
    1.0
}

impl Default for TechnologyParams {
    /// 180 nm-class values: 10 fF, 10 kΩ, 1.8 V, 1 pA, 300 K, 1 µs ramps.
    fn default() -> Self {
        Self {
            capacitance: 10e-15,
            on_resistance: 10e3,
            swing: 1.8,
            off_current: 1e-12,
            temperature: 300.0,
            ramp_time: 1e-6,
            xi: 1.0,
        }
    }
}

/// Keys accepted by [`TechnologyParams::set`] and the params file.
pub const TECHNOLOGY_KEYS: &[&str] = &[
    "capacitance",
    "on_resistance",
    "swing",
    "off_current",
    "temperature",
    "ramp_time",
    "xi",
];

impl TechnologyParams {
    pub fn validate(&self) -> Result<(), EnergyError> {
        require_positive("capacitance", self.capacitance)?;
        require_positive("on_resistance", self.on_resistance)?;
        require_positive("swing", self.swing)?;
        require_positive("off_current", self.off_current)?;
        require_positive("temperature", self.temperature)?;
        require_positive("ramp_time", self.ramp_time)?;
        require_positive("xi", self.xi)?;
        Ok(())
    }

    pub fn with_ramp_time(mut self, ramp_time: f64) -> Self {
        self.ramp_time = ramp_time;
        self
    }

    /// `R · C` time constant (s).
    pub fn rc(&self) -> f64 {
        self.on_resistance * self.capacitance
    }

    /// True when the ramp is slow enough for the adiabatic approximation.
    pub fn in_adiabatic_regime(&self) -> bool {
        self.ramp_time > self.rc()
    }

    /// Parse a `key = value` params file. Every key must be a known field;
    /// fields not given keep their default.
    pub fn parse(text: &str) -> Result<Self, EnergyError> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| EnergyError::Parse(e.message().to_string()))?;
        let mut params = Self::default();
        for (key, value) in &table {
            let number = match value {
                toml::Value::Float(f) => *f,
                toml::Value::Integer(i) => *i as f64,
                other => {
                    return Err(EnergyError::Parse(format!(
                        "`{key}` must be a number, got {}",
                        other.type_str()
                    )))
                }
            };
            params.set(key, number)?;
        }
        params.validate()?;
        Ok(params)
    }

    pub fn from_file(path: &Path) -> Result<Self, EnergyError> {
        let text = std::fs::read_to_string(path).map_err(|e| EnergyError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Override one field by name.
    pub fn set(&mut self, key: &str, value: f64) -> Result<(), EnergyError> {
        let slot = match key {
            "capacitance" => &mut self.capacitance,
            "on_resistance" => &mut self.on_resistance,
            "swing" => &mut self.swing,
            "off_current" => &mut self.off_current,
            "temperature" => &mut self.temperature,
            "ramp_time" => &mut self.ramp_time,
            "xi" => &mut self.xi,
            _ => return Err(EnergyError::Parse(format!("unknown parameter `{key}`"))),
        };
        *slot = value;
        Ok(())
    }
}

/// Parameters of a rotary-joint mechanical logic element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MechanicalParams {
    /// Rotary drag coefficient (J·s).
    pub rotary_drag: f64,
    /// Operating frequency (Hz).
    pub operating_frequency: f64,
    /// Energy per reversible NAND operation (J), taken as an input constant.
    pub nand_energy: f64,
}

impl Default for MechanicalParams {
    fn default() -> Self {
        Self {
            rotary_drag: 4e-35,
            operating_frequency: 1e9,
            nand_energy: 3.9e-26,
        }
    }
}

impl MechanicalParams {
    pub fn validate(&self) -> Result<(), EnergyError> {
        require_positive("rotary_drag", self.rotary_drag)?;
        require_positive("operating_frequency", self.operating_frequency)?;
        require_positive("nand_energy", self.nand_energy)?;
        Ok(())
    }
}

/// Minimum heat per bit of lost information at `temperature` kelvin.
pub fn landauer_limit(temperature: f64) -> Result<f64, EnergyError> {
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(EnergyError::NonPositiveTemperature(temperature));
    }
    Ok(BOLTZMANN_K * temperature * LN_2)
}

/// Dissipation of one full-swing gradual transition.
pub fn adiabatic_dissipation(params: &TechnologyParams) -> f64 {
    let signal = params.capacitance * params.swing * params.swing;
    params.xi * signal * (params.rc() / params.ramp_time)
}

/// Energy of the logic signal, `C · V²`.
pub fn signal_energy(params: &TechnologyParams) -> f64 {
    params.capacitance * params.swing * params.swing
}

/// Drag power and energy per cycle of one rotary joint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotaryDrag {
    pub power_watts: f64,
    pub joules_per_op: f64,
}

/// `P = k_d · ω²` with `ω = 2πf`; energy per op is `P / f`.
///
/// This is a per-joint estimate. It does not reproduce a per-gate figure for
/// devices with several joints and unknown angular excursions.
pub fn rotary_drag_power(params: &MechanicalParams) -> RotaryDrag {
    let omega = 2.0 * PI * params.operating_frequency;
    let power = params.rotary_drag * omega * omega;
    RotaryDrag {
        power_watts: power,
        joules_per_op: power / params.operating_frequency,
    }
}

/// How many times below the Landauer floor a device operates.
pub fn efficiency_vs_landauer(device_energy: f64, temperature: f64) -> Result<f64, EnergyError> {
    require_positive("device_energy", device_energy)?;
    Ok(landauer_limit(temperature)? / device_energy)
}

/// Composite operations per second per watt, given the energy of one
/// primitive op and the number of primitive ops per composite op.
pub fn ops_per_watt(op_energy: f64, ops_per_composite: f64) -> Result<f64, EnergyError> {
    require_positive("op_energy", op_energy)?;
    require_positive("ops_per_composite", ops_per_composite)?;
    Ok(1.0 / (op_energy * ops_per_composite))
}

/// Primitive ops per composite op implied by a throughput target.
pub fn implied_ops_per_composite(
    op_energy: f64,
    composite_per_watt: f64,
) -> Result<f64, EnergyError> {
    require_positive("op_energy", op_energy)?;
    require_positive("composite_per_watt", composite_per_watt)?;
    Ok(1.0 / (op_energy * composite_per_watt))
}

/// Summary of a device against the Landauer floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigureOfMerit {
    pub landauer_floor: f64,
    pub device_energy: f64,
    /// `landauer_floor / device_energy`; above 1 means the device beats the
    /// floor that binds irreversible operation.
    pub efficiency_ratio: f64,
    pub ops_per_watt: f64,
}

impl FigureOfMerit {
    pub fn new(device_energy: f64, temperature: f64) -> Result<Self, EnergyError> {
        Ok(Self {
            landauer_floor: landauer_limit(temperature)?,
            device_energy,
            efficiency_ratio: efficiency_vs_landauer(device_energy, temperature)?,
            ops_per_watt: ops_per_watt(device_energy, 1.0)?,
        })
    }
}

pub fn joules_to_ev(joules: f64) -> f64 {
    joules / ELECTRON_VOLT
}
