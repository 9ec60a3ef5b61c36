//! System configuration: static scalars shared by every module.
//!
//! Defaults follow the usual IEEE 802.11p-style OFDM setup: 64 subcarriers of
//! 156.25 kHz (10 MHz total), 6.4 us elementary symbol plus 1.6 us cyclic
//! prefix, 700 symbols per block, 5.89 GHz carrier, -174 dBm/Hz noise floors.
//! Array sizes and population counts default to desk scale (16x32 antennas,
//! 3 targets, 6 users) so that experiments run in minutes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// All static system scalars. Field names double as configuration-file keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SystemConfig {
    /// Transmit antennas at the base station (L_t).
    pub num_tx_antennas: usize,
    /// Receive antennas at the base station (L_r).
    pub num_rx_antennas: usize,
    /// Tracked radar targets (K).
    pub num_targets: usize,
    /// Single-antenna communication users (Q).
    pub num_users: usize,
    /// OFDM symbols per transmission block (M).
    pub symbols_per_block: usize,
    /// Training symbols in phase I of the first block (M1).
    pub training_symbols: usize,
    /// Total subcarriers shared by all bands (B).
    pub total_subcarriers: usize,
    /// Bandwidth of one subcarrier in Hz (delta_f).
    pub subcarrier_bandwidth: f64,
    /// Cyclic prefix duration in seconds (T_cp).
    pub cp_duration: f64,
    /// Carrier frequency in Hz (f_c).
    pub carrier_freq: f64,
    /// Speed of light in m/s (c_0).
    pub light_speed: f64,
    /// Total transmit power budget in watts, for both training and data (P).
    pub total_power: f64,
    /// Noise power spectral density at the base station in W/Hz.
    pub bs_noise_psd: f64,
    /// Noise power spectral density at each user in W/Hz.
    pub user_noise_psd: f64,
}

/// -174 dBm/Hz expressed in W/Hz.
const NOISE_PSD_174_DBM_HZ: f64 = 3.9810717055349693e-21;

impl Default for SystemConfig {
    fn default() -> Self {
        Self {
            num_tx_antennas: 16,
            num_rx_antennas: 32,
            num_targets: 3,
            num_users: 6,
            symbols_per_block: 700,
            training_symbols: 60,
            total_subcarriers: 64,
            subcarrier_bandwidth: 156.25e3,
            cp_duration: 1.6e-6,
            carrier_freq: 5.89e9,
            light_speed: 3.0e8,
            total_power: 1.0,
            bs_noise_psd: NOISE_PSD_174_DBM_HZ,
            user_noise_psd: NOISE_PSD_174_DBM_HZ,
        }
    }
}

impl SystemConfig {
    /// Elementary OFDM symbol duration T_o = 1/delta_f, seconds.
    pub fn elementary_symbol_duration(&self) -> f64 {
        1.0 / self.subcarrier_bandwidth
    }

    /// Full OFDM symbol duration T = 1/delta_f + T_cp, seconds.
    pub fn symbol_duration(&self) -> f64 {
        self.elementary_symbol_duration() + self.cp_duration
    }

    /// Block duration M * T, seconds.
    pub fn block_duration(&self) -> f64 {
        self.symbols_per_block as f64 * self.symbol_duration()
    }

    /// Base-station noise power over one subcarrier, watts (sigma * delta_f).
    pub fn bs_noise_power(&self) -> f64 {
        self.bs_noise_psd * self.subcarrier_bandwidth
    }

    /// Per-user noise power over one subcarrier, watts (sigma_q * delta_f).
    pub fn user_noise_power(&self) -> f64 {
        self.user_noise_psd * self.subcarrier_bandwidth
    }

    /// Check every structural invariant; call after construction or mutation.
    pub fn validate(&self) -> Result<()> {
        fn positive(name: &str, v: f64) -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("{name} must be positive and finite, got {v}")))
            }
        }
        positive("subcarrier_bandwidth", self.subcarrier_bandwidth)?;
        positive("cp_duration", self.cp_duration)?;
        positive("carrier_freq", self.carrier_freq)?;
        positive("light_speed", self.light_speed)?;
        positive("total_power", self.total_power)?;
        positive("bs_noise_psd", self.bs_noise_psd)?;
        positive("user_noise_psd", self.user_noise_psd)?;
        for (name, v) in [
            ("num_tx_antennas", self.num_tx_antennas),
            ("num_rx_antennas", self.num_rx_antennas),
            ("num_targets", self.num_targets),
            ("num_users", self.num_users),
            ("symbols_per_block", self.symbols_per_block),
            ("total_subcarriers", self.total_subcarriers),
        ] {
            if v == 0 {
                return Err(Error::InvalidConfig(format!("{name} must be positive")));
            }
        }
        if self.training_symbols < 2 || self.training_symbols >= self.symbols_per_block {
            return Err(Error::InvalidConfig(format!(
                "training_symbols must satisfy 2 <= M1 < M, got M1={} M={}",
                self.training_symbols, self.symbols_per_block
            )));
        }
        if self.num_tx_antennas < self.num_users + 1 {
            return Err(Error::InvalidConfig(format!(
                "num_tx_antennas must be at least num_users + 1 for zero-forcing, got L_t={} Q={}",
                self.num_tx_antennas, self.num_users
            )));
        }
        if self.total_subcarriers < self.num_targets + 1 {
            return Err(Error::InvalidConfig(format!(
                "total_subcarriers must be at least num_targets + 1, got B={} K={}",
                self.total_subcarriers, self.num_targets
            )));
        }
        Ok(())
    }

    /// Parse a TOML configuration string. Missing keys take their defaults;
    /// unknown keys are rejected, listing the valid ones.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: SystemConfig =
            toml::from_str(text).map_err(|e| Error::ConfigParse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Load a TOML configuration file.
    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text).map_err(|e| match e {
            Error::ConfigParse(msg) => {
                Error::ConfigParse(format!("{}: {msg}", path.display()))
            }
            other => other,
        })
    }

    /// Serialize to TOML with the same keys accepted by [`from_toml_str`].
    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    /// Apply one `key=value` override. Unknown keys are rejected with the
    /// list of valid keys.
    pub fn apply_override(&mut self, key: &str, value: &str) -> Result<()> {
        fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
            value.parse().map_err(|_| {
                Error::InvalidArgument(format!("cannot parse override {key}={value}"))
            })
        }
        match key {
            "num_tx_antennas" => self.num_tx_antennas = parse(key, value)?,
            "num_rx_antennas" => self.num_rx_antennas = parse(key, value)?,
            "num_targets" => self.num_targets = parse(key, value)?,
            "num_users" => self.num_users = parse(key, value)?,
            "symbols_per_block" => self.symbols_per_block = parse(key, value)?,
            "training_symbols" => self.training_symbols = parse(key, value)?,
            "total_subcarriers" => self.total_subcarriers = parse(key, value)?,
            "subcarrier_bandwidth" => self.subcarrier_bandwidth = parse(key, value)?,
            "cp_duration" => self.cp_duration = parse(key, value)?,
            "carrier_freq" => self.carrier_freq = parse(key, value)?,
            "light_speed" => self.light_speed = parse(key, value)?,
            "total_power" => self.total_power = parse(key, value)?,
            "bs_noise_psd" => self.bs_noise_psd = parse(key, value)?,
            "user_noise_psd" => self.user_noise_psd = parse(key, value)?,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown config key `{other}`; valid keys: {}",
                    CONFIG_KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }
}

/// Keys accepted in configuration files and `--override` flags.
pub const CONFIG_KEYS: [&str; 14] = [
    "num_tx_antennas",
    "num_rx_antennas",
    "num_targets",
    "num_users",
    "symbols_per_block",
    "training_symbols",
    "total_subcarriers",
    "subcarrier_bandwidth",
    "cp_duration",
    "carrier_freq",
    "light_speed",
    "total_power",
    "bs_noise_psd",
    "user_noise_psd",
];

/// Convert dBm to watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Convert watts to dBm.
pub fn watts_to_dbm(watts: f64) -> f64 {
    10.0 * watts.log10() + 30.0
}
