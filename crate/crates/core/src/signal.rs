//! Sampled waveforms and ambient conditions attached to measurements.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Role of a sampled waveform in the measurement chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignalKind {
    Sweep,
    Recording,
    ImpulseResponse,
}

/// A uniformly sampled real waveform.
///
/// Amplitudes are dimensionless; `sample_rate` is in Hz. Samples are stored
/// as `f64` for processing headroom and serialized as little-endian `f32`
/// (see [`crate::io`]).
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    pub samples: Vec<f64>,
    pub sample_rate: f64,
    pub kind: SignalKind,
}

impl Signal {
    /// Builds a signal, enforcing the invariants: positive sample rate,
    /// non-empty, all samples finite.
    pub fn new(samples: Vec<f64>, sample_rate: f64, kind: SignalKind) -> Result<Self> {
        if !(sample_rate > 0.0) {
            return Err(Error::parameter(format!(
                "sample_rate must be > 0, got {sample_rate}"
            )));
        }
        if samples.is_empty() {
            return Err(Error::parameter("signal must contain at least one sample"));
        }
        if let Some(i) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::parameter(format!(
                "signal contains non-finite sample at index {i}"
            )));
        }
        Ok(Self {
            samples,
            sample_rate,
            kind,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate
    }

    /// Sum of squared samples.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|s| s * s).sum()
    }

    /// Copy of this signal delayed by `n` samples (zero-prefixed).
    pub fn delayed(&self, n: usize) -> Signal {
        let mut samples = vec![0.0; n + self.samples.len()];
        samples[n..].copy_from_slice(&self.samples);
        Signal {
            samples,
            sample_rate: self.sample_rate,
            kind: self.kind,
        }
    }

    /// Index of the sample with the largest magnitude.
    pub fn peak_index(&self) -> usize {
        self.samples
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map(|(i, _)| i)
            .unwrap_or(0)
    }
}

/// Ambient conditions recorded alongside a measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub temperature_c: f64,
    pub humidity_pct: f64,
    pub pressure_hpa: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub external_level_db: Option<f64>,
}

impl Environment {
    pub fn new(temperature_c: f64, humidity_pct: f64, pressure_hpa: f64) -> Result<Self> {
        if temperature_c <= -273.15 {
            return Err(Error::parameter(format!(
                "temperature {temperature_c} °C is at or below absolute zero"
            )));
        }
        Ok(Self {
            temperature_c,
            humidity_pct,
            pressure_hpa,
            external_level_db: None,
        })
    }
}

impl Default for Environment {
    fn default() -> Self {
        Self {
            temperature_c: 20.0,
            humidity_pct: 45.0,
            pressure_hpa: 1013.25,
            external_level_db: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_signals() {
        assert!(Signal::new(vec![], 96000.0, SignalKind::Sweep).is_err());
        assert!(Signal::new(vec![1.0], 0.0, SignalKind::Sweep).is_err());
        assert!(Signal::new(vec![1.0, f64::NAN], 96000.0, SignalKind::Sweep).is_err());
        assert!(Signal::new(vec![1.0, f64::INFINITY], 96000.0, SignalKind::Sweep).is_err());
    }

    #[test]
    fn delay_shifts_samples() {
        let s = Signal::new(vec![1.0, 2.0], 96000.0, SignalKind::Recording).unwrap();
        let d = s.delayed(3);
        assert_eq!(d.samples, vec![0.0, 0.0, 0.0, 1.0, 2.0]);
        assert_eq!(d.peak_index(), 4);
    }

    #[test]
    fn environment_rejects_sub_absolute_zero() {
        assert!(Environment::new(-300.0, 50.0, 1000.0).is_err());
        assert!(Environment::new(-20.0, 50.0, 1000.0).is_ok());
    }
}
