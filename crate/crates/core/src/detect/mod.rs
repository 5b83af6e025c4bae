//! Receiver-side detection: capture containers, sliding-window energy
//! detection, sequence correlation, and ROC construction.
//!
//! All detectors are pure functions of a [`CaptureWindow`] and return a
//! [`DetectorStatistic`] normalized by the capture's noise reference, so a
//! joint rescaling of samples and noise leaves every statistic unchanged.

pub mod corr;
pub mod energy;
pub mod roc;

use crate::scalar::Scalar;
use crate::{Error, Result};
use num_complex::Complex;

/// Multi-element baseband capture plus the noise reference detectors
/// normalize against.
#[derive(Debug, Clone)]
pub struct CaptureWindow<T: Scalar> {
    /// Per-receive-element sample streams, equal lengths.
    elements: Vec<Vec<Complex<T>>>,
    /// Sample rate of the streams.
    pub sample_rate_hz: f64,
    /// Per-sample (full-band) noise power the streams were generated with, mW.
    pub noise_power_mw: f64,
}

impl<T: Scalar> CaptureWindow<T> {
    /// Builds a capture from per-element streams; all must share one length.
    pub fn new(elements: Vec<Vec<Complex<T>>>, sample_rate_hz: f64, noise_power_mw: f64) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Empty("capture needs at least one rx element"));
        }
        let len = elements[0].len();
        if len == 0 {
            return Err(Error::Empty("capture elements must be non-empty"));
        }
        if let Some(bad) = elements.iter().find(|e| e.len() != len) {
            return Err(Error::Truncated {
                need: len,
                got: bad.len(),
            });
        }
        if !(noise_power_mw.is_finite() && noise_power_mw > 0.0) {
            return Err(Error::Config(format!(
                "noise power reference must be positive, got {noise_power_mw}"
            )));
        }
        Ok(Self {
            elements,
            sample_rate_hz,
            noise_power_mw,
        })
    }

    /// Number of receive elements.
    pub fn n_elements(&self) -> usize {
        self.elements.len()
    }

    /// Samples per element.
    pub fn len(&self) -> usize {
        self.elements[0].len()
    }

    /// True when the capture holds no samples (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.elements[0].is_empty()
    }

    /// One element's stream.
    pub fn element(&self, idx: usize) -> &[Complex<T>] {
        &self.elements[idx]
    }

    /// All element streams.
    pub fn elements(&self) -> &[Vec<Complex<T>>] {
        &self.elements
    }
}

/// Sliding energy-detection window geometry, in grid units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SlidingWindowSpec {
    /// Window width in subcarriers.
    pub freq_width_sc: usize,
    /// Window length in OFDM symbols.
    pub time_width_symbols: usize,
    /// Frequency step between window positions, in subcarriers.
    pub freq_step_sc: usize,
    /// Time step between window positions, as a fraction of a symbol in
    /// half-symbol units (1 = half a symbol).
    pub time_step_half_symbols: usize,
}

impl Default for SlidingWindowSpec {
    fn default() -> Self {
        Self {
            freq_width_sc: 240,
            time_width_symbols: 4,
            freq_step_sc: 12,
            time_step_half_symbols: 1,
        }
    }
}

/// Detector output: the decision statistic and where the maximum occurred.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DetectorStatistic {
    /// Noise-normalized decision statistic (nonnegative).
    pub value: f64,
    /// Sample (or hop) index of the maximizing window/lag.
    pub time_index: usize,
    /// Frequency index (FFT bin or window position) of the maximum.
    pub freq_index: usize,
    /// Cell identity at the maximum, when the detector searches identities.
    pub pci: Option<crate::seq::PhysCellId>,
}

impl DetectorStatistic {
    /// A zero statistic anchored at the origin.
    pub fn zero() -> Self {
        Self {
            value: 0.0,
            time_index: 0,
            freq_index: 0,
            pci: None,
        }
    }
}

/// Mean per-RE power of a set of resource elements, in dBm.
///
/// Callers pass the 127 SSS resource elements to get the standard
/// reference-signal received power.
pub fn rsrp<T: Scalar>(res: &[Complex<T>]) -> Result<f64> {
    if res.is_empty() {
        return Err(Error::Empty("rsrp needs at least one resource element"));
    }
    let mean_mw: f64 = res.iter().map(|c| T::c_as_f64(*c).norm_sqr()).sum::<f64>() / res.len() as f64;
    Ok(crate::units::mw_to_dbm(mean_mw))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capture_rejects_ragged_elements() {
        let e = vec![vec![Complex::new(0.0f32, 0.0); 8], vec![Complex::new(0.0, 0.0); 7]];
        assert!(matches!(
            CaptureWindow::new(e, 15.36e6, 1.0),
            Err(Error::Truncated { need: 8, got: 7 })
        ));
    }

    #[test]
    fn capture_rejects_empty_and_bad_noise() {
        assert!(CaptureWindow::<f32>::new(vec![], 15.36e6, 1.0).is_err());
        assert!(CaptureWindow::new(vec![vec![Complex::new(0.0f32, 0.0); 4]], 15.36e6, 0.0).is_err());
    }

    #[test]
    fn rsrp_of_unit_res_is_zero_dbm() {
        let res = vec![Complex::new(1.0f64, 0.0); 127];
        assert!(rsrp(&res).unwrap().abs() < 1e-12);
    }

    #[test]
    fn rsrp_scales_linearly_in_db() {
        let res: Vec<Complex<f64>> = (0..127).map(|i| Complex::new(0.1 * i as f64, 0.05)).collect();
        let base = rsrp(&res).unwrap();
        let scaled: Vec<Complex<f64>> = res.iter().map(|c| c * 10f64.sqrt()).collect();
        let up = rsrp(&scaled).unwrap();
        assert!((up - base - 10.0).abs() < 1e-9);
    }

    #[test]
    fn rsrp_rejects_empty() {
        assert!(rsrp::<f64>(&[]).is_err());
    }
}
