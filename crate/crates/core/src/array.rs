//! Planar antenna arrays, steering vectors, and the transmit beam codebook.
//!
//! Arrays are uniform rectangular grids with two colocated polarizations per
//! grid position; both polarizations share the same geometric phase. Sector
//! panels additionally apply a standard directional element pattern so each
//! 120-degree sector radiates into its own wedge.

use crate::geometry::SECTOR_COUNT;
use num_complex::Complex;
use std::f64::consts::PI;

/// Uniform planar array geometry.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct UpaConfig {
    /// Vertical grid positions.
    pub rows: usize,
    /// Horizontal grid positions.
    pub cols: usize,
    /// Colocated polarizations per grid position (1 or 2).
    pub polarizations: usize,
    /// Element spacing in wavelengths (both axes).
    pub spacing_wavelengths: f64,
    /// Apply the directional sector element pattern (base-station panels);
    /// terminals use isotropic elements.
    pub sector_pattern: bool,
}

impl UpaConfig {
    /// Base-station sector panel: 4 rows x 2 columns x 2 polarizations.
    pub fn gnb_default() -> Self {
        Self {
            rows: 4,
            cols: 2,
            polarizations: 2,
            spacing_wavelengths: 0.5,
            sector_pattern: true,
        }
    }

    /// Terminal panel (UE and eavesdropper): 2 rows x 1 column x 2 polarizations.
    pub fn terminal_default() -> Self {
        Self {
            rows: 2,
            cols: 1,
            polarizations: 2,
            spacing_wavelengths: 0.5,
            sector_pattern: false,
        }
    }

    /// Total element count.
    pub fn n_elements(&self) -> usize {
        self.rows * self.cols * self.polarizations
    }

    /// Grid/polarization coordinate of a flat element index.
    /// Layout: polarization-major, then row, then column.
    pub fn element_coords(&self, idx: usize) -> (usize, usize, usize) {
        let per_pol = self.rows * self.cols;
        let pol = idx / per_pol;
        let rem = idx % per_pol;
        (pol, rem / self.cols, rem % self.cols)
    }
}

/// Unnormalized array response: unit-magnitude phase per element for a
/// departure/arrival direction, identical across polarizations.
pub fn array_response(cfg: &UpaConfig, az_rad: f64, el_rad: f64) -> Vec<Complex<f64>> {
    let mut v = Vec::with_capacity(cfg.n_elements());
    let s = cfg.spacing_wavelengths;
    let sa = az_rad.sin();
    let se = el_rad.sin();
    let ce = el_rad.cos();
    for idx in 0..cfg.n_elements() {
        let (_pol, row, col) = cfg.element_coords(idx);
        let phase = 2.0 * PI * s * (col as f64 * sa * ce + row as f64 * se);
        v.push(Complex::from_polar(1.0, phase));
    }
    v
}

/// Unit-norm steering vector for a direction.
pub fn steering_vector(cfg: &UpaConfig, az_rad: f64, el_rad: f64) -> Vec<Complex<f64>> {
    let mut v = array_response(cfg, az_rad, el_rad);
    let norm = (v.len() as f64).sqrt();
    for c in &mut v {
        *c /= norm;
    }
    v
}

/// Directional element power gain in dB for an off-boresight direction.
///
/// Standard sector-panel shape: parabolic rolloff with 65-degree half-power
/// beamwidth per axis, 30 dB floor per axis and overall, 8 dBi peak gain.
pub fn sector_element_gain_db(az_off_rad: f64, el_off_rad: f64) -> f64 {
    const HPBW_DEG: f64 = 65.0;
    const FLOOR_DB: f64 = 30.0;
    const PEAK_DBI: f64 = 8.0;
    let az = az_off_rad.to_degrees();
    let el = el_off_rad.to_degrees();
    let a_az = (12.0 * (az / HPBW_DEG).powi(2)).min(FLOOR_DB);
    let a_el = (12.0 * (el / HPBW_DEG).powi(2)).min(FLOOR_DB);
    PEAK_DBI - (a_az + a_el).min(FLOOR_DB)
}

/// Element amplitude gain (linear) for a direction, honoring the panel kind.
pub fn element_amplitude(cfg: &UpaConfig, az_off_rad: f64, el_off_rad: f64) -> f64 {
    if cfg.sector_pattern {
        crate::units::db_to_lin(sector_element_gain_db(az_off_rad, el_off_rad)).sqrt()
    } else {
        1.0
    }
}

/// One transmit beam: unit-norm weights plus its steering direction.
#[derive(Debug, Clone, PartialEq)]
pub struct Beam {
    /// Weights over the transmit elements, unit norm.
    pub weights: Vec<Complex<f64>>,
    /// Steering azimuth relative to the sector boresight, degrees.
    pub az_deg: f64,
    /// Steering elevation, degrees (negative points below the horizon).
    pub el_deg: f64,
    /// Beam index within its sector.
    pub beam_id: usize,
    /// Serving sector.
    pub sector: usize,
}

/// Steering azimuths (relative to boresight) and elevations of the
/// per-sector beam grid: 2 azimuths x 4 elevations = 8 beams.
pub const BEAM_AZ_DEG: [f64; 2] = [-30.0, 30.0];
pub const BEAM_EL_DEG: [f64; 4] = [-32.0, -18.0, -8.0, -2.0];

/// Number of beams each sector sweeps.
pub const BEAMS_PER_SECTOR: usize = BEAM_AZ_DEG.len() * BEAM_EL_DEG.len();

/// Full-site DFT beam codebook: 8 beams per sector, 24 total, each unit-norm.
///
/// Weights multiply the per-element transmit signal, so each beam stores the
/// conjugated steering vector: the plain product against the array response
/// at the steered direction sums coherently to `sqrt(N)`.
pub fn dft_codebook(cfg: &UpaConfig) -> Vec<Beam> {
    let mut beams = Vec::with_capacity(SECTOR_COUNT * BEAMS_PER_SECTOR);
    for sector in 0..SECTOR_COUNT {
        let mut beam_id = 0;
        for &el in BEAM_EL_DEG.iter() {
            for &az in BEAM_AZ_DEG.iter() {
                let weights: Vec<Complex<f64>> =
                    steering_vector(cfg, az.to_radians(), el.to_radians())
                        .iter()
                        .map(|c| c.conj())
                        .collect();
                beams.push(Beam {
                    weights,
                    az_deg: az,
                    el_deg: el,
                    beam_id,
                    sector,
                });
                beam_id += 1;
            }
        }
    }
    beams
}

/// Transmit coupling `sum_e w_e a_e` between beam weights and an array
/// response; conjugate-matched unit-norm weights reach `sqrt(N)`.
pub fn beam_coupling(weights: &[Complex<f64>], response: &[Complex<f64>]) -> Complex<f64> {
    weights
        .iter()
        .zip(response.iter())
        .map(|(w, a)| w * a)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_counts() {
        assert_eq!(UpaConfig::gnb_default().n_elements(), 16);
        assert_eq!(UpaConfig::terminal_default().n_elements(), 4);
    }

    #[test]
    fn broadside_steering_is_uniform() {
        let cfg = UpaConfig::gnb_default();
        let v = steering_vector(&cfg, 0.0, 0.0);
        let expect = 1.0 / (16f64).sqrt();
        for c in v {
            assert!((c.re - expect).abs() < 1e-12 && c.im.abs() < 1e-12);
        }
    }

    #[test]
    fn steering_vectors_unit_norm() {
        let cfg = UpaConfig::gnb_default();
        for (az, el) in [(0.3, -0.1), (-0.9, -0.5), (1.0, 0.2)] {
            let v = steering_vector(&cfg, az, el);
            let n: f64 = v.iter().map(|c| c.norm_sqr()).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn matched_coupling_beats_mismatched() {
        let cfg = UpaConfig::gnb_default();
        let w: Vec<Complex<f64>> = steering_vector(&cfg, 0.2, -0.1)
            .iter()
            .map(|c| c.conj())
            .collect();
        let matched = beam_coupling(&w, &array_response(&cfg, 0.2, -0.1)).norm();
        assert!((matched - 4.0).abs() < 1e-12, "matched gain {matched}");
        let off = beam_coupling(&w, &array_response(&cfg, -0.5, -0.1)).norm();
        assert!(off < matched);
    }

    #[test]
    fn polarizations_share_phase() {
        let cfg = UpaConfig::gnb_default();
        let v = array_response(&cfg, 0.4, -0.2);
        for i in 0..8 {
            assert_eq!(v[i], v[i + 8]);
        }
    }

    #[test]
    fn codebook_shape_and_norms() {
        let beams = dft_codebook(&UpaConfig::gnb_default());
        assert_eq!(beams.len(), 24);
        for (i, b) in beams.iter().enumerate() {
            assert_eq!(b.sector, i / 8);
            assert_eq!(b.beam_id, i % 8);
            let n: f64 = b.weights.iter().map(|c| c.norm_sqr()).sum();
            assert!((n - 1.0).abs() < 1e-12);
            assert!(b.az_deg.abs() <= 60.0 && b.el_deg < 0.0);
        }
    }

    #[test]
    fn codebook_beams_point_where_steered() {
        let cfg = UpaConfig::gnb_default();
        for b in dft_codebook(&cfg) {
            let on = beam_coupling(&b.weights, &array_response(&cfg, b.az_deg.to_radians(), b.el_deg.to_radians())).norm();
            assert!((on - 4.0).abs() < 1e-9);
        }
    }

    #[test]
    fn best_beam_toward_user_beats_single_element() {
        // Array gain of the best codebook beam toward an arbitrary direction
        // should exceed the single-element (unit) gain.
        let cfg = UpaConfig::gnb_default();
        let beams = dft_codebook(&cfg);
        for (az, el) in [(0.1, -0.05), (-0.4, -0.3), (0.5, -0.15)] {
            let a = array_response(&cfg, az, el);
            let best = beams
                .iter()
                .filter(|b| b.sector == 0)
                .map(|b| beam_coupling(&b.weights, &a).norm_sqr())
                .fold(0.0f64, f64::max);
            assert!(best >= 1.0, "best beam gain {best} at ({az},{el})");
        }
    }

    #[test]
    fn sector_pattern_peaks_at_boresight() {
        assert!((sector_element_gain_db(0.0, 0.0) - 8.0).abs() < 1e-12);
        let back = sector_element_gain_db(PI, 0.0);
        assert!((back - (8.0 - 30.0)).abs() < 1e-12, "back gain {back}");
        // Half-power at the nominal beamwidth edge.
        let edge = sector_element_gain_db((65.0f64 / 2.0).to_radians(), 0.0);
        assert!((edge - 5.0).abs() < 1e-9);
    }

    #[test]
    fn terminal_elements_isotropic() {
        let cfg = UpaConfig::terminal_default();
        assert_eq!(element_amplitude(&cfg, 2.0, 1.0), 1.0);
    }
}
