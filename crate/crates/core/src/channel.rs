//! Clustered small-scale fading, tapped-delay-line application, and receiver
//! noise.
//!
//! A realization models the whole site-to-receiver link: clusters carry
//! global departure/arrival angles and one complex path gain, and each sector
//! panel sees the same clusters through its own orientation and element
//! pattern. Delays are integer samples within the cyclic prefix, so the
//! frequency response queried by the beam-selection genie matches the
//! time-domain convolution exactly.

use crate::array::{self, UpaConfig};
use crate::geometry::{wrap_pi, CellGeometry, LinkGeometry, SECTOR_COUNT};
use crate::ofdm::Waveform;
use crate::scalar::Scalar;
use crate::units::db_to_lin;
use crate::{Error, Result};
use num_complex::Complex;
use rand::Rng;
use rand_distr::{Distribution, Exp, StandardNormal};
use std::f64::consts::PI;

/// Small-scale model parameters.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ChannelParams {
    /// Ricean K-factor for line-of-sight links, dB.
    pub ricean_k_db: f64,
    /// Scattered clusters accompanying the dominant ray on LOS links.
    pub n_scatter_los: usize,
    /// Cluster count on non-LOS links.
    pub n_clusters_nlos: usize,
    /// RMS of the exponential cluster delay profile, nanoseconds.
    pub delay_rms_ns: f64,
    /// Laplacian azimuth offset spread around the geometric angle, degrees.
    pub az_spread_deg: f64,
    /// Laplacian elevation offset spread, degrees.
    pub el_spread_deg: f64,
}

impl Default for ChannelParams {
    fn default() -> Self {
        Self {
            ricean_k_db: 9.0,
            n_scatter_los: 5,
            n_clusters_nlos: 6,
            delay_rms_ns: 100.0,
            az_spread_deg: 15.0,
            el_spread_deg: 5.0,
        }
    }
}

/// One propagation cluster: integer-sample delay, global angles, path gain,
/// and the per-sector tx/rx element coupling matrices.
#[derive(Debug, Clone)]
pub struct Cluster {
    pub delay_samples: usize,
    pub aod_az_rad: f64,
    pub aod_el_rad: f64,
    pub aoa_az_rad: f64,
    pub aoa_el_rad: f64,
    /// Complex path gain; expected total over clusters is 1.
    pub path_gain: Complex<f64>,
    /// Element coupling per sector: `gains[sector][rx][tx]`, path gain and
    /// element pattern included.
    gains: Vec<Vec<Vec<Complex<f64>>>>,
}

impl Cluster {
    /// Coupling matrix toward one sector panel.
    pub fn sector_matrix(&self, sector: usize) -> &[Vec<Complex<f64>>] {
        &self.gains[sector]
    }
}

/// Small-scale realization of a site-to-receiver link.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    pub clusters: Vec<Cluster>,
    /// Pathloss plus shadowing, as a gain (negative dB).
    pub large_scale_gain_db: f64,
    pub n_rx: usize,
    pub n_tx: usize,
}

/// Draws one channel realization for a link.
pub fn gen_channel<R: Rng + ?Sized>(
    rng: &mut R,
    cell: &CellGeometry,
    link: &LinkGeometry,
    tx: &UpaConfig,
    rx: &UpaConfig,
    params: &ChannelParams,
    fc_ghz: f64,
    sample_rate_hz: f64,
    cp_samples: usize,
) -> ChannelRealization {
    let large_scale_gain_db =
        crate::pathloss::large_scale_gain_db(link.dist_3d_m, fc_ghz, link.los, link.shadowing_db);
    let b = |deg: f64| deg.to_radians() / 2f64.sqrt();
    let az_b = b(params.az_spread_deg);
    let el_b = b(params.el_spread_deg);
    let aoa_az_geo = wrap_pi(link.azimuth_rad + PI);
    let aoa_el_geo = -link.elevation_rad;

    let mut specs: Vec<(f64, f64, f64, f64, usize, Complex<f64>)> = Vec::new();
    if link.los {
        let k = db_to_lin(params.ricean_k_db);
        let p0 = k / (k + 1.0);
        let phase = rng.gen::<f64>() * 2.0 * PI;
        specs.push((
            link.azimuth_rad,
            link.elevation_rad,
            aoa_az_geo,
            aoa_el_geo,
            0,
            Complex::from_polar(p0.sqrt(), phase),
        ));
        let scatter_var = (1.0 - p0) / params.n_scatter_los as f64;
        for _ in 0..params.n_scatter_los {
            specs.push(scattered_cluster(
                rng,
                link,
                aoa_az_geo,
                aoa_el_geo,
                az_b,
                el_b,
                scatter_var,
                params.delay_rms_ns,
                sample_rate_hz,
                cp_samples,
            ));
        }
    } else {
        let var = 1.0 / params.n_clusters_nlos as f64;
        for _ in 0..params.n_clusters_nlos {
            specs.push(scattered_cluster(
                rng,
                link,
                aoa_az_geo,
                aoa_el_geo,
                az_b,
                el_b,
                var,
                params.delay_rms_ns,
                sample_rate_hz,
                cp_samples,
            ));
        }
    }

    let clusters = specs
        .into_iter()
        .map(|(aod_az, aod_el, aoa_az, aoa_el, delay, gain)| {
            let rx_resp = array::array_response(rx, aoa_az, aoa_el);
            // Unknown relative polarization alignment between the two panels:
            // one random phase per (rx pol, tx pol) pair per cluster.
            let pol: [[Complex<f64>; 2]; 2] = {
                let mut p = [[Complex::new(1.0, 0.0); 2]; 2];
                for row in p.iter_mut() {
                    for v in row.iter_mut() {
                        *v = Complex::from_polar(1.0, rng.gen::<f64>() * 2.0 * PI);
                    }
                }
                p
            };
            let mut gains = Vec::with_capacity(SECTOR_COUNT);
            for sector in 0..SECTOR_COUNT {
                let bore = cell
                    .sector_boresight_rad(sector)
                    .expect("sector index in range");
                let rel_az = wrap_pi(aod_az - bore);
                let tx_resp = array::array_response(tx, rel_az, aod_el);
                let elem_amp = array::element_amplitude(tx, rel_az, aod_el);
                let mut m = vec![vec![Complex::new(0.0, 0.0); tx.n_elements()]; rx.n_elements()];
                for (r, row) in m.iter_mut().enumerate() {
                    let (rx_pol, _, _) = rx.element_coords(r);
                    for (e, v) in row.iter_mut().enumerate() {
                        let (tx_pol, _, _) = tx.element_coords(e);
                        *v = gain * elem_amp * rx_resp[r] * pol[rx_pol][tx_pol] * tx_resp[e];
                    }
                }
                gains.push(m);
            }
            Cluster {
                delay_samples: delay,
                aod_az_rad: aod_az,
                aod_el_rad: aod_el,
                aoa_az_rad: aoa_az,
                aoa_el_rad: aoa_el,
                path_gain: gain,
                gains,
            }
        })
        .collect();

    ChannelRealization {
        clusters,
        large_scale_gain_db,
        n_rx: rx.n_elements(),
        n_tx: tx.n_elements(),
    }
}

#[allow(clippy::too_many_arguments)]
fn scattered_cluster<R: Rng + ?Sized>(
    rng: &mut R,
    link: &LinkGeometry,
    aoa_az_geo: f64,
    aoa_el_geo: f64,
    az_b: f64,
    el_b: f64,
    var: f64,
    delay_rms_ns: f64,
    sample_rate_hz: f64,
    cp_samples: usize,
) -> (f64, f64, f64, f64, usize, Complex<f64>) {
    let lap = |rng: &mut R, b: f64| -> f64 {
        let u: f64 = rng.gen::<f64>() - 0.5;
        -b * u.signum() * (1.0 - 2.0 * u.abs()).ln()
    };
    let clamp_el = |e: f64| e.clamp(-PI / 2.0, PI / 2.0);
    let aod_az = wrap_pi(link.azimuth_rad + lap(rng, az_b));
    let aod_el = clamp_el(link.elevation_rad + lap(rng, el_b));
    let aoa_az = wrap_pi(aoa_az_geo + lap(rng, az_b));
    let aoa_el = clamp_el(aoa_el_geo + lap(rng, el_b));
    let exp = Exp::new(1.0 / (delay_rms_ns * 1e-9)).expect("positive rate");
    let delay_s: f64 = exp.sample(rng);
    let max_delay = cp_samples.saturating_sub(1);
    let delay = ((delay_s * sample_rate_hz).round() as usize).min(max_delay);
    let s = (var / 2.0).sqrt();
    let re: f64 = <StandardNormal as Distribution<f64>>::sample(&StandardNormal, rng);
    let im: f64 = <StandardNormal as Distribution<f64>>::sample(&StandardNormal, rng);
    (aod_az, aod_el, aoa_az, aoa_el, delay, Complex::new(re * s, im * s))
}

impl ChannelRealization {
    /// Per-receive-element tap weights for a beam toward one sector:
    /// `(delay_samples, v)` with `v[r] = (G_c w)_r`.
    pub fn beam_taps(&self, sector: usize, weights: &[Complex<f64>]) -> Result<Vec<(usize, Vec<Complex<f64>>)>> {
        if weights.len() != self.n_tx {
            return Err(Error::Truncated {
                need: self.n_tx,
                got: weights.len(),
            });
        }
        Ok(self
            .clusters
            .iter()
            .map(|c| {
                let m = c.sector_matrix(sector);
                let v = m
                    .iter()
                    .map(|row| row.iter().zip(weights).map(|(g, w)| g * w).sum())
                    .collect();
                (c.delay_samples, v)
            })
            .collect())
    }

    /// Small-scale frequency response of a beam at the given FFT bins:
    /// `out[rx][bin] = sum_c v_c[rx] * exp(-j 2 pi k d_c / fft_size)`.
    pub fn beam_response_at_bins(
        &self,
        sector: usize,
        weights: &[Complex<f64>],
        bins: &[usize],
        fft_size: usize,
    ) -> Result<Vec<Vec<Complex<f64>>>> {
        let taps = self.beam_taps(sector, weights)?;
        let mut out = vec![vec![Complex::new(0.0, 0.0); bins.len()]; self.n_rx];
        for (d, v) in &taps {
            for (bi, &k) in bins.iter().enumerate() {
                let rot = Complex::from_polar(
                    1.0,
                    -2.0 * PI * (k as f64) * (*d as f64) / fft_size as f64,
                );
                for (r, row) in out.iter_mut().enumerate() {
                    row[bi] += v[r] * rot;
                }
            }
        }
        Ok(out)
    }

    /// Mean small-scale power gain of a beam over the given bins and all
    /// receive elements.
    pub fn mean_beam_power_gain(
        &self,
        sector: usize,
        weights: &[Complex<f64>],
        bins: &[usize],
        fft_size: usize,
    ) -> Result<f64> {
        let resp = self.beam_response_at_bins(sector, weights, bins, fft_size)?;
        let total: f64 = resp.iter().flatten().map(|h| h.norm_sqr()).sum();
        Ok(total / (self.n_rx * bins.len()) as f64)
    }

    /// End-to-end path gain of a beam in dB: large-scale gain plus the mean
    /// beam-coupled small-scale response over the given bins.
    pub fn end_to_end_gain_db(
        &self,
        sector: usize,
        weights: &[Complex<f64>],
        bins: &[usize],
        fft_size: usize,
    ) -> Result<f64> {
        let ss = self.mean_beam_power_gain(sector, weights, bins, fft_size)?;
        Ok(self.large_scale_gain_db + crate::units::lin_to_db(ss))
    }

    /// Total small-scale cluster power of this realization.
    pub fn total_cluster_power(&self) -> f64 {
        self.clusters.iter().map(|c| c.path_gain.norm_sqr()).sum()
    }
}

/// Convolves a beam's transmit waveform through the channel into
/// per-receive-element accumulators, scaled by `gain_db` (amplitude
/// `10^(gain_db/20)`). Only the waveform's active spans are visited.
pub fn apply_channel<T: Scalar>(
    wf: &Waveform<T>,
    chan: &ChannelRealization,
    sector: usize,
    weights: &[Complex<f64>],
    gain_db: f64,
    out: &mut [Vec<Complex<T>>],
) -> Result<()> {
    if out.len() != chan.n_rx {
        return Err(Error::Truncated {
            need: chan.n_rx,
            got: out.len(),
        });
    }
    if gain_db == f64::NEG_INFINITY {
        return Ok(());
    }
    let amp = db_to_lin(gain_db).sqrt();
    let taps = chan.beam_taps(sector, weights)?;
    let n_out = out[0].len();
    for (d, v) in &taps {
        for (r, row) in out.iter_mut().enumerate() {
            let w: Complex<T> = T::c_of(v[r] * amp);
            for &(s0, s1) in wf.active_spans() {
                let end = (s1 + d).min(n_out);
                if s0 + d >= end {
                    continue;
                }
                for n in s0..end - d {
                    row[n + d] += wf.samples[n] * w;
                }
            }
        }
    }
    Ok(())
}

/// Adds circularly symmetric complex Gaussian noise of the given per-sample
/// power (mW) to every element stream.
pub fn add_noise<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    elements: &mut [Vec<Complex<T>>],
    noise_power_mw: f64,
) {
    let s = (noise_power_mw / 2.0).sqrt();
    for row in elements.iter_mut() {
        for v in row.iter_mut() {
            let re: f64 = <StandardNormal as Distribution<f64>>::sample(&StandardNormal, rng);
            let im: f64 = <StandardNormal as Distribution<f64>>::sample(&StandardNormal, rng);
            *v += T::c_of(Complex::new(re * s, im * s));
        }
    }
}
