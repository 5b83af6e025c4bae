//! SSB burst timing and transmit-window composition.
//!
//! Eight candidate SSB positions per burst, repeated every period. A
//! transmit window longer than one period repeats the burst, truncating
//! anything that runs past the window end.

use crate::ofdm::{ofdm_modulate_grid, OfdmParams, Waveform};
use crate::seq::PhysCellId;
use crate::ssb::SsbGrid;
use crate::units::dbm_to_mw;
use crate::{Error, Result, Scalar};

/// Candidate SSB slots per burst.
pub const BURST_POSITIONS: usize = 8;

/// First OFDM symbol of each candidate position within the burst.
pub const POSITION_FIRST_SYMBOL: [usize; BURST_POSITIONS] = [2, 8, 16, 22, 30, 36, 44, 50];

/// One scheduled SSB: which beam radiates which grid, where and how loud.
#[derive(Debug, Clone)]
pub struct SsbTransmission<T: Scalar> {
    pub grid: SsbGrid<T>,
    pub sector: usize,
    pub beam: usize,
    pub power_dbm: f64,
    pub burst_position: usize,
    pub freq_offset_prb: usize,
}

/// A 25 ms (or other length) transmit window for one (sector, beam) pair.
#[derive(Debug)]
pub struct BeamWindow<T: Scalar> {
    pub sector: usize,
    pub beam: usize,
    pub waveform: Waveform<T>,
}

/// Per-RE amplitude that radiates `power_dbm` across the 20-PRB block.
///
/// With unitary transforms a symbol of 240 REs at amplitude `a` has in-band
/// power `240 a^2 / fft_size` per sample, so `a^2 = P * fft_size / 240`.
pub fn re_amplitude_for_power(power_dbm: f64, params: &OfdmParams) -> f64 {
    (dbm_to_mw(power_dbm) * params.fft_size as f64 / crate::ssb::SSB_SUBCARRIERS as f64).sqrt()
}

/// Sample index of the first CP sample of `burst_position` within a burst.
pub fn position_sample_offset(params: &OfdmParams, burst_position: usize) -> Result<usize> {
    let first_symbol = POSITION_FIRST_SYMBOL
        .get(burst_position)
        .ok_or(Error::InvalidBurstPosition(burst_position))?;
    Ok(first_symbol * params.symbol_samples())
}

/// Composes per-beam transmit windows from per-period schedules.
///
/// `per_period[p]` lists the SSBs of the burst period starting at
/// `p * period_s`, so consecutive periods may carry different grids (e.g. a
/// fresh cell identity each burst). Every period starting inside the window
/// must be covered. Each distinct (sector, beam) pair across all periods
/// yields one waveform covering `window_s` seconds, silent outside its SSBs;
/// an SSB running past the window end is clipped.
pub fn compose_tx_window_periods<T: Scalar>(
    per_period: &[Vec<SsbTransmission<T>>],
    params: &OfdmParams,
    window_s: f64,
    period_s: f64,
) -> Result<Vec<BeamWindow<T>>> {
    let rate = params.sample_rate_hz();
    let window_len = (window_s * rate).round() as usize;
    let period_len = (period_s * rate).round() as usize;
    if window_len == 0 || period_len == 0 {
        return Err(Error::Config(format!(
            "window of {window_s} s and period of {period_s} s must both span samples"
        )));
    }
    let n_periods = window_len.div_ceil(period_len);
    if per_period.len() < n_periods {
        return Err(Error::Truncated {
            need: n_periods,
            got: per_period.len(),
        });
    }
    if per_period.iter().all(|p| p.is_empty()) {
        return Err(Error::Empty("transmissions"));
    }

    let mut keys: Vec<(usize, usize)> = per_period
        .iter()
        .flatten()
        .map(|t| (t.sector, t.beam))
        .collect();
    keys.sort_unstable();
    keys.dedup();

    let mut windows: Vec<BeamWindow<T>> = Vec::with_capacity(keys.len());
    for (sector, beam) in keys {
        let mut wf = Waveform::<T>::silent(window_len, rate);
        for (p, txs) in per_period.iter().take(n_periods).enumerate() {
            let burst_start = p * period_len;
            for tx in txs.iter().filter(|t| t.sector == sector && t.beam == beam) {
                let amp = T::of(re_amplitude_for_power(tx.power_dbm, params));
                let scaled = tx.grid.scaled(amp);
                let ssb = ofdm_modulate_grid(&scaled, params, tx.freq_offset_prb, 0)?;
                let at = burst_start + position_sample_offset(params, tx.burst_position)?;
                if at >= window_len {
                    continue;
                }
                let take = ssb.samples.len().min(window_len - at);
                for (i, s) in ssb.samples[..take].iter().enumerate() {
                    wf.samples[at + i] += *s;
                }
                wf.mark_active(at, at + take);
            }
        }
        windows.push(BeamWindow {
            sector,
            beam,
            waveform: wf,
        });
    }
    Ok(windows)
}

/// Composes per-beam transmit windows from one schedule repeated every
/// period, the sweep-policy case. See [`compose_tx_window_periods`].
pub fn compose_tx_window<T: Scalar>(
    transmissions: &[SsbTransmission<T>],
    params: &OfdmParams,
    window_s: f64,
    period_s: f64,
) -> Result<Vec<BeamWindow<T>>> {
    if transmissions.is_empty() {
        return Err(Error::Empty("transmissions"));
    }
    let rate = params.sample_rate_hz();
    let window_len = (window_s * rate).round() as usize;
    let period_len = ((period_s * rate).round() as usize).max(1);
    let n_periods = window_len.div_ceil(period_len).max(1);
    let per_period: Vec<Vec<SsbTransmission<T>>> =
        (0..n_periods).map(|_| transmissions.to_vec()).collect();
    compose_tx_window_periods(&per_period, params, window_s, period_s)
}

/// The cell identity carried by every transmission in a plan, if unique.
pub fn plan_pci<T: Scalar>(transmissions: &[SsbTransmission<T>]) -> Option<PhysCellId> {
    let first = transmissions.first()?.grid.pci();
    transmissions
        .iter()
        .all(|t| t.grid.pci() == first)
        .then_some(first)
}
