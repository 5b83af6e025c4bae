//! CP-OFDM modulation of SSB grids.
//!
//! 30 kHz subcarrier spacing over a 512-point transform at 15.36 Msps, with
//! a uniform 36-sample cyclic prefix on every symbol. Transforms are unitary
//! (scaled by 1/sqrt(N) both ways) so grid energy equals the energy of the
//! symbol bodies and white noise keeps its per-sample variance per bin.

use crate::ssb::{SSB_SUBCARRIERS, SSB_SYMBOLS};
use crate::{Error, Result, Scalar};
use num_complex::Complex;
use rustfft::FftPlanner;

/// Subcarriers per PRB.
pub const SC_PER_PRB: usize = 12;

/// OFDM numerology of the simulated band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OfdmParams {
    pub scs_hz: f64,
    pub fft_size: usize,
    pub cp_samples: usize,
}

impl Default for OfdmParams {
    fn default() -> Self {
        Self {
            scs_hz: 30e3,
            fft_size: 512,
            cp_samples: 36,
        }
    }
}

impl OfdmParams {
    /// Complex sample rate of the band, `scs * fft_size`.
    pub fn sample_rate_hz(&self) -> f64 {
        self.scs_hz * self.fft_size as f64
    }

    /// Samples per OFDM symbol including the cyclic prefix.
    pub fn symbol_samples(&self) -> usize {
        self.fft_size + self.cp_samples
    }

    /// Symbol duration in seconds.
    pub fn symbol_duration_s(&self) -> f64 {
        self.symbol_samples() as f64 / self.sample_rate_hz()
    }

    /// Highest PRB offset that keeps a 20-PRB block inside the band.
    pub fn max_ssb_prb_offset(&self) -> usize {
        (self.fft_size - SSB_SUBCARRIERS) / SC_PER_PRB
    }

    /// Maps a grid subcarrier under a PRB offset to its FFT bin. The band is
    /// DC-centered: band edge sits at -fft_size/2 subcarriers from center.
    pub fn subcarrier_to_bin(&self, freq_offset_prb: usize, subcarrier: usize) -> usize {
        let edge_offset = SC_PER_PRB * freq_offset_prb + subcarrier;
        (edge_offset + self.fft_size / 2) % self.fft_size
    }
}

/// Contiguous complex baseband samples with a time origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform<T: Scalar> {
    pub samples: Vec<Complex<T>>,
    pub sample_rate_hz: f64,
    pub start_time_s: f64,
    /// Half-open sample ranges that hold signal; everything outside is zero.
    /// Kept by composition so channel convolution can skip silence.
    active_spans: Vec<(usize, usize)>,
}

impl<T: Scalar> Waveform<T> {
    /// Wraps samples that are nonzero over their whole length.
    pub fn new(samples: Vec<Complex<T>>, sample_rate_hz: f64, start_time_s: f64) -> Self {
        let len = samples.len();
        Self {
            samples,
            sample_rate_hz,
            start_time_s,
            active_spans: vec![(0, len)],
        }
    }

    /// An all-zero waveform of `len` samples with no active spans.
    pub fn silent(len: usize, sample_rate_hz: f64) -> Self {
        Self {
            samples: vec![Complex::new(T::zero(), T::zero()); len],
            sample_rate_hz,
            start_time_s: 0.0,
            active_spans: Vec::new(),
        }
    }

    /// Sample ranges holding signal.
    pub fn active_spans(&self) -> &[(usize, usize)] {
        &self.active_spans
    }

    /// Marks `range` as active, keeping the span list sorted, disjoint, and
    /// merged across overlapping or adjacent ranges.
    pub(crate) fn mark_active(&mut self, start: usize, end: usize) {
        if start >= end {
            return;
        }
        let at = self.active_spans.partition_point(|&(s, _)| s <= start);
        self.active_spans.insert(at, (start, end));
        let mut i = at.saturating_sub(1);
        while i + 1 < self.active_spans.len() {
            if self.active_spans[i].1 >= self.active_spans[i + 1].0 {
                self.active_spans[i].1 = self.active_spans[i].1.max(self.active_spans[i + 1].1);
                self.active_spans.remove(i + 1);
            } else {
                i += 1;
            }
        }
    }

    /// Total energy, sum of |x|^2 over all samples.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|v| v.norm_sqr().as_f64()).sum()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz
    }
}

/// Generic 240 x `SSB_SYMBOLS` resource matrix produced by demodulation.
pub type ReMatrix<T> = Vec<Vec<Complex<T>>>;

/// Modulates an SSB grid into 4 CP-OFDM symbols.
///
/// `freq_offset_prb` places the block's first subcarrier that many PRBs above
/// the band edge; `symbol_offset` delays the waveform start by whole symbols
/// (reflected in `start_time_s`). Unit-power REs produce symbol bodies whose
/// total energy equals the grid energy.
pub fn ofdm_modulate<T: Scalar>(
    grid_symbols: &[&[Complex<T>]],
    params: &OfdmParams,
    freq_offset_prb: usize,
    symbol_offset: usize,
) -> Result<Waveform<T>> {
    if freq_offset_prb > params.max_ssb_prb_offset() {
        return Err(Error::OutOfBand(freq_offset_prb));
    }
    let n = params.fft_size;
    let sym_len = params.symbol_samples();
    let mut planner = FftPlanner::<T>::new();
    let ifft = planner.plan_fft_inverse(n);
    let scale = T::one() / T::of((n as f64).sqrt());

    let mut samples = vec![Complex::new(T::zero(), T::zero()); grid_symbols.len() * sym_len];
    let mut bins = vec![Complex::new(T::zero(), T::zero()); n];
    for (sym_idx, symbol) in grid_symbols.iter().enumerate() {
        bins.iter_mut().for_each(|b| *b = Complex::new(T::zero(), T::zero()));
        for (sc, &re) in symbol.iter().enumerate() {
            bins[params.subcarrier_to_bin(freq_offset_prb, sc)] = re;
        }
        ifft.process(&mut bins);
        let body_at = sym_idx * sym_len + params.cp_samples;
        for (i, b) in bins.iter().enumerate() {
            samples[body_at + i] = b * scale;
        }
        // Cyclic prefix: copy of the body tail.
        let (head, body) = samples.split_at_mut(body_at);
        let cp_at = sym_idx * sym_len;
        head[cp_at..cp_at + params.cp_samples]
            .copy_from_slice(&body[n - params.cp_samples..n]);
    }
    Ok(Waveform::new(
        samples,
        params.sample_rate_hz(),
        symbol_offset as f64 * params.symbol_duration_s(),
    ))
}

/// Convenience wrapper taking an [`crate::ssb::SsbGrid`].
pub fn ofdm_modulate_grid<T: Scalar>(
    grid: &crate::ssb::SsbGrid<T>,
    params: &OfdmParams,
    freq_offset_prb: usize,
    symbol_offset: usize,
) -> Result<Waveform<T>> {
    let symbols: Vec<&[Complex<T>]> = (0..SSB_SYMBOLS).map(|s| grid.symbol(s)).collect();
    ofdm_modulate(&symbols, params, freq_offset_prb, symbol_offset)
}

/// Demodulates `SSB_SYMBOLS` symbols back to a 240-subcarrier matrix.
///
/// `symbol_offset` addresses symbols relative to the waveform start; the CP
/// is skipped and each body transformed with the unitary FFT.
pub fn ofdm_demodulate<T: Scalar>(
    wf: &Waveform<T>,
    params: &OfdmParams,
    freq_offset_prb: usize,
    symbol_offset: usize,
) -> Result<ReMatrix<T>> {
    ofdm_demodulate_n(wf, params, freq_offset_prb, symbol_offset, SSB_SYMBOLS)
}

/// Demodulates `n_symbols` symbols back to a 240-subcarrier matrix.
pub fn ofdm_demodulate_n<T: Scalar>(
    wf: &Waveform<T>,
    params: &OfdmParams,
    freq_offset_prb: usize,
    symbol_offset: usize,
    n_symbols: usize,
) -> Result<ReMatrix<T>> {
    if freq_offset_prb > params.max_ssb_prb_offset() {
        return Err(Error::OutOfBand(freq_offset_prb));
    }
    let n = params.fft_size;
    let sym_len = params.symbol_samples();
    let need = (symbol_offset + n_symbols) * sym_len;
    if wf.samples.len() < need {
        return Err(Error::Truncated {
            need,
            got: wf.samples.len(),
        });
    }
    let mut planner = FftPlanner::<T>::new();
    let fft = planner.plan_fft_forward(n);
    let scale = T::one() / T::of((n as f64).sqrt());

    let mut out = Vec::with_capacity(n_symbols);
    let mut bins = vec![Complex::new(T::zero(), T::zero()); n];
    for sym_idx in 0..n_symbols {
        let body_at = (symbol_offset + sym_idx) * sym_len + params.cp_samples;
        bins.copy_from_slice(&wf.samples[body_at..body_at + n]);
        fft.process(&mut bins);
        let row: Vec<Complex<T>> = (0..SSB_SUBCARRIERS)
            .map(|sc| bins[params.subcarrier_to_bin(freq_offset_prb, sc)] * scale)
            .collect();
        out.push(row);
    }
    Ok(out)
}
