//! Link-level Monte Carlo simulator for 5G NR downlink synchronization
//! detectability.
//!
//! The crate models a single three-sector gNB serving one intended receiver
//! while a passive listener tries to discover the downlink synchronization
//! signals. Two transmission policies are compared:
//!
//! * **beam sweep**: periodic SSB bursts swept over a DFT beam codebook at
//!   full power, the classic always-on broadcast;
//! * **directed**: a single SSB per period on the best beam toward the served
//!   UE, transmit power closed-loop controlled to hit a target receive SNR.
//!
//! The signal chain is implemented at waveform level (sequence generation,
//! OFDM modulation, clustered multipath channel, thermal noise) and three
//! receivers produce detection statistics per trial: a sliding-window energy
//! detector, a full PSS/SSS correlator search, and the served UE's own
//! correlator. Campaign drivers aggregate Monte Carlo trials into ROC curves
//! and distance-binned detection probabilities.
//!
//! Core signal types are generic over the sample scalar (`f32` or `f64`)
//! through the [`Scalar`] trait; concrete aliases are exported below.

pub mod burst;
pub mod golden;
pub mod ofdm;
pub mod scalar;
pub mod seq;
pub mod ssb;
pub mod units;
// Remaining subsystems, added as they land:
pub mod access;
pub mod array;
pub mod aux_ul;
pub mod campaign;
pub mod channel;
pub mod config;
pub mod detect;
pub mod geometry;
pub mod pathloss;
pub mod rng;
pub mod selfcheck;

use thiserror::Error;

pub use scalar::Scalar;

/// Errors surfaced by simulator building blocks.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("NID1 {0} out of range 0..=335")]
    InvalidNid1(u16),
    #[error("NID2 {0} out of range 0..=2")]
    InvalidNid2(u8),
    #[error("PBCH payload has {0} symbols, expected {expected}", expected = ssb::PBCH_RE_COUNT)]
    PbchLength(usize),
    #[error("SSB placement at PRB offset {0} does not fit the sampled band")]
    OutOfBand(usize),
    #[error("burst position {0} out of range 0..{max}", max = burst::BURST_POSITIONS)]
    InvalidBurstPosition(usize),
    #[error("waveform with {got} samples is shorter than required {need}")]
    Truncated { need: usize, got: usize },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("distance {0} m is not positive")]
    InvalidDistance(f64),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Single-precision waveform, the default campaign sample type.
pub type WaveformF32 = ofdm::Waveform<f32>;
/// Double-precision waveform, used where tight numeric tolerances matter.
pub type WaveformF64 = ofdm::Waveform<f64>;
/// Single-precision SSB resource grid.
pub type SsbGridF32 = ssb::SsbGrid<f32>;
/// Double-precision SSB resource grid.
pub type SsbGridF64 = ssb::SsbGrid<f64>;
/// Single-precision receiver capture.
pub type CaptureF32 = detect::CaptureWindow<f32>;
/// Double-precision receiver capture.
pub type CaptureF64 = detect::CaptureWindow<f64>;
