//! Access policies: broadcast beam sweeping versus single-beam directed
//! transmission with receiver-side power control.
//!
//! The sweep policy schedules every sector's full beam set each burst period
//! at fixed power and a campaign-constant cell identity. The directed policy
//! picks the single best (sector, beam) for the intended terminal from the
//! channel itself, sets transmit power so that terminal just meets its
//! target SNR, and draws a fresh random cell identity every burst period.

use crate::array::{Beam, BEAMS_PER_SECTOR};
use crate::burst::{SsbTransmission, BURST_POSITIONS};
use crate::channel::ChannelRealization;
use crate::geometry::SECTOR_COUNT;
use crate::seq::PhysCellId;
use crate::ssb::SsbGrid;
use crate::scalar::Scalar;
use crate::{Error, Result};
use rand::Rng;

/// Which transmission policy a campaign arm runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    /// All sectors sweep all beams at fixed power with a fixed cell identity.
    BeamSweep,
    /// One genie-selected beam at power-controlled level, random identity.
    Directed,
}

impl ScenarioKind {
    /// Short stable name used in file names and reports.
    pub fn label(self) -> &'static str {
        match self {
            ScenarioKind::BeamSweep => "beam_sweep",
            ScenarioKind::Directed => "directed",
        }
    }
}

/// Inputs to the downlink power-control law.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PowerControlInputs {
    /// Noise power at the terminal over the sync-block bandwidth, dBm.
    pub eta_dbm: f64,
    /// End-to-end path gain of the chosen beam, dB (≤ 0 in any physical link).
    pub gamma_db: f64,
    /// Target SNR at the terminal, dB.
    pub s_target_db: f64,
}

/// Transmit power bounds, dBm.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PowerCap {
    pub min_dbm: f64,
    pub max_dbm: f64,
    pub enabled: bool,
}

impl Default for PowerCap {
    fn default() -> Self {
        Self {
            min_dbm: -40.0,
            max_dbm: 28.0,
            enabled: true,
        }
    }
}

/// Downlink power so the terminal receives its target SNR:
/// `p = eta - gamma + s_target`, optionally clamped.
pub fn power_control(inputs: &PowerControlInputs, cap: &PowerCap) -> f64 {
    let p = inputs.eta_dbm - inputs.gamma_db + inputs.s_target_db;
    if cap.enabled {
        p.clamp(cap.min_dbm, cap.max_dbm)
    } else {
        p
    }
}

/// Result of the genie beam search: the best (sector, beam) and its gain.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GenieSelection {
    pub sector: usize,
    pub beam_id: usize,
    pub gamma_db: f64,
}

/// Exhaustively evaluates every codebook beam against the terminal's channel
/// and returns the argmax of end-to-end gain over the sync-sequence bins.
/// Ties break toward the lowest (sector, beam) index.
pub fn genie_beam_select(
    chan: &ChannelRealization,
    codebook: &[Beam],
    bins: &[usize],
    fft_size: usize,
) -> Result<GenieSelection> {
    if codebook.is_empty() {
        return Err(Error::Empty("codebook must hold at least one beam"));
    }
    let mut best: Option<GenieSelection> = None;
    for beam in codebook {
        let gamma_db = chan.end_to_end_gain_db(beam.sector, &beam.weights, bins, fft_size)?;
        let better = match &best {
            None => true,
            Some(b) => gamma_db > b.gamma_db,
        };
        if better {
            best = Some(GenieSelection {
                sector: beam.sector,
                beam_id: beam.beam_id,
                gamma_db,
            });
        }
    }
    Ok(best.expect("codebook is non-empty"))
}

/// One burst period's transmission schedule.
#[derive(Debug, Clone)]
pub struct TxPlan<T: Scalar> {
    pub entries: Vec<SsbTransmission<T>>,
}

/// Sweep-policy schedule: every sector transmits its full beam set, beam `b`
/// at burst position `b`, all at `power_dbm`, sharing the grid's fixed cell
/// identity.
pub fn beam_sweep_schedule<T: Scalar>(
    grid: &SsbGrid<T>,
    power_dbm: f64,
    freq_offset_prb: usize,
) -> Result<TxPlan<T>> {
    if BEAMS_PER_SECTOR > BURST_POSITIONS {
        return Err(Error::Config(format!(
            "{BEAMS_PER_SECTOR} beams per sector exceed {BURST_POSITIONS} burst positions"
        )));
    }
    let mut entries = Vec::with_capacity(SECTOR_COUNT * BEAMS_PER_SECTOR);
    for sector in 0..SECTOR_COUNT {
        for beam_id in 0..BEAMS_PER_SECTOR {
            entries.push(SsbTransmission {
                grid: grid.clone(),
                sector,
                beam: beam_id,
                power_dbm,
                burst_position: beam_id,
                freq_offset_prb,
            });
        }
    }
    Ok(TxPlan { entries })
}

/// Directed-policy schedule for one burst period: a single transmission on
/// the selected beam with a freshly drawn random cell identity.
pub fn directed_schedule<T: Scalar, R: Rng>(
    rng: &mut R,
    selection: &GenieSelection,
    power_dbm: f64,
    freq_offset_prb: usize,
) -> TxPlan<T> {
    let pci = random_pci(rng);
    let pbch: Vec<num_complex::Complex<T>> = crate::ssb::gen_pbch_placeholder(rng);
    let grid = crate::ssb::assemble_ssb_grid(pci, &pbch)
        .expect("placeholder payload has the exact length");
    TxPlan {
        entries: vec![SsbTransmission {
            grid,
            sector: selection.sector,
            beam: selection.beam_id,
            power_dbm,
            burst_position: 0,
            freq_offset_prb,
        }],
    }
}

/// Uniform random cell identity.
pub fn random_pci<R: Rng + ?Sized>(rng: &mut R) -> PhysCellId {
    let cell_id = rng.gen_range(0..1008u16);
    PhysCellId::from_cell_id(cell_id).expect("range-limited draw is valid")
}

/// Access request a collocated helper transmits on the terminal's behalf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct AuxMessage {
    /// Cell identity the terminal asks the base station to use.
    pub requested_pci: PhysCellId,
    /// Helper transmit power, dBm.
    pub tx_power_dbm_q8: i32,
    /// Replay-protection nonce.
    pub nonce: u64,
}

impl AuxMessage {
    /// Helper transmit power in dBm.
    pub fn tx_power_dbm(&self) -> f64 {
        self.tx_power_dbm_q8 as f64 / 256.0
    }

    /// Builds a message with a fresh nonce for the given request.
    pub fn new<R: Rng + ?Sized>(rng: &mut R, requested_pci: PhysCellId, tx_power_dbm: f64) -> Self {
        Self {
            requested_pci,
            tx_power_dbm_q8: (tx_power_dbm * 256.0).round() as i32,
            nonce: rng.gen(),
        }
    }
}
