//! Uplink access-request waveform from the collocated helper transmitter.
//!
//! The over-the-air frame is two CP-OFDM symbols over 12 PRBs: a length-139
//! Zadoff-Chu preamble (root 1) mapped onto the first 139 subcarriers,
//! followed by the BPSK-encoded message payload. The base station's detection
//! of this message is assumed ideal by the campaign, so the waveform only
//! needs to exist, carry the message, and decode exactly over a clean link —
//! which the round-trip test pins down.

use crate::access::{random_pci, AuxMessage};
use crate::ofdm::{ofdm_demodulate_n, ofdm_modulate, OfdmParams, Waveform};
use crate::seq::PhysCellId;
use crate::units::dbm_to_mw;
use crate::{Error, Result, Scalar};
use num_complex::Complex;
use rand::Rng;

/// Zadoff-Chu preamble length (prime).
pub const ZC_LEN: usize = 139;

/// Zadoff-Chu root of the preamble.
pub const ZC_ROOT: u32 = 1;

/// Allocated subcarriers: 12 PRBs.
pub const UL_SUBCARRIERS: usize = 144;

/// Payload size: 16-bit cell identity, 32-bit Q8.8 power, 64-bit nonce.
pub const PAYLOAD_BITS: usize = 112;

/// Frequency-domain Zadoff-Chu sequence `z(n) = exp(-j pi u n(n+1) / N)`,
/// unit magnitude on every entry.
pub fn zc_preamble(root: u32) -> Vec<Complex<f64>> {
    (0..ZC_LEN)
        .map(|n| {
            let phase = -std::f64::consts::PI * root as f64 * (n * (n + 1)) as f64 / ZC_LEN as f64;
            Complex::from_polar(1.0, phase)
        })
        .collect()
}

/// Serializes a message to its payload bits, least-significant bit first
/// within each field.
pub fn message_bits(msg: &AuxMessage) -> Vec<u8> {
    let mut bits = Vec::with_capacity(PAYLOAD_BITS);
    push_bits(&mut bits, msg.requested_pci.cell_id() as u64, 16);
    push_bits(&mut bits, msg.tx_power_dbm_q8 as u32 as u64, 32);
    push_bits(&mut bits, msg.nonce, 64);
    bits
}

/// Reassembles a message from payload bits, rejecting invalid identities.
pub fn message_from_bits(bits: &[u8]) -> Result<AuxMessage> {
    if bits.len() < PAYLOAD_BITS {
        return Err(Error::Truncated {
            need: PAYLOAD_BITS,
            got: bits.len(),
        });
    }
    let mut at = 0;
    let cell_id = read_bits(bits, &mut at, 16) as u16;
    let power_q8 = read_bits(bits, &mut at, 32) as u32 as i32;
    let nonce = read_bits(bits, &mut at, 64);
    Ok(AuxMessage {
        requested_pci: PhysCellId::from_cell_id(cell_id)?,
        tx_power_dbm_q8: power_q8,
        nonce,
    })
}

/// Modulates an access request into its two-symbol uplink waveform at the
/// given transmit power.
pub fn modulate_access_request<T: Scalar>(
    msg: &AuxMessage,
    params: &OfdmParams,
    freq_offset_prb: usize,
    power_dbm: f64,
) -> Result<Waveform<T>> {
    let amp = T::of((dbm_to_mw(power_dbm) * params.fft_size as f64 / UL_SUBCARRIERS as f64).sqrt());
    let zero = Complex::new(T::zero(), T::zero());

    let mut preamble = vec![zero; UL_SUBCARRIERS];
    for (sc, z) in preamble.iter_mut().zip(zc_preamble(ZC_ROOT)) {
        *sc = T::c_of(z) * amp;
    }

    let mut payload = vec![zero; UL_SUBCARRIERS];
    let bits = message_bits(msg);
    for (sc, slot) in payload.iter_mut().enumerate() {
        // Bits map 0 -> +1, 1 -> -1; the tail pads with +1.
        let bit = bits.get(sc).copied().unwrap_or(0);
        let v = if bit == 0 { T::one() } else { -T::one() };
        *slot = Complex::new(v * amp, T::zero());
    }

    ofdm_modulate(&[&preamble, &payload], params, freq_offset_prb, 0)
}

/// Demodulates and decodes an access request from a clean capture.
///
/// Gates on the preamble first: the normalized Zadoff-Chu correlation of the
/// first symbol must exceed 0.7 before the payload is trusted.
pub fn demodulate_access_request<T: Scalar>(
    wf: &Waveform<T>,
    params: &OfdmParams,
    freq_offset_prb: usize,
) -> Result<AuxMessage> {
    let rows = ofdm_demodulate_n(wf, params, freq_offset_prb, 0, 2)?;
    let zc = zc_preamble(ZC_ROOT);
    let mut corr = Complex::new(0.0, 0.0);
    let mut energy = 0.0;
    for (n, z) in zc.iter().enumerate() {
        let r = T::c_as_f64(rows[0][n]);
        corr += r * z.conj();
        energy += r.norm_sqr();
    }
    if energy <= 0.0 || corr.norm() / (ZC_LEN as f64 * energy).sqrt() < 0.7 {
        return Err(Error::Config(
            "access-request preamble not detected".into(),
        ));
    }
    let bits: Vec<u8> = rows[1][..PAYLOAD_BITS]
        .iter()
        .map(|c| (T::c_as_f64(*c).re < 0.0) as u8)
        .collect();
    message_from_bits(&bits)
}

/// Draws a fresh access request (random cell identity, fresh nonce) and its
/// uplink waveform.
pub fn access_request<T: Scalar, R: Rng>(
    rng: &mut R,
    params: &OfdmParams,
    freq_offset_prb: usize,
    power_dbm: f64,
) -> Result<(AuxMessage, Waveform<T>)> {
    let pci = random_pci(rng);
    let msg = AuxMessage::new(rng, pci, power_dbm);
    let wf = modulate_access_request(&msg, params, freq_offset_prb, power_dbm)?;
    Ok((msg, wf))
}

fn push_bits(bits: &mut Vec<u8>, value: u64, n: usize) {
    for i in 0..n {
        bits.push(((value >> i) & 1) as u8);
    }
}

fn read_bits(bits: &[u8], at: &mut usize, n: usize) -> u64 {
    let mut v = 0u64;
    for i in 0..n {
        v |= (bits[*at + i] as u64) << i;
    }
    *at += n;
    v
}
