//! PSS and SSS synchronization sequences.
//!
//! Both sequences are length-127 bipolar m-sequence constructions: the PSS is
//! a single m-sequence cyclically shifted by the NID2 part of the cell
//! identity, the SSS is the element-wise product of two shifted m-sequences
//! addressed by NID1 and NID2.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Sequence length shared by PSS and SSS.
pub const SEQ_LEN: usize = 127;

/// Number of NID1 values.
pub const NID1_COUNT: u16 = 336;

/// Number of NID2 values.
pub const NID2_COUNT: u8 = 3;

/// Physical cell identity, split into its NID1/NID2 components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhysCellId {
    pub nid1: u16,
    pub nid2: u8,
}

impl PhysCellId {
    /// Builds an identity, rejecting out-of-range components.
    pub fn new(nid1: u16, nid2: u8) -> Result<Self> {
        if nid1 >= NID1_COUNT {
            return Err(Error::InvalidNid1(nid1));
        }
        if nid2 >= NID2_COUNT {
            return Err(Error::InvalidNid2(nid2));
        }
        Ok(Self { nid1, nid2 })
    }

    /// Builds an identity from the flat cell ID in `0..1008`.
    pub fn from_cell_id(cell_id: u16) -> Result<Self> {
        if cell_id >= 1008 {
            return Err(Error::InvalidNid1(cell_id / 3));
        }
        Self::new(cell_id / 3, (cell_id % 3) as u8)
    }

    /// Flat cell ID, `3 * nid1 + nid2`.
    pub fn cell_id(self) -> u16 {
        3 * self.nid1 + self.nid2 as u16
    }
}

/// Length-127 sequence of +-1 values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipolarSeq127 {
    values: [i8; SEQ_LEN],
}

impl BipolarSeq127 {
    fn from_bits(bits: &[u8; SEQ_LEN]) -> Self {
        let mut values = [0i8; SEQ_LEN];
        for (v, b) in values.iter_mut().zip(bits.iter()) {
            *v = 1 - 2 * (*b as i8);
        }
        Self { values }
    }

    /// The +-1 entries.
    pub fn values(&self) -> &[i8; SEQ_LEN] {
        &self.values
    }

    /// Sequence energy; always 127 for bipolar entries.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|&v| (v as f64) * (v as f64)).sum()
    }

    /// Cyclic cross-correlation against `other` at `lag`, un-normalized.
    pub fn cyclic_corr(&self, other: &Self, lag: usize) -> i32 {
        (0..SEQ_LEN)
            .map(|n| self.values[n] as i32 * other.values[(n + lag) % SEQ_LEN] as i32)
            .sum()
    }
}

/// m-sequence bits x(i+7) = x(i+4) + x(i) mod 2 from the PSS initial state.
fn pss_m_sequence() -> [u8; SEQ_LEN] {
    let mut x = [0u8; SEQ_LEN + 7];
    // x(0..6) = 0,1,1,0,1,1,1
    x[..7].copy_from_slice(&[0, 1, 1, 0, 1, 1, 1]);
    for i in 0..SEQ_LEN {
        x[i + 7] = (x[i + 4] + x[i]) % 2;
    }
    let mut out = [0u8; SEQ_LEN];
    out.copy_from_slice(&x[..SEQ_LEN]);
    out
}

/// Generates the PSS for one NID2: d(n) = 1 - 2 x((n + 43 nid2) mod 127).
pub fn gen_pss(nid2: u8) -> Result<BipolarSeq127> {
    if nid2 >= NID2_COUNT {
        return Err(Error::InvalidNid2(nid2));
    }
    let x = pss_m_sequence();
    let shift = 43 * nid2 as usize;
    let mut bits = [0u8; SEQ_LEN];
    for (n, b) in bits.iter_mut().enumerate() {
        *b = x[(n + shift) % SEQ_LEN];
    }
    Ok(BipolarSeq127::from_bits(&bits))
}

/// SSS base sequences: x0(i+7) = x0(i+4) + x0(i), x1(i+7) = x1(i+1) + x1(i),
/// both started from state x(0) = 1, x(1..6) = 0.
fn sss_base_sequences() -> ([u8; SEQ_LEN], [u8; SEQ_LEN]) {
    let mut x0 = [0u8; SEQ_LEN + 7];
    let mut x1 = [0u8; SEQ_LEN + 7];
    x0[0] = 1;
    x1[0] = 1;
    for i in 0..SEQ_LEN {
        x0[i + 7] = (x0[i + 4] + x0[i]) % 2;
        x1[i + 7] = (x1[i + 1] + x1[i]) % 2;
    }
    let mut a = [0u8; SEQ_LEN];
    let mut b = [0u8; SEQ_LEN];
    a.copy_from_slice(&x0[..SEQ_LEN]);
    b.copy_from_slice(&x1[..SEQ_LEN]);
    (a, b)
}

/// Generates the SSS for a cell identity:
/// d(n) = [1 - 2 x0((n + m0) mod 127)] [1 - 2 x1((n + m1) mod 127)]
/// with m0 = 15 floor(nid1/112) + 5 nid2 and m1 = nid1 mod 112.
pub fn gen_sss(nid1: u16, nid2: u8) -> Result<BipolarSeq127> {
    if nid1 >= NID1_COUNT {
        return Err(Error::InvalidNid1(nid1));
    }
    if nid2 >= NID2_COUNT {
        return Err(Error::InvalidNid2(nid2));
    }
    let (x0, x1) = sss_base_sequences();
    let m0 = 15 * (nid1 as usize / 112) + 5 * nid2 as usize;
    let m1 = nid1 as usize % 112;
    let mut values = [0i8; SEQ_LEN];
    for (n, v) in values.iter_mut().enumerate() {
        let a = 1 - 2 * (x0[(n + m0) % SEQ_LEN] as i8);
        let b = 1 - 2 * (x1[(n + m1) % SEQ_LEN] as i8);
        *v = a * b;
    }
    Ok(BipolarSeq127 { values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pci_components_validated() {
        assert!(PhysCellId::new(335, 2).is_ok());
        assert_eq!(PhysCellId::new(336, 0), Err(Error::InvalidNid1(336)));
        assert_eq!(PhysCellId::new(0, 3), Err(Error::InvalidNid2(3)));
        let pci = PhysCellId::new(167, 1).unwrap();
        assert_eq!(pci.cell_id(), 502);
        assert_eq!(PhysCellId::from_cell_id(502).unwrap(), pci);
        assert!(PhysCellId::from_cell_id(1008).is_err());
    }

    #[test]
    fn pss_leading_values_nid2_0() {
        let d = gen_pss(0).unwrap();
        assert_eq!(&d.values()[..4], &[1, -1, -1, 1]);
    }

    #[test]
    fn pss_is_cyclic_shift_by_43() {
        let d0 = gen_pss(0).unwrap();
        let d1 = gen_pss(1).unwrap();
        let d2 = gen_pss(2).unwrap();
        for n in 0..SEQ_LEN {
            assert_eq!(d1.values()[n], d0.values()[(n + 43) % SEQ_LEN]);
            assert_eq!(d2.values()[n], d0.values()[(n + 86) % SEQ_LEN]);
        }
    }

    #[test]
    fn pss_energy_is_127() {
        for nid2 in 0..NID2_COUNT {
            assert_eq!(gen_pss(nid2).unwrap().energy(), 127.0);
        }
    }

    #[test]
    fn pss_cyclic_autocorrelation_floor() {
        // m-sequences have flat -1 off-peak cyclic autocorrelation; the spec
        // bound of 0.35 x peak leaves wide margin.
        for nid2 in 0..NID2_COUNT {
            let d = gen_pss(nid2).unwrap();
            assert_eq!(d.cyclic_corr(&d, 0), 127);
            for lag in 1..SEQ_LEN {
                let c = d.cyclic_corr(&d, lag);
                assert!(
                    (c as f64).abs() <= 0.35 * 127.0,
                    "nid2 {nid2} lag {lag} corr {c}"
                );
            }
        }
    }

    #[test]
    fn sss_rejects_bad_ids() {
        assert_eq!(gen_sss(336, 0).unwrap_err(), Error::InvalidNid1(336));
        assert_eq!(gen_sss(0, 3).unwrap_err(), Error::InvalidNid2(3));
        assert_eq!(gen_pss(3).unwrap_err(), Error::InvalidNid2(3));
    }

    #[test]
    fn sss_energy_is_127() {
        for (nid1, nid2) in [(0u16, 0u8), (111, 1), (112, 2), (335, 0)] {
            assert_eq!(gen_sss(nid1, nid2).unwrap().energy(), 127.0);
        }
    }

    #[test]
    fn all_1008_sss_distinct() {
        use std::collections::HashSet;
        let mut seen = HashSet::new();
        for nid1 in 0..NID1_COUNT {
            for nid2 in 0..NID2_COUNT {
                let d = gen_sss(nid1, nid2).unwrap();
                assert!(seen.insert(d.values().to_vec()), "duplicate at ({nid1},{nid2})");
            }
        }
        assert_eq!(seen.len(), 1008);
    }

    #[test]
    fn sss_normalized_cross_correlation_below_unity() {
        let a = gen_sss(0, 0).unwrap();
        let b = gen_sss(1, 0).unwrap();
        let c = gen_sss(0, 1).unwrap();
        for other in [&b, &c] {
            let peak = (0..SEQ_LEN)
                .map(|lag| a.cyclic_corr(other, lag).abs())
                .max()
                .unwrap();
            assert!((peak as f64) / 127.0 < 1.0);
        }
    }
}
