//! SSB resource grid assembly.
//!
//! The block spans 4 OFDM symbols by 240 subcarriers (20 PRBs). Symbol 0
//! carries the PSS on subcarriers 56..=182, symbol 2 the SSS on the same
//! range with guard gaps on 48..=55 and 183..=191, and symbols 1 and 3 are
//! fully occupied by PBCH. PBCH content does not matter to any receiver here,
//! so it is stand-in QPSK.

use crate::seq::{gen_pss, gen_sss, PhysCellId};
use crate::{Error, Result, Scalar};
use num_complex::Complex;
use rand::Rng;

/// Subcarriers per SSB (20 PRBs).
pub const SSB_SUBCARRIERS: usize = 240;

/// OFDM symbols per SSB.
pub const SSB_SYMBOLS: usize = 4;

/// First subcarrier of the PSS/SSS within the block.
pub const SYNC_FIRST_SC: usize = 56;

/// One-past-last subcarrier of the PSS/SSS within the block.
pub const SYNC_LAST_SC: usize = 183;

/// Resource elements carrying PBCH: all of symbols 1 and 3, plus the SSS
/// symbol outside the sequence and its guards.
pub const PBCH_RE_COUNT: usize = 2 * SSB_SUBCARRIERS + (48 + 240 - 192);

/// Occupied resource elements per symbol: PSS, PBCH, SSS+edges, PBCH.
pub const OCCUPANCY: [usize; SSB_SYMBOLS] = [127, 240, 127 + 48 + 48, 240];

/// 240 x 4 complex resource grid for one SSB, subcarrier-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SsbGrid<T: Scalar> {
    data: Vec<Complex<T>>,
    pci: PhysCellId,
}

impl<T: Scalar> SsbGrid<T> {
    /// The resource element at (subcarrier, symbol).
    pub fn re(&self, subcarrier: usize, symbol: usize) -> Complex<T> {
        self.data[symbol * SSB_SUBCARRIERS + subcarrier]
    }

    /// The cell identity encoded in the grid.
    pub fn pci(&self) -> PhysCellId {
        self.pci
    }

    /// One symbol column of 240 resource elements.
    pub fn symbol(&self, symbol: usize) -> &[Complex<T>] {
        &self.data[symbol * SSB_SUBCARRIERS..(symbol + 1) * SSB_SUBCARRIERS]
    }

    /// Count of nonzero resource elements per symbol.
    pub fn occupancy(&self) -> [usize; SSB_SYMBOLS] {
        let mut out = [0; SSB_SYMBOLS];
        for (sym, slot) in out.iter_mut().enumerate() {
            *slot = self
                .symbol(sym)
                .iter()
                .filter(|v| v.norm_sqr() > T::zero())
                .count();
        }
        out
    }

    /// Total grid energy, sum of |RE|^2.
    pub fn energy(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr().as_f64()).sum()
    }

    /// Scales every resource element by `amplitude`.
    pub fn scaled(&self, amplitude: T) -> Self {
        Self {
            data: self.data.iter().map(|v| v * amplitude).collect(),
            pci: self.pci,
        }
    }
}

/// Draws the 576 stand-in PBCH QPSK symbols, unit magnitude each.
pub fn gen_pbch_placeholder<T: Scalar>(rng: &mut impl Rng) -> Vec<Complex<T>> {
    let scale = T::of(std::f64::consts::FRAC_1_SQRT_2);
    (0..PBCH_RE_COUNT)
        .map(|_| {
            let re = if rng.gen::<bool>() { scale } else { -scale };
            let im = if rng.gen::<bool>() { scale } else { -scale };
            Complex::new(re, im)
        })
        .collect()
}

/// Assembles the SSB grid for a cell identity from a PBCH payload.
pub fn assemble_ssb_grid<T: Scalar>(
    pci: PhysCellId,
    pbch: &[Complex<T>],
) -> Result<SsbGrid<T>> {
    if pbch.len() != PBCH_RE_COUNT {
        return Err(Error::PbchLength(pbch.len()));
    }
    let pss = gen_pss(pci.nid2)?;
    let sss = gen_sss(pci.nid1, pci.nid2)?;
    let mut data = vec![Complex::new(T::zero(), T::zero()); SSB_SUBCARRIERS * SSB_SYMBOLS];
    let one = T::one();
    for (n, &v) in pss.values().iter().enumerate() {
        data[SYNC_FIRST_SC + n] = Complex::new(if v > 0 { one } else { -one }, T::zero());
    }
    for (n, &v) in sss.values().iter().enumerate() {
        data[2 * SSB_SUBCARRIERS + SYNC_FIRST_SC + n] =
            Complex::new(if v > 0 { one } else { -one }, T::zero());
    }
    let mut payload = pbch.iter();
    // Symbols 1 and 3 carry PBCH on every subcarrier.
    for sym in [1usize, 3] {
        for sc in 0..SSB_SUBCARRIERS {
            data[sym * SSB_SUBCARRIERS + sc] = *payload.next().unwrap();
        }
    }
    // PBCH edges around the SSS: subcarriers 0..48 and 192..240 of symbol 2.
    for sc in (0..48).chain(192..SSB_SUBCARRIERS) {
        data[2 * SSB_SUBCARRIERS + sc] = *payload.next().unwrap();
    }
    Ok(SsbGrid { data, pci })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn grid() -> SsbGrid<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pbch = gen_pbch_placeholder(&mut rng);
        assemble_ssb_grid(PhysCellId::new(17, 1).unwrap(), &pbch).unwrap()
    }

    #[test]
    fn occupancy_counts() {
        assert_eq!(grid().occupancy(), [127, 240, 223, 240]);
        assert_eq!(OCCUPANCY, [127, 240, 223, 240]);
    }

    #[test]
    fn unit_power_energy_is_830() {
        // 127 + 240 + 223 + 240, every occupied RE at unit power.
        assert!((grid().energy() - 830.0).abs() < 1e-9);
    }

    #[test]
    fn sync_sequences_land_on_expected_res() {
        let g = grid();
        let pss = gen_pss(1).unwrap();
        let sss = gen_sss(17, 1).unwrap();
        for n in 0..127 {
            assert_eq!(g.re(SYNC_FIRST_SC + n, 0).re, pss.values()[n] as f64);
            assert_eq!(g.re(SYNC_FIRST_SC + n, 2).re, sss.values()[n] as f64);
        }
        // Guards flanking the SSS stay empty.
        for sc in (48..56).chain(183..192) {
            assert_eq!(g.re(sc, 2).norm_sqr(), 0.0);
        }
        // PSS symbol is empty outside the sequence.
        for sc in (0..SYNC_FIRST_SC).chain(SYNC_LAST_SC..SSB_SUBCARRIERS) {
            assert_eq!(g.re(sc, 0).norm_sqr(), 0.0);
        }
    }

    #[test]
    fn pbch_payload_length_enforced() {
        let pbch = vec![Complex::new(1.0f64, 0.0); 623];
        let err = assemble_ssb_grid(PhysCellId::new(0, 0).unwrap(), &pbch).unwrap_err();
        assert_eq!(err, Error::PbchLength(623));
    }

    #[test]
    fn pbch_placeholder_deterministic_per_seed() {
        let a: Vec<Complex<f32>> =
            gen_pbch_placeholder(&mut ChaCha8Rng::seed_from_u64(3));
        let b: Vec<Complex<f32>> =
            gen_pbch_placeholder(&mut ChaCha8Rng::seed_from_u64(3));
        let c: Vec<Complex<f32>> =
            gen_pbch_placeholder(&mut ChaCha8Rng::seed_from_u64(4));
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), PBCH_RE_COUNT);
        for v in &a {
            assert!((v.norm() - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn scaled_grid_scales_energy() {
        let g = grid();
        let s = g.scaled(2.0);
        assert!((s.energy() - 4.0 * g.energy()).abs() < 1e-9);
    }
}
