//! Cross-checks the sequence generators against an independently written
//! shift-register oracle over every cell identity.
//!
//! The oracle walks explicit 7-bit Fibonacci LFSR states bit by bit instead
//! of filling an index array, so a transcription slip in either
//! implementation shows up as a mismatch.

use nrlpd_core::seq::{gen_pss, gen_sss, SEQ_LEN};

/// 7-bit Fibonacci LFSR. `taps` lists the state positions whose sum feeds
/// back; the oldest bit (position 0) is emitted each step.
struct Lfsr {
    state: [u8; 7],
    taps: &'static [usize],
}

impl Lfsr {
    fn new(init: [u8; 7], taps: &'static [usize]) -> Self {
        Self { state: init, taps }
    }

    fn step(&mut self) -> u8 {
        let out = self.state[0];
        let fb = self.taps.iter().map(|&t| self.state[t]).sum::<u8>() % 2;
        self.state.copy_within(1.., 0);
        self.state[6] = fb;
        out
    }

    fn run(mut self, len: usize) -> Vec<u8> {
        (0..len).map(|_| self.step()).collect()
    }
}

/// Doubles a bit sequence and slices it to realize a cyclic shift.
fn shifted_bipolar(bits: &[u8], shift: usize) -> Vec<i8> {
    let doubled: Vec<u8> = bits.iter().chain(bits.iter()).copied().collect();
    doubled[shift..shift + bits.len()]
        .iter()
        .map(|&b| if b == 0 { 1 } else { -1 })
        .collect()
}

fn oracle_pss(nid2: u8) -> Vec<i8> {
    // x(i+7) = x(i+4) + x(i): feedback taps at state offsets 0 and 4.
    let bits = Lfsr::new([0, 1, 1, 0, 1, 1, 1], &[0, 4]).run(SEQ_LEN);
    shifted_bipolar(&bits, (43 * nid2 as usize) % SEQ_LEN)
}

fn oracle_sss(nid1: u16, nid2: u8) -> Vec<i8> {
    let x0 = Lfsr::new([1, 0, 0, 0, 0, 0, 0], &[0, 4]).run(SEQ_LEN);
    let x1 = Lfsr::new([1, 0, 0, 0, 0, 0, 0], &[0, 1]).run(SEQ_LEN);
    let m0 = 15 * (nid1 as usize / 112) + 5 * nid2 as usize;
    let m1 = nid1 as usize % 112;
    let a = shifted_bipolar(&x0, m0 % SEQ_LEN);
    let b = shifted_bipolar(&x1, m1 % SEQ_LEN);
    a.iter().zip(b.iter()).map(|(&p, &q)| p * q).collect()
}

#[test]
fn pss_matches_oracle_for_all_nid2() {
    for nid2 in 0..3u8 {
        let implemented = gen_pss(nid2).unwrap();
        assert_eq!(
            implemented.values().as_slice(),
            oracle_pss(nid2).as_slice(),
            "PSS mismatch at nid2 {nid2}"
        );
    }
}

#[test]
fn sss_matches_oracle_for_all_1008_identities() {
    for nid1 in 0..336u16 {
        for nid2 in 0..3u8 {
            let implemented = gen_sss(nid1, nid2).unwrap();
            assert_eq!(
                implemented.values().as_slice(),
                oracle_sss(nid1, nid2).as_slice(),
                "SSS mismatch at ({nid1},{nid2})"
            );
        }
    }
}

#[test]
fn oracle_pss_nid2_0_leading_values() {
    // Hand-computed from the recurrence: x = 0,1,1,0,1,1,1,... gives
    // d = 1-2x = +1,-1,-1,+1 for the first four entries.
    assert_eq!(&oracle_pss(0)[..4], &[1, -1, -1, 1]);
}
