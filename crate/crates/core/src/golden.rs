//! Frozen reference vectors for the synchronization sequences.
//!
//! The files are plain text, one signed integer per line, generated from an
//! independent shift-register implementation and committed verbatim. They
//! back both unit tests and the runtime self-test.

use crate::seq::{gen_pss, gen_sss, SEQ_LEN};

pub const PSS_NID2_0: &str = include_str!("golden/pss_nid2_0.txt");
pub const PSS_NID2_1: &str = include_str!("golden/pss_nid2_1.txt");
pub const PSS_NID2_2: &str = include_str!("golden/pss_nid2_2.txt");
pub const SSS_0_0: &str = include_str!("golden/sss_0_0.txt");
pub const SSS_167_1: &str = include_str!("golden/sss_167_1.txt");
pub const SSS_335_2: &str = include_str!("golden/sss_335_2.txt");

/// Parses a one-value-per-line integer vector.
pub fn parse_vector(text: &str) -> Vec<i8> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| l.parse().expect("golden vector entry"))
        .collect()
}

/// Compares the PSS generator against a reference table; returns a
/// description of the first mismatch, if any.
pub fn check_pss_against(nid2: u8, table: &[i8]) -> Option<String> {
    if table.len() != SEQ_LEN {
        return Some(format!("PSS table for nid2 {nid2} has {} entries", table.len()));
    }
    let seq = gen_pss(nid2).expect("valid nid2");
    seq.values()
        .iter()
        .zip(table.iter())
        .position(|(a, b)| a != b)
        .map(|n| format!("PSS nid2 {nid2} differs from reference at n={n}"))
}

/// Compares the SSS generator against a reference table.
pub fn check_sss_against(nid1: u16, nid2: u8, table: &[i8]) -> Option<String> {
    if table.len() != SEQ_LEN {
        return Some(format!(
            "SSS table for ({nid1},{nid2}) has {} entries",
            table.len()
        ));
    }
    let seq = gen_sss(nid1, nid2).expect("valid identity");
    seq.values()
        .iter()
        .zip(table.iter())
        .position(|(a, b)| a != b)
        .map(|n| format!("SSS ({nid1},{nid2}) differs from reference at n={n}"))
}

/// All bundled golden vectors as (label, check outcome) pairs.
pub fn run_all_checks() -> Vec<(String, Option<String>)> {
    let mut out = Vec::new();
    for (nid2, text) in [(0u8, PSS_NID2_0), (1, PSS_NID2_1), (2, PSS_NID2_2)] {
        let table = parse_vector(text);
        out.push((format!("pss_nid2_{nid2}"), check_pss_against(nid2, &table)));
    }
    for (nid1, nid2, text) in [(0u16, 0u8, SSS_0_0), (167, 1, SSS_167_1), (335, 2, SSS_335_2)] {
        let table = parse_vector(text);
        out.push((
            format!("sss_{nid1}_{nid2}"),
            check_sss_against(nid1, nid2, &table),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_match_golden_vectors() {
        for (name, outcome) in run_all_checks() {
            assert!(outcome.is_none(), "{name}: {:?}", outcome);
        }
    }

    #[test]
    fn tampered_table_is_reported_by_name() {
        let mut table = parse_vector(PSS_NID2_0);
        table[17] = -table[17];
        let msg = check_pss_against(0, &table).expect("tamper detected");
        assert!(msg.contains("PSS nid2 0"), "{msg}");
        assert!(msg.contains("n=17"), "{msg}");
    }

    #[test]
    fn golden_vectors_are_bipolar_and_full_length() {
        for text in [PSS_NID2_0, PSS_NID2_1, PSS_NID2_2, SSS_0_0, SSS_167_1, SSS_335_2] {
            let v = parse_vector(text);
            assert_eq!(v.len(), SEQ_LEN);
            assert!(v.iter().all(|&x| x == 1 || x == -1));
        }
    }
}
