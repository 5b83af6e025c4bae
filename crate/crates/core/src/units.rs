//! dB/linear conversions and thermal-noise bookkeeping.

/// Thermal noise power spectral density at 290 K, dBm per Hz.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

/// Converts a power ratio from dB to linear scale.
pub fn db_to_lin(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear power ratio to dB.
pub fn lin_to_db(lin: f64) -> f64 {
    10.0 * lin.log10()
}

/// Converts dBm to milliwatts.
pub fn dbm_to_mw(dbm: f64) -> f64 {
    db_to_lin(dbm)
}

/// Converts milliwatts to dBm.
pub fn mw_to_dbm(mw: f64) -> f64 {
    lin_to_db(mw)
}

/// Integrated thermal noise power over `bandwidth_hz` with the given
/// receiver noise figure, in dBm.
pub fn noise_power_dbm(bandwidth_hz: f64, noise_figure_db: f64) -> f64 {
    THERMAL_NOISE_DBM_PER_HZ + 10.0 * bandwidth_hz.log10() + noise_figure_db
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn db_roundtrip() {
        for db in [-120.0, -3.0, 0.0, 3.58, 28.0] {
            assert!((lin_to_db(db_to_lin(db)) - db).abs() < 1e-12);
        }
    }

    #[test]
    fn full_band_noise_floor() {
        // 15.36 MHz sampled band with a 9 dB noise figure.
        let n = noise_power_dbm(15.36e6, 9.0);
        assert!((n - (-93.135)).abs() < 5e-3, "got {n}");
    }

    #[test]
    fn ssb_band_noise_floor() {
        // 20 PRB * 12 subcarriers * 30 kHz = 7.2 MHz share of the band.
        let n = noise_power_dbm(7.2e6, 9.0);
        assert!((n - (-96.427)).abs() < 5e-3, "got {n}");
    }
}
