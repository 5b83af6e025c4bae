//! Urban-micro large-scale propagation: visibility probability, pathloss,
//! and shadow-fading spreads.
//!
//! The formulas are the standard street-canyon set. At the default cell
//! radius (≈115 m) every link sits below the LOS breakpoint distance, so the
//! single pre-breakpoint LOS slope applies throughout.

use crate::{Error, Result};

/// Receiver height the NLOS height-correction term is referenced to.
pub const REFERENCE_RX_HEIGHT_M: f64 = 1.5;

/// Shadow-fading standard deviation in dB for a visibility state.
pub fn shadow_sigma_db(los: bool) -> f64 {
    if los {
        4.0
    } else {
        7.82
    }
}

/// Probability that a link at 2-D distance `d2d_m` is line-of-sight.
pub fn los_probability(d2d_m: f64) -> Result<f64> {
    if !(d2d_m >= 0.0) {
        return Err(Error::InvalidDistance(d2d_m));
    }
    if d2d_m <= 18.0 {
        return Ok(1.0);
    }
    let near = 18.0 / d2d_m;
    Ok(near + (-d2d_m / 36.0).exp() * (1.0 - near))
}

/// Street-canyon pathloss in dB at 3-D distance `d3d_m` and carrier
/// `fc_ghz`, for the given visibility state.
///
/// Expects `d3d_m >= 1`; the NLOS branch takes the max of the LOS and NLOS
/// slopes so it never undercuts free-space-like LOS loss.
pub fn pathloss_umi(d3d_m: f64, fc_ghz: f64, los: bool) -> f64 {
    let pl_los = 32.4 + 21.0 * d3d_m.log10() + 20.0 * fc_ghz.log10();
    if los {
        return pl_los;
    }
    let pl_nlos = 35.3 * d3d_m.log10() + 22.4 + 21.3 * fc_ghz.log10()
        - 0.3 * (REFERENCE_RX_HEIGHT_M - 1.5);
    pl_los.max(pl_nlos)
}

/// Large-scale amplitude gain (linear) for a link: pathloss plus shadowing.
pub fn large_scale_gain_db(d3d_m: f64, fc_ghz: f64, los: bool, shadowing_db: f64) -> f64 {
    -(pathloss_umi(d3d_m, fc_ghz, los) + shadowing_db)
}
