//! Cell layout and random terminal placement.
//!
//! One three-sector site sits at the origin; receivers drop uniformly over
//! the surrounding hexagonal cell. Each placement resolves into the geometry
//! a link needs downstream: distances, departure angles, serving sector, and
//! the angle offset from that sector's boresight.

use crate::pathloss;
use crate::{Error, Result};
use rand::Rng;

/// Number of sectors on the site.
pub const SECTOR_COUNT: usize = 3;

/// Static cell-level geometry parameters.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CellGeometry {
    /// Inter-site distance; the hexagon circumradius is `isd / sqrt(3)`.
    pub isd_m: f64,
    /// Transmit array height above ground.
    pub gnb_height_m: f64,
    /// Receiver height above ground (terminals and eavesdropper alike).
    pub rx_height_m: f64,
    /// Minimum allowed 2-D site-to-receiver distance.
    pub min_dist_2d_m: f64,
}

impl Default for CellGeometry {
    fn default() -> Self {
        Self {
            isd_m: 200.0,
            gnb_height_m: 10.0,
            rx_height_m: 1.5,
            min_dist_2d_m: 10.0,
        }
    }
}

impl CellGeometry {
    /// Circumradius of the hexagonal cell.
    pub fn cell_radius_m(&self) -> f64 {
        self.isd_m / 3f64.sqrt()
    }

    /// Draws one receiver position uniformly over the cell (respecting the
    /// minimum distance) and resolves its link geometry.
    pub fn sample_link<R: Rng + ?Sized>(&self, rng: &mut R) -> LinkGeometry {
        let (x, y) = self.sample_position(rng);
        self.link_from_xy(x, y, rng)
    }

    /// Uniform rejection sample inside the hexagon, outside the exclusion disc.
    pub fn sample_position<R: Rng + ?Sized>(&self, rng: &mut R) -> (f64, f64) {
        let r = self.cell_radius_m();
        loop {
            let x = rng.gen_range(-r..r);
            let y = rng.gen_range(-r..r);
            if in_hexagon(x, y, r) && x.hypot(y) >= self.min_dist_2d_m {
                return (x, y);
            }
        }
    }

    /// Resolves the link geometry for a given ground position, drawing its
    /// visibility state and shadow fading.
    pub fn link_from_xy<R: Rng + ?Sized>(&self, x: f64, y: f64, rng: &mut R) -> LinkGeometry {
        let d2 = x.hypot(y);
        let dh = self.rx_height_m - self.gnb_height_m;
        let d3 = (d2 * d2 + dh * dh).sqrt();
        let az = y.atan2(x);
        let el = dh.atan2(d2);
        let az_deg_wrapped = (az.to_degrees() + 360.0) % 360.0;
        let sector = ((az_deg_wrapped / 120.0) as usize).min(SECTOR_COUNT - 1);
        let p_los = pathloss::los_probability(d2).expect("distance from hypot is non-negative");
        let los = rng.gen::<f64>() < p_los;
        let sigma = pathloss::shadow_sigma_db(los);
        let shadowing_db = sigma * sample_standard_normal(rng);
        LinkGeometry {
            x_m: x,
            y_m: y,
            dist_2d_m: d2,
            dist_3d_m: d3,
            azimuth_rad: az,
            elevation_rad: el,
            sector,
            los,
            shadowing_db,
        }
    }

    /// Boresight azimuth of a sector, in radians.
    pub fn sector_boresight_rad(&self, sector: usize) -> Result<f64> {
        if sector >= SECTOR_COUNT {
            return Err(Error::Config(format!("sector {sector} out of range")));
        }
        Ok((120.0 * sector as f64 + 60.0).to_radians())
    }
}

/// Geometry and slow-fading state of one site-to-receiver link.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LinkGeometry {
    pub x_m: f64,
    pub y_m: f64,
    pub dist_2d_m: f64,
    pub dist_3d_m: f64,
    /// Global departure azimuth from the site, in (-pi, pi].
    pub azimuth_rad: f64,
    /// Departure elevation; negative when the receiver sits below the array.
    pub elevation_rad: f64,
    /// Serving sector index (the sector whose 120-degree wedge contains the link).
    pub sector: usize,
    pub los: bool,
    pub shadowing_db: f64,
}

impl LinkGeometry {
    /// Azimuth relative to the serving sector's boresight, wrapped to (-pi, pi].
    pub fn azimuth_from_boresight_rad(&self, cell: &CellGeometry) -> f64 {
        let bore = cell
            .sector_boresight_rad(self.sector)
            .expect("sector index produced by link_from_xy is valid");
        wrap_pi(self.azimuth_rad - bore)
    }
}

/// One placement of the legitimate receiver and the eavesdropper.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Drop {
    pub ue: LinkGeometry,
    pub eve: LinkGeometry,
}

impl Drop {
    /// Draws both receivers independently over the same cell.
    pub fn sample<R: Rng + ?Sized>(cell: &CellGeometry, rng: &mut R) -> Self {
        Self {
            ue: cell.sample_link(rng),
            eve: cell.sample_link(rng),
        }
    }
}

/// Point-in-regular-hexagon test (vertex on the +x axis, circumradius `r`).
fn in_hexagon(x: f64, y: f64, r: f64) -> bool {
    let apothem = r * 3f64.sqrt() / 2.0;
    for k in 0..3 {
        let theta = (30.0 + 120.0 * k as f64).to_radians();
        if (x * theta.cos() + y * theta.sin()).abs() > apothem {
            return false;
        }
    }
    true
}

/// Wraps an angle to (-pi, pi].
pub fn wrap_pi(a: f64) -> f64 {
    let mut w = a.rem_euclid(2.0 * std::f64::consts::PI);
    if w > std::f64::consts::PI {
        w -= 2.0 * std::f64::consts::PI;
    }
    w
}

/// Standard normal draw via Box-Muller (keeps a plain `Rng` interface).
fn sample_standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    use rand_distr::{Distribution, StandardNormal};
    <StandardNormal as Distribution<f64>>::sample(&StandardNormal, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{substream, StreamLabel};

    #[test]
    fn default_cell_radius() {
        let cell = CellGeometry::default();
        assert!((cell.cell_radius_m() - 115.470).abs() < 1e-3);
    }

    #[test]
    fn samples_stay_inside_cell_and_outside_exclusion() {
        let cell = CellGeometry::default();
        let mut rng = substream(5, StreamLabel::Aux, &[0]);
        for _ in 0..2000 {
            let link = cell.sample_link(&mut rng);
            assert!(link.dist_2d_m >= cell.min_dist_2d_m - 1e-12);
            assert!(in_hexagon(link.x_m, link.y_m, cell.cell_radius_m()));
            assert!(link.dist_2d_m <= cell.cell_radius_m() + 1e-9);
        }
    }

    #[test]
    fn sampling_is_area_uniform() {
        // Compare empirical mass in the inner disc of radius a (the apothem)
        // against its analytic share of the hexagon area.
        let cell = CellGeometry {
            min_dist_2d_m: 0.0,
            ..CellGeometry::default()
        };
        let r = cell.cell_radius_m();
        let apothem = r * 3f64.sqrt() / 2.0;
        let hex_area = 1.5 * 3f64.sqrt() * r * r;
        let expected = std::f64::consts::PI * apothem * apothem / hex_area;
        let mut rng = substream(6, StreamLabel::Aux, &[1]);
        let n = 40_000;
        let hits = (0..n)
            .filter(|_| {
                let (x, y) = cell.sample_position(&mut rng);
                x.hypot(y) <= apothem
            })
            .count();
        let frac = hits as f64 / n as f64;
        assert!(
            (frac - expected).abs() < 0.01,
            "disc mass {frac:.4} vs analytic {expected:.4}"
        );
    }

    #[test]
    fn sector_matches_azimuth_wedge() {
        let cell = CellGeometry::default();
        let mut rng = substream(7, StreamLabel::Aux, &[2]);
        let cases = [
            (50.0, 20.0, 0),   // azimuth ~22 deg
            (-50.0, 20.0, 1),  // ~158 deg
            (-50.0, -20.0, 1), // ~202 deg
            (-20.0, -50.0, 2), // ~248 deg
            (50.0, -20.0, 2),  // ~338 deg
        ];
        for (x, y, want) in cases {
            let link = cell.link_from_xy(x, y, &mut rng);
            assert_eq!(link.sector, want, "({x},{y})");
        }
    }

    #[test]
    fn boresight_offset_is_bounded_by_60_degrees() {
        let cell = CellGeometry::default();
        let mut rng = substream(8, StreamLabel::Aux, &[3]);
        for _ in 0..500 {
            let link = cell.sample_link(&mut rng);
            let off = link.azimuth_from_boresight_rad(&cell).to_degrees();
            assert!(off.abs() <= 60.0 + 1e-9, "offset {off}");
        }
    }

    #[test]
    fn elevation_is_negative_for_ground_receivers() {
        let cell = CellGeometry::default();
        let mut rng = substream(9, StreamLabel::Aux, &[4]);
        let link = cell.link_from_xy(100.0, 0.0, &mut rng);
        assert!(link.elevation_rad < 0.0);
        let expected = (-8.5f64).atan2(100.0);
        assert!((link.elevation_rad - expected).abs() < 1e-12);
    }

    #[test]
    fn los_fraction_tracks_distance_profile() {
        let cell = CellGeometry::default();
        let mut rng = substream(10, StreamLabel::Aux, &[5]);
        let mut near_los = 0usize;
        let mut near_total = 0usize;
        let mut far_los = 0usize;
        let mut far_total = 0usize;
        for _ in 0..20_000 {
            let link = cell.sample_link(&mut rng);
            if link.dist_2d_m < 30.0 {
                near_total += 1;
                near_los += link.los as usize;
            } else if link.dist_2d_m > 90.0 {
                far_total += 1;
                far_los += link.los as usize;
            }
        }
        let near = near_los as f64 / near_total as f64;
        let far = far_los as f64 / far_total as f64;
        assert!(near > 0.75, "near LOS fraction {near}");
        assert!(far < 0.45, "far LOS fraction {far}");
    }

    #[test]
    fn invalid_sector_is_rejected() {
        let cell = CellGeometry::default();
        assert!(cell.sector_boresight_rad(3).is_err());
    }
}
