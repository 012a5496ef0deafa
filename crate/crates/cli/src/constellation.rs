//! Constellation export and the geometric checks behind it.

use std::f64::consts::PI;

use nalgebra::Vector3;
use serde_json::json;
use tqc_core::states::{bipyramidal_state, majorana_constellation, pyramidal_partner, pyramidal_state, Constellation, SpinState};
use tqc_core::Spin;

use crate::error::{CliError, CliResult};
use crate::report::Check;

/// Geometric regularity tolerance.
pub const TOL_GEOMETRY: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateSpec {
    Pyramid(Spin),
    PyramidPartner(Spin),
    Bipyramid { spin: Spin, m: i64 },
}

impl StateSpec {
    /// `pyr:<s>`, `pyr_partner:<s>` or `bpy:<s>:<m>`; `s` may be `5/2` or `2.5`.
    pub fn parse(text: &str) -> CliResult<Self> {
        let bad = || CliError::Config(format!("invalid state spec `{text}` (expected pyr:S, pyr_partner:S or bpy:S:M)"));
        let parts: Vec<&str> = text.split(':').collect();
        let spin = |s: &str| Spin::parse(s).ok_or_else(bad);
        match parts.as_slice() {
            ["pyr", s] => Ok(Self::Pyramid(spin(s)?)),
            ["pyr_partner", s] => Ok(Self::PyramidPartner(spin(s)?)),
            ["bpy", s, m] => Ok(Self::Bipyramid { spin: spin(s)?, m: m.parse().map_err(|_| bad())? }),
            _ => Err(bad()),
        }
    }

    pub fn state(&self) -> CliResult<SpinState> {
        Ok(match *self {
            Self::Pyramid(spin) => pyramidal_state(spin)?,
            Self::PyramidPartner(spin) => pyramidal_partner(spin)?,
            Self::Bipyramid { spin, m } => bipyramidal_state(spin, m)?,
        })
    }
}

fn azimuth(p: &Vector3<f64>) -> f64 {
    p.y.atan2(p.x)
}

/// Largest deviation of `points` from a regular polygon at one latitude:
/// spread in `z` plus the error of each consecutive azimuthal gap.
pub fn polygon_defect(points: &[Vector3<f64>]) -> f64 {
    let n = points.len();
    if n == 0 {
        return f64::INFINITY;
    }
    let z_mean = points.iter().map(|p| p.z).sum::<f64>() / n as f64;
    let z_spread = points.iter().map(|p| (p.z - z_mean).abs()).fold(0.0, f64::max);
    if n == 1 {
        return z_spread;
    }
    let mut phis: Vec<f64> = points.iter().map(azimuth).collect();
    phis.sort_by(f64::total_cmp);
    let spacing = 2.0 * PI / n as f64;
    let gap_error = (0..n)
        .map(|i| {
            let gap = if i + 1 < n { phis[i + 1] - phis[i] } else { phis[0] + 2.0 * PI - phis[n - 1] };
            (gap - spacing).abs()
        })
        .fold(0.0, f64::max);
    z_spread.max(gap_error)
}

/// Stars within `tol` of the pole `sign·ẑ`.
fn pole_multiplicity(c: &Constellation, sign: f64) -> u32 {
    c.multiplicity_at(&Vector3::new(0.0, 0.0, sign), TOL_GEOMETRY)
}

fn off_pole_points(c: &Constellation) -> Vec<Vector3<f64>> {
    c.points().into_iter().filter(|p| 1.0 - p.z.abs() > TOL_GEOMETRY).collect()
}

/// Geometry of `|ψ⋄^{(s,m)}⟩`: `s−m` stars on each pole and a regular
/// `2m`-gon on the equator.
pub fn bipyramid_checks(c: &Constellation, s: u32, m: u32) -> Vec<Check> {
    let north = pole_multiplicity(c, 1.0);
    let south = pole_multiplicity(c, -1.0);
    let ring = off_pole_points(c);
    let mut checks = vec![
        count_check("north pole multiplicity", s - m, north),
        count_check("south pole multiplicity", s - m, south),
        count_check("equatorial stars", 2 * m, ring.len() as u32),
    ];
    if m > 0 && ring.len() == 2 * m as usize {
        let latitude = ring.iter().map(|p| p.z.abs()).fold(0.0, f64::max);
        checks.push(Check::below("equatorial latitude", latitude, TOL_GEOMETRY));
        checks.push(
            Check::below("regular 2m-gon (spacing pi/m)", polygon_defect(&ring), TOL_GEOMETRY)
                .with_details(json!({ "spacing": PI / f64::from(m) })),
        );
    }
    checks
}

/// Geometry of a pyramid with `n = 2s − 1` base stars: one polar star and a
/// regular `n`-gon at constant latitude.
pub fn pyramid_checks(c: &Constellation, twice_s: u32) -> Vec<Check> {
    let base = twice_s - 1;
    let poles = pole_multiplicity(c, 1.0) + pole_multiplicity(c, -1.0);
    let ring = off_pole_points(c);
    let mut checks = vec![count_check("polar stars", 1, poles), count_check("base stars", base, ring.len() as u32)];
    if ring.len() == base as usize {
        checks.push(
            Check::below("regular base polygon at constant latitude", polygon_defect(&ring), TOL_GEOMETRY)
                .with_details(json!({ "sides": base, "latitude_z": ring[0].z })),
        );
    }
    checks
}

fn count_check(name: &str, expected: u32, achieved: u32) -> Check {
    Check {
        name: name.to_string(),
        expected: json!(expected),
        achieved: json!(achieved),
        distance: f64::from(expected.abs_diff(achieved)),
        tolerance: 0.5,
        pass: expected == achieved,
        expected_fail: false,
        details: None,
    }
}

pub fn constellation_of(spec: &StateSpec) -> CliResult<(Constellation, Vec<Check>)> {
    let c = majorana_constellation(&spec.state()?);
    let checks = match *spec {
        StateSpec::Bipyramid { spin, m } => bipyramid_checks(&c, spin.twice_s() / 2, m as u32),
        StateSpec::Pyramid(spin) | StateSpec::PyramidPartner(spin) => pyramid_checks(&c, spin.twice_s()),
    };
    Ok((c, checks))
}
