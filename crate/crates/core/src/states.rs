//! Anticoherent state families and their Majorana constellations.
//!
//! Polynomial convention: the coefficient of `z^{s+m}` is
//! `(−1)^{s−m} √C(2s, s+m) c_m`. A root `z` maps to the unit sphere by
//! inverse stereographic projection from the south pole, so `z = 0` is the
//! north pole and every missing top degree is a star at the south pole.

use nalgebra::{Rotation3, Vector3};

use crate::error::{Result, TqcError};
use crate::linalg::{re, CMatrix, CVector, C64};
use crate::spin::{require_spin_at_least, z_rotation, Spin};

/// Roots closer than this on the unit sphere are merged into one star.
pub const MERGE_TOLERANCE: f64 = 1e-7;

/// Polynomial coefficients below this fraction of the largest one are zero.
const COEFF_ZERO: f64 = 1e-13;

const ROOT_MAX_ITER: usize = 500;

/// A normalized state of a fixed spin, in descending-m order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinState {
    spin: Spin,
    coeffs: CVector,
}

impl SpinState {
    /// Normalizes `coeffs`; fails on a wrong length or a zero vector.
    pub fn new(spin: Spin, coeffs: CVector) -> Result<Self> {
        if coeffs.len() != spin.dim() {
            return Err(TqcError::InvalidState(format!(
                "expected {} coefficients for spin {spin}, got {}",
                spin.dim(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(TqcError::NonFinite("state coefficients"));
        }
        let norm = coeffs.norm();
        if norm < 1e-300 {
            return Err(TqcError::InvalidState("zero vector".into()));
        }
        Ok(Self { spin, coeffs: coeffs / re(norm) })
    }

    /// `|s, m⟩` given `2m`.
    pub fn basis(spin: Spin, twice_m: i32) -> Result<Self> {
        let v = spin
            .basis_vector(twice_m)
            .ok_or_else(|| TqcError::InvalidState(format!("2m = {twice_m} not allowed for spin {spin}")))?;
        Ok(Self { spin, coeffs: v })
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn coeffs(&self) -> &CVector {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> CVector {
        self.coeffs
    }

    /// Coefficient of `|s, m⟩` given `2m` (zero when out of range).
    pub fn coeff_twice_m(&self, twice_m: i32) -> C64 {
        self.spin
            .index_of_twice_m(twice_m)
            .map_or(C64::new(0.0, 0.0), |i| self.coeffs[i])
    }

    pub fn inner(&self, other: &SpinState) -> C64 {
        self.coeffs.dotc(&other.coeffs)
    }

    /// `⟨ψ|O|ψ⟩`.
    pub fn expectation(&self, op: &CMatrix) -> C64 {
        self.coeffs.dotc(&(op * &self.coeffs))
    }

    /// Applies a unitary; the result is renormalized against drift.
    pub fn transformed(&self, u: &CMatrix) -> SpinState {
        let v = u * &self.coeffs;
        let n = v.norm();
        SpinState { spin: self.spin, coeffs: v / re(n) }
    }
}

/// `|ψ△^{(s)}⟩`: weight `√((s−1)/(2s−1))` on `|s,s⟩` and `√(s/(2s−1))` on `|s,−s+1⟩`.
pub fn pyramidal_state(spin: Spin) -> Result<SpinState> {
    require_spin_at_least(spin, 4, "pyramidal states need s >= 2")?;
    let s = spin.value();
    let ts = spin.twice_s() as i32;
    let mut v = CVector::zeros(spin.dim());
    v[0] = re(((s - 1.0) / (2.0 * s - 1.0)).sqrt());
    v[spin.index_of_twice_m(-ts + 2).expect("s >= 2")] = re((s / (2.0 * s - 1.0)).sqrt());
    SpinState::new(spin, v)
}

/// `|ψ▽^{(s)}⟩`, the state with antipodal constellation.
///
/// Integer spin uses the closed form `√((s−1)/(2s−1)) |s,−s⟩ − √(s/(2s−1)) |s,s−1⟩`.
/// Half-integer spin rebuilds the state from the reflected constellation and
/// then rotates it about z by `π/(2s−1)`.
pub fn pyramidal_partner(spin: Spin) -> Result<SpinState> {
    require_spin_at_least(spin, 4, "pyramidal states need s >= 2")?;
    if spin.is_integer() {
        let s = spin.value();
        let ts = spin.twice_s() as i32;
        let mut v = CVector::zeros(spin.dim());
        v[spin.dim() - 1] = re(((s - 1.0) / (2.0 * s - 1.0)).sqrt());
        v[spin.index_of_twice_m(ts - 2).expect("s >= 2")] = re(-(s / (2.0 * s - 1.0)).sqrt());
        return SpinState::new(spin, v);
    }
    let apex = pyramidal_state(spin)?;
    let reflected = state_from_constellation(spin, &majorana_constellation(&apex).antipodal())?;
    let twist = std::f64::consts::PI / (2.0 * spin.value() - 1.0);
    Ok(reflected.transformed(&z_rotation(spin, twist)))
}

/// `|ψ⋄^{(s,m)}⟩ = (|s,m⟩ + |s,−m⟩)/√2`, or `|s,0⟩` when `m = 0`.
pub fn bipyramidal_state(spin: Spin, m: i64) -> Result<SpinState> {
    if !spin.is_integer() {
        return Err(TqcError::InvalidSpin { twice_s: spin.twice_s(), reason: "bipyramids need integer s" });
    }
    let s = i64::from(spin.twice_s() / 2);
    if m < 0 || m > s {
        return Err(TqcError::InvalidState(format!("bipyramid needs 0 <= m <= s, got m = {m}, s = {s}")));
    }
    let mut v = CVector::zeros(spin.dim());
    let m = m as i32;
    v[spin.index_of_m(m).unwrap()] += re(1.0);
    v[spin.index_of_m(-m).unwrap()] += re(1.0);
    SpinState::new(spin, v)
}

fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Majorana polynomial coefficients, index = degree, length `2s + 1`.
/// Zero leading coefficients are kept so the root deficiency is countable.
pub fn majorana_polynomial(psi: &SpinState) -> Vec<C64> {
    let spin = psi.spin();
    let ts = spin.twice_s();
    let mut poly = vec![C64::new(0.0, 0.0); spin.dim()];
    for (i, &c) in psi.coeffs().iter().enumerate() {
        // s − m = i and s + m = 2s − i
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        poly[ts as usize - i] = c * re(sign * binomial(ts, i as u32).sqrt());
    }
    poly
}

/// One point of a constellation with its multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct Star {
    pub direction: Vector3<f64>,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    pub stars: Vec<Star>,
}

impl Constellation {
    /// Merges coincident points (within [`MERGE_TOLERANCE`]) into stars.
    pub fn from_points(points: impl IntoIterator<Item = (Vector3<f64>, u32)>) -> Self {
        let mut stars: Vec<(Vector3<f64>, u32)> = Vec::new();
        for (p, mult) in points {
            if mult == 0 {
                continue;
            }
            match stars.iter_mut().find(|(q, _)| (q - p).norm() < MERGE_TOLERANCE) {
                Some((q, k)) => {
                    let total = f64::from(*k + mult);
                    *q = (*q * f64::from(*k) + p * f64::from(mult)) / total;
                    *k += mult;
                }
                None => stars.push((p, mult)),
            }
        }
        let stars = stars
            .into_iter()
            .map(|(d, multiplicity)| Star { direction: d.normalize(), multiplicity })
            .collect();
        Self { stars }
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.stars.iter().map(|s| s.multiplicity).sum()
    }

    /// Every star repeated by its multiplicity.
    pub fn points(&self) -> Vec<Vector3<f64>> {
        self.stars
            .iter()
            .flat_map(|s| std::iter::repeat(s.direction).take(s.multiplicity as usize))
            .collect()
    }

    pub fn rotated(&self, r: &Rotation3<f64>) -> Self {
        Self {
            stars: self
                .stars
                .iter()
                .map(|s| Star { direction: r * s.direction, multiplicity: s.multiplicity })
                .collect(),
        }
    }

    /// Point reflection through the origin.
    pub fn antipodal(&self) -> Self {
        Self {
            stars: self
                .stars
                .iter()
                .map(|s| Star { direction: -s.direction, multiplicity: s.multiplicity })
                .collect(),
        }
    }

    /// Multiplicity of the star at `direction`, zero when absent.
    pub fn multiplicity_at(&self, direction: &Vector3<f64>, tol: f64) -> u32 {
        self.stars
            .iter()
            .filter(|s| (s.direction - direction).norm() < tol)
            .map(|s| s.multiplicity)
            .sum()
    }

    /// Bottleneck distance between the expanded point multisets: the
    /// smallest `r` admitting a one-to-one matching of points with every
    /// pair closer than `r`. Infinite when the totals differ.
    pub fn distance(&self, other: &Constellation) -> f64 {
        let a = self.points();
        let b = other.points();
        if a.len() != b.len() {
            return f64::INFINITY;
        }
        let mut thresholds: Vec<f64> = a
            .iter()
            .flat_map(|p| b.iter().map(move |q| (p - q).norm()))
            .collect();
        thresholds.sort_by(f64::total_cmp);
        thresholds.dedup();
        let (mut lo, mut hi) = (0, thresholds.len() - 1);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if perfect_matching(&a, &b, thresholds[mid]) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        thresholds[lo]
    }

    /// `x,y,z,multiplicity` rows with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,z,multiplicity\n");
        for s in &self.stars {
            let d = s.direction;
            out.push_str(&format!("{:.16e},{:.16e},{:.16e},{}\n", d.x, d.y, d.z, s.multiplicity));
        }
        out
    }
}

fn perfect_matching(a: &[Vector3<f64>], b: &[Vector3<f64>], radius: f64) -> bool {
    fn augment(
        i: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none() || augment(owner[j].unwrap(), adj, seen, owner) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    let adj: Vec<Vec<usize>> = a
        .iter()
        .map(|p| (0..b.len()).filter(|&j| (p - b[j]).norm() <= radius).collect())
        .collect();
    let mut owner = vec![None; b.len()];
    (0..a.len()).all(|i| augment(i, &adj, &mut vec![false; b.len()], &mut owner))
}

/// Inverse stereographic projection from the south pole.
fn root_to_sphere(z: C64) -> Vector3<f64> {
    let r2 = z.norm_sqr();
    Vector3::new(2.0 * z.re, 2.0 * z.im, 1.0 - r2) / (1.0 + r2)
}

fn sphere_to_root(d: &Vector3<f64>) -> C64 {
    C64::new(d.x, d.y) / re(1.0 + d.z)
}

/// Roots of `Σ poly[k] z^k` with a nonzero leading and constant term,
/// by Aberth–Ehrlich simultaneous iteration.
fn polynomial_roots(poly: &[C64]) -> Vec<C64> {
    let degree = poly.len() - 1;
    match degree {
        0 => return Vec::new(),
        1 => return vec![-poly[0] / poly[1]],
        _ => {}
    }
    let eval = |z: C64| -> (C64, C64) {
        let mut p = C64::new(0.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        for &a in poly.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    // Start on a circle at the geometric mean of the root moduli, offset
    // from any symmetric root pattern.
    let radius = (poly[0].norm() / poly[degree].norm()).powf(1.0 / degree as f64);
    let mut roots: Vec<C64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / degree as f64 + 0.4;
            C64::from_polar(radius, angle)
        })
        .collect();
    let mut converged = vec![false; degree];
    for _ in 0..ROOT_MAX_ITER {
        for k in 0..degree {
            if converged[k] {
                continue;
            }
            let z = roots[k];
            let (p, dp) = eval(z);
            if p.norm() == 0.0 {
                converged[k] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: C64 = (0..degree)
                .filter(|&j| j != k)
                .map(|j| re(1.0) / (z - roots[j]))
                .sum();
            let step = ratio / (re(1.0) - ratio * repulsion);
            roots[k] = z - step;
            if step.norm() <= 4.0 * f64::EPSILON * roots[k].norm().max(f64::MIN_POSITIVE) {
                converged[k] = true;
            }
        }
        if converged.iter().all(|&c| c) {
            break;
        }
    }
    roots
}

/// The `2s` Majorana stars of `psi`.
pub fn majorana_constellation(psi: &SpinState) -> Constellation {
    let poly = majorana_polynomial(psi);
    let two_s = poly.len() - 1;
    let scale = poly.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let nonzero = |z: &C64| z.norm() > COEFF_ZERO * scale;
    let low = poly.iter().position(nonzero).expect("normalized state");
    let high = poly.iter().rposition(nonzero).expect("normalized state");

    let north = Vector3::z();
    let mut points = vec![(north, low as u32), (-north, (two_s - high) as u32)];
    points.extend(
        polynomial_roots(&poly[low..=high])
            .into_iter()
            .map(|z| (root_to_sphere(z), 1)),
    );
    Constellation::from_points(points)
}

/// Rebuilds a state (up to global phase) from its stars. The phase is
/// fixed so the lowest-m nonzero coefficient is real and positive.
pub fn state_from_constellation(spin: Spin, constellation: &Constellation) -> Result<SpinState> {
    if constellation.total_multiplicity() != spin.twice_s() {
        return Err(TqcError::InvalidState(format!(
            "constellation has {} stars, spin {spin} needs {}",
            constellation.total_multiplicity(),
            spin.twice_s()
        )));
    }
    // Monic product of (z − root) over every non-south star.
    let mut poly = vec![re(1.0)];
    for star in &constellation.stars {
        if star.direction.z < -1.0 + 1e-12 {
            continue;
        }
        let root = sphere_to_root(&star.direction);
        for _ in 0..star.multiplicity {
            let mut next = vec![C64::new(0.0, 0.0); poly.len() + 1];
            for (k, &a) in poly.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * root;
            }
            poly = next;
        }
    }
    let ts = spin.twice_s();
    let mut coeffs = CVector::zeros(spin.dim());
    for (degree, &a) in poly.iter().enumerate() {
        let i = ts as usize - degree;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        coeffs[i] = a / re(sign * binomial(ts, i as u32).sqrt());
    }
    let scale = coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(anchor) = coeffs.iter().rposition(|z| z.norm() > 1e-12 * scale) {
        let phase = coeffs[anchor].conj() / re(coeffs[anchor].norm());
        coeffs *= phase;
    }
    SpinState::new(spin, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::{SpinOperators, RotationVector};
    use std::f64::consts::PI;

    fn s(n: u32) -> Spin {
        Spin::integer(n)
    }

    fn assert_anticoherent(psi: &SpinState) {
        let ops = SpinOperators::new(psi.spin());
        for op in ops.components() {
            assert!(psi.expectation(op).norm() < 1e-12);
        }
    }

    #[test]
    fn pyramidal_spin_three() {
        let p = pyramidal_state(s(3)).unwrap();
        assert!((p.coeff_twice_m(6) - re((2.0f64 / 5.0).sqrt())).norm() < 1e-15);
        assert!((p.coeff_twice_m(-4) - re((3.0f64 / 5.0).sqrt())).norm() < 1e-15);
        let support = p.coeffs().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(support, 2);
    }

    #[test]
    fn pyramidal_spin_two() {
        let p = pyramidal_state(s(2)).unwrap();
        assert!((p.coeff_twice_m(4) - re((1.0f64 / 3.0).sqrt())).norm() < 1e-15);
        assert!((p.coeff_twice_m(-2) - re((2.0f64 / 3.0).sqrt())).norm() < 1e-15);
    }

    #[test]
    fn pyramidal_rejects_small_spin() {
        assert!(pyramidal_state(Spin::from_twice(3)).is_err());
        assert!(pyramidal_partner(s(1)).is_err());
    }

    #[test]
    fn pyramidal_states_are_normalized_and_anticoherent() {
        for twice in 4..=30 {
            let spin = Spin::from_twice(twice);
            let p = pyramidal_state(spin).unwrap();
            assert!((p.coeffs().norm() - 1.0).abs() < 1e-12);
            assert_anticoherent(&p);
            let q = pyramidal_partner(spin).unwrap();
            assert!((q.coeffs().norm() - 1.0).abs() < 1e-12);
            assert_anticoherent(&q);
        }
    }

    #[test]
    fn partner_spin_three() {
        let q = pyramidal_partner(s(3)).unwrap();
        assert!((q.coeff_twice_m(-6) - re((2.0f64 / 5.0).sqrt())).norm() < 1e-15);
        assert!((q.coeff_twice_m(4) + re((3.0f64 / 5.0).sqrt())).norm() < 1e-15);
    }

    #[test]
    fn integer_partner_is_orthogonal() {
        for n in 2..=15 {
            let p = pyramidal_state(s(n)).unwrap();
            let q = pyramidal_partner(s(n)).unwrap();
            assert_eq!(p.inner(&q), C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn partner_constellation_is_antipodal() {
        for n in [2, 3, 4, 7] {
            let p = majorana_constellation(&pyramidal_state(s(n)).unwrap());
            let q = majorana_constellation(&pyramidal_partner(s(n)).unwrap());
            assert!(p.antipodal().distance(&q) < 1e-8, "s = {n}");
        }
    }

    #[test]
    fn integer_partner_matches_constellation_route() {
        // The closed form and the reflected-constellation reconstruction agree.
        for n in [2, 3, 5, 8] {
            let apex = pyramidal_state(s(n)).unwrap();
            let rebuilt = state_from_constellation(s(n), &majorana_constellation(&apex).antipodal()).unwrap();
            let closed = pyramidal_partner(s(n)).unwrap();
            assert!((rebuilt.coeffs() - closed.coeffs()).norm() < 1e-10, "s = {n}");
        }
    }

    #[test]
    fn half_integer_partner_geometry() {
        let spin = Spin::from_twice(5);
        let p = majorana_constellation(&pyramidal_state(spin).unwrap());
        let q = majorana_constellation(&pyramidal_partner(spin).unwrap());
        let twist = Rotation3::from_axis_angle(&Vector3::z_axis(), PI / 4.0);
        assert!(p.antipodal().rotated(&twist).distance(&q) < 1e-8);
    }

    #[test]
    fn bipyramid_coefficients() {
        let b0 = bipyramidal_state(s(15), 0).unwrap();
        assert_eq!(b0.coeff_twice_m(0), re(1.0));
        assert!((b0.coeffs().norm() - 1.0).abs() < 1e-15);
        let b14 = bipyramidal_state(s(15), 14).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((b14.coeff_twice_m(28) - re(h)).norm() < 1e-15);
        assert!((b14.coeff_twice_m(-28) - re(h)).norm() < 1e-15);
        for m in 0..=15 {
            let b = bipyramidal_state(s(15), m).unwrap();
            assert!((b.coeffs().norm() - 1.0).abs() < 1e-12);
            assert_anticoherent(&b);
        }
    }

    #[test]
    fn bipyramid_errors() {
        assert!(bipyramidal_state(s(3), 4).is_err());
        assert!(bipyramidal_state(s(3), -1).is_err());
        assert!(bipyramidal_state(Spin::from_twice(5), 1).is_err());
    }

    #[test]
    fn polynomial_supports() {
        let top = SpinState::basis(s(3), 6).unwrap();
        let poly = majorana_polynomial(&top);
        assert_eq!(poly.len(), 7);
        assert_eq!(poly[6], re(1.0));
        assert!(poly[..6].iter().all(|z| z.norm() == 0.0));

        let degrees = |psi: &SpinState| -> Vec<usize> {
            majorana_polynomial(psi)
                .iter()
                .enumerate()
                .filter(|(_, z)| z.norm() > 0.0)
                .map(|(k, _)| k)
                .collect()
        };
        assert_eq!(degrees(&bipyramidal_state(s(3), 2).unwrap()), vec![1, 5]);
        assert_eq!(degrees(&pyramidal_state(s(3)).unwrap()), vec![1, 6]);
    }

    #[test]
    fn highest_weight_constellation_is_the_north_pole() {
        let c = majorana_constellation(&SpinState::basis(s(4), 8).unwrap());
        assert_eq!(c.stars.len(), 1);
        assert_eq!(c.stars[0].multiplicity, 8);
        assert!((c.stars[0].direction - Vector3::z()).norm() < 1e-15);
    }

    #[test]
    fn coherent_state_stars_follow_the_rotation() {
        let v = RotationVector::new(0.3, 1.1, -0.4);
        let want = v.rotation_matrix() * Vector3::z();
        for twice in [1, 2] {
            let spin = Spin::from_twice(twice);
            let top = SpinState::basis(spin, twice as i32).unwrap();
            let rotated = top.transformed(&SpinOperators::new(spin).rotation(&v));
            let c = majorana_constellation(&rotated);
            assert_eq!(c.total_multiplicity(), twice);
            // a double root is resolved to about sqrt(eps)
            for p in c.points() {
                assert!((p - want).norm() < 1e-6, "{p:?} vs {want:?}");
            }
        }
    }

    #[test]
    fn bipyramid_three_two_geometry() {
        let c = majorana_constellation(&bipyramidal_state(s(3), 2).unwrap());
        assert_eq!(c.total_multiplicity(), 6);
        assert_eq!(c.multiplicity_at(&Vector3::z(), 1e-10), 1);
        assert_eq!(c.multiplicity_at(&-Vector3::z(), 1e-10), 1);
        let equator: Vec<_> = c.stars.iter().filter(|s| s.direction.z.abs() < 1e-10).collect();
        assert_eq!(equator.len(), 4);
    }

    #[test]
    fn pyramid_three_geometry() {
        let c = majorana_constellation(&pyramidal_state(s(3)).unwrap());
        assert_eq!(c.multiplicity_at(&Vector3::z(), 1e-10), 1);
        let ring: Vec<_> = c.stars.iter().filter(|s| s.direction.z < 0.99).collect();
        assert_eq!(ring.len(), 5);
        let z0 = ring[0].direction.z;
        assert!(ring.iter().all(|s| (s.direction.z - z0).abs() < 1e-10));
    }

    #[test]
    fn reconstruction_round_trip() {
        let spin = Spin::from_twice(7);
        let v = CVector::from_iterator(8, (0..8).map(|k| C64::new((k as f64).sin(), (k as f64 * 0.7).cos())));
        let psi = SpinState::new(spin, v).unwrap();
        let back = state_from_constellation(spin, &majorana_constellation(&psi)).unwrap();
        assert!((back.inner(&psi).norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn csv_export_has_seventeen_digits() {
        let c = majorana_constellation(&bipyramidal_state(s(3), 0).unwrap());
        let csv = c.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("x,y,z,multiplicity"));
        let row = lines.next().unwrap();
        let first = row.split(',').next().unwrap();
        let mantissa = first.trim_start_matches('-').split('e').next().unwrap();
        assert_eq!(mantissa.chars().filter(|ch| ch.is_ascii_digit()).count(), 17);
    }
}
