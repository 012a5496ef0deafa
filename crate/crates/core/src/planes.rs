//! k-planes of a spin-s Hilbert space, anticoherence and symmetry checks,
//! and the named planes built from pyramidal and bipyramidal states.

use crate::error::{Result, TqcError};
use crate::linalg::{identity, max_abs, max_abs_diff, re, CMatrix, CVector};
use crate::spin::{RotationVector, Spin, SpinOperators};
use crate::states::{bipyramidal_state, pyramidal_partner, pyramidal_state, SpinState};

/// Frames closer than this to orthonormal are kept verbatim.
const ORTHONORMAL_TOL: f64 = 1e-10;

/// A state within this distance of the span of its predecessors is rejected.
const RANK_TOL: f64 = 1e-8;

/// An ordered orthonormal frame spanning a point of Gr(k, N).
#[derive(Debug, Clone)]
pub struct KPlane {
    spin: Spin,
    frame: CMatrix,
    projector: CMatrix,
}

impl KPlane {
    /// Wraps an `N×k` matrix whose columns are already orthonormal.
    pub fn from_orthonormal_frame(spin: Spin, frame: CMatrix) -> Result<Self> {
        if frame.nrows() != spin.dim() || frame.ncols() == 0 {
            return Err(TqcError::DimensionMismatch {
                left: (spin.dim(), frame.ncols()),
                right: frame.shape(),
            });
        }
        let defect = max_abs_diff(&(frame.adjoint() * &frame), &identity(frame.ncols()));
        if defect > ORTHONORMAL_TOL {
            return Err(TqcError::InvalidState(format!("frame is not orthonormal (defect {defect:.3e})")));
        }
        let projector = &frame * frame.adjoint();
        Ok(Self { spin, frame, projector })
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn k(&self) -> usize {
        self.frame.ncols()
    }

    /// Frame vectors as the columns of an `N×k` matrix.
    pub fn frame(&self) -> &CMatrix {
        &self.frame
    }

    pub fn projector(&self) -> &CMatrix {
        &self.projector
    }

    pub fn states(&self) -> Vec<SpinState> {
        self.frame
            .column_iter()
            .map(|c| SpinState::new(self.spin, c.into_owned()).expect("frame columns are unit vectors"))
            .collect()
    }

    /// The plane `U(Π)` with frame `U ψᵢ`.
    pub fn transformed(&self, u: &CMatrix) -> Result<KPlane> {
        KPlane::from_orthonormal_frame(self.spin, u * &self.frame)
    }

    /// Same plane, frame re-mixed by the `k×k` unitary `mix` (`ψ'ⱼ = Σᵢ ψᵢ mixᵢⱼ`).
    pub fn remixed(&self, mix: &CMatrix) -> Result<KPlane> {
        KPlane::from_orthonormal_frame(self.spin, &self.frame * mix)
    }
}

/// Builds a plane from states; orthonormal input keeps its frame verbatim,
/// anything else is Gram–Schmidt orthonormalized in list order.
pub fn plane_from_states(states: &[SpinState]) -> Result<KPlane> {
    let first = states.first().ok_or(TqcError::EmptyFrame)?;
    let spin = first.spin();
    if states.iter().any(|s| s.spin() != spin) {
        return Err(TqcError::MixedSpins);
    }
    let columns: Vec<CVector> = states.iter().map(|s| s.coeffs().clone()).collect();
    let raw = CMatrix::from_columns(&columns);
    let gram_defect = max_abs_diff(&(raw.adjoint() * &raw), &identity(raw.ncols()));
    if gram_defect <= ORTHONORMAL_TOL {
        return KPlane::from_orthonormal_frame(spin, raw);
    }
    // modified Gram–Schmidt
    let mut basis: Vec<CVector> = Vec::with_capacity(columns.len());
    for (index, col) in columns.into_iter().enumerate() {
        let mut v = col;
        for b in &basis {
            let overlap = b.dotc(&v);
            v -= b * overlap;
        }
        let residual = v.norm();
        if residual < RANK_TOL {
            return Err(TqcError::RankDeficient { index, residual });
        }
        basis.push(v / re(residual));
    }
    KPlane::from_orthonormal_frame(spin, CMatrix::from_columns(&basis))
}

/// `max_{A,i,j} |⟨ψᵢ|S_A|ψⱼ⟩|`, over all ordered frame pairs.
pub fn anticoherence_residual(p: &KPlane) -> f64 {
    anticoherence_residual_with(p, &SpinOperators::new(p.spin()))
}

pub fn anticoherence_residual_with(p: &KPlane, ops: &SpinOperators) -> f64 {
    let f = p.frame();
    ops.components()
        .iter()
        .map(|op| max_abs(&(f.adjoint() * *op * f)))
        .fold(0.0, f64::max)
}

/// `‖D P D† − P‖_max` and whether it is below `tol`.
pub fn is_symmetric_under(p: &KPlane, v: &RotationVector, tol: f64) -> (bool, f64) {
    let d = SpinOperators::new(p.spin()).rotation(v);
    let residual = max_abs_diff(&(&d * p.projector() * d.adjoint()), p.projector());
    (residual < tol, residual)
}

/// `‖P_a − P_b‖_max`; zero exactly when the planes coincide.
pub fn subspace_distance(a: &KPlane, b: &KPlane) -> Result<f64> {
    if a.spin() != b.spin() {
        return Err(TqcError::MixedSpins);
    }
    Ok(max_abs_diff(a.projector(), b.projector()))
}

/// `Π△ = span{|ψ△⟩, |ψ▽⟩}`.
pub fn pyr_plane(spin: Spin) -> Result<KPlane> {
    plane_from_states(&[pyramidal_state(spin)?, pyramidal_partner(spin)?])
}

/// `Π⋄` for `k ≥ 4`, even `s ≥ 2k − 3`: bipyramids `m = 0, 2, …, 2(k−3)`,
/// then the pyramid and its partner.
pub fn toffoli_plane(spin: Spin, k: usize) -> Result<KPlane> {
    if k < 4 {
        return Err(TqcError::InvalidState(format!("generalized Toffoli planes need k >= 4, got {k}")));
    }
    if !spin.is_integer() || (spin.twice_s() / 2) % 2 != 0 {
        return Err(TqcError::InvalidSpin { twice_s: spin.twice_s(), reason: "Toffoli planes need an even integer spin" });
    }
    if (spin.twice_s() / 2) < 2 * k as u32 - 3 {
        return Err(TqcError::InvalidSpin { twice_s: spin.twice_s(), reason: "Toffoli planes need s >= 2k - 3" });
    }
    let mut states = (0..k - 2)
        .map(|j| bipyramidal_state(spin, 2 * j as i64))
        .collect::<Result<Vec<_>>>()?;
    states.push(pyramidal_state(spin)?);
    states.push(pyramidal_partner(spin)?);
    plane_from_states(&states)
}

/// Spin-15 8-plane of bipyramids `m = 0, 2, …, 14`.
pub fn plane_pi1() -> KPlane {
    let spin = Spin::integer(15);
    let states: Vec<_> = (0..8)
        .map(|j| bipyramidal_state(spin, 2 * j).expect("valid bipyramid"))
        .collect();
    plane_from_states(&states).expect("bipyramids are orthonormal")
}

/// Spin-15 8-plane of bipyramids `m = 0, 2, …, 12, 15`.
pub fn plane_pi2() -> KPlane {
    let spin = Spin::integer(15);
    let states: Vec<_> = (0..7)
        .map(|j| 2 * j)
        .chain(std::iter::once(15))
        .map(|m| bipyramidal_state(spin, m).expect("valid bipyramid"))
        .collect();
    plane_from_states(&states).expect("bipyramids are orthonormal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermiticity_residual, C64};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn basis(spin: Spin, twice_m: i32) -> SpinState {
        SpinState::basis(spin, twice_m).unwrap()
    }

    fn check_projector(p: &KPlane) {
        let proj = p.projector();
        assert!(hermiticity_residual(proj) < 1e-10);
        assert!(max_abs_diff(&(proj * proj), proj) < 1e-10);
        let trace: C64 = proj.trace();
        assert!((trace.re - p.k() as f64).abs() < 1e-10 && trace.im.abs() < 1e-10);
    }

    #[test]
    fn pyr_plane_keeps_its_frame() {
        let p = pyr_plane(Spin::integer(3)).unwrap();
        assert_eq!(p.k(), 2);
        assert_eq!(p.states()[0], pyramidal_state(Spin::integer(3)).unwrap());
        assert_eq!(p.states()[1], pyramidal_partner(Spin::integer(3)).unwrap());
        assert!(anticoherence_residual(&p) < 1e-12);
        assert!(is_symmetric_under(&p, &RotationVector::about_y(PI), 1e-10).0);
        check_projector(&p);
    }

    #[test]
    fn repeated_state_is_rank_deficient() {
        let s = Spin::integer(2);
        let err = plane_from_states(&[basis(s, 4), basis(s, 4)]).unwrap_err();
        assert!(matches!(err, TqcError::RankDeficient { index: 1, .. }));
    }

    #[test]
    fn gram_schmidt_by_hand() {
        let s = Spin::integer(2);
        let mut mixed = CVector::zeros(5);
        mixed[0] = re(1.0);
        mixed[4] = re(1.0);
        let p = plane_from_states(&[basis(s, 4), SpinState::new(s, mixed).unwrap()]).unwrap();
        let states = p.states();
        assert!((states[0].coeffs() - basis(s, 4).coeffs()).norm() < 1e-15);
        assert!((states[1].coeffs() - basis(s, -4).coeffs()).norm() < 1e-15);
    }

    #[test]
    fn mixed_spins_and_empty_lists_fail() {
        assert_eq!(plane_from_states(&[]).unwrap_err(), TqcError::EmptyFrame);
        let err = plane_from_states(&[basis(Spin::integer(1), 2), basis(Spin::integer(2), 2)]).unwrap_err();
        assert_eq!(err, TqcError::MixedSpins);
    }

    #[test]
    fn coherent_line_has_residual_s() {
        for n in 1..=6 {
            let s = Spin::integer(n);
            let p = plane_from_states(&[basis(s, 2 * n as i32)]).unwrap();
            assert!((anticoherence_residual(&p) - f64::from(n)).abs() < 1e-12);
        }
    }

    #[test]
    fn coherent_pair_negative_control() {
        for n in 2..=8 {
            let s = Spin::integer(n);
            let p = plane_from_states(&[basis(s, 2 * n as i32), basis(s, 2 * n as i32 - 2)]).unwrap();
            assert!(anticoherence_residual(&p) >= f64::from(n) - 1.0);
        }
    }

    #[test]
    fn pi1_is_anticoherent_and_symmetric() {
        let p = plane_pi1();
        assert_eq!(p.k(), 8);
        assert_eq!(p.spin(), Spin::integer(15));
        assert!(anticoherence_residual(&p) < 1e-12);
        for v in [
            RotationVector::about_z(FRAC_PI_2),
            RotationVector::about_z(PI),
            RotationVector::about_z(3.0 * FRAC_PI_2),
            RotationVector::about_y(PI),
        ] {
            assert!(is_symmetric_under(&p, &v, 1e-10).0, "{v:?}");
        }
        check_projector(&p);
    }

    #[test]
    fn pi2_has_only_the_half_turn() {
        let p = plane_pi2();
        assert!(anticoherence_residual(&p) < 1e-12);
        assert!(is_symmetric_under(&p, &RotationVector::about_z(PI), 1e-10).0);
        let (sym, residual) = is_symmetric_under(&p, &RotationVector::about_z(FRAC_PI_2), 1e-10);
        assert!(!sym);
        assert!(residual > 0.1);
    }

    #[test]
    fn identity_rotation_is_a_symmetry() {
        let p = pyr_plane(Spin::integer(4)).unwrap();
        assert_eq!(is_symmetric_under(&p, &RotationVector::zero(), 1e-12), (true, 0.0));
    }

    #[test]
    fn toffoli_plane_structure() {
        let p = toffoli_plane(Spin::integer(6), 4).unwrap();
        assert_eq!(p.k(), 4);
        assert!(anticoherence_residual(&p) < 1e-12);

        let s8 = Spin::integer(8);
        let p = toffoli_plane(s8, 5).unwrap();
        let want = [
            bipyramidal_state(s8, 0).unwrap(),
            bipyramidal_state(s8, 2).unwrap(),
            bipyramidal_state(s8, 4).unwrap(),
            pyramidal_state(s8).unwrap(),
            pyramidal_partner(s8).unwrap(),
        ];
        assert_eq!(p.states(), want);
    }

    #[test]
    fn toffoli_plane_preconditions() {
        assert!(toffoli_plane(Spin::integer(5), 4).is_err());
        assert!(toffoli_plane(Spin::integer(6), 3).is_err());
        assert!(toffoli_plane(Spin::integer(6), 5).is_err());
        assert!(toffoli_plane(Spin::from_twice(13), 4).is_err());
    }

    #[test]
    fn distance_examples() {
        let p = plane_pi1();
        assert_eq!(subspace_distance(&p, &p).unwrap(), 0.0);
        let s = Spin::integer(3);
        let a = plane_from_states(&[basis(s, 6)]).unwrap();
        let b = plane_from_states(&[basis(s, -6)]).unwrap();
        assert_eq!(subspace_distance(&a, &b).unwrap(), 1.0);
        let c = plane_from_states(&[basis(Spin::integer(2), 4)]).unwrap();
        assert_eq!(subspace_distance(&a, &c).unwrap_err(), TqcError::MixedSpins);
    }
}
