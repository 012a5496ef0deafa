use std::f64::consts::PI;

use nalgebra::Vector3;
use proptest::prelude::*;
use tqc_core::holonomy::{closed_form_holonomy, deform, numeric_holonomy, segment_path};
use tqc_core::linalg::{exp_i_hermitian, identity, max_abs_diff, unitarity_residual, CMatrix, CVector, C64};
use tqc_core::planes::{anticoherence_residual, plane_pi1, plane_pi2, pyr_plane, toffoli_plane, KPlane};
use tqc_core::states::{bipyramidal_state, majorana_constellation, SpinState};
use tqc_core::{wigner_rotation, z_rotation, RotationKernel, RotationVector, Spin, SpinOperators};

fn unit_vector() -> impl Strategy<Value = Vector3<f64>> {
    (-1.0f64..1.0, 0.0..2.0 * PI).prop_map(|(cos_theta, phi)| {
        let sin_theta = (1.0 - cos_theta * cos_theta).sqrt();
        Vector3::new(sin_theta * phi.cos(), sin_theta * phi.sin(), cos_theta)
    })
}

fn rotation_vector() -> impl Strategy<Value = RotationVector> {
    (unit_vector(), 0.0..2.0 * PI).prop_map(|(n, angle)| RotationVector(n * angle))
}

fn any_spin(max_twice: u32) -> impl Strategy<Value = Spin> {
    (1..=max_twice).prop_map(Spin::from_twice)
}

fn random_state(max_twice: u32) -> impl Strategy<Value = SpinState> {
    any_spin(max_twice).prop_flat_map(|spin| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), spin.dim())
            .prop_filter("nonzero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-2)
            .prop_map(move |v| {
                SpinState::new(spin, CVector::from_iterator(v.len(), v.into_iter().map(|(a, b)| C64::new(a, b))))
                    .unwrap()
            })
    })
}

fn random_unitary(k: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), k * k).prop_map(move |v| {
        let g = CMatrix::from_iterator(k, k, v.into_iter().map(|(a, b)| C64::new(a, b)));
        exp_i_hermitian(&((&g + g.adjoint()) * C64::new(0.5, 0.0)), 1.0)
    })
}

fn anticoherent_planes() -> Vec<KPlane> {
    let mut planes: Vec<KPlane> = (3..=5).map(|s| pyr_plane(Spin::integer(s)).unwrap()).collect();
    planes.push(toffoli_plane(Spin::integer(6), 4).unwrap());
    planes.push(plane_pi1());
    planes.push(plane_pi2());
    planes
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rotations_are_unitary(spin in any_spin(30), v in rotation_vector()) {
        prop_assert!(unitarity_residual(&wigner_rotation(spin, &v)) < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rotations_compose_along_an_axis(
        spin in any_spin(30),
        n in unit_vector(),
        split in 0.0f64..1.0,
        total in 0.0..2.0 * PI,
    ) {
        let (alpha, beta) = (split * total, (1.0 - split) * total);
        let lhs = wigner_rotation(spin, &RotationVector(n * alpha)) * wigner_rotation(spin, &RotationVector(n * beta));
        let rhs = wigner_rotation(spin, &RotationVector(n * total));
        prop_assert!(max_abs_diff(&lhs, &rhs) < 1e-9);
    }

    #[test]
    fn rotation_fixes_its_generator(spin in any_spin(30), v in rotation_vector()) {
        let ops = SpinOperators::new(spin);
        let d = ops.rotation(&v);
        if let Some(axis) = v.axis() {
            let g = ops.dot(&axis);
            prop_assert!(max_abs_diff(&(d.adjoint() * &g * &d), &g) < 1e-10);
        }
    }

    #[test]
    fn euler_kernel_agrees_with_spectral(spin in any_spin(30), v in rotation_vector()) {
        let kernel = RotationKernel::new(spin);
        prop_assert!(max_abs_diff(&kernel.matrix(&v), &wigner_rotation(spin, &v)) < 1e-11);
    }

    #[test]
    fn z_rotation_agrees_with_spectral(spin in any_spin(30), theta in -2.0 * PI..2.0 * PI) {
        let spectral = wigner_rotation(spin, &RotationVector::about_z(theta));
        prop_assert!(max_abs_diff(&spectral, &z_rotation(spin, theta)) < 1e-12);
    }

    #[test]
    fn constellations_rotate_rigidly(psi in random_state(8), v in rotation_vector()) {
        let rotated_state = psi.transformed(&wigner_rotation(psi.spin(), &v));
        let moved = majorana_constellation(&rotated_state);
        let expected = majorana_constellation(&psi).rotated(&v.rotation_matrix());
        prop_assert!(moved.distance(&expected) < 1e-6, "distance {}", moved.distance(&expected));
    }

    #[test]
    fn bipyramids_are_symmetric(s in 1u32..=10, m_seed in 0u32..100) {
        let spin = Spin::integer(s);
        let m = 1 + m_seed % s;
        let psi = bipyramidal_state(spin, i64::from(m)).unwrap();
        let stars = majorana_constellation(&psi);
        for v in [RotationVector::about_z(PI / f64::from(m)), RotationVector::about_y(PI)] {
            prop_assert!(stars.rotated(&v.rotation_matrix()).distance(&stars) < 1e-8);
        }
        if m % 2 == 0 {
            let phase = if s % 2 == 0 { 1.0 } else { -1.0 };
            let image = psi.transformed(&wigner_rotation(spin, &RotationVector::about_y(PI)));
            prop_assert!((image.coeffs() - psi.coeffs() * C64::new(phase, 0.0)).camax() < 1e-10);
        }
    }

    #[test]
    fn anticoherence_is_basis_independent(mix in random_unitary(8)) {
        let p = plane_pi1();
        let remixed = p.remixed(&mix).unwrap();
        prop_assert!((anticoherence_residual(&remixed) - anticoherence_residual(&p)).abs() < 1e-10);
        let coherent = tqc_core::planes::plane_from_states(&[
            SpinState::basis(Spin::integer(2), 4).unwrap(),
            SpinState::basis(Spin::integer(2), 2).unwrap(),
        ]).unwrap();
        let mix2 = mix.view((0, 0), (2, 2)).into_owned();
        let mix2 = tqc_core::linalg::nearest_unitary(&mix2);
        let remixed = coherent.remixed(&mix2).unwrap();
        prop_assert!(anticoherence_residual(&remixed) >= 1.0);
    }

    #[test]
    fn rotated_anticoherent_planes_stay_anticoherent(v in rotation_vector()) {
        for p in anticoherent_planes() {
            prop_assert!(anticoherence_residual(&p) < 1e-12);
            let d = wigner_rotation(p.spin(), &v);
            prop_assert!(anticoherence_residual(&p.transformed(&d).unwrap()) < 1e-10);
        }
    }
}

#[test]
fn projectors_are_idempotent_with_trace_k() {
    for p in anticoherent_planes() {
        let proj = p.projector();
        assert!(max_abs_diff(&(proj * proj), proj) < 1e-12);
        assert!((proj.trace() - C64::new(p.k() as f64, 0.0)).norm() < 1e-12);
        assert!(max_abs_diff(&(p.frame().adjoint() * p.frame()), &identity(p.k())) < 1e-12);
    }
}

fn harmonics(max: f64) -> impl Strategy<Value = Vec<[f64; 3]>> {
    prop::collection::vec(prop::array::uniform3(-max..max), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    // One deformed integration per case; each is a few thousand 31×31 products.
    #[test]
    fn holonomy_depends_only_on_the_endpoint(h in harmonics(1.0)) {
        let p = plane_pi1();
        let v_end = RotationVector::about_z(PI / 2.0);
        let Ok(path) = deform(&segment_path(v_end), &h) else { return Ok(()) };
        let numeric = numeric_holonomy(&p, &path, 1000).unwrap();
        let closed = closed_form_holonomy(&p, &v_end, 1e-10).unwrap();
        prop_assert!(max_abs_diff(&numeric.u, &closed.u) < 1e-6);
        prop_assert!(numeric.max_connection_norm < 1e-8);
        prop_assert!(max_abs_diff(&numeric.w, &closed.u) < 1e-8);
    }
}
