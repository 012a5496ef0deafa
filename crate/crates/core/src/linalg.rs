//! Dense complex-matrix helpers shared by every other module.
//!
//! Matrices are `nalgebra::DMatrix<Complex64>`; all sizes here are at most
//! 31x31, so nothing tries to be clever about storage.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Result, TqcError};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Largest entry modulus, the norm used for every tolerance in this crate.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "max_abs_diff: shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `‖M†M − I‖_max`.
pub fn unitarity_residual(m: &CMatrix) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    max_abs_diff(&(m.adjoint() * m), &identity(m.nrows()))
}

pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

pub fn is_real(m: &CMatrix, tol: f64) -> bool {
    m.iter().all(|z| z.im.abs() <= tol)
}

pub fn from_real_rows(n: usize, rows: &[f64]) -> CMatrix {
    CMatrix::from_row_slice(n, n, &rows.iter().map(|&x| re(x)).collect::<Vec<_>>())
}

pub fn pauli_x() -> CMatrix {
    from_real_rows(2, &[0.0, 1.0, 1.0, 0.0])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[re(0.0), c(0.0, -1.0), c(0.0, 1.0), re(0.0)])
}

pub fn pauli_z() -> CMatrix {
    from_real_rows(2, &[1.0, 0.0, 0.0, -1.0])
}

pub fn hadamard() -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    from_real_rows(2, &[h, h, h, -h])
}

/// Planar rotation by `theta`: `[[cos, −sin], [sin, cos]]`.
pub fn planar_rotation(theta: f64) -> CMatrix {
    let (s, co) = theta.sin_cos();
    from_real_rows(2, &[co, -s, s, co])
}

/// Block-diagonal assembly in list order.
pub fn direct_sum(blocks: &[CMatrix]) -> Result<CMatrix> {
    for (index, b) in blocks.iter().enumerate() {
        if b.nrows() != b.ncols() {
            return Err(TqcError::NonSquareBlock { index, rows: b.nrows(), cols: b.ncols() });
        }
    }
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMatrix::zeros(n, n);
    let mut offset = 0;
    for b in blocks {
        let k = b.nrows();
        out.view_mut((offset, offset), (k, k)).copy_from(b);
        offset += k;
    }
    Ok(out)
}

/// Kronecker product; the first factor is the most significant index.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn kron_all(factors: &[CMatrix]) -> CMatrix {
    factors
        .iter()
        .fold(identity(1), |acc, f| kron(&acc, f))
}

/// `exp(i·θ·H)` for Hermitian `H`, via its spectral decomposition.
pub fn exp_i_hermitian(h: &CMatrix, theta: f64) -> CMatrix {
    let eig = SymmetricEigen::new(h.clone());
    let phases = CVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&l| C64::from_polar(1.0, theta * l)),
    );
    reassemble(&eig.eigenvectors, &phases)
}

/// `V · diag(d) · V†`.
pub(crate) fn reassemble(v: &CMatrix, d: &CVector) -> CMatrix {
    let mut scaled = v.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        col *= d[j];
    }
    scaled * v.adjoint()
}

/// Closest unitary in Frobenius norm (polar factor `U·V†` of the SVD).
pub fn nearest_unitary(m: &CMatrix) -> CMatrix {
    let svd = m.clone().svd(true, true);
    match (svd.u, svd.v_t) {
        (Some(u), Some(v_t)) => u * v_t,
        _ => m.clone(),
    }
}

/// Columns of `frame` as a list of vectors.
pub fn columns(frame: &CMatrix) -> Vec<CVector> {
    frame.column_iter().map(|c| c.into_owned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_sum_of_four_sigma_z() {
        let z = pauli_z();
        let d = direct_sum(&[z.clone(), z.clone(), z.clone(), z]).unwrap();
        let expected: Vec<f64> = vec![1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0, -1.0];
        let diag = CMatrix::from_diagonal(&CVector::from_iterator(8, expected.into_iter().map(re)));
        assert_eq!(d, diag);
    }

    #[test]
    fn direct_sum_identity_and_sigma_z() {
        let d = direct_sum(&[identity(6), pauli_z()]).unwrap();
        for i in 0..8 {
            let want = if i == 7 { -1.0 } else { 1.0 };
            assert_eq!(d[(i, i)], re(want));
        }
        assert_eq!(max_abs(&(d.clone() - CMatrix::from_diagonal(&d.diagonal()))), 0.0);
    }

    #[test]
    fn direct_sum_single_block() {
        let b = CMatrix::from_element(1, 1, c(0.3, -2.0));
        assert_eq!(direct_sum(&[b.clone()]).unwrap(), b);
    }

    #[test]
    fn direct_sum_rejects_rectangular() {
        let err = direct_sum(&[identity(2), CMatrix::zeros(2, 3)]).unwrap_err();
        assert_eq!(err, TqcError::NonSquareBlock { index: 1, rows: 2, cols: 3 });
    }

    #[test]
    fn kron_places_h_on_the_diagonal_blocks() {
        let h3 = kron_all(&[identity(2), identity(2), hadamard()]);
        let blocks = direct_sum(&vec![hadamard(); 4]).unwrap();
        assert!(max_abs_diff(&h3, &blocks) < 1e-15);
    }

    #[test]
    fn kron_identity_sigma_z_is_direct_sum() {
        let lhs = kron(&identity(4), &pauli_z());
        let rhs = direct_sum(&vec![pauli_z(); 4]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kron_with_scalar_identity() {
        let a = CMatrix::from_row_slice(2, 2, &[c(1.0, 2.0), re(3.0), re(0.0), c(0.0, -1.0)]);
        assert_eq!(kron(&identity(1), &a), a);
    }

    #[test]
    fn kron_orders_first_factor_most_significant() {
        // X ⊗ I maps |00> (index 0) to |10> (index 2).
        let m = kron(&pauli_x(), &identity(2));
        assert_eq!(m[(2, 0)], re(1.0));
        assert_eq!(m[(1, 0)], re(0.0));
    }

    #[test]
    fn exp_of_pauli_y() {
        // exp(-i (π/2) σy) = -i σy = [[0,-1],[1,0]]
        let m = exp_i_hermitian(&pauli_y(), -std::f64::consts::FRAC_PI_2);
        let want = from_real_rows(2, &[0.0, -1.0, 1.0, 0.0]);
        assert!(max_abs_diff(&m, &want) < 1e-14);
    }

    #[test]
    fn nearest_unitary_fixes_small_drift() {
        let mut u = hadamard();
        u[(0, 0)] += re(1e-6);
        let fixed = nearest_unitary(&u);
        assert!(unitarity_residual(&fixed) < 1e-14);
        assert!(max_abs_diff(&fixed, &hadamard()) < 1e-5);
    }
}
