//! Spin-s conventions: the m-basis, angular momentum operators and the
//! rotation operators `D(v) = exp(−i v·S)`.
//!
//! The m-basis is always ordered by descending m, so index 0 is `|s, s⟩`
//! and index `2s` is `|s, −s⟩`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen, Unit, Vector3};

use crate::error::{Result, TqcError};
use crate::linalg::{c, identity, re, reassemble, CMatrix, CVector, C64};

/// A spin quantum number, stored as `2s` so half-integers stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin {
    twice_s: u32,
}

impl Spin {
    pub const fn from_twice(twice_s: u32) -> Self {
        Self { twice_s }
    }

    pub const fn integer(s: u32) -> Self {
        Self { twice_s: 2 * s }
    }

    /// Parses `"3"`, `"5/2"` or `"2.5"`.
    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let num: u32 = num.trim().parse().ok()?;
            match den.trim() {
                "2" => Some(Self::from_twice(num)),
                "1" => Some(Self::integer(num)),
                _ => None,
            }
        } else if let Ok(n) = text.parse::<u32>() {
            Some(Self::integer(n))
        } else {
            let x: f64 = text.parse().ok()?;
            let twice = 2.0 * x;
            if x >= 0.0 && (twice - twice.round()).abs() < 1e-12 {
                Some(Self::from_twice(twice.round() as u32))
            } else {
                None
            }
        }
    }

    pub const fn twice_s(self) -> u32 {
        self.twice_s
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice_s) / 2.0
    }

    /// Hilbert-space dimension `N = 2s + 1`.
    pub const fn dim(self) -> usize {
        self.twice_s as usize + 1
    }

    pub const fn is_integer(self) -> bool {
        self.twice_s % 2 == 0
    }

    /// `2m` for basis index `i`.
    pub fn twice_m(self, index: usize) -> i32 {
        self.twice_s as i32 - 2 * index as i32
    }

    /// m value for basis index `i` (`m = s − i`).
    pub fn m(self, index: usize) -> f64 {
        f64::from(self.twice_m(index)) / 2.0
    }

    /// Basis index of the state with the given `2m`, if it exists.
    pub fn index_of_twice_m(self, twice_m: i32) -> Option<usize> {
        let ts = self.twice_s as i32;
        if twice_m.abs() > ts || (ts - twice_m) % 2 != 0 {
            return None;
        }
        Some(((ts - twice_m) / 2) as usize)
    }

    /// Basis index of integer `m` (only meaningful for integer spin).
    pub fn index_of_m(self, m: i32) -> Option<usize> {
        self.index_of_twice_m(2 * m)
    }

    /// `|s, m⟩` given `2m`.
    pub fn basis_vector(self, twice_m: i32) -> Option<CVector> {
        let i = self.index_of_twice_m(twice_m)?;
        let mut v = CVector::zeros(self.dim());
        v[i] = re(1.0);
        Some(v)
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice_s / 2)
        } else {
            write!(f, "{}/2", self.twice_s)
        }
    }
}

/// Axis-times-angle rotation vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationVector(pub Vector3<f64>);

impl RotationVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self(Vector3::new(x, y, z))
    }

    pub fn zero() -> Self {
        Self(Vector3::zeros())
    }

    pub fn about_x(angle: f64) -> Self {
        Self::new(angle, 0.0, 0.0)
    }

    pub fn about_y(angle: f64) -> Self {
        Self::new(0.0, angle, 0.0)
    }

    pub fn about_z(angle: f64) -> Self {
        Self::new(0.0, 0.0, angle)
    }

    pub fn angle(&self) -> f64 {
        self.0.norm()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self(self.0 * t)
    }

    /// Rotation axis; `None` for the zero vector.
    pub fn axis(&self) -> Option<Unit<Vector3<f64>>> {
        Unit::try_new(self.0, 0.0)
    }

    /// The SO(3) image: right-handed rotation by `|v|` about `v̂`.
    pub fn rotation_matrix(&self) -> nalgebra::Rotation3<f64> {
        nalgebra::Rotation3::new(self.0)
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.0.x, self.0.y, self.0.z]
    }
}

impl From<[f64; 3]> for RotationVector {
    fn from(v: [f64; 3]) -> Self {
        Self::new(v[0], v[1], v[2])
    }
}

/// `Sx, Sy, Sz` for one spin.
#[derive(Debug, Clone)]
pub struct SpinOperators {
    pub spin: Spin,
    pub sx: CMatrix,
    pub sy: CMatrix,
    pub sz: CMatrix,
}

impl SpinOperators {
    pub fn new(spin: Spin) -> Self {
        let n = spin.dim();
        let s = spin.value();
        let mut raise = CMatrix::zeros(n, n);
        // S+|s,m⟩ = √(s(s+1) − m(m+1)) |s,m+1⟩ ; |s,m+1⟩ sits one index up.
        for j in 1..n {
            let m = spin.m(j);
            raise[(j - 1, j)] = re((s * (s + 1.0) - m * (m + 1.0)).sqrt());
        }
        let lower = raise.adjoint();
        let sx = (&raise + &lower) * re(0.5);
        let sy = (&raise - &lower) * c(0.0, -0.5);
        let sz = CMatrix::from_diagonal(&CVector::from_iterator(n, (0..n).map(|i| re(spin.m(i)))));
        Self { spin, sx, sy, sz }
    }

    pub fn components(&self) -> [&CMatrix; 3] {
        [&self.sx, &self.sy, &self.sz]
    }

    /// `a·S` for a real 3-vector.
    pub fn dot(&self, a: &Vector3<f64>) -> CMatrix {
        &self.sx * re(a.x) + &self.sy * re(a.y) + &self.sz * re(a.z)
    }

    /// `D(v) = exp(−i v·S)`.
    ///
    /// Diagonalizes the generator `v̂·S`. Its spectrum is exactly
    /// `{s, s−1, …, −s}`, so the numerical eigenvalues are snapped to the
    /// nearest allowed m before exponentiation.
    pub fn rotation(&self, v: &RotationVector) -> CMatrix {
        let angle = v.angle();
        let Some(axis) = v.axis() else {
            return identity(self.spin.dim());
        };
        let eig = SymmetricEigen::new(self.dot(&axis));
        let phases = CVector::from_iterator(
            eig.eigenvalues.len(),
            eig.eigenvalues.iter().map(|&l| {
                let m = snap_half_integer(l);
                C64::from_polar(1.0, -angle * m)
            }),
        );
        reassemble(&eig.eigenvectors, &phases)
    }
}

/// z-y-z Euler angles `(α, β, γ)` of the SU(2) element `exp(−i v·σ/2)`, so
/// that `D(v) = D(αẑ) D(βŷ) D(γẑ)` for every spin, half-integer included.
pub fn euler_zyz(v: &RotationVector) -> (f64, f64, f64) {
    let theta = v.angle();
    let Some(n) = v.axis() else {
        return (0.0, 0.0, 0.0);
    };
    let (s, c) = (0.5 * theta).sin_cos();
    // first column of the spin-1/2 matrix: e^{−i(α+γ)/2} cos(β/2), e^{i(α−γ)/2} sin(β/2)
    let u11 = C64::new(c, -s * n.z);
    let u21 = C64::new(s * n.y, -s * n.x);
    let beta = 2.0 * u21.norm().atan2(u11.norm());
    let sum = if u11.norm() > 0.0 { -2.0 * u11.arg() } else { 0.0 };
    let diff = if u21.norm() > 0.0 { 2.0 * u21.arg() } else { 0.0 };
    (0.5 * (sum + diff), beta, 0.5 * (sum - diff))
}

/// Applies `D(v)` to frames through Euler angles. The `y` turn is
/// conjugated into an `x` turn, `D(βŷ) = D(½πẑ) D(βx̂) D(−½πẑ)`, whose
/// eigenbasis is real and computed once. Acting on an `N×k` frame costs two
/// real-by-complex products instead of an `N×N` eigendecomposition.
#[derive(Debug, Clone)]
pub struct RotationKernel {
    m: Vec<f64>,
    /// `⟨m+1|S₊|m⟩` indexed by the lower state's row.
    ladder: Vec<f64>,
    x_vectors: DMatrix<f64>,
    x_vectors_t: DMatrix<f64>,
    x_m: Vec<f64>,
}

impl RotationKernel {
    pub fn new(spin: Spin) -> Self {
        let ops = SpinOperators::new(spin);
        let eig = SymmetricEigen::new(ops.sx.map(|z| z.re));
        let x_m = eig.eigenvalues.iter().map(|&l| snap_half_integer(l)).collect();
        let s = spin.value();
        let ladder = (0..spin.dim())
            .map(|i| {
                let m = spin.m(i);
                (s * (s + 1.0) - m * (m + 1.0)).max(0.0).sqrt()
            })
            .collect();
        Self {
            m: (0..spin.dim()).map(|i| spin.m(i)).collect(),
            ladder,
            x_vectors_t: eig.eigenvectors.transpose(),
            x_vectors: eig.eigenvectors,
            x_m,
        }
    }

    fn scale_rows(frame: &mut CMatrix, values: &[f64], angle: f64) {
        for (i, &m) in values.iter().enumerate() {
            let phase = C64::from_polar(1.0, -angle * m);
            for z in frame.row_mut(i).iter_mut() {
                *z *= phase;
            }
        }
    }

    fn real_times(r: &DMatrix<f64>, x: &CMatrix) -> CMatrix {
        let re_part = r * x.map(|z| z.re);
        let im_part = r * x.map(|z| z.im);
        re_part.zip_map(&im_part, C64::new)
    }

    /// `D(v) · frame`.
    pub fn apply(&self, v: &RotationVector, frame: &CMatrix) -> CMatrix {
        let (alpha, beta, gamma) = euler_zyz(v);
        let mut x = frame.clone();
        Self::scale_rows(&mut x, &self.m, gamma - FRAC_PI_2);
        let mut x = Self::real_times(&self.x_vectors_t, &x);
        Self::scale_rows(&mut x, &self.x_m, beta);
        let mut x = Self::real_times(&self.x_vectors, &x);
        Self::scale_rows(&mut x, &self.m, alpha + FRAC_PI_2);
        x
    }
    pub fn matrix(&self, v: &RotationVector) -> CMatrix {
        self.apply(v, &identity(self.m.len()))
    }

    /// `(a·S) · frame` from the ladder form
    /// `a·S = a_z S_z + ½(a_x − i a_y) S₊ + ½(a_x + i a_y) S₋`.
    pub fn generator_apply(&self, a: &Vector3<f64>, frame: &CMatrix) -> CMatrix {
        let up = C64::new(0.5 * a.x, -0.5 * a.y);
        let down = up.conj();
        let mut out = CMatrix::zeros(frame.nrows(), frame.ncols());
        for i in 0..self.m.len() {
            let mut row = frame.row(i) * C64::new(a.z * self.m[i], 0.0);
            // S₊ moves m up, which is one row index down
            if i + 1 < self.m.len() {
                row += frame.row(i + 1) * (up * self.ladder[i + 1]);
            }
            if i > 0 {
                row += frame.row(i - 1) * (down * self.ladder[i]);
            }
            out.set_row(i, &row);
        }
        out
    }
}

fn snap_half_integer(x: f64) -> f64 {
    let snapped = (2.0 * x).round() / 2.0;
    debug_assert!((snapped - x).abs() < 1e-6, "eigenvalue {x} far from a half-integer");
    snapped
}

pub fn make_spin_operators(spin: Spin) -> SpinOperators {
    SpinOperators::new(spin)
}

/// `D^{(s)}(v) = exp(−i v·S)`.
pub fn wigner_rotation(spin: Spin, v: &RotationVector) -> CMatrix {
    SpinOperators::new(spin).rotation(v)
}

/// Closed form of `wigner_rotation(s, θẑ)`: `diag(e^{−imθ})`.
pub fn z_rotation(spin: Spin, theta: f64) -> CMatrix {
    let n = spin.dim();
    CMatrix::from_diagonal(&CVector::from_iterator(
        n,
        (0..n).map(|i| C64::from_polar(1.0, -spin.m(i) * theta)),
    ))
}

/// Validates that a spin is at least `min_twice_s / 2`.
pub(crate) fn require_spin_at_least(spin: Spin, min_twice_s: u32, reason: &'static str) -> Result<()> {
    if spin.twice_s() < min_twice_s {
        return Err(TqcError::InvalidSpin { twice_s: spin.twice_s(), reason });
    }
    Ok(())
}
