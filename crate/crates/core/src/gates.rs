//! Target gates, basis changes, coding matrices and the recipes that
//! realize each gate as the holonomy of a (possibly coded) rotation.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};
use std::fmt;

use crate::error::{Result, TqcError};
use crate::holonomy::{closed_form_holonomy, segment_path, transported_holonomy, HolonomyResult, RotationPath};
use crate::linalg::{
    direct_sum, hadamard, identity, kron_all, max_abs_diff, pauli_x, planar_rotation, re, unitarity_residual,
    CMatrix, C64,
};
use crate::planes::{plane_pi1, pyr_plane, toffoli_plane, KPlane};
use crate::spin::{RotationVector, Spin};
use crate::states::SpinState;

/// Number of emulated qubits.
pub const QUBITS: usize = 3;

const SPIN_TWICE: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateTarget {
    Not,
    GeneralizedToffoli(usize),
    H3,
    Toffoli8,
    /// Hadamard on qubit `q ∈ {1,2,3}`; qubit 1 is the most significant bit.
    HadamardOn(usize),
    /// Toffoli whose target is qubit `q`, controlled by the other two.
    PermutedToffoli(usize),
}

impl GateTarget {
    /// Parses the CLI gate names (`NOT`, `TOFFOLI8`, `H3`, `H1`, `H2`,
    /// `TOFFOLI_TARGET1`, `TOFFOLI_TARGET2`, and `GENERALIZED_TOFFOLI<k>`).
    pub fn parse(name: &str) -> Option<Self> {
        let upper = name.trim().to_ascii_uppercase();
        let gate = match upper.as_str() {
            "NOT" => Self::Not,
            "H3" => Self::H3,
            "H1" => Self::HadamardOn(1),
            "H2" => Self::HadamardOn(2),
            "TOFFOLI8" | "TOFFOLI_TARGET3" => Self::Toffoli8,
            "TOFFOLI_TARGET1" => Self::PermutedToffoli(1),
            "TOFFOLI_TARGET2" => Self::PermutedToffoli(2),
            other => {
                let k = other.strip_prefix("GENERALIZED_TOFFOLI")?.trim_start_matches(['(', '_']);
                Self::GeneralizedToffoli(k.trim_end_matches(')').parse().ok()?)
            }
        };
        gate.validate().ok().map(|_| gate)
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Self::GeneralizedToffoli(k) if k < 4 => {
                Err(TqcError::InvalidState(format!("generalized Toffoli needs k >= 4, got {k}")))
            }
            Self::HadamardOn(q) | Self::PermutedToffoli(q) if !(1..=QUBITS).contains(&q) => {
                Err(TqcError::InvalidState(format!("qubit index must be 1..=3, got {q}")))
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Self::Not => "NOT".into(),
            Self::GeneralizedToffoli(k) => format!("GENERALIZED_TOFFOLI({k})"),
            Self::H3 => "H3".into(),
            Self::Toffoli8 => "TOFFOLI8".into(),
            Self::HadamardOn(q) => format!("HADAMARD_ON({q})"),
            Self::PermutedToffoli(q) => format!("PERMUTED_TOFFOLI({q})"),
        }
    }

    pub fn matrix(&self) -> Result<CMatrix> {
        self.validate()?;
        Ok(match *self {
            Self::Not => pauli_x(),
            Self::GeneralizedToffoli(k) => direct_sum(&[identity(k - 2), pauli_x()])?,
            Self::H3 => Self::HadamardOn(3).matrix()?,
            Self::Toffoli8 => Self::PermutedToffoli(3).matrix()?,
            Self::HadamardOn(q) => {
                let factors: Vec<CMatrix> =
                    (1..=QUBITS).map(|i| if i == q { hadamard() } else { identity(2) }).collect();
                kron_all(&factors)
            }
            Self::PermutedToffoli(q) => {
                let dim = 1 << QUBITS;
                let mut m = CMatrix::zeros(dim, dim);
                for b in 0..dim {
                    let controls_set = (1..=QUBITS).filter(|&i| i != q).all(|i| b & bit(i) != 0);
                    let image = if controls_set { b ^ bit(q) } else { b };
                    m[(image, b)] = re(1.0);
                }
                m
            }
        })
    }
}

impl fmt::Display for GateTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Mask of qubit `q` in a basis index (qubit 1 is the most significant).
fn bit(q: usize) -> usize {
    1 << (QUBITS - q)
}

/// A permutation of the three qubits in one-line notation: qubit `i`
/// moves to position `perm[i−1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QubitPermutation([usize; QUBITS]);

impl QubitPermutation {
    pub fn new(perm: [usize; QUBITS]) -> Result<Self> {
        let mut seen = [false; QUBITS];
        for &p in &perm {
            if !(1..=QUBITS).contains(&p) || seen[p - 1] {
                return Err(TqcError::InvalidPermutation(perm.to_vec()));
            }
            seen[p - 1] = true;
        }
        Ok(Self(perm))
    }

    pub fn identity() -> Self {
        Self([1, 2, 3])
    }

    /// Transposition of qubits `a` and `b`.
    pub fn swap(a: usize, b: usize) -> Result<Self> {
        let mut perm = [1, 2, 3];
        if !(1..=QUBITS).contains(&a) || !(1..=QUBITS).contains(&b) {
            return Err(TqcError::InvalidPermutation(vec![a, b]));
        }
        perm.swap(a - 1, b - 1);
        Ok(Self(perm))
    }

    pub fn as_array(&self) -> [usize; QUBITS] {
        self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0 == [1, 2, 3]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = [0; QUBITS];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.0[other.0[i] - 1];
        }
        Self(out)
    }

    /// Image of a basis index under the bit permutation.
    pub fn apply_to_index(&self, b: usize) -> usize {
        (1..=QUBITS)
            .filter(|&i| b & bit(i) != 0)
            .fold(0, |acc, i| acc | bit(self.0[i - 1]))
    }

    /// The induced `8×8` permutation matrix `Σ|b⟩ = |σ(b)⟩`.
    pub fn basis_matrix(&self) -> CMatrix {
        let dim = 1 << QUBITS;
        let mut m = CMatrix::zeros(dim, dim);
        for b in 0..dim {
            m[(self.apply_to_index(b), b)] = re(1.0);
        }
        m
    }
}

impl fmt::Display for QubitPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} {})", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodingLabel {
    Identity,
    C1,
    C2,
    C,
    Perm(QubitPermutation),
    /// Product `left · right` of two labelled codings.
    Product(Box<CodingLabel>, Box<CodingLabel>),
}

impl fmt::Display for CodingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Identity => f.write_str("I"),
            Self::C1 => f.write_str("C1"),
            Self::C2 => f.write_str("C2"),
            Self::C => f.write_str("C"),
            Self::Perm(p) => write!(f, "PERM{p}"),
            Self::Product(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

/// A unitary on the whole spin-15 space applied before the rotation and
/// undone after it.
#[derive(Debug, Clone)]
pub struct CodingMatrix {
    pub label: CodingLabel,
    pub matrix: CMatrix,
}

impl CodingMatrix {
    pub fn identity() -> Self {
        Self { label: CodingLabel::Identity, matrix: identity(coding_dim()) }
    }

    /// `self · other`, so `other` acts on the state first.
    pub fn then_after(&self, other: &CodingMatrix) -> CodingMatrix {
        let label = match (&self.label, &other.label) {
            (CodingLabel::Identity, l) | (l, CodingLabel::Identity) => l.clone(),
            (a, b) => CodingLabel::Product(Box::new(a.clone()), Box::new(b.clone())),
        };
        CodingMatrix { label, matrix: &self.matrix * &other.matrix }
    }
}

fn coding_dim() -> usize {
    Spin::from_twice(SPIN_TWICE).dim()
}

/// `M = 𝓡(π/8)^{⊕4}`.
pub fn hadamard_basis_change() -> CMatrix {
    direct_sum(&vec![planar_rotation(FRAC_PI_8); 4]).expect("square blocks")
}

/// `V = I₆ ⊕ 𝓡(π/4)`.
pub fn toffoli_basis_change() -> CMatrix {
    direct_sum(&[identity(6), planar_rotation(FRAC_PI_4)]).expect("square blocks")
}

/// Swaps `m = 15 ↔ 14` and `m = −14 ↔ −15`.
pub fn coding_c1() -> CodingMatrix {
    let n = coding_dim();
    let mut m = identity(n);
    m.swap_columns(0, 1);
    m.swap_columns(n - 2, n - 1);
    CodingMatrix { label: CodingLabel::C1, matrix: m }
}

/// The `4×4` two-level block acting on `m = 15, 14, 13, 12`.
pub fn coding_block_a() -> CMatrix {
    let (s, c) = FRAC_PI_8.sin_cos();
    #[rustfmt::skip]
    let rows = [
        -c,  0.0, 0.0, s,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0,
        s,   0.0, 0.0, c,
    ];
    crate::linalg::from_real_rows(4, &rows)
}

/// `A^J`: `A` transposed along its secondary diagonal.
pub fn anti_transpose(a: &CMatrix) -> CMatrix {
    let n = a.nrows();
    CMatrix::from_fn(n, a.ncols(), |i, j| a[(n - 1 - j, n - 1 - i)])
}

/// `C₂ = A ⊕ I₂₃ ⊕ A^J`.
pub fn coding_c2() -> CodingMatrix {
    let a = coding_block_a();
    let matrix = direct_sum(&[a.clone(), identity(coding_dim() - 8), anti_transpose(&a)]).expect("square blocks");
    CodingMatrix { label: CodingLabel::C2, matrix }
}

/// `C = C₂ C₁`.
pub fn coding_c() -> CodingMatrix {
    CodingMatrix { label: CodingLabel::C, matrix: coding_c2().matrix * coding_c1().matrix }
}

/// `|ψᵢ⟩ = Σⱼ |ψ⋄^{(15, 2(j−1))}⟩ M†ⱼᵢ`, labelled `|000⟩ … |111⟩`.
pub fn computational_basis() -> Vec<SpinState> {
    computational_plane().states()
}

/// `Π₁` with the computational basis as its frame.
pub fn computational_plane() -> KPlane {
    plane_pi1()
        .remixed(&hadamard_basis_change().adjoint())
        .expect("M is orthogonal")
}

/// `P = Q Σ Q† + (I − Q Q†)` with `Q` the computational frame.
pub fn qubit_permutation_encoding(perm: QubitPermutation) -> CodingMatrix {
    let q = computational_plane().frame().clone();
    let projector = &q * q.adjoint();
    let matrix = &q * perm.basis_matrix() * q.adjoint() + identity(q.nrows()) - projector;
    CodingMatrix { label: CodingLabel::Perm(perm), matrix }
}

/// Holonomy of `t ↦ C† D(v(t)) C (Π₁)` in the computational basis.
pub fn coded_curve_holonomy(c: &CodingMatrix, path: &RotationPath, steps: usize) -> Result<HolonomyResult> {
    transported_holonomy(&computational_plane(), Some(&c.matrix), path, steps)
}

/// `‖u − e^{iφ} v‖_max`, with `φ = arg tr(v†u)` when `up_to_phase`.
pub fn gate_distance(u: &CMatrix, v: &CMatrix, up_to_phase: bool) -> Result<f64> {
    if u.shape() != v.shape() {
        return Err(TqcError::DimensionMismatch { left: u.shape(), right: v.shape() });
    }
    if !up_to_phase {
        return Ok(max_abs_diff(u, v));
    }
    let overlap = (v.adjoint() * u).trace();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { C64::new(1.0, 0.0) };
    Ok(max_abs_diff(u, &(v * phase)))
}

/// Smallest even `s ≥ 2k − 3`.
pub fn toffoli_spin(k: usize) -> Spin {
    let s = (2 * k as u32).saturating_sub(3);
    Spin::integer(s + s % 2)
}

/// Plane, coding and endpoint that realize a target gate.
#[derive(Debug, Clone)]
pub struct GateRecipe {
    pub target: GateTarget,
    pub plane: KPlane,
    pub coding: CodingMatrix,
    pub v_end: RotationVector,
}

impl GateRecipe {
    pub fn for_target(target: GateTarget) -> Result<Self> {
        target.validate()?;
        let swap_into_third = |q: usize| -> Result<CodingMatrix> {
            let perm = QubitPermutation::swap(q, 3)?;
            Ok(if perm.is_identity() { CodingMatrix::identity() } else { qubit_permutation_encoding(perm) })
        };
        let (plane, coding, v_end) = match target {
            GateTarget::Not => (pyr_plane(Spin::integer(3))?, None, RotationVector::about_y(PI)),
            GateTarget::GeneralizedToffoli(k) => {
                (toffoli_plane(toffoli_spin(k), k)?, None, RotationVector::about_y(PI))
            }
            GateTarget::H3 => (computational_plane(), None, RotationVector::about_z(FRAC_PI_2)),
            GateTarget::HadamardOn(q) => {
                (computational_plane(), Some(swap_into_third(q)?), RotationVector::about_z(FRAC_PI_2))
            }
            GateTarget::Toffoli8 => (computational_plane(), Some(coding_c()), RotationVector::about_z(PI)),
            GateTarget::PermutedToffoli(q) => {
                let coding = coding_c().then_after(&swap_into_third(q)?);
                (computational_plane(), Some(coding), RotationVector::about_z(PI))
            }
        };
        let coding = coding.unwrap_or_else(|| CodingMatrix {
            label: CodingLabel::Identity,
            matrix: identity(plane.spin().dim()),
        });
        Ok(Self { target, plane, coding, v_end })
    }

    pub fn path(&self) -> RotationPath {
        segment_path(self.v_end)
    }

    pub fn is_coded(&self) -> bool {
        self.coding.label != CodingLabel::Identity
    }

    /// Numerically integrated holonomy along `path`.
    pub fn run(&self, path: &RotationPath, steps: usize) -> Result<HolonomyResult> {
        let coding = self.is_coded().then_some(&self.coding.matrix);
        transported_holonomy(&self.plane, coding, path, steps)
    }

    /// Endpoint formula on the coded plane, re-expressed in the original frame.
    pub fn closed_form(&self, tol: f64) -> Result<HolonomyResult> {
        if !self.is_coded() {
            return closed_form_holonomy(&self.plane, &self.v_end, tol);
        }
        let encoded = self.plane.transformed(&self.coding.matrix)?;
        closed_form_holonomy(&encoded, &self.v_end, tol)
    }
}

/// Record of one synthesized gate against its target.
#[derive(Debug, Clone)]
pub struct GateVerdict {
    pub target: String,
    pub expected: CMatrix,
    pub achieved: CMatrix,
    pub distance: f64,
    pub up_to_phase: bool,
    pub path: String,
    pub coding: String,
    pub tolerance: f64,
    pub pass: bool,
}

pub fn verdict(recipe: &GateRecipe, path: &RotationPath, achieved: CMatrix, tolerance: f64) -> Result<GateVerdict> {
    let expected = recipe.target.matrix()?;
    let distance = gate_distance(&achieved, &expected, false)?;
    Ok(GateVerdict {
        target: recipe.target.name(),
        expected,
        achieved,
        distance,
        up_to_phase: false,
        path: path.descriptor(),
        coding: recipe.coding.label.to_string(),
        tolerance,
        pass: distance < tolerance,
    })
}

/// `max(‖M†M − I‖, ‖MM† − I‖)`, for invariants that need both sides.
pub fn orthogonality_residual(m: &CMatrix) -> f64 {
    unitarity_residual(m).max(unitarity_residual(&m.adjoint()))
}
