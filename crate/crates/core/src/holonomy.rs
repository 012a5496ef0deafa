//! Rotation paths, the Wilczek–Zee connection, and holonomies of rotated
//! k-planes, both from the endpoint overlap alone and by integrating the
//! path-ordered exponential.
//!
//! A frame `ψᵢ(t) = D(v(t)) ψᵢ` has connection `𝒜ᵢⱼ = ⟨ψᵢ(t)|ψ̇ⱼ(t)⟩`.
//! The horizontal lift solves `Ḃ = −𝒜 B`, `B(0) = I`, with later times
//! composed on the left, and the holonomy is `U = W B(1)` where
//! `W = ⟨ψᵢ(0)|ψⱼ(1)⟩`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::{Quaternion, Vector3};

use crate::error::{Result, TqcError};
use crate::linalg::{
    exp_i_hermitian, identity, max_abs, max_abs_diff, nearest_unitary, unitarity_residual, c, CMatrix,
};
use crate::planes::{anticoherence_residual_with, is_symmetric_under, KPlane};
use crate::spin::{RotationKernel, RotationVector, SpinOperators};

/// Default number of integration steps.
pub const DEFAULT_STEPS: usize = 1000;

/// Largest admissible rotation-vector norm.
pub const CHART_RADIUS: f64 = 2.0 * PI;

/// A curve is closed when `‖P(1) − P(0)‖_max` is below this.
pub const CLOSURE_TOL: f64 = 1e-8;

/// Minimum accepted step count for [`numeric_holonomy`].
pub const MIN_STEPS: usize = 10;

/// Default finite-difference step for [`wz_connection`].
pub const DEFAULT_FD_STEP: f64 = 1e-6;

const UNITARITY_DRIFT: f64 = 1e-10;

/// A monotone map of `[0,1]` onto itself.
#[derive(Clone)]
pub enum MonotoneMap {
    Identity,
    /// `t²`
    Quadratic,
    /// `sin(πt/2)`
    SineQuarter,
    /// `3t² − 2t³`
    SmoothStep,
    Custom { name: String, f: Arc<dyn Fn(f64) -> f64 + Send + Sync> },
}

impl MonotoneMap {
    pub fn custom(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::Custom { name: name.into(), f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        match self {
            Self::Identity => "identity",
            Self::Quadratic => "t^2",
            Self::SineQuarter => "sin(pi t/2)",
            Self::SmoothStep => "smoothstep",
            Self::Custom { name, .. } => name,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Self::Identity => t,
            Self::Quadratic => t * t,
            Self::SineQuarter => (0.5 * PI * t).sin(),
            Self::SmoothStep => t * t * (3.0 - 2.0 * t),
            Self::Custom { f, .. } => f(t),
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match self {
            Self::Identity => 1.0,
            Self::Quadratic => 2.0 * t,
            Self::SineQuarter => 0.5 * PI * (0.5 * PI * t).cos(),
            Self::SmoothStep => 6.0 * t * (1.0 - t),
            Self::Custom { f, .. } => {
                let h = 1e-5;
                let (lo, hi) = ((t - h).max(0.0), (t + h).min(1.0));
                (f(hi) - f(lo)) / (hi - lo)
            }
        }
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonotoneMap({})", self.name())
    }
}

/// A curve `t ↦ v(t)` of rotation vectors with `v(0) = 0`.
#[derive(Debug, Clone)]
pub enum RotationPath {
    /// `v(t) = t·v_end`
    Segment { end: Vector3<f64> },
    /// `v(t) = inner(t) + Σₙ cₙ sin(nπt)`, harmonic `n = index + 1`.
    Deformed { inner: Box<RotationPath>, harmonics: Vec<[f64; 3]> },
    /// `v(t) = inner(f(t))`
    Reparametrized { inner: Box<RotationPath>, map: MonotoneMap },
}

impl RotationPath {
    pub fn sample(&self, t: f64) -> RotationVector {
        RotationVector(self.point(t))
    }

    fn point(&self, t: f64) -> Vector3<f64> {
        match self {
            Self::Segment { end } => end * t,
            Self::Deformed { inner, harmonics } => {
                let mut v = inner.point(t);
                for (idx, amp) in harmonics.iter().enumerate() {
                    let w = harmonic(idx + 1, t);
                    v += Vector3::from(*amp) * w;
                }
                v
            }
            Self::Reparametrized { inner, map } => inner.point(map.eval(t)),
        }
    }

    /// `dv/dt`.
    pub fn velocity(&self, t: f64) -> Vector3<f64> {
        match self {
            Self::Segment { end } => *end,
            Self::Deformed { inner, harmonics } => {
                let mut v = inner.velocity(t);
                for (idx, amp) in harmonics.iter().enumerate() {
                    let n = (idx + 1) as f64;
                    v += Vector3::from(*amp) * (n * PI * (n * PI * t).cos());
                }
                v
            }
            Self::Reparametrized { inner, map } => inner.velocity(map.eval(t)) * map.derivative(t),
        }
    }

    pub fn end(&self) -> RotationVector {
        self.sample(1.0)
    }

    /// Largest `‖v(tₙ₊₁) − v(tₙ)‖` on a uniform grid of `n` intervals.
    pub fn max_grid_step(&self, n: usize) -> f64 {
        (0..n)
            .map(|i| (self.point((i + 1) as f64 / n as f64) - self.point(i as f64 / n as f64)).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|v(t)|` on a uniform grid of `n` intervals.
    pub fn max_norm(&self, n: usize) -> (f64, f64) {
        (0..=n)
            .map(|i| {
                let t = i as f64 / n as f64;
                (t, self.point(t).norm())
            })
            .fold((0.0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best })
    }

    pub fn descriptor(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for RotationPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Segment { end } => write!(f, "segment([{}, {}, {}])", end.x, end.y, end.z),
            Self::Deformed { inner, harmonics } => {
                write!(f, "deformed({inner}, [")?;
                for (i, h) in harmonics.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "[{}, {}, {}]", h[0], h[1], h[2])?;
                }
                write!(f, "])")
            }
            Self::Reparametrized { inner, map } => write!(f, "reparametrized({inner}, {})", map.name()),
        }
    }
}

/// `sin(nπt)`, evaluated from the nearer endpoint so it vanishes exactly at both.
fn harmonic(n: usize, t: f64) -> f64 {
    let nf = n as f64;
    if t <= 0.5 {
        (nf * PI * t).sin()
    } else {
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        sign * (nf * PI * (1.0 - t)).sin()
    }
}

/// `v(t) = t·v_end`. Callers keep `|v_end| ≤ 2π`.
pub fn segment_path(v_end: RotationVector) -> RotationPath {
    RotationPath::Segment { end: v_end.0 }
}

/// `v'(t) = v(f(t))`; `f` must fix 0 and 1 and be non-decreasing on the
/// default sample grid.
pub fn reparametrize(path: &RotationPath, map: MonotoneMap) -> Result<RotationPath> {
    let n = DEFAULT_STEPS;
    if map.eval(0.0).abs() > 1e-12 || (map.eval(1.0) - 1.0).abs() > 1e-12 {
        return Err(TqcError::NonMonotone(format!("{} does not fix the endpoints", map.name())));
    }
    let mut prev = map.eval(0.0);
    for i in 1..=n {
        let t = i as f64 / n as f64;
        let cur = map.eval(t);
        if !cur.is_finite() || cur < prev {
            return Err(TqcError::NonMonotone(format!("{} decreases near t = {t}", map.name())));
        }
        prev = cur;
    }
    Ok(RotationPath::Reparametrized { inner: Box::new(path.clone()), map })
}

/// Adds `Σₙ cₙ sin(nπt)` per component. Rejects deformations that leave
/// the `|v| ≤ 2π` chart anywhere on the sample grid.
pub fn deform(path: &RotationPath, harmonics: &[[f64; 3]]) -> Result<RotationPath> {
    if harmonics.iter().flatten().any(|x| !x.is_finite()) {
        return Err(TqcError::NonFinite("deformation coefficients"));
    }
    let deformed = RotationPath::Deformed { inner: Box::new(path.clone()), harmonics: harmonics.to_vec() };
    let (t, norm) = deformed.max_norm(DEFAULT_STEPS);
    if norm > CHART_RADIUS + 1e-12 {
        return Err(TqcError::ChartGuard { t, norm });
    }
    Ok(deformed)
}

/// Space-frame angular velocity `ω` with `Ḋ D† = −i ω·S`.
///
/// Computed exactly in SU(2): for `q(v) = (cos(θ/2), sin(θ/2) v̂)`,
/// `ω = 2 vec(q̇ q̄)`. The spin-1/2 relation carries over to every spin.
pub fn angular_velocity(v: &Vector3<f64>, v_dot: &Vector3<f64>) -> Vector3<f64> {
    let theta = v.norm();
    let v_dot_v = v.dot(v_dot);
    // f = sin(θ/2)/θ, g = f'(θ)/θ
    let (f, g) = if theta < 1e-3 {
        let t2 = theta * theta;
        (0.5 - t2 / 48.0 + t2 * t2 / 3840.0, -1.0 / 24.0 + t2 / 960.0)
    } else {
        let (s, co) = (0.5 * theta).sin_cos();
        (s / theta, (0.5 * theta * co - s) / (theta * theta * theta))
    };
    let q = Quaternion::from_parts((0.5 * theta).cos(), v * f);
    let q_dot = Quaternion::from_parts(-0.5 * f * v_dot_v, v_dot * f + v * (g * v_dot_v));
    (q_dot * q.conjugate()).vector().into_owned() * 2.0
}

/// Output of a holonomy evaluation.
#[derive(Debug, Clone)]
pub struct HolonomyResult {
    /// `k×k` holonomy.
    pub u: CMatrix,
    /// Overlap matrix `⟨ψᵢ(0)|ψⱼ(1)⟩`.
    pub w: CMatrix,
    /// Largest `‖𝒜(t)‖_max` seen along the curve.
    pub max_connection_norm: f64,
    /// Integration steps; zero for the endpoint formula.
    pub steps: usize,
    /// `‖P(1) − P(0)‖_max`.
    pub closure_residual: f64,
}

/// Rotates every frame vector by `D(v)`.
pub fn rotate_frame(p: &KPlane, v: &RotationVector) -> Vec<crate::states::SpinState> {
    let d = SpinOperators::new(p.spin()).rotation(v);
    p.transformed(&d).expect("rotations are unitary").states()
}

/// Endpoint formula `Uᵢⱼ = ⟨ψᵢ|D(v_end)|ψⱼ⟩`, valid when `p` is
/// anticoherent and `v_end` is one of its symmetries.
pub fn closed_form_holonomy(p: &KPlane, v_end: &RotationVector, tol: f64) -> Result<HolonomyResult> {
    let ops = SpinOperators::new(p.spin());
    let anticoherence = anticoherence_residual_with(p, &ops);
    if anticoherence >= tol {
        return Err(TqcError::NotAnticoherent { residual: anticoherence });
    }
    let (symmetric, closure_residual) = is_symmetric_under(p, v_end, tol);
    if !symmetric {
        return Err(TqcError::NotSymmetric { residual: closure_residual });
    }
    let f = p.frame();
    let w = f.adjoint() * ops.rotation(v_end) * f;
    // constant axis: 𝒜 ∝ ⟨ψᵢ|v̂·S|ψⱼ⟩
    let max_connection_norm = v_end
        .axis()
        .map_or(0.0, |axis| max_abs(&(f.adjoint() * ops.dot(&axis) * f)));
    Ok(HolonomyResult { u: w.clone(), w, max_connection_norm, steps: 0, closure_residual })
}

/// `𝒜(t)` by central differences of the rotated frames, anti-Hermitized.
/// Near the ends of `[0,1]` the stencil is clipped to stay inside.
pub fn wz_connection(p: &KPlane, path: &RotationPath, t: f64, dt: f64) -> CMatrix {
    let ops = SpinOperators::new(p.spin());
    let frame_at = |s: f64| ops.rotation(&path.sample(s)) * p.frame();
    let (lo, hi) = ((t - dt).max(0.0), (t + dt).min(1.0));
    let derivative = (frame_at(hi) - frame_at(lo)) / c(hi - lo, 0.0);
    let a = frame_at(t).adjoint() * derivative;
    (&a - a.adjoint()) * c(0.5, 0.0)
}

/// `𝒜(t) = F(t)† (−i ω(t)·S) F(t)` for the frame `F(t) = D(v(t)) F₀`.
pub fn wz_connection_analytic(p: &KPlane, path: &RotationPath, t: f64) -> CMatrix {
    let kernel = RotationKernel::new(p.spin());
    let frame = kernel.apply(&path.sample(t), p.frame());
    connection_of(&kernel, &frame, path, t)
}

fn connection_of(kernel: &RotationKernel, rotated: &CMatrix, path: &RotationPath, t: f64) -> CMatrix {
    let omega = angular_velocity(&path.point(t), &path.velocity(t));
    rotated.adjoint() * kernel.generator_apply(&omega, rotated) * c(0.0, -1.0)
}

/// Holonomy of `t ↦ D(v(t))(Π)` by integrating the path-ordered exponential.
pub fn numeric_holonomy(p: &KPlane, path: &RotationPath, steps: usize) -> Result<HolonomyResult> {
    transported_holonomy(p, None, path, steps)
}

/// Holonomy of the coded curve `t ↦ C† D(v(t)) C (Π)`.
///
/// With `coding = None` this is [`numeric_holonomy`]. The frame is
/// `ψᵢ(t) = C† D(v(t)) C ψᵢ`, so its connection is that of the rotated
/// frame `D(v(t)) C ψᵢ`.
pub fn transported_holonomy(
    p: &KPlane,
    coding: Option<&CMatrix>,
    path: &RotationPath,
    steps: usize,
) -> Result<HolonomyResult> {
    if steps < MIN_STEPS {
        return Err(TqcError::TooFewSteps { min: MIN_STEPS, got: steps });
    }
    let n = p.spin().dim();
    if let Some(code) = coding {
        if code.shape() != (n, n) {
            return Err(TqcError::DimensionMismatch { left: (n, n), right: code.shape() });
        }
        let residual = unitarity_residual(code);
        if residual > 1e-10 {
            return Err(TqcError::NotUnitary { residual });
        }
    }
    let f0 = p.frame();
    let encoded = match coding {
        Some(code) => code * f0,
        None => f0.clone(),
    };
    let decode = |m: CMatrix| -> CMatrix {
        match coding {
            Some(code) => code.adjoint() * m,
            None => m,
        }
    };

    let kernel = RotationKernel::new(p.spin());
    let final_frame = decode(kernel.apply(&path.end(), &encoded));
    let closure_residual = max_abs_diff(&(&final_frame * final_frame.adjoint()), p.projector());
    if !(closure_residual < CLOSURE_TOL) {
        return Err(TqcError::OpenCurve { residual: closure_residual });
    }
    let w = f0.adjoint() * &final_frame;

    let k = p.k();
    let dt = 1.0 / steps as f64;
    let mut transport = identity(k);
    let mut max_connection_norm: f64 = 0.0;
    for step in 0..steps {
        let t = (step as f64 + 0.5) * dt;
        let rotated = kernel.apply(&path.sample(t), &encoded);
        let a = connection_of(&kernel, &rotated, path, t);
        max_connection_norm = max_connection_norm.max(max_abs(&a));
        // exp(−𝒜Δt) = exp(i (i𝒜) Δt) with i𝒜 Hermitian
        let generator = &a * c(0.0, 1.0);
        let generator = (&generator + generator.adjoint()) * c(0.5, 0.0);
        transport = exp_i_hermitian(&generator, dt) * transport;
    }

    let mut u = &w * &transport;
    if unitarity_residual(&u) > UNITARITY_DRIFT {
        u = nearest_unitary(&u);
    }
    Ok(HolonomyResult { u, w, max_connection_norm, steps, closure_residual })
}
