//! Named verification pipelines and the rotational curves they exercise.

use std::f64::consts::{FRAC_PI_2, PI};

use serde_json::json;
use tqc_core::gates::{
    coded_curve_holonomy, coding_c, coding_c1, computational_plane, hadamard_basis_change, toffoli_basis_change,
    CodingMatrix, GateRecipe, GateTarget,
};
use tqc_core::holonomy::{closed_form_holonomy, segment_path, transported_holonomy, HolonomyResult, RotationPath};
use tqc_core::linalg::{direct_sum, identity, max_abs, pauli_z, CMatrix};
use tqc_core::planes::{
    anticoherence_residual, plane_from_states, plane_pi1, plane_pi2, subspace_distance, KPlane,
};
use tqc_core::states::SpinState;
use tqc_core::{RotationVector, Spin};

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::report::Check;

/// Algebraic identities.
pub const TOL_EXACT: f64 = 1e-12;
/// Closed-form holonomies and analytic residuals on spin-15 planes.
pub const TOL_CLOSED: f64 = 1e-10;
/// Vanishing connection and closure.
pub const TOL_CONNECTION: f64 = 1e-8;
/// Numerically integrated holonomies.
pub const TOL_NUMERIC: f64 = 1e-6;
/// Smallest deviation that counts as path dependence.
pub const PATH_DEPENDENCE: f64 = 1e-3;

pub const VERIFY_SCENARIOS: [&str; 8] = [
    "not_gate_s3",
    "gen_toffoli_k4_s6",
    "gen_toffoli_k5_s8",
    "pi1_symmetries",
    "pi2_toffoli",
    "hadamard_h3",
    "coded_toffoli",
    "universality_set",
];

/// Scenarios accepted by `robustness` beyond the verify list.
pub const NEGATIVE_SCENARIOS: [&str; 1] = ["coherent_control"];

/// A closed rotational curve on a plane, optionally coded, with its target.
#[derive(Debug, Clone)]
pub struct PathCase {
    pub label: String,
    pub plane: KPlane,
    pub coding: Option<CodingMatrix>,
    pub v_end: RotationVector,
    pub expected: Option<CMatrix>,
    /// Tolerance for the endpoint formula against `expected`.
    pub closed_tolerance: f64,
}

impl PathCase {
    pub fn from_recipe(label: impl Into<String>, recipe: GateRecipe, closed_tolerance: f64) -> CliResult<Self> {
        let coding = recipe.is_coded().then(|| recipe.coding.clone());
        Ok(Self {
            label: label.into(),
            expected: Some(recipe.target.matrix()?),
            plane: recipe.plane,
            coding,
            v_end: recipe.v_end,
            closed_tolerance,
        })
    }

    pub fn plain(label: impl Into<String>, plane: KPlane, v_end: RotationVector, expected: Option<CMatrix>) -> Self {
        Self { label: label.into(), plane, coding: None, v_end, expected, closed_tolerance: TOL_CLOSED }
    }

    pub fn segment(&self) -> RotationPath {
        segment_path(self.v_end)
    }

    pub fn run(&self, path: &RotationPath, steps: usize) -> CliResult<HolonomyResult> {
        let coding = self.coding.as_ref().map(|c| &c.matrix);
        Ok(transported_holonomy(&self.plane, coding, path, steps)?)
    }

    /// Endpoint formula on the (coded) plane.
    pub fn closed_form(&self) -> CliResult<HolonomyResult> {
        let plane = match &self.coding {
            Some(c) => self.plane.transformed(&c.matrix)?,
            None => self.plane.clone(),
        };
        Ok(closed_form_holonomy(&plane, &self.v_end, TOL_CLOSED)?)
    }

    pub fn coding_label(&self) -> String {
        self.coding.as_ref().map_or_else(|| "I".to_string(), |c| c.label.to_string())
    }
}

/// `span{|2,2⟩, |2,1⟩}`: symmetric under every z-rotation but coherent.
pub fn coherent_control_plane() -> KPlane {
    let spin = Spin::integer(2);
    plane_from_states(&[SpinState::basis(spin, 4).expect("m = 2"), SpinState::basis(spin, 2).expect("m = 1")])
        .expect("orthonormal")
}

fn sigma_z4() -> CMatrix {
    direct_sum(&vec![pauli_z(); 4]).expect("square")
}

/// Every closed curve a scenario integrates, in report order.
pub fn path_cases(scenario: &str) -> CliResult<Vec<PathCase>> {
    let recipe = |t: GateTarget| GateRecipe::for_target(t).map_err(CliError::from);
    Ok(match scenario {
        "not_gate_s3" => vec![PathCase::from_recipe("NOT s=3", recipe(GateTarget::Not)?, TOL_EXACT)?],
        "gen_toffoli_k4_s6" => vec![PathCase::from_recipe(
            "GENERALIZED_TOFFOLI k=4 s=6",
            recipe(GateTarget::GeneralizedToffoli(4))?,
            TOL_EXACT,
        )?],
        "gen_toffoli_k5_s8" => vec![PathCase::from_recipe(
            "GENERALIZED_TOFFOLI k=5 s=8",
            recipe(GateTarget::GeneralizedToffoli(5))?,
            TOL_EXACT,
        )?],
        "pi1_symmetries" => {
            let p = plane_pi1();
            vec![
                PathCase::plain("Pi1 z n=1", p.clone(), RotationVector::about_z(FRAC_PI_2), Some(sigma_z4())),
                PathCase::plain("Pi1 z n=2", p.clone(), RotationVector::about_z(PI), Some(identity(8))),
                PathCase::plain("Pi1 z n=3", p.clone(), RotationVector::about_z(3.0 * FRAC_PI_2), Some(sigma_z4())),
                PathCase::plain("Pi1 pi y", p, RotationVector::about_y(PI), Some(-identity(8))),
            ]
        }
        "pi2_toffoli" => {
            let u_t = direct_sum(&[identity(6), pauli_z()])?;
            vec![PathCase::plain("Pi2 pi z", plane_pi2(), RotationVector::about_z(PI), Some(u_t))]
        }
        "hadamard_h3" => vec![PathCase::from_recipe("H3", recipe(GateTarget::H3)?, TOL_CLOSED)?],
        "coded_toffoli" => vec![PathCase::from_recipe("TOFFOLI8 coded", recipe(GateTarget::Toffoli8)?, TOL_CLOSED)?],
        "universality_set" => {
            let mut cases = Vec::new();
            for q in 1..=3 {
                for target in [GateTarget::HadamardOn(q), GateTarget::PermutedToffoli(q)] {
                    cases.push(PathCase::from_recipe(target.name(), recipe(target)?, TOL_CLOSED)?);
                }
            }
            cases
        }
        "coherent_control" => {
            vec![PathCase::plain("coherent pi z", coherent_control_plane(), RotationVector::about_z(PI), None)]
        }
        other => return Err(CliError::UnknownScenario(other.to_string())),
    })
}

/// Anticoherence, endpoint formula, integration and connection checks for one curve.
fn case_checks(case: &PathCase, steps: usize) -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    let label = &case.label;
    let path = case.segment();
    let details = json!({ "path": path.descriptor(), "coding": case.coding_label(), "steps": steps });

    let encoded = match &case.coding {
        Some(c) => case.plane.transformed(&c.matrix)?,
        None => case.plane.clone(),
    };
    checks.push(Check::below(format!("{label}: anticoherence residual"), anticoherence_residual(&encoded), TOL_EXACT));

    let numeric = case.run(&path, steps)?;
    if let Some(expected) = &case.expected {
        let closed = case.closed_form()?;
        checks.push(
            Check::matrix(format!("{label}: closed-form holonomy"), expected, &closed.u, case.closed_tolerance)?
                .with_details(json!({ "path": path.descriptor(), "coding": case.coding_label() })),
        );
        checks.push(
            Check::matrix(format!("{label}: numeric holonomy"), expected, &numeric.u, TOL_NUMERIC)?
                .with_details(details.clone()),
        );
    }
    checks.push(
        Check::below(format!("{label}: max connection norm"), numeric.max_connection_norm, TOL_CONNECTION)
            .with_details(details),
    );
    Ok(checks)
}

pub fn verify_checks(config: &RunConfig) -> CliResult<Vec<Check>> {
    let scenario = config.scenario.as_str();
    if !VERIFY_SCENARIOS.contains(&scenario) {
        return Err(CliError::UnknownScenario(scenario.to_string()));
    }
    let mut checks = Vec::new();
    for case in path_cases(scenario)? {
        checks.extend(case_checks(&case, config.steps)?);
    }
    match scenario {
        "pi1_symmetries" => {
            // −I₈ is the physically trivial holonomy
            let half_turn = closed_form_holonomy(&plane_pi1(), &RotationVector::about_y(PI), TOL_CLOSED)?;
            checks.push(Check::matrix_with_phase(
                "Pi1 pi y: trivial up to phase",
                &identity(8),
                &half_turn.u,
                TOL_CLOSED,
                true,
            )?);
        }
        "pi2_toffoli" => {
            let u_t = closed_form_holonomy(&plane_pi2(), &RotationVector::about_z(PI), TOL_CLOSED)?.u;
            let v = toffoli_basis_change();
            checks.push(Check::matrix(
                "V U_T V^dagger = TOFFOLI8",
                &GateTarget::Toffoli8.matrix()?,
                &(&v * u_t * v.adjoint()),
                TOL_EXACT,
            )?);
            let image = plane_pi1().transformed(&coding_c1().matrix)?;
            checks.push(Check::below("C1(Pi1) = Pi2", subspace_distance(&image, &plane_pi2())?, TOL_EXACT));
        }
        "hadamard_h3" => {
            let u_h = closed_form_holonomy(&plane_pi1(), &RotationVector::about_z(FRAC_PI_2), TOL_CLOSED)?.u;
            let m = hadamard_basis_change();
            checks.push(Check::matrix("M U_H M^dagger = H3", &GateTarget::H3.matrix()?, &(&m * u_h * m.adjoint()), TOL_EXACT)?);
            let distance = subspace_distance(&computational_plane(), &plane_pi1())?;
            checks.push(Check::below("computational basis spans Pi1", distance, TOL_EXACT));
        }
        "coded_toffoli" => {
            let image = plane_pi1().transformed(&coding_c().matrix)?;
            checks.push(Check::below("C(Pi1) = Pi2", subspace_distance(&image, &plane_pi2())?, TOL_EXACT));
            checks.extend(c1_only_checks(config.steps)?);
        }
        _ => {}
    }
    Ok(checks)
}

/// With `C₁` alone the coded curve misses the Toffoli gate, and only in the
/// `{|110⟩, |111⟩}` block.
pub fn c1_only_checks(steps: usize) -> CliResult<Vec<Check>> {
    let path = segment_path(RotationVector::about_z(PI));
    let result = coded_curve_holonomy(&coding_c1(), &path, steps)?;
    let diff = &result.u - GateTarget::Toffoli8.matrix()?;
    let block = max_abs(&diff.view((6, 6), (2, 2)).into_owned());
    let mut rest = diff.clone();
    rest.view_mut((6, 6), (2, 2)).fill(tqc_core::linalg::re(0.0));
    let details = json!({ "path": path.descriptor(), "coding": "C1", "steps": steps });
    Ok(vec![
        Check::above("C1 only: defect in the |110>,|111> block", block, 1e-2).with_details(details.clone()),
        Check::below("C1 only: agreement outside that block", max_abs(&rest), TOL_NUMERIC).with_details(details),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_scenario_resolves() {
        for s in VERIFY_SCENARIOS.iter().chain(NEGATIVE_SCENARIOS.iter()) {
            assert!(!path_cases(s).unwrap().is_empty(), "{s}");
        }
        assert!(matches!(path_cases("nope"), Err(CliError::UnknownScenario(_))));
    }

    #[test]
    fn coherent_plane_is_closed_under_the_half_turn() {
        let p = coherent_control_plane();
        let (ok, _) = tqc_core::planes::is_symmetric_under(&p, &RotationVector::about_z(PI), 1e-12);
        assert!(ok);
        assert!(anticoherence_residual(&p) >= 1.0);
    }
}
