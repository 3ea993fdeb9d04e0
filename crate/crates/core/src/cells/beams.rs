//! Deterministic beam fitting for a fixed association.
//!
//! Each UE points at its serving virtual BS with its narrowest allowed beam.
//! Each serving virtual BS points at the middle of the smallest arc that
//! contains all of its UEs and opens exactly that arc, clamped to its
//! allowed range. Virtual BSs without UEs are silent.
//!
//! Besides that fitted configuration, the evaluator also considers falling
//! back to omnidirectional beams at the BS side, the UE side, or both. Those
//! fallbacks are feasible in every mode, which makes the optimum of a
//! restricted mode never exceed the optimum of a less restricted one.

use crate::model::antenna::wrap_angle;
use crate::model::Beam;
use crate::scalar::Scalar;

use super::gains::BeamConfig;
use super::problem::CellFormationProblem;

/// Extra width added to a fitted BS beam so UEs on the arc's edges stay
/// in-lobe after rounding.
pub const FIT_SLACK_RAD: f64 = 1e-9;

/// Smallest arc containing all `angles`, as `(center, width)`.
pub fn covering_arc<T: Scalar>(angles: &[T]) -> Option<(T, T)> {
    let mut sorted: Vec<T> = angles.iter().map(|&a| wrap_angle(a)).collect();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
    let n = sorted.len();
    if n == 0 {
        return None;
    }
    // Largest empty gap; the arc is its complement.
    let mut best_gap = sorted[0] + T::TAU() - sorted[n - 1];
    let mut start = sorted[0];
    for k in 0..n - 1 {
        let gap = sorted[k + 1] - sorted[k];
        if gap > best_gap {
            best_gap = gap;
            start = sorted[k + 1];
        }
    }
    let width = T::TAU() - best_gap;
    Some((wrap_angle(start + width / T::lit(2.0)), width))
}

/// Fitted beams of the serving virtual BSs; `None` for idle ones.
pub fn fit_bs_beams<T: Scalar>(problem: &CellFormationProblem<T>, serving: &[usize]) -> Vec<Option<Beam<T>>> {
    let floor = problem.bs_min_beamwidth();
    let mut angles: Vec<Vec<T>> = vec![Vec::new(); problem.num_virtual_bs()];
    for (j, &i) in serving.iter().enumerate() {
        angles[i].push(problem.zeta_b()[(i, j)]);
    }
    angles
        .iter()
        .map(|a| {
            let (center, arc) = covering_arc(a)?;
            let width = (arc + T::lit(FIT_SLACK_RAD)).max(floor).min(T::TAU());
            Some(Beam::new(width, center).expect("width clamped into (0, 2π]"))
        })
        .collect()
}

/// UE beams aimed at their servers at the narrowest allowed width.
pub fn fit_ue_beams<T: Scalar>(problem: &CellFormationProblem<T>, serving: &[usize]) -> Vec<Beam<T>> {
    let width = problem.ue_min_beamwidth();
    serving
        .iter()
        .enumerate()
        .map(|(j, &i)| {
            if width >= T::TAU() {
                Beam::omni()
            } else {
                Beam::new(width, problem.zeta_u()[(i, j)]).expect("valid floor")
            }
        })
        .collect()
}

/// The beam-fitting rule's configuration for `serving`.
pub fn fit_beams<T: Scalar>(problem: &CellFormationProblem<T>, serving: &[usize]) -> BeamConfig<T> {
    BeamConfig {
        bs: fit_bs_beams(problem, serving),
        ue: fit_ue_beams(problem, serving),
    }
}

/// Which side of a candidate configuration keeps its fitted beams; the
/// other side goes omnidirectional.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct CandidateKind {
    pub bs_fitted: bool,
    pub ue_fitted: bool,
}

/// The fitted configuration plus the list of fitted/omni combinations
/// worth trying for one association.
#[derive(Debug, Clone)]
pub(crate) struct Candidates<T> {
    pub fitted: BeamConfig<T>,
    pub kinds: Vec<CandidateKind>,
}

impl<T: Scalar> Candidates<T> {
    pub fn config(&self, kind: CandidateKind) -> BeamConfig<T> {
        BeamConfig {
            bs: if kind.bs_fitted {
                self.fitted.bs.clone()
            } else {
                self.fitted.bs.iter().map(|b| b.map(|_| Beam::omni())).collect()
            },
            ue: if kind.ue_fitted {
                self.fitted.ue.clone()
            } else {
                vec![Beam::omni(); self.fitted.ue.len()]
            },
        }
    }
}

/// Fitted configuration followed by its omnidirectional fallbacks, without
/// duplicates. Order matters: earlier candidates win ties.
pub(crate) fn candidates<T: Scalar>(problem: &CellFormationProblem<T>, serving: &[usize]) -> Candidates<T> {
    let fitted = fit_beams(problem, serving);
    let omni_bs_differs = fitted.bs.iter().any(|b| b.is_some_and(|b| b != Beam::omni()));
    let omni_ue_differs = fitted.ue.iter().any(|b| *b != Beam::omni());

    let mut bs_options = vec![true];
    if problem.bs_min_beamwidth() < T::TAU() && omni_bs_differs {
        bs_options.push(false);
    }
    let mut ue_options = vec![true];
    if problem.ue_min_beamwidth() < T::TAU() && omni_ue_differs {
        ue_options.push(false);
    }
    let kinds = bs_options
        .iter()
        .flat_map(|&bs_fitted| ue_options.iter().map(move |&ue_fitted| CandidateKind { bs_fitted, ue_fitted }))
        .collect();
    Candidates { fitted, kinds }
}

pub(crate) fn candidate_configs<T: Scalar>(problem: &CellFormationProblem<T>, serving: &[usize]) -> Vec<BeamConfig<T>> {
    let c = candidates(problem, serving);
    c.kinds.iter().map(|&k| c.config(k)).collect()
}
