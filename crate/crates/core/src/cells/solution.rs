//! Evaluating an association: beams, shares, rates and objective.

use crate::error::{Error, Result};
use crate::model::Beam;
use crate::scalar::Scalar;

use super::beams::{candidate_configs, candidates, Candidates};
use super::gains::{directivity_gains, rate_matrix, received_power, shannon_rate, sinr_matrix, BeamConfig};
use super::matrix::Matrix;
use super::metrics::{loads, objective, Metrics};
use super::problem::{CellFormationProblem, UtilityKind};

/// Rates below this are floored inside the logarithm during search.
pub const RATE_FLOOR: f64 = 1e-12;

/// Binary association plus resource shares.
#[derive(Debug, Clone, PartialEq)]
pub struct Association<T = f64> {
    /// Serving virtual BS of each UE (`x_ij = 1` iff `serving[j] == i`).
    pub serving: Vec<usize>,
    /// `y_ij`, `(virtual BS, UE)`.
    pub shares: Matrix<T>,
}

impl<T: Scalar> Association<T> {
    /// Equal split of every beam among its UEs.
    pub fn equal_shares(serving: Vec<usize>, num_bs: usize) -> Self {
        let load = loads(&serving, num_bs);
        let mut shares = Matrix::filled(num_bs, serving.len(), T::zero());
        for (j, &i) in serving.iter().enumerate() {
            shares[(i, j)] = T::one() / T::from_usize_lossy(load[i]);
        }
        Self { serving, shares }
    }

    pub fn x(&self, i: usize, j: usize) -> bool {
        self.serving[j] == i
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution<T = f64> {
    pub beams: BeamConfig<T>,
    pub association: Association<T>,
    pub sinr: Matrix<T>,
    /// Achievable link rates `c_ij`, bit/s/Hz.
    pub link_rates: Matrix<T>,
    /// Long-term UE rates `r_j = Σ_i y_ij c_ij`.
    pub ue_rates: Vec<T>,
    pub objective: T,
    pub metrics: Metrics<T>,
}

impl<T: Scalar> Solution<T> {
    /// Check shares, association, minimum rates and beam bounds against
    /// `problem`.
    pub fn verify(&self, problem: &CellFormationProblem<T>) -> Result<()> {
        let (nb, nu) = (problem.num_virtual_bs(), problem.num_ues());
        let a = &self.association;
        let tol = T::lit(1e-9);
        if a.serving.len() != nu || a.serving.iter().any(|&i| i >= nb) {
            return Err(Error::InvalidParameter("every UE must be associated with exactly one virtual BS".into()));
        }
        for i in 0..nb {
            let total = a.shares.row(i).iter().fold(T::zero(), |acc, &y| acc + y);
            if total > T::one() + tol {
                return Err(Error::InvalidParameter(format!("virtual BS {i} hands out {total} of its resources")));
            }
            for j in 0..nu {
                let y = a.shares[(i, j)];
                let x = if a.x(i, j) { T::one() } else { T::zero() };
                if y < T::zero() || y > x {
                    return Err(Error::InvalidParameter(format!("share y[{i},{j}] = {y} violates 0 <= y <= x")));
                }
            }
        }
        let violators: Vec<usize> = (0..nu).filter(|&j| self.ue_rates[j] < problem.min_rates()[j]).collect();
        if !violators.is_empty() {
            return Err(Error::Infeasible { ues: violators });
        }
        for j in 0..nu {
            let r = (0..nb).fold(T::zero(), |acc, i| acc + a.shares[(i, j)] * self.link_rates[(i, j)]);
            if (r - self.ue_rates[j]).abs() > tol * (T::one() + r.abs()) {
                return Err(Error::InvalidParameter(format!("UE {j} rate inconsistent with shares")));
            }
        }
        self.beams.validate(problem)
    }
}

/// Search-time summary of one association under one beam configuration.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Scored<T> {
    /// Σ_j max(0, r_min_j − r_j).
    pub violation: T,
    /// Objective with rates floored at [`RATE_FLOOR`].
    pub utility: T,
    pub config_index: usize,
}

impl<T: Scalar> Scored<T> {
    /// Lexicographic: less violation first, then higher utility.
    pub fn better_than(&self, other: &Self) -> bool {
        if self.violation != other.violation {
            self.violation < other.violation
        } else {
            self.utility > other.utility
        }
    }
}

/// Equal-share UE rates for `serving` under every candidate, computing
/// SINR only on the serving links. Lobe membership is shared by all
/// candidates, so it is worked out once per link.
fn candidate_rates<T: Scalar>(problem: &CellFormationProblem<T>, cands: &Candidates<T>, serving: &[usize], load: &[usize]) -> Vec<Vec<T>> {
    let eps = problem.sidelobe_gain();
    let p = problem.radio().tx_power_mw();
    let noise = problem.radio().noise_power_mw();
    let gc = problem.channel_gains();
    let nb = problem.num_virtual_bs();
    let omni_main = Beam::<T>::omni().main_lobe_gain(eps).expect("valid beam");
    let bs = &cands.fitted.bs;
    let bs_main: Vec<T> = bs
        .iter()
        .map(|b| b.map_or(T::zero(), |b| b.main_lobe_gain(eps).expect("valid beam")))
        .collect();

    let mut out = vec![Vec::with_capacity(serving.len()); cands.kinds.len()];
    let mut bs_lobe = vec![false; nb];
    let mut ue_lobe = vec![false; nb];
    for (j, &i) in serving.iter().enumerate() {
        let ue_beam = &cands.fitted.ue[j];
        let ue_main = ue_beam.main_lobe_gain(eps).expect("valid beam");
        for k in 0..nb {
            bs_lobe[k] = bs[k].is_some_and(|b| b.covers(problem.zeta_b()[(k, j)]));
            ue_lobe[k] = ue_beam.covers(problem.zeta_u()[(k, j)]);
        }
        for (rates, kind) in out.iter_mut().zip(&cands.kinds) {
            let rx = |k: usize| -> T {
                if bs[k].is_none() {
                    return T::zero();
                }
                let gb = match (kind.bs_fitted, bs_lobe[k]) {
                    (false, _) => omni_main,
                    (true, true) => bs_main[k],
                    (true, false) => eps,
                };
                let gu = match (kind.ue_fitted, ue_lobe[k]) {
                    (false, _) => omni_main,
                    (true, true) => ue_main,
                    (true, false) => eps,
                };
                p * gb * gc[(k, j)] * gu
            };
            // same summation order as `link_sinr`
            let interference = (0..nb).filter(|&k| k != i).fold(T::zero(), |acc, k| acc + rx(k));
            let sinr = rx(i) / (interference + noise);
            rates.push(shannon_rate(sinr) / T::from_usize_lossy(load[i]));
        }
    }
    out
}

fn search_utility<T: Scalar>(rates: &[T], kind: UtilityKind) -> T {
    match kind {
        UtilityKind::Sum => rates.iter().fold(T::zero(), |a, &r| a + r),
        UtilityKind::LogSum => {
            let floor = T::lit(RATE_FLOOR);
            rates.iter().fold(T::zero(), |a, &r| a + r.max(floor).ln())
        }
    }
}

fn violation<T: Scalar>(rates: &[T], min_rates: &[T]) -> T {
    rates
        .iter()
        .zip(min_rates)
        .fold(T::zero(), |a, (&r, &m)| a + (m - r).max(T::zero()))
}

/// Best beam candidate for `serving`.
pub(crate) fn score_association<T: Scalar>(problem: &CellFormationProblem<T>, serving: &[usize]) -> Scored<T> {
    let load = loads(serving, problem.num_virtual_bs());
    let cands = candidates(problem, serving);
    let mut best: Option<Scored<T>> = None;
    for (config_index, rates) in candidate_rates(problem, &cands, serving, &load).iter().enumerate() {
        let scored = Scored {
            violation: violation(rates, problem.min_rates()),
            utility: search_utility(rates, problem.utility()),
            config_index,
        };
        if best.as_ref().is_none_or(|b| scored.better_than(b)) {
            best = Some(scored);
        }
    }
    best.expect("at least one candidate")
}

/// Materialize the full solution for `serving` with the given candidate.
pub(crate) fn build_solution<T: Scalar>(problem: &CellFormationProblem<T>, serving: &[usize], config_index: usize) -> Result<Solution<T>> {
    let config = candidate_configs(problem, serving).swap_remove(config_index);
    let sinr = sinr_matrix(problem, &config)?;
    let link_rates = rate_matrix(&sinr);
    let association = Association::equal_shares(serving.to_vec(), problem.num_virtual_bs());
    let ue_rates: Vec<T> = serving
        .iter()
        .enumerate()
        .map(|(j, &i)| association.shares[(i, j)] * link_rates[(i, j)])
        .collect();

    let mut short: Vec<usize> = (0..ue_rates.len())
        .filter(|&j| ue_rates[j] < problem.min_rates()[j])
        .collect();
    if problem.utility() == UtilityKind::LogSum {
        short.extend((0..ue_rates.len()).filter(|&j| ue_rates[j] < T::lit(RATE_FLOOR)));
        short.sort_unstable();
        short.dedup();
    }
    if !short.is_empty() {
        return Err(Error::Infeasible { ues: short });
    }
    let objective = objective(&ue_rates, problem.utility())?;
    Ok(Solution {
        metrics: Metrics::from_rates(&ue_rates),
        beams: config,
        association,
        sinr,
        link_rates,
        ue_rates,
        objective,
    })
}

/// Evaluate a fixed association: fit beams, split resources equally and
/// report the resulting solution. Used to re-score an association found in
/// one mode under another mode's restrictions.
pub fn evaluate_association<T: Scalar>(problem: &CellFormationProblem<T>, serving: &[usize]) -> Result<Solution<T>> {
    if serving.len() != problem.num_ues() || serving.iter().any(|&i| i >= problem.num_virtual_bs()) {
        return Err(Error::InvalidParameter("association does not match problem size".into()));
    }
    let scored = score_association(problem, serving);
    build_solution(problem, serving, scored.config_index)
}

/// Gains and received powers of the chosen configuration, exposed for
/// diagnostics.
pub fn received_power_matrix<T: Scalar>(problem: &CellFormationProblem<T>, config: &BeamConfig<T>) -> Result<Matrix<T>> {
    let (gb, gu) = directivity_gains(config, problem)?;
    Ok(received_power(problem, &gb, &gu))
}
