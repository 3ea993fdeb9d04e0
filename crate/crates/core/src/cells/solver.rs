//! Heuristic solver: multi-start iterated local search over the
//! association, with beams and shares derived from each association.

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::main_lobe_gain;
use crate::scalar::Scalar;
use crate::sim::trial_rng;

use super::gains::shannon_rate;
use super::metrics::loads;
use super::problem::CellFormationProblem;
use super::solution::{build_solution, score_association, Scored, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverParams {
    /// Random starts in addition to the greedy one.
    pub restarts: usize,
    /// Random perturbations of each start's local optimum.
    pub kicks: usize,
    pub seed: u64,
    /// Cap on accepted moves per start, kicks included.
    pub max_iterations: usize,
}

/// UEs reassigned at random by one kick.
const KICK_SIZE: usize = 3;

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            restarts: 4,
            kicks: 8,
            seed: 0,
            max_iterations: 10_000,
        }
    }
}

/// Interference-free rate of every link with both ends at their narrowest
/// allowed beams.
fn best_case_rates<T: Scalar>(problem: &CellFormationProblem<T>) -> Result<Vec<Vec<T>>> {
    let eps = problem.sidelobe_gain();
    let gain = main_lobe_gain(problem.bs_min_beamwidth(), eps)? * main_lobe_gain(problem.ue_min_beamwidth(), eps)?;
    let snr0 = problem.radio().tx_power_mw() * gain / problem.radio().noise_power_mw();
    let gc = problem.channel_gains();
    Ok((0..problem.num_virtual_bs())
        .map(|i| (0..problem.num_ues()).map(|j| shannon_rate(snr0 * gc[(i, j)])).collect())
        .collect())
}

/// Reject instances where some UE cannot reach its minimum rate even alone
/// on its best link with no interference.
pub fn check_feasible<T: Scalar>(problem: &CellFormationProblem<T>) -> Result<()> {
    let best = best_case_rates(problem)?;
    let bad: Vec<usize> = (0..problem.num_ues())
        .filter(|&j| {
            let top = best.iter().map(|row| row[j]).fold(T::zero(), T::max);
            top < problem.min_rates()[j]
        })
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::Infeasible { ues: bad })
    }
}

/// Each UE in turn joins the virtual BS with the best interference-free
/// rate per expected load; ties go to the lowest index.
pub fn greedy_association<T: Scalar>(problem: &CellFormationProblem<T>) -> Result<Vec<usize>> {
    let best = best_case_rates(problem)?;
    let mut load = vec![0usize; problem.num_virtual_bs()];
    let mut serving = Vec::with_capacity(problem.num_ues());
    for j in 0..problem.num_ues() {
        let mut pick = 0;
        let mut pick_value = T::neg_infinity();
        for (i, row) in best.iter().enumerate() {
            let v = row[j] / T::from_usize_lossy(load[i] + 1);
            if v > pick_value {
                pick = i;
                pick_value = v;
            }
        }
        load[pick] += 1;
        serving.push(pick);
    }
    Ok(serving)
}

/// Idle sibling chains are interchangeable; only the first idle chain of
/// each physical BS is worth trying.
fn redundant_target<T: Scalar>(problem: &CellFormationProblem<T>, load: &[usize], i: usize) -> bool {
    if load[i] != 0 {
        return false;
    }
    let phys = problem.virtual_bs()[i].physical;
    (0..i).any(|k| load[k] == 0 && problem.virtual_bs()[k].physical == phys)
}

/// First-improvement descent; `accepted` counts moves against the cap.
fn local_search<T: Scalar>(problem: &CellFormationProblem<T>, mut serving: Vec<usize>, max_iterations: usize, accepted: &mut usize) -> (Vec<usize>, Scored<T>) {
    let nb = problem.num_virtual_bs();
    let nu = problem.num_ues();
    let mut current = score_association(problem, &serving);

    while *accepted < max_iterations {
        let mut improved = false;

        for j in 0..nu {
            let from = serving[j];
            let load = loads(&serving, nb);
            for i in 0..nb {
                if i == from || redundant_target(problem, &load, i) {
                    continue;
                }
                serving[j] = i;
                let cand = score_association(problem, &serving);
                if cand.better_than(&current) {
                    current = cand;
                    improved = true;
                    *accepted += 1;
                    break;
                }
                serving[j] = from;
            }
            if *accepted >= max_iterations {
                break;
            }
        }

        for j in 0..nu {
            for k in j + 1..nu {
                if serving[j] == serving[k] || *accepted >= max_iterations {
                    continue;
                }
                serving.swap(j, k);
                let cand = score_association(problem, &serving);
                if cand.better_than(&current) {
                    current = cand;
                    improved = true;
                    *accepted += 1;
                } else {
                    serving.swap(j, k);
                }
            }
        }

        if !improved && *accepted < max_iterations && group_move(problem, &mut serving, &mut current) {
            improved = true;
            *accepted += 1;
        }
        if !improved {
            break;
        }
    }
    (serving, current)
}

/// Moves that shift several UEs at once, tried only when single moves and
/// swaps are exhausted: move a co-served pair to another beam, move a whole
/// beam's UEs to another beam, or exchange the UEs of two beams on
/// different BSs. Applies the first improving move.
fn group_move<T: Scalar>(problem: &CellFormationProblem<T>, serving: &mut Vec<usize>, current: &mut Scored<T>) -> bool {
    let nb = problem.num_virtual_bs();
    let nu = problem.num_ues();
    let load = loads(serving, nb);
    let phys = |i: usize| problem.virtual_bs()[i].physical;

    let mut attempt = |cand: Vec<usize>, serving: &mut Vec<usize>| {
        let scored = score_association(problem, &cand);
        if scored.better_than(current) {
            *current = scored;
            *serving = cand;
            true
        } else {
            false
        }
    };

    for j in 0..nu {
        for k in j + 1..nu {
            let from = serving[j];
            if serving[k] != from {
                continue;
            }
            for i in 0..nb {
                if i == from || redundant_target(problem, &load, i) {
                    continue;
                }
                let mut cand = serving.clone();
                cand[j] = i;
                cand[k] = i;
                if attempt(cand, serving) {
                    return true;
                }
            }
        }
    }

    for a in 0..nb {
        if load[a] == 0 {
            continue;
        }
        for b in 0..nb {
            if b == a || phys(b) == phys(a) || redundant_target(problem, &load, b) {
                continue;
            }
            let merged: Vec<usize> = serving.iter().map(|&i| if i == a { b } else { i }).collect();
            if attempt(merged, serving) {
                return true;
            }
            if load[b] > 0 && a < b {
                let exchanged: Vec<usize> = serving
                    .iter()
                    .map(|&i| if i == a { b } else if i == b { a } else { i })
                    .collect();
                if attempt(exchanged, serving) {
                    return true;
                }
            }
        }
    }
    false
}

/// Stream offset keeping kick draws apart from random starts.
const KICK_STREAM: u64 = 1 << 32;

fn random_association<T: Scalar>(problem: &CellFormationProblem<T>, seed: u64, start: u64) -> Vec<usize> {
    let mut rng = trial_rng(seed, start);
    (0..problem.num_ues())
        .map(|_| rng.random_range(0..problem.num_virtual_bs()))
        .collect()
}

/// Local search from `start`, then repeated kicks of the best association
/// found, each followed by another descent.
fn iterated_search<T: Scalar>(problem: &CellFormationProblem<T>, start: Vec<usize>, params: &SolverParams, index: u64) -> (Vec<usize>, Scored<T>) {
    let mut accepted = 0usize;
    let mut best = local_search(problem, start, params.max_iterations, &mut accepted);
    let nb = problem.num_virtual_bs();
    let nu = problem.num_ues();
    if nb < 2 {
        return best;
    }
    let mut rng = trial_rng(params.seed, KICK_STREAM + index);
    for _ in 0..params.kicks {
        if accepted >= params.max_iterations {
            break;
        }
        let mut kicked = best.0.clone();
        for _ in 0..KICK_SIZE.min(nu) {
            let j = rng.random_range(0..nu);
            kicked[j] = rng.random_range(0..nb);
        }
        let cand = local_search(problem, kicked, params.max_iterations, &mut accepted);
        if cand.1.better_than(&best.1) {
            best = cand;
        }
    }
    best
}

/// Solve with the default starts (greedy plus `params.restarts` random).
pub fn solve<T: Scalar>(problem: &CellFormationProblem<T>, params: &SolverParams) -> Result<Solution<T>> {
    solve_with_starts(problem, params, &[])
}

/// Like [`solve`], with extra caller-supplied starting associations tried
/// right after the greedy one. Every start is polished independently; the
/// best final score wins, earlier starts winning ties.
pub fn solve_with_starts<T: Scalar>(problem: &CellFormationProblem<T>, params: &SolverParams, extra_starts: &[Vec<usize>]) -> Result<Solution<T>> {
    check_feasible(problem)?;
    let nb = problem.num_virtual_bs();
    for s in extra_starts {
        if s.len() != problem.num_ues() || s.iter().any(|&i| i >= nb) {
            return Err(Error::InvalidParameter("starting association does not match problem size".into()));
        }
    }

    let mut starts = vec![greedy_association(problem)?];
    starts.extend(extra_starts.iter().cloned());
    starts.extend((0..params.restarts as u64).map(|k| random_association(problem, params.seed, k)));

    let results: Vec<(Vec<usize>, Scored<T>)> = starts
        .into_par_iter()
        .enumerate()
        .map(|(k, s)| iterated_search(problem, s, params, k as u64))
        .collect();

    let (serving, best) = results
        .into_iter()
        .reduce(|a, b| if b.1.better_than(&a.1) { b } else { a })
        .expect("at least the greedy start");
    build_solution(problem, &serving, best.config_index)
}
