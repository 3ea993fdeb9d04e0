//! Exhaustive search over associations for tiny instances.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::problem::CellFormationProblem;
use super::solution::{build_solution, score_association, Scored, Solution};

pub const MAX_BRUTE_BS: usize = 4;
pub const MAX_BRUTE_UES: usize = 6;

/// Try every association (with the same beam and share rule as the
/// heuristic) and return the best one.
pub fn brute_force<T: Scalar>(problem: &CellFormationProblem<T>) -> Result<Solution<T>> {
    let nb = problem.num_virtual_bs();
    let nu = problem.num_ues();
    if nb > MAX_BRUTE_BS || nu > MAX_BRUTE_UES {
        return Err(Error::TooLarge {
            virtual_bs: nb,
            ues: nu,
            max_bs: MAX_BRUTE_BS,
            max_ues: MAX_BRUTE_UES,
        });
    }

    let mut serving = vec![0usize; nu];
    let mut best: Option<(Vec<usize>, Scored<T>)> = None;
    loop {
        let s = score_association(problem, &serving);
        if best.as_ref().is_none_or(|(_, b)| s.better_than(b)) {
            best = Some((serving.clone(), s));
        }
        // odometer increment, first UE fastest
        let mut pos = 0;
        while pos < nu {
            serving[pos] += 1;
            if serving[pos] < nb {
                break;
            }
            serving[pos] = 0;
            pos += 1;
        }
        if pos == nu {
            break;
        }
    }

    // build_solution reports the short UEs if even the best is infeasible
    let (serving, score) = best.expect("at least one association");
    build_solution(problem, &serving, score.config_index)
}
