//! Mode and RF-chain sweeps over one deployment.

use crate::error::Result;
use crate::model::Mode;
use crate::scalar::Scalar;

use super::problem::CellFormationProblem;
use super::solution::Solution;
use super::solver::{solve_with_starts, SolverParams};

#[derive(Debug, Clone)]
pub struct SweepCell<T = f64> {
    pub mode: Mode,
    pub rf_chains: usize,
    pub result: Result<Solution<T>>,
}

/// Map an association onto a problem with a different chain count by
/// keeping each UE on the same physical BS and chain (chain clamped).
fn remap<T: Scalar>(from: &CellFormationProblem<T>, to: &CellFormationProblem<T>, serving: &[usize]) -> Vec<usize> {
    serving
        .iter()
        .map(|&i| {
            let v = from.virtual_bs()[i];
            let chains = to.base_stations()[v.physical].rf_chains.max(1);
            let chain = if to.mode() == Mode::Omni { 0 } else { v.chain.min(chains - 1) };
            to.virtual_index(v.physical, chain).unwrap_or(0)
        })
        .collect()
}

/// Solve `base` under every mode and chain count. Each answer seeds the
/// richer configurations (Omni into Semi, Semi into Fully, fewer chains
/// into more), so a richer configuration never ends below a poorer one.
/// Omni has a single chain per BS and is solved once. Rows come out as
/// Fully by chain count, then Semi, then Omni.
pub fn mode_sweep<T: Scalar>(base: &CellFormationProblem<T>, rf_list: &[usize], params: &SolverParams) -> Result<Vec<SweepCell<T>>> {
    let mut rf: Vec<usize> = rf_list.to_vec();
    rf.sort_unstable();
    rf.dedup();

    let omni = base.clone().with_mode(Mode::Omni)?;
    let omni_result = solve_with_starts(&omni, params, &[]);
    let omni_start = omni_result.as_ref().ok().map(|s| (s.association.serving.clone(), &omni));

    let mut cells = Vec::new();
    let mut semi_prev: Option<(Vec<usize>, CellFormationProblem<T>)> = None;
    let mut semi_cells = Vec::new();
    let mut fully_prev: Option<(Vec<usize>, CellFormationProblem<T>)> = None;
    for &r in &rf {
        let semi = base.clone().with_mode(Mode::Semi)?.with_rf_chains(r)?;
        let mut starts = Vec::new();
        if let Some((s, p)) = &omni_start {
            starts.push(remap(p, &semi, s));
        }
        if let Some((s, p)) = &semi_prev {
            starts.push(remap(p, &semi, s));
        }
        let semi_result = solve_with_starts(&semi, params, &starts);

        let fully = base.clone().with_mode(Mode::Fully)?.with_rf_chains(r)?;
        let mut starts = Vec::new();
        if let Ok(s) = &semi_result {
            starts.push(s.association.serving.clone());
        }
        if let Some((s, p)) = &fully_prev {
            starts.push(remap(p, &fully, s));
        }
        let fully_result = solve_with_starts(&fully, params, &starts);

        if let Ok(s) = &semi_result {
            semi_prev = Some((s.association.serving.clone(), semi.clone()));
        }
        if let Ok(s) = &fully_result {
            fully_prev = Some((s.association.serving.clone(), fully.clone()));
        }
        semi_cells.push(SweepCell { mode: Mode::Semi, rf_chains: r, result: semi_result });
        cells.push(SweepCell { mode: Mode::Fully, rf_chains: r, result: fully_result });
    }
    cells.extend(semi_cells);
    cells.push(SweepCell { mode: Mode::Omni, rf_chains: 1, result: omni_result });
    Ok(cells)
}
