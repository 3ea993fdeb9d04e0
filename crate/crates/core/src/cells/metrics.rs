//! Resource shares, utilities and fairness.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::matrix::Matrix;
use super::problem::UtilityKind;

/// Number of UEs served by each of `num_bs` virtual BSs.
pub fn loads(serving: &[usize], num_bs: usize) -> Vec<usize> {
    let mut load = vec![0usize; num_bs];
    for &i in serving {
        load[i] += 1;
    }
    load
}

/// Long-term rates with the beam's resources split equally among its UEs:
/// `r_j = c_{i(j) j} / load(i(j))`.
pub fn equal_share_rates<T: Scalar>(serving: &[usize], rates: &Matrix<T>) -> Vec<T> {
    let load = loads(serving, rates.rows());
    serving
        .iter()
        .enumerate()
        .map(|(j, &i)| rates[(i, j)] / T::from_usize_lossy(load[i]))
        .collect()
}

/// Network utility `Σ_j U(r_j)`. Logarithmic utility of a zero rate is an
/// error, never `-inf`.
pub fn objective<T: Scalar>(rates: &[T], kind: UtilityKind) -> Result<T> {
    match kind {
        UtilityKind::Sum => Ok(rates.iter().fold(T::zero(), |a, &r| a + r)),
        UtilityKind::LogSum => rates.iter().enumerate().try_fold(T::zero(), |acc, (ue, &r)| {
            if r > T::zero() {
                Ok(acc + r.ln())
            } else {
                Err(Error::InfeasibleRate { ue })
            }
        }),
    }
}

/// Jain's index `(Σr)² / (n Σr²)`: 1 when all rates are equal, `1/n` when
/// one UE gets everything. Defined as 1 when every rate is zero.
pub fn jain_index<T: Scalar>(rates: &[T]) -> T {
    let n = T::from_usize_lossy(rates.len());
    let sum = rates.iter().fold(T::zero(), |a, &r| a + r);
    let sum_sq = rates.iter().fold(T::zero(), |a, &r| a + r * r);
    if sum_sq == T::zero() {
        return T::one();
    }
    sum * sum / (n * sum_sq)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics<T = f64> {
    pub sum_rate: T,
    pub min_rate: T,
    pub jain_index: T,
}

impl<T: Scalar> Metrics<T> {
    pub fn from_rates(rates: &[T]) -> Self {
        Self {
            sum_rate: rates.iter().fold(T::zero(), |a, &r| a + r),
            min_rate: rates.iter().copied().fold(T::infinity(), T::min),
            jain_index: jain_index(rates),
        }
    }
}
