//! Monte Carlo sector sweep.
//!
//! Each in-range LoS BS partitions the plane into `N_s` equal sectors and
//! visits them in an independent uniformly random order, one per epoch. The
//! UE is discovered at the first epoch in which some BS sweeps the sector
//! containing it. In fully-directional mode the UE listens through one fixed
//! sector of width θ (boresight along +x), so only BSs inside that sector
//! count. Fields with no usable BS are outages: they are redrawn from the
//! same trial stream and tallied separately.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::discovery::effective_density;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::model::antenna::sector_count;
use crate::model::{Beam, Mode};
use crate::scalar::Scalar;

use super::field::{draw_field, trial_rng, SimConfig};

/// Redraws allowed per trial before the run is declared hopeless.
pub const MAX_ATTEMPTS_PER_TRIAL: u64 = 10_000_000;

/// Random visiting order of the `sectors` sectors of one BS.
pub fn sweep_order<R: Rng + ?Sized>(rng: &mut R, sectors: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sectors).collect();
    order.shuffle(rng);
    order
}

/// Empirical discovery statistics over the discoverable trials.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscoveryEstimate<T = f64> {
    /// `counts[n - 1]` = trials discovered at epoch `n`.
    pub counts: Vec<u64>,
    pub trials: u64,
    /// Fields redrawn because no BS could reach the UE.
    pub outage_trials: u64,
    pub mean: T,
    /// Standard error of `mean`.
    pub std_err: T,
    /// Effective density `ρ` the closed forms should be evaluated at.
    pub effective_density: T,
}

impl<T: Scalar> DiscoveryEstimate<T> {
    pub fn sectors(&self) -> usize {
        self.counts.len()
    }

    pub fn pmf(&self) -> Vec<T> {
        let n = self.trials as f64;
        self.counts.iter().map(|&c| T::lit(c as f64 / n)).collect()
    }

    pub fn cdf(&self) -> Vec<T> {
        let n = self.trials as f64;
        let mut acc = 0u64;
        self.counts
            .iter()
            .map(|&c| {
                acc += c;
                T::lit(acc as f64 / n)
            })
            .collect()
    }

    /// Binomial standard error of `pmf()[epoch - 1]` (or of the cdf if
    /// `p` is a cdf value).
    pub fn binomial_std_err(&self, p: T) -> T {
        (p * (T::one() - p) / T::lit(self.trials as f64)).sqrt()
    }

    /// Dvoretzky-Kiefer-Wolfowitz half-width: the empirical cdf lies within
    /// this distance of the true cdf everywhere with probability
    /// `1 − failure`.
    pub fn dkw_half_width(&self, failure: T) -> T {
        ((T::lit(2.0) / failure).ln() / (T::lit(2.0) * T::lit(self.trials as f64))).sqrt()
    }

    /// Smallest epoch whose empirical cdf reaches `q`.
    pub fn quantile(&self, q: T) -> usize {
        let need = (q.as_f64() * self.trials as f64).ceil() as u64;
        let mut acc = 0u64;
        for (i, &c) in self.counts.iter().enumerate() {
            acc += c;
            if acc >= need.max(1) {
                return i + 1;
            }
        }
        self.counts.len()
    }

    /// Share of drawn fields in which the UE was unreachable; estimates
    /// `e^{-ρ}`.
    pub fn outage_fraction(&self) -> T {
        let total = self.trials + self.outage_trials;
        T::lit(self.outage_trials as f64 / total as f64)
    }
}

/// Epoch at which one field discovers the UE, or `None` if no BS qualifies.
fn discovery_epoch<T: Scalar, R: Rng>(
    rng: &mut R,
    field: &[Point<T>],
    d_max: T,
    listen: &Beam<T>,
    sectors: usize,
) -> Option<usize> {
    let ue = Point::origin();
    let width = T::TAU() / T::from_usize_lossy(sectors);
    let mut best: Option<usize> = None;
    for bs in field {
        if ue.distance(bs) > d_max || !listen.covers(ue.bearing_to(bs)) {
            continue;
        }
        let ue_sector = ((bs.bearing_to(&ue) / width).floor().as_f64() as usize).min(sectors - 1);
        let order = sweep_order(rng, sectors);
        let epoch = order.iter().position(|&s| s == ue_sector).expect("order is a permutation") + 1;
        best = Some(best.map_or(epoch, |b| b.min(epoch)));
    }
    best
}

pub fn mc_discovery<T: Scalar>(config: &SimConfig<T>) -> Result<DiscoveryEstimate<T>> {
    config.validate()?;
    let theta = config.effective_beamwidth();
    let sectors = sector_count(theta)?;
    let d_max = config.d_max()?;
    let window = config.window()?;
    window.require_disc(d_max)?;
    let rho = effective_density(config.los_density, d_max, config.mode, theta)?;
    if !(rho > T::zero()) {
        return Err(Error::NoSamples("effective LoS density is zero; the UE is never discoverable".into()));
    }
    let listen = match config.mode {
        Mode::Fully => Beam::new(theta, T::zero())?,
        Mode::Omni | Mode::Semi => Beam::omni(),
    };

    let per_trial: Vec<(usize, u64)> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(config.seed, t);
            let mut outages = 0u64;
            loop {
                let field = draw_field(&mut rng, &window, config.los_density);
                if let Some(epoch) = discovery_epoch(&mut rng, &field, d_max, &listen, sectors) {
                    return Ok((epoch, outages));
                }
                outages += 1;
                if outages >= MAX_ATTEMPTS_PER_TRIAL {
                    return Err(Error::NoSamples(format!(
                        "trial {t}: no discoverable field in {outages} draws"
                    )));
                }
            }
        })
        .collect::<Result<_>>()?;

    let mut counts = vec![0u64; sectors];
    let mut outage_trials = 0u64;
    let (mut sum, mut sum_sq) = (0u128, 0u128);
    for &(epoch, outages) in &per_trial {
        counts[epoch - 1] += 1;
        outage_trials += outages;
        sum += epoch as u128;
        sum_sq += (epoch * epoch) as u128;
    }
    let n = config.trials as f64;
    let mean = sum as f64 / n;
    let var = if config.trials > 1 {
        ((sum_sq as f64 - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(DiscoveryEstimate {
        counts,
        trials: config.trials,
        outage_trials,
        mean: T::lit(mean),
        std_err: T::lit((var / n).sqrt()),
        effective_density: rho,
    })
}
