//! Coverage of the typical UE: is at least one LoS BS within decoding range?
//!
//! Coverage always uses the full disc `π d_max²`: when asking whether a
//! control channel is available at all, the UE may steer toward any BS.

use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::geometry::Point;
use crate::scalar::Scalar;

use super::field::{trial_rng, SimConfig};

/// `1 − exp(−ρ_u π d_max²)`.
pub fn closed_form_coverage<T: Scalar>(rho_u: T, d_max: T) -> Result<T> {
    if !(rho_u >= T::zero()) || !rho_u.is_finite() {
        return domain("rho_u", rho_u.as_f64(), ">= 0");
    }
    if !(d_max > T::zero()) || !d_max.is_finite() {
        return domain("d_max", d_max.as_f64(), "> 0");
    }
    Ok(-(-rho_u * T::PI() * d_max * d_max).exp_m1())
}

/// Density needed so the closed-form coverage equals `level`:
/// `−ln(1 − level) / (π d_max²)`.
pub fn min_density_for_coverage<T: Scalar>(level: T, d_max: T) -> Result<T> {
    if !(level > T::zero() && level < T::one()) {
        return domain("level", level.as_f64(), "(0, 1)");
    }
    if !(d_max > T::zero()) || !d_max.is_finite() {
        return domain("d_max", d_max.as_f64(), "> 0");
    }
    Ok(-(-level).ln_1p() / (T::PI() * d_max * d_max))
}

/// Monte Carlo coverage estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageEstimate<T = f64> {
    pub probability: T,
    /// Binomial standard error of `probability`.
    pub std_err: T,
    pub covered: u64,
    pub trials: u64,
}

/// Fraction of sampled fields with at least one BS within the mode's
/// maximum range of the origin.
pub fn mc_coverage<T: Scalar>(config: &SimConfig<T>) -> Result<CoverageEstimate<T>> {
    config.validate()?;
    let d_max = config.d_max()?;
    let window = config.window()?;
    window.require_disc(d_max)?;
    let mean = (config.los_density * window.area()).as_f64();
    let origin = Point::origin();

    let covered: u64 = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            if mean <= 0.0 {
                return 0;
            }
            let mut rng = trial_rng(config.seed, t);
            let count = Poisson::new(mean).expect("finite positive mean").sample(&mut rng) as u64;
            // same draw order as `sample_los_field`, stopping at the first hit
            let hit = (0..count).any(|_| {
                use rand::Rng;
                let p = window.place(rng.random::<f64>(), rng.random::<f64>());
                origin.distance(&p) <= d_max
            });
            u64::from(hit)
        })
        .sum();

    let n = config.trials as f64;
    let p = covered as f64 / n;
    Ok(CoverageEstimate {
        probability: T::lit(p),
        std_err: T::lit((p * (1.0 - p) / n).sqrt()),
        covered,
        trials: config.trials,
    })
}
