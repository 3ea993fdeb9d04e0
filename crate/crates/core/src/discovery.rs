//! Closed-form statistics of directional cell search.
//!
//! Every in-range LoS BS sweeps its `N_s` sectors in a uniformly random
//! order, one per epoch. The number of such BSs is Poisson with mean `ρ`;
//! all quantities here are conditioned on at least one being present.
//! Under that conditioning the discovery epoch is a geometric law with
//! ratio `q = e^{-ρ/N_s}` truncated to `1..=N_s`.

use crate::error::{domain, Result};
use crate::model::antenna::{check_beamwidth, sector_count};
use crate::model::propagation::max_range;
use crate::model::{Mode, RadioParams};
use crate::scalar::Scalar;

/// Below this effective density the mean is replaced by its `ρ → 0` limit.
pub const SPARSE_LIMIT_RHO: f64 = 1e-6;

/// Expected number of LoS BSs a UE can hear during search: `ρ_u` times the
/// effective area (`π d²` when the UE listens omnidirectionally, `θ d² / 2`
/// when it listens through one fixed sector).
pub fn effective_density<T: Scalar>(rho_u: T, d_max: T, mode: Mode, theta: T) -> Result<T> {
    if !(rho_u >= T::zero()) || !rho_u.is_finite() {
        return domain("rho_u", rho_u.as_f64(), ">= 0");
    }
    if !(d_max > T::zero()) || !d_max.is_finite() {
        return domain("d_max", d_max.as_f64(), "> 0");
    }
    let area = match mode {
        Mode::Omni | Mode::Semi => T::PI() * d_max * d_max,
        Mode::Fully => {
            check_beamwidth(theta)?;
            theta / T::lit(2.0) * d_max * d_max
        }
    };
    Ok(rho_u * area)
}

fn check_rho<T: Scalar>(rho: T) -> Result<()> {
    if rho > T::zero() && rho.is_finite() {
        Ok(())
    } else {
        domain("rho", rho.as_f64(), "> 0")
    }
}

fn check_sectors(sectors: usize) -> Result<()> {
    if sectors == 0 {
        domain("sectors", 0.0, ">= 1")
    } else {
        Ok(())
    }
}

/// Probability that a discoverable UE is found exactly at epoch `n`:
/// `e^{-nρ/N}(e^{ρ/N} − 1) / (1 − e^{-ρ})`.
pub fn discovery_pmf<T: Scalar>(rho: T, sectors: usize, epoch: usize) -> Result<T> {
    check_rho(rho)?;
    check_sectors(sectors)?;
    if epoch == 0 || epoch > sectors {
        return domain("epoch", epoch as f64, "1..=N_s");
    }
    let n = T::from_usize_lossy(sectors);
    let a = rho / n;
    let k = T::from_usize_lossy(epoch);
    Ok((-k * a).exp() * a.exp_m1() / -(-rho).exp_m1())
}

/// Probability that a discoverable UE is found within `epochs` epochs:
/// `(e^ρ − e^{ρ − ρl/N}) / (e^ρ − 1)`, evaluated as
/// `expm1(−ρl/N) / expm1(−ρ)` so large `ρ` cannot overflow.
pub fn discovery_cdf<T: Scalar>(rho: T, sectors: usize, epochs: usize) -> Result<T> {
    check_rho(rho)?;
    check_sectors(sectors)?;
    if epochs > sectors {
        return domain("epochs", epochs as f64, "0..=N_s");
    }
    if epochs == sectors {
        return Ok(T::one());
    }
    let l = T::from_usize_lossy(epochs);
    let n = T::from_usize_lossy(sectors);
    Ok((-rho * l / n).exp_m1() / (-rho).exp_m1())
}

/// `1/(1 − e^{-x}) − 1/x`, smooth on `x > 0` with limit 1/2 at zero.
fn excess_mean<T: Scalar>(x: T) -> T {
    if x < T::lit(1e-2) {
        let x2 = x * x;
        T::lit(0.5) + x * (T::one() / T::lit(12.0) - x2 * (T::one() / T::lit(720.0) - x2 / T::lit(30240.0)))
    } else {
        T::one() / -(-x).exp_m1() - T::one() / x
    }
}

/// Mean number of epochs until a discoverable UE is found.
///
/// The textbook form
/// `(e^{ρ+ρ/N} − (N+1)e^{ρ/N} + N) / ((e^ρ − 1)(e^{ρ/N} − 1))`
/// overflows for large `ρ` and is 0/0 for small `ρ`. It equals the mean of
/// the truncated geometric law, `1/(1−q) − N q^N/(1−q^N)`, which is
/// rewritten with `h(x) = 1/(1−e^{−x}) − 1/x` as `N + h(ρ/N) − N h(ρ)`:
/// the `1/x` poles cancel analytically, `h` is bounded in `[1/2, 1)`, and
/// nothing overflows.
pub fn mean_discovery_epochs<T: Scalar>(rho: T, sectors: usize) -> Result<T> {
    check_rho(rho)?;
    check_sectors(sectors)?;
    let n = T::from_usize_lossy(sectors);
    if rho < T::lit(SPARSE_LIMIT_RHO) {
        return Ok((n + T::one()) / T::lit(2.0));
    }
    Ok(n + excess_mean(rho / n) - n * excess_mean(rho))
}

/// Smallest number of epochs `l` with `discovery_cdf(ρ, N, l) ≥ μ`:
/// the ceiling of `N − (N/ρ) ln(μ + (1 − μ)e^ρ)`, clamped to `[1, N]`.
pub fn min_epochs_for_probability<T: Scalar>(rho: T, sectors: usize, mu: T) -> Result<usize> {
    check_rho(rho)?;
    check_sectors(sectors)?;
    if !(mu > T::zero() && mu < T::one()) {
        return domain("mu", mu.as_f64(), "(0, 1)");
    }
    let n = T::from_usize_lossy(sectors);
    // N − (N/ρ)·ln(μ + (1−μ)e^ρ) = −(N/ρ)·ln(1 + μ·expm1(−ρ))
    let bound = -(n / rho) * (mu * (-rho).exp_m1()).ln_1p();
    let mut epochs = bound.ceil().as_f64().clamp(1.0, sectors as f64) as usize;

    // Rounding in the closed form can land one epoch off the cdf threshold.
    while epochs < sectors && discovery_cdf(rho, sectors, epochs)? < mu {
        epochs += 1;
    }
    while epochs > 1 && discovery_cdf(rho, sectors, epochs - 1)? >= mu {
        epochs -= 1;
    }
    Ok(epochs)
}

/// Ratio of semi- to fully-directional effective density with ideal
/// sectors, `(2π/θ)^{1 − 2/α}`.
pub fn semi_to_fully_density_ratio<T: Scalar>(theta: T, alpha: T) -> Result<T> {
    check_beamwidth(theta)?;
    if !(alpha > T::lit(2.0)) {
        return domain("alpha", alpha.as_f64(), "> 2");
    }
    Ok((T::TAU() / theta).powf(T::one() - T::lit(2.0) / alpha))
}

/// Everything needed to evaluate the discovery statistics for one
/// operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscoveryModel<T = f64> {
    pub los_density_per_m2: T,
    pub effective_density: T,
    pub sector_count: usize,
    pub mode: Mode,
    pub beamwidth: T,
    pub d_max: T,
}

impl<T: Scalar> DiscoveryModel<T> {
    /// Build the model for LoS density `rho_u` under `params`, using the
    /// exact range formula (which reduces to the ideal-sector one when the
    /// side-lobe level is zero).
    pub fn new(rho_u: T, params: &RadioParams<T>, mode: Mode, beamwidth: T) -> Result<Self> {
        let beamwidth = if mode == Mode::Omni { T::TAU() } else { beamwidth };
        let d_max = max_range(params, mode, beamwidth, true)?;
        let rho = effective_density(rho_u, d_max, mode, beamwidth)?;
        Ok(Self {
            los_density_per_m2: rho_u,
            effective_density: rho,
            sector_count: sector_count(beamwidth)?,
            mode,
            beamwidth,
            d_max,
        })
    }

    /// Probability that at least one LoS BS is in range.
    pub fn discoverable_probability(&self) -> T {
        -(-self.effective_density).exp_m1()
    }

    pub fn pmf(&self, epoch: usize) -> Result<T> {
        discovery_pmf(self.effective_density, self.sector_count, epoch)
    }

    pub fn cdf(&self, epochs: usize) -> Result<T> {
        discovery_cdf(self.effective_density, self.sector_count, epochs)
    }

    pub fn mean_epochs(&self) -> Result<T> {
        mean_discovery_epochs(self.effective_density, self.sector_count)
    }

    pub fn min_epochs(&self, mu: T) -> Result<usize> {
        min_epochs_for_probability(self.effective_density, self.sector_count, mu)
    }
}
