//! Poisson fields of LoS base stations around the typical UE.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::model::propagation::max_range;
use crate::model::{Mode, RadioParams};
use crate::scalar::Scalar;

use super::window::SimWindow;

/// Generator for trial `trial` of a run seeded with `seed`. Each trial owns
/// its own ChaCha stream, so results do not depend on scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// One Monte Carlo experiment around the typical UE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig<T = f64> {
    pub trials: u64,
    pub seed: u64,
    pub radio: RadioParams<T>,
    pub mode: Mode,
    /// Beamwidth used by every directional end; ignored for omni.
    pub beamwidth: T,
    /// LoS BS density, BS/m².
    pub los_density: T,
    /// Defaults to [`SimWindow::around`] the mode's maximum range.
    pub window: Option<SimWindow<T>>,
}

impl<T: Scalar> SimConfig<T> {
    pub fn new(radio: RadioParams<T>, mode: Mode, beamwidth: T, los_density: T) -> Result<Self> {
        crate::model::antenna::check_beamwidth(beamwidth)?;
        if !(los_density >= T::zero()) || !los_density.is_finite() {
            return Err(Error::InvalidParameter(format!("LoS density must be >= 0, got {los_density}")));
        }
        Ok(Self {
            trials: 10_000,
            seed: 0,
            radio,
            mode,
            beamwidth,
            los_density,
            window: None,
        })
    }

    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_window(mut self, window: SimWindow<T>) -> Self {
        self.window = Some(window);
        self
    }

    /// Beamwidth actually in effect (2π for omni).
    pub fn effective_beamwidth(&self) -> T {
        if self.mode == Mode::Omni {
            T::TAU()
        } else {
            self.beamwidth
        }
    }

    pub fn d_max(&self) -> Result<T> {
        max_range(&self.radio, self.mode, self.effective_beamwidth(), true)
    }

    pub fn window(&self) -> Result<SimWindow<T>> {
        match self.window {
            Some(w) => Ok(w),
            None => SimWindow::around(self.d_max()?),
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        Ok(())
    }
}

/// Draw one Poisson field over `window` from `rng`.
pub(crate) fn draw_field<T: Scalar, R: Rng>(rng: &mut R, window: &SimWindow<T>, density: T) -> Vec<Point<T>> {
    let mean = (density * window.area()).as_f64();
    if mean <= 0.0 {
        return Vec::new();
    }
    let count = Poisson::new(mean)
        .expect("finite positive Poisson mean")
        .sample(rng) as usize;
    (0..count)
        .map(|_| window.place(rng.random::<f64>(), rng.random::<f64>()))
        .collect()
}

/// LoS BS positions for trial `trial_index`: Poisson count with mean
/// `ρ_u · area`, positions i.i.d. uniform over the window.
pub fn sample_los_field<T: Scalar>(config: &SimConfig<T>, trial_index: u64) -> Result<Vec<Point<T>>> {
    let window = config.window()?;
    let mut rng = trial_rng(config.seed, trial_index);
    Ok(draw_field(&mut rng, &window, config.los_density))
}
