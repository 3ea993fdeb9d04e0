//! Directivity gains, SINR and link rates for a beam configuration.

use crate::error::{Error, Result};
use crate::model::{sector_gain, Beam};
use crate::scalar::Scalar;

use super::matrix::Matrix;
use super::problem::CellFormationProblem;

/// Beams of every virtual BS and UE. A virtual BS without a beam is an
/// RF chain that serves nobody and stays silent.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamConfig<T = f64> {
    pub bs: Vec<Option<Beam<T>>>,
    pub ue: Vec<Beam<T>>,
}

impl<T: Scalar> BeamConfig<T> {
    /// Every virtual BS transmitting and every antenna omnidirectional.
    pub fn omni(problem: &CellFormationProblem<T>) -> Self {
        Self {
            bs: vec![Some(Beam::omni()); problem.num_virtual_bs()],
            ue: vec![Beam::omni(); problem.num_ues()],
        }
    }

    /// Check dimensions and the beamwidth floors of the problem's mode.
    pub fn validate(&self, problem: &CellFormationProblem<T>) -> Result<()> {
        if self.bs.len() != problem.num_virtual_bs() || self.ue.len() != problem.num_ues() {
            return Err(Error::InvalidParameter("beam configuration does not match problem size".into()));
        }
        let bs_floor = problem.bs_min_beamwidth();
        if let Some(i) = self.bs.iter().position(|b| b.is_some_and(|b| b.beamwidth() < bs_floor)) {
            return Err(Error::InvalidParameter(format!("virtual BS {i} beam narrower than allowed")));
        }
        let ue_floor = problem.ue_min_beamwidth();
        if let Some(j) = self.ue.iter().position(|b| b.beamwidth() < ue_floor) {
            return Err(Error::InvalidParameter(format!("UE {j} beam narrower than allowed")));
        }
        Ok(())
    }
}

/// Transmit gains `g^b_ij` and receive gains `g^u_ij`. Silent chains get a
/// zero transmit row.
pub fn directivity_gains<T: Scalar>(config: &BeamConfig<T>, problem: &CellFormationProblem<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    config.validate(problem)?;
    let eps = problem.sidelobe_gain();
    let (nb, nu) = (problem.num_virtual_bs(), problem.num_ues());
    let mut gb = Matrix::filled(nb, nu, T::zero());
    let mut gu = Matrix::filled(nb, nu, T::zero());
    for i in 0..nb {
        for j in 0..nu {
            if let Some(beam) = &config.bs[i] {
                gb[(i, j)] = sector_gain(beam, eps, problem.zeta_b()[(i, j)])?;
            }
            gu[(i, j)] = sector_gain(&config.ue[j], eps, problem.zeta_u()[(i, j)])?;
        }
    }
    Ok((gb, gu))
}

/// Received power `p g^b g^c g^u` of every link, mW.
pub(crate) fn received_power<T: Scalar>(problem: &CellFormationProblem<T>, gb: &Matrix<T>, gu: &Matrix<T>) -> Matrix<T> {
    let p = problem.radio().tx_power_mw();
    let gc = problem.channel_gains();
    Matrix::from_fn(gb.rows(), gb.cols(), |i, j| p * gb[(i, j)] * gc[(i, j)] * gu[(i, j)])
}

/// SINR of link `(i, j)` given all received powers: every other virtual
/// BS, siblings included, interferes.
pub(crate) fn link_sinr<T: Scalar>(rx: &Matrix<T>, noise: T, i: usize, j: usize) -> T {
    let interference = (0..rx.rows())
        .filter(|&k| k != i)
        .fold(T::zero(), |acc, k| acc + rx[(k, j)]);
    rx[(i, j)] / (interference + noise)
}

pub fn sinr_matrix<T: Scalar>(problem: &CellFormationProblem<T>, config: &BeamConfig<T>) -> Result<Matrix<T>> {
    let (gb, gu) = directivity_gains(config, problem)?;
    let rx = received_power(problem, &gb, &gu);
    let noise = problem.radio().noise_power_mw();
    Ok(Matrix::from_fn(rx.rows(), rx.cols(), |i, j| link_sinr(&rx, noise, i, j)))
}

/// Shannon rate `log2(1 + SINR)` in bit/s/Hz.
pub fn shannon_rate<T: Scalar>(sinr: T) -> T {
    sinr.ln_1p() / T::LN_2()
}

pub fn rate_matrix<T: Scalar>(sinr: &Matrix<T>) -> Matrix<T> {
    sinr.map(shannon_rate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::problem::BaseStation;
    use crate::geometry::Point;
    use crate::model::{Mode, RadioParams};
    use std::f64::consts::PI;

    fn radio(eps: f64) -> RadioParams<f64> {
        RadioParams::control_channel_28ghz().with_sidelobe_gain(eps).unwrap()
    }

    #[test]
    fn omni_gains_are_one() {
        let p = CellFormationProblem::new(
            radio(0.01),
            vec![BaseStation::new(Point::new(0.0, 0.0), 1), BaseStation::new(Point::new(300.0, 0.0), 1)],
            vec![Point::new(10.0, 50.0), Point::new(200.0, -40.0), Point::new(-80.0, 5.0)],
            Mode::Omni,
        )
        .unwrap();
        let (gb, gu) = directivity_gains(&BeamConfig::omni(&p), &p).unwrap();
        assert!(gb.iter().chain(gu.iter()).all(|g| g == 1.0));
    }

    #[test]
    fn ue_beam_on_server() {
        let p = CellFormationProblem::new(
            radio(0.0),
            vec![BaseStation::new(Point::new(0.0, 0.0), 1)],
            vec![Point::new(70.0, 70.0)],
            Mode::Fully,
        )
        .unwrap();
        let mut cfg = BeamConfig::omni(&p);
        cfg.ue[0] = Beam::new(10f64.to_radians(), p.zeta_u()[(0, 0)]).unwrap();
        let (_, gu) = directivity_gains(&cfg, &p).unwrap();
        assert!((gu[(0, 0)] - 36.0).abs() < 1e-9);

        // BS aimed the other way
        cfg.bs[0] = Some(Beam::new(PI / 6.0, p.zeta_b()[(0, 0)] + PI).unwrap());
        let (gb, _) = directivity_gains(&cfg, &p).unwrap();
        assert_eq!(gb[(0, 0)], 0.0);
    }

    #[test]
    fn narrow_beams_rejected_in_restricted_modes() {
        let p = CellFormationProblem::new(
            radio(0.0),
            vec![BaseStation::new(Point::new(0.0, 0.0), 1)],
            vec![Point::new(70.0, 70.0)],
            Mode::Semi,
        )
        .unwrap();
        let mut cfg = BeamConfig::omni(&p);
        cfg.ue[0] = Beam::new(0.5, 0.0).unwrap();
        assert!(directivity_gains(&cfg, &p).is_err());
    }

    #[test]
    fn single_link_sinr_is_snr() {
        let r = radio(0.01);
        let unit = r.wavelength() / (4.0 * PI);
        let p = CellFormationProblem::new(
            r,
            vec![BaseStation::new(Point::new(0.0, 0.0), 1)],
            vec![Point::new(unit, 0.0)],
            Mode::Omni,
        )
        .unwrap();
        let s = sinr_matrix(&p, &BeamConfig::omni(&p)).unwrap();
        assert!((s[(0, 0)] / (r.tx_power_mw() / r.noise_power_mw()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_geometry_gives_equal_sinr() {
        let p = CellFormationProblem::new(
            radio(0.01),
            vec![BaseStation::new(Point::new(-200.0, 0.0), 1), BaseStation::new(Point::new(200.0, 0.0), 1)],
            vec![Point::new(-150.0, 30.0), Point::new(150.0, 30.0)],
            Mode::Omni,
        )
        .unwrap();
        let s = sinr_matrix(&p, &BeamConfig::omni(&p)).unwrap();
        assert!((s[(0, 0)] / s[(1, 1)] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hand_summed_three_node_instance() {
        // BS0 serves UE0; BS1 sits behind UE0's receive lobe, BS2 beside it.
        let eps = 0.0;
        let r = radio(eps);
        let p = CellFormationProblem::new(
            r,
            vec![
                BaseStation::new(Point::new(0.0, 0.0), 1),
                BaseStation::new(Point::new(200.0, 0.0), 1),
                BaseStation::new(Point::new(100.0, 150.0), 1),
            ],
            vec![Point::new(100.0, 0.0)],
            Mode::Fully,
        )
        .unwrap();
        let mut cfg = BeamConfig::omni(&p);
        cfg.ue[0] = Beam::new(10f64.to_radians(), PI).unwrap();
        let s = sinr_matrix(&p, &cfg).unwrap();

        let g_ue = 36.0;
        let pw = r.tx_power_mw();
        let pl = |d: f64| (r.wavelength() / (4.0 * PI * d)).powi(3);
        let signal = pw * pl(100.0) * g_ue;
        assert!((s[(0, 0)] / (signal / r.noise_power_mw()) - 1.0).abs() < 1e-12);

        // with a side lobe the two interferers leak in at ε
        let eps = 0.05;
        let p2 = CellFormationProblem::new(radio(eps), p.base_stations().to_vec(), p.ues().to_vec(), Mode::Fully).unwrap();
        let s2 = sinr_matrix(&p2, &cfg).unwrap();
        let main = (2.0 * PI - (2.0 * PI - 10f64.to_radians()) * eps) / 10f64.to_radians();
        let num = pw * pl(100.0) * main;
        let den = pw * pl(100.0) * eps + pw * pl(150.0) * eps + r.noise_power_mw();
        assert!((s2[(0, 0)] / (num / den) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rates() {
        assert_eq!(shannon_rate(1.0f64), 1.0);
        assert_eq!(shannon_rate(0.0f64), 0.0);
        assert!((shannon_rate(1e3f64) - 9.967_226_258_835_993).abs() < 1e-12);
    }
}
