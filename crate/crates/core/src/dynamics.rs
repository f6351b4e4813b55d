//! Time-domain simulation of `N` identical agents coupled through a
//! Laplacian: `ξ̇ = (I_N ⊗ A - r L ⊗ B K) ξ`.

use log::{debug, warn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::consensus::FrequencyVariable;
use crate::linalg::Matrix;
use crate::{Error, Result};

/// State norm above which an integration is stopped as divergent.
pub const DIVERGENCE_NORM: f64 = 1e12;
pub const DEFAULT_STEP: f64 = 1e-3;
pub const DEFAULT_HORIZON: f64 = 60.0;
pub const DEFAULT_SHRINK_TOL: f64 = 1e-6;
pub const DEFAULT_GROW_TOL: f64 = 1e2;

/// Controllable canonical realisation of one agent.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentModel {
    /// Companion matrix of `a(s)`.
    pub a: Matrix,
    /// `e_d`.
    pub b: Matrix,
    /// `b(s)` coefficients padded with zeros to length `d`.
    pub k: Matrix,
}

impl AgentModel {
    pub fn from_frequency_variable(fv: &FrequencyVariable) -> Self {
        let d = fv.order();
        let mut a = Matrix::zeros(d, d);
        for i in 0..d - 1 {
            a[(i, i + 1)] = 1.0;
        }
        for (j, &coef) in fv.a()[..d].iter().enumerate() {
            a[(d - 1, j)] = -coef;
        }
        let mut b = Matrix::zeros(d, 1);
        b[(d - 1, 0)] = 1.0;
        let mut k = Matrix::zeros(1, d);
        for (j, &coef) in fv.b().iter().enumerate() {
            k[(0, j)] = coef;
        }
        Self { a, b, k }
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }
}

/// `I_N ⊗ A - r L ⊗ (B K)`.
pub fn build_closed_loop(model: &AgentModel, laplacian: &Matrix, r: f64) -> Result<Matrix> {
    let n = laplacian.rows();
    if laplacian.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "Laplacian is {}x{}",
            laplacian.rows(),
            laplacian.cols()
        )));
    }
    let d = model.dim();
    if model.a.cols() != d || model.b.rows() != d || model.b.cols() != 1 || model.k.rows() != 1 || model.k.cols() != d
    {
        return Err(Error::DimensionMismatch(format!("inconsistent agent model of order {d}")));
    }
    let bk = model.b.mul(&model.k)?;
    Matrix::identity(n).kron(&model.a).sub(&laplacian.scale(r).kron(&bk))
}

/// Uniform initial state in `[-1, 1]^len` from a seeded ChaCha8 stream.
pub fn random_initial_state(len: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

/// `max_{i,k} ‖ξ_i - ξ_k‖` over agents whose states are consecutive blocks
/// of length `dim`.
pub fn disagreement(state: &[f64], dim: usize) -> f64 {
    let agents: Vec<&[f64]> = state.chunks(dim).collect();
    let mut worst = 0.0f64;
    for (i, xi) in agents.iter().enumerate() {
        for xk in &agents[i + 1..] {
            let d2: f64 = xi.iter().zip(xk.iter()).map(|(a, b)| (a - b) * (a - b)).sum();
            worst = worst.max(d2);
        }
    }
    worst.sqrt()
}

/// Fixed-step classical Runge-Kutta settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Integrator {
    pub horizon: f64,
    pub step: f64,
    /// Record every `stride`-th step (the last step is always recorded).
    pub stride: usize,
    pub record_states: bool,
}

impl Default for Integrator {
    fn default() -> Self {
        Self { horizon: DEFAULT_HORIZON, step: DEFAULT_STEP, stride: 1, record_states: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// Empty unless states were requested.
    pub states: Vec<Vec<f64>>,
    pub disagreement: Vec<f64>,
    pub diverged: bool,
}

impl Trajectory {
    pub fn initial_disagreement(&self) -> f64 {
        self.disagreement[0]
    }

    pub fn final_disagreement(&self) -> f64 {
        *self.disagreement.last().expect("trajectory has at least one sample")
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory has at least one sample")
    }
}

impl Integrator {
    pub fn new(horizon: f64, step: f64) -> Result<Self> {
        let s = Self { horizon, step, ..Self::default() };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::Domain(format!("step h = {} must be positive", self.step)));
        }
        if !(self.horizon >= self.step && self.horizon.is_finite()) {
            return Err(Error::Domain(format!("horizon T = {} must be at least h", self.horizon)));
        }
        if self.stride == 0 {
            return Err(Error::Domain("stride must be at least 1".into()));
        }
        Ok(())
    }

    /// Integrates `ξ̇ = M ξ` from `xi0`; agents are blocks of length `dim`.
    pub fn integrate(&self, system: &Matrix, xi0: &[f64], dim: usize) -> Result<Trajectory> {
        self.validate()?;
        let len = system.rows();
        if system.cols() != len || xi0.len() != len || dim == 0 || len % dim != 0 {
            return Err(Error::DimensionMismatch(format!(
                "system {}x{}, state {}, agent dimension {dim}",
                system.rows(),
                system.cols(),
                xi0.len()
            )));
        }
        let steps = (self.horizon / self.step).round() as usize;
        let h = self.step;
        let mut x = xi0.to_vec();
        let mut traj = Trajectory {
            times: vec![0.0],
            states: Vec::new(),
            disagreement: vec![disagreement(&x, dim)],
            diverged: false,
        };
        if self.record_states {
            traj.states.push(x.clone());
        }
        let mut k1 = vec![0.0; len];
        let mut k2 = vec![0.0; len];
        let mut k3 = vec![0.0; len];
        let mut k4 = vec![0.0; len];
        let mut tmp = vec![0.0; len];
        for step in 1..=steps {
            system.mul_vec_into(&x, &mut k1);
            axpy_into(&x, 0.5 * h, &k1, &mut tmp);
            system.mul_vec_into(&tmp, &mut k2);
            axpy_into(&x, 0.5 * h, &k2, &mut tmp);
            system.mul_vec_into(&tmp, &mut k3);
            axpy_into(&x, h, &k3, &mut tmp);
            system.mul_vec_into(&tmp, &mut k4);
            for i in 0..len {
                x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let diverged = !norm.is_finite() || norm > DIVERGENCE_NORM;
            if diverged || step % self.stride == 0 || step == steps {
                traj.times.push(step as f64 * h);
                traj.disagreement.push(disagreement(&x, dim));
                if self.record_states {
                    traj.states.push(x.clone());
                }
            }
            if diverged {
                warn!("state norm {norm:.3e} at t = {:.3}; stopping", step as f64 * h);
                traj.diverged = true;
                break;
            }
        }
        debug!("integrated {} samples to t = {}", traj.times.len(), traj.final_time());
        Ok(traj)
    }
}

fn axpy_into(x: &[f64], alpha: f64, y: &[f64], out: &mut [f64]) {
    for ((o, a), b) in out.iter_mut().zip(x).zip(y) {
        *o = a + alpha * b;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Consensus,
    NoConsensus,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Consensus => "consensus",
            Verdict::NoConsensus => "no-consensus",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Classifies a run by the ratio of final to initial disagreement.
pub fn verdict(traj: &Trajectory, shrink_tol: f64, grow_tol: f64) -> Verdict {
    if traj.diverged {
        return Verdict::NoConsensus;
    }
    let start = traj.initial_disagreement();
    let end = traj.final_disagreement();
    if end <= shrink_tol * start {
        Verdict::Consensus
    } else if end >= grow_tol * start {
        Verdict::NoConsensus
    } else {
        Verdict::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::RingTopology;

    #[test]
    fn companion_realisation() {
        let fv = FrequencyVariable::relative_velocity(3.0).unwrap();
        let m = AgentModel::from_frequency_variable(&fv);
        assert_eq!(m.a.as_slice(), &[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(m.b.as_slice(), &[0.0, 1.0]);
        assert_eq!(m.k.as_slice(), &[1.0, 3.0]);
    }

    #[test]
    fn first_order_closed_loop_is_minus_laplacian() {
        let model = AgentModel::from_frequency_variable(&FrequencyVariable::first_order());
        let l = RingTopology::pursuit(3).unwrap().laplacian().to_real();
        let m = build_closed_loop(&model, &l, 1.0).unwrap();
        assert_eq!(m, l.scale(-1.0));
    }

    #[test]
    fn single_agent_is_uncoupled() {
        let fv = FrequencyVariable::absolute_velocity(2.0).unwrap();
        let model = AgentModel::from_frequency_variable(&fv);
        let m = build_closed_loop(&model, &Matrix::zeros(1, 1), 1.0).unwrap();
        assert_eq!(m, model.a);
    }

    #[test]
    fn exponential_decay() {
        let m = Matrix::from_row_major(2, 2, vec![-1.0, 0.0, 0.0, -1.0]).unwrap();
        let traj = Integrator::new(1.0, 1e-3).unwrap().integrate(&m, &[1.0, -1.0], 1).unwrap();
        let expected = 2.0 * (-1.0f64).exp();
        assert!((traj.final_disagreement() - expected).abs() < 1e-12);
        assert_eq!(traj.times.len(), 1001);
    }

    #[test]
    fn divergence_stops_early() {
        let m = Matrix::from_row_major(2, 2, vec![30.0, 0.0, 0.0, 0.0]).unwrap();
        let traj = Integrator::new(60.0, 1e-3).unwrap().integrate(&m, &[1.0, 0.0], 1).unwrap();
        assert!(traj.diverged);
        assert!(traj.final_time() < 2.0);
        assert_eq!(verdict(&traj, 1e-6, 1e2), Verdict::NoConsensus);
    }

    #[test]
    fn disagreement_of_blocks() {
        assert_eq!(disagreement(&[0.0, 0.0, 3.0, 4.0, 0.0, 1.0], 2), 5.0);
        assert_eq!(disagreement(&[1.0, 1.0], 1), 0.0);
    }

    #[test]
    fn seeded_initial_state() {
        let a = random_initial_state(10, 7);
        assert_eq!(a, random_initial_state(10, 7));
        assert_ne!(a, random_initial_state(10, 8));
        assert!(a.iter().all(|v| (-1.0..=1.0).contains(v)));
    }

    #[test]
    fn verdict_thresholds() {
        let traj = |end: f64| Trajectory {
            times: vec![0.0, 1.0],
            states: Vec::new(),
            disagreement: vec![1.0, end],
            diverged: false,
        };
        assert_eq!(verdict(&traj(1e-7), 1e-6, 1e2), Verdict::Consensus);
        assert_eq!(verdict(&traj(1e3), 1e-6, 1e2), Verdict::NoConsensus);
        assert_eq!(verdict(&traj(0.5), 1e-6, 1e2), Verdict::Inconclusive);
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(Integrator::new(1.0, 0.0).is_err());
        assert!(Integrator::new(1e-4, 1e-3).is_err());
        let m = Matrix::identity(3);
        assert!(Integrator::default().integrate(&m, &[0.0; 3], 2).is_err());
    }
}
