//! Derivative-free multi-start search over pure states.
//!
//! A pure state is a point of the unit 7-sphere in `ℝ⁸ ≅ ℂ⁴`, parametrized by
//! seven hyperspherical angles, which seed the starting points. Each restart
//! then runs a pattern search in the tangent space of the sphere, halving the
//! step and redrawing the search frame whenever a sweep fails to improve. Restarts are independent and run in parallel; the
//! lowest objective wins, ties going to the lower restart index.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use num_complex::Complex64;

use crate::states::{seeded_rng, PureState};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    pub restarts: usize,
    /// A result is accepted when its objective is at or below this value.
    pub tolerance: f64,
    pub initial_step: f64,
    /// A restart ends once its step falls below this.
    pub min_step: f64,
    /// A restart also ends once its objective drops below this (roundoff level).
    pub floor: f64,
    pub max_evaluations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            restarts: 32,
            tolerance: 1e-16,
            initial_step: 0.5,
            min_step: 1e-13,
            floor: 1e-30,
            max_evaluations: 400_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchResult {
    pub state: PureState,
    pub objective: f64,
    pub restarts_used: usize,
    /// Index of the winning restart.
    pub best_restart: usize,
}

/// Maps seven angles to a unit vector of `ℂ⁴`.
pub fn angles_to_state(t: &[f64; 7]) -> PureState {
    let mut x = [0.0f64; 8];
    let mut sin_prod = 1.0;
    for k in 0..7 {
        x[k] = sin_prod * t[k].cos();
        sin_prod *= t[k].sin();
    }
    x[7] = sin_prod;
    let amps = std::array::from_fn(|k| Complex64::new(x[2 * k], x[2 * k + 1]));
    PureState::normalized(amps).expect("point of the unit sphere")
}

fn to_real(psi: &PureState) -> [f64; 8] {
    let a = psi.amplitudes();
    std::array::from_fn(|k| if k % 2 == 0 { a[k / 2].re } else { a[k / 2].im })
}

fn from_real(x: &[f64; 8]) -> PureState {
    let amps = std::array::from_fn(|k| Complex64::new(x[2 * k], x[2 * k + 1]));
    PureState::normalized(amps).expect("nonzero point")
}

fn dot(a: &[f64; 8], b: &[f64; 8]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Random orthonormal basis of the tangent space of the sphere at `x`.
fn tangent_frame<R: Rng>(x: &[f64; 8], rng: &mut R) -> Vec<[f64; 8]> {
    let mut frame: Vec<[f64; 8]> = Vec::with_capacity(7);
    while frame.len() < 7 {
        let mut v: [f64; 8] = std::array::from_fn(|_| rng.sample(StandardNormal));
        for b in std::iter::once(x).chain(frame.iter()) {
            let p = dot(b, &v);
            for i in 0..8 {
                v[i] -= p * b[i];
            }
        }
        let n = dot(&v, &v).sqrt();
        if n > 1e-6 {
            frame.push(v.map(|t| t / n));
        }
    }
    frame
}

/// Pattern search on the sphere: try `x ± step·d` (renormalized) along each
/// direction of a tangent frame, accepting the first improvement. When a full
/// sweep fails the step halves and a fresh random frame is drawn.
fn pattern_search<F, R>(
    objective: &F,
    start: PureState,
    rng: &mut R,
    cfg: &SolverConfig,
) -> (PureState, f64)
where
    F: Fn(&PureState) -> f64,
    R: Rng,
{
    let mut x = to_real(&start);
    let mut fx = objective(&start);
    let mut step = cfg.initial_step;
    let mut evals = 1;
    let mut frame = tangent_frame(&x, rng);
    while step >= cfg.min_step && evals < cfg.max_evaluations && fx > cfg.floor {
        let mut improved = false;
        for d in &frame {
            for dir in [1.0, -1.0] {
                let trial: [f64; 8] = std::array::from_fn(|i| x[i] + dir * step * d[i]);
                let psi = from_real(&trial);
                let ft = objective(&psi);
                evals += 1;
                if ft < fx {
                    x = to_real(&psi);
                    fx = ft;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
        frame = tangent_frame(&x, rng);
    }
    (from_real(&x), fx)
}

/// Minimizes `objective` over pure states from `cfg.restarts` seeded starts.
pub fn minimize<F>(objective: F, seed: u64, cfg: &SolverConfig) -> SearchResult
where
    F: Fn(&PureState) -> f64 + Sync,
{
    let results: Vec<(PureState, f64)> = (0..cfg.restarts.max(1))
        .into_par_iter()
        .map(|k| {
            let mut rng = seeded_rng(seed);
            rng.set_stream(k as u64);
            let start: [f64; 7] =
                std::array::from_fn(|_| rng.random_range(0.0..std::f64::consts::TAU));
            pattern_search(&objective, angles_to_state(&start), &mut rng, cfg)
        })
        .collect();

    let mut best = 0;
    for (k, (_, f)) in results.iter().enumerate() {
        // NaN never wins.
        if *f < results[best].1 || results[best].1.is_nan() {
            best = k;
        }
    }
    SearchResult {
        state: results[best].0.phase_gauged(),
        objective: results[best].1,
        restarts_used: results.len(),
        best_restart: best,
    }
}
