//! Seeded self-checks that compare each fast computation with an
//! independent route to the same number.

use rayon::prelude::*;

use crate::algebra::GeneratorTable;
use crate::bellpair::{canonical_pair, transported_pair};
use crate::correlation::{
    brute_force_correlation, concurrence, concurrence_closed_form, total_correlation,
};
use crate::states::{random_pure, seeded_rng, w_vector, StateFunctional};
use crate::transport::{random_unitary, rotate_state};

pub const W_VECTOR_TOLERANCE: f64 = 1e-12;
pub const CONCURRENCE_TOLERANCE: f64 = 1e-10;
/// Sampling may fall short of the supremum by at most this much.
pub const BRUTE_FORCE_SHORTFALL: f64 = 0.05;
/// Sampling may never exceed the supremum by more than this.
pub const BRUTE_FORCE_OVERSHOOT: f64 = 1e-10;
pub const INVARIANCE_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    /// Seed of the case with the largest deviation.
    pub worst_seed: u64,
    pub passed: bool,
}

impl OracleOutcome {
    fn from_deviations(name: &'static str, tolerance: f64, devs: Vec<(u64, f64)>) -> Self {
        let cases = devs.len();
        let (worst_seed, max_deviation) =
            devs.into_iter()
                .fold((0, f64::NEG_INFINITY), |best, (s, d)| {
                    if d > best.1 || d.is_nan() {
                        (s, d)
                    } else {
                        best
                    }
                });
        let max_deviation = if cases == 0 { 0.0 } else { max_deviation };
        OracleOutcome {
            name,
            cases,
            max_deviation,
            tolerance,
            worst_seed,
            passed: max_deviation <= tolerance,
        }
    }
}

/// Seed of case `i` in a run seeded with `seed`.
pub fn case_seed(seed: u64, i: usize) -> u64 {
    // SplitMix64 finalizer, so neighbouring run seeds do not share cases.
    let mut z = seed.wrapping_add((i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Closed-form `wⱼ` against `⟨Ψ, λⱼΨ⟩` computed from `table`.
pub fn w_vector_oracle(table: &GeneratorTable, seed: u64, n: usize) -> OracleOutcome {
    let devs = (0..n)
        .into_par_iter()
        .map(|i| {
            let s = case_seed(seed, i);
            let psi = random_pure(s);
            let w = w_vector(&psi);
            let d = (1..=15)
                .map(|j| (psi.expectation(table.get(j)) - w.get(j)).norm())
                .fold(0.0, f64::max);
            (s, d)
        })
        .collect();
    OracleOutcome::from_deviations("w-vector", W_VECTOR_TOLERANCE, devs)
}

/// `‖Q‖` under the canonical pair against `2|z₁z₄ − z₂z₃|`.
pub fn concurrence_oracle(seed: u64, n: usize) -> OracleOutcome {
    let devs = (0..n)
        .into_par_iter()
        .map(|i| {
            let s = case_seed(seed, i);
            let psi = random_pure(s);
            (s, (concurrence(&psi) - concurrence_closed_form(&psi)).abs())
        })
        .collect();
    OracleOutcome::from_deviations("concurrence", CONCURRENCE_TOLERANCE, devs)
}

/// Random sampling of observables against the singular-value supremum, on
/// random states and randomly transported pairs. A case deviates by its
/// shortfall `‖Q‖ − sampled`; an overshoot beyond [`BRUTE_FORCE_OVERSHOOT`]
/// is scaled up so that it fails against [`BRUTE_FORCE_SHORTFALL`].
pub fn brute_force_oracle(seed: u64, n: usize, samples: usize) -> OracleOutcome {
    let devs = (0..n)
        .into_par_iter()
        .map(|i| {
            let s = case_seed(seed, i);
            let psi = random_pure(s);
            let u = random_unitary(&mut seeded_rng(s ^ 0x5A5A));
            let pair = transported_pair(&u, &canonical_pair());
            let norm = total_correlation(&psi, &pair);
            let sampled = brute_force_correlation(&psi, &pair, samples, s);
            let overshoot = (sampled - norm) * (BRUTE_FORCE_SHORTFALL / BRUTE_FORCE_OVERSHOOT);
            (s, (norm - sampled).max(overshoot))
        })
        .collect();
    OracleOutcome::from_deviations("brute-force-vs-svd", BRUTE_FORCE_SHORTFALL, devs)
}

/// `C` of `UΨ` under the canonical pair against `C` of `Ψ` under the pair
/// moved by `U†`.
pub fn invariance_oracle(seed: u64, n: usize) -> OracleOutcome {
    let devs = (0..n)
        .into_par_iter()
        .map(|i| {
            let s = case_seed(seed, i);
            let psi = random_pure(s);
            let u = random_unitary(&mut seeded_rng(s ^ 0xA5A5));
            let lhs = total_correlation(&rotate_state(&u, &psi), &canonical_pair());
            let rhs = total_correlation(&psi, &transported_pair(&u.adjoint(), &canonical_pair()));
            (s, (lhs - rhs).abs())
        })
        .collect();
    OracleOutcome::from_deviations("transport-invariance", INVARIANCE_TOLERANCE, devs)
}

pub fn run_all(table: &GeneratorTable, seed: u64, n: usize, samples: usize) -> Vec<OracleOutcome> {
    vec![
        w_vector_oracle(table, seed, n),
        concurrence_oracle(seed, n),
        brute_force_oracle(seed, n, samples),
        invariance_oracle(seed, n),
    ]
}
