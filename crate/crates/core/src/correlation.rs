//! Correlation matrices and total correlation.
//!
//! For a pair with generators `Aᵢ`, `Bⱼ` and a state `ω`, the correlation
//! matrix is `qᵢⱼ = ω(AᵢBⱼ) − ω(Aᵢ)ω(Bⱼ)`. For unit `a, b ∈ ℝ³` and
//! `A = Σaᵢ Aᵢ`, `B = Σbⱼ Bⱼ`,
//!
//! ```text
//! ω(AB) − ω(A)ω(B) = ⟨a, Q b⟩
//! ```
//!
//! so the total correlation of a pure state, the supremum of
//! `|ω(AB) − ω(A)ω(B)|` over such observables, is the largest singular value
//! of `Q`. Identity components of `A` and `B` are excluded from the supremum.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::bellpair::{canonical_pair, BellPair};
use crate::error::{Error, Result};
use crate::states::{inner, seeded_rng, PureState, StateFunctional};
use crate::symmetric3::{eigenvalues, jacobi, Sym3};

/// The 3×3 real correlation matrix `Q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationMatrix(pub [[f64; 3]; 3]);

impl CorrelationMatrix {
    pub fn zeros() -> Self {
        CorrelationMatrix([[0.0; 3]; 3])
    }

    pub fn diagonal(d: [f64; 3]) -> Self {
        let mut q = Self::zeros();
        for k in 0..3 {
            q.0[k][k] = d[k];
        }
        q
    }

    pub fn rows(&self) -> &[[f64; 3]; 3] {
        &self.0
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest entrywise difference.
    pub fn max_diff(&self, other: &CorrelationMatrix) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }

    /// `⟨a, Q b⟩`
    pub fn bilinear(&self, a: &[f64; 3], b: &[f64; 3]) -> f64 {
        (0..3)
            .map(|i| a[i] * (0..3).map(|j| self.0[i][j] * b[j]).sum::<f64>())
            .sum()
    }

    fn gram(&self) -> Sym3 {
        let q = &self.0;
        let mut g = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                g[i][j] = (0..3).map(|k| q[k][i] * q[k][j]).sum();
            }
        }
        g
    }

    fn scaled(&self) -> (f64, CorrelationMatrix) {
        let s = self.max_abs();
        if s == 0.0 {
            (0.0, *self)
        } else {
            (s, CorrelationMatrix(self.0.map(|row| row.map(|x| x / s))))
        }
    }
}

/// `qᵢⱼ = ω(AᵢBⱼ) − ω(Aᵢ)ω(Bⱼ)`; defined for pure and mixed states alike.
pub fn correlation_matrix<S: StateFunctional + ?Sized>(
    state: &S,
    pair: &BellPair,
) -> CorrelationMatrix {
    let a = pair.left().gens();
    let b = pair.right().gens();
    let ea = a.each_ref().map(|g| state.real_expectation(g));
    let eb = b.each_ref().map(|g| state.real_expectation(g));
    let mut q = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            q[i][j] = state.real_expectation(&(a[i] * b[j])) - ea[i] * eb[j];
        }
    }
    CorrelationMatrix(q)
}

/// Largest singular value of `Q`: the square root of the largest eigenvalue
/// of `QᵀQ`, computed on a rescaled copy so tiny matrices keep full relative
/// precision.
pub fn spectral_norm(q: &CorrelationMatrix) -> f64 {
    let (s, unit) = q.scaled();
    if s == 0.0 {
        return 0.0;
    }
    s * eigenvalues(&unit.gram())[0].max(0.0).sqrt()
}

/// Top singular triple `(σ, a, b)` with `Q b = σ a`, `|a| = |b| = 1`.
pub fn top_singular_pair(q: &CorrelationMatrix) -> (f64, [f64; 3], [f64; 3]) {
    let (s, unit) = q.scaled();
    let (_, vecs) = jacobi(&unit.gram());
    let b = vecs[0];
    let qb: [f64; 3] = std::array::from_fn(|i| (0..3).map(|j| q.0[i][j] * b[j]).sum());
    let n = qb.iter().map(|x| x * x).sum::<f64>().sqrt();
    if s == 0.0 || n == 0.0 {
        return (0.0, [1.0, 0.0, 0.0], b);
    }
    (n, qb.map(|x| x / n), b)
}

/// Total correlation `C_ω(𝒜, ℬ) = ‖Q‖`. Pure states only: the singular-value
/// identity does not hold for mixtures.
pub fn total_correlation(psi: &PureState, pair: &BellPair) -> f64 {
    spectral_norm(&correlation_matrix(psi, pair))
}

/// Concurrence as the total correlation under the canonical pair.
pub fn concurrence(psi: &PureState) -> f64 {
    total_correlation(psi, &canonical_pair())
}

/// Pure-state concurrence `2|z₁z₄ − z₂z₃|`.
pub fn concurrence_closed_form(psi: &PureState) -> f64 {
    let [z1, z2, z3, z4] = *psi.amplitudes();
    2.0 * (z1 * z4 - z2 * z3).norm()
}

/// Unit coefficient vectors selecting `A = Σaᵢ Aᵢ`, `B = Σbⱼ Bⱼ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObservablePair {
    a: [f64; 3],
    b: [f64; 3],
}

impl ObservablePair {
    pub const TOLERANCE: f64 = 1e-12;

    pub fn new(a: [f64; 3], b: [f64; 3]) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b)] {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm.is_nan() || (norm - 1.0).abs() > Self::TOLERANCE {
                return Err(Error::NonUnitTarget { name, norm });
            }
        }
        Ok(ObservablePair { a, b })
    }

    pub fn a(&self) -> &[f64; 3] {
        &self.a
    }

    pub fn b(&self) -> &[f64; 3] {
        &self.b
    }
}

/// `|ω(AB) − ω(A)ω(B)|` for the observables selected by `obs`, evaluated on
/// the assembled 4×4 matrices.
pub fn observable_correlation(psi: &PureState, pair: &BellPair, obs: &ObservablePair) -> f64 {
    let a = pair.left().combination(obs.a());
    let b = pair.right().combination(obs.b());
    let joint = psi.expectation(&(a * b));
    (joint - psi.expectation(&a) * psi.expectation(&b)).norm()
}

fn random_unit3<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.map(|x| x / n);
        }
    }
}

/// Sampled lower bound on the total correlation: the largest
/// `|ω(AB) − ω(A)ω(B)|` over `samples` uniformly drawn unit pairs `(a, b)`.
///
/// Works on the state vectors `AΨ`, `BΨ` directly (`ω(AB) = ⟨AΨ, BΨ⟩` for
/// hermitian `A`) without touching `Q`.
pub fn brute_force_correlation(psi: &PureState, pair: &BellPair, samples: usize, seed: u64) -> f64 {
    let v = psi.amplitudes();
    let av = pair.left().gens().each_ref().map(|g| g.apply(v));
    let bv = pair.right().gens().each_ref().map(|g| g.apply(v));
    let combine = |vs: &[[Complex64; 4]; 3], c: &[f64; 3]| -> [Complex64; 4] {
        std::array::from_fn(|k| vs[0][k] * c[0] + vs[1][k] * c[1] + vs[2][k] * c[2])
    };

    let mut rng = seeded_rng(seed);
    let mut best = 0.0f64;
    for _ in 0..samples {
        let a = random_unit3(&mut rng);
        let b = random_unit3(&mut rng);
        let a_psi = combine(&av, &a);
        let b_psi = combine(&bv, &b);
        let value = inner(&a_psi, &b_psi) - inner(v, &a_psi) * inner(v, &b_psi);
        best = best.max(value.norm());
    }
    best
}
