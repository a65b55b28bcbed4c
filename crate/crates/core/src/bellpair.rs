//! Bell pairs of subalgebras.
//!
//! Each side of a pair is generated by three hermitian involutions that
//! pairwise anticommute, `𝒜 = [𝟙, A₁, A₂, A₃]`, `ℬ = [𝟙, B₁, B₂, B₃]`. The two
//! sides must commute elementwise and jointly generate the whole 4×4 algebra.
//!
//! Generation is checked on the sixteen products `AᵅBᵝ` (`A⁰ = B⁰ = 𝟙`):
//! given the involution and anticommutation relations, each side's span
//! `{𝟙, A₁, A₂, A₃}` is already closed under multiplication, so the products
//! span the generated algebra and rank 16 means the pair generates
//! everything. Closure is verified explicitly rather than assumed.
//!
//! A [`BellPair`] value always passed validation; unchecked generators live in
//! a [`PairCandidate`].

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::algebra::{anticommutator, commutator, lambda, rank_of_span, Matrix4, Unitary4};
use crate::error::{Error, Result};

/// Default tolerance on max-entry violations of the defining identities.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Three generators of one side of a pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubalgebraTriple {
    gens: [Matrix4; 3],
}

impl SubalgebraTriple {
    pub fn new(gens: [Matrix4; 3]) -> Self {
        SubalgebraTriple { gens }
    }

    pub fn gens(&self) -> &[Matrix4; 3] {
        &self.gens
    }

    /// `Σ vᵢGᵢ` for a real coefficient vector.
    pub fn combination(&self, v: &[f64; 3]) -> Matrix4 {
        self.gens
            .iter()
            .zip(v)
            .fold(Matrix4::zeros(), |acc, (g, x)| acc + g.scale_real(*x))
    }

    fn conjugated(&self, u: &Matrix4) -> Self {
        SubalgebraTriple {
            gens: self.gens.map(|g| g.conjugate_by(u)),
        }
    }
}

/// Six generators that have not been validated yet.
#[derive(Clone, Debug, PartialEq)]
pub struct PairCandidate {
    pub label: String,
    pub left: [Matrix4; 3],
    pub right: [Matrix4; 3],
}

/// A validated Bell pair. The label is metadata and does not take part in
/// equality.
#[derive(Clone, Debug)]
pub struct BellPair {
    left: SubalgebraTriple,
    right: SubalgebraTriple,
    label: String,
}

impl PartialEq for BellPair {
    fn eq(&self, other: &Self) -> bool {
        self.left == other.left && self.right == other.right
    }
}

impl BellPair {
    /// Validates `candidate` at `tol`.
    pub fn try_from_candidate(candidate: PairCandidate, tol: f64) -> Result<Self> {
        let report = validate(&candidate, tol);
        if !report.passed() {
            return Err(Error::InvalidPair(Box::new(report)));
        }
        Ok(BellPair {
            left: SubalgebraTriple::new(candidate.left),
            right: SubalgebraTriple::new(candidate.right),
            label: candidate.label,
        })
    }

    fn from_trusted(label: impl Into<String>, left: [Matrix4; 3], right: [Matrix4; 3]) -> Self {
        let pair = BellPair {
            left: SubalgebraTriple::new(left),
            right: SubalgebraTriple::new(right),
            label: label.into(),
        };
        debug_assert!(pair.validate(DEFAULT_TOLERANCE).passed(), "{pair:?}");
        pair
    }

    pub fn left(&self) -> &SubalgebraTriple {
        &self.left
    }

    pub fn right(&self) -> &SubalgebraTriple {
        &self.right
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn to_candidate(&self) -> PairCandidate {
        PairCandidate {
            label: self.label.clone(),
            left: self.left.gens,
            right: self.right.gens,
        }
    }

    pub fn validate(&self, tol: f64) -> ValidationReport {
        validate(&self.to_candidate(), tol)
    }
}

/// Per-condition outcome of [`validate`]. Violations are max-entry magnitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub tolerance: f64,
    /// `max |G − G†|` over all six generators.
    pub hermiticity: f64,
    /// `max |G² − 𝟙|`.
    pub involution: f64,
    /// `max |tr G|`.
    pub tracelessness: f64,
    /// `max |{Gᵢ, Gⱼ}|` within each side, `i ≠ j`.
    pub anticommutation: f64,
    /// `max |[Aᵢ, Bⱼ]|`.
    pub cross_commutation: f64,
    /// Largest distance of a product `GᵢGⱼ` from its side's span `{𝟙, G₁, G₂, G₃}`.
    pub closure: f64,
    /// Ranks of `{A₁, A₂, A₃}` and `{B₁, B₂, B₃}`; both must be 3.
    pub independence_rank: [usize; 2],
    /// Rank of the sixteen products `AᵅBᵝ`; must be 16.
    pub generation_rank: usize,
}

impl ValidationReport {
    /// `(name, observed, passed)` per condition, in a fixed order.
    pub fn conditions(&self) -> Vec<(&'static str, String, bool)> {
        let t = self.tolerance;
        let metric = |name, v: f64| (name, format!("{v:.3e}"), v <= t);
        vec![
            metric("hermiticity", self.hermiticity),
            metric("involution", self.involution),
            metric("tracelessness", self.tracelessness),
            metric("anticommutation", self.anticommutation),
            metric("cross-commutation", self.cross_commutation),
            metric("closure", self.closure),
            (
                "independence",
                format!(
                    "ranks {}/{}",
                    self.independence_rank[0], self.independence_rank[1]
                ),
                self.independence_rank == [3, 3],
            ),
            (
                "generation",
                format!("rank {}", self.generation_rank),
                self.generation_rank == 16,
            ),
        ]
    }

    pub fn passed(&self) -> bool {
        self.conditions().iter().all(|(_, _, ok)| *ok)
    }

    /// Human-readable descriptions of the failed conditions.
    pub fn failures(&self) -> Vec<String> {
        self.conditions()
            .into_iter()
            .filter(|(_, _, ok)| !ok)
            .map(|(name, value, _)| format!("{name} ({value}, tol {:.0e})", self.tolerance))
            .collect()
    }

    /// Largest of the magnitude-valued violations.
    pub fn max_violation(&self) -> f64 {
        [
            self.hermiticity,
            self.involution,
            self.tracelessness,
            self.anticommutation,
            self.cross_commutation,
            self.closure,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, value, ok) in self.conditions() {
            writeln!(
                f,
                "{:<18} {:<14} {}",
                name,
                value,
                if ok { "pass" } else { "FAIL" }
            )?;
        }
        write!(
            f,
            "{}",
            if self.passed() {
                "valid Bell pair"
            } else {
                "not a Bell pair"
            }
        )
    }
}

fn hs_inner(x: &Matrix4, y: &Matrix4) -> Complex64 {
    (x.adjoint() * *y).trace()
}

/// Distance of `x` from the span of `basis`, via Gram–Schmidt in the
/// Hilbert–Schmidt inner product. Reported as the max-entry magnitude of the
/// residual.
fn distance_from_span(x: &Matrix4, basis: &[Matrix4]) -> f64 {
    let mut ortho: Vec<Matrix4> = Vec::with_capacity(basis.len());
    for b in basis {
        let mut v = *b;
        for q in &ortho {
            v = v - q.scale(hs_inner(q, &v));
        }
        let n = hs_inner(&v, &v).re.sqrt();
        if n > 1e-9 {
            ortho.push(v.scale_real(1.0 / n));
        }
    }
    let mut r = *x;
    for q in &ortho {
        r = r - q.scale(hs_inner(q, &r));
    }
    r.max_abs()
}

/// Checks every defining condition of a Bell pair. Failures are data: the
/// report is produced for any six matrices.
pub fn validate(candidate: &PairCandidate, tol: f64) -> ValidationReport {
    let id = Matrix4::identity();
    let sides = [&candidate.left, &candidate.right];
    let all = candidate.left.iter().chain(candidate.right.iter());

    let mut report = ValidationReport {
        tolerance: tol,
        hermiticity: 0.0,
        involution: 0.0,
        tracelessness: 0.0,
        anticommutation: 0.0,
        cross_commutation: 0.0,
        closure: 0.0,
        independence_rank: [0, 0],
        generation_rank: 0,
    };

    for g in all {
        report.hermiticity = report.hermiticity.max(g.hermiticity_violation());
        report.involution = report.involution.max(g.involution_violation());
        report.tracelessness = report.tracelessness.max(g.trace().norm());
    }

    for (k, side) in sides.iter().enumerate() {
        report.independence_rank[k] = rank_of_span(&side[..]);
        let span = [id, side[0], side[1], side[2]];
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                report.anticommutation = report
                    .anticommutation
                    .max(anticommutator(&side[i], &side[j]).max_abs());
                report.closure = report
                    .closure
                    .max(distance_from_span(&(side[i] * side[j]), &span));
            }
        }
    }

    for a in &candidate.left {
        for b in &candidate.right {
            report.cross_commutation = report.cross_commutation.max(commutator(a, b).max_abs());
        }
    }

    let with_id = |side: &[Matrix4; 3]| [id, side[0], side[1], side[2]];
    let products: Vec<Matrix4> = with_id(&candidate.left)
        .iter()
        .flat_map(|a| with_id(&candidate.right).map(|b| *a * b))
        .collect();
    report.generation_rank = rank_of_span(&products);

    // NaN anywhere must fail rather than slip past `<= tol`.
    for v in [
        &mut report.hermiticity,
        &mut report.involution,
        &mut report.tracelessness,
        &mut report.anticommutation,
        &mut report.cross_commutation,
        &mut report.closure,
    ] {
        if v.is_nan() {
            *v = f64::INFINITY;
        }
    }
    report
}

fn l(j: usize) -> Matrix4 {
    lambda(j).expect("generator index in range")
}

/// `𝒜₀ = [𝟙, λ₁, λ₂, λ₃]`, `ℬ₀ = [𝟙, λ₄, λ₅, λ₆]`: the tensor-factor split.
pub fn canonical_pair() -> BellPair {
    BellPair::from_trusted("canonical", [l(1), l(2), l(3)], [l(4), l(5), l(6)])
}

/// Pair under which `e₁, e₂` are uncorrelated and `e₃, e₄` maximally
/// correlated.
pub fn paper_pair_ab() -> BellPair {
    let h = FRAC_1_SQRT_2;
    BellPair::from_trusted(
        "paper-AB",
        [
            h * (l(4) + l(11)),
            h * (l(10) - l(12)),
            -0.5 * (l(1) + l(3) - l(13) + l(15)),
        ],
        [
            h * (l(7) + l(9)),
            -h * (l(5) + l(8)),
            0.5 * (l(1) - l(3) - l(13) - l(15)),
        ],
    )
}

/// Pair under which every basis vector `eₖ` is still uncorrelated, while the
/// canonically maximally entangled family `maxent_state` has total
/// correlation `√(a²(1−a²)(2 + cos 2φ − cos 2θ))`.
pub fn paper_pair_prime() -> BellPair {
    let h = FRAC_1_SQRT_2;
    BellPair::from_trusted(
        "paper-prime",
        [
            -0.5 * (l(3) - l(6) - l(7) + l(11)),
            -l(10),
            -0.5 * (l(3) + l(6) - l(7) - l(11)),
        ],
        [h * (l(1) - l(9)), -h * (l(5) - l(14)), l(15)],
    )
}

/// Moves every generator `G` of `base` to `U G U†`.
///
/// With `α(A) = U⁻¹AU`, this is the pair `(α⁻¹(𝒜), α⁻¹(ℬ))`; a state `Ψ`
/// measured on the result behaves like `U†Ψ` measured on `base`.
pub fn transported_pair(u: &Unitary4, base: &BellPair) -> BellPair {
    let m = u.matrix();
    BellPair {
        left: base.left.conjugated(m),
        right: base.right.conjugated(m),
        label: format!("transport({})", base.label),
    }
}

/// Named pairs available on the command line and in pair files.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Canonical,
    PaperAb,
    PaperPrime,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Canonical, Preset::PaperAb, Preset::PaperPrime];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Canonical => "canonical",
            Preset::PaperAb => "paper-AB",
            Preset::PaperPrime => "paper-prime",
        }
    }

    pub fn pair(&self) -> BellPair {
        match self {
            Preset::Canonical => canonical_pair(),
            Preset::PaperAb => paper_pair_ab(),
            Preset::PaperPrime => paper_pair_prime(),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::Format(format!(
                    "unknown pair preset `{s}` (expected canonical, paper-AB or paper-prime)"
                ))
            })
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
