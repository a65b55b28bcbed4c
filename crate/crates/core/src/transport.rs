//! Realizing a prescribed total correlation for any pure state.
//!
//! Unitaries act transitively on pure states. Given `Ψ` and `c ∈ [0, 1]`,
//! pick `U` with `UΦ_c = Ψ`, where `Φ_c` has concurrence `c`, and move the
//! canonical pair to `U 𝒜₀ U†`, `U ℬ₀ U†`. Then `Ψ` sees the moved pair exactly
//! as `Φ_c` sees the canonical one, so its total correlation is `c`.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::{Matrix4, Unitary4};
use crate::bellpair::{canonical_pair, transported_pair, BellPair};
use crate::error::{Error, Result};
use crate::states::{inner, phi_state, PhiParams, PureState};

/// Candidates whose residual falls below this are skipped during basis
/// completion.
const COMPLETION_RESIDUAL: f64 = 1e-8;

/// Order in which canonical basis vectors seed the completion of a state to
/// an orthonormal basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Completion {
    #[default]
    IndexOrder,
    ReverseIndexOrder,
}

impl Completion {
    fn order(&self) -> [usize; 4] {
        match self {
            Completion::IndexOrder => [0, 1, 2, 3],
            Completion::ReverseIndexOrder => [3, 2, 1, 0],
        }
    }
}

/// Orthonormal basis whose first vector is `v`; the rest come from
/// Gram–Schmidt on canonical basis vectors in `completion` order.
fn complete_basis(v: &[Complex64; 4], completion: Completion) -> [[Complex64; 4]; 4] {
    let mut basis: Vec<[Complex64; 4]> = vec![*v];
    for k in completion.order() {
        if basis.len() == 4 {
            break;
        }
        let mut cand = [Complex64::new(0.0, 0.0); 4];
        cand[k] = Complex64::new(1.0, 0.0);
        for b in &basis {
            let proj = inner(b, &cand);
            for i in 0..4 {
                cand[i] -= b[i] * proj;
            }
        }
        let n = inner(&cand, &cand).re.sqrt();
        if n < COMPLETION_RESIDUAL {
            continue;
        }
        basis.push(cand.map(|z| z / n));
    }
    debug_assert_eq!(basis.len(), 4);
    [basis[0], basis[1], basis[2], basis[3]]
}

/// A unitary with `U·phi = psi`, built as `Σₖ |gₖ⟩⟨fₖ|` from basis completions
/// `{fₖ}` of `phi` and `{gₖ}` of `psi`.
pub fn unitary_from_states(phi: &PureState, psi: &PureState) -> Unitary4 {
    unitary_from_states_with(phi, psi, Completion::IndexOrder)
}

pub fn unitary_from_states_with(
    phi: &PureState,
    psi: &PureState,
    completion: Completion,
) -> Unitary4 {
    let f = complete_basis(phi.amplitudes(), completion);
    let g = complete_basis(psi.amplitudes(), completion);
    let mut u = Matrix4::zeros();
    for k in 0..4 {
        u += Matrix4::outer(&g[k], &f[k]);
    }
    Unitary4::new(u).expect("orthonormal bases give a unitary")
}

/// `UΨ`.
pub fn rotate_state(u: &Unitary4, psi: &PureState) -> PureState {
    PureState::normalized(u.apply(psi.amplitudes())).expect("unitary image of a unit vector")
}

/// A Bell pair under which `psi` has total correlation `c`.
pub fn realize_correlation(psi: &PureState, c: f64) -> Result<BellPair> {
    realize_correlation_with(psi, c, Completion::IndexOrder)
}

pub fn realize_correlation_with(
    psi: &PureState,
    c: f64,
    completion: Completion,
) -> Result<BellPair> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::ParameterOutOfRange {
            name: "c",
            value: c,
            range: "[0, 1]",
        });
    }
    let phi = phi_state(PhiParams::new(c)?)?;
    let u = unitary_from_states_with(&phi, psi, completion);
    Ok(transported_pair(&u, &canonical_pair()).with_label(format!("transport(c={c})")))
}

/// Haar-random unitary: Gram–Schmidt on a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R) -> Unitary4 {
    loop {
        let cols: [[Complex64; 4]; 4] = std::array::from_fn(|_| {
            std::array::from_fn(|_| {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            })
        });
        let mut ortho: Vec<[Complex64; 4]> = Vec::with_capacity(4);
        for mut c in cols {
            for q in &ortho {
                let proj = inner(q, &c);
                for i in 0..4 {
                    c[i] -= q[i] * proj;
                }
            }
            let n = inner(&c, &c).re.sqrt();
            if n < 1e-8 {
                break;
            }
            ortho.push(c.map(|z| z / n));
        }
        if ortho.len() < 4 {
            continue;
        }
        let mut u = Matrix4::zeros();
        for (j, col) in ortho.iter().enumerate() {
            for i in 0..4 {
                u[(i, j)] = col[i];
            }
        }
        if let Ok(u) = Unitary4::new(u) {
            return u;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bellpair::DEFAULT_TOLERANCE;
    use crate::correlation::total_correlation;
    use crate::separability::{classify, ClassificationKind, Thresholds};
    use crate::states::{random_pure, seeded_rng};

    fn assert_maps(u: &Unitary4, from: &PureState, to: &PureState) {
        let img = u.apply(from.amplitudes());
        for k in 0..4 {
            assert!((img[k] - to.amplitudes()[k]).norm() < 1e-12);
        }
    }

    #[test]
    fn unitary_from_states_examples() {
        let phi = random_pure(1);
        let u = unitary_from_states(&phi, &phi);
        assert_maps(&u, &phi, &phi);
        assert!(u.matrix().unitarity_violation() < 1e-12);

        let e1 = PureState::basis(1).unwrap();
        let e2 = PureState::basis(2).unwrap();
        assert_maps(&unitary_from_states(&e1, &e2), &e1, &e2);

        let psi = random_pure(2);
        let u = unitary_from_states(&phi, &psi);
        assert_maps(&u, &phi, &psi);
        assert_maps(&u.adjoint(), &psi, &phi);
    }

    #[test]
    fn realize_examples() {
        let e1 = PureState::basis(1).unwrap();
        let t = Thresholds::default();
        let p0 = realize_correlation(&e1, 0.0).unwrap();
        assert_eq!(classify(&e1, &p0, t).kind, ClassificationKind::Separable);
        let p1 = realize_correlation(&e1, 1.0).unwrap();
        let cls = classify(&e1, &p1, t);
        assert_eq!(cls.kind, ClassificationKind::MaximallyCorrelated);
        assert!((cls.total_correlation - 1.0).abs() < 1e-9);

        let psi = random_pure(77);
        let p = realize_correlation(&psi, 0.37).unwrap();
        assert!((total_correlation(&psi, &p) - 0.37).abs() < 1e-9);
        assert!(p.validate(DEFAULT_TOLERANCE).passed());
        assert_eq!(p.label(), "transport(c=0.37)");
        assert!(realize_correlation(&psi, 1.2).is_err());
    }

    #[test]
    fn realize_round_trip_grid() {
        for s in 0..100 {
            let psi = random_pure(1000 + s);
            for k in 0..=10 {
                let c = k as f64 / 10.0;
                let p = realize_correlation(&psi, c).unwrap();
                assert!(
                    (total_correlation(&psi, &p) - c).abs() < 1e-9,
                    "seed {s}, c {c}"
                );
            }
        }
    }

    #[test]
    fn non_unique_realizations() {
        let psi = random_pure(3);
        let a = realize_correlation_with(&psi, 0.6, Completion::IndexOrder).unwrap();
        let b = realize_correlation_with(&psi, 0.6, Completion::ReverseIndexOrder).unwrap();
        assert_ne!(a, b);
        let (ca, cb) = (total_correlation(&psi, &a), total_correlation(&psi, &b));
        assert!((ca - cb).abs() < 1e-10);
    }

    #[test]
    fn automorphism_invariance() {
        let mut rng = seeded_rng(12);
        let canonical = canonical_pair();
        for s in 0..200 {
            let psi = random_pure(s);
            let u = random_unitary(&mut rng);
            let lhs = total_correlation(&rotate_state(&u, &psi), &canonical);
            let rhs = total_correlation(&psi, &transported_pair(&u.adjoint(), &canonical));
            assert!((lhs - rhs).abs() < 1e-10, "seed {s}");
        }
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = seeded_rng(0);
        for _ in 0..50 {
            assert!(random_unitary(&mut rng).matrix().unitarity_violation() < 1e-12);
        }
    }
}
