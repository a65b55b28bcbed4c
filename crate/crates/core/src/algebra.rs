//! Concrete realization of the two-qubit observable algebra.
//!
//! Elements are dense row-major 4×4 complex matrices. The fifteen traceless
//! generators are Kronecker products of Pauli matrices:
//!
//! - `λ₁..λ₃  = 𝟙 ⊗ σᵢ`
//! - `λ₄..λ₆  = σᵢ ⊗ 𝟙`
//! - `λ₇..λ₁₅ = σₐ ⊗ σ_b`, `(a, b)` running lexicographically over `(1,1)..(3,3)`
//!
//! Together with the identity they form a Hilbert–Schmidt orthogonal basis,
//! `tr(λᵢλⱼ) = 4δᵢⱼ`, so every element decomposes uniquely as
//! `c₀𝟙 + Σ cⱼλⱼ`.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Singular values below this fraction of the largest count as zero in
/// [`rank_of_span`].
pub const RANK_TOLERANCE: f64 = 1e-9;

/// A 2×2 complex matrix, used only as a Kronecker factor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

impl Matrix2 {
    pub const fn identity() -> Self {
        Matrix2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        Matrix2(out)
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;

    fn add(self, rhs: Matrix2) -> Matrix2 {
        let mut out = self.0;
        for (row, rrow) in out.iter_mut().zip(rhs.0.iter()) {
            for (x, y) in row.iter_mut().zip(rrow.iter()) {
                *x += *y;
            }
        }
        Matrix2(out)
    }
}

impl Mul<Matrix2> for Complex64 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let mut out = rhs.0;
        out.iter_mut().flatten().for_each(|x| *x *= self);
        Matrix2(out)
    }
}

/// A dense 4×4 complex matrix, row-major.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Matrix4(pub [[Complex64; 4]; 4]);

impl fmt::Debug for Matrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix4[")?;
        for row in &self.0 {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Matrix4 {
    pub const fn zeros() -> Self {
        Matrix4([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::diagonal([ONE; 4])
    }

    pub fn diagonal(d: [Complex64; 4]) -> Self {
        let mut m = Self::zeros();
        for (k, z) in d.into_iter().enumerate() {
            m.0[k][k] = z;
        }
        m
    }

    pub fn real_diagonal(d: [f64; 4]) -> Self {
        Self::diagonal(d.map(|x| Complex64::new(x, 0.0)))
    }

    /// Builds a matrix from separate real and imaginary parts.
    pub fn from_parts(re: [[f64; 4]; 4], im: [[f64; 4]; 4]) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = Complex64::new(re[i][j], im[i][j]);
            }
        }
        m
    }

    pub fn real_part(&self) -> [[f64; 4]; 4] {
        self.0.map(|row| row.map(|z| z.re))
    }

    pub fn imag_part(&self) -> [[f64; 4]; 4] {
        self.0.map(|row| row.map(|z| z.im))
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[Complex64; 4], v: &[Complex64; 4]) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = u[i] * v[j].conj();
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|k| self.0[k][k]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|x| *x *= s);
        m
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Largest entry magnitude; the norm every tolerance in the crate is
    /// measured in.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [ZERO; 4];
        for (o, row) in out.iter_mut().zip(self.0.iter()) {
            *o = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// `max |M − M†|`
    pub fn hermiticity_violation(&self) -> f64 {
        (*self - self.adjoint()).max_abs()
    }

    /// `max |M² − 𝟙|`
    pub fn involution_violation(&self) -> f64 {
        (*self * *self - Self::identity()).max_abs()
    }

    /// `max |M†M − 𝟙|`
    pub fn unitarity_violation(&self) -> f64 {
        (self.adjoint() * *self - Self::identity()).max_abs()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_violation() <= tol
    }

    pub fn is_involution(&self, tol: f64) -> bool {
        self.involution_violation() <= tol
    }

    /// Row-major flattening into 16 entries.
    pub fn vectorize(&self) -> [Complex64; 16] {
        let mut out = [ZERO; 16];
        for (k, z) in self.0.iter().flatten().enumerate() {
            out[k] = *z;
        }
        out
    }

    /// Conjugation `U M U†`.
    pub fn conjugate_by(&self, u: &Matrix4) -> Matrix4 {
        *u * *self * u.adjoint()
    }
}

impl Index<(usize, usize)> for Matrix4 {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for Matrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl Add for Matrix4 {
    type Output = Matrix4;

    fn add(mut self, rhs: Matrix4) -> Matrix4 {
        self += rhs;
        self
    }
}

impl AddAssign for Matrix4 {
    fn add_assign(&mut self, rhs: Matrix4) {
        for (x, y) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *x += *y;
        }
    }
}

impl Sub for Matrix4 {
    type Output = Matrix4;

    fn sub(mut self, rhs: Matrix4) -> Matrix4 {
        for (x, y) in self.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *x -= *y;
        }
        self
    }
}

impl Neg for Matrix4 {
    type Output = Matrix4;

    fn neg(self) -> Matrix4 {
        self.scale_real(-1.0)
    }
}

impl Mul for Matrix4 {
    type Output = Matrix4;

    fn mul(self, rhs: Matrix4) -> Matrix4 {
        let mut out = Matrix4::zeros();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..4 {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl Mul<Matrix4> for f64 {
    type Output = Matrix4;

    fn mul(self, rhs: Matrix4) -> Matrix4 {
        rhs.scale_real(self)
    }
}

impl Mul<Matrix4> for Complex64 {
    type Output = Matrix4;

    fn mul(self, rhs: Matrix4) -> Matrix4 {
        rhs.scale(self)
    }
}

/// A 4×4 unitary matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unitary4(Matrix4);

impl Unitary4 {
    /// Unitarity is checked to this tolerance on `max |U†U − 𝟙|`.
    pub const TOLERANCE: f64 = 1e-10;

    pub fn new(u: Matrix4) -> Result<Self> {
        let violation = u.unitarity_violation();
        if violation.is_finite() && violation <= Self::TOLERANCE {
            Ok(Unitary4(u))
        } else {
            Err(Error::NotUnitary(violation))
        }
    }

    pub fn identity() -> Self {
        Unitary4(Matrix4::identity())
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.0
    }

    pub fn adjoint(&self) -> Unitary4 {
        Unitary4(self.0.adjoint())
    }

    pub fn apply(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        self.0.apply(v)
    }

    pub fn compose(&self, other: &Unitary4) -> Unitary4 {
        Unitary4(self.0 * other.0)
    }
}

/// Pauli matrix `σᵢ` for `i ∈ {1, 2, 3}`.
pub fn pauli(i: usize) -> Result<Matrix2> {
    match i {
        1 => Ok(Matrix2([[ZERO, ONE], [ONE, ZERO]])),
        2 => Ok(Matrix2([[ZERO, -I], [I, ZERO]])),
        3 => Ok(Matrix2([[ONE, ZERO], [ZERO, -ONE]])),
        _ => Err(Error::IndexOutOfRange {
            what: "Pauli index",
            index: i,
            min: 1,
            max: 3,
        }),
    }
}

/// Kronecker product: `(X⊗Y)[2a + c][2b + d] = X[a][b]·Y[c][d]` (0-based).
pub fn kron(x: &Matrix2, y: &Matrix2) -> Matrix4 {
    let mut m = Matrix4::zeros();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    m.0[2 * a + c][2 * b + d] = x.0[a][b] * y.0[c][d];
                }
            }
        }
    }
    m
}

/// The Pauli factors `(first, second)` of `λⱼ`, with `0` standing for the
/// 2×2 identity.
fn lambda_factors(j: usize) -> Option<(usize, usize)> {
    match j {
        1..=3 => Some((0, j)),
        4..=6 => Some((j - 3, 0)),
        7..=15 => Some(((j - 7) / 3 + 1, (j - 7) % 3 + 1)),
        _ => None,
    }
}

fn factor(k: usize) -> Matrix2 {
    if k == 0 {
        Matrix2::identity()
    } else {
        pauli(k).expect("factor index in 1..=3")
    }
}

/// Generator `λⱼ`, `j ∈ 1..=15`.
pub fn lambda(j: usize) -> Result<Matrix4> {
    let (a, b) = lambda_factors(j).ok_or(Error::IndexOutOfRange {
        what: "generator index",
        index: j,
        min: 1,
        max: 15,
    })?;
    Ok(kron(&factor(a), &factor(b)))
}

pub fn commutator(x: &Matrix4, y: &Matrix4) -> Matrix4 {
    *x * *y - *y * *x
}

pub fn anticommutator(x: &Matrix4, y: &Matrix4) -> Matrix4 {
    *x * *y + *y * *x
}

/// The ordered generator table `λ₁..λ₁₅` plus the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorTable {
    lambdas: [Matrix4; 15],
    identity: Matrix4,
}

impl Default for GeneratorTable {
    fn default() -> Self {
        Self::standard()
    }
}

impl GeneratorTable {
    pub fn standard() -> Self {
        let lambdas = std::array::from_fn(|k| lambda(k + 1).expect("index in range"));
        GeneratorTable {
            lambdas,
            identity: Matrix4::identity(),
        }
    }

    /// A table with generators `i` and `j` (1-based) exchanged. Only useful as
    /// a negative control for the ordering oracles.
    pub fn with_swapped(mut self, i: usize, j: usize) -> Result<Self> {
        for k in [i, j] {
            if !(1..=15).contains(&k) {
                return Err(Error::IndexOutOfRange {
                    what: "generator index",
                    index: k,
                    min: 1,
                    max: 15,
                });
            }
        }
        self.lambdas.swap(i - 1, j - 1);
        Ok(self)
    }

    /// `λⱼ` for `j ∈ 1..=15`.
    ///
    /// # Panics
    /// If `j` is outside `1..=15`.
    pub fn get(&self, j: usize) -> &Matrix4 {
        &self.lambdas[j - 1]
    }

    pub fn lambdas(&self) -> &[Matrix4; 15] {
        &self.lambdas
    }

    pub fn identity(&self) -> &Matrix4 {
        &self.identity
    }
}

/// Expansion coefficients of an element in the basis `{𝟙, λ₁, …, λ₁₅}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coefficients {
    pub c0: Complex64,
    /// `c[j-1]` multiplies `λⱼ`.
    pub c: [Complex64; 15],
}

impl Coefficients {
    pub fn reconstruct(&self) -> Matrix4 {
        let table = GeneratorTable::standard();
        let mut m = Matrix4::identity().scale(self.c0);
        for (cj, lj) in self.c.iter().zip(table.lambdas()) {
            m += lj.scale(*cj);
        }
        m
    }
}

/// `c₀ = tr(A)/4`, `cⱼ = tr(λⱼA)/4`.
pub fn decompose(a: &Matrix4) -> Coefficients {
    let table = GeneratorTable::standard();
    let c0 = a.trace() / 4.0;
    let c = std::array::from_fn(|k| (table.lambdas()[k] * *a).trace() / 4.0);
    Coefficients { c0, c }
}

/// Dimension of the complex linear span of `elements`.
///
/// The elements are vectorized into the columns of a 16×n matrix; singular
/// values below [`RANK_TOLERANCE`] times the largest are treated as zero.
pub fn rank_of_span(elements: &[Matrix4]) -> usize {
    if elements.is_empty() {
        return 0;
    }
    let cols: Vec<Complex64> = elements.iter().flat_map(|m| m.vectorize()).collect();
    let mat = DMatrix::from_column_slice(16, elements.len(), &cols);
    let sv = mat.singular_values();
    let largest = sv.iter().cloned().fold(0.0, f64::max);
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_TOLERANCE * largest).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_basics() {
        let s3 = pauli(3).unwrap();
        assert_eq!(s3, Matrix2([[ONE, ZERO], [ZERO, -ONE]]));
        let s1 = pauli(1).unwrap();
        assert_eq!(s1 * s1, Matrix2::identity());
        assert_eq!((s1 * pauli(2).unwrap()).trace(), ZERO);
        assert!(pauli(0).is_err());
        assert!(pauli(4).is_err());
    }

    #[test]
    fn kron_examples() {
        let id = Matrix2::identity();
        assert_eq!(kron(&id, &id), Matrix4::identity());
        let s3 = pauli(3).unwrap();
        assert_eq!(
            kron(&s3, &id),
            Matrix4::real_diagonal([1.0, 1.0, -1.0, -1.0])
        );
        let s1 = pauli(1).unwrap();
        let e1 = [ONE, ZERO, ZERO, ZERO];
        assert_eq!(kron(&s1, &s1).apply(&e1), [ZERO, ZERO, ZERO, ONE]);
    }

    #[test]
    fn lambda_diagonal_examples() {
        assert_eq!(
            lambda(3).unwrap(),
            Matrix4::real_diagonal([1.0, -1.0, 1.0, -1.0])
        );
        assert_eq!(
            lambda(6).unwrap(),
            Matrix4::real_diagonal([1.0, 1.0, -1.0, -1.0])
        );
        assert_eq!(
            lambda(15).unwrap(),
            Matrix4::real_diagonal([1.0, -1.0, -1.0, 1.0])
        );
        assert!(lambda(0).is_err());
        assert!(lambda(16).is_err());
    }

    #[test]
    fn lexicographic_tail() {
        let s = |k| pauli(k).unwrap();
        let mut j = 7;
        for a in 1..=3 {
            for b in 1..=3 {
                assert_eq!(lambda(j).unwrap(), kron(&s(a), &s(b)), "lambda({j})");
                j += 1;
            }
        }
    }

    #[test]
    fn generator_table_relations() {
        let t = GeneratorTable::standard();
        for i in 1..=15 {
            let li = t.get(i);
            assert!(li.hermiticity_violation() < 1e-12);
            assert!(li.involution_violation() < 1e-12);
            assert!(li.trace().norm() < 1e-12);
            for j in 1..=15 {
                let expect = if i == j { 4.0 } else { 0.0 };
                let tr = (*li * *t.get(j)).trace();
                assert!((tr - c(expect, 0.0)).norm() < 1e-12, "tr(λ{i}λ{j}) = {tr}");
            }
        }
    }

    #[test]
    fn commutators() {
        let l = |j| lambda(j).unwrap();
        assert_eq!(commutator(&l(1), &l(4)).max_abs(), 0.0);
        assert_eq!(anticommutator(&l(1), &l(2)).max_abs(), 0.0);
        assert_eq!(commutator(&l(9), &l(9)).max_abs(), 0.0);
        assert!(commutator(&l(1), &l(2)).max_abs() > 1.0);
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&Matrix4::identity());
        assert_eq!(d.c0, ONE);
        assert!(d.c.iter().all(|z| *z == ZERO));

        let d = decompose(&lambda(7).unwrap());
        for (k, z) in d.c.iter().enumerate() {
            assert_eq!(*z, if k == 6 { ONE } else { ZERO });
        }

        let a = lambda(1).unwrap() + 2.0 * lambda(9).unwrap();
        let d = decompose(&a);
        assert_eq!(d.c0, ZERO);
        for (k, z) in d.c.iter().enumerate() {
            let want = match k + 1 {
                1 => 1.0,
                9 => 2.0,
                _ => 0.0,
            };
            assert!((z - c(want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_of_span(&[Matrix4::identity()]), 1);
        let mut all: Vec<Matrix4> = GeneratorTable::standard().lambdas().to_vec();
        all.push(Matrix4::identity());
        assert_eq!(rank_of_span(&all), 16);
        let l1 = lambda(1).unwrap();
        assert_eq!(rank_of_span(&[l1, 2.0 * l1]), 1);
        assert_eq!(rank_of_span(&[Matrix4::zeros()]), 0);
        assert_eq!(rank_of_span(&[]), 0);
    }

    #[test]
    fn unitary_check() {
        assert!(Unitary4::new(lambda(8).unwrap()).is_ok());
        assert!(matches!(
            Unitary4::new(2.0 * Matrix4::identity()),
            Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn swapped_table_differs() {
        let t = GeneratorTable::standard().with_swapped(5, 8).unwrap();
        assert_eq!(t.get(5), &lambda(8).unwrap());
        assert!(GeneratorTable::standard().with_swapped(0, 3).is_err());
    }
}
