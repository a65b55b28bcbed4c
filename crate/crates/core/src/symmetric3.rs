//! Eigenvalues of real symmetric 3×3 matrices.
//!
//! The closed-form trigonometric (Cardano) solution is used whenever the
//! eigenvalues are well separated. Near a repeated root the `acos` step loses
//! about half the digits, so those inputs go to cyclic Jacobi rotations
//! instead.

use std::f64::consts::PI;

pub type Sym3 = [[f64; 3]; 3];

/// Below this value of `1 − r²` (with `r` the normalized half-determinant)
/// the closed form is abandoned for Jacobi. The closed form's error grows like
/// `ε/√(1 − r²)`, so this keeps it near `1e-13` relative.
pub const DISCRIMINANT_FLOOR: f64 = 1e-6;

/// Eigenvalues sorted in descending order.
pub fn eigenvalues(m: &Sym3) -> [f64; 3] {
    let scale = m.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return [scale * 0.0; 3];
    }
    let a = m.map(|row| row.map(|x| x / scale));
    let ev = cardano(&a).unwrap_or_else(|| jacobi(&a).0);
    ev.map(|x| x * scale)
}

/// Closed-form eigenvalues of a scaled matrix, or `None` near repeated roots.
fn cardano(a: &Sym3) -> Option<[f64; 3]> {
    let p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    let q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    let d = [a[0][0] - q, a[1][1] - q, a[2][2] - q];
    let p2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    if p < 1e-7 {
        return None;
    }
    let b = [
        [d[0] / p, a[0][1] / p, a[0][2] / p],
        [a[1][0] / p, d[1] / p, a[1][2] / p],
        [a[2][0] / p, a[2][1] / p, d[2] / p],
    ];
    let r = (det3(&b) / 2.0).clamp(-1.0, 1.0);
    if 1.0 - r * r < DISCRIMINANT_FLOOR {
        return None;
    }
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    let e2 = 3.0 * q - e1 - e3;
    let mut ev = [e1, e2, e3];
    ev.sort_by(|x, y| y.total_cmp(x));
    Some(ev)
}

fn det3(b: &Sym3) -> f64 {
    b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0])
}

/// Cyclic Jacobi eigen-decomposition. Returns eigenvalues in descending order
/// and the matching unit eigenvectors (`vectors[k]` belongs to `values[k]`).
pub fn jacobi(m: &Sym3) -> ([f64; 3], [[f64; 3]; 3]) {
    let mut a = *m;
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    for _sweep in 0..64 {
        let off = a[0][1].abs() + a[0][2].abs() + a[1][2].abs();
        let diag = a[0][0].abs() + a[1][1].abs() + a[2][2].abs();
        if off == 0.0 || off <= f64::EPSILON * 1e-3 * diag {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            if a[p][q] == 0.0 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let t = if theta == 0.0 { 1.0 } else { t };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            // A ← Jᵀ A J with J the (p, q) rotation.
            for k in 0..3 {
                let akp = a[k][p];
                let akq = a[k][q];
                a[k][p] = c * akp - s * akq;
                a[k][q] = s * akp + c * akq;
            }
            for k in 0..3 {
                let apk = a[p][k];
                let aqk = a[q][k];
                a[p][k] = c * apk - s * aqk;
                a[q][k] = s * apk + c * aqk;
            }
            for row in v.iter_mut() {
                let vp = row[p];
                let vq = row[q];
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
        }
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let values = order.map(|k| a[k][k]);
    let vectors = order.map(|k| [v[0][k], v[1][k], v[2][k]]);
    (values, vectors)
}
