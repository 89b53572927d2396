//! Floating-point 3×3 matrix helpers: products, inverse, the matrix
//! exponential and comparison of coset representatives in SL(3,ℝ)/H.

pub type Mat3 = [[f64; 3]; 3];

pub const IDENTITY: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn mat_add(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] + b[i][j]))
}

pub fn mat_sub(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] - b[i][j]))
}

pub fn mat_scale(a: &Mat3, s: f64) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] * s))
}

pub fn transpose(a: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]))
}

pub fn determinant(a: &Mat3) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Inverse by the adjugate; `None` for a singular matrix.
pub fn inverse(a: &Mat3) -> Option<Mat3> {
    let det = determinant(a);
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let c = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]
    };
    // inverse[i][j] = cofactor(j, i) / det
    Some(std::array::from_fn(|i| std::array::from_fn(|j| c(j, i) / det)))
}

pub fn frobenius(a: &Mat3) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn max_abs_diff(a: &Mat3, b: &Mat3) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn inf_norm(a: &Mat3) -> f64 {
    a.iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring of the Taylor series.
///
/// The argument is scaled by `2^-k` until its ∞-norm is at most 1/2, the
/// series is summed until the next term is below machine precision relative
/// to the partial sum, then the result is squared `k` times. Nilpotent
/// arguments terminate the series exactly.
pub fn expm(a: &Mat3) -> Mat3 {
    let norm = inf_norm(a);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = mat_scale(a, 0.5f64.powi(squarings));
    let mut sum = IDENTITY;
    let mut term = IDENTITY;
    for k in 1..=40 {
        term = mat_scale(&mat_mul(&term, &scaled), 1.0 / k as f64);
        let size = inf_norm(&term);
        if size == 0.0 {
            break;
        }
        sum = mat_add(&sum, &term);
        if size <= f64::EPSILON * 1e-2 * inf_norm(&sum) {
            break;
        }
    }
    for _ in 0..squarings {
        sum = mat_mul(&sum, &sum);
    }
    sum
}

/// The isotropy element `h(t, s)`: a rotation by `s` scaled by `e^t` on the
/// first two coordinates and `e^{-2t}` on the third.
pub fn isotropy_element(t: f64, s: f64) -> Mat3 {
    let (sin, cos) = s.sin_cos();
    let et = t.exp();
    [
        [et * cos, et * sin, 0.0],
        [-et * sin, et * cos, 0.0],
        [0.0, 0.0, (-2.0 * t).exp()],
    ]
}

/// Result of comparing two representatives of points of SL(3,ℝ)/H.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CosetAlignment {
    pub t: f64,
    pub s: f64,
    /// `‖A·h(t,s) − B‖_F / max(1, ‖B‖_F)` at the optimum.
    pub deviation: f64,
}

/// Minimizes `‖A·h(t,s) − B‖_F` over the isotropy group.
///
/// The starting point reads `(t, s)` off `A⁻¹B` (exact when the two matrices
/// represent the same coset); a compass search then refines it, so that
/// representatives that are merely close still get a meaningful distance.
pub fn coset_align(a: &Mat3, b: &Mat3) -> CosetAlignment {
    let scale = frobenius(b).max(1.0);
    let cost = |t: f64, s: f64| frobenius(&mat_sub(&mat_mul(a, &isotropy_element(t, s)), b)) / scale;

    let (mut t, mut s) = match inverse(a) {
        Some(inv) => {
            let m = mat_mul(&inv, b);
            let r = m[0][0].hypot(m[0][1]);
            if r > 0.0 && r.is_finite() {
                (r.ln(), m[0][1].atan2(m[0][0]))
            } else {
                (0.0, 0.0)
            }
        }
        None => (0.0, 0.0),
    };
    let mut best = cost(t, s);
    let mut step = 1e-2;
    while step > 1e-14 && best > 0.0 {
        let mut improved = false;
        for (dt, ds) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let c = cost(t + dt, s + ds);
            if c < best {
                best = c;
                t += dt;
                s += ds;
                improved = true;
                break;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    CosetAlignment { t, s, deviation: best }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_zero_and_diagonal() {
        assert_eq!(expm(&[[0.0; 3]; 3]), IDENTITY);
        let d = expm(&[[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 0.0]]);
        let e = std::f64::consts::E;
        assert!(max_abs_diff(&d, &[[e, 0.0, 0.0], [0.0, 1.0 / e, 0.0], [0.0, 0.0, 1.0]]) < 1e-14);
    }

    #[test]
    fn expm_nilpotent_is_exact() {
        let n = [[0.0, 0.0, 3.0], [0.0, 0.0, -2.0], [0.0, 0.0, 0.0]];
        assert_eq!(expm(&n), [[1.0, 0.0, 3.0], [0.0, 1.0, -2.0], [0.0, 0.0, 1.0]]);
    }

    #[test]
    fn expm_rotation() {
        let theta = 2.5;
        let r = expm(&[[0.0, -theta, 0.0], [theta, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        let (s, c) = f64::sin_cos(theta);
        assert!(max_abs_diff(&r, &[[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]) < 1e-14);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = [[2.0, 1.0, 0.5], [0.0, 1.0, 3.0], [1.0, 0.0, 1.0]];
        let inv = inverse(&a).unwrap();
        assert!(max_abs_diff(&mat_mul(&a, &inv), &IDENTITY) < 1e-15);
        assert!(inverse(&[[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 0.0, 1.0]]).is_none());
    }

    #[test]
    fn coset_alignment_recovers_isotropy_factor() {
        let a = [[1.0, 0.2, -0.3], [0.1, 1.1, 0.0], [0.4, 0.0, 0.9]];
        let b = mat_mul(&a, &isotropy_element(0.3, 1.2));
        let al = coset_align(&a, &b);
        assert!(al.deviation < 1e-14, "{al:?}");
        assert!((al.t - 0.3).abs() < 1e-12 && (al.s - 1.2).abs() < 1e-12);
        // A matrix outside the coset stays at positive distance.
        let far = coset_align(&a, &IDENTITY);
        assert!(far.deviation > 1e-3);
    }
}
