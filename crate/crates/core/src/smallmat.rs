//! Fixed-size row-vector/matrix arithmetic over any scalar.
//!
//! The dynamics in this crate act on row vectors from the right, matching
//! the convention `P ↦ P·M` used throughout.

use crate::scalar::Scalar;

pub(crate) fn identity<S: Scalar, const N: usize>() -> [[S; N]; N] {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { S::one() } else { S::zero() }))
}

pub(crate) fn mat_mul<S: Scalar, const N: usize>(a: &[[S; N]; N], b: &[[S; N]; N]) -> [[S; N]; N] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = S::zero();
            for k in 0..N {
                acc = acc + a[i][k].clone() * b[k][j].clone();
            }
            acc
        })
    })
}

pub(crate) fn row_times_mat<S: Scalar, const N: usize>(v: &[S; N], m: &[[S; N]; N]) -> [S; N] {
    std::array::from_fn(|j| {
        let mut acc = S::zero();
        for k in 0..N {
            acc = acc + v[k].clone() * m[k][j].clone();
        }
        acc
    })
}
