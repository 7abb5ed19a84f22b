//! Scalar abstractions for the exact arithmetic layer.
//!
//! Everything in this crate is generic over its scalar type. Two bounds
//! cover all needs: [`Scalar`] for ring-level formulas (invariants,
//! tilde-generator actions, linear transforms) and [`IntScalar`] for the
//! Diophantine solvers, which additionally need floor square roots and
//! exact divisibility. The dynamics on quintuples divide, so they require
//! the [`FieldScalar`] marker; `Ratio<T>` and the machine floats carry it,
//! plain integers deliberately do not (integer division would silently
//! truncate the exchange relations).
//!
//! Canonical instantiations are the arbitrary-precision aliases at the
//! crate root. Every identity asserted by the test suite is exact, so the
//! tests only ever instantiate exact scalars; floats satisfy the bounds
//! for quick numeric experiments.

use std::fmt::Debug;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Ring-like scalar: addition, multiplication, signs, order.
pub trait Scalar: Num + Signed + PartialOrd + Clone + Debug {}
impl<T: Num + Signed + PartialOrd + Clone + Debug> Scalar for T {}

/// Scalars whose division is exact (fields), required by the quintuple
/// dynamics and the reconstruction matrices.
pub trait FieldScalar: Scalar {}
impl<T: Clone + Integer + Signed + Debug> FieldScalar for Ratio<T> {}
impl FieldScalar for f32 {}
impl FieldScalar for f64 {}

/// Integer scalar with exact floor square roots and primitive conversions.
pub trait IntScalar:
    Integer + Roots + Signed + Clone + FromPrimitive + ToPrimitive + Debug
{
}
impl<T: Integer + Roots + Signed + Clone + FromPrimitive + ToPrimitive + Debug> IntScalar for T {}

/// Small integer constant lifted into a generic scalar by double-and-add.
pub(crate) fn s<T: Scalar>(n: i64) -> T {
    let mut mag = n.unsigned_abs();
    let mut bit = T::one();
    let mut acc = T::zero();
    while mag > 0 {
        if mag & 1 == 1 {
            acc = acc + bit.clone();
        }
        mag >>= 1;
        if mag > 0 {
            bit = bit.clone() + bit;
        }
    }
    if n < 0 {
        -acc
    } else {
        acc
    }
}

/// Exact perfect-square test; returns the nonnegative root when `n` is a
/// perfect square.
pub fn perfect_sqrt<T: IntScalar>(n: &T) -> Option<T> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if r.clone() * r.clone() == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact quotient; panics if `d` does not divide `n`.
pub(crate) fn exact_div<T: IntScalar>(n: T, d: &T) -> T {
    let (q, r) = n.div_rem(d);
    assert!(r.is_zero(), "division expected to be exact");
    q
}

/// Positive integer roots of `q2·x² + q1·x + q0 = 0`, ascending. `q2 > 0`.
pub(crate) fn positive_quadratic_roots<T: IntScalar>(q2: &T, q1: &T, q0: &T) -> Vec<T> {
    debug_assert!(q2.is_positive());
    let four: T = s(4);
    let two: T = s(2);
    let disc = q1.clone() * q1.clone() - four * q2.clone() * q0.clone();
    let Some(sq) = perfect_sqrt(&disc) else {
        return Vec::new();
    };
    let mut roots = Vec::new();
    let nq1 = -q1.clone();
    for num in [nq1.clone() - sq.clone(), nq1 + sq.clone()] {
        let den = two.clone() * q2.clone();
        let (x, r) = num.div_rem(&den);
        if r.is_zero() && x.is_positive() && !roots.contains(&x) {
            roots.push(x);
        }
    }
    roots
}
