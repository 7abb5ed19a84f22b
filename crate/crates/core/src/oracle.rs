//! Independent brute-force solvers used as ground truth by the test
//! suites. These never call the solver paths they check; only the exact
//! arithmetic layer is shared. Search ranges are partitioned across
//! workers and merged into ordered sets, so output is deterministic.

use std::collections::BTreeSet;

use num_traits::Zero;
use rayon::prelude::*;

use crate::quintuple::Quintuple;
use crate::scalar::{positive_quadratic_roots, s, IntScalar};

/// Inclusive per-coordinate bounds for the quintuple search, plus the
/// frozen fifth coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBox<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub epsilon: T,
}

impl<T: Clone> SearchBox<T> {
    /// The same bound for `a`, `b`, `c` and `d`.
    pub fn cube(bound: T, epsilon: T) -> SearchBox<T> {
        SearchBox {
            a: bound.clone(),
            b: bound.clone(),
            c: bound.clone(),
            d: bound,
            epsilon,
        }
    }
}

/// All `(a,b,c,d,ε)` with `T = 0`, `a ≤ box.a`, `b ≤ box.b`, `c ≤ box.c`,
/// and `d ≤ box.d` a positive root of the exact quadratic
/// `(ab + cε)d² + ((a²+b²)ε + c²ε − 9abc)d + (abc² + abε² + (a²+b²)cε) = 0`.
pub fn brute_force_quintuples<T>(bounds: &SearchBox<T>) -> BTreeSet<Quintuple<T>>
where
    T: IntScalar + Send + Sync,
{
    let a_max = bounds.a.to_u64().expect("desk-scale bound");
    let e = bounds.epsilon.clone();
    let rows: Vec<Vec<Quintuple<T>>> = (1..=a_max)
        .into_par_iter()
        .map(|au| {
            let a = T::from_u64(au).expect("bound fits the scalar");
            let mut found = Vec::new();
            let mut b = T::one();
            while b <= bounds.b {
                let mut c = T::one();
                while c <= bounds.c {
                    let ab = a.clone() * b.clone();
                    let sq_ab = a.clone() * a.clone() + b.clone() * b.clone();
                    let q2 = ab.clone() + c.clone() * e.clone();
                    let q1 = sq_ab.clone() * e.clone() + c.clone() * c.clone() * e.clone()
                        - s::<T>(9) * ab.clone() * c.clone();
                    let q0 = ab.clone() * c.clone() * c.clone()
                        + ab.clone() * e.clone() * e.clone()
                        + sq_ab.clone() * c.clone() * e.clone();
                    for d in positive_quadratic_roots(&q2, &q1, &q0) {
                        if d <= bounds.d {
                            found.push(Quintuple::new(
                                a.clone(),
                                b.clone(),
                                c.clone(),
                                d,
                                e.clone(),
                            ));
                        }
                    }
                    c = c + T::one();
                }
                b = b + T::one();
            }
            found
        })
        .collect();
    let set: BTreeSet<Quintuple<T>> = rows.into_iter().flatten().collect();
    debug_assert!(set.iter().all(|p| p.to_rational().invariant_t().is_zero()));
    set
}

/// All integer solutions of `AU² + BUV + CV² = E` with `|U|, |V| ≤ bound`,
/// via a per-`U` quadratic in `V`. No discriminant restrictions.
pub fn brute_force_conic_box<T>(a: &T, b: &T, c: &T, e: &T, bound: &T) -> BTreeSet<(T, T)>
where
    T: IntScalar + Send + Sync,
{
    let bound_i = bound.to_i64().expect("desk-scale bound");
    let rows: Vec<Vec<(T, T)>> = (-bound_i..=bound_i)
        .into_par_iter()
        .map(|uu| {
            let u = T::from_i64(uu).expect("bound fits the scalar");
            let mut found = Vec::new();
            if c.is_zero() {
                // B·U·V = E − A·U²
                let coeff = b.clone() * u.clone();
                if !coeff.is_zero() {
                    let rhs = e.clone() - a.clone() * u.clone() * u.clone();
                    let (v, r) = rhs.div_rem(&coeff);
                    if r.is_zero() && v.abs() <= *bound {
                        found.push((u.clone(), v));
                    }
                }
            } else {
                // C·V² + (B·U)·V + (A·U² − E) = 0
                let q2 = c.clone();
                let q1 = b.clone() * u.clone();
                let q0 = a.clone() * u.clone() * u.clone() - e.clone();
                for v in integer_quadratic_roots(&q2, &q1, &q0) {
                    if v.abs() <= *bound {
                        found.push((u.clone(), v));
                    }
                }
            }
            found
        })
        .collect();
    rows.into_iter().flatten().collect()
}

/// All positive solutions of
/// `H(x,y) = x² − 9xy + y² + 3εx + 3εy + ε² = 0` with `x, y ≤ bound`
/// (no divisibility filter).
pub fn brute_force_h_box<T>(eps: &T, bound: &T) -> BTreeSet<(T, T)>
where
    T: IntScalar + Send + Sync,
{
    let bound_u = bound.to_u64().expect("desk-scale bound");
    let rows: Vec<Vec<(T, T)>> = (1..=bound_u)
        .into_par_iter()
        .map(|xu| {
            let x = T::from_u64(xu).expect("bound fits the scalar");
            let mut found = Vec::new();
            // y² + (3ε − 9x)y + (x² + 3εx + ε²) = 0
            let q1 = s::<T>(3) * eps.clone() - s::<T>(9) * x.clone();
            let q0 = x.clone() * x.clone()
                + s::<T>(3) * eps.clone() * x.clone()
                + eps.clone() * eps.clone();
            for y in positive_quadratic_roots(&T::one(), &q1, &q0) {
                if y <= *bound {
                    found.push((x.clone(), y));
                }
            }
            found
        })
        .collect();
    rows.into_iter().flatten().collect()
}

/// Integer roots of any sign of `q2·x² + q1·x + q0 = 0` with `q2 ≠ 0`.
fn integer_quadratic_roots<T: IntScalar>(q2: &T, q1: &T, q0: &T) -> Vec<T> {
    let four: T = s(4);
    let two: T = s(2);
    let disc = q1.clone() * q1.clone() - four * q2.clone() * q0.clone();
    let Some(sq) = crate::scalar::perfect_sqrt(&disc) else {
        return Vec::new();
    };
    let mut roots = Vec::new();
    let nq1 = -q1.clone();
    for num in [nq1.clone() - sq.clone(), nq1 + sq] {
        let den = two.clone() * q2.clone();
        let (x, r) = num.div_rem(&den);
        if r.is_zero() && !roots.contains(&x) {
            roots.push(x);
        }
    }
    roots
}
