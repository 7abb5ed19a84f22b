//! Membership in the orbit of `(ε,…,ε)` under the mutation group, with
//! replayable witnesses.
//!
//! A positive integer quintuple `P = (a,b,c,d,ε)` lies in the orbit if and
//! only if `T(P) = 0`, `φ(P) ∈ ℕ³`, and every entry of `P` is divisible by
//! ε. The witness construction reduces `φ(P)` to `(3,4,4)` by the triple
//! descent, pulls the word back to the quintuple side, and locates the
//! remaining fiber point inside `⟨β³⟩(ε,…,ε)` via the `H0` recurrence on
//! its `(c,d)` coordinates.
//!
//! The fiber machinery rests on three exact identities holding for every
//! positive rational quintuple, with `(C0,C1,C2) = φ(P)`,
//! `m = C0C1C2 − C1² − C2²` and `t = m − C0² + 2`:
//! the quadric `c² − tcd + d² + C0ce + C0de + e² = 0`, the linear
//! reconstruction of `(a,b)` from `(c,d,e)`, and
//! `β³ⁿ(P) = P·L_{sgn n}(P)^{|n|}` for explicit matrices `L±1` with zero
//! first two rows.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use thiserror::Error;

use crate::conserved::{phi, Triple};
use crate::markov::descend_to_root;
use crate::quintuple::{Quintuple, Word};
use crate::scalar::{s, FieldScalar, IntScalar};
use crate::smallmat::{identity, row_times_mat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecisionError {
    #[error("quintuple entries must be strictly positive integers")]
    NotPositive,
    #[error("epsilon must be a positive integer")]
    BadEpsilon,
    #[error("fifth coordinate differs from epsilon")]
    FifthCoordinate,
    #[error("m = 0: triple is degenerate for reconstruction")]
    DegenerateM,
    #[error("phi(P) is not (3,4,4)")]
    NotOnRootFiber,
    #[error("no beta-cubed exponent matches (inconsistent input)")]
    IndexNotFound,
    #[error("quintuple fails the membership criterion ({0})")]
    NotMember(Clauses),
    #[error("descent failed: {0}")]
    Descent(#[from] crate::markov::MarkovError),
}

/// `m = C0C1C2 − C1² − C2²` and `t = m − C0² + 2` for a triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedData<S> {
    pub c0: S,
    pub c1: S,
    pub c2: S,
    pub m: S,
    pub t: S,
}

pub fn derive_mt<S: crate::scalar::Scalar>(triple: &Triple<S>) -> ReducedData<S> {
    let Triple {
        x: c0,
        y: c1,
        z: c2,
    } = triple.clone();
    let m =
        c0.clone() * c1.clone() * c2.clone() - c1.clone() * c1.clone() - c2.clone() * c2.clone();
    let t = m.clone() - c0.clone() * c0.clone() + s(2);
    ReducedData { c0, c1, c2, m, t }
}

/// The quadric relation on `(c,d,e)`: true for every positive rational
/// quintuple.
pub fn check_cde_relation<S: FieldScalar>(p: &Quintuple<S>) -> bool {
    let data = derive_mt(&phi(p));
    let Quintuple { c, d, e, .. } = p.clone();
    let lhs = c.clone() * c.clone() - data.t.clone() * c.clone() * d.clone()
        + d.clone() * d.clone()
        + data.c0.clone() * c.clone() * e.clone()
        + data.c0.clone() * d.clone() * e.clone()
        + e.clone() * e.clone();
    lhs.is_zero()
}

/// Rebuild the full quintuple from `(c,d,e)` and a triple with `m ≠ 0`:
/// `a = (C2·c + (C0C1−C2)·d + C1·e)/m`, `b = ((C0C2−C1)·c + C1·d + C2·e)/m`.
pub fn reconstruct_from_cde<S: FieldScalar>(
    c: &S,
    d: &S,
    e: &S,
    triple: &Triple<S>,
) -> Result<Quintuple<S>, DecisionError> {
    let ReducedData { c0, c1, c2, m, .. } = derive_mt(triple);
    if m.is_zero() {
        return Err(DecisionError::DegenerateM);
    }
    let a = (c2.clone() * c.clone()
        + (c0.clone() * c1.clone() - c2.clone()) * d.clone()
        + c1.clone() * e.clone())
        / m.clone();
    let b = ((c0.clone() * c2.clone() - c1.clone()) * c.clone()
        + c1.clone() * d.clone()
        + c2.clone() * e.clone())
        / m;
    Ok(Quintuple::new(a, b, c.clone(), d.clone(), e.clone()))
}

/// One step of the `β³` flow as a 5×5 matrix acting on row vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepMatrix<S>(pub [[S; 5]; 5]);

/// `L₀ = I`, and `L±1` per the closed form; rows 1–2 of `L±1` vanish.
pub fn step_matrix<S: FieldScalar>(
    triple: &Triple<S>,
    sign: i8,
) -> Result<StepMatrix<S>, DecisionError> {
    if sign == 0 {
        return Ok(StepMatrix(identity()));
    }
    let ReducedData { c0, c1, c2, m, t } = derive_mt(triple);
    if m.is_zero() {
        return Err(DecisionError::DegenerateM);
    }
    let z = S::zero;
    let rows: [[S; 5]; 3] = if sign > 0 {
        [
            [
                t.clone() * c2.clone() + c0.clone() * c1.clone() - c2.clone(),
                t.clone() * (c0.clone() * c2.clone() - c1.clone()) + c1.clone(),
                t.clone() * m.clone(),
                m.clone(),
                z(),
            ],
            [
                -c2.clone(),
                c1.clone() - c0.clone() * c2.clone(),
                -m.clone(),
                z(),
                z(),
            ],
            [
                c1.clone() - c0.clone() * c2.clone(),
                c2.clone() + c0.clone() * c1.clone() - c0.clone() * c0.clone() * c2.clone(),
                -(c0.clone() * m.clone()),
                z(),
                m.clone(),
            ],
        ]
    } else {
        [
            [
                c2.clone() - c0.clone() * c1.clone(),
                -c1.clone(),
                z(),
                -m.clone(),
                z(),
            ],
            [
                t.clone() * (c0.clone() * c1.clone() - c2.clone()) + c2.clone(),
                t.clone() * c1.clone() + c0.clone() * c2.clone() - c1.clone(),
                m.clone(),
                t.clone() * m.clone(),
                z(),
            ],
            [
                c1.clone() + c0.clone() * c2.clone() - c0.clone() * c0.clone() * c1.clone(),
                c2.clone() - c0.clone() * c1.clone(),
                z(),
                -(c0.clone() * m.clone()),
                m.clone(),
            ],
        ]
    };
    let mut out: [[S; 5]; 5] = std::array::from_fn(|_| std::array::from_fn(|_| z()));
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            out[i + 2][j] = v / m.clone();
        }
    }
    Ok(StepMatrix(out))
}

/// `β³ⁿ(P)` by exact matrix powers; agrees with `3|n|` generator steps.
pub fn beta3_power<S: FieldScalar>(p: &Quintuple<S>, n: i64) -> Quintuple<S> {
    if n == 0 {
        return p.clone();
    }
    let l = step_matrix(&phi(p), n.signum() as i8)
        .expect("m > 0 for positive quintuples")
        .0;
    let mut v = p.to_array();
    for _ in 0..n.unsigned_abs() {
        v = row_times_mat(&v, &l);
    }
    Quintuple::from_array(v)
}

/// Which clauses of the membership criterion hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Clauses {
    pub t_zero: bool,
    pub phi_integral: bool,
    pub divisible: bool,
}

impl Clauses {
    pub fn all(&self) -> bool {
        self.t_zero && self.phi_integral && self.divisible
    }
}

impl fmt::Display for Clauses {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "T=0: {}, phi integral: {}, divisible by epsilon: {}",
            self.t_zero, self.phi_integral, self.divisible
        )
    }
}

/// Outcome of the membership criterion, with per-clause reasons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub member: bool,
    pub clauses: Clauses,
}

/// Decide membership of `P = (a,b,c,d,ε)` in the orbit of `(ε,…,ε)`:
/// member iff `T(P) = 0`, `φ(P) ∈ ℕ³`, and `P ≡ 0 (mod ε)`.
pub fn criterion<T: IntScalar>(p: &Quintuple<T>, eps: &T) -> Result<Decision, DecisionError> {
    if !eps.is_positive() {
        return Err(DecisionError::BadEpsilon);
    }
    if !p.is_positive() {
        return Err(DecisionError::NotPositive);
    }
    if p.e != *eps {
        return Err(DecisionError::FifthCoordinate);
    }
    let pr = p.to_rational();
    let clauses = Clauses {
        t_zero: pr.invariant_t().is_zero(),
        phi_integral: phi(&pr).try_to_integer().is_some(),
        divisible: p.divisible_by(eps),
    };
    Ok(Decision {
        member: clauses.all(),
        clauses,
    })
}

/// A replayable membership certificate: `P = w(β³ⁿ(ε,…,ε))`, word applied
/// leftmost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<T> {
    pub word: Word,
    pub n: i64,
    pub epsilon: T,
}

impl<T: IntScalar> Witness<T> {
    /// Recompute the certified quintuple from scratch.
    pub fn replay(&self) -> Quintuple<T> {
        let base = Quintuple::constant(Ratio::from_integer(self.epsilon.clone()));
        let shifted = beta3_power(&base, self.n);
        shifted
            .apply_word(&self.word)
            .try_to_integer()
            .expect("witness replay stays integral")
    }
}

/// The unique `n` with `P = β³ⁿ(ε,…,ε)`, for `P` on the root fiber
/// (`φ(P) = (3,4,4)`, entries divisible by ε, fifth coordinate ε). Found
/// by matching `(c,d)` against the `H0` recurrence outward from `n = 0`;
/// the recurrence grows geometrically, so absence is certified as soon as
/// both directions exceed `max(c,d)`.
pub fn s344_index<T: IntScalar>(p: &Quintuple<T>, eps: &T) -> Result<i64, DecisionError> {
    if !eps.is_positive() {
        return Err(DecisionError::BadEpsilon);
    }
    if !p.is_positive() {
        return Err(DecisionError::NotPositive);
    }
    if p.e != *eps {
        return Err(DecisionError::FifthCoordinate);
    }
    if !p.divisible_by(eps) {
        return Err(DecisionError::NotMember(Clauses {
            t_zero: true,
            phi_integral: true,
            divisible: false,
        }));
    }
    let root: Triple<Ratio<T>> = Triple::new(
        Ratio::from_integer(s(3)),
        Ratio::from_integer(s(4)),
        Ratio::from_integer(s(4)),
    );
    if phi(&p.to_rational()) != root {
        return Err(DecisionError::NotOnRootFiber);
    }
    let target = (p.c.clone(), p.d.clone());
    let target_max = target.0.clone().max(target.1.clone());
    let advance = |x: &T, y: &T, eps: &T| -> (T, T) {
        // (x, y) ↦ (9x − y − 3ε, x)
        (
            s::<T>(9) * x.clone() - y.clone() - s::<T>(3) * eps.clone(),
            x.clone(),
        )
    };
    let retreat = |x: &T, y: &T, eps: &T| -> (T, T) {
        // inverse step: (x, y) ↦ (y, 9y − x − 3ε)
        (
            y.clone(),
            s::<T>(9) * y.clone() - x.clone() - s::<T>(3) * eps.clone(),
        )
    };
    let mut up = (eps.clone(), eps.clone());
    let mut down = up.clone();
    let mut n: i64 = 0;
    loop {
        let mut open = false;
        if up.0.clone().max(up.1.clone()) <= target_max {
            if up == target {
                return Ok(n);
            }
            up = advance(&up.0, &up.1, eps);
            open = true;
        }
        if down.0.clone().max(down.1.clone()) <= target_max {
            if n > 0 && down == target {
                return Ok(-n);
            }
            down = retreat(&down.0, &down.1, eps);
            open = true;
        }
        if !open {
            return Err(DecisionError::IndexNotFound);
        }
        n += 1;
    }
}

/// Construct a witness for a member: descend `φ(P)` to `(3,4,4)`, lift the
/// tilde word, strip it off `P`, and index the remaining fiber point.
/// The witness is freely reduced and replayed before being returned.
pub fn witness<T: IntScalar>(p: &Quintuple<T>, eps: &T) -> Result<Witness<T>, DecisionError> {
    let decision = criterion(p, eps)?;
    if !decision.member {
        return Err(DecisionError::NotMember(decision.clauses));
    }
    let pr = p.to_rational();
    let triple = phi(&pr).try_to_integer().expect("member has integral phi");
    let tilde = descend_to_root(&triple)?;
    let word = Word(tilde.0.clone());
    let fiber = pr.apply_word(&word.inverse());
    let fiber_int = fiber
        .try_to_integer()
        .expect("generator steps preserve integrality on members");
    assert!(
        fiber_int.divisible_by(eps),
        "generator steps preserve divisibility on members"
    );
    assert_eq!(
        phi(&fiber).try_to_integer(),
        Some(Triple::new(s(3), s(4), s(4))),
        "stripping the lifted word lands on the root fiber"
    );
    let n = s344_index(&fiber_int, eps)?;
    let certificate = Witness {
        word: word.free_reduce(),
        n,
        epsilon: eps.clone(),
    };
    assert_eq!(certificate.replay(), *p, "witness must replay exactly");
    Ok(certificate)
}

/// `(ε,…,ε)` shifted `n` steps along the β³ flow, as integers.
pub fn beta3_point<T: IntScalar>(eps: &T, n: i64) -> Quintuple<T> {
    let base = Quintuple::constant(Ratio::from_integer(eps.clone()));
    beta3_power(&base, n)
        .try_to_integer()
        .expect("beta-cubed orbit of an integer seed is integral")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    use crate::quintuple::Letter;
    use crate::{Int, Rat};

    fn q(v: [i64; 5]) -> Quintuple<Rat> {
        Quintuple::from_array(v.map(|x| Rat::from_integer(Int::from(x))))
    }

    fn qi(v: [i64; 5]) -> Quintuple<Int> {
        Quintuple::from_array(v.map(Int::from))
    }

    fn t344() -> Triple<Rat> {
        Triple::from_array([3, 4, 4].map(|x| Rat::from_integer(Int::from(x))))
    }

    fn r(n: i64) -> Rat {
        Rat::from_integer(Int::from(n))
    }

    #[test]
    fn reduced_data_values() {
        let d = derive_mt(&t344());
        assert_eq!(d.m, r(16));
        assert_eq!(d.t, r(9));
        let d = derive_mt(&Triple::new(r(3), r(4), r(8)));
        assert_eq!(d.m, r(16));
        assert_eq!(d.t, r(9));
    }

    #[test]
    fn cde_relation_holds() {
        for p in [
            q([1, 1, 1, 1, 1]),
            q([2, 3, 5, 1, 1]),
            q([1, 2, 3, 7, 1]),
            Quintuple::new(
                Rat::new(Int::from(2), Int::from(3)),
                r(5),
                Rat::new(Int::from(7), Int::from(2)),
                r(1),
                Rat::new(Int::from(4), Int::from(9)),
            ),
        ] {
            assert!(check_cde_relation(&p));
        }
    }

    #[test]
    fn reconstruction_values() {
        let p = reconstruct_from_cde(&r(5), &r(1), &r(1), &t344()).unwrap();
        assert_eq!(p, q([2, 3, 5, 1, 1]));
        let p = reconstruct_from_cde(&r(1), &r(1), &r(1), &t344()).unwrap();
        assert_eq!(p, q([1, 1, 1, 1, 1]));
        // m = 0 is rejected
        let degenerate = Triple::new(r(0), r(0), r(0));
        assert_eq!(
            reconstruct_from_cde(&r(1), &r(1), &r(1), &degenerate),
            Err(DecisionError::DegenerateM)
        );
    }

    #[test]
    fn reconstruction_inverts_phi() {
        for p in [q([1, 2, 1, 1, 1]), q([2, 3, 5, 1, 1]), q([4, 6, 10, 2, 2])] {
            let triple = phi(&p);
            assert_eq!(reconstruct_from_cde(&p.c, &p.d, &p.e, &triple).unwrap(), p);
        }
    }

    #[test]
    fn step_matrix_at_root_triple() {
        let l1 = step_matrix(&t344(), 1).unwrap().0;
        let half = |n: i64, d: i64| Rat::new(Int::from(n), Int::from(d));
        assert_eq!(l1[2], [half(11, 4), half(19, 4), r(9), r(1), r(0)]);
        assert_eq!(l1[3], [half(-1, 4), half(-1, 2), r(-1), r(0), r(0)]);
        assert_eq!(l1[4], [half(-1, 2), half(-5, 4), r(-3), r(0), r(1)]);
        for row in &l1[..2] {
            assert!(row.iter().all(Zero::is_zero));
        }
        let l0 = step_matrix(&t344(), 0).unwrap().0;
        assert_eq!(l0, identity());
        let lm1 = step_matrix(&t344(), -1).unwrap().0;
        assert_eq!(lm1[2], [half(-1, 2), half(-1, 4), r(0), r(-1), r(0)]);
        assert_eq!(lm1[3], [half(19, 4), half(11, 4), r(1), r(9), r(0)]);
        assert_eq!(lm1[4], [half(-5, 4), half(-1, 2), r(0), r(-3), r(1)]);
    }

    #[test]
    fn beta3_power_matches_words() {
        let ones = q([1, 1, 1, 1, 1]);
        assert_eq!(beta3_power(&ones, 1), q([2, 3, 5, 1, 1]));
        assert_eq!(beta3_power(&ones, 0), ones);
        assert_eq!(beta3_power(&ones, -1), q([3, 2, 1, 5, 1]));
        let p = Quintuple::new(
            Rat::new(Int::from(3), Int::from(2)),
            r(1),
            Rat::new(Int::from(2), Int::from(7)),
            r(2),
            r(3),
        );
        for n in -4i64..=4 {
            let mut w = Word::empty();
            let letter = if n >= 0 {
                Letter::Beta
            } else {
                Letter::BetaInv
            };
            for _ in 0..(3 * n.unsigned_abs()) {
                w.0.push(letter);
            }
            assert_eq!(beta3_power(&p, n), p.apply_word(&w), "n = {n}");
        }
    }

    #[test]
    fn step_matrices_invert_on_states() {
        let p = q([2, 3, 5, 1, 1]);
        let triple = phi(&p);
        let l1 = step_matrix(&triple, 1).unwrap().0;
        let lm1 = step_matrix(&triple, -1).unwrap().0;
        let v = row_times_mat(&row_times_mat(&p.to_array(), &l1), &lm1);
        assert_eq!(Quintuple::from_array(v), p);
    }

    #[test]
    fn criterion_examples() {
        let d = criterion(&qi([1, 1, 1, 1, 1]), &Int::from(1)).unwrap();
        assert!(d.member && d.clauses.all());
        let d = criterion(&qi([2, 2, 2, 2, 1]), &Int::from(1)).unwrap();
        assert!(!d.member);
        assert!(!d.clauses.t_zero);
        // T = 0 but phi not integral: (1,2,3,7,1)
        let d = criterion(&qi([1, 2, 3, 7, 1]), &Int::from(1)).unwrap();
        assert!(!d.member);
        assert!(d.clauses.t_zero && !d.clauses.phi_integral && d.clauses.divisible);
        // scaled seed at eps = 2
        let d = criterion(&qi([4, 6, 10, 2, 2]), &Int::from(2)).unwrap();
        assert!(d.member);
        // wrong fifth coordinate
        assert_eq!(
            criterion(&qi([1, 1, 1, 1, 1]), &Int::from(2)),
            Err(DecisionError::FifthCoordinate)
        );
    }

    #[test]
    fn s344_index_examples() {
        let one = Int::from(1);
        assert_eq!(s344_index(&qi([1, 1, 1, 1, 1]), &one).unwrap(), 0);
        assert_eq!(s344_index(&qi([2, 3, 5, 1, 1]), &one).unwrap(), 1);
        assert_eq!(s344_index(&qi([3, 2, 1, 5, 1]), &one).unwrap(), -1);
        for n in -5i64..=5 {
            assert_eq!(s344_index(&beta3_point(&one, n), &one).unwrap(), n);
        }
        let two = Int::from(2);
        for n in -3i64..=3 {
            assert_eq!(s344_index(&beta3_point(&two, n), &two).unwrap(), n);
        }
        assert_eq!(
            s344_index(&qi([1, 2, 1, 1, 1]), &one),
            Err(DecisionError::NotOnRootFiber)
        );
    }

    #[test]
    fn witness_examples() {
        let one = Int::from(1);
        let w = witness(&qi([1, 1, 1, 1, 1]), &one).unwrap();
        assert!(w.word.is_empty());
        assert_eq!(w.n, 0);

        let w = witness(&qi([2, 3, 5, 1, 1]), &one).unwrap();
        assert!(w.word.is_empty());
        assert_eq!(w.n, 1);
        assert_eq!(w.replay(), qi([2, 3, 5, 1, 1]));

        let w = witness(&qi([1, 2, 1, 1, 1]), &one).unwrap();
        assert_eq!(w.replay(), qi([1, 2, 1, 1, 1]));

        assert!(matches!(
            witness(&qi([1, 2, 3, 7, 1]), &one),
            Err(DecisionError::NotMember(_))
        ));
    }

    #[test]
    fn witness_survives_long_words() {
        // a fixed 24-letter word drives the entries to hundreds of digits;
        // the descent and the index search must still replay exactly
        let one = Int::from(1);
        let w: Word = "abababababababababababab".parse().unwrap();
        let p = Quintuple::constant(Rat::from_integer(one.clone()))
            .apply_word(&w)
            .try_to_integer()
            .unwrap();
        let cert = witness(&p, &one).unwrap();
        assert_eq!(cert.replay(), p);

        let mixed: Word = "bbaBBaabbbaABabbaabbABba".parse().unwrap();
        let q = Quintuple::constant(Rat::from_integer(one.clone()))
            .apply_word(&mixed)
            .try_to_integer()
            .unwrap();
        let cert = witness(&q, &one).unwrap();
        assert_eq!(cert.replay(), q);
    }

    #[test]
    fn witness_scaled() {
        let two = Int::from(2);
        let p = qi([4, 6, 10, 2, 2]);
        let w = witness(&p, &two).unwrap();
        assert_eq!(w.replay(), p);
    }
}
