//! Integer points on hyperbolas `AU² + BUV + CV² = E`, the Pell equation
//! `X² − DY² = 4`, and the transformed hyperbola machinery.
//!
//! For `A > 0`, `E < 0`, `D = B² − 4AC > 0` squarefree, every integer
//! solution lies, up to sign, in the orbit of finitely many fundamental
//! solutions under the automorph
//!
//! ```text
//! K = [ (x−By)/2   Ay ]
//!     [   −Cy    (x+By)/2 ]
//! ```
//!
//! built from the least positive Pell solution `(x, y)`. Fundamentals are
//! the positive solutions with `√(4A|E|/D) ≤ v < √(A|E|(x+2)/D)`, plus the
//! boundary solution with `v = √(A|E|(x+2)/D)` when it is integral; both
//! conditions are decided by exact comparisons of squared quantities.
//!
//! The specific hyperbolas of interest come from the `(c,d)`-coordinates
//! of quintuples over `(3,4,4)`:
//! `H(X,Y) = X² − 9XY + Y² + 3εX + 3εY + ε²` and, after the substitution
//! `θ(x) = 7x − 3ε`, the pure hyperbola `Ĥ(U,V) = U² − 9UV + V² + 112ε²`
//! with `Ĥ(θx, θy) = 49·H(x,y)`. The solutions of `H = 0` divisible by ε
//! are exactly the rows of `(ε,ε,ε)·Mⁿ` for `M = [[9,1,0],[−1,0,0],[−3,0,1]]`.

use std::collections::BTreeSet;

use num_rational::Ratio;
use thiserror::Error;

use crate::scalar::{exact_div, perfect_sqrt, s, IntScalar, Scalar};
use crate::smallmat::{mat_mul, row_times_mat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConicError {
    #[error("leading coefficient A must be positive")]
    NonPositiveA,
    #[error("right-hand side E must be negative")]
    NonNegativeE,
    #[error("discriminant {0} is not positive")]
    NonPositiveDiscriminant(String),
    #[error("discriminant {0} is a perfect square")]
    SquareDiscriminant(String),
    #[error("discriminant {0} is not squarefree")]
    NotSquarefree(String),
    #[error("epsilon must be a positive integer")]
    BadEpsilon,
}

/// `AU² + BUV + CV² = E` with `A > 0`, `E < 0`, `D = B² − 4AC > 0`
/// squarefree (hence not a perfect square).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConicForm<T> {
    a: T,
    b: T,
    c: T,
    e: T,
    d: T,
}

impl<T: IntScalar> ConicForm<T> {
    pub fn new(a: T, b: T, c: T, e: T) -> Result<ConicForm<T>, ConicError> {
        if !a.is_positive() {
            return Err(ConicError::NonPositiveA);
        }
        if !e.is_negative() {
            return Err(ConicError::NonNegativeE);
        }
        let d = b.clone() * b.clone() - s::<T>(4) * a.clone() * c.clone();
        if !d.is_positive() {
            return Err(ConicError::NonPositiveDiscriminant(format_scalar(&d)));
        }
        if perfect_sqrt(&d).is_some() {
            return Err(ConicError::SquareDiscriminant(format_scalar(&d)));
        }
        if !is_squarefree(&d) {
            return Err(ConicError::NotSquarefree(format_scalar(&d)));
        }
        Ok(ConicForm { a, b, c, e, d })
    }

    pub fn coefficients(&self) -> (&T, &T, &T, &T) {
        (&self.a, &self.b, &self.c, &self.e)
    }

    pub fn discriminant(&self) -> &T {
        &self.d
    }

    /// Evaluate `AU² + BUV + CV² − E`; zero exactly on solutions.
    pub fn residual(&self, u: &T, v: &T) -> T {
        self.a.clone() * u.clone() * u.clone()
            + self.b.clone() * u.clone() * v.clone()
            + self.c.clone() * v.clone() * v.clone()
            - self.e.clone()
    }

    pub fn is_solution(&self, u: &T, v: &T) -> bool {
        self.residual(u, v).is_zero()
    }
}

fn format_scalar<T: IntScalar>(v: &T) -> String {
    v.to_i128()
        .map_or_else(|| "<big>".into(), |x| x.to_string())
}

/// Trial-division squarefreeness test; desk scale.
pub fn is_squarefree<T: IntScalar>(n: &T) -> bool {
    if n.is_zero() {
        return false;
    }
    let mut n = n.abs();
    let mut p: T = s(2);
    while p.clone() * p.clone() <= n {
        if n.is_multiple_of(&p) {
            n = n / p.clone();
            if n.is_multiple_of(&p) {
                return false;
            }
        }
        p = p + T::one();
    }
    true
}

/// The least positive solution of `X² − DY² = 4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution<T> {
    pub x: T,
    pub y: T,
}

/// Least positive solution of `X² − DY² = 4` by ascending search on `y`
/// with exact perfect-square tests. Total for any non-square `D > 0`.
pub fn least_pell4<T: IntScalar>(d: &T) -> Result<PellSolution<T>, ConicError> {
    if !d.is_positive() {
        return Err(ConicError::NonPositiveDiscriminant(format_scalar(d)));
    }
    if perfect_sqrt(d).is_some() {
        return Err(ConicError::SquareDiscriminant(format_scalar(d)));
    }
    let four: T = s(4);
    let mut y = T::one();
    loop {
        let t = four.clone() + d.clone() * y.clone() * y.clone();
        if let Some(x) = perfect_sqrt(&t) {
            return Ok(PellSolution { x, y });
        }
        y = y + T::one();
    }
}

/// Continued-fraction fast path for [`least_pell4`], restricted to
/// squarefree `D`. Expands `√D` (or `(1+√D)/2` when `D ≡ 1 mod 4`) to the
/// fundamental unit of the corresponding order and squares it if its norm
/// is −1.
pub fn least_pell4_cf<T: IntScalar>(d: &T) -> Result<PellSolution<T>, ConicError> {
    if !d.is_positive() {
        return Err(ConicError::NonPositiveDiscriminant(format_scalar(d)));
    }
    if perfect_sqrt(d).is_some() {
        return Err(ConicError::SquareDiscriminant(format_scalar(d)));
    }
    if !is_squarefree(d) {
        return Err(ConicError::NotSquarefree(format_scalar(d)));
    }
    let four: T = s(4);
    let two: T = s(2);
    let one = T::one();
    let root = d.sqrt();

    // ω = (P₀ + √D)/Q₀
    let (p0, q0) = if d.mod_floor(&four) == one {
        (one.clone(), two.clone())
    } else {
        (T::zero(), one.clone())
    };

    // Convergents over the continued fraction of ω until the periodic part
    // of the (P, Q) state closes. The tail from index 1 is purely periodic
    // for both ω families, so the first repeated state marks one period.
    let mut p_prev = T::one();
    let mut p_cur = T::zero(); // p_{-1}, p_{-2} seeds
    let mut q_prev = T::zero();
    let mut q_cur = T::one();
    let (mut pp, mut qq) = (p0.clone(), q0.clone());
    let mut first_state: Option<(T, T)> = None;
    let (mut h, mut k) = (T::zero(), T::zero()); // convergent before the period closes
    loop {
        let a = (pp.clone() + root.clone()).div_floor(&qq);
        let p_new = a.clone() * p_prev.clone() + p_cur.clone();
        let q_new = a.clone() * q_prev.clone() + q_cur.clone();
        p_cur = p_prev;
        p_prev = p_new;
        q_cur = q_prev;
        q_prev = q_new;
        pp = a * qq.clone() - pp;
        qq = exact_div(d.clone() - pp.clone() * pp.clone(), &qq);
        match &first_state {
            None => first_state = Some((pp.clone(), qq.clone())),
            Some(st) => {
                if *st == (pp.clone(), qq.clone()) {
                    break;
                }
            }
        }
        h = p_prev.clone();
        k = q_prev.clone();
    }
    // unit = h − k·conj(ω) with conj(ω) = (P₀ − √D)/Q₀, written as
    // (t + u√D)/2:
    let (mut t, mut u) = if q0 == two {
        // ω = (1+√D)/2: unit = ((2h − k) + k√D)/2
        (two.clone() * h - k.clone(), k)
    } else {
        // ω = √D: unit = (2h + 2k√D)/2
        (two.clone() * h, two.clone() * k)
    };
    let norm = exact_div(
        t.clone() * t.clone() - d.clone() * u.clone() * u.clone(),
        &four,
    );
    if norm == -one.clone() {
        let t2 = exact_div(
            t.clone() * t.clone() + d.clone() * u.clone() * u.clone(),
            &two,
        );
        u = t * u;
        t = t2;
    } else {
        assert!(norm.is_one(), "fundamental unit norm must be ±1");
    }
    Ok(PellSolution { x: t, y: u })
}

/// The automorph `K` of a form, from its least Pell solution.
pub fn automorph<T: IntScalar>(f: &ConicForm<T>) -> Result<[[T; 2]; 2], ConicError> {
    let PellSolution { x, y } = least_pell4(f.discriminant())?;
    let two: T = s(2);
    let k00 = exact_div(x.clone() - f.b.clone() * y.clone(), &two);
    let k11 = exact_div(x + f.b.clone() * y.clone(), &two);
    Ok([[k00, f.a.clone() * y.clone()], [-(f.c.clone() * y), k11]])
}

fn invert_unimodular<T: IntScalar>(m: &[[T; 2]; 2]) -> [[T; 2]; 2] {
    // det = 1 for automorphs
    [
        [m[1][1].clone(), -m[0][1].clone()],
        [-m[1][0].clone(), m[0][0].clone()],
    ]
}

/// Positive fundamental solutions per the interval condition (i) and the
/// boundary condition (ii), each verified against the form. Sorted by
/// `(v, u)`.
pub fn matthews_fundamentals<T: IntScalar>(f: &ConicForm<T>) -> Result<Vec<(T, T)>, ConicError> {
    let PellSolution { x, y } = least_pell4(f.discriminant())?;
    let (a, b, _c, e) = f.coefficients();
    let d = f.discriminant();
    let ae = a.clone() * e.abs();
    let two: T = s(2);
    let four: T = s(4);

    let mut out = BTreeSet::new();

    // (i): 4A|E| ≤ Dv² < A|E|(x+2), solving the form for u at each v.
    let mut v = T::one();
    // skip below the lower bound quickly
    let lower = four.clone() * ae.clone();
    let vsq_min = lower.div_ceil(d);
    v = v.max(vsq_min.sqrt());
    while d.clone() * v.clone() * v.clone() < lower {
        v = v + T::one();
    }
    while d.clone() * v.clone() * v.clone() < ae.clone() * (x.clone() + two.clone()) {
        // A u² + (Bv) u + (Cv² − E) = 0
        let q1 = b.clone() * v.clone();
        let q0 = f.c.clone() * v.clone() * v.clone() - e.clone();
        for u in quadratic_roots_any_sign(a, &q1, &q0) {
            if u.is_positive() && f.is_solution(&u, &v) {
                out.insert((u, v.clone()));
            }
        }
        v = v + T::one();
    }

    // (ii): v = √(A|E|(x+2)/D), u = (1 − By/(x−2))·√(A|E|(x−2))/(2A),
    // accepted only when every intermediate quantity is exactly integral.
    let num = ae.clone() * (x.clone() + two.clone());
    if num.is_multiple_of(d) {
        if let Some(v) = perfect_sqrt(&(num / d.clone())) {
            if let Some(sq) = perfect_sqrt(&(ae.clone() * (x.clone() - two.clone()))) {
                // u = sq·((x−2) − By) / (2A(x−2)) as an exact rational
                let xm2 = x.clone() - two.clone();
                let u_num = sq * (xm2.clone() - b.clone() * y.clone());
                let u_den = two.clone() * a.clone() * xm2;
                let u = Ratio::new(u_num, u_den);
                if u.is_integer() {
                    let u = u.to_integer();
                    if u.is_positive() && v.is_positive() && f.is_solution(&u, &v) {
                        out.insert((u, v));
                    }
                }
            }
        }
    }

    let mut list: Vec<(T, T)> = out.into_iter().collect();
    list.sort_by(|l, r| (&l.1, &l.0).cmp(&(&r.1, &r.0)));
    Ok(list)
}

/// Integer roots of `q2·x² + q1·x + q0 = 0` of any sign (`q2 > 0`).
fn quadratic_roots_any_sign<T: IntScalar>(q2: &T, q1: &T, q0: &T) -> Vec<T> {
    let four: T = s(4);
    let two: T = s(2);
    let disc = q1.clone() * q1.clone() - four * q2.clone() * q0.clone();
    let Some(sq) = perfect_sqrt(&disc) else {
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

/// The image `(u, v)·Kⁿ` of one fundamental under the automorph power.
pub fn orbit_point<T: IntScalar>(
    f: &ConicForm<T>,
    fundamental: &(T, T),
    n: i64,
) -> Result<(T, T), ConicError> {
    let k = automorph(f)?;
    let step = if n >= 0 {
        k.clone()
    } else {
        invert_unimodular(&k)
    };
    let mut v = [fundamental.0.clone(), fundamental.1.clone()];
    for _ in 0..n.unsigned_abs() {
        v = row_times_mat(&v, &step);
    }
    let [u, w] = v;
    Ok((u, w))
}

/// All points `±(u,v)·Kⁿ` for every fundamental `(u,v)` and `n` in the
/// inclusive range; deduplicated, sorted. Sign images are included because
/// the solution set of the form is symmetric under negation while the
/// automorph orbit of a positive fundamental stays on one branch. Negative
/// or zero coordinates are retained; positivity filtering is the caller's
/// job.
pub fn enumerate_conic<T: IntScalar>(
    f: &ConicForm<T>,
    n_lo: i64,
    n_hi: i64,
) -> Result<BTreeSet<(T, T)>, ConicError> {
    let mut out = BTreeSet::new();
    if n_lo > n_hi {
        return Ok(out);
    }
    let k = automorph(f)?;
    let kinv = invert_unimodular(&k);
    for fundamental in matthews_fundamentals(f)? {
        let mut cur = [fundamental.0.clone(), fundamental.1.clone()];
        // walk to n_lo, then sweep forward
        for _ in 0..n_lo.unsigned_abs() {
            cur = row_times_mat(&cur, if n_lo < 0 { &kinv } else { &k });
        }
        for _ in n_lo..=n_hi {
            let (u, v) = (cur[0].clone(), cur[1].clone());
            assert!(f.is_solution(&u, &v), "automorph orbit stays on the conic");
            out.insert((-u.clone(), -v.clone()));
            out.insert((u, v));
            cur = row_times_mat(&cur, &k);
        }
    }
    Ok(out)
}

/// `θ(x) = 7x − 3ε`; conjugates `H` to `Ĥ`: `Ĥ(θx, θy) = 49·H(x,y)`.
pub fn theta<S: Scalar>(x: &S, eps: &S) -> S {
    s::<S>(7) * x.clone() - s::<S>(3) * eps.clone()
}

/// `θ⁻¹(u) = (u + 3ε)/7` as an exact rational; integrality is the
/// caller's concern.
pub fn theta_inv<T: IntScalar>(u: &T, eps: &T) -> Ratio<T> {
    Ratio::new(u.clone() + s::<T>(3) * eps.clone(), s(7))
}

/// `H(X,Y) = X² − 9XY + Y² + 3εX + 3εY + ε²`.
pub fn hyperbola_h<S: Scalar>(x: &S, y: &S, eps: &S) -> S {
    let sq = |v: &S| v.clone() * v.clone();
    sq(x) - s::<S>(9) * x.clone() * y.clone()
        + sq(y)
        + s::<S>(3) * eps.clone() * x.clone()
        + s::<S>(3) * eps.clone() * y.clone()
        + sq(eps)
}

/// `Ĥ(U,V) = U² − 9UV + V² + 112ε²`.
pub fn hyperbola_h_hat<S: Scalar>(u: &S, v: &S, eps: &S) -> S {
    let sq = |w: &S| w.clone() * w.clone();
    sq(u) - s::<S>(9) * u.clone() * v.clone() + sq(v) + s::<S>(112) * sq(eps)
}

/// The conic form of `Ĥ = 0` at a given ε: `(A,B,C,E) = (1, −9, 1, −112ε²)`.
pub fn h_hat_form<T: IntScalar>(eps: &T) -> Result<ConicForm<T>, ConicError> {
    if !eps.is_positive() {
        return Err(ConicError::BadEpsilon);
    }
    ConicForm::new(
        T::one(),
        s(-9),
        T::one(),
        -(s::<T>(112) * eps.clone() * eps.clone()),
    )
}

/// One positive solution of `H = 0` divisible by ε, read off
/// `(ε,ε,ε)·Mⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H0Element<T> {
    pub n: i64,
    pub x: T,
    pub y: T,
    pub epsilon: T,
}

/// The elements `(x, y, ε) = (ε,ε,ε)·Mⁿ`, `M = [[9,1,0],[−1,0,0],[−3,0,1]]`,
/// for `n` in the inclusive range. Every element satisfies `H(x,y) = 0`
/// and `x ≡ y ≡ 0 (mod ε)`.
pub fn h0_elements<T: IntScalar>(
    eps: &T,
    n_lo: i64,
    n_hi: i64,
) -> Result<Vec<H0Element<T>>, ConicError> {
    if !eps.is_positive() {
        return Err(ConicError::BadEpsilon);
    }
    if n_lo > n_hi {
        return Ok(Vec::new());
    }
    let m: [[T; 3]; 3] = [
        [s(9), T::one(), T::zero()],
        [-T::one(), T::zero(), T::zero()],
        [s(-3), T::zero(), T::one()],
    ];
    let minv: [[T; 3]; 3] = [
        [T::zero(), -T::one(), T::zero()],
        [T::one(), s(9), T::zero()],
        [T::zero(), s(-3), T::one()],
    ];
    debug_assert_eq!(mat_mul(&m, &minv), crate::smallmat::identity());
    let mut cur = [eps.clone(), eps.clone(), eps.clone()];
    for _ in 0..n_lo.unsigned_abs() {
        cur = row_times_mat(&cur, if n_lo < 0 { &minv } else { &m });
    }
    let mut out = Vec::with_capacity((n_hi - n_lo + 1) as usize);
    for n in n_lo..=n_hi {
        let [x, y, z] = cur.clone();
        assert!(z == *eps, "third coordinate is fixed");
        assert!(
            hyperbola_h(&x, &y, eps).is_zero(),
            "generated point must satisfy H = 0"
        );
        assert!(x.is_multiple_of(eps) && y.is_multiple_of(eps));
        out.push(H0Element {
            n,
            x,
            y,
            epsilon: eps.clone(),
        });
        cur = row_times_mat(&cur, &m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::{Signed, ToPrimitive, Zero};

    use crate::Int;

    fn int(v: i64) -> Int {
        Int::from(v)
    }

    #[test]
    fn least_pell_values() {
        let p = least_pell4(&int(77)).unwrap();
        assert_eq!((p.x, p.y), (int(9), int(1)));
        let p = least_pell4(&int(5)).unwrap();
        assert_eq!((p.x, p.y), (int(3), int(1)));
        let p = least_pell4(&int(3)).unwrap();
        assert_eq!((p.x, p.y), (int(4), int(2)));
        // non-squarefree D is fine for the plain search
        let p = least_pell4(&int(8)).unwrap();
        assert_eq!((p.x, p.y), (int(6), int(2)));
    }

    #[test]
    fn least_pell_rejects_bad_d() {
        assert!(matches!(
            least_pell4(&int(0)),
            Err(ConicError::NonPositiveDiscriminant(_))
        ));
        assert!(matches!(
            least_pell4(&int(49)),
            Err(ConicError::SquareDiscriminant(_))
        ));
        assert!(matches!(
            least_pell4_cf(&int(12)),
            Err(ConicError::NotSquarefree(_))
        ));
    }

    #[test]
    fn continued_fraction_matches_search() {
        for d in 2..=120i64 {
            let d = int(d);
            if perfect_sqrt(&d).is_some() || !is_squarefree(&d) {
                continue;
            }
            let cf = least_pell4_cf(&d).unwrap();
            let search = least_pell4(&d).unwrap();
            assert_eq!((cf.x, cf.y), (search.x, search.y), "D = {d}");
        }
    }

    #[test]
    fn continued_fraction_large_unit() {
        // D = 61 has a famously large fundamental solution
        let p = least_pell4_cf(&int(61)).unwrap();
        assert_eq!((p.x.clone(), p.y.clone()), (int(1523), int(195)));
        assert_eq!(p.x.clone() * p.x, int(4) + int(61) * p.y.clone() * p.y);
    }

    #[test]
    fn form_validation() {
        assert!(h_hat_form(&int(1)).is_ok());
        assert!(matches!(
            ConicForm::new(int(0), int(1), int(1), int(-4)),
            Err(ConicError::NonPositiveA)
        ));
        assert!(matches!(
            ConicForm::new(int(1), int(1), int(1), int(4)),
            Err(ConicError::NonNegativeE)
        ));
        assert!(matches!(
            ConicForm::new(int(1), int(1), int(1), int(-4)),
            Err(ConicError::NonPositiveDiscriminant(_))
        ));
        // D = 12 = 4·3 not squarefree
        assert!(matches!(
            ConicForm::new(int(1), int(4), int(1), int(-4)),
            Err(ConicError::NotSquarefree(_))
        ));
    }

    #[test]
    fn fundamentals_of_h_hat() {
        let f = h_hat_form(&int(1)).unwrap();
        assert_eq!(matthews_fundamentals(&f).unwrap(), vec![(int(32), int(4))]);
        let f2 = h_hat_form(&int(2)).unwrap();
        assert_eq!(matthews_fundamentals(&f2).unwrap(), vec![(int(64), int(8))]);
    }

    #[test]
    fn fundamentals_small_form() {
        // U² − 3UV + V² = −4: D = 5, fundamental (4, 2)
        let f = ConicForm::new(int(1), int(-3), int(1), int(-4)).unwrap();
        assert_eq!(matthews_fundamentals(&f).unwrap(), vec![(int(4), int(2))]);
    }

    #[test]
    fn fundamentals_from_the_interval_condition() {
        // E = -5 puts the fundamental exactly on the lower interval
        // boundary (double root), E = -11 yields two fundamentals at the
        // same v; neither form satisfies the boundary condition
        let f = ConicForm::new(int(1), int(-3), int(1), int(-5)).unwrap();
        assert_eq!(matthews_fundamentals(&f).unwrap(), vec![(int(3), int(2))]);
        let f = ConicForm::new(int(1), int(-3), int(1), int(-11)).unwrap();
        assert_eq!(
            matthews_fundamentals(&f).unwrap(),
            vec![(int(4), int(3)), (int(5), int(3))]
        );
    }

    #[test]
    fn varied_forms_cover_their_boxes() {
        // box equality across forms with one, two, and zero fundamentals
        for (a, b, c, e) in [(1, -3, 1, -5), (1, -3, 1, -11), (2, -5, 1, -7)] {
            let f = ConicForm::new(int(a), int(b), int(c), int(e)).unwrap();
            let bound = int(2000);
            let generated: BTreeSet<(Int, Int)> = enumerate_conic(&f, -10, 10)
                .unwrap()
                .into_iter()
                .filter(|(u, v)| u.abs() <= bound && v.abs() <= bound)
                .collect();
            let boxed = crate::oracle::brute_force_conic_box(
                &int(a),
                &int(b),
                &int(c),
                &int(e),
                &bound,
            );
            assert_eq!(generated, boxed, "form ({a},{b},{c},{e})");
        }
    }

    #[test]
    fn small_form_orbit_covers_the_box() {
        // every |U|, |V| <= 10^4 solution of U^2 - 3UV + V^2 = -4 arises
        // from the single fundamental under automorph powers and negation
        let f = ConicForm::new(int(1), int(-3), int(1), int(-4)).unwrap();
        let bound = int(10_000);
        let generated: BTreeSet<(Int, Int)> = enumerate_conic(&f, -12, 12)
            .unwrap()
            .into_iter()
            .filter(|(u, v)| u.abs() <= bound && v.abs() <= bound)
            .collect();
        let boxed =
            crate::oracle::brute_force_conic_box(&int(1), &int(-3), &int(1), &int(-4), &bound);
        assert_eq!(generated, boxed);
    }

    #[test]
    fn orbit_points_of_h_hat() {
        let f = h_hat_form(&int(1)).unwrap();
        let fund = (int(32), int(4));
        assert_eq!(orbit_point(&f, &fund, 0).unwrap(), (int(32), int(4)));
        assert_eq!(orbit_point(&f, &fund, -1).unwrap(), (int(4), int(4)));
        assert_eq!(orbit_point(&f, &fund, 1).unwrap(), (int(284), int(32)));
    }

    #[test]
    fn enumerate_includes_sign_orbit() {
        let f = h_hat_form(&int(1)).unwrap();
        let pts = enumerate_conic(&f, -3, 1).unwrap();
        assert!(pts.contains(&(int(4), int(4))));
        assert!(pts.contains(&(int(-4), int(-4))));
        assert!(pts.contains(&(int(4), int(32))));
        for (u, v) in &pts {
            assert!(f.is_solution(u, v));
        }
    }

    #[test]
    fn theta_conjugates_h_to_h_hat() {
        let eps = int(3);
        assert_eq!(theta(&(int(5) * eps.clone()), &eps), int(32) * eps.clone());
        assert_eq!(
            theta_inv(&(int(4) * eps.clone()), &eps),
            Ratio::from_integer(eps.clone())
        );
        // round trip on rationals
        let q = crate::Rat::new(int(22), int(7));
        let eq = crate::Rat::from_integer(eps.clone());
        let back = (theta(&q, &eq) + crate::Rat::from_integer(int(3) * eps.clone()))
            / crate::Rat::from_integer(int(7));
        assert_eq!(back, q);
    }

    #[test]
    fn h0_sequence() {
        let els = h0_elements(&int(1), -2, 2).unwrap();
        let pairs: Vec<(i64, i64, i64)> = els
            .iter()
            .map(|e| (e.n, e.x.to_i64().unwrap(), e.y.to_i64().unwrap()))
            .collect();
        assert_eq!(
            pairs,
            vec![(-2, 5, 41), (-1, 1, 5), (0, 1, 1), (1, 5, 1), (2, 41, 5)]
        );
        // consecutive recurrence (x, y) -> (9x − y − 3ε, x)
        for w in els.windows(2) {
            assert_eq!(w[1].x, int(9) * w[0].x.clone() - w[0].y.clone() - int(3));
            assert_eq!(w[1].y, w[0].x);
        }
    }

    #[test]
    fn h0_scaled() {
        for eps in 1..=3i64 {
            let eps = int(eps);
            for el in h0_elements(&eps, -4, 4).unwrap() {
                assert!(hyperbola_h(&el.x, &el.y, &eps).is_zero());
                assert!(el.x.is_multiple_of(&eps) && el.y.is_multiple_of(&eps));
            }
        }
    }
}
