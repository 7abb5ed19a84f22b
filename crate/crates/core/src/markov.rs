//! Positive integer solutions of `T̃(x,y,z) = xyz − x² − y² − z² − 7 = 0`.
//!
//! All solutions form a single tree rooted at `(3,4,4)` under the Vieta
//! branch move (replace one coordinate by its conjugate root of the
//! quadratic fixing the other two). [`enumerate_tree`] walks the tree,
//! [`brute_force_triples`] recovers the same set by exhaustive search, and
//! [`descend_to_root`] produces a tilde word replaying any solution from
//! `(3,4,4)`.
//!
//! Descent bookkeeping uses an auxiliary transposition σ (swap last two
//! coordinates) for sorting. σ conjugates every tilde generator to its
//! inverse and fixes the root, so pushing each σ to the front of the word
//! and absorbing it there leaves a word over `{α̃±1, β̃±1}` alone.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::conserved::{TildeWord, Triple};
use crate::quintuple::{letters, Letter};
use crate::scalar::{positive_quadratic_roots, s, IntScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MarkovError {
    #[error("triple is not a positive solution of the Markov-like equation")]
    NotASolution,
    #[error("descent invariant violated (corrupted input): {0}")]
    Corrupt(String),
}

/// All sorted positive solutions with every coordinate `≤ bound`, found by
/// iterating `x ≤ y` and solving `λ² − xyλ + (x² + y² + 7) = 0` exactly.
/// Independent of the tree walk; shares only the exact arithmetic layer.
pub fn brute_force_triples<T>(bound: &T) -> BTreeSet<Triple<T>>
where
    T: IntScalar + Send + Sync,
{
    if bound.is_negative() {
        return BTreeSet::new();
    }
    let bound_u = bound.to_u64().expect("desk-scale bound");
    let seven: T = s(7);
    let rows: Vec<Vec<Triple<T>>> = (1..=bound_u)
        .into_par_iter()
        .map(|xu| {
            let x: T = T::from_u64(xu).expect("bound fits the scalar");
            let mut found = Vec::new();
            let mut y = x.clone();
            while y <= *bound {
                let q0 = x.clone() * x.clone() + y.clone() * y.clone() + seven.clone();
                let q1 = -(x.clone() * y.clone());
                for z in positive_quadratic_roots(&T::one(), &q1, &q0) {
                    if z <= *bound {
                        let mut v = [x.clone(), y.clone(), z];
                        v.sort();
                        found.push(Triple::from_array(v));
                    }
                }
                y = y + T::one();
            }
            found
        })
        .collect();
    rows.into_iter().flatten().collect()
}

/// Closure of `{(3,4,4)}` under the branch move in all three coordinate
/// roles, pruned at `max ≤ bound`; canonical (sorted) forms.
pub fn enumerate_tree<T: IntScalar>(bound: &T) -> BTreeSet<Triple<T>> {
    let root: Triple<T> = Triple::new(s(3), s(4), s(4));
    let mut seen = BTreeSet::new();
    if &root.z > bound {
        return seen;
    }
    let mut frontier = vec![root.clone()];
    seen.insert(root);
    while let Some(t) = frontier.pop() {
        let Triple { x, y, z } = t;
        let branches = [
            Triple::new(y.clone() * z.clone() - x.clone(), y.clone(), z.clone()),
            Triple::new(x.clone(), x.clone() * z.clone() - y.clone(), z.clone()),
            Triple::new(x.clone(), y.clone(), x.clone() * y.clone() - z.clone()),
        ];
        for b in branches {
            debug_assert!(
                b.is_positive(),
                "Vieta conjugates of positive solutions stay positive"
            );
            let b = b.sorted();
            if &b.z <= bound && !seen.contains(&b) {
                seen.insert(b.clone());
                frontier.push(b);
            }
        }
    }
    seen
}

/// Moves used internally by the descent: a tilde generator or the
/// transposition of the last two coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    Gen(Letter),
    Sigma,
}

fn apply_move<T: IntScalar>(t: &Triple<T>, mv: Move) -> Triple<T> {
    match mv {
        Move::Gen(l) => t.apply(l),
        Move::Sigma => Triple::new(t.x.clone(), t.z.clone(), t.y.clone()),
    }
}

/// The six sort sequences over `{β̃±1, σ}`; the first one that sorts the
/// triple ascending is taken.
const SORTS: [&[Move]; 6] = [
    &[],
    &[Move::Sigma],
    &[Move::Gen(Letter::Beta)],
    &[Move::Gen(Letter::BetaInv)],
    &[Move::Gen(Letter::Beta), Move::Sigma],
    &[Move::Sigma, Move::Gen(Letter::Beta)],
];

/// Constructive descent: a tilde word `w̃` with `w̃` applied to `(3,4,4)`
/// replaying exactly to `t`. Words are not unique; the contract is replay
/// equality.
pub fn descend_to_root<T: IntScalar>(t: &Triple<T>) -> Result<TildeWord, MarkovError> {
    if !t.is_positive() || !t.tilde_t().is_zero() {
        return Err(MarkovError::NotASolution);
    }
    let root: Triple<T> = Triple::new(s(3), s(4), s(4));
    let three: T = s(3);
    let four: T = s(4);

    let mut moves: Vec<Move> = Vec::new();
    let mut cur = t.clone();
    loop {
        // sort ascending with β̃ cycles and σ
        let seq = SORTS
            .iter()
            .find(|seq| {
                let v = seq.iter().fold(cur.clone(), |u, &mv| apply_move(&u, mv));
                v.x <= v.y && v.y <= v.z
            })
            .expect("some sequence of the six sorts any triple");
        for &mv in *seq {
            cur = apply_move(&cur, mv);
            moves.push(mv);
        }
        if cur == root {
            break;
        }
        if cur.x < three || cur.y < four {
            return Err(MarkovError::Corrupt(format!(
                "sorted solution below (3,4,-) bounds: {:?} {:?} {:?}",
                cur.x, cur.y, cur.z
            )));
        }
        // Vieta step in the sorted frame: α̃⁻¹(x,y,z) = (x, xy−z, y)
        let old_max = cur.z.clone();
        cur = cur.apply(Letter::AlphaInv);
        moves.push(Move::Gen(Letter::AlphaInv));
        let new_max = cur.to_array().into_iter().max().expect("nonempty");
        if new_max >= old_max {
            return Err(MarkovError::Corrupt(
                "Vieta step failed to decrease the maximum".into(),
            ));
        }
    }

    // moves m₁…m_k send t to the root, so t = m₁⁻¹∘…∘m_k⁻¹ applied to the
    // root, i.e. the leftmost-first word [inv(m_k), …, inv(m₁)]. Walking
    // m₁…m_k forward is that word right-to-left; each σ seen flips every
    // letter to its left in word order.
    let mut out_rev: Vec<Letter> = Vec::new();
    let mut flip = false;
    for mv in &moves {
        match mv {
            Move::Sigma => flip = !flip,
            Move::Gen(l) => {
                let mut li = l.inverse();
                if flip {
                    li = li.inverse();
                }
                out_rev.push(li);
            }
        }
    }
    out_rev.reverse();
    let word = TildeWord(letters::free_reduce(&out_rev));
    assert_eq!(
        root.apply_word(&word),
        *t,
        "descent word must replay to its input"
    );
    Ok(word)
}

/// A permutation of the three coordinates, as the image map:
/// `permuted[i] = original[perm[i]]` (0-based).
pub type TriplePerm = [usize; 3];

pub fn permute_triple<T: Clone>(t: &Triple<T>, perm: &TriplePerm) -> Triple<T> {
    let v = t.to_array();
    Triple::from_array([v[perm[0]].clone(), v[perm[1]].clone(), v[perm[2]].clone()])
}

/// Given a word for `t`, a word for the permuted triple `σ(t)`: rotations
/// append β̃ powers; odd permutations invert every letter in place (σ
/// conjugation) before the rotation.
pub fn permute_solution(word: &TildeWord, perm: &TriplePerm) -> TildeWord {
    // rotations: identity, β̃ = (y,z,x), β̃² = (z,x,y)
    const ROTS: [TriplePerm; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
    const SWAP_LAST: TriplePerm = [0, 2, 1];
    let compose = |p: &TriplePerm, q: &TriplePerm| -> TriplePerm {
        // apply q first, then p
        [q[p[0]], q[p[1]], q[p[2]]]
    };
    for (k, rot) in ROTS.iter().enumerate() {
        if rot == perm {
            let mut letters = word.0.clone();
            letters.extend(std::iter::repeat_n(Letter::Beta, k));
            return TildeWord(letters).free_reduce();
        }
        if &compose(rot, &SWAP_LAST) == perm {
            let mut letters: Vec<Letter> = word.0.iter().map(|l| l.inverse()).collect();
            letters.extend(std::iter::repeat_n(Letter::Beta, k));
            return TildeWord(letters).free_reduce();
        }
    }
    unreachable!("every permutation of three letters is a rotation or rotation∘swap");
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    use crate::Int;

    fn t(v: [i64; 3]) -> Triple<Int> {
        Triple::from_array(v.map(Int::from))
    }

    fn root() -> Triple<Int> {
        t([3, 4, 4])
    }

    #[test]
    fn brute_force_small_bounds() {
        let got = brute_force_triples(&Int::from(13));
        let want: BTreeSet<_> = [t([3, 4, 4]), t([3, 4, 8]), t([4, 4, 13])].into();
        assert_eq!(got, want);
        assert_eq!(
            brute_force_triples(&Int::from(4)),
            BTreeSet::from([t([3, 4, 4])])
        );
        assert!(brute_force_triples(&Int::from(3)).is_empty());
    }

    #[test]
    fn no_solutions_with_small_minimum() {
        // the oracle re-verifies that x = 1 or 2 never occurs
        for triple in brute_force_triples(&Int::from(2000)) {
            assert!(triple.x >= Int::from(3));
            assert!(triple.y >= Int::from(4));
        }
    }

    #[test]
    fn tree_matches_oracle() {
        for bound in [4i64, 13, 100, 1000] {
            let bound = Int::from(bound);
            assert_eq!(enumerate_tree(&bound), brute_force_triples(&bound));
        }
        assert!(enumerate_tree(&Int::from(3)).is_empty());
    }

    #[test]
    fn tree_elements_are_solutions() {
        for triple in enumerate_tree(&Int::from(500)) {
            assert!(triple.tilde_t().is_zero());
        }
    }

    #[test]
    fn descent_base_cases() {
        assert_eq!(descend_to_root(&root()).unwrap(), TildeWord::empty());
        let w = descend_to_root(&t([3, 4, 8])).unwrap();
        assert_eq!(root().apply_word(&w), t([3, 4, 8]));
        let w = descend_to_root(&t([4, 4, 13])).unwrap();
        assert_eq!(root().apply_word(&w), t([4, 4, 13]));
    }

    #[test]
    fn descent_rejects_non_solutions() {
        assert_eq!(
            descend_to_root(&t([1, 1, 1])),
            Err(MarkovError::NotASolution)
        );
        assert_eq!(
            descend_to_root(&t([3, 4, -8])),
            Err(MarkovError::NotASolution)
        );
    }

    #[test]
    fn descent_replays_on_unsorted_input() {
        // all six coordinate orders of (3,4,8)
        for perm in [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ] {
            let target = permute_triple(&t([3, 4, 8]), &perm);
            let w = descend_to_root(&target).unwrap();
            assert_eq!(root().apply_word(&w), target);
        }
    }

    #[test]
    fn descent_replays_across_tree() {
        for triple in enumerate_tree(&Int::from(2000)) {
            let w = descend_to_root(&triple).unwrap();
            assert_eq!(root().apply_word(&w), triple);
        }
    }

    #[test]
    fn permuted_words_replay() {
        let base = t([3, 4, 8]);
        let word = descend_to_root(&base).unwrap();
        for perm in [
            [0usize, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ] {
            let permuted_word = permute_solution(&word, &perm);
            assert_eq!(
                root().apply_word(&permuted_word),
                permute_triple(&base, &perm),
                "perm {perm:?}"
            );
        }
        assert_eq!(permute_solution(&word, &[0, 1, 2]), word);
    }
}
