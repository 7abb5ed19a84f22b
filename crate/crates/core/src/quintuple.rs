//! The mutation group `G = ⟨α, β⟩` acting on positive quintuples.
//!
//! The two generators and their inverses act by
//!
//! ```text
//! α(a,b,c,d,e)  = (b, (b²+cd)/a, c, d, e)      α⁻¹(a,b,c,d,e) = ((a²+cd)/b, a, c, d, e)
//! β(a,b,c,d,e)  = (b, c, (ac+be)/d, a, e)      β⁻¹(a,b,c,d,e) = (d, a, b, (ae+bd)/c, e)
//! ```
//!
//! The fifth coordinate is frozen. Words apply leftmost letter first; the
//! wire encoding is `a`/`A`/`b`/`B` for α, α⁻¹, β, β⁻¹.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

use crate::scalar::{s, FieldScalar, IntScalar, Scalar};

/// One generator of the quintuple mutation group, or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Alpha,
    AlphaInv,
    Beta,
    BetaInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [
        Letter::Alpha,
        Letter::AlphaInv,
        Letter::Beta,
        Letter::BetaInv,
    ];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::Alpha => Letter::AlphaInv,
            Letter::AlphaInv => Letter::Alpha,
            Letter::Beta => Letter::BetaInv,
            Letter::BetaInv => Letter::Beta,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::Alpha => 'a',
            Letter::AlphaInv => 'A',
            Letter::Beta => 'b',
            Letter::BetaInv => 'B',
        }
    }

    pub fn from_char(ch: char) -> Option<Letter> {
        match ch {
            'a' => Some(Letter::Alpha),
            'A' => Some(Letter::AlphaInv),
            'b' => Some(Letter::Beta),
            'B' => Some(Letter::BetaInv),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown letter {0:?}; expected one of a, A, b, B")]
    UnknownLetter(char),
}

/// Shared letter-sequence helpers for [`Word`] and its tilde counterpart.
pub(crate) mod letters {
    use super::{Letter, WordError};

    pub fn parse(text: &str) -> Result<Vec<Letter>, WordError> {
        text.chars()
            .map(|ch| Letter::from_char(ch).ok_or(WordError::UnknownLetter(ch)))
            .collect()
    }

    pub fn format(letters: &[Letter]) -> String {
        letters.iter().map(|l| l.to_char()).collect()
    }

    /// Reverse order and invert every letter.
    pub fn inverse(letters: &[Letter]) -> Vec<Letter> {
        letters.iter().rev().map(|l| l.inverse()).collect()
    }

    /// Cancel adjacent inverse pairs until none remain.
    pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            if out.last().is_some_and(|&last| last == l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        out
    }
}

/// A word over `{α, α⁻¹, β, β⁻¹}`, applied leftmost letter first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The group inverse: reversed order, every letter inverted.
    pub fn inverse(&self) -> Word {
        Word(letters::inverse(&self.0))
    }

    pub fn free_reduce(&self) -> Word {
        Word(letters::free_reduce(&self.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&letters::format(&self.0))
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(text: &str) -> Result<Word, WordError> {
        Ok(Word(letters::parse(text)?))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("scale factor must be strictly positive")]
    NonPositiveScale,
}

/// A quintuple `(a, b, c, d, e)`; the group acts on strictly positive ones
/// and never touches `e`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quintuple<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
    pub e: S,
}

impl<S> Quintuple<S> {
    pub fn new(a: S, b: S, c: S, d: S, e: S) -> Quintuple<S> {
        Quintuple { a, b, c, d, e }
    }

    pub fn to_array(&self) -> [S; 5]
    where
        S: Clone,
    {
        [
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            self.e.clone(),
        ]
    }

    pub fn from_array(v: [S; 5]) -> Quintuple<S> {
        let [a, b, c, d, e] = v;
        Quintuple { a, b, c, d, e }
    }
}

impl<S: Scalar> Quintuple<S> {
    /// `(v, v, v, v, v)`.
    pub fn constant(v: S) -> Quintuple<S> {
        Quintuple::new(v.clone(), v.clone(), v.clone(), v.clone(), v)
    }

    pub fn is_positive(&self) -> bool {
        self.to_array().iter().all(|x| x.is_positive())
    }

    /// Entrywise multiplication by `k > 0`.
    pub fn scale(&self, k: &S) -> Result<Quintuple<S>, DynamicsError> {
        if !k.is_positive() {
            return Err(DynamicsError::NonPositiveScale);
        }
        Ok(Quintuple::from_array(
            self.to_array().map(|x| x * k.clone()),
        ))
    }
}

impl<S: FieldScalar> Quintuple<S> {
    /// Apply a single generator. Requires a strictly positive quintuple.
    pub fn apply(&self, l: Letter) -> Quintuple<S> {
        debug_assert!(self.is_positive(), "generators act on positive quintuples");
        let Quintuple { a, b, c, d, e } = self.clone();
        match l {
            Letter::Alpha => {
                let new = (b.clone() * b.clone() + c.clone() * d.clone()) / a;
                Quintuple::new(b, new, c, d, e)
            }
            Letter::AlphaInv => {
                let new = (a.clone() * a.clone() + c.clone() * d.clone()) / b;
                Quintuple::new(new, a, c, d, e)
            }
            Letter::Beta => {
                let new = (a.clone() * c.clone() + b.clone() * e.clone()) / d;
                Quintuple::new(b, c, new, a, e)
            }
            Letter::BetaInv => {
                let new = (a.clone() * e.clone() + b.clone() * d.clone()) / c;
                Quintuple::new(d, a, b, new, e)
            }
        }
    }

    /// Apply a word, leftmost letter first.
    pub fn apply_word(&self, w: &Word) -> Quintuple<S> {
        w.0.iter().fold(self.clone(), |p, &l| p.apply(l))
    }

    /// The conserved quantity
    /// `T(a,b,c,d,e) = (ab(c²+d²+e²) + (a²+b²+cd)(c+d)e)/(abcd) − 9`.
    pub fn invariant_t(&self) -> S {
        let Quintuple { a, b, c, d, e } = self.clone();
        let sq = |x: &S| x.clone() * x.clone();
        let num = a.clone() * b.clone() * (sq(&c) + sq(&d) + sq(&e))
            + (sq(&a) + sq(&b) + c.clone() * d.clone()) * (c.clone() + d.clone()) * e;
        num / (a * b * c * d) - s(9)
    }
}

impl<T: IntScalar> Quintuple<T> {
    pub fn to_rational(&self) -> Quintuple<Ratio<T>> {
        Quintuple::from_array(self.to_array().map(Ratio::from_integer))
    }

    /// Every entry divisible by `k`.
    pub fn divisible_by(&self, k: &T) -> bool {
        self.to_array().iter().all(|x| x.is_multiple_of(k))
    }
}

impl<T: IntScalar> Quintuple<Ratio<T>> {
    /// Back to integers when every entry is integral.
    pub fn try_to_integer(&self) -> Option<Quintuple<T>> {
        let arr = self.to_array();
        if arr.iter().all(|x| x.is_integer()) {
            Some(Quintuple::from_array(arr.map(|x| x.to_integer())))
        } else {
            None
        }
    }
}

impl<S: fmt::Display> fmt::Display for Quintuple<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {} {}", self.a, self.b, self.c, self.d, self.e)
    }
}

/// Breadth-first closure of the orbit of `(ε,…,ε)`, pruning any state whose
/// maximum component exceeds `bound`. Complete only relative to the bound:
/// an orbit element below the bound is missed if every word reaching it
/// passes through a pruned state. Output is deduplicated and ordered
/// lexicographically.
pub fn orbit_bfs<T: IntScalar>(epsilon: &T, bound: &T) -> BTreeSet<Quintuple<T>> {
    let mut seen = BTreeSet::new();
    if !epsilon.is_positive() || epsilon > bound {
        return seen;
    }
    let seed = Quintuple::constant(epsilon.clone());
    seen.insert(seed.clone());
    let mut frontier = vec![seed.to_rational()];
    while let Some(p) = frontier.pop() {
        for l in Letter::ALL {
            let q = p.apply(l);
            let qi = q
                .try_to_integer()
                .expect("orbit states of an integer seed are integral");
            if qi.to_array().iter().all(|x| x <= bound) && seen.insert(qi) {
                frontier.push(q);
            }
        }
    }
    seen
}
