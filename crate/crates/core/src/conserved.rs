//! Conserved quantities `C0, C1, C2`, the reduction `φ`, and the tilde
//! group acting on triples.
//!
//! `φ(P) = (C0(P), C1(P), C2(P))` collapses the quintuple dynamics onto
//! triples, where the generators act by
//!
//! ```text
//! α̃(x,y,z) = (x, z, xz−y)    α̃⁻¹(x,y,z) = (x, xy−z, y)
//! β̃(x,y,z) = (y, z, x)       β̃⁻¹(x,y,z) = (z, x, y)
//! ```
//!
//! and the invariant becomes `T̃(x,y,z) = xyz − x² − y² − z² − 7`, with
//! `T = T̃ ∘ φ` exactly. Generator for generator, `φ∘α = α̃∘φ` and
//! `φ∘β = β̃∘φ` (same for inverses), so words commute with `φ` letterwise.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::quintuple::{letters, Letter, Quintuple, Word, WordError};
use crate::scalar::{s, FieldScalar, IntScalar, Scalar};

/// A triple `(x, y, z)`. Exactness is the only structural requirement;
/// positivity is asserted by the solvers that need it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S> Triple<S> {
    pub fn new(x: S, y: S, z: S) -> Triple<S> {
        Triple { x, y, z }
    }

    pub fn to_array(&self) -> [S; 3]
    where
        S: Clone,
    {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn from_array(v: [S; 3]) -> Triple<S> {
        let [x, y, z] = v;
        Triple { x, y, z }
    }
}

impl<S: Scalar> Triple<S> {
    pub fn is_positive(&self) -> bool {
        self.to_array().iter().all(|v| v.is_positive())
    }

    /// `T̃(x,y,z) = xyz − x² − y² − z² − 7`.
    pub fn tilde_t(&self) -> S {
        let Triple { x, y, z } = self.clone();
        let sq = |v: &S| v.clone() * v.clone();
        x.clone() * y.clone() * z.clone() - sq(&x) - sq(&y) - sq(&z) - s(7)
    }

    /// Apply one tilde generator (no division involved, so any scalar works).
    pub fn apply(&self, l: Letter) -> Triple<S> {
        let Triple { x, y, z } = self.clone();
        match l {
            Letter::Alpha => {
                let w = x.clone() * z.clone() - y;
                Triple::new(x, z, w)
            }
            Letter::AlphaInv => {
                let w = x.clone() * y.clone() - z;
                Triple::new(x, w, y)
            }
            Letter::Beta => Triple::new(y, z, x),
            Letter::BetaInv => Triple::new(z, x, y),
        }
    }

    /// Apply a tilde word, leftmost letter first.
    pub fn apply_word(&self, w: &TildeWord) -> Triple<S> {
        w.0.iter().fold(self.clone(), |t, &l| t.apply(l))
    }

    /// Coordinates in ascending order.
    pub fn sorted(&self) -> Triple<S>
    where
        S: Ord,
    {
        let mut v = self.to_array();
        v.sort();
        Triple::from_array(v)
    }
}

impl<T: IntScalar> Triple<T> {
    pub fn to_rational(&self) -> Triple<Ratio<T>> {
        Triple::from_array(self.to_array().map(Ratio::from_integer))
    }
}

impl<T: IntScalar> Triple<Ratio<T>> {
    pub fn try_to_integer(&self) -> Option<Triple<T>> {
        let arr = self.to_array();
        if arr.iter().all(|v| v.is_integer()) {
            Some(Triple::from_array(arr.map(|v| v.to_integer())))
        } else {
            None
        }
    }
}

impl<S: fmt::Display> fmt::Display for Triple<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.x, self.y, self.z)
    }
}

/// A word over `{α̃, α̃⁻¹, β̃, β̃⁻¹}`, applied leftmost letter first. Shares
/// the `a`/`A`/`b`/`B` wire encoding with [`Word`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TildeWord(pub Vec<Letter>);

impl TildeWord {
    pub fn empty() -> TildeWord {
        TildeWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> TildeWord {
        TildeWord(letters::inverse(&self.0))
    }

    pub fn free_reduce(&self) -> TildeWord {
        TildeWord(letters::free_reduce(&self.0))
    }
}

impl fmt::Display for TildeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&letters::format(&self.0))
    }
}

impl FromStr for TildeWord {
    type Err = WordError;

    fn from_str(text: &str) -> Result<TildeWord, WordError> {
        Ok(TildeWord(letters::parse(text)?))
    }
}

/// Letterwise correspondence α̃ ↔ α, β̃ ↔ β, order preserved.
pub fn lift_word(w: &TildeWord) -> Word {
    Word(w.0.clone())
}

/// Letterwise correspondence α ↔ α̃, β ↔ β̃, order preserved.
pub fn project_word(w: &Word) -> TildeWord {
    TildeWord(w.0.clone())
}

/// `C0 = (a² + b² + cd)/(ab)`.
pub fn c0<S: FieldScalar>(p: &Quintuple<S>) -> S {
    let Quintuple { a, b, c, d, .. } = p.clone();
    (a.clone() * a.clone() + b.clone() * b.clone() + c * d) / (a * b)
}

/// `C1 = (c²d + a²c + b²d + abe)/(bcd)`.
pub fn c1<S: FieldScalar>(p: &Quintuple<S>) -> S {
    let Quintuple { a, b, c, d, e } = p.clone();
    (c.clone() * c.clone() * d.clone()
        + a.clone() * a.clone() * c.clone()
        + b.clone() * b.clone() * d.clone()
        + a * b.clone() * e)
        / (b * c * d)
}

/// `C2 = (cd² + a²c + b²d + abe)/(acd)`.
pub fn c2<S: FieldScalar>(p: &Quintuple<S>) -> S {
    let Quintuple { a, b, c, d, e } = p.clone();
    (c.clone() * d.clone() * d.clone()
        + a.clone() * a.clone() * c.clone()
        + b.clone() * b.clone() * d.clone()
        + a.clone() * b * e)
        / (a * c * d)
}

/// `φ(P) = (C0(P), C1(P), C2(P))`, defined on all positive quintuples.
pub fn phi<S: FieldScalar>(p: &Quintuple<S>) -> Triple<S> {
    Triple::new(c0(p), c1(p), c2(p))
}
