//! Words in free groups.
//!
//! [`Word`] is generic over the symbol type: relation templates use
//! [`GenSymbol`] directly, while the bulk reducer works over dense `u32` ids.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::VertexSet;

/// The abstract generator `L(i, J)` with `i` in `J`.
///
/// Ordered by `(|J|, J as a number, i)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenSymbol {
    vertex: u8,
    set: VertexSet,
}

impl GenSymbol {
    pub fn new(vertex: usize, set: VertexSet) -> Self {
        assert!(set.contains(vertex), "L({vertex}, {set}) needs {vertex} in {set}");
        GenSymbol {
            vertex: vertex as u8,
            set,
        }
    }

    pub fn vertex(self) -> usize {
        self.vertex as usize
    }

    pub fn set(self) -> VertexSet {
        self.set
    }

    /// `L(5,458)` style for `m <= 9`, `L(5,{4,5,8})` style otherwise.
    pub fn render(self, m: usize) -> String {
        if m <= 9 {
            format!("L({},{})", self.vertex, self.set.compact(m))
        } else {
            format!("L({},{})", self.vertex, self.set)
        }
    }
}

impl Ord for GenSymbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.set.len(), self.set, self.vertex).cmp(&(other.set.len(), other.set, other.vertex))
    }
}

impl PartialOrd for GenSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.vertex, self.set)
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter<S> {
    pub symbol: S,
    pub inverse: bool,
}

impl<S: Copy + Eq> Letter<S> {
    pub fn pos(symbol: S) -> Self {
        Letter {
            symbol,
            inverse: false,
        }
    }

    pub fn neg(symbol: S) -> Self {
        Letter {
            symbol,
            inverse: true,
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            symbol: self.symbol,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn cancels(self, other: Self) -> bool {
        self.symbol == other.symbol && self.inverse != other.inverse
    }
}

/// A sequence of letters. Values built through [`Word::push`] and friends
/// stay freely reduced; [`Word::from_letters`] keeps the sequence verbatim.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word<S> {
    letters: Vec<Letter<S>>,
}

impl<S> Default for Word<S> {
    fn default() -> Self {
        Word { letters: Vec::new() }
    }
}

impl<S: Copy + Eq> Word<S> {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Word {
            letters: Vec::with_capacity(n),
        }
    }

    /// Keeps the letters as given, without cancelling.
    pub fn from_letters(letters: Vec<Letter<S>>) -> Self {
        Word { letters }
    }

    pub fn letter(letter: Letter<S>) -> Self {
        Word {
            letters: vec![letter],
        }
    }

    pub fn letters(&self) -> &[Letter<S>] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter<S>> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends `letter`, cancelling against the last letter when possible.
    pub fn push(&mut self, letter: Letter<S>) {
        match self.letters.last() {
            Some(&last) if last.cancels(letter) => {
                self.letters.pop();
            }
            _ => self.letters.push(letter),
        }
    }

    /// Appends `other` with free cancellation at the seam.
    pub fn append(&mut self, other: &Word<S>) {
        self.letters.reserve(other.len());
        for &l in &other.letters {
            self.push(l);
        }
    }

    /// Appends the inverse of `other` with free cancellation.
    pub fn append_inverse(&mut self, other: &Word<S>) {
        for &l in other.letters.iter().rev() {
            self.push(l.inv());
        }
    }

    pub fn inverse(&self) -> Word<S> {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Concatenation followed by free reduction.
    pub fn concat(&self, other: &Word<S>) -> Word<S> {
        let mut out = self.free_reduce();
        for &l in &other.letters {
            out.push(l);
        }
        out
    }

    /// The unique freely reduced word equal to `self`.
    pub fn free_reduce(&self) -> Word<S> {
        let mut out = Word::with_capacity(self.len());
        for &l in &self.letters {
            out.push(l);
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// Replaces every symbol through `f`; no reduction.
    pub fn map<T: Copy + Eq>(&self, mut f: impl FnMut(S) -> T) -> Word<T> {
        Word {
            letters: self
                .letters
                .iter()
                .map(|l| Letter {
                    symbol: f(l.symbol),
                    inverse: l.inverse,
                })
                .collect(),
        }
    }
}

impl<S: Copy + Ord> Word<S> {
    /// Signed letter count per symbol; symbols with a zero sum are kept.
    pub fn exponent_sums(&self) -> BTreeMap<S, i64> {
        let mut sums = BTreeMap::new();
        for l in &self.letters {
            *sums.entry(l.symbol).or_insert(0) += l.sign();
        }
        sums
    }

    /// True iff the word lies in the commutator subgroup of the free group.
    pub fn is_balanced(&self) -> bool {
        self.exponent_sums().values().all(|&s| s == 0)
    }
}

impl<S: fmt::Debug> fmt::Debug for Word<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("ε");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{:?}", l.symbol)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}
