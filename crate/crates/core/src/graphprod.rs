//! Graph products of finite groups, used to check words independently of the
//! reduction.
//!
//! Elements are sequences of syllables `(v, g)` with `g` a non-identity
//! element of `G_v`. Two syllables at adjacent vertices commute. A word is
//! reduced when no two syllables at the same vertex can be brought together by
//! such commutations; reduced words of one element differ only by
//! commutations, so the lexicographically least reduced word is canonical.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use crate::complex::{FlagComplex, VertexSet};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupSpec};
use crate::words::{GenSymbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub vertex: u8,
    pub element: u32,
}

impl Syllable {
    pub fn new(vertex: usize, element: u32) -> Self {
        Syllable {
            vertex: vertex as u8,
            element,
        }
    }
}

/// A word with no identity syllables.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SyllableWord(Vec<Syllable>);

impl SyllableWord {
    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for SyllableWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|s| format!("g{}^{}", s.vertex, s.element))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Element assignment `g_v` per vertex, indexed by `v - 1`.
pub type Assignment = Vec<u32>;

/// The graph product of finite vertex groups over a flag complex.
#[derive(Clone, Debug)]
pub struct GraphProduct<'a> {
    complex: &'a FlagComplex,
    groups: Vec<FiniteGroup>,
}

impl<'a> GraphProduct<'a> {
    /// Oracle models for every vertex; infinite groups get a finite stand-in.
    pub fn new(complex: &'a FlagComplex, spec: &GroupSpec) -> Result<Self> {
        if spec.len() != complex.vertex_count() {
            return Err(Error::InvalidGroup(format!(
                "{} groups for {} vertices",
                spec.len(),
                complex.vertex_count()
            )));
        }
        let groups = spec
            .groups()
            .iter()
            .map(|g| g.oracle_model())
            .collect::<Result<_>>()?;
        Ok(GraphProduct { complex, groups })
    }

    pub fn complex(&self) -> &FlagComplex {
        self.complex
    }

    pub fn group(&self, v: usize) -> &FiniteGroup {
        &self.groups[v - 1]
    }

    fn check(&self, s: Syllable) -> Result<()> {
        let v = s.vertex as usize;
        if v == 0 || v > self.groups.len() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                m: self.groups.len(),
            });
        }
        if s.element >= self.group(v).order() {
            return Err(Error::InvalidGroup(format!(
                "element {} is not in the group at vertex {v}",
                s.element
            )));
        }
        Ok(())
    }

    /// Multiplies a reduced word by one syllable on the right, keeping it reduced.
    fn push_reduced(&self, acc: &mut Vec<Syllable>, s: Syllable) {
        if s.element == 0 {
            return;
        }
        let v = s.vertex as usize;
        let commuting = self.complex.neighbors(v);
        for idx in (0..acc.len()).rev() {
            let u = acc[idx].vertex as usize;
            if u == v {
                let g = self.group(v).mul(acc[idx].element, s.element);
                if g == 0 {
                    acc.remove(idx);
                } else {
                    acc[idx].element = g;
                }
                return;
            }
            if !commuting.contains(u) {
                break;
            }
        }
        acc.push(s);
    }

    /// A reduced word for the product of `w`, without the final sorting.
    pub fn reduce(&self, w: &[Syllable]) -> Result<Vec<Syllable>> {
        let mut acc = Vec::with_capacity(w.len());
        for &s in w {
            self.check(s)?;
            self.push_reduced(&mut acc, s);
        }
        Ok(acc)
    }

    /// The lexicographically least reduced word representing `w`.
    pub fn normal_form(&self, w: &[Syllable]) -> Result<SyllableWord> {
        let reduced = self.reduce(w)?;
        Ok(SyllableWord(self.sort_reduced(&reduced)))
    }

    /// Greedy extraction of the least syllable that can be moved to the front.
    fn sort_reduced(&self, w: &[Syllable]) -> Vec<Syllable> {
        let n = w.len();
        let m = self.groups.len();
        // Each syllable waits on the latest earlier syllable at every
        // non-commuting vertex (including its own).
        let mut last: Vec<Option<usize>> = vec![None; m + 1];
        let mut blockers = vec![0usize; n];
        let mut successors: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (pos, s) in w.iter().enumerate() {
            let v = s.vertex as usize;
            let commuting = self.complex.neighbors(v);
            for (u, prev) in last.iter().enumerate().skip(1) {
                if commuting.contains(u) {
                    continue;
                }
                if let Some(p) = *prev {
                    successors[p].push(pos);
                    blockers[pos] += 1;
                }
            }
            last[v] = Some(pos);
        }
        let mut ready: BinaryHeap<Reverse<(Syllable, usize)>> = (0..n)
            .filter(|&p| blockers[p] == 0)
            .map(|p| Reverse((w[p], p)))
            .collect();
        let mut out = Vec::with_capacity(n);
        while let Some(Reverse((s, p))) = ready.pop() {
            out.push(s);
            for &q in &successors[p] {
                blockers[q] -= 1;
                if blockers[q] == 0 {
                    ready.push(Reverse((w[q], q)));
                }
            }
        }
        out
    }

    pub fn is_identity(&self, w: &[Syllable]) -> Result<bool> {
        Ok(self.reduce(w)?.is_empty())
    }

    pub fn inverse(&self, w: &[Syllable]) -> Vec<Syllable> {
        w.iter()
            .rev()
            .map(|s| Syllable {
                vertex: s.vertex,
                element: self.group(s.vertex as usize).inv(s.element),
            })
            .collect()
    }

    /// `L_g(i, J) = (prod_{j in J} g_j) g_i^{-1} (prod_{j in J \ i} g_j)^{-1}`,
    /// products ascending.
    pub fn generator_word(&self, i: usize, set: VertexSet, g: &[u32]) -> Result<Vec<Syllable>> {
        if !set.contains(i) {
            return Err(Error::NotInSet { vertex: i, set });
        }
        let mut out = Vec::with_capacity(2 * set.len());
        for j in set {
            if g[j - 1] == 0 {
                return Err(Error::InvalidGroup(format!("g_{j} is the identity")));
            }
            out.push(Syllable::new(j, g[j - 1]));
        }
        out.push(Syllable::new(i, self.group(i).inv(g[i - 1])));
        for j in set.without(i).iter().collect::<Vec<_>>().into_iter().rev() {
            out.push(Syllable::new(j, self.group(j).inv(g[j - 1])));
        }
        Ok(out)
    }

    /// Membership in the kernel of the projection to the direct product.
    pub fn check_cartesian(&self, w: &[Syllable]) -> bool {
        let mut totals = vec![0u32; self.groups.len()];
        for s in w {
            let v = s.vertex as usize;
            totals[v - 1] = self.group(v).mul(totals[v - 1], s.element);
        }
        totals.iter().all(|&t| t == 0)
    }

    /// Substitutes `L_g(i', J')` for each letter and multiplies out (reduced, unsorted).
    pub fn evaluate(&self, word: &Word<GenSymbol>, g: &[u32]) -> Result<Vec<Syllable>> {
        let mut acc = Vec::new();
        for l in word.letters() {
            let sym = l.symbol;
            let mut piece = self.generator_word(sym.vertex(), sym.set(), g)?;
            if l.inverse {
                piece = self.inverse(&piece);
            }
            for s in piece {
                self.push_reduced(&mut acc, s);
            }
        }
        Ok(acc)
    }

    /// True iff the instantiated relation is the identity of the graph product.
    pub fn verify_relation(&self, relation: &Word<GenSymbol>, g: &[u32]) -> Result<bool> {
        Ok(self.evaluate(relation, g)?.is_empty())
    }

    /// Every `g` in `prod_{j in J} G_j*`, as full-length assignments (zeros off `J`).
    pub fn assignments(&self, set: VertexSet) -> Assignments<'_> {
        let members: Vec<usize> = set.iter().collect();
        let mut current = vec![0u32; self.groups.len()];
        for &v in &members {
            current[v - 1] = 1;
        }
        let done = members.iter().any(|&v| self.group(v).order() < 2);
        Assignments {
            product: self,
            members,
            current,
            done,
        }
    }
}

pub struct Assignments<'p> {
    product: &'p GraphProduct<'p>,
    members: Vec<usize>,
    current: Vec<u32>,
    done: bool,
}

impl Iterator for Assignments<'_> {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // Odometer over the members, last vertex fastest.
        self.done = true;
        for &v in self.members.iter().rev() {
            let order = self.product.group(v).order();
            if self.current[v - 1] + 1 < order {
                self.current[v - 1] += 1;
                self.done = false;
                break;
            }
            self.current[v - 1] = 1;
        }
        Some(out)
    }
}
