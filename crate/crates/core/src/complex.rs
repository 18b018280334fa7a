//! Flag complexes given by their 1-skeleton.
//!
//! A [`FlagComplex`] stores only the graph; its faces are the cliques. Full
//! subcomplexes are addressed by a [`VertexSet`] and every query below works on
//! the graph induced on that set.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count (subsets are 64-bit masks, bit `v - 1` for vertex `v`).
pub const MAX_VERTICES: usize = 63;

/// A subset of `[m]` as a bitmask. Ordering is numeric on the mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{1, ..., m}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_VERTICES);
        VertexSet(if m == 0 { 0 } else { u64::MAX >> (64 - m) })
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(1 << (v - 1))
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        vertices
            .into_iter()
            .fold(VertexSet::EMPTY, |s, v| s.with(v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | Self::singleton(v).0)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !Self::singleton(v).0)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> Vertices {
        Vertices(self.0)
    }

    /// Digits when every member is a single digit (`458`), otherwise a comma list.
    pub fn compact(self, m: usize) -> String {
        if m <= 9 {
            self.iter().map(|v| char::from(b'0' + v as u8)).collect()
        } else {
            self.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Vertices;

    fn into_iter(self) -> Vertices {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_vertices(iter)
    }
}

#[derive(Clone, Debug)]
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

/// The clique complex of a simple graph on `[m]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FlagComplex {
    m: usize,
    adjacency: Vec<VertexSet>,
}

impl FlagComplex {
    /// Builds the complex from an edge list. Duplicate edges are ignored.
    pub fn new<I>(m: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if m > MAX_VERTICES {
            return Err(Error::TooManyVertices(m));
        }
        let mut adjacency = vec![VertexSet::EMPTY; m];
        for (i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > m {
                    return Err(Error::VertexOutOfRange { vertex: v, m });
                }
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            adjacency[i - 1] = adjacency[i - 1].with(j);
            adjacency[j - 1] = adjacency[j - 1].with(i);
        }
        Ok(FlagComplex { m, adjacency })
    }

    /// The `m`-cycle with edges `{1,2}, {2,3}, ..., {m,1}`.
    pub fn cycle(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidCycle(format!("a cycle graph needs at least 3 vertices, got {m}")));
        }
        Self::new(m, (1..=m).map(|i| (i, i % m + 1)))
    }

    pub fn complete(m: usize) -> Result<Self> {
        Self::new(m, (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j))))
    }

    pub fn edgeless(m: usize) -> Result<Self> {
        Self::new(m, std::iter::empty())
    }

    /// The graph whose edges are the pairs selected by `mask`, pairs taken in
    /// the order `(1,2), (1,3), ..., (1,m), (2,3), ...`.
    pub fn from_pair_mask(m: usize, mask: u64) -> Result<Self> {
        let pairs = (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j)));
        Self::new(
            m,
            pairs
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, e)| e),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.m)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adjacency[v - 1]
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        i != j && (1..=self.m).contains(&i) && self.adjacency[i - 1].contains(j)
    }

    /// All edges `(i, j)` with `i < j`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.induced_edges(self.vertices())
    }

    /// The graph induced on `set`, relabelled to keep vertex names (other vertices become isolated).
    pub fn restrict(&self, set: VertexSet) -> FlagComplex {
        let adjacency = (1..=self.m)
            .map(|v| {
                if set.contains(v) {
                    self.adjacency[v - 1].intersection(set)
                } else {
                    VertexSet::EMPTY
                }
            })
            .collect();
        FlagComplex { m: self.m, adjacency }
    }

    fn check_subset(&self, set: VertexSet) -> Result<()> {
        match set.difference(self.vertices()).min() {
            Some(v) => Err(Error::VertexOutOfRange { vertex: v, m: self.m }),
            None => Ok(()),
        }
    }

    /// Edges of the induced graph on `set`, `(i, j)` with `i < j`, ascending.
    pub fn induced_edges(&self, set: VertexSet) -> Vec<(usize, usize)> {
        set.iter()
            .flat_map(|i| {
                let above = VertexSet::from_bits(!((1u64 << i) - 1));
                self.neighbors(i)
                    .intersection(set)
                    .intersection(above)
                    .iter()
                    .map(move |j| (i, j))
            })
            .collect()
    }

    /// The path component of `v` in the graph induced on `set`.
    pub fn component_of(&self, set: VertexSet, v: usize) -> VertexSet {
        let mut component = VertexSet::singleton(v);
        let mut frontier = component;
        while !frontier.is_empty() {
            let reached = frontier
                .iter()
                .fold(VertexSet::EMPTY, |acc, u| acc.union(self.neighbors(u)));
            frontier = reached.intersection(set).difference(component);
            component = component.union(frontier);
        }
        component
    }

    /// Path components of the full subcomplex on `set`, ordered by least element.
    pub fn induced_components(&self, set: VertexSet) -> Vec<VertexSet> {
        let mut rest = set;
        let mut out = Vec::new();
        while let Some(v) = rest.min() {
            let c = self.component_of(set, v);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    /// Reduced zeroth Betti number (0 for the empty set).
    pub fn reduced_b0(&self, set: VertexSet) -> usize {
        self.induced_components(set).len().saturating_sub(1)
    }

    /// Least vertex of every component not containing `max(set)`.
    pub fn theta(&self, set: VertexSet) -> Result<VertexSet> {
        let top = set.max().ok_or(Error::EmptySet)?;
        Ok(self
            .induced_components(set)
            .into_iter()
            .filter(|c| !c.contains(top))
            .filter_map(|c| c.min())
            .collect())
    }

    /// The lexicographically least among the shortest paths `from -> to` in the
    /// graph induced on `set`.
    pub fn lex_path(&self, set: VertexSet, from: usize, to: usize) -> Result<Vec<usize>> {
        for v in [from, to] {
            if !set.contains(v) {
                return Err(Error::NotInSet { vertex: v, set });
            }
        }
        // Distance layers around `to`; then walk greedily from `from`.
        let mut layers = vec![VertexSet::singleton(to)];
        let mut seen = layers[0];
        while !seen.contains(from) {
            let last = *layers.last().unwrap();
            let next = last
                .iter()
                .fold(VertexSet::EMPTY, |acc, u| acc.union(self.neighbors(u)))
                .intersection(set)
                .difference(seen);
            if next.is_empty() {
                return Err(Error::Disconnected { from, to, set });
            }
            seen = seen.union(next);
            layers.push(next);
        }
        let mut path = Vec::with_capacity(layers.len());
        path.push(from);
        let mut current = from;
        for layer in layers.iter().rev().skip(1) {
            current = self
                .neighbors(current)
                .intersection(*layer)
                .min()
                .expect("distance layers are connected");
            path.push(current);
        }
        Ok(path)
    }

    fn forest(&self, set: VertexSet) -> Forest {
        let mut parent = [0u8; MAX_VERTICES + 1];
        let mut depth = [0u8; MAX_VERTICES + 1];
        let mut edges = Vec::new();
        let mut seen = VertexSet::EMPTY;
        let mut queue = std::collections::VecDeque::new();
        for root in set {
            if seen.contains(root) {
                continue;
            }
            seen = seen.with(root);
            parent[root] = root as u8;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u).intersection(set).difference(seen) {
                    seen = seen.with(w);
                    parent[w] = u as u8;
                    depth[w] = depth[u] + 1;
                    edges.push((u.min(w), u.max(w)));
                    queue.push_back(w);
                }
            }
        }
        edges.sort_unstable();
        Forest { parent, depth, edges }
    }

    /// Ascending-order breadth-first spanning forest of the induced graph.
    pub fn spanning_forest(&self, set: VertexSet) -> Vec<(usize, usize)> {
        self.forest(set).edges
    }

    /// One normalized cycle per edge outside the spanning forest, sorted.
    pub fn fundamental_cycles(&self, set: VertexSet) -> Vec<Cycle> {
        let forest = self.forest(set);
        let mut cycles: Vec<Cycle> = self
            .induced_edges(set)
            .into_iter()
            .filter(|e| forest.edges.binary_search(e).is_err())
            .map(|(u, v)| {
                let mut vertices = forest.tree_path(u, v);
                vertices.push(u);
                Cycle { vertices }.normalized()
            })
            .collect();
        cycles.sort();
        cycles
    }

    /// Drops fundamental cycles whose closing edge is forced by a triangle of
    /// the full subcomplex. The survivors still generate its fundamental groupoid.
    pub fn prune_cycles(&self, set: VertexSet, cycles: &[Cycle]) -> Vec<Cycle> {
        let forest = self.forest(set);
        let mut known: std::collections::HashSet<(usize, usize)> =
            forest.edges.iter().copied().collect();
        let triangles = self.triangles(set);
        loop {
            let mut changed = false;
            for t in &triangles {
                let v: Vec<usize> = t.iter().collect();
                let sides = [(v[0], v[1]), (v[0], v[2]), (v[1], v[2])];
                let missing: Vec<_> = sides.iter().filter(|e| !known.contains(e)).collect();
                if missing.len() == 1 {
                    known.insert(*missing[0]);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        cycles
            .iter()
            .filter(|c| c.edges().any(|e| !known.contains(&e)))
            .cloned()
            .collect()
    }

    /// All 3-cliques of the induced graph in lexicographic order.
    pub fn triangles(&self, set: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        for (a, b) in self.induced_edges(set) {
            let above = VertexSet::from_bits(!((1u64 << b) - 1));
            for c in self
                .neighbors(a)
                .intersection(self.neighbors(b))
                .intersection(set)
                .intersection(above)
            {
                out.push(VertexSet::from_vertices([a, b, c]));
            }
        }
        out
    }

    pub(crate) fn check_set(&self, set: VertexSet) -> Result<()> {
        self.check_subset(set)
    }
}

impl fmt::Debug for FlagComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FlagComplex")
            .field("m", &self.m)
            .field("edges", &self.edges())
            .finish()
    }
}

struct Forest {
    parent: [u8; MAX_VERTICES + 1],
    depth: [u8; MAX_VERTICES + 1],
    edges: Vec<(usize, usize)>,
}

impl Forest {
    /// Tree path `u -> ... -> v` through the lowest common ancestor.
    fn tree_path(&self, u: usize, v: usize) -> Vec<usize> {
        let (mut a, mut b) = (u, v);
        let mut up = vec![a];
        let mut down = vec![b];
        while a != b {
            if self.depth[a] >= self.depth[b] {
                a = self.parent[a] as usize;
                up.push(a);
            } else {
                b = self.parent[b] as usize;
                down.push(b);
            }
        }
        down.pop();
        up.extend(down.into_iter().rev());
        up
    }
}

/// A closed edge path `(i_1, ..., i_k, i_1)` with `k >= 3`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 4 {
            return Err(Error::InvalidCycle(format!(
                "need at least 3 edges, got {}",
                vertices.len().saturating_sub(1)
            )));
        }
        if vertices.first() != vertices.last() {
            return Err(Error::InvalidCycle("first and last vertex differ".into()));
        }
        Ok(Cycle { vertices })
    }

    /// Checks that every step is an edge of the full subcomplex on `set`.
    pub fn check_in(&self, complex: &FlagComplex, set: VertexSet) -> Result<()> {
        for w in self.vertices.windows(2) {
            if !set.contains(w[0]) || !set.contains(w[1]) || !complex.is_edge(w[0], w[1]) {
                return Err(Error::InvalidCycle(format!(
                    "{{{},{}}} is not an edge of the full subcomplex on {set}",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }

    /// Vertex sequence including the closing repeat.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Edges as ordered pairs `(min, max)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
    }

    /// Rotation and orientation starting at the least vertex and stepping to
    /// the lesser of its neighbours (lexicographically least representative).
    pub fn normalized(&self) -> Cycle {
        let body = &self.vertices[..self.vertices.len() - 1];
        let k = body.len();
        let mut best: Option<Vec<usize>> = None;
        for start in 0..k {
            for dir in [1isize, -1] {
                let seq: Vec<usize> = (0..=k)
                    .map(|t| body[(start as isize + dir * t as isize).rem_euclid(k as isize) as usize])
                    .collect();
                if best.as_ref().is_none_or(|b| seq < *b) {
                    best = Some(seq);
                }
            }
        }
        Cycle {
            vertices: best.unwrap(),
        }
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
