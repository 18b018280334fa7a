//! Vertex groups: orders for counting and finite models for the oracle.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::complex::VertexSet;
use crate::count::Count;
use crate::error::{Error, Result};

/// A finite group given by its multiplication table; element 0 is the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct TableGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
}

impl TableGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let order = rows.len();
        if order < 2 {
            return Err(Error::InvalidGroup(format!("order must be at least 2, got {order}")));
        }
        let mut table = Vec::with_capacity(order * order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!(
                    "row {a} has {} entries, expected {order}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x as usize >= order) {
                return Err(Error::InvalidGroup(format!("entry {bad} out of range in row {a}")));
            }
            table.extend_from_slice(row);
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == 0 && at(b, a) == 0) {
                Some(b) => inverses.push(b as u32),
                None => return Err(Error::InvalidGroup(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(TableGroup {
            order,
            table,
            inverses,
        })
    }

    /// Parses `order k` followed by `k` rows of `k` indices.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (n, header) = lines.next().ok_or_else(|| Error::parse(1, "empty table file"))?;
        let order: usize = header
            .strip_prefix("order")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::parse(n, "expected `order k`"))?;
        let mut rows = Vec::with_capacity(order);
        for (n, line) in lines {
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| Error::parse(n, format!("bad entry `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != order {
            return Err(Error::parse(n, format!("expected {order} rows, found {}", rows.len())));
        }
        Self::new(rows)
    }

    /// The symmetric group on three letters.
    pub fn s3() -> Self {
        // Elements as permutations of (0,1,2): id, (01), (02), (12), (012), (021).
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap() as u32;
        let rows = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        Self::new(rows).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }
}

impl fmt::Debug for TableGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TableGroup(order {})", self.order)
    }
}

/// A finite group the oracle can multiply in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteGroup {
    /// `Z/k` with elements `0..k` under addition.
    Cyclic(u32),
    Table(Arc<TableGroup>),
}

impl FiniteGroup {
    pub fn order(&self) -> u32 {
        match self {
            FiniteGroup::Cyclic(k) => *k,
            FiniteGroup::Table(t) => t.order() as u32,
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self {
            FiniteGroup::Cyclic(k) => ((a as u64 + b as u64) % *k as u64) as u32,
            FiniteGroup::Table(t) => t.mul(a, b),
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        match self {
            FiniteGroup::Cyclic(k) => (k - a) % k,
            FiniteGroup::Table(t) => t.inv(a),
        }
    }

    /// Non-identity elements `1..order`.
    pub fn nontrivial(&self) -> impl Iterator<Item = u32> {
        1..self.order()
    }
}

/// The group sitting at one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexGroup {
    Cyclic(u64),
    Table(Arc<TableGroup>),
    Infinite,
}

impl VertexGroup {
    /// `|G \ {1}|`.
    pub fn nontrivial_count(&self) -> Count {
        match self {
            VertexGroup::Cyclic(k) => Count::from(k - 1),
            VertexGroup::Table(t) => Count::from(t.order() - 1),
            VertexGroup::Infinite => Count::Infinite,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, VertexGroup::Infinite)
    }

    /// The model used by the oracle. Infinite groups are replaced by `Z/3`;
    /// the reduction never looks at the group structure, so any nontrivial
    /// stand-in exercises the same words.
    pub fn oracle_model(&self) -> Result<FiniteGroup> {
        match self {
            VertexGroup::Cyclic(k) => u32::try_from(*k)
                .map(FiniteGroup::Cyclic)
                .map_err(|_| Error::Unsupported(format!("cyclic order {k} is too large for the oracle"))),
            VertexGroup::Table(t) => Ok(FiniteGroup::Table(t.clone())),
            VertexGroup::Infinite => Ok(FiniteGroup::Cyclic(3)),
        }
    }
}

impl fmt::Display for VertexGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexGroup::Cyclic(k) => write!(f, "{k}"),
            VertexGroup::Table(t) => write!(f, "table({})", t.order()),
            VertexGroup::Infinite => f.write_str("inf"),
        }
    }
}

/// One group per vertex of `[m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    groups: Vec<VertexGroup>,
}

impl GroupSpec {
    pub fn new(groups: Vec<VertexGroup>) -> Self {
        GroupSpec { groups }
    }

    /// `Z/order` at every vertex.
    pub fn uniform(m: usize, order: u64) -> Self {
        GroupSpec {
            groups: vec![VertexGroup::Cyclic(order); m],
        }
    }

    pub fn from_orders(orders: &[u64]) -> Self {
        GroupSpec {
            groups: orders.iter().map(|&k| VertexGroup::Cyclic(k)).collect(),
        }
    }

    /// Parses `2,3,inf,table:path` (one entry per vertex, or a single entry for all).
    /// Table files are read with `read`.
    pub fn parse<F>(text: &str, m: usize, mut read: F) -> Result<Self>
    where
        F: FnMut(&Path) -> std::io::Result<String>,
    {
        let mut groups = Vec::new();
        for (k, token) in text.split(',').map(str::trim).enumerate() {
            let group = if let Some(path) = token.strip_prefix("table:") {
                let body = read(Path::new(path))
                    .map_err(|e| Error::InvalidGroup(format!("{path}: {e}")))?;
                VertexGroup::Table(Arc::new(TableGroup::parse(&body)?))
            } else if matches!(token, "inf" | "INF" | "Z" | "∞") {
                VertexGroup::Infinite
            } else {
                match token.parse::<u64>() {
                    Ok(order) if order >= 2 => VertexGroup::Cyclic(order),
                    _ => {
                        return Err(Error::InvalidGroup(format!(
                            "entry {} `{token}`: expected an order >= 2, `inf` or `table:PATH`",
                            k + 1
                        )))
                    }
                }
            };
            groups.push(group);
        }
        match groups.len() {
            1 => Ok(GroupSpec {
                groups: vec![groups.pop().unwrap(); m],
            }),
            n if n == m => Ok(GroupSpec { groups }),
            n => Err(Error::InvalidGroup(format!("{n} groups given for {m} vertices"))),
        }
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn group(&self, v: usize) -> &VertexGroup {
        &self.groups[v - 1]
    }

    pub fn groups(&self) -> &[VertexGroup] {
        &self.groups
    }

    /// `n_J`, the product of `|G_j \ {1}|` over `J` (1 for the empty set).
    pub fn multiplicity(&self, set: VertexSet) -> Count {
        set.iter()
            .map(|v| self.group(v).nontrivial_count())
            .fold(Count::one(), |a, b| a * b)
    }

    pub fn all_finite(&self) -> bool {
        self.groups.iter().all(VertexGroup::is_finite)
    }

    /// True when every vertex carries `Z/2`.
    pub fn is_coxeter(&self) -> bool {
        self.groups.iter().all(|g| *g == VertexGroup::Cyclic(2))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_files(_: &Path) -> std::io::Result<String> {
        Err(std::io::Error::new(std::io::ErrorKind::NotFound, "no files"))
    }

    #[test]
    fn multiplicities() {
        let spec = GroupSpec::from_orders(&[2, 3, 2, 3]);
        assert_eq!(spec.multiplicity(VertexSet::full(4)), Count::from(4u64));
        assert_eq!(spec.multiplicity(VertexSet::EMPTY), Count::one());
        let spec = GroupSpec::parse("2,inf,2", 3, no_files).unwrap();
        assert_eq!(spec.multiplicity(VertexSet::from_vertices([1, 3])), Count::one());
        assert_eq!(spec.multiplicity(VertexSet::from_vertices([1, 2])), Count::Infinite);
        assert!(!spec.all_finite());
    }

    #[test]
    fn parse_spec() {
        assert_eq!(GroupSpec::parse("3", 4, no_files).unwrap(), GroupSpec::uniform(4, 3));
        assert!(GroupSpec::parse("2,1", 2, no_files).is_err());
        assert!(GroupSpec::parse("2,2", 3, no_files).is_err());
        assert!(GroupSpec::parse("2,x", 2, no_files).is_err());
        assert!(GroupSpec::parse("table:missing", 2, no_files).is_err());
        let spec = GroupSpec::parse("table:s3.txt,2", 2, |_| Ok(s3_text())).unwrap();
        assert_eq!(spec.multiplicity(VertexSet::full(2)), Count::from(5u64));
        assert!(matches!(spec.group(1), VertexGroup::Table(_)));
    }

    fn s3_text() -> String {
        let s3 = TableGroup::s3();
        std::iter::once("order 6".to_string())
            .chain((0..6).map(|a| {
                (0..6).map(|b| s3.mul(a, b).to_string()).collect::<Vec<_>>().join(" ")
            }))
            .collect::<Vec<_>>()
            .join("\n")
    }

    #[test]
    fn s3_table() {
        let s3 = TableGroup::s3();
        assert_eq!(s3.order(), 6);
        // Non-abelian.
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
        let text = s3_text();
        assert_eq!(TableGroup::parse(&text).unwrap(), s3);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(TableGroup::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(TableGroup::new(vec![vec![1, 0], vec![0, 1]]).is_err());
        assert!(TableGroup::parse("order 2\n0 1\n").is_err());
        // Latin square with identity that is not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(TableGroup::new(loop5).is_err());
    }

    #[test]
    fn cyclic_model() {
        let z5 = FiniteGroup::Cyclic(5);
        assert_eq!(z5.mul(3, 4), 2);
        assert_eq!(z5.inv(2), 3);
        assert_eq!(z5.inv(0), 0);
        assert_eq!(VertexGroup::Infinite.oracle_model().unwrap(), FiniteGroup::Cyclic(3));
    }
}
