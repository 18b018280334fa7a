use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::count::Count;
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^r + Z/d_1 + ... + Z/d_k` with `d_1 | ... | d_k`, `d_i >= 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub invariant_factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        AbelianGroup {
            free_rank: 0,
            invariant_factors: vec![order],
        }
    }

    /// `Z^generators / im(A)` given the Smith invariants of the relation matrix `A`.
    pub fn cokernel(generators: usize, snf: &[BigInt]) -> Result<Self> {
        let invariant_factors = snf
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_u64().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(AbelianGroup {
            free_rank: generators - snf.len(),
            invariant_factors,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Minimal number of generators.
    pub fn gen_count(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// Prime-power cyclic summands, `p^e -> count`.
    pub fn elementary_divisors(&self) -> BTreeMap<(u64, u32), usize> {
        let mut out = BTreeMap::new();
        for &d in &self.invariant_factors {
            for (p, e) in factorize(d) {
                *out.entry((p, e)).or_insert(0) += 1;
            }
        }
        out
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A direct sum of abelian groups with (possibly infinite) multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupSum {
    free_rank: Option<Count>,
    /// `(p, e) -> number of Z/p^e summands`.
    torsion: BTreeMap<(u64, u32), Count>,
}

impl GroupSum {
    pub fn new() -> Self {
        GroupSum::default()
    }

    pub fn add(&mut self, group: &AbelianGroup, multiplicity: &Count) {
        if group.free_rank > 0 {
            let add = Count::from(group.free_rank) * multiplicity.clone();
            let total = self.free_rank.take().unwrap_or_else(Count::zero) + add;
            self.free_rank = Some(total);
        }
        for ((p, e), n) in group.elementary_divisors() {
            let add = Count::from(n) * multiplicity.clone();
            if add.is_zero() {
                continue;
            }
            let slot = self.torsion.entry((p, e)).or_insert_with(Count::zero);
            *slot = slot.clone() + add;
        }
    }

    pub fn free_rank(&self) -> Count {
        self.free_rank.clone().unwrap_or_else(Count::zero)
    }

    /// Number of `Z/p^e` summands summed over `e`, per prime.
    pub fn p_ranks(&self) -> BTreeMap<u64, Count> {
        let mut out: BTreeMap<u64, Count> = BTreeMap::new();
        for (&(p, _), n) in &self.torsion {
            let slot = out.entry(p).or_insert_with(Count::zero);
            *slot = slot.clone() + n.clone();
        }
        out
    }

    /// Minimal generator count: free rank plus the largest p-rank.
    pub fn rank(&self) -> Count {
        let torsion = self.p_ranks().into_values().max().unwrap_or_else(Count::zero);
        self.free_rank() + torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank().is_zero() && self.torsion.is_empty()
    }

    /// The sum as an explicit group, when every multiplicity is finite and small.
    pub fn to_group(&self) -> Option<AbelianGroup> {
        let free_rank = usize::try_from(self.free_rank().to_u64()?).ok()?;
        // Invariant factors: the k-th largest factor is the product over primes of
        // their k-th largest prime power.
        let mut per_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for (&(p, e), n) in &self.torsion {
            let n = usize::try_from(n.to_u64()?).ok()?;
            per_prime.entry(p).or_default().extend(std::iter::repeat_n(e, n));
        }
        let k = per_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; k];
        for (p, mut exps) in per_prime {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, e) in exps.into_iter().enumerate() {
                factors[k - 1 - slot] = factors[k - 1 - slot].checked_mul(p.checked_pow(e)?)?;
            }
        }
        Some(AbelianGroup {
            free_rank,
            invariant_factors: factors,
        })
    }
}

impl fmt::Display for GroupSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let free = self.free_rank();
        if !free.is_zero() {
            parts.push(if free == Count::one() {
                "Z".to_string()
            } else {
                format!("Z^{free}")
            });
        }
        for (&(p, e), n) in &self.torsion {
            let q = if e == 1 { format!("Z/{p}") } else { format!("Z/{p}^{e}") };
            parts.push(if *n == Count::one() {
                q
            } else {
                format!("({q})^{n}")
            });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Rank (minimal generator count) of `sum_k A_k^{n_k}`, merging coprime torsion.
pub fn direct_sum_rank<'a, I>(summands: I) -> Count
where
    I: IntoIterator<Item = (&'a AbelianGroup, &'a Count)>,
{
    let mut sum = GroupSum::new();
    for (group, n) in summands {
        sum.add(group, n);
    }
    sum.rank()
}
