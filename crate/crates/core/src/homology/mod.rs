//! Integer homology of full subcomplexes in degrees 0 and 1, and the counts
//! built from it: generator counts, relation bounds, deficiency intervals, and
//! the homology of the real moment-angle complex and of the Cartesian subgroup.

mod abelian;
mod snf;

use num_bigint::BigInt;
use rayon::prelude::*;

pub use abelian::{direct_sum_rank, AbelianGroup, GroupSum};
pub use snf::{smith_normal_form, IntegerMatrix};

use crate::complex::{FlagComplex, VertexSet};
use crate::count::Count;
use crate::error::{Error, Result};
use crate::groups::GroupSpec;

/// Subset enumeration over `2^m` sets is refused beyond this many vertices.
pub const MAX_ENUMERATED_VERTICES: usize = 30;

/// `∂1` (vertices x edges) and `∂2` (edges x triangles) of the full subcomplex on `set`.
///
/// Edges run low to high; the triangle `{a<b<c}` maps to `(b,c) - (a,c) + (a,b)`.
pub fn boundary_matrices(complex: &FlagComplex, set: VertexSet) -> (IntegerMatrix, IntegerMatrix) {
    let vertices: Vec<usize> = set.iter().collect();
    let edges = complex.induced_edges(set);
    let triangles = complex.triangles(set);
    let vertex_row = |v: usize| vertices.binary_search(&v).unwrap();
    let edge_row = |e: (usize, usize)| edges.binary_search(&e).unwrap();

    let mut d1 = IntegerMatrix::zeros(vertices.len(), edges.len());
    for (c, &(a, b)) in edges.iter().enumerate() {
        d1.set(vertex_row(a), c, -1);
        d1.set(vertex_row(b), c, 1);
    }
    let mut d2 = IntegerMatrix::zeros(edges.len(), triangles.len());
    for (c, t) in triangles.iter().enumerate() {
        let v: Vec<usize> = t.iter().collect();
        d2.set(edge_row((v[1], v[2])), c, 1);
        d2.set(edge_row((v[0], v[2])), c, -1);
        d2.set(edge_row((v[0], v[1])), c, 1);
    }
    (d1, d2)
}

/// `H̃_dim(K_J; Z)` for `dim` in `{0, 1}`.
pub fn reduced_homology(complex: &FlagComplex, set: VertexSet, dim: usize) -> Result<AbelianGroup> {
    complex.check_set(set)?;
    match dim {
        0 => Ok(AbelianGroup::free(complex.reduced_b0(set))),
        1 => h1(complex, set, complex.induced_components(set).len()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

fn h1(complex: &FlagComplex, set: VertexSet, components: usize) -> Result<AbelianGroup> {
    let edges = complex.induced_edges(set).len();
    // rank ∂1 = |J| - #components, so ker ∂1 has rank E - |J| + C.
    let cycle_rank = edges + components - set.len();
    if complex.triangles(set).is_empty() {
        return Ok(AbelianGroup::free(cycle_rank));
    }
    let (_, d2) = boundary_matrices(complex, set);
    let snf: Vec<BigInt> = smith_normal_form(&d2);
    AbelianGroup::cokernel(cycle_rank, &snf)
}

/// Degree 0 and 1 data of one full subcomplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetHomology {
    pub set: VertexSet,
    pub components: usize,
    pub h0: AbelianGroup,
    pub h1: AbelianGroup,
    /// No 3-cliques: the fundamental groupoid is free on the cycle basis.
    pub triangle_free: bool,
}

pub fn subset_homology(complex: &FlagComplex, set: VertexSet) -> Result<SubsetHomology> {
    complex.check_set(set)?;
    let components = complex.induced_components(set).len();
    Ok(SubsetHomology {
        set,
        components,
        h0: AbelianGroup::free(components.saturating_sub(1)),
        h1: h1(complex, set, components)?,
        triangle_free: complex.triangles(set).is_empty(),
    })
}

pub(crate) fn check_enumerable(complex: &FlagComplex) -> Result<()> {
    if complex.vertex_count() > MAX_ENUMERATED_VERTICES {
        return Err(Error::Unsupported(format!(
            "enumerating all full subcomplexes of a {}-vertex complex is not supported (limit {MAX_ENUMERATED_VERTICES})",
            complex.vertex_count()
        )));
    }
    Ok(())
}

/// Homology of every full subcomplex, ascending by `J` as a number.
pub fn all_subsets(complex: &FlagComplex) -> Result<Vec<SubsetHomology>> {
    check_enumerable(complex)?;
    (0..1u64 << complex.vertex_count())
        .into_par_iter()
        .map(|bits| subset_homology(complex, VertexSet::from_bits(bits)))
        .collect()
}

fn check_report_dim(dim: usize) -> Result<()> {
    match dim {
        1 | 2 => Ok(()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// `H_dim(R_K) = sum_J H̃_{dim-1}(K_J)` for `dim` in `{1, 2}`.
pub fn hochster_report(complex: &FlagComplex, dim: usize) -> Result<GroupSum> {
    check_report_dim(dim)?;
    let mut sum = GroupSum::new();
    for row in all_subsets(complex)? {
        let g = if dim == 1 { &row.h0 } else { &row.h1 };
        sum.add(g, &Count::one());
    }
    Ok(sum)
}

/// `H_dim(Cart(G, K)) = sum_J H̃_{dim-1}(K_J)^{n_J}` for `dim` in `{1, 2}`.
pub fn cart_homology(complex: &FlagComplex, spec: &GroupSpec, dim: usize) -> Result<GroupSum> {
    check_report_dim(dim)?;
    let mut sum = GroupSum::new();
    for row in all_subsets(complex)? {
        let g = if dim == 1 { &row.h0 } else { &row.h1 };
        if !g.is_trivial() {
            sum.add(g, &spec.multiplicity(row.set));
        }
    }
    Ok(sum)
}

/// Which generating cycles of each full subcomplex to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CycleChoice {
    /// One cycle per edge outside the breadth-first spanning forest.
    #[default]
    Fundamental,
    /// Fundamental cycles minus those forced by triangles.
    Pruned,
}

impl FlagComplex {
    /// Cycles whose images generate the fundamental groupoid of `K_J`.
    pub fn generating_cycles(&self, set: VertexSet, choice: CycleChoice) -> Vec<crate::complex::Cycle> {
        let cycles = self.fundamental_cycles(set);
        match choice {
            CycleChoice::Fundamental => cycles,
            CycleChoice::Pruned => self.prune_cycles(set, &cycles),
        }
    }
}

/// One line of the bounds table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsRow {
    pub set: VertexSet,
    pub reduced_b0: usize,
    pub h1: AbelianGroup,
    pub multiplicity: Count,
    pub cycles: usize,
    /// `cycles` equals the rank of the fundamental groupoid.
    pub tight: bool,
}

/// Generator count, relation bounds and the deficiency interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    /// `N = sum_J n_J b̃0(K_J)`.
    pub generators: Count,
    /// `M- = rank sum_J H̃1(K_J)^{n_J}`.
    pub relations_lower: Count,
    /// `sum_J n_J |Gen(J)|`, the number of relations actually emitted.
    pub relations_upper: Count,
    /// `M- - N`, absent when a count is infinite.
    pub deficiency_low: Option<BigInt>,
    /// `M+cert - N`.
    pub deficiency_high: Option<BigInt>,
    /// Every row is tight, so the upper count is the true `M+`.
    pub tight: bool,
    /// Rows with a nonzero entry, ascending by `J`.
    pub rows: Vec<BoundsRow>,
}

fn difference(a: &Count, b: &Count) -> Option<BigInt> {
    Some(BigInt::from(a.finite()?.clone()) - BigInt::from(b.finite()?.clone()))
}

pub fn bounds(complex: &FlagComplex, spec: &GroupSpec, choice: CycleChoice) -> Result<BoundsReport> {
    check_enumerable(complex)?;
    if spec.len() != complex.vertex_count() {
        return Err(Error::InvalidGroup(format!(
            "{} groups for {} vertices",
            spec.len(),
            complex.vertex_count()
        )));
    }
    let rows: Vec<BoundsRow> = (0..1u64 << complex.vertex_count())
        .into_par_iter()
        .map(|bits| -> Result<BoundsRow> {
            let set = VertexSet::from_bits(bits);
            let h = subset_homology(complex, set)?;
            let cycles = complex.generating_cycles(set, choice).len();
            Ok(BoundsRow {
                set,
                reduced_b0: h.h0.free_rank,
                h1: h.h1,
                multiplicity: spec.multiplicity(set),
                cycles,
                tight: h.triangle_free,
            })
        })
        .collect::<Result<_>>()?;

    let mut generators = Count::zero();
    let mut relations_upper = Count::zero();
    let mut h1_sum = GroupSum::new();
    for row in &rows {
        generators = generators + Count::from(row.reduced_b0) * row.multiplicity.clone();
        relations_upper = relations_upper + Count::from(row.cycles) * row.multiplicity.clone();
        h1_sum.add(&row.h1, &row.multiplicity);
    }
    let relations_lower = h1_sum.rank();
    let tight = rows.iter().all(|r| r.tight || r.cycles == 0);
    Ok(BoundsReport {
        deficiency_low: difference(&relations_lower, &generators),
        deficiency_high: difference(&relations_upper, &generators),
        generators,
        relations_lower,
        relations_upper,
        tight,
        rows: rows
            .into_iter()
            .filter(|r| r.reduced_b0 > 0 || !r.h1.is_trivial() || r.cycles > 0)
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    #[test]
    fn reduced_homology_examples() {
        let c4 = FlagComplex::cycle(4).unwrap();
        assert_eq!(reduced_homology(&c4, VertexSet::full(4), 1).unwrap(), AbelianGroup::free(1));
        let c5 = FlagComplex::cycle(5).unwrap();
        assert_eq!(reduced_homology(&c5, set(&[1, 2, 4]), 0).unwrap(), AbelianGroup::free(1));
        assert!(reduced_homology(&c5, VertexSet::EMPTY, 0).unwrap().is_trivial());
        assert_eq!(
            reduced_homology(&c5, VertexSet::full(5), 2).unwrap_err(),
            Error::UnsupportedDimension(2)
        );
        let k4 = FlagComplex::complete(4).unwrap();
        assert!(reduced_homology(&k4, VertexSet::full(4), 1).unwrap().is_trivial());
        // Octahedron boundary is a 2-sphere: H1 = 0.
        let oct = FlagComplex::new(
            6,
            (1..=6usize).flat_map(|i| (i + 1..=6).map(move |j| (i, j))).filter(|&(i, j)| j != i + 3 || i > 3),
        )
        .unwrap();
        assert!(reduced_homology(&oct, VertexSet::full(6), 1).unwrap().is_trivial());
    }

    #[test]
    fn boundary_composition_vanishes() {
        let k = FlagComplex::complete(5).unwrap();
        let (d1, d2) = boundary_matrices(&k, VertexSet::full(5));
        for r in 0..d1.rows() {
            for c in 0..d2.cols() {
                let s: BigInt = (0..d1.cols()).map(|k| d1.get(r, k) * d2.get(k, c)).sum();
                assert_eq!(s, BigInt::from(0));
            }
        }
    }

    #[test]
    fn bounds_examples() {
        let c5 = FlagComplex::cycle(5).unwrap();
        let r = bounds(&c5, &GroupSpec::uniform(5, 2), CycleChoice::Fundamental).unwrap();
        assert_eq!(r.generators, Count::from(10u64));
        assert_eq!(r.relations_lower, Count::one());
        assert_eq!(r.relations_upper, Count::one());
        assert_eq!(r.deficiency_low, Some(BigInt::from(-9)));
        assert_eq!(r.deficiency_high, Some(BigInt::from(-9)));
        assert!(r.tight);

        let c4 = FlagComplex::cycle(4).unwrap();
        let r = bounds(&c4, &GroupSpec::from_orders(&[2, 3, 2, 3]), CycleChoice::Fundamental).unwrap();
        assert_eq!(r.generators, Count::from(5u64));
        assert_eq!(r.relations_upper, Count::from(4u64));

        let two = FlagComplex::edgeless(2).unwrap();
        let r = bounds(&two, &GroupSpec::uniform(2, 2), CycleChoice::Fundamental).unwrap();
        assert_eq!(r.generators, Count::one());
        assert!(r.relations_lower.is_zero() && r.relations_upper.is_zero());

        let r = bounds(&c4, &GroupSpec::from_orders(&[2, 2, 2, 2]).clone(), CycleChoice::Pruned).unwrap();
        assert_eq!(r.generators, Count::from(2u64));
    }

    #[test]
    fn infinite_orders_are_symbolic() {
        let c4 = FlagComplex::cycle(4).unwrap();
        let spec = GroupSpec::parse("inf", 4, |_| unreachable!()).unwrap();
        let r = bounds(&c4, &spec, CycleChoice::Fundamental).unwrap();
        assert_eq!(r.generators, Count::Infinite);
        assert_eq!(r.deficiency_low, None);
    }

    #[test]
    fn hochster_examples() {
        let c5 = FlagComplex::cycle(5).unwrap();
        assert_eq!(hochster_report(&c5, 1).unwrap().to_group(), Some(AbelianGroup::free(10)));
        assert_eq!(hochster_report(&c5, 2).unwrap().to_group(), Some(AbelianGroup::free(1)));
        assert!(hochster_report(&c5, 3).is_err());
        let spec = GroupSpec::uniform(5, 2);
        for dim in [1, 2] {
            assert_eq!(cart_homology(&c5, &spec, dim).unwrap(), hochster_report(&c5, dim).unwrap());
        }
        let spec = GroupSpec::uniform(5, 3);
        let n = bounds(&c5, &spec, CycleChoice::Fundamental).unwrap().generators;
        assert_eq!(cart_homology(&c5, &spec, 1).unwrap().free_rank(), n);
    }

    #[test]
    fn exhaustive_degree_zero_and_cycle_rank() {
        for m in 1..=5usize {
            for mask in 0..(1u64 << (m * (m - 1) / 2)) {
                let k = FlagComplex::from_pair_mask(m, mask).unwrap();
                for bits in 0..(1u64 << m) {
                    let s = VertexSet::from_bits(bits);
                    let c = k.induced_components(s).len();
                    assert_eq!(reduced_homology(&k, s, 0).unwrap().gen_count(), c.saturating_sub(1));
                    let (d1, _) = boundary_matrices(&k, s);
                    let rank = smith_normal_form(&d1).len();
                    let skeleton_h1 = d1.cols() - rank;
                    assert_eq!(skeleton_h1, k.fundamental_cycles(s).len());
                }
            }
        }
    }
}
