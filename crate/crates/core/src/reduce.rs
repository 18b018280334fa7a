//! Rewriting of `L(i, J)` into distinguished generators, relation words of
//! cycles, and assembly of presentations.
//!
//! Every rewriting step of `L(i, J)` depends only on symbols over sets of size
//! `|J| - 1`, so the bulk engine works one stratum at a time: it first collects
//! the keys each stratum needs (top-down), then fills them in (bottom-up),
//! holding at most two strata in memory.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::complex::{Cycle, FlagComplex, VertexSet};
use crate::count::Count;
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::homology::CycleChoice;
use crate::words::{GenSymbol, Letter, Word};

type Key = (VertexSet, u8);

fn key(s: GenSymbol) -> Key {
    (s.set(), s.vertex() as u8)
}

/// One rewriting step for `L(i, J)`:
/// `Red L(i_0, J) = head * prod_{t=k-1..0} red L(i_t, J - i_{t+1}) * red L(i_{t+1}, J - i_t)^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Step {
    head: Option<GenSymbol>,
    path: Vec<usize>,
}

impl Step {
    fn new(complex: &FlagComplex, i: usize, set: VertexSet) -> Result<Self> {
        complex.check_set(set)?;
        if !set.contains(i) {
            return Err(Error::NotInSet { vertex: i, set });
        }
        let top = set.max().unwrap();
        let component = complex.component_of(set, i);
        if component.contains(top) {
            let path = complex.lex_path(set, i, top)?;
            return Ok(Step { head: None, path });
        }
        let rep = component.min().unwrap();
        let path = if rep == i {
            vec![i]
        } else {
            complex.lex_path(set, i, rep)?
        };
        Ok(Step {
            head: Some(GenSymbol::new(rep, set)),
            path,
        })
    }

    /// `(A_t, B_t)` for `t = k-1, ..., 0`, the order in which they are consumed.
    fn factors(&self, set: VertexSet) -> impl Iterator<Item = (Key, Key)> + '_ {
        self.path.windows(2).rev().map(move |w| {
            let (a, b) = (w[0], w[1]);
            ((set.without(b), a as u8), (set.without(a), b as u8))
        })
    }
}

/// Lazily filled memo of reduced words `Red L(i, J)`.
#[derive(Debug)]
pub struct RedTable<'a> {
    complex: &'a FlagComplex,
    memo: HashMap<Key, Word<GenSymbol>>,
}

impl<'a> RedTable<'a> {
    pub fn new(complex: &'a FlagComplex) -> Self {
        RedTable {
            complex,
            memo: HashMap::new(),
        }
    }

    pub fn complex(&self) -> &FlagComplex {
        self.complex
    }

    /// Number of memoized keys.
    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// `Red L(i, J)`, a reduced word over distinguished generators.
    pub fn red_symbol(&mut self, i: usize, set: VertexSet) -> Result<Word<GenSymbol>> {
        if let Some(w) = self.memo.get(&(set, i as u8)) {
            return Ok(w.clone());
        }
        let step = Step::new(self.complex, i, set)?;
        let mut out = Word::new();
        if let Some(h) = step.head {
            out.push(Letter::pos(h));
        }
        for (a, b) in step.factors(set) {
            let wa = self.red_symbol(a.1 as usize, a.0)?;
            out.append(&wa);
            let wb = self.red_symbol(b.1 as usize, b.0)?;
            out.append_inverse(&wb);
        }
        self.memo.insert((set, i as u8), out.clone());
        Ok(out)
    }

    /// Replaces every letter by its reduced word and reduces.
    pub fn red_word(&mut self, word: &Word<GenSymbol>) -> Result<Word<GenSymbol>> {
        let mut out = Word::new();
        for l in word.letters() {
            let w = self.red_symbol(l.symbol.vertex(), l.symbol.set())?;
            if l.inverse {
                out.append_inverse(&w);
            } else {
                out.append(&w);
            }
        }
        Ok(out)
    }
}

/// `Red L(i, J)` computed without keeping a table.
pub fn red_symbol(complex: &FlagComplex, i: usize, set: VertexSet) -> Result<Word<GenSymbol>> {
    RedTable::new(complex).red_symbol(i, set)
}

/// `R(λ, J) = prod_t L(i_{t+1}, J - i_t) L(i_t, J - i_{t+1})^-1`, unreduced.
pub fn relation_template(complex: &FlagComplex, cycle: &Cycle, set: VertexSet) -> Result<Word<GenSymbol>> {
    cycle.check_in(complex, set)?;
    let letters = cycle
        .vertices()
        .windows(2)
        .flat_map(|w| {
            let (a, b) = (w[0], w[1]);
            [
                Letter::pos(GenSymbol::new(b, set.without(a))),
                Letter::neg(GenSymbol::new(a, set.without(b))),
            ]
        })
        .collect();
    Ok(Word::from_letters(letters))
}

/// Distinguished generators `L̂(i, J)`: `i` ranges over `Θ(J)`. Sorted.
pub fn distinguished_symbols(complex: &FlagComplex) -> Result<Vec<GenSymbol>> {
    crate::homology::check_enumerable(complex)?;
    let mut out: Vec<GenSymbol> = (1..1u64 << complex.vertex_count())
        .into_par_iter()
        .flat_map_iter(|bits| {
            let set = VertexSet::from_bits(bits);
            let theta = complex.theta(set).unwrap();
            theta.into_iter().map(move |i| GenSymbol::new(i, set))
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Reduced words over dense generator ids (indices into `symbols`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedBatch {
    pub symbols: Vec<GenSymbol>,
    pub words: Vec<Word<u32>>,
}

impl ReducedBatch {
    pub fn to_symbols(&self, word: &Word<u32>) -> Word<GenSymbol> {
        word.map(|id| self.symbols[id as usize])
    }
}

fn collect_deps(complex: &FlagComplex, keys: &[Key]) -> Result<(Vec<Key>, Vec<GenSymbol>)> {
    let per_key: Vec<(Vec<Key>, Option<GenSymbol>)> = keys
        .par_iter()
        .map(|&(set, i)| {
            let step = Step::new(complex, i as usize, set)?;
            let deps = step.factors(set).flat_map(|(a, b)| [a, b]).collect();
            Ok((deps, step.head))
        })
        .collect::<Result<_>>()?;
    let mut deps = Vec::new();
    let mut heads = Vec::new();
    for (d, h) in per_key {
        deps.extend(d);
        heads.extend(h);
    }
    deps.par_sort_unstable();
    deps.dedup();
    Ok((deps, heads))
}

fn lookup<'w>(keys: &[Key], words: &'w [Word<u32>], k: Key) -> &'w Word<u32> {
    let idx = keys.binary_search(&k).expect("dependency was collected");
    &words[idx]
}

/// Reduces many words over `L(i, J)` symbols at once, stratum by stratum.
///
/// Generator ids are indices into the sorted union of `generators` and every
/// distinguished symbol that actually occurs.
pub fn reduce_batch(
    complex: &FlagComplex,
    words: &[Word<GenSymbol>],
    generators: &[GenSymbol],
) -> Result<ReducedBatch> {
    let m = complex.vertex_count();
    for w in words {
        for l in w.letters() {
            complex.check_set(l.symbol.set())?;
        }
    }
    // Top-down: keys needed per stratum `|J| = s`.
    let mut needed: Vec<Vec<Key>> = vec![Vec::new(); m + 1];
    for w in words {
        for l in w.letters() {
            needed[l.symbol.set().len()].push(key(l.symbol));
        }
    }
    let mut symbols: Vec<GenSymbol> = generators.to_vec();
    for s in (1..=m).rev() {
        let mut keys = std::mem::take(&mut needed[s]);
        keys.par_sort_unstable();
        keys.dedup();
        let (deps, heads) = collect_deps(complex, &keys)?;
        symbols.extend(heads);
        needed[s - 1].extend(deps);
        needed[s] = keys;
    }
    symbols.par_sort_unstable();
    symbols.dedup();
    let id_of = |s: GenSymbol| symbols.binary_search(&s).expect("head was collected") as u32;

    // Bottom-up.
    let mut by_stratum: Vec<Vec<usize>> = vec![Vec::new(); m + 1];
    for (idx, w) in words.iter().enumerate() {
        let top = w.letters().iter().map(|l| l.symbol.set().len()).max().unwrap_or(0);
        by_stratum[top].push(idx);
    }
    let mut out: Vec<Word<u32>> = vec![Word::new(); words.len()];
    let mut prev_keys: Vec<Key> = Vec::new();
    let mut prev_words: Vec<Word<u32>> = Vec::new();
    for s in 0..=m {
        let keys = std::mem::take(&mut needed[s]);
        let computed: Vec<Word<u32>> = keys
            .par_iter()
            .map(|&(set, i)| {
                let step = Step::new(complex, i as usize, set)?;
                let mut w = Word::new();
                if let Some(h) = step.head {
                    w.push(Letter::pos(id_of(h)));
                }
                for (a, b) in step.factors(set) {
                    w.append(lookup(&prev_keys, &prev_words, a));
                    w.append_inverse(lookup(&prev_keys, &prev_words, b));
                }
                Ok(w)
            })
            .collect::<Result<_>>()?;
        prev_keys = keys;
        prev_words = computed;
        let reduced: Vec<(usize, Word<u32>)> = by_stratum[s]
            .par_iter()
            .map(|&idx| {
                let mut w = Word::new();
                for l in words[idx].letters() {
                    let piece = lookup(&prev_keys, &prev_words, key(l.symbol));
                    if l.inverse {
                        w.append_inverse(piece);
                    } else {
                        w.append(piece);
                    }
                }
                (idx, w)
            })
            .collect();
        for (idx, w) in reduced {
            out[idx] = w;
        }
    }
    Ok(ReducedBatch { symbols, words: out })
}

/// One relation template `Red R(λ, J) = 1`, standing for `n_J` relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub set: VertexSet,
    pub cycle: Cycle,
    /// Over generator ids (0-based indices into [`Presentation::generators`]).
    pub word: Word<u32>,
    pub multiplicity: Count,
}

/// Distinguished generators and relation templates for `Cart(G, K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub m: usize,
    pub generators: Vec<GenSymbol>,
    pub relations: Vec<Relation>,
    /// `n_J` for each generator's set, aligned with `generators`.
    pub generator_multiplicities: Vec<Count>,
}

impl Presentation {
    /// `sum n_J` over generator symbols.
    pub fn generator_count(&self) -> Count {
        self.generator_multiplicities.iter().cloned().sum()
    }

    /// `sum n_J` over relation templates.
    pub fn relation_count(&self) -> Count {
        self.relations.iter().map(|r| r.multiplicity.clone()).sum()
    }

    pub fn relation_symbols(&self, r: &Relation) -> Word<GenSymbol> {
        r.word.map(|id| self.generators[id as usize])
    }
}

/// The presentation with one template per generating cycle of every `K_J`.
///
/// Fails with [`Error::Verification`] if a relation has a nonzero exponent sum.
pub fn build_presentation(complex: &FlagComplex, spec: &GroupSpec, choice: CycleChoice) -> Result<Presentation> {
    if spec.len() != complex.vertex_count() {
        return Err(Error::InvalidGroup(format!(
            "{} groups for {} vertices",
            spec.len(),
            complex.vertex_count()
        )));
    }
    let generators = distinguished_symbols(complex)?;
    let templates: Vec<(VertexSet, Cycle)> = (1..1u64 << complex.vertex_count())
        .into_par_iter()
        .flat_map_iter(|bits| {
            let set = VertexSet::from_bits(bits);
            complex
                .generating_cycles(set, choice)
                .into_iter()
                .map(move |c| (set, c))
        })
        .collect();
    let words = templates
        .iter()
        .map(|(set, c)| relation_template(complex, c, *set))
        .collect::<Result<Vec<_>>>()?;
    let batch = reduce_batch(complex, &words, &generators)?;
    debug_assert_eq!(batch.symbols, generators);

    let relations: Vec<Relation> = templates
        .into_iter()
        .zip(batch.words)
        .map(|((set, cycle), word)| Relation {
            multiplicity: spec.multiplicity(set),
            set,
            cycle,
            word,
        })
        .collect();
    for r in &relations {
        if !r.word.is_balanced() {
            return Err(Error::Verification(format!(
                "relation for J = {}, cycle {} has a nonzero exponent sum",
                r.set, r.cycle
            )));
        }
    }
    let generator_multiplicities = generators.iter().map(|g| spec.multiplicity(g.set())).collect();
    Ok(Presentation {
        m: complex.vertex_count(),
        generators,
        relations,
        generator_multiplicities,
    })
}

/// `Red R(λ, [m])` for the m-cycle `λ = (1, 2, ..., m, 1)`.
pub fn cycle_relation(m: usize) -> Result<ReducedBatch> {
    if m < 4 {
        return Err(Error::InvalidCycle(format!("the m-cycle relation needs m >= 4, got {m}")));
    }
    let complex = FlagComplex::cycle(m)?;
    let cycle = Cycle::new((1..=m).chain([1]).collect())?;
    let template = relation_template(&complex, &cycle, VertexSet::full(m))?;
    reduce_batch(&complex, &[template], &[])
}

/// `4 g(m) = 4 (1 + (m - 4) 2^(m-3))`, the expected length of the m-cycle relation.
pub fn cycle_relation_length(m: usize) -> Option<u64> {
    if m < 4 {
        return None;
    }
    let g = 1u64.checked_add(((m - 4) as u64).checked_mul(1u64.checked_shl((m - 3) as u32)?)?)?;
    g.checked_mul(4)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(v.iter().copied())
    }

    fn sym(i: usize, v: &[usize]) -> GenSymbol {
        GenSymbol::new(i, set(v))
    }

    #[test]
    fn red_symbol_examples() {
        let c4 = FlagComplex::cycle(4).unwrap();
        assert_eq!(
            red_symbol(&c4, 2, set(&[2, 3, 4])).unwrap(),
            Word::letter(Letter::pos(sym(2, &[2, 4])))
        );
        assert!(red_symbol(&c4, 3, set(&[1, 3, 4])).unwrap().is_empty());
        assert!(red_symbol(&c4, 4, VertexSet::full(4)).unwrap().is_empty());
        assert!(red_symbol(&c4, 2, set(&[2])).unwrap().is_empty());
        assert!(red_symbol(&c4, 1, set(&[1, 2])).unwrap().is_empty());
        assert_eq!(
            red_symbol(&c4, 1, set(&[1, 3])).unwrap(),
            Word::letter(Letter::pos(sym(1, &[1, 3])))
        );
        assert_eq!(
            red_symbol(&c4, 1, set(&[2, 3])).unwrap_err(),
            Error::NotInSet { vertex: 1, set: set(&[2, 3]) }
        );
    }

    #[test]
    fn relation_template_examples() {
        let k = FlagComplex::new(8, [(4, 5), (5, 7), (4, 7), (7, 8)]).unwrap();
        let c = Cycle::new(vec![7, 5, 4, 7]).unwrap();
        let w = relation_template(&k, &c, set(&[4, 5, 7, 8])).unwrap();
        let expected = [
            Letter::pos(sym(5, &[4, 5, 8])),
            Letter::neg(sym(7, &[4, 7, 8])),
            Letter::pos(sym(4, &[4, 7, 8])),
            Letter::neg(sym(5, &[5, 7, 8])),
            Letter::pos(sym(7, &[5, 7, 8])),
            Letter::neg(sym(4, &[4, 5, 8])),
        ];
        assert_eq!(w.letters(), &expected[..]);

        let c4 = FlagComplex::cycle(4).unwrap();
        let c = Cycle::new(vec![1, 2, 3, 4, 1]).unwrap();
        let w = relation_template(&c4, &c, VertexSet::full(4)).unwrap();
        let expected = [
            Letter::pos(sym(2, &[2, 3, 4])),
            Letter::neg(sym(1, &[1, 3, 4])),
            Letter::pos(sym(3, &[1, 3, 4])),
            Letter::neg(sym(2, &[1, 2, 4])),
            Letter::pos(sym(4, &[1, 2, 4])),
            Letter::neg(sym(3, &[1, 2, 3])),
            Letter::pos(sym(1, &[1, 2, 3])),
            Letter::neg(sym(4, &[2, 3, 4])),
        ];
        assert_eq!(w.letters(), &expected[..]);

        let mut table = RedTable::new(&c4);
        let a = sym(1, &[1, 3]);
        let b = sym(2, &[2, 4]);
        let reduced = table.red_word(&w).unwrap();
        assert_eq!(
            reduced.letters(),
            &[Letter::pos(b), Letter::neg(a), Letter::neg(b), Letter::pos(a)][..]
        );
        assert!(table.red_word(&Word::new()).unwrap().is_empty());
        assert!(Cycle::new(vec![1, 2, 1]).is_err());
    }

    #[test]
    fn five_cycle_relation() {
        let batch = cycle_relation(5).unwrap();
        let w = &batch.words[0];
        assert_eq!(w.len(), 20);
        assert!(w.is_balanced());
        assert_eq!(batch.symbols.len(), 10);
    }

    #[test]
    fn cycle_length_law_small() {
        for m in 4..=9 {
            let batch = cycle_relation(m).unwrap();
            assert_eq!(batch.words[0].len() as u64, cycle_relation_length(m).unwrap(), "m = {m}");
        }
        assert_eq!(cycle_relation_length(10), Some(3076));
        assert_eq!(cycle_relation_length(20), Some(8388612));
        assert!(cycle_relation(3).is_err());
    }

    #[test]
    fn batch_agrees_with_table() {
        for mask in 0..(1u64 << 10) {
            let k = FlagComplex::from_pair_mask(5, mask).unwrap();
            let mut table = RedTable::new(&k);
            let words: Vec<Word<GenSymbol>> = (1..32u64)
                .flat_map(|bits| {
                    let s = VertexSet::from_bits(bits);
                    s.iter().map(move |i| Word::letter(Letter::pos(GenSymbol::new(i, s))))
                })
                .collect();
            let batch = reduce_batch(&k, &words, &[]).unwrap();
            for (w, r) in words.iter().zip(&batch.words) {
                let expected = table.red_word(w).unwrap();
                assert_eq!(batch.to_symbols(r), expected);
                for l in expected.letters() {
                    let s = l.symbol.set();
                    assert!(k.theta(s).unwrap().contains(l.symbol.vertex()));
                }
            }
        }
    }

    #[test]
    fn presentation_examples() {
        let c4 = FlagComplex::cycle(4).unwrap();
        let p = build_presentation(&c4, &GroupSpec::uniform(4, 2), CycleChoice::Fundamental).unwrap();
        assert_eq!(p.generators, vec![sym(1, &[1, 3]), sym(2, &[2, 4])]);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].word.len(), 4);

        let c5 = FlagComplex::cycle(5).unwrap();
        let p = build_presentation(&c5, &GroupSpec::uniform(5, 2), CycleChoice::Fundamental).unwrap();
        assert_eq!(p.generators.len(), 10);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].word.len(), 20);

        let k4 = FlagComplex::complete(4).unwrap();
        let spec = GroupSpec::uniform(4, 3);
        let p = build_presentation(&k4, &spec, CycleChoice::Pruned).unwrap();
        assert!(p.generators.is_empty() && p.relations.is_empty());
        let p = build_presentation(&k4, &spec, CycleChoice::Fundamental).unwrap();
        assert!(p.relations.iter().all(|r| r.word.is_empty()));

        let e3 = FlagComplex::edgeless(3).unwrap();
        let p = build_presentation(&e3, &GroupSpec::uniform(3, 2), CycleChoice::Fundamental).unwrap();
        assert!(p.relations.is_empty());
        // Free of rank sum_J (|J| - 1) over nonempty J.
        assert_eq!(p.generator_count(), Count::from(3 + 2u64));
    }

    #[test]
    fn restriction_does_not_change_words() {
        for mask in [0b1011011011u64, 0b0110101101, 0b1111100000] {
            let k = FlagComplex::from_pair_mask(5, mask).unwrap();
            let mut big = RedTable::new(&k);
            for bits in 1..32u64 {
                let s = VertexSet::from_bits(bits);
                let sub = k.restrict(s);
                let mut small = RedTable::new(&sub);
                for i in s {
                    assert_eq!(big.red_symbol(i, s).unwrap(), small.red_symbol(i, s).unwrap());
                }
            }
        }
    }
}
