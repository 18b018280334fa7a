//! Checking presentations against the graph product.

use rayon::prelude::*;

use crate::complex::{Cycle, FlagComplex, VertexSet};
use crate::error::Result;
use crate::graphprod::{Assignment, GraphProduct};
use crate::groups::GroupSpec;
use crate::reduce::{Presentation, RedTable};
use crate::words::GenSymbol;

/// Default cap on the syllable length of one instantiated relation.
pub const DEFAULT_MAX_VERIFY_SIZE: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub set: VertexSet,
    pub cycle: Cycle,
    /// Element tuple over `J`; absent for exponent-sum failures.
    pub g: Option<Vec<u32>>,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub templates: usize,
    pub instances_checked: u64,
    /// Templates whose instances exceed the size cap.
    pub templates_skipped: usize,
    /// Some vertex group is infinite and was replaced by a finite stand-in.
    pub stand_in: bool,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Syllable length of any instance of a word over these symbols.
fn instantiated_len(symbols: impl Iterator<Item = GenSymbol>) -> usize {
    symbols.map(|s| 2 * s.set().len()).sum()
}

/// Exponent sums of every template, then every instance within `max_size`
/// evaluated in the graph product.
pub fn verify_presentation(
    complex: &FlagComplex,
    spec: &GroupSpec,
    p: &Presentation,
    max_size: usize,
) -> Result<VerifyReport> {
    let product = GraphProduct::new(complex, spec)?;
    let mut report = VerifyReport {
        templates: p.relations.len(),
        stand_in: !spec.all_finite(),
        ..Default::default()
    };
    for r in &p.relations {
        if !r.word.is_balanced() {
            report.failures.push(Failure {
                set: r.set,
                cycle: r.cycle.clone(),
                g: None,
                reason: "nonzero exponent sum".into(),
            });
            continue;
        }
        let word = p.relation_symbols(r);
        if instantiated_len(word.letters().iter().map(|l| l.symbol)) > max_size {
            report.templates_skipped += 1;
            continue;
        }
        let tuples: Vec<Assignment> = product.assignments(r.set).collect();
        let outcomes: Vec<Option<Failure>> = tuples
            .par_iter()
            .map(|g| -> Result<Option<Failure>> {
                let residue = product.evaluate(&word, g)?;
                if residue.is_empty() {
                    return Ok(None);
                }
                let nf = product.normal_form(&residue)?;
                Ok(Some(Failure {
                    set: r.set,
                    cycle: r.cycle.clone(),
                    g: Some(r.set.iter().map(|v| g[v - 1]).collect()),
                    reason: format!("evaluates to {nf:?}"),
                }))
            })
            .collect::<Result<_>>()?;
        report.instances_checked += tuples.len() as u64;
        report.failures.extend(outcomes.into_iter().flatten());
    }
    Ok(report)
}

/// Checks `Red L(i, J) = L(i, J)` in the graph product for every tuple `g`.
/// Returns the first tuple (over `J`) where they differ.
pub fn check_reduction(
    table: &mut RedTable,
    product: &GraphProduct,
    i: usize,
    set: VertexSet,
) -> Result<Option<Vec<u32>>> {
    let reduced = table.red_symbol(i, set)?;
    for g in product.assignments(set) {
        let mut w = product.evaluate(&reduced, &g)?;
        w.extend(product.inverse(&product.generator_word(i, set, &g)?));
        if !product.is_identity(&w)? {
            return Ok(Some(set.iter().map(|v| g[v - 1]).collect()));
        }
    }
    Ok(None)
}
