//! Rendering presentations as text, JSON, GAP or Magma input, optionally with
//! every relation template instantiated once per element tuple.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::{Cycle, FlagComplex, VertexSet};
use crate::count::Count;
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::reduce::{Presentation, Relation};
use crate::words::{GenSymbol, Letter, Word};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
    Gap,
    Magma,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "gap" => Ok(Format::Gap),
            "magma" => Ok(Format::Magma),
            other => Err(format!("unknown format `{other}` (expected text, json, gap or magma)")),
        }
    }
}

/// Numbering of the instantiated generators `L_g(i, J)`, one per `g` in
/// `prod_{j in J} (G_j \ 1)`, tuples in odometer order with the last vertex fastest.
#[derive(Clone, Debug)]
pub struct Expansion<'p> {
    presentation: &'p Presentation,
    /// `|G_v| - 1`, indexed by `v - 1`.
    radix: Vec<u64>,
    offsets: Vec<u64>,
    generator_count: u64,
}

/// One instantiated relation: its element tuple over `J` and its word over
/// 0-based expanded generator indices.
pub type Instance = (Vec<u32>, Vec<(u64, bool)>);

impl<'p> Expansion<'p> {
    pub fn new(presentation: &'p Presentation, spec: &GroupSpec) -> Result<Self> {
        if !spec.all_finite() {
            return Err(Error::Unsupported(
                "expanding multiplicities needs finite vertex groups".into(),
            ));
        }
        let radix = spec
            .groups()
            .iter()
            .map(|g| g.nontrivial_count().to_u64().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        let mut offsets = Vec::with_capacity(presentation.generators.len());
        let mut total = 0u64;
        for g in &presentation.generators {
            offsets.push(total);
            let n = tuple_count(&radix, g.set()).ok_or(Error::Overflow)?;
            total = total.checked_add(n).ok_or(Error::Overflow)?;
        }
        Ok(Expansion {
            presentation,
            radix,
            offsets,
            generator_count: total,
        })
    }

    pub fn generator_count(&self) -> u64 {
        self.generator_count
    }

    pub fn relation_count(&self) -> Option<u64> {
        self.presentation
            .relations
            .iter()
            .try_fold(0u64, |acc, r| acc.checked_add(tuple_count(&self.radix, r.set)?))
    }

    /// Total letters over all instantiated relations.
    pub fn letter_count(&self) -> Option<u64> {
        self.presentation.relations.iter().try_fold(0u64, |acc, r| {
            let n = tuple_count(&self.radix, r.set)?.checked_mul(r.word.len() as u64)?;
            acc.checked_add(n)
        })
    }

    fn tuples(&self, set: VertexSet) -> impl Iterator<Item = Vec<u32>> + '_ {
        let members: Vec<usize> = set.iter().collect();
        let count = tuple_count(&self.radix, set).unwrap_or(0);
        (0..count).map(move |mut idx| {
            let mut out = vec![0u32; members.len()];
            for (slot, &v) in members.iter().enumerate().rev() {
                let r = self.radix[v - 1];
                out[slot] = (idx % r) as u32 + 1;
                idx /= r;
            }
            out
        })
    }

    /// Expanded generators `(symbol, g)` with `g` listed over `J` ascending.
    pub fn generators(&self) -> impl Iterator<Item = (GenSymbol, Vec<u32>)> + '_ {
        self.presentation
            .generators
            .iter()
            .flat_map(move |&s| self.tuples(s.set()).map(move |g| (s, g)))
    }

    /// Index of `L_g(i, J')` where `g` is given over the relation's set `J`.
    fn index(&self, id: u32, set: VertexSet, g: &[u32]) -> u64 {
        let sym = self.presentation.generators[id as usize];
        let mut rank = 0u64;
        for (slot, v) in set.iter().enumerate() {
            if sym.set().contains(v) {
                rank = rank * self.radix[v - 1] + u64::from(g[slot] - 1);
            }
        }
        self.offsets[id as usize] + rank
    }

    pub fn instances<'a>(&'a self, relation: &'a Relation) -> impl Iterator<Item = Instance> + 'a {
        self.tuples(relation.set).map(move |g| {
            let word = relation
                .word
                .letters()
                .iter()
                .map(|l| (self.index(l.symbol, relation.set, &g), l.inverse))
                .collect();
            (g, word)
        })
    }
}

fn tuple_count(radix: &[u64], set: VertexSet) -> Option<u64> {
    set.iter().try_fold(1u64, |acc, v| acc.checked_mul(radix[v - 1]))
}

#[derive(Serialize, Deserialize)]
struct JsonGenerator {
    id: u64,
    i: usize,
    #[serde(rename = "J")]
    set: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    g: Option<Vec<u32>>,
}

#[derive(Serialize)]
struct JsonRelation<'a> {
    #[serde(rename = "J")]
    set: Vec<usize>,
    cycle: &'a [usize],
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<Vec<u32>>,
    word: Vec<(u64, i8)>,
    length: usize,
    multiplicity: Count,
}

#[derive(Serialize)]
struct JsonPresentation<'a> {
    generators: Vec<JsonGenerator>,
    relations: Vec<JsonRelation<'a>>,
}

#[derive(Deserialize)]
struct JsonRelationIn {
    #[serde(rename = "J")]
    set: Vec<usize>,
    cycle: Vec<usize>,
    word: Vec<(u64, i8)>,
}

#[derive(Deserialize)]
struct JsonPresentationIn {
    generators: Vec<JsonGenerator>,
    relations: Vec<JsonRelationIn>,
}

fn sign(inverse: bool) -> i8 {
    if inverse {
        -1
    } else {
        1
    }
}

fn json_word(word: &Word<u32>) -> Vec<(u64, i8)> {
    word.letters()
        .iter()
        .map(|l| (u64::from(l.symbol) + 1, sign(l.inverse)))
        .collect()
}

/// Writes `p` in `format`. With an expansion every template is replaced by its instances.
pub fn write_presentation<W: Write>(
    out: &mut W,
    p: &Presentation,
    spec: &GroupSpec,
    format: Format,
    expansion: Option<&Expansion>,
) -> io::Result<()> {
    match format {
        Format::Json => write_json(out, p, expansion),
        Format::Text => write_text(out, p, spec, expansion),
        Format::Gap | Format::Magma => write_cas(out, p, spec, format, expansion),
    }
}

fn write_json<W: Write>(out: &mut W, p: &Presentation, expansion: Option<&Expansion>) -> io::Result<()> {
    let doc = match expansion {
        None => JsonPresentation {
            generators: p
                .generators
                .iter()
                .enumerate()
                .map(|(k, s)| JsonGenerator {
                    id: k as u64 + 1,
                    i: s.vertex(),
                    set: s.set().iter().collect(),
                    g: None,
                })
                .collect(),
            relations: p
                .relations
                .iter()
                .map(|r| JsonRelation {
                    set: r.set.iter().collect(),
                    cycle: r.cycle.vertices(),
                    g: None,
                    word: json_word(&r.word),
                    length: r.word.len(),
                    multiplicity: r.multiplicity.clone(),
                })
                .collect(),
        },
        Some(e) => JsonPresentation {
            generators: e
                .generators()
                .enumerate()
                .map(|(k, (s, g))| JsonGenerator {
                    id: k as u64 + 1,
                    i: s.vertex(),
                    set: s.set().iter().collect(),
                    g: Some(g),
                })
                .collect(),
            relations: p
                .relations
                .iter()
                .flat_map(|r| {
                    e.instances(r).map(move |(g, word)| JsonRelation {
                        set: r.set.iter().collect(),
                        cycle: r.cycle.vertices(),
                        g: Some(g),
                        length: word.len(),
                        word: word.into_iter().map(|(id, inv)| (id + 1, sign(inv))).collect(),
                        multiplicity: Count::one(),
                    })
                })
                .collect(),
        },
    };
    serde_json::to_writer(&mut *out, &doc)?;
    writeln!(out)
}

fn set_list(set: VertexSet) -> String {
    let parts: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    parts.join(",")
}

fn write_text<W: Write>(
    out: &mut W,
    p: &Presentation,
    spec: &GroupSpec,
    expansion: Option<&Expansion>,
) -> io::Result<()> {
    writeln!(out, "m = {}, groups {}", p.m, spec)?;
    writeln!(
        out,
        "generators: {} templates, {} instances",
        p.generators.len(),
        p.generator_count()
    )?;
    for (k, s) in p.generators.iter().enumerate() {
        let n = &p.generator_multiplicities[k];
        writeln!(out, "  x{} = {}  n_J = {}", k + 1, s.render(p.m), n)?;
    }
    writeln!(
        out,
        "relations: {} templates, {} instances",
        p.relations.len(),
        p.relation_count()
    )?;
    for (k, r) in p.relations.iter().enumerate() {
        writeln!(
            out,
            "  r{}: J = {{{}}}, cycle {}, length {}, n_J = {}",
            k + 1,
            set_list(r.set),
            r.cycle,
            r.word.len(),
            r.multiplicity
        )?;
        match expansion {
            None => writeln!(out, "    {}", render_template(&r.word, "x"))?,
            Some(e) => {
                for (g, word) in e.instances(r) {
                    let g: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                    writeln!(out, "    g = ({}): {}", g.join(","), render_instance(&word, "y"))?;
                }
            }
        }
    }
    if let Some(e) = expansion {
        writeln!(out, "expanded generators:")?;
        for (k, (s, g)) in e.generators().enumerate() {
            let g: Vec<String> = g.iter().map(|x| x.to_string()).collect();
            writeln!(out, "  y{} = {} at g = ({})", k + 1, s.render(p.m), g.join(","))?;
        }
    }
    Ok(())
}

fn render_template(word: &Word<u32>, prefix: &str) -> String {
    if word.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = word
        .letters()
        .iter()
        .map(|l| format!("{prefix}{}{}", l.symbol + 1, if l.inverse { "^-1" } else { "" }))
        .collect();
    parts.join(" ")
}

fn render_instance(word: &[(u64, bool)], prefix: &str) -> String {
    if word.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = word
        .iter()
        .map(|&(id, inv)| format!("{prefix}{}{}", id + 1, if inv { "^-1" } else { "" }))
        .collect();
    parts.join(" ")
}

/// Factors per output line in GAP and Magma words.
const FACTORS_PER_LINE: usize = 16;

fn cas_word(letters: impl ExactSizeIterator<Item = (u64, bool)>, format: Format) -> String {
    if letters.len() == 0 {
        return match format {
            Format::Magma => "Id(F)".into(),
            _ => "One(F)".into(),
        };
    }
    let mut s = String::new();
    for (k, (id, inv)) in letters.enumerate() {
        if k > 0 {
            s.push('*');
            if k % FACTORS_PER_LINE == 0 {
                s.push_str("\n    ");
            }
        }
        write!(s, "F.{}", id + 1).unwrap();
        if inv {
            s.push_str("^-1");
        }
    }
    s
}

fn write_cas<W: Write>(
    out: &mut W,
    p: &Presentation,
    spec: &GroupSpec,
    format: Format,
    expansion: Option<&Expansion>,
) -> io::Result<()> {
    let c = if format == Format::Magma { "//" } else { "#" };
    writeln!(out, "{c} Cartesian subgroup, m = {}, groups {}", p.m, spec)?;
    let rank = match expansion {
        Some(e) => {
            for (k, (s, g)) in e.generators().enumerate() {
                let g: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                writeln!(out, "{c} F.{} = {} at g = ({})", k + 1, s.render(p.m), g.join(","))?;
            }
            e.generator_count()
        }
        None => {
            for (k, s) in p.generators.iter().enumerate() {
                let n = &p.generator_multiplicities[k];
                if *n == Count::one() {
                    writeln!(out, "{c} F.{} = {}", k + 1, s.render(p.m))?;
                } else {
                    writeln!(out, "{c} F.{} = {}, stands for {} generators", k + 1, s.render(p.m), n)?;
                }
            }
            p.generators.len() as u64
        }
    };
    let mut rels = Vec::new();
    for r in &p.relations {
        match expansion {
            Some(e) => {
                for (_, word) in e.instances(r) {
                    rels.push(format!("  {}", cas_word(word.into_iter(), format)));
                }
            }
            None => {
                let head = if r.multiplicity == Count::one() {
                    format!("  {c} J = {{{}}}, cycle {}\n", set_list(r.set), r.cycle)
                } else {
                    format!(
                        "  {c} J = {{{}}}, cycle {}, stands for {} relations\n",
                        set_list(r.set),
                        r.cycle,
                        r.multiplicity
                    )
                };
                let letters = r.word.letters().iter().map(|l| (u64::from(l.symbol), l.inverse));
                rels.push(format!("{head}  {}", cas_word(letters, format)));
            }
        }
    }
    let body = rels.join(",\n");
    match format {
        Format::Magma => {
            writeln!(out, "F := FreeGroup({rank});")?;
            if body.is_empty() {
                writeln!(out, "rels := [ F | ];")?;
            } else {
                writeln!(out, "rels := [ F |\n{body}\n];")?;
            }
            writeln!(out, "G := quo< F | rels >;")
        }
        _ => {
            writeln!(out, "F := FreeGroup({rank});;")?;
            if body.is_empty() {
                writeln!(out, "rels := [ ];;")
            } else {
                writeln!(out, "rels := [\n{body}\n];;")
            }
        }
    }
}

/// Reads a presentation written by [`write_presentation`] in JSON format
/// (unexpanded). Multiplicities are recomputed from `spec`.
pub fn read_presentation_json(text: &str, complex: &FlagComplex, spec: &GroupSpec) -> Result<Presentation> {
    let doc: JsonPresentationIn =
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    let mut generators = Vec::with_capacity(doc.generators.len());
    for (k, g) in doc.generators.iter().enumerate() {
        if g.id != k as u64 + 1 {
            return Err(Error::parse(0, format!("generator ids must be 1, 2, ...; found {}", g.id)));
        }
        let set = checked_set(complex, &g.set)?;
        if !set.contains(g.i) {
            return Err(Error::NotInSet { vertex: g.i, set });
        }
        generators.push(GenSymbol::new(g.i, set));
    }
    let mut relations = Vec::with_capacity(doc.relations.len());
    for r in doc.relations {
        let set = checked_set(complex, &r.set)?;
        let cycle = Cycle::new(r.cycle)?;
        cycle.check_in(complex, set)?;
        let mut letters = Vec::with_capacity(r.word.len());
        for (id, e) in r.word {
            if id == 0 || id > generators.len() as u64 {
                return Err(Error::parse(0, format!("generator id {id} out of range")));
            }
            let sym = (id - 1) as u32;
            letters.push(match e {
                1 => Letter::pos(sym),
                -1 => Letter::neg(sym),
                _ => return Err(Error::parse(0, format!("exponent must be 1 or -1, found {e}"))),
            });
        }
        relations.push(Relation {
            multiplicity: spec.multiplicity(set),
            set,
            cycle,
            word: Word::from_letters(letters),
        });
    }
    let generator_multiplicities = generators.iter().map(|g| spec.multiplicity(g.set())).collect();
    Ok(Presentation {
        m: complex.vertex_count(),
        generators,
        relations,
        generator_multiplicities,
    })
}

fn checked_set(complex: &FlagComplex, vertices: &[usize]) -> Result<VertexSet> {
    for &v in vertices {
        if v == 0 || v > complex.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                m: complex.vertex_count(),
            });
        }
    }
    Ok(VertexSet::from_vertices(vertices.iter().copied()))
}
