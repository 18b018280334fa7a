//! Text and JSON rendering for the report commands.

use std::io::{self, Write};

use serde_json::{json, Value};

use cartk::homology::{BoundsReport, GroupSum, SubsetHomology};
use cartk::reduce::ReducedBatch;
use cartk::{Count, GroupSpec, VertexSet};

fn set_json(set: VertexSet) -> Value {
    json!(set.iter().collect::<Vec<_>>())
}

fn bound_json(b: &Option<num_bigint::BigInt>) -> Value {
    match b {
        None => Value::Null,
        Some(v) => match i64::try_from(v) {
            Ok(x) => json!(x),
            Err(_) => json!(v.to_string()),
        },
    }
}

fn bound_text(b: &Option<num_bigint::BigInt>) -> String {
    b.as_ref().map_or("?".to_string(), |v| v.to_string())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Left-aligned first column, right-aligned rest.
fn write_table<W: Write>(w: &mut W, rows: &[Vec<String>]) -> io::Result<()> {
    let cols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    for r in rows {
        let mut line = String::new();
        for (c, cell) in r.iter().enumerate() {
            let pad = widths[c] - cell.chars().count();
            if c == 0 {
                line.push_str(cell);
                line.push_str(&" ".repeat(pad));
            } else {
                line.push_str("  ");
                line.push_str(&" ".repeat(pad));
                line.push_str(cell);
            }
        }
        writeln!(w, "{}", line.trim_end())?;
    }
    Ok(())
}

pub fn bounds_text<W: Write>(w: &mut W, r: &BoundsReport) -> io::Result<()> {
    let mut rows = vec![vec![
        "J".to_string(),
        "b0".into(),
        "H1".into(),
        "n_J".into(),
        "Gen".into(),
        "tight".into(),
    ]];
    for row in &r.rows {
        rows.push(vec![
            row.set.to_string(),
            row.reduced_b0.to_string(),
            row.h1.to_string(),
            row.multiplicity.to_string(),
            row.cycles.to_string(),
            yes_no(row.tight).into(),
        ]);
    }
    write_table(w, &rows)?;
    writeln!(w)?;
    writeln!(w, "N = {}", r.generators)?;
    writeln!(w, "M- = {}", r.relations_lower)?;
    writeln!(w, "M+cert = {}", r.relations_upper)?;
    writeln!(
        w,
        "deficiency in [{}, {}]",
        bound_text(&r.deficiency_low),
        bound_text(&r.deficiency_high)
    )?;
    writeln!(w, "M+cert exact: {}", yes_no(r.tight))
}

pub fn bounds_json<W: Write>(w: &mut W, r: &BoundsReport) -> io::Result<()> {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "J": set_json(row.set),
                "b0": row.reduced_b0,
                "H1": row.h1.to_string(),
                "n_J": row.multiplicity,
                "gen": row.cycles,
                "tight": row.tight,
            })
        })
        .collect();
    let doc = json!({
        "N": r.generators,
        "M_minus": r.relations_lower,
        "M_plus_cert": r.relations_upper,
        "deficiency": [bound_json(&r.deficiency_low), bound_json(&r.deficiency_high)],
        "tight": r.tight,
        "rows": rows,
    });
    serde_json::to_writer(&mut *w, &doc)?;
    writeln!(w)
}

pub fn verify_text<W: Write>(w: &mut W, r: &cartk::VerifyReport, cap: usize) -> io::Result<()> {
    writeln!(
        w,
        "{}: {} template(s), {} instance(s) checked, {} template(s) skipped (max size {cap})",
        if r.passed() { "PASS" } else { "FAIL" },
        r.templates,
        r.instances_checked,
        r.templates_skipped
    )?;
    if r.stand_in {
        writeln!(w, "note: infinite vertex groups were evaluated as Z/3")?;
    }
    for f in &r.failures {
        match &f.g {
            Some(g) => {
                let g: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                writeln!(w, "  J = {}, cycle {}, g = ({}): {}", f.set, f.cycle, g.join(","), f.reason)?
            }
            None => writeln!(w, "  J = {}, cycle {}: {}", f.set, f.cycle, f.reason)?,
        }
    }
    Ok(())
}

pub fn verify_json<W: Write>(w: &mut W, r: &cartk::VerifyReport, cap: usize) -> io::Result<()> {
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| {
            json!({
                "J": set_json(f.set),
                "cycle": f.cycle.vertices(),
                "g": f.g,
                "reason": f.reason,
            })
        })
        .collect();
    let doc = json!({
        "passed": r.passed(),
        "templates": r.templates,
        "instances_checked": r.instances_checked,
        "templates_skipped": r.templates_skipped,
        "max_verify_size": cap,
        "stand_in": r.stand_in,
        "failures": failures,
    });
    serde_json::to_writer(&mut *w, &doc)?;
    writeln!(w)
}

pub struct CycleReport<'a> {
    pub m: usize,
    pub batch: &'a ReducedBatch,
    pub expected: Option<u64>,
    pub seconds: f64,
    pub stats: bool,
    pub word: bool,
}

impl CycleReport<'_> {
    fn length(&self) -> usize {
        self.batch.words[0].len()
    }

    fn matches(&self) -> bool {
        self.expected == Some(self.length() as u64)
    }

    fn rendered(&self) -> String {
        let parts: Vec<String> = self.batch.words[0]
            .letters()
            .iter()
            .map(|l| {
                let s = self.batch.symbols[l.symbol as usize].render(self.m);
                if l.inverse {
                    format!("{s}^-1")
                } else {
                    s
                }
            })
            .collect();
        parts.join(" ")
    }

    pub fn text<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "m = {}", self.m)?;
        writeln!(w, "length = {}", self.length())?;
        match self.expected {
            Some(e) => writeln!(w, "4g(m) = {e}")?,
            None => writeln!(w, "4g(m) = overflow")?,
        }
        writeln!(w, "match = {}", yes_no(self.matches()))?;
        writeln!(w, "time = {:.3} s", self.seconds)?;
        if self.stats {
            writeln!(w, "generators used = {}", self.batch.symbols.len())?;
            writeln!(w, "balanced = {}", yes_no(self.batch.words[0].is_balanced()))?;
        }
        if self.word {
            writeln!(w, "{}", self.rendered())?;
        }
        Ok(())
    }

    pub fn json<W: Write>(&self, w: &mut W) -> io::Result<()> {
        let mut doc = json!({
            "m": self.m,
            "length": self.length(),
            "expected": self.expected,
            "match": self.matches(),
            "seconds": self.seconds,
        });
        if self.stats {
            doc["generators_used"] = json!(self.batch.symbols.len());
            doc["balanced"] = json!(self.batch.words[0].is_balanced());
        }
        if self.word {
            doc["word"] = json!(self.rendered());
        }
        serde_json::to_writer(&mut *w, &doc)?;
        writeln!(w)
    }
}

pub struct HomologyReport<'a> {
    rows: &'a [SubsetHomology],
    multiplicities: Vec<Count>,
    sums: [GroupSum; 4],
}

impl<'a> HomologyReport<'a> {
    pub fn new(spec: &GroupSpec, rows: &'a [SubsetHomology]) -> Self {
        let mut sums: [GroupSum; 4] = Default::default();
        let mut multiplicities = Vec::with_capacity(rows.len());
        for row in rows {
            let n = spec.multiplicity(row.set);
            sums[0].add(&row.h0, &Count::one());
            sums[1].add(&row.h1, &Count::one());
            sums[2].add(&row.h0, &n);
            sums[3].add(&row.h1, &n);
            multiplicities.push(n);
        }
        HomologyReport {
            rows,
            multiplicities,
            sums,
        }
    }

    fn nontrivial(&self) -> impl Iterator<Item = (&SubsetHomology, &Count)> {
        self.rows
            .iter()
            .zip(&self.multiplicities)
            .filter(|(r, _)| !r.h0.is_trivial() || !r.h1.is_trivial())
    }

    pub fn text<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "H1(R_K) = {}", self.sums[0])?;
        writeln!(w, "H2(R_K) = {}", self.sums[1])?;
        writeln!(w, "H1(Cart) = {}", self.sums[2])?;
        writeln!(w, "H2(Cart) = {}", self.sums[3])?;
        writeln!(w)?;
        let mut table = vec![vec!["J".to_string(), "H0".into(), "H1".into(), "n_J".into()]];
        for (r, n) in self.nontrivial() {
            table.push(vec![r.set.to_string(), r.h0.to_string(), r.h1.to_string(), n.to_string()]);
        }
        write_table(w, &table)
    }

    pub fn json<W: Write>(&self, w: &mut W) -> io::Result<()> {
        let rows: Vec<Value> = self
            .nontrivial()
            .map(|(r, n)| {
                json!({
                    "J": set_json(r.set),
                    "H0": r.h0.to_string(),
                    "H1": r.h1.to_string(),
                    "n_J": n,
                })
            })
            .collect();
        let doc = json!({
            "H1_RK": self.sums[0].to_string(),
            "H2_RK": self.sums[1].to_string(),
            "H1_cart": self.sums[2].to_string(),
            "H2_cart": self.sums[3].to_string(),
            "rows": rows,
        });
        serde_json::to_writer(&mut *w, &doc)?;
        writeln!(w)
    }
}
