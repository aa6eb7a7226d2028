//! Byte-stable renderings of tables and reports.
//!
//! CSV fields and JSON leaves hold decimal strings (arbitrary-precision
//! values do not fit JSON numbers); JSON objects are emitted with sorted
//! keys; all line endings are LF. Equal inputs render to equal bytes.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::classify::{Principal, ReversalInfo, SequenceClass, TypeCounts};
use crate::inverse::{CycleAnalysis, DensityReport, GeneratorResidue, GrowthRow};
use crate::structure::{GeneratedSequence, ParityWord};
use crate::tables::{
    ChromoformMatrix, Decomposition, FractionalChromologue, ProlongedChromologue, StructuralMatrix,
};
use crate::{Natural, Rational};

pub const DEFAULT_DECIMAL_DIGITS: usize = 20;

/// Fixed-point decimal rendering of an exact rational, round half to
/// even at the given digit count. Rendering only; nothing downstream
/// consumes the decimal form.
pub fn decimal_string(r: &Rational, digits: usize) -> String {
    let scale = BigUint::from(10u8).pow(u32::try_from(digits).expect("digit count fits u32"));
    let num = r.numer().magnitude() * &scale;
    let den = r.denom().magnitude();
    let (mut q, rem) = num.div_rem(den);
    match (rem * 2u8).cmp(den) {
        std::cmp::Ordering::Less => {}
        std::cmp::Ordering::Greater => q += 1u8,
        std::cmp::Ordering::Equal => {
            if q.bit(0) {
                q += 1u8;
            }
        }
    }
    let int_part = &q / &scale;
    let mut out = String::new();
    if r.is_negative() && !q.is_zero() {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = (&q % &scale).to_string();
        out.push('.');
        for _ in frac.len()..digits {
            out.push('0');
        }
        out.push_str(&frac);
    }
    out
}

pub fn rational_json(r: &Rational) -> Value {
    json!({
        "num": r.numer().to_string(),
        "den": r.denom().to_string(),
    })
}

fn finish_json(value: Value) -> String {
    let mut out = serde_json::to_string_pretty(&value).expect("in-memory serialization");
    out.push('\n');
    out
}

fn csv_from_records<I, R>(records: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut writer = csv::Writer::from_writer(Vec::new());
    for record in records {
        writer.write_record(record).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn sequence_record(row: &GeneratedSequence) -> Vec<String> {
    let mut record = Vec::with_capacity(row.len() + 1);
    record.push(row.generator().to_string());
    record.extend(row.terms().iter().map(|t| t.to_string()));
    record
}

fn sequence_json(row: &GeneratedSequence) -> Value {
    json!({
        "generator": row.generator().to_string(),
        "terms": row.terms().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "preterm": row.preterm().to_string(),
    })
}

fn glyph_grid<'a>(
    labeled_words: impl Iterator<Item = (&'a Natural, ParityWord)>,
    one: char,
    zero: char,
) -> String {
    let rows: Vec<(String, ParityWord)> = labeled_words.map(|(g, w)| (g.to_string(), w)).collect();
    let width = rows.iter().map(|(g, _)| g.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (generator, word) in rows {
        for _ in generator.len()..width {
            out.push(' ');
        }
        out.push_str(&generator);
        out.push(' ');
        out.push_str(&crate::structure::render_chromatic_with(&word, one, zero));
        out.push('\n');
    }
    out
}

pub fn chromoform_csv(m: &ChromoformMatrix) -> String {
    csv_from_records(m.rows().iter().map(sequence_record))
}

pub fn chromoform_json(m: &ChromoformMatrix) -> String {
    finish_json(json!({
        "first": m.first().to_string(),
        "order": m.order(),
        "rows": m.rows().iter().map(sequence_json).collect::<Vec<_>>(),
    }))
}

pub fn chromoform_text(m: &ChromoformMatrix, one: char, zero: char) -> String {
    glyph_grid(
        m.rows().iter().map(|r| (r.generator(), r.word())),
        one,
        zero,
    )
}

fn structural_generators(s: &StructuralMatrix, first: &Natural) -> Vec<Natural> {
    (0..s.row_count())
        .map(|j| first + Natural::from(2 * j as u64))
        .collect()
}

/// The generator column is not stored in a structural matrix; it is
/// rebuilt from the first term of the generating progression.
pub fn structural_csv(s: &StructuralMatrix, first: &Natural) -> String {
    let generators = structural_generators(s, first);
    csv_from_records(generators.iter().zip(s.words()).map(|(g, word)| {
        let mut record = Vec::with_capacity(word.len() + 1);
        record.push(g.to_string());
        record.extend(word.bits().iter().map(|b| b.to_string()));
        record
    }))
}

pub fn structural_json(s: &StructuralMatrix, first: &Natural) -> String {
    let generators = structural_generators(s, first);
    let rows: Vec<Value> = generators
        .iter()
        .zip(s.words())
        .map(|(g, word)| {
            json!({
                "generator": g.to_string(),
                "word": word.to_string(),
            })
        })
        .collect();
    finish_json(json!({
        "first": first.to_string(),
        "order": s.order(),
        "rows": rows,
    }))
}

pub fn structural_text(s: &StructuralMatrix, first: &Natural, one: char, zero: char) -> String {
    let generators = structural_generators(s, first);
    glyph_grid(generators.iter().zip(s.words()), one, zero)
}

pub fn chromologue_csv(h: &FractionalChromologue) -> String {
    csv_from_records(h.rows().iter().map(sequence_record))
}

pub fn chromologue_json(h: &FractionalChromologue) -> String {
    finish_json(json!({
        "fundamental": h.fundamental().to_string(),
        "order": h.order(),
        "word": h.characteristic_word().to_string(),
        "rows": h.rows().iter().map(sequence_json).collect::<Vec<_>>(),
    }))
}

pub fn chromologue_text(h: &FractionalChromologue, one: char, zero: char) -> String {
    glyph_grid(
        h.rows().iter().map(|r| (r.generator(), r.word())),
        one,
        zero,
    )
}

pub fn prolonged_csv(p: &ProlongedChromologue) -> String {
    csv_from_records(p.rows().iter().map(sequence_record))
}

pub fn prolonged_json(p: &ProlongedChromologue) -> String {
    let mut value = json!({
        "fundamental": p.fundamental().to_string(),
        "base_order": p.base_order(),
        "extension": p.extension(),
        "rows": p.rows().iter().map(sequence_json).collect::<Vec<_>>(),
    });
    if p.extension() >= 1 {
        let suffixes: Vec<Value> = p
            .suffix_structural()
            .words()
            .iter()
            .map(|w| Value::String(w.to_string()))
            .collect();
        value["suffix_words"] = Value::Array(suffixes);
    }
    finish_json(value)
}

pub fn prolonged_text(p: &ProlongedChromologue, one: char, zero: char) -> String {
    glyph_grid(
        p.rows().iter().map(|r| (r.generator(), r.word())),
        one,
        zero,
    )
}

pub fn decomposition_csv(d: &Decomposition) -> String {
    let labeled = d
        .even_t1
        .rows()
        .iter()
        .map(|r| ("even", r))
        .chain(d.odd_t1.rows().iter().map(|r| ("odd", r)));
    csv_from_records(labeled.map(|(label, row)| {
        let mut record = vec![label.to_string()];
        record.extend(sequence_record(row));
        record
    }))
}

pub fn decomposition_json(d: &Decomposition) -> String {
    finish_json(json!({
        "order": d.even_t1.order(),
        "even_t1": d.even_t1.rows().iter().map(sequence_json).collect::<Vec<_>>(),
        "odd_t1": d.odd_t1.rows().iter().map(sequence_json).collect::<Vec<_>>(),
    }))
}

pub fn decomposition_text(d: &Decomposition, one: char, zero: char) -> String {
    let mut out = String::from("even T1\n");
    out.push_str(&glyph_grid(
        d.even_t1.rows().iter().map(|r| (r.generator(), r.word())),
        one,
        zero,
    ));
    out.push_str("odd T1\n");
    out.push_str(&glyph_grid(
        d.odd_t1.rows().iter().map(|r| (r.generator(), r.word())),
        one,
        zero,
    ));
    out
}

pub fn polychromoform_csv(blocks: &[ChromoformMatrix]) -> String {
    let records = blocks.iter().enumerate().flat_map(|(i, block)| {
        block.rows().iter().map(move |row| {
            let mut record = vec![(i + 1).to_string()];
            record.extend(sequence_record(row));
            record
        })
    });
    csv_from_records(records)
}

pub fn polychromoform_json(blocks: &[ChromoformMatrix]) -> String {
    let rendered: Vec<Value> = blocks
        .iter()
        .map(|block| {
            json!({
                "first": block.first().to_string(),
                "rows": block.rows().iter().map(sequence_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    finish_json(json!({
        "order": blocks.first().map(|b| b.order()).unwrap_or(0),
        "blocks": rendered,
    }))
}

pub fn sequence_class_json(p: &Natural, n: u64, class: &SequenceClass) -> String {
    finish_json(json!({
        "generator": p.to_string(),
        "order": n,
        "principal": class.principal.to_string(),
        "growth": class.growth.to_string(),
        "b_subtype": class.b_subtype.map(|s| s.to_string()),
    }))
}

pub fn word_class_json(
    word: &ParityWord,
    principal: Principal,
    info: Option<&ReversalInfo>,
) -> String {
    finish_json(json!({
        "word": word.to_string(),
        "order": word.len() as u64,
        "principal": principal.to_string(),
        "threshold": info.map(|i| rational_json(&i.threshold)),
    }))
}

pub fn counts_json(c: &TypeCounts, digits: usize) -> String {
    finish_json(json!({
        "order": c.order,
        "a": c.a.to_string(),
        "b": c.b.to_string(),
        "r_A": rational_json(&c.r_a),
        "r_B": rational_json(&c.r_b),
        "decimal_r_A": decimal_string(&c.r_a, digits),
    }))
}

pub fn trend_csv(rows: &[TypeCounts], digits: usize) -> String {
    let header = ["order", "a", "b", "r_A_decimal"].map(String::from);
    let records = std::iter::once(header.to_vec()).chain(rows.iter().map(|c| {
        vec![
            c.order.to_string(),
            c.a.to_string(),
            c.b.to_string(),
            decimal_string(&c.r_a, digits),
        ]
    }));
    csv_from_records(records)
}

pub fn trend_json(rows: &[TypeCounts], digits: usize) -> String {
    let rendered: Vec<Value> = rows
        .iter()
        .map(|c| {
            json!({
                "order": c.order,
                "a": c.a.to_string(),
                "b": c.b.to_string(),
                "r_A": rational_json(&c.r_a),
                "r_B": rational_json(&c.r_b),
                "decimal_r_A": decimal_string(&c.r_a, digits),
            })
        })
        .collect();
    finish_json(Value::Array(rendered))
}

pub fn reversal_json(fundamental: &Natural, order: u64, info: &ReversalInfo) -> String {
    finish_json(json!({
        "fundamental": fundamental.to_string(),
        "order": order,
        "threshold": rational_json(&info.threshold),
        "i_max": info.i_max,
        "p_i_max": info.p_i_max.as_ref().map(|p| p.to_string()),
    }))
}

pub fn residue_json(word: &ParityWord, r: &GeneratorResidue) -> String {
    finish_json(json!({
        "word": word.to_string(),
        "log2_modulus": r.log2_modulus(),
        "modulus": r.modulus().to_string(),
        "residue": r.residue().to_string(),
        "minimal": r.minimal().to_string(),
    }))
}

pub fn growth_csv(rows: &[GrowthRow]) -> String {
    let header = ["k", "length", "minimal_generator"].map(String::from);
    let records = std::iter::once(header.to_vec()).chain(
        rows.iter()
            .map(|r| vec![r.k.to_string(), r.length.to_string(), r.minimal.to_string()]),
    );
    csv_from_records(records)
}

pub fn growth_json(rows: &[GrowthRow]) -> String {
    let rendered: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "k": r.k,
                "length": r.length,
                "minimal_generator": r.minimal.to_string(),
            })
        })
        .collect();
    finish_json(Value::Array(rendered))
}

pub fn cycle_json(c: &CycleAnalysis) -> String {
    finish_json(json!({
        "word": c.word.to_string(),
        "length": c.map.length(),
        "odd_count": c.map.odd_count(),
        "factor": rational_json(&c.map.principal()),
        "offset": rational_json(&c.map.offset().to_rational()),
        "fixed_point": c.fixed_point.as_ref().map(rational_json),
        "verdict": c.verdict.to_string(),
    }))
}

pub fn density_json(report: &DensityReport, digits: usize) -> String {
    finish_json(json!({
        "order": report.order,
        "r": rational_json(&report.ratio),
        "r_n": rational_json(&report.scaled),
        "p0": report.p0.to_string(),
        "z_plus": rational_json(&report.z_plus),
        "rho_plus": rational_json(&report.rho_plus),
        "lower_bound": rational_json(&report.lower_bound),
        "decimal_rho_plus": decimal_string(&report.rho_plus, digits),
    }))
}
