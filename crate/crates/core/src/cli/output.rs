//! Rendering of results as aligned tables, JSON and CSV.

use std::fmt::Display;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{Failure, Format};
use crate::indis::{GenTrace, IndisMap, RefTrace};
use crate::meter::{format_weights, Arity, MeterClass, MeterSeq};
use crate::relkit::{NatSet, PartialMap};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Ref,
    Gen,
}

impl Algorithm {
    pub fn id(&self) -> &'static str {
        match self {
            Algorithm::Ref => "ref",
            Algorithm::Gen => "gen",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Trace {
    Ref(RefTrace),
    Gen(GenTrace),
}

// Derived untagged deserialization buffers map keys as strings, which then
// fail to parse as positions; going through a JSON value keeps them usable.
impl<'de> Deserialize<'de> for Trace {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let value = serde_json::Value::deserialize(deserializer)?;
        if value.get("initial").is_some() {
            serde_json::from_value(value).map(Trace::Ref).map_err(D::Error::custom)
        } else {
            serde_json::from_value(value).map(Trace::Gen).map_err(D::Error::custom)
        }
    }
}

/// One algorithm's result for one meter; the JSON schema of `compute`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema: u32,
    pub input: Vec<usize>,
    pub i: usize,
    pub a: usize,
    pub class: MeterClass,
    pub algorithm: Algorithm,
    pub indispensability: Vec<usize>,
    pub priority_order: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Trace>,
}

impl OutputRecord {
    pub fn new(meter: &MeterSeq, arity: Arity, algorithm: Algorithm, map: &IndisMap, trace: Option<Trace>) -> Self {
        OutputRecord {
            schema: SCHEMA_VERSION,
            input: meter.weights().as_slice().to_vec(),
            i: arity.min,
            a: arity.max,
            class: meter.class(),
            algorithm,
            indispensability: map.values().as_slice().to_vec(),
            priority_order: map.priority_order().positions().as_slice().to_vec(),
            trace,
        }
    }
}

fn verdict_text(agree: bool) -> &'static str {
    if agree {
        "AGREE"
    } else {
        "DISAGREE"
    }
}

pub(super) fn write_records(
    out: &mut dyn Write,
    records: &[OutputRecord],
    verdict: Option<bool>,
    format: Format,
    base: u8,
) -> Result<(), Failure> {
    match format {
        Format::Json => {
            let text = match verdict {
                None => serde_json::to_string(&records[0]),
                Some(agree) => serde_json::to_string(&serde_json::json!({
                    "schema": SCHEMA_VERSION,
                    "verdict": verdict_text(agree),
                    "records": records,
                })),
            }
            .map_err(|e| Failure::input(format!("serialization failed: {e}")))?;
            writeln!(out, "{text}")?;
        }
        Format::Csv => {
            for record in records {
                if verdict.is_some() {
                    writeln!(out, "# algorithm={}", record.algorithm.id())?;
                }
                write_csv(out, record, base)?;
            }
            if let Some(agree) = verdict {
                writeln!(out, "# verdict={}", verdict_text(agree))?;
            }
        }
        Format::Table => write_table(out, records, verdict, base)?,
    }
    Ok(())
}

fn write_csv(out: &mut dyn Write, record: &OutputRecord, base: u8) -> Result<(), Failure> {
    let mut writer = csv::Writer::from_writer(&mut *out);
    let csv_err = |e: csv::Error| Failure::input(format!("csv output failed: {e}"));
    writer
        .write_record(["position", "weight", "indispensability"])
        .map_err(csv_err)?;
    for (pos, (weight, value)) in record.input.iter().zip(&record.indispensability).enumerate() {
        writer
            .write_record([
                (pos + usize::from(base)).to_string(),
                weight.to_string(),
                value.to_string(),
            ])
            .map_err(csv_err)?;
    }
    writer.flush()?;
    Ok(())
}

/// Right-aligned columns under a left-aligned label.
fn aligned_rows(rows: &[(String, Vec<String>)]) -> Vec<String> {
    let label_width = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
    let columns = rows.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|k| {
            rows.iter()
                .filter_map(|(_, c)| c.get(k))
                .map(|s| s.len())
                .max()
                .unwrap_or(0)
        })
        .collect();
    rows.iter()
        .map(|(label, cells)| {
            let mut line = format!("{label:<label_width$}");
            for (cell, width) in cells.iter().zip(&widths) {
                line.push_str(&format!("  {cell:>width$}"));
            }
            line
        })
        .collect()
}

fn cells<T: Display>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

fn write_table(out: &mut dyn Write, records: &[OutputRecord], verdict: Option<bool>, base: u8) -> Result<(), Failure> {
    let Some(first) = records.first() else {
        return Ok(());
    };
    let shift = usize::from(base);
    writeln!(out, "class: {} (i={}, a={})", first.class, first.i, first.a)?;
    let mut rows = vec![
        ("position".to_string(), cells((0..first.input.len()).map(|p| p + shift))),
        ("weight".to_string(), cells(&first.input)),
    ];
    for record in records {
        rows.push((record.algorithm.id().to_string(), cells(&record.indispensability)));
    }
    for record in records {
        rows.push((
            format!("order ({})", record.algorithm.id()),
            cells(record.priority_order.iter().map(|p| p + shift)),
        ));
    }
    for line in aligned_rows(&rows) {
        writeln!(out, "{line}")?;
    }
    if let Some(agree) = verdict {
        writeln!(out, "verdict: {}", verdict_text(agree))?;
    }
    for record in records {
        match &record.trace {
            Some(Trace::Ref(trace)) => write_ref_trace(out, trace)?,
            Some(Trace::Gen(trace)) => write_gen_trace(out, trace)?,
            None => {}
        }
    }
    Ok(())
}

fn set_text(set: &NatSet) -> String {
    let items: Vec<String> = cells(set);
    format!("{{{}}}", items.join(","))
}

fn write_ref_trace(out: &mut dyn Write, trace: &RefTrace) -> Result<(), Failure> {
    writeln!(out, "trace (ref, 0-based positions)")?;
    writeln!(out, "  initial c = {}", trace.initial)?;
    for step in &trace.steps {
        writeln!(out, "  level f={}", step.level)?;
        writeln!(out, "    F  = {}", set_text(&step.focus))?;
        writeln!(out, "    G  = {}", set_text(&step.reached))?;
        writeln!(out, "    H  = {}", step.successor)?;
        writeln!(out, "    J  = {}", step.copied)?;
        writeln!(out, "    K  = {}", step.second_of_three)?;
        writeln!(out, "    L  = {}", step.compacted)?;
        writeln!(out, "    combine(c, J) = {}", step.combined)?;
        writeln!(out, "    c' = {}", step.result)?;
    }
    Ok(())
}

fn write_gen_trace(out: &mut dyn Write, trace: &GenTrace) -> Result<(), Failure> {
    writeln!(out, "trace (gen, 0-based positions)")?;
    writeln!(out, "  top pulses = {}", trace.top_pulses)?;
    writeln!(out, "  start      = {}", trace.start)?;
    for step in &trace.steps {
        writeln!(out, "  level f={}", step.level)?;
        writeln!(out, "    T = {}", set_text(&step.same_level))?;
        writeln!(out, "    U = {}", set_text(&step.next_level))?;
        writeln!(out, "    V = {}", set_text(&step.candidates))?;
        writeln!(out, "    X = {}", step.predecessors)?;
        writeln!(out, "    S = {}", step.order)?;
    }
    Ok(())
}

pub(super) fn write_descent(
    out: &mut dyn Write,
    result: &PartialMap,
    trace: Option<&RefTrace>,
    format: Format,
) -> Result<(), Failure> {
    match format {
        Format::Json => {
            let text = serde_json::to_string(&serde_json::json!({
                "schema": SCHEMA_VERSION,
                "result": result,
                "trace": trace,
            }))
            .map_err(|e| Failure::input(format!("serialization failed: {e}")))?;
            writeln!(out, "{text}")?;
        }
        Format::Csv => {
            writeln!(out, "position,indispensability")?;
            for (pos, value) in result.iter() {
                writeln!(out, "{pos},{value}")?;
            }
        }
        Format::Table => {
            writeln!(out, "result = {result}")?;
            if let Some(seq) = result.to_sequence() {
                writeln!(out, "indispensability = {}", format_weights(&seq))?;
            }
            if let Some(trace) = trace {
                write_ref_trace(out, trace)?;
            }
        }
    }
    Ok(())
}
