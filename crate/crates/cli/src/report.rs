use std::io::Write;

use kleitman_core::io::FamilyDoc;
use kleitman_core::survey::{Survey, SurveyRecord};

pub const SURVEY_HELP: &str = "\
Classify every maximal intersecting family of P([n]) (1 <= n <= 6).

JSON output (default): one record per line, followed by a final
{\"summary\": {\"n\", \"total\", \"empty_minimal\", \"central\"}} line.

CSV output (--format csv) has a header row and the fixed columns
  family,canonical,class_size,intersecting,self_dual,subset_closed,
  superset_closed,maximal_intersecting,central,empty_minimal,
  witness_axis,witness_from,c,micros
where family and canonical are member masks separated by spaces in
(size, mask) order, witness_from is a mask, and c lists the star
coefficient numerators over n!. The summary goes to stderr.

Records are sorted by family bitset (by canonical bitset with
--canonical), so output is identical for every --jobs value.";

#[derive(serde::Serialize)]
struct SummaryLine<'a> {
    summary: &'a kleitman_core::survey::SurveySummary,
}

pub fn write_survey_jsonl(out: &mut dyn Write, survey: &Survey) -> anyhow::Result<()> {
    for r in &survey.records {
        writeln!(out, "{}", serde_json::to_string(r)?)?;
    }
    writeln!(
        out,
        "{}",
        serde_json::to_string(&SummaryLine {
            summary: &survey.summary
        })?
    )?;
    Ok(())
}

fn masks(doc: &FamilyDoc) -> String {
    let n = doc.n;
    let sets = doc.sets.as_deref().unwrap_or_default();
    sets.iter()
        .map(|s| {
            debug_assert!(s.iter().all(|&l| l <= n));
            s.iter().fold(0u32, |m, &l| m | 1 << (l - 1)).to_string()
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn row(r: &SurveyRecord) -> Vec<String> {
    let opt = |v: Option<String>| v.unwrap_or_default();
    vec![
        masks(&r.family),
        masks(&r.canonical),
        opt(r.class_size.map(|k| k.to_string())),
        r.flags.intersecting.to_string(),
        r.flags.self_dual.to_string(),
        r.flags.subset_closed.to_string(),
        r.flags.superset_closed.to_string(),
        r.flags.maximal_intersecting.to_string(),
        r.flags.central.to_string(),
        r.empty_minimal.to_string(),
        opt(r.witness.map(|w| w.axis.to_string())),
        opt(r.witness.map(|w| w.from.bits().to_string())),
        opt(r
            .c
            .as_ref()
            .map(|c| c.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))),
        opt(r.micros.map(|t| t.to_string())),
    ]
}

pub const CSV_COLUMNS: [&str; 14] = [
    "family",
    "canonical",
    "class_size",
    "intersecting",
    "self_dual",
    "subset_closed",
    "superset_closed",
    "maximal_intersecting",
    "central",
    "empty_minimal",
    "witness_axis",
    "witness_from",
    "c",
    "micros",
];

pub fn write_survey_csv(out: &mut dyn Write, survey: &Survey) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in &survey.records {
        w.write_record(row(r))?;
    }
    w.flush()?;
    Ok(())
}
