//! The `node,betweenness` CSV format.

use std::cmp::Ordering;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::graph::NodeLabels;
use crate::metrics::Ranking;
use crate::numeric::{parse_score, rational_to_f64, Scores};

pub const HEADER: [&str; 2] = ["node", "betweenness"];

/// Node ids by decreasing score, ties by ascending label.
pub fn output_order(labels: &NodeLabels, scores: &Scores) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    let by_label = |i: usize, j: usize| labels.label(i as u32).cmp(labels.label(j as u32));
    match scores {
        Scores::Exact(v) => idx.sort_by(|&i, &j| v[j].cmp(&v[i]).then_with(|| by_label(i, j))),
        Scores::Fast(v) => idx.sort_by(|&i, &j| {
            v[j].partial_cmp(&v[i]).unwrap_or(Ordering::Equal).then_with(|| by_label(i, j))
        }),
    }
    idx
}

pub fn write_csv<W: Write>(out: W, labels: &NodeLabels, scores: &Scores) -> Result<()> {
    if labels.len() != scores.len() {
        return Err(Error::Input("score vector and label map differ in length".into()));
    }
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Input(format!("writing CSV: {e}"));
    w.write_record(HEADER).map_err(io)?;
    for i in output_order(labels, scores) {
        w.write_record([labels.label(i as u32), &scores.format(i)]).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Input(format!("writing CSV: {e}")))?;
    Ok(())
}

pub fn to_csv_string(labels: &NodeLabels, scores: &Scores) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, labels, scores).expect("writing to memory");
    String::from_utf8(buf).expect("labels are UTF-8")
}

/// Reads a score CSV into a ranking; values may be integers, `p/q` or decimals.
pub fn read_csv<R: Read>(input: R) -> Result<Ranking> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = r
        .headers()
        .map_err(|e| Error::parse(1, e.to_string()))?
        .clone();
    if header.iter().collect::<Vec<_>>() != HEADER {
        return Err(Error::parse(1, format!("expected header node,betweenness, found {:?}", header.as_slice())));
    }
    let mut entries = Vec::new();
    for (k, rec) in r.records().enumerate() {
        let line = k + 2;
        let rec = rec.map_err(|e| Error::parse(line, e.to_string()))?;
        if rec.len() != 2 {
            return Err(Error::parse(line, format!("expected 2 fields, found {}", rec.len())));
        }
        let value = parse_score(&rec[1]).ok_or_else(|| Error::parse(line, format!("bad score {:?}", &rec[1])))?;
        entries.push((rec[0].to_string(), rational_to_f64(&value)));
    }
    Ranking::new(entries)
}
