//! CSV and JSON serialisation of indicator records and statistics.
//!
//! CSV reals use six significant digits (C `%g` style) and undefined values
//! are empty fields. JSON uses the same field names with `null` for
//! undefined values.

use std::io::{Read, Write};

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graph::PubId;
use crate::indicators::{Indicator, IndicatorRecord};
use crate::stats::{CdfSeries, GroupSummaryTable, Histogram, RankTable, RecordTable, Scatter};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidParams(format!("unknown format `{other}`"))),
        }
    }
}

pub fn record_header() -> Vec<&'static str> {
    std::iter::once("pub_id")
        .chain(Indicator::ALL.iter().map(|i| i.name()))
        .collect()
}

/// Formats a real with six significant digits, trailing zeros removed.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (5 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_real).unwrap_or_default()
}

fn record_fields(token: &str, r: &IndicatorRecord) -> Vec<String> {
    let mut row = Vec::with_capacity(14);
    row.push(token.to_owned());
    for ind in Indicator::ALL {
        let v = if ind.is_relative() {
            fmt_opt(ind.value(r))
        } else {
            // counts are exact integers
            ind.value(r).map(|v| (v as u64).to_string()).unwrap_or_default()
        };
        row.push(v);
    }
    row
}

fn record_json(token: &str, r: &IndicatorRecord) -> Value {
    let mut obj = Map::new();
    obj.insert("pub_id".into(), Value::from(token));
    for ind in Indicator::ALL {
        let v = if ind.is_relative() {
            ind.value(r).map_or(Value::Null, Value::from)
        } else {
            Value::from(ind.value(r).map(|v| v as u64))
        };
        obj.insert(ind.name().into(), v);
    }
    Value::Object(obj)
}

pub fn write_records<W: Write>(table: &RecordTable, format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(record_header())?;
            for (row, r) in table.records().iter().enumerate() {
                w.write_record(record_fields(table.token(row), r))?;
            }
            w.flush()?;
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .records()
                .iter()
                .enumerate()
                .map(|(row, r)| record_json(table.token(row), r))
                .collect();
            write_json(out, &rows)?;
        }
    }
    Ok(())
}

fn write_json<W: Write, T: Serialize + ?Sized>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Reads an indicator CSV as written by [`write_records`]. Records are
/// numbered by row, groups are left unset.
pub fn read_records<R: Read>(input: R) -> Result<RecordTable> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header != record_header() {
        return Err(Error::parse(1, "indicator CSV header does not match"));
    }
    let mut tokens = Vec::new();
    let mut records = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let line = i + 2;
        let count = |k: usize| -> Result<u64> {
            row[k]
                .parse()
                .map_err(|_| Error::parse(line, format!("bad count `{}` in column {}", &row[k], k + 1)))
        };
        let real = |k: usize| -> Result<Option<f64>> {
            match &row[k] {
                "" => Ok(None),
                s => s
                    .parse()
                    .map(Some)
                    .map_err(|_| Error::parse(line, format!("bad value `{s}` in column {}", k + 1))),
            }
        };
        tokens.push(row[0].to_owned());
        records.push(IndicatorRecord {
            pub_id: PubId(i as u32),
            cp: count(1)?,
            cp_rciting_eq0: count(2)?,
            cp_rciting_gt0: count(3)?,
            tr_citing: count(4)?,
            pcp_rciting_eq0: real(5)?,
            pcp_rciting_gt0: real(6)?,
            mr_citing: real(7)?,
            cp_rcited_eq0: count(8)?,
            cp_rcited_gt0: count(9)?,
            tr_cited: count(10)?,
            pcp_rcited_eq0: real(11)?,
            pcp_rcited_gt0: real(12)?,
            mr_cited: real(13)?,
        });
    }
    let groups = vec![None; records.len()];
    Ok(RecordTable::new(tokens, groups, records))
}

pub fn write_summary<W: Write>(table: &GroupSummaryTable, format: Format, out: W) -> Result<()> {
    let rows = table.rows();
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["group", "indicator", "n", "mean", "median"])?;
            for (g, ind, s) in rows {
                w.write_record([
                    g.to_owned(),
                    ind.name().to_owned(),
                    s.n.to_string(),
                    fmt_real(s.mean),
                    fmt_real(s.median),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .into_iter()
                .map(|(g, ind, s)| {
                    json!({"group": g, "indicator": ind.name(), "n": s.n, "mean": s.mean, "median": s.median})
                })
                .collect();
            write_json(out, &v)?;
        }
    }
    Ok(())
}

pub fn write_cdf<W: Write>(indicator: Indicator, series: &CdfSeries, format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([indicator.name(), "cumulative_fraction"])?;
            for &(v, f) in &series.points {
                w.write_record([fmt_real(v), fmt_real(f)])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let v: Vec<Value> = series
                .points
                .iter()
                .map(|&(v, f)| json!({"value": v, "cumulative_fraction": f}))
                .collect();
            write_json(out, &json!({"indicator": indicator.name(), "points": v}))?;
        }
    }
    Ok(())
}

pub fn write_rank<W: Write>(table: &RankTable, format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["rank"];
            header.extend(record_header());
            w.write_record(header)?;
            for row in &table.rows {
                let mut fields = vec![row.rank.to_string()];
                fields.extend(record_fields(&row.token, &row.record));
                w.write_record(fields)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let mut v = record_json(&row.token, &row.record);
                    v.as_object_mut()
                        .expect("object")
                        .insert("rank".into(), Value::from(row.rank));
                    v
                })
                .collect();
            write_json(out, &json!({"indicator": table.indicator.name(), "rows": rows}))?;
        }
    }
    Ok(())
}

pub fn write_scatter<W: Write>(
    s: &Scatter,
    x: Indicator,
    y: Indicator,
    format: Format,
    out: W,
) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["pub_id", x.name(), y.name()])?;
            for p in &s.points {
                w.write_record([p.token.clone(), fmt_real(p.x), fmt_real(p.y)])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let pts: Vec<Value> = s
                .points
                .iter()
                .map(|p| json!({"pub_id": p.token, x.name(): p.x, y.name(): p.y}))
                .collect();
            write_json(
                out,
                &json!({"x": x.name(), "y": y.name(), "omitted": s.omitted, "points": pts}),
            )?;
        }
    }
    Ok(())
}

/// Histogram CSV: `value,count` rows; the mean goes in a trailing
/// `# mean=` comment line (empty when undefined).
pub fn write_histogram<W: Write>(focal: &str, h: &Histogram, format: Format, mut out: W) -> Result<()> {
    match format {
        Format::Csv => {
            {
                let mut w = csv::Writer::from_writer(&mut out);
                w.write_record([h.side.name(), "count"])?;
                for &(v, c) in &h.bins {
                    w.write_record([v.to_string(), c.to_string()])?;
                }
                w.flush()?;
            }
            writeln!(out, "# mean={}", fmt_opt(h.mean))?;
        }
        Format::Json => {
            let bins: Vec<Value> = h
                .bins
                .iter()
                .map(|&(v, c)| json!({"value": v, "count": c}))
                .collect();
            write_json(
                out,
                &json!({"focal": focal, "side": h.side.name(), "mean": h.mean, "bins": bins}),
            )?;
        }
    }
    Ok(())
}
