//! Aggregation of indicator records: summaries per group, cumulative
//! distributions, top-n rankings, scatter pairs and per-citer histograms.
//!
//! Undefined relative values are left out of every statistic.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::CitationGraph;
use crate::indicators::{CiterProfile, Indicator, IndicatorRecord, Side};

/// Label of the column that pools every record.
pub const ALL_GROUP: &str = "ALL";

/// Indicator records together with the publication token and group label
/// of each record.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RecordTable {
    tokens: Vec<String>,
    groups: Vec<Option<String>>,
    records: Vec<IndicatorRecord>,
}

impl RecordTable {
    /// `tokens` and `groups` are parallel to `records`.
    pub fn new(tokens: Vec<String>, groups: Vec<Option<String>>, records: Vec<IndicatorRecord>) -> Self {
        assert_eq!(tokens.len(), records.len());
        assert_eq!(groups.len(), records.len());
        RecordTable {
            tokens,
            groups,
            records,
        }
    }

    pub fn from_graph(g: &CitationGraph, records: Vec<IndicatorRecord>) -> Self {
        let tokens = records.iter().map(|r| g.token(r.pub_id).to_owned()).collect();
        let groups = records
            .iter()
            .map(|r| g.group(r.pub_id).map(str::to_owned))
            .collect();
        RecordTable::new(tokens, groups, records)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[IndicatorRecord] {
        &self.records
    }

    pub fn token(&self, row: usize) -> &str {
        &self.tokens[row]
    }

    pub fn group(&self, row: usize) -> Option<&str> {
        self.groups[row].as_deref()
    }

    /// Replaces group labels using a token → group lookup.
    pub fn set_groups<'a>(&mut self, lookup: impl Fn(&str) -> Option<&'a str>) {
        for (tok, grp) in self.tokens.iter().zip(self.groups.iter_mut()) {
            *grp = lookup(tok).map(str::to_owned);
        }
    }

    pub fn values(&self, indicator: Indicator) -> Vec<Option<f64>> {
        self.records.iter().map(|r| indicator.value(r)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SummaryStats {
    pub n: usize,
    pub mean: f64,
    pub median: f64,
}

/// Mean and median. Even-length medians average the two central values.
pub fn summarize(values: &[f64]) -> Result<SummaryStats> {
    if values.is_empty() {
        return Err(Error::NoDefinedValues);
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    Ok(SummaryStats { n, mean, median })
}

/// [`summarize`] over possibly undefined values. Without `skip_undefined`
/// an undefined value is an error.
pub fn summarize_defined(values: &[Option<f64>], skip_undefined: bool) -> Result<SummaryStats> {
    if !skip_undefined && values.iter().any(Option::is_none) {
        return Err(Error::UndefinedValue);
    }
    let defined: Vec<f64> = values.iter().flatten().copied().collect();
    summarize(&defined)
}

/// Empirical cumulative distribution: one point per distinct value.
#[derive(Clone, Debug, PartialEq)]
pub struct CdfSeries {
    pub points: Vec<(f64, f64)>,
}

pub fn cdf(values: &[f64]) -> Result<CdfSeries> {
    if values.is_empty() {
        return Err(Error::NoDefinedValues);
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut points: Vec<(f64, f64)> = Vec::new();
    for (i, &v) in sorted.iter().enumerate() {
        let frac = (i + 1) as f64 / n;
        match points.last_mut() {
            Some(last) if last.0 == v => last.1 = frac,
            _ => points.push((v, frac)),
        }
    }
    // (i + 1) / n hits exactly 1.0 at i = n - 1
    Ok(CdfSeries { points })
}

/// Summary per (group, indicator) plus the pooled [`ALL_GROUP`] column.
/// Cells without any defined value are absent.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GroupSummaryTable {
    pub indicators: Vec<Indicator>,
    pub groups: Vec<String>,
    pub cells: BTreeMap<(String, Indicator), SummaryStats>,
    pub all: BTreeMap<Indicator, SummaryStats>,
}

impl GroupSummaryTable {
    pub fn cell(&self, group: &str, indicator: Indicator) -> Option<&SummaryStats> {
        if group == ALL_GROUP {
            self.all.get(&indicator)
        } else {
            self.cells.get(&(group.to_owned(), indicator))
        }
    }

    /// Rows of `(group, indicator, stats)`: groups in label order, then ALL.
    pub fn rows(&self) -> Vec<(&str, Indicator, SummaryStats)> {
        let mut out = Vec::new();
        for g in &self.groups {
            for &ind in &self.indicators {
                if let Some(s) = self.cells.get(&(g.clone(), ind)) {
                    out.push((g.as_str(), ind, *s));
                }
            }
        }
        for &ind in &self.indicators {
            if let Some(s) = self.all.get(&ind) {
                out.push((ALL_GROUP, ind, *s));
            }
        }
        out
    }
}

/// Records without a group label only enter the ALL column.
pub fn group_summaries(table: &RecordTable, indicators: &[Indicator]) -> GroupSummaryTable {
    let mut by_group: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for row in 0..table.len() {
        if let Some(g) = table.group(row) {
            by_group.entry(g).or_default().push(row);
        }
    }
    let mut out = GroupSummaryTable {
        indicators: indicators.to_vec(),
        groups: by_group.keys().map(|g| g.to_string()).collect(),
        ..Default::default()
    };
    for &ind in indicators {
        for (&g, rows) in &by_group {
            let vals: Vec<Option<f64>> = rows.iter().map(|&r| ind.value(&table.records[r])).collect();
            if let Ok(s) = summarize_defined(&vals, true) {
                out.cells.insert((g.to_owned(), ind), s);
            }
        }
        if let Ok(s) = summarize_defined(&table.values(ind), true) {
            out.all.insert(ind, s);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankRow {
    pub rank: usize,
    pub token: String,
    pub record: IndicatorRecord,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankTable {
    pub indicator: Indicator,
    pub rows: Vec<RankRow>,
}

/// Descending by value, undefined last, ties by ascending token.
fn rank_order(table: &RecordTable, indicator: Indicator, a: usize, b: usize) -> Ordering {
    let va = indicator.value(&table.records[a]);
    let vb = indicator.value(&table.records[b]);
    let by_value = match (va, vb) {
        (Some(x), Some(y)) => y.total_cmp(&x),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    };
    by_value.then_with(|| table.tokens[a].cmp(&table.tokens[b]))
}

/// The `n` highest-ranked records by `indicator`.
pub fn rank_top(table: &RecordTable, indicator: Indicator, n: usize) -> Result<RankTable> {
    if n == 0 {
        return Err(Error::InvalidParams("top must be at least 1".into()));
    }
    let mut order: Vec<usize> = (0..table.len()).collect();
    let cmp = |a: &usize, b: &usize| rank_order(table, indicator, *a, *b);
    if n < order.len() {
        order.select_nth_unstable_by(n - 1, cmp);
        order.truncate(n);
    }
    order.sort_unstable_by(cmp);
    let rows = order
        .into_iter()
        .enumerate()
        .map(|(i, row)| RankRow {
            rank: i + 1,
            token: table.tokens[row].clone(),
            record: table.records[row].clone(),
        })
        .collect();
    Ok(RankTable { indicator, rows })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScatterPoint {
    pub token: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Scatter {
    pub points: Vec<ScatterPoint>,
    /// Records left out because a coordinate was undefined.
    pub omitted: usize,
}

pub fn scatter(table: &RecordTable, x: Indicator, y: Indicator) -> Scatter {
    let mut out = Scatter::default();
    for (row, r) in table.records.iter().enumerate() {
        match (x.value(r), y.value(r)) {
            (Some(xv), Some(yv)) => out.points.push(ScatterPoint {
                token: table.tokens[row].clone(),
                x: xv,
                y: yv,
            }),
            _ => out.omitted += 1,
        }
    }
    out
}

/// Counts of each observed per-citer value, and their mean.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub side: Side,
    pub bins: Vec<(u32, u64)>,
    pub mean: Option<f64>,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.bins.iter().map(|&(v, c)| u64::from(v) * c).sum()
    }
}

pub fn histogram(profiles: &[CiterProfile], side: Side) -> Histogram {
    let mut bins: BTreeMap<u32, u64> = BTreeMap::new();
    let mut total = 0u64;
    for p in profiles {
        let v = side.of(p);
        *bins.entry(v).or_default() += 1;
        total += u64::from(v);
    }
    let mean = (!profiles.is_empty()).then(|| total as f64 / profiles.len() as f64);
    Histogram {
        side,
        bins: bins.into_iter().collect(),
        mean,
    }
}
