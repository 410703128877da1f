//! Edge-list and metadata TSV formats.
//!
//! Edge list: one `citing<TAB>cited` pair per line, `#` comment lines, no
//! header. Metadata: header `id year group doctype` (tab separated), empty
//! field means absent.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{CitationGraph, GraphBuilder, PublicationMeta, ValidationReport, MAX_YEAR, MIN_YEAR};

pub const META_HEADER: &str = "id\tyear\tgroup\tdoctype";

fn strip_eol(line: &str) -> &str {
    line.strip_suffix('\r').unwrap_or(line)
}

/// Streams an edge list into `builder`. Blank lines are skipped.
pub fn read_edges<R: BufRead>(mut reader: R, builder: &mut GraphBuilder) -> Result<()> {
    let mut buf = String::new();
    let mut lineno = 0usize;
    loop {
        buf.clear();
        if reader.read_line(&mut buf)? == 0 {
            break;
        }
        lineno += 1;
        let line = strip_eol(buf.strip_suffix('\n').unwrap_or(&buf));
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split('\t');
        let (Some(citing), Some(cited), None) = (cols.next(), cols.next(), cols.next()) else {
            return Err(Error::parse(
                lineno,
                format!("expected 2 tab-separated columns, got {}", line.split('\t').count()),
            ));
        };
        if citing.is_empty() || cited.is_empty() {
            return Err(Error::parse(lineno, "empty publication token"));
        }
        builder.add_edge(citing, cited)?;
    }
    Ok(())
}

/// Parses a metadata file into `(id, meta)` rows. `#` lines before or
/// after the header are ignored.
pub fn read_meta<R: BufRead>(reader: R) -> Result<Vec<(String, PublicationMeta)>> {
    let mut rows = Vec::new();
    let mut header_seen = false;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let line = strip_eol(&line);
        if line.starts_with('#') || (line.is_empty() && !header_seen) {
            continue;
        }
        if !header_seen {
            if line != META_HEADER {
                return Err(Error::parse(
                    lineno,
                    "metadata header must be `id<TAB>year<TAB>group<TAB>doctype`",
                ));
            }
            header_seen = true;
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 4 {
            return Err(Error::parse(
                lineno,
                format!("expected 4 tab-separated columns, got {}", cols.len()),
            ));
        }
        if cols[0].is_empty() {
            return Err(Error::parse(lineno, "empty publication token"));
        }
        let year = match cols[1] {
            "" => None,
            y => {
                let y: i32 = y
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad year `{y}`")))?;
                if !(MIN_YEAR..=MAX_YEAR).contains(&y) {
                    return Err(Error::parse(
                        lineno,
                        format!("year {y} outside [{MIN_YEAR}, {MAX_YEAR}]"),
                    ));
                }
                Some(y)
            }
        };
        let opt = |s: &str| (!s.is_empty()).then(|| s.to_owned());
        rows.push((
            cols[0].to_owned(),
            PublicationMeta {
                year,
                group: opt(cols[2]),
                doctype: opt(cols[3]),
            },
        ));
    }
    Ok(rows)
}

/// Reads an edge list and optional metadata file into a graph.
pub fn load_graph<E: BufRead, M: BufRead>(
    edges: E,
    meta: Option<M>,
) -> Result<(CitationGraph, ValidationReport)> {
    let mut builder = GraphBuilder::new();
    read_edges(edges, &mut builder)?;
    if let Some(meta) = meta {
        for (id, m) in read_meta(meta)? {
            builder.add_meta(&id, m)?;
        }
    }
    Ok(builder.finish())
}

/// Writes the graph's edges in canonical order (see
/// [`CitationGraph::canonical_edges`]).
pub fn write_edges<W: Write>(graph: &CitationGraph, mut out: W) -> Result<()> {
    for (c, f) in graph.canonical_edges() {
        writeln!(out, "{}\t{}", graph.token(c), graph.token(f))?;
    }
    Ok(())
}

/// Writes one metadata row per publication carrying metadata, in index order.
pub fn write_meta<W: Write>(graph: &CitationGraph, mut out: W) -> Result<()> {
    writeln!(out, "{META_HEADER}")?;
    for id in graph.ids() {
        if let Some(m) = graph.meta(id) {
            write_meta_row(&mut out, graph.token(id), m)?;
        }
    }
    Ok(())
}

pub(crate) fn write_meta_row<W: Write>(out: &mut W, token: &str, m: &PublicationMeta) -> Result<()> {
    let year = m.year.map(|y| y.to_string()).unwrap_or_default();
    writeln!(
        out,
        "{}\t{}\t{}\t{}",
        token,
        year,
        m.group.as_deref().unwrap_or(""),
        m.doctype.as_deref().unwrap_or("")
    )?;
    Ok(())
}
