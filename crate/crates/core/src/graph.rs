//! Immutable citation graph with sorted in- and out-adjacency.
//!
//! Publications are interned to dense [`PubId`]s in first-appearance order.
//! Both directions are stored in compressed sparse row form so that the
//! citers and the references of any publication are contiguous sorted slices.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Dense publication index in `[0, N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PubId(pub u32);

impl PubId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PubId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub const MIN_YEAR: i32 = 1000;
pub const MAX_YEAR: i32 = 3000;

/// Per-publication metadata. Every field is optional.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PublicationMeta {
    pub year: Option<i32>,
    pub group: Option<String>,
    pub doctype: Option<String>,
}

/// Tallies of everything dropped or flagged while building a graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub duplicate_edges_dropped: u64,
    pub self_loops_dropped: u64,
    /// Kept edges whose citing year precedes the cited year.
    pub temporal_violations: u64,
    pub unknown_meta_ids: u64,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "duplicate_edges_dropped={} self_loops_dropped={} temporal_violations={} unknown_meta_ids={}",
            self.duplicate_edges_dropped,
            self.self_loops_dropped,
            self.temporal_violations,
            self.unknown_meta_ids
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<PubId>,
}

impl Csr {
    /// `pairs` must be sorted by (source, target) and free of duplicates.
    fn from_sorted_pairs(n: usize, pairs: impl Iterator<Item = (u32, u32)> + Clone) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for (s, _) in pairs.clone() {
            offsets[s as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut targets = Vec::with_capacity(offsets[n]);
        targets.extend(pairs.map(|(_, t)| PubId(t)));
        Csr { offsets, targets }
    }

    /// Transpose of `self`. Rows of the result come out sorted because the
    /// sources are visited in ascending order.
    fn transpose(&self, n: usize) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for t in &self.targets {
            offsets[t.index() + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![PubId(0); self.targets.len()];
        for s in 0..n {
            for &t in self.row(s) {
                targets[cursor[t.index()]] = PubId(s as u32);
                cursor[t.index()] += 1;
            }
        }
        Csr { offsets, targets }
    }

    #[inline]
    fn row(&self, i: usize) -> &[PubId] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }
}

/// Immutable bidirectional citation graph.
///
/// `references(f)` holds the publications cited by `f` and `citers(f)` the
/// publications citing `f`, both sorted ascending with no duplicates and no
/// self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CitationGraph {
    tokens: Vec<String>,
    index: HashMap<String, PubId>,
    references: Csr,
    citers: Csr,
    meta: Vec<Option<PublicationMeta>>,
}

impl CitationGraph {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.references.targets.len()
    }

    pub fn ids(&self) -> impl ExactSizeIterator<Item = PubId> + Clone {
        (0..self.len() as u32).map(PubId)
    }

    pub fn check(&self, id: PubId) -> Result<()> {
        if id.index() < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: id.index(),
                len: self.len(),
            })
        }
    }

    /// Publications citing `f`. The length is the citation count of `f`.
    pub fn citers(&self, f: PubId) -> Result<&[PubId]> {
        self.check(f)?;
        Ok(self.citers.row(f.index()))
    }

    /// Publications cited by `f` that are part of the graph.
    pub fn references(&self, f: PubId) -> Result<&[PubId]> {
        self.check(f)?;
        Ok(self.references.row(f.index()))
    }

    #[inline]
    pub(crate) fn citers_of(&self, f: PubId) -> &[PubId] {
        self.citers.row(f.index())
    }

    #[inline]
    pub(crate) fn references_of(&self, f: PubId) -> &[PubId] {
        self.references.row(f.index())
    }

    pub fn citation_count(&self, f: PubId) -> Result<usize> {
        self.citers(f).map(<[PubId]>::len)
    }

    pub fn token(&self, id: PubId) -> &str {
        &self.tokens[id.index()]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn id_of(&self, token: &str) -> Option<PubId> {
        self.index.get(token).copied()
    }

    pub fn meta(&self, id: PubId) -> Option<&PublicationMeta> {
        self.meta.get(id.index()).and_then(Option::as_ref)
    }

    pub fn group(&self, id: PubId) -> Option<&str> {
        self.meta(id).and_then(|m| m.group.as_deref())
    }

    pub fn has_meta(&self) -> bool {
        self.meta.iter().any(Option::is_some)
    }

    /// All edges as `(citing, cited)` in an order that, fed back to a
    /// [`GraphBuilder`], reproduces the same dense indices.
    ///
    /// Publications with no edges cannot be expressed in an edge list and
    /// only survive a round trip through the metadata file.
    pub fn canonical_edges(&self) -> Vec<(PubId, PubId)> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(self.edge_count());
        let mut used: Vec<(PubId, PubId)> = Vec::new();

        // Introduce publications in index order. Each one first appeared in
        // an edge towards an earlier publication, or in an edge to the very
        // next index.
        for k in 0..n {
            if seen[k] {
                continue;
            }
            let id = PubId(k as u32);
            let refs = self.references.row(k);
            let cits = self.citers.row(k);
            let edge = if refs.first().is_some_and(|r| r.index() < k) {
                Some((id, refs[0]))
            } else if cits.first().is_some_and(|c| c.index() < k) {
                Some((cits[0], id))
            } else if k + 1 < n && refs.binary_search(&PubId(k as u32 + 1)).is_ok() {
                Some((id, PubId(k as u32 + 1)))
            } else if k + 1 < n && cits.binary_search(&PubId(k as u32 + 1)).is_ok() {
                // Only reachable when tokens were interned outside edge
                // order; the index order is then not reproducible.
                Some((PubId(k as u32 + 1), id))
            } else if let Some(&r) = refs.first() {
                Some((id, r))
            } else {
                cits.first().map(|&c| (c, id))
            };
            seen[k] = true;
            if let Some((a, b)) = edge {
                seen[a.index()] = true;
                seen[b.index()] = true;
                out.push((a, b));
                used.push((a, b));
            }
        }
        used.sort_unstable();
        for c in 0..n {
            for &r in self.references.row(c) {
                let e = (PubId(c as u32), r);
                if used.binary_search(&e).is_err() {
                    out.push(e);
                }
            }
        }
        out
    }
}

/// Single-writer builder for [`CitationGraph`].
///
/// Tokens are interned in the order they are first passed in, whether via
/// an edge or a metadata row.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    tokens: Vec<String>,
    index: HashMap<String, PubId>,
    edges: Vec<(u32, u32)>,
    in_edges: Vec<bool>,
    meta: Vec<Option<PublicationMeta>>,
    self_loops: u64,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(pubs: usize, edges: usize) -> Self {
        GraphBuilder {
            tokens: Vec::with_capacity(pubs),
            index: HashMap::with_capacity(pubs),
            edges: Vec::with_capacity(edges),
            in_edges: Vec::with_capacity(pubs),
            meta: Vec::new(),
            self_loops: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn intern(&mut self, token: &str) -> Result<PubId> {
        if token.is_empty() {
            return Err(Error::InvalidParams("empty publication token".into()));
        }
        if let Some(&id) = self.index.get(token) {
            return Ok(id);
        }
        let id = PubId(
            u32::try_from(self.tokens.len())
                .map_err(|_| Error::InvalidParams("too many publications".into()))?,
        );
        self.tokens.push(token.to_owned());
        self.index.insert(token.to_owned(), id);
        self.in_edges.push(false);
        Ok(id)
    }

    pub fn add_edge(&mut self, citing: &str, cited: &str) -> Result<()> {
        let c = self.intern(citing)?;
        let f = self.intern(cited)?;
        self.add_edge_ids(c, f);
        Ok(())
    }

    /// Both ids must come from [`GraphBuilder::intern`] on this builder.
    pub fn add_edge_ids(&mut self, citing: PubId, cited: PubId) {
        self.in_edges[citing.index()] = true;
        self.in_edges[cited.index()] = true;
        if citing == cited {
            self.self_loops += 1;
        } else {
            self.edges.push((citing.0, cited.0));
        }
    }

    /// Attaches metadata to `token`. Repeating an identical row is allowed;
    /// a row that disagrees with an earlier one is an error.
    pub fn add_meta(&mut self, token: &str, meta: PublicationMeta) -> Result<()> {
        if let Some(y) = meta.year {
            if !(MIN_YEAR..=MAX_YEAR).contains(&y) {
                return Err(Error::InvalidParams(format!(
                    "year {y} outside [{MIN_YEAR}, {MAX_YEAR}]"
                )));
            }
        }
        let id = self.intern(token)?;
        if self.meta.len() <= id.index() {
            self.meta.resize(id.index() + 1, None);
        }
        match &self.meta[id.index()] {
            Some(existing) if *existing != meta => Err(Error::MetaConflict {
                id: token.to_owned(),
            }),
            Some(_) => Ok(()),
            None => {
                self.meta[id.index()] = Some(meta);
                Ok(())
            }
        }
    }

    pub fn finish(self) -> (CitationGraph, ValidationReport) {
        let GraphBuilder {
            tokens,
            index,
            mut edges,
            in_edges,
            mut meta,
            self_loops,
        } = self;
        let n = tokens.len();

        let before = edges.len();
        edges.sort_unstable();
        edges.dedup();
        let duplicates = (before - edges.len()) as u64;

        let references = Csr::from_sorted_pairs(n, edges.iter().copied());
        drop(edges);
        let citers = references.transpose(n);

        meta.resize(n, None);
        let year = |i: usize| meta[i].as_ref().and_then(|m| m.year);
        let mut temporal = 0u64;
        if meta.iter().any(|m| m.as_ref().is_some_and(|m| m.year.is_some())) {
            for c in 0..n {
                let Some(yc) = year(c) else { continue };
                temporal += references
                    .row(c)
                    .iter()
                    .filter(|f| year(f.index()).is_some_and(|yf| yc < yf))
                    .count() as u64;
            }
        }
        let unknown_meta = meta
            .iter()
            .zip(&in_edges)
            .filter(|(m, &seen)| m.is_some() && !seen)
            .count() as u64;

        let report = ValidationReport {
            duplicate_edges_dropped: duplicates,
            self_loops_dropped: self_loops,
            temporal_violations: temporal,
            unknown_meta_ids: unknown_meta,
        };
        let graph = CitationGraph {
            tokens,
            index,
            references,
            citers,
            meta,
        };
        (graph, report)
    }
}

/// Builds a graph from an edge stream followed by an optional metadata
/// stream. Edge tokens are interned before metadata tokens.
pub fn build_graph<E, S, M>(edges: E, meta: M) -> Result<(CitationGraph, ValidationReport)>
where
    E: IntoIterator<Item = (S, S)>,
    S: AsRef<str>,
    M: IntoIterator<Item = (String, PublicationMeta)>,
{
    let mut b = GraphBuilder::new();
    for (citing, cited) in edges {
        b.add_edge(citing.as_ref(), cited.as_ref())?;
    }
    for (id, m) in meta {
        b.add_meta(&id, m)?;
    }
    Ok(b.finish())
}
