//! Per-citer profiles and the thirteen citation impact indicators.
//!
//! For a focal publication `f` with citers `C` and in-graph references `R`,
//! every citer `c` gets two counts:
//!
//! * `r_citing(c) = |references(c) ∩ C|`, how many other citers of `f` it cites;
//! * `r_cited(c)  = |references(c) ∩ R|`, how many references of `f` it also cites.
//!
//! The level of impact is `cp = |C|`. Depth/breadth indicators summarise the
//! `r_citing` distribution, dependence/independence indicators the `r_cited`
//! distribution. Relative indicators divide by `cp` and are undefined when
//! `cp = 0`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{CitationGraph, PubId};
use crate::intersect::intersection_count;

/// The two per-citer counts for one citer of a focal publication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CiterProfile {
    pub citer: PubId,
    pub r_citing: u32,
    pub r_cited: u32,
}

/// Which per-citer count to look at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Citing,
    Cited,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Citing => "r_citing",
            Side::Cited => "r_cited",
        }
    }

    pub fn of(self, p: &CiterProfile) -> u32 {
        match self {
            Side::Citing => p.r_citing,
            Side::Cited => p.r_cited,
        }
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r_citing" => Ok(Side::Citing),
            "r_cited" => Ok(Side::Cited),
            other => Err(Error::InvalidParams(format!(
                "side must be r_citing or r_cited, got `{other}`"
            ))),
        }
    }
}

/// All indicators of one publication. `None` marks an undefined relative
/// indicator (the publication has no citations); it is never conflated with 0.
#[derive(Clone, Debug, PartialEq)]
pub struct IndicatorRecord {
    pub pub_id: PubId,
    pub cp: u64,
    pub cp_rciting_eq0: u64,
    pub cp_rciting_gt0: u64,
    pub tr_citing: u64,
    pub pcp_rciting_eq0: Option<f64>,
    pub pcp_rciting_gt0: Option<f64>,
    pub mr_citing: Option<f64>,
    pub cp_rcited_eq0: u64,
    pub cp_rcited_gt0: u64,
    pub tr_cited: u64,
    pub pcp_rcited_eq0: Option<f64>,
    pub pcp_rcited_gt0: Option<f64>,
    pub mr_cited: Option<f64>,
}

/// Running totals over the citers of one focal publication.
#[derive(Clone, Copy, Debug, Default)]
struct Tally {
    cp: u64,
    citing_gt0: u64,
    tr_citing: u64,
    cited_gt0: u64,
    tr_cited: u64,
}

impl Tally {
    #[inline]
    fn push(&mut self, r_citing: u32, r_cited: u32) {
        self.cp += 1;
        self.citing_gt0 += u64::from(r_citing > 0);
        self.tr_citing += u64::from(r_citing);
        self.cited_gt0 += u64::from(r_cited > 0);
        self.tr_cited += u64::from(r_cited);
    }

    fn finish(self, pub_id: PubId) -> IndicatorRecord {
        let cp = self.cp;
        let ratio = |x: u64| (cp > 0).then(|| x as f64 / cp as f64);
        IndicatorRecord {
            pub_id,
            cp,
            cp_rciting_eq0: cp - self.citing_gt0,
            cp_rciting_gt0: self.citing_gt0,
            tr_citing: self.tr_citing,
            pcp_rciting_eq0: ratio(cp - self.citing_gt0),
            pcp_rciting_gt0: ratio(self.citing_gt0),
            mr_citing: ratio(self.tr_citing),
            cp_rcited_eq0: cp - self.cited_gt0,
            cp_rcited_gt0: self.cited_gt0,
            tr_cited: self.tr_cited,
            pcp_rcited_eq0: ratio(cp - self.cited_gt0),
            pcp_rcited_gt0: ratio(self.cited_gt0),
            mr_cited: ratio(self.tr_cited),
        }
    }
}

impl IndicatorRecord {
    /// Aggregates a profile distribution into a record.
    pub fn from_profiles(pub_id: PubId, profiles: &[CiterProfile]) -> Self {
        let mut t = Tally::default();
        for p in profiles {
            t.push(p.r_citing, p.r_cited);
        }
        t.finish(pub_id)
    }

    pub fn get(&self, indicator: Indicator) -> Option<f64> {
        indicator.value(self)
    }
}

#[inline]
fn profile_unchecked(g: &CitationGraph, citers: &[PubId], refs: &[PubId], c: PubId) -> CiterProfile {
    // f itself is among references(c) but belongs to neither set.
    let rc = g.references_of(c);
    CiterProfile {
        citer: c,
        r_citing: intersection_count(rc, citers) as u32,
        r_cited: intersection_count(rc, refs) as u32,
    }
}

/// Profile of citer `c` with respect to focal publication `f`.
pub fn citer_profile(g: &CitationGraph, f: PubId, c: PubId) -> Result<CiterProfile> {
    g.check(f)?;
    g.check(c)?;
    let citers = g.citers_of(f);
    if citers.binary_search(&c).is_err() {
        return Err(Error::NotACiter {
            focal: f.index(),
            citer: c.index(),
        });
    }
    Ok(profile_unchecked(g, citers, g.references_of(f), c))
}

/// One profile per citer of `f`, in citer index order.
pub fn profile_distribution(g: &CitationGraph, f: PubId) -> Result<Vec<CiterProfile>> {
    g.check(f)?;
    let citers = g.citers_of(f);
    let refs = g.references_of(f);
    Ok(citers
        .iter()
        .map(|&c| profile_unchecked(g, citers, refs, c))
        .collect())
}

pub fn compute_indicators(g: &CitationGraph, f: PubId) -> Result<IndicatorRecord> {
    g.check(f)?;
    Ok(record_unchecked(g, f))
}

fn record_unchecked(g: &CitationGraph, f: PubId) -> IndicatorRecord {
    let citers = g.citers_of(f);
    let refs = g.references_of(f);
    let mut t = Tally::default();
    for &c in citers {
        let p = profile_unchecked(g, citers, refs, c);
        t.push(p.r_citing, p.r_cited);
    }
    t.finish(f)
}

/// Publications with at least `min_cp` citations, in index order.
pub fn focal_set(g: &CitationGraph, min_cp: u64) -> Vec<PubId> {
    g.ids()
        .filter(|&f| g.citers_of(f).len() as u64 >= min_cp)
        .collect()
}

/// Records for every publication with `cp >= min_cp`, ordered by index.
///
/// Uses the current rayon pool when the `parallel` feature is on. The output
/// does not depend on the number of threads.
pub fn batch_compute(g: &CitationGraph, min_cp: u64) -> Vec<IndicatorRecord> {
    #[cfg(feature = "parallel")]
    {
        batch_compute_parallel(g, min_cp)
    }
    #[cfg(not(feature = "parallel"))]
    {
        batch_compute_sequential(g, min_cp)
    }
}

pub fn batch_compute_sequential(g: &CitationGraph, min_cp: u64) -> Vec<IndicatorRecord> {
    focal_set(g, min_cp)
        .into_iter()
        .map(|f| record_unchecked(g, f))
        .collect()
}

#[cfg(feature = "parallel")]
pub fn batch_compute_parallel(g: &CitationGraph, min_cp: u64) -> Vec<IndicatorRecord> {
    use rayon::prelude::*;

    focal_set(g, min_cp)
        .into_par_iter()
        .with_max_len(64)
        .map(|f| record_unchecked(g, f))
        .collect()
}

/// The thirteen indicators, in export column order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indicator {
    Cp,
    CpRcitingEq0,
    CpRcitingGt0,
    TrCiting,
    PcpRcitingEq0,
    PcpRcitingGt0,
    MrCiting,
    CpRcitedEq0,
    CpRcitedGt0,
    TrCited,
    PcpRcitedEq0,
    PcpRcitedGt0,
    MrCited,
}

impl Indicator {
    pub const ALL: [Indicator; 13] = [
        Indicator::Cp,
        Indicator::CpRcitingEq0,
        Indicator::CpRcitingGt0,
        Indicator::TrCiting,
        Indicator::PcpRcitingEq0,
        Indicator::PcpRcitingGt0,
        Indicator::MrCiting,
        Indicator::CpRcitedEq0,
        Indicator::CpRcitedGt0,
        Indicator::TrCited,
        Indicator::PcpRcitedEq0,
        Indicator::PcpRcitedGt0,
        Indicator::MrCited,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Indicator::Cp => "cp",
            Indicator::CpRcitingEq0 => "cp_rciting_eq0",
            Indicator::CpRcitingGt0 => "cp_rciting_gt0",
            Indicator::TrCiting => "tr_citing",
            Indicator::PcpRcitingEq0 => "pcp_rciting_eq0",
            Indicator::PcpRcitingGt0 => "pcp_rciting_gt0",
            Indicator::MrCiting => "mr_citing",
            Indicator::CpRcitedEq0 => "cp_rcited_eq0",
            Indicator::CpRcitedGt0 => "cp_rcited_gt0",
            Indicator::TrCited => "tr_cited",
            Indicator::PcpRcitedEq0 => "pcp_rcited_eq0",
            Indicator::PcpRcitedGt0 => "pcp_rcited_gt0",
            Indicator::MrCited => "mr_cited",
        }
    }

    /// Relative indicators are undefined for uncited publications.
    pub fn is_relative(self) -> bool {
        matches!(
            self,
            Indicator::PcpRcitingEq0
                | Indicator::PcpRcitingGt0
                | Indicator::MrCiting
                | Indicator::PcpRcitedEq0
                | Indicator::PcpRcitedGt0
                | Indicator::MrCited
        )
    }

    pub fn value(self, r: &IndicatorRecord) -> Option<f64> {
        let count = |x: u64| Some(x as f64);
        match self {
            Indicator::Cp => count(r.cp),
            Indicator::CpRcitingEq0 => count(r.cp_rciting_eq0),
            Indicator::CpRcitingGt0 => count(r.cp_rciting_gt0),
            Indicator::TrCiting => count(r.tr_citing),
            Indicator::PcpRcitingEq0 => r.pcp_rciting_eq0,
            Indicator::PcpRcitingGt0 => r.pcp_rciting_gt0,
            Indicator::MrCiting => r.mr_citing,
            Indicator::CpRcitedEq0 => count(r.cp_rcited_eq0),
            Indicator::CpRcitedGt0 => count(r.cp_rcited_gt0),
            Indicator::TrCited => count(r.tr_cited),
            Indicator::PcpRcitedEq0 => r.pcp_rcited_eq0,
            Indicator::PcpRcitedGt0 => r.pcp_rcited_gt0,
            Indicator::MrCited => r.mr_cited,
        }
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Indicator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Indicator::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::UnknownIndicator(s.to_owned()))
    }
}
