//! Multi-dimensional citation impact indicators for citation networks.
//!
//! Besides the citation count of a publication, the indicators describe how
//! strongly its citers cite each other (depth versus breadth) and how
//! strongly they also cite the publication's own references (dependence
//! versus independence).
//!
//! ```
//! use citeimpact::{build_graph, compute_indicators};
//!
//! let edges = [("c1", "f"), ("c2", "f"), ("c2", "c1")];
//! let (graph, _report) = build_graph(edges, std::iter::empty()).unwrap();
//! let f = graph.id_of("f").unwrap();
//! let rec = compute_indicators(&graph, f).unwrap();
//! assert_eq!((rec.cp, rec.tr_citing, rec.mr_citing), (2, 1, Some(0.5)));
//! ```

pub mod error;
pub mod export;
pub mod graph;
pub mod indicators;
pub mod intersect;
pub mod io;
pub mod stats;
pub mod synth;

pub use error::{Error, Result};
pub use graph::{build_graph, CitationGraph, GraphBuilder, PubId, PublicationMeta, ValidationReport};
pub use indicators::{
    batch_compute, batch_compute_sequential, citer_profile, compute_indicators, profile_distribution,
    CiterProfile, Indicator, IndicatorRecord, Side,
};
#[cfg(feature = "parallel")]
pub use indicators::batch_compute_parallel;
pub use stats::{RecordTable, SummaryStats};
