//! Brute-force reference implementation used by the integration and
//! acceptance tests. Works on raw token edge lists with nested linear scans
//! and shares no code with the engine.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Distinct non-loop edges in input order.
pub fn clean_edges(edges: &[(String, String)]) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (c, f) in edges {
        if c != f && !out.iter().any(|(a, b)| a == c && b == f) {
            out.push((c.clone(), f.clone()));
        }
    }
    out
}

pub fn citers(edges: &[(String, String)], f: &str) -> Vec<String> {
    edges.iter().filter(|(_, t)| t == f).map(|(c, _)| c.clone()).collect()
}

pub fn references(edges: &[(String, String)], f: &str) -> Vec<String> {
    edges.iter().filter(|(c, _)| c == f).map(|(_, t)| t.clone()).collect()
}

/// (r_citing, r_cited) of citer `c` for focal `f`.
pub fn profile(edges: &[(String, String)], f: &str, c: &str) -> (u64, u64) {
    let cs = citers(edges, f);
    let rs = references(edges, f);
    let mut r_citing = 0;
    let mut r_cited = 0;
    for (src, dst) in edges {
        if src != c {
            continue;
        }
        if cs.iter().any(|x| x == dst) {
            r_citing += 1;
        }
        if rs.iter().any(|x| x == dst) {
            r_cited += 1;
        }
    }
    (r_citing, r_cited)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRecord {
    pub counts: [u64; 7],
    pub relative: [Option<f64>; 6],
}

/// Counts in order cp, cp_rciting_eq0, cp_rciting_gt0, tr_citing,
/// cp_rcited_eq0, cp_rcited_gt0, tr_cited; relative in order
/// pcp_rciting_eq0, pcp_rciting_gt0, mr_citing, pcp_rcited_eq0,
/// pcp_rcited_gt0, mr_cited.
pub fn record(edges: &[(String, String)], f: &str) -> OracleRecord {
    let cs = citers(edges, f);
    let cp = cs.len() as u64;
    let (mut ceq0, mut tr_citing, mut deq0, mut tr_cited) = (0u64, 0u64, 0u64, 0u64);
    for c in &cs {
        let (a, b) = profile(edges, f, c);
        if a == 0 {
            ceq0 += 1;
        }
        if b == 0 {
            deq0 += 1;
        }
        tr_citing += a;
        tr_cited += b;
    }
    let rel = |x: u64| if cp == 0 { None } else { Some(x as f64 / cp as f64) };
    OracleRecord {
        counts: [cp, ceq0, cp - ceq0, tr_citing, deq0, cp - deq0, tr_cited],
        relative: [
            rel(ceq0),
            rel(cp - ceq0),
            rel(tr_citing),
            rel(deq0),
            rel(cp - deq0),
            rel(tr_cited),
        ],
    }
}

pub fn engine_as_oracle(r: &citeimpact::IndicatorRecord) -> OracleRecord {
    OracleRecord {
        counts: [
            r.cp,
            r.cp_rciting_eq0,
            r.cp_rciting_gt0,
            r.tr_citing,
            r.cp_rcited_eq0,
            r.cp_rcited_gt0,
            r.tr_cited,
        ],
        relative: [
            r.pcp_rciting_eq0,
            r.pcp_rciting_gt0,
            r.mr_citing,
            r.pcp_rcited_eq0,
            r.pcp_rcited_gt0,
            r.mr_cited,
        ],
    }
}

/// Exact counts, relative values within `tol`, undefined on both sides.
pub fn matches(a: &OracleRecord, b: &OracleRecord, tol: f64) -> bool {
    a.counts == b.counts
        && a.relative.iter().zip(&b.relative).all(|(x, y)| match (x, y) {
            (None, None) => true,
            (Some(x), Some(y)) => (x - y).abs() <= tol,
            _ => false,
        })
}

/// Random edge list over `n` tokens `v0..`. Acyclic graphs only point from
/// higher to lower index. Duplicates and (for cyclic graphs) self-loops
/// are left in to exercise cleaning.
pub fn random_edges(seed: u64, n: usize, density: f64, acyclic: bool) -> Vec<(String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for c in 0..n {
        for f in 0..n {
            if acyclic && f >= c {
                continue;
            }
            if rng.gen_bool(density) {
                edges.push((format!("v{c}"), format!("v{f}")));
                if rng.gen_bool(0.05) {
                    edges.push((format!("v{c}"), format!("v{f}")));
                }
            }
        }
    }
    // shuffle so interning order differs from numeric order
    for i in (1..edges.len()).rev() {
        let j = rng.gen_range(0..=i);
        edges.swap(i, j);
    }
    edges
}

/// The Figure 1 style star: five citers of `A`, pairs among them oriented
/// by `mask` (bit k set means the higher-numbered citer of pair k cites the
/// lower one).
pub fn oriented_star(mask: u32) -> Vec<(String, String)> {
    let mut edges: Vec<(String, String)> = (1..=5).map(|i| (format!("A{i}"), "A".to_string())).collect();
    let mut k = 0;
    for j in 1..=5 {
        for i in 1..j {
            let (hi, lo) = (format!("A{j}"), format!("A{i}"));
            if mask >> k & 1 == 1 {
                edges.push((hi, lo));
            } else {
                edges.push((lo, hi));
            }
            k += 1;
        }
    }
    edges
}

/// Whether the orientation encoded by `mask` has a directed cycle.
pub fn star_is_acyclic(mask: u32) -> bool {
    // A tournament is acyclic iff its out-degrees are a permutation of 0..n.
    let edges = oriented_star(mask);
    let mut outdeg = [0usize; 6];
    for (c, f) in &edges {
        if f != "A" {
            outdeg[c[1..].parse::<usize>().unwrap()] += 1;
        }
    }
    let mut d: Vec<usize> = outdeg[1..].to_vec();
    d.sort_unstable();
    d == [0, 1, 2, 3, 4]
}

pub fn fixture(name: &str) -> Vec<(String, String)> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()))
        .lines()
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (a, b) = l.split_once('\t').unwrap();
            (a.to_string(), b.to_string())
        })
        .collect()
}

pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}
