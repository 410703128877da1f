//! Seeded synthetic citation networks with preferential attachment.
//!
//! Publications arrive one at a time. Publication `i` draws a Poisson
//! reference count and cites distinct earlier publications, each chosen
//! with probability proportional to `(in_degree + 1)^exponent`. Every edge
//! points backwards in time, so generated graphs are acyclic.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::graph::{CitationGraph, GraphBuilder, PubId, PublicationMeta, ValidationReport};
use crate::io::{write_meta_row, META_HEADER};

/// Generator name and version written to the provenance header. Bump the
/// version whenever the output for a given seed changes.
pub const GENERATOR: &str = "citeimpact-synth/1";
pub const RNG_NAME: &str = "ChaCha8Rng";

pub const FIRST_YEAR: i32 = 1980;
pub const LAST_YEAR: i32 = 2017;

#[derive(Clone, Debug, PartialEq)]
pub struct SynthParams {
    pub n_pubs: usize,
    pub refs_mean: f64,
    pub pref_attach_exponent: f64,
    pub n_groups: usize,
    pub seed: u64,
}

impl Default for SynthParams {
    fn default() -> Self {
        SynthParams {
            n_pubs: 1000,
            refs_mean: 20.0,
            pref_attach_exponent: 1.0,
            n_groups: 1,
            seed: 0,
        }
    }
}

impl SynthParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_pubs == 0 {
            return Err(Error::InvalidParams("n_pubs must be at least 1".into()));
        }
        if self.n_pubs > u32::MAX as usize {
            return Err(Error::InvalidParams("n_pubs too large".into()));
        }
        if !(self.refs_mean.is_finite() && self.refs_mean >= 0.0) {
            return Err(Error::InvalidParams("refs_mean must be a finite value >= 0".into()));
        }
        if !(self.pref_attach_exponent.is_finite() && self.pref_attach_exponent >= 0.0) {
            return Err(Error::InvalidParams("exponent must be a finite value >= 0".into()));
        }
        if self.n_groups == 0 {
            return Err(Error::InvalidParams("n_groups must be at least 1".into()));
        }
        Ok(())
    }
}

/// A generated network. Publication `i` has token `P{i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthGraph {
    pub params: SynthParams,
    /// `(citing, cited)` in emission order: citing ascending, then cited ascending.
    pub edges: Vec<(u32, u32)>,
}

impl SynthGraph {
    pub fn n_pubs(&self) -> usize {
        self.params.n_pubs
    }

    pub fn token(i: u32) -> String {
        format!("P{i}")
    }

    pub fn year(&self, i: u32) -> i32 {
        let span = (LAST_YEAR - FIRST_YEAR + 1) as u64;
        FIRST_YEAR + (u64::from(i) * span / self.params.n_pubs as u64) as i32
    }

    pub fn group(&self, i: u32) -> String {
        format!("G{}", i as usize % self.params.n_groups)
    }

    pub fn meta(&self, i: u32) -> PublicationMeta {
        PublicationMeta {
            year: Some(self.year(i)),
            group: Some(self.group(i)),
            doctype: Some("article".into()),
        }
    }

    pub fn provenance(&self) -> String {
        let p = &self.params;
        format!(
            "# generator={GENERATOR} rng={RNG_NAME} seed={} n_pubs={} refs_mean={} exponent={} groups={}",
            p.seed, p.n_pubs, p.refs_mean, p.pref_attach_exponent, p.n_groups
        )
    }

    pub fn write_edges<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{}", self.provenance())?;
        for &(c, f) in &self.edges {
            writeln!(out, "P{c}\tP{f}")?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_meta<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{}", self.provenance())?;
        writeln!(out, "{META_HEADER}")?;
        for i in 0..self.n_pubs() as u32 {
            write_meta_row(&mut out, &Self::token(i), &self.meta(i))?;
        }
        out.flush()?;
        Ok(())
    }

    /// The graph obtained by loading the written edge and metadata files,
    /// built without the text round trip.
    pub fn to_graph(&self) -> (CitationGraph, ValidationReport) {
        let n = self.n_pubs();
        let mut b = GraphBuilder::with_capacity(n, self.edges.len());
        let mut ids: Vec<Option<PubId>> = vec![None; n];
        let mut id = |b: &mut GraphBuilder, i: u32| -> PubId {
            *ids[i as usize]
                .get_or_insert_with(|| b.intern(&Self::token(i)).expect("non-empty token"))
        };
        for &(c, f) in &self.edges {
            let c = id(&mut b, c);
            let f = id(&mut b, f);
            b.add_edge_ids(c, f);
        }
        for i in 0..n as u32 {
            b.add_meta(&Self::token(i), self.meta(i))
                .expect("generated metadata is consistent");
        }
        b.finish()
    }
}

/// Fenwick tree over sampling weights.
struct WeightTree {
    tree: Vec<f64>,
}

impl WeightTree {
    fn new(n: usize) -> Self {
        WeightTree { tree: vec![0.0; n + 1] }
    }

    fn add(&mut self, i: usize, delta: f64) {
        let mut k = i + 1;
        while k < self.tree.len() {
            self.tree[k] += delta;
            k += k & k.wrapping_neg();
        }
    }

    /// Smallest index whose inclusive prefix sum exceeds `u`.
    fn find(&self, mut u: f64) -> usize {
        let n = self.tree.len() - 1;
        let mut pos = 0;
        let mut step = n.next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] <= u {
                pos = next;
                u -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}

enum Sampler {
    Uniform,
    /// Linear preference: an urn holding every publication once plus one
    /// entry per citation received.
    Urn(Vec<u32>),
    Weighted {
        tree: WeightTree,
        weights: Vec<f64>,
        in_degree: Vec<u32>,
        exponent: f64,
    },
}

impl Sampler {
    fn new(n: usize, exponent: f64) -> Self {
        if exponent == 0.0 {
            Sampler::Uniform
        } else if exponent == 1.0 {
            Sampler::Urn(Vec::new())
        } else {
            Sampler::Weighted {
                tree: WeightTree::new(n),
                weights: vec![0.0; n],
                in_degree: vec![0; n],
                exponent,
            }
        }
    }

    /// Picks `k < i` distinct publications among `0..i`, ascending.
    fn pick(&mut self, rng: &mut ChaCha8Rng, i: u32, k: usize, chosen: &mut Vec<u32>) {
        chosen.clear();
        match self {
            Sampler::Uniform => {
                while chosen.len() < k {
                    let j = rng.gen_range(0..i);
                    if !chosen.contains(&j) {
                        chosen.push(j);
                    }
                }
            }
            Sampler::Urn(urn) => {
                let total = i as usize + urn.len();
                while chosen.len() < k {
                    let r = rng.gen_range(0..total);
                    let j = if r < i as usize { r as u32 } else { urn[r - i as usize] };
                    if !chosen.contains(&j) {
                        chosen.push(j);
                    }
                }
            }
            Sampler::Weighted { tree, weights, .. } => {
                // Remove each pick from the tree so draws are without
                // replacement, then restore.
                while chosen.len() < k {
                    let total: f64 = tree_total(tree, i as usize);
                    let u = rng.gen::<f64>() * total;
                    let j = tree.find(u).min(i as usize - 1);
                    if weights[j] <= 0.0 {
                        continue;
                    }
                    tree.add(j, -weights[j]);
                    weights[j] = -weights[j];
                    chosen.push(j as u32);
                }
                for &j in chosen.iter() {
                    let w = -weights[j as usize];
                    weights[j as usize] = w;
                    tree.add(j as usize, w);
                }
            }
        }
        chosen.sort_unstable();
    }

    /// Registers publication `i` and the citations it just made.
    fn commit(&mut self, i: u32, cited: &[u32]) {
        match self {
            Sampler::Uniform => {}
            Sampler::Urn(urn) => urn.extend_from_slice(cited),
            Sampler::Weighted {
                tree,
                weights,
                in_degree,
                exponent,
            } => {
                for &j in cited {
                    let j = j as usize;
                    in_degree[j] += 1;
                    let w = (f64::from(in_degree[j]) + 1.0).powf(*exponent);
                    tree.add(j, w - weights[j]);
                    weights[j] = w;
                }
                weights[i as usize] = 1.0;
                tree.add(i as usize, 1.0);
            }
        }
    }
}

fn tree_total(tree: &WeightTree, upto: usize) -> f64 {
    // prefix sum over 0..upto
    let mut k = upto;
    let mut s = 0.0;
    while k > 0 {
        s += tree.tree[k];
        k &= k - 1;
    }
    s
}

pub fn generate(params: &SynthParams) -> Result<SynthGraph> {
    params.validate()?;
    let n = params.n_pubs;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let poisson = if params.refs_mean > 0.0 {
        Some(Poisson::new(params.refs_mean).map_err(|e| Error::InvalidParams(e.to_string()))?)
    } else {
        None
    };
    let mut sampler = Sampler::new(n, params.pref_attach_exponent);
    let mut edges = Vec::with_capacity((n as f64 * params.refs_mean * 1.01) as usize);
    let mut chosen = Vec::new();

    for i in 0..n as u32 {
        let drawn = poisson.as_ref().map_or(0, |p| p.sample(&mut rng) as usize);
        let k = drawn.min(i as usize);
        if k == i as usize {
            chosen.clear();
            chosen.extend(0..i);
        } else {
            sampler.pick(&mut rng, i, k, &mut chosen);
        }
        edges.extend(chosen.iter().map(|&j| (i, j)));
        sampler.commit(i, &chosen);
    }
    Ok(SynthGraph {
        params: params.clone(),
        edges,
    })
}
