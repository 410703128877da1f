//! Times generation, graph construction and the indicator batch on a
//! synthetic network: `cargo run --release --example scale -- 1000000 20`.

use std::time::Instant;

use citeimpact::batch_compute;
use citeimpact::synth::{generate, SynthParams};

fn main() {
    let mut args = std::env::args().skip(1);
    let n_pubs = args.next().map_or(1_000_000, |s| s.parse().unwrap());
    let refs_mean = args.next().map_or(20.0, |s| s.parse().unwrap());
    let min_cp = args.next().map_or(100, |s| s.parse().unwrap());

    let t = Instant::now();
    let synth = generate(&SynthParams {
        n_pubs,
        refs_mean,
        pref_attach_exponent: 1.0,
        n_groups: 5,
        seed: 1,
    })
    .unwrap();
    eprintln!("generate: {:?}, {} edges", t.elapsed(), synth.edges.len());

    let t = Instant::now();
    let (g, _) = synth.to_graph();
    drop(synth);
    eprintln!("build: {:?}", t.elapsed());

    let t = Instant::now();
    let records = batch_compute(&g, min_cp);
    let citer_visits: u64 = records.iter().map(|r| r.cp).sum();
    eprintln!(
        "batch_compute(min_cp={min_cp}): {:?}, {} focal publications, {} citer visits",
        t.elapsed(),
        records.len(),
        citer_visits
    );
}
