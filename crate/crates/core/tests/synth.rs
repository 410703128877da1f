use citeimpact::synth::{generate, SynthParams};

fn params(n_pubs: usize, seed: u64) -> SynthParams {
    SynthParams {
        n_pubs,
        refs_mean: 20.0,
        pref_attach_exponent: 1.0,
        n_groups: 5,
        seed,
    }
}

#[test]
fn in_degree_is_heavy_tailed() {
    // Observed over seeds 0..5: max/mean in-degree between ~206 and ~221.
    // The threshold of 20 leaves a wide margin.
    for seed in 0..5 {
        let s = generate(&params(10_000, seed)).unwrap();
        let mut indeg = vec![0u64; s.n_pubs()];
        for &(_, f) in &s.edges {
            indeg[f as usize] += 1;
        }
        let mean = s.edges.len() as f64 / s.n_pubs() as f64;
        let max = *indeg.iter().max().unwrap() as f64;
        assert!(max > 20.0 * mean, "seed {seed}: max {max}, mean {mean}");
    }
}

#[test]
fn edge_count_close_to_expectation() {
    for seed in 0..3 {
        let s = generate(&params(10_000, seed)).unwrap();
        let expect = 10_000.0 * 20.0;
        let rel = (s.edges.len() as f64 - expect).abs() / expect;
        assert!(rel < 0.05, "seed {seed}: {} edges", s.edges.len());
    }
}

#[test]
fn uniform_attachment_is_not_heavy_tailed() {
    let s = generate(&SynthParams {
        pref_attach_exponent: 0.0,
        ..params(10_000, 0)
    })
    .unwrap();
    let mut indeg = vec![0u64; s.n_pubs()];
    for &(_, f) in &s.edges {
        indeg[f as usize] += 1;
    }
    let mean = s.edges.len() as f64 / s.n_pubs() as f64;
    let max = *indeg.iter().max().unwrap() as f64;
    assert!(max < 20.0 * mean);
}
