//! End-to-end runs of the `citeimpact` binary.

use std::path::PathBuf;
use std::process::{Command, Output, Stdio};
use std::io::Write;

use citeimpact::stats::{self, RecordTable};
use citeimpact::synth::{generate, SynthParams};
use citeimpact::{batch_compute, export, Indicator};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_citeimpact"))
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_lines(s: &str) -> Vec<&str> {
    s.lines().skip(1).collect()
}

#[test]
fn compute_fig1() {
    let out = stdout(&run(&["compute", "--edges", &fixture("fig1.tsv"), "--min-cp", "5"]));
    assert_eq!(
        data_lines(&out),
        ["A,5,1,4,10,0.2,0.8,2,5,0,0,1,0,0", "B,5,5,0,0,1,0,0,5,0,0,1,0,0"]
    );
}

#[test]
fn compute_json_has_nulls_for_isolated() {
    let out = stdout(&run(&[
        "compute", "--edges", &fixture("fig1.tsv"), "--min-cp", "0", "--format", "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 12);
    let a5 = rows.iter().find(|r| r["pub_id"] == "A5").unwrap();
    assert_eq!(a5["cp"], 0);
    assert!(a5["mr_citing"].is_null());
    let a = rows.iter().find(|r| r["pub_id"] == "A").unwrap();
    assert_eq!(a["pcp_rciting_eq0"], 0.2);
}

#[test]
fn empty_input_gives_header_only() {
    let out = stdout(&run(&["compute", "--edges", &fixture("empty.tsv"), "--min-cp", "0"]));
    assert_eq!(out.lines().count(), 1);
    assert!(out.starts_with("pub_id,cp,"));
}

#[test]
fn stdin_is_default_input() {
    let mut child = bin()
        .args(["compute", "--min-cp", "5"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let edges = std::fs::read(fixture("fig1.tsv")).unwrap();
    child.stdin.take().unwrap().write_all(&edges).unwrap();
    let out = stdout(&child.wait_with_output().unwrap());
    assert_eq!(data_lines(&out).len(), 2);
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("g.tsv");
    let edges = edges.to_str().unwrap();
    stdout(&run(&["synth", "--n", "3000", "--refs-mean", "8", "--seed", "4", "--out", edges]));
    let outs: Vec<String> = ["1", "2", "8"]
        .iter()
        .map(|t| stdout(&run(&["compute", "--edges", edges, "--min-cp", "1", "--threads", t])))
        .collect();
    assert!(data_lines(&outs[0]).len() > 100);
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[0], outs[2]);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["compute", "--edges", "/nonexistent/x.tsv"]), 2);
    assert_eq!(code(&["stats", "--edges", &fixture("fig1.tsv"), "--indicator", "bogus"]), 4);
    assert_eq!(code(&["rank", "--edges", &fixture("fig1.tsv"), "--top", "0"]), 4);
    assert_eq!(code(&["compute", "--edges", &fixture("fig1.tsv"), "--threads", "0"]), 4);
    assert_eq!(code(&["frobnicate"]), 4);
    assert_eq!(code(&["dist", "--edges", &fixture("fig1.tsv"), "--focal", "nope"]), 4);
    assert_eq!(code(&["--help"]), 0);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tsv");
    std::fs::write(&bad, "a\tb\nonly-one-column\n").unwrap();
    let o = run(&["compute", "--edges", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    // cdf of an indicator that is undefined everywhere
    assert_eq!(
        code(&["cdf", "--edges", &fixture("fig1.tsv"), "--min-cp", "0", "--indicator", "mr_cited"]),
        0
    );
    assert_eq!(code(&["cdf", "--edges", &fixture("empty.tsv"), "--min-cp", "0"]), 1);
}

#[test]
fn rank_dist_scatter_outputs() {
    let fig1 = fixture("fig1.tsv");
    let out = stdout(&run(&["rank", "--edges", &fig1, "--min-cp", "5", "--by", "tr_citing", "--top", "2"]));
    let firsts: Vec<Vec<&str>> = data_lines(&out).iter().map(|l| l.split(',').take(2).collect()).collect();
    assert_eq!(firsts, [["1", "A"], ["2", "B"]]);

    let out = stdout(&run(&["dist", "--edges", &fig1, "--focal", "A"]));
    assert_eq!(out, "r_citing,count\n0,1\n1,1\n2,1\n3,1\n4,1\n# mean=2\n");
    let out = stdout(&run(&["dist", "--edges", &fixture("fig2.tsv"), "--focal", "A", "--side", "r_cited"]));
    assert_eq!(out, "r_cited,count\n3,5\n# mean=3\n");

    let out = stdout(&run(&[
        "scatter", "--edges", &fixture("fig2.tsv"), "--min-cp", "5", "--x", "pcp_rcited_gt0", "--y", "mr_cited",
    ]));
    assert_eq!(data_lines(&out)[0], "A,1,3");
    assert!(data_lines(&out).contains(&"B,0,0"));
}

#[test]
fn synth_pipes_into_compute() {
    let synth = run(&["synth", "--n", "200", "--refs-mean", "5", "--seed", "3"]);
    let edges = stdout(&synth);
    let mut child = bin()
        .args(["compute", "--min-cp", "0"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(edges.as_bytes()).unwrap();
    let out = stdout(&child.wait_with_output().unwrap());
    let s = generate(&SynthParams {
        n_pubs: 200,
        refs_mean: 5.0,
        pref_attach_exponent: 1.0,
        n_groups: 1,
        seed: 3,
    })
    .unwrap();
    let (g, _) = s.to_graph();
    assert_eq!(data_lines(&out).len(), g.len());
}

#[test]
fn stats_on_fixtures_with_groups() {
    let out = stdout(&run(&[
        "stats",
        "--edges",
        &fixture("fig12.tsv"),
        "--meta",
        &fixture("fig12_meta.tsv"),
        "--min-cp",
        "5",
        "--group-by",
        "--indicator",
        "cp,mr_citing",
    ]));
    assert_eq!(
        out,
        "group,indicator,n,mean,median\n\
         fig1,cp,2,5,5\n\
         fig1,mr_citing,2,1,1\n\
         fig2,cp,5,5.6,6\n\
         fig2,mr_citing,5,0.5,0.833333\n\
         ALL,cp,7,5.42857,5\n\
         ALL,mr_citing,7,0.642857,0.833333\n"
    );
    // without --group-by only ALL remains
    let out = stdout(&run(&[
        "stats", "--edges", &fixture("fig12.tsv"), "--min-cp", "5", "--indicator", "cp",
    ]));
    assert_eq!(out, "group,indicator,n,mean,median\nALL,cp,7,5.42857,5\n");
}

#[test]
fn stats_from_indicator_file_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    let params = SynthParams {
        n_pubs: 2000,
        refs_mean: 10.0,
        pref_attach_exponent: 1.0,
        n_groups: 2,
        seed: 21,
    };
    stdout(&run(&[
        "synth", "--n", "2000", "--refs-mean", "10", "--groups", "2", "--seed", "21",
        "--out", &p("e.tsv"), "--meta", &p("m.tsv"),
    ]));
    stdout(&run(&["compute", "--edges", &p("e.tsv"), "--min-cp", "2", "--out", &p("ind.csv")]));
    let from_edges = stdout(&run(&[
        "stats", "--edges", &p("e.tsv"), "--meta", &p("m.tsv"), "--min-cp", "2", "--group-by",
    ]));
    let from_file = stdout(&run(&[
        "stats", "--indicators", &p("ind.csv"), "--meta", &p("m.tsv"), "--group-by",
    ]));

    let summary_csv = |table: &RecordTable| {
        let mut buf = Vec::new();
        let s = stats::group_summaries(table, &Indicator::ALL);
        export::write_summary(&s, export::Format::Csv, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    };
    let (g, _) = generate(&params).unwrap().to_graph();
    let table = RecordTable::from_graph(&g, batch_compute(&g, 2));
    assert_eq!(from_edges, summary_csv(&table));

    // CSV reals carry 6 significant digits, so the file path is checked
    // against the library on the same rounded records.
    let mut reread = export::read_records(std::fs::File::open(p("ind.csv")).unwrap()).unwrap();
    let groups: Vec<Option<String>> = (0..table.len()).map(|r| table.group(r).map(str::to_string)).collect();
    let by_token: std::collections::HashMap<&str, Option<&str>> = (0..table.len())
        .map(|r| (table.token(r), groups[r].as_deref()))
        .collect();
    reread.set_groups(|t| by_token.get(t).copied().flatten());
    assert_eq!(from_file, summary_csv(&reread));
    let out = from_file;
    assert!(out.contains("\nG0,") && out.contains("\nG1,"));
}

#[test]
fn validate_reports_tallies() {
    let dir = tempfile::tempdir().unwrap();
    let e = dir.path().join("e.tsv");
    std::fs::write(&e, "a\tb\na\tb\nc\tc\nb\tc\n").unwrap();
    let m = dir.path().join("m.tsv");
    std::fs::write(&m, "id\tyear\tgroup\tdoctype\na\t1990\t\t\nb\t2000\t\t\nzz\t2000\t\t\n").unwrap();
    let out = stdout(&run(&["validate", "--edges", e.to_str().unwrap(), "--meta", m.to_str().unwrap()]));
    assert_eq!(
        out,
        "publications=4\nedges=2\nduplicate_edges_dropped=1\nself_loops_dropped=1\n\
         temporal_violations=1\nunknown_meta_ids=1\n"
    );
}
