use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::time::Instant;

use citeimpact::export::{self, Format};
use citeimpact::io::{load_graph, read_meta};
use citeimpact::stats::{self, RecordTable};
use citeimpact::synth::{generate, SynthParams};
use citeimpact::{
    batch_compute, profile_distribution, CitationGraph, Error, Indicator, IndicatorRecord, Side,
    ValidationReport,
};

use super::{BatchArgs, CdfArgs, ComputeArgs, DistArgs, GraphArgs, OutputArgs, RankArgs, RecordSource};
use super::{ScatterArgs, StatsArgs, SynthArgs};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_IO: u8 = 2;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_USAGE: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) | Error::Json(_) => EXIT_IO,
            Error::Csv(c) if c.is_io_error() => EXIT_IO,
            Error::Parse { .. } | Error::MetaConflict { .. } | Error::Csv(_) => EXIT_PARSE,
            Error::UnknownIndicator(_)
            | Error::UnknownPublication(_)
            | Error::InvalidParams(_)
            | Error::IndexOutOfRange { .. }
            | Error::NotACiter { .. } => EXIT_USAGE,
            Error::NoDefinedValues | Error::UndefinedValue => EXIT_FAILURE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Error::from(e).into()
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn open_input(path: &str) -> CliResult<Box<dyn BufRead>> {
    if path == "-" {
        return Ok(Box::new(BufReader::new(io::stdin().lock())));
    }
    let f = File::open(path).map_err(|e| CliError {
        code: EXIT_IO,
        message: format!("cannot open {path}: {e}"),
    })?;
    Ok(Box::new(BufReader::with_capacity(1 << 20, f)))
}

fn open_output(out: Option<&str>) -> CliResult<Box<dyn Write>> {
    match out {
        None | Some("-") => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(path) => {
            let f = File::create(path).map_err(|e| CliError {
                code: EXIT_IO,
                message: format!("cannot create {path}: {e}"),
            })?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

fn format_of(o: &OutputArgs) -> CliResult<Format> {
    Ok(o.format.parse()?)
}

fn indicator(name: &str) -> CliResult<Indicator> {
    Ok(name.parse()?)
}

fn load(edges: &str, meta: Option<&str>) -> CliResult<(CitationGraph, ValidationReport)> {
    let t = Instant::now();
    let edge_input = open_input(edges)?;
    let meta_input = meta.map(open_input).transpose()?;
    let (g, report) = load_graph(edge_input, meta_input)?;
    eprintln!(
        "loaded {} publications, {} edges in {:.2?}",
        g.len(),
        g.edge_count(),
        t.elapsed()
    );
    eprintln!("validation: {report}");
    Ok((g, report))
}

fn run_batch(g: &CitationGraph, args: &BatchArgs) -> CliResult<Vec<IndicatorRecord>> {
    let t = Instant::now();
    let records = with_threads(args.threads, || batch_compute(g, args.min_cp))?;
    eprintln!(
        "computed {} records (min_cp={}) in {:.2?}",
        records.len(),
        args.min_cp,
        t.elapsed()
    );
    Ok(records)
}

#[cfg(feature = "parallel")]
fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    match threads {
        Some(0) => return Err(CliError::usage("--threads must be at least 1")),
        Some(n) => builder = builder.num_threads(n),
        None => {}
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::usage(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

#[cfg(not(feature = "parallel"))]
fn with_threads<T>(threads: Option<usize>, f: impl FnOnce() -> T) -> CliResult<T> {
    if threads == Some(0) {
        return Err(CliError::usage("--threads must be at least 1"));
    }
    Ok(f())
}

fn load_records(src: &RecordSource) -> CliResult<RecordTable> {
    if let Some(path) = &src.indicators {
        let mut table = export::read_records(open_input(path)?)?;
        if let Some(meta) = &src.meta {
            let groups: HashMap<String, Option<String>> = read_meta(open_input(meta)?)?
                .into_iter()
                .map(|(id, m)| (id, m.group))
                .collect();
            table.set_groups(|tok| groups.get(tok).and_then(|g| g.as_deref()));
        }
        return Ok(table);
    }
    let edges = src.edges.as_deref().unwrap_or("-");
    let (g, _) = load(edges, src.meta.as_deref())?;
    let records = run_batch(&g, &src.batch)?;
    Ok(RecordTable::from_graph(&g, records))
}

pub fn compute(a: ComputeArgs) -> CliResult {
    let format = format_of(&a.output)?;
    let (g, _) = load(&a.graph.edges, a.graph.meta.as_deref())?;
    let records = run_batch(&g, &a.batch)?;
    let table = RecordTable::from_graph(&g, records);
    export::write_records(&table, format, open_output(a.output.out.as_deref())?)?;
    Ok(())
}

pub fn stats(a: StatsArgs) -> CliResult {
    let format = format_of(&a.output)?;
    let indicators: Vec<Indicator> = if a.indicator_names.is_empty() {
        Indicator::ALL.to_vec()
    } else {
        a.indicator_names.iter().map(|n| indicator(n)).collect::<CliResult<_>>()?
    };
    let mut table = load_records(&a.source)?;
    if !a.group_by {
        table.set_groups(|_| None);
    }
    let summary = stats::group_summaries(&table, &indicators);
    export::write_summary(&summary, format, open_output(a.output.out.as_deref())?)?;
    Ok(())
}

pub fn cdf(a: CdfArgs) -> CliResult {
    let format = format_of(&a.output)?;
    let ind = indicator(&a.indicator)?;
    let table = load_records(&a.source)?;
    let values: Vec<f64> = table.values(ind).into_iter().flatten().collect();
    let series = stats::cdf(&values)?;
    export::write_cdf(ind, &series, format, open_output(a.output.out.as_deref())?)?;
    Ok(())
}

pub fn rank(a: RankArgs) -> CliResult {
    let format = format_of(&a.output)?;
    let ind = indicator(&a.by)?;
    if a.top == 0 {
        return Err(CliError::usage("--top must be at least 1"));
    }
    let table = load_records(&a.source)?;
    let ranked = stats::rank_top(&table, ind, a.top)?;
    export::write_rank(&ranked, format, open_output(a.output.out.as_deref())?)?;
    Ok(())
}

pub fn scatter(a: ScatterArgs) -> CliResult {
    let format = format_of(&a.output)?;
    let x = indicator(&a.x)?;
    let y = indicator(&a.y)?;
    let table = load_records(&a.source)?;
    let s = stats::scatter(&table, x, y);
    if s.omitted > 0 {
        eprintln!("omitted {} records with an undefined coordinate", s.omitted);
    }
    export::write_scatter(&s, x, y, format, open_output(a.output.out.as_deref())?)?;
    Ok(())
}

pub fn dist(a: DistArgs) -> CliResult {
    let format = format_of(&a.output)?;
    let side: Side = a.side.parse()?;
    let (g, _) = load(&a.graph.edges, a.graph.meta.as_deref())?;
    let focal = g
        .id_of(&a.focal)
        .ok_or_else(|| Error::UnknownPublication(a.focal.clone()))?;
    let profiles = profile_distribution(&g, focal)?;
    let h = stats::histogram(&profiles, side);
    export::write_histogram(&a.focal, &h, format, open_output(a.output.out.as_deref())?)?;
    Ok(())
}

pub fn synth(a: SynthArgs) -> CliResult {
    let params = SynthParams {
        n_pubs: a.n,
        refs_mean: a.refs_mean,
        pref_attach_exponent: a.exponent,
        n_groups: a.groups,
        seed: a.seed,
    };
    let t = Instant::now();
    let s = generate(&params)?;
    eprintln!(
        "generated {} publications, {} edges in {:.2?}",
        s.n_pubs(),
        s.edges.len(),
        t.elapsed()
    );
    s.write_edges(open_output(a.out.as_deref())?)?;
    if let Some(meta) = a.meta.as_deref() {
        s.write_meta(open_output(Some(meta))?)?;
    }
    Ok(())
}

pub fn validate(a: GraphArgs) -> CliResult {
    let (g, r) = load(&a.edges, a.meta.as_deref())?;
    let mut out = open_output(None)?;
    writeln!(out, "publications={}", g.len())?;
    writeln!(out, "edges={}", g.edge_count())?;
    writeln!(out, "duplicate_edges_dropped={}", r.duplicate_edges_dropped)?;
    writeln!(out, "self_loops_dropped={}", r.self_loops_dropped)?;
    writeln!(out, "temporal_violations={}", r.temporal_violations)?;
    writeln!(out, "unknown_meta_ids={}", r.unknown_meta_ids)?;
    out.flush()?;
    Ok(())
}
