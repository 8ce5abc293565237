//! The gated obstruction search.
//!
//! Each graph runs through the gates in order: no transvections, every
//! support graph a forest, build `Θ`, then test `flag(Θ)` for the selected
//! obstructions. A graph stops at the first gate it fails. Reports are
//! computed on the canonical relabelling of the input, so every report can be
//! reproduced from its `graph_code` alone.

mod fixtures;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::cm::{is_cohen_macaulay, CmMode, CmVerdict};
use crate::complex::flag_complex;
use crate::error::{Error, Result};
use crate::graph::{
    canonical_form, canonical_labeling, decode_graph6, encode_graph6, enumerate_levels, erdos_renyi, sample_seed,
    GraphCode, SimpleGraph, ENUMERATION_MAX_VERTICES,
};
use crate::par::{self, Jobs};
use crate::pso::{all_supports_forests, theta_graph, CycleWitness, ThetaBackend};
use crate::raag::is_transvection_free;

pub use fixtures::{
    verify_fixtures, FixtureCheck, FixtureGroup, FixtureReport, FixtureSet, FIXTURE_FILES,
};

/// Version of the JSON Lines report schema.
pub const SCHEMA_VERSION: u32 = 1;

/// Samples are evaluated in chunks of this many indices.
const CHUNK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Stage {
    /// Stopped: some `lk(u) ⊆ st(v)`.
    TransvectionGate,
    /// Stopped: some support graph has a cycle.
    ForestGate,
    /// `Θ` built and no obstruction was requested.
    ThetaBuilt,
    ObstructionFound,
    CleanPass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ObstructionKind {
    /// Maximal cliques of `Θ` differ in size.
    NonPure,
    /// `flag(Θ)` has dimension at least one and is disconnected.
    DisconnectedPositiveDim,
}

/// Which obstructions the search reports. Defaults to `NonPure` only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ObstructionSet {
    pub non_pure: bool,
    pub disconnected: bool,
}

impl Default for ObstructionSet {
    fn default() -> Self {
        ObstructionSet {
            non_pure: true,
            disconnected: false,
        }
    }
}

impl ObstructionSet {
    pub const ALL: ObstructionSet = ObstructionSet {
        non_pure: true,
        disconnected: true,
    };

    pub fn kinds(&self) -> Vec<ObstructionKind> {
        let mut out = Vec::new();
        if self.non_pure {
            out.push(ObstructionKind::NonPure);
        }
        if self.disconnected {
            out.push(ObstructionKind::DisconnectedPositiveDim);
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        !self.non_pure && !self.disconnected
    }
}

impl Serialize for ObstructionSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.kinds().serialize(serializer)
    }
}

/// Comma-separated list of `nonpure` and `disconnected`.
impl FromStr for ObstructionSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut set = ObstructionSet {
            non_pure: false,
            disconnected: false,
        };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.to_ascii_lowercase().as_str() {
                "nonpure" | "non-pure" | "non_pure" => set.non_pure = true,
                "disconnected" => set.disconnected = true,
                other => return Err(Error::Config(format!("unknown obstruction {other:?}"))),
            }
        }
        if set.is_empty() {
            return Err(Error::Config("empty obstruction set".into()));
        }
        Ok(set)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    /// `(u, v)` with `lk(u) ⊆ st(v)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transvection: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support_cycle: Option<CycleWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_support_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_vertices: Option<usize>,
    /// Distinct dimensions of the facets of `flag(Θ)`, ascending.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_facet_dimensions: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_components: Option<usize>,
    /// Full Cohen–Macaulay verdict for `flag(Θ)`, computed only for finds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full_cm: Option<CmVerdict>,
}

/// Microseconds spent per stage.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StageTiming {
    pub canonical_us: u64,
    pub transvection_us: u64,
    pub forest_us: u64,
    pub theta_us: u64,
    pub obstruction_us: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeedInfo {
    pub master_seed: u64,
    pub sample_index: u64,
    pub p: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub schema_version: u32,
    /// graph6 of the canonical relabelling; all vertex indices below refer
    /// to it.
    pub graph_code: GraphCode,
    pub n: usize,
    pub edge_count: usize,
    pub stage_reached: Stage,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionKind>,
    /// Canonical graph6 of `Θ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_code: Option<GraphCode>,
    pub witnesses: Witnesses,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<StageTiming>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed_info: Option<SeedInfo>,
}

impl ScanReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    pub obstructions: ObstructionSet,
    pub timing: bool,
    /// Run the full Cohen–Macaulay check on `flag(Θ)` for finds.
    pub full_cm_on_find: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            obstructions: ObstructionSet::default(),
            timing: false,
            full_cm_on_find: true,
        }
    }
}

struct Clock {
    enabled: bool,
    last: Instant,
}

impl Clock {
    fn lap(&mut self) -> u64 {
        if !self.enabled {
            return 0;
        }
        let now = Instant::now();
        let us = now.duration_since(self.last).as_micros() as u64;
        self.last = now;
        us
    }
}

pub fn run_pipeline(g: &SimpleGraph, obstructions: ObstructionSet) -> ScanReport {
    run_pipeline_with(
        g,
        PipelineOptions {
            obstructions,
            ..PipelineOptions::default()
        },
    )
}

pub fn run_pipeline_with(g: &SimpleGraph, opts: PipelineOptions) -> ScanReport {
    let mut clock = Clock {
        enabled: opts.timing,
        last: Instant::now(),
    };
    let mut timing = StageTiming::default();
    let (h, graph_code) = canonicalise(g);
    timing.canonical_us = clock.lap();

    let mut report = ScanReport {
        schema_version: SCHEMA_VERSION,
        graph_code,
        n: h.n(),
        edge_count: h.edge_count(),
        stage_reached: Stage::TransvectionGate,
        obstruction: None,
        theta_code: None,
        witnesses: Witnesses::default(),
        timing: None,
        seed_info: None,
    };
    let finish = |mut report: ScanReport, timing: StageTiming| {
        if opts.timing {
            report.timing = Some(timing);
        }
        report
    };

    if h.n() > 0 {
        let tv = is_transvection_free(&h).expect("nonempty");
        timing.transvection_us = clock.lap();
        if !tv.transvection_free {
            report.witnesses.transvection = tv.witness;
            return finish(report, timing);
        }
    }

    let forests = all_supports_forests(&h);
    timing.forest_us = clock.lap();
    report.witnesses.max_support_edges = Some(forests.max_support_edges);
    if !forests.all_forests {
        report.stage_reached = Stage::ForestGate;
        report.witnesses.support_cycle = forests.witness;
        return finish(report, timing);
    }

    let theta = theta_graph(&h, ThetaBackend::Combinatorial)
        .expect("forest gate passed")
        .theta;
    report.theta_code = Some(canonical_form(&theta).unwrap_or_else(|_| GraphCode(encode_graph6(&theta))));
    report.witnesses.theta_vertices = Some(theta.n());
    timing.theta_us = clock.lap();

    let complex = flag_complex(&theta);
    let (dim, pure) = complex.purity_and_dimension();
    let mut dims: Vec<i64> = complex.facets().iter().map(|f| f.dimension()).collect();
    dims.sort_unstable();
    dims.dedup();
    report.witnesses.theta_facet_dimensions = Some(dims);
    let components = complex.component_count();
    report.witnesses.theta_components = Some(components);

    report.obstruction = if opts.obstructions.non_pure && !pure {
        Some(ObstructionKind::NonPure)
    } else if opts.obstructions.disconnected && dim >= 1 && components > 1 {
        Some(ObstructionKind::DisconnectedPositiveDim)
    } else {
        None
    };
    report.stage_reached = match report.obstruction {
        Some(_) => Stage::ObstructionFound,
        None if opts.obstructions.is_empty() => Stage::ThetaBuilt,
        None => Stage::CleanPass,
    };
    if report.obstruction.is_some() && opts.full_cm_on_find {
        report.witnesses.full_cm = Some(is_cohen_macaulay(&complex, CmMode::Full));
    }
    timing.obstruction_us = clock.lap();
    finish(report, timing)
}

fn canonicalise(g: &SimpleGraph) -> (SimpleGraph, GraphCode) {
    match canonical_labeling(g) {
        Ok(perm) => {
            let h = g.relabel(&perm);
            let code = GraphCode(encode_graph6(&h));
            (h, code)
        }
        // beyond the canonical-form limit reports use the input labelling
        Err(_) => (g.clone(), GraphCode(encode_graph6(g))),
    }
}

/// The stage at which `g` stops, if it fails a gate. Labelling-invariant,
/// so it can run before canonicalisation.
fn quick_gate(g: &SimpleGraph) -> Option<Stage> {
    if g.n() > 0 && !is_transvection_free(g).expect("nonempty").transvection_free {
        return Some(Stage::TransvectionGate);
    }
    if !all_supports_forests(g).all_forests {
        return Some(Stage::ForestGate);
    }
    None
}

/// Which reports reach the sink.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Emit {
    /// One report per newly found obstruction class.
    #[default]
    Found,
    /// Every evaluated graph.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeProbability {
    Fixed { p: f64 },
    /// Sample `i` of `count` uses `lo + (hi - lo) * (i + 0.5) / count`.
    Sweep { lo: f64, hi: f64 },
}

impl EdgeProbability {
    fn at(&self, index: u64, count: u64) -> f64 {
        match *self {
            EdgeProbability::Fixed { p } => p,
            EdgeProbability::Sweep { lo, hi } => lo + (hi - lo) * (index as f64 + 0.5) / count as f64,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = |p: f64| (0.0..=1.0).contains(&p);
        match *self {
            EdgeProbability::Fixed { p } if !ok(p) => Err(Error::Probability(p)),
            EdgeProbability::Sweep { lo, hi } if !ok(lo) || !ok(hi) || lo > hi => {
                Err(Error::Config(format!("invalid probability sweep {lo}..{hi}")))
            }
            _ => Ok(()),
        }
    }
}

/// `"0.4"` or `"0.3..0.6"`.
impl FromStr for EdgeProbability {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("invalid probability {t:?}")))
        };
        let p = match s.split_once("..") {
            Some((lo, hi)) => EdgeProbability::Sweep {
                lo: parse(lo)?,
                hi: parse(hi)?,
            },
            None => EdgeProbability::Fixed { p: parse(s)? },
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    pub n: usize,
    pub p: EdgeProbability,
    pub sample_count: u64,
    pub master_seed: u64,
    pub obstructions: ObstructionSet,
    #[serde(skip)]
    pub jobs: Jobs,
    pub emit: Emit,
    #[serde(skip)]
    pub timing: bool,
}

impl SearchConfig {
    pub fn new(n: usize, p: f64, sample_count: u64, master_seed: u64) -> Self {
        SearchConfig {
            n,
            p: EdgeProbability::Fixed { p },
            sample_count,
            master_seed,
            obstructions: ObstructionSet::default(),
            jobs: Jobs::AUTO,
            emit: Emit::Found,
            timing: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if self.n > crate::graph::CANON_MAX_VERTICES {
            return Err(Error::TooLarge {
                n: self.n,
                limit: crate::graph::CANON_MAX_VERTICES,
            });
        }
        if self.sample_count == 0 {
            return Err(Error::Config("sample count must be at least 1".into()));
        }
        if self.obstructions.is_empty() {
            return Err(Error::Config("empty obstruction set".into()));
        }
        self.p.validate()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Attrition {
    pub evaluated: u64,
    pub transvection_free: u64,
    pub forests: u64,
    pub obstructed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrderTotals {
    pub graphs: u64,
    pub obstructed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MalformedLine {
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ScanSummary {
    pub schema_version: u32,
    pub attrition: Attrition,
    /// Terminal stage counts.
    pub stages: BTreeMap<Stage, u64>,
    pub obstructions: BTreeMap<ObstructionKind, u64>,
    /// Totals per vertex count.
    pub per_n: BTreeMap<usize, OrderTotals>,
    /// Canonical codes of every obstructed class, sorted.
    pub distinct_finds: BTreeSet<GraphCode>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub malformed_lines: Vec<MalformedLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes_including_order_zero: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<SearchConfig>,
}

impl ScanSummary {
    fn new() -> Self {
        ScanSummary {
            schema_version: SCHEMA_VERSION,
            ..ScanSummary::default()
        }
    }

    fn record(&mut self, n: usize, stage: Stage, obstruction: Option<ObstructionKind>) {
        let a = &mut self.attrition;
        a.evaluated += 1;
        if stage != Stage::TransvectionGate {
            a.transvection_free += 1;
        }
        if stage != Stage::TransvectionGate && stage != Stage::ForestGate {
            a.forests += 1;
        }
        let per_n = self.per_n.entry(n).or_default();
        per_n.graphs += 1;
        if let Some(kind) = obstruction {
            a.obstructed += 1;
            per_n.obstructed += 1;
            *self.obstructions.entry(kind).or_default() += 1;
        }
        *self.stages.entry(stage).or_default() += 1;
    }

    pub fn total(&self) -> u64 {
        self.attrition.evaluated
    }

    pub fn obstructed(&self) -> u64 {
        self.attrition.obstructed
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summaries serialize")
    }
}

/// Receives each emitted report in canonical order.
pub type ReportSink<'a> = dyn FnMut(&ScanReport) -> Result<()> + 'a;

enum Outcome {
    Gate(usize, Stage),
    Report(Box<ScanReport>),
}

fn evaluate(g: &SimpleGraph, opts: PipelineOptions, emit: Emit) -> Outcome {
    if emit == Emit::Found {
        if let Some(stage) = quick_gate(g) {
            return Outcome::Gate(g.n(), stage);
        }
    }
    Outcome::Report(Box::new(run_pipeline_with(g, opts)))
}

/// Feeds outcomes, in order, into the summary and the sink.
fn absorb(summary: &mut ScanSummary, outcome: Outcome, emit: Emit, sink: &mut ReportSink<'_>) -> Result<()> {
    match outcome {
        Outcome::Gate(n, stage) => summary.record(n, stage, None),
        Outcome::Report(report) => {
            summary.record(report.n, report.stage_reached, report.obstruction);
            let new_class = report.obstruction.is_some() && summary.distinct_finds.insert(report.graph_code.clone());
            if emit == Emit::All || new_class {
                sink(&report)?;
            }
        }
    }
    Ok(())
}

/// Evaluates `sample_count` independent `G(n, p)` draws. Sample `i` uses
/// the seed `sample_seed(master_seed, i)`, so output depends only on the
/// configuration.
pub fn search_random(cfg: &SearchConfig, sink: &mut ReportSink<'_>) -> Result<ScanSummary> {
    cfg.validate()?;
    let opts = PipelineOptions {
        obstructions: cfg.obstructions,
        timing: cfg.timing,
        full_cm_on_find: true,
    };
    let mut summary = ScanSummary::new();
    let mut start = 0;
    while start < cfg.sample_count {
        let len = CHUNK.min(cfg.sample_count - start);
        let outcomes = par::map_range(len, cfg.jobs, |offset| {
            let index = start + offset;
            let p = cfg.p.at(index, cfg.sample_count);
            let g = erdos_renyi(cfg.n, p, sample_seed(cfg.master_seed, index)).expect("validated probability");
            match evaluate(&g, opts, cfg.emit) {
                Outcome::Report(mut r) => {
                    r.seed_info = Some(SeedInfo {
                        master_seed: cfg.master_seed,
                        sample_index: index,
                        p,
                    });
                    Outcome::Report(r)
                }
                gate => gate,
            }
        });
        for outcome in outcomes {
            absorb(&mut summary, outcome, cfg.emit, sink)?;
        }
        start += len;
    }
    summary.config = Some(cfg.clone());
    Ok(summary)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub obstructions: ObstructionSet,
    pub jobs: Jobs,
    pub emit: Emit,
    pub timing: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            obstructions: ObstructionSet::default(),
            jobs: Jobs::AUTO,
            emit: Emit::Found,
            timing: false,
        }
    }
}

pub enum CorpusSource<'a> {
    /// One graph6 code per line; blank lines and `>>graph6<<` headers are
    /// skipped, malformed lines are recorded and skipped.
    Graph6(Box<dyn BufRead + 'a>),
    /// Every isomorphism class on `1..=max_n` vertices.
    Enumerate { max_n: usize },
}

impl fmt::Debug for CorpusSource<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusSource::Graph6(_) => write!(f, "Graph6(..)"),
            CorpusSource::Enumerate { max_n } => write!(f, "Enumerate {{ max_n: {max_n} }}"),
        }
    }
}

fn scan_graphs(graphs: &[SimpleGraph], cfg: &ScanConfig, summary: &mut ScanSummary, sink: &mut ReportSink<'_>) -> Result<()> {
    let opts = PipelineOptions {
        obstructions: cfg.obstructions,
        timing: cfg.timing,
        full_cm_on_find: true,
    };
    for chunk in graphs.chunks(CHUNK as usize) {
        let outcomes = par::map(chunk, cfg.jobs, |g| evaluate(g, opts, cfg.emit));
        for outcome in outcomes {
            absorb(summary, outcome, cfg.emit, sink)?;
        }
    }
    Ok(())
}

/// Evaluates every graph of the corpus once, in corpus order.
pub fn scan_corpus(source: CorpusSource<'_>, cfg: &ScanConfig, sink: &mut ReportSink<'_>) -> Result<ScanSummary> {
    if cfg.obstructions.is_empty() {
        return Err(Error::Config("empty obstruction set".into()));
    }
    let mut summary = ScanSummary::new();
    match source {
        CorpusSource::Enumerate { max_n } => {
            if max_n > ENUMERATION_MAX_VERTICES {
                return Err(Error::TooLarge {
                    n: max_n,
                    limit: ENUMERATION_MAX_VERTICES,
                });
            }
            let levels = enumerate_levels(max_n, cfg.jobs)?;
            for level in levels.iter().skip(1) {
                scan_graphs(level, cfg, &mut summary, sink)?;
            }
            summary.classes_including_order_zero = Some(summary.total() + 1);
        }
        CorpusSource::Graph6(reader) => {
            let mut batch = Vec::new();
            for (idx, line) in reader.lines().enumerate() {
                let line = line?;
                let code = line.trim();
                if code.is_empty() || code == ">>graph6<<" {
                    continue;
                }
                match decode_graph6(code) {
                    Ok(g) => batch.push(g),
                    Err(e) => summary.malformed_lines.push(MalformedLine {
                        line: idx + 1,
                        reason: e.to_string(),
                    }),
                }
                if batch.len() as u64 >= CHUNK {
                    scan_graphs(&batch, cfg, &mut summary, sink)?;
                    batch.clear();
                }
            }
            scan_graphs(&batch, cfg, &mut summary, sink)?;
        }
    }
    Ok(summary)
}

/// Writes each report as one JSON line.
pub fn jsonl_sink<W: Write + ?Sized>(out: &mut W) -> impl FnMut(&ScanReport) -> Result<()> + '_ {
    move |r: &ScanReport| {
        out.write_all(r.to_json_line().as_bytes())?;
        out.write_all(b"\n")?;
        Ok(())
    }
}
