//! End-to-end packing: parameters, scheme sampling, labelling, per-instance
//! aux graphs and packers, assembly, verification and the JSON report.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;
use std::time::Instant;

use log::info;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::auxgraph::{
    audit_degree_properties, audit_inclusion_counts, audit_partition_regularity, build_aux_graph, AuditMode,
    AuditReport, PropertyFamily,
};
use crate::cycles::{assemble_cycle, verify_packing, write_packing, AuxSolution, PackingKind, PackingResult};
use crate::error::{Error, Result};
use crate::hypercore::{parse_hypergraph, Hypergraph};
use crate::packers::{pack_graph_hamilton, pack_perfect_matchings};
use crate::partitions::{
    label_edges, sample_scheme, scheme_parameters, LabeledEdgeSet, Mode, ParamOverrides, PartitionScheme, Regime, SchemeParameters,
};
use crate::seeding::{self, HAMILTON};

#[derive(Debug, Clone, PartialEq)]
pub enum InputSource {
    File(PathBuf),
    Generate { n: u32, k: usize, p: f64, seed: u64 },
    InMemory(Hypergraph),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: InputSource,
    pub ell: usize,
    /// Derived from `(k, ℓ)` when absent.
    pub mode: Option<Mode>,
    pub overrides: ParamOverrides,
    pub regime: Regime,
    pub seed: u64,
    pub audit: Option<AuditMode>,
    /// Worker threads; the global pool when absent.
    pub workers: Option<usize>,
    pub record_timings: bool,
    pub cycles_out: Option<PathBuf>,
    pub report_out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(source: InputSource, ell: usize, seed: u64) -> Self {
        RunConfig {
            source,
            ell,
            mode: None,
            overrides: ParamOverrides::default(),
            regime: Regime::Random,
            seed,
            audit: None,
            workers: None,
            record_timings: false,
            cycles_out: None,
            report_out: None,
        }
    }

    pub fn with_r(mut self, r: f64) -> Self {
        self.overrides.r = Some(r);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub id: u32,
    pub aux_edges: usize,
    pub harvest: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Totals {
    pub items: usize,
    pub edges_used: usize,
    #[serde(with = "crate::serde_float")]
    pub coverage: f64,
    pub unlabeled: usize,
    pub labeled_unpacked: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub params_theoretical: SchemeParameters,
    pub params_used: SchemeParameters,
    pub instances: Vec<InstanceReport>,
    pub totals: Totals,
    pub audits: Vec<AuditReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub audit_errors: Vec<String>,
    /// Seconds per stage; empty unless timings were requested.
    #[serde(with = "crate::serde_float::map")]
    pub timings: BTreeMap<String, f64>,
}

pub fn emit_report(report: &RunReport) -> String {
    serde_json::to_string_pretty(report).expect("reports always serialize")
}

pub fn parse_report(json: &str) -> Result<RunReport> {
    Ok(serde_json::from_str(json)?)
}

struct Stopwatch {
    enabled: bool,
    last: Instant,
    laps: BTreeMap<String, f64>,
}

impl Stopwatch {
    fn new(enabled: bool) -> Self {
        Stopwatch {
            enabled,
            last: Instant::now(),
            laps: BTreeMap::new(),
        }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        if self.enabled {
            self.laps.insert(stage.into(), (now - self.last).as_secs_f64());
        }
        self.last = now;
    }
}

fn load(source: &InputSource) -> Result<(Hypergraph, Option<f64>)> {
    match source {
        InputSource::File(path) => Ok((parse_hypergraph(BufReader::new(File::open(path)?))?, None)),
        InputSource::Generate { n, k, p, seed } => Ok((Hypergraph::generate(*n, *k, *p, *seed)?, Some(*p))),
        InputSource::InMemory(h) => Ok((h.clone(), None)),
    }
}

fn in_pool<T: Send>(workers: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(job()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

/// Runs the whole pipeline for `config`. Output files named in the config
/// are written after verification.
pub fn run_packing(config: &RunConfig) -> Result<(PackingResult, RunReport)> {
    let mut clock = Stopwatch::new(config.record_timings);
    let (h, generated_p) = load(&config.source).map_err(|e| e.in_stage("input"))?;
    clock.lap("input");
    let p = generated_p.unwrap_or_else(|| h.density());
    let (n, k, ell) = (h.n(), h.k(), config.ell);
    let theoretical = scheme_parameters(n, k, ell, p, config.mode, config.regime, ParamOverrides::default())
        .map_err(|e| e.in_stage("parameters"))?;
    let mut used = scheme_parameters(n, k, ell, p, config.mode, config.regime, config.overrides)
        .map_err(|e| e.in_stage("parameters"))?;
    let r = if used.r.is_finite() && used.r > 0.0 {
        used.r.round() as u32
    } else {
        used.diagnostics.push(format!("r = {} is not a usable instance count; running 0 instances", used.r));
        0
    };
    used.r = r as f64;
    clock.lap("parameters");
    let mode = used.mode;
    let seed = config.seed;
    let schemes = in_pool(config.workers, || {
        (0..r)
            .into_par_iter()
            .map(|i| sample_scheme(n, k, ell, Some(mode), seed, i))
            .collect::<Result<Vec<_>>>()
    })?
    .map_err(|e| e.in_stage("sampling"))?;
    clock.lap("sampling");
    info!("sampled {r} schemes in mode {mode:?}");

    let (result, mut report, labels) = pack_with_schemes_timed(&h, &schemes, config, theoretical, used, &mut clock)?;

    if let Some(audit) = config.audit {
        let (audits, errors) = run_audits(&h, &report.params_used, audit, seed, &labels);
        report.audits = audits;
        report.audit_errors = errors;
        clock.lap("audit");
    }
    report.timings = clock.laps;

    if let Some(path) = &config.cycles_out {
        write_packing(&result, BufWriter::new(File::create(path)?)).map_err(|e| e.in_stage("output"))?;
    }
    if let Some(path) = &config.report_out {
        std::fs::write(path, emit_report(&report))?;
    }
    Ok((result, report))
}

fn run_audits(
    h: &Hypergraph,
    params: &SchemeParameters,
    audit: AuditMode,
    seed: u64,
    labels: &LabeledEdgeSet,
) -> (Vec<AuditReport>, Vec<String>) {
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    let eps = params.eps;
    let degree = match params.mode {
        Mode::BipartitionCycle => Some(PropertyFamily::P),
        Mode::Matching => Some(PropertyFamily::R),
        Mode::FullPartition => None,
    };
    let outcome = match degree {
        Some(family) => audit_degree_properties(h, params.ell, eps, audit, family, seed),
        None => {
            let budget = match audit {
                AuditMode::Exact => 1000,
                AuditMode::Sampled(c) => c.max(1),
            };
            audit_partition_regularity(h, params.ell, eps, 20, budget, seed).map(|r| vec![r])
        }
    };
    match outcome {
        Ok(r) => reports.extend(r),
        Err(e) => errors.push(e.to_string()),
    }
    reports.push(audit_inclusion_counts(labels, params.r, params.rho, h.n(), h.k()));
    (reports, errors)
}

/// Packs `h` with the given instances instead of sampled ones. The report's
/// parameters are computed from the hypergraph's density with `r` set to
/// the number of schemes.
pub fn pack_with_schemes(h: &Hypergraph, schemes: &[PartitionScheme], config: &RunConfig) -> Result<(PackingResult, RunReport)> {
    let p = h.density();
    let mode = schemes.first().map(|s| s.mode).or(config.mode);
    let theoretical = scheme_parameters(h.n(), h.k(), config.ell, p, mode, config.regime, ParamOverrides::default())
        .map_err(|e| e.in_stage("parameters"))?;
    let mut overrides = config.overrides;
    overrides.r = Some(schemes.len() as f64);
    let used = scheme_parameters(h.n(), h.k(), config.ell, p, mode, config.regime, overrides)
        .map_err(|e| e.in_stage("parameters"))?;
    let mut clock = Stopwatch::new(config.record_timings);
    let (result, mut report, _) = pack_with_schemes_timed(h, schemes, config, theoretical, used, &mut clock)?;
    report.timings = clock.laps;
    Ok((result, report))
}

fn pack_with_schemes_timed(
    h: &Hypergraph,
    schemes: &[PartitionScheme],
    config: &RunConfig,
    theoretical: SchemeParameters,
    used: SchemeParameters,
    clock: &mut Stopwatch,
) -> Result<(PackingResult, RunReport, LabeledEdgeSet)> {
    for (i, s) in schemes.iter().enumerate() {
        if s.id as usize != i || s.n != h.n() || s.k != h.k() || s.ell != config.ell || s.mode != used.mode {
            return Err(Error::InvalidParameter(format!(
                "scheme {i} does not match the run (id {}, n {}, k {}, ell {}, {:?})",
                s.id, s.n, s.k, s.ell, s.mode
            ))
            .in_stage("sampling"));
        }
    }
    let seed = config.seed;
    let labels = in_pool(config.workers, || label_edges(h, schemes, seed))?;
    clock.lap("labeling");

    let per_instance = in_pool(config.workers, || {
        schemes
            .par_iter()
            .map(|scheme| {
                let aux = build_aux_graph(h, scheme, &labels);
                let solutions: Vec<AuxSolution> = match scheme.mode {
                    Mode::FullPartition => {
                        let g = aux.to_simple()?;
                        pack_graph_hamilton(&g, None, seeding::derive(seed, HAMILTON, scheme.id as u64))
                            .cycles
                            .into_iter()
                            .map(AuxSolution::Cycle)
                            .collect()
                    }
                    _ => pack_perfect_matchings(&aux.to_bipartite()?)?
                        .matchings
                        .into_iter()
                        .map(AuxSolution::Matching)
                        .collect(),
                };
                let items = solutions
                    .iter()
                    .map(|s| assemble_cycle(scheme, s))
                    .collect::<Result<Vec<_>>>()?;
                Ok((aux.edge_count(), items))
            })
            .collect::<Result<Vec<_>>>()
    })?
    .map_err(|e| e.in_stage("packing"))?;
    clock.lap("packing");

    let kind = if used.mode == Mode::Matching {
        PackingKind::MatchingPacking
    } else {
        PackingKind::CyclePacking
    };
    let mut result = PackingResult::empty(kind, h.m());
    let mut instances = Vec::with_capacity(schemes.len());
    for (scheme, (aux_edges, items)) in schemes.iter().zip(per_instance) {
        instances.push(InstanceReport {
            id: scheme.id,
            aux_edges,
            harvest: items.len(),
        });
        result.per_instance.push(items.len());
        result.items.extend(items);
    }

    let verdict = verify_packing(h, &result);
    if !verdict.is_ok() {
        return Err(Error::Invariant(format!("packing failed verification: {verdict:?}")).in_stage("verify"));
    }
    clock.lap("verify");

    let edges_used = result.edges_used();
    let unlabeled = labels.unlabeled();
    let labeled_unpacked = labels.labeled() - edges_used.min(labels.labeled());
    if edges_used != result.items.len() * used.nu || edges_used + unlabeled + labeled_unpacked != h.m() {
        return Err(Error::Invariant(format!(
            "accounting mismatch: used {edges_used}, items {} x {}, unlabeled {unlabeled}, unpacked {labeled_unpacked}, m {}",
            result.items.len(),
            used.nu,
            h.m()
        ))
        .in_stage("verify"));
    }
    let totals = Totals {
        items: result.items.len(),
        edges_used,
        coverage: result.coverage(),
        unlabeled,
        labeled_unpacked,
    };
    let report = RunReport {
        params_theoretical: theoretical,
        params_used: used,
        instances,
        totals,
        audits: Vec::new(),
        audit_errors: Vec::new(),
        timings: BTreeMap::new(),
    };
    Ok((result, report, labels))
}

/// Packs `h` with `r` sampled instances and default settings.
pub fn pack_hypergraph(h: &Hypergraph, ell: usize, r: usize, seed: u64) -> Result<(PackingResult, RunReport)> {
    run_packing(&RunConfig::new(InputSource::InMemory(h.clone()), ell, seed).with_r(r as f64))
}
