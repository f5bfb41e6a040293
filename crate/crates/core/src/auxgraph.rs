//! Per-instance auxiliary graphs and the auditors for the pseudo-randomness
//! premises: degree properties, graph regularity, bipartite matching
//! premises and inclusion-count concentration.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use log::warn;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{binomial, binomial_f64, Hypergraph, RankTable};
use crate::packers::{BipartiteGraph, SimpleGraph};
use crate::partitions::{sample_scheme, LabeledEdgeSet, Mode, PartitionScheme};
use crate::seeding::{self, AUDIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuxKind {
    Bipartite,
    Simple,
}

/// Aux edge `(u, v)` with the id of the hyperedge it stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxEdge {
    pub u: u32,
    pub v: u32,
    pub hyperedge: u32,
}

/// Auxiliary graph of one instance. Bipartite graphs have classes `A = B =
/// {0, …, N-1}`; simple graphs have vertex set `{0, …, N-1}` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxGraph {
    pub instance: u32,
    pub kind: AuxKind,
    pub n: usize,
    pub edges: Vec<AuxEdge>,
}

impl AuxGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn to_bipartite(&self) -> Result<BipartiteGraph> {
        if self.kind != AuxKind::Bipartite {
            return Err(Error::Shape("auxiliary graph is not bipartite".into()));
        }
        BipartiteGraph::new(self.n, self.edges.iter().map(|e| (e.u, e.v)))
    }

    pub fn to_simple(&self) -> Result<SimpleGraph> {
        if self.kind != AuxKind::Simple {
            return Err(Error::Shape("auxiliary graph is not simple".into()));
        }
        SimpleGraph::new(self.n, self.edges.iter().map(|e| (e.u, e.v)))
    }

    /// Hyperedge id encoded by aux edge `(u, v)`.
    pub fn hyperedge(&self, u: u32, v: u32) -> Option<u32> {
        let (u, v) = match self.kind {
            AuxKind::Simple => (u.min(v), u.max(v)),
            AuxKind::Bipartite => (u, v),
        };
        self.edges
            .binary_search_by_key(&(u, v), |e| (e.u, e.v))
            .ok()
            .map(|i| self.edges[i].hyperedge)
    }
}

/// `G_i`: one aux edge per hyperedge labelled with this instance, placed at
/// the label's witness.
pub fn build_aux_graph(h: &Hypergraph, scheme: &PartitionScheme, labels: &LabeledEdgeSet) -> AuxGraph {
    debug_assert_eq!(labels.len(), h.m());
    let mut edges: Vec<AuxEdge> = labels
        .fiber(scheme.id)
        .iter()
        .map(|&id| {
            let w = labels.label(id as usize).expect("fiber edges are labelled").witness;
            debug_assert_eq!(scheme.edge_for(w), h.edge(id as usize));
            AuxEdge {
                u: w.a,
                v: w.b,
                hyperedge: id,
            }
        })
        .collect();
    edges.sort_unstable_by_key(|e| (e.u, e.v));
    let kind = match scheme.mode {
        Mode::FullPartition => AuxKind::Simple,
        _ => AuxKind::Bipartite,
    };
    AuxGraph {
        instance: scheme.id,
        kind,
        n: scheme.nu(),
        edges,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditMode {
    Exact,
    Sampled(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// Outcome of checking one property. `measured` is the extremal value found
/// and `bound` the threshold it was compared with; `slack` is the regularity
/// parameter at which the property would be tight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub property: String,
    pub mode: AuditMode,
    pub verdict: Verdict,
    pub witness: Vec<Vec<u32>>,
    #[serde(with = "crate::serde_float::option")]
    pub slack: Option<f64>,
    #[serde(with = "crate::serde_float")]
    pub measured: f64,
    #[serde(with = "crate::serde_float")]
    pub bound: f64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty", with = "crate::serde_float::map")]
    pub extra: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PropertyFamily {
    P,
    R,
}

/// Largest `C(n, a)` enumerated by exact audits.
pub const EXACT_SET_CAP: u64 = 1_000_000;
/// Largest number of link pairs visited by an exact co-degree audit.
pub const EXACT_PAIR_WORK_CAP: u64 = 50_000_000;
/// Sample count used when an exact audit is downgraded.
pub const DOWNGRADE_SAMPLES: usize = 10_000;

const ROUNDING_GUARD: f64 = 1e-9;

fn ceil_guarded(x: f64) -> f64 {
    (x - ROUNDING_GUARD).ceil()
}

fn floor_guarded(x: f64) -> f64 {
    (x + ROUNDING_GUARD).floor()
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Rounding {
    Ceil,
    Floor,
}

#[derive(Debug, Clone, PartialEq)]
enum Check {
    MinDegree,
    MaxDegree,
    /// Max `|N(S1) ∩ N(S2)|` over pairs whose intersection size is allowed.
    Codegree { intersections: Vec<usize> },
}

#[derive(Debug, Clone)]
struct PropertySpec {
    id: &'static str,
    check: Check,
    set_size: usize,
    /// `C(bn, br)` scales the bound.
    bn: i64,
    br: i64,
    p_power: i32,
    rounding: Rounding,
}

impl PropertySpec {
    fn expected(&self, p: f64) -> f64 {
        binomial_f64(self.bn, self.br) * p.powi(self.p_power)
    }

    fn bound(&self, p: f64, eps: f64) -> f64 {
        let scale = match self.check {
            Check::MinDegree => 1.0 - eps,
            _ => 1.0 + eps,
        };
        let x = scale * self.expected(p);
        match self.rounding {
            Rounding::Ceil => ceil_guarded(x),
            Rounding::Floor => floor_guarded(x),
        }
    }

    fn holds(&self, measured: f64, bound: f64) -> bool {
        match self.check {
            Check::MinDegree => measured >= bound,
            _ => measured <= bound,
        }
    }

    fn slack(&self, measured: f64, p: f64) -> Option<f64> {
        let e = self.expected(p);
        if e <= 0.0 {
            return None;
        }
        Some(match self.check {
            Check::MinDegree => 1.0 - measured / e,
            _ => measured / e - 1.0,
        })
    }
}

fn property_specs(n: u32, k: usize, ell: usize, family: PropertyFamily) -> Result<Vec<PropertySpec>> {
    let n = n as i64;
    let (ki, li) = (k as i64, ell as i64);
    use Check::*;
    use Rounding::*;
    let spec = |id, check, set_size: i64, bn: i64, br: i64, p_power, rounding| PropertySpec {
        id,
        check,
        set_size: set_size as usize,
        bn,
        br,
        p_power,
        rounding,
    };
    match family {
        PropertyFamily::P => {
            if !(2 * ell > k && ell < k) {
                return Err(Error::unsupported(k, ell, "property family P needs k/2 < ell < k"));
            }
            let a = 2 * (ki - li);
            let b = 2 * li - ki;
            Ok(vec![
                spec("P_a", MinDegree, a, n - a, b, 1, Ceil),
                spec("P_b", MinDegree, b, n - b, a, 1, Ceil),
                spec("P_c", MaxDegree, a + 1, n - 2 * ki + 2 * li - 1, b - 1, 1, Floor),
                spec("P_d", MaxDegree, b + 1, n - 2 * li + ki - 1, a - 1, 1, Floor),
                spec("P_e", Codegree { intersections: vec![0] }, b, n - 2 * b, a, 2, Floor),
                spec(
                    "P_f",
                    Codegree {
                        intersections: vec![0, (ki - li) as usize],
                    },
                    a,
                    n,
                    b,
                    2,
                    Floor,
                ),
            ])
        }
        PropertyFamily::R => {
            if ell != k {
                return Err(Error::unsupported(k, ell, "property family R needs ell = k"));
            }
            let kx = ki / 2;
            let ky = ki - kx;
            Ok(vec![
                spec("R_a", MinDegree, kx, n - kx, ky, 1, Ceil),
                spec("R_b", MinDegree, ky, n - ky, kx, 1, Ceil),
                spec("R_c", MaxDegree, kx + 1, n - kx - 1, ky - 1, 1, Ceil),
                spec("R_d", MaxDegree, ky + 1, n - ky - 1, kx - 1, 1, Ceil),
                spec("R_e", Codegree { intersections: vec![0] }, kx, n - 2 * kx, ky, 2, Floor),
                spec("R_f", Codegree { intersections: vec![0] }, ky, n - 2 * ky, kx, 2, Floor),
            ])
        }
    }
}

fn intersection_size(x: &[u32], y: &[u32]) -> usize {
    x.iter().filter(|v| y.binary_search(v).is_ok()).count()
}

/// `|N(S1) ∩ N(S2)|`: sets `Y` completing both `S1` and `S2` to edges.
fn codegree(h: &Hypergraph, s1: &[u32], s2: &[u32]) -> usize {
    let mut buf = Vec::with_capacity(h.k());
    h.completions(s1)
        .into_iter()
        .filter(|y| {
            if y.iter().any(|v| s2.binary_search(v).is_ok()) {
                return false;
            }
            buf.clear();
            buf.extend(s2.iter().copied().merge(y.iter().copied()));
            h.contains_sorted(&buf)
        })
        .count()
}

/// Sets `S ⊆ E` of size `s`, keyed by the rank of the complement `E ∖ S`.
fn links(h: &Hypergraph, s: usize, table: &RankTable) -> HashMap<u64, Vec<Vec<u32>>> {
    let mut out: HashMap<u64, Vec<Vec<u32>>> = HashMap::new();
    for e in h.edges() {
        for sub in e.iter().copied().combinations(s) {
            let rest: Vec<u32> = e.iter().copied().filter(|v| sub.binary_search(v).is_err()).collect();
            out.entry(table.rank(&rest)).or_default().push(sub);
        }
    }
    out
}

fn exact_feasible(h: &Hypergraph, spec: &PropertySpec) -> bool {
    let n = h.n() as u64;
    let sets = binomial(n, spec.set_size as u64).unwrap_or(u64::MAX);
    if sets > EXACT_SET_CAP {
        return false;
    }
    match spec.check {
        Check::Codegree { .. } => {
            let per_link = binomial(h.k() as u64, spec.set_size as u64).unwrap_or(u64::MAX);
            let free = binomial(n, (h.k() - spec.set_size) as u64).unwrap_or(u64::MAX).max(1);
            // Each link of a free set holds about m·C(k,s)/C(n,k−s) sets.
            let avg = (h.m() as u64).saturating_mul(per_link) / free + 1;
            free.saturating_mul(avg.saturating_mul(avg)) <= EXACT_PAIR_WORK_CAP
        }
        _ => true,
    }
}

fn exact_extremum(h: &Hypergraph, spec: &PropertySpec) -> Result<(f64, Vec<Vec<u32>>)> {
    let n = h.n();
    let s = spec.set_size;
    let table = RankTable::new(n, s.max(h.k()))?;
    match &spec.check {
        Check::MinDegree | Check::MaxDegree => {
            let degrees = h.degree_table(s)?;
            let pick = if spec.check == Check::MinDegree {
                degrees.iter().enumerate().min_by_key(|&(_, d)| *d)
            } else {
                degrees.iter().enumerate().max_by_key(|&(i, d)| (*d, std::cmp::Reverse(i)))
            };
            let (rank, &d) = pick.expect("at least one set");
            Ok((d as f64, vec![table.unrank(rank as u64, s)]))
        }
        Check::Codegree { intersections } => {
            let links = links(h, s, &table);
            let mut counts: HashMap<(u64, u64), u32> = HashMap::new();
            for group in links.values() {
                for (x, y) in group.iter().tuple_combinations() {
                    if intersections.contains(&intersection_size(x, y)) {
                        let (rx, ry) = (table.rank(x), table.rank(y));
                        *counts.entry((rx.min(ry), rx.max(ry))).or_default() += 1;
                    }
                }
            }
            match counts.into_iter().max_by_key(|&((a, b), c)| (c, std::cmp::Reverse((a, b)))) {
                Some(((a, b), c)) => Ok((c as f64, vec![table.unrank(a, s), table.unrank(b, s)])),
                None => Ok((0.0, first_valid_pair(n, s, intersections).unwrap_or_default())),
            }
        }
    }
}

/// Some pair with an allowed intersection size, used as the witness when
/// every pair has co-degree 0.
fn first_valid_pair(n: u32, s: usize, intersections: &[usize]) -> Option<Vec<Vec<u32>>> {
    let first: Vec<u32> = (1..=s as u32).collect();
    intersections.iter().find_map(|&j| {
        let extra = s - j;
        (s + extra <= n as usize).then(|| {
            let second = (1..=j as u32).chain(s as u32 + 1..=(s + extra) as u32).collect();
            vec![first.clone(), second]
        })
    })
}

fn random_set<R: Rng>(rng: &mut R, pool: &[u32], size: usize) -> Vec<u32> {
    let mut s: Vec<u32> = pool.choose_multiple(rng, size).copied().collect();
    s.sort_unstable();
    s
}

fn sampled_extremum(h: &Hypergraph, spec: &PropertySpec, count: usize, seed: u64, index: u64) -> (f64, Vec<Vec<u32>>) {
    let mut rng = seeding::stream(seed, AUDIT, index);
    let all: Vec<u32> = (1..=h.n()).collect();
    let s = spec.set_size;
    let mut best: Option<(f64, Vec<Vec<u32>>)> = None;
    let better = |v: f64, cur: &Option<(f64, Vec<Vec<u32>>)>| match cur {
        None => true,
        Some((b, _)) => match spec.check {
            Check::MinDegree => v < *b,
            _ => v > *b,
        },
    };
    for _ in 0..count {
        let (value, witness) = match &spec.check {
            Check::MinDegree | Check::MaxDegree => {
                let set = random_set(&mut rng, &all, s);
                (h.degree(&set) as f64, vec![set])
            }
            Check::Codegree { intersections } => {
                let s1 = random_set(&mut rng, &all, s);
                let outside: Vec<u32> = all.iter().copied().filter(|v| s1.binary_search(v).is_err()).collect();
                // Intersection size drawn in proportion to the number of such pairs.
                let weights: Vec<(usize, f64)> = intersections
                    .iter()
                    .map(|&j| (j, binomial_f64(s as i64, j as i64) * binomial_f64(outside.len() as i64, (s - j) as i64)))
                    .filter(|&(_, w)| w > 0.0)
                    .collect();
                let Ok(&(j, _)) = weights.choose_weighted(&mut rng, |&(_, w)| w) else {
                    continue;
                };
                let mut s2 = random_set(&mut rng, &s1, j);
                s2.extend(random_set(&mut rng, &outside, s - j));
                s2.sort_unstable();
                (codegree(h, &s1, &s2) as f64, vec![s1, s2])
            }
        };
        if better(value, &best) {
            best = Some((value, witness));
        }
    }
    best.unwrap_or((0.0, Vec::new()))
}

/// Checks the six degree properties of `family` against their exact bounds
/// with `p` the density of `h`. Exact mode enumerates every set (or pair)
/// and falls back to sampling when the enumeration is too large.
pub fn audit_degree_properties(
    h: &Hypergraph,
    ell: usize,
    eps: f64,
    mode: AuditMode,
    family: PropertyFamily,
    seed: u64,
) -> Result<Vec<AuditReport>> {
    let specs = property_specs(h.n(), h.k(), ell, family)?;
    let p = h.density();
    let mut reports = Vec::with_capacity(specs.len());
    for (index, spec) in specs.iter().enumerate() {
        let used = match mode {
            AuditMode::Exact if !exact_feasible(h, spec) => {
                warn!(
                    "{}: exact enumeration too large at n={}, sampling {DOWNGRADE_SAMPLES} instead",
                    spec.id,
                    h.n()
                );
                AuditMode::Sampled(DOWNGRADE_SAMPLES)
            }
            m => m,
        };
        let (measured, witness) = match used {
            AuditMode::Exact => exact_extremum(h, spec)?,
            AuditMode::Sampled(count) => sampled_extremum(h, spec, count, seed, index as u64),
        };
        let bound = spec.bound(p, eps);
        let mut ok = spec.holds(measured, bound);
        let mut note = None;
        if spec.check == Check::MinDegree && p == 0.0 {
            ok = false;
            note = Some("edgeless hypergraph: density 0 cannot satisfy a degree lower bound".into());
        }
        reports.push(AuditReport {
            property: spec.id.to_string(),
            mode: used,
            verdict: Verdict::from_bool(ok),
            witness,
            slack: spec.slack(measured, p),
            measured,
            bound,
            extra: BTreeMap::from([("eps".to_string(), eps), ("p".to_string(), p)]),
            note,
        });
    }
    Ok(reports)
}

/// Checks `Q_a` by a degree scan and `Q_b` on `budget` sampled disjoint pairs
/// `(S, T)` with sizes drawn from `{⌈εN⌉, 2⌈εN⌉, ⌊N/2⌋}`.
pub fn audit_regularity(g: &SimpleGraph, alpha: f64, eps: f64, budget: usize, seed: u64) -> Result<Vec<AuditReport>> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("eps = {eps} must lie in (0, 1)")));
    }
    if budget == 0 {
        return Err(Error::InvalidParameter("sample budget must be at least 1".into()));
    }
    let n = g.order();
    let nf = n as f64;
    if eps * nf < 1.0 {
        return Err(Error::DegenerateSize(format!("eps*N = {} is below 1", eps * nf)));
    }
    let degrees = g.degrees();
    let (v, &delta) = degrees.iter().enumerate().min_by_key(|&(_, d)| *d).expect("N >= 1");
    let qa_bound = (alpha - eps) * nf;
    let extra = BTreeMap::from([("alpha".to_string(), alpha), ("eps".to_string(), eps)]);
    let qa = AuditReport {
        property: "Q_a".into(),
        mode: AuditMode::Exact,
        verdict: Verdict::from_bool(delta as f64 >= qa_bound - ROUNDING_GUARD),
        witness: vec![vec![v as u32]],
        slack: Some(alpha - delta as f64 / nf),
        measured: delta as f64,
        bound: qa_bound,
        extra: extra.clone(),
        note: None,
    };

    let base = (eps * nf - ROUNDING_GUARD).ceil() as usize;
    let sizes: Vec<usize> = [base, 2 * base, n / 2].into_iter().filter(|&s| s >= 1).collect();
    let mut rng = seeding::stream(seed, AUDIT, 0x5162);
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut worst = (0.0f64, Vec::new());
    let mut drawn = 0;
    for _ in 0..budget {
        let s = *sizes.choose(&mut rng).expect("non-empty");
        let fits: Vec<usize> = sizes.iter().copied().filter(|&t| s + t <= n).collect();
        let Some(&t) = fits.choose(&mut rng) else {
            continue;
        };
        order.shuffle(&mut rng);
        let mut ss = order[..s].to_vec();
        let mut ts = order[s..s + t].to_vec();
        ss.sort_unstable();
        ts.sort_unstable();
        let density = g.edges_between(&ss, &ts) as f64 / (s * t) as f64;
        let dev = (density - alpha).abs();
        drawn += 1;
        if dev > worst.0 || worst.1.is_empty() {
            worst = (dev, vec![ss, ts]);
        }
    }
    let qb = AuditReport {
        property: "Q_b".into(),
        mode: AuditMode::Sampled(drawn),
        verdict: Verdict::from_bool(worst.0 <= eps + ROUNDING_GUARD),
        witness: worst.1,
        slack: Some(worst.0),
        measured: worst.0,
        bound: eps,
        extra,
        note: None,
    };
    Ok(vec![qa, qb])
}

/// Graph `G_P` of a full partition into parts of size `ℓ = k/2`: parts `u, v`
/// adjacent when their union is an edge.
pub fn partition_graph(h: &Hypergraph, scheme: &PartitionScheme) -> Result<SimpleGraph> {
    if scheme.mode != Mode::FullPartition {
        return Err(Error::unsupported(scheme.k, scheme.ell, "partition graphs need k = 2 ell"));
    }
    let nu = scheme.nu() as u32;
    let edges = (0..nu)
        .tuple_combinations()
        .filter(|&(u, v)| h.contains_sorted(&scheme.edge_for(crate::partitions::Witness { a: u, b: v })));
    SimpleGraph::new(nu as usize, edges)
}

/// Regularity of a `k = 2ℓ` hypergraph: samples `partitions` random full
/// partitions, audits each `G_P` with `α = p`, and reports the fraction that
/// fail as `measured`.
pub fn audit_partition_regularity(
    h: &Hypergraph,
    ell: usize,
    eps: f64,
    partitions: usize,
    budget: usize,
    seed: u64,
) -> Result<AuditReport> {
    let alpha = h.density();
    let mut failures = 0usize;
    let mut worst: Option<(f64, Vec<Vec<u32>>)> = None;
    for i in 0..partitions {
        let scheme = sample_scheme(h.n(), h.k(), ell, Some(Mode::FullPartition), seeding::derive(seed, AUDIT, 0x7061), i as u32)?;
        let g = partition_graph(h, &scheme)?;
        let reports = audit_regularity(&g, alpha, eps, budget, seeding::derive(seed, AUDIT, i as u64))?;
        if reports.iter().any(|r| !r.passed()) {
            failures += 1;
            if worst.is_none() {
                worst = Some((i as f64, scheme.x_blocks.clone()));
            }
        }
    }
    let rate = if partitions == 0 { 0.0 } else { failures as f64 / partitions as f64 };
    let mut extra = BTreeMap::from([
        ("alpha".to_string(), alpha),
        ("eps".to_string(), eps),
        ("partitions".to_string(), partitions as f64),
    ]);
    if let Some((i, _)) = &worst {
        extra.insert("first_failing_partition".into(), *i);
    }
    Ok(AuditReport {
        property: "Q_partition".into(),
        mode: AuditMode::Sampled(partitions),
        verdict: Verdict::from_bool(failures == 0),
        witness: worst.map(|w| w.1).unwrap_or_default(),
        slack: None,
        measured: rate,
        bound: 0.0,
        extra,
        note: None,
    })
}

/// Degree and co-degree premises of the disjoint perfect-matching bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BipartitePremises {
    pub degree: AuditReport,
    pub codegree: AuditReport,
    /// `θ^{4/3}·d²·N`, which the bound needs to be large.
    pub side_value: f64,
    /// Smallest `θ ≥ 0` for which both premises hold.
    pub theta_measured: f64,
}

/// Min degree against `(1−θ)dN` and max same-side co-degree against
/// `(1+θ)d²N`.
pub fn audit_bipartite_premises(g: &BipartiteGraph, d: f64, theta: f64) -> Result<BipartitePremises> {
    let n = g.side();
    let nf = n as f64;
    let (da, db) = g.degrees();
    let (min_side, min_v, min_deg) = da
        .iter()
        .enumerate()
        .map(|(v, &d)| (0u32, v, d))
        .chain(db.iter().enumerate().map(|(v, &d)| (1u32, v, d)))
        .min_by_key(|t| t.2)
        .unwrap_or((0, 0, 0));

    let words = n.div_ceil(64).max(1);
    let bitsets = |adj: Vec<Vec<u32>>| -> Vec<Vec<u64>> {
        adj.into_iter()
            .map(|list| {
                let mut bits = vec![0u64; words];
                list.iter().for_each(|&x| bits[x as usize / 64] |= 1 << (x % 64));
                bits
            })
            .collect()
    };
    let mut max_co = (0usize, 0u32, 0usize, 0usize);
    for (side, sets) in [(0u32, bitsets(g.adjacency_a())), (1u32, bitsets(g.adjacency_b()))] {
        for u in 0..n {
            for v in u + 1..n {
                let c = sets[u].iter().zip(&sets[v]).map(|(x, y)| (x & y).count_ones() as usize).sum();
                if c > max_co.0 {
                    max_co = (c, side, u, v);
                }
            }
        }
    }
    let deg_bound = (1.0 - theta) * d * nf;
    let co_bound = (1.0 + theta) * d * d * nf;
    let theta_deg = if d * nf > 0.0 { 1.0 - min_deg as f64 / (d * nf) } else { f64::INFINITY };
    let theta_co = if d * d * nf > 0.0 { max_co.0 as f64 / (d * d * nf) - 1.0 } else { f64::INFINITY };
    let theta_measured = theta_deg.max(theta_co).max(0.0);
    let side_value = theta.powf(4.0 / 3.0) * d * d * nf;
    let extra = BTreeMap::from([
        ("d".to_string(), d),
        ("theta".to_string(), theta),
        ("side_value".to_string(), side_value),
    ]);
    let side_name = |s: u32| if s == 0 { "A" } else { "B" };
    let degree = AuditReport {
        property: "L2-degree".into(),
        mode: AuditMode::Exact,
        verdict: Verdict::from_bool(min_deg as f64 >= deg_bound - ROUNDING_GUARD),
        witness: vec![vec![min_side, min_v as u32]],
        slack: theta_deg.is_finite().then_some(theta_deg),
        measured: min_deg as f64,
        bound: deg_bound,
        extra: extra.clone(),
        note: Some(format!("witness is [side, vertex] with side 0 = A, 1 = B; min on side {}", side_name(min_side))),
    };
    let codegree = AuditReport {
        property: "L2-codegree".into(),
        mode: AuditMode::Exact,
        verdict: Verdict::from_bool(max_co.0 as f64 <= co_bound + ROUNDING_GUARD),
        witness: vec![vec![max_co.1, max_co.2 as u32, max_co.3 as u32]],
        slack: theta_co.is_finite().then_some(theta_co),
        measured: max_co.0 as f64,
        bound: co_bound,
        extra,
        note: Some("witness is [side, u, v] with side 0 = A, 1 = B".into()),
    };
    Ok(BipartitePremises {
        degree,
        codegree,
        side_value,
        theta_measured,
    })
}

/// Fraction of edges whose `f(E)` leaves `rρ ± √(4k·rρ·ln n)`, passing when it
/// is at most `1/n + 10/√m`.
pub fn audit_inclusion_counts(labels: &LabeledEdgeSet, r: f64, rho: f64, n: u32, k: usize) -> AuditReport {
    let m = labels.len();
    let mean = r * rho;
    let half = (4.0 * k as f64 * mean * (n as f64).ln()).sqrt();
    let (lo, hi) = (mean - half, mean + half);
    let outside: Vec<usize> = (0..m)
        .filter(|&e| {
            let f = labels.count(e) as f64;
            f < lo || f > hi
        })
        .collect();
    let zero = labels.counts().iter().filter(|&&f| f == 0).count();
    let fraction = if m == 0 { 0.0 } else { outside.len() as f64 / m as f64 };
    let threshold = if m == 0 { 1.0 } else { 1.0 / n as f64 + 10.0 / (m as f64).sqrt() };
    let mut ok = fraction <= threshold;
    let mut note = None;
    if r < 1.0 {
        ok = false;
        note = Some("no instances: every edge stays unlabelled".into());
    }
    AuditReport {
        property: "f-window".into(),
        mode: AuditMode::Exact,
        verdict: Verdict::from_bool(ok),
        witness: outside.first().map(|&e| vec![e as u32]).into_iter().collect(),
        slack: Some(fraction),
        measured: fraction,
        bound: threshold,
        extra: BTreeMap::from([
            ("window_low".to_string(), lo),
            ("window_high".to_string(), hi),
            ("zero_count".to_string(), zero as f64),
            ("outside_count".to_string(), outside.len() as f64),
        ]),
        note,
    }
}
