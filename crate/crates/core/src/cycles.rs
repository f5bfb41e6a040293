//! Type-ℓ Hamilton cycles, hypergraph perfect matchings, packings of them,
//! and their text format.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseErrorKind, Result};
use crate::hypercore::Hypergraph;
use crate::partitions::{Mode, PartitionScheme};

/// A type-ℓ Hamilton cycle with its explicit cyclic vertex order. Edge `j`
/// is the window of `k` consecutive vertices starting at position `j·ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeLCycle {
    pub ell: usize,
    pub k: usize,
    pub order: Vec<u32>,
    pub edges: Vec<Vec<u32>>,
}

fn window(order: &[u32], start: usize, k: usize) -> Vec<u32> {
    let n = order.len();
    let mut w: Vec<u32> = (0..k).map(|i| order[(start + i) % n]).collect();
    w.sort_unstable();
    w
}

impl TypeLCycle {
    /// Derives the `n/ℓ` window edges from a cyclic order.
    pub fn from_order(k: usize, ell: usize, order: Vec<u32>) -> Result<Self> {
        let n = order.len();
        if ell == 0 || !n.is_multiple_of(ell) {
            return Err(Error::Divisibility { n: n as u32, ell });
        }
        if k > n {
            return Err(Error::InvalidParameter(format!("k={k} exceeds order length {n}")));
        }
        let edges = (0..n / ell).map(|j| window(&order, j * ell, k)).collect();
        Ok(TypeLCycle {
            ell,
            k,
            order,
            edges,
        })
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Same cycle, order rotated left by `blocks·ℓ` positions.
    pub fn rotated(&self, blocks: usize) -> Self {
        let mut order = self.order.clone();
        if !order.is_empty() {
            let shift = (blocks * self.ell) % order.len();
            order.rotate_left(shift);
        }
        Self::from_order(self.k, self.ell, order).expect("shape already checked")
    }

    /// Same edge set traversed backwards. The reversed order is realigned so
    /// that windows still start at multiples of `ℓ`.
    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        if !order.is_empty() {
            let shift = (self.ell - self.k % self.ell) % self.ell % order.len();
            order.rotate_left(shift);
        }
        Self::from_order(self.k, self.ell, order).expect("shape already checked")
    }

    /// Canonical representative: the lexicographically least order among all
    /// block rotations of this order and of its realigned reversal.
    pub fn canonical(&self) -> Self {
        let blocks = self.order.len() / self.ell.max(1);
        let rev = self.reversed();
        (0..blocks)
            .flat_map(|b| [self.rotated(b), rev.rotated(b)])
            .min_by(|x, y| x.order.cmp(&y.order))
            .unwrap_or_else(|| self.clone())
    }

    /// Whether both describe the same cycle up to rotation and reversal.
    pub fn same_cycle(&self, other: &Self) -> bool {
        self.ell == other.ell && self.k == other.k && self.canonical() == other.canonical()
    }
}

/// A perfect matching of a k-uniform hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperMatching {
    pub blocks: Vec<Vec<u32>>,
}

/// First violated cycle invariant, or `Ok`. Windows are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum CycleVerdict {
    Ok,
    NotPermutation,
    WrongEdgeCount { expected: usize, found: usize },
    WindowMismatch { window: usize },
    ShiftViolation { window: usize },
    MissingEdge { window: usize },
    NotPartition,
}

impl CycleVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, CycleVerdict::Ok)
    }
}

fn is_permutation(order: &[u32], n: u32) -> bool {
    let mut seen = vec![false; n as usize + 1];
    order.len() == n as usize
        && order.iter().all(|&v| {
            v >= 1 && v <= n && !std::mem::replace(&mut seen[v as usize], true)
        })
}

/// Checks a cycle against `h`: the order is a permutation of `1..=n`, each
/// listed edge is its window, consecutive edges differ in `ℓ` vertices, the
/// difference sets partition `[n]`, and every edge is in `h`.
pub fn validate_cycle(h: &Hypergraph, c: &TypeLCycle) -> Result<CycleVerdict> {
    let n = h.n();
    if c.ell == 0 || !(n as usize).is_multiple_of(c.ell) {
        return Err(Error::Divisibility { n, ell: c.ell });
    }
    if !is_permutation(&c.order, n) {
        return Ok(CycleVerdict::NotPermutation);
    }
    let nu = n as usize / c.ell;
    if c.edges.len() != nu {
        return Ok(CycleVerdict::WrongEdgeCount {
            expected: nu,
            found: c.edges.len(),
        });
    }
    let k = h.k();
    for (j, e) in c.edges.iter().enumerate() {
        if *e != window(&c.order, j * c.ell, k) {
            return Ok(CycleVerdict::WindowMismatch { window: j });
        }
        let prev = &c.edges[(j + nu - 1) % nu];
        let dropped = prev.iter().filter(|v| e.binary_search(v).is_err()).count();
        if dropped != c.ell {
            return Ok(CycleVerdict::ShiftViolation { window: j });
        }
        if !h.contains_sorted(e) {
            return Ok(CycleVerdict::MissingEdge { window: j });
        }
    }
    let mut covered = vec![false; n as usize + 1];
    for j in 0..nu {
        let prev = &c.edges[(j + nu - 1) % nu];
        for &v in c.edges[j].iter().filter(|v| prev.binary_search(v).is_err()) {
            if std::mem::replace(&mut covered[v as usize], true) {
                return Ok(CycleVerdict::NotPartition);
            }
        }
    }
    if covered[1..].iter().any(|c| !c) {
        return Ok(CycleVerdict::NotPartition);
    }
    Ok(CycleVerdict::Ok)
}

/// Checks that `m` is a perfect matching of `h`; returns the reason otherwise.
pub fn validate_matching(h: &Hypergraph, m: &HyperMatching) -> std::result::Result<(), String> {
    let n = h.n() as usize;
    if !n.is_multiple_of(h.k()) || m.blocks.len() != n / h.k() {
        return Err(format!("expected {} blocks, found {}", n / h.k(), m.blocks.len()));
    }
    let mut seen = vec![false; n + 1];
    for (i, b) in m.blocks.iter().enumerate() {
        if !h.contains_sorted(b) {
            return Err(format!("block {i} {b:?} is not an edge"));
        }
        for &v in b {
            if std::mem::replace(&mut seen[v as usize], true) {
                return Err(format!("vertex {v} covered twice"));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PackedItem {
    Cycle(TypeLCycle),
    Matching(HyperMatching),
}

impl PackedItem {
    pub fn hyperedges(&self) -> &[Vec<u32>] {
        match self {
            PackedItem::Cycle(c) => &c.edges,
            PackedItem::Matching(m) => &m.blocks,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PackingKind {
    CyclePacking,
    MatchingPacking,
}

/// Edge-disjoint cycles or matchings harvested from a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingResult {
    pub kind: PackingKind,
    pub items: Vec<PackedItem>,
    /// Items harvested per partition instance, by instance id.
    pub per_instance: Vec<usize>,
    /// Edge count of the source hypergraph.
    pub m: usize,
}

impl PackingResult {
    pub fn empty(kind: PackingKind, m: usize) -> Self {
        PackingResult {
            kind,
            items: Vec::new(),
            per_instance: Vec::new(),
            m,
        }
    }

    pub fn edges_used(&self) -> usize {
        self.items.iter().map(|i| i.hyperedges().len()).sum()
    }

    /// Used-edge fraction; 0 for an edgeless source.
    pub fn coverage(&self) -> f64 {
        if self.m == 0 {
            0.0
        } else {
            self.edges_used() as f64 / self.m as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum PackingVerdict {
    Ok,
    InvalidItem { item: usize, reason: String },
    Collision { edge: Vec<u32>, first: usize, second: usize },
}

impl PackingVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, PackingVerdict::Ok)
    }
}

/// Every item must be valid in `h` and no hyperedge may appear twice.
pub fn verify_packing(h: &Hypergraph, r: &PackingResult) -> PackingVerdict {
    for (i, item) in r.items.iter().enumerate() {
        let reason = match item {
            PackedItem::Cycle(c) => match validate_cycle(h, c) {
                Ok(CycleVerdict::Ok) => None,
                Ok(v) => Some(format!("{v:?}")),
                Err(e) => Some(e.to_string()),
            },
            PackedItem::Matching(m) => validate_matching(h, m).err(),
        };
        if let Some(reason) = reason {
            return PackingVerdict::InvalidItem { item: i, reason };
        }
    }
    let mut owner: HashMap<&[u32], usize> = HashMap::new();
    for (i, item) in r.items.iter().enumerate() {
        for e in item.hyperedges() {
            if let Some(&first) = owner.get(e.as_slice()) {
                // Within-item repeats are rejected by the validators above.
                return PackingVerdict::Collision {
                    edge: e.clone(),
                    first,
                    second: i,
                };
            }
            owner.insert(e, i);
        }
    }
    PackingVerdict::Ok
}

/// A solution found in an auxiliary graph, with 0-based block indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuxSolution {
    /// Perfect matching `a -> b` as `ν` pairs.
    Matching(Vec<(u32, u32)>),
    /// Hamilton cycle of the part graph as a vertex sequence.
    Cycle(Vec<u32>),
}

/// Lifts an auxiliary-graph solution of `scheme` to a hypergraph item.
///
/// A perfect matching `a -> φ(a)` in bipartition-cycle mode gives the order
/// `X_0, Y_φ(0), X_1, Y_φ(1), …` whose windows are `X_a ∪ Y_φ(a) ∪ X_{a+1}`;
/// in matching mode it gives blocks `X_a ∪ Y_φ(a)`. A Hamilton cycle
/// `u_0, u_1, …` of the part graph gives the order `X_{u_0}, X_{u_1}, …`.
pub fn assemble_cycle(scheme: &PartitionScheme, solution: &AuxSolution) -> Result<PackedItem> {
    let nu = scheme.nu();
    match (scheme.mode, solution) {
        (Mode::BipartitionCycle | Mode::Matching, AuxSolution::Matching(pairs)) => {
            let mut phi = vec![None; nu];
            let mut used_b = vec![false; nu];
            for &(a, b) in pairs {
                let (a, b) = (a as usize, b as usize);
                if a >= nu || b >= nu || phi[a].is_some() || used_b[b] {
                    return Err(Error::IncompleteSolution(format!(
                        "pair ({a}, {b}) is out of range or reuses a vertex"
                    )));
                }
                phi[a] = Some(b);
                used_b[b] = true;
            }
            let phi: Vec<usize> = phi
                .into_iter()
                .collect::<Option<_>>()
                .ok_or_else(|| Error::IncompleteSolution("matching is not perfect".into()))?;
            if scheme.mode == Mode::Matching {
                let blocks = phi
                    .iter()
                    .enumerate()
                    .map(|(a, &b)| {
                        scheme.x_blocks[a]
                            .iter()
                            .chain(&scheme.y_blocks[b])
                            .copied()
                            .sorted_unstable()
                            .collect()
                    })
                    .collect();
                Ok(PackedItem::Matching(HyperMatching { blocks }))
            } else {
                let order = phi
                    .iter()
                    .enumerate()
                    .flat_map(|(a, &b)| scheme.x_blocks[a].iter().chain(&scheme.y_blocks[b]))
                    .copied()
                    .collect();
                Ok(PackedItem::Cycle(TypeLCycle::from_order(scheme.k, scheme.ell, order)?))
            }
        }
        (Mode::FullPartition, AuxSolution::Cycle(seq)) => {
            let mut seen = vec![false; nu];
            let complete = seq.len() == nu
                && seq
                    .iter()
                    .all(|&u| (u as usize) < nu && !std::mem::replace(&mut seen[u as usize], true));
            if !complete {
                return Err(Error::IncompleteSolution(
                    "part sequence is not a Hamilton cycle of the part graph".into(),
                ));
            }
            let order = seq
                .iter()
                .flat_map(|&u| scheme.x_blocks[u as usize].iter())
                .copied()
                .collect();
            Ok(PackedItem::Cycle(TypeLCycle::from_order(scheme.k, scheme.ell, order)?))
        }
        (mode, _) => Err(Error::IncompleteSolution(format!(
            "solution kind does not fit mode {mode:?}"
        ))),
    }
}

/// Writes items in the record format: `cycle ℓ`, the order, then the edges;
/// or `matching k`, then the blocks.
pub fn write_packing<W: Write>(r: &PackingResult, mut out: W) -> Result<()> {
    for item in &r.items {
        match item {
            PackedItem::Cycle(c) => {
                writeln!(out, "cycle {}", c.ell)?;
                writeln!(out, "{}", c.order.iter().join(" "))?;
                for e in &c.edges {
                    writeln!(out, "{}", e.iter().join(" "))?;
                }
            }
            PackedItem::Matching(m) => {
                let k = m.blocks.first().map_or(0, Vec::len);
                writeln!(out, "matching {k}")?;
                for b in &m.blocks {
                    writeln!(out, "{}", b.iter().join(" "))?;
                }
            }
        }
    }
    Ok(())
}

pub fn write_packing_string(r: &PackingResult) -> String {
    let mut buf = Vec::new();
    write_packing(r, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

fn parse_numbers(line: &str, lineno: usize) -> Result<Vec<u32>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::parse(lineno, ParseErrorKind::BadToken(t.into())))
        })
        .collect()
}

/// Reads records written by [`write_packing`]. `m` is the edge count of the
/// hypergraph the items refer to.
pub fn parse_packing<R: BufRead>(reader: R, m: usize) -> Result<PackingResult> {
    enum Head {
        Cycle(usize),
        Matching(usize),
    }
    let mut records: Vec<(usize, Head, Vec<(usize, Vec<u32>)>)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut words = t.split_whitespace();
        let first = words.next().unwrap_or_default();
        if first == "cycle" || first == "matching" {
            let arg = words
                .next()
                .and_then(|w| w.parse::<usize>().ok())
                .filter(|_| words.next().is_none())
                .ok_or_else(|| Error::parse(lineno, ParseErrorKind::BadHeader(t.into())))?;
            let head = if first == "cycle" {
                Head::Cycle(arg)
            } else {
                Head::Matching(arg)
            };
            records.push((lineno, head, Vec::new()));
        } else {
            let nums = parse_numbers(t, lineno)?;
            let (_, _, body) = records
                .last_mut()
                .ok_or_else(|| Error::parse(lineno, ParseErrorKind::MissingHeader))?;
            body.push((lineno, nums));
        }
    }
    let mut items = Vec::new();
    let mut kinds = (false, false);
    for (lineno, head, body) in records {
        match head {
            Head::Cycle(ell) => {
                kinds.0 = true;
                let mut lines = body.into_iter();
                let (_, order) = lines
                    .next()
                    .ok_or_else(|| Error::parse(lineno, ParseErrorKind::Truncated("cycle order".into())))?;
                let edges: Vec<(usize, Vec<u32>)> = lines.collect();
                let k = edges.first().map_or(0, |(_, e)| e.len());
                let mut sorted = Vec::with_capacity(edges.len());
                for (ln, mut e) in edges {
                    if e.len() != k {
                        return Err(Error::parse(
                            ln,
                            ParseErrorKind::Arity {
                                expected: k,
                                found: e.len(),
                            },
                        ));
                    }
                    e.sort_unstable();
                    sorted.push(e);
                }
                items.push(PackedItem::Cycle(TypeLCycle {
                    ell,
                    k,
                    order,
                    edges: sorted,
                }));
            }
            Head::Matching(k) => {
                kinds.1 = true;
                let mut blocks = Vec::with_capacity(body.len());
                for (ln, mut b) in body {
                    if b.len() != k {
                        return Err(Error::parse(
                            ln,
                            ParseErrorKind::Arity {
                                expected: k,
                                found: b.len(),
                            },
                        ));
                    }
                    b.sort_unstable();
                    blocks.push(b);
                }
                items.push(PackedItem::Matching(HyperMatching { blocks }));
            }
        }
    }
    let kind = if kinds.1 && !kinds.0 {
        PackingKind::MatchingPacking
    } else {
        PackingKind::CyclePacking
    };
    Ok(PackingResult {
        kind,
        items,
        per_instance: Vec::new(),
        m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn loose_h() -> Hypergraph {
        Hypergraph::new(6, 3, [[1, 2, 3], [3, 4, 5], [5, 6, 1]]).unwrap()
    }

    #[test]
    fn loose_cycle_is_valid() {
        let c = TypeLCycle::from_order(3, 2, vec![1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(c.edges, vec![vec![1, 2, 3], vec![3, 4, 5], vec![1, 5, 6]]);
        assert_eq!(validate_cycle(&loose_h(), &c).unwrap(), CycleVerdict::Ok);
    }

    #[test]
    fn tight_cycle_is_valid() {
        let h = Hypergraph::new(5, 3, [[1, 2, 3], [2, 3, 4], [3, 4, 5], [4, 5, 1], [5, 1, 2]]).unwrap();
        let c = TypeLCycle::from_order(3, 1, vec![1, 2, 3, 4, 5]).unwrap();
        assert_eq!(c.edges.len(), 5);
        assert_eq!(validate_cycle(&h, &c).unwrap(), CycleVerdict::Ok);
    }

    #[test]
    fn missing_edge_is_reported_by_window() {
        let h = Hypergraph::new(6, 3, [[1, 2, 3], [5, 6, 1]]).unwrap();
        let c = TypeLCycle::from_order(3, 2, vec![1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(
            validate_cycle(&h, &c).unwrap(),
            CycleVerdict::MissingEdge { window: 1 }
        );
    }

    #[test]
    fn validator_rejects_malformed_cycles() {
        let h = loose_h();
        let good = TypeLCycle::from_order(3, 2, vec![1, 2, 3, 4, 5, 6]).unwrap();
        let mut c = good.clone();
        c.order[1] = 1;
        assert_eq!(validate_cycle(&h, &c).unwrap(), CycleVerdict::NotPermutation);
        let mut c = good.clone();
        c.edges.pop();
        assert!(matches!(
            validate_cycle(&h, &c).unwrap(),
            CycleVerdict::WrongEdgeCount { expected: 3, found: 2 }
        ));
        let mut c = good.clone();
        c.edges.swap(0, 1);
        assert_eq!(
            validate_cycle(&h, &c).unwrap(),
            CycleVerdict::WindowMismatch { window: 0 }
        );
        let mut c = good;
        c.ell = 4;
        assert!(matches!(validate_cycle(&h, &c), Err(Error::Divisibility { .. })));
    }

    #[test]
    fn two_block_wrap_is_a_shift_violation() {
        let h = Hypergraph::complete(4, 3).unwrap();
        let c = TypeLCycle::from_order(3, 2, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(
            validate_cycle(&h, &c).unwrap(),
            CycleVerdict::ShiftViolation { window: 0 }
        );
    }

    fn example_scheme() -> PartitionScheme {
        PartitionScheme::from_blocks(
            0,
            6,
            3,
            2,
            vec![vec![2], vec![1], vec![3]],
            vec![vec![5], vec![4], vec![6]],
        )
        .unwrap()
    }

    #[test]
    fn assemble_bipartition_example() {
        let s = example_scheme();
        let item = assemble_cycle(&s, &AuxSolution::Matching(vec![(0, 0), (1, 1), (2, 2)])).unwrap();
        let PackedItem::Cycle(c) = item else { panic!("expected cycle") };
        assert_eq!(c.order, vec![2, 5, 1, 4, 3, 6]);
        assert_eq!(c.edges, vec![vec![1, 2, 5], vec![1, 3, 4], vec![2, 3, 6]]);
        let h = Hypergraph::new(6, 3, c.edges.iter()).unwrap();
        assert!(validate_cycle(&h, &c).unwrap().is_ok());
    }

    #[test]
    fn assemble_matching_example() {
        let s = PartitionScheme::from_blocks(
            0,
            8,
            4,
            4,
            vec![vec![1, 2], vec![3, 4]],
            vec![vec![5, 6], vec![7, 8]],
        )
        .unwrap();
        let item = assemble_cycle(&s, &AuxSolution::Matching(vec![(0, 0), (1, 1)])).unwrap();
        assert_eq!(
            item,
            PackedItem::Matching(HyperMatching {
                blocks: vec![vec![1, 2, 5, 6], vec![3, 4, 7, 8]]
            })
        );
    }

    #[test]
    fn assemble_full_partition_example() {
        let s = PartitionScheme::from_blocks(
            0,
            8,
            4,
            2,
            vec![vec![1, 2], vec![3, 4], vec![5, 6], vec![7, 8]],
            vec![],
        )
        .unwrap();
        // Parts 1,3,2,4 in 1-based numbering.
        let item = assemble_cycle(&s, &AuxSolution::Cycle(vec![0, 2, 1, 3])).unwrap();
        let PackedItem::Cycle(c) = item else { panic!("expected cycle") };
        assert_eq!(
            c.edges,
            vec![
                vec![1, 2, 5, 6],
                vec![3, 4, 5, 6],
                vec![3, 4, 7, 8],
                vec![1, 2, 7, 8]
            ]
        );
    }

    #[test]
    fn assemble_rejects_incomplete_solutions() {
        let s = example_scheme();
        assert!(matches!(
            assemble_cycle(&s, &AuxSolution::Matching(vec![(0, 0), (1, 1)])),
            Err(Error::IncompleteSolution(_))
        ));
        assert!(matches!(
            assemble_cycle(&s, &AuxSolution::Matching(vec![(0, 0), (1, 0), (2, 2)])),
            Err(Error::IncompleteSolution(_))
        ));
        assert!(matches!(
            assemble_cycle(&s, &AuxSolution::Cycle(vec![0, 1, 2])),
            Err(Error::IncompleteSolution(_))
        ));
    }

    #[test]
    fn empty_packing_verifies() {
        let r = PackingResult::empty(PackingKind::CyclePacking, 3);
        assert!(verify_packing(&loose_h(), &r).is_ok());
        assert_eq!(r.coverage(), 0.0);
    }

    #[test]
    fn shared_edge_is_a_collision() {
        let h = Hypergraph::complete(6, 3).unwrap();
        let c1 = TypeLCycle::from_order(3, 2, vec![1, 2, 3, 4, 5, 6]).unwrap();
        let c2 = TypeLCycle::from_order(3, 2, vec![1, 2, 3, 5, 4, 6]).unwrap();
        let r = PackingResult {
            kind: PackingKind::CyclePacking,
            items: vec![PackedItem::Cycle(c1), PackedItem::Cycle(c2)],
            per_instance: vec![],
            m: h.m(),
        };
        assert_eq!(
            verify_packing(&h, &r),
            PackingVerdict::Collision {
                edge: vec![1, 2, 3],
                first: 0,
                second: 1
            }
        );
    }

    #[test]
    fn packing_file_round_trip() {
        let c = TypeLCycle::from_order(3, 2, vec![2, 5, 1, 4, 3, 6]).unwrap();
        let m = HyperMatching {
            blocks: vec![vec![1, 2, 5, 6], vec![3, 4, 7, 8]],
        };
        let r = PackingResult {
            kind: PackingKind::CyclePacking,
            items: vec![PackedItem::Cycle(c), PackedItem::Matching(m)],
            per_instance: vec![],
            m: 10,
        };
        let text = write_packing_string(&r);
        assert!(text.starts_with("cycle 2\n2 5 1 4 3 6\n1 2 5\n"));
        let back = parse_packing(text.as_bytes(), 10).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn canonical_form_identifies_rotations_and_reversal() {
        let c = TypeLCycle::from_order(3, 2, vec![2, 5, 1, 4, 3, 6]).unwrap();
        let rev = c.reversed();
        assert_eq!(rev.order, vec![3, 4, 1, 5, 2, 6]);
        let mut a: Vec<_> = c.edges.clone();
        let mut b: Vec<_> = rev.edges.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert!(c.same_cycle(&rev));
        assert!(c.same_cycle(&c.rotated(2)));
        assert_eq!(c.canonical().order[0], 1);
    }

    fn shuffled(n: u32, seed: u64) -> Vec<u32> {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut v: Vec<u32> = (1..=n).collect();
        v.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        v
    }

    proptest! {
        #[test]
        fn verdict_invariant_under_rotation_and_reversal(
            seed in any::<u64>(),
            case in 0usize..5,
            rot in 0usize..12,
        ) {
            let (n, k, ell) = [(6u32, 3usize, 2usize), (12, 4, 3), (12, 4, 2), (12, 3, 1), (12, 5, 3)][case];
            let c = TypeLCycle::from_order(k, ell, shuffled(n, seed)).unwrap();
            let full = Hypergraph::new(n, k, c.edges.iter()).unwrap();
            let partial = Hypergraph::new(n, k, c.edges.iter().skip(1)).unwrap();
            for h in [&full, &partial] {
                let base = validate_cycle(h, &c).unwrap().is_ok();
                prop_assert_eq!(validate_cycle(h, &c.rotated(rot)).unwrap().is_ok(), base);
                prop_assert_eq!(validate_cycle(h, &c.reversed()).unwrap().is_ok(), base);
            }
            prop_assert!(validate_cycle(&full, &c).unwrap().is_ok());
            prop_assert!(!validate_cycle(&partial, &c).unwrap().is_ok());
        }

        #[test]
        fn assembled_cycles_shift_by_ell(seed in any::<u64>(), case in 0usize..3) {
            let (n, k, ell) = [(6u32, 3usize, 2usize), (15, 5, 3), (12, 4, 3)][case];
            let s = crate::partitions::sample_scheme(n, k, ell, None, seed, 0).unwrap();
            let nu = s.nu() as u32;
            let perm = shuffled(nu, seed ^ 1);
            let pairs: Vec<(u32, u32)> = (0..nu).map(|a| (a, perm[a as usize] - 1)).collect();
            let PackedItem::Cycle(c) = assemble_cycle(&s, &AuxSolution::Matching(pairs)).unwrap() else {
                panic!("expected a cycle");
            };
            for j in 0..c.edges.len() {
                let prev = &c.edges[(j + c.edges.len() - 1) % c.edges.len()];
                let dropped = prev.iter().filter(|v| !c.edges[j].contains(v)).count();
                prop_assert_eq!(dropped, ell);
            }
            let h = Hypergraph::new(n, k, c.edges.iter()).unwrap();
            prop_assert!(validate_cycle(&h, &c).unwrap().is_ok());
        }
    }
}
