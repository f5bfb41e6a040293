//! Edge-disjoint perfect-matching packing in bipartite graphs (flow
//! optimal), a brute-force oracle for small instances, and a rotation-
//! extension heuristic for edge-disjoint Hamilton cycles in simple graphs.

use std::collections::VecDeque;
use std::io::{BufRead, Write};

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseErrorKind, Result};
use crate::seeding::{self, HAMILTON};

/// Bipartite graph with classes `A = B = {0, …, N-1}`. Edges are `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl BipartiteGraph {
    /// Parallel edges collapse; endpoints must lie in `0..n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut list: Vec<(u32, u32)> = edges.into_iter().collect();
        if let Some(&(a, b)) = list.iter().find(|&&(a, b)| a as usize >= n || b as usize >= n) {
            return Err(Error::Shape(format!("edge ({a}, {b}) outside sides of size {n}")));
        }
        list.sort_unstable();
        list.dedup();
        Ok(BipartiteGraph { n, edges: list })
    }

    /// Checks that both classes have the same size before building.
    pub fn with_sides(a_size: usize, b_size: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        if a_size != b_size {
            return Err(Error::Shape(format!("unequal sides {a_size} and {b_size}")));
        }
        Self::new(a_size, edges)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n as u32).flat_map(|a| (0..n as u32).map(move |b| (a, b)));
        Self::new(n, edges).expect("in range")
    }

    /// Each of the `N²` pairs present independently with probability `p`.
    pub fn random(n: usize, p: f64, seed: u64) -> Self {
        let mut rng = seeding::stream(seed, seeding::GENERATE, n as u64);
        let edges: Vec<_> = (0..n as u32)
            .flat_map(|a| (0..n as u32).map(move |b| (a, b)))
            .filter(|_| rng.random::<f64>() < p)
            .collect();
        Self::new(n, edges).expect("in range")
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edges.binary_search(&(a, b)).is_ok()
    }

    /// Neighbours of each A-vertex.
    pub fn adjacency_a(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
        }
        adj
    }

    /// Neighbours of each B-vertex.
    pub fn adjacency_b(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[b as usize].push(a);
        }
        adj
    }

    /// Degrees of A-vertices followed by degrees of B-vertices.
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut da = vec![0; self.n];
        let mut db = vec![0; self.n];
        for &(a, b) in &self.edges {
            da[a as usize] += 1;
            db[b as usize] += 1;
        }
        (da, db)
    }

    pub fn min_degree(&self) -> usize {
        let (da, db) = self.degrees();
        da.into_iter().chain(db).min().unwrap_or(0)
    }

    /// `e(S, B ∖ T)` for an A-subset `S` and a B-subset `T`.
    pub fn cut_edges(&self, s: &[u32], t: &[u32]) -> usize {
        let mut in_s = vec![false; self.n];
        let mut in_t = vec![false; self.n];
        s.iter().for_each(|&a| in_s[a as usize] = true);
        t.iter().for_each(|&b| in_t[b as usize] = true);
        self.edges
            .iter()
            .filter(|&&(a, b)| in_s[a as usize] && !in_t[b as usize])
            .count()
    }
}

/// Whether `e(S, B ∖ T) ≥ (|S| − |T|)·n0`, the cut condition for `n0`
/// edge-disjoint perfect matchings.
pub fn cut_condition_holds(g: &BipartiteGraph, s: &[u32], t: &[u32], n0: usize) -> bool {
    let lhs = g.cut_edges(s, t) as i64;
    lhs >= (s.len() as i64 - t.len() as i64) * n0 as i64
}

/// Sets `S ⊆ A`, `T ⊆ B` from a minimum cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCertificate {
    pub n0: usize,
    pub s: Vec<u32>,
    pub t: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowOptimum {
    pub t: usize,
    /// Spanning `t`-regular subgraph carried by the integral flow.
    pub subgraph: BipartiteGraph,
    /// Minimum cut of the network with capacities `t + 1`; it violates the
    /// cut condition at `n0 = t + 1`.
    pub certificate: CutCertificate,
}

struct Dinic {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(nodes: usize) -> Self {
        Dinic {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, c: i64) -> usize {
        let id = self.to.len();
        self.head[u].push(id);
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(id + 1);
        self.to.push(u);
        self.cap.push(0);
        id
    }

    fn bfs(&mut self, s: usize) {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    q.push_back(v);
                }
            }
        }
    }

    fn dfs(&mut self, u: usize, sink: usize, f: i64) -> i64 {
        if u == sink {
            return f;
        }
        while self.iter[u] < self.head[u].len() {
            let e = self.head[u][self.iter[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, sink, f.min(self.cap[e]));
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                return flow;
            }
            self.iter.fill(0);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network.
    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Network with source→A capacity `c`, unit graph edges, B→sink capacity
/// `c`. Returns the solved network, its flow and the arc id of every graph
/// edge.
fn solve_network(g: &BipartiteGraph, c: usize) -> (Dinic, usize, Vec<usize>) {
    let n = g.side();
    let (src, sink) = (0, 2 * n + 1);
    let mut net = Dinic::new(2 * n + 2);
    for a in 0..n {
        net.add_edge(src, 1 + a, c as i64);
    }
    let arcs = g
        .edges()
        .iter()
        .map(|&(a, b)| net.add_edge(1 + a as usize, 1 + n + b as usize, 1))
        .collect();
    for b in 0..n {
        net.add_edge(1 + n + b, sink, c as i64);
    }
    let flow = net.max_flow(src, sink) as usize;
    (net, flow, arcs)
}

/// Largest `t` such that `G` has `t` edge-disjoint perfect matchings,
/// found by binary search over `[0, δ(G)]` with one max-flow per probe.
pub fn max_disjoint_pm_flow(g: &BipartiteGraph) -> FlowOptimum {
    let n = g.side();
    let (mut lo, mut hi) = (0usize, g.min_degree());
    let mut best: Option<(Dinic, Vec<usize>)> = None;
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        let (net, flow, arcs) = solve_network(g, mid);
        if flow == mid * n {
            lo = mid;
            best = Some((net, arcs));
        } else {
            hi = mid - 1;
        }
    }
    let t = lo;
    let (net, arcs) = match best {
        Some(b) if t > 0 => b,
        _ => {
            let (net, _, arcs) = solve_network(g, t);
            (net, arcs)
        }
    };
    let kept = g
        .edges()
        .iter()
        .zip(&arcs)
        .filter(|&(_, &arc)| net.cap[arc] == 0)
        .map(|(&e, _)| e);
    let subgraph = BipartiteGraph::new(n, kept).expect("subset of a valid graph");

    let (over, _, _) = solve_network(g, t + 1);
    let reach = over.reachable(0);
    let certificate = CutCertificate {
        n0: t + 1,
        s: (0..n as u32).filter(|&a| reach[1 + a as usize]).collect(),
        t: (0..n as u32).filter(|&b| reach[1 + n + b as usize]).collect(),
    };
    FlowOptimum {
        t,
        subgraph,
        certificate,
    }
}

/// Maximum matching by Hopcroft–Karp. `mate_a[a]` is the B-partner of `a`.
pub fn hopcroft_karp(n: usize, adj: &[Vec<u32>]) -> Vec<Option<u32>> {
    const FREE: u32 = u32::MAX;
    let mut mate_a = vec![FREE; n];
    let mut mate_b = vec![FREE; n];
    // Greedy start.
    for a in 0..n {
        if let Some(&b) = adj[a].iter().find(|&&b| mate_b[b as usize] == FREE) {
            mate_a[a] = b;
            mate_b[b as usize] = a as u32;
        }
    }
    let mut dist = vec![u32::MAX; n];
    loop {
        let mut q = VecDeque::new();
        for a in 0..n {
            if mate_a[a] == FREE {
                dist[a] = 0;
                q.push_back(a);
            } else {
                dist[a] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(a) = q.pop_front() {
            for &b in &adj[a] {
                let m = mate_b[b as usize];
                if m == FREE {
                    found = true;
                } else if dist[m as usize] == u32::MAX {
                    dist[m as usize] = dist[a] + 1;
                    q.push_back(m as usize);
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; n];
        fn augment(
            a: usize,
            adj: &[Vec<u32>],
            mate_a: &mut [u32],
            mate_b: &mut [u32],
            dist: &mut [u32],
            it: &mut [usize],
        ) -> bool {
            while it[a] < adj[a].len() {
                let b = adj[a][it[a]] as usize;
                it[a] += 1;
                let m = mate_b[b];
                let ok = m == FREE
                    || (dist[m as usize] == dist[a] + 1
                        && augment(m as usize, adj, mate_a, mate_b, dist, it));
                if ok {
                    mate_a[a] = b as u32;
                    mate_b[b] = a as u32;
                    return true;
                }
            }
            dist[a] = u32::MAX;
            false
        }
        let mut grew = false;
        for a in 0..n {
            if mate_a[a] == FREE && augment(a, adj, &mut mate_a, &mut mate_b, &mut dist, &mut it) {
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    mate_a.into_iter().map(|b| (b != FREE).then_some(b)).collect()
}

/// Edge-disjoint perfect matchings, each as `N` pairs `(a, b)` sorted by `a`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MatchingPack {
    pub matchings: Vec<Vec<(u32, u32)>>,
}

impl MatchingPack {
    pub fn t(&self) -> usize {
        self.matchings.len()
    }
}

/// Flow-optimal packing: computes `t` and peels the `t`-regular subgraph
/// into `t` perfect matchings.
pub fn pack_perfect_matchings(g: &BipartiteGraph) -> Result<MatchingPack> {
    let opt = max_disjoint_pm_flow(g);
    let n = g.side();
    let mut adj = opt.subgraph.adjacency_a();
    let mut matchings = Vec::with_capacity(opt.t);
    for j in 0..opt.t {
        let mate = hopcroft_karp(n, &adj);
        let pairs: Vec<(u32, u32)> = mate
            .iter()
            .enumerate()
            .filter_map(|(a, b)| b.map(|b| (a as u32, b)))
            .collect();
        if pairs.len() != n {
            return Err(Error::Invariant(format!(
                "peel {j} of a {}-regular subgraph matched only {} of {n} vertices",
                opt.t,
                pairs.len()
            )));
        }
        for &(a, b) in &pairs {
            adj[a as usize].retain(|&x| x != b);
        }
        matchings.push(pairs);
    }
    Ok(MatchingPack { matchings })
}

/// Exact maximum number of edge-disjoint perfect matchings by exhaustive
/// search. Only for `N ≤ 7`.
pub fn brute_force_pm_oracle(g: &BipartiteGraph) -> Result<usize> {
    let n = g.side();
    if n > 7 {
        return Err(Error::Size(format!("oracle supports N <= 7, got {n}")));
    }
    if n == 0 {
        return Ok(0);
    }
    let adj = g.adjacency_a();
    let index = |a: u32, b: u32| g.edges().binary_search(&(a, b)).expect("edge exists");

    // Enumerate perfect matchings as edge masks, grouped by the edge at A-vertex 0.
    let mut groups: Vec<Vec<u64>> = vec![Vec::new(); n];
    let mut stack: Vec<(usize, u64, u32)> = vec![(0, 0, 0)];
    while let Some((a, mask, used_b)) = stack.pop() {
        if a == n {
            let first = (0..g.edge_count()).find(|&i| mask >> i & 1 == 1).expect("non-empty");
            groups[g.edges()[first].1 as usize].push(mask);
            continue;
        }
        for &b in &adj[a] {
            if used_b >> b & 1 == 0 {
                stack.push((a + 1, mask | 1 << index(a as u32, b), used_b | 1 << b));
            }
        }
    }
    groups.retain(|grp| !grp.is_empty());

    let vertex_masks: Vec<u64> = (0..2 * n)
        .map(|v| {
            g.edges()
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| if v < n { a as usize == v } else { b as usize == v - n })
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();

    fn search(groups: &[Vec<u64>], vertex_masks: &[u64], g: usize, used: u64, count: usize, best: &mut usize) {
        *best = (*best).max(count);
        if g == groups.len() {
            return;
        }
        let residual_min = vertex_masks
            .iter()
            .map(|m| (m & !used).count_ones() as usize)
            .min()
            .unwrap_or(0);
        let bound = count + (groups.len() - g).min(residual_min);
        if bound <= *best {
            return;
        }
        for &pm in &groups[g] {
            if pm & used == 0 {
                search(groups, vertex_masks, g + 1, used | pm, count + 1, best);
            }
        }
        search(groups, vertex_masks, g + 1, used, count, best);
    }
    let mut best = 0;
    search(&groups, &vertex_masks, 0, 0, 0, &mut best);
    Ok(best)
}

/// Simple undirected graph on `{0, …, N-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl SimpleGraph {
    /// Edges are normalized to `u < v`; loops are rejected and repeats collapse.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Shape(format!("loop at vertex {u}")));
            }
            if u as usize >= n || v as usize >= n {
                return Err(Error::Shape(format!("edge ({u}, {v}) outside {n} vertices")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        Ok(SimpleGraph { n, edges: list })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n as u32).flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)));
        Self::new(n, edges).expect("valid")
    }

    pub fn cycle(n: usize) -> Self {
        Self::new(n, (0..n as u32).map(|u| (u, (u + 1) % n as u32))).expect("valid")
    }

    /// `G(N, p)`.
    pub fn random(n: usize, p: f64, seed: u64) -> Self {
        let mut rng = seeding::stream(seed, seeding::GENERATE, n as u64);
        let edges: Vec<_> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .filter(|_| rng.random::<f64>() < p)
            .collect();
        Self::new(n, edges).expect("valid")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u as usize] += 1;
            d[v as usize] += 1;
        }
        d
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// `e(S, T)` for disjoint vertex sets.
    pub fn edges_between(&self, s: &[u32], t: &[u32]) -> usize {
        let mut side = vec![0u8; self.n];
        s.iter().for_each(|&u| side[u as usize] = 1);
        t.iter().for_each(|&u| side[u as usize] = 2);
        self.edges
            .iter()
            .filter(|&&(u, v)| side[u as usize] * side[v as usize] == 2)
            .count()
    }
}

/// Edge-disjoint Hamilton cycles as vertex sequences (closing edge implied).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CyclePack {
    pub cycles: Vec<Vec<u32>>,
}

impl CyclePack {
    pub fn count(&self) -> usize {
        self.cycles.len()
    }
}

/// Restart budget per extracted cycle.
pub const RESTARTS_PER_CYCLE: usize = 50;
/// Rotations allowed per attempt, as a multiple of `N`.
pub const ROTATION_FACTOR: usize = 10;
/// Extraction stops after this many consecutive failed cycles.
pub const MAX_CONSECUTIVE_FAILURES: usize = 3;

/// Whether `cycle` visits every vertex of `g` once and uses only edges of `g`.
pub fn is_hamilton_cycle(g: &SimpleGraph, cycle: &[u32]) -> bool {
    let n = g.order();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    let distinct = cycle
        .iter()
        .all(|&v| (v as usize) < n && !std::mem::replace(&mut seen[v as usize], true));
    distinct && (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

struct Residual {
    n: usize,
    adj: Vec<Vec<u32>>,
    matrix: Vec<bool>,
}

impl Residual {
    fn new(g: &SimpleGraph) -> Self {
        let n = g.order();
        let mut matrix = vec![false; n * n];
        for &(u, v) in g.edges() {
            matrix[u as usize * n + v as usize] = true;
            matrix[v as usize * n + u as usize] = true;
        }
        Residual {
            n,
            adj: g.adjacency(),
            matrix,
        }
    }

    fn has(&self, u: u32, v: u32) -> bool {
        self.matrix[u as usize * self.n + v as usize]
    }

    fn remove_cycle(&mut self, cycle: &[u32]) {
        for i in 0..cycle.len() {
            let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            self.matrix[u as usize * self.n + v as usize] = false;
            self.matrix[v as usize * self.n + u as usize] = false;
            self.adj[u as usize].retain(|&x| x != v);
            self.adj[v as usize].retain(|&x| x != u);
        }
    }

    fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }
}

/// One rotation-extension attempt. The path grows from its last vertex;
/// when stuck it either closes and reopens at a vertex with an outside
/// neighbour, or rotates about a random path neighbour of the end.
fn rotation_extension<R: Rng>(res: &Residual, rng: &mut R) -> Option<Vec<u32>> {
    let n = res.n;
    let mut path = vec![rng.random_range(0..n as u32)];
    let mut pos = vec![usize::MAX; n];
    pos[path[0] as usize] = 0;
    let mut rotations = 0;
    let cap = ROTATION_FACTOR * n;
    loop {
        let end = *path.last().expect("non-empty");
        let fresh: Vec<u32> = res.adj[end as usize]
            .iter()
            .copied()
            .filter(|&w| pos[w as usize] == usize::MAX)
            .collect();
        if let Some(&w) = fresh.choose(rng) {
            pos[w as usize] = path.len();
            path.push(w);
            continue;
        }
        let closes = path.len() >= 3 && res.has(end, path[0]);
        if closes && path.len() == n {
            return Some(path);
        }
        if closes {
            // Open the closed path at a vertex with a neighbour off the path.
            let opening = path.iter().enumerate().find_map(|(j, &v)| {
                res.adj[v as usize]
                    .iter()
                    .find(|&&w| pos[w as usize] == usize::MAX)
                    .map(|&w| (j, w))
            });
            if let Some((j, w)) = opening {
                path.rotate_left(j + 1);
                path.push(w);
                for (i, &v) in path.iter().enumerate() {
                    pos[v as usize] = i;
                }
                continue;
            }
        }
        if rotations >= cap {
            return None;
        }
        rotations += 1;
        let len = path.len();
        let pivots: Vec<usize> = res.adj[end as usize]
            .iter()
            .map(|&y| pos[y as usize])
            .filter(|&i| i + 2 < len)
            .collect();
        let &i = pivots.choose(rng)?;
        path[i + 1..].reverse();
        for (j, &v) in path.iter().enumerate().skip(i + 1) {
            pos[v as usize] = j;
        }
    }
}

/// Repeatedly extracts Hamilton cycles from the residual graph until
/// `target` cycles are found or extraction fails three times in a row.
pub fn pack_graph_hamilton(g: &SimpleGraph, target: Option<usize>, seed: u64) -> CyclePack {
    let n = g.order();
    let mut pack = CyclePack::default();
    if n < 3 {
        return pack;
    }
    let mut res = Residual::new(g);
    let mut failures = 0;
    let mut round = 0u64;
    while failures < MAX_CONSECUTIVE_FAILURES && target.is_none_or(|t| pack.count() < t) {
        if res.min_degree() < 2 {
            break;
        }
        let found = (0..RESTARTS_PER_CYCLE as u64).find_map(|attempt| {
            let mut rng = seeding::stream(seed, HAMILTON, round * RESTARTS_PER_CYCLE as u64 + attempt);
            rotation_extension(&res, &mut rng)
        });
        round += 1;
        match found {
            Some(cycle) => {
                res.remove_cycle(&cycle);
                pack.cycles.push(cycle);
                failures = 0;
            }
            None => failures += 1,
        }
    }
    pack
}

/// Reads the bipartite format: an `N` header, then `a b` lines with
/// 1-based endpoints.
pub fn parse_bipartite<R: BufRead>(reader: R) -> Result<BipartiteGraph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = t.split_whitespace().collect();
        match n {
            None => {
                let [tok] = tokens[..] else {
                    return Err(Error::parse(lineno, ParseErrorKind::BadHeader(t.into())));
                };
                n = Some(
                    tok.parse()
                        .map_err(|_| Error::parse(lineno, ParseErrorKind::BadHeader(t.into())))?,
                );
            }
            Some(side) => {
                if tokens.len() != 2 {
                    return Err(Error::parse(
                        lineno,
                        ParseErrorKind::Arity {
                            expected: 2,
                            found: tokens.len(),
                        },
                    ));
                }
                let mut ends = [0u32; 2];
                for (slot, tok) in ends.iter_mut().zip(&tokens) {
                    let v: u64 = tok
                        .parse()
                        .map_err(|_| Error::parse(lineno, ParseErrorKind::BadToken((*tok).into())))?;
                    if v == 0 || v > side as u64 {
                        return Err(Error::parse(
                            lineno,
                            ParseErrorKind::VertexOutOfRange {
                                vertex: v,
                                n: side as u32,
                            },
                        ));
                    }
                    *slot = v as u32 - 1;
                }
                edges.push((ends[0], ends[1]));
            }
        }
    }
    let n = n.ok_or_else(|| Error::parse(0, ParseErrorKind::MissingHeader))?;
    BipartiteGraph::new(n, edges)
}

pub fn write_bipartite<W: Write>(g: &BipartiteGraph, mut out: W) -> Result<()> {
    writeln!(out, "{}", g.side())?;
    for &(a, b) in g.edges() {
        writeln!(out, "{} {}", a + 1, b + 1)?;
    }
    Ok(())
}
