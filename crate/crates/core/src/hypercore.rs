//! k-uniform hypergraphs on the vertex set `1..=n`.
//!
//! Edges are stored as strictly ascending vertex lists in lexicographic
//! order. Each edge also has a canonical code, its colex rank among all
//! k-subsets of `[n]`, which backs constant-time membership queries.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use itertools::Itertools;

use crate::error::{Error, ParseErrorKind, Result};
use crate::seeding;

/// Rank spaces up to this many k-sets use a bitset for membership.
const BITSET_BUDGET: u64 = 1 << 26;

/// Exact binomial coefficient, `None` on u64 overflow.
pub fn binomial(n: u64, r: u64) -> Option<u64> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Binomial coefficient as a float; used in the audit bounds where values
/// may be large and only their magnitude matters.
pub fn binomial_f64(n: i64, r: i64) -> f64 {
    if r < 0 || n < 0 || r > n {
        return 0.0;
    }
    let r = r.min(n - r);
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Pascal table for colex ranking of subsets of `[n]` with at most
/// `max_size` elements.
#[derive(Debug, Clone)]
pub struct RankTable {
    n: u32,
    max_size: usize,
    table: Vec<u64>,
}

impl RankTable {
    pub fn new(n: u32, max_size: usize) -> Result<Self> {
        let cols = max_size + 1;
        let mut table = vec![0u64; (n as usize + 1) * cols];
        for c in 0..=n as usize {
            table[c * cols] = 1;
            for i in 1..cols.min(c + 1) {
                let v = table[(c - 1) * cols + i - 1].checked_add(table[(c - 1) * cols + i]);
                table[c * cols + i] = v.ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "C({n},{max_size}) exceeds the 64-bit rank space"
                    ))
                })?;
            }
        }
        Ok(RankTable { n, max_size, table })
    }

    #[inline]
    pub fn choose(&self, c: u32, i: usize) -> u64 {
        if i > c as usize {
            0
        } else {
            self.table[c as usize * (self.max_size + 1) + i]
        }
    }

    /// Number of `size`-subsets of `[n]`.
    pub fn count(&self, size: usize) -> u64 {
        self.choose(self.n, size)
    }

    /// Colex rank of an ascending list of 1-based vertices.
    #[inline]
    pub fn rank(&self, set: &[u32]) -> u64 {
        set.iter()
            .enumerate()
            .map(|(i, &v)| self.choose(v - 1, i + 1))
            .sum()
    }

    /// Inverse of [`RankTable::rank`].
    pub fn unrank(&self, mut rank: u64, size: usize) -> Vec<u32> {
        let mut out = vec![0u32; size];
        let mut hi = self.n;
        for i in (1..=size).rev() {
            let mut c = hi;
            while self.choose(c, i) > rank {
                c -= 1;
            }
            rank -= self.choose(c, i);
            out[i - 1] = c + 1;
            hi = c;
        }
        out
    }
}

/// Strictly ascending, duplicate-free list of vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<u32>);

impl VertexSet {
    /// Sorts `vertices` and checks they are distinct and within `1..=n`.
    pub fn new(mut vertices: Vec<u32>, n: u32) -> Result<Self> {
        vertices.sort_unstable();
        if let Some(&v) = vertices.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::InvalidQuery(format!("vertex {v} outside 1..={n}")));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidQuery("repeated vertex".into()));
        }
        Ok(VertexSet(vertices))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }
}

#[derive(Debug, Clone)]
enum Membership {
    Bits(Vec<u64>),
    Hashed(HashSet<u64>),
}

impl Membership {
    fn build(space: u64, ranks: &[u64]) -> Self {
        if space <= BITSET_BUDGET {
            let mut bits = vec![0u64; space.div_ceil(64) as usize];
            for &r in ranks {
                bits[(r >> 6) as usize] |= 1 << (r & 63);
            }
            Membership::Bits(bits)
        } else {
            Membership::Hashed(ranks.iter().copied().collect())
        }
    }

    #[inline]
    fn contains(&self, rank: u64) -> bool {
        match self {
            Membership::Bits(bits) => bits
                .get((rank >> 6) as usize)
                .is_some_and(|w| w >> (rank & 63) & 1 == 1),
            Membership::Hashed(set) => set.contains(&rank),
        }
    }
}

/// Result of a neighbourhood query: the `(k-|S|)`-sets completing `S` to an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhood {
    pub degree: usize,
    pub sets: Vec<Vec<u32>>,
}

/// Immutable k-uniform hypergraph on `1..=n`.
#[derive(Debug, Clone)]
pub struct Hypergraph {
    n: u32,
    k: usize,
    /// Flattened edges, `k` vertices each, lexicographically sorted.
    vertices: Vec<u32>,
    ranks: Vec<u64>,
    /// `(rank, edge id)` sorted by rank.
    by_rank: Vec<(u64, u32)>,
    table: RankTable,
    membership: Membership,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.vertices == other.vertices
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    fn check_shape(n: u32, k: usize) -> Result<()> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("uniformity k={k} must be at least 2")));
        }
        if k > n as usize {
            return Err(Error::InvalidParameter(format!("k={k} exceeds n={n}")));
        }
        Ok(())
    }

    /// Builds a hypergraph from edges given in any vertex order. Repeated
    /// edges collapse to one (set semantics).
    pub fn new<I, E>(n: u32, k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[u32]>,
    {
        Self::check_shape(n, k)?;
        let mut list = Vec::new();
        for e in edges {
            let e = e.as_ref();
            if e.len() != k {
                return Err(Error::InvalidParameter(format!(
                    "edge {e:?} has {} vertices, expected {k}",
                    e.len()
                )));
            }
            let set = VertexSet::new(e.to_vec(), n)
                .map_err(|err| Error::InvalidParameter(format!("edge {e:?}: {err}")))?;
            list.push(set.into_vec());
        }
        list.sort_unstable();
        list.dedup();
        Self::from_sorted_unique(n, k, list)
    }

    fn from_sorted_unique(n: u32, k: usize, list: Vec<Vec<u32>>) -> Result<Self> {
        let table = RankTable::new(n, k)?;
        let ranks: Vec<u64> = list.iter().map(|e| table.rank(e)).collect();
        let mut by_rank: Vec<(u64, u32)> =
            ranks.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
        by_rank.sort_unstable();
        let membership = Membership::build(table.count(k), &ranks);
        Ok(Hypergraph {
            n,
            k,
            vertices: list.into_iter().flatten().collect(),
            ranks,
            by_rank,
            table,
            membership,
        })
    }

    /// Samples `H(n, p, k)`: each k-subset is an edge independently with
    /// probability `p`. Presence of the k-set with colex rank `j` depends
    /// only on `(seed, j)`.
    pub fn generate(n: u32, k: usize, p: f64, seed: u64) -> Result<Self> {
        Self::check_shape(n, k)?;
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::InvalidParameter(format!("probability {p} outside [0,1]")));
        }
        let table = RankTable::new(n, k)?;
        let mut list = Vec::new();
        if p > 0.0 {
            for combo in (1..=n).combinations(k) {
                let rank = table.rank(&combo);
                if seeding::unit(seed, seeding::GENERATE, rank) < p {
                    list.push(combo);
                }
            }
        }
        Self::from_sorted_unique(n, k, list)
    }

    pub fn complete(n: u32, k: usize) -> Result<Self> {
        Self::generate(n, k, 1.0, 0)
    }

    pub fn empty(n: u32, k: usize) -> Result<Self> {
        Self::new(n, k, std::iter::empty::<Vec<u32>>())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Edge count.
    pub fn m(&self) -> usize {
        self.ranks.len()
    }

    /// `C(n, k)`.
    pub fn possible_edges(&self) -> u64 {
        self.table.count(self.k)
    }

    /// `m / C(n, k)`.
    pub fn density(&self) -> f64 {
        self.m() as f64 / self.possible_edges() as f64
    }

    pub fn edge(&self, id: usize) -> &[u32] {
        &self.vertices[id * self.k..(id + 1) * self.k]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        self.vertices.chunks_exact(self.k)
    }

    /// Canonical code (colex rank) of edge `id`.
    pub fn edge_rank(&self, id: usize) -> u64 {
        self.ranks[id]
    }

    pub fn rank_table(&self) -> &RankTable {
        &self.table
    }

    /// Membership of an ascending k-set.
    #[inline]
    pub fn contains_sorted(&self, set: &[u32]) -> bool {
        set.len() == self.k
            && set.iter().all(|&v| v >= 1 && v <= self.n)
            && self.membership.contains(self.table.rank(set))
    }

    /// Membership of a k-set given in any order.
    pub fn contains(&self, set: &[u32]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.windows(2).all(|w| w[0] < w[1]) && self.contains_sorted(&s)
    }

    /// Id of an ascending k-set, if present.
    pub fn edge_id(&self, set: &[u32]) -> Option<usize> {
        if !self.contains_sorted(set) {
            return None;
        }
        let r = self.table.rank(set);
        self.by_rank
            .binary_search_by_key(&r, |&(rank, _)| rank)
            .ok()
            .map(|pos| self.by_rank[pos].1 as usize)
    }

    /// `N_H(S)`: all `(k-|S|)`-sets `Y` with `S ∪ Y` an edge, lexicographically sorted.
    pub fn neighborhood(&self, s: &VertexSet) -> Result<Neighborhood> {
        if s.is_empty() || s.len() >= self.k {
            return Err(Error::InvalidQuery(format!(
                "|S|={} must satisfy 0 < |S| < k={}",
                s.len(),
                self.k
            )));
        }
        if s.as_slice().iter().any(|&v| v > self.n) {
            return Err(Error::InvalidQuery(format!("S has a vertex outside 1..={}", self.n)));
        }
        let sets = self.completions(s.as_slice());
        Ok(Neighborhood { degree: sets.len(), sets })
    }

    /// `d_H(S)` for an ascending set with `|S| <= k`; for `|S| = k` this is
    /// the membership indicator.
    pub fn degree(&self, s: &[u32]) -> usize {
        if s.len() == self.k {
            return self.contains_sorted(s) as usize;
        }
        self.completions(s).len()
    }

    /// Completions of an ascending set `S`, choosing between completion
    /// enumeration and an edge scan by whichever touches fewer sets.
    pub(crate) fn completions(&self, s: &[u32]) -> Vec<Vec<u32>> {
        let a = s.len();
        let free = self.k - a;
        let enumerate_cost = binomial(self.n as u64 - a as u64, free as u64).unwrap_or(u64::MAX);
        let mut out = Vec::new();
        if enumerate_cost <= self.m() as u64 {
            let rest: Vec<u32> = (1..=self.n).filter(|v| s.binary_search(v).is_err()).collect();
            let mut buf = Vec::with_capacity(self.k);
            for y in rest.iter().copied().combinations(free) {
                buf.clear();
                buf.extend(s.iter().copied().merge(y.iter().copied()));
                if self.membership.contains(self.table.rank(&buf)) {
                    out.push(y);
                }
            }
        } else {
            for e in self.edges() {
                if is_subset(s, e) {
                    out.push(e.iter().copied().filter(|v| s.binary_search(v).is_err()).collect());
                }
            }
        }
        out
    }

    /// `d_H(S)` for every `a`-subset of `[n]`, indexed by colex rank.
    pub(crate) fn degree_table(&self, a: usize) -> Result<Vec<u32>> {
        let table = RankTable::new(self.n, a)?;
        let mut counts = vec![0u32; table.count(a) as usize];
        for e in self.edges() {
            for sub in e.iter().copied().combinations(a) {
                counts[table.rank(&sub) as usize] += 1;
            }
        }
        Ok(counts)
    }
}

/// Both slices ascending.
pub(crate) fn is_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Reads the text format: a `k n` header, then one edge per line. Lines
/// starting with `#` and blank lines are ignored.
pub fn parse_hypergraph<R: BufRead>(reader: R) -> Result<Hypergraph> {
    let mut header: Option<(usize, u32)> = None;
    let mut seen = HashSet::new();
    let mut list = Vec::new();
    let mut table: Option<RankTable> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((k, n)) = header else {
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                [k, n] => k.parse::<usize>().ok().zip(n.parse::<u32>().ok()),
                _ => None,
            };
            let (k, n) = parsed
                .ok_or_else(|| Error::parse(lineno, ParseErrorKind::BadHeader(trimmed.into())))?;
            Hypergraph::check_shape(n, k)
                .map_err(|_| Error::parse(lineno, ParseErrorKind::BadHeader(trimmed.into())))?;
            table = Some(RankTable::new(n, k)?);
            header = Some((k, n));
            continue;
        };
        let mut edge = Vec::with_capacity(k);
        for tok in trimmed.split_whitespace() {
            let v: u64 = tok
                .parse()
                .map_err(|_| Error::parse(lineno, ParseErrorKind::BadToken(tok.into())))?;
            edge.push(v);
        }
        if edge.len() != k {
            return Err(Error::parse(
                lineno,
                ParseErrorKind::Arity {
                    expected: k,
                    found: edge.len(),
                },
            ));
        }
        if let Some(&v) = edge.iter().find(|&&v| v == 0 || v > n as u64) {
            return Err(Error::parse(lineno, ParseErrorKind::VertexOutOfRange { vertex: v, n }));
        }
        let mut edge: Vec<u32> = edge.into_iter().map(|v| v as u32).collect();
        edge.sort_unstable();
        if let Some(w) = edge.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::parse(lineno, ParseErrorKind::RepeatedVertex(w[0])));
        }
        let rank = table.as_ref().expect("header parsed").rank(&edge);
        if !seen.insert(rank) {
            return Err(Error::parse(lineno, ParseErrorKind::DuplicateEdge));
        }
        list.push(edge);
    }
    let (k, n) = header.ok_or_else(|| Error::parse(0, ParseErrorKind::MissingHeader))?;
    list.sort_unstable();
    Hypergraph::from_sorted_unique(n, k, list)
}

pub fn parse_hypergraph_str(text: &str) -> Result<Hypergraph> {
    parse_hypergraph(text.as_bytes())
}

/// Canonical form: header, then edges in lexicographic order.
pub fn write_hypergraph<W: Write>(h: &Hypergraph, mut out: W) -> Result<()> {
    writeln!(out, "{} {}", h.k, h.n)?;
    for e in h.edges() {
        writeln!(out, "{}", e.iter().join(" "))?;
    }
    Ok(())
}

pub fn write_hypergraph_string(h: &Hypergraph) -> String {
    let mut buf = Vec::new();
    write_hypergraph(h, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(n: u32, k: usize, edges: &[&[u32]]) -> Hypergraph {
        Hypergraph::new(n, k, edges.iter().copied()).unwrap()
    }

    #[test]
    fn zero_probability_is_empty() {
        let g = Hypergraph::generate(10, 3, 0.0, 5).unwrap();
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn unit_probability_is_complete() {
        let g = Hypergraph::generate(6, 3, 1.0, 5).unwrap();
        assert_eq!(g.m(), 20);
        assert_eq!(g.density(), 1.0);
    }

    #[test]
    fn generation_mean_matches_binomial() {
        // Bin(120, 0.5): mean 60, sd sqrt(30); mean of 200 runs has sd sqrt(30/200).
        let runs = 200;
        let total: usize = (0..runs)
            .map(|s| Hypergraph::generate(10, 3, 0.5, s).unwrap().m())
            .sum();
        let mean = total as f64 / runs as f64;
        let sd_single = (120.0f64 * 0.25).sqrt();
        assert!((mean - 60.0).abs() <= 4.0 * sd_single, "mean {mean}");
        assert!((mean - 60.0).abs() <= 4.0 * sd_single / (runs as f64).sqrt(), "mean {mean}");
    }

    #[test]
    fn generation_rejects_bad_parameters() {
        assert!(matches!(
            Hypergraph::generate(3, 4, 0.5, 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            Hypergraph::generate(6, 3, 1.5, 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            Hypergraph::generate(6, 3, -0.1, 0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn neighborhood_examples() {
        let k5 = Hypergraph::complete(5, 3).unwrap();
        let s = VertexSet::new(vec![1, 2], 5).unwrap();
        let nb = k5.neighborhood(&s).unwrap();
        assert_eq!(nb.degree, 3);
        assert_eq!(nb.sets, vec![vec![3], vec![4], vec![5]]);

        let g = h(5, 3, &[&[1, 2, 3], &[1, 2, 4]]);
        let nb = g.neighborhood(&s).unwrap();
        assert_eq!(nb.degree, 2);
        assert_eq!(nb.sets, vec![vec![3], vec![4]]);

        let s34 = VertexSet::new(vec![3, 4], 5).unwrap();
        let nb = g.neighborhood(&s34).unwrap();
        assert_eq!(nb.degree, 0);
        assert!(nb.sets.is_empty());
    }

    #[test]
    fn neighborhood_rejects_bad_sizes() {
        let g = Hypergraph::complete(5, 3).unwrap();
        let full = VertexSet::new(vec![1, 2, 3], 5).unwrap();
        assert!(matches!(g.neighborhood(&full), Err(Error::InvalidQuery(_))));
        let empty = VertexSet::new(vec![], 5).unwrap();
        assert!(matches!(g.neighborhood(&empty), Err(Error::InvalidQuery(_))));
    }

    #[test]
    fn parse_example() {
        let g = parse_hypergraph_str("3 6\n1 2 3\n3 4 5\n5 6 1\n").unwrap();
        assert_eq!((g.k(), g.n(), g.m()), (3, 6, 3));
        assert!(g.contains(&[1, 5, 6]));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_hypergraph_str("3 6\n1 2\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 2,
                kind: ParseErrorKind::Arity { expected: 3, found: 2 }
            }
        ));
        let err = parse_hypergraph_str("# c\n3 6\n1 2 3\n\n3 2 1\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 5,
                kind: ParseErrorKind::DuplicateEdge
            }
        ));
        let err = parse_hypergraph_str("3 6\n1 2 7\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 2,
                kind: ParseErrorKind::VertexOutOfRange { vertex: 7, n: 6 }
            }
        ));
        assert!(parse_hypergraph_str("# only comments\n").is_err());
        assert!(parse_hypergraph_str("3\n").is_err());
        assert!(parse_hypergraph_str("3 6\n1 x 3\n").is_err());
        assert!(parse_hypergraph_str("3 6\n1 1 3\n").is_err());
    }

    #[test]
    fn write_empty_is_header_only() {
        let g = Hypergraph::empty(6, 3).unwrap();
        assert_eq!(write_hypergraph_string(&g), "3 6\n");
    }

    #[test]
    fn write_sorts_edges() {
        let g = h(6, 3, &[&[5, 6, 1], &[3, 4, 5], &[1, 2, 3]]);
        assert_eq!(write_hypergraph_string(&g), "3 6\n1 2 3\n1 5 6\n3 4 5\n");
    }

    #[test]
    fn round_trip_random_instances() {
        for seed in 0..100 {
            let g = Hypergraph::generate(8, 3, 0.5, seed).unwrap();
            let text = write_hypergraph_string(&g);
            let back = parse_hypergraph_str(&text).unwrap();
            assert_eq!(g, back);
            assert_eq!(text, write_hypergraph_string(&back));
        }
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let g = h(6, 3, &[&[3, 1, 2], &[2, 3, 1], &[1, 2, 3]]);
        assert_eq!(g.m(), 1);
        assert_eq!(g.edge(0), &[1, 2, 3]);
    }

    #[test]
    fn rank_unrank_round_trip() {
        let t = RankTable::new(9, 4).unwrap();
        for (i, c) in (1..=9u32).combinations(4).enumerate() {
            let r = t.rank(&c);
            assert_eq!(t.unrank(r, 4), c, "index {i}");
        }
        let mut all: Vec<u64> = (1..=9u32).combinations(4).map(|c| t.rank(&c)).collect();
        all.sort_unstable();
        assert_eq!(all, (0..126).collect::<Vec<_>>());
    }

    #[test]
    fn hashed_membership_matches_bitset() {
        let g = Hypergraph::generate(12, 4, 0.3, 9).unwrap();
        let hashed = Membership::Hashed(g.ranks.iter().copied().collect());
        for c in (1..=12u32).combinations(4) {
            let r = g.table.rank(&c);
            assert_eq!(hashed.contains(r), g.membership.contains(r));
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), Some(20));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(200, 100), None);
        assert!((binomial_f64(10, 3) - 120.0).abs() < 1e-9);
        assert_eq!(binomial_f64(2, 3), 0.0);
    }

    proptest! {
        #[test]
        fn generation_is_deterministic(seed in any::<u64>(), p in 0.0f64..=1.0) {
            let a = Hypergraph::generate(9, 3, p, seed).unwrap();
            let b = Hypergraph::generate(9, 3, p, seed).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn degree_sums_match_edge_count(seed in any::<u64>(), n in 5u32..=10, k in 2usize..=4) {
            let g = Hypergraph::generate(n, k, 0.4, seed).unwrap();
            for a in 1..k {
                let total: u64 = (1..=n)
                    .combinations(a)
                    .map(|s| g.degree(&s) as u64)
                    .sum();
                prop_assert_eq!(total, binomial(k as u64, a as u64).unwrap() * g.m() as u64);
            }
        }

        #[test]
        fn membership_is_exact(seed in any::<u64>()) {
            let g = Hypergraph::generate(8, 3, 0.5, seed).unwrap();
            let stored: HashSet<Vec<u32>> = g.edges().map(|e| e.to_vec()).collect();
            for c in (1..=8u32).combinations(3) {
                prop_assert_eq!(g.contains(&c), stored.contains(&c));
                let rev: Vec<u32> = c.iter().rev().copied().collect();
                prop_assert_eq!(g.contains(&rev), stored.contains(&c));
            }
            for (i, e) in g.edges().enumerate() {
                prop_assert_eq!(g.edge_id(e), Some(i));
            }
        }

        #[test]
        fn density_is_exact_ratio(seed in any::<u64>()) {
            let g = Hypergraph::generate(7, 3, 0.3, seed).unwrap();
            // m / 35 compared as a rational: density * 35 must be m exactly.
            prop_assert_eq!(g.possible_edges(), 35);
            prop_assert!((g.density() * 35.0 - g.m() as f64).abs() < 1e-12);
        }
    }
}
