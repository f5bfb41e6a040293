//! Partition instances, edge inclusion, labelling, and parameter formulas.
//!
//! Block indices are 0-based throughout: an instance has `ν` X-blocks
//! `X_0..X_{ν-1}` (consecutive pairs wrap around) and, in the bipartition
//! modes, `ν` Y-blocks. Inside every block vertices are ascending.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{binomial_f64, Hypergraph};
use crate::seeding;

/// How a partition instance turns edges into auxiliary-graph edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// `k/2 < ℓ < k`: X-blocks of size `k-ℓ` arranged in a cycle, Y-blocks of size `2ℓ-k`.
    BipartitionCycle,
    /// `k = 2ℓ`: `n/ℓ` parts of size `ℓ`.
    FullPartition,
    /// `k = ℓ`: X-blocks of size `⌊k/2⌋`, Y-blocks of size `⌈k/2⌉`.
    Matching,
}

impl Mode {
    /// The mode dictated by `(k, ℓ)`; anything outside `k/2 ≤ ℓ ≤ k` is rejected.
    pub fn for_case(k: usize, ell: usize) -> Result<Mode> {
        if k < 2 || ell == 0 {
            return Err(Error::unsupported(k, ell, "need k >= 2 and ell >= 1"));
        }
        if ell == k {
            Ok(Mode::Matching)
        } else if 2 * ell == k {
            Ok(Mode::FullPartition)
        } else if 2 * ell > k && ell < k {
            Ok(Mode::BipartitionCycle)
        } else {
            Err(Error::unsupported(k, ell, "only k/2 <= ell <= k is supported"))
        }
    }

    /// Checks an explicitly requested mode against `(k, ℓ)`.
    pub fn resolve(k: usize, ell: usize, requested: Option<Mode>) -> Result<Mode> {
        let derived = Mode::for_case(k, ell)?;
        match requested {
            Some(m) if m != derived => Err(Error::unsupported(
                k,
                ell,
                format!("mode {m:?} inconsistent with (k, ell); expected {derived:?}"),
            )),
            _ => Ok(derived),
        }
    }

    pub fn is_bipartite(self) -> bool {
        !matches!(self, Mode::FullPartition)
    }

    /// `(|X-block|, |Y-block|)`.
    pub fn block_sizes(self, k: usize, ell: usize) -> (usize, usize) {
        match self {
            Mode::BipartitionCycle => (k - ell, 2 * ell - k),
            Mode::FullPartition => (ell, 0),
            Mode::Matching => (k / 2, k.div_ceil(2)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    X,
    Y,
}

#[derive(Debug, Clone, Copy)]
struct Slot {
    side: Side,
    block: u32,
}

/// Position of an included edge inside its instance: `(a, b)` for the
/// bipartite modes, the part pair `a < b` in the full-partition mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub a: u32,
    pub b: u32,
}

/// One partition instance `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionScheme {
    pub id: u32,
    pub n: u32,
    pub k: usize,
    pub ell: usize,
    pub mode: Mode,
    pub x_blocks: Vec<Vec<u32>>,
    pub y_blocks: Vec<Vec<u32>>,
    locator: Vec<Slot>,
}

impl PartialEq for Slot {
    fn eq(&self, other: &Self) -> bool {
        self.side == other.side && self.block == other.block
    }
}

fn check_case(n: u32, k: usize, ell: usize, mode: Mode) -> Result<usize> {
    if ell == 0 || !(n as usize).is_multiple_of(ell) {
        return Err(Error::Divisibility { n, ell });
    }
    let nu = n as usize / ell;
    if mode != Mode::Matching && nu < 3 {
        return Err(Error::unsupported(
            k,
            ell,
            format!("cycle modes need at least 3 blocks, n/ell = {nu}"),
        ));
    }
    if k > n as usize {
        return Err(Error::InvalidParameter(format!("k={k} exceeds n={n}")));
    }
    Ok(nu)
}

impl PartitionScheme {
    /// Builds an instance from explicit blocks, checking the block structure.
    pub fn from_blocks(
        id: u32,
        n: u32,
        k: usize,
        ell: usize,
        x_blocks: Vec<Vec<u32>>,
        y_blocks: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let mode = Mode::for_case(k, ell)?;
        let nu = check_case(n, k, ell, mode)?;
        let (sx, sy) = mode.block_sizes(k, ell);
        let y_expected = if mode.is_bipartite() { nu } else { 0 };
        if x_blocks.len() != nu || y_blocks.len() != y_expected {
            return Err(Error::InvalidParameter(format!(
                "expected {nu} X-blocks and {y_expected} Y-blocks"
            )));
        }
        let mut locator = vec![None; n as usize + 1];
        let mut x_blocks = x_blocks;
        let mut y_blocks = y_blocks;
        for (side, blocks, size) in [(Side::X, &mut x_blocks, sx), (Side::Y, &mut y_blocks, sy)] {
            for (b, block) in blocks.iter_mut().enumerate() {
                if block.len() != size {
                    return Err(Error::InvalidParameter(format!(
                        "{side:?}-block {b} has size {}, expected {size}",
                        block.len()
                    )));
                }
                block.sort_unstable();
                for &v in block.iter() {
                    if v == 0 || v > n {
                        return Err(Error::InvalidParameter(format!("vertex {v} outside 1..={n}")));
                    }
                    if locator[v as usize].is_some() {
                        return Err(Error::InvalidParameter(format!("vertex {v} in two blocks")));
                    }
                    locator[v as usize] = Some(Slot {
                        side,
                        block: b as u32,
                    });
                }
            }
        }
        let locator = locator
            .into_iter()
            .skip(1)
            .map(|s| s.ok_or_else(|| Error::InvalidParameter("blocks do not cover 1..=n".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(PartitionScheme {
            id,
            n,
            k,
            ell,
            mode,
            x_blocks,
            y_blocks,
            locator,
        })
    }

    /// Number of blocks on each side, `ν_ℓ`.
    pub fn nu(&self) -> usize {
        self.x_blocks.len()
    }

    fn slot(&self, v: u32) -> Slot {
        self.locator[v as usize - 1]
    }

    /// The witness of `E` in this instance, if the instance includes `E`.
    /// Block sizes admit at most one witness per instance.
    pub fn edge_inclusion(&self, edge: &[u32]) -> Option<Witness> {
        if edge.len() != self.k {
            return None;
        }
        let nu = self.nu() as u32;
        match self.mode {
            Mode::FullPartition => {
                let (a, b) = two_blocks(edge.iter().map(|&v| self.slot(v).block))?;
                Some(Witness {
                    a: a.min(b),
                    b: a.max(b),
                })
            }
            Mode::Matching => {
                let xs = edge.iter().map(|&v| self.slot(v)).filter(|s| s.side == Side::X);
                let ys = edge.iter().map(|&v| self.slot(v)).filter(|s| s.side == Side::Y);
                let (sx, sy) = self.mode.block_sizes(self.k, self.ell);
                if xs.clone().count() != sx || ys.clone().count() != sy {
                    return None;
                }
                let a = single_block(xs.map(|s| s.block))?;
                let b = single_block(ys.map(|s| s.block))?;
                Some(Witness { a, b })
            }
            Mode::BipartitionCycle => {
                let (sx, sy) = self.mode.block_sizes(self.k, self.ell);
                let xs = edge.iter().map(|&v| self.slot(v)).filter(|s| s.side == Side::X);
                let ys = edge.iter().map(|&v| self.slot(v)).filter(|s| s.side == Side::Y);
                if xs.clone().count() != 2 * sx || ys.clone().count() != sy {
                    return None;
                }
                let b = single_block(ys.map(|s| s.block))?;
                let (p, q) = two_blocks(xs.map(|s| s.block))?;
                let a = if (p + 1) % nu == q {
                    p
                } else if (q + 1) % nu == p {
                    q
                } else {
                    return None;
                };
                Some(Witness { a, b })
            }
        }
    }

    /// All witnesses of `E` (empty or a single element).
    pub fn edge_inclusions(&self, edge: &[u32]) -> Vec<Witness> {
        self.edge_inclusion(edge).into_iter().collect()
    }

    /// The k-set an instance associates with `w`, ascending.
    pub fn edge_for(&self, w: Witness) -> Vec<u32> {
        let nu = self.nu();
        let (a, b) = (w.a as usize, w.b as usize);
        let mut e: Vec<u32> = match self.mode {
            Mode::BipartitionCycle => self.x_blocks[a]
                .iter()
                .chain(&self.y_blocks[b])
                .chain(&self.x_blocks[(a + 1) % nu])
                .copied()
                .collect(),
            Mode::Matching => self.x_blocks[a].iter().chain(&self.y_blocks[b]).copied().collect(),
            Mode::FullPartition => self.x_blocks[a].iter().chain(&self.x_blocks[b]).copied().collect(),
        };
        e.sort_unstable();
        e
    }

    /// Number of k-sets this instance includes.
    pub fn included_count(&self) -> usize {
        let nu = self.nu();
        match self.mode {
            Mode::FullPartition => nu * (nu - 1) / 2,
            _ => nu * nu,
        }
    }
}

fn single_block(mut blocks: impl Iterator<Item = u32>) -> Option<u32> {
    let first = blocks.next()?;
    blocks.all(|b| b == first).then_some(first)
}

fn two_blocks(blocks: impl Iterator<Item = u32>) -> Option<(u32, u32)> {
    let mut p = None;
    let mut q = None;
    for b in blocks {
        match (p, q) {
            (None, _) => p = Some(b),
            (Some(x), None) if x != b => q = Some(b),
            (Some(x), Some(y)) if x != b && y != b => return None,
            _ => {}
        }
    }
    // Sizes are fixed per mode, so two touched blocks with the right total
    // vertex count are both complete.
    p.zip(q)
}

/// Samples instance `id`: a uniform split of `[n]` into the X and Y
/// vertex sets followed by uniform orderings of each, cut into blocks.
pub fn sample_scheme(
    n: u32,
    k: usize,
    ell: usize,
    mode: Option<Mode>,
    seed: u64,
    id: u32,
) -> Result<PartitionScheme> {
    let mode = Mode::resolve(k, ell, mode)?;
    let nu = check_case(n, k, ell, mode)?;
    let (sx, sy) = mode.block_sizes(k, ell);
    let mut rng = seeding::stream(seed, seeding::SCHEME, id as u64);
    let mut perm: Vec<u32> = (1..=n).collect();
    perm.shuffle(&mut rng);
    let (xs, ys) = perm.split_at(nu * sx);
    let x_blocks = xs.chunks(sx).map(<[u32]>::to_vec).collect();
    let y_blocks = if sy == 0 {
        Vec::new()
    } else {
        ys.chunks(sy).map(<[u32]>::to_vec).collect()
    };
    PartitionScheme::from_blocks(id, n, k, ell, x_blocks, y_blocks)
}

/// Label given to an included edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLabel {
    pub instance: u32,
    pub witness: Witness,
}

/// Inclusion counts `f(E)` and labels for every edge of a hypergraph, by edge id.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledEdgeSet {
    counts: Vec<u32>,
    labels: Vec<Option<EdgeLabel>>,
    fibers: HashMap<u32, Vec<u32>>,
}

impl LabeledEdgeSet {
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `f(E)` for edge `id`.
    pub fn count(&self, edge: usize) -> u32 {
        self.counts[edge]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn label(&self, edge: usize) -> Option<EdgeLabel> {
        self.labels[edge]
    }

    /// Edge ids labelled with `instance`, ascending.
    pub fn fiber(&self, instance: u32) -> &[u32] {
        self.fibers.get(&instance).map_or(&[], Vec::as_slice)
    }

    pub fn unlabeled(&self) -> usize {
        self.labels.iter().filter(|l| l.is_none()).count()
    }

    pub fn labeled(&self) -> usize {
        self.len() - self.unlabeled()
    }
}

/// Counts inclusions of every edge over `schemes` and labels each included
/// edge with one including instance, chosen uniformly from a stream keyed by
/// the edge's canonical rank.
pub fn label_edges(h: &Hypergraph, schemes: &[PartitionScheme], seed: u64) -> LabeledEdgeSet {
    let per_edge: Vec<(u32, Option<EdgeLabel>)> = (0..h.m())
        .into_par_iter()
        .map(|id| {
            let edge = h.edge(id);
            let mut including: Vec<EdgeLabel> = schemes
                .iter()
                .filter_map(|s| {
                    s.edge_inclusion(edge).map(|witness| EdgeLabel {
                        instance: s.id,
                        witness,
                    })
                })
                .collect();
            including.sort_unstable_by_key(|l| l.instance);
            let f = including.len() as u32;
            let label = (f > 0).then(|| {
                let mut rng = seeding::stream(seed, seeding::LABEL, h.edge_rank(id));
                including[rng.random_range(0..including.len())]
            });
            (f, label)
        })
        .collect();
    let mut fibers: HashMap<u32, Vec<u32>> = HashMap::new();
    for (id, (_, label)) in per_edge.iter().enumerate() {
        if let Some(l) = label {
            fibers.entry(l.instance).or_default().push(id as u32);
        }
    }
    let (counts, labels) = per_edge.into_iter().unzip();
    LabeledEdgeSet {
        counts,
        labels,
        fibers,
    }
}

/// Random hypergraph `H(n,p,k)` or a hypergraph audited for pseudo-randomness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    #[default]
    Random,
    PseudoRandom,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ParamOverrides {
    pub r: Option<f64>,
    pub eps: Option<f64>,
    pub f0: Option<f64>,
}

/// Parameters of a run. All logarithms are natural.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeParameters {
    pub n: u32,
    pub k: usize,
    pub ell: usize,
    #[serde(with = "crate::serde_float")]
    pub p: f64,
    pub mode: Mode,
    pub regime: Regime,
    pub nu: usize,
    #[serde(with = "crate::serde_float")]
    pub rho: f64,
    #[serde(with = "crate::serde_float")]
    pub r: f64,
    #[serde(with = "crate::serde_float")]
    pub eps: f64,
    #[serde(with = "crate::serde_float")]
    pub f0: f64,
    #[serde(with = "crate::serde_float")]
    pub p0: f64,
    #[serde(with = "crate::serde_float")]
    pub n0: f64,
    pub diagnostics: Vec<String>,
}

/// Default regularity slack used in the pseudo-random regime when none is given.
pub const DEFAULT_PSEUDO_EPS: f64 = 0.1;

pub fn scheme_parameters(
    n: u32,
    k: usize,
    ell: usize,
    p: f64,
    mode: Option<Mode>,
    regime: Regime,
    overrides: ParamOverrides,
) -> Result<SchemeParameters> {
    let mode = Mode::resolve(k, ell, mode)?;
    if ell == 0 || !(n as usize).is_multiple_of(ell) {
        return Err(Error::Divisibility { n, ell });
    }
    let nu = n as usize / ell;
    let nf = n as f64;
    let ln_n = nf.ln();
    let kf = k as f64;
    let nuf = nu as f64;
    let total = binomial_f64(n as i64, k as i64);
    let rho = match mode {
        Mode::FullPartition => binomial_f64(nu as i64, 2) / total,
        _ => nuf * nuf / total,
    };
    let k_fact: f64 = (1..=k).map(|i| i as f64).product();
    let np_half = (nf * p).sqrt();
    let loose_k3 = k == 3 && ell == 2;
    let mut diagnostics = Vec::new();

    let (r, eps, f0) = match regime {
        Regime::Random => {
            let r = overrides
                .r
                .unwrap_or_else(|| nf.powi(k as i32 - 2) * np_half);
            let eps = overrides.eps.unwrap_or_else(|| {
                let base = (4.0 * (kf + 3.0) * k_fact * ln_n / (ell as f64 * np_half)).sqrt();
                if loose_k3 {
                    (72.0 * nf * ln_n / r).sqrt()
                } else if mode == Mode::Matching {
                    10.0 * k_fact * base
                } else {
                    base
                }
            });
            let f0 = overrides.f0.unwrap_or_else(|| {
                if loose_k3 {
                    r * rho + (12.0 * r * rho * ln_n).sqrt()
                } else {
                    rho * r + (4.0 * kf * rho * r * ln_n).sqrt()
                }
            });
            (r, eps, f0)
        }
        Regime::PseudoRandom => {
            let eps = overrides.eps.unwrap_or_else(|| {
                diagnostics.push(format!("no eps supplied; using {DEFAULT_PSEUDO_EPS}"));
                DEFAULT_PSEUDO_EPS
            });
            let f0 = overrides.f0.unwrap_or_else(|| {
                let (lo, hi) = if mode == Mode::FullPartition {
                    let lo = ln_n / (eps * eps);
                    let hi = (eps * eps * nf * p / ln_n).min(eps.powi(3) * nf * p / ln_n);
                    (lo, hi)
                } else {
                    // The window bounds f0 squared.
                    let lo = ln_n * ln_n / eps.powi(4);
                    let hi = eps * nf.sqrt() * p * p / ln_n;
                    (lo.sqrt(), hi.sqrt())
                };
                if !(lo < hi) {
                    diagnostics.push(format!("f0 window empty: lower {lo:.6e} >= upper {hi:.6e}"));
                }
                (lo * hi).sqrt()
            });
            let factor = if mode == Mode::FullPartition { 2.0 - eps } else { 1.0 - eps };
            let r = overrides.r.unwrap_or(factor * total * f0 / (nuf * nuf));
            (r, eps, f0)
        }
    };

    let p0 = p / f0;
    let n0 = match (regime, mode) {
        (_, Mode::FullPartition) => ((1.0 - 2.0 * eps) * p0 / 2.0 - 8.0 * eps * p0) * nuf,
        (Regime::Random, _) => (1.0 - eps) * nuf * p0,
        (Regime::PseudoRandom, Mode::BipartitionCycle) => (1.0 - (5.0 * eps).cbrt()) * nuf * p0,
        (Regime::PseudoRandom, Mode::Matching) => (1.0 - 2.0 * eps.cbrt()) * nuf * p0,
    };

    if !(rho > 0.0 && rho <= 1.0) {
        diagnostics.push(format!("rho = {rho} outside (0, 1]"));
    }
    if !(eps < 1.0) {
        diagnostics.push(format!("eps = {eps} is not below 1"));
    }
    if !(p0 <= p) {
        diagnostics.push(format!("p0 = {p0} exceeds p = {p} (f0 < 1)"));
    }
    if !(n0 > 0.0) {
        diagnostics.push(format!("n0 = {n0} is not positive"));
    }
    if !(r >= 1.0) {
        diagnostics.push(format!("r = {r} is below 1"));
    }

    Ok(SchemeParameters {
        n,
        k,
        ell,
        p,
        mode,
        regime,
        nu,
        rho,
        r,
        eps,
        f0,
        p0,
        n0,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

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

    fn assert_valid(s: &PartitionScheme) {
        let (sx, sy) = s.mode.block_sizes(s.k, s.ell);
        let mut all: Vec<u32> = s.x_blocks.iter().chain(&s.y_blocks).flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (1..=s.n).collect::<Vec<_>>());
        assert!(s.x_blocks.iter().all(|b| b.len() == sx));
        assert!(s.y_blocks.iter().all(|b| b.len() == sy));
    }

    #[test]
    fn mode_dispatch_over_small_k() {
        for k in 2..=8usize {
            for ell in 1..=10usize {
                let got = Mode::for_case(k, ell);
                match () {
                    _ if ell == k => assert_eq!(got.unwrap(), Mode::Matching),
                    _ if 2 * ell == k => assert_eq!(got.unwrap(), Mode::FullPartition),
                    _ if 2 * ell > k && ell < k => assert_eq!(got.unwrap(), Mode::BipartitionCycle),
                    _ => assert!(matches!(got, Err(Error::UnsupportedCase { .. }))),
                }
            }
        }
        assert!(Mode::resolve(4, 2, Some(Mode::Matching)).is_err());
        assert_eq!(Mode::resolve(3, 2, None).unwrap(), Mode::BipartitionCycle);
    }

    #[test]
    fn loose_k3_has_unit_blocks() {
        let s = sample_scheme(6, 3, 2, None, 1, 0).unwrap();
        assert_eq!(s.x_blocks.len(), 3);
        assert_eq!(s.y_blocks.len(), 3);
        assert_valid(&s);
    }

    #[test]
    fn full_partition_has_parts_of_size_ell() {
        let s = sample_scheme(8, 4, 2, Some(Mode::FullPartition), 1, 0).unwrap();
        assert_eq!(s.x_blocks.len(), 4);
        assert!(s.y_blocks.is_empty());
        assert_valid(&s);
    }

    #[test]
    fn sample_errors() {
        assert!(matches!(
            sample_scheme(7, 3, 2, None, 0, 0),
            Err(Error::Divisibility { .. })
        ));
        assert!(matches!(
            sample_scheme(12, 5, 2, None, 0, 0),
            Err(Error::UnsupportedCase { .. })
        ));
        assert!(matches!(
            sample_scheme(4, 3, 2, None, 0, 0),
            Err(Error::UnsupportedCase { .. })
        ));
    }

    #[test]
    fn x_membership_is_symmetric() {
        let samples = 10_000;
        let mut in_x = [0usize; 7];
        for id in 0..samples {
            let s = sample_scheme(6, 3, 2, None, 42, id).unwrap();
            for &v in s.x_blocks.iter().flatten() {
                in_x[v as usize] += 1;
            }
        }
        for v in 1..=6 {
            let freq = in_x[v] as f64 / samples as f64;
            assert!((freq - 0.5).abs() <= 0.02, "vertex {v}: {freq}");
        }
    }

    #[test]
    fn inclusion_examples() {
        let s = example_scheme();
        assert_eq!(s.edge_inclusions(&[1, 2, 5]), vec![Witness { a: 0, b: 0 }]);
        assert_eq!(s.edge_inclusions(&[2, 3, 6]), vec![Witness { a: 2, b: 2 }]);
        assert!(s.edge_inclusions(&[1, 2, 3]).is_empty());
        assert!(s.edge_inclusions(&[4, 5, 6]).is_empty());
        assert_eq!(s.edge_for(Witness { a: 2, b: 2 }), vec![2, 3, 6]);
    }

    /// Enumerates every block combination of an instance and collects the
    /// witnesses producing `edge`.
    fn brute_witnesses(s: &PartitionScheme, edge: &[u32]) -> Vec<Witness> {
        let nu = s.nu() as u32;
        let mut out = Vec::new();
        for a in 0..nu {
            for b in 0..nu {
                if s.mode == Mode::FullPartition && a >= b {
                    continue;
                }
                let w = Witness { a, b };
                if s.edge_for(w) == edge {
                    out.push(w);
                }
            }
        }
        out
    }

    #[test]
    fn labelling_examples() {
        let s = example_scheme();
        let h = Hypergraph::new(6, 3, [[1, 2, 5], [1, 2, 3]]).unwrap();
        let labels = label_edges(&h, std::slice::from_ref(&s), 3);
        let id_inc = h.edge_id(&[1, 2, 5]).unwrap();
        let id_out = h.edge_id(&[1, 2, 3]).unwrap();
        assert_eq!(labels.count(id_inc), 1);
        assert_eq!(labels.label(id_inc).unwrap().instance, 0);
        assert_eq!(labels.count(id_out), 0);
        assert!(labels.label(id_out).is_none());
        assert_eq!(labels.unlabeled(), 1);
        assert_eq!(labels.fiber(0), &[id_inc as u32]);
    }

    #[test]
    fn label_choice_is_uniform_between_two_instances() {
        let s0 = example_scheme();
        let mut s1 = example_scheme();
        s1.id = 1;
        let h = Hypergraph::new(6, 3, [[1, 2, 5]]).unwrap();
        let seeds = 10_000;
        let mut first = 0;
        for seed in 0..seeds {
            let labels = label_edges(&h, &[s0.clone(), s1.clone()], seed);
            assert_eq!(labels.count(0), 2);
            if labels.label(0).unwrap().instance == 0 {
                first += 1;
            }
        }
        let freq = first as f64 / seeds as f64;
        assert!((freq - 0.5).abs() <= 0.02, "{freq}");
    }

    #[test]
    fn rho_examples() {
        let p = scheme_parameters(6, 3, 2, 0.5, None, Regime::Random, Default::default()).unwrap();
        assert!((p.rho - 0.45).abs() < 1e-15);
        assert!((p.rho - 3.0 * 6.0 / (2.0 * 5.0 * 4.0)).abs() < 1e-15);
        let p = scheme_parameters(8, 4, 2, 0.5, None, Regime::Random, Default::default()).unwrap();
        assert!((p.rho - 6.0 / 70.0).abs() < 1e-12);
        assert!((p.rho - 0.0857142857).abs() < 1e-10);
    }

    #[test]
    fn eps_for_loose_k3_is_square_root() {
        let n = 6.0f64;
        let r = 72.0 * n * n.ln() / 0.25;
        let o = ParamOverrides {
            r: Some(r),
            ..Default::default()
        };
        let p = scheme_parameters(6, 3, 2, 0.5, None, Regime::Random, o).unwrap();
        assert!((p.eps - 0.5).abs() < 1e-12);
        assert!((p.f0 - (r * 0.45 + (12.0 * r * 0.45 * n.ln()).sqrt())).abs() < 1e-9);
        assert!((p.p0 - 0.5 / p.f0).abs() < 1e-15);
        assert!((p.n0 - 0.5 * 3.0 * p.p0).abs() < 1e-12);
    }

    #[test]
    fn default_r_formulas() {
        let p = scheme_parameters(24, 3, 2, 0.6, None, Regime::Random, Default::default()).unwrap();
        assert!((p.r - 24.0 * (24.0f64 * 0.6).sqrt()).abs() < 1e-9);
        let p4 = scheme_parameters(24, 4, 3, 0.6, None, Regime::Random, Default::default()).unwrap();
        assert!((p4.r - 24.0f64.powi(2) * (24.0f64 * 0.6).sqrt()).abs() < 1e-6);
        let fact4 = 24.0;
        let base = (4.0 * 7.0 * fact4 * 24.0f64.ln() / (3.0 * (24.0f64 * 0.6).sqrt())).sqrt();
        assert!((p4.eps - base).abs() < 1e-12);
        let m = scheme_parameters(24, 4, 4, 0.6, None, Regime::Random, Default::default()).unwrap();
        let base4 = (4.0 * 7.0 * fact4 * 24.0f64.ln() / (4.0 * (24.0f64 * 0.6).sqrt())).sqrt();
        assert!((m.eps - 10.0 * fact4 * base4).abs() < 1e-9);
        assert!(m.diagnostics.iter().any(|d| d.contains("eps")));
    }

    #[test]
    fn pseudo_random_formulas() {
        let o = ParamOverrides {
            eps: Some(0.2),
            ..Default::default()
        };
        let n = 1000.0f64;
        let p = scheme_parameters(1000, 3, 2, 0.5, None, Regime::PseudoRandom, o).unwrap();
        let lo = n.ln().powi(2) / 0.2f64.powi(4);
        let hi = 0.2 * n.sqrt() * 0.25 / n.ln();
        assert!((p.f0 - (lo * hi).powf(0.25)).abs() < 1e-9);
        let total = binomial_f64(1000, 3);
        assert!((p.r - 0.8 * total * p.f0 / 500.0f64.powi(2)).abs() < 1e-6 * p.r);
        assert!((p.n0 - (1.0 - 1.0f64.cbrt()) * 500.0 * p.p0).abs() < 1e-12);
        assert!(p.diagnostics.iter().any(|d| d.contains("window empty")));

        let g = scheme_parameters(1000, 4, 4, 0.5, None, Regime::PseudoRandom, o).unwrap();
        assert!((g.n0 - (1.0 - 2.0 * 0.2f64.cbrt()) * 250.0 * g.p0).abs() < 1e-12);

        let f = scheme_parameters(1000, 4, 2, 0.5, None, Regime::PseudoRandom, o).unwrap();
        let nu = 500.0;
        assert!((f.r - 1.8 * binomial_f64(1000, 4) * f.f0 / (nu * nu)).abs() < 1e-6 * f.r);
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            scheme_parameters(7, 3, 2, 0.5, None, Regime::Random, Default::default()),
            Err(Error::Divisibility { .. })
        ));
        assert!(matches!(
            scheme_parameters(12, 6, 2, 0.5, None, Regime::Random, Default::default()),
            Err(Error::UnsupportedCase { .. })
        ));
    }

    proptest! {
        #[test]
        fn sampled_schemes_are_partitions(seed in any::<u64>(), id in 0u32..1000, case in 0usize..5) {
            let (n, k, ell) = [(6, 3, 2), (12, 4, 3), (12, 4, 2), (12, 4, 4), (15, 5, 3)][case];
            let s = sample_scheme(n, k, ell, None, seed, id).unwrap();
            assert_valid(&s);
        }

        #[test]
        fn inclusion_matches_brute_force(seed in any::<u64>(), case in 0usize..5) {
            let (n, k, ell) = [(6, 3, 2), (12, 4, 3), (12, 4, 2), (12, 4, 4), (15, 5, 3)][case];
            let s = sample_scheme(n, k, ell, None, seed, 0).unwrap();
            let h = Hypergraph::generate(n, k, 0.3, seed).unwrap();
            for e in h.edges() {
                let brute = brute_witnesses(&s, e);
                prop_assert!(brute.len() <= 1);
                prop_assert_eq!(s.edge_inclusions(e), brute);
            }
            // Every instance includes exactly its block combinations.
            let complete = Hypergraph::complete(n.min(12), k).ok();
            if let Some(c) = complete.filter(|c| c.n() == n) {
                let count = c.edges().filter(|e| s.edge_inclusion(e).is_some()).count();
                prop_assert_eq!(count, s.included_count());
            }
        }

        #[test]
        fn labelling_ignores_scheme_order(seed in any::<u64>(), rot in 0usize..6) {
            let schemes: Vec<_> = (0..6)
                .map(|i| sample_scheme(6, 3, 2, None, seed, i).unwrap())
                .collect();
            let mut shuffled = schemes.clone();
            shuffled.rotate_left(rot);
            shuffled.reverse();
            let h = Hypergraph::complete(6, 3).unwrap();
            prop_assert_eq!(label_edges(&h, &schemes, seed), label_edges(&h, &shuffled, seed));
        }

        #[test]
        fn labels_come_from_including_instances(seed in any::<u64>()) {
            let schemes: Vec<_> = (0..20)
                .map(|i| sample_scheme(12, 4, 3, None, seed, i).unwrap())
                .collect();
            let h = Hypergraph::generate(12, 4, 0.5, seed).unwrap();
            let labels = label_edges(&h, &schemes, seed);
            for id in 0..h.m() {
                let e = h.edge(id);
                let f = schemes.iter().filter(|s| s.edge_inclusion(e).is_some()).count() as u32;
                prop_assert_eq!(labels.count(id), f);
                match labels.label(id) {
                    None => prop_assert_eq!(f, 0),
                    Some(l) => {
                        let s = &schemes[l.instance as usize];
                        prop_assert_eq!(s.edge_inclusion(e), Some(l.witness));
                    }
                }
            }
        }
    }
}
