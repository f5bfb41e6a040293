//! Packing random and pseudo-random k-uniform hypergraphs into edge-disjoint
//! type-ℓ Hamilton cycles or perfect matchings, with premise auditors.

pub mod auxgraph;
pub mod cycles;
pub mod error;
pub mod hypercore;
pub mod packers;
pub mod partitions;
pub mod pipeline;
mod seeding;
mod serde_float;

pub use cycles::{
    assemble_cycle, validate_cycle, validate_matching, verify_packing, AuxSolution, CycleVerdict,
    HyperMatching, PackedItem, PackingKind, PackingResult, PackingVerdict, TypeLCycle,
};
pub use error::{Error, Result};
pub use hypercore::{Hypergraph, Neighborhood, VertexSet};
pub use partitions::{
    label_edges, sample_scheme, scheme_parameters, LabeledEdgeSet, Mode, ParamOverrides,
    PartitionScheme, Regime, SchemeParameters, Witness,
};
pub use auxgraph::{
    audit_bipartite_premises, audit_degree_properties, audit_inclusion_counts, audit_regularity, build_aux_graph,
    AuditMode, AuditReport, AuxGraph, PropertyFamily, Verdict,
};
pub use packers::{
    brute_force_pm_oracle, max_disjoint_pm_flow, pack_graph_hamilton, pack_perfect_matchings, BipartiteGraph,
    CyclePack, MatchingPack, SimpleGraph,
};
pub use pipeline::{emit_report, parse_report, run_packing, InputSource, RunConfig, RunReport};
