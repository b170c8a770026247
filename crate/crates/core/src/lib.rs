//! Light near-additive spanners for weighted graphs.
//!
//! The main entry point is [`build_spanner`], which produces a subgraph `H`
//! with `d_H(x,y) <= (1+O(eps)) d_G(x,y) + O(k/eps)^k W(x,y)`, where `W(x,y)`
//! is the heaviest edge on a shortest `x`–`y` path, and whose total weight is
//! within `Õ(n^{1/k}/eps)` of the minimum spanning tree. The [`verify`]
//! module certifies these guarantees exactly on concrete instances.
//!
//! ```
//! use lightspan::{build_spanner, generate_graph, verify_stretch, Family, SpannerParams,
//!                 StretchBound, VerifyMode, Weights};
//!
//! let g = generate_graph(&Family::geometric(60), Weights::Euclidean, 1).unwrap();
//! let sp = build_spanner(&g, &SpannerParams::new(0.05, 2, 1)).unwrap();
//! let report = verify_stretch(&g, &sp, &StretchBound::for_spanner(&g, &sp), VerifyMode::AllPairs)
//!     .unwrap();
//! assert!(report.passed());
//! ```

pub mod error;
pub mod graph;
pub mod net;
pub mod spanner;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use graph::generate::{generate_graph, Family, Weights};
pub use graph::io::{read_graph, read_graph_str, write_graph, write_graph_string, GraphFormat};
pub use graph::{
    dijkstra, dijkstra_within, multi_source_dijkstra, shortest_path, DistanceTable, Edge, Graph,
    Path,
};
pub use net::{build_net_hierarchy, greedy_delta_net, DeltaNet, NetHierarchy, MAX_SAFE_EPS};
pub use spanner::{
    bunch_of, build_spanner, build_spanner_with_internals, build_wmax_spanner,
    build_wmax_spanner_with_net, normalize, phase2_paths, representative_level, sample_levels,
    BuildInternals, Bunch, LevelSampling, Phase2Record, PhaseSummary, PhaseTag, Spanner,
    SpannerEdge, SpannerKind, SpannerParams,
};
pub use tree::{mst, mst_weight, slt, slt_forest, slt_weight_factor, SltForest, SpanningTree};
pub use verify::{
    additive_factor, stretch_delta, verify_lemma_suite, verify_lightness, verify_net, verify_slt,
    verify_stretch, LemmaCheck, LemmaReport, LightnessReport, NetCheck, SltCheck, StretchBound,
    StretchReport, SweepRow, VerifyMode, REPORT_SCHEMA_VERSION, SWEEP_CSV_HEADER,
};
