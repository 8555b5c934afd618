//! Triadic-closure measurement for coauthorship corpora.
//!
//! Three coefficients over the same author–paper records:
//!
//! * **NCC** – closed 2-paths over 2-paths on the one-mode author graph.
//! * **OCC** – closed 4-paths over 4-paths on the bipartite author–paper graph.
//! * **TCC** – of the author pairs linked by an open 4-path in a preceding
//!   window, the fraction that coauthor in the target year.
//!
//! All counts are exact integers and all ratios exact rationals; an empty
//! denominator is reported as undefined, never as zero.

pub mod corpus;
pub mod error;
pub mod experiments;
pub mod oracle;
pub mod projection;
pub mod report;
pub mod static_metrics;
pub mod synth;
pub mod temporal;

pub use corpus::{
    apply_filters, parse_corpus, percentile_threshold, AuthorCap, AuthorId, Corpus, FilterConfig, FilterReport,
    Format, PaperRecord, RawRecord,
};
pub use error::{Error, Result};
pub use experiments::{run_timeseries, timeseries_csv, TimeseriesConfig, TimeseriesRow};
pub use projection::{project_one_mode, OneModeGraph};
pub use report::{exact_ratio, format_exact, Exact, MetricKind, MetricReport};
pub use static_metrics::{
    count_closed_four_paths, count_closed_two_paths, count_four_paths, count_two_paths, ncc, occ, FourPath,
};
pub use synth::{generate_synthetic, SizeDistribution, SynthConfig, SynthOutput};
pub use temporal::{
    closure_by_shared_count, involvement_ratio, open_pairs, overlap_ratios, tcc, window_sweep, Eligibility,
    PairObservation, TccOptions, TccReport, WindowSpec,
};
