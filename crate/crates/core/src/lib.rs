//! Binary 1-perfect codes and the Preparata-parameter codes inside them.
//!
//! The crate builds the canonical Hamming family `H_n` recursively,
//! Vasil'ev codes, and the codes `C(β)` obtained by switching one linear
//! component of `H_n`. It reads Steiner triple systems off code
//! neighbourhoods, builds the Nordstrom–Robinson code from the octacode,
//! and replays, step by step, why no `C(β)` of length `4^t - 1` contains a
//! code of distance 5 and size `2^(n+1)/(n+1)^2`.
//!
//! Words are at most 63 bits long and are written as `'0'/'1'` strings
//! with coordinate 1 first.

pub mod components;
pub mod error;
pub mod exact_cover;
pub mod gf2;
pub mod nr;
pub mod oracle;
pub mod perfect;
pub mod sts;
pub mod theorem;
pub mod word;

pub use components::{
    hamming_partition_into_components, i_closure, linear_component, switched_code, ComponentSpec,
    LinearComponent, SwitchedCode,
};
pub use error::{Error, Result};
pub use exact_cover::{solve_exact_cover, ExactCoverInstance, ExactCoverResult, SearchStatus};
pub use gf2::{hamming_parity_check, span_of, BitMatrix, LinearCode};
pub use nr::{
    component_trace_check, enclosing_hamming, nordstrom_robinson, verify_preparata_parameters,
    NrCode, QuaternaryWord,
};
pub use oracle::{CodeOracle, ExplicitCode};
pub use perfect::{
    canonical_hamming, codewords_at_distance, verify_antipodal, verify_perfect, vasilev,
    CanonicalHamming, PerfectnessReport, VasilevCode, VasilevSpec, VerifyMode,
};
pub use sts::{
    find_triple_partitions, neighborhood_sts, preparata_partition_condition, validate_sts,
    PartitionConstraints, Triple, TripleSystem,
};
pub use theorem::{
    effective_betas, verify_theorem_algebraic, verify_theorem_exhaustive,
    weight3_words_of_switched_component, OverallStatus, TheoremCertificate,
};
pub use word::Word;
