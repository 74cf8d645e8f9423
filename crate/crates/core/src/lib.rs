//! Bimodule matrix problems over exact fields: canonical forms by reduction,
//! isomorphism testing, Krull–Schmidt decomposition, differential biquivers and
//! detection of wild configurations.

pub mod error;
pub mod exactmath;
pub mod problem;
pub mod ingest;
pub mod weyr;
pub mod reduce;
pub mod bocs;
