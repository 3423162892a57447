//! Driver for `qpair-core`: JSON structure documents, verification campaigns
//! and reports.

pub mod campaigns;
pub mod codec;
pub mod commands;
pub mod input;
pub mod report;
