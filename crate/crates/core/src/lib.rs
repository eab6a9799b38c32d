pub mod annotate;
pub mod biber;
pub mod corpus;
pub mod features;
pub mod harness;
pub mod report;
pub mod stats;
pub mod surface;
pub mod synth;
