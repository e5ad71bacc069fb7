pub mod formal_lang;
pub mod metrics;
pub mod minimal_pairs;
mod rng;
pub mod structures;
pub mod workbench;
