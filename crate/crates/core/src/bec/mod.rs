//! Erasure channel: polar baselines, ML decoding and FER estimation.

mod decoder;
mod polar;
mod sim;

pub use decoder::{ml_success, DecoderScratch, ErasureDecoder, ErasurePattern};
pub use polar::{
    polar_code_bec, polar_code_bec_with, polar_reliabilities, polar_reliabilities_with, BitOrder, PolarReliability,
};
pub use sim::{
    exact_fer, failure_spectrum, simulate_fer, simulate_fer_sweep, FerEstimate, SimConfig, MAX_EXACT_LENGTH,
};
