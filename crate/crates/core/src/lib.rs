//! Simulation of an entangled two-qubit system whose B qubit couples to an
//! explicit environment qubit through amplitude- or phase-damping Kraus
//! pairs, with the full correlation ledger along the trajectory:
//! concurrences and tangles, the residual 3-tangle, entanglement witnesses,
//! bipartite/total/genuine-tripartite quantum discord, plus a simulated
//! photon-counting tomography pipeline with Monte Carlo error bars and the
//! quasi-pure spectral analysis used to compare noisy states against
//! pure-state theory.
//!
//! Subsystem order is A, B, E with A the most significant bit: |nlm⟩ lives at
//! amplitude index 4n + 2l + m. Entropic quantities are in nats.

pub mod channels;
pub mod discord;
pub mod entanglement;
pub mod error;
pub mod experiments;
pub mod random;
pub mod simplex;
pub mod state;
pub mod statefile;
pub mod tomography;

pub use channels::{
    amplitude_damping, apply_channel, correlated_be_dephasing, dilate, f_function, phase_damping,
    white_noise, ChannelParameter, ChannelSpec, InitialState, KrausPair,
};
pub use discord::{
    bipartite_discord, classical_correlation, conditional_entropy_one, conditional_entropy_two,
    discord_entanglement_monogamy_check, genuine_discord, pure_genuine_discord, total_discord,
    total_information, DiscordOptions, DiscordReport, Orientations, ProjectivePair,
};
pub use entanglement::{
    concurrence, initial_entanglement, tangle_one_vs_rest, three_tangle_ckw,
    three_tangle_factorized, three_tangle_mixed_estimate, witness_ghz, witness_w, GhzWitness,
    TangleSet, WWitness,
};
pub use error::{Error, Result};
pub use experiments::{
    emit_csv, emit_json, noise_study, run_sweep, Analysis, ChannelKind, CorrelationRecord,
    NoiseConfig, NoiseStudyConfig, NoiseStudyRecord, SweepConfig, TomoConfig,
};
pub use state::{DensityMatrix, DominantEigenvector, SpectralDecomposition, StateVector};
pub use statefile::{load_state, save_state, StateFile};
pub use tomography::{
    monte_carlo_errors, quasi_pure_pipeline, read_counts_file, reconstruct, simulate_counts,
    write_counts_file, CountRecord, ProjectorLabel, Reconstructor, Statistic, TomographySetting,
};
