//! Deterministic fixtures shared by the benchmark targets.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use qcorr::random::{haar_state, mixed_state};
use qcorr::{DensityMatrix, StateVector};

/// A fixed Haar-random three-qubit pure state.
pub fn fixture_pure() -> StateVector {
    let mut rng = ChaCha12Rng::seed_from_u64(0xBE7C);
    haar_state(3, &mut rng)
}

/// A fixed full-rank three-qubit mixed state.
pub fn fixture_mixed() -> DensityMatrix {
    let mut rng = ChaCha12Rng::seed_from_u64(0xBE7C);
    mixed_state(3, &mut rng)
}

/// A fixed two-qubit mixed state (for concurrence and bipartite discord).
pub fn fixture_pair() -> DensityMatrix {
    let mut rng = ChaCha12Rng::seed_from_u64(0xBE7C);
    mixed_state(2, &mut rng)
}
