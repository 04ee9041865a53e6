//! Random states, unitaries and channels for property tests and Monte Carlo
//! studies. Pure states are drawn from the unitarily invariant measure via
//! normalized independent complex Gaussian amplitudes; unitaries come from
//! the QR decomposition of a Ginibre matrix with the standard phase fix.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::channels::{InitialState, KrausPair};
use crate::state::{c64, DensityMatrix, StateVector};

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64(re, im)
}

/// Haar-random pure state on `n_qubits` qubits.
pub fn haar_state<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> StateVector {
    let d = 1usize << n_qubits;
    let amplitudes: Vec<Complex64> = (0..d).map(|_| gaussian_complex(rng)).collect();
    StateVector::from_unnormalized(vec![2; n_qubits], amplitudes)
        .expect("gaussian amplitudes are nonzero almost surely")
}

/// Haar-random d×d unitary.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(d, d, |_, _| gaussian_complex(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    // Fix the phases so the distribution is Haar rather than QR-convention
    // dependent: right-multiply by diag(r_ii/|r_ii|).
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { c64(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Random trace-preserving Kraus pair: the first two columns of a Haar 4×4
/// unitary, split into the environment-0 and environment-1 blocks.
pub fn random_kraus_pair<R: Rng + ?Sized>(rng: &mut R) -> KrausPair {
    let u = haar_unitary(4, rng);
    let k0 = nalgebra::Matrix2::new(u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]);
    let k1 = nalgebra::Matrix2::new(u[(2, 0)], u[(2, 1)], u[(3, 0)], u[(3, 1)]);
    KrausPair::new(k0, k1).expect("unitary columns are isometric")
}

/// Random full-rank mixed state from the Hilbert-Schmidt (Ginibre) ensemble.
pub fn mixed_state<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> DensityMatrix {
    let d = 1usize << n_qubits;
    let g = DMatrix::from_fn(d, d, |_, _| gaussian_complex(rng));
    let mut rho = &g * g.adjoint();
    let trace = rho.trace().re;
    rho /= c64(trace, 0.0);
    // Clean up roundoff asymmetry before the validating constructor.
    let herm = (rho.adjoint() + &rho) * c64(0.5, 0.0);
    DensityMatrix::new(vec![2; n_qubits], herm).expect("Ginibre states are valid")
}

/// Random normalized two-qubit initial amplitudes (α, β, γ, δ).
pub fn random_initial_state<R: Rng + ?Sized>(rng: &mut R) -> InitialState {
    loop {
        let a = gaussian_complex(rng);
        let b = gaussian_complex(rng);
        let g = gaussian_complex(rng);
        let d = gaussian_complex(rng);
        if let Ok(init) = InitialState::from_unnormalized(a, b, g, d) {
            return init;
        }
    }
}
