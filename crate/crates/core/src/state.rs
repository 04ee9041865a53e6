//! State representations and the linear-algebra operations everything else
//! consumes: tensor products, partial traces, entropies, spectral analysis.
//!
//! Conventions: subsystems are qubits, the leftmost label (index 0) is the
//! most significant bit of the computational-basis index, so a three-qubit
//! basis state |nlm⟩ lives at index 4n + 2l + m. Subsystem order for the
//! dilated system is A, B, E.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Unit-norm tolerance for state vectors.
pub const NORM_TOL: f64 = 1e-12;
/// Entrywise Hermiticity and trace tolerance for density matrices.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues above this floor count as numerically nonnegative.
pub const PSD_FLOOR: f64 = -1e-9;

pub(crate) fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check_qubit_dims(dims: &[usize]) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::InvalidState("dims: empty subsystem list".into()));
    }
    if dims.iter().any(|&d| d != 2) {
        return Err(Error::InvalidState(
            "dims: only qubit subsystems (dimension 2) are supported".into(),
        ));
    }
    Ok(())
}

/// Pure state of a register of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dims: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Build a state vector, validating the subsystem list, length and norm.
    pub fn new(dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubit_dims(&dims)?;
        let dim: usize = dims.iter().product();
        if amplitudes.len() != dim {
            return Err(Error::InvalidState(format!(
                "amplitudes: expected length {dim}, got {}",
                amplitudes.len()
            )));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!(
                "amplitudes: squared norm {norm_sq} deviates from 1 by more than {NORM_TOL:e}"
            )));
        }
        Ok(Self { dims, amplitudes })
    }

    /// Normalize an arbitrary nonzero amplitude list into a state vector.
    pub fn from_unnormalized(dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::InvalidState("amplitudes: zero vector".into()));
        }
        let scaled = amplitudes.iter().map(|a| a / norm).collect();
        Self::new(dims, scaled)
    }

    /// Computational basis state |index⟩ of an `n_qubits` register.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        assert!(n_qubits >= 1 && index < (1 << n_qubits));
        let mut amplitudes = vec![c64(0.0, 0.0); 1 << n_qubits];
        amplitudes[index] = c64(1.0, 0.0);
        Self { dims: vec![2; n_qubits], amplitudes }
    }

    /// Two-qubit Bell state (|00⟩ + |11⟩)/√2.
    pub fn bell_phi_plus() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut amplitudes = vec![c64(0.0, 0.0); 4];
        amplitudes[0b00] = c64(s, 0.0);
        amplitudes[0b11] = c64(s, 0.0);
        Self { dims: vec![2, 2], amplitudes }
    }

    /// Three-qubit GHZ state (|000⟩ + |111⟩)/√2.
    pub fn ghz3() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut amplitudes = vec![c64(0.0, 0.0); 8];
        amplitudes[0b000] = c64(s, 0.0);
        amplitudes[0b111] = c64(s, 0.0);
        Self { dims: vec![2, 2, 2], amplitudes }
    }

    /// Three-qubit W state (|001⟩ + |010⟩ + |100⟩)/√3.
    pub fn w3() -> Self {
        let s = 1.0 / 3.0_f64.sqrt();
        let mut amplitudes = vec![c64(0.0, 0.0); 8];
        amplitudes[0b001] = c64(s, 0.0);
        amplitudes[0b010] = c64(s, 0.0);
        amplitudes[0b100] = c64(s, 0.0);
        Self { dims: vec![2, 2, 2], amplitudes }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_subsystems(&self) -> usize {
        self.dims.len()
    }

    /// Total Hilbert-space dimension ∏ dims.
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Kronecker product with concatenated subsystem lists.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        StateVector { dims, amplitudes }
    }

    /// Projector |ψ⟩⟨ψ| as a density matrix.
    pub fn density(&self) -> DensityMatrix {
        let d = self.dim();
        let entries = DMatrix::from_fn(d, d, |i, j| self.amplitudes[i] * self.amplitudes[j].conj());
        DensityMatrix { dims: self.dims.clone(), entries }
    }

    /// Reduced state on the kept subsystems of |ψ⟩⟨ψ|.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        self.density().partial_trace(keep)
    }

    /// Overlap |⟨other|self⟩|².
    pub fn overlap_sqr(&self, other: &StateVector) -> Result<f64> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!(
                "overlap between dims {:?} and {:?}",
                self.dims, other.dims
            )));
        }
        let ip: Complex64 = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| b.conj() * a)
            .sum();
        Ok(ip.norm_sqr())
    }

    /// Fix the global phase so the largest-magnitude amplitude is real positive.
    pub fn phase_fixed(&self) -> StateVector {
        let mut out = self.clone();
        phase_fix(&mut out.amplitudes);
        out
    }
}

pub(crate) fn phase_fix(amplitudes: &mut [Complex64]) {
    let mut k = 0;
    let mut best = 0.0;
    for (i, a) in amplitudes.iter().enumerate() {
        let m = a.norm_sqr();
        if m > best {
            best = m;
            k = i;
        }
    }
    let a = amplitudes[k];
    let r = a.norm();
    if r > 0.0 {
        let factor = a.conj() / r;
        for x in amplitudes.iter_mut() {
            *x *= factor;
        }
    }
}

/// Mixed state: Hermitian, positive-semidefinite, unit-trace matrix over a
/// register of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Build a density matrix, validating Hermiticity, trace and positivity.
    pub fn new(dims: Vec<usize>, entries: DMatrix<Complex64>) -> Result<Self> {
        check_qubit_dims(&dims)?;
        let dim: usize = dims.iter().product();
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::InvalidState(format!(
                "entries: expected a {dim}x{dim} matrix, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        for i in 0..dim {
            for j in i..dim {
                let dev = (entries[(i, j)] - entries[(j, i)].conj()).norm();
                if dev > HERMITIAN_TOL {
                    return Err(Error::InvalidState(format!(
                        "entries: not Hermitian at ({i},{j}), deviation {dev:e}"
                    )));
                }
            }
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > HERMITIAN_TOL || trace.im.abs() > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!(
                "entries: trace {trace} deviates from 1"
            )));
        }
        let min_eig = entries
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eig < PSD_FLOOR {
            return Err(Error::InvalidState(format!(
                "entries: negative eigenvalue {min_eig:e} below the {PSD_FLOOR:e} floor"
            )));
        }
        Ok(Self { dims, entries })
    }

    /// Fully mixed state I/2ⁿ.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        assert!(n_qubits >= 1);
        let d = 1 << n_qubits;
        let entries = DMatrix::from_diagonal_element(d, d, c64(1.0 / d as f64, 0.0));
        Self { dims: vec![2; n_qubits], entries }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Internal constructor for matrices that are valid by construction
    /// (partial traces, convex mixtures, unitary conjugations of valid input).
    pub(crate) fn from_valid_parts(dims: Vec<usize>, entries: DMatrix<Complex64>) -> Self {
        debug_assert!((entries.trace().re - 1.0).abs() < 1e-8);
        Self { dims, entries }
    }

    /// Kronecker product with concatenated subsystem lists.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        DensityMatrix { dims, entries: self.entries.kronecker(&other.entries) }
    }

    /// Trace out every subsystem not in `keep`; the kept subsystems stay in
    /// ascending index order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.dims.len();
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        if kept.is_empty() {
            return Err(Error::InvalidSubsystems("keep: empty set".into()));
        }
        kept.dedup();
        if kept.len() != keep.len() {
            return Err(Error::InvalidSubsystems("keep: repeated subsystem".into()));
        }
        if *kept.last().unwrap() >= n {
            return Err(Error::InvalidSubsystems(format!(
                "keep: subsystem {} out of range for {n} subsystems",
                kept.last().unwrap()
            )));
        }
        let traced: Vec<usize> = (0..n).filter(|i| !kept.contains(i)).collect();
        if traced.is_empty() {
            return Ok(self.clone());
        }
        let kd = 1usize << kept.len();
        let td = 1usize << traced.len();
        // Bit of subsystem i sits at shift n-1-i in the full index.
        let compose = |bits: usize, subsystems: &[usize]| -> usize {
            let mut idx = 0usize;
            for (j, &s) in subsystems.iter().enumerate() {
                let bit = (bits >> (subsystems.len() - 1 - j)) & 1;
                idx |= bit << (n - 1 - s);
            }
            idx
        };
        let mut out = DMatrix::from_element(kd, kd, c64(0.0, 0.0));
        for a in 0..kd {
            let a_base = compose(a, &kept);
            for b in 0..kd {
                let b_base = compose(b, &kept);
                let mut acc = c64(0.0, 0.0);
                for t in 0..td {
                    let t_bits = compose(t, &traced);
                    acc += self.entries[(a_base | t_bits, b_base | t_bits)];
                }
                out[(a, b)] = acc;
            }
        }
        Ok(DensityMatrix { dims: vec![2; kept.len()], entries: out })
    }

    /// Von Neumann entropy −Σ λ ln λ in nats, with 0·ln 0 ≡ 0.
    pub fn von_neumann_entropy(&self) -> f64 {
        let eigs = self.entries.clone().symmetric_eigen().eigenvalues;
        let mut s = 0.0;
        for &lambda in eigs.iter() {
            let lambda = clip_eigenvalue(lambda);
            if lambda > 0.0 {
                s -= lambda * lambda.ln();
            }
        }
        if s < 0.0 && s > -1e-12 {
            0.0
        } else {
            s
        }
    }

    /// Eigenvalues and phase-fixed eigenvectors, eigenvalues descending.
    pub fn spectral_decompose(&self) -> SpectralDecomposition {
        let eig = self.entries.clone().symmetric_eigen();
        let d = self.dim();
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .partial_cmp(&eig.eigenvalues[a])
                .expect("eigenvalues are finite")
        });
        let mut eigenvalues = Vec::with_capacity(d);
        let mut eigenvectors = Vec::with_capacity(d);
        for &k in &order {
            eigenvalues.push(eig.eigenvalues[k]);
            let mut amplitudes: Vec<Complex64> = eig.eigenvectors.column(k).iter().copied().collect();
            phase_fix(&mut amplitudes);
            eigenvectors.push(StateVector { dims: self.dims.clone(), amplitudes });
        }
        SpectralDecomposition { eigenvalues, eigenvectors }
    }

    /// Eigenvector of the largest eigenvalue, phase-fixed; flags a degenerate
    /// top of the spectrum (gap below 1e-9) with a deterministic tie-break.
    pub fn dominant_eigenvector(&self) -> DominantEigenvector {
        let spec = self.spectral_decompose();
        let degenerate = spec.eigenvalues.len() > 1
            && spec.eigenvalues[0] - spec.eigenvalues[1] < 1e-9;
        DominantEigenvector {
            state: spec.eigenvectors.into_iter().next().expect("nonempty spectrum"),
            eigenvalue: spec.eigenvalues[0],
            degenerate,
        }
    }

    /// ⟨ψ|ρ|ψ⟩ for a pure reference state.
    pub fn fidelity_pure(&self, psi: &StateVector) -> Result<f64> {
        if self.dims != psi.dims {
            return Err(Error::DimensionMismatch(format!(
                "fidelity between dims {:?} and {:?}",
                self.dims, psi.dims
            )));
        }
        let mut acc = c64(0.0, 0.0);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += psi.amplitudes[i].conj() * self.entries[(i, j)] * psi.amplitudes[j];
            }
        }
        debug_assert!(acc.im.abs() < 1e-10, "fidelity has imaginary part {:e}", acc.im);
        Ok(acc.re)
    }

    /// Tr ρ², equal to the squared Frobenius norm for Hermitian input.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues_descending(&self) -> Vec<f64> {
        let mut eigs: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .collect();
        eigs.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
        eigs
    }
}

/// Clip tiny negative eigenvalues (roundoff inside the PSD floor) to zero.
pub(crate) fn clip_eigenvalue(lambda: f64) -> f64 {
    if (PSD_FLOOR..0.0).contains(&lambda) {
        0.0
    } else {
        lambda
    }
}

/// ρ = Σ μᵢ |φᵢ⟩⟨φᵢ| with μᵢ descending.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<StateVector>,
}

impl SpectralDecomposition {
    /// Rebuild Σ μᵢ |φᵢ⟩⟨φᵢ| (used to verify the decomposition).
    pub fn reassemble(&self) -> DMatrix<Complex64> {
        let d = self.eigenvectors[0].dim();
        let mut out = DMatrix::from_element(d, d, c64(0.0, 0.0));
        for (mu, phi) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            for i in 0..d {
                for j in 0..d {
                    out[(i, j)] += phi.amplitudes[i] * phi.amplitudes[j].conj() * *mu;
                }
            }
        }
        out
    }
}

/// Dominant spectral component of a density matrix.
#[derive(Debug, Clone)]
pub struct DominantEigenvector {
    pub state: StateVector,
    pub eigenvalue: f64,
    /// True when the top eigenvalue gap is below 1e-9; the returned vector is
    /// then a deterministic tie-break in solver index order.
    pub degenerate: bool,
}
