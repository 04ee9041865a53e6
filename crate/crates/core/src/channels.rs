//! Two-operator Kraus channels on qubit B, their dilation onto an explicit
//! environment qubit E, and the noise models used to emulate experimental
//! imperfection.
//!
//! The dilation follows the map |x⟩_B|0⟩_E → (K̂₀|x⟩_B)|0⟩_E + (K̂₁|x⟩_B)|1⟩_E
//! applied to an initial state [α|11⟩ + β|10⟩ + γ|01⟩ + δ|00⟩]_AB |0⟩_E.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{c64, DensityMatrix, StateVector, NORM_TOL};

/// Entrywise tolerance on K̂₀†K̂₀ + K̂₁†K̂₁ = I.
pub const COMPLETENESS_TOL: f64 = 1e-10;

/// A trace-preserving pair of 2×2 Kraus operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausPair {
    k0: Matrix2<Complex64>,
    k1: Matrix2<Complex64>,
}

impl KrausPair {
    /// Validate completeness and build the pair.
    pub fn new(k0: Matrix2<Complex64>, k1: Matrix2<Complex64>) -> Result<Self> {
        let sum = k0.adjoint() * k0 + k1.adjoint() * k1;
        let mut max_dev: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { c64(1.0, 0.0) } else { c64(0.0, 0.0) };
                max_dev = max_dev.max((sum[(i, j)] - expect).norm());
            }
        }
        if max_dev > COMPLETENESS_TOL {
            return Err(Error::NotTracePreserving { max_dev });
        }
        Ok(Self { k0, k1 })
    }

    /// The channel that does nothing: K̂₀ = I, K̂₁ = 0.
    pub fn identity() -> Self {
        Self { k0: Matrix2::identity(), k1: Matrix2::zeros() }
    }

    pub fn k0(&self) -> &Matrix2<Complex64> {
        &self.k0
    }

    pub fn k1(&self) -> &Matrix2<Complex64> {
        &self.k1
    }
}

/// Initial two-qubit amplitudes (α, β, γ, δ) of α|11⟩ + β|10⟩ + γ|01⟩ + δ|00⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialState {
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    delta: Complex64,
}

impl InitialState {
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64, delta: Complex64) -> Result<Self> {
        let norm_sq =
            alpha.norm_sqr() + beta.norm_sqr() + gamma.norm_sqr() + delta.norm_sqr();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!(
                "initial amplitudes: squared norm {norm_sq} deviates from 1"
            )));
        }
        Ok(Self { alpha, beta, gamma, delta })
    }

    /// Normalize arbitrary nonzero amplitudes.
    pub fn from_unnormalized(
        alpha: Complex64,
        beta: Complex64,
        gamma: Complex64,
        delta: Complex64,
    ) -> Result<Self> {
        let norm =
            (alpha.norm_sqr() + beta.norm_sqr() + gamma.norm_sqr() + delta.norm_sqr()).sqrt();
        if norm < 1e-300 {
            return Err(Error::InvalidState("initial amplitudes: zero vector".into()));
        }
        Ok(Self { alpha: alpha / norm, beta: beta / norm, gamma: gamma / norm, delta: delta / norm })
    }

    /// The Bell-like pair α = δ = 1/√2 that feeds the dephasing trajectory.
    pub fn ghz_seed() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self { alpha: c64(s, 0.0), beta: c64(0.0, 0.0), gamma: c64(0.0, 0.0), delta: c64(s, 0.0) }
    }

    /// The single-excitation pair β = γ = 1/√2 that feeds the damping trajectory.
    pub fn w_seed() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self { alpha: c64(0.0, 0.0), beta: c64(s, 0.0), gamma: c64(s, 0.0), delta: c64(0.0, 0.0) }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn delta(&self) -> Complex64 {
        self.delta
    }

    /// The two-qubit AB state vector.
    pub fn state_vector(&self) -> StateVector {
        let mut amps = vec![c64(0.0, 0.0); 4];
        amps[0b11] = self.alpha;
        amps[0b10] = self.beta;
        amps[0b01] = self.gamma;
        amps[0b00] = self.delta;
        StateVector::new(vec![2, 2], amps).expect("normalized by construction")
    }
}

/// Channel strength p ∈ \[0,1\], optionally tied to the waveplate angle θ_p
/// through p = sin²(2θ_p).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParameter {
    p: f64,
    theta_p: Option<f64>,
}

impl ChannelParameter {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || !p.is_finite() {
            return Err(Error::InvalidParameter(format!("p: {p} outside [0, 1]")));
        }
        Ok(Self { p, theta_p: None })
    }

    /// Construct from the angle θ_p ∈ \[0, π/4\], with p = sin²(2θ_p).
    pub fn from_theta(theta_p: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::FRAC_PI_4).contains(&theta_p) {
            return Err(Error::InvalidParameter(format!(
                "theta_p: {theta_p} outside [0, π/4]"
            )));
        }
        let p = (2.0 * theta_p).sin().powi(2);
        Ok(Self { p, theta_p: Some(theta_p) })
    }

    /// Attach an explicit angle, validating |p − sin²(2θ_p)| < 1e-12.
    pub fn with_theta(p: f64, theta_p: f64) -> Result<Self> {
        let base = Self::from_theta(theta_p)?;
        if (p - base.p).abs() >= 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "theta_p: sin²(2θ_p) = {} is inconsistent with p = {p}",
                base.p
            )));
        }
        Ok(Self { p, theta_p: Some(theta_p) })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn theta_p(&self) -> Option<f64> {
        self.theta_p
    }
}

/// Amplitude damping: K̂₀ = diag(1, √(1−p)), K̂₁ = √p |0⟩⟨1|.
pub fn amplitude_damping(p: &ChannelParameter) -> KrausPair {
    let p = p.p();
    let k0 = Matrix2::new(c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64((1.0 - p).sqrt(), 0.0));
    let k1 = Matrix2::new(c64(0.0, 0.0), c64(p.sqrt(), 0.0), c64(0.0, 0.0), c64(0.0, 0.0));
    KrausPair { k0, k1 }
}

/// Phase damping: K̂₀ = diag(1, √(1−p)), K̂₁ = diag(0, √p).
pub fn phase_damping(p: &ChannelParameter) -> KrausPair {
    let p = p.p();
    let k0 = Matrix2::new(c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64((1.0 - p).sqrt(), 0.0));
    let k1 = Matrix2::new(c64(0.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(p.sqrt(), 0.0));
    KrausPair { k0, k1 }
}

/// Dilate the channel onto an explicit environment qubit: returns the evolved
/// three-qubit pure state in subsystem order A, B, E.
pub fn dilate(initial: &InitialState, kraus: &KrausPair) -> StateVector {
    let mut amps = vec![c64(0.0, 0.0); 8];
    for l in 0..2usize {
        for (e, k) in [kraus.k0(), kraus.k1()].into_iter().enumerate() {
            // A = 1 branch carries the B inputs |1⟩ (α) and |0⟩ (β);
            // A = 0 carries |1⟩ (γ) and |0⟩ (δ).
            amps[0b100 | (l << 1) | e] = initial.alpha * k[(l, 1)] + initial.beta * k[(l, 0)];
            amps[(l << 1) | e] = initial.gamma * k[(l, 1)] + initial.delta * k[(l, 0)];
        }
    }
    // Completeness keeps the norm at 1 up to roundoff; rescale only when the
    // deviation is visible so that the identity channel embeds bit-exactly.
    let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if (norm_sq - 1.0).abs() <= NORM_TOL {
        StateVector::new(vec![2, 2, 2], amps).expect("norm checked")
    } else {
        StateVector::from_unnormalized(vec![2, 2, 2], amps)
            .expect("completeness of the Kraus pair preserves the norm")
    }
}

/// Apply the channel directly to a single-qubit state: ρ → K̂₀ρK̂₀† + K̂₁ρK̂₁†.
pub fn apply_channel(rho: &DensityMatrix, kraus: &KrausPair) -> Result<DensityMatrix> {
    if rho.dims() != [2] {
        return Err(Error::DimensionMismatch(format!(
            "apply_channel expects a single qubit, got dims {:?}",
            rho.dims()
        )));
    }
    let m = rho.entries();
    let as_mat2 = Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let out = kraus.k0() * as_mat2 * kraus.k0().adjoint() + kraus.k1() * as_mat2 * kraus.k1().adjoint();
    let entries = DMatrix::from_row_slice(2, 2, &[out[(0, 0)], out[(0, 1)], out[(1, 0)], out[(1, 1)]]);
    Ok(DensityMatrix::from_valid_parts(vec![2], entries))
}

/// The channel function f(K̂₀, K̂₁) whose modulus scales the residual tangle:
///
/// f = (m₁₀n₀₁ − m₀₀n₁₁)² + (m₁₁n₀₀ − m₀₁n₁₀)²
///   + 2(m₁₁n₀₁ − m₀₁n₁₁)(m₀₀n₁₀ − m₁₀n₀₀) − 2 det K̂₀ det K̂₁.
pub fn f_function(kraus: &KrausPair) -> Complex64 {
    let m = kraus.k0();
    let n = kraus.k1();
    let t1 = m[(1, 0)] * n[(0, 1)] - m[(0, 0)] * n[(1, 1)];
    let t2 = m[(1, 1)] * n[(0, 0)] - m[(0, 1)] * n[(1, 0)];
    let t3 = m[(1, 1)] * n[(0, 1)] - m[(0, 1)] * n[(1, 1)];
    let t4 = m[(0, 0)] * n[(1, 0)] - m[(1, 0)] * n[(0, 0)];
    let det0 = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let det1 = n[(0, 0)] * n[(1, 1)] - n[(0, 1)] * n[(1, 0)];
    t1 * t1 + t2 * t2 + c64(2.0, 0.0) * t3 * t4 - c64(2.0, 0.0) * det0 * det1
}

/// Admix white noise: (1−ε)ρ + ε·I/d.
pub fn white_noise(rho: &DensityMatrix, eps: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidParameter(format!("eps: {eps} outside [0, 1]")));
    }
    let d = rho.dim();
    let mut entries = rho.entries() * c64(1.0 - eps, 0.0);
    for i in 0..d {
        entries[(i, i)] += c64(eps / d as f64, 0.0);
    }
    Ok(DensityMatrix::from_valid_parts(rho.dims().to_vec(), entries))
}

/// Joint dephasing of the B and E qubits: (1−q)ρ + q (Z_B⊗Z_E) ρ (Z_B⊗Z_E),
/// identity on A. This is an exploratory model of noise that couples the two
/// degrees of freedom of the same photon; q ∈ \[0, 1/2\].
pub fn correlated_be_dephasing(rho: &DensityMatrix, q: f64) -> Result<DensityMatrix> {
    if rho.dims() != [2, 2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "correlated_be_dephasing expects three qubits, got dims {:?}",
            rho.dims()
        )));
    }
    if !(0.0..=0.5).contains(&q) {
        return Err(Error::InvalidParameter(format!("q: {q} outside [0, 1/2]")));
    }
    // Z_B⊗Z_E conjugation flips the sign of entries whose B⊕E parity differs
    // between row and column, so the mixture rescales them by (1−2q).
    let parity = |idx: usize| ((idx >> 1) & 1) ^ (idx & 1);
    let d = rho.dim();
    let mut entries = rho.entries().clone();
    for i in 0..d {
        for j in 0..d {
            if parity(i) != parity(j) {
                entries[(i, j)] *= c64(1.0 - 2.0 * q, 0.0);
            }
        }
    }
    Ok(DensityMatrix::from_valid_parts(rho.dims().to_vec(), entries))
}

/// Channel description as read from config files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "channel", rename_all = "lowercase")]
pub enum ChannelSpec {
    Ad { p: f64 },
    Pd { p: f64 },
    /// User-supplied operators, entries row-major as [re, im] pairs.
    Custom { k0: [[f64; 2]; 4], k1: [[f64; 2]; 4] },
}

impl ChannelSpec {
    pub fn kraus(&self) -> Result<KrausPair> {
        match self {
            ChannelSpec::Ad { p } => Ok(amplitude_damping(&ChannelParameter::new(*p)?)),
            ChannelSpec::Pd { p } => Ok(phase_damping(&ChannelParameter::new(*p)?)),
            ChannelSpec::Custom { k0, k1 } => {
                let to_mat = |m: &[[f64; 2]; 4]| {
                    Matrix2::new(
                        c64(m[0][0], m[0][1]),
                        c64(m[1][0], m[1][1]),
                        c64(m[2][0], m[2][1]),
                        c64(m[3][0], m[3][1]),
                    )
                };
                KrausPair::new(to_mat(k0), to_mat(k1))
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("channel spec: {e}")))
    }
}
