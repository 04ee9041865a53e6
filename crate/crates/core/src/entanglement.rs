//! Entanglement quantifiers along the dilated trajectory: Wootters
//! concurrence, one-vs-rest tangles, the residual 3-tangle through the
//! monogamy relation, its factorized channel form, and the GHZ/W fidelity
//! witnesses.

use nalgebra::DMatrix;

use crate::channels::{f_function, InitialState, KrausPair};
use crate::error::{Error, Result};
use crate::state::{c64, DensityMatrix, StateVector};

/// Squared concurrences of the three pairs, the residual 3-tangle and the
/// conserved combination C²_AB + τ.
#[derive(Debug, Clone, Copy)]
pub struct TangleSet {
    pub c2_ab: f64,
    pub c2_ae: f64,
    pub c2_be: f64,
    pub tau: f64,
    /// c2_ab + tau; constant along trajectories that only redistribute the
    /// initial AB entanglement into GHZ-type entanglement.
    pub invariant: f64,
    /// The 3-tangle before clipping negatives caused by roundoff.
    pub tau_raw: f64,
}

impl TangleSet {
    /// Tangles of a pure three-qubit state (exact route).
    pub fn from_pure(psi: &StateVector) -> Result<Self> {
        let c2_ab = concurrence(&psi.reduced(&[0, 1])?)?.powi(2);
        let c2_ae = concurrence(&psi.reduced(&[0, 2])?)?.powi(2);
        let c2_be = concurrence(&psi.reduced(&[1, 2])?)?.powi(2);
        let tau_raw = tangle_one_vs_rest(psi, 0)? - c2_ab - c2_ae;
        let tau = tau_raw.max(0.0);
        Ok(Self { c2_ab, c2_ae, c2_be, tau, invariant: c2_ab + tau, tau_raw })
    }

    /// Tangles of a mixed three-qubit state, with the quasi-pure 3-tangle
    /// estimator in place of the pure-state residual.
    pub fn from_mixed(rho: &DensityMatrix) -> Result<Self> {
        let c2_ab = concurrence(&rho.partial_trace(&[0, 1])?)?.powi(2);
        let c2_ae = concurrence(&rho.partial_trace(&[0, 2])?)?.powi(2);
        let c2_be = concurrence(&rho.partial_trace(&[1, 2])?)?.powi(2);
        let rho_a = rho.partial_trace(&[0])?;
        let det_a = rho_a.entries()[(0, 0)].re * rho_a.entries()[(1, 1)].re
            - rho_a.entries()[(0, 1)].norm_sqr();
        let tau_raw = 4.0 * det_a - c2_ab - c2_ae;
        let tau = tau_raw.max(0.0);
        Ok(Self { c2_ab, c2_ae, c2_be, tau, invariant: c2_ab + tau, tau_raw })
    }
}

/// Wootters concurrence of a two-qubit state: max{0, √λ₁−√λ₂−√λ₃−√λ₄} with
/// λᵢ the decreasing eigenvalues of ρ(σ_y⊗σ_y)ρ*(σ_y⊗σ_y), conjugation in the
/// computational basis.
///
/// The spectrum is obtained from the Hermitian product √ρ ρ̃ √ρ, which shares
/// the eigenvalues of ρρ̃ but keeps the computation inside Hermitian solvers.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dims() != [2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "concurrence expects two qubits, got dims {:?}",
            rho.dims()
        )));
    }
    let m = rho.entries();
    // (σ_y⊗σ_y) ρ* (σ_y⊗σ_y): entry (i,j) = s_i s_j conj(ρ[3-i, 3-j]) with
    // s = (-1, 1, 1, -1).
    let sign = |i: usize| if i == 0 || i == 3 { -1.0 } else { 1.0 };
    let rho_tilde = DMatrix::from_fn(4, 4, |i, j| {
        m[(3 - i, 3 - j)].conj() * c64(sign(i) * sign(j), 0.0)
    });

    let eig = m.clone().symmetric_eigen();
    let mut sqrt_rho = DMatrix::from_element(4, 4, c64(0.0, 0.0));
    for k in 0..4 {
        let root = eig.eigenvalues[k].max(0.0).sqrt();
        let v = eig.eigenvectors.column(k);
        for i in 0..4 {
            for j in 0..4 {
                sqrt_rho[(i, j)] += v[i] * v[j].conj() * c64(root, 0.0);
            }
        }
    }
    let product = &sqrt_rho * rho_tilde * &sqrt_rho;
    let herm = (product.adjoint() + &product) * c64(0.5, 0.0);
    let mut lambdas: Vec<f64> = herm.symmetric_eigen().eigenvalues.iter().copied().collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    if lambdas[3] < -1e-8 {
        return Err(Error::InvalidState(format!(
            "concurrence spectrum has eigenvalue {:e} below -1e-8",
            lambdas[3]
        )));
    }
    // Rank-deficient states carry O(ε) eigenvalue noise whose square root
    // would pollute C at the 1e-8 level; zero everything below a relative
    // floor before taking roots. The absolute term covers separable states
    // whose whole spectrum sits at roundoff scale.
    let floor = (lambdas[0].max(0.0) * 1e-12).max(1e-13);
    let roots: Vec<f64> = lambdas.iter().map(|l| if *l <= floor { 0.0 } else { l.sqrt() }).collect();
    Ok((roots[0] - roots[1] - roots[2] - roots[3]).max(0.0))
}

/// One-vs-rest tangle C²_{i(jk)} = 2(1 − Tr ρᵢ²) of a pure three-qubit state.
pub fn tangle_one_vs_rest(psi: &StateVector, subsystem: usize) -> Result<f64> {
    if psi.dims() != [2, 2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "tangle_one_vs_rest expects three qubits, got dims {:?}",
            psi.dims()
        )));
    }
    let rho_i = psi.reduced(&[subsystem])?;
    Ok(2.0 * (1.0 - rho_i.purity()))
}

/// Residual 3-tangle of a pure three-qubit state from the monogamy relation,
/// pivoting on the given subsystem: C²_{i(jk)} − C²_ij − C²_ik.
pub fn three_tangle_ckw_pivot(psi: &StateVector, pivot: usize) -> Result<f64> {
    if pivot > 2 {
        return Err(Error::InvalidSubsystems(format!("pivot {pivot} out of range")));
    }
    let others: Vec<usize> = (0..3).filter(|&s| s != pivot).collect();
    let mut tau = tangle_one_vs_rest(psi, pivot)?;
    for &other in &others {
        let mut pair = [pivot, other];
        pair.sort_unstable();
        tau -= concurrence(&psi.reduced(&pair)?)?.powi(2);
    }
    debug_assert!(tau > -1e-8, "3-tangle {tau:e} below the roundoff window");
    Ok(tau.max(0.0))
}

/// Residual 3-tangle with the conventional A pivot. The value is invariant
/// under the pivot choice for pure states.
pub fn three_tangle_ckw(psi: &StateVector) -> Result<f64> {
    three_tangle_ckw_pivot(psi, 0)
}

/// Channel-factorized 3-tangle E₀²·|f(K̂₀, K̂₁)| of the dilated trajectory.
pub fn three_tangle_factorized(initial: &InitialState, kraus: &KrausPair) -> f64 {
    initial_entanglement(initial) * f_function(kraus).norm()
}

/// Estimate the 3-tangle of a mixed three-qubit state by applying the
/// pure-state identity C²_{A(BE)} = 4 det ρ_A inside the monogamy relation.
/// Exact only for pure ρ; for quasi-pure states it is the reconstruction-side
/// estimator.
pub fn three_tangle_mixed_estimate(rho: &DensityMatrix) -> Result<f64> {
    Ok(TangleSet::from_mixed(rho)?.tau)
}

/// Initial AB entanglement E₀² = C²_AB(0) = 4|αδ − γβ|².
pub fn initial_entanglement(initial: &InitialState) -> f64 {
    4.0 * (initial.alpha() * initial.delta() - initial.gamma() * initial.beta()).norm_sqr()
}

/// W-state fidelity witness: genuine W-type entanglement is certified when
/// F_W ≥ 2/3.
#[derive(Debug, Clone, Copy)]
pub struct WWitness {
    pub fidelity: f64,
    pub genuine: bool,
}

pub fn witness_w(rho: &DensityMatrix) -> Result<WWitness> {
    let fidelity = rho.fidelity_pure(&StateVector::w3())?;
    Ok(WWitness { fidelity, genuine: fidelity >= 2.0 / 3.0 })
}

/// GHZ-state fidelity witness: non-biseparable above 1/2, GHZ-type genuine
/// entanglement certified above 3/4.
#[derive(Debug, Clone, Copy)]
pub struct GhzWitness {
    pub fidelity: f64,
    pub nonbiseparable: bool,
    pub genuine_ghz: bool,
}

pub fn witness_ghz(rho: &DensityMatrix) -> Result<GhzWitness> {
    let fidelity = rho.fidelity_pure(&StateVector::ghz3())?;
    Ok(GhzWitness {
        fidelity,
        nonbiseparable: fidelity > 0.5,
        genuine_ghz: fidelity > 0.75,
    })
}
