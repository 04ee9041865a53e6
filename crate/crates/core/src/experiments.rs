//! Parameter sweeps over the channel strength p with optional noise,
//! simulated tomography and quasi-pure analysis; emits one correlation
//! record per trajectory point as CSV or JSON.

use std::io::Write;

use serde::Serialize;

use crate::channels::{
    amplitude_damping, correlated_be_dephasing, dilate, phase_damping, white_noise,
    ChannelParameter, InitialState, KrausPair,
};
use crate::discord::{pure_genuine_discord, total_discord, DiscordOptions};
use crate::entanglement::{three_tangle_ckw, witness_ghz, witness_w, TangleSet};
use crate::error::{Error, Result};
use crate::state::{DensityMatrix, StateVector};
use crate::tomography::{
    monte_carlo_errors_multi, simulate_counts, Quantity, Reconstructor, Statistic,
};

/// Which channel a sweep drives.
#[derive(Debug, Clone)]
pub enum ChannelKind {
    Ad,
    Pd,
    /// A fixed user-supplied pair, applied unchanged at every grid point.
    Custom(KrausPair),
}

/// Optional imperfection applied to the dilated state before analysis.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoiseConfig {
    /// White-noise admixture ε ∈ \[0, 1\].
    pub white: f64,
    /// Correlated Z_B⊗Z_E dephasing strength q ∈ \[0, 1/2\].
    pub zz: f64,
}

impl NoiseConfig {
    pub fn is_none(&self) -> bool {
        self.white == 0.0 && self.zz == 0.0
    }
}

/// Simulated tomography stage of a sweep.
#[derive(Debug, Clone, Copy)]
pub struct TomoConfig {
    /// Expected coincidences per setting.
    pub n0: u64,
    /// Monte Carlo resamples for error bars (0 disables the error columns).
    pub mc: usize,
    pub seed: u64,
}

impl Default for TomoConfig {
    fn default() -> Self {
        Self { n0: 500, mc: 100, seed: 0 }
    }
}

/// Analysis route(s) to evaluate at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Analysis {
    Direct,
    QuasiPure,
    Both,
}

/// Route label attached to each emitted record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordRoute {
    Direct,
    QuasiPure,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub channel: ChannelKind,
    pub initial: InitialState,
    pub p_grid: Vec<f64>,
    pub noise: NoiseConfig,
    pub tomography: Option<TomoConfig>,
    pub analysis: Analysis,
    pub skip_discord: bool,
    pub discord: DiscordOptions,
}

impl SweepConfig {
    /// Uniform grid of `steps` intervals (steps+1 points) over [0, 1].
    pub fn uniform_grid(steps: usize) -> Vec<f64> {
        (0..=steps).map(|i| i as f64 / steps.max(1) as f64).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.p_grid.is_empty() {
            return Err(Error::Config("p_grid: empty".into()));
        }
        for (i, &p) in self.p_grid.iter().enumerate() {
            if !(0.0..=1.0).contains(&p) || !p.is_finite() {
                return Err(Error::Config(format!("p_grid[{i}]: {p} outside [0, 1]")));
            }
            if i > 0 && p < self.p_grid[i - 1] {
                return Err(Error::Config(format!("p_grid[{i}]: not sorted ascending")));
            }
        }
        if !(0.0..=1.0).contains(&self.noise.white) {
            return Err(Error::Config(format!(
                "noise.white: {} outside [0, 1]",
                self.noise.white
            )));
        }
        if !(0.0..=0.5).contains(&self.noise.zz) {
            return Err(Error::Config(format!("noise.zz: {} outside [0, 1/2]", self.noise.zz)));
        }
        if let Some(tomo) = &self.tomography {
            if tomo.n0 == 0 {
                return Err(Error::Config("tomography.n0: must be positive".into()));
            }
        }
        if self.discord.grid < 2 {
            return Err(Error::Config("discord.grid: need at least 2 points".into()));
        }
        Ok(())
    }
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            channel: ChannelKind::Pd,
            initial: InitialState::ghz_seed(),
            p_grid: Self::uniform_grid(20),
            noise: NoiseConfig::default(),
            tomography: None,
            analysis: Analysis::Direct,
            skip_discord: false,
            discord: DiscordOptions::default(),
        }
    }
}

/// One sweep point: every plotted quantity plus Monte Carlo errors when
/// tomography is enabled.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationRecord {
    pub p: f64,
    pub analysis: RecordRoute,
    pub c2_ab: f64,
    pub c2_ae: f64,
    pub c2_be: f64,
    pub tau: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2_ab_err: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2_ae_err: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2_be_err: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_err: Option<f64>,
    pub invariant_e0: f64,
    pub f_w: f64,
    pub f_ghz: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d3: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tqd: Option<f64>,
    pub purity: f64,
    pub mu_max: f64,
}

fn splitmix(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Measures {
    tangles: TangleSet,
    f_w: f64,
    f_ghz: f64,
    d3: Option<f64>,
    tqd: Option<f64>,
}

fn analyze_pure(psi: &StateVector, skip_discord: bool, opts: &DiscordOptions) -> Result<Measures> {
    let tangles = TangleSet::from_pure(psi)?;
    let rho = psi.density();
    let f_w = witness_w(&rho)?.fidelity;
    let f_ghz = witness_ghz(&rho)?.fidelity;
    let (d3, tqd) = if skip_discord {
        (None, None)
    } else {
        (
            Some(pure_genuine_discord(psi)?.value),
            Some(total_discord(&rho, opts)?),
        )
    };
    Ok(Measures { tangles, f_w, f_ghz, d3, tqd })
}

fn analyze_mixed(rho: &DensityMatrix, skip_discord: bool, opts: &DiscordOptions) -> Result<Measures> {
    let tangles = TangleSet::from_mixed(rho)?;
    let f_w = witness_w(rho)?.fidelity;
    let f_ghz = witness_ghz(rho)?.fidelity;
    let (d3, tqd) = if skip_discord {
        (None, None)
    } else {
        let report = crate::discord::genuine_discord(rho, opts)?;
        (Some(report.genuine), Some(report.total_discord))
    };
    Ok(Measures { tangles, f_w, f_ghz, d3, tqd })
}

fn kraus_at(channel: &ChannelKind, p: f64) -> Result<KrausPair> {
    Ok(match channel {
        ChannelKind::Ad => amplitude_damping(&ChannelParameter::new(p)?),
        ChannelKind::Pd => phase_damping(&ChannelParameter::new(p)?),
        ChannelKind::Custom(kraus) => kraus.clone(),
    })
}

/// Run the sweep: for each p, dilate, optionally degrade and reconstruct,
/// then compute the correlation ledger per requested analysis route. Records
/// are ordered by p, direct before quasi-pure when both run.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<CorrelationRecord>> {
    config.validate()?;
    let reconstructor = config.tomography.as_ref().map(|_| Reconstructor::new());
    let mut records = Vec::new();
    for (idx, &p) in config.p_grid.iter().enumerate() {
        let kraus = kraus_at(&config.channel, p)?;
        let psi = dilate(&config.initial, &kraus);
        let mut rho = psi.density();
        if config.noise.zz > 0.0 {
            rho = correlated_be_dephasing(&rho, config.noise.zz)?;
        }
        if config.noise.white > 0.0 {
            rho = white_noise(&rho, config.noise.white)?;
        }
        let pure_input = config.noise.is_none() && config.tomography.is_none();

        let mut seed_p = None;
        if let Some(tomo) = &config.tomography {
            let seed = splitmix(tomo.seed, idx as u64);
            seed_p = Some(seed);
            let counts = simulate_counts(&rho, tomo.n0, seed)?;
            rho = reconstructor.as_ref().expect("built with tomography").reconstruct(&counts)?;
        }
        let purity = rho.purity();
        let mu_max = rho.eigenvalues_descending()[0];
        // Error bundles are filled lazily so a single-route sweep only pays
        // for one Monte Carlo pass.
        let mut route_errors: [Option<TomoErrors>; 2] = [None, None];

        let routes: &[RecordRoute] = match config.analysis {
            Analysis::Direct => &[RecordRoute::Direct],
            Analysis::QuasiPure => &[RecordRoute::QuasiPure],
            Analysis::Both => &[RecordRoute::Direct, RecordRoute::QuasiPure],
        };
        for &route in routes {
            let measures = match route {
                RecordRoute::Direct => {
                    if pure_input {
                        analyze_pure(&psi, config.skip_discord, &config.discord)?
                    } else {
                        analyze_mixed(&rho, config.skip_discord, &config.discord)?
                    }
                }
                RecordRoute::QuasiPure => {
                    // The dominant eigenvector of a pure state is the state
                    // itself; bypassing the eigensolver keeps the two routes
                    // bit-identical on noiseless sweeps.
                    if pure_input {
                        analyze_pure(&psi, config.skip_discord, &config.discord)?
                    } else {
                        let dominant = rho.dominant_eigenvector().state;
                        analyze_pure(&dominant, config.skip_discord, &config.discord)?
                    }
                }
            };
            let slot = match route {
                RecordRoute::Direct => 0,
                RecordRoute::QuasiPure => 1,
            };
            if let (Some(tomo), Some(seed)) = (&config.tomography, seed_p) {
                if tomo.mc >= 2 && route_errors[slot].is_none() {
                    route_errors[slot] =
                        Some(tomo_errors(&rho, tomo.n0, tomo.mc, seed, slot == 1)?);
                }
            }
            let err = route_errors[slot].as_ref();
            records.push(CorrelationRecord {
                p,
                analysis: route,
                c2_ab: measures.tangles.c2_ab,
                c2_ae: measures.tangles.c2_ae,
                c2_be: measures.tangles.c2_be,
                tau: measures.tangles.tau,
                c2_ab_err: err.map(|e| e.c2_ab),
                c2_ae_err: err.map(|e| e.c2_ae),
                c2_be_err: err.map(|e| e.c2_be),
                tau_err: err.map(|e| e.tau),
                invariant_e0: measures.tangles.invariant,
                f_w: measures.f_w,
                f_ghz: measures.f_ghz,
                d3: measures.d3,
                tqd: measures.tqd,
                purity,
                mu_max,
            });
        }
    }
    Ok(records)
}

struct TomoErrors {
    c2_ab: f64,
    c2_ae: f64,
    c2_be: f64,
    tau: f64,
}

fn tomo_errors(
    rho_hat: &DensityMatrix,
    n0: u64,
    mc: usize,
    seed: u64,
    quasi_pure: bool,
) -> Result<TomoErrors> {
    let make = |quantity| Statistic { quantity, quasi_pure, discord: DiscordOptions::default() };
    let stats =
        [make(Quantity::C2Ab), make(Quantity::C2Ae), make(Quantity::C2Be), make(Quantity::Tau)];
    let estimates = monte_carlo_errors_multi(rho_hat, n0, mc, seed, &stats)?;
    Ok(TomoErrors {
        c2_ab: estimates[0].std,
        c2_ae: estimates[1].std,
        c2_be: estimates[2].std,
        tau: estimates[3].std,
    })
}

fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt12).unwrap_or_default()
}

/// CSV header shared by every sweep output.
pub const CSV_HEADER: &str =
    "p,c2_ab,c2_ae,c2_be,tau,tau_err,invariant_e0,f_w,f_ghz,d3,tqd,purity,mu_max";

/// Emit records as CSV with 12 significant digits and a stable column order.
pub fn emit_csv<W: Write>(records: &[CorrelationRecord], out: &mut W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt12(r.p),
            fmt12(r.c2_ab),
            fmt12(r.c2_ae),
            fmt12(r.c2_be),
            fmt12(r.tau),
            fmt_opt(r.tau_err),
            fmt12(r.invariant_e0),
            fmt12(r.f_w),
            fmt12(r.f_ghz),
            fmt_opt(r.d3),
            fmt_opt(r.tqd),
            fmt12(r.purity),
            fmt12(r.mu_max),
        )?;
    }
    Ok(())
}

/// Emit records as pretty JSON (full field set, including per-route labels
/// and every error column).
pub fn emit_json<W: Write>(records: &[CorrelationRecord], out: &mut W) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, records)
        .map_err(|e| Error::Numerical(format!("json: {e}")))?;
    writeln!(out)?;
    Ok(())
}

/// A gnuplot script plotting the tangle columns of an emitted CSV.
pub fn gnuplot_script(csv_path: &str) -> String {
    format!(
        "set datafile separator ','\n\
         set key autotitle columnhead\n\
         set xlabel 'p'\n\
         set ylabel 'tangles'\n\
         set yrange [0:1.05]\n\
         plot '{csv_path}' using 1:2 with linespoints title 'C^2_AB', \\\n\
         \t'' using 1:3 with linespoints title 'C^2_AE', \\\n\
         \t'' using 1:4 with linespoints title 'C^2_BE', \\\n\
         \t'' using 1:5 with linespoints title 'tau', \\\n\
         \t'' using 1:7 with lines title 'invariant'\n"
    )
}

/// Correlated-noise study at fixed p on the damping trajectory: how the
/// mixed-state 3-tangle estimate and its quasi-pure counterpart respond to
/// the Z⊗Z coupling strength q.
#[derive(Debug, Clone)]
pub struct NoiseStudyConfig {
    pub initial: InitialState,
    pub p: f64,
    pub q_grid: Vec<f64>,
}

impl Default for NoiseStudyConfig {
    fn default() -> Self {
        Self {
            initial: InitialState::w_seed(),
            p: 0.5,
            q_grid: (0..=10).map(|i| i as f64 * 0.05).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NoiseStudyRecord {
    pub p: f64,
    pub q: f64,
    /// Three-tangle estimate evaluated directly on the mixed state.
    pub tau_mixed: f64,
    /// Three-tangle of the dominant eigenvector.
    pub tau_quasi_pure: f64,
    pub purity: f64,
    pub mu_max: f64,
}

pub fn noise_study(config: &NoiseStudyConfig) -> Result<Vec<NoiseStudyRecord>> {
    if !(0.0..=1.0).contains(&config.p) {
        return Err(Error::Config(format!("p: {} outside [0, 1]", config.p)));
    }
    let kraus = amplitude_damping(&ChannelParameter::new(config.p)?);
    let psi = dilate(&config.initial, &kraus);
    let mut records = Vec::with_capacity(config.q_grid.len());
    for &q in &config.q_grid {
        if !(0.0..=0.5).contains(&q) {
            return Err(Error::Config(format!("q_grid: {q} outside [0, 1/2]")));
        }
        let rho = correlated_be_dephasing(&psi.density(), q)?;
        let tau_mixed = crate::entanglement::three_tangle_mixed_estimate(&rho)?;
        let dom = rho.dominant_eigenvector();
        let tau_quasi_pure = three_tangle_ckw(&dom.state)?;
        records.push(NoiseStudyRecord {
            p: config.p,
            q,
            tau_mixed,
            tau_quasi_pure,
            purity: rho.purity(),
            mu_max: dom.eigenvalue,
        });
    }
    Ok(records)
}

/// Emit noise-study records as CSV.
pub fn emit_noise_csv<W: Write>(records: &[NoiseStudyRecord], out: &mut W) -> Result<()> {
    writeln!(out, "p,q,tau_mixed,tau_quasi_pure,purity,mu_max")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt12(r.p),
            fmt12(r.q),
            fmt12(r.tau_mixed),
            fmt12(r.tau_quasi_pure),
            fmt12(r.purity),
            fmt12(r.mu_max),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_initial_state;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "expected {b}, got {a} (tol {tol:e})");
    }

    fn tangle_only(channel: ChannelKind, initial: InitialState, grid: Vec<f64>) -> SweepConfig {
        SweepConfig {
            channel,
            initial,
            p_grid: grid,
            skip_discord: true,
            ..Default::default()
        }
    }

    #[test]
    fn dephasing_sweep_matches_closed_forms() {
        let config = tangle_only(
            ChannelKind::Pd,
            InitialState::ghz_seed(),
            SweepConfig::uniform_grid(20),
        );
        let records = run_sweep(&config).unwrap();
        assert_eq!(records.len(), 21);
        for r in &records {
            assert_close(r.c2_ab, 1.0 - r.p, 1e-10);
            assert_close(r.c2_ae, 0.0, 1e-10);
            assert_close(r.c2_be, 0.0, 1e-10);
            assert_close(r.tau, r.p, 1e-10);
            assert_close(r.invariant_e0, 1.0, 1e-10);
            assert_close(r.f_ghz, (1.0 + r.p.sqrt()).powi(2) / 4.0, 1e-10);
            assert_close(r.purity, 1.0, 1e-12);
            assert_close(r.mu_max, 1.0, 1e-9);
        }
    }

    #[test]
    fn damping_sweep_matches_closed_forms() {
        let config = tangle_only(
            ChannelKind::Ad,
            InitialState::w_seed(),
            SweepConfig::uniform_grid(20),
        );
        let records = run_sweep(&config).unwrap();
        for r in &records {
            assert_close(r.c2_ab, 1.0 - r.p, 1e-10);
            assert_close(r.c2_ae, r.p, 1e-10);
            assert_close(r.c2_be, r.p * (1.0 - r.p), 1e-10);
            assert_close(r.tau, 0.0, 1e-10);
        }
    }

    #[test]
    fn zero_interaction_point_keeps_all_entanglement_in_ab() {
        let mut rng = ChaCha12Rng::seed_from_u64(61);
        for _ in 0..5 {
            let initial = random_initial_state(&mut rng);
            let e0 = crate::entanglement::initial_entanglement(&initial);
            for channel in [ChannelKind::Ad, ChannelKind::Pd] {
                let config = tangle_only(channel, initial, vec![0.0]);
                let records = run_sweep(&config).unwrap();
                assert_close(records[0].c2_ab, e0, 1e-10);
                assert_close(records[0].tau, 0.0, 1e-10);
                assert_close(records[0].c2_ae, 0.0, 1e-10);
                assert_close(records[0].c2_be, 0.0, 1e-10);
            }
        }
    }

    #[test]
    fn invariant_column_constant_for_dephasing_of_random_initial_states() {
        let mut rng = ChaCha12Rng::seed_from_u64(62);
        for _ in 0..10 {
            let initial = random_initial_state(&mut rng);
            let e0 = crate::entanglement::initial_entanglement(&initial);
            let config =
                tangle_only(ChannelKind::Pd, initial, SweepConfig::uniform_grid(10));
            for r in run_sweep(&config).unwrap() {
                assert_close(r.invariant_e0, e0, 1e-9);
            }
        }
    }

    #[test]
    fn sweep_csv_is_byte_identical_across_runs() {
        let config = SweepConfig {
            channel: ChannelKind::Ad,
            initial: InitialState::w_seed(),
            p_grid: SweepConfig::uniform_grid(4),
            tomography: Some(TomoConfig { n0: 400, mc: 8, seed: 11 }),
            skip_discord: true,
            analysis: Analysis::Both,
            ..Default::default()
        };
        let mut first = Vec::new();
        emit_csv(&run_sweep(&config).unwrap(), &mut first).unwrap();
        let mut second = Vec::new();
        emit_csv(&run_sweep(&config).unwrap(), &mut second).unwrap();
        assert_eq!(first, second);
        let text = String::from_utf8(first).unwrap();
        assert!(text.starts_with(CSV_HEADER));
        // Both routes per p: 5 points × 2 routes + header.
        assert_eq!(text.lines().count(), 11);
        // Error columns populated when tomography is on.
        let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(row.len(), 13);
        assert!(!row[5].is_empty(), "tau_err column empty");
    }

    #[test]
    fn quasi_pure_route_equals_direct_route_on_noiseless_sweeps() {
        let config = SweepConfig {
            channel: ChannelKind::Ad,
            initial: InitialState::w_seed(),
            p_grid: vec![0.25, 0.75],
            analysis: Analysis::Both,
            discord: DiscordOptions { grid: 8, ..Default::default() },
            ..Default::default()
        };
        let records = run_sweep(&config).unwrap();
        for pair in records.chunks(2) {
            let (direct, quasi) = (&pair[0], &pair[1]);
            assert_eq!(direct.analysis, RecordRoute::Direct);
            assert_eq!(quasi.analysis, RecordRoute::QuasiPure);
            assert_close(direct.c2_ab, quasi.c2_ab, 1e-9);
            assert_close(direct.c2_ae, quasi.c2_ae, 1e-9);
            assert_close(direct.c2_be, quasi.c2_be, 1e-9);
            assert_close(direct.tau, quasi.tau, 1e-9);
            assert_close(direct.f_w, quasi.f_w, 1e-9);
            assert_close(direct.f_ghz, quasi.f_ghz, 1e-9);
            assert_close(direct.d3.unwrap(), quasi.d3.unwrap(), 1e-9);
            assert_close(direct.tqd.unwrap(), quasi.tqd.unwrap(), 1e-9);
        }
    }

    #[test]
    fn config_validation_reports_field_names() {
        let config = SweepConfig { p_grid: vec![0.5, 0.1], ..Default::default() };
        let err = run_sweep(&config).unwrap_err().to_string();
        assert!(err.contains("p_grid"), "message was {err}");

        let config = SweepConfig {
            noise: NoiseConfig { zz: 0.7, ..Default::default() },
            ..Default::default()
        };
        let err = run_sweep(&config).unwrap_err().to_string();
        assert!(err.contains("noise.zz"), "message was {err}");
    }

    #[test]
    fn emitted_floats_carry_twelve_significant_digits() {
        assert_eq!(fmt12(0.5), "5.00000000000e-1");
        assert_eq!(fmt12(1.0), "1.00000000000e0");
        assert_eq!(fmt_opt(None), "");
    }

    #[test]
    fn json_emission_round_trips_structurally() {
        let config = tangle_only(
            ChannelKind::Pd,
            InitialState::ghz_seed(),
            vec![0.0, 0.5, 1.0],
        );
        let records = run_sweep(&config).unwrap();
        let mut buf = Vec::new();
        emit_json(&records, &mut buf).unwrap();
        let parsed: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(parsed.as_array().unwrap().len(), 3);
        assert_eq!(parsed[1]["p"], 0.5);
        assert_eq!(parsed[1]["analysis"], "direct");
        assert!(parsed[1].get("tau_err").is_none());
    }

    #[test]
    fn correlated_noise_induces_a_nonzero_tangle_estimate() {
        let study = NoiseStudyConfig {
            q_grid: vec![0.0, 0.1],
            ..Default::default()
        };
        let records = noise_study(&study).unwrap();
        assert!(records[0].tau_mixed < 1e-10, "noiseless estimate {}", records[0].tau_mixed);
        assert!(records[1].tau_mixed > 1e-3, "noisy estimate {}", records[1].tau_mixed);
        assert!(records[1].purity < 1.0);
        let mut buf = Vec::new();
        emit_noise_csv(&records, &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("p,q,"));
    }
}
