//! Detection-level experiments: which detector fires, and what a
//! predetermined-outcome model would predict instead.
//!
//! Detectors are classical sinks. A trial is the irrevocable record of which
//! detectors fired; no API builds a detector in superposition.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{born_probability, projector_of, Matrix, QuantumState, Ray};

/// Relative tolerance for deciding that two events sit on each other's light
/// cone.
pub const LIGHTLIKE_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpacetimeEvent {
    /// seconds
    pub t: f64,
    /// meters
    pub x: f64,
}

impl SpacetimeEvent {
    pub fn new(t: f64, x: f64) -> Self {
        SpacetimeEvent { t, x }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Separation {
    Spacelike,
    Timelike,
    Lightlike,
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Separation::Spacelike => "SPACELIKE",
            Separation::Timelike => "TIMELIKE",
            Separation::Lightlike => "LIGHTLIKE",
        })
    }
}

pub fn separation_class(e1: SpacetimeEvent, e2: SpacetimeEvent, c: f64) -> Result<Separation> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::Config(format!(
            "signal speed must be positive, got {c}"
        )));
    }
    if ![e1.t, e1.x, e2.t, e2.x].iter().all(|v| v.is_finite()) {
        return Err(Error::Config("event coordinates must be finite".into()));
    }
    let space = (e1.x - e2.x).abs();
    let time = c * (e1.t - e2.t).abs();
    Ok(
        if (space - time).abs() <= LIGHTLIKE_REL_TOL * space.max(time) {
            Separation::Lightlike
        } else if space > time {
            Separation::Spacelike
        } else {
            Separation::Timelike
        },
    )
}

/// Which detectors fired in one trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetectionTrial {
    pub fired: Vec<bool>,
}

impl DetectionTrial {
    fn single(detectors: usize, which: usize) -> Self {
        let mut fired = vec![false; detectors];
        fired[which] = true;
        DetectionTrial { fired }
    }

    pub fn fired_count(&self) -> usize {
        self.fired.iter().filter(|&&f| f).count()
    }
}

/// Machine-readable summary shared by every experiment in this module.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub experiment: String,
    pub params: Map<String, Value>,
    pub trials: u64,
    pub rates: Vec<f64>,
    /// Trials in which more than one detector fired.
    pub coincidences: u64,
    /// Trials in which no detector fired.
    pub no_detection: u64,
    pub theory_values: Vec<f64>,
}

fn summarize(
    experiment: &str,
    params: Value,
    records: &[DetectionTrial],
    detectors: usize,
    theory_values: Vec<f64>,
) -> ExperimentSummary {
    let mut counts = vec![0u64; detectors];
    let mut coincidences = 0;
    let mut no_detection = 0;
    for r in records {
        match r.fired_count() {
            0 => no_detection += 1,
            1 => {}
            _ => coincidences += 1,
        }
        for (c, &f) in counts.iter_mut().zip(&r.fired) {
            *c += f as u64;
        }
    }
    let n = records.len() as u64;
    let Value::Object(params) = params else {
        unreachable!("params are built with json!({{..}})")
    };
    ExperimentSummary {
        experiment: experiment.into(),
        params,
        trials: n,
        rates: counts
            .iter()
            .map(|&c| if n == 0 { 0.0 } else { c as f64 / n as f64 })
            .collect(),
        coincidences,
        no_detection,
        theory_values,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExclusivityRun {
    pub trials: Vec<DetectionTrial>,
    pub summary: ExperimentSummary,
}

/// A single quantum sent to `n_detectors` mutually exclusive outcomes (a
/// beamsplitter for 2, a qutrit Stern-Gerlach for 3).
pub fn exclusivity_run(
    n_detectors: usize,
    probs: &[f64],
    trials: usize,
    seed: u64,
) -> Result<ExclusivityRun> {
    if !(2..=3).contains(&n_detectors) {
        return Err(Error::Config(format!(
            "exclusivity runs use 2 or 3 detectors, got {n_detectors}"
        )));
    }
    if probs.len() != n_detectors {
        return Err(Error::Config(format!(
            "{} probabilities for {n_detectors} detectors",
            probs.len()
        )));
    }
    if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::Config("probabilities must lie in [0, 1]".into()));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::Config(format!(
            "probabilities sum to {total}, not 1"
        )));
    }
    let dist = WeightedIndex::new(probs).map_err(|e| Error::Config(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let records: Vec<DetectionTrial> = (0..trials)
        .map(|_| DetectionTrial::single(n_detectors, dist.sample(&mut rng)))
        .collect();
    let experiment = if n_detectors == 2 {
        "beamsplitter"
    } else {
        "qutrit"
    };
    let summary = summarize(
        experiment,
        json!({ "detectors": n_detectors, "probs": probs, "seed": seed }),
        &records,
        n_detectors,
        probs.to_vec(),
    );
    Ok(ExclusivityRun {
        trials: records,
        summary,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MzModel {
    Quantum,
    /// The photon's path is fixed at the first beamsplitter and decides
    /// the detector.
    PredeterminedPath,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MzConfig {
    /// Phase shift in one arm, radians.
    pub phase: f64,
    pub model: MzModel,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MzReport {
    pub p_d0: f64,
    pub p_d0_theory: f64,
    pub summary: ExperimentSummary,
}

fn beamsplitter() -> Matrix {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let ih = Complex64::new(0.0, FRAC_1_SQRT_2);
    Matrix::from_rows(&[vec![h, ih], vec![ih, h]]).expect("2x2")
}

/// Output-port probabilities `[D0, D1]` of a balanced Mach-Zehnder
/// interferometer with `phase` in the second arm. D0 watches the port that
/// is bright at zero phase, so `P(D0) = cos^2(phase / 2)`.
pub fn mz_port_probabilities(phase: f64) -> [f64; 2] {
    let shift = Matrix::from_rows(&[
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        vec![Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, phase)],
    ])
    .expect("2x2");
    let bs = beamsplitter();
    let circuit = &(&bs * &shift) * &bs;
    let out = circuit
        .apply(QuantumState::basis(2, 0).expect("qubit").components())
        .expect("2-vector");
    let out = QuantumState::new(out).expect("unitary circuit preserves the norm");
    let port = |k| {
        born_probability(
            &out,
            &projector_of(&Ray::basis(2, k).expect("qubit")).expect("unit"),
        )
        .expect("qubit")
    };
    [port(1), port(0)]
}

pub fn mz_run(cfg: &MzConfig) -> Result<MzReport> {
    if cfg.trials == 0 {
        return Err(Error::Config("at least one trial is required".into()));
    }
    if !cfg.phase.is_finite() {
        return Err(Error::Config("phase must be finite".into()));
    }
    let p_d0_theory = match cfg.model {
        MzModel::Quantum => mz_port_probabilities(cfg.phase)[0],
        MzModel::PredeterminedPath => 0.5,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let records: Vec<DetectionTrial> = (0..cfg.trials)
        .map(|_| {
            let d0 = match cfg.model {
                MzModel::Quantum => rng.random::<f64>() < p_d0_theory,
                // Path 0 always ends at D0, path 1 at D1; phase plays no role.
                MzModel::PredeterminedPath => rng.random::<bool>(),
            };
            DetectionTrial::single(2, if d0 { 0 } else { 1 })
        })
        .collect();
    let summary = summarize(
        "mach_zehnder",
        json!({ "phase": cfg.phase, "model": cfg.model, "seed": cfg.seed }),
        &records,
        2,
        vec![p_d0_theory, 1.0 - p_d0_theory],
    );
    Ok(MzReport {
        p_d0: summary.rates[0],
        p_d0_theory,
        summary,
    })
}

/// Measurement angles (radians, in the x-z plane) for the two wings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChshSetting {
    pub alice_angles: [f64; 2],
    pub bob_angles: [f64; 2],
}

impl ChshSetting {
    /// Angles attaining `2√2` for `|E11 + E12 + E21 - E22|`.
    pub fn optimal() -> Self {
        ChshSetting {
            alice_angles: [0.0, PI / 2.0],
            bob_angles: [PI / 4.0, -PI / 4.0],
        }
    }
}

/// Spin observable `cos θ σz + sin θ σx`, built as `P+ - P-` from its two
/// eigenrays.
fn spin_observable(theta: f64) -> Matrix {
    let (s, c) = (theta / 2.0).sin_cos();
    let up = projector_of(&Ray::from_real(&[c, s]).expect("unit")).expect("unit");
    let down = projector_of(&Ray::from_real(&[-s, c]).expect("unit")).expect("unit");
    up.matrix() - down.matrix()
}

fn singlet() -> QuantumState {
    let zero = QuantumState::basis(2, 0).expect("qubit");
    let one = QuantumState::basis(2, 1).expect("qubit");
    QuantumState::superpose(&[
        (Complex64::new(1.0, 0.0), &zero.kron(&one)),
        (Complex64::new(-1.0, 0.0), &one.kron(&zero)),
    ])
    .expect("nonzero")
}

/// Singlet correlator `<ψ| A(a) ⊗ B(b) |ψ>`.
pub fn singlet_correlator(a: f64, b: f64) -> f64 {
    let op = spin_observable(a).kron(&spin_observable(b));
    op.expectation(&singlet()).expect("4-dimensional").re
}

/// `|E(a1,b1) + E(a1,b2) + E(a2,b1) - E(a2,b2)|` for the singlet.
pub fn chsh_quantum_value(s: &ChshSetting) -> f64 {
    let [a1, a2] = s.alice_angles;
    let [b1, b2] = s.bob_angles;
    (singlet_correlator(a1, b1) + singlet_correlator(a1, b2) + singlet_correlator(a2, b1)
        - singlet_correlator(a2, b2))
    .abs()
}

/// A deterministic local strategy: `±1` answers for each setting on each
/// side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalStrategy {
    pub alice: [i8; 2],
    pub bob: [i8; 2],
}

impl LocalStrategy {
    pub fn chsh_value(&self) -> i64 {
        let [a1, a2] = self.alice.map(i64::from);
        let [b1, b2] = self.bob.map(i64::from);
        a1 * b1 + a1 * b2 + a2 * b1 - a2 * b2
    }
}

/// All sixteen deterministic local strategies.
pub fn local_strategies() -> Vec<LocalStrategy> {
    let sign = |bit: u8| if bit == 0 { 1 } else { -1 };
    (0u8..16)
        .map(|m| LocalStrategy {
            alice: [sign(m & 1), sign((m >> 1) & 1)],
            bob: [sign((m >> 2) & 1), sign((m >> 3) & 1)],
        })
        .collect()
}

pub fn chsh_lhv_bound() -> i64 {
    local_strategies()
        .iter()
        .map(|s| s.chsh_value().abs())
        .max()
        .expect("sixteen strategies")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separation_examples() {
        let o = SpacetimeEvent::new(0.0, 0.0);
        assert_eq!(
            separation_class(o, SpacetimeEvent::new(0.0, 1.0), 3e8).unwrap(),
            Separation::Spacelike
        );
        assert_eq!(
            separation_class(o, SpacetimeEvent::new(1.0, 0.0), 3e8).unwrap(),
            Separation::Timelike
        );
        assert_eq!(
            separation_class(SpacetimeEvent::new(1.0, 3e8), o, 3e8).unwrap(),
            Separation::Lightlike
        );
        assert!(separation_class(o, o, 0.0).is_err());
        assert!(separation_class(o, SpacetimeEvent::new(f64::NAN, 0.0), 1.0).is_err());
    }

    #[test]
    fn certain_detector() {
        let run = exclusivity_run(3, &[1.0, 0.0, 0.0], 1000, 4).unwrap();
        assert!(run
            .trials
            .iter()
            .all(|t| t.fired == vec![true, false, false]));
        assert_eq!(run.summary.rates, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn exclusivity_config_errors() {
        assert!(exclusivity_run(4, &[0.25; 4], 10, 0).is_err());
        assert!(exclusivity_run(2, &[0.5, 0.4], 10, 0).is_err());
        assert!(exclusivity_run(2, &[1.5, -0.5], 10, 0).is_err());
        assert!(exclusivity_run(3, &[0.5, 0.5], 10, 0).is_err());
    }

    #[test]
    fn qutrit_rates_are_uniform() {
        let third = 1.0 / 3.0;
        let run = exclusivity_run(3, &[third, third, third], 90_000, 17).unwrap();
        for r in &run.summary.rates {
            assert!((r - third).abs() < 0.01);
        }
        assert_eq!(run.summary.coincidences, 0);
        assert_eq!(run.summary.no_detection, 0);
    }

    #[test]
    fn mz_extremes() {
        let cfg = |phase| MzConfig {
            phase,
            model: MzModel::Quantum,
            trials: 1000,
            seed: 1,
        };
        let r = mz_run(&cfg(0.0)).unwrap();
        assert!((r.p_d0_theory - 1.0).abs() < 1e-12);
        assert_eq!(r.p_d0, 1.0);
        let r = mz_run(&cfg(PI)).unwrap();
        assert!(r.p_d0_theory.abs() < 1e-12);
        assert_eq!(r.p_d0, 0.0);
        assert!(mz_run(&MzConfig {
            trials: 0,
            ..cfg(0.0)
        })
        .is_err());
    }

    #[test]
    fn mz_ports_match_closed_form() {
        for k in 0..50 {
            let phase = k as f64 * 0.37 - 3.0;
            let [d0, d1] = mz_port_probabilities(phase);
            assert!((d0 - (phase / 2.0).cos().powi(2)).abs() < 1e-12);
            assert!((d0 + d1 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn predetermined_path_ignores_phase() {
        let r = mz_run(&MzConfig {
            phase: PI / 3.0,
            model: MzModel::PredeterminedPath,
            trials: 100_000,
            seed: 2,
        })
        .unwrap();
        assert_eq!(r.p_d0_theory, 0.5);
        assert!((r.p_d0 - 0.5).abs() < 0.005);
    }

    #[test]
    fn chsh_examples() {
        let s = chsh_quantum_value(&ChshSetting::optimal());
        assert!((s - 2.0 * 2f64.sqrt()).abs() < 1e-9);

        let zero = ChshSetting {
            alice_angles: [0.0, 0.0],
            bob_angles: [0.0, 0.0],
        };
        assert!((chsh_quantum_value(&zero) - 2.0).abs() < 1e-9);

        let flipped = ChshSetting {
            alice_angles: [0.3, 0.3 + PI],
            bob_angles: [0.3, 0.3],
        };
        assert!((chsh_quantum_value(&flipped) - 2.0).abs() < 1e-9);

        // With b2 = 3π/4 the minus sign lands on the wrong term and the four
        // correlators cancel: -c + c - c + c with c = cos(π/4).
        let other = ChshSetting {
            alice_angles: [0.0, PI / 2.0],
            bob_angles: [PI / 4.0, 3.0 * PI / 4.0],
        };
        assert!(chsh_quantum_value(&other) < 1e-9);
    }

    #[test]
    fn lhv_bound_by_enumeration() {
        let all = local_strategies();
        assert_eq!(all.len(), 16);
        assert!(all.iter().all(|s| s.chsh_value().abs() == 2));
        assert_eq!(chsh_lhv_bound(), 2);
    }
}
