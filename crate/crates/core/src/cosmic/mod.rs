//! Counting worlds, histories and fluctuations at cosmological scale.

mod magnitude;

pub use magnitude::{Magnitude, PROMOTION_DIGITS};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Interpretation {
    /// Every outcome of every round branches: `outcomes^rounds`.
    MwOutcomes,
    /// Branching over both choices and outcomes: `(choices*outcomes)^rounds`.
    MwCompleted,
    /// Only the choice branches are kept: `choices^rounds`.
    ApwChoices,
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Interpretation::MwOutcomes => "MW_OUTCOMES",
            Interpretation::MwCompleted => "MW_COMPLETED",
            Interpretation::ApwChoices => "APW_CHOICES",
        })
    }
}

fn positive(name: &str, v: u64) -> Result<u64> {
    if v == 0 {
        Err(Error::Config(format!("{name} must be at least 1")))
    } else {
        Ok(v)
    }
}

pub fn world_count(
    interpretation: Interpretation,
    choices: u64,
    outcomes: u64,
    rounds: u64,
) -> Result<Magnitude> {
    let choices = positive("choices", choices)?;
    let outcomes = positive("outcomes", outcomes)?;
    let rounds = positive("rounds", rounds)?;
    let branching = match interpretation {
        Interpretation::MwOutcomes => Magnitude::from(outcomes),
        Interpretation::MwCompleted => Magnitude::from(choices).mul(&Magnitude::from(outcomes)),
        Interpretation::ApwChoices => Magnitude::from(choices),
    };
    Ok(branching.pow(rounds))
}

/// `choices^(rounds * agents)`.
pub fn history_count(choices: u64, rounds: u64, agents: u64) -> Result<Magnitude> {
    let choices = positive("choices", choices)?;
    let steps = positive("rounds", rounds)?
        .checked_mul(positive("agents", agents)?)
        .ok_or_else(|| Error::Config("rounds * agents overflows".into()))?;
    Ok(Magnitude::from(choices).pow(steps))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosmicParams {
    /// m/s
    pub signal_speed: f64,
    /// years until humanity can no longer make choices
    pub horizon_years: f64,
    /// m
    pub planck_length: f64,
    /// s
    pub planck_time: f64,
    /// years per person
    pub lifetime_years: f64,
    pub population: f64,
    /// seconds per year
    #[serde(default = "default_year_seconds")]
    pub year_seconds: f64,
}

fn default_year_seconds() -> f64 {
    31e6
}

impl CosmicParams {
    /// Round figures: c = 3e8 m/s, a 1e9-year horizon, 31e6 s per year,
    /// 1.6e-35 m pixels, and a time pixel chosen so 100 years is 1e53 of
    /// them.
    pub fn rounded() -> Self {
        CosmicParams {
            signal_speed: 3e8,
            horizon_years: 1e9,
            planck_length: 1.6e-35,
            planck_time: 100.0 * 31e6 / 1e53,
            lifetime_years: 100.0,
            population: 7.5e9,
            year_seconds: 31e6,
        }
    }

    /// CODATA constants and the Julian year.
    pub fn physical() -> Self {
        CosmicParams {
            signal_speed: 299_792_458.0,
            horizon_years: 1e9,
            planck_length: 1.616_255e-35,
            planck_time: 5.391_247e-44,
            lifetime_years: 100.0,
            population: 7.5e9,
            year_seconds: 31_557_600.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("signal_speed", self.signal_speed),
            ("horizon_years", self.horizon_years),
            ("planck_length", self.planck_length),
            ("planck_time", self.planck_time),
            ("lifetime_years", self.lifetime_years),
            ("population", self.population),
            ("year_seconds", self.year_seconds),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

impl Default for CosmicParams {
    fn default() -> Self {
        CosmicParams::rounded()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfuturabilienReport {
    pub params: CosmicParams,
    /// Light-travel distance to the horizon, in Planck lengths.
    pub linear_pixels: Magnitude,
    /// `linear_pixels^3`
    pub space_pixels: Magnitude,
    /// One lifetime in Planck times.
    pub lifetime_time_pixels: Magnitude,
    /// `space_pixels^lifetime_time_pixels`
    pub per_person_histories: Magnitude,
    /// `per_person_histories^population`
    pub humanity_histories: Magnitude,
    /// `log10(log10(humanity_histories))`, the exponent's own order of
    /// magnitude.
    pub humanity_exponent_order: f64,
}

pub fn infuturabilien_estimate(p: &CosmicParams) -> Result<InfuturabilienReport> {
    p.validate()?;
    let horizon_seconds = p.horizon_years * p.year_seconds;
    let linear_pixels = Magnitude::from_log10(
        p.signal_speed.log10() + horizon_seconds.log10() - p.planck_length.log10(),
    )?;
    let space_pixels = linear_pixels.pow(3);
    let lifetime_time_pixels =
        Magnitude::from_log10((p.lifetime_years * p.year_seconds).log10() - p.planck_time.log10())?;
    let per_person_histories = space_pixels.pow_magnitude(&lifetime_time_pixels)?;
    let humanity_histories =
        per_person_histories.pow_magnitude(&Magnitude::from_real(p.population)?)?;
    Ok(InfuturabilienReport {
        params: *p,
        humanity_exponent_order: humanity_histories.log10().log10(),
        linear_pixels,
        space_pixels,
        lifetime_time_pixels,
        per_person_histories,
        humanity_histories,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoltzmannFluctuation {
    pub n_molecules: u64,
    /// `ΔS / k = N ln 2`
    pub delta_s_over_k: f64,
    /// `log2 P = -N`
    pub probability_log2: f64,
    pub probability_log10: f64,
}

/// Entropy drop and probability of all `n` molecules gathering in one half
/// of a box.
pub fn boltzmann_fluctuation(n_molecules: u64) -> Result<BoltzmannFluctuation> {
    let n = positive("n_molecules", n_molecules)? as f64;
    Ok(BoltzmannFluctuation {
        n_molecules,
        delta_s_over_k: n * std::f64::consts::LN_2,
        probability_log2: -n,
        probability_log10: -n * std::f64::consts::LOG10_2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn exact(m: &Magnitude) -> u64 {
        m.as_exact().unwrap().try_into().unwrap()
    }

    #[test]
    fn world_count_examples() {
        assert_eq!(
            exact(&world_count(Interpretation::MwOutcomes, 3, 4, 1).unwrap()),
            4
        );
        assert_eq!(
            exact(&world_count(Interpretation::MwCompleted, 3, 4, 1).unwrap()),
            12
        );
        assert_eq!(
            exact(&world_count(Interpretation::ApwChoices, 3, 2, 8).unwrap()),
            6561
        );
        assert!(world_count(Interpretation::ApwChoices, 0, 2, 8).is_err());
    }

    #[test]
    fn history_count_examples() {
        let h = history_count(3, 8, 10).unwrap();
        assert_eq!(h.as_exact().unwrap(), &BigUint::from(3u32).pow(80));
        assert_eq!(h.as_exact().unwrap().to_string().len(), 39);
        assert_eq!(exact(&history_count(17, 1, 1).unwrap()), 17);
        assert_eq!(exact(&history_count(3, 8, 1).unwrap()), 6561);
        assert!(history_count(3, u64::MAX, 2).is_err());
    }

    #[test]
    fn rounded_estimate() {
        let r = infuturabilien_estimate(&CosmicParams::rounded()).unwrap();
        assert!((r.linear_pixels.log10() - 59.8).abs() < 0.5);
        assert!((r.space_pixels.log10() - 179.0).abs() < 2.0);
        assert!((r.lifetime_time_pixels.log10() - 53.0).abs() < 1e-9);
        assert!((r.per_person_histories.log10() / 1.8e55 - 1.0).abs() < 0.1);
        assert!((r.humanity_histories.log10() / 1.35e65 - 1.0).abs() < 0.1);
        assert!((r.humanity_exponent_order - 65.0).abs() < 0.5);
    }

    #[test]
    fn invalid_params() {
        let mut p = CosmicParams::rounded();
        p.population = 0.0;
        assert!(infuturabilien_estimate(&p).is_err());
        p = CosmicParams::rounded();
        p.planck_time = f64::NAN;
        assert!(infuturabilien_estimate(&p).is_err());
    }

    #[test]
    fn params_json_defaults_year() {
        let p: CosmicParams = serde_json::from_str(
            r#"{"signal_speed":3e8,"horizon_years":1e9,"planck_length":1.6e-35,
                "planck_time":3.1e-44,"lifetime_years":100,"population":7.5e9}"#,
        )
        .unwrap();
        assert_eq!(p.year_seconds, 31e6);
    }

    #[test]
    fn boltzmann_examples() {
        let one = boltzmann_fluctuation(1).unwrap();
        assert!((one.delta_s_over_k - 2f64.ln()).abs() < 1e-15);
        assert_eq!(2f64.powf(one.probability_log2), 0.5);
        assert_eq!(boltzmann_fluctuation(100).unwrap().probability_log2, -100.0);
        assert!(boltzmann_fluctuation(0).is_err());
    }

    proptest! {
        #[test]
        fn histories_are_choice_worlds(c in 1u64..6, r in 1u64..6, a in 1u64..6) {
            prop_assert_eq!(
                history_count(c, r, a).unwrap(),
                world_count(Interpretation::ApwChoices, c, 1, r * a).unwrap()
            );
        }

        #[test]
        fn estimate_is_monotone(
            h in 1e6f64..1e12,
            dh in 1.0f64..10.0,
            l in 10f64..200.0,
            dl in 1.0f64..10.0,
            n in 1e3f64..1e12,
            dn in 1.0f64..10.0,
        ) {
            let base = CosmicParams { horizon_years: h, lifetime_years: l, population: n, ..CosmicParams::rounded() };
            let r0 = infuturabilien_estimate(&base).unwrap();
            for bigger in [
                CosmicParams { horizon_years: h * dh, ..base },
                CosmicParams { lifetime_years: l * dl, ..base },
                CosmicParams { population: n * dn, ..base },
            ] {
                let r1 = infuturabilien_estimate(&bigger).unwrap();
                prop_assert!(r1.linear_pixels >= r0.linear_pixels);
                prop_assert!(r1.space_pixels >= r0.space_pixels);
                prop_assert!(r1.lifetime_time_pixels >= r0.lifetime_time_pixels);
                prop_assert!(r1.per_person_histories >= r0.per_person_histories);
                prop_assert!(r1.humanity_histories >= r0.humanity_histories);
            }
        }
    }
}
