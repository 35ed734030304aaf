use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};
use specker_core::cosmic::{
    boltzmann_fluctuation, history_count, infuturabilien_estimate, world_count, CosmicParams,
    Interpretation,
};
use specker_core::detection::{
    chsh_lhv_bound, chsh_quantum_value, exclusivity_run, mz_run, separation_class,
    singlet_correlator, ChshSetting, MzConfig, MzModel, SpacetimeEvent,
};
use specker_core::ks::{
    find_noncontextual_assignment, parity_certificate, ContextHypergraph, RaySystem, SearchConfig,
    SignConvention, Witness,
};
use specker_core::linalg::{random_state, QuantumState};
use specker_core::parable::{
    build_prophet_table, noncontextual_parable_bound, run_parable, sequential_machine_sim, BoxPair,
    Chooser, NoncontextualMode, ParableModel,
};

use crate::args::*;
use crate::CliError;

type Out = Result<Value, CliError>;

const DEFAULT_TRIALS: usize = 100_000;
const DEFAULT_STATES: usize = 20;

pub fn run(cli: &Cli) -> Out {
    let seed = cli.seed;
    let trials = cli.trials;
    match &cli.command {
        Group::Ks(cmd) => ks(cmd),
        Group::Witness(cmd) => witness(cmd, seed, trials.unwrap_or(DEFAULT_STATES)),
        Group::Parable(cmd) => parable(cmd, seed, trials.unwrap_or(DEFAULT_TRIALS)),
        Group::Detect(cmd) => detect(cmd, seed, trials.unwrap_or(DEFAULT_TRIALS)),
        Group::Counts(cmd) => counts(cmd),
    }
}

fn load_system(rays: Option<&Path>) -> Result<RaySystem, CliError> {
    Ok(match rays {
        Some(path) => RaySystem::load(path)?,
        None => RaySystem::ceg18(),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HypergraphDocument {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

fn load_hypergraph(path: &Path) -> Result<ContextHypergraph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| specker_core::Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let doc: HypergraphDocument =
        serde_json::from_str(&text).map_err(|e| specker_core::Error::Parse(e.to_string()))?;
    Ok(ContextHypergraph::new(doc.vertex_count, doc.edges)?)
}

fn search_config(args: &SearchArgs) -> SearchConfig {
    SearchConfig {
        cap: args.cap,
        workers: args.workers,
    }
}

fn ks(cmd: &KsCommand) -> Out {
    let (source, search, verify) = match cmd {
        KsCommand::Verify { source, search } => (source, search, true),
        KsCommand::Search { source, search } => (source, search, false),
    };
    let mut body = serde_json::Map::new();
    let h = match &source.hypergraph {
        Some(path) => {
            let h = load_hypergraph(path)?;
            body.insert("source".into(), json!("hypergraph"));
            h
        }
        None => {
            let system = load_system(source.rays.as_deref())?;
            body.insert("source".into(), json!("rays"));
            body.insert("name".into(), json!(system.name()));
            body.insert("dimension".into(), json!(system.dimension()));
            body.insert("structure".into(), json!(system.structure()));
            system.hypergraph()
        }
    };
    let degrees = h.degrees();
    body.insert("vertices".into(), json!(h.vertex_count()));
    body.insert("edges".into(), json!(h.edges().len()));
    body.insert(
        "all_degrees_even".into(),
        json!(degrees.iter().all(|d| d % 2 == 0)),
    );
    if verify {
        body.insert("certificate".into(), json!(parity_certificate(&h)));
    }
    let found = find_noncontextual_assignment(&h, &search_config(search))?;
    body.insert(
        "assignment".into(),
        match found {
            Some(a) => json!(a.to_string()),
            None => json!("NONE"),
        },
    );
    Ok(Value::Object(body))
}

fn witness(cmd: &WitnessCommand, seed: u64, states: usize) -> Out {
    match cmd {
        WitnessCommand::Bound { rays, sign, search } => {
            let system = load_system(rays.as_deref())?;
            let w = Witness::new(&system, SignConvention::from_factor(*sign)?);
            let b = w.classical_bound(&search_config(search))?;
            Ok(json!({
                "name": system.name(),
                "sign": sign,
                "classical_bound": b.bound,
                "maximizing_assignment": b.arg,
            }))
        }
        WitnessCommand::Quantum { rays, sign } => {
            let system = load_system(rays.as_deref())?;
            let w = Witness::new(&system, SignConvention::from_factor(*sign)?);
            let d = system.dimension();
            let at_basis = w.quantum_value(&QuantumState::basis(d, 0)?)?;
            let mut lo = at_basis;
            let mut hi = at_basis;
            for k in 0..states {
                let v = w.quantum_value(&random_state(d, seed.wrapping_add(k as u64))?)?;
                lo = lo.min(v);
                hi = hi.max(v);
            }
            Ok(json!({
                "name": system.name(),
                "sign": sign,
                "quantum_value": at_basis,
                "random_states": states,
                "min": lo,
                "max": hi,
                "spread": hi - lo,
            }))
        }
    }
}

fn parse_list<T: std::str::FromStr>(flag: &str, s: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--{flag}: cannot parse {part:?}")))
        })
        .collect()
}

fn parable(cmd: &ParableCommand, seed: u64, rounds: usize) -> Out {
    match cmd {
        ParableCommand::Run {
            model,
            assignment,
            bias,
            chooser,
            log,
        } => {
            let chooser = match chooser {
                None => Chooser::Uniform,
                Some(s) => Chooser::Sequence(
                    s.split(',')
                        .map(|p| BoxPair::parse(p).map_err(|e| CliError::Usage(e.to_string())))
                        .collect::<Result<_, _>>()?,
                ),
            };
            let model = match model {
                ParableModelArg::Noncontextual => {
                    ParableModel::Noncontextual(NoncontextualMode::Fresh)
                }
                ParableModelArg::Fixed => {
                    let bits: Vec<bool> = assignment
                        .chars()
                        .map(|c| match c {
                            '0' => Ok(false),
                            '1' => Ok(true),
                            _ => Err(CliError::Usage(format!(
                                "--assignment: expected three bits, got {assignment:?}"
                            ))),
                        })
                        .collect::<Result<_, _>>()?;
                    let filling: [bool; 3] = bits.try_into().map_err(|_| {
                        CliError::Usage(format!(
                            "--assignment: expected three bits, got {assignment:?}"
                        ))
                    })?;
                    ParableModel::Noncontextual(NoncontextualMode::Fixed(filling))
                }
                // The table comes from its own stream so that the chooser
                // cannot shift it.
                ParableModelArg::Prophet => {
                    ParableModel::Prophet(build_prophet_table(rounds, *bias, seed ^ 0x5eed_7ab1e)?)
                }
                ParableModelArg::Machine => ParableModel::SequentialMachine,
            };
            let run = run_parable(&model, &chooser, rounds, seed)?;
            if let Some(path) = log {
                std::fs::write(path, run.log.to_json_lines())
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(json!({ "model": model.name(), "stats": run.stats }))
        }
        ParableCommand::Bound => {
            let b = noncontextual_parable_bound();
            Ok(json!({
                "p_same_min": b.value.to_string(),
                "p_same_min_decimal": *b.value.numer() as f64 / *b.value.denom() as f64,
                "witness": b.witness,
            }))
        }
        ParableCommand::Machine => {
            let run = sequential_machine_sim(rounds, seed)?;
            Ok(json!({
                "model": "sequential_machine",
                "stats": run.stats,
                "box_marginals": run.stats.box_marginals(),
            }))
        }
    }
}

fn detect(cmd: &DetectCommand, seed: u64, trials: usize) -> Out {
    match cmd {
        DetectCommand::Mz { phase, model } => {
            let report = mz_run(&MzConfig {
                phase: *phase,
                model: match model {
                    MzModelArg::Quantum => MzModel::Quantum,
                    MzModelArg::Path => MzModel::PredeterminedPath,
                },
                trials,
                seed,
            })?;
            Ok(json!(report.summary))
        }
        DetectCommand::Exclusivity { detectors, probs } => {
            let probs: Vec<f64> = match probs {
                Some(s) => parse_list("probs", s)?,
                None => vec![1.0 / *detectors as f64; *detectors],
            };
            let run = exclusivity_run(*detectors, &probs, trials, seed)?;
            Ok(json!(run.summary))
        }
        DetectCommand::Chsh { angles } => {
            let setting = match angles {
                None => ChshSetting::optimal(),
                Some(s) => {
                    let v: Vec<f64> = parse_list("angles", s)?;
                    let [a1, a2, b1, b2] = v[..] else {
                        return Err(CliError::Usage("--angles takes four values".into()));
                    };
                    ChshSetting {
                        alice_angles: [a1, a2],
                        bob_angles: [b1, b2],
                    }
                }
            };
            let [a1, a2] = setting.alice_angles;
            let [b1, b2] = setting.bob_angles;
            let quantum = chsh_quantum_value(&setting);
            let lhv = chsh_lhv_bound();
            Ok(json!({
                "experiment": "chsh",
                "params": setting,
                "correlators": [
                    singlet_correlator(a1, b1),
                    singlet_correlator(a1, b2),
                    singlet_correlator(a2, b1),
                    singlet_correlator(a2, b2),
                ],
                "quantum_value": quantum,
                "lhv_bound": lhv,
                "violation": quantum - lhv as f64,
            }))
        }
        DetectCommand::Separation { e1, e2, c } => {
            let event = |flag: &str, s: &str| -> Result<SpacetimeEvent, CliError> {
                let v: Vec<f64> = parse_list(flag, s)?;
                match v[..] {
                    [t, x] => Ok(SpacetimeEvent::new(t, x)),
                    _ => Err(CliError::Usage(format!("--{flag} takes t,x"))),
                }
            };
            let (a, b) = (event("e1", e1)?, event("e2", e2)?);
            Ok(json!({
                "e1": a,
                "e2": b,
                "c": c,
                "separation": separation_class(a, b, *c)?,
            }))
        }
    }
}

fn counts(cmd: &CountsCommand) -> Out {
    match cmd {
        CountsCommand::Worlds {
            interpretation,
            choices,
            outcomes,
            rounds,
        } => {
            let interp = match interpretation {
                InterpretationArg::MwOutcomes => Interpretation::MwOutcomes,
                InterpretationArg::MwCompleted => Interpretation::MwCompleted,
                InterpretationArg::ApwChoices => Interpretation::ApwChoices,
            };
            let m = world_count(interp, *choices, *outcomes, *rounds)?;
            Ok(json!({
                "interpretation": interp,
                "choices": choices,
                "outcomes": outcomes,
                "rounds": rounds,
                "worlds": m,
            }))
        }
        CountsCommand::Histories {
            choices,
            rounds,
            agents,
        } => Ok(json!({
            "choices": choices,
            "rounds": rounds,
            "agents": agents,
            "histories": history_count(*choices, *rounds, *agents)?,
        })),
        CountsCommand::Infuturabilien { params, preset } => {
            let p = match params {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        specker_core::Error::Parse(format!("cannot read {}: {e}", path.display()))
                    })?;
                    serde_json::from_str::<CosmicParams>(&text)
                        .map_err(|e| specker_core::Error::Parse(e.to_string()))?
                }
                None => match preset {
                    PresetArg::Rounded => CosmicParams::rounded(),
                    PresetArg::Physical => CosmicParams::physical(),
                },
            };
            let r = infuturabilien_estimate(&p)?;
            let mut v = json!(r);
            v["humanity_exponent_rounded"] =
                json!(format!("10^10^{}", r.humanity_exponent_order.round()));
            Ok(v)
        }
        CountsCommand::Boltzmann { molecules } => Ok(json!(boltzmann_fluctuation(*molecules)?)),
    }
}
