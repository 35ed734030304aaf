//! The three-box parable: of boxes A, B and C a suitor opens a pair and
//! records whether each holds a gem.
//!
//! Any preassignment of contents to all three boxes has at least one equal
//! pair, so a noncontextual model gets "same result" at least a third of the
//! time under a uniform chooser. The prophet table and the signalling machine
//! always answer with one gem and one empty box.

use std::fmt;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BoxPair {
    AB,
    AC,
    BC,
}

impl BoxPair {
    pub const ALL: [BoxPair; 3] = [BoxPair::AB, BoxPair::AC, BoxPair::BC];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Box indices (A = 0, B = 1, C = 2) in opening-label order.
    pub fn boxes(self) -> (usize, usize) {
        match self {
            BoxPair::AB => (0, 1),
            BoxPair::AC => (0, 2),
            BoxPair::BC => (1, 2),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "AB" => Ok(BoxPair::AB),
            "AC" => Ok(BoxPair::AC),
            "BC" => Ok(BoxPair::BC),
            other => Err(Error::Config(format!("unknown box pair {other:?}"))),
        }
    }
}

impl fmt::Display for BoxPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Contents of the two opened boxes, in the pair's label order. `true` means
/// the box holds a gem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Outcome {
    pub first: bool,
    pub second: bool,
}

impl Outcome {
    pub const GEM_EMPTY: Outcome = Outcome {
        first: true,
        second: false,
    };
    pub const EMPTY_GEM: Outcome = Outcome {
        first: false,
        second: true,
    };

    pub fn is_same(self) -> bool {
        self.first == self.second
    }

    /// Index into `00, 01, 10, 11`.
    fn code(self) -> usize {
        (self.first as usize) << 1 | self.second as usize
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.first as u8, self.second as u8)
    }
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Outcomes fixed in advance for every pair of every round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProphetTable {
    rows: Vec<[Outcome; 3]>,
}

impl ProphetTable {
    pub fn rounds(&self) -> usize {
        self.rows.len()
    }

    pub fn cell(&self, round: usize, pair: BoxPair) -> Option<Outcome> {
        self.rows.get(round).map(|row| row[pair.index()])
    }

    pub fn rows(&self) -> &[[Outcome; 3]] {
        &self.rows
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must lie in [0, 1], got {p}")))
    }
}

/// Every cell is `10` with probability `outcome_bias`, otherwise `01`,
/// drawn independently round by round in pair order AB, AC, BC.
pub fn build_prophet_table(rounds: usize, outcome_bias: f64, seed: u64) -> Result<ProphetTable> {
    check_probability("outcome bias", outcome_bias)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..rounds)
        .map(|_| {
            BoxPair::ALL.map(|_| {
                if rng.random::<f64>() < outcome_bias {
                    Outcome::GEM_EMPTY
                } else {
                    Outcome::EMPTY_GEM
                }
            })
        })
        .collect();
    Ok(ProphetTable { rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoncontextualMode {
    /// A fresh uniformly random filling of A, B, C every round.
    Fresh,
    /// The same filling every round.
    Fixed([bool; 3]),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParableModel {
    Noncontextual(NoncontextualMode),
    Prophet(ProphetTable),
    /// The first box opened is filled at random and signals the second box
    /// to hold the opposite.
    SequentialMachine,
}

impl ParableModel {
    pub fn name(&self) -> &'static str {
        match self {
            ParableModel::Noncontextual(NoncontextualMode::Fresh) => "noncontextual",
            ParableModel::Noncontextual(NoncontextualMode::Fixed(_)) => "noncontextual_fixed",
            ParableModel::Prophet(_) => "prophet",
            ParableModel::SequentialMachine => "sequential_machine",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chooser {
    Sequence(Vec<BoxPair>),
    /// Uniform over the three pairs, drawn from the run's RNG.
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub round: usize,
    pub pair: BoxPair,
    pub outcome: Outcome,
    pub model: &'static str,
}

/// Append-only record of played rounds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunLog {
    records: Vec<RoundRecord>,
}

impl RunLog {
    fn record(&mut self, r: RoundRecord) {
        self.records.push(r);
    }

    pub fn records(&self) -> &[RoundRecord] {
        &self.records
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PairTally {
    #[serde(rename = "00")]
    pub n00: u64,
    #[serde(rename = "01")]
    pub n01: u64,
    #[serde(rename = "10")]
    pub n10: u64,
    #[serde(rename = "11")]
    pub n11: u64,
}

impl PairTally {
    fn add(&mut self, o: Outcome) {
        match o.code() {
            0 => self.n00 += 1,
            1 => self.n01 += 1,
            2 => self.n10 += 1,
            _ => self.n11 += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.n00 + self.n01 + self.n10 + self.n11
    }

    pub fn same(&self) -> u64 {
        self.n00 + self.n11
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParableStats {
    pub rounds: u64,
    pub ab: PairTally,
    pub ac: PairTally,
    pub bc: PairTally,
    pub same: u64,
    pub p_same: f64,
}

impl ParableStats {
    fn from_log(log: &RunLog) -> Self {
        let mut tallies = [PairTally::default(); 3];
        for r in log.records() {
            tallies[r.pair.index()].add(r.outcome);
        }
        let rounds = log.records().len() as u64;
        let same = tallies.iter().map(PairTally::same).sum();
        ParableStats {
            rounds,
            ab: tallies[0],
            ac: tallies[1],
            bc: tallies[2],
            same,
            p_same: if rounds == 0 {
                0.0
            } else {
                same as f64 / rounds as f64
            },
        }
    }

    pub fn tally(&self, pair: BoxPair) -> &PairTally {
        match pair {
            BoxPair::AB => &self.ab,
            BoxPair::AC => &self.ac,
            BoxPair::BC => &self.bc,
        }
    }

    /// Fraction of openings of each box (A, B, C) that revealed a gem.
    pub fn box_marginals(&self) -> [f64; 3] {
        let mut gems = [0u64; 3];
        let mut opened = [0u64; 3];
        for pair in BoxPair::ALL {
            let t = self.tally(pair);
            let (x, y) = pair.boxes();
            opened[x] += t.total();
            opened[y] += t.total();
            gems[x] += t.n10 + t.n11;
            gems[y] += t.n01 + t.n11;
        }
        std::array::from_fn(|i| {
            if opened[i] == 0 {
                0.0
            } else {
                gems[i] as f64 / opened[i] as f64
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParableRun {
    pub log: RunLog,
    pub stats: ParableStats,
}

pub fn run_parable(
    model: &ParableModel,
    chooser: &Chooser,
    rounds: usize,
    seed: u64,
) -> Result<ParableRun> {
    if rounds == 0 {
        return Err(Error::Config("a run needs at least one round".into()));
    }
    if let Chooser::Sequence(seq) = chooser {
        if seq.len() < rounds {
            return Err(Error::Config(format!(
                "chooser lists {} pairs for {rounds} rounds",
                seq.len()
            )));
        }
    }
    if let ParableModel::Prophet(table) = model {
        if table.rounds() < rounds {
            return Err(Error::Config(format!(
                "prophet table covers {} rounds, run needs {rounds}",
                table.rounds()
            )));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut log = RunLog::default();
    for round in 0..rounds {
        let pair = match chooser {
            Chooser::Sequence(seq) => seq[round],
            Chooser::Uniform => BoxPair::ALL[rng.random_range(0..3)],
        };
        let outcome = match model {
            ParableModel::Noncontextual(mode) => {
                let filling = match mode {
                    NoncontextualMode::Fresh => [rng.random(), rng.random(), rng.random()],
                    NoncontextualMode::Fixed(f) => *f,
                };
                let (x, y) = pair.boxes();
                Outcome {
                    first: filling[x],
                    second: filling[y],
                }
            }
            ParableModel::Prophet(table) => table.rows[round][pair.index()],
            ParableModel::SequentialMachine => MachineMemory::default().open(&mut rng),
        };
        log.record(RoundRecord {
            round,
            pair,
            outcome,
            model: model.name(),
        });
    }
    let stats = ParableStats::from_log(&log);
    Ok(ParableRun { log, stats })
}

/// What the classical machine carries from the first opened box to the
/// second: the content it committed to, if any.
#[derive(Debug, Default)]
struct MachineMemory {
    signal: Option<bool>,
}

impl MachineMemory {
    fn open_box(&mut self, rng: &mut impl Rng) -> bool {
        match self.signal {
            // Second box: the signal has arrived, fill with the complement.
            Some(first) => !first,
            None => {
                let content = rng.random();
                self.signal = Some(content);
                content
            }
        }
    }

    fn open(mut self, rng: &mut impl Rng) -> Outcome {
        // Either box of the pair may be reached first.
        if rng.random() {
            let first = self.open_box(rng);
            let second = self.open_box(rng);
            Outcome { first, second }
        } else {
            let second = self.open_box(rng);
            let first = self.open_box(rng);
            Outcome { first, second }
        }
    }
}

/// Time-ordered openings simulated by the signalling machine under a
/// uniform chooser.
pub fn sequential_machine_sim(rounds: usize, seed: u64) -> Result<ParableRun> {
    run_parable(
        &ParableModel::SequentialMachine,
        &Chooser::Uniform,
        rounds,
        seed,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParableBound {
    #[serde(serialize_with = "ratio_string")]
    pub value: Ratio<u32>,
    /// Contents of A, B, C attaining the minimum.
    pub witness: [u8; 3],
}

fn ratio_string<S: Serializer>(r: &Ratio<u32>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

/// Fraction of the three pairs that show equal contents under `filling`.
pub fn equal_pair_fraction(filling: [bool; 3]) -> Ratio<u32> {
    let equal = BoxPair::ALL
        .iter()
        .filter(|p| {
            let (x, y) = p.boxes();
            filling[x] == filling[y]
        })
        .count() as u32;
    Ratio::new(equal, 3)
}

/// Minimum over all eight fillings of the equal-pair fraction.
pub fn noncontextual_parable_bound() -> ParableBound {
    let mut best: Option<(Ratio<u32>, [bool; 3])> = None;
    // Filling m puts box k's content in bit k, so m = 1 is (1, 0, 0).
    for m in 0u8..8 {
        let filling = [m & 1 == 1, m & 2 == 2, m & 4 == 4];
        let score = equal_pair_fraction(filling);
        if best.is_none_or(|(b, _)| score < b) {
            best = Some((score, filling));
        }
    }
    let (value, filling) = best.expect("eight fillings");
    ParableBound {
        value,
        witness: filling.map(u8::from),
    }
}
