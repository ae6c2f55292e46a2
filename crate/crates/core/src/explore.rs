//! Randomized checks of the two-branch gluing inequality, and exhaustive
//! searches for the graphs that minimize the count under a degree or
//! connectivity constraint.

use std::fmt;
use std::io;
use std::ops::RangeInclusive;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{glue_lemma_graphs, Anchored, BuildError};
use crate::count::{total_subset_oracle, CountError, ORACLE_MAX_ORDER};
use crate::graph::{pair_count, Graph};
use crate::graph6::encode_graph6;
use crate::invariants;
use crate::verify::{distinct_graphs, scan, Objective, ScanOptions, VerifyError};

#[derive(Debug, Error)]
pub enum ExploreError {
    #[error("part order must be at least 2, got {0}")]
    PartTooSmall(usize),
    #[error("parts of order {part} glue to order {glued}, above the sweep budget {ORACLE_MAX_ORDER}")]
    PartTooLarge { part: usize, glued: usize },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("writing reproducer: {0}")]
    Io(#[from] io::Error),
}

/// The generator behind every trial: xoshiro256**, seeded through SplitMix64.
pub fn trial_rng(seed: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(seed)
}

/// Uniform over connected labeled graphs of the given order, by rejection.
pub fn random_connected_graph<R: Rng>(rng: &mut R, order: usize) -> Graph {
    let pairs = pair_count(order);
    loop {
        let mask = if pairs == 0 { 0 } else { rng.random::<u64>() >> (64 - pairs) };
        let g = Graph::from_edge_mask(order, mask).expect("mask fits the order");
        if g.is_connected() {
            return g;
        }
    }
}

/// Uniform over labeled graphs of the given order: one fair coin per pair.
pub fn random_graph<R: Rng>(rng: &mut R, order: usize) -> Graph {
    let mut g = Graph::empty(order).expect("order within cap");
    for j in 1..order {
        for i in 0..j {
            if rng.random::<bool>() {
                g = g.with_edge(i, j).expect("pair in range");
            }
        }
    }
    g
}

/// One randomized instance of the gluing inequality, replayable from `seed`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaTrial {
    pub seed: u64,
    pub left: String,
    pub middle: String,
    pub right: String,
    pub l: usize,
    pub r: usize,
    pub u: usize,
    pub v: usize,
    pub n_g: u64,
    pub n_g_prime: u64,
    pub n_g_second: u64,
    pub holds: bool,
}

fn check_part_order(max_part_order: usize) -> Result<(), ExploreError> {
    if max_part_order < 2 {
        return Err(ExploreError::PartTooSmall(max_part_order));
    }
    let glued = 3 * max_part_order - 2;
    if glued > ORACLE_MAX_ORDER {
        return Err(ExploreError::PartTooLarge { part: max_part_order, glued });
    }
    Ok(())
}

/// Runs the trial for one seed.
pub fn lemma_trial(seed: u64, max_part_order: usize) -> Result<LemmaTrial, ExploreError> {
    check_part_order(max_part_order)?;
    let mut rng = trial_rng(seed);
    let part = |rng: &mut Xoshiro256StarStar| {
        let order = rng.random_range(2..=max_part_order);
        random_connected_graph(rng, order)
    };
    let left = part(&mut rng);
    let middle = part(&mut rng);
    let right = part(&mut rng);
    let l = rng.random_range(0..left.order());
    let r = rng.random_range(0..right.order());
    let u = rng.random_range(0..middle.order());
    let v = (u + rng.random_range(1..middle.order())) % middle.order();
    let glued = glue_lemma_graphs(
        Anchored { graph: &left, anchor: l },
        &middle,
        u,
        v,
        Anchored { graph: &right, anchor: r },
    )?;
    let n_g = total_subset_oracle(&glued.g)?;
    let n_g_prime = total_subset_oracle(&glued.g_prime)?;
    let n_g_second = total_subset_oracle(&glued.g_second)?;
    Ok(LemmaTrial {
        seed,
        left: encode_graph6(&left),
        middle: encode_graph6(&middle),
        right: encode_graph6(&right),
        l,
        r,
        u,
        v,
        n_g,
        n_g_prime,
        n_g_second,
        holds: n_g_prime > n_g || n_g_second > n_g,
    })
}

/// `count` trials with seeds `seed, seed + 1, ..`.
pub fn lemma_trials(count: usize, max_part_order: usize, seed: u64) -> Result<Vec<LemmaTrial>, ExploreError> {
    check_part_order(max_part_order)?;
    (0..count as u64).map(|i| lemma_trial(seed.wrapping_add(i), max_part_order)).collect()
}

/// Writes a failing trial as pretty JSON.
pub fn write_reproducer(trial: &LemmaTrial, path: &Path) -> Result<(), ExploreError> {
    let json = serde_json::to_string_pretty(trial).expect("trials serialize");
    std::fs::write(path, json + "\n")?;
    Ok(())
}

/// Summary of a batch of trials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaSummary {
    pub trials: usize,
    pub max_part_order: usize,
    pub seed: u64,
    pub holds: usize,
    pub failures: Vec<LemmaTrial>,
}

impl LemmaSummary {
    pub fn from_trials(trials: &[LemmaTrial], max_part_order: usize, seed: u64) -> Self {
        LemmaSummary {
            trials: trials.len(),
            max_part_order,
            seed,
            holds: trials.iter().filter(|t| t.holds).count(),
            failures: trials.iter().filter(|t| !t.holds).cloned().collect(),
        }
    }
}

/// Constraint for a minimization search. Classes contain connected graphs only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinConstraint {
    MinDegree,
    VertexConnectivity,
}

impl MinConstraint {
    pub fn name(self) -> &'static str {
        match self {
            MinConstraint::MinDegree => "min-degree",
            MinConstraint::VertexConnectivity => "vertex-connectivity",
        }
    }

    fn parameter(self, g: &Graph) -> usize {
        match self {
            MinConstraint::MinDegree => invariants::min_degree(g),
            MinConstraint::VertexConnectivity => invariants::vertex_connectivity(g),
        }
    }
}

impl fmt::Display for MinConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MinConstraint {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "min-degree" | "mindeg" => Ok(MinConstraint::MinDegree),
            "vertex-connectivity" | "vertex-conn" => Ok(MinConstraint::VertexConnectivity),
            _ => Err(format!("unknown constraint {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinSearchResult {
    pub constraint: MinConstraint,
    pub n: usize,
    pub param: usize,
    pub class_size_labeled: u64,
    pub min_value: Option<u64>,
    pub minimizers: Vec<String>,
    pub empty_class: bool,
}

/// Minimum count over connected order-`n` graphs whose constrained parameter is `param`.
pub fn search_min(
    constraint: MinConstraint,
    n: usize,
    param: usize,
    opts: &ScanOptions,
) -> Result<MinSearchResult, ExploreError> {
    let result = scan(n, opts, Objective::Min, |g| {
        (g.is_connected() && constraint.parameter(g) == param).then_some(0)
    })?;
    let bucket = &result.buckets[0];
    Ok(MinSearchResult {
        constraint,
        n,
        param,
        class_size_labeled: bucket.count,
        min_value: bucket.best,
        minimizers: distinct_graphs(n, &bucket.masks)?,
        empty_class: bucket.count == 0,
    })
}

pub fn search_min_grid(
    constraint: MinConstraint,
    orders: RangeInclusive<usize>,
    param: usize,
    opts: &ScanOptions,
) -> Result<Vec<MinSearchResult>, ExploreError> {
    orders.map(|n| search_min(constraint, n, param, opts)).collect()
}
