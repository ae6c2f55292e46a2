//! Exhaustive certification of the extremal claims.
//!
//! Every labeled graph of order `n` is visited once through its edge mask
//! (`2^C(n,2)` of them). A class is the set of graphs on which one parameter
//! takes one value; the scan keeps, per class, its size, the best count of
//! connected induced subgraphs, and every labeled graph attaining it. The
//! optimizers are deduplicated up to isomorphism afterwards, which is cheap
//! because they are few.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_form, canonical_labeling, CanonError};
use crate::constructions::{self, BuildError, FamilyId};
use crate::count::{total_expansion, total_subset_oracle, CountError};
use crate::graph::{pair_count, Graph};
use crate::graph6::encode_graph6;
use crate::invariants;

/// Default enumeration cap; order 8 (`2^28` masks) needs an explicit opt-in.
pub const DEFAULT_ENUM_CAP: usize = 7;
pub const MAX_ENUM_CAP: usize = 8;
pub const DEFAULT_AUDIT_RATE: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("order {n} exceeds the enumeration cap {cap}{}", if *.n == MAX_ENUM_CAP { " (order 8 needs an explicit opt-in)" } else { "" })]
    EnumerationCap { n: usize, cap: usize },
    #[error("{theorem}: parameter {param} is not admissible for order {n}")]
    Parameter { theorem: Theorem, n: usize, param: usize },
    #[error("order {0} is too small to classify")]
    Order(usize),
    #[error("audit mismatch on edge mask {mask:#x}: expansion {expansion}, subset sweep {oracle}")]
    AuditMismatch { mask: u64, expansion: u64, oracle: u64 },
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Count(#[from] CountError),
}

/// The constrained parameter defining a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    MinDegree,
    Independence,
    VertexCover,
    VertexConnectivity,
    EdgeConnectivity,
    Chromatic,
    Bridges,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::MinDegree,
        Theorem::Independence,
        Theorem::VertexCover,
        Theorem::VertexConnectivity,
        Theorem::EdgeConnectivity,
        Theorem::Chromatic,
        Theorem::Bridges,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::MinDegree => "min-degree",
            Theorem::Independence => "independence",
            Theorem::VertexCover => "vertex-cover",
            Theorem::VertexConnectivity => "vertex-connectivity",
            Theorem::EdgeConnectivity => "edge-connectivity",
            Theorem::Chromatic => "chromatic",
            Theorem::Bridges => "bridges",
        }
    }

    /// The parameter value of `g`.
    pub fn parameter(self, g: &Graph) -> usize {
        match self {
            Theorem::MinDegree => invariants::min_degree(g),
            Theorem::Independence => invariants::independence_number(g),
            Theorem::VertexCover => invariants::vertex_cover_number(g),
            Theorem::VertexConnectivity => invariants::vertex_connectivity(g),
            Theorem::EdgeConnectivity => invariants::edge_connectivity(g),
            Theorem::Chromatic => invariants::chromatic_number(g).expect("enumeration orders are tiny"),
            Theorem::Bridges => invariants::bridge_count(g),
        }
    }

    /// Every value the parameter can take on an order-`n` graph.
    pub fn admissible(self, n: usize) -> RangeInclusive<usize> {
        match self {
            Theorem::Independence | Theorem::Chromatic => 1..=n,
            _ => 0..=n - 1,
        }
    }

    /// Values covered by the published statements. For bridges this includes
    /// `b = n - 2`, where the stated extremal graph falls outside the class.
    pub fn published_range(self, n: usize) -> RangeInclusive<usize> {
        match self {
            Theorem::MinDegree | Theorem::VertexConnectivity | Theorem::EdgeConnectivity => {
                1..=n.saturating_sub(2)
            }
            Theorem::Independence | Theorem::VertexCover => 1..=n - 1,
            Theorem::Chromatic => 2..=n,
            Theorem::Bridges => 0..=n.saturating_sub(2),
        }
    }

    /// The bridges cell whose stated extremal graph has `n - 1` bridges.
    pub fn is_bridge_anomaly(self, n: usize, param: usize) -> bool {
        self == Theorem::Bridges && n >= 3 && param == n - 2
    }

    /// The family member claimed to be the unique maximizer, if any.
    pub fn construction(self, n: usize, param: usize) -> Option<(FamilyId, usize)> {
        let g_or_complete = |k: usize| {
            if k + 2 <= n {
                Some((FamilyId::MinDegG, k))
            } else {
                Some((FamilyId::Complete, 0))
            }
        };
        match self {
            Theorem::MinDegree | Theorem::VertexConnectivity | Theorem::EdgeConnectivity => g_or_complete(param),
            Theorem::Independence => Some((FamilyId::SplitH, param)),
            Theorem::VertexCover => Some((FamilyId::SplitH, n - param)),
            Theorem::Chromatic => Some((FamilyId::TuranT, param)),
            Theorem::Bridges if param + 2 <= n => Some((FamilyId::BridgeJ, param)),
            Theorem::Bridges => None,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown theorem {0:?}")]
pub struct UnknownTheorem(pub String);

impl FromStr for Theorem {
    type Err = UnknownTheorem;
    fn from_str(s: &str) -> Result<Self, UnknownTheorem> {
        let found = Theorem::ALL.into_iter().find(|t| t.name() == s);
        found
            .or(match s {
                "mindeg" => Some(Theorem::MinDegree),
                "vertex-conn" => Some(Theorem::VertexConnectivity),
                "edge-conn" => Some(Theorem::EdgeConnectivity),
                _ => None,
            })
            .ok_or_else(|| UnknownTheorem(s.to_string()))
    }
}

/// One class: graphs of order `n` whose `theorem` parameter equals `param`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassSpec {
    pub theorem: Theorem,
    pub n: usize,
    pub param: usize,
}

impl ClassSpec {
    pub fn new(theorem: Theorem, n: usize, param: usize) -> Result<Self, VerifyError> {
        if n < 2 {
            return Err(VerifyError::Order(n));
        }
        if !theorem.admissible(n).contains(&param) {
            return Err(VerifyError::Parameter { theorem, n, param });
        }
        Ok(ClassSpec { theorem, n, param })
    }

    /// Outside the published parameter range.
    pub fn is_extension(&self) -> bool {
        !self.theorem.published_range(self.n).contains(&self.param)
    }
}

/// Knobs for a scan. `workers` is a budget, not a promise of speedup.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanOptions {
    pub workers: usize,
    /// Fraction of scanned graphs recounted by the subset sweep.
    pub audit_rate: f64,
    pub enum_cap: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { workers: 1, audit_rate: DEFAULT_AUDIT_RATE, enum_cap: DEFAULT_ENUM_CAP }
    }
}

impl ScanOptions {
    fn check(&self, n: usize) -> Result<(), VerifyError> {
        let cap = self.enum_cap.min(MAX_ENUM_CAP);
        if n > cap {
            return Err(VerifyError::EnumerationCap { n, cap });
        }
        Ok(())
    }
}

/// Every labeled graph of order `n` passing `filter`, in edge-mask order.
pub fn enumerate_labeled<F>(
    n: usize,
    opts: &ScanOptions,
    filter: F,
) -> Result<impl Iterator<Item = Graph>, VerifyError>
where
    F: Fn(&Graph) -> bool,
{
    opts.check(n)?;
    if n == 0 {
        return Err(VerifyError::Order(n));
    }
    let masks = 1u64 << pair_count(n);
    Ok((0..masks).map(move |m| Graph::from_edge_mask_unchecked(n, m)).filter(move |g| filter(g)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Objective {
    Max,
    Min,
}

/// Per-class scan state.
#[derive(Debug, Clone, Default)]
pub(crate) struct Bucket {
    pub count: u64,
    pub best: Option<u64>,
    pub masks: Vec<u64>,
}

impl Bucket {
    fn offer(&mut self, objective: Objective, value: u64, mask: u64) {
        self.count += 1;
        let better = match (self.best, objective) {
            (None, _) => true,
            (Some(b), Objective::Max) => value > b,
            (Some(b), Objective::Min) => value < b,
        };
        if better {
            self.best = Some(value);
            self.masks.clear();
            self.masks.push(mask);
        } else if self.best == Some(value) {
            self.masks.push(mask);
        }
    }

    fn merge(&mut self, objective: Objective, other: Bucket) {
        self.count += other.count;
        let Some(value) = other.best else { return };
        let better = match (self.best, objective) {
            (None, _) => true,
            (Some(b), Objective::Max) => value > b,
            (Some(b), Objective::Min) => value < b,
        };
        if better {
            self.best = other.best;
            self.masks = other.masks;
        } else if self.best == Some(value) {
            self.masks.extend(other.masks);
        }
    }
}

/// Result of one pass over all edge masks.
#[derive(Debug, Clone, Default)]
pub(crate) struct ScanResult {
    /// Indexed by parameter value.
    pub buckets: Vec<Bucket>,
    pub audited: u64,
}

#[inline]
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

const CHUNK: u64 = 1 << 14;

/// Scans every edge mask of order `n`. `classify` maps a graph to its class
/// index or `None` to skip it. The result does not depend on `workers`.
pub(crate) fn scan<C>(n: usize, opts: &ScanOptions, objective: Objective, classify: C) -> Result<ScanResult, VerifyError>
where
    C: Fn(&Graph) -> Option<usize> + Sync,
{
    opts.check(n)?;
    let masks = 1u64 << pair_count(n);
    let chunks = masks.div_ceil(CHUNK);
    let workers = (opts.workers.max(1) as u64).min(chunks) as usize;
    let threshold = if opts.audit_rate >= 1.0 {
        u64::MAX
    } else {
        (opts.audit_rate.max(0.0) * u64::MAX as f64) as u64
    };
    let salt = (n as u64) << 56;
    log::info!("scanning order {n}: {masks} edge masks, {workers} worker(s)");

    let work = |worker: usize| -> Result<ScanResult, VerifyError> {
        let mut local = ScanResult { buckets: vec![Bucket::default(); n + 1], audited: 0 };
        let mut chunk = worker as u64;
        while chunk < chunks {
            let start = chunk * CHUNK;
            for mask in start..(start + CHUNK).min(masks) {
                let g = Graph::from_edge_mask_unchecked(n, mask);
                let Some(class) = classify(&g) else { continue };
                let value = total_expansion(&g);
                if threshold > 0 && splitmix64(mask ^ salt) <= threshold {
                    local.audited += 1;
                    let oracle = total_subset_oracle(&g)?;
                    if oracle != value {
                        return Err(VerifyError::AuditMismatch { mask, expansion: value, oracle });
                    }
                }
                local.buckets[class].offer(objective, value, mask);
            }
            chunk += workers as u64;
        }
        Ok(local)
    };

    let partials: Vec<Result<ScanResult, VerifyError>> = if workers == 1 {
        vec![work(0)]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers).map(|w| s.spawn(move || work(w))).collect();
            handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
        })
    };

    let mut total = ScanResult { buckets: vec![Bucket::default(); n + 1], audited: 0 };
    for partial in partials {
        let partial = partial?;
        total.audited += partial.audited;
        for (into, from) in total.buckets.iter_mut().zip(partial.buckets) {
            into.merge(objective, from);
        }
    }
    for b in &mut total.buckets {
        b.masks.sort_unstable();
    }
    log::debug!("order {n}: {} graphs audited", total.audited);
    Ok(total)
}

/// Distinct graphs among `masks` up to isomorphism, as canonically relabeled
/// graph6 strings sorted by canonical form.
pub(crate) fn distinct_graphs(n: usize, masks: &[u64]) -> Result<Vec<String>, VerifyError> {
    let mut seen = BTreeMap::new();
    for &m in masks {
        let g = Graph::from_edge_mask_unchecked(n, m);
        let (form, relabeled) = canonical_labeling(&g)?;
        seen.entry(form).or_insert(relabeled);
    }
    Ok(seen.values().map(encode_graph6).collect())
}

/// The family member a class is compared against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRef {
    pub family: FamilyId,
    pub param: usize,
    pub graph6: String,
}

/// Certificate for one class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub spec: ClassSpec,
    /// Outside the published parameter range; recorded without pass/fail meaning.
    pub extension: bool,
    pub class_size_labeled: u64,
    pub max_value: Option<u64>,
    pub maximizers: Vec<String>,
    pub unique_up_to_iso: bool,
    pub construction: Option<ConstructionRef>,
    pub construction_value: Option<u64>,
    pub construction_in_class: bool,
    pub matches_construction: bool,
    /// Graphs recounted by the subset sweep during the scan.
    pub audited: u64,
    pub convention_notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Published range, unique maximizer equal to the construction.
    Certified,
    /// Published range, but not unique or not the construction.
    Failed,
    /// Extension or known anomaly; outcome recorded only.
    Recorded,
    Empty,
}

impl TheoremReport {
    pub fn verdict(&self) -> Verdict {
        if self.class_size_labeled == 0 {
            Verdict::Empty
        } else if self.extension || self.spec.theorem.is_bridge_anomaly(self.spec.n, self.spec.param) {
            Verdict::Recorded
        } else if self.unique_up_to_iso && self.matches_construction {
            Verdict::Certified
        } else {
            Verdict::Failed
        }
    }
}

fn build_report(spec: ClassSpec, bucket: &Bucket, audited: u64) -> Result<TheoremReport, VerifyError> {
    let ClassSpec { theorem, n, param } = spec;
    let maximizers = distinct_graphs(n, &bucket.masks)?;
    let unique = maximizers.len() == 1;
    let mut notes = Vec::new();
    let extension = spec.is_extension();
    if extension {
        notes.push(format!("extension: {theorem} = {param} lies outside the published range"));
    }
    if bucket.count == 0 {
        notes.push("class is empty".to_string());
    }
    if matches!(theorem, Theorem::VertexConnectivity | Theorem::EdgeConnectivity) {
        if param == n - 1 {
            notes.push(format!("complete-graph convention: K_{n} is assigned connectivity {}", n - 1));
        }
        if param == 0 {
            notes.push("disconnected graphs are assigned connectivity 0".to_string());
        }
    }

    let (construction, construction_value, in_class, matches) = match theorem.construction(n, param) {
        None => {
            notes.push(format!("no construction is defined for {theorem} = {param} at order {n}"));
            (None, None, false, false)
        }
        Some((family, fparam)) => {
            let g = constructions::build(family, n, fparam)?;
            let value = total_expansion(&g);
            let actual = theorem.parameter(&g);
            let in_class = actual == param;
            if !in_class {
                notes.push(format!(
                    "construction {family}({n},{fparam}) has {theorem} = {actual}, so it lies outside the class"
                ));
            }
            let matches = unique && in_class && {
                let target = canonical_form(&g)?;
                let rep = Graph::from_edge_mask_unchecked(n, bucket.masks[0]);
                canonical_form(&rep)? == target
            };
            let reference = ConstructionRef { family, param: fparam, graph6: encode_graph6(&g) };
            (Some(reference), Some(value), in_class, matches)
        }
    };

    Ok(TheoremReport {
        spec,
        extension,
        class_size_labeled: bucket.count,
        max_value: bucket.best,
        maximizers,
        unique_up_to_iso: unique,
        construction,
        construction_value,
        construction_in_class: in_class,
        matches_construction: matches,
        audited,
        convention_notes: notes,
    })
}

/// Certifies one class by a full scan.
pub fn certify(spec: ClassSpec, opts: &ScanOptions) -> Result<TheoremReport, VerifyError> {
    let spec = ClassSpec::new(spec.theorem, spec.n, spec.param)?;
    let result = scan(spec.n, opts, Objective::Max, |g| {
        (spec.theorem.parameter(g) == spec.param).then_some(spec.param)
    })?;
    build_report(spec, &result.buckets[spec.param], result.audited)
}

/// Which parameter values a grid covers at each order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamSelection {
    /// The published range (including the bridges anomaly cell).
    Published,
    /// Every admissible value.
    All,
    Explicit(Vec<usize>),
}

impl ParamSelection {
    fn values(&self, theorem: Theorem, n: usize) -> Vec<usize> {
        match self {
            ParamSelection::Published => theorem.published_range(n).collect(),
            ParamSelection::All => theorem.admissible(n).collect(),
            ParamSelection::Explicit(v) => v.iter().copied().filter(|p| theorem.admissible(n).contains(p)).collect(),
        }
    }
}

/// Certifies every selected class for each order, one scan per order.
pub fn certify_grid(
    theorem: Theorem,
    orders: RangeInclusive<usize>,
    params: &ParamSelection,
    opts: &ScanOptions,
) -> Result<Vec<TheoremReport>, VerifyError> {
    let mut reports = Vec::new();
    for n in orders {
        let wanted = params.values(theorem, n);
        if wanted.is_empty() {
            continue;
        }
        let result = scan(n, opts, Objective::Max, |g| Some(theorem.parameter(g)))?;
        for param in wanted {
            let spec = ClassSpec::new(theorem, n, param)?;
            // audits are shared by every cell of one scan
            reports.push(build_report(spec, &result.buckets[param], result.audited)?);
        }
    }
    Ok(reports)
}

/// Aggregate CSV: `theorem,n,param,max,unique,matches`.
pub fn reports_to_csv(reports: &[TheoremReport]) -> String {
    let mut out = String::from("theorem,n,param,max,unique,matches\n");
    for r in reports {
        let max = r.max_value.map(|v| v.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.spec.theorem, r.spec.n, r.spec.param, max, r.unique_up_to_iso, r.matches_construction
        ));
    }
    out
}

/// One JSON object per line.
pub fn reports_to_json_lines(reports: &[TheoremReport]) -> String {
    reports
        .iter()
        .map(|r| serde_json::to_string(r).expect("reports serialize") + "\n")
        .collect()
}
