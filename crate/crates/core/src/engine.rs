//! The top-level coloring loop.
//!
//! Starting from the blank coloring, each step takes the smallest uncolored
//! edge, builds the chain for the chosen bound, and either colors an edge
//! (a happy step) or shifts colors so that Φ strictly drops (a content step).
//! Every step is checked against that contract, and the number of content
//! steps is capped by the a priori range of Φ.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bipartite::koenig_path;
use crate::chain::{apply_shift, resolve_path, Chain, PathChain, ResolveOutcome};
use crate::coloring::{PartialColoring, Potential};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph};
use crate::lists::{check_bound, BoundMode, ListAssignment};
use crate::shannon::{classify_shannon, ShannonOutcome};
use crate::vizing::{classify_vizing, vizing_pivot, VizingOutcome};

/// Which chain construction to run. Each one is guaranteed to finish when
/// the lists meet the matching bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Shannon,
    Vizing,
    Koenig,
}

impl Algorithm {
    pub fn bound_mode(self) -> BoundMode {
        match self {
            Algorithm::Shannon => BoundMode::Shannon,
            Algorithm::Vizing => BoundMode::Vizing,
            Algorithm::Koenig => BoundMode::Koenig,
        }
    }

    pub fn from_mode(mode: BoundMode) -> Option<Algorithm> {
        match mode {
            BoundMode::Shannon => Some(Algorithm::Shannon),
            BoundMode::Vizing => Some(Algorithm::Vizing),
            BoundMode::Koenig => Some(Algorithm::Koenig),
            BoundMode::Explicit => None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bound_mode().fmt(f)
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mode: BoundMode = s.parse()?;
        Algorithm::from_mode(mode).ok_or_else(|| "explicit is not an algorithm".to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceKind {
    HappyEdge,
    FanShift,
    PathShiftHappy,
    PathShiftContent,
}

/// One applied shift or coloring. A single step may emit two records (a fan
/// shift followed by a path resolution or an end-edge coloring).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: usize,
    pub kind: TraceKind,
    pub branch: String,
    pub chain: Vec<usize>,
    pub before: Potential,
    pub after: Potential,
}

/// What one call to [`augment_once`] did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepReport {
    pub happy: bool,
    pub before: Potential,
    pub after: Potential,
    pub fan_shifts: usize,
    pub path_shifts: usize,
    pub max_chain_length: usize,
    pub records: Vec<TraceRecord>,
    pub ops: u64,
}

struct StepLog {
    step: usize,
    records: Vec<TraceRecord>,
    fan_shifts: usize,
    path_shifts: usize,
    max_chain_length: usize,
}

impl StepLog {
    fn push(
        &mut self,
        kind: TraceKind,
        branch: &str,
        chain: &Chain,
        before: Potential,
        after: Potential,
    ) {
        self.max_chain_length = self.max_chain_length.max(chain.len());
        self.records.push(TraceRecord {
            step: self.step,
            kind,
            branch: branch.to_string(),
            chain: chain.edges().iter().map(|e| e.0).collect(),
            before,
            after,
        });
    }

    fn color_edge(
        &mut self,
        phi: &mut PartialColoring<'_>,
        e: EdgeId,
        c: crate::Color,
        branch: &str,
    ) -> Result<()> {
        let before = phi.potential();
        phi.assign(e, c)?;
        self.push(
            TraceKind::HappyEdge,
            branch,
            &Chain::single(e),
            before,
            phi.potential(),
        );
        Ok(())
    }

    fn shift_fan(
        &mut self,
        phi: &mut PartialColoring<'_>,
        fan: &Chain,
        branch: &str,
    ) -> Result<()> {
        let before = phi.potential();
        apply_shift(phi, fan)?;
        self.fan_shifts += 1;
        self.push(TraceKind::FanShift, branch, fan, before, phi.potential());
        Ok(())
    }

    fn resolve(
        &mut self,
        phi: &mut PartialColoring<'_>,
        path: &PathChain,
        branch: &str,
    ) -> Result<()> {
        let before = phi.potential();
        let outcome = resolve_path(phi, path)?;
        self.path_shifts += 1;
        let kind = match outcome {
            ResolveOutcome::Happy { .. } => TraceKind::PathShiftHappy,
            ResolveOutcome::Content { .. } => TraceKind::PathShiftContent,
        };
        self.max_chain_length = self.max_chain_length.max(path.len());
        self.push(kind, branch, outcome.shifted(), before, phi.potential());
        Ok(())
    }
}

/// One augmentation at the blank edge `e`: afterwards either exactly one
/// more edge is colored, or the blank count is unchanged and Φ dropped.
pub fn augment_once(
    phi: &mut PartialColoring<'_>,
    e: EdgeId,
    algorithm: Algorithm,
    step: usize,
) -> Result<StepReport> {
    if !phi.is_blank(e) {
        return Err(Error::EdgeNotBlank(e));
    }
    let ops_start = phi.ops();
    let before = phi.potential();
    let blanks = phi.uncolored().len();
    let mut log = StepLog {
        step,
        records: Vec::new(),
        fan_shifts: 0,
        path_shifts: 0,
        max_chain_length: 1,
    };

    match algorithm {
        Algorithm::Koenig => {
            let path = koenig_path(phi, e)?;
            log.resolve(phi, &path, "path")?;
        }
        Algorithm::Shannon => {
            let outcome = classify_shannon(phi, e)?;
            let branch = outcome.branch();
            match outcome {
                ShannonOutcome::HappyEdge { color } => log.color_edge(phi, e, color, branch)?,
                ShannonOutcome::HappyFan { fan, color } => {
                    log.shift_fan(phi, &fan.chain, branch)?;
                    log.color_edge(phi, fan.chain.end(), color, branch)?;
                }
                ShannonOutcome::ContentFan { fan, .. } => log.shift_fan(phi, &fan.chain, branch)?,
                ShannonOutcome::PathUnderPhi { path } => log.resolve(phi, &path, branch)?,
                ShannonOutcome::PathUnderPsi { fan, path } => {
                    log.shift_fan(phi, &fan.chain, branch)?;
                    log.resolve(phi, &path, branch)?;
                }
            }
        }
        Algorithm::Vizing => {
            let x = vizing_pivot(phi, e);
            let outcome = classify_vizing(phi, e, x)?;
            let branch = outcome.branch();
            match outcome {
                VizingOutcome::HappyFan { fan, color } => {
                    if fan.len() > 1 {
                        log.shift_fan(phi, &fan.chain, branch)?;
                    }
                    log.color_edge(phi, fan.chain.end(), color, branch)?;
                }
                VizingOutcome::ContentFan { fan, .. } => log.shift_fan(phi, &fan.chain, branch)?,
                VizingOutcome::PathAfterShift { fan, path, .. } => {
                    if fan.len() > 1 {
                        log.shift_fan(phi, &fan.chain, branch)?;
                    }
                    log.resolve(phi, &path, branch)?;
                }
            }
        }
    }

    let after = phi.potential();
    let remaining = phi.uncolored().len();
    let happy = remaining + 1 == blanks;
    if !(after < before) || !(happy || remaining == blanks) {
        return Err(Error::LemmaViolation(format!(
            "step {step} at edge {e}: Φ {before} -> {after}, blanks {blanks} -> {remaining}"
        )));
    }
    Ok(StepReport {
        happy,
        before,
        after,
        fan_shifts: log.fan_shifts,
        path_shifts: log.path_shifts,
        max_chain_length: log.max_chain_length,
        records: log.records,
        ops: phi.ops() - ops_start,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RunStats {
    pub happy_steps: usize,
    pub content_steps: usize,
    pub fan_shifts: usize,
    pub path_shifts: usize,
    /// Φ before the first step and after every step.
    pub potential_trace: Vec<Potential>,
    pub max_chain_length: usize,
    /// Content steps between consecutive happy steps.
    pub content_streaks: Vec<usize>,
    pub content_budget: u64,
    pub max_step_ops: u64,
    pub total_ops: u64,
}

/// n·max|f| + Δ²n²/2: the a priori range of Φ, used as a hard cap on the
/// number of content steps.
pub fn content_budget(g: &Multigraph, l: &ListAssignment) -> u64 {
    let n = g.vertex_count() as u64;
    let delta = g.max_degree() as u64;
    n * l.max_common_size() as u64 + delta * delta * n * n / 2
}

#[derive(Debug, Clone, Default)]
pub struct ColorOptions {
    /// Processing order for blank edges; default is ascending edge id.
    pub order: Option<Vec<EdgeId>>,
    /// Run the full verifier after every k-th step.
    pub verify_every: Option<usize>,
    pub record_trace: bool,
}

#[derive(Debug)]
pub struct Run<'a> {
    pub coloring: PartialColoring<'a>,
    pub stats: RunStats,
    pub trace: Vec<TraceRecord>,
}

impl Run<'_> {
    pub fn colors(&self) -> Vec<crate::Color> {
        self.coloring
            .assignment()
            .iter()
            .map(|c| c.expect("run ends with every edge colored"))
            .collect()
    }
}

pub fn color_graph<'a>(
    g: &'a Multigraph,
    l: &'a ListAssignment,
    algorithm: Algorithm,
) -> Result<Run<'a>> {
    color_graph_with(g, l, algorithm, &ColorOptions::default())
}

pub fn color_graph_with<'a>(
    g: &'a Multigraph,
    l: &'a ListAssignment,
    algorithm: Algorithm,
    options: &ColorOptions,
) -> Result<Run<'a>> {
    let report = check_bound(g, l, algorithm.bound_mode())?;
    if let Some(x) = report.first_violation() {
        return Err(Error::BoundViolation(x));
    }
    let mut phi = PartialColoring::blank(g, l);
    let budget = content_budget(g, l);
    let mut stats = RunStats {
        potential_trace: vec![phi.potential()],
        content_budget: budget,
        ..RunStats::default()
    };
    let mut trace = Vec::new();
    let mut streak = 0;
    let mut step = 0;
    while let Some(e) = next_edge(&phi, options.order.as_deref()) {
        let report = augment_once(&mut phi, e, algorithm, step)?;
        step += 1;
        stats.fan_shifts += report.fan_shifts;
        stats.path_shifts += report.path_shifts;
        stats.max_chain_length = stats.max_chain_length.max(report.max_chain_length);
        stats.max_step_ops = stats.max_step_ops.max(report.ops);
        stats.total_ops += report.ops;
        stats.potential_trace.push(report.after);
        if report.happy {
            stats.happy_steps += 1;
            stats.content_streaks.push(streak);
            streak = 0;
        } else {
            stats.content_steps += 1;
            streak += 1;
            if stats.content_steps as u64 > budget {
                return Err(Error::StepBudgetExceeded { budget });
            }
        }
        if options.record_trace {
            trace.extend(report.records);
        }
        if let Some(k) = options.verify_every {
            if k > 0 && step % k == 0 && !phi.verify().is_ok() {
                return Err(Error::LemmaViolation(format!(
                    "verification failed after step {step}"
                )));
            }
        }
    }
    let check = phi.verify();
    if !check.is_ok() {
        return Err(Error::LemmaViolation(format!(
            "final coloring failed verification: {:?}",
            check.findings
        )));
    }
    Ok(Run {
        coloring: phi,
        stats,
        trace,
    })
}

fn next_edge(phi: &PartialColoring<'_>, order: Option<&[EdgeId]>) -> Option<EdgeId> {
    match order {
        None => phi.uncolored().first().copied(),
        Some(order) => order
            .iter()
            .copied()
            .find(|&e| phi.is_blank(e))
            .or_else(|| phi.uncolored().first().copied()),
    }
}
