//! Partial list edge-colorings with incrementally maintained used/available
//! sets, and the potential Φ = (A, D) that certifies progress.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::lists::{Color, ColorSet, ListAssignment};

/// Φ(G, φ) = (A(G, φ), D(G, φ)), ordered lexicographically.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct Potential {
    /// Σ_x |A(φ, x)|
    pub a: usize,
    /// Σ_x deg(x) · |E(x) ∩ U_φ|
    pub d: usize,
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.d)
    }
}

/// A discrepancy found by [`PartialColoring::verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finding {
    Improper {
        vertex: VertexId,
        color: Color,
        edges: (EdgeId, EdgeId),
    },
    NotInList {
        edge: EdgeId,
        color: Color,
    },
    CacheMismatch(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub findings: Vec<Finding>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.findings.is_empty()
    }
}

pub struct PartialColoring<'a> {
    graph: &'a Multigraph,
    lists: &'a ListAssignment,
    assignment: Vec<Option<Color>>,
    // U(φ, x), keyed by color, pointing at the unique edge carrying it
    used: Vec<BTreeMap<Color, EdgeId>>,
    available: Vec<ColorSet>,
    uncolored: BTreeSet<EdgeId>,
    a_total: usize,
    d_total: usize,
    ops: AtomicU64,
}

impl Clone for PartialColoring<'_> {
    fn clone(&self) -> Self {
        PartialColoring {
            graph: self.graph,
            lists: self.lists,
            assignment: self.assignment.clone(),
            used: self.used.clone(),
            available: self.available.clone(),
            uncolored: self.uncolored.clone(),
            a_total: self.a_total,
            d_total: self.d_total,
            ops: AtomicU64::new(self.ops()),
        }
    }
}

impl fmt::Debug for PartialColoring<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartialColoring")
            .field("assignment", &self.assignment)
            .field("potential", &self.potential())
            .finish()
    }
}

impl<'a> PartialColoring<'a> {
    /// Every edge blank; A(φ, x) = f(x, L).
    pub fn blank(graph: &'a Multigraph, lists: &'a ListAssignment) -> Self {
        let available: Vec<ColorSet> = graph.vertices().map(|x| lists.common(x).clone()).collect();
        let a_total = available.iter().map(BTreeSet::len).sum();
        let d_total = graph
            .edges()
            .map(|e| {
                let (u, v) = graph.endpoints(e);
                graph.degree(u) + graph.degree(v)
            })
            .sum();
        PartialColoring {
            graph,
            lists,
            assignment: vec![None; graph.edge_count()],
            used: vec![BTreeMap::new(); graph.vertex_count()],
            available,
            uncolored: graph.edges().collect(),
            a_total,
            d_total,
            ops: AtomicU64::new(0),
        }
    }

    /// Builds a coloring from per-edge colors, checking properness and lists.
    pub fn from_assignment(
        graph: &'a Multigraph,
        lists: &'a ListAssignment,
        colors: &[Option<Color>],
    ) -> Result<Self> {
        if colors.len() != graph.edge_count() {
            return Err(Error::ListCountMismatch {
                got: colors.len(),
                expected: graph.edge_count(),
            });
        }
        let mut phi = Self::blank(graph, lists);
        for (i, c) in colors.iter().enumerate() {
            if let Some(c) = c {
                phi.assign(EdgeId(i), *c)?;
            }
        }
        Ok(phi)
    }

    pub fn graph(&self) -> &'a Multigraph {
        self.graph
    }

    pub fn lists(&self) -> &'a ListAssignment {
        self.lists
    }

    pub fn color(&self, e: EdgeId) -> Option<Color> {
        self.assignment[e.0]
    }

    pub fn is_blank(&self, e: EdgeId) -> bool {
        self.assignment[e.0].is_none()
    }

    pub fn assignment(&self) -> &[Option<Color>] {
        &self.assignment
    }

    pub fn uncolored(&self) -> &BTreeSet<EdgeId> {
        &self.uncolored
    }

    pub fn is_total(&self) -> bool {
        self.uncolored.is_empty()
    }

    /// U(φ, x) in ascending order.
    pub fn used(&self, x: VertexId) -> impl Iterator<Item = Color> + '_ {
        self.used[x.0].keys().copied()
    }

    pub fn is_used(&self, x: VertexId, c: Color) -> bool {
        self.tick(1);
        self.used[x.0].contains_key(&c)
    }

    /// The edge at `x` colored `c`, if any. Unique by properness.
    pub fn edge_with_color(&self, x: VertexId, c: Color) -> Option<EdgeId> {
        self.tick(1);
        self.used[x.0].get(&c).copied()
    }

    /// A(φ, x) = f(x, L) \ U(φ, x).
    pub fn available(&self, x: VertexId) -> &ColorSet {
        &self.available[x.0]
    }

    pub fn is_available(&self, x: VertexId, c: Color) -> bool {
        self.tick(1);
        self.available[x.0].contains(&c)
    }

    pub fn potential(&self) -> Potential {
        Potential {
            a: self.a_total,
            d: self.d_total,
        }
    }

    /// Elementary set operations performed since the last reset.
    pub fn ops(&self) -> u64 {
        self.ops.load(Ordering::Relaxed)
    }

    pub fn reset_ops(&self) {
        self.ops.store(0, Ordering::Relaxed);
    }

    pub(crate) fn tick(&self, n: u64) {
        self.ops.fetch_add(n, Ordering::Relaxed);
    }

    pub fn assign(&mut self, e: EdgeId, c: Color) -> Result<()> {
        self.tick(1);
        if self.assignment[e.0].is_some() {
            return Err(Error::EdgeNotBlank(e));
        }
        if !self.lists.list(e).contains(&c) {
            return Err(Error::ColorNotInList { edge: e, color: c });
        }
        let (u, v) = self.graph.endpoints(e);
        for x in [u, v] {
            if self.used[x.0].contains_key(&c) {
                return Err(Error::ImproperAssignment {
                    edge: e,
                    color: c,
                    vertex: x,
                });
            }
        }
        for x in [u, v] {
            self.used[x.0].insert(c, e);
            if self.available[x.0].remove(&c) {
                self.a_total -= 1;
            }
        }
        self.assignment[e.0] = Some(c);
        self.uncolored.remove(&e);
        self.d_total -= self.graph.degree(u) + self.graph.degree(v);
        Ok(())
    }

    pub fn unassign(&mut self, e: EdgeId) -> Result<Color> {
        self.tick(1);
        let c = self.assignment[e.0].take().ok_or(Error::EdgeBlank(e))?;
        let (u, v) = self.graph.endpoints(e);
        for x in [u, v] {
            self.used[x.0].remove(&c);
            if self.lists.common(x).contains(&c) {
                self.available[x.0].insert(c);
                self.a_total += 1;
            }
        }
        self.uncolored.insert(e);
        self.d_total += self.graph.degree(u) + self.graph.degree(v);
        Ok(c)
    }

    /// The smallest color that can be put on the blank edge `e` right away:
    /// min of (A(φ,x) \ U(φ,y)) ∪ (A(φ,y) \ U(φ,x)).
    pub fn is_happy(&self, e: EdgeId) -> Result<Option<Color>> {
        if !self.is_blank(e) {
            return Err(Error::EdgeNotBlank(e));
        }
        let (x, y) = self.graph.endpoints(e);
        let pick = |a: VertexId, b: VertexId| {
            self.available[a.0]
                .iter()
                .inspect(|_| self.tick(1))
                .find(|c| !self.used[b.0].contains_key(c))
                .copied()
        };
        Ok(match (pick(x, y), pick(y, x)) {
            (Some(p), Some(q)) => Some(p.min(q)),
            (p, q) => p.or(q),
        })
    }

    /// Φ recomputed from the assignment alone.
    pub fn recompute_potential(&self) -> Potential {
        let g = self.graph;
        let mut a = 0;
        let mut d = 0;
        for x in g.vertices() {
            let used: BTreeSet<Color> = g
                .incident(x)
                .iter()
                .filter_map(|&e| self.color(e))
                .collect();
            a += self.lists.common(x).difference(&used).count();
            d += g.degree(x) * g.incident(x).iter().filter(|&&e| self.is_blank(e)).count();
        }
        Potential { a, d }
    }

    /// Rechecks properness, list membership and every cache from scratch.
    pub fn verify(&self) -> VerifyReport {
        let g = self.graph;
        let mut findings = Vec::new();
        for e in g.edges() {
            if let Some(c) = self.color(e) {
                if !self.lists.list(e).contains(&c) {
                    findings.push(Finding::NotInList { edge: e, color: c });
                }
            }
        }
        for x in g.vertices() {
            let mut seen: BTreeMap<Color, EdgeId> = BTreeMap::new();
            for &e in g.incident(x) {
                let Some(c) = self.color(e) else { continue };
                if let Some(&prev) = seen.get(&c) {
                    findings.push(Finding::Improper {
                        vertex: x,
                        color: c,
                        edges: (prev, e),
                    });
                } else {
                    seen.insert(c, e);
                }
            }
            if seen != self.used[x.0] {
                findings.push(Finding::CacheMismatch(format!("used set at vertex {x}")));
            }
            let avail: ColorSet = self
                .lists
                .common(x)
                .iter()
                .filter(|c| !seen.contains_key(c))
                .copied()
                .collect();
            if avail != self.available[x.0] {
                findings.push(Finding::CacheMismatch(format!(
                    "available set at vertex {x}"
                )));
            }
        }
        let blank: BTreeSet<EdgeId> = g.edges().filter(|&e| self.is_blank(e)).collect();
        if blank != self.uncolored {
            findings.push(Finding::CacheMismatch("uncolored edge set".into()));
        }
        if self.recompute_potential() != self.potential() {
            findings.push(Finding::CacheMismatch("potential".into()));
        }
        VerifyReport { findings }
    }

    #[cfg(test)]
    pub(crate) fn corrupt_available(&mut self, x: VertexId, c: Color) {
        self.available[x.0].insert(c);
    }
}
