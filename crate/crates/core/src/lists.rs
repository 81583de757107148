//! List assignments and the per-vertex common-color sets f(x, L).

use std::collections::BTreeSet;
use std::fmt;
use std::num::NonZeroU32;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId};

/// A color. Always positive; "blank" is represented by `None` wherever an
/// edge may be uncolored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Color(NonZeroU32);

impl Color {
    pub fn new(value: u32) -> Option<Color> {
        NonZeroU32::new(value).map(Color)
    }

    pub fn get(self) -> u32 {
        self.0.get()
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type ColorSet = BTreeSet<Color>;

/// `{1, ..., k}`.
pub fn palette(k: usize) -> ColorSet {
    (1..=k as u32).filter_map(Color::new).collect()
}

/// Which local list-size guarantee an instance is meant to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    /// ⌊3·deg(x)/2⌋
    Shannon,
    /// deg(x) + μ(x)
    Vizing,
    /// deg(x), bipartite graphs only
    Koenig,
    /// Lists are supplied by the caller.
    Explicit,
}

impl BoundMode {
    /// Required |f(x, L)| at `x`, or `None` for explicit lists.
    pub fn bound(self, g: &Multigraph, x: VertexId) -> Option<usize> {
        let deg = g.degree(x);
        match self {
            BoundMode::Shannon => Some(deg + deg / 2),
            BoundMode::Vizing => Some(deg + g.mu_vertex(x)),
            BoundMode::Koenig => Some(deg),
            BoundMode::Explicit => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundMode::Shannon => "shannon",
            BoundMode::Vizing => "vizing",
            BoundMode::Koenig => "koenig",
            BoundMode::Explicit => "explicit",
        }
    }
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "shannon" => Ok(BoundMode::Shannon),
            "vizing" => Ok(BoundMode::Vizing),
            "koenig" | "konig" => Ok(BoundMode::Koenig),
            "explicit" => Ok(BoundMode::Explicit),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// Per-edge color lists together with the cached sets f(x, L).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<ColorSet>,
    common: Vec<ColorSet>,
}

impl ListAssignment {
    pub fn new(g: &Multigraph, lists: Vec<ColorSet>) -> Result<Self> {
        if lists.len() != g.edge_count() {
            return Err(Error::ListCountMismatch {
                got: lists.len(),
                expected: g.edge_count(),
            });
        }
        let common = g
            .vertices()
            .map(|x| intersect_incident(g, &lists, x))
            .collect();
        Ok(ListAssignment { lists, common })
    }

    /// Every edge gets the same list.
    pub fn uniform(g: &Multigraph, list: &ColorSet) -> Self {
        Self::new(g, vec![list.clone(); g.edge_count()]).expect("one list per edge")
    }

    pub fn list(&self, e: EdgeId) -> &ColorSet {
        &self.lists[e.0]
    }

    pub fn lists(&self) -> &[ColorSet] {
        &self.lists
    }

    /// f(x, L); empty for isolated vertices.
    pub fn common(&self, x: VertexId) -> &ColorSet {
        &self.common[x.0]
    }

    pub fn max_common_size(&self) -> usize {
        self.common.iter().map(BTreeSet::len).max().unwrap_or(0)
    }
}

fn intersect_incident(g: &Multigraph, lists: &[ColorSet], x: VertexId) -> ColorSet {
    let mut edges = g.incident(x).iter();
    let Some(first) = edges.next() else {
        return ColorSet::new();
    };
    let mut acc = lists[first.0].clone();
    for e in edges {
        acc.retain(|c| lists[e.0].contains(c));
    }
    acc
}

/// f(x, L).
pub fn common_colors(l: &ListAssignment, x: VertexId) -> &ColorSet {
    l.common(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexBound {
    pub vertex: VertexId,
    pub required: usize,
    pub actual: usize,
}

impl VertexBound {
    pub fn ok(&self) -> bool {
        self.actual >= self.required
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub mode: BoundMode,
    pub vertices: Vec<VertexBound>,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.vertices.iter().all(VertexBound::ok)
    }

    pub fn first_violation(&self) -> Option<VertexId> {
        self.vertices.iter().find(|v| !v.ok()).map(|v| v.vertex)
    }
}

fn require_concrete(g: &Multigraph, mode: BoundMode) -> Result<()> {
    match mode {
        BoundMode::Explicit => Err(Error::PreconditionViolated(
            "explicit mode has no bound function".into(),
        )),
        BoundMode::Koenig if g.bipartition().is_none() => Err(Error::NotBipartite),
        _ => Ok(()),
    }
}

/// Compares |f(x, L)| against the mode's bound at every vertex.
pub fn check_bound(g: &Multigraph, l: &ListAssignment, mode: BoundMode) -> Result<BoundReport> {
    require_concrete(g, mode)?;
    let vertices = g
        .vertices()
        .map(|x| VertexBound {
            vertex: x,
            required: mode.bound(g, x).unwrap_or(0),
            actual: l.common(x).len(),
        })
        .collect();
    Ok(BoundReport { mode, vertices })
}

/// L(e) = {1, ..., max(bound(u), bound(v))}.
pub fn generate_from_bounds(g: &Multigraph, mode: BoundMode) -> Result<ListAssignment> {
    require_concrete(g, mode)?;
    let lists = g
        .edges()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            let top = mode.bound(g, u).max(mode.bound(g, v)).unwrap_or(0);
            palette(top)
        })
        .collect();
    ListAssignment::new(g, lists)
}

/// Largest color any edge may receive under the bound-generated lists.
pub fn edge_bound(g: &Multigraph, mode: BoundMode, e: EdgeId) -> Option<usize> {
    let (u, v) = g.endpoints(e);
    Some(mode.bound(g, u)?.max(mode.bound(g, v)?))
}

/// Finite-list normalization. Each vertex keeps the `min(|f(x,L)|, ell)`
/// smallest colors of f(x, L), and each edge gets the union of its two
/// endpoints' kept sets.
pub fn truncate(
    g: &Multigraph,
    l: &ListAssignment,
    c: &[usize],
    ell: usize,
) -> Result<ListAssignment> {
    if c.len() != g.vertex_count() {
        return Err(Error::PreconditionViolated(format!(
            "expected {} vertex targets, got {}",
            g.vertex_count(),
            c.len()
        )));
    }
    for x in g.vertices() {
        if c[x.0] > ell || l.common(x).len() < c[x.0] {
            return Err(Error::BoundViolation(x));
        }
    }
    let kept: Vec<ColorSet> = g
        .vertices()
        .map(|x| l.common(x).iter().take(ell).copied().collect())
        .collect();
    let lists = g
        .edges()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            kept[u.0].union(&kept[v.0]).copied().collect()
        })
        .collect();
    ListAssignment::new(g, lists)
}
