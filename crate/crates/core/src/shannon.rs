//! Two-edge fans for the Shannon-local bound |f(x, L)| ≥ ⌊3·deg(x)/2⌋.

use crate::chain::{alternating_path, apply_shift, Chain, PathChain};
use crate::coloring::PartialColoring;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::lists::Color;

/// A chain whose edges all contain `pivot`. `leaves[i]` is the other end of
/// edge i; leaves may repeat in a multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanChain {
    pub chain: Chain,
    pub pivot: VertexId,
    pub leaves: Vec<VertexId>,
}

impl FanChain {
    pub(crate) fn new(g: &Multigraph, pivot: VertexId, edges: Vec<EdgeId>) -> Self {
        let leaves = edges.iter().map(|&e| g.other_end(e, pivot)).collect();
        FanChain {
            chain: Chain::from_edges(edges),
            pivot,
            leaves,
        }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn v_start(&self) -> VertexId {
        self.leaves[0]
    }

    pub fn v_end(&self) -> VertexId {
        *self.leaves.last().expect("fans are nonempty")
    }

    pub fn prefix(&self, j: usize) -> FanChain {
        FanChain {
            chain: self.chain.prefix(j),
            pivot: self.pivot,
            leaves: self.leaves[..j].to_vec(),
        }
    }
}

/// Orders the endpoints of `e` so that deg(x) ≤ deg(y); ties go to the
/// smaller vertex index.
pub fn pivot_endpoints(g: &Multigraph, e: EdgeId) -> (VertexId, VertexId) {
    let (u, v) = g.endpoints(e);
    if (g.degree(u), u) <= (g.degree(v), v) {
        (u, v)
    } else {
        (v, u)
    }
}

fn first_missing(phi: &PartialColoring<'_>, from: VertexId, at: VertexId) -> Option<Color> {
    phi.available(from)
        .iter()
        .inspect(|_| phi.tick(1))
        .find(|&&c| !phi.is_used(at, c))
        .copied()
}

/// Either `(e)` when some color of A(φ, y) is missing at x, or `(e, f)` with
/// f the x-edge colored min A(φ, y).
pub fn shannon_fan(phi: &PartialColoring<'_>, e: EdgeId) -> Result<FanChain> {
    if !phi.is_blank(e) {
        return Err(Error::EdgeNotBlank(e));
    }
    let g = phi.graph();
    let (x, y) = pivot_endpoints(g, e);
    if first_missing(phi, y, x).is_some() {
        return Ok(FanChain::new(g, x, vec![e]));
    }
    let eta = *phi
        .available(y)
        .first()
        .ok_or(Error::AvailabilityEmpty(y))?;
    let f = phi
        .edge_with_color(x, eta)
        .expect("every color available at y is used at x here");
    Ok(FanChain::new(g, x, vec![e, f]))
}

/// Why shifting a two-edge fan lowers Φ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContentKind {
    /// η ∉ f(z, L): y loses η from its available set and nobody gains it.
    ListMiss,
    /// η ∈ f(z, L) but deg(z) < deg(y): A unchanged, D drops.
    DegreeDrop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShannonOutcome {
    HappyEdge {
        color: Color,
    },
    HappyFan {
        fan: FanChain,
        color: Color,
    },
    ContentFan {
        fan: FanChain,
        kind: ContentKind,
    },
    /// P(e; φ, αβ) meets the path conditions under φ itself.
    PathUnderPhi {
        path: PathChain,
    },
    /// P(f; ψ, αβ) meets them under ψ = Shift(φ, fan).
    PathUnderPsi {
        fan: FanChain,
        path: PathChain,
    },
}

impl ShannonOutcome {
    pub fn branch(&self) -> &'static str {
        match self {
            ShannonOutcome::HappyEdge { .. } => "happy-edge",
            ShannonOutcome::HappyFan { .. } => "case1",
            ShannonOutcome::ContentFan {
                kind: ContentKind::ListMiss,
                ..
            } => "case2",
            ShannonOutcome::ContentFan {
                kind: ContentKind::DegreeDrop,
                ..
            } => "case3",
            ShannonOutcome::PathUnderPhi { .. } => "path-phi",
            ShannonOutcome::PathUnderPsi { .. } => "path-psi",
        }
    }
}

/// Runs the fan construction and decides which of the four situations
/// applies. `phi` is borrowed mutably to evaluate the shifted coloring but
/// is left unchanged.
pub fn classify_shannon(phi: &mut PartialColoring<'_>, e: EdgeId) -> Result<ShannonOutcome> {
    let fan = shannon_fan(phi, e)?;
    let (x, y) = (fan.pivot, fan.v_start());
    if fan.len() == 1 {
        let color = first_missing(phi, y, x).expect("single-edge fan is happy");
        return Ok(ShannonOutcome::HappyEdge { color });
    }
    let f = fan.chain.end();
    let z = fan.v_end();
    let eta = phi.color(f).expect("fan edge is colored");

    if first_missing(phi, z, x).is_some() {
        let undo = apply_shift(phi, &fan.chain)?;
        let color = phi.is_happy(f);
        undo.revert(phi);
        return match color? {
            Some(color) => Ok(ShannonOutcome::HappyFan { fan, color }),
            None => Err(Error::LemmaViolation(
                "fan end not happy although a color at z is missing at x".into(),
            )),
        };
    }
    if !phi.lists().common(z).contains(&eta) {
        return Ok(ShannonOutcome::ContentFan {
            fan,
            kind: ContentKind::ListMiss,
        });
    }
    let g = phi.graph();
    if g.degree(z) < g.degree(y) {
        return Ok(ShannonOutcome::ContentFan {
            fan,
            kind: ContentKind::DegreeDrop,
        });
    }

    // A(φ, y) ∪ A(φ, z) ⊆ U(φ, x) and deg(z) ≥ deg(y) ≥ deg(x): the counting
    // bound forces a common available color at y and z.
    let beta = phi
        .available(y)
        .iter()
        .inspect(|_| phi.tick(1))
        .find(|c| phi.is_available(z, **c))
        .copied()
        .ok_or_else(|| {
            Error::LemmaViolation(format!("A({y}) and A({z}) are disjoint in the final case"))
        })?;
    let alpha = *phi
        .available(x)
        .first()
        .ok_or(Error::AvailabilityEmpty(x))?;

    let path = alternating_path(phi, e, x, alpha, beta)?;
    if path.meets_path_conditions(phi) {
        return Ok(ShannonOutcome::PathUnderPhi { path });
    }
    let undo = apply_shift(phi, &fan.chain)?;
    let candidate =
        alternating_path(phi, f, x, alpha, beta).map(|p| p.meets_path_conditions(phi).then_some(p));
    undo.revert(phi);
    match candidate {
        Ok(Some(path)) => Ok(ShannonOutcome::PathUnderPsi { fan, path }),
        _ => Err(Error::LemmaViolation(
            "neither path candidate meets the path conditions".into(),
        )),
    }
}
