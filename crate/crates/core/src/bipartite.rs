//! Augmenting paths for bipartite multigraphs with |f(x, L)| ≥ deg(x).
//!
//! With α = min A(φ, x) and β = min A(φ, y) for the blank edge e = xy, the
//! αβ-path from y always arrives at x's side of the bipartition on an
//! α-edge. Since α is missing at x, the path cannot end at x, so the path
//! conditions hold without any fan.

use crate::chain::{alternating_path, Chain, PathChain};
use crate::coloring::PartialColoring;
use crate::error::{Error, Result};
use crate::graph::EdgeId;

pub fn koenig_path(phi: &PartialColoring<'_>, e: EdgeId) -> Result<PathChain> {
    let g = phi.graph();
    let sides = g.bipartition().ok_or(Error::NotBipartite)?;
    if !phi.is_blank(e) {
        return Err(Error::EdgeNotBlank(e));
    }
    let (u, v) = g.endpoints(e);
    let (x, y) = (u.min(v), u.max(v));
    let alpha = *phi
        .available(x)
        .first()
        .ok_or(Error::AvailabilityEmpty(x))?;
    let beta = *phi
        .available(y)
        .first()
        .ok_or(Error::AvailabilityEmpty(y))?;
    if alpha == beta {
        return Ok(PathChain {
            chain: Chain::single(e),
            vertices: vec![x, y],
            alpha,
            beta,
        });
    }
    let path = alternating_path(phi, e, x, alpha, beta)?;
    let x_side = sides.side(x);
    for (i, &edge) in path.chain.edges().iter().enumerate().skip(1) {
        let arrives = path.vertices[i + 1];
        if sides.side(arrives) == x_side && phi.color(edge) != Some(alpha) {
            return Err(Error::LemmaViolation(format!(
                "edge {edge} enters x's side without color α"
            )));
        }
    }
    if path.v_end() == x {
        return Err(Error::LemmaViolation("bipartite path returned to x".into()));
    }
    Ok(path)
}
