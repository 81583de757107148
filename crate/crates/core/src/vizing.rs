//! Multi-edge fans for the Vizing-local bound |f(x, L)| ≥ deg(x) + μ(x).

use std::collections::{BTreeMap, HashMap};

use crate::chain::{alternating_path, apply_shift, PathChain};
use crate::coloring::{PartialColoring, Potential};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId};
use crate::lists::{Color, ColorSet};
use crate::shannon::FanChain;

/// Output of the fan construction: β lies in A(φ, vEnd(fan)) ∩
/// A(φ, vEnd(fan|j)). When `happy` is set, β is missing at the pivot and
/// j = len(fan).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VizingFanResult {
    pub fan: FanChain,
    pub beta: Color,
    pub j: usize,
    pub happy: bool,
}

/// Pivot choice for a blank edge: the endpoint with the smaller index.
pub fn vizing_pivot(phi: &PartialColoring<'_>, e: EdgeId) -> VertexId {
    let (u, v) = phi.graph().endpoints(e);
    u.min(v)
}

/// Grows a fan around `x` starting from the blank edge `e`. Each leaf polls
/// its smallest not-yet-polled available color η; the fan stops when η is
/// missing at x, or when the x-edge colored η is already in the fan.
pub fn vizing_fan(phi: &PartialColoring<'_>, e: EdgeId, x: VertexId) -> Result<VizingFanResult> {
    let g = phi.graph();
    if !phi.is_blank(e) {
        return Err(Error::EdgeNotBlank(e));
    }
    if !g.is_incident(e, x) {
        return Err(Error::PreconditionViolated(format!(
            "pivot {x} is not an endpoint of edge {e}"
        )));
    }
    // β(z) starts as A(φ, z); copied on first poll.
    let mut polled: HashMap<VertexId, ColorSet> = HashMap::new();
    let mut index: BTreeMap<EdgeId, usize> = BTreeMap::new();
    let mut edges = vec![e];
    let mut leaf = g.other_end(e, x);
    index.insert(e, 0);
    let mut k = 0;
    while k < g.degree(x) {
        let pool = polled.entry(leaf).or_insert_with(|| {
            phi.tick(phi.available(leaf).len() as u64);
            phi.available(leaf).clone()
        });
        phi.tick(1);
        let eta = pool.pop_first().ok_or_else(|| {
            Error::LemmaViolation(format!("β({leaf}) ran dry while growing the fan"))
        })?;
        let Some(next) = phi.edge_with_color(x, eta) else {
            return Ok(VizingFanResult {
                fan: FanChain::new(g, x, edges),
                beta: eta,
                j: k + 1,
                happy: true,
            });
        };
        k += 1;
        if let Some(&j) = index.get(&next) {
            debug_assert!(j >= 1 && j < k);
            return Ok(VizingFanResult {
                fan: FanChain::new(g, x, edges),
                beta: eta,
                j,
                happy: false,
            });
        }
        index.insert(next, k);
        edges.push(next);
        leaf = g.other_end(next, x);
    }
    Err(Error::LemmaViolation(format!(
        "fan around {x} exceeded its degree without closing"
    )))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VizingOutcome {
    /// Shift `fan`, then color its end edge with `color`.
    HappyFan { fan: FanChain, color: Color },
    /// Shifting `fan` lowers Φ. `prefix` tells whether this is F|j.
    ContentFan { fan: FanChain, prefix: bool },
    /// After shifting `fan`, `path` meets the path conditions.
    PathAfterShift {
        fan: FanChain,
        path: PathChain,
        prefix: bool,
    },
}

impl VizingOutcome {
    pub fn branch(&self) -> &'static str {
        match self {
            VizingOutcome::HappyFan { .. } => "happy",
            VizingOutcome::ContentFan { prefix: false, .. } => "content-F",
            VizingOutcome::ContentFan { prefix: true, .. } => "content-F'",
            VizingOutcome::PathAfterShift { prefix: false, .. } => "path-psi",
            VizingOutcome::PathAfterShift { prefix: true, .. } => "path-psi'",
        }
    }
}

struct Probe {
    potential: Potential,
    path: Option<PathChain>,
}

/// Shifts `fan`, records Φ and the path candidate from its end edge, then
/// restores `phi`.
fn probe(
    phi: &mut PartialColoring<'_>,
    fan: &FanChain,
    alpha: Option<Color>,
    beta: Color,
) -> Result<Probe> {
    let undo = apply_shift(phi, &fan.chain)?;
    let potential = phi.potential();
    let path = alpha.and_then(|alpha| {
        alternating_path(phi, fan.chain.end(), fan.pivot, alpha, beta)
            .ok()
            .filter(|p| p.meets_path_conditions(phi))
    });
    undo.revert(phi);
    Ok(Probe { potential, path })
}

/// Decides how to use the fan: happy, content (F or F|j), or a path chain
/// under one of the two shifted colorings. `phi` is left unchanged.
pub fn classify_vizing(
    phi: &mut PartialColoring<'_>,
    e: EdgeId,
    x: VertexId,
) -> Result<VizingOutcome> {
    let VizingFanResult {
        fan,
        beta,
        j,
        happy,
    } = vizing_fan(phi, e, x)?;
    if happy {
        return Ok(VizingOutcome::HappyFan { fan, color: beta });
    }
    let before = phi.potential();
    let short = fan.prefix(j);
    let alpha = phi.available(x).first().copied();

    let full = probe(phi, &fan, alpha, beta)?;
    let part = probe(phi, &short, alpha, beta)?;
    if full.potential.a > before.a || part.potential.a > before.a {
        return Err(Error::LemmaViolation(
            "fan shift increased the available-color total".into(),
        ));
    }
    if full.potential < before {
        return Ok(VizingOutcome::ContentFan { fan, prefix: false });
    }
    if part.potential < before {
        return Ok(VizingOutcome::ContentFan {
            fan: short,
            prefix: true,
        });
    }
    if alpha.is_none() {
        return Err(Error::AvailabilityEmpty(x));
    }
    if let Some(path) = full.path {
        return Ok(VizingOutcome::PathAfterShift {
            fan,
            path,
            prefix: false,
        });
    }
    if let Some(path) = part.path {
        return Ok(VizingOutcome::PathAfterShift {
            fan: short,
            path,
            prefix: true,
        });
    }
    Err(Error::LemmaViolation(
        "neither shifted fan yields a path meeting the path conditions".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::shift;
    use crate::graph::Multigraph;
    use crate::lists::{generate_from_bounds, BoundMode, ListAssignment};

    fn c(v: u32) -> Color {
        Color::new(v).unwrap()
    }

    #[test]
    fn blank_digon_is_happy_single_edge() {
        let g = Multigraph::build(2, &[(0, 1), (0, 1)]).unwrap();
        let l = generate_from_bounds(&g, BoundMode::Vizing).unwrap();
        let mut phi = PartialColoring::blank(&g, &l);
        let r = vizing_fan(&phi, EdgeId(0), VertexId(0)).unwrap();
        assert_eq!(r.fan.chain.edges(), &[EdgeId(0)]);
        assert_eq!((r.beta, r.j, r.happy), (c(1), 1, true));
        let out = classify_vizing(&mut phi, EdgeId(0), VertexId(0)).unwrap();
        assert_eq!(out.branch(), "happy");
    }

    /// Pivot x = 0 with leaves 1, 2, 3. e0 = 0-1 blank, e1 = 0-2 colored 1,
    /// e2 = 0-3 colored 2. Vertex 1 has only color 1 available; vertex 2 has
    /// only 2; vertex 3 has only 1 available.
    ///
    /// Hand run: poll y_0 = 1 → η = 1 ∈ U(x), next = e1 (k = 1).
    /// Poll y_1 = 2 → η = 2 ∈ U(x), next = e2 (k = 2).
    /// Poll y_2 = 3 → η = 1 ∈ U(x), next = e1, already index 1 → (F, 1, 1).
    fn looped() -> (Multigraph, ListAssignment) {
        let g = Multigraph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let l = ListAssignment::new(
            &g,
            vec![[c(1)].into(), [c(1), c(2)].into(), [c(1), c(2)].into()],
        )
        .unwrap();
        (g, l)
    }

    #[test]
    fn fan_closes_on_an_earlier_edge() {
        let (g, l) = looped();
        let phi =
            PartialColoring::from_assignment(&g, &l, &[None, Some(c(1)), Some(c(2))]).unwrap();
        let r = vizing_fan(&phi, EdgeId(0), VertexId(0)).unwrap();
        assert_eq!(r.fan.chain.edges(), &[EdgeId(0), EdgeId(1), EdgeId(2)]);
        assert_eq!((r.beta, r.j, r.happy), (c(1), 1, false));
        assert!(phi.is_available(r.fan.v_end(), r.beta));
        assert!(phi.is_available(r.fan.prefix(r.j).v_end(), r.beta));
    }

    #[test]
    fn fan_shifts_never_raise_available_total() {
        let (g, l) = looped();
        let phi =
            PartialColoring::from_assignment(&g, &l, &[None, Some(c(1)), Some(c(2))]).unwrap();
        let r = vizing_fan(&phi, EdgeId(0), VertexId(0)).unwrap();
        for fan in [r.fan.clone(), r.fan.prefix(r.j)] {
            let psi = shift(&phi, &fan.chain).unwrap();
            assert!(psi.recompute_potential().a <= phi.recompute_potential().a);
            assert!(psi.verify().is_ok());
        }
    }

    #[test]
    fn j_is_never_zero() {
        let (g, l) = looped();
        let phi =
            PartialColoring::from_assignment(&g, &l, &[None, Some(c(1)), Some(c(2))]).unwrap();
        let r = vizing_fan(&phi, EdgeId(0), VertexId(0)).unwrap();
        assert!(r.j >= 1);
    }

    #[test]
    fn happy_two_edge_fan() {
        let g = Multigraph::build(3, &[(0, 1), (0, 2)]).unwrap();
        let l = ListAssignment::new(&g, vec![[c(1), c(2)].into(), [c(1), c(3)].into()]).unwrap();
        let mut phi = PartialColoring::from_assignment(&g, &l, &[None, Some(c(1))]).unwrap();
        // f(0) = {1}, A(0) = ∅ → the fan polls A(1) = {1, 2}: η = 1 ∈ U(0),
        // next = e1, then A(2) = {3}: η = 3 ∉ U(0) → happy fan.
        let out = classify_vizing(&mut phi, EdgeId(0), VertexId(0)).unwrap();
        let VizingOutcome::HappyFan { fan, color } = out else {
            panic!("expected happy fan, got {out:?}");
        };
        assert_eq!(fan.chain.edges(), &[EdgeId(0), EdgeId(1)]);
        assert_eq!(color, c(3));
    }
}
