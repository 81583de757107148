//! Chains, the Shift operation, αβ-alternating path chains and the
//! happy-or-content resolution of a path chain.
//!
//! A chain is a sequence of distinct edges in which consecutive edges share
//! exactly one endpoint. Shifting a chain moves every color one position
//! towards the start and leaves the last edge blank.

use std::collections::{HashMap, HashSet};

use crate::coloring::PartialColoring;
use crate::error::{Error, Result, ShiftFailure};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::lists::Color;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    edges: Vec<EdgeId>,
}

impl Chain {
    pub fn new(g: &Multigraph, edges: Vec<EdgeId>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::InvalidChain("empty chain".into()));
        }
        if let Some(e) = edges.iter().find(|e| e.0 >= g.edge_count()) {
            return Err(Error::InvalidChain(format!("edge {e} out of range")));
        }
        let mut seen = HashSet::new();
        for &e in &edges {
            if !seen.insert(e) {
                return Err(Error::InvalidChain(format!("edge {e} repeated")));
            }
        }
        for w in edges.windows(2) {
            if g.shared_endpoints(w[0], w[1]) != 1 {
                return Err(Error::InvalidChain(format!(
                    "edges {} and {} do not share exactly one vertex",
                    w[0], w[1]
                )));
            }
        }
        Ok(Chain { edges })
    }

    pub(crate) fn from_edges(edges: Vec<EdgeId>) -> Self {
        debug_assert!(!edges.is_empty());
        Chain { edges }
    }

    pub fn single(e: EdgeId) -> Self {
        Chain { edges: vec![e] }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> EdgeId {
        self.edges[0]
    }

    pub fn end(&self) -> EdgeId {
        *self.edges.last().expect("chains are nonempty")
    }

    /// C|j = (e_0, ..., e_{j-1}), for 1 ≤ j ≤ len.
    pub fn prefix(&self, j: usize) -> Chain {
        assert!(j >= 1 && j <= self.len(), "prefix length {j} out of range");
        Chain {
            edges: self.edges[..j].to_vec(),
        }
    }
}

/// Colors the chain edges would carry after shifting, or the first position
/// at which the shift would be improper or leave a list.
pub fn check_shift(phi: &PartialColoring<'_>, chain: &Chain) -> Result<Vec<Option<Color>>> {
    let edges = chain.edges();
    if !phi.is_blank(edges[0]) {
        return Err(Error::NotShiftable {
            index: 0,
            reason: ShiftFailure::StartNotBlank,
        });
    }
    let g = phi.graph();
    let k = edges.len();
    let finals: Vec<Option<Color>> = (0..k)
        .map(|i| {
            if i + 1 < k {
                phi.color(edges[i + 1])
            } else {
                None
            }
        })
        .collect();
    let members: HashSet<EdgeId> = edges.iter().copied().collect();
    let mut placed: HashMap<(VertexId, Color), usize> = HashMap::new();
    for (i, &e) in edges.iter().enumerate() {
        phi.tick(1);
        let Some(c) = finals[i] else { continue };
        if !phi.lists().list(e).contains(&c) {
            return Err(Error::NotShiftable {
                index: i,
                reason: ShiftFailure::ColorNotInList,
            });
        }
        let (u, v) = g.endpoints(e);
        for x in [u, v] {
            let outside = phi
                .edge_with_color(x, c)
                .is_some_and(|other| !members.contains(&other));
            if outside || placed.insert((x, c), i).is_some() {
                return Err(Error::NotShiftable {
                    index: i,
                    reason: ShiftFailure::ColorClash,
                });
            }
        }
    }
    Ok(finals)
}

/// Restores the colors a shift overwrote.
#[derive(Debug, Clone)]
pub struct ShiftUndo {
    edges: Vec<EdgeId>,
    previous: Vec<Option<Color>>,
}

impl ShiftUndo {
    pub fn revert(self, phi: &mut PartialColoring<'_>) {
        write_colors(phi, &self.edges, &self.previous)
            .expect("restoring a previously proper coloring cannot fail");
    }
}

fn write_colors(
    phi: &mut PartialColoring<'_>,
    edges: &[EdgeId],
    colors: &[Option<Color>],
) -> Result<()> {
    for &e in edges {
        if !phi.is_blank(e) {
            phi.unassign(e)?;
        }
    }
    for (&e, c) in edges.iter().zip(colors) {
        if let Some(c) = c {
            phi.assign(e, *c)?;
        }
    }
    Ok(())
}

/// Shifts `chain` in place. The returned handle undoes it.
pub fn apply_shift(phi: &mut PartialColoring<'_>, chain: &Chain) -> Result<ShiftUndo> {
    let finals = check_shift(phi, chain)?;
    let previous: Vec<Option<Color>> = chain.edges().iter().map(|&e| phi.color(e)).collect();
    write_colors(phi, chain.edges(), &finals)?;
    Ok(ShiftUndo {
        edges: chain.edges().to_vec(),
        previous,
    })
}

/// Shift(φ, C) as a fresh coloring.
pub fn shift<'a>(phi: &PartialColoring<'a>, chain: &Chain) -> Result<PartialColoring<'a>> {
    let mut out = phi.clone();
    apply_shift(&mut out, chain)?;
    Ok(out)
}

/// A path chain P(e; φ, αβ): `vertices[0]` is vStart, `vertices[1..]` are
/// the distinct path vertices x_1, ..., x_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathChain {
    pub chain: Chain,
    pub vertices: Vec<VertexId>,
    pub alpha: Color,
    pub beta: Color,
}

impl PathChain {
    pub fn v_start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn v_end(&self) -> VertexId {
        *self.vertices.last().expect("path has vertices")
    }

    /// Never zero: a path always holds its start edge.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    /// α free at vStart, β free at x_1 and vStart ≠ vEnd: the conditions
    /// under which [`resolve_path`] is guaranteed to make progress.
    pub fn meets_path_conditions(&self, phi: &PartialColoring<'_>) -> bool {
        phi.is_blank(self.chain.start())
            && phi.is_available(self.vertices[0], self.alpha)
            && phi.is_available(self.vertices[1], self.beta)
            && self.v_start() != self.v_end()
    }
}

/// The maximal αβ-path starting at the blank edge `e = xy` whose first
/// colored edge is the α-edge at y.
pub fn alternating_path(
    phi: &PartialColoring<'_>,
    e: EdgeId,
    x: VertexId,
    alpha: Color,
    beta: Color,
) -> Result<PathChain> {
    let g = phi.graph();
    if !phi.is_blank(e) {
        return Err(Error::EdgeNotBlank(e));
    }
    if !g.is_incident(e, x) {
        return Err(Error::PreconditionViolated(format!(
            "vertex {x} is not an endpoint of edge {e}"
        )));
    }
    let y = g.other_end(e, x);
    if !phi.is_available(x, alpha) {
        return Err(Error::PreconditionViolated(format!(
            "color {alpha} is not available at {x}"
        )));
    }
    if !phi.is_available(y, beta) {
        return Err(Error::PreconditionViolated(format!(
            "color {beta} is not available at {y}"
        )));
    }
    let mut edges = vec![e];
    let mut vertices = vec![x, y];
    let mut on_path: HashSet<VertexId> = HashSet::from([y]);
    let mut current = y;
    let mut want = alpha;
    while let Some(next) = phi.edge_with_color(current, want) {
        let w = g.other_end(next, current);
        // x may close the path; any other repeat would mean the αβ-subgraph
        // has a vertex of degree three.
        assert!(
            !on_path.contains(&w),
            "alternating path revisits vertex {w}; coloring is improper"
        );
        on_path.insert(w);
        edges.push(next);
        vertices.push(w);
        current = w;
        want = if want == alpha { beta } else { alpha };
    }
    Ok(PathChain {
        chain: Chain::from_edges(edges),
        vertices,
        alpha,
        beta,
    })
}

/// The largest j such that Shift(φ, P|j) is a proper L-edge-coloring.
pub fn max_shiftable_prefix(phi: &PartialColoring<'_>, path: &PathChain) -> usize {
    let edges = path.chain.edges();
    // Along an αβ-path only list membership can fail, and it fails for
    // every prefix past the first offending position.
    let mut j = edges.len();
    for i in 0..edges.len() - 1 {
        phi.tick(1);
        let c = phi
            .color(edges[i + 1])
            .expect("path edges past the first are colored");
        if !phi.lists().list(edges[i]).contains(&c) {
            j = i + 1;
            break;
        }
    }
    if check_shift(phi, &path.chain.prefix(j)).is_ok() {
        return j;
    }
    (1..j)
        .rev()
        .find(|&j| check_shift(phi, &path.chain.prefix(j)).is_ok())
        .unwrap_or(1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolveOutcome {
    /// The prefix `shifted` was shifted and its end edge colored `color`.
    Happy {
        shifted: Chain,
        edge: EdgeId,
        color: Color,
    },
    /// The prefix `shifted` was shifted; Φ strictly dropped.
    Content { shifted: Chain },
}

impl ResolveOutcome {
    pub fn shifted(&self) -> &Chain {
        match self {
            ResolveOutcome::Happy { shifted, .. } | ResolveOutcome::Content { shifted } => shifted,
        }
    }
}

/// Shifts the whole path and colors its end edge, or failing that
/// shifts the largest valid initial segment, which lowers Φ.
pub fn resolve_path(phi: &mut PartialColoring<'_>, path: &PathChain) -> Result<ResolveOutcome> {
    if !path.meets_path_conditions(phi) {
        return Err(Error::PreconditionViolated(
            "path chain does not meet the path conditions".into(),
        ));
    }
    let before = phi.potential();
    let j = max_shiftable_prefix(phi, path);
    if path.len() >= 3 && j < 3 {
        return Err(Error::LemmaViolation(format!(
            "shiftable prefix {j} shorter than 3 on a path of length {}",
            path.len()
        )));
    }
    let segment = path.chain.prefix(j);
    let undo = apply_shift(phi, &segment)?;
    let end = segment.end();
    if j == path.len() {
        if let Some(color) = phi.is_happy(end)? {
            phi.assign(end, color)?;
            return Ok(ResolveOutcome::Happy {
                shifted: segment,
                edge: end,
                color,
            });
        }
    }
    if phi.potential() < before {
        return Ok(ResolveOutcome::Content { shifted: segment });
    }
    undo.revert(phi);
    Err(Error::LemmaViolation(format!(
        "path of length {} is neither happy nor content (prefix {j})",
        path.len()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lists::{palette, ListAssignment};

    fn c(v: u32) -> Color {
        Color::new(v).unwrap()
    }

    #[test]
    fn shift_moves_colors_back() {
        // Seven-edge walk with colors (blank, 1..6), every list {1..6}.
        let g = Multigraph::build(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)])
            .unwrap();
        let l = ListAssignment::uniform(&g, &palette(6));
        let mut colors = vec![None];
        colors.extend((1..=6).map(|v| Some(c(v))));
        let phi = PartialColoring::from_assignment(&g, &l, &colors).unwrap();
        let chain = Chain::new(&g, g.edges().collect()).unwrap();
        let psi = shift(&phi, &chain).unwrap();
        let mut expect: Vec<Option<Color>> = (1..=6).map(|v| Some(c(v))).collect();
        expect.push(None);
        assert_eq!(psi.assignment(), &expect[..]);
        assert!(psi.verify().is_ok());
    }

    #[test]
    fn single_edge_shift_is_identity() {
        let g = Multigraph::build(2, &[(0, 1)]).unwrap();
        let l = ListAssignment::uniform(&g, &palette(2));
        let phi = PartialColoring::blank(&g, &l);
        let psi = shift(&phi, &Chain::single(EdgeId(0))).unwrap();
        assert_eq!(psi.assignment(), phi.assignment());
    }

    #[test]
    fn shift_errors() {
        let g = Multigraph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let l = ListAssignment::new(&g, vec![palette(1), palette(2)]).unwrap();
        let phi = PartialColoring::from_assignment(&g, &l, &[None, Some(c(2))]).unwrap();
        let chain = Chain::new(&g, vec![EdgeId(0), EdgeId(1)]).unwrap();
        assert_eq!(
            shift(&phi, &chain).unwrap_err(),
            Error::NotShiftable {
                index: 0,
                reason: ShiftFailure::ColorNotInList
            }
        );
        let rev = Chain::new(&g, vec![EdgeId(1), EdgeId(0)]).unwrap();
        assert_eq!(
            shift(&phi, &rev).unwrap_err(),
            Error::NotShiftable {
                index: 0,
                reason: ShiftFailure::StartNotBlank
            }
        );
    }

    #[test]
    fn shift_clash_is_detected() {
        // Path 0-1-2 plus pendant 0-3 colored 1; shifting color 1 from
        // (1,2) onto (0,1) clashes at 0.
        let g = Multigraph::build(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let l = ListAssignment::uniform(&g, &palette(2));
        let phi =
            PartialColoring::from_assignment(&g, &l, &[None, Some(c(1)), Some(c(1))]).unwrap();
        let chain = Chain::new(&g, vec![EdgeId(0), EdgeId(1)]).unwrap();
        assert_eq!(
            check_shift(&phi, &chain).unwrap_err(),
            Error::NotShiftable {
                index: 0,
                reason: ShiftFailure::ColorClash
            }
        );
    }

    #[test]
    fn chain_validation() {
        let g = Multigraph::build(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
        assert!(Chain::new(&g, vec![EdgeId(0), EdgeId(1)]).is_err());
        assert!(Chain::new(&g, vec![EdgeId(0), EdgeId(2), EdgeId(0)]).is_err());
        assert!(Chain::new(&g, vec![]).is_err());
        let ok = Chain::new(&g, vec![EdgeId(0), EdgeId(2)]).unwrap();
        assert_eq!((ok.start(), ok.end(), ok.len()), (EdgeId(0), EdgeId(2), 2));
        assert_eq!(ok.prefix(1).edges(), &[EdgeId(0)]);
    }

    #[test]
    fn apply_and_revert_round_trip() {
        let g = Multigraph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let l = ListAssignment::uniform(&g, &palette(2));
        let mut phi =
            PartialColoring::from_assignment(&g, &l, &[None, Some(c(1)), Some(c(2))]).unwrap();
        let snapshot = phi.clone();
        let undo = apply_shift(&mut phi, &Chain::new(&g, g.edges().collect()).unwrap()).unwrap();
        assert_eq!(phi.assignment(), &[Some(c(1)), Some(c(2)), None]);
        undo.revert(&mut phi);
        assert_eq!(phi.assignment(), snapshot.assignment());
        assert!(phi.verify().is_ok());
    }

    #[test]
    fn path_with_no_alpha_edge_is_single() {
        let g = Multigraph::build(2, &[(0, 1)]).unwrap();
        let l = ListAssignment::uniform(&g, &palette(2));
        let phi = PartialColoring::blank(&g, &l);
        let p = alternating_path(&phi, EdgeId(0), VertexId(0), c(1), c(2)).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!((p.v_start(), p.v_end()), (VertexId(0), VertexId(1)));
    }

    /// x - y blank, then y - a (α), a - b (β) on one side and x - p (β),
    /// p - q (α) on the other.
    fn two_sided() -> (Multigraph, ListAssignment) {
        let g = Multigraph::build(6, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 5)]).unwrap();
        let l = ListAssignment::uniform(&g, &palette(3));
        (g, l)
    }

    #[test]
    fn opposite_orders_extend_opposite_ways() {
        let (g, l) = two_sided();
        let (a, b) = (c(1), c(2));
        let phi =
            PartialColoring::from_assignment(&g, &l, &[None, Some(a), Some(b), Some(b), Some(a)])
                .unwrap();
        let ab = alternating_path(&phi, EdgeId(0), VertexId(0), a, b).unwrap();
        assert_eq!(ab.chain.edges(), &[EdgeId(0), EdgeId(1), EdgeId(2)]);
        let ba = alternating_path(&phi, EdgeId(0), VertexId(1), b, a).unwrap();
        assert_eq!(ba.chain.edges(), &[EdgeId(0), EdgeId(3), EdgeId(4)]);
        assert_eq!(ba.v_start(), VertexId(1));
        assert_eq!(ba.v_end(), VertexId(5));
    }

    #[test]
    fn path_closing_at_start_vertex() {
        // Heptagon x, y, a, b, c, d, e: xy blank, then α, β, α, β, α, β from
        // y back round to x.
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0)];
        let g = Multigraph::build(7, &edges).unwrap();
        let l = ListAssignment::uniform(&g, &palette(3));
        let (a, b) = (c(1), c(2));
        let colors = [None, Some(a), Some(b), Some(a), Some(b), Some(a), Some(b)];
        let phi = PartialColoring::from_assignment(&g, &l, &colors).unwrap();
        let p = alternating_path(&phi, EdgeId(0), VertexId(0), a, b).unwrap();
        assert_eq!(p.len(), 7);
        assert_eq!(p.v_start(), p.v_end());
        assert!(!p.meets_path_conditions(&phi));
    }

    #[test]
    fn path_preconditions() {
        let (g, l) = two_sided();
        let (a, b) = (c(1), c(2));
        let phi =
            PartialColoring::from_assignment(&g, &l, &[None, Some(a), Some(b), Some(b), Some(a)])
                .unwrap();
        // β = 1 is used at y
        assert!(matches!(
            alternating_path(&phi, EdgeId(0), VertexId(0), c(3), a),
            Err(Error::PreconditionViolated(_))
        ));
        assert_eq!(
            alternating_path(&phi, EdgeId(1), VertexId(1), a, b),
            Err(Error::EdgeNotBlank(EdgeId(1)))
        );
    }

    #[test]
    fn max_prefix_full_when_lists_allow() {
        let (g, l) = two_sided();
        let (a, b) = (c(1), c(2));
        let phi =
            PartialColoring::from_assignment(&g, &l, &[None, Some(a), Some(b), Some(b), Some(a)])
                .unwrap();
        let p = alternating_path(&phi, EdgeId(0), VertexId(0), a, b).unwrap();
        assert_eq!(max_shiftable_prefix(&phi, &p), 3);
    }
}
