//! Loopless multigraphs with edge identities.
//!
//! Edges are numbered by their position in the input list, so parallel edges
//! stay distinguishable. Every query the coloring engine issues in its inner
//! loop (incidence, endpoints, degree) is answered from precomputed tables.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A proper 2-coloring of the vertices: every edge joins side 0 to side 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side: Vec<u8>,
}

impl Bipartition {
    pub fn side(&self, x: VertexId) -> u8 {
        self.side[x.0]
    }

    pub fn vertices_on(&self, side: u8) -> Vec<VertexId> {
        (0..self.side.len())
            .filter(|&i| self.side[i] == side)
            .map(VertexId)
            .collect()
    }
}

#[derive(Debug)]
pub struct Multigraph {
    n: usize,
    endpoints: Vec<(VertexId, VertexId)>,
    incidence: Vec<Vec<EdgeId>>,
    multiplicity: HashMap<(usize, usize), usize>,
    mu_vertex: Vec<usize>,
    bipartition: OnceLock<Option<Bipartition>>,
}

impl Clone for Multigraph {
    fn clone(&self) -> Self {
        Multigraph {
            n: self.n,
            endpoints: self.endpoints.clone(),
            incidence: self.incidence.clone(),
            multiplicity: self.multiplicity.clone(),
            mu_vertex: self.mu_vertex.clone(),
            bipartition: OnceLock::new(),
        }
    }
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.endpoints == other.endpoints
    }
}

impl Eq for Multigraph {}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Multigraph {
    /// Builds a multigraph on `n` vertices. Edge `i` of the result is
    /// `edge_list[i]`.
    pub fn build(n: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        let mut incidence = vec![Vec::new(); n];
        let mut endpoints = Vec::with_capacity(edge_list.len());
        let mut multiplicity: HashMap<(usize, usize), usize> = HashMap::new();
        for (index, &(u, v)) in edge_list.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { index, vertex, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge { index, vertex: u });
            }
            incidence[u].push(EdgeId(index));
            incidence[v].push(EdgeId(index));
            endpoints.push((VertexId(u), VertexId(v)));
            *multiplicity.entry(key(u, v)).or_default() += 1;
        }
        let mut mu_vertex = vec![0; n];
        for (&(u, v), &count) in &multiplicity {
            mu_vertex[u] = mu_vertex[u].max(count);
            mu_vertex[v] = mu_vertex[v].max(count);
        }
        Ok(Multigraph {
            n,
            endpoints,
            incidence,
            multiplicity,
            mu_vertex,
            bipartition: OnceLock::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.endpoints.len()).map(EdgeId)
    }

    /// Endpoints of `e` in input order.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.endpoints[e.0]
    }

    pub fn is_incident(&self, e: EdgeId, x: VertexId) -> bool {
        let (u, v) = self.endpoints[e.0];
        u == x || v == x
    }

    /// The endpoint of `e` that is not `x`. Panics if `x` is not on `e`.
    pub fn other_end(&self, e: EdgeId, x: VertexId) -> VertexId {
        let (u, v) = self.endpoints[e.0];
        if u == x {
            v
        } else {
            assert_eq!(v, x, "vertex {x} is not an endpoint of edge {e}");
            u
        }
    }

    /// Number of endpoints shared by two edges (0, 1 or 2).
    pub fn shared_endpoints(&self, e: EdgeId, f: EdgeId) -> usize {
        let (a, b) = self.endpoints[e.0];
        [a, b].iter().filter(|&&x| self.is_incident(f, x)).count()
    }

    pub fn incident(&self, x: VertexId) -> &[EdgeId] {
        &self.incidence[x.0]
    }

    pub fn degree(&self, x: VertexId) -> usize {
        self.incidence[x.0].len()
    }

    /// Number of parallel edges joining `x` and `y`; 0 when `x == y`.
    pub fn multiplicity(&self, x: VertexId, y: VertexId) -> usize {
        if x == y {
            return 0;
        }
        self.multiplicity.get(&key(x.0, y.0)).copied().unwrap_or(0)
    }

    /// max over z of μ(x, z); 0 for an isolated vertex.
    pub fn mu_vertex(&self, x: VertexId) -> usize {
        self.mu_vertex[x.0]
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.mu_vertex.iter().copied().max().unwrap_or(0)
    }

    /// Distinct neighbours of `x`, in first-seen order.
    pub fn neighbors(&self, x: VertexId) -> Vec<VertexId> {
        let mut seen = Vec::new();
        for &e in self.incident(x) {
            let y = self.other_end(e, x);
            if !seen.contains(&y) {
                seen.push(y);
            }
        }
        seen
    }

    /// Breadth-first 2-coloring; `None` if some cycle is odd. Computed once
    /// and cached.
    pub fn bipartition(&self) -> Option<&Bipartition> {
        self.bipartition
            .get_or_init(|| self.compute_bipartition())
            .as_ref()
    }

    fn compute_bipartition(&self) -> Option<Bipartition> {
        const UNSET: u8 = u8::MAX;
        let mut side = vec![UNSET; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if side[root] != UNSET {
                continue;
            }
            side[root] = 0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &e in &self.incidence[u] {
                    let v = self.other_end(e, VertexId(u)).0;
                    if side[v] == UNSET {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        let parts = Bipartition { side };
        debug_assert!(self
            .endpoints
            .iter()
            .all(|&(u, v)| parts.side(u) != parts.side(v)));
        Some(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Multigraph {
        Multigraph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn digon() -> Multigraph {
        Multigraph::build(2, &[(0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn build_triangle_and_digon() {
        let t = triangle();
        assert_eq!(t.edge_count(), 3);
        assert!(t.vertices().all(|x| t.degree(x) == 2));

        let d = digon();
        assert_eq!(d.multiplicity(VertexId(0), VertexId(1)), 2);
        assert!(d.vertices().all(|x| d.degree(x) == 2));
    }

    #[test]
    fn build_rejects_loops_and_bad_vertices() {
        assert_eq!(
            Multigraph::build(2, &[(0, 0)]),
            Err(Error::LoopEdge {
                index: 0,
                vertex: 0
            })
        );
        assert_eq!(
            Multigraph::build(2, &[(0, 1), (1, 5)]),
            Err(Error::VertexOutOfRange {
                index: 1,
                vertex: 5,
                n: 2
            })
        );
    }

    #[test]
    fn degree_examples() {
        assert_eq!(triangle().degree(VertexId(0)), 2);
        assert_eq!(digon().degree(VertexId(1)), 2);
        let lone = Multigraph::build(1, &[]).unwrap();
        assert_eq!(lone.degree(VertexId(0)), 0);
        assert_eq!(lone.mu_vertex(VertexId(0)), 0);
        assert_eq!(lone.max_degree(), 0);
    }

    #[test]
    fn multiplicity_examples() {
        let d = digon();
        assert_eq!(d.mu_vertex(VertexId(0)), 2);
        assert_eq!(d.max_degree(), 2);
        let t = triangle();
        assert_eq!(t.multiplicity(VertexId(0), VertexId(1)), 1);
        assert_eq!(t.mu_vertex(VertexId(0)), 1);
        assert_eq!(t.max_degree(), 2);
        assert_eq!(t.multiplicity(VertexId(1), VertexId(1)), 0);
    }

    #[test]
    fn bipartition_examples() {
        let c4 = Multigraph::build(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let parts = c4.bipartition().expect("even cycle");
        assert_eq!(parts.vertices_on(0), vec![VertexId(0), VertexId(2)]);
        assert_eq!(parts.vertices_on(1), vec![VertexId(1), VertexId(3)]);

        assert!(triangle().bipartition().is_none());

        let d = digon();
        let parts = d.bipartition().unwrap();
        assert_ne!(parts.side(VertexId(0)), parts.side(VertexId(1)));
    }

    #[test]
    fn other_end_and_shared() {
        let t = triangle();
        assert_eq!(t.other_end(EdgeId(0), VertexId(0)), VertexId(1));
        assert_eq!(t.shared_endpoints(EdgeId(0), EdgeId(1)), 1);
        let d = digon();
        assert_eq!(d.shared_endpoints(EdgeId(0), EdgeId(1)), 2);
    }
}
