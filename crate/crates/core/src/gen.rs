//! Seeded random instances for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::PartialColoring;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::lists::{palette, BoundMode, Color, ColorSet, ListAssignment};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub n: usize,
    /// Cap on every vertex degree.
    pub max_degree: usize,
    /// Cap on the number of parallel edges between any pair.
    pub max_multiplicity: usize,
    /// Vertices `0..ceil(n/2)` form one side, the rest the other.
    pub bipartite: bool,
    /// Fraction of the n·Δ/2 edge slots to attempt to fill.
    pub fill: f64,
    pub seed: u64,
}

impl GenParams {
    pub fn new(n: usize, max_degree: usize, max_multiplicity: usize, seed: u64) -> Self {
        GenParams {
            n,
            max_degree,
            max_multiplicity,
            bipartite: false,
            fill: 1.0,
            seed,
        }
    }

    pub fn bipartite(mut self, flag: bool) -> Self {
        self.bipartite = flag;
        self
    }

    pub fn fill(mut self, fill: f64) -> Self {
        self.fill = fill;
        self
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Random multigraph respecting the Δ and μ caps. Deterministic per seed.
pub fn generate_random(params: &GenParams) -> Result<Multigraph> {
    let GenParams {
        n,
        max_degree,
        max_multiplicity,
        bipartite,
        fill,
        ..
    } = *params;
    if !(0.0..=1.0).contains(&fill) {
        return Err(Error::InfeasibleParams(format!(
            "fill {fill} is outside [0, 1]"
        )));
    }
    if max_degree > 0 && max_multiplicity == 0 {
        return Err(Error::InfeasibleParams(
            "μ = 0 allows no edges but Δ > 0".into(),
        ));
    }
    if max_multiplicity > max_degree {
        return Err(Error::InfeasibleParams(format!(
            "μ = {max_multiplicity} exceeds Δ = {max_degree}"
        )));
    }
    let left = n.div_ceil(2);
    if max_degree > 0 && (n < 2 || (bipartite && left == n)) {
        return Err(Error::InfeasibleParams(format!(
            "n = {n} has no vertex pairs"
        )));
    }
    let mut rng = params.rng();
    let mut edges = Vec::new();
    if max_degree == 0 {
        return Multigraph::build(n, &edges);
    }
    let target = ((n * max_degree) as f64 / 2.0 * fill).round() as usize;
    let mut degree = vec![0usize; n];
    let mut mult = std::collections::HashMap::<(usize, usize), usize>::new();
    let attempts = 8 * target + 16;
    for _ in 0..attempts {
        if edges.len() >= target {
            break;
        }
        let (u, v) = if bipartite {
            (rng.gen_range(0..left), rng.gen_range(left..n))
        } else {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n - 1);
            (u, if v >= u { v + 1 } else { v })
        };
        let key = (u.min(v), u.max(v));
        let m = mult.entry(key).or_insert(0);
        if degree[u] < max_degree && degree[v] < max_degree && *m < max_multiplicity {
            *m += 1;
            degree[u] += 1;
            degree[v] += 1;
            edges.push((u, v));
        }
    }
    Multigraph::build(n, &edges)
}

/// Explicit lists whose common sets are random supersets of the mode's
/// bound. Every vertex gets a random set S(x) of the required size drawn
/// from a palette of size `max bound + spare`; each edge list is
/// S(u) ∪ S(v) plus up to `spare` random extra colors.
pub fn superset_lists<R: Rng>(
    g: &Multigraph,
    mode: BoundMode,
    spare: usize,
    rng: &mut R,
) -> Result<ListAssignment> {
    if mode == BoundMode::Explicit {
        return Err(Error::PreconditionViolated(
            "superset lists need a concrete bound".into(),
        ));
    }
    if mode == BoundMode::Koenig && g.bipartition().is_none() {
        return Err(Error::NotBipartite);
    }
    let top = g
        .vertices()
        .filter_map(|x| mode.bound(g, x))
        .max()
        .unwrap_or(0);
    let pool: Vec<Color> = palette(top + spare).into_iter().collect();
    let chosen: Vec<ColorSet> = g
        .vertices()
        .map(|x| {
            let need = mode.bound(g, x).unwrap_or(0);
            pool.choose_multiple(rng, need).copied().collect()
        })
        .collect();
    let lists = g
        .edges()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            let mut list: ColorSet = chosen[u.0].union(&chosen[v.0]).copied().collect();
            let extra = rng.gen_range(0..=spare);
            list.extend(pool.choose_multiple(rng, extra).copied());
            list
        })
        .collect();
    ListAssignment::new(g, lists)
}

/// Independent random lists over `{1, ..., k}`, each of size in `sizes`.
pub fn random_lists<R: Rng>(
    g: &Multigraph,
    k: usize,
    sizes: std::ops::RangeInclusive<usize>,
    rng: &mut R,
) -> Result<ListAssignment> {
    let pool: Vec<Color> = palette(k).into_iter().collect();
    let lists = g
        .edges()
        .map(|_| {
            let size = rng.gen_range(sizes.clone()).min(k);
            pool.choose_multiple(rng, size).copied().collect()
        })
        .collect();
    ListAssignment::new(g, lists)
}

/// A random proper, list-valid partial coloring. Edges are visited in random
/// order; each is colored with probability `density` using a random color
/// of its list that is still free at both endpoints.
pub fn random_partial<'a, R: Rng>(
    g: &'a Multigraph,
    l: &'a ListAssignment,
    density: f64,
    rng: &mut R,
) -> PartialColoring<'a> {
    let mut phi = PartialColoring::blank(g, l);
    let mut order: Vec<EdgeId> = g.edges().collect();
    order.shuffle(rng);
    for e in order {
        if !rng.gen_bool(density) {
            continue;
        }
        let (u, v) = g.endpoints(e);
        let free: Vec<Color> = l
            .list(e)
            .iter()
            .copied()
            .filter(|&c| !phi.is_used(u, c) && !phi.is_used(v, c))
            .collect();
        if let Some(&c) = free.choose(rng) {
            phi.assign(e, c)
                .expect("color was checked free at both endpoints");
        }
    }
    phi
}

/// Uniform random vertex.
pub fn random_vertex<R: Rng>(g: &Multigraph, rng: &mut R) -> VertexId {
    VertexId(rng.gen_range(0..g.vertex_count()))
}
