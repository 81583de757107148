use std::collections::BTreeSet;

use listedge::chain::{
    alternating_path, apply_shift, max_shiftable_prefix, resolve_path, ResolveOutcome,
};
use listedge::engine::{color_graph_with, ColorOptions};
use listedge::gen::{generate_random, random_lists, random_partial, superset_lists, GenParams};
use listedge::lists::{check_bound, generate_from_bounds, truncate};
use listedge::oracle::exhaustive_color;
use listedge::{Algorithm, BoundMode, EdgeId, Multigraph, PartialColoring, VertexId};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn graph_params() -> impl Strategy<Value = GenParams> {
    (
        2usize..14,
        1usize..7,
        1usize..4,
        any::<bool>(),
        0.2f64..1.0,
        any::<u64>(),
    )
        .prop_map(|(n, d, mu, bip, fill, seed)| {
            GenParams::new(n, d, mu.min(d), seed)
                .bipartite(bip)
                .fill(fill)
        })
}

fn graph(p: &GenParams) -> Multigraph {
    generate_random(p).expect("strategy only yields feasible parameters")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn degree_and_multiplicity_identities(p in graph_params()) {
        let g = graph(&p);
        let total: usize = g.vertices().map(|x| g.degree(x)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
        for x in g.vertices() {
            prop_assert!(g.mu_vertex(x) <= g.degree(x));
            prop_assert!(g.degree(x) <= p.max_degree);
            for y in g.vertices() {
                prop_assert_eq!(g.multiplicity(x, y), g.multiplicity(y, x));
                prop_assert!(g.multiplicity(x, y) <= p.max_multiplicity);
            }
        }
        prop_assert_eq!(g.max_degree(), g.vertices().map(|x| g.degree(x)).max().unwrap_or(0));
        if p.bipartite {
            let b = g.bipartition().expect("flagged graphs are bipartite");
            for e in g.edges() {
                let (u, v) = g.endpoints(e);
                prop_assert_ne!(b.side(u), b.side(v));
            }
        }
    }

    #[test]
    fn generated_lists_pass_their_bound(p in graph_params()) {
        let g = graph(&p);
        let mut modes = vec![BoundMode::Shannon, BoundMode::Vizing];
        if p.bipartite {
            modes.push(BoundMode::Koenig);
        }
        for mode in modes {
            let l = generate_from_bounds(&g, mode).unwrap();
            prop_assert!(check_bound(&g, &l, mode).unwrap().passed());
            for x in g.vertices() {
                for &e in g.incident(x) {
                    prop_assert!(l.common(x).is_subset(l.list(e)));
                }
            }
        }
    }

    #[test]
    fn truncate_keeps_sizes_in_range(p in graph_params(), ell in 1usize..8, seed in any::<u64>()) {
        let g = graph(&p);
        let mut rng = GenParams::new(0, 0, 0, seed).rng();
        let l = superset_lists(&g, BoundMode::Vizing, 2, &mut rng).unwrap();
        let c: Vec<usize> = g
            .vertices()
            .map(|x| rng.gen_range(0..=ell.min(l.common(x).len())))
            .collect();
        let t = truncate(&g, &l, &c, ell).unwrap();
        for e in g.edges() {
            prop_assert!(t.list(e).is_subset(l.list(e)));
        }
        for x in g.vertices() {
            let k = t.common(x).len();
            prop_assert!(c[x.0] <= k && k <= 2 * ell, "vertex {x}: {} <= {k} <= {}", c[x.0], 2 * ell);
        }
    }

    #[test]
    fn caches_stay_coherent(p in graph_params(), seed in any::<u64>(), steps in 1usize..60) {
        let g = graph(&p);
        prop_assume!(g.edge_count() > 0);
        let l = generate_from_bounds(&g, BoundMode::Vizing).unwrap();
        let mut rng = GenParams::new(0, 0, 0, seed).rng();
        let mut phi = random_partial(&g, &l, 0.5, &mut rng);
        let n = g.vertex_count();
        let m = g.edge_count();
        for _ in 0..steps {
            let e = EdgeId(rng.gen_range(0..m));
            let before = phi.potential();
            match phi.color(e) {
                Some(_) => {
                    phi.unassign(e).unwrap();
                }
                None => {
                    let Some(c) = l.list(e).iter().copied().collect::<Vec<_>>().choose(&mut rng).copied() else {
                        continue;
                    };
                    if phi.assign(e, c).is_ok() {
                        let after = phi.potential();
                        prop_assert!(after.d < before.d);
                        prop_assert!(after.a <= before.a);
                    }
                }
            }
            let pot = phi.potential();
            prop_assert_eq!(pot, phi.recompute_potential());
            prop_assert!(pot.a <= n * l.max_common_size());
            prop_assert!(pot.d <= 2 * m * m);
        }
        prop_assert!(phi.verify().is_ok());
    }

    #[test]
    fn alternating_paths_are_maximal_and_simple(p in graph_params(), seed in any::<u64>()) {
        let g = graph(&p);
        prop_assume!(g.edge_count() > 0);
        let mut rng = GenParams::new(0, 0, 0, seed).rng();
        let l = superset_lists(&g, BoundMode::Vizing, 2, &mut rng).unwrap();
        let phi = random_partial(&g, &l, 0.8, &mut rng);
        for &e in phi.uncolored() {
            let (u, v) = g.endpoints(e);
            for x in [u, v] {
                let y = g.other_end(e, x);
                for &alpha in phi.available(x) {
                    for &beta in phi.available(y) {
                        if alpha == beta {
                            continue;
                        }
                        let path = alternating_path(&phi, e, x, alpha, beta).unwrap();
                        let inner: BTreeSet<VertexId> = path.vertices[1..].iter().copied().collect();
                        prop_assert_eq!(inner.len(), path.vertices.len() - 1);
                        for (i, &f) in path.chain.edges().iter().enumerate().skip(1) {
                            let want = if i % 2 == 1 { alpha } else { beta };
                            prop_assert_eq!(phi.color(f), Some(want));
                        }
                        let k = path.len();
                        let next = if k % 2 == 1 { alpha } else { beta };
                        prop_assert!(!phi.is_used(path.v_end(), next));
                    }
                }
            }
        }
    }

    #[test]
    fn path_prefix_shift_only_touches_its_ends(p in graph_params(), seed in any::<u64>()) {
        let g = graph(&p);
        prop_assume!(g.edge_count() > 0);
        let mut rng = GenParams::new(0, 0, 0, seed).rng();
        let l = superset_lists(&g, BoundMode::Vizing, 1, &mut rng).unwrap();
        let mut phi = random_partial(&g, &l, 0.8, &mut rng);
        let Some(&e) = phi.uncolored().iter().next() else { return Ok(()); };
        let (x, y) = g.endpoints(e);
        let (Some(&alpha), Some(&beta)) = (phi.available(x).first(), phi.available(y).last()) else {
            return Ok(());
        };
        prop_assume!(alpha != beta);
        let path = alternating_path(&phi, e, x, alpha, beta).unwrap();
        let j = max_shiftable_prefix(&phi, &path);
        let segment = path.chain.prefix(j);
        let before: Vec<BTreeSet<_>> = g.vertices().map(|z| phi.used(z).collect()).collect();
        apply_shift(&mut phi, &segment).unwrap();
        prop_assert!(phi.verify().is_ok());
        let (s0, s1) = g.endpoints(segment.start());
        let (t0, t1) = g.endpoints(segment.end());
        for z in g.vertices() {
            if [s0, s1, t0, t1].contains(&z) {
                continue;
            }
            prop_assert_eq!(&phi.used(z).collect::<BTreeSet<_>>(), &before[z.0]);
        }
    }

    #[test]
    fn resolve_path_postconditions(p in graph_params(), seed in any::<u64>()) {
        let g = graph(&p);
        prop_assume!(g.edge_count() > 0);
        let mut rng = GenParams::new(0, 0, 0, seed).rng();
        let l = superset_lists(&g, BoundMode::Vizing, 1, &mut rng).unwrap();
        let mut phi = random_partial(&g, &l, 0.8, &mut rng);
        let Some(&e) = phi.uncolored().iter().next() else { return Ok(()); };
        let (x, y) = g.endpoints(e);
        let (Some(&alpha), Some(&beta)) = (phi.available(x).first(), phi.available(y).first()) else {
            return Ok(());
        };
        let path = alternating_path(&phi, e, x, alpha, beta).unwrap();
        prop_assume!(path.meets_path_conditions(&phi));
        let blanks = phi.uncolored().len();
        let before = phi.potential();
        match resolve_path(&mut phi, &path).unwrap() {
            ResolveOutcome::Happy { .. } => prop_assert_eq!(phi.uncolored().len() + 1, blanks),
            ResolveOutcome::Content { .. } => {
                prop_assert_eq!(phi.uncolored().len(), blanks);
                prop_assert!(phi.potential() < before);
            }
        }
        prop_assert!(phi.verify().is_ok());
    }

    #[test]
    fn any_edge_order_succeeds(p in graph_params(), seed in any::<u64>()) {
        let g = graph(&p);
        let mut rng = GenParams::new(0, 0, 0, seed).rng();
        let mut algos = vec![Algorithm::Shannon, Algorithm::Vizing];
        if p.bipartite {
            algos.push(Algorithm::Koenig);
        }
        for algo in algos {
            let l = superset_lists(&g, algo.bound_mode(), 1, &mut rng).unwrap();
            let mut order: Vec<EdgeId> = g.edges().collect();
            order.shuffle(&mut rng);
            let opts = ColorOptions { order: Some(order), verify_every: Some(3), record_trace: false };
            let run = color_graph_with(&g, &l, algo, &opts).unwrap();
            prop_assert!(run.coloring.is_total());
            prop_assert_eq!(run.stats.happy_steps, g.edge_count());
            for w in run.stats.potential_trace.windows(2) {
                prop_assert!(w[1] < w[0]);
            }
        }
    }

    #[test]
    fn oracle_agrees_with_bounds(seed in any::<u64>()) {
        let mut rng = GenParams::new(0, 0, 0, seed).rng();
        let p = GenParams::new(rng.gen_range(2..6), rng.gen_range(1..4), 1, seed).fill(0.6);
        let p = GenParams { max_multiplicity: rng.gen_range(1..=p.max_degree), ..p };
        let g = graph(&p);
        prop_assume!(g.edge_count() <= 8);
        let l = random_lists(&g, 5, 1..=4, &mut rng).unwrap();
        let found = exhaustive_color(&g, &l, 10).unwrap();
        for mode in [BoundMode::Shannon, BoundMode::Vizing, BoundMode::Koenig] {
            let Ok(report) = check_bound(&g, &l, mode) else { continue };
            if report.passed() {
                prop_assert!(found.is_some(), "{mode} bound holds but no coloring exists");
            }
        }
    }
}

#[test]
fn clashing_mutation_fails_verification() {
    let g = generate_random(&GenParams::new(12, 5, 2, 42)).unwrap();
    let l = generate_from_bounds(&g, BoundMode::Vizing).unwrap();
    let run = color_graph_with(&g, &l, Algorithm::Vizing, &ColorOptions::default()).unwrap();
    let colors: Vec<_> = run.coloring.assignment().to_vec();
    let mut checked = 0;
    for e in g.edges() {
        let (u, _) = g.endpoints(e);
        let Some(&f) = g.incident(u).iter().find(|&&f| f != e) else {
            continue;
        };
        let mut mutated = colors.clone();
        mutated[e.0] = colors[f.0];
        assert!(PartialColoring::from_assignment(&g, &l, &mutated).is_err());
        checked += 1;
    }
    assert!(checked > 0);
}
