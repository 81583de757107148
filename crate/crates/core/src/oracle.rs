//! Exhaustive search for a proper L-edge-coloring on small instances.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph};
use crate::lists::{Color, ListAssignment};

pub const DEFAULT_LIMIT: usize = 10;

/// Depth-first over edges in id order, colors ascending, pruning on clashes
/// at either endpoint. Returns the first proper coloring found.
pub fn exhaustive_color(
    g: &Multigraph,
    l: &ListAssignment,
    limit: usize,
) -> Result<Option<Vec<Color>>> {
    let m = g.edge_count();
    if m > limit {
        return Err(Error::TooLarge { m, limit });
    }
    let mut colors: Vec<Option<Color>> = vec![None; m];
    if search(g, l, 0, &mut colors) {
        Ok(Some(
            colors
                .into_iter()
                .map(|c| c.expect("all edges colored"))
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

fn search(g: &Multigraph, l: &ListAssignment, i: usize, colors: &mut [Option<Color>]) -> bool {
    if i == colors.len() {
        return true;
    }
    let e = EdgeId(i);
    let (u, v) = g.endpoints(e);
    for &c in l.list(e) {
        let clash = [u, v].iter().any(|&x| {
            g.incident(x)
                .iter()
                .any(|&f| f.0 < i && colors[f.0] == Some(c))
        });
        if clash {
            continue;
        }
        colors[i] = Some(c);
        if search(g, l, i + 1, colors) {
            return true;
        }
    }
    colors[i] = None;
    false
}
