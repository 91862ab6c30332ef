use crate::model::PacketSet;

use super::{CliqueError, IdncGraph};

/// Default vertex cap for the exhaustive chromatic oracle.
pub const CHROMATIC_LIMIT: usize = 16;

/// Exact chromatic number by exhaustive backtracking.
///
/// Intended as a test oracle on small graphs; refuses graphs with more than
/// [`CHROMATIC_LIMIT`] vertices.
pub fn chromatic_number(g: &IdncGraph) -> Result<usize, CliqueError> {
    chromatic_number_with_limit(g, CHROMATIC_LIMIT)
}

pub fn chromatic_number_with_limit(g: &IdncGraph, limit: usize) -> Result<usize, CliqueError> {
    let n = g.n_vertices();
    if n > limit {
        return Err(CliqueError::TooLarge { vertices: n, limit });
    }
    if n == 0 {
        return Ok(0);
    }
    // High-degree vertices first prunes earliest.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut colors = vec![PacketSet::EMPTY; n];
    for k in 1..=n {
        if color_from(g, &order, 0, k, &mut colors, 0) {
            return Ok(k);
        }
    }
    unreachable!("n colours always suffice")
}

/// Tries to extend a partial colouring of `order[..pos]` using at most `k`
/// classes; `colors[c]` holds the members of class `c`.
fn color_from(g: &IdncGraph, order: &[usize], pos: usize, k: usize, colors: &mut [PacketSet], used: usize) -> bool {
    let Some(&v) = order.get(pos) else {
        return true;
    };
    // A fresh class is interchangeable with any other fresh class.
    let tries = (used + 1).min(k);
    for c in 0..tries {
        if colors[c].is_disjoint(g.neighbors(v)) {
            colors[c].insert(v);
            let ok = color_from(g, order, pos + 1, k, colors, used.max(c + 1));
            colors[c].remove(v);
            if ok {
                return true;
            }
        }
    }
    false
}
