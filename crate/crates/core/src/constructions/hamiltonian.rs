use crate::aut::is_rigid;
use crate::error::{Error, Result};
use crate::format::encode_digraph6;
use crate::graph::{Direction, Graph, Orientation, Target};
use crate::structure::is_hamiltonian_path;

/// Every edge directed from the earlier to the later vertex of `path`.
///
/// The number of vertices reachable from `path[i]` is `n - 1 - i`, so no two
/// vertices can be swapped; the result is rigid, and this is re-checked.
pub fn hamiltonian_orientation(g: &Graph, path: &[usize]) -> Result<Orientation> {
    if !is_hamiltonian_path(g, path) {
        return Err(Error::NotHamiltonian(format!("{path:?}")));
    }
    let o = orient_by_position(g, path);
    if !is_rigid(Target::Orientation(&o)) {
        return Err(Error::Construction(format!(
            "path orientation {} is not rigid",
            encode_digraph6(&o).unwrap_or_default()
        )));
    }
    Ok(o)
}

pub(crate) fn orient_by_position(g: &Graph, order: &[usize]) -> Orientation {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let dirs = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            if pos[u] < pos[v] {
                Direction::Forward
            } else {
                Direction::Backward
            }
        })
        .collect();
    Orientation::new(g.clone(), dirs).expect("one direction per edge")
}
