use crate::aut::{arc_permutation, is_twisted, ordered_arcs};
use crate::error::{Error, Result};
use crate::graph::{Direction, Graph, Orientation};
use crate::perm::Permutation;

/// An orientation preserved by the non-twisted automorphism `p`.
///
/// Cycles of the induced arc permutation are taken in order of their least
/// arc. A cycle none of whose edges is directed yet has its least arc adopted
/// and pushed around the cycle; a cycle that meets directed edges is the
/// mirror of one already swept and is only checked.
pub fn compatible_orientation(g: &Graph, p: &Permutation) -> Result<Orientation> {
    if is_twisted(g, p)? {
        return Err(Error::Twisted);
    }
    let arcs = ordered_arcs(g);
    let ap = arc_permutation(g, p)?;
    let mut dirs: Vec<Option<Direction>> = vec![None; g.m()];
    let edge_of = |(u, v): (usize, usize)| {
        let e = g.edge_index(u, v).expect("arc of g");
        let d = if u < v {
            Direction::Forward
        } else {
            Direction::Backward
        };
        (e, d)
    };
    for cycle in ap.cycles() {
        let fresh = cycle.iter().all(|&a| dirs[edge_of(arcs[a]).0].is_none());
        for &a in &cycle {
            let (e, d) = edge_of(arcs[a]);
            match dirs[e] {
                None if fresh => dirs[e] = Some(d),
                // the mirror of a swept cycle holds the reversed arcs
                Some(x) if !fresh && x == d.reversed() => {}
                _ => {
                    return Err(Error::Construction(format!(
                        "arc {:?} conflicts while sweeping cycle {cycle:?}",
                        arcs[a]
                    )))
                }
            }
        }
    }
    let dirs = dirs
        .into_iter()
        .map(|d| d.expect("every edge lies on a swept cycle"))
        .collect();
    Orientation::new(g.clone(), dirs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::is_automorphism;
    use crate::graph::Target;

    #[test]
    fn rotation_of_c4() {
        let g = Graph::cycle(4);
        let rot = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let o = compatible_orientation(&g, &rot).unwrap();
        assert!(o.has_arc(0, 1) && o.has_arc(1, 2) && o.has_arc(2, 3) && o.has_arc(3, 0));
        assert!(is_automorphism(Target::Orientation(&o), &rot));
    }

    #[test]
    fn leaf_swap_of_p3() {
        let g = Graph::path(3);
        let swap = Permutation::from_cycles(3, &[&[0, 2]]).unwrap();
        let o = compatible_orientation(&g, &swap).unwrap();
        assert!(o.has_arc(0, 1) && o.has_arc(2, 1));
        assert!(is_automorphism(Target::Orientation(&o), &swap));
    }

    #[test]
    fn twisted_is_refused() {
        let g = Graph::cycle(4);
        let refl = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        assert!(matches!(compatible_orientation(&g, &refl), Err(Error::Twisted)));
        let bad = Permutation::from_cycles(4, &[&[0, 2]]).unwrap();
        assert!(matches!(
            compatible_orientation(&Graph::path(4), &bad),
            Err(Error::NotAutomorphism)
        ));
    }
}
