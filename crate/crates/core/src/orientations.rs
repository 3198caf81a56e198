//! All orientations of a graph, up to automorphism, and the extreme values
//! of the distinguishing index over them.
//!
//! Orientations are identified with their direction codes (see
//! [`Orientation::code`]). `Aut(G)` acts on codes through its action on
//! edges: an automorphism sends edge `e` to edge `e'`, possibly flipping
//! which endpoint is the smaller one. Orbits are swept in increasing code
//! order, so the first code of each orbit is its least element.

use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::aut::group_summary;
use crate::distinguishing::{distinguishing_colouring_within, dprime, Colouring};
use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation, Target};
use crate::perm::Permutation;
use crate::search::{self, Structure};
use crate::Limits;

/// Absolute ceiling on the edge cap: beyond this even the orbit bitmap is
/// unreasonable.
pub const MAX_EDGE_CAP: usize = 32;

#[derive(Clone, Debug, Serialize)]
pub struct OdMin {
    pub value: u32,
    pub orientation: Orientation,
    pub colouring: Colouring,
}

#[derive(Clone, Debug, Serialize)]
pub struct OdMax {
    pub value: u32,
    pub orientation: Orientation,
}

#[derive(Clone, Debug, Serialize)]
pub struct ODResult {
    pub od_minus: u32,
    pub od_plus: u32,
    pub witness_min: OdMin,
    pub witness_max: OdMax,
}

/// How one automorphism moves direction codes.
struct CodeMap {
    m: usize,
    target: Vec<usize>,
    flip: Vec<bool>,
}

impl CodeMap {
    fn new(g: &Graph, p: &Permutation) -> Self {
        let mut target = Vec::with_capacity(g.m());
        let mut flip = Vec::with_capacity(g.m());
        for &(u, v) in g.edges() {
            let (a, b) = (p.apply(u), p.apply(v));
            target.push(g.edge_index(a, b).expect("automorphisms map edges to edges"));
            flip.push(a > b);
        }
        CodeMap {
            m: g.m(),
            target,
            flip,
        }
    }

    fn apply(&self, code: u64) -> u64 {
        let m = self.m;
        let mut out = 0;
        for e in 0..m {
            let bit = (code >> (m - 1 - e) & 1) ^ self.flip[e] as u64;
            out |= bit << (m - 1 - self.target[e]);
        }
        out
    }
}

fn check_cap(g: &Graph, limits: &Limits) -> Result<()> {
    let cap = limits.edge_cap.min(MAX_EDGE_CAP);
    if g.m() > cap {
        return Err(Error::EdgeCapExceeded { edges: g.m(), cap });
    }
    Ok(())
}

/// Direction codes of all orientations (`dedup = false`) or of the least
/// member of each `Aut(g)`-orbit (`dedup = true`), ascending.
pub fn orientation_codes(g: &Graph, dedup: bool, limits: &Limits) -> Result<Vec<u64>> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    check_cap(g, limits)?;
    let total = 1u64 << g.m();
    if !dedup {
        return Ok((0..total).collect());
    }
    let maps: Vec<CodeMap> = group_summary(Target::Graph(g))
        .generators
        .iter()
        .map(|p| CodeMap::new(g, p))
        .collect();
    if maps.is_empty() {
        return Ok((0..total).collect());
    }
    let mut seen = vec![0u64; (total as usize).div_ceil(64)];
    let mark = |seen: &mut [u64], c: u64| -> bool {
        let (w, b) = ((c / 64) as usize, c % 64);
        let fresh = seen[w] >> b & 1 == 0;
        seen[w] |= 1 << b;
        fresh
    };
    let mut reps = Vec::new();
    let mut stack = Vec::new();
    for c in 0..total {
        if !mark(&mut seen, c) {
            continue;
        }
        reps.push(c);
        stack.push(c);
        while let Some(x) = stack.pop() {
            for map in &maps {
                let y = map.apply(x);
                if mark(&mut seen, y) {
                    stack.push(y);
                }
            }
        }
    }
    Ok(reps)
}

pub fn enumerate_orientations<'a>(
    g: &'a Graph,
    dedup: bool,
    limits: &Limits,
) -> Result<impl Iterator<Item = Orientation> + 'a> {
    let codes = orientation_codes(g, dedup, limits)?;
    Ok(codes.into_iter().map(move |c| Orientation::from_code(g, c)))
}

fn check_od_preconditions(g: &Graph, limits: &Limits) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if g.is_k2() {
        return Err(Error::IsK2);
    }
    check_cap(g, limits)
}

fn is_rigid_code(g: &Graph, code: u64) -> bool {
    search::is_rigid(&Structure::orientation(&Orientation::from_code(g, code), None))
}

fn dprime_code(g: &Graph, code: u64) -> u32 {
    let o = Orientation::from_code(g, code);
    dprime(Target::Orientation(&o))
        .expect("orientations of connected graphs have a distinguishing index")
        .value
}

/// The first orientation, in orbit-representative order, with a trivial
/// automorphism group.
pub fn find_rigid_orientation(g: &Graph, limits: &Limits) -> Result<Option<Orientation>> {
    let reps = orientation_codes(g, true, limits)?;
    Ok(reps
        .par_iter()
        .find_first(|&&c| is_rigid_code(g, c))
        .map(|&c| Orientation::from_code(g, c)))
}

/// Level by level: the least `k` for which some orientation has a
/// distinguishing `k`-colouring. Orientations are never searched above the
/// answer, which is where exact indices get expensive.
pub fn od_minus(g: &Graph, limits: &Limits) -> Result<OdMin> {
    check_od_preconditions(g, limits)?;
    let reps = orientation_codes(g, true, limits)?;
    if let Some(&c) = reps.par_iter().find_first(|&&c| is_rigid_code(g, c)) {
        return Ok(OdMin {
            value: 1,
            orientation: Orientation::from_code(g, c),
            colouring: Colouring::uniform(g.m()),
        });
    }
    for k in 2..=g.m() as u32 {
        let hit = reps.par_iter().find_map_first(|&c| {
            let o = Orientation::from_code(g, c);
            distinguishing_colouring_within(Target::Orientation(&o), k)
                .expect("orientations of connected graphs")
                .map(|colouring| (o, colouring))
        });
        if let Some((orientation, colouring)) = hit {
            return Ok(OdMin {
                value: k,
                orientation,
                colouring,
            });
        }
    }
    unreachable!("m colours always distinguish")
}

pub fn od_plus(g: &Graph, limits: &Limits) -> Result<OdMax> {
    check_od_preconditions(g, limits)?;
    let reps = orientation_codes(g, true, limits)?;
    let (value, code) = max_over(g, &reps)?;
    Ok(OdMax {
        value,
        orientation: Orientation::from_code(g, code),
    })
}

/// Largest index over `reps`, ties to the least code. No orientation can
/// exceed `D'(g)`, so the sweep stops at the first representative that
/// reaches it.
fn max_over(g: &Graph, reps: &[u64]) -> Result<(u32, u64)> {
    let bound = dprime(Target::Graph(g))?.value;
    let values: Vec<AtomicU32> = reps.iter().map(|_| AtomicU32::new(0)).collect();
    let hit = (0..reps.len()).into_par_iter().find_first(|&i| {
        let v = dprime_code(g, reps[i]);
        values[i].store(v, Ordering::Relaxed);
        v == bound
    });
    if let Some(i) = hit {
        return Ok((bound, reps[i]));
    }
    let best = (0..reps.len())
        .into_par_iter()
        .map(|i| {
            let v = match values[i].load(Ordering::Relaxed) {
                0 => dprime_code(g, reps[i]),
                v => v,
            };
            (v, std::cmp::Reverse(reps[i]))
        })
        .max()
        .expect("at least one orientation");
    Ok((best.0, best.1 .0))
}

pub fn od_values(g: &Graph, limits: &Limits) -> Result<ODResult> {
    let witness_min = od_minus(g, limits)?;
    let witness_max = od_plus(g, limits)?;
    Ok(ODResult {
        od_minus: witness_min.value,
        od_plus: witness_max.value,
        witness_min,
        witness_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::automorphism_group;

    fn l() -> Limits {
        Limits::default()
    }

    /// Orbit count by Burnside's lemma over the enumerated group.
    fn burnside(g: &Graph) -> u64 {
        let grp = automorphism_group(Target::Graph(g), &l()).unwrap();
        let total: u64 = grp
            .elements()
            .iter()
            .map(|p| {
                let map = CodeMap::new(g, p);
                (0..1u64 << g.m()).filter(|&c| map.apply(c) == c).count() as u64
            })
            .sum();
        total / grp.order() as u64
    }

    #[test]
    fn counts() {
        let p3 = Graph::path(3);
        assert_eq!(orientation_codes(&p3, false, &l()).unwrap().len(), 4);
        assert_eq!(orientation_codes(&p3, true, &l()).unwrap().len(), 3);
        let k2 = Graph::path(2);
        assert_eq!(orientation_codes(&k2, false, &l()).unwrap().len(), 2);
        assert_eq!(orientation_codes(&k2, true, &l()).unwrap(), vec![0]);
        let c4 = Graph::cycle(4);
        assert_eq!(orientation_codes(&c4, false, &l()).unwrap().len(), 16);
        assert_eq!(orientation_codes(&c4, true, &l()).unwrap().len(), 4);
        assert_eq!(burnside(&c4), 4);
    }

    #[test]
    fn orbit_counts_match_burnside() {
        for g in [
            Graph::complete(4),
            Graph::star(4),
            Graph::complete_bipartite(2, 3),
            Graph::cycle(6),
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]),
        ] {
            let reps = orientation_codes(&g, true, &l()).unwrap();
            assert_eq!(reps.len() as u64, burnside(&g), "{g:?}");
        }
    }

    #[test]
    fn edge_cap() {
        let k7 = Graph::complete(7);
        assert!(matches!(
            orientation_codes(&k7, true, &l()),
            Err(Error::EdgeCapExceeded { edges: 21, cap: 20 })
        ));
        let tight = Limits {
            edge_cap: 3,
            ..l()
        };
        assert!(od_minus(&Graph::cycle(4), &tight).is_err());
    }

    #[test]
    fn extremes() {
        let (p4, k13, c4) = (Graph::path(4), Graph::star(3), Graph::cycle(4));
        assert_eq!(od_minus(&p4, &l()).unwrap().value, 1);
        assert_eq!(od_minus(&k13, &l()).unwrap().value, 2);
        assert_eq!(od_minus(&c4, &l()).unwrap().value, 1);
        assert_eq!(od_plus(&k13, &l()).unwrap().value, 3);
        assert_eq!(od_plus(&c4, &l()).unwrap().value, 2);
        assert_eq!(od_plus(&p4, &l()).unwrap().value, 1);
        assert!(matches!(od_minus(&Graph::path(2), &l()), Err(Error::IsK2)));
    }

    #[test]
    fn rigid_orientations() {
        assert!(find_rigid_orientation(&Graph::star(3), &l()).unwrap().is_none());
        assert!(find_rigid_orientation(&Graph::path(4), &l()).unwrap().is_some());
        let o = find_rigid_orientation(&Graph::cycle(6), &l()).unwrap().unwrap();
        assert!(crate::aut::is_rigid(Target::Orientation(&o)));
    }

    #[test]
    fn witnesses_are_consistent() {
        for g in [Graph::star(3), Graph::cycle(5), Graph::complete(4)] {
            let r = od_values(&g, &l()).unwrap();
            assert!(r.od_minus <= r.od_plus);
            let wm = &r.witness_min;
            assert_eq!(wm.colouring.width(), r.od_minus);
            assert!(crate::distinguishing::is_distinguishing(
                &wm.colouring,
                Target::Orientation(&wm.orientation)
            )
            .unwrap());
            let d = dprime(Target::Orientation(&r.witness_max.orientation)).unwrap();
            assert_eq!(d.value, r.od_plus);
        }
    }
}
