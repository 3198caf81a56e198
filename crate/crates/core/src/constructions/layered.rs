//! Layered orientations of graphs with an ordered partition into independent
//! sets, and the bijection between pair colourings of the graph and
//! (orientation, arc colouring) pairs.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::distinguishing::{is_distinguishing, Colouring};
use crate::error::{Error, Result};
use crate::graph::{Direction, Graph, Orientation, Target};

/// Ordered classes `V_1, ..., V_k` (stored zero-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderedPartition {
    classes: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for c in &classes {
            if c.is_empty() {
                return Err(Error::InvalidPartition("empty class".into()));
            }
            for &v in c {
                if !seen.insert(v) {
                    return Err(Error::InvalidPartition(format!("vertex {v} repeated")));
                }
            }
        }
        Ok(OrderedPartition { classes })
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Class index of every vertex of `g`, checking that the classes cover
    /// `V(g)` and are independent.
    pub fn class_of(&self, g: &Graph) -> Result<Vec<usize>> {
        let mut class = vec![usize::MAX; g.n()];
        for (i, c) in self.classes.iter().enumerate() {
            for &v in c {
                if v >= g.n() {
                    return Err(Error::InvalidPartition(format!("vertex {v} out of range")));
                }
                class[v] = i;
            }
        }
        if let Some(v) = class.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} not covered")));
        }
        if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| class[u] == class[v]) {
            return Err(Error::InvalidPartition(format!(
                "edge {u}-{v} lies inside class {}",
                class[u] + 1
            )));
        }
        Ok(class)
    }
}

/// `"0,1;2,3"`: classes separated by `;`, vertices by `,`.
impl FromStr for OrderedPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let classes = s
            .split(';')
            .map(|part| {
                part.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::InvalidPartition(format!("bad vertex {x:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        OrderedPartition::new(classes)
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .classes
            .iter()
            .map(|c| c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&parts.join(";"))
    }
}

/// Every edge directed from its lower-indexed class to its higher one.
pub fn layered_orientation(g: &Graph, p: &OrderedPartition) -> Result<Orientation> {
    let class = p.class_of(g)?;
    let dirs = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            if class[u] < class[v] {
                Direction::Forward
            } else {
                Direction::Backward
            }
        })
        .collect();
    Orientation::new(g.clone(), dirs)
}

/// An edge colouring with colours in `{0, 1} x {1..=r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PairColouring {
    r: u32,
    pairs: Vec<(u8, u32)>,
}

impl PairColouring {
    pub fn new(r: u32, pairs: Vec<(u8, u32)>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidColouring("r must be positive".into()));
        }
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a > 1 || b == 0 || b > r) {
            return Err(Error::InvalidColouring(format!("pair ({a},{b}) outside C_{r}")));
        }
        Ok(PairColouring { r, pairs })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn pairs(&self) -> &[(u8, u32)] {
        &self.pairs
    }

    /// The same colouring as a plain edge colouring with `2r` colours.
    pub fn flatten(&self) -> Colouring {
        let a = self
            .pairs
            .iter()
            .map(|&(c1, c2)| 2 * (c2 - 1) + c1 as u32 + 1)
            .collect();
        Colouring::new(2 * self.r, a).expect("flattened colours are in range")
    }

    pub fn is_distinguishing(&self, g: &Graph) -> Result<bool> {
        is_distinguishing(&self.flatten(), Target::Graph(g))
    }
}

/// First coordinate picks the direction relative to the layering (`0` keeps
/// it, `1` reverses it), the second becomes the arc colour.
pub fn split_colouring(
    g: &Graph,
    p: &OrderedPartition,
    c: &PairColouring,
) -> Result<(Orientation, Colouring)> {
    if c.pairs.len() != g.m() {
        return Err(Error::InvalidColouring(format!(
            "{} pairs for {} edges",
            c.pairs.len(),
            g.m()
        )));
    }
    let layered = layered_orientation(g, p)?;
    let dirs = layered
        .directions()
        .iter()
        .zip(&c.pairs)
        .map(|(&d, &(c1, _))| if c1 == 0 { d } else { d.reversed() })
        .collect();
    let o = Orientation::new(g.clone(), dirs)?;
    let arc_colours = Colouring::new(c.r, c.pairs.iter().map(|&(_, c2)| c2).collect())?;
    Ok((o, arc_colours))
}

pub fn merge_colouring(
    g: &Graph,
    p: &OrderedPartition,
    o: &Orientation,
    arc_colours: &Colouring,
) -> Result<PairColouring> {
    if o.base() != g {
        return Err(Error::InvalidArgument("orientation of a different graph".into()));
    }
    if arc_colours.len() != g.m() {
        return Err(Error::InvalidColouring(format!(
            "{} colours for {} arcs",
            arc_colours.len(),
            g.m()
        )));
    }
    let layered = layered_orientation(g, p)?;
    let pairs = layered
        .directions()
        .iter()
        .zip(o.directions())
        .zip(arc_colours.assignment())
        .map(|((a, b), &c2)| (u8::from(a != b), c2))
        .collect();
    PairColouring::new(arc_colours.width(), pairs)
}
