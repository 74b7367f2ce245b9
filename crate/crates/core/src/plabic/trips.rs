use std::collections::BTreeMap;

use super::graph::{Color, Embedding, PlabicGraph, VertexKind};
use crate::combinatorics::{DecoratedPermutation, FixedColor};
use crate::error::{Error, Result};

/// A trip from boundary vertex `source` to boundary vertex `target`: turn
/// maximally right at black vertices, maximally left at white ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trip {
    pub source: usize,
    pub target: usize,
    /// Half-edges traversed, in order (`2e` runs along `edges[e]`, `2e + 1`
    /// against it).
    pub half_edges: Vec<usize>,
    /// For a trip that returns to its source, the color of the leaf it turns
    /// around at.
    pub turnaround: Option<Color>,
}

impl Trip {
    pub fn is_fixed(&self) -> bool {
        self.source == self.target
    }
}

pub(crate) fn trips_in(g: &PlabicGraph, emb: &Embedding) -> Result<Vec<Trip>> {
    let n = g.n();
    let limit = emb.origin.len() + 1;
    let mut out = Vec::with_capacity(n);
    for i in 1..=n {
        let v = g.boundary_vertex(i);
        // the internal half-edge leaving the boundary vertex sits in slot 1
        let mut h = emb.around[v][1];
        let mut half_edges = vec![h];
        let mut turnaround = None;
        loop {
            let w = emb.head(h);
            match g.kind(w) {
                VertexKind::Boundary(t) => {
                    out.push(Trip {
                        source: i,
                        target: t,
                        half_edges,
                        turnaround,
                    });
                    break;
                }
                VertexKind::Internal(c) => {
                    if g.degree(w) == 1 && turnaround.is_none() {
                        turnaround = Some(c);
                    }
                    let back = Embedding::twin(h);
                    h = match c {
                        Color::White => emb.cw_next(back),
                        Color::Black => emb.ccw_next(back),
                    };
                }
            }
            half_edges.push(h);
            if half_edges.len() > limit {
                return Err(Error::Embedding(format!(
                    "trip from {i} does not terminate"
                )));
            }
        }
    }
    Ok(out)
}

/// All trips, one per boundary source, and the decorated permutation they
/// realize. Fixed points are colored `Minus` when the trip turns at a white
/// leaf and `Plus` at a black one.
pub fn trips(g: &PlabicGraph) -> Result<(Vec<Trip>, DecoratedPermutation)> {
    let emb = g.embedding();
    let ts = trips_in(g, &emb)?;
    let perm = trip_permutation(&ts)?;
    Ok((ts, perm))
}

pub(crate) fn trip_permutation(ts: &[Trip]) -> Result<DecoratedPermutation> {
    let image: Vec<usize> = ts.iter().map(|t| t.target).collect();
    let mut colors = BTreeMap::new();
    for t in ts.iter().filter(|t| t.is_fixed()) {
        let c = match t.turnaround {
            Some(Color::White) => FixedColor::Minus,
            Some(Color::Black) => FixedColor::Plus,
            None => {
                return Err(Error::Embedding(format!(
                    "trip from {} returns without meeting a leaf",
                    t.source
                )))
            }
        };
        colors.insert(t.source, c);
    }
    DecoratedPermutation::new(image, colors)
        .map_err(|e| Error::Embedding(format!("trips are not a permutation: {e}")))
}
