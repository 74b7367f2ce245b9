use std::collections::BTreeMap;

use super::graph::{Embedding, PlabicGraph};
use super::trips::{trip_permutation, trips_in, Trip};

/// Reason a plabic graph fails the reducedness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReducedDefect {
    /// Trips do not form a decorated permutation.
    BadTrips(String),
    /// Some internal half-edge lies on no boundary trip.
    ClosedTrip { half_edge: usize },
    /// A trip runs along an edge in both directions away from a leaf.
    SelfIntersection { source: usize, edge: usize },
    /// A fixed trip is not a single boundary leaf.
    FixedNotLeaf { source: usize },
    /// Two trips cross at two edges in the same order.
    BadDoubleCrossing {
        trips: (usize, usize),
        edges: (usize, usize),
    },
    /// `|F(G)| != k(n - k) - a(σ) + 1`.
    FaceCount { faces: usize, expected: i64 },
}

/// First defect found, or `None` when `g` is reduced: no closed trips, no
/// trip meeting itself along an edge, fixed trips only at leaves, no two
/// trips crossing twice in the same order, and the face count matching the
/// dimension of the positroid cell of the trip permutation.
pub fn reduced_defect(g: &PlabicGraph) -> Option<ReducedDefect> {
    let emb = g.embedding();
    let ts = match trips_in(g, &emb) {
        Ok(ts) => ts,
        Err(e) => return Some(ReducedDefect::BadTrips(e.to_string())),
    };
    let perm = match trip_permutation(&ts) {
        Ok(p) => p,
        Err(e) => return Some(ReducedDefect::BadTrips(e.to_string())),
    };
    let mut covered = vec![false; 2 * emb.edge_count];
    for t in &ts {
        for &h in &t.half_edges {
            covered[h] = true;
        }
    }
    if let Some(h) = covered.iter().position(|c| !c) {
        return Some(ReducedDefect::ClosedTrip { half_edge: h });
    }
    for t in &ts {
        if t.is_fixed() {
            if t.half_edges.len() != 2 {
                return Some(ReducedDefect::FixedNotLeaf { source: t.source });
            }
            continue;
        }
        let mut seen = BTreeMap::new();
        for &h in &t.half_edges {
            // turning back at an internal leaf is a U-turn, not a crossing
            let leaf = g.degree(emb.head(h)) == 1 || g.degree(emb.origin[h]) == 1;
            if let Some(&other) = seen.get(&Embedding::edge(h)) {
                if other != h && !leaf {
                    return Some(ReducedDefect::SelfIntersection {
                        source: t.source,
                        edge: Embedding::edge(h),
                    });
                }
            }
            seen.insert(Embedding::edge(h), h);
        }
    }
    if let Some(d) = bad_double_crossing(&ts) {
        return Some(d);
    }
    let (n, k) = (perm.n() as i64, perm.k() as i64);
    let expected = k * (n - k) - perm.alignments() as i64 + 1;
    let faces = emb.face_count - 1;
    if faces as i64 != expected {
        return Some(ReducedDefect::FaceCount { faces, expected });
    }
    None
}

pub fn validate_reduced(g: &PlabicGraph) -> bool {
    reduced_defect(g).is_none()
}

fn bad_double_crossing(ts: &[Trip]) -> Option<ReducedDefect> {
    // position of each edge along each trip
    let positions: Vec<BTreeMap<usize, usize>> = ts
        .iter()
        .map(|t| {
            t.half_edges
                .iter()
                .enumerate()
                .map(|(p, &h)| (Embedding::edge(h), p))
                .collect()
        })
        .collect();
    for a in 0..ts.len() {
        if ts[a].is_fixed() {
            continue;
        }
        for b in a + 1..ts.len() {
            if ts[b].is_fixed() {
                continue;
            }
            // shared edges in the order trip `a` meets them
            let mut shared: Vec<(usize, usize, usize)> = positions[a]
                .iter()
                .filter_map(|(&e, &pa)| positions[b].get(&e).map(|&pb| (pa, pb, e)))
                .collect();
            shared.sort();
            for x in 0..shared.len() {
                for y in x + 1..shared.len() {
                    if shared[x].1 < shared[y].1 {
                        return Some(ReducedDefect::BadDoubleCrossing {
                            trips: (ts[a].source, ts[b].source),
                            edges: (shared[x].2, shared[y].2),
                        });
                    }
                }
            }
        }
    }
    None
}
