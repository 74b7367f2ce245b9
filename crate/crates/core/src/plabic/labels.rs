use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::graph::{Embedding, PlabicGraph};
use super::trips::{trip_permutation, trips_in, Trip};
use crate::combinatorics::{FixedColor, KSet};
use crate::error::{Error, Result};

/// Left-target face labels of a plabic graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLabeling {
    /// Faces are numbered `0..len()`; face `f` carries `labels[f]`.
    pub labels: Vec<KSet>,
    /// `boundary_faces[i - 1]` is the face touching the boundary arc from
    /// `i - 1` to `i`.
    pub boundary_faces: Vec<usize>,
}

impl FaceLabeling {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_boundary(&self, f: usize) -> bool {
        self.boundary_faces.contains(&f)
    }

    pub fn collection(&self) -> BTreeSet<KSet> {
        self.labels.iter().copied().collect()
    }

    pub fn boundary_labels(&self) -> Vec<KSet> {
        self.boundary_faces
            .iter()
            .map(|&f| self.labels[f])
            .collect()
    }

    pub fn interior_labels(&self) -> Vec<KSet> {
        (0..self.labels.len())
            .filter(|f| !self.is_boundary(*f))
            .map(|f| self.labels[f])
            .collect()
    }
}

/// Map from embedding face ids to dense ids for faces inside the disk.
pub(crate) fn inner_faces(emb: &Embedding) -> Vec<Option<usize>> {
    let mut map = vec![None; emb.face_count];
    let mut next = 0;
    for (f, slot) in map.iter_mut().enumerate() {
        if f != emb.outer {
            *slot = Some(next);
            next += 1;
        }
    }
    map
}

/// Faces lying to the left of a trip: seed with the left face of every
/// traversed edge that the trip does not also run back along, then flood
/// across edges the trip does not use.
fn left_of(emb: &Embedding, trip: &Trip) -> BTreeSet<usize> {
    let used: BTreeSet<usize> = trip
        .half_edges
        .iter()
        .map(|&h| Embedding::edge(h))
        .collect();
    let hs: BTreeSet<usize> = trip.half_edges.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for &h in &trip.half_edges {
        if !hs.contains(&Embedding::twin(h)) {
            let f = emb.face[h];
            if f != emb.outer && seen.insert(f) {
                queue.push_back(f);
            }
        }
    }
    let total = emb.origin.len();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); emb.face_count];
    for h in 0..total {
        if !used.contains(&Embedding::edge(h)) && !emb.is_arc(h) {
            adjacency[emb.face[h]].push(emb.face[Embedding::twin(h)]);
        }
    }
    while let Some(f) = queue.pop_front() {
        for &g in &adjacency[f] {
            if g != emb.outer && seen.insert(g) {
                queue.push_back(g);
            }
        }
    }
    seen
}

pub(crate) fn labels_in(g: &PlabicGraph, emb: &Embedding, ts: &[Trip]) -> Result<FaceLabeling> {
    let n = g.n();
    let dense = inner_faces(emb);
    let count = emb.face_count - 1;
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    let perm = trip_permutation(ts)?;
    for t in ts {
        if t.is_fixed() {
            if perm.color(t.source) == Some(FixedColor::Minus) {
                for m in members.iter_mut() {
                    m.push(t.source);
                }
            }
            continue;
        }
        for f in left_of(emb, t) {
            members[dense[f].expect("inner face")].push(t.target);
        }
    }
    let labels: Vec<KSet> = members
        .into_iter()
        .map(|m| KSet::new(n, m))
        .collect::<Result<_>>()?;
    let boundary_faces = (1..=n)
        .map(|i| {
            // interior side of the arc (i-1 -> i) is left of its reverse half-edge
            let prev = if i == 1 { n } else { i - 1 };
            let h = emb.arc_forward(prev) + 1;
            dense[emb.face[h]].expect("arc borders an inner face")
        })
        .collect();
    let mut first: BTreeMap<KSet, usize> = BTreeMap::new();
    for (f, l) in labels.iter().enumerate() {
        if let Some(&g) = first.get(l) {
            return Err(Error::LabelCollision(g, f, *l));
        }
        first.insert(*l, f);
    }
    Ok(FaceLabeling {
        labels,
        boundary_faces,
    })
}

/// Label each face by the targets of the trips passing it on their left.
pub fn face_labels(g: &PlabicGraph) -> Result<FaceLabeling> {
    let emb = g.embedding();
    let ts = trips_in(g, &emb)?;
    labels_in(g, &emb, &ts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{necklace_from_permutation, noncrossing, parse_permutation};
    use crate::plabic::bridge_graph_from_permutation;

    fn ks(n: usize, l: &str) -> KSet {
        KSet::parse_label(n, l).unwrap()
    }

    #[test]
    fn gr24_labels() {
        let s = parse_permutation("uniform:2,4", None).unwrap();
        let fl = face_labels(&bridge_graph_from_permutation(&s)).unwrap();
        assert_eq!(fl.len(), 5);
        let boundary: Vec<KSet> = ["12", "23", "34", "14"].iter().map(|l| ks(4, l)).collect();
        let nk = necklace_from_permutation(&s);
        assert_eq!(fl.boundary_labels(), nk.sets());
        let mut b = fl.boundary_labels();
        b.sort();
        let mut expected = boundary.clone();
        expected.sort();
        assert_eq!(b, expected);
        let interior = fl.interior_labels();
        assert_eq!(interior.len(), 1);
        assert!(interior[0] == ks(4, "13") || interior[0] == ks(4, "24"));
    }

    #[test]
    fn example_labels() {
        let s = parse_permutation("(135)(264)", None).unwrap();
        let fl = face_labels(&bridge_graph_from_permutation(&s)).unwrap();
        let nk = necklace_from_permutation(&s);
        assert_eq!(fl.boundary_labels(), nk.sets());
        assert_eq!(fl.interior_labels(), vec![ks(6, "246")]);
    }

    #[test]
    fn rank_zero_single_empty_label() {
        let s = parse_permutation("id:+,+,+", None).unwrap();
        let fl = face_labels(&bridge_graph_from_permutation(&s)).unwrap();
        assert_eq!(fl.labels, vec![KSet::empty(3)]);
    }

    #[test]
    fn labels_pairwise_noncrossing() {
        let s = parse_permutation("uniform:3,6", None).unwrap();
        let fl = face_labels(&bridge_graph_from_permutation(&s)).unwrap();
        assert_eq!(fl.len(), 10);
        for a in &fl.labels {
            for b in &fl.labels {
                assert!(noncrossing(a, b));
            }
        }
    }
}
