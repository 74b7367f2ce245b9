use std::collections::{BTreeMap, BTreeSet};

use super::graph::{Color, Embedding, PlabicGraph};
use super::labels::{inner_faces, labels_in, FaceLabeling};
use super::trips::trips_in;
use crate::cluster::{IceQuiver, QuiverVertex};
use crate::combinatorics::{GrassmannNecklace, KSet};
use crate::error::Result;

/// Quiver vertices for a labeled collection, sorted by label.
fn vertices_for(
    labels: &[KSet],
    frozen: &BTreeSet<KSet>,
) -> (Vec<QuiverVertex>, BTreeMap<KSet, usize>) {
    let mut sorted = labels.to_vec();
    sorted.sort();
    let index = sorted.iter().enumerate().map(|(p, l)| (*l, p)).collect();
    let vertices = sorted
        .iter()
        .map(|l| QuiverVertex {
            frozen: frozen.contains(l),
            label: Some(*l),
        })
        .collect();
    (vertices, index)
}

/// Arrows of the face quiver before 2-cycles cancel, indexed by face.
/// One arrow crosses every edge joining a white and a black internal vertex,
/// oriented so the white endpoint is on its left.
pub(crate) fn raw_face_arrows(g: &PlabicGraph, emb: &Embedding) -> Vec<(usize, usize)> {
    let dense = inner_faces(emb);
    let mut out = Vec::new();
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        let (cu, cv) = (g.color(u), g.color(v));
        let h = match (cu, cv) {
            (Some(Color::White), Some(Color::Black)) => 2 * e,
            (Some(Color::Black), Some(Color::White)) => 2 * e + 1,
            _ => continue,
        };
        let left = emb.face[h];
        let right = emb.face[Embedding::twin(h)];
        if left == right {
            continue;
        }
        if let (Some(l), Some(r)) = (dense[left], dense[right]) {
            out.push((l, r));
        }
    }
    out
}

/// Face quiver of a reduced plabic graph: vertices are faces (labeled by the
/// left-target rule, frozen on the boundary), arrows as in
/// [`raw_face_arrows`] with opposite pairs cancelled.
pub fn quiver_from_graph(g: &PlabicGraph) -> Result<IceQuiver> {
    let emb = g.embedding();
    let ts = trips_in(g, &emb)?;
    let fl = labels_in(g, &emb, &ts)?;
    quiver_with_labels(g, &emb, &fl)
}

pub(crate) fn quiver_with_labels(
    g: &PlabicGraph,
    emb: &Embedding,
    fl: &FaceLabeling,
) -> Result<IceQuiver> {
    let frozen: BTreeSet<KSet> = fl.boundary_labels().into_iter().collect();
    let (vertices, index) = vertices_for(&fl.labels, &frozen);
    let arrows: Vec<(usize, usize)> = raw_face_arrows(g, emb)
        .into_iter()
        .map(|(a, b)| (index[&fl.labels[a]], index[&fl.labels[b]]))
        .collect();
    IceQuiver::from_arrows(vertices, &arrows)
}

/// Raw face arrows in label form, for loop and 2-cycle diagnostics.
pub fn labeled_raw_arrows(g: &PlabicGraph) -> Result<Vec<(KSet, KSet, bool)>> {
    let emb = g.embedding();
    let ts = trips_in(g, &emb)?;
    let fl = labels_in(g, &emb, &ts)?;
    Ok(raw_face_arrows(g, &emb)
        .into_iter()
        .map(|(a, b)| {
            let both_frozen = fl.is_boundary(a) && fl.is_boundary(b);
            (fl.labels[a], fl.labels[b], both_frozen)
        })
        .collect())
}

/// Face quiver computed from a maximal non-crossing collection alone, through
/// its white cliques `{S : K ⊂ S}` (`|K| = k - 1`) and black cliques
/// `{S : S ⊂ L}` (`|L| = k + 1`). Two labels `Ka`, `Kb` are adjacent when
/// both cliques through them have at least three members and the pair is
/// consecutive in both cyclic orders; the arrow runs `Ka -> Kb` when `b`
/// follows `a` in the cyclic order of the white clique.
pub fn quiver_from_collection(
    collection: &BTreeSet<KSet>,
    necklace: &GrassmannNecklace,
) -> Result<IceQuiver> {
    let frozen: BTreeSet<KSet> = necklace.iter().copied().collect();
    collection_quiver(collection, &frozen)
}

pub(crate) fn collection_quiver(
    collection: &BTreeSet<KSet>,
    frozen: &BTreeSet<KSet>,
) -> Result<IceQuiver> {
    let labels: Vec<KSet> = collection.iter().copied().collect();
    let (vertices, index) = vertices_for(&labels, frozen);
    let mut arrows = Vec::new();
    for (p, s) in labels.iter().enumerate() {
        for t in &labels[p + 1..] {
            let common = s.intersection(t);
            if common.k() + 1 != s.k() {
                continue;
            }
            let union = s.union(t);
            // white clique: added element, cyclically sorted
            let white: Vec<usize> = labels
                .iter()
                .filter(|x| common.is_subset(x))
                .map(|x| x.minus(&common).iter().next().expect("one extra element"))
                .collect::<BTreeSet<usize>>()
                .into_iter()
                .collect();
            let black: Vec<usize> = labels
                .iter()
                .filter(|x| x.is_subset(&union))
                .map(|x| union.minus(x).iter().next().expect("one missing element"))
                .collect::<BTreeSet<usize>>()
                .into_iter()
                .collect();
            if white.len() < 3 || black.len() < 3 {
                continue;
            }
            let a = s.minus(&common).iter().next().expect("a");
            let b = t.minus(&common).iter().next().expect("b");
            let (a_succ, b_succ) = (cyclic_successor(&white, a), cyclic_successor(&white, b));
            let white_adjacent = a_succ == b || b_succ == a;
            let black_adjacent = {
                let (x, y) = (cyclic_successor(&black, a), cyclic_successor(&black, b));
                x == b || y == a
            };
            if !(white_adjacent && black_adjacent) {
                continue;
            }
            let (src, dst) = if a_succ == b { (s, t) } else { (t, s) };
            arrows.push((index[src], index[dst]));
        }
    }
    IceQuiver::from_arrows(vertices, &arrows)
}

fn cyclic_successor(sorted: &[usize], x: usize) -> usize {
    let p = sorted.iter().position(|&y| y == x).expect("member");
    sorted[(p + 1) % sorted.len()]
}
