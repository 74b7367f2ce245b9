use super::graph::{Color, PlabicGraph, VertexKind};
use crate::combinatorics::{DecoratedPermutation, FixedColor};

/// Next non-fixed point after `i`, cyclically.
fn next_moving(sigma: &DecoratedPermutation, i: usize) -> Option<usize> {
    let n = sigma.n();
    (1..n)
        .map(|d| (i - 1 + d) % n + 1)
        .find(|&j| !sigma.is_fixed(j))
}

/// Lexicographically least bridge `(i, j)`: `j` is the next non-fixed point
/// after `i` and the affine values satisfy `f(i) < f(j)` (reading `j` at
/// `j + n` when the pair wraps past `n`).
pub(crate) fn find_bridge(sigma: &DecoratedPermutation) -> Option<(usize, usize)> {
    let n = sigma.n();
    (1..=n).filter(|&i| !sigma.is_fixed(i)).find_map(|i| {
        let j = next_moving(sigma, i)?;
        if j == i {
            return None;
        }
        let fj = if j < i {
            sigma.affine(j) + n
        } else {
            sigma.affine(j)
        };
        (sigma.affine(i) < fj).then_some((i, j))
    })
}

/// Bridge decomposition: the sequence of bridges, first-removed first, and
/// the all-fixed permutation reached at the end.
pub(crate) fn bridge_sequence(
    sigma: &DecoratedPermutation,
) -> (Vec<(usize, usize)>, DecoratedPermutation) {
    let mut cur = sigma.clone();
    let mut seq = Vec::new();
    while let Some((i, j)) = find_bridge(&cur) {
        seq.push((i, j));
        cur = cur.swap_affine(i, j);
    }
    debug_assert!((1..=cur.n()).all(|i| cur.is_fixed(i)));
    (seq, cur)
}

/// Reduced plabic graph of type `σ` built by adding bridges to lollipops.
///
/// `Minus` fixed points become white lollipops and `Plus` fixed points black
/// ones. Each bridge puts a white vertex on the boundary edge at `i` and a
/// black vertex on the boundary edge at `j`, joined just inside the boundary
/// arc from `i` to `j`. The graph carries the perfect orientation in which
/// every bridge points from white to black.
pub fn bridge_graph_from_permutation(sigma: &DecoratedPermutation) -> PlabicGraph {
    let n = sigma.n();
    let (seq, base) = bridge_sequence(sigma);
    let mut kinds: Vec<VertexKind> = (1..=n).map(VertexKind::Boundary).collect();
    let mut edges = Vec::with_capacity(n);
    let mut rotation: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for i in 1..=n {
        let leaf = kinds.len();
        let (color, edge) = match base.color(i) {
            Some(FixedColor::Minus) => (Color::White, [i - 1, leaf]),
            _ => (Color::Black, [leaf, i - 1]),
        };
        kinds.push(VertexKind::Internal(color));
        edges.push(edge);
        rotation.push(vec![i - 1]);
    }
    let mut g = PlabicGraph {
        n,
        kinds,
        edges,
        rotation,
        oriented: true,
    };
    for &(i, j) in seq.iter().rev() {
        let bi = g.boundary_vertex(i);
        let bj = g.boundary_vertex(j);
        let ei = g.rotation[bi][0];
        let ej = g.rotation[bj][0];
        let (a, down_i) = g.subdivide(ei, bi, Color::White);
        let (b, down_j) = g.subdivide(ej, bj, Color::Black);
        let bridge = g.edges.len();
        g.edges.push([a, b]);
        g.rotation[a] = vec![ei, bridge, down_i];
        g.rotation[b] = vec![ej, down_j, bridge];
    }
    debug_assert!(PlabicGraph::new(
        g.n,
        g.kinds.clone(),
        g.edges.clone(),
        g.rotation.clone(),
        true
    )
    .is_ok());
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::parse_permutation;

    #[test]
    fn bridge_count_is_codimension_gap() {
        for spec in [
            "(135)(264)",
            "(12)(34)",
            "(13)(24)",
            "uniform:2,5",
            "id:+,-",
        ] {
            let s = parse_permutation(spec, None).unwrap();
            let (seq, base) = bridge_sequence(&s);
            let k = s.k();
            let n = s.n();
            assert_eq!(seq.len() + s.alignments(), k * (n - k), "{spec}");
            assert_eq!(base.k(), k);
        }
    }

    #[test]
    fn lollipops_for_fixed_points() {
        let s = parse_permutation("id:+,+,+", None).unwrap();
        let g = bridge_graph_from_permutation(&s);
        assert_eq!(g.vertex_count(), 6);
        assert!((3..6).all(|v| g.color(v) == Some(Color::Black)));
        assert_eq!(g.face_count(), 1);
    }
}
