use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use super::matrix::{Rational, RationalMatrix};
use crate::combinatorics::{in_positroid, necklace_from_permutation, GrassmannNecklace, KSet};
use crate::error::{Error, Result};
use crate::plabic::{trips, Color, PlabicGraph, VertexKind};

/// A point of the totally nonnegative part of an open positroid cell,
/// produced by the boundary measurement map of a weighted plabic graph.
#[derive(Debug, Clone, Serialize)]
pub struct CellPoint {
    pub matrix: RationalMatrix,
    /// Positive weight of every edge of `graph`.
    #[serde(serialize_with = "serialize_weights")]
    pub weights: Vec<Rational>,
    #[serde(skip)]
    pub graph: PlabicGraph,
}

fn serialize_weights<S: serde::Serializer>(
    w: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<String> = w.iter().map(super::format_rational).collect();
    v.serialize(s)
}

/// Whether edge `e` is the one distinguished edge of an endpoint under the
/// perfect orientation: the incoming edge of a white vertex or the outgoing
/// edge of a black vertex. These edges form a matching when the graph is
/// bipartite.
fn distinguished(g: &PlabicGraph, e: usize) -> bool {
    let [u, v] = g.edges()[e];
    g.color(u) == Some(Color::Black) || g.color(v) == Some(Color::White)
}

/// Effective flow weight: `w` on distinguished edges, `1/w` elsewhere, so
/// every path through an internal vertex uses one of each and rescaling
/// all edges at that vertex does not change any path weight.
fn flow_weight(g: &PlabicGraph, e: usize, w: &Rational) -> Rational {
    if distinguished(g, e) {
        w.clone()
    } else {
        w.recip()
    }
}

fn topological_order(g: &PlabicGraph) -> Result<Vec<usize>> {
    let m = g.vertex_count();
    let mut indegree = vec![0usize; m];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (e, &[u, v]) in g.edges().iter().enumerate() {
        indegree[v] += 1;
        out[u].push(e);
    }
    let mut stack: Vec<usize> = (0..m).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(m);
    while let Some(v) = stack.pop() {
        order.push(v);
        for &e in &out[v] {
            let u = g.edges()[e][1];
            indegree[u] -= 1;
            if indegree[u] == 0 {
                stack.push(u);
            }
        }
    }
    if order.len() != m {
        return Err(Error::Orientation(
            "the orientation has a directed cycle".into(),
        ));
    }
    Ok(order)
}

/// Boundary measurement matrix of an acyclic perfectly oriented graph.
///
/// Rows are the boundary sources `s_1 < ... < s_k`; row `r` has `1` in
/// column `s_r`, `0` in the other source columns and, in sink column `j`,
/// `(-1)^t` times the sum of path weights from `s_r` to `j`, where `t`
/// counts sources strictly between `s_r` and `j`.
pub fn boundary_measurement(g: &PlabicGraph, weights: &[Rational]) -> Result<RationalMatrix> {
    if !g.is_oriented() {
        return Err(Error::Orientation(
            "graph carries no perfect orientation".into(),
        ));
    }
    if weights.len() != g.edges().len() {
        return Err(Error::Dimension(format!(
            "{} weights for {} edges",
            weights.len(),
            g.edges().len()
        )));
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::Domain("edge weights must be positive".into()));
    }
    let n = g.n();
    let order = topological_order(g)?;
    let sources: Vec<usize> = (1..=n)
        .filter(|&i| {
            let e = g.rotation(g.boundary_vertex(i))[0];
            g.edges()[e][0] == g.boundary_vertex(i)
        })
        .collect();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for (e, &[u, _]) in g.edges().iter().enumerate() {
        out_edges[u].push(e);
    }
    let fw: Vec<Rational> = weights
        .iter()
        .enumerate()
        .map(|(e, w)| flow_weight(g, e, w))
        .collect();
    let mut m = RationalMatrix::zeros(sources.len(), n);
    for (r, &s) in sources.iter().enumerate() {
        let mut reach = vec![Rational::zero(); g.vertex_count()];
        reach[g.boundary_vertex(s)] = Rational::one();
        for &v in &order {
            if reach[v].is_zero() {
                continue;
            }
            for &e in &out_edges[v] {
                let u = g.edges()[e][1];
                let add = &reach[v] * &fw[e];
                reach[u] += add;
            }
        }
        m.set(r, s - 1, Rational::one());
        for j in (1..=n).filter(|j| !sources.contains(j)) {
            let (lo, hi) = (s.min(j), s.max(j));
            let between = sources.iter().filter(|&&x| lo < x && x < hi).count();
            let v = reach[g.boundary_vertex(j)].clone();
            m.set(r, j - 1, if between % 2 == 1 { -v } else { v });
        }
    }
    Ok(m)
}

/// Small positive rationals `p/q` with `p, q` in `1..=9`.
pub fn random_weights<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Vec<Rational> {
    (0..count)
        .map(|_| {
            Rational::new(
                BigInt::from(rng.gen_range(1..=9)),
                BigInt::from(rng.gen_range(1..=9)),
            )
        })
        .collect()
}

/// `{I : Δ_I(m) = 0}` over all k-subsets.
pub fn vanishing_set(m: &RationalMatrix) -> Result<BTreeSet<KSet>> {
    let mut out = BTreeSet::new();
    for i in KSet::all(m.cols(), m.rows()) {
        if m.minor(&i)?.is_zero() {
            out.insert(i);
        }
    }
    Ok(out)
}

/// Check that the Plücker coordinates of `m` vanish exactly off the
/// positroid of `nk` and are positive on it.
pub fn check_profile(m: &RationalMatrix, nk: &GrassmannNecklace) -> Result<()> {
    for i in KSet::all(nk.n(), nk.k()) {
        let d = m.minor(&i)?;
        let inside = in_positroid(nk, &i);
        if inside && !d.is_positive() {
            return Err(Error::Degenerate(format!(
                "Δ{} = {} inside the positroid",
                i.label(),
                d
            )));
        }
        if !inside && !d.is_zero() {
            return Err(Error::Degenerate(format!(
                "Δ{} = {} outside the positroid",
                i.label(),
                d
            )));
        }
    }
    Ok(())
}

impl CellPoint {
    /// Boundary measurement of `g` with the given weights, validated against
    /// the positroid of the trip permutation.
    pub fn new(g: &PlabicGraph, weights: Vec<Rational>) -> Result<CellPoint> {
        let matrix = boundary_measurement(g, &weights)?;
        let (_, sigma) = trips(g)?;
        check_profile(&matrix, &necklace_from_permutation(&sigma))?;
        Ok(CellPoint {
            matrix,
            weights,
            graph: g.clone(),
        })
    }

    /// Multiply the weight of every edge at internal vertex `v` by `t`.
    pub fn gauge(&self, v: usize, t: &Rational) -> Result<CellPoint> {
        if !matches!(self.graph.kind(v), VertexKind::Internal(_)) {
            return Err(Error::Domain(format!("vertex {v} is not internal")));
        }
        let mut w = self.weights.clone();
        for &e in self.graph.rotation(v) {
            w[e] = &w[e] * t;
        }
        CellPoint::new(&self.graph, w)
    }
}

/// Random point of the totally nonnegative cell of `g`'s positroid, drawn
/// on the bipartite refinement of `g` with small positive rational weights.
pub fn sample_cell_point<R: Rng + ?Sized>(g: &PlabicGraph, rng: &mut R) -> Result<CellPoint> {
    let b = g.bipartite();
    let w = random_weights(b.edges().len(), rng);
    CellPoint::new(&b, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{all_decorated_permutations, parse_permutation, positroid_members};
    use crate::plabic::bridge_graph_from_permutation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    fn ks(n: usize, l: &str) -> KSet {
        KSet::parse_label(n, l).unwrap()
    }

    #[test]
    fn transposition_unit_weights() {
        let s = parse_permutation("(12)", None).unwrap();
        let g = bridge_graph_from_permutation(&s).bipartite();
        let ones = vec![q(1); g.edges().len()];
        let p = CellPoint::new(&g, ones).unwrap();
        assert_eq!(p.matrix.rows(), 1);
        assert_eq!(p.matrix.minor(&ks(2, "1")).unwrap(), q(1));
        assert!(p.matrix.minor(&ks(2, "2")).unwrap().is_positive());
    }

    #[test]
    fn example_profile() {
        let s = parse_permutation("(135)(264)", None).unwrap();
        let g = bridge_graph_from_permutation(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = sample_cell_point(&g, &mut rng).unwrap();
        let zero: BTreeSet<KSet> = ["123", "345", "156"].iter().map(|l| ks(6, l)).collect();
        assert_eq!(vanishing_set(&p.matrix).unwrap(), zero);
        let positive = KSet::all(6, 3)
            .into_iter()
            .filter(|i| p.matrix.minor(i).unwrap().is_positive())
            .count();
        assert_eq!(positive, 17);
    }

    #[test]
    fn uniform_point_is_totally_positive() {
        let s = parse_permutation("uniform:2,4", None).unwrap();
        let g = bridge_graph_from_permutation(&s);
        let p = sample_cell_point(&g, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        for i in KSet::all(4, 2) {
            assert!(p.matrix.minor(&i).unwrap().is_positive());
        }
    }

    #[test]
    fn bridge_orientations_are_acyclic_and_profiles_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=6 {
            for s in all_decorated_permutations(n) {
                let g = bridge_graph_from_permutation(&s);
                let p = sample_cell_point(&g, &mut rng).unwrap_or_else(|e| panic!("{s}: {e}"));
                let members = positroid_members(&necklace_from_permutation(&s)).unwrap();
                let zero = vanishing_set(&p.matrix).unwrap();
                assert_eq!(zero, members.complement(), "{s}");
            }
        }
    }

    #[test]
    fn gauge_leaves_projective_point() {
        let s = parse_permutation("(135)(264)", None).unwrap();
        let g = bridge_graph_from_permutation(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = sample_cell_point(&g, &mut rng).unwrap();
        let base = ks(6, "124");
        let ratios = |m: &RationalMatrix| -> Vec<Rational> {
            let d = m.minor(&base).unwrap();
            KSet::all(6, 3)
                .iter()
                .map(|i| m.minor(i).unwrap() / &d)
                .collect()
        };
        let before = ratios(&p.matrix);
        for v in p.graph.n()..p.graph.vertex_count() {
            let t = Rational::new(rng.gen_range(2..9).into(), rng.gen_range(1..9).into());
            assert_eq!(
                ratios(&p.gauge(v, &t).unwrap().matrix),
                before,
                "vertex {v}"
            );
        }
    }

    #[test]
    fn plain_path_weights_are_not_gauge_invariant() {
        // control: without the distinguished-edge inversion the ratios move
        let s = parse_permutation("uniform:2,4", None).unwrap();
        let g = bridge_graph_from_permutation(&s).bipartite();
        let mut w = vec![q(1); g.edges().len()];
        let inverted: Vec<Rational> = (0..w.len())
            .map(|e| flow_weight(&g, e, &w[e]).recip())
            .collect();
        let a = boundary_measurement(&g, &inverted).unwrap();
        let v = (g.n()..g.vertex_count())
            .find(|&v| g.degree(v) == 3)
            .unwrap();
        for &e in g.rotation(v) {
            w[e] = q(2);
        }
        let inverted: Vec<Rational> = (0..w.len())
            .map(|e| flow_weight(&g, e, &w[e]).recip())
            .collect();
        let b = boundary_measurement(&g, &inverted).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn rejects_bad_weights() {
        let s = parse_permutation("(12)", None).unwrap();
        let g = bridge_graph_from_permutation(&s);
        assert!(boundary_measurement(&g, &[q(1)]).is_err());
        let zeros = vec![q(0); g.edges().len()];
        assert!(boundary_measurement(&g, &zeros).is_err());
    }
}
