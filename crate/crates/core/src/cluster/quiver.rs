use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::combinatorics::KSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuiverVertex {
    pub frozen: bool,
    pub label: Option<KSet>,
}

/// Ice quiver stored as its signed arrow-count matrix:
/// `b[i][j]` = #arrows `i -> j` minus #arrows `j -> i`.
///
/// Arrows between two frozen vertices are kept in the matrix (mutation
/// creates and cancels them like any other) but are ignored by every
/// `Q°` comparison.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IceQuiver {
    vertices: Vec<QuiverVertex>,
    b: Vec<Vec<i64>>,
}

impl IceQuiver {
    pub fn new(vertices: Vec<QuiverVertex>, b: Vec<Vec<i64>>) -> Result<Self> {
        let m = vertices.len();
        if b.len() != m || b.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension(format!(
                "exchange matrix is not {m} x {m}"
            )));
        }
        for (i, row) in b.iter().enumerate() {
            if row[i] != 0 {
                return Err(Error::Domain(format!("loop at vertex {i}")));
            }
            for (j, &x) in row.iter().enumerate() {
                if x != -b[j][i] {
                    return Err(Error::Domain(format!(
                        "b[{i}][{j}] and b[{j}][{i}] are not opposite"
                    )));
                }
            }
        }
        Ok(IceQuiver { vertices, b })
    }

    /// Build from a list of arrows; opposite arrows cancel in pairs.
    pub fn from_arrows(vertices: Vec<QuiverVertex>, arrows: &[(usize, usize)]) -> Result<Self> {
        let m = vertices.len();
        let mut b = vec![vec![0i64; m]; m];
        for &(s, t) in arrows {
            if s >= m || t >= m {
                return Err(Error::NoSuchVertex(s.max(t)));
            }
            if s == t {
                return Err(Error::Domain(format!("loop at vertex {s}")));
            }
            b[s][t] += 1;
            b[t][s] -= 1;
        }
        IceQuiver::new(vertices, b)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[QuiverVertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &QuiverVertex {
        &self.vertices[v]
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        self.vertices[v].frozen
    }

    pub fn label(&self, v: usize) -> Option<KSet> {
        self.vertices[v].label
    }

    pub(crate) fn set_label(&mut self, v: usize, label: Option<KSet>) {
        self.vertices[v].label = label;
    }

    pub fn find_label(&self, l: &KSet) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.label.as_ref() == Some(l))
    }

    pub fn mutable_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&v| !self.vertices[v].frozen)
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    /// `Q°`: the matrix with frozen-frozen entries cleared.
    pub fn principal_part(&self) -> Vec<Vec<i64>> {
        let m = self.len();
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        if self.is_frozen(i) && self.is_frozen(j) {
                            0
                        } else {
                            self.b[i][j]
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Arrows of `Q°` with multiplicity, as `(source, target, count)`.
    pub fn arrows(&self) -> Vec<(usize, usize, i64)> {
        let m = self.len();
        let mut out = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if self.b[i][j] > 0 && !(self.is_frozen(i) && self.is_frozen(j)) {
                    out.push((i, j, self.b[i][j]));
                }
            }
        }
        out
    }

    /// Fomin–Zelevinsky matrix mutation at a mutable vertex.
    pub fn mutate(&self, k: usize) -> Result<IceQuiver> {
        if k >= self.len() {
            return Err(Error::NoSuchVertex(k));
        }
        if self.is_frozen(k) {
            return Err(Error::FrozenVertex(k));
        }
        let m = self.len();
        let b = &self.b;
        let mut nb = b.clone();
        for i in 0..m {
            for j in 0..m {
                nb[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                };
            }
        }
        Ok(IceQuiver {
            vertices: self.vertices.clone(),
            b: nb,
        })
    }

    /// Compare `Q°` of two quivers whose vertices carry the same set of
    /// labels, matching vertices by label.
    pub fn principal_eq_by_label(&self, other: &IceQuiver) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut map = Vec::with_capacity(self.len());
        for v in &self.vertices {
            let Some(l) = v.label else { return false };
            match other.find_label(&l) {
                Some(w) if other.is_frozen(w) == v.frozen => map.push(w),
                _ => return false,
            }
        }
        let a = self.principal_part();
        let b = other.principal_part();
        (0..self.len()).all(|i| (0..self.len()).all(|j| a[i][j] == b[map[i]][map[j]]))
    }

    /// Rank of the mutable columns of the exchange matrix over `Q`.
    pub fn exchange_rank(&self) -> usize {
        let cols: Vec<usize> = self.mutable_vertices().collect();
        let mut rows: Vec<Vec<num_rational::BigRational>> = (0..self.len())
            .map(|i| {
                cols.iter()
                    .map(|&j| num_rational::BigRational::from_integer(self.b[i][j].into()))
                    .collect()
            })
            .collect();
        crate::numeric::rank(&mut rows)
    }

    /// Graphviz rendering: frozen vertices boxed, mutable ones as ellipses.
    /// Frozen-frozen arrows are omitted.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n");
        for (v, q) in self.vertices.iter().enumerate() {
            let shape = if q.frozen { "box" } else { "ellipse" };
            let label = q
                .label
                .map(|l| l.to_string())
                .unwrap_or_else(|| format!("x{v}"));
            let _ = writeln!(s, "  q{v} [shape={shape}, label=\"{label}\"];");
        }
        for (i, j, c) in self.arrows() {
            for _ in 0..c {
                let _ = writeln!(s, "  q{i} -> q{j};");
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(frozen: bool) -> QuiverVertex {
        QuiverVertex {
            frozen,
            label: None,
        }
    }

    #[test]
    fn sink_source_flip() {
        let q = IceQuiver::from_arrows(vec![v(false), v(false)], &[(0, 1)]).unwrap();
        let m = q.mutate(0).unwrap();
        assert_eq!(m.arrows(), vec![(1, 0, 1)]);
        assert_eq!(m.mutate(0).unwrap(), q);
    }

    #[test]
    fn frozen_vertex_rejected() {
        let q = IceQuiver::from_arrows(vec![v(true), v(false)], &[(0, 1)]).unwrap();
        assert_eq!(q.mutate(0), Err(Error::FrozenVertex(0)));
        assert_eq!(q.mutate(5), Err(Error::NoSuchVertex(5)));
    }

    #[test]
    fn two_cycles_cancel_and_paths_compose() {
        // 0 -> 1 -> 2 mutated at 1 gives 0 <- 1 <- 2 plus 0 -> 2
        let q =
            IceQuiver::from_arrows(vec![v(false), v(false), v(false)], &[(0, 1), (1, 2)]).unwrap();
        let m = q.mutate(1).unwrap();
        assert_eq!(m.entry(0, 2), 1);
        assert_eq!(m.entry(1, 0), 1);
        assert_eq!(m.entry(2, 1), 1);
        let q2 = IceQuiver::from_arrows(vec![v(false), v(false)], &[(0, 1), (1, 0)]).unwrap();
        assert!(q2.arrows().is_empty());
    }

    #[test]
    fn rejects_non_antisymmetric() {
        assert!(IceQuiver::new(vec![v(false), v(false)], vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(IceQuiver::new(vec![v(false)], vec![vec![1]]).is_err());
    }

    #[test]
    fn frozen_pairs_ignored_in_principal_part() {
        let q =
            IceQuiver::from_arrows(vec![v(true), v(true), v(false)], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(q.arrows(), vec![(1, 2, 1)]);
        assert_eq!(q.principal_part()[0][1], 0);
        assert_eq!(q.matrix()[0][1], 1);
    }
}
