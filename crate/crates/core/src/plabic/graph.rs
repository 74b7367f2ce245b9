use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// Boundary vertex `i` in `1..=n`, placed clockwise on the disk.
    Boundary(usize),
    Internal(Color),
}

/// A plabic graph stored as a rotation system.
///
/// Vertices `0..n` are the boundary vertices `1..=n`. `rotation[v]` lists
/// the edges at `v` in clockwise order; boundary vertices have exactly one
/// edge. When `oriented` is set, every edge `[u, v]` is directed `u -> v` and
/// the orientation is perfect (one incoming edge at each white vertex, one
/// outgoing edge at each black vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlabicGraph {
    pub(crate) n: usize,
    pub(crate) kinds: Vec<VertexKind>,
    pub(crate) edges: Vec<[usize; 2]>,
    pub(crate) rotation: Vec<Vec<usize>>,
    pub(crate) oriented: bool,
}

/// Half-edge view of the embedding, with the boundary circle added as `n`
/// arcs so that the outside of the disk is one face.
#[derive(Debug, Clone)]
pub(crate) struct Embedding {
    pub origin: Vec<usize>,
    /// Out-going half-edges around each vertex, clockwise.
    pub around: Vec<Vec<usize>>,
    /// `(vertex, slot)` of every half-edge in `around`.
    pub slot: Vec<usize>,
    pub face: Vec<usize>,
    pub face_count: usize,
    pub outer: usize,
    pub edge_count: usize,
}

impl Embedding {
    pub fn twin(h: usize) -> usize {
        h ^ 1
    }

    pub fn head(&self, h: usize) -> usize {
        self.origin[Self::twin(h)]
    }

    pub fn edge(h: usize) -> usize {
        h / 2
    }

    pub fn cw_next(&self, h: usize) -> usize {
        let ring = &self.around[self.origin[h]];
        ring[(self.slot[h] + 1) % ring.len()]
    }

    pub fn ccw_next(&self, h: usize) -> usize {
        let ring = &self.around[self.origin[h]];
        ring[(self.slot[h] + ring.len() - 1) % ring.len()]
    }

    /// Successor along the face lying to the left of `h`.
    pub fn face_next(&self, h: usize) -> usize {
        self.cw_next(Self::twin(h))
    }

    pub fn is_arc(&self, h: usize) -> bool {
        Self::edge(h) >= self.edge_count
    }

    /// Half-edge `i -> i+1` of the boundary circle (outer face on its left).
    pub fn arc_forward(&self, i: usize) -> usize {
        2 * self.edge_count + 2 * (i - 1)
    }
}

impl PlabicGraph {
    pub fn new(
        n: usize,
        kinds: Vec<VertexKind>,
        edges: Vec<[usize; 2]>,
        rotation: Vec<Vec<usize>>,
        oriented: bool,
    ) -> Result<Self> {
        let g = PlabicGraph {
            n,
            kinds,
            edges,
            rotation,
            oriented,
        };
        g.check()?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn color(&self, v: usize) -> Option<Color> {
        match self.kinds[v] {
            VertexKind::Internal(c) => Some(c),
            VertexKind::Boundary(_) => None,
        }
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented
    }

    pub fn boundary_vertex(&self, i: usize) -> usize {
        i - 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    fn check(&self) -> Result<()> {
        let n = self.n;
        if self.kinds.len() != self.rotation.len() {
            return Err(Error::Embedding(
                "rotation list length differs from vertex count".into(),
            ));
        }
        if self.kinds.len() < n {
            return Err(Error::Embedding(
                "fewer vertices than boundary points".into(),
            ));
        }
        for (v, k) in self.kinds.iter().enumerate() {
            let boundary = v < n;
            match k {
                VertexKind::Boundary(i) if boundary && *i == v + 1 => {}
                VertexKind::Internal(_) if !boundary => {}
                _ => {
                    return Err(Error::Embedding(format!(
                        "vertex {v} has kind {k:?} out of place"
                    )))
                }
            }
            if boundary && self.rotation[v].len() != 1 {
                return Err(Error::Embedding(format!(
                    "boundary vertex {} has degree {}",
                    v + 1,
                    self.rotation[v].len()
                )));
            }
        }
        let mut uses = vec![0usize; self.edges.len()];
        for (v, ring) in self.rotation.iter().enumerate() {
            for &e in ring {
                let Some(&[a, b]) = self.edges.get(e) else {
                    return Err(Error::Embedding(format!("unknown edge {e} at vertex {v}")));
                };
                if a != v && b != v {
                    return Err(Error::Embedding(format!(
                        "edge {e} listed at non-endpoint {v}"
                    )));
                }
                if a == b {
                    return Err(Error::Embedding(format!("edge {e} is a loop")));
                }
                uses[e] += 1;
            }
        }
        if let Some(e) = uses.iter().position(|&u| u != 2) {
            return Err(Error::Embedding(format!(
                "edge {e} appears {} times in rotations",
                uses[e]
            )));
        }
        for [a, b] in &self.edges {
            if *a < n && *b < n {
                return Err(Error::Embedding("edge joins two boundary vertices".into()));
            }
        }
        let emb = self.embedding();
        // Euler characteristic of the sphere, counting the outside as a face
        let v = self.kinds.len() as i64;
        let e = (self.edges.len() + n) as i64;
        let f = emb.face_count as i64;
        if v - e + f != 2 {
            return Err(Error::Embedding(format!(
                "V - E + F = {} (expected 2)",
                v - e + f
            )));
        }
        if self.oriented {
            self.check_perfect_orientation()?;
        }
        Ok(())
    }

    fn check_perfect_orientation(&self) -> Result<()> {
        for v in self.n..self.kinds.len() {
            let incoming = self.rotation[v]
                .iter()
                .filter(|&&e| self.edges[e][1] == v)
                .count();
            let outgoing = self.rotation[v].len() - incoming;
            match self.kinds[v] {
                VertexKind::Internal(Color::White) if incoming != 1 => {
                    return Err(Error::Orientation(format!(
                        "white vertex {v} has {incoming} incoming"
                    )))
                }
                VertexKind::Internal(Color::Black) if outgoing != 1 => {
                    return Err(Error::Orientation(format!(
                        "black vertex {v} has {outgoing} outgoing"
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub(crate) fn embedding(&self) -> Embedding {
        let n = self.n;
        let m = self.edges.len();
        let total = 2 * (m + n);
        let mut origin = vec![0; total];
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            origin[2 * e] = a;
            origin[2 * e + 1] = b;
        }
        for i in 1..=n {
            let h = 2 * m + 2 * (i - 1);
            origin[h] = i - 1;
            origin[h + 1] = i % n;
        }
        let out_along = |v: usize, e: usize| {
            if self.edges[e][0] == v {
                2 * e
            } else {
                2 * e + 1
            }
        };
        let mut around: Vec<Vec<usize>> = Vec::with_capacity(self.kinds.len());
        for v in 0..self.kinds.len() {
            if v < n {
                let i = v + 1;
                let prev = if i == 1 { n } else { i - 1 };
                let to_next = 2 * m + 2 * (i - 1);
                let to_prev = 2 * m + 2 * (prev - 1) + 1;
                around.push(vec![to_next, out_along(v, self.rotation[v][0]), to_prev]);
            } else {
                around.push(self.rotation[v].iter().map(|&e| out_along(v, e)).collect());
            }
        }
        let mut slot = vec![0; total];
        for ring in &around {
            for (s, &h) in ring.iter().enumerate() {
                slot[h] = s;
            }
        }
        let mut emb = Embedding {
            origin,
            around,
            slot,
            face: vec![usize::MAX; total],
            face_count: 0,
            outer: 0,
            edge_count: m,
        };
        let mut count = 0;
        for start in 0..total {
            if emb.face[start] != usize::MAX {
                continue;
            }
            let mut h = start;
            while emb.face[h] == usize::MAX {
                emb.face[h] = count;
                h = emb.face_next(h);
            }
            count += 1;
        }
        emb.face_count = count;
        emb.outer = emb.face[emb.arc_forward(1)];
        emb
    }

    /// Number of faces inside the disk.
    pub fn face_count(&self) -> usize {
        self.embedding().face_count - 1
    }

    /// Insert a new vertex of `color` in the middle of edge `e`; the part
    /// towards `near` keeps id `e`. Returns the new vertex and the new edge id.
    pub(crate) fn subdivide(&mut self, e: usize, near: usize, color: Color) -> (usize, usize) {
        let far = self.other_end(e, near);
        let w = self.kinds.len();
        self.kinds.push(VertexKind::Internal(color));
        let new_e = self.edges.len();
        let forward = self.edges[e][0] == near;
        if forward {
            self.edges[e] = [near, w];
            self.edges.push([w, far]);
        } else {
            self.edges[e] = [w, near];
            self.edges.push([far, w]);
        }
        for slot in self.rotation[far].iter_mut() {
            if *slot == e {
                *slot = new_e;
            }
        }
        self.rotation.push(Vec::new());
        (w, new_e)
    }

    /// Same graph with a degree-two vertex of the opposite color inserted in
    /// every edge joining two internal vertices of one color. Trips, faces
    /// and the positroid are unchanged; the orientation, if any, is kept.
    pub fn bipartite(&self) -> PlabicGraph {
        let mut g = self.clone();
        for e in 0..self.edges.len() {
            let [u, v] = g.edges[e];
            if let (Some(cu), Some(cv)) = (g.color(u), g.color(v)) {
                if cu == cv {
                    let opposite = match cu {
                        Color::White => Color::Black,
                        Color::Black => Color::White,
                    };
                    let (w, f) = g.subdivide(e, u, opposite);
                    g.rotation[w] = vec![e, f];
                }
            }
        }
        g
    }

    pub fn is_bipartite(&self) -> bool {
        self.edges
            .iter()
            .all(|&[u, v]| match (self.color(u), self.color(v)) {
                (Some(a), Some(b)) => a != b,
                _ => true,
            })
    }

    /// JSON form `{"boundary": n, "vertices": [...], "edges": [...], "rotation": {...}}`.
    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            boundary: self.n,
            vertices: self
                .kinds
                .iter()
                .enumerate()
                .map(|(id, k)| VertexJson {
                    id,
                    color: match k {
                        VertexKind::Boundary(_) => "boundary".into(),
                        VertexKind::Internal(Color::White) => "white".into(),
                        VertexKind::Internal(Color::Black) => "black".into(),
                    },
                })
                .collect(),
            edges: self.edges.clone(),
            rotation: self
                .rotation
                .iter()
                .enumerate()
                .map(|(v, r)| (v.to_string(), r.clone()))
                .collect(),
            oriented: self.oriented,
        }
    }

    pub fn from_json(js: &GraphJson) -> Result<Self> {
        let mut kinds = Vec::with_capacity(js.vertices.len());
        for (p, v) in js.vertices.iter().enumerate() {
            if v.id != p {
                return Err(Error::Embedding(format!(
                    "vertex ids must be 0..; found {} at {p}",
                    v.id
                )));
            }
            kinds.push(match v.color.as_str() {
                "boundary" => VertexKind::Boundary(p + 1),
                "white" => VertexKind::Internal(Color::White),
                "black" => VertexKind::Internal(Color::Black),
                other => return Err(Error::Embedding(format!("unknown color {other:?}"))),
            });
        }
        let mut rotation = vec![Vec::new(); kinds.len()];
        for (v, r) in &js.rotation {
            let v: usize = v
                .parse()
                .map_err(|_| Error::Embedding(format!("bad rotation key {v:?}")))?;
            if v >= kinds.len() {
                return Err(Error::Embedding(format!("rotation for unknown vertex {v}")));
            }
            rotation[v] = r.clone();
        }
        PlabicGraph::new(js.boundary, kinds, js.edges.clone(), rotation, js.oriented)
    }

    /// Graphviz rendering; boundary vertices are labeled by their index,
    /// internal vertices drawn filled black or white. Output is stable for a
    /// fixed graph.
    pub fn to_dot(&self, face_labels: Option<&BTreeMap<usize, String>>) -> String {
        let mut s = String::from("graph plabic {\n  node [shape=circle, label=\"\", width=0.2];\n");
        for (v, k) in self.kinds.iter().enumerate() {
            let attrs = match k {
                VertexKind::Boundary(i) => format!("shape=plaintext, label=\"{i}\""),
                VertexKind::Internal(Color::White) => "style=filled, fillcolor=white".into(),
                VertexKind::Internal(Color::Black) => "style=filled, fillcolor=black".into(),
            };
            let _ = writeln!(s, "  v{v} [{attrs}];");
        }
        for (e, [a, b]) in self.edges.iter().enumerate() {
            let _ = writeln!(s, "  v{a} -- v{b} [id=e{e}];");
        }
        if let Some(labels) = face_labels {
            for (f, l) in labels {
                let _ = writeln!(s, "  // face {f}: {l}");
            }
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub color: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub boundary: usize,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[usize; 2]>,
    pub rotation: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    pub oriented: bool,
}
