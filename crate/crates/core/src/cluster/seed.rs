use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use super::laurent::{LaurentJson, LaurentPoly};
use super::quiver::IceQuiver;
use super::square::square_move_targets;
use crate::combinatorics::KSet;
use crate::error::{Error, Result};
use crate::plabic::quiver::collection_quiver;
use crate::plabic::{quiver_from_graph, PlabicGraph};

/// Ice quiver with one cluster variable per vertex, each stored as a Laurent
/// polynomial in the Plücker symbols of the initial seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    quiver: IceQuiver,
    vars: Vec<LaurentPoly>,
    symbols: Arc<Vec<KSet>>,
}

/// Outcome of mutating at a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exchange {
    pub vertex: usize,
    /// Product over arrows into the vertex.
    pub incoming: LaurentPoly,
    /// Product over arrows out of the vertex.
    pub outgoing: LaurentPoly,
    /// The new variable `(incoming + outgoing) / old`.
    pub new_var: LaurentPoly,
}

impl Seed {
    /// Initial seed of a labeled ice quiver: vertex `v` carries the symbol
    /// `Δ_{label(v)}`.
    pub fn initial(quiver: IceQuiver) -> Result<Seed> {
        let symbols: Vec<KSet> = quiver
            .vertices()
            .iter()
            .enumerate()
            .map(|(v, q)| {
                q.label
                    .ok_or_else(|| Error::Domain(format!("vertex {v} has no label")))
            })
            .collect::<Result<_>>()?;
        let m = symbols.len();
        Ok(Seed {
            quiver,
            vars: (0..m).map(|v| LaurentPoly::var(m, v)).collect(),
            symbols: Arc::new(symbols),
        })
    }

    /// Initial seed of the face quiver of a reduced plabic graph.
    pub fn from_graph(g: &PlabicGraph) -> Result<Seed> {
        Seed::initial(quiver_from_graph(g)?)
    }

    pub fn quiver(&self) -> &IceQuiver {
        &self.quiver
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn var(&self, v: usize) -> &LaurentPoly {
        &self.vars[v]
    }

    pub fn vars(&self) -> &[LaurentPoly] {
        &self.vars
    }

    pub fn symbols(&self) -> &[KSet] {
        &self.symbols
    }

    pub fn symbol_names(&self) -> Vec<String> {
        self.symbols.iter().map(|s| s.label()).collect()
    }

    pub fn label(&self, v: usize) -> Option<KSet> {
        self.quiver.label(v)
    }

    /// True when every vertex carries a Plücker label.
    pub fn is_pure_plucker(&self) -> bool {
        (0..self.len()).all(|v| self.label(v).is_some())
    }

    /// Labels of all labeled vertices.
    pub fn collection(&self) -> BTreeSet<KSet> {
        (0..self.len()).filter_map(|v| self.label(v)).collect()
    }

    pub fn frozen_labels(&self) -> BTreeSet<KSet> {
        (0..self.len())
            .filter(|&v| self.quiver.is_frozen(v))
            .filter_map(|v| self.label(v))
            .collect()
    }

    /// Both monomials of the exchange relation at `v`, from the current
    /// variables, and the new variable they determine.
    pub fn exchange(&self, v: usize) -> Result<Exchange> {
        if v >= self.len() {
            return Err(Error::NoSuchVertex(v));
        }
        if self.quiver.is_frozen(v) {
            return Err(Error::FrozenVertex(v));
        }
        let m = self.symbols.len();
        let mut incoming = LaurentPoly::one(m);
        let mut outgoing = LaurentPoly::one(m);
        for w in 0..self.len() {
            let b = self.quiver.entry(w, v);
            if b > 0 {
                incoming = &incoming * &self.vars[w].pow(b as u32);
            } else if b < 0 {
                outgoing = &outgoing * &self.vars[w].pow((-b) as u32);
            }
        }
        let new_var = (&incoming + &outgoing)
            .exact_div(&self.vars[v])
            .ok_or(Error::LaurentViolation(v))?;
        Ok(Exchange {
            vertex: v,
            incoming,
            outgoing,
            new_var,
        })
    }

    /// Fomin–Zelevinsky mutation of the seed at `v`. The new vertex keeps a
    /// Plücker label when the exchange is a square move or the new variable
    /// is an initial symbol.
    pub fn mutate(&self, v: usize) -> Result<Seed> {
        let ex = self.exchange(v)?;
        let label = self
            .square_move_label(v)
            .or_else(|| ex.new_var.as_symbol().map(|i| self.symbols[i]));
        let mut quiver = self.quiver.mutate(v)?;
        quiver.set_label(v, label);
        let mut vars = self.vars.clone();
        vars[v] = ex.new_var;
        Ok(Seed {
            quiver,
            vars,
            symbols: Arc::clone(&self.symbols),
        })
    }

    /// `Lbd` when `v` is labeled `Lac` and its neighbours are exactly
    /// `Lab`, `Lbc`, `Lcd`, `Lda`, each joined by a single arrow, with the
    /// two opposite pairs on opposite sides of `v`. The exchange relation is
    /// then the three-term Plücker relation.
    pub fn square_move_label(&self, v: usize) -> Option<KSet> {
        let p = self.label(v)?;
        let mut ins = Vec::new();
        let mut outs = Vec::new();
        for w in 0..self.len() {
            match self.quiver.entry(w, v) {
                0 => {}
                1 => ins.push(self.label(w)?),
                -1 => outs.push(self.label(w)?),
                _ => return None,
            }
        }
        if ins.len() != 2 || outs.len() != 2 {
            return None;
        }
        let all: BTreeSet<KSet> = ins.iter().chain(&outs).copied().collect();
        let l = all.iter().fold(p, |acc, x| acc.intersection(x));
        if l.k() + 2 != p.k() {
            return None;
        }
        let ac = p.minus(&l).elements();
        let (a, c) = (ac[0], ac[1]);
        let spread = all
            .iter()
            .fold(KSet::empty(p.n()), |acc, x| acc.union(&x.minus(&l)));
        let bd = spread.without(a).without(c).elements();
        if bd.len() != 2 || spread.k() != 4 {
            return None;
        }
        let (b, d) = (bd[0], bd[1]);
        if !((a < b && b < c) ^ (a < d && d < c)) {
            return None;
        }
        let pair = |x: usize, y: usize| l.with(x).with(y);
        let square: BTreeSet<KSet> = [pair(a, b), pair(b, c), pair(c, d), pair(a, d)]
            .into_iter()
            .collect();
        if square != all {
            return None;
        }
        let ins: BTreeSet<KSet> = ins.into_iter().collect();
        let opposite1: BTreeSet<KSet> = [pair(a, b), pair(c, d)].into_iter().collect();
        let opposite2: BTreeSet<KSet> = [pair(a, d), pair(b, c)].into_iter().collect();
        if ins != opposite1 && ins != opposite2 {
            return None;
        }
        Some(pair(b, d))
    }

    /// Canonical form up to permuting vertices: the sorted variables and the
    /// `Q°` matrix in that order.
    pub fn canonical_key(&self) -> (Vec<LaurentPoly>, Vec<Vec<i64>>) {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&x, &y| self.vars[x].cmp(&self.vars[y]));
        let b = self.quiver.principal_part();
        let vars = order.iter().map(|&v| self.vars[v].clone()).collect();
        let mat = order
            .iter()
            .map(|&i| order.iter().map(|&j| b[i][j]).collect())
            .collect();
        (vars, mat)
    }

    /// Variables rendered in `Δ` notation.
    pub fn display_vars(&self) -> Vec<String> {
        let names: Vec<String> = self
            .symbols
            .iter()
            .map(|s| format!("Δ{}", s.label()))
            .collect();
        self.vars.iter().map(|p| p.display_with(&names)).collect()
    }

    pub fn to_json(&self) -> SeedJson {
        let names = self.symbol_names();
        SeedJson {
            symbols: names.clone(),
            vertices: (0..self.len())
                .map(|v| VertexVarJson {
                    frozen: self.quiver.is_frozen(v),
                    label: self.label(v).map(|l| l.label()),
                    variable: self.vars[v].to_json(&names),
                })
                .collect(),
            arrows: self.quiver.arrows(),
        }
    }

    pub(crate) fn set_label(&mut self, v: usize, label: Option<KSet>) {
        self.quiver.set_label(v, label);
    }

    /// Replace one variable; used to build deliberately broken seeds.
    pub fn with_var(&self, v: usize, p: LaurentPoly) -> Seed {
        let mut s = self.clone();
        s.vars[v] = p;
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexVarJson {
    pub frozen: bool,
    pub label: Option<String>,
    pub variable: LaurentJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeedJson {
    pub symbols: Vec<String>,
    pub vertices: Vec<VertexVarJson>,
    pub arrows: Vec<(usize, usize, i64)>,
}

/// Seeds reachable by mutation, up to permutation of vertices.
#[derive(Debug, Clone)]
pub struct MutationClass {
    pub seeds: Vec<Seed>,
    /// Set when the closure stopped at the seed limit.
    pub partial: bool,
    /// Number of seed mutations performed.
    pub mutations: usize,
}

/// Breadth-first mutation closure of `start`, keeping at most `limit` seeds.
/// Every exchange is an exact Laurent division; a remainder aborts with
/// [`Error::LaurentViolation`]. Plücker labels found anywhere in the closure
/// are attached to every vertex carrying the same variable.
pub fn mutation_class(start: &Seed, limit: usize) -> Result<MutationClass> {
    let mut index: HashMap<(Vec<LaurentPoly>, Vec<Vec<i64>>), usize> = HashMap::new();
    let mut seeds = vec![start.clone()];
    index.insert(start.canonical_key(), 0);
    let mut known: BTreeMap<LaurentPoly, KSet> = BTreeMap::new();
    let mut queue = VecDeque::from([0usize]);
    let mut partial = false;
    let mut mutations = 0;
    let mutable: Vec<usize> = start.quiver().mutable_vertices().collect();
    'outer: while let Some(i) = queue.pop_front() {
        for &v in &mutable {
            let next = seeds[i].mutate(v)?;
            mutations += 1;
            if let Some(l) = next.label(v) {
                known.insert(next.var(v).clone(), l);
            }
            let key = next.canonical_key();
            if index.contains_key(&key) {
                continue;
            }
            if seeds.len() >= limit {
                partial = true;
                break 'outer;
            }
            index.insert(key, seeds.len());
            queue.push_back(seeds.len());
            seeds.push(next);
        }
    }
    for s in seeds.iter_mut() {
        for v in 0..s.len() {
            if s.label(v).is_none() {
                if let Some(&l) = known.get(s.var(v)) {
                    s.set_label(v, Some(l));
                }
            }
        }
    }
    Ok(MutationClass {
        seeds,
        partial,
        mutations,
    })
}

/// Per-vertex comparison of seed mutation against square moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareCheck {
    /// Square move `old -> new`; flags whether the mutated quiver equals the
    /// quiver of the moved collection and whether the exchange relation is
    /// the three-term Plücker relation in the neighbouring labels.
    Move {
        vertex: usize,
        old: KSet,
        new: KSet,
        quiver_ok: bool,
        relation_ok: bool,
    },
    /// The vertex has no square-move witnesses; mutating it leaves the
    /// Plücker regime.
    LeavesPlucker { vertex: usize },
}

impl SquareCheck {
    pub fn ok(&self) -> bool {
        match self {
            SquareCheck::Move {
                quiver_ok,
                relation_ok,
                ..
            } => *quiver_ok && *relation_ok,
            SquareCheck::LeavesPlucker { .. } => true,
        }
    }
}

/// For every mutable vertex of a pure-Plücker seed, compare mutation with
/// the square move of its label.
pub fn square_move_report(s: &Seed) -> Result<Vec<SquareCheck>> {
    if !s.is_pure_plucker() {
        return Err(Error::Domain("seed has non-Plücker vertices".into()));
    }
    let coll = s.collection();
    let frozen = s.frozen_labels();
    let mut out = Vec::new();
    for v in s.quiver().mutable_vertices() {
        let old = s.label(v).expect("pure");
        let targets = square_move_targets(&coll, &old);
        let Some(&new) = targets.first() else {
            out.push(SquareCheck::LeavesPlucker { vertex: v });
            continue;
        };
        let mut moved = coll.clone();
        moved.remove(&old);
        moved.insert(new);
        let expected = collection_quiver(&moved, &frozen)?;
        let mut mutated = s.quiver().mutate(v)?;
        mutated.set_label(v, Some(new));
        let quiver_ok = targets.len() == 1 && mutated.principal_eq_by_label(&expected);
        let relation_ok = s.square_move_label(v) == Some(new);
        out.push(SquareCheck::Move {
            vertex: v,
            old,
            new,
            quiver_ok,
            relation_ok,
        });
    }
    Ok(out)
}

/// True when every square-movable vertex of `s` mutates as its square move.
pub fn seeds_match_square_moves(s: &Seed) -> bool {
    square_move_report(s).is_ok_and(|r| r.iter().all(SquareCheck::ok))
}
