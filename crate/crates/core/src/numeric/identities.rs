use std::collections::{BTreeMap, HashSet};

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use super::cell::{check_profile, CellPoint};
use super::matrix::{Rational, RationalMatrix};
use crate::cluster::{LaurentPoly, MutationClass, Seed};
use crate::cm::{in_gp_b, k2_generator_decomposition};
use crate::combinatorics::{in_positroid, DecoratedPermutation, GrassmannNecklace, KSet};
use crate::error::{Error, Result};

/// Exact value of a Laurent polynomial in the symbols `symbols` under an
/// assignment of values to k-sets.
pub fn evaluate(
    p: &LaurentPoly,
    symbols: &[KSet],
    assignment: &BTreeMap<KSet, Rational>,
) -> Result<Rational> {
    let values: Vec<Rational> = symbols
        .iter()
        .map(|s| {
            assignment
                .get(s)
                .cloned()
                .ok_or_else(|| Error::MissingSymbol(s.label()))
        })
        .collect::<Result<_>>()?;
    p.evaluate_named(&values, |i| format!("Δ{}", symbols[i].label()))
}

fn symbol_values(symbols: &[KSet], m: &RationalMatrix) -> Result<Vec<Rational>> {
    symbols.iter().map(|s| m.minor(s)).collect()
}

/// `Δ_{Lac} Δ_{Lbd} = Δ_{Lab} Δ_{Lcd} + Δ_{Lad} Δ_{Lbc}` at `m`, for
/// `a < b < c < d` outside `L`.
pub fn pluecker_relation_check(m: &RationalMatrix, l: &KSet, abcd: [usize; 4]) -> Result<bool> {
    let [a, b, c, d] = abcd;
    if !(a < b && b < c && c < d) {
        return Err(Error::Domain(format!(
            "{a}, {b}, {c}, {d} are not increasing"
        )));
    }
    if abcd.iter().any(|&x| l.contains(x)) {
        return Err(Error::Domain(format!(
            "{} meets {{{a}, {b}, {c}, {d}}}",
            l.label()
        )));
    }
    if l.k() + 2 != m.rows() {
        return Err(Error::Dimension(format!(
            "|L| = {} but k = {}",
            l.k(),
            m.rows()
        )));
    }
    let p = |x: usize, y: usize| m.minor(&l.with(x).with(y));
    Ok(p(a, c)? * p(b, d)? == p(a, b)? * p(c, d)? + p(a, d)? * p(b, c)?)
}

/// A factor of an identity term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Minor(KSet),
    /// A cluster variable in the initial symbols of the class.
    Laurent(LaurentPoly),
}

/// `coef * prod factors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coef: i64,
    pub factors: Vec<Factor>,
}

/// Where an identity is expected to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// On the whole Grassmannian: checked at generic and cell points.
    Everywhere,
    /// Only on the positroid variety: checked at cell points.
    Cell,
}

/// `sum lhs = sum rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
    pub scope: Scope,
}

impl Identity {
    /// Parse `"246*x = 124*256*346 + 126*234*456"`: terms joined by `+`,
    /// factors by `*`. A factor is a name from `vars`, a k-set label (`Δ`
    /// optional; a bare label has exactly `k` digits or uses commas), or an
    /// integer coefficient.
    pub fn parse(
        name: &str,
        text: &str,
        n: usize,
        k: usize,
        vars: &BTreeMap<String, LaurentPoly>,
        scope: Scope,
    ) -> Result<Identity> {
        let (l, r) = text.split_once('=').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "missing '='".into(),
        })?;
        let side = |s: &str, offset: usize| -> Result<Vec<Term>> {
            let mut terms = Vec::new();
            let mut pos = offset;
            for raw in s.split('+') {
                let mut t = Term {
                    coef: 1,
                    factors: Vec::new(),
                };
                let mut p = pos;
                for tok in raw.split('*') {
                    let tok_t = tok.trim();
                    let at = p + tok.find(tok_t).unwrap_or(0);
                    if tok_t.is_empty() {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "empty factor".into(),
                        });
                    }
                    if let Some(v) = vars.get(tok_t) {
                        t.factors.push(Factor::Laurent(v.clone()));
                    } else if let Some(ks) = minor_token(tok_t, n, k) {
                        let ks = ks.map_err(|e| Error::Parse {
                            pos: at,
                            msg: e.to_string(),
                        })?;
                        t.factors.push(Factor::Minor(ks));
                    } else {
                        let c: i64 = tok_t.parse().map_err(|_| Error::Parse {
                            pos: at,
                            msg: format!("unknown factor {tok_t:?}"),
                        })?;
                        t.coef *= c;
                    }
                    p += tok.len() + 1;
                }
                terms.push(t);
                pos += raw.len() + 1;
            }
            Ok(terms)
        };
        Ok(Identity {
            name: name.into(),
            lhs: side(l, 0)?,
            rhs: side(r, l.len() + 1)?,
            scope,
        })
    }
}

fn minor_token(tok: &str, n: usize, k: usize) -> Option<Result<KSet>> {
    let check = |ks: Result<KSet>| {
        ks.and_then(|ks| {
            if ks.k() == k {
                Ok(ks)
            } else {
                Err(Error::InvalidKSet(format!(
                    "Δ{} is not a {k}-set",
                    ks.label()
                )))
            }
        })
    };
    if let Some(lab) = tok.strip_prefix('Δ') {
        return Some(check(KSet::parse_label(n, lab)));
    }
    let digits = tok.chars().all(|c| c.is_ascii_digit() || c == ',');
    if digits && (tok.contains(',') || tok.len() == k) {
        return Some(check(KSet::parse_label(n, tok)));
    }
    None
}

struct Exchanged {
    vertex: usize,
    new_var: LaurentPoly,
    /// Plücker label the new variable carries after the mutation.
    label: Option<KSet>,
}

/// Values available at one point.
struct PointEval<'a> {
    m: &'a RationalMatrix,
    symbols: Vec<Rational>,
    minors: BTreeMap<KSet, Rational>,
}

impl<'a> PointEval<'a> {
    fn new(m: &'a RationalMatrix, symbols: &[KSet]) -> Result<Self> {
        Ok(PointEval {
            m,
            symbols: symbol_values(symbols, m)?,
            minors: BTreeMap::new(),
        })
    }

    fn minor(&mut self, i: &KSet) -> Result<Rational> {
        if let Some(v) = self.minors.get(i) {
            return Ok(v.clone());
        }
        let v = self.m.minor(i)?;
        self.minors.insert(*i, v.clone());
        Ok(v)
    }

    fn laurent(&self, p: &LaurentPoly) -> Result<Rational> {
        p.evaluate(&self.symbols)
    }

    fn term(&mut self, t: &Term) -> Result<Rational> {
        let mut v = Rational::from_integer(t.coef.into());
        for f in &t.factors {
            v *= match f {
                Factor::Minor(i) => self.minor(i)?,
                Factor::Laurent(p) => self.laurent(p)?,
            };
        }
        Ok(v)
    }

    fn sum(&mut self, ts: &[Term]) -> Result<Rational> {
        let mut v = Rational::zero();
        for t in ts {
            v += self.term(t)?;
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Generic,
    Cell,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub kind: PointKind,
    pub point: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub points_checked: usize,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identities: Vec<IdentityResult>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn failure_count(&self) -> usize {
        self.identities.iter().map(|r| r.failures.len()).sum()
    }

    pub fn get(&self, name: &str) -> Option<&IdentityResult> {
        self.identities.iter().find(|r| r.name == name)
    }

    /// Concatenate reports; the result passes only if both do.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        for r in other.identities {
            match self.identities.iter_mut().find(|x| x.name == r.name) {
                Some(x) => {
                    x.points_checked += r.points_checked;
                    x.failures.extend(r.failures);
                }
                None => self.identities.push(r),
            }
        }
        self.passed = self.identities.iter().all(|r| r.failures.is_empty());
        self
    }
}

struct Collector {
    results: Vec<IdentityResult>,
}

impl Collector {
    fn entry(&mut self, name: &str) -> &mut IdentityResult {
        if let Some(p) = self.results.iter().position(|r| r.name == name) {
            return &mut self.results[p];
        }
        self.results.push(IdentityResult {
            name: name.into(),
            points_checked: 0,
            failures: Vec::new(),
        });
        self.results.last_mut().expect("just pushed")
    }

    fn record(
        &mut self,
        name: &str,
        kind: PointKind,
        point: usize,
        outcome: Result<Option<String>>,
    ) {
        let e = self.entry(name);
        match outcome {
            Ok(None) => {}
            Ok(Some(detail)) => e.failures.push(Failure {
                kind,
                point,
                detail,
            }),
            Err(err) => e.failures.push(Failure {
                kind,
                point,
                detail: err.to_string(),
            }),
        }
    }

    fn checked(&mut self, name: &str, count: usize) {
        self.entry(name).points_checked += count;
    }
}

fn value_of(seed: &Seed, v: usize, pe: &mut PointEval) -> Result<Rational> {
    match seed.label(v) {
        Some(l) => pe.minor(&l),
        None => pe.laurent(seed.var(v)),
    }
}

/// Exchange relation of every seed at every mutable vertex, with labeled
/// variables replaced by the minors they claim to be.
fn check_exchanges(
    class: &MutationClass,
    exchanges: &[Vec<Exchanged>],
    pe: &mut PointEval,
) -> Result<Option<String>> {
    for (si, s) in class.seeds.iter().enumerate() {
        for ex in &exchanges[si] {
            let v = &ex.vertex;
            let x = value_of(s, *v, pe)?;
            let xn = match &ex.label {
                Some(l) => pe.minor(l)?,
                None => pe.laurent(&ex.new_var)?,
            };
            let mut incoming = Rational::one();
            let mut outgoing = Rational::one();
            for w in 0..s.len() {
                let b = s.quiver().entry(w, *v);
                if b == 0 {
                    continue;
                }
                let val = num_traits::pow(value_of(s, w, pe)?, b.unsigned_abs() as usize);
                if b > 0 {
                    incoming *= val;
                } else {
                    outgoing *= val;
                }
            }
            if x * xn != incoming + outgoing {
                return Ok(Some(format!("seed {si}, vertex {v}")));
            }
        }
    }
    Ok(None)
}

/// Every exchanged variable must occur in some seed of the class.
fn check_closure(class: &MutationClass, exchanges: &[Vec<Exchanged>]) -> Option<String> {
    if class.partial {
        return None;
    }
    let all: HashSet<&LaurentPoly> = class.seeds.iter().flat_map(|s| s.vars()).collect();
    for (si, exs) in exchanges.iter().enumerate() {
        for ex in exs {
            if !all.contains(&ex.new_var) {
                return Some(format!(
                    "seed {si}, vertex {}: new variable not in the class",
                    ex.vertex
                ));
            }
        }
    }
    None
}

fn check_labels(class: &MutationClass, pe: &mut PointEval) -> Result<Option<String>> {
    for (si, s) in class.seeds.iter().enumerate() {
        for v in 0..s.len() {
            if let Some(l) = s.label(v) {
                if pe.laurent(s.var(v))? != pe.minor(&l)? {
                    return Ok(Some(format!("seed {si}, vertex {v} is not Δ{}", l.label())));
                }
            }
        }
    }
    Ok(None)
}

/// Three-term Plücker relations `(L, a, b, c, d)`, all of them.
fn three_term_relations(n: usize, k: usize) -> Vec<(KSet, [usize; 4])> {
    if k < 2 || n < k + 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for q in KSet::all(n, 4) {
        let e = q.elements();
        for l in KSet::all(n, k - 2) {
            if l.intersection(&q).k() == 0 {
                out.push((l, [e[0], e[1], e[2], e[3]]));
            }
        }
    }
    out
}

fn check_three_term(m: &RationalMatrix, rels: &[(KSet, [usize; 4])]) -> Result<Option<String>> {
    for (l, abcd) in rels {
        if !pluecker_relation_check(m, l, *abcd)? {
            return Ok(Some(format!(
                "L = {}, (a, b, c, d) = {:?}",
                l.label(),
                abcd
            )));
        }
    }
    Ok(None)
}

/// Three-term relations with every term containing a minor outside the
/// positroid dropped; only relations that lose a term are kept.
fn restricted_relations(nk: &GrassmannNecklace, rels: &[(KSet, [usize; 4])]) -> Vec<Identity> {
    let mut out = Vec::new();
    for (l, [a, b, c, d]) in rels {
        let p = |x: usize, y: usize| l.with(x).with(y);
        let inside = |t: &[KSet]| t.iter().all(|i| in_positroid(nk, i));
        let mk = |t: [KSet; 2]| Term {
            coef: 1,
            factors: t.iter().map(|i| Factor::Minor(*i)).collect(),
        };
        let lhs = [p(*a, *c), p(*b, *d)];
        let r1 = [p(*a, *b), p(*c, *d)];
        let r2 = [p(*a, *d), p(*b, *c)];
        let kept: Vec<[KSet; 2]> = [r1, r2].into_iter().filter(|t| inside(t)).collect();
        if kept.len() == 2 || !inside(&lhs) && kept.is_empty() {
            continue;
        }
        let name = |t: &[KSet; 2]| format!("Δ{}Δ{}", t[0].label(), t[1].label());
        let rhs_name = if kept.is_empty() {
            "0".to_string()
        } else {
            kept.iter().map(name).collect::<Vec<_>>().join(" + ")
        };
        out.push(Identity {
            name: format!("{} = {}", name(&lhs), rhs_name),
            lhs: if inside(&lhs) {
                vec![mk(lhs)]
            } else {
                Vec::new()
            },
            rhs: kept.into_iter().map(mk).collect(),
            scope: Scope::Cell,
        });
    }
    out
}

/// `Δ_I Δ_J = Δ_{L1} Δ_{L2}` for every `I ∈ CM B \ GP B` when `k = 2`.
fn k2_identities(nk: &GrassmannNecklace) -> Result<Vec<Identity>> {
    if nk.k() != 2 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for i in KSet::all(nk.n(), 2) {
        if !in_positroid(nk, &i) || in_gp_b(&i, nk)? {
            continue;
        }
        let d = k2_generator_decomposition(&i, nk)?;
        let mk = |a: KSet, b: KSet| Term {
            coef: 1,
            factors: vec![Factor::Minor(a), Factor::Minor(b)],
        };
        out.push(Identity {
            name: format!(
                "generator Δ{}Δ{} = Δ{}Δ{}",
                i.label(),
                d.j.label(),
                d.l1.label(),
                d.l2.label()
            ),
            lhs: vec![mk(i, d.j)],
            rhs: vec![mk(d.l1, d.l2)],
            scope: Scope::Cell,
        });
    }
    Ok(out)
}

pub const EXCHANGE_GENERIC: &str = "exchange relations (generic)";
pub const EXCHANGE_CELL: &str = "exchange relations (cell)";
pub const CLOSURE: &str = "exchange closure";
pub const LABELS: &str = "Plücker labels";
pub const THREE_TERM: &str = "three-term Plücker relations";
pub const PROFILE: &str = "vanishing profile";

/// Check, exactly: that the class is closed under exchange, every exchange relation of every seed in `class` at every
/// point, every Plücker label against its minor, all three-term relations
/// at generic points, their restrictions and `extra` at cell points, the
/// `k = 2` generator identities, and the vanishing profile of every cell
/// point.
pub fn verify_identities(
    nk: &GrassmannNecklace,
    class: &MutationClass,
    cells: &[CellPoint],
    generic: &[RationalMatrix],
    extra: &[Identity],
) -> Result<VerificationReport> {
    let start = class
        .seeds
        .first()
        .ok_or_else(|| Error::Domain("empty mutation class".into()))?;
    let symbols = start.symbols().to_vec();
    let mut broken = None;
    let exchanges: Vec<Vec<Exchanged>> = class
        .seeds
        .iter()
        .enumerate()
        .map(|(si, s)| {
            s.quiver()
                .mutable_vertices()
                .filter_map(|v| match s.mutate(v) {
                    Ok(t) => Some(Exchanged {
                        vertex: v,
                        new_var: t.var(v).clone(),
                        label: t.label(v),
                    }),
                    Err(e) => {
                        broken.get_or_insert(format!("seed {si}, vertex {v}: {e}"));
                        None
                    }
                })
                .collect()
        })
        .collect();
    let rels = three_term_relations(nk.n(), nk.k());
    let mut cell_ids = restricted_relations(nk, &rels);
    cell_ids.extend(k2_identities(nk)?);
    let mut c = Collector {
        results: Vec::new(),
    };
    c.record(
        CLOSURE,
        PointKind::Generic,
        0,
        Ok(broken.or_else(|| check_closure(class, &exchanges))),
    );
    c.checked(CLOSURE, 1);
    let run =
        |c: &mut Collector, id: &Identity, kind: PointKind, idx: usize, pe: &mut PointEval| {
            let outcome = (|| {
                let (l, r) = (pe.sum(&id.lhs)?, pe.sum(&id.rhs)?);
                Ok((l != r).then(|| format!("lhs = {l}, rhs = {r}")))
            })();
            c.record(&id.name, kind, idx, outcome);
        };
    for (idx, m) in generic.iter().enumerate() {
        let mut pe = PointEval::new(m, &symbols)?;
        c.record(
            EXCHANGE_GENERIC,
            PointKind::Generic,
            idx,
            check_exchanges(class, &exchanges, &mut pe),
        );
        c.record(
            LABELS,
            PointKind::Generic,
            idx,
            check_labels(class, &mut pe),
        );
        c.record(
            THREE_TERM,
            PointKind::Generic,
            idx,
            check_three_term(m, &rels),
        );
        for id in extra.iter().filter(|id| id.scope == Scope::Everywhere) {
            run(&mut c, id, PointKind::Generic, idx, &mut pe);
        }
    }
    c.checked(EXCHANGE_GENERIC, generic.len());
    c.checked(LABELS, generic.len());
    c.checked(THREE_TERM, generic.len());
    for id in extra.iter().filter(|id| id.scope == Scope::Everywhere) {
        c.checked(&id.name, generic.len());
    }
    for (idx, p) in cells.iter().enumerate() {
        let m = &p.matrix;
        let mut pe = PointEval::new(m, &symbols)?;
        c.record(
            EXCHANGE_CELL,
            PointKind::Cell,
            idx,
            check_exchanges(class, &exchanges, &mut pe),
        );
        c.record(LABELS, PointKind::Cell, idx, check_labels(class, &mut pe));
        c.record(
            PROFILE,
            PointKind::Cell,
            idx,
            check_profile(m, nk).map(|_| None),
        );
        for id in cell_ids.iter().chain(extra) {
            run(&mut c, id, PointKind::Cell, idx, &mut pe);
        }
    }
    c.checked(EXCHANGE_CELL, cells.len());
    c.checked(LABELS, cells.len());
    c.checked(PROFILE, cells.len());
    for id in cell_ids.iter().chain(extra) {
        c.checked(&id.name, cells.len());
    }
    let passed = c.results.iter().all(|r| r.failures.is_empty());
    Ok(VerificationReport {
        identities: c.results,
        passed,
    })
}

/// Random integer matrices with entries in `[-9, 9]`, redrawn until the
/// rank is full and no minor in `nonzero` vanishes.
pub fn generic_points<R: Rng + ?Sized>(
    k: usize,
    n: usize,
    count: usize,
    nonzero: &[KSet],
    rng: &mut R,
) -> Vec<RationalMatrix> {
    (0..count)
        .map(|_| loop {
            let m = RationalMatrix::random_integer(k, n, rng);
            if nonzero
                .iter()
                .all(|s| !m.minor(s).map_or(true, |v| v.is_zero()))
            {
                break m;
            }
        })
        .collect()
}

/// Corrupt the class for negative controls: the first mutable variable of
/// the last seed is doubled.
pub fn inject_fault(class: &MutationClass) -> MutationClass {
    let mut out = class.clone();
    if let Some(s) = out.seeds.last_mut() {
        let first = s.quiver().mutable_vertices().next();
        if let Some(v) = first {
            let two = LaurentPoly::constant(s.var(v).nvars(), Rational::from_integer(2.into()));
            let doubled = &two * s.var(v);
            *s = s.with_var(v, doubled);
        }
    }
    out
}

/// Identities recorded for specific positroids, in terms of the seeds of
/// the bridge graph: `x` is the variable obtained by mutating the initial
/// seed at the vertex labeled `246`. Empty for positroids not in the
/// catalogue.
pub fn known_identities(sigma: &DecoratedPermutation, start: &Seed) -> Result<Vec<Identity>> {
    let hexagon = DecoratedPermutation::from_cycles(6, &[vec![1, 3, 5], vec![2, 6, 4]], &[])?;
    if *sigma != hexagon {
        return Ok(Vec::new());
    }
    let n = 6;
    let pivot = KSet::parse_label(n, "246")?;
    let v = start
        .quiver()
        .find_label(&pivot)
        .ok_or_else(|| Error::MissingSymbol(pivot.label()))?;
    let mut vars = BTreeMap::new();
    vars.insert("x".to_string(), start.exchange(v)?.new_var);
    let table = [
        (
            "Δ246·x exchange",
            "246*x = 124*256*346 + 126*234*456",
            Scope::Everywhere,
        ),
        (
            "Δ246Δ145 relation",
            "246*145 = 124*456 + 146*245",
            Scope::Everywhere,
        ),
        (
            "Δ245Δ346 relation",
            "245*346 = 234*456 + 246*345",
            Scope::Everywhere,
        ),
        ("Δ245Δ346 on the cell", "245*346 = 234*456", Scope::Cell),
        ("Δ146Δ256 on the cell", "146*256 = 126*456", Scope::Cell),
        ("Δ146Δ125 on the cell", "146*125 = 126*145", Scope::Cell),
        ("Δ146·x on the cell", "146*x = 126*346*145", Scope::Cell),
    ];
    table
        .iter()
        .map(|(name, text, scope)| Identity::parse(name, text, n, 3, &vars, *scope))
        .collect()
}
