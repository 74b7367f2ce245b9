use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ambient size representable by the bitmask encoding.
pub const MAX_N: usize = 64;

/// A subset of `[n] = {1, ..., n}`, stored as a bitmask (bit `i - 1` set
/// iff `i` is a member). Indexes both a Plücker coordinate and a rank-one
/// module.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSet {
    n: u8,
    bits: u64,
}

impl KSet {
    pub fn new(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::InvalidKSet(format!("n = {n} exceeds {MAX_N}")));
        }
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > n {
                return Err(Error::InvalidKSet(format!("element {e} outside 1..={n}")));
            }
            let b = 1u64 << (e - 1);
            if bits & b != 0 {
                return Err(Error::InvalidKSet(format!("repeated element {e}")));
            }
            bits |= b;
        }
        Ok(KSet { n: n as u8, bits })
    }

    pub(crate) fn from_bits(n: usize, bits: u64) -> Self {
        debug_assert!(n <= MAX_N);
        debug_assert!(n == 64 || bits >> n == 0);
        KSet { n: n as u8, bits }
    }

    pub fn empty(n: usize) -> Self {
        KSet::from_bits(n, 0)
    }

    pub fn full(n: usize) -> Self {
        KSet::from_bits(n, full_mask(n))
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn k(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.n() && self.bits & (1 << (i - 1)) != 0
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (1..=self.n()).filter(move |&i| bits & (1 << (i - 1)) != 0)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn with(&self, i: usize) -> Self {
        KSet::from_bits(self.n(), self.bits | (1 << (i - 1)))
    }

    pub fn without(&self, i: usize) -> Self {
        KSet::from_bits(self.n(), self.bits & !(1 << (i - 1)))
    }

    pub fn minus(&self, other: &KSet) -> Self {
        KSet::from_bits(self.n(), self.bits & !other.bits)
    }

    pub fn union(&self, other: &KSet) -> Self {
        KSet::from_bits(self.n(), self.bits | other.bits)
    }

    pub fn intersection(&self, other: &KSet) -> Self {
        KSet::from_bits(self.n(), self.bits & other.bits)
    }

    pub fn is_subset(&self, other: &KSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn complement(&self) -> Self {
        KSet::from_bits(self.n(), full_mask(self.n()) & !self.bits)
    }

    /// Elements listed in the shifted order `i <_i i+1 <_i ... <_i i-1`.
    pub fn shifted_elements(&self, i: usize) -> Vec<usize> {
        let n = self.n();
        (0..n)
            .map(|s| (i - 1 + s) % n + 1)
            .filter(|&x| self.contains(x))
            .collect()
    }

    /// Compact label such as `124`; elements are comma separated once `n > 9`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.iter().map(|e| e.to_string()).collect();
        if self.n() > 9 {
            parts.join(",")
        } else {
            parts.concat()
        }
    }

    /// Inverse of [`KSet::label`].
    pub fn parse_label(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(KSet::empty(n));
        }
        let elements: Result<Vec<usize>> = if s.contains(',') || n > 9 {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidKSet(format!("bad element {t:?}")))
                })
                .collect()
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidKSet(format!("bad element {c:?}")))
                })
                .collect()
        };
        KSet::new(n, elements?)
    }

    /// All `k`-subsets of `[n]` in lexicographic order.
    pub fn all(n: usize, k: usize) -> Vec<KSet> {
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut idx: Vec<usize> = (1..=k).collect();
        loop {
            out.push(KSet::new(n, idx.iter().copied()).expect("in range"));
            // advance to the next combination
            let mut p = k;
            while p > 0 && idx[p - 1] == n - k + p {
                p -= 1;
            }
            if p == 0 {
                return out;
            }
            idx[p - 1] += 1;
            for q in p..k {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Position of `x` in the shifted order starting at `i` (0 for `i` itself).
pub fn shifted_rank(n: usize, i: usize, x: usize) -> usize {
    (x + n - i) % n
}

/// The Gale order `I <=_i J`: compare the `s`-th smallest elements of both
/// sets in the shifted order starting at `i`.
pub fn shifted_leq(i: usize, a: &KSet, b: &KSet) -> Result<bool> {
    if a.n() != b.n() || a.k() != b.k() {
        return Err(Error::Dimension(format!(
            "({}, {}) vs ({}, {})",
            a.n(),
            a.k(),
            b.n(),
            b.k()
        )));
    }
    let n = a.n();
    if i == 0 || i > n {
        return Err(Error::Dimension(format!("shift index {i} outside 1..={n}")));
    }
    Ok(gale_leq(i, a, b))
}

pub(crate) fn gale_leq(i: usize, a: &KSet, b: &KSet) -> bool {
    let ea = a.shifted_elements(i);
    let eb = b.shifted_elements(i);
    let n = a.n();
    ea.iter()
        .zip(&eb)
        .all(|(&x, &y)| shifted_rank(n, i, x) <= shifted_rank(n, i, y))
}

/// Two sets are non-crossing (weakly separated) when no `a, c` in `I \ J`
/// and `b, d` in `J \ I` sit in cyclic order `a < b < c < d`.
///
/// Walking once around the circle through the symmetric difference, the
/// membership pattern changes side at most twice exactly when no such
/// quadruple exists.
pub fn noncrossing(a: &KSet, b: &KSet) -> bool {
    let only_a = a.bits & !b.bits;
    let only_b = b.bits & !a.bits;
    let n = a.n().max(b.n());
    let mut changes = 0;
    let mut first = None;
    let mut last = None;
    for i in 0..n {
        let side = if only_a >> i & 1 == 1 {
            Some(true)
        } else if only_b >> i & 1 == 1 {
            Some(false)
        } else {
            None
        };
        if let Some(s) = side {
            if first.is_none() {
                first = Some(s);
            }
            if let Some(l) = last {
                if l != s {
                    changes += 1;
                }
            }
            last = Some(s);
        }
    }
    if let (Some(f), Some(l)) = (first, last) {
        if f != l {
            changes += 1;
        }
    }
    changes <= 2
}

impl Ord for KSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.k().cmp(&other.k()))
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for KSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            write!(f, "∅")
        } else {
            write!(f, "{}", self.label())
        }
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KSet({}; n={})", self, self.n)
    }
}

impl Serialize for KSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}

/// Deserialization needs the ambient size, which a bare array does not carry;
/// this wrapper is used by the JSON layers that know `n`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RawKSet(pub Vec<usize>);

impl RawKSet {
    pub fn into_kset(self, n: usize) -> Result<KSet> {
        let mut v = self.0;
        let sorted = v.windows(2).all(|w| w[0] < w[1]);
        if !sorted {
            return Err(Error::InvalidKSet(format!(
                "{v:?} is not strictly increasing"
            )));
        }
        KSet::new(n, v.drain(..))
    }
}

impl<'de> Deserialize<'de> for KSet {
    /// Accepts `{"n": 6, "elements": [1, 2, 4]}`.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Full {
            n: usize,
            elements: Vec<usize>,
        }
        let full = Full::deserialize(d)?;
        RawKSet(full.elements)
            .into_kset(full.n)
            .map_err(serde::de::Error::custom)
    }
}
