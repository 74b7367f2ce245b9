use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::kset::{shifted_rank, KSet, RawKSet};
use super::permutation::{DecoratedPermutation, FixedColor};
use crate::error::{Error, Result};

/// Cyclic sequence `I_1, ..., I_n` of `k`-sets with `I_i \ {i} ⊆ I_{i+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrassmannNecklace {
    sets: Vec<KSet>,
}

impl GrassmannNecklace {
    pub fn new(sets: Vec<KSet>) -> Result<Self> {
        let n = sets.len();
        if n == 0 {
            return Err(Error::InvalidNecklace("empty sequence".into()));
        }
        let k = sets[0].k();
        for (p, s) in sets.iter().enumerate() {
            if s.n() != n || s.k() != k {
                return Err(Error::InvalidNecklace(format!(
                    "I_{} = {s} is not a {k}-subset of [{n}]",
                    p + 1
                )));
            }
        }
        for i in 1..=n {
            let cur = &sets[i - 1];
            let next = &sets[i % n];
            if !cur.without(i).is_subset(next) {
                return Err(Error::InvalidNecklace(format!(
                    "I_{i} \\ {{{i}}} = {} is not contained in I_{} = {next}",
                    cur.without(i),
                    i % n + 1
                )));
            }
            if !cur.contains(i) && cur != next {
                return Err(Error::InvalidNecklace(format!(
                    "{i} not in I_{i} but I_{} differs",
                    i % n + 1
                )));
            }
        }
        Ok(GrassmannNecklace { sets })
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    pub fn k(&self) -> usize {
        self.sets[0].k()
    }

    /// `I_i`, with indices read cyclically (`I_{n+1} = I_1`).
    pub fn get(&self, i: usize) -> &KSet {
        let n = self.n();
        &self.sets[(i + n - 1) % n]
    }

    pub fn sets(&self) -> &[KSet] {
        &self.sets
    }

    pub fn iter(&self) -> impl Iterator<Item = &KSet> {
        self.sets.iter()
    }

    pub fn contains(&self, s: &KSet) -> bool {
        self.sets.contains(s)
    }

    /// Whether all `I_i` are distinct; characterizes connected positroids.
    pub fn all_distinct(&self) -> bool {
        let mut v = self.sets.clone();
        v.sort();
        v.dedup();
        v.len() == self.sets.len()
    }
}

/// `I_i = { j : σ⁻¹(j) >_i j }` together with the `Minus` fixed points.
pub fn necklace_from_permutation(sigma: &DecoratedPermutation) -> GrassmannNecklace {
    let n = sigma.n();
    let inv = sigma.inverse_image();
    let minus: Vec<usize> = sigma
        .colors()
        .iter()
        .filter(|(_, c)| **c == FixedColor::Minus)
        .map(|(i, _)| *i)
        .collect();
    let sets = (1..=n)
        .map(|i| {
            let members = (1..=n)
                .filter(|&j| shifted_rank(n, i, inv[j - 1]) > shifted_rank(n, i, j))
                .chain(minus.iter().copied());
            KSet::new(n, members).expect("members lie in [n]")
        })
        .collect();
    GrassmannNecklace::new(sets).expect("anti-exceedance sets form a necklace")
}

/// Inverse of [`necklace_from_permutation`].
pub fn permutation_from_necklace(necklace: &GrassmannNecklace) -> DecoratedPermutation {
    let n = necklace.n();
    let mut image = vec![0; n];
    let mut colors = BTreeMap::new();
    for i in 1..=n {
        let cur = necklace.get(i);
        let next = necklace.get(i + 1);
        if !cur.contains(i) {
            image[i - 1] = i;
            colors.insert(i, FixedColor::Plus);
        } else if cur == next {
            image[i - 1] = i;
            colors.insert(i, FixedColor::Minus);
        } else {
            let added = next.minus(&cur.without(i));
            debug_assert_eq!(added.k(), 1);
            image[i - 1] = added.iter().next().expect("one element added");
        }
    }
    DecoratedPermutation::new(image, colors).expect("a valid necklace determines a permutation")
}

/// Reverse necklace: `Ĩ_i = { j : j >_i σ(j) }` plus the `Minus` fixed points;
/// consecutive terms satisfy `Ĩ_{j+1} = (Ĩ_j \ {σ⁻¹(j)}) ∪ {j}` when `j` is
/// not fixed, and `Ĩ_{j+1} = Ĩ_j` when it is.
pub fn reverse_necklace(sigma: &DecoratedPermutation) -> Vec<KSet> {
    let n = sigma.n();
    (1..=n)
        .map(|i| {
            let members = (1..=n).filter(|&j| {
                let v = sigma.apply(j);
                if v == j {
                    sigma.color(j) == Some(FixedColor::Minus)
                } else {
                    shifted_rank(n, i, j) > shifted_rank(n, i, v)
                }
            });
            KSet::new(n, members).expect("members lie in [n]")
        })
        .collect()
}

impl fmt::Display for GrassmannNecklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sets.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for GrassmannNecklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrassmannNecklace{self}")
    }
}

impl Serialize for GrassmannNecklace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.sets.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GrassmannNecklace {
    /// Array of arrays; `n` is the number of sets.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: Vec<RawKSet> = Vec::deserialize(d)?;
        let n = raw.len();
        let sets: Result<Vec<KSet>> = raw.into_iter().map(|r| r.into_kset(n)).collect();
        GrassmannNecklace::new(sets.map_err(D::Error::custom)?).map_err(D::Error::custom)
    }
}
