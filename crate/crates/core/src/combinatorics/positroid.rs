use std::collections::BTreeSet;

use super::kset::{gale_leq, KSet};
use super::necklace::GrassmannNecklace;
use crate::error::{Error, Result};

/// Default largest `n` for which member sets are materialized.
pub const DEFAULT_N_CAP: usize = 12;

/// The positroid `{J : I_i <=_i J for all i}` of a Grassmann necklace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Positroid {
    necklace: GrassmannNecklace,
    members: BTreeSet<KSet>,
}

impl Positroid {
    pub fn necklace(&self) -> &GrassmannNecklace {
        &self.necklace
    }

    pub fn members(&self) -> &BTreeSet<KSet> {
        &self.members
    }

    pub fn contains(&self, j: &KSet) -> bool {
        self.members.contains(j)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// All `k`-subsets of `[n]` that are not members.
    pub fn complement(&self) -> BTreeSet<KSet> {
        KSet::all(self.necklace.n(), self.necklace.k())
            .into_iter()
            .filter(|j| !self.members.contains(j))
            .collect()
    }
}

/// Gale membership test, usable for any `n` without enumeration.
pub fn in_positroid(necklace: &GrassmannNecklace, j: &KSet) -> bool {
    j.n() == necklace.n()
        && j.k() == necklace.k()
        && (1..=necklace.n()).all(|i| gale_leq(i, necklace.get(i), j))
}

pub fn positroid_members(necklace: &GrassmannNecklace) -> Result<Positroid> {
    positroid_members_capped(necklace, DEFAULT_N_CAP)
}

pub fn positroid_members_capped(necklace: &GrassmannNecklace, n_cap: usize) -> Result<Positroid> {
    let (n, k) = (necklace.n(), necklace.k());
    if n > n_cap {
        return Err(Error::SizeCap { n, k, cap: n_cap });
    }
    let members = KSet::all(n, k)
        .into_iter()
        .filter(|j| in_positroid(necklace, j))
        .collect();
    Ok(Positroid {
        necklace: necklace.clone(),
        members,
    })
}
