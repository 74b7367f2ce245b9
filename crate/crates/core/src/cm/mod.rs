//! Rank-one modules as k-subsets: Ext-vanishing, CM B and GP B membership,
//! cluster-tilting collections and the k = 2 generator decomposition.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::combinatorics::{
    cyclically_ordered, in_positroid, noncrossing, positroid_members_capped, GrassmannNecklace,
    KSet,
};
use crate::error::{Error, Result};

/// Rank-one module `M_I`, described by its profile: a lattice path of `n`
/// steps going down exactly at the elements of `I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RankOneModule {
    pub label: KSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Step {
    Down,
    Across,
}

impl RankOneModule {
    pub fn new(label: KSet) -> Self {
        RankOneModule { label }
    }

    pub fn profile(&self) -> Vec<Step> {
        (1..=self.label.n())
            .map(|i| {
                if self.label.contains(i) {
                    Step::Down
                } else {
                    Step::Across
                }
            })
            .collect()
    }
}

fn same_type(i: &KSet, j: &KSet) -> Result<()> {
    if i.n() != j.n() || i.k() != j.k() {
        return Err(Error::Dimension(format!(
            "{i} is a {}-subset of [{}] but {j} is a {}-subset of [{}]",
            i.k(),
            i.n(),
            j.k(),
            j.n()
        )));
    }
    Ok(())
}

fn fits(i: &KSet, nk: &GrassmannNecklace) -> Result<()> {
    same_type(i, nk.get(1))
}

/// `Ext¹(M_I, M_J) = 0`, which holds exactly when `I` and `J` are non-crossing.
pub fn ext1_vanishes(i: &KSet, j: &KSet) -> Result<bool> {
    same_type(i, j)?;
    Ok(noncrossing(i, j))
}

/// `M_I` lies in CM B exactly when `I` is in the positroid of `nk`.
pub fn in_cm_b(i: &KSet, nk: &GrassmannNecklace) -> Result<bool> {
    fits(i, nk)?;
    Ok(in_positroid(nk, i))
}

/// `M_I` lies in GP B when it is in CM B and has no extensions with any
/// summand `M_{I_j}` of `B`.
pub fn in_gp_b(i: &KSet, nk: &GrassmannNecklace) -> Result<bool> {
    Ok(in_cm_b(i, nk)? && nk.iter().all(|j| noncrossing(i, j)))
}

/// All rank-one GP B labels, by enumerating the positroid (`n <= n_cap`).
pub fn gp_b_rank_one_list(nk: &GrassmannNecklace, n_cap: usize) -> Result<BTreeSet<KSet>> {
    let p = positroid_members_capped(nk, n_cap)?;
    Ok(p.members()
        .iter()
        .filter(|i| nk.iter().all(|j| noncrossing(i, j)))
        .copied()
        .collect())
}

/// Membership flags of one k-set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleFlags {
    pub set: KSet,
    #[serde(rename = "inP")]
    pub in_p: bool,
    #[serde(rename = "inCMB")]
    pub in_cmb: bool,
    #[serde(rename = "inGPB")]
    pub in_gpb: bool,
}

/// Flags for every k-subset of `[n]`, in lexicographic order.
pub fn module_flags(nk: &GrassmannNecklace, n_cap: usize) -> Result<Vec<ModuleFlags>> {
    let (n, k) = (nk.n(), nk.k());
    if n > n_cap {
        return Err(Error::SizeCap { n, k, cap: n_cap });
    }
    KSet::all(n, k)
        .into_iter()
        .map(|set| {
            let in_p = in_positroid(nk, &set);
            Ok(ModuleFlags {
                set,
                in_p,
                in_cmb: in_cm_b(&set, nk)?,
                in_gpb: in_gp_b(&set, nk)?,
            })
        })
        .collect()
}

/// `S` is a maximal pairwise non-crossing collection with `N ⊆ S ⊆ P`.
pub fn is_cluster_tilting_collection(s: &BTreeSet<KSet>, nk: &GrassmannNecklace) -> Result<bool> {
    for i in s {
        fits(i, nk)?;
    }
    if !nk.iter().all(|j| s.contains(j)) || !s.iter().all(|i| in_positroid(nk, i)) {
        return Ok(false);
    }
    let pairwise = s.iter().all(|a| s.iter().all(|b| noncrossing(a, b)));
    if !pairwise {
        return Ok(false);
    }
    let extendable = KSet::all(nk.n(), nk.k())
        .into_iter()
        .filter(|i| !s.contains(i) && in_positroid(nk, i))
        .any(|i| s.iter().all(|a| noncrossing(a, &i)));
    Ok(!extendable)
}

/// Every cluster-tilting collection of the positroid, by maximal-clique
/// enumeration on the non-crossing graph of the GP B labels.
pub fn cluster_tilting_collections(
    nk: &GrassmannNecklace,
    n_cap: usize,
) -> Result<Vec<BTreeSet<KSet>>> {
    let base: BTreeSet<KSet> = nk.iter().copied().collect();
    let free: Vec<KSet> = gp_b_rank_one_list(nk, n_cap)?
        .into_iter()
        .filter(|i| !base.contains(i))
        .collect();
    let m = free.len();
    let words = m.div_ceil(64).max(1);
    let mut adj = vec![vec![0u64; words]; m];
    for a in 0..m {
        for b in 0..m {
            if a != b && noncrossing(&free[a], &free[b]) {
                adj[a][b / 64] |= 1 << (b % 64);
            }
        }
    }
    let mut all = vec![0u64; words];
    for v in 0..m {
        all[v / 64] |= 1 << (v % 64);
    }
    let mut cliques = Vec::new();
    bron_kerbosch(&adj, &mut Vec::new(), all, vec![0u64; words], &mut cliques);
    let mut out: Vec<BTreeSet<KSet>> = cliques
        .into_iter()
        .map(|c| {
            let mut s = base.clone();
            s.extend(c.into_iter().map(|v| free[v]));
            s
        })
        .collect();
    out.sort();
    Ok(out)
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        (0..64)
            .filter(move |b| word >> b & 1 == 1)
            .map(move |b| 64 * w + b)
    })
}

fn bron_kerbosch(
    adj: &[Vec<u64>],
    r: &mut Vec<usize>,
    p: Vec<u64>,
    x: Vec<u64>,
    out: &mut Vec<Vec<usize>>,
) {
    let empty = |s: &[u64]| s.iter().all(|&w| w == 0);
    if empty(&p) {
        if empty(&x) {
            out.push(r.clone());
        }
        return;
    }
    // pivot with the most neighbours in p
    let pivot = bits(&p)
        .chain(bits(&x))
        .max_by_key(|&u| {
            adj[u]
                .iter()
                .zip(&p)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
        })
        .expect("p is nonempty");
    let candidates: Vec<usize> = bits(&p)
        .filter(|&v| adj[pivot][v / 64] >> (v % 64) & 1 == 0)
        .collect();
    let (mut p, mut x) = (p, x);
    for v in candidates {
        let np: Vec<u64> = p.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
        let nx: Vec<u64> = x.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
        r.push(v);
        bron_kerbosch(adj, r, np, nx, out);
        r.pop();
        p[v / 64] &= !(1 << (v % 64));
        x[v / 64] |= 1 << (v % 64);
    }
}

/// For `k = 2`, `I ∈ CM B \ GP B`: a necklace element `J` crossing `I` and
/// the resolution pair `(L1, L2)` inside the positroid, so that
/// `Δ_I Δ_J = Δ_{L1} Δ_{L2}` on the positroid variety.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct K2Decomposition {
    pub j: KSet,
    pub l1: KSet,
    pub l2: KSet,
}

pub fn k2_generator_decomposition(i: &KSet, nk: &GrassmannNecklace) -> Result<K2Decomposition> {
    fits(i, nk)?;
    if nk.k() != 2 {
        return Err(Error::Domain(format!(
            "generator decomposition needs k = 2, got k = {}",
            nk.k()
        )));
    }
    if !in_positroid(nk, i) {
        return Err(Error::Domain(format!("{i} is not in the positroid")));
    }
    if in_gp_b(i, nk)? {
        return Err(Error::NoDecompositionNeeded(*i));
    }
    let n = nk.n();
    let ac = i.elements();
    let crossing: BTreeSet<KSet> = nk.iter().filter(|j| !noncrossing(i, j)).copied().collect();
    for j in crossing {
        let bd = j.elements();
        // order so that a, b, c, d are cyclically ordered
        let (a, c) = (ac[0], ac[1]);
        let (b, d) = if cyclically_ordered(n, &[a, bd[0], c, bd[1]]) {
            (bd[0], bd[1])
        } else {
            (bd[1], bd[0])
        };
        let pair = |x: usize, y: usize| KSet::new(n, [x, y]).expect("distinct");
        for (l1, l2) in [(pair(a, b), pair(c, d)), (pair(a, d), pair(b, c))] {
            if in_positroid(nk, &l1) && in_positroid(nk, &l2) {
                let (l1, l2) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
                return Ok(K2Decomposition { j, l1, l2 });
            }
        }
    }
    Err(Error::Domain(format!(
        "no resolution of {i} inside the positroid"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{
        all_decorated_permutations, necklace_from_permutation, parse_permutation, positroid_members,
    };
    use crate::plabic::{bridge_graph_from_permutation, face_labels};

    fn ks(n: usize, l: &str) -> KSet {
        KSet::parse_label(n, l).unwrap()
    }

    fn nk(spec: &str) -> GrassmannNecklace {
        necklace_from_permutation(&parse_permutation(spec, None).unwrap())
    }

    // Crossing by scanning every quadruple of positions.
    fn crossing_oracle(i: &KSet, j: &KSet) -> bool {
        let n = i.n();
        let a: Vec<usize> = i.minus(j).elements();
        let b: Vec<usize> = j.minus(i).elements();
        for &p in &a {
            for &r in &a {
                for &q in &b {
                    for &s in &b {
                        if p != r && q != s && cyclically_ordered(n, &[p, q, r, s]) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn ext_examples() {
        assert!(!ext1_vanishes(&ks(4, "13"), &ks(4, "24")).unwrap());
        assert!(ext1_vanishes(&ks(4, "13"), &ks(4, "13")).unwrap());
        assert!(!ext1_vanishes(&ks(6, "125"), &ks(6, "346")).unwrap());
        assert!(crossing_oracle(&ks(6, "125"), &ks(6, "346")));
        assert!(ext1_vanishes(&ks(6, "12"), &ks(6, "123")).is_err());
    }

    #[test]
    fn ext_matches_oracle() {
        for i in KSet::all(7, 3) {
            for j in KSet::all(7, 3) {
                assert_eq!(ext1_vanishes(&i, &j).unwrap(), !crossing_oracle(&i, &j));
            }
        }
    }

    #[test]
    fn example_membership() {
        let n = nk("(135)(264)");
        assert!(!in_cm_b(&ks(6, "123"), &n).unwrap());
        assert!(in_cm_b(&ks(6, "245"), &n).unwrap());
        for l in ["124", "234", "346", "456", "256", "126", "246"] {
            assert!(in_gp_b(&ks(6, l), &n).unwrap(), "{l}");
        }
        assert!(!in_gp_b(&ks(6, "245"), &n).unwrap());
        assert!(!in_gp_b(&ks(6, "123"), &n).unwrap());
        let expected: BTreeSet<KSet> = ["124", "234", "346", "456", "256", "126", "246"]
            .iter()
            .map(|l| ks(6, l))
            .collect();
        assert_eq!(gp_b_rank_one_list(&n, 12).unwrap(), expected);
    }

    #[test]
    fn gp_b_small_cases() {
        assert_eq!(gp_b_rank_one_list(&nk("uniform:2,4"), 12).unwrap().len(), 6);
        let n = nk("(12)(34)");
        let brute: BTreeSet<KSet> = KSet::all(4, 2)
            .into_iter()
            .filter(|i| in_positroid(&n, i) && n.iter().all(|j| !crossing_oracle(i, j)))
            .collect();
        assert_eq!(gp_b_rank_one_list(&n, 12).unwrap(), brute);
    }

    #[test]
    fn cluster_tilting_examples() {
        let n = nk("(135)(264)");
        let mut s: BTreeSet<KSet> = n.iter().copied().collect();
        assert!(!is_cluster_tilting_collection(&s, &n).unwrap());
        s.insert(ks(6, "246"));
        assert!(is_cluster_tilting_collection(&s, &n).unwrap());
        let g24: BTreeSet<KSet> = ["12", "23", "34", "14", "13"]
            .iter()
            .map(|l| ks(4, l))
            .collect();
        assert!(is_cluster_tilting_collection(&g24, &nk("uniform:2,4")).unwrap());
    }

    #[test]
    fn clique_enumeration_counts() {
        assert_eq!(
            cluster_tilting_collections(&nk("uniform:2,5"), 12)
                .unwrap()
                .len(),
            5
        );
        assert_eq!(
            cluster_tilting_collections(&nk("uniform:2,6"), 12)
                .unwrap()
                .len(),
            14
        );
        assert_eq!(
            cluster_tilting_collections(&nk("uniform:3,6"), 12)
                .unwrap()
                .len(),
            34
        );
        assert_eq!(
            cluster_tilting_collections(&nk("(135)(264)"), 12)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn collections_have_dimension_size() {
        for n in 1..=6 {
            for s in all_decorated_permutations(n) {
                let nk = necklace_from_permutation(&s);
                let size = face_labels(&bridge_graph_from_permutation(&s))
                    .unwrap()
                    .len();
                for c in cluster_tilting_collections(&nk, 12).unwrap() {
                    assert_eq!(c.len(), size, "{s}");
                    assert!(is_cluster_tilting_collection(&c, &nk).unwrap());
                }
            }
        }
    }

    #[test]
    fn k2_example() {
        let n = nk("(12)(34)");
        let d = k2_generator_decomposition(&ks(4, "24"), &n).unwrap();
        assert_eq!(
            d,
            K2Decomposition {
                j: ks(4, "13"),
                l1: ks(4, "14"),
                l2: ks(4, "23")
            }
        );
        assert_eq!(
            k2_generator_decomposition(&ks(4, "13"), &n),
            Err(Error::NoDecompositionNeeded(ks(4, "13")))
        );
        assert!(k2_generator_decomposition(&ks(6, "246"), &nk("(135)(264)")).is_err());
    }

    #[test]
    fn k2_dichotomy() {
        for n in 2..=7 {
            for s in all_decorated_permutations(n) {
                let nk = necklace_from_permutation(&s);
                if nk.k() != 2 {
                    continue;
                }
                for i in positroid_members(&nk).unwrap().members() {
                    if !in_gp_b(i, &nk).unwrap() {
                        let d = k2_generator_decomposition(i, &nk).unwrap();
                        assert!(nk.contains(&d.j));
                    }
                }
            }
        }
    }

    #[test]
    fn profile_steps() {
        let m = RankOneModule::new(ks(5, "13"));
        assert_eq!(
            m.profile(),
            vec![
                Step::Down,
                Step::Across,
                Step::Down,
                Step::Across,
                Step::Across
            ]
        );
    }
}
