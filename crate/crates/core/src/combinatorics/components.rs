use std::collections::BTreeMap;

use serde::Serialize;

use super::necklace::{necklace_from_permutation, permutation_from_necklace, GrassmannNecklace};
use super::permutation::{cyclically_ordered, DecoratedPermutation};

/// One block of the connected-component decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Block `S_j ⊆ [n]`, increasing.
    pub elements: Vec<usize>,
    /// Restriction of the permutation to the block, relabeled onto `[|S_j|]`
    /// in increasing order.
    pub permutation: DecoratedPermutation,
    pub necklace: GrassmannNecklace,
}

impl Component {
    /// Original label of the `local`-th element of the block (1-based).
    pub fn global(&self, local: usize) -> usize {
        self.elements[local - 1]
    }
}

/// Finest non-crossing partition of `[n]` into `σ`-stable blocks, with the
/// necklace of each restricted permutation.
pub fn connected_components(necklace: &GrassmannNecklace) -> Vec<Component> {
    let sigma = permutation_from_necklace(necklace);
    let n = sigma.n();
    let mut block_of: Vec<usize> = (0..n).collect();
    for c in sigma.cycles() {
        for &x in &c {
            block_of[x - 1] = c[0] - 1;
        }
    }
    loop {
        let blocks = group(&block_of);
        let mut merged = false;
        'outer: for (a, ea) in &blocks {
            for (b, eb) in &blocks {
                if a < b && blocks_cross(n, ea, eb) {
                    for x in eb {
                        block_of[x - 1] = *a;
                    }
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            break;
        }
    }
    let mut blocks: Vec<Vec<usize>> = group(&block_of).into_values().collect();
    blocks.sort();
    blocks
        .into_iter()
        .map(|elements| {
            let local: BTreeMap<usize, usize> = elements
                .iter()
                .enumerate()
                .map(|(p, &x)| (x, p + 1))
                .collect();
            let image: Vec<usize> = elements.iter().map(|&x| local[&sigma.apply(x)]).collect();
            let colors = elements
                .iter()
                .filter_map(|&x| sigma.color(x).map(|c| (local[&x], c)))
                .collect();
            let permutation =
                DecoratedPermutation::new(image, colors).expect("restriction of a stable block");
            let necklace = necklace_from_permutation(&permutation);
            Component {
                elements,
                permutation,
                necklace,
            }
        })
        .collect()
}

fn group(block_of: &[usize]) -> BTreeMap<usize, Vec<usize>> {
    let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (p, &b) in block_of.iter().enumerate() {
        m.entry(b).or_default().push(p + 1);
    }
    m
}

/// Two disjoint blocks cross when they interleave as `a < b < c < d`
/// cyclically with `a, c` in one and `b, d` in the other.
pub fn blocks_cross(n: usize, a: &[usize], b: &[usize]) -> bool {
    for &p in a {
        for &r in a {
            for &q in b {
                for &s in b {
                    if cyclically_ordered(n, &[p, q, r, s]) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::parse_permutation;

    fn comps(spec: &str) -> Vec<Component> {
        connected_components(&necklace_from_permutation(
            &parse_permutation(spec, None).unwrap(),
        ))
    }

    #[test]
    fn example_is_connected() {
        let c = comps("(135)(264)");
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].elements, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn two_transpositions_split() {
        let c = comps("(12)(34)");
        let blocks: Vec<Vec<usize>> = c.iter().map(|x| x.elements.clone()).collect();
        assert_eq!(blocks, vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(c[0].necklace.sets().len(), 2);
        assert_eq!(c[1].global(1), 3);
    }

    #[test]
    fn single_point() {
        assert_eq!(comps("id:+").len(), 1);
        assert_eq!(comps("id:-").len(), 1);
    }

    #[test]
    fn crossing_cycles_merge() {
        // (13) and (24) interleave, so one block
        let c = comps("(13)(24)");
        assert_eq!(c.len(), 1);
    }
}
