//! Decorated permutations, Grassmann necklaces, positroids and the
//! non-crossing relation on `k`-subsets of `[n]`.

mod components;
mod kset;
mod necklace;
mod permutation;
mod positroid;

use std::collections::BTreeMap;

use rand::Rng;

pub use components::{blocks_cross, connected_components, Component};
pub use kset::{noncrossing, shifted_leq, shifted_rank, KSet, RawKSet, MAX_N};
pub use necklace::{
    necklace_from_permutation, permutation_from_necklace, reverse_necklace, GrassmannNecklace,
};
pub use permutation::{cyclically_ordered, parse_permutation, DecoratedPermutation, FixedColor};
pub use positroid::{
    in_positroid, positroid_members, positroid_members_capped, Positroid, DEFAULT_N_CAP,
};

/// Every decorated permutation of `[n]` (there are `sum_k n!/k!` of them).
pub fn all_decorated_permutations(n: usize) -> Vec<DecoratedPermutation> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (1..=n).collect();
    permute(&mut perm, 0, &mut |p| {
        let fixed: Vec<usize> = (1..=n).filter(|&i| p[i - 1] == i).collect();
        for mask in 0..(1u32 << fixed.len()) {
            let colors: BTreeMap<usize, FixedColor> = fixed
                .iter()
                .enumerate()
                .map(|(b, &i)| {
                    let c = if mask >> b & 1 == 1 {
                        FixedColor::Minus
                    } else {
                        FixedColor::Plus
                    };
                    (i, c)
                })
                .collect();
            out.push(DecoratedPermutation::new(p.to_vec(), colors).expect("valid"));
        }
    });
    out.sort();
    out
}

fn permute(p: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == p.len() {
        f(p);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permute(p, start + 1, f);
        p.swap(start, i);
    }
}

/// Uniform random permutation of `[n]` with independent fair fixed-point colors.
pub fn random_decorated_permutation<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
) -> DecoratedPermutation {
    let mut image: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        image.swap(i, j);
    }
    let colors = (1..=n)
        .filter(|&i| image[i - 1] == i)
        .map(|i| {
            (
                i,
                if rng.gen_bool(0.5) {
                    FixedColor::Plus
                } else {
                    FixedColor::Minus
                },
            )
        })
        .collect();
    DecoratedPermutation::new(image, colors).expect("shuffle is a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decorated_permutation_counts() {
        // sum_{k} n!/k!
        let expected = [1, 2, 5, 16, 65, 326];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(all_decorated_permutations(n).len(), e);
        }
    }
}
