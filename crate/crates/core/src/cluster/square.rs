use std::collections::{BTreeSet, VecDeque};

use crate::combinatorics::KSet;
use crate::error::{Error, Result};

/// Witnesses of a square move at `pivot = L ∪ {a, c}`: the label `L ∪ {b, d}`
/// replacing it, for every `a < b < c < d` (cyclically) with `Lab`, `Lbc`,
/// `Lcd`, `Lda` all in `s`.
pub fn square_move_targets(s: &BTreeSet<KSet>, pivot: &KSet) -> Vec<KSet> {
    let inside = pivot.elements();
    let outside = pivot.complement().elements();
    let mut out = Vec::new();
    for (x, &a) in inside.iter().enumerate() {
        for &c in &inside[x + 1..] {
            let l = pivot.without(a).without(c);
            let with2 = |p: usize, q: usize| l.with(p).with(q);
            for &b in outside.iter().filter(|&&b| a < b && b < c) {
                if !s.contains(&with2(a, b)) || !s.contains(&with2(b, c)) {
                    continue;
                }
                for &d in outside.iter().filter(|&&d| d > c || d < a) {
                    if s.contains(&with2(c, d)) && s.contains(&with2(a, d)) {
                        let t = with2(b, d);
                        if !out.contains(&t) {
                            out.push(t);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// `(s \ {pivot}) ∪ {Lbd}` for the first witness quadruple at `pivot`.
pub fn square_move_collection(s: &BTreeSet<KSet>, pivot: &KSet) -> Result<BTreeSet<KSet>> {
    if !s.contains(pivot) {
        return Err(Error::NotSquareMovable(*pivot));
    }
    let t = *square_move_targets(s, pivot)
        .first()
        .ok_or(Error::NotSquareMovable(*pivot))?;
    let mut out = s.clone();
    out.remove(pivot);
    out.insert(t);
    Ok(out)
}

/// Collections reachable from `start` by square moves at labels outside
/// `frozen`, breadth first, stopping after `limit` collections.
pub fn square_move_closure(
    start: &BTreeSet<KSet>,
    frozen: &BTreeSet<KSet>,
    limit: usize,
) -> (BTreeSet<BTreeSet<KSet>>, bool) {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(s) = queue.pop_front() {
        for pivot in s.iter().filter(|p| !frozen.contains(p)) {
            for t in square_move_targets(&s, pivot) {
                let mut next = s.clone();
                next.remove(pivot);
                next.insert(t);
                if seen.contains(&next) {
                    continue;
                }
                if seen.len() >= limit {
                    return (seen, true);
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    (seen, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coll(n: usize, ls: &[&str]) -> BTreeSet<KSet> {
        ls.iter()
            .map(|l| KSet::parse_label(n, l).unwrap())
            .collect()
    }

    #[test]
    fn gr24_move() {
        let s = coll(4, &["12", "23", "34", "14", "13"]);
        let pivot = KSet::parse_label(4, "13").unwrap();
        assert_eq!(
            square_move_collection(&s, &pivot).unwrap(),
            coll(4, &["12", "23", "34", "14", "24"])
        );
        let back = square_move_collection(
            &coll(4, &["12", "23", "34", "14", "24"]),
            &KSet::parse_label(4, "24").unwrap(),
        )
        .unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn frozen_label_not_movable() {
        let s = coll(4, &["12", "23", "34", "14", "13"]);
        let pivot = KSet::parse_label(4, "12").unwrap();
        assert_eq!(
            square_move_collection(&s, &pivot),
            Err(Error::NotSquareMovable(pivot))
        );
    }

    #[test]
    fn general_l() {
        // L = {5}, (a, b, c, d) = (1, 2, 3, 4) in [6]
        let s = coll(6, &["125", "235", "345", "145", "135"]);
        let out = square_move_collection(&s, &KSet::parse_label(6, "135").unwrap()).unwrap();
        assert!(out.contains(&KSet::parse_label(6, "245").unwrap()));
    }

    #[test]
    fn gr25_closure() {
        let frozen = coll(5, &["12", "23", "34", "45", "15"]);
        let mut start = frozen.clone();
        start.extend(coll(5, &["13", "14"]));
        let (all, partial) = square_move_closure(&start, &frozen, 100);
        assert!(!partial);
        assert_eq!(all.len(), 5);
    }
}
