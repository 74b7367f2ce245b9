use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Color of a fixed point. `Minus` fixed points belong to every necklace
/// set (coloops); `Plus` fixed points belong to none (loops).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FixedColor {
    Plus,
    Minus,
}

impl FixedColor {
    pub fn sign(self) -> i8 {
        match self {
            FixedColor::Plus => 1,
            FixedColor::Minus => -1,
        }
    }

    pub fn from_sign(s: i64) -> Option<Self> {
        match s {
            1 => Some(FixedColor::Plus),
            -1 => Some(FixedColor::Minus),
            _ => None,
        }
    }
}

/// A permutation of `[n]` whose fixed points carry a color.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedPermutation {
    image: Vec<usize>,
    colors: BTreeMap<usize, FixedColor>,
}

impl DecoratedPermutation {
    /// `image[i - 1]` is the image of `i`.
    pub fn new(image: Vec<usize>, colors: BTreeMap<usize, FixedColor>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for (i, &v) in image.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "image of {} is {v}, outside 1..={n}",
                    i + 1
                )));
            }
            if seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("{v} hit twice")));
            }
            seen[v - 1] = true;
        }
        for i in 1..=n {
            let fixed = image[i - 1] == i;
            if fixed != colors.contains_key(&i) {
                return Err(Error::InvalidPermutation(if fixed {
                    format!("fixed point {i} has no color")
                } else {
                    format!("{i} is not fixed but carries a color")
                }));
            }
        }
        if let Some((&i, _)) = colors.range(n + 1..).next() {
            return Err(Error::InvalidPermutation(format!(
                "color for {i} outside 1..={n}"
            )));
        }
        Ok(DecoratedPermutation { image, colors })
    }

    /// `i -> i + k` on `Z_n`: the top cell of `Gr(k, n)`.
    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidPermutation(format!("k = {k} > n = {n}")));
        }
        let image: Vec<usize> = (1..=n).map(|i| (i - 1 + k) % n + 1).collect();
        let color = if k == 0 {
            FixedColor::Plus
        } else {
            FixedColor::Minus
        };
        let colors = if k == 0 || k == n {
            (1..=n).map(|i| (i, color)).collect()
        } else {
            BTreeMap::new()
        };
        DecoratedPermutation::new(image, colors)
    }

    /// Build from disjoint cycles; every point of `[n]` not mentioned in a
    /// cycle of length at least two is fixed and takes its color from
    /// `fixed_colors` (listed in increasing order of the fixed points).
    pub fn from_cycles(
        n: usize,
        cycles: &[Vec<usize>],
        fixed_colors: &[FixedColor],
    ) -> Result<Self> {
        let mut image: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (p, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(Error::InvalidPermutation(format!("{a} outside 1..={n}")));
                }
                if touched[a - 1] {
                    return Err(Error::InvalidPermutation(format!("{a} repeated in cycles")));
                }
                touched[a - 1] = true;
                image[a - 1] = cycle[(p + 1) % cycle.len()];
            }
        }
        let fixed: Vec<usize> = (1..=n).filter(|&i| image[i - 1] == i).collect();
        if fixed.len() != fixed_colors.len() {
            return Err(Error::InvalidPermutation(format!(
                "{} fixed points but {} colors",
                fixed.len(),
                fixed_colors.len()
            )));
        }
        let colors = fixed
            .into_iter()
            .zip(fixed_colors.iter().copied())
            .collect();
        DecoratedPermutation::new(image, colors)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn colors(&self) -> &BTreeMap<usize, FixedColor> {
        &self.colors
    }

    pub fn color(&self, i: usize) -> Option<FixedColor> {
        self.colors.get(&i).copied()
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.image[i - 1] == i
    }

    pub fn inverse_image(&self) -> Vec<usize> {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        inv
    }

    /// Rank of the positroid: anti-exceedances plus `Minus` fixed points.
    pub fn k(&self) -> usize {
        let n = self.n();
        (1..=n)
            .filter(|&i| {
                let v = self.apply(i);
                v < i || (v == i && self.color(i) == Some(FixedColor::Minus))
            })
            .count()
    }

    /// Bounded affine lift: `i <= f(i) <= i + n`, with `f(i) = i + n` exactly
    /// for `Minus` fixed points.
    pub fn affine(&self, i: usize) -> usize {
        let n = self.n();
        let v = self.apply(i);
        match v.cmp(&i) {
            std::cmp::Ordering::Greater => v,
            std::cmp::Ordering::Less => v + n,
            std::cmp::Ordering::Equal => match self.color(i) {
                Some(FixedColor::Minus) => i + n,
                _ => i,
            },
        }
    }

    /// Cycles of length at least two, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 1..=n {
            if seen[s - 1] || self.is_fixed(s) {
                continue;
            }
            let mut c = vec![s];
            seen[s - 1] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x - 1] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    /// Compose with the transposition of `i` and `j` on the right:
    /// the result sends `i` to `σ(j)` and `j` to `σ(i)`. New fixed points take
    /// the color dictated by the affine lift.
    pub(crate) fn swap_affine(&self, i: usize, j: usize) -> Self {
        let n = self.n();
        let mut f: Vec<usize> = (1..=n).map(|p| self.affine(p)).collect();
        let (fi, fj) = (f[i - 1], f[j - 1]);
        if i < j {
            f[i - 1] = fj;
            f[j - 1] = fi;
        } else {
            // j is the wrapped neighbour sitting at position j + n
            f[i - 1] = fj + n;
            f[j - 1] = fi - n;
        }
        from_affine(&f)
    }

    /// Number of alignments: pairs of chords that neither cross nor nest the
    /// wrong way, with fixed points read as degenerate chords (`Plus` of
    /// length zero, `Minus` of full length). Equals the codimension of the
    /// positroid cell.
    pub fn alignments(&self) -> usize {
        let n = self.n();
        let moving: Vec<usize> = (1..=n).filter(|&i| !self.is_fixed(i)).collect();
        let ccw = |a: usize, b: usize, c: usize, d: usize| cyclically_ordered(n, &[a, b, c, d]);
        let strictly_over = |i: usize, p: usize| {
            // p lies strictly inside the clockwise arc from i to σ(i)
            let v = self.apply(i);
            (p + n - i) % n < (v + n - i) % n && p != i
        };
        let mut count = 0;
        for &i in &moving {
            for &j in &moving {
                if i == j {
                    continue;
                }
                let (si, sj) = (self.apply(i), self.apply(j));
                if si != j && sj != i && si != sj && ccw(i, si, sj, j) {
                    count += 1;
                }
            }
        }
        let minus: Vec<usize> = self
            .colors
            .iter()
            .filter(|(_, c)| **c == FixedColor::Minus)
            .map(|(i, _)| *i)
            .collect();
        let plus: Vec<usize> = self
            .colors
            .iter()
            .filter(|(_, c)| **c == FixedColor::Plus)
            .map(|(i, _)| *i)
            .collect();
        for &m in &minus {
            count += moving.iter().filter(|&&j| !strictly_over(j, m)).count();
        }
        for &p in &plus {
            count += moving.iter().filter(|&&j| strictly_over(j, p)).count();
        }
        count + minus.len() * plus.len()
    }

    /// `(135)(264)`-style cycle notation, with a `:+,-` suffix listing fixed
    /// point colors when there are any.
    pub fn to_cycle_notation(&self) -> String {
        let n = self.n();
        let sep = if n > 9 { "," } else { "" };
        let cycles = self.cycles();
        let mut s = if cycles.is_empty() {
            "id".to_string()
        } else {
            String::new()
        };
        for c in &cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            s.push('(');
            s.push_str(&parts.join(sep));
            s.push(')');
        }
        if !self.colors.is_empty() {
            let cols: Vec<&str> = self
                .colors
                .values()
                .map(|c| if *c == FixedColor::Plus { "+" } else { "-" })
                .collect();
            s.push(':');
            s.push_str(&cols.join(","));
        }
        s
    }
}

pub(crate) fn from_affine(f: &[usize]) -> DecoratedPermutation {
    let n = f.len();
    let mut image = Vec::with_capacity(n);
    let mut colors = BTreeMap::new();
    for (p, &v) in f.iter().enumerate() {
        let i = p + 1;
        debug_assert!(v >= i && v <= i + n);
        image.push((v - 1) % n + 1);
        if v == i {
            colors.insert(i, FixedColor::Plus);
        } else if v == i + n {
            colors.insert(i, FixedColor::Minus);
        }
    }
    DecoratedPermutation::new(image, colors).expect("affine lift is a bounded permutation")
}

/// Whether the distinct points `pts` appear in this clockwise cyclic order.
pub fn cyclically_ordered(n: usize, pts: &[usize]) -> bool {
    if pts.is_empty() {
        return true;
    }
    let base = pts[0];
    let ranks: Vec<usize> = pts.iter().map(|&x| (x + n - base) % n).collect();
    ranks.windows(2).all(|w| w[0] < w[1])
}

impl fmt::Display for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_notation())
    }
}

impl fmt::Debug for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DecoratedPermutation({} on [{}])", self, self.n())
    }
}

#[derive(Serialize, Deserialize)]
struct PermutationJson {
    image: Vec<usize>,
    colors: BTreeMap<String, i64>,
}

impl Serialize for DecoratedPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermutationJson {
            image: self.image.clone(),
            colors: self
                .colors
                .iter()
                .map(|(i, c)| (i.to_string(), c.sign() as i64))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DecoratedPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PermutationJson::deserialize(d)?;
        let mut colors = BTreeMap::new();
        for (k, v) in raw.colors {
            let i: usize = k.parse().map_err(D::Error::custom)?;
            let c = FixedColor::from_sign(v)
                .ok_or_else(|| D::Error::custom(format!("color {v} must be +1 or -1")))?;
            colors.insert(i, c);
        }
        DecoratedPermutation::new(raw.image, colors).map_err(D::Error::custom)
    }
}

/// Parse a permutation description.
///
/// Accepted forms:
/// * cycle notation `(135)(264)`, elements separated by commas once any
///   exceeds 9: `(1,10,3)`; `n` is the largest element unless given;
/// * `id` for the identity;
/// * an optional `:c1,c2,...` suffix with one `+`/`-` per fixed point;
/// * `uniform:k,n`;
/// * the JSON object form `{"image": [...], "colors": {"i": ±1}}`.
pub fn parse_permutation(spec: &str, n_hint: Option<usize>) -> Result<DecoratedPermutation> {
    let trimmed = spec.trim();
    let offset = spec.len() - spec.trim_start().len();
    if trimmed.starts_with('{') {
        return serde_json::from_str(trimmed).map_err(|e| Error::Parse {
            pos: offset + e.column().saturating_sub(1),
            msg: e.to_string(),
        });
    }
    if let Some(rest) = trimmed.strip_prefix("uniform:") {
        let nums: Vec<&str> = rest.split(',').collect();
        let parse = |t: &str, at: usize| {
            t.trim().parse::<usize>().map_err(|_| Error::Parse {
                pos: at,
                msg: format!("expected integer, found {t:?}"),
            })
        };
        if nums.len() != 2 {
            return Err(Error::Parse {
                pos: offset + 8,
                msg: "expected uniform:k,n".into(),
            });
        }
        let k = parse(nums[0], offset + 8)?;
        let n = parse(nums[1], offset + 9 + nums[0].len())?;
        return DecoratedPermutation::uniform(k, n);
    }

    let (body, colors_part) = match trimmed.find(':') {
        Some(p) => (&trimmed[..p], Some((p + 1, &trimmed[p + 1..]))),
        None => (trimmed, None),
    };

    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let chars: Vec<(usize, char)> = body.char_indices().collect();
    let mut idx = 0;
    let body_is_id = body.trim() == "id" || body.trim().is_empty();
    if !body_is_id {
        while idx < chars.len() {
            let (pos, c) = chars[idx];
            if c.is_whitespace() {
                idx += 1;
                continue;
            }
            if c != '(' {
                return Err(Error::Parse {
                    pos: offset + pos,
                    msg: format!("expected '(' but found {c:?}"),
                });
            }
            idx += 1;
            let start = idx;
            while idx < chars.len() && chars[idx].1 != ')' {
                idx += 1;
            }
            if idx == chars.len() {
                return Err(Error::Parse {
                    pos: offset + pos,
                    msg: "unclosed cycle".into(),
                });
            }
            let inner: String = chars[start..idx].iter().map(|(_, c)| *c).collect();
            let inner_pos = if start < chars.len() {
                chars[start].0
            } else {
                pos + 1
            };
            let elems: Result<Vec<usize>> = if inner.contains(',') {
                let mut at = inner_pos;
                inner
                    .split(',')
                    .map(|t| {
                        let r = t.trim().parse::<usize>().map_err(|_| Error::Parse {
                            pos: offset + at,
                            msg: format!("expected integer, found {t:?}"),
                        });
                        at += t.len() + 1;
                        r
                    })
                    .collect()
            } else {
                inner
                    .char_indices()
                    .filter(|(_, c)| !c.is_whitespace())
                    .map(|(p, c)| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::Parse {
                                pos: offset + inner_pos + p,
                                msg: format!("expected digit, found {c:?}"),
                            })
                    })
                    .collect()
            };
            let elems = elems?;
            if elems.is_empty() {
                return Err(Error::Parse {
                    pos: offset + pos,
                    msg: "empty cycle".into(),
                });
            }
            if elems.len() > 1 {
                cycles.push(elems);
            } else {
                // explicit 1-cycle: only used to widen n
                cycles.push(elems);
            }
            idx += 1;
        }
    }

    let colors: Vec<FixedColor> = match colors_part {
        None => Vec::new(),
        Some((start, s)) => {
            let mut out = Vec::new();
            let mut at = start;
            for t in s.split(',') {
                let c = match t.trim() {
                    "+" | "+1" => FixedColor::Plus,
                    "-" | "-1" => FixedColor::Minus,
                    other => {
                        return Err(Error::Parse {
                            pos: offset + at,
                            msg: format!("fixed point color must be + or -, found {other:?}"),
                        })
                    }
                };
                out.push(c);
                at += t.len() + 1;
            }
            out
        }
    };

    let max_elem = cycles.iter().flatten().copied().max().unwrap_or(0);
    let n = match n_hint {
        Some(n) => n,
        None if body_is_id => colors.len(),
        None => {
            // fixed points above the largest cycle element are implied by extra colors
            let moving = cycles.iter().filter(|c| c.len() > 1).flatten().count();
            let fixed_below = max_elem - moving;
            max_elem + colors.len().saturating_sub(fixed_below)
        }
    };
    if max_elem > n {
        return Err(Error::Parse {
            pos: offset,
            msg: format!("element {max_elem} exceeds n = {n}"),
        });
    }
    let long: Vec<Vec<usize>> = cycles.iter().filter(|c| c.len() > 1).cloned().collect();
    for c in cycles.iter().filter(|c| c.len() == 1) {
        if long.iter().flatten().any(|&x| x == c[0]) {
            return Err(Error::Parse {
                pos: offset,
                msg: format!("{} appears twice", c[0]),
            });
        }
    }
    DecoratedPermutation::from_cycles(n, &long, &colors).map_err(|e| match e {
        Error::InvalidPermutation(msg) => Error::Parse { pos: offset, msg },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Inversions of the bounded affine permutation: pairs `i < j`,
    /// `i` in `[n]`, `j` in `Z`, with `f(i) > f(j)`.
    fn affine_length(s: &DecoratedPermutation) -> usize {
        let n = s.n();
        let f = |j: usize| {
            let r = (j - 1) % n + 1;
            s.affine(r) + (j - r)
        };
        let mut count = 0;
        for i in 1..=n {
            for j in i + 1..=i + 2 * n {
                if f(i) > f(j) {
                    count += 1;
                }
            }
        }
        count
    }

    fn ex81() -> DecoratedPermutation {
        parse_permutation("(135)(264)", None).unwrap()
    }

    #[test]
    fn parses_cycle_notation() {
        let s = ex81();
        assert_eq!(s.n(), 6);
        assert_eq!(s.image(), &[3, 6, 5, 2, 1, 4]);
        assert_eq!(s.k(), 3);
        assert_eq!(s.to_cycle_notation(), "(135)(264)");
    }

    #[test]
    fn parses_identity_with_colors() {
        let s = parse_permutation("id:+,-,+", None).unwrap();
        assert_eq!(s.n(), 3);
        assert_eq!(s.color(2), Some(FixedColor::Minus));
        assert_eq!(s.k(), 1);
        let s = parse_permutation("id:+,+,+", None).unwrap();
        assert_eq!(s.k(), 0);
    }

    #[test]
    fn parses_fixed_points_after_cycles() {
        let s = parse_permutation("(12):+", None).unwrap();
        assert_eq!(s.n(), 3);
        let s = parse_permutation("(13):-", None).unwrap();
        assert_eq!(s.n(), 3);
        assert_eq!(s.color(2), Some(FixedColor::Minus));
        let s = parse_permutation("(1,10)", Some(10));
        assert!(s.is_err(), "eight fixed points need colors");
        let s = parse_permutation("(1,10):+,+,+,+,+,+,+,+", None).unwrap();
        assert_eq!(s.n(), 10);
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_permutation("(13)x", None) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match parse_permutation("(1a3)", None) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        match parse_permutation("id:+,*", None) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_permutation("(12", None).is_err());
    }

    #[test]
    fn json_form_round_trips() {
        let s = parse_permutation("(12):-", None).unwrap();
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, r#"{"image":[2,1,3],"colors":{"3":-1}}"#);
        assert_eq!(parse_permutation(&js, None).unwrap(), s);
    }

    #[test]
    fn rejects_invalid_permutations() {
        assert!(DecoratedPermutation::new(vec![1, 1], BTreeMap::new()).is_err());
        assert!(DecoratedPermutation::new(vec![1, 2], BTreeMap::new()).is_err());
        let mut c = BTreeMap::new();
        c.insert(1, FixedColor::Plus);
        assert!(DecoratedPermutation::new(vec![2, 1], c).is_err());
    }

    #[test]
    fn alignment_examples() {
        assert_eq!(ex81().alignments(), 3);
        for n in 1..=7 {
            for k in 0..=n {
                assert_eq!(DecoratedPermutation::uniform(k, n).unwrap().alignments(), 0);
            }
        }
    }

    #[test]
    fn alignments_equal_affine_length_for_small_n() {
        for n in 1..=6 {
            for s in crate::combinatorics::all_decorated_permutations(n) {
                assert_eq!(s.alignments(), affine_length(&s), "{s}");
            }
        }
    }

    #[test]
    fn uniform_is_shift() {
        let s = DecoratedPermutation::uniform(2, 5).unwrap();
        assert_eq!(s.image(), &[3, 4, 5, 1, 2]);
        assert_eq!(s.k(), 2);
        let s = DecoratedPermutation::uniform(3, 3).unwrap();
        assert_eq!(s.k(), 3);
    }
}
