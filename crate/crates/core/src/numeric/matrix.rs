use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::KSet;
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Dense `k x n` matrix of exact rationals; the row span is a point of
/// `Gr(k, n)` when the rank is `k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    /// Entries drawn uniformly from `[-9, 9]`, redrawn until the rank is full.
    pub fn random_integer<R: Rng + ?Sized>(k: usize, n: usize, rng: &mut R) -> Self {
        loop {
            let mut m = RationalMatrix::zeros(k, n);
            for x in m.data.iter_mut() {
                *x = Rational::from_integer(BigInt::from(rng.gen_range(-9i64..=9)));
            }
            if m.rank() == k.min(n) {
                return m;
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        rank(&mut self.to_rows())
    }

    /// Plücker coordinate `Δ_J`: the determinant of the columns in `J`.
    pub fn minor(&self, j: &KSet) -> Result<Rational> {
        if j.k() != self.rows {
            return Err(Error::Dimension(format!(
                "|{j}| = {} but the matrix has {} rows",
                j.k(),
                self.rows
            )));
        }
        if j.n() != self.cols {
            return Err(Error::Dimension(format!(
                "{j} lives in [{}] but the matrix has {} columns",
                j.n(),
                self.cols
            )));
        }
        let cols: Vec<usize> = j.iter().map(|c| c - 1).collect();
        let sub: Vec<Vec<Rational>> = (0..self.rows)
            .map(|r| cols.iter().map(|&c| self.get(r, c).clone()).collect())
            .collect();
        Ok(determinant(sub))
    }

    pub fn scale_column(&mut self, c: usize, s: &Rational) {
        for r in 0..self.rows {
            let v = self.get(r, c) * s;
            self.set(r, c, v);
        }
    }
}

/// Determinant by Gaussian elimination over `Q`.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let size = m.len();
    let mut det = Rational::one();
    for c in 0..size {
        let Some(p) = (c..size).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for r in c + 1..size {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = &m[r][c] / &pivot;
            let (top, bottom) = m.split_at_mut(r);
            for (t, p) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *t -= &factor * p;
            }
        }
    }
    det
}

/// Rank by row reduction; `rows` is consumed as scratch space.
pub fn rank(rows: &mut [Vec<Rational>]) -> usize {
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    let mut rank = 0;
    for col in 0..c {
        let Some(p) = (rank..r).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(p, rank);
        let pivot = rows[rank][col].clone();
        for i in rank + 1..r {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &pivot;
            let (top, bottom) = rows.split_at_mut(i);
            for (t, p) in bottom[0][col..].iter_mut().zip(&top[rank][col..]) {
                *t -= &factor * p;
            }
        }
        rank += 1;
    }
    rank
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Domain(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(a, b))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for RationalMatrix {
    /// Rows of rational strings such as `"3/2"`.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let parsed: Result<Vec<Vec<Rational>>> = rows
            .iter()
            .map(|r| r.iter().map(|x| parse_rational(x)).collect())
            .collect();
        RationalMatrix::from_rows(parsed.map_err(D::Error::custom)?).map_err(D::Error::custom)
    }
}
