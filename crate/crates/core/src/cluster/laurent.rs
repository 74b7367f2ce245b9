use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{format_rational, parse_rational, Rational};

/// Sparse Laurent polynomial with rational coefficients in a fixed number of
/// symbols. Exponent vectors are keys; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        LaurentPoly::monomial(c, vec![0; nvars])
    }

    pub fn one(nvars: usize) -> Self {
        LaurentPoly::constant(nvars, Rational::one())
    }

    /// The symbol `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        LaurentPoly::monomial(Rational::one(), e)
    }

    pub fn monomial(c: Rational, exp: Vec<i32>) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// `prod x_i^{e_i}` with unit coefficient.
    pub fn from_exponents(exp: Vec<i32>) -> Self {
        LaurentPoly::monomial(Rational::one(), exp)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// `Some((c, e))` when the polynomial is the single term `c x^e`.
    pub fn as_monomial(&self) -> Option<(&Rational, &[i32])> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().expect("one term");
            Some((c, e))
        } else {
            None
        }
    }

    /// `Some(i)` when the polynomial is exactly the symbol `x_i`.
    pub fn as_symbol(&self) -> Option<usize> {
        let (c, e) = self.as_monomial()?;
        if !c.is_one() {
            return None;
        }
        let mut hit = None;
        for (i, &x) in e.iter().enumerate() {
            match x {
                0 => {}
                1 if hit.is_none() => hit = Some(i),
                _ => return None,
            }
        }
        hit
    }

    fn add_term(&mut self, exp: Vec<i32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &LaurentPoly) {
        assert_eq!(
            self.nvars, other.nvars,
            "Laurent polynomials over different symbol sets"
        );
    }

    /// Multiply by `c x^e`.
    pub fn scale(&self, c: &Rational, e: &[i32]) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (f, d) in &self.terms {
            let exp = f.iter().zip(e).map(|(a, b)| a + b).collect();
            out.terms.insert(exp, d * c);
        }
        out
    }

    pub fn pow(&self, m: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one(self.nvars);
        for _ in 0..m {
            out = &out * self;
        }
        out
    }

    /// Componentwise minimum exponent; all zeros for the zero polynomial.
    fn min_exponents(&self) -> Vec<i32> {
        let mut m: Option<Vec<i32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Exact quotient `self / d` in the Laurent ring, or `None` when `d`
    /// does not divide `self`.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        self.check_vars(d);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        // clear monomial factors so both sides are polynomials
        let (sa, sb) = (self.min_exponents(), d.min_exponents());
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<i32>>();
        let one = Rational::one();
        let mut rem = self.scale(&one, &neg(&sa));
        let den = d.scale(&one, &neg(&sb));
        let (lead_e, lead_c) = den.terms.iter().next_back().expect("nonzero");
        let mut quot = LaurentPoly::zero(self.nvars);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let shift: Vec<i32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if shift.iter().any(|&x| x < 0) {
                return None;
            }
            let q = c / lead_c;
            rem = &rem - &den.scale(&q, &shift);
            quot.add_term(shift, q);
        }
        let back: Vec<i32> = sa.iter().zip(&sb).map(|(a, b)| a - b).collect();
        Some(quot.scale(&one, &back))
    }

    /// Exact value at `values[i]` for symbol `i`.
    pub fn evaluate(&self, values: &[Rational]) -> Result<Rational> {
        self.evaluate_named(values, |i| format!("x{i}"))
    }

    pub fn evaluate_named(
        &self,
        values: &[Rational],
        name: impl Fn(usize) -> String,
    ) -> Result<Rational> {
        if values.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "{} values for {} symbols",
                values.len(),
                self.nvars
            )));
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if values[i].is_zero() {
                    if x < 0 {
                        return Err(Error::Pole(name(i)));
                    }
                    t = Rational::zero();
                    break;
                }
                let p = num_traits::pow(values[i].clone(), x.unsigned_abs() as usize);
                if x > 0 {
                    t *= p;
                } else {
                    t /= p;
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Render as `numerator / denominator-monomial` using symbol names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let lo = self.min_exponents();
        let den: Vec<i32> = lo.iter().map(|&x| if x < 0 { -x } else { 0 }).collect();
        let numer = self.scale(&Rational::one(), &den);
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in numer.terms.iter().rev() {
            let mono = render_monomial(e, names);
            let coef = if c.abs().is_one() && !mono.is_empty() {
                String::new()
            } else {
                format_rational(&c.abs())
            };
            let body = format!("{coef}{mono}");
            let sign = if c.is_negative() { "-" } else { "+" };
            if parts.is_empty() {
                parts.push(if c.is_negative() {
                    format!("-{body}")
                } else {
                    body
                });
            } else {
                parts.push(format!("{sign} {body}"));
            }
        }
        let top = parts.join(" ");
        let bottom = render_monomial(&den, names);
        match (bottom.is_empty(), parts.len()) {
            (true, _) => top,
            (false, 1) => format!("{top}/{bottom}"),
            (false, _) => format!("({top})/{bottom}"),
        }
    }

    pub fn to_json(&self, names: &[String]) -> LaurentJson {
        LaurentJson {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x != 0)
                        .map(|(i, &x)| (names[i].clone(), x))
                        .collect(),
                    coef: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn from_json(js: &LaurentJson, names: &[String]) -> Result<Self> {
        let index: BTreeMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mut p = LaurentPoly::zero(names.len());
        for t in &js.terms {
            let mut e = vec![0; names.len()];
            for (s, &x) in &t.exp {
                let i = *index
                    .get(s.as_str())
                    .ok_or_else(|| Error::MissingSymbol(s.clone()))?;
                e[i] = x;
            }
            p.add_term(e, parse_rational(&t.coef)?);
        }
        Ok(p)
    }
}

fn render_monomial(e: &[i32], names: &[String]) -> String {
    let mut s = String::new();
    for (i, &x) in e.iter().enumerate() {
        match x {
            0 => {}
            1 => s.push_str(&names[i]),
            _ => s.push_str(&format!("{}^{x}", names[i])),
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: BTreeMap<String, i32>,
    pub coef: String,
}

/// JSON form `{"terms":[{"exp":{"124":1,"256":-1},"coef":"3/2"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub terms: Vec<TermJson>,
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    // Exponents add when monomials multiply.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check_vars(rhs);
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                out.add_term(e.iter().zip(f).map(|(a, b)| a + b).collect(), c * d);
            }
        }
        out
    }
}
