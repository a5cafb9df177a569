//! Sparse multivariate polynomials over the rationals.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::rational::Rational;

/// A polynomial in `n` variables with nonzero rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by exponent; lexicographic ascending
/// key order is negative-lexicographic descending, so the first stored term is
/// always the initial term and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::term(n, Exponent::zero(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(Exponent::unit(n, i))
    }

    pub fn monomial(e: Exponent) -> Self {
        let n = e.dim();
        Self::term(n, e, Rational::one())
    }

    pub fn term(n: usize, e: Exponent, c: Rational) -> Self {
        assert_eq!(e.dim(), n, "exponent dimension");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Polynomial { n, terms }
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeated exponents.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Polynomial::zero(n);
        for (e, c) in terms {
            if e.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: e.dim(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.n
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

    /// Terms in negative-lexicographic descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// The exponents with nonzero coefficient.
    pub fn support(&self) -> Result<BTreeSet<Exponent>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.terms.keys().cloned().collect())
    }

    /// The initial (negative-lexicographically greatest) term.
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next()
    }

    /// Whether the polynomial is a single term.
    pub fn is_monomial_term(&self) -> bool {
        self.terms.len() == 1
    }

    /// Maximum total degree of a term; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Exponent::degree).max().unwrap_or(0)
    }

    /// Minimum total degree of a term (the order of vanishing at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).min()
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c·x^shift·other`.
    pub(crate) fn add_scaled_shifted(&mut self, c: &Rational, shift: &Exponent, other: &Polynomial) {
        for (e, a) in &other.terms {
            self.add_term(e + shift, c * a);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn mul_monomial(&self, shift: &Exponent) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(e, a)| (e + shift, a.clone())).collect(),
        }
    }

    pub fn pow(&self, t: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.n);
        let mut base = self.clone();
        let mut t = t;
        while t > 0 {
            if t & 1 == 1 {
                acc = &acc * &base;
            }
            t >>= 1;
            if t > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (e, a) in &self.terms {
            let k = e.entries()[i];
            if k == 0 {
                continue;
            }
            let mut d = e.entries().to_vec();
            d[i] -= 1;
            out.add_term(Exponent::new(d), a * Rational::from_integer(BigInt::from(k)));
        }
        out
    }

    /// Substitutes `x_i ↦ images[i]` (all images share a common ambient ring).
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: images.len(),
            });
        }
        let m = images.first().map(Polynomial::nvars).unwrap_or(0);
        let mut power_cache: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(m), p.clone()])
            .collect();
        let mut out = Polynomial::zero(m);
        for (e, a) in &self.terms {
            let mut prod = Polynomial::constant(m, a.clone());
            for (i, &k) in e.entries().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cache = &mut power_cache[i];
                while cache.len() <= k as usize {
                    let next = &cache[cache.len() - 1] * &images[i];
                    cache.push(next);
                }
                prod = &prod * &cache[k as usize];
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// Keeps the terms whose support lies in the coordinates `keep`.
    pub fn restrict_to(&self, keep: &[bool]) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| {
                    e.entries()
                        .iter()
                        .zip(keep)
                        .all(|(&a, &k)| k || a == 0)
                })
                .map(|(e, a)| (e.clone(), a.clone()))
                .collect(),
        }
    }

    /// Re-expresses a polynomial supported on `indices` in `indices.len()`
    /// variables. Terms involving other variables are dropped.
    pub fn project(&self, indices: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(indices.len());
        for (e, a) in &self.terms {
            let inside = e
                .entries()
                .iter()
                .enumerate()
                .all(|(i, &k)| k == 0 || indices.contains(&i));
            if inside {
                let sub = indices.iter().map(|&i| e.entries()[i]).collect();
                out.add_term(Exponent::new(sub), a.clone());
            }
        }
        out
    }

    /// Inverse of [`Polynomial::project`]: embeds into `n` variables.
    pub fn embed(&self, n: usize, indices: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero(n);
        for (e, a) in &self.terms {
            let mut full = vec![0; n];
            for (j, &i) in indices.iter().enumerate() {
                full[i] = e.entries()[j];
            }
            out.add_term(Exponent::new(full), a.clone());
        }
        out
    }

    /// Drops every term of total degree `>= bound`.
    pub fn truncate_below(&self, bound: u32) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() < bound)
                .map(|(e, a)| (e.clone(), a.clone()))
                .collect(),
        }
    }

    /// Renders with the given variable names, e.g. `x^2 + 2*x*y - 1/3*y^4`.
    pub fn render(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !abs.is_one() || e.is_zero() {
                factors.push(crate::rational::render(&abs));
            }
            for (i, &p) in e.entries().iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], p)),
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, a) in &rhs.terms {
            out.add_term(e.clone(), a.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, a) in &rhs.terms {
            out.add_term(e.clone(), -a);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (e, a) in &self.terms {
            out.add_scaled_shifted(a, e, rhs);
        }
        out
    }
}
