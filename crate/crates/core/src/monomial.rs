use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::ideal::IdealPresentation;

/// A monomial ideal, stored as its minimal generators (an antichain under
/// divisibility), sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Exponent>,
}

impl MonomialIdeal {
    /// Minimalizes the given generators.
    pub fn new(n: usize, gens: impl IntoIterator<Item = Exponent>) -> Result<Self> {
        let mut all: Vec<Exponent> = gens.into_iter().collect();
        if all.is_empty() {
            return Err(Error::InvalidArgument("monomial ideal needs a generator".into()));
        }
        if let Some(bad) = all.iter().find(|e| e.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        // Sorting by degree first means a divisor is always seen before its
        // multiples.
        all.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        all.dedup();
        let mut minimal: Vec<Exponent> = Vec::new();
        for e in all {
            if !minimal.iter().any(|m| m.divides(&e)) {
                minimal.push(e);
            }
        }
        minimal.sort();
        Ok(MonomialIdeal { n, gens: minimal })
    }

    /// The `k`-th power of the maximal ideal.
    pub fn maximal_power(n: usize, k: u32) -> Self {
        let mut gens = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left;
                out.push(Exponent::new(cur.clone()));
                return;
            }
            for a in (0..=left).rev() {
                cur[i] = a;
                rec(i + 1, left - a, cur, out);
            }
        }
        rec(0, k, &mut cur, &mut gens);
        Self::new(n, gens).expect("nonempty")
    }

    /// `⟨x_1^{a_1}, …, x_n^{a_n}⟩`.
    pub fn diagonal(powers: &[u32]) -> Self {
        let n = powers.len();
        Self::new(
            n,
            powers
                .iter()
                .enumerate()
                .map(|(i, &a)| Exponent::pure_power(n, i, a)),
        )
        .expect("nonempty")
    }

    /// Reads a presentation whose generators are all single terms.
    pub fn from_presentation(ideal: &IdealPresentation) -> Result<Self> {
        if !ideal.is_monomial() {
            return Err(Error::NotMonomial);
        }
        Self::new(
            ideal.nvars(),
            ideal
                .generators()
                .iter()
                .map(|g| g.leading_term().expect("nonzero").0.clone()),
        )
    }

    pub fn to_presentation(&self) -> IdealPresentation {
        IdealPresentation::from_exponents(self.n, &self.gens).expect("nonempty")
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Exponent] {
        &self.gens
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        self.gens.iter().any(|g| g.divides(e))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|e| self.contains(e))
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Exponent::is_zero)
    }

    /// For each variable, the exponent of the pure power of it among the
    /// minimal generators.
    pub fn pure_powers(&self) -> Vec<Option<u32>> {
        let mut out = vec![None; self.n];
        for g in &self.gens {
            if g.is_zero() {
                return vec![Some(0); self.n];
            }
            if let Some(i) = g.pure_axis() {
                out[i] = Some(g.entries()[i]);
            }
        }
        out
    }

    pub fn is_finite_colength(&self) -> bool {
        self.pure_powers().iter().all(Option::is_some)
    }

    /// Minimum degree of a generator.
    pub fn ord(&self) -> u32 {
        self.gens.iter().map(Exponent::degree).min().expect("nonempty")
    }

    /// The standard monomials (exponents outside the ideal).
    pub fn standard_monomials(&self) -> Result<Vec<Exponent>> {
        let bounds = self.staircase_box()?;
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.n];
        self.walk_box(0, &bounds, &mut cur, &mut out);
        Ok(out)
    }

    /// `dim O_n / I`, the number of standard monomials.
    pub fn colength(&self) -> Result<u64> {
        Ok(self.standard_monomials()?.len() as u64)
    }

    fn staircase_box(&self) -> Result<Vec<u32>> {
        self.pure_powers()
            .into_iter()
            .enumerate()
            .map(|(i, a)| {
                a.ok_or_else(|| {
                    Error::InfiniteColength(format!("no pure power of variable {} among the generators", i + 1))
                })
            })
            .collect()
    }

    fn walk_box(&self, i: usize, bounds: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if i == self.n {
            let e = Exponent::new(cur.clone());
            if !self.contains(&e) {
                out.push(e);
            }
            return;
        }
        for a in 0..bounds[i] {
            cur[i] = a;
            let partial = Exponent::new(cur.iter().enumerate().map(|(k, &v)| if k <= i { v } else { 0 }).collect());
            // Once the partial exponent lies in the ideal every extension does.
            if self.contains(&partial) {
                break;
            }
            self.walk_box(i + 1, bounds, cur, out);
        }
        cur[i] = 0;
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let sums = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a + b));
        MonomialIdeal::new(self.n, sums)
    }

    pub fn power(&self, t: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::new(self.n, [Exponent::zero(self.n)]).expect("nonempty");
        for _ in 0..t {
            acc = acc.product(self).expect("same dimension");
        }
        acc
    }

    /// `I_L`: the ideal of the subring on `indices`, generated by the minimal
    /// generators supported there, written in `indices.len()` variables.
    pub fn restrict_project(&self, indices: &[usize]) -> Option<MonomialIdeal> {
        let kept: Vec<Exponent> = self
            .gens
            .iter()
            .filter(|e| {
                e.entries()
                    .iter()
                    .enumerate()
                    .all(|(i, &a)| a == 0 || indices.contains(&i))
            })
            .map(|e| Exponent::new(indices.iter().map(|&i| e.entries()[i]).collect()))
            .collect();
        MonomialIdeal::new(indices.len(), kept).ok()
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialIdeal{:?}", self.gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(gens: &[&[u32]]) -> MonomialIdeal {
        let n = gens[0].len();
        MonomialIdeal::new(n, gens.iter().map(|g| Exponent::new(g.to_vec()))).unwrap()
    }

    #[test]
    fn minimalizes_generators() {
        let i = ideal(&[&[2, 0], &[1, 2], &[3, 0], &[0, 4], &[1, 3]]);
        assert_eq!(i.generators().len(), 3);
        assert!(i.contains(&Exponent::from([5, 1])));
        assert!(!i.contains(&Exponent::from([1, 1])));
    }

    #[test]
    fn staircase_colength() {
        assert_eq!(ideal(&[&[0, 2], &[1, 1], &[2, 0]]).colength().unwrap(), 3);
        assert_eq!(ideal(&[&[1, 0], &[0, 1]]).colength().unwrap(), 1);
        assert_eq!(ideal(&[&[0, 4], &[1, 2], &[3, 0]]).colength().unwrap(), 8);
        assert_eq!(MonomialIdeal::maximal_power(3, 2).colength().unwrap(), 4);
        assert!(matches!(
            ideal(&[&[1, 0]]).colength(),
            Err(Error::InfiniteColength(_))
        ));
    }

    #[test]
    fn powers_and_products() {
        let m = MonomialIdeal::maximal_power(2, 1);
        assert_eq!(m.power(2), MonomialIdeal::maximal_power(2, 2));
        let i = MonomialIdeal::diagonal(&[2, 4]);
        assert_eq!(i.power(2), ideal(&[&[4, 0], &[2, 4], &[0, 8]]));
        assert_eq!(MonomialIdeal::maximal_power(3, 3).generators().len(), 10);
        assert_eq!(i.ord(), 2);
    }
}
