//! The negative lexicographic local ordering.
//!
//! `x^α > x^β` iff at the first index where `α` and `β` differ, `α` has the
//! smaller entry. In particular `1 > x^α` for every `α ≠ 0` and
//! `x_n > x_{n-1} > ⋯ > x_1`. This is the only monomial ordering the library
//! uses; it is the reverse of the lexicographic order on exponent vectors.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::poly::Polynomial;

/// Compares two exponents in the local order (`Greater` means the monomial
/// is larger, i.e. "closer to 1").
pub fn neglex_cmp(a: &Exponent, b: &Exponent) -> Ordering {
    b.cmp(a)
}

pub fn neglex_greater(a: &Exponent, b: &Exponent) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(neglex_cmp(a, b) == Ordering::Greater)
}

/// The local-order maximum of the support of `f`.
pub fn initial_monomial(f: &Polynomial) -> Result<Exponent> {
    f.leading_term()
        .map(|(e, _)| e.clone())
        .ok_or(Error::ZeroPolynomial)
}

/// A nonempty set `L` of variable indices (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableSubset {
    n: usize,
    included: Vec<usize>,
}

impl VariableSubset {
    pub fn new(n: usize, mut included: Vec<usize>) -> Result<Self> {
        included.sort_unstable();
        included.dedup();
        if included.is_empty() {
            return Err(Error::InvalidArgument("empty variable subset".into()));
        }
        if let Some(&bad) = included.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidArgument(format!(
                "variable index {bad} out of range for {n} variables"
            )));
        }
        Ok(VariableSubset { n, included })
    }

    /// The suffix `{j, …, n-1}` (0-based), i.e. the last `n - j` variables.
    pub fn suffix(n: usize, j: usize) -> Result<Self> {
        Self::new(n, (j..n).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.included
    }

    pub fn mask(&self) -> Vec<bool> {
        (0..self.n).map(|i| self.included.contains(&i)).collect()
    }

    pub fn contains_support(&self, e: &Exponent) -> bool {
        e.entries()
            .iter()
            .enumerate()
            .all(|(i, &a)| a == 0 || self.included.contains(&i))
    }
}

/// `f_L`: the terms of `f` supported on the coordinates in `L`.
pub fn restrict(f: &Polynomial, l: &VariableSubset) -> Polynomial {
    f.restrict_to(&l.mask())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::parse_ideal;
    use proptest::prelude::*;

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    fn poly(text: &str) -> Polynomial {
        parse_ideal(&format!("vars: x, y\ngens: {text}")).unwrap().generators()[0].clone()
    }

    #[test]
    fn neglex_examples() {
        assert!(neglex_greater(&e(&[0, 1]), &e(&[1, 0])).unwrap());
        assert!(neglex_greater(&e(&[0, 0]), &e(&[3, 1])).unwrap());
        assert!(neglex_greater(&e(&[0, 0]), &e(&[0, 7])).unwrap());
        assert!(neglex_greater(&e(&[0, 2]), &e(&[1, 0])).unwrap());
        assert!(!neglex_greater(&e(&[1, 0]), &e(&[1, 0])).unwrap());
        assert!(neglex_greater(&e(&[1]), &e(&[1, 0])).is_err());
    }

    #[test]
    fn initial_monomials() {
        assert_eq!(initial_monomial(&poly("x + y^2")).unwrap(), e(&[0, 2]));
        assert_eq!(initial_monomial(&poly("y^3")).unwrap(), e(&[0, 3]));
        assert_eq!(initial_monomial(&poly("x^2 + x*y^2")).unwrap(), e(&[1, 2]));
        assert_eq!(
            initial_monomial(&Polynomial::zero(2)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn initial_monomial_is_pairwise_maximum() {
        let f = poly("x^2 + x*y^2 + y^5 + x^3*y");
        let lead = initial_monomial(&f).unwrap();
        for k in f.support().unwrap() {
            assert!(k == lead || neglex_greater(&lead, &k).unwrap());
        }
    }

    #[test]
    fn restriction_examples() {
        let l2 = VariableSubset::new(2, vec![1]).unwrap();
        let l1 = VariableSubset::new(2, vec![0]).unwrap();
        assert_eq!(restrict(&poly("x + y^2"), &l2), poly("y^2"));
        assert_eq!(restrict(&poly("x + y^2"), &l1), poly("x"));
        assert!(restrict(&poly("x*y"), &l1).is_zero());
        assert!(VariableSubset::new(2, vec![]).is_err());
        assert!(VariableSubset::new(2, vec![2]).is_err());
    }

    fn exps(n: usize) -> impl Strategy<Value = Exponent> {
        proptest::collection::vec(0u32..6, n).prop_map(Exponent::new)
    }

    fn small_poly(n: usize) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((exps(n), -5i64..=5), 1..6).prop_filter_map("nonzero", move |ts| {
            let p = Polynomial::from_terms(
                n,
                ts.into_iter().map(|(e, c)| (e, crate::rational::int(c))),
            )
            .unwrap();
            (!p.is_zero()).then_some(p)
        })
    }

    proptest! {
        #[test]
        fn neglex_is_a_local_monomial_order(a in exps(3), b in exps(3), c in exps(3), g in exps(3)) {
            let ab = neglex_cmp(&a, &b);
            prop_assert_eq!(ab, neglex_cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Greater && neglex_cmp(&b, &c) == Ordering::Greater {
                prop_assert_eq!(neglex_cmp(&a, &c), Ordering::Greater);
            }
            prop_assert_eq!(neglex_cmp(&(&a + &g), &(&b + &g)), ab);
            prop_assert!(a.is_zero() || neglex_greater(&Exponent::zero(3), &a).unwrap());
        }

        #[test]
        fn initial_monomial_is_multiplicative(f in small_poly(3), g in small_poly(3)) {
            let fg = &f * &g;
            let expected = &initial_monomial(&f).unwrap() + &initial_monomial(&g).unwrap();
            prop_assert_eq!(initial_monomial(&fg).unwrap(), expected);
        }

        #[test]
        fn suffix_restriction_keeps_initial_monomial(f in small_poly(3), j in 0usize..3) {
            let l = VariableSubset::suffix(3, j).unwrap();
            let fl = restrict(&f, &l);
            let touches = f.terms().any(|(k, _)| k.entries()[..j].iter().all(|&a| a == 0));
            if !fl.is_zero() && touches {
                prop_assert_eq!(initial_monomial(&f).unwrap(), initial_monomial(&fl).unwrap());
            }
        }
    }
}
