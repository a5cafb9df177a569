//! Log canonical thresholds of monomial ideals, the sum
//! `DP(I) = 1/e_1 + e_1/e_2 + ⋯ + e_{n-1}/e_n`, the set `D` on which the
//! function `f(t) = 1/t_1 + t_1/t_2 + ⋯ + t_{n-1}/t_n` is studied, and the
//! diagonality test `lct(I^0) = DP(I)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::multiplicity::{mixed_multiplicities_polyhedral, MixedMultiplicityVector};
use crate::newton::{polyhedra_equal, NewtonPolyhedron};
use crate::rational::{self, Rational};

/// Offset used when probing just inside the boundary of a polyhedron.
pub fn boundary_epsilon() -> Rational {
    rational::ratio(1, 1000)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
    Undetermined,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
            Verdict::Undetermined => "undetermined",
        }
    }
}

/// `µ0 = min{µ > 0 : µ·(1, …, 1) ∈ Γ+}`, the Arnold multiplicity of a
/// monomial ideal.
pub fn arnold_monomial(p: &NewtonPolyhedron) -> Result<Rational> {
    if !p.is_finite_colength() {
        return Err(Error::InfiniteColength("lct needs a finite-colength polyhedron".into()));
    }
    Ok(p.facets()
        .iter()
        .map(|f| {
            let s: u64 = f.normal.iter().sum();
            Rational::new(BigInt::from(f.rhs), BigInt::from(s))
        })
        .max()
        .expect("finite colength polyhedra have a facet"))
}

/// Howald's formula `lct = 1/µ0`.
pub fn lct_monomial(p: &NewtonPolyhedron) -> Result<Rational> {
    Ok(arnold_monomial(p)?.recip())
}

/// `DP` of a list of positive integers.
pub fn dp_values(e: &[u64]) -> Rational {
    let t: Vec<Rational> = e.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect();
    f_unchecked(&t)
}

pub fn dp_sum(e: &MixedMultiplicityVector) -> Rational {
    dp_values(&e.values)
}

fn f_unchecked(t: &[Rational]) -> Rational {
    let mut s = t[0].recip();
    for w in t.windows(2) {
        s += &w[0] / &w[1];
    }
    s
}

/// A point of `(Q_{>0})^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpPoint {
    t: Vec<Rational>,
}

impl DpPoint {
    pub fn new(t: Vec<Rational>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::InvalidArgument("empty point".into()));
        }
        if let Some(bad) = t.iter().find(|q| !q.is_positive()) {
            return Err(Error::InvalidArgument(format!(
                "entries must be positive, got {}",
                rational::render(bad)
            )));
        }
        Ok(DpPoint { t })
    }

    pub fn from_integers(t: &[i64]) -> Result<Self> {
        Self::new(t.iter().map(|&a| rational::int(a)).collect())
    }

    pub fn entries(&self) -> &[Rational] {
        &self.t
    }
}

/// `f(t) = 1/t_1 + t_1/t_2 + ⋯ + t_{n-1}/t_n`.
pub fn dp_function(t: &DpPoint) -> Rational {
    f_unchecked(&t.t)
}

/// `t ∈ D`: `t_1^2 <= t_2` and `t_j^2 <= t_{j-1}·t_{j+1}`.
pub fn in_d(t: &DpPoint) -> bool {
    let mut with_unit = vec![Rational::one()];
    with_unit.extend(t.t.iter().cloned());
    (1..with_unit.len() - 1).all(|j| &with_unit[j] * &with_unit[j] <= &with_unit[j - 1] * &with_unit[j + 1])
}

/// Exact value or bounds `DP(I) <= lct(I) <= lct(I^0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LctResult {
    #[serde(with = "rational::option_as_string")]
    pub exact: Option<Rational>,
    #[serde(with = "rational::as_string")]
    pub lower: Rational,
    #[serde(with = "rational::as_string")]
    pub upper: Rational,
}

impl LctResult {
    pub fn arnold(&self) -> Option<Rational> {
        self.exact.as_ref().map(Rational::recip)
    }

    pub fn is_consistent(&self) -> bool {
        self.lower <= self.upper
            && self
                .exact
                .as_ref()
                .map_or(true, |x| &self.lower <= x && x <= &self.upper)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalDecision {
    pub diagonal: bool,
    pub witness: Option<Vec<u32>>,
}

/// Decides whether a monomial ideal is diagonal, by `lct(I^0) = DP(I)` and
/// independently by the shape of `Γ+(I)`. Disagreement is an internal error.
pub fn is_diagonal(ideal: &MonomialIdeal) -> Result<DiagonalDecision> {
    let p = NewtonPolyhedron::of_monomial(ideal)?;
    let e = mixed_multiplicities_polyhedral(ideal)?;
    is_diagonal_with(&p, &e)
}

pub(crate) fn is_diagonal_with(p: &NewtonPolyhedron, e: &MixedMultiplicityVector) -> Result<DiagonalDecision> {
    let closure = NewtonPolyhedron::of_monomial(&p.term_ideal()?)?;
    let numeric = lct_monomial(&closure)? == dp_sum(e);
    let witness = p.diagonal_witness();
    if numeric != witness.is_some() {
        return Err(Error::Internal(format!(
            "diagonality tests disagree: lct(I^0) = DP(I) is {numeric}, witness is {witness:?}"
        )));
    }
    if let Some(w) = &witness {
        let mut sorted = w.clone();
        sorted.sort_unstable();
        let ratios: Vec<u64> = e.with_unit().windows(2).map(|x| x[1] / x[0]).collect();
        let exact = e.with_unit().windows(2).all(|x| x[1] % x[0] == 0);
        if !exact || sorted.iter().map(|&a| a as u64).ne(ratios) {
            return Err(Error::Internal(format!(
                "witness {w:?} does not match the ratios of {:?}",
                e.values
            )));
        }
    }
    Ok(DiagonalDecision {
        diagonal: numeric,
        witness,
    })
}

/// Comparison of `DP` along an inclusion `I1 ⊆ I2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesComparison {
    #[serde(with = "rational::as_string")]
    pub dp1: Rational,
    #[serde(with = "rational::as_string")]
    pub dp2: Rational,
    pub e1: Vec<u64>,
    pub e2: Vec<u64>,
    pub dp_equal: bool,
    pub polyhedra_equal: bool,
    /// `DP(I1) <= DP(I2)`.
    pub monotone: Verdict,
    /// `DP(I1) = DP(I2)` exactly when the closures agree.
    pub equality_case: Verdict,
}

pub fn rees_compare(i1: &MonomialIdeal, i2: &MonomialIdeal) -> Result<ReesComparison> {
    if i1.nvars() != i2.nvars() {
        return Err(Error::DimensionMismatch {
            expected: i1.nvars(),
            found: i2.nvars(),
        });
    }
    if !i2.contains_ideal(i1) {
        return Err(Error::ContainmentFails(
            "some generator of the first ideal is not divisible by a generator of the second".into(),
        ));
    }
    let e1 = mixed_multiplicities_polyhedral(i1)?;
    let e2 = mixed_multiplicities_polyhedral(i2)?;
    let (dp1, dp2) = (dp_sum(&e1), dp_sum(&e2));
    let same = polyhedra_equal(&NewtonPolyhedron::of_monomial(i1)?, &NewtonPolyhedron::of_monomial(i2)?)?;
    let dp_equal = dp1 == dp2;
    Ok(ReesComparison {
        monotone: Verdict::from_bool(dp1 <= dp2),
        equality_case: Verdict::from_bool(dp_equal == same),
        dp1,
        dp2,
        e1: e1.values,
        e2: e2.values,
        dp_equal,
        polyhedra_equal: same,
    })
}

/// `µ0·𝟙 ∈ Γ+` and `(µ0 - ε)·𝟙 ∉ Γ+`.
pub fn howald_boundary_check(p: &NewtonPolyhedron) -> Result<bool> {
    let mu = arnold_monomial(p)?;
    let n = p.nvars();
    let on = p.member(&vec![mu.clone(); n])?;
    let inside = &mu - boundary_epsilon();
    let off = if inside.is_negative() || inside.is_zero() {
        false
    } else {
        p.member(&vec![inside; n])?
    };
    Ok(on && !off)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Exponent;
    use crate::rational::{int, ratio};

    fn mono(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| Exponent::new(g.to_vec()))).unwrap()
    }

    fn poly(m: &MonomialIdeal) -> NewtonPolyhedron {
        NewtonPolyhedron::of_monomial(m).unwrap()
    }

    #[test]
    fn howald() {
        assert_eq!(lct_monomial(&poly(&mono(2, &[&[2, 0], &[0, 4]]))).unwrap(), ratio(3, 4));
        for n in 1..=3 {
            for k in 1..=4 {
                let p = poly(&MonomialIdeal::maximal_power(n, k));
                assert_eq!(lct_monomial(&p).unwrap(), ratio(n as i64, k as i64));
                assert!(howald_boundary_check(&p).unwrap());
            }
        }
        assert_eq!(lct_monomial(&poly(&mono(2, &[&[2, 0], &[1, 1], &[0, 3]]))).unwrap(), int(1));
        assert!(lct_monomial(&poly(&mono(2, &[&[1, 0]]))).is_err());
    }

    #[test]
    fn dp_sums() {
        assert_eq!(dp_values(&[2, 8]), ratio(3, 4));
        assert_eq!(dp_values(&[3, 9, 27]), int(1));
        assert_eq!(dp_values(&[2, 5]), ratio(9, 10));
    }

    #[test]
    fn set_d() {
        let t = DpPoint::from_integers(&[2, 8]).unwrap();
        assert_eq!(dp_function(&t), ratio(3, 4));
        assert!(in_d(&t));
        assert!(!in_d(&DpPoint::from_integers(&[3, 4]).unwrap()));
        assert_eq!(dp_function(&DpPoint::from_integers(&[5, 25, 125, 625]).unwrap()), ratio(4, 5));
        assert!(DpPoint::from_integers(&[1, 0]).is_err());
    }

    #[test]
    fn diagonality() {
        let d = is_diagonal(&mono(2, &[&[2, 0], &[0, 4]])).unwrap();
        assert_eq!(d, DiagonalDecision { diagonal: true, witness: Some(vec![2, 4]) });
        let s = is_diagonal(&mono(2, &[&[2, 0], &[1, 1], &[0, 3]])).unwrap();
        assert_eq!(s, DiagonalDecision { diagonal: false, witness: None });
        let m = is_diagonal(&mono(2, &[&[0, 2], &[1, 1], &[2, 0]])).unwrap();
        assert_eq!(m.witness, Some(vec![2, 2]));
        let w = is_diagonal(&MonomialIdeal::diagonal(&[6, 2, 3])).unwrap();
        assert_eq!(w.witness, Some(vec![6, 2, 3]));
    }

    #[test]
    fn rees() {
        let i1 = mono(2, &[&[2, 0], &[0, 4]]);
        let i2 = mono(2, &[&[2, 0], &[1, 2], &[0, 4]]);
        let r = rees_compare(&i1, &i2).unwrap();
        assert!(r.dp_equal && r.polyhedra_equal);
        let r = rees_compare(&MonomialIdeal::maximal_power(2, 2), &MonomialIdeal::maximal_power(2, 1)).unwrap();
        assert_eq!((r.dp1.clone(), r.dp2.clone()), (int(1), int(2)));
        assert_eq!(r.monotone, Verdict::Pass);
        assert!(!r.polyhedra_equal);
        let r = rees_compare(&mono(2, &[&[2, 0], &[1, 1], &[0, 3]]), &mono(2, &[&[1, 0], &[0, 3]])).unwrap();
        assert_eq!((r.dp1, r.dp2), (ratio(9, 10), ratio(4, 3)));
        assert!(matches!(rees_compare(&i2, &i1), Err(Error::ContainmentFails(_))));
    }

    #[test]
    fn bounds_are_ordered() {
        let r = LctResult { exact: Some(ratio(3, 4)), lower: ratio(3, 4), upper: int(1) };
        assert!(r.is_consistent());
        assert_eq!(r.arnold(), Some(ratio(4, 3)));
    }
}
