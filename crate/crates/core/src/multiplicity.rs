//! Mixed multiplicities `e_j(I) = e(I, …, I, m, …, m)` (`I` repeated `j`
//! times), computed along two independent routes.
//!
//! * Polyhedral (monomial ideals): `E(a, b) = n!·covol(Γ+(I^a m^b))` is the
//!   polynomial `Σ_j C(n, j) e_j a^j b^{n-j}` with `e_0 = 1`. Sampling it at
//!   `a = 1, b = 0, …, n-1` determines `e_1, …, e_n`.
//! * Generic sections (any ideal): `e_j` is the colength of `j` generic
//!   combinations of the generators restricted to a generic `j`-plane.
//!   Random choices can only overshoot, so the minimum over trials is taken.
//!   Section colengths are computed over a large prime field, which can also
//!   only overshoot.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::ideal::IdealPresentation;
use crate::monomial::MonomialIdeal;
use crate::modp;
use crate::mora;
use crate::newton::NewtonPolyhedron;
use crate::ops::{generic_combinations, jacobian_ideal};
use crate::poly::Polynomial;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Polyhedral,
    GenericSection,
}

/// One random draw of the generic-section route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trial {
    pub seed: u64,
    /// `None` when the draw was not generic enough to give finite colength.
    pub values: Vec<Option<u64>>,
}

/// `(e_1, …, e_n)` with provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedMultiplicityVector {
    pub values: Vec<u64>,
    pub method: Method,
    pub trials: Vec<Trial>,
    /// False when two successful trials disagree on some `e_j`.
    pub stable: bool,
}

impl MixedMultiplicityVector {
    pub fn exact(values: Vec<u64>) -> Self {
        MixedMultiplicityVector {
            values,
            method: Method::Polyhedral,
            trials: Vec::new(),
            stable: true,
        }
    }

    pub fn nvars(&self) -> usize {
        self.values.len()
    }

    /// `e_n`, the Samuel multiplicity.
    pub fn samuel(&self) -> u64 {
        *self.values.last().expect("nonempty")
    }

    /// `e_1`, the order.
    pub fn first(&self) -> u64 {
        self.values[0]
    }

    /// `(e_0, e_1, …, e_n)` with `e_0 = 1`.
    pub fn with_unit(&self) -> Vec<u64> {
        std::iter::once(1).chain(self.values.iter().copied()).collect()
    }

    /// `e_j^2 <= e_{j-1}·e_{j+1}` for `j = 1..n-1`, with `e_0 = 1`.
    pub fn satisfies_chain(&self) -> bool {
        let e = self.with_unit();
        (1..e.len().saturating_sub(1)).all(|j| (e[j] as u128).pow(2) <= e[j - 1] as u128 * e[j + 1] as u128)
    }
}

/// Milnor numbers of generic plane sections, `µ^(j) = e_j(J(f))`.
pub type MilnorVector = MixedMultiplicityVector;

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

/// `E(a, b) = n!·covol(Γ+(I^a m^b))`.
pub fn bhattacharya_value(p: &NewtonPolyhedron, a: u32, b: u32) -> Result<Rational> {
    let n = p.nvars();
    let mut q = p.dilate(a)?;
    if b > 0 {
        let m = NewtonPolyhedron::of_monomial(&MonomialIdeal::maximal_power(n, b))?;
        q = q.minkowski_sum(&m)?;
    }
    Ok(q.covolume()? * Rational::from_integer(factorial(n)))
}

fn bhattacharya_poly(e: &[Rational], a: i64, b: i64) -> Rational {
    let n = e.len() - 1;
    (0..=n)
        .map(|j| {
            let c = binomial(BigInt::from(n), BigInt::from(j)) * BigInt::from(a).pow(j as u32) * BigInt::from(b).pow((n - j) as u32);
            &e[j] * Rational::from_integer(c)
        })
        .sum()
}

/// Solves `A x = y` over `Q` for square invertible `A`.
fn solve(mut a: Vec<Vec<Rational>>, mut y: Vec<Rational>) -> Result<Vec<Rational>> {
    let n = y.len();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Internal("singular interpolation system".into()))?;
        a.swap(col, piv);
        y.swap(col, piv);
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let s = &f * &a[col][c];
                a[r][c] -= s;
            }
            let s = &f * &y[col];
            y[r] -= s;
        }
    }
    Ok((0..n).map(|i| &y[i] / &a[i][i]).collect())
}

/// Mixed multiplicities of a monomial ideal by Bhattacharya interpolation.
///
/// The fitted polynomial is checked against `E(2, 1)` and `E(1, n)`, which
/// were not used in the fit.
pub fn mixed_multiplicities_polyhedral(ideal: &MonomialIdeal) -> Result<MixedMultiplicityVector> {
    let p = NewtonPolyhedron::of_monomial(ideal)?;
    let n = p.nvars();
    let samples: Vec<Rational> = (0..n as u32).map(|b| bhattacharya_value(&p, 1, b)).collect::<Result<_>>()?;
    // E(1, 0) = e_n; the remaining samples give e_1..e_{n-1}.
    let e_n = samples[0].clone();
    let mut e: Vec<Rational> = vec![Rational::one()];
    if n > 1 {
        let rows: Vec<Vec<Rational>> = (1..n)
            .map(|b| {
                (1..n)
                    .map(|j| {
                        let c = binomial(BigInt::from(n), BigInt::from(j)) * BigInt::from(b).pow((n - j) as u32);
                        Rational::from_integer(c)
                    })
                    .collect()
            })
            .collect();
        let rhs: Vec<Rational> = (1..n)
            .map(|b| &samples[b] - &e_n - Rational::from_integer(BigInt::from(b).pow(n as u32)))
            .collect();
        e.extend(solve(rows, rhs)?);
    }
    e.push(e_n);
    for (a, b) in [(2u32, 1u32), (1, n as u32)] {
        let measured = bhattacharya_value(&p, a, b)?;
        let fitted = bhattacharya_poly(&e, a as i64, b as i64);
        if measured != fitted {
            return Err(Error::Internal(format!(
                "interpolation mismatch at E({a},{b}): measured {measured}, fitted {fitted}"
            )));
        }
    }
    let values = e[1..]
        .iter()
        .map(|q| {
            if !q.is_integer() || !q.is_positive() {
                return Err(Error::Internal(format!("non-integral mixed multiplicity {q}")));
            }
            q.to_integer()
                .to_u64()
                .ok_or_else(|| Error::Internal("mixed multiplicity overflows u64".into()))
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(MixedMultiplicityVector::exact(values))
}

/// The restriction `x = M·y` of the generators to a `j`-plane, with `M`
/// random for `j < n` and the identity for `j = n`.
fn slice(ideal: &IdealPresentation, j: usize, rng: &mut ChaCha8Rng, bound: i64) -> Option<IdealPresentation> {
    let n = ideal.nvars();
    if j == n {
        return Some(ideal.clone());
    }
    let images: Vec<Polynomial> = (0..n)
        .map(|_| {
            let mut p = Polynomial::zero(j);
            for k in 0..j {
                let c = rng.gen_range(-bound..=bound);
                p = &p + &Polynomial::var(j, k).scale(&Rational::from_integer(BigInt::from(c)));
            }
            p
        })
        .collect();
    let gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| g.compose(&images).expect("dimensions match"))
        .filter(|g| !g.is_zero())
        .collect();
    if gens.is_empty() {
        return None;
    }
    IdealPresentation::with_default_vars(gens).ok()
}

fn trial_values(ideal: &IdealPresentation, seed: u64, cfg: &Config) -> Result<Vec<Option<u64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ideal.nvars();
    (1..=n)
        .map(|j| {
            let Some(sliced) = slice(ideal, j, &mut rng, cfg.coefficient_bound) else {
                return Ok(None);
            };
            let combos = generic_combinations(&sliced, j, rng.gen(), cfg.coefficient_bound)?;
            match modp::colength(&combos, cfg.degree_cap) {
                Ok(0) | Err(Error::InfiniteColength(_)) => Ok(None),
                Ok(c) => Ok(Some(c)),
                Err(e) => Err(e),
            }
        })
        .collect()
}

/// Seeds of the individual trials, derived from the user seed.
pub fn trial_seeds(seed: u64, trials: u32) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| rng.gen()).collect()
}

/// Mixed multiplicities by generic sections and colengths.
pub fn mixed_multiplicities_generic(ideal: &IdealPresentation, seed: u64, cfg: &Config) -> Result<MixedMultiplicityVector> {
    cfg.validate()?;
    let seeds = trial_seeds(seed, cfg.trials);
    let results: Vec<Result<Vec<Option<u64>>>> = seeds.par_iter().map(|&s| trial_values(ideal, s, cfg)).collect();
    let mut trials = Vec::with_capacity(seeds.len());
    for (s, r) in seeds.iter().zip(results) {
        trials.push(Trial { seed: *s, values: r? });
    }
    let n = ideal.nvars();
    let mut values = Vec::with_capacity(n);
    let mut stable = true;
    for j in 0..n {
        let seen: Vec<u64> = trials.iter().filter_map(|t| t.values[j]).collect();
        let Some(&min) = seen.iter().min() else {
            return Err(Error::InfiniteColength(format!(
                "every generic section in dimension {} has infinite colength",
                j + 1
            )));
        };
        stable &= seen.iter().all(|&v| v == min);
        values.push(min);
    }
    Ok(MixedMultiplicityVector {
        values,
        method: Method::GenericSection,
        trials,
        stable,
    })
}

/// `ord(I) = max{r : I ⊆ m^r}`, the least order of a generator.
pub fn ord(ideal: &IdealPresentation) -> u32 {
    ideal
        .generators()
        .iter()
        .filter_map(Polynomial::order)
        .min()
        .expect("generators are nonzero")
}

/// `µ*(f)`: mixed multiplicities of the Jacobian ideal.
pub fn milnor_vector(f: &Polynomial, seed: u64, cfg: &Config) -> Result<MilnorVector> {
    let j = jacobian_ideal(f)?;
    let nonisolated = |e: Error| match e {
        Error::InfiniteColength(_) => Error::InfiniteColength("the singularity is not isolated".into()),
        other => other,
    };
    if j.is_monomial() {
        let m = MonomialIdeal::from_presentation(&j)?;
        if !m.is_finite_colength() {
            return Err(nonisolated(Error::InfiniteColength(String::new())));
        }
        return mixed_multiplicities_polyhedral(&m);
    }
    mora::colength(&j, cfg.degree_cap).map_err(nonisolated)?;
    mixed_multiplicities_generic(&j, seed, cfg).map_err(nonisolated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Exponent;
    use crate::ideal::parse_ideal;

    fn mono(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|g| Exponent::new(g.to_vec()))).unwrap()
    }

    fn ideal(gens: &str) -> IdealPresentation {
        parse_ideal(&format!("vars: x, y\ngens: {gens}")).unwrap()
    }

    #[test]
    fn polyhedral_examples() {
        let v = |m: &MonomialIdeal| mixed_multiplicities_polyhedral(m).unwrap().values;
        assert_eq!(v(&mono(2, &[&[2, 0], &[0, 4]])), vec![2, 8]);
        assert_eq!(v(&mono(2, &[&[0, 2], &[1, 1], &[2, 0]])), vec![2, 4]);
        assert_eq!(v(&mono(2, &[&[2, 0], &[1, 1], &[0, 3]])), vec![2, 5]);
        assert_eq!(v(&mono(1, &[&[5]])), vec![5]);
        assert_eq!(v(&MonomialIdeal::diagonal(&[4, 2, 3])), vec![2, 6, 24]);
        assert_eq!(v(&MonomialIdeal::maximal_power(3, 2)), vec![2, 4, 8]);
    }

    #[test]
    fn bhattacharya_cross_check() {
        let p = NewtonPolyhedron::of_monomial(&mono(2, &[&[2, 0], &[1, 1], &[0, 3]])).unwrap();
        assert_eq!(bhattacharya_value(&p, 1, 1).unwrap(), Rational::from_integer(10.into()));
    }

    #[test]
    fn generic_examples() {
        let cfg = Config::default();
        let g = mixed_multiplicities_generic(&ideal("x + y^2; y^3"), 1, &cfg).unwrap();
        assert_eq!(g.values, vec![1, 3]);
        assert!(g.stable);
        assert_eq!(g.trials.len(), 3);
        let d = mixed_multiplicities_generic(&ideal("x^2; y^4"), 2, &cfg).unwrap();
        assert_eq!(d.values, vec![2, 8]);
        assert_eq!(mixed_multiplicities_generic(&ideal("x; y"), 3, &cfg).unwrap().values, vec![1, 1]);
        assert!(matches!(
            mixed_multiplicities_generic(&ideal("x"), 3, &cfg),
            Err(Error::InfiniteColength(_))
        ));
    }

    #[test]
    fn orders() {
        assert_eq!(ord(&ideal("x + y^2; y^3")), 1);
        assert_eq!(ord(&ideal("x^2; y^4")), 2);
        assert_eq!(ord(&MonomialIdeal::maximal_power(3, 4).to_presentation()), 4);
    }

    #[test]
    fn milnor_vectors() {
        let cfg = Config::default();
        let f = |s: &str| ideal(s).generators()[0].clone();
        assert_eq!(milnor_vector(&f("x^3 + y^3"), 0, &cfg).unwrap().values, vec![2, 4]);
        assert_eq!(milnor_vector(&f("x^2 + y^2"), 0, &cfg).unwrap().values, vec![1, 1]);
        assert_eq!(milnor_vector(&f("x^2 + y^5"), 0, &cfg).unwrap().values, vec![1, 4]);
        assert_eq!(milnor_vector(&f("x^3 + x*y^3"), 0, &cfg).unwrap().values, vec![2, 7]);
        assert!(matches!(
            milnor_vector(&f("x^2"), 0, &cfg),
            Err(Error::InfiniteColength(_))
        ));
    }

    #[test]
    fn chain() {
        assert!(MixedMultiplicityVector::exact(vec![2, 5]).satisfies_chain());
        assert!(!MixedMultiplicityVector::exact(vec![3, 8]).satisfies_chain());
    }
}
