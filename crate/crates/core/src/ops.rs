//! Ideal algebra on presentations: powers, linear coordinate changes,
//! Jacobian ideals and random linear combinations of generators.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ideal::IdealPresentation;
use crate::monomial::MonomialIdeal;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// The ideal generated by all `t`-fold products of generators.
pub fn ideal_power(ideal: &IdealPresentation, t: u32, cap: u32) -> Result<IdealPresentation> {
    if t == 0 || t > cap {
        return Err(Error::CapExceeded {
            what: "ideal power",
            value: t as u64,
            cap: cap as u64,
        });
    }
    if ideal.is_monomial() {
        let m = MonomialIdeal::from_presentation(ideal)?.power(t);
        let gens = m.generators().iter().cloned().map(Polynomial::monomial).collect();
        return ideal.with_generators(gens);
    }
    // Multisets of generator indices of size t, in nondecreasing order.
    let r = ideal.generators().len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; t as usize];
    loop {
        let mut p = Polynomial::one(ideal.nvars());
        for &i in &idx {
            p = &p * &ideal.generators()[i];
        }
        out.push(p);
        let Some(pos) = (0..idx.len()).rev().find(|&k| idx[k] + 1 < r) else {
            break;
        };
        let next = idx[pos] + 1;
        for slot in &mut idx[pos..] {
            *slot = next;
        }
    }
    ideal.with_generators(out)
}

/// An invertible linear change of coordinates `x ↦ M·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    matrix: Vec<Vec<Rational>>,
}

impl LinearChange {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument("linear change must be a square matrix".into()));
        }
        if determinant(&matrix).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(LinearChange { matrix })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&a| Rational::from_integer(BigInt::from(a))).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        LinearChange { matrix }
    }

    /// Random integer entries in `[-bound, bound]`, redrawn until invertible.
    pub fn random(n: usize, bound: i64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
                .collect();
            if let Ok(c) = Self::from_integers(&rows) {
                return c;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    /// The images of the coordinate functions, `x_i ↦ Σ_j M_ij x_j`.
    pub fn images(&self) -> Vec<Polynomial> {
        let n = self.dim();
        self.matrix
            .iter()
            .map(|row| {
                let mut p = Polynomial::zero(n);
                for (j, a) in row.iter().enumerate() {
                    p = &p + &Polynomial::var(n, j).scale(a);
                }
                p
            })
            .collect()
    }
}

/// Exact determinant by Gaussian elimination over `Q`.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// `φ*(I)`: generators composed with the linear substitution.
pub fn apply_linear_change(ideal: &IdealPresentation, change: &LinearChange) -> Result<IdealPresentation> {
    if change.dim() != ideal.nvars() {
        return Err(Error::DimensionMismatch {
            expected: ideal.nvars(),
            found: change.dim(),
        });
    }
    let images = change.images();
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.compose(&images))
        .collect::<Result<Vec<_>>>()?;
    ideal.with_generators(gens)
}

/// `J(f)`: the nonzero partial derivatives of `f`.
pub fn jacobian_ideal(f: &Polynomial) -> Result<IdealPresentation> {
    let partials: Vec<Polynomial> = (0..f.nvars())
        .map(|i| f.derivative(i))
        .filter(|p| !p.is_zero())
        .collect();
    if partials.is_empty() {
        return Err(Error::InvalidArgument("all partial derivatives vanish".into()));
    }
    IdealPresentation::with_default_vars(partials)
}

/// Generators `Σ_j c_ij g_j` for an explicit coefficient matrix.
pub fn combinations_with(ideal: &IdealPresentation, coefficients: &[Vec<Rational>]) -> Result<IdealPresentation> {
    let r = ideal.generators().len();
    let mut out = Vec::new();
    for row in coefficients {
        if row.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: row.len(),
            });
        }
        let mut p = Polynomial::zero(ideal.nvars());
        for (c, g) in row.iter().zip(ideal.generators()) {
            if !c.is_zero() {
                p = &p + &g.scale(c);
            }
        }
        if p.is_zero() {
            return Err(Error::InvalidArgument("linear combination vanished".into()));
        }
        out.push(p);
    }
    ideal.with_generators(out)
}

/// `count` random combinations of the generators with integer coefficients
/// uniform in `[-bound, bound]`, deterministic per seed.
pub fn generic_combinations(ideal: &IdealPresentation, count: usize, seed: u64, bound: i64) -> Result<IdealPresentation> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = ideal.generators().len();
    loop {
        let rows: Vec<Vec<Rational>> = (0..count)
            .map(|_| {
                (0..r)
                    .map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-bound..=bound))))
                    .collect()
            })
            .collect();
        match combinations_with(ideal, &rows) {
            Err(Error::InvalidArgument(_)) => continue,
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::parse_ideal;
    use crate::mora::colength;
    use crate::rational::int;

    fn ideal(gens: &str) -> IdealPresentation {
        parse_ideal(&format!("vars: x, y\ngens: {gens}")).unwrap()
    }

    #[test]
    fn powers() {
        assert_eq!(ideal_power(&ideal("x; y"), 2, 16).unwrap(), ideal("y^2; x*y; x^2"));
        assert_eq!(
            ideal_power(&ideal("x^2; y^4"), 2, 16).unwrap(),
            ideal("y^8; x^2*y^4; x^4")
        );
        let p = ideal_power(&ideal("x + y^2; y^3"), 3, 16).unwrap();
        assert_eq!(p.generators().len(), 4);
        assert!(ideal_power(&ideal("x"), 20, 16).is_err());
    }

    #[test]
    fn shear_straightens_tilted_pair() {
        let i = ideal("(x+y)^2 + y^4; (x+y)*y^2");
        let phi = LinearChange::from_integers(&[vec![1, -1], vec![0, 1]]).unwrap();
        assert_eq!(apply_linear_change(&i, &phi).unwrap(), ideal("x^2 + y^4; x*y^2"));
        assert_eq!(apply_linear_change(&i, &LinearChange::identity(2)).unwrap(), i);
        assert_eq!(
            LinearChange::from_integers(&[vec![1, 2], vec![2, 4]]),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn random_change_preserves_colength() {
        let i = ideal("x^2; x*y; y^3");
        for seed in 0..3 {
            let phi = LinearChange::random(2, 5, seed);
            let j = apply_linear_change(&i, &phi).unwrap();
            assert_eq!(colength(&j, 64).unwrap(), 4);
        }
    }

    #[test]
    fn jacobians() {
        let f = parse_ideal("vars: x, y\ngens: x^3 + y^3").unwrap().generators()[0].clone();
        assert_eq!(jacobian_ideal(&f).unwrap(), ideal("3*x^2; 3*y^2"));
        let g = parse_ideal("vars: x, y\ngens: x^2*y").unwrap().generators()[0].clone();
        assert_eq!(jacobian_ideal(&g).unwrap(), ideal("2*x*y; x^2"));
        let c = Polynomial::constant(2, int(5));
        assert!(jacobian_ideal(&c).is_err());
    }

    #[test]
    fn combinations() {
        let i = ideal("x + y^2; y^3");
        let id = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        assert_eq!(combinations_with(&i, &id).unwrap(), i);
        for seed in [1, 2] {
            let g = generic_combinations(&i, 2, seed, 101).unwrap();
            assert_eq!(colength(&g, 64).unwrap(), 3);
        }
        let d = ideal("x^2; y^4");
        assert_eq!(colength(&generic_combinations(&d, 2, 7, 101).unwrap(), 64).unwrap(), 8);
        assert_eq!(
            generic_combinations(&i, 3, 9, 101).unwrap(),
            generic_combinations(&i, 3, 9, 101).unwrap()
        );
    }

    #[test]
    fn determinants() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        assert_eq!(determinant(&m), int(5));
    }
}
