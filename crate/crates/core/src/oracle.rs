//! Brute-force cross-checks that share as little code as possible with the
//! main routines: a planar shoelace covolume built from its own hull, lattice
//! point counts, a plain staircase count and a colength by linear algebra on
//! truncated quotients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::ideal::IdealPresentation;
use crate::monomial::MonomialIdeal;
use crate::mora::monomials_of_degree;
use crate::newton::NewtonPolyhedron;
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Area of `R^2_{>=0} \ conv(points + R^2_{>=0})` by the shoelace formula
/// over the lower-left hull of the points.
pub fn shoelace_covolume(points: &[Exponent]) -> Result<Rational> {
    if points.iter().any(|p| p.dim() != 2) {
        return Err(Error::InvalidArgument("the shoelace oracle is planar".into()));
    }
    let mut pts: Vec<(i64, i64)> = points.iter().map(|p| (p.entries()[0] as i64, p.entries()[1] as i64)).collect();
    pts.sort_unstable();
    pts.dedup();
    let b = pts.iter().filter(|p| p.0 == 0).map(|p| p.1).min();
    let a = pts.iter().filter(|p| p.1 == 0).map(|p| p.0).min();
    let (Some(a), Some(b)) = (a, b) else {
        return Err(Error::InfiniteColength("a coordinate axis is missed".into()));
    };
    // The undominated points run from (0, b) to (a, 0) with x increasing
    // and y decreasing; their lower hull turns counterclockwise.
    let staircase: Vec<(i64, i64)> = pts
        .iter()
        .copied()
        .filter(|&p| !pts.iter().any(|&q| q != p && q.0 <= p.0 && q.1 <= p.1))
        .collect();
    debug_assert_eq!((staircase.first(), staircase.last()), (Some(&(0, b)), Some(&(a, 0))));
    let mut chain: Vec<(i64, i64)> = Vec::new();
    for &p in &staircase {
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0 {
            chain.pop();
        }
        chain.push(p);
    }
    // Polygon 0 → (a, 0) → chain backwards → (0, b), traversed counterclockwise.
    let mut poly = vec![(0i64, 0i64)];
    poly.extend(chain.iter().rev().copied());
    let mut twice = 0i64;
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        twice += p.0 * q.1 - q.0 * p.1;
    }
    Ok(rational::ratio(twice.abs(), 2))
}

/// `#{k ∈ Z^n_{>=0} : k/s ∉ Γ+} / s^n`.
pub fn lattice_covolume(p: &NewtonPolyhedron, s: u32) -> Result<Rational> {
    if !p.is_finite_colength() {
        return Err(Error::InfiniteColength("unbounded complement".into()));
    }
    let n = p.nvars();
    let s = s as i64;
    let facets: Vec<(Vec<i64>, i64)> = p
        .facets()
        .iter()
        .map(|f| (f.normal.iter().map(|&v| v as i64).collect(), f.rhs as i64 * s))
        .collect();
    let box_bounds: Vec<i64> = p
        .axis_intercepts()?
        .iter()
        .map(|a| (a * Rational::from_integer(BigInt::from(s))).ceil().to_integer().try_into().unwrap_or(i64::MAX))
        .collect();
    // For fixed k_1..k_{n-1}, the missing points along the last axis are
    // k_n < max_F ceil((c_F s - ⟨v', k'⟩) / v_n).
    let mut count: u64 = 0;
    let mut cur = vec![0i64; n - 1];
    loop {
        let mut need = 0i64;
        for (v, c) in &facets {
            let partial: i64 = v[..n - 1].iter().zip(&cur).map(|(a, b)| a * b).sum();
            let rest = c - partial;
            if rest > 0 {
                need = need.max((rest + v[n - 1] - 1) / v[n - 1]);
            }
        }
        count += need as u64;
        // Odometer over the box of the first n-1 coordinates.
        let mut i = 0;
        loop {
            if i == n - 1 {
                return Ok(Rational::new(BigInt::from(count), BigInt::from(s).pow(n as u32)));
            }
            cur[i] += 1;
            if cur[i] <= box_bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Counts exponents in the bounding box that no generator divides.
pub fn staircase_count(ideal: &MonomialIdeal) -> Result<u64> {
    let bounds: Vec<u32> = ideal
        .pure_powers()
        .into_iter()
        .map(|a| a.ok_or_else(|| Error::InfiniteColength("a coordinate axis is missed".into())))
        .collect::<Result<_>>()?;
    let n = ideal.nvars();
    let total: u64 = bounds.iter().map(|&b| b as u64).product();
    let mut count = 0;
    for mut idx in 0..total {
        let mut e = vec![0u32; n];
        for (slot, &b) in e.iter_mut().zip(&bounds) {
            *slot = (idx % b as u64) as u32;
            idx /= b as u64;
        }
        let e = Exponent::new(e);
        if !ideal.generators().iter().any(|g| g.divides(&e)) {
            count += 1;
        }
    }
    Ok(count)
}

/// Incremental row echelon form over `Q`, rows keyed by pivot column.
struct Echelon {
    rows: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl Echelon {
    fn insert(&mut self, mut row: BTreeMap<usize, Rational>) {
        while let Some((&col, lead)) = row.iter().next() {
            let Some(pivot) = self.rows.get(&col) else {
                let lead = lead.clone();
                for v in row.values_mut() {
                    *v /= &lead;
                }
                self.rows.insert(col, row);
                return;
            };
            let factor = lead.clone();
            for (c, v) in pivot {
                let entry = row.entry(*c).or_insert_with(Rational::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    row.remove(c);
                }
            }
        }
    }
}

/// `dim C[x] / (I + m^N)`.
pub fn truncated_quotient_dim(ideal: &IdealPresentation, big_n: u32) -> u64 {
    let n = ideal.nvars();
    let columns: Vec<Exponent> = (0..big_n).flat_map(|d| monomials_of_degree(n, d)).collect();
    let index: BTreeMap<&Exponent, usize> = columns.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut ech = Echelon { rows: BTreeMap::new() };
    for g in ideal.generators() {
        let low = g.order().unwrap_or(0);
        if low >= big_n {
            continue;
        }
        for d in 0..big_n - low {
            for beta in monomials_of_degree(n, d) {
                let shifted: Polynomial = g.mul_monomial(&beta).truncate_below(big_n);
                let row: BTreeMap<usize, Rational> = shifted.terms().map(|(e, c)| (index[e], c.clone())).collect();
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }
    (columns.len() - ech.rows.len()) as u64
}

/// `dim O_n / I` from `c_N = dim C[x]/(I + m^N)`: once `c_N = c_{N+1}`,
/// Nakayama gives `m^N ⊆ I` and the colength is `c_N`.
pub fn linear_algebra_colength(ideal: &IdealPresentation, max_n: u32) -> Result<u64> {
    let mut prev = truncated_quotient_dim(ideal, 1);
    for big_n in 1..max_n {
        let next = truncated_quotient_dim(ideal, big_n + 1);
        if next == prev {
            return Ok(prev);
        }
        prev = next;
    }
    Err(Error::CapExceeded {
        what: "truncation order",
        value: max_n as u64,
        cap: max_n as u64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeEstimate {
    pub scale: u32,
    #[serde(with = "rational::as_string")]
    pub estimate: Rational,
    #[serde(with = "rational::as_string")]
    pub error: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub n: usize,
    #[serde(with = "rational::as_string")]
    pub covolume: Rational,
    #[serde(with = "rational::option_as_string")]
    pub shoelace: Option<Rational>,
    pub lattice: Vec<LatticeEstimate>,
    pub staircase_colength: u64,
    pub mora_colength: u64,
    pub agree: bool,
}

/// Runs every oracle that applies to a monomial ideal.
pub fn oracle_report(ideal: &MonomialIdeal, scales: &[u32], degree_cap: u32) -> Result<OracleReport> {
    let p = NewtonPolyhedron::of_monomial(ideal)?;
    let covolume = p.covolume()?;
    let shoelace = if ideal.nvars() == 2 {
        Some(shoelace_covolume(ideal.generators())?)
    } else {
        None
    };
    let lattice = scales
        .iter()
        .map(|&s| {
            let estimate = lattice_covolume(&p, s)?;
            Ok(LatticeEstimate {
                scale: s,
                error: (&estimate - &covolume).abs(),
                estimate,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let staircase_colength = staircase_count(ideal)?;
    let mora_colength = crate::mora::standard_basis(&ideal.to_presentation(), degree_cap)?
        .initial_ideal()
        .colength()?;
    let agree = shoelace.as_ref().map_or(true, |s| *s == covolume) && staircase_colength == mora_colength;
    Ok(OracleReport {
        n: ideal.nvars(),
        covolume,
        shoelace,
        lattice,
        staircase_colength,
        mora_colength,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::parse_ideal;
    use crate::rational::{int, ratio};

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    #[test]
    fn shoelace() {
        assert_eq!(shoelace_covolume(&[e(&[2, 0]), e(&[0, 4])]).unwrap(), int(4));
        assert_eq!(shoelace_covolume(&[e(&[2, 0]), e(&[1, 1]), e(&[0, 3])]).unwrap(), ratio(5, 2));
        assert_eq!(shoelace_covolume(&[e(&[2, 0]), e(&[1, 2]), e(&[0, 4])]).unwrap(), int(4));
        assert_eq!(shoelace_covolume(&[e(&[3, 0]), e(&[2, 1]), e(&[1, 4]), e(&[0, 5])]).unwrap(), ratio(13, 2));
    }

    #[test]
    fn lattice_counts_converge() {
        let p = NewtonPolyhedron::new([e(&[2, 0]), e(&[0, 4])]).unwrap();
        let errs: Vec<Rational> = [8, 16, 32].iter().map(|&s| (lattice_covolume(&p, s).unwrap() - int(4)).abs()).collect();
        assert!(errs[0] >= errs[1] && errs[1] >= errs[2]);
    }

    #[test]
    fn staircase() {
        assert_eq!(staircase_count(&MonomialIdeal::maximal_power(2, 2)).unwrap(), 3);
        assert_eq!(staircase_count(&MonomialIdeal::diagonal(&[2, 3, 4])).unwrap(), 24);
    }

    #[test]
    fn linear_algebra() {
        let i = parse_ideal("vars: x, y\ngens: x + y^2; y^3").unwrap();
        assert_eq!(linear_algebra_colength(&i, 40).unwrap(), 3);
        let j = parse_ideal("vars: x, y\ngens: x^2 + y^4; x*y^2").unwrap();
        assert_eq!(linear_algebra_colength(&j, 40).unwrap(), 8);
    }

    #[test]
    fn report() {
        let r = oracle_report(&MonomialIdeal::diagonal(&[2, 4]), &[16], 64).unwrap();
        assert!(r.agree);
        assert_eq!(r.shoelace, Some(int(4)));
    }
}
