//! Newton polyhedra `Γ+(I)`: the convex hull of the supports of an ideal plus
//! the nonnegative orthant.
//!
//! A polyhedron is stored by its vertices and its facet inequalities
//! `⟨v, x⟩ >= c` with `v` a primitive nonnegative integer vector and `c > 0`.
//! The coordinate half-spaces `x_i >= 0` are implicit. When the ideal has
//! finite colength every stored facet is compact (`v > 0` componentwise),
//! since an axis point `a·e_i` rules out any facet with `v_i = 0` and `c > 0`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::hull::{det, dot, for_each_subset, normal, primitive, rank, triangulate};
use crate::ideal::IdealPresentation;
use crate::monomial::MonomialIdeal;
use crate::rational::Rational;

/// Documented dimension limit of the facet enumeration.
pub const MAX_DIM: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<u64>,
    pub rhs: u64,
}

impl Facet {
    fn value(&self, p: &[i128]) -> i128 {
        self.normal.iter().zip(p).map(|(&v, &x)| v as i128 * x).sum()
    }

    /// `⟨v, q⟩ >= c` for a rational point.
    fn holds_at(&self, q: &[Rational]) -> bool {
        let lhs: Rational = self
            .normal
            .iter()
            .zip(q)
            .map(|(&v, x)| x * Rational::from_integer(BigInt::from(v)))
            .sum();
        lhs >= Rational::from_integer(BigInt::from(self.rhs))
    }

    pub fn is_compact(&self) -> bool {
        self.normal.iter().all(|&v| v > 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NewtonPolyhedron {
    n: usize,
    vertices: Vec<Exponent>,
    facets: Vec<Facet>,
}

impl NewtonPolyhedron {
    /// Builds `conv(points) + R^n_{>=0}` and verifies the result.
    pub fn new(points: impl IntoIterator<Item = Exponent>) -> Result<Self> {
        let pts: Vec<Exponent> = points.into_iter().collect();
        let Some(first) = pts.first() else {
            return Err(Error::InvalidArgument("Newton polyhedron of an empty set".into()));
        };
        let n = first.dim();
        if n == 0 || n > MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "Newton polyhedra are supported for 1 <= n <= {MAX_DIM}, got n = {n}"
            )));
        }
        if let Some(bad) = pts.iter().find(|p| p.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        // Points dominated by another point are never vertices.
        let minimal = MonomialIdeal::new(n, pts.iter().cloned())?.generators().to_vec();
        let facets = enumerate_facets(n, &minimal);
        let vertices = select_vertices(n, &minimal, &facets);
        let poly = NewtonPolyhedron { n, vertices, facets };
        poly.verify(&pts)?;
        Ok(poly)
    }

    /// `Γ+(I)` from the supports of the generators.
    pub fn of_ideal(ideal: &IdealPresentation) -> Result<Self> {
        let mut pts = Vec::new();
        for g in ideal.generators() {
            pts.extend(g.support()?);
        }
        Self::new(pts)
    }

    pub fn of_monomial(ideal: &MonomialIdeal) -> Result<Self> {
        Self::new(ideal.generators().iter().cloned())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Every coordinate axis meets the polyhedron.
    pub fn is_finite_colength(&self) -> bool {
        (0..self.n).all(|i| {
            self.vertices
                .iter()
                .any(|v| v.entries().iter().enumerate().all(|(j, &a)| j == i || a == 0))
        })
    }

    fn require_finite(&self) -> Result<()> {
        if self.is_finite_colength() {
            Ok(())
        } else {
            Err(Error::InfiniteColength(
                "the Newton polyhedron does not meet every coordinate axis".into(),
            ))
        }
    }

    /// Whether the nonnegative rational point `q` lies in the polyhedron.
    pub fn member(&self, q: &[Rational]) -> Result<bool> {
        if q.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: q.len(),
            });
        }
        if q.iter().any(Signed::is_negative) {
            return Err(Error::InvalidArgument("membership needs a nonnegative point".into()));
        }
        Ok(self.facets.iter().all(|f| f.holds_at(q)))
    }

    /// Whether the lattice point lies in the polyhedron.
    pub fn contains_lattice(&self, e: &Exponent) -> bool {
        let p: Vec<i128> = e.entries().iter().map(|&a| a as i128).collect();
        self.facets.iter().all(|f| f.value(&p) >= f.rhs as i128)
    }

    /// `n`-volume of `R^n_{>=0} \ Γ+`.
    ///
    /// The complement is star-shaped from the origin, so it is the union of
    /// the cones from 0 over the compact facets. Each facet is triangulated
    /// and every coned simplex contributes `|det| / n!`.
    pub fn covolume(&self) -> Result<Rational> {
        self.require_finite()?;
        let n = self.n;
        if n == 1 {
            return Ok(Rational::from_integer(BigInt::from(self.vertices[0].entries()[0])));
        }
        let mut total = BigInt::zero();
        for facet in &self.facets {
            let on: Vec<Vec<i128>> = self
                .vertices
                .iter()
                .map(|v| v.entries().iter().map(|&a| a as i128).collect::<Vec<_>>())
                .filter(|p| facet.value(p) == facet.rhs as i128)
                .collect();
            let projected: Vec<Vec<i128>> = on.iter().map(|p| p[..n - 1].to_vec()).collect();
            for simplex in triangulate(&projected) {
                let rows: Vec<Vec<i128>> = simplex.iter().map(|&i| on[i].clone()).collect();
                total += BigInt::from(det(&rows).abs());
            }
        }
        let factorial: u64 = (1..=n as u64).product();
        Ok(Rational::new(total, BigInt::from(factorial)))
    }

    /// `Γ+(I·J) = Γ+(I) + Γ+(J)`, from pairwise sums of vertices.
    pub fn minkowski_sum(&self, other: &NewtonPolyhedron) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let sums: Vec<Exponent> = self
            .vertices
            .iter()
            .flat_map(|a| other.vertices.iter().map(move |b| a + b))
            .collect();
        Self::new(sums)
    }

    /// `t·Γ+`.
    pub fn dilate(&self, t: u32) -> Result<Self> {
        Self::new(self.vertices.iter().map(|v| v.scale(t)))
    }

    /// For each axis, the smallest `a` with `a·e_i` in the polyhedron.
    pub fn axis_intercepts(&self) -> Result<Vec<Rational>> {
        self.require_finite()?;
        Ok((0..self.n)
            .map(|i| {
                self.facets
                    .iter()
                    .map(|f| Rational::new(BigInt::from(f.rhs), BigInt::from(f.normal[i])))
                    .max()
                    .unwrap_or_else(Rational::zero)
            })
            .collect())
    }

    /// The term ideal: monomials with exponent in the polyhedron. For a
    /// monomial ideal this is its integral closure.
    pub fn term_ideal(&self) -> Result<MonomialIdeal> {
        let bounds: Vec<u32> = self
            .axis_intercepts()?
            .iter()
            .map(|a| crate::rational::to_u64(&a.ceil()).expect("nonnegative") as u32)
            .collect();
        let mut members = Vec::new();
        let mut cur = vec![0u32; self.n];
        self.collect_lattice(0, &bounds, &mut cur, &mut members);
        MonomialIdeal::new(self.n, members)
    }

    fn collect_lattice(&self, i: usize, bounds: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if i == self.n {
            let e = Exponent::new(cur.clone());
            if self.contains_lattice(&e) {
                out.push(e);
            }
            return;
        }
        for a in 0..=bounds[i] {
            cur[i] = a;
            self.collect_lattice(i + 1, bounds, cur, out);
        }
        cur[i] = 0;
    }

    /// `(a_1, …, a_n)` when the polyhedron is `Γ+(⟨x_1^{a_1}, …, x_n^{a_n}⟩)`.
    pub fn diagonal_witness(&self) -> Option<Vec<u32>> {
        if !self.is_finite_colength() || self.facets.len() != 1 {
            return None;
        }
        let f = &self.facets[0];
        f.normal
            .iter()
            .map(|&v| (v > 0 && f.rhs % v == 0).then(|| (f.rhs / v) as u32))
            .collect()
    }

    /// Checks the hull invariants: every input point satisfies every facet,
    /// and every facet is supported by `n` affinely independent points of
    /// the vertices and coordinate rays.
    pub fn verify(&self, points: &[Exponent]) -> Result<()> {
        for p in points {
            if !self.contains_lattice(p) {
                return Err(Error::Internal(format!("input point {p:?} violates a facet")));
            }
        }
        for f in &self.facets {
            let tight: Vec<Vec<i128>> = self
                .vertices
                .iter()
                .map(|v| v.entries().iter().map(|&a| a as i128).collect::<Vec<_>>())
                .filter(|p| f.value(p) == f.rhs as i128)
                .collect();
            let Some(base) = tight.first() else {
                return Err(Error::Internal(format!("facet {f:?} has no vertex")));
            };
            let mut dirs: Vec<Vec<i128>> = tight[1..]
                .iter()
                .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            for (i, &v) in f.normal.iter().enumerate() {
                if v == 0 {
                    let mut e = vec![0i128; self.n];
                    e[i] = 1;
                    dirs.push(e);
                }
            }
            if rank(&dirs) != self.n - 1 {
                return Err(Error::Internal(format!("facet {f:?} is not full-dimensional")));
            }
        }
        Ok(())
    }
}

/// Equality of polyhedra (canonical vertex and facet lists).
pub fn polyhedra_equal(p: &NewtonPolyhedron, q: &NewtonPolyhedron) -> Result<bool> {
    if p.n != q.n {
        return Err(Error::DimensionMismatch {
            expected: p.n,
            found: q.n,
        });
    }
    Ok(p.vertices == q.vertices && p.facets == q.facets)
}

fn enumerate_facets(n: usize, points: &[Exponent]) -> Vec<Facet> {
    let pts: Vec<Vec<i128>> = points
        .iter()
        .map(|p| p.entries().iter().map(|&a| a as i128).collect())
        .collect();
    let mut found: BTreeSet<Facet> = BTreeSet::new();
    if n == 1 {
        let a = pts.iter().map(|p| p[0]).min().expect("nonempty");
        if a > 0 {
            found.insert(Facet {
                normal: vec![1],
                rhs: a as u64,
            });
        }
        return found.into_iter().collect();
    }
    let rays: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            let mut e = vec![0i128; n];
            e[i] = 1;
            e
        })
        .collect();
    for base in 0..pts.len() {
        // Directions to later points and along the coordinate rays.
        let mut dirs: Vec<Vec<i128>> = pts[base + 1..]
            .iter()
            .map(|q| q.iter().zip(&pts[base]).map(|(a, b)| a - b).collect())
            .collect();
        dirs.extend(rays.iter().cloned());
        for_each_subset(dirs.len(), n - 1, |sel| {
            let chosen: Vec<Vec<i128>> = sel.iter().map(|&s| dirs[s].clone()).collect();
            let mut v = normal(&chosen, n);
            if v.iter().all(|&a| a == 0) {
                return;
            }
            if v.iter().all(|&a| a <= 0) {
                v.iter_mut().for_each(|a| *a = -*a);
            }
            if v.iter().any(|&a| a < 0) {
                return;
            }
            primitive(&mut v);
            let c = dot(&v, &pts[base]);
            if c <= 0 || pts.iter().any(|p| dot(&v, p) < c) {
                return;
            }
            found.insert(Facet {
                normal: v.iter().map(|&a| a as u64).collect(),
                rhs: c as u64,
            });
        });
    }
    found.into_iter().collect()
}

/// A point is a vertex iff the active constraints (tight facets and the
/// coordinate hyperplanes it lies on) have rank `n`.
fn select_vertices(n: usize, points: &[Exponent], facets: &[Facet]) -> Vec<Exponent> {
    let mut out: Vec<Exponent> = points
        .iter()
        .filter(|p| {
            let pi: Vec<i128> = p.entries().iter().map(|&a| a as i128).collect();
            let mut active: Vec<Vec<i128>> = facets
                .iter()
                .filter(|f| f.value(&pi) == f.rhs as i128)
                .map(|f| f.normal.iter().map(|&v| v as i128).collect())
                .collect();
            for (i, &a) in p.entries().iter().enumerate() {
                if a == 0 {
                    let mut e = vec![0i128; n];
                    e[i] = 1;
                    active.push(e);
                }
            }
            rank(&active) == n
        })
        .cloned()
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn poly(pts: &[&[u32]]) -> NewtonPolyhedron {
        NewtonPolyhedron::new(pts.iter().map(|p| Exponent::new(p.to_vec()))).unwrap()
    }

    fn e(v: &[u32]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    #[test]
    fn segment_absorbs_midpoint() {
        let p = poly(&[&[2, 0], &[0, 4], &[1, 2]]);
        assert_eq!(p.vertices(), &[e(&[0, 4]), e(&[2, 0])]);
        assert_eq!(p.facets(), &[Facet { normal: vec![2, 1], rhs: 4 }]);
    }

    #[test]
    fn maximal_ideal_has_simplex_facet() {
        let p = NewtonPolyhedron::of_monomial(&MonomialIdeal::maximal_power(3, 1)).unwrap();
        assert_eq!(p.facets(), &[Facet { normal: vec![1, 1, 1], rhs: 1 }]);
    }

    #[test]
    fn two_compact_facets() {
        let p = poly(&[&[2, 0], &[1, 1], &[0, 3]]);
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(
            p.facets(),
            &[Facet { normal: vec![1, 1], rhs: 2 }, Facet { normal: vec![2, 1], rhs: 3 }]
        );
        assert_eq!(p.diagonal_witness(), None);
    }

    #[test]
    fn membership() {
        let p = poly(&[&[2, 0], &[0, 4]]);
        assert!(p.member(&[ratio(4, 3), ratio(4, 3)]).unwrap());
        assert!(!p.member(&[int(1), int(1)]).unwrap());
        assert!(p.member(&[int(2), int(0)]).unwrap());
        assert!(p.member(&[int(-1), int(9)]).is_err());
    }

    #[test]
    fn covolumes() {
        assert_eq!(poly(&[&[2, 0], &[0, 4]]).covolume().unwrap(), int(4));
        assert_eq!(poly(&[&[2, 0], &[1, 1], &[0, 3]]).covolume().unwrap(), ratio(5, 2));
        for n in 1..=4 {
            for k in 1..=3u32 {
                let p = NewtonPolyhedron::of_monomial(&MonomialIdeal::maximal_power(n, k)).unwrap();
                let fact: i64 = (1..=n as i64).product();
                assert_eq!(p.covolume().unwrap(), ratio((k as i64).pow(n as u32), fact));
            }
        }
        assert!(poly(&[&[1, 0]]).covolume().is_err());
    }

    #[test]
    fn one_dimensional_ray() {
        let p = poly(&[&[3], &[5]]);
        assert_eq!(p.vertices(), &[e(&[3])]);
        assert_eq!(p.covolume().unwrap(), int(3));
        assert_eq!(p.diagonal_witness(), Some(vec![3]));
        assert_eq!(p.term_ideal().unwrap(), MonomialIdeal::diagonal(&[3]));
    }

    #[test]
    fn minkowski_with_maximal_ideal() {
        let p = poly(&[&[2, 0], &[0, 4]]);
        let m = poly(&[&[1, 0], &[0, 1]]);
        let s = p.minkowski_sum(&m).unwrap();
        assert_eq!(s.vertices(), &[e(&[0, 5]), e(&[2, 1]), e(&[3, 0])]);
        assert_eq!(s.covolume().unwrap(), ratio(13, 2));
        let unit = poly(&[&[0, 0]]);
        assert_eq!(p.minkowski_sum(&unit).unwrap(), p);
    }

    #[test]
    fn term_ideals() {
        let p = poly(&[&[2, 0], &[0, 4]]);
        let expected = MonomialIdeal::new(2, [e(&[2, 0]), e(&[1, 2]), e(&[0, 4])]).unwrap();
        assert_eq!(p.term_ideal().unwrap(), expected);
        let m2 = NewtonPolyhedron::of_monomial(&MonomialIdeal::maximal_power(2, 2)).unwrap();
        assert_eq!(m2.term_ideal().unwrap(), MonomialIdeal::maximal_power(2, 2));
        let closure = NewtonPolyhedron::of_monomial(&p.term_ideal().unwrap()).unwrap();
        assert!(polyhedra_equal(&p, &closure).unwrap());
    }

    #[test]
    fn witnesses() {
        assert_eq!(poly(&[&[2, 0], &[0, 4]]).diagonal_witness(), Some(vec![2, 4]));
        let m3 = NewtonPolyhedron::of_monomial(&MonomialIdeal::maximal_power(3, 4)).unwrap();
        assert_eq!(m3.diagonal_witness(), Some(vec![4, 4, 4]));
        // Single facet 3x + 2y >= 6 has intercepts 2 and 3.
        assert_eq!(poly(&[&[2, 0], &[0, 3]]).diagonal_witness(), Some(vec![2, 3]));
        // x + 2y >= 3 misses the lattice on the y axis.
        assert_eq!(poly(&[&[3, 0], &[1, 1]]).diagonal_witness(), None);
    }

    #[test]
    fn equality() {
        let a = poly(&[&[2, 0], &[0, 4], &[1, 2]]);
        let b = poly(&[&[2, 0], &[0, 4]]);
        assert!(polyhedra_equal(&a, &b).unwrap());
        let m = poly(&[&[1, 0], &[0, 1]]);
        let m2 = poly(&[&[2, 0], &[1, 1], &[0, 2]]);
        assert!(!polyhedra_equal(&m, &m2).unwrap());
    }

    #[test]
    fn non_finite_colength_polyhedron_has_noncompact_facet() {
        let p = poly(&[&[1, 0]]);
        assert!(!p.is_finite_colength());
        assert_eq!(p.facets(), &[Facet { normal: vec![1, 0], rhs: 1 }]);
        let q = poly(&[&[1, 1, 0], &[0, 0, 3]]);
        assert!(!q.is_finite_colength());
        assert!(q.term_ideal().is_err());
    }
}
