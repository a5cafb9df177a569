//! Standard bases in the local ring under the negative lexicographic order.
//!
//! Normal forms use Mora's tangent-cone algorithm: a reducer is chosen among
//! the candidates with minimal écart (`deg f - deg in(f)`), and whenever the
//! chosen reducer has larger écart than the current remainder, the remainder
//! itself joins the reducer set. The result is a weak normal form: `u·f`
//! reduces to it for some unit `u`, which is all the local ring needs.

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::ideal::IdealPresentation;
use crate::monomial::MonomialIdeal;
use crate::poly::Polynomial;

const MAX_REDUCTION_STEPS: usize = 5_000_000;

#[derive(Clone, Debug)]
struct Reducer {
    poly: Polynomial,
    lead: Exponent,
    ecart: u32,
}

impl Reducer {
    fn new(poly: Polynomial) -> Self {
        let poly = poly.monic();
        let lead = poly.leading_term().expect("nonzero").0.clone();
        let ecart = poly.degree() - lead.degree();
        Reducer { poly, lead, ecart }
    }
}

/// A standard basis of an ideal of `O_n` with respect to the local order.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    elements: Vec<Polynomial>,
    source: IdealPresentation,
}

impl StandardBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn source(&self) -> &IdealPresentation {
        &self.source
    }

    pub fn leading_exponents(&self) -> Vec<Exponent> {
        self.elements
            .iter()
            .map(|p| p.leading_term().expect("nonzero").0.clone())
            .collect()
    }

    /// The minimal generators of the initial ideal.
    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.source.nvars(), self.leading_exponents()).expect("nonempty")
    }

    /// Weak normal form of `f` against this basis.
    pub fn normal_form(&self, f: &Polynomial, degree_cap: u32) -> Result<Polynomial> {
        let reducers: Vec<Reducer> = self.elements.iter().cloned().map(Reducer::new).collect();
        mora_normal_form(f.clone(), &reducers, None, degree_cap)
    }

    /// The least `D` with `m^D ⊆ I`, found by reducing every monomial of
    /// degree `D`. The search stops at the colength, which always suffices.
    pub fn maximal_power_index(&self, degree_cap: u32) -> Result<u32> {
        let n = self.source.nvars();
        let bound = self.initial_ideal().colength()?.max(1);
        let reducers: Vec<Reducer> = self.elements.iter().cloned().map(Reducer::new).collect();
        for d in 1..=bound as u32 {
            let mut all = true;
            for e in monomials_of_degree(n, d) {
                if !mora_normal_form(Polynomial::monomial(e), &reducers, None, degree_cap)?.is_zero() {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(d);
            }
        }
        Err(Error::Internal("no power of the maximal ideal lies in the ideal".into()))
    }
}

/// Exponents of total degree `d` in `n` variables, lexicographically.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Exponent::new(cur.clone()));
            return;
        }
        for a in 0..=left {
            cur[i] = a;
            go(i + 1, left - a, cur, out);
        }
    }
    let mut out = Vec::new();
    go(0, d, &mut vec![0; n], &mut out);
    out
}

fn check_cap(p: &Polynomial, cap: u32) -> Result<()> {
    let d = p.degree();
    if d > cap {
        return Err(Error::DegreeCapExceeded { cap, degree: d });
    }
    Ok(())
}

/// With `corner = Some(D)` the monomials of degree `D` are implicit members
/// of the basis, and reducing by them removes every term of degree `>= D`.
/// Only finitely many monomials survive, so plain reduction terminates and
/// the remainder never joins the reducers.
fn mora_normal_form(f: Polynomial, basis: &[Reducer], corner: Option<u32>, cap: u32) -> Result<Polynomial> {
    let truncate = |p: Polynomial| match corner {
        Some(d) => p.truncate_below(d),
        None => p,
    };
    let mut h = truncate(f).monic();
    let mut extra: Vec<Reducer> = Vec::new();
    for _ in 0..MAX_REDUCTION_STEPS {
        let Some((lead, lc)) = h.leading_term() else {
            return Ok(h);
        };
        let lead = lead.clone();
        let lc = lc.clone();
        let chosen = basis
            .iter()
            .chain(extra.iter())
            .enumerate()
            .filter(|(_, r)| r.lead.divides(&lead))
            .min_by_key(|(_, r)| r.ecart)
            .map(|(k, _)| k);
        let Some(k) = chosen else {
            return Ok(h);
        };
        let ecart_h = h.degree() - lead.degree();
        let saved = {
            let g = if k < basis.len() { &basis[k] } else { &extra[k - basis.len()] };
            let saved = (corner.is_none() && g.ecart > ecart_h).then(|| h.clone());
            let shift = g.lead.quotient(&lead).expect("divides");
            // `g` is monic, so cancelling the leading term needs the factor `lc`.
            h.add_scaled_shifted(&-lc, &shift, &g.poly);
            saved
        };
        if let Some(old) = saved {
            extra.push(Reducer::new(old));
        }
        debug_assert!(h.coefficient(&lead).is_zero());
        check_cap(&h, cap)?;
        h = truncate(h).monic();
    }
    Err(Error::Internal("normal form did not terminate".into()))
}

fn s_polynomial(f: &Reducer, g: &Reducer) -> Polynomial {
    let lcm = f.lead.lcm(&g.lead);
    let mut s = f.poly.mul_monomial(&f.lead.quotient(&lcm).expect("divides"));
    s.add_scaled_shifted(&-num_rational::BigRational::one(), &g.lead.quotient(&lcm).expect("divides"), &g.poly);
    s
}

/// Computes a standard basis of `ideal`.
///
/// Pairs are processed by smallest écart, then by the local-order-greatest
/// lcm, then by index. Exceeding `degree_cap` anywhere is an error.
///
/// Finite colength is detected first: for `D = ord, ord + 1, ...` the ideals
/// `I + m^D` are computed with truncation, and equal colengths at `D` and
/// `D + 1` give `m^D ⊆ I + m^(D+1)`, so `m^D ⊆ I` by Nakayama. A finite
/// colength is at most `δ^n` for generators of degree `≤ δ` (Bezout for `n`
/// generic combinations), so the search past `δ^n` proves infinite colength.
/// When `δ^n` exceeds the degree cap the untruncated algorithm runs instead.
pub fn standard_basis(ideal: &IdealPresentation, degree_cap: u32) -> Result<StandardBasis> {
    let n = ideal.nvars() as u32;
    let mut d = ideal.generators().iter().filter_map(Polynomial::order).min().unwrap_or(0);
    if d == 0 {
        return compute(ideal, None, degree_cap);
    }
    let delta = ideal.generators().iter().map(Polynomial::degree).max().unwrap_or(0);
    let bezout = (delta as u64).checked_pow(n).unwrap_or(u64::MAX);
    let limit = bezout.min(degree_cap as u64) as u32;
    let mut lower = compute(ideal, Some(d), degree_cap)?;
    let mut lower_colength = lower.initial_ideal().colength()?;
    while d <= limit {
        let upper = compute(ideal, Some(d + 1), degree_cap)?;
        let upper_colength = upper.initial_ideal().colength()?;
        if upper_colength == lower_colength {
            return Ok(lower);
        }
        (lower, lower_colength, d) = (upper, upper_colength, d + 1);
    }
    if (d as u64) > bezout {
        return Err(Error::InfiniteColength(format!(
            "the colength of I + m^k keeps growing past {bezout}, the bound for generators of degree {delta}"
        )));
    }
    compute(ideal, None, degree_cap)
}

/// A standard basis of `I`, given that `m^corner ⊆ I`. The monomials of
/// degree `corner` join the basis, which keeps every intermediate degree
/// below `corner`. A wrong `corner` gives a wrong answer.
pub fn standard_basis_with_corner(ideal: &IdealPresentation, corner: u32, degree_cap: u32) -> Result<StandardBasis> {
    compute(ideal, Some(corner), degree_cap)
}

fn compute(ideal: &IdealPresentation, corner: Option<u32>, degree_cap: u32) -> Result<StandardBasis> {
    let max_deg = ideal.generators().iter().map(Polynomial::degree).max().unwrap_or(0);
    if max_deg > degree_cap {
        return Err(Error::DegreeCapExceeded {
            cap: degree_cap,
            degree: max_deg,
        });
    }
    let mut basis: Vec<Reducer> = Vec::new();
    let mut inputs: Vec<Polynomial> = Vec::new();
    if let Some(d) = corner {
        inputs.extend(monomials_of_degree(ideal.nvars(), d).into_iter().map(Polynomial::monomial));
        inputs.extend(ideal.generators().iter().map(|g| g.truncate_below(d)));
    } else {
        inputs.extend(ideal.generators().iter().cloned());
    }
    for g in &inputs {
        if g.is_zero() {
            continue;
        }
        let r = Reducer::new(g.clone());
        if !basis.iter().any(|b| b.poly == r.poly) {
            basis.push(r);
        }
    }
    // (écart, lcm, i, j); BTreeSet iteration gives the selection order since
    // lexicographically smaller lcm means local-order greater.
    let mut pairs: BTreeSet<(u32, Exponent, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let pair_key = |b: &[Reducer], i: usize, j: usize| {
        (b[i].ecart.max(b[j].ecart), b[i].lead.lcm(&b[j].lead), i, j)
    };
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert(pair_key(&basis, i, j));
            pending.insert((i, j));
        }
    }
    let ordered = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    while let Some(key) = pairs.pop_first() {
        let (_, lcm, i, j) = key;
        pending.remove(&(i, j));
        if basis[i].poly.len() == 1 && basis[j].poly.len() == 1 {
            continue;
        }
        // Chain criterion: some other lead divides the lcm and both of its
        // pairs with i and j have already been treated.
        let redundant = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead.divides(&lcm)
                && !pending.contains(&ordered(i, k))
                && !pending.contains(&ordered(j, k))
        });
        if redundant {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let h = mora_normal_form(s, &basis, corner, degree_cap)?;
        if h.is_zero() {
            continue;
        }
        let new = Reducer::new(h);
        let k = basis.len();
        basis.push(new);
        for i in 0..k {
            pairs.insert(pair_key(&basis, i, k));
            pending.insert((i, k));
        }
    }
    Ok(StandardBasis {
        elements: basis.into_iter().map(|r| r.poly).collect(),
        source: ideal.clone(),
    })
}

/// `ini(I)`, the ideal of local-order initial monomials of elements of `I`.
pub fn initial_ideal(ideal: &IdealPresentation, degree_cap: u32) -> Result<MonomialIdeal> {
    if ideal.is_monomial() {
        return MonomialIdeal::from_presentation(ideal);
    }
    Ok(standard_basis(ideal, degree_cap)?.initial_ideal())
}

/// `ini(I)` for an ideal known to contain `m^corner`.
pub fn initial_ideal_with_corner(ideal: &IdealPresentation, corner: u32, degree_cap: u32) -> Result<MonomialIdeal> {
    if ideal.is_monomial() {
        return MonomialIdeal::from_presentation(ideal);
    }
    Ok(standard_basis_with_corner(ideal, corner, degree_cap)?.initial_ideal())
}

/// `dim O_n / I`, counted as the standard monomials of `ini(I)`.
pub fn colength(ideal: &IdealPresentation, degree_cap: u32) -> Result<u64> {
    initial_ideal(ideal, degree_cap)?.colength()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::parse_ideal;

    const CAP: u32 = 64;

    fn ideal(gens: &str) -> IdealPresentation {
        parse_ideal(&format!("vars: x, y\ngens: {gens}")).unwrap()
    }

    fn mono(gens: &[[u32; 2]]) -> MonomialIdeal {
        MonomialIdeal::new(2, gens.iter().map(|g| Exponent::from(*g))).unwrap()
    }

    #[test]
    fn smooth_curve_initial_ideal() {
        let i = ideal("x + y^2; y^3");
        let ini = initial_ideal(&i, CAP).unwrap();
        assert_eq!(ini, mono(&[[0, 2], [1, 1], [2, 0]]));
        assert_eq!(colength(&i, CAP).unwrap(), 3);
    }

    #[test]
    fn maximal_ideal_is_already_standard() {
        let i = ideal("x; y");
        let sb = standard_basis(&i, CAP).unwrap();
        assert_eq!(sb.elements().len(), 2);
        assert_eq!(colength(&i, CAP).unwrap(), 1);
    }

    #[test]
    fn straight_pair_initial_ideal() {
        let i = ideal("x^2 + y^4; x*y^2");
        assert_eq!(initial_ideal(&i, CAP).unwrap(), mono(&[[0, 4], [1, 2], [3, 0]]));
        assert_eq!(colength(&i, CAP).unwrap(), 8);
    }

    #[test]
    fn monomial_ideal_is_its_own_initial_ideal() {
        let i = ideal("x^3; x*y; y^5");
        assert_eq!(initial_ideal(&i, CAP).unwrap(), mono(&[[3, 0], [1, 1], [0, 5]]));
        // The engine agrees with the monomial shortcut.
        assert_eq!(standard_basis(&i, CAP).unwrap().initial_ideal(), mono(&[[3, 0], [1, 1], [0, 5]]));
    }

    #[test]
    fn basis_elements_normal_form_to_zero() {
        let i = ideal("x^2 + y^5 + x*y; x*y^2 - y^4");
        let sb = standard_basis(&i, CAP).unwrap();
        for g in i.generators() {
            assert!(sb.normal_form(g, CAP).unwrap().is_zero());
        }
    }

    #[test]
    fn infinite_colength_is_reported() {
        let i = ideal("x");
        assert!(matches!(colength(&i, CAP), Err(Error::InfiniteColength(_))));
        let j = ideal("x*y + x^2");
        assert!(matches!(colength(&j, CAP), Err(Error::InfiniteColength(_))));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let i = ideal("x^5 + y^7; y^2");
        assert!(matches!(
            standard_basis(&i, 4),
            Err(Error::DegreeCapExceeded { cap: 4, .. })
        ));
    }

    #[test]
    fn corner_truncation_agrees() {
        let i = ideal("x^2 + y^5 + x*y; x*y^2 - y^4");
        let sb = standard_basis(&i, CAP).unwrap();
        let d = sb.maximal_power_index(CAP).unwrap();
        let truncated = standard_basis_with_corner(&i, d, CAP).unwrap();
        assert_eq!(truncated.initial_ideal(), sb.initial_ideal());
        // y^2 ≡ -x modulo I, so m^2 is not inside but m^3 is.
        let s = standard_basis(&ideal("x + y^2; y^3"), CAP).unwrap();
        assert_eq!(s.maximal_power_index(CAP).unwrap(), 3);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
    }

    #[test]
    fn unit_ideal_has_colength_zero() {
        let i = ideal("1 + x; y");
        assert_eq!(colength(&i, CAP).unwrap(), 0);
    }
}
