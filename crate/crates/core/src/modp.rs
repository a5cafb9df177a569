//! Colengths over the prime field `F_p` with `p = 2^61 - 1`.
//!
//! Reducing mod `p` can only lower the rank of `I → O_n / m^D`, so the
//! colength over `F_p` is never smaller than over the rationals and agrees
//! with it for all but finitely many primes. Suitable only where a value is
//! already a minimum over random draws.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::ideal::IdealPresentation;
use crate::monomial::MonomialIdeal;
use crate::mora::{self, monomials_of_degree};
use crate::poly::Polynomial;
use crate::rational::Rational;

const P: u64 = (1 << 61) - 1;

type Poly = BTreeMap<Exponent, u64>;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

fn inv(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, P - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

fn residue(z: &BigInt) -> u64 {
    let r = z % BigInt::from(P);
    let r = if r.sign() == num_bigint::Sign::Minus { r + BigInt::from(P) } else { r };
    r.to_u64().expect("residue fits")
}

fn reduce(q: &Rational) -> Option<u64> {
    let d = residue(q.denom());
    (d != 0).then(|| mul(residue(q.numer()), inv(d)))
}

fn convert(g: &Polynomial) -> Option<Poly> {
    let mut out = Poly::new();
    for (e, c) in g.terms() {
        let r = reduce(c)?;
        if r != 0 {
            out.insert(e.clone(), r);
        }
    }
    Some(out)
}

fn make_monic(p: &mut Poly) {
    if let Some((_, &lc)) = p.iter().next() {
        if lc != 1 {
            let s = inv(lc);
            p.values_mut().for_each(|c| *c = mul(*c, s));
        }
    }
}

/// `h -= c·x^shift·g`, dropping terms of degree `>= corner`. Under the local
/// order a tail term may have lower degree than the leading term.
fn sub_scaled_shifted(h: &mut Poly, c: u64, shift: &Exponent, g: &Poly, corner: u32) {
    for (e, a) in g {
        let e = e + shift;
        if e.degree() >= corner {
            continue;
        }
        let t = mul(c, *a);
        let slot = h.entry(e.clone()).or_insert(0);
        *slot = sub(*slot, t);
        if *slot == 0 {
            h.remove(&e);
        }
    }
}

struct Elem {
    poly: Poly,
    lead: Exponent,
}

fn normal_form(mut h: Poly, basis: &[Elem], corner: u32) -> Poly {
    while let Some((lead, &lc)) = h.iter().next() {
        let Some(g) = basis.iter().find(|g| g.lead.divides(lead)) else {
            break;
        };
        let shift = g.lead.quotient(lead).expect("divides");
        sub_scaled_shifted(&mut h, lc, &shift, &g.poly, corner);
    }
    h
}

/// Leading exponents of a standard basis of `I + m^corner` over `F_p`. The
/// monomials of degree `corner` are basis elements, so reduction drops every
/// term of degree `>= corner`.
fn leads(gens: &[Poly], n: usize, corner: u32) -> Vec<Exponent> {
    let mut basis: Vec<Elem> = monomials_of_degree(n, corner)
        .into_iter()
        .map(|e| Elem { poly: Poly::from([(e.clone(), 1)]), lead: e })
        .collect();
    for g in gens {
        let mut p: Poly = g.iter().filter(|(e, _)| e.degree() < corner).map(|(e, c)| (e.clone(), *c)).collect();
        make_monic(&mut p);
        if let Some(lead) = p.keys().next().cloned() {
            if !basis.iter().any(|b| b.poly == p) {
                basis.push(Elem { poly: p, lead });
            }
        }
    }
    let mut pairs: BTreeSet<(Exponent, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let add_pairs = |basis: &[Elem], k: usize, pairs: &mut BTreeSet<_>, pending: &mut HashSet<_>| {
        for i in 0..k {
            if basis[i].poly.len() > 1 || basis[k].poly.len() > 1 {
                pairs.insert((basis[i].lead.lcm(&basis[k].lead), i, k));
                pending.insert((i, k));
            }
        }
    };
    for k in 0..basis.len() {
        add_pairs(&basis, k, &mut pairs, &mut pending);
    }
    let ordered = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    while let Some((lcm, i, j)) = pairs.pop_first() {
        pending.remove(&(i, j));
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
        let mut s = Poly::new();
        sub_scaled_shifted(&mut s, P - 1, &basis[i].lead.quotient(&lcm).expect("divides"), &basis[i].poly, corner);
        sub_scaled_shifted(&mut s, 1, &basis[j].lead.quotient(&lcm).expect("divides"), &basis[j].poly, corner);
        let mut h = normal_form(s, &basis, corner);
        if h.is_empty() {
            continue;
        }
        make_monic(&mut h);
        let lead = h.keys().next().cloned().expect("nonzero");
        basis.push(Elem { poly: h, lead });
        add_pairs(&basis, basis.len() - 1, &mut pairs, &mut pending);
    }
    basis.into_iter().map(|e| e.lead).collect()
}

fn truncated_colength(gens: &[Poly], n: usize, corner: u32) -> Result<u64> {
    MonomialIdeal::new(n, leads(gens, n, corner))?.colength()
}

/// `dim O_n / I` computed over `F_p`, with the same search for a power of
/// the maximal ideal as [`mora::standard_basis`]. Falls back to the exact
/// computation when a coefficient has no residue or the degree cap binds
/// before the search ends.
pub(crate) fn colength(ideal: &IdealPresentation, degree_cap: u32) -> Result<u64> {
    let Some(mut d) = ideal.generators().iter().filter_map(Polynomial::order).min() else {
        return mora::colength(ideal, degree_cap);
    };
    let delta = ideal.generators().iter().map(Polynomial::degree).max().unwrap_or(0);
    if d == 0 || delta > degree_cap {
        return mora::colength(ideal, degree_cap);
    }
    let Some(gens) = ideal.generators().iter().map(convert).collect::<Option<Vec<Poly>>>() else {
        return mora::colength(ideal, degree_cap);
    };
    let n = ideal.nvars();
    let bezout = (delta as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    let limit = bezout.min(degree_cap as u64) as u32;
    let mut lower = truncated_colength(&gens, n, d)?;
    while d <= limit {
        let upper = truncated_colength(&gens, n, d + 1)?;
        if upper == lower {
            return Ok(lower);
        }
        (lower, d) = (upper, d + 1);
    }
    if (d as u64) > bezout {
        return Err(Error::InfiniteColength(format!(
            "the colength of I + m^k keeps growing past {bezout}, the bound for generators of degree {delta}"
        )));
    }
    mora::colength(ideal, degree_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::parse_ideal;

    fn ideal(vars: &str, gens: &str) -> IdealPresentation {
        parse_ideal(&format!("vars: {vars}\ngens: {gens}")).unwrap()
    }

    #[test]
    fn field_arithmetic() {
        assert_eq!(mul(inv(3), 3), 1);
        assert_eq!(sub(1, 2), P - 1);
        assert_eq!(reduce(&crate::rational::ratio(-1, 2)), Some(sub(0, inv(2))));
    }

    #[test]
    fn agrees_with_exact_colengths() {
        for (vars, gens) in [
            ("x, y", "x + y^2; y^3"),
            ("x, y", "x^2 + y^4; x*y^2"),
            ("x, y", "(x+y)^2 + y^4; (x+y)*y^2"),
            ("x, y, z", "x^2 + y*z; y^3 - z^2 + x*y; z^4 + 1/2*x^3"),
        ] {
            let i = ideal(vars, gens);
            assert_eq!(colength(&i, 64).unwrap(), mora::colength(&i, 64).unwrap(), "{gens}");
        }
    }

    #[test]
    fn truncated_colengths_match_exact() {
        let exps = [[0, 0, 8], [0, 2, 3], [0, 3, 1], [0, 6, 0], [1, 1, 1], [5, 0, 0]];
        let m = MonomialIdeal::new(3, exps.iter().map(|e| Exponent::new(e.to_vec()))).unwrap();
        let combos = crate::ops::generic_combinations(&m.to_presentation(), 3, 7, 101).unwrap();
        let gens: Vec<Poly> = combos.generators().iter().map(|g| convert(g).unwrap()).collect();
        for d in 3..=9 {
            let exact = mora::standard_basis_with_corner(&combos, d, 64).unwrap().initial_ideal().colength().unwrap();
            assert_eq!(truncated_colength(&gens, 3, d).unwrap(), exact, "corner {d}");
        }
    }

    #[test]
    fn detects_infinite_colength() {
        let i = ideal("x, y", "x^2; x*y");
        assert!(matches!(colength(&i, 64), Err(Error::InfiniteColength(_))));
    }

    #[test]
    fn denominator_divisible_by_p_falls_back() {
        let i = ideal("x, y", &format!("x + 1/{P}*y^2; y^3"));
        assert_eq!(colength(&i, 64).unwrap(), 3);
    }
}
