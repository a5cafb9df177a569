//! Seeded random corpora and the property suites run over them.
//!
//! Every suite evaluates its ideals in parallel and merges the findings in
//! corpus order, so a summary depends only on the seed and the parameters.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::ideal::IdealPresentation;
use crate::lct::{dp_function, dp_sum, howald_boundary_check, in_d, is_diagonal_with, lct_monomial, DpPoint};
use crate::monomial::MonomialIdeal;
use crate::mora;
use crate::multiplicity::{mixed_multiplicities_generic, mixed_multiplicities_polyhedral, ord};
use crate::newton::{polyhedra_equal, NewtonPolyhedron};
use crate::oracle::{lattice_covolume, linear_algebra_colength, shoelace_covolume, staircase_count};
use crate::poly::Polynomial;
use crate::rational::{self, Rational};

/// Failing instances kept per property.
const EXAMPLES_KEPT: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyTally {
    pub name: String,
    pub checked: u64,
    pub violations: u64,
    pub examples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub suite: String,
    pub seed: u64,
    pub size: usize,
    pub properties: Vec<PropertyTally>,
    /// Observations that are reported but not asserted.
    pub findings: Vec<String>,
}

impl CorpusSummary {
    pub fn violations(&self) -> u64 {
        self.properties.iter().map(|p| p.violations).sum()
    }

    pub fn property(&self, name: &str) -> Option<&PropertyTally> {
        self.properties.iter().find(|p| p.name == name)
    }
}

/// One instance's outcome for one property.
struct Outcome {
    name: &'static str,
    ok: bool,
    detail: String,
}

fn outcome(name: &'static str, ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        name,
        ok,
        detail: detail.into(),
    }
}

fn tally(suite: &str, seed: u64, per_instance: Vec<Vec<Outcome>>, findings: Vec<String>) -> CorpusSummary {
    let size = per_instance.len();
    let mut properties: Vec<PropertyTally> = Vec::new();
    for (idx, outcomes) in per_instance.into_iter().enumerate() {
        for o in outcomes {
            let slot = match properties.iter().position(|p| p.name == o.name) {
                Some(k) => k,
                None => {
                    properties.push(PropertyTally {
                        name: o.name.to_string(),
                        checked: 0,
                        violations: 0,
                        examples: Vec::new(),
                    });
                    properties.len() - 1
                }
            };
            let p = &mut properties[slot];
            p.checked += 1;
            if !o.ok {
                p.violations += 1;
                if p.examples.len() < EXAMPLES_KEPT {
                    p.examples.push(format!("#{idx}: {}", o.detail));
                }
            }
        }
    }
    CorpusSummary {
        suite: suite.to_string(),
        seed,
        size,
        properties,
        findings,
    }
}

/// A monomial ideal of finite colength: a pure power of every variable plus
/// mixed monomials, at most `max_gens` generators of degree at most `max_deg`.
pub fn random_monomial_ideal(rng: &mut impl Rng, n: usize, max_gens: usize, max_deg: u32) -> MonomialIdeal {
    let mut gens: Vec<Exponent> = (0..n).map(|i| Exponent::pure_power(n, i, rng.gen_range(1..=max_deg))).collect();
    let extra = rng.gen_range(0..=max_gens.saturating_sub(n));
    for _ in 0..extra {
        let d = rng.gen_range(2..=max_deg);
        let mut e = vec![0u32; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        gens.push(Exponent::new(e));
    }
    MonomialIdeal::new(n, gens).expect("nonempty")
}

/// `count` ideals cycling through the dimensions in `dims`.
pub fn monomial_corpus(dims: &[usize], count: usize, seed: u64) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| random_monomial_ideal(&mut rng, dims[k % dims.len()], 6, 8))
        .collect()
}

fn random_polynomial(rng: &mut impl Rng, n: usize, max_deg: u32) -> Polynomial {
    loop {
        let mut p = Polynomial::zero(n);
        for _ in 0..rng.gen_range(1..=4) {
            let d = rng.gen_range(2..=max_deg);
            let mut e = vec![0u32; n];
            for _ in 0..d {
                e[rng.gen_range(0..n)] += 1;
            }
            let c = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
            p = &p + &Polynomial::term(n, Exponent::new(e), rational::int(c));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random polynomial ideals in two variables of degree at most `max_deg`,
/// kept when Mora certifies finite, nonzero colength.
pub fn polynomial_corpus(count: usize, seed: u64, max_deg: u32, cfg: &Config) -> Result<Vec<IdealPresentation>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r = rng.gen_range(2..=3);
        let gens: Vec<Polynomial> = (0..r).map(|_| random_polynomial(&mut rng, 2, max_deg)).collect();
        let ideal = IdealPresentation::with_default_vars(gens)?;
        match mora::colength(&ideal, cfg.degree_cap) {
            Ok(c) if c > 0 => out.push(ideal),
            Ok(_) | Err(Error::InfiniteColength(_)) | Err(Error::DegreeCapExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn monomial_checks(ideal: &MonomialIdeal, seed: u64, cfg: &Config) -> Result<Vec<Outcome>> {
    let n = ideal.nvars();
    let p = NewtonPolyhedron::of_monomial(ideal)?;
    let mut out = Vec::new();
    let e = match mixed_multiplicities_polyhedral(ideal) {
        Ok(e) => e,
        Err(err) => {
            out.push(outcome("integral e-vector with e_1 = ord", false, err.to_string()));
            return Ok(out);
        }
    };
    out.push(outcome(
        "integral e-vector with e_1 = ord",
        e.first() == ideal.ord() as u64,
        format!("{:?} vs ord {}", e.values, ideal.ord()),
    ));
    out.push(outcome("multiplicity chain", e.satisfies_chain(), format!("{:?}", e.values)));
    let dp = dp_sum(&e);
    let lct = lct_monomial(&p)?;
    let r = rational::render;
    out.push(outcome("DP <= lct", dp <= lct, format!("DP {} lct {}", r(&dp), r(&lct))));
    let nn = Rational::from_integer(BigInt::from(n).pow(n as u32));
    let rhs = Rational::from_integer(BigInt::from(e.samuel())) * dp.pow(n as i32);
    out.push(outcome("n^n <= e·DP^n", nn <= rhs, format!("{:?}", e.values)));

    let generic = mixed_multiplicities_generic(&ideal.to_presentation(), seed, cfg)?;
    out.push(outcome(
        "two-path agreement",
        generic.values == e.values,
        format!("polyhedral {:?} generic {:?}", e.values, generic.values),
    ));
    let diag = is_diagonal_with(&p, &e);
    out.push(outcome(
        "diagonality cross-check",
        diag.is_ok(),
        diag.err().map(|x| x.to_string()).unwrap_or_default(),
    ));
    let closure = NewtonPolyhedron::of_monomial(&p.term_ideal()?)?;
    out.push(outcome("term-ideal polyhedron", polyhedra_equal(&p, &closure)?, format!("{:?}", ideal.generators())));
    let covol = p.covolume()?;
    for t in [2u32, 3] {
        let pt = NewtonPolyhedron::of_monomial(&ideal.power(t))?;
        let scaled = &covol * Rational::from_integer(BigInt::from(t).pow(n as u32));
        out.push(outcome("covolume dilation", pt.covolume()? == scaled, format!("t = {t}")));
        let et = mixed_multiplicities_polyhedral(&ideal.power(t))?;
        let homogeneous = et
            .values
            .iter()
            .zip(&e.values)
            .enumerate()
            .all(|(j, (a, b))| *a == b * (t as u64).pow(j as u32 + 1));
        out.push(outcome("homogeneity e_j(I^t) = t^j e_j(I)", homogeneous, format!("t = {t}")));
    }
    out.push(outcome("Howald boundary probe", howald_boundary_check(&p)?, String::new()));
    let o = ideal.ord();
    let target = Rational::new(BigInt::from(n), BigInt::from(o));
    let fires = dp == lct && lct == target;
    let power = NewtonPolyhedron::of_monomial(&MonomialIdeal::maximal_power(n, o))?;
    let closure_is_power = polyhedra_equal(&p, &power)?;
    out.push(outcome(
        "maximal equality iff closure is m^ord",
        fires == closure_is_power,
        format!("fires {fires}, closure is m^{o}: {closure_is_power}"),
    ));
    Ok(out)
}

/// The monomial suite: multiplicities, thresholds and polyhedra.
pub fn monomial_suite(ideals: &[MonomialIdeal], seed: u64, cfg: &Config) -> Result<CorpusSummary> {
    let per: Vec<Vec<Outcome>> = ideals
        .par_iter()
        .enumerate()
        .map(|(k, i)| monomial_checks(i, seed.wrapping_add(k as u64), cfg))
        .collect::<Result<_>>()?;
    let diagonal = ideals
        .iter()
        .filter(|i| NewtonPolyhedron::of_monomial(i).map(|p| p.diagonal_witness().is_some()).unwrap_or(false))
        .count();
    let findings = vec![format!("{diagonal} of {} ideals are diagonal", ideals.len())];
    Ok(tally("monomial", seed, per, findings))
}

fn polynomial_checks(ideal: &IdealPresentation, seed: u64, cfg: &Config) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    let sb = mora::standard_basis(ideal, cfg.degree_cap)?;
    let ini = sb.initial_ideal();
    let c = ini.colength()?;
    let oracle = linear_algebra_colength(ideal, 64)?;
    out.push(outcome(
        "colength(I) = colength(ini(I))",
        c == oracle,
        format!("{} : Mora {c}, linear algebra {oracle}", ideal.render().replace('\n', " ")),
    ));
    let e = mixed_multiplicities_generic(ideal, seed, cfg)?;
    let e_ini = mixed_multiplicities_polyhedral(&ini)?;
    out.push(outcome(
        "e_j(I) <= e_j(ini(I))",
        e.values.iter().zip(&e_ini.values).all(|(a, b)| a <= b),
        format!("{:?} vs {:?}", e.values, e_ini.values),
    ));
    out.push(outcome(
        "e_1(I) = ord(I)",
        e.first() == ord(ideal) as u64,
        format!("{:?}", e.values),
    ));
    let n = ideal.nvars();
    for j in 1..n {
        let suffix: Vec<usize> = (j..n).collect();
        let projected: Vec<Polynomial> = ideal
            .generators()
            .iter()
            .map(|g| g.project(&suffix))
            .filter(|g| !g.is_zero())
            .collect();
        let expected = ini.restrict_project(&suffix);
        let ok = match (projected.is_empty(), expected) {
            (false, Some(exp)) => {
                let restricted = IdealPresentation::with_default_vars(projected)?;
                mora::initial_ideal(&restricted, cfg.degree_cap)? == exp
            }
            (true, None) => true,
            _ => false,
        };
        out.push(outcome("ini(J_L) = ini(J)_L", ok, format!("L starts at variable {}", j + 1)));
    }
    Ok(out)
}

/// The polynomial suite: the colength identity, semicontinuity and suffix
/// restrictions of initial ideals.
pub fn polynomial_suite(ideals: &[IdealPresentation], seed: u64, cfg: &Config) -> Result<CorpusSummary> {
    let per: Vec<Vec<Outcome>> = ideals
        .par_iter()
        .enumerate()
        .map(|(k, i)| polynomial_checks(i, seed.wrapping_add(k as u64), cfg))
        .collect::<Result<_>>()?;
    let strict = per
        .iter()
        .filter(|o| o.iter().any(|x| x.name == "e_j(I) <= e_j(ini(I))" && x.detail.split(" vs ").collect::<Vec<_>>().windows(2).any(|w| w[0] != w[1])))
        .count();
    let findings = vec![format!("{strict} of {} ideals have e(I) != e(ini(I)) somewhere", ideals.len())];
    Ok(tally("polynomial", seed, per, findings))
}

/// Oracle agreement: exact shoelace in the plane, and for `n = 3` lattice
/// estimates whose error does not grow along `scales`.
pub fn oracle_suite(ideals: &[MonomialIdeal], scales: &[u32]) -> Result<CorpusSummary> {
    let per: Vec<Vec<Outcome>> = ideals
        .par_iter()
        .map(|i| -> Result<Vec<Outcome>> {
            let p = NewtonPolyhedron::of_monomial(i)?;
            let covol = p.covolume()?;
            let mut out = vec![outcome(
                "staircase colength",
                staircase_count(i)? == i.colength()?,
                format!("{:?}", i.generators()),
            )];
            if i.nvars() == 2 {
                let s = shoelace_covolume(i.generators())?;
                out.push(outcome(
                    "shoelace covolume",
                    s == covol,
                    format!("shoelace {} analytic {}", rational::render(&s), rational::render(&covol)),
                ));
            } else {
                let errs: Vec<Rational> = scales
                    .iter()
                    .map(|&s| Ok((lattice_covolume(&p, s)? - &covol).abs()))
                    .collect::<Result<_>>()?;
                let monotone = errs.windows(2).all(|w| w[1] <= w[0]);
                out.push(outcome(
                    "lattice error nonincreasing",
                    monotone,
                    errs.iter().map(rational::render).collect::<Vec<_>>().join(", "),
                ));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(tally("oracle", 0, per, Vec::new()))
}

fn random_ratio(rng: &mut impl Rng) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(1..=40)), BigInt::from(rng.gen_range(1..=12)))
}

/// A random point of `D`: nondecreasing ratios `t_j / t_{j-1}` with `t_0 = 1`.
pub fn random_point_of_d(rng: &mut impl Rng, n: usize) -> DpPoint {
    let mut ratios: Vec<Rational> = (0..n).map(|_| random_ratio(rng)).collect();
    ratios.sort();
    let mut acc = Rational::one();
    let t = ratios
        .iter()
        .map(|r| {
            acc = &acc * r;
            acc.clone()
        })
        .collect();
    DpPoint::new(t).expect("positive")
}

/// Monotonicity of `f` on `D` and convexity of `D`.
pub fn dp_function_suite(pairs: usize, combos: usize, seed: u64) -> CorpusSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut per = Vec::new();
    let mut made = 0;
    while made < pairs {
        let n = [2, 3, 4][made % 3];
        let a = random_point_of_d(&mut rng, n);
        let b = if rng.gen_bool(0.1) {
            a.clone()
        } else {
            // Scale the ratios by factors >= 1; keep the draw if it stays in D.
            let mut prev = Rational::one();
            let mut acc = Rational::one();
            let mut t = Vec::with_capacity(n);
            for x in a.entries() {
                let ratio = x / &prev;
                prev = x.clone();
                let factor = Rational::one() + Rational::new(BigInt::from(rng.gen_range(0..=6)), BigInt::from(rng.gen_range(1..=6)));
                acc = &acc * ratio * factor;
                t.push(acc.clone());
            }
            DpPoint::new(t).expect("positive")
        };
        if !in_d(&b) {
            continue;
        }
        made += 1;
        let (fa, fb) = (dp_function(&a), dp_function(&b));
        let ok = fa >= fb && ((fa == fb) == (a == b));
        per.push(vec![outcome(
            "f(a) >= f(b), equality iff a = b",
            ok && a.entries().iter().zip(b.entries()).all(|(x, y)| x <= y),
            format!("f(a) = {}, f(b) = {}", rational::render(&fa), rational::render(&fb)),
        )]);
    }
    let lambdas: Vec<Rational> = (0..=4).map(|k| rational::ratio(k, 4)).collect();
    for k in 0..combos {
        let n = [2, 3, 4][k % 3];
        let s = random_point_of_d(&mut rng, n);
        let t = random_point_of_d(&mut rng, n);
        let lambda = &lambdas[k % lambdas.len()];
        let mix: Vec<Rational> = s
            .entries()
            .iter()
            .zip(t.entries())
            .map(|(x, y)| lambda * x + (Rational::one() - lambda) * y)
            .collect();
        let inside = DpPoint::new(mix).map(|p| in_d(&p)).unwrap_or(false);
        per.push(vec![outcome("convex combinations stay in D", inside, format!("lambda = {lambda}"))]);
    }
    tally("dp-function", seed, per, Vec::new())
}
