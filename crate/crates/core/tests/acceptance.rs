//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use lctforge::analysis::{analyze, convergence_experiment, AnalysisOptions, CHANGE_BOUND};
use lctforge::config::Config;
use lctforge::corpus;
use lctforge::exponent::Exponent;
use lctforge::ideal::{parse_ideal, IdealPresentation};
use lctforge::lct::{dp_sum, is_diagonal, lct_monomial, Verdict};
use lctforge::monomial::MonomialIdeal;
use lctforge::mora;
use lctforge::multiplicity::{mixed_multiplicities_generic, mixed_multiplicities_polyhedral};
use lctforge::newton::{polyhedra_equal, NewtonPolyhedron};
use lctforge::ops::{apply_linear_change, LinearChange};
use lctforge::rational::{self, ratio, Rational};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ideal(vars: &str, gens: &str) -> IdealPresentation {
    parse_ideal(&format!("vars: {vars}\ngens: {gens}")).unwrap()
}

fn mono(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(n, gens.iter().map(|g| Exponent::new(g.to_vec()))).unwrap()
}

fn smooth_curve_regression() -> Check {
    let cfg = Config::default();
    let i = ideal("x, y", "x + y^2; y^3");
    let ini = mora::initial_ideal(&i, cfg.degree_cap).map_err(|e| e.to_string())?;
    ensure(ini == mono(2, &[&[0, 2], &[1, 1], &[2, 0]]), || format!("ini(I) = {ini:?}"))?;
    let c = mora::colength(&i, cfg.degree_cap).unwrap();
    let c_ini = ini.colength().unwrap();
    ensure(c == 3 && c_ini == 3, || format!("colengths {c}, {c_ini}"))?;
    let e = mixed_multiplicities_generic(&i, 0, &cfg).unwrap();
    ensure(e.trials.len() == 3 && e.values == [1, 3], || format!("e(I) = {:?}", e.values))?;
    let e_ini = mixed_multiplicities_polyhedral(&ini).unwrap();
    ensure(e_ini.values == [2, 4], || format!("e(ini I) = {:?}", e_ini.values))?;
    Ok("ini = <y^2, xy, x^2>, colength 3, e = (1, 3), e(ini) = (2, 4)".into())
}

fn tilted_pair_regression() -> Check {
    let i = ideal("x, y", "(x+y)^2 + y^4; (x+y)*y^2");
    let j = ideal("x, y", "x^2 + y^4; x*y^2");
    let shear = LinearChange::from_integers(&[vec![1, -1], vec![0, 1]]).unwrap();
    let moved = apply_linear_change(&i, &shear).unwrap();
    ensure(moved.generators() == j.generators(), || format!("phi*(I) = {}", moved.render()))?;
    let pj = NewtonPolyhedron::of_ideal(&j).unwrap();
    let target = NewtonPolyhedron::of_monomial(&mono(2, &[&[2, 0], &[0, 4]])).unwrap();
    ensure(polyhedra_equal(&pj, &target).unwrap(), || "Newton polyhedron of J".into())?;
    ensure(pj.diagonal_witness() == Some(vec![2, 4]), || format!("witness {:?}", pj.diagonal_witness()))?;
    let rj = analyze(&j, &AnalysisOptions::default()).unwrap();
    ensure(rj.lct.bounds.exact == Some(ratio(3, 4)), || format!("lct(J) = {:?}", rj.lct.bounds.exact))?;
    ensure(rj.e_vector == [2, 8], || format!("e(J) = {:?}", rj.e_vector))?;
    let closed = ratio(1, 2) + ratio(2, 8);
    ensure(rj.dp == closed && closed == ratio(3, 4), || format!("DP(J) = {}", rational::render(&rj.dp)))?;
    let ri = analyze(&i, &AnalysisOptions::default()).unwrap();
    ensure(ri.dp == ratio(3, 4), || format!("DP(I) = {}", rational::render(&ri.dp)))?;
    ensure(ri.diagonal.verdict != Verdict::Pass, || "I reported diagonal".into())?;
    Ok(format!(
        "J: witness (2, 4), lct 3/4, e (2, 8), DP 3/4; I: DP 3/4, diagonal {}",
        ri.diagonal.verdict.as_str()
    ))
}

fn diagonal_closed_forms() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10 {
        let abc: Vec<u32> = (0..3).map(|_| rng.gen_range(1..=9)).collect();
        let m = MonomialIdeal::diagonal(&abc);
        let p = NewtonPolyhedron::of_monomial(&m).unwrap();
        let lct = lct_monomial(&p).unwrap();
        let expected: Rational = abc.iter().map(|&a| ratio(1, a as i64)).sum();
        ensure(lct == expected, || format!("{abc:?}: lct {}", rational::render(&lct)))?;
        let mut sorted = abc.clone();
        sorted.sort();
        let products: Vec<u64> = (1..=3).map(|j| sorted[..j].iter().map(|&a| a as u64).product()).collect();
        let e = mixed_multiplicities_polyhedral(&m).unwrap();
        ensure(e.values == products, || format!("{abc:?}: e {:?}", e.values))?;
        ensure(dp_sum(&e) == lct, || format!("{abc:?}: DP != lct"))?;
        let d = is_diagonal(&m).unwrap();
        ensure(d.diagonal && d.witness.as_deref() == Some(&abc[..]), || format!("{abc:?}: {d:?}"))?;
    }
    Ok("10 triples: lct = 1/a + 1/b + 1/c, e_j = products, DP = lct, witness".into())
}

fn maximal_powers() -> Check {
    for n in 1..=3usize {
        for k in 1..=5u32 {
            let m = MonomialIdeal::maximal_power(n, k);
            let r = analyze(&m.to_presentation(), &AnalysisOptions::default()).unwrap();
            let powers: Vec<u64> = (1..=n as u32).map(|j| (k as u64).pow(j)).collect();
            ensure(r.e_vector == powers, || format!("m^{k} in {n}: e {:?}", r.e_vector))?;
            let target = ratio(n as i64, k as i64);
            ensure(r.dp == target && r.lct.bounds.exact == Some(target.clone()), || {
                format!("m^{k} in {n}: DP {}", rational::render(&r.dp))
            })?;
            ensure(r.audit.maximal_equality.verdict == Verdict::Pass, || format!("m^{k} in {n}: audit"))?;
        }
    }
    let cfg = Config::default();
    let ideals = corpus::monomial_corpus(&[2, 3], 100, 41);
    ideals.par_iter().try_for_each(|i| {
        let r = analyze(&i.to_presentation(), &AnalysisOptions { config: cfg.clone(), ..Default::default() }).unwrap();
        let fires = r.audit.maximal_equality.verdict == Verdict::Pass;
        let power = NewtonPolyhedron::of_monomial(&MonomialIdeal::maximal_power(i.nvars(), i.ord())).unwrap();
        let closure_is_power = polyhedra_equal(&r.polyhedron, &power).unwrap();
        ensure(fires == closure_is_power, || format!("{:?}: audit fires {fires}", i.generators()))?;
        ensure(r.audit.maximal_equality.verdict != Verdict::Fail, || format!("{:?}", i.generators()))
    })?;
    Ok("m^k for n <= 3, k <= 5 and 100 corpus ideals".into())
}

fn summary_line(s: &corpus::CorpusSummary) -> Check {
    let bad: Vec<String> = s
        .properties
        .iter()
        .filter(|p| p.violations > 0)
        .map(|p| format!("{}: {} ({:?})", p.name, p.violations, p.examples))
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    let checks: u64 = s.properties.iter().map(|p| p.checked).sum();
    Ok(format!("{} instances, {} checks, 0 violations", s.size, checks))
}

fn monomial_suite() -> Check {
    let cfg = Config::default();
    let ideals = corpus::monomial_corpus(&[2, 3], 200, 1);
    ensure(ideals.len() >= 200, || "corpus too small".into())?;
    summary_line(&corpus::monomial_suite(&ideals, 1, &cfg).map_err(|e| e.to_string())?)
}

fn polynomial_suite() -> Check {
    let cfg = Config::default();
    let ideals = corpus::polynomial_corpus(60, 1, 5, &cfg).map_err(|e| e.to_string())?;
    ensure(ideals.iter().all(|i| i.nvars() == 2), || "wrong dimension".into())?;
    ensure(
        ideals.iter().all(|i| i.generators().iter().all(|g| g.degree() <= 5)),
        || "degree above 5".into(),
    )?;
    summary_line(&corpus::polynomial_suite(&ideals, 1, &cfg).map_err(|e| e.to_string())?)
}

fn convergence() -> Check {
    let cfg = Config::default();
    let i = ideal("x, y", "(x+y)^2 + y^4; (x+y)*y^2");
    let known = ratio(3, 4);
    let mut gaps = Vec::new();
    for seed in [1u64, 2] {
        let phi = LinearChange::random(2, CHANGE_BOUND, seed);
        let table = convergence_experiment(&i, 4, &phi, seed, &known, Some(&known), &cfg).map_err(|e| e.to_string())?;
        ensure(table.rows.len() == 4 && table.error.is_none(), || format!("seed {seed}: {:?}", table.error))?;
        for row in &table.rows {
            ensure(row.t_dp <= row.t_lct && row.t_lct <= known, || {
                format!(
                    "seed {seed}, t = {}: {} <= {} <= 3/4 fails",
                    row.t,
                    rational::render(&row.t_dp),
                    rational::render(&row.t_lct)
                )
            })?;
            gaps.push(rational::render(&row.gap));
        }
    }
    Ok(format!("8 rows within bounds; gaps {}", gaps.join(", ")))
}

fn dp_function() -> Check {
    let s = corpus::dp_function_suite(500, 500, 1);
    ensure(s.properties.iter().all(|p| p.checked == 500), || "wrong sample counts".into())?;
    summary_line(&s)
}

fn oracles() -> Check {
    let ideals = corpus::monomial_corpus(&[2, 3], 200, 1);
    summary_line(&corpus::oracle_suite(&ideals, &[8, 16, 32]).map_err(|e| e.to_string())?)
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("smooth curve regression", smooth_curve_regression),
        ("tilted pair regression", tilted_pair_regression),
        ("diagonal closed forms", diagonal_closed_forms),
        ("maximal-ideal powers", maximal_powers),
        ("monomial property suite", monomial_suite),
        ("polynomial property suite", polynomial_suite),
        ("convergence experiment", convergence),
        ("DP function on D", dp_function),
        ("oracle agreement", oracles),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f32();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{secs:.1}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.1}s]", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
