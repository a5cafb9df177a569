//! The full pipeline for one ideal: invariants, threshold bounds, the
//! diagonality decision, the inequality audit, and the degeneration
//! experiment `t·DP(ini(φ*(I)^t))`.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::ideal::IdealPresentation;
use crate::lct::{
    dp_sum, howald_boundary_check, is_diagonal_with, lct_monomial, LctResult, Verdict,
};
use crate::monomial::MonomialIdeal;
use crate::mora;
use crate::multiplicity::{mixed_multiplicities_generic, mixed_multiplicities_polyhedral, ord, MixedMultiplicityVector};
use crate::newton::{polyhedra_equal, NewtonPolyhedron};
use crate::ops::{apply_linear_change, ideal_power, LinearChange};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, Default)]
pub struct AnalysisOptions {
    pub seed: u64,
    pub config: Config,
    /// Extra coordinate changes tried when bounding `lct` from above.
    pub changes: Vec<LinearChange>,
    /// The caller asserts that the input is Newton non-degenerate.
    pub nondegenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub verdict: Verdict,
    pub detail: String,
}

impl Check {
    fn new(verdict: Verdict, detail: impl Into<String>) -> Self {
        Check {
            verdict,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audit {
    /// `e_j^2 <= e_{j-1} e_{j+1}` with `e_0 = 1`.
    pub multiplicity_chain: Check,
    pub dp_le_lct: Check,
    /// `n^n <= e(I)·DP(I)^n`.
    pub am_gm: Check,
    /// `DP = lct = n/ord` exactly when the closure of `I` is `m^ord`.
    pub maximal_equality: Check,
    /// Polyhedral and generic-section vectors agree (monomial input only).
    pub two_path: Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalReport {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u32>>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LctReport {
    #[serde(flatten)]
    pub bounds: LctResult,
    /// `lct(I^0)` in the given coordinates.
    #[serde(with = "rational::as_string")]
    pub term_ideal_lct: Rational,
    /// The change realizing the upper bound, when it is not the identity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_change: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub seed: u64,
    pub trials: u32,
    pub degree_cap: u32,
    pub coefficient_bound: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<(String, u64)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    pub is_monomial: bool,
    pub colength: u64,
    pub initial_ideal: Vec<Exponent>,
    pub ord: u32,
    pub mixed_multiplicities: Vec<MixedMultiplicityVector>,
    pub e_vector: Vec<u64>,
    pub e: u64,
    #[serde(with = "rational::as_string")]
    pub dp: Rational,
    pub lct: LctReport,
    #[serde(with = "rational::option_as_string")]
    pub arnold: Option<Rational>,
    pub diagonal: DiagonalReport,
    pub audit: Audit,
    pub polyhedron: NewtonPolyhedron,
    pub metadata: Metadata,
}

fn render_matrix(c: &LinearChange) -> Vec<Vec<String>> {
    c.matrix().iter().map(|r| r.iter().map(rational::render).collect()).collect()
}

/// The shears `x_i ↦ x_i + c·x_j` with `c ∈ {±1, ±2}`.
pub fn elementary_shears(n: usize) -> Vec<LinearChange> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for c in [-2i64, -1, 1, 2] {
                let rows: Vec<Vec<i64>> = (0..n)
                    .map(|r| {
                        (0..n)
                            .map(|k| match (r == k, r == i && k == j) {
                                (true, _) => 1,
                                (_, true) => c,
                                _ => 0,
                            })
                            .collect()
                    })
                    .collect();
                out.push(LinearChange::from_integers(&rows).expect("unipotent"));
            }
        }
    }
    out
}

/// `lct(φ*(I)^0)` over the given changes: each is an upper bound for
/// `lct(I)`. Returns the smallest with the change attaining it.
fn best_upper_bound(ideal: &IdealPresentation, changes: &[LinearChange]) -> Result<(Rational, Option<LinearChange>)> {
    let mut best = lct_monomial(&NewtonPolyhedron::of_ideal(ideal)?)?;
    let mut arg = None;
    for c in changes {
        let p = NewtonPolyhedron::of_ideal(&apply_linear_change(ideal, c)?)?;
        if !p.is_finite_colength() {
            continue;
        }
        let b = lct_monomial(&p)?;
        if b < best {
            best = b;
            arg = Some(c.clone());
        }
    }
    Ok((best, arg))
}

fn timed<T>(log: &mut Vec<(String, u64)>, label: &str, f: impl FnOnce() -> T) -> T {
    let start = std::time::Instant::now();
    let out = f();
    log.push((label.to_string(), start.elapsed().as_millis() as u64));
    out
}

/// Runs the whole pipeline on one ideal of finite colength.
pub fn analyze(ideal: &IdealPresentation, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    analyze_timed(ideal, opts, false)
}

pub fn analyze_timed(ideal: &IdealPresentation, opts: &AnalysisOptions, with_timings: bool) -> Result<AnalysisReport> {
    let cfg = &opts.config;
    cfg.validate()?;
    let n = ideal.nvars();
    let mut log = Vec::new();

    let ini = timed(&mut log, "initial_ideal", || mora::initial_ideal(ideal, cfg.degree_cap))?;
    if ini.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let colength = ini.colength()?;
    let polyhedron = NewtonPolyhedron::of_ideal(ideal)?;
    let order = ord(ideal);
    let term_ideal_lct = lct_monomial(&polyhedron)?;

    let monomial = if ideal.is_monomial() {
        Some(MonomialIdeal::from_presentation(ideal)?)
    } else {
        None
    };
    let mut vectors = Vec::new();
    if let Some(m) = &monomial {
        vectors.push(timed(&mut log, "polyhedral", || mixed_multiplicities_polyhedral(m))?);
    }
    vectors.push(timed(&mut log, "generic_section", || {
        mixed_multiplicities_generic(ideal, opts.seed, cfg)
    })?);
    let primary = vectors[0].clone();
    let dp = dp_sum(&primary);
    let e = primary.samuel();

    let (bounds, upper_change) = if monomial.is_some() {
        let exact = term_ideal_lct.clone();
        (
            LctResult {
                exact: Some(exact.clone()),
                lower: dp.clone(),
                upper: exact,
            },
            None,
        )
    } else {
        let mut changes = elementary_shears(n);
        changes.extend(opts.changes.iter().cloned());
        let (upper, arg) = timed(&mut log, "upper_bound", || best_upper_bound(ideal, &changes))?;
        let exact = if opts.nondegenerate {
            Some(term_ideal_lct.clone())
        } else if primary.stable && dp == upper {
            Some(upper.clone())
        } else {
            None
        };
        (
            LctResult {
                exact,
                lower: dp.clone(),
                upper,
            },
            arg.as_ref().map(render_matrix),
        )
    };
    if opts.nondegenerate && !bounds.is_consistent() {
        return Err(Error::InvalidArgument(format!(
            "the non-degeneracy assertion gives lct(I) = {}, outside [{}, {}]",
            rational::render(&term_ideal_lct),
            rational::render(&bounds.lower),
            rational::render(&bounds.upper)
        )));
    }

    let diagonal = decide_diagonal(&polyhedron, &primary, &vectors, &term_ideal_lct, &dp, opts)?;
    let audit = audit_inequalities(n, order, &primary, &vectors, &dp, &bounds, &polyhedron, monomial.as_ref())?;
    let arnold = bounds.arnold();

    Ok(AnalysisReport {
        n,
        vars: ideal.vars().to_vec(),
        generators: ideal.rendered_generators(),
        is_monomial: monomial.is_some(),
        colength,
        initial_ideal: ini.generators().to_vec(),
        ord: order,
        mixed_multiplicities: vectors,
        e_vector: primary.values.clone(),
        e,
        dp,
        lct: LctReport {
            bounds,
            term_ideal_lct,
            upper_change,
        },
        arnold,
        diagonal,
        audit,
        polyhedron,
        metadata: Metadata {
            seed: opts.seed,
            trials: cfg.trials,
            degree_cap: cfg.degree_cap,
            coefficient_bound: cfg.coefficient_bound,
            timings_ms: with_timings.then_some(log),
        },
    })
}

fn decide_diagonal(
    polyhedron: &NewtonPolyhedron,
    primary: &MixedMultiplicityVector,
    vectors: &[MixedMultiplicityVector],
    term_ideal_lct: &Rational,
    dp: &Rational,
    opts: &AnalysisOptions,
) -> Result<DiagonalReport> {
    let witness = polyhedron.diagonal_witness();
    if vectors.len() == 2 {
        let d = is_diagonal_with(polyhedron, primary)?;
        return Ok(DiagonalReport {
            verdict: Verdict::from_bool(d.diagonal),
            witness: d.witness,
            reason: format!(
                "monomial ideal: lct(I^0) = {}, DP(I) = {}",
                rational::render(term_ideal_lct),
                rational::render(dp)
            ),
        });
    }
    if opts.nondegenerate {
        let verdict = Verdict::from_bool(witness.is_some());
        return Ok(DiagonalReport {
            verdict,
            witness,
            reason: "asserted Newton non-degenerate: diagonal iff the polyhedron is a coordinate simplex".into(),
        });
    }
    if !primary.stable {
        return Ok(DiagonalReport {
            verdict: Verdict::Undetermined,
            witness: None,
            reason: "generic-section trials disagree, so DP(I) is not reliable".into(),
        });
    }
    let numeric = term_ideal_lct == dp;
    // A diagonal ideal has the polyhedron of its closure, which is a simplex.
    if numeric && witness.is_none() {
        return Ok(DiagonalReport {
            verdict: Verdict::Undetermined,
            witness: None,
            reason: "lct(I^0) = DP(I) but the polyhedron is not a coordinate simplex; the generic draw is suspect".into(),
        });
    }
    Ok(DiagonalReport {
        verdict: Verdict::from_bool(numeric),
        witness: if numeric { witness } else { None },
        reason: format!(
            "lct(I^0) = {}, DP(I) = {} from generic sections",
            rational::render(term_ideal_lct),
            rational::render(dp)
        ),
    })
}

#[allow(clippy::too_many_arguments)]
fn audit_inequalities(
    n: usize,
    order: u32,
    primary: &MixedMultiplicityVector,
    vectors: &[MixedMultiplicityVector],
    dp: &Rational,
    bounds: &LctResult,
    polyhedron: &NewtonPolyhedron,
    monomial: Option<&MonomialIdeal>,
) -> Result<Audit> {
    let r = rational::render;
    let chain = Check::new(
        Verdict::from_bool(primary.satisfies_chain() && primary.first() == order as u64),
        format!("e = {:?}, ord = {order}", primary.values),
    );
    let dp_le_lct = match &bounds.exact {
        Some(l) => Check::new(Verdict::from_bool(dp <= l), format!("DP = {}, lct = {}", r(dp), r(l))),
        None => Check::new(Verdict::NotApplicable, "lct is not known exactly"),
    };
    let nn = Rational::from_integer(BigInt::from(n).pow(n as u32));
    let rhs = Rational::from_integer(BigInt::from(primary.samuel())) * dp.pow(n as i32);
    let am_gm = Check::new(Verdict::from_bool(nn <= rhs), format!("n^n = {}, e·DP^n = {}", r(&nn), r(&rhs)));

    let target = Rational::new(BigInt::from(n), BigInt::from(order));
    let equal = *dp == target;
    let closure_is_power = match monomial {
        Some(m) => {
            let power = NewtonPolyhedron::of_monomial(&MonomialIdeal::maximal_power(m.nvars(), order))?;
            polyhedra_equal(polyhedron, &power)?
        }
        // Rees: I ⊆ m^r with e(I) = e(m^r) forces the closures to agree.
        None => primary.samuel() == (order as u64).pow(n as u32),
    };
    let detail = format!(
        "DP = {}, n/ord = {}, closure is m^{order}: {closure_is_power}",
        r(dp),
        r(&target)
    );
    let maximal_equality = match (equal, closure_is_power) {
        (true, true) => Check::new(Verdict::Pass, detail),
        (false, false) => Check::new(Verdict::NotApplicable, detail),
        _ => Check::new(Verdict::Fail, detail),
    };

    let two_path = if vectors.len() == 2 {
        Check::new(
            Verdict::from_bool(vectors[0].values == vectors[1].values),
            format!("polyhedral {:?}, generic {:?}", vectors[0].values, vectors[1].values),
        )
    } else {
        Check::new(Verdict::NotApplicable, "only the generic-section path applies")
    };
    if monomial.is_some() && !howald_boundary_check(polyhedron)? {
        return Err(Error::Internal("Howald boundary probe failed".into()));
    }
    Ok(Audit {
        multiplicity_chain: chain,
        dp_le_lct,
        am_gm,
        maximal_equality,
        two_path,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub t: u32,
    pub initial_ideal: Vec<Exponent>,
    #[serde(with = "rational::as_string")]
    pub t_dp: Rational,
    #[serde(with = "rational::as_string")]
    pub t_lct: Rational,
    #[serde(with = "rational::as_string")]
    /// `|t·DP(M_t) - DP(I)|`.
    pub gap: Rational,
    /// `t·DP(M_t) <= t·lct(M_t)`.
    pub dp_le_lct: Verdict,
    /// `t·lct(M_t) <= lct(I)`.
    pub bound: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub seed: u64,
    pub change: Vec<Vec<String>>,
    #[serde(with = "rational::as_string")]
    pub dp: Rational,
    #[serde(with = "rational::option_as_string")]
    pub lct: Option<Rational>,
    pub rows: Vec<ConvergenceRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ConvergenceTable {
    pub fn all_pass(&self) -> bool {
        self.error.is_none()
            && self
                .rows
                .iter()
                .all(|r| r.dp_le_lct == Verdict::Pass && r.bound != Verdict::Fail)
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("t\tt_dp\tt_lct\tgap\tdp_le_lct\tbound\n");
        for row in &self.rows {
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                row.t,
                rational::render(&row.t_dp),
                rational::render(&row.t_lct),
                rational::render(&row.gap),
                row.dp_le_lct.as_str(),
                row.bound.as_str()
            ));
        }
        if let Some(e) = &self.error {
            s.push_str(&format!("# stopped: {e}\n"));
        }
        s
    }
}

/// Coefficient bound for the random change of the degeneration experiment.
/// Powers of the transformed ideal grow quickly, so the entries stay small.
pub const CHANGE_BOUND: i64 = 3;

/// For `t = 1..=t_max`, computes `M_t = ini(φ*(I)^t)` and the rows
/// `(t, t·DP(M_t), t·lct(M_t))`. `dp` is `DP(I)` and `lct` the exact
/// threshold when known. A resource error at some `t` ends the table early
/// and is recorded in `error`.
pub fn convergence_experiment(
    ideal: &IdealPresentation,
    t_max: u32,
    change: &LinearChange,
    seed: u64,
    dp: &Rational,
    lct: Option<&Rational>,
    cfg: &Config,
) -> Result<ConvergenceTable> {
    if t_max == 0 || t_max > cfg.tmax_cap {
        return Err(Error::CapExceeded {
            what: "t_max",
            value: t_max as u64,
            cap: cfg.tmax_cap as u64,
        });
    }
    let moved = apply_linear_change(ideal, change)?;
    // m^D ⊆ φ*(I) gives m^{tD} ⊆ φ*(I)^t, which bounds every degree below.
    let corner = mora::standard_basis(&moved, cfg.degree_cap)?.maximal_power_index(cfg.degree_cap)?;
    let mut rows = Vec::new();
    let mut error = None;
    for t in 1..=t_max {
        let step = || -> Result<ConvergenceRow> {
            let power = ideal_power(&moved, t, cfg.power_cap)?;
            let m = mora::initial_ideal_with_corner(&power, corner * t, cfg.degree_cap)?;
            let e = mixed_multiplicities_polyhedral(&m)?;
            let tq = Rational::from_integer(BigInt::from(t));
            let t_dp = dp_sum(&e) * &tq;
            let t_lct = lct_monomial(&NewtonPolyhedron::of_monomial(&m)?)? * &tq;
            let bound = match lct {
                Some(l) => Verdict::from_bool(&t_lct <= l),
                None => Verdict::NotApplicable,
            };
            Ok(ConvergenceRow {
                t,
                initial_ideal: m.generators().to_vec(),
                gap: (&t_dp - dp).abs(),
                dp_le_lct: Verdict::from_bool(t_dp <= t_lct),
                t_dp,
                t_lct,
                bound,
            })
        };
        match step() {
            Ok(row) => rows.push(row),
            Err(e) if e.is_resource() => {
                error = Some(e.to_string());
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ConvergenceTable {
        seed,
        change: render_matrix(change),
        dp: dp.clone(),
        lct: lct.cloned(),
        rows,
        error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::parse_ideal;
    use crate::rational::{int, ratio};

    fn ideal(gens: &str) -> IdealPresentation {
        parse_ideal(&format!("vars: x, y\ngens: {gens}")).unwrap()
    }

    #[test]
    fn straight_pair() {
        let r = analyze(&ideal("x^2 + y^4; x*y^2"), &AnalysisOptions::default()).unwrap();
        assert_eq!(r.e_vector, vec![2, 8]);
        assert_eq!(r.dp, ratio(3, 4));
        assert_eq!(r.lct.bounds.exact, Some(ratio(3, 4)));
        assert_eq!(r.diagonal.verdict, Verdict::Pass);
        assert_eq!(r.diagonal.witness, Some(vec![2, 4]));
        assert_eq!(r.colength, 8);
    }

    #[test]
    fn tilted_pair() {
        let r = analyze(&ideal("(x+y)^2 + y^4; (x+y)*y^2"), &AnalysisOptions::default()).unwrap();
        assert_eq!(r.e_vector, vec![2, 8]);
        assert_eq!(r.dp, ratio(3, 4));
        assert_eq!(r.lct.term_ideal_lct, int(1));
        assert_eq!(r.lct.bounds.exact, Some(ratio(3, 4)));
        assert_eq!(r.diagonal.verdict, Verdict::Fail);
        assert_eq!(r.audit.dp_le_lct.verdict, Verdict::Pass);
    }

    #[test]
    fn maximal_square() {
        let r = analyze(&ideal("x^2; x*y; y^2"), &AnalysisOptions::default()).unwrap();
        assert_eq!(r.lct.bounds.exact, Some(int(1)));
        assert_eq!(r.dp, int(1));
        assert_eq!(r.diagonal.witness, Some(vec![2, 2]));
        assert_eq!(r.audit.maximal_equality.verdict, Verdict::Pass);
        assert_eq!(r.audit.two_path.verdict, Verdict::Pass);
    }

    #[test]
    fn smooth_curve() {
        let r = analyze(&ideal("x + y^2; y^3"), &AnalysisOptions::default()).unwrap();
        assert_eq!(r.e_vector, vec![1, 3]);
        assert_eq!(r.dp, ratio(4, 3));
        assert!(r.lct.bounds.lower <= r.lct.bounds.upper);
    }

    #[test]
    fn staircase_audit() {
        let r = analyze(&ideal("x^2; x*y; y^3"), &AnalysisOptions::default()).unwrap();
        assert_eq!(r.dp, ratio(9, 10));
        assert_eq!(r.audit.dp_le_lct.verdict, Verdict::Pass);
        assert_eq!(r.audit.maximal_equality.verdict, Verdict::NotApplicable);
        assert_eq!(r.diagonal.verdict, Verdict::Fail);
    }

    #[test]
    fn infinite_colength() {
        assert!(matches!(
            analyze(&ideal("x"), &AnalysisOptions::default()),
            Err(Error::InfiniteColength(_))
        ));
    }

    #[test]
    fn monomial_identity_has_zero_gap() {
        let i = ideal("x^2; y^4");
        let cfg = Config::default();
        let t = convergence_experiment(&i, 3, &LinearChange::identity(2), 0, &ratio(3, 4), Some(&ratio(3, 4)), &cfg)
            .unwrap();
        assert_eq!(t.rows.len(), 3);
        assert!(t.rows.iter().all(|r| r.gap == int(0)));
        assert!(t.all_pass());
        assert!(convergence_experiment(&i, 50, &LinearChange::identity(2), 0, &ratio(3, 4), None, &cfg).is_err());
    }
}
