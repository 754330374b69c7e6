//! Acceptance suite. Every criterion runs at t = 0.1, 0.3 and 0.5 and prints
//! one pass/fail line; the process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use suq2::dqg::AlgElement;
use suq2::report::{cmd_verify, RunConfig, Suite};
use suq2::reps::Sign;
use suq2::verify;
use suq2::{Params, QuantumGroup, RepIndex};

const TS: [f64; 3] = [0.1, 0.3, 0.5];

/// Worst residual-to-tolerance ratio seen, with the label that produced it.
#[derive(Default)]
struct Tally {
    worst_ratio: f64,
    worst: String,
    failures: Vec<String>,
    elapsed: Duration,
}

impl Tally {
    fn residual(&mut self, label: impl Into<String>, residual: f64, tolerance: f64) {
        let label = label.into();
        let ratio = residual / tolerance;
        let within = residual <= tolerance;
        if !within {
            self.failures.push(format!("{label}: {residual:.3e} > {tolerance:.0e}"));
        }
        if ratio > self.worst_ratio || self.worst.is_empty() {
            self.worst_ratio = ratio;
            self.worst = format!("{label} {residual:.2e} (tol {tolerance:.0e})");
        }
    }

    fn fact(&mut self, label: impl Into<String>, holds: bool) {
        if !holds {
            self.failures.push(label.into());
        }
    }

    fn error(&mut self, label: &str, e: suq2::Error) {
        self.failures.push(format!("{label}: {e}"));
    }
}

fn spins(twice_max: u32) -> impl Iterator<Item = RepIndex> {
    RepIndex::up_to(RepIndex::from_twice(twice_max))
}

fn params(t: f64) -> Params {
    Params::new(t).expect("valid t")
}

fn representations(t: f64, tally: &mut Tally) -> suq2::Result<()> {
    let p = params(t);
    for n in spins(8) {
        for sign in [Sign::Plus, Sign::Minus] {
            let r = verify::rep_residuals(&p, n, sign)?;
            let at = |what: &str| format!("t={t} n={n}{sign} {what}");
            for (i, v) in r.relations.into_iter().enumerate() {
                tally.residual(at(&format!("relation {i}")), v, 1e-10);
            }
            tally.residual(at("adjoint"), r.adjoint, 1e-10);
            tally.residual(at("r symmetry"), r.r_symmetry, 1e-10);
            tally.residual(at("casimir scalar (relative)"), r.casimir_relative, 1e-10);
        }
    }
    Ok(())
}

fn gamma(t: f64, tally: &mut Tally) -> suq2::Result<()> {
    let p = params(t);
    for n in spins(6) {
        tally.residual(format!("t={t} n={n}"), verify::gamma_max_residual(&p, n)?, 1e-9);
    }
    Ok(())
}

fn clebsch(t: f64, tally: &mut Tally) -> suq2::Result<()> {
    let qg = QuantumGroup::new(params(t));
    for n in spins(6) {
        for m in spins(6) {
            let r = verify::cg_residuals(&qg, n, m)?;
            let at = |what: &str| format!("t={t} ({n},{m}) {what}");
            tally.fact(at("index set"), r.index_set_ok);
            tally.fact(at("dimension identity"), r.dimension_identity_ok);
            tally.residual(at("isometry"), r.isometry, 1e-9);
            tally.residual(at("orthogonality"), r.orthogonality, 1e-9);
            tally.residual(at("completeness"), r.completeness, 1e-9);
            tally.residual(at("reconstruction"), r.reconstruction, 1e-9);
        }
    }
    for (i, v) in verify::spin_half_pair_vectors(&qg)?.into_iter().enumerate() {
        tally.residual(format!("t={t} explicit (1/2,1/2) vector {i}"), v, 1e-12);
    }
    Ok(())
}

fn hopf(t: f64, tally: &mut Tally) -> suq2::Result<()> {
    let qg = QuantumGroup::new(params(t));
    let window: Vec<RepIndex> = spins(4).collect();
    let support: Vec<RepIndex> = spins(12).collect();
    let battery = verify::hopf_battery(&qg, &support, 11, 2)?;
    let scale = |a: &AlgElement| 1.0 + a.max_abs();
    for (name, a) in &battery {
        let at = |what: &str| format!("t={t} {name} {what}");
        tally.residual(at("counit"), verify::counit_law_residual(&qg, a, &window)? / scale(a), 1e-9);
        for &n in &window {
            tally.residual(at(&format!("antipode law n={n}")), verify::antipode_law_residual(&qg, a, n)? / scale(a), 1e-9);
        }
        for &n in &window {
            for &m in &window {
                for (_, b) in &battery {
                    let hom = verify::homomorphism_residual(&qg, a, b, n, m)? / (scale(a) * scale(b));
                    tally.residual(at(&format!("homomorphism ({n},{m})")), hom, 1e-9);
                }
                tally.residual(at(&format!("R flip ({n},{m})")), verify::r_flip_residual(&qg, a, n, m)? / scale(a), 1e-9);
                tally.residual(at(&format!("tau ({n},{m})")), verify::tau_residual(&qg, a, n, m, 0.37)? / scale(a), 1e-9);
                for &l in &window {
                    let r = verify::coassociativity_residual(&qg, a, n, m, l)? / scale(a);
                    tally.residual(at(&format!("coassociativity ({n},{m},{l})")), r, 1e-9);
                }
            }
        }
    }
    Ok(())
}

fn integrals(t: f64, tally: &mut Tally) -> suq2::Result<()> {
    let qg = QuantumGroup::new(params(t));
    for n in spins(6) {
        let r = verify::delta_h_residuals(&qg, n)?;
        let at = |what: &str| format!("t={t} n={n} {what}");
        tally.residual(at("closed form vs coproduct"), r.closed_vs_cg, 1e-10);
        tally.residual(at("idempotent"), r.idempotent, 1e-10);
        tally.residual(at("self-adjoint"), r.self_adjoint, 1e-10);
        tally.residual(at("rank one"), r.rank_one, 1e-10);
        tally.residual(at("(id x phi) Delta(h) = 1"), r.left_integral, 1e-10);
        tally.residual(at("(psi x id) Delta(h) = 1"), r.right_integral, 1e-10);
        tally.residual(at("(phi x id) Delta(h) = Q^4"), r.modular_element, 1e-10);
    }
    Ok(())
}

fn modular(t: f64, tally: &mut Tally) -> suq2::Result<()> {
    let qg = QuantumGroup::new(params(t));
    for n in spins(4) {
        let (l, r) = verify::modular_automorphism_residuals(&qg, n);
        tally.residual(format!("t={t} n={n} phi"), l, 1e-11);
        tally.residual(format!("t={t} n={n} psi"), r, 1e-11);
    }
    Ok(())
}

fn dual(t: f64, tally: &mut Tally) -> suq2::Result<()> {
    let qg = QuantumGroup::new(params(t));
    let r = verify::dual_residuals(&qg)?;
    let at = |what: &str| format!("t={t} {what}");
    tally.residual(at("coproduct of u"), r.coproduct_u, 1e-11);
    tally.residual(at("antipode matrix"), r.antipode_matrix, 1e-10);
    tally.residual(at("u* = S(u^T)"), r.star_antipode, 1e-10);
    tally.residual(at("unitarity S(u)u"), r.unitarity_left, 1e-9);
    tally.residual(at("unitarity uS(u)"), r.unitarity_right, 1e-9);
    for (i, v) in r.woronowicz.into_iter().enumerate() {
        tally.residual(at(&format!("woronowicz {i}")), v, 1e-9);
    }
    tally.residual(at("haar quadratic"), r.haar_quadratic, 1e-11);
    tally.residual(at("left invariance"), r.left_invariance, 1e-10);
    tally.residual(at("sigma(u_pq)"), r.modular_u, 1e-10);
    tally.residual(at("S^2(u_rj)"), r.antipode_squared, 1e-10);
    Ok(())
}

fn span(t: f64, tally: &mut Tally) -> suq2::Result<()> {
    let qg = QuantumGroup::new(params(t));
    for s in qg.span_check(RepIndex::from_twice(2))? {
        let label = format!("t={t} 2k={} rank {}/{} gap {:.2e}", s.twice_k, s.rank, s.expected, s.relative_gap);
        tally.fact(label, s.full(1e-6));
    }
    Ok(())
}

fn classification(t: f64, tally: &mut Tally) -> suq2::Result<()> {
    for o in verify::classification_battery(&params(t), RepIndex::from_twice(6), 5)? {
        tally.fact(
            format!("t={t} 2n={}{} conjugated={} recovered {:?}", o.twice_n, o.sign, o.conjugated, o.recovered),
            o.ok(),
        );
    }
    Ok(())
}

fn determinism(t: f64, tally: &mut Tally) -> suq2::Result<()> {
    let config = RunConfig { t, n_max: 2, seed: 42, ..RunConfig::default() };
    let first = cmd_verify(&config, Suite::All)?.to_json()?;
    let second = cmd_verify(&config, Suite::All)?.to_json()?;
    tally.fact(format!("t={t} byte-identical reports"), first == second);
    Ok(())
}

type Criterion = fn(f64, &mut Tally) -> suq2::Result<()>;

fn main() -> ExitCode {
    let criteria: [(u32, &str, Criterion, Option<Duration>); 10] = [
        (1, "representations", representations, Some(Duration::from_secs(1))),
        (2, "gamma identity", gamma, Some(Duration::from_secs(1))),
        (3, "clebsch-gordan", clebsch, Some(Duration::from_secs(5))),
        (4, "hopf axioms on A", hopf, Some(Duration::from_secs(10))),
        (5, "cointegral and integrals", integrals, Some(Duration::from_secs(2))),
        (6, "modular automorphisms", modular, None),
        (7, "dual", dual, Some(Duration::from_secs(10))),
        (8, "surjectivity evidence", span, None),
        (9, "classification round trip", classification, None),
        (10, "determinism", determinism, None),
    ];
    let mut all_pass = true;
    for (number, name, run, budget) in criteria {
        let mut tally = Tally::default();
        let mut slowest = Duration::ZERO;
        for t in TS {
            let start = Instant::now();
            if let Err(e) = run(t, &mut tally) {
                tally.error(&format!("t={t}"), e);
            }
            slowest = slowest.max(start.elapsed());
        }
        tally.elapsed = slowest;
        if let Some(limit) = budget {
            tally.fact(format!("runtime {slowest:?} exceeds {limit:?}"), slowest < limit);
        }
        let pass = tally.failures.is_empty();
        all_pass &= pass;
        let worst = if tally.worst.is_empty() { String::new() } else { format!("; worst {}", tally.worst) };
        println!(
            "criterion {number:>2} {name}: {} (slowest t {:.3}s{worst})",
            if pass { "PASS" } else { "FAIL" },
            tally.elapsed.as_secs_f64(),
        );
        for f in tally.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
