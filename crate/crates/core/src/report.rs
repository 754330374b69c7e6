//! Run configuration, check records and the reports emitted by the CLI.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dqg::{left_integral_block, right_integral_block};
use crate::dual::haar_quadratic_closed_form;
use crate::error::{Error, Result};
use crate::group::QuantumGroup;
use crate::linalg::CMat;
use crate::params::{Params, RepIndex, Weight, DEFAULT_T, DEFAULT_TOL};
use crate::reps::{self, Sign};
use crate::verify;

pub const SCHEMA_VERSION: u32 = 1;
/// Spin 5, doubled.
pub const DEFAULT_TWICE_N_MAX: u32 = 10;

/// Components used for the triple-product Hopf checks are capped at spin 2.
const HOPF_WINDOW_CAP: RepIndex = RepIndex::from_twice(4);
const MODULAR_CAP: RepIndex = RepIndex::from_twice(4);
const SPAN_CAP: RepIndex = RepIndex::from_twice(4);
/// Required `sigma_min / sigma_max` among the expected singular values in the span check.
pub const SPAN_MIN_GAP: f64 = 1e-6;
const FORMAL_WORD_LENGTH: usize = 3;
const RANDOM_ELEMENTS: usize = 2;
const TAU_PARAMETER: f64 = 0.37;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hopf,
    Reps,
    Clebsch,
    Dqg,
    Dual,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::Reps => "reps",
            Suite::Clebsch => "clebsch",
            Suite::Dqg => "dqg",
            Suite::Dual => "dual",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub t: f64,
    /// Largest spin, doubled.
    pub n_max: u32,
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub format: Format,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { t: DEFAULT_T, n_max: DEFAULT_TWICE_N_MAX, tol_abs: DEFAULT_TOL, tol_rel: DEFAULT_TOL, format: Format::Json, seed: 0, out: None }
    }
}

impl RunConfig {
    pub fn params(&self) -> Result<Params> {
        Params::with_tolerances(self.t, self.tol_abs, self.tol_rel)
    }

    pub fn n_max(&self) -> RepIndex {
        RepIndex::from_twice(self.n_max)
    }
}

/// The part of the configuration that determines report contents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub t: f64,
    pub n_max: u32,
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub seed: u64,
}

impl From<&RunConfig> for ConfigEcho {
    fn from(c: &RunConfig) -> Self {
        Self { t: c.t, n_max: c.n_max, tol_abs: c.tol_abs, tol_rel: c.tol_rel, seed: c.seed }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// The identity being certified, in words.
    pub identity: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(id: impl Into<String>, identity: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        // NaN residuals fail.
        let pass = residual <= tolerance;
        Self { id: id.into(), identity: identity.into(), residual, tolerance, pass }
    }

    /// A yes/no fact, recorded with residual 0 or 1 against tolerance 0.
    pub fn exact(id: impl Into<String>, identity: impl Into<String>, holds: bool) -> Self {
        Self::new(id, identity, if holds { 0.0 } else { 1.0 }, 0.0)
    }
}

/// A table cell: integer labels (doubled spins and weights) or reals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => format!("{x:?}"),
        }
    }
}

impl From<i32> for Cell {
    fn from(v: i32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub config: ConfigEcho,
    pub summary: Summary,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(suite: &str, config: &RunConfig, mut checks: Vec<Check>, tables: Vec<Table>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary { total: checks.len(), passed, failed: checks.len() - passed };
        Self {
            schema: SCHEMA_VERSION,
            suite: suite.into(),
            config: config.into(),
            pass: summary.failed == 0,
            summary,
            checks,
            tables,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    fn checks_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "identity", "residual", "tolerance", "pass"])?;
        for c in &self.checks {
            w.write_record([
                c.id.clone(),
                c.identity.clone(),
                format!("{:?}", c.residual),
                format!("{:?}", c.tolerance),
                c.pass.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Writes the report. JSON goes to `out` (a file) or stdout. CSV writes
    /// `checks.csv` plus one file per table into `out` (a directory), or
    /// prints every table to stdout preceded by a `# name` line.
    pub fn emit(&self, format: Format, out: Option<&Path>) -> Result<()> {
        match (format, out) {
            (Format::Json, Some(path)) => fs::write(path, self.to_json()?)?,
            (Format::Json, None) => print!("{}", self.to_json()?),
            (Format::Csv, Some(dir)) => {
                fs::create_dir_all(dir)?;
                fs::write(dir.join("checks.csv"), self.checks_csv()?)?;
                for t in &self.tables {
                    fs::write(dir.join(format!("{}.csv", t.name)), t.to_csv()?)?;
                }
            }
            (Format::Csv, None) => {
                let mut s = format!("# checks\n{}", self.checks_csv()?);
                for t in &self.tables {
                    let _ = write!(s, "\n# {}\n{}", t.name, t.to_csv()?);
                }
                print!("{s}");
            }
        }
        Ok(())
    }
}

fn spins(n_max: RepIndex) -> Vec<RepIndex> {
    RepIndex::up_to(n_max).collect()
}

fn tol(params: &Params, scale: f64) -> f64 {
    params.tol_abs() + params.tol_rel() * scale
}

fn complex_cells(z: num_complex::Complex64) -> [Cell; 2] {
    [Cell::Real(z.re), Cell::Real(z.im)]
}

// ---------------------------------------------------------------- suites

pub fn hopf_checks(params: &Params, n_max: RepIndex) -> Result<Vec<Check>> {
    let r = verify::formal_residuals(params, FORMAL_WORD_LENGTH, n_max)?;
    let exact = |id: &str, identity: &str, v: f64| Check::new(format!("hopf/{id}"), identity, v, 0.0);
    let close = |id: &str, identity: &str, v: f64| Check::new(format!("hopf/{id}"), identity, v, tol(params, 1.0));
    Ok(vec![
        exact("coassociativity", "(Delta x id) Delta = (id x Delta) Delta on words", r.coassociativity),
        exact("counit_left", "(epsilon x id) Delta = id on words", r.counit_left),
        exact("counit_right", "(id x epsilon) Delta = id on words", r.counit_right),
        exact("counit_multiplicative", "epsilon(xy) = epsilon(x) epsilon(y)", r.counit_multiplicative),
        exact("coproduct_multiplicative", "Delta(xy) = Delta(x) Delta(y)", r.coproduct_multiplicative),
        exact("coproduct_star", "Delta(x*) = Delta(x)*", r.coproduct_star),
        exact("star_involution", "x** = x", r.star_involution),
        close("antipode_anti_multiplicative", "S(xy) = S(y) S(x)", r.antipode_anti_multiplicative),
        close("antipode_star", "S(S(x)*)* = x", r.antipode_star_involution),
        close("antipode_law", "pi_n(m(S x id) Delta(x)) = epsilon(x) 1 and mirror", r.antipode_law_in_reps),
    ])
}

fn single_rep_checks(params: &Params, n: RepIndex) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let t = tol(params, 1.0);
    for sign in [Sign::Plus, Sign::Minus] {
        let r = verify::rep_residuals(params, n, sign)?;
        let id = |name: &str| format!("reps/{name}/{}{sign}", n.twice());
        let [qe, qf, ef] = r.relations;
        let scale = params.lambda_pow(n.as_f64() * 2.0);
        out.push(Check::new(id("relation_qe"), "Q E Q^-1 = lambda E", qe, tol(params, scale)));
        out.push(Check::new(id("relation_qf"), "Q F Q^-1 = lambda^-1 F", qf, tol(params, scale)));
        out.push(Check::new(id("relation_ef"), "EF - FE = c (Q^2 - Q^-2)", ef, tol(params, scale * scale)));
        out.push(Check::new(id("adjoint"), "E* = F and Q* = Q", r.adjoint, 0.0));
        out.push(Check::new(id("q_diagonal"), "Q = sign diag(lambda^j)", r.q_diagonal, t));
        out.push(Check::new(id("r_symmetry"), "r_{-j-1} = r_j", r.r_symmetry, t));
        out.push(Check::new(id("terminal"), "r_{-n-1}^2 = 0", r.terminal, tol(params, scale * scale)));
        out.push(Check::new(id("casimir_scalar"), "pi_n(C) = 2(lambda^{2n+1} + lambda^{-2n-1}) I", r.casimir_relative, t));
        out.push(Check::new(id("casimir_central"), "pi_n(C) commutes with Q, E, F", r.casimir_central, tol(params, scale * scale)));
        out.push(Check::new(id("casimir_forms"), "three Casimir expressions agree", r.casimir_forms, tol(params, scale * scale)));
    }
    let g = verify::gamma_max_residual(params, n)?;
    let scale = params.lambda_pow(n.as_f64() * 2.0 * (n.as_f64() * 2.0 + 2.0));
    out.push(Check::new(format!("reps/gamma/{}", n.twice()), "E F^k - F^k E = F^{k-1} Gamma_k(Q)", g, tol(params, scale)));
    Ok(out)
}

pub fn reps_checks(params: &Params, n_max: RepIndex, seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in spins(n_max) {
        out.extend(single_rep_checks(params, n)?);
    }
    for o in verify::classification_battery(params, n_max, seed)? {
        let tag = if o.conjugated { "conjugated" } else { "built" };
        out.push(Check::exact(
            format!("reps/classify/{}{}/{tag}", o.twice_n, o.sign),
            "highest weight classification recovers (n, sign)",
            o.ok(),
        ));
    }
    Ok(out)
}

pub fn clebsch_checks(qg: &QuantumGroup, n_max: RepIndex) -> Result<Vec<Check>> {
    let params = qg.params();
    let mut out = Vec::new();
    for n in spins(n_max) {
        for m in spins(n_max) {
            let r = verify::cg_residuals(qg, n, m)?;
            let id = |name: &str| format!("clebsch/{name}/{},{}", n.twice(), m.twice());
            let t = tol(params, 1.0);
            out.push(Check::exact(id("index_set"), "components are |n-m|, ..., n+m", r.index_set_ok));
            out.push(Check::exact(id("dimension"), "sum (2k+1) = (2n+1)(2m+1)", r.dimension_identity_ok));
            out.push(Check::new(id("isometry"), "V_k* V_k = 1", r.isometry, t));
            out.push(Check::new(id("orthogonality"), "V_k* V_l = 0 for k != l", r.orthogonality, t));
            out.push(Check::new(id("completeness"), "sum V_k V_k* = 1", r.completeness, t));
            let scale = params.lambda_pow(2.0 * (n.as_f64() + m.as_f64()));
            out.push(Check::new(id("intertwining"), "(pi_n x pi_m) Delta(x) V_k = V_k pi_k(x)", r.intertwining, tol(params, scale)));
            out.push(Check::new(id("reconstruction"), "sum V_k pi_k(x) V_k* = (pi_n x pi_m) Delta(x)", r.reconstruction, t));
            out.push(Check::new(id("casimir_blocks"), "V_k* Delta(C) V_k is the Casimir scalar of pi_k", r.casimir_blocks, t));
            out.push(Check::new(id("tensor_relations"), "(pi_n x pi_m) Delta satisfies the relations", r.tensor_relations, tol(params, scale)));
        }
    }
    if n_max.twice() >= 1 {
        let [singlet, mid, top] = verify::spin_half_pair_vectors(qg)?;
        let t = tol(params, 1.0);
        out.push(Check::new("clebsch/explicit/singlet", "explicit singlet vector in 1/2 x 1/2", singlet, t));
        out.push(Check::new("clebsch/explicit/triplet_middle", "explicit middle triplet vector in 1/2 x 1/2", mid, t));
        out.push(Check::new("clebsch/explicit/triplet_top", "explicit top triplet vector in 1/2 x 1/2", top, t));
    }
    Ok(out)
}

pub fn dqg_checks(qg: &QuantumGroup, n_max: RepIndex, seed: u64) -> Result<Vec<Check>> {
    let params = *qg.params();
    let window = spins(n_max.min(HOPF_WINDOW_CAP));
    let top = window.last().copied().unwrap_or(RepIndex::ZERO);
    let support = spins(RepIndex::from_twice(3 * top.twice()));
    let battery = verify::hopf_battery(qg, &support, seed, RANDOM_ELEMENTS)?;
    let mut out = Vec::new();
    let scale_of = |a: &crate::dqg::AlgElement| 1.0 + a.max_abs();
    let max_scale = battery.iter().map(|(_, a)| scale_of(a)).fold(1.0, f64::max);

    for (name, a) in &battery {
        let s = scale_of(a);
        out.push(Check::new(format!("dqg/counit/{name}"), "(epsilon x id) Delta(a) = a = (id x epsilon) Delta(a)", verify::counit_law_residual(qg, a, &window)?, tol(&params, s)));
        let mut anti = 0.0f64;
        for &n in &window {
            anti = anti.max(verify::antipode_law_residual(qg, a, n)?);
        }
        let s_scale = s * params.lambda_pow(4.0 * top.as_f64() * 3.0);
        out.push(Check::new(format!("dqg/antipode_law/{name}"), "m(S x id)(Delta(a)(1 x 1_n)) = epsilon(a) 1_n and mirror", anti, tol(&params, s_scale)));
        let mut identities = 0.0f64;
        for (_, b) in &battery {
            identities = identities.max(verify::antipode_identities_residual(qg, a, b));
        }
        out.push(Check::new(
            format!("dqg/antipode_identities/{name}"),
            "S^2 = tau_{-i}, S(S(a)*)* = a, S S^-1 = id, R^2 = id, R(a*) = R(a)*, S and R anti-multiplicative",
            identities,
            tol(&params, max_scale * max_scale * params.lambda_pow(12.0 * top.as_f64())),
        ));
        out.push(Check::new(format!("dqg/modular_commute/{name}"), "sigma_phi sigma_psi = sigma_psi sigma_phi", verify::modular_commute_residual(qg, a), tol(&params, s * params.lambda_pow(12.0 * top.as_f64()))));
    }

    for &n in &window {
        for &m in &window {
            let pair = format!("{},{}", n.twice(), m.twice());
            let (mut hom, mut rflip, mut tau, mut regular) = (0.0f64, 0.0f64, 0.0f64, true);
            for (_, a) in &battery {
                for (_, b) in &battery {
                    hom = hom.max(verify::homomorphism_residual(qg, a, b, n, m)? / (scale_of(a) * scale_of(b)));
                }
                rflip = rflip.max(verify::r_flip_residual(qg, a, n, m)? / scale_of(a));
                tau = tau.max(verify::tau_residual(qg, a, n, m, TAU_PARAMETER)? / scale_of(a));
            }
            for k in spins(RepIndex::from_twice(3 * top.twice())) {
                let unit = crate::dqg::AlgElement::matrix_unit(k, k.weight_at(0), k.weight_at(0));
                regular &= verify::regularity_holds(qg, &unit, n, m)?;
            }
            out.push(Check::new(format!("dqg/homomorphism/{pair}"), "Delta(ab) = Delta(a) Delta(b) and Delta(a*) = Delta(a)*", hom, tol(&params, 1.0)));
            out.push(Check::new(format!("dqg/r_flip/{pair}"), "Delta R = flip (R x R) Delta", rflip, tol(&params, 1.0)));
            out.push(Check::new(format!("dqg/tau/{pair}"), "Delta tau_s = (tau_s x tau_s) Delta and R tau_s = tau_s R", tau, tol(&params, 1.0)));
            out.push(Check::exact(format!("dqg/regularity/{pair}"), "Delta(a)_{nm} = 0 unless supp(a) meets I_nm", regular));
            for &l in &window {
                let mut coassoc = 0.0f64;
                for (_, a) in &battery {
                    coassoc = coassoc.max(verify::coassociativity_residual(qg, a, n, m, l)? / scale_of(a));
                }
                out.push(Check::new(
                    format!("dqg/coassociativity/{pair},{}", l.twice()),
                    "(Delta x id) Delta(a) = (id x Delta) Delta(a) on H_n x H_m x H_l",
                    coassoc,
                    tol(&params, 1.0),
                ));
            }
        }
    }

    for n in spins(n_max) {
        let r = verify::delta_h_residuals(qg, n)?;
        let id = |name: &str| format!("dqg/delta_h/{name}/{}", n.twice());
        let t = tol(&params, 1.0);
        let big = tol(&params, params.lambda_pow(4.0 * n.as_f64()));
        out.push(Check::new(id("closed_form"), "closed form of Delta(h)_nn equals the Clebsch-Gordan coproduct", r.closed_vs_cg, t));
        out.push(Check::new(id("idempotent"), "Delta(h)^2 = Delta(h)", r.idempotent, t));
        out.push(Check::new(id("self_adjoint"), "Delta(h)* = Delta(h)", r.self_adjoint, t));
        out.push(Check::new(id("rank_one"), "Delta(h)_nn projects onto the explicit range vector", r.rank_one, t));
        out.push(Check::new(id("left_integral"), "(id x phi) Delta(h) = 1_n", r.left_integral, big));
        out.push(Check::new(id("right_integral"), "(psi x id) Delta(h) = 1_n", r.right_integral, big));
        out.push(Check::new(id("modular_element"), "(phi x id) Delta(h)(1 x 1_n) = Q^4", r.modular_element, big));
        out.push(Check::new(id("trace_slice"), "(Tr x id) Delta(h) = Q^2 / Tr(Q^2)", r.trace_slice, t));
        out.push(Check::new(format!("dqg/pairing_gram/{}", n.twice()), "<e_rs, u^n_ij> = delta", verify::pairing_gram_residual(n), 0.0));
    }
    for n in spins(n_max.min(MODULAR_CAP)) {
        let (l, r) = verify::modular_automorphism_residuals(qg, n);
        let t = tol(&params, 1.0);
        out.push(Check::new(format!("dqg/modular/left/{}", n.twice()), "phi(ab) = phi(b sigma_phi(a)) on matrix units", l, t));
        out.push(Check::new(format!("dqg/modular/right/{}", n.twice()), "psi(ab) = psi(b sigma_psi(a)) on matrix units", r, t));
    }
    Ok(out)
}

pub fn dual_checks(qg: &QuantumGroup, n_max: RepIndex) -> Result<Vec<Check>> {
    let params = qg.params();
    let r = verify::dual_residuals(qg)?;
    let t = tol(params, 1.0);
    let lam4 = tol(params, params.lambda_pow(4.0));
    let c = |id: &str, identity: &str, v: f64, tolerance: f64| Check::new(format!("dual/{id}"), identity, v, tolerance);
    let mut out = vec![
        c("coproduct_u", "Delta_B(u_ij) = sum_k u_ik x u_kj through the pairing", r.coproduct_u, t),
        c("antipode_matrix", "S(u) = [[u22, -lambda u12], [-u21/lambda, u11]]", r.antipode_matrix, t),
        c("antipode_weights", "S(u_rs) and S^-1(u_rs) in weight form", r.antipode_weight_form, t),
        c("star_antipode", "u_ij* = S(u_ji)", r.star_antipode, t),
        c("unitarity_left", "S(u) u = 1", r.unitarity_left, t),
        c("unitarity_right", "u S(u) = 1", r.unitarity_right, t),
        c("u_shape", "u = [[alpha, -lambda^-1 gamma*], [gamma, alpha*]]", r.u_shape, t),
        c("haar_quadratic", "phi_B(u_kl u_ij) closed form", r.haar_quadratic, t),
        c("left_invariance", "(id x phi_B) Delta_B(b) = phi_B(b) 1 on quadratic words", r.left_invariance, t),
        c("haar_antipode", "phi_B S_B = phi_B on words of length <= 2", r.haar_antipode, t),
        c("modular_u", "sigma_B(u_pq) = lambda^{2p+2q} u_pq", r.modular_u, lam4),
        c("modular_kms", "phi_B(xy) = phi_B(y sigma_B(x))", r.modular_kms, lam4),
        c("modular_star", "sigma_B(b*) = sigma_B^-1(b)*", r.modular_star, lam4),
        c("modular_twist", "(S_B^2 x sigma_B) Delta_B = Delta_B sigma_B", r.modular_twist, lam4),
        c("antipode_squared", "S_B^2(u_rj) = lambda^{2r-2j} u_rj", r.antipode_squared, lam4),
        c("associativity", "(xy)z = x(yz) on u entries", r.associativity, t),
        c("counit", "epsilon_B(u_ij) = delta_ij", r.counit, t),
    ];
    let names = [
        "alpha* alpha + gamma* gamma = 1",
        "alpha alpha* + lambda^-2 gamma gamma* = 1",
        "gamma* gamma = gamma gamma*",
        "alpha gamma = lambda^-1 gamma alpha",
        "alpha gamma* = lambda^-1 gamma* alpha",
    ];
    for (i, (v, name)) in r.woronowicz.iter().zip(names).enumerate() {
        out.push(c(&format!("woronowicz/{i}"), name, *v, t));
    }
    for s in qg.span_check(n_max.min(SPAN_CAP))? {
        out.push(Check::exact(
            format!("dual/span/{}", s.twice_k),
            format!("u-words span the dual of A_k (rank {} of {}, gap {:e})", s.rank, s.expected, s.relative_gap),
            s.full(SPAN_MIN_GAP),
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------- commands

pub fn cmd_verify(config: &RunConfig, suite: Suite) -> Result<Report> {
    let params = config.params()?;
    let qg = QuantumGroup::new(params);
    let n_max = config.n_max();
    let mut checks = Vec::new();
    let wants = |s: Suite| suite == s || suite == Suite::All;
    if wants(Suite::Hopf) {
        checks.extend(hopf_checks(&params, n_max)?);
    }
    if wants(Suite::Reps) {
        checks.extend(reps_checks(&params, n_max, config.seed)?);
    }
    if wants(Suite::Clebsch) {
        checks.extend(clebsch_checks(&qg, n_max)?);
    }
    if wants(Suite::Dqg) {
        checks.extend(dqg_checks(&qg, n_max, config.seed)?);
    }
    if wants(Suite::Dual) {
        checks.extend(dual_checks(&qg, n_max)?);
    }
    Ok(Report::new(suite.name(), config, checks, Vec::new()))
}

fn matrix_rows(table: &mut Table, index: RepIndex, m: &CMat) {
    for (p, row_w) in index.weights().enumerate() {
        for (q, col_w) in index.weights().enumerate() {
            let [re, im] = complex_cells(m[(p, q)]);
            table.push(vec![row_w.twice().into(), col_w.twice().into(), re, im]);
        }
    }
}

/// `r_j`, the generator matrices and the Casimir scalar of `pi_n`.
pub fn cmd_rep(config: &RunConfig, n: RepIndex) -> Result<Report> {
    let params = config.params()?;
    let rep = reps::build_rep(&params, n, Sign::Plus)?;
    let checks = single_rep_checks(&params, n)?;

    let mut r_table = Table::new("r", &["2n", "2j", "r"]);
    for j in n.weights() {
        r_table.push(vec![n.twice().into(), j.twice().into(), rep.r_at(j).into()]);
    }
    let mut tables = vec![r_table];
    for (name, m) in [("q", rep.q()), ("e", rep.e()), ("f", rep.f())] {
        let mut t = Table::new(&format!("generator_{name}"), &["2j_row", "2j_col", "re", "im"]);
        matrix_rows(&mut t, n, m);
        tables.push(t);
    }
    let scalar = reps::casimir_scalar(&params, n);
    let residual = verify::rep_residuals(&params, n, Sign::Plus)?.casimir_relative;
    let mut casimir = Table::new("casimir", &["2n", "scalar", "relative_residual"]);
    casimir.push(vec![n.twice().into(), scalar.into(), residual.into()]);
    tables.push(casimir);
    Ok(Report::new("rep", config, checks, tables))
}

/// Index set and every Clebsch–Gordan isometry of `pi_n (x) pi_m`.
pub fn cmd_cg(config: &RunConfig, n: RepIndex, m: RepIndex) -> Result<Report> {
    let params = config.params()?;
    let qg = QuantumGroup::new(params);
    let decomposition = qg.decompose(n, m)?;
    let r = verify::cg_residuals(&qg, n, m)?;
    let pair = format!("{},{}", n.twice(), m.twice());
    let id = |name: &str| format!("cg/{name}/{pair}");
    let t = tol(&params, 1.0);
    let scale = params.lambda_pow(2.0 * (n.as_f64() + m.as_f64()));
    let checks = vec![
        Check::exact(id("index_set"), "components are |n-m|, ..., n+m", r.index_set_ok),
        Check::exact(id("dimension"), "sum (2k+1) = (2n+1)(2m+1)", r.dimension_identity_ok),
        Check::new(id("isometry"), "V_k* V_k = 1", r.isometry, t),
        Check::new(id("orthogonality"), "V_k* V_l = 0 for k != l", r.orthogonality, t),
        Check::new(id("completeness"), "sum V_k V_k* = 1", r.completeness, t),
        Check::new(id("intertwining"), "(pi_n x pi_m) Delta(x) V_k = V_k pi_k(x)", r.intertwining, tol(&params, scale)),
        Check::new(id("reconstruction"), "sum V_k pi_k(x) V_k* = (pi_n x pi_m) Delta(x)", r.reconstruction, t),
    ];
    let mut index = Table::new("index_set", &["2n", "2m", "2k", "dim"]);
    let mut coefficients = Table::new("coefficients", &["2k", "2j_k", "2j_n", "2j_m", "re", "im"]);
    for piece in decomposition.pieces() {
        let k = piece.k();
        index.push(vec![n.twice().into(), m.twice().into(), k.twice().into(), (k.dim() as u32).into()]);
        let v = piece.matrix();
        for (col, jk) in k.weights().enumerate() {
            for (a, jn) in n.weights().enumerate() {
                for (b, jm) in m.weights().enumerate() {
                    let z = v[(a * m.dim() + b, col)];
                    if z.norm() == 0.0 {
                        continue;
                    }
                    let [re, im] = complex_cells(z);
                    coefficients.push(vec![k.twice().into(), jk.twice().into(), jn.twice().into(), jm.twice().into(), re, im]);
                }
            }
        }
    }
    Ok(Report::new("cg", config, checks, vec![index, coefficients]))
}

/// Integral values on matrix units, modular element, `Delta(h)` blocks and the
/// quadratic Haar table of the dual.
pub fn cmd_tables(config: &RunConfig) -> Result<Report> {
    let params = config.params()?;
    let qg = QuantumGroup::new(params);
    let lam = params.lambda();
    let mut checks = Vec::new();
    let mut integrals = Table::new("integrals", &["2n", "2r", "2s", "phi_re", "phi_im", "psi_re", "psi_im"]);
    let mut modular = Table::new("modular_element", &["2n", "2j", "delta"]);
    let mut delta_h = Table::new("delta_h", &["2n", "2r1", "2r2", "2s1", "2s2", "re", "im"]);
    for n in spins(config.n_max()) {
        let cn = crate::dqg::trace_q2(&params, n);
        let mut worst = 0.0f64;
        for r in n.weights() {
            for s in n.weights() {
                let unit = crate::linalg::matrix_unit(n.dim(), n.position(r).expect("weight"), n.position(s).expect("weight"));
                let phi = left_integral_block(&params, n, &unit);
                let psi = right_integral_block(&params, n, &unit);
                let (ep, es) = if r == s {
                    (cn * params.lambda_half_pow(-2 * r.twice()), cn * params.lambda_half_pow(2 * r.twice()))
                } else {
                    (0.0, 0.0)
                };
                worst = worst.max((phi.re - ep).abs() + phi.im.abs()).max((psi.re - es).abs() + psi.im.abs());
                let [pr, pi] = complex_cells(phi);
                let [sr, si] = complex_cells(psi);
                integrals.push(vec![n.twice().into(), r.twice().into(), s.twice().into(), pr, pi, sr, si]);
            }
        }
        let scale = cn * params.lambda_pow(2.0 * n.as_f64());
        checks.push(Check::new(format!("tables/integrals/{}", n.twice()), "phi(e_rs) = c delta_rs lambda^{-2r}, psi(e_rs) = c delta_rs lambda^{2r}", worst, tol(&params, scale)));

        let delta = qg.modular_element_component(n);
        let mut worst_delta = 0.0f64;
        for (p, j) in n.weights().enumerate() {
            let v = delta[(p, p)].re;
            worst_delta = worst_delta.max((v - params.lambda_half_pow(4 * j.twice())).abs());
            modular.push(vec![n.twice().into(), j.twice().into(), v.into()]);
        }
        checks.push(Check::new(format!("tables/modular_element/{}", n.twice()), "delta = q^4", worst_delta, tol(&params, params.lambda_pow(4.0 * n.as_f64()))));

        let block = qg.delta_h(n);
        for (i, (r1, r2)) in pairs(n).enumerate() {
            for (j, (s1, s2)) in pairs(n).enumerate() {
                let z = block[(i, j)];
                if z.norm() == 0.0 {
                    continue;
                }
                let [re, im] = complex_cells(z);
                delta_h.push(vec![n.twice().into(), r1.twice().into(), r2.twice().into(), s1.twice().into(), s2.twice().into(), re, im]);
            }
        }
    }
    let mut haar = Table::new("haar_quadratic", &["2k", "2l", "2i", "2j", "value", "closed_form"]);
    let u = qg.u_matrix();
    let mut worst_haar = 0.0f64;
    for k in [1, -1] {
        for l in [1, -1] {
            for i in [1, -1] {
                for j in [1, -1] {
                    let v = qg.dual_haar(&qg.dual_mul(u.by_weight(k, l), u.by_weight(i, j))?);
                    let closed = haar_quadratic_closed_form(lam, k, l, i, j);
                    worst_haar = worst_haar.max((v - closed).norm());
                    haar.push(vec![k.into(), l.into(), i.into(), j.into(), v.re.into(), closed.into()]);
                }
            }
        }
    }
    checks.push(Check::new("tables/haar_quadratic", "phi_B(u_kl u_ij) closed form", worst_haar, tol(&params, 1.0)));
    Ok(Report::new("tables", config, checks, vec![integrals, modular, delta_h, haar]))
}

fn pairs(n: RepIndex) -> impl Iterator<Item = (Weight, Weight)> {
    n.weights().flat_map(move |a| n.weights().map(move |b| (a, b)))
}

/// Writes every table of `report` into `dir`, one file per table.
pub fn write_tables(report: &Report, format: Format, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for t in &report.tables {
        let (path, body) = match format {
            Format::Json => (dir.join(format!("{}.json", t.name)), serde_json::to_string_pretty(t)? + "\n"),
            Format::Csv => (dir.join(format!("{}.csv", t.name)), t.to_csv()?),
        };
        fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        RunConfig { n_max: 2, ..RunConfig::default() }
    }

    #[test]
    fn json_round_trip() {
        let report = cmd_rep(&small(), RepIndex::HALF).unwrap();
        let parsed = Report::from_json(&report.to_json().unwrap()).unwrap();
        assert_eq!(parsed, report);
    }

    #[test]
    fn rep_half_has_unit_r() {
        let report = cmd_rep(&small(), RepIndex::HALF).unwrap();
        let r = &report.tables[0];
        assert_eq!(r.rows[0], vec![Cell::Int(1), Cell::Int(1), Cell::Real(0.0)]);
        assert_eq!(r.rows[1], vec![Cell::Int(1), Cell::Int(-1), Cell::Real(1.0)]);
        assert!(report.pass);
    }

    #[test]
    fn checks_are_sorted() {
        let report = cmd_verify(&small(), Suite::Hopf).unwrap();
        assert!(report.checks.windows(2).all(|w| w[0].id <= w[1].id));
        assert!(report.pass, "{report:#?}");
    }

    #[test]
    fn nan_residual_fails() {
        assert!(!Check::new("x", "y", f64::NAN, 1.0).pass);
    }

    #[test]
    fn csv_headers_use_doubled_indices() {
        let report = cmd_tables(&small()).unwrap();
        let csv = report.tables[0].to_csv().unwrap();
        assert!(csv.starts_with("2n,2r,2s,"));
    }
}
