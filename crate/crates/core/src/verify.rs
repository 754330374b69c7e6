//! Residual computations for every structural identity the library certifies.
//!
//! Each function returns raw residuals (max-entry norm); callers decide on
//! tolerances. The CLI suites in [`crate::report`] and the acceptance tests
//! both build on these.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clebsch::{index_set, tensor_eval, TensorRep};
use crate::dqg::{
    antipode_block, delta_h_range_vector, left_integral_block, right_integral_block, scaling_block,
    unitary_antipode_block, AlgElement, IntegralSide,
};
use crate::dual::{haar_quadratic_closed_form, pair, DualElement, UMatrix};
use crate::error::Result;
use crate::group::QuantumGroup;
use crate::linalg::{
    self, c, contract_left, contract_right, flip, identity, kron, map_left, map_right, max_abs, max_abs_diff,
    multiply_legs, CMat, ZERO,
};
use crate::params::{Params, RepIndex};
use crate::reps::{self, build_rep, Sign};
use crate::words::{
    coproduct_then_left, coproduct_then_right, formal_antipode, formal_coproduct, formal_counit, formal_star, AlgPoly,
    TensorPoly, TriplePoly, Word,
};

/// Words used to probe representations: `q, q^-1, e, f, ef, qef`.
pub fn word_battery() -> Vec<(&'static str, AlgPoly)> {
    ["q", "q'", "e", "f", "ef", "qef"]
        .into_iter()
        .map(|s| (s, AlgPoly::parse_word(s).expect("valid word")))
        .collect()
}

pub fn random_matrix(rng: &mut impl Rng, d: usize) -> CMat {
    CMat::from_fn(d, d, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

/// A Haar-ish random unitary: the `Q` factor of a random complex matrix.
pub fn random_unitary(rng: &mut impl Rng, d: usize) -> CMat {
    random_matrix(rng, d).qr().q()
}

pub fn random_element(rng: &mut impl Rng, window: &[RepIndex]) -> AlgElement {
    AlgElement::from_components(window.iter().map(|&n| (n, random_matrix(rng, n.dim()))))
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- formal layer

fn poly_distance<K: Ord>(a: impl Iterator<Item = (K, Complex64)>, b: impl Iterator<Item = (K, Complex64)>) -> f64 {
    let mut diff: std::collections::BTreeMap<K, Complex64> = a.collect();
    for (k, v) in b {
        *diff.entry(k).or_insert(ZERO) -= v;
    }
    diff.values().map(|v| v.norm()).fold(0.0, f64::max)
}

fn tensor_star(x: &TensorPoly) -> TensorPoly {
    let mut out = TensorPoly::default();
    for ((a, b), v) in x.terms() {
        let sa = formal_star(&AlgPoly::from_word(a.clone()));
        let sb = formal_star(&AlgPoly::from_word(b.clone()));
        for (wa, ca) in sa.terms() {
            for (wb, cb) in sb.terms() {
                out.add_assign(&TensorPoly::simple(wa.clone(), wb.clone(), v.conj() * ca * cb));
            }
        }
    }
    out
}

/// `m (S (x) id)` or `m (id (x) S)` applied to a formal tensor.
fn multiply_with_antipode(x: &TensorPoly, lambda: f64, on_left: bool) -> AlgPoly {
    let mut out = AlgPoly::zero();
    for ((a, b), v) in x.terms() {
        let (pa, pb) = (AlgPoly::from_word(a.clone()), AlgPoly::from_word(b.clone()));
        let prod = if on_left { &formal_antipode(&pa, lambda) * &pb } else { &pa * &formal_antipode(&pb, lambda) };
        out = &out + &prod.scale(*v);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct FormalResiduals {
    pub words: usize,
    pub coassociativity: f64,
    pub counit_left: f64,
    pub counit_right: f64,
    pub counit_multiplicative: f64,
    pub coproduct_multiplicative: f64,
    pub coproduct_star: f64,
    pub antipode_anti_multiplicative: f64,
    /// `S(S(x)*)* - x`.
    pub antipode_star_involution: f64,
    pub star_involution: f64,
    /// `pi_n(m(S (x) id) Delta(w)) - epsilon(w) I`, both sides, over `n <= n_max`.
    pub antipode_law_in_reps: f64,
}

/// Identities of the formal Hopf layer over all words up to `max_len`.
/// Everything except the antipode law is exact word arithmetic; the antipode
/// law needs the defining relations and is checked in `pi_n`, `n <= n_max`.
pub fn formal_residuals(params: &Params, max_len: usize, n_max: RepIndex) -> Result<FormalResiduals> {
    let lambda = params.lambda();
    let words = Word::all_up_to(max_len);
    let short = Word::all_up_to(max_len.min(2));
    let reps: Vec<_> = RepIndex::up_to(n_max).map(|n| build_rep(params, n, Sign::Plus)).collect::<Result<_>>()?;
    let mut r = FormalResiduals {
        words: words.len(),
        coassociativity: 0.0,
        counit_left: 0.0,
        counit_right: 0.0,
        counit_multiplicative: 0.0,
        coproduct_multiplicative: 0.0,
        coproduct_star: 0.0,
        antipode_anti_multiplicative: 0.0,
        antipode_star_involution: 0.0,
        star_involution: 0.0,
        antipode_law_in_reps: 0.0,
    };
    for w in &words {
        let x = AlgPoly::from_word(w.clone());
        let dx = formal_coproduct(&x);
        let owned = |t: &TriplePoly| t.terms().map(|(k, v)| (k.clone(), *v)).collect::<Vec<_>>();
        r.coassociativity = r
            .coassociativity
            .max(poly_distance(owned(&coproduct_then_left(&x)).into_iter(), owned(&coproduct_then_right(&x)).into_iter()));
        let mut left = AlgPoly::zero();
        let mut right = AlgPoly::zero();
        for ((a, b), v) in dx.terms() {
            left = &left + &AlgPoly::from_word(b.clone()).scale(v * formal_counit(&AlgPoly::from_word(a.clone())));
            right = &right + &AlgPoly::from_word(a.clone()).scale(v * formal_counit(&AlgPoly::from_word(b.clone())));
        }
        r.counit_left = r.counit_left.max(left.distance(&x));
        r.counit_right = r.counit_right.max(right.distance(&x));
        let starred = tensor_star(&dx);
        let dstar = formal_coproduct(&formal_star(&x));
        let tensor_terms = |t: &TensorPoly| t.terms().map(|(k, v)| (k.clone(), *v)).collect::<Vec<_>>();
        r.coproduct_star = r.coproduct_star.max(poly_distance(tensor_terms(&starred).into_iter(), tensor_terms(&dstar).into_iter()));
        let sss = formal_star(&formal_antipode(&formal_star(&formal_antipode(&x, lambda)), lambda));
        r.antipode_star_involution = r.antipode_star_involution.max(sss.distance(&x));
        r.star_involution = r.star_involution.max(formal_star(&formal_star(&x)).distance(&x));

        let eps = formal_counit(&x);
        for on_left in [true, false] {
            let m = multiply_with_antipode(&dx, lambda, on_left);
            for rep in &reps {
                let res = max_abs_diff(&rep.eval(&m), &(identity(rep.dim()) * eps));
                r.antipode_law_in_reps = r.antipode_law_in_reps.max(res);
            }
        }
        for w2 in &short {
            let y = AlgPoly::from_word(w2.clone());
            let xy = &x * &y;
            r.counit_multiplicative =
                r.counit_multiplicative.max((formal_counit(&xy) - formal_counit(&x) * formal_counit(&y)).norm());
            let prod = &dx * &formal_coproduct(&y);
            r.coproduct_multiplicative = r
                .coproduct_multiplicative
                .max(poly_distance(tensor_terms(&formal_coproduct(&xy)).into_iter(), tensor_terms(&prod).into_iter()));
            let anti = &formal_antipode(&y, lambda) * &formal_antipode(&x, lambda);
            r.antipode_anti_multiplicative = r.antipode_anti_multiplicative.max(formal_antipode(&xy, lambda).distance(&anti));
        }
    }
    Ok(r)
}

// ---------------------------------------------------------------- reps

#[derive(Clone, Debug, Serialize)]
pub struct RepResiduals {
    pub twice_n: u32,
    pub relations: [f64; 3],
    pub adjoint: f64,
    /// Distance of `Q` from the real diagonal `sign * lambda^j`.
    pub q_diagonal: f64,
    pub r_symmetry: f64,
    pub terminal: f64,
    /// `|pi_n(C) - scalar I| / scalar`.
    pub casimir_relative: f64,
    /// Largest commutator of `pi_n(C)` with `Q, E, F`.
    pub casimir_central: f64,
    /// Disagreement between the three Casimir expressions.
    pub casimir_forms: f64,
}

pub fn rep_residuals(params: &Params, n: RepIndex, sign: Sign) -> Result<RepResiduals> {
    let rep = build_rep(params, n, sign)?;
    let relations = reps::relation_residuals(params, rep.q(), rep.e(), rep.f(), params.coupling());
    let adjoint = max_abs_diff(&rep.e().adjoint(), rep.f()).max(max_abs_diff(&rep.q().adjoint(), rep.q()));
    let expected_q: Vec<f64> = n.weights().map(|j| sign.as_f64() * params.lambda_half_pow(j.twice())).collect();
    let q_diagonal = max_abs_diff(rep.q(), &linalg::diag_real(&expected_q));
    let r = rep.r();
    let r_symmetry = r.iter().zip(r.iter().rev()).fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
    let terminal = reps::terminal_square(params, n)?.abs();
    let scalar = reps::casimir_scalar(params, n);
    let [cas, cas_fe, cas_ef] = reps::casimir_forms(params, &rep);
    let casimir_relative = max_abs_diff(&cas, &(identity(n.dim()) * c(scalar))) / scalar;
    let casimir_central = [rep.q(), rep.e(), rep.f()]
        .iter()
        .map(|g| max_abs(&(&cas * *g - *g * &cas)))
        .fold(0.0, f64::max);
    let casimir_forms = max_abs_diff(&cas, &cas_fe).max(max_abs_diff(&cas, &cas_ef));
    Ok(RepResiduals {
        twice_n: n.twice(),
        relations,
        adjoint,
        q_diagonal,
        r_symmetry,
        terminal,
        casimir_relative,
        casimir_central,
        casimir_forms,
    })
}

/// Largest `Gamma_k` residual in `pi_n` over `1 <= k <= 2n + 2`.
pub fn gamma_max_residual(params: &Params, n: RepIndex) -> Result<f64> {
    let rep = build_rep(params, n, Sign::Plus)?;
    Ok((1..=n.twice() + 2).map(|k| reps::gamma_residual(params, k, &rep)).fold(0.0, f64::max))
}

/// Outcome of classifying one (possibly unitarily conjugated) representation.
#[derive(Clone, Debug, Serialize)]
pub struct ClassifyOutcome {
    pub twice_n: u32,
    pub sign: Sign,
    pub conjugated: bool,
    pub recovered: Option<(u32, Sign)>,
}

impl ClassifyOutcome {
    pub fn ok(&self) -> bool {
        self.recovered == Some((self.twice_n, self.sign))
    }
}

pub fn classification_battery(params: &Params, n_max: RepIndex, seed: u64) -> Result<Vec<ClassifyOutcome>> {
    let mut rng = rng_from_seed(seed);
    let mut out = Vec::new();
    for n in RepIndex::up_to(n_max) {
        for sign in [Sign::Plus, Sign::Minus] {
            let rep = build_rep(params, n, sign)?;
            let u = random_unitary(&mut rng, n.dim());
            let conj = |m: &CMat| &u * m * u.adjoint();
            for (conjugated, (q, e, f)) in [
                (false, (rep.q().clone(), rep.e().clone(), rep.f().clone())),
                (true, (conj(rep.q()), conj(rep.e()), conj(rep.f()))),
            ] {
                let recovered = reps::classify_by_highest_weight(params, &q, &e, &f)
                    .ok()
                    .map(|(idx, s)| (idx.twice(), s));
                out.push(ClassifyOutcome { twice_n: n.twice(), sign, conjugated, recovered });
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- clebsch

#[derive(Clone, Debug, Serialize)]
pub struct CgResiduals {
    pub twice_n: u32,
    pub twice_m: u32,
    pub index_set_ok: bool,
    pub dimension_identity_ok: bool,
    pub isometry: f64,
    pub orthogonality: f64,
    pub completeness: f64,
    pub intertwining: f64,
    /// `sum_k V_k pi_k(x) V_k^* - (pi_n (x) pi_m) Delta(x)` over the word battery.
    pub reconstruction: f64,
    /// Relative distance of `V_k^* pi(C) V_k` from the Casimir scalar of `pi_k`.
    pub casimir_blocks: f64,
    pub tensor_relations: f64,
}

pub fn cg_residuals(qg: &QuantumGroup, n: RepIndex, m: RepIndex) -> Result<CgResiduals> {
    let params = qg.params();
    let decomposition = qg.decompose(n, m)?;
    let ks: Vec<u32> = decomposition.pieces().iter().map(|p| p.k().twice()).collect();
    let lo = n.twice().abs_diff(m.twice());
    let expected: Vec<u32> = (lo..=n.twice() + m.twice()).step_by(2).collect();
    let index_set_ok = ks == expected && index_set(n, m).iter().map(|k| k.twice()).collect::<Vec<_>>() == expected;
    let dimension_identity_ok = ks.iter().map(|k| *k as usize + 1).sum::<usize>() == n.dim() * m.dim();

    let (left, right) = (qg.rep(n)?, qg.rep(m)?);
    let tensor = TensorRep::new(&left, &right);
    let mut isometry = 0.0f64;
    let mut intertwining = 0.0f64;
    for piece in decomposition.pieces() {
        isometry = isometry.max(piece.isometry_residual());
        let rep_k = qg.rep(piece.k())?;
        intertwining = intertwining.max(piece.intertwining_residuals(&tensor, &rep_k).into_iter().fold(0.0, f64::max));
    }

    let mut reconstruction = 0.0f64;
    let mut battery = word_battery();
    battery.push(("C", crate::words::casimir(params.lambda())));
    for (_, x) in &battery {
        let target = tensor_eval(&left, &right, x);
        let blocks: Vec<(RepIndex, CMat)> = decomposition
            .pieces()
            .iter()
            .map(|p| Ok((p.k(), qg.rep(p.k())?.eval(x))))
            .collect::<Result<_>>()?;
        let assembled = decomposition.assemble(|k| blocks.iter().find(|(kk, _)| *kk == k).map(|(_, b)| b));
        let scale = 1.0 + max_abs(&target);
        reconstruction = reconstruction.max(max_abs_diff(&assembled, &target) / scale);
    }

    let casimir = tensor_eval(&left, &right, &crate::words::casimir(params.lambda()));
    let mut casimir_blocks = 0.0f64;
    for piece in decomposition.pieces() {
        let block = decomposition.compress(piece.k(), &casimir).expect("piece present");
        let scalar = reps::casimir_scalar(params, piece.k());
        casimir_blocks = casimir_blocks.max(max_abs_diff(&block, &(identity(piece.k().dim()) * c(scalar))) / scalar);
    }

    Ok(CgResiduals {
        twice_n: n.twice(),
        twice_m: m.twice(),
        index_set_ok,
        dimension_identity_ok,
        isometry,
        orthogonality: decomposition.orthogonality_residual(),
        completeness: decomposition.completeness_residual(),
        intertwining,
        reconstruction,
        casimir_blocks,
        tensor_relations: tensor.relation_residuals(params).into_iter().fold(0.0, f64::max),
    })
}

/// Distance between the computed `(1/2, 1/2)` vectors and the explicit ones
/// (singlet, middle triplet column, top triplet column).
pub fn spin_half_pair_vectors(qg: &QuantumGroup) -> Result<[f64; 3]> {
    let lam = qg.params().lambda();
    let d = qg.decompose(RepIndex::HALF, RepIndex::HALF)?;
    let norm = (lam + 1.0 / lam).sqrt();
    let singlet = d.piece(RepIndex::ZERO).expect("k = 0").matrix().column(0).clone_owned();
    let triplet = d.piece(RepIndex::from_twice(2)).expect("k = 1").matrix();
    let v = |xs: [f64; 4]| nalgebra::DVector::from_iterator(4, xs.into_iter().map(c));
    let expected_singlet = v([0.0, lam.powf(-0.5) / norm, -lam.sqrt() / norm, 0.0]);
    let expected_mid = v([0.0, lam.sqrt() / norm, lam.powf(-0.5) / norm, 0.0]);
    let expected_top = v([1.0, 0.0, 0.0, 0.0]);
    Ok([
        (singlet - expected_singlet).camax(),
        (triplet.column(1) - expected_mid).camax(),
        (triplet.column(0) - expected_top).camax(),
    ])
}

// ---------------------------------------------------------------- dqg

/// Elements used to probe the Hopf axioms: embedded words plus seeded random elements.
pub fn hopf_battery(qg: &QuantumGroup, support: &[RepIndex], seed: u64, random_count: usize) -> Result<Vec<(String, AlgElement)>> {
    let mut out = Vec::new();
    for (name, x) in word_battery() {
        out.push((format!("pi({name})"), qg.embed(&x, support)?));
    }
    out.push(("h".into(), qg.cointegral()));
    let mut rng = rng_from_seed(seed);
    for i in 0..random_count {
        out.push((format!("random{i}"), random_element(&mut rng, support)));
    }
    Ok(out)
}

/// `(epsilon (x) id) Delta(a) = a = (id (x) epsilon) Delta(a)` on each component of `window`.
pub fn counit_law_residual(qg: &QuantumGroup, a: &AlgElement, window: &[RepIndex]) -> Result<f64> {
    let zero = RepIndex::ZERO;
    let mut worst = 0.0f64;
    for &m in window {
        let target = a.component_or_zero(m);
        let left = contract_left(&qg.coproduct_component(a, zero, m)?, 1, m.dim(), |b| b[(0, 0)]);
        let right = contract_right(&qg.coproduct_component(a, m, zero)?, m.dim(), 1, |b| b[(0, 0)]);
        worst = worst.max(max_abs_diff(&left, &target)).max(max_abs_diff(&right, &target));
    }
    Ok(worst)
}

/// `m(S (x) id)(Delta(a)(1 (x) 1_n)) = epsilon(a) 1_n` and the right-handed version.
pub fn antipode_law_residual(qg: &QuantumGroup, a: &AlgElement, n: RepIndex) -> Result<f64> {
    let params = *qg.params();
    let d = n.dim();
    let x = qg.coproduct_component(a, n, n)?;
    let target = identity(d) * qg.counit(a);
    let s = |m: &CMat| antipode_block(&params, n, m);
    let left = multiply_legs(&map_left(&x, d, d, s), d);
    let right = multiply_legs(&map_right(&x, d, d, s), d);
    Ok(max_abs_diff(&left, &target).max(max_abs_diff(&right, &target)))
}

/// `(Delta (x) id) Delta(a) - (id (x) Delta) Delta(a)` on `H_n (x) H_m (x) H_l`.
pub fn coassociativity_residual(qg: &QuantumGroup, a: &AlgElement, n: RepIndex, m: RepIndex, l: RepIndex) -> Result<f64> {
    let (dn, dm, dl) = (n.dim(), m.dim(), l.dim());
    let dim = dn * dm * dl;
    let mut first = CMat::zeros(dim, dim);
    for piece in qg.decompose(n, m)?.pieces() {
        let inner = qg.coproduct_component(a, piece.k(), l)?;
        let lift = kron(piece.matrix(), &identity(dl));
        first += &lift * inner * lift.adjoint();
    }
    let mut second = CMat::zeros(dim, dim);
    for piece in qg.decompose(m, l)?.pieces() {
        let inner = qg.coproduct_component(a, n, piece.k())?;
        let lift = kron(&identity(dn), piece.matrix());
        second += &lift * inner * lift.adjoint();
    }
    Ok(max_abs_diff(&first, &second))
}

/// `Delta(ab) - Delta(a) Delta(b)` and `Delta(a*) - Delta(a)^*` on one block.
pub fn homomorphism_residual(qg: &QuantumGroup, a: &AlgElement, b: &AlgElement, n: RepIndex, m: RepIndex) -> Result<f64> {
    let da = qg.coproduct_component(a, n, m)?;
    let db = qg.coproduct_component(b, n, m)?;
    let dab = qg.coproduct_component(&a.mul(b), n, m)?;
    let dstar = qg.coproduct_component(&a.star(), n, m)?;
    Ok(max_abs_diff(&dab, &(&da * &db)).max(max_abs_diff(&dstar, &da.adjoint())))
}

/// `Delta(R(a))_{mn} - flip((R (x) R) Delta(a)_{nm})`.
pub fn r_flip_residual(qg: &QuantumGroup, a: &AlgElement, n: RepIndex, m: RepIndex) -> Result<f64> {
    let (dn, dm) = (n.dim(), m.dim());
    let x = qg.coproduct_component(a, n, m)?;
    let rr = map_right(&map_left(&x, dn, dm, |b| unitary_antipode_block(n, b)), dn, dm, |b| unitary_antipode_block(m, b));
    let lhs = qg.coproduct_component(&qg.unitary_antipode(a), m, n)?;
    Ok(max_abs_diff(&lhs, &flip(&rr, dn, dm)))
}

/// `Delta(tau_s(a)) - (tau_s (x) tau_s) Delta(a)` on one block, plus `R tau_s - tau_s R`.
pub fn tau_residual(qg: &QuantumGroup, a: &AlgElement, n: RepIndex, m: RepIndex, s: f64) -> Result<f64> {
    let params = *qg.params();
    let (dn, dm) = (n.dim(), m.dim());
    let x = qg.coproduct_component(a, n, m)?;
    let tt = map_right(&map_left(&x, dn, dm, |b| scaling_block(&params, n, b, s)), dn, dm, |b| scaling_block(&params, m, b, s));
    let lhs = qg.coproduct_component(&qg.scaling(a, s), n, m)?;
    let commute = qg.unitary_antipode(&qg.scaling(a, s)).max_abs_diff(&qg.scaling(&qg.unitary_antipode(a), s));
    Ok(max_abs_diff(&lhs, &tt).max(commute))
}

/// Algebraic identities of `S`, `R`, `tau` on one element:
/// `S^2 = tau_{-i}`, `S(S(a)*)* = a`, `S S^-1 = id`, `R^2 = id`, `R(a*) = R(a)*`,
/// and anti-multiplicativity of `S` and `R` against `b`.
pub fn antipode_identities_residual(qg: &QuantumGroup, a: &AlgElement, b: &AlgElement) -> f64 {
    let s2 = qg.antipode(&qg.antipode(a)).max_abs_diff(&qg.scaling_imag(a, -1.0));
    let involutive = qg.antipode(&qg.antipode(a).star()).star().max_abs_diff(a);
    let inverse = qg.antipode(&qg.antipode_inv(a)).max_abs_diff(a).max(qg.antipode_inv(&qg.antipode(a)).max_abs_diff(a));
    let r2 = qg.unitary_antipode(&qg.unitary_antipode(a)).max_abs_diff(a);
    let r_star = qg.unitary_antipode(&a.star()).max_abs_diff(&qg.unitary_antipode(a).star());
    let s_anti = qg.antipode(&a.mul(b)).max_abs_diff(&qg.antipode(b).mul(&qg.antipode(a)));
    let r_anti = qg.unitary_antipode(&a.mul(b)).max_abs_diff(&qg.unitary_antipode(b).mul(&qg.unitary_antipode(a)));
    [s2, involutive, inverse, r2, r_star, s_anti, r_anti].into_iter().fold(0.0, f64::max)
}

/// `Delta(a)_{nm} = 0` whenever no component of `a` lies in `I_nm`.
pub fn regularity_holds(qg: &QuantumGroup, a: &AlgElement, n: RepIndex, m: RepIndex) -> Result<bool> {
    let touches = index_set(n, m).iter().any(|k| a.component(*k).is_some());
    let block = qg.coproduct_component(a, n, m)?;
    Ok(touches || max_abs(&block) == 0.0)
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaHResiduals {
    pub twice_n: u32,
    /// Closed form against the Clebsch–Gordan coproduct of `h`.
    pub closed_vs_cg: f64,
    pub idempotent: f64,
    pub self_adjoint: f64,
    /// Distance from the projection onto the explicit range vector.
    pub rank_one: f64,
    /// `(id (x) phi) Delta(h) - 1_n`.
    pub left_integral: f64,
    /// `(psi (x) id) Delta(h) - 1_n`.
    pub right_integral: f64,
    /// `(phi (x) id) Delta(h) - Q^4`.
    pub modular_element: f64,
    /// `(Tr (x) id) Delta(h) - Q^2 / c_n`.
    pub trace_slice: f64,
}

pub fn delta_h_residuals(qg: &QuantumGroup, n: RepIndex) -> Result<DeltaHResiduals> {
    let params = *qg.params();
    let d = n.dim();
    let closed = qg.delta_h(n);
    let via_cg = qg.coproduct_component(&qg.cointegral(), n, n)?;
    let v = delta_h_range_vector(&params, n);
    let projection = &v * v.adjoint() / c(v.norm_squared());
    let phi = |b: &CMat| left_integral_block(&params, n, b);
    let psi = |b: &CMat| right_integral_block(&params, n, b);
    let one = identity(d);
    let rep = qg.rep(n)?;
    let q2 = rep.q() * rep.q();
    let q4 = &q2 * &q2;
    let cn = crate::dqg::trace_q2(&params, n);
    Ok(DeltaHResiduals {
        twice_n: n.twice(),
        closed_vs_cg: max_abs_diff(&closed, &via_cg),
        idempotent: max_abs_diff(&(&closed * &closed), &closed),
        self_adjoint: max_abs_diff(&closed.adjoint(), &closed),
        rank_one: max_abs_diff(&closed, &projection),
        left_integral: max_abs_diff(&contract_right(&closed, d, d, phi), &one),
        right_integral: max_abs_diff(&contract_left(&closed, d, d, psi), &one),
        modular_element: max_abs_diff(&contract_left(&closed, d, d, phi), &q4)
            .max(max_abs_diff(&q4, &qg.modular_element_component(n))),
        trace_slice: max_abs_diff(&contract_left(&closed, d, d, linalg::trace), &(q2 / c(cn))),
    })
}

/// Brute force over all matrix-unit pairs `a, b` in `A_n`:
/// `max |phi(ab) - phi(b sigma_phi(a))|` and `max |psi(ab) - psi(b sigma_psi(a))|`,
/// scaled by the largest integral value involved.
pub fn modular_automorphism_residuals(qg: &QuantumGroup, n: RepIndex) -> (f64, f64) {
    let units: Vec<AlgElement> = n
        .weights()
        .flat_map(|r| n.weights().map(move |s| AlgElement::matrix_unit(n, r, s)))
        .collect();
    let (mut left, mut right) = (0.0f64, 0.0f64);
    for a in &units {
        let sa_phi = qg.modular_automorphism(a, IntegralSide::Left);
        let sa_psi = qg.modular_automorphism(a, IntegralSide::Right);
        for b in &units {
            let ab = a.mul(b);
            let phi_ab = qg.left_integral(&ab);
            let psi_ab = qg.right_integral(&ab);
            left = left.max((phi_ab - qg.left_integral(&b.mul(&sa_phi))).norm() / (1.0 + phi_ab.norm()));
            right = right.max((psi_ab - qg.right_integral(&b.mul(&sa_psi))).norm() / (1.0 + psi_ab.norm()));
        }
    }
    (left, right)
}

/// `sigma_phi sigma_psi - sigma_psi sigma_phi` on `a`.
pub fn modular_commute_residual(qg: &QuantumGroup, a: &AlgElement) -> f64 {
    let l = IntegralSide::Left;
    let r = IntegralSide::Right;
    qg.modular_automorphism(&qg.modular_automorphism(a, r), l)
        .max_abs_diff(&qg.modular_automorphism(&qg.modular_automorphism(a, l), r))
}

// ---------------------------------------------------------------- dual

fn half_units() -> Vec<AlgElement> {
    let n = RepIndex::HALF;
    n.weights()
        .flat_map(|r| n.weights().map(move |s| AlgElement::matrix_unit(n, r, s)))
        .collect()
}

const HALF_WEIGHTS: [i32; 2] = [1, -1];

#[derive(Clone, Debug, Serialize)]
pub struct DualResiduals {
    /// `<a a', u_ij> - sum_k <a, u_ik><a', u_kj>` over matrix units (including other components).
    pub coproduct_u: f64,
    /// `S(u)` against `[[u22, -l u12], [-u21/l, u11]]`.
    pub antipode_matrix: f64,
    /// `S(u_rs) - (-1)^{r-s} l^{r-s} u_{-s,-r}` and the inverse formula.
    pub antipode_weight_form: f64,
    /// `u_ij* - S(u_ji)`.
    pub star_antipode: f64,
    pub unitarity_left: f64,
    pub unitarity_right: f64,
    pub u_shape: f64,
    pub woronowicz: [f64; 5],
    /// `phi_B(u_kl u_ij)` against the closed form.
    pub haar_quadratic: f64,
    /// `(id (x) phi_B)(u_ij u_kl) - phi_B(u_ij u_kl) 1`.
    pub left_invariance: f64,
    /// `phi_B S - phi_B` on words of length at most 2.
    pub haar_antipode: f64,
    /// `sigma(u_pq) - l^{2p+2q} u_pq`.
    pub modular_u: f64,
    /// `phi_B(x y) - phi_B(y sigma(x))` for `x, y` entries of `u` and `u*`.
    pub modular_kms: f64,
    /// `sigma(b*) - sigma^-1(b)*`.
    pub modular_star: f64,
    /// `(S^2 (x) sigma) Delta(u_rs) - Delta(sigma(u_rs))` via pairings.
    pub modular_twist: f64,
    /// `S^2(u_rj) - l^{2r-2j} u_rj`.
    pub antipode_squared: f64,
    /// `(xy)z - x(yz)` over triples of `u` entries.
    pub associativity: f64,
    /// `epsilon_B(u_ij) - delta_ij`.
    pub counit: f64,
}

impl DualResiduals {
    pub fn max(&self) -> f64 {
        let mut all = vec![
            self.coproduct_u,
            self.antipode_matrix,
            self.antipode_weight_form,
            self.star_antipode,
            self.unitarity_left,
            self.unitarity_right,
            self.u_shape,
            self.haar_quadratic,
            self.left_invariance,
            self.haar_antipode,
            self.modular_u,
            self.modular_kms,
            self.modular_star,
            self.modular_twist,
            self.antipode_squared,
            self.associativity,
            self.counit,
        ];
        all.extend(self.woronowicz);
        all.into_iter().fold(0.0, f64::max)
    }
}

fn max_over<T>(items: impl IntoIterator<Item = T>, f: impl FnMut(T) -> Result<f64>) -> Result<f64> {
    items.into_iter().map(f).try_fold(0.0f64, |acc, r| Ok(acc.max(r?)))
}

pub fn dual_residuals(qg: &QuantumGroup) -> Result<DualResiduals> {
    let lam = qg.params().lambda();
    let u = qg.u_matrix();
    let entry = |i: i32, j: i32| u.by_weight(i, j);
    let pos_pairs: Vec<(usize, usize)> = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).collect();
    let weight_pairs: Vec<(i32, i32)> = HALF_WEIGHTS.iter().flat_map(|&i| HALF_WEIGHTS.map(move |j| (i, j))).collect();

    // Coproduct of u through the pairing, including elements in other components.
    let mut battery = half_units();
    battery.push(AlgElement::from_component(RepIndex::ZERO, identity(1)));
    battery.push(AlgElement::from_component(RepIndex::from_twice(2), identity(3)));
    let mut coproduct_u = 0.0f64;
    for a in &battery {
        for a2 in &battery {
            for &(i, j) in &pos_pairs {
                let lhs = qg.dual_coproduct_pairing(a, a2, u.get(i, j));
                let rhs: Complex64 = (0..2).map(|k| pair(a, u.get(i, k)) * pair(a2, u.get(k, j))).sum();
                coproduct_u = coproduct_u.max((lhs - rhs).norm());
            }
        }
    }

    let s = |b: &DualElement| qg.dual_antipode(b);
    let expected_s = [
        [u.get(1, 1).clone(), u.get(0, 1).scale(c(-lam))],
        [u.get(1, 0).scale(c(-1.0 / lam)), u.get(0, 0).clone()],
    ];
    let antipode_matrix = pos_pairs
        .iter()
        .map(|&(i, j)| s(u.get(i, j)).max_abs_diff(&expected_s[i][j]))
        .fold(0.0, f64::max);

    let mut antipode_weight_form = 0.0f64;
    let mut antipode_squared = 0.0f64;
    for &(r, sw) in &weight_pairs {
        let sign = crate::params::sign_pow(r - sw);
        let fwd = entry(-sw, -r).scale(c(sign * lam.powf(f64::from(r - sw) / 2.0)));
        let inv = entry(-sw, -r).scale(c(sign * lam.powf(f64::from(sw - r) / 2.0)));
        antipode_weight_form = antipode_weight_form
            .max(s(entry(r, sw)).max_abs_diff(&fwd))
            .max(qg.dual_antipode_inv(entry(r, sw)).max_abs_diff(&inv));
        let s2 = s(&s(entry(r, sw)));
        antipode_squared = antipode_squared.max(s2.max_abs_diff(&entry(r, sw).scale(c(lam.powi(r - sw)))));
    }

    let star_antipode = pos_pairs
        .iter()
        .map(|&(i, j)| qg.dual_star(u.get(i, j)).max_abs_diff(&s(u.get(j, i))))
        .fold(0.0, f64::max);

    let unitarity = qg.check_unitarity(&u)?;
    let woronowicz = qg.woronowicz_residuals(&u)?;

    let mut haar_quadratic = 0.0f64;
    for &(k, l) in &weight_pairs {
        for &(i, j) in &weight_pairs {
            let got = qg.dual_haar(&qg.dual_mul(entry(k, l), entry(i, j))?);
            let expected = haar_quadratic_closed_form(lam, k, l, i, j);
            haar_quadratic = haar_quadratic.max((got - c(expected)).norm());
        }
    }

    // (id (x) phi_B)(u_ij u_kl) = sum_{r,s} u_ir u_ks phi_B(u_rj u_sl).
    let mut left_invariance = 0.0f64;
    for &(i, j) in &weight_pairs {
        for &(k, l) in &weight_pairs {
            let mut lhs = DualElement::zero();
            for &r in &HALF_WEIGHTS {
                for &sw in &HALF_WEIGHTS {
                    let weight = qg.dual_haar(&qg.dual_mul(entry(r, j), entry(sw, l))?);
                    if weight != ZERO {
                        lhs = lhs.add(&qg.dual_mul(entry(i, r), entry(k, sw))?.scale(weight));
                    }
                }
            }
            let rhs = DualElement::unit().scale(qg.dual_haar(&qg.dual_mul(entry(i, j), entry(k, l))?));
            left_invariance = left_invariance.max(lhs.max_abs_diff(&rhs));
        }
    }

    let mut words = vec![DualElement::unit()];
    for &(i, j) in &pos_pairs {
        words.push(u.get(i, j).clone());
        for &(k, l) in &pos_pairs {
            words.push(qg.dual_mul(u.get(i, j), u.get(k, l))?);
        }
    }
    let haar_antipode = words
        .iter()
        .map(|b| (qg.dual_haar(&s(b)) - qg.dual_haar(b)).norm())
        .fold(0.0, f64::max);

    let sigma = |b: &DualElement| qg.dual_modular(b);
    let modular_u = weight_pairs
        .iter()
        .map(|&(p, q)| sigma(entry(p, q)).max_abs_diff(&entry(p, q).scale(c(lam.powi(p + q)))))
        .fold(0.0, f64::max);

    let mut generators: Vec<DualElement> = pos_pairs.iter().map(|&(i, j)| u.get(i, j).clone()).collect();
    generators.extend(pos_pairs.iter().map(|&(i, j)| qg.dual_star(u.get(i, j))));
    let mut modular_kms = 0.0f64;
    for x in &generators {
        for y in &generators {
            let lhs = qg.dual_haar(&qg.dual_mul(x, y)?);
            let rhs = qg.dual_haar(&qg.dual_mul(y, &sigma(x))?);
            modular_kms = modular_kms.max((lhs - rhs).norm());
        }
    }
    let modular_star = max_over(words.iter(), |b| {
        Ok(sigma(&qg.dual_star(b)).max_abs_diff(&qg.dual_star(&qg.dual_modular_inv(b))))
    })?;

    // <a (x) a', (S^2 (x) sigma) Delta(u_rs)> = sum_j <a, S^2 u_rj><a', sigma u_js>
    // must equal <a a', sigma(u_rs)> = l^{2r+2s} <a a', u_rs>.
    let units = half_units();
    let mut modular_twist = 0.0f64;
    for &(r, sw) in &weight_pairs {
        let target = sigma(entry(r, sw));
        for a in &units {
            for a2 in &units {
                let lhs: Complex64 = HALF_WEIGHTS
                    .iter()
                    .map(|&j| pair(a, &s(&s(entry(r, j)))) * pair(a2, &sigma(entry(j, sw))))
                    .sum();
                let rhs = qg.dual_coproduct_pairing(a, a2, &target);
                let scaled = qg.dual_coproduct_pairing(a, a2, entry(r, sw)) * lam.powi(r + sw);
                modular_twist = modular_twist.max((lhs - rhs).norm()).max((rhs - scaled).norm());
            }
        }
    }

    let mut associativity = 0.0f64;
    for &(i, j) in &pos_pairs {
        for &(k, l) in &pos_pairs {
            for &(m, o) in &pos_pairs {
                let (x, y, z) = (u.get(i, j), u.get(k, l), u.get(m, o));
                let lhs = qg.dual_mul(&qg.dual_mul(x, y)?, z)?;
                let rhs = qg.dual_mul(x, &qg.dual_mul(y, z)?)?;
                associativity = associativity.max(lhs.max_abs_diff(&rhs));
            }
        }
    }

    let counit = pos_pairs
        .iter()
        .map(|&(i, j)| (qg.dual_counit(u.get(i, j)) - c(if i == j { 1.0 } else { 0.0 })).norm())
        .fold(0.0, f64::max);

    Ok(DualResiduals {
        coproduct_u,
        antipode_matrix,
        antipode_weight_form,
        star_antipode,
        unitarity_left: unitarity.left,
        unitarity_right: unitarity.right,
        u_shape: unitarity.diagonal_shape.max(unitarity.off_diagonal_shape),
        woronowicz,
        haar_quadratic,
        left_invariance,
        haar_antipode,
        modular_u,
        modular_kms,
        modular_star,
        modular_twist,
        antipode_squared,
        associativity,
        counit,
    })
}

/// Gram matrix of coordinate functionals against matrix units on `A_n`;
/// returns its distance from the identity.
pub fn pairing_gram_residual(n: RepIndex) -> f64 {
    let d = n.dim();
    let coords: Vec<DualElement> = n
        .weights()
        .flat_map(|r| n.weights().map(move |s| DualElement::coordinate(n, r, s)))
        .collect();
    let units: Vec<AlgElement> = n
        .weights()
        .flat_map(|r| n.weights().map(move |s| AlgElement::matrix_unit(n, r, s)))
        .collect();
    let gram = DMatrix::from_fn(d * d, d * d, |i, j| pair(&units[i], &coords[j]));
    max_abs_diff(&gram, &identity(d * d))
}

/// Matrix over `A_{1/2}` units of the map `a |-> <a, u>`, for tables.
pub fn u_pairing_table(qg: &QuantumGroup, a: &AlgElement) -> CMat {
    let u: UMatrix = qg.u_matrix();
    CMat::from_fn(2, 2, |i, j| pair(a, u.get(i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qg() -> QuantumGroup {
        QuantumGroup::new(Params::new(0.3).unwrap())
    }

    #[test]
    fn formal_layer_is_exact() {
        let p = Params::new(0.3).unwrap();
        let r = formal_residuals(&p, 3, RepIndex::from_twice(2)).unwrap();
        assert_eq!(r.coassociativity, 0.0);
        assert_eq!(r.counit_left, 0.0);
        assert_eq!(r.counit_right, 0.0);
        assert_eq!(r.coproduct_star, 0.0);
        assert_eq!(r.star_involution, 0.0);
        assert!(r.antipode_star_involution < 1e-12);
        assert!(r.antipode_law_in_reps < 1e-10, "{r:?}");
    }

    #[test]
    fn gram_is_identity() {
        for twice in 0..=4 {
            assert_eq!(pairing_gram_residual(RepIndex::from_twice(twice)), 0.0);
        }
    }

    #[test]
    fn hopf_axioms_small_window() {
        let g = qg();
        let window: Vec<RepIndex> = RepIndex::up_to(RepIndex::from_twice(2)).collect();
        let support: Vec<RepIndex> = RepIndex::up_to(RepIndex::from_twice(4)).collect();
        let battery = hopf_battery(&g, &support, 7, 1).unwrap();
        for (name, a) in &battery {
            assert!(counit_law_residual(&g, a, &window).unwrap() < 1e-10, "{name}");
            for &n in &window {
                assert!(antipode_law_residual(&g, a, n).unwrap() < 1e-10, "{name} n={n}");
            }
            let (h, one) = (RepIndex::HALF, RepIndex::from_twice(2));
            assert!(coassociativity_residual(&g, a, h, one, h).unwrap() < 1e-10, "{name}");
            assert!(r_flip_residual(&g, a, h, one).unwrap() < 1e-10, "{name}");
            assert!(tau_residual(&g, a, one, h, 0.4).unwrap() < 1e-10, "{name}");
        }
    }

    #[test]
    fn delta_h_spin_one() {
        let r = delta_h_residuals(&qg(), RepIndex::from_twice(2)).unwrap();
        for v in [r.closed_vs_cg, r.idempotent, r.self_adjoint, r.rank_one, r.left_integral, r.right_integral, r.modular_element, r.trace_slice] {
            assert!(v < 1e-10, "{r:?}");
        }
    }

    #[test]
    fn modular_brute_force_spin_one() {
        let (l, r) = modular_automorphism_residuals(&qg(), RepIndex::from_twice(2));
        assert!(l < 1e-12 && r < 1e-12);
    }

    #[test]
    fn dual_suite_passes() {
        let r = dual_residuals(&qg()).unwrap();
        assert!(r.max() < 1e-9, "{r:#?}");
    }

    #[test]
    fn classification_recovers_labels() {
        let p = Params::new(0.3).unwrap();
        let outcomes = classification_battery(&p, RepIndex::from_twice(4), 3).unwrap();
        assert!(outcomes.iter().all(ClassifyOutcome::ok), "{outcomes:?}");
    }
}
